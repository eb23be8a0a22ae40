//! Exact and numeric kernels shared by the analysis modules.

pub mod bigpoly;
pub mod classno;
pub mod dims;
pub mod factor;
pub mod intpoly;
pub mod li;
pub mod poisson;
pub mod primality;
pub mod primes;
pub mod roots;

pub use bigpoly::BigPoly;
pub use classno::{class_number, ClassNumberTable};
pub use dims::{dim_split, DimMode, DimSplit, DimTable};
pub use li::log_integral;
pub use poisson::{poisson_cdf, poisson_pmf};
pub use primes::{sieve, PrimeTable};
