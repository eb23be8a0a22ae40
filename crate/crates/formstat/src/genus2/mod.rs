//! Genus-2 curves: Igusa–Clebsch invariants and the RM 5 / RM 8 families.

mod families;
mod invariants;

pub use families::{
    brumer_core, brumer_curve, brumer_disc, isomorphism_obstruction, mestre_curve, mestre_disc, nonsplit_certificate,
    prime_disc_search, Family, SearchReport, BRUMER_DISC_TWO_POWER,
};
pub use invariants::{gl2_substitute, igusa_clebsch, transvectant, BinaryForm, IgusaClebsch};

use crate::arith::intpoly::IntPoly;
use crate::error::{Error, Result};
use serde::Serialize;

/// y^2 + Q(x) y = P(x).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HyperellipticModel {
    #[serde(serialize_with = "ser_poly")]
    pub q: IntPoly,
    #[serde(serialize_with = "ser_poly")]
    pub p: IntPoly,
}

fn ser_poly<S: serde::Serializer>(p: &IntPoly, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&p.to_string())
}

impl HyperellipticModel {
    pub fn new(q: IntPoly, p: IntPoly) -> Result<Self> {
        if q.degree().unwrap_or(0) > 3 || p.degree().unwrap_or(0) > 6 {
            return Err(Error::arg("need deg Q <= 3 and deg P <= 6"));
        }
        let m = HyperellipticModel { q, p };
        let h = m.sextic();
        let d = h.degree().unwrap_or(0);
        if !(5..=6).contains(&d) {
            return Err(Error::Singular(format!("Q^2 + 4P = {h} has degree {d}")));
        }
        if h.discriminant().is_zero_big() {
            return Err(Error::Singular(format!("Q^2 + 4P = {h} is not squarefree")));
        }
        Ok(m)
    }

    /// h = Q^2 + 4P.
    pub fn sextic(&self) -> IntPoly {
        self.q.mul(&self.q).add(&self.p.scale(&4.into()))
    }

    pub fn invariants(&self) -> Result<IgusaClebsch> {
        igusa_clebsch(&self.sextic())
    }
}

trait IsZeroBig {
    fn is_zero_big(&self) -> bool;
}

impl IsZeroBig for num_bigint::BigInt {
    fn is_zero_big(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
}
