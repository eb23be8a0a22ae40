//! Two-parameter Nelder–Mead with a deterministic grid of starting points.

pub const TOLERANCE: f64 = 1e-10;
pub const MAX_ITERATIONS: usize = 10_000;
pub const GRID: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Minimum {
    pub x: [f64; 2],
    pub value: f64,
    pub iterations: usize,
    pub converged: bool,
}

/// Minimize f from x0 with an initial simplex of edge `step`. Stops when the
/// simplex diameter drops below `tol`. Non-finite values count as +inf.
pub fn nelder_mead(f: &impl Fn([f64; 2]) -> f64, x0: [f64; 2], step: [f64; 2], tol: f64, max_iter: usize) -> Minimum {
    let eval = |x: [f64; 2]| {
        let v = f(x);
        if v.is_nan() {
            f64::INFINITY
        } else {
            v
        }
    };
    let mut s = [x0, [x0[0] + step[0], x0[1]], [x0[0], x0[1] + step[1]]];
    let mut v = s.map(eval);
    let lerp = |a: [f64; 2], b: [f64; 2], t: f64| [a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])];
    for it in 0..max_iter {
        let mut idx = [0usize, 1, 2];
        idx.sort_by(|&i, &j| v[i].total_cmp(&v[j]));
        s = idx.map(|i| s[i]);
        v = idx.map(|i| v[i]);
        let diam = (0..3)
            .flat_map(|i| (0..3).map(move |j| (i, j)))
            .map(|(i, j)| (s[i][0] - s[j][0]).abs().max((s[i][1] - s[j][1]).abs()))
            .fold(0.0, f64::max);
        if diam < tol {
            return Minimum { x: s[0], value: v[0], iterations: it, converged: true };
        }
        let c = lerp(s[0], s[1], 0.5);
        let r = lerp(c, s[2], -1.0);
        let vr = eval(r);
        if vr < v[0] {
            let e = lerp(c, s[2], -2.0);
            let ve = eval(e);
            if ve < vr {
                (s[2], v[2]) = (e, ve);
            } else {
                (s[2], v[2]) = (r, vr);
            }
        } else if vr < v[1] {
            (s[2], v[2]) = (r, vr);
        } else {
            let outside = vr < v[2];
            let k = if outside { lerp(c, r, 0.5) } else { lerp(c, s[2], 0.5) };
            let vk = eval(k);
            if vk < if outside { vr } else { v[2] } {
                (s[2], v[2]) = (k, vk);
            } else {
                for i in 1..3 {
                    s[i] = lerp(s[0], s[i], 0.5);
                    v[i] = eval(s[i]);
                }
            }
        }
    }
    let best = (0..3).min_by(|&i, &j| v[i].total_cmp(&v[j])).unwrap_or(0);
    Minimum { x: s[best], value: v[best], iterations: max_iter, converged: false }
}

/// Evaluate f on a GRID x GRID lattice over the box, then run Nelder–Mead from
/// the `starts` best lattice points and keep the best result. Ties resolve
/// by lattice order, so the result depends only on the inputs.
pub fn grid_then_simplex(f: &impl Fn([f64; 2]) -> f64, lo: [f64; 2], hi: [f64; 2], starts: usize) -> Minimum {
    let mut pts: Vec<([f64; 2], f64)> = Vec::with_capacity(GRID * GRID);
    for i in 0..GRID {
        for j in 0..GRID {
            let x = [
                lo[0] + (hi[0] - lo[0]) * i as f64 / (GRID - 1) as f64,
                lo[1] + (hi[1] - lo[1]) * j as f64 / (GRID - 1) as f64,
            ];
            let v = f(x);
            pts.push((x, if v.is_nan() { f64::INFINITY } else { v }));
        }
    }
    pts.sort_by(|a, b| a.1.total_cmp(&b.1));
    let step = [(hi[0] - lo[0]) / GRID as f64, (hi[1] - lo[1]) / GRID as f64];
    let mut best: Option<Minimum> = None;
    let mut total = 0;
    for (x0, _) in pts.iter().take(starts.max(1)) {
        let m = nelder_mead(f, *x0, step, TOLERANCE, MAX_ITERATIONS);
        total += m.iterations;
        if best.is_none_or(|b| m.value < b.value) {
            best = Some(m);
        }
    }
    let mut m = best.expect("at least one start");
    m.iterations = total;
    m
}
