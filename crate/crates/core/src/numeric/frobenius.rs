//! Frobenius integration of the rank-3 Abelian-relation system of a
//! maximal-rank Legendrian 3-web.
//!
//! With α = 0 and constant torsion coefficients (R, S, T), the components
//! (f, g¹, g²) of an Abelian relation satisfy the closed linear Pfaffian
//! system
//!
//! df  = −g² θ¹ + g¹ θ²,
//! dg¹ = Rf θ¹ + Sf θ² + (Rg¹ + Sg²) θ,
//! dg² = Tf θ¹ − Rf θ² + (Tg¹ − Rg²) θ.
//!
//! The system is integrated with classical fixed-step RK4 along polylines;
//! for a compatible system the holonomy around closed loops vanishes up to
//! the O(step⁴) integration error, exhibiting a full 3-dimensional solution
//! space.

use crate::error::{LegwebError, Result};
use crate::numeric::coframe::{form_values, Coframe3, Point3};

type Mat3 = [[f64; 3]; 3];

const IDENTITY: Mat3 = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];

fn mat_add_scaled(a: &mut Mat3, b: &Mat3, c: f64) {
    for i in 0..3 {
        for j in 0..3 {
            a[i][j] += c * b[i][j];
        }
    }
}

fn mat_mul(a: &Mat3, b: &Mat3) -> Mat3 {
    let mut out = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            for (k, row) in b.iter().enumerate() {
                out[i][j] += a[i][k] * row[j];
            }
        }
    }
    out
}

pub fn det3(m: &Mat3) -> f64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// Coefficient matrix A(pt, v) with u′ = A·u for u = (f, g¹, g²) moving
/// with velocity v; pairing each coframe 1-form against v turns the
/// Pfaffian system into an ODE.
fn system_matrix(cf: &Coframe3, pt: Point3, v: [f64; 3]) -> Result<Mat3> {
    let forms = cf.eval_or_err(pt)?;
    let pair = |w: &[crate::numeric::jet::Jet1; 3]| {
        let c = form_values(w);
        c[0] * v[0] + c[1] * v[1] + c[2] * v[2]
    };
    let t0 = pair(&forms[0]);
    let t1 = pair(&forms[1]);
    let t2 = pair(&forms[2]);
    let [r, s, t] = cf.rst;
    Ok([
        [0.0, t2, -t1],
        [(r * t1 + s * t2), r * t0, s * t0],
        [(t * t1 - r * t2), t * t0, -r * t0],
    ])
}

/// Integrates the three basis solutions e₁, e₂, e₃ along the polyline;
/// returns the fundamental matrix at the endpoint (columns are the basis
/// solutions). `step` is the spatial step of the fixed-step RK4 scheme.
pub fn frobenius_solve(cf: &Coframe3, path: &[Point3], step: f64) -> Result<Mat3> {
    if path.len() < 2 {
        return Err(LegwebError::Malformed(
            "polyline needs at least two vertices".into(),
        ));
    }
    if !(step.is_finite() && step > 0.0) {
        return Err(LegwebError::BadParameter(format!(
            "step must be positive, got {step}"
        )));
    }
    let mut u = IDENTITY;
    for seg in path.windows(2) {
        let (a, b) = (seg[0], seg[1]);
        let dir = [b.x - a.x, b.y - a.y, b.p - a.p];
        let len = (dir[0] * dir[0] + dir[1] * dir[1] + dir[2] * dir[2]).sqrt();
        if len == 0.0 {
            continue;
        }
        let n = (len / step).ceil() as usize;
        let h = 1.0 / n as f64;
        let at = |t: f64| Point3::new(a.x + t * dir[0], a.y + t * dir[1], a.p + t * dir[2]);
        for i in 0..n {
            let t = i as f64 * h;
            let k1 = mat_mul(&system_matrix(cf, at(t), dir)?, &u);
            let mut u2 = u;
            mat_add_scaled(&mut u2, &k1, h / 2.0);
            let mid = system_matrix(cf, at(t + h / 2.0), dir)?;
            let k2 = mat_mul(&mid, &u2);
            let mut u3 = u;
            mat_add_scaled(&mut u3, &k2, h / 2.0);
            let k3 = mat_mul(&mid, &u3);
            let mut u4 = u;
            mat_add_scaled(&mut u4, &k3, h);
            let k4 = mat_mul(&system_matrix(cf, at(t + h), dir)?, &u4);
            mat_add_scaled(&mut u, &k1, h / 6.0);
            mat_add_scaled(&mut u, &k2, h / 3.0);
            mat_add_scaled(&mut u, &k3, h / 3.0);
            mat_add_scaled(&mut u, &k4, h / 6.0);
        }
    }
    Ok(u)
}

/// Maximum deviation of the fundamental matrix from the identity; the loop
/// holonomy when the path is closed.
pub fn holonomy_deviation(endpoint: &Mat3) -> f64 {
    let mut max = 0.0f64;
    for i in 0..3 {
        for j in 0..3 {
            max = max.max((endpoint[i][j] - IDENTITY[i][j]).abs());
        }
    }
    max
}

/// A rectangular loop in the (x, y)-plane at fixed p, based at `base`.
pub fn rectangle_loop(base: Point3, dx: f64, dy: f64) -> Vec<Point3> {
    vec![
        base,
        Point3::new(base.x + dx, base.y, base.p),
        Point3::new(base.x + dx, base.y + dy, base.p),
        Point3::new(base.x, base.y + dy, base.p),
        base,
    ]
}
