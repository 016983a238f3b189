//! Checker for the explicit Abelian relations of the Legendrian 3-web of a
//! Darboux super-integrable metric pair.
//!
//! The pair of metrics e^{3x}dx² − 2D₊eˣdy² (and its mate with constant D)
//! has un-parameterized geodesics governed by y″ = y′/2 + D±e^{−2x}(y′)³.
//! Together with the fiber foliation these form a Legendrian 3-web whose
//! three un-differentiated Abelian relations are written in closed form;
//! this module evaluates them with automatic differentiation and checks
//! that each triple sums to zero and that each component is annihilated by
//! the first-integral vector field of its member foliation:
//! V± = ∂x + p∂y + (p/2 + D±e^{−2x}p³)∂p for the two geodesic members and
//! ∂p for the fiber member.

use crate::error::{LegwebError, Result};
use crate::numeric::coframe::Point3;
use crate::numeric::jet::Jet1;

/// Points with |p| below this bound are rejected: the relation components
/// carry p⁻² factors.
const MIN_P: f64 = 1e-3;

/// Acceptance tolerance on the relative residuals.
pub const DARBOUX_TOL: f64 = 1e-9;

#[derive(Debug, Clone)]
pub struct DarbouxReport {
    pub d_plus: f64,
    pub d: f64,
    pub samples: usize,
    /// Largest relative deviation of a triple sum from zero.
    pub max_sum_residual: f64,
    /// Largest relative residual of the annihilator checks.
    pub max_annihilator_residual: f64,
    pub pass: bool,
}

/// The nine components of the three Abelian relations at a point, as jets.
/// Row i is triple i; columns follow the member order (geodesics of g₊,
/// geodesics of the mate, fiber foliation).
fn triples(d_plus: f64, d: f64, pt: Point3) -> [[Jet1; 3]; 3] {
    let [x, y, p] = pt.jets1();
    let ex = x.exp();
    let emx = (-x).exp();
    let denom = p * p * (2.0 * (d - d_plus));
    let y2 = y * y;
    let p2 = p * p;

    let t1 = [
        (emx * y2 * p2 * (-2.0 * d_plus) + p2 * ex * 4.0 + ex * y2 - p * ex * y * 4.0) / denom,
        (emx * y2 * p2 * (2.0 * d) - p2 * ex * 4.0 - ex * y2 + p * ex * y * 4.0) / denom,
        -(emx * y2),
    ];
    let t2 = [
        (emx * y * p2 * (-2.0 * d_plus) - p * ex * 2.0 + ex * y) / denom,
        (emx * y * p2 * (2.0 * d) + p * ex * 2.0 - ex * y) / denom,
        -(emx * y),
    ];
    let t3 = [
        (emx * p2 * (-2.0 * d_plus) + ex) / denom,
        (emx * p2 * (2.0 * d) - ex) / denom,
        -emx,
    ];
    [t1, t2, t3]
}

/// Applies the annihilating vector field of member `member` to a jet and
/// returns (residual, scale of the combined terms).
fn annihilator_residual(member: usize, d_plus: f64, d: f64, pt: Point3, jet: Jet1) -> (f64, f64) {
    match member {
        0 | 1 => {
            let coef = if member == 0 { d_plus } else { d };
            let vp = pt.p / 2.0 + coef * (-2.0 * pt.x).exp() * pt.p.powi(3);
            let terms = [jet.g[0], pt.p * jet.g[1], vp * jet.g[2]];
            let res = terms.iter().sum::<f64>();
            let scale = terms.iter().fold(1.0f64, |m, t| m.max(t.abs()));
            (res, scale)
        }
        _ => {
            let scale = jet.g[0].abs().max(jet.g[1].abs()).max(1.0);
            (jet.g[2], scale)
        }
    }
}

pub fn darboux_check(d_plus: f64, d: f64, samples: &[Point3]) -> Result<DarbouxReport> {
    if !(d_plus.is_finite() && d.is_finite()) || d == d_plus {
        return Err(LegwebError::BadParameter(format!(
            "need finite D+ != D, got D+ = {d_plus}, D = {d}"
        )));
    }
    let mut max_sum = 0.0f64;
    let mut max_ann = 0.0f64;
    for &pt in samples {
        if pt.p.abs() < MIN_P {
            return Err(LegwebError::DomainViolation {
                x: pt.x,
                y: pt.y,
                p: pt.p,
            });
        }
        for triple in triples(d_plus, d, pt) {
            let sum: f64 = triple.iter().map(|c| c.v).sum();
            let scale = triple.iter().fold(1e-300f64, |m, c| m.max(c.v.abs()));
            max_sum = max_sum.max(sum.abs() / scale);
            for (member, &jet) in triple.iter().enumerate() {
                let (res, scale) = annihilator_residual(member, d_plus, d, pt, jet);
                max_ann = max_ann.max(res.abs() / scale);
            }
        }
    }
    Ok(DarbouxReport {
        d_plus,
        d,
        samples: samples.len(),
        max_sum_residual: max_sum,
        max_annihilator_residual: max_ann,
        pass: max_sum < DARBOUX_TOL && max_ann < DARBOUX_TOL,
    })
}
