//! Numeric differential forms on the contact 3-space with coordinates
//! (x, y, p), and coframes adapted to Legendrian 3-webs.
//!
//! A 1-form is stored as its coefficient triple on (dx, dy, dp); carrying
//! the coefficients as jets makes the exterior derivative a pointwise
//! read-off of the gradients. 2-forms are coefficient triples on
//! (dx∧dy, dx∧dp, dy∧dp) and 3-forms a single coefficient on dx∧dy∧dp.

use crate::error::{LegwebError, Result};
use crate::numeric::jet::{Jet1, Jet2};

/// Coframe matrices with determinant below this margin are rejected as
/// numerically degenerate.
pub const DET_MARGIN: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point3 {
    pub x: f64,
    pub y: f64,
    pub p: f64,
}

impl Point3 {
    pub fn new(x: f64, y: f64, p: f64) -> Self {
        Point3 { x, y, p }
    }

    pub fn coords(&self) -> [f64; 3] {
        [self.x, self.y, self.p]
    }

    pub fn from_coords(c: [f64; 3]) -> Self {
        Point3::new(c[0], c[1], c[2])
    }

    /// Coordinate functions seeded as second-order jets.
    pub fn jets2(&self) -> [Jet2; 3] {
        [
            Jet2::var(0, self.x),
            Jet2::var(1, self.y),
            Jet2::var(2, self.p),
        ]
    }

    /// Coordinate functions seeded as first-order jets.
    pub fn jets1(&self) -> [Jet1; 3] {
        [
            Jet1::var(0, self.x),
            Jet1::var(1, self.y),
            Jet1::var(2, self.p),
        ]
    }
}

/// 1-form with first-order jet coefficients on (dx, dy, dp).
pub type Form1 = [Jet1; 3];

/// Coefficient values of a 2-form on (dx∧dy, dx∧dp, dy∧dp).
pub type Form2 = [f64; 3];

pub fn form_values(w: &Form1) -> [f64; 3] {
    [w[0].v, w[1].v, w[2].v]
}

/// Exterior derivative of a 1-form with jet coefficients.
pub fn d1(w: &Form1) -> Form2 {
    [
        w[1].g[0] - w[0].g[1],
        w[2].g[0] - w[0].g[2],
        w[2].g[1] - w[1].g[2],
    ]
}

/// Exterior derivative of a 1-form with second-order jet coefficients;
/// the resulting 2-form coefficients are still differentiable.
pub fn d1_jet(w: &[Jet2; 3]) -> [Jet1; 3] {
    [
        w[1].partial_jet1(0) - w[0].partial_jet1(1),
        w[2].partial_jet1(0) - w[0].partial_jet1(2),
        w[2].partial_jet1(1) - w[1].partial_jet1(2),
    ]
}

pub fn wedge11_vals(a: [f64; 3], b: [f64; 3]) -> Form2 {
    [
        a[0] * b[1] - a[1] * b[0],
        a[0] * b[2] - a[2] * b[0],
        a[1] * b[2] - a[2] * b[1],
    ]
}

pub fn wedge11_jet(a: &Form1, b: &Form1) -> [Jet1; 3] {
    [
        a[0] * b[1] - a[1] * b[0],
        a[0] * b[2] - a[2] * b[0],
        a[1] * b[2] - a[2] * b[1],
    ]
}

/// Wedge of a 2-form and a 1-form, as the coefficient of dx∧dy∧dp.
pub fn wedge21_jet(t: &[Jet1; 3], b: &Form1) -> Jet1 {
    t[0] * b[2] - t[1] * b[1] + t[2] * b[0]
}

/// Determinant of the coefficient matrix of three 1-forms, equal to the
/// coefficient of their triple wedge on dx∧dy∧dp.
pub fn triple_det(a: [f64; 3], b: [f64; 3], c: [f64; 3]) -> f64 {
    a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0])
        + a[2] * (b[0] * c[1] - b[1] * c[0])
}

/// Solves the 3x3 system with the given columns by Cramer's rule.
pub fn solve3(cols: [[f64; 3]; 3], rhs: [f64; 3]) -> Option<[f64; 3]> {
    let det = triple_det(cols[0], cols[1], cols[2]);
    if det.abs() < DET_MARGIN {
        return None;
    }
    Some([
        triple_det(rhs, cols[1], cols[2]) / det,
        triple_det(cols[0], rhs, cols[2]) / det,
        triple_det(cols[0], cols[1], rhs) / det,
    ])
}

/// Expands a 2-form in the basis (θ¹∧θ², θ∧θ¹, θ∧θ²) determined by the
/// coefficient values of the coframe 1-forms.
pub fn expand_in_coframe_basis(
    theta: [f64; 3],
    th1: [f64; 3],
    th2: [f64; 3],
    target: Form2,
) -> Option<[f64; 3]> {
    let b1 = wedge11_vals(th1, th2);
    let b2 = wedge11_vals(theta, th1);
    let b3 = wedge11_vals(theta, th2);
    solve3([b1, b2, b3], target)
}

type CoframeEval = dyn Fn(Point3) -> Option<[Form1; 3]> + Send + Sync;

/// An adapted coframe (θ, θ¹, θ²) for a Legendrian 3-web, together with
/// the constant torsion coefficients (R, S, T) it is normalized to.
pub struct Coframe3 {
    pub case_name: String,
    /// Constants (R, S, T) of the structure equation.
    pub rst: [f64; 3],
    eval: Box<CoframeEval>,
}

impl Coframe3 {
    pub fn new(
        case_name: impl Into<String>,
        rst: [f64; 3],
        eval: impl Fn(Point3) -> Option<[Form1; 3]> + Send + Sync + 'static,
    ) -> Self {
        Coframe3 {
            case_name: case_name.into(),
            rst,
            eval: Box::new(eval),
        }
    }

    /// Evaluates (θ, θ¹, θ²) at a point, rejecting points outside the
    /// domain or where the coframe determinant falls under [`DET_MARGIN`].
    pub fn eval(&self, pt: Point3) -> Option<[Form1; 3]> {
        let forms = (self.eval)(pt)?;
        let det = triple_det(
            form_values(&forms[0]),
            form_values(&forms[1]),
            form_values(&forms[2]),
        );
        if det.abs() < DET_MARGIN || !det.is_finite() {
            return None;
        }
        Some(forms)
    }

    pub fn admissible(&self, pt: Point3) -> bool {
        self.eval(pt).is_some()
    }

    pub fn eval_or_err(&self, pt: Point3) -> Result<[Form1; 3]> {
        self.eval(pt).ok_or(LegwebError::DomainViolation {
            x: pt.x,
            y: pt.y,
            p: pt.p,
        })
    }
}

/// Maximum absolute coefficient over the three structure-equation residual
/// 2-forms of a coframe with α = 0 and constants (R, S, T):
/// dθ − θ¹∧θ², dθ¹ − θ∧(Rθ¹ + Sθ²), dθ² − θ∧(Tθ¹ − Rθ²).
pub fn structure_residual(cf: &Coframe3, pt: Point3) -> Result<f64> {
    let [theta, th1, th2] = cf.eval_or_err(pt)?;
    let [r, s, t] = cf.rst;
    let tv = form_values(&theta);
    let v1 = form_values(&th1);
    let v2 = form_values(&th2);

    let lin = |u: f64, w: f64| {
        [
            u * v1[0] + w * v2[0],
            u * v1[1] + w * v2[1],
            u * v1[2] + w * v2[2],
        ]
    };
    let res0 = sub3(d1(&theta), wedge11_vals(v1, v2));
    let res1 = sub3(d1(&th1), wedge11_vals(tv, lin(r, s)));
    let res2 = sub3(d1(&th2), wedge11_vals(tv, lin(t, -r)));

    let mut max = 0.0f64;
    for c in res0.iter().chain(res1.iter()).chain(res2.iter()) {
        max = max.max(c.abs());
    }
    Ok(max)
}

fn sub3(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

/// The contact form θ = dy − p dx with jet coefficients at a point.
pub fn contact_form_at(pt: Point3) -> Form1 {
    let [_, _, p] = pt.jets1();
    [-p, Jet1::constant(1.0), Jet1::constant(0.0)]
}
