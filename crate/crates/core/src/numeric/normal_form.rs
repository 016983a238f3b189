//! The three local normal forms of maximal-rank Legendrian 3-webs,
//! classified by the sign of the discriminant R² + ST.
//!
//! Each case provides an adapted coframe with α = 0 and constant torsion
//! coefficients, plus the corresponding web of member foliations:
//!
//! * `zero_disc` (R² + ST = 0): θ¹ = dx, θ² = dp + Ty dx; members are the
//!   fiber foliation and the ODEs y″ + Ty = 0, y″ + Ty + 1 = 0.
//! * `positive_disc` (R² + ST > 0): exponential coframe built on the ODE
//!   family y″ ± R(y′)² = 0; requires R > 0 and p ≠ 0.
//! * `negative_disc` (R² + ST < 0): trigonometric coframe with the
//!   prefactor √(1 − Tp²); the domain requires 1 − Tp² > 0 and the
//!   trigonometric coefficients bounded away from their zeros.

use std::fmt;
use std::str::FromStr;

use crate::error::{LegwebError, Result};
use crate::numeric::coframe::{contact_form_at, Coframe3, Form1, Point3};
use crate::numeric::jet::{Jet1, Jet2};
use crate::numeric::torsion::{Member, Web3Numeric};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormalFormCase {
    ZeroDisc,
    PositiveDisc,
    NegativeDisc,
}

impl NormalFormCase {
    pub const ALL: [NormalFormCase; 3] = [
        NormalFormCase::ZeroDisc,
        NormalFormCase::PositiveDisc,
        NormalFormCase::NegativeDisc,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            NormalFormCase::ZeroDisc => "zero_disc",
            NormalFormCase::PositiveDisc => "positive_disc",
            NormalFormCase::NegativeDisc => "negative_disc",
        }
    }

    /// Name of the single parameter of the case (R or T).
    pub fn param_name(&self) -> &'static str {
        match self {
            NormalFormCase::PositiveDisc => "R",
            _ => "T",
        }
    }
}

impl fmt::Display for NormalFormCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for NormalFormCase {
    type Err = LegwebError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "zero_disc" => Ok(NormalFormCase::ZeroDisc),
            "positive_disc" => Ok(NormalFormCase::PositiveDisc),
            "negative_disc" => Ok(NormalFormCase::NegativeDisc),
            other => Err(LegwebError::Malformed(format!(
                "unknown normal-form case {other:?}; expected zero_disc, positive_disc, or negative_disc"
            ))),
        }
    }
}

/// Margin by which trigonometric factors and 1 − Tp² must clear zero for a
/// point to count as admissible in the negative-discriminant case.
const TRIG_MARGIN: f64 = 1e-3;

fn validate_param(case: NormalFormCase, param: f64) -> Result<()> {
    if !param.is_finite() {
        return Err(LegwebError::BadParameter(format!(
            "{} must be finite, got {param}",
            case.param_name()
        )));
    }
    match case {
        NormalFormCase::PositiveDisc if param <= 0.0 => Err(LegwebError::BadParameter(format!(
            "positive_disc requires R > 0, got R = {param}"
        ))),
        NormalFormCase::ZeroDisc | NormalFormCase::NegativeDisc if param == 0.0 => Err(
            LegwebError::BadParameter(format!("{} requires T != 0", case.as_str())),
        ),
        _ => Ok(()),
    }
}

/// The adapted coframe of a normal-form case; the recorded constants are
/// (0, 0, T), (R, 0, 0), (0, −T, T) respectively.
pub fn normal_form_coframe(case: NormalFormCase, param: f64) -> Result<Coframe3> {
    validate_param(case, param)?;
    let cf = match case {
        NormalFormCase::ZeroDisc => {
            let t = param;
            Coframe3::new(case.as_str(), [0.0, 0.0, t], move |pt| {
                let [_, y, _] = pt.jets1();
                let theta = contact_form_at(pt);
                let th1: Form1 = [
                    Jet1::constant(1.0),
                    Jet1::constant(0.0),
                    Jet1::constant(0.0),
                ];
                let th2: Form1 = [y * t, Jet1::constant(0.0), Jet1::constant(1.0)];
                Some([theta, th1, th2])
            })
        }
        NormalFormCase::PositiveDisc => {
            let r = param;
            Coframe3::new(case.as_str(), [r, 0.0, 0.0], move |pt| {
                if pt.p.abs() < 1e-6 {
                    return None;
                }
                let [_, y, p] = pt.jets1();
                let theta = contact_form_at(pt);
                let k = 1.0 / (2.0 * r).sqrt();
                let plus = (y * r).exp() * p.recip() * k;
                let minus = (y * (-r)).exp() * p.recip() * k;
                // θ¹ = e^{Ry}/(√(2R) p) (dp + Rp² dx), θ² with (−R, −Rp²).
                let th1: Form1 = [plus * p * p * r, Jet1::constant(0.0), plus];
                let th2: Form1 = [minus * p * p * (-r), Jet1::constant(0.0), minus];
                Some([theta, th1, th2])
            })
        }
        NormalFormCase::NegativeDisc => {
            let t = param;
            Coframe3::new(case.as_str(), [0.0, -t, t], move |pt| {
                let disc = 1.0 - t * pt.p * pt.p;
                let (sv, cv) = (t * pt.y).sin_cos();
                if disc < TRIG_MARGIN
                    || sv.abs() < TRIG_MARGIN
                    || cv.abs() < TRIG_MARGIN
                    || (sv + cv).abs() < TRIG_MARGIN
                {
                    return None;
                }
                let [_, y, p] = pt.jets1();
                let theta = contact_form_at(pt);
                let one_m = Jet1::constant(1.0) - p * p * t;
                let root = one_m.sqrt();
                let cos = (y * t).cos();
                let sin = (y * t).sin();
                // θ¹ = cos(Ty)(1−Tp²)^{−1/2} dp + sin(Ty)(1−Tp²)^{1/2} dx,
                // θ² = sin(Ty)(1−Tp²)^{−1/2} dp − cos(Ty)(1−Tp²)^{1/2} dx.
                let th1: Form1 = [sin * root, Jet1::constant(0.0), cos / root];
                let th2: Form1 = [-(cos * root), Jet1::constant(0.0), sin / root];
                Some([theta, th1, th2])
            })
        }
    };
    Ok(cf)
}

/// The member foliations of a normal-form web, ordered so that members 1, 2
/// generate the ideals of θ¹, θ² and member 3 that of θ³ = −(θ¹ + θ²).
pub fn normal_form_web(case: NormalFormCase, param: f64) -> Result<Web3Numeric> {
    validate_param(case, param)?;
    let web = match case {
        NormalFormCase::ZeroDisc => {
            let t = param;
            Web3Numeric::new([
                Member::Fiber,
                Member::graph(move |[_, y, _]| y * (-t)),
                Member::graph(move |[_, y, _]| y * (-t) - Jet2::constant(1.0)),
            ])
        }
        NormalFormCase::PositiveDisc => {
            let r = param;
            Web3Numeric::from_q(
                move |[_, _, p]| p * p * (-r),
                move |[_, _, p]| p * p * r,
                move |[_, y, p]| p * p * (y * r).tanh() * (-r),
            )
        }
        NormalFormCase::NegativeDisc => {
            let t = param;
            Web3Numeric::from_q(
                move |[_, y, p]| {
                    (Jet2::constant(1.0) - p * p * t) * (y * t).tan() * (-1.0)
                },
                move |[_, y, p]| {
                    (Jet2::constant(1.0) - p * p * t) * (y * t).cos() / (y * t).sin()
                },
                move |[_, y, p]| {
                    let (c, s) = ((y * t).cos(), (y * t).sin());
                    (Jet2::constant(1.0) - p * p * t) * (c - s) / (c + s)
                },
            )
        }
    };
    Ok(web)
}

/// Sampling box and predicate that keep the case's samples admissible with
/// room to spare for finite-difference stencils.
pub fn sample_domain(case: NormalFormCase, param: f64) -> ([[f64; 2]; 3], impl Fn(Point3) -> bool) {
    let t = param;
    // The boxes keep the member slopes qᵃ of order one: sampling close to a
    // pole of cot(Ty) or deep into the e^{Ry} growth region degrades the
    // finite-difference conditioning of the torsion extraction.
    let (ranges, margin): ([[f64; 2]; 3], f64) = match case {
        NormalFormCase::ZeroDisc => ([[-1.0, 1.0], [-1.0, 1.0], [-1.0, 1.0]], 0.0),
        NormalFormCase::PositiveDisc => ([[-0.7, 0.7], [-0.5, 0.5], [0.5, 1.5]], 0.0),
        NormalFormCase::NegativeDisc => ([[-1.0, 1.0], [-1.0, 1.0], [-0.5, 0.5]], 0.25),
    };
    let pred = move |pt: Point3| match case {
        NormalFormCase::ZeroDisc => true,
        NormalFormCase::PositiveDisc => pt.p.abs() > 0.1,
        NormalFormCase::NegativeDisc => {
            let disc = 1.0 - t * pt.p * pt.p;
            let (sv, cv) = (t * pt.y).sin_cos();
            disc > margin
                && sv.abs() > margin
                && cv.abs() > margin
                && (sv + cv).abs() > margin
        }
    };
    (ranges, pred)
}
