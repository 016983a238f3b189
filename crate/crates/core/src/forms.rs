//! Differential forms on the 1-jet space with polynomial coefficients, in the
//! coordinates (x, y, p).
//!
//! Basis conventions are fixed once: 1-forms are written on (dx, dy, dp),
//! 2-forms on (dx^dy, dx^dp, dy^dp), 3-forms on dx^dy^dp. Antisymmetry is
//! folded into the coefficients.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::exact::poly::{require_no_q, MultiPoly, PolyTerm, Var};
use crate::exact::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct OneForm {
    pub dx: MultiPoly,
    pub dy: MultiPoly,
    pub dp: MultiPoly,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TwoForm {
    pub dxdy: MultiPoly,
    pub dxdp: MultiPoly,
    pub dydp: MultiPoly,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ThreeForm {
    pub coeff: MultiPoly,
}

impl OneForm {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.dx.is_zero() && self.dy.is_zero() && self.dp.is_zero()
    }

    pub fn add(&self, other: &OneForm) -> OneForm {
        OneForm {
            dx: &self.dx + &other.dx,
            dy: &self.dy + &other.dy,
            dp: &self.dp + &other.dp,
        }
    }

    pub fn sub(&self, other: &OneForm) -> OneForm {
        OneForm {
            dx: &self.dx - &other.dx,
            dy: &self.dy - &other.dy,
            dp: &self.dp - &other.dp,
        }
    }

    pub fn scale(&self, c: &Rational) -> OneForm {
        OneForm {
            dx: self.dx.scale(c),
            dy: self.dy.scale(c),
            dp: self.dp.scale(c),
        }
    }

    pub fn to_json(&self) -> OneFormJson {
        OneFormJson {
            dx: self.dx.to_json(),
            dy: self.dy.to_json(),
            dp: self.dp.to_json(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OneFormJson {
    pub dx: Vec<PolyTerm>,
    pub dy: Vec<PolyTerm>,
    pub dp: Vec<PolyTerm>,
}

impl ThreeForm {
    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }
}

/// The canonical contact form theta = dy - p dx.
pub fn contact_form() -> OneForm {
    OneForm {
        dx: -&MultiPoly::var(Var::P),
        dy: MultiPoly::constant(Rational::from_integer(1.into())),
        dp: MultiPoly::zero(),
    }
}

/// The leaf form dp - q_value dx of the web member y'' = q_value.
pub fn leaf_form(q_value: &Rational) -> OneForm {
    OneForm {
        dx: MultiPoly::constant(-q_value.clone()),
        dy: MultiPoly::zero(),
        dp: MultiPoly::constant(Rational::from_integer(1.into())),
    }
}

/// dh = h_x dx + h_y dy + h_p dp. Rejects inputs containing q.
pub fn d_of_function(h: &MultiPoly) -> Result<OneForm> {
    require_no_q(h)?;
    Ok(OneForm {
        dx: h.partial(Var::X),
        dy: h.partial(Var::Y),
        dp: h.partial(Var::P),
    })
}

/// Coordinate exterior derivative of a 1-form.
pub fn exterior_derivative(w: &OneForm) -> TwoForm {
    TwoForm {
        dxdy: &w.dy.partial(Var::X) - &w.dx.partial(Var::Y),
        dxdp: &w.dp.partial(Var::X) - &w.dx.partial(Var::P),
        dydp: &w.dp.partial(Var::Y) - &w.dy.partial(Var::P),
    }
}

pub fn wedge11(a: &OneForm, b: &OneForm) -> TwoForm {
    TwoForm {
        dxdy: &(&a.dx * &b.dy) - &(&a.dy * &b.dx),
        dxdp: &(&a.dx * &b.dp) - &(&a.dp * &b.dx),
        dydp: &(&a.dy * &b.dp) - &(&a.dp * &b.dy),
    }
}

pub fn wedge21(a: &TwoForm, b: &OneForm) -> ThreeForm {
    // (dx^dy)^dp = +, (dx^dp)^dy = -, (dy^dp)^dx = +
    ThreeForm {
        coeff: &(&(&a.dxdy * &b.dp) - &(&a.dxdp * &b.dy)) + &(&a.dydp * &b.dx),
    }
}

/// True iff w ^ theta ^ theta^a = 0 exactly, i.e. w lies in the span of the
/// two everywhere-independent generators of the web member's ideal.
pub fn in_web_ideal(w: &OneForm, q_value: &Rational) -> bool {
    let theta = contact_form();
    let theta_a = leaf_form(q_value);
    wedge21(&wedge11(w, &theta), &theta_a).is_zero()
}
