//! The model Legendrian d-web y'' = q^a with distinct constant leaf values,
//! its universal first integrals, and the weight/depth gradings.

use serde::{Deserialize, Serialize};

use crate::error::{LegwebError, Result};
use crate::exact::poly::{MultiPoly, Var};
use crate::exact::rational::{format_rational, parse_rational, rat, rat_int, Rational};

/// A model web: d >= 3 pairwise distinct leaf values q^1, ..., q^d.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WebSpec {
    q_values: Vec<Rational>,
}

impl WebSpec {
    pub fn new(q_values: Vec<Rational>) -> Result<Self> {
        if q_values.len() < 3 {
            return Err(LegwebError::BadWebSize(q_values.len()));
        }
        for i in 0..q_values.len() {
            for j in i + 1..q_values.len() {
                if q_values[i] == q_values[j] {
                    return Err(LegwebError::DuplicateLeafValues);
                }
            }
        }
        Ok(WebSpec { q_values })
    }

    /// Default demo web: q = (0, 1, ..., d-1).
    pub fn default_for(d: usize) -> Result<Self> {
        WebSpec::new((0..d as i64).map(rat_int).collect())
    }

    pub fn d(&self) -> usize {
        self.q_values.len()
    }

    pub fn q_values(&self) -> &[Rational] {
        &self.q_values
    }

    pub fn to_json(&self) -> WebSpecJson {
        WebSpecJson {
            d: self.d(),
            q: self.q_values.iter().map(format_rational).collect(),
        }
    }

    pub fn from_json(json: &WebSpecJson) -> Result<Self> {
        let q = json
            .q
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>>>()?;
        if q.len() != json.d {
            return Err(LegwebError::Malformed(format!(
                "web lists d = {} but has {} leaf values",
                json.d,
                q.len()
            )));
        }
        WebSpec::new(q)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WebSpecJson {
    pub d: usize,
    pub q: Vec<String>,
}

/// Index pair (m, j) with its unique decomposition (j0, j1, j2) satisfying
/// j0 + j1 + j2 = m - 1, j1 in {0, 1}, j = j1 + 2 j2.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IndexMJ {
    pub m: u32,
    pub j: u32,
    pub j0: u32,
    pub j1: u32,
    pub j2: u32,
}

pub fn index_decompose(m: u32, j: u32) -> Result<IndexMJ> {
    if m < 2 || j > 2 * m - 2 {
        return Err(LegwebError::IndexOutOfRange {
            m: m as i64,
            j: j as i64,
        });
    }
    let j1 = j % 2;
    let j2 = (j - j1) / 2;
    let j0 = m - 1 - j1 - j2;
    Ok(IndexMJ { m, j, j0, j1, j2 })
}

/// The three generating first integrals of y'' = q, linear in q.
pub fn u_basic() -> (MultiPoly, MultiPoly, MultiPoly) {
    let x = MultiPoly::var(Var::X);
    let y = MultiPoly::var(Var::Y);
    let p = MultiPoly::var(Var::P);
    let q = MultiPoly::var(Var::Q);
    let u0 = &(&y - &(&p * &x)) + &(&q * &x.pow(2)).scale(&rat(1, 2));
    let u1 = &p - &(&q * &x);
    let u2 = &p.pow(2).scale(&rat(1, 2)) - &(&q * &y);
    (u0, u1, u2)
}

/// Closed-form universal first integral u^{m+1}_j = u0^{j0} u1^{j1} u2^{j2}.
pub fn u_universal(m: u32, j: u32) -> Result<MultiPoly> {
    let idx = index_decompose(m, j)?;
    let (u0, u1, u2) = u_basic();
    Ok(&(&u0.pow(idx.j0) * &u1.pow(idx.j1)) * &u2.pow(idx.j2))
}

/// Weight of a nonzero polynomial: max over monomials of deg_p + deg_y.
pub fn weight_of(h: &MultiPoly) -> Result<u32> {
    if h.is_zero() {
        return Err(LegwebError::ZeroPolynomial);
    }
    Ok(h.terms()
        .map(|(m, _)| m.exp(Var::P) + m.exp(Var::Y))
        .max()
        .unwrap())
}

/// Depth of a nonzero polynomial: max over monomials of deg_p + 2 deg_y.
pub fn depth_of(h: &MultiPoly) -> Result<u32> {
    if h.is_zero() {
        return Err(LegwebError::ZeroPolynomial);
    }
    Ok(h.terms()
        .map(|(m, _)| m.exp(Var::P) + 2 * m.exp(Var::Y))
        .max()
        .unwrap())
}
