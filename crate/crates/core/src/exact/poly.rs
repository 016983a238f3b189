//! Sparse multivariate polynomials over the rationals in the four jet-space
//! variables (x, y, p, q).
//!
//! Terms are kept in a `BTreeMap` ordered by graded lexicographic order with
//! x < y < p < q, which fixes serialization order and matrix column order
//! everywhere downstream. No zero coefficient is ever stored.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::rational::{format_rational, parse_rational, Rational};
use crate::error::{LegwebError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Var {
    X = 0,
    Y = 1,
    P = 2,
    Q = 3,
}

pub const VARS: [Var; 4] = [Var::X, Var::Y, Var::P, Var::Q];

/// Exponent tuple for (x, y, p, q). The tuple is the identity of the monomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial(pub [u32; 4]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; 4]);

    pub fn var(v: Var) -> Self {
        let mut e = [0; 4];
        e[v as usize] = 1;
        Monomial(e)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exp(&self, v: Var) -> u32 {
        self.0[v as usize]
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0) {
            *a += b;
        }
        Monomial(e)
    }
}

/// Graded lexicographic: first total degree, ties broken by the exponent
/// tuple in variable order x < y < p < q.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly::default()
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = MultiPoly::zero();
        p.add_term(Monomial::ONE, c);
        p
    }

    pub fn var(v: Var) -> Self {
        let mut p = MultiPoly::zero();
        p.add_term(Monomial::var(v), Rational::from_integer(1.into()));
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().clone() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.keys().map(|m| m.exp(v)).max().unwrap_or(0)
    }

    pub fn contains_var(&self, v: Var) -> bool {
        self.terms.keys().any(|m| m.exp(v) > 0)
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (*m, a * c))
                .collect(),
        }
    }

    /// Formal partial derivative with respect to one variable.
    pub fn partial(&self, v: Var) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            let e = m.exp(v);
            if e == 0 {
                continue;
            }
            let mut exps = m.0;
            exps[v as usize] -= 1;
            out.add_term(Monomial(exps), c * Rational::from_integer(e.into()));
        }
        out
    }

    pub fn partial_iter(&self, v: Var, n: u32) -> MultiPoly {
        let mut p = self.clone();
        for _ in 0..n {
            p = p.partial(v);
        }
        p
    }

    /// Substitutes a rational value for q, leaving a polynomial in (x, y, p).
    pub fn substitute_q(&self, value: &Rational) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            let eq = m.exp(Var::Q);
            let mut exps = m.0;
            exps[Var::Q as usize] = 0;
            let mut coeff = c.clone();
            for _ in 0..eq {
                coeff = coeff * value;
            }
            out.add_term(Monomial(exps), coeff);
        }
        out
    }

    /// Value at the basepoint (x, y, p, q) = (0, 0, 0, 0): the constant term.
    pub fn constant_term(&self) -> Rational {
        self.coeff(&Monomial::ONE)
    }

    pub fn pow(&self, n: u32) -> MultiPoly {
        let mut acc = MultiPoly::constant(Rational::from_integer(1.into()));
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    pub fn to_json(&self) -> Vec<PolyTerm> {
        self.terms
            .iter()
            .map(|(m, c)| PolyTerm {
                exps: m.0,
                coeff: format_rational(c),
            })
            .collect()
    }

    pub fn from_json(terms: &[PolyTerm]) -> Result<MultiPoly> {
        let mut p = MultiPoly::zero();
        for t in terms {
            p.add_term(Monomial(t.exps), parse_rational(&t.coeff)?);
        }
        Ok(p)
    }
}

/// One serialized term: {"exps":[ex,ey,ep,eq], "coeff":"a/b"}.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PolyTerm {
    pub exps: [u32; 4],
    pub coeff: String,
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c.clone());
        }
        out
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let names = ["x", "y", "p", "q"];
        let mut first = true;
        for (m, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{}", format_rational(c))?;
            for (i, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => write!(f, "*{}", names[i])?,
                    _ => write!(f, "*{}^{}", names[i], e)?,
                }
            }
        }
        Ok(())
    }
}

/// Fails on inputs containing q; used where a function on (x, y, p) is required.
pub fn require_no_q(p: &MultiPoly) -> Result<()> {
    if p.contains_var(Var::Q) {
        Err(LegwebError::UnexpectedQ)
    } else {
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{rat, rat_int};

    fn x() -> MultiPoly {
        MultiPoly::var(Var::X)
    }
    fn y() -> MultiPoly {
        MultiPoly::var(Var::Y)
    }
    fn p() -> MultiPoly {
        MultiPoly::var(Var::P)
    }
    fn q() -> MultiPoly {
        MultiPoly::var(Var::Q)
    }

    #[test]
    fn additive_identity() {
        let a = &y() - &(&p() * &x());
        assert_eq!(&a + &MultiPoly::zero(), a);
    }

    #[test]
    fn square_of_p() {
        let pp = &p() * &p();
        assert_eq!(pp, p().pow(2));
        assert_eq!(pp.degree_in(Var::P), 2);
    }

    #[test]
    fn binomial_square_identity() {
        // (p - q x)^2 = p^2 - 2 q x p + q^2 x^2, and equals
        // 2 q (y - p x + q x^2 / 2) + 2 (p^2/2 - q y).
        let lhs = (&p() - &(&q() * &x())).pow(2);
        let mut expanded = MultiPoly::zero();
        expanded.add_term(Monomial([0, 0, 2, 0]), rat_int(1));
        expanded.add_term(Monomial([1, 0, 1, 1]), rat_int(-2));
        expanded.add_term(Monomial([2, 0, 0, 2]), rat_int(1));
        assert_eq!(lhs, expanded);

        let u0 = &(&y() - &(&p() * &x())) + &(&q() * &x().pow(2)).scale(&rat(1, 2));
        let u2 = &p().pow(2).scale(&rat(1, 2)) - &(&q() * &y());
        let rhs = &(&q() * &u0).scale(&rat_int(2)) + &u2.scale(&rat_int(2));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn partial_examples() {
        let a = &p() - &(&q() * &x());
        assert_eq!(a.partial(Var::P), MultiPoly::constant(rat_int(1)));

        let u2 = &p().pow(2).scale(&rat(1, 2)) - &(&q() * &y());
        assert_eq!(u2.partial(Var::Y), -&q());

        let u0 = &(&y() - &(&p() * &x())) + &(&q() * &x().pow(2)).scale(&rat(1, 2));
        let expect = &(-&p()) + &(&q() * &x());
        assert_eq!(u0.partial(Var::X), expect);
    }

    #[test]
    fn substitute_q_examples() {
        let a = &p() - &(&q() * &x());
        assert_eq!(a.substitute_q(&rat_int(0)), p());

        let u2 = &p().pow(2).scale(&rat(1, 2)) - &(&q() * &y());
        let got = u2.substitute_q(&rat_int(2));
        let expect = &p().pow(2).scale(&rat(1, 2)) - &y().scale(&rat_int(2));
        assert_eq!(got, expect);

        let u0 = &(&y() - &(&p() * &x())) + &(&q() * &x().pow(2)).scale(&rat(1, 2));
        // value at basepoint after specialization: constant term is 0
        assert!(u0.substitute_q(&rat_int(5)).constant_term().is_zero());
    }

    #[test]
    fn serialization_is_graded_lex_sorted() {
        let f = &(&p().pow(3) + &(&x() * &y())) + &MultiPoly::constant(rat(1, 3));
        let terms = f.to_json();
        let degs: Vec<u32> = terms.iter().map(|t| t.exps.iter().sum()).collect();
        let mut sorted = degs.clone();
        sorted.sort_unstable();
        assert_eq!(degs, sorted);
        let back = MultiPoly::from_json(&terms).unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn rejects_q_where_disallowed() {
        assert!(require_no_q(&q()).is_err());
        assert!(require_no_q(&(&x() + &p())).is_ok());
    }
}
