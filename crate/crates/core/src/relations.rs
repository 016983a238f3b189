//! Construction and exact verification of the Abelian relations of the
//! model web, together with the rank count rho_d.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{LegwebError, Result};
use crate::exact::matrix::{in_span, power_matrix, ExactMatrix};
use crate::exact::poly::{Monomial, MultiPoly, PolyTerm};
use crate::exact::rational::{format_rational, parse_rational, Rational};
use crate::forms::{d_of_function, in_web_ideal};
use crate::model::{u_universal, WebSpec, WebSpecJson};

/// rho_d = (d-1)(d-2)(2d+3)/6, the maximum rank of a Legendrian d-web.
pub fn rho(d: usize) -> Result<u64> {
    if d < 3 {
        return Err(LegwebError::BadWebSize(d));
    }
    let d = d as u64;
    let num = (d - 1) * (d - 2) * (2 * d + 3);
    debug_assert_eq!(num % 6, 0);
    Ok(num / 6)
}

/// The decomposition rho_d = sum over m of (d-m)(2m-1), listed as
/// (count, odd) pairs [(d-2, 3), (d-3, 5), ..., (1, 2d-3)].
pub fn rho_decomposition(d: usize) -> Result<Vec<(u64, u64)>> {
    if d < 3 {
        return Err(LegwebError::BadWebSize(d));
    }
    let d = d as u64;
    Ok((2..d).map(|m| (d - m, 2 * m - 1)).collect())
}

/// The d-1 vectors v^mu complementary to the Vandermonde powers:
/// <v^mu, q^l> = 0 for 0 <= l <= d-mu-1, jointly linearly independent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplementVectors {
    pub vectors: Vec<Vec<Rational>>,
}

/// Deterministic nested-RREF construction: for each mu, take the exact
/// nullspace of the (d-mu) x d block of Vandermonde rows and keep the first
/// basis vector not already spanned by the previous choices.
pub fn vandermonde_complement(web: &WebSpec) -> ComplementVectors {
    let d = web.d();
    let mut vectors: Vec<Vec<Rational>> = Vec::with_capacity(d - 1);
    for mu in 1..d {
        let block = power_matrix(web.q_values(), d - mu);
        let (_, basis) = block.rank_nullspace();
        let v = basis
            .into_iter()
            .find(|v| !in_span(&vectors, v))
            .expect("distinct leaf values guarantee a fresh nullspace vector");
        vectors.push(v);
    }
    ComplementVectors { vectors }
}

/// A d-tuple of un-differentiated first integrals (h^1, ..., h^d), each a
/// polynomial in (x, y, p), with the indices of the generating data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianRelation {
    pub m: u32,
    pub j: u32,
    pub mu: u32,
    pub components: Vec<MultiPoly>,
}

impl AbelianRelation {
    pub fn d(&self) -> usize {
        self.components.len()
    }
}

/// Builds the full set of rho_d relations Gamma^{m;mu}_j with components
/// h^a = v^mu_a * u^{m+1}_j(q^a).
pub fn build_relations(web: &WebSpec) -> (ComplementVectors, Vec<AbelianRelation>) {
    let d = web.d() as u32;
    let complement = vandermonde_complement(web);
    let mut relations = Vec::new();
    for m in 2..d {
        for j in 0..=2 * m - 2 {
            let u = u_universal(m, j).expect("(m, j) in range by construction");
            let specialized: Vec<MultiPoly> = web
                .q_values()
                .iter()
                .map(|qa| u.substitute_q(qa))
                .collect();
            for mu in 1..=d - m {
                let v = &complement.vectors[(mu - 1) as usize];
                let components = specialized
                    .iter()
                    .zip(v)
                    .map(|(h, va)| h.scale(va))
                    .collect();
                relations.push(AbelianRelation { m, j, mu, components });
            }
        }
    }
    relations
        .sort_by_key(|r| (r.m, r.j, r.mu));
    (complement, relations)
}

/// Per-relation exact verification report.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RelationReport {
    pub m: u32,
    pub j: u32,
    pub mu: u32,
    /// sum of the d components is the zero polynomial
    pub sum_zero: bool,
    /// every component vanishes at the basepoint (0, 0, 0)
    pub basepoint_zero: bool,
    /// d(h^a) lies in the ideal of web member a, by the exact wedge test
    pub ideal_membership: bool,
}

impl RelationReport {
    pub fn pass(&self) -> bool {
        self.sum_zero && self.basepoint_zero && self.ideal_membership
    }
}

pub fn verify_relation(rel: &AbelianRelation, web: &WebSpec) -> Result<RelationReport> {
    if rel.d() != web.d() {
        return Err(LegwebError::WebMismatch {
            relation: rel.d(),
            web: web.d(),
        });
    }
    let sum = rel
        .components
        .iter()
        .fold(MultiPoly::zero(), |acc, h| &acc + h);
    let basepoint_zero = rel
        .components
        .iter()
        .all(|h| h.constant_term().is_zero());
    let mut ideal_membership = true;
    for (h, qa) in rel.components.iter().zip(web.q_values()) {
        // d(h) is closed automatically (d^2 = 0); membership is the content.
        let dh = d_of_function(h)?;
        if !in_web_ideal(&dh, qa) {
            ideal_membership = false;
        }
    }
    Ok(RelationReport {
        m: rel.m,
        j: rel.j,
        mu: rel.mu,
        sum_zero: sum.is_zero(),
        basepoint_zero,
        ideal_membership,
    })
}

/// Exact rank of the relation set: rows are the d component polynomials
/// flattened over the common (union) monomial support in graded-lex order.
pub fn rank_of_relations(rels: &[AbelianRelation]) -> usize {
    if rels.is_empty() {
        return 0;
    }
    let d = rels[0].d();
    let mut support: Vec<Monomial> = Vec::new();
    for rel in rels {
        for h in &rel.components {
            for (m, _) in h.terms() {
                if !support.contains(m) {
                    support.push(*m);
                }
            }
        }
    }
    support.sort();
    let mut rows = Vec::with_capacity(rels.len());
    for rel in rels {
        let mut row = Vec::with_capacity(d * support.len());
        for h in &rel.components {
            for m in &support {
                row.push(h.coeff(m));
            }
        }
        rows.push(row);
    }
    ExactMatrix::from_rows(rows).rank()
}

// ---------------------------------------------------------------------------
// file formats

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RelationJson {
    pub m: u32,
    pub j: u32,
    pub mu: u32,
    pub components: Vec<Vec<PolyTerm>>,
}

/// Relations file: the web, the chosen complement vectors, and the full
/// relation list.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RelationsFile {
    pub web: WebSpecJson,
    pub complement_vectors: Vec<Vec<String>>,
    pub relations: Vec<RelationJson>,
}

pub fn to_relations_file(
    web: &WebSpec,
    complement: &ComplementVectors,
    rels: &[AbelianRelation],
) -> RelationsFile {
    RelationsFile {
        web: web.to_json(),
        complement_vectors: complement
            .vectors
            .iter()
            .map(|v| v.iter().map(format_rational).collect())
            .collect(),
        relations: rels
            .iter()
            .map(|r| RelationJson {
                m: r.m,
                j: r.j,
                mu: r.mu,
                components: r.components.iter().map(|h| h.to_json()).collect(),
            })
            .collect(),
    }
}

pub fn from_relations_file(
    file: &RelationsFile,
) -> Result<(WebSpec, ComplementVectors, Vec<AbelianRelation>)> {
    let web = WebSpec::from_json(&file.web)?;
    let vectors = file
        .complement_vectors
        .iter()
        .map(|v| v.iter().map(|s| parse_rational(s)).collect())
        .collect::<Result<Vec<Vec<Rational>>>>()?;
    let relations = file
        .relations
        .iter()
        .map(|r| {
            let components = r
                .components
                .iter()
                .map(|c| MultiPoly::from_json(c))
                .collect::<Result<Vec<_>>>()?;
            Ok(AbelianRelation {
                m: r.m,
                j: r.j,
                mu: r.mu,
                components,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((web, ComplementVectors { vectors }, relations))
}
