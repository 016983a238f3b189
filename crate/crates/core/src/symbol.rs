//! Per-depth symbol matrices of the compatibility equations for the model
//! web, the c-coefficient table, the counting table, and the total-sum
//! identity.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{LegwebError, Result};
use crate::exact::matrix::ExactMatrix;
use crate::exact::poly::{MultiPoly, Var};
use crate::exact::rational::Rational;
use crate::model::WebSpec;
use crate::relations::AbelianRelation;

/// c^I_J = I! / (2^J (I-2J)! J!) for 0 <= J <= I/2, else 0.
pub fn c_coeff(i_upper: u32, j_lower: i64) -> BigInt {
    if j_lower < 0 || 2 * j_lower > i_upper as i64 {
        return BigInt::zero();
    }
    let j = j_lower as u32;
    let mut num = BigInt::one();
    for k in 1..=i_upper {
        num *= k;
    }
    let mut den = BigInt::from(2u32).pow(j);
    for k in 1..=(i_upper - 2 * j) {
        den *= k;
    }
    for k in 1..=j {
        den *= k;
    }
    num / den
}

/// Same table via the recursion c^I_J = (I-2J+1) c^{I-1}_{J-1} + c^{I-1}_J.
pub fn c_coeff_recursive(i_upper: u32, j_lower: i64) -> BigInt {
    if j_lower < 0 || 2 * j_lower > i_upper as i64 {
        return BigInt::zero();
    }
    if j_lower == 0 {
        return BigInt::one();
    }
    let scale = BigInt::from(i_upper as i64 - 2 * j_lower + 1);
    scale * c_coeff_recursive(i_upper - 1, j_lower - 1)
        + c_coeff_recursive(i_upper - 1, j_lower)
}

/// Variable label: component a and derivative orders (i, j) of f^a_{ij}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct VarLabel {
    pub a: usize,
    pub i: u32,
    pub j: u32,
}

/// Equation label: E^I_{ij} with 0 <= I <= i.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EqLabel {
    pub big_i: u32,
    pub i: u32,
    pub j: u32,
}

/// The exact symbol matrix of one depth layer: variables f^a_{ij} with
/// i + 2j = depth, equations E^I_{ij} of the same depth.
#[derive(Debug, Clone)]
pub struct DepthBlock {
    pub d: usize,
    pub depth: u32,
    pub variables: Vec<VarLabel>,
    pub equations: Vec<EqLabel>,
    pub matrix: ExactMatrix,
}

/// The (i, j) pairs of one depth, sorted by i descending.
fn depth_pairs(depth: u32) -> Vec<(u32, u32)> {
    let mut pairs: Vec<(u32, u32)> = (0..=depth / 2)
        .map(|j| (depth - 2 * j, j))
        .filter(|&(i, j)| (i, j) != (0, 0))
        .collect();
    pairs.sort_by(|a, b| b.0.cmp(&a.0));
    pairs
}

pub fn depth_block(web: &WebSpec, depth: u32) -> Result<DepthBlock> {
    if depth == 0 {
        return Err(LegwebError::BadDepth(depth as i64));
    }
    let d = web.d();
    let pairs = depth_pairs(depth);

    // variables by (i descending, a ascending); equations by (i descending,
    // I ascending)
    let mut variables = Vec::new();
    let mut equations = Vec::new();
    for &(i, j) in &pairs {
        for a in 0..d {
            variables.push(VarLabel { a, i, j });
        }
        for big_i in 0..=i {
            equations.push(EqLabel { big_i, i, j });
        }
    }

    let col_of = |a: usize, i: u32, j: u32| -> Option<usize> {
        variables.iter().position(|v| v.a == a && v.i == i && v.j == j)
    };

    let mut matrix = ExactMatrix::zeros(equations.len(), variables.len());
    for (row, eq) in equations.iter().enumerate() {
        // E^I_{ij}: sum over k of c^I_k <q^{I-k}, f_{(i-2k)(j+k)}> = 0.
        // Every term keeps depth (i-2k) + 2(j+k) = i + 2j, so the block is
        // depth-diagonal.
        for k in 0..=eq.i / 2 {
            let c = c_coeff(eq.big_i, k as i64);
            if c.is_zero() || 2 * k > eq.i {
                continue;
            }
            let (vi, vj) = (eq.i - 2 * k, eq.j + k);
            let power = eq.big_i - k; // I - k >= I/2 >= k is guaranteed
            for (a, qa) in web.q_values().iter().enumerate() {
                let col = match col_of(a, vi, vj) {
                    Some(c) => c,
                    None => continue, // f_{00} = 0 by convention
                };
                let mut entry = Rational::from(c.clone());
                for _ in 0..power {
                    entry = &entry * qa;
                }
                let prev = matrix.get(row, col).clone();
                matrix.set(row, col, prev + entry);
            }
        }
    }

    Ok(DepthBlock {
        d,
        depth,
        variables,
        equations,
        matrix,
    })
}

impl DepthBlock {
    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn is_full_rank(&self) -> bool {
        self.rank() == self.equations.len().min(self.variables.len())
    }
}

pub fn check_full_rank(web: &WebSpec, depth: u32) -> Result<bool> {
    Ok(depth_block(web, depth)?.is_full_rank())
}

/// Closed-form per-depth counts: variables d * (floor(depth/2) + 1),
/// equations sum of (i + 1) over the pairs of that depth.
pub fn expected_counts(d: usize, depth: u32) -> (usize, usize) {
    let vars = d * (depth as usize / 2 + 1);
    let eqs: usize = depth_pairs(depth).iter().map(|&(i, _)| i as usize + 1).sum();
    (vars, eqs)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CountingRow {
    pub depth: u32,
    pub vars: usize,
    pub eqs: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CountingTable {
    pub d: usize,
    pub rows: Vec<CountingRow>,
    pub rho: u64,
}

/// Per-depth variable and equation counts for depth 1 .. 2d-3.
pub fn counting_table(d: usize) -> Result<CountingTable> {
    let rho_d = crate::relations::rho(d)?;
    let rows = (1..=2 * d as u32 - 3)
        .map(|depth| {
            let (vars, eqs) = expected_counts(d, depth);
            CountingRow { depth, vars, eqs }
        })
        .collect();
    Ok(CountingTable { d, rows, rho: rho_d })
}

/// (total variables) - (total equations) over depth 1..2d-3 equals rho_d.
pub fn total_sum_check(d: usize) -> Result<bool> {
    let table = counting_table(d)?;
    let vars: usize = table.rows.iter().map(|r| r.vars).sum();
    let eqs: usize = table.rows.iter().map(|r| r.eqs).sum();
    Ok(vars as i64 - eqs as i64 == table.rho as i64)
}

/// Checks that every relation satisfies every compatibility equation of
/// depth <= depth_max exactly, with f^a_{ij} = d^i/dp^i d^j/dy^j h^a.
pub fn relations_satisfy_symbol(
    web: &WebSpec,
    rels: &[AbelianRelation],
    depth_max: u32,
) -> bool {
    for rel in rels {
        if rel.d() != web.d() {
            return false;
        }
        for depth in 1..=depth_max {
            for (i, j) in depth_pairs(depth) {
                for big_i in 0..=i {
                    let mut sum = MultiPoly::zero();
                    for k in 0..=i / 2 {
                        let c = c_coeff(big_i, k as i64);
                        if c.is_zero() {
                            continue;
                        }
                        let (di, dj) = (i - 2 * k, j + k);
                        let power = big_i - k;
                        for (h, qa) in rel.components.iter().zip(web.q_values()) {
                            let f = h.partial_iter(Var::P, di).partial_iter(Var::Y, dj);
                            let mut coeff = Rational::from(c.clone());
                            for _ in 0..power {
                                coeff = &coeff * qa;
                            }
                            sum = &sum + &f.scale(&coeff);
                        }
                    }
                    if !sum.is_zero() {
                        return false;
                    }
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::rat_int;
    use crate::relations::build_relations;

    #[test]
    fn c_coeff_table() {
        // rows I = 0..4, J = 0..3
        let expect: [[i64; 4]; 5] = [
            [1, 0, 0, 0],
            [1, 0, 0, 0],
            [1, 1, 0, 0],
            [1, 3, 0, 0],
            [1, 6, 3, 0],
        ];
        for (i, row) in expect.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                assert_eq!(
                    c_coeff(i as u32, j as i64),
                    BigInt::from(v),
                    "c^{i}_{j}"
                );
            }
        }
        // c^5_2 = 2 c^4_1 + c^4_2 = 15
        assert_eq!(c_coeff(5, 2), BigInt::from(15));
        assert_eq!(c_coeff(5, 2), c_coeff_recursive(5, 2));
    }

    #[test]
    fn c_coeff_recursion_matches_closed_form() {
        for i in 0..=30u32 {
            for j in -1..=(i as i64 / 2 + 1) {
                assert_eq!(c_coeff(i, j), c_coeff_recursive(i, j), "I={i} J={j}");
            }
        }
    }

    #[test]
    fn depth_one_block_is_vandermonde() {
        let web = WebSpec::default_for(3).unwrap();
        let block = depth_block(&web, 1).unwrap();
        assert_eq!(block.variables.len(), 3);
        assert_eq!(block.equations.len(), 2);
        // rows (1,1,1) and (q^1, q^2, q^3)
        for a in 0..3 {
            assert_eq!(*block.matrix.get(0, a), rat_int(1));
            assert_eq!(*block.matrix.get(1, a), rat_int(a as i64));
        }
        assert!(block.is_full_rank());
        assert_eq!(block.rank(), 2);
    }

    #[test]
    fn depth_two_counts() {
        let web = WebSpec::default_for(4).unwrap();
        let block = depth_block(&web, 2).unwrap();
        assert_eq!(block.variables.len(), 2 * 4);
        assert_eq!(block.equations.len(), 4); // 1 + 3
    }

    #[test]
    fn depth_four_row_has_c21_term() {
        // E^2_{40} includes the k=1 term c^2_1 <q^1, f_{21}> with c^2_1 = 1.
        let web = WebSpec::default_for(3).unwrap();
        let block = depth_block(&web, 4).unwrap();
        let row = block
            .equations
            .iter()
            .position(|e| e.big_i == 2 && e.i == 4 && e.j == 0)
            .unwrap();
        let col = block
            .variables
            .iter()
            .position(|v| v.a == 2 && v.i == 2 && v.j == 1)
            .unwrap();
        // entry = c^2_1 * (q^3)^1 = 2
        assert_eq!(*block.matrix.get(row, col), rat_int(2));
    }

    #[test]
    fn block_is_invalid_at_depth_zero() {
        let web = WebSpec::default_for(3).unwrap();
        assert!(depth_block(&web, 0).is_err());
    }

    #[test]
    fn table_counts_match_blocks() {
        for d in 3..=8usize {
            let web = WebSpec::default_for(d).unwrap();
            for depth in 1..=2 * d as u32 - 3 {
                let block = depth_block(&web, depth).unwrap();
                let (vars, eqs) = expected_counts(d, depth);
                assert_eq!(block.variables.len(), vars, "d={d} depth={depth}");
                assert_eq!(block.equations.len(), eqs, "d={d} depth={depth}");
            }
        }
    }

    #[test]
    fn table_boundary_rows() {
        // depth 2d-4: ((d-1)d, (d-1)^2); depth 2d-3: ((d-1)d, (d-1)d)
        for d in 3..=8usize {
            if d >= 4 {
                let (vars, eqs) = expected_counts(d, 2 * d as u32 - 4);
                assert_eq!(vars, (d - 1) * d);
                assert_eq!(eqs, (d - 1) * (d - 1));
            }
            let (vars, eqs) = expected_counts(d, 2 * d as u32 - 3);
            assert_eq!(vars, (d - 1) * d);
            assert_eq!(eqs, (d - 1) * d);
        }
    }

    #[test]
    fn full_rank_small_webs() {
        // d = 3, depth 1: rank 2; d = 4, depth 5: square block of size 12;
        // d = 5, depth 6: rank 16 with 20 variables
        assert!(check_full_rank(&WebSpec::default_for(3).unwrap(), 1).unwrap());
        let b45 = depth_block(&WebSpec::default_for(4).unwrap(), 5).unwrap();
        assert_eq!(b45.equations.len(), 12);
        assert_eq!(b45.variables.len(), 12);
        assert!(b45.is_full_rank());
        let b56 = depth_block(&WebSpec::default_for(5).unwrap(), 6).unwrap();
        assert_eq!(b56.rank(), 16);
        assert_eq!(b56.variables.len(), 20);
    }

    #[test]
    fn total_sum_identity() {
        for d in 3..=12 {
            assert!(total_sum_check(d).unwrap(), "d = {d}");
        }
        // spot check one row: d=4, depth 4 -> (12, 9)
        let t = counting_table(4).unwrap();
        let row = t.rows.iter().find(|r| r.depth == 4).unwrap();
        assert_eq!((row.vars, row.eqs), (12, 9));
        // d=3: depths 1..3 -> vars (3,6,6), eqs (2,4,6)
        let t3 = counting_table(3).unwrap();
        let vars: Vec<usize> = t3.rows.iter().map(|r| r.vars).collect();
        let eqs: Vec<usize> = t3.rows.iter().map(|r| r.eqs).collect();
        assert_eq!(vars, vec![3, 6, 6]);
        assert_eq!(eqs, vec![2, 4, 6]);
    }

    #[test]
    fn relations_satisfy_symbol_small() {
        for d in 3..=4usize {
            let web = WebSpec::default_for(d).unwrap();
            let (_, rels) = build_relations(&web);
            assert!(relations_satisfy_symbol(&web, &rels, 2 * d as u32 - 3));
        }
    }

    #[test]
    fn corrupted_relation_fails_symbol() {
        let web = WebSpec::default_for(3).unwrap();
        let (_, mut rels) = build_relations(&web);
        // flip the sign of one component
        rels[0].components[0] = -&rels[0].components[0];
        assert!(!relations_satisfy_symbol(&web, &rels, 1));
    }
}
