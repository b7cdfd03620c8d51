//! The pairing matrix `Ω′` of a weighted affine group and its factorization
//! `Ω′ = Pᵀ Λ′ P` with `P` unitriangular for `≤` and `Λ′` block diagonal for `≈`.
//!
//! Rows and columns are indexed by `Irr(W̄)` sorted by decreasing `c`, then by
//! label, so that `P` is upper unitriangular and the `≈`-classes are contiguous.

use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::chars::{character_table, CharTable, IrrLabel};
use crate::exec::{self, Backend};
use crate::poly::{Poly, RatFun};
use crate::weighted::{order_relations, CFunctionTable, WeightedError};

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum GreenError {
    #[error("singular diagonal block at c = {0}")]
    SingularBlock(u64),
    #[error("pairing matrix is not symmetric at ({0}, {1})")]
    Asymmetric(usize, usize),
    #[error(transparent)]
    Weighted(#[from] WeightedError),
}

/// `Ω′` together with the index data it is expressed in.
#[derive(Clone, Debug)]
pub struct PairingMatrix {
    pub labels: Vec<IrrLabel>,
    /// Position in the character table of each row.
    pub table_index: Vec<usize>,
    pub c: Vec<u64>,
    /// `∼`-class id of each row.
    pub sim: Vec<usize>,
    pub entries: Vec<Vec<RatFun>>,
}

impl PairingMatrix {
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Row ranges of the `≈`-classes, in decreasing `c`.
    pub fn blocks(&self) -> Vec<std::ops::Range<usize>> {
        let mut out = Vec::new();
        let mut start = 0;
        for i in 1..=self.len() {
            if i == self.len() || self.c[i] != self.c[start] {
                out.push(start..i);
                start = i;
            }
        }
        out
    }
}

fn to_poly(c: &[i64]) -> Poly {
    Poly::from_ints(c)
}

/// Precomputed class data: `L = lcm det(q - w)` and the cofactors `L / det(q - w)`.
struct ClassSums {
    lcm: Poly,
    cofactors: Vec<Poly>,
}

impl ClassSums {
    fn new(t: &CharTable) -> Self {
        let polys: Vec<Poly> = t.char_polys.iter().map(|c| to_poly(c)).collect();
        let mut lcm = Poly::one();
        for p in &polys {
            let g = Poly::gcd(&lcm, p);
            lcm = (&lcm * p).div_exact(&g);
        }
        let cofactors = polys.iter().map(|p| lcm.div_exact(p)).collect();
        ClassSums { lcm, cofactors }
    }
}

fn entry(t: &CharTable, cs: &ClassSums, e: usize, f: usize, shift: u64) -> RatFun {
    let order = BigRational::from_integer(t.order.into());
    let mut num = Poly::zero();
    for k in 0..t.num_classes() {
        let coef = t.class_sizes[k] as i128 * t.values[e][k] as i128 * t.values[f][k] as i128;
        if coef != 0 {
            let w = BigRational::from_integer(coef.into()) / &order;
            num = &num + &cs.cofactors[k].scale(&w);
        }
    }
    &RatFun::new(num, cs.lcm.clone()) * &RatFun::q_pow(-(shift as i64))
}

/// A single entry `Ω′_{E,Ẽ}`, by table indices.
pub fn omega_prime(tbl: &CFunctionTable, e: usize, f: usize) -> Result<RatFun, GreenError> {
    let t = character_table(tbl.affine).map_err(WeightedError::from)?;
    let cs = ClassSums::new(&t);
    Ok(entry(&t, &cs, e, f, tbl.rows[e].c + tbl.rows[f].c))
}

/// The full matrix, in sorted order.
pub fn omega_prime_matrix(tbl: &CFunctionTable, backend: Backend) -> Result<PairingMatrix, GreenError> {
    let t = character_table(tbl.affine).map_err(WeightedError::from)?;
    let rel = order_relations(tbl)?;
    let mut idx: Vec<usize> = (0..tbl.rows.len()).collect();
    idx.sort_by(|&a, &b| tbl.rows[b].c.cmp(&tbl.rows[a].c).then_with(|| tbl.rows[a].label.cmp(&tbl.rows[b].label)));
    let cs = ClassSums::new(&t);
    let n = idx.len();
    // both triangles are computed, so symmetry is a genuine check downstream
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
    let vals = exec::map(backend, &pairs, |&(i, j)| {
        let (e, f) = (idx[i], idx[j]);
        entry(&t, &cs, e, f, tbl.rows[e].c + tbl.rows[f].c)
    });
    let mut entries = vec![vec![RatFun::zero(); n]; n];
    for (&(i, j), v) in pairs.iter().zip(vals) {
        entries[i][j] = v;
    }
    Ok(PairingMatrix {
        labels: idx.iter().map(|&e| tbl.rows[e].label.clone()).collect(),
        c: idx.iter().map(|&e| tbl.rows[e].c).collect(),
        sim: idx.iter().map(|&e| rel.sim_class(e)).collect(),
        table_index: idx,
        entries,
    })
}

/// Direct evaluation of `q^{c_E+c_Ẽ} Ω′_{E,Ẽ}` at a rational point, class by class.
pub fn omega_prime_at(tbl: &CFunctionTable, e: usize, f: usize, q: &BigRational) -> Option<BigRational> {
    let t = character_table(tbl.affine).ok()?;
    let mut s = BigRational::zero();
    for k in 0..t.num_classes() {
        let d = to_poly(&t.char_polys[k]).eval(q);
        if d.is_zero() {
            return None;
        }
        let coef = t.class_sizes[k] as i128 * t.values[e][k] as i128 * t.values[f][k] as i128;
        s += BigRational::from_integer(coef.into()) / d;
    }
    Some(s / BigRational::from_integer(t.order.into()))
}

// ---------------------------------------------------------------- solver

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum EliminationOrder {
    /// Blocks in turn, each row of `P` from already finished rows.
    RowByRow,
    /// Schur-complement updates of the trailing matrix, pivots taken last first.
    TrailingUpdate,
}

#[derive(Clone, Debug)]
pub struct PLambdaSolution {
    pub labels: Vec<IrrLabel>,
    pub c: Vec<u64>,
    pub sim: Vec<usize>,
    pub p: Vec<Vec<RatFun>>,
    pub lambda: Vec<Vec<RatFun>>,
    pub order: EliminationOrder,
}

type Mat = Vec<Vec<RatFun>>;

fn sub(m: &Mat, r: &std::ops::Range<usize>, c: &std::ops::Range<usize>) -> Mat {
    m[r.clone()].iter().map(|row| row[c.clone()].to_vec()).collect()
}

fn matmul(a: &Mat, b: &Mat) -> Mat {
    let (n, k, m) = (a.len(), b.len(), b.first().map_or(0, |r| r.len()));
    let mut out = vec![vec![RatFun::zero(); m]; n];
    for i in 0..n {
        for l in 0..k {
            if a[i][l].is_zero() {
                continue;
            }
            for j in 0..m {
                if !b[l][j].is_zero() {
                    out[i][j] = &out[i][j] + &(&a[i][l] * &b[l][j]);
                }
            }
        }
    }
    out
}

fn transpose(a: &Mat) -> Mat {
    let m = a.first().map_or(0, |r| r.len());
    (0..m).map(|j| a.iter().map(|r| r[j].clone()).collect()).collect()
}

fn mat_sub(a: &Mat, b: &Mat) -> Mat {
    a.iter().zip(b).map(|(x, y)| x.iter().zip(y).map(|(u, v)| u - v).collect()).collect()
}

/// Solve `A X = B` by Gauss-Jordan; `reverse` picks pivot columns from the right.
fn solve(a: &Mat, b: &Mat, reverse: bool) -> Option<Mat> {
    let n = a.len();
    let mut a = a.clone();
    let mut b = b.clone();
    let cols: Vec<usize> = if reverse { (0..n).rev().collect() } else { (0..n).collect() };
    let mut piv_row = vec![usize::MAX; n];
    let mut used = vec![false; n];
    for &col in &cols {
        let r = (0..n).find(|&r| !used[r] && !a[r][col].is_zero())?;
        used[r] = true;
        piv_row[col] = r;
        let inv = a[r][col].recip();
        for x in a[r].iter_mut() {
            *x = &*x * &inv;
        }
        for x in b[r].iter_mut() {
            *x = &*x * &inv;
        }
        for rr in 0..n {
            if rr != r && !a[rr][col].is_zero() {
                let f = a[rr][col].clone();
                for j in 0..n {
                    let v = &a[rr][j] - &(&f * &a[r][j]);
                    a[rr][j] = v;
                }
                for j in 0..b[rr].len() {
                    let v = &b[rr][j] - &(&f * &b[r][j]);
                    b[rr][j] = v;
                }
            }
        }
    }
    Some((0..n).map(|col| b[piv_row[col]].clone()).collect())
}

/// Zero the entries of a diagonal block outside the `∼` relation.
fn mask_sim(l: &mut Mat, sim: &[usize]) {
    for i in 0..l.len() {
        for j in 0..l.len() {
            if sim[i] != sim[j] {
                l[i][j] = RatFun::zero();
            }
        }
    }
}

pub fn solve_p_lambda(om: &PairingMatrix, order: EliminationOrder) -> Result<PLambdaSolution, GreenError> {
    let n = om.len();
    for i in 0..n {
        for j in 0..i {
            if om.entries[i][j] != om.entries[j][i] {
                return Err(GreenError::Asymmetric(i, j));
            }
        }
    }
    let blocks = om.blocks();
    let mut p: Mat = (0..n).map(|i| (0..n).map(|j| if i == j { RatFun::one() } else { RatFun::zero() }).collect()).collect();
    let mut lambda: Mat = vec![vec![RatFun::zero(); n]; n];
    let put = |m: &mut Mat, r: &std::ops::Range<usize>, c: &std::ops::Range<usize>, v: Mat| {
        for (i, row) in v.into_iter().enumerate() {
            for (j, x) in row.into_iter().enumerate() {
                m[r.start + i][c.start + j] = x;
            }
        }
    };
    match order {
        EliminationOrder::RowByRow => {
            for (k, bk) in blocks.iter().enumerate() {
                let correction = |col: &std::ops::Range<usize>, p: &Mat, lambda: &Mat| -> Mat {
                    let mut acc = sub(&om.entries, bk, col);
                    for bj in &blocks[..k] {
                        let t = matmul(&matmul(&transpose(&sub(p, bj, bk)), &sub(lambda, bj, bj)), &sub(p, bj, col));
                        acc = mat_sub(&acc, &t);
                    }
                    acc
                };
                let mut lk = correction(bk, &p, &lambda);
                mask_sim(&mut lk, &om.sim[bk.clone()]);
                for bl in &blocks[k + 1..] {
                    let rhs = correction(bl, &p, &lambda);
                    let x = solve(&lk, &rhs, false).ok_or(GreenError::SingularBlock(om.c[bk.start]))?;
                    put(&mut p, bk, bl, x);
                }
                put(&mut lambda, bk, bk, lk);
            }
        }
        EliminationOrder::TrailingUpdate => {
            let mut m = om.entries.clone();
            for (k, bk) in blocks.iter().enumerate() {
                let mut lk = sub(&m, bk, bk);
                mask_sim(&mut lk, &om.sim[bk.clone()]);
                if let Some(last) = blocks.last().filter(|_| k + 1 < blocks.len()) {
                    let rest = bk.end..last.end;
                    let x = solve(&lk, &sub(&m, bk, &rest), true).ok_or(GreenError::SingularBlock(om.c[bk.start]))?;
                    let upd = matmul(&matmul(&transpose(&x), &lk), &x);
                    let cur = sub(&m, &rest, &rest);
                    put(&mut m, &rest, &rest, mat_sub(&cur, &upd));
                    put(&mut p, bk, &rest, x);
                }
                put(&mut lambda, bk, bk, lk);
            }
        }
    }
    Ok(PLambdaSolution { labels: om.labels.clone(), c: om.c.clone(), sim: om.sim.clone(), p, lambda, order })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct VerifyReport {
    /// Positions `(E, Ẽ)` where `Pᵀ Λ′ P ≠ Ω′`.
    pub residual_failures: Vec<(usize, usize)>,
    pub p_diagonal_ok: bool,
    pub p_support_ok: bool,
    pub lambda_approx_ok: bool,
    pub lambda_sim_ok: bool,
    /// Largest numerator and denominator degree over the entries of `P`.
    pub max_p_degree: (usize, usize),
}

impl VerifyReport {
    pub fn passes(&self) -> bool {
        self.residual_failures.is_empty() && self.p_diagonal_ok && self.p_support_ok && self.lambda_approx_ok && self.lambda_sim_ok
    }
}

/// Re-check every constraint of the system literally.
pub fn verify_solution(sol: &PLambdaSolution, om: &PairingMatrix) -> VerifyReport {
    let n = om.len();
    let prod = matmul(&matmul(&transpose(&sol.p), &sol.lambda), &sol.p);
    let mut residual_failures = Vec::new();
    for (i, row) in prod.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            if *v != om.entries[i][j] {
                residual_failures.push((i, j));
            }
        }
    }
    let le = |a: usize, b: usize| a == b || om.c[a] > om.c[b];
    let mut p_support_ok = true;
    let mut lambda_approx_ok = true;
    let mut lambda_sim_ok = true;
    let mut max_p_degree = (0, 0);
    for i in 0..n {
        for j in 0..n {
            let pv = &sol.p[i][j];
            if !pv.is_zero() {
                if i != j && (!le(i, j) || om.c[i] == om.c[j]) {
                    p_support_ok = false;
                }
                max_p_degree.0 = max_p_degree.0.max(pv.num().degree().unwrap_or(0));
                max_p_degree.1 = max_p_degree.1.max(pv.den().degree().unwrap_or(0));
            }
            if !sol.lambda[i][j].is_zero() {
                lambda_approx_ok &= om.c[i] == om.c[j];
                lambda_sim_ok &= om.sim[i] == om.sim[j];
            }
        }
    }
    VerifyReport {
        residual_failures,
        p_diagonal_ok: (0..n).all(|i| sol.p[i][i].is_one()),
        p_support_ok,
        lambda_approx_ok,
        lambda_sim_ok,
        max_p_degree,
    }
}

/// Matrix as strings `num/(den)`, for export.
pub fn stringify(m: &[Vec<RatFun>]) -> Vec<Vec<String>> {
    m.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect()
}

/// Value at a rational point, `None` at a pole.
pub fn specialize(m: &[Vec<RatFun>], q: &BigRational) -> Vec<Vec<Option<BigRational>>> {
    m.iter().map(|r| r.iter().map(|x| x.eval(q)).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::{Family, FiniteType};
    use crate::weighted::c_function;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn a1_trivial_entry() {
        let tbl = c_function(FiniteType::new(Family::A, 1), &[1, 1]).unwrap();
        let t = character_table(tbl.affine).unwrap();
        let e = t.trivial();
        assert_eq!(tbl.rows[e].c, 0);
        let v = omega_prime(&tbl, e, e).unwrap();
        assert_eq!(v, RatFun::new(Poly::from_ints(&[0, 1]), Poly::from_ints(&[-1, 0, 1])));
    }

    #[test]
    fn a1_two_by_two() {
        let tbl = c_function(FiniteType::new(Family::A, 1), &[2, 3]).unwrap();
        let om = omega_prime_matrix(&tbl, Backend::Sequential).unwrap();
        let sol = solve_p_lambda(&om, EliminationOrder::RowByRow).unwrap();
        // one unknown: P_01 = Ω′_01 / Ω′_00
        let expect = &om.entries[0][1] / &om.entries[0][0];
        assert_eq!(sol.p[0][1], expect);
        assert!(verify_solution(&sol, &om).passes());
    }

    #[test]
    fn orders_agree_and_verify() {
        for (ty, w) in [
            (FiniteType::new(Family::C, 2), vec![3, 1, 3]),
            (FiniteType::new(Family::C, 2), vec![3, 2, 2]),
            (FiniteType::new(Family::G2, 2), vec![3, 3, 1]),
            (FiniteType::new(Family::B, 3), vec![1, 1, 1, 1]),
        ] {
            let tbl = c_function(ty, &w).unwrap();
            let om = omega_prime_matrix(&tbl, Backend::default()).unwrap();
            let a = solve_p_lambda(&om, EliminationOrder::RowByRow).unwrap();
            let b = solve_p_lambda(&om, EliminationOrder::TrailingUpdate).unwrap();
            assert_eq!(a.p, b.p);
            assert_eq!(a.lambda, b.lambda);
            let rep = verify_solution(&a, &om);
            assert!(rep.passes(), "{ty} {w:?}: {rep:?}");
        }
    }

    #[test]
    fn perturbation_is_detected() {
        let tbl = c_function(FiniteType::new(Family::C, 2), &[2, 1, 2]).unwrap();
        let om = omega_prime_matrix(&tbl, Backend::Sequential).unwrap();
        let mut sol = solve_p_lambda(&om, EliminationOrder::RowByRow).unwrap();
        let n = om.len();
        sol.p[0][n - 1] = &sol.p[0][n - 1] + &RatFun::one();
        assert!(!verify_solution(&sol, &om).residual_failures.is_empty());
    }

    #[test]
    fn sample_points_match_class_sums() {
        let tbl = c_function(FiniteType::new(Family::G2, 2), &[3, 3, 1]).unwrap();
        let om = omega_prime_matrix(&tbl, Backend::Sequential).unwrap();
        for x in [q(2, 1), q(3, 1), q(5, 2), q(7, 1), q(11, 3)] {
            for i in 0..om.len() {
                for j in 0..om.len() {
                    let (e, f) = (om.table_index[i], om.table_index[j]);
                    let direct = omega_prime_at(&tbl, e, f, &x).unwrap();
                    let scaled = &om.entries[i][j] * &RatFun::q_pow((om.c[i] + om.c[j]) as i64);
                    assert_eq!(scaled.eval(&x).unwrap(), direct);
                }
            }
        }
    }

    #[test]
    fn pole_at_one_has_order_rank() {
        for (ty, w) in [(FiniteType::new(Family::C, 3), vec![1, 1, 1, 1]), (FiniteType::new(Family::A, 2), vec![2, 2, 2])] {
            let tbl = c_function(ty, &w).unwrap();
            let t = character_table(ty).unwrap();
            let v = omega_prime(&tbl, t.trivial(), t.trivial()).unwrap();
            assert_eq!(v.den().multiplicity(&Poly::from_ints(&[-1, 1])), ty.rank as u32);
        }
    }
}
