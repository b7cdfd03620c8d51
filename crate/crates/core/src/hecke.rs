//! Degree invariants of Hecke algebras with possibly unequal parameters.
//!
//! Generic degrees are rational functions in `v`; with weight `c` on a node the
//! parameter is `v^{2c}`. The invariant `a_L(E)` is half the order of vanishing of
//! `D_{E,L,v}` at `v = 0`.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use once_cell::sync::Lazy;
use serde::Deserialize;

use crate::chars::{self, character_table, CharTable, IrrLabel, TableError};
use crate::coxeter::{Diagram, Family, FiniteType};
use crate::partition::{conjugate, hook_lengths, n_of};
use crate::poly::{Poly, RatFun};

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum HeckeError {
    #[error("no a-invariant route for {ty} with weights {weights:?}")]
    NoRoute { ty: String, weights: Vec<u64> },
    #[error("weights {0:?} are not constant on odd-bond classes")]
    BadWeights(Vec<u64>),
    #[error(transparent)]
    Table(#[from] TableError),
    #[error("truncated induction is not unique: {0}")]
    NotUnique(String),
}

/// Whether node weights are positive and constant along bonds of odd order.
pub fn is_weight_function(d: &Diagram, w: &[u64]) -> bool {
    w.len() == d.len()
        && w.iter().all(|&x| x > 0)
        && (0..d.len()).all(|i| (0..d.len()).all(|j| d.bond(i, j).is_multiple_of(2) || i == j || w[i] == w[j]))
}

// ---------------------------------------------------------------- cyclotomic products

/// `c · v^e · Π (v^k - 1)^{m_k} Π (v^k + 1)^{p_k}` with `k > 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct CycloProduct {
    pub constant: BigRational,
    pub vpow: i64,
    minus: BTreeMap<u64, i64>,
    plus: BTreeMap<u64, i64>,
}

impl CycloProduct {
    pub fn one() -> Self {
        CycloProduct { constant: BigRational::one(), vpow: 0, minus: BTreeMap::new(), plus: BTreeMap::new() }
    }

    fn scale(&mut self, c: i64) {
        self.constant *= BigRational::from_integer(BigInt::from(c));
    }

    /// Multiply by `(±v^e - 1)^{m}` or `(±v^e + 1)` forms through `sign·v^e + c`, `c = ±1`.
    fn mul_binomial(&mut self, sign: i64, e: i64, c: i64, m: i64) {
        // sign·v^e + c
        if e == 0 {
            let k = sign + c;
            assert!(k != 0, "vanishing factor");
            let f = BigRational::from_integer(BigInt::from(k));
            for _ in 0..m.abs() {
                if m > 0 {
                    self.constant *= &f;
                } else {
                    self.constant /= &f;
                }
            }
            return;
        }
        let (lead, k, c2) = if e > 0 {
            // sign·(v^e + sign·c)
            (sign, e as u64, sign * c)
        } else {
            // v^e (sign + c·v^{-e}) = c·v^e (v^{-e} + sign·c)
            self.vpow += e * m;
            (c, (-e) as u64, sign * c)
        };
        for _ in 0..m.abs() {
            if m > 0 {
                self.scale(lead);
            } else {
                self.constant /= BigRational::from_integer(BigInt::from(lead));
            }
        }
        let map = if c2 < 0 { &mut self.minus } else { &mut self.plus };
        *map.entry(k).or_insert(0) += m;
    }

    /// Multiplicity of the factor `v^2 + 1`.
    pub fn mult_v2_plus_1(&self) -> i64 {
        let a: i64 = self.minus.iter().filter(|(k, _)| *k % 4 == 0).map(|(_, m)| m).sum();
        let b: i64 = self.plus.iter().filter(|(k, _)| *k % 4 == 2).map(|(_, m)| m).sum();
        a + b
    }

    pub fn to_ratfun(&self) -> RatFun {
        let mut num = Poly::constant(self.constant.clone());
        let mut den = Poly::one();
        let mut push = |k: u64, c: i64, m: i64| {
            let f = &Poly::x_pow(k as usize) + &Poly::from_int(c);
            for _ in 0..m.abs() {
                if m > 0 {
                    num = &num * &f;
                } else {
                    den = &den * &f;
                }
            }
        };
        self.minus.iter().for_each(|(&k, &m)| push(k, -1, m));
        self.plus.iter().for_each(|(&k, &m)| push(k, 1, m));
        &RatFun::new(num, den) * &RatFun::q_pow(self.vpow)
    }
}

fn rows(l: &[usize], i: usize) -> i64 {
    l.get(i).copied().unwrap_or(0) as i64
}

/// Hook-type exponent `λ_i - j + μ'_j - i + 1` (1-based `i`, `j`).
fn cross_hook(l: &[usize], mu_conj: &[usize], i: usize, j: usize) -> i64 {
    rows(l, i - 1) - j as i64 + rows(mu_conj, j - 1) - i as i64 + 1
}

/// Generic degree of `(α, β)` for `B_n` with weight `a` on the transposition nodes
/// and `b` on the sign-change node. `b = 0` gives the `B_n` degree at `y = 1`.
pub fn b_generic_degree(alpha: &[usize], beta: &[usize], a: u64, b: u64) -> CycloProduct {
    let (a, b) = (a as i64, b as i64);
    let n = (alpha.iter().sum::<usize>() + beta.iter().sum::<usize>()) as i64;
    let mut d = CycloProduct::one();
    // Poincaré polynomial Π_{i<n} [i+1]_q (1 + q^i y)
    for i in 0..n {
        d.mul_binomial(1, 2 * a * (i + 1), -1, 1);
        d.mul_binomial(1, 2 * a, -1, -1);
        d.mul_binomial(1, 2 * a * i + 2 * b, 1, 1);
    }
    // divide by the Schur element (-1)^n q^{-N} (q-1)^{-n} Π (q^h u_s/u_t - 1), u = (y, -1)
    let parts = [alpha, beta];
    let mut union: Vec<usize> = alpha.iter().chain(beta).copied().collect();
    union.sort_unstable_by(|x, y| y.cmp(x));
    let nn = n_of(&union) as i64;
    if n % 2 == 1 {
        d.scale(-1);
    }
    d.vpow += 2 * a * nn;
    d.mul_binomial(1, 2 * a, -1, n);
    for s in 0..2 {
        let lam = parts[s];
        for (i, &li) in lam.iter().enumerate() {
            for j in 1..=li {
                for t in 0..2 {
                    let h = cross_hook(lam, &conjugate(parts[t]), i + 1, j);
                    match (s, t) {
                        (0, 0) | (1, 1) => d.mul_binomial(1, 2 * a * h, -1, -1),
                        // -q^h y - 1
                        (0, 1) => d.mul_binomial(-1, 2 * a * h + 2 * b, -1, -1),
                        // -q^h / y - 1
                        _ => d.mul_binomial(-1, 2 * a * h - 2 * b, -1, -1),
                    }
                }
            }
        }
    }
    d
}

/// Closed form of `a` for `B_n` with weights `(a, b)`; `b = 0` is allowed.
pub fn b_a_value(alpha: &[usize], beta: &[usize], a: u64, b: u64) -> u64 {
    let (a, b) = (a as i64, b as i64);
    let mut union: Vec<usize> = alpha.iter().chain(beta).copied().collect();
    union.sort_unstable_by(|x, y| y.cmp(x));
    let mut twice = 2 * a * n_of(&union) as i64;
    let parts = [alpha, beta];
    for s in 0..2 {
        let t = 1 - s;
        let mc = conjugate(parts[t]);
        for (i, &li) in parts[s].iter().enumerate() {
            for j in 1..=li {
                let h = cross_hook(parts[s], &mc, i + 1, j);
                let e = if s == 0 { 2 * a * h + 2 * b } else { 2 * a * h - 2 * b };
                twice -= e.min(0);
            }
        }
    }
    assert!(twice >= 0 && twice % 2 == 0);
    (twice / 2) as u64
}

/// Generic degree of a partition for `A_{n-1}` with weight `k`.
pub fn a_generic_degree(lambda: &[usize], k: u64) -> CycloProduct {
    let k = k as i64;
    let n: usize = lambda.iter().sum();
    let mut d = CycloProduct::one();
    d.vpow = 2 * k * n_of(lambda) as i64;
    for i in 1..=n as i64 {
        d.mul_binomial(1, 2 * k * i, -1, 1);
    }
    for h in hook_lengths(lambda) {
        d.mul_binomial(1, 2 * k * h as i64, -1, -1);
    }
    d
}

// ---------------------------------------------------------------- printed tables

fn vpoly(e: u64) -> Poly {
    Poly::x_pow(e as usize)
}

fn rf(p: Poly) -> RatFun {
    RatFun::from_poly(p)
}

fn sum(ps: &[Poly]) -> Poly {
    ps.iter().fold(Poly::zero(), |acc, p| &acc + p)
}

fn prod(ps: &[Poly]) -> Poly {
    ps.iter().fold(Poly::one(), |acc, p| &acc * p)
}

fn frac(n: &[Poly], d: &[Poly]) -> RatFun {
    RatFun::new(prod(n), prod(d))
}

fn one() -> Poly {
    Poly::one()
}

/// The degree tables for `A1`, `A2`, `B2`, `G2` and `B3`, keyed by table label.
/// `G2` uses the degrees whose 1-dimensional entries carry `q^3`/`y^3`.
pub fn printed_degrees(ty: FiniteType, a: u64, b: u64) -> Option<Vec<(IrrLabel, RatFun)>> {
    let q = vpoly(2 * a);
    let y = vpoly(2 * b);
    let qy = &q * &y;
    let bi = |x: &[usize], z: &[usize]| IrrLabel::Bi(x.to_vec(), z.to_vec());
    let p = |v: Vec<usize>| IrrLabel::Part(v);
    Some(match (ty.family, ty.rank) {
        (Family::A, 1) => vec![(p(vec![2]), RatFun::one()), (p(vec![1, 1]), rf(q))],
        (Family::A, 2) => vec![
            (p(vec![3]), RatFun::one()),
            (p(vec![2, 1]), rf(&(&q * &q) + &q)),
            (p(vec![1, 1, 1]), rf(q.pow(3))),
        ],
        (Family::B, 2) => {
            let q1 = &q + &one();
            let y1 = &y + &one();
            let qy1 = &qy + &one();
            let qpy = &q + &y;
            vec![
                (bi(&[2], &[]), RatFun::one()),
                (bi(&[1], &[1]), frac(&[qy.clone(), q1, y1], std::slice::from_ref(&qpy))),
                (bi(&[1, 1], &[]), frac(&[q.pow(2), qy1.clone()], std::slice::from_ref(&qpy))),
                (bi(&[], &[2]), frac(&[y.pow(2), qy1], &[qpy])),
                (bi(&[], &[1, 1]), rf(qy.pow(2))),
            ]
        }
        (Family::G2, 2) => {
            let r = vpoly(a + b);
            let q1 = &q + &one();
            let y1 = &y + &one();
            let two = Poly::from_int(2);
            let plus = sum(&[qy.clone(), r.clone(), one()]);
            let minus = &sum(&[qy.clone(), one()]) - &r;
            let dplus = sum(&[q.clone(), r.clone(), y.clone()]);
            let dminus = &(&q + &y) - &r;
            let cyc = sum(&[qy.pow(2), qy.clone(), one()]);
            let cden = sum(&[q.pow(2), qy.clone(), y.pow(2)]);
            let n = |s: &str| IrrLabel::Named(s.into());
            vec![
                (n("phi1,0"), RatFun::one()),
                (n("phi2,1"), frac(&[qy.clone(), q1.clone(), y1.clone(), plus], &[two.clone(), dplus])),
                (n("phi2,2"), frac(&[qy.clone(), q1, y1, minus], &[two, dminus])),
                // sign on generator 1 (weight b)
                (n("phi1,3'"), frac(&[y.pow(3), cyc.clone()], std::slice::from_ref(&cden))),
                // sign on generator 0 (weight a)
                (n("phi1,3''"), frac(&[q.pow(3), cyc], &[cden])),
                (n("phi1,6"), rf(qy.pow(3))),
            ]
        }
        (Family::B, 3) => {
            let q2 = q.pow(2);
            let c3 = sum(&[q2.clone(), q.clone(), one()]);
            let qy1 = &qy + &one();
            let q2y1 = &(&q2 * &y) + &one();
            let qpy = &q + &y;
            let q2py = &q2 + &y;
            let q1 = &q + &one();
            vec![
                (bi(&[3], &[]), RatFun::one()),
                (bi(&[2], &[1]), frac(&[qy.clone(), c3.clone(), qy1.clone()], std::slice::from_ref(&qpy))),
                (bi(&[2, 1], &[]), frac(&[q2.clone(), q1.clone(), q2y1.clone()], std::slice::from_ref(&qpy))),
                (bi(&[], &[3]), frac(&[y.pow(3), qy1.clone(), q2y1.clone()], &[q2py.clone(), qpy.clone()])),
                (bi(&[1], &[2]), frac(&[&q * &y.pow(2), c3.clone(), q2y1.clone()], std::slice::from_ref(&q2py))),
                (bi(&[1, 1], &[1]), frac(&[&q.pow(3) * &y, c3.clone(), q2y1.clone()], std::slice::from_ref(&q2py))),
                (bi(&[], &[2, 1]), frac(&[&q2 * &y.pow(3), q1, q2y1.clone()], std::slice::from_ref(&qpy))),
                (bi(&[1], &[1, 1]), frac(&[&q.pow(3) * &y.pow(2), c3, qy1.clone()], std::slice::from_ref(&qpy))),
                (bi(&[1, 1, 1], &[]), frac(&[q.pow(6), qy1, q2y1], &[q2py, qpy])),
                (bi(&[], &[1, 1, 1]), rf(&q.pow(6) * &y.pow(3))),
            ]
        }
        _ => return None,
    })
}

/// Printed closed-form `a` lists in table order, for `A1`, `A2`, `B2`, `G2`, `B3`.
pub fn printed_a_list(ty: FiniteType, a: u64, b: u64) -> Option<Vec<u64>> {
    let m = a.min(b);
    let mp = (2 * a).min(b);
    Some(match (ty.family, ty.rank) {
        (Family::A, 1) => vec![0, a],
        (Family::A, 2) => vec![0, a, 3 * a],
        (Family::B, 2) => vec![0, a + b - m, 2 * a - m, 2 * b - m, 2 * a + 2 * b],
        (Family::G2, 2) => vec![0, a + b - m, a + b - m, 2 * a - 2 * m, 2 * b - 2 * m, 3 * a + 3 * b],
        (Family::B, 3) => vec![
            0,
            a + b - m,
            2 * a - m,
            3 * b - m - mp,
            a + 2 * b - mp,
            3 * a + b - mp,
            2 * a + 3 * b - m,
            3 * a + 2 * b - m,
            6 * a - m - mp,
            6 * a + 3 * b,
        ],
        _ => return None,
    })
}

fn half_valuation(d: &RatFun) -> u64 {
    let v = d.valuation().expect("nonzero degree");
    assert!(v >= 0 && v % 2 == 0, "odd or negative valuation {v}");
    (v / 2) as u64
}

// ---------------------------------------------------------------- a-invariants

/// Weights of a standard irreducible type, one per generator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Weighted {
    pub ty: FiniteType,
    pub w: Vec<u64>,
}

impl Weighted {
    pub fn equal(ty: FiniteType, k: u64) -> Self {
        Weighted { ty, w: vec![k; ty.rank] }
    }

    fn constant(&self) -> Option<u64> {
        self.w.iter().all(|&x| x == self.w[0]).then(|| self.w[0])
    }
}

/// F4 equal-parameter `a` by `(dim, b)`.
fn f4_equal_a(dim: i64, b: usize) -> u64 {
    match (dim, b) {
        (1, 0) => 0,
        (4, 1) | (2, 4) => 1,
        (9, 2) => 2,
        (8, 3) => 3,
        (12, 4) | (16, 5) | (6, 6) | (9, 6) | (4, 7) | (4, 8) | (1, 12) => 4,
        (8, 9) => 9,
        (9, 10) => 10,
        (4, 13) | (2, 16) => 13,
        (1, 24) => 24,
        _ => panic!("unknown F4 character ({dim},{b})"),
    }
}

fn named_b(label: &IrrLabel) -> usize {
    let IrrLabel::Named(s) = label else { panic!("expected named label") };
    let body = s.trim_start_matches("phi").trim_end_matches('\'');
    body.split(',').nth(1).unwrap().parse().unwrap()
}

#[derive(Deserialize)]
struct WeightedEntry {
    label: String,
    weights: Vec<u64>,
    a: u64,
}

/// Optional weighted-F4 data: `$BLOCKWEYL_DATA/weighted_a_F4.json`, a list of
/// `{label, weights, a}`.
fn weighted_f4(w: &[u64]) -> Option<HashMap<String, u64>> {
    let dir = std::env::var("BLOCKWEYL_DATA").ok()?;
    let src = std::fs::read_to_string(std::path::Path::new(&dir).join("weighted_a_F4.json")).ok()?;
    let entries: Vec<WeightedEntry> = serde_json::from_str(&src).ok()?;
    let g = gcd_all(w);
    let norm: Vec<u64> = w.iter().map(|x| x / g).collect();
    let map: HashMap<String, u64> = entries
        .into_iter()
        .filter_map(|e| {
            let ge = gcd_all(&e.weights);
            let en: Vec<u64> = e.weights.iter().map(|x| x / ge).collect();
            (en == norm).then(|| (e.label, e.a * g / ge))
        })
        .collect();
    (map.len() == 25).then_some(map)
}

fn gcd_all(w: &[u64]) -> u64 {
    w.iter().fold(0, |a, &b| num_integer::gcd(a, b))
}

static A_CACHE: Lazy<Mutex<HashMap<Weighted, Arc<Vec<u64>>>>> = Lazy::new(Default::default);

/// `a_L` for every irreducible of `ty` (in character-table order).
///
/// Routes, first match wins: the printed degree tables, the two-parameter `B_n`
/// formula, scaling of equal-parameter values, embedded or external `F4` data.
pub fn a_values(wt: &Weighted) -> Result<Arc<Vec<u64>>, HeckeError> {
    if let Some(v) = A_CACHE.lock().unwrap().get(wt) {
        return Ok(v.clone());
    }
    let v = Arc::new(compute_a_values(wt)?);
    A_CACHE.lock().unwrap().insert(wt.clone(), v.clone());
    Ok(v)
}

fn no_route(wt: &Weighted) -> HeckeError {
    HeckeError::NoRoute { ty: wt.ty.to_string(), weights: wt.w.clone() }
}

fn compute_a_values(wt: &Weighted) -> Result<Vec<u64>, HeckeError> {
    let ty = wt.ty;
    let n = ty.rank;
    if !is_weight_function(&ty.diagram(), &wt.w) {
        return Err(HeckeError::BadWeights(wt.w.clone()));
    }
    let table = character_table(ty)?;
    let (a, b) = (wt.w[0], wt.w[n - 1]);
    if let Some(list) = printed_degrees(ty, a, b) {
        return Ok(table
            .irr
            .iter()
            .map(|l| half_valuation(&list.iter().find(|(x, _)| x == l).expect("printed label").1))
            .collect());
    }
    match ty.family {
        Family::B | Family::C => Ok(table
            .irr
            .iter()
            .map(|l| match l {
                IrrLabel::Bi(x, y) => b_a_value(x, y, a, b),
                _ => unreachable!(),
            })
            .collect()),
        Family::A => Ok(table.irr.iter().map(|l| a * equal_a(ty, &table, l)).collect()),
        Family::D => Ok(table.irr.iter().map(|l| a * equal_a(ty, &table, l)).collect()),
        Family::F4 => {
            if let Some(k) = wt.constant() {
                return Ok(table.irr.iter().map(|l| k * equal_a(ty, &table, l)).collect());
            }
            let map = weighted_f4(&wt.w).ok_or_else(|| no_route(wt))?;
            table.irr.iter().map(|l| map.get(&l.to_string()).copied().ok_or_else(|| no_route(wt))).collect()
        }
        _ => Err(no_route(wt)),
    }
}

/// Equal-parameter `a` of one label.
fn equal_a(ty: FiniteType, table: &CharTable, l: &IrrLabel) -> u64 {
    match l {
        IrrLabel::Part(p) => n_of(p) as u64,
        IrrLabel::Bi(x, y) => b_a_value(x, y, 1, 1),
        IrrLabel::DPair(x, y) => b_a_value(x, y, 1, 0),
        IrrLabel::DSplit(x, _) => b_a_value(x, x, 1, 0),
        IrrLabel::Named(_) => {
            let i = table.index_of(l).unwrap();
            match ty.family {
                Family::F4 => f4_equal_a(table.dim(i), named_b(l)),
                Family::G2 => [0, 1, 1, 1, 1, 6][i],
                _ => unreachable!(),
            }
        }
    }
}

/// `a_L(E)` for one label.
pub fn a_invariant(wt: &Weighted, label: &IrrLabel) -> Result<u64, HeckeError> {
    let t = character_table(wt.ty)?;
    let i = t.index_of(label).ok_or_else(|| no_route(wt))?;
    Ok(a_values(wt)?[i])
}

// ---------------------------------------------------------------- equal-parameter data

/// Equal-parameter generic degree as a cyclotomic product (classical types).
pub fn equal_generic_degree(ty: FiniteType, l: &IrrLabel) -> Option<CycloProduct> {
    match l {
        IrrLabel::Part(p) => Some(a_generic_degree(p, 1)),
        IrrLabel::Bi(x, y) => Some(b_generic_degree(x, y, 1, 1)),
        IrrLabel::DPair(x, y) => Some(b_generic_degree(x, y, 1, 0)),
        IrrLabel::DSplit(x, _) => {
            let mut d = b_generic_degree(x, x, 1, 0);
            d.constant /= BigRational::from_integer(BigInt::from(2));
            Some(d)
        }
        IrrLabel::Named(_) if ty.family == Family::G2 => None,
        _ => None,
    }
}

/// Equal-parameter generic degree as a rational function in `v`.
pub fn equal_generic_degree_ratfun(ty: FiniteType, l: &IrrLabel) -> Option<RatFun> {
    if ty.family == Family::G2 || (ty.family == Family::B && ty.rank <= 3) || (ty.family == Family::A && ty.rank <= 2) {
        if let Some(list) = printed_degrees(ty, 1, 1) {
            return list.into_iter().find(|(x, _)| x == l).map(|(_, d)| d);
        }
    }
    equal_generic_degree(ty, l).map(|d| d.to_ratfun())
}

/// Multiplicity of `v^2 + 1` in the equal-parameter generic degree.
pub fn z_invariant(ty: FiniteType, l: &IrrLabel) -> Option<u32> {
    if let Some(d) = equal_generic_degree(ty, l) {
        return Some(d.mult_v2_plus_1() as u32);
    }
    let d = equal_generic_degree_ratfun(ty, l)?;
    let f = Poly::from_ints(&[1, 0, 1]);
    Some(d.num().multiplicity(&f) - d.den().multiplicity(&f))
}

/// Fake-degree valuation in closed form for classical types.
pub fn b_closed(l: &IrrLabel) -> Option<usize> {
    Some(match l {
        IrrLabel::Part(p) => n_of(p),
        IrrLabel::Bi(x, y) => 2 * n_of(x) + 2 * n_of(y) + y.iter().sum::<usize>(),
        IrrLabel::DPair(x, y) => 2 * n_of(x) + 2 * n_of(y) + x.iter().sum::<usize>().min(y.iter().sum()),
        IrrLabel::DSplit(x, _) => 4 * n_of(x) + x.iter().sum::<usize>(),
        IrrLabel::Named(_) => return None,
    })
}

/// `b`-invariants of all irreducibles: closed forms where known, else symmetric powers.
pub fn b_values(t: &CharTable) -> Vec<usize> {
    match t.ty.family {
        Family::G2 | Family::F4 => t.irr.iter().map(named_b).collect(),
        Family::A | Family::B | Family::C | Family::D => t.irr.iter().map(|l| b_closed(l).unwrap()).collect(),
        _ => chars::b_invariants(t),
    }
}

/// Special representations: equal-parameter `a` equal to `b`.
pub fn special_representations(ty: FiniteType) -> Result<Vec<IrrLabel>, HeckeError> {
    let t = character_table(ty)?;
    let a = a_values(&Weighted::equal(ty, 1))?;
    let b = b_values(&t);
    Ok((0..t.irr.len()).filter(|&i| a[i] == b[i] as u64).map(|i| t.irr[i].clone()).collect())
}

/// Number of orbits of the opposition automorphism on the nodes.
pub fn r_op(ty: FiniteType) -> usize {
    let p = crate::coxeter::op_perm(ty);
    crate::coxeter::perm_orbits(&p, &(0..ty.rank).collect::<Vec<_>>()).len()
}

/// The special `E_0` with `z(E_0) = r(op)` of an irreducible Weyl group, if any,
/// together with its equal-parameter `a`. Exceptional types without degree data
/// use their known distinguished special characters.
pub fn sharp_e0(ty: FiniteType) -> Option<(IrrLabel, u64)> {
    match ty.family {
        Family::F4 => return Some((IrrLabel::Named("phi12,4".into()), 4)),
        Family::E6 => return Some((IrrLabel::Named("phi80,7".into()), 7)),
        Family::E8 => return Some((IrrLabel::Named("phi4480,16".into()), 16)),
        Family::E7 => return None,
        _ => {}
    }
    let t = character_table(ty).ok()?;
    let a = a_values(&Weighted::equal(ty, 1)).ok()?;
    let b = b_values(&t);
    let r = r_op(ty) as u32;
    let hits: Vec<usize> =
        (0..t.irr.len()).filter(|&i| a[i] == b[i] as u64 && z_invariant(ty, &t.irr[i]) == Some(r)).collect();
    match hits.as_slice() {
        [i] => Some((t.irr[*i].clone(), a[*i])),
        [] => None,
        _ => panic!("several special characters with z = r(op) in {ty}"),
    }
}

// ---------------------------------------------------------------- families

/// Partition of the irreducibles of a weighted irreducible type into families,
/// as lists of table indices (each sorted; list sorted).
pub fn l_families(wt: &Weighted) -> Result<Arc<Vec<Vec<usize>>>, HeckeError> {
    static CACHE: Lazy<Mutex<HashMap<Weighted, Arc<Vec<Vec<usize>>>>>> = Lazy::new(Default::default);
    if let Some(v) = CACHE.lock().unwrap().get(wt) {
        return Ok(v.clone());
    }
    let v = Arc::new(compute_families(wt)?);
    CACHE.lock().unwrap().insert(wt.clone(), v.clone());
    Ok(v)
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn find(&mut self, x: usize) -> usize {
        if self.0[x] != x {
            let r = self.find(self.0[x]);
            self.0[x] = r;
        }
        self.0[x]
    }
    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            self.0[a.max(b)] = a.min(b);
        }
    }
    fn classes(&mut self) -> Vec<Vec<usize>> {
        let n = self.0.len();
        let mut m: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for i in 0..n {
            let r = self.find(i);
            m.entry(r).or_default().push(i);
        }
        m.into_values().collect()
    }
}

/// Families of a weighted parabolic product: products of component families.
/// Returns, per product irreducible (component index tuple), a family id.
pub fn product_family_ids(comps: &[Weighted]) -> Result<HashMap<Vec<usize>, usize>, HeckeError> {
    let fams: Vec<Arc<Vec<Vec<usize>>>> = comps.iter().map(l_families).collect::<Result<_, _>>()?;
    let mut fam_of: Vec<Vec<usize>> = Vec::new();
    for (c, f) in comps.iter().zip(&fams) {
        let n = character_table(c.ty)?.irr.len();
        let mut v = vec![0; n];
        for (k, fam) in f.iter().enumerate() {
            for &i in fam {
                v[i] = k;
            }
        }
        fam_of.push(v);
    }
    let mut out = HashMap::new();
    let mut tuples = vec![Vec::new()];
    for v in &fam_of {
        tuples = tuples.into_iter().flat_map(|p: Vec<usize>| (0..v.len()).map(move |i| [p.clone(), vec![i]].concat())).collect();
    }
    let mut ids: HashMap<Vec<usize>, usize> = HashMap::new();
    for t in tuples {
        let key: Vec<usize> = t.iter().zip(&fam_of).map(|(&i, v)| v[i]).collect();
        let next = ids.len();
        let id = *ids.entry(key).or_insert(next);
        out.insert(t, id);
    }
    Ok(out)
}

fn parabolic_weighted(wt: &Weighted, nodes: &[usize]) -> Vec<Weighted> {
    wt.ty
        .diagram()
        .finite_type(nodes)
        .unwrap()
        .into_iter()
        .map(|c| Weighted { ty: c.ty, w: c.nodes.iter().map(|&i| wt.w[i]).collect() })
        .collect()
}

fn compute_families(wt: &Weighted) -> Result<Vec<Vec<usize>>, HeckeError> {
    let t = character_table(wt.ty)?;
    let k = t.irr.len();
    let a = a_values(wt)?;
    let n = wt.ty.rank;
    let mut dsu = Dsu((0..k).collect());
    let mut links: Vec<(usize, usize)> = Vec::new();
    for mask in 0u32..(1 << n) - 1 {
        let nodes: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        let comps = parabolic_weighted(wt, &nodes);
        let sub = chars::parabolic(wt.ty, &nodes);
        let fusion = chars::fuse(&t, &sub)?;
        let fam = product_family_ids(&comps)?;
        let sub_a: Vec<Arc<Vec<u64>>> = comps.iter().map(a_values).collect::<Result<_, _>>()?;
        // per family of W_J: ambient irreducibles reached by a-preserving induction
        let mut reached: HashMap<usize, Vec<usize>> = HashMap::new();
        for irr in fusion.irreducibles() {
            let asub: u64 = irr.iter().zip(&sub_a).map(|(&i, v)| v[i]).sum();
            let ind = fusion.induce(&t, &irr);
            let f = fam[&irr];
            for (e, &m) in ind.iter().enumerate() {
                if m > 0 && a[e] == asub {
                    reached.entry(f).or_default().push(e);
                }
            }
        }
        for list in reached.values() {
            for w in list.windows(2) {
                links.push((w[0], w[1]));
            }
        }
    }
    for &(x, y) in &links {
        dsu.union(x, y);
        dsu.union(t.tensor_sign(x), t.tensor_sign(y));
    }
    Ok(dsu.classes())
}

// ---------------------------------------------------------------- j-induction

/// The unique irreducible of `ty` occurring in the induction of the special
/// character `irr` of the parabolic on `nodes` and in `Sym^{a}` of the reflection
/// representation, `a` the equal-parameter invariant of `irr`.
pub fn j_induction(ty: FiniteType, nodes: &[usize], irr: &[usize]) -> Result<usize, HeckeError> {
    j_induction_in(ty, &chars::parabolic(ty, nodes), irr)
}

/// [`j_induction`] from an arbitrary reflection subgroup of `ty`.
pub fn j_induction_in(ty: FiniteType, sub: &chars::Subgroup, irr: &[usize]) -> Result<usize, HeckeError> {
    let t = character_table(ty)?;
    let fusion = chars::fuse(&t, sub)?;
    let comps: Vec<Weighted> = sub.comps.iter().map(|(c, _)| Weighted::equal(*c, 1)).collect();
    let a: u64 = irr.iter().zip(&comps).map(|(&i, c)| a_values(c).map(|v| v[i])).sum::<Result<u64, _>>()?;
    let ind = fusion.induce(&t, irr);
    let hits: Vec<usize> = (0..t.irr.len())
        .filter(|&e| ind[e] > 0 && chars::sym_power_multiplicity(&t, e, a as usize) > 0)
        .collect();
    match hits.as_slice() {
        [e] => Ok(*e),
        _ => Err(HeckeError::NotUnique(format!("{ty} from {:?}: {} candidates", sub.comps.iter().map(|c| c.0.to_string()).collect::<Vec<_>>(), hits.len()))),
    }
}

pub fn zero_rat() -> BigRational {
    BigRational::zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(f: Family, n: usize) -> FiniteType {
        FiniteType::new(f, n)
    }

    #[test]
    fn closed_a_matches_valuation() {
        for n in 1..=4 {
            for (x, y) in crate::partition::bipartitions(n) {
                for (a, b) in [(1, 1), (2, 1), (1, 2), (3, 2), (1, 0), (2, 0)] {
                    let d = b_generic_degree(&x, &y, a, b);
                    assert_eq!(d.vpow, 2 * b_a_value(&x, &y, a, b) as i64, "{x:?} {y:?} {a} {b}");
                }
            }
        }
    }

    #[test]
    fn b_formula_reproduces_printed_b2_b3() {
        for ty in [t(Family::B, 2), t(Family::B, 3)] {
            for a in 1..=3 {
                for b in 1..=3 {
                    for (l, d) in printed_degrees(ty, a, b).unwrap() {
                        let IrrLabel::Bi(x, y) = &l else { unreachable!() };
                        assert_eq!(b_generic_degree(x, y, a, b).to_ratfun(), d, "{l} at {a},{b}");
                    }
                }
            }
        }
    }

    #[test]
    fn degrees_sum_to_poincare() {
        for ty in [t(Family::A, 3), t(Family::B, 3), t(Family::D, 4), t(Family::D, 5), t(Family::G2, 2)] {
            let tab = character_table(ty).unwrap();
            let mut total = RatFun::zero();
            for (i, l) in tab.irr.iter().enumerate() {
                let d = equal_generic_degree_ratfun(ty, l).unwrap();
                total = &total + &d.scale(&BigRational::from_integer(BigInt::from(tab.dim(i))));
            }
            let mut p = Poly::one();
            for d in ty.degrees() {
                p = &p * &Poly::from_coeffs((0..2 * d - 1).map(|k| BigRational::from_integer(BigInt::from((k % 2 == 0) as i64))).collect());
            }
            assert_eq!(total, RatFun::from_poly(p), "{ty}");
        }
    }

    #[test]
    fn b_closed_matches_sym_powers() {
        for ty in [t(Family::A, 4), t(Family::B, 4), t(Family::D, 4), t(Family::D, 5)] {
            let tab = character_table(ty).unwrap();
            let b: Vec<usize> = tab.irr.iter().map(|l| b_closed(l).unwrap()).collect();
            assert_eq!(b, chars::b_invariants(&tab), "{ty}");
        }
    }

    #[test]
    fn b2_families() {
        let f = l_families(&Weighted::equal(t(Family::B, 2), 1)).unwrap();
        let mut sizes: Vec<usize> = f.iter().map(|x| x.len()).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 1, 3]);
        let f = l_families(&Weighted { ty: t(Family::B, 2), w: vec![2, 1] }).unwrap();
        assert_eq!(f.len(), 5);
    }

    #[test]
    fn specials_and_e0() {
        assert_eq!(special_representations(t(Family::B, 2)).unwrap().len(), 3);
        assert_eq!(special_representations(t(Family::G2, 2)).unwrap().len(), 3);
        let (e0, a) = sharp_e0(t(Family::B, 2)).unwrap();
        assert_eq!((e0, a), (IrrLabel::Bi(vec![1], vec![1]), 1));
        assert_eq!(sharp_e0(t(Family::G2, 2)).unwrap().1, 1);
        assert_eq!(sharp_e0(t(Family::D, 4)).unwrap().1, 3);
    }

    #[test]
    fn j_from_a1_into_a2() {
        let ty = t(Family::A, 2);
        let tab = character_table(ty).unwrap();
        let e = j_induction(ty, &[0], &[1]).unwrap();
        assert_eq!(tab.irr[e], IrrLabel::Part(vec![2, 1]));
    }
}
