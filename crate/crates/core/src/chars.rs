//! Character tables of finite Weyl groups and class fusion into them.
//!
//! Types `A` use Murnaghan–Nakayama, `B`/`C` the wreath-product rule on
//! bipartitions, `D` restriction from `B` plus the difference characters on split
//! classes. `G2` and `F4` load embedded tables produced by [`burnside`].

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use once_cell::sync::Lazy;
use serde::{Deserialize, Serialize};

use crate::coxeter::{Family, FiniteType};
use crate::group::{closure, Elem, Group};
use crate::partition::{self, bipartitions, fmt_partition, hyper_char, partitions, sym_char, z_of, Partition};

/// Label of an irreducible character.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum IrrLabel {
    Part(Partition),
    /// `(α, β)`: `((n),∅)` trivial, `(∅,(n))` is `-1` on the sign-change node.
    Bi(Partition, Partition),
    /// Restriction to `D_n` of `(α,β)` with `α < β`.
    DPair(Partition, Partition),
    /// The two constituents of the restriction of `(α,α)`.
    DSplit(Partition, bool),
    Named(String),
}

fn fp(p: &[usize]) -> String {
    if p.is_empty() {
        "-".into()
    } else {
        fmt_partition(p)
    }
}

impl fmt::Display for IrrLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IrrLabel::Part(p) => write!(f, "{}", fp(p)),
            IrrLabel::Bi(a, b) => write!(f, "({},{})", fp(a), fp(b)),
            IrrLabel::DPair(a, b) => write!(f, "{{{},{}}}", fp(a), fp(b)),
            IrrLabel::DSplit(a, s) => write!(f, "{{{},{}}}{}", fp(a), fp(a), if *s { "+" } else { "-" }),
            IrrLabel::Named(s) => write!(f, "{s}"),
        }
    }
}

impl Serialize for IrrLabel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl IrrLabel {
    /// Parse the display form back (`21`, `(2,-)`, `{1,1}+`, `phi2,1`).
    pub fn parse(s: &str) -> Option<IrrLabel> {
        let pp = |t: &str| partition::parse_partition(t);
        if let Some(rest) = s.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
            let (a, b) = rest.split_once(',')?;
            return Some(IrrLabel::Bi(pp(a)?, pp(b)?));
        }
        if let Some(rest) = s.strip_prefix('{') {
            let (inner, tail) = rest.split_once('}')?;
            let (a, b) = inner.split_once(',')?;
            let (a, b) = (pp(a)?, pp(b)?);
            return match tail {
                "" => Some(IrrLabel::DPair(a.clone().min(b.clone()), a.max(b))),
                "+" | "-" if a == b => Some(IrrLabel::DSplit(a, tail == "+")),
                _ => None,
            };
        }
        if s.chars().all(|c| c.is_ascii_digit() || c == '.') {
            return pp(s).map(IrrLabel::Part);
        }
        Some(IrrLabel::Named(s.to_string()))
    }
}

#[derive(Clone, Debug)]
enum Lookup {
    /// Keyed by (positive cycles, negative cycles, split parity).
    Cycles(HashMap<(Partition, Partition, Option<bool>), usize>),
    Elements(HashMap<Elem, usize>),
}

#[derive(Clone, Debug)]
pub struct CharTable {
    pub ty: FiniteType,
    pub order: u128,
    pub class_labels: Vec<String>,
    pub class_sizes: Vec<u128>,
    pub class_reps: Vec<Elem>,
    pub class_words: Vec<Vec<usize>>,
    pub char_polys: Vec<Vec<i64>>,
    pub irr: Vec<IrrLabel>,
    /// `values[irr][class]`.
    pub values: Vec<Vec<i64>>,
    lookup: Lookup,
}

#[derive(Debug, Clone, thiserror::Error, PartialEq, Eq)]
pub enum TableError {
    #[error("no character table for type {0}")]
    Unsupported(String),
    #[error("embedded table for {0} failed its integrity check: {1}")]
    Corrupt(String, String),
}

static TABLES: Lazy<Mutex<HashMap<FiniteType, Arc<CharTable>>>> = Lazy::new(Default::default);

/// Character table of an irreducible finite Weyl type (memoized).
pub fn character_table(ty: FiniteType) -> Result<Arc<CharTable>, TableError> {
    let key = if ty.family == Family::C { FiniteType::new(Family::B, ty.rank) } else { ty };
    if let Some(t) = TABLES.lock().unwrap().get(&key) {
        return Ok(t.clone());
    }
    let t = Arc::new(match key.family {
        Family::A => type_a(key.rank),
        Family::B => type_b(key.rank),
        Family::D if (2..=12).contains(&key.rank) => type_d(key.rank),
        Family::G2 | Family::F4 => load_embedded(key)?,
        _ => return Err(TableError::Unsupported(ty.to_string())),
    });
    TABLES.lock().unwrap().insert(key, t.clone());
    Ok(t)
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

fn signed_rep(n: usize, pos: &[usize], neg: &[usize]) -> Elem {
    let mut w = vec![0i32; n];
    let mut p = 0;
    for (cycles, sign) in [(pos, 1), (neg, -1)] {
        for &l in cycles {
            for j in 0..l {
                w[p + j] = (p + (j + 1) % l) as i32 + 1;
            }
            w[p + l - 1] *= sign;
            p += l;
        }
    }
    w
}

fn finish(
    ty: FiniteType,
    g: &Group,
    classes: Vec<(String, u128, Elem)>,
    irr: Vec<IrrLabel>,
    values: Vec<Vec<i64>>,
    lookup: Lookup,
) -> CharTable {
    let class_words = classes.iter().map(|c| g.reduced_word(&c.2)).collect();
    let char_polys = classes.iter().map(|c| g.char_poly(&c.2)).collect();
    CharTable {
        ty,
        order: ty.order(),
        class_labels: classes.iter().map(|c| c.0.clone()).collect(),
        class_sizes: classes.iter().map(|c| c.1).collect(),
        class_reps: classes.into_iter().map(|c| c.2).collect(),
        class_words,
        char_polys,
        irr,
        values,
        lookup,
    }
}

fn type_a(rank: usize) -> CharTable {
    let n = rank + 1;
    let ty = FiniteType::new(Family::A, rank);
    let g = Group::get(ty);
    let mut parts = partitions(n);
    let irr_parts = parts.clone();
    parts.reverse(); // identity class first
    let mut memo = HashMap::new();
    let values = irr_parts.iter().map(|l| parts.iter().map(|m| sym_char(l, m, &mut memo)).collect()).collect();
    let mut map = HashMap::new();
    let classes = parts
        .iter()
        .enumerate()
        .map(|(i, m)| {
            map.insert((m.clone(), Vec::new(), None), i);
            (fmt_partition(m), factorial(n) / z_of(m), signed_rep(n, m, &[]))
        })
        .collect();
    finish(ty, &g, classes, irr_parts.into_iter().map(IrrLabel::Part).collect(), values, Lookup::Cycles(map))
}

fn b_class_size(n: usize, a: &[usize], b: &[usize]) -> u128 {
    (1u128 << n) * factorial(n) / (z_of(a) * z_of(b) * (1u128 << (a.len() + b.len())))
}

fn b_classes(n: usize) -> Vec<(Partition, Partition)> {
    let mut cl = bipartitions(n);
    let id = (vec![1; n], Vec::new());
    cl.retain(|c| *c != id);
    cl.insert(0, id);
    cl
}

fn type_b(n: usize) -> CharTable {
    let ty = FiniteType::new(Family::B, n);
    let g = Group::get(ty);
    let cls = b_classes(n);
    let irr = bipartitions(n);
    let mut memo = HashMap::new();
    let values = irr.iter().map(|(a, b)| cls.iter().map(|(p, q)| hyper_char(a, b, p, q, &mut memo)).collect()).collect();
    let mut map = HashMap::new();
    let classes = cls
        .iter()
        .enumerate()
        .map(|(i, (p, q))| {
            map.insert((p.clone(), q.clone(), None), i);
            (format!("({},{})", fp(p), fp(q)), b_class_size(n, p, q), signed_rep(n, p, q))
        })
        .collect();
    let irr = irr.into_iter().map(|(a, b)| IrrLabel::Bi(a, b)).collect();
    finish(ty, &g, classes, irr, values, Lookup::Cycles(map))
}

fn type_d(n: usize) -> CharTable {
    let ty = FiniteType::new(Family::D, n);
    let g = Group::get(ty);
    let mut classes = Vec::new();
    let mut bkeys = Vec::new(); // (pos, neg, split sign)
    let mut map = HashMap::new();
    for (p, q) in b_classes(n) {
        if q.len() % 2 == 1 {
            continue;
        }
        let size = b_class_size(n, &p, &q);
        let label = format!("({},{})", fp(&p), fp(&q));
        if q.is_empty() && p.iter().all(|x| x % 2 == 0) {
            let rep = signed_rep(n, &p, &q);
            let mut t0: Elem = (1..=n as i32).collect();
            t0[0] = -1;
            let other = g.mul(&g.mul(&t0, &rep), &t0);
            for (sign, r) in [(true, rep), (false, other)] {
                debug_assert_eq!(g.split_parity(&r), sign);
                map.insert((p.clone(), q.clone(), Some(sign)), classes.len());
                classes.push((format!("{label}{}", if sign { "+" } else { "-" }), size / 2, r));
                bkeys.push((p.clone(), q.clone(), Some(sign)));
            }
        } else {
            map.insert((p.clone(), q.clone(), None), classes.len());
            classes.push((label, size, signed_rep(n, &p, &q)));
            bkeys.push((p, q, None));
        }
    }
    let mut irr = Vec::new();
    for (a, b) in bipartitions(n) {
        match a.cmp(&b) {
            std::cmp::Ordering::Less => irr.push(IrrLabel::DPair(a, b)),
            std::cmp::Ordering::Equal => {
                irr.push(IrrLabel::DSplit(a.clone(), true));
                irr.push(IrrLabel::DSplit(a, false));
            }
            std::cmp::Ordering::Greater => {}
        }
    }
    let mut memo = HashMap::new();
    let mut smemo = HashMap::new();
    let values = irr
        .iter()
        .map(|l| {
            bkeys
                .iter()
                .map(|(p, q, split)| match l {
                    IrrLabel::DPair(a, b) => hyper_char(a, b, p, q, &mut memo),
                    IrrLabel::DSplit(a, s) => {
                        let base = hyper_char(a, a, p, q, &mut memo);
                        match split {
                            None => base / 2,
                            Some(c) => {
                                let mu: Partition = p.iter().map(|x| x / 2).collect();
                                let diff = (1i64 << mu.len()) * sym_char(a, &mu, &mut smemo);
                                let sgn = if s == c { 1 } else { -1 };
                                (base + sgn * diff) / 2
                            }
                        }
                    }
                    _ => unreachable!(),
                })
                .collect()
        })
        .collect();
    finish(ty, &g, classes, irr, values, Lookup::Cycles(map))
}

impl CharTable {
    pub fn num_classes(&self) -> usize {
        self.class_sizes.len()
    }

    pub fn index_of(&self, l: &IrrLabel) -> Option<usize> {
        self.irr.iter().position(|x| x == l)
    }

    pub fn dim(&self, i: usize) -> i64 {
        self.values[i][0]
    }

    /// Index of the trivial character.
    pub fn trivial(&self) -> usize {
        (0..self.irr.len()).find(|&i| self.values[i].iter().all(|&v| v == 1)).unwrap()
    }

    /// Index of the sign character.
    pub fn sign(&self) -> usize {
        let sg: Vec<i64> = self.class_words.iter().map(|w| if w.len() % 2 == 0 { 1 } else { -1 }).collect();
        (0..self.irr.len()).find(|&i| self.values[i] == sg).unwrap()
    }

    /// Index of `E ⊗ sgn`.
    pub fn tensor_sign(&self, i: usize) -> usize {
        let s = &self.values[self.sign()];
        let v: Vec<i64> = self.values[i].iter().zip(s).map(|(a, b)| a * b).collect();
        (0..self.irr.len()).find(|&j| self.values[j] == v).unwrap()
    }

    /// Class of an element of the model group of this table's type.
    pub fn class_of(&self, g: &Group, w: &Elem) -> usize {
        match &self.lookup {
            Lookup::Elements(m) => m[w],
            Lookup::Cycles(m) => {
                let (p, q) = g.signed_cycle_type(w);
                let split = (self.ty.family == Family::D && q.is_empty() && p.iter().all(|x| x % 2 == 0))
                    .then(|| g.split_parity(w));
                m[&(p, q, split)]
            }
        }
    }

    /// `Σ_c |c| χ(c) ψ(c)` divided by `|W|`; exact.
    pub fn inner(&self, x: &[i64], y: &[i64]) -> BigRational {
        let s: i128 = (0..self.num_classes()).map(|c| self.class_sizes[c] as i128 * x[c] as i128 * y[c] as i128).sum();
        BigRational::new(BigInt::from(s), BigInt::from(self.order))
    }

    /// Both orthogonality relations, class sizes and first-column positivity.
    pub fn check_orthogonality(&self) -> Result<(), String> {
        let k = self.num_classes();
        if self.irr.len() != k {
            return Err(format!("{} irreducibles but {} classes", self.irr.len(), k));
        }
        if self.class_sizes.iter().sum::<u128>() != self.order {
            return Err("class sizes do not sum to the group order".into());
        }
        for i in 0..k {
            if self.values[i][0] <= 0 {
                return Err(format!("nonpositive degree for {}", self.irr[i]));
            }
            for j in i..k {
                let s: i128 =
                    (0..k).map(|c| self.class_sizes[c] as i128 * self.values[i][c] as i128 * self.values[j][c] as i128).sum();
                let want = if i == j { self.order as i128 } else { 0 };
                if s != want {
                    return Err(format!("rows {} and {} not orthogonal", self.irr[i], self.irr[j]));
                }
            }
        }
        for c in 0..k {
            for d in c..k {
                let s: i128 = (0..k).map(|i| self.values[i][c] as i128 * self.values[i][d] as i128).sum();
                let want = if c == d { (self.order / self.class_sizes[c]) as i128 } else { 0 };
                if s != want {
                    return Err(format!("columns {} and {} not orthogonal", self.class_labels[c], self.class_labels[d]));
                }
            }
        }
        Ok(())
    }

    /// Whether every row is a central character of the class algebra, with the
    /// structure constants counted over all elements of the model group.
    pub fn check_against_elements(&self) -> Result<(), String> {
        let g = Group::get(self.ty);
        let elems = g.elements();
        let k = self.num_classes();
        let cls: Vec<usize> = elems.iter().map(|w| self.class_of(&g, w)).collect();
        let mut counted = vec![0u128; k];
        cls.iter().for_each(|&c| counted[c] += 1);
        if counted != self.class_sizes {
            return Err("class sizes disagree with the element count".into());
        }
        let consts = structure_constants(&g, elems, &cls, &self.class_reps, k);
        for i in 0..k {
            let d = BigRational::from_integer(BigInt::from(self.values[i][0]));
            let om: Vec<BigRational> = (0..k)
                .map(|c| BigRational::from_integer(BigInt::from(self.class_sizes[c] as i128 * self.values[i][c] as i128)) / &d)
                .collect();
            for j in 0..k {
                for l in 0..k {
                    let rhs: BigRational = (0..k).map(|m| &om[m] * BigInt::from(consts[j][l][m])).sum();
                    if &om[j] * &om[l] != rhs {
                        return Err(format!("row {} is not a central character", self.irr[i]));
                    }
                }
            }
        }
        Ok(())
    }
}

/// `a[j][l][k] = #{x ∈ C_j : x⁻¹ g_k ∈ C_l}`.
fn structure_constants(g: &Group, elems: &[Elem], cls: &[usize], reps: &[Elem], k: usize) -> Vec<Vec<Vec<u64>>> {
    let idx: HashMap<&Elem, usize> = elems.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let mut a = vec![vec![vec![0u64; k]; k]; k];
    for (kk, gk) in reps.iter().enumerate() {
        for (x, &cx) in elems.iter().zip(cls) {
            let y = g.mul(&g.inv(x), gk);
            a[cx][cls[idx[&y]]][kk] += 1;
        }
    }
    a
}

/// Conjugacy classes of an enumerated group: class index per element, in order of
/// first appearance (identity first).
pub fn conjugacy_classes(g: &Group) -> (Vec<usize>, Vec<Elem>) {
    let elems = g.elements();
    let idx: HashMap<&Elem, usize> = elems.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let mut cls = vec![usize::MAX; elems.len()];
    let mut reps = Vec::new();
    let gens: Vec<Elem> = (0..g.rank()).map(|i| g.gen(i).clone()).collect();
    for s in 0..elems.len() {
        if cls[s] != usize::MAX {
            continue;
        }
        let c = reps.len();
        reps.push(elems[s].clone());
        cls[s] = c;
        let mut stack = vec![s];
        while let Some(x) = stack.pop() {
            for h in &gens {
                let y = g.mul(&g.mul(h, &elems[x]), h);
                let j = idx[&y];
                if cls[j] == usize::MAX {
                    cls[j] = c;
                    stack.push(j);
                }
            }
        }
    }
    (cls, reps)
}

type Q = BigRational;

fn rref(m: &mut [Vec<Q>]) -> Vec<usize> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let v = &m[r][j] * &f;
                    m[i][j] -= v;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    pivots
}

/// Basis of the null space of a `rows × cols` matrix.
fn null_space(m: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let cols = m[0].len();
    let mut a = m.to_vec();
    let piv = rref(&mut a);
    let free: Vec<usize> = (0..cols).filter(|c| !piv.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Q::zero(); cols];
            v[f] = Q::one();
            for (r, &p) in piv.iter().enumerate() {
                v[p] = -a[r][f].clone();
            }
            v
        })
        .collect()
}

/// Character table of an enumerated group by Burnside's algorithm: simultaneous
/// eigenvectors of the class-multiplication matrices. Assumes rational characters.
/// Returns class representatives, sizes and the rows (unsorted).
pub fn burnside(g: &Group) -> (Vec<Elem>, Vec<u128>, Vec<Vec<i64>>) {
    let (cls, reps) = conjugacy_classes(g);
    let k = reps.len();
    let mut sizes = vec![0u128; k];
    cls.iter().for_each(|&c| sizes[c] += 1);
    let a = structure_constants(g, g.elements(), &cls, &reps, k);
    let mut spaces: Vec<Vec<Vec<Q>>> = vec![(0..k)
        .map(|i| (0..k).map(|j| if i == j { Q::one() } else { Q::zero() }).collect())
        .collect()];
    for j in 1..k {
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
        let mj: Vec<Vec<Q>> = (0..k).map(|l| (0..k).map(|m| Q::from_integer(BigInt::from(a[j][l][m]))).collect()).collect();
        let mut next = Vec::new();
        for basis in spaces {
            if basis.len() == 1 {
                next.push(basis);
                continue;
            }
            let d = basis.len();
            // coordinates: find X with M_j B = B X, using pivot rows of B
            let mut bt: Vec<Vec<Q>> = (0..k).map(|r| basis.iter().map(|v| v[r].clone()).collect()).collect();
            let img: Vec<Vec<Q>> = basis
                .iter()
                .map(|v| (0..k).map(|l| (0..k).map(|m| &mj[l][m] * &v[m]).sum()).collect())
                .collect();
            let mut aug: Vec<Vec<Q>> = (0..k)
                .map(|r| {
                    let mut row = bt[r].clone();
                    row.extend(img.iter().map(|v| v[r].clone()));
                    row
                })
                .collect();
            rref(&mut aug);
            let x: Vec<Vec<Q>> = (0..d).map(|r| aug[r][d..].to_vec()).collect();
            bt.clear();
            let bound = sizes[j] as i64;
            let mut found = 0;
            for lam in -bound..=bound {
                let shifted: Vec<Vec<Q>> = (0..d)
                    .map(|r| {
                        (0..d)
                            .map(|c| {
                                let v = x[r][c].clone();
                                if r == c {
                                    v - Q::from_integer(BigInt::from(lam))
                                } else {
                                    v
                                }
                            })
                            .collect()
                    })
                    .collect();
                let ns = null_space(&shifted);
                if ns.is_empty() {
                    continue;
                }
                found += ns.len();
                next.push(
                    ns.iter()
                        .map(|c| (0..k).map(|r| (0..d).map(|t| &basis[t][r] * &c[t]).sum()).collect())
                        .collect(),
                );
                if found == d {
                    break;
                }
            }
            assert_eq!(found, d, "non-integral central character");
        }
        spaces = next;
    }
    let order = g.elements().len() as i128;
    let rows = spaces
        .into_iter()
        .map(|s| {
            let v = &s[0];
            let om: Vec<Q> = v.iter().map(|x| x / &v[0]).collect();
            let denom: Q = (0..k).map(|c| &om[c] * &om[c] / Q::from_integer(BigInt::from(sizes[c]))).sum();
            let d2 = Q::from_integer(BigInt::from(order)) / denom;
            let d = d2.to_integer().sqrt();
            (0..k)
                .map(|c| {
                    let val = &om[c] * Q::from_integer(d.clone()) / Q::from_integer(BigInt::from(sizes[c]));
                    assert!(val.is_integer());
                    val.to_integer().to_i64().unwrap()
                })
                .collect()
        })
        .collect();
    (reps, sizes, rows)
}

/// Coefficients of `1/det(1 - x w)` up to `x^bound`, from `det(q - w)`.
fn sym_series(cp: &[i64], bound: usize) -> Vec<i128> {
    // det(1 - x w) = x^r det(1/x - w) = reversed char poly
    let r = cp.len() - 1;
    let den: Vec<i128> = (0..=r).map(|i| cp[r - i] as i128).collect();
    let mut out = vec![0i128; bound + 1];
    for nn in 0..=bound {
        let mut s: i128 = if nn == 0 { 1 } else { 0 };
        for i in 1..=r.min(nn) {
            s -= den[i] * out[nn - i];
        }
        out[nn] = s; // den[0] = 1
    }
    out
}

/// Multiplicity of irreducible `i` in `Sym^N` of the reflection representation.
pub fn sym_power_multiplicity(t: &CharTable, i: usize, n: usize) -> i128 {
    let s: i128 = (0..t.num_classes())
        .map(|c| t.class_sizes[c] as i128 * t.values[i][c] as i128 * sym_series(&t.char_polys[c], n)[n])
        .sum();
    assert_eq!(s % t.order as i128, 0);
    s / t.order as i128
}

pub const SYM_BOUND: usize = 64;

/// Smallest `N` with the irreducible in `Sym^N` (fake-degree valuation).
pub fn b_invariants(t: &CharTable) -> Vec<usize> {
    let series: Vec<Vec<i128>> = t.char_polys.iter().map(|cp| sym_series(cp, SYM_BOUND)).collect();
    (0..t.irr.len())
        .map(|i| {
            (0..=SYM_BOUND)
                .find(|&n| {
                    (0..t.num_classes())
                        .map(|c| t.class_sizes[c] as i128 * t.values[i][c] as i128 * series[c][n])
                        .sum::<i128>()
                        != 0
                })
                .expect("b-invariant above bound")
        })
        .collect()
}

// ---------------------------------------------------------------- embedded data

#[derive(Serialize, Deserialize)]
struct TableFile {
    #[serde(rename = "type")]
    ty: String,
    order: u128,
    classes: Vec<ClassEntry>,
    irreducibles: Vec<IrrEntry>,
    checksum: String,
}

#[derive(Serialize, Deserialize)]
struct ClassEntry {
    word: Vec<usize>,
    size: u128,
}

#[derive(Serialize, Deserialize)]
struct IrrEntry {
    label: String,
    values: Vec<i64>,
}

fn fnv1a(data: &str) -> String {
    let mut h: u64 = 0xcbf29ce484222325;
    for b in data.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    format!("{h:016x}")
}

fn payload(f: &TableFile) -> String {
    let mut s = format!("{}|{}", f.ty, f.order);
    for c in &f.classes {
        s += &format!("|{:?}:{}", c.word, c.size);
    }
    for r in &f.irreducibles {
        s += &format!("|{}:{:?}", r.label, r.values);
    }
    s
}

/// Name the rows `phi{d},{b}` with `'`/`''` on ties. Among a tied pair the
/// primed one has the larger value on the class of generator 0.
fn name_rows(t: &mut CharTable) {
    let b = b_invariants(t);
    let g = Group::get(t.ty);
    let c0 = t.class_of(&g, g.gen(0));
    let mut order: Vec<usize> = (0..t.irr.len()).collect();
    order.sort_by_key(|&i| (b[i], t.values[i][0], -t.values[i][c0]));
    let mut names = Vec::new();
    for &i in order.iter() {
        let key = (b[i], t.values[i][0]);
        let same: Vec<usize> = order.iter().copied().filter(|&j| (b[j], t.values[j][0]) == key).collect();
        let base = format!("phi{},{}", key.1, key.0);
        let name = if same.len() == 1 {
            base
        } else {
            let k = same.iter().position(|&j| j == i).unwrap();
            format!("{base}{}", "'".repeat(k + 1))
        };
        names.push((i, name));
    }
    let values = order.iter().map(|&i| t.values[i].clone()).collect();
    t.irr = names.into_iter().map(|(_, n)| IrrLabel::Named(n)).collect();
    t.values = values;
}

/// Compute the table of an enumerated type from scratch.
pub fn burnside_table(ty: FiniteType) -> CharTable {
    let g = Group::get(ty);
    let (reps, sizes, rows) = burnside(&g);
    let (cls, _) = conjugacy_classes(&g);
    let map: HashMap<Elem, usize> = g.elements().iter().cloned().zip(cls).collect();
    let classes = reps
        .into_iter()
        .zip(&sizes)
        .enumerate()
        .map(|(i, (r, &s))| (format!("C{}", i + 1), s, r))
        .collect();
    let mut t = finish(ty, &g, classes, vec![IrrLabel::Named(String::new()); rows.len()], rows, Lookup::Elements(map));
    name_rows(&mut t);
    t
}

/// Serialize a table in the embedded-data format.
pub fn table_to_json(t: &CharTable) -> String {
    let mut f = TableFile {
        ty: t.ty.to_string(),
        order: t.order,
        classes: t.class_words.iter().zip(&t.class_sizes).map(|(w, &s)| ClassEntry { word: w.clone(), size: s }).collect(),
        irreducibles: t
            .irr
            .iter()
            .zip(&t.values)
            .map(|(l, v)| IrrEntry { label: l.to_string(), values: v.clone() })
            .collect(),
        checksum: String::new(),
    };
    f.checksum = fnv1a(&payload(&f));
    serde_json::to_string_pretty(&f).unwrap()
}

const G2_DATA: &str = include_str!("../data/g2_table.json");
const F4_DATA: &str = include_str!("../data/f4_table.json");

fn load_embedded(ty: FiniteType) -> Result<CharTable, TableError> {
    let src = match ty.family {
        Family::G2 => G2_DATA,
        Family::F4 => F4_DATA,
        _ => return Err(TableError::Unsupported(ty.to_string())),
    };
    let bad = |m: String| TableError::Corrupt(ty.to_string(), m);
    let f: TableFile = serde_json::from_str(src).map_err(|e| bad(e.to_string()))?;
    if fnv1a(&payload(&f)) != f.checksum {
        return Err(bad("checksum mismatch".into()));
    }
    let g = Group::get(ty);
    let (cls, creps) = conjugacy_classes(&g);
    let elem_idx: HashMap<&Elem, usize> = g.elements().iter().enumerate().map(|(i, w)| (w, i)).collect();
    // file class order -> enumerated class
    let mut perm = Vec::new();
    for c in &f.classes {
        let w = g.word(&c.word);
        perm.push(cls[elem_idx[&w]]);
    }
    let mut inv = vec![usize::MAX; creps.len()];
    for (i, &p) in perm.iter().enumerate() {
        inv[p] = i;
    }
    if inv.contains(&usize::MAX) {
        return Err(bad("class words do not cover all classes".into()));
    }
    let map: HashMap<Elem, usize> = g.elements().iter().cloned().zip(cls.iter().map(|&c| inv[c])).collect();
    let classes =
        f.classes.iter().enumerate().map(|(i, c)| (format!("C{}", i + 1), c.size, g.word(&c.word))).collect();
    let t = finish(
        ty,
        &g,
        classes,
        f.irreducibles.iter().map(|r| IrrLabel::Named(r.label.clone())).collect(),
        f.irreducibles.iter().map(|r| r.values.clone()).collect(),
        Lookup::Elements(map),
    );
    t.check_orthogonality().map_err(bad)?;
    Ok(t)
}

// ---------------------------------------------------------------- fusion

/// A reflection subgroup: a product of standard finite types with the images of
/// their generators as elements of an ambient model group.
#[derive(Clone, Debug)]
pub struct Subgroup {
    pub comps: Vec<(FiniteType, Vec<Elem>)>,
}

/// Classes of a product subgroup and where they fuse.
#[derive(Clone, Debug)]
pub struct Fusion {
    pub tables: Vec<Arc<CharTable>>,
    /// Per product class: component classes, size, ambient class.
    pub classes: Vec<(Vec<usize>, u128, usize)>,
    pub order: u128,
}

impl Fusion {
    /// All product irreducibles as component-index tuples, in lexicographic order.
    pub fn irreducibles(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new()];
        for t in &self.tables {
            out = out.into_iter().flat_map(|p| (0..t.irr.len()).map(move |i| [p.clone(), vec![i]].concat())).collect();
        }
        out
    }

    fn value(&self, irr: &[usize], c: &[usize]) -> i64 {
        irr.iter().zip(c).zip(&self.tables).map(|((&i, &k), t)| t.values[i][k]).product()
    }

    /// Decomposition of the restriction of ambient row `chi` (values per ambient
    /// class): `(product irreducible, multiplicity)` with positive multiplicity.
    pub fn restrict(&self, chi: &[i64]) -> Vec<(Vec<usize>, u64)> {
        self.irreducibles()
            .into_iter()
            .filter_map(|irr| {
                let s: i128 = self
                    .classes
                    .iter()
                    .map(|(c, size, amb)| *size as i128 * chi[*amb] as i128 * self.value(&irr, c) as i128)
                    .sum();
                assert_eq!(s % self.order as i128, 0, "non-integral multiplicity");
                let m = s / self.order as i128;
                (m != 0).then_some((irr, m as u64))
            })
            .collect()
    }

    /// Multiplicity of every ambient irreducible in the induction of `irr`.
    pub fn induce(&self, ambient: &CharTable, irr: &[usize]) -> Vec<u64> {
        (0..ambient.irr.len())
            .map(|i| {
                let s: i128 = self
                    .classes
                    .iter()
                    .map(|(c, size, amb)| *size as i128 * ambient.values[i][*amb] as i128 * self.value(irr, c) as i128)
                    .sum();
                assert_eq!(s % self.order as i128, 0);
                (s / self.order as i128) as u64
            })
            .collect()
    }
}

/// Fuse the classes of `sub` into `ambient` through representative words.
pub fn fuse(ambient: &CharTable, sub: &Subgroup) -> Result<Fusion, TableError> {
    let garc = Group::get(ambient.ty);
    let g: &Group = &garc;
    let tables: Vec<Arc<CharTable>> = sub.comps.iter().map(|(t, _)| character_table(*t)).collect::<Result<_, _>>()?;
    let mut combos: Vec<(Vec<usize>, u128, Elem)> = vec![(Vec::new(), 1, g.identity())];
    for (k, t) in tables.iter().enumerate() {
        let imgs = &sub.comps[k].1;
        let reps: Vec<Elem> = t
            .class_words
            .iter()
            .map(|w| w.iter().fold(g.identity(), |acc, &i| g.mul(&acc, &imgs[i])))
            .collect();
        combos = combos
            .into_iter()
            .flat_map(|(c, s, e)| {
                reps.iter().enumerate().map(move |(j, r)| ([c.clone(), vec![j]].concat(), s * t.class_sizes[j], g.mul(&e, r)))
            })
            .collect();
    }
    let classes = combos.into_iter().map(|(c, s, e)| (c, s, ambient.class_of(g, &e))).collect();
    let order = tables.iter().map(|t| t.order).product();
    Ok(Fusion { tables, classes, order })
}

/// Element-level fusion: enumerate the subgroup by words and tally, per product
/// class, the ambient classes met. Used to cross-check [`fuse`].
pub fn fuse_by_elements(ambient: &CharTable, sub: &Subgroup) -> Result<Vec<HashMap<usize, u128>>, TableError> {
    let garc = Group::get(ambient.ty);
    let g: &Group = &garc;
    let tables: Vec<Arc<CharTable>> = sub.comps.iter().map(|(t, _)| character_table(*t)).collect::<Result<_, _>>()?;
    // per component: pairs (ambient image, intrinsic class)
    let per: Vec<Vec<(Elem, usize)>> = sub
        .comps
        .iter()
        .zip(&tables)
        .map(|((ty, imgs), t)| {
            let h = Group::get(*ty);
            h.elements()
                .iter()
                .map(|x| {
                    let w = h.reduced_word(x);
                    let img = w.iter().fold(g.identity(), |acc, &i| g.mul(&acc, &imgs[i]));
                    (img, t.class_of(&h, x))
                })
                .collect()
        })
        .collect();
    let mut shape = vec![1usize];
    for t in &tables {
        let last = *shape.last().unwrap();
        shape.push(last * t.num_classes());
    }
    let shape = &shape;
    let mut out = vec![HashMap::new(); *shape.last().unwrap()];
    let mut acc: Vec<(Elem, usize)> = vec![(g.identity(), 0)];
    for (k, list) in per.iter().enumerate() {
        acc = acc
            .into_iter()
            .flat_map(|(e, idx)| list.iter().map(move |(x, c)| (g.mul(&e, x), idx + c * shape[k])).collect::<Vec<_>>())
            .collect();
    }
    for (e, idx) in acc {
        *out[idx].entry(ambient.class_of(g, &e)).or_insert(0) += 1;
    }
    Ok(out)
}

/// The standard parabolic subgroup on a node subset of a finite type.
pub fn parabolic(ty: FiniteType, nodes: &[usize]) -> Subgroup {
    let g = Group::get(ty);
    let comps = ty
        .diagram()
        .finite_type(nodes)
        .expect("finite parabolic")
        .into_iter()
        .map(|c| (c.ty, c.nodes.iter().map(|&i| g.gen(i).clone()).collect()))
        .collect();
    Subgroup { comps }
}

/// Subgroup generated by elements, enumerated (for brute-force checks).
pub fn subgroup_elements(ty: FiniteType, gens: &[Elem]) -> Vec<Elem> {
    closure(&Group::get(ty), gens)
}

pub fn rational(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn is_nonneg_integer(x: &BigRational) -> bool {
    x.is_integer() && !x.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(f: Family, n: usize) -> FiniteType {
        FiniteType::new(f, n)
    }

    #[test]
    fn dims_of_small_tables() {
        let a2 = character_table(t(Family::A, 2)).unwrap();
        let d: Vec<i64> = (0..3).map(|i| a2.dim(i)).collect();
        assert_eq!(d, vec![1, 2, 1]);
        let b3 = character_table(t(Family::B, 3)).unwrap();
        assert_eq!(b3.irr.len(), 10);
        for tab in [a2, b3] {
            tab.check_orthogonality().unwrap();
        }
    }

    #[test]
    fn d_tables_are_central() {
        for n in [4, 5] {
            let tab = character_table(t(Family::D, n)).unwrap();
            tab.check_orthogonality().unwrap();
            tab.check_against_elements().unwrap();
        }
    }

    #[test]
    fn sym_powers_small() {
        let a2 = character_table(t(Family::A, 2)).unwrap();
        let sgn = a2.sign();
        assert_eq!(sym_power_multiplicity(&a2, sgn, 3), 1);
        assert_eq!(sym_power_multiplicity(&a2, a2.trivial(), 0), 1);
        let b2 = character_table(t(Family::B, 2)).unwrap();
        let b = b_invariants(&b2);
        assert_eq!(b[b2.sign()], 4);
    }
}
