//! Sharp twisted Weyl groups and the blocks `C_ω(W)` of an affine Weyl group.
//!
//! A block is stored by one canonical node subset `J` (ends of the diagram are
//! filled from node `0` and node `n` inwards, middle pieces centred) together
//! with its coordinates `(t, s)` and `(δ, r)` for classical types.

use serde::Serialize;

use crate::affine::{AffineType, Omega};
use crate::chars::{self, character_table};
use crate::coxeter::{op_perm, perm_compose, perm_order, perm_orbits, Diagram, Family, FiniteType};
use crate::hecke::{self, HeckeError};

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum BlockError {
    #[error("omega {0:?} is not an element of the group for this affine type")]
    InvalidOmega(Vec<usize>),
    #[error("constraint violated: {0}")]
    Constraint(String),
    #[error("unsupported rank {0} (character tables are used up to rank 4)")]
    UnsupportedRank(usize),
    #[error(transparent)]
    Hecke(#[from] HeckeError),
}

fn isqrt(x: u64) -> Option<u64> {
    let r = (x as f64).sqrt().round() as u64;
    (r.saturating_sub(1)..=r + 1).find(|&y| y * y == x)
}

// ---------------------------------------------------------------- sharpness

/// The two chains of sharp groups: `Single` has vertices `{1}` (index 2),
/// `B_{(t²-1)/4}`, `D_{t²/4}`, `²D_{t²/4}` (index `t`); `Pair` has `{1}×{1}`
/// (index 4), `²A_{(t²-1)/8-1}` and twisted squares of `B`, `D` (index `t`).
/// Consecutive indices are joined by an edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Graph {
    Single,
    Pair,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GraphVertex {
    pub graph: Graph,
    pub index: u64,
}

pub fn is_vertex(graph: Graph, index: u64) -> bool {
    match graph {
        Graph::Single => index >= 2,
        Graph::Pair => index >= 4,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SharpFactor {
    pub ty: FiniteType,
    /// Node sets of the copies, cyclically permuted by `γ`.
    pub copies: Vec<Vec<usize>>,
    /// Order of `γ^k` on the first copy, `k` the number of copies.
    pub twist_order: usize,
    pub a_value: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SharpDescriptor {
    pub factors: Vec<SharpFactor>,
    pub sharp: bool,
    /// Sum over factors; meaningful only when sharp.
    pub a_value: u64,
    pub graph_vertex: Option<GraphVertex>,
}

/// Closed-list test for an irreducible type with an automorphism `twist` of its
/// standard diagram: `(a, index in the single chain)` when sharp.
pub fn sharp_irreducible(ty: FiniteType, twist: &[usize]) -> Option<(u64, Option<u64>)> {
    let ord = perm_order(twist);
    let m = ty.rank as u64;
    match ty.coxeter_key().0 {
        Family::A if m >= 2 && ord == 2 => {
            let t = isqrt(8 * (m + 1) + 1)?;
            Some(((t - 3) * (t - 1) * (t + 1) / 48, None))
        }
        Family::B if ord == 1 => {
            let t = isqrt(4 * m + 1)?;
            Some(((t - 1) * (t + 1) * (2 * t - 3) / 24, Some(t)))
        }
        Family::D if ord == 3 => Some((3, None)),
        Family::D if ord <= 2 => {
            let t = 2 * isqrt(m)?;
            let want = if ord == 1 { 0 } else { 2 };
            (t % 4 == want).then_some(((t - 2) * t * (2 * t + 1) / 24, Some(t)))
        }
        Family::G2 if ord == 1 => Some((1, None)),
        Family::F4 if ord == 1 => Some((4, None)),
        Family::E8 if ord == 1 => Some((16, None)),
        Family::E6 if ord == 2 => Some((7, None)),
        _ => None,
    }
}

/// Twisted `²A_m` carries an index in the pair chain directly.
fn pair_index_of_twisted_a(ty: FiniteType) -> Option<u64> {
    (ty.coxeter_key().0 == Family::A && ty.rank >= 2).then(|| isqrt(8 * (ty.rank as u64 + 1) + 1)).flatten()
}

/// Sharpness from the definition: a special `E_0` with `z(E_0) = r(op)`,
/// `r(op)·ord(op)` even and `ord(op∘γ)` odd. Used as a cross-check.
pub fn sharp_by_z(ty: FiniteType, twist: &[usize]) -> Option<u64> {
    let op = op_perm(ty);
    if (hecke::r_op(ty) * perm_order(&op)) % 2 == 1 || perm_order(&perm_compose(&op, twist)).is_multiple_of(2) {
        return None;
    }
    hecke::sharp_e0(ty).map(|(_, a)| a)
}

/// Decompose the subgroup on `nodes` into `γ`-irreducible factors and test each.
/// `nodes` not `γ`-stable or not of finite type is reported as not sharp.
pub fn is_sharp(d: &Diagram, nodes: &[usize], gamma: &[usize]) -> SharpDescriptor {
    let not_sharp = SharpDescriptor { factors: Vec::new(), sharp: false, a_value: 0, graph_vertex: None };
    if nodes.iter().any(|&x| !nodes.contains(&gamma[x])) {
        return not_sharp;
    }
    let Some(comps) = d.finite_type(nodes) else { return not_sharp };
    if comps.is_empty() {
        return SharpDescriptor {
            factors: Vec::new(),
            sharp: true,
            a_value: 0,
            graph_vertex: Some(GraphVertex { graph: Graph::Single, index: 2 }),
        };
    }
    let comp_of = |x: usize| comps.iter().position(|c| c.nodes.contains(&x)).unwrap();
    let mut done = vec![false; comps.len()];
    let mut factors = Vec::new();
    let mut vertices = Vec::new();
    for i in 0..comps.len() {
        if done[i] {
            continue;
        }
        let mut orbit = vec![i];
        let mut j = comp_of(gamma[comps[i].nodes[0]]);
        while j != i {
            orbit.push(j);
            j = comp_of(gamma[comps[j].nodes[0]]);
        }
        orbit.iter().for_each(|&j| done[j] = true);
        let k = orbit.len();
        let c1 = &comps[i];
        let twist: Vec<usize> = c1
            .nodes
            .iter()
            .map(|&x| {
                let y = (0..k).fold(x, |y, _| gamma[y]);
                c1.nodes.iter().position(|&z| z == y).unwrap()
            })
            .collect();
        let hit = sharp_irreducible(c1.ty, &twist);
        let ord = perm_order(&twist);
        vertices.push(match (k, hit) {
            (1, Some((_, Some(t)))) => Some(GraphVertex { graph: Graph::Single, index: t }),
            (1, Some((_, None))) if ord == 2 => {
                pair_index_of_twisted_a(c1.ty).map(|t| GraphVertex { graph: Graph::Pair, index: t })
            }
            (2, Some((_, Some(t)))) => Some(GraphVertex { graph: Graph::Pair, index: 2 * t }),
            _ => None,
        });
        factors.push(SharpFactor {
            ty: c1.ty,
            copies: orbit.iter().map(|&j| comps[j].nodes.clone()).collect(),
            twist_order: ord,
            a_value: hit.map(|(a, _)| k as u64 * a),
        });
    }
    let sharp = factors.iter().all(|f| f.a_value.is_some());
    let a_value = factors.iter().filter_map(|f| f.a_value).sum();
    let graph_vertex = if sharp && factors.len() == 1 { vertices[0] } else { None };
    SharpDescriptor { factors, sharp, a_value, graph_vertex }
}

/// Sharp entries of the closed list with index up to `max_t`:
/// `(name, a)` in increasing index, then the exceptional ones.
pub fn sharp_list(max_t: u64) -> Vec<(String, u64)> {
    let mut out = vec![("{1}".to_string(), 0)];
    for t in 3..=max_t {
        if t % 2 == 1 {
            out.push((format!("B{}", (t * t - 1) / 4), (t - 1) * (t + 1) * (2 * t - 3) / 24));
            if t >= 5 {
                out.push((format!("2A{}", (t * t - 1) / 8 - 1), (t - 3) * (t - 1) * (t + 1) / 48));
            }
        } else if t >= 4 {
            let pre = if t % 4 == 0 { "" } else { "2" };
            out.push((format!("{pre}D{}", t * t / 4), (t - 2) * t * (2 * t + 1) / 24));
        }
    }
    out.extend([("G2", 1), ("3D4", 3), ("F4", 4), ("2E6", 7), ("E8", 16)].map(|(s, a)| (s.to_string(), a)));
    out
}

// ---------------------------------------------------------------- predicate

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct PredicateReport {
    pub stable: bool,
    pub sharp: bool,
    pub complement_irreducible: bool,
    /// Edge condition in the single chain, when it applies.
    pub single_edge: Option<bool>,
    /// Edge condition in the pair chain, when it applies.
    pub pair_edge: Option<bool>,
    pub ts: Option<(u64, u64)>,
    pub passes: bool,
}

fn run_from(j: &[usize], start: impl Iterator<Item = usize>) -> Vec<usize> {
    start.take_while(|x| j.contains(x)).collect()
}

/// Read `J` of affine `B_n` as `(D_k at the fork) × (B_m at the far end)`.
fn slots_b(a: &AffineType, omega: &Omega, j: &[usize]) -> Option<(u64, u64)> {
    let n = a.ty.rank;
    let (has0, has1) = (j.contains(&0), j.contains(&1));
    let left: Vec<usize> = match (has0, has1) {
        (false, false) => Vec::new(),
        (true, true) => run_from(j, 0..=n),
        _ => return None,
    };
    let right: Vec<usize> = run_from(j, (0..=n).rev()).into_iter().filter(|x| !left.contains(x)).collect();
    if left.len() + right.len() != j.len() {
        return None;
    }
    let t = if left.is_empty() {
        if omega.is_identity() {
            0
        } else {
            2
        }
    } else {
        2 * isqrt(left.len() as u64)?
    };
    let s = isqrt(4 * right.len() as u64 + 1)?;
    Some((t, s))
}

/// Read `J` of affine `C_n` or `D_n` as `(two equal ends) × (centred A_m)`.
fn slots_cd(a: &AffineType, omega: &Omega, j: &[usize]) -> Option<(u64, u64)> {
    let n = a.ty.rank;
    let is_d = a.ty.family == Family::D;
    let (left, right) = if is_d {
        let l = match (j.contains(&0), j.contains(&1)) {
            (false, false) => Vec::new(),
            (true, true) => run_from(j, 0..=n),
            _ => return None,
        };
        let r = match (j.contains(&n), j.contains(&(n - 1))) {
            (false, false) => Vec::new(),
            (true, true) => run_from(j, (0..=n).rev()),
            _ => return None,
        };
        (l, r)
    } else {
        (run_from(j, 0..=n), run_from(j, (0..=n).rev()))
    };
    if left.len() != right.len() || left.iter().any(|x| right.contains(x)) {
        return None;
    }
    let k = left.len() as u64;
    let t = match (is_d, k) {
        (false, 0) => 2,
        (false, _) => 2 * isqrt(4 * k + 1)?,
        (true, 0) => {
            if omega.square_is_identity {
                0
            } else {
                4
            }
        }
        (true, _) => 4 * isqrt(k)?,
    };
    let middle: Vec<usize> = j.iter().copied().filter(|x| !left.contains(x) && !right.contains(x)).collect();
    let s = if middle.is_empty() {
        if n.is_multiple_of(2) {
            1
        } else {
            3
        }
    } else {
        let (lo, hi) = (middle[0], *middle.last().unwrap());
        if hi - lo + 1 != middle.len() || lo + hi != n {
            return None;
        }
        isqrt(8 * (middle.len() as u64 + 1) + 1)?
    };
    Some((t, s))
}

/// The defining conditions of `C_ω(W)` for `J ⊊ S`, reported one by one.
pub fn check_block_predicate(a: &AffineType, omega: &Omega, j: &[usize]) -> PredicateReport {
    let mut j = j.to_vec();
    j.sort_unstable();
    j.dedup();
    assert!(j.len() < a.len() && j.iter().all(|&x| x < a.len()), "J must be a proper subset of S");
    if j.is_empty() {
        return PredicateReport {
            stable: true,
            sharp: true,
            complement_irreducible: true,
            single_edge: None,
            pair_edge: None,
            ts: None,
            passes: true,
        };
    }
    let stable = a.omega.iter().all(|o| {
        let mut img: Vec<usize> = j.iter().map(|&x| o.perm[x]).collect();
        img.sort_unstable();
        img == j
    });
    let sharp = is_sharp(&a.diagram, &j, &omega.perm).sharp;
    let rest: Vec<usize> = (0..a.len()).filter(|x| !j.contains(x)).collect();
    let comps = a.diagram.components(&rest);
    // S - J is ω-stable whenever J is
    let mut orbit_len = 0;
    if stable {
        let first = &comps[0];
        orbit_len = 1;
        let mut cur = first[0];
        loop {
            cur = omega.perm[cur];
            let c = comps.iter().position(|c| c.contains(&cur)).unwrap();
            if comps[c] == *first {
                break;
            }
            orbit_len += 1;
            cur = comps[c][0];
        }
    }
    let complement_irreducible = orbit_len == comps.len();
    let edge = |ts: Option<(u64, u64)>, g: Graph| {
        ts.is_some_and(|(t, s)| is_vertex(g, t) && is_vertex(g, s) && t.abs_diff(s) == 1)
    };
    let mut ts = None;
    let single_edge = (a.s_bang.len() == 2 && !a.has_double_prime() && a.ty.family == Family::B).then(|| {
        ts = slots_b(a, omega, &j);
        edge(ts, Graph::Single)
    });
    let pair_edge = (!omega.prime).then(|| {
        ts = slots_cd(a, omega, &j);
        edge(ts, Graph::Pair)
    });
    let passes = stable && sharp && complement_irreducible && single_edge != Some(false) && pair_edge != Some(false);
    PredicateReport { stable, sharp, complement_irreducible, single_edge, pair_edge, ts, passes }
}

// ---------------------------------------------------------------- enumeration

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct OmegaInfo {
    pub kind: &'static str,
    pub order: usize,
    pub square_is_identity: bool,
}

impl From<&Omega> for OmegaInfo {
    fn from(o: &Omega) -> Self {
        OmegaInfo {
            kind: if o.prime { "prime" } else { "doubleprime" },
            order: o.order,
            square_is_identity: o.square_is_identity,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct BlockDescriptor {
    #[serde(rename = "type")]
    pub affine: String,
    pub n: usize,
    pub omega: OmegaInfo,
    /// Display form: product type and nodes, or `{1}`.
    #[serde(rename = "J")]
    pub j_label: String,
    #[serde(skip)]
    pub family: Family,
    #[serde(skip)]
    pub nodes: Vec<usize>,
    pub t: Option<u64>,
    pub s: Option<u64>,
    pub delta: Option<u64>,
    pub r: Option<u64>,
    pub a_value: u64,
    pub levi_label: String,
}

fn j_label(d: &Diagram, nodes: &[usize]) -> String {
    if nodes.is_empty() {
        return "{1}".into();
    }
    let comps = d.finite_type(nodes).expect("finite");
    let list: Vec<String> = nodes.iter().map(|x| x.to_string()).collect();
    format!("{}[{}]", crate::coxeter::product_name(&comps), list.join(","))
}

/// Legal `(t, s, r)` for a classical affine type and `ω`.
pub fn ts_pairs(a: &AffineType, omega: &Omega) -> Vec<(u64, u64, u64)> {
    let n = a.ty.rank as i64;
    let mut out = Vec::new();
    let fam = a.ty.family;
    for t in 0..=(2 * (n as u64) + 8) {
        let ti = t as i64;
        let cands: Vec<u64> = match (fam, omega.prime) {
            (Family::B, _) => {
                let want = if omega.is_identity() { 0 } else { 2 };
                if t % 4 != want {
                    continue;
                }
                vec![t.wrapping_sub(1), t + 1]
            }
            (Family::C, true) if t % 2 == 1 => vec![t],
            (Family::D, true) => {
                let want = if omega.is_identity() { 0 } else { 2 };
                if t % 4 != want {
                    continue;
                }
                vec![t]
            }
            (Family::C, false) if t % 4 == 2 => vec![t.wrapping_sub(1), t + 1],
            (Family::D, false) => {
                let want = if omega.square_is_identity { 0 } else { 4 };
                if t % 8 != want {
                    continue;
                }
                vec![t.wrapping_sub(1), t + 1]
            }
            _ => continue,
        };
        for s in cands.into_iter().filter(|&s| s < u64::MAX / 2) {
            let si = s as i64;
            let r = match (fam, omega.prime) {
                (Family::B, _) => Some(n - ti * ti / 4 - (si * si - 1) / 4),
                (Family::C, true) => Some(n - (ti * ti - 1) / 2),
                (Family::D, true) => Some(n - ti * ti / 2),
                (Family::C, false) => {
                    let num = 8 * n - ti * ti - si * si + 5;
                    (num % 16 == 0).then_some(num / 16)
                }
                _ => {
                    let num = 8 * n - ti * ti - si * si + 1;
                    (num % 16 == 0).then_some(num / 16)
                }
            };
            if let Some(r) = r.filter(|&r| r >= 0) {
                out.push((t, s, r as u64));
            }
        }
    }
    out
}

/// Canonical `J` for `(t, s)` of a classical affine type.
pub fn canonical_j(a: &AffineType, omega: &Omega, t: u64, s: u64) -> Vec<usize> {
    let n = a.ty.rank;
    let fam = a.ty.family;
    let mut j: Vec<usize> = Vec::new();
    let ends = |k: usize, both: bool| -> Vec<usize> {
        if k < 2 && fam != Family::C {
            return Vec::new();
        }
        let mut v: Vec<usize> = (0..k).collect();
        if both {
            v.extend(n + 1 - k..=n);
        }
        v
    };
    match (fam, omega.prime) {
        (Family::B, _) => {
            j.extend(ends((t * t / 4) as usize, false));
            let m = ((s * s - 1) / 4) as usize;
            j.extend(n + 1 - m..=n);
        }
        (Family::C, true) => j.extend(ends(((t * t - 1) / 4) as usize, true)),
        (_, true) => j.extend(ends((t * t / 4) as usize, true)),
        (_, false) => {
            let u = t / 2;
            let k = if fam == Family::C { (u * u - 1) / 4 } else { u * u / 4 };
            j.extend(ends(k as usize, true));
            let m = (s * s - 1) / 8;
            if m >= 2 {
                let m = (m - 1) as usize;
                assert_eq!((n + 1 - m) % 2, 0, "middle piece not centred");
                let lo = (n + 1 - m) / 2;
                j.extend(lo..lo + m);
            }
        }
    }
    j.sort_unstable();
    j.dedup();
    j
}

/// `a[ω W_J]` from `(t, s)` for classical types.
pub fn block_a_value(prime: bool, t: u64, s: u64) -> u64 {
    let (t, s) = (t as i64, s as i64);
    let v = if prime {
        if s == t && t % 2 == 1 {
            (t - 1) * (t + 1) * (2 * t - 3) / 12
        } else if s == t {
            (t - 2) * t * (2 * t + 1) / 12
        } else if s == t + 1 {
            (t - 1) * t * (t + 1) / 6
        } else {
            (t - 2) * (t - 1) * t / 6
        }
    } else if t % 4 == 2 {
        if s == t - 1 {
            (t - 2) * (2 * t * t - 5 * t - 6) / 48
        } else {
            (t - 2) * (t + 2) * (2 * t - 3) / 48
        }
    } else if s == t - 1 {
        (t - 4) * t * (2 * t - 1) / 48
    } else {
        t * (2 * t * t - 3 * t - 8) / 48
    };
    v.max(0) as u64
}

fn triangular_root(d: u64) -> Option<u64> {
    // d = u(u+1)/2
    let u = (isqrt(8 * d + 1)? - 1) / 2;
    (u * (u + 1) / 2 == d).then_some(u)
}

/// `(t, s) ↦ (δ, r)`, with the membership conditions of the target re-checked.
pub fn ts_to_delta_r(fam: Family, omega: &Omega, n: u64, t: u64, s: u64, r: u64) -> Result<(u64, u64), BlockError> {
    let delta = if omega.prime { t * s } else { t * s / 2 };
    if !delta_r_valid(fam, omega, n, delta, r) {
        return Err(BlockError::Constraint(format!("(t,s)=({t},{s}), r={r} maps to invalid (δ,r)=({delta},{r})")));
    }
    Ok((delta, r))
}

/// Membership in the `(δ, r)` set.
pub fn delta_r_valid(fam: Family, omega: &Omega, n: u64, delta: u64, r: u64) -> bool {
    if omega.prime {
        match fam {
            Family::B => {
                let Some(sig) = isqrt(4 * delta + 1).map(|x| (x - 1) / 2).filter(|s| s * (s + 1) == delta) else {
                    return false;
                };
                let ok = if omega.is_identity() { [0, 3] } else { [1, 2] };
                delta + 2 * r == 2 * n && ok.contains(&(sig % 4))
            }
            Family::C => isqrt(delta).is_some_and(|sig| sig % 2 == 1) && delta + 2 * r == 2 * n + 1,
            Family::D => {
                let want = if omega.is_identity() { 0 } else { 2 };
                isqrt(delta).is_some_and(|sig| sig % 4 == want) && delta + 2 * r == 2 * n
            }
            _ => false,
        }
    } else {
        triangular_root(delta).is_some()
            && match fam {
                Family::C => delta + 4 * r == 2 * n + 1,
                Family::D => {
                    let want = if omega.square_is_identity { 0 } else { 2 };
                    delta + 4 * r == 2 * n && delta % 4 == want
                }
                _ => false,
            }
    }
}

/// Inverse of [`ts_to_delta_r`].
pub fn delta_r_to_ts(fam: Family, omega: &Omega, delta: u64) -> Result<(u64, u64), BlockError> {
    let bad = || BlockError::Constraint(format!("δ={delta} has no (t,s) preimage"));
    let even_odd = |u: u64| if u.is_multiple_of(2) { (u, u + 1) } else { (u + 1, u) };
    if omega.prime {
        match fam {
            Family::B => {
                let sig = (isqrt(4 * delta + 1).ok_or_else(bad)? - 1) / 2;
                Ok(even_odd(sig))
            }
            _ => {
                let t = isqrt(delta).ok_or_else(bad)?;
                Ok((t, t))
            }
        }
    } else {
        Ok(even_odd(triangular_root(delta).ok_or_else(bad)?))
    }
}

/// All `(δ, r)` in the target set for `n` (for the bijection check).
pub fn delta_r_set(fam: Family, omega: &Omega, n: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    for delta in 0..=2 * n + 1 {
        for r in 0..=n {
            if delta_r_valid(fam, omega, n, delta, r) {
                out.push((delta, r));
            }
        }
    }
    out
}

fn levi_label(fam: Family, omega: &Omega, delta: u64, r: u64) -> String {
    match (fam, omega.prime) {
        (Family::B, _) => format!("L_der ≅ Sp_{delta}"),
        (_, true) => format!("L_der ≅ Spin_{delta}"),
        (_, false) => format!("L_der ≅ Spin_{delta} × SL_2^{r}"),
    }
}

/// The blocks `C_ω(W)`, `{1}` first.
pub fn enumerate_blocks(a: &AffineType, omega: &Omega) -> Result<Vec<BlockDescriptor>, BlockError> {
    if a.index_of(omega).is_none() {
        return Err(BlockError::InvalidOmega(omega.perm.clone()));
    }
    let n = a.ty.rank;
    let fam = a.ty.family;
    let make = |nodes: Vec<usize>, ts: Option<(u64, u64)>, dr: Option<(u64, u64)>, a_value: u64, levi: String| {
        BlockDescriptor {
            affine: a.name(),
            n,
            omega: omega.into(),
            j_label: j_label(&a.diagram, &nodes),
            family: fam,
            nodes,
            t: ts.map(|x| x.0),
            s: ts.map(|x| x.1),
            delta: dr.map(|x| x.0),
            r: dr.map(|x| x.1),
            a_value,
            levi_label: levi,
        }
    };
    let torus = || "L = T (maximal torus)".to_string();
    let whole = || "L = G".to_string();
    Ok(match fam {
        Family::A => {
            let k = omega.order;
            let levi = if k == 1 { torus() } else { format!("L_der ≅ SL_{k}^{}", (n + 1) / k) };
            vec![make(Vec::new(), None, None, 0, levi)]
        }
        Family::E6 if !omega.is_identity() => vec![
            make(Vec::new(), None, None, 0, "L_der ≅ SL_3 × SL_3".into()),
            make(vec![2, 3, 4, 5], None, None, 3, whole()),
        ],
        Family::E7 if !omega.is_identity() => vec![
            make(Vec::new(), None, None, 0, "L_der ≅ SL_2^3".into()),
            make((1..=6).collect(), None, None, 7, whole()),
        ],
        Family::E6 | Family::E7 => vec![make(Vec::new(), None, None, 0, torus())],
        Family::E8 | Family::F4 | Family::G2 => {
            let av = match fam {
                Family::E8 => 16,
                Family::F4 => 4,
                _ => 1,
            };
            vec![make(Vec::new(), None, None, 0, torus()), make((1..=n).collect(), None, None, av, whole())]
        }
        Family::B | Family::C | Family::D => {
            let mut v = Vec::new();
            for (t, s, r) in ts_pairs(a, omega) {
                let (delta, r) = ts_to_delta_r(fam, omega, n as u64, t, s, r)?;
                let back = delta_r_to_ts(fam, omega, delta)?;
                if back != (t, s) {
                    return Err(BlockError::Constraint(format!("round trip ({t},{s}) -> {delta} -> {back:?}")));
                }
                let nodes = canonical_j(a, omega, t, s);
                let av = block_a_value(omega.prime, t, s);
                v.push(make(nodes, Some((t, s)), Some((delta, r)), av, levi_label(fam, omega, delta, r)));
            }
            v.sort_by_key(|b| (b.nodes.len(), b.t));
            v
        }
    })
}

/// Number of `ω`-orbits on `S - J`, minus one.
pub fn rank_r(a: &AffineType, omega: &Omega, j: &[usize]) -> usize {
    let rest: Vec<usize> = (0..a.len()).filter(|x| !j.contains(x)).collect();
    perm_orbits(&omega.perm, &rest).len() - 1
}

// ---------------------------------------------------------------- Springer indexing

/// `{ j(E) : J ⊊ S, E special in W_J }` inside `Irr(W̄)`, as table indices.
pub fn springer_index_set(a: &AffineType) -> Result<Vec<usize>, BlockError> {
    if a.ty.rank > 4 {
        return Err(BlockError::UnsupportedRank(a.ty.rank));
    }
    let ambient = a.ty;
    let mut hit = std::collections::BTreeSet::new();
    for mask in 0u32..(1 << a.len()) - 1 {
        let nodes: Vec<usize> = (0..a.len()).filter(|i| mask & (1 << i) != 0).collect();
        let sub = a.subgroup(&nodes).expect("proper subsets are finite");
        let mut tuples: Vec<Vec<usize>> = vec![Vec::new()];
        for (ty, _) in &sub.comps {
            let t = character_table(*ty).map_err(HeckeError::from)?;
            let specials: Vec<usize> =
                hecke::special_representations(*ty)?.iter().map(|l| t.index_of(l).unwrap()).collect();
            tuples = tuples.into_iter().flat_map(|p| specials.iter().map(move |&i| [p.clone(), vec![i]].concat())).collect();
        }
        for irr in tuples {
            hit.insert(hecke::j_induction_in(ambient, &sub, &irr)?);
        }
    }
    Ok(hit.into_iter().collect())
}

/// Status attached to every output derived from the Springer indexing set: only
/// the Weyl-group side is computed here.
pub const GEOMETRY_STATUS: &str = "W-side only; unverified against geometry";

/// Springer indexing set with the `b`-invariant of each label.
pub fn springer_b_values(a: &AffineType) -> Result<Vec<(chars::IrrLabel, usize)>, BlockError> {
    let t = character_table(a.ty).map_err(HeckeError::from)?;
    let b = hecke::b_values(&t);
    Ok(springer_index_set(a)?.into_iter().map(|i| (t.irr[i].clone(), b[i])).collect())
}

pub fn springer_labels(a: &AffineType) -> Result<Vec<chars::IrrLabel>, BlockError> {
    let t = character_table(a.ty).map_err(HeckeError::from)?;
    Ok(springer_index_set(a)?.into_iter().map(|i| t.irr[i].clone()).collect())
}
