//! Finite and affine Coxeter diagrams, type recognition, root counts and diagram
//! automorphisms.
//!
//! Standard labellings (node `i` of a finite type is position `i-1`):
//! - `A_n`: chain `1-2-...-n`.
//! - `B_n`/`C_n`: chain `1-...-(n-1)=n`, the bond `(n-1,n)` has order 4.
//! - `D_n`: chain `1-...-(n-2)`, with `n-1` and `n` both joined to `n-2`.
//! - `E_n`: `1-3-4-5-...-n` with `2` joined to `4`.
//! - `F4`: `1-2=3-4`; `G2`: `1≡2`.
//!
//! Affine diagrams add node `0`:
//! - `~A_n`: cycle `0-1-...-n-0` (`~A_1` has an infinite bond).
//! - `~B_n`: `0` joined to `2`.
//! - `~C_n`: `0=1` with bond order 4.
//! - `~D_n`: `0` joined to `2`.
//! - `~E6`: `0-2`; `~E7`: `0-1`; `~E8`: `0-8`.
//! - `~F4`: `0-1`; `~G2`: `0-1`.

use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt;

/// Bond order used for an infinite bond.
pub const INF: u32 = 0;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E6,
    E7,
    E8,
    F4,
    G2,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
            Family::E6 => "E6",
            Family::E7 => "E7",
            Family::E8 => "E8",
            Family::F4 => "F4",
            Family::G2 => "G2",
        }
    }

    pub fn fixed_rank(self) -> Option<usize> {
        match self {
            Family::E6 => Some(6),
            Family::E7 => Some(7),
            Family::E8 => Some(8),
            Family::F4 => Some(4),
            Family::G2 => Some(2),
            _ => None,
        }
    }
}

/// An irreducible finite Weyl type.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FiniteType {
    pub family: Family,
    pub rank: usize,
}

impl FiniteType {
    pub fn new(family: Family, rank: usize) -> Self {
        FiniteType { family, rank }
    }

    /// Number of positive roots, i.e. the length of the longest element.
    pub fn positive_roots(&self) -> usize {
        let n = self.rank;
        match self.family {
            Family::A => n * (n + 1) / 2,
            Family::B | Family::C => n * n,
            Family::D => n * (n - 1),
            Family::E6 => 36,
            Family::E7 => 63,
            Family::E8 => 120,
            Family::F4 => 24,
            Family::G2 => 6,
        }
    }

    pub fn order(&self) -> u128 {
        let n = self.rank as u128;
        let fact = |k: u128| (1..=k).product::<u128>();
        match self.family {
            Family::A => fact(n + 1),
            Family::B | Family::C => (1u128 << n) * fact(n),
            Family::D => (1u128 << (n - 1)) * fact(n),
            Family::E6 => 51840,
            Family::E7 => 2903040,
            Family::E8 => 696729600,
            Family::F4 => 1152,
            Family::G2 => 12,
        }
    }

    /// Standard diagram as a bond-order matrix.
    pub fn diagram(&self) -> Diagram {
        let n = self.rank;
        let mut d = Diagram::discrete(n);
        match self.family {
            Family::A => (1..n).for_each(|i| d.set(i - 1, i, 3)),
            Family::B | Family::C => {
                (1..n).for_each(|i| d.set(i - 1, i, 3));
                if n >= 2 {
                    d.set(n - 2, n - 1, 4);
                }
            }
            Family::D => {
                (1..n.saturating_sub(1)).for_each(|i| d.set(i - 1, i, 3));
                if n >= 3 {
                    d.set(n - 3, n - 1, 3);
                }
            }
            Family::E6 | Family::E7 | Family::E8 => {
                d.set(0, 2, 3);
                d.set(1, 3, 3);
                (2..n - 1).for_each(|i| d.set(i, i + 1, 3));
            }
            Family::F4 => {
                d.set(0, 1, 3);
                d.set(1, 2, 4);
                d.set(2, 3, 3);
            }
            Family::G2 => d.set(0, 1, 6),
        }
        d
    }

    /// Whether the finite type is valid (rank constraints).
    pub fn is_valid(&self) -> bool {
        match self.family.fixed_rank() {
            Some(r) => r == self.rank,
            None => match self.family {
                Family::A | Family::B => self.rank >= 1,
                Family::C => self.rank >= 1,
                Family::D => self.rank >= 2,
                _ => false,
            },
        }
    }

    /// Coxeter-isomorphism-invariant key (B and C coincide, small ranks collapse).
    pub fn coxeter_key(&self) -> (Family, usize) {
        match (self.family, self.rank) {
            (Family::C, n) => (Family::B, n),
            (Family::B, 1) => (Family::A, 1),
            (Family::D, 3) => (Family::A, 3),
            (f, n) => (f, n),
        }
    }

    /// Exponent degrees `d_i`; the Poincaré polynomial is `prod (q^{d_i}-1)/(q-1)`.
    pub fn degrees(&self) -> Vec<usize> {
        let n = self.rank;
        match self.family {
            Family::A => (2..=n + 1).collect(),
            Family::B | Family::C => (1..=n).map(|i| 2 * i).collect(),
            Family::D => {
                let mut v: Vec<usize> = (1..n).map(|i| 2 * i).collect();
                v.push(n);
                v
            }
            Family::E6 => vec![2, 5, 6, 8, 9, 12],
            Family::E7 => vec![2, 6, 8, 10, 12, 14, 18],
            Family::E8 => vec![2, 8, 12, 14, 18, 20, 24, 30],
            Family::F4 => vec![2, 6, 8, 12],
            Family::G2 => vec![2, 6],
        }
    }
}

impl fmt::Display for FiniteType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family.fixed_rank() {
            Some(_) => write!(f, "{}", self.family.name()),
            None => write!(f, "{}{}", self.family.name(), self.rank),
        }
    }
}

/// Symmetric matrix of bond orders; `1` on the diagonal, `2` for commuting nodes,
/// [`INF`] for infinite bonds.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct Diagram {
    m: Vec<Vec<u32>>,
}

impl Diagram {
    pub fn discrete(n: usize) -> Self {
        let mut m = vec![vec![2; n]; n];
        (0..n).for_each(|i| m[i][i] = 1);
        Diagram { m }
    }

    pub fn from_matrix(m: Vec<Vec<u32>>) -> Self {
        Diagram { m }
    }

    pub fn len(&self) -> usize {
        self.m.len()
    }

    pub fn is_empty(&self) -> bool {
        self.m.is_empty()
    }

    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.m[i][j] = v;
        self.m[j][i] = v;
    }

    pub fn bond(&self, i: usize, j: usize) -> u32 {
        self.m[i][j]
    }

    pub fn matrix(&self) -> &Vec<Vec<u32>> {
        &self.m
    }

    /// Nodes joined to `i` by a bond of order other than 2.
    pub fn neighbours(&self, i: usize) -> Vec<usize> {
        (0..self.len()).filter(|&j| j != i && self.m[i][j] != 2).collect()
    }

    /// Connected components of the subdiagram on `nodes`, each sorted.
    pub fn components(&self, nodes: &[usize]) -> Vec<Vec<usize>> {
        let set: BTreeSet<usize> = nodes.iter().copied().collect();
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for &s in &set {
            if seen.contains(&s) {
                continue;
            }
            let mut comp = vec![s];
            seen.insert(s);
            let mut k = 0;
            while k < comp.len() {
                let x = comp[k];
                for y in self.neighbours(x) {
                    if set.contains(&y) && seen.insert(y) {
                        comp.push(y);
                    }
                }
                k += 1;
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Recognize the finite type of the subdiagram on `nodes`: irreducible components
    /// with their nodes listed in standard order. `None` if some component is infinite.
    pub fn finite_type(&self, nodes: &[usize]) -> Option<Vec<Component>> {
        self.components(nodes).into_iter().map(|c| self.recognize(&c)).collect()
    }

    /// Sum of positive-root counts of the subdiagram on `nodes` (must be finite).
    pub fn longest_length(&self, nodes: &[usize]) -> Option<usize> {
        Some(self.finite_type(nodes)?.iter().map(|c| c.ty.positive_roots()).sum())
    }

    fn recognize(&self, comp: &[usize]) -> Option<Component> {
        let k = comp.len();
        let ty = |f, r| FiniteType::new(f, r);
        if k == 1 {
            return Some(Component { ty: ty(Family::A, 1), nodes: comp.to_vec() });
        }
        let mut edges = Vec::new();
        for (a, &x) in comp.iter().enumerate() {
            for &y in &comp[a + 1..] {
                let m = self.m[x][y];
                if m == INF {
                    return None;
                }
                if m != 2 {
                    edges.push((x, y, m));
                }
            }
        }
        if edges.len() != k - 1 {
            return None; // a cycle
        }
        let deg = |x: usize| edges.iter().filter(|e| e.0 == x || e.1 == x).count();
        let heavy: Vec<&(usize, usize, u32)> = edges.iter().filter(|e| e.2 > 3).collect();
        let branch: Vec<usize> = comp.iter().copied().filter(|&x| deg(x) >= 3).collect();
        if heavy.len() > 1 || branch.len() > 1 || branch.iter().any(|&b| deg(b) > 3) {
            return None;
        }
        if !heavy.is_empty() && !branch.is_empty() {
            return None;
        }
        // walk a chain from an end
        let chain_from = |start: usize| -> Vec<usize> {
            let mut out = vec![start];
            let mut prev = usize::MAX;
            let mut cur = start;
            loop {
                let next = comp.iter().copied().find(|&y| y != cur && y != prev && self.m[cur][y] != 2);
                match next {
                    Some(y) => {
                        out.push(y);
                        prev = cur;
                        cur = y;
                    }
                    None => return out,
                }
            }
        };
        let ends: Vec<usize> = comp.iter().copied().filter(|&x| deg(x) == 1).collect();
        if let Some(&&(x, y, m)) = heavy.first() {
            if m == 6 {
                return (k == 2).then(|| Component { ty: ty(Family::G2, 2), nodes: vec![x.min(y), x.max(y)] });
            }
            if m != 4 {
                return None;
            }
            if k == 2 {
                return Some(Component { ty: ty(Family::B, 2), nodes: vec![x.min(y), x.max(y)] });
            }
            // B_k if the heavy bond sits at an end, F4 if in the middle of a 4-chain
            for &e in &ends {
                let ch = chain_from(e);
                let n = ch.len();
                if (ch[n - 2] == x && ch[n - 1] == y) || (ch[n - 2] == y && ch[n - 1] == x) {
                    return Some(Component { ty: ty(Family::B, k), nodes: ch });
                }
            }
            if k == 4 {
                let e = *ends.iter().min().unwrap();
                let ch = chain_from(e);
                let mid = (ch[1] == x && ch[2] == y) || (ch[1] == y && ch[2] == x);
                return mid.then(|| Component { ty: ty(Family::F4, 4), nodes: ch });
            }
            return None;
        }
        if branch.is_empty() {
            let e = *ends.iter().min().unwrap();
            return Some(Component { ty: ty(Family::A, k), nodes: chain_from(e) });
        }
        let b = branch[0];
        // arms from the branch node
        let mut arms: Vec<Vec<usize>> = self
            .neighbours(b)
            .into_iter()
            .filter(|y| comp.contains(y))
            .map(|y| {
                let mut arm = vec![y];
                let mut prev = b;
                let mut cur = y;
                while let Some(z) = comp.iter().copied().find(|&z| z != prev && z != cur && self.m[cur][z] != 2) {
                    arm.push(z);
                    prev = cur;
                    cur = z;
                }
                arm
            })
            .collect();
        arms.sort_by_key(|a| (a.len(), a[0]));
        let lens: Vec<usize> = arms.iter().map(|a| a.len()).collect();
        match lens.as_slice() {
            [1, 1, _] => {
                // D_k: long arm reversed, branch, then the two leaves
                let mut nodes: Vec<usize> = arms[2].iter().rev().copied().collect();
                nodes.push(b);
                nodes.push(arms[0][0]);
                nodes.push(arms[1][0]);
                Some(Component { ty: ty(Family::D, k), nodes })
            }
            [1, 2, r] if (2..=4).contains(r) => {
                let fam = [Family::E6, Family::E7, Family::E8][r - 2];
                let mut nodes = vec![arms[1][1], arms[0][0], arms[1][0], b];
                nodes.extend(arms[2].iter().copied());
                Some(Component { ty: ty(fam, k), nodes })
            }
            _ => None,
        }
    }

    /// All bond-preserving permutations of the nodes.
    pub fn automorphisms(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut out = Vec::new();
        let mut perm = vec![usize::MAX; n];
        let mut used = vec![false; n];
        self.extend_auto(0, &mut perm, &mut used, &mut out);
        out.sort();
        out
    }

    fn extend_auto(&self, i: usize, perm: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        let n = self.len();
        if i == n {
            out.push(perm.clone());
            return;
        }
        for j in 0..n {
            if used[j] {
                continue;
            }
            if (0..i).all(|k| self.m[k][i] == self.m[perm[k]][j]) {
                perm[i] = j;
                used[j] = true;
                self.extend_auto(i + 1, perm, used, out);
                used[j] = false;
            }
        }
        perm[i] = usize::MAX;
    }

    /// An isomorphism `self -> other` mapping node weights `w1` to `w2`, if any.
    pub fn weighted_isomorphism(&self, w1: &[u64], other: &Diagram, w2: &[u64]) -> Option<Vec<usize>> {
        if self.len() != other.len() {
            return None;
        }
        let n = self.len();
        let mut perm = vec![usize::MAX; n];
        let mut used = vec![false; n];
        fn go(a: &Diagram, w1: &[u64], b: &Diagram, w2: &[u64], i: usize, perm: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
            if i == a.len() {
                return true;
            }
            for j in 0..a.len() {
                if used[j] || w1[i] != w2[j] {
                    continue;
                }
                if (0..i).all(|k| a.m[k][i] == b.m[perm[k]][j]) {
                    perm[i] = j;
                    used[j] = true;
                    if go(a, w1, b, w2, i + 1, perm, used) {
                        return true;
                    }
                    used[j] = false;
                }
            }
            false
        }
        go(self, w1, other, w2, 0, &mut perm, &mut used).then_some(perm)
    }
}

/// An irreducible component of a subdiagram, nodes in standard order.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct Component {
    pub ty: FiniteType,
    pub nodes: Vec<usize>,
}

/// Display name of a product of components, e.g. `A1xB2`, or `{1}` when empty.
pub fn product_name(comps: &[Component]) -> String {
    if comps.is_empty() {
        return "{1}".into();
    }
    let mut names: Vec<String> = comps.iter().map(|c| c.ty.to_string()).collect();
    names.sort();
    names.join("x")
}

/// Affine diagram on nodes `0..=rank`.
pub fn affine_diagram(ty: FiniteType) -> Diagram {
    let n = ty.rank;
    let mut d = Diagram::discrete(n + 1);
    let fin = ty.diagram();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                d.m[i + 1][j + 1] = fin.bond(i, j);
            }
        }
    }
    match ty.family {
        Family::A if n == 1 => d.set(0, 1, INF),
        Family::A => {
            d.set(0, 1, 3);
            d.set(0, n, 3);
        }
        Family::B | Family::D => d.set(0, 2, 3),
        Family::C => d.set(0, 1, 4),
        Family::E6 => d.set(0, 2, 3),
        Family::E7 => d.set(0, 1, 3),
        Family::E8 => d.set(0, 8, 3),
        Family::F4 => d.set(0, 1, 3),
        Family::G2 => d.set(0, 1, 3),
    }
    d
}

/// Edge label used for the `S^!` criterion: the number of lines of the bond.
pub fn edge_label(m: u32) -> u32 {
    match m {
        3 => 1,
        4 => 2,
        6 => 3,
        INF => 1,
        _ => 0,
    }
}

/// Order of a permutation.
pub fn perm_order(p: &[usize]) -> usize {
    let mut o = 1usize;
    let mut seen = vec![false; p.len()];
    for s in 0..p.len() {
        if seen[s] {
            continue;
        }
        let mut len = 0;
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            x = p[x];
            len += 1;
        }
        o = num_integer::lcm(o, len);
    }
    o
}

pub fn perm_compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    // (a∘b)(i) = a(b(i))
    b.iter().map(|&x| a[x]).collect()
}

pub fn perm_orbits(p: &[usize], nodes: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for &s in nodes {
        if seen.contains(&s) {
            continue;
        }
        let mut orb = Vec::new();
        let mut x = s;
        while seen.insert(x) {
            orb.push(x);
            x = p[x];
        }
        orb.sort_unstable();
        out.push(orb);
    }
    out.sort();
    out
}

/// A diagram automorphism with cached order and number of orbits.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct DiagramAutomorphism {
    pub perm: Vec<usize>,
    pub order: usize,
    pub orbits: usize,
}

impl DiagramAutomorphism {
    pub fn new(perm: Vec<usize>) -> Self {
        let all: Vec<usize> = (0..perm.len()).collect();
        let orbits = perm_orbits(&perm, &all).len();
        let order = perm_order(&perm);
        DiagramAutomorphism { perm, order, orbits }
    }

    pub fn identity(n: usize) -> Self {
        Self::new((0..n).collect())
    }

    pub fn is_identity(&self) -> bool {
        self.order == 1
    }
}

/// Whether a permutation preserves all bonds.
pub fn preserves(d: &Diagram, p: &[usize]) -> bool {
    (0..d.len()).all(|i| (0..d.len()).all(|j| d.bond(i, j) == d.bond(p[i], p[j])))
}

/// The opposition automorphism (conjugation by the longest element) of a standard
/// irreducible finite diagram.
pub fn op_perm(ty: FiniteType) -> Vec<usize> {
    let n = ty.rank;
    let mut p: Vec<usize> = (0..n).collect();
    match ty.family {
        Family::A => p.reverse(),
        Family::D if n % 2 == 1 => p.swap(n - 2, n - 1),
        Family::E6 => {
            p = vec![5, 1, 4, 3, 2, 0];
        }
        _ => {}
    }
    p
}

/// Descriptor of a finite product or an irreducible affine type.
#[derive(Clone, PartialEq, Eq, Debug, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Descriptor {
    Finite { factors: Vec<FiniteType> },
    Affine { family: Family, rank: usize },
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum DescriptorError {
    #[error("cannot parse descriptor `{0}`")]
    Parse(String),
    #[error("invalid rank in `{0}`")]
    Rank(String),
}

fn parse_finite(s: &str) -> Result<FiniteType, DescriptorError> {
    let bad = || DescriptorError::Parse(s.to_string());
    for fam in [Family::E6, Family::E7, Family::E8, Family::F4, Family::G2] {
        if s.eq_ignore_ascii_case(fam.name()) {
            return Ok(FiniteType::new(fam, fam.fixed_rank().unwrap()));
        }
    }
    let mut cs = s.chars();
    let f = match cs.next().ok_or_else(bad)?.to_ascii_uppercase() {
        'A' => Family::A,
        'B' => Family::B,
        'C' => Family::C,
        'D' => Family::D,
        _ => return Err(bad()),
    };
    let rank: usize = cs.as_str().parse().map_err(|_| bad())?;
    let t = FiniteType::new(f, rank);
    if !t.is_valid() {
        return Err(DescriptorError::Rank(s.into()));
    }
    Ok(t)
}

impl Descriptor {
    /// Parse `B3`, `D4xD4`, `~C4`, or the JSON object form.
    pub fn parse(s: &str) -> Result<Self, DescriptorError> {
        let s = s.trim();
        if s.starts_with('{') {
            let d: Descriptor = serde_json::from_str(s).map_err(|_| DescriptorError::Parse(s.into()))?;
            return d.validated(s);
        }
        if let Some(rest) = s.strip_prefix('~') {
            let t = parse_finite(rest)?;
            return Descriptor::Affine { family: t.family, rank: t.rank }.validated(s);
        }
        let factors = s.split(['x', '×']).map(parse_finite).collect::<Result<Vec<_>, _>>()?;
        Ok(Descriptor::Finite { factors })
    }

    fn validated(self, s: &str) -> Result<Self, DescriptorError> {
        if let Descriptor::Affine { family, rank } = &self {
            let ok = match family {
                Family::A => *rank >= 1,
                Family::B => *rank >= 3,
                Family::C => *rank >= 2,
                Family::D => *rank >= 4,
                f => f.fixed_rank() == Some(*rank),
            };
            if !ok {
                return Err(DescriptorError::Rank(s.into()));
            }
        }
        Ok(self)
    }

    pub fn affine_type(&self) -> Option<FiniteType> {
        match self {
            Descriptor::Affine { family, rank } => Some(FiniteType::new(*family, *rank)),
            _ => None,
        }
    }

    /// Diagram with node ids `0..` (affine node is `0`).
    pub fn diagram(&self) -> Diagram {
        match self {
            Descriptor::Affine { family, rank } => affine_diagram(FiniteType::new(*family, *rank)),
            Descriptor::Finite { factors } => {
                let n: usize = factors.iter().map(|f| f.rank).sum();
                let mut d = Diagram::discrete(n);
                let mut off = 0;
                for f in factors {
                    let fd = f.diagram();
                    for i in 0..f.rank {
                        for j in 0..f.rank {
                            if i != j {
                                d.m[off + i][off + j] = fd.bond(i, j);
                            }
                        }
                    }
                    off += f.rank;
                }
                d
            }
        }
    }

    pub fn node_names(&self) -> Vec<String> {
        (0..self.diagram().len()).map(|i| i.to_string()).collect()
    }
}

impl fmt::Display for Descriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Descriptor::Affine { family, rank } => write!(f, "~{}", FiniteType::new(*family, *rank)),
            Descriptor::Finite { factors } => {
                let v: Vec<String> = factors.iter().map(|t| t.to_string()).collect();
                write!(f, "{}", v.join("x"))
            }
        }
    }
}

/// Length of the longest element of the standard parabolic on `nodes` of a finite type.
pub fn longest_element_length(ty: FiniteType, nodes: &[usize]) -> usize {
    ty.diagram().longest_length(nodes).expect("finite parabolic")
}

/// Number of reflections in each class of simple reflections conjugate under the
/// group, for a standard irreducible component: pairs `(standard positions, count)`.
pub fn reflection_class_counts(ty: FiniteType) -> Vec<(Vec<usize>, usize)> {
    let n = ty.rank;
    match ty.family {
        Family::B | Family::C if n >= 2 => vec![((0..n - 1).collect(), n * (n - 1)), (vec![n - 1], n)],
        Family::F4 => vec![(vec![0, 1], 12), (vec![2, 3], 12)],
        Family::G2 => vec![(vec![0], 3), (vec![1], 3)],
        _ => vec![((0..n).collect(), ty.positive_roots())],
    }
}

/// Weighted length of the longest element of the subdiagram on `nodes`, with node
/// weights `w` indexed by diagram node.
pub fn weighted_longest_length(d: &Diagram, nodes: &[usize], w: &[u64]) -> Option<u64> {
    let comps = d.finite_type(nodes)?;
    Some(
        comps
            .iter()
            .map(|c| {
                reflection_class_counts(c.ty)
                    .iter()
                    .map(|(pos, cnt)| w[c.nodes[pos[0]]] * *cnt as u64)
                    .sum::<u64>()
            })
            .sum(),
    )
}
