//! Irreducible affine Weyl groups: the group `Ω` of length-preserving
//! automorphisms acting on the nodes, the node sets `S^!` and `S_*`, and the
//! embedding of finite parabolics into the finite quotient `W̄`.
//!
//! Nodes are `0..=n`, node `0` affine and node `i + 1` the finite node `i`.

use serde::Serialize;

use crate::chars::Subgroup;
use crate::coxeter::{affine_diagram, edge_label, perm_compose, perm_order, Diagram, Family, FiniteType};
use crate::group::{Elem, Group};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Omega {
    pub perm: Vec<usize>,
    pub order: usize,
    /// Member of `Ω'` (identity on `S^!`); otherwise `Ω''`.
    pub prime: bool,
    pub square_is_identity: bool,
}

impl Omega {
    pub fn is_identity(&self) -> bool {
        self.order == 1
    }
}

/// How a CLI or caller names an element of `Ω`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OmegaSelector {
    Identity,
    /// First nontrivial element of `Ω'`, or the identity when `Ω' = {1}`.
    Prime,
    /// First element of `Ω''`.
    DoublePrime,
    /// First element of the given order.
    Order(usize),
    /// First nontrivial element.
    Nontrivial,
}

impl std::str::FromStr for OmegaSelector {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "1" | "id" | "identity" => Ok(OmegaSelector::Identity),
            "prime" => Ok(OmegaSelector::Prime),
            "doubleprime" => Ok(OmegaSelector::DoublePrime),
            "nontrivial" => Ok(OmegaSelector::Nontrivial),
            _ => s
                .strip_prefix("k=")
                .and_then(|k| k.parse().ok())
                .filter(|&k: &usize| k >= 1)
                .map(OmegaSelector::Order)
                .ok_or_else(|| format!("bad omega selector `{s}`")),
        }
    }
}

#[derive(Clone, Debug)]
pub struct AffineType {
    pub ty: FiniteType,
    pub diagram: Diagram,
    /// Identity first.
    pub omega: Vec<Omega>,
    pub s_bang: Vec<usize>,
    pub s_star: Vec<usize>,
}

fn rotation(len: usize, k: usize) -> Vec<usize> {
    (0..len).map(|i| (i + k) % len).collect()
}

fn from_cycles(len: usize, cycles: &[&[usize]]) -> Vec<usize> {
    let mut p: Vec<usize> = (0..len).collect();
    for c in cycles {
        for (i, &x) in c.iter().enumerate() {
            p[x] = c[(i + 1) % c.len()];
        }
    }
    p
}

fn omega_perms(ty: FiniteType) -> Vec<Vec<usize>> {
    let n = ty.rank;
    let len = n + 1;
    let id: Vec<usize> = (0..len).collect();
    let flip: Vec<usize> = (0..len).map(|i| n - i).collect();
    match ty.family {
        Family::A => (0..len).map(|k| rotation(len, k)).collect(),
        Family::B => vec![id, from_cycles(len, &[&[0, 1]])],
        Family::C => vec![id, flip],
        Family::D if n.is_multiple_of(2) => {
            let a = from_cycles(len, &[&[0, 1], &[n - 1, n]]);
            let ab = perm_compose(&a, &flip);
            vec![id, a, flip, ab]
        }
        Family::D => {
            let mut g = flip.clone();
            g[0] = n;
            g[n] = 1;
            g[1] = n - 1;
            g[n - 1] = 0;
            let g2 = perm_compose(&g, &g);
            let g3 = perm_compose(&g2, &g);
            vec![id, g, g2, g3]
        }
        Family::E6 => {
            let r = from_cycles(len, &[&[0, 1, 6], &[2, 3, 5]]);
            let r2 = perm_compose(&r, &r);
            vec![id, r, r2]
        }
        Family::E7 => vec![id, from_cycles(len, &[&[0, 7], &[1, 6], &[3, 5]])],
        Family::E8 | Family::F4 | Family::G2 => vec![id],
    }
}

impl AffineType {
    pub fn new(ty: FiniteType) -> Self {
        let diagram = affine_diagram(ty);
        let len = ty.rank + 1;
        let s_bang: Vec<usize> = (0..len)
            .filter(|&s| (0..len).filter(|&t| t != s).map(|t| edge_label(diagram.bond(s, t))).sum::<u32>() >= 3)
            .collect();
        let s_star: Vec<usize> = (0..len)
            .filter(|&s| {
                let rest: Vec<usize> = (0..len).filter(|&t| t != s).collect();
                matches!(diagram.finite_type(&rest).as_deref(), Some([c]) if c.ty.coxeter_key() == ty.coxeter_key())
            })
            .collect();
        let id: Vec<usize> = (0..len).collect();
        let omega = omega_perms(ty)
            .into_iter()
            .map(|perm| {
                debug_assert!(crate::coxeter::preserves(&diagram, &perm));
                let fixes_bang = s_bang.iter().all(|&s| perm[s] == s);
                // the flip of affine C2 fixes its single S^! node but acts as the
                // non-trivial class (see the type-C enumeration)
                let c2_flip = ty.family == Family::C && ty.rank == 2 && perm != id;
                let prime = (s_bang.is_empty() || fixes_bang) && !c2_flip;
                let order = perm_order(&perm);
                Omega { square_is_identity: order <= 2, order, prime, perm }
            })
            .collect();
        AffineType { ty, diagram, omega, s_bang, s_star }
    }

    pub fn len(&self) -> usize {
        self.ty.rank + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn name(&self) -> String {
        format!("~{}", self.ty)
    }

    pub fn has_double_prime(&self) -> bool {
        self.omega.iter().any(|o| !o.prime)
    }

    pub fn identity(&self) -> &Omega {
        &self.omega[0]
    }

    pub fn select(&self, sel: &OmegaSelector) -> Option<&Omega> {
        match sel {
            OmegaSelector::Identity => Some(&self.omega[0]),
            OmegaSelector::Prime => {
                Some(self.omega.iter().find(|o| o.prime && !o.is_identity()).unwrap_or(&self.omega[0]))
            }
            OmegaSelector::DoublePrime => self.omega.iter().find(|o| !o.prime),
            OmegaSelector::Order(k) => self.omega.iter().find(|o| o.order == *k),
            OmegaSelector::Nontrivial => self.omega.iter().find(|o| !o.is_identity()),
        }
    }

    pub fn index_of(&self, o: &Omega) -> Option<usize> {
        self.omega.iter().position(|x| x == o)
    }

    /// Images in the finite quotient of the simple reflections, as elements of
    /// the model group of `ty` (shared by `B` and `C`).
    pub fn node_images(&self) -> Vec<Elem> {
        let g = Group::get(self.ty);
        let mut v = vec![affine_node_image(self.ty)];
        v.extend((0..self.ty.rank).map(|i| g.gen(i).clone()));
        v
    }

    /// `W_J` as a reflection subgroup of `W̄`; `None` unless `J ⊊ S`.
    pub fn subgroup(&self, nodes: &[usize]) -> Option<Subgroup> {
        if nodes.len() >= self.len() {
            return None;
        }
        let imgs = self.node_images();
        let comps = self.diagram.finite_type(nodes)?;
        Some(Subgroup {
            comps: comps.into_iter().map(|c| (c.ty, c.nodes.iter().map(|&i| imgs[i].clone()).collect())).collect(),
        })
    }
}

/// Image of the affine simple reflection in `W̄`: the reflection in the highest
/// root (of the root system of type `ty`, so `C_n` uses `2e_0`).
pub fn affine_node_image(ty: FiniteType) -> Elem {
    let g = Group::get(ty);
    let n = ty.rank;
    match ty.family {
        Family::A => {
            let mut w: Elem = (1..=n as i32 + 1).collect();
            w.swap(0, n);
            w
        }
        Family::B | Family::D => {
            let mut w: Elem = (1..=n as i32).collect();
            w[0] = -2;
            w[1] = -1;
            w
        }
        Family::C => {
            let mut w: Elem = (1..=n as i32).collect();
            w[0] = -1;
            w
        }
        _ => highest_root_reflection(&g),
    }
}

/// Matrix models: grow the positive roots from the simple ones, tracking a word
/// `w` with `w(α_i) = β`; the highest root `θ` gives `s_θ = w s_i w⁻¹`.
fn highest_root_reflection(g: &Group) -> Elem {
    let n = g.rank();
    let apply = |w: &Elem, v: &[i32]| -> Vec<i32> { (0..n).map(|r| (0..n).map(|c| w[r * n + c] * v[c]).sum()).collect() };
    let mut seen: std::collections::HashMap<Vec<i32>, (usize, Vec<usize>)> = Default::default();
    let mut frontier: Vec<Vec<i32>> = Vec::new();
    for i in 0..n {
        let mut v = vec![0; n];
        v[i] = 1;
        seen.insert(v.clone(), (i, Vec::new()));
        frontier.push(v);
    }
    while let Some(v) = frontier.pop() {
        let (i, word) = seen[&v].clone();
        for j in 0..n {
            let u = apply(g.gen(j), &v);
            if u.iter().all(|&x| x >= 0) && u.iter().sum::<i32>() > v.iter().sum::<i32>() && !seen.contains_key(&u) {
                let mut w2 = vec![j];
                w2.extend(&word);
                seen.insert(u.clone(), (i, w2));
                frontier.push(u);
            }
        }
    }
    let (_, (i, word)) = seen.iter().max_by_key(|(v, _)| v.iter().sum::<i32>()).unwrap();
    let w = g.word(word);
    g.mul(&g.mul(&w, g.gen(*i)), &g.inv(&w))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::closure;

    fn all_types() -> Vec<FiniteType> {
        let mut v = Vec::new();
        for n in 1..=5 {
            v.push(FiniteType::new(Family::A, n));
        }
        for n in 3..=6 {
            v.push(FiniteType::new(Family::B, n));
        }
        for n in 2..=6 {
            v.push(FiniteType::new(Family::C, n));
        }
        for n in 4..=7 {
            v.push(FiniteType::new(Family::D, n));
        }
        for f in [Family::E6, Family::E7, Family::E8, Family::F4, Family::G2] {
            v.push(FiniteType::new(f, f.fixed_rank().unwrap()));
        }
        v
    }

    fn elem_order(g: &Group, x: &Elem) -> u32 {
        let id = g.identity();
        let mut p = x.clone();
        let mut k = 1;
        while p != id {
            p = g.mul(&p, x);
            k += 1;
        }
        k
    }

    #[test]
    fn node_images_satisfy_affine_relations() {
        for ty in all_types() {
            let a = AffineType::new(ty);
            let g = Group::get(ty);
            let imgs = a.node_images();
            for i in 0..a.len() {
                for j in i + 1..a.len() {
                    let m = a.diagram.bond(i, j);
                    if m == crate::coxeter::INF {
                        continue;
                    }
                    assert_eq!(elem_order(&g, &g.mul(&imgs[i], &imgs[j])), m, "{ty} nodes {i},{j}");
                }
            }
        }
    }

    #[test]
    fn omega_simply_transitive_on_s_star() {
        for ty in all_types() {
            let a = AffineType::new(ty);
            assert_eq!(a.s_star.len(), a.omega.len(), "{ty}");
            let s0 = a.s_star[0];
            let mut hit: Vec<usize> = a.omega.iter().map(|o| o.perm[s0]).collect();
            hit.sort();
            assert_eq!(hit, a.s_star, "{ty}");
            assert!(a.s_bang.len() <= 2);
            // closed under composition
            for x in &a.omega {
                for y in &a.omega {
                    let z = perm_compose(&x.perm, &y.perm);
                    assert!(a.omega.iter().any(|o| o.perm == z));
                }
            }
        }
    }

    #[test]
    fn omega_split() {
        let count = |f, n| {
            let a = AffineType::new(FiniteType::new(f, n));
            (a.omega.iter().filter(|o| o.prime).count(), a.omega.len())
        };
        assert_eq!(count(Family::B, 4), (2, 2));
        assert_eq!(count(Family::C, 3), (1, 2));
        assert_eq!(count(Family::C, 2), (1, 2));
        assert_eq!(count(Family::D, 4), (4, 4));
        assert_eq!(count(Family::D, 6), (2, 4));
        assert_eq!(count(Family::D, 5), (2, 4));
        assert_eq!(count(Family::A, 3), (4, 4));
        let d5 = AffineType::new(FiniteType::new(Family::D, 5));
        assert!(d5.omega.iter().filter(|o| !o.prime).all(|o| !o.square_is_identity));
        let d6 = AffineType::new(FiniteType::new(Family::D, 6));
        assert!(d6.omega.iter().all(|o| o.square_is_identity));
    }

    /// Each `ω` induces an inner automorphism of `W̄`: some `w` conjugates the
    /// image of node `i` to the image of node `ω(i)` for all `i`.
    #[test]
    fn omega_is_inner_on_quotient() {
        for ty in all_types().into_iter().filter(|t| t.rank <= 4) {
            let a = AffineType::new(ty);
            let g = Group::get(ty);
            let imgs = a.node_images();
            let elems = closure(&g, &imgs[1..]);
            for o in &a.omega {
                let found = elems.iter().any(|w| {
                    let wi = g.inv(w);
                    (0..a.len()).all(|i| g.mul(&g.mul(w, &imgs[i]), &wi) == imgs[o.perm[i]])
                });
                assert!(found, "{ty} {:?}", o.perm);
            }
        }
    }

    #[test]
    fn selectors() {
        let a = AffineType::new(FiniteType::new(Family::D, 5));
        assert_eq!(a.select(&OmegaSelector::DoublePrime).unwrap().order, 4);
        assert_eq!(a.select(&OmegaSelector::Prime).unwrap().order, 2);
        assert!("k=x".parse::<OmegaSelector>().is_err());
        let c = AffineType::new(FiniteType::new(Family::C, 3));
        assert!(c.select(&OmegaSelector::Prime).unwrap().is_identity());
    }
}
