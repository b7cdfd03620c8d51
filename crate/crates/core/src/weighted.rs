//! The weighted affine Weyl group attached to a block, its `c`-function and the
//! relations `≤`, `≈`, `∼` on the irreducibles of its finite quotient.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::affine::{AffineType, Omega};
use crate::blocks::{self, BlockDescriptor, BlockError};
use crate::chars::{self, character_table, IrrLabel, TableError};
use crate::coxeter::{affine_diagram, perm_orbits, product_name, weighted_longest_length, Diagram, Family, FiniteType, INF};
use crate::hecke::{self, a_values, HeckeError, Weighted};

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum WeightedError {
    #[error("J = {0:?} is not a block for this omega")]
    NotABlock(Vec<usize>),
    #[error("the weighted group is trivial")]
    Degenerate,
    #[error("no a-invariant route for {subgroup} with weights {weights:?}")]
    RouteMissing { subgroup: String, weights: Vec<u64> },
    #[error("Coxeter matrix is not of affine type: {0}")]
    Unrecognized(String),
    #[error(transparent)]
    Hecke(#[from] HeckeError),
    #[error(transparent)]
    Block(#[from] BlockError),
}

impl From<TableError> for WeightedError {
    fn from(e: TableError) -> Self {
        WeightedError::Hecke(e.into())
    }
}

fn route(e: HeckeError) -> WeightedError {
    match e {
        HeckeError::NoRoute { ty, weights } => WeightedError::RouteMissing { subgroup: ty, weights },
        e => e.into(),
    }
}

/// An identified affine type: weights in the standard node order of `affine`,
/// and `perm[i]` the standard node of generator `i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Recognized {
    pub affine: FiniteType,
    pub weights: Vec<u64>,
    pub perm: Vec<usize>,
}

impl Recognized {
    pub fn name(&self) -> String {
        format!("~{}", self.affine)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightedAffineGroup {
    /// Generators as `ω`-orbits on `S - J`.
    pub generators: Vec<Vec<usize>>,
    /// Bond orders between generators, `0` for infinite.
    pub coxeter: Vec<Vec<u32>>,
    pub weights: Vec<u64>,
    /// `None` for the trivial group.
    pub recognized: Option<Recognized>,
}

impl WeightedAffineGroup {
    pub fn diagram(&self) -> Diagram {
        Diagram::from_matrix(self.coxeter.clone())
    }

    /// A group given directly as a standard affine diagram with weights.
    pub fn standard(affine: FiniteType, weights: &[u64]) -> Result<Self, WeightedError> {
        let d = affine_diagram(affine);
        if !hecke::is_weight_function(&d, weights) {
            return Err(HeckeError::BadWeights(weights.to_vec()).into());
        }
        let n = d.len();
        Ok(WeightedAffineGroup {
            generators: (0..n).map(|i| vec![i]).collect(),
            coxeter: d.matrix().clone(),
            weights: weights.to_vec(),
            recognized: Some(Recognized { affine, weights: weights.to_vec(), perm: (0..n).collect() }),
        })
    }

    pub fn label(&self) -> String {
        match &self.recognized {
            None => "{1}".into(),
            Some(r) => format!("{} {:?}", r.name(), r.weights),
        }
    }
}

fn candidates(len: usize) -> Vec<FiniteType> {
    let r = len - 1;
    let mut v = Vec::new();
    if r >= 1 {
        v.push(FiniteType::new(Family::A, r));
    }
    if r >= 3 {
        v.push(FiniteType::new(Family::B, r));
    }
    if r >= 2 {
        v.push(FiniteType::new(Family::C, r));
    }
    if r >= 4 {
        v.push(FiniteType::new(Family::D, r));
    }
    for f in [Family::E6, Family::E7, Family::E8, Family::F4, Family::G2] {
        if f.fixed_rank() == Some(r) {
            v.push(FiniteType::new(f, r));
        }
    }
    v
}

/// Identify an affine Coxeter matrix; among diagram symmetries the weight vector
/// in standard order is chosen lexicographically largest.
pub fn recognize(d: &Diagram, weights: &[u64]) -> Option<Recognized> {
    let ones = vec![1; d.len()];
    for ty in candidates(d.len()) {
        let std = affine_diagram(ty);
        if let Some(p0) = d.weighted_isomorphism(&ones, &std, &ones) {
            let mut best: Option<Recognized> = None;
            for alpha in std.automorphisms() {
                let perm: Vec<usize> = p0.iter().map(|&x| alpha[x]).collect();
                let mut w = vec![0; d.len()];
                for (i, &p) in perm.iter().enumerate() {
                    w[p] = weights[i];
                }
                if best.as_ref().is_none_or(|b| w > b.weights) {
                    best = Some(Recognized { affine: ty, weights: w, perm });
                }
            }
            return best;
        }
    }
    None
}

/// Spread of equal-parameter `a` over the constituents of `Ind_{W_J}^{W_{J∪θ}} E_0`,
/// `E_0` the product of the components' sharp characters.
pub fn weight_of_orbit(a: &AffineType, j: &[usize], theta: &[usize]) -> Result<u64, WeightedError> {
    let mut union: Vec<usize> = j.iter().chain(theta).copied().collect();
    union.sort_unstable();
    let comps = a.diagram.finite_type(&union).ok_or_else(|| WeightedError::Unrecognized(format!("{union:?}")))?;
    let mut total = 0;
    for c in comps.iter().filter(|c| c.nodes.iter().any(|x| theta.contains(x))) {
        let pos: Vec<usize> = (0..c.nodes.len()).filter(|&i| j.contains(&c.nodes[i])).collect();
        let sub = chars::parabolic(c.ty, &pos);
        let mut irr = Vec::new();
        for (t, _) in &sub.comps {
            let (label, _) = hecke::sharp_e0(*t).ok_or_else(|| WeightedError::NotABlock(j.to_vec()))?;
            let idx = character_table(*t)?.index_of(&label).ok_or_else(|| WeightedError::Unrecognized(label.to_string()))?;
            irr.push(idx);
        }
        let table = character_table(c.ty)?;
        let ind = chars::fuse(&table, &sub)?.induce(&table, &irr);
        let av = a_values(&Weighted::equal(c.ty, 1)).map_err(route)?;
        let hit: Vec<u64> = (0..ind.len()).filter(|&e| ind[e] > 0).map(|e| av[e]).collect();
        total += hit.iter().max().unwrap() - hit.iter().min().unwrap();
    }
    Ok(total)
}

/// `(W_J, ℓ_J)` from the orbit construction.
pub fn build_weighted_group(a: &AffineType, omega: &Omega, j: &[usize]) -> Result<WeightedAffineGroup, WeightedError> {
    let mut j = j.to_vec();
    j.sort_unstable();
    if j.len() >= a.len() || !blocks::check_block_predicate(a, omega, &j).passes {
        return Err(WeightedError::NotABlock(j));
    }
    let rest: Vec<usize> = (0..a.len()).filter(|x| !j.contains(x)).collect();
    let gens = perm_orbits(&omega.perm, &rest);
    let k = gens.len();
    if k == 1 {
        return Ok(WeightedAffineGroup { generators: gens, coxeter: vec![vec![1]], weights: vec![0], recognized: None });
    }
    let len = |x: &[usize]| -> Option<u64> {
        let mut v = x.to_vec();
        v.sort_unstable();
        a.diagram.longest_length(&v).map(|l| l as u64)
    };
    let lj = len(&j).unwrap();
    let with = |th: &[usize]| [j.as_slice(), th].concat();
    let mut m = vec![vec![1u32; k]; k];
    for p in 0..k {
        for q in p + 1..k {
            let both = [with(&gens[p]), gens[q].clone()].concat();
            let v = match len(&both) {
                None => INF,
                Some(l3) => {
                    let num = 2 * (l3 - lj);
                    let den = len(&with(&gens[p])).unwrap() + len(&with(&gens[q])).unwrap() - 2 * lj;
                    assert!(num % den == 0, "non-integral bond {num}/{den}");
                    let v = (num / den) as u32;
                    assert!(v >= 2);
                    v
                }
            };
            m[p][q] = v;
            m[q][p] = v;
        }
    }
    let weights: Vec<u64> = gens.iter().map(|th| weight_of_orbit(a, &j, th)).collect::<Result<_, _>>()?;
    let d = Diagram::from_matrix(m.clone());
    let rec = recognize(&d, &weights).ok_or_else(|| WeightedError::Unrecognized(format!("{m:?}")))?;
    assert!(hecke::is_weight_function(&d, &weights), "weights {weights:?} not a weight function");
    Ok(WeightedAffineGroup { generators: gens, coxeter: m, weights, recognized: Some(rec) })
}

/// The tabulated answer for a block: `None` for the trivial group.
pub fn expected_weighted_group(a: &AffineType, omega: &Omega, block: &BlockDescriptor) -> Option<(FiniteType, Vec<u64>)> {
    let n = a.ty.rank;
    let ty = |f, r| FiniteType::new(f, r);
    let whole = || Some((a.ty, vec![1; n + 1]));
    match a.ty.family {
        Family::A => {
            let k = omega.order;
            let nodes = n + 1;
            (k < nodes).then(|| (ty(Family::A, nodes / k - 1), vec![k as u64; nodes / k]))
        }
        Family::E6 | Family::E7 | Family::E8 | Family::F4 | Family::G2 => {
            if !block.nodes.is_empty() {
                None
            } else if omega.is_identity() {
                whole()
            } else if a.ty.family == Family::E6 {
                Some((ty(Family::G2, 2), vec![3, 3, 1]))
            } else {
                Some((ty(Family::F4, 4), vec![2, 2, 2, 1, 1]))
            }
        }
        _ => {
            let (t, s, delta, r) = (block.t?, block.s?, block.delta?, block.r? as usize);
            if r == 0 {
                return None;
            }
            if delta == 0 {
                if omega.is_identity() {
                    return whole();
                }
                let mut w = vec![2; r + 1];
                w[r] = 1;
                return Some((ty(Family::B, r), w));
            }
            let mid = if omega.prime { 1 } else { 2 };
            if r == 1 {
                return Some((ty(Family::A, 1), vec![t, s]));
            }
            let mut w = vec![mid; r + 1];
            w[0] = t;
            w[r] = s;
            Some((ty(Family::C, r), w))
        }
    }
}

/// Whether a built group matches an expected `(type, weights)` up to diagram
/// isomorphism.
pub fn matches_expected(g: &WeightedAffineGroup, exp: &Option<(FiniteType, Vec<u64>)>) -> bool {
    match (&g.recognized, exp) {
        (None, None) => true,
        (Some(_), Some((ty, w))) => {
            let std = affine_diagram(*ty);
            g.diagram().weighted_isomorphism(&g.weights, &std, w).is_some()
        }
        _ => false,
    }
}

/// Nodes whose deletion leaves the finite quotient's diagram.
pub fn special_nodes(affine: FiniteType) -> Vec<usize> {
    AffineType::new(affine).s_star
}

/// `ν = max_{s ∈ S_*} ℓ(w_{0,s})`.
pub fn nu(g: &WeightedAffineGroup) -> Result<u64, WeightedError> {
    let rec = g.recognized.as_ref().ok_or(WeightedError::Degenerate)?;
    let d = affine_diagram(rec.affine);
    Ok(special_nodes(rec.affine)
        .into_iter()
        .map(|s| {
            let rest: Vec<usize> = (0..d.len()).filter(|&x| x != s).collect();
            weighted_longest_length(&d, &rest, &rec.weights).unwrap()
        })
        .max()
        .unwrap())
}

// ---------------------------------------------------------------- c-function

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Witness {
    /// The deleted node `s`, so `J = S - {s}`.
    pub deleted: usize,
    pub subgroup: String,
    pub constituent: Vec<IrrLabel>,
    #[serde(skip)]
    pub irr: Vec<usize>,
    pub a: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CRow {
    pub label: IrrLabel,
    pub c: u64,
    /// `a` of the same character seen on `S - {s₀}`, `s₀` the chosen special node.
    pub second: u64,
    pub witnesses: Vec<Witness>,
    /// Types of other maximal subsets reaching `c` when `c > second`.
    pub extra: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CFunctionTable {
    pub affine: FiniteType,
    pub weights: Vec<u64>,
    pub second_node: usize,
    pub rows: Vec<CRow>,
}

fn components_weighted(a: &AffineType, nodes: &[usize], w: &[u64]) -> Vec<Weighted> {
    a.diagram
        .finite_type(nodes)
        .unwrap()
        .into_iter()
        .map(|c| Weighted { ty: c.ty, w: c.nodes.iter().map(|&i| w[i]).collect() })
        .collect()
}

/// `c_E` for every irreducible of `W̄`, with the maximizing pairs.
pub fn c_function(affine: FiniteType, weights: &[u64]) -> Result<CFunctionTable, WeightedError> {
    let a = AffineType::new(affine);
    if !hecke::is_weight_function(&a.diagram, weights) {
        return Err(HeckeError::BadWeights(weights.to_vec()).into());
    }
    let table = character_table(affine)?;
    let nirr = table.irr.len();
    // per maximal subset: (deleted node, name, per irreducible: constituents with a)
    let mut per_subset = Vec::new();
    for s in 0..a.len() {
        let nodes: Vec<usize> = (0..a.len()).filter(|&x| x != s).collect();
        let sub = a.subgroup(&nodes).unwrap();
        let comps = components_weighted(&a, &nodes, weights);
        let avs: Vec<_> = comps.iter().map(a_values).collect::<Result<Vec<_>, _>>().map_err(route)?;
        let fusion = chars::fuse(&table, &sub)?;
        let name = product_name(&a.diagram.finite_type(&nodes).unwrap());
        let rows: Vec<Vec<(Vec<usize>, u64)>> = (0..nirr)
            .map(|e| {
                fusion
                    .restrict(&table.values[e])
                    .into_iter()
                    .map(|(irr, _)| {
                        let av = irr.iter().zip(&avs).map(|(&i, v)| v[i]).sum();
                        (irr, av)
                    })
                    .collect()
            })
            .collect();
        per_subset.push((s, name, fusion, rows, sub));
    }
    // delete the lightest special node, so the copy of the finite quotient keeps the heaviest end
    let s0 = *a.s_star.iter().min_by_key(|&&s| weights[s]).unwrap();
    let mut rows = Vec::new();
    for e in 0..nirr {
        let c = per_subset.iter().flat_map(|p| p.3[e].iter().map(|x| x.1)).max().unwrap();
        let mut witnesses = Vec::new();
        for (s, name, fusion, r, _) in &per_subset {
            for (irr, av) in &r[e] {
                if *av == c {
                    let constituent = irr.iter().zip(&fusion.tables).map(|(&i, t)| t.irr[i].clone()).collect();
                    witnesses.push(Witness { deleted: *s, subgroup: name.clone(), constituent, irr: irr.clone(), a: *av });
                }
            }
        }
        let second_list = &per_subset[s0].3[e];
        assert_eq!(second_list.len(), 1, "restriction to a copy of the finite quotient must be irreducible");
        let second = second_list[0].1;
        let extra: Vec<String> = if c > second {
            witnesses.iter().filter(|w| w.deleted != s0).map(|w| w.subgroup.clone()).collect::<BTreeSet<_>>().into_iter().collect()
        } else {
            Vec::new()
        };
        rows.push(CRow { label: table.irr[e].clone(), c, second, witnesses, extra });
    }
    Ok(CFunctionTable { affine, weights: weights.to_vec(), second_node: s0, rows })
}

// ---------------------------------------------------------------- relations

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct OrderRelations {
    /// Classes of equal `c`, by decreasing `c`.
    pub approx: Vec<Vec<usize>>,
    /// Classes of the relation generated by shared same-family witnesses.
    pub sim: Vec<Vec<usize>>,
    pub c: Vec<u64>,
}

impl OrderRelations {
    /// `E ≤ Ẽ` iff `E = Ẽ` or `c_E > c_Ẽ`.
    pub fn le(&self, e: usize, f: usize) -> bool {
        e == f || self.c[e] > self.c[f]
    }

    pub fn approx_eq(&self, e: usize, f: usize) -> bool {
        self.c[e] == self.c[f]
    }

    pub fn sim_class(&self, e: usize) -> usize {
        self.sim.iter().position(|c| c.contains(&e)).unwrap()
    }

    pub fn sim_eq(&self, e: usize, f: usize) -> bool {
        self.sim_class(e) == self.sim_class(f)
    }
}

pub fn order_relations(tbl: &CFunctionTable) -> Result<OrderRelations, WeightedError> {
    let a = AffineType::new(tbl.affine);
    let n = tbl.rows.len();
    let c: Vec<u64> = tbl.rows.iter().map(|r| r.c).collect();
    let mut levels: Vec<u64> = c.clone();
    levels.sort_unstable_by(|x, y| y.cmp(x));
    levels.dedup();
    let approx: Vec<Vec<usize>> = levels.iter().map(|&l| (0..n).filter(|&e| c[e] == l).collect()).collect();
    // family id of every witness
    let mut fam_ids = std::collections::HashMap::new();
    for s in 0..a.len() {
        let nodes: Vec<usize> = (0..a.len()).filter(|&x| x != s).collect();
        let comps = components_weighted(&a, &nodes, &tbl.weights);
        fam_ids.insert(s, hecke::product_family_ids(&comps).map_err(route)?);
    }
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut Vec<usize>, x: usize) -> usize {
        if p[x] != x {
            let r = find(p, p[x]);
            p[x] = r;
        }
        p[x]
    }
    for e in 0..n {
        for f in e + 1..n {
            if c[e] != c[f] {
                continue;
            }
            let linked = tbl.rows[e].witnesses.iter().any(|w1| {
                tbl.rows[f].witnesses.iter().any(|w2| {
                    w1.deleted == w2.deleted && fam_ids[&w1.deleted][&w1.irr] == fam_ids[&w2.deleted][&w2.irr]
                })
            });
            if linked {
                let (x, y) = (find(&mut parent, e), find(&mut parent, f));
                parent[x.max(y)] = x.min(y);
            }
        }
    }
    let mut sim: Vec<Vec<usize>> = Vec::new();
    for e in 0..n {
        let r = find(&mut parent, e);
        match sim.iter_mut().find(|cl| find(&mut parent.clone(), cl[0]) == r) {
            Some(cl) => cl.push(e),
            None => sim.push(vec![e]),
        }
    }
    Ok(OrderRelations { approx, sim, c })
}
