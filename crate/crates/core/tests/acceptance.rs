//! Acceptance suite: one line per criterion.
//!
//! Every expected value here is transcribed independently of the library's own
//! tables. Criteria with known, documented disagreements are listed in
//! `KNOWN_RED` together with a predicate that every failure must satisfy; any
//! other failure, or any failure of a criterion not listed, makes the run exit
//! non-zero.

use std::collections::{BTreeSet, HashMap};
use std::process::ExitCode;

use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

use blockweyl::affine::{AffineType, Omega};
use blockweyl::blocks::{self, BlockDescriptor};
use blockweyl::chars::{self, character_table, IrrLabel};
use blockweyl::coxeter::{affine_diagram, op_perm, perm_orbits, Descriptor, Diagram, Family, FiniteType};
use blockweyl::exec::Backend;
use blockweyl::green::{self, EliminationOrder};
use blockweyl::hecke::{self, Weighted};
use blockweyl::report;
use blockweyl::weighted::{self, WeightedAffineGroup, WeightedError};

fn ft(f: Family, n: usize) -> FiniteType {
    FiniteType::new(f, n)
}

fn label(s: &str) -> IrrLabel {
    IrrLabel::parse(s).unwrap_or_else(|| panic!("bad label {s}"))
}

/// Failures of one criterion, each a short self-describing string.
struct Outcome {
    summary: String,
    failures: Vec<String>,
}

// ------------------------------------------------------------------ criterion 1

/// Closed-form a-lists as printed, keyed by character label.
fn printed_a(ty: &str, a: i64, b: i64) -> Vec<(&'static str, i64)> {
    let m = a.min(b);
    let mp = (2 * a).min(b);
    match ty {
        "A1" => vec![("2", 0), ("11", a)],
        "A2" => vec![("3", 0), ("21", a), ("111", 3 * a)],
        "B2" => vec![("(2,-)", 0), ("(1,1)", a + b - m), ("(11,-)", 2 * a - m), ("(-,2)", 2 * b - m), ("(-,11)", 2 * a + 2 * b)],
        // fourth column is the q-type character (sign on the generator of weight a)
        "G2" => vec![
            ("phi1,0", 0),
            ("phi2,1", a + b - m),
            ("phi2,2", a + b - m),
            ("phi1,3''", 2 * a - 2 * m),
            ("phi1,3'", 2 * b - 2 * m),
            ("phi1,6", 3 * a + 3 * b),
        ],
        "B3" => vec![
            ("(3,-)", 0),
            ("(2,1)", a + b - m),
            ("(21,-)", 2 * a - m),
            ("(-,3)", 3 * b - m - mp),
            ("(1,2)", a + 2 * b - mp),
            ("(11,1)", 3 * a + b - mp),
            ("(-,21)", 2 * a + 3 * b - m),
            ("(1,11)", 3 * a + 2 * b - m),
            ("(111,-)", 6 * a - m - mp),
            ("(-,111)", 6 * a + 3 * b),
        ],
        _ => unreachable!(),
    }
}

fn criterion_1() -> Outcome {
    let types = [
        ("A1", ft(Family::A, 1)),
        ("A2", ft(Family::A, 2)),
        ("B2", ft(Family::B, 2)),
        ("G2", ft(Family::G2, 2)),
        ("B3", ft(Family::B, 3)),
    ];
    let mut failures = Vec::new();
    let mut n = 0;
    for a in 1..=5u64 {
        for b in 1..=5u64 {
            for (name, ty) in types {
                let w = match name {
                    "A1" => vec![a],
                    "A2" => vec![a, a],
                    "B3" => vec![a, a, b],
                    _ => vec![a, b],
                };
                let wt = Weighted { ty, w };
                for (l, want) in printed_a(name, a as i64, b as i64) {
                    n += 1;
                    let lab = label(l);
                    match hecke::a_invariant(&wt, &lab) {
                        Ok(got) if got as i64 == want => {}
                        Ok(got) => failures.push(format!("{name} {l} at (a,b)=({a},{b}): printed {want}, computed {got}")),
                        Err(e) => failures.push(format!("{name} {l} at (a,b)=({a},{b}): {e}")),
                    }
                    // symbol route for the B types
                    if let IrrLabel::Bi(x, z) = &lab {
                        let got = hecke::b_a_value(x, z, a, b) as i64;
                        if got != want {
                            failures.push(format!("{name} {l} at (a,b)=({a},{b}) by symbols: printed {want}, computed {got}"));
                        }
                    }
                }
            }
        }
    }
    Outcome { summary: format!("{n} (type, weight, character) entries over (a,b) in 1..5 x 1..5"), failures }
}

// ------------------------------------------------------------------ criterion 2

/// Name, diagram, nodes, twist, and the listed a-value when sharp.
type SharpCase = (String, Diagram, Vec<usize>, Vec<usize>, Option<u64>);

fn criterion_2() -> Outcome {
    let mut failures = Vec::new();
    let mut cases: Vec<SharpCase> = Vec::new();
    let irr = |ty: FiniteType, twist: Vec<usize>, name: String, want: Option<u64>| {
        (name, ty.diagram(), (0..ty.rank).collect::<Vec<_>>(), twist, want)
    };
    let id = |n: usize| (0..n).collect::<Vec<usize>>();
    for t in (5..=13u64).step_by(2) {
        let m = ((t * t - 1) / 8 - 1) as usize;
        let ty = ft(Family::A, m);
        cases.push(irr(ty, op_perm(ty), format!("2A{m} (t={t})"), Some((t - 3) * (t - 1) * (t + 1) / 48)));
    }
    for t in (3..=13u64).step_by(2) {
        let m = ((t * t - 1) / 4) as usize;
        cases.push(irr(ft(Family::B, m), id(m), format!("B{m} (t={t})"), Some((t - 1) * (t + 1) * (2 * t - 3) / 24)));
    }
    for t in (4..=13u64).step_by(4) {
        let m = (t * t / 4) as usize;
        cases.push(irr(ft(Family::D, m), id(m), format!("D{m} (t={t})"), Some((t - 2) * t * (2 * t + 1) / 24)));
    }
    for t in (6..=13u64).step_by(4) {
        let m = (t * t / 4) as usize;
        let mut g = id(m);
        g.swap(m - 2, m - 1);
        cases.push(irr(ft(Family::D, m), g, format!("2D{m} (t={t})"), Some((t - 2) * t * (2 * t + 1) / 24)));
    }
    cases.push(irr(ft(Family::G2, 2), id(2), "G2".into(), Some(1)));
    // nodes 0, 2, 3 hang off node 1 in the standard D4 diagram
    cases.push(irr(ft(Family::D, 4), vec![2, 1, 3, 0], "3D4".into(), Some(3)));
    cases.push(irr(ft(Family::F4, 4), id(4), "F4".into(), Some(4)));
    cases.push(irr(ft(Family::E6, 6), vec![5, 1, 4, 3, 2, 0], "2E6".into(), Some(7)));
    cases.push(irr(ft(Family::E8, 8), id(8), "E8".into(), Some(16)));
    cases.push(("{1}".into(), Diagram::discrete(0), Vec::new(), Vec::new(), Some(0)));
    // a product of two copies swapped by the twist: a = 2 a[B2]
    let bb = Descriptor::parse("B2xB2").unwrap().diagram();
    cases.push(("B2xB2 swapped".into(), bb, vec![0, 1, 2, 3], vec![2, 3, 0, 1], Some(2)));
    // negative membership
    for (ty, twist, name) in [
        (ft(Family::A, 2), id(2), "A2"),
        (ft(Family::A, 3), vec![2, 1, 0], "2A3"),
        (ft(Family::B, 3), id(3), "B3"),
        (ft(Family::B, 5), id(5), "B5"),
        (ft(Family::D, 4), vec![0, 1, 3, 2], "2D4"),
        (ft(Family::D, 5), id(5), "D5"),
        (ft(Family::D, 9), id(9), "D9"),
        (ft(Family::E6, 6), id(6), "E6"),
        (ft(Family::E7, 7), id(7), "E7"),
    ] {
        cases.push(irr(ty, twist, name.into(), None));
    }
    let n = cases.len();
    for (name, d, nodes, twist, want) in cases {
        let got = blocks::is_sharp(&d, &nodes, &twist);
        match want {
            Some(_) if !got.sharp => failures.push(format!("{name}: listed as sharp, not recognised")),
            Some(a_) if got.a_value != a_ => failures.push(format!("{name}: a = {} expected {a_}", got.a_value)),
            None if got.sharp => failures.push(format!("{name}: not listed, reported sharp")),
            _ => {}
        }
    }
    Outcome { summary: format!("{n} twisted groups (listed families up to t = 13 and non-members)"), failures }
}

// ------------------------------------------------------------------ criterion 3

fn classical() -> Vec<AffineType> {
    let mut v = Vec::new();
    v.extend((3..=9).map(|n| ft(Family::B, n)));
    v.extend((2..=9).map(|n| ft(Family::C, n)));
    v.extend((4..=9).map(|n| ft(Family::D, n)));
    v.into_iter().map(AffineType::new).collect()
}

fn criterion_3() -> Outcome {
    let mut failures = Vec::new();
    let mut count = 0;
    for a in classical() {
        let n = a.ty.rank as u64;
        let fam = a.ty.family;
        for om in &a.omega {
            let tag = format!("{} omega {:?}", a.name(), om.perm);
            let bl = match blocks::enumerate_blocks(&a, om) {
                Ok(b) => b,
                Err(e) => {
                    failures.push(format!("{tag}: {e}"));
                    continue;
                }
            };
            count += bl.len();
            let mine: BTreeSet<Vec<usize>> = bl.iter().map(|b| b.nodes.clone()).collect();
            let mut brute = BTreeSet::new();
            for mask in 0u32..(1 << a.len()) - 1 {
                let j: Vec<usize> = (0..a.len()).filter(|i| mask & (1 << i) != 0).collect();
                if blocks::check_block_predicate(&a, om, &j).passes {
                    brute.insert(j);
                }
            }
            if mine != brute {
                failures.push(format!("{tag}: enumeration {mine:?} vs predicate {brute:?}"));
            }
            // (t,s) -> (δ,r) -> (t,s)
            let ts = blocks::ts_pairs(&a, om);
            for &(t, s, r) in &ts {
                match blocks::ts_to_delta_r(fam, om, n, t, s, r) {
                    Ok((d, r2)) => {
                        if blocks::delta_r_to_ts(fam, om, d).ok() != Some((t, s)) || r2 != r {
                            failures.push(format!("{tag}: ({t},{s}) does not round-trip"));
                        }
                    }
                    Err(e) => failures.push(format!("{tag}: {e}")),
                }
            }
            // (δ,r) -> (t,s) -> (δ,r)
            let dr = blocks::delta_r_set(fam, om, n);
            for &(d, r) in &dr {
                let back = blocks::delta_r_to_ts(fam, om, d).and_then(|(t, s)| blocks::ts_to_delta_r(fam, om, n, t, s, r));
                if back.ok() != Some((d, r)) {
                    failures.push(format!("{tag}: (δ,r)=({d},{r}) does not round-trip"));
                }
            }
            if ts.len() != dr.len() || ts.len() != bl.len() {
                failures.push(format!("{tag}: sizes blocks {} / (t,s) {} / (δ,r) {}", bl.len(), ts.len(), dr.len()));
            }
            // base pair of the trivial block for Ω''
            if !om.prime {
                let want = match (fam, n % 2, om.square_is_identity) {
                    (Family::C, 0, _) => Some((2, 1)),
                    (Family::C, _, _) => Some((2, 3)),
                    (Family::D, _, true) => Some((0, 1)),
                    (Family::D, _, false) => Some((4, 3)),
                    _ => None,
                };
                let got = bl.iter().find(|b| b.nodes.is_empty()).and_then(|b| Some((b.t?, b.s?)));
                if got != want {
                    failures.push(format!("{tag}: trivial block has (t,s) {got:?}, expected {want:?}"));
                }
            }
        }
    }
    Outcome { summary: format!("{count} blocks over B3-9, C2-9, D4-9 and all omega"), failures }
}

// ------------------------------------------------------------------ criterion 4

fn isqrt(x: u64) -> Option<u64> {
    (0..=x).take_while(|y| y * y <= x).find(|y| y * y == x)
}

/// `(t, s)` with `t·s = d`, `|t - s| ≤ 1`, `t ≥ s`.
fn near_factor(d: u64, allow_equal: bool) -> Option<(u64, u64)> {
    if allow_equal {
        if let Some(t) = isqrt(d) {
            return Some((t, t));
        }
    }
    (1..=d).find(|s| s * (s + 1) == d).map(|s| (s + 1, s))
}

/// Expected weighted group read off from `(δ, r)` or the exceptional list.
fn transcribed(a: &AffineType, om: &Omega, b: &BlockDescriptor) -> Result<Option<(FiniteType, Vec<u64>)>, String> {
    let nodes = a.len();
    Ok(match a.ty.family {
        Family::A => {
            let k = om.order;
            (k < nodes).then(|| (ft(Family::A, nodes / k - 1), vec![k as u64; nodes / k]))
        }
        Family::E6 | Family::E7 | Family::E8 | Family::F4 | Family::G2 => {
            if !b.nodes.is_empty() {
                None
            } else if om.is_identity() {
                Some((a.ty, vec![1; nodes]))
            } else if a.ty.family == Family::E6 {
                Some((ft(Family::G2, 2), vec![3, 3, 1]))
            } else {
                Some((ft(Family::F4, 4), vec![2, 2, 2, 1, 1]))
            }
        }
        _ => {
            let (d, r) = (b.delta.ok_or("no δ")?, b.r.ok_or("no r")? as usize);
            if r == 0 {
                None
            } else if d == 0 {
                if om.is_identity() {
                    Some((a.ty, vec![1; nodes]))
                } else {
                    // weight 1 on the end node carrying the double bond
                    let bty = ft(Family::B, r);
                    let dg = affine_diagram(bty);
                    let w = (0..=r)
                        .map(|i| {
                            let end = dg.neighbours(i).len() == 1 && (0..=r).any(|j| dg.bond(i, j) == 4);
                            if end {
                                1
                            } else {
                                2
                            }
                        })
                        .collect();
                    Some((bty, w))
                }
            } else {
                let (t, s) = if om.prime { near_factor(d, true) } else { near_factor(2 * d, false) }
                    .ok_or_else(|| format!("δ={d} has no factorisation"))?;
                let mid = if om.prime { 1 } else { 2 };
                let mut w = vec![mid; r + 1];
                w[0] = t;
                w[r] = s;
                Some((if r == 1 { ft(Family::A, 1) } else { ft(Family::C, r) }, w))
            }
        }
    })
}

/// One swept block with its constructed group.
type Built = (AffineType, Omega, BlockDescriptor, Result<WeightedAffineGroup, WeightedError>);

fn all_affine() -> Vec<AffineType> {
    let mut v: Vec<AffineType> = (1..=7).map(|n| AffineType::new(ft(Family::A, n))).collect();
    v.extend(classical());
    for f in [Family::E6, Family::E7, Family::E8, Family::F4, Family::G2] {
        v.push(AffineType::new(ft(f, f.fixed_rank().unwrap())));
    }
    v
}

/// Every (type, ω, block) of the sweep with its constructed group.
fn constructed() -> Vec<Built> {
    let mut out = Vec::new();
    for a in all_affine() {
        for om in a.omega.clone() {
            for b in blocks::enumerate_blocks(&a, &om).expect("enumeration") {
                let g = weighted::build_weighted_group(&a, &om, &b.nodes);
                out.push((a.clone(), om.clone(), b, g));
            }
        }
    }
    out
}

fn same_group(g: &WeightedAffineGroup, want: &Option<(FiniteType, Vec<u64>)>) -> bool {
    match (&g.recognized, want) {
        (None, None) => true,
        (Some(r), Some((ty, w))) => r.affine == *ty && affine_diagram(*ty).weighted_isomorphism(&r.weights, &affine_diagram(*ty), w).is_some(),
        _ => false,
    }
}

fn criterion_4(all: &[Built]) -> Outcome {
    let mut failures = Vec::new();
    for (a, om, b, g) in all {
        let tag = format!("{} omega {:?} J={}", a.name(), om.perm, b.j_label);
        let want = match transcribed(a, om, b) {
            Ok(w) => w,
            Err(e) => {
                failures.push(format!("{tag}: {e}"));
                continue;
            }
        };
        match g {
            Ok(g) if same_group(g, &want) => {}
            Ok(g) => failures.push(format!("{tag}: built {} expected {want:?}", g.label())),
            Err(e) => failures.push(format!("{tag}: {e}")),
        }
    }
    Outcome { summary: format!("{} blocks (classical, exceptional, A-series)", all.len()), failures }
}

// ------------------------------------------------------------------ criterion 5

struct PrintedTable {
    case: String,
    affine: FiniteType,
    weights: Vec<u64>,
    first: Vec<i64>,
    second: Vec<i64>,
    /// `(column, subgroup type)` of the indicated extra subgroups.
    extra: Vec<(usize, &'static str)>,
}

fn printed_tables() -> Vec<PrintedTable> {
    let c2 = ft(Family::C, 2);
    let c3 = ft(Family::C, 3);
    let mut v = Vec::new();
    for u in 2..=6i64 {
        let uu = u as u64;
        v.push(PrintedTable {
            case: format!("(a) r=2 t=s u={u}"),
            affine: c2,
            weights: vec![uu, 1, uu],
            first: vec![0, 1, u, 2 * u, 2 * u + 2],
            second: vec![0, 1, u, 2 * u - 1, 2 * u + 2],
            extra: vec![(3, "A1xA1")],
        });
        for w in [vec![uu, 1, uu - 1], vec![uu - 1, 1, uu]] {
            v.push(PrintedTable {
                case: format!("(a) r=2 t=s±1 u={u} {w:?}"),
                affine: c2,
                weights: w,
                first: vec![0, 1, u, 2 * u - 1, 2 * u + 2],
                second: vec![0, 1, u, 2 * u - 1, 2 * u + 2],
                extra: vec![],
            });
        }
        for w in [vec![uu, 2, uu - 1], vec![uu - 1, 2, uu]] {
            v.push(PrintedTable {
                case: format!("(b) r=2 u={u} {w:?}"),
                affine: c2,
                weights: w,
                first: vec![0, u, 2, 2 * u - 1, 2 * u + 2],
                second: vec![0, u, 2, 2 * u - 2, 2 * u + 2],
                extra: vec![(3, "A1xA1")],
            });
        }
        for w in [vec![uu, 2, 2, uu - 1], vec![uu - 1, 2, 2, uu]] {
            v.push(PrintedTable {
                case: format!("(b) r=3 u={u} {w:?}"),
                affine: c3,
                weights: w,
                first: vec![0, u, 2, 3 * u - 3, 2 * u - 1, u + 2, 3 * u + 3, 2 * u + 4, 6, 3 * u + 12],
                second: vec![0, u, 2, 3 * u - 6, 2 * u - 2, u + 2, 3 * u + 2, 2 * u + 4, 6, 3 * u + 12],
                extra: vec![(3, "A1xB2"), (4, "A1xB2"), (6, "A1xB2")],
            });
        }
    }
    v.push(PrintedTable {
        case: "(c) G2 (3,3,1)".into(),
        affine: ft(Family::G2, 2),
        weights: vec![3, 3, 1],
        first: vec![0, 1, 3, 4, 9, 12],
        second: vec![0, 1, 3, 3, 7, 12],
        extra: vec![(4, "A2"), (3, "A1xA1")],
    });
    v
}

fn norm_type(s: &str) -> Vec<String> {
    let mut v: Vec<String> = s.split('x').map(String::from).collect();
    v.sort();
    v
}

/// Columns are unlabelled in print, so match printed columns to computed rows
/// as a bipartite matching on (first, second, indicated subgroup).
fn match_columns(cols: &[(i64, i64, Option<&str>)], rows: &[(i64, i64, Vec<Vec<String>>)]) -> bool {
    fn go(i: usize, cols: &[(i64, i64, Option<&str>)], rows: &[(i64, i64, Vec<Vec<String>>)], used: &mut Vec<bool>) -> bool {
        if i == cols.len() {
            return true;
        }
        let (f, s, x) = cols[i];
        for k in 0..rows.len() {
            let (c, sec, ex) = &rows[k];
            let ok = !used[k] && *c == f && *sec == s && x.is_none_or(|t| ex.contains(&norm_type(t)));
            if ok {
                used[k] = true;
                if go(i + 1, cols, rows, used) {
                    return true;
                }
                used[k] = false;
            }
        }
        false
    }
    cols.len() == rows.len() && go(0, cols, rows, &mut vec![false; rows.len()])
}

fn criterion_5() -> Outcome {
    let tables = printed_tables();
    let mut failures = Vec::new();
    for p in &tables {
        let tbl = match weighted::c_function(p.affine, &p.weights) {
            Ok(t) => t,
            Err(e) => {
                failures.push(format!("{}: {e}", p.case));
                continue;
            }
        };
        let cols: Vec<(i64, i64, Option<&str>)> = (0..p.first.len())
            .map(|i| (p.first[i], p.second[i], p.extra.iter().find(|(c, _)| *c == i).map(|(_, t)| *t)))
            .collect();
        let rows: Vec<(i64, i64, Vec<Vec<String>>)> = tbl
            .rows
            .iter()
            .map(|r| (r.c as i64, r.second as i64, r.extra.iter().map(|t| norm_type(t)).collect()))
            .collect();
        if !match_columns(&cols, &rows) {
            let show = |v: Vec<i64>| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(";");
            failures.push(format!(
                "{}: printed {} / {}, computed {} / {}",
                p.case,
                show(p.first.clone()),
                show(p.second.clone()),
                show(rows.iter().map(|r| r.0).collect()),
                show(rows.iter().map(|r| r.1).collect()),
            ));
        }
    }
    Outcome { summary: format!("{} printed two-row tables", tables.len()), failures }
}

// ------------------------------------------------------------------ criterion 6

fn criterion_6(all: &[Built]) -> Outcome {
    let groups: BTreeSet<(FiniteType, Vec<u64>)> = all
        .iter()
        .filter_map(|(_, _, _, g)| g.as_ref().ok()?.recognized.clone())
        .filter(|r| r.affine.rank <= 4)
        .map(|r| (r.affine, r.weights))
        .collect();
    let mut failures = Vec::new();
    for (ty, w) in &groups {
        let tag = format!("~{ty} {w:?}");
        let tbl = match weighted::c_function(*ty, w) {
            Ok(t) => t,
            Err(e) => {
                failures.push(format!("{tag}: {e}"));
                continue;
            }
        };
        let om = match green::omega_prime_matrix(&tbl, Backend::default()) {
            Ok(m) => m,
            Err(e) => {
                failures.push(format!("{tag}: {e}"));
                continue;
            }
        };
        let n = om.len();
        for i in 0..n {
            for j in 0..i {
                if om.entries[i][j] != om.entries[j][i] {
                    failures.push(format!("{tag}: Omega' not symmetric at ({i},{j})"));
                }
            }
        }
        let sols: Vec<_> = [EliminationOrder::RowByRow, EliminationOrder::TrailingUpdate]
            .into_iter()
            .map(|o| green::solve_p_lambda(&om, o))
            .collect();
        for s in &sols {
            match s {
                Ok(s) => {
                    let rep = green::verify_solution(s, &om);
                    if !rep.passes() {
                        failures.push(format!("{tag}: {:?} fails verification {rep:?}", s.order));
                    }
                }
                Err(e) => failures.push(format!("{tag}: {e}")),
            }
        }
        if let [Ok(x), Ok(y)] = &sols[..] {
            if x.p != y.p || x.lambda != y.lambda {
                failures.push(format!("{tag}: elimination orders disagree"));
            }
        }
    }
    Outcome { summary: format!("{} weighted groups of rank <= 4 from the block sweep", groups.len()), failures }
}

// ------------------------------------------------------------------ criterion 7

fn criterion_7() -> Outcome {
    let mut types = Vec::new();
    types.extend((1..=8).map(|n| ft(Family::A, n)));
    types.extend((2..=6).map(|n| ft(Family::B, n)));
    types.extend((4..=6).map(|n| ft(Family::D, n)));
    types.extend([ft(Family::G2, 2), ft(Family::F4, 4)]);
    let mut failures = Vec::new();
    for ty in &types {
        match character_table(*ty) {
            Ok(t) => {
                if let Err(e) = t.check_orthogonality() {
                    failures.push(format!("{ty}: {e}"));
                }
            }
            Err(e) => failures.push(format!("{ty}: {e}")),
        }
    }
    match character_table(ft(Family::D, 4)) {
        Ok(t) => {
            if t.order != 192 {
                failures.push(format!("D4 order {}", t.order));
            }
            if let Err(e) = t.check_against_elements() {
                failures.push(format!("D4 element check: {e}"));
            }
        }
        Err(e) => failures.push(format!("D4: {e}")),
    }
    Outcome { summary: format!("{} tables, both orthogonality relations; D4 against its 192 elements", types.len()), failures }
}

// ------------------------------------------------------------------ criterion 8

fn frobenius_case(ty: FiniteType, nodes: &[usize], chi: usize, psi_pick: usize) -> Result<(), String> {
    let amb = character_table(ty).map_err(|e| e.to_string())?;
    let sub = chars::parabolic(ty, nodes);
    let fusion = chars::fuse(&amb, &sub).map_err(|e| e.to_string())?;
    let irrs = fusion.irreducibles();
    let psi = &irrs[psi_pick % irrs.len()];
    let chi = chi % amb.irr.len();
    let ind = fusion.induce(&amb, psi)[chi];
    // <Res χ, ψ> from element-level tallies
    let tabs: Vec<_> = sub.comps.iter().map(|(t, _)| character_table(*t).unwrap()).collect();
    let tally = chars::fuse_by_elements(&amb, &sub).map_err(|e| e.to_string())?;
    let order: i128 = tabs.iter().map(|t| t.order as i128).product();
    let mut sum: i128 = 0;
    for (idx, hits) in tally.iter().enumerate() {
        let mut rest = idx;
        let mut val: i128 = 1;
        for (k, t) in tabs.iter().enumerate() {
            let c = rest % t.num_classes();
            rest /= t.num_classes();
            val *= t.values[psi[k]][c] as i128;
        }
        for (&a, &cnt) in hits {
            sum += cnt as i128 * amb.values[chi][a] as i128 * val;
        }
    }
    if sum % order != 0 {
        return Err(format!("{ty} {nodes:?}: non-integral restriction multiplicity"));
    }
    let res = sum / order;
    if res != ind as i128 {
        return Err(format!("{ty} {nodes:?} chi {} psi {psi:?}: <Ind,chi> = {ind}, <psi,Res> = {res}", amb.irr[chi]));
    }
    Ok(())
}

fn criterion_8(all: &[Built]) -> Outcome {
    let mut failures = Vec::new();
    // weight scaling
    let mut scaled = 0;
    for ty in [ft(Family::A, 1), ft(Family::A, 2), ft(Family::A, 3), ft(Family::B, 2), ft(Family::B, 3), ft(Family::G2, 2)] {
        let d = ty.diagram();
        for a in 1..=3u64 {
            for b in 1..=3u64 {
                let w: Vec<u64> = (0..ty.rank).map(|i| if i + 1 == ty.rank { b } else { a }).collect();
                if !hecke::is_weight_function(&d, &w) {
                    continue;
                }
                let base = hecke::a_values(&Weighted { ty, w: w.clone() });
                for k in 1..=4u64 {
                    scaled += 1;
                    let kw = Weighted { ty, w: w.iter().map(|x| k * x).collect() };
                    match (&base, hecke::a_values(&kw)) {
                        (Ok(x), Ok(y)) if x.iter().map(|v| k * v).eq(y.iter().copied()) => {}
                        (x, y) => failures.push(format!("scaling {ty} {w:?} k={k}: {:?} vs {:?}", x.as_ref().ok(), y.ok())),
                    }
                }
            }
        }
    }
    // bond orders recomputed from longest lengths
    let mut bonds = 0;
    for (a, om, b, g) in all {
        let Ok(g) = g else { continue };
        if g.generators.len() < 2 {
            continue;
        }
        let rest: Vec<usize> = (0..a.len()).filter(|x| !b.nodes.contains(x)).collect();
        let gens = perm_orbits(&om.perm, &rest);
        let len = |extra: &[&[usize]]| {
            let mut v = b.nodes.clone();
            extra.iter().for_each(|e| v.extend_from_slice(e));
            v.sort_unstable();
            a.diagram.longest_length(&v)
        };
        let l0 = len(&[]).unwrap() as i64;
        for p in 0..gens.len() {
            for q in p + 1..gens.len() {
                bonds += 1;
                let want = match len(&[&gens[p], &gens[q]]) {
                    None => 0,
                    Some(l3) => {
                        let num = 2 * (l3 as i64 - l0);
                        let den = len(&[&gens[p]]).unwrap() as i64 + len(&[&gens[q]]).unwrap() as i64 - 2 * l0;
                        if den == 0 || num % den != 0 || ![2, 3, 4, 6].contains(&(num / den)) {
                            failures.push(format!("{} J={}: bond {num}/{den} not an integer in {{2,3,4,6}}", a.name(), b.j_label));
                            continue;
                        }
                        (num / den) as u32
                    }
                };
                if g.coxeter[p][q] != want {
                    failures.push(format!("{} J={}: bond ({p},{q}) {} vs {want}", a.name(), b.j_label, g.coxeter[p][q]));
                }
            }
        }
    }
    // ν on affine A1
    for t in 1..=5u64 {
        for s in 1..=5u64 {
            let got = WeightedAffineGroup::standard(ft(Family::A, 1), &[t, s]).and_then(|g| weighted::nu(&g));
            if got.as_ref().ok() != Some(&t.max(s)) {
                failures.push(format!("nu(~A1,({t},{s})) = {got:?}"));
            }
        }
    }
    // Frobenius reciprocity on random parabolic pairs
    let types = [ft(Family::A, 3), ft(Family::A, 4), ft(Family::B, 3), ft(Family::B, 4), ft(Family::D, 4), ft(Family::G2, 2), ft(Family::F4, 4)];
    let mut runner = TestRunner::new_with_rng(Config { cases: 100, failure_persistence: None, ..Config::default() }, TestRng::deterministic_rng(RngAlgorithm::ChaCha));
    let ran = std::cell::Cell::new(0);
    let res = runner.run(&(0..types.len(), 0u32..1 << 16, 0usize..64, 0usize..4096), |(ti, mask, chi, psi)| {
        let ty = types[ti];
        let full = (1u32 << ty.rank) - 1;
        let m = 1 + mask % (full - 1);
        let nodes: Vec<usize> = (0..ty.rank).filter(|i| m & (1 << i) != 0).collect();
        ran.set(ran.get() + 1);
        frobenius_case(ty, &nodes, chi, psi).map_err(proptest::test_runner::TestCaseError::fail)
    });
    if let Err(e) = res {
        failures.push(format!("Frobenius: {e}"));
    }
    Outcome {
        summary: format!(
            "{scaled} scaled weightings, {bonds} bonds, 25 nu values, {} Frobenius pairs",
            ran.get()
        ),
        failures,
    }
}

// ------------------------------------------------------------------ criterion 9

fn criterion_9() -> Outcome {
    let mut failures = Vec::new();
    let mut n = 0;
    for ty in [ft(Family::A, 3), ft(Family::B, 3), ft(Family::C, 3), ft(Family::D, 4), ft(Family::G2, 2), ft(Family::F4, 4)] {
        let a = AffineType::new(ty);
        match report::springer_report(&a) {
            Ok(out) => {
                n += out.rows.len();
                if out.json["status"] != blocks::GEOMETRY_STATUS || out.rows.is_empty() {
                    failures.push(format!("{}: W-side output not labelled as unverified", a.name()));
                }
            }
            Err(e) => failures.push(format!("{}: {e}", a.name())),
        }
    }
    Outcome {
        summary: format!("W-side only: {n} Springer-indexed characters with b-values, each labelled '{}'; geometric statements not tested", blocks::GEOMETRY_STATUS),
        failures,
    }
}

// ------------------------------------------------------------------ driver

/// A criterion with a documented disagreement, and the shape every one of its
/// failures must have.
struct KnownRed {
    criterion: usize,
    why: &'static str,
    allowed: fn(&str) -> bool,
}

const KNOWN_RED: &[KnownRed] = &[
    KnownRed {
        criterion: 1,
        why: "printed G2 list gives 2a-2m, 2b-2m for the two non-trivial 1-dimensional characters (3a-2m, 3b-2m from the degrees)",
        allowed: |f| f.starts_with("G2 phi1,3"),
    },
    KnownRed {
        criterion: 5,
        why: "(b) r=2 prints 2u+2 for the sign column where a = 2u+4; (b) r=3 entries assume min(2a,b) = 2a, true only for u >= 5",
        allowed: |f| f.starts_with("(b) r=2 ") || ["(b) r=3 u=2 ", "(b) r=3 u=3 ", "(b) r=3 u=4 "].iter().any(|p| f.starts_with(p)),
    },
    KnownRed {
        criterion: 6,
        why: "no a-invariant route for F4 with weights (2,2,1,1) unless BLOCKWEYL_DATA supplies one",
        allowed: |f| f.starts_with("~F4 [2, 2, 2, 1, 1]"),
    },
];

fn main() -> ExitCode {
    let all = constructed();
    let names = [
        "a-invariant closed-form lists",
        "sharp list",
        "block enumeration and bijections",
        "weighted group construction",
        "c-function tables",
        "Omega' factorization",
        "character tables",
        "property suite",
        "geometric statements excluded",
    ];
    let runs: Vec<Box<dyn Fn() -> Outcome + '_>> = vec![
        Box::new(criterion_1),
        Box::new(criterion_2),
        Box::new(criterion_3),
        Box::new(|| criterion_4(&all)),
        Box::new(criterion_5),
        Box::new(|| criterion_6(&all)),
        Box::new(criterion_7),
        Box::new(|| criterion_8(&all)),
        Box::new(criterion_9),
    ];
    let mut unexpected = 0;
    let mut tally: HashMap<&str, usize> = HashMap::new();
    for (i, run) in runs.iter().enumerate() {
        let k = i + 1;
        let start = std::time::Instant::now();
        let out = run();
        let secs = start.elapsed().as_secs_f64();
        let known = KNOWN_RED.iter().find(|r| r.criterion == k);
        let status = if out.failures.is_empty() { "PASS" } else { "FAIL" };
        *tally.entry(status).or_default() += 1;
        println!("criterion {k} [{}] {status}: {} ({:.1}s)", names[i], out.summary, secs);
        if !out.failures.is_empty() {
            let stray: Vec<&String> = out.failures.iter().filter(|f| !known.is_some_and(|r| (r.allowed)(f))).collect();
            if let Some(r) = known {
                println!("    known disagreement: {}", r.why);
            }
            for f in out.failures.iter().take(6) {
                println!("    {f}");
            }
            if out.failures.len() > 6 {
                println!("    ... {} more", out.failures.len() - 6);
            }
            if !stray.is_empty() {
                unexpected += 1;
                println!("    UNEXPECTED: {} failure(s) outside the documented disagreement", stray.len());
                for f in stray.iter().take(6) {
                    println!("      {f}");
                }
            }
        }
    }
    println!(
        "acceptance: {} pass, {} fail, {} unexpected",
        tally.get("PASS").unwrap_or(&0),
        tally.get("FAIL").unwrap_or(&0),
        unexpected
    );
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
