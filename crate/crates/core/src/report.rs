//! Command layer shared by the `blockweyl` binary, the golden fixtures and the
//! verification suite: request resolution, report construction, rendering.

use std::fmt::Write as _;

use num_rational::BigRational;
use serde::Serialize;
use serde_json::{json, Value};

use crate::affine::{AffineType, Omega, OmegaSelector};
use crate::blocks::{self, BlockDescriptor, BlockError};
use crate::coxeter::{Descriptor, DescriptorError, FiniteType};
use crate::exec::Backend;
use crate::green::{self, EliminationOrder, GreenError};
use crate::hecke::HeckeError;
use crate::weighted::{self, CFunctionTable, WeightedAffineGroup, WeightedError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Json,
    Csv,
    Pretty,
}

impl std::str::FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "pretty" => Ok(Format::Pretty),
            _ => Err(format!("unknown format `{s}`")),
        }
    }
}

/// Failure classes, mapped to process exit codes 2, 3 and 4.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(String),
    #[error("unsupported computation: {0}")]
    Unsupported(String),
    #[error("invariant failure: {0}")]
    Invariant(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Unsupported(_) => 3,
            CliError::Invariant(_) => 4,
        }
    }
}

impl From<DescriptorError> for CliError {
    fn from(e: DescriptorError) -> Self {
        CliError::Parse(e.to_string())
    }
}

impl From<HeckeError> for CliError {
    fn from(e: HeckeError) -> Self {
        match e {
            HeckeError::NoRoute { .. } => CliError::Unsupported(e.to_string()),
            HeckeError::BadWeights(_) => CliError::Parse(e.to_string()),
            e => CliError::Invariant(e.to_string()),
        }
    }
}

impl From<BlockError> for CliError {
    fn from(e: BlockError) -> Self {
        match e {
            BlockError::UnsupportedRank(_) => CliError::Unsupported(e.to_string()),
            BlockError::Hecke(h) => h.into(),
            e => CliError::Parse(e.to_string()),
        }
    }
}

impl From<WeightedError> for CliError {
    fn from(e: WeightedError) -> Self {
        match e {
            WeightedError::RouteMissing { .. } => CliError::Unsupported(e.to_string()),
            WeightedError::NotABlock(_) | WeightedError::Degenerate => CliError::Parse(e.to_string()),
            WeightedError::Hecke(h) => h.into(),
            WeightedError::Block(b) => b.into(),
            e => CliError::Invariant(e.to_string()),
        }
    }
}

impl From<GreenError> for CliError {
    fn from(e: GreenError) -> Self {
        match e {
            GreenError::Weighted(w) => w.into(),
            e => CliError::Invariant(e.to_string()),
        }
    }
}

/// A rendered report: one JSON value plus flat CSV rows.
#[derive(Clone, Debug, PartialEq)]
pub struct Output {
    pub json: Value,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub title: String,
}

impl Output {
    pub fn render(&self, f: Format) -> String {
        match f {
            Format::Json => serde_json::to_string_pretty(&self.json).unwrap() + "\n",
            Format::Csv => {
                let mut s = self.header.join(",") + "\n";
                for r in &self.rows {
                    let cells: Vec<String> = r.iter().map(|c| if c.contains([',', '"']) { format!("\"{}\"", c.replace('"', "\"\"")) } else { c.clone() }).collect();
                    s += &(cells.join(",") + "\n");
                }
                s
            }
            Format::Pretty => {
                let n = self.header.len();
                let mut width = vec![0; n];
                for r in std::iter::once(&self.header).chain(&self.rows) {
                    for (i, c) in r.iter().enumerate() {
                        width[i] = width[i].max(c.chars().count());
                    }
                }
                let mut s = format!("{}\n", self.title);
                for r in std::iter::once(&self.header).chain(&self.rows) {
                    let cells: Vec<String> = r.iter().enumerate().map(|(i, c)| format!("{c:<w$}", w = width[i])).collect();
                    let _ = writeln!(s, "  {}", cells.join("  ").trim_end());
                }
                s
            }
        }
    }
}

pub fn parse_affine(desc: &str) -> Result<AffineType, CliError> {
    let d = Descriptor::parse(desc)?;
    let ty = d.affine_type().ok_or_else(|| CliError::Parse(format!("`{desc}` is not an affine type")))?;
    Ok(AffineType::new(ty))
}

pub fn parse_omega<'a>(a: &'a AffineType, sel: Option<&str>) -> Result<&'a Omega, CliError> {
    let sel: OmegaSelector = sel.unwrap_or("1").parse().map_err(CliError::Parse)?;
    a.select(&sel).ok_or_else(|| CliError::Parse(format!("no element of Omega for {} matches {sel:?}", a.name())))
}

/// `empty`, or comma separated node ids.
pub fn parse_nodes(s: Option<&str>, n: usize) -> Result<Vec<usize>, CliError> {
    let s = s.unwrap_or("empty").trim();
    if s == "empty" || s.is_empty() || s == "{}" {
        return Ok(Vec::new());
    }
    let mut v = s
        .trim_matches(|c| c == '[' || c == ']' || c == '{' || c == '}')
        .split(',')
        .map(|x| x.trim().parse::<usize>().map_err(|_| CliError::Parse(format!("bad node `{x}`"))))
        .collect::<Result<Vec<_>, _>>()?;
    v.sort_unstable();
    v.dedup();
    if v.iter().any(|&x| x >= n) {
        return Err(CliError::Parse(format!("node out of range in `{s}`")));
    }
    Ok(v)
}

pub fn parse_weights(s: &str) -> Result<Vec<u64>, CliError> {
    s.split(',').map(|x| x.trim().parse::<u64>().map_err(|_| CliError::Parse(format!("bad weight `{x}`")))).collect()
}

fn omega_name(o: &Omega) -> String {
    let p: Vec<String> = o.perm.iter().map(|x| x.to_string()).collect();
    format!("[{}]", p.join(" "))
}

// ---------------------------------------------------------------- blocks

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct BlockRow<'a> {
    omega_perm: &'a [usize],
    #[serde(flatten)]
    block: &'a BlockDescriptor,
    weighted_group: String,
}

/// Blocks for one `ω`, or for every element of `Ω` when `sel` is `None`.
pub fn blocks_report(a: &AffineType, sel: Option<&str>) -> Result<Output, CliError> {
    let omegas: Vec<&Omega> = match sel {
        Some(_) => vec![parse_omega(a, sel)?],
        None => a.omega.iter().collect(),
    };
    let mut json_rows = Vec::new();
    let mut rows = Vec::new();
    for om in omegas {
        for b in blocks::enumerate_blocks(a, om)? {
            let g = weighted::build_weighted_group(a, om, &b.nodes)?;
            let label = g.label();
            json_rows.push(serde_json::to_value(BlockRow { omega_perm: &om.perm, block: &b, weighted_group: label.clone() }).unwrap());
            let opt = |x: Option<u64>| x.map_or("-".to_string(), |v| v.to_string());
            rows.push(vec![
                omega_name(om),
                b.omega.kind.to_string(),
                b.j_label.clone(),
                opt(b.t),
                opt(b.s),
                opt(b.delta),
                opt(b.r),
                b.a_value.to_string(),
                b.levi_label.clone(),
                label,
            ]);
        }
    }
    Ok(Output {
        json: json!({ "type": a.name(), "blocks": json_rows }),
        header: ["omega", "kind", "J", "t", "s", "delta", "r", "a", "levi", "weightedGroup"].map(String::from).to_vec(),
        rows,
        title: format!("blocks of {}", a.name()),
    })
}

// ---------------------------------------------------------------- weighted group

pub fn weighted_report(a: &AffineType, sel: Option<&str>, j: Option<&str>) -> Result<Output, CliError> {
    let om = parse_omega(a, sel)?;
    let j = parse_nodes(j, a.len())?;
    let g = weighted::build_weighted_group(a, om, &j)?;
    let nu = weighted::nu(&g).ok();
    let gens: Vec<String> = g.generators.iter().map(|o| format!("{o:?}")).collect();
    let rows = g
        .generators
        .iter()
        .enumerate()
        .map(|(i, o)| {
            let m: Vec<String> = g.coxeter[i].iter().map(|&x| if x == 0 { "inf".into() } else { x.to_string() }).collect();
            vec![format!("{o:?}"), g.weights[i].to_string(), m.join(" ")]
        })
        .collect();
    Ok(Output {
        json: json!({
            "type": a.name(),
            "omegaPerm": om.perm,
            "J": j,
            "generators": gens,
            "coxeterMatrix": g.coxeter,
            "weights": g.weights,
            "recognized": g.recognized.as_ref().map(|r| json!({"type": r.name(), "weights": r.weights, "perm": r.perm})),
            "label": g.label(),
            "nu": nu,
        }),
        header: ["orbit", "weight", "bonds"].map(String::from).to_vec(),
        rows,
        title: format!("{} omega={} J={:?}: {}{}", a.name(), omega_name(om), j, g.label(), nu.map_or(String::new(), |v| format!(", nu = {v}"))),
    })
}

// ---------------------------------------------------------------- c-table

/// The standard `(type, weights)` a request refers to: explicit weights on the
/// affine type itself, or the weighted group of a block.
pub fn resolve_standard(a: &AffineType, sel: Option<&str>, j: Option<&str>, weights: Option<&str>) -> Result<(FiniteType, Vec<u64>), CliError> {
    if let Some(w) = weights {
        let w = parse_weights(w)?;
        if w.len() != a.len() {
            return Err(CliError::Parse(format!("{} needs {} weights", a.name(), a.len())));
        }
        return Ok((a.ty, w));
    }
    let om = parse_omega(a, sel)?;
    let j = parse_nodes(j, a.len())?;
    let g: WeightedAffineGroup = weighted::build_weighted_group(a, om, &j)?;
    let r = g.recognized.ok_or(WeightedError::Degenerate)?;
    Ok((r.affine, r.weights))
}

pub fn ctable_output(tbl: &CFunctionTable) -> Output {
    let name = format!("~{}", tbl.affine);
    let first: Vec<String> = tbl.rows.iter().map(|r| r.c.to_string()).collect();
    let second: Vec<String> = tbl.rows.iter().map(|r| r.second.to_string()).collect();
    let rows = tbl
        .rows
        .iter()
        .map(|r| vec![r.label.to_string(), r.c.to_string(), r.second.to_string(), r.extra.join(" ")])
        .collect();
    Output {
        json: json!({
            "type": name,
            "weights": tbl.weights,
            "secondNode": tbl.second_node,
            "firstRow": first.join(";"),
            "secondRow": second.join(";"),
            "rows": tbl.rows,
        }),
        header: ["E", "c", "second", "extra"].map(String::from).to_vec(),
        rows,
        title: format!("{name} {:?}\n  {}\n  {}", tbl.weights, first.join(";"), second.join(";")),
    }
}

pub fn ctable_report(a: &AffineType, sel: Option<&str>, j: Option<&str>, weights: Option<&str>) -> Result<Output, CliError> {
    let (ty, w) = resolve_standard(a, sel, j, weights)?;
    Ok(ctable_output(&weighted::c_function(ty, &w)?))
}

// ---------------------------------------------------------------- green

pub fn green_output(tbl: &CFunctionTable, backend: Backend, q: Option<&BigRational>) -> Result<Output, CliError> {
    let om = green::omega_prime_matrix(tbl, backend)?;
    let sol = green::solve_p_lambda(&om, EliminationOrder::RowByRow)?;
    let rep = green::verify_solution(&sol, &om);
    if !rep.passes() {
        return Err(CliError::Invariant(format!("solution check failed: {rep:?}")));
    }
    let labels: Vec<String> = om.labels.iter().map(|l| l.to_string()).collect();
    let n = labels.len();
    let cell = |x: &crate::poly::RatFun| match q {
        Some(q) => x.eval(q).map_or("pole".into(), |v| v.to_string()),
        None => x.to_string(),
    };
    let mut rows = Vec::new();
    for (name, m) in [("P", &sol.p), ("Lambda", &sol.lambda)] {
        for i in 0..n {
            for j in 0..n {
                if !m[i][j].is_zero() {
                    rows.push(vec![name.to_string(), labels[i].clone(), labels[j].clone(), cell(&m[i][j])]);
                }
            }
        }
    }
    Ok(Output {
        json: json!({
            "type": format!("~{}", tbl.affine),
            "weights": tbl.weights,
            "labels": labels,
            "c": om.c,
            "simClass": om.sim,
            "P": green::stringify(&sol.p),
            "Lambda": green::stringify(&sol.lambda),
            "check": rep,
        }),
        header: ["matrix", "row", "col", "value"].map(String::from).to_vec(),
        rows,
        title: format!("~{} {:?}: P and Lambda' (nonzero entries)", tbl.affine, tbl.weights),
    })
}

pub fn green_report(a: &AffineType, sel: Option<&str>, j: Option<&str>, weights: Option<&str>, q: Option<&str>, backend: Backend) -> Result<Output, CliError> {
    let (ty, w) = resolve_standard(a, sel, j, weights)?;
    let q = q.map(|s| s.parse::<BigRational>().map_err(|_| CliError::Parse(format!("bad rational `{s}`")))).transpose()?;
    green_output(&weighted::c_function(ty, &w)?, backend, q.as_ref())
}

// ---------------------------------------------------------------- lists

pub fn sharp_list_report(max_t: u64) -> Output {
    let list = blocks::sharp_list(max_t);
    Output {
        json: json!(list.iter().map(|(n, a)| json!({"name": n, "a": a})).collect::<Vec<_>>()),
        header: vec!["name".into(), "a".into()],
        rows: list.iter().map(|(n, a)| vec![n.clone(), a.to_string()]).collect(),
        title: format!("sharp twisted Weyl groups, index <= {max_t}"),
    }
}

pub fn springer_report(a: &AffineType) -> Result<Output, CliError> {
    let set = blocks::springer_b_values(a)?;
    let labels: Vec<String> = set.iter().map(|(l, _)| l.to_string()).collect();
    let bs: Vec<usize> = set.iter().map(|(_, b)| *b).collect();
    Ok(Output {
        json: json!({
            "type": a.name(),
            "count": labels.len(),
            "labels": labels,
            "b": bs,
            "status": blocks::GEOMETRY_STATUS,
        }),
        header: vec!["E".into(), "b".into()],
        rows: set.iter().map(|(l, b)| vec![l.to_string(), b.to_string()]).collect(),
        title: format!("Springer indexing set of {} ({} characters; {})", a.name(), labels.len(), blocks::GEOMETRY_STATUS),
    })
}
