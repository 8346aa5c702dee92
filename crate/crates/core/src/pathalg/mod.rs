//! The path algebra truncated at a total degree bound `D`, modulo the
//! relations.
//!
//! Every relation is a difference of two paths, so the quotient in each
//! bigraded cell `e_p A e_q` has a basis of congruence classes of paths and
//! its dimension is the number of classes. Nothing is claimed beyond
//! `z1 + z2 ≤ D`.
//!
//! Two engines compute the classes. [`enumerate_paths`] with
//! [`congruence_closure`] lists every path and is exponential in `D`;
//! [`QuotientAutomaton`] builds the classes directly and is what
//! [`graded_dims`] and [`verify_endomorphism_presentation`] use by default.

mod enumerate;
mod quotient;

use std::collections::BTreeMap;

use serde::Serialize;

pub use enumerate::{congruence_closure, count_paths, enumerate_paths, PathBucket, Partition};
pub use quotient::{ClassId, ClassInfo, QuotientAutomaton};

use crate::cfrac::{hj_expand, LabelList};
use crate::error::{Error, Result};
use crate::grading::{hom_indicator, Bidegree};
use crate::quiver::{build_quiver, ArrowId, Quiver, Vertex};
use crate::relations::{generate_relations, Relation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Limits {
    /// Explicit engine: paths per source. Automaton: (source, bidegree) cells.
    pub max_paths: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Self { max_paths: 2_000_000 }
    }
}

/// Processing order for merges. The result never depends on it.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Schedule {
    #[default]
    Forward,
    Reverse,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    #[default]
    Automaton,
    Explicit,
}

pub fn default_degree(r: u64) -> u64 {
    2 * r + 2
}

/// Representative paths of every class, by `(source, target, bidegree)`.
/// Idempotents appear as empty paths at `(p, p, (0,0))`.
pub type ClassTable = BTreeMap<(Vertex, Vertex, Bidegree), Vec<Vec<ArrowId>>>;

pub fn class_table(q: &Quiver, rels: &[Relation], degree: u64, engine: Engine, schedule: Schedule, limits: &Limits) -> Result<ClassTable> {
    let mut table = ClassTable::new();
    for p in 0..q.vertex_count() {
        table.insert((p, p, Bidegree::ONE), vec![Vec::new()]);
    }
    match engine {
        Engine::Automaton => {
            let auto = QuotientAutomaton::build(q, rels, degree, schedule, limits)?;
            for (c, info) in auto.classes() {
                table.entry((info.source, info.target, info.bidegree)).or_default().push(auto.representative(c));
            }
        }
        Engine::Explicit => {
            for p in 0..q.vertex_count() {
                for bucket in enumerate_paths(q, p, degree, limits)? {
                    let part = congruence_closure(&bucket, rels, schedule);
                    for i in part.representatives() {
                        let path = &bucket.paths[i];
                        table.entry((p, path.target, bucket.bidegree)).or_default().push(path.arrows.clone());
                    }
                }
            }
        }
    }
    Ok(table)
}

/// `(source, target, z1, z2) ↦ dim`, for all `z1 + z2 ≤ degree`; absent
/// entries are zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradedDimTable {
    pub degree: u64,
    pub vertex_count: usize,
    #[serde(serialize_with = "serialize_entries")]
    pub entries: BTreeMap<(Vertex, Vertex, Bidegree), u64>,
}

fn serialize_entries<S: serde::Serializer>(
    entries: &BTreeMap<(Vertex, Vertex, Bidegree), u64>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(entries.iter().map(|(&(p, q, b), &dim)| (p, q, b.ex, b.ey, dim)))
}

impl GradedDimTable {
    pub fn from_classes(table: &ClassTable, degree: u64, vertex_count: usize) -> Self {
        let entries = table.iter().map(|(&k, v)| (k, v.len() as u64)).collect();
        Self { degree, vertex_count, entries }
    }

    pub fn get(&self, p: Vertex, q: Vertex, z1: u64, z2: u64) -> u64 {
        self.entries.get(&(p, q, Bidegree::new(z1, z2))).copied().unwrap_or(0)
    }

    /// Entries with `z1 + z2 ≤ degree`.
    pub fn restrict(&self, degree: u64) -> Self {
        let entries = self.entries.iter().filter(|(k, _)| k.2.total() <= degree).map(|(&k, &v)| (k, v)).collect();
        Self { degree, vertex_count: self.vertex_count, entries }
    }
}

pub fn graded_dims(q: &Quiver, rels: &[Relation], degree: u64) -> Result<GradedDimTable> {
    graded_dims_with(q, rels, degree, Engine::Automaton, Schedule::Forward, &Limits::default())
}

pub fn graded_dims_with(
    q: &Quiver,
    rels: &[Relation],
    degree: u64,
    engine: Engine,
    schedule: Schedule,
    limits: &Limits,
) -> Result<GradedDimTable> {
    let table = class_table(q, rels, degree, engine, schedule, limits)?;
    Ok(GradedDimTable::from_classes(&table, degree, q.vertex_count()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EndoFailure {
    /// Two paths in the same cell that the relations do not identify.
    Inequivalent { source: Vertex, target: Vertex, bidegree: Bidegree, first: String, second: String },
    /// A bidegree of the right weight reached by no path.
    Missing { source: Vertex, target: Vertex, bidegree: Bidegree },
    /// A path whose bidegree has the wrong weight.
    WeightMismatch { source: Vertex, target: Vertex, bidegree: Bidegree, path: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CellCount {
    pub source: Vertex,
    pub target: Vertex,
    pub bidegree: Bidegree,
    pub classes: u64,
    pub expected: u8,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EndoReport {
    pub r: u64,
    pub a: u64,
    pub labels: LabelList,
    pub degree: u64,
    pub engine: Engine,
    pub passed: bool,
    pub cells_checked: u64,
    /// Cells where either the class count or the expected dimension is nonzero.
    pub cells: Vec<CellCount>,
    pub failures: Vec<EndoFailure>,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct VerifyOptions {
    pub engine: Engine,
    pub schedule: Schedule,
    pub limits: Limits,
}

/// Every cell `(p, q, z1, z2)` with `z1 + z2 ≤ degree` has exactly as many
/// classes as the Hom indicator predicts.
pub fn verify_endomorphism_presentation(r: u64, a: u64, degree: u64) -> Result<EndoReport> {
    verify_endomorphism_presentation_with(r, a, degree, &VerifyOptions::default())
}

pub fn verify_endomorphism_presentation_with(r: u64, a: u64, degree: u64, opts: &VerifyOptions) -> Result<EndoReport> {
    if degree == 0 {
        return Err(Error::ZeroDegree);
    }
    let labels = hj_expand(r, a)?;
    let q = build_quiver(&labels)?;
    let rels = generate_relations(&q);
    let table = class_table(&q, &rels, degree, opts.engine, opts.schedule, &opts.limits)?;
    let params = q.params();
    let series = q.series();
    let r = params.r();
    let nv = q.vertex_count();
    // i_q mod r is distinct for distinct q, so each (p, β) expects at most one target
    let mut by_residue = std::collections::HashMap::new();
    for t in 0..nv {
        by_residue.insert(series.i[t] % r, t);
    }
    let mut cells = Vec::new();
    let mut failures = Vec::new();
    let key = |p: Vertex, t: Vertex, b: Bidegree| (b.total(), b.ex, p, t);
    let mut expected_cells = BTreeMap::new();
    for total in 0..=degree {
        for z1 in 0..=total {
            let beta = Bidegree::new(z1, total - z1);
            let w = params.weight(beta);
            for p in 0..nv {
                if let Some(&t) = by_residue.get(&((series.i[p] % r + w) % r)) {
                    debug_assert_eq!(hom_indicator(params, series, p, t, beta.ex, beta.ey), 1);
                    expected_cells.insert(key(p, t, beta), (p, t, beta));
                }
            }
        }
    }
    let mut seen = std::collections::BTreeSet::new();
    for (&(p, t, beta), reps) in &table {
        seen.insert(key(p, t, beta));
        let expected = hom_indicator(params, series, p, t, beta.ex, beta.ey);
        cells.push((key(p, t, beta), CellCount { source: p, target: t, bidegree: beta, classes: reps.len() as u64, expected }));
        if expected == 0 {
            failures.push((key(p, t, beta), EndoFailure::WeightMismatch { source: p, target: t, bidegree: beta, path: q.path_name(&reps[0]) }));
        } else if reps.len() > 1 {
            failures.push((
                key(p, t, beta),
                EndoFailure::Inequivalent {
                    source: p,
                    target: t,
                    bidegree: beta,
                    first: q.path_name(&reps[0]),
                    second: q.path_name(&reps[1]),
                },
            ));
        }
    }
    for (k, (p, t, beta)) in expected_cells {
        if !seen.contains(&k) {
            cells.push((k, CellCount { source: p, target: t, bidegree: beta, classes: 0, expected: 1 }));
            failures.push((k, EndoFailure::Missing { source: p, target: t, bidegree: beta }));
        }
    }
    cells.sort_by_key(|c| c.0);
    failures.sort_by_key(|f| f.0);
    let cells: Vec<CellCount> = cells.into_iter().map(|c| c.1).collect();
    let failures: Vec<EndoFailure> = failures.into_iter().map(|f| f.1).collect();
    let d = degree as u128;
    let cells_checked = ((nv * nv) as u128 * (d + 1) * (d + 2) / 2) as u64;
    Ok(EndoReport {
        r,
        a,
        labels,
        degree,
        engine: opts.engine,
        passed: failures.is_empty(),
        cells_checked,
        cells,
        failures,
    })
}
