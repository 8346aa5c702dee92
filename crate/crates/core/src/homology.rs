//! Projective resolutions of the vertex simples `D_t`.
//!
//! Modules are right modules; `e_j A` is spanned by paths starting at `j`.
//! A map between free modules is a matrix of algebra elements acting by
//! left multiplication: entry `(i, j)` lies in `e_{v_i} A e_{v_j}` and sends
//! `w` in summand `j` to `entry · w` in summand `i`.
//!
//! The complex for `D_j` is
//! `P_2 → P_1 → P_0 = e_j A`, with `P_1 = ⊕ e_{h(a)} A` over arrows `a` out
//! of `j`, `P_2 = ⊕ e_{h(R)} A` over relations `R` out of `j`, `d_1(f_a) =
//! a f_a`, and `d_2` given by the derivatives `∂_a R`. At vertex `0` with
//! some `α_t > 2` a third term `P_3 = ⊕_{i=1}^{γ} e_{l_i} A` is appended.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::cfrac::hj_expand;
use crate::error::Result;
use crate::grading::Bidegree;
use crate::pathalg::{default_degree, ClassId, Limits, QuotientAutomaton, Schedule};
use crate::quiver::{build_quiver, ArrowId, Quiver, Vertex};
use crate::rank::rank;
use crate::relations::{generate_relations, Relation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Summand {
    pub vertex: Vertex,
    pub shift: Bidegree,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FreeTerm {
    pub summands: Vec<Summand>,
}

impl FreeTerm {
    pub fn rank(&self) -> usize {
        self.summands.len()
    }

    /// Summand count per vertex.
    pub fn multiplicities(&self) -> BTreeMap<Vertex, usize> {
        let mut m = BTreeMap::new();
        for s in &self.summands {
            *m.entry(s.vertex).or_insert(0) += 1;
        }
        m
    }
}

/// `coeff · path`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Term {
    pub coeff: i64,
    pub path: Vec<ArrowId>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MapEntry {
    pub row: usize,
    pub col: usize,
    pub terms: Vec<Term>,
}

/// A map from the summands of `P_k` (columns) to those of `P_{k−1}` (rows).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComplexMap {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<MapEntry>,
}

impl ComplexMap {
    pub fn entry(&self, row: usize, col: usize) -> &[Term] {
        self.entries.iter().find(|e| e.row == row && e.col == col).map_or(&[], |e| e.terms.as_slice())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SimpleModule {
    pub vertex: Vertex,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComplexDescription {
    pub simple: SimpleModule,
    /// `P_0, P_1, …`.
    pub terms: Vec<FreeTerm>,
    /// `maps[k]` is `d_{k+1}: P_{k+1} → P_k`.
    pub maps: Vec<ComplexMap>,
}

impl ComplexDescription {
    pub fn length(&self) -> usize {
        self.terms.len() - 1
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.terms.iter().map(FreeTerm::rank).collect()
    }

    /// Largest total degree of any entry.
    pub fn margin(&self, q: &Quiver) -> u64 {
        self.maps
            .iter()
            .flat_map(|m| &m.entries)
            .flat_map(|e| &e.terms)
            .map(|t| q.path_bidegree(&t.path).total())
            .max()
            .unwrap_or(0)
    }
}

/// `∂_a p`: the rest of `p` if it starts with `a`.
fn derivative(a: ArrowId, p: &[ArrowId]) -> Option<&[ArrowId]> {
    (p[0] == a).then(|| &p[1..])
}

/// `(relation index, sign)` with `sign · (lhs − rhs) = x − y`.
fn locate(rels: &[Relation], x: &[ArrowId], y: &[ArrowId]) -> (usize, i64) {
    rels.iter()
        .enumerate()
        .find_map(|(i, r)| {
            if r.lhs.arrows == x && r.rhs.arrows == y {
                Some((i, 1))
            } else if r.lhs.arrows == y && r.rhs.arrows == x {
                Some((i, -1))
            } else {
                None
            }
        })
        .expect("vertex-0 relation present")
}

pub fn resolution_of_simple(q: &Quiver, rels: &[Relation], t: Vertex) -> ComplexDescription {
    assert!(t <= q.n(), "vertex out of range");
    let p0 = FreeTerm { summands: vec![Summand { vertex: t, shift: Bidegree::ONE }] };
    let out: Vec<ArrowId> = q.out_arrows(t).to_vec();
    let p1 = FreeTerm {
        summands: out.iter().map(|&a| Summand { vertex: q.arrow(a).head, shift: q.arrow(a).bidegree }).collect(),
    };
    let d1 = ComplexMap {
        rows: 1,
        cols: out.len(),
        entries: out
            .iter()
            .enumerate()
            .map(|(col, &a)| MapEntry { row: 0, col, terms: vec![Term { coeff: 1, path: vec![a] }] })
            .collect(),
    };
    let at_t: Vec<usize> = (0..rels.len()).filter(|&i| rels[i].source() == t).collect();
    let p2 = FreeTerm {
        summands: at_t.iter().map(|&i| Summand { vertex: rels[i].target(), shift: rels[i].bidegree() }).collect(),
    };
    let mut d2 = ComplexMap { rows: out.len(), cols: at_t.len(), entries: Vec::new() };
    for (col, &i) in at_t.iter().enumerate() {
        for (row, &a) in out.iter().enumerate() {
            let mut terms = Vec::new();
            if let Some(w) = derivative(a, &rels[i].lhs.arrows) {
                terms.push(Term { coeff: 1, path: w.to_vec() });
            }
            if let Some(w) = derivative(a, &rels[i].rhs.arrows) {
                terms.push(Term { coeff: -1, path: w.to_vec() });
            }
            if !terms.is_empty() {
                d2.entries.push(MapEntry { row, col, terms });
            }
        }
    }
    let mut terms = vec![p0, p1, p2];
    let mut maps = vec![d1, d2];

    let gamma = q.layout().gamma;
    if t == 0 && gamma > 0 {
        let l = &q.layout().l;
        // R⁰_s = C_{0,l_s} k_s − A_{0,l_{s−1}} k_{s−1}, 1 ≤ s ≤ γ + 1
        let r0: Vec<(usize, i64)> = (1..=gamma + 1)
            .map(|s| {
                let x = [q.clockwise_path(0, l[s]), vec![q.k(s)]].concat();
                let y = [q.anticlockwise_path(0, l[s - 1]), vec![q.k(s - 1)]].concat();
                locate(rels, &x, &y)
            })
            .collect();
        let row_of = |rel: usize| at_t.iter().position(|&i| i == rel).unwrap();
        let mut p3 = Vec::new();
        let mut d3 = ComplexMap { rows: at_t.len(), cols: gamma, entries: Vec::new() };
        for s in 1..=gamma {
            let col = s - 1;
            let an = q.anticlockwise_path(0, l[s]);
            let cl = q.clockwise_path(0, l[s]);
            let (ri, si) = r0[s - 1];
            let (rj, sj) = r0[s];
            let shift = rels[ri].bidegree() * q.path_bidegree(&an);
            debug_assert_eq!(shift, rels[rj].bidegree() * q.path_bidegree(&cl));
            p3.push(Summand { vertex: l[s], shift });
            d3.entries.push(MapEntry { row: row_of(ri), col, terms: vec![Term { coeff: si, path: an }] });
            d3.entries.push(MapEntry { row: row_of(rj), col, terms: vec![Term { coeff: -sj, path: cl }] });
        }
        terms.push(FreeTerm { summands: p3 });
        maps.push(d3);
    }
    ComplexDescription { simple: SimpleModule { vertex: t }, terms, maps }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ExactnessFailure {
    /// `d_k ∘ d_{k+1}` has a nonzero entry.
    NonzeroComposite { k: usize, row: usize, col: usize },
    /// A composite reaches past the degree bound, so it cannot be checked.
    DegreeTooSmall { k: usize, row: usize, col: usize },
    Euler { bidegree: Bidegree, target: Vertex, value: i64 },
    /// Homology of dimension `dim` at `P_term`.
    Homology { bidegree: Bidegree, target: Vertex, term: usize, dim: i64 },
    /// A matrix entry of total degree zero.
    NotMinimal { k: usize, row: usize, col: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExactnessReport {
    pub vertex: Vertex,
    pub degree: u64,
    pub margin: u64,
    /// Bidegrees with `z1 + z2 ≤ degree − margin`.
    pub bidegrees_checked: u64,
    pub passed: bool,
    pub projective_dimension: usize,
    pub failures: Vec<ExactnessFailure>,
}

const MAX_FAILURES: usize = 16;

/// Memoised `class(e · w)` for algebra paths `e` and classes `w`, unrolled
/// along the parent chain of `w`.
#[derive(Default)]
struct LeftMultiplier {
    ids: HashMap<Vec<ArrowId>, usize>,
    memo: HashMap<(usize, ClassId), ClassId>,
}

impl LeftMultiplier {
    fn apply(&mut self, auto: &QuotientAutomaton, from: Vertex, e: &[ArrowId], w: ClassId) -> ClassId {
        let next = self.ids.len();
        let id = *self.ids.entry(e.to_vec()).or_insert(next);
        let mut chain = Vec::new();
        let mut cur = w;
        let mut acc = loop {
            if let Some(&hit) = self.memo.get(&(id, cur)) {
                break hit;
            }
            match auto.info(cur).parent {
                Some((prev, a)) => {
                    chain.push((cur, a));
                    cur = prev;
                }
                None => {
                    let base = auto.class_of(from, e).expect("entry within degree bound");
                    self.memo.insert((id, cur), base);
                    break base;
                }
            }
        };
        for &(c, a) in chain.iter().rev() {
            acc = auto.step(acc, a).expect("image within degree bound");
            self.memo.insert((id, c), acc);
        }
        acc
    }
}

fn compose_check(cx: &ComplexDescription, auto: &QuotientAutomaton, failures: &mut Vec<ExactnessFailure>) {
    for k in 1..cx.maps.len() {
        let (outer, inner) = (&cx.maps[k - 1], &cx.maps[k]);
        for row in 0..outer.rows {
            let v = cx.terms[k - 1].summands[row].vertex;
            for col in 0..inner.cols {
                let mut acc: BTreeMap<ClassId, i64> = BTreeMap::new();
                let mut beyond = false;
                for mid in 0..outer.cols {
                    for e in outer.entry(row, mid) {
                        for f in inner.entry(mid, col) {
                            let path = [e.path.as_slice(), f.path.as_slice()].concat();
                            match auto.class_of(v, &path) {
                                Some(c) => *acc.entry(c).or_insert(0) += e.coeff * f.coeff,
                                None => beyond = true,
                            }
                        }
                    }
                }
                if beyond {
                    failures.push(ExactnessFailure::DegreeTooSmall { k, row, col });
                } else if acc.values().any(|&c| c != 0) {
                    failures.push(ExactnessFailure::NonzeroComposite { k, row, col });
                }
            }
        }
    }
}

/// Checks `d² = 0` symbolically, then exactness bidegree by bidegree for
/// `z1 + z2 ≤ degree − margin`: the cokernel of `d_1` is one-dimensional
/// exactly at `(0,0)` on vertex `t`, interior homology vanishes, and the
/// last map is injective.
pub fn verify_exactness(q: &Quiver, cx: &ComplexDescription, auto: &QuotientAutomaton) -> Result<ExactnessReport> {
    let degree = auto.degree();
    let margin = cx.margin(q);
    let t = cx.simple.vertex;
    let mut failures = Vec::new();
    for (k, m) in cx.maps.iter().enumerate() {
        for e in &m.entries {
            if e.terms.iter().any(|term| q.path_bidegree(&term.path).total() == 0) {
                failures.push(ExactnessFailure::NotMinimal { k: k + 1, row: e.row, col: e.col });
            }
        }
    }
    compose_check(cx, auto, &mut failures);

    let mut left = LeftMultiplier::default();
    let top = cx.length();
    let bound = degree.saturating_sub(margin);
    let mut bidegrees_checked = 0;
    'outer: for total in 0..=bound {
        for z1 in 0..=total {
            if failures.len() >= MAX_FAILURES {
                break 'outer;
            }
            let beta = Bidegree::new(z1, total - z1);
            bidegrees_checked += 1;
            // basis[k][target] = [(summand, class)]
            let mut basis: Vec<BTreeMap<Vertex, Vec<(usize, ClassId)>>> = vec![BTreeMap::new(); cx.terms.len()];
            for (k, term) in cx.terms.iter().enumerate() {
                for (si, s) in term.summands.iter().enumerate() {
                    let Some(rest) = beta.checked_div(s.shift) else { continue };
                    for &c in auto.classes_at(s.vertex, rest) {
                        basis[k].entry(auto.info(c).target).or_default().push((si, c));
                    }
                }
            }
            let targets: std::collections::BTreeSet<Vertex> = basis.iter().flat_map(|b| b.keys().copied()).collect();
            for target in targets {
                let dims: Vec<usize> = basis.iter().map(|b| b.get(&target).map_or(0, Vec::len)).collect();
                let delta = i64::from(beta == Bidegree::ONE && target == t);
                let euler: i64 = dims.iter().enumerate().map(|(k, &d)| if k % 2 == 0 { d as i64 } else { -(d as i64) }).sum();
                if euler != delta {
                    failures.push(ExactnessFailure::Euler { bidegree: beta, target, value: euler });
                    continue;
                }
                let mut ranks = vec![0usize; cx.terms.len() + 1];
                for k in 1..=top {
                    let cols = basis[k].get(&target).map_or(&[][..], Vec::as_slice);
                    let rows = basis[k - 1].get(&target).map_or(&[][..], Vec::as_slice);
                    if cols.is_empty() || rows.is_empty() {
                        continue;
                    }
                    let row_index: HashMap<(usize, ClassId), usize> =
                        rows.iter().enumerate().map(|(i, &key)| (key, i)).collect();
                    let mut mat = vec![vec![0i64; cols.len()]; rows.len()];
                    for (j, &(si, c)) in cols.iter().enumerate() {
                        for e in cx.maps[k - 1].entries.iter().filter(|e| e.col == si) {
                            let v = cx.terms[k - 1].summands[e.row].vertex;
                            for term in &e.terms {
                                let img = left.apply(auto, v, &term.path, c);
                                mat[row_index[&(e.row, img)]][j] += term.coeff;
                            }
                        }
                    }
                    ranks[k] = rank(&mat)?;
                }
                for k in 0..=top {
                    let expected = if k == 0 { delta } else { 0 };
                    let dim = dims[k] as i64 - ranks[k] as i64 - ranks[k + 1] as i64;
                    if dim != expected {
                        failures.push(ExactnessFailure::Homology { bidegree: beta, target, term: k, dim });
                        break;
                    }
                }
            }
        }
    }
    let top_nonzero = cx.terms[top].rank() > 0;
    failures.truncate(MAX_FAILURES);
    Ok(ExactnessReport {
        vertex: t,
        degree,
        margin,
        bidegrees_checked,
        passed: failures.is_empty() && top_nonzero,
        projective_dimension: top,
        failures,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GlobalDimension {
    pub value: usize,
    /// `pd(D_t)` for `t = 0..=n`.
    pub projective_dimensions: Vec<usize>,
    /// Exactness reports, when verification ran.
    pub reports: Vec<ExactnessReport>,
    pub verified: bool,
}

/// Projective dimensions of all vertex simples, verified up to `degree`
/// when given.
pub fn global_dimension_with(r: u64, a: u64, degree: Option<u64>) -> Result<GlobalDimension> {
    let q = build_quiver(&hj_expand(r, a)?)?;
    let rels = generate_relations(&q);
    let complexes: Vec<_> = (0..q.vertex_count()).map(|t| resolution_of_simple(&q, &rels, t)).collect();
    let projective_dimensions: Vec<usize> = complexes.iter().map(ComplexDescription::length).collect();
    let mut reports = Vec::new();
    if let Some(d) = degree {
        let auto = QuotientAutomaton::build(&q, &rels, d, Schedule::Forward, &Limits::default())?;
        for cx in &complexes {
            reports.push(verify_exactness(&q, cx, &auto)?);
        }
    }
    let verified = degree.is_some() && reports.iter().all(|r| r.passed);
    Ok(GlobalDimension {
        value: *projective_dimensions.iter().max().unwrap(),
        projective_dimensions,
        reports,
        verified,
    })
}

/// Verified at the default degree bound `2r + 2`.
pub fn global_dimension(r: u64, a: u64) -> Result<GlobalDimension> {
    global_dimension_with(r, a, Some(default_degree(r)))
}

/// Number of vertex simples `D_0, …, D_n`.
pub fn simple_count(r: u64, a: u64) -> Result<usize> {
    Ok(hj_expand(r, a)?.n() + 1)
}

#[cfg(test)]
#[path = "homology_tests.rs"]
mod tests;
