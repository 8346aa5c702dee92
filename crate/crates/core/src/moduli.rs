//! The chart atlas of the minimal resolution, seen through representations
//! of dimension vector `(1,…,1)`.
//!
//! Chart `W_t` has coordinate monomials `x^{i_t}/y^{j_t}` and
//! `y^{j_{t+1}}/x^{i_{t+1}}`, stored as exponent vectors. A point of `W_t` is
//! a representation in which a spanning tree of gauge arrows is `1`, the
//! two coordinates sit on `c_{t+1,t}` and `a_{t,t+1}`, and every other arrow
//! is forced by the relations.
//!
//! For dimension vector `(1,…,1)` and `θ = (−n,1,…,1)` a subrepresentation
//! destabilises iff it contains vertex `0` but not everything, and the
//! smallest subrepresentation containing vertex `0` is spanned by the
//! vertices reachable from `0` along nonzero arrows. So stability is exactly
//! reachability of every vertex from `0`.

use std::collections::VecDeque;
use std::fmt::Write as _;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::cfrac::{hj_expand, ij_series, LabelList};
use crate::error::{Error, Result};
use crate::quiver::{build_quiver, ArrowId, Quiver};
use crate::relations::{generate_relations, Relation};

/// An exponent pair `(e_x, e_y)` standing for `x^{e_x} y^{e_y}`.
pub type Laurent = (i128, i128);

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Chart {
    pub index: usize,
    pub coord_c: Laurent,
    pub coord_d: Laurent,
}

impl Chart {
    pub fn determinant(&self) -> i128 {
        self.coord_c.0 * self.coord_d.1 - self.coord_c.1 * self.coord_d.0
    }
}

pub fn charts(r: u64, a: u64) -> Result<Vec<Chart>> {
    let s = ij_series(r, a)?;
    let (i, j) = (&s.i, &s.j);
    Ok((0..=s.n())
        .map(|t| Chart {
            index: t,
            coord_c: (i[t] as i128, -(j[t] as i128)),
            coord_d: (-(i[t + 1] as i128), j[t + 1] as i128),
        })
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TransitionCheck {
    pub t: usize,
    pub alpha: u64,
    /// `c_t = d_{t−1}^{−1}`.
    pub inverse_holds: bool,
    /// `d_t = c_{t−1} · d_{t−1}^{α_t}`.
    pub twist_holds: bool,
    pub passed: bool,
}

pub fn transition_check(r: u64, a: u64, t: usize) -> Result<TransitionCheck> {
    let cs = charts(r, a)?;
    let n = cs.len() - 1;
    if t == 0 || t > n {
        return Err(Error::InvalidChart { t, n });
    }
    let alpha = hj_expand(r, a)?.alpha(t);
    let (prev, cur) = (&cs[t - 1], &cs[t]);
    let inverse_holds = cur.coord_c == (-prev.coord_d.0, -prev.coord_d.1);
    let al = alpha as i128;
    let twist_holds = cur.coord_d == (prev.coord_c.0 + al * prev.coord_d.0, prev.coord_c.1 + al * prev.coord_d.1);
    Ok(TransitionCheck { t, alpha, inverse_holds, twist_holds, passed: inverse_holds && twist_holds })
}

/// Arrow id → scalar.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    pub values: Vec<BigRational>,
}

impl Representation {
    pub fn zero(q: &Quiver) -> Self {
        Self { values: vec![BigRational::zero(); q.arrows().len()] }
    }

    fn path_value(&self, path: &[ArrowId]) -> BigRational {
        path.iter().fold(BigRational::one(), |acc, &a| acc * &self.values[a])
    }

    /// Index of the first relation whose two sides differ.
    pub fn first_violation(&self, rels: &[Relation]) -> Option<usize> {
        rels.iter().position(|rel| self.path_value(&rel.lhs.arrows) != self.path_value(&rel.rhs.arrows))
    }

    pub fn satisfies(&self, rels: &[Relation]) -> bool {
        self.first_violation(rels).is_none()
    }

    /// Values as `"p/q"` strings, for reports.
    pub fn to_strings(&self) -> Vec<String> {
        self.values.iter().map(ToString::to_string).collect()
    }
}

/// Gauge arrows of chart `t`: `c_{0,n}, …, c_{t+2,t+1}` (the first only when
/// `t < n`) and `a_{0,1}, …, a_{t−1,t}`.
pub fn gauge_arrows(q: &Quiver, t: usize) -> Vec<ArrowId> {
    let n = q.n();
    let mut g = Vec::new();
    if t < n {
        g.push(q.cw(0));
        g.extend((t + 2..=n).rev().map(|s| q.cw(s)));
    }
    g.extend((0..t).map(|s| q.acw(s)));
    g
}

/// The two coordinate arrows `(c_{t+1,t}, a_{t,t+1})` of chart `t`, with
/// `c_{n+1,n} := c_{0,n}`.
pub fn coordinate_arrows(q: &Quiver, t: usize) -> (ArrowId, ArrowId) {
    (q.cw((t + 1) % (q.n() + 1)), q.acw(t))
}

pub fn chart_representation_on(
    q: &Quiver,
    rels: &[Relation],
    t: usize,
    point: (&BigRational, &BigRational),
) -> Result<Representation> {
    if t > q.n() {
        return Err(Error::InvalidChart { t, n: q.n() });
    }
    let mut known: Vec<Option<BigRational>> = vec![None; q.arrows().len()];
    for a in gauge_arrows(q, t) {
        known[a] = Some(BigRational::one());
    }
    let (ca, aa) = coordinate_arrows(q, t);
    known[ca] = Some(point.0.clone());
    known[aa] = Some(point.1.clone());

    let product = |known: &[Option<BigRational>], path: &[ArrowId]| -> Option<BigRational> {
        path.iter().try_fold(BigRational::one(), |acc, &a| known[a].as_ref().map(|v| acc * v))
    };
    loop {
        let mut progress = false;
        for rel in rels {
            for (full, partial) in [(&rel.lhs.arrows, &rel.rhs.arrows), (&rel.rhs.arrows, &rel.lhs.arrows)] {
                let Some(value) = product(&known, full) else { continue };
                let unknown: Vec<ArrowId> = partial.iter().copied().filter(|&a| known[a].is_none()).collect();
                if unknown.len() != 1 || partial.iter().filter(|&&a| a == unknown[0]).count() != 1 {
                    continue;
                }
                let others: Vec<ArrowId> = partial.iter().copied().filter(|&a| a != unknown[0]).collect();
                let rest = product(&known, &others).unwrap();
                if rest.is_zero() {
                    continue;
                }
                known[unknown[0]] = Some(value / rest);
                progress = true;
            }
        }
        if !progress {
            break;
        }
    }
    let missing = known.iter().filter(|v| v.is_none()).count();
    if missing > 0 {
        return Err(Error::PropagationStalled { chart: t, unknown: missing });
    }
    let rep = Representation { values: known.into_iter().map(Option::unwrap).collect() };
    if let Some(index) = rep.first_violation(rels) {
        let rel = &rels[index];
        return Err(Error::RelationViolated {
            index,
            detail: format!(
                "{} = {} but {} = {}",
                rel.lhs.name(q),
                rep.path_value(&rel.lhs.arrows),
                rel.rhs.name(q),
                rep.path_value(&rel.rhs.arrows)
            ),
        });
    }
    Ok(rep)
}

/// The point `(p, q)` of chart `t` as a representation.
pub fn chart_representation(r: u64, a: u64, t: usize, p: &BigRational, q: &BigRational) -> Result<Representation> {
    let quiver = build_quiver(&hj_expand(r, a)?)?;
    let rels = generate_relations(&quiver);
    chart_representation_on(&quiver, &rels, t, (p, q))
}

/// Every vertex is reachable from `0` along arrows with nonzero scalar.
pub fn stability_check(q: &Quiver, rep: &Representation) -> bool {
    let mut seen = vec![false; q.vertex_count()];
    seen[0] = true;
    let mut queue = VecDeque::from([0]);
    while let Some(v) = queue.pop_front() {
        for &a in q.out_arrows(v) {
            let h = q.arrow(a).head;
            if !seen[h] && !rep.values[a].is_zero() {
                seen[h] = true;
                queue.push_back(h);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OverlapIso {
    pub t: usize,
    pub source_point: (BigRational, BigRational),
    pub target_point: (BigRational, BigRational),
    /// Base change per vertex, `λ_0 = 1`.
    pub lambda: Vec<BigRational>,
}

/// Conjugates the point `(p, q)` of chart `t − 1` to the point
/// `(q^{−1}, p·q^{α_t})` of chart `t`.
pub fn chart_overlap_iso_on(q: &Quiver, rels: &[Relation], t: usize, p: &BigRational, qv: &BigRational) -> Result<OverlapIso> {
    let n = q.n();
    if t == 0 || t > n {
        return Err(Error::InvalidChart { t, n });
    }
    if qv.is_zero() {
        return Err(Error::NotInOverlap { t });
    }
    let alpha = q.labels().alpha(t) as i32;
    let target = (qv.recip(), p * num_traits::pow::Pow::pow(qv, alpha));
    let from = chart_representation_on(q, rels, t - 1, (p, qv))?;
    let to = chart_representation_on(q, rels, t, (&target.0, &target.1))?;

    let mut lambda: Vec<Option<BigRational>> = vec![None; q.vertex_count()];
    lambda[0] = Some(BigRational::one());
    let mut queue = VecDeque::from([0]);
    while let Some(v) = queue.pop_front() {
        for &a in q.out_arrows(v) {
            let h = q.arrow(a).head;
            if lambda[h].is_some() || from.values[a].is_zero() || to.values[a].is_zero() {
                continue;
            }
            lambda[h] = Some(lambda[v].as_ref().unwrap() * &to.values[a] / &from.values[a]);
            queue.push_back(h);
        }
    }
    let unresolved = lambda.iter().filter(|l| l.is_none()).count();
    if unresolved > 0 {
        return Err(Error::PropagationStalled { chart: t, unknown: unresolved });
    }
    let lambda: Vec<BigRational> = lambda.into_iter().map(Option::unwrap).collect();
    for arrow in q.arrows() {
        let conj = &from.values[arrow.id] * &lambda[arrow.head] / &lambda[arrow.tail];
        if conj != to.values[arrow.id] {
            return Err(Error::RelationViolated {
                index: arrow.id,
                detail: format!("{} does not conjugate: {} vs {}", arrow.name, conj, to.values[arrow.id]),
            });
        }
    }
    Ok(OverlapIso { t, source_point: (p.clone(), qv.clone()), target_point: target, lambda })
}

pub fn chart_overlap_iso(r: u64, a: u64, t: usize, p: &BigRational, q: &BigRational) -> Result<OverlapIso> {
    let quiver = build_quiver(&hj_expand(r, a)?)?;
    let rels = generate_relations(&quiver);
    chart_overlap_iso_on(&quiver, &rels, t, p, q)
}

/// The exceptional chain, labelled by self-intersection numbers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualGraph {
    pub labels: Vec<i64>,
}

impl DualGraph {
    pub fn to_labels(&self) -> Result<LabelList> {
        LabelList::new(self.labels.iter().map(|&l| l.unsigned_abs()).collect())
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph dual {\n");
        for (k, l) in self.labels.iter().enumerate() {
            writeln!(s, "  e{} [label=\"{l}\"];", k + 1).unwrap();
        }
        for k in 1..self.labels.len() {
            writeln!(s, "  e{k} -- e{};", k + 1).unwrap();
        }
        s.push_str("}\n");
        s
    }
}

pub fn dual_graph(r: u64, a: u64) -> Result<DualGraph> {
    let labels = hj_expand(r, a)?;
    Ok(DualGraph { labels: labels.as_slice().iter().map(|&l| -(l as i64)).collect() })
}

#[cfg(test)]
#[path = "moduli_tests.rs"]
mod tests;
