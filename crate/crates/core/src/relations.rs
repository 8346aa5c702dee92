//! Defining relations of the reconstruction algebra.
//!
//! Paths compose left to right: `xy` is `x` followed by `y`. Every relation is
//! a binomial `lhs = rhs` between two paths with common endpoints; sides are
//! kept in the order they are conventionally written but compared as
//! unordered pairs.

use std::fmt::Write as _;

use serde::Serialize;

use crate::cfrac::LabelList;
use crate::grading::Bidegree;
use crate::quiver::{ArrowId, Quiver, Vertex};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Path {
    pub arrows: Vec<ArrowId>,
    pub source: Vertex,
    pub target: Vertex,
    pub bidegree: Bidegree,
}

impl Path {
    /// Panics if `arrows` is empty or does not compose.
    pub fn new(q: &Quiver, arrows: Vec<ArrowId>) -> Self {
        assert!(!arrows.is_empty(), "paths of length zero are idempotents, not paths");
        for w in arrows.windows(2) {
            assert_eq!(q.arrow(w[0]).head, q.arrow(w[1]).tail, "arrows do not compose");
        }
        let source = q.arrow(arrows[0]).tail;
        let target = q.arrow(*arrows.last().unwrap()).head;
        let bidegree = q.path_bidegree(&arrows);
        Self { arrows, source, target, bidegree }
    }

    pub fn is_valid(&self, q: &Quiver) -> bool {
        !self.arrows.is_empty()
            && self.arrows.windows(2).all(|w| q.arrow(w[0]).head == q.arrow(w[1]).tail)
            && q.arrow(self.arrows[0]).tail == self.source
            && q.arrow(*self.arrows.last().unwrap()).head == self.target
            && q.path_bidegree(&self.arrows) == self.bidegree
    }

    pub fn name(&self, q: &Quiver) -> String {
        q.path_name(&self.arrows)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Relation {
    pub lhs: Path,
    pub rhs: Path,
}

impl Relation {
    fn new(q: &Quiver, lhs: Vec<ArrowId>, rhs: Vec<ArrowId>) -> Self {
        let rel = Self { lhs: Path::new(q, lhs), rhs: Path::new(q, rhs) };
        debug_assert_eq!((rel.lhs.source, rel.lhs.target), (rel.rhs.source, rel.rhs.target));
        rel
    }

    pub fn source(&self) -> Vertex {
        self.lhs.source
    }

    pub fn target(&self) -> Vertex {
        self.lhs.target
    }

    pub fn bidegree(&self) -> Bidegree {
        self.lhs.bidegree
    }

    /// The two sides as a sorted pair, for orientation-free comparison.
    pub fn unordered(&self) -> (Vec<ArrowId>, Vec<ArrowId>) {
        let (a, b) = (self.lhs.arrows.clone(), self.rhs.arrows.clone());
        if a <= b {
            (a, b)
        } else {
            (b, a)
        }
    }

    pub fn to_tex(&self, q: &Quiver) -> String {
        format!("{}={}", self.lhs.name(q), self.rhs.name(q))
    }
}

fn cat(parts: &[&[ArrowId]]) -> Vec<ArrowId> {
    parts.concat()
}

/// All relations, step by step around the cycle.
pub fn generate_relations(q: &Quiver) -> Vec<Relation> {
    let n = q.n();
    let labels = q.labels();
    let lay = q.layout();
    let mut rels = Vec::new();
    let mut push = |lhs: Vec<ArrowId>, rhs: Vec<ArrowId>| rels.push(Relation::new(q, lhs, rhs));
    let k = |s: usize| q.k(s);

    if n == 1 {
        // k-sequence c_1, c_2, k_1, …; a_1 = cw(0), a_2 = acw(0)
        let (a1, a2) = (q.cw(0), q.acw(0));
        for m in 0..=lay.gamma {
            push(vec![k(m + 1), a1], vec![k(m), a2]);
            push(vec![a1, k(m + 1)], vec![a2, k(m)]);
        }
        return rels;
    }

    let c = |t: Vertex| q.cw(t);
    let a = |t: Vertex| q.acw(t);
    for t in 1..=n {
        let alpha = labels.alpha(t);
        let (u, v) = (lay.u[t], lay.v[t]);
        let cl_0t = q.clockwise_path(0, t);
        let an_0t = q.anticlockwise_path(0, t);
        let big_v = lay.big_v[t];
        let an_0_lv = q.anticlockwise_path(0, lay.l[big_v]);
        if t == 1 {
            if alpha == 2 {
                push(vec![c(1), a(0)], vec![a(1), c(2)]);
            } else {
                let u1 = u.unwrap();
                for s in 0..u1 {
                    push(cat(&[&[k(s)], &an_0t]), cat(&[&[k(s + 1)], &cl_0t]));
                    push(cat(&[&an_0t, &[k(s)]]), cat(&[&cl_0t, &[k(s + 1)]]));
                }
                push(vec![k(u1), a(0)], vec![a(1), c(2)]);
            }
        } else if t < n {
            if alpha == 2 {
                push(vec![c(t), a(t - 1)], vec![a(t), c(t + 1)]);
            } else {
                let (u, v) = (u.unwrap(), v.unwrap());
                push(vec![c(t), a(t - 1)], cat(&[&[k(v)], &cl_0t]));
                push(cat(&[&cl_0t, &[k(v)]]), cat(&[&an_0_lv, &[k(big_v)]]));
                for s in v..u {
                    push(cat(&[&[k(s)], &an_0t]), cat(&[&[k(s + 1)], &cl_0t]));
                    push(cat(&[&an_0t, &[k(s)]]), cat(&[&cl_0t, &[k(s + 1)]]));
                }
                push(cat(&[&[k(u)], &an_0t]), vec![a(t), c(t + 1)]);
            }
        } else if alpha == 2 {
            push(vec![c(n), a(n - 1)], vec![a(n), c(0)]);
            push(vec![c(0), a(n)], cat(&[&an_0_lv, &[k(big_v)]]));
        } else {
            let (u, v) = (u.unwrap(), v.unwrap());
            push(vec![c(n), a(n - 1)], vec![k(v), c(0)]);
            push(vec![c(0), k(v)], cat(&[&an_0_lv, &[k(big_v)]]));
            for s in v..u {
                push(cat(&[&[k(s)], &an_0t]), vec![k(s + 1), c(0)]);
                push(cat(&[&an_0t, &[k(s)]]), vec![c(0), k(s + 1)]);
            }
        }
    }
    rels
}

/// Closed form for the number of relations.
pub fn relation_count(labels: &LabelList) -> usize {
    let alphas = labels.as_slice();
    let n = alphas.len();
    let last = alphas[n - 1] as usize;
    let tail = if last == 2 { 2 } else { 2 * last - 2 };
    alphas[..n - 1]
        .iter()
        .map(|&a| if a == 2 { 1 } else { 2 * a as usize - 3 })
        .sum::<usize>()
        + tail
}

pub fn relations_to_tex(q: &Quiver, rels: &[Relation]) -> String {
    let mut s = String::new();
    writeln!(s, "\\begin{{align*}}").unwrap();
    for (idx, rel) in rels.iter().enumerate() {
        let sep = if idx + 1 == rels.len() { "" } else { "\\\\" };
        writeln!(s, "{} &= {}{sep}", rel.lhs.name(q), rel.rhs.name(q)).unwrap();
    }
    writeln!(s, "\\end{{align*}}").unwrap();
    s
}
