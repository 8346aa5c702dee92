//! Graded quotient automaton: the classes of paths modulo the relations,
//! built bidegree by bidegree without listing paths.
//!
//! A class at bidegree `β` is a set of congruent paths. Right multiplication
//! by an arrow is well defined on classes, so every path of bidegree `β`
//! is `C·a` for a class `C` of smaller degree. Two such products are
//! congruent exactly when they are joined by a chain of substitutions, and a
//! substitution not touching the last arrow is already absorbed in `C`. The
//! remaining ones replace a relation side ending at the last arrow:
//! `(C·l′)·l_last ~ (C·r′)·r_last` for every class `C` at `β − deg(rel)`.

use std::collections::HashMap;

use serde::Serialize;

use super::{Limits, Schedule};
use crate::error::{Error, Result};
use crate::grading::Bidegree;
use crate::quiver::{ArrowId, Quiver, Vertex};
use crate::relations::Relation;

pub type ClassId = usize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassInfo {
    pub source: Vertex,
    pub target: Vertex,
    pub bidegree: Bidegree,
    /// `None` for the idempotent at `source`; otherwise the class is
    /// `prefix · arrow` for the smallest such node.
    pub parent: Option<(ClassId, ArrowId)>,
}

#[derive(Clone, Debug)]
pub struct QuotientAutomaton {
    degree: u64,
    classes: Vec<ClassInfo>,
    idempotent: Vec<ClassId>,
    next: HashMap<(ClassId, ArrowId), ClassId>,
    /// `cells[source][slot(bidegree)]`: classes from `source`, ascending.
    cells: Vec<Vec<Vec<ClassId>>>,
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

impl QuotientAutomaton {
    /// Classes of all paths with `z1 + z2 ≤ degree` from every source.
    pub fn build(q: &Quiver, rels: &[Relation], degree: u64, schedule: Schedule, limits: &Limits) -> Result<Self> {
        if degree == 0 {
            return Err(Error::ZeroDegree);
        }
        let d = degree as u128;
        let cells = (q.vertex_count() as u128) * (d + 1) * (d + 2) / 2;
        if cells > limits.max_paths as u128 {
            return Err(Error::ResourceCap { limit: limits.max_paths, reached: cells });
        }
        let mut auto = Self {
            degree,
            classes: Vec::new(),
            idempotent: Vec::new(),
            next: HashMap::new(),
            cells: Vec::new(),
        };
        let mut rel_order: Vec<&Relation> = rels.iter().collect();
        if schedule == Schedule::Reverse {
            rel_order.reverse();
        }
        for s in 0..q.vertex_count() {
            auto.build_source(q, &rel_order, s, schedule);
        }
        Ok(auto)
    }

    fn build_source(&mut self, q: &Quiver, rels: &[&Relation], s: Vertex, schedule: Schedule) {
        let idem = self.classes.len();
        self.classes.push(ClassInfo { source: s, target: s, bidegree: Bidegree::ONE, parent: None });
        self.idempotent.push(idem);
        let side = self.degree as usize + 1;
        let mut cells: Vec<Vec<ClassId>> = vec![Vec::new(); side * side];
        cells[0] = vec![idem];

        let mut arrows: Vec<ArrowId> = (0..q.arrows().len()).collect();
        if schedule == Schedule::Reverse {
            arrows.reverse();
        }
        for total in 1..=self.degree {
            for ex in 0..=total {
                let beta = Bidegree::new(ex, total - ex);
                let mut nodes: Vec<(ClassId, ArrowId)> = Vec::new();
                for &a in &arrows {
                    let arrow = q.arrow(a);
                    let Some(prev) = beta.checked_div(arrow.bidegree) else { continue };
                    for &c in &cells[self.slot(prev)] {
                        if self.classes[c].target == arrow.tail {
                            nodes.push((c, a));
                        }
                    }
                }
                if nodes.is_empty() {
                    continue;
                }
                nodes.sort_unstable();
                let slot: HashMap<(ClassId, ArrowId), usize> =
                    nodes.iter().enumerate().map(|(i, &node)| (node, i)).collect();
                let mut parent: Vec<usize> = (0..nodes.len()).collect();
                for rel in rels {
                    let Some(prev) = beta.checked_div(rel.bidegree()) else { continue };
                    for &c in &cells[self.slot(prev)] {
                        if self.classes[c].target != rel.source() {
                            continue;
                        }
                        let node = |side: &[ArrowId]| {
                            let (last, init) = side.split_last().unwrap();
                            let prefix = self.walk(c, init).expect("prefix below the current degree");
                            slot[&(prefix, *last)]
                        };
                        let (x, y) = (node(&rel.lhs.arrows), node(&rel.rhs.arrows));
                        let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
                        if rx != ry {
                            parent[rx.max(ry)] = rx.min(ry);
                        }
                    }
                }
                let mut fresh: HashMap<usize, ClassId> = HashMap::new();
                let mut here = Vec::new();
                for (i, &(c, a)) in nodes.iter().enumerate() {
                    let root = find(&mut parent, i);
                    let id = *fresh.entry(root).or_insert_with(|| {
                        let id = self.classes.len();
                        self.classes.push(ClassInfo {
                            source: s,
                            target: q.arrow(a).head,
                            bidegree: beta,
                            parent: Some((c, a)),
                        });
                        here.push(id);
                        id
                    });
                    self.next.insert((c, a), id);
                }
                let slot = self.slot(beta);
                cells[slot] = here;
            }
        }
        self.cells.push(cells);
    }

    fn slot(&self, b: Bidegree) -> usize {
        b.ex as usize * (self.degree as usize + 1) + b.ey as usize
    }

    pub fn degree(&self) -> u64 {
        self.degree
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn info(&self, c: ClassId) -> &ClassInfo {
        &self.classes[c]
    }

    pub fn idempotent(&self, source: Vertex) -> ClassId {
        self.idempotent[source]
    }

    /// `c · a`, or `None` if beyond the degree bound or not composable.
    pub fn step(&self, c: ClassId, a: ArrowId) -> Option<ClassId> {
        self.next.get(&(c, a)).copied()
    }

    pub fn walk(&self, c: ClassId, arrows: &[ArrowId]) -> Option<ClassId> {
        arrows.iter().try_fold(c, |c, &a| self.step(c, a))
    }

    /// Normal form of a path given by its arrows, starting at `source`.
    pub fn class_of(&self, source: Vertex, arrows: &[ArrowId]) -> Option<ClassId> {
        self.walk(self.idempotent[source], arrows)
    }

    pub fn classes_at(&self, source: Vertex, bidegree: Bidegree) -> &[ClassId] {
        if bidegree.total() > self.degree {
            return &[];
        }
        &self.cells[source][self.slot(bidegree)]
    }

    /// A path in the class; empty for idempotents.
    pub fn representative(&self, mut c: ClassId) -> Vec<ArrowId> {
        let mut rev = Vec::new();
        while let Some((prev, a)) = self.classes[c].parent {
            rev.push(a);
            c = prev;
        }
        rev.reverse();
        rev
    }

    /// Nonidempotent classes in id order.
    pub fn classes(&self) -> impl Iterator<Item = (ClassId, &ClassInfo)> {
        self.classes.iter().enumerate().filter(|(_, info)| info.parent.is_some())
    }
}
