//! Explicit engine: list every path up to the degree bound, then merge paths
//! related by one-step substitutions.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use super::{Limits, Schedule};
use crate::error::{Error, Result};
use crate::grading::Bidegree;
use crate::quiver::{ArrowId, Quiver, Vertex};
use crate::relations::{Path, Relation};

/// All paths from one source with one bidegree.
#[derive(Clone, Debug, Serialize)]
pub struct PathBucket {
    pub source: Vertex,
    pub bidegree: Bidegree,
    /// Sorted by target, then by arrow sequence.
    pub paths: Vec<Path>,
    pub classes: Partition,
}

impl PathBucket {
    pub fn targets(&self) -> impl Iterator<Item = Vertex> + '_ {
        let mut last = None;
        self.paths.iter().filter_map(move |p| {
            (last != Some(p.target)).then(|| {
                last = Some(p.target);
                p.target
            })
        })
    }
}

/// `labels[i]` is the smallest index in the class of path `i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Partition {
    pub labels: Vec<usize>,
}

impl Partition {
    pub fn discrete(len: usize) -> Self {
        Self { labels: (0..len).collect() }
    }

    pub fn class_count(&self) -> usize {
        self.labels.iter().enumerate().filter(|&(i, &l)| i == l).count()
    }

    /// Class representatives (smallest members), ascending.
    pub fn representatives(&self) -> Vec<usize> {
        self.labels.iter().enumerate().filter(|&(i, &l)| i == l).map(|(i, _)| i).collect()
    }
}

/// Number of nonempty paths from `source` of total degree at most `degree`.
pub fn count_paths(q: &Quiver, source: Vertex, degree: u64) -> u128 {
    let d = degree as usize;
    let nv = q.vertex_count();
    let mut f = vec![vec![0u128; nv]; d + 1];
    f[0][source] = 1;
    for t in 1..=d {
        for a in q.arrows() {
            let w = a.bidegree.total() as usize;
            if w <= t {
                f[t][a.head] = f[t][a.head].saturating_add(f[t - w][a.tail]);
            }
        }
    }
    f[1..].iter().flatten().fold(0u128, |acc, &x| acc.saturating_add(x))
}

/// Buckets of all nonempty paths from `source` with `z1 + z2 ≤ degree`, by
/// ascending bidegree. Every partition is discrete.
pub fn enumerate_paths(q: &Quiver, source: Vertex, degree: u64, limits: &Limits) -> Result<Vec<PathBucket>> {
    if degree == 0 {
        return Err(Error::ZeroDegree);
    }
    if source > q.n() {
        return Err(Error::InvalidVertex { vertex: source, n: q.n() });
    }
    let projected = count_paths(q, source, degree);
    if projected > limits.max_paths as u128 {
        return Err(Error::ResourceCap { limit: limits.max_paths, reached: projected });
    }
    let mut by_degree: BTreeMap<Bidegree, Vec<Path>> = BTreeMap::new();
    let mut stack: Vec<(Vec<ArrowId>, Vertex, Bidegree)> = vec![(Vec::new(), source, Bidegree::ONE)];
    while let Some((arrows, at, deg)) = stack.pop() {
        for &a in q.out_arrows(at) {
            let arrow = q.arrow(a);
            let next = deg * arrow.bidegree;
            if next.total() > degree {
                continue;
            }
            let mut path = arrows.clone();
            path.push(a);
            by_degree.entry(next).or_default().push(Path {
                arrows: path.clone(),
                source,
                target: arrow.head,
                bidegree: next,
            });
            stack.push((path, arrow.head, next));
        }
    }
    Ok(by_degree
        .into_iter()
        .map(|(bidegree, mut paths)| {
            paths.sort_by(|x, y| (x.target, &x.arrows).cmp(&(y.target, &y.arrows)));
            let classes = Partition::discrete(paths.len());
            PathBucket { source, bidegree, paths, classes }
        })
        .collect())
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        Self((0..n).collect())
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.0[hi] = lo;
        }
    }
}

/// Relation sides keyed by first arrow, each paired with the other side.
fn side_index(rels: &[Relation]) -> HashMap<ArrowId, Vec<(&[ArrowId], &[ArrowId])>> {
    let mut index: HashMap<ArrowId, Vec<(&[ArrowId], &[ArrowId])>> = HashMap::new();
    for rel in rels {
        let (l, r) = (rel.lhs.arrows.as_slice(), rel.rhs.arrows.as_slice());
        index.entry(l[0]).or_default().push((l, r));
        index.entry(r[0]).or_default().push((r, l));
    }
    index
}

/// The coarsest partition of the bucket closed under replacing a relation
/// side occurring as a subpath by the other side.
pub fn congruence_closure(bucket: &PathBucket, rels: &[Relation], schedule: Schedule) -> Partition {
    let paths = &bucket.paths;
    let position: HashMap<&[ArrowId], usize> =
        paths.iter().enumerate().map(|(i, p)| (p.arrows.as_slice(), i)).collect();
    let index = side_index(rels);
    let mut uf = UnionFind::new(paths.len());
    let order: Vec<usize> = match schedule {
        Schedule::Forward => (0..paths.len()).collect(),
        Schedule::Reverse => (0..paths.len()).rev().collect(),
    };
    let mut buf = Vec::new();
    for i in order {
        let arrows = &paths[i].arrows;
        for at in 0..arrows.len() {
            let Some(sides) = index.get(&arrows[at]) else { continue };
            for &(from, to) in sides {
                if !arrows[at..].starts_with(from) {
                    continue;
                }
                buf.clear();
                buf.extend_from_slice(&arrows[..at]);
                buf.extend_from_slice(to);
                buf.extend_from_slice(&arrows[at + from.len()..]);
                let j = *position.get(buf.as_slice()).expect("substitution leaves the bucket");
                debug_assert_eq!(paths[i].target, paths[j].target);
                uf.union(i, j);
            }
        }
    }
    Partition { labels: (0..paths.len()).map(|i| uf.find(i)).collect() }
}
