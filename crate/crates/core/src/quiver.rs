//! The quiver `Q`: the double of the extended Dynkin cycle on vertices
//! `0..=n`, plus `α_t − 2` extra arrows from vertex `t` to vertex `0`.
//!
//! Arrow ids are deterministic: clockwise arrows by ascending tail, then
//! anticlockwise arrows by ascending tail, then extra arrows by ascending
//! `k`-index.
//!
//! The extra arrows sharing a tail are interchangeable as far as the quiver
//! is concerned; their numbering only becomes meaningful through the
//! relations, which chain them in order `k_{v_t}, …, k_{u_t}`. The order
//! used here (consecutive indices per tail, tails ascending) is a repository
//! convention.
//!
//! For `n = 1` the arrows are `a_1, a_2: 0 → 1` and `c_1, c_2, k_1, …: 1 → 0`.
//! They reuse the same [`Arrow`] type: `a_1`/`a_2` are tagged anticlockwise
//! and play the x-like and y-like roles out of vertex 0 respectively, while
//! `c_1, c_2, k_1, …, k_{α−2}` form the `k`-sequence.

use std::fmt::Write as _;

use serde::Serialize;

use crate::cfrac::{hj_expand, hj_value, series_from, GroupParams, IJSeries, LabelList};
use crate::error::Result;
use crate::grading::{self, Bidegree};

pub type ArrowId = usize;
pub type Vertex = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ArrowKind {
    Clockwise,
    Anticlockwise,
    Extra,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(tag = "form", rename_all = "snake_case")]
pub enum ArrowLabel {
    /// `c_{tail,head}`, `n ≥ 2`.
    Cl { tail: Vertex, head: Vertex },
    /// `a_{tail,head}`, `n ≥ 2`.
    An { tail: Vertex, head: Vertex },
    /// `k_index`, `n ≥ 2`, `1 ≤ index ≤ Σ(α−2)`.
    K { index: usize },
    A1,
    A2,
    C1,
    C2,
    /// `k_index` for `n = 1`, `1 ≤ index ≤ α₁ − 2`.
    SmallK { index: usize },
}

impl ArrowLabel {
    pub fn name(&self) -> String {
        match *self {
            ArrowLabel::Cl { tail, head } => format!("c_{{{tail},{head}}}"),
            ArrowLabel::An { tail, head } => format!("a_{{{tail},{head}}}"),
            ArrowLabel::K { index } | ArrowLabel::SmallK { index } => format!("k_{{{index}}}"),
            ArrowLabel::A1 => "a_1".into(),
            ArrowLabel::A2 => "a_2".into(),
            ArrowLabel::C1 => "c_1".into(),
            ArrowLabel::C2 => "c_2".into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Arrow {
    pub id: ArrowId,
    pub name: String,
    pub kind: ArrowKind,
    pub label: ArrowLabel,
    pub tail: Vertex,
    pub head: Vertex,
    /// Position in the `k`-sequence `k_0 = c_{1,0}, k_1, …, k_{γ+1} = a_{n,0}`.
    /// For `n = 1` the sequence is `c_1, c_2, k_1, …`, so `k_t` sits at `t + 1`.
    pub k_index: Option<usize>,
    pub bidegree: Bidegree,
}

/// Index bookkeeping for the `k`-sequence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KLayout {
    pub gamma: usize,
    /// Tail vertex of `k_s`, for `0 ≤ s ≤ γ + 1`.
    pub l: Vec<Vertex>,
    /// `u_i = max{ s : l_s = i }`, indexed by vertex.
    pub u: Vec<Option<usize>>,
    /// `v_i = min{ s : l_s = i }`, indexed by vertex.
    pub v: Vec<Option<usize>>,
    /// `V_i = max{ s : l_s < i }` for `2 ≤ i ≤ n`, `V_1 = 0`; entry 0 unused.
    pub big_v: Vec<usize>,
}

impl KLayout {
    pub fn new(labels: &LabelList) -> Self {
        let n = labels.n();
        let gamma = labels.gamma();
        let mut l = vec![1];
        if n == 1 {
            l.extend(std::iter::repeat(1).take(gamma + 1));
        } else {
            for t in 1..=n {
                l.extend(std::iter::repeat(t).take((labels.alpha(t) - 2) as usize));
            }
            l.push(n);
        }
        let mut u = vec![None; n + 1];
        let mut v = vec![None; n + 1];
        for (s, &t) in l.iter().enumerate() {
            u[t] = Some(s);
            v[t].get_or_insert(s);
        }
        let mut big_v = vec![0; n + 1];
        for (i, slot) in big_v.iter_mut().enumerate().skip(2) {
            *slot = l.iter().rposition(|&t| t < i).unwrap();
        }
        Self { gamma, l, u, v, big_v }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Quiver {
    labels: LabelList,
    params: GroupParams,
    series: IJSeries,
    n: usize,
    arrows: Vec<Arrow>,
    layout: KLayout,
    /// Arrow id of each `k_s`.
    k_seq: Vec<ArrowId>,
    /// The x-like arrow leaving each vertex (`c_{t,t−1}`, `c_{0,n}`; `a_1` at 0 when `n = 1`).
    cw: Vec<ArrowId>,
    /// The y-like cycle arrow leaving each vertex (`a_{t,t+1}`, `a_{n,0}`).
    acw: Vec<ArrowId>,
    #[serde(skip)]
    out: Vec<Vec<ArrowId>>,
}

pub fn build_quiver(labels: &LabelList) -> Result<Quiver> {
    let params = hj_value(labels)?;
    let series = series_from(labels, params.r(), params.a())?;
    assert!(grading::weights_consistent(&series), "a·j_p ≢ i_p for {labels}");
    let n = labels.n();
    let layout = KLayout::new(labels);
    let gamma = layout.gamma;

    let mut raw: Vec<(ArrowKind, ArrowLabel, Vertex, Vertex, Option<usize>)> = Vec::new();
    if n == 1 {
        raw.push((ArrowKind::Clockwise, ArrowLabel::C1, 1, 0, Some(0)));
        raw.push((ArrowKind::Clockwise, ArrowLabel::C2, 1, 0, Some(1)));
        raw.push((ArrowKind::Anticlockwise, ArrowLabel::A1, 0, 1, None));
        raw.push((ArrowKind::Anticlockwise, ArrowLabel::A2, 0, 1, None));
        for index in 1..=gamma {
            raw.push((ArrowKind::Extra, ArrowLabel::SmallK { index }, 1, 0, Some(index + 1)));
        }
    } else {
        for tail in 0..=n {
            let head = if tail == 0 { n } else { tail - 1 };
            let k = (tail == 1).then_some(0);
            raw.push((ArrowKind::Clockwise, ArrowLabel::Cl { tail, head }, tail, head, k));
        }
        for tail in 0..=n {
            let head = if tail == n { 0 } else { tail + 1 };
            let k = (tail == n).then_some(gamma + 1);
            raw.push((ArrowKind::Anticlockwise, ArrowLabel::An { tail, head }, tail, head, k));
        }
        for index in 1..=gamma {
            raw.push((ArrowKind::Extra, ArrowLabel::K { index }, layout.l[index], 0, Some(index)));
        }
    }

    let arrows: Vec<Arrow> = raw
        .into_iter()
        .enumerate()
        .map(|(id, (kind, label, tail, head, k_index))| Arrow {
            id,
            name: label.name(),
            kind,
            label,
            tail,
            head,
            k_index,
            bidegree: Bidegree::ONE,
        })
        .collect();

    let mut k_seq = vec![usize::MAX; gamma + 2];
    for a in &arrows {
        if let Some(s) = a.k_index {
            k_seq[s] = a.id;
        }
    }
    let find = |pred: &dyn Fn(&Arrow) -> bool| arrows.iter().find(|a| pred(a)).unwrap().id;
    let (cw, acw) = if n == 1 {
        (
            vec![find(&|a| a.label == ArrowLabel::A1), k_seq[0]],
            vec![find(&|a| a.label == ArrowLabel::A2), k_seq[gamma + 1]],
        )
    } else {
        (
            (0..=n).map(|t| find(&|a| a.kind == ArrowKind::Clockwise && a.tail == t)).collect(),
            (0..=n).map(|t| find(&|a| a.kind == ArrowKind::Anticlockwise && a.tail == t)).collect(),
        )
    };
    let mut out = vec![Vec::new(); n + 1];
    for a in &arrows {
        out[a.tail].push(a.id);
    }

    let mut q = Quiver { labels: labels.clone(), params, series, n, arrows, layout, k_seq, cw, acw, out };
    let table = grading::phi(&q, &q.series);
    for a in q.arrows.iter_mut() {
        a.bidegree = table.get(a.id);
    }
    Ok(q)
}

impl Quiver {
    pub fn from_group(r: u64, a: u64) -> Result<Self> {
        build_quiver(&hj_expand(r, a)?)
    }

    pub fn labels(&self) -> &LabelList {
        &self.labels
    }

    pub fn params(&self) -> GroupParams {
        self.params
    }

    pub fn series(&self) -> &IJSeries {
        &self.series
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertex_count(&self) -> usize {
        self.n + 1
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, id: ArrowId) -> &Arrow {
        &self.arrows[id]
    }

    pub fn layout(&self) -> &KLayout {
        &self.layout
    }

    /// Arrow id of `k_s`, `0 ≤ s ≤ γ + 1`.
    pub fn k(&self, s: usize) -> ArrowId {
        self.k_seq[s]
    }

    pub fn cw(&self, t: Vertex) -> ArrowId {
        self.cw[t]
    }

    pub fn acw(&self, t: Vertex) -> ArrowId {
        self.acw[t]
    }

    pub fn out_arrows(&self, v: Vertex) -> &[ArrowId] {
        &self.out[v]
    }

    pub fn min_arrow_degree(&self) -> u64 {
        self.arrows.iter().map(|a| a.bidegree.total()).min().unwrap()
    }

    /// `C_{i,j}`: clockwise from `i` to `j`; the full cycle when `i == j`.
    pub fn clockwise_path(&self, i: Vertex, j: Vertex) -> Vec<ArrowId> {
        let mut path = Vec::new();
        let mut v = i;
        loop {
            let a = self.cw[v];
            path.push(a);
            v = self.arrows[a].head;
            if v == j {
                return path;
            }
        }
    }

    /// `A_{i,j}`: anticlockwise from `i` to `j`; the full cycle when `i == j`.
    pub fn anticlockwise_path(&self, i: Vertex, j: Vertex) -> Vec<ArrowId> {
        let mut path = Vec::new();
        let mut v = i;
        loop {
            let a = self.acw[v];
            path.push(a);
            v = self.arrows[a].head;
            if v == j {
                return path;
            }
        }
    }

    pub fn path_bidegree(&self, arrows: &[ArrowId]) -> Bidegree {
        arrows.iter().fold(Bidegree::ONE, |acc, &a| acc * self.arrows[a].bidegree)
    }

    pub fn path_name(&self, arrows: &[ArrowId]) -> String {
        arrows.iter().map(|&a| self.arrows[a].name.as_str()).collect()
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::new();
        writeln!(s, "digraph quiver {{").unwrap();
        writeln!(s, "  label=\"{} {}\";", self.params, self.labels).unwrap();
        for v in 0..=self.n {
            let label = if v == 0 { "⋆".to_string() } else { format!("-{}", self.labels.alpha(v)) };
            writeln!(s, "  v{v} [label=\"{label}\"];").unwrap();
        }
        for a in &self.arrows {
            let style = match a.kind {
                ArrowKind::Clockwise => "solid",
                ArrowKind::Anticlockwise => "dashed",
                ArrowKind::Extra => "dotted",
            };
            writeln!(
                s,
                "  v{} -> v{} [label=\"{} ({},{})\", kind=\"{}\", style={style}];",
                a.tail,
                a.head,
                a.name,
                a.bidegree.ex,
                a.bidegree.ey,
                kind_name(a.kind)
            )
            .unwrap();
        }
        s.push_str("}\n");
        s
    }
}

pub(crate) fn kind_name(kind: ArrowKind) -> &'static str {
    match kind {
        ArrowKind::Clockwise => "clockwise",
        ArrowKind::Anticlockwise => "anticlockwise",
        ArrowKind::Extra => "extra",
    }
}

/// The isomorphism between the algebras of `[α₁,…,αₙ]` and `[αₙ,…,α₁]`.
#[derive(Clone, Debug)]
pub struct ReverseIso {
    pub forward: Quiver,
    pub backward: Quiver,
    /// `map[id]` is the image in `backward` of arrow `id` of `forward`.
    pub map: Vec<ArrowId>,
}

impl ReverseIso {
    pub fn vertex_flip(&self, v: Vertex) -> Vertex {
        if v == 0 {
            0
        } else {
            self.forward.n + 1 - v
        }
    }

    pub fn apply(&self, path: &[ArrowId]) -> Vec<ArrowId> {
        path.iter().map(|&a| self.map[a]).collect()
    }
}

/// Vertices flip by `0 ↦ 0`, `t ↦ n+1−t`; clockwise and anticlockwise
/// arrows swap, and `k_s ↦ k_{γ+1−s}`.
pub fn reverse_iso(labels: &LabelList) -> Result<ReverseIso> {
    let forward = build_quiver(labels)?;
    let backward = build_quiver(&labels.reversed())?;
    let n = forward.n;
    let gamma = forward.layout.gamma;
    let flip = |v: Vertex| if v == 0 { 0 } else { n + 1 - v };
    let find = |label: ArrowLabel| backward.arrows.iter().find(|a| a.label == label).unwrap().id;
    let map = forward
        .arrows
        .iter()
        .map(|a| match a.label {
            ArrowLabel::Cl { tail, head } => find(ArrowLabel::An { tail: flip(tail), head: flip(head) }),
            ArrowLabel::An { tail, head } => find(ArrowLabel::Cl { tail: flip(tail), head: flip(head) }),
            ArrowLabel::A1 => find(ArrowLabel::A2),
            ArrowLabel::A2 => find(ArrowLabel::A1),
            _ => backward.k_seq[gamma + 1 - a.k_index.unwrap()],
        })
        .collect();
    Ok(ReverseIso { forward, backward, map })
}
