//! Human-readable and DOT/TeX renderings.

use std::fmt::{Display, Write as _};

use reconalg::grading::PhiTable;
use reconalg::homology::{ComplexDescription, ExactnessReport, FreeTerm};
use reconalg::moduli::{Chart, DualGraph, TransitionCheck};
use reconalg::pathalg::{EndoFailure, EndoReport};
use reconalg::quiver::ArrowKind;
use reconalg::{GroupParams, LabelList, Quiver};
use serde::Serialize;

pub fn join<T: Display>(items: &[T], sep: &str) -> String {
    items.iter().map(ToString::to_string).collect::<Vec<_>>().join(sep)
}

pub fn power(var: &str, e: u64) -> String {
    match e {
        0 => "1".into(),
        1 => var.into(),
        e => format!("{var}^{e}"),
    }
}

fn kind(k: ArrowKind) -> &'static str {
    match k {
        ArrowKind::Clockwise => "clockwise",
        ArrowKind::Anticlockwise => "anticlockwise",
        ArrowKind::Extra => "extra",
    }
}

pub fn arrow_table(q: &Quiver) -> String {
    let mut s = format!("{} {}: {} vertices, {} arrows\n", q.params(), q.labels(), q.vertex_count(), q.arrows().len());
    for a in q.arrows() {
        writeln!(
            s,
            "{:>3}  {:<10} {:<13} {} -> {}  ({},{})",
            a.id,
            a.name,
            kind(a.kind),
            a.tail,
            a.head,
            a.bidegree.ex,
            a.bidegree.ey
        )
        .unwrap();
    }
    s
}

/// `1` for the free module at vertex 0, `x^{i_p}, y^{j_p}` otherwise.
pub fn special_generators(q: &Quiver, p: usize) -> Vec<String> {
    let s = q.series();
    if p == 0 {
        vec!["1".into()]
    } else {
        vec![power("x", s.i[p]), power("y", s.j[p])]
    }
}

pub fn specials_text(q: &Quiver, table: &PhiTable) -> String {
    let s = q.series();
    let mut out = format!("{} {}\n", q.params(), q.labels());
    for p in 0..q.vertex_count() {
        writeln!(out, "vertex {p}: S_{}  generated by {}", s.i[p] % s.r(), special_generators(q, p).join(", ")).unwrap();
    }
    for a in q.arrows() {
        writeln!(out, "{:<10} {} -> {}  {}", a.name, a.tail, a.head, table.get(a.id)).unwrap();
    }
    out
}

pub fn specials_dot(q: &Quiver, table: &PhiTable) -> String {
    let s = q.series();
    let mut out = String::from("digraph specials {\n");
    for p in 0..q.vertex_count() {
        writeln!(out, "  v{p} [label=\"S_{}\"];", s.i[p] % s.r()).unwrap();
    }
    for a in q.arrows() {
        writeln!(out, "  v{} -> v{} [label=\"{}\"];", a.tail, a.head, table.get(a.id)).unwrap();
    }
    out.push_str("}\n");
    out
}

fn tex_monomial(m: reconalg::Monomial) -> String {
    let part = |v: &str, e: u64| match e {
        0 => String::new(),
        1 => v.to_string(),
        e => format!("{v}^{{{e}}}"),
    };
    if m.ex == 0 && m.ey == 0 {
        "1".into()
    } else {
        format!("{}{}", part("x", m.ex), part("y", m.ey))
    }
}

pub fn specials_tex(q: &Quiver, table: &PhiTable) -> String {
    let s = q.series();
    let mut out = String::from("\\begin{tabular}{lll}\n");
    for a in q.arrows() {
        writeln!(
            out,
            "${}$ & $S_{{{}}} \\to S_{{{}}}$ & ${}$ \\\\",
            a.name,
            s.i[a.tail] % s.r(),
            s.i[a.head] % s.r(),
            tex_monomial(table.get(a.id))
        )
        .unwrap();
    }
    out.push_str("\\end{tabular}\n");
    out
}

pub fn endo_text(report: &EndoReport) -> String {
    let mut s = format!(
        "{} 1/{}(1,{}) {} D={}: {} cells, {} nonzero, {} failures\n",
        if report.passed { "PASS" } else { "FAIL" },
        report.r,
        report.a,
        report.labels,
        report.degree,
        report.cells_checked,
        report.cells.iter().filter(|c| c.classes > 0).count(),
        report.failures.len()
    );
    for f in report.failures.iter().take(20) {
        let line = match f {
            EndoFailure::Inequivalent { source, target, bidegree, first, second } => {
                format!("  {source}->{target} at ({},{}): {first} and {second} not identified", bidegree.ex, bidegree.ey)
            }
            EndoFailure::Missing { source, target, bidegree } => {
                format!("  {source}->{target} at ({},{}): no path", bidegree.ex, bidegree.ey)
            }
            EndoFailure::WeightMismatch { source, target, bidegree, path } => {
                format!("  {source}->{target} at ({},{}): {path} has the wrong weight", bidegree.ex, bidegree.ey)
            }
        };
        s.push_str(&line);
        s.push('\n');
    }
    s
}

#[derive(Serialize)]
pub struct EntryOut {
    pub row: usize,
    pub col: usize,
    pub element: String,
}

#[derive(Serialize)]
pub struct VertexResolution {
    pub vertex: usize,
    pub ranks: Vec<usize>,
    pub terms: Vec<FreeTerm>,
    /// `maps[k]` is `d_{k+1}`.
    pub maps: Vec<Vec<EntryOut>>,
    pub exactness: ExactnessReport,
}

impl VertexResolution {
    pub fn new(q: &Quiver, cx: &ComplexDescription, exactness: ExactnessReport) -> Self {
        let maps = cx
            .maps
            .iter()
            .map(|m| {
                m.entries
                    .iter()
                    .map(|e| {
                        let mut element = String::new();
                        for (k, t) in e.terms.iter().enumerate() {
                            let sign = if t.coeff < 0 { "-" } else if k > 0 { "+" } else { "" };
                            element.push_str(sign);
                            element.push_str(&q.path_name(&t.path));
                        }
                        EntryOut { row: e.row, col: e.col, element }
                    })
                    .collect()
            })
            .collect();
        Self { vertex: cx.simple.vertex, ranks: cx.ranks(), terms: cx.terms.clone(), maps, exactness }
    }
}

fn term_text(term: &FreeTerm) -> String {
    term.multiplicities()
        .iter()
        .map(|(v, m)| if *m == 1 { format!("e{v}A") } else { format!("(e{v}A)^{m}") })
        .collect::<Vec<_>>()
        .join(" + ")
}

pub fn resolve_text(
    params: &GroupParams,
    labels: &LabelList,
    degree: u64,
    out: &[VertexResolution],
    pd: &[usize],
    gldim: usize,
) -> String {
    let mut s = format!("{params} {labels}, degree bound {degree}\n");
    for v in out {
        let chain: Vec<String> = v.terms.iter().rev().map(term_text).collect();
        let e = &v.exactness;
        writeln!(
            s,
            "D_{}: 0 -> {} -> D_{} -> 0\n  pd {}, {} (margin {}, {} bidegrees)",
            v.vertex,
            chain.join(" -> "),
            v.vertex,
            e.projective_dimension,
            if e.passed { "exact" } else { "NOT exact" },
            e.margin,
            e.bidegrees_checked
        )
        .unwrap();
        for f in e.failures.iter().take(5) {
            writeln!(s, "  {}", serde_json::to_string(f).unwrap()).unwrap();
        }
    }
    writeln!(s, "pd: {}", join(pd, " ")).unwrap();
    writeln!(s, "gldim {gldim}").unwrap();
    s
}

pub fn moduli_text(params: &GroupParams, cs: &[Chart], transitions: &[TransitionCheck], graph: &DualGraph) -> String {
    let mut s = format!("charts of {params}\n");
    for c in cs {
        writeln!(
            s,
            "W_{}  ({},{})  ({},{})  det {}",
            c.index,
            c.coord_c.0,
            c.coord_c.1,
            c.coord_d.0,
            c.coord_d.1,
            c.determinant()
        )
        .unwrap();
    }
    for t in transitions {
        writeln!(
            s,
            "W_{} -> W_{}  (p,q) -> (q^-1, p q^{})  {}",
            t.t - 1,
            t.t,
            t.alpha,
            if t.passed { "ok" } else { "FAILED" }
        )
        .unwrap();
    }
    writeln!(s, "dual graph: {}", join(&graph.labels, " -- ")).unwrap();
    s
}
