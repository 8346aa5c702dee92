use std::fmt::Write as _;

use reconalg::cfrac::{dual_pair, hj_expand, hj_value, ij_series_of, invariant_generators, riemenschneider_dual};
use reconalg::grading::{check_homogeneity, phi};
use reconalg::homology::{resolution_of_simple, verify_exactness};
use reconalg::moduli::{charts, dual_graph, transition_check};
use reconalg::pathalg::{default_degree, verify_endomorphism_presentation_with, Limits, QuotientAutomaton, Schedule, VerifyOptions};
use reconalg::relations::{generate_relations, relations_to_tex};
use reconalg::{build_quiver, Error, GroupParams, LabelList, Quiver};
use serde::Serialize;

use crate::render;
use crate::{Command, Format, Input};

pub const SCHEMA: &str = "reconalg/1";

pub struct Report {
    pub stdout: String,
    pub passed: bool,
}

pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self { code: 2, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if matches!(e, Error::ResourceCap { .. }) { 3 } else { 2 };
        Self { code, message: e.to_string() }
    }
}

type Outcome = Result<Report, Failure>;

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    schema: &'static str,
    command: &'a str,
    r: u64,
    a: u64,
    labels: &'a LabelList,
    #[serde(flatten)]
    data: T,
}

struct Algebra {
    params: GroupParams,
    labels: LabelList,
}

impl Algebra {
    fn envelope<'a, T: Serialize>(&'a self, command: &'a str, data: T) -> String {
        let env = Envelope { schema: SCHEMA, command, r: self.params.r(), a: self.params.a(), labels: &self.labels, data };
        let mut s = serde_json::to_string_pretty(&env).expect("serialisable report");
        s.push('\n');
        s
    }

    fn quiver(&self) -> Result<Quiver, Failure> {
        Ok(build_quiver(&self.labels)?)
    }
}

fn resolve_input(input: &Input) -> Result<Algebra, Failure> {
    match (input.r, input.a, &input.labels) {
        (Some(r), Some(a), None) => {
            let params = GroupParams::new(r, a)?;
            Ok(Algebra { params, labels: hj_expand(r, a)? })
        }
        (None, None, Some(labels)) => Ok(Algebra { params: hj_value(labels)?, labels: labels.clone() }),
        _ => Err(Failure::usage("give either --r and --a, or --labels")),
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Out {
    Text,
    Json,
    Dot,
    Tex,
}

fn output(format: &Format, allowed: &[Out], command: &str) -> Result<Out, Failure> {
    let out = match (format.json, format.dot, format.tex) {
        (true, _, _) => Out::Json,
        (_, true, _) => Out::Dot,
        (_, _, true) => Out::Tex,
        _ => Out::Text,
    };
    if out == Out::Text || allowed.contains(&out) {
        Ok(out)
    } else {
        Err(Failure::usage(format!("{command} does not support this output format")))
    }
}

fn ok(stdout: String) -> Outcome {
    Ok(Report { stdout, passed: true })
}

pub fn run(cmd: &Command) -> Outcome {
    match cmd {
        Command::Expand { input, format } => expand(input, format),
        Command::Series { input, format } => series(input, format),
        Command::Quiver { input, format } => quiver(input, format),
        Command::Relations { input, format } => relations(input, format),
        Command::Specials { input, format } => specials(input, format),
        Command::Generators { input, format } => generators(input, format),
        Command::Dual { input, format } => dual(input, format),
        Command::VerifyEndo { input, format, degree, engine, max_paths } => {
            verify_endo(input, format, *degree, (*engine).into(), *max_paths)
        }
        Command::Resolve { input, format, vertex, degree } => resolve(input, format, *vertex, *degree),
        Command::Gldim { input, format, degree } => gldim(input, format, *degree),
        Command::Moduli { input, format } => moduli(input, format),
    }
}

fn expand(input: &Input, format: &Format) -> Outcome {
    let alg = resolve_input(input)?;
    match output(format, &[Out::Json], "expand")? {
        Out::Json => ok(alg.envelope("expand", ())),
        _ => ok(format!("{}\n", alg.labels)),
    }
}

fn series(input: &Input, format: &Format) -> Outcome {
    let alg = resolve_input(input)?;
    let s = ij_series_of(&alg.labels)?;
    match output(format, &[Out::Json], "series")? {
        Out::Json => {
            #[derive(Serialize)]
            struct Data<'a> {
                i: &'a [u64],
                j: &'a [u64],
            }
            ok(alg.envelope("series", Data { i: &s.i, j: &s.j }))
        }
        _ => ok(format!("i: {}\nj: {}\n", render::join(&s.i, " "), render::join(&s.j, " "))),
    }
}

fn quiver(input: &Input, format: &Format) -> Outcome {
    let alg = resolve_input(input)?;
    let q = alg.quiver()?;
    match output(format, &[Out::Json, Out::Dot], "quiver")? {
        Out::Json => {
            #[derive(Serialize)]
            struct Data<'a> {
                quiver: &'a Quiver,
            }
            ok(alg.envelope("quiver", Data { quiver: &q }))
        }
        Out::Dot => ok(q.to_dot()),
        _ => ok(render::arrow_table(&q)),
    }
}

fn relations(input: &Input, format: &Format) -> Outcome {
    let alg = resolve_input(input)?;
    let q = alg.quiver()?;
    let rels = generate_relations(&q);
    let homogeneous = check_homogeneity(&q, &rels, &phi(&q, q.series())).passed();
    let stdout = match output(format, &[Out::Json, Out::Tex], "relations")? {
        Out::Json => {
            #[derive(Serialize)]
            struct Rel {
                lhs: Vec<usize>,
                rhs: Vec<usize>,
                lhs_name: String,
                rhs_name: String,
                source: usize,
                target: usize,
                bidegree: (u64, u64),
            }
            #[derive(Serialize)]
            struct Data {
                count: usize,
                homogeneous: bool,
                relations: Vec<Rel>,
            }
            let relations = rels
                .iter()
                .map(|r| Rel {
                    lhs: r.lhs.arrows.clone(),
                    rhs: r.rhs.arrows.clone(),
                    lhs_name: r.lhs.name(&q),
                    rhs_name: r.rhs.name(&q),
                    source: r.source(),
                    target: r.target(),
                    bidegree: (r.bidegree().ex, r.bidegree().ey),
                })
                .collect();
            alg.envelope("relations", Data { count: rels.len(), homogeneous, relations })
        }
        Out::Tex => relations_to_tex(&q, &rels),
        _ => {
            let mut s = String::new();
            for r in &rels {
                writeln!(s, "{} = {}", r.lhs.name(&q), r.rhs.name(&q)).unwrap();
            }
            s
        }
    };
    Ok(Report { stdout, passed: homogeneous })
}

fn specials(input: &Input, format: &Format) -> Outcome {
    let alg = resolve_input(input)?;
    let q = alg.quiver()?;
    let table = phi(&q, q.series());
    match output(format, &[Out::Json, Out::Dot, Out::Tex], "specials")? {
        Out::Json => {
            #[derive(Serialize)]
            struct Special {
                vertex: usize,
                weight: u64,
                generators: Vec<String>,
            }
            #[derive(Serialize)]
            struct Label {
                arrow: String,
                tail: usize,
                head: usize,
                monomial: String,
                exponents: (u64, u64),
            }
            #[derive(Serialize)]
            struct Data {
                specials: Vec<Special>,
                arrows: Vec<Label>,
            }
            let s = q.series();
            let specials = (0..q.vertex_count())
                .map(|p| Special {
                    vertex: p,
                    weight: s.i[p] % s.r(),
                    generators: render::special_generators(&q, p),
                })
                .collect();
            let arrows = q
                .arrows()
                .iter()
                .map(|a| {
                    let m = table.get(a.id);
                    Label { arrow: a.name.clone(), tail: a.tail, head: a.head, monomial: m.to_string(), exponents: (m.ex, m.ey) }
                })
                .collect();
            ok(alg.envelope("specials", Data { specials, arrows }))
        }
        Out::Dot => ok(render::specials_dot(&q, &table)),
        Out::Tex => ok(render::specials_tex(&q, &table)),
        Out::Text => ok(render::specials_text(&q, &table)),
    }
}

fn generators(input: &Input, format: &Format) -> Outcome {
    let alg = resolve_input(input)?;
    let gens = invariant_generators(alg.params.r(), alg.params.a())?;
    match output(format, &[Out::Json], "generators")? {
        Out::Json => {
            #[derive(Serialize)]
            struct Data {
                count: usize,
                generators: Vec<(u64, u64)>,
            }
            ok(alg.envelope("generators", Data { count: gens.len(), generators: gens.iter().map(|m| (m.ex, m.ey)).collect() }))
        }
        _ => ok(gens.iter().map(|m| format!("{m}\n")).collect()),
    }
}

fn dual(input: &Input, format: &Format) -> Outcome {
    let alg = resolve_input(input)?;
    let (r, a) = (alg.params.r(), alg.params.a());
    let (_, b) = dual_pair(r, a)?;
    let reversed = hj_expand(r, b)?;
    let complement = riemenschneider_dual(r, a)?;
    let passed = reversed == alg.labels.reversed() && complement == hj_expand(r, r - a)?;
    let stdout = match output(format, &[Out::Json], "dual")? {
        Out::Json => {
            #[derive(Serialize)]
            struct Data<'a> {
                b: u64,
                reversed_labels: &'a LabelList,
                complement_a: u64,
                complement_labels: &'a LabelList,
                consistent: bool,
            }
            alg.envelope(
                "dual",
                Data { b, reversed_labels: &reversed, complement_a: r - a, complement_labels: &complement, consistent: passed },
            )
        }
        _ => format!("reversed: 1/{r}(1,{b}) {reversed}\ncomplement: {r}/{} = {complement}\n", r - a),
    };
    Ok(Report { stdout, passed })
}

fn verify_endo(input: &Input, format: &Format, degree: Option<u64>, engine: reconalg::pathalg::Engine, max_paths: usize) -> Outcome {
    let alg = resolve_input(input)?;
    let (r, a) = (alg.params.r(), alg.params.a());
    let d = degree.unwrap_or_else(|| default_degree(r));
    let opts = VerifyOptions { engine, schedule: Schedule::Forward, limits: Limits { max_paths } };
    let report = verify_endomorphism_presentation_with(r, a, d, &opts)?;
    let stdout = match output(format, &[Out::Json], "verify-endo")? {
        Out::Json => alg.envelope("verify-endo", &report),
        _ => render::endo_text(&report),
    };
    Ok(Report { stdout, passed: report.passed })
}

fn resolve(input: &Input, format: &Format, vertex: Option<usize>, degree: Option<u64>) -> Outcome {
    let alg = resolve_input(input)?;
    let q = alg.quiver()?;
    if let Some(t) = vertex {
        if t > q.n() {
            return Err(Error::InvalidVertex { vertex: t, n: q.n() }.into());
        }
    }
    let rels = generate_relations(&q);
    let d = degree.unwrap_or_else(|| default_degree(alg.params.r()));
    let auto = QuotientAutomaton::build(&q, &rels, d, Schedule::Forward, &Limits::default())?;
    let vertices: Vec<usize> = match vertex {
        Some(t) => vec![t],
        None => (0..q.vertex_count()).collect(),
    };
    let mut out = Vec::new();
    for &t in &vertices {
        let cx = resolution_of_simple(&q, &rels, t);
        let report = verify_exactness(&q, &cx, &auto)?;
        out.push(render::VertexResolution::new(&q, &cx, report));
    }
    let pd: Vec<usize> = (0..q.vertex_count()).map(|t| resolution_of_simple(&q, &rels, t).length()).collect();
    let gldim = *pd.iter().max().unwrap();
    let passed = out.iter().all(|v| v.exactness.passed);
    let stdout = match output(format, &[Out::Json], "resolve")? {
        Out::Json => {
            #[derive(Serialize)]
            struct Data<'a> {
                degree: u64,
                resolutions: &'a [render::VertexResolution],
                projective_dimensions: &'a [usize],
                global_dimension: usize,
                passed: bool,
            }
            alg.envelope(
                "resolve",
                Data { degree: d, resolutions: &out, projective_dimensions: &pd, global_dimension: gldim, passed },
            )
        }
        _ => render::resolve_text(&alg.params, &alg.labels, d, &out, &pd, gldim),
    };
    Ok(Report { stdout, passed })
}

fn gldim(input: &Input, format: &Format, degree: Option<u64>) -> Outcome {
    let alg = resolve_input(input)?;
    let (r, a) = (alg.params.r(), alg.params.a());
    let d = degree.unwrap_or_else(|| default_degree(r));
    let g = reconalg::homology::global_dimension_with(r, a, Some(d))?;
    let expected = if alg.params.is_special_linear() { 2 } else { 3 };
    let passed = g.verified && g.value == expected;
    let stdout = match output(format, &[Out::Json], "gldim")? {
        Out::Json => {
            #[derive(Serialize)]
            struct Data<'a> {
                degree: u64,
                global_dimension: usize,
                projective_dimensions: &'a [usize],
                verified: bool,
            }
            alg.envelope(
                "gldim",
                Data { degree: d, global_dimension: g.value, projective_dimensions: &g.projective_dimensions, verified: g.verified },
            )
        }
        _ => format!("{}\n", g.value),
    };
    Ok(Report { stdout, passed })
}

fn moduli(input: &Input, format: &Format) -> Outcome {
    let alg = resolve_input(input)?;
    let (r, a) = (alg.params.r(), alg.params.a());
    let cs = charts(r, a)?;
    let transitions = (1..cs.len()).map(|t| transition_check(r, a, t)).collect::<Result<Vec<_>, _>>()?;
    let graph = dual_graph(r, a)?;
    let passed = transitions.iter().all(|t| t.passed)
        && cs.iter().all(|c| c.determinant() == r as i128)
        && graph.to_labels().ok().as_ref() == Some(&alg.labels);
    let stdout = match output(format, &[Out::Json, Out::Dot], "moduli")? {
        Out::Json => {
            #[derive(Serialize)]
            struct ChartOut {
                index: usize,
                coord_c: (i128, i128),
                coord_d: (i128, i128),
                determinant: i128,
            }
            #[derive(Serialize)]
            struct Data<'a> {
                charts: Vec<ChartOut>,
                transitions: &'a [reconalg::moduli::TransitionCheck],
                dual_graph: &'a [i64],
                passed: bool,
            }
            let charts = cs
                .iter()
                .map(|c| ChartOut { index: c.index, coord_c: c.coord_c, coord_d: c.coord_d, determinant: c.determinant() })
                .collect();
            alg.envelope("moduli", Data { charts, transitions: &transitions, dual_graph: &graph.labels, passed })
        }
        Out::Dot => graph.to_dot(),
        _ => render::moduli_text(&alg.params, &cs, &transitions, &graph),
    };
    Ok(Report { stdout, passed })
}
