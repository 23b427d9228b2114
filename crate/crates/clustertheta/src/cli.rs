//! Job specifications and their execution, shared by the binary and tests.
//!
//! A job names a command, carries its inputs as JSON and picks an output
//! format. Inputs are checked strictly: unknown fields are rejected.

use std::fmt::Write;

use clap::ValueEnum;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::brokenlines::{theta_function, theta_via_path, BrokenLine, ThetaResult};
use crate::cluster::Seed;
use crate::emit::{emit_dot, emit_svg, emit_tikz, exchange_graph_dot, node_name};
use crate::error::{Error, Result};
use crate::hall::{hall_theta_chi, hn_phases, HallLine};
use crate::lattice::{LatticeVec, SkewForm};
use crate::laurent::LaurentPoly;
use crate::quiver::grass::{caldero_chapoton, counting_polynomial};
use crate::quiver::rep::standard_indecomposable;
use crate::quiver::{Component, Quiver, Translate};
use crate::scattering::plane::Point;
use crate::scattering::{
    cluster_complex, cluster_complex_diagram, loop_defect, rank2_diagram, ScatteringDiagram,
    Support,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Mutate,
    Scatter,
    Theta,
    Cc,
    Grass,
    Strata,
    Ar,
    Check,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Text,
    Json,
    Svg,
    Dot,
    Tikz,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobSpec {
    pub command: Command,
    #[serde(default)]
    pub inputs: Value,
    #[serde(default)]
    pub format: Format,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<u32>,
}

impl JobSpec {
    pub fn new(command: Command, inputs: Value, format: Format, order: Option<u32>) -> Self {
        JobSpec {
            command,
            inputs,
            format,
            order,
        }
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Invalid(format!("job: {e}")))
    }
}

fn inputs<T: for<'de> Deserialize<'de>>(job: &JobSpec) -> Result<T> {
    let v = if job.inputs.is_null() {
        Value::Object(Default::default())
    } else {
        job.inputs.clone()
    };
    serde_json::from_value(v).map_err(|e| Error::Invalid(format!("{:?} inputs: {e}", job.command)))
}

fn order(job: &JobSpec) -> Result<u32> {
    match job.order {
        Some(k) if k >= 1 => Ok(k),
        Some(_) => Err(Error::Invalid("order must be at least 1".into())),
        None => Err(Error::Invalid(format!("{:?} needs an order", job.command))),
    }
}

fn unsupported_format(job: &JobSpec) -> Error {
    Error::Unsupported(format!("format {:?} for {:?}", job.format, job.command))
}

fn to_json<T: Serialize>(x: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(x).map_err(|e| Error::Invalid(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

/// Selects a skew form by `b` (rank 2), a named quiver, or an explicit matrix.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FormIn {
    b: Option<i64>,
    quiver: Option<String>,
    eps: Option<Vec<Vec<i64>>>,
}

impl FormIn {
    fn form(&self) -> Result<SkewForm> {
        match (self.b, &self.quiver, &self.eps) {
            (Some(b), None, None) => Ok(SkewForm::rank2(b)),
            (None, Some(q), None) => Ok(Quiver::named(q)?.skew_form()),
            (None, None, Some(e)) => SkewForm::new(e.clone()),
            _ => Err(Error::Invalid("give exactly one of b, quiver, eps".into())),
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct MutateIn {
    #[serde(flatten)]
    form: FormIn,
    #[serde(default)]
    word: Vec<usize>,
    #[serde(default = "default_depth")]
    depth: usize,
}

fn default_depth() -> usize {
    4
}

#[derive(Serialize)]
struct MutateOut {
    word: Vec<usize>,
    variables: Vec<String>,
    g_vectors: Vec<LatticeVec>,
    c_vectors: Vec<LatticeVec>,
}

fn mutate(job: &JobSpec) -> Result<String> {
    let inp: MutateIn = inputs(job)?;
    let form = inp.form.form()?;
    if job.format == Format::Dot {
        return exchange_graph_dot(&cluster_complex(&form, inp.depth)?);
    }
    let seed = Seed::initial(form).mutate_word(&inp.word)?;
    let out = MutateOut {
        word: inp.word.clone(),
        variables: seed
            .variables()
            .iter()
            .map(LaurentPoly::to_canonical)
            .collect(),
        g_vectors: seed.g_vectors()?,
        c_vectors: seed.c_vectors(),
    };
    match job.format {
        Format::Json => to_json(&out),
        Format::Text => {
            let mut s = String::new();
            let w: Vec<String> = out.word.iter().map(ToString::to_string).collect();
            writeln!(
                s,
                "word: {}",
                if w.is_empty() {
                    "(empty)".into()
                } else {
                    w.join(",")
                }
            )
            .unwrap();
            for (i, v) in out.variables.iter().enumerate() {
                writeln!(s, "x{} = {v}", i + 1).unwrap();
                writeln!(s, "  g = {}  c = {}", out.g_vectors[i], out.c_vectors[i]).unwrap();
            }
            Ok(s)
        }
        _ => Err(unsupported_format(job)),
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ScatterIn {
    #[serde(flatten)]
    form: FormIn,
    /// For rank above two: mutation depth of the cluster-complex walls.
    depth: Option<usize>,
}

fn diagram_for(form: &SkewForm, k: u32, depth: Option<usize>) -> Result<ScatteringDiagram> {
    if form.rank() == 2 && depth.is_none() {
        rank2_diagram(form.entry(0, 1), k)
    } else {
        cluster_complex_diagram(form, depth.unwrap_or(default_depth()))
    }
}

fn describe_diagram(d: &ScatteringDiagram) -> Result<String> {
    let mut s = String::new();
    writeln!(s, "order {}, {} walls", d.order, d.walls.len()).unwrap();
    for w in &d.walls {
        let support = match &w.support {
            Support::Line => "line".to_string(),
            Support::Ray(r) => format!("ray {r}"),
            Support::Cone(g) => format!(
                "cone {}",
                g.iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join(" ")
            ),
        };
        writeln!(s, "normal {}  {support}", w.normal).unwrap();
        writeln!(s, "  f = {}", w.func.poly().to_canonical()).unwrap();
        let factors: Vec<String> = w
            .factors(&d.form)?
            .iter()
            .map(|(j, c)| format!("(1+x^{j})^{c}"))
            .collect();
        writeln!(s, "  = {}", factors.join(" ")).unwrap();
    }
    Ok(s)
}

fn scatter(job: &JobSpec) -> Result<String> {
    let inp: ScatterIn = inputs(job)?;
    let form = inp.form.form()?;
    let d = diagram_for(&form, order(job)?, inp.depth)?;
    match job.format {
        Format::Text => describe_diagram(&d),
        Format::Json => to_json(&d),
        Format::Svg => emit_svg(&d, &[]),
        Format::Tikz => emit_tikz(&d, &[]),
        Format::Dot => Err(unsupported_format(job)),
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ThetaIn {
    #[serde(flatten)]
    form: FormIn,
    m: LatticeVec,
    endpoint: Point,
    #[serde(default)]
    via_path: bool,
}

fn describe_line(s: &mut String, i: usize, l: &BrokenLine) {
    write!(s, "line {}:", i + 1).unwrap();
    for seg in &l.segments {
        if let (Some(p), Some(w)) = (&seg.start, seg.bend_wall) {
            write!(s, " | bend at {p} (wall {w}) ->").unwrap();
        }
        write!(
            s,
            " {}",
            LaurentPoly::monomial(seg.coeff.clone(), seg.exponent.clone()).to_canonical()
        )
        .unwrap();
    }
    s.push('\n');
}

fn theta(job: &JobSpec) -> Result<String> {
    let inp: ThetaIn = inputs(job)?;
    let form = inp.form.form()?;
    let k = order(job)?;
    let d = diagram_for(&form, k, None)?;
    if inp.via_path {
        let v = theta_via_path(&inp.m, &inp.endpoint, &d)?;
        return match job.format {
            Format::Text => Ok(format!("theta = {}\n", v.to_canonical())),
            Format::Json => to_json(&v),
            _ => Err(unsupported_format(job)),
        };
    }
    let t: ThetaResult = theta_function(&inp.m, &inp.endpoint, &d, k)?;
    match job.format {
        Format::Text => {
            let mut s = format!(
                "theta = {}\nlines: {}\n",
                t.value.to_canonical(),
                t.lines.len()
            );
            for (i, l) in t.lines.iter().enumerate() {
                describe_line(&mut s, i, l);
            }
            Ok(s)
        }
        Format::Json => to_json(&t),
        Format::Svg => emit_svg(&d, &t.lines),
        Format::Tikz => emit_tikz(&d, &t.lines),
        Format::Dot => Err(unsupported_format(job)),
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RepIn {
    quiver: String,
    #[serde(rename = "D")]
    d: LatticeVec,
    e: Option<LatticeVec>,
    #[serde(default = "yes")]
    principal: bool,
    endpoint: Option<Point>,
}

fn yes() -> bool {
    true
}

fn cc(job: &JobSpec) -> Result<String> {
    let inp: RepIn = inputs(job)?;
    let q = Quiver::named(&inp.quiver)?;
    let rep = standard_indecomposable(&q, &inp.d)?;
    let p = caldero_chapoton(&q, &rep, inp.principal)?;
    match job.format {
        Format::Text => Ok(format!("CC({}) = {}\n", inp.d, p.to_canonical())),
        Format::Json => to_json(&p),
        _ => Err(unsupported_format(job)),
    }
}

#[derive(Serialize)]
struct GrassOut {
    dim: LatticeVec,
    sub: LatticeVec,
    counting_polynomial: String,
    euler_characteristic: String,
}

fn grass(job: &JobSpec) -> Result<String> {
    let inp: RepIn = inputs(job)?;
    let e = inp
        .e
        .clone()
        .ok_or_else(|| Error::Invalid("grass needs e".into()))?;
    let q = Quiver::named(&inp.quiver)?;
    let rep = standard_indecomposable(&q, &inp.d)?;
    let p = counting_polynomial(&q, &rep, &e)?;
    let out = GrassOut {
        dim: inp.d.clone(),
        sub: e,
        counting_polynomial: p.to_string(),
        euler_characteristic: p.at_one().to_string(),
    };
    match job.format {
        Format::Text => Ok(format!(
            "|Gr_{}({})(F_q)| = {}\nchi = {}\n",
            out.sub, out.dim, out.counting_polynomial, out.euler_characteristic
        )),
        Format::Json => to_json(&out),
        _ => Err(unsupported_format(job)),
    }
}

fn strata(job: &JobSpec) -> Result<String> {
    let inp: RepIn = inputs(job)?;
    let q = Quiver::named(&inp.quiver)?;
    let endpoint = inp
        .endpoint
        .clone()
        .unwrap_or_else(|| Point::from_ints(2, 1));
    let h = hall_theta_chi(&q, &inp.d, &endpoint)?;
    let n = q.n_vertices();
    let base = q.g_map(&inp.d)?.scale(-1);
    let form = q.skew_form();
    let target = match &inp.e {
        Some(e) => Some((&base + &form.p_star(e)?).concat(e)),
        None => None,
    };
    let picked: Vec<&HallLine> = h
        .lines
        .iter()
        .filter(|l| target.as_ref().is_none_or(|t| &l.line.last().exponent == t))
        .collect();
    if job.format == Format::Json {
        return to_json(&picked);
    }
    if job.format != Format::Text {
        return Err(unsupported_format(job));
    }
    let mut s = String::new();
    writeln!(
        s,
        "D = {}, endpoint {endpoint}, {} broken lines",
        inp.d,
        h.lines.len()
    )
    .unwrap();
    let mut total = num_bigint::BigInt::from(0);
    for (i, l) in picked.iter().enumerate() {
        let exp = &l.line.last().exponent;
        let e = LatticeVec(exp.0[n..].to_vec());
        writeln!(
            s,
            "line {}: final {}",
            i + 1,
            LaurentPoly::monomial(l.line.last().coeff.clone(), exp.clone()).to_canonical()
        )
        .unwrap();
        let Some(st) = &l.strata else {
            writeln!(s, "  no strata: {}", l.unrefined.as_deref().unwrap_or("")).unwrap();
            total += &l.line.last().coeff;
            continue;
        };
        writeln!(s, "  filtration {}", st.filtration).unwrap();
        for (x, c) in st.strata.iter().zip(&st.cases) {
            writeln!(
                s,
                "  stratum q^{} [{} choose {}]_q = {}  ({c:?})",
                x.affine_exponent, x.ambient, x.lambda, x.qpoly
            )
            .unwrap();
        }
        writeln!(s, "  qpoly {}  at q=1: {}", st.qpoly, st.qpoly.at_one()).unwrap();
        total += st.qpoly.at_one();
        if !st.filtration.steps.is_empty() {
            let hn = hn_phases(&st.filtration, &l.line.endpoint, &q, &inp.d, &e)?;
            let zs: Vec<String> = hn
                .values
                .iter()
                .map(|(c, z)| format!("Z{c} = {z}"))
                .collect();
            writeln!(s, "  HN {}  decreasing: {}", zs.join(", "), hn.decreasing).unwrap();
        }
    }
    writeln!(s, "total at q=1: {total}").unwrap();
    if let (Some(e), Some(t)) = (&inp.e, &target) {
        let rep = standard_indecomposable(&q, &inp.d)?;
        let oracle = counting_polynomial(&q, &rep, e)?;
        if let Some(r) = h.refined.get(t) {
            writeln!(s, "strata sum {r}").unwrap();
        }
        writeln!(s, "finite-field count {oracle}  chi = {}", oracle.at_one()).unwrap();
        writeln!(
            s,
            "match: {}",
            if oracle.at_one() == total {
                "yes"
            } else {
                "no"
            }
        )
        .unwrap();
    }
    Ok(s)
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ArIn {
    quiver: String,
    dim: Option<LatticeVec>,
    other: Option<LatticeVec>,
    component: Option<String>,
    #[serde(default = "default_bound")]
    bound: u32,
}

fn default_bound() -> u32 {
    3
}

fn ar(job: &JobSpec) -> Result<String> {
    let inp: ArIn = inputs(job)?;
    let q = Quiver::named(&inp.quiver)?;
    if let Some(c) = &inp.component {
        let side = match c.as_str() {
            "P" | "p" => Component::P,
            "I" | "i" => Component::I,
            _ => return Err(Error::Invalid(format!("component {c:?}: use P or I"))),
        };
        let comp = q.ar_component(side, inp.bound)?;
        return match job.format {
            Format::Dot => Ok(emit_dot(&comp)),
            Format::Json => to_json(&comp),
            Format::Text => {
                let mut s = String::new();
                for (a, b, m) in &comp.edges {
                    writeln!(s, "{} -> {} ×{m}", comp.nodes[*a].dim, comp.nodes[*b].dim).unwrap();
                }
                Ok(s)
            }
            _ => Err(unsupported_format(job)),
        };
    }
    let d = inp
        .dim
        .ok_or_else(|| Error::Invalid("ar needs dim or component".into()))?;
    let node = q.classify_indecomposable(&d)?;
    let show =
        |r: Result<LatticeVec>| r.map_or_else(|e| format!("undefined ({e})"), |v| v.to_string());
    let tau = show(q.coxeter_translate(&d, Translate::Tau));
    let tau_inv = show(q.coxeter_translate(&d, Translate::TauInverse));
    let mut s = String::new();
    writeln!(
        s,
        "{d}: component {:?}, {}",
        node.component,
        node_name(node.component, node.label, &d)
    )
    .unwrap();
    writeln!(s, "tau = {tau}\ntau^-1 = {tau_inv}").unwrap();
    if let Some(o) = &inp.other {
        let (h, e) = q.hom_ext_dims(&d, o)?;
        writeln!(s, "hom({d}, {o}) = {h}, ext({d}, {o}) = {e}").unwrap();
    }
    match job.format {
        Format::Text => Ok(s),
        Format::Json => to_json(&serde_json::json!({
            "dim": d, "component": node.component, "label": node.label.map(|(a, t)| (a + 1, t)),
            "tau": tau, "tau_inverse": tau_inv,
        })),
        _ => Err(unsupported_format(job)),
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct CheckIn {
    b: Option<i64>,
    job: Option<Box<JobSpec>>,
    expect: Option<String>,
}

fn check(job: &JobSpec) -> Result<String> {
    let inp: CheckIn = inputs(job)?;
    match (inp.b, inp.job, inp.expect) {
        (Some(b), None, None) => {
            let k = order(job)?;
            let d = rank2_diagram(b, k)?;
            let defects = loop_defect(&d, k as i64)?;
            if defects.iter().any(|p| !p.is_zero()) {
                return Err(Error::Invalid(format!(
                    "loop around the origin is not the identity to order {k}"
                )));
            }
            Ok(format!(
                "b = {b}: loop is the identity to order {k} ({} walls)\n",
                d.walls.len()
            ))
        }
        (None, Some(inner), expect) => {
            let got = run(&inner)?;
            match expect {
                Some(want) if want != got => Err(Error::Invalid(format!(
                    "output differs\n--- expected\n{want}--- got\n{got}"
                ))),
                Some(_) => Ok("ok\n".into()),
                None => Ok(got),
            }
        }
        _ => Err(Error::Invalid("check needs either b or job".into())),
    }
}

/// Runs a job; the text is what the binary prints on success.
pub fn run(job: &JobSpec) -> Result<String> {
    match job.command {
        Command::Mutate => mutate(job),
        Command::Scatter => scatter(job),
        Command::Theta => theta(job),
        Command::Cc => cc(job),
        Command::Grass => grass(job),
        Command::Strata => strata(job),
        Command::Ar => ar(job),
        Command::Check => check(job),
    }
}
