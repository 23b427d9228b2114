use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Map, Value};

use clustertheta::cli::{run, Command, Format, JobSpec};
use clustertheta::scattering::plane::Point;
use clustertheta::{Error, LatticeVec};

/// Exact cluster scattering diagrams, theta functions and cluster characters.
///
/// Exit status: 0 on success, 2 on invalid or unsupported input, 3 when a
/// resource ceiling (CLUSTERTHETA_MAX_TERMS, CLUSTERTHETA_MAX_CELLS) is hit.
#[derive(Parser)]
#[command(name = "clustertheta", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args)]
struct OutArgs {
    /// Output format.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[arg(long, global = true)]
    json: bool,
    #[arg(long, global = true)]
    svg: bool,
    #[arg(long, global = true)]
    dot: bool,
    #[arg(long, global = true)]
    tikz: bool,
}

impl OutArgs {
    fn format(&self) -> Format {
        [
            (self.json, Format::Json),
            (self.svg, Format::Svg),
            (self.dot, Format::Dot),
            (self.tikz, Format::Tikz),
        ]
        .into_iter()
        .find_map(|(on, f)| on.then_some(f))
        .or(self.format)
        .unwrap_or_default()
    }
}

#[derive(Args)]
struct FormArgs {
    /// Rank-2 form with ε₁₂ = b.
    #[arg(long, allow_hyphen_values = true)]
    b: Option<i64>,
    /// Named quiver: kronecker{b} or a{n}.
    #[arg(long)]
    quiver: Option<String>,
    /// Skew form as a JSON matrix, e.g. [[0,1],[-1,0]].
    #[arg(long)]
    eps: Option<String>,
}

impl FormArgs {
    fn insert(&self, m: &mut Map<String, Value>) -> Result<(), Error> {
        if let Some(b) = self.b {
            m.insert("b".into(), json!(b));
        }
        if let Some(q) = &self.quiver {
            m.insert("quiver".into(), json!(q));
        }
        if let Some(e) = &self.eps {
            let v: Value =
                serde_json::from_str(e).map_err(|e| Error::Invalid(format!("--eps: {e}")))?;
            m.insert("eps".into(), v);
        }
        Ok(())
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Mutate the initial seed along a word; --dot draws the exchange graph.
    Mutate {
        #[command(flatten)]
        form: FormArgs,
        /// Comma-separated 1-based mutation indices.
        #[arg(long, default_value = "")]
        word: String,
        /// Exchange-graph depth for --dot.
        #[arg(long)]
        depth: Option<usize>,
    },
    /// Consistent scattering diagram (rank 2) or cluster-complex walls.
    Scatter {
        #[command(flatten)]
        form: FormArgs,
        #[arg(long)]
        order: Option<u32>,
        #[arg(long)]
        depth: Option<usize>,
    },
    /// Theta function by broken lines, or by a path-ordered product.
    Theta {
        #[command(flatten)]
        form: FormArgs,
        /// Initial exponent in M ⊕ N, e.g. 1,-1,0,0.
        #[arg(long, allow_hyphen_values = true)]
        m: String,
        /// Endpoint x,y with integer or p/q coordinates.
        #[arg(long, allow_hyphen_values = true)]
        endpoint: String,
        #[arg(long)]
        order: Option<u32>,
        #[arg(long)]
        via_path: bool,
    },
    /// Caldero–Chapoton character of an indecomposable.
    Cc {
        #[command(flatten)]
        rep: RepArgs,
        /// Drop the X variables.
        #[arg(long)]
        no_principal: bool,
    },
    /// Point count and Euler characteristic of a quiver Grassmannian.
    Grass {
        #[command(flatten)]
        rep: RepArgs,
        #[arg(long)]
        e: String,
    },
    /// Bending strata, filtrations and HN phases of the broken lines for −g(D).
    Strata {
        #[command(flatten)]
        rep: RepArgs,
        #[arg(long)]
        e: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        endpoint: Option<String>,
    },
    /// Auslander–Reiten data: classification, τ, Hom/Ext, components.
    Ar {
        #[arg(long)]
        quiver: String,
        #[arg(long)]
        dim: Option<String>,
        /// Second dimension vector for Hom/Ext.
        #[arg(long)]
        other: Option<String>,
        /// P or I: print that component.
        #[arg(long)]
        component: Option<String>,
        #[arg(long)]
        bound: Option<u32>,
    },
    /// Loop consistency (--b, --order) or a job file compared with its expected output.
    Check {
        #[arg(long, allow_hyphen_values = true)]
        b: Option<i64>,
        #[arg(long)]
        order: Option<u32>,
        /// JSON job file: a job spec, optionally {"job": …, "expect": "…"}.
        #[arg(long)]
        job: Option<std::path::PathBuf>,
    },
}

#[derive(Args)]
struct RepArgs {
    #[arg(long)]
    quiver: String,
    /// Dimension vector of the indecomposable.
    #[arg(long = "D")]
    d: String,
}

fn vec_json(s: &str) -> Result<Value, Error> {
    Ok(json!(LatticeVec::parse(s)?))
}

fn point_json(s: &str) -> Result<Value, Error> {
    Ok(serde_json::to_value(Point::parse(s)?).expect("points serialize"))
}

fn build(cli: &Cli) -> Result<JobSpec, Error> {
    let format = cli.out.format();
    let mut m = Map::new();
    let (command, order) = match &cli.cmd {
        Cmd::Mutate { form, word, depth } => {
            form.insert(&mut m)?;
            let w: Vec<usize> = if word.trim().is_empty() {
                Vec::new()
            } else {
                word.split(',')
                    .map(|t| {
                        t.trim()
                            .parse()
                            .map_err(|_| Error::Invalid(format!("bad mutation index {t:?}")))
                    })
                    .collect::<Result<_, _>>()?
            };
            m.insert("word".into(), json!(w));
            if let Some(d) = depth {
                m.insert("depth".into(), json!(d));
            }
            (Command::Mutate, None)
        }
        Cmd::Scatter { form, order, depth } => {
            form.insert(&mut m)?;
            if let Some(d) = depth {
                m.insert("depth".into(), json!(d));
            }
            (Command::Scatter, *order)
        }
        Cmd::Theta {
            form,
            m: m0,
            endpoint,
            order,
            via_path,
        } => {
            form.insert(&mut m)?;
            m.insert("m".into(), vec_json(m0)?);
            m.insert("endpoint".into(), point_json(endpoint)?);
            m.insert("via_path".into(), json!(via_path));
            (Command::Theta, *order)
        }
        Cmd::Cc { rep, no_principal } => {
            m.insert("quiver".into(), json!(rep.quiver));
            m.insert("D".into(), vec_json(&rep.d)?);
            m.insert("principal".into(), json!(!no_principal));
            (Command::Cc, None)
        }
        Cmd::Grass { rep, e } => {
            m.insert("quiver".into(), json!(rep.quiver));
            m.insert("D".into(), vec_json(&rep.d)?);
            m.insert("e".into(), vec_json(e)?);
            (Command::Grass, None)
        }
        Cmd::Strata { rep, e, endpoint } => {
            m.insert("quiver".into(), json!(rep.quiver));
            m.insert("D".into(), vec_json(&rep.d)?);
            if let Some(e) = e {
                m.insert("e".into(), vec_json(e)?);
            }
            if let Some(p) = endpoint {
                m.insert("endpoint".into(), point_json(p)?);
            }
            (Command::Strata, None)
        }
        Cmd::Ar {
            quiver,
            dim,
            other,
            component,
            bound,
        } => {
            m.insert("quiver".into(), json!(quiver));
            if let Some(d) = dim {
                m.insert("dim".into(), vec_json(d)?);
            }
            if let Some(o) = other {
                m.insert("other".into(), vec_json(o)?);
            }
            if let Some(c) = component {
                m.insert("component".into(), json!(c));
            }
            if let Some(b) = bound {
                m.insert("bound".into(), json!(b));
            }
            (Command::Ar, None)
        }
        Cmd::Check { b, order, job } => {
            if let Some(path) = job {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))?;
                let v: Value = serde_json::from_str(&text)
                    .map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))?;
                if v.get("command").is_some() {
                    m.insert("job".into(), v);
                } else if let Value::Object(o) = v {
                    m = o;
                }
            }
            if let Some(b) = b {
                m.insert("b".into(), json!(b));
            }
            (Command::Check, *order)
        }
    };
    Ok(JobSpec::new(command, Value::Object(m), format, order))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match build(&cli).and_then(|job| run(&job)) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
