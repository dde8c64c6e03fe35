//! Command-line front end: compute functions, run verification suites, evaluate integrals.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use spinqw::algebra::{format_q, parse_q, Field, MultiPoly, C64, Q};
use spinqw::functions::{f, f_star, fhl, fhl_star};
use spinqw::identities::{run_suite, SuiteConfig, SUITES};
use spinqw::integral::{build_contour, integral_f};
use spinqw::params::ParameterBase;
use spinqw::partitions::Partition;
use spinqw::report::VerificationReport;
use spinqw::yang_baxter::{check_instance, Caps, YbeInstance, ALL_INSTANCES};
use spinqw::Error;

#[derive(Parser, Debug)]
#[command(name = "spinqw", about = "Spin q-Whittaker and spin Hall-Littlewood computations")]
struct Cli {
    /// Write JSON here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Evaluate F, F*, F̃ or F̃* on a skew shape.
    Compute {
        kind: Kind,
        #[arg(long, default_value = "")]
        lambda: String,
        #[arg(long, default_value = "")]
        mu: String,
        /// Number of spectral variables.
        #[arg(long, default_value_t = 1)]
        vars: usize,
        /// Comma-separated rational values for the variables; required for hl kinds and numeric mode.
        #[arg(long)]
        values: Option<String>,
        /// JSON parameter file; defaults to the P0 fixture.
        #[arg(long)]
        params: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = ModeArg::Exact)]
        mode: ModeArg,
    },
    /// Run an identity suite or a Yang-Baxter instance (`ybe:<name>`).
    Verify {
        name: String,
        /// Thick label cap for Yang-Baxter boundaries.
        #[arg(long, default_value_t = 4)]
        cap: usize,
        /// Composition size cap for colored boundaries.
        #[arg(long, default_value_t = 3)]
        colored_cap: usize,
        /// Yang-Baxter random parameter points.
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Random points after P0 for identity suites.
        #[arg(long, default_value_t = 20)]
        points: usize,
        /// Partition box side for the operator suites.
        #[arg(long, default_value_t = 6)]
        op_box: usize,
        /// Dual Cauchy shape (number of κ variables).
        #[arg(long, requires = "m")]
        n: Option<usize>,
        /// Dual Cauchy shape (number of u variables).
        #[arg(long, requires = "n")]
        m: Option<usize>,
        /// Run the deliberately broken control instead.
        #[arg(long)]
        perturb: bool,
    },
    /// Contour-integral value of F_μ next to the exact value.
    Integral {
        #[arg(long, default_value = "")]
        mu: String,
        #[arg(long, default_value_t = 1)]
        vars: usize,
        /// Comma-separated rational κ values; defaults to 1/4 for each variable.
        #[arg(long)]
        kappa: Option<String>,
        #[arg(long)]
        params: Option<PathBuf>,
        #[arg(long, default_value_t = 256)]
        nodes: usize,
        /// `auto` or an explicit radius.
        #[arg(long, default_value = "auto")]
        radius: String,
        #[arg(long, default_value_t = 1e-3)]
        margin: f64,
    },
    /// List identity suites and Yang-Baxter instances.
    List,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Kind {
    F,
    FStar,
    Hl,
    HlStar,
}

#[derive(Clone, Copy, Debug, PartialEq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum ModeArg {
    Exact,
    Numeric,
}

/// Outcome of a subcommand: JSON plus whether it counts as a pass.
struct Outcome {
    json: Value,
    ok: bool,
}

enum Failure {
    Usage(String),
    Compute(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) | Error::LengthMismatch { .. } => Failure::Usage(e.to_string()),
            _ => Failure::Compute(e.to_string()),
        }
    }
}

fn load_params(path: &Option<PathBuf>) -> Result<ParameterBase<Q>, Failure> {
    match path {
        None => Ok(ParameterBase::p0()),
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))?;
            Ok(ParameterBase::from_json(&text)?)
        }
    }
}

fn parse_values(text: &str, n: usize) -> Result<Vec<Q>, Failure> {
    let vals = text.split(',').map(parse_q).collect::<spinqw::Result<Vec<_>>>()?;
    if vals.len() != n {
        return Err(Failure::Usage(format!("expected {n} values, got {}", vals.len())));
    }
    Ok(vals)
}

fn complex(z: C64) -> Value {
    json!({ "re": z.re, "im": z.im })
}

fn cmd_compute(
    kind: Kind,
    lambda: &str,
    mu: &str,
    vars: usize,
    values: &Option<String>,
    params: &Option<PathBuf>,
    mode: ModeArg,
) -> Result<Outcome, Failure> {
    let (lam, mu_p): (Partition, Partition) = (lambda.parse()?, mu.parse()?);
    let base = load_params(params)?;
    let vals = values.as_deref().map(|t| parse_values(t, vars)).transpose()?;
    let config = json!({
        "subcommand": "compute",
        "kind": kind,
        "lambda": lam.to_string(),
        "mu": mu_p.to_string(),
        "vars": vars,
        "values": vals.as_ref().map(|v| v.iter().map(format_q).collect::<Vec<_>>()),
        "params": base.to_file(),
        "mode": mode,
    });
    let result = match (mode, vals) {
        (ModeArg::Exact, None) => {
            if matches!(kind, Kind::Hl | Kind::HlStar) {
                return Err(Failure::Usage("hl kinds need --values".into()));
            }
            let v = base.view();
            let xs: Vec<MultiPoly> = (0..vars).map(|i| MultiPoly::var(i, vars)).collect();
            let p = match kind {
                Kind::F => f(&lam, &mu_p, &xs, &v)?,
                _ => f_star(&lam, &mu_p, &xs, &v)?,
            }
            .widen(vars);
            json!({ "polynomial": p, "display": p.to_string() })
        }
        (ModeArg::Exact, Some(xs)) => {
            let v = base.view();
            let x = match kind {
                Kind::F => f(&lam, &mu_p, &xs, &v)?,
                Kind::FStar => f_star(&lam, &mu_p, &xs, &v)?,
                Kind::Hl => fhl(&lam, &mu_p, &xs, &v)?,
                Kind::HlStar => fhl_star(&lam, &mu_p, &xs, &v)?,
            };
            json!({ "value": format_q(&x) })
        }
        (ModeArg::Numeric, None) => return Err(Failure::Usage("numeric mode needs --values".into())),
        (ModeArg::Numeric, Some(xs)) => {
            let v = base.to_numeric().view();
            let xs: Vec<C64> = xs.iter().map(C64::from_q).collect();
            let x = match kind {
                Kind::F => f(&lam, &mu_p, &xs, &v)?,
                Kind::FStar => f_star(&lam, &mu_p, &xs, &v)?,
                Kind::Hl => fhl(&lam, &mu_p, &xs, &v)?,
                Kind::HlStar => fhl_star(&lam, &mu_p, &xs, &v)?,
            };
            json!({ "value": complex(x) })
        }
    };
    Ok(Outcome { json: json!({ "config": config, "result": result }), ok: true })
}

#[allow(clippy::too_many_arguments)]
fn cmd_verify(
    name: &str,
    cap: usize,
    colored_cap: usize,
    trials: usize,
    seed: u64,
    points: usize,
    op_box: usize,
    shape: Option<(usize, usize)>,
    perturb: bool,
) -> Result<Outcome, Failure> {
    let (config, report): (Value, VerificationReport) = if let Some(inst) = name.strip_prefix("ybe:") {
        let inst: YbeInstance = inst.parse()?;
        let caps = Caps { thick: cap, colored: colored_cap };
        let config = json!({
            "subcommand": "verify", "name": name, "cap": cap, "colored_cap": colored_cap,
            "trials": trials, "seed": seed, "perturb": perturb,
        });
        (config, check_instance(inst, caps, trials, seed, perturb))
    } else {
        if !SUITES.contains(&name) {
            return Err(Failure::Usage(format!("unknown suite {name:?}")));
        }
        let cfg = SuiteConfig { seed, points, perturb, op_box, shape };
        let config = json!({
            "subcommand": "verify", "name": name, "seed": seed, "points": points,
            "op_box": op_box, "shape": shape, "perturb": perturb,
        });
        let report = run_suite(name, &cfg).map_err(|e| match e {
            Error::Precondition(m) => Failure::Usage(m),
            e => Failure::from(e),
        })?;
        (config, report)
    };
    let ok = report.passed;
    Ok(Outcome { json: json!({ "config": config, "report": report }), ok })
}

#[allow(clippy::too_many_arguments)]
fn cmd_integral(
    mu: &str,
    vars: usize,
    kappa: &Option<String>,
    params: &Option<PathBuf>,
    nodes: usize,
    radius: &str,
    margin: f64,
) -> Result<Outcome, Failure> {
    let mu_p: Partition = mu.parse()?;
    let base = load_params(params)?;
    let kq = match kappa {
        Some(t) => parse_values(t, vars)?,
        None => vec![Q::from_ratio(1, 4); vars],
    };
    let explicit = match radius {
        "auto" => None,
        r => Some(r.parse::<f64>().map_err(|e| Failure::Usage(format!("radius {r:?}: {e}")))?),
    };
    let v = base.to_numeric().view();
    let mut contour = build_contour(&v, nodes, margin)?;
    if let Some(r) = explicit {
        contour = contour.with_radius(r)?;
    }
    let k: Vec<C64> = kq.iter().map(C64::from_q).collect();
    let quad = integral_f(&mu_p, &k, &v, &contour)?;
    let exact = f(&mu_p, &Partition::empty(), &k, &v)?;
    let config = json!({
        "subcommand": "integral",
        "mu": mu_p.to_string(),
        "vars": vars,
        "kappa": kq.iter().map(format_q).collect::<Vec<_>>(),
        "params": base.to_file(),
        "nodes": nodes,
        "radius": contour.radius,
        "margin": margin,
    });
    let result = json!({
        "quadrature": complex(quad),
        "exact": complex(exact),
        "difference": (quad - exact).norm(),
        "contour": { "inner": contour.inner, "outer": contour.outer, "radius": contour.radius },
    });
    Ok(Outcome { json: json!({ "config": config, "result": result }), ok: true })
}

fn cmd_list() -> Outcome {
    let ybe: Vec<String> = ALL_INSTANCES.iter().map(|i| format!("ybe:{i}")).collect();
    Outcome { json: json!({ "config": { "subcommand": "list" }, "suites": SUITES, "ybe": ybe }), ok: true }
}

fn run(cli: &Cli) -> Result<Outcome, Failure> {
    match &cli.cmd {
        Cmd::Compute { kind, lambda, mu, vars, values, params, mode } => {
            cmd_compute(*kind, lambda, mu, *vars, values, params, *mode)
        }
        Cmd::Verify { name, cap, colored_cap, trials, seed, points, op_box, n, m, perturb } => {
            let shape = n.zip(*m);
            cmd_verify(name, *cap, *colored_cap, *trials, *seed, *points, *op_box, shape, *perturb)
        }
        Cmd::Integral { mu, vars, kappa, params, nodes, radius, margin } => {
            cmd_integral(mu, *vars, kappa, params, *nodes, radius, *margin)
        }
        Cmd::List => Ok(cmd_list()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let text = serde_json::to_string_pretty(&out.json).expect("values serialize");
            match &cli.out {
                Some(p) => {
                    if let Err(e) = std::fs::write(p, text + "\n") {
                        eprintln!("error: {}: {e}", p.display());
                        return ExitCode::from(1);
                    }
                }
                None => {
                    let _ = writeln!(std::io::stdout(), "{text}");
                }
            }
            ExitCode::from(if out.ok { 0 } else { 1 })
        }
        Err(Failure::Usage(m)) => {
            eprintln!("usage error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Compute(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
    }
}
