use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use gausscf::cfrac::best_approximations;
use gausscf::critical::{self, Ring};
use gausscf::dirichlet::{dirichlet_constant, random_thetas, theoretical_constant};
use gausscf::export::{encode_orbit_jsonl, parse_theta};
use gausscf::gauss::Cx;
use gausscf::measure::density_check;
use gausscf::regions::{in_w, regions_export, Boundary};
use gausscf::transversal::{orbit_sample, DEFAULT_BURN_IN, MEMBERSHIP_TOL};
use serde::Serialize;

const THETA_HELP: &str = "complex literal, grammar:
  theta = [\"-\"] float [ (\"+\" | \"-\") float \"i\" ]
  float = digits [\".\" [digits]] [exp] | \".\" digits [exp]
  exp   = (\"e\" | \"E\") [\"+\" | \"-\"] digits
examples: 0.7+0.3i, -1.5, 2.5e-3-4i";

/// Best approximations of complex numbers by quotients of Gaussian integers.
#[derive(Parser, Debug)]
#[command(name = "gausscf", version, after_help = THETA_HELP)]
struct Cli {
    /// Output file; standard output when omitted.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Output format. Each command accepts a subset (see its help).
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Seed for sampled inputs. The GAUSSCF_SEED environment variable takes precedence.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Tolerance of the transversal membership self-check.
    #[arg(long, global = true, default_value_t = MEMBERSHIP_TOL)]
    membership_tol: f64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Jsonl,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Best approximation vectors (p, q) with |q| ≤ qmax. Formats: csv (default), json.
    BestApprox {
        #[arg(long, value_parser = theta_arg, help = "θ as re+imi")]
        theta: Cx,
        #[arg(long, default_value_t = 1000.0)]
        qmax: f64,
    },
    /// Transversal orbit, one JSON record per point. Format: jsonl.
    Orbit {
        #[arg(long, value_parser = theta_arg)]
        theta: Cx,
        #[arg(long, default_value_t = 1000)]
        steps: usize,
        #[arg(long, default_value_t = DEFAULT_BURN_IN)]
        burn_in: usize,
    },
    /// Critical coefficient pairs. Format: json.
    Critical {
        #[arg(long, value_parser = ring_arg)]
        ring: Ring,
        #[arg(long, default_value_t = critical::DEFAULT_EPSILON)]
        epsilon: f64,
    },
    /// Dirichlet constants of random θ in the unit square. Formats: csv (default), json.
    Dirichlet {
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 1000.0)]
        qmax: f64,
    },
    /// Region boundaries and constraint disks. Format: json.
    RegionsExport,
    /// χ² comparison of a long orbit with the invariant density. Format: json.
    DensityCheck {
        #[arg(long, value_parser = theta_arg, default_value = "0.31830988618379067+0.5772156649015329i")]
        theta: Cx,
        #[arg(long, default_value_t = 100_000)]
        steps: usize,
        #[arg(long, default_value_t = DEFAULT_BURN_IN)]
        burn_in: usize,
        #[arg(long, default_value_t = 10_000_000)]
        mc_samples: usize,
        /// Smallest accepted p-value.
        #[arg(long, default_value_t = 1e-3)]
        alpha: f64,
    },
}

fn theta_arg(s: &str) -> Result<Cx, String> {
    parse_theta(s).map_err(|e| e.to_string())
}

fn ring_arg(s: &str) -> Result<Ring, String> {
    Ring::parse(s).ok_or_else(|| format!("unknown ring {s:?}: expected zi or j"))
}

enum Failure {
    Usage(String),
    Invariant(String),
    Io(io::Error),
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

/// Round-trip float formatting for CSV.
fn f(x: f64) -> String {
    format!("{x:.16e}")
}

fn json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn pick(format: Option<Format>, allowed: &[Format], command: &str) -> Result<Format, Failure> {
    match format {
        None => Ok(allowed[0]),
        Some(f) if allowed.contains(&f) => Ok(f),
        Some(f) => Err(Failure::Usage(format!(
            "{command} does not support --format {}",
            f.to_possible_value().expect("no skipped variants").get_name()
        ))),
    }
}

#[derive(Serialize)]
struct BestApproxOut {
    schema_version: u32,
    theta: [f64; 2],
    q_max: f64,
    terminated: bool,
    terms: Vec<BestApproxRow>,
}

#[derive(Serialize)]
struct BestApproxRow {
    p: [i64; 2],
    q: [i64; 2],
    qmod: f64,
    err: f64,
    k: u8,
}

#[derive(Serialize)]
struct DirichletOut {
    schema_version: u32,
    seed: u64,
    q_max: f64,
    bound: f64,
    rows: Vec<DirichletRow>,
}

#[derive(Serialize)]
struct DirichletRow {
    theta: [f64; 2],
    c_theta: f64,
    c_prime_theta: f64,
    n_terms: usize,
    max_product_index: usize,
    truncated: bool,
}

fn run(cli: &Cli, seed: u64) -> Result<String, Failure> {
    match &cli.command {
        Command::BestApprox { theta, qmax } => {
            let format = pick(cli.format, &[Format::Csv, Format::Json], "best-approx")?;
            let s = best_approximations(*theta, *qmax).map_err(|e| Failure::Usage(e.to_string()))?;
            let rows: Vec<BestApproxRow> = s
                .terms
                .iter()
                .map(|t| BestApproxRow { p: [t.p.re, t.p.im], q: [t.q.re, t.q.im], qmod: t.qmod, err: t.err, k: t.k })
                .collect();
            Ok(match format {
                Format::Json => json(&BestApproxOut {
                    schema_version: 1,
                    theta: [theta.re, theta.im],
                    q_max: *qmax,
                    terminated: s.terminated,
                    terms: rows,
                }),
                _ => {
                    let mut out = String::from("p_re,p_im,q_re,q_im,qmod,err,k,terminated\n");
                    for r in rows {
                        writeln!(
                            out,
                            "{},{},{},{},{},{},{},{}",
                            r.p[0], r.p[1], r.q[0], r.q[1], f(r.qmod), f(r.err), r.k, s.terminated
                        )
                        .unwrap();
                    }
                    out
                }
            })
        }
        Command::Orbit { theta, steps, burn_in } => {
            pick(cli.format, &[Format::Jsonl], "orbit")?;
            let sample = orbit_sample(*theta, *steps, *burn_in).map_err(|e| Failure::Invariant(e.to_string()))?;
            if let Some(bad) = sample
                .points
                .iter()
                .position(|p| !in_w(p.point.k, p.point.w1, p.point.w2, Boundary::Strict, cli.membership_tol))
            {
                return Err(Failure::Invariant(format!("orbit point {bad} left the transversal")));
            }
            if sample.truncated {
                eprintln!("truncated: orbit ended after {} points (θ ∈ ℚ(i))", sample.points.len());
            }
            Ok(encode_orbit_jsonl(&sample.points))
        }
        Command::Critical { ring, epsilon } => {
            pick(cli.format, &[Format::Json], "critical")?;
            let set = critical::filter(*ring, *epsilon);
            Ok(json(&critical::export(*ring, *epsilon, &set)))
        }
        Command::Dirichlet { samples, qmax } => {
            let format = pick(cli.format, &[Format::Csv, Format::Json], "dirichlet")?;
            if !(*qmax >= 2.0) {
                return Err(Failure::Usage("--qmax must be at least 2".into()));
            }
            let bound = theoretical_constant();
            let mut rows = Vec::with_capacity(*samples);
            for theta in random_thetas(seed, *samples) {
                let r = dirichlet_constant(theta, *qmax).map_err(|e| Failure::Invariant(e.to_string()))?;
                if r.c_theta > bound + 1e-9 {
                    return Err(Failure::Invariant(format!("product {} above {bound} at θ = {theta}", r.c_theta)));
                }
                rows.push(DirichletRow {
                    theta: [theta.re, theta.im],
                    c_theta: r.c_theta,
                    c_prime_theta: r.c_prime_theta,
                    n_terms: r.n_terms,
                    max_product_index: r.attaining_index,
                    truncated: r.truncated,
                });
            }
            Ok(match format {
                Format::Json => json(&DirichletOut { schema_version: 1, seed, q_max: *qmax, bound, rows }),
                _ => {
                    let mut out = String::from("theta_re,theta_im,c_theta,n_terms,max_product_index\n");
                    for r in rows {
                        writeln!(out, "{},{},{},{},{}", f(r.theta[0]), f(r.theta[1]), f(r.c_theta), r.n_terms, r.max_product_index)
                            .unwrap();
                    }
                    out
                }
            })
        }
        Command::RegionsExport => {
            pick(cli.format, &[Format::Json], "regions-export")?;
            Ok(json(&regions_export()))
        }
        Command::DensityCheck { theta, steps, burn_in, mc_samples, alpha } => {
            pick(cli.format, &[Format::Json], "density-check")?;
            let r = density_check(*theta, *steps, *burn_in, *mc_samples, seed).map_err(|e| Failure::Invariant(e.to_string()))?;
            let text = json(&r);
            if r.p_value < *alpha {
                write_out(cli, &text)?;
                return Err(Failure::Invariant(format!("χ² = {} on {} dof rejects at p = {:e}", r.chi2, r.dof, r.p_value)));
            }
            Ok(text)
        }
    }
}

fn write_out(cli: &Cli, text: &str) -> io::Result<()> {
    match &cli.out {
        Some(path) => fs::write(path, text),
        None => io::stdout().lock().write_all(text.as_bytes()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let seed = match std::env::var("GAUSSCF_SEED") {
        Ok(s) => match s.trim().parse() {
            Ok(v) => v,
            Err(_) => {
                eprintln!("error: GAUSSCF_SEED={s:?} is not an unsigned integer");
                return ExitCode::from(2);
            }
        },
        Err(_) => cli.seed,
    };
    match run(&cli, seed).and_then(|text| write_out(&cli, &text).map_err(Failure::Io)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Invariant(m)) => {
            eprintln!("invariant failure: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
