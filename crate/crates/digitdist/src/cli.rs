//! The `digitdist` command-line front end.
//!
//! Each subcommand drives one library operation and emits one
//! self-describing document (JSON by default, CSV for the tabular reports,
//! plain text for the graph edge list). Runs are deterministic: the output
//! bytes depend only on the argument vector and the seed, never on the
//! worker count, because all parallel reductions are exact or fixed-order.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{BigUint, Num, ToPrimitive};
use rand::SeedableRng;

use crate::budget::Budget;
use crate::counting::{self, ErrorMode};
use crate::digitcore::DigitParams;
use crate::expsum;
use crate::exponents;
use crate::farey;
use crate::gowers;
use crate::report::{artifact, format_float, Csv, Json};
use crate::{Error, Result};

#[derive(Debug, Parser)]
#[command(name = "digitdist", version, about = "Digit-sum statistics in arithmetic progressions, with exact cross-checks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Worker threads for the parallel loops (default: rayon's choice).
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    /// Seed for the randomized property runs; recorded in every artifact.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Work budget override (also via DIGITDIST_BUDGET).
    #[arg(long, global = true)]
    pub budget: Option<u128>,
    /// Output format where the subcommand supports a choice.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the document here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Window,
    ExactSmall,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    Full,
    Truncated,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VdcKind {
    Plain,
    Shift,
    Both,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Count n in [y, z) with s_q(n) ≡ a (mod b) and n ≡ r (mod m).
    Count {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        b: u32,
        #[arg(long, default_value_t = 1)]
        ell: u32,
        #[arg(long, default_value = "0")]
        y: String,
        #[arg(long)]
        z: String,
        #[arg(long, default_value_t = 0)]
        a: u32,
        #[arg(long, default_value_t = 1)]
        m: u64,
        #[arg(long, default_value_t = 0)]
        r: u64,
    },
    /// Sum the per-modulus worst-case errors E(m) over m ≤ x^(1−ε).
    LdSum {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        b: u32,
        #[arg(long, default_value_t = 1)]
        ell: u32,
        #[arg(long, default_value_t = 0)]
        a: u32,
        #[arg(long)]
        x: u64,
        #[arg(long)]
        epsilon: f64,
        #[arg(long, value_enum, default_value_t = ModeArg::Window)]
        mode: ModeArg,
        /// Emit the per-m breakdown alongside the total.
        #[arg(long)]
        breakdown: bool,
    },
    /// The twisted exponential sum S₀(N, D, ξ) with D = q^ν.
    S0 {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        b: u32,
        #[arg(long, default_value_t = 1)]
        ell: u32,
        #[arg(long = "N")]
        n: u64,
        /// Modulus-range exponent: D = q^ν.
        #[arg(long)]
        nu: u32,
        /// Rational frequency "p/q" (or an integer).
        #[arg(long, default_value = "0")]
        xi: String,
        /// Shift-window exponent Λ; defaults to ⌈log_q(2N·qD)⌉ + 2.
        #[arg(long)]
        lambda_window: Option<u32>,
    },
    /// Randomized verification of both van der Corput inequalities.
    Vdc {
        #[arg(long, default_value_t = 1000)]
        trials: u32,
        /// Largest interval length |I|.
        #[arg(long, default_value_t = 64)]
        len: u32,
        /// Largest step K for the shifted variant.
        #[arg(long = "K", default_value_t = 8)]
        k_max: u64,
        #[arg(long, value_enum, default_value_t = VdcKind::Both)]
        kind: VdcKind,
    },
    /// Carry-propagation exception count against its bound.
    Carry {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        lambda: u32,
        #[arg(long)]
        r: u64,
        #[arg(long, default_value = "1")]
        alpha: String,
        #[arg(long, default_value = "0")]
        beta: String,
        #[arg(long = "N")]
        n: u64,
        #[arg(long, default_value_t = 0)]
        start: u64,
    },
    /// Gowers-type average A(ρ, r₀) via the graph recursion.
    Gowers {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        b: u32,
        #[arg(long, default_value_t = 1)]
        ell: u32,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        rho: u32,
        #[arg(long, value_enum, default_value_t = VariantArg::Full)]
        variant: VariantArg,
        /// Start vertex, as an index into the BFS order (0 = zero vertex).
        #[arg(long, default_value_t = 0)]
        node: usize,
        /// Also run the brute-force enumeration and report the difference.
        #[arg(long)]
        oracle: bool,
    },
    /// Export the transition graph as a sorted edge list.
    Graph {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        b: u32,
        #[arg(long, default_value_t = 1)]
        ell: u32,
        #[arg(long)]
        k: u32,
    },
    /// Contraction constant M at j = K + b(k+1) steps, with its bound.
    Contraction {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        b: u32,
        #[arg(long, default_value_t = 1)]
        ell: u32,
        #[arg(long)]
        k: u32,
    },
    /// Farey neighbours and mediant rounding of a rational.
    Farey {
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        order: String,
    },
    /// Exact discrepancy D_N(α), or its sum over d/q^m when --sum-exp is set.
    Discrepancy {
        #[arg(long, default_value = "0")]
        alpha: String,
        #[arg(long = "N")]
        n: u64,
        #[arg(long)]
        q: Option<u32>,
        /// Sum D_N(d/q^m) over all d < q^m.
        #[arg(long)]
        sum_exp: Option<u32>,
    },
    /// Evaluate the named closed-form exponents at the given inputs.
    Exponents {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        b: u32,
        #[arg(long)]
        epsilon: Option<f64>,
        #[arg(long)]
        rho1: Option<f64>,
        #[arg(long)]
        rho2: Option<f64>,
        #[arg(long)]
        delta1: Option<f64>,
        #[arg(long)]
        delta2: Option<f64>,
        #[arg(long)]
        k: Option<u32>,
        /// Emit the (ε, log η) curve over [lo, hi] instead of the table.
        #[arg(long)]
        curve: bool,
        #[arg(long, default_value_t = 0.01)]
        lo: f64,
        #[arg(long, default_value_t = 0.5)]
        hi: f64,
        #[arg(long, default_value_t = 100)]
        samples: u32,
        /// Also write a minimal SVG plot of the curve here.
        #[arg(long)]
        svg_out: Option<PathBuf>,
    },
    /// Reported-vs-computed table for log η(ε) and log ξ′.
    Figure3 {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        b: u32,
        /// ε values; defaults to the seven tabulated ones.
        #[arg(long)]
        epsilon: Vec<f64>,
    },
    /// Parameter selection with the full inequality chain.
    Params {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        b: u32,
        #[arg(long)]
        rho1: Option<f64>,
        #[arg(long)]
        rho2: f64,
        #[arg(long)]
        nu: Option<String>,
        /// N = q^{n_exp}.
        #[arg(long)]
        n_exp: Option<String>,
        /// Synthetic decay exponent substituted for η₀.
        #[arg(long)]
        eta0_override: Option<f64>,
        /// Report the asymptotic ratios at this μ instead of a bundle.
        #[arg(long)]
        a1_mu: Option<u64>,
    },
}

pub fn parse_rational(text: &str) -> Result<BigRational> {
    let parse_int = |s: &str| -> Result<BigInt> {
        BigInt::from_str_radix(s.trim(), 10)
            .map_err(|_| Error::precondition(format!("not an integer: {s}")))
    };
    match text.split_once('/') {
        Some((num, den)) => {
            let d = parse_int(den)?;
            if d <= BigInt::from(0) {
                return Err(Error::precondition("rational denominator must be positive"));
            }
            Ok(BigRational::new(parse_int(num)?, d))
        }
        None => Ok(BigRational::from(parse_int(text)?)),
    }
}

fn parse_big(text: &str) -> Result<BigUint> {
    BigUint::from_str_radix(text.trim(), 10)
        .map_err(|_| Error::precondition(format!("not a nonnegative integer: {text}")))
}

/// Run the CLI and return the process exit code (0 success, 1 precondition
/// or usage, 2 violated invariant).
pub fn run_from_args<I>(args: I) -> i32
where
    I: IntoIterator,
    I::Item: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // clap handles --help/--version through this path as well
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let out_path = cli.out.clone();
    match execute(cli) {
        Ok(doc) => {
            let write_result = match &out_path {
                Some(path) => std::fs::write(path, doc.as_bytes()).map_err(Error::Io),
                None => std::io::stdout()
                    .write_all(doc.as_bytes())
                    .map_err(Error::Io),
            };
            match write_result {
                Ok(()) => 0,
                Err(e) => {
                    eprintln!("digitdist: {e}");
                    e.exit_code()
                }
            }
        }
        Err(e) => {
            eprintln!("digitdist: {e}");
            e.exit_code()
        }
    }
}

/// Execute a parsed invocation and render its document. Pure relative to
/// the filesystem except for `--svg-out` side emissions.
pub fn execute(cli: Cli) -> Result<String> {
    let budget = match cli.budget {
        Some(w) => Budget::new(w),
        None => Budget::default(),
    };
    let seed = cli.seed;
    let run = || dispatch(&cli.command, seed, &budget, cli.format);
    match cli.workers {
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| Error::precondition(format!("cannot build worker pool: {e}")))?;
            pool.install(run)
        }
        None => run(),
    }
}

fn dispatch(command: &Command, seed: u64, budget: &Budget, format: Format) -> Result<String> {
    match command {
        Command::Count { q, b, ell, y, z, a, m, r } => {
            let params = DigitParams::new(*q, *b, *ell)?;
            let query = counting::ProgressionQuery::new(
                params,
                parse_big(y)?,
                parse_big(z)?,
                *a,
                *m,
                *r,
            )?;
            let count = counting::count_progression(&query, budget)?;
            let inputs = Json::obj(vec![
                ("q", Json::Int(*q as i128)),
                ("b", Json::Int(*b as i128)),
                ("ell", Json::Int(*ell as i128)),
                ("y", Json::Str(y.clone())),
                ("z", Json::Str(z.clone())),
                ("a", Json::Int(*a as i128)),
                ("m", Json::Int(*m as i128)),
                ("r", Json::Int(*r as i128)),
            ]);
            let outputs = Json::obj(vec![("count", Json::Int(count as i128))]);
            Ok(artifact("count", seed, inputs, outputs).render())
        }
        Command::LdSum { q, b, ell, a, x, epsilon, mode, breakdown } => {
            let params = DigitParams::new(*q, *b, *ell)?;
            let mode_lib = match mode {
                ModeArg::Window => ErrorMode::Window,
                ModeArg::ExactSmall => ErrorMode::ExactSmall,
            };
            let sum = counting::ld_error_sum(&params, *a, *x, *epsilon, mode_lib, budget)?;
            let inputs = Json::obj(vec![
                ("q", Json::Int(*q as i128)),
                ("b", Json::Int(*b as i128)),
                ("ell", Json::Int(*ell as i128)),
                ("a", Json::Int(*a as i128)),
                ("x", Json::Int(*x as i128)),
                ("epsilon", Json::Float(*epsilon)),
                ("mode", Json::Str(format!("{mode:?}").to_lowercase())),
            ]);
            let mut out = vec![
                ("m_max", Json::Int(sum.m_max as i128)),
                ("total", Json::rational(&sum.total)),
                ("total_float", Json::Float(sum.total.to_f64().unwrap_or(f64::NAN))),
            ];
            if *breakdown {
                out.push((
                    "per_m",
                    Json::Arr(
                        sum.per_m
                            .iter()
                            .map(|s| {
                                Json::obj(vec![
                                    ("m", Json::Int(s.m as i128)),
                                    ("error", Json::rational(&s.error)),
                                ])
                            })
                            .collect(),
                    ),
                ));
            }
            Ok(artifact("ld-sum", seed, inputs, Json::Obj(out.into_iter().map(|(k, v)| (k.to_string(), v)).collect())).render())
        }
        Command::S0 { q, b, ell, n, nu, xi, lambda_window } => {
            let params = DigitParams::new(*q, *b, *ell)?;
            let d = (*q as u64)
                .checked_pow(*nu)
                .ok_or_else(|| Error::precondition("q^nu exceeds u64"))?;
            let xi_rat = parse_rational(xi)?;
            let lam = lambda_window
                .unwrap_or_else(|| expsum::default_a_window(*q, *n, d * *q as u64 - 1));
            let cfg = expsum::ExpSumConfig::new(params, *n, d, xi_rat, lam)?;
            let s = expsum::s0_sum(&cfg, budget)?;
            let inputs = Json::obj(vec![
                ("q", Json::Int(*q as i128)),
                ("b", Json::Int(*b as i128)),
                ("ell", Json::Int(*ell as i128)),
                ("N", Json::Int(*n as i128)),
                ("nu", Json::Int(*nu as i128)),
                ("D", Json::Int(d as i128)),
                ("xi", Json::Str(xi.clone())),
                ("lambda_window", Json::Int(lam as i128)),
            ]);
            let outputs = Json::obj(vec![
                ("total", Json::Float(s.total)),
                ("normalized", Json::Float(s.total / (d as f64 * *n as f64))),
                (
                    "per_m",
                    Json::Arr(
                        s.terms
                            .iter()
                            .map(|t| {
                                Json::obj(vec![
                                    ("m", Json::Int(t.m as i128)),
                                    ("max_abs", Json::Float(t.max_abs)),
                                    ("argmax_a", Json::Int(t.argmax_a as i128)),
                                ])
                            })
                            .collect(),
                    ),
                ),
            ]);
            Ok(artifact("s0", seed, inputs, outputs).render())
        }
        Command::Vdc { trials, len, k_max, kind } => {
            use rand::Rng;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let mut checked = 0u64;
            let mut violations = 0u64;
            let mut worst_margin = f64::INFINITY;
            for _ in 0..*trials {
                let size = rng.gen_range(2..=*len as usize);
                let values: Vec<num::complex::Complex64> = (0..size)
                    .map(|_| crate::numeric::e(rng.gen::<f64>()))
                    .collect();
                let h = rng.gen_range(1..=size as u64);
                if matches!(kind, VdcKind::Plain | VdcKind::Both) {
                    let (lhs, rhs) = expsum::vdc_plain_check(&values, h)?;
                    checked += 1;
                    if lhs > rhs {
                        violations += 1;
                    }
                    worst_margin = worst_margin.min(rhs - lhs);
                }
                if matches!(kind, VdcKind::Shift | VdcKind::Both) {
                    let k_step = rng.gen_range(1..=*k_max);
                    let (lhs, rhs) = expsum::vdc_shift_check(&values, h, k_step)?;
                    checked += 1;
                    if lhs > rhs {
                        violations += 1;
                    }
                    worst_margin = worst_margin.min(rhs - lhs);
                }
            }
            let inputs = Json::obj(vec![
                ("trials", Json::Int(*trials as i128)),
                ("len", Json::Int(*len as i128)),
                ("K", Json::Int(*k_max as i128)),
                ("kind", Json::Str(format!("{kind:?}").to_lowercase())),
            ]);
            let outputs = Json::obj(vec![
                ("checked", Json::Int(checked as i128)),
                ("violations", Json::Int(violations as i128)),
                ("worst_margin", Json::Float(worst_margin)),
            ]);
            Ok(artifact("vdc", seed, inputs, outputs).render())
        }
        Command::Carry { q, lambda, r, alpha, beta, n, start } => {
            let a = parse_rational(alpha)?;
            let be = parse_rational(beta)?;
            let c = expsum::carry_exceptions(*q, *lambda, *r, &a, &be, *start, *n, budget)?;
            let inputs = Json::obj(vec![
                ("q", Json::Int(*q as i128)),
                ("lambda", Json::Int(*lambda as i128)),
                ("r", Json::Int(*r as i128)),
                ("alpha", Json::Str(alpha.clone())),
                ("beta", Json::Str(beta.clone())),
                ("N", Json::Int(*n as i128)),
                ("start", Json::Int(*start as i128)),
            ]);
            let outputs = Json::obj(vec![
                ("count", Json::Int(c.count as i128)),
                ("bound", Json::rational(&c.bound)),
                ("bound_float", Json::Float(c.bound.to_f64().unwrap_or(f64::NAN))),
            ]);
            Ok(artifact("carry", seed, inputs, outputs).render())
        }
        Command::Gowers { q, b, ell, k, rho, variant, node, oracle } => {
            let params = DigitParams::new(*q, *b, *ell)?;
            let graph = gowers::reachable_set(&params, *k, budget)?;
            if *node >= graph.node_count() {
                return Err(Error::precondition(format!(
                    "node index {node} out of range (|N| = {})",
                    graph.node_count()
                )));
            }
            let variant_lib = match variant {
                VariantArg::Full => gowers::Variant::Full,
                VariantArg::Truncated => gowers::Variant::Truncated,
            };
            let r0 = graph.node(*node).clone();
            let rec = gowers::gowers_average_recursive(&graph, *rho, &r0, variant_lib)?;
            let rec_c = rec.to_complex();
            let mut out = vec![
                ("node_coords", Json::Arr(r0.coords().iter().map(|&c| Json::Int(c as i128)).collect())),
                ("recursive_re", Json::Float(rec_c.re)),
                ("recursive_im", Json::Float(rec_c.im)),
                ("recursive_abs", Json::Float(rec_c.norm())),
            ];
            if *oracle {
                let brute = gowers::gowers_average_brute(&params, *k, *rho, &r0, variant_lib, budget)?;
                let brute_c = brute.to_complex();
                out.push(("brute_re", Json::Float(brute_c.re)));
                out.push(("brute_im", Json::Float(brute_c.im)));
                out.push(("difference", Json::Float((rec_c - brute_c).norm())));
                out.push(("exact_match", Json::Bool(rec == brute)));
            }
            let inputs = Json::obj(vec![
                ("q", Json::Int(*q as i128)),
                ("b", Json::Int(*b as i128)),
                ("ell", Json::Int(*ell as i128)),
                ("k", Json::Int(*k as i128)),
                ("rho", Json::Int(*rho as i128)),
                ("variant", Json::Str(format!("{variant:?}").to_lowercase())),
                ("node", Json::Int(*node as i128)),
            ]);
            Ok(artifact("gowers", seed, inputs, Json::Obj(out.into_iter().map(|(k, v)| (k.to_string(), v)).collect())).render())
        }
        Command::Graph { q, b, ell, k } => {
            let params = DigitParams::new(*q, *b, *ell)?;
            let graph = gowers::reachable_set(&params, *k, budget)?;
            Ok(graph.edge_list())
        }
        Command::Contraction { q, b, ell, k } => {
            let params = DigitParams::new(*q, *b, *ell)?;
            let graph = gowers::reachable_set(&params, *k, budget)?;
            let sync = gowers::synchronize_check(&graph)?;
            let c = gowers::contraction(&graph, budget)?;
            let inputs = Json::obj(vec![
                ("q", Json::Int(*q as i128)),
                ("b", Json::Int(*b as i128)),
                ("ell", Json::Int(*ell as i128)),
                ("k", Json::Int(*k as i128)),
            ]);
            let outputs = Json::obj(vec![
                ("nodes", Json::Int(graph.node_count() as i128)),
                ("sync_steps", Json::Int(sync as i128)),
                ("j", Json::Int(c.j as i128)),
                ("m", Json::Float(c.m)),
                ("bound", Json::Float(c.bound)),
                ("argmax_row", Json::Int(c.argmax_row as i128)),
            ]);
            Ok(artifact("contraction", seed, inputs, outputs).render())
        }
        Command::Farey { alpha, order } => {
            let a = parse_rational(alpha)?;
            let n = BigInt::from(parse_big(order)?);
            let (l, r) = farey::farey_neighbors(&a, &n)?;
            let rounded = farey::farey_round(&a, &n)?;
            let inputs = Json::obj(vec![
                ("alpha", Json::Str(alpha.clone())),
                ("order", Json::Str(order.clone())),
            ]);
            let frac = |f: &farey::FareyFraction| {
                Json::obj(vec![
                    ("p", Json::big(f.numer())),
                    ("q", Json::big(f.denom())),
                ])
            };
            let outputs = Json::obj(vec![
                ("left", frac(&l)),
                ("right", frac(&r)),
                ("rounded", frac(&rounded)),
            ]);
            Ok(artifact("farey", seed, inputs, outputs).render())
        }
        Command::Discrepancy { alpha, n, q, sum_exp } => match (q, sum_exp) {
            (Some(q), Some(m_exp)) => {
                let s = farey::discrepancy_sum(*q, *m_exp, *n, budget)?;
                let inputs = Json::obj(vec![
                    ("q", Json::Int(*q as i128)),
                    ("sum_exp", Json::Int(*m_exp as i128)),
                    ("N", Json::Int(*n as i128)),
                ]);
                let outputs = Json::obj(vec![
                    ("total", Json::rational(&s.total)),
                    ("total_float", Json::Float(s.total.to_f64().unwrap_or(f64::NAN))),
                    ("normalized", Json::Float(s.normalized)),
                ]);
                Ok(artifact("discrepancy", seed, inputs, outputs).render())
            }
            (None, None) => {
                let a = parse_rational(alpha)?;
                let d = farey::discrepancy(&a, *n, budget)?;
                let inputs = Json::obj(vec![
                    ("alpha", Json::Str(alpha.clone())),
                    ("N", Json::Int(*n as i128)),
                ]);
                let outputs = Json::obj(vec![
                    ("discrepancy", Json::rational(&d)),
                    ("discrepancy_float", Json::Float(d.to_f64().unwrap_or(f64::NAN))),
                ]);
                Ok(artifact("discrepancy", seed, inputs, outputs).render())
            }
            _ => Err(Error::precondition(
                "--q and --sum-exp must be given together",
            )),
        },
        Command::Exponents {
            q,
            b,
            epsilon,
            rho1,
            rho2,
            delta1,
            delta2,
            k,
            curve,
            lo,
            hi,
            samples,
            svg_out,
        } => {
            if *curve {
                let pts = exponents::eta_curve(*q, *b, *lo, *hi, *samples)?;
                if let Some(path) = svg_out {
                    let svg = crate::report::svg_line_plot(
                        &pts,
                        &format!("log eta(epsilon), q={q}, b={b}"),
                        "epsilon",
                        "log eta",
                    );
                    std::fs::write(path, svg)?;
                }
                let mut csv = Csv::new(&["epsilon", "log_eta"]);
                for (e, v) in &pts {
                    csv.push(vec![format_float(*e), format_float(*v)]);
                }
                return Ok(match format {
                    Format::Csv => csv.render(),
                    Format::Json => {
                        let rows = pts
                            .iter()
                            .map(|(e, v)| {
                                Json::obj(vec![
                                    ("epsilon", Json::Float(*e)),
                                    ("log_eta", Json::Float(*v)),
                                ])
                            })
                            .collect();
                        artifact(
                            "exponents",
                            seed,
                            Json::obj(vec![
                                ("q", Json::Int(*q as i128)),
                                ("b", Json::Int(*b as i128)),
                                ("lo", Json::Float(*lo)),
                                ("hi", Json::Float(*hi)),
                                ("samples", Json::Int(*samples as i128)),
                            ]),
                            Json::obj(vec![("curve", Json::Arr(rows))]),
                        )
                        .render()
                    }
                });
            }
            let mut out: Vec<(String, Json)> = Vec::new();
            out.push(("lambda".into(), Json::Float(exponents::gelfond_lambda(*q, *b)?)));
            let th = exponents::theta_q(*q)?;
            out.push(("m_q".into(), Json::Float(th.m_q)));
            out.push(("theta_q".into(), Json::Float(th.theta)));
            if let Some(e) = epsilon {
                let half = BigRational::new(BigInt::from(1), BigInt::from(2));
                if *e <= 0.5 {
                    let m = exponents::mmr_exponents(*q, *e, &half)?;
                    out.push(("theta_big".into(), Json::Float(m.theta_big)));
                    out.push(("eta_q".into(), Json::Float(m.eta_q)));
                    out.push(("gamma_q_literal".into(), Json::Float(m.gamma_q)));
                    out.push(("gamma_q_shifted".into(), Json::Float(m.gamma_q_shifted)));
                    out.push(("xi".into(), Json::Float(m.xi)));
                    out.push(("xi_literal".into(), Json::Float(m.xi_literal)));
                }
                if *q == 2 && *e < 0.5 {
                    let xp = exponents::xi_prime_2(*e)?;
                    out.push(("log_xi_prime_2".into(), Json::Float(xp.log_value)));
                }
                let e0 = exponents::eta_epsilon(*e, *q, *b)?;
                out.push(("log_eta_epsilon".into(), Json::Float(e0.log_eta)));
                out.push(("within_validity".into(), Json::Bool(e0.within_validity)));
            }
            if let (Some(r1), Some(r2)) = (rho1, rho2) {
                out.push((
                    "log_eta_rho".into(),
                    Json::Float(exponents::eta_rho(*r1, *r2, *q, *b)?),
                ));
                let e1 = exponents::eta1(*q, *b, *r1, *r2)?;
                out.push(("eta1_k".into(), Json::Int(e1.k as i128)));
                out.push(("log_eta0_kplus1".into(), Json::Float(e1.log_eta0)));
                out.push(("log_eta1".into(), Json::Float(e1.log_value)));
            }
            if let (Some(d1), Some(d2)) = (delta1, delta2) {
                out.push((
                    "log_eta_delta".into(),
                    Json::Float(exponents::eta_delta(*d1, *d2, *q, *b)?),
                ));
            }
            if let Some(kk) = k {
                let e0 = exponents::eta0(*q, *b, *kk)?;
                out.push(("eta0_sync".into(), Json::Int(e0.sync as i128)));
                out.push(("eta0_exponent".into(), Json::Int(e0.exponent as i128)));
                out.push(("log_eta0".into(), Json::Float(e0.log_closed)));
                out.push(("log_eta0_sharper".into(), Json::Float(e0.log_sharper)));
            }
            let inputs = Json::obj(vec![
                ("q", Json::Int(*q as i128)),
                ("b", Json::Int(*b as i128)),
                ("epsilon", epsilon.map_or(Json::Null, Json::Float)),
                ("rho1", rho1.map_or(Json::Null, Json::Float)),
                ("rho2", rho2.map_or(Json::Null, Json::Float)),
                ("delta1", delta1.map_or(Json::Null, Json::Float)),
                ("delta2", delta2.map_or(Json::Null, Json::Float)),
                ("k", k.map_or(Json::Null, |v| Json::Int(v as i128))),
            ]);
            Ok(artifact("exponents", seed, inputs, Json::Obj(out)).render())
        }
        Command::Figure3 { q, b, epsilon } => {
            let rep = exponents::figure3_report(*q, *b, epsilon)?;
            match format {
                Format::Csv => {
                    let mut csv = Csv::new(&[
                        "epsilon",
                        "reported_log_eta",
                        "computed_log_eta",
                        "reported_log_xi2",
                        "computed_log_xi2",
                    ]);
                    for r in &rep.rows {
                        let opt = |v: Option<f64>| v.map(format_float).unwrap_or_default();
                        csv.push(vec![
                            format_float(r.epsilon),
                            opt(r.reported_log_eta),
                            format_float(r.computed_log_eta),
                            opt(r.reported_log_xi),
                            opt(r.computed_log_xi),
                        ]);
                    }
                    Ok(csv.render())
                }
                Format::Json => {
                    let rows = rep
                        .rows
                        .iter()
                        .map(|r| {
                            Json::obj(vec![
                                ("epsilon", Json::Float(r.epsilon)),
                                ("reported_log_eta", r.reported_log_eta.map_or(Json::Null, Json::Float)),
                                ("computed_log_eta", Json::Float(r.computed_log_eta)),
                                ("reported_log_xi2", r.reported_log_xi.map_or(Json::Null, Json::Float)),
                                ("computed_log_xi2", r.computed_log_xi.map_or(Json::Null, Json::Float)),
                            ])
                        })
                        .collect();
                    let inputs = Json::obj(vec![
                        ("q", Json::Int(*q as i128)),
                        ("b", Json::Int(*b as i128)),
                    ]);
                    Ok(artifact("figure3", seed, inputs, Json::obj(vec![("rows", Json::Arr(rows))])).render())
                }
            }
        }
        Command::Params {
            q,
            b,
            rho1,
            rho2,
            nu,
            n_exp,
            eta0_override,
            a1_mu,
        } => {
            if let Some(mu) = a1_mu {
                let r = exponents::lemma_a1_ratios(*q, *b, *rho2, *mu, *eta0_override)?;
                let inputs = Json::obj(vec![
                    ("q", Json::Int(*q as i128)),
                    ("b", Json::Int(*b as i128)),
                    ("rho2", Json::Float(*rho2)),
                    ("mu", Json::Int(*mu as i128)),
                    ("eta0_override", eta0_override.map_or(Json::Null, Json::Float)),
                ]);
                let outputs = Json::obj(vec![
                    ("k", Json::Int(r.k as i128)),
                    ("eta0_used", Json::Float(r.eta0_used)),
                    ("ratio_rho_tilde", Json::Float(r.ratio_rho_tilde)),
                    ("ratio_gamma", Json::Float(r.ratio_gamma)),
                    ("ratio_rho", Json::Float(r.ratio_rho)),
                ]);
                return Ok(artifact("params", seed, inputs, outputs).render());
            }
            let (nu_s, n_exp_s, rho1_v) = match (nu, n_exp, rho1) {
                (Some(a), Some(b), Some(c)) => (a, b, c),
                _ => {
                    return Err(Error::precondition(
                        "params needs --nu, --n-exp, --rho1 (or --a1-mu for the ratio report)",
                    ))
                }
            };
            let input = exponents::SelectInput {
                q: *q,
                b: *b,
                nu: parse_big(nu_s)?,
                rho1: *rho1_v,
                rho2: *rho2,
                n_exp: parse_big(n_exp_s)?,
                eta0_override: *eta0_override,
            };
            let bundle = exponents::appendix_param_select(&input)?;
            let inputs = Json::obj(vec![
                ("q", Json::Int(*q as i128)),
                ("b", Json::Int(*b as i128)),
                ("nu", Json::Str(nu_s.clone())),
                ("rho1", Json::Float(*rho1_v)),
                ("rho2", Json::Float(*rho2)),
                ("n_exp", Json::Str(n_exp_s.clone())),
                ("eta0_override", eta0_override.map_or(Json::Null, Json::Float)),
            ]);
            let big = |x: &BigUint| Json::big(&BigInt::from(x.clone()));
            let outputs = Json::obj(vec![
                ("k", Json::Int(bundle.k as i128)),
                ("mu", big(&bundle.mu)),
                ("sigma", big(&bundle.sigma)),
                ("rho_tilde", big(&bundle.rho_tilde)),
                ("gamma", Json::Int(bundle.gamma as i128)),
                ("eta0_used", Json::Float(bundle.eta0_used)),
                ("t", big(&bundle.t_param)),
                ("h0", big(&bundle.h0)),
                ("lambda", big(&bundle.lambda)),
                ("rho", big(&bundle.rho)),
                (
                    "e_terms",
                    Json::Arr(
                        bundle
                            .e_terms
                            .iter()
                            .map(|t| {
                                Json::obj(vec![
                                    ("i", Json::Int(t.i as i128)),
                                    ("log_value", Json::Float(t.log_value)),
                                    (
                                        "exact",
                                        t.exact.as_ref().map_or(Json::Null, Json::rational),
                                    ),
                                ])
                            })
                            .collect(),
                    ),
                ),
                (
                    "violations",
                    Json::Arr(bundle.violations.iter().map(|v| Json::Str(v.clone())).collect()),
                ),
                ("passes", Json::Bool(bundle.passes())),
            ]);
            Ok(artifact("params", seed, inputs, outputs).render())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> Result<String> {
        let mut full = vec!["digitdist"];
        full.extend_from_slice(args);
        let cli = Cli::try_parse_from(full).map_err(|e| Error::precondition(e.to_string()))?;
        execute(cli)
    }

    #[test]
    fn count_subcommand_balanced_block() {
        let doc = run(&["count", "--q", "2", "--b", "2", "--z", "16"]).unwrap();
        let v = crate::report::read_json_artifact(&doc).unwrap();
        assert_eq!(v["outputs"]["count"], 8);
    }

    #[test]
    fn gowers_subcommand_with_oracle() {
        let doc = run(&[
            "gowers", "--q", "2", "--b", "2", "--k", "2", "--rho", "2", "--oracle",
        ])
        .unwrap();
        let v = crate::report::read_json_artifact(&doc).unwrap();
        assert!(v["outputs"]["difference"].as_f64().unwrap() < 1e-12);
        assert_eq!(v["outputs"]["exact_match"], true);
    }

    #[test]
    fn graph_subcommand_is_sorted_edge_list() {
        let doc = run(&["graph", "--q", "2", "--b", "2", "--k", "2"]).unwrap();
        let lines: Vec<&str> = doc.lines().collect();
        assert!(!lines.is_empty());
        for line in &lines {
            assert_eq!(line.split_whitespace().count(), 4);
        }
        let mut sorted = lines.clone();
        sorted.sort_by_key(|l| {
            let mut it = l.split_whitespace().map(|t| t.parse::<u64>().unwrap());
            (it.next().unwrap(), it.next().unwrap(), it.next().unwrap())
        });
        assert_eq!(lines, sorted);
    }

    #[test]
    fn figure3_csv_round_trips() {
        let doc = run(&["figure3", "--q", "2", "--b", "2", "--format", "csv"]).unwrap();
        let csv = crate::report::read_csv(&doc).unwrap();
        assert_eq!(csv.rows.len(), 7);
        assert_eq!(csv.header[0], "epsilon");
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("3/4").unwrap(), BigRational::new(3.into(), 4.into()));
        assert_eq!(parse_rational("-2").unwrap(), BigRational::from(BigInt::from(-2)));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn worker_count_does_not_change_bytes() {
        let a = run(&[
            "ld-sum", "--q", "2", "--b", "2", "--x", "256", "--epsilon", "0.5", "--workers", "1",
        ])
        .unwrap();
        let b = run(&[
            "ld-sum", "--q", "2", "--b", "2", "--x", "256", "--epsilon", "0.5", "--workers", "3",
        ])
        .unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn unknown_flag_is_usage_error() {
        let r = run(&["count", "--q", "2", "--b", "2", "--z", "4", "--bogus"]);
        assert!(r.is_err());
    }
}
