use clap::{Args, Parser, Subcommand};
use lperiodic::apoints::{enumerate, APointConfig};
use lperiodic::cplx::{format_complex, parse_complex};
use lperiodic::delta::{delta, log_delta, DeltaParams};
use lperiodic::lfunction::{eval_l, eval_l_afe, AfeParams, LEvalStrategy};
use lperiodic::periodic::character_decompose;
use lperiodic::specfun::EulerMaclaurinConfig;
use lperiodic::stats::{counting_report, mean_value_sum, power_sum, weyl_criterion_report, weyl_sum_unimodular};
use lperiodic::universality::{periodic_search, shift_search, ComplexGrid, PrimePhases, DEFAULT_RESOLUTION};
use lperiodic::C64;
use lperiodic_cli::config::{Format, ParityArg, RunConfig};
use lperiodic_cli::family::{first_points, parse_function, points_up_to, Family};
use lperiodic_cli::output::{to_json, Csv};
use lperiodic_cli::{repro, selftest, CliError, CliResult};
use serde_json::json;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "lperiodic", version, about = "Periodic Dirichlet series, their functional-equation factor and its a-points")]
struct Cli {
    /// key = value file supplying defaults for the flags below
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Worker threads (default: all cores)
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Emit CSV instead of JSON (columns listed per subcommand)
    #[arg(long, global = true)]
    csv: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Default)]
struct FamilyArgs {
    /// Period q of the coefficients
    #[arg(long)]
    q: Option<usize>,
    /// Parity of the coefficients: even or odd
    #[arg(long)]
    parity: Option<ParityArg>,
    /// Target value a, e.g. 1+0i or 0.5-2i
    #[arg(long, value_parser = parse_c64)]
    a: Option<C64>,
    /// JSONL a-point cache to read and extend
    #[arg(long)]
    cache: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate L(s; f). CSV columns: s,re,im
    Eval {
        /// Coefficients f(1),...,f(q) comma-separated, or @file.json
        #[arg(long, default_value = "1")]
        f: String,
        #[arg(long, value_parser = parse_c64)]
        s: C64,
        /// Also report the approximate functional equation (f must be a character)
        #[arg(long)]
        afe: bool,
    },
    /// Evaluate the factor Δ(s) for (q, parity). CSV columns: s,re,im
    Delta {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, value_parser = parse_c64)]
        s: C64,
    },
    /// Enumerate certified a-points in (T1, T2]. CSV columns: n,beta,gamma,residual
    Apoints {
        #[command(flatten)]
        family: FamilyArgs,
        /// Lower end (defaults to the cutoff t_a)
        #[arg(long)]
        t1: Option<f64>,
        #[arg(long)]
        t2: Option<f64>,
    },
    /// Count a-points up to T against the main term. CSV columns: T,computed,main_term
    Count {
        #[command(flatten)]
        family: FamilyArgs,
        /// One or more heights
        #[arg(long = "T", value_delimiter = ',', required = true)]
        t: Vec<f64>,
    },
    /// Σ L(δ_a; f) up to T. CSV columns: T,count,sum_re,sum_im,main_re,main_im
    Meanvalue {
        /// Coefficients of f; q and parity come from f
        #[arg(long, default_value = "1")]
        f: String,
        #[arg(long, value_parser = parse_c64)]
        a: Option<C64>,
        #[arg(long = "T")]
        t: f64,
        #[arg(long)]
        cache: Option<PathBuf>,
    },
    /// Σ x^{δ_a} over T < γ ≤ T'. CSV columns: x,T,T_prime,count,sum_re,sum_im,bound,c_fit
    Powersum {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, value_delimiter = ',', required = true)]
        x: Vec<f64>,
        #[arg(long = "T")]
        t: f64,
        /// Upper end (default 2T)
        #[arg(long = "T-prime")]
        t_prime: Option<f64>,
    },
    /// Star discrepancy and Weyl sums of the first N ordinates. CSV columns: alpha,N,star_discrepancy,passed
    Discrepancy {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, default_value_t = 5000)]
        n: usize,
        #[arg(long, value_delimiter = ',', default_value = "1")]
        alpha: Vec<f64>,
        #[arg(long, default_value_t = 10)]
        k_max: usize,
        /// Bases x for Σ_{N/2<n≤N} x^{iγ}
        #[arg(long, value_delimiter = ',')]
        x: Vec<f64>,
    },
    /// Shift search on a disc. CSV columns: n,gamma
    Universality {
        #[command(flatten)]
        family: FamilyArgs,
        /// Number of ordinates
        #[arg(long, default_value_t = 5000)]
        n: usize,
        /// ψ as comma-separated values or @file.json
        #[arg(long, default_value = "1")]
        psi: String,
        #[arg(long, value_parser = parse_c64, default_value = "0.75+0i")]
        center: C64,
        #[arg(long, default_value_t = 0.05)]
        radius: f64,
        #[arg(long, default_value_t = DEFAULT_RESOLUTION)]
        resolution: usize,
        /// Constant target h
        #[arg(long, value_parser = parse_c64, default_value = "1+0i")]
        h: C64,
        /// JSON array of complex strings, one per grid node (overrides --h)
        #[arg(long)]
        target: Option<PathBuf>,
        #[arg(long)]
        eps: Option<f64>,
        #[arg(long)]
        eta: Option<f64>,
        /// Prime-phase constraint for primes up to z
        #[arg(long)]
        z: Option<u64>,
        /// Phases ξ_p, one per prime up to z (default all 0)
        #[arg(long, value_delimiter = ',')]
        xi: Vec<f64>,
    },
    /// Run the sampled identity suites. CSV columns: suite,max_residual,tolerance,passed
    Selftest,
    /// Reproduce a theorem's acceptance row. CSV columns: criterion,name,passed
    Repro {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=5))]
        theorem: u8,
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long = "T", value_delimiter = ',')]
        t: Vec<f64>,
        #[arg(long)]
        n: Option<usize>,
    },
}

fn parse_c64(s: &str) -> Result<C64, String> {
    parse_complex(s).map_err(|e| e.to_string())
}

struct Ctx {
    cfg: RunConfig,
}

impl Ctx {
    fn family(&self, args: &FamilyArgs) -> CliResult<Family> {
        let q = args.q.or(self.cfg.q).unwrap_or(1);
        if q == 0 {
            return Err(CliError::Usage("q must be at least 1".into()));
        }
        let parity = args.parity.or(self.cfg.parity).unwrap_or(ParityArg::Even);
        let a = args.a.or(self.cfg.a).unwrap_or(C64::new(1.0, 0.0));
        Ok(Family::new(q, parity.sign(), a))
    }

    fn cache(&self, explicit: &Option<PathBuf>) -> Option<PathBuf> {
        explicit.clone().or_else(|| self.cfg.cache.clone())
    }
}

enum Emit {
    Json(String),
    Csv(String),
}

struct Outcome {
    emit: Emit,
    passed: bool,
}

impl Outcome {
    fn ok(emit: Emit) -> Self {
        Outcome { emit, passed: true }
    }
}

fn choose<T: serde::Serialize>(csv: bool, value: &T, table: impl FnOnce() -> Csv) -> Emit {
    if csv {
        Emit::Csv(table().render())
    } else {
        Emit::Json(to_json(value))
    }
}

fn run(cli: Cli) -> CliResult<Outcome> {
    let cfg = match &cli.config {
        Some(path) => std::fs::read_to_string(path)?.parse()?,
        None => RunConfig::default(),
    };
    let threads = cli.threads.or(cfg.threads);
    if let Some(n) = threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Usage(e.to_string()))?;
    }
    let csv = cli.csv || cfg.format == Some(Format::Csv);
    let ctx = Ctx { cfg };
    let c = |z: C64| format_complex(z);
    match cli.command {
        Command::Eval { f, s, afe } => {
            let f = parse_function(&f)?;
            let strategy = LEvalStrategy::default();
            let value = eval_l(s, &f, &strategy)?;
            let afe_value = if afe {
                let dec = character_decompose(&f)?;
                let live: Vec<_> = dec.terms.iter().filter(|(k, _)| k.norm() > 1e-12).collect();
                let [(k, chi)] = live.as_slice() else {
                    return Err(CliError::Usage("--afe needs f to be a multiple of a Dirichlet character".into()));
                };
                let r = eval_l_afe(s, chi, &AfeParams::balanced(f.q(), s.im)?)?;
                Some(json!({ "value": c(k * r.value), "error_estimate": k.norm() * r.error_estimate }))
            } else {
                None
            };
            let out = json!({
                "s": c(s),
                "value": c(value),
                "method": strategy.method_for(s),
                "afe": afe_value,
            });
            Ok(Outcome::ok(choose(csv, &out, || {
                let mut t = Csv::new(&["s", "re", "im"]);
                t.row([c(s), value.re.to_string(), value.im.to_string()]);
                t
            })))
        }
        Command::Delta { family, s } => {
            let fam = ctx.family(&family)?;
            let p = DeltaParams::new(fam.q, fam.delta)?;
            let d = delta(s, &p)?;
            let out = json!({ "s": c(s), "q": fam.q, "delta_sign": fam.delta, "delta": c(d), "log_delta": c(log_delta(s, &p)?) });
            Ok(Outcome::ok(choose(csv, &out, || {
                let mut t = Csv::new(&["s", "re", "im"]);
                t.row([c(s), d.re.to_string(), d.im.to_string()]);
                t
            })))
        }
        Command::Apoints { family, t1, t2 } => {
            let fam = ctx.family(&family)?;
            let t2 = t2.or(ctx.cfg.t2).ok_or_else(|| CliError::Usage("--t2 is required".into()))?;
            let t1 = t1.or(ctx.cfg.t1);
            let set = points_up_to(&fam, t2, ctx.cache(&family.cache).as_deref())?;
            let lo = t1.unwrap_or(set.t_a);
            set.require_covers(lo, t2)?;
            let pts = set.window(lo, t2);
            let out = json!({
                "family": fam,
                "t_a": set.t_a,
                "lower": lo,
                "upper": t2,
                "count": pts.len(),
                "points": pts,
            });
            Ok(Outcome::ok(choose(csv, &out, || {
                let mut t = Csv::new(&["n", "beta", "gamma", "residual"]);
                for p in pts {
                    t.row([p.n.to_string(), p.beta.to_string(), p.gamma.to_string(), p.residual.to_string()]);
                }
                t
            })))
        }
        Command::Count { family, t } => {
            let fam = ctx.family(&family)?;
            let t_max = t.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            let set = points_up_to(&fam, t_max, ctx.cache(&family.cache).as_deref())?;
            let p = fam.params()?;
            let mut reports = Vec::new();
            let mut passed = true;
            for &h in &t {
                let r = counting_report(&set, h)?;
                let contour = enumerate(&p, fam.a, set.t_a, h, &APointConfig::with_cutoff(set.t_a))?.certificate;
                passed &= r.within_bound && contour.count == r.computed as i64;
                reports.push(json!({ "report": r, "contour_count": contour.count }));
            }
            let out = json!({ "family": fam, "t_a": set.t_a, "counts": reports });
            Ok(Outcome {
                emit: choose(csv, &out, || {
                    let mut table = Csv::new(&["T", "computed", "main_term"]);
                    for r in &reports {
                        let r = &r["report"];
                        table.row([r["t"].to_string(), r["computed"].to_string(), r["main_term"].to_string()]);
                    }
                    table
                }),
                passed,
            })
        }
        Command::Meanvalue { f, a, t, cache } => {
            let f = parse_function(&f)?;
            let p = DeltaParams::from_function(&f)?;
            let a = a.or(ctx.cfg.a).unwrap_or(C64::new(1.0, 0.0));
            let fam = Family::new(p.q(), p.delta(), a);
            let set = points_up_to(&fam, t, ctx.cache(&cache).as_deref())?;
            let r = mean_value_sum(&set, &f, t, &EulerMaclaurinConfig::default())?;
            Ok(Outcome::ok(choose(csv, &r, || {
                let mut table = Csv::new(&["T", "count", "sum_re", "sum_im", "main_re", "main_im"]);
                table.row([t.to_string(), r.count.to_string(), r.sum.re.to_string(), r.sum.im.to_string(), r.main_term.re.to_string(), r.main_term.im.to_string()]);
                table
            })))
        }
        Command::Powersum { family, x, t, t_prime } => {
            let fam = ctx.family(&family)?;
            let tp = t_prime.unwrap_or(2.0 * t);
            let set = points_up_to(&fam, tp, ctx.cache(&family.cache).as_deref())?;
            let reports = x.iter().map(|&x| power_sum(&set, x, t, tp)).collect::<lperiodic::Result<Vec<_>>>()?;
            Ok(Outcome::ok(choose(csv, &reports, || {
                let mut table = Csv::new(&["x", "T", "T_prime", "count", "sum_re", "sum_im", "bound", "c_fit"]);
                for r in &reports {
                    let b = &r.budget;
                    table.row([
                        b.x.to_string(),
                        b.t.to_string(),
                        b.t_prime.to_string(),
                        r.count.to_string(),
                        r.sum.re.to_string(),
                        r.sum.im.to_string(),
                        b.reduced_bound.unwrap_or(b.full_bound).to_string(),
                        r.c_fit.to_string(),
                    ]);
                }
                table
            })))
        }
        Command::Discrepancy { family, n, alpha, k_max, x } => {
            let fam = ctx.family(&family)?;
            if n == 0 {
                return Err(CliError::Usage("--n must be positive".into()));
            }
            let set = first_points(&fam, n, ctx.cache(&family.cache).as_deref())?;
            let ords: Vec<f64> = set.points[..n].iter().map(|p| p.gamma).collect();
            let reports = alpha.iter().map(|&al| weyl_criterion_report(&ords, al, k_max)).collect::<lperiodic::Result<Vec<_>>>()?;
            let weyl = x.iter().map(|&x| weyl_sum_unimodular(&ords, fam.q, n / 2, x)).collect::<lperiodic::Result<Vec<_>>>()?;
            let out = json!({ "family": fam, "reports": reports, "weyl_sums": weyl });
            Ok(Outcome::ok(choose(csv, &out, || {
                let mut table = Csv::new(&["alpha", "N", "star_discrepancy", "passed"]);
                for r in &reports {
                    table.row([r.alpha.to_string(), r.n.to_string(), r.star_discrepancy.to_string(), r.passed.to_string()]);
                }
                table
            })))
        }
        Command::Universality { family, n, psi, center, radius, resolution, h, target, eps, eta, z, xi } => {
            let fam = ctx.family(&family)?;
            if n == 0 {
                return Err(CliError::Usage("--n must be positive".into()));
            }
            let psi = parse_function(&psi)?;
            let grid = ComplexGrid::disc(center, radius, resolution)?;
            let h: Vec<C64> = match target {
                Some(path) => {
                    let raw: Vec<String> = serde_json::from_str(&std::fs::read_to_string(path)?)?;
                    raw.iter().map(|v| parse_complex(v)).collect::<lperiodic::Result<_>>()?
                }
                None => vec![h; grid.nodes().len()],
            };
            let eps = eps.or(ctx.cfg.eps).unwrap_or(0.5);
            let eta = eta.or(ctx.cfg.eta).unwrap_or(eps);
            let set = first_points(&fam, n, ctx.cache(&family.cache).as_deref())?;
            let ords: Vec<f64> = set.points[..n].iter().map(|p| p.gamma).collect();
            let search = periodic_search(&psi, &h, &grid, &ords, eps, eta)?;
            let phased = match z {
                Some(z) => {
                    let count = lperiodic::arith::primes_up_to(z).len();
                    let xi = if xi.is_empty() { vec![0.0; count] } else { xi };
                    let phases = PrimePhases::new(z, xi)?;
                    Some(shift_search(&[(psi.clone(), h.clone())], &grid, &ords, eps, Some(&phases))?)
                }
                None => None,
            };
            let out = json!({ "family": fam, "grid_nodes": grid.nodes().len(), "search": search, "with_prime_phases": phased });
            Ok(Outcome::ok(choose(csv, &out, || {
                let mut table = Csv::new(&["n", "gamma"]);
                for &k in &search.psi.hits {
                    table.row([k.to_string(), ords[k - 1].to_string()]);
                }
                table
            })))
        }
        Command::Selftest => {
            let suites = selftest::run_all()?;
            let passed = suites.iter().all(|s| s.passed);
            Ok(Outcome {
                emit: choose(csv, &suites, || {
                    let mut table = Csv::new(&["suite", "max_residual", "tolerance", "passed"]);
                    for s in &suites {
                        table.row([s.name.to_string(), s.max_residual.to_string(), s.tolerance.to_string(), s.passed.to_string()]);
                    }
                    table
                }),
                passed,
            })
        }
        Command::Repro { theorem, family, t, n } => {
            let given = family.q.is_some() || family.a.is_some() || family.parity.is_some();
            let verdict = match theorem {
                1 => {
                    let families = if given { vec![ctx.family(&family)?] } else { repro::count_families() };
                    let heights = if t.is_empty() { repro::COUNT_HEIGHTS.to_vec() } else { t };
                    repro::theorem1(&families, &heights)?
                }
                2 => repro::theorem2(t.first().copied().unwrap_or(2000.0))?,
                3 => repro::theorem3(if t.is_empty() { &repro::POWER_HEIGHTS } else { &t }, &repro::POWER_BASES)?,
                4 => repro::theorem4(n.unwrap_or(5000))?,
                _ => repro::theorem5(n.unwrap_or(5000))?,
            };
            let passed = verdict.passed;
            Ok(Outcome {
                emit: choose(csv, &verdict, || {
                    let mut table = Csv::new(&["criterion", "name", "passed"]);
                    table.row([verdict.criterion.to_string(), verdict.name.to_string(), verdict.passed.to_string()]);
                    table
                }),
                passed,
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(Outcome { emit, passed }) => {
            match emit {
                Emit::Json(s) => println!("{s}"),
                Emit::Csv(s) => print!("{s}"),
            }
            ExitCode::from(if passed { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
