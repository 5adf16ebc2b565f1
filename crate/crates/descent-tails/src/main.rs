//! Thin command-line front end over the `descent_tails` library: rate
//! points, exact pmf/tail values, bound comparisons, Parseval inversion and
//! Monte-Carlo summaries, with CSV or JSON-lines output for plotting.

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;

use descent_tails::bounds::BoundReport;
use descent_tails::exact::{self, ExactDistribution};
use descent_tails::num_util::ratio_to_f64;
use descent_tails::report::{self, OutputRecord};
use descent_tails::{cgf, inversion, simulate, QuadratureSpec};

#[derive(Parser)]
#[command(
    name = "descent-tails",
    about = "Tail probabilities, bounds and diagnostics for permutation descent counts",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve the saddlepoint equation at a level x and print the rate data.
    Solve {
        #[arg(long)]
        x: f64,
    },
    /// Exact pmf (--k) or upper-tail (--x) value, as a rational and decimal.
    Exact {
        #[arg(long)]
        n: u64,
        #[arg(long, conflicts_with = "x")]
        k: Option<u64>,
        #[arg(long)]
        x: Option<f64>,
    },
    /// One bound-comparison row at (n, x).
    Bounds {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        x: f64,
        #[arg(long, value_enum, default_value_t = Which::All)]
        which: Which,
    },
    /// Numerical tail inversion with an error report.
    Invert {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        x: f64,
        /// Relative tolerance for the inversion quadrature.
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Monte-Carlo summary of the martingale diagnostics.
    Simulate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        paths: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Time grid for the rescaled-trajectory covariances.
        #[arg(long, value_delimiter = ',', default_value = "0.25,0.5,0.75,1.0")]
        grid: Vec<f64>,
    },
    /// Bound-comparison table over a grid of sizes and levels.
    Table {
        #[arg(long = "n-list", value_delimiter = ',', required = true)]
        n_list: Vec<u64>,
        #[arg(long = "x-list", value_delimiter = ',', required = true)]
        x_list: Vec<f64>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Which {
    All,
    Sharp,
    Cid,
    Qn,
    Azuma,
    Chernoff,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

fn main() {
    // Die quietly when a downstream pipe closes mid-table.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    let status = match cli.command {
        Command::Solve { x } => cmd_solve(x),
        Command::Exact { n, k, x } => cmd_exact(n, k, x),
        Command::Bounds { n, x, which } => cmd_bounds(n, x, which),
        Command::Invert { n, x, tol } => cmd_invert(n, x, tol),
        Command::Simulate {
            n,
            paths,
            seed,
            grid,
        } => cmd_simulate(n, paths, seed, &grid),
        Command::Table {
            n_list,
            x_list,
            format,
        } => cmd_table(&n_list, &x_list, format),
    };
    std::process::exit(status);
}

fn fail(err: impl std::fmt::Display) -> i32 {
    eprintln!("error: {err}");
    1
}

fn cmd_solve(x: f64) -> i32 {
    match cgf::solve_saddlepoint(x) {
        Ok(rp) => {
            println!("x = {}", rp.x);
            println!("t_x = {}", rp.t);
            println!("I = {}", rp.rate);
            println!("sigma_sq = {}", rp.sigma_sq);
            0
        }
        Err(e) => fail(e),
    }
}

fn rational_line(numer: &BigUint, denom: &BigUint) -> String {
    format!("{numer}/{denom} \u{2248} {:.6}", ratio_to_f64(numer, denom))
}

fn cmd_exact(n: u64, k: Option<u64>, x: Option<f64>) -> i32 {
    let dist = match exact::eulerian_distribution(n) {
        Ok(d) => d,
        Err(e) => return fail(e),
    };
    match (k, x) {
        (Some(k), None) => {
            let (w, total) = exact::pmf_pair(&dist, k);
            println!("{}", rational_line(&w, &total));
            0
        }
        (None, Some(x)) => {
            if !(x > 0.0 && x < 1.0) {
                return fail("tail level must lie in (0,1)");
            }
            let (kmin, _) = descent_tails::lattice::ceil_and_frac(n, x);
            let numer: BigUint = dist.weights()[(kmin as usize).min(n as usize)..]
                .iter()
                .sum();
            println!("{}", rational_line(&numer, dist.total()));
            0
        }
        _ => fail("exact requires exactly one of --k or --x"),
    }
}

fn cmd_bounds(n: u64, x: f64, which: Which) -> i32 {
    let dist = exact::eulerian_distribution(n).ok();
    let rep = match BoundReport::compute(n, x, dist.as_ref()) {
        Ok(r) => r,
        Err(e) => return fail(e),
    };
    let rec = OutputRecord::from_report(&rep);
    match which {
        Which::All => {
            println!("{}", report::CSV_HEADER);
            println!("{}", report::to_csv_row(&rec));
            0
        }
        Which::Sharp => print_single("sharp", rec.sharp, Some(rec.log_sharp)),
        Which::Cid => print_single("cid", rec.cid, Some(rec.log_cid)),
        Which::Qn => print_single("qn", rec.qn, rec.log_qn),
        Which::Azuma => print_single("azuma", rec.azuma, rec.log_azuma),
        Which::Chernoff => print_single("chernoff", rec.chernoff, Some(rec.log_chernoff)),
    }
}

fn print_single(name: &str, linear: Option<f64>, log: Option<f64>) -> i32 {
    match log {
        Some(log) => {
            match linear {
                Some(v) => println!("{name} = {v:e} (log = {log})"),
                None => println!("{name} = underflow (log = {log})"),
            }
            0
        }
        None => fail(format!("{name} is not defined at this n")),
    }
}

fn cmd_invert(n: u64, x: f64, tol: f64) -> i32 {
    let spec = QuadratureSpec {
        rel_tol: tol,
        ..QuadratureSpec::default()
    };
    let inv = match inversion::parseval_tail(n, x, &spec) {
        Ok(v) => v,
        Err(e) => return fail(e),
    };
    println!("value = {:e}", inv.value);
    println!("log_value = {}", inv.log_value);
    println!("error <= {:e}", inv.error);
    println!("truncation_error <= {:e}", inv.truncation_error);
    println!("cut = {}", inv.cut);
    println!("panels = {}", inv.panels);
    if let Ok(dist) = exact::eulerian_distribution(n) {
        let exact_tail = exact::rational_as_f64(&dist.tail(x));
        println!("exact = {exact_tail:e}");
        println!("difference = {:e}", (inv.value - exact_tail).abs());
    }
    0
}

fn cmd_simulate(n: usize, paths: usize, seed: u64, grid: &[f64]) -> i32 {
    if n < 2 {
        return fail("simulate requires --n >= 2");
    }
    if paths < 100 {
        return fail("simulate requires --paths >= 100");
    }
    if grid.iter().any(|t| !t.is_finite() || *t <= 0.0) {
        return fail("grid times must be positive");
    }
    let summary = simulate::run_summary(n, paths, grid, seed);
    println!(
        "{}",
        serde_json::to_string_pretty(&summary).expect("summary serializes")
    );
    0
}

fn cmd_table(n_list: &[u64], x_list: &[f64], format: Format) -> i32 {
    if n_list.is_empty() || x_list.is_empty() {
        return fail("table requires nonempty --n-list and --x-list");
    }
    // One work item per size; each yields the rows for every level, so the
    // expensive exact distribution is built once per size.
    let threads = thread_budget(n_list.len());
    let mut slots: Vec<Option<Vec<Result<OutputRecord, String>>>> =
        (0..n_list.len()).map(|_| None).collect();
    {
        let next = std::sync::atomic::AtomicUsize::new(0);
        let slots_mx = std::sync::Mutex::new(&mut slots);
        std::thread::scope(|scope| {
            for _ in 0..threads {
                scope.spawn(|| loop {
                    let i = next.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                    if i >= n_list.len() {
                        break;
                    }
                    let rows = table_rows_for_size(n_list[i], x_list);
                    slots_mx.lock().unwrap()[i] = Some(rows);
                });
            }
        });
    }

    match format {
        Format::Csv => println!("{}", report::CSV_HEADER),
        Format::Json => {}
    }
    let mut failures = 0usize;
    for (i, group) in slots.into_iter().enumerate() {
        let group = group.expect("all slots filled");
        for (j, row) in group.into_iter().enumerate() {
            match row {
                Ok(rec) => match format {
                    Format::Csv => println!("{}", report::to_csv_row(&rec)),
                    Format::Json => println!("{}", report::to_json_line(&rec)),
                },
                Err(msg) => {
                    eprintln!("error: row (n = {}, x = {}): {msg}", n_list[i], x_list[j]);
                    failures += 1;
                }
            }
        }
    }
    if failures > 0 {
        1
    } else {
        0
    }
}

fn table_rows_for_size(n: u64, x_list: &[f64]) -> Vec<Result<OutputRecord, String>> {
    // Sizes beyond the exact cap still get bounds, just no exact column.
    let dist: Option<ExactDistribution> = exact::eulerian_distribution(n).ok();
    x_list
        .iter()
        .map(|&x| {
            BoundReport::compute(n, x, dist.as_ref())
                .map(|rep| OutputRecord::from_report(&rep))
                .map_err(|e| e.to_string())
        })
        .collect()
}

/// Worker count: capped by DESCENT_TAILS_THREADS when set, else the
/// available parallelism, and never more than the number of work items.
fn thread_budget(items: usize) -> usize {
    let available = std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1);
    let cap = std::env::var("DESCENT_TAILS_THREADS")
        .ok()
        .and_then(|s| s.parse::<usize>().ok())
        .filter(|&t| t >= 1)
        .unwrap_or(available);
    cap.min(available).min(items).max(1)
}
