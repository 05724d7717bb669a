//! Command-line front end.
//!
//! Exit codes: 0 success, 1 verification or table mismatch, 2 usage error,
//! unsupported blocklength or I/O failure.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use crate::bounds::{bounds_row, heideman_bound, heideman_burrus_bound, nlog2n_rounded, reference};
use crate::classes::{check_blocklength, ClassDecomposition, Eigenvalue};
use crate::error::{Error, Result};
use crate::exec::{bench_plan, default_tolerance, verify_plan};
use crate::linalg::{rref, Matrix};
use crate::plan::{branch_matrices, complexity, compile_plan, BranchKind, FftPlan};
use crate::planfile::{load_plan, save_plan};
use crate::Rational;

#[derive(Debug, Parser)]
#[command(name = "laurent-fft", version, about = "Matrix Laurent series FFT plans for N divisible by 4")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List the residue classes of a blocklength.
    Classes { n: usize },
    /// Dump Re/Im of the class matrices and their reduced row echelon forms.
    Matrices {
        n: usize,
        /// Only this class index.
        #[arg(long, allow_hyphen_values = true)]
        m: Option<i64>,
        /// Also dump the paired branch matrices Re/Im(M_m ± M_-m).
        #[arg(long)]
        branches: bool,
    },
    /// Multiplication counts and bounds per blocklength.
    Complexity {
        /// Blocklengths or inclusive ranges `a..b`.
        #[arg(required = true)]
        specs: Vec<String>,
        #[arg(long, default_value_t = 4)]
        step: usize,
    },
    /// Heideman and Heideman-Burrus lower bounds.
    Bounds {
        #[arg(required = true)]
        specs: Vec<String>,
        #[arg(long, default_value_t = 1)]
        step: usize,
    },
    /// Compile a plan and write it as JSON.
    Plan {
        n: usize,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Check a plan against the direct DFT on seeded random inputs.
    Verify {
        n: usize,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        /// Defaults to 1e-10 for N <= 32 and 1e-9 above.
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Verify a saved plan instead of compiling one.
        #[arg(long)]
        plan: Option<PathBuf>,
    },
    /// Time plan execution against the direct DFT.
    Bench {
        n: usize,
        #[arg(long, default_value_t = 100)]
        reps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Reproduce a published complexity table.
    Table {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        which: u8,
    },
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CommandResult {
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl CommandResult {
    fn ok(stdout: String) -> Self {
        CommandResult {
            exit_code: 0,
            stdout,
            stderr: String::new(),
        }
    }

    fn usage(err: impl ToString) -> Self {
        CommandResult {
            exit_code: 2,
            stdout: String::new(),
            stderr: format!("error: {}\n", err.to_string()),
        }
    }
}

pub fn run<I, S>(args: I) -> CommandResult
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            let code = e.exit_code();
            return if code == 0 {
                CommandResult::ok(text)
            } else {
                CommandResult {
                    exit_code: 2,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    let outcome = match cli.command {
        Command::Classes { n } => cmd_classes(n),
        Command::Matrices { n, m, branches } => cmd_matrices(n, m, branches),
        Command::Complexity { specs, step } => parse_blocklengths(&specs, step, true).and_then(|ns| cmd_complexity(&ns)),
        Command::Bounds { specs, step } => parse_blocklengths(&specs, step, false).and_then(|ns| cmd_bounds(&ns)),
        Command::Plan { n, output } => cmd_plan(n, &output),
        Command::Verify {
            n,
            trials,
            tol,
            seed,
            plan,
        } => cmd_verify(n, trials, tol, seed, plan.as_deref()),
        Command::Bench { n, reps, seed } => cmd_bench(n, reps, seed),
        Command::Table { which } => cmd_table(which),
    };
    outcome.unwrap_or_else(CommandResult::usage)
}

/// Expands `a`, `a..b` (inclusive, stepping by `step`) tokens.
fn parse_blocklengths(specs: &[String], step: usize, need_quarter: bool) -> Result<Vec<usize>> {
    let bad = |s: &str| Error::PlanFormat(format!("bad blocklength or range {s:?}"));
    if step == 0 {
        return Err(bad("--step 0"));
    }
    let mut out = Vec::new();
    for spec in specs {
        let parse = |t: &str| t.trim().parse::<usize>().map_err(|_| bad(spec));
        match spec.split_once("..") {
            Some((a, b)) => {
                let (a, b) = (parse(a)?, parse(b.trim_start_matches('='))?);
                if a > b {
                    return Err(bad(spec));
                }
                out.extend((a..=b).step_by(step));
            }
            None => out.push(parse(spec)?),
        }
    }
    for &n in &out {
        if need_quarter {
            check_blocklength(n)?;
        } else if n == 0 {
            return Err(bad("0"));
        }
    }
    Ok(out)
}

fn cmd_classes(n: usize) -> Result<CommandResult> {
    let dec = ClassDecomposition::new(n)?;
    let mut s = String::new();
    for &m in dec.indices() {
        let class = dec.class(m)?;
        let members: Vec<String> = class.members.iter().map(ToString::to_string).collect();
        let coefs: Vec<String> = Eigenvalue::ALL.iter().map(ToString::to_string).collect();
        let tag = if dec.asymmetric_index() == Some(m) { "  (asymmetric)" } else { "" };
        writeln!(
            s,
            "C_{m} = ({}) -> W^{m} * ({}){tag}",
            members.join(", "),
            coefs.join(", ")
        )
        .unwrap();
    }
    Ok(CommandResult::ok(s))
}

fn dump(s: &mut String, title: &str, m: &Matrix<i8>) {
    let reduced = rref(&m.to_exact::<Rational>());
    writeln!(s, "{title}  rank {}", reduced.rank).unwrap();
    write!(s, "{m}").unwrap();
    writeln!(s, "rref {title}").unwrap();
    write!(s, "{}", reduced.rref).unwrap();
    writeln!(s).unwrap();
}

fn cmd_matrices(n: usize, only: Option<i64>, branches: bool) -> Result<CommandResult> {
    let dec = ClassDecomposition::new(n)?;
    let indices: Vec<i64> = match only {
        Some(m) if dec.get(m).is_some() => vec![m],
        Some(m) => return Err(Error::InvalidClassIndex { n, m }),
        None => dec.indices().to_vec(),
    };
    let mut s = String::new();
    for &m in &indices {
        let cm = dec.get(m).expect("index checked");
        dump(&mut s, &format!("Re(M_{m})"), &cm.re);
        dump(&mut s, &format!("Im(M_{m})"), &cm.im);
    }
    if branches {
        for &m in indices.iter().filter(|&&m| m > 0) {
            let b = branch_matrices(&dec, m)?;
            match b.kind {
                BranchKind::Symmetric => {
                    dump(&mut s, &format!("Re(M_{m} + M_-{m})"), &b.re_sum);
                    dump(&mut s, &format!("Re(M_{m} - M_-{m})"), &b.re_diff);
                    dump(&mut s, &format!("Im(M_{m} + M_-{m})"), &b.im_sum);
                    dump(&mut s, &format!("Im(M_{m} - M_-{m})"), &b.im_diff);
                }
                BranchKind::Asymmetric => {
                    dump(&mut s, &format!("Re(M_{m}) + Im(M_{m})"), &b.re_sum);
                    dump(&mut s, &format!("Im(M_{m}) - Re(M_{m})"), &b.im_diff);
                }
            }
        }
    }
    Ok(CommandResult::ok(s))
}

fn opt(v: Option<u64>) -> String {
    v.map_or_else(|| "-".to_string(), |x| x.to_string())
}

fn cmd_complexity(ns: &[usize]) -> Result<CommandResult> {
    let mut s = String::new();
    writeln!(s, "{:>4} {:>9} {:>9} {:>9} {:>7} {:>7}", "N", "N*log2N", "realized", "stacked", "mu_DFT", "mu_r").unwrap();
    for &n in ns {
        let report = complexity(&ClassDecomposition::new(n)?);
        let n64 = n as u64;
        writeln!(
            s,
            "{:>4} {:>9} {:>9} {:>9} {:>7} {:>7}",
            n,
            report.nlog2n,
            report.realized_total,
            report.eq6_total,
            heideman_bound(n64),
            opt(heideman_burrus_bound(n64).ok())
        )
        .unwrap();
    }
    Ok(CommandResult::ok(s))
}

fn cmd_bounds(ns: &[usize]) -> Result<CommandResult> {
    let mut s = String::new();
    writeln!(s, "{:>4} {:>9} {:>7} {:>7}", "N", "N*log2N", "mu_DFT", "mu_r").unwrap();
    for &n in ns {
        let row = bounds_row(n as u64);
        writeln!(
            s,
            "{:>4} {:>9} {:>7} {:>7}",
            row.n,
            row.nlog2n_rounded,
            row.heideman_mu,
            opt(row.heideman_burrus_mu)
        )
        .unwrap();
    }
    Ok(CommandResult::ok(s))
}

fn cmd_plan(n: usize, output: &std::path::Path) -> Result<CommandResult> {
    let plan = FftPlan::<f64>::compile(n)?;
    save_plan(&plan, output)?;
    Ok(CommandResult::ok(format!(
        "N={} mult_count={} add_count={} branches={} -> {}\n",
        plan.n(),
        plan.mult_count(),
        plan.add_count(),
        plan.branches().len(),
        output.display()
    )))
}

fn cmd_verify(n: usize, trials: usize, tol: Option<f64>, seed: u64, plan_path: Option<&std::path::Path>) -> Result<CommandResult> {
    let plan = match plan_path {
        Some(path) => {
            let plan = load_plan::<f64>(path)?;
            if plan.n() != n {
                return Err(Error::dims(format!("plan for N={n}"), format!("N={}", plan.n())));
            }
            plan
        }
        None => compile_plan(&ClassDecomposition::new(n)?)?,
    };
    if trials == 0 {
        return Err(Error::PlanFormat("--trials must be at least 1".into()));
    }
    let tolerance = tol.unwrap_or_else(|| default_tolerance(n));
    if !(tolerance > 0.0) {
        return Err(Error::PlanFormat("--tol must be positive".into()));
    }
    let r = verify_plan(&plan, trials, tolerance, seed);
    let mut s = String::new();
    writeln!(s, "N={} trials={} seed={} rng={} tol={:.2e}", r.n, r.trials, r.seed, r.rng, r.tolerance).unwrap();
    writeln!(s, "max_error={:.2e}", r.max_error).unwrap();
    writeln!(
        s,
        "mults={} per trial (plan {}), adds={} per trial",
        r.mults_per_trial,
        plan.mult_count(),
        r.totals.real_adds / r.trials
    )
    .unwrap();
    writeln!(s, "{}", if r.passed { "PASS" } else { "FAIL" }).unwrap();
    Ok(CommandResult {
        exit_code: if r.passed { 0 } else { 1 },
        stdout: s,
        stderr: String::new(),
    })
}

fn cmd_bench(n: usize, reps: usize, seed: u64) -> Result<CommandResult> {
    if reps == 0 {
        return Err(Error::PlanFormat("--reps must be at least 1".into()));
    }
    let plan = FftPlan::<f64>::compile(n)?;
    let r = bench_plan(&plan, reps, seed);
    let mut s = String::new();
    writeln!(s, "N={} reps={}", r.n, r.reps).unwrap();
    writeln!(s, "plan   median {:>10} ns  mults {}", r.plan_median.as_nanos(), r.plan_mults).unwrap();
    writeln!(s, "naive  median {:>10} ns  mults {}", r.naive_median.as_nanos(), r.naive_mults).unwrap();
    writeln!(s, "mult ratio {:.3e}", r.mult_ratio()).unwrap();
    Ok(CommandResult::ok(s))
}

fn status(got: u64, want: Option<u64>) -> (&'static str, bool) {
    match want {
        Some(w) if w == got => ("ok", true),
        Some(_) => ("MISMATCH", false),
        None => ("-", true),
    }
}

fn cmd_table(which: u8) -> Result<CommandResult> {
    let mut s = String::new();
    let mut all_ok = true;
    if which == 1 {
        writeln!(s, "Real multiplications, N = 4 (mod 8)").unwrap();
        writeln!(s, "{:>4} {:>9} {:>8} {:>9}  status", "N", "N*log2N", "Laurent", "reference").unwrap();
        for &(n, want) in &reference::LAURENT_ODD_QUARTER {
            let got = complexity(&ClassDecomposition::new(n as usize)?).realized_total as u64;
            let (st, ok) = status(got, Some(want));
            all_ok &= ok;
            writeln!(s, "{:>4} {:>9} {:>8} {:>9}  {st}", n, nlog2n_rounded(n), got, want).unwrap();
        }
    } else {
        writeln!(s, "Real non-trivial multiplications, N = 2^n (Rader-Brenner column is reference data)").unwrap();
        writeln!(
            s,
            "{:>4} {:>9} {:>13} {:>15} {:>8} {:>9}  status",
            "N", "N*log2N", "Rader-Brenner", "Heideman-Burrus", "Laurent", "reference"
        )
        .unwrap();
        for &(n, want) in &reference::LAURENT_POWER_OF_TWO {
            let got = complexity(&ClassDecomposition::new(n as usize)?).realized_total as u64;
            let hb = heideman_burrus_bound(n)?;
            let (st1, ok1) = status(got, Some(want));
            let (st2, ok2) = status(hb, reference::lookup(&reference::HEIDEMAN_BURRUS, n));
            all_ok &= ok1 && ok2;
            let st = if ok1 && ok2 { "ok" } else if !ok1 { st1 } else { st2 };
            writeln!(
                s,
                "{:>4} {:>9} {:>13} {:>15} {:>8} {:>9}  {st}",
                n,
                n * n.trailing_zeros() as u64,
                opt(reference::lookup(&reference::RADER_BRENNER, n)),
                hb,
                got,
                want
            )
            .unwrap();
        }
    }
    Ok(CommandResult {
        exit_code: if all_ok { 0 } else { 1 },
        stdout: s,
        stderr: String::new(),
    })
}
