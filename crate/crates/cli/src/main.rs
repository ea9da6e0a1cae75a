//! `qgroth`: compute, expand, verify and tabulate quantum Grothendieck polynomials.
//!
//! Exit codes: 0 success, 1 verification counterexample, 2 usage error, 3 expansion guard.

mod output;
mod verify;

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use qgroth::classical::{default_guard, dual_grothendieck, expand_grothendieck_with_guard, expand_schubert, grothendieck, schubert};
use qgroth::doublepoly::{double_grothendieck, qd_grothendieck, qd_schubert};
use qgroth::expand::{expand_qgrothendieck_with_guard, expand_qschubert_with_guard, gw_invariants_with_guard, sign_alternation, SignReading};
use qgroth::quantumbasis::{f_quantum, g_quantum, hat_e, quantum_e, quantum_grothendieck, quantum_schubert, Variant};
use qgroth::{Permutation, Polynomial};
use rayon::prelude::*;

use output::{perm_label, Format, TableFormat};
use verify::Identity;

#[derive(Parser)]
#[command(name = "qgroth", version, about = "Quantum Grothendieck polynomials in exact arithmetic")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print one polynomial.
    Compute {
        #[arg(long, value_enum)]
        family: Family,
        /// Permutation in one-line notation, e.g. `2,1,3` or `213`.
        #[arg(long)]
        perm: Option<String>,
        #[arg(long)]
        p: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        /// Working `n`; defaults to the size of the permutation.
        #[arg(long)]
        n: Option<usize>,
        /// Specialization for the `(p, k)` families.
        #[arg(long, value_enum, default_value = "plain")]
        variant: VariantArg,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Expand a polynomial, given as JSON, in one of the bases.
    Expand {
        #[arg(long, value_enum)]
        basis: BasisArg,
        /// Polynomial JSON file; `-` or absent reads standard input.
        input: Option<PathBuf>,
        /// Iteration guard; overrides QGROTH_GUARD.
        #[arg(long)]
        guard: Option<usize>,
    },
    /// Coefficients N_{uv}^w(d) of the quantum Grothendieck product, with the sign check.
    Invariants {
        #[arg(long)]
        u: String,
        #[arg(long)]
        v: String,
        /// Width used to print permutations; widened when the expansion needs more.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, value_enum, default_value = "graded")]
        reading: ReadingArg,
        #[arg(long, value_enum, default_value = "csv")]
        format: TableFormat,
        #[arg(long)]
        guard: Option<usize>,
    },
    /// Check an identity over a range of instances.
    Verify {
        #[arg(long, value_enum)]
        identity: Identity,
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        p: Option<usize>,
    },
    /// Term counts over all of S_n.
    Table {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        n: usize,
        /// Print only the maxima and the permutations attaining them.
        #[arg(long)]
        stats: bool,
        /// Add the polynomials themselves.
        #[arg(long)]
        dump: bool,
        #[arg(long, value_enum, default_value = "csv")]
        format: TableFormat,
        /// Largest n accepted.
        #[arg(long, default_value_t = 5)]
        max_n: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Family {
    Schubert,
    Grothendieck,
    Dual,
    Qschubert,
    Qgrothendieck,
    DoubleGrothendieck,
    QdSchubert,
    QdGrothendieck,
    #[value(name = "E")]
    E,
    #[value(name = "F")]
    F,
    #[value(name = "Ehat")]
    Ehat,
    #[value(name = "G")]
    G,
}

impl Family {
    fn indexed_by_pk(self) -> bool {
        matches!(self, Family::E | Family::F | Family::Ehat | Family::G)
    }

    fn of_perm(self, w: &Permutation, n: usize) -> Polynomial {
        match self {
            Family::Schubert => schubert(w),
            Family::Grothendieck => grothendieck(w),
            Family::Dual => dual_grothendieck(w, n),
            Family::Qschubert => quantum_schubert(w),
            Family::Qgrothendieck => quantum_grothendieck(w),
            Family::DoubleGrothendieck => double_grothendieck(w, n),
            Family::QdSchubert => qd_schubert(w, n),
            Family::QdGrothendieck => qd_grothendieck(w, n),
            Family::E | Family::F | Family::Ehat | Family::G => unreachable!("indexed by (p, k)"),
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum VariantArg {
    Plain,
    Bar,
    Tilde,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum BasisArg {
    Schubert,
    Grothendieck,
    Qschubert,
    Qgrothendieck,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ReadingArg {
    Graded,
    Literal,
}

/// Failure that ends the process with a nonzero code.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Guard(String),
}

impl From<qgroth::Error> for Failure {
    fn from(e: qgroth::Error) -> Self {
        match e {
            qgroth::Error::IterationGuard(_) => Failure::Guard(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type Outcome = Result<u8, Failure>;

fn parse_perm(s: &str) -> Result<Permutation, Failure> {
    s.parse().map_err(|e: qgroth::Error| Failure::Usage(e.to_string()))
}

/// `QGROTH_GUARD` when set, otherwise `None`.
fn env_guard() -> Result<Option<usize>, Failure> {
    match std::env::var("QGROTH_GUARD") {
        Ok(s) => s.trim().parse().map(Some).map_err(|_| Failure::Usage(format!("QGROTH_GUARD must be a positive integer, got {s:?}"))),
        Err(_) => Ok(None),
    }
}

fn guard_for(flag: Option<usize>, f: &Polynomial) -> Result<usize, Failure> {
    Ok(match flag {
        Some(g) => g,
        None => env_guard()?.unwrap_or_else(|| default_guard(f)),
    })
}

fn compute(family: Family, perm: Option<String>, p: Option<usize>, k: Option<usize>, n: Option<usize>, variant: VariantArg, format: Format) -> Outcome {
    let poly = if family.indexed_by_pk() {
        let (Some(p), Some(k)) = (p, k) else {
            return Err(Failure::Usage(format!("--family {family:?} needs --p and --k")));
        };
        let v = match variant {
            VariantArg::Plain => Variant::Plain,
            VariantArg::Bar => Variant::Bar,
            VariantArg::Tilde => Variant::Tilde,
        };
        match (family, v) {
            (Family::F, _) => f_quantum(p, k, v),
            (_, Variant::Tilde) => return Err(Failure::Usage("--variant tilde applies to F only".into())),
            (Family::E, Variant::Plain) => quantum_e(p, k),
            (Family::E, _) => return Err(Failure::Usage("E has no specialized variant".into())),
            (Family::Ehat, _) => hat_e(p, k, v),
            _ => g_quantum(p, k, v),
        }
    } else {
        let Some(perm) = perm else {
            return Err(Failure::Usage(format!("--family {family:?} needs --perm")));
        };
        let w = parse_perm(&perm)?;
        let n = n.unwrap_or(w.size()).max(w.size());
        family.of_perm(&w, n)
    };
    println!("{}", output::polynomial(&poly, format));
    Ok(0)
}

fn expand(basis: BasisArg, input: Option<PathBuf>, guard: Option<usize>) -> Outcome {
    let text = match input.as_deref().filter(|p| p.as_os_str() != "-") {
        Some(path) => std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?,
        None => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map_err(|e| Failure::Usage(format!("cannot read standard input: {e}")))?;
            s
        }
    };
    let f: Polynomial = serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("invalid polynomial JSON: {e}")))?;
    let guard = guard_for(guard, &f)?;
    let e = match basis {
        BasisArg::Schubert => {
            if f.involves(qgroth::Family::Y) {
                return Err(Failure::Usage("the Schubert expansion takes polynomials in x and q only".into()));
            }
            expand_schubert(&f)
        }
        BasisArg::Grothendieck => expand_grothendieck_with_guard(&f, guard)?,
        BasisArg::Qschubert => expand_qschubert_with_guard(&f, guard)?,
        BasisArg::Qgrothendieck => expand_qgrothendieck_with_guard(&f, guard)?,
    };
    println!("{}", serde_json::to_string(&e).expect("expansions serialize"));
    Ok(0)
}

fn invariants(u: &str, v: &str, n: Option<usize>, reading: ReadingArg, format: TableFormat, guard: Option<usize>) -> Outcome {
    let (u, v) = (parse_perm(u)?, parse_perm(v)?);
    let guard = match guard {
        Some(g) => Some(g),
        None => env_guard()?,
    };
    let inv = gw_invariants_with_guard(&u, &v, guard)?;
    let reading = match reading {
        ReadingArg::Graded => SignReading::Graded,
        ReadingArg::Literal => SignReading::Literal,
    };
    let report = sign_alternation(&inv, &u, &v, reading);
    let width = inv.keys().map(|(w, _)| w.size()).chain([u.size(), v.size(), n.unwrap_or(1)]).max().unwrap_or(1);
    let rows: Vec<output::InvariantRow> = report
        .entries
        .iter()
        .map(|e| output::InvariantRow {
            w: perm_label(&e.w, width),
            d: output::multidegree(&e.d, width),
            n: e.n.clone(),
            sign_check: if e.pass { "pass" } else { "fail" },
            conjectural: true,
        })
        .collect();
    print!("{}", output::invariants(&u, &v, width, reading, &rows, report.all_pass, format));
    Ok(0)
}

#[derive(serde::Serialize)]
struct TableRow {
    w: String,
    length: usize,
    terms: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    polynomial: Option<String>,
}

fn table(family: Family, n: usize, stats: bool, dump: bool, format: TableFormat, max_n: usize) -> Outcome {
    if family.indexed_by_pk() {
        return Err(Failure::Usage(format!("--family {family:?} is indexed by (p, k), not by permutations")));
    }
    if n == 0 || n > max_n {
        return Err(Failure::Usage(format!("n = {n} is outside 1..={max_n}; raise --max-n to go further")));
    }
    let perms = Permutation::all(n);
    let polys: Vec<Polynomial> = perms.par_iter().map(|w| family.of_perm(w, n)).collect();
    let rows: Vec<TableRow> = perms
        .iter()
        .zip(&polys)
        .map(|(w, f)| TableRow { w: perm_label(w, n), length: w.length(), terms: f.num_terms(), polynomial: dump.then(|| f.to_string()) })
        .collect();
    let out = if stats {
        let max = rows.iter().map(|r| r.terms).max().unwrap_or(0);
        let attained: Vec<&str> = rows.iter().filter(|r| r.terms == max).map(|r| r.w.as_str()).collect();
        let total: usize = rows.iter().map(|r| r.terms).sum();
        output::stats(&format!("{family:?}").to_lowercase(), n, rows.len(), max, &attained, total, format)
    } else {
        output::rows(&rows, format)
    };
    print!("{out}");
    Ok(0)
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Compute { family, perm, p, k, n, variant, format } => compute(family, perm, p, k, n, variant, format),
        Command::Expand { basis, input, guard } => expand(basis, input, guard),
        Command::Invariants { u, v, n, reading, format, guard } => invariants(&u, &v, n, reading, format, guard),
        Command::Verify { identity, n, k, p } => verify::run(identity, n, k, p),
        Command::Table { family, n, stats, dump, format, max_n } => table(family, n, stats, dump, format, max_n),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(msg)) => {
            eprintln!("qgroth: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Guard(msg)) => {
            eprintln!("qgroth: {msg}");
            ExitCode::from(3)
        }
    }
}
