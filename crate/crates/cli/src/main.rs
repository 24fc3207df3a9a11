//! `balsym`: batch front end for the balsym library.
//!
//! Exit codes: 0 success, 2 conjecture counterexample, 64 usage,
//! 65 budget exceeded, 70 internal invariant failure.

mod report;

use std::io::{self, Write};
use std::process::ExitCode;
use std::time::Instant;

use balsym::bisect::{bisection_from_solution, find_all_solutions};
use balsym::census::{
    bound_hypothesis_holds, count_balanced_all, count_symmetric, generate_balanced,
    lower_bound_balanced,
};
use balsym::conjectures::{
    scan_conjecture1_row, scan_conjecture2_row, DeficitCell, ScanCell, SCAN1_MAX_N, SCAN2_MAX_N,
};
use balsym::exactnum::{lacunary_exact, lacunary_trig};
use balsym::spectral::{is_sac_elem, WalshSpectrum};
use balsym::symfun::{elem_values, is_balanced_elem, weight_elem};
use balsym::Error;
use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use report::{Format, Report};

const EXIT_COUNTEREXAMPLE: u8 = 2;
const EXIT_USAGE: u8 = 64;
const EXIT_BUDGET: u8 = 65;
const EXIT_INTERNAL: u8 = 70;

#[derive(Parser, Debug)]
#[command(name = "balsym", version, about = "Balanced symmetric functions: exact counts, weights, spectra and scans")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    /// Worker threads for parallel sections.
    #[arg(long, global = true)]
    workers: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Weight of X(d, n).
    Weight { d: u64, n: u64 },
    /// Whether X(d, n) is balanced.
    Balanced { d: u64, n: u64 },
    /// Whether X(d, n) satisfies the strict avalanche criterion.
    Sac { d: u64, n: u64 },
    /// Walsh spectrum of X(d, n) by input weight.
    Walsh { d: u64, n: u64 },
    /// Signed bisections of row n of Pascal's triangle.
    Bisect {
        n: u64,
        /// List every nontrivial solution.
        #[arg(long)]
        enumerate: bool,
    },
    /// Numbers of symmetric and of balanced functions over GF(p).
    Count { p: u64, n: u64 },
    /// Orbit-splitting lower bound on balanced symmetric functions.
    LowerBound { p: u64, n: u64 },
    /// Balanced symmetric functions built by splitting orbits.
    Generate {
        p: u64,
        n: u64,
        #[arg(long, default_value_t = 10)]
        limit: usize,
    },
    /// Balanced X(d, n) for 2 <= d <= n <= N against the known family.
    ScanC1 {
        #[arg(long, default_value_t = 64)]
        n_max: u64,
    },
    /// wt(X(d, n)) < 2^(n-2) for wt(d) >= 6 and 2(d-1) <= n <= N.
    ScanC2 {
        #[arg(long, default_value_t = 160)]
        n_max: u64,
    },
    /// Sum of C(n, j) over j = i mod 2^power, exactly and by its cosine form.
    Lacunary { n: u64, power: u32, i: u64 },
}

enum Failure {
    Lib(Error),
    Usage(String),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Io(e.into())
    }
}

type Outcome = Result<bool, Failure>;

fn big(v: impl ToString) -> Value {
    Value::String(v.to_string())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let outcome = match cli.workers {
        Some(0) => Err(Failure::Usage("--workers must be at least 1".into())),
        Some(k) => match rayon::ThreadPoolBuilder::new().num_threads(k).build() {
            Ok(pool) => pool.install(|| run(&cli)),
            Err(e) => Err(Failure::Usage(format!("cannot start {k} workers: {e}"))),
        },
        None => run(&cli),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_COUNTEREXAMPLE),
        // downstream closed the pipe; nothing left to report to
        Err(Failure::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(f) => {
            let (code, msg) = match f {
                Failure::Usage(m) => (EXIT_USAGE, m),
                Failure::Io(e) => (EXIT_INTERNAL, format!("i/o error: {e}")),
                Failure::Lib(e) => {
                    let code = match e {
                        Error::Budget(_) => EXIT_BUDGET,
                        Error::Invariant(_) => EXIT_INTERNAL,
                        _ => EXIT_USAGE,
                    };
                    (code, e.to_string())
                }
            };
            eprintln!("balsym: {msg}");
            ExitCode::from(code)
        }
    }
}

fn run(cli: &Cli) -> Outcome {
    let start = Instant::now();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let report = match cli.command {
        Command::ScanC1 { n_max } => return scan_c1(n_max, cli.format, start, &mut out),
        Command::ScanC2 { n_max } => return scan_c2(n_max, cli.format, start, &mut out),
        ref other => single(other)?,
    };
    report.emit(cli.format, start.elapsed().as_millis(), &mut out)?;
    Ok(true)
}

fn require_degree(d: u64, n: u64) -> Result<(), Failure> {
    if d == 0 || d > n {
        return Err(Failure::Usage(format!("need 1 <= d <= n, got d={d}, n={n}")));
    }
    Ok(())
}

fn single(cmd: &Command) -> Result<Report, Failure> {
    let report = match *cmd {
        Command::Weight { d, n } => {
            require_degree(d, n)?;
            let mut r = Report::new("weight").param("d", d).param("n", n);
            r.set("weight", big(weight_elem(d, n)));
            r
        }
        Command::Balanced { d, n } => {
            let balanced = is_balanced_elem(d, n)?;
            let mut r = Report::new("balanced").param("d", d).param("n", n);
            r.set("d", d);
            r.set("n", n);
            r.set("weight", big(weight_elem(d, n)));
            r.set("balanced", balanced);
            r
        }
        Command::Sac { d, n } => {
            let sac = is_sac_elem(d, n)?;
            let mut r = Report::new("sac").param("d", d).param("n", n);
            r.set("sac", sac);
            r
        }
        Command::Walsh { d, n } => {
            let spectrum = WalshSpectrum::of(&elem_values(d, n)?);
            let rows: Vec<Value> = spectrum
                .by_weight
                .iter()
                .enumerate()
                .map(|(y, w)| json!({"y": y, "walsh": big(w)}))
                .collect();
            let mut r = Report::new("walsh").param("d", d).param("n", n);
            r.set("parseval", spectrum.parseval_holds());
            r.set("rows", rows);
            r
        }
        Command::Bisect { n, enumerate } => {
            let rep = find_all_solutions(n, enumerate)?;
            let mut r = Report::new("bisect").param("n", n).param("enumerate", enumerate);
            r.set("total", big(&rep.total));
            r.set("trivial", big(&rep.trivial));
            r.set("nontrivial", big(&rep.nontrivial));
            if let Some(ws) = rep.witnesses {
                let rows = ws
                    .iter()
                    .map(|w| {
                        let b = bisection_from_solution(w)?;
                        Ok(json!({"signs": w.to_string(), "plus": b.plus, "minus": b.minus}))
                    })
                    .collect::<Result<Vec<Value>, Error>>()?;
                r.set("witnesses", rows);
            }
            r
        }
        Command::Count { p, n } => {
            let symmetric = count_symmetric(p, n)?;
            let mut r = Report::new("count").param("p", p).param("n", n);
            r.set("symmetric", big(symmetric));
            match count_balanced_all(p, n) {
                Ok(b) => r.set("balanced_all", big(b)),
                Err(Error::Budget(_)) => r.set("balanced_all", Value::Null),
                Err(e) => return Err(e.into()),
            }
            r
        }
        Command::LowerBound { p, n } => {
            let bound = lower_bound_balanced(p, n)?;
            let mut r = Report::new("lower-bound").param("p", p).param("n", n);
            r.set("hypothesis", bound_hypothesis_holds(p, n)?);
            r.set("lower_bound", big(bound));
            r
        }
        Command::Generate { p, n, limit } => {
            let rows = generate_balanced(p, n, limit)?
                .enumerate()
                .map(|(k, f)| {
                    if !f.is_balanced()? {
                        return Err(Error::Invariant(format!("generated function {k} is not balanced")));
                    }
                    let values: String = f.values.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ");
                    Ok(json!({"index": k, "values": values}))
                })
                .collect::<Result<Vec<Value>, Error>>()?;
            let mut r = Report::new("generate")
                .param("p", p)
                .param("n", n)
                .param("limit", limit);
            r.set("generated", rows.len());
            r.set("rows", rows);
            r
        }
        Command::Lacunary { n, power, i } => {
            let exact = lacunary_exact(n, power, i)?;
            let trig = lacunary_trig(n, power, i)?;
            let err = trig.abs_error_to(&exact.clone().into());
            let mut r = Report::new("lacunary")
                .param("n", n)
                .param("power", power)
                .param("i", i);
            r.set("exact", big(&exact));
            r.set("trig", format!("{trig:.6}"));
            r.set("abs_error", err);
            r
        }
        Command::ScanC1 { .. } | Command::ScanC2 { .. } => unreachable!("scans stream"),
    };
    Ok(report)
}

const HEADER: [&str; 5] = ["d", "n", "weight", "balanced", "predicted"];

fn write_csv(out: &mut dyn Write, records: impl IntoIterator<Item = Vec<String>>) -> Result<(), Failure> {
    let mut w = csv::Writer::from_writer(out);
    for rec in records {
        w.write_record(rec)?;
    }
    w.flush()?;
    Ok(())
}

fn cell_row(c: &ScanCell) -> Vec<String> {
    vec![
        c.d.to_string(),
        c.n.to_string(),
        c.weight.to_string(),
        c.balanced.to_string(),
        c.predicted.to_string(),
    ]
}

fn cell_json(c: &ScanCell) -> Value {
    json!({"d": c.d, "n": c.n, "weight": big(&c.weight), "balanced": c.balanced, "predicted": c.predicted})
}

/// Rows are computed one `n` at a time and written as soon as each is done.
fn scan_c1(n_max: u64, format: Format, start: Instant, out: &mut dyn Write) -> Outcome {
    if n_max > SCAN1_MAX_N {
        return Err(Error::Budget(format!("scan capped at n = {SCAN1_MAX_N}")).into());
    }
    if format == Format::Csv {
        write_csv(out, [HEADER.iter().map(|h| h.to_string()).collect()])?;
    }
    let mut cells = Vec::new();
    let mut bad = Vec::new();
    let mut checked = 0u64;
    for n in 2..=n_max {
        let row = scan_conjecture1_row(n);
        checked += row.len() as u64;
        for c in &row {
            if !c.agrees() {
                bad.push(cell_json(c));
            }
        }
        match format {
            Format::Csv => {
                write_csv(out, row.iter().map(cell_row))?;
            }
            Format::Text => {
                let w = &mut *out;
                for c in row.iter().filter(|c| c.balanced || !c.agrees()) {
                    let tag = if c.agrees() { "balanced" } else { "COUNTEREXAMPLE" };
                    writeln!(w, "{tag}: X({},{}) weight={}", c.d, c.n, c.weight)?;
                }
                w.flush()?;
            }
            Format::Json => cells.extend(row.iter().map(cell_json)),
        }
    }
    let ok = bad.is_empty();
    match format {
        Format::Text => {
            writeln!(out, "cells: {checked}")?;
            writeln!(out, "counterexamples: {}", bad.len())?;
        }
        Format::Csv => {}
        Format::Json => {
            let mut r = Report::new("scan-c1").param("n_max", n_max);
            r.set("cells", checked);
            r.set("counterexamples", bad);
            r.set("rows", cells);
            r.emit(format, start.elapsed().as_millis(), out)?;
        }
    }
    Ok(ok)
}

fn scan_c2(n_max: u64, format: Format, start: Instant, out: &mut dyn Write) -> Outcome {
    if n_max > SCAN2_MAX_N {
        return Err(Error::Budget(format!("scan capped at n = {SCAN2_MAX_N}")).into());
    }
    if format == Format::Csv {
        let header = HEADER.iter().chain(&["deficit"]).map(|h| h.to_string()).collect();
        write_csv(out, [header])?;
    }
    let json_of = |c: &DeficitCell| {
        let mut v = cell_json(&c.cell);
        v["deficit"] = big(&c.deficit);
        v
    };
    let mut cells = Vec::new();
    let mut bad = Vec::new();
    let mut checked = 0u64;
    for n in 2..=n_max {
        let row = scan_conjecture2_row(n);
        checked += row.len() as u64;
        bad.extend(row.iter().filter(|c| !c.holds()).map(json_of));
        match format {
            Format::Csv => {
                write_csv(
                    out,
                    row.iter().map(|c| {
                        let mut rec = cell_row(&c.cell);
                        rec.push(c.deficit.to_string());
                        rec
                    }),
                )?;
            }
            Format::Text => {
                let w = &mut *out;
                for c in row.iter().filter(|c| !c.holds()) {
                    writeln!(w, "COUNTEREXAMPLE: X({},{}) deficit={}", c.cell.d, c.cell.n, c.deficit)?;
                }
            }
            Format::Json => cells.extend(row.iter().map(json_of)),
        }
    }
    let ok = bad.is_empty();
    match format {
        Format::Text => {
            writeln!(out, "cells: {checked}")?;
            writeln!(out, "counterexamples: {}", bad.len())?;
        }
        Format::Csv => {}
        Format::Json => {
            let mut r = Report::new("scan-c2").param("n_max", n_max);
            r.set("cells", checked);
            r.set("counterexamples", bad);
            r.set("rows", cells);
            r.emit(format, start.elapsed().as_millis(), out)?;
        }
    }
    Ok(ok)
}
