mod output;

use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use dquad_core::ecurve::{curve_from_k, PointExpr};
use dquad_core::families::ClosedFormFamily;
use dquad_core::search::{run_search_with_progress, verify_table_fixture, SearchOutcome};
use dquad_core::{Error, FamilyId, Int, KmChart, Quad, Rat, SearchConfig};

use output::{Emitter, Format, OutputRecord};

#[derive(Parser)]
#[command(name = "dquad", version, about = "Construct, search for and verify doubly regular D(n)-quadruples")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the D(n) property and regularity of a quadruple.
    Verify {
        /// Four distinct nonzero integers, comma separated.
        #[arg(short, long, value_delimiter = ',', required = true, allow_hyphen_values = true)]
        elements: Vec<Int>,
        /// One or more values of n, comma separated.
        #[arg(short, long = "n", value_delimiter = ',', required = true, allow_hyphen_values = true)]
        ns: Vec<Int>,
        #[arg(long, value_enum, default_value_t = Format::Human)]
        format: Format,
    },
    /// Emit verified members of a closed-form family.
    Gen {
        #[arg(value_enum)]
        family: FamilyArg,
        /// First parameter (k for prop1, u for prop2).
        #[arg(long = "k", visible_alias = "u", allow_hyphen_values = true)]
        parameter: Int,
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long, value_enum, default_value_t = Format::Human)]
        format: Format,
    },
    /// Inspect a point on the curve attached to k.
    Curve {
        #[arg(long, allow_hyphen_values = true)]
        k: Rat,
        /// e.g. P, 3P, -P, T2, P+T1
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(long, value_enum, default_value_t = Format::Human)]
        format: Format,
    },
    /// Brute-force search over small-height (k, m, t3).
    Search {
        #[arg(long, default_value_t = 4)]
        hk: u32,
        #[arg(long, default_value_t = 4)]
        hm: u32,
        #[arg(long, default_value_t = 4)]
        ht: u32,
        #[arg(long, env = "DQUAD_WORKERS")]
        workers: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Human)]
        format: Format,
        /// Verify the table of known examples instead of searching.
        #[arg(long)]
        fixture_check: bool,
        /// Report finished work units on stderr.
        #[arg(long)]
        progress: bool,
    },
}

#[derive(Debug, Clone, Copy, clap::ValueEnum)]
enum FamilyArg {
    Prop1,
    Prop2,
}

#[derive(Debug)]
enum Failure {
    /// Exit 1.
    Property(String),
    /// Exit 2.
    Usage(String),
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Property(format!("write failed: {e}"))
    }
}

type CmdResult = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Verify { elements, ns, format } => cmd_verify(elements, &ns, format),
        Command::Gen {
            family,
            parameter,
            count,
            format,
        } => cmd_gen(family, parameter, count, format),
        Command::Curve { k, point, format } => cmd_curve(k, &point, format),
        Command::Search {
            hk,
            hm,
            ht,
            workers,
            format,
            fixture_check,
            progress,
        } => {
            if fixture_check {
                cmd_fixture_check()
            } else {
                cmd_search(hk, hm, ht, workers, format, progress)
            }
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Property(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn cmd_verify(elements: Vec<Int>, ns: &[Int], format: Format) -> CmdResult {
    let elements: [Int; 4] = elements
        .try_into()
        .map_err(|v: Vec<Int>| Failure::Usage(format!("expected 4 elements, got {}", v.len())))?;
    let quad = Quad::new(elements).map_err(|e| Failure::Usage(e.to_string()))?;
    let rec = OutputRecord::build(&quad, ns, "user-input");
    let mut em = Emitter::new(format, io::stdout().lock());
    em.record(&rec)?;
    em.flush()?;
    match rec.failure {
        None => Ok(()),
        Some(f) => Err(Failure::Property(f)),
    }
}

fn cmd_gen(family: FamilyArg, start: Int, count: usize, format: Format) -> CmdResult {
    if count == 0 {
        return Err(Failure::Usage("--count must be at least 1".into()));
    }
    let family = ClosedFormFamily::get(match family {
        FamilyArg::Prop1 => FamilyId::Prop1,
        FamilyArg::Prop2 => FamilyId::Prop2,
    });
    let mut em = Emitter::new(format, io::stdout().lock());
    let mut value = start;
    let mut emitted = 0;
    while emitted < count {
        if !family.is_excluded(&value) {
            let inst = family
                .instance(&value)
                .map_err(|e| Failure::Property(format!("{} at {value}: {e}", family.id)))?;
            inst.verify()
                .map_err(|e| Failure::Property(format!("{}: {e}", inst.provenance)))?;
            let provenance = inst.provenance.to_string();
            let raw = OutputRecord::build(&inst.quad, &inst.ns(), provenance.clone());
            let (nq, nns) = inst.normalized();
            let normalized = OutputRecord::build(&nq, &nns, format!("{provenance}:normalized"));
            for rec in [&raw, &normalized] {
                em.record(rec)?;
                if let Some(f) = &rec.failure {
                    return Err(Failure::Property(f.clone()));
                }
            }
            emitted += 1;
        }
        value += 1;
    }
    em.flush()?;
    Ok(())
}

#[derive(serde::Serialize)]
struct CurveReport {
    k: String,
    point: String,
    x: Option<String>,
    y: Option<String>,
    on_curve: bool,
    t3: Option<String>,
    ac_condition: Option<bool>,
    note: Option<String>,
}

fn cmd_curve(k: Rat, point: &str, format: Format) -> CmdResult {
    let expr: PointExpr = point
        .parse()
        .map_err(|e: Error| Failure::Usage(e.to_string()))?;
    let curve = curve_from_k(&k).map_err(|e| Failure::Property(e.to_string()))?;
    let pt = curve.eval_expr(&expr).map_err(|e| Failure::Property(e.to_string()))?;
    let t3 = curve.t3_of(&pt).ok();
    let ac = curve.ac_condition_holds(&pt).ok();
    let note = t3.as_ref().and_then(|t3| {
        let chart = KmChart::standard(k.clone()).ok()?;
        match chart.params(t3) {
            Err(Error::DegenerateChart(msg)) => Some(format!("degenerate chart: {msg}")),
            Err(e) => Some(e.to_string()),
            Ok(_) => None,
        }
    });
    let report = CurveReport {
        k: k.to_string(),
        point: point.to_string(),
        x: pt.x().map(Rat::to_string),
        y: pt.y().map(Rat::to_string),
        on_curve: curve.contains(&pt),
        t3: t3.map(|t| t.to_string()),
        ac_condition: ac,
        note,
    };
    let mut out = io::stdout().lock();
    match format {
        Format::Json => {
            serde_json::to_writer(&mut out, &report).map_err(|e| Failure::Property(e.to_string()))?;
            writeln!(out)?;
        }
        Format::Csv => return Err(Failure::Usage("curve supports human and json output".into())),
        Format::Human => {
            writeln!(out, "curve   k = {}", report.k)?;
            writeln!(out, "point   {} = {pt}", report.point)?;
            writeln!(out, "on curve: {}", report.on_curve)?;
            writeln!(out, "t3: {}", report.t3.as_deref().unwrap_or("undefined"))?;
            let ac = match report.ac_condition {
                Some(true) => "holds",
                Some(false) => "fails",
                None => "undefined",
            };
            writeln!(out, "ac condition: {ac}")?;
            if let Some(note) = &report.note {
                writeln!(out, "note: {note}")?;
            }
        }
    }
    Ok(())
}

fn cmd_search(hk: u32, hm: u32, ht: u32, workers: Option<usize>, format: Format, progress: bool) -> CmdResult {
    let workers = workers.unwrap_or_else(|| std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1));
    let cfg = SearchConfig::new(hk, hm, ht, workers).map_err(|e| Failure::Usage(e.to_string()))?;
    let report = |done: usize, total: usize| {
        if progress {
            eprintln!("progress: {done}/{total} values of k");
        }
    };
    let outcome = run_search_with_progress(&cfg, &report);
    let mut em = Emitter::new(format, io::stdout().lock());
    for hit in &outcome.hits {
        let rec = OutputRecord::build(&hit.normalized, &hit.normalized_ns, hit.instance.provenance.to_string());
        em.record(&rec)?;
        if let Some(f) = &rec.failure {
            return Err(Failure::Property(f.clone()));
        }
    }
    em.flush()?;
    print_summary(&cfg, &outcome);
    Ok(())
}

fn print_summary(cfg: &SearchConfig, outcome: &SearchOutcome) {
    let c = &outcome.counters;
    eprintln!(
        "bounds hk={} hm={} ht={}, {} workers",
        cfg.hk, cfg.hm, cfg.ht, cfg.workers
    );
    eprintln!(
        "pairs {} (rejected {}), candidates {}, residue rejects {}, root rejects {}, degenerate {}, hits {}, duplicates {}, classes {}",
        c.pairs,
        c.pair_rejects,
        c.candidates,
        c.residue_rejects,
        c.root_rejects,
        c.degenerate,
        c.hits,
        c.duplicates,
        outcome.hits.len()
    );
    let found: Vec<String> = outcome
        .rediscovered()
        .iter()
        .enumerate()
        .map(|(row, hit)| match hit {
            Some(i) => format!("row {} = hit {}", row + 1, i + 1),
            None => format!("row {} not found", row + 1),
        })
        .collect();
    eprintln!("table: {}", found.join(", "));
}

fn cmd_fixture_check() -> CmdResult {
    let report = verify_table_fixture().map_err(|e| Failure::Property(e.to_string()))?;
    let mut out = io::stdout().lock();
    for row in &report.rows {
        writeln!(
            out,
            "row {:>2}: {}  n1 = {}², n2 = {}²  ok",
            row.row, row.quad, row.n1_root, row.n2_root
        )?;
    }
    writeln!(out, "{} rows verified, pairwise nonequivalent", report.rows.len())?;
    Ok(())
}
