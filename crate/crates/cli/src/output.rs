//! Output records and their three renderings. Every integer is a decimal
//! string in JSON so nothing is lost at any magnitude.

use std::io::Write;

use dquad_core::{check_dn, Int, Quad, PAIRS};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Human,
    Json,
    Csv,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NRecord {
    pub n: String,
    /// Empty when the D(n) property fails.
    pub roots: Vec<String>,
    pub regular: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub elements: Vec<String>,
    pub ns: Vec<NRecord>,
    pub provenance: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub failure: Option<String>,
}

impl OutputRecord {
    /// Runs the D(n) check for every `n`; the first failure (if any) names
    /// every failing pair for that `n`.
    pub fn build(quad: &Quad, ns: &[Int], provenance: impl Into<String>) -> Self {
        let mut failure = None;
        let records = ns
            .iter()
            .map(|n| {
                let roots = match check_dn(quad, n) {
                    Ok(w) => w.roots.iter().map(Int::to_string).collect(),
                    Err(_) => {
                        if failure.is_none() {
                            failure = Some(describe_failure(quad, n));
                        }
                        Vec::new()
                    }
                };
                NRecord {
                    n: n.to_string(),
                    roots,
                    regular: quad.is_regular(n),
                }
            })
            .collect();
        OutputRecord {
            elements: quad.elements().iter().map(Int::to_string).collect(),
            ns: records,
            provenance: provenance.into(),
            failure,
        }
    }
}

fn describe_failure(quad: &Quad, n: &Int) -> String {
    let e = quad.elements();
    let pairs: Vec<String> = PAIRS
        .iter()
        .filter_map(|&(i, j)| {
            let v = &e[i] * &e[j] + n;
            match dquad_core::exactnum::int_square_root_exact(&v) {
                Some(_) => None,
                None => Some(format!("({}, {}): {}·{} + {} = {} is not a square", e[i], e[j], e[i], e[j], n, v)),
            }
        })
        .collect();
    format!("D({n}) fails at {}", pairs.join("; "))
}

pub struct Emitter<W: Write> {
    format: Format,
    out: W,
    csv_header_done: bool,
}

impl<W: Write> Emitter<W> {
    pub fn new(format: Format, out: W) -> Self {
        Emitter {
            format,
            out,
            csv_header_done: false,
        }
    }

    pub fn record(&mut self, rec: &OutputRecord) -> std::io::Result<()> {
        match self.format {
            Format::Json => {
                serde_json::to_writer(&mut self.out, rec)?;
                writeln!(self.out)
            }
            Format::Csv => {
                let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(&mut self.out);
                if !self.csv_header_done {
                    w.write_record(["provenance", "a", "b", "c", "d", "ns", "regular", "failure"])?;
                    self.csv_header_done = true;
                }
                let join = |f: &dyn Fn(&NRecord) -> String| rec.ns.iter().map(f).collect::<Vec<_>>().join(" ");
                let mut row = vec![rec.provenance.clone()];
                row.extend(rec.elements.iter().cloned());
                row.push(join(&|n| n.n.clone()));
                row.push(join(&|n| n.regular.to_string()));
                row.push(rec.failure.clone().unwrap_or_default());
                w.write_record(&row)?;
                w.flush()
            }
            Format::Human => {
                writeln!(self.out, "{{{}}}  [{}]", rec.elements.join(", "), rec.provenance)?;
                for n in &rec.ns {
                    if n.roots.is_empty() {
                        writeln!(self.out, "  D({}): fails", n.n)?;
                    } else {
                        writeln!(
                            self.out,
                            "  D({}): ok, regular={}, roots {}",
                            n.n,
                            n.regular,
                            n.roots.join(" ")
                        )?;
                    }
                }
                if let Some(f) = &rec.failure {
                    writeln!(self.out, "  {f}")?;
                }
                Ok(())
            }
        }
    }

    pub fn flush(&mut self) -> std::io::Result<()> {
        self.out.flush()
    }
}
