use std::fmt::Write as _;

use anyhow::{bail, Result};
use dicke_core::oracle::{dense_dicke, dense_partial_trace, dense_partial_transpose, dense_spectrum};
use dicke_core::sweep::oracle_sweep;
use dicke_core::witness::pt_spectrum;
use dicke_core::{
    certify_with, enumerate_full, enumerate_restricted, reduced_state, DenseLimits, Execution, OccupationIndex, Verdict,
};
use serde::Serialize;

use crate::args::{Cli, Command, EnumerateArgs, Format};
use crate::report::{
    occupation_string, IndexSetDocument, OracleDocument, ReductionDocument, ReportDocument, SpectrumDocument,
    SCHEMA_VERSION,
};

/// How a successful run should exit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Success,
    FullySeparable,
    CheckFailed,
}

impl Outcome {
    pub fn exit_code(self) -> u8 {
        match self {
            Outcome::Success => 0,
            Outcome::FullySeparable => 2,
            Outcome::CheckFailed => 1,
        }
    }
}

/// Runs one parsed invocation, returning the rendered output and its outcome.
pub fn run(cli: &Cli) -> Result<(String, Outcome)> {
    let limits = DenseLimits::with_amplitude_limit(cli.dense_limit);
    match &cli.command {
        Command::Certify(arg) => certify(&arg.occupation, cli.format.unwrap_or(Format::Json)),
        Command::Reduce { occupation, m } => Ok((
            reduce(&occupation.occupation, *m, cli.format.unwrap_or(Format::Text))?,
            Outcome::Success,
        )),
        Command::Ppt {
            occupation,
            m,
            k,
            dense,
        } => {
            let format = cli.format.unwrap_or(Format::Json);
            Ok((
                ppt(&occupation.occupation, *m, *k, dense.then_some(&limits), format)?,
                Outcome::Success,
            ))
        }
        Command::Enumerate(args) => Ok((enumerate(args, cli.format.unwrap_or(Format::Text))?, Outcome::Success)),
        Command::OracleCheck { max_n, max_d } => {
            oracle_check(*max_d, *max_n, &limits, cli.format.unwrap_or(Format::Text))
        }
    }
}

fn certify(occupation: &OccupationIndex, format: Format) -> Result<(String, Outcome)> {
    let report = certify_with(occupation, Execution::Parallel)?;
    let doc = ReportDocument::from(&report);
    let out = match format {
        Format::Json => json(&doc)?,
        Format::Csv => csv_text(doc.records.iter().map(|r| r.csv_row()))?,
        Format::Text => {
            let mut s = format!("occupation {}: {}\n", occupation, doc.verdict);
            if !doc.records.is_empty() {
                writeln!(
                    s,
                    "{:>3} {:>3} {:>24} {:>22} {:>22} {:>6}",
                    "m", "k", "discriminant", "witness_value", "spectral_min", "is_npt"
                )?;
            }
            for r in &doc.records {
                writeln!(
                    s,
                    "{:>3} {:>3} {:>24} {:>22e} {:>22e} {:>6}",
                    r.m, r.k, r.discriminant, r.witness_value, r.spectral_min, r.is_npt
                )?;
            }
            s
        }
    };
    let outcome = match report.verdict {
        Verdict::NptGme => Outcome::Success,
        Verdict::FullySeparable => Outcome::FullySeparable,
    };
    Ok((out, outcome))
}

fn reduce(occupation: &OccupationIndex, m: usize, format: Format) -> Result<String> {
    let doc = ReductionDocument::from(&reduced_state(occupation, m)?);
    Ok(match format {
        Format::Json => json(&doc)?,
        Format::Csv => {
            #[derive(Serialize)]
            struct Row {
                part: String,
                weight: String,
            }
            csv_text(doc.weights.iter().map(|w| Row {
                part: occupation_string(&w.part),
                weight: w.weight.clone(),
            }))?
        }
        Format::Text => {
            let parts: Vec<String> = doc
                .weights
                .iter()
                .map(|w| format!("{}: {}", occupation_string(&w.part), w.weight))
                .collect();
            parts.join(", ") + "\n"
        }
    })
}

fn ppt(
    occupation: &OccupationIndex,
    m: usize,
    k: usize,
    dense: Option<&DenseLimits>,
    format: Format,
) -> Result<String> {
    let spectrum = pt_spectrum(occupation, m, k)?;
    let dense_spectrum = dense
        .map(|limits| -> Result<Vec<f64>> {
            let psi = dense_dicke(occupation, limits)?;
            let rho = dense_partial_trace(&psi, m, limits)?;
            Ok(dense_spectrum(&dense_partial_transpose(&rho, k)?)?)
        })
        .transpose()?;
    let doc = SpectrumDocument {
        schema_version: SCHEMA_VERSION.into(),
        kind: "pt_spectrum".into(),
        occupation: occupation.entries().to_vec(),
        m,
        k,
        spectral_min: spectrum.first().copied().unwrap_or(0.0),
        spectrum,
        dense_spectrum,
    };
    Ok(match format {
        Format::Json => json(&doc)?,
        Format::Csv => {
            #[derive(Serialize)]
            struct Row {
                source: &'static str,
                index: usize,
                eigenvalue: f64,
            }
            let sym = doc.spectrum.iter().enumerate().map(|(index, &eigenvalue)| Row {
                source: "symmetric",
                index,
                eigenvalue,
            });
            let dense = doc
                .dense_spectrum
                .iter()
                .flatten()
                .enumerate()
                .map(|(index, &eigenvalue)| Row {
                    source: "dense",
                    index,
                    eigenvalue,
                });
            csv_text(sym.chain(dense))?
        }
        Format::Text => {
            let mut s = format!("PT spectrum of {} m={} k={}\n", occupation, m, k);
            for v in &doc.spectrum {
                writeln!(s, "{v:e}")?;
            }
            writeln!(s, "min {:e}", doc.spectral_min)?;
            if let Some(d) = &doc.dense_spectrum {
                writeln!(
                    s,
                    "dense min {:e} ({} eigenvalues)",
                    d.first().copied().unwrap_or(0.0),
                    d.len()
                )?;
            }
            s
        }
    })
}

fn enumerate(args: &EnumerateArgs, format: Format) -> Result<String> {
    let set = match (args.d, args.n, &args.bound, args.m) {
        (Some(d), Some(n), None, None) => enumerate_full(d, n)?,
        (None, None, Some(bound), Some(m)) => enumerate_restricted(m, bound)?,
        _ => bail!("enumerate needs either -d and -n, or --bound and -m"),
    };
    let doc = IndexSetDocument::from(&set);
    Ok(match format {
        Format::Json => json(&doc)?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record((0..doc.d).map(|i| format!("x{i}")))?;
            for x in &doc.members {
                w.write_record(x.iter().map(usize::to_string))?;
            }
            String::from_utf8(w.into_inner()?)?
        }
        Format::Text => doc.members.iter().map(|x| occupation_string(x) + "\n").collect(),
    })
}

fn oracle_check(max_d: usize, max_n: usize, limits: &DenseLimits, format: Format) -> Result<(String, Outcome)> {
    let summary = oracle_sweep(max_d, max_n, limits, Execution::Parallel)?;
    let doc = OracleDocument::new(max_d, max_n, &summary);
    let out = match format {
        Format::Json => json(&doc)?,
        Format::Csv => {
            #[derive(Serialize)]
            struct Row {
                max_d: usize,
                max_n: usize,
                parents: usize,
                checks: usize,
                max_entry_deviation: f64,
                max_spectrum_deviation: f64,
                mismatches: usize,
                passed: bool,
            }
            csv_text(std::iter::once(Row {
                max_d,
                max_n,
                parents: doc.parents,
                checks: doc.checks,
                max_entry_deviation: doc.max_entry_deviation,
                max_spectrum_deviation: doc.max_spectrum_deviation,
                mismatches: doc.mismatches.len(),
                passed: doc.passed,
            }))?
        }
        Format::Text => {
            let mut s = format!(
                "{}: {} occupations, {} checks, max entry deviation {:e}, max spectrum deviation {:e}\n",
                if doc.passed { "ok" } else { "MISMATCH" },
                doc.parents,
                doc.checks,
                doc.max_entry_deviation,
                doc.max_spectrum_deviation
            );
            for m in &doc.mismatches {
                writeln!(s, "  {m}")?;
            }
            s
        }
    };
    Ok((
        out,
        if summary.passed() {
            Outcome::Success
        } else {
            Outcome::CheckFailed
        },
    ))
}

fn json<T: Serialize>(doc: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(doc)? + "\n")
}

fn csv_text<T: Serialize>(rows: impl IntoIterator<Item = T>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut empty = true;
    for row in rows {
        w.serialize(row)?;
        empty = false;
    }
    let mut s = String::from_utf8(w.into_inner()?)?;
    if empty {
        // serde-driven headers only appear with the first row.
        s = crate::report::CSV_COLUMNS.join(",") + "\n";
    }
    Ok(s)
}

/// Sizes the global rayon pool; a no-op in sequential builds.
pub fn configure_threads(threads: Option<usize>) -> Result<()> {
    let Some(n) = threads else { return Ok(()) };
    if n == 0 {
        bail!("--threads must be at least 1");
    }
    #[cfg(feature = "parallel")]
    anyhow::Context::context(
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global(),
        "configuring the thread pool",
    )?;
    Ok(())
}
