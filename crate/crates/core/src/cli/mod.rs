//! Batch command-line front end.
//!
//! Input is one JSON record per line (`{"c": [...]}` or `{"x": [...], "y": [...]}`,
//! optional `"id"`), read from stdin or `--in`. Records are processed in
//! chunks on a thread pool and written back in input order, so output is
//! independent of `--threads`.
//!
//! Exit codes: 0 success, 2 input error, 3 usage error, 4 internal invariant
//! violation.

mod input;
mod report;

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufRead, BufReader, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use rand::RngCore;
use rayon::prelude::*;

pub use input::{parse_record, InputRecord};
pub use report::{
    to_compact, to_pretty, CanonicalOut, ClassOut, Diagnostics, ErrorRecord, Output, ReportRecord,
    RepresentativeOut, SliceOut, StabilizerOut, StabilizerSampleOut,
};

use crate::error::Error;
use crate::minkowski::seeded_rng;
use crate::orbit::{canonical_form, canonical_representative, orbit_class};
use crate::slice::{empirical_min_radius, slice_certificate};
use crate::stabilizer::stabilizer_at;
use crate::tolerance::ToleranceConfig;
use crate::verify::{run_suite, CheckResult};
use crate::wedge::{in_light_cone, pfaffian, quantities_ab};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_USAGE: i32 = 3;
pub const EXIT_INVARIANT: i32 = 4;

/// Records per parallel chunk; bounds memory for arbitrarily long streams.
const CHUNK: usize = 256;

/// Relative residual above which a computed reduction is reported as an
/// invariant violation.
const VIOLATION_LIMIT: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Ndjson,
    Table,
}

#[derive(Debug, Parser)]
#[command(name = "lbo", version, about = "Light-cone bivector orbits of SO(3,1)")]
pub struct Cli {
    /// Read records from this file instead of stdin.
    #[arg(long = "in", global = true, value_name = "FILE")]
    pub input: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value = "ndjson", env = "LBO_FORMAT")]
    pub format: Format,
    /// Absolute and relative tolerance.
    #[arg(long, global = true, default_value_t = 1e-9, env = "LBO_TOL")]
    pub tol: f64,
    #[arg(long, global = true, default_value_t = 0, env = "LBO_SEED")]
    pub seed: u64,
    /// Worker threads (0 = all cores).
    #[arg(long, global = true, default_value_t = 0, env = "LBO_THREADS")]
    pub threads: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Light-cone test, canonical form and orbit class of each record.
    Classify,
    /// Canonical form plus the normal-form representative and its witness.
    Canonical,
    /// Topology of the r-slice of each record's orbit.
    Slice {
        #[arg(long, env = "LBO_R", allow_negative_numbers = true)]
        r: f64,
        /// Also run the sampling oracle for the minimal radius with this
        /// many random group elements (0 = skip).
        #[arg(long, default_value_t = 0, env = "LBO_SAMPLES")]
        samples: usize,
    },
    /// Stabilizer generators of each record with fixing residuals.
    Stabilizer,
    /// Run a named invariant suite.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
    },
}

/// Parses `args` and runs the command, returning the process exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn BufRead, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(stderr, "{}", e.render());
                return EXIT_USAGE;
            }
            let _ = write!(stdout, "{}", e.render());
            return EXIT_OK;
        }
    };
    match execute(&cli, stdin, stdout, stderr) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "lbo: {e}");
            EXIT_INPUT
        }
    }
}

fn execute(cli: &Cli, stdin: &mut dyn BufRead, stdout: &mut dyn Write, stderr: &mut dyn Write) -> io::Result<i32> {
    let tol = ToleranceConfig::uniform(cli.tol).with_seed(cli.seed);
    if !tol.is_valid() {
        writeln!(stderr, "lbo: --tol must be positive, got {}", cli.tol)?;
        return Ok(EXIT_USAGE);
    }
    if let Command::Slice { r, .. } = cli.command {
        if !(r > 0.0) {
            writeln!(stderr, "lbo: {}", Error::NonPositiveRadius(r))?;
            return Ok(EXIT_INPUT);
        }
    }
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.threads).build() {
        Ok(p) => p,
        Err(e) => {
            writeln!(stderr, "lbo: cannot start thread pool: {e}")?;
            return Ok(EXIT_USAGE);
        }
    };

    if let Command::Verify { suite } = &cli.command {
        let Some(results) = pool.install(|| run_suite(suite, cli.seed)) else {
            writeln!(stderr, "lbo: unknown suite {suite:?} (expected isometry, pfaffian, frames, stabilizer, slice or all)")?;
            return Ok(EXIT_USAGE);
        };
        return write_checks(&results, cli.format, stdout);
    }

    let mut file_reader;
    let reader: &mut dyn BufRead = match &cli.input {
        Some(path) => {
            file_reader = BufReader::new(File::open(path)?);
            &mut file_reader
        }
        None => stdin,
    };

    let mut writer = RecordWriter::new(cli.format, stdout)?;
    let mut code = EXIT_OK;
    let mut index = 0u64;
    let mut chunk: Vec<(u64, String)> = Vec::with_capacity(CHUNK);
    let mut lines = reader.lines();
    loop {
        chunk.clear();
        for line in lines.by_ref() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            chunk.push((index, line));
            index += 1;
            if chunk.len() == CHUNK {
                break;
            }
        }
        if chunk.is_empty() {
            break;
        }
        let outputs: Vec<(Output, i32)> =
            pool.install(|| chunk.par_iter().map(|(i, line)| process(*i, line, &cli.command, &tol)).collect());
        for (out, c) in outputs {
            code = code.max(c);
            writer.write(&out)?;
        }
    }
    writer.finish()?;
    Ok(code)
}

fn write_checks(results: &[CheckResult], format: Format, stdout: &mut dyn Write) -> io::Result<i32> {
    match format {
        Format::Table => {
            writeln!(stdout, "{:<6} {:<11} {:<44} {:<24} threshold", "result", "suite", "check", "value")?;
            for c in results {
                writeln!(
                    stdout,
                    "{:<6} {:<11} {:<44} {:<24.16e} {:.3e}",
                    if c.passed { "PASS" } else { "FAIL" },
                    c.suite,
                    c.name,
                    c.value,
                    c.threshold
                )?;
            }
        }
        Format::Ndjson => {
            for c in results {
                writeln!(stdout, "{}", to_compact(c))?;
            }
        }
        Format::Json => writeln!(stdout, "{}", to_pretty(&results))?,
    }
    let all = results.iter().all(|c: &CheckResult| c.passed);
    Ok(if all { EXIT_OK } else { EXIT_INVARIANT })
}

struct RecordWriter<'a> {
    format: Format,
    out: &'a mut dyn Write,
    first: bool,
}

impl<'a> RecordWriter<'a> {
    fn new(format: Format, out: &'a mut dyn Write) -> io::Result<Self> {
        match format {
            Format::Json => write!(out, "[")?,
            Format::Table => writeln!(out, "{}", report::TABLE_HEADER)?,
            Format::Ndjson => {}
        }
        Ok(Self { format, out, first: true })
    }

    fn write(&mut self, rec: &Output) -> io::Result<()> {
        match self.format {
            Format::Ndjson => writeln!(self.out, "{}", to_compact(rec))?,
            Format::Table => writeln!(self.out, "{}", report::table_row(rec))?,
            Format::Json => {
                let sep = if self.first { "\n" } else { ",\n" };
                write!(self.out, "{sep}{}", to_pretty(rec))?;
            }
        }
        self.first = false;
        Ok(())
    }

    fn finish(self) -> io::Result<()> {
        if self.format == Format::Json {
            writeln!(self.out, "{}]", if self.first { "" } else { "\n" })?;
        }
        self.out.flush()
    }
}

/// Processes one input line into an output record and its exit code.
pub fn process(index: u64, line: &str, command: &Command, tol: &ToleranceConfig) -> (Output, i32) {
    let rec = match parse_record(line) {
        Ok(rec) => rec,
        Err((id, error)) => return (Output::Error(ErrorRecord { index, id, error }), EXIT_INPUT),
    };
    match analyse(index, &rec, command, tol) {
        Ok(report) => {
            let code = if report.diagnostics.violation.is_some() { EXIT_INVARIANT } else { EXIT_OK };
            (Output::Report(Box::new(report)), code)
        }
        Err(e) => {
            let code = match e {
                Error::InvariantViolation(_) => EXIT_INVARIANT,
                _ => EXIT_INPUT,
            };
            (
                Output::Error(ErrorRecord {
                    index,
                    id: rec.id,
                    error: e.to_string(),
                }),
                code,
            )
        }
    }
}

fn analyse(index: u64, rec: &InputRecord, command: &Command, tol: &ToleranceConfig) -> crate::Result<ReportRecord> {
    let w = rec.bivector;
    let (a, b) = quantities_ab(&w);
    let mut report = ReportRecord {
        index,
        id: rec.id.clone(),
        in_light_cone: in_light_cone(&w, tol),
        a,
        b,
        pfaffian: pfaffian(&w),
        canonical: None,
        class: None,
        reason: None,
        representative: None,
        slice: None,
        stabilizer: None,
        diagnostics: Diagnostics::default(),
    };
    if !report.in_light_cone {
        report.reason = Some(if a == 0.0 && b == 0.0 {
            "zero bivector".to_string()
        } else {
            format!("not in the light cone: A = {a:.16e}, B = {b:.16e}")
        });
        return Ok(report);
    }

    let cf = canonical_form(&w, tol)?;
    let class = orbit_class(&w, tol)?;
    let recon = cf.reconstruct().max_abs_diff(&w) / cf.r;
    report.canonical = Some(CanonicalOut { r: cf.r, phi: cf.phi });
    report.class = Some(ClassOut {
        kind: class.kind,
        r0: class.r0,
        epsilon: class.epsilon,
    });
    report.diagnostics.reconstruction_residual = Some(recon);
    let mut violations = Vec::new();
    if recon > VIOLATION_LIMIT {
        violations.push(format!("canonical reconstruction residual {recon:.3e}"));
    }
    if class.epsilon.is_some() {
        let rep = canonical_representative(&w, tol)?;
        let rel = rep.residual / class.r0.max(f64::MIN_POSITIVE);
        report.diagnostics.normal_form_residual = Some(rep.residual);
        if rel > VIOLATION_LIMIT {
            violations.push(format!("normal-form residual {:.3e}", rep.residual));
        }
        if matches!(command, Command::Canonical) {
            report.representative = Some(RepresentativeOut {
                bivector: Some(rep.bivector.0),
                witness: Some(rep.witness.to_row_major()),
                basis_witness: cf.basis_witness.to_row_major(),
                note: None,
            });
        }
    } else if matches!(command, Command::Canonical) {
        report.representative = Some(RepresentativeOut {
            bivector: None,
            witness: None,
            basis_witness: cf.basis_witness.to_row_major(),
            note: Some("degenerate orbit: it contains no element of the form r(ω12 ± ω34)".to_string()),
        });
    }

    match *command {
        Command::Slice { r, samples } => {
            let cert = slice_certificate(&class, r, tol)?;
            let empirical_min = if samples > 0 {
                let sub_seed = seeded_rng(tol.rng_seed, index).next_u64();
                Some(empirical_min_radius(&w, samples, sub_seed, tol)?)
            } else {
                None
            };
            report.slice = Some(SliceOut {
                r_queried: r,
                topology: cert.topology,
                boundary: cert.boundary,
                empirical_min,
            });
        }
        Command::Stabilizer => {
            let s = stabilizer_at(&w, tol)?;
            let mut families = Vec::new();
            for x in &s.samples {
                if !families.contains(&x.element.family) {
                    families.push(x.element.family);
                }
            }
            let scale = w.norm().max(1.0);
            if s.max_residual > VIOLATION_LIMIT * scale {
                violations.push(format!("stabilizer fixing residual {:.3e}", s.max_residual));
            }
            report.stabilizer = Some(StabilizerOut {
                families,
                max_residual: s.max_residual,
                samples: s
                    .samples
                    .iter()
                    .map(|x| StabilizerSampleOut {
                        family: x.element.family,
                        parameter: x.element.parameter,
                        residual: x.residual,
                        matrix: x.element.matrix.to_row_major(),
                    })
                    .collect(),
            });
        }
        _ => {}
    }
    if !violations.is_empty() {
        report.diagnostics.violation = Some(violations.join("; "));
    }
    Ok(report)
}
