//! The `ringcert` command line.
//!
//! Exit codes: 0 success, 1 usage (including a ring the command does not
//! support), 2 malformed input, 3 hypothesis fails, 4 verification failure,
//! 5 I/O error.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use ringcert::echelon::reduce;
use ringcert::engine::certify;
use ringcert::format::{rado_report_to_json, CertificateFile, EchelonReport, InstanceFile, Provenance, WitnessReport};
use ringcert::oracle::{generate, verify_certificate, InstanceSpec, PRNG_ALGORITHM};
use ringcert::rado::rado_condition;
use ringcert::rings::{Ring, RingKind};
use ringcert::transversal::{invertible_transversal, Instance};
use ringcert::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_HYPOTHESIS: i32 = 3;
pub const EXIT_VERIFY: i32 = 4;
pub const EXIT_IO: i32 = 5;

#[derive(Parser, Debug)]
#[command(name = "ringcert", version, about = "Certificates for transversal invertibility over Z, Z/n, GF(p) and Q")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Report whether some transversal submatrix is invertible.
    Check { instance: PathBuf },
    /// Build and self-check a certificate.
    Certify {
        instance: PathBuf,
        /// Write the certificate here instead of stdout.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check a certificate against an instance.
    Verify { instance: PathBuf, certificate: PathBuf },
    /// Print Q, QM and the unit-column capacity t.
    Echelon { instance: PathBuf },
    /// Check the rank condition for an independent partial transversal of size k.
    Rado {
        instance: PathBuf,
        #[arg(short)]
        k: usize,
    },
    /// Generate a random instance.
    Gen {
        /// Z, Q, Z/<n> or GF(<p>).
        #[arg(long, value_parser = parse_ring)]
        ring: Ring,
        #[arg(short)]
        p: usize,
        #[arg(short)]
        q: usize,
        #[arg(short)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Entry bound for Z and Q.
        #[arg(long, default_value_t = 3)]
        bound: u64,
        #[arg(long)]
        require_hypothesis: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

fn parse_ring(s: &str) -> Result<Ring, String> {
    let t = s.trim();
    let kind = if t == "Z" {
        RingKind::Integers
    } else if t == "Q" {
        RingKind::Rationals
    } else if let Some(n) = t.strip_prefix("Z/") {
        RingKind::IntegersMod(n.parse().map_err(|_| format!("bad modulus in {s:?}"))?)
    } else if let Some(p) = t.strip_prefix("GF(").and_then(|r| r.strip_suffix(')')) {
        RingKind::PrimeField(p.parse().map_err(|_| format!("bad characteristic in {s:?}"))?)
    } else {
        return Err(format!("unknown ring {s:?}; expected Z, Q, Z/<n> or GF(<p>)"));
    };
    Ring::new(kind).map_err(|e| e.to_string())
}

/// A failure carrying its exit code.
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn new(code: i32, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }
}

fn code_for(e: &Error) -> i32 {
    match e {
        Error::HypothesisFails { .. } => EXIT_HYPOTHESIS,
        Error::SelfCheck { .. } | Error::Internal(_) => EXIT_VERIFY,
        Error::NotAField(_) | Error::Unsupported(_) | Error::AttemptCapExceeded(_) => EXIT_USAGE,
        Error::Dimension(_) | Error::SearchTooLarge { .. } => EXIT_USAGE,
        _ => EXIT_PARSE,
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::new(code_for(&e), e.to_string())
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::new(EXIT_IO, format!("{}: {e}", path.display())))
}

fn load_instance(path: &Path) -> Result<Instance, Failure> {
    let text = read(path)?;
    InstanceFile::parse(&text)
        .and_then(|f| f.to_instance())
        .map_err(|e| Failure::new(EXIT_PARSE, format!("{}: {e}", path.display())))
}

fn emit(out: &mut dyn Write, target: Option<&Path>, text: &str) -> Result<(), Failure> {
    match target {
        Some(path) => fs::write(path, text).map_err(|e| Failure::new(EXIT_IO, format!("{}: {e}", path.display()))),
        None => out
            .write_all(text.as_bytes())
            .map_err(|e| Failure::new(EXIT_IO, e.to_string())),
    }
}

fn execute(cli: Cli, out: &mut dyn Write) -> Result<i32, Failure> {
    match cli.command {
        Command::Check { instance } => {
            let inst = load_instance(&instance)?;
            match invertible_transversal(&inst) {
                None => {
                    emit(out, None, "hypothesis: HOLDS\n")?;
                    Ok(EXIT_OK)
                }
                Some(w) => {
                    let line = format!("hypothesis: FAILS, witness columns {}, determinant {}\n", w.columns, w.determinant);
                    emit(out, None, &line)?;
                    Ok(EXIT_HYPOTHESIS)
                }
            }
        }
        Command::Certify { instance, output } => {
            let inst = load_instance(&instance)?;
            let cert = match certify(&inst) {
                Ok(cert) => cert,
                Err(Error::HypothesisFails { columns, determinant }) => {
                    emit(out, None, &WitnessReport::new(&columns, &determinant).to_json())?;
                    return Err(Failure::new(
                        EXIT_HYPOTHESIS,
                        format!("hypothesis fails: columns {columns} give determinant {determinant}"),
                    ));
                }
                Err(e) => return Err(e.into()),
            };
            let file = CertificateFile::from_certificate(&cert);
            let text = file.to_json();
            let reread = CertificateFile::parse(&text).and_then(|f| f.to_certificate(inst.matrix().ring()))?;
            if let Some(d) = verify_certificate(&inst, &reread).diagnostic {
                return Err(Failure::new(EXIT_VERIFY, format!("certificate failed verification: {d}")));
            }
            emit(out, output.as_deref(), &text)?;
            Ok(EXIT_OK)
        }
        Command::Verify { instance, certificate } => {
            let inst = load_instance(&instance)?;
            let text = read(&certificate)?;
            let cert = CertificateFile::parse(&text)
                .and_then(|f| f.to_certificate(inst.matrix().ring()))
                .map_err(|e| Failure::new(EXIT_PARSE, format!("{}: {e}", certificate.display())))?;
            match verify_certificate(&inst, &cert).diagnostic {
                None => {
                    emit(out, None, "certificate: VALID\n")?;
                    Ok(EXIT_OK)
                }
                Some(d) => Err(Failure::new(EXIT_VERIFY, format!("certificate: INVALID: {d}"))),
            }
        }
        Command::Echelon { instance } => {
            let inst = load_instance(&instance)?;
            emit(out, None, &EchelonReport::new(&reduce(inst.matrix())).to_json())?;
            Ok(EXIT_OK)
        }
        Command::Rado { instance, k } => {
            let inst = load_instance(&instance)?;
            let report = rado_condition(&inst, k)?;
            emit(out, None, &rado_report_to_json(&report))?;
            Ok(EXIT_OK)
        }
        Command::Gen {
            ring,
            p,
            q,
            n,
            seed,
            bound,
            require_hypothesis,
            output,
        } => {
            let spec = InstanceSpec {
                ring,
                p,
                q,
                n,
                entry_bound: bound,
                seed,
            };
            let g = generate(&spec, require_hypothesis)?;
            let provenance = Provenance {
                prng: PRNG_ALGORITHM.into(),
                spec,
                require_hypothesis,
                attempts: g.attempts,
            };
            let file = InstanceFile::from_instance(&g.instance, Some(provenance));
            emit(out, output.as_deref(), &file.to_json())?;
            Ok(EXIT_OK)
        }
    }
}

/// Runs the command line on `args` (including the program name) and returns
/// the exit code. Reports go to `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(cli, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}
