//! `carlitz`: build, encode, repair and verify rank-metric codes with
//! rank-locality, and search for primes in arithmetic progressions.
//!
//! Output is one `key: value` pair per line. Exit codes: 0 success, 1 a
//! check failed, 2 invalid input, 3 prime search exhausted, 4 guard exceeded.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use carlitz_codes::code::{verify_code, VerifyMode};
use carlitz_codes::dirichlet::{admissible, check_bounds, count_progression, find_prime};
use carlitz_codes::format::{
    fingerprint, from_json, to_json, CodeFile, MessageFile, ParamsFile, WordFile,
};
use carlitz_codes::repro;
use carlitz_codes::{BaseField, Error, PolyRing, UniPoly};

#[derive(Parser)]
#[command(name = "carlitz", version, about)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// First monic irreducible P = u h + a of degree m.
    SearchPrime(Progression),
    /// Whether the existence guarantee applies to (q, m, lR).
    Admissible {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        lr: usize,
    },
    /// Validate parameters and write the resolved code.
    Build {
        #[arg(long)]
        params: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    Encode {
        #[arg(long)]
        code: PathBuf,
        #[arg(long)]
        message: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Mark 1-based columns as erased (in place unless --out is given).
    Erase {
        #[arg(long)]
        word: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        columns: Vec<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Fill erased columns from their locality sets.
    Recover {
        #[arg(long)]
        code: PathBuf,
        #[arg(long)]
        word: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    Verify {
        #[arg(long)]
        code: PathBuf,
        #[arg(long, conflicts_with = "samples")]
        exhaustive: bool,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also require delta < R.
        #[arg(long)]
        strict_thm11: bool,
    },
    #[command(subcommand)]
    Dirichlet(DirichletCmd),
    #[command(subcommand)]
    Repro(ReproCmd),
}

#[derive(Args)]
struct Progression {
    #[arg(long)]
    q: u64,
    #[arg(long)]
    h: String,
    #[arg(long)]
    m: usize,
    #[arg(long, default_value = "1")]
    a: String,
}

#[derive(Subcommand)]
enum DirichletCmd {
    /// Exhaustive #S_m(a, h).
    Count(Progression),
    /// Both explicit error bounds against the exhaustive counts.
    CheckBounds(Progression),
}

#[derive(Subcommand)]
enum ReproCmd {
    /// Replay the worked q = 5, m = 10 example.
    Example41,
    /// Re-verify every row of the table of primes P = u h + 1.
    Table1,
}

enum Fail {
    Check,
    Input(String),
    Exhausted,
    Guard(String),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        match e {
            Error::GuardExceeded { .. } => Fail::Guard(e.to_string()),
            Error::NoPrimeFound => Fail::Exhausted,
            _ => Fail::Input(e.to_string()),
        }
    }
}

type Out = Result<(), Fail>;

fn kv(key: &str, value: impl std::fmt::Display) {
    println!("{key}: {value}");
}

fn read(path: &Path) -> Result<String, Fail> {
    fs::read_to_string(path).map_err(|e| Fail::Input(format!("{}: {e}", path.display())))
}

fn parse_file<T: for<'de> serde::Deserialize<'de>>(path: &Path) -> Result<T, Fail> {
    from_json(&read(path)?).map_err(|e| Fail::Input(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Out {
    fs::write(path, text).map_err(|e| Fail::Input(format!("{}: {e}", path.display())))
}

fn load_code(path: &Path) -> Result<(CodeFile, carlitz_codes::CodeInstance), Fail> {
    let file: CodeFile = parse_file(path)?;
    let code = file.to_instance()?;
    Ok((file, code))
}

fn progression(p: &Progression) -> Result<(PolyRing, UniPoly, UniPoly), Fail> {
    let ring = PolyRing::new(BaseField::with_order(p.q)?);
    let h = ring.parse(&p.h)?;
    let a = ring.parse(&p.a)?;
    Ok((ring, h, a))
}

fn run(cli: Cli) -> Out {
    match cli.cmd {
        Cmd::SearchPrime(p) => {
            let (ring, h, a) = progression(&p)?;
            let rep = find_prime(&ring, &h, p.m, &a)?;
            kv("tested", rep.tested);
            kv("admissible", rep.admissible);
            match (rep.found, rep.u) {
                (Some(prime), Some(u)) => {
                    kv("P", ring.display(&prime));
                    kv("u", ring.display(&u));
                    Ok(())
                }
                _ => {
                    kv("P", "none");
                    Err(Fail::Exhausted)
                }
            }
        }
        Cmd::Admissible { q, m, lr } => {
            let a = admissible(q, m, lr)?;
            kv("admissible", a.admissible);
            kv("rhs", format!("{:.6}", a.rhs));
            Ok(())
        }
        Cmd::Build { params, out } => {
            let pf: ParamsFile = parse_file(&params)?;
            let code = pf.build()?;
            let file = CodeFile::from_instance(&code);
            write(&out, &to_json(&file))?;
            let ring = code.tower.ring();
            kv("P", ring.display(&code.prime));
            kv("n", code.n());
            kv("m", code.params.m);
            kv("fq_dimension", code.params.fq_dimension());
            kv("designed_distance", code.params.designed_distance());
            kv("code_ref", fingerprint(&file));
            kv("out", out.display());
            Ok(())
        }
        Cmd::Encode { code, message, out } => {
            let (file, code) = load_code(&code)?;
            let mf: MessageFile = parse_file(&message)?;
            let word = code.encode(&mf.to_message(&code)?)?;
            let wf = WordFile::from_codeword(&code, &fingerprint(&file), &word);
            write(&out, &to_json(&wf))?;
            kv("entries", word.len());
            kv("rank_weight", code.rank_weight(&word)?);
            kv("out", out.display());
            Ok(())
        }
        Cmd::Erase { word, columns, out } => {
            let mut wf: WordFile = parse_file(&word)?;
            let len = wf.entries.len();
            for &c in &columns {
                let slot = c
                    .checked_sub(1)
                    .and_then(|i| wf.entries.get_mut(i))
                    .ok_or_else(|| Fail::Input(format!("column {c} out of range 1..={len}")))?;
                *slot = None;
            }
            let target = out.unwrap_or(word);
            write(&target, &to_json(&wf))?;
            kv(
                "erased",
                columns
                    .iter()
                    .map(usize::to_string)
                    .collect::<Vec<_>>()
                    .join(","),
            );
            kv("out", target.display());
            Ok(())
        }
        Cmd::Recover { code, word, out } => {
            let (file, code) = load_code(&code)?;
            let wf: WordFile = parse_file(&word)?;
            let fp = fingerprint(&file);
            if wf.code_ref != fp {
                return Err(Fail::Input(format!(
                    "word code_ref {} does not match code {fp}",
                    wf.code_ref
                )));
            }
            let w = wf.to_codeword(&code)?;
            let erased: Vec<String> = w
                .entries
                .iter()
                .enumerate()
                .filter(|(_, e)| e.is_none())
                .map(|(i, _)| (i + 1).to_string())
                .collect();
            let rec = code.recover(&w)?;
            write(&out, &to_json(&WordFile::from_codeword(&code, &fp, &rec)))?;
            kv(
                "recovered",
                if erased.is_empty() {
                    "none".into()
                } else {
                    erased.join(",")
                },
            );
            kv("out", out.display());
            Ok(())
        }
        Cmd::Verify {
            code,
            exhaustive,
            samples,
            seed,
            strict_thm11,
        } => {
            let (_, code) = load_code(&code)?;
            let mode = if exhaustive {
                VerifyMode::Exhaustive
            } else {
                VerifyMode::Sampled {
                    samples: samples.unwrap_or(200),
                    seed,
                }
            };
            let rep = verify_code(&code, mode, strict_thm11)?;
            if rep.fallback {
                kv(
                    "warning",
                    "exhaustive guard exceeded; fell back to sampling",
                );
            }
            let value = serde_json::to_value(&rep).expect("report serializes");
            for (k, v) in value.as_object().expect("report is an object") {
                let shown = match v {
                    serde_json::Value::Array(xs) => xs
                        .iter()
                        .map(|x| x.to_string())
                        .collect::<Vec<_>>()
                        .join(","),
                    serde_json::Value::String(s) => s.clone(),
                    other => other.to_string(),
                };
                kv(k, shown);
            }
            if rep.pass {
                Ok(())
            } else {
                Err(Fail::Check)
            }
        }
        Cmd::Dirichlet(DirichletCmd::Count(p)) => {
            let (ring, h, a) = progression(&p)?;
            let n = count_progression(&ring, &h, p.m, &a)?;
            kv("count", n);
            kv("irreducibles", ring.count_irreducibles(p.m)?);
            kv("totient", ring.totient(&h)?);
            Ok(())
        }
        Cmd::Dirichlet(DirichletCmd::CheckBounds(p)) => {
            let (ring, h, a) = progression(&p)?;
            let rep = check_bounds(&ring, &h, p.m, &a)?;
            kv("count", rep.progression.count);
            kv("main_term", rep.progression.main_term);
            kv("deviation", rep.progression.deviation);
            kv("bound", rep.progression.bound);
            kv("progression_pass", rep.progression.pass);
            kv("irreducibles", rep.irreducibles.count);
            kv("irreducibles_main_term", rep.irreducibles.main_term);
            kv("irreducibles_deviation", rep.irreducibles.deviation);
            kv("irreducibles_bound", rep.irreducibles.bound);
            kv("irreducibles_pass", rep.irreducibles.pass);
            kv("pass", rep.pass());
            if rep.pass() {
                Ok(())
            } else {
                Err(Fail::Check)
            }
        }
        Cmd::Repro(ReproCmd::Example41) => {
            let rep = repro::run_example()?;
            kv(
                "phi_t3",
                if rep.phi_t3_matches {
                    "match"
                } else {
                    "mismatch"
                },
            );
            for (i, (v, s)) in rep.encodings.iter().zip(&rep.status).enumerate() {
                let s = serde_json::to_value(s).expect("status serializes");
                kv(
                    &format!("f{}", i + 1),
                    format!("{v} ({})", s.as_str().unwrap_or("?")),
                );
            }
            kv("encodings", format!("{}/9 match", rep.encodings_matched));
            kv(
                "recovery_polynomial",
                format!(
                    "{} ({})",
                    rep.recovery_polynomial,
                    if rep.recovery_matches {
                        "match"
                    } else {
                        "mismatch"
                    }
                ),
            );
            kv(
                "recovered_f5",
                format!(
                    "{} ({})",
                    rep.recovered_f5,
                    if rep.recovered_f5_matches {
                        "match"
                    } else {
                        "mismatch"
                    }
                ),
            );
            kv(
                "reference_recovery_consistent",
                rep.reference_recovery_consistent,
            );
            kv(
                "with_groups_2_3_points_negated",
                format!("{}/9 match", rep.negated_points_matched),
            );
            kv("pass", rep.pass());
            if rep.pass() {
                Ok(())
            } else {
                Err(Fail::Check)
            }
        }
        Cmd::Repro(ReproCmd::Table1) => {
            let rows = repro::check_table()?;
            let ok = rows.iter().filter(|r| r.pass()).count();
            for r in &rows {
                kv(
                    &format!("q{}_m{}", r.q, r.m),
                    if r.pass() {
                        "irreducible and = 1 mod h".to_string()
                    } else {
                        format!("FAILED {r:?}")
                    },
                );
            }
            kv("rows", format!("{ok}/{}", rows.len()));
            if ok == rows.len() {
                Ok(())
            } else {
                Err(Fail::Check)
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Fail::Check) => ExitCode::from(1),
        Err(Fail::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Fail::Exhausted) => {
            eprintln!("error: candidate space exhausted");
            ExitCode::from(3)
        }
        Err(Fail::Guard(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(4)
        }
    }
}
