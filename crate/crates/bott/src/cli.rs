//! Command-line front end.  All logic lives here in the library; the binary
//! only forwards to [`run`].
//!
//! Exit codes: 0 success (or: rings isomorphic), 1 clean negative (rings not
//! isomorphic), 2 invalid input, 3 checked-claim violation (never expected).

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::base_change::{primitive_square_zero, vanishing_pair_decompose, DecomposeOutcome};
use crate::error::Result;
use crate::expr;
use crate::iso::{find_isos, signed_perm_image, IsoDescriptor, SearchMode};
use crate::json::{
    read_matrix_file, CertificateJson, ClassJson, DecompositionJson, DegreeTwoJson, IsoJson,
    MatrixJson,
};
use crate::matrix::BottMatrix;
use crate::oracle;
use crate::rigidity::{certify_diffeo, normalize, CertifyOutcome};
use crate::ring::pontrjagin;
use crate::scalar::Int;
use crate::scan::{run_scan, CheckKind, Parity, ScanConfig, DEFAULT_BUDGET};

#[derive(Parser)]
#[command(
    name = "bott",
    about = "Exact computations in Bott manifold cohomology rings",
    version
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum ParityArg {
    All,
    EvenOnly,
}

impl From<ParityArg> for Parity {
    fn from(p: ParityArg) -> Parity {
        match p {
            ParityArg::All => Parity::All,
            ParityArg::EvenOnly => Parity::EvenOnly,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum CheckArg {
    Pontrjagin,
    Certify,
    Aut,
    Oracles,
}

impl From<CheckArg> for CheckKind {
    fn from(c: CheckArg) -> CheckKind {
        match c {
            CheckArg::Pontrjagin => CheckKind::Pontrjagin,
            CheckArg::Certify => CheckKind::Certify,
            CheckArg::Aut => CheckKind::Aut,
            CheckArg::Oracles => CheckKind::Oracles,
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate a polynomial expression in the ring of a matrix.
    Ring {
        matrix: PathBuf,
        expression: String,
        #[arg(long)]
        json: bool,
    },
    /// Print the total Pontrjagin class of a matrix.
    Pontrjagin {
        matrix: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Enumerate graded ring isomorphisms between two matrices.
    Iso {
        a: PathBuf,
        b: PathBuf,
        /// Report every isomorphism (default).
        #[arg(long, conflicts_with = "first")]
        all: bool,
        /// Stop at the first isomorphism found.
        #[arg(long)]
        first: bool,
        /// Attach a diffeomorphism certificate (or not_covered) per
        /// isomorphism.
        #[arg(long)]
        certify: bool,
        #[arg(long)]
        json: bool,
    },
    /// Remove even exceptional twisting classes by base changes.
    Normalize {
        matrix: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// The automorphism group of a matrix's ring.
    Aut {
        matrix: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Diffeomorphism certificates for every isomorphism between two
    /// matrices.
    Certify {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Exhaustive checks over a family of matrices.
    Scan {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        bound: i64,
        #[arg(long, value_enum, default_value = "all")]
        parity: ParityArg,
        #[arg(long, value_delimiter = ',', default_values = ["pontrjagin"])]
        checks: Vec<CheckArg>,
        /// Worker threads (0 = default).
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        /// Maximum estimated candidate verifications.
        #[arg(long, default_value_t = DEFAULT_BUDGET as u64)]
        budget: u64,
        #[arg(long)]
        json: bool,
    },
    /// Brute-force validators for the structured algorithms.
    Oracle {
        #[command(subcommand)]
        which: OracleCmd,
    },
}

#[derive(Subcommand)]
enum OracleCmd {
    /// Compare the square-zero classification with brute-force enumeration.
    SquareZero {
        matrix: PathBuf,
        #[arg(long = "box", default_value_t = 6)]
        bound: i64,
        #[arg(long)]
        json: bool,
    },
    /// Decompose every brute-force vanishing pair and reconstruct it.
    VanishingPairs {
        matrix: PathBuf,
        #[arg(long = "box", default_value_t = 4)]
        bound: i64,
        #[arg(long)]
        json: bool,
    },
    /// Compare the structured isomorphism search with naive matrix
    /// enumeration.
    Isos {
        a: PathBuf,
        b: PathBuf,
        #[arg(long = "box", default_value_t = 6)]
        bound: i64,
        #[arg(long)]
        json: bool,
    },
    /// Check normal forms against random-order rewriting.
    Confluence {
        matrix: PathBuf,
        #[arg(long, default_value_t = 200)]
        trials: u64,
        #[arg(long)]
        json: bool,
    },
}

/// Entry point used by the binary: parses `std::env::args`.
pub fn run() -> i32 {
    run_from(std::env::args())
}

pub fn run_from<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // clap handles --help/--version with success exit codes
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e);
            2
        }
    }
}

fn dispatch(cli: Cli) -> Result<i32> {
    match cli.cmd {
        Cmd::Ring {
            matrix,
            expression,
            json,
        } => cmd_ring(&matrix, &expression, json),
        Cmd::Pontrjagin { matrix, json } => cmd_pontrjagin(&matrix, json),
        Cmd::Iso {
            a,
            b,
            all: _,
            first,
            certify,
            json,
        } => cmd_iso(&a, &b, first, certify, json),
        Cmd::Normalize { matrix, json } => cmd_normalize(&matrix, json),
        Cmd::Aut { matrix, json } => cmd_aut(&matrix, json),
        Cmd::Certify { a, b, json } => cmd_iso(&a, &b, false, true, json),
        Cmd::Scan {
            n,
            bound,
            parity,
            checks,
            jobs,
            budget,
            json,
        } => cmd_scan(n, bound, parity, &checks, jobs, budget, json),
        Cmd::Oracle { which } => match which {
            OracleCmd::SquareZero {
                matrix,
                bound,
                json,
            } => cmd_oracle_square_zero(&matrix, bound, json),
            OracleCmd::VanishingPairs {
                matrix,
                bound,
                json,
            } => cmd_oracle_vanishing_pairs(&matrix, bound, json),
            OracleCmd::Isos { a, b, bound, json } => cmd_oracle_isos(&a, &b, bound, json),
            OracleCmd::Confluence {
                matrix,
                trials,
                json,
            } => cmd_oracle_confluence(&matrix, trials, json),
        },
    }
}

fn cmd_ring(matrix: &Path, expression: &str, json: bool) -> Result<i32> {
    let a = read_matrix_file(matrix)?;
    let value = expr::eval(&a, expression)?;
    if json {
        println!("{}", serde_json::to_string(&ClassJson::from(&value))?);
    } else {
        println!("{}", value);
    }
    Ok(0)
}

fn cmd_pontrjagin(matrix: &Path, json: bool) -> Result<i32> {
    let a = read_matrix_file(matrix)?;
    let p = pontrjagin(&a);
    if json {
        println!("{}", serde_json::to_string(&ClassJson::from(&p))?);
    } else {
        println!("{}", p);
    }
    Ok(0)
}

fn certificate_value(
    a: &BottMatrix,
    b: &BottMatrix,
    iso: &IsoDescriptor,
) -> Result<serde_json::Value> {
    Ok(match certify_diffeo(a, b, iso)? {
        CertifyOutcome::Certificate(cert) => json!({
            "status": "certificate",
            "certificate": CertificateJson::from(&cert),
        }),
        CertifyOutcome::NotCovered { reason } => json!({
            "status": "not_covered",
            "reason": reason,
        }),
    })
}

fn cmd_iso(a_path: &Path, b_path: &Path, first: bool, certify: bool, json: bool) -> Result<i32> {
    let started = Instant::now();
    let a = read_matrix_file(a_path)?;
    let b = read_matrix_file(b_path)?;
    let mode = if first {
        SearchMode::First
    } else {
        SearchMode::All
    };
    let isos = find_isos(&a, &b, mode)?;
    let mut certified = 0usize;
    let mut not_covered = 0usize;
    let mut cert_values = Vec::new();
    if certify {
        for iso in &isos {
            let v = certificate_value(&a, &b, iso)?;
            if v["status"] == "certificate" {
                certified += 1;
            } else {
                not_covered += 1;
            }
            cert_values.push(v);
        }
    }
    if json {
        let mut report = json!({
            "summary": {
                "count": isos.len(),
                "mode": if first { "first" } else { "all" },
                "isomorphic": !isos.is_empty(),
                "wall_ms": started.elapsed().as_millis() as u64,
            },
            "isos": isos.iter().map(IsoJson::from).collect::<Vec<_>>(),
        });
        if certify {
            report["summary"]["certified"] = json!(certified);
            report["summary"]["not_covered"] = json!(not_covered);
            report["certificates"] = json!(cert_values);
        }
        println!("{}", serde_json::to_string(&report)?);
    } else {
        println!(
            "{} isomorphism(s) between the stage-{} rings",
            isos.len(),
            a.stage()
        );
        for (k, iso) in isos.iter().enumerate() {
            println!("--- iso {}", k);
            println!("{}", iso);
            if certify {
                match &cert_values[k]["status"] {
                    v if v == "certificate" => {
                        let chain = cert_values[k]["certificate"]["factors"]
                            .as_array()
                            .map(|f| f.len())
                            .unwrap_or(0);
                        println!("certificate: {} factor(s)", chain);
                    }
                    _ => println!(
                        "not covered: {}",
                        cert_values[k]["reason"].as_str().unwrap_or("")
                    ),
                }
            }
        }
        if certify {
            println!("certified: {}, not covered: {}", certified, not_covered);
        }
    }
    Ok(if isos.is_empty() { 1 } else { 0 })
}

fn cmd_normalize(matrix: &Path, json: bool) -> Result<i32> {
    let a = read_matrix_file(matrix)?;
    let (out, steps) = normalize(&a);
    if json {
        let report = json!({
            "normalized": MatrixJson::from(&out),
            "steps": steps.iter().map(|s| json!({
                "j": s.j,
                "i": s.i,
                "c": crate::json::JInt(s.c.clone()),
                "before": MatrixJson::from(&s.before),
                "after": MatrixJson::from(&s.after),
                "map": s.step_iso.rows().iter().map(|r| {
                    r.iter().map(|v| crate::json::JInt(v.clone())).collect::<Vec<_>>()
                }).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        });
        println!("{}", serde_json::to_string(&report)?);
    } else {
        println!("{} normalization step(s)", steps.len());
        for s in &steps {
            println!("step: j={} i={} c={}", s.j, s.i, s.c);
        }
        println!("normalized matrix:\n{}", out);
    }
    Ok(0)
}

fn cmd_aut(matrix: &Path, json: bool) -> Result<i32> {
    let started = Instant::now();
    let a = read_matrix_file(matrix)?;
    let autos = find_isos(&a, &a, SearchMode::All)?;
    if json {
        let report = json!({
            "summary": {
                "count": autos.len(),
                "wall_ms": started.elapsed().as_millis() as u64,
            },
            "automorphisms": autos.iter().map(|d| {
                let img = signed_perm_image(d);
                json!({
                    "iso": IsoJson::from(d),
                    "signed_image": { "signs": img.signs, "sigma": img.sigma.images() },
                })
            }).collect::<Vec<_>>(),
        });
        println!("{}", serde_json::to_string(&report)?);
    } else {
        println!("{} automorphism(s)", autos.len());
        for (k, d) in autos.iter().enumerate() {
            let img = signed_perm_image(d);
            println!(
                "--- aut {}: signs {:?} sigma {}",
                k, img.signs, img.sigma
            );
            println!("{}", d.map());
        }
    }
    Ok(0)
}

fn cmd_scan(
    n: usize,
    bound: i64,
    parity: ParityArg,
    checks: &[CheckArg],
    jobs: usize,
    budget: u64,
    json: bool,
) -> Result<i32> {
    let mut cfg = ScanConfig::new(
        n,
        bound,
        parity.into(),
        checks.iter().map(|&c| CheckKind::from(c)),
    );
    cfg.jobs = jobs;
    cfg.budget = budget as u128;
    let report = run_scan(&cfg)?;
    eprintln!(
        "scan finished in {} ms ({} matrices, {} pairs, {} isos)",
        report.wall.as_millis(),
        report.totals.matrices,
        report.totals.pairs,
        report.totals.isos
    );
    if json {
        println!("{}", serde_json::to_string(&report)?);
    } else {
        println!(
            "matrices: {}, pairs: {}, isos: {}",
            report.totals.matrices, report.totals.pairs, report.totals.isos
        );
        println!("violations: {}", report.violations.len());
        println!("not covered: {}", report.not_covered);
        if !report.iso_classes.is_empty() {
            println!("iso classes: {}", report.iso_classes.len());
        }
        for v in &report.violations {
            println!(
                "VIOLATION [{}] pair ({}, {}): {}",
                v.check, v.a_index, v.b_index, v.detail
            );
        }
    }
    Ok(if report.has_violations() { 3 } else { 0 })
}

fn cmd_oracle_square_zero(matrix: &Path, bound: i64, json: bool) -> Result<i32> {
    let a = read_matrix_file(matrix)?;
    let mut formula = primitive_square_zero(&a);
    formula.sort();
    let mut brute = oracle::brute_force_square_zero(&a, bound);
    brute.sort();
    let agree = formula == brute;
    if json {
        println!(
            "{}",
            json!({
                "agree": agree,
                "formula": formula.iter().map(DegreeTwoJson::from).collect::<Vec<_>>(),
                "brute_force": brute.iter().map(DegreeTwoJson::from).collect::<Vec<_>>(),
                "box": bound,
            })
        );
    } else {
        println!(
            "classification: {} element(s); brute force (box {}): {} element(s); agree: {}",
            formula.len(),
            bound,
            brute.len(),
            agree
        );
    }
    Ok(if agree { 0 } else { 3 })
}

fn cmd_oracle_vanishing_pairs(matrix: &Path, bound: i64, json: bool) -> Result<i32> {
    let a = read_matrix_file(matrix)?;
    let pairs = oracle::brute_force_vanishing_pairs(&a, bound);
    let mut failures = 0usize;
    let mut sample = Vec::new();
    for (u, v) in &pairs {
        let ok = match vanishing_pair_decompose(&a, u, v)? {
            DecomposeOutcome::Decomposed(d) => {
                let ok = d.reconstruct(&a)? == (u.clone(), v.clone());
                if ok && sample.len() < 5 {
                    sample.push(json!({
                        "u": DegreeTwoJson::from(u),
                        "v": DegreeTwoJson::from(v),
                        "decomposition": DecompositionJson::from(&d),
                    }));
                }
                ok
            }
            DecomposeOutcome::NotAPair => false,
        };
        if !ok {
            failures += 1;
        }
    }
    if json {
        println!(
            "{}",
            json!({
                "pairs": pairs.len(),
                "failures": failures,
                "box": bound,
                "sample": sample,
            })
        );
    } else {
        println!(
            "{} vanishing pair(s) in box {}; decomposition failures: {}",
            pairs.len(),
            bound,
            failures
        );
    }
    Ok(if failures == 0 { 0 } else { 3 })
}

fn cmd_oracle_isos(a_path: &Path, b_path: &Path, bound: i64, json: bool) -> Result<i32> {
    let a = read_matrix_file(a_path)?;
    let b = read_matrix_file(b_path)?;
    let n = a.stage();
    let cells = (n * n) as u32;
    let full_count = (2 * bound as u128 + 1).pow(cells);
    let naive = if full_count <= 50_000_000 {
        oracle::naive_isos_full(&a, &b, bound)?
    } else {
        oracle::naive_isos_pruned(&a, &b, bound)?
    };
    let structured = find_isos(&a, &b, SearchMode::All)?;
    let agree = naive == structured;
    if json {
        println!(
            "{}",
            json!({
                "agree": agree,
                "structured": structured.len(),
                "naive": naive.len(),
                "box": bound,
            })
        );
    } else {
        println!(
            "structured search: {} iso(s); naive enumeration (box {}): {} iso(s); agree: {}",
            structured.len(),
            bound,
            naive.len(),
            agree
        );
    }
    Ok(if agree { 0 } else { 3 })
}

fn cmd_oracle_confluence(matrix: &Path, trials: u64, json: bool) -> Result<i32> {
    let a = read_matrix_file(matrix)?;
    let n = a.stage();
    let mut failures = 0u64;
    let mut state = 0x9E37_79B9_7F4A_7C15u64;
    let mut next = move || {
        state ^= state >> 12;
        state ^= state << 25;
        state ^= state >> 27;
        state.wrapping_mul(0x2545_F491_4F6C_DD1D)
    };
    for t in 0..trials {
        let len = (next() % 6 + 1) as usize;
        let raw: Vec<usize> = (0..len).map(|_| (next() as usize % n) + 1).collect();
        let coeff = Int::from((next() % 7) as i64 - 3);
        let canonical = crate::ring::reduce(&a, &raw, coeff.clone())?;
        let random = oracle::reduce_random_order(&a, &raw, coeff, t + 1)?;
        if canonical != random {
            failures += 1;
        }
    }
    if json {
        println!("{}", json!({ "trials": trials, "failures": failures }));
    } else {
        println!("{} trial(s); mismatches: {}", trials, failures);
    }
    Ok(if failures == 0 { 0 } else { 3 })
}
