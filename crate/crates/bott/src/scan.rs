//! Exhaustive scans over families of Bott matrices.
//!
//! A scan enumerates every strictly upper triangular matrix of a given
//! stage whose entries lie in a bounded (optionally even-only) box, runs the
//! selected checks over all ordered pairs, and aggregates worker results in
//! a fixed order, so the emitted report is byte-identical no matter how many
//! workers ran.  Wall time is tracked but excluded from the serialized
//! report for the same reason.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::base_change::{primitive_square_zero, vanishing_pair_decompose, DecomposeOutcome};
use crate::error::{Error, Result};
use crate::iso::{
    compose_isos, find_isos, invert_iso, pontrjagin_preserved, signed_perm_image,
    satisfies_parity_filter, SearchMode, SignedPermImage,
};
use crate::json::IsoJson;
use crate::matrix::BottMatrix;
use crate::oracle;
use crate::rigidity::{certify_diffeo, CertifyOutcome};
use crate::scalar::Int;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Parity {
    All,
    EvenOnly,
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    Pontrjagin,
    Certify,
    Aut,
    Oracles,
}

pub const DEFAULT_BUDGET: u128 = 10_000_000;
const ORACLE_SQUARE_ZERO_BOX: i64 = 6;
const ORACLE_VANISHING_BOX: i64 = 4;

#[derive(Clone, Debug)]
pub struct ScanConfig {
    pub n: usize,
    pub bound: i64,
    pub parity: Parity,
    pub checks: BTreeSet<CheckKind>,
    /// Worker threads; 0 uses the global default.
    pub jobs: usize,
    /// Upper bound on estimated candidate verifications.
    pub budget: u128,
}

impl ScanConfig {
    pub fn new(n: usize, bound: i64, parity: Parity, checks: impl IntoIterator<Item = CheckKind>) -> Self {
        ScanConfig {
            n,
            bound,
            parity,
            checks: checks.into_iter().collect(),
            jobs: 0,
            budget: DEFAULT_BUDGET,
        }
    }
}

/// Every stage-`n` matrix with entries in the box, in lexicographic order of
/// the upper-entry tuples.
pub fn enumerate_matrices(n: usize, bound: i64, parity: Parity) -> Result<Vec<BottMatrix>> {
    if n == 0 {
        return Err(Error::ZeroStage);
    }
    if bound < 0 {
        return Err(Error::InvalidInput("bound must be nonnegative".into()));
    }
    let values: Vec<i64> = match parity {
        Parity::All => (-bound..=bound).collect(),
        Parity::EvenOnly => (-bound..=bound).filter(|v| v % 2 == 0).collect(),
    };
    let cells = n * (n - 1) / 2;
    let mut out = Vec::new();
    let mut idx = vec![0usize; cells];
    loop {
        let vals: Vec<Int> = idx.iter().map(|&k| Int::from(values[k])).collect();
        out.push(BottMatrix::from_upper_entries(n, &vals)?);
        let Some(k) = (0..cells).rev().find(|&k| idx[k] + 1 < values.len()) else {
            break;
        };
        idx[k] += 1;
        for v in idx.iter_mut().skip(k + 1) {
            *v = 0;
        }
    }
    Ok(out)
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

fn estimated_cost(cfg: &ScanConfig, matrices: usize) -> u128 {
    let m = matrices as u128;
    let per_pair = factorial(cfg.n) << cfg.n;
    let mut cost = 0u128;
    if cfg.checks.contains(&CheckKind::Pontrjagin) || cfg.checks.contains(&CheckKind::Certify) {
        cost += m * m * per_pair;
    }
    if cfg.checks.contains(&CheckKind::Aut) {
        cost += m * per_pair;
    }
    if cfg.checks.contains(&CheckKind::Oracles) {
        let sz_box = (2 * ORACLE_SQUARE_ZERO_BOX as u128 + 1).pow(cfg.n as u32);
        let vp_side = (2 * ORACLE_VANISHING_BOX as u128 + 1).pow(cfg.n as u32);
        cost += m * (sz_box + vp_side * vp_side);
    }
    cost
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Violation {
    pub check: String,
    pub a_index: usize,
    pub b_index: usize,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub iso: Option<IsoJson>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
pub struct ScanTotals {
    pub matrices: u64,
    pub pairs: u64,
    pub isos: u64,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ScanReport {
    pub n: usize,
    pub bound: i64,
    pub parity: Parity,
    pub checks: Vec<CheckKind>,
    pub totals: ScanTotals,
    /// Expected empty; any entry is a finding against the checked claims.
    pub violations: Vec<Violation>,
    pub not_covered: u64,
    /// Matrix indices (into the enumeration order) grouped by ring
    /// isomorphism; present when pair checks ran.
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub iso_classes: Vec<Vec<usize>>,
    #[serde(skip)]
    pub wall: Duration,
}

impl ScanReport {
    pub fn has_violations(&self) -> bool {
        !self.violations.is_empty()
    }
}

#[derive(Default)]
struct PairOutcome {
    isos: u64,
    not_covered: u64,
    any_iso: bool,
    violations: Vec<Violation>,
}

fn check_pair(
    cfg: &ScanConfig,
    matrices: &[BottMatrix],
    ia: usize,
    ib: usize,
) -> Result<PairOutcome> {
    let a = &matrices[ia];
    let b = &matrices[ib];
    let mut out = PairOutcome::default();
    let isos = find_isos(a, b, SearchMode::All)?;
    out.isos = isos.len() as u64;
    out.any_iso = !isos.is_empty();
    for iso in &isos {
        if !satisfies_parity_filter(a, b, iso) {
            out.violations.push(Violation {
                check: "structure".into(),
                a_index: ia,
                b_index: ib,
                detail: "descriptor violates the parity biconditionals".into(),
                iso: Some(IsoJson::from(iso)),
            });
        }
        if cfg.checks.contains(&CheckKind::Pontrjagin) {
            let check = pontrjagin_preserved(a, b, iso)?;
            if !check.preserved {
                out.violations.push(Violation {
                    check: "pontrjagin".into(),
                    a_index: ia,
                    b_index: ib,
                    detail: format!(
                        "mapped class {} differs from target {}",
                        check.mapped, check.target
                    ),
                    iso: Some(IsoJson::from(iso)),
                });
            }
        }
        if cfg.checks.contains(&CheckKind::Certify) {
            match certify_diffeo(a, b, iso)? {
                CertifyOutcome::Certificate(cert) => {
                    if &cert.composite != iso.map() {
                        out.violations.push(Violation {
                            check: "certify".into(),
                            a_index: ia,
                            b_index: ib,
                            detail: "certificate composite differs from the isomorphism".into(),
                            iso: Some(IsoJson::from(iso)),
                        });
                    }
                }
                CertifyOutcome::NotCovered { .. } => out.not_covered += 1,
            }
        }
    }
    Ok(out)
}

fn check_single(cfg: &ScanConfig, matrices: &[BottMatrix], ix: usize) -> Result<Vec<Violation>> {
    let a = &matrices[ix];
    let mut violations = Vec::new();
    if cfg.checks.contains(&CheckKind::Aut) {
        let autos = find_isos(a, a, SearchMode::All)?;
        let mut images: Vec<SignedPermImage> = autos.iter().map(signed_perm_image).collect();
        images.sort();
        images.dedup();
        if images.len() != autos.len() {
            violations.push(Violation {
                check: "aut".into(),
                a_index: ix,
                b_index: ix,
                detail: "signed permutation image is not injective".into(),
                iso: None,
            });
        }
        let closed = autos.iter().all(|x| {
            invert_iso(x).map(|inv| autos.contains(&inv)).unwrap_or(false)
                && autos
                    .iter()
                    .all(|y| compose_isos(x, y).map(|z| autos.contains(&z)).unwrap_or(false))
        });
        if !closed {
            violations.push(Violation {
                check: "aut".into(),
                a_index: ix,
                b_index: ix,
                detail: "automorphism set is not closed under the group laws".into(),
                iso: None,
            });
        }
    }
    if cfg.checks.contains(&CheckKind::Oracles) {
        let mut formula = primitive_square_zero(a);
        formula.sort();
        let mut brute = oracle::brute_force_square_zero(a, ORACLE_SQUARE_ZERO_BOX);
        brute.sort();
        if formula != brute {
            violations.push(Violation {
                check: "oracles".into(),
                a_index: ix,
                b_index: ix,
                detail: "square-zero classification disagrees with brute force".into(),
                iso: None,
            });
        }
        for (u, v) in oracle::brute_force_vanishing_pairs(a, ORACLE_VANISHING_BOX) {
            let ok = match vanishing_pair_decompose(a, &u, &v) {
                Ok(DecomposeOutcome::Decomposed(d)) => {
                    d.reconstruct(a).map(|p| p == (u.clone(), v.clone())).unwrap_or(false)
                }
                _ => false,
            };
            if !ok {
                violations.push(Violation {
                    check: "oracles".into(),
                    a_index: ix,
                    b_index: ix,
                    detail: format!("vanishing pair ({}, {}) fails to decompose", u, v),
                    iso: None,
                });
            }
        }
    }
    Ok(violations)
}

/// Runs the configured scan.  Results are merged in enumeration order;
/// worker failures abort the scan after dumping the partial report to
/// stderr.
pub fn run_scan(cfg: &ScanConfig) -> Result<ScanReport> {
    let started = Instant::now();
    let matrices = enumerate_matrices(cfg.n, cfg.bound, cfg.parity)?;
    let estimate = estimated_cost(cfg, matrices.len());
    if estimate > cfg.budget {
        return Err(Error::BudgetExceeded {
            estimate,
            budget: cfg.budget,
        });
    }

    let pair_checks = cfg.checks.contains(&CheckKind::Pontrjagin)
        || cfg.checks.contains(&CheckKind::Certify);
    let run = |cfg: &ScanConfig| -> Result<ScanReport> {
        let m = matrices.len();
        let mut totals = ScanTotals {
            matrices: m as u64,
            ..ScanTotals::default()
        };
        let mut violations: Vec<Violation> = Vec::new();
        let mut not_covered = 0u64;
        let mut union: Vec<usize> = (0..m).collect();

        if pair_checks {
            let pairs: Vec<(usize, usize)> = (0..m)
                .flat_map(|ia| (0..m).map(move |ib| (ia, ib)))
                .collect();
            totals.pairs = pairs.len() as u64;
            let results: Vec<Result<PairOutcome>> = pairs
                .par_iter()
                .map(|&(ia, ib)| check_pair(cfg, &matrices, ia, ib))
                .collect();
            let mut outcomes = Vec::with_capacity(results.len());
            for (k, r) in results.into_iter().enumerate() {
                match r {
                    Ok(o) => outcomes.push(o),
                    Err(e) => {
                        dump_partial(cfg, &totals, &violations, not_covered);
                        let (ia, ib) = pairs[k];
                        return Err(Error::Inconsistency(format!(
                            "worker failed on pair ({}, {}): {}",
                            ia, ib, e
                        )));
                    }
                }
            }
            for (k, o) in outcomes.iter().enumerate() {
                totals.isos += o.isos;
                not_covered += o.not_covered;
                violations.extend(o.violations.iter().cloned());
                if o.any_iso {
                    let (ia, ib) = pairs[k];
                    join(&mut union, ia, ib);
                }
            }
        }

        if cfg.checks.contains(&CheckKind::Aut) || cfg.checks.contains(&CheckKind::Oracles) {
            let results: Vec<Result<Vec<Violation>>> = (0..m)
                .into_par_iter()
                .map(|ix| check_single(cfg, &matrices, ix))
                .collect();
            for r in results {
                match r {
                    Ok(v) => violations.extend(v),
                    Err(e) => {
                        dump_partial(cfg, &totals, &violations, not_covered);
                        return Err(Error::Inconsistency(format!("worker failed: {}", e)));
                    }
                }
            }
        }

        let iso_classes = if pair_checks {
            classes(&mut union)
        } else {
            Vec::new()
        };
        Ok(ScanReport {
            n: cfg.n,
            bound: cfg.bound,
            parity: cfg.parity,
            checks: cfg.checks.iter().copied().collect(),
            totals,
            violations,
            not_covered,
            iso_classes,
            wall: started.elapsed(),
        })
    };

    let mut report = if cfg.jobs > 0 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.jobs)
            .build()
            .map_err(|e| Error::InvalidInput(format!("cannot build worker pool: {}", e)))?;
        pool.install(|| run(cfg))?
    } else {
        run(cfg)?
    };
    report.wall = started.elapsed();
    Ok(report)
}

fn dump_partial(
    cfg: &ScanConfig,
    totals: &ScanTotals,
    violations: &[Violation],
    not_covered: u64,
) {
    let partial = serde_json::json!({
        "partial": true,
        "n": cfg.n,
        "bound": cfg.bound,
        "totals": totals,
        "violations": violations,
        "not_covered": not_covered,
    });
    eprintln!("{}", partial);
}

fn find(union: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while union[r] != r {
        r = union[r];
    }
    let mut c = x;
    while union[c] != r {
        let next = union[c];
        union[c] = r;
        c = next;
    }
    r
}

fn join(union: &mut [usize], a: usize, b: usize) {
    let (ra, rb) = (find(union, a), find(union, b));
    if ra != rb {
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        union[hi] = lo;
    }
}

fn classes(union: &mut [usize]) -> Vec<Vec<usize>> {
    let m = union.len();
    let mut buckets: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for x in 0..m {
        let r = find(union, x);
        buckets.entry(r).or_default().push(x);
    }
    buckets.into_values().collect()
}
