//! The constructive rigidity pipeline: remove even exceptional twisting
//! classes by explicit base changes, conjugate the stage order by a
//! permutation, and certify the remaining upper-triangular piece.
//!
//! Three kinds of degree-two maps are accepted as induced by
//! diffeomorphisms: the unipotent normalization steps produced here, stage
//! permutations whose conjugated matrix is again strictly upper triangular,
//! and maps that are upper triangular on the `x`-generator bases (a
//! syntactic criterion taken as an axiom).  A certificate factors a given
//! isomorphism into such pieces; isomorphisms carrying a weight outside
//! `{+-1}` after normalization are reported as `NotCovered`, a first-class
//! outcome rather than an error.

use num_traits::{Signed, Zero};

use crate::base_change::first_even_exceptional;
use crate::error::{Error, Result};
use crate::iso::{verify_iso, DegreeTwoMap, IsoDescriptor, VerifyOutcome};
use crate::matrix::BottMatrix;
use crate::perm::Perm;
use crate::scalar::{Int, Rat};

/// One base-change step removing an even exceptional twisting class:
/// `alpha_j = c (x_i - alpha_i / 2)` with `c` even, rewritten so that the
/// height of the new `alpha_j` strictly drops.  The companion map fixes
/// every generator except `x_j -> x_j + (c/2) x_i`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NormalizationStep {
    pub j: usize,
    pub i: usize,
    pub c: Int,
    pub before: BottMatrix,
    pub after: BottMatrix,
    pub step_iso: DegreeTwoMap,
}

fn rewrite_even_exceptional(a: &BottMatrix, j: usize, i: usize, c: &Int) -> BottMatrix {
    let n = a.stage();
    let half_c: Int = c / Int::from(2);
    let mut rows: Vec<Vec<Int>> = a.rows().to_vec();
    // row i picks up (c/2) times row j outside column j
    for k in 1..=n {
        if k == j {
            continue;
        }
        rows[i - 1][k - 1] = a.entry(i, k) + &half_c * a.entry(j, k);
    }
    // column j becomes -(c/2) times column i
    for l in 1..=n {
        rows[l - 1][j - 1] = -(&half_c * a.entry(l, i));
    }
    BottMatrix::new(rows).expect("rewrite preserves strict upper triangularity")
}

fn step_map(n: usize, j: usize, i: usize, c: &Int) -> DegreeTwoMap {
    let mut rows = DegreeTwoMap::identity(n).rows().to_vec();
    rows[i - 1][j - 1] = c / Int::from(2);
    DegreeTwoMap::new(rows).expect("square")
}

/// Iteratively removes even exceptional twisting classes, smallest offending
/// stage first.  Each step strictly lowers the height of the offending
/// `alpha_j` and leaves all smaller stages untouched, so the loop
/// terminates; height zero means the class vanished.  The output matrix has
/// no even exceptional classes, and the recorded step maps are unipotent
/// upper triangular, hence weight-one isomorphisms preserving the Pontrjagin
/// class.
pub fn normalize(a: &BottMatrix) -> (BottMatrix, Vec<NormalizationStep>) {
    let mut cur = a.clone();
    let mut steps = Vec::new();
    while let Some(report) = first_even_exceptional(&cur) {
        let j = report.j;
        let crate::base_change::ExceptionalKind::EvenExceptional { c, i } = report.kind else {
            unreachable!("first_even_exceptional only returns even exceptional reports");
        };
        let before = cur.clone();
        let after = rewrite_even_exceptional(&cur, j, i, &c);
        let before_height = crate::base_change::DegreeTwo::new(
            before.alpha_column(j).expect("index in range"),
        )
        .expect("stage >= 1")
        .height();
        let after_height = crate::base_change::DegreeTwo::new(
            after.alpha_column(j).expect("index in range"),
        )
        .expect("stage >= 1")
        .height();
        assert!(
            after_height < before_height,
            "normalization step must lower the height at stage {}",
            j
        );
        steps.push(NormalizationStep {
            j,
            i,
            c: c.clone(),
            before,
            after: after.clone(),
            step_iso: step_map(cur.stage(), j, i, &c),
        });
        cur = after;
    }
    (cur, steps)
}

/// The degree-two map of a stage permutation, sending `x_j` to
/// `x_{sigma(j)}`.
pub fn permutation_map(sigma: &Perm) -> DegreeTwoMap {
    let n = sigma.n();
    let mut rows = vec![vec![Int::zero(); n]; n];
    for j in 1..=n {
        rows[sigma.apply(j) - 1][j - 1] = Int::from(1);
    }
    DegreeTwoMap::new(rows).expect("square")
}

/// Conjugates the stage order: entry `(sigma(i), sigma(j))` of the result is
/// entry `(i, j)` of `A`.  Feasible only when the conjugated matrix is again
/// strictly upper triangular; the companion isomorphism is
/// [`permutation_map`].
pub fn permutation_conjugate(a: &BottMatrix, sigma: &Perm) -> Option<BottMatrix> {
    let n = a.stage();
    assert_eq!(sigma.n(), n, "permutation stage must match the matrix");
    let mut rows = vec![vec![Int::zero(); n]; n];
    for i in 1..=n {
        for j in 1..=n {
            rows[sigma.apply(i) - 1][sigma.apply(j) - 1] = a.entry(i, j).clone();
        }
    }
    BottMatrix::new(rows).ok()
}

/// The syntactic realizability criterion: a verified isomorphism whose
/// degree-two matrix is upper triangular on the generator bases is induced
/// by a diffeomorphism.
pub fn upper_triangular_realizable(m: &DegreeTwoMap) -> bool {
    m.is_upper_triangular()
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum CertFactorKind {
    /// A normalization step (`x_j -> x_j + (c/2) x_i`).
    Normalization { j: usize, i: usize, c: Int },
    /// A stage permutation whose conjugation stays strictly upper
    /// triangular.
    Permutation { sigma: Perm },
    /// An upper-triangular map on the generator bases.
    UpperTriangular,
}

/// One factor of a certificate: a map from the ring of `source` to the ring
/// of `target`, realizable by a diffeomorphism for the stated reason.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CertFactor {
    pub kind: CertFactorKind,
    pub source: BottMatrix,
    pub target: BottMatrix,
    pub map: DegreeTwoMap,
}

/// A factored chain witnessing that an isomorphism is induced by a
/// diffeomorphism.  Factors apply left to right: the first factor's source
/// ring is the original source, and the composite of all factor maps equals
/// the certified isomorphism's degree-two matrix exactly.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DiffeoCertificate {
    pub chain: Vec<CertFactor>,
    pub composite: DegreeTwoMap,
}

impl DiffeoCertificate {
    /// Re-checks every factor and the composite against the stated source
    /// and target; intended for offline validation of serialized
    /// certificates.
    pub fn validate(&self, a: &BottMatrix, b: &BottMatrix) -> Result<()> {
        if self.chain.is_empty() {
            return Err(Error::InvalidInput("certificate chain is empty".into()));
        }
        if self.chain.first().unwrap().source != *a {
            return Err(Error::InvalidInput(
                "certificate does not start at the source matrix".into(),
            ));
        }
        if self.chain.last().unwrap().target != *b {
            return Err(Error::InvalidInput(
                "certificate does not end at the target matrix".into(),
            ));
        }
        let mut composite = DegreeTwoMap::identity(a.stage());
        for (k, factor) in self.chain.iter().enumerate() {
            if k > 0 && self.chain[k - 1].target != factor.source {
                return Err(Error::InvalidInput(format!(
                    "certificate chain breaks between factors {} and {}",
                    k - 1,
                    k
                )));
            }
            let outcome = verify_iso(&factor.source, &factor.target, &factor.map)?;
            let VerifyOutcome::Accepted(desc) = outcome else {
                return Err(Error::InvalidInput(format!(
                    "factor {} does not verify as an isomorphism",
                    k
                )));
            };
            match &factor.kind {
                CertFactorKind::Normalization { j, i, c } => {
                    let expect = step_map(a.stage(), *j, *i, c);
                    if factor.map != expect {
                        return Err(Error::InvalidInput(format!(
                            "normalization factor {} has an unexpected map",
                            k
                        )));
                    }
                    let report = crate::base_change::exceptional_type(&factor.source, *j)?;
                    let shape_ok = matches!(
                        &report.kind,
                        crate::base_change::ExceptionalKind::EvenExceptional { c: rc, i: ri }
                            if rc == c && ri == i
                    );
                    if !shape_ok {
                        return Err(Error::InvalidInput(format!(
                            "normalization factor {} is not anchored at an even exceptional class",
                            k
                        )));
                    }
                    if rewrite_even_exceptional(&factor.source, *j, *i, c) != factor.target {
                        return Err(Error::InvalidInput(format!(
                            "normalization factor {} does not rewrite to its target",
                            k
                        )));
                    }
                }
                CertFactorKind::Permutation { sigma } => {
                    if factor.map != permutation_map(sigma) {
                        return Err(Error::InvalidInput(format!(
                            "permutation factor {} has an unexpected map",
                            k
                        )));
                    }
                    if desc.sigma() != sigma {
                        return Err(Error::InvalidInput(format!(
                            "permutation factor {} disagrees with its descriptor",
                            k
                        )));
                    }
                    if permutation_conjugate(&factor.source, sigma).as_ref() != Some(&factor.target)
                    {
                        return Err(Error::InvalidInput(format!(
                            "permutation factor {} does not conjugate to its target",
                            k
                        )));
                    }
                }
                CertFactorKind::UpperTriangular => {
                    if !upper_triangular_realizable(&factor.map) {
                        return Err(Error::InvalidInput(format!(
                            "upper-triangular factor {} is not upper triangular",
                            k
                        )));
                    }
                }
            }
            composite = factor.map.compose(&composite)?;
        }
        if composite != self.composite {
            return Err(Error::InvalidInput(
                "factor chain does not compose to the stated map".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum CertifyOutcome {
    Certificate(DiffeoCertificate),
    /// The pipeline does not apply: some weight stays outside `{+-1}`.
    NotCovered { reason: String },
}

/// Attempts to factor a verified isomorphism into certificate factors:
/// normalize the source, transport the isomorphism across the chain, peel
/// off the stage permutation, and check the remainder is upper triangular.
/// Weights outside `{+-1}` make the outcome `NotCovered`; every internal
/// assertion after that point is guaranteed by the structure theory, so a
/// failure raises an inconsistency error.
pub fn certify_diffeo(
    a: &BottMatrix,
    b: &BottMatrix,
    iso: &IsoDescriptor,
) -> Result<CertifyOutcome> {
    crate::iso::revalidate(a, b, iso)?;
    let n = a.stage();

    let (normalized, steps) = normalize(a);
    let mut chain: Vec<CertFactor> = Vec::new();
    let mut norm_map = DegreeTwoMap::identity(n);
    for step in &steps {
        norm_map = step.step_iso.compose(&norm_map)?;
        chain.push(CertFactor {
            kind: CertFactorKind::Normalization {
                j: step.j,
                i: step.i,
                c: step.c.clone(),
            },
            source: step.before.clone(),
            target: step.after.clone(),
            map: step.step_iso.clone(),
        });
    }

    let norm_inv = norm_map
        .inverse()
        .expect("unipotent maps are unimodular");
    let transported = iso.map().compose(&norm_inv)?;
    let VerifyOutcome::Accepted(tdesc) = verify_iso(&normalized, b, &transported)? else {
        return Err(Error::Inconsistency(
            "isomorphism fails to transport across the normalization chain".into(),
        ));
    };

    if !tdesc.q().iter().all(|q| q.abs() == Rat::from(Int::from(1))) {
        return Ok(CertifyOutcome::NotCovered {
            reason: format!(
                "weights outside {{+-1}}: q = [{}]",
                tdesc
                    .q()
                    .iter()
                    .map(|q| q.to_string())
                    .collect::<Vec<_>>()
                    .join(", ")
            ),
        });
    }

    let sigma = tdesc.sigma().clone();
    let mut last = normalized.clone();
    let mut rest = transported;
    if !sigma.is_identity() {
        let Some(conjugated) = permutation_conjugate(&normalized, &sigma) else {
            return Err(Error::Inconsistency(
                "conjugated matrix fails to stay strictly upper triangular".into(),
            ));
        };
        let p_map = permutation_map(&sigma);
        rest = rest.compose(&p_map.inverse().expect("permutation maps are unimodular"))?;
        chain.push(CertFactor {
            kind: CertFactorKind::Permutation {
                sigma: sigma.clone(),
            },
            source: normalized.clone(),
            target: conjugated.clone(),
            map: p_map,
        });
        last = conjugated;
    }

    if !upper_triangular_realizable(&rest) {
        return Err(Error::Inconsistency(
            "residual factor is not upper triangular".into(),
        ));
    }
    let VerifyOutcome::Accepted(_) = verify_iso(&last, b, &rest)? else {
        return Err(Error::Inconsistency(
            "residual factor does not verify".into(),
        ));
    };
    chain.push(CertFactor {
        kind: CertFactorKind::UpperTriangular,
        source: last,
        target: b.clone(),
        map: rest,
    });

    let mut composite = DegreeTwoMap::identity(n);
    for factor in &chain {
        composite = factor.map.compose(&composite)?;
    }
    if composite != *iso.map() {
        return Err(Error::Inconsistency(
            "certificate factors do not compose to the certified map".into(),
        ));
    }
    Ok(CertifyOutcome::Certificate(DiffeoCertificate {
        chain,
        composite,
    }))
}
