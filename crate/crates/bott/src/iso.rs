//! Enumeration and verification of graded ring isomorphisms between the
//! integral cohomology rings of two Bott manifolds.
//!
//! Every isomorphism is diagonal in the `y`-bases: it sends `y_j` to
//! `q_j * y_{sigma(j)}` for a permutation `sigma` and weights
//! `q_j in {+-1/2, +-1, +-2}`, with the weight magnitude forced by the
//! parities of the twisting classes on both sides.  The search therefore
//! runs over `n! * 2^n` candidates: build the degree-two matrix determined
//! by `(sigma, q)`, keep it when it is integral, and verify that it is
//! unimodular and kills the defining relations.  The degree-two matrix
//! extends multiplicatively to the whole ring (the ring is generated in
//! degree two), and it is bijective as soon as it is unimodular because
//! both rings have the same graded ranks.

use num_traits::{One, Signed, Zero};

use crate::base_change::{exceptional_type, y_basis, ExceptionalKind};
use crate::error::{Error, Result};
use crate::linalg::{int_det, int_mat_mul, rat_mat_vec, unimodular_inverse};
use crate::matrix::BottMatrix;
use crate::perm::Perm;
use crate::ring::{multiply, pontrjagin, CohomClass};
use crate::scalar::{rat_is_integral, Int, Rat};

/// A candidate degree-two map in `x`-coordinates: `entry(i, j)` is the
/// coefficient of `x_i` (target) in the image of `x_j` (source), so columns
/// are images of source generators.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub struct DegreeTwoMap {
    n: usize,
    rows: Vec<Vec<Int>>,
}

impl DegreeTwoMap {
    pub fn new(rows: Vec<Vec<Int>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::ZeroStage);
        }
        for row in &rows {
            if row.len() != n {
                return Err(Error::InvalidInput(format!(
                    "expected {} columns, found {}",
                    n,
                    row.len()
                )));
            }
        }
        Ok(DegreeTwoMap { n, rows })
    }

    pub fn from_rows(rows: &[&[i64]]) -> Result<Self> {
        Self::new(
            rows.iter()
                .map(|r| r.iter().map(|&v| Int::from(v)).collect())
                .collect(),
        )
    }

    pub fn identity(n: usize) -> Self {
        assert!(n >= 1);
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { Int::one() } else { Int::zero() })
                    .collect()
            })
            .collect();
        DegreeTwoMap { n, rows }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> &Int {
        assert!(i >= 1 && i <= self.n && j >= 1 && j <= self.n);
        &self.rows[i - 1][j - 1]
    }

    pub fn rows(&self) -> &[Vec<Int>] {
        &self.rows
    }

    pub fn column(&self, j: usize) -> Vec<Int> {
        (1..=self.n).map(|i| self.entry(i, j).clone()).collect()
    }

    /// Image of the source generator `x_j` as a degree-two class.
    pub fn column_class(&self, j: usize) -> CohomClass<Int> {
        CohomClass::from_x_coords(&self.column(j))
    }

    pub fn det(&self) -> Int {
        int_det(&self.rows)
    }

    pub fn is_unimodular(&self) -> bool {
        self.det().abs().is_one()
    }

    /// `entry(i, j) == 0` for every `i > j`.
    pub fn is_upper_triangular(&self) -> bool {
        (1..=self.n).all(|j| ((j + 1)..=self.n).all(|i| self.entry(i, j).is_zero()))
    }

    /// `self` after `inner`: the matrix product `self * inner`.
    pub fn compose(&self, inner: &DegreeTwoMap) -> Result<DegreeTwoMap> {
        if self.n != inner.n {
            return Err(Error::StageMismatch(self.n, inner.n));
        }
        Ok(DegreeTwoMap {
            n: self.n,
            rows: int_mat_mul(&self.rows, &inner.rows),
        })
    }

    /// Exact integral inverse; `None` unless the determinant is `+-1`.
    pub fn inverse(&self) -> Option<DegreeTwoMap> {
        unimodular_inverse(&self.rows).map(|rows| DegreeTwoMap { n: self.n, rows })
    }

    /// Maximum absolute value over all entries.
    pub fn max_abs_entry(&self) -> Int {
        let mut best = Int::zero();
        for row in &self.rows {
            for v in row {
                let a = v.abs();
                if a > best {
                    best = a;
                }
            }
        }
        best
    }
}

impl std::fmt::Display for DegreeTwoMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for (k, row) in self.rows.iter().enumerate() {
            if k > 0 {
                writeln!(f)?;
            }
            write!(f, "[")?;
            for (l, v) in row.iter().enumerate() {
                if l > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", v)?;
            }
            write!(f, "]")?;
        }
        Ok(())
    }
}

/// A verified isomorphism together with its `y`-diagonal data: the map sends
/// `y_j` to `q_j * y_{sigma(j)}` exactly in the rational rings.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IsoDescriptor {
    map: DegreeTwoMap,
    sigma: Perm,
    q: Vec<Rat>,
}

impl IsoDescriptor {
    /// Assembles a descriptor from raw parts, e.g. after deserialization.
    /// Functions consuming descriptors re-verify them against the matrices.
    pub fn from_parts(map: DegreeTwoMap, sigma: Perm, q: Vec<Rat>) -> Result<Self> {
        if map.n() != sigma.n() || map.n() != q.len() {
            return Err(Error::StageMismatch(map.n(), sigma.n().min(q.len())));
        }
        Ok(IsoDescriptor { map, sigma, q })
    }

    pub fn map(&self) -> &DegreeTwoMap {
        &self.map
    }

    pub fn sigma(&self) -> &Perm {
        &self.sigma
    }

    pub fn q(&self) -> &[Rat] {
        &self.q
    }

    pub fn n(&self) -> usize {
        self.map.n()
    }

    pub fn is_identity(&self) -> bool {
        self.map == DegreeTwoMap::identity(self.n())
    }

    pub(crate) fn sort_key(&self) -> (Vec<usize>, Vec<Rat>, Vec<Vec<Int>>) {
        (
            self.sigma.images().to_vec(),
            self.q.clone(),
            self.map.rows().to_vec(),
        )
    }
}

impl std::fmt::Display for IsoDescriptor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "sigma={} q=[", self.sigma)?;
        for (k, q) in self.q.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", q)?;
        }
        writeln!(f, "]")?;
        write!(f, "{}", self.map)
    }
}

/// A normal (non-fatal) reason to reject a candidate map.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Rejection {
    NotUnimodular { det: Int },
    RelationNotKilled { j: usize, residue: CohomClass<Int> },
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum VerifyOutcome {
    Accepted(IsoDescriptor),
    Rejected(Rejection),
}

impl VerifyOutcome {
    pub fn accepted(self) -> Option<IsoDescriptor> {
        match self {
            VerifyOutcome::Accepted(d) => Some(d),
            VerifyOutcome::Rejected(_) => None,
        }
    }
}

fn allowed_q_magnitude(q: &Rat) -> bool {
    let a = q.abs();
    a == Rat::new(Int::one(), Int::from(2)) || a.is_one() || a == Rat::from(Int::from(2))
}

/// Images of `alpha_j` under the candidate map, as integer coordinate
/// vectors in the target `x`-basis.
fn map_alpha_column(a: &BottMatrix, m: &DegreeTwoMap, j: usize) -> Vec<Int> {
    let n = a.stage();
    let mut acc = vec![Int::zero(); n];
    for i in 1..j {
        let aij = a.entry(i, j);
        if aij.is_zero() {
            continue;
        }
        for r in 1..=n {
            let add = aij * m.entry(r, i);
            acc[r - 1] += add;
        }
    }
    acc
}

/// Decides whether a degree-two matrix defines a graded ring isomorphism:
/// it must be unimodular and must send every relation class
/// `x_j (x_j - alpha_j)` to zero in the target ring.  An accepted map is
/// then expressed in the `y`-bases; the single-term diagonal shape and the
/// weight range are asserted, and a failure there is an internal
/// inconsistency rather than a rejection.
pub fn verify_iso(a: &BottMatrix, b: &BottMatrix, m: &DegreeTwoMap) -> Result<VerifyOutcome> {
    let n = a.stage();
    if b.stage() != n {
        return Err(Error::StageMismatch(n, b.stage()));
    }
    if m.n() != n {
        return Err(Error::StageMismatch(m.n(), n));
    }
    let det = m.det();
    if !det.abs().is_one() {
        return Ok(VerifyOutcome::Rejected(Rejection::NotUnimodular { det }));
    }
    for j in 1..=n {
        let phi = m.column_class(j);
        let psi_alpha = CohomClass::from_x_coords(&map_alpha_column(a, m, j));
        let factor = phi.sub(&psi_alpha).expect("stages agree");
        let residue = multiply(b, &phi, &factor)?;
        if !residue.is_zero() {
            return Ok(VerifyOutcome::Rejected(Rejection::RelationNotKilled {
                j,
                residue,
            }));
        }
    }
    // diagonal shape in the y-bases
    let yb = y_basis(b);
    let yb_rows: Vec<Vec<Rat>> = (1..=n)
        .map(|i| (1..=n).map(|k| yb.entry(i, k).clone()).collect())
        .collect();
    let half = Rat::new(Int::one(), Int::from(2));
    let mut images = vec![0usize; n];
    let mut q = Vec::with_capacity(n);
    for j in 1..=n {
        let phi = m.column(j);
        let psi_alpha = map_alpha_column(a, m, j);
        let y_image_x: Vec<Rat> = phi
            .iter()
            .zip(&psi_alpha)
            .map(|(p, al)| Rat::from(p.clone()) - &half * Rat::from(al.clone()))
            .collect();
        let y_coords = rat_mat_vec(&yb_rows, &y_image_x);
        let nonzero: Vec<usize> = (1..=n).filter(|&i| !y_coords[i - 1].is_zero()).collect();
        if nonzero.len() != 1 {
            return Err(Error::Inconsistency(format!(
                "accepted map is not y-diagonal at column {}",
                j
            )));
        }
        let target = nonzero[0];
        let qj = y_coords[target - 1].clone();
        if !allowed_q_magnitude(&qj) {
            return Err(Error::Inconsistency(format!(
                "accepted map has weight {} at column {}",
                qj, j
            )));
        }
        images[j - 1] = target;
        q.push(qj);
    }
    let sigma = Perm::new(images)
        .map_err(|_| Error::Inconsistency("y-diagonal targets do not form a permutation".into()))?;
    Ok(VerifyOutcome::Accepted(IsoDescriptor {
        map: m.clone(),
        sigma,
        q,
    }))
}

/// Lazy stream over all `(sigma, q)` candidates passing the parity filters.
/// The weight magnitude at `j` is forced by the parities of `alpha_j` on the
/// source and `alpha_{sigma(j)}` on the target; only the `2^n` signs and the
/// `n!` permutations remain free.
pub struct CandidateSet {
    n: usize,
    even_a: Vec<bool>,
    even_b: Vec<bool>,
    perms: Vec<Perm>,
    perm_ix: usize,
    mask: u64,
}

impl CandidateSet {
    /// Candidates remaining from the start of the stream.
    pub fn total(&self) -> u128 {
        (self.perms.len() as u128) << self.n
    }
}

impl Iterator for CandidateSet {
    type Item = (Perm, Vec<Rat>);

    fn next(&mut self) -> Option<Self::Item> {
        if self.perm_ix >= self.perms.len() {
            return None;
        }
        let sigma = self.perms[self.perm_ix].clone();
        let q: Vec<Rat> = (1..=self.n)
            .map(|j| {
                let mag = match (self.even_a[j - 1], self.even_b[sigma.apply(j) - 1]) {
                    (true, true) | (false, false) => Rat::one(),
                    (false, true) => Rat::new(Int::one(), Int::from(2)),
                    (true, false) => Rat::from(Int::from(2)),
                };
                if self.mask >> (j - 1) & 1 == 1 {
                    mag
                } else {
                    -mag
                }
            })
            .collect();
        self.mask += 1;
        if self.mask == 1u64 << self.n {
            self.mask = 0;
            self.perm_ix += 1;
        }
        Some((sigma, q))
    }
}

pub fn candidate_set(a: &BottMatrix, b: &BottMatrix) -> Result<CandidateSet> {
    let n = a.stage();
    if b.stage() != n {
        return Err(Error::StageMismatch(n, b.stage()));
    }
    assert!(n < 64, "candidate masks use u64 sign patterns");
    Ok(CandidateSet {
        n,
        even_a: (1..=n).map(|j| a.alpha_is_even(j)).collect(),
        even_b: (1..=n).map(|j| b.alpha_is_even(j)).collect(),
        perms: Perm::all(n),
        perm_ix: 0,
        mask: 0,
    })
}

/// Builds the degree-two matrix determined by `(sigma, q)` through the
/// recursion `psi(x_j) = q_j y_{sigma(j)} + (1/2) sum_{i<j} A^i_j psi(x_i)`,
/// converting to target `x`-coordinates.  Returns `None` when some column
/// fails to be integral; a returned map is a candidate only and must still
/// pass [`verify_iso`].
pub fn build_map(
    a: &BottMatrix,
    b: &BottMatrix,
    sigma: &Perm,
    q: &[Rat],
) -> Result<Option<DegreeTwoMap>> {
    let n = a.stage();
    if b.stage() != n {
        return Err(Error::StageMismatch(n, b.stage()));
    }
    if sigma.n() != n || q.len() != n {
        return Err(Error::StageMismatch(sigma.n().min(q.len()), n));
    }
    let half = Rat::new(Int::one(), Int::from(2));
    // y_k of the target in x-coordinates: e_k - (1/2) column_k(B)
    let y_col = |k: usize| -> Vec<Rat> {
        (1..=n)
            .map(|i| {
                let mut v = -&half * Rat::from(b.entry(i, k).clone());
                if i == k {
                    v += Rat::one();
                }
                v
            })
            .collect()
    };
    let mut cols: Vec<Vec<Rat>> = Vec::with_capacity(n);
    for j in 1..=n {
        let mut col = y_col(sigma.apply(j))
            .into_iter()
            .map(|v| v * &q[j - 1])
            .collect::<Vec<Rat>>();
        for i in 1..j {
            let aij = a.entry(i, j);
            if aij.is_zero() {
                continue;
            }
            let w = &half * Rat::from(aij.clone());
            for r in 0..n {
                let add = &w * &cols[i - 1][r];
                col[r] += add;
            }
        }
        if !col.iter().all(rat_is_integral) {
            return Ok(None);
        }
        cols.push(col);
    }
    let rows: Vec<Vec<Int>> = (0..n)
        .map(|i| (0..n).map(|j| cols[j][i].to_integer()).collect())
        .collect();
    Ok(Some(DegreeTwoMap { n, rows }))
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SearchMode {
    All,
    First,
}

/// Exhaustive search: every candidate from [`candidate_set`] is built and
/// verified.  In `All` mode the result is the complete list of graded ring
/// isomorphisms in canonical order (by `sigma`, then `q`, then matrix
/// entries); an empty list means the rings are not isomorphic.
pub fn find_isos(a: &BottMatrix, b: &BottMatrix, mode: SearchMode) -> Result<Vec<IsoDescriptor>> {
    let mut found = Vec::new();
    for (sigma, q) in candidate_set(a, b)? {
        let Some(map) = build_map(a, b, &sigma, &q)? else {
            continue;
        };
        match verify_iso(a, b, &map)? {
            VerifyOutcome::Accepted(desc) => {
                debug_assert_eq!(desc.sigma, sigma);
                debug_assert_eq!(desc.q, q);
                found.push(desc);
                if mode == SearchMode::First {
                    break;
                }
            }
            VerifyOutcome::Rejected(_) => {}
        }
    }
    found.sort_by_key(|x| x.sort_key());
    Ok(found)
}

/// Applies the multiplicative extension of a degree-two map to a class of
/// the source ring, computing in the target ring.
pub fn apply_map(b: &BottMatrix, m: &DegreeTwoMap, u: &CohomClass<Int>) -> Result<CohomClass<Int>> {
    let n = b.stage();
    if m.n() != n {
        return Err(Error::StageMismatch(m.n(), n));
    }
    if u.stage() != n {
        return Err(Error::StageMismatch(u.stage(), n));
    }
    let mut out = CohomClass::zero(n);
    for (mono, c) in u.terms() {
        let mut acc = CohomClass::constant(n, c.clone());
        for &i in mono.support() {
            acc = multiply(b, &acc, &m.column_class(i))?;
        }
        out = out.add(&acc).expect("stages agree");
    }
    Ok(out)
}

/// Re-verifies a descriptor against its matrices; errors with
/// [`Error::UnverifiedIso`] when the map fails or the diagonal data differs.
pub fn revalidate(a: &BottMatrix, b: &BottMatrix, iso: &IsoDescriptor) -> Result<()> {
    match verify_iso(a, b, &iso.map)? {
        VerifyOutcome::Accepted(d) if d == *iso => Ok(()),
        _ => Err(Error::UnverifiedIso),
    }
}

/// Outcome of the Pontrjagin-class comparison, with both classes as
/// witnesses.  Theory predicts `preserved` is always true; a false value is
/// a reportable finding, not an error.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PontrjaginCheck {
    pub preserved: bool,
    pub mapped: CohomClass<Int>,
    pub target: CohomClass<Int>,
}

/// Pushes the total Pontrjagin class of the source through the isomorphism
/// and compares exactly with the target's.
pub fn pontrjagin_preserved(
    a: &BottMatrix,
    b: &BottMatrix,
    iso: &IsoDescriptor,
) -> Result<PontrjaginCheck> {
    revalidate(a, b, iso)?;
    let mapped = apply_map(b, &iso.map, &pontrjagin(a))?;
    let target = pontrjagin(b);
    Ok(PontrjaginCheck {
        preserved: mapped == target,
        mapped,
        target,
    })
}

/// The image of an automorphism in the signed permutation group: the signs
/// `q_j / |q_j|` together with `sigma`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub struct SignedPermImage {
    pub signs: Vec<i8>,
    pub sigma: Perm,
}

pub fn signed_perm_image(iso: &IsoDescriptor) -> SignedPermImage {
    SignedPermImage {
        signs: iso
            .q
            .iter()
            .map(|q| if q.is_negative() { -1 } else { 1 })
            .collect(),
        sigma: iso.sigma.clone(),
    }
}

/// Checks the parity biconditionals every integral isomorphism satisfies:
/// `|q_j| = 1/2` exactly when `alpha_j` is odd on the source and
/// `alpha_{sigma(j)}` even on the target, and `|q_j| = 2` in the mirrored
/// case.
pub fn satisfies_parity_filter(a: &BottMatrix, b: &BottMatrix, iso: &IsoDescriptor) -> bool {
    let n = iso.n();
    let half = Rat::new(Int::one(), Int::from(2));
    let two = Rat::from(Int::from(2));
    (1..=n).all(|j| {
        let qa = iso.q[j - 1].abs();
        if !allowed_q_magnitude(&iso.q[j - 1]) {
            return false;
        }
        let even_a = a.alpha_is_even(j);
        let even_b = b.alpha_is_even(iso.sigma.apply(j));
        (qa == half) == (!even_a && even_b) && (qa == two) == (even_a && !even_b)
    })
}

/// One half-weight index audited: `alpha_j = c y_i` on the source with `c`
/// odd, `|q_i| = 2`, and `alpha_{sigma(i)} = d y_{sigma(j)}` on the target
/// with `d` odd.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PairingEntry {
    pub j: usize,
    pub i: usize,
    pub c: Int,
    pub d: Int,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PairingAudit {
    pub entries: Vec<PairingEntry>,
}

impl PairingAudit {
    pub fn is_vacuous(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Audits the pairing structure of half-weight indices.  Requires that
/// neither side has even exceptional twisting classes; with that in place a
/// failure of any audited condition would contradict the structure theory
/// and is reported as an inconsistency.
pub fn pairing_audit(a: &BottMatrix, b: &BottMatrix, iso: &IsoDescriptor) -> Result<PairingAudit> {
    revalidate(a, b, iso)?;
    let n = iso.n();
    for j in 1..=n {
        if exceptional_type(a, j)?.is_even_exceptional()
            || exceptional_type(b, j)?.is_even_exceptional()
        {
            return Err(Error::Precondition(
                "pairing audit requires no even exceptional twisting classes on either side"
                    .into(),
            ));
        }
    }
    let half = Rat::new(Int::one(), Int::from(2));
    let two = Rat::from(Int::from(2));
    let mut entries = Vec::new();
    for j in 1..=n {
        if iso.q[j - 1].abs() != half {
            continue;
        }
        let ExceptionalKind::Exceptional { c, i } = exceptional_type(a, j)?.kind else {
            return Err(Error::Inconsistency(format!(
                "half weight at {} without exceptional source twisting class",
                j
            )));
        };
        if iso.q[i - 1].abs() != two {
            return Err(Error::Inconsistency(format!(
                "partner index {} of half weight {} does not carry weight +-2",
                i, j
            )));
        }
        let target_ix = iso.sigma.apply(i);
        let ExceptionalKind::Exceptional { c: d, i: m } = exceptional_type(b, target_ix)?.kind
        else {
            return Err(Error::Inconsistency(format!(
                "target twisting class {} is not exceptional",
                target_ix
            )));
        };
        if m != iso.sigma.apply(j) {
            return Err(Error::Inconsistency(format!(
                "target exceptional index {} does not match sigma({}) = {}",
                m,
                j,
                iso.sigma.apply(j)
            )));
        }
        entries.push(PairingEntry { j, i, c, d });
    }
    Ok(PairingAudit { entries })
}

/// `second` after `first` (source of `second` = target of `first`).
pub fn compose_isos(first: &IsoDescriptor, second: &IsoDescriptor) -> Result<IsoDescriptor> {
    let n = first.n();
    if second.n() != n {
        return Err(Error::StageMismatch(second.n(), n));
    }
    let map = second.map.compose(&first.map)?;
    let sigma = second.sigma.compose(&first.sigma);
    let q = (1..=n)
        .map(|j| &first.q[j - 1] * &second.q[first.sigma.apply(j) - 1])
        .collect();
    Ok(IsoDescriptor { map, sigma, q })
}

pub fn invert_iso(iso: &IsoDescriptor) -> Result<IsoDescriptor> {
    let map = iso
        .map
        .inverse()
        .ok_or_else(|| Error::Inconsistency("verified isomorphism must be unimodular".into()))?;
    let sigma = iso.sigma.inverse();
    let n = iso.n();
    let q = (1..=n)
        .map(|k| {
            let j = sigma.apply(k);
            Rat::one() / &iso.q[j - 1]
        })
        .collect();
    Ok(IsoDescriptor { map, sigma, q })
}
