//! The shifted `y`-basis and the degree-two structure theory built on it.
//!
//! With `y_j = x_j - alpha_j/2`, the change of basis on degree two is the
//! unipotent upper triangular matrix `E - A/2`; its exact rational inverse
//! `a` recovers `x_j = sum_{i<=j} a^i_j y_i`.  Squares satisfy
//! `4 y_j^2 = alpha_j^2`, so the products `y_{i_1} y_{i_2}` with strictly
//! increasing indices form an additive basis of the rational ring, and every
//! `y_j^2` expands over indices below `j`.

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matrix::{is_even, BottMatrix};
use crate::ring::{alpha, multiply, CohomClass, Monomial};
use crate::scalar::{Int, Rat};

/// The exact inverse `a = (E - A/2)^{-1}`, unipotent upper triangular.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct YBasisData {
    n: usize,
    inv: Vec<Vec<Rat>>,
}

impl YBasisData {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Entry `a^i_j` (1-based).
    pub fn entry(&self, i: usize, j: usize) -> &Rat {
        assert!(i >= 1 && i <= self.n && j >= 1 && j <= self.n);
        &self.inv[i - 1][j - 1]
    }

    /// Coefficients of `x_j` in the `y`-basis (length `n`, zero above `j`).
    pub fn x_in_y(&self, j: usize) -> Vec<Rat> {
        (1..=self.n).map(|i| self.entry(i, j).clone()).collect()
    }

    /// Coefficients of `alpha_j / 2` in the `y`-basis: the column of `x_j`
    /// with the unit diagonal removed.
    pub fn half_alpha_in_y(&self, j: usize) -> Vec<Rat> {
        let mut col = self.x_in_y(j);
        col[j - 1] = Rat::zero();
        col
    }
}

/// Inverts `E - A/2` by back-substitution; unipotent, so always invertible.
pub fn y_basis(a: &BottMatrix) -> YBasisData {
    let n = a.stage();
    let half = Rat::new(Int::one(), Int::from(2));
    let mut inv = vec![vec![Rat::zero(); n]; n];
    for j in 1..=n {
        let mut col = vec![Rat::zero(); n];
        col[j - 1] = Rat::one();
        for i in (1..j).rev() {
            // (E - A/2) has -A^i_k / 2 above the diagonal
            let mut acc = Rat::zero();
            for k in (i + 1)..=j {
                let aik = a.entry(i, k);
                if aik.is_zero() || col[k - 1].is_zero() {
                    continue;
                }
                acc += &half * Rat::from(aik.clone()) * &col[k - 1];
            }
            col[i - 1] = acc;
        }
        for i in 1..=n {
            inv[i - 1][j - 1] = col[i - 1].clone();
        }
    }
    YBasisData { n, inv }
}

/// An integral degree-two class by its `x`-coordinates.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub struct DegreeTwo {
    coeffs: Vec<Int>,
}

impl DegreeTwo {
    pub fn new(coeffs: Vec<Int>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::ZeroStage);
        }
        Ok(DegreeTwo { coeffs })
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        assert!(!coeffs.is_empty());
        DegreeTwo {
            coeffs: coeffs.iter().map(|&v| Int::from(v)).collect(),
        }
    }

    pub fn zero(n: usize) -> Self {
        assert!(n >= 1);
        DegreeTwo {
            coeffs: vec![Int::zero(); n],
        }
    }

    /// `c * x_j`.
    pub fn multiple_of_generator(n: usize, j: usize, c: Int) -> Self {
        assert!(j >= 1 && j <= n);
        let mut u = Self::zero(n);
        u.coeffs[j - 1] = c;
        u
    }

    pub fn n(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, i: usize) -> &Int {
        assert!(i >= 1 && i <= self.n());
        &self.coeffs[i - 1]
    }

    pub fn coeffs(&self) -> &[Int] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Largest index with a nonzero coefficient; `0` for the zero element
    /// (the convention that makes the normalization loop terminate).
    pub fn height(&self) -> usize {
        for i in (1..=self.n()).rev() {
            if !self.coeff(i).is_zero() {
                return i;
            }
        }
        0
    }

    /// True iff the gcd of the coefficients is 1.
    pub fn is_primitive(&self) -> bool {
        let mut g = Int::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
        }
        g.is_one()
    }

    pub fn to_class(&self) -> CohomClass<Int> {
        CohomClass::from_x_coords(&self.coeffs)
    }

    pub fn neg(&self) -> Self {
        DegreeTwo {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.n() != other.n() {
            return Err(Error::StageMismatch(self.n(), other.n()));
        }
        Ok(DegreeTwo {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: &Int) -> Self {
        DegreeTwo {
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }
}

impl std::fmt::Display for DegreeTwo {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.to_class())
    }
}

/// All `y_j^2` expanded over the squarefree `y`-monomial basis, plus the
/// rewriting this enables for products in `y`-coordinates.
#[derive(Clone, Debug)]
pub struct YSquareTable {
    n: usize,
    squares: Vec<CohomClass<Rat>>,
}

impl YSquareTable {
    pub fn new(a: &BottMatrix) -> Self {
        let n = a.stage();
        let yb = y_basis(a);
        let mut squares: Vec<CohomClass<Rat>> = Vec::with_capacity(n);
        for j in 1..=n {
            let col = yb.half_alpha_in_y(j);
            let mut acc = CohomClass::zero(n);
            for i in 1..j {
                let ri = &col[i - 1];
                if ri.is_zero() {
                    continue;
                }
                // (sum r_i y_i)^2: square terms recurse, cross terms are basis
                let sq = squares[i - 1].scale(&(ri * ri));
                acc = acc.add(&sq).expect("stages agree");
                for k in (i + 1)..j {
                    let rk = &col[k - 1];
                    if rk.is_zero() {
                        continue;
                    }
                    acc.add_term(
                        Monomial::new(vec![i, k]).expect("increasing indices"),
                        Rat::from(Int::from(2)) * ri * rk,
                    );
                }
            }
            squares.push(acc);
        }
        YSquareTable { n, squares }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `y_j^2` as a squarefree combination of `y_{i1} y_{i2}` with
    /// `i1 < i2 < j`.
    pub fn expansion(&self, j: usize) -> Result<&CohomClass<Rat>> {
        if j == 0 || j > self.n {
            return Err(Error::IndexOutOfRange { index: j, n: self.n });
        }
        Ok(&self.squares[j - 1])
    }

    /// Normal form of a raw `y`-index multiset, interpreting monomials in
    /// `y`-coordinates.
    pub fn reduce(&self, raw: &[usize], coeff: Rat) -> Result<CohomClass<Rat>> {
        for &ix in raw {
            if ix == 0 || ix > self.n {
                return Err(Error::IndexOutOfRange { index: ix, n: self.n });
            }
        }
        let mut out = CohomClass::zero(self.n);
        if coeff.is_zero() {
            return Ok(out);
        }
        let mut start = raw.to_vec();
        start.sort_unstable();
        let mut work: std::collections::BTreeMap<Vec<usize>, Rat> = std::collections::BTreeMap::new();
        work.insert(start, coeff);
        while let Some((multiset, c)) = work.pop_last() {
            if c.is_zero() {
                continue;
            }
            let dup = (1..multiset.len())
                .rev()
                .find(|&k| multiset[k] == multiset[k - 1]);
            match dup {
                None => out.add_term(
                    Monomial::new(multiset).expect("sorted squarefree"),
                    c,
                ),
                Some(pos) => {
                    let j = multiset[pos];
                    let mut base = multiset;
                    base.remove(pos);
                    base.remove(pos - 1);
                    for (tm, tc) in self.squares[j - 1].terms() {
                        let mut next = base.clone();
                        next.extend_from_slice(tm.support());
                        next.sort_unstable();
                        let scaled = c.clone() * tc.clone();
                        match work.entry(next) {
                            std::collections::btree_map::Entry::Vacant(e) => {
                                e.insert(scaled);
                            }
                            std::collections::btree_map::Entry::Occupied(mut e) => {
                                let sum = e.get().clone() + scaled;
                                if sum.is_zero() {
                                    e.remove();
                                } else {
                                    *e.get_mut() = sum;
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// Product of two classes given in `y`-coordinates.
    pub fn multiply(&self, u: &CohomClass<Rat>, v: &CohomClass<Rat>) -> Result<CohomClass<Rat>> {
        if u.stage() != self.n {
            return Err(Error::StageMismatch(u.stage(), self.n));
        }
        if v.stage() != self.n {
            return Err(Error::StageMismatch(v.stage(), self.n));
        }
        let mut out = CohomClass::zero(self.n);
        for (m1, c1) in u.terms() {
            for (m2, c2) in v.terms() {
                let mut raw = Vec::with_capacity(m1.support().len() + m2.support().len());
                raw.extend_from_slice(m1.support());
                raw.extend_from_slice(m2.support());
                let red = self.reduce(&raw, c1.clone() * c2.clone())?;
                for (m, c) in red.terms() {
                    out.add_term(m.clone(), c.clone());
                }
            }
        }
        Ok(out)
    }
}

/// `y_j^2` expanded over the rational `y`-basis.
pub fn y_square_expansion(a: &BottMatrix, j: usize) -> Result<CohomClass<Rat>> {
    Ok(YSquareTable::new(a).expansion(j)?.clone())
}

/// Rewrites a class given in `y`-coordinates into `x`-coordinates of the
/// rational ring, substituting `y_i = x_i - alpha_i/2` per factor.
pub fn y_class_to_x(a: &BottMatrix, ycl: &CohomClass<Rat>) -> Result<CohomClass<Rat>> {
    let n = a.stage();
    if ycl.stage() != n {
        return Err(Error::StageMismatch(ycl.stage(), n));
    }
    let half = Rat::new(Int::one(), Int::from(2));
    let mut out = CohomClass::zero(n);
    for (m, c) in ycl.terms() {
        let mut acc = CohomClass::constant(n, c.clone());
        for &i in m.support() {
            let yi = CohomClass::var(n, i)
                .sub(&alpha(a, i)?.to_rational().scale(&half))
                .expect("stages agree");
            acc = multiply(a, &acc, &yi)?;
        }
        out = out.add(&acc).expect("stages agree");
    }
    Ok(out)
}

/// True iff every entry of `A` is even, equivalently every `alpha_j` is even.
pub fn is_z2_trivial(a: &BottMatrix) -> bool {
    a.is_even()
}

/// True iff `alpha_j^2 = 0` in the ring for every `j`, equivalently every
/// `y_j^2` vanishes rationally.
pub fn is_q_trivial(a: &BottMatrix) -> bool {
    (1..=a.stage()).all(|j| {
        let al = alpha(a, j).expect("index in range");
        multiply(a, &al, &al).expect("stages agree").is_zero()
    })
}

/// Whether `alpha_j` is a single integer multiple of some `y_i`, `i < j`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ExceptionalKind {
    None,
    /// `alpha_j = c * y_i` with `c` odd.
    Exceptional { c: Int, i: usize },
    /// `alpha_j = c * y_i` with `c` even (and nonzero).
    EvenExceptional { c: Int, i: usize },
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExceptionalReport {
    pub j: usize,
    pub kind: ExceptionalKind,
}

impl ExceptionalReport {
    pub fn is_exceptional(&self) -> bool {
        !matches!(self.kind, ExceptionalKind::None)
    }

    pub fn is_even_exceptional(&self) -> bool {
        matches!(self.kind, ExceptionalKind::EvenExceptional { .. })
    }
}

/// Classifies `alpha_j` by its `y`-expansion `alpha_j = 2 sum a^i_j y_i`:
/// a single nonzero term means `alpha_j = c y_i` with `c = A^i_j`.
pub fn exceptional_type(a: &BottMatrix, j: usize) -> Result<ExceptionalReport> {
    let n = a.stage();
    if j == 0 || j > n {
        return Err(Error::IndexOutOfRange { index: j, n });
    }
    let yb = y_basis(a);
    let col = yb.half_alpha_in_y(j);
    let nonzero: Vec<usize> = (1..j).filter(|&i| !col[i - 1].is_zero()).collect();
    if nonzero.len() != 1 {
        return Ok(ExceptionalReport {
            j,
            kind: ExceptionalKind::None,
        });
    }
    let i = nonzero[0];
    let c = a.entry(i, j).clone();
    debug_assert_eq!(
        Rat::from(c.clone()),
        Rat::from(Int::from(2)) * &col[i - 1],
        "single-term y-expansion must have coefficient A^i_j"
    );
    let kind = if is_even(&c) {
        ExceptionalKind::EvenExceptional { c, i }
    } else {
        ExceptionalKind::Exceptional { c, i }
    };
    Ok(ExceptionalReport { j, kind })
}

/// Smallest `j` whose `alpha_j` is of even exceptional type, if any.
pub fn first_even_exceptional(a: &BottMatrix) -> Option<ExceptionalReport> {
    (1..=a.stage())
        .map(|j| exceptional_type(a, j).expect("index in range"))
        .find(|r| r.is_even_exceptional())
}

/// The primitive square-zero degree-two classes: for every `j` with
/// `alpha_j^2 = 0` this is `+-(x_j - alpha_j/2)` when `alpha_j` is even and
/// `+-(2 x_j - alpha_j)` otherwise, and nothing else.
pub fn primitive_square_zero(a: &BottMatrix) -> Vec<DegreeTwo> {
    let n = a.stage();
    let two = Int::from(2);
    let mut out = Vec::new();
    for j in 1..=n {
        let al = alpha(a, j).expect("index in range");
        if !multiply(a, &al, &al).expect("stages agree").is_zero() {
            continue;
        }
        let col = a.alpha_column(j).expect("index in range");
        let u = if a.alpha_is_even(j) {
            let mut coeffs: Vec<Int> = col.iter().map(|c| -(c / &two)).collect();
            coeffs[j - 1] = Int::one();
            DegreeTwo { coeffs }
        } else {
            let mut coeffs: Vec<Int> = col.iter().map(|c| -c.clone()).collect();
            coeffs[j - 1] = two.clone();
            DegreeTwo { coeffs }
        };
        debug_assert!(u.is_primitive());
        out.push(u.clone());
        out.push(u.neg());
    }
    out
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum PairBranch {
    SameSign,
    OppositeSign,
}

/// Witness that a primitive vanishing pair has the classified shape
/// `(a x_j + w, a (x_j - alpha_j) - w)` (same sign) or
/// `(a x_j + w, -a (x_j - alpha_j) + w)` (opposite sign), with
/// `height(w) < j` and `w (w + a alpha_j) = 0`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PairDecomposition {
    pub a_coeff: Int,
    pub j: usize,
    pub w: DegreeTwo,
    pub branch: PairBranch,
    /// When true the decomposition describes `(v, u)` for input `(u, v)`.
    pub swapped: bool,
}

impl PairDecomposition {
    /// Rebuilds the ordered input pair from the stored data.
    pub fn reconstruct(&self, a: &BottMatrix) -> Result<(DegreeTwo, DegreeTwo)> {
        let n = a.stage();
        if self.w.n() != n {
            return Err(Error::StageMismatch(self.w.n(), n));
        }
        let col = DegreeTwo::new(a.alpha_column(self.j)?)?;
        let xj = DegreeTwo::multiple_of_generator(n, self.j, Int::one());
        let p = xj.scale(&self.a_coeff).add(&self.w)?;
        let fiber = xj.sub(&col)?.scale(&self.a_coeff);
        let q = match self.branch {
            PairBranch::SameSign => fiber.sub(&self.w)?,
            PairBranch::OppositeSign => fiber.neg().add(&self.w)?,
        };
        Ok(if self.swapped { (q, p) } else { (p, q) })
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum DecomposeOutcome {
    Decomposed(PairDecomposition),
    NotAPair,
}

/// Decomposes a primitive vanishing pair in the classified shape.  The
/// heights of `u` and `v` are the only possible anchors `j`; the smallest
/// valid one wins, with same-sign preferred and the unswapped reading first.
pub fn vanishing_pair_decompose(
    a: &BottMatrix,
    u: &DegreeTwo,
    v: &DegreeTwo,
) -> Result<DecomposeOutcome> {
    let n = a.stage();
    if u.n() != n {
        return Err(Error::StageMismatch(u.n(), n));
    }
    if v.n() != n {
        return Err(Error::StageMismatch(v.n(), n));
    }
    if !u.is_primitive() || !v.is_primitive() {
        return Err(Error::NotPrimitive);
    }
    let prod = multiply(a, &u.to_class(), &v.to_class())?;
    if !prod.is_zero() {
        return Ok(DecomposeOutcome::NotAPair);
    }
    let mut candidates: Vec<PairDecomposition> = Vec::new();
    for (p, q, swapped) in [(u, v, false), (v, u, true)] {
        let j = p.height();
        debug_assert!(j >= 1, "primitive elements are nonzero");
        let a_coeff = p.coeff(j).clone();
        let mut w = p.clone();
        w.coeffs[j - 1] = Int::zero();
        let col = DegreeTwo::new(a.alpha_column(j)?)?;
        let xj = DegreeTwo::multiple_of_generator(n, j, Int::one());
        let same_expect = xj.sub(&col)?.scale(&a_coeff).sub(&w)?;
        if *q == same_expect {
            candidates.push(PairDecomposition {
                a_coeff: a_coeff.clone(),
                j,
                w: w.clone(),
                branch: PairBranch::SameSign,
                swapped,
            });
        }
        if *q == same_expect.neg() {
            candidates.push(PairDecomposition {
                a_coeff,
                j,
                w,
                branch: PairBranch::OppositeSign,
                swapped,
            });
        }
    }
    candidates.sort_by_key(|d| (d.j, d.branch, d.swapped));
    match candidates.into_iter().next() {
        Some(d) => {
            debug_assert!({
                let al = alpha(a, d.j)?;
                let shift = d.w.to_class().add(&al.scale(&d.a_coeff)).expect("stages agree");
                multiply(a, &d.w.to_class(), &shift)?.is_zero()
            });
            Ok(DecomposeOutcome::Decomposed(d))
        }
        None => Err(Error::Inconsistency(
            "vanishing pair admits no decomposition of the classified shape".into(),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};
    use proptest::prelude::*;

    fn hirzebruch() -> BottMatrix {
        BottMatrix::from_rows(&[&[0, 1], &[0, 0]]).unwrap()
    }

    fn even_hirzebruch() -> BottMatrix {
        BottMatrix::from_rows(&[&[0, 2], &[0, 0]]).unwrap()
    }

    fn stage3_ones() -> BottMatrix {
        BottMatrix::from_rows(&[&[0, 0, 1], &[0, 0, 1], &[0, 0, 0]]).unwrap()
    }

    #[test]
    fn y_basis_examples() {
        let yb = y_basis(&BottMatrix::zero(2));
        assert_eq!(yb.entry(1, 2), &Rat::zero());
        assert_eq!(yb.entry(1, 1), &Rat::one());

        let yb = y_basis(&even_hirzebruch());
        assert_eq!(yb.entry(1, 2), &Rat::one());

        let yb = y_basis(&hirzebruch());
        assert_eq!(yb.entry(1, 2), &rat(1, 2));
    }

    #[test]
    fn y_basis_inverts_exactly() {
        // (E - A/2) * a = E
        let a = BottMatrix::from_rows(&[&[0, 3, -2], &[0, 0, 5], &[0, 0, 0]]).unwrap();
        let yb = y_basis(&a);
        let n = a.stage();
        let half = rat(1, 2);
        for i in 1..=n {
            for j in 1..=n {
                let mut acc = Rat::zero();
                for k in 1..=n {
                    let m_ik = if i == k {
                        Rat::one()
                    } else {
                        -&half * Rat::from(a.entry(i, k).clone())
                    };
                    acc += m_ik * yb.entry(k, j);
                }
                let expect = if i == j { Rat::one() } else { Rat::zero() };
                assert_eq!(acc, expect);
                if i > j {
                    assert!(yb.entry(i, j).is_zero());
                }
                if i == j {
                    assert!(yb.entry(i, j).is_one());
                }
            }
        }
    }

    #[test]
    fn height_examples() {
        assert_eq!(DegreeTwo::from_i64(&[1, 3]).height(), 2);
        assert_eq!(DegreeTwo::from_i64(&[0, 0]).height(), 0);
        let a = stage3_ones();
        for j in 1..=3 {
            let col = DegreeTwo::new(a.alpha_column(j).unwrap()).unwrap();
            assert!(col.height() < j);
        }
    }

    #[test]
    fn y_square_expansion_examples() {
        let a = stage3_ones();
        assert!(y_square_expansion(&a, 1).unwrap().is_zero());
        assert!(y_square_expansion(&hirzebruch(), 2).unwrap().is_zero());
        let e = y_square_expansion(&a, 3).unwrap();
        let mut expect = CohomClass::zero(3);
        expect.add_term(Monomial::new(vec![1, 2]).unwrap(), rat(1, 2));
        assert_eq!(e, expect);
    }

    #[test]
    fn four_y_square_equals_alpha_square() {
        for a in [
            hirzebruch(),
            even_hirzebruch(),
            stage3_ones(),
            BottMatrix::from_rows(&[&[0, 2, -3], &[0, 0, 4], &[0, 0, 0]]).unwrap(),
        ] {
            for j in 1..=a.stage() {
                let y2 = y_square_expansion(&a, j).unwrap();
                let as_x = y_class_to_x(&a, &y2).unwrap();
                let four = Rat::from(int(4));
                let al = alpha(&a, j).unwrap().to_rational();
                let al2 = multiply(&a, &al, &al).unwrap();
                assert_eq!(as_x.scale(&four), al2);
            }
        }
    }

    #[test]
    fn pontrjagin_class_agrees_with_shifted_basis_route() {
        // prod (1 + 4 y_j^2) computed in y-coordinates equals the integral
        // prod (1 + alpha_j^2) after conversion
        for a in [
            BottMatrix::zero(2),
            hirzebruch(),
            stage3_ones(),
            BottMatrix::from_rows(&[&[0, 2, -3], &[0, 0, 4], &[0, 0, 0]]).unwrap(),
        ] {
            let n = a.stage();
            let table = YSquareTable::new(&a);
            let four = Rat::from(int(4));
            let mut acc = CohomClass::<Rat>::one(n);
            for j in 1..=n {
                let factor = CohomClass::one(n)
                    .add(&table.expansion(j).unwrap().scale(&four))
                    .unwrap();
                acc = table.multiply(&acc, &factor).unwrap();
            }
            let via_y = y_class_to_x(&a, &acc).unwrap();
            assert_eq!(via_y, crate::ring::pontrjagin(&a).to_rational());
        }
    }

    #[test]
    fn triviality_examples() {
        assert!(is_z2_trivial(&BottMatrix::zero(2)));
        assert!(is_z2_trivial(&even_hirzebruch()));
        assert!(!is_z2_trivial(&hirzebruch()));

        assert!(is_q_trivial(&BottMatrix::zero(2)));
        assert!(is_q_trivial(&hirzebruch()));
        assert!(!is_q_trivial(&stage3_ones()));
    }

    #[test]
    fn exceptional_examples() {
        let r = exceptional_type(&even_hirzebruch(), 2).unwrap();
        assert_eq!(
            r.kind,
            ExceptionalKind::EvenExceptional { c: int(2), i: 1 }
        );
        let r = exceptional_type(&hirzebruch(), 2).unwrap();
        assert_eq!(r.kind, ExceptionalKind::Exceptional { c: int(1), i: 1 });
        assert!(!r.is_even_exceptional());
        let r = exceptional_type(&stage3_ones(), 1).unwrap();
        assert_eq!(r.kind, ExceptionalKind::None);
        // two nonzero y-coefficients: not exceptional
        let r = exceptional_type(&stage3_ones(), 3).unwrap();
        assert_eq!(r.kind, ExceptionalKind::None);
    }

    #[test]
    fn primitive_square_zero_examples() {
        let got = primitive_square_zero(&BottMatrix::zero(2));
        let expect = vec![
            DegreeTwo::from_i64(&[1, 0]),
            DegreeTwo::from_i64(&[-1, 0]),
            DegreeTwo::from_i64(&[0, 1]),
            DegreeTwo::from_i64(&[0, -1]),
        ];
        assert_eq!(got, expect);

        let got = primitive_square_zero(&hirzebruch());
        let expect = vec![
            DegreeTwo::from_i64(&[1, 0]),
            DegreeTwo::from_i64(&[-1, 0]),
            DegreeTwo::from_i64(&[-1, 2]),
            DegreeTwo::from_i64(&[1, -2]),
        ];
        assert_eq!(got, expect);

        let got = primitive_square_zero(&even_hirzebruch());
        let expect = vec![
            DegreeTwo::from_i64(&[1, 0]),
            DegreeTwo::from_i64(&[-1, 0]),
            DegreeTwo::from_i64(&[-1, 1]),
            DegreeTwo::from_i64(&[1, -1]),
        ];
        assert_eq!(got, expect);
    }

    #[test]
    fn decompose_examples() {
        let h = hirzebruch();
        // (x_2, x_2 - x_1): fiber pair at j = 2
        let u = DegreeTwo::from_i64(&[0, 1]);
        let v = DegreeTwo::from_i64(&[-1, 1]);
        match vanishing_pair_decompose(&h, &u, &v).unwrap() {
            DecomposeOutcome::Decomposed(d) => {
                assert_eq!(d.a_coeff, int(1));
                assert_eq!(d.j, 2);
                assert!(d.w.is_zero());
                assert_eq!(d.branch, PairBranch::SameSign);
                assert!(!d.swapped);
                assert_eq!(d.reconstruct(&h).unwrap(), (u.clone(), v.clone()));
            }
            other => panic!("expected decomposition, got {:?}", other),
        }

        // x_1 * x_2 is a basis element of the product ring: not a pair
        let o = BottMatrix::zero(2);
        let x1 = DegreeTwo::from_i64(&[1, 0]);
        let x2 = DegreeTwo::from_i64(&[0, 1]);
        assert_eq!(
            vanishing_pair_decompose(&o, &x1, &x2).unwrap(),
            DecomposeOutcome::NotAPair
        );

        // non-primitive input is an error
        let twice = DegreeTwo::from_i64(&[0, 2]);
        assert!(matches!(
            vanishing_pair_decompose(&h, &twice, &v),
            Err(Error::NotPrimitive)
        ));
    }

    #[test]
    fn decompose_swapped_reading() {
        let h = hirzebruch();
        let u = DegreeTwo::from_i64(&[1, 0]); // x_1, height 1
        let v = DegreeTwo::from_i64(&[0, 1]); // x_2, height 2
        // x_1 * x_2 = x_1 x_2 != 0 in Hirzebruch? no: x1*x2 is a basis monomial
        assert_eq!(
            vanishing_pair_decompose(&h, &u, &v).unwrap(),
            DecomposeOutcome::NotAPair
        );
        // (x_1, x_1) vanishes; anchored at j = 1
        match vanishing_pair_decompose(&h, &u, &u).unwrap() {
            DecomposeOutcome::Decomposed(d) => {
                assert_eq!(d.j, 1);
                assert_eq!(d.reconstruct(&h).unwrap(), (u.clone(), u.clone()));
            }
            other => panic!("expected decomposition, got {:?}", other),
        }
    }

    prop_compose! {
        fn arb_matrix(max_n: usize, bound: i64)
            (n in 1..=max_n)
            (n in Just(n), vals in proptest::collection::vec(-bound..=bound, n*(n-1)/2))
            -> BottMatrix
        {
            let ints: Vec<Int> = vals.iter().map(|&v| Int::from(v)).collect();
            BottMatrix::from_upper_entries(n, &ints).unwrap()
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn square_zero_formula_matches_brute_force(a in arb_matrix(3, 2)) {
            let got = {
                let mut v = primitive_square_zero(&a);
                v.sort();
                v
            };
            let brute = {
                let mut v = crate::oracle::brute_force_square_zero(&a, 6);
                v.sort();
                v
            };
            prop_assert_eq!(got, brute);
        }

        #[test]
        fn distinct_even_columns_differ_mod_two(a in arb_matrix(4, 4)) {
            // for i != j with alpha_i, alpha_j both even, the integral classes
            // y_i and y_j differ modulo 2
            let n = a.stage();
            let two = int(2);
            let evens: Vec<usize> = (1..=n).filter(|&j| a.alpha_is_even(j)).collect();
            for (pos, &i) in evens.iter().enumerate() {
                for &j in &evens[pos + 1..] {
                    let yi: Vec<Int> = (1..=n)
                        .map(|k| {
                            let base = if k == i { int(1) } else { int(0) };
                            base - a.entry(k, i) / &two
                        })
                        .collect();
                    let yj: Vec<Int> = (1..=n)
                        .map(|k| {
                            let base = if k == j { int(1) } else { int(0) };
                            base - a.entry(k, j) / &two
                        })
                        .collect();
                    let same_mod_two = yi
                        .iter()
                        .zip(&yj)
                        .all(|(p, q)| is_even(&(p - q)));
                    prop_assert!(!same_mod_two);
                }
            }
        }

        #[test]
        fn brute_force_pairs_decompose_and_reconstruct(a in arb_matrix(3, 2)) {
            for (u, v) in crate::oracle::brute_force_vanishing_pairs(&a, 3) {
                match vanishing_pair_decompose(&a, &u, &v).unwrap() {
                    DecomposeOutcome::Decomposed(d) => {
                        prop_assert!(d.w.height() < d.j);
                        prop_assert_eq!(d.reconstruct(&a).unwrap(), (u, v));
                    }
                    DecomposeOutcome::NotAPair => prop_assert!(false, "oracle pair rejected"),
                }
            }
        }
    }
}
