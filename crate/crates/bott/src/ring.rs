//! Exact arithmetic in the cohomology ring of a Bott manifold.
//!
//! For a stage-`n` matrix `A` the ring is the quotient of the integer
//! polynomial ring on degree-two generators `x_1, ..., x_n` by the relations
//! `x_j^2 = alpha_j * x_j`, where `alpha_j` is the degree-two class read off
//! column `j` of `A` (and `alpha_1 = 0`).  Every index introduced by
//! `alpha_j` is smaller than `j`, so rewriting the square of the largest
//! repeated index terminates, and the squarefree monomials form an additive
//! basis with `C(n, k)` elements in degree `2k`.
//!
//! Classes may be of mixed degree (total Pontrjagin classes are); homogeneity
//! is a queryable property, not an invariant.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matrix::BottMatrix;
use crate::scalar::{Int, Rat, Scalar};

/// A squarefree monomial `x_{i_1} ... x_{i_k}` with `i_1 < ... < i_k`,
/// 1-based.  The empty support is the ring unit.  The derived ordering is
/// lexicographic on support sequences and is the canonical serialization
/// order throughout the crate.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Monomial {
    support: Vec<usize>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial { support: vec![] }
    }

    pub fn var(j: usize) -> Self {
        assert!(j >= 1);
        Monomial { support: vec![j] }
    }

    pub fn new(support: Vec<usize>) -> Result<Self> {
        for w in support.windows(2) {
            if w[0] >= w[1] {
                return Err(Error::InvalidInput(format!(
                    "monomial support must be strictly increasing: {:?}",
                    support
                )));
            }
        }
        if support.first().is_some_and(|&v| v == 0) {
            return Err(Error::InvalidInput("monomial indices are 1-based".into()));
        }
        Ok(Monomial { support })
    }

    pub fn support(&self) -> &[usize] {
        &self.support
    }

    /// Cohomological degree, `2 * |support|`.
    pub fn degree(&self) -> usize {
        2 * self.support.len()
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.support.is_empty() {
            return write!(f, "1");
        }
        for (k, ix) in self.support.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            write!(f, "x{}", ix)?;
        }
        Ok(())
    }
}

/// An element of the cohomology ring in normal form: a finite map from
/// squarefree monomials to nonzero scalars.  `S` is [`Int`] for the integral
/// ring and [`Rat`] for the rational one.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CohomClass<S> {
    n: usize,
    terms: BTreeMap<Monomial, S>,
}

impl<S: Scalar> CohomClass<S> {
    pub fn zero(n: usize) -> Self {
        assert!(n >= 1);
        CohomClass {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, S::one())
    }

    pub fn constant(n: usize, c: S) -> Self {
        let mut cl = Self::zero(n);
        cl.add_term(Monomial::one(), c);
        cl
    }

    /// The generator `x_j`.
    pub fn var(n: usize, j: usize) -> Self {
        assert!(j >= 1 && j <= n, "generator index out of range");
        let mut cl = Self::zero(n);
        cl.add_term(Monomial::var(j), S::one());
        cl
    }

    /// Degree-two class with the given `x`-coordinates.
    pub fn from_x_coords(coords: &[S]) -> Self {
        let n = coords.len();
        let mut cl = Self::zero(n);
        for (k, c) in coords.iter().enumerate() {
            cl.add_term(Monomial::var(k + 1), c.clone());
        }
        cl
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (Monomial, S)>) -> Result<Self> {
        let mut cl = Self::zero(n);
        for (m, c) in terms {
            if m.support().last().is_some_and(|&v| v > n) {
                return Err(Error::IndexOutOfRange {
                    index: *m.support().last().unwrap(),
                    n,
                });
            }
            cl.add_term(m, c);
        }
        Ok(cl)
    }

    pub fn stage(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &S)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> S {
        self.terms.get(m).cloned().unwrap_or_else(S::zero)
    }

    /// Coefficient of the generator `x_j`.
    pub fn x_coeff(&self, j: usize) -> S {
        self.coeff(&Monomial::var(j))
    }

    /// Merges a term, dropping the entry when the sum vanishes.  No zero
    /// coefficient is ever stored.
    pub fn add_term(&mut self, m: Monomial, c: S) {
        debug_assert!(m.support().last().is_none_or(|&v| v <= self.n));
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().clone() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::StageMismatch(self.n, other.n));
        }
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let mut out = Self::zero(self.n);
        for (m, c) in self.terms() {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn scale(&self, s: &S) -> Self {
        let mut out = Self::zero(self.n);
        for (m, c) in self.terms() {
            out.add_term(m.clone(), c.clone() * s.clone());
        }
        out
    }

    /// The part of cohomological degree `2k`.
    pub fn homogeneous_part(&self, k: usize) -> Self {
        let mut out = Self::zero(self.n);
        for (m, c) in self.terms() {
            if m.support().len() == k {
                out.add_term(m.clone(), c.clone());
            }
        }
        out
    }

    /// Degrees (in the `2k` grading, reported as `k`) present in the class.
    pub fn degrees(&self) -> Vec<usize> {
        let mut ds: Vec<usize> = self.terms.keys().map(|m| m.support().len()).collect();
        ds.dedup();
        ds
    }

    pub fn is_homogeneous(&self) -> bool {
        self.degrees().len() <= 1
    }
}

impl CohomClass<Int> {
    pub fn to_rational(&self) -> CohomClass<Rat> {
        let mut out = CohomClass::zero(self.n);
        for (m, c) in self.terms() {
            out.add_term(m.clone(), Rat::from(c.clone()));
        }
        out
    }
}

impl CohomClass<Rat> {
    /// Converts to an integral class; `None` if any coefficient has a
    /// denominator.
    pub fn to_integral(&self) -> Option<CohomClass<Int>> {
        let mut out = CohomClass::zero(self.n);
        for (m, c) in self.terms() {
            if !c.denom().is_one() {
                return None;
            }
            out.add_term(m.clone(), c.to_integer());
        }
        Some(out)
    }
}

impl<S: Scalar> fmt::Display for CohomClass<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let one = S::one();
        let minus_one = -S::one();
        for (k, (m, c)) in self.terms().enumerate() {
            let constant = m.support().is_empty();
            if k == 0 {
                if *c == minus_one && !constant {
                    write!(f, "-")?;
                } else if *c != one || constant {
                    write!(f, "{}", c)?;
                    if !constant {
                        write!(f, "*")?;
                    }
                }
            } else {
                // negative leading sign folds into the separator
                let negative = *c < S::zero();
                let abs = if negative { -c.clone() } else { c.clone() };
                write!(f, " {} ", if negative { "-" } else { "+" })?;
                if abs != one || constant {
                    write!(f, "{}", abs)?;
                    if !constant {
                        write!(f, "*")?;
                    }
                }
            }
            if !constant {
                write!(f, "{}", m)?;
            }
        }
        Ok(())
    }
}

/// The twisting class `alpha_j` of column `j`: the degree-two class
/// `sum_{i<j} A^i_j x_i`; `alpha_1 = 0`.
pub fn alpha(a: &BottMatrix, j: usize) -> Result<CohomClass<Int>> {
    let n = a.stage();
    if j == 0 || j > n {
        return Err(Error::IndexOutOfRange { index: j, n });
    }
    let mut cl = CohomClass::zero(n);
    for i in 1..j {
        cl.add_term(Monomial::var(i), a.entry(i, j).clone());
    }
    Ok(cl)
}

fn largest_repeated(sorted: &[usize]) -> Option<usize> {
    (1..sorted.len())
        .rev()
        .find(|&k| sorted[k] == sorted[k - 1])
}

/// Normal form of `coeff * prod x_i` over a raw index multiset.
///
/// Rewrites the square of the largest repeated index first, replacing
/// `x_j^2` by `alpha_j * x_j`; every index introduced this way is smaller
/// than `j`, which gives the termination measure.  Order independence of the
/// result is checked by test, not assumed.
pub fn reduce<S: Scalar>(a: &BottMatrix, raw: &[usize], coeff: S) -> Result<CohomClass<S>> {
    let n = a.stage();
    for &ix in raw {
        if ix == 0 || ix > n {
            return Err(Error::IndexOutOfRange { index: ix, n });
        }
    }
    let mut out = CohomClass::zero(n);
    if coeff.is_zero() {
        return Ok(out);
    }
    let mut start = raw.to_vec();
    start.sort_unstable();
    let mut work: BTreeMap<Vec<usize>, S> = BTreeMap::new();
    work.insert(start, coeff);
    while let Some((multiset, c)) = work.pop_last() {
        if c.is_zero() {
            continue;
        }
        match largest_repeated(&multiset) {
            None => out.add_term(Monomial { support: multiset }, c),
            Some(pos) => {
                let j = multiset[pos];
                let mut base = multiset;
                base.remove(pos);
                for i in 1..j {
                    let aij = a.entry(i, j);
                    if aij.is_zero() {
                        continue;
                    }
                    let mut next = base.clone();
                    let at = next.partition_point(|&v| v < i);
                    next.insert(at, i);
                    let scaled = c.clone() * S::from(aij.clone());
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

/// Product of two classes over the same matrix: distribute, reduce each raw
/// monomial, and collect the normal form.
pub fn multiply<S: Scalar>(
    a: &BottMatrix,
    u: &CohomClass<S>,
    v: &CohomClass<S>,
) -> Result<CohomClass<S>> {
    if u.stage() != a.stage() {
        return Err(Error::StageMismatch(u.stage(), a.stage()));
    }
    if v.stage() != a.stage() {
        return Err(Error::StageMismatch(v.stage(), a.stage()));
    }
    let mut out = CohomClass::zero(a.stage());
    for (m1, c1) in u.terms() {
        for (m2, c2) in v.terms() {
            let mut raw = Vec::with_capacity(m1.support().len() + m2.support().len());
            raw.extend_from_slice(m1.support());
            raw.extend_from_slice(m2.support());
            let red = reduce(a, &raw, c1.clone() * c2.clone())?;
            for (m, c) in red.terms() {
                out.add_term(m.clone(), c.clone());
            }
        }
    }
    Ok(out)
}

/// The total Pontrjagin class `prod_j (1 + alpha_j^2)` in normal form.
/// Mixed degree; the degree-0 part is always 1.
pub fn pontrjagin(a: &BottMatrix) -> CohomClass<Int> {
    let n = a.stage();
    let mut acc = CohomClass::one(n);
    for j in 1..=n {
        let al = alpha(a, j).expect("index in range");
        let sq = multiply(a, &al, &al).expect("stages agree");
        let factor = CohomClass::one(n).add(&sq).expect("stages agree");
        acc = multiply(a, &acc, &factor).expect("stages agree");
    }
    acc
}

/// The additive basis of degree `2k`: all `C(n, k)` squarefree monomials of
/// size `k` in lexicographic order.
pub fn graded_basis(a: &BottMatrix, k: usize) -> Result<Vec<Monomial>> {
    let n = a.stage();
    if k > n {
        return Err(Error::DegreeOutOfRange { k, n });
    }
    if k == 0 {
        return Ok(vec![Monomial::one()]);
    }
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (1..=k).collect();
    loop {
        out.push(Monomial {
            support: cur.clone(),
        });
        // advance to the next k-subset in lexicographic order
        let Some(i) = (0..k).rev().find(|&i| cur[i] < n - (k - 1 - i)) else {
            break;
        };
        cur[i] += 1;
        for l in i + 1..k {
            cur[l] = cur[l - 1] + 1;
        }
    }
    Ok(out)
}
