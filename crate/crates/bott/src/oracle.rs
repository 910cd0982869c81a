//! Brute-force validators.
//!
//! Everything here recomputes results of the structured algorithms by plain
//! enumeration over bounded coefficient boxes, sharing only the ring
//! arithmetic (and, for the isomorphism oracles, the [`verify_iso`]
//! predicate itself).  The boxes are a desk-scale choice; callers adjust
//! them by parameter.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::base_change::DegreeTwo;
use crate::error::{Error, Result};
use crate::iso::{verify_iso, DegreeTwoMap, IsoDescriptor, VerifyOutcome};
use crate::matrix::BottMatrix;
use crate::ring::{multiply, CohomClass, Monomial};
use crate::scalar::Int;

fn int_vectors(n: usize, bound: i64) -> Vec<Vec<Int>> {
    let mut out = Vec::new();
    let mut cur = vec![-bound; n];
    loop {
        out.push(cur.iter().map(|&v| Int::from(v)).collect());
        let Some(k) = (0..n).rev().find(|&k| cur[k] < bound) else {
            break;
        };
        cur[k] += 1;
        for v in cur.iter_mut().skip(k + 1) {
            *v = -bound;
        }
    }
    out
}

fn gcd_all(coeffs: &[Int]) -> Int {
    let mut g = Int::zero();
    for c in coeffs {
        g = g.gcd(c);
    }
    g
}

/// Sign-canonical: the first nonzero coefficient is positive.
fn is_canonical_sign(coeffs: &[Int]) -> bool {
    coeffs
        .iter()
        .find(|c| !c.is_zero())
        .is_some_and(|c| c.is_positive())
}

/// All primitive square-zero degree-two classes with coefficients in
/// `[-bound, bound]`, by direct squaring.
pub fn brute_force_square_zero(a: &BottMatrix, bound: i64) -> Vec<DegreeTwo> {
    let n = a.stage();
    let mut out = Vec::new();
    for coeffs in int_vectors(n, bound) {
        if !gcd_all(&coeffs).is_one() {
            continue;
        }
        let u = DegreeTwo::new(coeffs).expect("stage >= 1");
        let cl = u.to_class();
        if multiply(a, &cl, &cl).expect("stages agree").is_zero() {
            out.push(u);
        }
    }
    out
}

/// All ordered pairs of primitive degree-two classes with coefficients in
/// `[-bound, bound]` whose product vanishes.  Products are computed once per
/// sign-canonical representative; sign variants are expanded afterwards.
pub fn brute_force_vanishing_pairs(
    a: &BottMatrix,
    bound: i64,
) -> Vec<(DegreeTwo, DegreeTwo)> {
    let n = a.stage();
    let reps: Vec<DegreeTwo> = int_vectors(n, bound)
        .into_iter()
        .filter(|c| is_canonical_sign(c) && gcd_all(c).is_one())
        .map(|c| DegreeTwo::new(c).expect("stage >= 1"))
        .collect();
    let classes: Vec<CohomClass<Int>> = reps.iter().map(|u| u.to_class()).collect();
    let mut out = Vec::new();
    for (iu, u) in reps.iter().enumerate() {
        for (iv, v) in reps.iter().enumerate() {
            if !multiply(a, &classes[iu], &classes[iv])
                .expect("stages agree")
                .is_zero()
            {
                continue;
            }
            for (su, sv) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                let pu = if su > 0 { u.clone() } else { u.neg() };
                let pv = if sv > 0 { v.clone() } else { v.neg() };
                out.push((pu, pv));
            }
        }
    }
    out
}

/// Exhaustive isomorphism oracle: every integer matrix with entries in
/// `[-bound, bound]` and determinant `+-1` that passes [`verify_iso`].
/// Refuses boxes beyond desk scale.
pub fn naive_isos_full(
    a: &BottMatrix,
    b: &BottMatrix,
    bound: i64,
) -> Result<Vec<IsoDescriptor>> {
    let n = a.stage();
    if b.stage() != n {
        return Err(Error::StageMismatch(n, b.stage()));
    }
    let cells = n * n;
    let count = (2 * bound as u128 + 1).pow(cells as u32);
    if count > 50_000_000 {
        return Err(Error::InvalidInput(format!(
            "full enumeration of {} matrices is beyond desk scale; use the pruned oracle",
            count
        )));
    }
    let mut found = Vec::new();
    for flat in int_vectors(cells, bound) {
        let rows: Vec<Vec<Int>> = flat.chunks(n).map(|c| c.to_vec()).collect();
        let m = DegreeTwoMap::new(rows).expect("square");
        if !m.is_unimodular() {
            continue;
        }
        if let VerifyOutcome::Accepted(desc) = verify_iso(a, b, &m)? {
            found.push(desc);
        }
    }
    found.sort_by_key(|x| x.sort_key());
    Ok(found)
}

/// Same result set as [`naive_isos_full`], found by column backtracking:
/// a partial assignment survives only while the relation of each fixed
/// column already reduces to zero (the relation of column `j` depends on
/// columns up to `j` only) and no column is zero.  Still independent of the
/// diagonal-weight parametrization used by the structured search.
pub fn naive_isos_pruned(
    a: &BottMatrix,
    b: &BottMatrix,
    bound: i64,
) -> Result<Vec<IsoDescriptor>> {
    let n = a.stage();
    if b.stage() != n {
        return Err(Error::StageMismatch(n, b.stage()));
    }
    let column_choices = int_vectors(n, bound);
    let mut cols: Vec<Vec<Int>> = Vec::with_capacity(n);
    let mut found = Vec::new();
    descend(a, b, &column_choices, &mut cols, &mut found)?;
    found.sort_by_key(|x| x.sort_key());
    Ok(found)
}

fn descend(
    a: &BottMatrix,
    b: &BottMatrix,
    choices: &[Vec<Int>],
    cols: &mut Vec<Vec<Int>>,
    found: &mut Vec<IsoDescriptor>,
) -> Result<()> {
    let n = a.stage();
    if cols.len() == n {
        let rows: Vec<Vec<Int>> = (0..n)
            .map(|i| (0..n).map(|j| cols[j][i].clone()).collect())
            .collect();
        let m = DegreeTwoMap::new(rows).expect("square");
        if !m.is_unimodular() {
            return Ok(());
        }
        if let VerifyOutcome::Accepted(desc) = verify_iso(a, b, &m)? {
            found.push(desc);
        }
        return Ok(());
    }
    let j = cols.len() + 1;
    for cand in choices {
        if cand.iter().all(|v| v.is_zero()) {
            continue;
        }
        let phi = CohomClass::from_x_coords(cand);
        let mut psi_alpha = CohomClass::zero(n);
        for i in 1..j {
            let aij = a.entry(i, j);
            if aij.is_zero() {
                continue;
            }
            let scaled = CohomClass::from_x_coords(&cols[i - 1]).scale(aij);
            psi_alpha = psi_alpha.add(&scaled).expect("stages agree");
        }
        let factor = phi.sub(&psi_alpha).expect("stages agree");
        if !multiply(b, &phi, &factor)?.is_zero() {
            continue;
        }
        cols.push(cand.clone());
        descend(a, b, choices, cols, found)?;
        cols.pop();
    }
    Ok(())
}

/// Normal-form reduction rewriting a uniformly random repeated index at each
/// step instead of the largest one; the deterministic generator makes runs
/// reproducible.  Used to check that normal forms do not depend on the
/// rewrite order.
pub fn reduce_random_order(
    a: &BottMatrix,
    raw: &[usize],
    coeff: Int,
    seed: u64,
) -> Result<CohomClass<Int>> {
    let n = a.stage();
    for &ix in raw {
        if ix == 0 || ix > n {
            return Err(Error::IndexOutOfRange { index: ix, n });
        }
    }
    let mut state = seed.wrapping_mul(2) | 1;
    let mut next_u32 = move || {
        // xorshift64*
        state ^= state >> 12;
        state ^= state << 25;
        state ^= state >> 27;
        (state.wrapping_mul(0x2545_F491_4F6C_DD1D) >> 32) as u32
    };
    let mut out = CohomClass::zero(n);
    if coeff.is_zero() {
        return Ok(out);
    }
    let mut start = raw.to_vec();
    start.sort_unstable();
    let mut work: std::collections::BTreeMap<Vec<usize>, Int> = std::collections::BTreeMap::new();
    work.insert(start, coeff);
    while let Some((multiset, c)) = work.pop_first() {
        if c.is_zero() {
            continue;
        }
        let dup_positions: Vec<usize> = (1..multiset.len())
            .filter(|&k| multiset[k] == multiset[k - 1])
            .collect();
        if dup_positions.is_empty() {
            out.add_term(
                Monomial::new(multiset).expect("sorted squarefree"),
                c,
            );
            continue;
        }
        let pick = dup_positions[next_u32() as usize % dup_positions.len()];
        let j = multiset[pick];
        let mut base = multiset;
        base.remove(pick);
        for i in 1..j {
            let aij = a.entry(i, j);
            if aij.is_zero() {
                continue;
            }
            let mut next = base.clone();
            let at = next.partition_point(|&v| v < i);
            next.insert(at, i);
            let scaled = &c * aij;
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
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iso::{find_isos, SearchMode};
    use crate::ring::reduce;

    fn hirzebruch() -> BottMatrix {
        BottMatrix::from_rows(&[&[0, 1], &[0, 0]]).unwrap()
    }

    #[test]
    fn square_zero_oracle_on_product_ring() {
        let got = brute_force_square_zero(&BottMatrix::zero(2), 1);
        assert_eq!(got.len(), 4); // +-x1, +-x2
    }

    #[test]
    fn naive_full_agrees_with_structured_search() {
        let o = BottMatrix::zero(2);
        let h = hirzebruch();
        for (a, b) in [(&o, &o), (&h, &h), (&o, &h), (&h, &o)] {
            let naive = naive_isos_full(a, b, 6).unwrap();
            let structured = find_isos(a, b, SearchMode::All).unwrap();
            assert_eq!(naive, structured);
        }
    }

    #[test]
    fn pruned_agrees_with_full() {
        let o = BottMatrix::zero(2);
        let h = hirzebruch();
        for (a, b) in [(&o, &o), (&h, &h), (&h, &o)] {
            assert_eq!(
                naive_isos_pruned(a, b, 6).unwrap(),
                naive_isos_full(a, b, 6).unwrap()
            );
        }
    }

    #[test]
    fn pruned_stage_three_spot_checks() {
        // a fixed sample of stage-3 pairs with entries bounded by 2,
        // including isomorphic, automorphic and non-isomorphic cases
        let mats: Vec<BottMatrix> = [
            [0i64, 0, 0],
            [0, 0, 1],
            [2, 0, 0],
            [1, 1, 0],
            [0, 2, -2],
        ]
        .iter()
        .map(|vals| {
            let ints: Vec<Int> = vals.iter().map(|&v| Int::from(v)).collect();
            BottMatrix::from_upper_entries(3, &ints).unwrap()
        })
        .collect();
        let pairs = [(0, 0), (1, 1), (0, 2), (2, 0), (1, 3), (0, 4), (3, 3)];
        for (ia, ib) in pairs {
            let a = &mats[ia];
            let b = &mats[ib];
            let naive = naive_isos_pruned(a, b, 6).unwrap();
            let structured = find_isos(a, b, SearchMode::All).unwrap();
            assert_eq!(naive, structured, "disagreement on pair ({}, {})", ia, ib);
        }
    }

    #[test]
    fn full_enumeration_refuses_large_boxes() {
        let a = BottMatrix::zero(4);
        assert!(matches!(
            naive_isos_full(&a, &a, 6),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn random_order_reduction_matches_canonical() {
        let a = BottMatrix::from_rows(&[&[0, 3, -2], &[0, 0, 2], &[0, 0, 0]]).unwrap();
        for (s, raw) in [
            (1u64, vec![3, 3, 2, 2]),
            (2, vec![3, 3, 3]),
            (3, vec![2, 3, 2, 3, 1]),
        ] {
            let canonical = reduce(&a, &raw, Int::from(1)).unwrap();
            let random = reduce_random_order(&a, &raw, Int::from(1), s).unwrap();
            assert_eq!(canonical, random);
        }
    }
}
