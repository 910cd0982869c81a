//! Permutations of `{1, ..., n}` in one-line notation.

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub struct Perm {
    // images[j-1] = sigma(j), 1-based values
    images: Vec<usize>,
}

impl Perm {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        if n == 0 {
            return Err(Error::ZeroStage);
        }
        let mut seen = vec![false; n];
        for &v in &images {
            if v == 0 || v > n || seen[v - 1] {
                return Err(Error::InvalidInput(format!(
                    "not a permutation of 1..={}: {:?}",
                    n, images
                )));
            }
            seen[v - 1] = true;
        }
        Ok(Perm { images })
    }

    pub fn identity(n: usize) -> Self {
        assert!(n >= 1);
        Perm {
            images: (1..=n).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    /// sigma(j), 1-based.
    pub fn apply(&self, j: usize) -> usize {
        self.images[j - 1]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(k, &v)| v == k + 1)
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.n()];
        for (j, &v) in self.images.iter().enumerate() {
            inv[v - 1] = j + 1;
        }
        Perm { images: inv }
    }

    /// Composition `self o other`: `(self.compose(other)).apply(j) ==
    /// self.apply(other.apply(j))`.
    pub fn compose(&self, other: &Perm) -> Perm {
        assert_eq!(self.n(), other.n());
        Perm {
            images: (1..=other.n()).map(|j| self.apply(other.apply(j))).collect(),
        }
    }

    /// All permutations of `{1, ..., n}` in lexicographic one-line order.
    pub fn all(n: usize) -> Vec<Perm> {
        assert!(n >= 1);
        let mut out = Vec::new();
        let mut cur = (1..=n).collect::<Vec<_>>();
        loop {
            out.push(Perm { images: cur.clone() });
            // next_permutation
            let Some(i) = (0..n - 1).rev().find(|&i| cur[i] < cur[i + 1]) else {
                break;
            };
            let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
            cur.swap(i, j);
            cur[i + 1..].reverse();
        }
        out
    }
}

impl std::fmt::Display for Perm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[")?;
        for (k, v) in self.images.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", v)?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_is_lexicographic_and_complete() {
        let perms = Perm::all(3);
        assert_eq!(perms.len(), 6);
        assert!(perms.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(perms[0], Perm::identity(3));
    }

    #[test]
    fn compose_and_inverse() {
        let s = Perm::new(vec![2, 3, 1]).unwrap();
        let t = Perm::new(vec![2, 1, 3]).unwrap();
        let st = s.compose(&t);
        assert_eq!(st.apply(1), s.apply(t.apply(1)));
        assert!(s.compose(&s.inverse()).is_identity());
        assert!(s.inverse().compose(&s).is_identity());
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Perm::new(vec![1, 1]).is_err());
        assert!(Perm::new(vec![0, 2]).is_err());
        assert!(Perm::new(vec![3, 1]).is_err());
    }
}
