//! Permutations of 1..N in one-line notation.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// σ with `images[i-1] = σ(i)`; composition (στ)(i) = σ(τ(i)).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &i in &images {
            if i == 0 || i > n || seen[i] {
                return Err(Error::Config(format!("{images:?} is not a permutation")));
            }
            seen[i] = true;
        }
        Ok(Permutation(images))
    }

    pub fn identity(n: usize) -> Self {
        Permutation((1..=n).collect())
    }

    /// The transposition of p and q.
    pub fn transposition(p: usize, q: usize, n: usize) -> Self {
        let mut v: Vec<usize> = (1..=n).collect();
        v.swap(p - 1, q - 1);
        Permutation(v)
    }

    /// σ_c = (c, c+1).
    pub fn adjacent(c: usize, n: usize) -> Self {
        Self::transposition(c, c + 1, n)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i - 1]
    }

    pub fn compose(&self, o: &Self) -> Self {
        Permutation(o.0.iter().map(|&i| self.0[i - 1]).collect())
    }

    pub fn inverse(&self) -> Self {
        let mut v = vec![0; self.0.len()];
        for (i, &s) in self.0.iter().enumerate() {
            v[s - 1] = i + 1;
        }
        Permutation(v)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &s)| s == i + 1)
    }

    /// Number of inversions.
    pub fn length(&self) -> usize {
        let n = self.0.len();
        (0..n).map(|i| (i + 1..n).filter(|&j| self.0[i] > self.0[j]).count()).sum()
    }

    /// Reduced word c_1 … c_K with σ = σ_{c_1} ⋯ σ_{c_K}, picking the smallest
    /// (or largest) left descent at each step. The smallest choice gives the
    /// lexicographically least reduced word.
    pub fn reduced_word(&self, smallest: bool) -> Vec<usize> {
        let n = self.0.len();
        let mut cur = self.clone();
        let mut word = Vec::new();
        while !cur.is_identity() {
            let inv = cur.inverse();
            // left descent at c: σ^{-1}(c) > σ^{-1}(c+1)
            let descents = (1..n).filter(|&c| inv.apply(c) > inv.apply(c + 1));
            let c = if smallest { descents.min() } else { descents.max() }.expect("non-identity has a descent");
            word.push(c);
            cur = Permutation::adjacent(c, n).compose(&cur);
        }
        word
    }

    pub fn all(n: usize) -> Vec<Permutation> {
        fn rec(prefix: &mut Vec<usize>, used: &mut Vec<bool>, n: usize, out: &mut Vec<Permutation>) {
            if prefix.len() == n {
                out.push(Permutation(prefix.clone()));
                return;
            }
            for i in 1..=n {
                if !used[i] {
                    used[i] = true;
                    prefix.push(i);
                    rec(prefix, used, n, out);
                    prefix.pop();
                    used[i] = false;
                }
            }
        }
        let mut out = Vec::new();
        rec(&mut Vec::new(), &mut vec![false; n + 1], n, &mut out);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn words_multiply_back() {
        for p in Permutation::all(4) {
            for smallest in [true, false] {
                let w = p.reduced_word(smallest);
                assert_eq!(w.len(), p.length());
                let mut acc = Permutation::identity(4);
                for &c in &w {
                    acc = acc.compose(&Permutation::adjacent(c, 4));
                }
                assert_eq!(acc, p);
            }
        }
        let longest = Permutation::new(vec![3, 2, 1]).unwrap();
        assert_eq!(longest.reduced_word(true), vec![1, 2, 1]);
        assert_eq!(longest.reduced_word(false), vec![2, 1, 2]);
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::new(vec![1, 1]).is_err());
        assert!(Permutation::new(vec![0, 1]).is_err());
    }
}
