use std::fmt;

/// Permutation of `{0, .., n-1}` in one-line notation: `images[i] = w(i)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Perm(Vec<usize>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n).collect())
    }

    /// Swaps `k` and `k+1`.
    pub fn transposition(n: usize, k: usize) -> Self {
        Self::swap(n, k, k + 1)
    }

    pub fn swap(n: usize, a: usize, b: usize) -> Self {
        let mut v: Vec<usize> = (0..n).collect();
        v.swap(a, b);
        Perm(v)
    }

    pub fn from_images(images: Vec<usize>) -> Option<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return None;
            }
            seen[i] = true;
        }
        Some(Perm(images))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn image(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Perm) -> Perm {
        assert_eq!(self.len(), other.len());
        Perm(other.0.iter().map(|&i| self.0[i]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut v = vec![0; self.len()];
        for (i, &j) in self.0.iter().enumerate() {
            v[j] = i;
        }
        Perm(v)
    }

    /// Number of inversions (Coxeter length).
    pub fn length(&self) -> usize {
        let n = self.len();
        (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| self.0[i] > self.0[j])
            .count()
    }

    /// A reduced word `[k_1, .., k_l]` with `self = s_{k_1} ∘ .. ∘ s_{k_l}`.
    pub fn reduced_word(&self) -> Vec<usize> {
        // Bubble sort the one-line notation; each swap peels one simple
        // reflection off the left.
        let mut w = self.0.clone();
        let mut word = Vec::new();
        loop {
            let Some(k) = (0..w.len().saturating_sub(1)).find(|&k| w[k] > w[k + 1]) else {
                break;
            };
            // s_k ∘ w' = w  with w' = w with positions k,k+1 swapped in images
            w.swap(k, k + 1);
            word.push(k);
        }
        // w = w_current ∘ s_{k_r} ∘ .. ∘ s_{k_1}; recorded swaps act on positions
        // (right multiplication), so reverse to get a left-to-right product.
        word.reverse();
        word
    }

    pub fn all(n: usize) -> Vec<Perm> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(n);
        let mut used = vec![false; n];
        fn rec(n: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Perm>) {
            if cur.len() == n {
                out.push(Perm(cur.clone()));
                return;
            }
            for i in 0..n {
                if !used[i] {
                    used[i] = true;
                    cur.push(i);
                    rec(n, cur, used, out);
                    cur.pop();
                    used[i] = false;
                }
            }
        }
        rec(n, &mut cur, &mut used, &mut out);
        out
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|i| (i + 1).to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduced_words_rebuild_the_permutation() {
        for w in Perm::all(4) {
            let word = w.reduced_word();
            assert_eq!(word.len(), w.length());
            let rebuilt = word
                .iter()
                .fold(Perm::identity(4), |acc, &k| acc.compose(&Perm::transposition(4, k)));
            assert_eq!(rebuilt, w, "word {word:?}");
        }
    }

    #[test]
    fn inverse_and_compose() {
        let w = Perm::from_images(vec![2, 0, 1]).unwrap();
        assert!(w.compose(&w.inverse()).is_identity());
        assert_eq!(w.to_string(), "[3,1,2]");
        assert!(Perm::from_images(vec![0, 0]).is_none());
    }
}
