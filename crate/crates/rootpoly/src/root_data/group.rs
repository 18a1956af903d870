use super::weight::Weight;

/// `(w x)_i = signs[i] * x[perm[i]]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignedPerm {
    pub perm: Vec<usize>,
    pub signs: Vec<i32>,
}

impl SignedPerm {
    pub fn new(perm: Vec<usize>, signs: Vec<i32>) -> SignedPerm {
        SignedPerm { perm, signs }
    }

    pub fn identity(n: usize) -> SignedPerm {
        SignedPerm { perm: (0..n).collect(), signs: vec![1; n] }
    }

    pub fn apply(&self, x: &Weight) -> Weight {
        Weight(self.perm.iter().zip(&self.signs).map(|(&p, &s)| s * x.0[p]).collect())
    }

    pub fn det(&self) -> i32 {
        let mut seen = vec![false; self.perm.len()];
        let mut sign = 1;
        for i in 0..self.perm.len() {
            if seen[i] {
                continue;
            }
            let mut j = i;
            let mut len = 0;
            while !seen[j] {
                seen[j] = true;
                j = self.perm[j];
                len += 1;
            }
            if len % 2 == 0 {
                sign = -sign;
            }
        }
        sign * self.signs.iter().product::<i32>()
    }
}

/// All distinct rearrangements of a multiset, in lexicographically decreasing order.
pub fn distinct_permutations(v: &[i32]) -> Vec<Vec<i32>> {
    let mut cur: Vec<i32> = v.to_vec();
    cur.sort_unstable_by(|a, b| b.cmp(a));
    let mut out = vec![cur.clone()];
    // previous-permutation steps from the largest arrangement
    loop {
        let n = cur.len();
        if n < 2 {
            break;
        }
        let mut i = n - 1;
        while i > 0 && cur[i - 1] <= cur[i] {
            i -= 1;
        }
        if i == 0 {
            break;
        }
        let mut j = n - 1;
        while cur[j] >= cur[i - 1] {
            j -= 1;
        }
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn perms() {
        assert_eq!(distinct_permutations(&[1, 1, 0]).len(), 3);
        assert_eq!(distinct_permutations(&[0, 1, 2, 3]).len(), 24);
    }

    #[test]
    fn det_of_transposition() {
        let w = SignedPerm::new(vec![1, 0, 2], vec![1, 1, 1]);
        assert_eq!(w.det(), -1);
        let w = SignedPerm::new(vec![0, 1, 2], vec![-1, 1, 1]);
        assert_eq!(w.det(), -1);
    }
}
