//! Multiset operations on weight coordinates (doubled units).

use super::weight::Weight;

/// Sign with `sign(0) = +1`.
pub fn sign0(x: i32) -> i32 {
    if x < 0 {
        -1
    } else {
        1
    }
}

fn sorted_desc(v: &[i32]) -> Vec<i32> {
    let mut s = v.to_vec();
    s.sort_unstable_by(|a, b| b.cmp(a));
    s
}

/// Multiset difference `a \ b`, listed in decreasing order.
pub fn set_difference(a: &[i32], b: &[i32]) -> Vec<i32> {
    let mut rest = b.to_vec();
    let mut out = Vec::new();
    for &x in a {
        if let Some(p) = rest.iter().position(|&y| y == x) {
            rest.swap_remove(p);
        } else {
            out.push(x);
        }
    }
    sorted_desc(&out)
}

/// `x^+`: last coordinate replaced by its absolute value.
pub fn plus(w: &Weight) -> Vec<i32> {
    let mut v = w.0.clone();
    if let Some(l) = v.last_mut() {
        *l = l.abs();
    }
    v
}

/// Flip the sign of the last coordinate.
pub fn bar(w: &Weight) -> Weight {
    let mut v = w.0.clone();
    if let Some(l) = v.last_mut() {
        *l = -*l;
    }
    Weight(v)
}

/// `lambda ⊖ mu = (lambda+ \ mu+, (mu+ \ lambda+)^eps)` with
/// `eps = sign(lambda_N) sign(mu_N)`; `x^eps` rescales the last listed part.
pub fn symmetric_difference(lambda: &Weight, mu: &Weight) -> (Vec<i32>, Vec<i32>) {
    let lp = plus(lambda);
    let mp = plus(mu);
    let left = set_difference(&lp, &mp);
    let mut right = set_difference(&mp, &lp);
    let eps = sign0(*lambda.0.last().unwrap_or(&0)) * sign0(*mu.0.last().unwrap_or(&0));
    if let Some(l) = right.last_mut() {
        *l = eps * l.abs();
    }
    (left, right)
}

/// `eta_w(m) = #{ j : w_j = ±m }`.
pub fn eta(w: &Weight, m: i32) -> i64 {
    w.0.iter().filter(|&&x| x == m || x == -m).count() as i64
}

/// Sum of the coordinates (doubled).
pub fn part_sum(w: &Weight) -> i32 {
    w.0.iter().sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ominus_example() {
        let l = Weight::parse("5,3,5/2,1,1").unwrap();
        let m = Weight::parse("4,3,3,1,-1").unwrap();
        let (a, b) = symmetric_difference(&l, &m);
        assert_eq!(a, vec![10, 5]);
        assert_eq!(b, vec![8, -6]);
    }
}
