use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;
use num_traits::{One, Zero};

use super::group::{distinct_permutations, SignedPerm};
use super::weight::Weight;
use crate::error::{Error, Result};
use crate::exact_arith::Var;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
    BC,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
            Family::BC => "BC",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Family> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(Family::A),
            "B" => Ok(Family::B),
            "C" => Ok(Family::C),
            "D" => Ok(Family::D),
            "BC" => Ok(Family::BC),
            other => Err(Error::InvalidSpec(format!("unknown family {}", other))),
        }
    }
}

/// Root multiplicity slot: `g` (roots e_i ± e_j), `g_s` (e_i), `g_l` (2e_i).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Slot {
    G,
    Gs,
    Gl,
}

impl Slot {
    pub fn var(self) -> Var {
        match self {
            Slot::G => Var::G,
            Slot::Gs => Var::Gs,
            Slot::Gl => Var::Gl,
        }
    }

    /// The Macdonald symbol `t_alpha = q^{g_alpha}` attached to the slot.
    pub fn t_var(self) -> Var {
        match self {
            Slot::G => Var::T,
            Slot::Gs => Var::Ts,
            Slot::Gl => Var::Tl,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Root {
    pub vector: Weight,
    pub slot: Slot,
}

#[derive(Clone, Debug)]
pub struct Dominantized {
    pub weight: Weight,
    pub sign: i32,
    pub stabilized: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RootSystemSpec {
    pub family: Family,
    /// Number of coordinates; for type A this is N with root system A_{N-1}.
    pub rank: usize,
}

impl fmt::Display for RootSystemSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

fn doubled_partial_sums(l: &Weight, m: &Weight) -> Vec<i64> {
    let mut s = 0i64;
    l.0.iter()
        .zip(&m.0)
        .map(|(a, b)| {
            s += (*a - *b) as i64;
            s
        })
        .collect()
}

fn nat(x: i64) -> bool {
    x >= 0 && x % 2 == 0
}

fn two_nat(x: i64) -> bool {
    x >= 0 && x % 4 == 0
}

fn inversions(v: &[i32]) -> usize {
    let mut c = 0;
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            if v[i] < v[j] {
                c += 1;
            }
        }
    }
    c
}

fn has_repeat(v: &[i32]) -> bool {
    let mut s = v.to_vec();
    s.sort_unstable();
    s.windows(2).any(|w| w[0] == w[1])
}

impl RootSystemSpec {
    pub fn new(family: Family, rank: usize) -> Result<RootSystemSpec> {
        let min = match family {
            Family::A => 1,
            Family::D => 2,
            _ => 1,
        };
        if rank < min {
            return Err(Error::InvalidSpec(format!("{} needs rank >= {}", family, min)));
        }
        if rank > 12 {
            return Err(Error::RankGuardExceeded(format!("rank {} > 12", rank)));
        }
        Ok(RootSystemSpec { family, rank })
    }

    pub fn n(&self) -> usize {
        self.rank
    }

    pub fn parameter_slots(&self) -> Vec<Slot> {
        match self.family {
            Family::A | Family::D => vec![Slot::G],
            Family::B => vec![Slot::G, Slot::Gs],
            Family::C => vec![Slot::G, Slot::Gl],
            Family::BC => vec![Slot::G, Slot::Gs, Slot::Gl],
        }
    }

    pub fn positive_roots(&self) -> Vec<Root> {
        let n = self.rank;
        let unit = |i: usize, k: i32| {
            let mut v = vec![0; n];
            v[i] = k;
            v
        };
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let mut v = vec![0; n];
                v[i] = 2;
                v[j] = -2;
                out.push(Root { vector: Weight(v), slot: Slot::G });
                if self.family != Family::A {
                    let mut v = vec![0; n];
                    v[i] = 2;
                    v[j] = 2;
                    out.push(Root { vector: Weight(v), slot: Slot::G });
                }
            }
        }
        for i in 0..n {
            match self.family {
                Family::B => out.push(Root { vector: Weight(unit(i, 2)), slot: Slot::Gs }),
                Family::C => out.push(Root { vector: Weight(unit(i, 4)), slot: Slot::Gl }),
                Family::BC => {
                    out.push(Root { vector: Weight(unit(i, 2)), slot: Slot::Gs });
                    out.push(Root { vector: Weight(unit(i, 4)), slot: Slot::Gl });
                }
                _ => {}
            }
        }
        out
    }

    /// Half the sum of the positive roots.
    pub fn rho(&self) -> Weight {
        let mut s = vec![0i32; self.rank];
        for r in self.positive_roots() {
            for (x, y) in s.iter_mut().zip(&r.vector.0) {
                *x += y;
            }
        }
        Weight(s.into_iter().map(|x| x / 2).collect())
    }

    /// The shifted `rho` used in the eigenvalue tables; differs from [`rho`]
    /// only for type A, by a central vector.
    pub fn rho_table(&self) -> Weight {
        let n = self.rank as i32;
        match self.family {
            Family::A | Family::D => Weight::from_ints(&(0..n).map(|j| n - 1 - j).collect::<Vec<_>>()),
            _ => self.rho(),
        }
    }

    pub fn check_arity(&self, w: &Weight) -> Result<()> {
        if w.len() != self.rank {
            return Err(Error::ArityMismatch { expected: self.rank, found: w.len() });
        }
        Ok(())
    }

    /// Membership in the weight lattice of the family.
    pub fn in_lattice(&self, w: &Weight) -> bool {
        match self.family {
            Family::A | Family::C | Family::BC => w.is_integral(),
            Family::B | Family::D => w.is_integral() || w.is_half_integral(),
        }
    }

    pub fn is_dominant(&self, w: &Weight) -> bool {
        if w.len() != self.rank || !self.in_lattice(w) {
            return false;
        }
        let v = &w.0;
        let dec = v.windows(2).all(|p| p[0] >= p[1]);
        match self.family {
            Family::D => {
                let n = v.len();
                v[..n - 1].windows(2).all(|p| p[0] >= p[1]) && v[n - 2] >= v[n - 1].abs()
            }
            _ => dec && v.last().is_none_or(|&x| x >= 0),
        }
    }

    pub fn require_dominant(&self, w: &Weight) -> Result<()> {
        self.check_arity(w)?;
        if !self.is_dominant(w) {
            return Err(Error::NotDominant(w.render()));
        }
        Ok(())
    }

    /// `mu ⪯ lambda` in the dominance order of the family.
    pub fn dominance(&self, mu: &Weight, lambda: &Weight) -> bool {
        if mu.len() != lambda.len() {
            return false;
        }
        let s = doubled_partial_sums(lambda, mu);
        let n = s.len();
        match self.family {
            Family::A => s[n - 1] == 0 && s[..n - 1].iter().all(|&x| x >= 0),
            Family::B | Family::BC => s.iter().all(|&x| nat(x)),
            Family::C => s[..n - 1].iter().all(|&x| nat(x)) && two_nat(s[n - 1]),
            Family::D => {
                let d = (lambda.0[n - 1] - mu.0[n - 1]) as i64;
                s[..n.saturating_sub(2)].iter().all(|&x| nat(x))
                    && two_nat(s[n - 2] + d)
                    && two_nat(s[n - 2] - d)
            }
        }
    }

    /// Twice the height of `lambda - mu` in the simple-root basis.
    pub fn height2(&self, lambda: &Weight, mu: &Weight) -> i64 {
        let s = doubled_partial_sums(lambda, mu);
        let n = s.len();
        match self.family {
            Family::A => s[..n - 1].iter().sum(),
            Family::B | Family::BC => s.iter().sum(),
            Family::C => s[..n - 1].iter().sum::<i64>() + s[n - 1] / 2,
            Family::D => s[..n - 2].iter().sum::<i64>() + s[n - 2],
        }
    }

    /// Sort weights into the linear extension used for the matrix rows:
    /// decreasing height of `lambda - mu`, ties by [`Weight::colex_cmp`].
    pub fn linear_extension(&self, lambda: &Weight, ws: &mut [Weight]) {
        ws.sort_by(|a, b| {
            self.height2(lambda, b)
                .cmp(&self.height2(lambda, a))
                .then_with(|| a.colex_cmp(b))
        });
    }

    /// All dominant `mu ⪯ lambda`, ordered so that `lambda` comes last.
    pub fn dominant_interval(&self, lambda: &Weight) -> Result<Vec<Weight>> {
        self.require_dominant(lambda)?;
        let parity = lambda.0[0].rem_euclid(2);
        let top = lambda.0[0];
        let n = self.rank;
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(n);
        self.enum_dominant(n, parity, top, &mut cur, &mut |w: &Weight| {
            if self.dominance(w, lambda) {
                out.push(w.clone());
            }
        });
        self.linear_extension(lambda, &mut out);
        Ok(out)
    }

    /// Dominant weights with coordinates of absolute value at most `bound`; for type A
    /// only the representatives with last coordinate zero.
    pub fn dominant_weights(&self, bound: i32) -> Vec<Weight> {
        let n = self.rank;
        let mut out = Vec::new();
        for parity in [0, 1] {
            let mut cur = Vec::with_capacity(n);
            self.enum_dominant(n, parity, 2 * bound, &mut cur, &mut |w: &Weight| {
                if self.in_lattice(w) && self.is_dominant(w) && !(self.family == Family::A && w.0[n - 1] != 0) {
                    out.push(w.clone());
                }
            });
        }
        out
    }

    fn enum_dominant(&self, n: usize, parity: i32, upper: i32, cur: &mut Vec<i32>, f: &mut dyn FnMut(&Weight)) {
        if cur.len() == n {
            f(&Weight(cur.clone()));
            return;
        }
        let last = cur.len() == n - 1;
        let lower = if last && self.family == Family::D { -upper } else { 0 };
        let mut x = upper;
        while x >= lower {
            if x.rem_euclid(2) == parity {
                cur.push(x);
                self.enum_dominant(n, parity, x, cur, f);
                cur.pop();
            }
            x -= 1;
        }
    }

    /// Distinct elements of the Weyl group orbit.
    pub fn weyl_orbit(&self, w: &Weight) -> Vec<Weight> {
        if self.family == Family::A {
            return distinct_permutations(&w.0).into_iter().map(Weight).collect();
        }
        let abs: Vec<i32> = w.0.iter().map(|x| x.abs()).collect();
        let has_zero = abs.contains(&0);
        let neg_parity = w.0.iter().filter(|&&x| x < 0).count() % 2;
        let mut out = Vec::new();
        for p in distinct_permutations(&abs) {
            let nz: Vec<usize> = (0..p.len()).filter(|&i| p[i] != 0).collect();
            for mask in 0u32..(1u32 << nz.len()) {
                if self.family == Family::D && !has_zero && (mask.count_ones() as usize) % 2 != neg_parity {
                    continue;
                }
                let mut v = p.clone();
                for (b, &i) in nz.iter().enumerate() {
                    if mask >> b & 1 == 1 {
                        v[i] = -v[i];
                    }
                }
                out.push(Weight(v));
            }
        }
        out
    }

    /// The dominant conjugate with the sign of a shortest element sending `k` to it.
    pub fn dominantize(&self, k: &Weight) -> Dominantized {
        let v = &k.0;
        match self.family {
            Family::A => {
                let inv = inversions(v);
                let mut s = v.clone();
                s.sort_unstable_by(|a, b| b.cmp(a));
                Dominantized {
                    stabilized: has_repeat(v),
                    weight: Weight(s),
                    sign: if inv.is_multiple_of(2) { 1 } else { -1 },
                }
            }
            Family::B | Family::C | Family::BC => {
                let abs: Vec<i32> = v.iter().map(|x| x.abs()).collect();
                let neg = v.iter().filter(|&&x| x < 0).count();
                let inv = inversions(&abs);
                let mut s = abs.clone();
                s.sort_unstable_by(|a, b| b.cmp(a));
                Dominantized {
                    stabilized: abs.contains(&0) || has_repeat(&abs),
                    weight: Weight(s),
                    sign: if (inv + neg).is_multiple_of(2) { 1 } else { -1 },
                }
            }
            Family::D => {
                let abs: Vec<i32> = v.iter().map(|x| x.abs()).collect();
                let neg = v.iter().filter(|&&x| x < 0).count();
                let inv = inversions(&abs);
                let mut s = abs.clone();
                s.sort_unstable_by(|a, b| b.cmp(a));
                if neg % 2 == 1 && !abs.contains(&0) {
                    let n = s.len();
                    s[n - 1] = -s[n - 1];
                }
                Dominantized {
                    stabilized: has_repeat(&abs),
                    weight: Weight(s),
                    sign: if inv.is_multiple_of(2) { 1 } else { -1 },
                }
            }
        }
    }

    fn coroot_pairing(x: &Weight, a: &Weight) -> Rational64 {
        Rational64::new(2 * x.dot4(a), a.dot4(a))
    }

    fn has_half(&self, a: &Root) -> bool {
        self.family == Family::BC && a.slot == Slot::Gl
    }

    fn product_formula(&self, w: &Weight, select: impl Fn(bool) -> bool) -> u64 {
        let w = &self.dominantize(w).weight;
        let rho = self.rho();
        let mut r = Rational64::one();
        for a in self.positive_roots() {
            let zero = Self::coroot_pairing(w, &a.vector).is_zero();
            if !select(zero) {
                continue;
            }
            let h = Self::coroot_pairing(&rho, &a.vector);
            let half = if self.has_half(&a) { Rational64::new(1, 2) } else { Rational64::zero() };
            r *= (h + Rational64::one() + half) / (h + half);
        }
        assert!(r.is_integer(), "product formula must give an integer");
        r.to_integer() as u64
    }

    /// `|W_lambda|` by the product over roots orthogonal to `w`.
    pub fn stabilizer_order(&self, w: &Weight) -> u64 {
        self.product_formula(w, |zero| zero)
    }

    /// `|W(lambda)|` by the product over roots not orthogonal to `w`.
    pub fn orbit_size(&self, w: &Weight) -> u64 {
        self.product_formula(w, |zero| !zero)
    }

    pub fn weyl_group_order(&self) -> u64 {
        self.product_formula(&Weight::zero(self.rank), |_| true)
    }

    /// Explicit group elements as signed permutations.
    pub fn group_elements(&self) -> Result<Vec<SignedPerm>> {
        if self.rank > 6 {
            return Err(Error::RankGuardExceeded(format!("group enumeration needs rank <= 6, got {}", self.rank)));
        }
        let n = self.rank;
        let perms = distinct_permutations(&(0..n as i32).collect::<Vec<_>>());
        let mut out = Vec::new();
        for p in perms {
            let perm: Vec<usize> = p.iter().map(|&x| x as usize).collect();
            let signs_range: Vec<u32> = match self.family {
                Family::A => vec![0],
                _ => (0..(1u32 << n)).collect(),
            };
            for mask in signs_range {
                if self.family == Family::D && mask.count_ones() % 2 == 1 {
                    continue;
                }
                let signs = (0..n).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect();
                out.push(SignedPerm::new(perm.clone(), signs));
            }
        }
        Ok(out)
    }

    /// Positive roots as a set, for membership tests.
    pub fn root_set(&self) -> BTreeSet<Weight> {
        let mut s = BTreeSet::new();
        for r in self.positive_roots() {
            s.insert(r.vector.neg());
            s.insert(r.vector);
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(v: &[i32]) -> Weight {
        Weight::from_ints(v)
    }

    #[test]
    fn b3_interval_order() {
        let s = RootSystemSpec::new(Family::B, 3).unwrap();
        let iv = s.dominant_interval(&w(&[2, 1, 0])).unwrap();
        let want: Vec<Weight> =
            [[0, 0, 0], [1, 0, 0], [1, 1, 0], [2, 0, 0], [1, 1, 1], [2, 1, 0]].iter().map(|x| w(x)).collect();
        assert_eq!(iv, want);
    }

    #[test]
    fn d3_interval_order() {
        let s = RootSystemSpec::new(Family::D, 3).unwrap();
        let iv = s.dominant_interval(&w(&[2, 1, 0])).unwrap();
        let want: Vec<Weight> = [[1, 0, 0], [1, 1, -1], [1, 1, 1], [2, 1, 0]].iter().map(|x| w(x)).collect();
        assert_eq!(iv, want);
    }

    #[test]
    fn c_order_excludes_odd_sum() {
        let s = RootSystemSpec::new(Family::C, 3).unwrap();
        assert!(!s.dominance(&w(&[1, 1, 0]), &w(&[2, 1, 0])));
        let b = RootSystemSpec::new(Family::B, 3).unwrap();
        assert!(b.dominance(&w(&[1, 1, 0]), &w(&[2, 1, 0])));
    }

    #[test]
    fn dominantize_signs() {
        let a = RootSystemSpec::new(Family::A, 2).unwrap();
        let d = a.dominantize(&w(&[1, 2]));
        assert_eq!((d.weight, d.sign), (w(&[2, 1]), -1));
        let dd = RootSystemSpec::new(Family::D, 3).unwrap();
        let r = dd.dominantize(&w(&[3, 0, 1]));
        assert_eq!((r.weight, r.sign, r.stabilized), (w(&[3, 1, 0]), -1, false));
        let r = dd.dominantize(&w(&[3, 1, -2]));
        assert_eq!((r.weight, r.sign), (w(&[3, 2, -1]), -1));
    }

    #[test]
    fn orders() {
        let b3 = RootSystemSpec::new(Family::B, 3).unwrap();
        assert_eq!(b3.weyl_group_order(), 48);
        assert_eq!(b3.stabilizer_order(&w(&[1, 1, 0])), 4);
        assert_eq!(b3.orbit_size(&w(&[2, 1, 0])), 24);
        let bc1 = RootSystemSpec::new(Family::BC, 1).unwrap();
        assert_eq!(bc1.weyl_group_order(), 2);
        let d4 = RootSystemSpec::new(Family::D, 4).unwrap();
        assert_eq!(d4.weyl_group_order(), 192);
        let a = RootSystemSpec::new(Family::A, 3).unwrap();
        assert_eq!(a.weyl_orbit(&w(&[2, 1, 0])).len(), 6);
    }
}
