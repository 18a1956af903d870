//! Root data given by an explicit list of positive roots.
//!
//! Everything here is derived from the root list alone: simple roots,
//! reflections, dominance via simple-root coordinates, and the interval by a
//! downward search over dominant weights.

use std::collections::{BTreeSet, HashSet, VecDeque};

use num_rational::Rational64;
use num_traits::{One, Signed, Zero};

use super::classical::{RootSystemSpec, Slot};
use super::weight::Weight;
use crate::error::{Error, Result};
use crate::exact_arith::Var;

pub type QVec = Vec<Rational64>;

#[derive(Clone, Debug)]
pub struct GenericRoot {
    pub v: QVec,
    pub symbol: Var,
}

#[derive(Clone, Debug)]
pub struct RootData {
    dim: usize,
    roots: Vec<GenericRoot>,
    simple: Vec<usize>,
    gram_inv: Vec<Vec<Rational64>>,
    rho: QVec,
    all: HashSet<QVec>,
}

fn dot(a: &[Rational64], b: &[Rational64]) -> Rational64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn axpy(k: Rational64, a: &[Rational64], y: &[Rational64]) -> QVec {
    y.iter().zip(a).map(|(yi, ai)| yi + k * ai).collect()
}

fn invert(m: &[Vec<Rational64>]) -> Option<Vec<Vec<Rational64>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational64>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rational64::one() } else { Rational64::zero() }));
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !a[r][c].is_zero())?;
        a.swap(c, p);
        let inv = a[c][c].recip();
        for x in a[c].iter_mut() {
            *x *= inv;
        }
        for r in 0..n {
            if r != c && !a[r][c].is_zero() {
                let f = a[r][c];
                let pivot = a[c].clone();
                for (x, y) in a[r].iter_mut().zip(&pivot) {
                    *x -= f * y;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

impl RootData {
    pub fn new(positive: Vec<(QVec, Var)>) -> Result<RootData> {
        if positive.is_empty() {
            return Err(Error::InvalidSpec("no positive roots".into()));
        }
        let dim = positive[0].0.len();
        let mut seen = HashSet::new();
        for (v, _) in &positive {
            if v.len() != dim {
                return Err(Error::InvalidSpec("roots of different lengths".into()));
            }
            if v.iter().all(|x| x.is_zero()) {
                return Err(Error::InvalidSpec("zero root".into()));
            }
            let neg: QVec = v.iter().map(|x| -x).collect();
            if !seen.insert(v.clone()) || seen.contains(&neg) {
                return Err(Error::InvalidSpec("repeated root".into()));
            }
        }
        let roots: Vec<GenericRoot> = positive.into_iter().map(|(v, symbol)| GenericRoot { v, symbol }).collect();
        let mut all = HashSet::new();
        for r in &roots {
            all.insert(r.v.clone());
            all.insert(r.v.iter().map(|x| -x).collect::<QVec>());
        }
        // closure under reflections and integrality of Cartan numbers
        for a in &roots {
            let aa = dot(&a.v, &a.v);
            for b in &roots {
                let c = Rational64::from_integer(2) * dot(&b.v, &a.v) / aa;
                if !c.is_integer() {
                    return Err(Error::InvalidSpec("non-integral Cartan number".into()));
                }
                let refl = axpy(-c, &a.v, &b.v);
                if !all.contains(&refl) {
                    return Err(Error::InvalidSpec("root set not closed under reflections".into()));
                }
            }
        }
        let sums: HashSet<QVec> = roots
            .iter()
            .flat_map(|a| roots.iter().map(move |b| a.v.iter().zip(&b.v).map(|(x, y)| x + y).collect::<QVec>()))
            .collect();
        let simple: Vec<usize> = (0..roots.len()).filter(|&i| !sums.contains(&roots[i].v)).collect();
        let gram: Vec<Vec<Rational64>> =
            simple.iter().map(|&i| simple.iter().map(|&j| dot(&roots[i].v, &roots[j].v)).collect()).collect();
        let gram_inv = invert(&gram).ok_or_else(|| Error::InvalidSpec("simple roots are dependent".into()))?;
        let mut rho = vec![Rational64::zero(); dim];
        for r in &roots {
            rho = axpy(Rational64::new(1, 2), &r.v, &rho);
        }
        let rd = RootData { dim, roots, simple, gram_inv, rho, all };
        for r in &rd.roots {
            match rd.simple_coeffs(&r.v) {
                Some(c) if c.iter().all(|x| x.is_integer() && !x.is_negative()) => {}
                _ => return Err(Error::InvalidSpec("roots are not a positive system".into())),
            }
        }
        Ok(rd)
    }

    pub fn from_spec(spec: &RootSystemSpec) -> RootData {
        let pos = spec
            .positive_roots()
            .into_iter()
            .map(|r| (to_q(&r.vector), r.slot.var()))
            .collect();
        RootData::new(pos).expect("classical root data is valid")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn positive_roots(&self) -> &[GenericRoot] {
        &self.roots
    }

    pub fn simple_roots(&self) -> Vec<&QVec> {
        self.simple.iter().map(|&i| &self.roots[i].v).collect()
    }

    pub fn rho(&self) -> &QVec {
        &self.rho
    }

    pub fn dot(&self, a: &[Rational64], b: &[Rational64]) -> Rational64 {
        dot(a, b)
    }

    /// `<x, a^vee>`.
    pub fn coroot(&self, x: &[Rational64], a: &[Rational64]) -> Rational64 {
        Rational64::from_integer(2) * dot(x, a) / dot(a, a)
    }

    pub fn reflect(&self, x: &[Rational64], a: &[Rational64]) -> QVec {
        axpy(-self.coroot(x, a), a, x)
    }

    pub fn is_dominant(&self, x: &[Rational64]) -> bool {
        self.simple.iter().all(|&i| !dot(x, &self.roots[i].v).is_negative())
    }

    /// Dominant conjugate, determinant of the element used, stabilized flag.
    pub fn dominantize(&self, x: &[Rational64]) -> (QVec, i32, bool) {
        let mut y = x.to_vec();
        let mut sign = 1;
        loop {
            let bad = self.simple.iter().find(|&&i| dot(&y, &self.roots[i].v).is_negative());
            match bad {
                Some(&i) => {
                    y = self.reflect(&y, &self.roots[i].v);
                    sign = -sign;
                }
                None => break,
            }
        }
        let stab = self.roots.iter().any(|r| dot(&y, &r.v).is_zero());
        (y, sign, stab)
    }

    pub fn orbit(&self, x: &[Rational64]) -> Vec<QVec> {
        let mut seen: BTreeSet<QVec> = BTreeSet::new();
        let mut q = VecDeque::new();
        seen.insert(x.to_vec());
        q.push_back(x.to_vec());
        while let Some(y) = q.pop_front() {
            for &i in &self.simple {
                let z = self.reflect(&y, &self.roots[i].v);
                if seen.insert(z.clone()) {
                    q.push_back(z);
                }
            }
        }
        seen.into_iter().collect()
    }

    fn half_is_root(&self, a: &[Rational64]) -> bool {
        let h: QVec = a.iter().map(|x| x / Rational64::from_integer(2)).collect();
        self.all.contains(&h)
    }

    fn product(&self, x: &[Rational64], select: impl Fn(bool) -> bool) -> u64 {
        let mut r = Rational64::one();
        for a in &self.roots {
            if !select(dot(x, &a.v).is_zero()) {
                continue;
            }
            let h = self.coroot(&self.rho, &a.v);
            let half = if self.half_is_root(&a.v) { Rational64::new(1, 2) } else { Rational64::zero() };
            r *= (h + Rational64::one() + half) / (h + half);
        }
        r.to_integer() as u64
    }

    pub fn stabilizer_order(&self, x: &[Rational64]) -> u64 {
        self.product(x, |z| z)
    }

    pub fn orbit_size(&self, x: &[Rational64]) -> u64 {
        self.product(x, |z| !z)
    }

    /// Coordinates of `v` in the simple roots, if `v` is in their span.
    pub fn simple_coeffs(&self, v: &[Rational64]) -> Option<Vec<Rational64>> {
        let rhs: Vec<Rational64> = self.simple.iter().map(|&i| dot(&self.roots[i].v, v)).collect();
        let c: Vec<Rational64> =
            self.gram_inv.iter().map(|row| row.iter().zip(&rhs).map(|(a, b)| a * b).sum()).collect();
        let mut back = vec![Rational64::zero(); self.dim];
        for (k, &i) in self.simple.iter().enumerate() {
            back = axpy(c[k], &self.roots[i].v, &back);
        }
        if back.as_slice() == v {
            Some(c)
        } else {
            None
        }
    }

    /// `mu ⪯ lambda`: the difference is a nonnegative integral combination of simple roots.
    pub fn dominance(&self, mu: &[Rational64], lambda: &[Rational64]) -> bool {
        let d: QVec = lambda.iter().zip(mu).map(|(a, b)| a - b).collect();
        match self.simple_coeffs(&d) {
            Some(c) => c.iter().all(|x| x.is_integer() && !x.is_negative()),
            None => false,
        }
    }

    pub fn height(&self, lambda: &[Rational64], mu: &[Rational64]) -> Rational64 {
        let d: QVec = lambda.iter().zip(mu).map(|(a, b)| a - b).collect();
        self.simple_coeffs(&d).map(|c| c.into_iter().sum()).unwrap_or_else(Rational64::zero)
    }

    /// Dominant weights below `lambda`, found by subtracting positive roots.
    pub fn dominant_interval(&self, lambda: &[Rational64]) -> Result<Vec<QVec>> {
        if !self.is_dominant(lambda) {
            return Err(Error::NotDominant(format!("{:?}", lambda)));
        }
        let mut seen: BTreeSet<QVec> = BTreeSet::new();
        let mut q = VecDeque::new();
        seen.insert(lambda.to_vec());
        q.push_back(lambda.to_vec());
        while let Some(y) = q.pop_front() {
            for r in &self.roots {
                let z: QVec = y.iter().zip(&r.v).map(|(a, b)| a - b).collect();
                if self.is_dominant(&z) && !seen.contains(&z) {
                    seen.insert(z.clone());
                    q.push_back(z);
                }
            }
        }
        let mut out: Vec<QVec> = seen.into_iter().collect();
        out.sort_by(|a, b| {
            self.height(lambda, b).cmp(&self.height(lambda, a)).then_with(|| {
                for (x, y) in a.iter().rev().zip(b.iter().rev()) {
                    match x.cmp(y) {
                        std::cmp::Ordering::Equal => continue,
                        o => return o,
                    }
                }
                std::cmp::Ordering::Equal
            })
        });
        Ok(out)
    }

    pub fn symbol_of(&self, a: &[Rational64]) -> Option<Var> {
        self.roots.iter().find(|r| r.v.as_slice() == a).map(|r| r.symbol)
    }
}

pub fn to_q(w: &Weight) -> QVec {
    w.0.iter().map(|&x| Rational64::new(x as i64, 2)).collect()
}

pub fn from_q(v: &[Rational64]) -> Result<Weight> {
    v.iter()
        .map(|x| {
            let d = x * Rational64::from_integer(2);
            if d.is_integer() {
                Ok(d.to_integer() as i32)
            } else {
                Err(Error::InvalidSpec(format!("coordinate {} is not in (1/2)Z", x)))
            }
        })
        .collect::<Result<Vec<i32>>>()
        .map(Weight)
}

/// Slot of a classical root by its symbol.
pub fn slot_of_var(v: Var) -> Option<Slot> {
    match v {
        Var::G => Some(Slot::G),
        Var::Gs => Some(Slot::Gs),
        Var::Gl => Some(Slot::Gl),
        _ => None,
    }
}
