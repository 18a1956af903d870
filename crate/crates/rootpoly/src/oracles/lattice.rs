//! Laurent polynomials on the weight lattice.

use std::collections::{BTreeMap, BinaryHeap, HashMap};

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exact_arith::{Mono, Poly, Scalar, Var, ONE_MONO};
use crate::hessenberg::MonomialExpansion;
use crate::root_data::{RootSystemSpec, SignedPerm, Weight};

/// `sum_x c_x e^x` with exact coefficients.
#[derive(Clone, Debug, Default)]
pub struct LatticeElement {
    pub terms: BTreeMap<Weight, Scalar>,
}

impl LatticeElement {
    pub fn new() -> LatticeElement {
        LatticeElement::default()
    }

    /// The orbit sum `m_mu`.
    pub fn monomial_symmetric(spec: &RootSystemSpec, mu: &Weight) -> LatticeElement {
        let terms = spec.weyl_orbit(mu).into_iter().map(|w| (w, Scalar::one())).collect();
        LatticeElement { terms }
    }

    pub fn from_expansion(spec: &RootSystemSpec, p: &MonomialExpansion) -> LatticeElement {
        let mut out = LatticeElement::new();
        for (mu, c) in &p.terms {
            for w in spec.weyl_orbit(mu) {
                out.add_term(w, c);
            }
        }
        out
    }

    pub fn add_term(&mut self, w: Weight, c: &Scalar) {
        let e = self.terms.entry(w).or_insert_with(Scalar::zero);
        *e = &*e + c;
    }

    pub fn coeff(&self, w: &Weight) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn prune(&mut self) {
        self.terms.retain(|_, c| !c.is_zero());
    }

    /// Every orbit in the support is complete with a constant coefficient.
    pub fn is_invariant(&self, spec: &RootSystemSpec) -> bool {
        let mut seen: BTreeMap<Weight, usize> = BTreeMap::new();
        for (w, c) in &self.terms {
            if c.is_zero() {
                continue;
            }
            let d = spec.dominantize(w).weight;
            if self.coeff(&d) != *c {
                return false;
            }
            *seen.entry(d).or_insert(0) += 1;
        }
        seen.iter().all(|(d, &n)| spec.orbit_size(d) == n as u64)
    }

    /// Coefficients `c_mu` in `sum c_mu m_mu`, read off at the dominant weights.
    pub fn monomial_coefficients(&self, spec: &RootSystemSpec) -> Result<BTreeMap<Weight, Scalar>> {
        if !self.is_invariant(spec) {
            return Err(Error::NotInvariant);
        }
        Ok(self.terms.iter().filter(|(w, c)| spec.is_dominant(w) && !c.is_zero()).map(|(w, c)| (w.clone(), c.clone())).collect())
    }
}

pub const MAX_DIM: usize = 8;

/// Index of a `q`/`t` symbol inside [`ZKey::m`].
pub fn zvar(v: Var) -> usize {
    match v {
        Var::Q => 0,
        Var::T => 1,
        Var::Ts => 2,
        Var::Tl => 3,
        _ => panic!("only q and t symbols occur in lattice coefficients"),
    }
}

const ZVARS: [Var; 4] = [Var::Q, Var::T, Var::Ts, Var::Tl];

/// A lattice point in doubled coordinates together with a monomial in
/// `q, t, t_s, t_l` (half-unit exponents).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ZKey {
    pub w: [i16; MAX_DIM],
    pub m: [i16; 4],
}

impl ZKey {
    pub fn new(w: &[i32], m: [i16; 4]) -> ZKey {
        let mut a = [0i16; MAX_DIM];
        for (x, &y) in a.iter_mut().zip(w) {
            *x = y as i16;
        }
        ZKey { w: a, m }
    }

    pub fn weight(&self, dim: usize) -> Weight {
        Weight(self.w[..dim].iter().map(|&x| x as i32).collect())
    }

    pub fn mono(&self) -> Mono {
        let mut m = ONE_MONO;
        for (i, v) in ZVARS.iter().enumerate() {
            m[v.index()] = self.m[i] as i32;
        }
        m
    }

    fn dot(&self, a: &[i32]) -> i64 {
        self.w.iter().zip(a).map(|(&x, &y)| x as i64 * y as i64).sum()
    }
}

/// Laurent polynomial on the lattice with integer coefficients in `q` and the `t`.
#[derive(Clone, Debug)]
pub struct ZLattice {
    pub dim: usize,
    pub terms: HashMap<ZKey, i128>,
}

impl ZLattice {
    pub fn zero(dim: usize) -> ZLattice {
        assert!(dim <= MAX_DIM, "lattice dimension above {}", MAX_DIM);
        ZLattice { dim, terms: HashMap::new() }
    }

    pub fn one(dim: usize) -> ZLattice {
        ZLattice::term(dim, &vec![0; dim], [0; 4], 1)
    }

    pub fn term(dim: usize, w: &[i32], m: [i16; 4], c: i128) -> ZLattice {
        let mut z = ZLattice::zero(dim);
        z.add_term(ZKey::new(w, m), c);
        z
    }

    pub fn add_term(&mut self, k: ZKey, c: i128) {
        if c == 0 {
            return;
        }
        let e = self.terms.entry(k).or_insert(0);
        *e += c;
        if *e == 0 {
            self.terms.remove(&k);
        }
    }

    pub fn add_scaled(&mut self, o: &ZLattice, s: i128) {
        for (k, c) in &o.terms {
            self.add_term(*k, c * s);
        }
    }

    pub fn mul(&self, o: &ZLattice) -> ZLattice {
        let mut out: HashMap<ZKey, i128> = HashMap::with_capacity(self.terms.len() * o.terms.len());
        for (a, ca) in &self.terms {
            for (b, cb) in &o.terms {
                let mut k = *a;
                for i in 0..MAX_DIM {
                    k.w[i] += b.w[i];
                }
                for i in 0..4 {
                    k.m[i] += b.m[i];
                }
                let p = ca.checked_mul(*cb).expect("lattice coefficient overflow");
                *out.entry(k).or_insert(0) += p;
            }
        }
        out.retain(|_, c| *c != 0);
        ZLattice { dim: self.dim, terms: out }
    }

    /// `w` acting on the lattice points.
    pub fn act(&self, w: &SignedPerm) -> ZLattice {
        let terms = self
            .terms
            .iter()
            .map(|(k, c)| {
                let mut n = *k;
                for i in 0..self.dim {
                    n.w[i] = w.signs[i] as i16 * k.w[w.perm[i]];
                }
                (n, *c)
            })
            .collect();
        ZLattice { dim: self.dim, terms }
    }

    pub fn shift(&self, v: &[i32]) -> ZLattice {
        let terms = self
            .terms
            .iter()
            .map(|(k, c)| {
                let mut n = *k;
                for i in 0..self.dim {
                    n.w[i] += v[i] as i16;
                }
                (n, *c)
            })
            .collect();
        ZLattice { dim: self.dim, terms }
    }

    /// Exact quotient by `e^alpha - 1`.
    pub fn div_binomial(&self, alpha: &[i32]) -> Result<ZLattice> {
        if self.terms.is_empty() {
            return Ok(self.clone());
        }
        let aa: i64 = alpha.iter().map(|&x| x as i64 * x as i64).sum();
        let low = self.terms.keys().map(|k| k.dot(alpha)).min().unwrap();
        let mut rest = self.terms.clone();
        let mut heap: BinaryHeap<(i64, ZKey)> = rest.keys().map(|k| (k.dot(alpha), *k)).collect();
        let mut out = ZLattice::zero(self.dim);
        while let Some((h, k)) = heap.pop() {
            let c = match rest.remove(&k) {
                Some(c) if c != 0 => c,
                _ => continue,
            };
            if h - aa < low {
                return Err(Error::InexactDivision(format!("not divisible by e^{:?} - 1", alpha)));
            }
            let mut y = k;
            for i in 0..self.dim {
                y.w[i] -= alpha[i] as i16;
            }
            out.add_term(y, c);
            let e = rest.entry(y).or_insert(0);
            if *e == 0 {
                heap.push((h - aa, y));
            }
            *e += c;
        }
        Ok(out)
    }

    /// Coefficient polynomials at the dominant weights.
    pub fn dominant_part(&self, spec: &RootSystemSpec) -> BTreeMap<Weight, Poly> {
        let mut acc: BTreeMap<Weight, Vec<(Mono, BigInt)>> = BTreeMap::new();
        for (k, c) in &self.terms {
            let w = k.weight(self.dim);
            if spec.is_dominant(&w) {
                acc.entry(w).or_default().push((k.mono(), BigInt::from(*c)));
            }
        }
        acc.into_iter().map(|(w, t)| (w, Poly::from_terms(t))).filter(|(_, p)| !p.is_zero()).collect()
    }

    /// Invariance of the lattice support and coefficients under every group element.
    pub fn is_invariant(&self, group: &[SignedPerm]) -> bool {
        group.iter().all(|g| {
            let h = self.act(g);
            h.terms.len() == self.terms.len() && h.terms.iter().all(|(k, c)| self.terms.get(k) == Some(c))
        })
    }

    pub fn to_element(&self) -> LatticeElement {
        let mut acc: BTreeMap<Weight, Vec<(Mono, BigInt)>> = BTreeMap::new();
        for (k, c) in &self.terms {
            acc.entry(k.weight(self.dim)).or_default().push((k.mono(), BigInt::from(*c)));
        }
        let terms = acc
            .into_iter()
            .map(|(w, t)| (w, Scalar::from_laurent(Poly::from_terms(t))))
            .filter(|(_, s)| !s.is_zero())
            .collect();
        LatticeElement { terms }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_division_roundtrip() {
        let a = [2, -2];
        let f = ZLattice::term(2, &[1, 3], [0; 4], 3).mul(&{
            let mut z = ZLattice::term(2, &[0, 0], [2, 0, 0, 0], 1);
            z.add_term(ZKey::new(&[2, 0], [0; 4]), -5);
            z
        });
        let mut b = ZLattice::term(2, &a, [0; 4], 1);
        b.add_term(ZKey::new(&[0, 0], [0; 4]), -1);
        let g = f.mul(&b).div_binomial(&a).unwrap();
        assert_eq!(g.terms, f.terms);
        assert!(f.div_binomial(&a).is_err());
    }
}
