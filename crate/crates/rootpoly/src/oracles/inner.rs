//! Weyl characters, brute-force orbits, weight functions and the constant-term inner product.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;

use super::lattice::{LatticeElement, ZKey, ZLattice};
use crate::error::{Error, Result};
use crate::exact_arith::{Poly, Scalar, Var};
use crate::hessenberg::MonomialExpansion;
use crate::root_data::{RootSystemSpec, Slot, Weight};

/// `chi_lambda` expanded in orbit sums, by dividing the alternant by the Weyl denominator.
pub fn weyl_character(spec: &RootSystemSpec, lambda: &Weight) -> Result<BTreeMap<Weight, i64>> {
    spec.require_dominant(lambda)?;
    let n = spec.n();
    let rho = spec.rho();
    let top = lambda.add(&rho);
    let mut alt = ZLattice::zero(n);
    for w in spec.group_elements()? {
        alt.add_term(ZKey::new(&w.apply(&top).0, [0; 4]), w.det() as i128);
    }
    for r in spec.positive_roots() {
        alt = alt.div_binomial(&r.vector.0)?;
    }
    let chi = alt.shift(&rho.0);
    Ok(chi
        .dominant_part(spec)
        .into_iter()
        .map(|(w, p)| {
            let c: i64 = p.as_constant().and_then(|c| c.try_into().ok()).expect("integer multiplicity");
            (w, c)
        })
        .collect())
}

/// Orbit and stabilizer order by enumerating the group.
pub fn orbit_stabilizer_bruteforce(spec: &RootSystemSpec, lambda: &Weight) -> Result<(BTreeSet<Weight>, u64)> {
    if spec.n() > 5 {
        return Err(Error::RankGuardExceeded(format!("brute-force orbits need rank <= 5, got {}", spec.n())));
    }
    spec.check_arity(lambda)?;
    let mut orbit = BTreeSet::new();
    let mut stab = 0;
    for w in spec.group_elements()? {
        let x = w.apply(lambda);
        if &x == lambda {
            stab += 1;
        }
        orbit.insert(x);
    }
    Ok((orbit, stab))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeightFunctionKind {
    /// `prod_{alpha in R} (1 - e^alpha)^{g_alpha}`.
    HeckmanOpdam,
    /// `prod_{alpha in R} prod_{0 <= m < g_alpha} (1 - q^m e^alpha)`.
    Macdonald,
}

fn weight_function_lattice(spec: &RootSystemSpec, kind: WeightFunctionKind, g: &BTreeMap<Slot, u32>) -> ZLattice {
    let n = spec.n();
    let mut out = ZLattice::one(n);
    for r in spec.positive_roots() {
        let mult = g.get(&r.slot).copied().unwrap_or(0);
        for a in [r.vector.clone(), r.vector.neg()] {
            for m in 0..mult {
                let qe = match kind {
                    WeightFunctionKind::HeckmanOpdam => 0,
                    WeightFunctionKind::Macdonald => 2 * m as i16,
                };
                let mut f = ZLattice::one(n);
                f.add_term(ZKey::new(&a.0, [qe, 0, 0, 0]), -1);
                out = out.mul(&f);
            }
        }
    }
    out
}

/// The weight function at nonnegative integer multiplicities.
pub fn weight_function_expand(spec: &RootSystemSpec, kind: WeightFunctionKind, g: &BTreeMap<Slot, u32>) -> Result<LatticeElement> {
    check_slots(spec, g)?;
    Ok(weight_function_lattice(spec, kind, g).to_element())
}

fn check_slots(spec: &RootSystemSpec, g: &BTreeMap<Slot, u32>) -> Result<()> {
    for s in spec.parameter_slots() {
        if !g.contains_key(&s) {
            return Err(Error::NonIntegerParams(format!("no integer value for {}", s.var())));
        }
    }
    Ok(())
}

/// `CT(f * conj(h) * delta) / |W|` with `conj(e^x) = e^{-x}`.
pub fn constant_term_inner_product(spec: &RootSystemSpec, f: &LatticeElement, h: &LatticeElement, delta: &LatticeElement) -> Result<Scalar> {
    let mut acc = Scalar::zero();
    for (k, a) in &f.terms {
        for (nu, b) in &h.terms {
            let d = delta.coeff(&nu.sub(k));
            if !d.is_zero() {
                acc = &acc + &(&(a * b) * &d);
            }
        }
    }
    acc.div(&Scalar::from_i64(spec.weyl_group_order() as i64))
}

/// Inner products against orbit sums, with the weight function kept as integer
/// Laurent polynomials in `q` per lattice point.
pub struct GramOracle {
    spec: RootSystemSpec,
    delta: HashMap<Vec<i32>, Poly>,
}

impl GramOracle {
    pub fn new(spec: &RootSystemSpec, kind: WeightFunctionKind, g: &BTreeMap<Slot, u32>) -> Result<GramOracle> {
        check_slots(spec, g)?;
        let z = weight_function_lattice(spec, kind, g);
        let mut acc: HashMap<Vec<i32>, Vec<_>> = HashMap::new();
        for (k, c) in &z.terms {
            acc.entry(k.w[..spec.n()].iter().map(|&x| x as i32).collect()).or_default().push((k.mono(), BigInt::from(*c)));
        }
        let delta = acc.into_iter().map(|(w, t)| (w, Poly::from_terms(t))).collect();
        Ok(GramOracle { spec: *spec, delta })
    }

    /// `|W| <m_sigma, m_mu>`.
    pub fn gram(&self, sigma: &Weight, mu: &Weight) -> Poly {
        let a = self.spec.weyl_orbit(sigma);
        let b = self.spec.weyl_orbit(mu);
        let mut acc = Poly::zero();
        for k in &a {
            for nu in &b {
                if let Some(p) = self.delta.get(&nu.sub(k).0) {
                    acc = &acc + p;
                }
            }
        }
        acc
    }

    /// `|W| <p, m_mu>`.
    pub fn pair(&self, p: &MonomialExpansion, mu: &Weight) -> Scalar {
        p.terms.iter().fold(Scalar::zero(), |acc, (s, c)| &acc + &(c * &Scalar::from_laurent(self.gram(s, mu))))
    }

    /// `<p, m_mu> = 0` for every `mu` strictly below the top weight of `p`.
    pub fn is_orthogonal(&self, p: &MonomialExpansion) -> Result<bool> {
        for mu in self.spec.dominant_interval(&p.lambda)? {
            if mu != p.lambda && !self.pair(p, &mu).is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Substitutions placing a symbolic expansion at integer multiplicities:
/// `g_alpha` for Heckman-Opdam data, `t_alpha = q^{g_alpha}` for Macdonald data.
pub fn integer_bindings(kind: WeightFunctionKind, g: &BTreeMap<Slot, u32>, single_t: bool) -> Vec<(Var, Scalar)> {
    g.iter()
        .map(|(s, &v)| match kind {
            WeightFunctionKind::HeckmanOpdam => (s.var(), Scalar::from_i64(v as i64)),
            WeightFunctionKind::Macdonald => {
                let var = if single_t { Var::T } else { s.t_var() };
                (var, Scalar::var_pow(Var::Q, 2 * v as i32))
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_data::Family;

    fn w(v: &[i32]) -> Weight {
        Weight::from_ints(v)
    }

    #[test]
    fn character_a2() {
        let spec = RootSystemSpec::new(Family::A, 3).unwrap();
        let chi = weyl_character(&spec, &w(&[2, 1, 0])).unwrap();
        assert_eq!(chi.get(&w(&[1, 1, 1])), Some(&2));
        assert_eq!(chi.get(&w(&[2, 1, 0])), Some(&1));
    }

    #[test]
    fn b2_weight_function() {
        let spec = RootSystemSpec::new(Family::B, 2).unwrap();
        let g: BTreeMap<Slot, u32> = [(Slot::G, 1), (Slot::Gs, 1)].into_iter().collect();
        let d = weight_function_expand(&spec, WeightFunctionKind::HeckmanOpdam, &g).unwrap();
        assert!(d.is_invariant(&spec));
        assert!(d.terms.values().all(|c| c.is_rational()));
    }
}
