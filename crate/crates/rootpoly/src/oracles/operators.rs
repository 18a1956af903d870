//! Direct application of the hypergeometric and Macdonald operators.

use std::collections::{BTreeMap, HashMap};

use num_rational::Rational64;
use num_traits::Zero;

use super::lattice::{zvar, LatticeElement, ZKey, ZLattice};
use crate::error::{Error, Result};
use crate::exact_arith::{Poly, Scalar};
use crate::heckman_opdam::HOParams;
use crate::hessenberg::MonomialExpansion;
use crate::macdonald::{mac_eigenvalue_generic, q_exponent, MacParams, MinusculeChoice};
use crate::root_data::{Family, RootSystemSpec, Slot, Weight};

/// A linear form `c_0 + c_g g + c_s g_s + c_l g_l`.
type Linear = [Rational64; 4];

fn slot_pos(s: Slot) -> usize {
    match s {
        Slot::G => 1,
        Slot::Gs => 2,
        Slot::Gl => 3,
    }
}

fn add_linear(map: &mut HashMap<Weight, Linear>, w: Weight, pos: usize, v: Rational64) {
    map.entry(w).or_insert([Rational64::zero(); 4])[pos] += v;
}

/// The operator on the orbit sum of `mu`, as a map on the whole orbit image.
fn ho_image(spec: &RootSystemSpec, mu: &Weight) -> HashMap<Weight, Linear> {
    let roots = spec.positive_roots();
    let mut out = HashMap::new();
    for x in spec.weyl_orbit(mu) {
        add_linear(&mut out, x.clone(), 0, Rational64::new(x.dot4(&x), 4));
        for r in &roots {
            let a = &r.vector;
            let xa = x.dot4(a);
            if xa <= 0 {
                continue;
            }
            let k = 2 * xa / a.dot4(a);
            let c = Rational64::new(xa, 4);
            let pos = slot_pos(r.slot);
            add_linear(&mut out, x.clone(), pos, c);
            add_linear(&mut out, x.sub(&a.scale(k as i32)), pos, c);
            for l in 1..k {
                add_linear(&mut out, x.sub(&a.scale(l as i32)), pos, c * 2);
            }
        }
    }
    out
}

fn eval_linear(f: &Linear, params: &HOParams) -> Scalar {
    let mut s = Scalar::from_ratio(*f[0].numer(), *f[0].denom());
    for slot in [Slot::G, Slot::Gs, Slot::Gl] {
        let c = f[slot_pos(slot)];
        if !c.is_zero() {
            s = &s + &(&params.get(slot) * &Scalar::from_ratio(*c.numer(), *c.denom()));
        }
    }
    s
}

/// The hypergeometric operator on a Weyl-invariant element.
pub fn apply_hypergeometric_operator(spec: &RootSystemSpec, params: &HOParams, f: &LatticeElement) -> Result<LatticeElement> {
    let coeffs = f.monomial_coefficients(spec)?;
    let mut out = LatticeElement::new();
    for (mu, c) in coeffs {
        for (w, lin) in ho_image(spec, &mu) {
            out.add_term(w, &(&c * &eval_linear(&lin, params)));
        }
    }
    out.prune();
    Ok(out)
}

/// Coefficients of `m_nu` in the operator applied to `m_mu`, for dominant `nu`.
pub fn ho_on_monomial(spec: &RootSystemSpec, params: &HOParams, mu: &Weight) -> BTreeMap<Weight, Scalar> {
    ho_image(spec, mu)
        .into_iter()
        .filter(|(w, _)| spec.is_dominant(w))
        .map(|(w, l)| (w, eval_linear(&l, params)))
        .filter(|(_, s)| !s.is_zero())
        .collect()
}

fn weight_zkey(w: &Weight) -> ZKey {
    ZKey::new(&w.0, [0; 4])
}

/// The Macdonald operator on `m_mu`, with one symbol per root length, by explicit
/// division by the Weyl denominator.
pub fn macdonald_on_monomial_lattice(spec: &RootSystemSpec, choice: MinusculeChoice, mu: &Weight) -> Result<ZLattice> {
    if spec.family == Family::BC {
        return Err(Error::InvalidSpec("no minuscule operator for BC".into()));
    }
    choice.validate(spec)?;
    let group = spec.group_elements()?;
    let roots = spec.positive_roots();
    let n = spec.n();
    let orbit = spec.weyl_orbit(mu);
    let mut num = ZLattice::zero(n);
    for pi in choice.weights(spec) {
        let mut g = ZLattice::one(n);
        for r in &roots {
            let half: Vec<i32> = r.vector.0.iter().map(|x| x / 2).collect();
            let neg: Vec<i32> = half.iter().map(|x| -x).collect();
            let mut m = [0i16; 4];
            m[zvar(r.slot.t_var())] = (2 * pi.dot4(&r.vector) / 4) as i16;
            let mut f = ZLattice::term(n, &half, m, 1);
            f.add_term(ZKey::new(&neg, [0; 4]), -1);
            g = g.mul(&f);
        }
        let mut seen: BTreeMap<Weight, ()> = BTreeMap::new();
        for w in &group {
            let tau = w.apply(&pi);
            if seen.insert(tau.clone(), ()).is_some() {
                continue;
            }
            let h = g.act(w);
            let mut shift = ZLattice::zero(n);
            for nu in &orbit {
                let mut k = weight_zkey(nu);
                k.m[0] = q_exponent(&tau, nu) as i16;
                shift.add_term(k, 1);
            }
            num.add_scaled(&h.mul(&shift), w.det() as i128);
        }
    }
    let mut out = num;
    for r in &roots {
        out = out.div_binomial(&r.vector.0)?;
    }
    Ok(out.shift(&spec.rho().0))
}

/// Coefficients of `m_nu` in the operator applied to `m_mu`, symbolic in `q`, `t`, `t_s`, `t_l`.
pub fn macdonald_on_monomial(spec: &RootSystemSpec, choice: MinusculeChoice, mu: &Weight) -> Result<BTreeMap<Weight, Poly>> {
    Ok(macdonald_on_monomial_lattice(spec, choice, mu)?.dominant_part(spec))
}

/// The Macdonald operator on a Weyl-invariant element.
pub fn apply_macdonald_operator(spec: &RootSystemSpec, choice: MinusculeChoice, params: &MacParams, f: &LatticeElement) -> Result<LatticeElement> {
    let coeffs = f.monomial_coefficients(spec)?;
    let b = params.bindings_general();
    let mut out = LatticeElement::new();
    for (mu, c) in coeffs {
        let img = macdonald_on_monomial_lattice(spec, choice, &mu)?.to_element();
        for (w, v) in img.terms {
            out.add_term(w, &(&c * &v.substitute(&b)?));
        }
    }
    out.prune();
    Ok(out)
}

/// Outcome of applying an operator to a candidate eigenfunction.
#[derive(Clone, Debug)]
pub struct EigenCheck {
    /// Coefficient of `m_lambda` in the image of `m_lambda`.
    pub eigenvalue: Scalar,
    /// The image equals `eigenvalue` times the input.
    pub is_eigenfunction: bool,
    /// `eigenvalue` agrees with the closed formula.
    pub matches_formula: bool,
}

fn check_images(p: &MonomialExpansion, images: &[(Weight, Scalar, BTreeMap<Weight, Scalar>)], formula: &Scalar) -> EigenCheck {
    let mut total: BTreeMap<Weight, Scalar> = BTreeMap::new();
    for (_, c, img) in images {
        for (nu, v) in img {
            let e = total.entry(nu.clone()).or_insert_with(Scalar::zero);
            *e = &*e + &(c * v);
        }
    }
    let lam = &p.lambda;
    let eig = images
        .iter()
        .find(|(mu, _, _)| mu == lam)
        .and_then(|(_, _, img)| img.get(lam).cloned())
        .unwrap_or_else(Scalar::zero);
    let mut keys: Vec<&Weight> = total.keys().collect();
    keys.extend(p.terms.iter().map(|t| &t.0));
    let ok = keys.iter().all(|nu| {
        let lhs = total.get(*nu).cloned().unwrap_or_else(Scalar::zero);
        lhs == &eig * &p.coeff(nu)
    });
    EigenCheck { matches_formula: eig == *formula, eigenvalue: eig, is_eigenfunction: ok }
}

/// Apply the hypergeometric operator to `p` at `params` and test the eigen-equation.
pub fn check_eigen_ho(spec: &RootSystemSpec, params: &HOParams, p: &MonomialExpansion) -> Result<EigenCheck> {
    let images: Vec<_> = p.terms.iter().map(|(mu, c)| (mu.clone(), c.clone(), ho_on_monomial(spec, params, mu))).collect();
    let formula = crate::heckman_opdam::ho_eigenvalue(spec, params, &p.lambda);
    Ok(check_images(p, &images, &formula))
}

/// Apply the Macdonald operator to `p` at `params` and test the eigen-equation.
pub fn check_eigen_macdonald(spec: &RootSystemSpec, choice: MinusculeChoice, params: &MacParams, p: &MonomialExpansion) -> Result<EigenCheck> {
    let b = params.bindings_general();
    let mut images = Vec::new();
    for (mu, c) in &p.terms {
        let mut img = BTreeMap::new();
        for (w, v) in macdonald_on_monomial(spec, choice, mu)? {
            img.insert(w, Scalar::from_laurent(v).substitute(&b)?);
        }
        images.push((mu.clone(), c.clone(), img));
    }
    let formula = Scalar::from_laurent(mac_eigenvalue_generic(spec, choice, &|s: Slot| s.t_var(), &p.lambda)).substitute(&b)?;
    Ok(check_images(p, &images, &formula))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::heckman_opdam::{compute_ho, HOOptions};
    use crate::hessenberg::SolveOptions;
    use crate::macdonald::compute_macdonald;

    fn w(v: &[i32]) -> Weight {
        Weight::from_ints(v)
    }

    #[test]
    fn ho_eigen_a1() {
        let spec = RootSystemSpec::new(Family::A, 2).unwrap();
        let params = HOParams::symbolic(&spec);
        let p = compute_ho(&spec, &params, &w(&[2, 0]), HOOptions::default()).unwrap();
        let c = check_eigen_ho(&spec, &params, &p).unwrap();
        assert!(c.is_eigenfunction && c.matches_formula);
    }

    #[test]
    fn macdonald_eigen_b2() {
        let spec = RootSystemSpec::new(Family::B, 2).unwrap();
        let choice = MinusculeChoice::default_for(&spec).unwrap();
        let params = MacParams::symbolic(&spec);
        let p = compute_macdonald(&spec, choice, &params, &w(&[1, 1]), SolveOptions::default()).unwrap();
        let c = check_eigen_macdonald(&spec, choice, &params, &p).unwrap();
        assert!(c.is_eigenfunction && c.matches_formula, "{:?}", c);
    }

    #[test]
    fn image_is_invariant() {
        let spec = RootSystemSpec::new(Family::C, 2).unwrap();
        let z = macdonald_on_monomial_lattice(&spec, MinusculeChoice::C, &w(&[1, 0])).unwrap();
        assert!(z.is_invariant(&spec.group_elements().unwrap()));
    }
}
