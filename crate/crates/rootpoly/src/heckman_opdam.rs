//! Heckman-Opdam polynomials from the hypergeometric operator.

use std::collections::BTreeMap;

use num_rational::{BigRational, Rational64};
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact_arith::{Scalar, Var};
use crate::exec::par_range;
use crate::hessenberg::{solve_recurrence, MonomialExpansion, SolveOptions, TriangularData};
use crate::root_data::multiset::{bar, eta, symmetric_difference};
use crate::root_data::{from_q, to_q, Family, QVec, RootData, RootSystemSpec, Slot, Weight};

/// Values of the multiplicity slots; symbolic unless bound.
#[derive(Clone, Debug, PartialEq)]
pub struct HOParams {
    values: BTreeMap<Slot, Scalar>,
}

impl HOParams {
    pub fn symbolic(spec: &RootSystemSpec) -> HOParams {
        HOParams { values: spec.parameter_slots().into_iter().map(|s| (s, Scalar::var(s.var()))).collect() }
    }

    /// Every slot of the family set to the same value.
    pub fn uniform(spec: &RootSystemSpec, v: Scalar) -> HOParams {
        HOParams { values: spec.parameter_slots().into_iter().map(|s| (s, v.clone())).collect() }
    }

    pub fn with(mut self, slot: Slot, v: Scalar) -> Result<HOParams> {
        if !self.values.contains_key(&slot) {
            return Err(Error::InvalidSpec(format!("no parameter {} for this family", slot.var())));
        }
        if let Some(r) = v.as_rational() {
            if r < &BigRational::zero() {
                return Err(Error::InvalidSpec(format!("parameter {} must be nonnegative", slot.var())));
            }
        }
        self.values.insert(slot, v);
        Ok(self)
    }

    pub fn get(&self, slot: Slot) -> Scalar {
        self.values.get(&slot).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn slots(&self) -> impl Iterator<Item = (&Slot, &Scalar)> {
        self.values.iter()
    }

    /// Substitutions turning symbolic data into data at these values.
    pub fn bindings(&self) -> Vec<(Var, Scalar)> {
        self.values
            .iter()
            .filter(|(s, v)| **v != Scalar::var(s.var()))
            .map(|(s, v)| (s.var(), v.clone()))
            .collect()
    }

    pub fn is_symbolic(&self) -> bool {
        self.bindings().is_empty()
    }

    /// Integer values of every slot, if all are nonnegative integers.
    pub fn integer_values(&self) -> Option<BTreeMap<Slot, u32>> {
        self.values
            .iter()
            .map(|(s, v)| {
                let r = v.as_rational()?;
                if r.is_integer() {
                    r.to_integer().to_u32().map(|x| (*s, x))
                } else {
                    None
                }
            })
            .collect()
    }
}

fn rat(n: i64, d: i64) -> Scalar {
    Scalar::from_ratio(n, d)
}

/// Table eigenvalue `sum_j mu_j (mu_j + ...)` of the family.
pub fn ho_eigenvalue(spec: &RootSystemSpec, params: &HOParams, mu: &Weight) -> Scalar {
    let n = spec.rank as i64;
    let g = params.get(Slot::G);
    let gs = params.get(Slot::Gs);
    let gl = params.get(Slot::Gl);
    let mut sq = 0i64;
    let mut lin_g = 0i64;
    let mut sum = 0i64;
    for (j0, &m) in mu.0.iter().enumerate() {
        let j = j0 as i64 + 1;
        let m = m as i64;
        sq += m * m;
        sum += m;
        lin_g += match spec.family {
            Family::A => m * (n + 1 - 2 * j),
            _ => 2 * m * (n - j),
        };
    }
    // doubled coordinates: mu_j = m/2
    let mut e = &rat(sq, 4) + &(&g * &rat(lin_g, 2));
    match spec.family {
        Family::B => e = &e + &(&gs * &rat(sum, 2)),
        Family::C => e = &e + &(&gl * &rat(sum, 1)),
        Family::BC => e = &(&e + &(&gs * &rat(sum, 2))) + &(&gl * &rat(sum, 1)),
        _ => {}
    }
    e
}

/// `<mu + rho_g, mu + rho_g> - <rho_g, rho_g>` from the root list.
pub fn ho_eigenvalue_generic(rd: &RootData, g: &dyn Fn(Var) -> Scalar, mu: &[Rational64]) -> Scalar {
    let mut e = rational_scalar(rd.dot(mu, mu));
    for r in rd.positive_roots() {
        e = &e + &(&g(r.symbol) * &rational_scalar(rd.dot(mu, &r.v)));
    }
    e
}

fn rational_scalar(r: Rational64) -> Scalar {
    Scalar::from_ratio(*r.numer(), *r.denom())
}

/// `N_nu(n1, n2)` on doubled coordinates.
fn n_factor(nu: &Weight, n1: i32, n2: i32) -> i64 {
    if n1.abs() != n2.abs() {
        eta(nu, n1) * eta(nu, n2)
    } else {
        let e = eta(nu, n1);
        e * (e - 1) / 2
    }
}

/// `d^A_{m1,m2;n1,n2}` divided by `g`, doubled coordinates in, true units out.
fn d_a1(m1: i32, m2: i32, n1: i32, n2: i32) -> i64 {
    if m1 - n1 == n2 - m2 && m1 - n1 > 0 {
        (m1 - m2) as i64
    } else {
        0
    }
}

fn half(x: i32) -> Option<i32> {
    if x % 2 == 0 {
        Some(x / 2)
    } else {
        None
    }
}

/// `d^D_{mu nu} / g`.
fn d_d(mu: &Weight, nu: &Weight) -> i64 {
    let (left, right) = symmetric_difference(mu, nu);
    let zero_parts = eta(mu, 0) != 0;
    match (left.as_slice(), right.as_slice()) {
        (&[m1, m2], &[n1, n2]) => {
            let s = if zero_parts && m2 != 0 {
                d_a1(m1, m2, n1, n2) + d_a1(m1, -m2, n1, n2) + d_a1(m1, m2, n1, -n2) + d_a1(m1, -m2, n1, -n2)
            } else {
                d_a1(m1, m2, n1, n2) + d_a1(m1, -m2, n1, -n2)
            };
            s * n_factor(nu, n1, n2)
        }
        (&[m], &[n]) => {
            let mut s = 0;
            if let Some(dp) = half(m + n) {
                s += d_a1(m, -dp, dp, -n) * n_factor(nu, dp, n);
            }
            if zero_parts {
                if let Some(dm) = half(m - n) {
                    s += d_a1(m, -dm, dm, n) * n_factor(nu, dm, n);
                }
            }
            s
        }
        _ => 0,
    }
}

/// Single-part difference `(m, n)` of `mu ⊖ nu`, if that is its shape.
fn single_part(mu: &Weight, nu: &Weight) -> Option<(i32, i32)> {
    match symmetric_difference(mu, nu) {
        (l, r) if l.len() == 1 && r.len() == 1 => Some((l[0], r[0])),
        _ => None,
    }
}

/// Table matrix element `d_{mu nu}` for `nu ≺ mu`.
pub fn ho_matrix_element(spec: &RootSystemSpec, params: &HOParams, mu: &Weight, nu: &Weight) -> Scalar {
    let g = params.get(Slot::G);
    let (a_coeff, dd) = match spec.family {
        Family::A => {
            let (left, right) = symmetric_difference(mu, nu);
            let v = match (left.as_slice(), right.as_slice()) {
                (&[m1, m2], &[n1, n2]) => d_a1(m1, m2, n1, n2) * n_factor(nu, n1, n2),
                _ => 0,
            };
            (v, 0)
        }
        Family::D => (0, d_d(mu, nu)),
        _ => {
            let mb = bar(mu);
            let mirror = if &mb != mu { d_d(&mb, nu) } else { 0 };
            (0, d_d(mu, nu) + mirror)
        }
    };
    let mut out = &g * &Scalar::from_i64(a_coeff + dd);
    if let Some((m, n)) = single_part(mu, nu) {
        if matches!(spec.family, Family::B | Family::BC) && m - n > 0 {
            // 2 g_s m eta_nu(n), m in doubled units
            let v = m as i64 * eta(nu, n);
            out = &out + &(&params.get(Slot::Gs) * &Scalar::from_i64(v));
        }
        if matches!(spec.family, Family::C | Family::BC) && m - n > 0 && (m - n) % 4 == 0 {
            let v = 2 * m as i64 * eta(nu, n);
            out = &out + &(&params.get(Slot::Gl) * &Scalar::from_i64(v));
        }
    }
    out
}

/// Matrix element from the root list: `(|W_nu|/|W_mu|) sum g_a <mu,a> n(a)`.
pub fn ho_matrix_element_generic(rd: &RootData, g: &dyn Fn(Var) -> Scalar, mu: &[Rational64], nu: &[Rational64]) -> Scalar {
    let mut acc = Scalar::zero();
    for r in rd.positive_roots() {
        let k = rd.coroot(mu, &r.v);
        if k <= Rational64::zero() {
            continue;
        }
        let k = k.to_integer();
        for l in 1..=k / 2 {
            let x: QVec = mu.iter().zip(&r.v).map(|(a, b)| a - b * Rational64::from_integer(l)).collect();
            let (dom, _, _) = rd.dominantize(&x);
            if dom.as_slice() == nu {
                let mult = if 2 * l == k { 1 } else { 2 };
                let c = rd.dot(mu, &r.v) * Rational64::from_integer(mult);
                acc = &acc + &(&g(r.symbol) * &rational_scalar(c));
                break;
            }
        }
    }
    let ratio = Rational64::new(rd.stabilizer_order(nu) as i64, rd.stabilizer_order(mu) as i64);
    &acc * &rational_scalar(ratio)
}

#[derive(Clone, Copy, Debug, Default)]
pub struct HOOptions {
    pub prune_cn: bool,
    pub solve: SolveOptions,
}

/// Symbolic triangular data for the family tables, rows built independently.
pub fn assemble_ho(spec: &RootSystemSpec, lambda: &Weight, prune_cn: bool, exec: crate::exec::Execution) -> Result<TriangularData> {
    spec.require_dominant(lambda)?;
    let mut interval = spec.dominant_interval(lambda)?;
    if prune_cn {
        if !matches!(spec.family, Family::BC | Family::C) {
            return Err(Error::InvalidSpec("C_N pruning applies to families BC and C".into()));
        }
        let c = RootSystemSpec::new(Family::C, spec.rank)?;
        interval.retain(|w| c.dominance(w, lambda));
    }
    let params = HOParams::symbolic(spec);
    let eps: Vec<Scalar> = interval.iter().map(|w| ho_eigenvalue(spec, &params, w)).collect();
    let rows = par_range(exec, interval.len(), |j| {
        (0..j)
            .filter(|&k| spec.dominance(&interval[k], &interval[j]))
            .map(|k| (k, ho_matrix_element(spec, &params, &interval[j], &interval[k])))
            .filter(|(_, v)| !v.is_zero())
            .collect::<Vec<_>>()
    });
    let mut d = BTreeMap::new();
    for (j, row) in rows.into_iter().enumerate() {
        for (k, v) in row {
            d.insert((j, k), v);
        }
    }
    TriangularData::new(interval, eps, d)
}

/// Triangular data at the given parameter values.
pub fn ho_data(spec: &RootSystemSpec, params: &HOParams, lambda: &Weight, opts: HOOptions) -> Result<TriangularData> {
    if opts.prune_cn && spec.family == Family::BC && !params.get(Slot::Gs).is_zero() {
        return Err(Error::InvalidSpec("C_N pruning for BC needs g_s = 0".into()));
    }
    let td = assemble_ho(spec, lambda, opts.prune_cn, opts.solve.exec)?;
    let b = params.bindings();
    if b.is_empty() {
        Ok(td)
    } else {
        td.substitute(&b)
    }
}

pub fn compute_ho(spec: &RootSystemSpec, params: &HOParams, lambda: &Weight, opts: HOOptions) -> Result<MonomialExpansion> {
    let td = ho_data(spec, params, lambda, opts)?;
    solve_recurrence(&td, opts.solve)
}

/// Triangular data for an arbitrary root list; weights must have half-integral coordinates.
pub fn assemble_ho_generic(rd: &RootData, g: &dyn Fn(Var) -> Scalar, lambda: &Weight) -> Result<TriangularData> {
    let lq = to_q(lambda);
    let iv = rd.dominant_interval(&lq)?;
    let eps: Vec<Scalar> = iv.iter().map(|w| ho_eigenvalue_generic(rd, g, w)).collect();
    let mut d = BTreeMap::new();
    for j in 0..iv.len() {
        for k in 0..j {
            if !rd.dominance(&iv[k], &iv[j]) {
                continue;
            }
            let v = ho_matrix_element_generic(rd, g, &iv[j], &iv[k]);
            if !v.is_zero() {
                d.insert((j, k), v);
            }
        }
    }
    let interval = iv.iter().map(|w| from_q(w)).collect::<Result<Vec<_>>>()?;
    TriangularData::new(interval, eps, d)
}

pub fn compute_ho_generic(rd: &RootData, g: &dyn Fn(Var) -> Scalar, lambda: &Weight, opts: SolveOptions) -> Result<MonomialExpansion> {
    solve_recurrence(&assemble_ho_generic(rd, g, lambda)?, opts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::parse_scalar;

    fn s(x: &str) -> Scalar {
        parse_scalar(x).unwrap()
    }

    fn w(v: &[i32]) -> Weight {
        Weight::from_ints(v)
    }

    #[test]
    fn b3_entries() {
        let spec = RootSystemSpec::new(Family::B, 3).unwrap();
        let p = HOParams::symbolic(&spec);
        assert_eq!(ho_eigenvalue(&spec, &p, &w(&[2, 1, 0])), s("5+10*g+3*g_s"));
        assert_eq!(ho_matrix_element(&spec, &p, &w(&[1, 1, 0]), &w(&[0, 0, 0])), s("24*g"));
        assert_eq!(ho_matrix_element(&spec, &p, &w(&[2, 1, 0]), &w(&[1, 0, 0])), s("24*g+8*g_s"));
    }

    #[test]
    fn a1_expansion() {
        let spec = RootSystemSpec::new(Family::A, 2).unwrap();
        let p = HOParams::symbolic(&spec);
        let e = compute_ho(&spec, &p, &w(&[2, 0]), HOOptions::default()).unwrap();
        assert_eq!(e.coeff(&w(&[1, 1])), s("2*g/(1+g)"));
    }
}
