//! Macdonald polynomials from the operator attached to a minuscule weight.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exact_arith::{Mono, Poly, Scalar, Var, ONE_MONO};
use crate::exec::{par_range, Execution};
use crate::heckman_opdam::HOParams;
use crate::hessenberg::{solve_recurrence, MonomialExpansion, SolveOptions, TriangularData};
use crate::root_data::{Family, RootSystemSpec, Slot, Weight};

/// Choice among the spin and vector operators of type D.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DChoice {
    Omega1,
    /// `omega_{N-1} = (1/2, ..., 1/2, -1/2)`.
    SpinMinus,
    /// `omega_N = (1/2, ..., 1/2)`.
    SpinPlus,
    /// Sum of the two spin operators.
    Sum,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MinusculeChoice {
    /// `omega_r` for `1 <= r <= N - 1`.
    A(usize),
    B,
    C,
    D(DChoice),
}

impl MinusculeChoice {
    pub fn default_for(spec: &RootSystemSpec) -> Result<MinusculeChoice> {
        match spec.family {
            Family::A => Ok(MinusculeChoice::A(1)),
            Family::B => Ok(MinusculeChoice::B),
            Family::C => Ok(MinusculeChoice::C),
            Family::D => Ok(MinusculeChoice::D(DChoice::Sum)),
            Family::BC => Err(Error::InvalidSpec("no minuscule operator for BC".into())),
        }
    }

    /// Accepts `default`, an index `r` of `omega_r`, `spin-`, `spin+` or `sum`.
    pub fn parse(spec: &RootSystemSpec, s: &str) -> Result<MinusculeChoice> {
        let s = s.trim().to_ascii_lowercase();
        let n = spec.n();
        let bad = || Error::InvalidChoice(format!("{} for {}", s, spec));
        let c = match (spec.family, s.as_str()) {
            (_, "default") => return MinusculeChoice::default_for(spec),
            (Family::D, "sum") => MinusculeChoice::D(DChoice::Sum),
            (Family::D, "spin-") => MinusculeChoice::D(DChoice::SpinMinus),
            (Family::D, "spin+") => MinusculeChoice::D(DChoice::SpinPlus),
            (f, idx) => {
                let r: usize = idx.strip_prefix("omega").unwrap_or(idx).parse().map_err(|_| bad())?;
                match f {
                    Family::A => MinusculeChoice::A(r),
                    Family::B if r == 1 => MinusculeChoice::B,
                    Family::C if r == n => MinusculeChoice::C,
                    Family::D if r == 1 => MinusculeChoice::D(DChoice::Omega1),
                    Family::D if r == n - 1 => MinusculeChoice::D(DChoice::SpinMinus),
                    Family::D if r == n => MinusculeChoice::D(DChoice::SpinPlus),
                    _ => return Err(bad()),
                }
            }
        };
        c.validate(spec)?;
        Ok(c)
    }

    pub fn validate(&self, spec: &RootSystemSpec) -> Result<()> {
        let ok = match (self, spec.family) {
            (MinusculeChoice::A(r), Family::A) => *r >= 1 && *r < spec.n(),
            (MinusculeChoice::B, Family::B) | (MinusculeChoice::C, Family::C) | (MinusculeChoice::D(_), Family::D) => true,
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidChoice(format!("{} for {}", self, spec)))
        }
    }

    /// The minuscule weights whose operators are summed.
    pub fn weights(&self, spec: &RootSystemSpec) -> Vec<Weight> {
        let n = spec.n();
        let e1 = {
            let mut v = vec![0; n];
            v[0] = 2;
            Weight(v)
        };
        let spin_plus = Weight(vec![1; n]);
        let spin_minus = {
            let mut v = vec![1; n];
            v[n - 1] = -1;
            Weight(v)
        };
        match self {
            MinusculeChoice::A(r) => vec![Weight((0..n).map(|i| if i < *r { 2 } else { 0 }).collect())],
            MinusculeChoice::B => vec![e1],
            MinusculeChoice::C => vec![spin_plus],
            MinusculeChoice::D(DChoice::Omega1) => vec![e1],
            MinusculeChoice::D(DChoice::SpinMinus) => vec![spin_minus],
            MinusculeChoice::D(DChoice::SpinPlus) => vec![spin_plus],
            MinusculeChoice::D(DChoice::Sum) => vec![spin_minus, spin_plus],
        }
    }
}

impl fmt::Display for MinusculeChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MinusculeChoice::A(r) => write!(f, "omega{}", r),
            MinusculeChoice::B => f.write_str("omega1"),
            MinusculeChoice::C => f.write_str("omegaN"),
            MinusculeChoice::D(DChoice::Omega1) => f.write_str("omega1"),
            MinusculeChoice::D(DChoice::SpinMinus) => f.write_str("spin-"),
            MinusculeChoice::D(DChoice::SpinPlus) => f.write_str("spin+"),
            MinusculeChoice::D(DChoice::Sum) => f.write_str("sum"),
        }
    }
}

impl FromStr for DChoice {
    type Err = Error;
    fn from_str(s: &str) -> Result<DChoice> {
        match s {
            "omega1" | "1" => Ok(DChoice::Omega1),
            "spin-" => Ok(DChoice::SpinMinus),
            "spin+" => Ok(DChoice::SpinPlus),
            "sum" => Ok(DChoice::Sum),
            _ => Err(Error::InvalidChoice(s.to_string())),
        }
    }
}

/// `q` and the `t_alpha`, one per multiplicity slot.
#[derive(Clone, Debug, PartialEq)]
pub struct MacParams {
    pub q: Scalar,
    pub t: BTreeMap<Slot, Scalar>,
}

impl MacParams {
    /// `q` and a single `t` for every root.
    pub fn symbolic(spec: &RootSystemSpec) -> MacParams {
        MacParams { q: Scalar::var(Var::Q), t: spec.parameter_slots().into_iter().map(|s| (s, Scalar::var(Var::T))).collect() }
    }

    /// `q` and one symbol `t`, `t_s`, `t_l` per slot.
    pub fn symbolic_general(spec: &RootSystemSpec) -> MacParams {
        MacParams { q: Scalar::var(Var::Q), t: spec.parameter_slots().into_iter().map(|s| (s, Scalar::var(s.t_var()))).collect() }
    }

    /// `t_alpha = q^{g_alpha}` with symbolic `q`.
    pub fn from_multiplicities(spec: &RootSystemSpec, g: &BTreeMap<Slot, u32>) -> MacParams {
        let t = spec
            .parameter_slots()
            .into_iter()
            .map(|s| (s, Scalar::var_pow(Var::Q, 2 * g.get(&s).copied().unwrap_or(0) as i32)))
            .collect();
        MacParams { q: Scalar::var(Var::Q), t }
    }

    pub fn with_q(mut self, q: Scalar) -> MacParams {
        self.q = q;
        self
    }

    pub fn with_t(mut self, t: Scalar) -> MacParams {
        for v in self.t.values_mut() {
            *v = t.clone();
        }
        self
    }

    pub fn with_slot(mut self, slot: Slot, t: Scalar) -> Result<MacParams> {
        match self.t.get_mut(&slot) {
            Some(v) => *v = t,
            None => return Err(Error::InvalidSpec(format!("no parameter {} for this family", slot.t_var()))),
        }
        Ok(self)
    }

    pub fn t(&self, slot: Slot) -> Scalar {
        self.t.get(&slot).cloned().unwrap_or_else(Scalar::one)
    }

    fn q_binding(&self) -> Vec<(Var, Scalar)> {
        if self.q == Scalar::var(Var::Q) {
            vec![]
        } else {
            vec![(Var::Q, self.q.clone())]
        }
    }

    /// Bindings for data built with a single symbol `t`.
    pub fn bindings(&self) -> Result<Vec<(Var, Scalar)>> {
        let mut vals = self.t.values();
        let t = vals.next().cloned().unwrap_or_else(|| Scalar::var(Var::T));
        if vals.any(|v| *v != t) {
            return Err(Error::InvalidSpec("distinct t per root length needs the general-t construction".into()));
        }
        let mut b = self.q_binding();
        if t != Scalar::var(Var::T) {
            b.push((Var::T, t));
        }
        Ok(b)
    }

    /// Bindings for data built with one symbol per slot.
    pub fn bindings_general(&self) -> Vec<(Var, Scalar)> {
        let mut b = self.q_binding();
        for (s, v) in &self.t {
            if *v != Scalar::var(s.t_var()) {
                b.push((s.t_var(), v.clone()));
            }
        }
        b
    }
}

fn mono(q: i32, t: &[(Var, i32)]) -> Mono {
    let mut m = ONE_MONO;
    m[Var::Q.index()] = q;
    for &(v, e) in t {
        m[v.index()] += e;
    }
    m
}

fn term(q: i32, t: &[(Var, i32)]) -> Poly {
    Poly::monomial(mono(q, t), BigInt::from(1))
}

/// Half-unit exponent of `q^{<tau, kappa>}`, rounded down uniformly.
///
/// For the spin weights of type D on half-integral `kappa` the true exponents lie in
/// `1/4 + Z/2` or `-1/4 + Z/2`, all with the same offset, so rounding multiplies every
/// eigenvalue of the operator by the same power of `q`.
pub fn q_exponent(tau: &Weight, kappa: &Weight) -> i32 {
    (tau.dot4(kappa)).div_euclid(2) as i32
}

/// Table eigenvalue of the chosen operator at `kappa`, symbolic in `q` and `t`.
/// Valid for any weight, dominant or not.
pub fn mac_eigenvalue_poly(spec: &RootSystemSpec, choice: MinusculeChoice, kappa: &Weight) -> Poly {
    let n = spec.n() as i32;
    let k = &kappa.0;
    let t = |e: i32| (Var::T, 2 * e);
    match choice {
        MinusculeChoice::A(r) => {
            let mut acc = Poly::zero();
            for mask in 0u32..(1 << n) {
                if mask.count_ones() as usize != r {
                    continue;
                }
                let (mut te, mut qe) = (0, 0);
                for j in 0..n as usize {
                    if mask >> j & 1 == 1 {
                        te += n - 1 - j as i32;
                        qe += k[j];
                    }
                }
                acc = &acc + &term(qe, &[t(te)]);
            }
            acc
        }
        MinusculeChoice::B | MinusculeChoice::D(DChoice::Omega1) => {
            let top = if choice == MinusculeChoice::B { 2 * n } else { 2 * n - 1 };
            let mut acc = Poly::zero();
            for (j0, &x) in k.iter().enumerate() {
                let j = j0 as i32 + 1;
                acc = &acc + &term(x, &[t(top - j)]);
                acc = &acc + &term(-x, &[t(j - 1)]);
            }
            acc
        }
        MinusculeChoice::C => {
            let mut acc = Poly::one();
            for (j0, &x) in k.iter().enumerate() {
                let j = j0 as i32 + 1;
                let f = &term(x / 2, &[t(n + 1 - j)]) + &term(-x / 2, &[]);
                acc = &acc * &f;
            }
            acc
        }
        MinusculeChoice::D(c) => {
            let spin = |sign: i64| {
                let s: i32 = k.iter().sum();
                let mut acc = term((-s).div_euclid(2), &[]);
                for (j0, &x) in k.iter().enumerate() {
                    let f = &term(x, &[t(n - 1 - j0 as i32)]) + &Poly::from_i64(sign);
                    acc = &acc * &f;
                }
                acc
            };
            let (plus, minus) = (spin(1), spin(-1));
            let two = BigInt::from(2);
            match c {
                DChoice::Sum => plus,
                DChoice::SpinPlus => (&plus + &minus).div_int(&two),
                DChoice::SpinMinus => (&plus - &minus).div_int(&two),
                DChoice::Omega1 => unreachable!(),
            }
        }
    }
}

/// Table eigenvalue at the given parameter values.
pub fn mac_eigenvalue(spec: &RootSystemSpec, choice: MinusculeChoice, params: &MacParams, mu: &Weight) -> Result<Scalar> {
    Scalar::from_laurent(mac_eigenvalue_poly(spec, choice, mu)).substitute(&params.bindings()?)
}

/// `q^{<pi, rho_t>} sum_{tau in W pi} q^{<tau, kappa + rho_t>}` summed over the
/// minuscule weights of `choice`, with `q^{g_alpha}` written as `tsym(slot)`.
pub fn mac_eigenvalue_generic(spec: &RootSystemSpec, choice: MinusculeChoice, tsym: &dyn Fn(Slot) -> Var, kappa: &Weight) -> Poly {
    let roots = spec.positive_roots();
    let mut acc = Poly::zero();
    for pi in choice.weights(spec) {
        let base: Vec<(Var, i32)> = roots.iter().map(|r| (tsym(r.slot), pairing(&pi, &r.vector))).collect();
        for tau in spec.weyl_orbit(&pi) {
            let mut t = base.clone();
            t.extend(roots.iter().map(|r| (tsym(r.slot), pairing(&tau, &r.vector))));
            acc = &acc + &term(q_exponent(&tau, kappa), &t);
        }
    }
    acc
}

/// `<pi, alpha>` for a minuscule weight; always an integer.
fn pairing(pi: &Weight, alpha: &Weight) -> i32 {
    let d = pi.dot4(alpha);
    debug_assert!(d % 4 == 0);
    (d / 4) as i32
}

/// `(kappa, nu, sign)` for every `kappa` in the orbit of `mu` with `rho + kappa` regular,
/// where `nu + rho` is the dominant conjugate of `rho + kappa`.
fn regular_orbit(spec: &RootSystemSpec, rho: &Weight, mu: &Weight) -> Vec<(Weight, Weight, i32)> {
    spec.weyl_orbit(mu)
        .into_iter()
        .filter_map(|k| {
            let d = spec.dominantize(&rho.add(&k));
            if d.stabilized {
                None
            } else {
                Some((k, d.weight.sub(rho), d.sign))
            }
        })
        .collect()
}

/// Row `mu` of `D - eps_lambda` in the monomial basis, diagonal included.
pub fn mac_matrix_row(spec: &RootSystemSpec, eps: &dyn Fn(&Weight) -> Poly, mu: &Weight, eps_lambda: &Poly) -> BTreeMap<Weight, Poly> {
    let rho = spec.rho();
    let mut row: BTreeMap<Weight, Poly> = BTreeMap::new();
    for (k, nu, sign) in regular_orbit(spec, &rho, mu) {
        let v = &eps(&k) - eps_lambda;
        let e = row.entry(nu).or_insert_with(Poly::zero);
        *e = if sign > 0 { &*e + &v } else { &*e - &v };
    }
    row.retain(|_, v| !v.is_zero());
    row
}

/// Coefficients `a_{lambda nu}` of `m_lambda` in the Weyl characters `chi_nu`.
pub fn inverse_kostka(spec: &RootSystemSpec, lambda: &Weight) -> BTreeMap<Weight, i64> {
    let mut out: BTreeMap<Weight, i64> = BTreeMap::new();
    for (_, nu, sign) in regular_orbit(spec, &spec.rho(), lambda) {
        *out.entry(nu).or_insert(0) += sign as i64;
    }
    out.retain(|_, v| *v != 0);
    out
}

fn check_family(spec: &RootSystemSpec) -> Result<()> {
    if spec.family == Family::BC {
        return Err(Error::InvalidSpec("Macdonald operators are defined here for A, B, C, D".into()));
    }
    Ok(())
}

fn build(
    spec: &RootSystemSpec,
    lambda: &Weight,
    exec: Execution,
    eps: &(dyn Fn(&Weight) -> Poly + Sync),
    row: &(dyn Fn(&Weight, &Poly) -> BTreeMap<Weight, Poly> + Sync),
) -> Result<TriangularData> {
    let interval = spec.dominant_interval(lambda)?;
    let eps_p: Vec<Poly> = interval.iter().map(eps).collect();
    let el = eps_p.last().unwrap().clone();
    let index: HashMap<&Weight, usize> = interval.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let rows = par_range(exec, interval.len(), |j| row(&interval[j], &el));
    let mut d = BTreeMap::new();
    for (j, r) in rows.into_iter().enumerate() {
        for (nu, v) in r {
            let k = *index
                .get(&nu)
                .ok_or_else(|| Error::InvalidSpec(format!("{} escapes the interval of {}", nu, interval[j])))?;
            if k < j {
                d.insert((j, k), Scalar::from_laurent(v));
            } else if k == j {
                debug_assert_eq!(v, &eps_p[j] - &el);
            } else {
                return Err(Error::InvalidSpec(format!("row {} is not triangular", interval[j])));
            }
        }
    }
    let a = inverse_kostka_matrix(spec, &interval);
    let mut td = TriangularData::new(interval, eps_p.into_iter().map(Scalar::from_laurent).collect(), d)?;
    td.a = Some(a);
    Ok(td)
}

fn inverse_kostka_matrix(spec: &RootSystemSpec, interval: &[Weight]) -> BTreeMap<(usize, usize), Scalar> {
    let index: HashMap<&Weight, usize> = interval.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let mut a = BTreeMap::new();
    for (j, mu) in interval.iter().enumerate() {
        for (nu, v) in inverse_kostka(spec, mu) {
            if let Some(&k) = index.get(&nu) {
                a.insert((j, k), Scalar::from_i64(v));
            }
        }
    }
    a
}

/// Symbolic data in `q` and `t` from the orbit sums over the table eigenvalues.
pub fn assemble_macdonald(spec: &RootSystemSpec, choice: MinusculeChoice, lambda: &Weight, exec: Execution) -> Result<TriangularData> {
    check_family(spec)?;
    choice.validate(spec)?;
    spec.require_dominant(lambda)?;
    let eps = |w: &Weight| mac_eigenvalue_poly(spec, choice, w);
    let row = |mu: &Weight, el: &Poly| mac_matrix_row(spec, &eps, mu, el);
    build(spec, lambda, exec, &eps, &row)
}

pub fn macdonald_data(spec: &RootSystemSpec, choice: MinusculeChoice, params: &MacParams, lambda: &Weight, exec: Execution) -> Result<TriangularData> {
    let b = params.bindings()?;
    let td = assemble_macdonald(spec, choice, lambda, exec)?;
    if b.is_empty() {
        Ok(td)
    } else {
        td.substitute(&b)
    }
}

pub fn compute_macdonald(
    spec: &RootSystemSpec,
    choice: MinusculeChoice,
    params: &MacParams,
    lambda: &Weight,
    opts: SolveOptions,
) -> Result<MonomialExpansion> {
    let td = macdonald_data(spec, choice, params, lambda, opts.exec)?;
    td.check_regular()?;
    solve_recurrence(&td, opts)
}

/// Largest number of positive roots for the subset sums of the general-t construction.
pub const GENERAL_T_MAX_ROOTS: usize = 12;

struct SubsetTable {
    /// `rho - 2 rho(Y)` per subset `Y` of the positive roots.
    shift: Vec<Weight>,
    odd: Vec<bool>,
    /// Exponents of each `t` symbol in `q^{2<pi, rho_g(Y^c)>}`, per minuscule weight.
    texp: Vec<Vec<[i32; 3]>>,
}

fn slot_index(s: Slot) -> usize {
    match s {
        Slot::G => 0,
        Slot::Gs => 1,
        Slot::Gl => 2,
    }
}

const SLOTS: [Slot; 3] = [Slot::G, Slot::Gs, Slot::Gl];

fn subset_table(spec: &RootSystemSpec, pis: &[Weight]) -> Result<SubsetTable> {
    let roots = spec.positive_roots();
    if roots.len() > GENERAL_T_MAX_ROOTS {
        return Err(Error::RankGuardExceeded(format!(
            "general-t construction needs at most {} positive roots, {} has {}",
            GENERAL_T_MAX_ROOTS,
            spec,
            roots.len()
        )));
    }
    let rho = spec.rho();
    let total = 1usize << roots.len();
    let mut shift = Vec::with_capacity(total);
    let mut odd = Vec::with_capacity(total);
    let mut texp = vec![Vec::with_capacity(total); pis.len()];
    for mask in 0..total {
        let mut s = rho.clone();
        let mut e = vec![[0i32; 3]; pis.len()];
        for (i, r) in roots.iter().enumerate() {
            if mask >> i & 1 == 1 {
                s = s.sub(&r.vector);
            } else {
                for (p, pi) in pis.iter().enumerate() {
                    e[p][slot_index(r.slot)] += pairing(pi, &r.vector);
                }
            }
        }
        shift.push(s);
        odd.push(mask.count_ones() % 2 == 1);
        for (p, x) in e.into_iter().enumerate() {
            texp[p].push(x);
        }
    }
    Ok(SubsetTable { shift, odd, texp })
}

/// Row `mu` of the matrix `b` expressing `D m_mu` in Weyl characters, with one
/// symbol `tsym(slot)` per root length. Each minuscule summand carries the factor `1/|W_pi|`.
fn general_t_b_row(
    spec: &RootSystemSpec,
    pis: &[Weight],
    table: &SubsetTable,
    tsym: &dyn Fn(Slot) -> Var,
    mu: &Weight,
) -> Result<BTreeMap<Weight, Poly>> {
    let rho = spec.rho();
    let orbit = spec.weyl_orbit(mu);
    let mut out: BTreeMap<Weight, Poly> = BTreeMap::new();
    for (p, pi) in pis.iter().enumerate() {
        let mut acc: HashMap<Weight, HashMap<Mono, i64>> = HashMap::new();
        for k in &orbit {
            let qe = q_exponent(pi, k);
            for (y, sh) in table.shift.iter().enumerate() {
                let d = spec.dominantize(&k.add(sh));
                if d.stabilized {
                    continue;
                }
                let nu = d.weight.sub(&rho);
                let te = &table.texp[p][y];
                let tv: Vec<(Var, i32)> = SLOTS.iter().map(|&s| (tsym(s), 2 * te[slot_index(s)])).collect();
                let sign = if table.odd[y] { -d.sign } else { d.sign } as i64;
                *acc.entry(nu).or_default().entry(mono(qe, &tv)).or_insert(0) += sign;
            }
        }
        let wpi = BigInt::from(spec.stabilizer_order(pi));
        for (nu, terms) in acc {
            let poly = Poly::from_terms(terms.into_iter().map(|(m, c)| (m, BigInt::from(c))));
            if poly.is_zero() {
                continue;
            }
            let q = poly.div_int(&wpi);
            if q.scale(&wpi) != poly {
                return Err(Error::InexactDivision(format!("b entry at {} not divisible by |W_pi|", nu)));
            }
            let e = out.entry(nu).or_insert_with(Poly::zero);
            *e = &*e + &q;
        }
    }
    out.retain(|_, v| !v.is_zero());
    Ok(out)
}

/// Symbolic data in `q`, `t`, `t_s`, `t_l` from the expansion of the operator in Weyl
/// characters: `d = b - eps_lambda a` with `a` the inverse Kostka matrix.
pub fn assemble_macdonald_general_t(spec: &RootSystemSpec, choice: MinusculeChoice, lambda: &Weight, exec: Execution) -> Result<TriangularData> {
    check_family(spec)?;
    choice.validate(spec)?;
    spec.require_dominant(lambda)?;
    let pis = choice.weights(spec);
    let table = subset_table(spec, &pis)?;
    let tsym = |s: Slot| s.t_var();
    let eps = |w: &Weight| mac_eigenvalue_generic(spec, choice, &tsym, w);
    let interval = spec.dominant_interval(lambda)?;
    let el = eps(lambda);
    let rows = par_range(exec, interval.len(), |j| -> Result<BTreeMap<Weight, Poly>> {
        let mut b = general_t_b_row(spec, &pis, &table, &tsym, &interval[j])?;
        for (nu, a) in inverse_kostka(spec, &interval[j]) {
            let e = b.entry(nu).or_insert_with(Poly::zero);
            *e = &*e - &el.scale(&BigInt::from(a));
        }
        b.retain(|_, v| !v.is_zero());
        Ok(b)
    });
    let rows = rows.into_iter().collect::<Result<Vec<_>>>()?;
    let row = |mu: &Weight, _: &Poly| {
        let j = interval.iter().position(|w| w == mu).unwrap();
        rows[j].clone()
    };
    build(spec, lambda, Execution::Sequential, &eps, &row)
}

pub fn compute_macdonald_general_t(
    spec: &RootSystemSpec,
    choice: MinusculeChoice,
    params: &MacParams,
    lambda: &Weight,
    opts: SolveOptions,
) -> Result<MonomialExpansion> {
    let mut td = assemble_macdonald_general_t(spec, choice, lambda, opts.exec)?;
    let b = params.bindings_general();
    if !b.is_empty() {
        td = td.substitute(&b)?;
    }
    td.check_regular()?;
    solve_recurrence(&td, opts)
}

/// Heckman-Opdam data from the orbit sums with `eps_kappa = <kappa + g rho, kappa + g rho>`.
/// Needs a single multiplicity `g` for every root.
pub fn ho_via_macdonald(spec: &RootSystemSpec, params: &HOParams, lambda: &Weight, opts: SolveOptions) -> Result<MonomialExpansion> {
    check_family(spec)?;
    let g = params.get(Slot::G);
    if params.slots().any(|(_, v)| *v != g) {
        return Err(Error::InvalidSpec("the orbit-sum route needs equal multiplicities".into()));
    }
    spec.require_dominant(lambda)?;
    let rho = spec.rho();
    let gv = Poly::var(Var::G);
    // four times the eigenvalue, to stay with integer coefficients
    let eps4 = |k: &Weight| {
        let a = Poly::from_i64(k.dot4(k));
        let b = gv.scale(&BigInt::from(2 * k.dot4(&rho)));
        let c = (&gv * &gv).scale(&BigInt::from(rho.dot4(&rho)));
        &(&a + &b) + &c
    };
    let row = |mu: &Weight, el: &Poly| mac_matrix_row(spec, &eps4, mu, el);
    let mut td = build(spec, lambda, opts.exec, &eps4, &row)?;
    let quarter = Scalar::from_ratio(1, 4);
    td.eps = td.eps.iter().map(|e| e * &quarter).collect();
    for v in td.d.values_mut() {
        *v = &*v * &quarter;
    }
    if g != Scalar::var(Var::G) {
        td = td.substitute(&[(Var::G, g)])?;
    }
    td.check_regular()?;
    solve_recurrence(&td, opts)
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
    fn a1_coefficient() {
        let spec = RootSystemSpec::new(Family::A, 2).unwrap();
        let c = MinusculeChoice::default_for(&spec).unwrap();
        let p = compute_macdonald(&spec, c, &MacParams::symbolic(&spec), &w(&[2, 0]), SolveOptions::default()).unwrap();
        assert_eq!(p.coeff(&w(&[1, 1])), s("(1+q)*(1-t)/(1-q*t)"));
    }

    #[test]
    fn tables_match_orbit_sums() {
        let t = |_: Slot| Var::T;
        for (f, n) in [(Family::A, 3), (Family::B, 3), (Family::C, 3), (Family::D, 3), (Family::D, 4)] {
            let spec = RootSystemSpec::new(f, n).unwrap();
            let choices: Vec<MinusculeChoice> = match f {
                Family::A => vec![MinusculeChoice::A(1), MinusculeChoice::A(2)],
                Family::D => [DChoice::Omega1, DChoice::SpinMinus, DChoice::SpinPlus, DChoice::Sum].map(MinusculeChoice::D).to_vec(),
                _ => vec![MinusculeChoice::default_for(&spec).unwrap()],
            };
            let mut ks = vec![w(&[2, -1, 0, 1][..n]), w(&[0, 3, 1, -2][..n])];
            if matches!(f, Family::B | Family::D) {
                ks.push(Weight::from_doubled(vec![1, -3, 5, 1][..n].to_vec()));
            }
            for c in choices {
                for k in &ks {
                    let table = mac_eigenvalue_poly(&spec, c, k);
                    let gen = mac_eigenvalue_generic(&spec, c, &t, k);
                    let shift = match c {
                        MinusculeChoice::A(r) => term(0, &[(Var::T, (r * (r - 1)) as i32)]),
                        _ => Poly::one(),
                    };
                    assert_eq!(table, &gen * &shift, "{} {} {}", spec, c, k);
                }
            }
        }
    }

    #[test]
    fn general_t_at_equal_slots() {
        let cases = [
            (Family::A, vec![4, 2, 0]),
            (Family::B, vec![2, 2]),
            (Family::B, vec![4, 2]),
            (Family::C, vec![4, 2]),
            (Family::D, vec![1, 1, 1]),
            (Family::D, vec![4, 2, 0]),
        ];
        for (f, lam) in cases {
            let spec = RootSystemSpec::new(f, lam.len()).unwrap();
            let c = MinusculeChoice::default_for(&spec).unwrap();
            let lam = Weight::from_doubled(lam);
            let opts = SolveOptions::default();
            let one = compute_macdonald(&spec, c, &MacParams::symbolic(&spec), &lam, opts).unwrap();
            let gen = compute_macdonald_general_t(&spec, c, &MacParams::symbolic_general(&spec).with_t(Scalar::var(Var::T)), &lam, opts).unwrap();
            assert!(one.equals(&gen), "{} {}", spec, lam);
        }
    }
}
