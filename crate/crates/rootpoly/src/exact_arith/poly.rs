//! Sparse multivariate Laurent polynomials with integer coefficients.
//!
//! Exponents are stored in half-units: exponent `1` is the power `1/2`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub const NVARS: usize = 7;

/// Formal symbols. `T`, `Ts`, `Tl` stand for `q^g`, `q^{g_s}`, `q^{g_l}` when
/// the Macdonald parameters are attached per root length.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    Q,
    T,
    Ts,
    Tl,
    G,
    Gs,
    Gl,
}

impl Var {
    pub const ALL: [Var; NVARS] = [Var::Q, Var::T, Var::Ts, Var::Tl, Var::G, Var::Gs, Var::Gl];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::Q => "q",
            Var::T => "t",
            Var::Ts => "t_s",
            Var::Tl => "t_l",
            Var::G => "g",
            Var::Gs => "g_s",
            Var::Gl => "g_l",
        }
    }

    pub fn from_name(s: &str) -> Option<Var> {
        Var::ALL.iter().copied().find(|v| v.name() == s)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub type Mono = [i32; NVARS];

pub const ONE_MONO: Mono = [0; NVARS];

pub fn mono_degree(m: &Mono) -> i64 {
    m.iter().map(|&e| e as i64).sum()
}

/// Graded lexicographic order, `q > t > t_s > ... > g_l` within a degree.
pub fn grlex(a: &Mono, b: &Mono) -> Ordering {
    mono_degree(a).cmp(&mono_degree(b)).then_with(|| a.cmp(b))
}

pub fn mono_add(a: &Mono, b: &Mono) -> Mono {
    let mut r = *a;
    for i in 0..NVARS {
        r[i] += b[i];
    }
    r
}

pub fn mono_sub(a: &Mono, b: &Mono) -> Mono {
    let mut r = *a;
    for i in 0..NVARS {
        r[i] -= b[i];
    }
    r
}

fn mono_divides(d: &Mono, m: &Mono) -> bool {
    (0..NVARS).all(|i| d[i] <= m[i])
}

#[derive(Clone, Copy, PartialEq, Eq)]
struct GrKey(Mono);

impl Ord for GrKey {
    fn cmp(&self, other: &Self) -> Ordering {
        grlex(&self.0, &other.0)
    }
}

impl PartialOrd for GrKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Terms are kept sorted by descending graded-lex order with no zero coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    terms: Vec<(Mono, BigInt)>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { terms: Vec::new() }
    }

    pub fn one() -> Poly {
        Poly::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Poly {
        Poly::monomial(ONE_MONO, c)
    }

    pub fn from_i64(c: i64) -> Poly {
        Poly::constant(BigInt::from(c))
    }

    pub fn monomial(m: Mono, c: BigInt) -> Poly {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly { terms: vec![(m, c)] }
        }
    }

    /// The symbol `v` to the first power.
    pub fn var(v: Var) -> Poly {
        let mut m = ONE_MONO;
        m[v.index()] = 2;
        Poly::monomial(m, BigInt::one())
    }

    pub fn from_terms<I: IntoIterator<Item = (Mono, BigInt)>>(it: I) -> Poly {
        let mut acc: HashMap<Mono, BigInt> = HashMap::new();
        for (m, c) in it {
            *acc.entry(m).or_insert_with(BigInt::zero) += c;
        }
        Poly::from_map(acc)
    }

    fn from_map(acc: HashMap<Mono, BigInt>) -> Poly {
        let mut terms: Vec<(Mono, BigInt)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| grlex(&b.0, &a.0));
        Poly { terms }
    }

    pub fn terms(&self) -> &[(Mono, BigInt)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0 == ONE_MONO)
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == ONE_MONO && self.terms[0].1.is_one()
    }

    pub fn as_constant(&self) -> Option<BigInt> {
        if self.terms.is_empty() {
            Some(BigInt::zero())
        } else if self.is_constant() {
            Some(self.terms[0].1.clone())
        } else {
            None
        }
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn leading(&self) -> Option<&(Mono, BigInt)> {
        self.terms.first()
    }

    pub fn leading_coeff(&self) -> BigInt {
        self.terms.first().map(|t| t.1.clone()).unwrap_or_default()
    }

    pub fn coeff(&self, m: &Mono) -> BigInt {
        self.terms
            .binary_search_by(|t| grlex(m, &t.0))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_default()
    }

    pub fn mul_term(&self, m: &Mono, c: &BigInt) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(e, d)| (mono_add(e, m), d * c)).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Poly {
        self.mul_term(&ONE_MONO, c)
    }

    pub fn shift(&self, m: &Mono) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(e, d)| (mono_add(e, m), d.clone())).collect(),
        }
    }

    /// Exact division of every coefficient by `c`.
    pub fn div_int(&self, c: &BigInt) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(e, d)| (*e, d / c)).collect(),
        }
    }

    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    pub fn min_exps(&self) -> Mono {
        let mut r = [i32::MAX; NVARS];
        for (m, _) in &self.terms {
            for i in 0..NVARS {
                r[i] = r[i].min(m[i]);
            }
        }
        if self.terms.is_empty() {
            ONE_MONO
        } else {
            r
        }
    }

    pub fn max_exps(&self) -> Mono {
        let mut r = [i32::MIN; NVARS];
        for (m, _) in &self.terms {
            for i in 0..NVARS {
                r[i] = r[i].max(m[i]);
            }
        }
        if self.terms.is_empty() {
            ONE_MONO
        } else {
            r
        }
    }

    pub fn uses_var(&self, v: Var) -> bool {
        self.terms.iter().any(|(m, _)| m[v.index()] != 0)
    }

    pub fn degree_in(&self, v: Var) -> i32 {
        self.terms.iter().map(|(m, _)| m[v.index()]).max().unwrap_or(0)
    }

    pub fn pow(&self, n: u32) -> Poly {
        let mut r = Poly::one();
        let mut b = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                r = &r * &b;
            }
            n >>= 1;
            if n > 0 {
                b = &b * &b;
            }
        }
        r
    }

    /// Exact division in the polynomial ring, or `None` if `d` does not divide `self`.
    ///
    /// Both operands are expected to have nonnegative exponents.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Poly::zero());
        }
        let (dm, dc) = d.terms[0].clone();
        if d.terms.len() == 1 {
            let mut out = Vec::with_capacity(self.terms.len());
            for (m, c) in &self.terms {
                if !mono_divides(&dm, m) {
                    return None;
                }
                let (qc, r) = c.div_rem(&dc);
                if !r.is_zero() {
                    return None;
                }
                out.push((mono_sub(m, &dm), qc));
            }
            return Some(Poly { terms: out });
        }
        // cheap rejection on the degree range
        let (smax, dmax) = (self.max_exps(), d.max_exps());
        let (smin, dmin) = (self.min_exps(), d.min_exps());
        for i in 0..NVARS {
            if smax[i] - smin[i] < dmax[i] - dmin[i] {
                return None;
            }
        }
        if grlex(&self.terms.last().unwrap().0, &d.terms.last().unwrap().0) == Ordering::Less {
            return None;
        }
        let mut rem: BTreeMap<GrKey, BigInt> = self.terms.iter().map(|(m, c)| (GrKey(*m), c.clone())).collect();
        let mut quot = Vec::new();
        while let Some((GrKey(m), c)) = rem.pop_last() {
            if !mono_divides(&dm, &m) {
                return None;
            }
            let (qc, r) = c.div_rem(&dc);
            if !r.is_zero() {
                return None;
            }
            let qm = mono_sub(&m, &dm);
            for (e, dcoef) in &d.terms[1..] {
                let key = GrKey(mono_add(e, &qm));
                let delta = dcoef * &qc;
                match rem.entry(key) {
                    std::collections::btree_map::Entry::Occupied(mut o) => {
                        *o.get_mut() -= delta;
                        if o.get().is_zero() {
                            o.remove();
                        }
                    }
                    std::collections::btree_map::Entry::Vacant(v) => {
                        v.insert(-delta);
                    }
                }
            }
            quot.push((qm, qc));
        }
        Some(Poly { terms: quot })
    }

    /// View as a polynomial in `v` with coefficients free of `v`; index = exponent.
    pub fn to_univariate(&self, v: Var) -> Vec<Poly> {
        let i = v.index();
        let deg = self.degree_in(v).max(0) as usize;
        let mut buckets: Vec<Vec<(Mono, BigInt)>> = vec![Vec::new(); deg + 1];
        for (m, c) in &self.terms {
            let mut mm = *m;
            let e = mm[i] as usize;
            mm[i] = 0;
            buckets[e].push((mm, c.clone()));
        }
        buckets
            .into_iter()
            .map(|mut t| {
                t.sort_unstable_by(|a, b| grlex(&b.0, &a.0));
                Poly { terms: t }
            })
            .collect()
    }

    pub fn from_univariate(coeffs: &[Poly], v: Var) -> Poly {
        let i = v.index();
        let mut terms = Vec::new();
        for (e, p) in coeffs.iter().enumerate() {
            for (m, c) in &p.terms {
                let mut mm = *m;
                mm[i] += e as i32;
                terms.push((mm, c.clone()));
            }
        }
        terms.sort_unstable_by(|a, b| grlex(&b.0, &a.0));
        Poly { terms }
    }

    fn merge(&self, other: &Poly, negate: bool) -> Poly {
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match grlex(&a[i].0, &b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0, c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        for t in &b[j..] {
            let c = if negate { -&t.1 } else { t.1.clone() };
            out.push((t.0, c));
        }
        Poly { terms: out }
    }

    fn mul_impl(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        if self.terms.len() == 1 {
            return other.mul_term(&self.terms[0].0, &self.terms[0].1);
        }
        if other.terms.len() == 1 {
            return self.mul_term(&other.terms[0].0, &other.terms[0].1);
        }
        let mut acc: HashMap<Mono, BigInt> = HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = mono_add(ma, mb);
                match acc.get_mut(&m) {
                    Some(v) => *v += ca * cb,
                    None => {
                        acc.insert(m, ca * cb);
                    }
                }
            }
        }
        Poly::from_map(acc)
    }

    /// Terms by ascending degree, `q` before `t` within a degree.
    fn display_order(&self) -> Vec<&(Mono, BigInt)> {
        let mut v: Vec<&(Mono, BigInt)> = self.terms.iter().collect();
        v.sort_by(|a, b| mono_degree(&a.0).cmp(&mono_degree(&b.0)).then_with(|| b.0.cmp(&a.0)));
        v
    }

    /// Write in ascending order, e.g. `1+q-t-q*t`.
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (k, (m, c)) in self.display_order().into_iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if neg {
                s.push('-');
            } else if k > 0 {
                s.push('+');
            }
            let ms = render_mono(m);
            if ms.is_empty() {
                s.push_str(&a.to_string());
            } else if a.is_one() {
                s.push_str(&ms);
            } else {
                s.push_str(&a.to_string());
                s.push('*');
                s.push_str(&ms);
            }
        }
        s
    }

    pub fn render_latex(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (k, (m, c)) in self.display_order().into_iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if neg {
                s.push('-');
            } else if k > 0 {
                s.push('+');
            }
            let ms = render_mono_latex(m);
            if ms.is_empty() {
                s.push_str(&a.to_string());
            } else if a.is_one() {
                s.push_str(&ms);
            } else {
                s.push_str(&a.to_string());
                s.push_str(&ms);
            }
        }
        s
    }
}

pub fn render_mono(m: &Mono) -> String {
    let mut parts = Vec::new();
    for v in Var::ALL {
        let e = m[v.index()];
        if e == 0 {
            continue;
        }
        let p = if e == 2 {
            v.name().to_string()
        } else if e % 2 == 0 {
            format!("{}^{}", v.name(), e / 2)
        } else {
            format!("{}^({}/2)", v.name(), e)
        };
        parts.push(p);
    }
    parts.join("*")
}

fn latex_name(v: Var) -> &'static str {
    match v {
        Var::Q => "q",
        Var::T => "t",
        Var::Ts => "t_{s}",
        Var::Tl => "t_{l}",
        Var::G => "g",
        Var::Gs => "g_{s}",
        Var::Gl => "g_{l}",
    }
}

pub fn render_mono_latex(m: &Mono) -> String {
    let mut s = String::new();
    for v in Var::ALL {
        let e = m[v.index()];
        if e == 0 {
            continue;
        }
        let name = latex_name(v);
        if e == 2 {
            s.push_str(name);
        } else if e % 2 == 0 {
            s.push_str(&format!("{}^{{{}}}", name, e / 2));
        } else {
            s.push_str(&format!("{}^{{{}/2}}", name, e));
        }
    }
    s
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.merge(rhs, false)
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.merge(rhs, true)
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.mul_impl(rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(mut self) -> Poly {
        for t in &mut self.terms {
            t.1 = -std::mem::take(&mut t.1);
        }
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Poly {
        Poly::var(Var::Q)
    }
    fn t() -> Poly {
        Poly::var(Var::T)
    }

    #[test]
    fn render_ascending() {
        let p = &(&Poly::one() + &q()) * &(&Poly::one() - &t());
        assert_eq!(p.render(), "1+q-t-q*t");
    }

    #[test]
    fn exact_division_roundtrip() {
        let a = &(&q() + &t()).pow(3) * &(&q() - &Poly::from_i64(2));
        let b = &q() + &t();
        let c = a.div_exact(&b).unwrap();
        assert_eq!(&c * &b, a);
        assert!(a.div_exact(&(&q() + &Poly::from_i64(5))).is_none());
    }

    #[test]
    fn univariate_view() {
        let a = &(&q() * &t()) + &(&t() * &t());
        let u = a.to_univariate(Var::T);
        assert_eq!(u.len(), 5);
        assert_eq!(Poly::from_univariate(&u, Var::T), a);
    }
}
