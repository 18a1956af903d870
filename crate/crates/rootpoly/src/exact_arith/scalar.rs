use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::gcd::gcd;
use super::poly::{Mono, Poly, Var, NVARS, ONE_MONO};
use crate::error::{Error, Result};

/// Quotient of two integer polynomials in canonical form.
///
/// Invariants: `num` and `den` have nonnegative exponents and no common
/// monomial factor, no common integer content, and the leading coefficient
/// of `den` is positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    /// Build `num/den` with the cheap (monomial and content) reductions applied.
    pub fn new(num: Poly, den: Poly) -> Result<RatFunc> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(RatFunc::canonical(num, den))
    }

    fn canonical(num: Poly, den: Poly) -> RatFunc {
        if num.is_zero() {
            return RatFunc { num, den: Poly::one() };
        }
        let mn = num.min_exps();
        let md = den.min_exps();
        let mut sn = [0i32; NVARS];
        let mut sd = [0i32; NVARS];
        for i in 0..NVARS {
            let e = mn[i] - md[i];
            sn[i] = -mn[i] + e.max(0);
            sd[i] = -md[i] + (-e).max(0);
        }
        let mut num = if sn == ONE_MONO { num } else { num.shift(&sn) };
        let mut den = if sd == ONE_MONO { den } else { den.shift(&sd) };
        let c = num.content().gcd(&den.content());
        if !c.is_one() {
            num = num.div_int(&c);
            den = den.div_int(&c);
        }
        if den.leading_coeff().is_negative() {
            num = -num;
            den = -den;
        }
        RatFunc { num, den }
    }

    /// Cancel the full polynomial gcd of numerator and denominator.
    pub fn reduce_full(&self) -> RatFunc {
        if self.den.is_constant() || self.num.is_zero() {
            return self.clone();
        }
        let g = gcd(&self.num, &self.den);
        if g.is_constant() {
            return self.clone();
        }
        let n = self.num.div_exact(&g).expect("gcd divides numerator");
        let d = self.den.div_exact(&g).expect("gcd divides denominator");
        RatFunc::canonical(n, d)
    }
}

#[derive(Clone, Debug)]
pub enum Scalar {
    Rat(BigRational),
    Frac(RatFunc),
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl Scalar {
    pub fn zero() -> Scalar {
        Scalar::Rat(BigRational::zero())
    }

    pub fn one() -> Scalar {
        Scalar::Rat(BigRational::one())
    }

    pub fn from_i64(n: i64) -> Scalar {
        Scalar::Rat(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(n: i64, d: i64) -> Scalar {
        Scalar::Rat(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn from_rational(r: BigRational) -> Scalar {
        Scalar::Rat(r)
    }

    pub fn var(v: Var) -> Scalar {
        Scalar::from_poly(Poly::var(v))
    }

    /// `v^(half_units/2)`.
    pub fn var_pow(v: Var, half_units: i32) -> Scalar {
        let mut m = ONE_MONO;
        m[v.index()] = half_units;
        Scalar::from_mono(m)
    }

    pub fn from_mono(m: Mono) -> Scalar {
        Scalar::from_laurent(Poly::monomial(m, BigInt::one()))
    }

    pub fn from_poly(p: Poly) -> Scalar {
        Scalar::from_laurent(p)
    }

    /// Accepts negative exponents; they are moved to the denominator.
    pub fn from_laurent(p: Poly) -> Scalar {
        Scalar::from_frac(RatFunc::canonical(p, Poly::one()))
    }

    pub fn from_polys(num: Poly, den: Poly) -> Result<Scalar> {
        Ok(Scalar::from_frac(RatFunc::new(num, den)?))
    }

    fn from_frac(r: RatFunc) -> Scalar {
        match (r.num.as_constant(), r.den.as_constant()) {
            (Some(n), Some(d)) => Scalar::Rat(BigRational::new(n, d)),
            _ => Scalar::Frac(r),
        }
    }

    fn to_frac(&self) -> RatFunc {
        match self {
            Scalar::Rat(r) => RatFunc {
                num: Poly::constant(r.numer().clone()),
                den: Poly::constant(r.denom().clone()),
            },
            Scalar::Frac(f) => f.clone(),
        }
    }

    pub fn numer_denom(&self) -> (Poly, Poly) {
        let f = self.to_frac();
        (f.num, f.den)
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Frac(f) => f.num.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Scalar::Rat(r) if r.is_one())
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rat(r) => Some(r),
            Scalar::Frac(_) => None,
        }
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, Scalar::Rat(_))
    }

    /// True when the value is a polynomial (denominator is an integer).
    pub fn is_polynomial(&self) -> bool {
        match self {
            Scalar::Rat(_) => true,
            Scalar::Frac(f) => f.den.is_constant(),
        }
    }

    pub fn uses_var(&self, v: Var) -> bool {
        match self {
            Scalar::Rat(_) => false,
            Scalar::Frac(f) => f.num.uses_var(v) || f.den.uses_var(v),
        }
    }

    /// Value equality by cross-multiplication.
    pub fn equals(&self, other: &Scalar) -> bool {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => a == b,
            _ => {
                let (a, b) = (self.to_frac(), other.to_frac());
                if a == b {
                    return true;
                }
                &a.num * &b.den == &b.num * &a.den
            }
        }
    }

    /// Full gcd reduction when `full_gcd`, otherwise the cheap normal form.
    pub fn reduce(&self, full_gcd: bool) -> Scalar {
        match self {
            Scalar::Rat(_) => self.clone(),
            Scalar::Frac(f) => {
                if full_gcd {
                    Scalar::from_frac(f.reduce_full())
                } else {
                    self.clone()
                }
            }
        }
    }

    pub fn reduced(&self) -> Scalar {
        self.reduce(true)
    }

    pub fn inv(&self) -> Result<Scalar> {
        match self {
            Scalar::Rat(r) => {
                if r.is_zero() {
                    Err(Error::DivisionByZero)
                } else {
                    Ok(Scalar::Rat(r.recip()))
                }
            }
            Scalar::Frac(f) => Ok(Scalar::from_frac(RatFunc::new(f.den.clone(), f.num.clone())?)),
        }
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Ok(Scalar::Rat(a / b)),
            _ => Ok(self * &other.inv()?),
        }
    }

    pub fn pow(&self, n: i64) -> Result<Scalar> {
        if n < 0 {
            return self.inv()?.pow(-n);
        }
        let mut r = Scalar::one();
        let mut b = self.clone();
        let mut e = n as u64;
        while e > 0 {
            if e & 1 == 1 {
                r = &r * &b;
            }
            e >>= 1;
            if e > 0 {
                b = &b * &b;
            }
        }
        Ok(r)
    }

    /// Square root of a monomial-type value, used for half-unit exponents.
    pub fn sqrt_monomial(&self) -> Option<Scalar> {
        fn sqrt_int(n: &BigInt) -> Option<BigInt> {
            if n.is_negative() {
                return None;
            }
            let r = n.sqrt();
            if &(&r * &r) == n {
                Some(r)
            } else {
                None
            }
        }
        fn sqrt_term(p: &Poly) -> Option<Poly> {
            if !p.is_monomial() {
                return None;
            }
            let (m, c) = &p.terms()[0];
            let mut h = ONE_MONO;
            for i in 0..NVARS {
                if m[i] % 2 != 0 {
                    return None;
                }
                h[i] = m[i] / 2;
            }
            Some(Poly::monomial(h, sqrt_int(c)?))
        }
        match self {
            Scalar::Rat(r) => {
                let n = sqrt_int(r.numer())?;
                let d = sqrt_int(r.denom())?;
                Some(Scalar::Rat(BigRational::new(n, d)))
            }
            Scalar::Frac(f) => {
                let n = sqrt_term(&f.num)?;
                let d = sqrt_term(&f.den)?;
                Some(Scalar::from_frac(RatFunc::canonical(n, d)))
            }
        }
    }

    /// Replace symbols by values. Odd half-unit powers need a monomial square root.
    pub fn substitute(&self, bindings: &[(Var, Scalar)]) -> Result<Scalar> {
        match self {
            Scalar::Rat(_) => Ok(self.clone()),
            Scalar::Frac(f) => {
                let relevant: Vec<&(Var, Scalar)> =
                    bindings.iter().filter(|(v, _)| f.num.uses_var(*v) || f.den.uses_var(*v)).collect();
                if relevant.is_empty() {
                    return Ok(self.clone());
                }
                let mut ctx = SubstCtx::new(&relevant)?;
                let n = ctx.eval(&f.num)?;
                let d = ctx.eval(&f.den)?;
                if d.is_zero() {
                    return Err(Error::ParameterDegeneracy(format!("denominator {} vanishes", f.den)));
                }
                n.div(&d)
            }
        }
    }

    pub fn render(&self) -> String {
        match self {
            Scalar::Rat(r) => {
                if r.denom().is_one() {
                    r.numer().to_string()
                } else {
                    format!("{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Frac(f) => {
                if f.den.is_one() {
                    return f.num.render();
                }
                let n = if f.num.len() > 1 { format!("({})", f.num.render()) } else { f.num.render() };
                let d = if f.den.len() > 1 || f.den.render().contains('*') {
                    format!("({})", f.den.render())
                } else {
                    f.den.render()
                };
                format!("{}/{}", n, d)
            }
        }
    }

    pub fn render_latex(&self) -> String {
        match self {
            Scalar::Rat(r) => {
                if r.denom().is_one() {
                    r.numer().to_string()
                } else if r.is_negative() {
                    format!("-\\frac{{{}}}{{{}}}", r.numer().abs(), r.denom())
                } else {
                    format!("\\frac{{{}}}{{{}}}", r.numer(), r.denom())
                }
            }
            Scalar::Frac(f) => {
                if f.den.is_one() {
                    f.num.render_latex()
                } else {
                    format!("\\frac{{{}}}{{{}}}", f.num.render_latex(), f.den.render_latex())
                }
            }
        }
    }
}

struct SubstCtx {
    vals: Vec<(Var, Scalar, Option<Scalar>)>,
    cache: std::collections::HashMap<(usize, i32), Scalar>,
}

impl SubstCtx {
    fn new(b: &[&(Var, Scalar)]) -> Result<SubstCtx> {
        let vals = b.iter().map(|(v, s)| (*v, s.clone(), s.sqrt_monomial())).collect();
        Ok(SubstCtx { vals, cache: Default::default() })
    }

    fn power(&mut self, k: usize, e: i32) -> Result<Scalar> {
        if let Some(s) = self.cache.get(&(k, e)) {
            return Ok(s.clone());
        }
        let (v, val, root) = &self.vals[k];
        let r = if e % 2 == 0 {
            val.pow((e / 2) as i64)?
        } else {
            match root {
                Some(r) => r.pow(e as i64)?,
                None => {
                    return Err(Error::ParameterDegeneracy(format!(
                        "half-integral power of {} needs a square root of {}",
                        v,
                        val.render()
                    )))
                }
            }
        };
        self.cache.insert((k, e), r.clone());
        Ok(r)
    }

    fn eval(&mut self, p: &Poly) -> Result<Scalar> {
        let mut acc = Scalar::zero();
        for (m, c) in p.terms() {
            let mut rest = *m;
            let mut term = Scalar::Rat(BigRational::from_integer(c.clone()));
            for k in 0..self.vals.len() {
                let i = self.vals[k].0.index();
                let e = rest[i];
                if e != 0 {
                    rest[i] = 0;
                    let pw = self.power(k, e)?;
                    term = &term * &pw;
                }
            }
            if rest != ONE_MONO {
                term = &term * &Scalar::from_mono(rest);
            }
            acc = &acc + &term;
        }
        Ok(acc)
    }
}

fn add_frac(a: &RatFunc, b: &RatFunc, negate: bool) -> RatFunc {
    let bn = if negate { -&b.num } else { b.num.clone() };
    if a.den == b.den {
        return RatFunc::canonical(&a.num + &bn, a.den.clone());
    }
    if b.den.is_one() {
        return RatFunc::canonical(&a.num + &(&bn * &a.den), a.den.clone());
    }
    if a.den.is_one() {
        return RatFunc::canonical(&(&a.num * &b.den) + &bn, b.den.clone());
    }
    if let (Some(x), Some(y)) = (a.den.as_constant(), b.den.as_constant()) {
        let l = x.lcm(&y);
        let fa = &l / &x;
        let fb = &l / &y;
        return RatFunc::canonical(&a.num.scale(&fa) + &bn.scale(&fb), Poly::constant(l));
    }
    if b.den.len() <= a.den.len() {
        if let Some(k) = a.den.div_exact(&b.den) {
            return RatFunc::canonical(&a.num + &(&bn * &k), a.den.clone());
        }
    }
    if a.den.len() <= b.den.len() {
        if let Some(k) = b.den.div_exact(&a.den) {
            return RatFunc::canonical(&(&a.num * &k) + &bn, b.den.clone());
        }
    }
    RatFunc::canonical(&(&a.num * &b.den) + &(&bn * &a.den), &a.den * &b.den)
}

fn mul_frac(a: &RatFunc, b: &RatFunc) -> RatFunc {
    if a.num.is_zero() || b.num.is_zero() {
        return RatFunc { num: Poly::zero(), den: Poly::one() };
    }
    let (an, bd) = cancel_div(&a.num, &b.den);
    let (bn, ad) = cancel_div(&b.num, &a.den);
    RatFunc::canonical(&an * &bn, &ad * &bd)
}

/// Cancel `d` against `n` when `d` divides `n` exactly.
fn cancel_div(n: &Poly, d: &Poly) -> (Poly, Poly) {
    if d.is_constant() || n.is_constant() || d.len() > n.len() {
        return (n.clone(), d.clone());
    }
    match n.div_exact(d) {
        Some(k) => (k, Poly::one()),
        None => (n.clone(), d.clone()),
    }
}

impl Add<&Scalar> for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            _ => {
                if self.is_zero() {
                    return rhs.clone();
                }
                if rhs.is_zero() {
                    return self.clone();
                }
                Scalar::from_frac(add_frac(&self.to_frac(), &rhs.to_frac(), false))
            }
        }
    }
}

impl Sub<&Scalar> for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a - b),
            _ => {
                if rhs.is_zero() {
                    return self.clone();
                }
                Scalar::from_frac(add_frac(&self.to_frac(), &rhs.to_frac(), true))
            }
        }
    }
}

impl Mul<&Scalar> for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Rat(a), Scalar::Frac(f)) | (Scalar::Frac(f), Scalar::Rat(a)) => {
                if a.is_zero() {
                    return Scalar::zero();
                }
                if a.is_one() {
                    return Scalar::Frac(f.clone());
                }
                Scalar::from_frac(RatFunc::canonical(f.num.scale(a.numer()), f.den.scale(a.denom())))
            }
            (Scalar::Frac(a), Scalar::Frac(b)) => Scalar::from_frac(mul_frac(a, b)),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rat(r) => Scalar::Rat(-r),
            Scalar::Frac(f) => Scalar::Frac(RatFunc { num: -&f.num, den: f.den.clone() }),
        }
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        &self + &rhs
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        &self - &rhs
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Scalar) -> bool {
        self.equals(other)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Scalar {
        Scalar::from_i64(n)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |a, b| &a + &b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn laurent_moves_to_denominator() {
        let q = Scalar::var(Var::Q);
        let qi = q.inv().unwrap();
        let s = &(&q * &q) + &(&qi * &qi);
        assert_eq!(s.render(), "(1+q^4)/q^2");
    }

    #[test]
    fn reduction_cancels_common_factor() {
        let q = Scalar::var(Var::Q);
        let t = Scalar::var(Var::T);
        let one = Scalar::one();
        let num = &(&one - &t) * &(&one - &(&q * &q));
        let den = &(&one - &q) * &(&one - &(&q * &t));
        let r = num.div(&den).unwrap().reduced();
        assert_eq!(r.render(), "(-1-q+t+q*t)/(-1+q*t)");
    }

    #[test]
    fn substitution_degeneracy() {
        let g = Scalar::var(Var::G);
        let x = Scalar::one().div(&(&g - &Scalar::one())).unwrap();
        assert!(matches!(
            x.substitute(&[(Var::G, Scalar::one())]),
            Err(Error::ParameterDegeneracy(_))
        ));
        assert_eq!(x.substitute(&[(Var::G, Scalar::from_i64(3))]).unwrap(), Scalar::from_ratio(1, 2));
    }

    #[test]
    fn half_powers_substitute() {
        let th = Scalar::var_pow(Var::T, 1);
        let q2 = Scalar::var_pow(Var::Q, 4);
        let r = th.substitute(&[(Var::T, q2)]).unwrap();
        assert_eq!(r, Scalar::var(Var::Q));
        assert!(th.substitute(&[(Var::T, Scalar::from_i64(2))]).is_err());
    }
}
