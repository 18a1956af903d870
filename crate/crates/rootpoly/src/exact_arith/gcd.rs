//! Multivariate polynomial gcd over the integers.
//!
//! A heuristic evaluation/interpolation gcd is tried first. The fallback is
//! recursive: content/primitive-part split in a main variable, then a
//! subresultant remainder sequence with coefficients in the remaining variables.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::poly::{Mono, Poly, Var, NVARS, ONE_MONO};

fn normalize_sign(p: Poly) -> Poly {
    if p.leading_coeff().is_negative() {
        -p
    } else {
        p
    }
}

fn strip_monomial(p: &Poly) -> (Poly, Mono) {
    let m = p.min_exps();
    if m == ONE_MONO {
        (p.clone(), m)
    } else {
        let mut neg = ONE_MONO;
        for i in 0..NVARS {
            neg[i] = -m[i];
        }
        (p.shift(&neg), m)
    }
}

/// Greatest common divisor with positive leading coefficient.
///
/// Inputs must have nonnegative exponents.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return normalize_sign(b.clone());
    }
    if b.is_zero() {
        return normalize_sign(a.clone());
    }
    if a.is_constant() || b.is_constant() {
        return Poly::constant(a.content().gcd(&b.content()));
    }
    let (a1, ma) = strip_monomial(a);
    let (b1, mb) = strip_monomial(b);
    let mut m = ONE_MONO;
    for i in 0..NVARS {
        m[i] = ma[i].min(mb[i]);
    }
    let g = gcd_stripped(&a1, &b1);
    normalize_sign(g.shift(&m))
}

fn gcd_stripped(a: &Poly, b: &Poly) -> Poly {
    if a.is_constant() || b.is_constant() {
        return Poly::constant(a.content().gcd(&b.content()));
    }
    if a == b || a == &(-b) {
        return normalize_sign(a.clone());
    }
    if a.len() >= b.len() {
        if a.div_exact(b).is_some() {
            return normalize_sign(b.clone());
        }
    } else if b.div_exact(a).is_some() {
        return normalize_sign(a.clone());
    }
    if let Some(g) = heuristic_gcd(a, b) {
        return normalize_sign(g);
    }
    let v = match Var::ALL.iter().copied().find(|&v| a.uses_var(v) || b.uses_var(v)) {
        Some(v) => v,
        None => return Poly::constant(a.content().gcd(&b.content())),
    };
    let (ua, ub) = (a.uses_var(v), b.uses_var(v));
    if !ua {
        return gcd(a, &content_in(b, v));
    }
    if !ub {
        return gcd(&content_in(a, v), b);
    }
    let ca = content_in(a, v);
    let cb = content_in(b, v);
    let pa = a.div_exact(&ca).expect("content divides");
    let pb = b.div_exact(&cb).expect("content divides");
    let c = gcd(&ca, &cb);
    let g = prs_gcd(&pa, &pb, v);
    &c * &g
}

/// Gcd of the coefficients of `p` viewed as a polynomial in `v`.
pub fn content_in(p: &Poly, v: Var) -> Poly {
    let coeffs = p.to_univariate(v);
    let mut nz: Vec<&Poly> = coeffs.iter().filter(|c| !c.is_zero()).collect();
    nz.sort_by_key(|c| c.len());
    let mut g = Poly::zero();
    for c in nz {
        g = gcd(&g, c);
        if g.is_constant() {
            let ic = g.as_constant().unwrap().abs();
            if ic.is_one() {
                return Poly::one();
            }
            let mut k = ic;
            for c2 in coeffs.iter() {
                k = k.gcd(&c2.content());
                if k.is_one() {
                    break;
                }
            }
            return Poly::constant(k);
        }
    }
    normalize_sign(g)
}

fn height(p: &Poly) -> BigInt {
    p.terms().iter().map(|(_, c)| c.abs()).max().unwrap_or_else(BigInt::zero)
}

/// `p` with `v` replaced by the integer `x`.
fn evaluate(p: &Poly, v: Var, x: &BigInt) -> Poly {
    let i = v.index();
    let mut powers: HashMap<i32, BigInt> = HashMap::new();
    let mut terms = Vec::with_capacity(p.len());
    for (m, c) in p.terms() {
        let e = m[i];
        let pw = powers.entry(e).or_insert_with(|| num_traits::pow(x.clone(), e as usize));
        let mut m2 = *m;
        m2[i] = 0;
        terms.push((m2, c * &*pw));
    }
    Poly::from_terms(terms)
}

fn symmetric_mod(c: &BigInt, x: &BigInt) -> BigInt {
    let r = c.mod_floor(x);
    if &r * 2 > *x {
        r - x
    } else {
        r
    }
}

/// Recover a polynomial in `v` from its image at `v = x` by balanced `x`-adic digits.
fn interpolate(h: &Poly, v: Var, x: &BigInt) -> Poly {
    let i = v.index();
    let mut h = h.clone();
    let mut out = Vec::new();
    let mut e = 0;
    while !h.is_zero() {
        let digit: Vec<(Mono, BigInt)> = h.terms().iter().map(|(m, c)| (*m, symmetric_mod(c, x))).collect();
        let g = Poly::from_terms(digit);
        for (m, c) in g.terms() {
            let mut m2 = *m;
            m2[i] = e;
            out.push((m2, c.clone()));
        }
        h = (&h - &g).div_int(x);
        e += 1;
    }
    Poly::from_terms(out)
}

/// Gcd by evaluation at a large integer; `None` when no candidate passes trial division.
fn heuristic_gcd(a: &Poly, b: &Poly) -> Option<Poly> {
    if a.is_constant() || b.is_constant() {
        return Some(Poly::constant(a.content().gcd(&b.content())));
    }
    let (ca, cb) = (a.content(), b.content());
    let gc = ca.gcd(&cb);
    let a = a.div_int(&ca);
    let b = b.div_int(&cb);
    let v = Var::ALL.iter().copied().find(|&v| a.uses_var(v) || b.uses_var(v))?;
    let mut x = height(&a).min(height(&b)) * 2 + 29;
    for _ in 0..6 {
        let ae = evaluate(&a, v, &x);
        let be = evaluate(&b, v, &x);
        if !ae.is_zero() && !be.is_zero() {
            let h = heuristic_gcd(&ae, &be)?;
            let g = interpolate(&h, v, &x);
            if !g.is_zero() {
                let g = normalize_sign(g.div_int(&g.content()));
                if a.div_exact(&g).is_some() && b.div_exact(&g).is_some() {
                    return Some(g.scale(&gc));
                }
            }
        }
        x = &x * 73794 / 27011;
    }
    None
}

type Uni = Vec<Poly>;

fn trim(u: &mut Uni) {
    while u.len() > 1 && u.last().is_some_and(|c| c.is_zero()) {
        u.pop();
    }
    if u.len() == 1 && u[0].is_zero() {
        u.clear();
    }
}

fn deg(u: &Uni) -> isize {
    u.len() as isize - 1
}

fn prem(a: &Uni, b: &Uni) -> Uni {
    let db = deg(b);
    let lb = b.last().unwrap().clone();
    let mut r = a.clone();
    let mut e = deg(a) - db + 1;
    while !r.is_empty() && deg(&r) >= db {
        let lr = r.last().unwrap().clone();
        let s = (deg(&r) - db) as usize;
        for c in r.iter_mut() {
            *c = &*c * &lb;
        }
        for (i, bc) in b.iter().enumerate() {
            let sub = bc * &lr;
            r[i + s] = &r[i + s] - &sub;
        }
        trim(&mut r);
        e -= 1;
    }
    if e > 0 && !r.is_empty() {
        let f = lb.pow(e as u32);
        for c in r.iter_mut() {
            *c = &*c * &f;
        }
    }
    r
}

fn div_all(u: &Uni, d: &Poly) -> Uni {
    if d.is_one() {
        return u.clone();
    }
    u.iter().map(|c| c.div_exact(d).expect("subresultant division is exact")).collect()
}

fn prs_gcd(a: &Poly, b: &Poly, v: Var) -> Poly {
    let mut ua = a.to_univariate(v);
    let mut ub = b.to_univariate(v);
    trim(&mut ua);
    trim(&mut ub);
    if deg(&ua) < deg(&ub) {
        std::mem::swap(&mut ua, &mut ub);
    }
    let mut g = Poly::one();
    let mut h = Poly::one();
    loop {
        let d = (deg(&ua) - deg(&ub)) as u32;
        let r = prem(&ua, &ub);
        if r.is_empty() {
            break;
        }
        if deg(&r) == 0 {
            return Poly::one();
        }
        ua = ub;
        let divisor = &g * &h.pow(d);
        ub = div_all(&r, &divisor);
        g = ua.last().unwrap().clone();
        h = match d {
            0 => h,
            1 => g.clone(),
            _ => g.pow(d).div_exact(&h.pow(d - 1)).expect("exact"),
        };
    }
    let p = Poly::from_univariate(&ub, v);
    let c = content_in(&p, v);
    normalize_sign(p.div_exact(&c).expect("content divides"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: Var) -> Poly {
        Poly::var(x)
    }

    #[test]
    fn gcd_of_products() {
        let q = v(Var::Q);
        let t = v(Var::T);
        let one = Poly::one();
        let f1 = &one - &(&q * &t);
        let f2 = &(&q + &t) + &Poly::from_i64(3);
        let f3 = &(&q * &q) - &t;
        let a = &(&f1 * &f2) * &Poly::from_i64(6);
        let b = &(&f1 * &f3) * &Poly::from_i64(4);
        let g = gcd(&a, &b);
        assert_eq!(g, &f1.clone().neg_if_needed() * &Poly::from_i64(2));
    }

    trait NegIf {
        fn neg_if_needed(self) -> Poly;
    }
    impl NegIf for Poly {
        fn neg_if_needed(self) -> Poly {
            normalize_sign(self)
        }
    }

    #[test]
    fn gcd_trivariate() {
        let g = v(Var::G);
        let gs = v(Var::Gs);
        let gl = v(Var::Gl);
        let one = Poly::one();
        let f = &(&g + &gs) + &one;
        let a = &(&f * &f) * &(&gl - &g);
        let b = &f * &(&gl + &gs);
        assert_eq!(gcd(&a, &b), normalize_sign(f));
    }
}
