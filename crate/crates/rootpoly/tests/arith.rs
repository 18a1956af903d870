use proptest::prelude::*;
use rootpoly::exact_arith::{gcd, Poly};
use rootpoly::{parse_scalar, Scalar, Var};

fn poly_strategy() -> impl Strategy<Value = Scalar> {
    prop::collection::vec((-4i64..=4, 0i32..=2, 0i32..=2, 0i32..=1), 1..4).prop_map(|terms| {
        terms
            .into_iter()
            .map(|(c, a, b, d)| {
                let m = &Scalar::var_pow(Var::Q, 2 * a) * &Scalar::var_pow(Var::T, 2 * b);
                &(&m * &Scalar::var_pow(Var::G, 2 * d)) * &Scalar::from_i64(c)
            })
            .sum()
    })
}

fn scalar_strategy() -> impl Strategy<Value = Scalar> {
    (poly_strategy(), poly_strategy(), 1i64..=5).prop_map(|(n, d, k)| {
        let n = &n * &Scalar::from_ratio(1, k);
        if d.is_zero() {
            n
        } else {
            n.div(&d).unwrap()
        }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in scalar_strategy(), b in scalar_strategy(), c in scalar_strategy()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        if !b.is_zero() {
            prop_assert_eq!((&a * &b).div(&b).unwrap(), a.clone());
        }
    }

    #[test]
    fn render_parse_roundtrip(a in scalar_strategy()) {
        let text = a.reduce(true).render();
        let back = parse_scalar(&text).unwrap();
        prop_assert_eq!(&back, &a);
        prop_assert_eq!(back.reduce(true).render(), text);
    }

    #[test]
    fn substitution_is_a_homomorphism(a in poly_strategy(), b in poly_strategy(), x in 2i64..6) {
        let bind = [(Var::T, Scalar::from_i64(x)), (Var::G, Scalar::from_ratio(1, x))];
        let sa = a.substitute(&bind).unwrap();
        let sb = b.substitute(&bind).unwrap();
        prop_assert_eq!((&a * &b).substitute(&bind).unwrap(), &sa * &sb);
        prop_assert_eq!((&a + &b).substitute(&bind).unwrap(), &sa + &sb);
    }

    #[test]
    fn gcd_divides_and_keeps_common_factor(a in poly_strategy(), b in poly_strategy(), c in poly_strategy()) {
        let (pa, pb, pc) = (a.numer_denom().0, b.numer_denom().0, c.numer_denom().0);
        prop_assume!(!pa.is_zero() && !pb.is_zero() && !pc.is_zero());
        let x = &pa * &pc;
        let y = &pb * &pc;
        let g = gcd(&x, &y);
        prop_assert!(x.div_exact(&g).is_some());
        prop_assert!(y.div_exact(&g).is_some());
        prop_assert!(g.div_exact(&pc).is_some() || g.div_exact(&pc.scale(&(-1).into())).is_some());
    }
}

#[test]
fn reduced_fraction_has_positive_leading_denominator() {
    let a = parse_scalar("(1+q)*(1-t)/(1-q*t)").unwrap().reduce(true);
    assert_eq!(a.render(), "(-1-q+t+q*t)/(-1+q*t)");
    assert_eq!(parse_scalar("(q^2-1)/(q-1)").unwrap().reduce(true).render(), "1+q");
}

#[test]
fn half_powers_of_q() {
    let r = Scalar::var_pow(Var::Q, 1);
    assert_eq!(&r * &r, Scalar::var(Var::Q));
    assert_eq!(r.render(), "q^(1/2)");
    assert_eq!(parse_scalar("q^(1/2)").unwrap(), r);
}

#[test]
fn gcd_is_one_for_coprime() {
    let a = &Poly::var(Var::Q) + &Poly::one();
    let b = &Poly::var(Var::T) + &Poly::one();
    assert!(gcd(&a, &b).is_one());
}
