//! Algebraic laws of exact cyclotomic arithmetic on random elements.

use chartab::cyclo::Cyclotomic;
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

const CONDUCTORS: &[u32] = &[1, 2, 3, 4, 5, 7, 8, 9, 12, 15, 16, 20, 21, 24, 36, 40];
/// Every conductor above divides this.
const LCM: i64 = 5040;

fn term() -> impl Strategy<Value = Cyclotomic> {
    (prop::sample::select(CONDUCTORS), 0i64..48, -6i64..=6, 1i64..=3).prop_map(|(n, k, num, den)| {
        let c = BigRational::new(BigInt::from(num), BigInt::from(den));
        Cyclotomic::root_of_unity(n, k).unwrap().scale(&c)
    })
}

fn cyclo() -> impl Strategy<Value = Cyclotomic> {
    prop::collection::vec(term(), 0..4).prop_map(|ts| ts.into_iter().sum())
}

fn nonzero() -> impl Strategy<Value = Cyclotomic> {
    prop::collection::vec(term(), 1..4).prop_map(|ts| ts.into_iter().sum::<Cyclotomic>()).prop_filter("nonzero", |c| !c.is_zero())
}

fn unit() -> impl Strategy<Value = i64> {
    let units: Vec<i64> = (1..LCM).filter(|j| num_integer::gcd(*j, LCM) == 1).collect();
    prop::sample::select(units)
}

fn close(a: (f64, f64), b: (f64, f64)) -> bool {
    let scale = 1.0 + a.0.abs().max(a.1.abs());
    (a.0 - b.0).abs() <= 1e-9 * scale && (a.1 - b.1).abs() <= 1e-9 * scale
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn ring_axioms(a in cyclo(), b in cyclo(), c in cyclo()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &Cyclotomic::zero(), a.clone());
        prop_assert_eq!(&a * &Cyclotomic::one(), a.clone());
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a + &(-&b), &a - &b);
    }

    #[test]
    fn conjugation(a in cyclo(), b in cyclo()) {
        prop_assert_eq!(a.conjugate().conjugate(), a.clone());
        prop_assert_eq!((&a * &b).conjugate(), &a.conjugate() * &b.conjugate());
        prop_assert_eq!((&a + &b).conjugate(), &a.conjugate() + &b.conjugate());
        prop_assert!(a.abs_squared().is_real());
        prop_assert_eq!(a.galois_apply(-1).unwrap(), a.conjugate());
    }

    #[test]
    fn galois_composition(a in cyclo(), b in cyclo(), j in unit(), k in unit()) {
        let jk = (j * k) % LCM;
        prop_assert_eq!(a.galois_apply(k).unwrap().galois_apply(j).unwrap(), a.galois_apply(jk).unwrap());
        prop_assert_eq!((&a * &b).galois_apply(j).unwrap(), &a.galois_apply(j).unwrap() * &b.galois_apply(j).unwrap());
        prop_assert_eq!((&a + &b).galois_apply(j).unwrap(), &a.galois_apply(j).unwrap() + &b.galois_apply(j).unwrap());
    }

    #[test]
    fn floating_cross_check(a in cyclo(), b in cyclo()) {
        let (x, y) = a.approx();
        let m = a.abs_squared().approx();
        prop_assert!(close(m, (x * x + y * y, 0.0)), "{} -> {:?} vs {}", a, m, x * x + y * y);
        let (u, v) = b.approx();
        prop_assert!(close((&a * &b).approx(), (x * u - y * v, x * v + y * u)));
        prop_assert!(close((&a + &b).approx(), (x + u, y + v)));
    }

    #[test]
    fn division_and_parsing(a in cyclo(), b in nonzero()) {
        let q = a.div(&b).unwrap();
        prop_assert_eq!(&q * &b, a.clone());
        let text = a.to_string();
        prop_assert_eq!(text.parse::<Cyclotomic>().unwrap(), a.clone());
        prop_assert!(a.is_zero() || a.abs_squared().norm() > BigRational::from_integer(0.into()));
    }
}
