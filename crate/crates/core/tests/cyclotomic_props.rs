use collapse_core::braiding::{parse_root_of_unity, Cyclotomic, RootOfUnity};
use proptest::prelude::*;

const CONDUCTORS: [u64; 8] = [1, 2, 3, 4, 5, 6, 8, 12];

fn element(m: u64) -> impl Strategy<Value = Cyclotomic> {
    prop::collection::vec((-6i64..=6, 1i64..=4), m as usize).prop_map(move |pairs| {
        pairs
            .iter()
            .enumerate()
            .fold(Cyclotomic::zero(m), |acc, (k, &(a, b))| {
                let term = Cyclotomic::root_of_unity(m, k as u64).mul(
                    &Cyclotomic::from_fraction_pairs(1, &[(a, b)])
                        .unwrap()
                        .lift(m),
                );
                acc.add(&term)
            })
    })
}

fn triple() -> impl Strategy<Value = (Cyclotomic, Cyclotomic, Cyclotomic)> {
    prop::sample::select(CONDUCTORS.to_vec())
        .prop_flat_map(|m| (element(m), element(m), element(m)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms((a, b, c) in triple()) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn inverses((a, _b, _c) in triple()) {
        if a.is_zero() {
            prop_assert!(a.inv().is_err());
        } else {
            let inv = a.inv().unwrap();
            prop_assert!(a.mul(&inv).is_one());
        }
    }

    #[test]
    fn lifting_is_a_homomorphism((a, b, _c) in triple(), k in 1u64..=3) {
        let m = a.conductor() * k;
        prop_assert_eq!(a.mul(&b).lift(m), a.lift(m).mul(&b.lift(m)));
        prop_assert_eq!(a.lift(m), a.clone());
    }

    #[test]
    fn roots_of_unity(m in 1u64..=24, k in 0u64..48, j in 0u64..48) {
        let r = RootOfUnity::new(m, k);
        let s = RootOfUnity::new(m, j);
        prop_assert_eq!(r.mul(&s).to_cyclotomic(m), r.to_cyclotomic(m).mul(&s.to_cyclotomic(m)));
        prop_assert!(r.mul(&r.inv()).is_one());
        prop_assert_eq!(r.to_cyclotomic(m).pow(m), Cyclotomic::one(m));
        prop_assert_eq!(parse_root_of_unity(&r.to_string()).unwrap(), r);
        prop_assert_eq!(r.to_cyclotomic(m).as_root_of_unity(), Some(r));
    }
}
