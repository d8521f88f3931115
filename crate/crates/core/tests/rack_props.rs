mod common;

use collapse_core::criteria::witness_element;
use collapse_core::permcore::{load_fixture, power_class, ClassTable, DEFAULT_ORDER_CAP};
use collapse_core::rack::{are_isomorphic, validate_rack, Rack};
use proptest::prelude::*;

fn fixture_rack() -> impl Strategy<Value = Rack> {
    let racks: Vec<Rack> = common::fixture_class_racks(30)
        .into_iter()
        .map(|(_, r)| r)
        .collect();
    prop::sample::select(racks)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn subrack_generation_is_idempotent(rack in fixture_rack(), a in 0usize..64, b in 0usize..64) {
        let n = rack.size();
        let seed = [a % n, b % n];
        let z = rack.subrack_generated(&seed).unwrap();
        let again = rack.subrack_generated(z.indices()).unwrap();
        prop_assert_eq!(z.indices(), again.indices());
        prop_assert!(rack.subrack(z.indices().to_vec()).is_ok());
        prop_assert!(z.to_rack().is_valid());
    }

    #[test]
    fn relabeling_gives_isomorphic_racks(rack in fixture_rack(), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut perm: Vec<usize> = (0..rack.size()).collect();
        perm.shuffle(&mut rng);
        let other = rack.relabel(&perm);
        prop_assert!(other.is_valid());
        let f = are_isomorphic(&rack, &other).unwrap();
        for x in 0..rack.size() {
            for y in 0..rack.size() {
                prop_assert_eq!(f[rack.op(x, y)], other.op(f[x], f[y]));
            }
        }
    }
}

#[test]
fn power_classes_compose() {
    for name in ["S5", "A5", "A6", "D7"] {
        let g = load_fixture(name, DEFAULT_ORDER_CAP).unwrap();
        let t = ClassTable::new(&g);
        for i in 0..t.len() {
            for a in 1..6u64 {
                for b in 1..6u64 {
                    let via = t.power_class(&g, t.power_class(&g, i, a), b);
                    assert_eq!(via, t.power_class(&g, i, a * b), "{name} class {i}");
                }
            }
            let direct = power_class(&g, t.get(i), 2);
            assert_eq!(direct.members, t.get(t.power_class(&g, i, 2)).members);
        }
    }
}

#[test]
fn witness_identity_on_class_racks() {
    for (name, rack) in common::fixture_class_racks(30) {
        let labels = rack.labels().unwrap().to_vec();
        for r in 0..rack.size() {
            for s in 0..rack.size() {
                let lhs = &labels[rack.op(r, rack.op(s, rack.op(r, s)))];
                assert_eq!(*lhs, witness_element(&labels[r], &labels[s]), "{name}");
            }
        }
    }
}

#[test]
fn double_racks_split_in_two() {
    for base in [
        Rack::dihedral(3).unwrap(),
        Rack::dihedral(5).unwrap(),
        Rack::four_cycles(),
    ] {
        let d = base.double();
        assert!(validate_rack(&d.to_table()));
        let comps = d.inner_components();
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0].len(), base.size());
    }
}
