#![allow(dead_code)]

use collapse_core::braiding::{CharacterCocycles, Cocycle, Cyclotomic, RootOfUnity};
use collapse_core::permcore::{load_fixture, ClassTable, DEFAULT_ORDER_CAP, FIXTURES};
use collapse_core::rack::Rack;
use rand::Rng;

/// A root of unity of order 1, 2, 3, 4 or 6.
pub fn random_root(rng: &mut impl Rng) -> RootOfUnity {
    let m = [1u64, 2, 3, 4, 6][rng.gen_range(0..5)];
    RootOfUnity::new(m, rng.gen_range(0..m))
}

/// `γ_{x▷y} q_{x,y} γ_y⁻¹` for a random gauge `γ`; without a base cocycle `q`
/// is a random constant `λ`.
pub fn random_cocycle(rack: &Rack, base: Option<&Cocycle>, rng: &mut impl Rng) -> Cocycle {
    let n = rack.size();
    // A constant factor changes the algebra, so it only enters without a base.
    let lambda = if base.is_some() {
        RootOfUnity::one()
    } else {
        random_root(rng)
    };
    let gauge: Vec<RootOfUnity> = (0..n).map(|_| random_root(rng)).collect();
    let m = 12 * base.map_or(1, |q| q.conductor());
    let values = (0..n)
        .map(|x| {
            (0..n)
                .map(|y| {
                    let r = gauge[rack.op(x, y)].mul(&lambda).mul(&gauge[y].inv());
                    let v = r.to_cyclotomic(m);
                    match base {
                        Some(q) => v.mul(&q.value(x, y).lift(m)),
                        None => v,
                    }
                })
                .collect()
        })
        .collect();
    Cocycle::new(rack.clone(), values).expect("gauge transforms keep the cocycle identity")
}

/// Every conjugation rack of a fixture class with at most `max` points, with a name.
pub fn fixture_class_racks(max: usize) -> Vec<(String, Rack)> {
    let mut out = Vec::new();
    for f in FIXTURES.iter().filter(|f| f.order <= 720) {
        let g = load_fixture(f.name, DEFAULT_ORDER_CAP).unwrap();
        for cls in ClassTable::new(&g).classes() {
            if cls.size() <= max {
                out.push((
                    format!("{}:{}", f.name, cls.name),
                    Rack::conjugation(cls, max).unwrap(),
                ));
            }
        }
    }
    out
}

/// Character cocycles for every class of a fixture with at most `max` points.
pub fn fixture_character_cocycles(name: &str, max: usize) -> Vec<(String, Cocycle)> {
    let g = load_fixture(name, DEFAULT_ORDER_CAP).unwrap();
    let t = ClassTable::new(&g);
    let mut out = Vec::new();
    for cls in t.classes().iter().filter(|c| c.size() <= max) {
        let cc = CharacterCocycles::new(&g, cls, &cls.representative).unwrap();
        for k in 0..cc.len() {
            out.push((
                format!("{name}:{}:{k}", cls.name),
                cc.cocycle(k, max).unwrap(),
            ));
        }
    }
    out
}

/// Small racks used for random braided spaces.
pub fn small_racks() -> Vec<Rack> {
    vec![
        Rack::abelian(1),
        Rack::abelian(2),
        Rack::abelian(3),
        Rack::abelian(4),
        Rack::dihedral(3).unwrap(),
        Rack::permutation_rack(&collapse_core::Permutation::parse("(1,2)", 2).unwrap()),
        Rack::permutation_rack(&collapse_core::Permutation::parse("(1,2,3)", 3).unwrap()),
        Rack::permutation_rack(&collapse_core::Permutation::parse("(1,2)(3,4)", 4).unwrap()),
    ]
}

pub fn minus_one() -> Cyclotomic {
    Cyclotomic::from_integer(2, -1)
}
