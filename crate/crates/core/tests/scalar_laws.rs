use desargues::{Model, Scalar};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const MODELS: [Model; 4] = [Model::Gf(2), Model::Gf(7), Model::Rational, Model::Quaternion];

fn triples(model: Model, seed: u64) -> impl Iterator<Item = [Scalar; 3]> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..1000).map(move |_| std::array::from_fn(|_| model.random_scalar(&mut rng)))
}

#[test]
fn skew_field_laws_on_random_triples() {
    for model in MODELS {
        let (zero, one) = (model.zero(), model.one());
        for [a, b, c] in triples(model, 1) {
            assert_eq!(a.add(&b).unwrap().add(&c).unwrap(), a.add(&b.add(&c).unwrap()).unwrap());
            assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
            assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
            let left = a.mul(&b.add(&c).unwrap()).unwrap();
            assert_eq!(left, a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap());
            let right = b.add(&c).unwrap().mul(&a).unwrap();
            assert_eq!(right, b.mul(&a).unwrap().add(&c.mul(&a).unwrap()).unwrap());
            assert_eq!(a.add(&zero).unwrap(), a);
            assert_eq!(a.mul(&one).unwrap(), a);
            assert_eq!(one.mul(&a).unwrap(), a);
            assert!(a.add(&a.neg()).unwrap().is_zero());
            assert_eq!(a.sub(&b).unwrap(), a.add(&b.neg()).unwrap());
            if !a.is_zero() {
                let ai = a.inv().unwrap();
                assert!(a.mul(&ai).unwrap().is_one());
                assert!(ai.mul(&a).unwrap().is_one());
            }
        }
    }
}

fn residue(s: &Scalar) -> u32 {
    match s {
        Scalar::Gf(r) => r.value(),
        other => panic!("not a residue: {other}"),
    }
}

#[test]
fn gf_arithmetic_matches_integers_mod_p() {
    for p in [2u32, 3, 5, 7, 11, 13] {
        let m = Model::Gf(p);
        for x in 0..p {
            for y in 0..p {
                let (a, b) = (m.int(x.into()), m.int(y.into()));
                assert_eq!(residue(&a.add(&b).unwrap()), (x + y) % p);
                assert_eq!(residue(&a.mul(&b).unwrap()), (x * y) % p);
            }
        }
    }
}

#[test]
fn quaternion_units() {
    let q = Model::Quaternion;
    let [i, j, k] = [[0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]].map(|c| q.quaternion(c).unwrap());
    let minus_one = q.int(-1);
    for u in [&i, &j, &k] {
        assert_eq!(u.mul(u).unwrap(), minus_one);
    }
    assert_eq!(i.mul(&j).unwrap(), k);
    assert_eq!(j.mul(&i).unwrap(), k.neg());
    assert_eq!(j.mul(&k).unwrap(), i);
    assert_eq!(k.mul(&i).unwrap(), j);
    assert!(!q.is_commutative());
}

#[test]
fn mixed_models_and_zero_division_are_errors() {
    assert!(Model::Gf(5).one().add(&Model::Rational.one()).is_err());
    assert!(Model::Gf(5).one().mul(&Model::Gf(7).one()).is_err());
    for m in MODELS {
        assert!(m.zero().inv().is_err());
    }
    assert!(Model::gf(4).is_err());
    assert!(Model::gf(1).is_err());
}

#[test]
fn parsed_literals() {
    let q = Model::Quaternion;
    assert_eq!(q.parse_scalar("1 + i").unwrap(), q.quaternion([1, 1, 0, 0]).unwrap());
    assert_eq!(q.parse_scalar("-k").unwrap(), q.quaternion([0, 0, 0, -1]).unwrap());
    let r = Model::Rational;
    assert_eq!(r.parse_scalar("-6/4").unwrap(), r.int(-3).mul(&r.int(2).inv().unwrap()).unwrap());
    assert_eq!(Model::Gf(7).parse_scalar("-3").unwrap(), Model::Gf(7).int(4));
    assert!(Model::Gf(7).parse_scalar("1/2").is_err());
    assert!(r.parse_scalar("i").is_err());
}
