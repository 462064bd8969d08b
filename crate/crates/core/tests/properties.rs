use desargues::dsl::{self, random_script};
use desargues::ratio::RatioContext;
use desargues::transforms::{check_invariance_3, check_preservation, LineTransform, LineTransformKind, PlaneMap};
use desargues::{geo_add, geo_mul, Aux, Chart, ConstructionTrace, Model, Point, Scalar};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn quaternion() -> impl Strategy<Value = Scalar> + Clone {
    prop::array::uniform4(-6i64..=6).prop_map(|c| Model::Quaternion.quaternion(c).unwrap())
}

fn rational() -> impl Strategy<Value = Scalar> + Clone {
    (-20i64..=20, 1i64..=9).prop_map(|(n, d)| {
        let m = Model::Rational;
        m.int(n).mul(&m.int(d).inv().unwrap()).unwrap()
    })
}

fn point(s: impl Strategy<Value = Scalar> + Clone) -> impl Strategy<Value = Point> {
    (s.clone(), s).prop_map(|(x, y)| Point::new(x, y).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn quaternion_constructions_follow_the_chart(
        o in point(quaternion()), i in point(quaternion()),
        x in quaternion(), y in quaternion(), seed in any::<u64>(),
    ) {
        let chart = Chart::new(o, i);
        prop_assume!(chart.is_ok());
        let chart = chart.unwrap();
        let aux = Aux::At(chart.random_aux(&mut ChaCha8Rng::seed_from_u64(seed)));
        let (a, b) = (chart.point(&x).unwrap(), chart.point(&y).unwrap());
        let (sum, _) = geo_add(&chart, &a, &b, &aux).unwrap();
        let (prod, trace) = geo_mul(&chart, &a, &b, &aux).unwrap();
        prop_assert_eq!(chart.coordinate(&sum).unwrap(), x.add(&y).unwrap());
        prop_assert_eq!(chart.coordinate(&prod).unwrap(), x.mul(&y).unwrap());
        let back = ConstructionTrace::from_json(&trace.to_json()).unwrap();
        prop_assert_eq!(back.replay().unwrap(), prod);
    }

    #[test]
    fn mobius_maps_fix_three_point_ratios(
        xs in prop::collection::vec(rational(), 5),
    ) {
        let m = Model::Rational;
        let chart = Chart::standard(m);
        let p: Vec<Point> = xs.iter().map(|x| chart.point(x).unwrap()).collect();
        prop_assume!(p[3] != p[4] && p[1] != p[2]);
        let ctx = RatioContext::new(chart);
        let t = LineTransform::new(LineTransformKind::Mobius3(p[3].clone(), p[4].clone()), ctx).unwrap();
        if let Ok(held) = check_invariance_3(&t, &p[0], &p[1], &p[2]) {
            prop_assert!(held);
        }
    }

    #[test]
    fn translations_carry_ratios(
        v in point(quaternion()), xs in prop::collection::vec(quaternion(), 3),
    ) {
        let chart = Chart::standard(Model::Quaternion);
        let pts: Vec<Point> = xs.iter().map(|x| chart.point(x).unwrap()).collect();
        prop_assume!(pts[1] != pts[2] && !chart.contains(&v.add(chart.o()).unwrap()).unwrap());
        let held = check_preservation(&PlaneMap::translation(v), &chart, &pts, &Aux::Auto).unwrap();
        prop_assert!(held);
    }

    #[test]
    fn generated_scripts_reprint_identically(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for model in [Model::Gf(3), Model::Rational, Model::Quaternion] {
            let s = random_script(model, &mut rng);
            let text = dsl::print(&s);
            prop_assert_eq!(&dsl::parse(&text).unwrap(), &s);
        }
    }
}
