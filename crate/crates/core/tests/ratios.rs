use desargues::ratio::RatioContext;
use desargues::suites::{
    denominator_product_counterexample, equality_criterion_counterexample, pappian_counterexample, LineOps,
};
use desargues::{Chart, Error, Model, Point, Scalar};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const MODELS: [Model; 3] = [Model::Gf(7), Model::Rational, Model::Quaternion];

fn ctx(model: Model) -> (Chart, RatioContext) {
    let chart = Chart::standard(model);
    (chart.clone(), RatioContext::new(chart))
}

#[test]
fn ratios_match_the_scalar_formulas() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for model in MODELS {
        let (chart, r) = ctx(model);
        for _ in 0..200 {
            let [a, b, c] = std::array::from_fn(|_| model.random_scalar(&mut rng));
            let [pa, pb, pc] = [&a, &b, &c].map(|s| chart.point(s).unwrap());
            let coord = |p: Point| chart.coordinate(&p).unwrap();
            if b.is_zero() {
                assert_eq!(r.ratio2(&pa, &pb), Err(Error::ZeroDenominator));
            } else {
                assert_eq!(coord(r.ratio2(&pa, &pb).unwrap()), b.inv().unwrap().mul(&a).unwrap());
            }
            if b == c {
                assert_eq!(r.ratio3(&pa, &pb, &pc), Err(Error::CoincidentBC));
            } else {
                let want = b.sub(&c).unwrap().inv().unwrap().mul(&a.sub(&c).unwrap()).unwrap();
                assert_eq!(coord(r.ratio3(&pa, &pb, &pc).unwrap()), want);
            }
        }
    }
}

#[test]
fn solving_inverts_the_ratio() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for model in MODELS {
        let (chart, r) = ctx(model);
        for _ in 0..100 {
            let a = chart.random_point(&mut rng);
            let b = chart.random_nonzero_point(&mut rng);
            let c = chart.random_point(&mut rng);
            assert_eq!(r.ratio2_solve(&r.ratio2(&a, &b).unwrap(), &b).unwrap(), a);
            if b != c {
                assert_eq!(r.ratio3_solve(&r.ratio3(&a, &b, &c).unwrap(), &b, &c).unwrap(), a);
            }
        }
    }
    let g = Model::Gf(7);
    let (chart, r) = ctx(g);
    let at = |n: i64| chart.point(&g.int(n)).unwrap();
    assert_eq!(r.ratio2_solve(&at(2), &at(5)).unwrap(), at(3));
    assert_eq!(r.ratio2_solve(chart.i(), &at(5)).unwrap(), at(5));
    assert_eq!(r.ratio2_solve(chart.o(), &at(5)).unwrap(), *chart.o());
}

#[test]
fn ratio_maps_are_permutations() {
    let m = Model::Gf(5);
    let (chart, r) = ctx(m);
    let points: Vec<Point> = (0..5).map(|n| chart.point(&m.int(n)).unwrap()).collect();
    for b in &points[1..] {
        let map = r.ratio_map2(b).unwrap();
        let mut images: Vec<Point> = points.iter().map(|x| map.apply(x).unwrap()).collect();
        images.sort_by_key(|p| p.to_string());
        let mut sorted = points.clone();
        sorted.sort_by_key(|p| p.to_string());
        assert_eq!(images, sorted);
    }
    let map = r.ratio_map3(&points[2], &points[4]).unwrap();
    assert_eq!(map.apply(&points[2]).unwrap(), *chart.i());
    assert_eq!(map.apply(&points[4]).unwrap(), *chart.o());
}

#[test]
fn denominator_product_identity() {
    // r(A : BC) = C⁻¹ r(A : B); the variant with r(A : C) fails already in gf(7).
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for model in MODELS {
        let k = LineOps::new(ctx(model).1);
        let chart = k.ctx.chart.clone();
        for _ in 0..200 {
            let a = chart.random_point(&mut rng);
            let b = chart.random_nonzero_point(&mut rng);
            let c = chart.random_nonzero_point(&mut rng);
            let bc = k.mul(&b, &c).unwrap();
            let want = k.mul(&k.inv(&c).unwrap(), &k.ratio2(&a, &b).unwrap()).unwrap();
            assert_eq!(k.ratio2(&a, &bc).unwrap(), want);
        }
    }
    let cx = denominator_product_counterexample(7).unwrap().expect("printed form fails");
    assert_ne!(cx.left, cx.right);
}

#[test]
fn equal_ratios_mean_a_equals_plus_or_minus_b() {
    let cx = equality_criterion_counterexample(Model::Gf(7)).unwrap().expect("A = -B gives equal ratios");
    assert_eq!(cx.left, cx.right);
    let m = Model::Rational;
    let k = LineOps::new(ctx(m).1);
    let at = |n: i64| k.ctx.chart.point(&m.int(n)).unwrap();
    assert_eq!(k.ratio2(&at(2), &at(-2)).unwrap(), k.ratio2(&at(-2), &at(2)).unwrap());
}

#[test]
fn pappian_form_fails_for_quaternions() {
    let cx = pappian_counterexample().unwrap().expect("recorded counterexample");
    assert_eq!(cx.model, "quaternion");
    assert_ne!(cx.left, cx.right);
    let inputs: Vec<&str> = cx.inputs.iter().map(|(_, v)| v.as_str()).collect();
    assert_eq!(inputs, ["1", "i", "j"]);
}

#[test]
fn scalars_survive_the_chart() {
    let q: Scalar = Model::Quaternion.quaternion([1, -2, 3, 4]).unwrap();
    let (chart, _) = ctx(Model::Quaternion);
    assert_eq!(chart.coordinate(&chart.point(&q).unwrap()).unwrap(), q);
}
