use desargues::{geo_add, geo_inv, geo_mul, geo_neg, Aux, Chart, Error, Model, Point, Scalar};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const MODELS: [Model; 3] = [Model::Gf(7), Model::Rational, Model::Quaternion];

fn random_chart(model: Model, rng: &mut ChaCha8Rng) -> Chart {
    loop {
        let (o, i) = (Point::random(model, rng), Point::random(model, rng));
        if let Ok(c) = Chart::new(o, i) {
            return c;
        }
    }
}

fn coord(chart: &Chart, p: &Point) -> Scalar {
    chart.coordinate(p).unwrap()
}

#[test]
fn constructions_agree_with_scalar_arithmetic() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for model in MODELS {
        for _ in 0..200 {
            let chart = random_chart(model, &mut rng);
            let aux = Aux::At(chart.random_aux(&mut rng));
            let (a, b) = (chart.random_point(&mut rng), chart.random_point(&mut rng));
            let (x, y) = (coord(&chart, &a), coord(&chart, &b));

            let (sum, t) = geo_add(&chart, &a, &b, &aux).unwrap();
            assert_eq!(coord(&chart, &sum), x.add(&y).unwrap());
            assert!(t.verify().is_empty());
            assert_eq!(t.replay().unwrap(), sum);

            let (prod, t) = geo_mul(&chart, &a, &b, &aux).unwrap();
            assert_eq!(coord(&chart, &prod), x.mul(&y).unwrap());
            assert_eq!(t.replay().unwrap(), prod);

            let (neg, _) = geo_neg(&chart, &a, &aux).unwrap();
            assert_eq!(coord(&chart, &neg), x.neg());
            match geo_inv(&chart, &a, &aux) {
                Ok((inv, _)) => assert_eq!(coord(&chart, &inv), x.inv().unwrap()),
                Err(e) => {
                    assert!(x.is_zero());
                    assert_eq!(e, Error::ZeroPoint);
                }
            }
        }
    }
}

#[test]
fn chart_coordinates_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for model in MODELS {
        let chart = random_chart(model, &mut rng);
        assert!(coord(&chart, chart.o()).is_zero());
        assert!(coord(&chart, chart.i()).is_one());
        for _ in 0..100 {
            let s = model.random_scalar(&mut rng);
            assert_eq!(coord(&chart, &chart.point(&s).unwrap()), s);
        }
    }
}

#[test]
fn worked_examples() {
    let g = Model::Gf(7);
    let ch = Chart::standard(g);
    let at = |m: Model, ch: &Chart, n: i64| ch.point(&m.int(n)).unwrap();
    let auto = Aux::Auto;
    assert_eq!(geo_add(&ch, &at(g, &ch, 3), &at(g, &ch, 5), &auto).unwrap().0, at(g, &ch, 1));
    assert_eq!(geo_neg(&ch, &at(g, &ch, 3), &auto).unwrap().0, at(g, &ch, 4));
    assert_eq!(geo_inv(&ch, &at(g, &ch, 5), &auto).unwrap().0, at(g, &ch, 3));
    assert_eq!(geo_neg(&ch, ch.o(), &auto).unwrap().0, *ch.o());
    assert_eq!(geo_inv(&ch, ch.i(), &auto).unwrap().0, *ch.i());

    let q = Model::Quaternion;
    let qc = Chart::standard(q);
    let unit = |c: [i64; 4]| qc.point(&q.quaternion(c).unwrap()).unwrap();
    let (i, j, k) = (unit([0, 1, 0, 0]), unit([0, 0, 1, 0]), unit([0, 0, 0, 1]));
    assert_eq!(geo_mul(&qc, &i, &j, &auto).unwrap().0, k);
    assert_eq!(geo_mul(&qc, &j, &i, &auto).unwrap().0, unit([0, 0, 0, -1]));
    assert_eq!(geo_neg(&qc, &i, &auto).unwrap().0, unit([0, -1, 0, 0]));
    assert_eq!(geo_inv(&qc, &j, &auto).unwrap().0, unit([0, 0, -1, 0]));
}

#[test]
fn auxiliary_point_on_the_chart_is_rejected() {
    let m = Model::Rational;
    let ch = Chart::standard(m);
    let on_line = Aux::At(Point::from_ints(m, 4, 0));
    let a = Point::from_ints(m, 2, 0);
    assert!(geo_add(&ch, &a, &a, &on_line).is_err());
    assert!(geo_add(&ch, &Point::from_ints(m, 2, 1), &a, &Aux::Auto).is_err());
}
