//! Checks beyond the theorem list: skew-field laws of the constructed
//! operations, ratio identities, independence from the auxiliary point,
//! non-commutativity witnesses, a negative control and finite enumeration.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::axioms::{self, check_axioms, AxiomReport, Scope};
use crate::construct::{geo_add, geo_inv, geo_mul, geo_neg, Aux, Chart};
use crate::error::{Error, Result};
use crate::geometry::Point;
use crate::harness::{CaseReport, Failure, Mode, MAX_EXHAUSTIVE_PRIME};
use crate::ratio::RatioContext;
use crate::scalar::{Model, Scalar};
use crate::transforms::{LineTransform, LineTransformKind};

/// Point arithmetic on a charted line, every operation by construction.
#[derive(Clone, Debug)]
pub struct LineOps {
    pub ctx: RatioContext,
}

impl LineOps {
    pub fn new(ctx: RatioContext) -> Self {
        Self { ctx }
    }

    pub fn zero(&self) -> &Point {
        self.ctx.chart.o()
    }

    pub fn one(&self) -> &Point {
        self.ctx.chart.i()
    }

    pub fn add(&self, a: &Point, b: &Point) -> Result<Point> {
        Ok(geo_add(&self.ctx.chart, a, b, &self.ctx.aux)?.0)
    }

    pub fn mul(&self, a: &Point, b: &Point) -> Result<Point> {
        Ok(geo_mul(&self.ctx.chart, a, b, &self.ctx.aux)?.0)
    }

    pub fn neg(&self, a: &Point) -> Result<Point> {
        Ok(geo_neg(&self.ctx.chart, a, &self.ctx.aux)?.0)
    }

    pub fn inv(&self, a: &Point) -> Result<Point> {
        Ok(geo_inv(&self.ctx.chart, a, &self.ctx.aux)?.0)
    }

    pub fn ratio2(&self, a: &Point, b: &Point) -> Result<Point> {
        self.ctx.ratio2(a, b)
    }

    pub fn ratio3(&self, a: &Point, b: &Point, c: &Point) -> Result<Point> {
        self.ctx.ratio3(a, b, c)
    }
}

/// A named law evaluated on one tuple: `Ok(None)` when it does not apply.
type Law = fn(&LineOps, &[Point]) -> Result<Option<bool>>;

fn holds(b: bool) -> Result<Option<bool>> {
    Ok(Some(b))
}

const FIELD_LAWS: &[(&str, Law)] = &[
    ("add-assoc", |k, p| {
        let l = k.add(&k.add(&p[0], &p[1])?, &p[2])?;
        let r = k.add(&p[0], &k.add(&p[1], &p[2])?)?;
        holds(l == r)
    }),
    ("add-comm", |k, p| holds(k.add(&p[0], &p[1])? == k.add(&p[1], &p[0])?)),
    ("mul-assoc", |k, p| {
        let l = k.mul(&k.mul(&p[0], &p[1])?, &p[2])?;
        let r = k.mul(&p[0], &k.mul(&p[1], &p[2])?)?;
        holds(l == r)
    }),
    ("left-distrib", |k, p| {
        let l = k.mul(&p[0], &k.add(&p[1], &p[2])?)?;
        let r = k.add(&k.mul(&p[0], &p[1])?, &k.mul(&p[0], &p[2])?)?;
        holds(l == r)
    }),
    ("right-distrib", |k, p| {
        let l = k.mul(&k.add(&p[0], &p[1])?, &p[2])?;
        let r = k.add(&k.mul(&p[0], &p[2])?, &k.mul(&p[1], &p[2])?)?;
        holds(l == r)
    }),
    ("add-identity", |k, p| {
        holds(k.add(&p[0], k.zero())? == p[0] && k.add(k.zero(), &p[0])? == p[0])
    }),
    ("mul-identity", |k, p| {
        holds(k.mul(&p[0], k.one())? == p[0] && k.mul(k.one(), &p[0])? == p[0])
    }),
    ("add-inverse", |k, p| {
        let n = k.neg(&p[0])?;
        holds(k.add(&p[0], &n)? == *k.zero() && k.add(&n, &p[0])? == *k.zero())
    }),
    ("mul-inverse", |k, p| {
        if p[0] == *k.zero() {
            return Ok(None);
        }
        let v = k.inv(&p[0])?;
        holds(k.mul(&p[0], &v)? == *k.one() && k.mul(&v, &p[0])? == *k.one())
    }),
    ("zero-absorbs", |k, p| {
        holds(k.mul(&p[0], k.zero())? == *k.zero() && k.mul(k.zero(), &p[0])? == *k.zero())
    }),
];

const RATIO_LAWS: &[(&str, Law)] = &[
    ("inverse-symmetry", |k, p| {
        let (a, b) = (&p[0], &p[1]);
        if a == k.zero() || b == k.zero() {
            return Ok(None);
        }
        holds(k.inv(&k.ratio2(a, b)?)? == k.ratio2(b, a)?)
    }),
    ("left-additivity", |k, p| {
        let (a, b, c) = (&p[0], &p[1], &p[2]);
        if c == k.zero() {
            return Ok(None);
        }
        let l = k.ratio2(&k.add(a, b)?, c)?;
        holds(l == k.add(&k.ratio2(a, c)?, &k.ratio2(b, c)?)?)
    }),
    ("right-factor", |k, p| {
        let (a, b, c) = (&p[0], &p[1], &p[2]);
        if c == k.zero() {
            return Ok(None);
        }
        holds(k.ratio2(&k.mul(a, b)?, c)? == k.mul(&k.ratio2(a, c)?, b)?)
    }),
    ("denominator-product", |k, p| {
        let (a, b, c) = (&p[0], &p[1], &p[2]);
        if b == k.zero() || c == k.zero() {
            return Ok(None);
        }
        let l = k.ratio2(a, &k.mul(b, c)?)?;
        holds(l == k.mul(&k.inv(c)?, &k.ratio2(a, b)?)?)
    }),
    ("equality-criterion", |k, p| {
        let (a, b) = (&p[0], &p[1]);
        if a == k.zero() || b == k.zero() {
            return Ok(None);
        }
        let same = k.ratio2(a, b)? == k.ratio2(b, a)?;
        // A = B forces equality; equality forces A = B or A = -B
        holds(if a == b { same } else { !same || *a == k.neg(b)? })
    }),
    ("sign-invariance", |k, p| {
        let (a, b, c) = (&p[0], &p[1], &p[2]);
        if b == c {
            return Ok(None);
        }
        let l = k.ratio3(&k.neg(a)?, &k.neg(b)?, &k.neg(c)?)?;
        holds(l == k.ratio3(a, b, c)?)
    }),
    ("swap-inverse", |k, p| {
        let (a, b, c) = (&p[0], &p[1], &p[2]);
        if b == c || a == c {
            return Ok(None);
        }
        holds(k.inv(&k.ratio3(a, b, c)?)? == k.ratio3(b, a, c)?)
    }),
    ("inverse-conjugation", |k, p| {
        let (a, b, c) = (&p[0], &p[1], &p[2]);
        if [a, b, c].contains(&k.zero()) || b == c {
            return Ok(None);
        }
        let l = k.ratio3(&k.inv(a)?, &k.inv(b)?, &k.inv(c)?)?;
        let r = k.mul(&k.mul(b, &k.ratio3(a, b, c)?)?, &k.inv(a)?)?;
        holds(l == r)
    }),
    ("closure", |k, p| {
        // images of r_B are the whole line, so sums and products of images are images
        let (a, b, c) = (&p[0], &p[1], &p[2]);
        if c == k.zero() {
            return Ok(None);
        }
        let (ra, rb) = (k.ratio2(a, c)?, k.ratio2(b, c)?);
        let sum = k.add(&ra, &rb)?;
        let prod = k.mul(&ra, &rb)?;
        let map = k.ctx.ratio_map2(c)?;
        holds(map.apply(&map.preimage(&sum)?)? == sum && map.apply(&map.preimage(&prod)?)? == prod)
    }),
];

/// The commutative product form of the inverse-triple identity.
pub fn pappian_form_holds(k: &LineOps, a: &Point, b: &Point, c: &Point) -> Result<bool> {
    let l = k.ratio3(&k.inv(a)?, &k.inv(b)?, &k.inv(c)?)?;
    let r = k.mul(&k.ratio3(a, b, c)?, &k.ratio3(b, a, k.zero())?)?;
    Ok(l == r)
}

fn pappian_admissible(k: &LineOps, p: &[Point]) -> bool {
    let (a, b, c) = (&p[0], &p[1], &p[2]);
    ![a, b, c].contains(&k.zero()) && a != b && b != c
}

fn run_laws(suite: &str, laws: &[(&str, Law)], model: Model, mode: Mode) -> Result<Vec<CaseReport>> {
    let mut reports: Vec<CaseReport> = laws
        .iter()
        .map(|(name, _)| CaseReport {
            theorem: suite.into(),
            case: (*name).into(),
            model: model.to_string(),
            trials: 0,
            skipped: 0,
            failures: Vec::new(),
        })
        .collect();
    let mut eval = |trial: usize, k: &LineOps, pts: &[Point]| {
        for ((_, law), rep) in laws.iter().zip(reports.iter_mut()) {
            match law(k, pts) {
                Ok(None) => rep.skipped += 1,
                Ok(Some(ok)) => {
                    rep.trials += 1;
                    if !ok {
                        rep.failures.push(Failure {
                            trial,
                            detail: describe(k, pts),
                        });
                    }
                }
                Err(e) => {
                    rep.trials += 1;
                    rep.failures.push(Failure {
                        trial,
                        detail: format!("{}: {e}", describe(k, pts)),
                    });
                }
            }
        }
    };
    for_each_triple(model, mode, &mut eval)?;
    Ok(reports)
}

fn describe(k: &LineOps, pts: &[Point]) -> String {
    let coords: Vec<String> = pts
        .iter()
        .map(|p| k.ctx.chart.coordinate(p).map(|s| s.to_string()).unwrap_or_else(|_| p.to_string()))
        .collect();
    format!("chart O={} I={}; coords ({})", k.ctx.chart.o(), k.ctx.chart.i(), coords.join(", "))
}

fn exhaustive_prime(model: Model) -> Result<()> {
    match model {
        Model::Gf(p) if p <= MAX_EXHAUSTIVE_PRIME => Ok(()),
        _ => Err(Error::ScopeTooLarge(format!(
            "exhaustive runs need gf(p) with p <= {MAX_EXHAUSTIVE_PRIME}, got {model}"
        ))),
    }
}

/// Calls `f` on every triple of the standard chart, or on seeded random
/// triples over random charts and auxiliary points.
fn for_each_triple(
    model: Model,
    mode: Mode,
    f: &mut dyn FnMut(usize, &LineOps, &[Point]),
) -> Result<()> {
    match mode {
        Mode::Exhaustive => {
            exhaustive_prime(model)?;
            let k = LineOps::new(RatioContext::new(Chart::standard(model)));
            let pts = k.ctx.chart.line().points().expect("finite model");
            let mut trial = 0;
            for a in &pts {
                for b in &pts {
                    for c in &pts {
                        f(trial, &k, &[a.clone(), b.clone(), c.clone()]);
                        trial += 1;
                    }
                }
            }
        }
        Mode::Sampled { trials, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for trial in 0..trials {
                let k = LineOps::new(random_context(model, &mut rng));
                let ch = &k.ctx.chart;
                let pts = [ch.random_point(&mut rng), ch.random_point(&mut rng), ch.random_point(&mut rng)];
                f(trial, &k, &pts);
            }
        }
    }
    Ok(())
}

fn random_context<R: Rng>(model: Model, rng: &mut R) -> RatioContext {
    loop {
        if let Ok(chart) = Chart::new(Point::random(model, rng), Point::random(model, rng)) {
            let aux = chart.random_aux(rng);
            return RatioContext::with_aux(chart, Aux::At(aux));
        }
    }
}

/// Associativity, commutativity of addition, both distributive laws,
/// identities, inverses and absorption for the constructed operations.
pub fn field_suite(model: Model, mode: Mode) -> Result<Vec<CaseReport>> {
    run_laws("field", FIELD_LAWS, model, mode)
}

/// Ratio identities that hold in every skew field, plus the commutative
/// product form in commutative models.
pub fn ratio_suite(model: Model, mode: Mode) -> Result<Vec<CaseReport>> {
    let mut out = run_laws("ratio", RATIO_LAWS, model, mode)?;
    if model.is_commutative() {
        let mut rep = CaseReport {
            theorem: "ratio".into(),
            case: "pappian-form".into(),
            model: model.to_string(),
            trials: 0,
            skipped: 0,
            failures: Vec::new(),
        };
        for_each_triple(model, mode, &mut |trial, k, pts| {
            if !pappian_admissible(k, pts) {
                rep.skipped += 1;
                return;
            }
            rep.trials += 1;
            match pappian_form_holds(k, &pts[0], &pts[1], &pts[2]) {
                Ok(true) => {}
                Ok(false) => rep.failures.push(Failure {
                    trial,
                    detail: describe(k, pts),
                }),
                Err(e) => rep.failures.push(Failure {
                    trial,
                    detail: format!("{}: {e}", describe(k, pts)),
                }),
            }
        })?;
        out.push(rep);
    }
    Ok(out)
}

fn find_law(name: &str) -> Option<Law> {
    FIELD_LAWS
        .iter()
        .chain(RATIO_LAWS)
        .find(|(n, _)| *n == name)
        .map(|(_, l)| *l)
        .or_else(|| {
            (name == "pappian-form").then_some((|k: &LineOps, p: &[Point]| {
                if !pappian_admissible(k, p) {
                    return Ok(None);
                }
                pappian_form_holds(k, &p[0], &p[1], &p[2]).map(Some)
            }) as Law)
        })
}

/// Runs one named law. Sampled runs redraw inadmissible triples until
/// `trials` instances have been checked.
pub fn law_suite(name: &str, model: Model, mode: Mode) -> Result<CaseReport> {
    let law = find_law(name).ok_or_else(|| Error::InvalidParameter(format!("unknown law `{name}`")))?;
    let Mode::Sampled { trials, seed } = mode else {
        return Ok(run_laws("law", &[(name, law)], model, mode)?.remove(0));
    };
    let mut rep = CaseReport {
        theorem: "law".into(),
        case: name.into(),
        model: model.to_string(),
        trials: 0,
        skipped: 0,
        failures: Vec::new(),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    while rep.trials < trials {
        if rep.skipped > 100 * trials.max(1) {
            return Err(Error::GeneratorExhausted(rep.skipped));
        }
        let k = LineOps::new(random_context(model, &mut rng));
        let ch = &k.ctx.chart;
        let pts = [ch.random_point(&mut rng), ch.random_point(&mut rng), ch.random_point(&mut rng)];
        let trial = rep.trials;
        match law(&k, &pts) {
            Ok(None) => rep.skipped += 1,
            Ok(Some(true)) => rep.trials += 1,
            Ok(Some(false)) => {
                rep.trials += 1;
                rep.failures.push(Failure { trial, detail: describe(&k, &pts) });
            }
            Err(e) => {
                rep.trials += 1;
                rep.failures.push(Failure {
                    trial,
                    detail: format!("{}: {e}", describe(&k, &pts)),
                });
            }
        }
    }
    Ok(rep)
}

/// Compares constructions made with random auxiliary points against the
/// default one.
pub fn aux_independence(model: Model, count: usize, seed: u64) -> Result<CaseReport> {
    let mut rep = CaseReport {
        theorem: "aux-independence".into(),
        case: "add+mul".into(),
        model: model.to_string(),
        trials: 0,
        skipped: 0,
        failures: Vec::new(),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let chart = Chart::standard(model);
    for trial in 0..count {
        let (a, b) = (chart.random_point(&mut rng), chart.random_point(&mut rng));
        let aux = Aux::At(chart.random_aux(&mut rng));
        let base_add = geo_add(&chart, &a, &b, &Aux::Auto)?.0;
        let base_mul = geo_mul(&chart, &a, &b, &Aux::Auto)?.0;
        let add = geo_add(&chart, &a, &b, &aux)?.0;
        let mul = geo_mul(&chart, &a, &b, &aux)?.0;
        rep.trials += 1;
        if add != base_add || mul != base_mul {
            rep.failures.push(Failure {
                trial,
                detail: format!("aux {aux:?}, A={a}, B={b}"),
            });
        }
    }
    Ok(rep)
}

/// A concrete instance where a claimed identity fails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub model: String,
    pub statement: String,
    pub inputs: Vec<(String, String)>,
    pub left: String,
    pub right: String,
}

/// `i j = k` and `j i = -k` as chart coordinates.
pub fn quaternion_order_witness() -> Result<(Scalar, Scalar)> {
    let m = Model::Quaternion;
    let ch = Chart::standard(m);
    let i = ch.point(&m.quaternion([0, 1, 0, 0])?)?;
    let j = ch.point(&m.quaternion([0, 0, 1, 0])?)?;
    let ij = geo_mul(&ch, &i, &j, &Aux::Auto)?.0;
    let ji = geo_mul(&ch, &j, &i, &Aux::Auto)?.0;
    Ok((ch.coordinate(&ij)?, ch.coordinate(&ji)?))
}

/// Searches small quaternions for a triple where the commutative product
/// form of the inverse-triple identity fails.
pub fn pappian_counterexample() -> Result<Option<Counterexample>> {
    let m = Model::Quaternion;
    let k = LineOps::new(RatioContext::new(Chart::standard(m)));
    let candidates: Vec<[i64; 4]> = vec![
        [1, 0, 0, 0],
        [0, 1, 0, 0],
        [0, 0, 1, 0],
        [0, 0, 0, 1],
        [1, 1, 0, 0],
        [1, 0, 1, 0],
        [0, 1, 1, 0],
        [2, 0, 0, 0],
        [1, 0, 0, 1],
    ];
    let pts: Vec<(Scalar, Point)> = candidates
        .iter()
        .map(|c| {
            let s = m.quaternion(*c)?;
            Ok((s.clone(), k.ctx.chart.point(&s)?))
        })
        .collect::<Result<_>>()?;
    for (sa, a) in &pts {
        for (sb, b) in &pts {
            for (sc, c) in &pts {
                let triple = [a.clone(), b.clone(), c.clone()];
                if !pappian_admissible(&k, &triple) || a == c {
                    continue;
                }
                if !pappian_form_holds(&k, a, b, c)? {
                    let l = k.ratio3(&k.inv(a)?, &k.inv(b)?, &k.inv(c)?)?;
                    let r = k.mul(&k.ratio3(a, b, c)?, &k.ratio3(b, a, k.zero())?)?;
                    return Ok(Some(Counterexample {
                        model: m.to_string(),
                        statement: "r(A^-1,B^-1;C^-1) = r(A,B;C) r(B,A;O)".into(),
                        inputs: vec![
                            ("A".into(), sa.to_string()),
                            ("B".into(), sb.to_string()),
                            ("C".into(), sc.to_string()),
                        ],
                        left: k.ctx.chart.coordinate(&l)?.to_string(),
                        right: k.ctx.chart.coordinate(&r)?.to_string(),
                    }));
                }
            }
        }
    }
    Ok(None)
}

/// First gf(p) triple where `r(A:B C) = C^-1 r(A:C)` fails; the form
/// `C^-1 r(A:B)` is the one that holds.
pub fn denominator_product_counterexample(p: u32) -> Result<Option<Counterexample>> {
    let m = Model::gf(p as u64)?;
    let k = LineOps::new(RatioContext::new(Chart::standard(m)));
    let elems = m.elements().expect("finite");
    for sa in &elems {
        for sb in elems.iter().filter(|s| !s.is_zero()) {
            for sc in elems.iter().filter(|s| !s.is_zero()) {
                let ch = &k.ctx.chart;
                let (a, b, c) = (ch.point(sa)?, ch.point(sb)?, ch.point(sc)?);
                let l = k.ratio2(&a, &k.mul(&b, &c)?)?;
                let r = k.mul(&k.inv(&c)?, &k.ratio2(&a, &c)?)?;
                if l != r {
                    return Ok(Some(Counterexample {
                        model: m.to_string(),
                        statement: "r(A:B C) = C^-1 r(A:C)".into(),
                        inputs: vec![
                            ("A".into(), sa.to_string()),
                            ("B".into(), sb.to_string()),
                            ("C".into(), sc.to_string()),
                        ],
                        left: ch.coordinate(&l)?.to_string(),
                        right: ch.coordinate(&r)?.to_string(),
                    }));
                }
            }
        }
    }
    Ok(None)
}

/// A pair `A != B` with `r(A:B) = r(B:A)` (namely `B = -A`), if the model
/// has characteristic other than 2.
pub fn equality_criterion_counterexample(model: Model) -> Result<Option<Counterexample>> {
    if model.characteristic() == 2 {
        return Ok(None);
    }
    let k = LineOps::new(RatioContext::new(Chart::standard(model)));
    let a = k.one().clone();
    let b = k.neg(&a)?;
    let (l, r) = (k.ratio2(&a, &b)?, k.ratio2(&b, &a)?);
    let ch = &k.ctx.chart;
    Ok((l == r).then(|| Counterexample {
        model: model.to_string(),
        statement: "r(A:B) = r(B:A) only if A = B".into(),
        inputs: vec![
            ("A".into(), ch.coordinate(&a).map(|s| s.to_string()).unwrap_or_default()),
            ("B".into(), ch.coordinate(&b).map(|s| s.to_string()).unwrap_or_default()),
        ],
        left: ch.coordinate(&l).map(|s| s.to_string()).unwrap_or_default(),
        right: ch.coordinate(&r).map(|s| s.to_string()).unwrap_or_default(),
    }))
}

/// Natural translation does not fix the ratio of two points: the recorded
/// gf(7) instance `A = 1, B = 2, P = 1`, plus the number of failing
/// `(P, A, B)` triples over the whole line.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NegativeControl {
    pub counterexample: Counterexample,
    pub failing_triples: usize,
    pub admissible_triples: usize,
}

pub fn negative_control() -> Result<NegativeControl> {
    let m = Model::Gf(7);
    let ctx = RatioContext::new(Chart::standard(m));
    let ch = ctx.chart.clone();
    let at = |v: i64| ch.point(&m.int(v));
    let shift = |p: &Point| LineTransform::new(LineTransformKind::NaturalTranslation(p.clone()), ctx.clone());

    let (a, b, p) = (at(1)?, at(2)?, at(1)?);
    let t = shift(&p)?;
    let before = ctx.ratio2(&a, &b)?;
    let after = ctx.ratio2(&t.apply(&a)?, &t.apply(&b)?)?;
    let counterexample = Counterexample {
        model: m.to_string(),
        statement: "r(P+A:P+B) = r(A:B)".into(),
        inputs: vec![("A".into(), "1".into()), ("B".into(), "2".into()), ("P".into(), "1".into())],
        left: ch.coordinate(&after)?.to_string(),
        right: ch.coordinate(&before)?.to_string(),
    };

    let line = ch.line().points().expect("finite");
    let (mut failing, mut admissible) = (0, 0);
    for p in &line {
        let t = shift(p)?;
        for a in &line {
            for b in &line {
                let tb = t.apply(b)?;
                if b == ch.o() || tb == *ch.o() {
                    continue;
                }
                admissible += 1;
                if ctx.ratio2(&t.apply(a)?, &tb)? != ctx.ratio2(a, b)? {
                    failing += 1;
                }
            }
        }
    }
    Ok(NegativeControl {
        counterexample,
        failing_triples: failing,
        admissible_triples: admissible,
    })
}

/// Incidence counts, axiom check and the constructed addition and
/// multiplication tables of gf(p) on the standard chart.
#[derive(Clone, Debug, Serialize)]
pub struct Enumeration {
    pub p: u32,
    pub points: usize,
    pub lines: usize,
    pub axioms: AxiomReport,
    pub add_table: Vec<Vec<u32>>,
    pub mul_table: Vec<Vec<u32>>,
    /// Table entries that differ from arithmetic mod p.
    pub mismatches: Vec<String>,
}

impl Enumeration {
    pub fn passed(&self) -> bool {
        self.axioms.passed()
            && self.mismatches.is_empty()
            && self.points == (self.p * self.p) as usize
            && self.lines == (self.p * self.p + self.p) as usize
    }
}

pub fn enumerate(p: u64) -> Result<Enumeration> {
    if p > axioms::MAX_EXHAUSTIVE_PRIME as u64 {
        return Err(Error::ScopeTooLarge(format!(
            "enumeration needs p <= {}, got {p}",
            axioms::MAX_EXHAUSTIVE_PRIME
        )));
    }
    let m = Model::gf(p)?;
    let report = check_axioms(m, Scope::Exhaustive)?;
    let ch = Chart::standard(m);
    let value = |pt: &Point| -> Result<u32> {
        match ch.coordinate(pt)? {
            Scalar::Gf(r) => Ok(r.value()),
            _ => unreachable!("gf chart"),
        }
    };
    let n = p as u32;
    let (mut add_table, mut mul_table, mut mismatches) = (Vec::new(), Vec::new(), Vec::new());
    for x in 0..n {
        let (mut add_row, mut mul_row) = (Vec::new(), Vec::new());
        for y in 0..n {
            let (a, b) = (ch.point(&m.int(x as i64))?, ch.point(&m.int(y as i64))?);
            let s = value(&geo_add(&ch, &a, &b, &Aux::Auto)?.0)?;
            let t = value(&geo_mul(&ch, &a, &b, &Aux::Auto)?.0)?;
            if s != (x + y) % n {
                mismatches.push(format!("{x} + {y} = {s}"));
            }
            if t != (x * y) % n {
                mismatches.push(format!("{x} * {y} = {t}"));
            }
            add_row.push(s);
            mul_row.push(t);
        }
        add_table.push(add_row);
        mul_table.push(mul_row);
    }
    Ok(Enumeration {
        p: n,
        points: report.points.unwrap_or(0),
        lines: report.lines.unwrap_or(0),
        axioms: report,
        add_table,
        mul_table,
        mismatches,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_laws_in_gf3() {
        let reps = field_suite(Model::Gf(3), Mode::Exhaustive).unwrap();
        assert!(reps.iter().all(CaseReport::passed), "{reps:?}");
        assert_eq!(reps[0].trials, 27);
    }

    #[test]
    fn ratio_laws_sampled_rational() {
        let reps = ratio_suite(Model::Rational, Mode::Sampled { trials: 30, seed: 3 }).unwrap();
        assert!(reps.iter().all(CaseReport::passed), "{reps:?}");
        assert!(reps.iter().any(|r| r.case == "pappian-form"));
    }

    #[test]
    fn single_law_counts_admissible_trials() {
        let r = law_suite("pappian-form", Model::Gf(7), Mode::Sampled { trials: 25, seed: 1 }).unwrap();
        assert_eq!(r.trials, 25);
        assert!(r.passed());
        let q = law_suite("pappian-form", Model::Quaternion, Mode::Sampled { trials: 25, seed: 1 }).unwrap();
        assert!(!q.passed());
        assert!(law_suite("nope", Model::Gf(7), Mode::Exhaustive).is_err());
    }

    #[test]
    fn denominator_product_printed_form_fails() {
        let cx = denominator_product_counterexample(7).unwrap().unwrap();
        assert_ne!(cx.left, cx.right);
    }

    #[test]
    fn equality_criterion_fails_for_opposites() {
        let cx = equality_criterion_counterexample(Model::Gf(7)).unwrap().unwrap();
        assert_eq!(cx.inputs[1].1, "6");
        assert!(equality_criterion_counterexample(Model::Gf(2)).unwrap().is_none());
    }

    #[test]
    fn negative_control_instance() {
        let nc = negative_control().unwrap();
        assert_eq!((nc.counterexample.right.as_str(), nc.counterexample.left.as_str()), ("4", "3"));
        assert!(nc.failing_triples > 0);
    }

    #[test]
    fn enumeration_small_primes() {
        let e = enumerate(2).unwrap();
        assert!(e.passed());
        assert_eq!((e.points, e.lines), (4, 6));
        assert_eq!(e.mul_table, vec![vec![0, 0], vec![0, 1]]);
        assert!(matches!(enumerate(4), Err(Error::NotPrime(4))));
        assert!(matches!(enumerate(17), Err(Error::ScopeTooLarge(_))));
    }
}
