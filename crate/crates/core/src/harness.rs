//! Theorem verification harness.
//!
//! Every invariance and preservation statement has a stable identifier. A
//! run draws admissible instances (or enumerates all of them over a small
//! prime field), evaluates the statement with the constructions, and
//! collects failures. Runs are deterministic in `(model, seed, trials)`.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::construct::{Aux, Chart};
use crate::error::{Error, Result};
use crate::geometry::{all_lines, all_points, is_parallel, Line, Point};
use crate::ratio::RatioContext;
use crate::scalar::{Model, Scalar};
use crate::transforms::{
    check_invariance_2, check_invariance_3, check_preservation, check_relation_2to3, LineTransform,
    LineTransformKind, PlaneMap,
};

/// Largest prime for which [`Mode::Exhaustive`] is accepted.
pub const MAX_EXHAUSTIVE_PRIME: u32 = 7;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum TheoremId {
    Inv2NatDil,
    Inv2Inversion,
    Inv2Mobius,
    Inv3NatTrans,
    Inv3NatDil,
    Inv3Inversion,
    Inv3Mobius,
    Rel2To3,
    Pres2PProj,
    Pres2Trans,
    Pres2Dil,
    Pres3Trans,
    Pres3PProj,
    Pres3Dil,
}

impl TheoremId {
    pub const ALL: [TheoremId; 14] = [
        TheoremId::Inv2NatDil,
        TheoremId::Inv2Inversion,
        TheoremId::Inv2Mobius,
        TheoremId::Inv3NatTrans,
        TheoremId::Inv3NatDil,
        TheoremId::Inv3Inversion,
        TheoremId::Inv3Mobius,
        TheoremId::Rel2To3,
        TheoremId::Pres2PProj,
        TheoremId::Pres2Trans,
        TheoremId::Pres2Dil,
        TheoremId::Pres3Trans,
        TheoremId::Pres3PProj,
        TheoremId::Pres3Dil,
    ];

    pub const INVARIANCE: [TheoremId; 8] = [
        TheoremId::Inv2NatDil,
        TheoremId::Inv2Inversion,
        TheoremId::Inv2Mobius,
        TheoremId::Inv3NatTrans,
        TheoremId::Inv3NatDil,
        TheoremId::Inv3Inversion,
        TheoremId::Inv3Mobius,
        TheoremId::Rel2To3,
    ];

    pub const PRESERVATION: [TheoremId; 6] = [
        TheoremId::Pres2PProj,
        TheoremId::Pres2Trans,
        TheoremId::Pres2Dil,
        TheoremId::Pres3Trans,
        TheoremId::Pres3PProj,
        TheoremId::Pres3Dil,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TheoremId::Inv2NatDil => "inv2.natdil",
            TheoremId::Inv2Inversion => "inv2.inversion",
            TheoremId::Inv2Mobius => "inv2.mobius",
            TheoremId::Inv3NatTrans => "inv3.nattrans",
            TheoremId::Inv3NatDil => "inv3.natdil",
            TheoremId::Inv3Inversion => "inv3.inversion",
            TheoremId::Inv3Mobius => "inv3.mobius",
            TheoremId::Rel2To3 => "rel.2to3",
            TheoremId::Pres2PProj => "pres2.pproj",
            TheoremId::Pres2Trans => "pres2.trans",
            TheoremId::Pres2Dil => "pres2.dil",
            TheoremId::Pres3Trans => "pres3.trans",
            TheoremId::Pres3PProj => "pres3.pproj",
            TheoremId::Pres3Dil => "pres3.dil",
        }
    }

    /// Sub-cases reported separately.
    pub fn cases(self) -> &'static [Case] {
        match self {
            TheoremId::Pres2Dil | TheoremId::Pres3Dil => {
                &[Case::CentreAtZero, Case::CentreOnLine, Case::CentreOffLine]
            }
            TheoremId::Pres2PProj | TheoremId::Pres3PProj => &[Case::Intersecting, Case::Parallel],
            _ => &[Case::General],
        }
    }

    fn points(self) -> usize {
        match self {
            TheoremId::Inv2NatDil
            | TheoremId::Inv2Inversion
            | TheoremId::Inv2Mobius
            | TheoremId::Rel2To3
            | TheoremId::Pres2PProj
            | TheoremId::Pres2Trans
            | TheoremId::Pres2Dil => 2,
            _ => 3,
        }
    }

    fn index(self) -> u64 {
        TheoremId::ALL.iter().position(|&t| t == self).expect("listed") as u64
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TheoremId::ALL
            .into_iter()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown theorem `{s}`")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Case {
    General,
    /// Dilatation centre at `O`.
    CentreAtZero,
    /// Dilatation centre on the line, not `O`.
    CentreOnLine,
    CentreOffLine,
    /// Projection between intersecting lines.
    Intersecting,
    /// Projection between parallel lines.
    Parallel,
}

impl Case {
    pub fn as_str(self) -> &'static str {
        match self {
            Case::General => "general",
            Case::CentreAtZero => "centre=O",
            Case::CentreOnLine => "centre-on-line",
            Case::CentreOffLine => "centre-off-line",
            Case::Intersecting => "intersecting",
            Case::Parallel => "parallel",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Sampled { trials: usize, seed: u64 },
    Exhaustive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub trial: usize,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CaseReport {
    pub theorem: String,
    pub case: String,
    pub model: String,
    pub trials: usize,
    /// Instances rejected by a precondition (never counted as trials).
    pub skipped: usize,
    pub failures: Vec<Failure>,
}

impl CaseReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.trials > 0
    }
}

impl fmt::Display for CaseReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:<15} {:<16} {:<11} trials={:<6} skipped={:<4} failures={}",
            self.theorem,
            self.case,
            self.model,
            self.trials,
            self.skipped,
            self.failures.len()
        )
    }
}

/// One instance of a theorem: the objects it is stated for.
#[derive(Clone, Debug)]
struct Instance {
    ctx: RatioContext,
    points: Vec<Point>,
    kind: InstanceKind,
}

#[derive(Clone, Debug)]
enum InstanceKind {
    Line(LineTransformKind),
    Relation(Point),
    Plane(PlaneMap),
}

impl Instance {
    fn describe(&self) -> String {
        let pts: Vec<String> = self.points.iter().map(|p| p.to_string()).collect();
        let what = match &self.kind {
            InstanceKind::Line(k) => format!("{k:?}"),
            InstanceKind::Relation(p) => format!("P = {p}"),
            InstanceKind::Plane(m) => format!("{m:?}"),
        };
        format!(
            "chart O={} I={}; points [{}]; {what}",
            self.ctx.chart.o(),
            self.ctx.chart.i(),
            pts.join(", ")
        )
    }

    fn check(&self) -> Result<bool> {
        let p = &self.points;
        match &self.kind {
            InstanceKind::Line(kind) => {
                let t = LineTransform::new(kind.clone(), self.ctx.clone())?;
                match p.as_slice() {
                    [a, b] => check_invariance_2(&t, a, b),
                    [a, b, c] => check_invariance_3(&t, a, b, c),
                    _ => unreachable!("instances carry two or three points"),
                }
            }
            InstanceKind::Relation(shift) => check_relation_2to3(&self.ctx, shift, &p[0], &p[1]),
            InstanceKind::Plane(m) => check_preservation(m, &self.ctx.chart, p, &self.ctx.aux),
        }
    }
}

/// Runs every case of one theorem.
pub fn run_theorem(id: TheoremId, model: Model, mode: Mode) -> Result<Vec<CaseReport>> {
    id.cases().iter().map(|&case| run_case(id, case, model, mode)).collect()
}

pub fn run_case(id: TheoremId, case: Case, model: Model, mode: Mode) -> Result<CaseReport> {
    let mut report = CaseReport {
        theorem: id.as_str().into(),
        case: case.as_str().into(),
        model: model.to_string(),
        trials: 0,
        skipped: 0,
        failures: Vec::new(),
    };
    let mut record = |trial: usize, inst: &Instance| match inst.check() {
        Ok(true) => report.trials += 1,
        Ok(false) => {
            report.trials += 1;
            report.failures.push(Failure {
                trial,
                detail: inst.describe(),
            });
        }
        Err(Error::PreconditionViolated(_)) => report.skipped += 1,
        Err(e) => {
            report.trials += 1;
            report.failures.push(Failure {
                trial,
                detail: format!("{}: {e}", inst.describe()),
            });
        }
    };
    match mode {
        Mode::Sampled { trials, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(id.index() * 16 + case as u64);
            for trial in 0..trials {
                let inst = sample_instance(id, case, model, &mut rng);
                record(trial, &inst);
            }
        }
        Mode::Exhaustive => {
            match model {
                Model::Gf(p) if p <= MAX_EXHAUSTIVE_PRIME => {}
                _ => {
                    return Err(Error::ScopeTooLarge(format!(
                        "exhaustive runs need gf(p) with p <= {MAX_EXHAUSTIVE_PRIME}, got {model}"
                    )))
                }
            }
            for (trial, inst) in enumerate_instances(id, case, model).iter().enumerate() {
                record(trial, inst);
            }
        }
    }
    Ok(report)
}

/// A random chart, with a random auxiliary point off it.
fn random_context<R: Rng>(model: Model, rng: &mut R) -> RatioContext {
    loop {
        let o = Point::random(model, rng);
        let i = Point::random(model, rng);
        if let Ok(chart) = Chart::new(o, i) {
            let aux = chart.random_aux(rng);
            return RatioContext::with_aux(chart, Aux::At(aux));
        }
    }
}

/// Points on the chart with `B != O` (two points) or `B != C` (three).
fn random_tuple<R: Rng>(ctx: &RatioContext, n: usize, rng: &mut R) -> Vec<Point> {
    let ch = &ctx.chart;
    loop {
        let pts: Vec<Point> = (0..n).map(|_| ch.random_point(rng)).collect();
        let ok = match n {
            2 => pts[1] != *ch.o(),
            _ => pts[1] != pts[2],
        };
        if ok {
            return pts;
        }
    }
}

fn random_natural<R: Rng>(model: Model, rng: &mut R) -> u64 {
    loop {
        let n = rng.gen_range(1..=9);
        if !model.one().nat(n).is_zero() {
            return n;
        }
    }
}

fn random_direction_avoiding<R: Rng>(model: Model, avoid: &[&Line], rng: &mut R) -> Line {
    loop {
        let v = Point::random(model, rng);
        if let Ok(l) = Line::new(Point::origin(model), v) {
            if avoid.iter().all(|a| !is_parallel(a, &l)) {
                return l;
            }
        }
    }
}

fn sample_instance<R: Rng>(id: TheoremId, case: Case, model: Model, rng: &mut R) -> Instance {
    let ctx = random_context(model, rng);
    let points = random_tuple(&ctx, id.points(), rng);
    let ch = ctx.chart.clone();
    let kind = match id {
        TheoremId::Inv2NatDil | TheoremId::Inv3NatDil => {
            InstanceKind::Line(LineTransformKind::NaturalDilatation(random_natural(model, rng)))
        }
        TheoremId::Inv2Inversion | TheoremId::Inv3Inversion => {
            InstanceKind::Line(LineTransformKind::Inversion(ch.random_nonzero_point(rng)))
        }
        TheoremId::Inv3NatTrans => {
            InstanceKind::Line(LineTransformKind::NaturalTranslation(ch.random_point(rng)))
        }
        TheoremId::Inv2Mobius => {
            // half the draws use the pair's own B as the parameter
            let b = if rng.gen_bool(0.5) {
                points[1].clone()
            } else {
                ch.random_nonzero_point(rng)
            };
            InstanceKind::Line(LineTransformKind::Mobius2(b))
        }
        TheoremId::Inv3Mobius => {
            let (b, c) = if rng.gen_bool(0.5) {
                (points[1].clone(), points[2].clone())
            } else {
                loop {
                    let (b, c) = (ch.random_point(rng), ch.random_point(rng));
                    if b != c {
                        break (b, c);
                    }
                }
            };
            InstanceKind::Line(LineTransformKind::Mobius3(b, c))
        }
        TheoremId::Rel2To3 => InstanceKind::Relation(ch.random_point(rng)),
        TheoremId::Pres2Trans | TheoremId::Pres3Trans => {
            InstanceKind::Plane(PlaneMap::translation(Point::random(model, rng)))
        }
        TheoremId::Pres2Dil | TheoremId::Pres3Dil => {
            let centre = match case {
                Case::CentreAtZero => ch.o().clone(),
                Case::CentreOnLine => loop {
                    let v = ch.random_point(rng);
                    if v != *ch.o() {
                        break v;
                    }
                },
                _ => ch.random_aux(rng),
            };
            let factor = model.random_nonzero(rng);
            InstanceKind::Plane(PlaneMap::dilatation(centre, factor).expect("nonzero factor"))
        }
        TheoremId::Pres2PProj | TheoremId::Pres3PProj => {
            let source = ch.line().clone();
            let target = match case {
                Case::Parallel => {
                    Line::new(ch.random_aux(rng), source.dir().clone()).expect("nonzero direction")
                }
                _ => {
                    let through = Point::random(model, rng);
                    let d = random_direction_avoiding(model, &[&source], rng);
                    Line::new(through, d.dir().clone()).expect("nonzero direction")
                }
            };
            let direction = random_direction_avoiding(model, &[&source, &target], rng);
            InstanceKind::Plane(
                PlaneMap::parallel_projection(source, target, direction).expect("admissible"),
            )
        }
    };
    Instance { ctx, points, kind }
}

/// All admissible instances over the standard chart of a small prime field.
fn enumerate_instances(id: TheoremId, case: Case, model: Model) -> Vec<Instance> {
    let chart = Chart::standard(model);
    let ctx = RatioContext::new(chart.clone());
    let elems = model.elements().expect("finite model");
    let line_pts: Vec<Point> = elems.iter().map(|s| chart.point(s).expect("same model")).collect();
    let o = chart.o().clone();
    let nonzero: Vec<Point> = line_pts.iter().filter(|p| **p != o).cloned().collect();
    let units: Vec<Scalar> = elems.iter().filter(|s| !s.is_zero()).cloned().collect();

    let tuples: Vec<Vec<Point>> = if id.points() == 2 {
        line_pts
            .iter()
            .flat_map(|a| nonzero.iter().map(move |b| vec![a.clone(), b.clone()]))
            .collect()
    } else {
        let mut v = Vec::new();
        for a in &line_pts {
            for b in &line_pts {
                for c in &line_pts {
                    if b != c {
                        v.push(vec![a.clone(), b.clone(), c.clone()]);
                    }
                }
            }
        }
        v
    };

    let kinds: Vec<InstanceKind> = match id {
        TheoremId::Inv2NatDil | TheoremId::Inv3NatDil => (1..model.characteristic())
            .map(|n| InstanceKind::Line(LineTransformKind::NaturalDilatation(n)))
            .collect(),
        TheoremId::Inv2Inversion | TheoremId::Inv3Inversion => nonzero
            .iter()
            .map(|p| InstanceKind::Line(LineTransformKind::Inversion(p.clone())))
            .collect(),
        TheoremId::Inv3NatTrans => line_pts
            .iter()
            .map(|p| InstanceKind::Line(LineTransformKind::NaturalTranslation(p.clone())))
            .collect(),
        TheoremId::Inv2Mobius => nonzero
            .iter()
            .map(|b| InstanceKind::Line(LineTransformKind::Mobius2(b.clone())))
            .collect(),
        TheoremId::Inv3Mobius => {
            let mut v = Vec::new();
            for b in &line_pts {
                for c in &line_pts {
                    if b != c {
                        v.push(InstanceKind::Line(LineTransformKind::Mobius3(b.clone(), c.clone())));
                    }
                }
            }
            v
        }
        TheoremId::Rel2To3 => line_pts.iter().map(|p| InstanceKind::Relation(p.clone())).collect(),
        TheoremId::Pres2Trans | TheoremId::Pres3Trans => all_points(model)
            .expect("finite")
            .into_iter()
            .map(|v| InstanceKind::Plane(PlaneMap::translation(v)))
            .collect(),
        TheoremId::Pres2Dil | TheoremId::Pres3Dil => {
            let centres: Vec<Point> = all_points(model)
                .expect("finite")
                .into_iter()
                .filter(|v| match case {
                    Case::CentreAtZero => *v == o,
                    Case::CentreOnLine => *v != o && chart.contains(v).unwrap_or(false),
                    _ => !chart.contains(v).unwrap_or(true),
                })
                .collect();
            centres
                .iter()
                .flat_map(|v| {
                    units.iter().map(move |f| {
                        InstanceKind::Plane(PlaneMap::dilatation(v.clone(), f.clone()).expect("unit"))
                    })
                })
                .collect()
        }
        TheoremId::Pres2PProj | TheoremId::Pres3PProj => {
            let source = chart.line().clone();
            let lines = all_lines(model).expect("finite");
            let directions: Vec<Line> = lines
                .iter()
                .filter(|l| l.base().is_zero())
                .cloned()
                .collect();
            let mut v = Vec::new();
            for target in &lines {
                let parallel = is_parallel(target, &source);
                let wanted = match case {
                    Case::Parallel => parallel && *target != source,
                    _ => !parallel,
                };
                if !wanted {
                    continue;
                }
                for d in &directions {
                    if let Ok(m) = PlaneMap::parallel_projection(source.clone(), target.clone(), d.clone()) {
                        v.push(InstanceKind::Plane(m));
                    }
                }
            }
            v
        }
    };

    kinds
        .iter()
        .flat_map(|k| {
            tuples.iter().map(|pts| Instance {
                ctx: ctx.clone(),
                points: pts.clone(),
                kind: k.clone(),
            })
        })
        .collect()
}

/// Parses a `--check` style selection: `all` or a comma-separated id list.
pub fn parse_selection(text: &str) -> Result<Vec<TheoremId>> {
    if text.trim() == "all" {
        return Ok(TheoremId::ALL.to_vec());
    }
    text.split(',')
        .map(|s| s.trim().parse())
        .collect::<Result<Vec<_>>>()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identifiers_round_trip() {
        for id in TheoremId::ALL {
            assert_eq!(id.as_str().parse::<TheoremId>().unwrap(), id);
        }
        assert!("bogus.id".parse::<TheoremId>().is_err());
        assert_eq!(parse_selection("all").unwrap().len(), 14);
        assert_eq!(
            parse_selection("inv2.natdil, rel.2to3").unwrap(),
            vec![TheoremId::Inv2NatDil, TheoremId::Rel2To3]
        );
        assert!(parse_selection("inv2.natdil,nope").is_err());
    }

    #[test]
    fn exhaustive_counts_in_gf5() {
        let r = run_case(TheoremId::Rel2To3, Case::General, Model::Gf(5), Mode::Exhaustive).unwrap();
        assert_eq!((r.trials, r.skipped), (5 * 5 * 4, 0));
        assert!(r.passed());
        let r = run_case(TheoremId::Inv3Mobius, Case::General, Model::Gf(5), Mode::Exhaustive).unwrap();
        assert_eq!(r.trials, 20 * 100);
        assert!(r.passed());
    }

    #[test]
    fn sampled_runs_are_deterministic() {
        let mode = Mode::Sampled { trials: 20, seed: 11 };
        let a = run_theorem(TheoremId::Pres3Dil, Model::Rational, mode).unwrap();
        let b = run_theorem(TheoremId::Pres3Dil, Model::Rational, mode).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 3);
        assert!(a.iter().all(CaseReport::passed));
    }

    #[test]
    fn exhaustive_needs_small_prime() {
        assert!(matches!(
            run_theorem(TheoremId::Rel2To3, Model::Rational, Mode::Exhaustive),
            Err(Error::ScopeTooLarge(_))
        ));
    }
}
