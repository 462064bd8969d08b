//! Affine-plane axiom checks: unique joining line, unique parallel through a
//! point, and a non-collinear triple.

use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{self, all_lines, all_points, join, meet, parallel_through, Line, Meet, Point};
use crate::scalar::Model;

/// Largest prime for which exhaustive enumeration is allowed.
pub const MAX_EXHAUSTIVE_PRIME: u32 = 13;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scope {
    Exhaustive,
    Sampled { n: usize, seed: u64 },
}

/// A violated axiom clause with the points that witness it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub model: String,
    pub clause: String,
    pub points: Vec<String>,
}

impl Certificate {
    fn new(model: Model, clause: &str, points: &[&Point]) -> Self {
        Self {
            model: model.to_string(),
            clause: clause.to_string(),
            points: points.iter().map(|p| p.to_string()).collect(),
        }
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "model: {}", self.model)?;
        writeln!(f, "clause: {}", self.clause)?;
        write!(f, "points: {}", self.points.join(" "))
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct AxiomReport {
    pub points: Option<usize>,
    pub lines: Option<usize>,
    pub checks: usize,
    pub violations: Vec<Certificate>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn check_axioms(model: Model, scope: Scope) -> Result<AxiomReport> {
    match scope {
        Scope::Exhaustive => match model {
            Model::Gf(p) if p <= MAX_EXHAUSTIVE_PRIME => Ok(exhaustive(model)),
            _ => Err(Error::ScopeTooLarge(format!(
                "exhaustive axiom check needs gf(p) with p <= {MAX_EXHAUSTIVE_PRIME}, got {model}"
            ))),
        },
        Scope::Sampled { n, seed } => sampled(model, n, seed),
    }
}

/// Works from the point sets of every line, so it does not rely on `meet`.
fn exhaustive(model: Model) -> AxiomReport {
    let points = all_points(model).expect("finite model");
    let lines = all_lines(model).expect("finite model");
    let index = |p: &Point| points.iter().position(|q| q == p).expect("enumerated");
    let words = points.len().div_ceil(64);
    let incidence: Vec<Bits> = lines
        .iter()
        .map(|l| {
            let mut row = Bits(vec![0; words]);
            for p in l.points().expect("finite") {
                row.set(index(&p));
            }
            row
        })
        .collect();
    let mut report = AxiomReport {
        points: Some(points.len()),
        lines: Some(lines.len()),
        ..Default::default()
    };
    let q = points.len();
    let order = (q as f64).sqrt().round() as usize;

    for (li, row) in incidence.iter().enumerate() {
        report.checks += 1;
        let count = row.count();
        if count != order {
            report.violations.push(Certificate::new(
                model,
                &format!("line {} has {count} points, expected {order}", lines[li]),
                &[],
            ));
        }
    }

    for a in 0..q {
        for b in a + 1..q {
            report.checks += 1;
            let through = incidence.iter().filter(|row| row.get(a) && row.get(b)).count();
            if through != 1 {
                report.violations.push(Certificate::new(
                    model,
                    &format!("1: {through} lines through two distinct points"),
                    &[&points[a], &points[b]],
                ));
            }
        }
    }

    for row in &incidence {
        for (p, point) in points.iter().enumerate() {
            report.checks += 1;
            let candidates = incidence
                .iter()
                .filter(|other| other.get(p) && (*other == row || other.disjoint(row)))
                .count();
            if candidates != 1 {
                report.violations.push(Certificate::new(
                    model,
                    &format!("2: {candidates} lines through the point parallel to a line"),
                    &[point],
                ));
            }
        }
    }

    report.checks += 1;
    let non_collinear = (0..q).any(|a| {
        (0..q).any(|b| {
            (0..q).any(|c| {
                incidence
                    .iter()
                    .all(|row| !(row.get(a) && row.get(b) && row.get(c)))
            })
        })
    });
    if !non_collinear {
        report
            .violations
            .push(Certificate::new(model, "3: every triple is collinear", &[]));
    }
    report
}

/// Incidence row of one line over the enumerated points.
#[derive(PartialEq, Eq)]
struct Bits(Vec<u64>);

impl Bits {
    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn get(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn disjoint(&self, other: &Bits) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & b == 0)
    }
}

fn sampled(model: Model, n: usize, seed: u64) -> Result<AxiomReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = AxiomReport::default();
    let fail = |report: &mut AxiomReport, clause: &str, pts: &[&Point]| {
        report.violations.push(Certificate::new(model, clause, pts));
    };
    for _ in 0..n {
        let p = Point::random(model, &mut rng);
        let q = Point::random(model, &mut rng);
        if p == q {
            continue;
        }
        report.checks += 1;
        let l = join(&p, &q)?;
        if !l.contains(&p)? || !l.contains(&q)? || l != join(&q, &p)? {
            fail(&mut report, "1: joining line misses a point", &[&p, &q]);
        }
        // any third point of the line spans the same line with p
        let t = model.random_nonzero(&mut rng);
        let r = p.add(&q.sub(&p)?.scale(&t)?)?;
        if r != p && join(&p, &r)? != l {
            fail(&mut report, "1: two lines through two distinct points", &[&p, &q, &r]);
        }

        let x = Point::random(model, &mut rng);
        let par = parallel_through(&l, &x)?;
        let expected = if l.contains(&x)? {
            Meet::Identical
        } else {
            Meet::Parallel
        };
        if !par.contains(&x)? || meet(&l, &par)? != expected {
            fail(&mut report, "2: parallel through a point is not parallel", &[&p, &q, &x]);
        }
        let y = Point::random(model, &mut rng);
        if y != x && !par.contains(&y)? {
            let other = join(&x, &y)?;
            if !matches!(meet(&other, &l)?, Meet::Point(_)) {
                fail(&mut report, "2: second parallel through a point", &[&p, &q, &x, &y]);
            }
        }
    }
    report.checks += 1;
    let (o, e1, e2) = (
        Point::from_ints(model, 0, 0),
        Point::from_ints(model, 1, 0),
        Point::from_ints(model, 0, 1),
    );
    if geometry::collinear(&o, &e1, &e2)? {
        fail(&mut report, "3: every triple is collinear", &[&o, &e1, &e2]);
    }
    Ok(report)
}

/// All lines through `p` parallel to `l`, for finite models.
pub fn parallels_through(l: &Line, p: &Point) -> Option<Vec<Line>> {
    let lines = all_lines(l.model())?;
    Some(
        lines
            .into_iter()
            .filter(|m| m.contains(p).unwrap_or(false) && geometry::is_parallel(m, l))
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf5_exhaustive() {
        let r = check_axioms(Model::Gf(5), Scope::Exhaustive).unwrap();
        assert_eq!(r.points, Some(25));
        assert_eq!(r.lines, Some(30));
        assert!(r.passed(), "{:?}", r.violations);
    }

    #[test]
    fn gf2_is_the_four_point_plane() {
        let r = check_axioms(Model::Gf(2), Scope::Exhaustive).unwrap();
        assert_eq!((r.points, r.lines), (Some(4), Some(6)));
        assert!(r.passed());
    }

    #[test]
    fn sampled_models() {
        for model in [Model::Rational, Model::Quaternion, Model::Gf(11)] {
            let r = check_axioms(model, Scope::Sampled { n: 500, seed: 3 }).unwrap();
            assert!(r.passed(), "{model}: {:?}", r.violations);
            assert!(r.checks > 400);
        }
    }

    #[test]
    fn scope_limits() {
        assert!(matches!(
            check_axioms(Model::Gf(17), Scope::Exhaustive),
            Err(Error::ScopeTooLarge(_))
        ));
        assert!(matches!(
            check_axioms(Model::Rational, Scope::Exhaustive),
            Err(Error::ScopeTooLarge(_))
        ));
        assert!(Model::gf(4).is_err());
    }

    #[test]
    fn parallel_through_is_unique_in_gf5() {
        let model = Model::Gf(5);
        for l in all_lines(model).unwrap() {
            for p in all_points(model).unwrap() {
                let found = parallels_through(&l, &p).unwrap();
                assert_eq!(found, vec![parallel_through(&l, &p).unwrap()]);
            }
        }
    }

    #[test]
    fn certificate_text() {
        let c = Certificate::new(Model::Gf(5), "1: example", &[&Point::from_ints(Model::Gf(5), 1, 2)]);
        assert_eq!(c.to_string(), "model: gf(5)\nclause: 1: example\npoints: (1, 2)");
    }
}
