//! Desargues configurations: hypothesis validation, the parallelism
//! conclusion, and a seeded generator for both the parallel and the
//! concurrent case.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geometry::{is_parallel, join, meet, parallel_through, Line, Point};
use crate::scalar::{Model, Scalar};

/// Bounded retries for the configuration generator.
pub const MAX_ATTEMPTS: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Axis {
    /// `AA'`, `BB'`, `CC'` pairwise parallel.
    Parallel,
    /// `AA'`, `BB'`, `CC'` through a common point.
    Concurrent(Point),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AxisKind {
    Parallel,
    Concurrent,
}

/// Two triangles `ABC` and `A'B'C'` in perspective.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DesarguesConfig {
    pub a: Point,
    pub b: Point,
    pub c: Point,
    pub a2: Point,
    pub b2: Point,
    pub c2: Point,
    pub axis: Axis,
}

impl DesarguesConfig {
    /// Checks the hypothesis of the axiom, naming the first clause that fails.
    pub fn validate(&self) -> Result<()> {
        let bad = |why: &str| Err(Error::MalformedConfig(why.to_string()));
        let pairs = [
            (&self.a, &self.b, "A = B"),
            (&self.b, &self.c, "B = C"),
            (&self.a, &self.c, "A = C"),
            (&self.a2, &self.b2, "A' = B'"),
            (&self.b2, &self.c2, "B' = C'"),
            (&self.a2, &self.c2, "A' = C'"),
            (&self.a, &self.a2, "A = A'"),
            (&self.b, &self.b2, "B = B'"),
            (&self.c, &self.c2, "C = C'"),
        ];
        for (p, q, why) in pairs {
            if p == q {
                return bad(why);
            }
        }
        let aa = join(&self.a, &self.a2)?;
        let bb = join(&self.b, &self.b2)?;
        let cc = join(&self.c, &self.c2)?;
        if aa == bb || bb == cc || aa == cc {
            return bad("connecting lines are not pairwise distinct");
        }
        match &self.axis {
            Axis::Parallel => {
                if !(is_parallel(&aa, &bb) && is_parallel(&bb, &cc)) {
                    return bad("connecting lines are not parallel");
                }
            }
            Axis::Concurrent(p) => {
                if !(aa.contains(p)? && bb.contains(p)? && cc.contains(p)?) {
                    return bad("connecting lines do not pass through P");
                }
            }
        }
        let (ab, ab2) = (join(&self.a, &self.b)?, join(&self.a2, &self.b2)?);
        let (bc, bc2) = (join(&self.b, &self.c)?, join(&self.b2, &self.c2)?);
        if !is_parallel(&ab, &ab2) || ab == ab2 {
            return bad("AB and A'B' are not distinct parallels");
        }
        if !is_parallel(&bc, &bc2) || bc == bc2 {
            return bad("BC and B'C' are not distinct parallels");
        }
        Ok(())
    }
}

/// The conclusion `AC || A'C'` for a configuration satisfying the hypothesis.
pub fn check_desargues(cfg: &DesarguesConfig) -> Result<bool> {
    cfg.validate()?;
    Ok(is_parallel(
        &join(&cfg.a, &cfg.c)?,
        &join(&cfg.a2, &cfg.c2)?,
    ))
}

/// A random configuration built with joins, parallels and meets only: `A'`
/// is placed on its connector, `B'` and `C'` are found by transporting `AB`
/// and `BC`. Degenerate draws are retried up to [`MAX_ATTEMPTS`] times.
pub fn sample_desargues_config(model: Model, kind: AxisKind, seed: u64) -> Result<DesarguesConfig> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_ATTEMPTS {
        let [a, b, c, centre] = [(); 4].map(|_| Point::random(model, &mut rng));
        let t = model.random_nonzero(&mut rng);
        if let Ok(cfg) = perspective_triangles(kind, a, b, c, centre, &t) {
            return Ok(cfg);
        }
    }
    Err(Error::GeneratorExhausted(MAX_ATTEMPTS))
}

/// `centre` is the perspective point, or the connector direction in the
/// parallel case.
fn perspective_triangles(
    kind: AxisKind,
    a: Point,
    b: Point,
    c: Point,
    centre: Point,
    t: &Scalar,
) -> Result<DesarguesConfig> {
    let connector = |x: &Point| match kind {
        AxisKind::Parallel => Line::new(x.clone(), centre.clone()),
        AxisKind::Concurrent => join(&centre, x),
    };
    let a2 = connector(&a)?.point_at(t)?;
    let b2 = meet(&parallel_through(&join(&a, &b)?, &a2)?, &connector(&b)?)?.point()?;
    let c2 = meet(&parallel_through(&join(&b, &c)?, &b2)?, &connector(&c)?)?.point()?;
    let axis = match kind {
        AxisKind::Parallel => Axis::Parallel,
        AxisKind::Concurrent => Axis::Concurrent(centre),
    };
    let cfg = DesarguesConfig {
        a,
        b,
        c,
        a2,
        b2,
        c2,
        axis,
    };
    cfg.validate()?;
    Ok(cfg)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generated_configs_are_valid() {
        let cases = [
            (Model::Gf(7), AxisKind::Parallel, 1),
            (Model::Gf(7), AxisKind::Concurrent, 2),
            (Model::Quaternion, AxisKind::Parallel, 3),
            (Model::Rational, AxisKind::Concurrent, 4),
        ];
        for (model, kind, seed) in cases {
            let cfg = sample_desargues_config(model, kind, seed).unwrap();
            cfg.validate().unwrap();
            assert_eq!(matches!(cfg.axis, Axis::Concurrent(_)), kind == AxisKind::Concurrent);
            assert!(check_desargues(&cfg).unwrap());
        }
    }

    #[test]
    fn degenerate_config_is_rejected() {
        let mut cfg = sample_desargues_config(Model::Gf(7), AxisKind::Parallel, 1).unwrap();
        cfg.c = cfg.a.clone();
        assert!(matches!(check_desargues(&cfg), Err(Error::MalformedConfig(_))));
    }

    #[test]
    fn gf2_cannot_host_a_configuration() {
        // four points are too few for two disjoint triangles
        assert_eq!(
            sample_desargues_config(Model::Gf(2), AxisKind::Concurrent, 0),
            Err(Error::GeneratorExhausted(MAX_ATTEMPTS))
        );
    }
}
