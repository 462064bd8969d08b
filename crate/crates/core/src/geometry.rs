//! The coordinate plane `K x K` over a skew field `K`.
//!
//! Lines are parametric `{ base + t * dir : t in K }` with scalars acting on the
//! left. Every [`Line`] is stored in canonical form (direction `(1, m)` or
//! `(0, 1)`, base on the axis the direction does not run along), so two lines
//! are the same point set exactly when they compare equal.

use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};
use crate::scalar::{Model, Scalar};

/// A point of the plane, also used as a vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Point {
    x: Scalar,
    y: Scalar,
}

impl Point {
    pub fn new(x: Scalar, y: Scalar) -> Result<Self> {
        if x.model() != y.model() {
            return Err(Error::ModelMismatch(x.model(), y.model()));
        }
        Ok(Self { x, y })
    }

    pub fn from_ints(model: Model, x: i64, y: i64) -> Self {
        Self {
            x: model.int(x),
            y: model.int(y),
        }
    }

    pub fn origin(model: Model) -> Self {
        Self::from_ints(model, 0, 0)
    }

    pub fn x(&self) -> &Scalar {
        &self.x
    }

    pub fn y(&self) -> &Scalar {
        &self.y
    }

    pub fn model(&self) -> Model {
        self.x.model()
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn add(&self, v: &Point) -> Result<Point> {
        Ok(Point {
            x: self.x.add(&v.x)?,
            y: self.y.add(&v.y)?,
        })
    }

    pub fn sub(&self, v: &Point) -> Result<Point> {
        Ok(Point {
            x: self.x.sub(&v.x)?,
            y: self.y.sub(&v.y)?,
        })
    }

    pub fn neg(&self) -> Point {
        Point {
            x: self.x.neg(),
            y: self.y.neg(),
        }
    }

    /// Left scalar multiple `t * self`.
    pub fn scale(&self, t: &Scalar) -> Result<Point> {
        Ok(Point {
            x: t.mul(&self.x)?,
            y: t.mul(&self.y)?,
        })
    }

    pub fn random<R: Rng + ?Sized>(model: Model, rng: &mut R) -> Point {
        Point {
            x: model.random_scalar(rng),
            y: model.random_scalar(rng),
        }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// The `t` with `v = t * u`, if `v` is a left multiple of the nonzero `u`.
pub fn left_factor(u: &Point, v: &Point) -> Result<Option<Scalar>> {
    let t = if !u.x.is_zero() {
        v.x.mul(&u.x.inv()?)?
    } else if !u.y.is_zero() {
        v.y.mul(&u.y.inv()?)?
    } else {
        return Err(Error::ZeroDirection);
    };
    Ok((u.scale(&t)? == *v).then_some(t))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Line {
    base: Point,
    dir: Point,
}

impl Line {
    /// The line through `base` along `dir`, canonicalized.
    pub fn new(base: Point, dir: Point) -> Result<Self> {
        if base.model() != dir.model() {
            return Err(Error::ModelMismatch(base.model(), dir.model()));
        }
        if dir.is_zero() {
            return Err(Error::ZeroDirection);
        }
        let model = dir.model();
        let dir = if !dir.x.is_zero() {
            let s = dir.x.inv()?;
            Point {
                x: model.one(),
                y: s.mul(&dir.y)?,
            }
        } else {
            Point::from_ints(model, 0, 1)
        };
        let shift = if dir.x.is_one() { &base.x } else { &base.y };
        let base = base.sub(&dir.scale(shift)?)?;
        Ok(Self { base, dir })
    }

    pub fn base(&self) -> &Point {
        &self.base
    }

    pub fn dir(&self) -> &Point {
        &self.dir
    }

    pub fn model(&self) -> Model {
        self.base.model()
    }

    /// `base + t * dir`.
    pub fn point_at(&self, t: &Scalar) -> Result<Point> {
        self.base.add(&self.dir.scale(t)?)
    }

    pub fn contains(&self, p: &Point) -> Result<bool> {
        let d = p.sub(&self.base)?;
        Ok(if self.dir.x.is_one() {
            d.y == d.x.mul(&self.dir.y)?
        } else {
            d.x.is_zero()
        })
    }

    /// All points of the line, for finite models.
    pub fn points(&self) -> Option<Vec<Point>> {
        let elems = self.model().elements()?;
        Some(
            elems
                .iter()
                .map(|t| self.point_at(t).expect("same model"))
                .collect(),
        )
    }
}

impl fmt::Display for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + t{}", self.base, self.dir)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Meet {
    Point(Point),
    Parallel,
    Identical,
}

impl Meet {
    pub fn point(self) -> Result<Point> {
        match self {
            Meet::Point(p) => Ok(p),
            _ => Err(Error::NoIntersection),
        }
    }
}

pub fn join(p: &Point, q: &Point) -> Result<Line> {
    if p == q {
        return Err(Error::CoincidentPoints);
    }
    Line::new(p.clone(), q.sub(p)?)
}

pub fn parallel_through(l: &Line, p: &Point) -> Result<Line> {
    Line::new(p.clone(), l.dir.clone())
}

pub fn is_parallel(l1: &Line, l2: &Line) -> bool {
    l1.dir == l2.dir
}

/// Intersection of two lines by elimination on the canonical directions.
///
/// With `l1 = b1 + s d1` and `l2 = b2 + t d2`, the unknowns `s, t` multiply
/// the direction coordinates from the left, so every division below is a
/// right multiplication by an inverse.
pub fn meet(l1: &Line, l2: &Line) -> Result<Meet> {
    if l1.model() != l2.model() {
        return Err(Error::ModelMismatch(l1.model(), l2.model()));
    }
    if is_parallel(l1, l2) {
        return Ok(if l1 == l2 {
            Meet::Identical
        } else {
            Meet::Parallel
        });
    }
    let c = l2.base.sub(&l1.base)?;
    let d2 = &l2.dir;
    let t = if l1.dir.x.is_one() {
        // s = cx + t d2x ;  t (d2x m - d2y) = cy - cx m
        let m = &l1.dir.y;
        let coeff = d2.x.mul(m)?.sub(&d2.y)?;
        c.y.sub(&c.x.mul(m)?)?.mul(&coeff.inv()?)?
    } else {
        // d1 = (0, 1):  -t d2x = cx
        c.x.neg().mul(&d2.x.inv()?)?
    };
    let p = l2.point_at(&t)?;
    if !l1.contains(&p)? || !l2.contains(&p)? {
        return Err(Error::NoIntersection);
    }
    Ok(Meet::Point(p))
}

/// True when the three points lie on one line, including any coincidences.
pub fn collinear(a: &Point, b: &Point, c: &Point) -> Result<bool> {
    if a == b || a == c || b == c {
        return Ok(true);
    }
    join(a, b)?.contains(c)
}

/// Every line of the plane over a finite model, canonical and distinct.
pub fn all_lines(model: Model) -> Option<Vec<Line>> {
    let elems = model.elements()?;
    let zero = model.zero();
    let one = model.one();
    let mut lines = Vec::with_capacity(elems.len() * (elems.len() + 1));
    for m in &elems {
        for y in &elems {
            lines.push(Line {
                base: Point::new(zero.clone(), y.clone()).ok()?,
                dir: Point::new(one.clone(), m.clone()).ok()?,
            });
        }
    }
    for x in &elems {
        lines.push(Line {
            base: Point::new(x.clone(), zero.clone()).ok()?,
            dir: Point::new(zero.clone(), one.clone()).ok()?,
        });
    }
    Some(lines)
}

pub fn all_points(model: Model) -> Option<Vec<Point>> {
    let elems = model.elements()?;
    elems
            .iter()
            .flat_map(|x| elems.iter().map(move |y| Point::new(x.clone(), y.clone())))
            .collect::<Result<Vec<_>>>()
            .ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(model: Model, x: i64, y: i64) -> Point {
        Point::from_ints(model, x, y)
    }

    fn quat(c: [i64; 4]) -> Scalar {
        Model::Quaternion.quaternion(c).unwrap()
    }

    #[test]
    fn join_axes() {
        let m = Model::Rational;
        let x_axis = join(&pt(m, 0, 0), &pt(m, 1, 0)).unwrap();
        assert_eq!(x_axis.base(), &pt(m, 0, 0));
        assert_eq!(x_axis.dir(), &pt(m, 1, 0));
        let y_axis = join(&pt(m, 0, 0), &pt(m, 0, 1)).unwrap();
        assert_eq!(y_axis.dir(), &pt(m, 0, 1));
        assert_eq!(join(&pt(m, 1, 1), &pt(m, 1, 1)), Err(Error::CoincidentPoints));
    }

    #[test]
    fn join_in_gf5_contains_both() {
        let m = Model::Gf(5);
        let (p, q) = (pt(m, 1, 2), pt(m, 3, 4));
        let l = join(&p, &q).unwrap();
        assert!(l.contains(&p).unwrap());
        assert!(l.contains(&q).unwrap());
        assert_eq!(l, join(&q, &p).unwrap());
    }

    #[test]
    fn parallel_through_cases() {
        let m = Model::Rational;
        let x_axis = join(&pt(m, 0, 0), &pt(m, 1, 0)).unwrap();
        let l = parallel_through(&x_axis, &pt(m, 0, 1)).unwrap();
        assert_eq!(l, join(&pt(m, 5, 1), &pt(m, -2, 1)).unwrap());
        assert_eq!(parallel_through(&x_axis, &pt(m, 3, 0)).unwrap(), x_axis);

        let g = Model::Gf(7);
        let l = Line::new(pt(g, 0, 0), pt(g, 1, 3)).unwrap();
        let p = pt(g, 2, 2);
        let par = parallel_through(&l, &p).unwrap();
        assert!(par.contains(&p).unwrap());
        assert_eq!(meet(&l, &par).unwrap(), Meet::Parallel);
    }

    #[test]
    fn meet_cases() {
        let m = Model::Rational;
        let x_axis = join(&pt(m, 0, 0), &pt(m, 1, 0)).unwrap();
        let y_axis = join(&pt(m, 0, 0), &pt(m, 0, 1)).unwrap();
        assert_eq!(meet(&x_axis, &y_axis).unwrap(), Meet::Point(pt(m, 0, 0)));
        assert_eq!(meet(&y_axis, &x_axis).unwrap(), Meet::Point(pt(m, 0, 0)));
        let shifted = parallel_through(&x_axis, &pt(m, 0, 2)).unwrap();
        assert_eq!(meet(&x_axis, &shifted).unwrap(), Meet::Parallel);
        assert_eq!(meet(&x_axis, &x_axis).unwrap(), Meet::Identical);
    }

    #[test]
    fn meet_in_quaternions() {
        let q = Model::Quaternion;
        let l1 = Line::new(pt(q, 0, 0), pt(q, 1, 0)).unwrap();
        let l2 = Line::new(pt(q, 1, 0), Point::new(quat([0, 1, 0, 0]), q.one()).unwrap()).unwrap();
        let p = meet(&l1, &l2).unwrap().point().unwrap();
        assert!(l1.contains(&p).unwrap());
        assert!(l2.contains(&p).unwrap());
        assert_eq!(p, pt(q, 1, 0));

        // A line pair where the answer is not on an axis.
        let l3 = Line::new(
            Point::new(quat([0, 0, 1, 0]), quat([1, 1, 0, 0])).unwrap(),
            Point::new(quat([2, 0, 0, 1]), quat([0, 1, 1, 0])).unwrap(),
        )
        .unwrap();
        let l4 = Line::new(
            Point::new(quat([1, 0, 0, 0]), quat([0, 0, 0, 3])).unwrap(),
            Point::new(quat([0, 1, 0, 0]), quat([1, 0, 0, 0])).unwrap(),
        )
        .unwrap();
        let p = meet(&l3, &l4).unwrap().point().unwrap();
        assert!(l3.contains(&p).unwrap() && l4.contains(&p).unwrap());
    }

    #[test]
    fn parallelism_is_left_proportionality() {
        let q = Model::Quaternion;
        let i = quat([0, 1, 0, 0]);
        let l1 = Line::new(pt(q, 0, 0), Point::new(i.clone(), q.one()).unwrap()).unwrap();
        let l2 = Line::new(pt(q, 3, 1), Point::new(q.int(-1), i.clone()).unwrap()).unwrap();
        assert!(is_parallel(&l1, &l2));
        // (i, 1) * i on the right gives (-1, i) too, but (1, i) is not a left multiple.
        let l3 = Line::new(pt(q, 0, 0), Point::new(q.one(), i).unwrap()).unwrap();
        assert!(!is_parallel(&l1, &l3));
        assert!(is_parallel(&l1, &l1));
    }

    #[test]
    fn collinear_cases() {
        let m = Model::Rational;
        assert!(collinear(&pt(m, 0, 0), &pt(m, 1, 0), &pt(m, 2, 0)).unwrap());
        assert!(!collinear(&pt(m, 0, 0), &pt(m, 1, 0), &pt(m, 0, 1)).unwrap());
        assert!(collinear(&pt(m, 0, 0), &pt(m, 0, 0), &pt(m, 0, 1)).unwrap());
        let g = Model::Gf(5);
        // C - A = (2, 4) = 2 * (1, 2) = 2 * (B - A)
        assert!(collinear(&pt(g, 1, 1), &pt(g, 2, 3), &pt(g, 3, 0)).unwrap());
        assert!(!collinear(&pt(g, 1, 1), &pt(g, 2, 3), &pt(g, 3, 1)).unwrap());
    }

    #[test]
    fn finite_plane_counts() {
        let m = Model::Gf(5);
        assert_eq!(all_points(m).unwrap().len(), 25);
        let lines = all_lines(m).unwrap();
        assert_eq!(lines.len(), 30);
        for l in &lines {
            assert_eq!(Line::new(l.base.clone(), l.dir.clone()).unwrap(), *l);
        }
        assert!(all_lines(Model::Rational).is_none());
    }
}
