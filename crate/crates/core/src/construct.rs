//! Ruler-only addition and multiplication of points on a charted line.
//!
//! Both constructions use one auxiliary point `B1` off the line and only
//! joins, parallels through a point, and intersections:
//!
//! ```text
//! addition        P1 = (parallel to OI through B1) meet (parallel to OB1 through A)
//!                 C  = (parallel to BB1 through P1) meet OI            C = A + B
//! multiplication  P1 = (parallel to IB1 through A) meet OB1
//!                 C  = (parallel to BB1 through P1) meet OI            C = A * B
//! ```
//!
//! With `O + x (I - O)` as the coordinate of a line point, the constructed
//! product has coordinate `a * b` with `A` as the left factor.
//! Negation and inversion run the same figures backwards.

use rand::Rng;

use crate::error::{Error, Result};
use crate::geometry::{join, left_factor, Line, Point};
use crate::scalar::{Model, Scalar};
use crate::trace::ConstructionTrace;

/// A line with a zero point `O` and a unit point `I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chart {
    line: Line,
    o: Point,
    i: Point,
}

impl Chart {
    pub fn new(o: Point, i: Point) -> Result<Self> {
        let line = join(&o, &i)?;
        Ok(Self { line, o, i })
    }

    /// `O = (0,0)`, `I = (1,0)`.
    pub fn standard(model: Model) -> Self {
        Self::new(Point::from_ints(model, 0, 0), Point::from_ints(model, 1, 0)).expect("distinct")
    }

    pub fn line(&self) -> &Line {
        &self.line
    }

    pub fn o(&self) -> &Point {
        &self.o
    }

    pub fn i(&self) -> &Point {
        &self.i
    }

    pub fn model(&self) -> Model {
        self.o.model()
    }

    pub fn contains(&self, p: &Point) -> Result<bool> {
        self.line.contains(p)
    }

    /// The unique `x` with `X = O + x (I - O)`.
    pub fn coordinate(&self, x: &Point) -> Result<Scalar> {
        let unit = self.i.sub(&self.o)?;
        left_factor(&unit, &x.sub(&self.o)?)?.ok_or(Error::OffLine)
    }

    /// `O + x (I - O)`.
    pub fn point(&self, x: &Scalar) -> Result<Point> {
        self.o.add(&self.i.sub(&self.o)?.scale(x)?)
    }

    pub fn random_point<R: Rng + ?Sized>(&self, rng: &mut R) -> Point {
        self.point(&self.model().random_scalar(rng)).expect("same model")
    }

    pub fn random_nonzero_point<R: Rng + ?Sized>(&self, rng: &mut R) -> Point {
        self.point(&self.model().random_nonzero(rng)).expect("same model")
    }

    /// A random point off the line.
    pub fn random_aux<R: Rng + ?Sized>(&self, rng: &mut R) -> Point {
        loop {
            let p = Point::random(self.model(), rng);
            if !self.contains(&p).expect("same model") {
                return p;
            }
        }
    }

    /// First of `(0,1), (1,1), (1,0), (0,0)` off the line; these are never
    /// all collinear.
    pub fn auto_aux(&self) -> Point {
        let m = self.model();
        [(0, 1), (1, 1), (1, 0), (0, 0)]
            .into_iter()
            .map(|(x, y)| Point::from_ints(m, x, y))
            .find(|p| !self.contains(p).expect("same model"))
            .expect("three non-collinear candidates")
    }
}

/// Choice of the auxiliary point `B1`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub enum Aux {
    #[default]
    Auto,
    At(Point),
}

/// A construction in progress on one chart, recording every step.
///
/// Point handles returned by the methods index into the trace.
#[derive(Clone, Debug)]
pub struct Construction {
    chart: Chart,
    trace: ConstructionTrace,
    o: usize,
    i: usize,
    line: usize,
    aux: usize,
    oi_through_aux: Option<usize>,
    o_aux: Option<usize>,
    i_aux: Option<usize>,
    next_aux_label: usize,
}

impl Construction {
    pub fn new(chart: &Chart, aux: &Aux) -> Result<Self> {
        let aux = match aux {
            Aux::Auto => chart.auto_aux(),
            Aux::At(p) => {
                if p.model() != chart.model() {
                    return Err(Error::ModelMismatch(p.model(), chart.model()));
                }
                if chart.contains(p)? {
                    return Err(Error::AuxOnLine);
                }
                p.clone()
            }
        };
        let mut trace = ConstructionTrace::new(chart.model());
        let o = trace.given_point("O", chart.o.clone());
        let i = trace.given_point("I", chart.i.clone());
        let line = trace.join("OI", o, i)?;
        let aux = trace.aux_point("B1", aux);
        Ok(Self {
            chart: chart.clone(),
            trace,
            o,
            i,
            line,
            aux,
            oi_through_aux: None,
            o_aux: None,
            i_aux: None,
            next_aux_label: 1,
        })
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn trace(&self) -> &ConstructionTrace {
        &self.trace
    }

    pub fn point(&self, id: usize) -> &Point {
        self.trace.point(id)
    }

    pub fn zero(&self) -> usize {
        self.o
    }

    pub fn unit(&self) -> usize {
        self.i
    }

    /// Registers an input point, which must lie on the chart line.
    pub fn given(&mut self, label: &str, p: &Point) -> Result<usize> {
        if p.model() != self.chart.model() {
            return Err(Error::ModelMismatch(p.model(), self.chart.model()));
        }
        if !self.chart.contains(p)? {
            return Err(Error::OffLine);
        }
        Ok(self.trace.given_point(label, p.clone()))
    }

    pub fn finish(mut self, output: usize) -> (Point, ConstructionTrace) {
        self.trace.set_output(output);
        (self.trace.point(output).clone(), self.trace)
    }

    fn fresh_p(&mut self) -> String {
        let label = format!("P{}", self.next_aux_label);
        self.next_aux_label += 1;
        label
    }

    fn name(&self, id: usize) -> String {
        self.trace.label(id).to_string()
    }

    fn oi_through_aux(&mut self) -> Result<usize> {
        if let Some(id) = self.oi_through_aux {
            return Ok(id);
        }
        let id = self.trace.parallel("OI||B1", self.line, self.aux)?;
        self.oi_through_aux = Some(id);
        Ok(id)
    }

    fn o_aux(&mut self) -> Result<usize> {
        if let Some(id) = self.o_aux {
            return Ok(id);
        }
        let id = self.trace.join("OB1", self.o, self.aux)?;
        self.o_aux = Some(id);
        Ok(id)
    }

    fn i_aux(&mut self) -> Result<usize> {
        if let Some(id) = self.i_aux {
            return Ok(id);
        }
        let id = self.trace.join("IB1", self.i, self.aux)?;
        self.i_aux = Some(id);
        Ok(id)
    }

    /// `P1` of the addition figure for `A`: the corner over `A` on the
    /// parallel to `OI` through `B1`.
    fn addition_corner(&mut self, a: usize) -> Result<usize> {
        let top = self.oi_through_aux()?;
        let ob1 = self.o_aux()?;
        let a_par = self.trace.parallel(format!("OB1||{}", self.name(a)), ob1, a)?;
        let label = self.fresh_p();
        self.trace.meet(label, top, a_par)
    }

    /// `P1` of the multiplication figure for `A`, on the line `OB1`.
    fn multiplication_corner(&mut self, a: usize) -> Result<usize> {
        let ib1 = self.i_aux()?;
        let ob1 = self.o_aux()?;
        let a_par = self.trace.parallel(format!("IB1||{}", self.name(a)), ib1, a)?;
        let label = self.fresh_p();
        self.trace.meet(label, a_par, ob1)
    }

    /// Shared last step: through `corner` parallel to `B B1`, meet `OI`.
    fn close_over(&mut self, corner: usize, b: usize, label: &str) -> Result<usize> {
        let bb1 = self.trace.join(format!("{}B1", self.name(b)), b, self.aux)?;
        let back = self
            .trace
            .parallel(format!("{}B1||{}", self.name(b), self.name(corner)), bb1, corner)?;
        self.trace.meet(label, back, self.line)
    }

    pub fn add(&mut self, a: usize, b: usize, label: &str) -> Result<usize> {
        let corner = self.addition_corner(a)?;
        self.close_over(corner, b, label)
    }

    /// Product with `a` as the left factor.
    pub fn mul(&mut self, a: usize, b: usize, label: &str) -> Result<usize> {
        let corner = self.multiplication_corner(a)?;
        self.close_over(corner, b, label)
    }

    /// The `B` with `A + B = O`: the parallel to `O P1` through `B1`.
    pub fn neg(&mut self, a: usize, label: &str) -> Result<usize> {
        let corner = self.addition_corner(a)?;
        let op1 = self.trace.join(format!("O{}", self.name(corner)), self.o, corner)?;
        let back = self.trace.parallel(format!("O{}||B1", self.name(corner)), op1, self.aux)?;
        self.trace.meet(label, back, self.line)
    }

    /// The `B` with `A * B = I`: the parallel to `P1 I` through `B1`.
    pub fn inv(&mut self, a: usize, label: &str) -> Result<usize> {
        if self.point(a) == self.chart.o() {
            return Err(Error::ZeroPoint);
        }
        let corner = self.multiplication_corner(a)?;
        let p1i = self.trace.join(format!("{}I", self.name(corner)), corner, self.i)?;
        let back = self.trace.parallel(format!("{}I||B1", self.name(corner)), p1i, self.aux)?;
        self.trace.meet(label, back, self.line)
    }

    /// `A + (-B)`.
    pub fn sub(&mut self, a: usize, b: usize, label: &str) -> Result<usize> {
        let neg = self.neg(b, &format!("-{}", self.name(b)))?;
        self.add(a, neg, label)
    }
}

fn binary(
    chart: &Chart,
    a: &Point,
    b: &Point,
    aux: &Aux,
    op: fn(&mut Construction, usize, usize, &str) -> Result<usize>,
) -> Result<(Point, ConstructionTrace)> {
    let mut c = Construction::new(chart, aux)?;
    let a = c.given("A", a)?;
    let b = c.given("B", b)?;
    let out = op(&mut c, a, b, "C")?;
    Ok(c.finish(out))
}

/// `C = A + B`, with the trace of the addition figure.
pub fn geo_add(chart: &Chart, a: &Point, b: &Point, aux: &Aux) -> Result<(Point, ConstructionTrace)> {
    binary(chart, a, b, aux, Construction::add)
}

/// `C = A * B` with `A` as the left factor.
pub fn geo_mul(chart: &Chart, a: &Point, b: &Point, aux: &Aux) -> Result<(Point, ConstructionTrace)> {
    binary(chart, a, b, aux, Construction::mul)
}

pub fn geo_neg(chart: &Chart, a: &Point, aux: &Aux) -> Result<(Point, ConstructionTrace)> {
    let mut c = Construction::new(chart, aux)?;
    let a = c.given("A", a)?;
    let out = c.neg(a, "-A")?;
    Ok(c.finish(out))
}

pub fn geo_inv(chart: &Chart, a: &Point, aux: &Aux) -> Result<(Point, ConstructionTrace)> {
    let mut c = Construction::new(chart, aux)?;
    let a = c.given("A", a)?;
    let out = c.inv(a, "A^-1")?;
    Ok(c.finish(out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn gf7_chart() -> Chart {
        Chart::standard(Model::Gf(7))
    }

    fn quat(c: [i64; 4]) -> Scalar {
        Model::Quaternion.quaternion(c).unwrap()
    }

    #[test]
    fn chart_coordinates() {
        let ch = gf7_chart();
        let m = Model::Gf(7);
        assert_eq!(ch.coordinate(ch.o()).unwrap(), m.zero());
        assert_eq!(ch.coordinate(ch.i()).unwrap(), m.one());
        assert_eq!(ch.coordinate(&Point::from_ints(m, 4, 0)).unwrap(), m.int(4));
        assert_eq!(ch.coordinate(&Point::from_ints(m, 4, 1)), Err(Error::OffLine));
        assert_eq!(ch.point(&m.zero()).unwrap(), *ch.o());
        assert_eq!(ch.point(&m.one()).unwrap(), *ch.i());
    }

    #[test]
    fn chart_round_trip_on_slanted_quaternion_line() {
        let q = Model::Quaternion;
        let ch = Chart::new(
            Point::new(quat([1, 0, 2, 0]), quat([0, 1, 0, 0])).unwrap(),
            Point::new(quat([0, 0, 0, 1]), quat([3, 0, 1, 1])).unwrap(),
        )
        .unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..100 {
            let x = q.random_scalar(&mut rng);
            let p = ch.point(&x).unwrap();
            assert!(ch.contains(&p).unwrap());
            assert_eq!(ch.coordinate(&p).unwrap(), x);
        }
    }

    #[test]
    fn gf7_examples() {
        let ch = gf7_chart();
        let p = |x| ch.point(&Model::Gf(7).int(x)).unwrap();
        let (c, _) = geo_add(&ch, &p(3), &p(5), &Aux::Auto).unwrap();
        assert_eq!(c, p(1));
        let (c, _) = geo_mul(&ch, &p(3), &p(5), &Aux::Auto).unwrap();
        assert_eq!(c, p(1));
        assert_eq!(geo_neg(&ch, &p(3), &Aux::Auto).unwrap().0, p(4));
        assert_eq!(geo_inv(&ch, &p(5), &Aux::Auto).unwrap().0, p(3));
    }

    #[test]
    fn identities() {
        let ch = gf7_chart();
        let p = |x| ch.point(&Model::Gf(7).int(x)).unwrap();
        for b in 0..7 {
            assert_eq!(geo_add(&ch, ch.o(), &p(b), &Aux::Auto).unwrap().0, p(b));
            assert_eq!(geo_mul(&ch, ch.i(), &p(b), &Aux::Auto).unwrap().0, p(b));
        }
        assert_eq!(geo_neg(&ch, ch.o(), &Aux::Auto).unwrap().0, *ch.o());
        assert_eq!(geo_inv(&ch, ch.i(), &Aux::Auto).unwrap().0, *ch.i());
    }

    #[test]
    fn quaternion_order_matters() {
        let ch = Chart::standard(Model::Quaternion);
        let (i, j, k) = (quat([0, 1, 0, 0]), quat([0, 0, 1, 0]), quat([0, 0, 0, 1]));
        let pi = ch.point(&i).unwrap();
        let pj = ch.point(&j).unwrap();
        let ij = geo_mul(&ch, &pi, &pj, &Aux::Auto).unwrap().0;
        let ji = geo_mul(&ch, &pj, &pi, &Aux::Auto).unwrap().0;
        assert_eq!(ch.coordinate(&ij).unwrap(), k);
        assert_eq!(ch.coordinate(&ji).unwrap(), k.neg());
        let sum = geo_add(&ch, &pi, &pj, &Aux::Auto).unwrap().0;
        assert_eq!(ch.coordinate(&sum).unwrap(), quat([0, 1, 1, 0]));
        assert_eq!(ch.coordinate(&geo_neg(&ch, &pi, &Aux::Auto).unwrap().0).unwrap(), i.neg());
        assert_eq!(ch.coordinate(&geo_inv(&ch, &pj, &Aux::Auto).unwrap().0).unwrap(), j.neg());
    }

    #[test]
    fn errors() {
        let ch = gf7_chart();
        let m = Model::Gf(7);
        let off = Point::from_ints(m, 2, 3);
        assert_eq!(
            geo_add(&ch, ch.o(), ch.i(), &Aux::At(Point::from_ints(m, 5, 0))).unwrap_err(),
            Error::AuxOnLine
        );
        assert_eq!(geo_add(&ch, &off, ch.i(), &Aux::Auto).unwrap_err(), Error::OffLine);
        assert_eq!(geo_neg(&ch, &off, &Aux::Auto).unwrap_err(), Error::OffLine);
        assert_eq!(geo_inv(&ch, ch.o(), &Aux::Auto).unwrap_err(), Error::ZeroPoint);
    }

    #[test]
    fn traces_replay_and_verify() {
        let ch = gf7_chart();
        let p = |x| ch.point(&Model::Gf(7).int(x)).unwrap();
        let (c, t) = geo_add(&ch, &p(3), &p(5), &Aux::Auto).unwrap();
        assert_eq!(t.replay().unwrap(), c);
        assert!(t.verify().is_empty());
        let labels: Vec<_> = t
            .steps()
            .iter()
            .filter(|s| matches!(s.object, crate::trace::Object::Point(_)))
            .map(|s| s.label.as_str())
            .collect();
        assert_eq!(labels, ["O", "I", "B1", "A", "B", "P1", "C"]);
        let (c, t) = geo_mul(&ch, &p(0), &p(5), &Aux::Auto).unwrap();
        assert_eq!(c, p(0));
        assert_eq!(t.replay().unwrap(), c);
    }

    #[test]
    fn auto_aux_avoids_every_line() {
        let m = Model::Gf(2);
        for o in crate::geometry::all_points(m).unwrap() {
            for i in crate::geometry::all_points(m).unwrap() {
                if let Ok(ch) = Chart::new(o.clone(), i) {
                    assert!(!ch.contains(&ch.auto_aux()).unwrap());
                }
            }
        }
    }
}
