//! Ratios of two and three collinear points, built from the ruler-only
//! constructions: `r(A:B) = B^-1 A` and `r(A,B;C) = (B - C)^-1 (A - C)`.

use crate::construct::{Aux, Chart, Construction};
use crate::error::{Error, Result};
use crate::geometry::Point;
use crate::trace::ConstructionTrace;

/// A chart together with the auxiliary-point policy used for every
/// construction on it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatioContext {
    pub chart: Chart,
    pub aux: Aux,
}

impl RatioContext {
    pub fn new(chart: Chart) -> Self {
        Self {
            chart,
            aux: Aux::Auto,
        }
    }

    pub fn with_aux(chart: Chart, aux: Aux) -> Self {
        Self { chart, aux }
    }

    fn start(&self) -> Result<Construction> {
        Construction::new(&self.chart, &self.aux)
    }

    /// `B^-1 A`, traced. `A = O` gives `O`; only `B = O` is refused.
    pub fn ratio2_traced(&self, a: &Point, b: &Point) -> Result<(Point, ConstructionTrace)> {
        let mut c = self.start()?;
        let a = c.given("A", a)?;
        let b = c.given("B", b)?;
        if c.point(b) == self.chart.o() {
            return Err(Error::ZeroDenominator);
        }
        let b_inv = c.inv(b, "B^-1")?;
        let r = c.mul(b_inv, a, "R")?;
        Ok(c.finish(r))
    }

    pub fn ratio2(&self, a: &Point, b: &Point) -> Result<Point> {
        Ok(self.ratio2_traced(a, b)?.0)
    }

    /// `(B - C)^-1 (A - C)`, traced. Only `B = C` is refused.
    pub fn ratio3_traced(&self, a: &Point, b: &Point, c: &Point) -> Result<(Point, ConstructionTrace)> {
        let mut k = self.start()?;
        let a = k.given("A", a)?;
        let b = k.given("B", b)?;
        let c = k.given("C", c)?;
        if k.point(b) == k.point(c) {
            return Err(Error::CoincidentBC);
        }
        let neg_c = k.neg(c, "-C")?;
        let num = k.add(a, neg_c, "A-C")?;
        let den = k.add(b, neg_c, "B-C")?;
        let den_inv = k.inv(den, "(B-C)^-1")?;
        let r = k.mul(den_inv, num, "R")?;
        Ok(k.finish(r))
    }

    pub fn ratio3(&self, a: &Point, b: &Point, c: &Point) -> Result<Point> {
        Ok(self.ratio3_traced(a, b, c)?.0)
    }

    /// The unique `A` with `r(A:B) = R`, namely `B R`.
    pub fn ratio2_solve(&self, r: &Point, b: &Point) -> Result<Point> {
        let mut k = self.start()?;
        let r = k.given("R", r)?;
        let b = k.given("B", b)?;
        if k.point(b) == self.chart.o() {
            return Err(Error::ZeroDenominator);
        }
        let a = k.mul(b, r, "A")?;
        Ok(k.finish(a).0)
    }

    /// The unique `A` with `r(A,B;C) = R`, namely `(B - C) R + C`.
    pub fn ratio3_solve(&self, r: &Point, b: &Point, c: &Point) -> Result<Point> {
        let mut k = self.start()?;
        let r = k.given("R", r)?;
        let b = k.given("B", b)?;
        let c = k.given("C", c)?;
        if k.point(b) == k.point(c) {
            return Err(Error::CoincidentBC);
        }
        let den = k.sub(b, c, "B-C")?;
        let scaled = k.mul(den, r, "(B-C)R")?;
        let a = k.add(scaled, c, "A")?;
        Ok(k.finish(a).0)
    }

    /// `X -> r(X:B)`.
    pub fn ratio_map2(&self, b: &Point) -> Result<RatioMap2> {
        if !self.chart.contains(b)? {
            return Err(Error::OffLine);
        }
        if b == self.chart.o() {
            return Err(Error::ZeroDenominator);
        }
        Ok(RatioMap2 {
            ctx: self.clone(),
            b: b.clone(),
        })
    }

    /// `X -> r(X,B;C)`.
    pub fn ratio_map3(&self, b: &Point, c: &Point) -> Result<RatioMap3> {
        if !self.chart.contains(b)? || !self.chart.contains(c)? {
            return Err(Error::OffLine);
        }
        if b == c {
            return Err(Error::CoincidentBC);
        }
        Ok(RatioMap3 {
            ctx: self.clone(),
            b: b.clone(),
            c: c.clone(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatioMap2 {
    ctx: RatioContext,
    b: Point,
}

impl RatioMap2 {
    pub fn param(&self) -> &Point {
        &self.b
    }

    pub fn apply(&self, x: &Point) -> Result<Point> {
        self.ctx.ratio2(x, &self.b)
    }

    pub fn preimage(&self, r: &Point) -> Result<Point> {
        self.ctx.ratio2_solve(r, &self.b)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatioMap3 {
    ctx: RatioContext,
    b: Point,
    c: Point,
}

impl RatioMap3 {
    pub fn params(&self) -> (&Point, &Point) {
        (&self.b, &self.c)
    }

    pub fn apply(&self, x: &Point) -> Result<Point> {
        self.ctx.ratio3(x, &self.b, &self.c)
    }

    pub fn preimage(&self, r: &Point) -> Result<Point> {
        self.ctx.ratio3_solve(r, &self.b, &self.c)
    }
}
