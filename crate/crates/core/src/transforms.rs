//! Maps of a charted line into itself (inversion, natural translation,
//! natural dilatation, Möbius maps) and maps of the plane (translation,
//! dilatation, parallel projection), together with the checks that a map
//! leaves ratios fixed or carries them to ratios of the images.

use crate::construct::{Aux, Chart, Construction};
use crate::error::{Error, Result};
use crate::geometry::{is_parallel, meet, parallel_through, Line, Point};
use crate::ratio::RatioContext;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LineTransformKind {
    /// `X -> P X`
    Inversion(Point),
    /// `X -> P + X`
    NaturalTranslation(Point),
    /// `X -> X + ... + X` (`n` terms)
    NaturalDilatation(u64),
    /// `X -> r(X:B)`
    Mobius2(Point),
    /// `X -> r(X,B;C)`
    Mobius3(Point, Point),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineTransform {
    kind: LineTransformKind,
    ctx: RatioContext,
}

impl LineTransform {
    pub fn new(kind: LineTransformKind, ctx: RatioContext) -> Result<Self> {
        let chart = &ctx.chart;
        let on_line = |p: &Point| -> Result<()> {
            if chart.contains(p)? {
                Ok(())
            } else {
                Err(Error::InvalidParameter("parameter point is off the chart line".into()))
            }
        };
        match &kind {
            LineTransformKind::Inversion(p) | LineTransformKind::Mobius2(p) => {
                on_line(p)?;
                if p == chart.o() {
                    return Err(Error::InvalidParameter("parameter point must differ from O".into()));
                }
            }
            LineTransformKind::NaturalTranslation(p) => on_line(p)?,
            LineTransformKind::NaturalDilatation(n) => {
                if *n == 0 || chart.model().one().nat(*n).is_zero() {
                    return Err(Error::InvalidParameter(format!(
                        "n = {n} is zero in {}",
                        chart.model()
                    )));
                }
            }
            LineTransformKind::Mobius3(b, c) => {
                on_line(b)?;
                on_line(c)?;
                if b == c {
                    return Err(Error::InvalidParameter("B and C must differ".into()));
                }
            }
        }
        Ok(Self { kind, ctx })
    }

    pub fn kind(&self) -> &LineTransformKind {
        &self.kind
    }

    pub fn context(&self) -> &RatioContext {
        &self.ctx
    }

    /// Image of a line point, by construction.
    pub fn apply(&self, x: &Point) -> Result<Point> {
        if !self.ctx.chart.contains(x)? {
            return Err(Error::OffLine);
        }
        let mut k = Construction::new(&self.ctx.chart, &self.ctx.aux)?;
        let out = match &self.kind {
            LineTransformKind::Inversion(p) => {
                let p = k.given("P", p)?;
                let x = k.given("X", x)?;
                k.mul(p, x, "PX")?
            }
            LineTransformKind::NaturalTranslation(p) => {
                let p = k.given("P", p)?;
                let x = k.given("X", x)?;
                k.add(p, x, "P+X")?
            }
            LineTransformKind::NaturalDilatation(n) => {
                let x = k.given("X", x)?;
                let mut acc = x;
                for i in 2..=*n {
                    acc = k.add(acc, x, &format!("{i}X"))?;
                }
                acc
            }
            LineTransformKind::Mobius2(b) => return self.ctx.ratio2(x, b),
            LineTransformKind::Mobius3(b, c) => return self.ctx.ratio3(x, b, c),
        };
        Ok(k.finish(out).0)
    }
}

/// `r(t(A):t(B)) = r(A:B)`.
pub fn check_invariance_2(t: &LineTransform, a: &Point, b: &Point) -> Result<bool> {
    let ctx = &t.ctx;
    if b == ctx.chart.o() {
        return Err(Error::PreconditionViolated("B = O".into()));
    }
    let (ta, tb) = (t.apply(a)?, t.apply(b)?);
    if tb == *ctx.chart.o() {
        return Err(Error::PreconditionViolated("t(B) = O".into()));
    }
    Ok(ctx.ratio2(&ta, &tb)? == ctx.ratio2(a, b)?)
}

/// `r(t(A),t(B);t(C)) = r(A,B;C)`.
pub fn check_invariance_3(t: &LineTransform, a: &Point, b: &Point, c: &Point) -> Result<bool> {
    let ctx = &t.ctx;
    if b == c {
        return Err(Error::PreconditionViolated("B = C".into()));
    }
    let (ta, tb, tc) = (t.apply(a)?, t.apply(b)?, t.apply(c)?);
    if tb == tc {
        return Err(Error::PreconditionViolated("t(B) = t(C)".into()));
    }
    Ok(ctx.ratio3(&ta, &tb, &tc)? == ctx.ratio3(a, b, c)?)
}

/// `r(A:B) = r(P+A, P+B; P)`.
pub fn check_relation_2to3(ctx: &RatioContext, p: &Point, a: &Point, b: &Point) -> Result<bool> {
    if b == ctx.chart.o() {
        return Err(Error::PreconditionViolated("B = O".into()));
    }
    let shift = LineTransform::new(LineTransformKind::NaturalTranslation(p.clone()), ctx.clone())?;
    let (pa, pb) = (shift.apply(a)?, shift.apply(b)?);
    Ok(ctx.ratio2(a, b)? == ctx.ratio3(&pa, &pb, p)?)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PlaneMap {
    /// `X -> X + v`
    Translation(Point),
    /// `X -> V + λ (X - V)`, `λ` acting on the left.
    Dilatation { centre: Point, factor: Scalar },
    /// `X -> (parallel to direction through X) meet target`, for X on source.
    ParallelProjection {
        source: Line,
        target: Line,
        direction: Line,
    },
}

impl PlaneMap {
    pub fn translation(v: Point) -> Self {
        PlaneMap::Translation(v)
    }

    pub fn dilatation(centre: Point, factor: Scalar) -> Result<Self> {
        if factor.is_zero() {
            return Err(Error::InvalidParameter("dilatation factor must be nonzero".into()));
        }
        if factor.model() != centre.model() {
            return Err(Error::ModelMismatch(factor.model(), centre.model()));
        }
        Ok(PlaneMap::Dilatation { centre, factor })
    }

    /// When source and target are parallel the projection is the
    /// translation carrying one onto the other; when they coincide it is
    /// the identity. Both fall out of the same meet.
    pub fn parallel_projection(source: Line, target: Line, direction: Line) -> Result<Self> {
        if is_parallel(&direction, &source) || is_parallel(&direction, &target) {
            return Err(Error::InvalidParameter(
                "projection direction is parallel to the source or target".into(),
            ));
        }
        Ok(PlaneMap::ParallelProjection {
            source,
            target,
            direction,
        })
    }

    pub fn apply(&self, x: &Point) -> Result<Point> {
        match self {
            PlaneMap::Translation(v) => x.add(v),
            PlaneMap::Dilatation { centre, factor } => centre.add(&x.sub(centre)?.scale(factor)?),
            PlaneMap::ParallelProjection {
                source,
                target,
                direction,
            } => {
                if !source.contains(x)? {
                    return Err(Error::OffLine);
                }
                meet(&parallel_through(direction, x)?, target)?
                    .point()
                    .map_err(|_| Error::ProjectionUndefined)
            }
        }
    }

    /// The chart on the image line with `O' = m(O)` and `I' = m(I)`.
    pub fn image_chart(&self, ch: &Chart) -> Result<Chart> {
        if let PlaneMap::ParallelProjection { source, .. } = self {
            if source != ch.line() {
                return Err(Error::PreconditionViolated("chart is not on the projection source".into()));
            }
        }
        let (o, i) = (self.apply(ch.o())?, self.apply(ch.i())?);
        Chart::new(o, i).map_err(|_| Error::DegenerateImage("O and I have the same image".into()))
    }

    /// `X -> κ X + c` for translations and dilatations.
    fn affine_form(&self) -> Option<Result<(Scalar, Point)>> {
        match self {
            PlaneMap::Translation(v) => Some(Ok((v.model().one(), v.clone()))),
            PlaneMap::Dilatation { centre, factor } => {
                Some(centre.sub(&centre.scale(factor).ok()?).map(|c| (factor.clone(), c)))
            }
            PlaneMap::ParallelProjection { .. } => None,
        }
    }

    fn from_affine_form(kappa: Scalar, c: Point) -> Result<Self> {
        if kappa.is_one() {
            return Ok(PlaneMap::Translation(c));
        }
        // fixed point F = (1 - κ)^-1 c
        let f = c.scale(&kappa.model().one().sub(&kappa)?.inv()?)?;
        PlaneMap::dilatation(f, kappa)
    }
}

/// Result of composing two plane maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Composed {
    Map(PlaneMap),
    /// Chains involving a projection, applied right to left.
    General(Vec<PlaneMap>),
}

impl Composed {
    pub fn apply(&self, x: &Point) -> Result<Point> {
        match self {
            Composed::Map(m) => m.apply(x),
            Composed::General(maps) => maps.iter().rev().try_fold(x.clone(), |p, m| m.apply(&p)),
        }
    }
}

/// `outer ∘ inner`: apply `inner` first.
pub fn compose_plane_maps(outer: &PlaneMap, inner: &PlaneMap) -> Result<Composed> {
    match (outer.affine_form(), inner.affine_form()) {
        (Some(o), Some(i)) => {
            let (k1, c1) = o?;
            let (k2, c2) = i?;
            // k1 (k2 X + c2) + c1
            let kappa = k1.mul(&k2)?;
            let c = c2.scale(&k1)?.add(&c1)?;
            Ok(Composed::Map(PlaneMap::from_affine_form(kappa, c)?))
        }
        _ => Ok(Composed::General(vec![outer.clone(), inner.clone()])),
    }
}

/// `m(ratio in ch) = ratio of the images in the image chart`, for two or
/// three points on the chart line.
pub fn check_preservation(m: &PlaneMap, ch: &Chart, points: &[Point], aux: &Aux) -> Result<bool> {
    for p in points {
        if !ch.contains(p)? {
            return Err(Error::PreconditionViolated("point off the chart line".into()));
        }
    }
    let image_chart = m.image_chart(ch)?;
    let image_aux = match aux {
        Aux::Auto => Aux::Auto,
        Aux::At(b1) => {
            let moved = m_aux(m, b1)?;
            if image_chart.contains(&moved)? {
                Aux::Auto
            } else {
                Aux::At(moved)
            }
        }
    };
    let here = RatioContext::with_aux(ch.clone(), aux.clone());
    let there = RatioContext::with_aux(image_chart, image_aux);
    let images = points.iter().map(|p| m.apply(p)).collect::<Result<Vec<_>>>()?;
    let violated = |why: &str| Err(Error::PreconditionViolated(why.into()));
    let (r, r_image) = match (points, images.as_slice()) {
        ([a, b], [ma, mb]) => {
            if b == ch.o() {
                return violated("B = O");
            }
            (here.ratio2(a, b)?, there.ratio2(ma, mb)?)
        }
        ([a, b, c], [ma, mb, mc]) => {
            if b == c {
                return violated("B = C");
            }
            (here.ratio3(a, b, c)?, there.ratio3(ma, mb, mc)?)
        }
        _ => return violated("need two or three points"),
    };
    Ok(m.apply(&r)? == r_image)
}

/// Where an auxiliary point goes: plane maps move it, projections keep it
/// (the same `B1` serves both lines when it is off both).
fn m_aux(m: &PlaneMap, b1: &Point) -> Result<Point> {
    match m {
        PlaneMap::ParallelProjection { .. } => Ok(b1.clone()),
        _ => m.apply(b1),
    }
}
