use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use super::print::call_text;
use super::{parse, Arg, Call, Check, Diagnostic, Op, Param, Pos, Script, StatementKind};
use crate::construct::{geo_add, geo_inv, geo_mul, geo_neg, Aux, Chart};
use crate::error::{Error, Result};
use crate::geometry::{collinear, is_parallel, join, meet, parallel_through, Line, Point};
use crate::ratio::RatioContext;
use crate::scalar::{Model, Scalar, ScalarLiteral};
use crate::trace::ConstructionTrace;
use crate::transforms::PlaneMap;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Point(Point),
    Line(Line),
    Chart(Chart),
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Point(p) => write!(f, "{p}"),
            Value::Line(l) => write!(f, "line {} + t{}", l.base(), l.dir()),
            Value::Chart(c) => write!(f, "chart O={} I={}", c.o(), c.i()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AssertionOutcome {
    pub pos: Pos,
    pub text: String,
    pub passed: bool,
    pub operands: Vec<String>,
}

impl fmt::Display for AssertionOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed { "ok" } else { "FAILED" };
        write!(f, "{}: assert {} ... {verdict}", self.pos, self.text)?;
        if !self.passed {
            write!(f, " [{}]", self.operands.join("; "))?;
        }
        Ok(())
    }
}

/// The trace behind an `emit`: the most recent construction, or the bound
/// objects themselves when nothing has been constructed yet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Artifact {
    pub name: String,
    pub pos: Pos,
    pub trace: ConstructionTrace,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunReport {
    pub model: Model,
    pub bindings: Vec<(String, Value)>,
    pub assertions: Vec<AssertionOutcome>,
    pub artifacts: Vec<Artifact>,
}

impl RunReport {
    pub fn passed(&self) -> bool {
        self.assertions.iter().all(|a| a.passed)
    }

    pub fn to_json(&self) -> String {
        let artifacts: Vec<serde_json::Value> = self
            .artifacts
            .iter()
            .map(|a| {
                serde_json::json!({
                    "name": a.name,
                    "pos": a.pos,
                    "trace": serde_json::from_str::<serde_json::Value>(&a.trace.to_json())
                        .expect("trace json"),
                })
            })
            .collect();
        let bindings: Vec<serde_json::Value> = self
            .bindings
            .iter()
            .map(|(n, v)| serde_json::json!({ "name": n, "value": v.to_string() }))
            .collect();
        let doc = serde_json::json!({
            "model": self.model.to_string(),
            "passed": self.passed(),
            "bindings": bindings,
            "assertions": self.assertions,
            "artifacts": artifacts,
        });
        serde_json::to_string_pretty(&doc).expect("report serializes")
    }
}

/// Parses and evaluates.
pub fn run(source: &str) -> Result<RunReport, Vec<Diagnostic>> {
    let script = parse(source)?;
    evaluate(&script).map_err(|d| vec![d])
}

/// Evaluates statements in order. The first engine error stops the run and
/// is reported at its statement.
pub fn evaluate(script: &Script) -> Result<RunReport, Diagnostic> {
    let mut ev = Evaluator {
        model: script.model,
        env: HashMap::new(),
        last_trace: None,
        report: RunReport {
            model: script.model,
            bindings: Vec::new(),
            assertions: Vec::new(),
            artifacts: Vec::new(),
        },
    };
    for st in &script.statements {
        let fail = |e: Error, token: String| Diagnostic::error(st.pos, e.to_string(), token);
        match &st.kind {
            StatementKind::Let { name, call } => {
                let v = ev.bind(call).map_err(|e| fail(e, call_text(call)))?;
                ev.env.insert(name.clone(), v.clone());
                ev.report.bindings.push((name.clone(), v));
            }
            StatementKind::Assert(call) => {
                let outcome = ev.check(call, st.pos).map_err(|e| fail(e, call_text(call)))?;
                ev.report.assertions.push(outcome);
            }
            StatementKind::Emit(name) => {
                let trace = match &ev.last_trace {
                    Some(t) => t.clone(),
                    None => ev.scene(),
                };
                ev.report.artifacts.push(Artifact {
                    name: name.clone(),
                    pos: st.pos,
                    trace,
                });
            }
        }
    }
    Ok(ev.report)
}

struct Evaluator {
    model: Model,
    env: HashMap<String, Value>,
    last_trace: Option<ConstructionTrace>,
    report: RunReport,
}

impl Evaluator {
    fn scalar(&self, lit: &ScalarLiteral) -> Result<Scalar> {
        self.model.scalar_from_literal(lit, &lit.to_string())
    }

    fn value(&self, arg: &Arg) -> Result<Value> {
        match arg {
            Arg::Ident(name) => self
                .env
                .get(name)
                .cloned()
                .ok_or_else(|| Error::InvalidParameter(format!("unbound name `{name}`"))),
            Arg::Point(x, y) => Ok(Value::Point(Point::new(self.scalar(x)?, self.scalar(y)?)?)),
        }
    }

    fn param(&self, p: &Param) -> Result<Value> {
        match p {
            Param::Arg(a) => self.value(a),
            Param::Scalar(_) => unreachable!("scalar slots are read with `scalar_param`"),
        }
    }

    fn scalar_param(&self, p: &Param) -> Result<Scalar> {
        match p {
            Param::Scalar(s) => self.scalar(s),
            Param::Arg(_) => unreachable!("checked by the parser"),
        }
    }

    fn point(&self, p: &Param) -> Result<Point> {
        match self.param(p)? {
            Value::Point(p) => Ok(p),
            other => Err(Error::InvalidParameter(format!("expected a point, found {other}"))),
        }
    }

    fn line(&self, p: &Param) -> Result<Line> {
        match self.param(p)? {
            Value::Line(l) => Ok(l),
            Value::Chart(c) => Ok(c.line().clone()),
            other => Err(Error::InvalidParameter(format!("expected a line, found {other}"))),
        }
    }

    fn chart(&self, on: &Option<Arg>) -> Result<Chart> {
        let arg = on.as_ref().expect("checked by the parser");
        match self.value(arg)? {
            Value::Chart(c) => Ok(c),
            other => Err(Error::InvalidParameter(format!("expected a chart, found {other}"))),
        }
    }

    fn traced(&mut self, (p, t): (Point, ConstructionTrace)) -> Value {
        self.last_trace = Some(t);
        Value::Point(p)
    }

    fn bind(&mut self, call: &Call<Op>) -> Result<Value> {
        let a = &call.params;
        Ok(match call.op {
            Op::Point => Value::Point(Point::new(self.scalar_param(&a[0])?, self.scalar_param(&a[1])?)?),
            Op::Join => Value::Line(join(&self.point(&a[0])?, &self.point(&a[1])?)?),
            Op::Meet => Value::Point(meet(&self.line(&a[0])?, &self.line(&a[1])?)?.point()?),
            Op::Parallel => Value::Line(parallel_through(&self.line(&a[0])?, &self.point(&a[1])?)?),
            Op::Chart => Value::Chart(Chart::new(self.point(&a[0])?, self.point(&a[1])?)?),
            Op::Add => {
                let ch = self.chart(&call.on)?;
                let r = geo_add(&ch, &self.point(&a[0])?, &self.point(&a[1])?, &Aux::Auto)?;
                self.traced(r)
            }
            Op::Mul => {
                let ch = self.chart(&call.on)?;
                let r = geo_mul(&ch, &self.point(&a[0])?, &self.point(&a[1])?, &Aux::Auto)?;
                self.traced(r)
            }
            Op::Neg => {
                let ch = self.chart(&call.on)?;
                let r = geo_neg(&ch, &self.point(&a[0])?, &Aux::Auto)?;
                self.traced(r)
            }
            Op::Inv => {
                let ch = self.chart(&call.on)?;
                let r = geo_inv(&ch, &self.point(&a[0])?, &Aux::Auto)?;
                self.traced(r)
            }
            Op::Ratio2 => {
                let ctx = RatioContext::new(self.chart(&call.on)?);
                let r = ctx.ratio2_traced(&self.point(&a[0])?, &self.point(&a[1])?)?;
                self.traced(r)
            }
            Op::Ratio3 => {
                let ctx = RatioContext::new(self.chart(&call.on)?);
                let r = ctx.ratio3_traced(&self.point(&a[0])?, &self.point(&a[1])?, &self.point(&a[2])?)?;
                self.traced(r)
            }
            Op::Translate => {
                let v = Point::new(self.scalar_param(&a[1])?, self.scalar_param(&a[2])?)?;
                Value::Point(PlaneMap::translation(v).apply(&self.point(&a[0])?)?)
            }
            Op::Dilate => {
                let m = PlaneMap::dilatation(self.point(&a[1])?, self.scalar_param(&a[2])?)?;
                Value::Point(m.apply(&self.point(&a[0])?)?)
            }
            Op::Pproj => {
                let r = project(&self.point(&a[0])?, &self.line(&a[1])?, &self.line(&a[2])?)?;
                self.traced(r)
            }
        })
    }

    fn check(&self, call: &Call<Check>, pos: Pos) -> Result<AssertionOutcome> {
        let values: Vec<Value> = call.params.iter().map(|p| self.param(p)).collect::<Result<_>>()?;
        let a = &call.params;
        let passed = match call.op {
            Check::Eq => values[0] == values[1],
            Check::Collinear => collinear(&self.point(&a[0])?, &self.point(&a[1])?, &self.point(&a[2])?)?,
            Check::Parallel => is_parallel(&self.line(&a[0])?, &self.line(&a[1])?),
            Check::On => self.line(&a[1])?.contains(&self.point(&a[0])?)?,
        };
        Ok(AssertionOutcome {
            pos,
            text: call_text(call),
            passed,
            operands: values.iter().map(|v| v.to_string()).collect(),
        })
    }

    /// Bound objects as given steps, in binding order.
    fn scene(&self) -> ConstructionTrace {
        let mut t = ConstructionTrace::new(self.model);
        let mut last_point = None;
        for (name, v) in &self.report.bindings {
            match v {
                Value::Point(p) => last_point = Some(t.given_point(name.clone(), p.clone())),
                Value::Line(l) => {
                    t.given_line(name.clone(), l.clone());
                }
                Value::Chart(c) => {
                    t.given_line(name.clone(), c.line().clone());
                }
            }
        }
        if let Some(i) = last_point {
            t.set_output(i);
        }
        t
    }
}

/// The point where the parallel to `direction` through `x` meets `target`.
pub(crate) fn project(x: &Point, target: &Line, direction: &Line) -> Result<(Point, ConstructionTrace)> {
    if is_parallel(target, direction) {
        return Err(Error::ProjectionUndefined);
    }
    let mut t = ConstructionTrace::new(x.model());
    let xi = t.given_point("X", x.clone());
    let ti = t.given_line("target", target.clone());
    let di = t.given_line("direction", direction.clone());
    let through = t.parallel("X||direction", di, xi)?;
    let image = t.meet("X'", through, ti)?;
    t.set_output(image);
    Ok((t.point(image).clone(), t))
}
