//! Construction traces: the ordered list of points and lines a ruler-only
//! construction creates, with enough structure to replay and re-verify it.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{is_parallel, join, meet, parallel_through, Line, Point};
use crate::scalar::{Model, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Object {
    Point(Point),
    Line(Line),
}

/// How a step's object was obtained. Indices refer to earlier steps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Op {
    Given,
    /// A point chosen off the working line.
    Aux,
    Join(usize, usize),
    Parallel { line: usize, through: usize },
    Meet(usize, usize),
}

impl Op {
    fn name(&self) -> &'static str {
        match self {
            Op::Given => "given",
            Op::Aux => "aux",
            Op::Join(..) => "join",
            Op::Parallel { .. } => "parallel",
            Op::Meet(..) => "meet",
        }
    }

    fn args(&self) -> Vec<usize> {
        match *self {
            Op::Given | Op::Aux => vec![],
            Op::Join(a, b) | Op::Meet(a, b) => vec![a, b],
            Op::Parallel { line, through } => vec![line, through],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub label: String,
    pub op: Op,
    pub object: Object,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstructionTrace {
    model: Model,
    steps: Vec<Step>,
    output: Option<usize>,
}

impl ConstructionTrace {
    pub fn new(model: Model) -> Self {
        Self {
            model,
            steps: Vec::new(),
            output: None,
        }
    }

    pub fn model(&self) -> Model {
        self.model
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn output(&self) -> Option<usize> {
        self.output
    }

    pub fn set_output(&mut self, id: usize) {
        self.output = Some(id);
    }

    pub fn label(&self, id: usize) -> &str {
        &self.steps[id].label
    }

    pub fn point(&self, id: usize) -> &Point {
        match &self.steps[id].object {
            Object::Point(p) => p,
            Object::Line(_) => panic!("step {id} is a line"),
        }
    }

    pub fn line(&self, id: usize) -> &Line {
        match &self.steps[id].object {
            Object::Line(l) => l,
            Object::Point(_) => panic!("step {id} is a point"),
        }
    }

    fn push(&mut self, label: impl Into<String>, op: Op, object: Object) -> usize {
        self.steps.push(Step {
            label: label.into(),
            op,
            object,
        });
        self.steps.len() - 1
    }

    pub fn given_point(&mut self, label: impl Into<String>, p: Point) -> usize {
        self.push(label, Op::Given, Object::Point(p))
    }

    pub fn given_line(&mut self, label: impl Into<String>, l: Line) -> usize {
        self.push(label, Op::Given, Object::Line(l))
    }

    pub fn aux_point(&mut self, label: impl Into<String>, p: Point) -> usize {
        self.push(label, Op::Aux, Object::Point(p))
    }

    pub fn join(&mut self, label: impl Into<String>, a: usize, b: usize) -> Result<usize> {
        let l = join(self.point(a), self.point(b))?;
        Ok(self.push(label, Op::Join(a, b), Object::Line(l)))
    }

    pub fn parallel(&mut self, label: impl Into<String>, line: usize, through: usize) -> Result<usize> {
        let l = parallel_through(self.line(line), self.point(through))?;
        Ok(self.push(label, Op::Parallel { line, through }, Object::Line(l)))
    }

    pub fn meet(&mut self, label: impl Into<String>, l1: usize, l2: usize) -> Result<usize> {
        let p = meet(self.line(l1), self.line(l2))?.point()?;
        Ok(self.push(label, Op::Meet(l1, l2), Object::Point(p)))
    }

    /// Recomputes every derived step from its inputs and returns the output
    /// point. Fails on forward references or on any step whose recorded
    /// object differs from the recomputed one.
    pub fn replay(&self) -> Result<Point> {
        let mut rebuilt = ConstructionTrace::new(self.model);
        for (idx, step) in self.steps.iter().enumerate() {
            let malformed = |why: &str| Error::MalformedTrace(format!("step {idx} ({}): {why}", step.label));
            if step.op.args().iter().any(|&a| a >= idx) {
                return Err(malformed("refers forward"));
            }
            let kind_ok = |arg: usize, want_point: bool| {
                matches!(
                    (&self.steps[arg].object, want_point),
                    (Object::Point(_), true) | (Object::Line(_), false)
                )
            };
            let shapes_ok = match step.op {
                Op::Given | Op::Aux => true,
                Op::Join(a, b) => kind_ok(a, true) && kind_ok(b, true),
                Op::Parallel { line, through } => kind_ok(line, false) && kind_ok(through, true),
                Op::Meet(a, b) => kind_ok(a, false) && kind_ok(b, false),
            };
            if !shapes_ok {
                return Err(malformed("argument of the wrong kind"));
            }
            match step.op {
                Op::Given | Op::Aux => {
                    rebuilt.steps.push(step.clone());
                }
                Op::Join(a, b) => {
                    rebuilt.join(step.label.clone(), a, b)?;
                }
                Op::Parallel { line, through } => {
                    rebuilt.parallel(step.label.clone(), line, through)?;
                }
                Op::Meet(a, b) => {
                    rebuilt.meet(step.label.clone(), a, b)?;
                }
            }
            if rebuilt.steps[idx].object != step.object {
                return Err(malformed("recorded object differs from replay"));
            }
        }
        let out = self.output.ok_or_else(|| Error::MalformedTrace("no output".into()))?;
        match self.steps.get(out).map(|s| &s.object) {
            Some(Object::Point(p)) => Ok(p.clone()),
            _ => Err(Error::MalformedTrace("output is not a point".into())),
        }
    }

    /// Re-checks every incidence and parallelism the trace asserts, returning
    /// a description of each one that fails.
    pub fn verify(&self) -> Vec<String> {
        let mut failures = Vec::new();
        for (idx, step) in self.steps.iter().enumerate() {
            let ok = self.step_holds(idx, step).unwrap_or(false);
            if !ok {
                failures.push(format!("step {idx} ({}): {} does not hold", step.label, step.op.name()));
            }
        }
        failures
    }

    fn step_holds(&self, idx: usize, step: &Step) -> Result<bool> {
        let get = |i: usize| self.steps.get(i).filter(|_| i < idx).map(|s| &s.object);
        let pt = |i| match get(i) {
            Some(Object::Point(p)) => Ok(p),
            _ => Err(Error::MalformedTrace(format!("step {i} is not an earlier point"))),
        };
        let ln = |i| match get(i) {
            Some(Object::Line(l)) => Ok(l),
            _ => Err(Error::MalformedTrace(format!("step {i} is not an earlier line"))),
        };
        Ok(match (&step.op, &step.object) {
            (Op::Given, _) => true,
            (Op::Aux, Object::Point(_)) => true,
            (Op::Join(a, b), Object::Line(l)) => {
                pt(*a)? != pt(*b)? && l.contains(pt(*a)?)? && l.contains(pt(*b)?)?
            }
            (Op::Parallel { line, through }, Object::Line(l)) => {
                is_parallel(l, ln(*line)?) && l.contains(pt(*through)?)?
            }
            (Op::Meet(a, b), Object::Point(p)) => {
                !is_parallel(ln(*a)?, ln(*b)?) && ln(*a)?.contains(p)? && ln(*b)?.contains(p)?
            }
            _ => false,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&TraceDoc::from(self)).expect("trace serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: TraceDoc =
            serde_json::from_str(text).map_err(|e| Error::MalformedTrace(e.to_string()))?;
        doc.into_trace()
    }
}

#[derive(Serialize, Deserialize)]
struct TraceDoc {
    model: String,
    output: Option<usize>,
    steps: Vec<StepDoc>,
}

#[derive(Serialize, Deserialize)]
struct StepDoc {
    label: String,
    op: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    args: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    point: Option<[String; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    line: Option<LineDoc>,
}

#[derive(Serialize, Deserialize)]
struct LineDoc {
    base: [String; 2],
    dir: [String; 2],
}

fn point_doc(p: &Point) -> [String; 2] {
    [p.x().to_string(), p.y().to_string()]
}

impl From<&ConstructionTrace> for TraceDoc {
    fn from(t: &ConstructionTrace) -> Self {
        let steps = t
            .steps
            .iter()
            .map(|s| {
                let (point, line) = match &s.object {
                    Object::Point(p) => (Some(point_doc(p)), None),
                    Object::Line(l) => (
                        None,
                        Some(LineDoc {
                            base: point_doc(l.base()),
                            dir: point_doc(l.dir()),
                        }),
                    ),
                };
                StepDoc {
                    label: s.label.clone(),
                    op: s.op.name().to_string(),
                    args: s.op.args(),
                    point,
                    line,
                }
            })
            .collect();
        TraceDoc {
            model: t.model.to_string(),
            output: t.output,
            steps,
        }
    }
}

impl TraceDoc {
    fn into_trace(self) -> Result<ConstructionTrace> {
        let model: Model = self.model.parse()?;
        let scalar = |s: &str| -> Result<Scalar> { model.parse_scalar(s) };
        let point = |c: &[String; 2]| Point::new(scalar(&c[0])?, scalar(&c[1])?);
        let mut trace = ConstructionTrace::new(model);
        for s in self.steps {
            let bad = |why: &str| Error::MalformedTrace(format!("{}: {why}", s.label));
            let object = match (&s.point, &s.line) {
                (Some(p), None) => Object::Point(point(p)?),
                (None, Some(l)) => Object::Line(Line::new(point(&l.base)?, point(&l.dir)?)?),
                _ => return Err(bad("needs exactly one of point or line")),
            };
            let arg = |i: usize| s.args.get(i).copied().ok_or_else(|| bad("missing argument"));
            let op = match s.op.as_str() {
                "given" => Op::Given,
                "aux" => Op::Aux,
                "join" => Op::Join(arg(0)?, arg(1)?),
                "parallel" => Op::Parallel {
                    line: arg(0)?,
                    through: arg(1)?,
                },
                "meet" => Op::Meet(arg(0)?, arg(1)?),
                other => return Err(bad(&format!("unknown op `{other}`"))),
            };
            trace.steps.push(Step {
                label: s.label,
                op,
                object,
            });
        }
        trace.output = self.output;
        Ok(trace)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_trace() -> ConstructionTrace {
        let m = Model::Gf(7);
        let mut t = ConstructionTrace::new(m);
        let o = t.given_point("O", Point::from_ints(m, 0, 0));
        let i = t.given_point("I", Point::from_ints(m, 1, 0));
        let b1 = t.aux_point("B1", Point::from_ints(m, 0, 1));
        let oi = t.join("l(O,I)", o, i).unwrap();
        let par = t.parallel("par", oi, b1).unwrap();
        let ib1 = t.join("l(I,B1)", i, b1).unwrap();
        let x = t.meet("X", par, ib1).unwrap();
        t.set_output(x);
        t
    }

    #[test]
    fn replay_and_verify() {
        let t = small_trace();
        assert_eq!(t.replay().unwrap(), Point::from_ints(Model::Gf(7), 0, 1));
        assert!(t.verify().is_empty());
    }

    #[test]
    fn json_round_trip() {
        let t = small_trace();
        let back = ConstructionTrace::from_json(&t.to_json()).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn tampering_is_detected() {
        let mut t = small_trace();
        let last = t.steps.len() - 1;
        t.steps[last].object = Object::Point(Point::from_ints(Model::Gf(7), 3, 3));
        assert!(t.replay().is_err());
        assert_eq!(t.verify().len(), 1);

        let mut t = small_trace();
        t.steps[4].op = Op::Parallel { line: 5, through: 2 };
        assert!(matches!(t.replay(), Err(Error::MalformedTrace(_))));
        assert!(!t.verify().is_empty());
    }

    #[test]
    fn bad_json() {
        assert!(ConstructionTrace::from_json("{").is_err());
        let doc = r#"{"model":"gf(7)","output":0,"steps":[{"label":"X","op":"warp","point":["1","2"]}]}"#;
        assert!(ConstructionTrace::from_json(doc).is_err());
    }
}
