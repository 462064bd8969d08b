//! Construction scripts: a model header followed by bindings, assertions
//! and emits, one per line or separated by `;`.
//!
//! ```text
//! model gf(7)
//! let O = point(0, 0); let I = point(1, 0); let L = chart(O, I)
//! let C = add(point(3, 0), point(5, 0)) on L
//! assert eq(C, point(1, 0))
//! emit "fig-add"
//! ```
//!
//! Comments (`#` to end of line) are discarded by the parser, so printing
//! a parsed script drops them.

mod eval;
mod gen;
mod parse;
mod print;

use std::fmt;

use serde::Serialize;

use crate::scalar::{Model, ScalarLiteral};

pub use eval::{evaluate, run, Artifact, AssertionOutcome, RunReport, Value};
pub use gen::random_script;
pub use parse::parse;
pub use print::print;

/// 1-based source position.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Pos {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Severity {
    Error,
    Warning,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Diagnostic {
    pub severity: Severity,
    pub pos: Pos,
    pub message: String,
    /// The offending source text, possibly empty at end of input.
    pub token: String,
}

impl Diagnostic {
    pub fn error(pos: Pos, message: impl Into<String>, token: impl Into<String>) -> Self {
        Self {
            severity: Severity::Error,
            pos,
            message: message.into(),
            token: token.into(),
        }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sev = match self.severity {
            Severity::Error => "error",
            Severity::Warning => "warning",
        };
        write!(f, "{}: {sev}: {}", self.pos, self.message)?;
        if !self.token.is_empty() {
            write!(f, " (at `{}`)", self.token)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct Script {
    pub model: Model,
    pub statements: Vec<Statement>,
}

impl Script {
    /// Number of statements, the model header included.
    pub fn statement_count(&self) -> usize {
        self.statements.len() + 1
    }
}

/// Equality ignores source positions.
impl PartialEq for Script {
    fn eq(&self, other: &Self) -> bool {
        self.model == other.model
            && self.statements.len() == other.statements.len()
            && self.statements.iter().zip(&other.statements).all(|(a, b)| a.kind == b.kind)
    }
}

impl Eq for Script {}

#[derive(Clone, Debug)]
pub struct Statement {
    pub kind: StatementKind,
    pub pos: Pos,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StatementKind {
    Let { name: String, call: Call<Op> },
    Assert(Call<Check>),
    Emit(String),
}

/// An operand: a bound name or an inline `point(x, y)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Arg {
    Ident(String),
    Point(ScalarLiteral, ScalarLiteral),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Param {
    Arg(Arg),
    Scalar(ScalarLiteral),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Call<K> {
    pub op: K,
    pub params: Vec<Param>,
    /// The chart after `on`, for line arithmetic.
    pub on: Option<Arg>,
}

/// Kinds of bound values.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Ty {
    Point,
    Line,
    Chart,
}

impl fmt::Display for Ty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Ty::Point => "point",
            Ty::Line => "line",
            Ty::Chart => "chart",
        })
    }
}

/// What a parameter position accepts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Slot {
    Point,
    /// A line, or a chart standing for its line.
    Line,
    Chart,
    /// Any value; all such slots of one call must agree.
    Same,
    Scalar,
}

impl Slot {
    pub fn accepts(self, ty: Ty) -> bool {
        match self {
            Slot::Point => ty == Ty::Point,
            Slot::Line => matches!(ty, Ty::Line | Ty::Chart),
            Slot::Chart => ty == Ty::Chart,
            Slot::Same => true,
            Slot::Scalar => false,
        }
    }

    fn describe(self) -> &'static str {
        match self {
            Slot::Point => "a point",
            Slot::Line => "a line or chart",
            Slot::Chart => "a chart",
            Slot::Same => "a value",
            Slot::Scalar => "a scalar",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Op {
    Point,
    Join,
    Meet,
    Parallel,
    Chart,
    Add,
    Mul,
    Neg,
    Inv,
    Ratio2,
    Ratio3,
    Translate,
    Dilate,
    Pproj,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Check {
    Eq,
    Collinear,
    Parallel,
    On,
}

/// Shared shape of bindable operations and assertions.
pub trait Signature: Copy + Sized + 'static {
    const ALL: &'static [Self];
    fn name(self) -> &'static str;
    fn slots(self) -> &'static [Slot];
    fn takes_chart(self) -> bool {
        false
    }

    fn from_name(name: &str) -> Option<Self> {
        Self::ALL.iter().copied().find(|k| k.name() == name)
    }
}

impl Signature for Op {
    const ALL: &'static [Op] = &[
        Op::Point,
        Op::Join,
        Op::Meet,
        Op::Parallel,
        Op::Chart,
        Op::Add,
        Op::Mul,
        Op::Neg,
        Op::Inv,
        Op::Ratio2,
        Op::Ratio3,
        Op::Translate,
        Op::Dilate,
        Op::Pproj,
    ];

    fn name(self) -> &'static str {
        match self {
            Op::Point => "point",
            Op::Join => "join",
            Op::Meet => "meet",
            Op::Parallel => "parallel",
            Op::Chart => "chart",
            Op::Add => "add",
            Op::Mul => "mul",
            Op::Neg => "neg",
            Op::Inv => "inv",
            Op::Ratio2 => "ratio2",
            Op::Ratio3 => "ratio3",
            Op::Translate => "translate",
            Op::Dilate => "dilate",
            Op::Pproj => "pproj",
        }
    }

    fn slots(self) -> &'static [Slot] {
        use Slot::*;
        match self {
            Op::Point => &[Scalar, Scalar],
            Op::Join | Op::Chart | Op::Add | Op::Mul | Op::Ratio2 => &[Point, Point],
            Op::Meet => &[Line, Line],
            Op::Parallel => &[Line, Point],
            Op::Neg | Op::Inv => &[Point],
            Op::Ratio3 => &[Point, Point, Point],
            Op::Translate => &[Point, Scalar, Scalar],
            Op::Dilate => &[Point, Point, Scalar],
            Op::Pproj => &[Point, Line, Line],
        }
    }

    fn takes_chart(self) -> bool {
        matches!(self, Op::Add | Op::Mul | Op::Neg | Op::Inv | Op::Ratio2 | Op::Ratio3)
    }
}

impl Op {
    pub fn result(self) -> Ty {
        match self {
            Op::Join | Op::Parallel => Ty::Line,
            Op::Chart => Ty::Chart,
            _ => Ty::Point,
        }
    }
}

impl Signature for Check {
    const ALL: &'static [Check] = &[Check::Eq, Check::Collinear, Check::Parallel, Check::On];

    fn name(self) -> &'static str {
        match self {
            Check::Eq => "eq",
            Check::Collinear => "collinear",
            Check::Parallel => "parallel",
            Check::On => "on",
        }
    }

    fn slots(self) -> &'static [Slot] {
        use Slot::*;
        match self {
            Check::Eq => &[Same, Same],
            Check::Collinear => &[Point, Point, Point],
            Check::Parallel => &[Line, Line],
            Check::On => &[Point, Line],
        }
    }
}

/// Words that cannot be bound.
pub const KEYWORDS: &[&str] = &["model", "let", "assert", "emit", "on", "point"];
