use std::fmt::Write;

use super::{Arg, Call, Param, Script, Signature, StatementKind};

/// Canonical text: one statement per line, `, ` between arguments and
/// literals in their canonical form.
pub fn print(script: &Script) -> String {
    let mut out = format!("model {}\n", script.model);
    for st in &script.statements {
        match &st.kind {
            StatementKind::Let { name, call } => {
                let _ = writeln!(out, "let {name} = {}", call_text(call));
            }
            StatementKind::Assert(call) => {
                let _ = writeln!(out, "assert {}", call_text(call));
            }
            StatementKind::Emit(name) => {
                let _ = writeln!(out, "emit \"{name}\"");
            }
        }
    }
    out
}

pub(super) fn call_text<K: Signature>(call: &Call<K>) -> String {
    let params: Vec<String> = call
        .params
        .iter()
        .map(|p| match p {
            Param::Arg(a) => arg_text(a),
            Param::Scalar(s) => s.to_string(),
        })
        .collect();
    let mut s = format!("{}({})", call.op.name(), params.join(", "));
    if let Some(on) = &call.on {
        let _ = write!(s, " on {}", arg_text(on));
    }
    s
}

pub(super) fn arg_text(arg: &Arg) -> String {
    match arg {
        Arg::Ident(s) => s.clone(),
        Arg::Point(x, y) => format!("point({x}, {y})"),
    }
}
