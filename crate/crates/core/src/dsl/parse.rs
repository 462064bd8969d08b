use std::collections::HashMap;

use super::{
    Arg, Call, Check, Diagnostic, Op, Param, Pos, Script, Signature, Slot, Statement, StatementKind, Ty,
    KEYWORDS,
};
use super::print::arg_text;
use crate::scalar::{Model, ScalarLiteral};

/// Parses a script. All diagnostics are collected before failing; a
/// statement with a syntax error is skipped up to the next separator.
pub fn parse(source: &str) -> Result<Script, Vec<Diagnostic>> {
    let mut p = Parser {
        chars: source.chars().collect(),
        at: 0,
        pos: Pos { line: 1, column: 1 },
        model: None,
        header_missing: false,
        bound: HashMap::new(),
        statements: Vec::new(),
        diags: Vec::new(),
    };
    p.script();
    if p.model.is_none() && !p.header_missing {
        p.diags.push(Diagnostic::error(p.pos, "model header required", ""));
    }
    match (p.diags.is_empty(), p.model) {
        (true, Some(model)) => Ok(Script {
            model,
            statements: p.statements,
        }),
        _ => Err(p.diags),
    }
}

type Parsed<T> = Result<T, Diagnostic>;

struct Parser {
    chars: Vec<char>,
    at: usize,
    pos: Pos,
    model: Option<Model>,
    header_missing: bool,
    bound: HashMap<String, Ty>,
    statements: Vec<Statement>,
    diags: Vec<Diagnostic>,
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

impl Parser {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.at).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.at += 1;
        if c == '\n' {
            self.pos.line += 1;
            self.pos.column = 1;
        } else {
            self.pos.column += 1;
        }
        Some(c)
    }

    /// Spaces, tabs and a trailing comment, but not line ends.
    fn skip_inline(&mut self) {
        while let Some(c) = self.peek() {
            match c {
                ' ' | '\t' | '\r' => {
                    self.bump();
                }
                '#' => {
                    while self.peek().is_some_and(|c| c != '\n') {
                        self.bump();
                    }
                }
                _ => break,
            }
        }
    }

    /// Whitespace, comments and separators between statements.
    fn skip_separators(&mut self) {
        loop {
            self.skip_inline();
            match self.peek() {
                Some('\n' | ';') => {
                    self.bump();
                }
                _ => break,
            }
        }
    }

    fn at_statement_end(&self) -> bool {
        matches!(self.peek(), None | Some('\n' | ';'))
    }

    /// The text from here to the end of the current token, for messages.
    fn token_here(&self) -> String {
        let rest = &self.chars[self.at..];
        match rest.first() {
            None => String::new(),
            Some(&c) if is_ident_char(c) => rest.iter().take_while(|&&c| is_ident_char(c)).collect(),
            Some(&c) => c.to_string(),
        }
    }

    fn error_here(&self, message: impl Into<String>) -> Diagnostic {
        Diagnostic::error(self.pos, message, self.token_here())
    }

    fn recover(&mut self) {
        while !self.at_statement_end() {
            self.bump();
        }
    }

    fn script(&mut self) {
        loop {
            self.skip_separators();
            if self.peek().is_none() {
                break;
            }
            let result = self.statement().and_then(|()| {
                self.skip_inline();
                if self.at_statement_end() {
                    Ok(())
                } else {
                    Err(self.error_here("expected end of statement"))
                }
            });
            if let Err(d) = result {
                self.diags.push(d);
                self.recover();
            }
        }
    }

    fn ident(&mut self, what: &str) -> Parsed<(String, Pos)> {
        self.skip_inline();
        let start = self.pos;
        if !self.peek().is_some_and(is_ident_start) {
            return Err(self.error_here(format!("expected {what}")));
        }
        let mut s = String::new();
        while let Some(c) = self.peek().filter(|&c| is_ident_char(c)) {
            s.push(c);
            self.bump();
        }
        Ok((s, start))
    }

    fn expect(&mut self, c: char) -> Parsed<()> {
        self.skip_inline();
        if self.peek() == Some(c) {
            self.bump();
            Ok(())
        } else {
            Err(self.error_here(format!("expected `{c}`")))
        }
    }

    fn statement(&mut self) -> Parsed<()> {
        let (word, start) = self.ident("a statement")?;
        if word == "model" {
            return self.header(start);
        }
        if self.model.is_none() && !self.header_missing {
            self.header_missing = true;
            self.diags
                .push(Diagnostic::error(start, "model header required", word.clone()));
        }
        let kind = match word.as_str() {
            "let" => self.binding()?,
            "assert" => StatementKind::Assert(self.call::<Check>()?),
            "emit" => StatementKind::Emit(self.string()?),
            _ => {
                return Err(Diagnostic::error(
                    start,
                    "expected `model`, `let`, `assert` or `emit`",
                    word,
                ))
            }
        };
        self.statements.push(Statement { kind, pos: start });
        Ok(())
    }

    fn header(&mut self, start: Pos) -> Parsed<()> {
        if self.model.is_some() {
            return Err(Diagnostic::error(start, "duplicate model header", "model"));
        }
        if !self.statements.is_empty() || self.header_missing {
            return Err(Diagnostic::error(start, "model header must come first", "model"));
        }
        self.skip_inline();
        let text_pos = self.pos;
        let mut text = String::new();
        while !self.at_statement_end() && self.peek() != Some('#') {
            text.push(self.bump().expect("not at end"));
        }
        let text = text.trim_end().to_string();
        match text.parse::<Model>() {
            Ok(m) => {
                self.model = Some(m);
                Ok(())
            }
            Err(e) => Err(Diagnostic::error(text_pos, format!("unknown model: {e}"), text)),
        }
    }

    fn binding(&mut self) -> Parsed<StatementKind> {
        let (name, name_pos) = self.ident("a name")?;
        if KEYWORDS.contains(&name.as_str()) {
            return Err(Diagnostic::error(name_pos, "reserved word cannot be bound", name));
        }
        self.expect('=')?;
        let call = self.call::<Op>()?;
        if self.bound.contains_key(&name) {
            self.diags
                .push(Diagnostic::error(name_pos, "duplicate binding", name.clone()));
        } else {
            self.bound.insert(name.clone(), call.op.result());
        }
        Ok(StatementKind::Let { name, call })
    }

    fn string(&mut self) -> Parsed<String> {
        self.skip_inline();
        let start = self.pos;
        self.expect('"')?;
        let mut s = String::new();
        loop {
            match self.peek() {
                Some('"') => {
                    self.bump();
                    break;
                }
                None | Some('\n') => return Err(Diagnostic::error(start, "unterminated string", s)),
                Some(c) => {
                    s.push(c);
                    self.bump();
                }
            }
        }
        if s.is_empty() {
            return Err(Diagnostic::error(start, "empty name", "\"\""));
        }
        Ok(s)
    }

    fn call<K: Signature>(&mut self) -> Parsed<Call<K>> {
        let (name, name_pos) = self.ident("an operation")?;
        let op = K::from_name(&name)
            .ok_or_else(|| Diagnostic::error(name_pos, "unknown operation", name.clone()))?;
        self.expect('(')?;
        let slots = op.slots();
        let mut params = Vec::with_capacity(slots.len());
        let mut same: Option<Ty> = None;
        for (n, slot) in slots.iter().enumerate() {
            if n > 0 {
                self.expect(',')?;
            }
            self.skip_inline();
            if *slot == Slot::Scalar {
                params.push(Param::Scalar(self.scalar()?));
                continue;
            }
            let (arg, ty, at) = self.arg()?;
            if let Some(ty) = ty {
                if *slot == Slot::Same {
                    match same {
                        Some(t) if t != ty => self.diags.push(Diagnostic::error(
                            at,
                            format!("expected a {t}, found a {ty}"),
                            arg_text(&arg),
                        )),
                        _ => same = Some(ty),
                    }
                } else if !slot.accepts(ty) {
                    self.diags.push(Diagnostic::error(
                        at,
                        format!("expected {}, found a {ty}", slot.describe()),
                        arg_text(&arg),
                    ));
                }
            }
            params.push(Param::Arg(arg));
        }
        self.skip_inline();
        if self.peek() == Some(',') {
            return Err(self.error_here(format!("`{name}` takes {} arguments", slots.len())));
        }
        self.expect(')')?;
        let on = if op.takes_chart() {
            let (word, at) = self.ident("`on`")?;
            if word != "on" {
                return Err(Diagnostic::error(at, "expected `on`", word));
            }
            self.skip_inline();
            let (arg, ty, at) = self.arg()?;
            if ty.is_some_and(|t| !Slot::Chart.accepts(t)) {
                self.diags
                    .push(Diagnostic::error(at, "expected a chart", arg_text(&arg)));
            }
            Some(arg)
        } else {
            None
        };
        Ok(Call { op, params, on })
    }

    /// An operand with its type, when known.
    fn arg(&mut self) -> Parsed<(Arg, Option<Ty>, Pos)> {
        let (name, at) = self.ident("a name or `point(x, y)`")?;
        self.skip_inline();
        if name == "point" && self.peek() == Some('(') {
            self.bump();
            self.skip_inline();
            let x = self.scalar()?;
            self.expect(',')?;
            self.skip_inline();
            let y = self.scalar()?;
            self.expect(')')?;
            return Ok((Arg::Point(x, y), Some(Ty::Point), at));
        }
        let ty = self.bound.get(&name).copied();
        if ty.is_none() {
            self.diags
                .push(Diagnostic::error(at, "unknown identifier", name.clone()));
        }
        Ok((Arg::Ident(name), ty, at))
    }

    fn scalar(&mut self) -> Parsed<ScalarLiteral> {
        let start = self.pos;
        let mut text = String::new();
        while let Some(c) = self.peek().filter(|c| !matches!(c, ',' | ')' | ';' | '\n' | '#')) {
            text.push(c);
            self.bump();
        }
        let text = text.trim_end().to_string();
        if text.is_empty() {
            return Err(Diagnostic::error(start, "expected a scalar", self.token_here()));
        }
        let lit: ScalarLiteral = text
            .parse()
            .map_err(|e| Diagnostic::error(start, format!("{e}"), text.clone()))?;
        if let Some(m) = self.model {
            if let Err(e) = m.scalar_from_literal(&lit, &text) {
                self.diags.push(Diagnostic::error(start, format!("{e}"), text));
            }
        }
        Ok(lit)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn errors(src: &str) -> Vec<String> {
        parse(src)
            .unwrap_err()
            .iter()
            .map(|d| format!("{} {}", d.pos, d.message))
            .collect()
    }

    #[test]
    fn separators_and_comments() {
        let s = parse("# heading\nmodel rational # trailing\n\n;; let A = point( 1/2 , -3 ) ; # c\nemit \"x\"").unwrap();
        assert_eq!(s.statements.len(), 2);
        assert_eq!(s.statements[0].pos, Pos { line: 4, column: 4 });
    }

    #[test]
    fn model_header_forms() {
        assert_eq!(parse("model gf:5").unwrap().model, Model::Gf(5));
        assert_eq!(parse("model quaternion").unwrap().model, Model::Quaternion);
        assert!(errors("model gf(4)")[0].starts_with("1:7 unknown model"));
        assert!(errors("model rational\nmodel rational")[0].starts_with("2:1 duplicate model header"));
        assert!(errors("")[0].ends_with("model header required"));
    }

    #[test]
    fn literal_checks_follow_the_model() {
        assert!(errors("model gf(7)\nlet A = point(1/2, 0)")[0].starts_with("2:15 invalid scalar literal"));
        assert!(errors("model rational\nlet A = point(i, 0)")[0].starts_with("2:15 invalid scalar literal"));
        assert!(parse("model quaternion\nlet A = point(1 + 2i - k, j)").is_ok());
        assert!(errors("model rational\nlet A = point(1/0, 0)")[0].starts_with("2:15 invalid scalar literal"));
    }

    #[test]
    fn syntax_errors() {
        assert!(errors("model rational\nlet A = point(1, 2, 3)")[0].contains("takes 2 arguments"));
        assert!(errors("model rational\nlet A = point(1, 2) extra")[0].starts_with("2:21 expected end of statement"));
        assert!(errors("model rational\nlet on = point(1, 2)")[0].contains("reserved"));
        assert!(errors("model rational\nemit \"open")[0].contains("unterminated"));
        assert!(errors("model rational\nfrobnicate")[0].starts_with("2:1 expected `model`"));
        let e = errors("model rational\nlet O = point(0,0)\nlet L = chart(O, point(1,0))\nlet C = add(O, O)");
        assert!(e[0].contains("expected `on`"), "{e:?}");
    }

    #[test]
    fn type_errors() {
        let src = "model rational\nlet A = point(0,0)\nlet l = join(A, point(1,1))\nassert eq(A, l)\nlet X = meet(A, l)";
        let e = errors(src);
        assert!(e[0].starts_with("4:14 expected a point, found a line"), "{e:?}");
        assert!(e[1].starts_with("5:14 expected a line or chart"), "{e:?}");
    }
}
