use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::Rng;

use super::{Arg, Call, Check, Op, Param, Pos, Script, Signature, Slot, Statement, StatementKind, Ty};
use crate::scalar::{Model, ScalarLiteral};

/// A random script that parses: every name is bound before use and every
/// operand has the right kind. Evaluation may still fail (coincident
/// points, parallel lines and so on).
pub fn random_script<R: Rng + ?Sized>(model: Model, rng: &mut R) -> Script {
    let mut g = Gen {
        model,
        names: Vec::new(),
    };
    let n = rng.gen_range(0..=16);
    let statements = (0..n)
        .map(|_| Statement {
            kind: g.statement(rng),
            pos: Pos::default(),
        })
        .collect();
    Script { model, statements }
}

struct Gen {
    model: Model,
    names: Vec<(String, Ty)>,
}

impl Gen {
    fn literal<R: Rng + ?Sized>(&self, rng: &mut R) -> ScalarLiteral {
        let comp = |rng: &mut R, den_max: i64| {
            BigRational::new(rng.gen_range(-12i64..=12).into(), rng.gen_range(1..=den_max).into())
        };
        match self.model {
            Model::Gf(_) => ScalarLiteral::integer(rng.gen_range(-3..=20)),
            Model::Rational => {
                let mut lit = ScalarLiteral::integer(0);
                lit.0[0] = comp(rng, 6);
                lit
            }
            Model::Quaternion => {
                let mut lit = ScalarLiteral::integer(0);
                for c in lit.0.iter_mut() {
                    if rng.gen_bool(0.6) {
                        *c = comp(rng, 3);
                    }
                }
                lit
            }
        }
    }

    fn bound<R: Rng + ?Sized>(&self, rng: &mut R, want: impl Fn(Ty) -> bool) -> Option<String> {
        let choices: Vec<&String> = self.names.iter().filter(|(_, t)| want(*t)).map(|(n, _)| n).collect();
        choices.choose(rng).map(|s| (*s).clone())
    }

    fn arg<R: Rng + ?Sized>(&self, slot: Slot, rng: &mut R) -> Option<Arg> {
        match slot {
            Slot::Point => {
                if rng.gen_bool(0.7) {
                    if let Some(n) = self.bound(rng, |t| t == Ty::Point) {
                        return Some(Arg::Ident(n));
                    }
                }
                Some(Arg::Point(self.literal(rng), self.literal(rng)))
            }
            Slot::Line | Slot::Chart | Slot::Same => {
                self.bound(rng, |t| slot.accepts(t)).map(Arg::Ident)
            }
            Slot::Scalar => None,
        }
    }

    fn call<K: Signature, R: Rng + ?Sized>(&self, op: K, rng: &mut R) -> Option<Call<K>> {
        let mut params = Vec::new();
        let mut same: Option<Ty> = None;
        for &slot in op.slots() {
            params.push(match slot {
                Slot::Scalar => Param::Scalar(self.literal(rng)),
                Slot::Same => {
                    let ty = *same.get_or_insert_with(|| *[Ty::Point, Ty::Line, Ty::Chart].choose(rng).expect("nonempty"));
                    let arg = if ty == Ty::Point {
                        self.arg(Slot::Point, rng)?
                    } else {
                        Arg::Ident(self.bound(rng, |t| t == ty)?)
                    };
                    Param::Arg(arg)
                }
                _ => Param::Arg(self.arg(slot, rng)?),
            });
        }
        let on = if op.takes_chart() {
            Some(self.arg(Slot::Chart, rng)?)
        } else {
            None
        };
        Some(Call { op, params, on })
    }

    fn statement<R: Rng + ?Sized>(&mut self, rng: &mut R) -> StatementKind {
        loop {
            match rng.gen_range(0..10) {
                0..=6 => {
                    let op = *Op::ALL.choose(rng).expect("nonempty");
                    if let Some(call) = self.call(op, rng) {
                        let name = format!("{}{}", ["p", "l", "c"][op.result() as usize], self.names.len());
                        self.names.push((name.clone(), op.result()));
                        return StatementKind::Let { name, call };
                    }
                }
                7 | 8 => {
                    let check = *Check::ALL.choose(rng).expect("nonempty");
                    if let Some(call) = self.call(check, rng) {
                        return StatementKind::Assert(call);
                    }
                }
                _ => {
                    let alphabet: Vec<char> = "abcXYZ019-_. /#;".chars().collect();
                    let len = rng.gen_range(1..=8);
                    let name: String = (0..len).map(|_| *alphabet.choose(rng).expect("nonempty")).collect();
                    return StatementKind::Emit(name);
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::super::{parse, print};
    use super::*;

    #[test]
    fn generated_scripts_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for model in [Model::Gf(5), Model::Rational, Model::Quaternion] {
            for _ in 0..50 {
                let s = random_script(model, &mut rng);
                let text = print(&s);
                let back = parse(&text).unwrap_or_else(|d| panic!("{text}\n{d:?}"));
                assert_eq!(back, s, "{text}");
            }
        }
    }
}
