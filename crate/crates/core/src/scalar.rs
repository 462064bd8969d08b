//! Exact skew-field arithmetic over three interchangeable models.
//!
//! A [`Scalar`] carries its model; binary operations between scalars of
//! different models fail with [`Error::ModelMismatch`]. Every value is kept in
//! a canonical form, so `==` is exact field equality.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quaternion::Quaternion;

/// Largest prime accepted for `gf(p)`; keeps residue products inside `u64`.
pub const MAX_PRIME: u64 = 1 << 31;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Model {
    Rational,
    Gf(u32),
    Quaternion,
}

impl Model {
    /// `gf(p)`, rejecting composite or out-of-range `p`.
    pub fn gf(p: u64) -> Result<Self> {
        if p >= MAX_PRIME || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Model::Gf(p as u32))
    }

    pub fn zero(self) -> Scalar {
        self.int(0)
    }

    pub fn one(self) -> Scalar {
        self.int(1)
    }

    /// Image of an integer under the canonical ring map.
    pub fn int(self, n: i64) -> Scalar {
        match self {
            Model::Rational => Scalar::Rational(BigRational::from_integer(n.into())),
            Model::Gf(p) => Scalar::Gf(Residue::new(n, p)),
            Model::Quaternion => Scalar::Quaternion(Quaternion::from_integers([n, 0, 0, 0])),
        }
    }

    /// Quaternion with integer components; only meaningful for the quaternion model.
    pub fn quaternion(self, c: [i64; 4]) -> Result<Scalar> {
        match self {
            Model::Quaternion => Ok(Scalar::Quaternion(Quaternion::from_integers(c))),
            _ if c[1..] == [0, 0, 0] => Ok(self.int(c[0])),
            _ => Err(Error::InvalidLiteral {
                text: format!("{c:?}"),
                reason: format!("imaginary units are not available in {self}"),
            }),
        }
    }

    pub fn is_commutative(self) -> bool {
        !matches!(self, Model::Quaternion)
    }

    pub fn characteristic(self) -> u64 {
        match self {
            Model::Gf(p) => p as u64,
            _ => 0,
        }
    }

    /// All elements, for finite models.
    pub fn elements(self) -> Option<Vec<Scalar>> {
        match self {
            Model::Gf(p) => Some((0..p as i64).map(|v| self.int(v)).collect()),
            _ => None,
        }
    }

    pub fn parse_scalar(self, text: &str) -> Result<Scalar> {
        self.scalar_from_literal(&text.parse::<ScalarLiteral>()?, text)
    }

    pub fn scalar_from_literal(self, lit: &ScalarLiteral, text: &str) -> Result<Scalar> {
        let bad = |reason: String| Error::InvalidLiteral {
            text: text.to_string(),
            reason,
        };
        let [re, i, j, k] = &lit.0;
        let real_only = i.is_zero() && j.is_zero() && k.is_zero();
        match self {
            Model::Quaternion => Ok(Scalar::Quaternion(Quaternion::from_components(lit.0.clone()))),
            _ if !real_only => Err(bad(format!("imaginary units are not available in {self}"))),
            Model::Rational => Ok(Scalar::Rational(re.clone())),
            Model::Gf(p) => {
                if !re.is_integer() {
                    return Err(bad("gf literals must be integers".into()));
                }
                let v = (re.numer() % BigInt::from(p)).to_i64().expect("residue fits");
                Ok(Scalar::Gf(Residue::new(v, p)))
            }
        }
    }

    /// A reproducible random element. Rationals and quaternion components are
    /// drawn with small numerators and denominators.
    pub fn random_scalar<R: Rng + ?Sized>(self, rng: &mut R) -> Scalar {
        let small = |rng: &mut R| {
            BigRational::new(rng.gen_range(-9i64..=9).into(), rng.gen_range(1i64..=4).into())
        };
        match self {
            Model::Rational => Scalar::Rational(small(rng)),
            Model::Gf(p) => Scalar::Gf(Residue::new(rng.gen_range(0..p as i64), p)),
            Model::Quaternion => {
                let comps = [small(rng), small(rng), small(rng), small(rng)];
                Scalar::Quaternion(Quaternion::from_components(comps))
            }
        }
    }

    pub fn random_nonzero<R: Rng + ?Sized>(self, rng: &mut R) -> Scalar {
        loop {
            let s = self.random_scalar(rng);
            if !s.is_zero() {
                return s;
            }
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Model::Rational => f.write_str("rational"),
            Model::Gf(p) => write!(f, "gf({p})"),
            Model::Quaternion => f.write_str("quaternion"),
        }
    }
}

/// Accepts `rational`, `quaternion`, `gf(p)` and `gf:p`.
impl FromStr for Model {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "rational" => return Ok(Model::Rational),
            "quaternion" => return Ok(Model::Quaternion),
            _ => {}
        }
        let p = s
            .strip_prefix("gf:")
            .or_else(|| s.strip_prefix("gf(").and_then(|r| r.strip_suffix(')')))
            .ok_or_else(|| Error::InvalidModel(s.to_string()))?;
        let p: u64 = p
            .trim()
            .parse()
            .map_err(|_| Error::InvalidModel(s.to_string()))?;
        Model::gf(p)
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Least non-negative residue modulo a prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Residue {
    value: u32,
    p: u32,
}

impl Residue {
    fn new(v: i64, p: u32) -> Self {
        Self {
            value: v.rem_euclid(p as i64) as u32,
            p,
        }
    }

    pub fn value(self) -> u32 {
        self.value
    }

    fn add(self, o: Self) -> Self {
        Self::new(self.value as i64 + o.value as i64, self.p)
    }

    fn mul(self, o: Self) -> Self {
        let v = (self.value as u64 * o.value as u64) % self.p as u64;
        Self::new(v as i64, self.p)
    }

    fn inv(self) -> Option<Self> {
        if self.value == 0 {
            return None;
        }
        // Fermat: a^(p-2)
        let (mut base, mut exp, mut acc) = (self.value as u64, self.p as u64 - 2, 1u64);
        let m = self.p as u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % m;
            }
            base = base * base % m;
            exp >>= 1;
        }
        Some(Self::new(acc as i64, self.p))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Gf(Residue),
    Quaternion(Quaternion),
}

impl Scalar {
    pub fn model(&self) -> Model {
        match self {
            Scalar::Rational(_) => Model::Rational,
            Scalar::Gf(r) => Model::Gf(r.p),
            Scalar::Quaternion(_) => Model::Quaternion,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Gf(r) => r.value == 0,
            Scalar::Quaternion(q) => q.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        *self == self.model().one()
    }

    fn mismatch(&self, other: &Scalar) -> Error {
        Error::ModelMismatch(self.model(), other.model())
    }

    pub fn add(&self, other: &Scalar) -> Result<Scalar> {
        Ok(match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Gf(a), Scalar::Gf(b)) if a.p == b.p => Scalar::Gf(a.add(*b)),
            (Scalar::Quaternion(a), Scalar::Quaternion(b)) => Scalar::Quaternion(a.add(b)),
            _ => return Err(self.mismatch(other)),
        })
    }

    pub fn sub(&self, other: &Scalar) -> Result<Scalar> {
        self.add(&other.neg())
    }

    /// Product with `self` as the left factor.
    pub fn mul(&self, other: &Scalar) -> Result<Scalar> {
        Ok(match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Gf(a), Scalar::Gf(b)) if a.p == b.p => Scalar::Gf(a.mul(*b)),
            (Scalar::Quaternion(a), Scalar::Quaternion(b)) => Scalar::Quaternion(a.mul(b)),
            _ => return Err(self.mismatch(other)),
        })
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Gf(a) => Scalar::Gf(Residue::new(-(a.value as i64), a.p)),
            Scalar::Quaternion(a) => Scalar::Quaternion(a.neg()),
        }
    }

    pub fn inv(&self) -> Result<Scalar> {
        match self {
            Scalar::Rational(a) if a.is_zero() => Err(Error::ZeroInverse),
            Scalar::Rational(a) => Ok(Scalar::Rational(a.recip())),
            Scalar::Gf(a) => a.inv().map(Scalar::Gf).ok_or(Error::ZeroInverse),
            Scalar::Quaternion(a) => a.inv().map(Scalar::Quaternion).ok_or(Error::ZeroInverse),
        }
    }

    /// `n`-fold sum `a + a + ... + a` by repeated doubling. `n = 0` gives zero.
    pub fn nat(&self, n: u64) -> Scalar {
        let mut acc = self.model().zero();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.add(&base).expect("same model");
            }
            base = base.add(&base).expect("same model");
            n >>= 1;
        }
        acc
    }

    /// Real part as an `f64`, used only for drawing.
    pub fn approx_real(&self) -> f64 {
        match self {
            Scalar::Rational(a) => a.to_f64().unwrap_or(0.0),
            Scalar::Gf(a) => a.value as f64,
            Scalar::Quaternion(q) => q.components()[0].to_f64().unwrap_or(0.0),
        }
    }

    /// Sum of the imaginary parts as an `f64`, used only for drawing.
    pub fn approx_imag(&self) -> f64 {
        match self {
            Scalar::Quaternion(q) => q.components()[1..]
                .iter()
                .map(|c| c.to_f64().unwrap_or(0.0))
                .sum(),
            _ => 0.0,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(a) if a.is_integer() => write!(f, "{}", a.numer()),
            Scalar::Rational(a) => write!(f, "{}/{}", a.numer(), a.denom()),
            Scalar::Gf(a) => write!(f, "{}", a.value),
            Scalar::Quaternion(q) => write!(f, "{q}"),
        }
    }
}

/// A model-independent scalar literal `a + b i + c j + d k` with rational
/// coefficients, as written in scripts and traces.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ScalarLiteral(pub [BigRational; 4]);

impl ScalarLiteral {
    pub fn integer(n: i64) -> Self {
        let mut c: [BigRational; 4] = Default::default();
        c[0] = BigRational::from_integer(n.into());
        Self(c)
    }
}

impl FromStr for ScalarLiteral {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let bad = |reason: &str| Error::InvalidLiteral {
            text: text.to_string(),
            reason: reason.to_string(),
        };
        let chars: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
        if chars.is_empty() {
            return Err(bad("empty literal"));
        }
        let mut comps: [BigRational; 4] = Default::default();
        let mut pos = 0;
        let mut first = true;
        while pos < chars.len() {
            let mut negative = false;
            match chars[pos] {
                '+' => pos += 1,
                '-' => {
                    negative = true;
                    pos += 1
                }
                _ if first => {}
                c => return Err(bad(&format!("unexpected `{c}`"))),
            }
            first = false;
            let digits = |pos: &mut usize| {
                let start = *pos;
                while *pos < chars.len() && chars[*pos].is_ascii_digit() {
                    *pos += 1;
                }
                (start < *pos).then(|| {
                    chars[start..*pos]
                        .iter()
                        .collect::<String>()
                        .parse::<BigInt>()
                        .expect("digits")
                })
            };
            let mut coeff = match digits(&mut pos) {
                Some(n) => {
                    let mut r = BigRational::from_integer(n);
                    if pos < chars.len() && chars[pos] == '/' {
                        pos += 1;
                        let d = digits(&mut pos).ok_or_else(|| bad("missing denominator"))?;
                        if d.is_zero() {
                            return Err(bad("zero denominator"));
                        }
                        r /= BigRational::from_integer(d);
                    }
                    Some(r)
                }
                None => None,
            };
            let unit = match chars.get(pos) {
                Some('i') => Some(1),
                Some('j') => Some(2),
                Some('k') => Some(3),
                _ => None,
            };
            if unit.is_some() {
                pos += 1;
            }
            let slot = match (coeff.is_some(), unit) {
                (false, None) => return Err(bad("expected a number or unit")),
                (_, Some(u)) => u,
                (true, None) => 0,
            };
            let mut value = coeff.take().unwrap_or_else(BigRational::one);
            if negative {
                value = -value;
            }
            comps[slot] += value;
        }
        Ok(Self(comps))
    }
}

impl fmt::Display for ScalarLiteral {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [re, i, j, k] = &self.0;
        if i.is_zero() && j.is_zero() && k.is_zero() {
            if re.is_integer() {
                return write!(f, "{}", re.numer());
            }
            let sign = if re.is_negative() { "-" } else { "" };
            return write!(f, "{sign}{}/{}", re.numer().abs(), re.denom());
        }
        write!(f, "{}", Quaternion::from_components(self.0.clone()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn gf7(v: i64) -> Scalar {
        Model::Gf(7).int(v)
    }

    fn quat(c: [i64; 4]) -> Scalar {
        Model::Quaternion.quaternion(c).unwrap()
    }

    #[test]
    fn gf_examples() {
        assert_eq!(gf7(3).add(&gf7(5)).unwrap(), gf7(1));
        assert_eq!(gf7(3).mul(&gf7(5)).unwrap(), gf7(1));
        assert_eq!(gf7(3).neg(), gf7(4));
        assert_eq!(gf7(5).inv().unwrap(), gf7(3));
        assert_eq!(gf7(4).nat(3), gf7(5));
        assert_eq!(gf7(4).nat(7), gf7(0));
        assert_eq!(gf7(0).neg(), gf7(0));
    }

    #[test]
    fn quaternion_examples() {
        let (i, j, k) = (quat([0, 1, 0, 0]), quat([0, 0, 1, 0]), quat([0, 0, 0, 1]));
        assert_eq!(i.add(&j).unwrap(), quat([0, 1, 1, 0]));
        assert_eq!(i.mul(&j).unwrap(), k);
        assert_eq!(j.mul(&i).unwrap(), k.neg());
        assert_eq!(i.neg(), quat([0, -1, 0, 0]));
        assert_eq!(j.inv().unwrap(), quat([0, 0, -1, 0]));
    }

    #[test]
    fn identities_in_every_model() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for model in [Model::Rational, Model::Gf(7), Model::Quaternion] {
            let a = model.random_nonzero(&mut rng);
            assert_eq!(a.add(&model.zero()).unwrap(), a);
            assert_eq!(a.mul(&model.one()).unwrap(), a);
            assert_eq!(a.nat(1), a);
            assert_eq!(model.one().inv().unwrap(), model.one());
        }
    }

    #[test]
    fn errors() {
        assert_eq!(Model::gf(4), Err(Error::NotPrime(4)));
        assert_eq!(Model::gf(1), Err(Error::NotPrime(1)));
        assert_eq!(gf7(0).inv(), Err(Error::ZeroInverse));
        assert_eq!(quat([0; 4]).inv(), Err(Error::ZeroInverse));
        assert!(matches!(
            gf7(1).add(&Model::Gf(5).int(1)),
            Err(Error::ModelMismatch(..))
        ));
        assert!(matches!(
            gf7(1).mul(&Model::Rational.int(1)),
            Err(Error::ModelMismatch(..))
        ));
    }

    #[test]
    fn model_names() {
        assert_eq!("gf:5".parse::<Model>().unwrap(), Model::Gf(5));
        assert_eq!("gf(13)".parse::<Model>().unwrap(), Model::Gf(13));
        assert_eq!("quaternion".parse::<Model>().unwrap(), Model::Quaternion);
        assert!("gf:4".parse::<Model>().is_err());
        assert!("reals".parse::<Model>().is_err());
        assert_eq!(Model::Gf(7).to_string(), "gf(7)");
    }

    #[test]
    fn literals() {
        let q = Model::Quaternion;
        assert_eq!(q.parse_scalar("1+2i-3j+4k").unwrap(), quat([1, 2, -3, 4]));
        assert_eq!(q.parse_scalar("-k").unwrap(), quat([0, 0, 0, -1]));
        assert_eq!(q.parse_scalar(" i + 1 ").unwrap(), quat([1, 1, 0, 0]));
        assert_eq!(
            Model::Rational.parse_scalar("-3/6").unwrap(),
            Scalar::Rational(BigRational::new((-1).into(), 2.into()))
        );
        assert_eq!(Model::Gf(7).parse_scalar("-3").unwrap(), gf7(4));
        assert!(Model::Gf(7).parse_scalar("1/2").is_err());
        assert!(Model::Rational.parse_scalar("i").is_err());
        assert!(Model::Rational.parse_scalar("1/0").is_err());
        assert!(Model::Rational.parse_scalar("").is_err());
        assert!(Model::Rational.parse_scalar("2i3").is_err());
        assert_eq!(
            Model::Rational.parse_scalar(" 1 / 2 ").unwrap(),
            Scalar::Rational(BigRational::new(1.into(), 2.into()))
        );
        assert!(Model::Rational.parse_scalar("1+").is_err());
    }

    fn model_strategy() -> impl Strategy<Value = Model> {
        prop_oneof![
            Just(Model::Rational),
            Just(Model::Gf(5)),
            Just(Model::Gf(7)),
            Just(Model::Gf(13)),
            Just(Model::Quaternion),
        ]
    }

    proptest! {
        #[test]
        fn display_parses_back(model in model_strategy(), seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let s = model.random_scalar(&mut rng);
            prop_assert_eq!(model.parse_scalar(&s.to_string()).unwrap(), s);
        }

        #[test]
        fn nat_is_central(model in model_strategy(), seed in any::<u64>(), n in 1u64..=20) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let a = model.random_scalar(&mut rng);
            let n_one = model.one().nat(n);
            prop_assert_eq!(a.nat(n), n_one.mul(&a).unwrap());
            prop_assert_eq!(a.nat(n), a.mul(&n_one).unwrap());
        }
    }
}
