//! Quaternions with rational components, stored over a common denominator.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// `(w + x i + y j + z k) / den` with `den > 0` and the five integers coprime.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quaternion {
    num: [BigInt; 4],
    den: BigInt,
}

impl Quaternion {
    pub fn zero() -> Self {
        Self {
            num: Default::default(),
            den: BigInt::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_integers([1, 0, 0, 0])
    }

    pub fn from_integers(c: [i64; 4]) -> Self {
        Self::normalized(c.map(BigInt::from), BigInt::one())
    }

    pub fn from_components(c: [BigRational; 4]) -> Self {
        let den = c
            .iter()
            .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
        let num = c.map(|r| r.numer() * (&den / r.denom()));
        Self::normalized(num, den)
    }

    fn normalized(mut num: [BigInt; 4], mut den: BigInt) -> Self {
        assert!(!den.is_zero(), "quaternion with zero denominator");
        if den.is_negative() {
            den = -den;
            for n in &mut num {
                *n = -&*n;
            }
        }
        let g = num.iter().fold(den.clone(), |g, n| g.gcd(n));
        if !g.is_one() {
            for n in &mut num {
                *n /= &g;
            }
            den /= &g;
        }
        Self { num, den }
    }

    /// Components `[w, x, y, z]` as exact rationals.
    pub fn components(&self) -> [BigRational; 4] {
        self.num
            .clone()
            .map(|n| BigRational::new(n, self.den.clone()))
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let num = [0, 1, 2, 3].map(|i| &self.num[i] * &other.den + &other.num[i] * &self.den);
        Self::normalized(num, &self.den * &other.den)
    }

    pub fn neg(&self) -> Self {
        Self {
            num: self.num.clone().map(|n| -n),
            den: self.den.clone(),
        }
    }

    /// Hamilton product, `self` on the left.
    pub fn mul(&self, other: &Self) -> Self {
        let [a1, b1, c1, d1] = &self.num;
        let [a2, b2, c2, d2] = &other.num;
        let num = [
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        ];
        Self::normalized(num, &self.den * &other.den)
    }

    /// `conj(q) / |q|^2`; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let norm: BigInt = self.num.iter().map(|n| n * n).sum();
        let [a, b, c, d] = &self.num;
        let num = [a * &self.den, -(b * &self.den), -(c * &self.den), -(d * &self.den)];
        Some(Self::normalized(num, norm))
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let comps = self.components();
        let units = ["", "i", "j", "k"];
        let mut wrote = false;
        for (c, unit) in comps.iter().zip(units) {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            let mag = c.abs();
            if negative {
                f.write_str("-")?;
            } else if wrote {
                f.write_str("+")?;
            }
            if !(mag.is_one() && !unit.is_empty()) {
                if mag.is_integer() {
                    write!(f, "{}", mag.numer())?;
                } else {
                    write!(f, "{}/{}", mag.numer(), mag.denom())?;
                }
            }
            f.write_str(unit)?;
            wrote = true;
        }
        if !wrote {
            f.write_str("0")?;
        }
        Ok(())
    }
}
