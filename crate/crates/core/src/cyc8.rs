//! Exact arithmetic in the eighth-cyclotomic extension of the rationals.
//!
//! An element is stored on the basis `1, ζ, ζ², ζ³` with `ζ = e^{iπ/4}`, so
//! `ζ⁴ = -1`. This is the smallest ring containing `0`, `1`, `i = ζ²` and
//! `(1 ± i)/√2 = ζ, ζ̄` exactly, which is all the vertex-weight constants the
//! contraction engine ever needs.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

/// `c[0] + c[1]ζ + c[2]ζ² + c[3]ζ³` with exact rational coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Cyc8Json", into = "Cyc8Json")]
pub struct Cyc8 {
    c: [BigRational; 4],
}

impl Cyc8 {
    pub fn new(c: [BigRational; 4]) -> Self {
        Cyc8 { c }
    }

    pub fn zero() -> Self {
        Cyc8 {
            c: [
                BigRational::zero(),
                BigRational::zero(),
                BigRational::zero(),
                BigRational::zero(),
            ],
        }
    }

    pub fn one() -> Self {
        let mut v = Cyc8::zero();
        v.c[0] = BigRational::one();
        v
    }

    pub fn from_int(n: i64) -> Self {
        let mut v = Cyc8::zero();
        v.c[0] = BigRational::from_integer(BigInt::from(n));
        v
    }

    pub fn from_bigint(n: BigInt) -> Self {
        let mut v = Cyc8::zero();
        v.c[0] = BigRational::from_integer(n);
        v
    }

    pub fn from_rational(r: BigRational) -> Self {
        let mut v = Cyc8::zero();
        v.c[0] = r;
        v
    }

    /// `ζ = (1+i)/√2`.
    pub fn zeta() -> Self {
        let mut v = Cyc8::zero();
        v.c[1] = BigRational::one();
        v
    }

    /// `ζ̄ = ζ⁻¹ = -ζ³ = (1-i)/√2`.
    pub fn zeta_conj() -> Self {
        let mut v = Cyc8::zero();
        v.c[3] = -BigRational::one();
        v
    }

    /// `i = ζ²`.
    pub fn i() -> Self {
        let mut v = Cyc8::zero();
        v.c[2] = BigRational::one();
        v
    }

    pub fn coords(&self) -> &[BigRational; 4] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.c[0].is_one() && self.c[1].is_zero() && self.c[2].is_zero() && self.c[3].is_zero()
    }

    /// Complex conjugation: `ζ ↦ ζ⁻¹ = -ζ³`, so `(c0,c1,c2,c3) ↦ (c0,-c3,-c2,-c1)`.
    pub fn conj(&self) -> Self {
        Cyc8 {
            c: [
                self.c[0].clone(),
                -self.c[3].clone(),
                -self.c[2].clone(),
                -self.c[1].clone(),
            ],
        }
    }

    /// The rational part if the ζ, ζ², ζ³ coordinates all vanish.
    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.c[1].is_zero() && self.c[2].is_zero() && self.c[3].is_zero() {
            Some(&self.c[0])
        } else {
            None
        }
    }

    /// The value as an exact integer, if it is one.
    pub fn as_integer(&self) -> Option<BigInt> {
        let r = self.as_rational()?;
        if r.is_integer() {
            Some(r.to_integer())
        } else {
            None
        }
    }

    fn add_ref(&self, rhs: &Cyc8) -> Cyc8 {
        Cyc8 {
            c: [
                &self.c[0] + &rhs.c[0],
                &self.c[1] + &rhs.c[1],
                &self.c[2] + &rhs.c[2],
                &self.c[3] + &rhs.c[3],
            ],
        }
    }

    fn sub_ref(&self, rhs: &Cyc8) -> Cyc8 {
        Cyc8 {
            c: [
                &self.c[0] - &rhs.c[0],
                &self.c[1] - &rhs.c[1],
                &self.c[2] - &rhs.c[2],
                &self.c[3] - &rhs.c[3],
            ],
        }
    }

    /// Product using `ζ^k = -ζ^{k-4}` for `k ≥ 4`.
    fn mul_ref(&self, rhs: &Cyc8) -> Cyc8 {
        let mut out = [
            BigRational::zero(),
            BigRational::zero(),
            BigRational::zero(),
            BigRational::zero(),
        ];
        for i in 0..4 {
            if self.c[i].is_zero() {
                continue;
            }
            for j in 0..4 {
                if rhs.c[j].is_zero() {
                    continue;
                }
                let p = &self.c[i] * &rhs.c[j];
                let k = i + j;
                if k < 4 {
                    out[k] += p;
                } else {
                    out[k - 4] -= p;
                }
            }
        }
        Cyc8 { c: out }
    }
}

impl Add for Cyc8 {
    type Output = Cyc8;
    fn add(self, rhs: Cyc8) -> Cyc8 {
        self.add_ref(&rhs)
    }
}

impl<'a> Add<&'a Cyc8> for &Cyc8 {
    type Output = Cyc8;
    fn add(self, rhs: &'a Cyc8) -> Cyc8 {
        self.add_ref(rhs)
    }
}

impl AddAssign<&Cyc8> for Cyc8 {
    fn add_assign(&mut self, rhs: &Cyc8) {
        for k in 0..4 {
            self.c[k] += &rhs.c[k];
        }
    }
}

impl Sub for Cyc8 {
    type Output = Cyc8;
    fn sub(self, rhs: Cyc8) -> Cyc8 {
        self.sub_ref(&rhs)
    }
}

impl<'a> Sub<&'a Cyc8> for &Cyc8 {
    type Output = Cyc8;
    fn sub(self, rhs: &'a Cyc8) -> Cyc8 {
        self.sub_ref(rhs)
    }
}

impl SubAssign<&Cyc8> for Cyc8 {
    fn sub_assign(&mut self, rhs: &Cyc8) {
        for k in 0..4 {
            self.c[k] -= &rhs.c[k];
        }
    }
}

impl Mul for Cyc8 {
    type Output = Cyc8;
    fn mul(self, rhs: Cyc8) -> Cyc8 {
        self.mul_ref(&rhs)
    }
}

impl<'a> Mul<&'a Cyc8> for &Cyc8 {
    type Output = Cyc8;
    fn mul(self, rhs: &'a Cyc8) -> Cyc8 {
        self.mul_ref(rhs)
    }
}

impl Neg for Cyc8 {
    type Output = Cyc8;
    fn neg(self) -> Cyc8 {
        Cyc8 {
            c: [
                -self.c[0].clone(),
                -self.c[1].clone(),
                -self.c[2].clone(),
                -self.c[3].clone(),
            ],
        }
    }
}

impl fmt::Display for Cyc8 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let names = ["", "z8", "z8^2", "z8^3"];
        let mut first = true;
        for (k, name) in names.iter().enumerate() {
            if self.c[k].is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if k == 0 {
                write!(f, "{}", self.c[k])?;
            } else if self.c[k].is_one() {
                write!(f, "{name}")?;
            } else {
                write!(f, "({})*{name}", self.c[k])?;
            }
        }
        Ok(())
    }
}

/// Wire form: four integer numerators over one common positive denominator,
/// all as exact decimal strings.
#[derive(Serialize, Deserialize)]
pub struct Cyc8Json {
    pub c0: String,
    pub c1: String,
    pub c2: String,
    pub c3: String,
    pub den: String,
}

impl From<Cyc8> for Cyc8Json {
    fn from(v: Cyc8) -> Cyc8Json {
        let mut den = BigInt::one();
        for k in 0..4 {
            den = den.lcm(v.c[k].denom());
        }
        let numer = |k: usize| (&v.c[k] * BigRational::from_integer(den.clone())).to_integer();
        Cyc8Json {
            c0: numer(0).to_string(),
            c1: numer(1).to_string(),
            c2: numer(2).to_string(),
            c3: numer(3).to_string(),
            den: den.to_string(),
        }
    }
}

impl TryFrom<Cyc8Json> for Cyc8 {
    type Error = String;

    fn try_from(j: Cyc8Json) -> Result<Cyc8, String> {
        let parse = |s: &str| -> Result<BigInt, String> {
            s.parse::<BigInt>()
                .map_err(|_| format!("invalid integer literal {s:?}"))
        };
        let den = parse(&j.den)?;
        if !den.is_positive() {
            return Err(format!("denominator must be positive, got {}", j.den));
        }
        let coord =
            |s: &str| -> Result<BigRational, String> { Ok(BigRational::new(parse(s)?, den.clone())) };
        Ok(Cyc8 {
            c: [coord(&j.c0)?, coord(&j.c1)?, coord(&j.c2)?, coord(&j.c3)?],
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zeta_fourth_power_is_minus_one() {
        let z = Cyc8::zeta();
        let z4 = &(&(&z * &z) * &z) * &z;
        assert_eq!(z4, -Cyc8::one());
    }

    #[test]
    fn zeta_times_conjugate_is_one() {
        let z = Cyc8::zeta();
        assert_eq!(&z * &z.conj(), Cyc8::one());
    }

    #[test]
    fn zeta_squared_is_i() {
        let z = Cyc8::zeta();
        assert_eq!(&z * &z, Cyc8::i());
        assert_eq!(Cyc8::i().conj(), -Cyc8::i());
    }

    #[test]
    fn conjugation_is_an_involution_and_ring_hom() {
        let a = &Cyc8::zeta() + &Cyc8::from_int(3);
        let b = &Cyc8::i() - &Cyc8::zeta_conj();
        assert_eq!(a.conj().conj(), a);
        assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
    }

    #[test]
    fn zeta_conj_squared_is_minus_i() {
        // ((1-i)/√2)² = -i, the γ weight of an odd path rooted in V2.
        let zc = Cyc8::zeta_conj();
        assert_eq!(&zc * &zc, -Cyc8::i());
    }

    #[test]
    fn json_round_trip_common_denominator() {
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        let third = BigRational::new(BigInt::from(-1), BigInt::from(3));
        let v = Cyc8::new([
            half,
            third,
            BigRational::zero(),
            BigRational::from_integer(BigInt::from(2)),
        ]);
        let j = Cyc8Json::from(v.clone());
        assert_eq!(j.den, "6");
        assert_eq!(j.c0, "3");
        assert_eq!(j.c1, "-2");
        assert_eq!(j.c2, "0");
        assert_eq!(j.c3, "12");
        let back = Cyc8::try_from(j).unwrap();
        assert_eq!(back, v);
    }

    #[test]
    fn json_rejects_nonpositive_denominator() {
        let j = Cyc8Json {
            c0: "1".into(),
            c1: "0".into(),
            c2: "0".into(),
            c3: "0".into(),
            den: "0".into(),
        };
        assert!(Cyc8::try_from(j).is_err());
    }

    #[test]
    fn integer_extraction() {
        assert_eq!(Cyc8::from_int(-7).as_integer(), Some(BigInt::from(-7)));
        assert_eq!(Cyc8::i().as_integer(), None);
        let half = Cyc8::from_rational(BigRational::new(BigInt::from(1), BigInt::from(2)));
        assert!(half.as_rational().is_some());
        assert_eq!(half.as_integer(), None);
    }
}
