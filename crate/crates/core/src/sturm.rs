//! Dense univariate polynomial arithmetic over exact rationals: Euclidean
//! remainders, gcd, Yun square-free factorization, and Sturm chains with sign
//! variation counts at rational or infinite endpoints.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Dense ascending rational coefficients, trailing zeros stripped. The zero
/// polynomial is the empty list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatPoly {
    coeffs: Vec<BigRational>,
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn zero() -> Self {
        RatPoly { coeffs: Vec::new() }
    }

    pub fn from_bigints(ints: &[BigInt]) -> Self {
        RatPoly::new(
            ints.iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect(),
        )
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn constant_term(&self) -> BigRational {
        self.coeffs.first().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> RatPoly {
        if self.coeffs.len() <= 1 {
            return RatPoly::zero();
        }
        RatPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigRational::from_integer(BigInt::from(k)))
                .collect(),
        )
    }

    pub fn scale(&self, s: &BigRational) -> RatPoly {
        RatPoly::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn monic(&self) -> RatPoly {
        match self.leading() {
            None => RatPoly::zero(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    /// Division by the absolute value of the leading coefficient: normalizes
    /// magnitude without touching signs, which Sturm chains rely on.
    pub fn keep_sign_normalized(&self) -> RatPoly {
        match self.leading() {
            None => RatPoly::zero(),
            Some(lc) => self.scale(&lc.abs().recip()),
        }
    }

    pub fn sub(&self, rhs: &RatPoly) -> RatPoly {
        let mut coeffs = vec![BigRational::zero(); self.coeffs.len().max(rhs.coeffs.len())];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[k] += c;
        }
        for (k, c) in rhs.coeffs.iter().enumerate() {
            coeffs[k] -= c;
        }
        RatPoly::new(coeffs)
    }

    pub fn mul(&self, rhs: &RatPoly) -> RatPoly {
        if self.is_zero() || rhs.is_zero() {
            return RatPoly::zero();
        }
        let mut coeffs =
            vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        RatPoly::new(coeffs)
    }

    /// Euclidean remainder of `self` by `divisor` (nonzero).
    pub fn rem(&self, divisor: &RatPoly) -> RatPoly {
        let d = divisor.degree().expect("division by zero polynomial");
        let lc = divisor.leading().unwrap().clone();
        let mut rest = self.coeffs.clone();
        while rest.len() > d {
            let k = rest.len() - 1;
            let factor = &rest[k] / &lc;
            if !factor.is_zero() {
                for (j, c) in divisor.coeffs.iter().enumerate() {
                    let idx = k - d + j;
                    let delta = c * &factor;
                    rest[idx] -= delta;
                }
            }
            rest.pop();
        }
        RatPoly::new(rest)
    }

    /// Exact quotient; panics if the division is not exact (internal use on
    /// known-divisible pairs).
    pub fn div_exact(&self, divisor: &RatPoly) -> RatPoly {
        let d = divisor.degree().expect("division by zero polynomial");
        let lc = divisor.leading().unwrap().clone();
        let mut rest = self.coeffs.clone();
        let mut q = vec![BigRational::zero(); self.coeffs.len().saturating_sub(d)];
        while rest.len() > d {
            let k = rest.len() - 1;
            let factor = &rest[k] / &lc;
            q[k - d] = factor.clone();
            for (j, c) in divisor.coeffs.iter().enumerate() {
                let idx = k - d + j;
                let delta = c * &factor;
                rest[idx] -= delta;
            }
            rest.pop();
        }
        assert!(
            rest.iter().all(Zero::is_zero),
            "div_exact called on a non-divisible pair"
        );
        RatPoly::new(q)
    }

    /// Monic greatest common divisor by the Euclidean algorithm.
    pub fn gcd(&self, rhs: &RatPoly) -> RatPoly {
        let mut a = self.clone();
        let mut b = rhs.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r.keep_sign_normalized();
        }
        a.monic()
    }

    /// The square-free part `self / gcd(self, self')`, monic.
    pub fn square_free_part(&self) -> RatPoly {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        if g.degree() == Some(0) {
            self.monic()
        } else {
            self.div_exact(&g).monic()
        }
    }

    /// Yun square-free factorization: returns monic `f_1, …, f_k` with
    /// `self = lc · Π f_i^i`. Factors of degree zero are kept as `1` so the
    /// index equals the multiplicity.
    pub fn yun(&self) -> Vec<RatPoly> {
        let p = self.monic();
        if p.degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        let dp = p.derivative();
        let a0 = p.gcd(&dp);
        if a0.degree() == Some(0) {
            return vec![p];
        }
        let mut factors = Vec::new();
        let mut b = p.div_exact(&a0);
        let mut c = dp.div_exact(&a0);
        let mut d = c.sub(&b.derivative());
        while b.degree().unwrap_or(0) > 0 {
            let f = b.gcd(&d);
            b = b.div_exact(&f);
            c = d.div_exact(&f);
            d = c.sub(&b.derivative());
            factors.push(f);
        }
        factors
    }
}

/// An interval endpoint: an exact rational or an infinity.
#[derive(Clone, Debug, PartialEq)]
pub enum Endpoint {
    NegInf,
    Rat(BigRational),
    PosInf,
}

impl Endpoint {
    pub fn rational(n: i64, d: i64) -> Endpoint {
        Endpoint::Rat(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    /// Total order on the extended real line.
    pub fn le(&self, other: &Endpoint) -> bool {
        match (self, other) {
            (Endpoint::NegInf, _) | (_, Endpoint::PosInf) => true,
            (_, Endpoint::NegInf) | (Endpoint::PosInf, _) => false,
            (Endpoint::Rat(a), Endpoint::Rat(b)) => a <= b,
        }
    }
}

fn sign(r: &BigRational) -> i8 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

/// Sign of a polynomial at an endpoint; at infinities this is the sign of the
/// leading term (with degree parity on the left).
pub fn sign_at(p: &RatPoly, at: &Endpoint) -> i8 {
    match at {
        Endpoint::Rat(x) => sign(&p.eval(x)),
        Endpoint::PosInf => p.leading().map_or(0, sign),
        Endpoint::NegInf => match (p.leading(), p.degree()) {
            (Some(lc), Some(d)) => {
                let s = sign(lc);
                if d % 2 == 1 {
                    -s
                } else {
                    s
                }
            }
            _ => 0,
        },
    }
}

/// The canonical Sturm chain of a square-free polynomial.
pub fn sturm_chain(square_free: &RatPoly) -> Vec<RatPoly> {
    let mut chain = vec![
        square_free.keep_sign_normalized(),
        square_free.derivative().keep_sign_normalized(),
    ];
    loop {
        let n = chain.len();
        if chain[n - 1].is_zero() {
            chain.pop();
            break;
        }
        let r = chain[n - 2].rem(&chain[n - 1]);
        if r.is_zero() {
            break;
        }
        let neg = RatPoly::zero().sub(&r).keep_sign_normalized();
        chain.push(neg);
    }
    chain
}

/// Sign variations of the chain at an endpoint, zeros dropped.
pub fn sign_variations(chain: &[RatPoly], at: &Endpoint) -> usize {
    let signs: Vec<i8> = chain
        .iter()
        .map(|p| sign_at(p, at))
        .filter(|&s| s != 0)
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Number of distinct real roots of the square-free polynomial behind `chain`
/// in the half-open interval `(lo, hi]`.
pub fn count_roots_chain(chain: &[RatPoly], lo: &Endpoint, hi: &Endpoint) -> usize {
    sign_variations(chain, lo).saturating_sub(sign_variations(chain, hi))
}

/// An integer upper bound `B ≥ 1` such that all real roots lie in `(-B, B]`:
/// the Cauchy bound `1 + max |a_i| / |a_n|`, rounded up. Keeping the bound an
/// integer keeps every bisection endpoint dyadic.
pub fn integer_root_bound(p: &RatPoly) -> BigInt {
    let lc = match p.leading() {
        None => return BigInt::one(),
        Some(lc) => lc.abs(),
    };
    let mut max = BigRational::zero();
    for c in &p.coeffs[..p.coeffs.len() - 1] {
        let r = c.abs() / lc.clone();
        if r > max {
            max = r;
        }
    }
    let bound = BigRational::one() + max;
    bound.ceil().to_integer()
}
