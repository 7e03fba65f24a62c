//! Exact root-location certificates for integer polynomials.
//!
//! Everything here is exact over the rationals: square-free splitting by
//! Yun's algorithm, distinct-root counts by Sturm sign variations, and
//! isolating intervals produced by bisection from an integer root bound, so
//! every recorded endpoint is dyadic and serializes as an exact decimal.
//! A proven certificate can be re-checked from the recorded data alone by
//! sign evaluations of the square-free factors at the interval endpoints.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::counting::{PolynomialJson, UniGCPoly};
use crate::multiaffine::CycUniPoly;
use crate::sturm::{
    count_roots_chain, integer_root_bound, sturm_chain, Endpoint, RatPoly,
};

#[derive(Debug, Error)]
pub enum CertifyError {
    #[error("the zero polynomial has no root-location certificate")]
    ZeroPolynomial,
    #[error("coefficient at degree {degree} is not a rational integer")]
    NotInteger { degree: usize },
    #[error("deg₂ = 0 requires the constant polynomial 1 (degree is {degree})")]
    InvalidDeg2 { degree: usize },
    #[error("root finding requires degree at least one")]
    DegreeTooSmall,
    #[error("interval lower endpoint exceeds upper endpoint")]
    InvalidInterval,
}

/// Dense ascending exact-integer coefficients; the zero polynomial is the
/// empty list (callers treat it as flagged identically zero).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Multiplicity of the root z = 0: the number of leading zero
    /// coefficients.
    pub fn zero_root_multiplicity(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    pub fn to_rat(&self) -> RatPoly {
        RatPoly::from_bigints(&self.coeffs)
    }

    /// True when only even exponents carry nonzero coefficients.
    pub fn is_even_polynomial(&self) -> bool {
        self.coeffs
            .iter()
            .enumerate()
            .all(|(k, c)| k % 2 == 0 || c.is_zero())
    }

    /// The polynomial `q` with `q(u) = p(z)` under `u = z²`, defined for even
    /// polynomials.
    pub fn even_substitution(&self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().step_by(2).cloned().collect())
    }
}

impl From<&UniGCPoly> for IntPoly {
    fn from(p: &UniGCPoly) -> IntPoly {
        IntPoly::new(p.coeffs().to_vec())
    }
}

impl From<&IntPoly> for PolynomialJson {
    fn from(p: &IntPoly) -> PolynomialJson {
        PolynomialJson {
            coeffs: p.coeffs.iter().map(BigInt::to_string).collect(),
        }
    }
}

impl TryFrom<PolynomialJson> for IntPoly {
    type Error = String;

    fn try_from(j: PolynomialJson) -> Result<IntPoly, String> {
        let coeffs = j
            .coeffs
            .iter()
            .map(|s| {
                s.parse::<BigInt>()
                    .map_err(|_| format!("invalid integer literal {s:?}"))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(IntPoly::new(coeffs))
    }
}

/// Transcribes a univariate cyclotomic-coefficient polynomial whose
/// coefficients are all rational integers; reports the lowest offending
/// degree otherwise.
pub fn to_int_poly(p: &CycUniPoly) -> Result<IntPoly, CertifyError> {
    let mut coeffs = Vec::with_capacity(p.coeffs().len());
    for (k, c) in p.coeffs().iter().enumerate() {
        match c.as_integer() {
            Some(n) => coeffs.push(n),
            None => return Err(CertifyError::NotInteger { degree: k }),
        }
    }
    Ok(IntPoly::new(coeffs))
}

/// Number of distinct real roots of `p` in the half-open interval
/// `(lo, hi]`. The count is of the square-free part; multiplicities are the
/// business of [`square_free_decomposition`].
pub fn sturm_count(p: &IntPoly, lo: &Endpoint, hi: &Endpoint) -> Result<usize, CertifyError> {
    if p.is_zero() {
        return Err(CertifyError::ZeroPolynomial);
    }
    if !lo.le(hi) {
        return Err(CertifyError::InvalidInterval);
    }
    let sf = p.to_rat().square_free_part();
    let chain = sturm_chain(&sf);
    Ok(count_roots_chain(&chain, lo, hi))
}

/// Yun square-free factors of `p` with their multiplicities, as primitive
/// integer polynomials with positive leading coefficient. Their product with
/// multiplicities reconstructs `p` up to the leading constant. Degree-zero
/// factors are dropped.
pub fn square_free_decomposition(p: &IntPoly) -> Result<Vec<(IntPoly, u32)>, CertifyError> {
    if p.is_zero() {
        return Err(CertifyError::ZeroPolynomial);
    }
    let k0 = p.zero_root_multiplicity();
    let shifted = IntPoly::new(p.coeffs[k0..].to_vec());
    let mut out: Vec<(IntPoly, u32)> = Vec::new();
    if k0 > 0 {
        out.push((IntPoly::from_i64(&[0, 1]), k0 as u32));
    }
    for (i, f) in shifted.to_rat().yun().into_iter().enumerate() {
        if f.degree().unwrap_or(0) == 0 {
            continue;
        }
        out.push((primitive_int(&f), (i + 1) as u32));
    }
    Ok(out)
}

/// Clears denominators and content; leading coefficient positive.
fn primitive_int(p: &RatPoly) -> IntPoly {
    use num_integer::Integer;
    let mut den = BigInt::one();
    for c in p.coeffs() {
        den = den.lcm(c.denom());
    }
    let mut ints: Vec<BigInt> = p
        .coeffs()
        .iter()
        .map(|c| (c * BigRational::from_integer(den.clone())).to_integer())
        .collect();
    let mut content = BigInt::zero();
    for c in &ints {
        content = content.gcd(c);
    }
    if !content.is_zero() {
        for c in &mut ints {
            *c /= &content;
        }
    }
    if ints.last().is_some_and(Signed::is_negative) {
        for c in &mut ints {
            *c = -c.clone();
        }
    }
    IntPoly::new(ints)
}

/// The certified property.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CertProperty {
    RealNegative,
    RealNonpositive,
    PurelyImaginary,
    Deg2Bound,
}

impl CertProperty {
    pub fn id(&self) -> &'static str {
        match self {
            CertProperty::RealNegative => "real-negative",
            CertProperty::RealNonpositive => "real-nonpositive",
            CertProperty::PurelyImaginary => "purely-imaginary",
            CertProperty::Deg2Bound => "deg2-bound",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Proven,
    Refuted,
}

/// An exact root-location verdict with its isolating evidence.
///
/// For proven real-rootedness properties, `isolating_intervals[k]` is a
/// half-open `(lo, hi]` containing exactly one distinct root, of multiplicity
/// `multiplicities[k]`; the multiplicities sum to the degree. For the
/// purely-imaginary property the intervals live in the `u = z²` domain. For
/// refutations the intervals pin down offending roots when real ones exist,
/// and `notes` carries the counting argument otherwise.
#[derive(Clone, Debug, PartialEq)]
pub struct Certificate {
    pub property: CertProperty,
    pub verdict: Verdict,
    pub isolating_intervals: Vec<(BigRational, BigRational)>,
    pub multiplicities: Vec<u32>,
    pub notes: String,
}

impl Certificate {
    pub fn is_proven(&self) -> bool {
        self.verdict == Verdict::Proven
    }

    /// Independent re-check of a proven certificate from its recorded data:
    /// the intervals must be pairwise disjoint and inside the allowed region,
    /// each must carry a sign change of the square-free factor of the claimed
    /// multiplicity (or pin the zero root via the trailing coefficients), and
    /// the multiplicities must sum to the degree.
    pub fn recheck(&self, p: &IntPoly) -> bool {
        if self.verdict != Verdict::Proven {
            return false;
        }
        let (poly, strict) = match self.property {
            CertProperty::RealNegative => (p.clone(), true),
            CertProperty::RealNonpositive => (p.clone(), false),
            CertProperty::PurelyImaginary => {
                if !p.is_even_polynomial() {
                    return false;
                }
                (p.even_substitution(), false)
            }
            CertProperty::Deg2Bound => return true, // evidence is the count in notes
        };
        let Some(degree) = poly.degree() else {
            return false;
        };
        if self.isolating_intervals.len() != self.multiplicities.len() {
            return false;
        }
        if self.multiplicities.iter().map(|&m| m as usize).sum::<usize>() != degree {
            return false;
        }
        let k0 = poly.zero_root_multiplicity();
        let q = RatPoly::from_bigints(&poly.coeffs()[k0..]);
        let factors: Vec<(u32, RatPoly)> = q
            .yun()
            .into_iter()
            .enumerate()
            .map(|(i, f)| ((i + 1) as u32, f))
            .collect();

        let mut sorted = self.isolating_intervals.clone();
        sorted.sort();
        for w in sorted.windows(2) {
            if w[1].0 < w[0].1 {
                return false; // overlap
            }
        }

        let mut zero_intervals = 0usize;
        for ((lo, hi), &mult) in self.isolating_intervals.iter().zip(&self.multiplicities) {
            if lo >= hi {
                return false;
            }
            if strict {
                if !hi.is_negative() {
                    return false;
                }
            } else if hi.is_positive() {
                return false;
            }
            let covers_zero = !hi.is_positive() && !hi.is_negative();
            if covers_zero && k0 > 0 && mult as usize == k0 && lo.is_negative() {
                // The zero root: witnessed by the trailing coefficients, as
                // long as no other root hides in (lo, 0]; the factor signs
                // below cannot see it, so demand the interval be free of
                // sign changes of q's factors.
                let clean = factors.iter().all(|(_, f)| {
                    let a = f.eval(lo);
                    let b = f.eval(hi);
                    !a.is_zero() && !b.is_zero() && a.is_negative() == b.is_negative()
                });
                if !clean {
                    return false;
                }
                zero_intervals += 1;
                continue;
            }
            let Some((_, f)) = factors.iter().find(|(m, _)| *m == mult) else {
                return false;
            };
            let a = f.eval(lo);
            let b = f.eval(hi);
            if a.is_zero() || b.is_zero() || a.is_negative() == b.is_negative() {
                return false;
            }
        }
        if k0 > 0 && zero_intervals != 1 {
            return false;
        }
        true
    }
}

/// Wire form per the certificate JSON schema; interval endpoints are exact
/// decimal strings (all recorded endpoints are dyadic).
#[derive(Serialize, Deserialize)]
pub struct CertificateJson {
    pub property: String,
    pub verdict: String,
    pub isolating_intervals: Vec<[String; 2]>,
    pub multiplicities: Vec<u32>,
    pub notes: String,
}

impl From<&Certificate> for CertificateJson {
    fn from(c: &Certificate) -> CertificateJson {
        CertificateJson {
            property: c.property.id().to_string(),
            verdict: match c.verdict {
                Verdict::Proven => "proven".into(),
                Verdict::Refuted => "refuted".into(),
            },
            isolating_intervals: c
                .isolating_intervals
                .iter()
                .map(|(lo, hi)| [rational_to_decimal(lo), rational_to_decimal(hi)])
                .collect(),
            multiplicities: c.multiplicities.clone(),
            notes: c.notes.clone(),
        }
    }
}

/// Exact decimal rendering for rationals whose denominator divides a power of
/// ten (all dyadic endpoints qualify); other denominators fall back to `n/d`.
pub fn rational_to_decimal(r: &BigRational) -> String {
    let mut den = r.denom().clone();
    let mut twos = 0u32;
    let mut fives = 0u32;
    let two = BigInt::from(2);
    let five = BigInt::from(5);
    while (&den % &two).is_zero() {
        den /= &two;
        twos += 1;
    }
    while (&den % &five).is_zero() {
        den /= &five;
        fives += 1;
    }
    if !den.is_one() {
        return format!("{}/{}", r.numer(), r.denom());
    }
    let k = twos.max(fives);
    let scale = two.pow(k - twos) * five.pow(k - fives);
    let scaled = (r.numer() * scale).abs();
    let sign = if r.is_negative() { "-" } else { "" };
    if k == 0 {
        return format!("{sign}{scaled}");
    }
    let digits = scaled.to_string();
    let digits = format!("{:0>width$}", digits, width = (k + 1) as usize);
    let split = digits.len() - k as usize;
    let (int_part, frac_part) = digits.split_at(split);
    let frac_part = frac_part.trim_end_matches('0');
    if frac_part.is_empty() {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{frac_part}")
    }
}

/// A split point in `(lo, hi)` at which `sf` does not vanish, dyadic whenever
/// the endpoints are.
fn split_point(sf: &RatPoly, lo: &BigRational, hi: &BigRational) -> BigRational {
    let two = BigRational::from_integer(BigInt::from(2));
    let mut mid = (lo + hi) / &two;
    let mut shift = (hi - lo) / BigRational::from_integer(BigInt::from(4));
    while sf.eval(&mid).is_zero() {
        mid -= &shift;
        shift /= &two;
    }
    mid
}

/// Disjoint half-open intervals, each containing exactly one distinct root of
/// the square-free polynomial behind `chain`, covering all its roots in
/// `(lo, hi]`. No endpoint is a root.
fn isolate(
    chain: &[RatPoly],
    sf: &RatPoly,
    lo: BigRational,
    hi: BigRational,
    out: &mut Vec<(BigRational, BigRational)>,
) {
    let n = count_roots_chain(
        chain,
        &Endpoint::Rat(lo.clone()),
        &Endpoint::Rat(hi.clone()),
    );
    match n {
        0 => {}
        1 => out.push((lo, hi)),
        _ => {
            let mid = split_point(sf, &lo, &hi);
            isolate(chain, sf, lo, mid.clone(), out);
            isolate(chain, sf, mid, hi, out);
        }
    }
}

/// Shrinks an isolating interval (one root of `chain`'s polynomial) until its
/// upper endpoint satisfies `pred`; the root itself must satisfy it strictly.
fn refine_until(
    chain: &[RatPoly],
    sf: &RatPoly,
    interval: &mut (BigRational, BigRational),
    pred: impl Fn(&BigRational) -> bool,
) {
    while !pred(&interval.1) {
        let mid = split_point(sf, &interval.0, &interval.1);
        let left = count_roots_chain(
            chain,
            &Endpoint::Rat(interval.0.clone()),
            &Endpoint::Rat(mid.clone()),
        );
        if left == 1 {
            interval.1 = mid;
        } else {
            interval.0 = mid;
        }
    }
}

struct FactorData {
    mult: u32,
    chain: Vec<RatPoly>,
}

/// Certifies that all roots of `p` are real and negative, or real and ≤ 0
/// with `allow_zero_root`. Proven means the number of real roots counted
/// with multiplicity in the allowed region equals the degree.
pub fn certify_real_negative(
    p: &IntPoly,
    allow_zero_root: bool,
) -> Result<Certificate, CertifyError> {
    let property = if allow_zero_root {
        CertProperty::RealNonpositive
    } else {
        CertProperty::RealNegative
    };
    let Some(degree) = p.degree() else {
        return Err(CertifyError::ZeroPolynomial);
    };
    if degree == 0 {
        return Ok(Certificate {
            property,
            verdict: Verdict::Proven,
            isolating_intervals: Vec::new(),
            multiplicities: Vec::new(),
            notes: "degree 0: no roots".into(),
        });
    }

    let k0 = p.zero_root_multiplicity();
    if k0 > 0 && !allow_zero_root {
        return Ok(Certificate {
            property,
            verdict: Verdict::Refuted,
            isolating_intervals: Vec::new(),
            multiplicities: Vec::new(),
            notes: format!("root at z = 0 with multiplicity {k0} violates strict negativity"),
        });
    }

    // q has no zero root; every f_i is square-free with q = lc·Π f_i^i.
    let q = RatPoly::from_bigints(&p.coeffs()[k0..]);
    let factors: Vec<FactorData> = q
        .yun()
        .into_iter()
        .enumerate()
        .filter(|(_, f)| f.degree().unwrap_or(0) > 0)
        .map(|(i, f)| FactorData {
            mult: (i + 1) as u32,
            chain: sturm_chain(&f),
        })
        .collect();

    let zero_ep = Endpoint::Rat(BigRational::zero());
    let mut negative_with_mult = 0usize;
    let mut real_with_mult = k0;
    let mut positive_distinct = 0usize;
    for fd in &factors {
        let neg = count_roots_chain(&fd.chain, &Endpoint::NegInf, &zero_ep);
        let all = count_roots_chain(&fd.chain, &Endpoint::NegInf, &Endpoint::PosInf);
        negative_with_mult += fd.mult as usize * neg;
        real_with_mult += fd.mult as usize * all;
        positive_distinct += all - neg;
    }

    if negative_with_mult + k0 != degree {
        let notes = if real_with_mult < degree {
            format!(
                "only {real_with_mult} of {degree} roots are real (counted with multiplicity)"
            )
        } else {
            format!(
                "{positive_distinct} distinct positive real roots violate the property"
            )
        };
        let mut intervals = Vec::new();
        let mut mults = Vec::new();
        if positive_distinct > 0 {
            // Pin the positive roots down as refutation evidence.
            let sf = q.square_free_part();
            let chain = sturm_chain(&sf);
            let bound = BigRational::from_integer(integer_root_bound(&sf));
            let mut pos = Vec::new();
            isolate(&chain, &sf, BigRational::zero(), bound, &mut pos);
            for interval in pos {
                let mult = factors
                    .iter()
                    .find(|fd| {
                        count_roots_chain(
                            &fd.chain,
                            &Endpoint::Rat(interval.0.clone()),
                            &Endpoint::Rat(interval.1.clone()),
                        ) == 1
                    })
                    .map_or(1, |fd| fd.mult);
                intervals.push(interval);
                mults.push(mult);
            }
        }
        return Ok(Certificate {
            property,
            verdict: Verdict::Refuted,
            isolating_intervals: intervals,
            multiplicities: mults,
            notes,
        });
    }

    // Proven: isolate every distinct root. All live in (-B, 0); the zero
    // root (if allowed) gets its own (lo, 0] interval.
    let sf = q.square_free_part();
    let chain = sturm_chain(&sf);
    let bound = BigRational::from_integer(integer_root_bound(&sf));
    let mut intervals = Vec::new();
    isolate(
        &chain,
        &sf,
        -bound,
        BigRational::zero(),
        &mut intervals,
    );
    let mut multiplicities = Vec::new();
    for interval in &mut intervals {
        refine_until(&chain, &sf, interval, |hi| hi.is_negative());
        let mult = factors
            .iter()
            .find(|fd| {
                count_roots_chain(
                    &fd.chain,
                    &Endpoint::Rat(interval.0.clone()),
                    &Endpoint::Rat(interval.1.clone()),
                ) == 1
            })
            .expect("every isolated root belongs to a square-free factor")
            .mult;
        multiplicities.push(mult);
    }
    let mut notes = format!(
        "{} distinct negative roots; multiplicities sum to {degree}",
        intervals.len()
    );
    if k0 > 0 {
        // (lo, 0] must be free of the other roots and disjoint from their
        // intervals; every other interval tops out below zero, so its upper
        // endpoint qualifies.
        let mut lo = intervals
            .iter()
            .map(|(_, hi)| hi.clone())
            .max()
            .unwrap_or_else(|| -BigRational::one());
        loop {
            let c = count_roots_chain(
                &chain,
                &Endpoint::Rat(lo.clone()),
                &Endpoint::Rat(BigRational::zero()),
            );
            if c == 0 && !sf.eval(&lo).is_zero() {
                break;
            }
            lo /= BigRational::from_integer(BigInt::from(2));
        }
        intervals.push((lo, BigRational::zero()));
        multiplicities.push(k0 as u32);
        notes.push_str(&format!("; root at z = 0 with multiplicity {k0}"));
    }
    Ok(Certificate {
        property,
        verdict: Verdict::Proven,
        isolating_intervals: intervals,
        multiplicities,
        notes,
    })
}

/// Certifies the deg₂ bound: no root of `p` lies in the open interval
/// `(-1/d2, 0)`; a root exactly at `-1/d2` is permitted. The caller supplies
/// `d2 = deg₂(g) ≥ 1`; `d2 = 0` is accepted only for the constant polynomial.
pub fn certify_deg2_bound(p: &IntPoly, d2: u64) -> Result<Certificate, CertifyError> {
    let Some(degree) = p.degree() else {
        return Err(CertifyError::ZeroPolynomial);
    };
    if d2 == 0 {
        if degree == 0 {
            return Ok(Certificate {
                property: CertProperty::Deg2Bound,
                verdict: Verdict::Proven,
                isolating_intervals: Vec::new(),
                multiplicities: Vec::new(),
                notes: "deg₂ = 0: arcless graph, constant polynomial, no roots".into(),
            });
        }
        return Err(CertifyError::InvalidDeg2 { degree });
    }
    let lo = Endpoint::Rat(BigRational::new(-BigInt::one(), BigInt::from(d2)));
    let hi = Endpoint::Rat(BigRational::zero());
    let mut in_zone = sturm_count(p, &lo, &hi)?;
    if p.zero_root_multiplicity() > 0 {
        in_zone -= 1; // the root at 0 is not inside the open zone
    }
    let (verdict, notes) = if in_zone == 0 {
        (
            Verdict::Proven,
            format!("Sturm count on (-1/{d2}, 0) is 0: all roots ≤ -1/{d2}"),
        )
    } else {
        (
            Verdict::Refuted,
            format!("{in_zone} distinct roots inside (-1/{d2}, 0)"),
        )
    };
    Ok(Certificate {
        property: CertProperty::Deg2Bound,
        verdict,
        isolating_intervals: Vec::new(),
        multiplicities: Vec::new(),
        notes,
    })
}

/// Certifies that all roots of `p` are purely imaginary: `p` must be an even
/// polynomial, and `q(u) := p|_{z²↦u}` must have all roots real ≤ 0; the
/// roots of `p` are then `±i·√(-u)` (with z = 0 the degenerate case when
/// `q(0) = 0`, recorded explicitly). The recorded isolating intervals live in
/// the `u` domain.
pub fn certify_purely_imaginary(p: &IntPoly) -> Result<Certificate, CertifyError> {
    let Some(degree) = p.degree() else {
        return Err(CertifyError::ZeroPolynomial);
    };
    if let Some(odd) = p
        .coeffs()
        .iter()
        .enumerate()
        .find(|(k, c)| k % 2 == 1 && !c.is_zero())
    {
        return Ok(Certificate {
            property: CertProperty::PurelyImaginary,
            verdict: Verdict::Refuted,
            isolating_intervals: Vec::new(),
            multiplicities: Vec::new(),
            notes: format!(
                "odd exponent {} has nonzero coefficient {}: not an even polynomial",
                odd.0, odd.1
            ),
        });
    }
    let q = p.even_substitution();
    if degree == 0 {
        return Ok(Certificate {
            property: CertProperty::PurelyImaginary,
            verdict: Verdict::Proven,
            isolating_intervals: Vec::new(),
            multiplicities: Vec::new(),
            notes: "degree 0: no roots".into(),
        });
    }
    let inner = certify_real_negative(&q, true)?;
    let mut notes = format!(
        "via u = z² substitution; intervals isolate roots of q(u); {}",
        inner.notes
    );
    if q.zero_root_multiplicity() > 0 {
        notes.push_str(&format!(
            "; z = 0 is a root of p with multiplicity {}",
            2 * q.zero_root_multiplicity()
        ));
    }
    Ok(Certificate {
        property: CertProperty::PurelyImaginary,
        verdict: inner.verdict,
        isolating_intervals: inner.isolating_intervals,
        multiplicities: inner.multiplicities,
        notes,
    })
}
