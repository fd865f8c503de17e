//! Commutative semifields: the weight structures of the automata.
//!
//! A semifield is a commutative semiring whose nonzero elements form a
//! multiplicative group. All algorithms in this crate only ever multiply and
//! invert weights; `plus` exists for completeness.

use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use crate::error::WeightError;

/// Runtime tag for the semifield an automaton file is written over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SemifieldKind {
    Boolean,
    Rational,
    Tropical,
    MaxTimes,
    /// Tropical semifield over `f64`. Usable for evaluation only.
    TropicalFloat,
}

impl SemifieldKind {
    pub const ALL: [SemifieldKind; 5] = [
        SemifieldKind::Boolean,
        SemifieldKind::Rational,
        SemifieldKind::Tropical,
        SemifieldKind::MaxTimes,
        SemifieldKind::TropicalFloat,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SemifieldKind::Boolean => "boolean",
            SemifieldKind::Rational => "rational",
            SemifieldKind::Tropical => "tropical",
            SemifieldKind::MaxTimes => "max-times",
            SemifieldKind::TropicalFloat => "tropical-float",
        }
    }
}

impl fmt::Display for SemifieldKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SemifieldKind {
    type Err = WeightError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SemifieldKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| WeightError::UnknownKind(s.to_string()))
    }
}

/// A commutative semifield `⟨S, ⊕, ⊗, 0, 1⟩` with `0 ≠ 1`.
///
/// `Display` prints the text syntax accepted by [`Semifield::parse_weight`].
pub trait Semifield: Clone + Eq + Hash + fmt::Debug + fmt::Display + Send + Sync + 'static {
    const KIND: SemifieldKind;
    /// Whether equality is exact. Signature bucketing refuses inexact kinds.
    const EXACT: bool = true;

    fn zero() -> Self;
    fn one() -> Self;
    fn plus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    /// Multiplicative inverse; fails on zero.
    fn inverse(&self) -> Result<Self, WeightError>;
    fn parse_weight(text: &str) -> Result<Self, WeightError>;
    /// Byte encoding such that equal values encode identically.
    fn canonical_encode(&self) -> Vec<u8>;
    /// Draws a random nonzero element from a small, collision-friendly range.
    fn sample_nonzero<R: Rng + ?Sized>(rng: &mut R) -> Self;

    fn is_zero(&self) -> bool {
        *self == Self::zero()
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    /// `self ⊗ rhs⁻¹`.
    fn divide(&self, rhs: &Self) -> Result<Self, WeightError> {
        Ok(self.times(&rhs.inverse()?))
    }
}

pub(crate) fn parse_rational(text: &str) -> Result<BigRational, WeightError> {
    let bad = || WeightError::Syntax(text.to_string());
    let t = text.trim();
    if t.is_empty() {
        return Err(bad());
    }
    if let Some((num, den)) = t.split_once('/') {
        let num: BigInt = num.trim().parse().map_err(|_| bad())?;
        let den: BigInt = den.trim().parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(num, den));
    }
    if let Some((int, frac)) = t.split_once('.') {
        let negative = int.starts_with('-');
        let int_digits = int.trim_start_matches(['-', '+']);
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        if !int_digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let digits = format!(
            "{}{}",
            if int_digits.is_empty() {
                "0"
            } else {
                int_digits
            },
            frac
        );
        let mut num: BigInt = digits.parse().map_err(|_| bad())?;
        if negative {
            num = -num;
        }
        let den = num_traits::pow(BigInt::from(10), frac.len());
        return Ok(BigRational::new(num, den));
    }
    let num: BigInt = t.parse().map_err(|_| bad())?;
    Ok(BigRational::from_integer(num))
}

pub(crate) fn format_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn encode_rational(r: &BigRational) -> Vec<u8> {
    // BigRational is always stored reduced with a positive denominator.
    format!("{}/{}", r.numer(), r.denom()).into_bytes()
}

fn sample_positive_rational<R: Rng + ?Sized>(rng: &mut R) -> BigRational {
    let num: i64 = rng.gen_range(1..=4);
    let den: i64 = rng.gen_range(1..=3);
    BigRational::new(num.into(), den.into())
}

/// The Boolean semifield `⟨{0,1}, max, min, 0, 1⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Boolean(pub bool);

impl fmt::Display for Boolean {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if self.0 { "1" } else { "0" })
    }
}

impl Semifield for Boolean {
    const KIND: SemifieldKind = SemifieldKind::Boolean;

    fn zero() -> Self {
        Boolean(false)
    }
    fn one() -> Self {
        Boolean(true)
    }
    fn plus(&self, rhs: &Self) -> Self {
        Boolean(self.0 || rhs.0)
    }
    fn times(&self, rhs: &Self) -> Self {
        Boolean(self.0 && rhs.0)
    }
    fn inverse(&self) -> Result<Self, WeightError> {
        if self.0 {
            Ok(*self)
        } else {
            Err(WeightError::InverseOfZero)
        }
    }
    fn parse_weight(text: &str) -> Result<Self, WeightError> {
        match text.trim() {
            "1" => Ok(Boolean(true)),
            "0" => Ok(Boolean(false)),
            other => Err(WeightError::Syntax(other.to_string())),
        }
    }
    fn canonical_encode(&self) -> Vec<u8> {
        self.to_string().into_bytes()
    }
    fn sample_nonzero<R: Rng + ?Sized>(_rng: &mut R) -> Self {
        Boolean(true)
    }
}

/// The field of rational numbers, with arbitrary-precision components.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rational(pub BigRational);

impl Rational {
    pub fn new(num: i64, den: i64) -> Self {
        Rational(BigRational::new(num.into(), den.into()))
    }

    pub fn integer(n: i64) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_rational(&self.0))
    }
}

impl Semifield for Rational {
    const KIND: SemifieldKind = SemifieldKind::Rational;

    fn zero() -> Self {
        Rational(BigRational::zero())
    }
    fn one() -> Self {
        Rational(BigRational::one())
    }
    fn plus(&self, rhs: &Self) -> Self {
        Rational(&self.0 + &rhs.0)
    }
    fn times(&self, rhs: &Self) -> Self {
        Rational(&self.0 * &rhs.0)
    }
    fn inverse(&self) -> Result<Self, WeightError> {
        if self.0.is_zero() {
            Err(WeightError::InverseOfZero)
        } else {
            Ok(Rational(self.0.recip()))
        }
    }
    fn parse_weight(text: &str) -> Result<Self, WeightError> {
        parse_rational(text).map(Rational)
    }
    fn canonical_encode(&self) -> Vec<u8> {
        encode_rational(&self.0)
    }
    fn sample_nonzero<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let r = sample_positive_rational(rng);
        if rng.gen_bool(0.2) {
            Rational(-r)
        } else {
            Rational(r)
        }
    }
}

/// The tropical semifield `⟨ℚ ∪ {∞}, min, +, ∞, 0⟩` over exact rationals.
/// `None` is `∞`, the semifield zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Tropical(pub Option<BigRational>);

impl Tropical {
    pub fn finite(num: i64, den: i64) -> Self {
        Tropical(Some(BigRational::new(num.into(), den.into())))
    }

    pub fn infinity() -> Self {
        Tropical(None)
    }
}

impl fmt::Display for Tropical {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            None => f.write_str("inf"),
            Some(r) => f.write_str(&format_rational(r)),
        }
    }
}

impl Semifield for Tropical {
    const KIND: SemifieldKind = SemifieldKind::Tropical;

    fn zero() -> Self {
        Tropical(None)
    }
    fn one() -> Self {
        Tropical(Some(BigRational::zero()))
    }
    fn plus(&self, rhs: &Self) -> Self {
        match (&self.0, &rhs.0) {
            (None, _) => rhs.clone(),
            (_, None) => self.clone(),
            (Some(a), Some(b)) => Tropical(Some(a.min(b).clone())),
        }
    }
    fn times(&self, rhs: &Self) -> Self {
        match (&self.0, &rhs.0) {
            (Some(a), Some(b)) => Tropical(Some(a + b)),
            _ => Tropical(None),
        }
    }
    fn inverse(&self) -> Result<Self, WeightError> {
        match &self.0 {
            None => Err(WeightError::InverseOfZero),
            Some(a) => Ok(Tropical(Some(-a))),
        }
    }
    fn parse_weight(text: &str) -> Result<Self, WeightError> {
        match text.trim() {
            "inf" => Ok(Tropical(None)),
            other => parse_rational(other).map(|r| Tropical(Some(r))),
        }
    }
    fn canonical_encode(&self) -> Vec<u8> {
        match &self.0 {
            None => b"inf".to_vec(),
            Some(r) => encode_rational(r),
        }
    }
    fn sample_nonzero<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let num: i64 = rng.gen_range(-3..=5);
        let den: i64 = rng.gen_range(1..=2);
        Tropical::finite(num, den)
    }
}

/// The max-times semifield `⟨ℚ≥0, max, ·, 0, 1⟩`.
///
/// Automaton weights are usually probabilities in `[0,1]`; the carrier is
/// all nonnegative rationals so that inverses and normalized weights exist.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MaxTimes(BigRational);

impl MaxTimes {
    pub fn new(value: BigRational) -> Result<Self, WeightError> {
        if value.is_negative() {
            Err(WeightError::OutOfRange(format_rational(&value)))
        } else {
            Ok(MaxTimes(value))
        }
    }

    pub fn ratio(num: u64, den: u64) -> Self {
        MaxTimes(BigRational::new(num.into(), den.into()))
    }

    pub fn value(&self) -> &BigRational {
        &self.0
    }

    /// Whether the value is a probability, i.e. lies in `[0,1]`.
    pub fn is_probability(&self) -> bool {
        self.0 <= BigRational::one()
    }
}

impl fmt::Display for MaxTimes {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_rational(&self.0))
    }
}

impl Semifield for MaxTimes {
    const KIND: SemifieldKind = SemifieldKind::MaxTimes;

    fn zero() -> Self {
        MaxTimes(BigRational::zero())
    }
    fn one() -> Self {
        MaxTimes(BigRational::one())
    }
    fn plus(&self, rhs: &Self) -> Self {
        MaxTimes(self.0.clone().max(rhs.0.clone()))
    }
    fn times(&self, rhs: &Self) -> Self {
        MaxTimes(&self.0 * &rhs.0)
    }
    fn inverse(&self) -> Result<Self, WeightError> {
        if self.0.is_zero() {
            Err(WeightError::InverseOfZero)
        } else {
            Ok(MaxTimes(self.0.recip()))
        }
    }
    fn parse_weight(text: &str) -> Result<Self, WeightError> {
        MaxTimes::new(parse_rational(text)?)
    }
    fn canonical_encode(&self) -> Vec<u8> {
        encode_rational(&self.0)
    }
    fn sample_nonzero<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let den: u64 = rng.gen_range(1..=4);
        let num: u64 = rng.gen_range(1..=den);
        MaxTimes::ratio(num, den)
    }
}

/// Tropical semifield over `f64`. Equality is bitwise, so it is not exact in
/// the sense required by signature bucketing.
#[derive(Debug, Clone, Copy)]
pub struct TropicalFloat(pub f64);

impl TropicalFloat {
    fn key(&self) -> u64 {
        // Collapse -0.0 onto 0.0 so Eq and Hash agree.
        if self.0 == 0.0 {
            0f64.to_bits()
        } else {
            self.0.to_bits()
        }
    }
}

impl PartialEq for TropicalFloat {
    fn eq(&self, other: &Self) -> bool {
        self.key() == other.key()
    }
}

impl Eq for TropicalFloat {}

impl Hash for TropicalFloat {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.key().hash(state)
    }
}

impl fmt::Display for TropicalFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_infinite() {
            f.write_str("inf")
        } else {
            write!(f, "{}", self.0)
        }
    }
}

impl Semifield for TropicalFloat {
    const KIND: SemifieldKind = SemifieldKind::TropicalFloat;
    const EXACT: bool = false;

    fn zero() -> Self {
        TropicalFloat(f64::INFINITY)
    }
    fn one() -> Self {
        TropicalFloat(0.0)
    }
    fn plus(&self, rhs: &Self) -> Self {
        TropicalFloat(self.0.min(rhs.0))
    }
    fn times(&self, rhs: &Self) -> Self {
        TropicalFloat(self.0 + rhs.0)
    }
    fn inverse(&self) -> Result<Self, WeightError> {
        if self.0.is_infinite() {
            Err(WeightError::InverseOfZero)
        } else {
            Ok(TropicalFloat(-self.0))
        }
    }
    fn parse_weight(text: &str) -> Result<Self, WeightError> {
        match text.trim() {
            "inf" => Ok(Self::zero()),
            other => other
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .map(TropicalFloat)
                .ok_or_else(|| WeightError::Syntax(other.to_string())),
        }
    }
    fn canonical_encode(&self) -> Vec<u8> {
        self.key().to_be_bytes().to_vec()
    }
    fn sample_nonzero<R: Rng + ?Sized>(rng: &mut R) -> Self {
        TropicalFloat(f64::from(rng.gen_range(-3i32..=5)) * 0.5)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_examples() {
        let a = Rational::new(2, 3);
        let b = Rational::new(3, 4);
        assert_eq!(a.times(&b), Rational::new(1, 2));
        assert_eq!(Rational::integer(2).inverse().unwrap(), Rational::new(1, 2));
        assert_eq!(a.times(&Rational::one()), a);
        assert_eq!(
            Rational::new(4, 8).canonical_encode(),
            Rational::new(1, 2).canonical_encode()
        );
        assert_eq!(Rational::new(4, 8).canonical_encode(), b"1/2".to_vec());
    }

    #[test]
    fn tropical_examples() {
        let two = Tropical::finite(2, 1);
        let one = Tropical::finite(1, 1);
        assert_eq!(two.times(&one), Tropical::finite(3, 1));
        assert_eq!(
            Tropical::finite(5, 1).inverse().unwrap(),
            Tropical::finite(-5, 1)
        );
        assert_eq!(Tropical::infinity().canonical_encode(), b"inf".to_vec());
        assert_eq!(two.times(&Tropical::zero()), Tropical::zero());
        assert_eq!(two.plus(&one), one);
    }

    #[test]
    fn boolean_examples() {
        assert_eq!(Boolean(true).inverse().unwrap(), Boolean(true));
        assert_eq!(Boolean(true).canonical_encode(), b"1".to_vec());
        assert!(Boolean(false).inverse().is_err());
    }

    #[test]
    fn zero_has_no_inverse() {
        assert_eq!(Rational::zero().inverse(), Err(WeightError::InverseOfZero));
        assert_eq!(Tropical::zero().inverse(), Err(WeightError::InverseOfZero));
        assert_eq!(MaxTimes::zero().inverse(), Err(WeightError::InverseOfZero));
        assert!(TropicalFloat::zero().inverse().is_err());
    }

    #[test]
    fn parsing() {
        assert_eq!(Rational::parse_weight("4/8").unwrap(), Rational::new(1, 2));
        assert_eq!(Rational::parse_weight("-3").unwrap(), Rational::integer(-3));
        assert_eq!(Rational::parse_weight("1.25").unwrap(), Rational::new(5, 4));
        assert!(Rational::parse_weight("1/0").is_err());
        assert!(Rational::parse_weight("x").is_err());
        assert_eq!(Tropical::parse_weight("inf").unwrap(), Tropical::zero());
        assert_eq!(
            Tropical::parse_weight("-0.5").unwrap(),
            Tropical::finite(-1, 2)
        );
        assert_eq!(
            MaxTimes::parse_weight("1/2").unwrap(),
            MaxTimes::ratio(1, 2)
        );
        assert!(MaxTimes::parse_weight("-1/2").is_err());
        assert_eq!(Boolean::parse_weight("1").unwrap(), Boolean(true));
        assert!(Boolean::parse_weight("2").is_err());
        assert_eq!(
            TropicalFloat::parse_weight("1.5").unwrap(),
            TropicalFloat(1.5)
        );
    }

    #[test]
    fn display_round_trips() {
        for text in ["1/2", "-7/3", "5", "0"] {
            assert_eq!(Rational::parse_weight(text).unwrap().to_string(), text);
        }
        assert_eq!(Tropical::zero().to_string(), "inf");
        assert_eq!(MaxTimes::ratio(2, 4).to_string(), "1/2");
    }

    #[test]
    fn kind_names_parse_back() {
        for kind in SemifieldKind::ALL {
            assert_eq!(kind.name().parse::<SemifieldKind>().unwrap(), kind);
        }
        assert!("real".parse::<SemifieldKind>().is_err());
    }

    #[test]
    fn float_zero_sign_is_normalized() {
        assert_eq!(TropicalFloat(0.0), TropicalFloat(-0.0));
        const { assert!(!TropicalFloat::EXACT) };
    }
}
