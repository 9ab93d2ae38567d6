//! Exact integers and rationals, plus certified rational enclosures for the
//! few irrational quantities that show up in the bounds (fractional powers
//! and natural logarithms).
//!
//! No floating point is used anywhere: every enclosure is produced by
//! integer root extraction or by a series with an explicit rational tail
//! bound, rounded outward onto a decimal grid.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Integer = BigInt;
pub type Rational = BigRational;

pub fn int(v: i64) -> Integer {
    Integer::from(v)
}

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(Integer::from(num), Integer::from(den))
}

pub fn rat_int(v: impl Into<Integer>) -> Rational {
    Rational::from_integer(v.into())
}

pub fn floor(x: &Rational) -> Integer {
    x.floor().to_integer()
}

pub fn ceil(x: &Rational) -> Integer {
    x.ceil().to_integer()
}

/// `10^exp` as an exact integer.
pub fn pow10(exp: u32) -> Integer {
    num_traits::pow(int(10), exp as usize)
}

/// Binomial coefficient with the convention that it vanishes whenever
/// `top < bottom`, negative `top` included.
pub fn binomial(top: impl Into<Integer>, bottom: impl Into<Integer>) -> Result<Integer> {
    let top = top.into();
    let bottom = bottom.into();
    if bottom.is_negative() {
        return Err(Error::argument(format!(
            "binomial lower index must be nonnegative, got {bottom}"
        )));
    }
    if top < bottom {
        return Ok(Integer::zero());
    }
    let other = &top - &bottom;
    let k = if other < bottom { other } else { bottom };
    let k = k
        .to_u64()
        .ok_or_else(|| Error::argument("binomial lower index too large"))?;
    let mut acc = Integer::one();
    for i in 0..k {
        // acc = C(top, i) here; the division is exact.
        acc = acc * (&top - i) / (i + 1);
    }
    Ok(acc)
}

pub fn factorial(n: i64) -> Result<Integer> {
    if n < 0 {
        return Err(Error::argument(format!(
            "factorial of a negative number ({n})"
        )));
    }
    Ok((1..=n).fold(Integer::one(), |acc, i| acc * i))
}

/// A closed rational interval certified to contain some real number.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Enclosure {
    lower: Rational,
    upper: Rational,
}

impl Enclosure {
    pub fn new(lower: Rational, upper: Rational) -> Result<Self> {
        if lower > upper {
            return Err(Error::argument(format!(
                "enclosure lower bound {lower} exceeds upper bound {upper}"
            )));
        }
        Ok(Enclosure { lower, upper })
    }

    pub fn point(value: Rational) -> Self {
        Enclosure {
            lower: value.clone(),
            upper: value,
        }
    }

    pub fn lower(&self) -> &Rational {
        &self.lower
    }

    pub fn upper(&self) -> &Rational {
        &self.upper
    }

    pub fn width(&self) -> Rational {
        &self.upper - &self.lower
    }

    pub fn is_point(&self) -> bool {
        self.lower == self.upper
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lower <= x && x <= &self.upper
    }

    /// Every point of `other` lies inside `self`.
    pub fn encloses(&self, other: &Enclosure) -> bool {
        self.lower <= other.lower && other.upper <= self.upper
    }

    /// Certified comparison against a rational. `None` when the enclosure
    /// straddles `x` and nothing can be concluded.
    pub fn compare(&self, x: &Rational) -> Option<Ordering> {
        if &self.upper < x {
            Some(Ordering::Less)
        } else if &self.lower > x {
            Some(Ordering::Greater)
        } else if self.is_point() {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    pub fn scale(&self, factor: &Rational) -> Enclosure {
        let a = &self.lower * factor;
        let b = &self.upper * factor;
        if factor.is_negative() {
            Enclosure { lower: b, upper: a }
        } else {
            Enclosure { lower: a, upper: b }
        }
    }

    pub fn shift(&self, offset: &Rational) -> Enclosure {
        Enclosure {
            lower: &self.lower + offset,
            upper: &self.upper + offset,
        }
    }

    /// Product of two enclosures of nonnegative reals.
    pub fn mul_nonneg(&self, other: &Enclosure) -> Result<Enclosure> {
        if self.lower.is_negative() || other.lower.is_negative() {
            return Err(Error::argument("mul_nonneg requires nonnegative enclosures"));
        }
        Ok(Enclosure {
            lower: &self.lower * &other.lower,
            upper: &self.upper * &other.upper,
        })
    }

    /// Round both ends outward onto the grid `1/scale`.
    pub fn snap_outward(&self, scale: &Integer) -> Enclosure {
        let s = rat_int(scale.clone());
        Enclosure {
            lower: Rational::new(floor(&(&self.lower * &s)), scale.clone()),
            upper: Rational::new(ceil(&(&self.upper * &s)), scale.clone()),
        }
    }
}

impl Add for &Enclosure {
    type Output = Enclosure;

    fn add(self, rhs: &Enclosure) -> Enclosure {
        Enclosure {
            lower: &self.lower + &rhs.lower,
            upper: &self.upper + &rhs.upper,
        }
    }
}

impl Sub for &Enclosure {
    type Output = Enclosure;

    fn sub(self, rhs: &Enclosure) -> Enclosure {
        Enclosure {
            lower: &self.lower - &rhs.upper,
            upper: &self.upper - &rhs.lower,
        }
    }
}

impl Neg for &Enclosure {
    type Output = Enclosure;

    fn neg(self) -> Enclosure {
        Enclosure {
            lower: -&self.upper,
            upper: -&self.lower,
        }
    }
}

impl fmt::Display for Enclosure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lower, self.upper)
    }
}

/// `base^(num/den)` for an integer base, with width at most `10^-precision`.
pub fn power_enclosure(base: &Integer, num: i64, den: u32, precision: u32) -> Result<Enclosure> {
    rational_power_enclosure(&rat_int(base.clone()), num, den, precision)
}

/// `base^(num/den)` for a nonnegative rational base.
///
/// The root is taken by integer `den`-th root extraction on a scaled
/// numerator, rounding down for the lower end and up for the upper end.
/// Perfect powers come back as points.
pub fn rational_power_enclosure(
    base: &Rational,
    num: i64,
    den: u32,
    precision: u32,
) -> Result<Enclosure> {
    if base.is_negative() {
        return Err(Error::argument(format!("negative base {base}")));
    }
    if den == 0 {
        return Err(Error::argument("exponent denominator must be positive"));
    }
    if precision == 0 {
        return Err(Error::argument("precision must be at least 1"));
    }
    if base.is_zero() {
        return match num.cmp(&0) {
            Ordering::Less => Err(Error::argument("zero raised to a negative power")),
            Ordering::Equal => Ok(Enclosure::point(Rational::one())),
            Ordering::Greater => Ok(Enclosure::point(Rational::zero())),
        };
    }
    let raised = if num >= 0 {
        num_traits::pow(base.clone(), num as usize)
    } else {
        num_traits::pow(base.recip(), num.unsigned_abs() as usize)
    };
    if den == 1 {
        return Ok(Enclosure::point(raised));
    }
    // (A/B)^(1/den) = (A * B^(den-1))^(1/den) / B
    let a = raised.numer();
    let b = raised.denom();
    let scale = pow10(precision);
    let radicand = a
        * num_traits::pow(b.clone(), (den - 1) as usize)
        * num_traits::pow(scale.clone(), den as usize);
    let root = radicand.nth_root(den);
    let grid = b * &scale;
    if num_traits::pow(root.clone(), den as usize) == radicand {
        return Ok(Enclosure::point(Rational::new(root, grid)));
    }
    Ok(Enclosure {
        lower: Rational::new(root.clone(), grid.clone()),
        upper: Rational::new(root + 1, grid),
    })
}

/// `2·atanh(z)` for `|z| <= 1/3`, with per-term outward rounding on the grid
/// `1/scale` and a geometric tail bound.
fn two_atanh(z: &Rational, scale: &Integer, tail_target: &Rational) -> Enclosure {
    if z.is_zero() {
        return Enclosure::point(Rational::zero());
    }
    let z2 = z * z;
    let one_minus_z2 = Rational::one() - &z2;
    let s = rat_int(scale.clone());
    let mut power = z.clone();
    let mut lo = Integer::zero();
    let mut hi = Integer::zero();
    let mut k: i64 = 0;
    let tail = loop {
        let term = &power / rat_int(2 * k + 1);
        let scaled = &term * &s;
        lo += floor(&scaled);
        hi += ceil(&scaled);
        power = &power * &z2;
        // |sum_{j>k} z^(2j+1)/(2j+1)| <= |z|^(2k+3) / ((2k+3)(1-z^2))
        let tail = power.abs() / (rat_int(2 * k + 3) * &one_minus_z2);
        if &tail <= tail_target {
            break tail;
        }
        k += 1;
    };
    let two = rat_int(2);
    Enclosure {
        lower: (Rational::new(lo, scale.clone()) - &tail) * &two,
        upper: (Rational::new(hi, scale.clone()) + &tail) * &two,
    }
}

/// Natural logarithm of a positive rational, width at most `10^-precision`.
///
/// Reduces `x = 2^j · y` with `y ∈ [1/2, 2]`, then evaluates
/// `ln y = 2 atanh((y-1)/(y+1))` and `ln 2 = 2 atanh(1/3)`.
pub fn log_enclosure(x: &Rational, precision: u32) -> Result<Enclosure> {
    if !x.is_positive() {
        return Err(Error::argument(format!(
            "logarithm of a nonpositive number ({x})"
        )));
    }
    if precision == 0 {
        return Err(Error::argument("precision must be at least 1"));
    }
    if x.is_one() {
        return Ok(Enclosure::point(Rational::zero()));
    }

    let mut j: i64 =
        x.numer().bits() as i64 - x.denom().bits() as i64;
    let two = rat_int(2);
    let half = rat(1, 2);
    let mut y = if j >= 0 {
        x / num_traits::pow(two.clone(), j as usize)
    } else {
        x * num_traits::pow(two.clone(), j.unsigned_abs() as usize)
    };
    while y > two {
        y = &y / &two;
        j += 1;
    }
    while y < half {
        y = &y * &two;
        j -= 1;
    }
    let z = (&y - Rational::one()) / (&y + Rational::one());

    // Internal width target 8·10^-(p+1) leaves room for the final snap onto
    // the 10^-(p+1) grid, so that the result has width <= 10^-p and raising
    // the precision never widens it.
    let target = rat(8, 1) / rat_int(pow10(precision + 1));
    let j_digits = j.unsigned_abs().to_string().len() as u32;
    let mut guard = precision + j_digits + 6;
    loop {
        let scale = pow10(guard);
        let tail_target = Rational::new(Integer::one(), scale.clone());
        let ln_y = two_atanh(&z, &scale, &tail_target);
        let ln_two = two_atanh(&rat(1, 3), &scale, &tail_target);
        let total = &ln_two.scale(&rat_int(j)) + &ln_y;
        if total.width() <= target {
            let snapped = total.snap_outward(&pow10(precision + 1));
            debug_assert!(snapped.width() <= Rational::new(Integer::one(), pow10(precision)));
            return Ok(snapped);
        }
        guard += 4;
    }
}

/// Exact decimal rendering helper: `p/q` strings for rationals.
pub fn rational_to_string(x: &Rational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::argument(format!("cannot parse `{s}` as an integer or p/q fraction"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: Integer = p.trim().parse().map_err(|_| bad())?;
            let q: Integer = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(Error::argument(format!("zero denominator in `{s}`")));
            }
            Ok(Rational::new(p, q))
        }
        None => Ok(rat_int(s.parse::<Integer>().map_err(|_| bad())?)),
    }
}

/// Serde adapters. Rationals travel as `"p/q"` strings; integers as JSON
/// numbers when they fit in 64 bits and as decimal strings otherwise.
pub mod serde_exact {
    use super::*;
    use serde::de::{self, Deserializer};
    use serde::ser::Serializer;

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum IntRepr {
        Signed(i64),
        Unsigned(u64),
        Text(String),
    }

    fn int_from_repr<E: de::Error>(r: IntRepr) -> std::result::Result<Integer, E> {
        match r {
            IntRepr::Signed(v) => Ok(Integer::from(v)),
            IntRepr::Unsigned(v) => Ok(Integer::from(v)),
            IntRepr::Text(s) => s.parse().map_err(E::custom),
        }
    }

    fn ser_int<S: Serializer>(v: &Integer, s: S) -> std::result::Result<S::Ok, S::Error> {
        match v.to_i64() {
            Some(small) => s.serialize_i64(small),
            None => s.serialize_str(&v.to_string()),
        }
    }

    pub mod integer {
        use super::*;

        pub fn serialize<S: Serializer>(v: &Integer, s: S) -> std::result::Result<S::Ok, S::Error> {
            ser_int(v, s)
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Integer, D::Error> {
            int_from_repr(IntRepr::deserialize(d)?)
        }
    }

    pub mod rational {
        use super::*;

        pub fn serialize<S: Serializer>(v: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
            s.serialize_str(&rational_to_string(v))
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
            let text = String::deserialize(d)?;
            parse_rational(&text).map_err(de::Error::custom)
        }
    }

    pub mod option_integer {
        use super::*;

        pub fn serialize<S: Serializer>(
            v: &Option<Integer>,
            s: S,
        ) -> std::result::Result<S::Ok, S::Error> {
            match v {
                Some(v) => ser_int(v, s),
                None => s.serialize_none(),
            }
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(
            d: D,
        ) -> std::result::Result<Option<Integer>, D::Error> {
            Option::<IntRepr>::deserialize(d)?
                .map(int_from_repr)
                .transpose()
        }
    }
}

/// A rational with `"p/q"` serde representation, for use inside collections.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ExactRational(#[serde(with = "serde_exact::rational")] pub Rational);

impl Serialize for Enclosure {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Enclosure", 2)?;
        st.serialize_field("lower", &rational_to_string(&self.lower))?;
        st.serialize_field("upper", &rational_to_string(&self.upper))?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for Enclosure {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            lower: String,
            upper: String,
        }
        let raw = Raw::deserialize(d)?;
        let lower = parse_rational(&raw.lower).map_err(serde::de::Error::custom)?;
        let upper = parse_rational(&raw.upper).map_err(serde::de::Error::custom)?;
        Enclosure::new(lower, upper).map_err(serde::de::Error::custom)
    }
}

pub(crate) fn gcd(a: &Integer, b: &Integer) -> Integer {
    a.gcd(b)
}
