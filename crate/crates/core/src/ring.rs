//! Exact arithmetic in `Z[1/2][w]/(w^4 + 1)`, where `w = e^{iπ/4}`.
//!
//! This ring is the same as `Z[i, 1/√2]`: every matrix entry produced by a
//! π/4-fragment diagram lives here. Elements are stored as four dyadic
//! coordinates over the basis `{1, w, w², w³}`, which is a genuine basis, so
//! equality is plain component-wise comparison.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingParseError {
    #[error("invalid dyadic literal `{0}`")]
    Dyadic(String),
    #[error("invalid ring element `{0}`")]
    Elt(String),
    #[error("invalid phase `{0}`")]
    Phase(String),
}

/// A dyadic rational `num / 2^exp`, kept normalized: either `exp == 0` or
/// `num` is odd.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Dyadic {
    num: BigInt,
    exp: u32,
}

impl Dyadic {
    /// Builds `n / 2^k` in normal form.
    pub fn new(n: impl Into<BigInt>, k: u32) -> Self {
        let mut d = Dyadic { num: n.into(), exp: k };
        d.normalize();
        d
    }

    pub fn from_int(n: i64) -> Self {
        Dyadic { num: BigInt::from(n), exp: 0 }
    }

    pub fn half() -> Self {
        Dyadic::new(1, 1)
    }

    pub fn numerator(&self) -> &BigInt {
        &self.num
    }

    pub fn exponent(&self) -> u32 {
        self.exp
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.exp = 0;
            return;
        }
        if self.exp == 0 {
            return;
        }
        let tz = self.num.trailing_zeros().unwrap_or(0) as u32;
        let shift = tz.min(self.exp);
        if shift > 0 {
            self.num >>= shift as usize;
            self.exp -= shift;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.num.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.exp == 0
    }

    pub fn abs(&self) -> Self {
        Dyadic { num: self.num.abs(), exp: self.exp }
    }

    /// Integer part for non-negative values, `None` when the value is negative.
    pub fn floor_nonneg(&self) -> Option<BigInt> {
        if self.is_negative() {
            return None;
        }
        Some(&self.num >> self.exp as usize)
    }

    pub fn to_i64(&self) -> Option<i64> {
        if self.exp == 0 {
            self.num.to_i64()
        } else {
            None
        }
    }

    pub fn to_f64(&self) -> f64 {
        let n = self.num.to_f64().unwrap_or(f64::NAN);
        n / 2f64.powi(self.exp as i32)
    }

    fn aligned(a: &Dyadic, b: &Dyadic) -> (BigInt, BigInt, u32) {
        match a.exp.cmp(&b.exp) {
            Ordering::Equal => (a.num.clone(), b.num.clone(), a.exp),
            Ordering::Less => (&a.num << (b.exp - a.exp) as usize, b.num.clone(), b.exp),
            Ordering::Greater => (a.num.clone(), &b.num << (a.exp - b.exp) as usize, a.exp),
        }
    }
}

impl Zero for Dyadic {
    fn zero() -> Self {
        Dyadic { num: BigInt::zero(), exp: 0 }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for Dyadic {
    fn one() -> Self {
        Dyadic::from_int(1)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b, _) = Dyadic::aligned(self, other);
        a.cmp(&b)
    }
}

impl<'a> Add<&'a Dyadic> for &'a Dyadic {
    type Output = Dyadic;
    fn add(self, rhs: &Dyadic) -> Dyadic {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        let (a, b, e) = Dyadic::aligned(self, rhs);
        Dyadic::new(a + b, e)
    }
}

impl Add for Dyadic {
    type Output = Dyadic;
    fn add(self, rhs: Dyadic) -> Dyadic {
        &self + &rhs
    }
}

impl<'a> Sub<&'a Dyadic> for &'a Dyadic {
    type Output = Dyadic;
    fn sub(self, rhs: &Dyadic) -> Dyadic {
        self + &(-rhs)
    }
}

impl Sub for Dyadic {
    type Output = Dyadic;
    fn sub(self, rhs: Dyadic) -> Dyadic {
        &self - &rhs
    }
}

impl<'a> Mul<&'a Dyadic> for &'a Dyadic {
    type Output = Dyadic;
    fn mul(self, rhs: &Dyadic) -> Dyadic {
        if self.is_zero() || rhs.is_zero() {
            return Dyadic::zero();
        }
        // product of odd numerators stays odd, so no renormalization needed
        // unless one side is an integer with trailing zeros
        Dyadic::new(&self.num * &rhs.num, self.exp + rhs.exp)
    }
}

impl Mul for Dyadic {
    type Output = Dyadic;
    fn mul(self, rhs: Dyadic) -> Dyadic {
        &self * &rhs
    }
}

impl Neg for &Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic { num: -&self.num, exp: self.exp }
    }
}

impl Neg for Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic { num: -self.num, exp: self.exp }
    }
}

impl From<i64> for Dyadic {
    fn from(n: i64) -> Self {
        Dyadic::from_int(n)
    }
}

impl fmt::Display for Dyadic {
    /// `n` for integers, `n/2^k` otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exp == 0 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/2^{}", self.num, self.exp)
        }
    }
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Dyadic {
    type Err = RingParseError;

    /// Accepts `n`, `n/2^k`, and `n/d` with `d` a power of two.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || RingParseError::Dyadic(s.to_string());
        let s = s.trim();
        match s.split_once('/') {
            None => s.parse::<BigInt>().map(|n| Dyadic::new(n, 0)).map_err(|_| err()),
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| err())?;
                let d = d.trim();
                let k = if let Some(k) = d.strip_prefix("2^") {
                    k.parse::<u32>().map_err(|_| err())?
                } else {
                    let d: u64 = d.parse().map_err(|_| err())?;
                    if d == 0 || !d.is_power_of_two() {
                        return Err(err());
                    }
                    d.trailing_zeros()
                };
                Ok(Dyadic::new(n, k))
            }
        }
    }
}

impl serde::Serialize for Dyadic {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for Dyadic {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A phase `kπ/4`, with `k` reduced mod 8.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct PhaseK(u8);

impl PhaseK {
    pub const ZERO: PhaseK = PhaseK(0);
    pub const PI: PhaseK = PhaseK(4);

    pub fn new(k: i64) -> Self {
        PhaseK(k.rem_euclid(8) as u8)
    }

    pub fn k(self) -> u8 {
        self.0
    }

    pub fn all() -> impl Iterator<Item = PhaseK> {
        (0..8).map(PhaseK)
    }
}

impl Add for PhaseK {
    type Output = PhaseK;
    fn add(self, rhs: PhaseK) -> PhaseK {
        PhaseK((self.0 + rhs.0) % 8)
    }
}

impl Neg for PhaseK {
    type Output = PhaseK;
    fn neg(self) -> PhaseK {
        PhaseK((8 - self.0) % 8)
    }
}

impl fmt::Display for PhaseK {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl FromStr for PhaseK {
    type Err = RingParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.trim().parse::<i64>().map(PhaseK::new).map_err(|_| RingParseError::Phase(s.to_string()))
    }
}

/// `c0 + c1 w + c2 w² + c3 w³` with `w⁴ = -1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RingElt([Dyadic; 4]);

impl RingElt {
    pub fn new(c: [Dyadic; 4]) -> Self {
        RingElt(c)
    }

    pub fn from_ints(c: [i64; 4]) -> Self {
        RingElt(c.map(Dyadic::from_int))
    }

    pub fn from_dyadic(d: Dyadic) -> Self {
        RingElt([d, Dyadic::zero(), Dyadic::zero(), Dyadic::zero()])
    }

    pub fn from_int(n: i64) -> Self {
        RingElt::from_dyadic(Dyadic::from_int(n))
    }

    pub fn coeffs(&self) -> &[Dyadic; 4] {
        &self.0
    }

    pub fn into_coeffs(self) -> [Dyadic; 4] {
        self.0
    }

    /// `w` itself.
    pub fn omega() -> Self {
        RingElt::from_ints([0, 1, 0, 0])
    }

    /// `w^k` for the phase `kπ/4`.
    pub fn from_phase(p: PhaseK) -> Self {
        let k = p.k() as usize;
        let mut c = [0i64; 4];
        c[k % 4] = if k < 4 { 1 } else { -1 };
        RingElt::from_ints(c)
    }

    /// `√2 = w - w³`.
    pub fn sqrt2() -> Self {
        RingElt::from_ints([0, 1, 0, -1])
    }

    /// `1/√2 = (w - w³)/2`.
    pub fn inv_sqrt2() -> Self {
        let h = Dyadic::half();
        RingElt([Dyadic::zero(), h.clone(), Dyadic::zero(), -h])
    }

    pub fn conj(&self) -> Self {
        let [c0, c1, c2, c3] = &self.0;
        RingElt([c0.clone(), -c3, -c2, -c1])
    }

    pub fn scale(&self, d: &Dyadic) -> Self {
        RingElt([&self.0[0] * d, &self.0[1] * d, &self.0[2] * d, &self.0[3] * d])
    }

    /// Multiplies by `w^k`: a signed rotation of the coordinates.
    pub fn mul_phase(&self, p: PhaseK) -> Self {
        let k = p.k() as usize;
        let mut out: [Dyadic; 4] = Default::default();
        for (i, c) in self.0.iter().enumerate() {
            let j = i + k;
            out[j % 4] = if (j / 4).is_multiple_of(2) { c.clone() } else { -c };
        }
        RingElt(out)
    }

    /// Writes `a = λ·w^k` with `λ ≥ 0` dyadic, which is possible exactly when
    /// at most one coordinate is nonzero. Zero maps to `(0, 0)`.
    pub fn polar_in_fragment(&self) -> Option<(Dyadic, PhaseK)> {
        let nonzero: Vec<usize> = (0..4).filter(|&i| !self.0[i].is_zero()).collect();
        match nonzero.as_slice() {
            [] => Some((Dyadic::zero(), PhaseK::ZERO)),
            [i] => {
                let c = &self.0[*i];
                if c.is_negative() {
                    Some((c.abs(), PhaseK::new(*i as i64 + 4)))
                } else {
                    Some((c.clone(), PhaseK::new(*i as i64)))
                }
            }
            _ => None,
        }
    }

    /// Floating-point value `(re, im)`. Diagnostics only.
    pub fn to_complex_approx(&self) -> (f64, f64) {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let [c0, c1, c2, c3] = self.0.clone().map(|d| d.to_f64());
        (c0 + h * c1 - h * c3, h * c1 + c2 + h * c3)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.0[0].is_one() && self.0[1..].iter().all(|c| c.is_zero())
    }

    /// Whether this is `w^k` for some `k`.
    pub fn is_unit_phase(&self) -> bool {
        matches!(self.polar_in_fragment(), Some((l, _)) if l.is_one())
    }
}

impl Default for RingElt {
    fn default() -> Self {
        RingElt::zero()
    }
}

impl Zero for RingElt {
    fn zero() -> Self {
        RingElt(Default::default())
    }
    fn is_zero(&self) -> bool {
        RingElt::is_zero(self)
    }
}

impl One for RingElt {
    fn one() -> Self {
        RingElt::from_int(1)
    }
}

impl Default for Dyadic {
    fn default() -> Self {
        Dyadic::zero()
    }
}

impl<'a> Add<&'a RingElt> for &'a RingElt {
    type Output = RingElt;
    fn add(self, rhs: &RingElt) -> RingElt {
        RingElt([&self.0[0] + &rhs.0[0], &self.0[1] + &rhs.0[1], &self.0[2] + &rhs.0[2], &self.0[3] + &rhs.0[3]])
    }
}

impl Add for RingElt {
    type Output = RingElt;
    fn add(self, rhs: RingElt) -> RingElt {
        &self + &rhs
    }
}

impl AddAssign<&RingElt> for RingElt {
    fn add_assign(&mut self, rhs: &RingElt) {
        for i in 0..4 {
            if !rhs.0[i].is_zero() {
                self.0[i] = &self.0[i] + &rhs.0[i];
            }
        }
    }
}

impl<'a> Sub<&'a RingElt> for &'a RingElt {
    type Output = RingElt;
    fn sub(self, rhs: &RingElt) -> RingElt {
        self + &(-rhs)
    }
}

impl Sub for RingElt {
    type Output = RingElt;
    fn sub(self, rhs: RingElt) -> RingElt {
        &self - &rhs
    }
}

impl Neg for &RingElt {
    type Output = RingElt;
    fn neg(self) -> RingElt {
        RingElt([-&self.0[0], -&self.0[1], -&self.0[2], -&self.0[3]])
    }
}

impl Neg for RingElt {
    type Output = RingElt;
    fn neg(self) -> RingElt {
        -&self
    }
}

impl<'a> Mul<&'a RingElt> for &'a RingElt {
    type Output = RingElt;
    fn mul(self, rhs: &RingElt) -> RingElt {
        if self.is_zero() || rhs.is_zero() {
            return RingElt::zero();
        }
        // polynomial product, folding w^(4+j) = -w^j
        let mut out: [Dyadic; 4] = Default::default();
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.0.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let p = a * b;
                let k = i + j;
                out[k % 4] = if k < 4 { &out[k % 4] + &p } else { &out[k % 4] - &p };
            }
        }
        RingElt(out)
    }
}

impl Mul for RingElt {
    type Output = RingElt;
    fn mul(self, rhs: RingElt) -> RingElt {
        &self * &rhs
    }
}

impl MulAssign<&RingElt> for RingElt {
    fn mul_assign(&mut self, rhs: &RingElt) {
        *self = &*self * rhs;
    }
}

impl From<Dyadic> for RingElt {
    fn from(d: Dyadic) -> Self {
        RingElt::from_dyadic(d)
    }
}

impl From<i64> for RingElt {
    fn from(n: i64) -> Self {
        RingElt::from_int(n)
    }
}

impl fmt::Display for RingElt {
    /// Canonical form `a0 + a1*w + a2*w^2 + a3*w^3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [c0, c1, c2, c3] = &self.0;
        write!(f, "{} + {}*w + {}*w^2 + {}*w^3", c0, c1, c2, c3)
    }
}

impl fmt::Debug for RingElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for RingElt {
    type Err = RingParseError;

    /// Parses the canonical rendering, and also looser sums such as
    /// `1/2^1*w - 1/2*w^3`, `-w^2` or `3`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || RingParseError::Elt(s.to_string());
        let src: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if src.is_empty() {
            return Err(err());
        }
        // split into signed terms; `+`/`-` following `^` belongs to nothing valid
        let mut terms: Vec<(bool, String)> = Vec::new();
        let mut neg = false;
        let mut cur = String::new();
        for ch in src.chars() {
            if (ch == '+' || ch == '-') && !cur.is_empty() {
                terms.push((neg, std::mem::take(&mut cur)));
                neg = ch == '-';
            } else if (ch == '+' || ch == '-') && cur.is_empty() {
                if ch == '-' {
                    neg = !neg;
                }
            } else {
                cur.push(ch);
            }
        }
        if cur.is_empty() {
            return Err(err());
        }
        terms.push((neg, cur));

        let mut acc = RingElt::zero();
        for (neg, term) in terms {
            let (coeff, power) = match term.find('w') {
                None => (term.as_str(), 0usize),
                Some(pos) => {
                    let (c, w) = term.split_at(pos);
                    let c = c.strip_suffix('*').unwrap_or(c);
                    let power = match w {
                        "w" => 1,
                        _ => w.strip_prefix("w^").and_then(|p| p.parse::<usize>().ok()).ok_or_else(err)?,
                    };
                    (c, power)
                }
            };
            let mut d = if coeff.is_empty() { Dyadic::one() } else { coeff.parse::<Dyadic>().map_err(|_| err())? };
            if neg {
                d = -d;
            }
            let t = RingElt::from_dyadic(d).mul_phase(PhaseK::new(power as i64));
            acc += &t;
        }
        Ok(acc)
    }
}

impl serde::Serialize for RingElt {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for RingElt {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn d(n: i64, k: u32) -> Dyadic {
        Dyadic::new(n, k)
    }

    #[test]
    fn dyadic_normalizes() {
        assert_eq!(d(4, 2), Dyadic::from_int(1));
        assert_eq!(d(4, 2).exponent(), 0);
        let x = d(3, 1);
        assert_eq!((x.numerator().clone(), x.exponent()), (BigInt::from(3), 1));
        let z = d(0, 5);
        assert!(z.is_zero());
        assert_eq!(z.exponent(), 0);
        assert_eq!(d(-6, 3), d(-3, 2));
    }

    #[test]
    fn dyadic_parse_forms() {
        assert_eq!("3/2^1".parse::<Dyadic>().unwrap(), d(3, 1));
        assert_eq!("7/8".parse::<Dyadic>().unwrap(), d(7, 3));
        assert_eq!("-5".parse::<Dyadic>().unwrap(), d(-5, 0));
        assert!("1/3".parse::<Dyadic>().is_err());
    }

    #[test]
    fn addition_examples() {
        let a = RingElt::from_ints([1, 0, 0, 0]);
        let b = RingElt::from_ints([0, 1, 0, 0]);
        assert_eq!(&a + &b, RingElt::from_ints([1, 1, 0, 0]));
        let h = RingElt::from_dyadic(Dyadic::half());
        assert_eq!(&h + &h, RingElt::one());
    }

    #[test]
    fn multiplication_examples() {
        let w = RingElt::omega();
        let w3 = RingElt::from_ints([0, 0, 0, 1]);
        assert_eq!(&w * &w3, RingElt::from_int(-1));
        let s = RingElt::from_ints([0, 1, 0, -1]);
        assert_eq!(&s * &s, RingElt::from_int(2));
        let i = RingElt::from_ints([0, 0, 1, 0]);
        assert_eq!(&i * &i, RingElt::from_int(-1));
        assert_eq!(&RingElt::inv_sqrt2() * &RingElt::sqrt2(), RingElt::one());
    }

    #[test]
    fn conjugation_examples() {
        assert_eq!(RingElt::omega().conj(), RingElt::from_ints([0, 0, 0, -1]));
        assert_eq!(RingElt::from_ints([0, 0, 1, 0]).conj(), RingElt::from_ints([0, 0, -1, 0]));
        let real = RingElt::from_ints([5, 2, 0, -2]);
        assert_eq!(real.conj(), real);
    }

    #[test]
    fn phases() {
        assert_eq!(RingElt::from_phase(PhaseK::new(0)), RingElt::one());
        assert_eq!(RingElt::from_phase(PhaseK::new(4)), RingElt::from_int(-1));
        assert_eq!(RingElt::from_phase(PhaseK::new(6)), RingElt::from_ints([0, 0, -1, 0]));
        assert_eq!(PhaseK::new(-1), PhaseK::new(7));
    }

    #[test]
    fn polar_examples() {
        let p = RingElt::from_ints([0, 0, 0, 2]).polar_in_fragment().unwrap();
        assert_eq!(p, (Dyadic::from_int(2), PhaseK::new(3)));
        let p = RingElt::from_ints([0, -3, 0, 0]).polar_in_fragment().unwrap();
        assert_eq!(p, (Dyadic::from_int(3), PhaseK::new(5)));
        assert!(RingElt::from_ints([1, 1, 0, 0]).polar_in_fragment().is_none());
        assert!(RingElt::from_ints([1, 0, 1, 0]).polar_in_fragment().is_none());
    }

    #[test]
    fn complex_approx_examples() {
        let (re, im) = RingElt::one().to_complex_approx();
        assert_eq!((re, im), (1.0, 0.0));
        let (re, im) = RingElt::omega().to_complex_approx();
        assert!((re - 0.5f64.sqrt()).abs() < 1e-15 && (im - 0.5f64.sqrt()).abs() < 1e-15);
        let (re, im) = RingElt::inv_sqrt2().to_complex_approx();
        assert!((re - 0.5f64.sqrt()).abs() < 1e-15 && im.abs() < 1e-15);
    }

    #[test]
    fn text_roundtrip_canonical() {
        let x = RingElt::new([d(-1, 0), d(1, 1), d(0, 0), d(-1, 1)]);
        let s = x.to_string();
        assert_eq!(s, "-1 + 1/2^1*w + 0*w^2 + -1/2^1*w^3");
        assert_eq!(s.parse::<RingElt>().unwrap(), x);
        assert_eq!("1/2*w - 1/2*w^3".parse::<RingElt>().unwrap(), RingElt::inv_sqrt2());
        assert_eq!("-w^2".parse::<RingElt>().unwrap(), RingElt::from_ints([0, 0, -1, 0]));
    }

    fn arb_dyadic() -> impl Strategy<Value = Dyadic> {
        (-(1i64 << 20)..(1i64 << 20), 0u32..6).prop_map(|(n, k)| Dyadic::new(n, k))
    }

    fn arb_elt() -> impl Strategy<Value = RingElt> {
        [arb_dyadic(), arb_dyadic(), arb_dyadic(), arb_dyadic()].prop_map(RingElt::new)
    }

    proptest! {
        #[test]
        fn text_roundtrip(x in arb_elt()) {
            prop_assert_eq!(x.to_string().parse::<RingElt>().unwrap(), x);
        }

        #[test]
        fn conj_is_involutive_homomorphism(a in arb_elt(), b in arb_elt()) {
            prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
            prop_assert_eq!(a.conj().conj(), a);
        }

        #[test]
        fn complex_embedding_is_homomorphism(a in arb_elt(), b in arb_elt()) {
            let (ar, ai) = a.to_complex_approx();
            let (br, bi) = b.to_complex_approx();
            let (sr, si) = (&a + &b).to_complex_approx();
            prop_assert!((sr - (ar + br)).abs() < 1e-6 && (si - (ai + bi)).abs() < 1e-6);
            let (pr, pi) = (&a * &b).to_complex_approx();
            let (er, ei) = (ar * br - ai * bi, ar * bi + ai * br);
            let scale = 1.0f64.max(er.abs()).max(ei.abs());
            prop_assert!((pr - er).abs() / scale < 1e-12 && (pi - ei).abs() / scale < 1e-12);
        }

        #[test]
        fn polar_reconstructs(c in 0usize..4, v in arb_dyadic()) {
            let mut cs: [Dyadic; 4] = Default::default();
            cs[c] = v;
            let x = RingElt::new(cs);
            let (l, k) = x.polar_in_fragment().unwrap();
            prop_assert!(!l.is_negative());
            prop_assert_eq!(&RingElt::from_dyadic(l) * &RingElt::from_phase(k), x);
        }

        #[test]
        fn mul_phase_matches_mul(a in arb_elt(), k in 0i64..8) {
            let p = PhaseK::new(k);
            prop_assert_eq!(a.mul_phase(p), &a * &RingElt::from_phase(p));
        }
    }
}
