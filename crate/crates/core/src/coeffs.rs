//! Exact coefficient arithmetic and truncated Hilbert series.
//!
//! Everything here is exact: scalars are canonical rationals or residues
//! modulo a prime `p > 3`, and series carry integer coefficients up to an
//! explicit dimension cutoff. Binary series operations truncate to the
//! smaller cutoff.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoeffError {
    #[error("constant term {0} is not a unit")]
    NonUnitConstantTerm(i64),
    #[error("negative dimension {value} in dimension {dim}")]
    NegativeDimension { dim: usize, value: i64 },
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("prime field characteristic must exceed 3, got {0}")]
    SmallCharacteristic(u64),
    #[error("denominator of {value} vanishes modulo {modulus}")]
    DenominatorVanishes { value: String, modulus: u64 },
    #[error("division by {divisor}: prime {prime} is not inverted in this ring")]
    NotInvertible { divisor: String, prime: u64 },
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(n: &BigInt) -> Vec<u64> {
    let mut n = n.abs();
    let mut out = Vec::new();
    let mut d = 2u64;
    while BigInt::from(d) * BigInt::from(d) <= n {
        let bd = BigInt::from(d);
        if (&n % &bd).is_zero() {
            out.push(d);
            while (&n % &bd).is_zero() {
                n /= &bd;
            }
        }
        d += 1;
    }
    if n > BigInt::one() {
        out.push(n.to_u64().expect("prime factor out of range"));
    }
    out
}

/// The coefficient ring of a presentation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RingSpec {
    Rationals,
    PrimeField {
        p: u64,
    },
    /// `Z[P^-1]`; the list always contains 2 and 3.
    Localization {
        inverted: Vec<u64>,
    },
}

impl RingSpec {
    pub fn prime_field(p: u64) -> Result<Self, CoeffError> {
        if !is_prime(p) {
            return Err(CoeffError::NotPrime(p));
        }
        if p <= 3 {
            return Err(CoeffError::SmallCharacteristic(p));
        }
        Ok(RingSpec::PrimeField { p })
    }

    pub fn localization(primes: &[u64]) -> Result<Self, CoeffError> {
        let mut inverted = vec![2, 3];
        for &p in primes {
            if !is_prime(p) {
                return Err(CoeffError::NotPrime(p));
            }
            inverted.push(p);
        }
        inverted.sort_unstable();
        inverted.dedup();
        Ok(RingSpec::Localization { inverted })
    }

    /// Fields over which computations run. Localizations run over `Q` and
    /// every tested non-inverted prime.
    pub fn fields(&self, tested: &[u64]) -> Vec<Field> {
        match self {
            RingSpec::Rationals => vec![Field::Rationals],
            RingSpec::PrimeField { p } => vec![Field::Prime(*p)],
            RingSpec::Localization { inverted } => {
                let mut out = vec![Field::Rationals];
                for &p in tested {
                    if !inverted.contains(&p) && is_prime(p) && p > 3 {
                        out.push(Field::Prime(p));
                    }
                }
                out
            }
        }
    }

    /// Default primes tested for a localization: the first three primes
    /// that are not inverted.
    pub fn default_test_primes(&self) -> Vec<u64> {
        match self {
            RingSpec::Localization { inverted } => {
                (5u64..).filter(|&p| is_prime(p) && !inverted.contains(&p)).take(3).collect()
            }
            _ => Vec::new(),
        }
    }

    /// Checks that a rational coefficient lives in the ring.
    pub fn check_coefficient(&self, q: &BigRational) -> Result<(), CoeffError> {
        match self {
            RingSpec::Rationals => Ok(()),
            RingSpec::PrimeField { p } => {
                if (q.denom() % BigInt::from(*p)).is_zero() {
                    Err(CoeffError::DenominatorVanishes { value: q.to_string(), modulus: *p })
                } else {
                    Ok(())
                }
            }
            RingSpec::Localization { inverted } => {
                match prime_factors(q.denom()).into_iter().find(|f| !inverted.contains(f)) {
                    Some(prime) => Err(CoeffError::NotInvertible { divisor: q.denom().to_string(), prime }),
                    None => Ok(()),
                }
            }
        }
    }

    /// Division inside the ring. Over a localization the divisor must only
    /// involve inverted primes.
    pub fn checked_div(&self, a: &BigRational, b: &BigRational) -> Result<BigRational, CoeffError> {
        assert!(!b.is_zero(), "division by zero");
        let q = a / b;
        if let RingSpec::Localization { inverted } = self {
            if let Some(prime) = prime_factors(b.numer()).into_iter().find(|f| !inverted.contains(f)) {
                return Err(CoeffError::NotInvertible { divisor: b.to_string(), prime });
            }
        }
        self.check_coefficient(&q)?;
        Ok(q)
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::Rationals => write!(f, "Q"),
            RingSpec::PrimeField { p } => write!(f, "Fp {p}"),
            RingSpec::Localization { inverted } => {
                let list: Vec<String> = inverted.iter().map(|p| p.to_string()).collect();
                write!(f, "Zloc {}", list.join(","))
            }
        }
    }
}

/// A field that computations actually run over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Field {
    Rationals,
    Prime(u64),
}

impl Field {
    pub fn zero(self) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rational(BigRational::zero()),
            Field::Prime(p) => Scalar::Residue { value: 0, modulus: p },
        }
    }

    pub fn one(self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(self, n: i64) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rational(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => Scalar::Residue { value: n.rem_euclid(p as i64) as u64, modulus: p },
        }
    }

    pub fn from_rational(self, q: &BigRational) -> Result<Scalar, CoeffError> {
        match self {
            Field::Rationals => Ok(Scalar::Rational(q.clone())),
            Field::Prime(p) => {
                let bp = BigInt::from(p);
                let num = q.numer().mod_floor(&bp).to_u64().unwrap();
                let den = q.denom().mod_floor(&bp).to_u64().unwrap();
                if den == 0 {
                    return Err(CoeffError::DenominatorVanishes { value: q.to_string(), modulus: p });
                }
                Ok(Scalar::Residue { value: mul_mod(num, inv_mod(den, p), p), modulus: p })
            }
        }
    }

    pub fn characteristic(self) -> u64 {
        match self {
            Field::Rationals => 0,
            Field::Prime(p) => p,
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F_{p}"),
        }
    }
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // Fermat; p is prime.
    let mut base = a % p;
    let mut exp = p - 2;
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// An exact field element.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Residue { value: u64, modulus: u64 },
}

impl Scalar {
    /// A rational lift; residues lift to their least non-negative value.
    pub fn to_rational(&self) -> BigRational {
        match self {
            Scalar::Rational(q) => q.clone(),
            Scalar::Residue { value, .. } => BigRational::from_integer(BigInt::from(*value)),
        }
    }

    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rationals,
            Scalar::Residue { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Residue { value, .. } => *value == 1,
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rational(q) => Scalar::Rational(q.recip()),
            Scalar::Residue { value, modulus } => {
                Scalar::Residue { value: inv_mod(*value, *modulus), modulus: *modulus }
            }
        })
    }

    /// `+1` or `-1` in the field.
    pub fn sign(field: Field, negative: bool) -> Scalar {
        field.from_i64(if negative { -1 } else { 1 })
    }

    /// True when the printed form should carry a leading minus.
    pub fn is_negative_display(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_negative(),
            Scalar::Residue { .. } => false,
        }
    }

    pub fn abs_display(&self) -> Scalar {
        match self {
            Scalar::Rational(q) => Scalar::Rational(q.abs()),
            other => other.clone(),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => {
                if q.is_integer() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Scalar::Residue { value, .. } => write!(f, "{value}"),
        }
    }
}

macro_rules! scalar_binop {
    ($trait:ident, $method:ident, $rat:expr, $res:expr) => {
        impl<'a> $trait<&'a Scalar> for &'a Scalar {
            type Output = Scalar;
            // Residue arithmetic reduces mod p inside the operator.
            #[allow(clippy::suspicious_arithmetic_impl)]
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                match (self, rhs) {
                    (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational($rat(a, b)),
                    (Scalar::Residue { value: a, modulus: p }, Scalar::Residue { value: b, modulus: q }) if p == q => {
                        Scalar::Residue { value: $res(*a, *b, *p), modulus: *p }
                    }
                    _ => panic!("scalars from different fields"),
                }
            }
        }
    };
}

scalar_binop!(Add, add, |a: &BigRational, b: &BigRational| a + b, |a: u64, b: u64, p: u64| (a + b) % p);
scalar_binop!(Sub, sub, |a: &BigRational, b: &BigRational| a - b, |a: u64, b: u64, p: u64| (a + p - b) % p);
scalar_binop!(Mul, mul, |a: &BigRational, b: &BigRational| a * b, mul_mod);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(q) => Scalar::Rational(-q),
            Scalar::Residue { value, modulus } => {
                Scalar::Residue { value: (modulus - value) % modulus, modulus: *modulus }
            }
        }
    }
}

/// An integer power series `c_0 + c_1 z + ... + c_N z^N + O(z^{N+1})`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HilbertSeries {
    cutoff: usize,
    coeffs: Vec<i64>,
}

fn checked(v: i128) -> i64 {
    i64::try_from(v).expect("Hilbert series coefficient overflow")
}

impl HilbertSeries {
    /// Coefficients beyond the cutoff are dropped; missing ones are zero.
    pub fn new(mut coeffs: Vec<i64>, cutoff: usize) -> Self {
        coeffs.resize(cutoff + 1, 0);
        HilbertSeries { cutoff, coeffs }
    }

    pub fn zero(cutoff: usize) -> Self {
        Self::new(Vec::new(), cutoff)
    }

    pub fn one(cutoff: usize) -> Self {
        Self::monomial(0, 1, cutoff)
    }

    pub fn monomial(dim: usize, coeff: i64, cutoff: usize) -> Self {
        let mut s = Self::zero(cutoff);
        if dim <= cutoff {
            s.coeffs[dim] = coeff;
        }
        s
    }

    /// The series `z` truncated at `cutoff`.
    pub fn z(cutoff: usize) -> Self {
        Self::monomial(1, 1, cutoff)
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> i64 {
        self.coeffs.get(n).copied().unwrap_or(0)
    }

    pub fn set(&mut self, n: usize, c: i64) {
        if n <= self.cutoff {
            self.coeffs[n] = c;
        }
    }

    pub fn truncate(&self, cutoff: usize) -> Self {
        let cutoff = cutoff.min(self.cutoff);
        Self::new(self.coeffs[..=cutoff].to_vec(), cutoff)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn lowest_nonzero(&self) -> Option<usize> {
        self.coeffs.iter().position(|&c| c != 0)
    }

    pub fn first_negative(&self) -> Option<usize> {
        self.coeffs.iter().position(|&c| c < 0)
    }

    fn zip(&self, other: &Self, op: impl Fn(i64, i64) -> i64) -> Self {
        let n = self.cutoff.min(other.cutoff);
        let coeffs = (0..=n).map(|i| op(self.coeffs[i], other.coeffs[i])).collect();
        Self::new(coeffs, n)
    }

    pub fn scale(&self, k: i64) -> Self {
        let coeffs = self.coeffs.iter().map(|&c| checked(c as i128 * k as i128)).collect();
        Self::new(coeffs, self.cutoff)
    }

    /// Multiplication by `z^k`.
    pub fn shift(&self, k: usize) -> Self {
        let mut coeffs = vec![0; k];
        coeffs.extend_from_slice(&self.coeffs);
        Self::new(coeffs, self.cutoff)
    }

    /// Cauchy product, truncated to the smaller cutoff.
    pub fn mul(&self, other: &Self) -> Self {
        let n = self.cutoff.min(other.cutoff);
        let mut acc = vec![0i128; n + 1];
        for (i, &a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate().take(n + 1 - i) {
                acc[i + j] += a as i128 * b as i128;
            }
        }
        Self::new(acc.into_iter().map(checked).collect(), n)
    }

    /// `1 / self`; the constant term must be `±1`.
    pub fn inverse(&self) -> Result<Self, CoeffError> {
        let a0 = self.coeffs[0];
        if a0 != 1 && a0 != -1 {
            return Err(CoeffError::NonUnitConstantTerm(a0));
        }
        let n = self.cutoff;
        let mut inv = vec![0i64; n + 1];
        inv[0] = a0;
        for k in 1..=n {
            let s: i128 = (1..=k).map(|i| self.coeffs[i] as i128 * inv[k - i] as i128).sum();
            // a0 * inv_k = -s, and a0 = ±1 is its own inverse.
            inv[k] = checked(-s * a0 as i128);
        }
        Ok(Self::new(inv, n))
    }

    /// Series of the coproduct `A ⨿ B` of connected algebras:
    /// `(A⁻¹ + B⁻¹ − 1)⁻¹`.
    pub fn coproduct_inverse(a: &Self, b: &Self) -> Result<Self, CoeffError> {
        for s in [a, b] {
            if s.coeffs[0] != 1 {
                return Err(CoeffError::NonUnitConstantTerm(s.coeffs[0]));
            }
        }
        let n = a.cutoff.min(b.cutoff);
        let sum = &(&a.inverse()? + &b.inverse()?) - &Self::one(n);
        sum.inverse()
    }

    /// Series of the tensor algebra `T(V)`, i.e. `1 / (1 − V(z))`.
    pub fn tensor_algebra(v: &Self) -> Self {
        (&Self::one(v.cutoff) - v).inverse().expect("V(z) of a connected module has zero constant term")
    }

    /// `UL(z) = Π_{n odd}(1+z^n)^{l_n} · Π_{n even}(1−z^n)^{−l_n}`.
    pub fn pbw_series(lie_dims: &Self) -> Result<Self, CoeffError> {
        if let Some(dim) = lie_dims.first_negative() {
            return Err(CoeffError::NegativeDimension { dim, value: lie_dims.coeffs[dim] });
        }
        Ok(Self::pbw_product(lie_dims))
    }

    fn pbw_product(lie_dims: &Self) -> Self {
        let n = lie_dims.cutoff;
        let mut acc = Self::one(n);
        for d in 1..=n {
            let l = lie_dims.coeffs[d];
            if l != 0 {
                acc = acc.mul(&pbw_factor(d, l, n));
            }
        }
        acc
    }

    /// Inverse of [`HilbertSeries::pbw_series`]: the unique integer sequence
    /// `l` (entries may be negative) whose PBW product is `u`.
    pub fn witt_solve(u: &Self) -> Result<Self, CoeffError> {
        if u.coeffs[0] != 1 {
            return Err(CoeffError::NonUnitConstantTerm(u.coeffs[0]));
        }
        let n = u.cutoff;
        let mut lie = Self::zero(n);
        let mut acc = Self::one(n);
        for d in 1..=n {
            let l = u.coeffs[d] - acc.coeffs[d];
            lie.coeffs[d] = l;
            if l != 0 {
                acc = acc.mul(&pbw_factor(d, l, n));
            }
        }
        Ok(lie)
    }
}

/// `(1+z^d)^e` for odd `d`, `(1−z^d)^{−e}` for even `d`, for any integer `e`.
fn pbw_factor(d: usize, e: i64, cutoff: usize) -> HilbertSeries {
    let mut coeffs = vec![0i64; cutoff + 1];
    let e = e as i128;
    // Coefficient of z^{dk} is C(e,k) for odd d and C(e+k−1,k) for even d.
    let mut c: i128 = 1;
    let mut k = 0usize;
    while d * k <= cutoff {
        coeffs[d * k] = checked(c);
        k += 1;
        let kk = k as i128;
        let top = if d % 2 == 1 { e - kk + 1 } else { e + kk - 1 };
        c = c.checked_mul(top).expect("Hilbert series coefficient overflow") / kk;
    }
    HilbertSeries::new(coeffs, cutoff)
}

impl Add for &HilbertSeries {
    type Output = HilbertSeries;
    fn add(self, rhs: &HilbertSeries) -> HilbertSeries {
        self.zip(rhs, |a, b| a.checked_add(b).expect("Hilbert series coefficient overflow"))
    }
}

impl Sub for &HilbertSeries {
    type Output = HilbertSeries;
    fn sub(self, rhs: &HilbertSeries) -> HilbertSeries {
        self.zip(rhs, |a, b| a.checked_sub(b).expect("Hilbert series coefficient overflow"))
    }
}

impl Mul for &HilbertSeries {
    type Output = HilbertSeries;
    fn mul(self, rhs: &HilbertSeries) -> HilbertSeries {
        HilbertSeries::mul(self, rhs)
    }
}

impl Neg for &HilbertSeries {
    type Output = HilbertSeries;
    fn neg(self) -> HilbertSeries {
        self.scale(-1)
    }
}

impl fmt::Display for HilbertSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let mag = c.unsigned_abs();
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c < 0 { "-" } else { "+" })?;
            }
            first = false;
            match (n, mag) {
                (0, m) => write!(f, "{m}")?,
                (1, 1) => write!(f, "z")?,
                (1, m) => write!(f, "{m} z")?,
                (n, 1) => write!(f, "z^{n}")?,
                (n, m) => write!(f, "{m} z^{n}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(z^{})", self.cutoff + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(c: &[i64], n: usize) -> HilbertSeries {
        HilbertSeries::new(c.to_vec(), n)
    }

    /// Brute-force series of `Π (1 − z^{d_i})^{-1}` by counting monomials.
    fn count_monomials(dims: &[usize], cutoff: usize) -> HilbertSeries {
        let mut counts = vec![0i64; cutoff + 1];
        fn rec(dims: &[usize], total: usize, cutoff: usize, counts: &mut [i64]) {
            match dims.split_first() {
                None => counts[total] += 1,
                Some((&d, rest)) => {
                    let mut t = total;
                    while t <= cutoff {
                        rec(rest, t, cutoff, counts);
                        t += d;
                    }
                }
            }
        }
        rec(dims, 0, cutoff, &mut counts);
        HilbertSeries::new(counts, cutoff)
    }

    #[test]
    fn mul_examples() {
        assert_eq!(s(&[1, 1], 2).mul(&s(&[1, -1], 2)), s(&[1, 0, -1], 2));
        assert_eq!(s(&[1, 1, 1, 1], 3).mul(&s(&[1, -1], 3)), HilbertSeries::one(3));
        let a = count_monomials(&[2, 2], 8);
        let b = count_monomials(&[4], 8);
        assert_eq!(a.mul(&b), s(&[1, 0, 2, 0, 4, 0, 6, 0, 9], 8));
        assert_eq!(a.mul(&b), count_monomials(&[2, 2, 4], 8));
    }

    #[test]
    fn mixed_cutoffs_truncate() {
        let p = s(&[1, 1, 1], 2).mul(&s(&[1, 1, 1, 1, 1], 4));
        assert_eq!(p.cutoff(), 2);
        assert_eq!(p, s(&[1, 2, 3], 2));
    }

    #[test]
    fn inverse_examples() {
        let inv = s(&[1, 0, -2], 6).inverse().unwrap();
        assert_eq!(inv, s(&[1, 0, 2, 0, 4, 0, 8], 6));
        assert_eq!(inv.mul(&s(&[1, 0, -2], 6)), HilbertSeries::one(6));
        assert_eq!(HilbertSeries::one(5).inverse().unwrap(), HilbertSeries::one(5));
        let mut a = HilbertSeries::one(40);
        a.set(9, 1);
        let inv = a.inverse().unwrap();
        for n in 0..=40 {
            let expect = if n % 9 == 0 {
                if (n / 9) % 2 == 0 {
                    1
                } else {
                    -1
                }
            } else {
                0
            };
            assert_eq!(inv.coeff(n), expect);
        }
        assert_eq!(inv.mul(&a), HilbertSeries::one(40));
        assert_eq!(s(&[2, 1], 3).inverse(), Err(CoeffError::NonUnitConstantTerm(2)));
        assert_eq!(s(&[-1, 1], 2).inverse().unwrap(), s(&[-1, -1, -1], 2));
    }

    /// Number of words of each dimension over letters of the given dims.
    fn word_counts(letters: &[usize], cutoff: usize) -> HilbertSeries {
        let mut c = vec![0i64; cutoff + 1];
        c[0] = 1;
        for n in 1..=cutoff {
            c[n] = letters.iter().filter(|&&d| d <= n).map(|&d| c[n - d]).sum();
        }
        HilbertSeries::new(c, cutoff)
    }

    #[test]
    fn coproduct_examples() {
        let tx = word_counts(&[2], 12);
        let ty = word_counts(&[3], 12);
        assert_eq!(HilbertSeries::coproduct_inverse(&tx, &ty).unwrap(), word_counts(&[2, 3], 12));
        assert_eq!(HilbertSeries::coproduct_inverse(&tx, &HilbertSeries::one(12)).unwrap(), tx);
        let t1 = word_counts(&[1], 10);
        assert_eq!(HilbertSeries::coproduct_inverse(&t1, &t1).unwrap(), word_counts(&[1, 1], 10));
    }

    #[test]
    fn pbw_examples() {
        let l = s(&[0, 0, 2, 0, 1], 12);
        assert_eq!(HilbertSeries::pbw_series(&l).unwrap(), count_monomials(&[2, 2, 4], 12));
        assert_eq!(HilbertSeries::pbw_series(&HilbertSeries::zero(6)).unwrap(), HilbertSeries::one(6));
        // two odd generators of dim 1: 1/(1-2z) needs the full Witt sequence
        let free = HilbertSeries::witt_solve(&word_counts(&[1, 1], 8)).unwrap();
        assert_eq!(&free.coeffs()[..4], &[0, 2, 3, 2]);
        assert_eq!(HilbertSeries::pbw_series(&free).unwrap(), word_counts(&[1, 1], 8));
        assert!(matches!(
            HilbertSeries::pbw_series(&s(&[0, -1], 3)),
            Err(CoeffError::NegativeDimension { dim: 1, value: -1 })
        ));
    }

    #[test]
    fn witt_trivial() {
        assert_eq!(HilbertSeries::witt_solve(&HilbertSeries::one(7)).unwrap(), HilbertSeries::zero(7));
    }

    #[test]
    fn witt_reports_negative_entries() {
        // 1 + z^2 is not the enveloping series of any Lie algebra
        let l = HilbertSeries::witt_solve(&s(&[1, 0, 1], 6)).unwrap();
        assert!(l.first_negative().is_some());
        assert_eq!(HilbertSeries::pbw_product(&l), s(&[1, 0, 1], 6));
    }

    #[test]
    fn display_format() {
        assert_eq!(s(&[1, 0, -2, 3], 3).to_string(), "1 - 2 z^2 + 3 z^3 + O(z^4)");
        assert_eq!(s(&[0, 1], 2).to_string(), "z + O(z^3)");
        assert_eq!(HilbertSeries::zero(1).to_string(), "0 + O(z^2)");
    }

    #[test]
    fn ring_specs() {
        assert!(RingSpec::prime_field(3).is_err());
        assert!(RingSpec::prime_field(9).is_err());
        assert_eq!(RingSpec::localization(&[7]).unwrap(), RingSpec::Localization { inverted: vec![2, 3, 7] });
        let r = RingSpec::localization(&[]).unwrap();
        let q = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        assert!(r.check_coefficient(&q(1, 4)).is_ok());
        assert!(r.check_coefficient(&q(1, 6)).is_ok());
        assert!(matches!(r.check_coefficient(&q(1, 10)), Err(CoeffError::NotInvertible { prime: 5, .. })));
        assert!(r.checked_div(&q(1, 1), &q(5, 1)).is_err());
        assert_eq!(r.checked_div(&q(1, 1), &q(12, 1)).unwrap(), q(1, 12));
        assert_eq!(r.default_test_primes(), vec![5, 7, 11]);
        assert_eq!(r.fields(&[5, 3]), vec![Field::Rationals, Field::Prime(5)]);
    }

    #[test]
    fn residue_arithmetic() {
        let f = Field::Prime(5);
        let q = BigRational::new(1.into(), 4.into());
        let quarter = f.from_rational(&q).unwrap();
        assert_eq!(&quarter * &f.from_i64(4), f.one());
        assert_eq!(&f.from_i64(3) - &f.from_i64(4), f.from_i64(-1));
        assert_eq!(f.from_i64(2).inv().unwrap(), f.from_i64(3));
        assert!(f.from_rational(&BigRational::new(1.into(), 10.into())).is_err());
    }
}
