//! Polynomials over `F_q`: canonical dense storage, Euclidean arithmetic,
//! deterministic enumeration and a small text format.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElem};

/// Degree of a polynomial; the zero polynomial has degree `NegInf`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInf,
    Finite(usize),
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInf => f.write_str("-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// A polynomial over a [`FieldCtx`], coefficients as element codes with the
/// constant term first. The coefficient vector never ends in a zero, so the
/// zero polynomial is the empty vector.
#[derive(Clone)]
pub struct Poly {
    field: FieldCtx,
    coeffs: Vec<u32>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && self.field == other.field
    }
}

impl Eq for Poly {}

impl Hash for Poly {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

/// Orders by the encoding `sum code(c_i) q^i`.
impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl Poly {
    pub(crate) fn from_raw(field: &FieldCtx, mut coeffs: Vec<u32>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly {
            field: field.clone(),
            coeffs,
        }
    }

    /// Build from element codes, constant term first. Trailing zeros are dropped.
    pub fn from_codes(field: &FieldCtx, coeffs: Vec<u32>) -> Result<Self> {
        if let Some(&c) = coeffs.iter().find(|&&c| c >= field.q()) {
            return Err(Error::CoefficientOutOfRange {
                code: c as u64,
                q: field.q(),
            });
        }
        Ok(Self::from_raw(field, coeffs))
    }

    pub fn zero(field: &FieldCtx) -> Self {
        Self::from_raw(field, Vec::new())
    }

    pub fn one(field: &FieldCtx) -> Self {
        Self::from_raw(field, vec![1])
    }

    pub fn minus_one(field: &FieldCtx) -> Self {
        Self::from_raw(field, vec![field.minus_one()])
    }

    /// The constant polynomial with the given element code.
    pub fn constant(field: &FieldCtx, code: u32) -> Self {
        Self::from_raw(field, vec![code])
    }

    /// The indeterminate `X`.
    pub fn x(field: &FieldCtx) -> Self {
        Self::from_raw(field, vec![0, 1])
    }

    /// `c X^k`.
    pub fn monomial(field: &FieldCtx, code: u32, k: usize) -> Self {
        let mut coeffs = vec![0; k + 1];
        coeffs[k] = code;
        Self::from_raw(field, coeffs)
    }

    pub fn field(&self) -> &FieldCtx {
        &self.field
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn degree(&self) -> Degree {
        match self.coeffs.len() {
            0 => Degree::NegInf,
            n => Degree::Finite(n - 1),
        }
    }

    /// Degree of a nonzero polynomial.
    pub fn deg(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    /// True for `-1`.
    pub fn is_minus_one(&self) -> bool {
        self.coeffs == [self.field.minus_one()]
    }

    /// Zero or a nonzero constant.
    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading_code(&self) -> Option<u32> {
        self.coeffs.last().copied()
    }

    /// The leading coefficient, called the sign.
    pub fn sgn(&self) -> Option<FieldElem> {
        self.leading_code()
            .map(|c| FieldElem::from_code(&self.field, c))
    }

    pub fn is_monic(&self) -> bool {
        self.leading_code() == Some(1)
    }

    /// Encoding `sum code(c_i) q^i`.
    pub fn encoding(&self) -> BigUint {
        let q = BigUint::from(self.field.q());
        self.coeffs
            .iter()
            .rev()
            .fold(BigUint::from(0u32), |acc, &c| acc * &q + c)
    }

    /// `|f| = q^deg f`, and `0` for the zero polynomial.
    pub fn norm(&self) -> BigUint {
        match self.deg() {
            None => BigUint::from(0u32),
            Some(d) => BigUint::from(self.field.q()).pow(d as u32),
        }
    }

    pub fn scale(&self, code: u32) -> Self {
        let k = &self.field;
        Self::from_raw(k, self.coeffs.iter().map(|&c| k.mul(c, code)).collect())
    }

    /// Divide by the leading coefficient. Zero stays zero.
    pub fn monic(&self) -> Self {
        match self.leading_code() {
            None | Some(1) => self.clone(),
            Some(lc) => self.scale(self.field.inv(lc).expect("nonzero leading coefficient")),
        }
    }

    fn check_field(&self, other: &Self) {
        assert!(
            self.field == other.field,
            "polynomials over different fields: {} vs {}",
            self.field,
            other.field
        );
    }

    fn add_impl(&self, other: &Self, negate: bool) -> Self {
        self.check_field(other);
        let k = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).copied().unwrap_or(0);
                let b = other.coeffs.get(i).copied().unwrap_or(0);
                if negate {
                    k.sub(a, b)
                } else {
                    k.add(a, b)
                }
            })
            .collect();
        Self::from_raw(k, coeffs)
    }

    fn mul_impl(&self, other: &Self) -> Self {
        self.check_field(other);
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.field);
        }
        let k = &self.field;
        let mut out = vec![0u32; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = k.add(out[i + j], k.mul(a, b));
            }
        }
        Self::from_raw(k, out)
    }

    /// Quotient and remainder with `self = quot * divisor + rem`, `deg rem < deg divisor`.
    pub fn divrem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        self.check_field(divisor);
        if divisor.is_zero() {
            return Err(Error::DivisionByZeroPoly);
        }
        Ok(self.divrem_unchecked(divisor))
    }

    fn divrem_unchecked(&self, divisor: &Poly) -> (Poly, Poly) {
        let k = &self.field;
        let dlen = divisor.coeffs.len();
        if self.coeffs.len() < dlen {
            return (Self::zero(k), self.clone());
        }
        let lc_inv = k.inv(divisor.coeffs[dlen - 1]).expect("nonzero divisor");
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u32; rem.len() - dlen + 1];
        for i in (0..quot.len()).rev() {
            let c = rem[i + dlen - 1];
            if c == 0 {
                continue;
            }
            let factor = k.mul(c, lc_inv);
            quot[i] = factor;
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                rem[i + j] = k.sub(rem[i + j], k.mul(factor, d));
            }
        }
        rem.truncate(dlen - 1);
        (Self::from_raw(k, quot), Self::from_raw(k, rem))
    }

    /// Remainder modulo a nonzero polynomial.
    pub fn rem(&self, modulus: &Poly) -> Result<Poly> {
        Ok(self.divrem(modulus)?.1)
    }

    pub(crate) fn rem_unchecked(&self, modulus: &Poly) -> Poly {
        if self.coeffs.len() < modulus.coeffs.len() {
            return self.clone();
        }
        let k = &self.field;
        let dlen = modulus.coeffs.len();
        let lc_inv = k.inv(modulus.coeffs[dlen - 1]).expect("nonzero modulus");
        let mut rem = self.coeffs.clone();
        for top in (dlen - 1..rem.len()).rev() {
            let c = rem[top];
            if c == 0 {
                continue;
            }
            let factor = k.mul(c, lc_inv);
            let shift = top + 1 - dlen;
            for (j, &d) in modulus.coeffs.iter().enumerate() {
                rem[shift + j] = k.sub(rem[shift + j], k.mul(factor, d));
            }
        }
        rem.truncate(dlen - 1);
        Self::from_raw(k, rem)
    }

    /// `self * other mod modulus`; `modulus` must be nonzero.
    pub(crate) fn mulmod(&self, other: &Poly, modulus: &Poly) -> Poly {
        self.mul_impl(other).rem_unchecked(modulus)
    }

    /// Exact quotient when `divisor` divides `self`.
    pub fn div_exact(&self, divisor: &Poly) -> Option<Poly> {
        let (quot, rem) = self.divrem(divisor).ok()?;
        rem.is_zero().then_some(quot)
    }

    pub fn divides(&self, other: &Poly) -> bool {
        !self.is_zero() && other.rem_unchecked(self).is_zero()
    }

    /// `self^k` by repeated squaring, no reduction.
    pub fn pow(&self, mut k: u64) -> Poly {
        let mut base = self.clone();
        let mut acc = Self::one(&self.field);
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Map an integer into the prime subfield.
    pub fn from_int(field: &FieldCtx, n: i64) -> Poly {
        let p = field.p() as i64;
        Self::constant(field, n.rem_euclid(p) as u32)
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.add_impl(rhs, false)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.add_impl(rhs, true)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.mul_impl(rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        let k = &self.field;
        Poly::from_raw(k, self.coeffs.iter().map(|&c| k.neg(c)).collect())
    }
}

/// Monic greatest common divisor.
pub fn gcd_monic(a: &Poly, b: &Poly) -> Result<Poly> {
    a.check_field(b);
    if a.is_zero() && b.is_zero() {
        return Err(Error::BothZero);
    }
    let (mut x, mut y) = (a.monic(), b.monic());
    while !y.is_zero() {
        let r = x.rem_unchecked(&y).monic();
        x = y;
        y = r;
    }
    Ok(x)
}

pub(crate) fn is_coprime(a: &Poly, b: &Poly) -> bool {
    gcd_monic(a, b).map(|g| g.is_one()).unwrap_or(false)
}

/// Inverse of `g` modulo a nonconstant `f`.
pub fn inverse_mod(g: &Poly, f: &Poly) -> Result<Poly> {
    g.check_field(f);
    if f.is_constant() {
        return Err(Error::BadModulusPoly);
    }
    let k = g.field();
    // Extended Euclid tracking only the coefficient of g.
    let (mut r0, mut r1) = (f.clone(), g.rem_unchecked(f));
    let (mut t0, mut t1) = (Poly::zero(k), Poly::one(k));
    while !r1.is_zero() {
        let (quot, rem) = r0.divrem_unchecked(&r1);
        let t2 = &t0 - &(&quot * &t1);
        r0 = r1;
        r1 = rem;
        t0 = t1;
        t1 = t2;
    }
    if r0.deg() != Some(0) {
        return Err(Error::NotCoprime);
    }
    let c = k.inv(r0.coeffs[0]).expect("nonzero constant");
    Ok(t0.scale(c).rem_unchecked(f))
}

/// `g^k mod f` by square-and-multiply with reduction at every step.
pub fn powmod(g: &Poly, k: &BigUint, f: &Poly) -> Result<Poly> {
    g.check_field(f);
    if f.is_constant() {
        return Err(Error::BadModulusPoly);
    }
    let mut acc = Poly::one(g.field()).rem_unchecked(f);
    let base = g.rem_unchecked(f);
    for i in (0..k.bits()).rev() {
        acc = acc.mulmod(&acc, f);
        if k.bit(i) {
            acc = acc.mulmod(&base, f);
        }
    }
    Ok(acc)
}

pub(crate) fn powmod_u64(g: &Poly, k: u64, f: &Poly) -> Poly {
    let mut acc = Poly::one(g.field()).rem_unchecked(f);
    let mut base = g.rem_unchecked(f);
    let mut e = k;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.mulmod(&base, f);
        }
        e >>= 1;
        if e > 0 {
            base = base.mulmod(&base, f);
        }
    }
    acc
}

/// Odometer over coefficient vectors in encoding order.
///
/// Yields every polynomial whose coefficient vector has `len` slots, with the
/// top slot ranging over `top_range`; `len = 0` is not used.
pub struct PolyIter {
    field: FieldCtx,
    digits: Vec<u32>,
    top_hi: u32,
    done: bool,
}

impl PolyIter {
    fn new(field: &FieldCtx, len: usize, top_lo: u32, top_hi: u32) -> Self {
        let mut digits = vec![0u32; len];
        let done = len == 0 || top_lo >= top_hi;
        if let Some(top) = digits.last_mut() {
            *top = top_lo;
        }
        PolyIter {
            field: field.clone(),
            digits,
            top_hi,
            done,
        }
    }
}

impl Iterator for PolyIter {
    type Item = Poly;

    fn next(&mut self) -> Option<Poly> {
        if self.done {
            return None;
        }
        let out = Poly::from_raw(&self.field, self.digits.clone());
        let q = self.field.q();
        let last = self.digits.len() - 1;
        let mut i = 0;
        loop {
            let limit = if i == last { self.top_hi } else { q };
            self.digits[i] += 1;
            if self.digits[i] < limit {
                break;
            }
            if i == last {
                self.done = true;
                break;
            }
            self.digits[i] = 0;
            i += 1;
        }
        Some(out)
    }
}

/// Polynomials of exactly the given degree, monic or all, in encoding order.
pub fn polys_of_degree(field: &FieldCtx, degree: usize, monic_only: bool) -> PolyIter {
    if monic_only {
        PolyIter::new(field, degree + 1, 1, 2)
    } else {
        PolyIter::new(field, degree + 1, 1, field.q())
    }
}

/// Materialized form of [`polys_of_degree`].
pub fn enumerate_polys(field: &FieldCtx, degree: usize, monic_only: bool) -> Vec<Poly> {
    polys_of_degree(field, degree, monic_only).collect()
}

/// All nonzero polynomials of degree `< bound`, in encoding order.
pub fn nonzero_polys_below(field: &FieldCtx, bound: usize) -> impl Iterator<Item = Poly> {
    let field = field.clone();
    (0..bound).flat_map(move |d| polys_of_degree(&field, d, false))
}

/// All monic polynomials of degree `< bound`, in encoding order.
pub fn monic_polys_below(field: &FieldCtx, bound: usize) -> impl Iterator<Item = Poly> {
    let field = field.clone();
    (0..bound).flat_map(move |d| polys_of_degree(&field, d, true))
}

const MAX_PARSED_DEGREE: u64 = 1 << 16;

/// Parse `c*X^k` terms joined by `+`, or `coeffs:c0,c1,...`.
pub fn parse_poly(text: &str, field: &FieldCtx) -> Result<Poly> {
    let chars: Vec<(usize, char)> = text
        .char_indices()
        .filter(|(_, c)| !c.is_whitespace())
        .collect();
    let compact: String = chars.iter().map(|&(_, c)| c).collect();
    let pos_of = |i: usize| chars.get(i).map_or(text.len(), |&(p, _)| p);

    if chars.is_empty() {
        return Err(Error::Parse {
            pos: 0,
            msg: "empty polynomial".into(),
        });
    }

    let check_code = |code: u64| -> Result<u32> {
        if code >= field.q() as u64 {
            Err(Error::CoefficientOutOfRange { code, q: field.q() })
        } else {
            Ok(code as u32)
        }
    };

    if let Some(rest) = compact.strip_prefix("coeffs:") {
        let offset = "coeffs:".len();
        let mut coeffs = Vec::new();
        if rest.is_empty() {
            return Ok(Poly::zero(field));
        }
        let mut at = offset;
        for tok in rest.split(',') {
            let code: u64 = tok.parse().map_err(|_| Error::Parse {
                pos: pos_of(at),
                msg: format!("expected a coefficient code, found {tok:?}"),
            })?;
            coeffs.push(check_code(code)?);
            at += tok.len() + 1;
        }
        return Ok(Poly::from_raw(field, coeffs));
    }

    let bytes: Vec<char> = compact.chars().collect();
    let mut i = 0;
    let mut acc: Vec<u32> = Vec::new();

    let read_number = |i: &mut usize| -> Result<u64> {
        let start = *i;
        while *i < bytes.len() && bytes[*i].is_ascii_digit() {
            *i += 1;
        }
        if start == *i {
            return Err(Error::Parse {
                pos: pos_of(start),
                msg: "expected a number".into(),
            });
        }
        let s: String = bytes[start..*i].iter().collect();
        s.parse().map_err(|_| Error::Parse {
            pos: pos_of(start),
            msg: "number too large".into(),
        })
    };

    loop {
        let coeff_start = i;
        let coeff = if i < bytes.len() && bytes[i].is_ascii_digit() {
            let c = read_number(&mut i)?;
            Some(check_code(c)?)
        } else {
            None
        };
        let has_x = if coeff.is_some() {
            if i < bytes.len() && bytes[i] == '*' {
                i += 1;
                if !(i < bytes.len() && matches!(bytes[i], 'X' | 'x')) {
                    return Err(Error::Parse {
                        pos: pos_of(i),
                        msg: "expected X after '*'".into(),
                    });
                }
                i += 1;
                true
            } else {
                false
            }
        } else if i < bytes.len() && matches!(bytes[i], 'X' | 'x') {
            i += 1;
            true
        } else {
            return Err(Error::Parse {
                pos: pos_of(coeff_start),
                msg: "expected a term".into(),
            });
        };
        let power = if has_x {
            if i < bytes.len() && bytes[i] == '^' {
                i += 1;
                let start = i;
                let k = read_number(&mut i)?;
                if k > MAX_PARSED_DEGREE {
                    return Err(Error::Parse {
                        pos: pos_of(start),
                        msg: "exponent too large".into(),
                    });
                }
                k as usize
            } else {
                1
            }
        } else {
            0
        };
        let code = coeff.unwrap_or(1);
        if acc.len() <= power {
            acc.resize(power + 1, 0);
        }
        acc[power] = field.add(acc[power], code);

        if i == bytes.len() {
            break;
        }
        if bytes[i] != '+' {
            return Err(Error::Parse {
                pos: pos_of(i),
                msg: format!("unexpected {:?}", bytes[i]),
            });
        }
        i += 1;
    }
    Ok(Poly::from_raw(field, acc))
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                f.write_str("+")?;
            }
            first = false;
            match (k, c) {
                (0, _) => write!(f, "{c}")?,
                (1, 1) => f.write_str("X")?,
                (1, _) => write!(f, "{c}*X")?,
                (_, 1) => write!(f, "X^{k}")?,
                _ => write!(f, "{c}*X^{k}")?,
            }
        }
        Ok(())
    }
}

/// Canonical text form.
pub fn format_poly(f: &Poly) -> String {
    f.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::build_field;

    fn k(p: u64) -> FieldCtx {
        build_field(p, 1, None).unwrap()
    }

    fn pp(field: &FieldCtx, s: &str) -> Poly {
        parse_poly(s, field).unwrap()
    }

    #[test]
    fn norm_examples() {
        let f3 = k(3);
        assert_eq!(pp(&f3, "X^3+2*X+2").norm(), BigUint::from(27u32));
        assert_eq!(Poly::zero(&f3).norm(), BigUint::from(0u32));
        let f9 = build_field(3, 2, None).unwrap();
        assert_eq!(pp(&f9, "5").norm(), BigUint::from(1u32));
    }

    #[test]
    fn degree_sentinel() {
        let f3 = k(3);
        assert_eq!(Poly::zero(&f3).degree(), Degree::NegInf);
        assert!(Degree::NegInf < Degree::Finite(0));
        assert_eq!(pp(&f3, "X^2+1").degree(), Degree::Finite(2));
        assert_eq!(pp(&f3, "2*X^2+1").sgn().unwrap().code(), 2);
        assert!(Poly::zero(&f3).sgn().is_none());
    }

    #[test]
    fn ring_arith_examples() {
        let f3 = k(3);
        let (quot, rem) = pp(&f3, "X^2+1").divrem(&pp(&f3, "X+1")).unwrap();
        assert_eq!(quot, pp(&f3, "X+2"));
        assert_eq!(rem, pp(&f3, "2"));

        let f = pp(&f3, "2*X^3+X");
        assert_eq!(f.divrem(&Poly::one(&f3)).unwrap(), (f.clone(), Poly::zero(&f3)));
        assert_eq!(f.divrem(&Poly::zero(&f3)).unwrap_err(), Error::DivisionByZeroPoly);

        let f2 = k(2);
        let x1 = pp(&f2, "X+1");
        assert_eq!(&x1 * &x1, pp(&f2, "X^2+1"));
    }

    #[test]
    fn gcd_examples() {
        let f3 = k(3);
        assert_eq!(gcd_monic(&pp(&f3, "X^2+2*X"), &pp(&f3, "X+2")).unwrap(), pp(&f3, "X+2"));
        assert!(gcd_monic(&pp(&f3, "X^2+2*X"), &Poly::one(&f3)).unwrap().is_one());
        assert_eq!(gcd_monic(&pp(&f3, "2*X"), &pp(&f3, "X")).unwrap(), pp(&f3, "X"));
        assert_eq!(gcd_monic(&pp(&f3, "2*X+2"), &Poly::zero(&f3)).unwrap(), pp(&f3, "X+1"));
        assert_eq!(gcd_monic(&Poly::zero(&f3), &Poly::zero(&f3)).unwrap_err(), Error::BothZero);
    }

    #[test]
    fn powmod_examples() {
        let f3 = k(3);
        let m = pp(&f3, "X^2+1");
        let four = BigUint::from(4u32);
        assert!(powmod(&Poly::x(&f3), &four, &m).unwrap().is_one());
        assert!(powmod(&pp(&f3, "X+2"), &BigUint::from(0u32), &m).unwrap().is_one());
        assert_eq!(powmod(&pp(&f3, "X+1"), &four, &m).unwrap(), pp(&f3, "2"));
        assert_eq!(
            powmod(&Poly::x(&f3), &four, &pp(&f3, "2")).unwrap_err(),
            Error::BadModulusPoly
        );
    }

    #[test]
    fn inverse_mod_works() {
        let f5 = k(5);
        let f = pp(&f5, "X^3+X+1");
        for g in nonzero_polys_below(&f5, 3) {
            let inv = inverse_mod(&g, &f).unwrap();
            assert!(g.mulmod(&inv, &f).is_one(), "{g}");
        }
        let f = pp(&f5, "X^2+X");
        assert_eq!(inverse_mod(&pp(&f5, "X"), &f).unwrap_err(), Error::NotCoprime);
    }

    #[test]
    fn enumeration_examples() {
        let f3 = k(3);
        let texts = |v: Vec<Poly>| v.iter().map(Poly::to_string).collect::<Vec<_>>();
        assert_eq!(texts(enumerate_polys(&f3, 1, true)), ["X", "X+1", "X+2"]);
        assert_eq!(texts(enumerate_polys(&f3, 0, false)), ["1", "2"]);
        let f2 = k(2);
        assert_eq!(texts(enumerate_polys(&f2, 2, true)), ["X^2", "X^2+1", "X^2+X", "X^2+X+1"]);
    }

    #[test]
    fn enumeration_counts_and_order() {
        for p in [2u64, 3, 5] {
            let f = k(p);
            let q = p as usize;
            for d in 0..4 {
                let monic = enumerate_polys(&f, d, true);
                assert_eq!(monic.len(), q.pow(d as u32));
                assert!(monic.iter().all(|g| g.is_monic() && g.deg() == Some(d)));
                assert!(monic.windows(2).all(|w| w[0].encoding() < w[1].encoding()));
                let all = enumerate_polys(&f, d, false);
                assert_eq!(all.len(), (q - 1) * q.pow(d as u32));
                assert!(all.windows(2).all(|w| w[0] < w[1]));
            }
            let below: Vec<_> = nonzero_polys_below(&f, 3).collect();
            assert_eq!(below.len(), q.pow(3) - 1);
        }
    }

    #[test]
    fn parse_examples() {
        let f3 = k(3);
        assert_eq!(pp(&f3, "X^3+2*X+2").coeffs(), &[2, 2, 0, 1]);
        assert!(pp(&f3, "0").is_zero());
        assert_eq!(pp(&f3, "coeffs:2,2,0,1"), pp(&f3, "X^3+2*X+2"));
        assert_eq!(pp(&f3, "2 + X^3 + 2*X"), pp(&f3, "X^3+2*X+2"));
        assert_eq!(pp(&f3, "X+X"), pp(&f3, "2*X"));
    }

    #[test]
    fn parse_errors() {
        let f3 = k(3);
        assert_eq!(
            parse_poly("X^2+3", &f3).unwrap_err(),
            Error::CoefficientOutOfRange { code: 3, q: 3 }
        );
        assert_eq!(
            parse_poly("coeffs:1,5", &f3).unwrap_err(),
            Error::CoefficientOutOfRange { code: 5, q: 3 }
        );
        match parse_poly("X^2+*X", &f3).unwrap_err() {
            Error::Parse { pos, .. } => assert_eq!(pos, 4),
            e => panic!("{e:?}"),
        }
        assert!(matches!(parse_poly("X^", &f3), Err(Error::Parse { .. })));
        assert!(matches!(parse_poly("", &f3), Err(Error::Parse { .. })));
        assert!(matches!(parse_poly("X-1", &f3), Err(Error::Parse { pos: 1, .. })));
    }

    #[test]
    fn format_forms() {
        let f9 = build_field(3, 2, None).unwrap();
        let g = Poly::from_codes(&f9, vec![7, 1, 0, 5]).unwrap();
        assert_eq!(format_poly(&g), "5*X^3+X+7");
        assert_eq!(pp(&f9, &format_poly(&g)), g);
    }

    #[test]
    fn exhaustive_divrem_reconstruction() {
        for p in [2u64, 3] {
            let f = k(p);
            let all: Vec<Poly> = std::iter::once(Poly::zero(&f))
                .chain(nonzero_polys_below(&f, 4))
                .collect();
            for a in &all {
                for b in all.iter().filter(|b| !b.is_zero()) {
                    let (quot, rem) = a.divrem(b).unwrap();
                    assert_eq!(&(&quot * b) + &rem, *a);
                    assert!(rem.degree() < b.degree());
                }
            }
        }
    }

    #[test]
    fn gcd_divides_both() {
        let f = k(3);
        let all: Vec<Poly> = nonzero_polys_below(&f, 3).collect();
        for a in &all {
            for b in &all {
                let g = gcd_monic(a, b).unwrap();
                assert!(g.is_monic());
                assert!(a.rem(&g).unwrap().is_zero());
                assert!(b.rem(&g).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn powmod_matches_naive() {
        let f = k(3);
        let moduli: Vec<Poly> = (1..=2).flat_map(|d| enumerate_polys(&f, d, false)).collect();
        for g in nonzero_polys_below(&f, 3) {
            for m in &moduli {
                for e in 0..=6u64 {
                    let naive = g.pow(e).rem(m).unwrap();
                    assert_eq!(powmod(&g, &BigUint::from(e), m).unwrap(), naive);
                    assert_eq!(powmod_u64(&g, e, m), naive);
                }
            }
        }
    }
}
