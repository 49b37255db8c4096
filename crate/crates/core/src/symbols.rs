//! Legendre and Kronecker symbols over `F_q[X]`, the reciprocity law as a
//! checkable relation, and the class number `h(-P)` as a character sum.

use std::fmt;
use std::ops::Mul;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::factorize::{factor, is_irreducible};
use crate::poly::{gcd_monic, monic_polys_below, powmod, Poly};

/// A quadratic symbol value, `+1` or `-1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SymbolValue {
    Plus,
    Minus,
}

impl SymbolValue {
    pub fn value(self) -> i32 {
        match self {
            SymbolValue::Plus => 1,
            SymbolValue::Minus => -1,
        }
    }

    /// `(-1)^e`.
    pub fn from_parity(e: u64) -> Self {
        if e % 2 == 0 {
            SymbolValue::Plus
        } else {
            SymbolValue::Minus
        }
    }

    pub fn pow(self, e: u32) -> Self {
        match self {
            SymbolValue::Minus if e % 2 == 1 => SymbolValue::Minus,
            _ => SymbolValue::Plus,
        }
    }
}

impl Mul for SymbolValue {
    type Output = SymbolValue;

    fn mul(self, rhs: SymbolValue) -> SymbolValue {
        if self == rhs {
            SymbolValue::Plus
        } else {
            SymbolValue::Minus
        }
    }
}

impl fmt::Display for SymbolValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

impl Serialize for SymbolValue {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_i32(self.value())
    }
}

fn require_odd(g: &Poly) -> Result<()> {
    if g.field().is_odd() {
        Ok(())
    } else {
        Err(Error::EvenCharacteristic)
    }
}

fn require_prime(prime: &Poly) -> Result<()> {
    if prime.is_constant() || !prime.is_monic() || !is_irreducible(prime)? {
        return Err(Error::NotPrimePoly);
    }
    Ok(())
}

/// `g^{(|P|-1)/2} mod P` mapped to `±1`. Preconditions are the caller's.
fn euler_criterion(g: &Poly, prime: &Poly, half: &BigUint) -> Result<SymbolValue> {
    let r = powmod(g, half, prime)?;
    if r.is_one() {
        Ok(SymbolValue::Plus)
    } else if r.is_minus_one() {
        Ok(SymbolValue::Minus)
    } else {
        Err(Error::InternalNonUnit)
    }
}

fn half_norm_minus_one(prime: &Poly) -> BigUint {
    (prime.norm() - 1u32) >> 1
}

/// Legendre symbol `(g / P)` for a prime polynomial `P`.
pub fn legendre(g: &Poly, prime: &Poly) -> Result<SymbolValue> {
    require_odd(g)?;
    require_prime(prime)?;
    if g.is_zero() || !gcd_monic(g, prime)?.is_one() {
        return Err(Error::NotCoprime);
    }
    euler_criterion(g, prime, &half_norm_minus_one(prime))
}

/// Kronecker symbol `(g / f) = prod (g / P_j)^{e_j}` for nonconstant `f`.
pub fn kronecker(g: &Poly, f: &Poly) -> Result<SymbolValue> {
    require_odd(g)?;
    if f.is_constant() {
        return Err(Error::ConstantInput);
    }
    if g.is_zero() || !gcd_monic(g, f)?.is_one() {
        return Err(Error::NotCoprime);
    }
    let fac = factor(f)?;
    let mut acc = SymbolValue::Plus;
    for (prime, e) in &fac.factors {
        if e % 2 == 1 {
            acc = acc * euler_criterion(g, prime, &half_norm_minus_one(prime))?;
        }
    }
    Ok(acc)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ReciprocityCheck {
    pub lhs: SymbolValue,
    pub rhs: SymbolValue,
    pub holds: bool,
}

/// Evaluate both sides of `(g/f) = (-1)^{(q-1)/2 deg f deg g} (f/g)`.
pub fn reciprocity_check(f: &Poly, g: &Poly) -> Result<ReciprocityCheck> {
    require_odd(f)?;
    if f.is_constant() || g.is_constant() {
        return Err(Error::ConstantInput);
    }
    if !f.is_monic() || !g.is_monic() {
        return Err(Error::NotMonic);
    }
    if !gcd_monic(f, g)?.is_one() {
        return Err(Error::NotCoprime);
    }
    let q = f.field().q() as u64;
    let exponent = (q - 1) / 2 * f.deg().unwrap() as u64 * g.deg().unwrap() as u64;
    let lhs = kronecker(g, f)?;
    let rhs = SymbolValue::from_parity(exponent) * kronecker(f, g)?;
    Ok(ReciprocityCheck {
        lhs,
        rhs,
        holds: lhs == rhs,
    })
}

fn require_class_number_input(prime: &Poly) -> Result<()> {
    require_odd(prime)?;
    require_prime(prime)?;
    if prime.deg().unwrap() % 2 == 0 {
        return Err(Error::EvenDegree);
    }
    Ok(())
}

/// Number of monic polynomials of degree `< deg P`: `1 + q + ... + q^{d-1}`.
pub fn monic_total(prime: &Poly) -> BigUint {
    let q = BigUint::from(prime.field().q());
    let d = prime.deg().unwrap_or(0) as u32;
    (0..d).map(|i| q.pow(i)).sum()
}

/// `h(-P) = sum over monic g, deg g < deg P, of (g / P)`, for a prime `P` of
/// odd degree.
pub fn class_number(prime: &Poly) -> Result<u64> {
    require_class_number_input(prime)?;
    let half = half_norm_minus_one(prime);
    let mut sum: i64 = 0;
    for g in monic_polys_below(prime.field(), prime.deg().unwrap()) {
        sum += euler_criterion(&g, prime, &half)?.value() as i64;
    }
    if sum <= 0 {
        return Err(Error::Internal(format!("nonpositive class number {sum} for {prime}")));
    }
    Ok(sum as u64)
}

/// Count monic quadratic nonresidues of degree `< deg P` directly.
pub fn count_monic_nonresidues(prime: &Poly) -> Result<u64> {
    require_class_number_input(prime)?;
    let half = half_norm_minus_one(prime);
    let mut count = 0;
    for g in monic_polys_below(prime.field(), prime.deg().unwrap()) {
        if euler_criterion(&g, prime, &half)? == SymbolValue::Minus {
            count += 1;
        }
    }
    Ok(count)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassNumberReport {
    pub h: u64,
    #[serde(serialize_with = "as_integer")]
    pub monic_total: BigUint,
    #[serde(serialize_with = "as_integer")]
    pub nonresidues: BigUint,
}

/// Plain JSON integer where it fits, decimal string otherwise.
fn as_integer<S: serde::Serializer>(n: &BigUint, ser: S) -> std::result::Result<S::Ok, S::Error> {
    match n.to_u64() {
        Some(v) => ser.serialize_u64(v),
        None => ser.serialize_str(&n.to_string()),
    }
}

/// `h(-P)` together with the monic count and `N = (total - h) / 2`.
pub fn class_number_report(prime: &Poly) -> Result<ClassNumberReport> {
    let h = class_number(prime)?;
    let total = monic_total(prime);
    let nonresidues = (&total - h) >> 1;
    Ok(ClassNumberReport {
        h,
        monic_total: total,
        nonresidues,
    })
}
