//! Gauss factorials `G(f)`, `G(n, f)` and the half products `G(f, S)`.
//!
//! Every quantity exists in two forms: a brute-force product over the
//! defining index set, reduced modulo `f` after each factor, and a closed-form
//! prediction computed only from the factorization of `f`, `q mod 4`, `δ(S)`,
//! class numbers and residue symbols. The verification layer pairs the two.

use std::fmt;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::factorize::{factor, phi_of, Factorization};
use crate::field::{FieldCtx, FieldElem};
use crate::poly::{
    is_coprime, monic_polys_below, nonzero_polys_below, polys_of_degree, powmod, powmod_u64, Poly,
};
use crate::symbols::{class_number, legendre, SymbolValue};

fn require_nonconstant(f: &Poly) -> Result<usize> {
    match f.deg() {
        None => Err(Error::ZeroPolynomial),
        Some(0) => Err(Error::ConstantInput),
        Some(d) => Ok(d),
    }
}

fn require_odd(field: &FieldCtx) -> Result<()> {
    if field.is_odd() {
        Ok(())
    } else {
        Err(Error::EvenCharacteristic)
    }
}

/// Product of the members of `items` coprime to `f`, reduced mod `f`.
fn coprime_product(f: &Poly, items: impl Iterator<Item = Poly>) -> Poly {
    let mut acc = Poly::one(f.field()).rem_unchecked(f);
    for g in items {
        let g = g.rem_unchecked(f);
        if is_coprime(&g, f) {
            acc = acc.mulmod(&g, f);
        }
    }
    acc
}

/// `G(f)`: product of all nonzero `g` with `deg g < deg f` and `gcd(g, f) = 1`,
/// modulo `f`. Constant `f` gives `1`.
pub fn gauss_factorial(f: &Poly) -> Poly {
    match f.deg() {
        None | Some(0) => Poly::one(f.field()),
        Some(d) => coprime_product(f, nonzero_polys_below(f.field(), d)),
    }
}

/// `G(n, f)`: the same product over `deg g <= n`.
pub fn gauss_factorial_upto(n: usize, f: &Poly) -> Result<Poly> {
    require_nonconstant(f)?;
    Ok(coprime_product(f, nonzero_polys_below(f.field(), n + 1)))
}

/// Closed form of `G(f) mod f`.
///
/// Odd characteristic: `-1` with one prime divisor, else `1`. Characteristic
/// two: `f/P_1 + 1` when `q = 2`, some degree-1 prime `P_1` has exponent 2 or
/// 3 and every other exponent is 1, else `1`.
pub fn predict_g(f: &Poly) -> Result<Poly> {
    require_nonconstant(f)?;
    let fac = factor(f)?;
    predict_g_from(f, &fac)
}

fn predict_g_from(f: &Poly, fac: &Factorization) -> Result<Poly> {
    let field = f.field();
    if field.is_odd() {
        let value = if fac.num_primes() == 1 {
            Poly::minus_one(field)
        } else {
            Poly::one(field)
        };
        return Ok(value.rem_unchecked(f));
    }
    if field.q() == 2 {
        if let Some(i) = two_torsion_prime(fac) {
            let (prime, _) = &fac.factors[i];
            let cofactor = f
                .div_exact(prime)
                .ok_or_else(|| Error::Internal("prime does not divide f".into()))?;
            return Ok((&cofactor + &Poly::one(field)).rem_unchecked(f));
        }
    }
    Ok(Poly::one(field).rem_unchecked(f))
}

/// Index of the degree-1 prime with exponent in `{2, 3}` when every other
/// exponent is 1.
fn two_torsion_prime(fac: &Factorization) -> Option<usize> {
    let candidates: Vec<usize> = fac
        .factors
        .iter()
        .enumerate()
        .filter(|(_, (prime, e))| prime.deg() == Some(1) && (2..=3).contains(e))
        .map(|(i, _)| i)
        .collect();
    match candidates.as_slice() {
        [i] if fac
            .factors
            .iter()
            .enumerate()
            .all(|(j, (_, e))| j == *i || *e == 1) =>
        {
            Some(*i)
        }
        _ => None,
    }
}

/// Closed form of `G(n, f) mod f` for `n >= deg f`.
pub fn predict_g_upto(n: usize, f: &Poly) -> Result<Poly> {
    let deg = require_nonconstant(f)?;
    if n < deg {
        return Err(Error::BadRange { n, deg });
    }
    let field = f.field();
    let fac = factor(f)?;
    let value = if field.is_odd() && fac.num_primes() == 1 {
        Poly::minus_one(field)
    } else {
        Poly::one(field)
    };
    Ok(value.rem_unchecked(f))
}

/// A choice of exactly one element from each pair `{α, -α}` of `F_q^*`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct HalfSystem {
    field: FieldCtx,
    members: Vec<u32>,
}

impl fmt::Debug for HalfSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HalfSystem{{{self}}}")
    }
}

impl fmt::Display for HalfSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let codes: Vec<String> = self.members.iter().map(u32::to_string).collect();
        f.write_str(&codes.join(","))
    }
}

impl HalfSystem {
    pub fn new(field: &FieldCtx, codes: &[u32]) -> Result<Self> {
        require_odd(field)?;
        let mut members = codes.to_vec();
        members.sort_unstable();
        let half = ((field.q() - 1) / 2) as usize;
        if members.len() != half {
            return Err(Error::InvalidHalfSystem(format!(
                "expected {half} members, got {}",
                members.len()
            )));
        }
        if let Some(&c) = members.iter().find(|&&c| c == 0 || c >= field.q()) {
            return Err(Error::InvalidHalfSystem(format!("{c} is not in F_q^*")));
        }
        for &c in &members {
            if members.binary_search(&field.neg(c)).is_ok() {
                return Err(Error::InvalidHalfSystem(format!(
                    "{c} and its negative {} are both present",
                    field.neg(c)
                )));
            }
        }
        Ok(HalfSystem {
            field: field.clone(),
            members,
        })
    }

    /// Parse comma-joined element codes.
    pub fn parse(field: &FieldCtx, text: &str) -> Result<Self> {
        let codes = text
            .split(',')
            .map(|tok| {
                tok.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::InvalidHalfSystem(format!("bad element code {tok:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(field, &codes)
    }

    pub fn field(&self) -> &FieldCtx {
        &self.field
    }

    pub fn members(&self) -> &[u32] {
        &self.members
    }

    pub fn contains(&self, code: u32) -> bool {
        self.members.binary_search(&code).is_ok()
    }

    fn mask(&self) -> Vec<bool> {
        let mut mask = vec![false; self.field.q() as usize];
        for &c in &self.members {
            mask[c as usize] = true;
        }
        mask
    }
}

const MAX_HALF_SYSTEM_BITS: u32 = 20;

/// All `2^{(q-1)/2}` half-systems, ordered lexicographically by sorted members.
pub fn enumerate_half_systems(field: &FieldCtx) -> Result<Vec<HalfSystem>> {
    require_odd(field)?;
    let pairs: Vec<(u32, u32)> = (1..field.q())
        .filter(|&a| a < field.neg(a))
        .map(|a| (a, field.neg(a)))
        .collect();
    let bits = pairs.len() as u32;
    if bits > MAX_HALF_SYSTEM_BITS {
        return Err(Error::TooManyHalfSystems(bits));
    }
    let mut systems: Vec<HalfSystem> = (0u64..1 << bits)
        .map(|choice| {
            let mut members: Vec<u32> = pairs
                .iter()
                .enumerate()
                .map(|(i, &(a, b))| if choice >> i & 1 == 0 { a } else { b })
                .collect();
            members.sort_unstable();
            HalfSystem {
                field: field.clone(),
                members,
            }
        })
        .collect();
    systems.sort_by(|x, y| x.members.cmp(&y.members));
    Ok(systems)
}

/// `δ(S)`: the product of the members of `S`.
pub fn delta(s: &HalfSystem) -> FieldElem {
    let field = &s.field;
    let code = s.members.iter().fold(1, |acc, &c| field.mul(acc, c));
    FieldElem::from_code(field, code)
}

fn check_same_field(f: &Poly, s: &HalfSystem) -> Result<()> {
    if f.field() == s.field() {
        Ok(())
    } else {
        Err(Error::CtxMismatch)
    }
}

/// `M(f)`: the product of the monic residues coprime to `f`, raised to
/// `(q-1)/2`, modulo `f`.
pub fn big_m(f: &Poly) -> Result<Poly> {
    require_odd(f.field())?;
    let d = require_nonconstant(f)?;
    let product = coprime_product(f, monic_polys_below(f.field(), d));
    Ok(powmod_u64(&product, ((f.field().q() - 1) / 2) as u64, f))
}

/// `G(f, S)` by brute force over the coprime residues whose sign lies in `S`.
pub fn gauss_half(f: &Poly, s: &HalfSystem) -> Result<Poly> {
    require_odd(f.field())?;
    let d = require_nonconstant(f)?;
    check_same_field(f, s)?;
    let mask = s.mask();
    let signed = nonzero_polys_below(f.field(), d)
        .filter(|g| mask[g.leading_code().unwrap() as usize]);
    Ok(coprime_product(f, signed))
}

/// `G(f, S)` through `δ(S)^{Φ(f)/(q-1)} M(f)`.
pub fn gauss_half_via_m(f: &Poly, s: &HalfSystem) -> Result<Poly> {
    require_odd(f.field())?;
    require_nonconstant(f)?;
    check_same_field(f, s)?;
    let fac = factor(f)?;
    let exponent = phi_of(&fac) / (f.field().q() - 1);
    let d = delta(s).pow(&exponent);
    Ok(big_m(f)?.scale(d.code()))
}

/// Least `k >= 1` with `g^k ≡ 1 (mod f)`.
pub fn mult_order(g: &Poly, f: &Poly) -> Result<u64> {
    require_nonconstant(f)?;
    let base = g.rem_unchecked(f);
    if base.is_zero() || !is_coprime(&base, f) {
        return Err(Error::NotCoprime);
    }
    let cap = phi_of(&factor(f)?).to_u64().unwrap_or(u64::MAX);
    let mut x = base.clone();
    let mut k = 1u64;
    while !x.is_one() {
        if k >= cap {
            return Err(Error::Internal(format!("order of {g} mod {f} exceeds Φ(f)")));
        }
        x = x.mulmod(&base, f);
        k += 1;
    }
    Ok(k)
}

/// Which branch of the order classification applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Clause {
    One,
    TwoA,
    TwoB,
    TwoC,
    TwoD,
    TwoE,
    Three,
}

impl Clause {
    pub fn tag(self) -> &'static str {
        match self {
            Clause::One => "1",
            Clause::TwoA => "2a",
            Clause::TwoB => "2b",
            Clause::TwoC => "2c",
            Clause::TwoD => "2d",
            Clause::TwoE => "2e",
            Clause::Three => "3",
        }
    }

    pub fn order(self) -> u32 {
        match self {
            Clause::One => 4,
            Clause::Three => 1,
            _ => 2,
        }
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl Serialize for Clause {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.tag())
    }
}

/// Quantities the classification consulted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witnesses {
    pub t: usize,
    pub q_mod4: u32,
    /// Degrees of the prime divisors in canonical order.
    pub degrees: Vec<usize>,
    pub e1: u32,
    pub delta: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p1_over_p2: Option<SymbolValue>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrderClassification {
    pub order: u32,
    pub clause: Clause,
    pub witnesses: Witnesses,
}

/// `(-1)^{e + (h-3)/2}` for odd `h`.
fn gpe_sign(e: u32, h: u64) -> SymbolValue {
    let exponent = e as i64 + (h as i64 - 3) / 2;
    SymbolValue::from_parity(exponent.rem_euclid(2) as u64)
}

fn symbol_as_poly(field: &FieldCtx, value: SymbolValue) -> Poly {
    match value {
        SymbolValue::Plus => Poly::one(field),
        SymbolValue::Minus => Poly::minus_one(field),
    }
}

/// `δ(S)` as `±1`; only meaningful when `q ≡ 3 (mod 4)`.
fn delta_sign(s: &HalfSystem) -> Result<SymbolValue> {
    let d = delta(s);
    if d.is_one() {
        Ok(SymbolValue::Plus)
    } else if d.code() == s.field.minus_one() {
        Ok(SymbolValue::Minus)
    } else {
        Err(Error::Internal(format!("δ(S) = {d} is not ±1")))
    }
}

/// The multiplicative order of `G(f, S)` modulo `f`, decided from the
/// factorization of `f` alone.
pub fn classify_order(f: &Poly, s: &HalfSystem) -> Result<OrderClassification> {
    let field = f.field();
    require_odd(field)?;
    require_nonconstant(f)?;
    check_same_field(f, s)?;
    let fac = factor(f)?;
    let q_mod4 = field.q_mod4();
    let degrees: Vec<usize> = fac.primes().map(|p| p.deg().unwrap()).collect();
    let mut witnesses = Witnesses {
        t: fac.num_primes(),
        q_mod4,
        degrees: degrees.clone(),
        e1: fac.factors[0].1,
        delta: delta(s).code(),
        h: None,
        p1_over_p2: None,
    };
    let clause = match fac.num_primes() {
        1 => {
            if q_mod4 == 1 || degrees[0] % 2 == 0 {
                Clause::One
            } else {
                let h = class_number(&fac.factors[0].0)?;
                witnesses.h = Some(h);
                let odd_exponent = gpe_sign(fac.factors[0].1, h) == SymbolValue::Minus;
                match (delta_sign(s)?, odd_exponent) {
                    (SymbolValue::Plus, true) => Clause::TwoA,
                    (SymbolValue::Minus, false) => Clause::TwoB,
                    _ => Clause::Three,
                }
            }
        }
        2 => {
            let both_even = degrees.iter().all(|d| d % 2 == 0);
            if q_mod4 == 1 || both_even {
                let symbol = legendre(&fac.factors[0].0, &fac.factors[1].0)?;
                witnesses.p1_over_p2 = Some(symbol);
                match (symbol, q_mod4 == 1) {
                    (SymbolValue::Minus, true) => Clause::TwoC,
                    (SymbolValue::Minus, false) => Clause::TwoD,
                    _ => Clause::Three,
                }
            } else {
                Clause::TwoE
            }
        }
        _ => Clause::Three,
    };
    Ok(OrderClassification {
        order: clause.order(),
        clause,
        witnesses,
    })
}

/// A predicted value of `G(f, S) mod f`, or the constraint it must satisfy
/// where no closed form exists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HalfPrediction {
    Residue(Poly),
    /// `G(f, S)^2 ≡ -1`.
    SquareIsMinusOne,
    /// `G(f, S)^2 ≡ 1` and `G(f, S) ≢ ±1`.
    NotPlusMinusOneSquareOne,
}

impl HalfPrediction {
    pub fn is_satisfied_by(&self, value: &Poly, f: &Poly) -> bool {
        let value = value.rem_unchecked(f);
        match self {
            HalfPrediction::Residue(r) => *r == value,
            HalfPrediction::SquareIsMinusOne => {
                value.mulmod(&value, f) == Poly::minus_one(f.field()).rem_unchecked(f)
            }
            HalfPrediction::NotPlusMinusOneSquareOne => {
                let one = Poly::one(f.field()).rem_unchecked(f);
                let minus_one = Poly::minus_one(f.field()).rem_unchecked(f);
                value.mulmod(&value, f) == one && value != one && value != minus_one
            }
        }
    }
}

impl fmt::Display for HalfPrediction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HalfPrediction::Residue(r) => write!(f, "{r}"),
            HalfPrediction::SquareIsMinusOne => f.write_str("SQUARE_IS_MINUS_ONE"),
            HalfPrediction::NotPlusMinusOneSquareOne => {
                f.write_str("NOT_PLUS_MINUS_ONE_SQUARE_ONE")
            }
        }
    }
}

/// `G(f, S) ≡ (-1)^{e + (h(-P)-3)/2} δ(S)` for `f = aP^e`, `q ≡ 3 (mod 4)`,
/// `deg P` odd.
pub fn predict_prime_power_value(f: &Poly, s: &HalfSystem) -> Result<Poly> {
    let field = f.field();
    require_odd(field)?;
    require_nonconstant(f)?;
    check_same_field(f, s)?;
    let fac = factor(f)?;
    prime_power_value(f, s, &fac)
}

fn prime_power_value(f: &Poly, s: &HalfSystem, fac: &Factorization) -> Result<Poly> {
    let field = f.field();
    if fac.num_primes() != 1 || field.q_mod4() != 3 || fac.factors[0].0.deg().unwrap() % 2 == 0 {
        return Err(Error::NotApplicable(
            "needs f = aP^e with q ≡ 3 (mod 4) and deg P odd".into(),
        ));
    }
    let (prime, e) = &fac.factors[0];
    let h = class_number(prime)?;
    let value = gpe_sign(*e, h) * delta_sign(s)?;
    Ok(symbol_as_poly(field, value).rem_unchecked(f))
}

/// Two prime divisors: `(P_1/P_2)` when `q ≡ 1 (mod 4)` or both degrees are
/// even, otherwise the `≢ ±1` constraint.
pub fn predict_two_prime_value(f: &Poly) -> Result<HalfPrediction> {
    require_odd(f.field())?;
    require_nonconstant(f)?;
    let fac = factor(f)?;
    two_prime_value(f, &fac)
}

fn two_prime_value(f: &Poly, fac: &Factorization) -> Result<HalfPrediction> {
    let field = f.field();
    if fac.num_primes() != 2 {
        return Err(Error::NotApplicable("needs exactly two prime divisors".into()));
    }
    let (p1, p2) = (&fac.factors[0].0, &fac.factors[1].0);
    let both_even = p1.deg().unwrap() % 2 == 0 && p2.deg().unwrap() % 2 == 0;
    if field.q_mod4() == 1 || both_even {
        let symbol = legendre(p1, p2)?;
        Ok(HalfPrediction::Residue(symbol_as_poly(field, symbol).rem_unchecked(f)))
    } else {
        Ok(HalfPrediction::NotPlusMinusOneSquareOne)
    }
}

/// Three or more prime divisors: `G(f, S) ≡ 1`.
pub fn predict_many_prime_value(f: &Poly) -> Result<Poly> {
    require_odd(f.field())?;
    require_nonconstant(f)?;
    let fac = factor(f)?;
    if fac.num_primes() < 3 {
        return Err(Error::NotApplicable("needs at least three prime divisors".into()));
    }
    Ok(Poly::one(f.field()).rem_unchecked(f))
}

/// Predicted `G(f, S) mod f` across all cases.
pub fn predict_half_value(f: &Poly, s: &HalfSystem) -> Result<HalfPrediction> {
    let field = f.field();
    require_odd(field)?;
    require_nonconstant(f)?;
    check_same_field(f, s)?;
    let fac = factor(f)?;
    match fac.num_primes() {
        1 if field.q_mod4() == 3 && fac.factors[0].0.deg().unwrap() % 2 == 1 => {
            Ok(HalfPrediction::Residue(prime_power_value(f, s, &fac)?))
        }
        1 => Ok(HalfPrediction::SquareIsMinusOne),
        2 => two_prime_value(f, &fac),
        _ => Ok(HalfPrediction::Residue(Poly::one(field).rem_unchecked(f))),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LiftOutcome {
    Plus,
    Minus,
    NotPlusMinusOne,
}

/// Given `x^2 ≡ 1 (mod g^e)`, decide `x ≡ ±1 (mod g^e)` by looking at `x mod g`.
pub fn lift_sign(x: &Poly, g: &Poly, e: u32) -> Result<LiftOutcome> {
    require_odd(g.field())?;
    require_nonconstant(g)?;
    if e == 0 {
        return Err(Error::Internal("exponent must be positive".into()));
    }
    let ge = g.pow(e as u64);
    if !x.mulmod(x, &ge).is_one() {
        return Err(Error::PreconditionSquareNotOne);
    }
    let r = x.rem_unchecked(g);
    Ok(if r.is_one() {
        LiftOutcome::Plus
    } else if r.is_minus_one() {
        LiftOutcome::Minus
    } else {
        LiftOutcome::NotPlusMinusOne
    })
}

/// `i_n`: the number of monic `g` of degree `n` coprime to `f`.
pub fn count_monic_coprime(n: usize, f: &Poly) -> Result<u64> {
    require_nonconstant(f)?;
    Ok(polys_of_degree(f.field(), n, true)
        .filter(|g| is_coprime(&g.rem_unchecked(f), f))
        .count() as u64)
}

/// `G(f)^{q^k} mod f`, the identity behind `G(n, f)` for `n >= deg f`.
pub fn gauss_factorial_lifted(f: &Poly, k: u32) -> Result<Poly> {
    require_nonconstant(f)?;
    let exponent = BigUint::from(f.field().q()).pow(k);
    powmod(&gauss_factorial(f), &exponent, f)
}
