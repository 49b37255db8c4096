//! Canonical factorization `f = a P_1^e_1 ... P_t^e_t`, irreducibility, and
//! the Euler totient.

use std::fmt;

use num_bigint::BigUint;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElem};
use crate::poly::{self, gcd_monic, powmod_u64, Poly};

/// Unit times prime powers; primes are monic, distinct, and ordered by
/// (degree, encoding).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: FieldElem,
    pub factors: Vec<(Poly, u32)>,
}

impl Factorization {
    /// Number of distinct prime divisors, `t`.
    pub fn num_primes(&self) -> usize {
        self.factors.len()
    }

    pub fn primes(&self) -> impl Iterator<Item = &Poly> {
        self.factors.iter().map(|(p, _)| p)
    }

    /// Multiply everything back out.
    pub fn expand(&self) -> Poly {
        let field = self.unit.field();
        self.factors.iter().fold(
            Poly::constant(field, self.unit.code()),
            |acc, (prime, e)| &acc * &prime.pow(*e as u64),
        )
    }

    /// `P^e` for the `i`-th factor.
    pub fn prime_power(&self, i: usize) -> Poly {
        let (prime, e) = &self.factors[i];
        prime.pow(*e as u64)
    }

    pub fn to_json(&self) -> FactorizationJson {
        FactorizationJson {
            unit: self.unit.code(),
            factors: self
                .factors
                .iter()
                .map(|(prime, exp)| FactorJson {
                    prime: prime.to_string(),
                    exp: *exp,
                })
                .collect(),
        }
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.unit)?;
        for (prime, e) in &self.factors {
            if *e == 1 {
                write!(f, " * ({prime})")?;
            } else {
                write!(f, " * ({prime})^{e}")?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorizationJson {
    pub unit: u32,
    pub factors: Vec<FactorJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorJson {
    pub prime: String,
    pub exp: u32,
}

/// True iff `f` has no nonconstant proper divisor.
///
/// Uses `gcd(X^{q^i} - X, f) = 1` for `1 <= i <= deg f / 2`.
pub fn is_irreducible(f: &Poly) -> Result<bool> {
    let d = match f.deg() {
        None | Some(0) => return Err(Error::ConstantInput),
        Some(d) => d,
    };
    if d == 1 {
        return Ok(true);
    }
    let f = f.monic();
    let field = f.field();
    let x = Poly::x(field);
    let mut frob = x.rem_unchecked(&f);
    for _ in 1..=d / 2 {
        frob = powmod_u64(&frob, field.q() as u64, &f);
        if !gcd_monic(&(&frob - &x), &f)?.is_one() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn primes_of_degree(field: &FieldCtx, degree: usize) -> Vec<Poly> {
    let cached = field.cached_primes(degree, || {
        poly::polys_of_degree(field, degree, true)
            .filter(|g| is_irreducible(g).unwrap_or(false))
            .map(|g| g.coeffs().to_vec())
            .collect()
    });
    cached
        .iter()
        .map(|c| Poly::from_raw(field, c.clone()))
        .collect()
}

/// Monic irreducibles of degree `1..=max_degree`, in (degree, encoding) order.
pub fn enumerate_primes(field: &FieldCtx, max_degree: usize) -> Vec<Poly> {
    (1..=max_degree)
        .flat_map(|d| primes_of_degree(field, d))
        .collect()
}

/// Deterministic trial division over the enumerated primes.
pub fn factor(f: &Poly) -> Result<Factorization> {
    let lc = match f.deg() {
        None | Some(0) => return Err(Error::ConstantInput),
        Some(_) => f.leading_code().unwrap(),
    };
    let field = f.field();
    let unit = FieldElem::from_code(field, lc);
    let mut rest = f.monic();
    let mut factors = Vec::new();
    let mut degree = 1;
    // Once no prime of degree <= deg(rest)/2 divides rest, rest is prime.
    while 2 * degree <= rest.deg().unwrap_or(0) {
        for prime in primes_of_degree(field, degree) {
            let mut e = 0;
            while let Some(quot) = rest.div_exact(&prime) {
                rest = quot;
                e += 1;
            }
            if e > 0 {
                factors.push((prime, e));
            }
        }
        degree += 1;
    }
    if rest.deg().unwrap_or(0) >= 1 {
        factors.push((rest, 1));
    }
    Ok(Factorization { unit, factors })
}

/// Euler totient from a factorization: `prod q^{(e-1) deg P} (q^{deg P} - 1)`.
pub fn phi_of(fac: &Factorization) -> BigUint {
    let q = BigUint::from(fac.unit.field().q());
    fac.factors
        .iter()
        .map(|(prime, e)| {
            let d = prime.deg().unwrap() as u32;
            q.pow((e - 1) * d) * (q.pow(d) - 1u32)
        })
        .product()
}

/// Euler totient `Phi(f) = |(A/fA)^*|` for nonconstant `f`.
pub fn phi(f: &Poly) -> Result<BigUint> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    Ok(phi_of(&factor(f)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::build_field;
    use crate::poly::{enumerate_polys, nonzero_polys_below, parse_poly};

    fn k(p: u64) -> FieldCtx {
        build_field(p, 1, None).unwrap()
    }

    fn pp(field: &FieldCtx, s: &str) -> Poly {
        parse_poly(s, field).unwrap()
    }

    #[test]
    fn irreducibility_examples() {
        assert!(is_irreducible(&pp(&k(3), "X^2+1")).unwrap());
        assert!(!is_irreducible(&pp(&k(5), "X^2+1")).unwrap());
        assert!(is_irreducible(&pp(&k(7), "X")).unwrap());
        assert_eq!(is_irreducible(&pp(&k(3), "2")).unwrap_err(), Error::ConstantInput);
        assert_eq!(is_irreducible(&pp(&k(3), "0")).unwrap_err(), Error::ConstantInput);
    }

    #[test]
    fn prime_enumeration_examples() {
        let text = |v: Vec<Poly>| v.iter().map(Poly::to_string).collect::<Vec<_>>();
        assert_eq!(text(enumerate_primes(&k(2), 2)), ["X", "X+1", "X^2+X+1"]);
        assert_eq!(text(enumerate_primes(&k(3), 1)), ["X", "X+1", "X+2"]);
        let f2_deg3 = enumerate_primes(&k(2), 3);
        assert_eq!(f2_deg3.len(), 5);
        assert_eq!(text(f2_deg3[3..].to_vec()), ["X^3+X+1", "X^3+X^2+1"]);
    }

    #[test]
    fn factor_examples() {
        let f3 = k(3);
        let fac = factor(&pp(&f3, "2*X^2+2*X")).unwrap();
        assert_eq!(fac.unit.code(), 2);
        assert_eq!(fac.factors, vec![(pp(&f3, "X"), 1), (pp(&f3, "X+1"), 1)]);

        let fac = factor(&pp(&f3, "X^3+2*X+2")).unwrap();
        assert_eq!(fac.unit.code(), 1);
        assert_eq!(fac.factors, vec![(pp(&f3, "X^3+2*X+2"), 1)]);

        let f2 = k(2);
        let fac = factor(&pp(&f2, "X^2")).unwrap();
        assert_eq!(fac.factors, vec![(pp(&f2, "X"), 2)]);

        assert_eq!(factor(&pp(&f3, "1")).unwrap_err(), Error::ConstantInput);
    }

    #[test]
    fn factorization_json_shape() {
        let f3 = k(3);
        let fac = factor(&pp(&f3, "2*X^3+X^2")).unwrap();
        let json = serde_json::to_string(&fac.to_json()).unwrap();
        assert_eq!(
            json,
            r#"{"unit":2,"factors":[{"prime":"X","exp":2},{"prime":"X+2","exp":1}]}"#
        );
    }

    #[test]
    fn phi_examples() {
        let f3 = k(3);
        assert_eq!(phi(&pp(&f3, "X")).unwrap(), BigUint::from(2u32));
        assert_eq!(phi(&pp(&f3, "X^2")).unwrap(), BigUint::from(6u32));
        assert_eq!(phi(&pp(&f3, "X^2+X")).unwrap(), BigUint::from(4u32));
        assert_eq!(phi(&pp(&f3, "0")).unwrap_err(), Error::ZeroPolynomial);
        assert_eq!(phi(&pp(&f3, "2")).unwrap_err(), Error::ConstantInput);
    }

    /// Trial division by every monic polynomial of degree <= deg f / 2.
    fn irreducible_by_trial(f: &Poly) -> bool {
        let d = f.deg().unwrap();
        (1..=d / 2).all(|m| {
            enumerate_polys(f.field(), m, true)
                .iter()
                .all(|g| !f.rem(g).unwrap().is_zero())
        })
    }

    #[test]
    fn exhaustive_factorization_properties() {
        for p in [2u64, 3, 5] {
            let field = k(p);
            let max = if p == 5 { 3 } else { 4 };
            let primes = enumerate_primes(&field, 4);
            for d in 1..=max {
                for f in enumerate_polys(&field, d, false) {
                    let fac = factor(&f).unwrap();
                    assert_eq!(fac.expand(), f);
                    for w in fac.factors.windows(2) {
                        assert!(w[0].0 < w[1].0);
                    }
                    for (prime, _) in &fac.factors {
                        assert!(prime.is_monic());
                        assert!(is_irreducible(prime).unwrap());
                    }
                    if f.is_monic() {
                        let by_trial = irreducible_by_trial(&f);
                        assert_eq!(is_irreducible(&f).unwrap(), by_trial, "{f}");
                        assert_eq!(primes.contains(&f), by_trial, "{f}");
                    }
                }
            }
        }
    }

    #[test]
    fn phi_matches_brute_count() {
        for p in [2u64, 3, 5] {
            let field = k(p);
            let max = if p == 5 { 3 } else { 4 };
            for d in 1..=max {
                for f in enumerate_polys(&field, d, true) {
                    let count = nonzero_polys_below(&field, d)
                        .filter(|g| gcd_monic(g, &f).unwrap().is_one())
                        .count();
                    assert_eq!(phi(&f).unwrap(), BigUint::from(count), "{f}");
                }
            }
        }
    }

    #[test]
    fn phi_multiplicative_on_coprime_pairs() {
        let field = k(3);
        let small: Vec<Poly> = (1..=2).flat_map(|d| enumerate_polys(&field, d, true)).collect();
        for f in &small {
            for g in &small {
                if gcd_monic(f, g).unwrap().is_one() {
                    let fg = f * g;
                    assert_eq!(phi(&fg).unwrap(), phi(f).unwrap() * phi(g).unwrap());
                }
            }
        }
    }

    #[test]
    fn extension_field_factoring() {
        let f4 = build_field(2, 2, None).unwrap();
        for f in enumerate_polys(&f4, 3, false) {
            assert_eq!(factor(&f).unwrap().expand(), f);
        }
        // X^2 + X + 1 splits over F_4 but not over F_2.
        assert!(!is_irreducible(&pp(&f4, "X^2+X+1")).unwrap());
    }
}
