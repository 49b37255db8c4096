//! Finite fields `F_q = F_p[Y]/(m(Y))` with elements encoded as integers.
//!
//! An element `c_0 + c_1 Y + ... + c_{s-1} Y^{s-1}` is stored as the code
//! `c_0 + c_1 p + ... + c_{s-1} p^{s-1}` in `[0, q)`. Codes give canonical
//! ordering and cheap hashing; multiplication goes through log/exp tables
//! built once per field.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;
use std::sync::{Arc, RwLock};

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::factorize;
use crate::poly::Poly;

/// Largest supported field order.
pub const MAX_ORDER: u32 = 1 << 16;

/// Addition tables are only materialized below this order.
const ADD_TABLE_LIMIT: u32 = 256;

type PrimeCache = RwLock<Vec<Option<Arc<Vec<Vec<u32>>>>>>;

struct Inner {
    p: u32,
    s: u32,
    q: u32,
    modulus: Option<Vec<u32>>,
    default_modulus: bool,
    /// `exp[i] = g^i` for a fixed primitive element, doubled in length.
    exp: Vec<u32>,
    log: Vec<u32>,
    neg: Vec<u32>,
    add: Option<Vec<u32>>,
    primes: PrimeCache,
}

/// Immutable, cheaply clonable handle to a finite field.
#[derive(Clone)]
pub struct FieldCtx {
    inner: Arc<Inner>,
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.p == other.inner.p
                && self.inner.s == other.inner.s
                && self.inner.modulus == other.inner.modulus)
    }
}

impl Eq for FieldCtx {}

impl Hash for FieldCtx {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.inner.p.hash(state);
        self.inner.s.hash(state);
        self.inner.modulus.hash(state);
    }
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldCtx({})", self.spec_string())
    }
}

impl fmt::Display for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.spec_string())
    }
}

pub(crate) fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Construct `F_{p^s}`. Without an explicit modulus and `s >= 2` the
/// default modulus from [`find_default_modulus`] is used.
pub fn build_field(p: u64, s: u32, modulus: Option<&[u32]>) -> Result<FieldCtx> {
    if !is_prime_u64(p) {
        return Err(Error::NotPrime(p));
    }
    if s == 0 {
        return Err(Error::ZeroExtensionDegree);
    }
    let q = p
        .checked_pow(s)
        .filter(|&q| q <= MAX_ORDER as u64)
        .ok_or_else(|| Error::FieldTooLarge(format!("{p}^{s}")))?;
    let p = p as u32;

    if s == 1 {
        if let Some(m) = modulus {
            if m.len() != 2 || m[1] != 1 || m[0] >= p {
                return Err(Error::BadModulus(
                    "a prime field modulus must be monic of degree 1".into(),
                ));
            }
        }
        return Ok(FieldCtx::assemble(p, 1, q as u32, None, true));
    }

    let (modulus, default_modulus) = match modulus {
        None => (find_default_modulus(p as u64, s)?, true),
        Some(m) => {
            check_modulus(p, s, m)?;
            let default = find_default_modulus(p as u64, s)?;
            (m.to_vec(), default == m)
        }
    };
    Ok(FieldCtx::assemble(p, s, q as u32, Some(modulus), default_modulus))
}

fn check_modulus(p: u32, s: u32, m: &[u32]) -> Result<()> {
    if m.len() != s as usize + 1 {
        return Err(Error::BadModulus(format!(
            "expected degree {s}, got {} coefficients",
            m.len()
        )));
    }
    if let Some(c) = m.iter().find(|&&c| c >= p) {
        return Err(Error::BadModulus(format!("coefficient {c} not in F_{p}")));
    }
    if m[s as usize] != 1 {
        return Err(Error::BadModulus("modulus is not monic".into()));
    }
    let fp = build_field(p as u64, 1, None)?;
    let poly = Poly::from_codes(&fp, m.to_vec())?;
    if !factorize::is_irreducible(&poly)? {
        return Err(Error::BadModulus("modulus is reducible".into()));
    }
    Ok(())
}

/// The monic irreducible degree-`s` polynomial over `F_p` with the smallest
/// encoding `sum c_i p^i`, constant coefficient first.
pub fn find_default_modulus(p: u64, s: u32) -> Result<Vec<u32>> {
    if !is_prime_u64(p) {
        return Err(Error::NotPrime(p));
    }
    if s < 2 {
        return Err(Error::BadModulus("default modulus needs s >= 2".into()));
    }
    let fp = build_field(p, 1, None)?;
    let span = p
        .checked_pow(s)
        .ok_or_else(|| Error::FieldTooLarge(format!("{p}^{s}")))?;
    for lower in 0..span {
        let mut coeffs = Vec::with_capacity(s as usize + 1);
        let mut rest = lower;
        for _ in 0..s {
            coeffs.push((rest % p) as u32);
            rest /= p;
        }
        coeffs.push(1);
        let poly = Poly::from_codes(&fp, coeffs.clone())?;
        if factorize::is_irreducible(&poly)? {
            return Ok(coeffs);
        }
    }
    Err(Error::Internal(format!(
        "no irreducible polynomial of degree {s} over F_{p}"
    )))
}

impl FieldCtx {
    fn assemble(p: u32, s: u32, q: u32, modulus: Option<Vec<u32>>, default_modulus: bool) -> Self {
        let digits = |mut code: u32| -> Vec<u32> {
            (0..s)
                .map(|_| {
                    let d = code % p;
                    code /= p;
                    d
                })
                .collect()
        };
        let encode = |ds: &[u32]| -> u32 { ds.iter().rev().fold(0, |acc, &d| acc * p + d) };

        let neg: Vec<u32> = (0..q)
            .map(|c| encode(&digits(c).iter().map(|&d| (p - d) % p).collect::<Vec<_>>()))
            .collect();

        let slow_mul = |a: u32, b: u32| -> u32 {
            let (da, db) = (digits(a), digits(b));
            let n = s as usize;
            let mut prod = vec![0u64; 2 * n - 1];
            for (i, &x) in da.iter().enumerate() {
                for (j, &y) in db.iter().enumerate() {
                    prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p as u64;
                }
            }
            if let Some(m) = &modulus {
                for k in (n..prod.len()).rev() {
                    let c = prod[k];
                    if c == 0 {
                        continue;
                    }
                    prod[k] = 0;
                    for (i, &mi) in m.iter().take(n).enumerate() {
                        let sub = c * mi as u64 % p as u64;
                        prod[k - n + i] = (prod[k - n + i] + p as u64 - sub) % p as u64;
                    }
                }
            }
            encode(&prod[..n].iter().map(|&c| c as u32).collect::<Vec<_>>())
        };

        let order = (q - 1) as usize;
        let factors = prime_divisors(order as u64);
        let mut exp = Vec::new();
        for g in 1..q {
            // g^((q-1)/r) != 1 for every prime r | q-1 certifies a generator.
            let is_generator = factors.iter().all(|&r| {
                let mut e = order as u64 / r;
                let (mut base, mut acc) = (g, 1u32);
                while e > 0 {
                    if e & 1 == 1 {
                        acc = slow_mul(acc, base);
                    }
                    base = slow_mul(base, base);
                    e >>= 1;
                }
                acc != 1
            });
            if is_generator {
                exp.reserve(2 * order);
                let mut x = 1u32;
                for _ in 0..order {
                    exp.push(x);
                    x = slow_mul(x, g);
                }
                break;
            }
        }
        let mut log = vec![0u32; q as usize];
        for (i, &x) in exp.iter().enumerate() {
            log[x as usize] = i as u32;
        }
        exp.extend_from_within(..);

        let add = (q <= ADD_TABLE_LIMIT).then(|| {
            let mut t = vec![0u32; (q * q) as usize];
            for a in 0..q {
                let da = digits(a);
                for b in 0..q {
                    let db = digits(b);
                    let sum: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                    t[(a * q + b) as usize] = encode(&sum);
                }
            }
            t
        });

        FieldCtx {
            inner: Arc::new(Inner {
                p,
                s,
                q,
                modulus,
                default_modulus,
                exp,
                log,
                neg,
                add,
                primes: RwLock::new(Vec::new()),
            }),
        }
    }

    /// Parse a field specification such as `p=3`, `p=3,s=2` or
    /// `p=3,s=2,mod=1,0,1`.
    pub fn from_spec(spec: &str) -> Result<Self> {
        let mut p = None;
        let mut s = 1u32;
        let mut modulus: Option<Vec<u32>> = None;
        let mut in_mod = false;
        for raw in spec.split(',') {
            let tok = raw.trim();
            if let Some((key, value)) = tok.split_once('=') {
                in_mod = false;
                let value = value.trim();
                match key.trim() {
                    "p" => {
                        p = Some(value.parse::<u64>().map_err(|_| {
                            Error::FieldSpec(format!("bad characteristic {value:?}"))
                        })?)
                    }
                    "s" => {
                        s = value
                            .parse()
                            .map_err(|_| Error::FieldSpec(format!("bad degree {value:?}")))?
                    }
                    "mod" => {
                        in_mod = true;
                        modulus = Some(vec![parse_code(value)?]);
                    }
                    other => return Err(Error::FieldSpec(format!("unknown key {other:?}"))),
                }
            } else if in_mod {
                modulus.as_mut().unwrap().push(parse_code(tok)?);
            } else {
                return Err(Error::FieldSpec(format!("unexpected token {tok:?}")));
            }
        }
        let p = p.ok_or_else(|| Error::FieldSpec("missing p=<prime>".into()))?;
        build_field(p, s, modulus.as_deref())
    }

    /// Canonical specification string; the modulus is omitted when it is the
    /// default one.
    pub fn spec_string(&self) -> String {
        let inner = &self.inner;
        match &inner.modulus {
            None => format!("p={}", inner.p),
            Some(_) if inner.default_modulus => format!("p={},s={}", inner.p, inner.s),
            Some(m) => {
                let codes: Vec<String> = m.iter().map(u32::to_string).collect();
                format!("p={},s={},mod={}", inner.p, inner.s, codes.join(","))
            }
        }
    }

    pub fn p(&self) -> u32 {
        self.inner.p
    }

    pub fn s(&self) -> u32 {
        self.inner.s
    }

    pub fn q(&self) -> u32 {
        self.inner.q
    }

    /// Defining polynomial of the extension, constant first; `None` for prime fields.
    pub fn modulus(&self) -> Option<&[u32]> {
        self.inner.modulus.as_deref()
    }

    pub fn is_odd(&self) -> bool {
        self.inner.p % 2 == 1
    }

    /// `q mod 4`.
    pub fn q_mod4(&self) -> u32 {
        self.inner.q % 4
    }

    /// Code of `-1`.
    pub fn minus_one(&self) -> u32 {
        self.inner.p - 1
    }

    pub fn elem(&self, code: u64) -> Result<FieldElem> {
        if code >= self.inner.q as u64 {
            return Err(Error::CodeOutOfRange { code, q: self.inner.q });
        }
        Ok(FieldElem {
            field: self.clone(),
            code: code as u32,
        })
    }

    /// Base-`p` digits of a code, lowest first.
    pub fn decode(&self, mut code: u32) -> Vec<u32> {
        (0..self.inner.s)
            .map(|_| {
                let d = code % self.inner.p;
                code /= self.inner.p;
                d
            })
            .collect()
    }

    pub fn encode(&self, digits: &[u32]) -> u32 {
        digits.iter().rev().fold(0, |acc, &d| acc * self.inner.p + d)
    }

    /// All elements (or all nonzero elements) in increasing code order.
    pub fn enumerate_elements(&self, nonzero_only: bool) -> Vec<FieldElem> {
        let start = u32::from(nonzero_only);
        (start..self.inner.q)
            .map(|code| FieldElem {
                field: self.clone(),
                code,
            })
            .collect()
    }

    // Code-level arithmetic. Callers guarantee codes lie in [0, q).

    #[inline]
    pub(crate) fn add(&self, a: u32, b: u32) -> u32 {
        let inner = &self.inner;
        if inner.s == 1 {
            let sum = a + b;
            return if sum >= inner.p { sum - inner.p } else { sum };
        }
        if let Some(t) = &inner.add {
            return t[(a * inner.q + b) as usize];
        }
        let (da, db) = (self.decode(a), self.decode(b));
        let sum: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % inner.p).collect();
        self.encode(&sum)
    }

    #[inline]
    pub(crate) fn neg(&self, a: u32) -> u32 {
        self.inner.neg[a as usize]
    }

    #[inline]
    pub(crate) fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub(crate) fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let inner = &self.inner;
        inner.exp[(inner.log[a as usize] + inner.log[b as usize]) as usize]
    }

    #[inline]
    pub(crate) fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let inner = &self.inner;
        let order = inner.q - 1;
        let l = inner.log[a as usize];
        Some(inner.exp[((order - l) % order) as usize])
    }

    /// `a^e` by square-and-multiply.
    pub(crate) fn pow_u64(&self, a: u32, mut e: u64) -> u32 {
        let (mut base, mut acc) = (a, 1u32);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub(crate) fn pow_big(&self, a: u32, e: &BigUint) -> u32 {
        if a == 0 {
            return u32::from(e.bits() == 0);
        }
        // Nonzero elements have order dividing q - 1.
        let reduced = (e % (self.inner.q - 1)).to_u64().unwrap_or(0);
        self.pow_u64(a, reduced)
    }

    pub(crate) fn cached_primes(
        &self,
        degree: usize,
        compute: impl FnOnce() -> Vec<Vec<u32>>,
    ) -> Arc<Vec<Vec<u32>>> {
        if let Some(Some(hit)) = self.inner.primes.read().unwrap().get(degree) {
            return hit.clone();
        }
        let fresh = Arc::new(compute());
        let mut cache = self.inner.primes.write().unwrap();
        if cache.len() <= degree {
            cache.resize(degree + 1, None);
        }
        cache[degree].get_or_insert_with(|| fresh.clone()).clone()
    }
}

impl FromStr for FieldCtx {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FieldCtx::from_spec(s)
    }
}

fn parse_code(tok: &str) -> Result<u32> {
    tok.trim()
        .parse()
        .map_err(|_| Error::FieldSpec(format!("bad modulus coefficient {tok:?}")))
}

/// An element of `F_q`, carrying its field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldElem {
    field: FieldCtx,
    code: u32,
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.code)
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.code)
    }
}

impl FieldElem {
    pub(crate) fn from_code(field: &FieldCtx, code: u32) -> Self {
        FieldElem {
            field: field.clone(),
            code,
        }
    }

    pub fn code(&self) -> u32 {
        self.code
    }

    pub fn field(&self) -> &FieldCtx {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.code == 0
    }

    pub fn is_one(&self) -> bool {
        self.code == 1
    }

    fn same_field(&self, other: &Self) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::CtxMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(Self::from_code(&self.field, self.field.add(self.code, other.code)))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(Self::from_code(&self.field, self.field.sub(self.code, other.code)))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(Self::from_code(&self.field, self.field.mul(self.code, other.code)))
    }

    pub fn neg(&self) -> Self {
        Self::from_code(&self.field, self.field.neg(self.code))
    }

    pub fn inv(&self) -> Result<Self> {
        let code = self.field.inv(self.code).ok_or(Error::ZeroInverse)?;
        Ok(Self::from_code(&self.field, code))
    }

    pub fn pow(&self, e: &BigUint) -> Self {
        Self::from_code(&self.field, self.field.pow_big(self.code, e))
    }
}
