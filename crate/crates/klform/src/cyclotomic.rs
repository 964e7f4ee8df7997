//! Exact arithmetic in cyclotomic fields Q(zeta_n).
//!
//! Elements are polynomials in zeta_n with rational coefficients, kept fully
//! reduced modulo the n-th cyclotomic polynomial Phi_n, so equality and
//! rationality tests are canonical. Galois automorphisms act by
//! zeta_n -> zeta_n^k for k coprime to n; complex conjugation is k = n - 1.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num::complex::Complex64;
use num::{BigInt, BigRational, One, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type Rat = BigRational;

/// Shorthand for a small rational.
pub fn rat(numer: i64, denom: i64) -> Rat {
    Rat::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from(BigInt::from(n))
}

pub fn rat_to_string(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn rat_from_str(s: &str) -> Result<Rat> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let numer: BigInt = num
        .parse()
        .map_err(|_| Error::InvalidParameter(format!("bad rational {s:?}")))?;
    let denom: BigInt = den
        .parse()
        .map_err(|_| Error::InvalidParameter(format!("bad rational {s:?}")))?;
    if denom.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(Rat::new(numer, denom))
}

pub fn euler_phi(n: u32) -> u32 {
    let mut n = n as u64;
    let mut result = n;
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result as u32
}

fn divisors(n: u32) -> Vec<u32> {
    let mut divs = Vec::new();
    let mut i = 1;
    while i * i <= n {
        if n % i == 0 {
            divs.push(i);
            if i != n / i {
                divs.push(n / i);
            }
        }
        i += 1;
    }
    divs.sort_unstable();
    divs
}

// ---------------------------------------------------------------------------
// Integer polynomial helpers for Phi_n (monic, so division stays integral).
// ---------------------------------------------------------------------------

fn int_poly_trim(p: &mut Vec<BigInt>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

/// Exact quotient of integer polynomials; `b` must be monic and divide `a`.
fn int_poly_exact_div(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut rem: Vec<BigInt> = a.to_vec();
    let db = b.len() - 1;
    assert!(b[db].is_one(), "divisor must be monic");
    if rem.len() < b.len() {
        int_poly_trim(&mut rem);
        assert!(rem.is_empty(), "division is not exact");
        return vec![];
    }
    let mut quot = vec![BigInt::zero(); rem.len() - db];
    for i in (db..rem.len()).rev() {
        let c = rem[i].clone();
        if c.is_zero() {
            continue;
        }
        quot[i - db] = c.clone();
        for (j, bj) in b.iter().enumerate() {
            let idx = i - db + j;
            rem[idx] = &rem[idx] - &c * bj;
        }
    }
    int_poly_trim(&mut rem);
    assert!(rem.is_empty(), "division is not exact");
    quot
}

/// The n-th cyclotomic polynomial Phi_n as integer coefficients, cached.
///
/// Computed by the recursive division Phi_n = (x^n - 1) / prod_{d|n, d<n} Phi_d.
pub fn cyclotomic_polynomial(n: u32) -> Arc<Vec<BigInt>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<BigInt>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&n) {
        return p.clone();
    }
    assert!(n >= 1, "cyclotomic level must be positive");
    let phi = if n == 1 {
        vec![BigInt::from(-1), BigInt::from(1)]
    } else {
        let mut p = vec![BigInt::zero(); n as usize + 1];
        p[0] = BigInt::from(-1);
        p[n as usize] = BigInt::from(1);
        for d in divisors(n) {
            if d < n {
                let phi_d = cyclotomic_polynomial(d);
                p = int_poly_exact_div(&p, &phi_d);
            }
        }
        p
    };
    let arc = Arc::new(phi);
    cache.lock().unwrap().insert(n, arc.clone());
    arc
}

// ---------------------------------------------------------------------------
// Rational polynomial helpers (internal, dense, used for reduction mod Phi_n).
// ---------------------------------------------------------------------------

pub(crate) fn poly_trim(p: &mut Vec<Rat>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

pub(crate) fn poly_mul(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            if !bj.is_zero() {
                out[i + j] += ai * bj;
            }
        }
    }
    poly_trim(&mut out);
    out
}

/// Remainder of `a` modulo the monic polynomial `m` (integer coefficients).
pub(crate) fn poly_rem_monic(a: &[Rat], m: &[BigInt]) -> Vec<Rat> {
    let dm = m.len() - 1;
    let mut rem: Vec<Rat> = a.to_vec();
    poly_trim(&mut rem);
    while rem.len() > dm {
        let i = rem.len() - 1;
        let c = rem[i].clone();
        if !c.is_zero() {
            for (j, mj) in m.iter().enumerate().take(dm) {
                if !mj.is_zero() {
                    let k = i - dm + j;
                    rem[k] -= &c * Rat::from(mj.clone());
                }
            }
        }
        rem.pop();
        poly_trim(&mut rem);
    }
    rem
}

/// Division with remainder over Q: returns (quotient, remainder).
pub(crate) fn poly_divrem(a: &[Rat], b: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    let mut rem: Vec<Rat> = a.to_vec();
    poly_trim(&mut rem);
    let db = b.len() - 1;
    let lead = &b[db];
    assert!(!lead.is_zero());
    if rem.len() <= db {
        return (vec![], rem);
    }
    let mut quot = vec![Rat::zero(); rem.len() - db];
    while rem.len() > db {
        let i = rem.len() - 1;
        let c = &rem[i] / lead;
        quot[i - db] = c.clone();
        for (j, bj) in b.iter().enumerate() {
            let k = i - db + j;
            rem[k] -= &c * bj;
        }
        // The leading term cancels exactly.
        rem.pop();
        poly_trim(&mut rem);
    }
    poly_trim(&mut quot);
    (quot, rem)
}

/// Extended gcd over Q[x]: returns (g, u) with u*a = g mod m, g = gcd(a, m).
fn poly_half_ext_gcd(a: &[Rat], m: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    let mut r0: Vec<Rat> = m.to_vec();
    let mut r1: Vec<Rat> = a.to_vec();
    let mut u0: Vec<Rat> = vec![];
    let mut u1: Vec<Rat> = vec![Rat::one()];
    poly_trim(&mut r0);
    poly_trim(&mut r1);
    while !r1.is_empty() {
        let (q, r) = poly_divrem(&r0, &r1);
        let qu = poly_mul(&q, &u1);
        let mut u = u0.clone();
        if u.len() < qu.len() {
            u.resize(qu.len(), Rat::zero());
        }
        for (i, c) in qu.iter().enumerate() {
            u[i] -= c;
        }
        poly_trim(&mut u);
        r0 = std::mem::replace(&mut r1, r);
        u0 = std::mem::replace(&mut u1, u);
    }
    (r0, u0)
}

// ---------------------------------------------------------------------------
// CyclotomicNumber
// ---------------------------------------------------------------------------

/// An element of Q(zeta_n), reduced modulo Phi_n.
///
/// The `level` is not minimized; equality lifts both sides to the lcm level
/// and compares the canonical representatives there, which decides
/// mathematical equality exactly.
#[derive(Debug, Clone)]
pub struct CyclotomicNumber {
    level: u32,
    /// Coefficients of 1, zeta, zeta^2, ...; length < phi(level), trailing zeros trimmed.
    coeffs: Vec<Rat>,
}

impl CyclotomicNumber {
    pub fn zero() -> Self {
        CyclotomicNumber { level: 1, coeffs: vec![] }
    }

    pub fn one() -> Self {
        Self::from_rat(Rat::one())
    }

    pub fn from_rat(r: Rat) -> Self {
        let coeffs = if r.is_zero() { vec![] } else { vec![r] };
        CyclotomicNumber { level: 1, coeffs }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rat(rat_int(n))
    }

    /// zeta_n^k, reduced.
    pub fn zeta_pow(n: u32, k: i64) -> Self {
        assert!(n >= 1);
        let k = k.rem_euclid(n as i64) as usize;
        let mut coeffs = vec![Rat::zero(); k + 1];
        coeffs[k] = Rat::one();
        Self::from_poly(n, coeffs)
    }

    pub fn zeta(n: u32) -> Self {
        Self::zeta_pow(n, 1)
    }

    /// Build from an arbitrary polynomial in zeta_n (any degree); reduces mod Phi_n.
    pub fn from_poly(level: u32, coeffs: Vec<Rat>) -> Self {
        assert!(level >= 1);
        let phi = cyclotomic_polynomial(level);
        // First fold exponents mod level (zeta^level = 1), then reduce mod Phi.
        let n = level as usize;
        let mut folded = vec![Rat::zero(); n.min(coeffs.len())];
        for (i, c) in coeffs.into_iter().enumerate() {
            if !c.is_zero() {
                let j = i % n;
                if folded.len() <= j {
                    folded.resize(j + 1, Rat::zero());
                }
                folded[j] += c;
            }
        }
        let reduced = poly_rem_monic(&folded, &phi);
        CyclotomicNumber { level, coeffs: reduced }
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Lift into Q(zeta_target); `level` must divide `target`.
    pub fn lift_to(&self, target: u32) -> Result<CyclotomicNumber> {
        if self.level == target {
            return Ok(self.clone());
        }
        if target % self.level != 0 {
            return Err(Error::GaloisLevelMismatch { element: self.level, automorphism: target });
        }
        let d = (target / self.level) as usize;
        let mut coeffs = vec![Rat::zero(); (self.coeffs.len().max(1) - 1) * d + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                coeffs[i * d] = c.clone();
            }
        }
        Ok(CyclotomicNumber::from_poly(target, coeffs))
    }

    fn common_level(&self, other: &Self) -> u32 {
        let a = self.level as u64;
        let b = other.level as u64;
        let l = a / num::integer::gcd(a, b) * b;
        assert!(l <= 1 << 20, "cyclotomic level overflow");
        l as u32
    }

    pub fn add(&self, other: &Self) -> Self {
        let l = self.common_level(other);
        let a = self.lift_to(l).unwrap();
        let b = other.lift_to(l).unwrap();
        let mut coeffs = a.coeffs;
        if coeffs.len() < b.coeffs.len() {
            coeffs.resize(b.coeffs.len(), Rat::zero());
        }
        for (i, c) in b.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        poly_trim(&mut coeffs);
        CyclotomicNumber { level: l, coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        CyclotomicNumber {
            level: self.level,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let l = self.common_level(other);
        let a = self.lift_to(l).unwrap();
        let b = other.lift_to(l).unwrap();
        let prod = poly_mul(&a.coeffs, &b.coeffs);
        CyclotomicNumber::from_poly(l, prod)
    }

    pub fn scale(&self, r: &Rat) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        CyclotomicNumber {
            level: self.level,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let phi = cyclotomic_polynomial(self.level);
        let m: Vec<Rat> = phi.iter().map(|c| Rat::from(c.clone())).collect();
        let (g, u) = poly_half_ext_gcd(&self.coeffs, &m);
        // Phi_n is irreducible over Q, so the gcd is a nonzero constant.
        assert_eq!(g.len(), 1, "cyclotomic polynomial must be irreducible");
        let ginv = Rat::one() / &g[0];
        let coeffs: Vec<Rat> = u.iter().map(|c| c * &ginv).collect();
        Ok(CyclotomicNumber::from_poly(self.level, coeffs))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    /// The rational value, if the element lies in Q.
    ///
    /// The canonical representative modulo Phi_n is constant exactly when the
    /// element is fixed by the full Galois group.
    pub fn rational_part(&self) -> Option<Rat> {
        match self.coeffs.len() {
            0 => Some(Rat::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// zeta_n -> zeta_n^k in place at this element's own level.
    pub(crate) fn map_exponents(&self, k: u32) -> Self {
        let n = self.level as usize;
        let mut out = vec![Rat::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                out[(i * k as usize) % n] += c;
            }
        }
        CyclotomicNumber::from_poly(self.level, out)
    }

    /// Complex conjugation (zeta -> zeta^{-1}).
    pub fn conj(&self) -> Self {
        if self.level <= 2 {
            return self.clone();
        }
        self.map_exponents(self.level - 1)
    }

    /// Evaluate under the standard embedding zeta_n -> exp(2*pi*i/n).
    pub fn to_complex(&self) -> Complex64 {
        self.embed(1)
    }

    /// Evaluate under zeta_n -> exp(2*pi*i*k/n).
    pub fn embed(&self, k: i64) -> Complex64 {
        let n = self.level as f64;
        let mut acc = Complex64::new(0.0, 0.0);
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let theta = 2.0 * std::f64::consts::PI * (k as f64) * (i as f64) / n;
            acc += Complex64::from_polar(1.0, theta) * c.to_f64().unwrap();
        }
        acc
    }
}

impl PartialEq for CyclotomicNumber {
    fn eq(&self, other: &Self) -> bool {
        if self.level == other.level {
            return self.coeffs == other.coeffs;
        }
        let l = self.common_level(other);
        self.lift_to(l).unwrap().coeffs == other.lift_to(l).unwrap().coeffs
    }
}

impl Eq for CyclotomicNumber {}

#[derive(Serialize, Deserialize)]
struct CycloWire {
    n: u32,
    coeffs: Vec<String>,
}

impl Serialize for CyclotomicNumber {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        CycloWire {
            n: self.level,
            coeffs: self.coeffs.iter().map(rat_to_string).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CyclotomicNumber {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let wire = CycloWire::deserialize(deserializer)?;
        let coeffs = wire
            .coeffs
            .iter()
            .map(|s| rat_from_str(s).map_err(D::Error::custom))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(CyclotomicNumber::from_poly(wire.n, coeffs))
    }
}

impl std::fmt::Display for CyclotomicNumber {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if i == 0 {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "z{}^{}", self.level, i)?;
            } else {
                write!(f, "({c})*z{}^{}", self.level, i)?;
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Galois automorphisms
// ---------------------------------------------------------------------------

/// The automorphism of Q(zeta_n) sending zeta_n -> zeta_n^k, gcd(k, n) = 1.
///
/// This is the finite-level shadow of a field automorphism of C: all
/// parameter data we act on is torsion plus symbolic q-powers, and gamma(v) = v
/// by convention.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GaloisAutomorphism {
    level: u32,
    exponent: u32,
}

impl GaloisAutomorphism {
    pub fn new(level: u32, exponent: u32) -> Result<Self> {
        if level == 0 {
            return Err(Error::InvalidAutomorphism { n: level, k: exponent });
        }
        let k = exponent % level.max(1);
        let k = if level == 1 { 0 } else { k };
        if level > 1 && num::integer::gcd(k as u64, level as u64) != 1 {
            return Err(Error::InvalidAutomorphism { n: level, k: exponent });
        }
        Ok(GaloisAutomorphism { level, exponent: k })
    }

    pub fn identity(level: u32) -> Self {
        GaloisAutomorphism { level, exponent: 1 % level.max(1) }
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    /// True when k = -1 mod n, i.e. the automorphism restricts to complex
    /// conjugation on the roots of unity.
    pub fn is_conjugation(&self) -> bool {
        self.level > 2 && self.exponent == self.level - 1
    }

    /// Composition: (n, k1) o (n, k2) = (n, k1*k2 mod n).
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.level != other.level {
            return Err(Error::GaloisLevelMismatch {
                element: other.level,
                automorphism: self.level,
            });
        }
        let k = (self.exponent as u64 * other.exponent as u64) % self.level as u64;
        GaloisAutomorphism::new(self.level, k as u32)
    }

    /// Apply to a cyclotomic number. The element's level must divide the
    /// automorphism's level (an automorphism of the smaller field does not
    /// determine one of the larger field, so there is no lift the other way).
    pub fn apply(&self, a: &CyclotomicNumber) -> Result<CyclotomicNumber> {
        if self.level % a.level() != 0 {
            return Err(Error::GaloisLevelMismatch {
                element: a.level(),
                automorphism: self.level,
            });
        }
        let lifted = a.lift_to(self.level)?;
        Ok(lifted.map_exponents(self.exponent))
    }

    /// All automorphisms of Q(zeta_n): exponents coprime to n.
    pub fn all(level: u32) -> Vec<GaloisAutomorphism> {
        (1..=level.max(1))
            .filter(|k| num::integer::gcd(*k as u64, level as u64) == 1)
            .map(|k| GaloisAutomorphism { level, exponent: k % level })
            .collect()
    }
}

impl std::fmt::Display for GaloisAutomorphism {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(zeta_{} -> zeta_{}^{})", self.level, self.level, self.exponent)
    }
}

/// Field arithmetic entry point used by the CLI export path.
pub fn cyclo_arith(
    a: &CyclotomicNumber,
    b: &CyclotomicNumber,
    op: &str,
) -> Result<CyclotomicNumber> {
    match op {
        "add" => Ok(a.add(b)),
        "sub" => Ok(a.sub(b)),
        "mul" => Ok(a.mul(b)),
        "div" => a.div(b),
        other => Err(Error::InvalidParameter(format!("unknown op {other:?}"))),
    }
}

// ---------------------------------------------------------------------------
// ZetaInt: fast integer model of Z[zeta_n], reduced only mod x^n - 1.
//
// The formal-degree engine accumulates numerators here (every coefficient it
// ever produces is an integer combination of roots of unity), and converts to
// the canonical CyclotomicNumber form once per computation.
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct ZetaInt {
    pub n: u32,
    /// c[j] is the coefficient of zeta^j; length exactly n.
    pub c: Vec<i64>,
}

impl ZetaInt {
    pub fn zero(n: u32) -> Self {
        ZetaInt { n, c: vec![0; n as usize] }
    }

    pub fn one(n: u32) -> Self {
        let mut z = Self::zero(n);
        z.c[0] = 1;
        z
    }

    pub fn zeta_pow(n: u32, k: i64) -> Self {
        let mut z = Self::zero(n);
        z.c[k.rem_euclid(n as i64) as usize] = 1;
        z
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|&x| x == 0)
    }

    pub fn add_assign(&mut self, other: &ZetaInt) {
        debug_assert_eq!(self.n, other.n);
        for (a, b) in self.c.iter_mut().zip(&other.c) {
            *a += b;
        }
    }

    /// self += a * b (cyclic convolution), no allocation.
    pub fn add_mul(&mut self, a: &ZetaInt, b: &ZetaInt) {
        let n = self.n as usize;
        for (p, &ap) in a.c.iter().enumerate() {
            if ap == 0 {
                continue;
            }
            for (q, &bq) in b.c.iter().enumerate() {
                if bq != 0 {
                    let r = p + q;
                    let r = if r >= n { r - n } else { r };
                    self.c[r] += ap * bq;
                }
            }
        }
    }

    /// self += a * zeta^k * sign.
    pub fn add_rotated(&mut self, a: &ZetaInt, k: i64, sign: i64) {
        let n = self.n as usize;
        let k = k.rem_euclid(self.n as i64) as usize;
        for (p, &ap) in a.c.iter().enumerate() {
            if ap != 0 {
                let r = p + k;
                let r = if r >= n { r - n } else { r };
                self.c[r] += sign * ap;
            }
        }
    }

    pub fn conj(&self) -> ZetaInt {
        let n = self.n as usize;
        let mut out = ZetaInt::zero(self.n);
        for (j, &cj) in self.c.iter().enumerate() {
            out.c[(n - j) % n] += cj;
        }
        out
    }

    #[cfg(test)]
    pub fn galois(&self, k: u32) -> ZetaInt {
        let n = self.n as usize;
        let mut out = ZetaInt::zero(self.n);
        for (j, &cj) in self.c.iter().enumerate() {
            if cj != 0 {
                out.c[(j * k as usize) % n] += cj;
            }
        }
        out
    }

    /// Canonicalize into Q(zeta_n).
    pub fn to_cyclotomic(&self) -> CyclotomicNumber {
        let coeffs: Vec<Rat> = self.c.iter().map(|&x| rat_int(x)).collect();
        CyclotomicNumber::from_poly(self.n, coeffs)
    }

    pub fn embed(&self) -> Complex64 {
        let n = self.n as f64;
        let mut acc = Complex64::new(0.0, 0.0);
        for (j, &cj) in self.c.iter().enumerate() {
            if cj != 0 {
                let theta = 2.0 * std::f64::consts::PI * (j as f64) / n;
                acc += Complex64::from_polar(1.0, theta) * cj as f64;
            }
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phi_polynomials() {
        let as_i64 = |n: u32| -> Vec<i64> {
            cyclotomic_polynomial(n).iter().map(|c| c.to_i64().unwrap()).collect()
        };
        assert_eq!(as_i64(1), vec![-1, 1]);
        assert_eq!(as_i64(2), vec![1, 1]);
        assert_eq!(as_i64(3), vec![1, 1, 1]);
        assert_eq!(as_i64(4), vec![1, 0, 1]);
        assert_eq!(as_i64(6), vec![1, -1, 1]);
        assert_eq!(as_i64(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn zeta3_relation() {
        // zeta_3 + zeta_3^2 = -1
        let z = CyclotomicNumber::zeta(3);
        let sum = z.add(&z.mul(&z));
        assert_eq!(sum, CyclotomicNumber::from_int(-1));
        assert_eq!(sum.rational_part(), Some(rat_int(-1)));
    }

    #[test]
    fn zeta4_squares_to_minus_one() {
        let i = CyclotomicNumber::zeta(4);
        assert_eq!(i.mul(&i), CyclotomicNumber::from_int(-1));
    }

    #[test]
    fn division_identity() {
        let a = CyclotomicNumber::one().add(&CyclotomicNumber::zeta(5));
        assert_eq!(a.div(&a).unwrap(), CyclotomicNumber::one());
        assert_eq!(
            CyclotomicNumber::one().div(&CyclotomicNumber::zero()),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn cross_level_equality() {
        // zeta_6^2 = zeta_3
        let z6 = CyclotomicNumber::zeta(6);
        assert_eq!(z6.mul(&z6), CyclotomicNumber::zeta(3));
    }

    #[test]
    fn galois_examples() {
        let g = GaloisAutomorphism::new(4, 3).unwrap();
        let i = CyclotomicNumber::zeta(4);
        assert_eq!(g.apply(&i).unwrap(), i.neg());
        assert!(g.is_conjugation());

        let g = GaloisAutomorphism::new(5, 2).unwrap();
        let z = CyclotomicNumber::zeta(5);
        assert_eq!(g.apply(&z).unwrap(), z.mul(&z));

        // rational values are fixed
        let g = GaloisAutomorphism::new(3, 2).unwrap();
        let z = CyclotomicNumber::zeta(3);
        let r = z.add(&z.mul(&z));
        assert_eq!(g.apply(&r).unwrap(), r);

        assert_eq!(
            GaloisAutomorphism::new(4, 2),
            Err(Error::InvalidAutomorphism { n: 4, k: 2 })
        );
    }

    #[test]
    fn rational_part_cases() {
        assert_eq!(CyclotomicNumber::zeta(5).rational_part(), None);
        assert_eq!(CyclotomicNumber::from_rat(rat(7, 3)).rational_part(), Some(rat(7, 3)));
    }

    #[test]
    fn conjugation_is_involution() {
        let a = CyclotomicNumber::zeta(8)
            .scale(&rat(3, 2))
            .add(&CyclotomicNumber::zeta_pow(8, 3));
        assert_eq!(a.conj().conj(), a);
        let b = CyclotomicNumber::zeta_pow(8, 5).add(&CyclotomicNumber::one());
        assert_eq!(a.mul(&b).conj(), a.conj().mul(&b.conj()));
    }

    #[test]
    fn embed_agrees_with_algebra() {
        let z = CyclotomicNumber::zeta(4);
        let c = z.to_complex();
        assert!((c - Complex64::new(0.0, 1.0)).norm() < 1e-12);
        let r = CyclotomicNumber::zeta(3).add(&CyclotomicNumber::zeta_pow(3, 2));
        assert!((r.to_complex() - Complex64::new(-1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn zetaint_matches_cyclotomic() {
        let n = 12;
        let mut z = ZetaInt::zero(n);
        z.c[5] = 3;
        z.c[11] = -2;
        let mut w = ZetaInt::zero(n);
        w.c[7] = 1;
        w.c[1] = 4;
        let mut prod = ZetaInt::zero(n);
        prod.add_mul(&z, &w);
        assert_eq!(prod.to_cyclotomic(), z.to_cyclotomic().mul(&w.to_cyclotomic()));
        assert_eq!(z.conj().to_cyclotomic(), z.to_cyclotomic().conj());
        let g = GaloisAutomorphism::new(n, 5).unwrap();
        assert_eq!(z.galois(5).to_cyclotomic(), g.apply(&z.to_cyclotomic()).unwrap());
    }

    #[test]
    fn serde_roundtrip() {
        let a = CyclotomicNumber::zeta(5).scale(&rat(2, 3)).add(&CyclotomicNumber::one());
        let s = serde_json::to_string(&a).unwrap();
        let b: CyclotomicNumber = serde_json::from_str(&s).unwrap();
        assert_eq!(a, b);
    }
}
