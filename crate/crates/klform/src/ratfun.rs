//! Rational functions in v over Q(zeta_n), with q = v^2 kept symbolic.
//!
//! `RatFun` is the canonical form: numerator and denominator are coprime
//! polynomials in v and the denominator is monic, so structural equality
//! decides equality in the field. Complex conjugation acts on coefficients by
//! zeta -> zeta^{-1} and fixes v (v stands for a positive real q^{1/2});
//! Galois automorphisms act coefficientwise with v fixed.

use num::complex::Complex64;
use num::{BigInt, Zero};
use serde::{Deserialize, Serialize};

use crate::cyclotomic::{CyclotomicNumber, GaloisAutomorphism, Rat, ZetaInt};
use crate::error::{Error, Result};

type CPoly = Vec<CyclotomicNumber>;

fn cpoly_trim(p: &mut CPoly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn cpoly_is_zero(p: &CPoly) -> bool {
    p.is_empty()
}

fn cpoly_add(a: &CPoly, b: &CPoly) -> CPoly {
    let mut out = a.clone();
    if out.len() < b.len() {
        out.resize(b.len(), CyclotomicNumber::zero());
    }
    for (i, c) in b.iter().enumerate() {
        out[i] = out[i].add(c);
    }
    cpoly_trim(&mut out);
    out
}

fn cpoly_neg(a: &CPoly) -> CPoly {
    a.iter().map(|c| c.neg()).collect()
}

fn cpoly_mul(a: &CPoly, b: &CPoly) -> CPoly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![CyclotomicNumber::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            if !bj.is_zero() {
                out[i + j] = out[i + j].add(&ai.mul(bj));
            }
        }
    }
    cpoly_trim(&mut out);
    out
}

fn cpoly_scale(a: &CPoly, c: &CyclotomicNumber) -> CPoly {
    let mut out: CPoly = a.iter().map(|x| x.mul(c)).collect();
    cpoly_trim(&mut out);
    out
}

/// Division with remainder; the divisor's leading coefficient is inverted once.
fn cpoly_divrem(a: &CPoly, b: &CPoly) -> Result<(CPoly, CPoly)> {
    if cpoly_is_zero(b) {
        return Err(Error::DivisionByZero);
    }
    let db = b.len() - 1;
    let lead_inv = b[db].inv()?;
    let mut rem = a.clone();
    cpoly_trim(&mut rem);
    if rem.len() <= db {
        return Ok((vec![], rem));
    }
    let mut quot = vec![CyclotomicNumber::zero(); rem.len() - db];
    while rem.len() > db {
        let i = rem.len() - 1;
        let c = rem[i].mul(&lead_inv);
        quot[i - db] = c.clone();
        for (j, bj) in b.iter().enumerate().take(db) {
            rem[i - db + j] = rem[i - db + j].sub(&c.mul(bj));
        }
        rem.pop();
        cpoly_trim(&mut rem);
    }
    let mut quot = quot;
    cpoly_trim(&mut quot);
    Ok((quot, rem))
}

/// Monic gcd by the Euclidean algorithm; remainders are made monic at each
/// step to keep coefficient growth under control.
fn cpoly_gcd(a: &CPoly, b: &CPoly) -> Result<CPoly> {
    let mut r0 = a.clone();
    let mut r1 = b.clone();
    cpoly_trim(&mut r0);
    cpoly_trim(&mut r1);
    while !cpoly_is_zero(&r1) {
        let monic = cpoly_scale(&r1, &r1.last().unwrap().inv()?);
        let (_, r) = cpoly_divrem(&r0, &monic)?;
        r0 = monic;
        r1 = r;
    }
    if cpoly_is_zero(&r0) {
        return Ok(vec![]);
    }
    Ok(cpoly_scale(&r0, &r0.last().unwrap().inv()?))
}

fn cpoly_shift(a: &CPoly, k: usize) -> CPoly {
    if a.is_empty() {
        return vec![];
    }
    let mut out = vec![CyclotomicNumber::zero(); k];
    out.extend(a.iter().cloned());
    out
}

/// Number of leading v-powers dividing the polynomial.
fn cpoly_valuation(a: &CPoly) -> usize {
    a.iter().position(|c| !c.is_zero()).unwrap_or(0)
}

// ---------------------------------------------------------------------------
// RatFun
// ---------------------------------------------------------------------------

/// A rational function in v over a cyclotomic field, in canonical reduced form.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RatFun {
    num: Vec<CyclotomicNumber>,
    den: Vec<CyclotomicNumber>,
}

impl RatFun {
    pub fn new(num: Vec<CyclotomicNumber>, den: Vec<CyclotomicNumber>) -> Result<Self> {
        let mut f = RatFun { num, den };
        f.reduce()?;
        Ok(f)
    }

    pub fn zero() -> Self {
        RatFun { num: vec![], den: vec![CyclotomicNumber::one()] }
    }

    pub fn one() -> Self {
        Self::constant(CyclotomicNumber::one())
    }

    pub fn constant(c: CyclotomicNumber) -> Self {
        let num = if c.is_zero() { vec![] } else { vec![c] };
        RatFun { num, den: vec![CyclotomicNumber::one()] }
    }

    pub fn from_rat(r: Rat) -> Self {
        Self::constant(CyclotomicNumber::from_rat(r))
    }

    /// c * v^k, with k possibly negative.
    pub fn monomial(c: CyclotomicNumber, k: i64) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        if k >= 0 {
            let mut num = vec![CyclotomicNumber::zero(); k as usize + 1];
            num[k as usize] = c;
            RatFun { num, den: vec![CyclotomicNumber::one()] }
        } else {
            let mut den = vec![CyclotomicNumber::zero(); (-k) as usize + 1];
            den[(-k) as usize] = CyclotomicNumber::one();
            RatFun { num: vec![c], den }
        }
    }

    /// v^2 substituted for q: build from a polynomial in q with integer coefficients.
    pub fn from_q_poly(coeffs: &[i64]) -> Self {
        let mut num = vec![CyclotomicNumber::zero(); coeffs.len().saturating_mul(2)];
        for (i, &c) in coeffs.iter().enumerate() {
            if c != 0 {
                if num.len() <= 2 * i {
                    num.resize(2 * i + 1, CyclotomicNumber::zero());
                }
                num[2 * i] = CyclotomicNumber::from_int(c);
            }
        }
        cpoly_trim(&mut num);
        RatFun { num, den: vec![CyclotomicNumber::one()] }
    }

    pub(crate) fn from_laurent_parts(
        num_lo: i64,
        num: Vec<CyclotomicNumber>,
        den_lo: i64,
        den: Vec<CyclotomicNumber>,
    ) -> Result<Self> {
        let shift = num_lo - den_lo;
        let (num, den) = if shift >= 0 {
            (cpoly_shift(&num, shift as usize), den)
        } else {
            (num, cpoly_shift(&den, (-shift) as usize))
        };
        Self::new(num, den)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    pub fn numerator(&self) -> &[CyclotomicNumber] {
        &self.num
    }

    pub fn denominator(&self) -> &[CyclotomicNumber] {
        &self.den
    }

    fn reduce(&mut self) -> Result<()> {
        cpoly_trim(&mut self.num);
        cpoly_trim(&mut self.den);
        if cpoly_is_zero(&self.den) {
            return Err(Error::DivisionByZero);
        }
        if cpoly_is_zero(&self.num) {
            self.den = vec![CyclotomicNumber::one()];
            return Ok(());
        }
        // Cancel common powers of v first; they are frequent and cheap.
        let k = cpoly_valuation(&self.num).min(cpoly_valuation(&self.den));
        if k > 0 {
            self.num.drain(..k);
            self.den.drain(..k);
        }
        // A leftover v-power on one side is coprime to the other side, so
        // the gcd can ignore it; keeping it out of the Euclidean sequence
        // avoids walking down its entire degree range.
        let num_core: Vec<CyclotomicNumber> = self.num[cpoly_valuation(&self.num)..].to_vec();
        let den_core: Vec<CyclotomicNumber> = self.den[cpoly_valuation(&self.den)..].to_vec();
        let g = cpoly_gcd(&num_core, &den_core)?;
        if g.len() > 1 {
            self.num = cpoly_divrem(&self.num, &g)?.0;
            self.den = cpoly_divrem(&self.den, &g)?.0;
        }
        let lead_inv = self.den.last().unwrap().inv()?;
        self.num = cpoly_scale(&self.num, &lead_inv);
        self.den = cpoly_scale(&self.den, &lead_inv);
        // Monic normalization keeps the leading coefficient exactly 1.
        let dd = self.den.len() - 1;
        self.den[dd] = CyclotomicNumber::one();
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        Self::new(
            cpoly_add(&cpoly_mul(&self.num, &other.den), &cpoly_mul(&other.num, &self.den)),
            cpoly_mul(&self.den, &other.den),
        )
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        Self::new(
            cpoly_add(&cpoly_mul(&self.num, &other.den), &cpoly_neg(&cpoly_mul(&other.num, &self.den))),
            cpoly_mul(&self.den, &other.den),
        )
    }

    pub fn neg(&self) -> Self {
        RatFun { num: cpoly_neg(&self.num), den: self.den.clone() }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        Self::new(cpoly_mul(&self.num, &other.num), cpoly_mul(&self.den, &other.den))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Self::new(cpoly_mul(&self.num, &other.den), cpoly_mul(&self.den, &other.num))
    }

    pub fn inv(&self) -> Result<Self> {
        Self::one().div(self)
    }

    /// Coefficientwise complex conjugation; v is fixed.
    pub fn conj(&self) -> Self {
        RatFun {
            num: self.num.iter().map(|c| c.conj()).collect(),
            den: self.den.iter().map(|c| c.conj()).collect(),
        }
    }

    /// Coefficientwise Galois action; v is fixed. A field automorphism
    /// preserves coprimality and the monic normalization, so the canonical
    /// form maps to a canonical form without re-reduction.
    pub fn galois(&self, g: &GaloisAutomorphism) -> Result<Self> {
        let num = self.num.iter().map(|c| g.apply(c)).collect::<Result<Vec<_>>>()?;
        let den = self.den.iter().map(|c| g.apply(c)).collect::<Result<Vec<_>>>()?;
        Ok(RatFun { num, den })
    }

    /// True when only even powers of v occur (so the value is a function of q).
    pub fn is_even_in_v(&self) -> bool {
        let even = |p: &CPoly| p.iter().enumerate().all(|(i, c)| i % 2 == 0 || c.is_zero());
        even(&self.num) && even(&self.den)
    }

    /// Exact evaluation at a rational value of v.
    pub fn eval_v_rational(&self, v0: &Rat) -> Result<CyclotomicNumber> {
        let eval = |p: &CPoly| {
            let mut acc = CyclotomicNumber::zero();
            for c in p.iter().rev() {
                acc = acc.scale(v0).add(c);
            }
            acc
        };
        let den = eval(&self.den);
        if den.is_zero() {
            return Err(Error::PoleAtEvalPoint(v0.to_string()));
        }
        eval(&self.num).div(&den)
    }

    /// Exact evaluation at a rational value of q = v^2; defined when the
    /// function is even in v.
    pub fn eval_q_exact(&self, q0: &Rat) -> Option<Result<CyclotomicNumber>> {
        if !self.is_even_in_v() {
            return None;
        }
        let eval = |p: &CPoly| {
            let mut acc = CyclotomicNumber::zero();
            for i in (0..p.len()).step_by(2).rev() {
                acc = acc.scale(q0).add(&p[i]);
            }
            acc
        };
        let den = eval(&self.den);
        if den.is_zero() {
            return Some(Err(Error::PoleAtEvalPoint(format!("q = {q0}"))));
        }
        Some(eval(&self.num).div(&den))
    }

    /// Floating-point evaluation at v = v0 with zeta_n -> exp(2*pi*i*k/n).
    pub fn embed(&self, v0: f64, k: i64) -> Result<Complex64> {
        let eval = |p: &CPoly| {
            let mut acc = Complex64::new(0.0, 0.0);
            for c in p.iter().rev() {
                acc = acc * v0 + c.embed(k);
            }
            acc
        };
        let den = eval(&self.den);
        if den.norm() == 0.0 {
            return Err(Error::PoleAtEvalPoint(v0.to_string()));
        }
        Ok(eval(&self.num) / den)
    }

    pub fn eval_v_f64(&self, v0: f64) -> Result<Complex64> {
        self.embed(v0, 1)
    }
}

impl PartialEq for RatFun {
    fn eq(&self, other: &Self) -> bool {
        self.num == other.num && self.den == other.den
    }
}

impl Eq for RatFun {}

impl std::fmt::Display for RatFun {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let show = |p: &CPoly, f: &mut std::fmt::Formatter<'_>| -> std::fmt::Result {
            if p.is_empty() {
                return write!(f, "0");
            }
            let mut first = true;
            for (i, c) in p.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                if !first {
                    write!(f, " + ")?;
                }
                first = false;
                if i == 0 {
                    write!(f, "({c})")?;
                } else {
                    write!(f, "({c})*v^{i}")?;
                }
            }
            Ok(())
        };
        show(&self.num, f)?;
        if self.den.len() != 1 || !self.den[0].is_rational() {
            write!(f, " / [")?;
            show(&self.den, f)?;
            write!(f, "]")?;
        }
        Ok(())
    }
}

/// Arithmetic entry point mirroring `cyclo_arith`.
pub fn ratfun_arith(f: &RatFun, g: &RatFun, op: &str) -> Result<RatFun> {
    match op {
        "add" => f.add(g),
        "sub" => f.sub(g),
        "mul" => f.mul(g),
        "div" => f.div(g),
        other => Err(Error::InvalidParameter(format!("unknown op {other:?}"))),
    }
}

// ---------------------------------------------------------------------------
// ZLaurent: integer Laurent polynomials in v over Z[zeta_n] (cyclic model).
//
// All numerators in the symmetrized sums live here; the representation is not
// canonical (reduced mod x^n - 1 only) but the quotient map to Q(zeta_n)
// commutes with the arithmetic, and `to_ratfun` canonicalizes at the end.
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub(crate) struct ZLaurent {
    pub n: u32,
    pub lo: i64,
    pub coeffs: Vec<ZetaInt>,
}

impl ZLaurent {
    pub fn zero(n: u32) -> Self {
        ZLaurent { n, lo: 0, coeffs: vec![] }
    }

    pub fn one(n: u32) -> Self {
        ZLaurent { n, lo: 0, coeffs: vec![ZetaInt::one(n)] }
    }

    /// zeta^t * v^e.
    pub fn monomial(n: u32, t: i64, e: i64) -> Self {
        ZLaurent { n, lo: e, coeffs: vec![ZetaInt::zeta_pow(n, t)] }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    fn hi(&self) -> i64 {
        self.lo + self.coeffs.len() as i64 - 1
    }

    fn ensure_range(&mut self, lo: i64, hi: i64) {
        if self.coeffs.is_empty() {
            self.lo = lo;
            self.coeffs = (lo..=hi).map(|_| ZetaInt::zero(self.n)).collect();
            return;
        }
        if lo < self.lo {
            let extra = (self.lo - lo) as usize;
            let mut new = Vec::with_capacity(self.coeffs.len() + extra);
            new.extend((0..extra).map(|_| ZetaInt::zero(self.n)));
            new.append(&mut self.coeffs);
            self.coeffs = new;
            self.lo = lo;
        }
        if hi > self.hi() {
            let extra = (hi - self.hi()) as usize;
            self.coeffs.extend((0..extra).map(|_| ZetaInt::zero(self.n)));
        }
    }

    pub fn add_assign(&mut self, other: &ZLaurent) {
        if other.coeffs.is_empty() {
            return;
        }
        self.ensure_range(other.lo, other.hi());
        for (i, c) in other.coeffs.iter().enumerate() {
            let idx = (other.lo + i as i64 - self.lo) as usize;
            self.coeffs[idx].add_assign(c);
        }
    }

    /// self += sign * zeta^t * v^e.
    #[cfg(test)]
    pub fn add_term(&mut self, t: i64, e: i64, sign: i64) {
        self.ensure_range(e, e);
        let idx = (e - self.lo) as usize;
        let n = self.n as i64;
        self.coeffs[idx].c[t.rem_euclid(n) as usize] += sign;
    }

    /// self += zeta^t * v^e * other.
    pub fn add_shifted(&mut self, other: &ZLaurent, t: i64, e: i64) {
        if other.coeffs.is_empty() {
            return;
        }
        self.ensure_range(other.lo + e, other.hi() + e);
        for (i, c) in other.coeffs.iter().enumerate() {
            if !c.is_zero() {
                let idx = (other.lo + i as i64 + e - self.lo) as usize;
                self.coeffs[idx].add_rotated(c, t, 1);
            }
        }
    }

    /// self * (1 - zeta^t * v^e).
    pub fn mul_one_minus(&self, t: i64, e: i64) -> ZLaurent {
        let mut out = self.clone();
        let mut shifted = ZLaurent::zero(self.n);
        shifted.add_shifted(self, t, e);
        for c in shifted.coeffs.iter_mut() {
            for x in c.c.iter_mut() {
                *x = -*x;
            }
        }
        out.add_assign(&shifted);
        out
    }

    pub fn mul(&self, other: &ZLaurent) -> ZLaurent {
        if self.is_zero() || other.is_zero() {
            return ZLaurent::zero(self.n);
        }
        let lo = self.lo + other.lo;
        let len = self.coeffs.len() + other.coeffs.len() - 1;
        let mut coeffs: Vec<ZetaInt> = (0..len).map(|_| ZetaInt::zero(self.n)).collect();
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j].add_mul(a, b);
                }
            }
        }
        ZLaurent { n: self.n, lo, coeffs }
    }

    /// Conjugation: zeta -> zeta^{-1}, v fixed.
    pub fn conj(&self) -> ZLaurent {
        ZLaurent {
            n: self.n,
            lo: self.lo,
            coeffs: self.coeffs.iter().map(|c| c.conj()).collect(),
        }
    }

    pub fn to_cyclo_parts(&self) -> (i64, Vec<CyclotomicNumber>) {
        let mut coeffs: Vec<CyclotomicNumber> =
            self.coeffs.iter().map(|c| c.to_cyclotomic()).collect();
        cpoly_trim(&mut coeffs);
        (self.lo, coeffs)
    }

    pub fn eval(&self, v0: f64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * v0 + c.embed();
        }
        acc * v0.powi(self.lo as i32)
    }
}

/// Canonicalize an exact Laurent fraction into a `RatFun`.
pub(crate) fn ratfun_from_zlaurent(num: &ZLaurent, den: &ZLaurent) -> Result<RatFun> {
    let (nlo, ncoeffs) = num.to_cyclo_parts();
    let (dlo, dcoeffs) = den.to_cyclo_parts();
    RatFun::from_laurent_parts(nlo, ncoeffs, dlo, dcoeffs)
}

/// Integer polynomial in q, used for Poincare polynomials of parabolics.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntegerPolynomial(pub Vec<i64>);

impl IntegerPolynomial {
    pub fn one() -> Self {
        IntegerPolynomial(vec![1])
    }

    pub fn eval_int(&self, q: i64) -> i64 {
        self.0.iter().rev().fold(0i64, |acc, &c| acc * q + c)
    }

    pub fn eval_rat(&self, q: &Rat) -> Rat {
        self.0
            .iter()
            .rev()
            .fold(Rat::zero(), |acc, &c| acc * q + Rat::from(BigInt::from(c)))
    }

    pub fn eval_f64(&self, q: f64) -> f64 {
        self.0.iter().rev().fold(0.0, |acc, &c| acc * q + c as f64)
    }

    /// Exact divisibility test over Q.
    pub fn divides(&self, other: &IntegerPolynomial) -> bool {
        let to_rat = |p: &IntegerPolynomial| -> Vec<Rat> {
            p.0.iter().map(|&c| crate::cyclotomic::rat_int(c)).collect()
        };
        let a = to_rat(other);
        let b = to_rat(self);
        if b.iter().all(|c| c.is_zero()) {
            return a.iter().all(|c| c.is_zero());
        }
        let (_, r) = crate::cyclotomic::poly_divrem(&a, &b);
        r.is_empty()
    }

    /// As a ZLaurent in v with q = v^2 (for exact Formula-A assembly).
    pub(crate) fn to_zlaurent(&self, n: u32) -> ZLaurent {
        let mut out = ZLaurent::zero(n);
        for (i, &c) in self.0.iter().enumerate() {
            if c != 0 {
                out.ensure_range(0, 2 * i as i64);
                out.coeffs[2 * i].c[0] += c;
            }
        }
        out
    }
}

impl std::fmt::Display for IntegerPolynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 if c == 1 => write!(f, "q")?,
                1 => write!(f, "{c}q")?,
                _ if c == 1 => write!(f, "q^{i}")?,
                _ => write!(f, "{c}q^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::{rat, rat_int};

    fn v_pow(k: i64) -> RatFun {
        RatFun::monomial(CyclotomicNumber::one(), k)
    }

    #[test]
    fn gcd_cancellation() {
        // (v^2 - 1) / (v - 1) reduces to v + 1
        let num = RatFun::new(
            vec![CyclotomicNumber::from_int(-1), CyclotomicNumber::zero(), CyclotomicNumber::one()],
            vec![CyclotomicNumber::one()],
        )
        .unwrap();
        let den = RatFun::new(
            vec![CyclotomicNumber::from_int(-1), CyclotomicNumber::one()],
            vec![CyclotomicNumber::one()],
        )
        .unwrap();
        let q = num.div(&den).unwrap();
        let expected = RatFun::new(
            vec![CyclotomicNumber::one(), CyclotomicNumber::one()],
            vec![CyclotomicNumber::one()],
        )
        .unwrap();
        assert_eq!(q, expected);
    }

    #[test]
    fn conjugation_fixes_rational_coefficients() {
        // (1 + v^{-2}) * conj(1 + v^{-2}) = (1 + v^{-2})^2
        let f = RatFun::one().add(&v_pow(-2)).unwrap();
        let sq = f.mul(&f.conj()).unwrap();
        assert_eq!(sq, f.mul(&f).unwrap());
    }

    #[test]
    fn galois_acts_coefficientwise() {
        let g = GaloisAutomorphism::new(5, 2).unwrap();
        let f = RatFun::monomial(CyclotomicNumber::zeta(5), 1);
        let expected = RatFun::monomial(CyclotomicNumber::zeta_pow(5, 2), 1);
        assert_eq!(f.galois(&g).unwrap(), expected);
    }

    #[test]
    fn embed_direct_substitution() {
        // (1 + v^{-2}) at v0 = sqrt(2) is 1.5
        let f = RatFun::one().add(&v_pow(-2)).unwrap();
        let val = f.eval_v_f64(2f64.sqrt()).unwrap();
        assert!((val.re - 1.5).abs() < 1e-12 && val.im.abs() < 1e-14);
    }

    #[test]
    fn exact_q_evaluation() {
        let f = RatFun::one().add(&v_pow(-2)).unwrap();
        assert!(f.is_even_in_v());
        let val = f.eval_q_exact(&rat_int(2)).unwrap().unwrap();
        assert_eq!(val.rational_part(), Some(rat(3, 2)));
        let odd = v_pow(1).add(&RatFun::one()).unwrap();
        assert!(odd.eval_q_exact(&rat_int(2)).is_none());
    }

    #[test]
    fn pole_detection() {
        let den = RatFun::new(
            vec![CyclotomicNumber::from_int(-1), CyclotomicNumber::one()],
            vec![CyclotomicNumber::one()],
        )
        .unwrap();
        let f = RatFun::one().div(&den).unwrap();
        assert!(matches!(f.eval_v_rational(&rat_int(1)), Err(Error::PoleAtEvalPoint(_))));
        assert!(f.eval_v_rational(&rat_int(2)).is_ok());
    }

    #[test]
    fn zlaurent_roundtrip() {
        let n = 5;
        let mut a = ZLaurent::monomial(n, 1, -3);
        a.add_term(2, 4, -1);
        let b = a.mul_one_minus(3, 2);
        let f = ratfun_from_zlaurent(&b, &ZLaurent::one(n)).unwrap();
        // Same value via RatFun arithmetic.
        let am = RatFun::monomial(CyclotomicNumber::zeta(5), -3)
            .sub(&RatFun::monomial(CyclotomicNumber::zeta_pow(5, 2), 4))
            .unwrap();
        let factor = RatFun::one()
            .sub(&RatFun::monomial(CyclotomicNumber::zeta_pow(5, 3), 2))
            .unwrap();
        assert_eq!(f, am.mul(&factor).unwrap());
    }

    #[test]
    fn integer_polynomial_divides() {
        // 1 + q divides 1 + 2q + 2q^2 + q^3 (= (1+q)(1+q+q^2))
        let a = IntegerPolynomial(vec![1, 1]);
        let b = IntegerPolynomial(vec![1, 2, 2, 1]);
        assert!(a.divides(&b));
        assert!(!IntegerPolynomial(vec![1, 0, 1]).divides(&b));
    }

    #[test]
    fn serde_roundtrip() {
        let f = RatFun::monomial(CyclotomicNumber::zeta(3), 2)
            .add(&RatFun::from_rat(rat(1, 2)))
            .unwrap();
        let s = serde_json::to_string(&f).unwrap();
        let g: RatFun = serde_json::from_str(&s).unwrap();
        assert_eq!(f, g);
    }
}
