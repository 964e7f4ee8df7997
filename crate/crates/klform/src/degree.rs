//! Reeder's formal-degree sums, computed exactly.
//!
//! For a regular torus point s the function
//!
//!   M(lambda, s) = sum_{w in W} w(lambda prod_{alpha>0} (1 - q^{-1}alpha)/(1 - alpha))(s)
//!
//! is assembled over the common denominator D = prod_{beta in Phi}(1 - beta(s)):
//! the numerator of the w-term is the monomial (w lambda)(s) times
//! P_w = prod_{alpha>0} (1 - q^{-1}(w alpha)(s)) (1 - (w alpha)(s)^{-1}),
//! so every numerator lives in Z[zeta_n][v, v^{-1}] and the truncated sums
//!
//!   d^{-1} = q^{dim B} sum_{J subset Sigma} P_J(q)^{-1} sum_{lambda in Lambda_J} |M(lambda, s)|^2
//!
//! reduce to integer Laurent accumulation: the |M|^2 sums group as
//! sum_{w,w'} (w lambda)(s) conj((w' lambda)(s)) * P_w * conj(P_{w'}),
//! one monomial shift of a precomputed product per (lambda, w, w').
//! Canonicalization to Q(zeta_n)(v) happens once per reported quantity.

use std::collections::BTreeMap;

use num::complex::Complex64;
use num::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::cyclotomic::{CyclotomicNumber, GaloisAutomorphism, Rat};
use crate::error::{Error, Result};
use crate::parameters::TorusPoint;
use crate::ratfun::{ratfun_from_zlaurent, IntegerPolynomial, RatFun, ZLaurent};
use crate::root_datum::{mask_to_subset, DominantWeight, RootDatum};
use crate::weyl::{poincare_polynomial, WeylGroup};

/// The exact engine for one (root datum, torus point) pair.
pub struct DegreeEngine<'a> {
    wg: &'a WeylGroup,
    s: TorusPoint,
    level: u32,
    /// n * torsion exponent per coordinate (integers once level = n).
    torsion_scaled: Vec<i64>,
    /// 2 * q-exponent per coordinate.
    q_exp2: Vec<i64>,
    /// P_w per Weyl element.
    p_w: Vec<ZLaurent>,
    /// C_{w,w'} = P_w * conj(P_{w'}).
    pair_products: Vec<Vec<ZLaurent>>,
    /// D = prod over all roots (1 - beta(s)).
    d_all: ZLaurent,
    /// D * conj(D).
    dd_bar: ZLaurent,
}

impl<'a> DegreeEngine<'a> {
    pub fn new(rd: &RootDatum, wg: &'a WeylGroup, s: &TorusPoint) -> Result<Self> {
        if !rd.is_semisimple() {
            return Err(Error::NotSemisimple);
        }
        if s.rank() != rd.rank() {
            return Err(Error::DimensionMismatch { expected: rd.rank(), got: s.rank() });
        }
        let level = s.level();
        let nl = level as i64;
        let torsion_scaled: Vec<i64> = s
            .torsion()
            .iter()
            .map(|a| {
                let scaled = a * crate::cyclotomic::rat_int(nl);
                scaled.to_integer().to_i64().expect("torsion overflow")
            })
            .collect();
        let q_exp2: Vec<i64> = s
            .q_exponents()
            .iter()
            .map(|m| {
                let scaled = m * crate::cyclotomic::rat_int(2);
                scaled.to_integer().to_i64().expect("exponent overflow")
            })
            .collect();
        let eval = |weight: &[i64]| -> (i64, i64) {
            let mut t = 0i64;
            let mut e = 0i64;
            for ((w, a), m) in weight.iter().zip(&torsion_scaled).zip(&q_exp2) {
                t += w * a;
                e += w * m;
            }
            (t.rem_euclid(nl), e)
        };
        // Regularity in the monomial sense; the per-term denominators would
        // otherwise vanish identically.
        for beta in rd.positive_roots() {
            let (t, e) = eval(beta);
            if t == 0 && e == 0 {
                return Err(Error::NonRegularParameter { root: beta.clone() });
            }
        }
        let order = wg.order();
        let mut p_w = Vec::with_capacity(order);
        for w in 0..order {
            let mut p = ZLaurent::one(level);
            for alpha in rd.positive_roots() {
                let (t, e) = eval(&wg.apply(w, alpha));
                // (1 - q^{-1} (w alpha)(s)) (1 - (w alpha)(s)^{-1})
                p = p.mul_one_minus(t, e - 2);
                p = p.mul_one_minus(-t, -e);
            }
            p_w.push(p);
        }
        let mut d_all = ZLaurent::one(level);
        for alpha in rd.positive_roots() {
            let (t, e) = eval(alpha);
            d_all = d_all.mul_one_minus(t, e);
            d_all = d_all.mul_one_minus(-t, -e);
        }
        let dd_bar = d_all.mul(&d_all.conj());
        let pair_products = (0..order)
            .map(|w| (0..order).map(|w2| p_w[w].mul(&p_w[w2].conj())).collect())
            .collect();
        Ok(DegreeEngine {
            wg,
            s: s.clone(),
            level,
            torsion_scaled,
            q_exp2,
            p_w,
            pair_products,
            d_all,
            dd_bar,
        })
    }

    pub fn torus_point(&self) -> &TorusPoint {
        &self.s
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    fn eval_fast(&self, weight: &[i64]) -> (i64, i64) {
        let mut t = 0i64;
        let mut e = 0i64;
        for ((w, a), m) in weight.iter().zip(&self.torsion_scaled).zip(&self.q_exp2) {
            t += w * a;
            e += w * m;
        }
        (t.rem_euclid(self.level as i64), e)
    }

    /// Numerator of M(lambda, s) over the fixed denominator D.
    fn m_numerator(&self, lambda: &[i64]) -> ZLaurent {
        let mut num = ZLaurent::zero(self.level);
        for w in 0..self.wg.order() {
            let (t, e) = self.eval_fast(&self.wg.apply(w, lambda));
            num.add_shifted(&self.p_w[w], t, e);
        }
        num
    }

    /// The symmetrized sum M(lambda, s) as a canonical rational function.
    pub fn m_function(&self, lambda: &[i64]) -> Result<RatFun> {
        ratfun_from_zlaurent(&self.m_numerator(lambda), &self.d_all)
    }

    /// |M(lambda, s)|^2 = M * conj(M); conjugation-fixed by construction.
    pub fn m_squared(&self, lambda: &[i64]) -> Result<RatFun> {
        let n = self.m_numerator(lambda);
        ratfun_from_zlaurent(&n.mul(&n.conj()), &self.dd_bar)
    }

    /// Exact numerators of sum |M|^2 per (stabilizer mask, height) sector,
    /// over the common denominator D * conj(D).
    fn sector_sums(&self, weights: &[DominantWeight]) -> BTreeMap<(u32, i64), ZLaurent> {
        let order = self.wg.order();
        let mut out: BTreeMap<(u32, i64), ZLaurent> = BTreeMap::new();
        let mut evals = vec![(0i64, 0i64); order];
        for dw in weights {
            for (w, e) in evals.iter_mut().enumerate() {
                *e = self.eval_fast(&self.wg.apply(w, &dw.weight));
            }
            let acc = out
                .entry((dw.stabilizer, dw.height))
                .or_insert_with(|| ZLaurent::zero(self.level));
            for (w, &(t1, e1)) in evals.iter().enumerate() {
                for (w2, &(t2, e2)) in evals.iter().enumerate() {
                    acc.add_shifted(&self.pair_products[w][w2], t1 - t2, e1 + e2);
                }
            }
        }
        out
    }
}

/// The exact truncated sums for one parameter: sector numerators over the
/// fixed denominator, reusable for the plain sum, the Poincare-weighted
/// Formula-A sum, and numeric evaluation, without recomputing the engine.
pub struct SumData {
    level: u32,
    dim_flag: usize,
    dd_bar: ZLaurent,
    sums: BTreeMap<(u32, i64), ZLaurent>,
}

impl SumData {
    pub fn compute(
        rd: &RootDatum,
        wg: &WeylGroup,
        s: &TorusPoint,
        weights: &[DominantWeight],
    ) -> Result<SumData> {
        let engine = DegreeEngine::new(rd, wg, s)?;
        let sums = engine.sector_sums(weights);
        Ok(SumData {
            level: engine.level,
            dim_flag: rd.dim_flag(),
            dd_bar: engine.dd_bar,
            sums,
        })
    }

    /// Canonical (Phi_n-reduced, trimmed) numerator and denominator of the
    /// plain sum: no gcd reduction, but coefficients are canonical field
    /// elements, so termwise comparisons are exact.
    pub fn plain_parts(&self) -> ((i64, Vec<CyclotomicNumber>), (i64, Vec<CyclotomicNumber>)) {
        let mut num = ZLaurent::zero(self.level);
        for sector in self.sums.values() {
            num.add_assign(sector);
        }
        (trimmed_cyclo_parts(&num), trimmed_cyclo_parts(&self.dd_bar))
    }

    /// The plain truncated sum as a fully reduced rational function.
    pub fn plain_ratfun(&self) -> Result<RatFun> {
        let mut num = ZLaurent::zero(self.level);
        for sector in self.sums.values() {
            num.add_assign(sector);
        }
        ratfun_from_zlaurent(&num, &self.dd_bar)
    }

    fn poincare_table(&self, rd: &RootDatum) -> Result<Vec<(u32, IntegerPolynomial)>> {
        let mut masks: Vec<u32> = self.sums.keys().map(|(m, _)| *m).collect();
        masks.sort_unstable();
        masks.dedup();
        masks
            .into_iter()
            .map(|mask| Ok((mask, poincare_polynomial(rd, &mask_to_subset(mask))?)))
            .collect()
    }

    /// The exact truncated Formula-A sum
    /// q^{dim B} sum_J P_J(q)^{-1} sum_{lambda in Lambda_J} |M|^2.
    pub fn inverse_ratfun(&self, rd: &RootDatum) -> Result<RatFun> {
        let poincare = self.poincare_table(rd)?;
        let mut den = self.dd_bar.clone();
        for (_, p) in &poincare {
            den = den.mul(&p.to_zlaurent(self.level));
        }
        let mut num = ZLaurent::zero(self.level);
        for ((mask, _), sector) in &self.sums {
            let mut term = sector.clone();
            for (other, p) in &poincare {
                if other != mask {
                    term = term.mul(&p.to_zlaurent(self.level));
                }
            }
            num.add_assign(&term);
        }
        let shift = ZLaurent::monomial(self.level, 0, 2 * self.dim_flag as i64);
        ratfun_from_zlaurent(&num.mul(&shift), &den)
    }

    /// Numeric value of the truncated Formula-A sum at q0: floating-point
    /// evaluation of the exact sector numerators (no canonicalization).
    pub fn numeric_inverse_at(&self, rd: &RootDatum, q0: &Rat) -> Result<f64> {
        let bound = self.sums.keys().map(|(_, h)| *h).max().unwrap_or(0);
        Ok(self.increments_at(rd, q0, bound)?.iter().sum())
    }

    /// Per-height increments of the inverse-degree sum at q0 (floating point
    /// evaluation of the exact numerators).
    pub fn increments_at(&self, rd: &RootDatum, q0: &Rat, height_bound: i64) -> Result<Vec<f64>> {
        let poincare = self.poincare_table(rd)?;
        let v0 = q0_to_v0(q0)?;
        let q = q0.to_f64().unwrap();
        let dd = self.dd_bar.eval(v0).re;
        let qdim = q.powi(self.dim_flag as i32);
        let mut out = vec![0.0f64; (height_bound + 1) as usize];
        for ((mask, height), sector) in &self.sums {
            let pj = poincare
                .iter()
                .find(|(m, _)| m == mask)
                .map(|(_, p)| p.eval_f64(q))
                .expect("mask in table");
            let val = (sector.eval(v0) / dd).re / pj * qdim;
            if let Some(slot) = out.get_mut(*height as usize) {
                *slot += val;
            }
        }
        Ok(out)
    }
}

fn trimmed_cyclo_parts(z: &ZLaurent) -> (i64, Vec<CyclotomicNumber>) {
    let (mut lo, mut coeffs) = z.to_cyclo_parts();
    let lead = coeffs.iter().take_while(|c| c.is_zero()).count();
    if lead > 0 {
        coeffs.drain(..lead);
        lo += lead as i64;
    }
    (lo, coeffs)
}

/// Exact termwise comparison of the plain sums at the canonical field level:
/// sum |M(lambda, gamma s)|^2 versus gamma applied coefficientwise to
/// sum |M(lambda, s)|^2. Both sides share the denominator structure, so the
/// comparison needs no gcd; the coefficients are canonical field elements.
pub fn termwise_plain_equal(
    twisted: &SumData,
    base: &SumData,
    gamma: &GaloisAutomorphism,
) -> Result<bool> {
    let ((nlo_t, num_t), (dlo_t, den_t)) = twisted.plain_parts();
    let ((nlo_b, num_b), (dlo_b, den_b)) = base.plain_parts();
    let apply = |v: &[CyclotomicNumber]| -> Result<Vec<CyclotomicNumber>> {
        v.iter().map(|c| gamma.apply(c)).collect()
    };
    Ok(nlo_t == nlo_b
        && dlo_t == dlo_b
        && num_t == apply(&num_b)?
        && den_t == apply(&den_b)?)
}

/// Per-parameter truncation and diagnostics of the formal-degree sum.
#[derive(Debug, Clone, Serialize)]
pub struct TailDiagnostics {
    pub last_increment: f64,
    /// Maximum ratio of consecutive per-height increments over the trailing
    /// window (nonpositive increments are treated as converged).
    pub tail_ratio: f64,
    pub decaying: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct GaloisVerdict {
    pub level: u32,
    pub exponent: u32,
    pub termwise_exact_equal: bool,
    pub numeric_degree_diff: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct FormalDegreeReport {
    pub datum: String,
    pub torus_point: TorusPoint,
    pub q0: String,
    pub height_bound: i64,
    pub rho_dim: u32,
    /// Exact truncated inverse degree (before the rho-dimension multiplier).
    pub partial_inverse_degree: RatFun,
    /// Exact truncated degree, when the inverse sum is even in v and rational.
    pub degree_exact: Option<String>,
    pub degree_numeric: f64,
    /// Per-height increments of the inverse-degree sum at q0.
    pub increments: Vec<f64>,
    pub tail: TailDiagnostics,
    pub galois_verdicts: Vec<GaloisVerdict>,
}

/// The exact truncated Formula-A double sum:
/// q^{dim B} sum_J P_J(q)^{-1} sum_{lambda in Lambda_J, ht <= bound} |M|^2.
pub fn partial_degree_inverse(rd: &RootDatum, s: &TorusPoint, height_bound: i64) -> Result<RatFun> {
    let wg = WeylGroup::new(rd)?;
    let weights = rd.enumerate_dominant(height_bound)?;
    SumData::compute(rd, &wg, s, &weights)?.inverse_ratfun(rd)
}

fn q0_to_v0(q0: &Rat) -> Result<f64> {
    let q = q0.to_f64().ok_or_else(|| Error::InvalidParameter("q0 out of range".into()))?;
    if q <= 1.0 {
        return Err(Error::InvalidParameter(format!("q0 = {q0} must exceed 1")));
    }
    Ok(q.sqrt())
}

/// Build the full report from precomputed sums.
pub fn report_from_sums(
    rd: &RootDatum,
    data: &SumData,
    s: &TorusPoint,
    q0: &Rat,
    height_bound: i64,
    tol: f64,
    rho_dim: u32,
) -> Result<FormalDegreeReport> {
    let inverse = data.inverse_ratfun(rd)?;
    let v0 = q0_to_v0(q0)?;
    let increments = data.increments_at(rd, q0, height_bound)?;
    let inv_numeric = {
        let val = inverse.eval_v_f64(v0)?;
        debug_assert!(val.im.abs() < 1e-9 * (1.0 + val.re.abs()));
        val.re
    };
    let degree_numeric = rho_dim as f64 / inv_numeric;
    let degree_exact = inverse
        .eval_q_exact(q0)
        .and_then(|r| r.ok())
        .and_then(|c| c.rational_part())
        .filter(|r| !r.is_zero())
        .map(|r| {
            let d = Rat::from_integer(rho_dim.into()) / r;
            crate::cyclotomic::rat_to_string(&d)
        });

    // Tail: examine the trailing half of the nonzero increments.
    let nonzero: Vec<f64> = increments.iter().copied().filter(|x| x.abs() > 0.0).collect();
    let window = (nonzero.len() / 2).max(1);
    let tail_slice = &nonzero[nonzero.len().saturating_sub(window)..];
    let mut tail_ratio = 0.0f64;
    for pair in tail_slice.windows(2) {
        if pair[0] > 0.0 {
            tail_ratio = tail_ratio.max(pair[1] / pair[0]);
        }
    }
    let last_increment = nonzero.last().copied().unwrap_or(0.0);
    let decaying = tail_ratio < 1.0 && last_increment <= tol.max(f64::EPSILON) * inv_numeric.abs();
    Ok(FormalDegreeReport {
        datum: rd.name().to_string(),
        torus_point: s.clone(),
        q0: q0.to_string(),
        height_bound,
        rho_dim,
        partial_inverse_degree: inverse,
        degree_exact,
        degree_numeric,
        increments,
        tail: TailDiagnostics { last_increment, tail_ratio, decaying },
        galois_verdicts: vec![],
    })
}

/// Numeric formal degree with convergence diagnostics.
///
/// Inverts the truncated sum at q0 and applies the dim(rho) multiplier. The
/// tail is estimated from the per-height increments of the sum; failure to
/// decay is flagged, never thrown.
pub fn degree_numeric(
    rd: &RootDatum,
    s: &TorusPoint,
    q0: &Rat,
    height_bound: i64,
    tol: f64,
    rho_dim: u32,
) -> Result<FormalDegreeReport> {
    let wg = WeylGroup::new(rd)?;
    let weights = rd.enumerate_dominant(height_bound)?;
    let data = SumData::compute(rd, &wg, s, &weights)?;
    report_from_sums(rd, &data, s, q0, height_bound, tol, rho_dim)
}

/// M(lambda, s) as a canonical rational function (one-shot construction).
pub fn m_function(rd: &RootDatum, lambda: &[i64], s: &TorusPoint) -> Result<RatFun> {
    let wg = WeylGroup::new(rd)?;
    DegreeEngine::new(rd, &wg, s)?.m_function(lambda)
}

/// |M(lambda, s)|^2 together with its defining data.
#[derive(Debug, Clone, Serialize)]
pub struct MSquaredTerm {
    pub lambda: Vec<i64>,
    pub stabilizer: Vec<usize>,
    pub value: RatFun,
}

pub fn m_squared(rd: &RootDatum, lambda: &[i64], s: &TorusPoint) -> Result<MSquaredTerm> {
    let wg = WeylGroup::new(rd)?;
    let value = DegreeEngine::new(rd, &wg, s)?.m_squared(lambda)?;
    debug_assert_eq!(value, value.conj(), "|M|^2 must be conjugation-fixed");
    Ok(MSquaredTerm { lambda: lambda.to_vec(), stabilizer: rd.weight_stabilizer(lambda)?, value })
}

/// The plain truncated sum sum_{ht <= bound} |M(lambda, s)|^2 (no Poincare
/// weights): the quantity entering the termwise Galois identity.
pub fn plain_m_squared_sum(rd: &RootDatum, s: &TorusPoint, height_bound: i64) -> Result<RatFun> {
    let wg = WeylGroup::new(rd)?;
    let weights = rd.enumerate_dominant(height_bound)?;
    SumData::compute(rd, &wg, s, &weights)?.plain_ratfun()
}

/// Independent floating-point recomputation of the truncated degree: complex
/// arithmetic throughout, per-term (no shared numerator factorization), with
/// the canonical (height, lex) summation order.
pub fn float_oracle_degree(
    rd: &RootDatum,
    s: &TorusPoint,
    q0: &Rat,
    height_bound: i64,
) -> Result<f64> {
    let wg = WeylGroup::new(rd)?;
    if !rd.is_semisimple() {
        return Err(Error::NotSemisimple);
    }
    for beta in rd.positive_roots() {
        let (t, e) = s.eval_exponents(beta, s.level())?;
        if t == 0 && e == 0 {
            return Err(Error::NonRegularParameter { root: beta.clone() });
        }
    }
    let weights = rd.enumerate_dominant(height_bound)?;
    let v0 = q0_to_v0(q0)?;
    let q = q0.to_f64().unwrap();
    let mut sums: BTreeMap<u32, f64> = BTreeMap::new();
    for dw in &weights {
        let m = float_oracle_m_at(rd, &wg, s, &dw.weight, v0)?;
        *sums.entry(dw.stabilizer).or_insert(0.0) += m.norm_sqr();
    }
    let mut inverse = 0.0;
    for (mask, total) in sums {
        let p = poincare_polynomial(rd, &mask_to_subset(mask))?;
        inverse += total / p.eval_f64(q);
    }
    inverse *= q.powi(rd.dim_flag() as i32);
    Ok(1.0 / inverse)
}

/// Complex value of M(lambda, s) at v = sqrt(q0) under the standard embedding.
pub fn float_oracle_m(
    rd: &RootDatum,
    lambda: &[i64],
    s: &TorusPoint,
    q0: &Rat,
) -> Result<Complex64> {
    let wg = WeylGroup::new(rd)?;
    float_oracle_m_at(rd, &wg, s, lambda, q0_to_v0(q0)?)
}

fn float_oracle_m_at(
    rd: &RootDatum,
    wg: &WeylGroup,
    s: &TorusPoint,
    lambda: &[i64],
    v0: f64,
) -> Result<Complex64> {
    let n = s.level();
    let eval = |weight: &[i64]| -> Result<Complex64> {
        let (t, e) = s.eval_exponents(weight, n)?;
        let theta = 2.0 * std::f64::consts::PI * (t as f64) / (n as f64);
        Ok(Complex64::from_polar(v0.powi(e as i32), theta))
    };
    let qinv = 1.0 / (v0 * v0);
    let mut total = Complex64::new(0.0, 0.0);
    for w in 0..wg.order() {
        let mut term = eval(&wg.apply(w, lambda))?;
        for alpha in rd.positive_roots() {
            let a = eval(&wg.apply(w, alpha))?;
            term *= (Complex64::new(1.0, 0.0) - a * qinv) / (Complex64::new(1.0, 0.0) - a);
        }
        total += term;
    }
    Ok(total)
}

/// The Galois-invariance verdict for one automorphism: the exact termwise
/// identity sum |M(lambda, gamma(s))|^2 = gamma(sum |M(lambda, s)|^2) as
/// canonical rational functions, and the numeric formal-degree difference.
pub fn galois_invariance_report(
    rd: &RootDatum,
    s: &TorusPoint,
    gamma: &GaloisAutomorphism,
    height_bound: i64,
    q0: &Rat,
    rho_dim: u32,
) -> Result<FormalDegreeReport> {
    let twisted = s.galois(gamma)?;
    let wg = WeylGroup::new(rd)?;
    let weights = rd.enumerate_dominant(height_bound)?;
    let base = SumData::compute(rd, &wg, s, &weights)?;
    let other = SumData::compute(rd, &wg, &twisted, &weights)?;
    let termwise_exact_equal = other.plain_ratfun()? == base.plain_ratfun()?.galois(gamma)?;

    let mut report = report_from_sums(rd, &base, s, q0, height_bound, 1e-6, rho_dim)?;
    let twisted_report = report_from_sums(rd, &other, &twisted, q0, height_bound, 1e-6, rho_dim)?;
    let numeric_degree_diff = (report.degree_numeric - twisted_report.degree_numeric).abs();
    report.galois_verdicts.push(GaloisVerdict {
        level: gamma.level(),
        exponent: gamma.exponent(),
        termwise_exact_equal,
        numeric_degree_diff,
    });
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::{rat, rat_int, CyclotomicNumber};
    use crate::parameters::{adjoint_projection, build_parameter, steinberg_point, TorusPoint};
    use crate::ratfun::RatFun;
    use crate::root_datum::{RootDatum, RootDatumSpec};

    fn sl2() -> RootDatum {
        RootDatum::build(&RootDatumSpec::parse_shorthand("A1-sc").unwrap()).unwrap()
    }

    fn one_plus_v_minus2() -> RatFun {
        RatFun::one()
            .add(&RatFun::monomial(CyclotomicNumber::one(), -2))
            .unwrap()
    }

    #[test]
    fn m_at_steinberg_point() {
        let rd = sl2();
        let s = steinberg_point(&rd).unwrap();
        // lambda = 0: identity term vanishes, reflection term gives 1 + v^{-2}.
        assert_eq!(m_function(&rd, &[0], &s).unwrap(), one_plus_v_minus2());
        // lambda = m omega: v^{-m} (1 + v^{-2}).
        for m in 1..=4i64 {
            let expected = RatFun::monomial(CyclotomicNumber::one(), -m)
                .mul(&one_plus_v_minus2())
                .unwrap();
            assert_eq!(m_function(&rd, &[m], &s).unwrap(), expected);
        }
    }

    #[test]
    fn m_torsion_only_point() {
        // alpha(s) = zeta_3: M(0, s) = 1 + v^{-2}, matching the float oracle.
        let rd = sl2();
        let s = TorusPoint::new(vec![rat(2, 3)], vec![Rat::zero()]).unwrap();
        let n = s.level();
        assert_eq!(s.eval_exponents(&rd.simple_roots()[0], n).unwrap(), (1, 0));
        let m = m_function(&rd, &[0], &s).unwrap();
        assert_eq!(m, one_plus_v_minus2());
        let exact = m.eval_v_f64(2f64.sqrt()).unwrap();
        let oracle = float_oracle_m(&rd, &[0], &s, &rat_int(2)).unwrap();
        assert!((exact - oracle).norm() < 1e-10 * oracle.norm());
    }

    #[test]
    fn m_squared_examples() {
        let rd = sl2();
        let s = steinberg_point(&rd).unwrap();
        for m in 0..=3i64 {
            let term = m_squared(&rd, &[m], &s).unwrap();
            let expected = RatFun::monomial(CyclotomicNumber::one(), -2 * m)
                .mul(&one_plus_v_minus2())
                .unwrap()
                .mul(&one_plus_v_minus2())
                .unwrap();
            assert_eq!(term.value, expected);
            assert_eq!(term.value, term.value.conj());
            // Cross-check against the RatFun route M * conj(M).
            let mf = m_function(&rd, &[m], &s).unwrap();
            assert_eq!(term.value, mf.mul(&mf.conj()).unwrap());
        }
    }

    #[test]
    fn m_is_weyl_invariant_in_s() {
        let rd = sl2();
        let wg = WeylGroup::new(&rd).unwrap();
        let s = TorusPoint::new(vec![rat(1, 5)], vec![rat(1, 2)]).unwrap();
        let translated = s.weyl_translate(&wg, 1);
        for lam in [vec![0i64], vec![1], vec![3]] {
            assert_eq!(
                m_function(&rd, &lam, &s).unwrap(),
                m_function(&rd, &lam, &translated).unwrap()
            );
        }
    }

    #[test]
    fn non_regular_parameter_is_detected() {
        let rd = sl2();
        let s = TorusPoint::new(vec![Rat::zero()], vec![Rat::zero()]).unwrap();
        assert!(matches!(
            m_function(&rd, &[0], &s),
            Err(Error::NonRegularParameter { .. })
        ));
    }

    #[test]
    fn steinberg_partial_sum_bound_10() {
        // Hand-derived oracle: the closed geometric partial sum
        // q (1 + q^{-1})^2 (1/(1+q) + sum_{m=1}^{10} q^{-m}) at q = 2
        // equals 12279/2048.
        let rd = sl2();
        let s = steinberg_point(&rd).unwrap();
        let inv = partial_degree_inverse(&rd, &s, 10).unwrap();
        let val = inv.eval_q_exact(&rat_int(2)).unwrap().unwrap();
        assert_eq!(val.rational_part(), Some(rat(12279, 2048)));
        // And symbolically at bound 0: q (1 + q^{-1})^2 / (1 + q).
        let inv0 = partial_degree_inverse(&rd, &s, 0).unwrap();
        let val0 = inv0.eval_q_exact(&rat_int(2)).unwrap().unwrap();
        assert_eq!(val0.rational_part(), Some(rat(3, 2)));
    }

    #[test]
    fn steinberg_degree_numeric() {
        let rd = sl2();
        let s = steinberg_point(&rd).unwrap();
        let report = degree_numeric(&rd, &s, &rat_int(2), 40, 1e-6, 1).unwrap();
        assert!((report.degree_numeric - 1.0 / 6.0).abs() < 1e-6);
        assert!(report.tail.decaying);
        let report3 = degree_numeric(&rd, &s, &rat_int(3), 40, 1e-6, 1).unwrap();
        assert!((report3.degree_numeric - 0.25).abs() < 1e-6);
        // dim(rho) scaling.
        let scaled = degree_numeric(&rd, &s, &rat_int(2), 40, 1e-6, 2).unwrap();
        assert!((scaled.degree_numeric - 1.0 / 3.0).abs() < 2e-6);
    }

    #[test]
    fn float_oracle_agrees_with_exact_engine() {
        let rd = sl2();
        let s = steinberg_point(&rd).unwrap();
        for (q, bound) in [(rat_int(2), 10i64), (rat_int(3), 12), (rat_int(4), 10)] {
            let report = degree_numeric(&rd, &s, &q, bound, 1e-6, 1).unwrap();
            let oracle = float_oracle_degree(&rd, &s, &q, bound).unwrap();
            assert!(
                (report.degree_numeric - oracle).abs() < 1e-9 * oracle.abs(),
                "q={q} bound={bound}"
            );
        }
        // Torsion parameter at level 5 with N = 0 on the adjoint side.
        let p = build_parameter(2, &[1, 1], &[rat(1, 5), rat(3, 5)], 1).unwrap();
        let (rda, sa) = adjoint_projection(&p).unwrap();
        let report = degree_numeric(&rda, &sa, &rat_int(2), 14, 1e-6, 1).unwrap();
        let oracle = float_oracle_degree(&rda, &sa, &rat_int(2), 14).unwrap();
        assert!((report.degree_numeric - oracle).abs() < 1e-9 * oracle.abs());
    }

    #[test]
    fn rational_specialization_at_v_two() {
        // q0 = 4 makes v = 2 rational: the exact engine evaluates fully
        // rationally and matches the float oracle to 1e-10.
        let rd = sl2();
        let s = steinberg_point(&rd).unwrap();
        let inv = partial_degree_inverse(&rd, &s, 12).unwrap();
        let exact = inv.eval_v_rational(&rat_int(2)).unwrap();
        let exact_rat = exact.rational_part().unwrap();
        let oracle = float_oracle_degree(&rd, &s, &rat_int(4), 12).unwrap();
        let exact_f = exact_rat.to_f64().unwrap();
        assert!((1.0 / exact_f - oracle).abs() < 1e-10 * oracle.abs());
    }

    #[test]
    fn partial_sums_monotone_and_tail_decay() {
        let rd = sl2();
        let s = steinberg_point(&rd).unwrap();
        let report = degree_numeric(&rd, &s, &rat_int(2), 40, 1e-6, 1).unwrap();
        // Increments are nonnegative, so partial sums are nondecreasing.
        assert!(report.increments.iter().all(|&x| x >= 0.0));
        // Heights 10..40: consecutive ratio is exactly 1/2 at q = 2.
        for h in 10..40 {
            let r = report.increments[h + 1] / report.increments[h];
            assert!((r - 0.5).abs() < 1e-9, "ratio at height {h} was {r}");
        }
    }

    #[test]
    fn termwise_galois_identity_per_lambda() {
        // |M(lambda, gamma(s))|^2 = gamma(|M(lambda, s)|^2), exactly.
        let p = build_parameter(2, &[1, 1], &[rat(1, 5), rat(3, 5)], 1).unwrap();
        let (rd, s) = adjoint_projection(&p).unwrap();
        for g in GaloisAutomorphism::all(5) {
            let twisted = s.galois(&g).unwrap();
            for lam in [vec![0i64], vec![1], vec![2], vec![5]] {
                let lhs = m_squared(&rd, &lam, &twisted).unwrap().value;
                let rhs = m_squared(&rd, &lam, &s).unwrap().value.galois(&g).unwrap();
                assert_eq!(lhs, rhs, "lambda {lam:?}, k={}", g.exponent());
            }
        }
    }

    #[test]
    fn termwise_fast_path_matches_canonical_route() {
        // The gcd-free comparison and the canonical RatFun comparison must
        // decide identically.
        let p = build_parameter(3, &[2, 1], &[rat(1, 8), rat(1, 8), rat(3, 8)], 1).unwrap();
        let (rd, s) = adjoint_projection(&p).unwrap();
        let wg = WeylGroup::new(&rd).unwrap();
        let weights = rd.enumerate_dominant(10).unwrap();
        let base = SumData::compute(&rd, &wg, &s, &weights).unwrap();
        for g in GaloisAutomorphism::all(8) {
            let twisted_pt = s.galois(&g).unwrap();
            let twisted = SumData::compute(&rd, &wg, &twisted_pt, &weights).unwrap();
            let fast = termwise_plain_equal(&twisted, &base, &g).unwrap();
            let canonical =
                twisted.plain_ratfun().unwrap() == base.plain_ratfun().unwrap().galois(&g).unwrap();
            assert_eq!(fast, canonical);
            assert!(fast);
        }
    }

    #[test]
    fn galois_report_steinberg_is_exactly_fixed() {
        let rd = sl2();
        let s = steinberg_point(&rd).unwrap();
        let g = GaloisAutomorphism::new(7, 3).unwrap();
        let report = galois_invariance_report(&rd, &s, &g, 20, &rat_int(2), 1).unwrap();
        let v = &report.galois_verdicts[0];
        assert!(v.termwise_exact_equal);
        assert_eq!(v.numeric_degree_diff, 0.0);
    }

    #[test]
    fn galois_report_torsion_point() {
        // SL2, N = 0, torsion 1/5: the identity of the proof, mechanically.
        let rd = sl2();
        let s = TorusPoint::new(vec![rat(1, 5)], vec![Rat::zero()]).unwrap();
        for g in GaloisAutomorphism::all(5) {
            let report = galois_invariance_report(&rd, &s, &g, 16, &rat_int(2), 1).unwrap();
            assert!(report.galois_verdicts[0].termwise_exact_equal);
        }
    }

    #[test]
    fn self_paired_parameter_has_rational_partial_sums() {
        // SL2, N = 0, torsion 1/4: every Galois twist lands back in the
        // W-orbit, so the truncated inverse degree has rational coefficients.
        let rd = sl2();
        let s = TorusPoint::new(vec![rat(1, 4)], vec![Rat::zero()]).unwrap();
        let inv = partial_degree_inverse(&rd, &s, 12).unwrap();
        for c in inv.numerator().iter().chain(inv.denominator()) {
            assert!(c.rational_part().is_some(), "non-rational coefficient {c}");
        }
    }

    #[test]
    fn rank_zero_degree_is_one() {
        let p = build_parameter(1, &[1], &[rat(1, 3)], 1).unwrap();
        let (rd, s) = adjoint_projection(&p).unwrap();
        let report = degree_numeric(&rd, &s, &rat_int(2), 10, 1e-6, 1).unwrap();
        assert_eq!(report.degree_numeric, 1.0);
        assert_eq!(report.degree_exact.as_deref(), Some("1/1"));
    }

    #[test]
    fn sl3_central_twist_degrees_match() {
        // SL3 simply connected, Steinberg q-part, central zeta_3 torsion.
        let rd = RootDatum::build(&RootDatumSpec::parse_shorthand("A2-sc").unwrap()).unwrap();
        let st = steinberg_point(&rd).unwrap();
        let torsion = crate::parameters::type_a_central_torsion(2, 1);
        let s = TorusPoint::new(torsion, st.q_exponents().to_vec()).unwrap();
        let g = GaloisAutomorphism::new(3, 2).unwrap();
        let report = galois_invariance_report(&rd, &s, &g, 14, &rat_int(2), 1).unwrap();
        let v = &report.galois_verdicts[0];
        assert!(v.termwise_exact_equal);
        assert!(v.numeric_degree_diff < 1e-8);
    }
}

