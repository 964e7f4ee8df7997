//! The affine Hecke algebra in the Bernstein presentation over Z[v, v^{-1}],
//! q = v^2: basis theta_lambda T_w, with the defining relations
//!
//!   (T_s - q)(T_s + 1) = 0,            braid relations,
//!   theta_lambda theta_mu = theta_{lambda+mu},
//!   theta_lambda T_s - T_s theta_{s lambda}
//!       = (q-1)(theta_lambda - theta_{s lambda}) / (1 - theta_{-alpha}),
//!
//! where the right side expands to a finite integer combination of thetas.
//! Every product is rewritten to the theta-left normal form, and the
//! multiplication is cross-checked against the induced polynomial
//! representation (Demazure-Lusztig operators), which is exact on any finite
//! window of lattice monomials.

use std::collections::BTreeMap;

use num::{BigInt, Zero};
use serde::Serialize;

use crate::cyclotomic::GaloisAutomorphism;
use crate::error::{Error, Result};
use crate::parameters::{central_character_orbit, TorusPoint};
use crate::ratfun::RatFun;
use crate::root_datum::{pairing, RootDatum};
use crate::weyl::WeylGroup;

// ---------------------------------------------------------------------------
// Integer Laurent polynomials in v
// ---------------------------------------------------------------------------

/// An element of Z[v, v^{-1}], trimmed at both ends; empty means zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentInt {
    lo: i64,
    coeffs: Vec<BigInt>,
}

impl LaurentInt {
    pub fn zero() -> Self {
        LaurentInt { lo: 0, coeffs: vec![] }
    }

    pub fn one() -> Self {
        Self::monomial(0, 1)
    }

    pub fn monomial(v_pow: i64, c: i64) -> Self {
        if c == 0 {
            return Self::zero();
        }
        LaurentInt { lo: v_pow, coeffs: vec![BigInt::from(c)] }
    }

    /// q = v^2.
    pub fn q() -> Self {
        Self::monomial(2, 1)
    }

    /// q - 1.
    pub fn q_minus_one() -> Self {
        Self::q().add(&Self::monomial(0, -1))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.lo += lead as i64;
        }
        if self.coeffs.is_empty() {
            self.lo = 0;
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let lo = self.lo.min(other.lo);
        let hi = (self.lo + self.coeffs.len() as i64).max(other.lo + other.coeffs.len() as i64);
        let mut coeffs = vec![BigInt::zero(); (hi - lo) as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[(self.lo - lo) as usize + i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            coeffs[(other.lo - lo) as usize + i] += c;
        }
        let mut out = LaurentInt { lo, coeffs };
        out.trim();
        out
    }

    pub fn neg(&self) -> Self {
        LaurentInt { lo: self.lo, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        let mut out = LaurentInt { lo: self.lo + other.lo, coeffs };
        out.trim();
        out
    }

    /// Specialize v = 1.
    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    pub fn to_ratfun(&self) -> RatFun {
        let mut acc = RatFun::zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                let coeff = crate::cyclotomic::CyclotomicNumber::from_rat(
                    crate::cyclotomic::Rat::from(c.clone()),
                );
                acc = acc
                    .add(&RatFun::monomial(coeff, self.lo + i as i64))
                    .expect("laurent conversion");
            }
        }
        acc
    }

    fn wire(&self) -> (i64, Vec<String>) {
        (self.lo, self.coeffs.iter().map(|c| c.to_string()).collect())
    }
}

// ---------------------------------------------------------------------------
// Hecke elements
// ---------------------------------------------------------------------------

/// An element in theta-left normal form: a finite sum of
/// coeff * theta_lambda * T_w with coeff in Z[v, v^{-1}].
/// Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeckeElement {
    terms: BTreeMap<(Vec<i64>, usize), LaurentInt>,
}

impl HeckeElement {
    pub fn zero() -> Self {
        HeckeElement { terms: BTreeMap::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Vec<i64>, usize), &LaurentInt)> {
        self.terms.iter()
    }

    fn insert(&mut self, lambda: Vec<i64>, w: usize, c: LaurentInt) {
        if c.is_zero() {
            return;
        }
        let key = (lambda, w);
        match self.terms.get_mut(&key) {
            Some(existing) => {
                let sum = existing.add(&c);
                if sum.is_zero() {
                    self.terms.remove(&key);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for ((l, w), c) in &other.terms {
            out.insert(l.clone(), *w, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for ((l, w), c) in &other.terms {
            out.insert(l.clone(), *w, c.neg());
        }
        out
    }

    pub fn scale(&self, c: &LaurentInt) -> Self {
        let mut out = HeckeElement::zero();
        for ((l, w), x) in &self.terms {
            out.insert(l.clone(), *w, x.mul(c));
        }
        out
    }

    /// True when the element lies in the Bernstein (theta) subalgebra.
    pub fn is_theta_only(&self) -> bool {
        self.terms.keys().all(|(_, w)| *w == 0)
    }
}

#[derive(Serialize)]
struct HeckeTermWire {
    lambda: Vec<i64>,
    w_word: Vec<usize>,
    coeff_lo: i64,
    coeff: Vec<String>,
}

/// Serializable view of an element (the word realizes the stored w index).
pub fn element_wire(alg: &HeckeAlgebra, e: &HeckeElement) -> Vec<impl Serialize> {
    e.terms
        .iter()
        .map(|((l, w), c)| {
            let (coeff_lo, coeff) = c.wire();
            HeckeTermWire {
                lambda: l.clone(),
                w_word: alg.weyl.element(*w).word.clone(),
                coeff_lo,
                coeff,
            }
        })
        .collect()
}

// ---------------------------------------------------------------------------
// The algebra
// ---------------------------------------------------------------------------

pub struct HeckeAlgebra {
    rd: RootDatum,
    weyl: WeylGroup,
}

impl HeckeAlgebra {
    pub fn new(rd: &RootDatum) -> Result<Self> {
        let weyl = WeylGroup::new(rd)?;
        Ok(HeckeAlgebra { rd: rd.clone(), weyl })
    }

    pub fn root_datum(&self) -> &RootDatum {
        &self.rd
    }

    pub fn weyl(&self) -> &WeylGroup {
        &self.weyl
    }

    pub fn one(&self) -> HeckeElement {
        self.theta(&vec![0; self.rd.rank()])
    }

    pub fn theta(&self, lambda: &[i64]) -> HeckeElement {
        let mut e = HeckeElement::zero();
        e.insert(lambda.to_vec(), 0, LaurentInt::one());
        e
    }

    pub fn t_simple(&self, i: usize) -> HeckeElement {
        let w = self.weyl.right_multiply(0, i);
        let mut e = HeckeElement::zero();
        e.insert(vec![0; self.rd.rank()], w, LaurentInt::one());
        e
    }

    /// T_w for a (not necessarily reduced) word, built by multiplication.
    pub fn t_word(&self, word: &[usize]) -> HeckeElement {
        let mut e = self.one();
        for &i in word {
            e = self.multiply(&e, &self.t_simple(i));
        }
        e
    }

    /// The geometric-series expansion
    /// (theta_mu - theta_{s_i mu}) / (1 - theta_{-alpha_i})
    /// as a list of (weight, sign) pairs; always finite.
    fn cross_expansion(&self, i: usize, mu: &[i64]) -> Vec<(Vec<i64>, i64)> {
        let d = pairing(mu, &self.rd.simple_coroots()[i]);
        let alpha = &self.rd.simple_roots()[i];
        let mut out = Vec::new();
        if d >= 1 {
            // sum_{j=0}^{d-1} theta_{mu - j alpha}
            for j in 0..d {
                let w: Vec<i64> = mu.iter().zip(alpha).map(|(m, a)| m - j * a).collect();
                out.push((w, 1));
            }
        } else if d <= -1 {
            // -sum_{j=1}^{-d} theta_{mu + j alpha}
            for j in 1..=(-d) {
                let w: Vec<i64> = mu.iter().zip(alpha).map(|(m, a)| m + j * a).collect();
                out.push((w, -1));
            }
        }
        out
    }

    /// Left multiplication by T_{s_i}, keeping the normal form.
    fn t_simple_times(&self, i: usize, e: &HeckeElement) -> HeckeElement {
        let q = LaurentInt::q();
        let qm1 = LaurentInt::q_minus_one();
        let mut out = HeckeElement::zero();
        for ((lambda, w), c) in &e.terms {
            // T_i theta_lambda = theta_{s_i lambda} T_i + (q-1) * expansion.
            let s_lambda = self.rd.simple_reflection(i, lambda);
            let siw = self.weyl.left_multiply(i, *w);
            if self.weyl.element(siw).length > self.weyl.element(*w).length {
                out.insert(s_lambda.clone(), siw, c.clone());
            } else {
                // T_i T_w = q T_{s_i w} + (q-1) T_w when the length drops.
                out.insert(s_lambda.clone(), siw, c.mul(&q));
                out.insert(s_lambda.clone(), *w, c.mul(&qm1));
            }
            for (mu, sign) in self.cross_expansion(i, lambda) {
                out.insert(mu, *w, c.mul(&qm1).mul(&LaurentInt::monomial(0, sign)));
            }
        }
        out
    }

    pub fn multiply(&self, a: &HeckeElement, b: &HeckeElement) -> HeckeElement {
        let mut out = HeckeElement::zero();
        for ((lambda, w), c) in &a.terms {
            // mid = T_w * b, then shift by theta_lambda and scale.
            let mut mid = b.clone();
            for &i in self.weyl.element(*w).word.clone().iter().rev() {
                mid = self.t_simple_times(i, &mid);
            }
            for ((mu, x), d) in &mid.terms {
                let shifted: Vec<i64> = lambda.iter().zip(mu).map(|(a, b)| a + b).collect();
                out.insert(shifted, *x, c.mul(d));
            }
        }
        out
    }

    /// Evaluate a W-invariant theta-sum at a torus point (checked).
    pub fn central_character(&self, s: &TorusPoint, f: &HeckeElement) -> Result<RatFun> {
        if s.rank() != self.rd.rank() {
            return Err(Error::DimensionMismatch { expected: self.rd.rank(), got: s.rank() });
        }
        if !f.is_theta_only() {
            return Err(Error::InvalidParameter(
                "central characters are defined on the Bernstein subalgebra".into(),
            ));
        }
        // W-invariance: equal coefficients along every orbit meeting the support.
        for ((lambda, _), c) in &f.terms {
            for w in 0..self.weyl.order() {
                let img = self.weyl.apply(w, lambda);
                let other = f.terms.get(&(img.clone(), 0)).cloned().unwrap_or_else(LaurentInt::zero);
                if other != *c {
                    return Err(Error::NonInvariant(lambda.clone()));
                }
            }
        }
        let mut acc = RatFun::zero();
        for ((lambda, _), c) in &f.terms {
            let value = s.eval_ratfun(lambda)?;
            acc = acc.add(&value.mul(&c.to_ratfun())?)?;
        }
        Ok(acc)
    }

    /// The W-orbit sum of theta_lambda: a central element (Bernstein).
    pub fn orbit_sum(&self, lambda: &[i64]) -> HeckeElement {
        let mut orbit: Vec<Vec<i64>> =
            (0..self.weyl.order()).map(|w| self.weyl.apply(w, lambda)).collect();
        orbit.sort();
        orbit.dedup();
        let mut e = HeckeElement::zero();
        for mu in orbit {
            e.insert(mu, 0, LaurentInt::one());
        }
        e
    }

    pub fn central_character_orbit(&self, s: &TorusPoint) -> CentralCharacter {
        CentralCharacter { rep: central_character_orbit(&self.weyl, s) }
    }
}

/// A central character: the W-orbit of a torus point, stored through its
/// canonical representative.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CentralCharacter {
    rep: TorusPoint,
}

impl CentralCharacter {
    pub fn representative(&self) -> &TorusPoint {
        &self.rep
    }

    /// The orbit of the coefficientwise Galois image, re-canonicalized.
    pub fn galois_image(&self, alg: &HeckeAlgebra, g: &GaloisAutomorphism) -> Result<Self> {
        Ok(CentralCharacter { rep: central_character_orbit(alg.weyl(), &self.rep.galois(g)?) })
    }
}

// ---------------------------------------------------------------------------
// Polynomial representation (the independent multiplication model)
// ---------------------------------------------------------------------------

/// Laurant-lattice polynomials: finitely many monomials x^mu with
/// Z[v, v^{-1}] coefficients.
type LatticePoly = BTreeMap<Vec<i64>, LaurentInt>;

fn lattice_insert(f: &mut LatticePoly, mu: Vec<i64>, c: LaurentInt) {
    if c.is_zero() {
        return;
    }
    match f.get_mut(&mu) {
        Some(existing) => {
            let sum = existing.add(&c);
            if sum.is_zero() {
                f.remove(&mu);
            } else {
                *existing = sum;
            }
        }
        None => {
            f.insert(mu, c);
        }
    }
}

/// T_i acting on the induced module C[X] (Demazure-Lusztig):
/// T_i x^mu = q x^{s_i mu} + (q-1) (x^mu - x^{s_i mu}) / (1 - x^{-alpha_i}).
fn op_t_simple(alg: &HeckeAlgebra, i: usize, f: &LatticePoly) -> LatticePoly {
    let q = LaurentInt::q();
    let qm1 = LaurentInt::q_minus_one();
    let mut out = LatticePoly::new();
    for (mu, c) in f {
        lattice_insert(&mut out, alg.rd.simple_reflection(i, mu), c.mul(&q));
        for (nu, sign) in alg.cross_expansion(i, mu) {
            lattice_insert(&mut out, nu, c.mul(&qm1).mul(&LaurentInt::monomial(0, sign)));
        }
    }
    out
}

/// Apply a normal-form element through the polynomial representation.
fn op_element(alg: &HeckeAlgebra, e: &HeckeElement, f: &LatticePoly) -> LatticePoly {
    let mut out = LatticePoly::new();
    for ((lambda, w), c) in &e.terms {
        let mut g = f.clone();
        for &i in alg.weyl.element(*w).word.clone().iter().rev() {
            g = op_t_simple(alg, i, &g);
        }
        for (mu, d) in g {
            let shifted: Vec<i64> = lambda.iter().zip(&mu).map(|(a, b)| a + b).collect();
            lattice_insert(&mut out, shifted, d.mul(c));
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Relation verification
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize)]
pub struct RelationCheck {
    pub name: String,
    pub ok: bool,
    pub witness: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct RelationReport {
    pub datum: String,
    pub length_bound: i64,
    pub checks: Vec<RelationCheck>,
}

impl RelationReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }
}

fn box_weights(rank: usize, radius: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..rank {
        let mut next = Vec::new();
        for prefix in &out {
            for v in -radius..=radius {
                let mut p = prefix.clone();
                p.push(v);
                next.push(p);
            }
        }
        out = next;
    }
    out
}

/// Verify the defining relations and cross-check the rewriting engine against
/// the polynomial representation. Failures become report entries, not errors.
pub fn verify_relations(rd: &RootDatum, length_bound: i64) -> Result<RelationReport> {
    if rd.num_simple() > 3 {
        return Err(Error::SizeGuardExceeded {
            what: format!("rank {} for relation suite", rd.num_simple()),
            limit: 3,
        });
    }
    let alg = HeckeAlgebra::new(rd)?;
    let mut checks = Vec::new();
    let mut push = |name: String, ok: bool, witness: Option<String>| {
        checks.push(RelationCheck { name, ok, witness });
    };
    let m = rd.num_simple();
    let q = LaurentInt::q();
    let qm1 = LaurentInt::q_minus_one();

    // Quadratic: T_i^2 = (q-1) T_i + q.
    for i in 0..m {
        let t = alg.t_simple(i);
        let lhs = alg.multiply(&t, &t);
        let rhs = t.scale(&qm1).add(&alg.one().scale(&q));
        let ok = lhs == rhs;
        push(format!("quadratic T_{i}"), ok, (!ok).then(|| format!("T_{i}^2 mismatch")));
    }

    // Braid relations, order from the Cartan integers.
    for i in 0..m {
        for j in (i + 1)..m {
            let c = rd.cartan_matrix()[i][j] * rd.cartan_matrix()[j][i];
            let order = match c {
                0 => 2,
                1 => 3,
                2 => 4,
                3 => 6,
                _ => {
                    push(
                        format!("braid ({i},{j})"),
                        false,
                        Some(format!("no finite braid order for Cartan product {c}")),
                    );
                    continue;
                }
            };
            let word_ij: Vec<usize> = (0..order).map(|k| if k % 2 == 0 { i } else { j }).collect();
            let word_ji: Vec<usize> = (0..order).map(|k| if k % 2 == 0 { j } else { i }).collect();
            let lhs = alg.t_word(&word_ij);
            let rhs = alg.t_word(&word_ji);
            let ok = lhs == rhs;
            push(
                format!("braid ({i},{j}) order {order}"),
                ok,
                (!ok).then(|| format!("words {word_ij:?} vs {word_ji:?}")),
            );
        }
    }

    // theta_lambda theta_mu = theta_{lambda + mu} on a window.
    let small_box = box_weights(rd.rank(), 1);
    let mut theta_ok = true;
    let mut theta_witness = None;
    for a in &small_box {
        for b in &small_box {
            let sum: Vec<i64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
            if alg.multiply(&alg.theta(a), &alg.theta(b)) != alg.theta(&sum) {
                theta_ok = false;
                theta_witness = Some(format!("lambda={a:?} mu={b:?}"));
            }
        }
    }
    push("theta additivity".into(), theta_ok, theta_witness);

    // Bernstein-Lusztig cross relation on the window |lambda|_inf <= bound.
    let cross_box = box_weights(rd.rank(), length_bound.clamp(1, 2));
    for i in 0..m {
        let mut ok = true;
        let mut witness = None;
        for lambda in &cross_box {
            let s_lambda = rd.simple_reflection(i, lambda);
            let lhs = alg
                .multiply(&alg.theta(lambda), &alg.t_simple(i))
                .sub(&alg.multiply(&alg.t_simple(i), &alg.theta(&s_lambda)));
            let mut rhs = HeckeElement::zero();
            for (mu, sign) in alg.cross_expansion(i, lambda) {
                rhs.insert(mu, 0, qm1.mul(&LaurentInt::monomial(0, sign)));
            }
            if lhs != rhs {
                ok = false;
                witness = Some(format!("lambda={lambda:?}, i={i}"));
            }
        }
        push(format!("cross relation at alpha_{i}"), ok, witness);
    }

    // Centrality of W-invariant theta sums.
    let mut central_ok = true;
    let mut central_witness = None;
    for lambda in box_weights(rd.rank(), 1) {
        let z = alg.orbit_sum(&lambda);
        for i in 0..m {
            let t = alg.t_simple(i);
            if alg.multiply(&z, &t) != alg.multiply(&t, &z) {
                central_ok = false;
                central_witness = Some(format!("orbit sum of {lambda:?} vs T_{i}"));
            }
        }
        for mu in &small_box {
            let th = alg.theta(mu);
            if alg.multiply(&z, &th) != alg.multiply(&th, &z) {
                central_ok = false;
                central_witness = Some(format!("orbit sum of {lambda:?} vs theta_{mu:?}"));
            }
        }
    }
    push("centrality of W-invariant thetas".into(), central_ok, central_witness);

    // Independent model: normal-form products act as composed operators on
    // the induced polynomial module, checked on a window of monomials.
    let mut gens: Vec<HeckeElement> = (0..m).map(|i| alg.t_simple(i)).collect();
    for k in 0..rd.rank() {
        let mut e = vec![0i64; rd.rank()];
        e[k] = 1;
        gens.push(alg.theta(&e));
        e[k] = -1;
        gens.push(alg.theta(&e));
    }
    let window = box_weights(rd.rank(), 1);
    let mut model_ok = true;
    let mut model_witness = None;
    'outer: for a in &gens {
        for b in &gens {
            let ab = alg.multiply(a, b);
            for mu in &window {
                let mut x = LatticePoly::new();
                lattice_insert(&mut x, mu.clone(), LaurentInt::one());
                let via_product = op_element(&alg, &ab, &x);
                let via_composition = op_element(&alg, a, &op_element(&alg, b, &x));
                if via_product != via_composition {
                    model_ok = false;
                    model_witness = Some(format!("a*b on x^{mu:?}"));
                    break 'outer;
                }
            }
        }
    }
    push("polynomial-model cross-check".into(), model_ok, model_witness);

    Ok(RelationReport { datum: rd.name().to_string(), length_bound, checks })
}
