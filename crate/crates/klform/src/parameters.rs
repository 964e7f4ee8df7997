//! Kazhdan-Lusztig parameters for type A.
//!
//! A parameter is a triple (s, N, rho) with s a semisimple torus point, N a
//! nilpotent in Jordan form (a partition), and rho recorded through its
//! dimension only (the component group is trivial for general-linear groups).
//! The torus point splits as a finite-order compact part plus half-integer
//! powers of q^{1/2} along the Jacobson-Morozov cocharacter of N, and the
//! q-commutation Ad(s)N = qN is certified entrywise.

use num::{integer::lcm, One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::cyclotomic::{rat_from_str, rat_int, rat_to_string, GaloisAutomorphism, Rat};
use crate::error::{Error, Result};
use crate::ratfun::RatFun;
use crate::root_datum::{RootDatum, RootDatumSpec};
use crate::weyl::WeylGroup;

pub const ENUMERATION_SIZE_LIMIT: usize = 6;
pub const ENUMERATION_LEVEL_LIMIT: u32 = 12;

fn mod_one(r: &Rat) -> Rat {
    let f = r.floor();
    r - f
}

fn is_half_integer(r: &Rat) -> bool {
    (r * rat_int(2)).denom().is_one()
}

// ---------------------------------------------------------------------------
// TorusPoint
// ---------------------------------------------------------------------------

/// A semisimple torus point s = s_1 * phi(v), stored per coordinate of X_*:
/// a torsion exponent a in Q/Z (the root-of-unity part) and a half-integer
/// q-exponent m, so that lambda(s) = zeta_n^{n<lambda,a>} * v^{2<lambda,m>}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorusPoint {
    torsion: Vec<Rat>,
    q_exp: Vec<Rat>,
}

impl TorusPoint {
    pub fn new(torsion: Vec<Rat>, q_exp: Vec<Rat>) -> Result<Self> {
        if torsion.len() != q_exp.len() {
            return Err(Error::DimensionMismatch { expected: torsion.len(), got: q_exp.len() });
        }
        if let Some(bad) = q_exp.iter().find(|m| !is_half_integer(m)) {
            return Err(Error::InvalidParameter(format!(
                "q-exponent {bad} is not a half-integer"
            )));
        }
        Ok(TorusPoint { torsion: torsion.iter().map(mod_one).collect(), q_exp })
    }

    pub fn rank(&self) -> usize {
        self.torsion.len()
    }

    pub fn torsion(&self) -> &[Rat] {
        &self.torsion
    }

    pub fn q_exponents(&self) -> &[Rat] {
        &self.q_exp
    }

    /// Common denominator of the torsion exponents: the order of the compact
    /// part s_1, hence the cyclotomic level of all character values.
    pub fn level(&self) -> u32 {
        self.torsion
            .iter()
            .fold(1u64, |l, r| lcm(l, r.denom().to_u64().expect("level overflow")))
            .try_into()
            .expect("level overflow")
    }

    /// The compact part s_1: forget the q-exponents.
    pub fn compact_part(&self) -> TorusPoint {
        TorusPoint { torsion: self.torsion.clone(), q_exp: vec![Rat::zero(); self.q_exp.len()] }
    }

    /// lambda(s) as exponents at cyclotomic level `n` (a multiple of
    /// `self.level()`): returns (t, e) with lambda(s) = zeta_n^t * v^e.
    pub fn eval_exponents(&self, weight: &[i64], n: u32) -> Result<(i64, i64)> {
        if weight.len() != self.rank() {
            return Err(Error::DimensionMismatch { expected: self.rank(), got: weight.len() });
        }
        let mut t = Rat::zero();
        let mut e = Rat::zero();
        for ((w, a), m) in weight.iter().zip(&self.torsion).zip(&self.q_exp) {
            t += a * rat_int(*w);
            e += m * rat_int(2 * *w);
        }
        let t = t * rat_int(n as i64);
        if !t.denom().is_one() || !e.denom().is_one() {
            return Err(Error::GaloisLevelMismatch { element: self.level(), automorphism: n });
        }
        Ok((
            t.numer().to_i64().expect("exponent overflow").rem_euclid(n as i64),
            e.numer().to_i64().expect("exponent overflow"),
        ))
    }

    /// lambda(s) as an exact rational function of v.
    pub fn eval_ratfun(&self, weight: &[i64]) -> Result<RatFun> {
        let n = self.level();
        let (t, e) = self.eval_exponents(weight, n)?;
        Ok(RatFun::monomial(crate::cyclotomic::CyclotomicNumber::zeta_pow(n, t), e))
    }

    /// The Galois twist: torsion exponents multiplied by k, q-part unchanged.
    pub fn galois(&self, g: &GaloisAutomorphism) -> Result<TorusPoint> {
        if g.level() % self.level() != 0 {
            return Err(Error::GaloisLevelMismatch {
                element: self.level(),
                automorphism: g.level(),
            });
        }
        let k = rat_int(g.exponent() as i64);
        Ok(TorusPoint {
            torsion: self.torsion.iter().map(|a| mod_one(&(a * &k))).collect(),
            q_exp: self.q_exp.clone(),
        })
    }

    /// The translate w(s), via the contragredient action on X_*.
    pub fn weyl_translate(&self, wg: &WeylGroup, w: usize) -> TorusPoint {
        let torsion = wg
            .apply_cocharacter(w, &self.torsion)
            .iter()
            .map(mod_one)
            .collect();
        let q_exp = wg.apply_cocharacter(w, &self.q_exp);
        TorusPoint { torsion, q_exp }
    }

    /// Regularity in the monomial sense: no root evaluates to 1 identically.
    pub fn is_regular(&self, rd: &RootDatum) -> Result<bool> {
        let n = self.level();
        for beta in rd.positive_roots() {
            let (t, e) = self.eval_exponents(beta, n)?;
            if t == 0 && e == 0 {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[derive(Serialize, Deserialize)]
struct TorusPointWire {
    torsion: Vec<String>,
    q_exp: Vec<String>,
}

impl Serialize for TorusPoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        TorusPointWire {
            torsion: self.torsion.iter().map(rat_to_string).collect(),
            q_exp: self.q_exp.iter().map(rat_to_string).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for TorusPoint {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let wire = TorusPointWire::deserialize(d)?;
        let parse = |v: &[String]| -> std::result::Result<Vec<Rat>, D::Error> {
            v.iter().map(|s| rat_from_str(s).map_err(D::Error::custom)).collect()
        };
        TorusPoint::new(parse(&wire.torsion)?, parse(&wire.q_exp)?).map_err(D::Error::custom)
    }
}

// ---------------------------------------------------------------------------
// Nilpotents
// ---------------------------------------------------------------------------

/// A nilpotent matrix in Jordan form, recorded by its partition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NilpotentMatrix {
    size: usize,
    partition: Vec<u32>,
}

impl NilpotentMatrix {
    pub fn new(size: usize, partition: Vec<u32>) -> Result<Self> {
        if partition.iter().any(|&p| p == 0) {
            return Err(Error::InvalidPartition("zero part".into()));
        }
        if partition.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition("parts must be weakly decreasing".into()));
        }
        let total: u32 = partition.iter().sum();
        if total as usize != size {
            return Err(Error::InvalidPartition(format!(
                "parts sum to {total}, expected {size}"
            )));
        }
        Ok(NilpotentMatrix { size, partition })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn partition(&self) -> &[u32] {
        &self.partition
    }

    /// The 0/1 upper-triangular Jordan matrix.
    pub fn matrix(&self) -> Vec<Vec<i64>> {
        let mut m = vec![vec![0i64; self.size]; self.size];
        for (i, j) in self.unit_entries() {
            m[i][j] = 1;
        }
        m
    }

    /// Positions (i, i+1) of the unit entries, 0-based.
    pub fn unit_entries(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        let mut offset = 0usize;
        for &p in &self.partition {
            for k in 0..(p as usize - 1) {
                out.push((offset + k, offset + k + 1));
            }
            offset += p as usize;
        }
        out
    }

    /// succ[i] = within-block successor of coordinate i, if any.
    pub fn block_successor(&self) -> Vec<Option<usize>> {
        let mut succ = vec![None; self.size];
        for (i, j) in self.unit_entries() {
            succ[i] = Some(j);
        }
        succ
    }

    /// Index of the Jordan string containing each coordinate.
    pub fn block_of(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.size);
        for (b, &p) in self.partition.iter().enumerate() {
            out.extend(std::iter::repeat(b).take(p as usize));
        }
        out
    }

    /// Recover the partition from the rank sequence of powers of the matrix.
    pub fn partition_from_matrix(m: &[Vec<i64>]) -> Vec<u32> {
        let n = m.len();
        let mut ranks = vec![n];
        let mut power: Vec<Vec<i64>> = m.to_vec();
        loop {
            let r = integer_rank(&power);
            ranks.push(r);
            if r == 0 {
                break;
            }
            power = mat_mul_square(&power, m);
        }
        // rank(N^{k-1}) - rank(N^k) counts the parts of size >= k, so the
        // number of parts of size exactly l is the difference of consecutive
        // counts.
        let mut at_least = vec![0i64; n + 2];
        for k in 1..ranks.len() {
            at_least[k] = (ranks[k - 1] - ranks[k]) as i64;
        }
        let mut result = Vec::new();
        for len in (1..=n).rev() {
            let exact = at_least[len] - at_least[len + 1];
            for _ in 0..exact {
                result.push(len as u32);
            }
        }
        result
    }
}

fn mat_mul_square(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    let mut out = vec![vec![0i64; n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k] != 0 {
                for j in 0..n {
                    out[i][j] += a[i][k] * b[k][j];
                }
            }
        }
    }
    out
}

fn integer_rank(m: &[Vec<i64>]) -> usize {
    let rows: Vec<Vec<Rat>> = m
        .iter()
        .map(|r| r.iter().map(|&x| rat_int(x)).collect())
        .collect();
    rational_rank(rows)
}

fn rational_rank(mut rows: Vec<Vec<Rat>>) -> usize {
    let nrows = rows.len();
    let ncols = rows.first().map(|r| r.len()).unwrap_or(0);
    let mut rank = 0;
    for c in 0..ncols {
        let Some(p) = (rank..nrows).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = Rat::one() / rows[rank][c].clone();
        for x in rows[rank][c..].iter_mut() {
            *x *= &inv;
        }
        for i in 0..nrows {
            if i != rank && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in c..ncols {
                    let sub = &f * &rows[rank][j];
                    rows[i][j] -= sub;
                }
            }
        }
        rank += 1;
        if rank == nrows {
            break;
        }
    }
    rank
}

// ---------------------------------------------------------------------------
// Parameters
// ---------------------------------------------------------------------------

/// The Jacobson-Morozov cocharacter of a partition: exponents of v, i.e. the
/// halved sl_2 weight strings (l-1, l-3, ..., 1-l)/2 concatenated over parts
/// in decreasing order, each string descending.
pub fn jm_cocharacter(partition: &[u32]) -> Result<Vec<Rat>> {
    if partition.iter().any(|&p| p == 0) || partition.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::InvalidPartition(format!("{partition:?}")));
    }
    let mut out = Vec::new();
    for &p in partition {
        let l = p as i64;
        for k in 0..l {
            out.push(Rat::new((l - 1 - 2 * k).into(), 2.into()));
        }
    }
    Ok(out)
}

/// A Kazhdan-Lusztig parameter (s, N, rho) for GL_n, with its validity
/// certificate for Ad(s)N = qN.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KLParameter {
    n: usize,
    nilpotent: NilpotentMatrix,
    s: TorusPoint,
    rho_dim: u32,
    valid: bool,
    /// First violating unit entry of N, as a 1-based (row, col) pair.
    violation: Option<(usize, usize)>,
}

impl KLParameter {
    pub fn gl_rank(&self) -> usize {
        self.n
    }

    pub fn nilpotent(&self) -> &NilpotentMatrix {
        &self.nilpotent
    }

    pub fn partition(&self) -> &[u32] {
        self.nilpotent.partition()
    }

    pub fn torus_point(&self) -> &TorusPoint {
        &self.s
    }

    pub fn rho_dim(&self) -> u32 {
        self.rho_dim
    }

    pub fn is_valid(&self) -> bool {
        self.valid
    }

    pub fn violation(&self) -> Option<(usize, usize)> {
        self.violation
    }

    pub fn torsion_level(&self) -> u32 {
        self.s.level()
    }

    /// A compact display label: partition plus torsion exponents.
    pub fn label(&self) -> String {
        let parts: Vec<String> = self.partition().iter().map(|p| p.to_string()).collect();
        let tors: Vec<String> = self.s.torsion().iter().map(rat_to_string).collect();
        format!("n={} p=({}) a=({})", self.n, parts.join(","), tors.join(","))
    }
}

/// Assemble a parameter from a partition and torsion exponents; the
/// q-exponents come from the Jacobson-Morozov cocharacter. An invalid
/// q-commutation is reported through the certificate, not as an error.
pub fn build_parameter(
    n: usize,
    partition: &[u32],
    torsion: &[Rat],
    rho_dim: u32,
) -> Result<KLParameter> {
    if torsion.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: torsion.len() });
    }
    if rho_dim == 0 {
        return Err(Error::InvalidParameter("rho_dim must be positive".into()));
    }
    let nilpotent = NilpotentMatrix::new(n, partition.to_vec())?;
    let q_exp = jm_cocharacter(partition)?;
    let s = TorusPoint::new(torsion.to_vec(), q_exp)?;
    // Certify Ad(s)N = qN on every unit entry: s_i / s_j = q means equal
    // torsion and q-exponents differing by exactly 1.
    let mut valid = true;
    let mut violation = None;
    for (i, j) in nilpotent.unit_entries() {
        let torsion_ok = s.torsion()[i] == s.torsion()[j];
        let q_ok = &s.q_exponents()[i] - &s.q_exponents()[j] == rat_int(1);
        if !(torsion_ok && q_ok) {
            valid = false;
            violation = Some((i + 1, j + 1));
            break;
        }
    }
    Ok(KLParameter { n, nilpotent, s, rho_dim, valid, violation })
}

/// dim { X in gl_n : Ad(s)X = X, [N, X] = 0 }, computed exactly.
///
/// Ad(s)X = X selects the entries (i, j) with s_i = s_j (equal torsion and
/// equal q-exponent); [N, X] = 0 is a linear system on that support.
pub fn centralizer_dimension(param: &KLParameter) -> Result<usize> {
    if !param.valid {
        return Err(Error::InvalidParameter(format!(
            "certificate failed at entry {:?}",
            param.violation
        )));
    }
    let n = param.n;
    let s = &param.s;
    let mut var_index = vec![vec![None::<usize>; n]; n];
    let mut nvars = 0usize;
    for i in 0..n {
        for j in 0..n {
            if s.torsion()[i] == s.torsion()[j] && s.q_exponents()[i] == s.q_exponents()[j] {
                var_index[i][j] = Some(nvars);
                nvars += 1;
            }
        }
    }
    let succ = param.nilpotent.block_successor();
    let mut pred = vec![None::<usize>; n];
    for (i, j) in param.nilpotent.unit_entries() {
        pred[j] = Some(i);
    }
    // [N, X]_{ij} = X_{succ(i), j} - X_{i, pred(j)} = 0 for all (i, j).
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let mut row = vec![Rat::zero(); nvars];
            let mut nonzero = false;
            if let Some(si) = succ[i] {
                if let Some(v) = var_index[si][j] {
                    row[v] += rat_int(1);
                    nonzero = true;
                }
            }
            if let Some(pj) = pred[j] {
                if let Some(v) = var_index[i][pj] {
                    row[v] -= rat_int(1);
                    nonzero = true;
                }
            }
            if nonzero {
                rows.push(row);
            }
        }
    }
    let rank = rational_rank(rows);
    Ok(nvars - rank)
}

/// Essential square-integrability at parameter level: Z_G(s, N) is as small
/// as the center allows. For gl_n the center is the scalars, so the test is
/// centralizer dimension exactly 1.
pub fn is_essentially_discrete(param: &KLParameter) -> Result<bool> {
    Ok(centralizer_dimension(param)? == 1)
}

/// The independent combinatorial criterion in type A: a single Jordan string
/// with constant torsion (the Steinberg parameter up to an unramified twist).
pub fn combinatorial_discrete(param: &KLParameter) -> bool {
    param.partition().len() == 1
        && param.s.torsion().windows(2).all(|w| w[0] == w[1])
}

/// Outcome of twisting a parameter by a Galois automorphism.
#[derive(Debug, Clone)]
pub struct GaloisTwistResult {
    pub gamma: GaloisAutomorphism,
    pub input: KLParameter,
    pub output: KLParameter,
    pub preserved: PreservedFlags,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PreservedFlags {
    pub validity: bool,
    pub discreteness: bool,
    pub central_character: bool,
}

impl PreservedFlags {
    pub fn all(&self) -> bool {
        self.validity && self.discreteness && self.central_character
    }
}

/// Twist a parameter: torsion multiplied by k mod 1; partition, q-exponents
/// and rho unchanged. The flags re-run validity, the discreteness criterion,
/// and the central-character orbit comparison on the twisted point.
pub fn galois_twist(g: &GaloisAutomorphism, param: &KLParameter) -> Result<GaloisTwistResult> {
    let rd = RootDatum::general_linear(param.n)?;
    let wg = WeylGroup::new(&rd)?;
    galois_twist_with(g, param, &wg)
}

/// As `galois_twist`, with the GL_n Weyl group supplied by the caller
/// (campaigns reuse it across thousands of twists).
pub fn galois_twist_with(
    g: &GaloisAutomorphism,
    param: &KLParameter,
    gl_weyl: &WeylGroup,
) -> Result<GaloisTwistResult> {
    let twisted_point = param.s.galois(g)?;
    let output = build_parameter(
        param.n,
        param.partition(),
        twisted_point.torsion(),
        param.rho_dim,
    )?;
    let validity = output.valid == param.valid;
    let discreteness = if param.valid && output.valid {
        is_essentially_discrete(param)? == is_essentially_discrete(&output)?
    } else {
        validity
    };
    let before = central_character_orbit(gl_weyl, &param.s);
    let after = central_character_orbit(gl_weyl, &output.s);
    let transported = central_character_orbit(gl_weyl, &before.galois(g)?);
    let central_character = after == transported;
    Ok(GaloisTwistResult {
        gamma: *g,
        input: param.clone(),
        output,
        preserved: PreservedFlags { validity, discreteness, central_character },
    })
}

/// Canonical representative of the W-orbit of a torus point: the
/// lexicographically greatest translate under (torsion, q-exponent)
/// coordinates, i.e. dominant-ordered coordinate values for GL_n.
pub fn central_character_orbit(wg: &WeylGroup, s: &TorusPoint) -> TorusPoint {
    let mut best: Option<TorusPoint> = None;
    for w in 0..wg.order() {
        let t = s.weyl_translate(wg, w);
        let better = match &best {
            None => true,
            Some(b) => {
                (t.torsion(), t.q_exponents()) > (b.torsion(), b.q_exponents())
            }
        };
        if better {
            best = Some(t);
        }
    }
    best.expect("orbit is nonempty")
}

/// All valid parameters with torsion of the given level, one per conjugacy
/// class: Jordan strings carry constant torsion, and classes are normalized
/// by sorting strings by (length descending, torsion ascending).
pub fn enumerate_parameters(n: usize, torsion_level: u32) -> Result<Vec<KLParameter>> {
    if n == 0 || n > ENUMERATION_SIZE_LIMIT {
        return Err(Error::SizeGuardExceeded {
            what: format!("matrix size {n}"),
            limit: ENUMERATION_SIZE_LIMIT,
        });
    }
    if torsion_level == 0 || torsion_level > ENUMERATION_LEVEL_LIMIT {
        return Err(Error::SizeGuardExceeded {
            what: format!("torsion level {torsion_level}"),
            limit: ENUMERATION_LEVEL_LIMIT as usize,
        });
    }
    let mut out = Vec::new();
    for partition in partitions(n as u32) {
        // Group equal part lengths; assign a torsion multiset to each group.
        let mut groups: Vec<(u32, usize)> = Vec::new();
        for &p in &partition {
            match groups.last_mut() {
                Some((len, count)) if *len == p => *count += 1,
                _ => groups.push((p, 1)),
            }
        }
        let mut assignments: Vec<Vec<u32>> = vec![vec![]];
        for &(_, count) in &groups {
            let choices = multisets(count, torsion_level);
            let mut next = Vec::with_capacity(assignments.len() * choices.len());
            for prefix in &assignments {
                for choice in &choices {
                    let mut v = prefix.clone();
                    v.extend_from_slice(choice);
                    next.push(v);
                }
            }
            assignments = next;
        }
        for strings in assignments {
            let mut torsion = Vec::with_capacity(n);
            for (&p, &num) in partition.iter().zip(&strings) {
                let a = Rat::new((num as i64).into(), (torsion_level as i64).into());
                for _ in 0..p {
                    torsion.push(mod_one(&a));
                }
            }
            out.push(build_parameter(n, &partition, &torsion, 1)?);
        }
    }
    Ok(out)
}

/// Partitions of n, parts weakly decreasing, largest-first order.
pub fn partitions(n: u32) -> Vec<Vec<u32>> {
    fn rec(n: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for p in (1..=max.min(n)).rev() {
            prefix.push(p);
            rec(n - p, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// Nondecreasing sequences of `count` numerators from 0..level.
fn multisets(count: usize, level: u32) -> Vec<Vec<u32>> {
    fn rec(count: usize, from: u32, level: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if count == 0 {
            out.push(prefix.clone());
            return;
        }
        for v in from..level {
            prefix.push(v);
            rec(count - 1, v, level, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(count, 0, level, &mut Vec::new(), &mut out);
    out
}

/// The adjoint quotient datum of type A_{n-1} (X* = root lattice).
pub fn adjoint_datum(n: usize) -> Result<RootDatum> {
    if n == 1 {
        RootDatum::build(&RootDatumSpec::Explicit {
            rank: Some(0),
            simple_roots: vec![],
            simple_coroots: vec![],
        })
    } else {
        RootDatum::build(&RootDatumSpec::Named {
            cartan_type: "A".into(),
            rank: n - 1,
            lattice: "ad".into(),
        })
    }
}

/// The image of a parameter's torus point in the adjoint quotient:
/// coordinates become consecutive differences (the simple-root coordinates of
/// the root lattice).
pub fn adjoint_point(param: &KLParameter) -> Result<TorusPoint> {
    let n = param.n;
    let s = &param.s;
    let torsion: Vec<Rat> = (0..n.saturating_sub(1))
        .map(|i| mod_one(&(&s.torsion()[i] - &s.torsion()[i + 1])))
        .collect();
    let q_exp: Vec<Rat> = (0..n.saturating_sub(1))
        .map(|i| &s.q_exponents()[i] - &s.q_exponents()[i + 1])
        .collect();
    TorusPoint::new(torsion, q_exp)
}

/// Project a GL_n parameter to the adjoint quotient of type A_{n-1}.
/// Unramified central twists drop out, which is exactly what makes the
/// dominant-weight sums converge.
pub fn adjoint_projection(param: &KLParameter) -> Result<(RootDatum, TorusPoint)> {
    Ok((adjoint_datum(param.n)?, adjoint_point(param)?))
}

// ---------------------------------------------------------------------------
// Torus-point constructors for the simply-connected side
// ---------------------------------------------------------------------------

/// The Steinberg point of a semisimple datum: zero torsion and q-exponents
/// solving <alpha_i, m> = 1 for every simple root.
pub fn steinberg_point(rd: &RootDatum) -> Result<TorusPoint> {
    if !rd.is_semisimple() {
        return Err(Error::NotSemisimple);
    }
    let r = rd.rank();
    if r == 0 {
        return TorusPoint::new(vec![], vec![]);
    }
    // Solve A m = (1, ..., 1) with A the matrix of simple-root coordinates.
    let mut aug: Vec<Vec<Rat>> = rd
        .simple_roots()
        .iter()
        .map(|row| {
            row.iter()
                .map(|&x| rat_int(x))
                .chain(std::iter::once(Rat::one()))
                .collect()
        })
        .collect();
    for c in 0..r {
        let p = (c..r).find(|&i| !aug[i][c].is_zero()).ok_or(Error::NotSemisimple)?;
        aug.swap(c, p);
        let inv = Rat::one() / aug[c][c].clone();
        for x in aug[c][c..].iter_mut() {
            *x *= &inv;
        }
        for i in 0..r {
            if i != c && !aug[i][c].is_zero() {
                let f = aug[i][c].clone();
                for j in c..=r {
                    let sub = &f * &aug[c][j];
                    aug[i][j] -= sub;
                }
            }
        }
    }
    let m: Vec<Rat> = (0..r).map(|i| aug[i][r].clone()).collect();
    TorusPoint::new(vec![Rat::zero(); r], m)
}

/// Central torsion of order n for the simply-connected type A_{n-1} datum:
/// the generator is (1, 2, ..., r)/(r+1) in fundamental-coweight coordinates.
pub fn type_a_central_torsion(rank: usize, c: i64) -> Vec<Rat> {
    let n = rank as i64 + 1;
    (1..=rank as i64)
        .map(|i| mod_one(&Rat::new((c * i).into(), n.into())))
        .collect()
}

// ---------------------------------------------------------------------------
// Wire format
// ---------------------------------------------------------------------------

/// The parameter file format:
/// {"n": 3, "partition": [2,1], "torsion_level": 5, "torsion_num": [1,1,2], "rho_dim": 1}.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct ParameterWire {
    pub n: usize,
    pub partition: Vec<u32>,
    pub torsion_level: u32,
    pub torsion_num: Vec<i64>,
    pub rho_dim: u32,
}

impl ParameterWire {
    pub fn from_parameter(p: &KLParameter) -> Self {
        let level = p.torsion_level();
        let torsion_num = p
            .s
            .torsion()
            .iter()
            .map(|a| (a * rat_int(level as i64)).numer().to_i64().expect("overflow"))
            .collect();
        ParameterWire {
            n: p.n,
            partition: p.partition().to_vec(),
            torsion_level: level,
            torsion_num,
            rho_dim: p.rho_dim,
        }
    }

    pub fn to_parameter(&self) -> Result<KLParameter> {
        if self.torsion_level == 0 {
            return Err(Error::InvalidParameter("torsion_level must be positive".into()));
        }
        let torsion: Vec<Rat> = self
            .torsion_num
            .iter()
            .map(|&k| Rat::new(k.into(), (self.torsion_level as i64).into()))
            .collect();
        build_parameter(self.n, &self.partition, &torsion, self.rho_dim)
    }
}
