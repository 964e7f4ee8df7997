//! Root data for split reductive groups.
//!
//! X* is identified with Z^rank once and for all (the constructors choose the
//! basis), the pairing with the cocharacter lattice is the standard dot
//! product, and simple roots/coroots are integer vectors in these coordinates.

use num::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::cyclotomic::{rat_int, Rat};
use crate::error::{Error, Result};

pub const RANK_LIMIT: usize = 8;
const ROOT_CLOSURE_LIMIT: usize = 1000;

/// A root datum (X*, Phi, X_*, Phi^vee) with a chosen set of simple roots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootDatum {
    name: String,
    rank: usize,
    simple_roots: Vec<Vec<i64>>,
    simple_coroots: Vec<Vec<i64>>,
    /// cartan[i][j] = <alpha_j, alpha_i^vee>.
    cartan: Vec<Vec<i64>>,
    positive_roots: Vec<Vec<i64>>,
    dim_flag: usize,
    is_semisimple: bool,
}

/// Structured description accepted on the command line and in JSON inputs.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RootDatumSpec {
    Named {
        #[serde(rename = "type")]
        cartan_type: String,
        rank: usize,
        lattice: String,
    },
    Explicit {
        /// Needed only when no simple roots are given (a torus).
        #[serde(default, skip_serializing_if = "Option::is_none")]
        rank: Option<usize>,
        simple_roots: Vec<Vec<i64>>,
        simple_coroots: Vec<Vec<i64>>,
    },
}

impl RootDatumSpec {
    /// Parse shorthand like "A2-sc", "A1-gl", "B2-ad".
    pub fn parse_shorthand(s: &str) -> Result<Self> {
        let bad = || Error::InvalidParameter(format!("cannot parse root-datum spec {s:?}"));
        let (head, lattice) = s.split_once('-').ok_or_else(bad)?;
        let mut chars = head.chars();
        let letter = chars.next().ok_or_else(bad)?.to_ascii_uppercase();
        let rank: usize = chars.as_str().parse().map_err(|_| bad())?;
        Ok(RootDatumSpec::Named {
            cartan_type: letter.to_string(),
            rank,
            lattice: lattice.to_ascii_lowercase(),
        })
    }
}

pub fn pairing(weight: &[i64], coroot: &[i64]) -> i64 {
    weight.iter().zip(coroot).map(|(a, b)| a * b).sum()
}

/// Standard Cartan matrix, convention cartan[i][j] = <alpha_j, alpha_i^vee>.
fn standard_cartan(cartan_type: char, rank: usize) -> Result<Vec<Vec<i64>>> {
    fn link(a: &mut [Vec<i64>], i: usize, j: usize, down: i64, up: i64) {
        a[i][j] = down;
        a[j][i] = up;
    }
    fn chain(a: &mut [Vec<i64>], upto: usize) {
        for i in 0..upto {
            link(a, i, i + 1, -1, -1);
        }
    }
    let bad = |msg: &str| Error::NotFiniteType(format!("{cartan_type}{rank}: {msg}"));
    let range_ok = |lo: usize| rank >= lo && rank <= RANK_LIMIT;
    let mut a = vec![vec![0i64; rank]; rank];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    match cartan_type {
        'A' => {
            if !range_ok(1) {
                return Err(bad("rank out of range"));
            }
            chain(&mut a, rank.saturating_sub(1));
        }
        'B' => {
            if !range_ok(2) {
                return Err(bad("rank out of range"));
            }
            chain(&mut a, rank - 1);
            // alpha_rank is the short root: <alpha_{n-1}, alpha_n^vee> = -2.
            link(&mut a, rank - 1, rank - 2, -2, -1);
        }
        'C' => {
            if !range_ok(2) {
                return Err(bad("rank out of range"));
            }
            chain(&mut a, rank - 1);
            link(&mut a, rank - 1, rank - 2, -1, -2);
        }
        'D' => {
            if !range_ok(4) {
                return Err(bad("rank out of range"));
            }
            chain(&mut a, rank - 2);
            link(&mut a, rank - 1, rank - 3, -1, -1);
        }
        'E' => {
            if !(6..=8).contains(&rank) {
                return Err(bad("rank must be 6, 7, or 8"));
            }
            // Bourbaki numbering: node 2 attaches to node 4 of the A-chain 1-3-4-5-...
            let chain_nodes: Vec<usize> = std::iter::once(0).chain(2..rank).collect();
            for pair in chain_nodes.windows(2) {
                link(&mut a, pair[0], pair[1], -1, -1);
            }
            link(&mut a, 1, 3, -1, -1);
        }
        'F' => {
            if rank != 4 {
                return Err(bad("rank must be 4"));
            }
            chain(&mut a, 3);
            link(&mut a, 1, 2, -2, -1);
        }
        'G' => {
            if rank != 2 {
                return Err(bad("rank must be 2"));
            }
            link(&mut a, 0, 1, -3, -1);
        }
        other => return Err(Error::NotFiniteType(format!("unknown type {other:?}"))),
    }
    Ok(a)
}

/// Reject Cartan matrices that are not of finite type.
///
/// Checks the generalized-Cartan-matrix axioms, finds a symmetrizer by
/// propagation along the Dynkin graph, and tests positive definiteness of the
/// symmetrized matrix by exact pivoted elimination.
fn check_finite_type(cartan: &[Vec<i64>]) -> Result<()> {
    let m = cartan.len();
    if m == 0 {
        return Ok(());
    }
    for i in 0..m {
        if cartan[i].len() != m {
            return Err(Error::DimensionMismatch { expected: m, got: cartan[i].len() });
        }
        if cartan[i][i] != 2 {
            return Err(Error::NotFiniteType(format!("diagonal entry {} is not 2", i)));
        }
        for j in 0..m {
            if i != j {
                if cartan[i][j] > 0 {
                    return Err(Error::NotFiniteType(format!(
                        "positive off-diagonal entry at ({i},{j})"
                    )));
                }
                if (cartan[i][j] == 0) != (cartan[j][i] == 0) {
                    return Err(Error::NotFiniteType(format!("zero asymmetry at ({i},{j})")));
                }
            }
        }
    }
    // Symmetrizer d_i > 0 with d_i a_ij = d_j a_ji, found per component.
    let mut d: Vec<Option<Rat>> = vec![None; m];
    for start in 0..m {
        if d[start].is_some() {
            continue;
        }
        d[start] = Some(Rat::one());
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            let di = d[i].clone().unwrap();
            for j in 0..m {
                if i == j || cartan[i][j] == 0 {
                    continue;
                }
                let dj = &di * rat_int(cartan[i][j]) / rat_int(cartan[j][i]);
                match &d[j] {
                    None => {
                        d[j] = Some(dj);
                        stack.push(j);
                    }
                    Some(existing) => {
                        if *existing != dj {
                            return Err(Error::NotFiniteType(
                                "matrix is not symmetrizable".into(),
                            ));
                        }
                    }
                }
            }
        }
    }
    // Positive definiteness of s_ij = d_i a_ij via LDL pivots.
    let mut s: Vec<Vec<Rat>> = (0..m)
        .map(|i| (0..m).map(|j| d[i].clone().unwrap() * rat_int(cartan[i][j])).collect())
        .collect();
    for k in 0..m {
        if s[k][k] <= Rat::zero() {
            return Err(Error::NotFiniteType(
                "symmetrized matrix is not positive definite (not finite type)".into(),
            ));
        }
        for i in (k + 1)..m {
            let factor = &s[i][k] / &s[k][k];
            for j in k..m {
                let sub = &factor * &s[k][j];
                s[i][j] -= sub;
            }
        }
    }
    Ok(())
}

/// Solve `mat * x = rhs` exactly over Q; `mat` is given by rows.
/// Returns None when the system is inconsistent.
fn solve_rational(mat: &[Vec<Rat>], rhs: &[Rat]) -> Option<Vec<Rat>> {
    let rows = mat.len();
    let cols = if rows == 0 { 0 } else { mat[0].len() };
    let mut aug: Vec<Vec<Rat>> = mat
        .iter()
        .zip(rhs)
        .map(|(row, b)| row.iter().cloned().chain(std::iter::once(b.clone())).collect())
        .collect();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !aug[i][c].is_zero()) else {
            continue;
        };
        aug.swap(r, p);
        let inv = Rat::one() / aug[r][c].clone();
        for x in aug[r][c..].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !aug[i][c].is_zero() {
                let f = aug[i][c].clone();
                for j in c..=cols {
                    let sub = &f * &aug[r][j];
                    aug[i][j] -= sub;
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    // Inconsistent if a zero row has nonzero rhs.
    for row in aug.iter().skip(r) {
        if !row[cols].is_zero() {
            return None;
        }
    }
    let mut x = vec![Rat::zero(); cols];
    for (row, &c) in pivot_cols.iter().enumerate() {
        x[c] = aug[row][cols].clone();
    }
    Some(x)
}

impl RootDatum {
    /// Build from a structured spec; rejects non-finite-type data.
    pub fn build(spec: &RootDatumSpec) -> Result<RootDatum> {
        match spec {
            RootDatumSpec::Named { cartan_type, rank, lattice } => {
                let letter = cartan_type
                    .chars()
                    .next()
                    .ok_or_else(|| Error::NotFiniteType("empty type".into()))?
                    .to_ascii_uppercase();
                let r = *rank;
                let cartan = standard_cartan(letter, r)?;
                match lattice.as_str() {
                    "sc" => {
                        // X* = weight lattice: coords in fundamental weights,
                        // alpha_j = column j of the Cartan matrix, coroots = e_i.
                        let simple_roots: Vec<Vec<i64>> =
                            (0..r).map(|j| (0..r).map(|i| cartan[i][j]).collect()).collect();
                        let simple_coroots: Vec<Vec<i64>> = (0..r)
                            .map(|i| (0..r).map(|j| i64::from(i == j)).collect())
                            .collect();
                        Self::from_parts(format!("{letter}{r}-sc"), r, simple_roots, simple_coroots)
                    }
                    "ad" => {
                        // X* = root lattice: alpha_j = e_j, coroot i = row i of Cartan.
                        let simple_roots: Vec<Vec<i64>> = (0..r)
                            .map(|j| (0..r).map(|i| i64::from(i == j)).collect())
                            .collect();
                        let simple_coroots: Vec<Vec<i64>> = cartan.clone();
                        Self::from_parts(format!("{letter}{r}-ad"), r, simple_roots, simple_coroots)
                    }
                    "gl" => {
                        if letter != 'A' {
                            return Err(Error::InvalidParameter(
                                "lattice \"gl\" is only defined for type A".into(),
                            ));
                        }
                        Self::general_linear(r + 1)
                    }
                    other => Err(Error::InvalidParameter(format!(
                        "unknown lattice choice {other:?} (expected sc, ad, or gl)"
                    ))),
                }
            }
            RootDatumSpec::Explicit { rank, simple_roots, simple_coroots } => {
                let inferred = simple_roots
                    .first()
                    .map(|v| v.len())
                    .or_else(|| simple_coroots.first().map(|v| v.len()))
                    .unwrap_or(0);
                Self::from_parts(
                    "explicit".into(),
                    rank.unwrap_or(inferred),
                    simple_roots.clone(),
                    simple_coroots.clone(),
                )
            }
        }
    }

    /// GL_n: X* = Z^n, alpha_i = e_i - e_{i+1} = alpha_i^vee.
    pub fn general_linear(n: usize) -> Result<RootDatum> {
        if n == 0 || n > RANK_LIMIT {
            return Err(Error::SizeGuardExceeded {
                what: format!("GL rank {n}"),
                limit: RANK_LIMIT,
            });
        }
        let mut roots = Vec::new();
        for i in 0..n.saturating_sub(1) {
            let mut v = vec![0i64; n];
            v[i] = 1;
            v[i + 1] = -1;
            roots.push(v);
        }
        Self::from_parts(format!("GL{n}"), n, roots.clone(), roots)
    }

    fn from_parts(
        name: String,
        rank: usize,
        simple_roots: Vec<Vec<i64>>,
        simple_coroots: Vec<Vec<i64>>,
    ) -> Result<RootDatum> {
        if rank > RANK_LIMIT {
            return Err(Error::SizeGuardExceeded {
                what: format!("rank {rank}"),
                limit: RANK_LIMIT,
            });
        }
        if simple_roots.len() != simple_coroots.len() {
            return Err(Error::DimensionMismatch {
                expected: simple_roots.len(),
                got: simple_coroots.len(),
            });
        }
        for v in simple_roots.iter().chain(simple_coroots.iter()) {
            if v.len() != rank {
                return Err(Error::DimensionMismatch { expected: rank, got: v.len() });
            }
        }
        let m = simple_roots.len();
        let cartan: Vec<Vec<i64>> = (0..m)
            .map(|i| (0..m).map(|j| pairing(&simple_roots[j], &simple_coroots[i])).collect())
            .collect();
        check_finite_type(&cartan)?;

        let mut rd = RootDatum {
            name,
            rank,
            simple_roots,
            simple_coroots,
            cartan,
            positive_roots: vec![],
            dim_flag: 0,
            is_semisimple: false,
        };
        rd.positive_roots = rd.compute_positive_roots()?;
        rd.dim_flag = rd.positive_roots.len();
        rd.is_semisimple = m == rank;
        Ok(rd)
    }

    fn compute_positive_roots(&self) -> Result<Vec<Vec<i64>>> {
        use std::collections::HashSet;
        let mut seen: HashSet<Vec<i64>> = HashSet::new();
        let mut queue: Vec<Vec<i64>> = self.simple_roots.clone();
        for r in &queue {
            seen.insert(r.clone());
        }
        let mut head = 0;
        while head < queue.len() {
            if queue.len() > ROOT_CLOSURE_LIMIT {
                return Err(Error::SizeGuardExceeded {
                    what: "root system closure".into(),
                    limit: ROOT_CLOSURE_LIMIT,
                });
            }
            let beta = queue[head].clone();
            head += 1;
            for i in 0..self.num_simple() {
                let refl = self.simple_reflection(i, &beta);
                if seen.insert(refl.clone()) {
                    queue.push(refl);
                }
            }
        }
        // Keep the roots with nonnegative coordinates over the simple roots.
        let mat: Vec<Vec<Rat>> = (0..self.rank)
            .map(|coord| self.simple_roots.iter().map(|r| rat_int(r[coord])).collect())
            .collect();
        let mut positive: Vec<Vec<i64>> = Vec::new();
        for beta in queue {
            let rhs: Vec<Rat> = beta.iter().map(|&c| rat_int(c)).collect();
            let Some(coords) = solve_rational(&mat, &rhs) else {
                continue;
            };
            if coords.iter().all(|c| *c >= Rat::zero()) {
                positive.push(beta);
            }
        }
        positive.sort();
        Ok(positive)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn num_simple(&self) -> usize {
        self.simple_roots.len()
    }

    pub fn simple_roots(&self) -> &[Vec<i64>] {
        &self.simple_roots
    }

    pub fn simple_coroots(&self) -> &[Vec<i64>] {
        &self.simple_coroots
    }

    /// cartan[i][j] = <alpha_j, alpha_i^vee>.
    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.positive_roots
    }

    /// Number of positive roots = dimension of the flag variety.
    pub fn dim_flag(&self) -> usize {
        self.dim_flag
    }

    pub fn is_semisimple(&self) -> bool {
        self.is_semisimple
    }

    pub fn simple_reflection(&self, i: usize, weight: &[i64]) -> Vec<i64> {
        let c = pairing(weight, &self.simple_coroots[i]);
        weight
            .iter()
            .zip(&self.simple_roots[i])
            .map(|(w, a)| w - c * a)
            .collect()
    }

    /// The matrix of s_i acting on X*, row-major.
    pub fn simple_reflection_matrix(&self, i: usize) -> Vec<i64> {
        let r = self.rank;
        let mut m = vec![0i64; r * r];
        for col in 0..r {
            let mut e = vec![0i64; r];
            e[col] = 1;
            let img = self.simple_reflection(i, &e);
            for row in 0..r {
                m[row * r + col] = img[row];
            }
        }
        m
    }

    /// Pairings of a weight with all simple coroots.
    pub fn coroot_pairings(&self, weight: &[i64]) -> Result<Vec<i64>> {
        if weight.len() != self.rank {
            return Err(Error::DimensionMismatch { expected: self.rank, got: weight.len() });
        }
        Ok(self.simple_coroots.iter().map(|c| pairing(weight, c)).collect())
    }

    pub fn is_dominant(&self, weight: &[i64]) -> Result<bool> {
        Ok(self.coroot_pairings(weight)?.iter().all(|&p| p >= 0))
    }

    /// Height of a dominant weight: sum of pairings with the simple coroots.
    pub fn height(&self, weight: &[i64]) -> Result<i64> {
        Ok(self.coroot_pairings(weight)?.iter().sum())
    }

    /// The simple roots orthogonal to a dominant weight; this set generates
    /// the stabilizer (a parabolic subgroup of W).
    pub fn weight_stabilizer(&self, weight: &[i64]) -> Result<Vec<usize>> {
        let pairings = self.coroot_pairings(weight)?;
        if let Some(i) = pairings.iter().position(|&p| p < 0) {
            return Err(Error::NonDominant { index: i });
        }
        Ok((0..pairings.len()).filter(|&i| pairings[i] == 0).collect())
    }

    /// All dominant weights of height at most `bound`, with their stabilizer
    /// subsets, sorted by height then lexicographically.
    ///
    /// Requires a semisimple datum: central directions make the sets infinite.
    pub fn enumerate_dominant(&self, bound: i64) -> Result<Vec<DominantWeight>> {
        if !self.is_semisimple {
            return Err(Error::NotSemisimple);
        }
        let m = self.num_simple();
        if m == 0 {
            return Ok(vec![DominantWeight { weight: vec![], stabilizer: 0, height: 0 }]);
        }
        let coroot_mat: Vec<Vec<Rat>> = self
            .simple_coroots
            .iter()
            .map(|c| c.iter().map(|&x| rat_int(x)).collect())
            .collect();
        let mut out = Vec::new();
        let mut p = vec![0i64; m];
        self.enumerate_profiles(&coroot_mat, &mut p, 0, bound, &mut out);
        out.sort_by(|a, b| (a.height, &a.weight).cmp(&(b.height, &b.weight)));
        Ok(out)
    }

    fn enumerate_profiles(
        &self,
        coroot_mat: &[Vec<Rat>],
        p: &mut Vec<i64>,
        i: usize,
        remaining: i64,
        out: &mut Vec<DominantWeight>,
    ) {
        if i == p.len() {
            let rhs: Vec<Rat> = p.iter().map(|&x| rat_int(x)).collect();
            let Some(sol) = solve_rational(coroot_mat, &rhs) else {
                return;
            };
            let mut weight = Vec::with_capacity(sol.len());
            for c in &sol {
                if !c.denom().is_one() {
                    return; // not a lattice point of X*
                }
                weight.push(num::ToPrimitive::to_i64(c.numer()).expect("weight overflow"));
            }
            // Verify the solution (the coroot matrix is square and invertible
            // for semisimple data, but the check is cheap).
            let pair = self.coroot_pairings(&weight).unwrap();
            if pair != *p {
                return;
            }
            let stabilizer =
                (0..p.len()).filter(|&k| p[k] == 0).fold(0u32, |m, k| m | (1 << k));
            out.push(DominantWeight { weight, stabilizer, height: p.iter().sum() });
            return;
        }
        for v in 0..=remaining {
            p[i] = v;
            self.enumerate_profiles(coroot_mat, p, i + 1, remaining - v, out);
        }
        p[i] = 0;
    }

    /// The dominant weights with stabilizer set exactly `j`, up to `bound`.
    pub fn enumerate_lambda(&self, j: &[usize], bound: i64) -> Result<Vec<Vec<i64>>> {
        let mask = subset_mask(j, self.num_simple())?;
        Ok(self
            .enumerate_dominant(bound)?
            .into_iter()
            .filter(|d| d.stabilizer == mask)
            .map(|d| d.weight)
            .collect())
    }
}

/// A dominant weight together with its stabilizer data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DominantWeight {
    pub weight: Vec<i64>,
    /// Bitmask over simple-root indices with pairing zero.
    pub stabilizer: u32,
    pub height: i64,
}

pub fn subset_mask(j: &[usize], num_simple: usize) -> Result<u32> {
    let mut mask = 0u32;
    for &i in j {
        if i >= num_simple {
            return Err(Error::DimensionMismatch { expected: num_simple, got: i + 1 });
        }
        mask |= 1 << i;
    }
    Ok(mask)
}

pub fn mask_to_subset(mask: u32) -> Vec<usize> {
    (0..32).filter(|i| mask & (1 << i) != 0).collect()
}
