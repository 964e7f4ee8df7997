//! Weyl group enumeration: elements as integer matrices on X*, with words,
//! lengths, inverses and a right-multiplication table.

use std::collections::HashMap;

use crate::cyclotomic::Rat;
use crate::error::{Error, Result};
use crate::ratfun::IntegerPolynomial;
use crate::root_datum::{subset_mask, RootDatum};

pub const WEYL_ORDER_LIMIT: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeylElement {
    /// Row-major rank x rank matrix acting on X* (column vectors).
    pub matrix: Vec<i64>,
    /// A reduced word in simple-reflection indices.
    pub word: Vec<usize>,
    pub length: usize,
}

/// The full Weyl group, enumerated breadth-first and deduplicated by action
/// matrix (words are not canonical). Elements are sorted by (length, word).
#[derive(Debug, Clone)]
pub struct WeylGroup {
    rank: usize,
    elements: Vec<WeylElement>,
    inverse: Vec<usize>,
    right_mul: Vec<Vec<usize>>,
    gen_matrices: Vec<Vec<i64>>,
    index: HashMap<Vec<i64>, usize>,
}

fn mat_mul(a: &[i64], b: &[i64], r: usize) -> Vec<i64> {
    let mut out = vec![0i64; r * r];
    for i in 0..r {
        for k in 0..r {
            let aik = a[i * r + k];
            if aik == 0 {
                continue;
            }
            for j in 0..r {
                out[i * r + j] += aik * b[k * r + j];
            }
        }
    }
    out
}

fn identity_matrix(r: usize) -> Vec<i64> {
    let mut m = vec![0i64; r * r];
    for i in 0..r {
        m[i * r + i] = 1;
    }
    m
}

pub fn apply_matrix(m: &[i64], v: &[i64], r: usize) -> Vec<i64> {
    (0..r)
        .map(|i| (0..r).map(|j| m[i * r + j] * v[j]).sum())
        .collect()
}

/// BFS enumeration of the group generated by the reflections in `gens`.
/// Returns (matrix, word) pairs in discovery order (length-sorted).
fn generate(
    rank: usize,
    gens: &[(usize, Vec<i64>)],
    limit: usize,
) -> Result<Vec<(Vec<i64>, Vec<usize>)>> {
    let id = identity_matrix(rank);
    let mut seen: HashMap<Vec<i64>, usize> = HashMap::new();
    let mut out: Vec<(Vec<i64>, Vec<usize>)> = vec![(id.clone(), vec![])];
    seen.insert(id, 0);
    let mut head = 0;
    while head < out.len() {
        let (mat, word) = out[head].clone();
        head += 1;
        for (gi, gmat) in gens {
            let next = mat_mul(&mat, gmat, rank);
            if !seen.contains_key(&next) {
                if out.len() >= limit {
                    return Err(Error::SizeGuardExceeded {
                        what: "Weyl group order".into(),
                        limit,
                    });
                }
                let mut w = word.clone();
                w.push(*gi);
                seen.insert(next.clone(), out.len());
                out.push((next, w));
            }
        }
    }
    Ok(out)
}

impl WeylGroup {
    pub fn new(rd: &RootDatum) -> Result<Self> {
        let rank = rd.rank();
        let gens: Vec<(usize, Vec<i64>)> = (0..rd.num_simple())
            .map(|i| (i, rd.simple_reflection_matrix(i)))
            .collect();
        let mut raw = generate(rank, &gens, WEYL_ORDER_LIMIT)?;
        raw.sort_by(|a, b| (a.1.len(), &a.1).cmp(&(b.1.len(), &b.1)));
        let elements: Vec<WeylElement> = raw
            .into_iter()
            .map(|(matrix, word)| WeylElement { length: word.len(), matrix, word })
            .collect();
        let index: HashMap<Vec<i64>, usize> = elements
            .iter()
            .enumerate()
            .map(|(i, e)| (e.matrix.clone(), i))
            .collect();
        let right_mul: Vec<Vec<usize>> = elements
            .iter()
            .map(|e| {
                gens.iter()
                    .map(|(_, g)| index[&mat_mul(&e.matrix, g, rank)])
                    .collect()
            })
            .collect();
        // w^{-1} by folding the reversed word (reflections are involutions).
        let inverse: Vec<usize> = elements
            .iter()
            .map(|e| {
                let mut m = identity_matrix(rank);
                for &i in e.word.iter().rev() {
                    m = mat_mul(&m, &gens[i].1, rank);
                }
                index[&m]
            })
            .collect();
        let gen_matrices = gens.into_iter().map(|(_, m)| m).collect();
        Ok(WeylGroup { rank, elements, inverse, right_mul, gen_matrices, index })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn elements(&self) -> &[WeylElement] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &WeylElement {
        &self.elements[i]
    }

    pub fn identity_index(&self) -> usize {
        0
    }

    pub fn index_of(&self, matrix: &[i64]) -> Option<usize> {
        self.index.get(matrix).copied()
    }

    pub fn inverse_index(&self, i: usize) -> usize {
        self.inverse[i]
    }

    /// Index of w * s_gen.
    pub fn right_multiply(&self, i: usize, gen: usize) -> usize {
        self.right_mul[i][gen]
    }

    /// Index of s_gen * w.
    pub fn left_multiply(&self, gen: usize, i: usize) -> usize {
        let m = mat_mul(&self.gen_matrices[gen], &self.elements[i].matrix, self.rank);
        self.index[&m]
    }

    /// Index of the product of two elements.
    pub fn multiply(&self, a: usize, b: usize) -> usize {
        let mut idx = a;
        for &g in &self.elements[b].word.clone() {
            idx = self.right_mul[idx][g];
        }
        idx
    }

    /// Apply element i to a weight in X*.
    pub fn apply(&self, i: usize, weight: &[i64]) -> Vec<i64> {
        apply_matrix(&self.elements[i].matrix, weight, self.rank)
    }

    /// Contragredient action on X_* tensor Q (used for torus points):
    /// the matrix of w on X_* is the inverse-transpose of its matrix on X*.
    pub fn apply_cocharacter(&self, i: usize, v: &[Rat]) -> Vec<Rat> {
        let m = &self.elements[self.inverse[i]].matrix;
        let r = self.rank;
        (0..r)
            .map(|row| {
                let mut acc = Rat::from_integer(0.into());
                for (col, x) in v.iter().enumerate() {
                    let c = m[col * r + row]; // transpose of the inverse matrix
                    if c != 0 {
                        acc += x * Rat::from_integer(c.into());
                    }
                }
                acc
            })
            .collect()
    }

    /// Number of positive roots sent negative; equals the Coxeter length.
    pub fn inversion_count(&self, rd: &RootDatum, i: usize) -> usize {
        rd.positive_roots()
            .iter()
            .filter(|beta| {
                let img = self.apply(i, beta);
                // A root is negative iff its expansion over the simple roots
                // is nonpositive; roots of finite systems are all-positive or
                // all-negative, so the negation test is membership of -img.
                rd.positive_roots().iter().any(|p| {
                    p.iter().zip(&img).all(|(a, b)| *a == -b)
                })
            })
            .count()
    }
}

/// Exhaustive duplicate-free list of Weyl elements.
pub fn weyl_elements(rd: &RootDatum) -> Result<Vec<WeylElement>> {
    Ok(WeylGroup::new(rd)?.elements().to_vec())
}

/// Apply a Weyl element to a weight vector.
pub fn weyl_action(w: &WeylElement, weight: &[i64]) -> Result<Vec<i64>> {
    let r2 = w.matrix.len();
    let r = (r2 as f64).sqrt() as usize;
    if r * r != r2 || weight.len() != r {
        return Err(Error::DimensionMismatch { expected: r, got: weight.len() });
    }
    Ok(apply_matrix(&w.matrix, weight, r))
}

/// Poincare polynomial of the parabolic subgroup W_J: sum of q^length over
/// elements of the subgroup generated by the reflections in J.
pub fn poincare_polynomial(rd: &RootDatum, j: &[usize]) -> Result<IntegerPolynomial> {
    subset_mask(j, rd.num_simple())?;
    let gens: Vec<(usize, Vec<i64>)> = j
        .iter()
        .map(|&i| (i, rd.simple_reflection_matrix(i)))
        .collect();
    let elements = generate(rd.rank(), &gens, WEYL_ORDER_LIMIT)?;
    let mut coeffs: Vec<i64> = vec![];
    for (_, word) in &elements {
        let l = word.len();
        if coeffs.len() <= l {
            coeffs.resize(l + 1, 0);
        }
        coeffs[l] += 1;
    }
    Ok(IntegerPolynomial(coeffs))
}
