//! Exact-arithmetic kernels for Kazhdan-Lusztig parameters of type A, the
//! affine Hecke algebra in its Bernstein presentation, and Reeder's
//! formal-degree sums, together with the Galois-twist action on all of them.
//!
//! Everything downstream of the root-datum combinatorics is computed in exact
//! arithmetic: cyclotomic numbers for torsion data, rational functions in
//! v = q^{1/2} for everything depending on q. Floating point appears only in
//! the independent verification oracle and in report decimals.

pub mod campaign;
pub mod cyclotomic;
pub mod degree;
pub mod error;
pub mod hecke;
pub mod parameters;
pub mod ratfun;
pub mod root_datum;
pub mod weyl;

pub use cyclotomic::{cyclo_arith, CyclotomicNumber, GaloisAutomorphism, Rat};
pub use degree::{
    degree_numeric, float_oracle_degree, float_oracle_m, galois_invariance_report, m_function,
    m_squared, partial_degree_inverse, plain_m_squared_sum, DegreeEngine, FormalDegreeReport,
    MSquaredTerm,
};
pub use error::{Error, Result};
pub use hecke::{verify_relations, CentralCharacter, HeckeAlgebra, HeckeElement, LaurentInt};
pub use parameters::{
    adjoint_projection, build_parameter, centralizer_dimension, enumerate_parameters,
    galois_twist, is_essentially_discrete, jm_cocharacter, steinberg_point, GaloisTwistResult,
    KLParameter, NilpotentMatrix, ParameterWire, TorusPoint,
};
pub use ratfun::{ratfun_arith, IntegerPolynomial, RatFun};
pub use root_datum::{DominantWeight, RootDatum, RootDatumSpec};
pub use weyl::{poincare_polynomial, weyl_action, weyl_elements, WeylElement, WeylGroup};
