//! Harmonic analysis on finite Abelian groups with exact arithmetic, and
//! executable checks of Heyde-type characterization theorems.
//!
//! - [`group`]: cyclic-product groups, characters, subgroups, annihilators
//! - [`morphism`]: endomorphisms as compatible integer matrices
//! - [`dist`]: exact distributions, Fourier transforms, convolution
//! - [`heyde`]: the conditional-symmetry criterion, decomposition and the
//!   finite-difference transcript
//! - [`rg`]: Gaussian-type characteristic functions on `ℝ × G`
//! - [`cli`]: batch front end used by the `heyde` binary

pub mod cli;
pub mod dist;
pub mod error;
pub mod group;
pub mod heyde;
pub mod morphism;
pub mod rational;
pub mod rg;

pub use dist::{haar_on, CharFn, Dist, DEFAULT_TOL};
pub use error::{Error, Result};
pub use group::{annihilator, doubled, has_order_two, Elem, FinGroup, Subgroup};
pub use heyde::{
    check_unimodular_on_h, compute_h, decompose, second_proof_reduction, symmetry_direct,
    symmetry_fourier, Decomposition, SymmetryInstance,
};
pub use morphism::{enumerate_automorphisms, GroupMap};
pub use rational::Q;
pub use rg::{
    make_remark_family, rg_decompose, rg_positive_definite_check, rg_symmetry, RGCharFn,
    RGInstance, RgDecomposition, RemarkKappa,
};
