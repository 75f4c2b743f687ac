//! Conditional symmetry of `L₂ = ξ₁ + αξ₂` given `L₁ = ξ₁ + ξ₂` on a finite
//! Abelian group, checked two independent ways, plus the structural
//! decomposition `μ_j = ω * E_{x_j}` and the finite-difference transcript.

mod decompose;
mod finite_diff;

pub use decompose::{common_kernel_factor, decompose, Decomposition};
pub use finite_diff::{
    delta, is_polynomial_constant, second_proof_reduction, second_proof_reduction_with_tol,
    GroupFn, TranscriptReport,
    TranscriptStep,
};

use num_complex::Complex64;
use num_integer::Integer;
use num_rational::Rational64;
use num_traits::Zero;

use crate::dist::{CharFn, Dist, DEFAULT_TOL};
use crate::error::{Error, Result};
use crate::group::{FinGroup, Subgroup};
use crate::morphism::GroupMap;

/// Two distributions and an automorphism on a common group.
#[derive(Clone, Debug)]
pub struct SymmetryInstance {
    alpha: GroupMap,
    mu1: Dist,
    mu2: Dist,
}

impl SymmetryInstance {
    pub fn new(alpha: GroupMap, mu1: Dist, mu2: Dist) -> Result<Self> {
        for mu in [&mu1, &mu2] {
            if mu.group() != alpha.domain() {
                return Err(Error::GroupMismatch {
                    left: alpha.domain().spec(),
                    right: mu.group().spec(),
                });
            }
        }
        if !alpha.is_automorphism() {
            return Err(Error::NotAutomorphism(format!(
                "{alpha} on {}",
                alpha.domain()
            )));
        }
        Ok(SymmetryInstance { alpha, mu1, mu2 })
    }

    pub fn group(&self) -> &FinGroup {
        self.alpha.domain()
    }

    pub fn alpha(&self) -> &GroupMap {
        &self.alpha
    }

    pub fn mu1(&self) -> &Dist {
        &self.mu1
    }

    pub fn mu2(&self) -> &Dist {
        &self.mu2
    }

    /// `K = Ker(I + α)`.
    pub fn kernel_k(&self) -> Subgroup {
        self.alpha.plus_identity(true).kernel()
    }
}

/// Precomputed index tables for repeated checks under one automorphism.
#[derive(Clone, Debug)]
pub struct SymmetryContext {
    group: FinGroup,
    n: usize,
    add: Vec<usize>,
    neg: Vec<usize>,
    alpha: Vec<usize>,
    adjoint: Vec<usize>,
}

impl SymmetryContext {
    pub fn new(alpha: &GroupMap) -> Self {
        let group = alpha.domain().clone();
        let n = group.order();
        let mut add = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                add[i * n + j] = group.add_idx(i, j);
            }
        }
        let neg = (0..n).map(|i| group.neg_idx(i)).collect();
        SymmetryContext {
            n,
            add,
            neg,
            alpha: alpha.table(),
            adjoint: alpha.adjoint().table(),
            group,
        }
    }

    pub fn group(&self) -> &FinGroup {
        &self.group
    }

    /// Exact check that the joint law of `(L₁, L₂)` equals that of
    /// `(L₁, −L₂)`.
    pub fn direct(&self, mu1: &Dist, mu2: &Dist) -> bool {
        match (scaled(mu1), scaled(mu2)) {
            (Some(a), Some(b)) => self.direct_scaled(&a, &b),
            _ => self.direct_rational(mu1, mu2),
        }
    }

    fn direct_scaled(&self, c1: &[(usize, i128)], c2: &[(usize, i128)]) -> bool {
        let n = self.n;
        let mut joint = vec![0i128; n * n];
        for &(x1, m1) in c1 {
            for &(x2, m2) in c2 {
                let w = self.add[x1 * n + x2];
                let z = self.add[x1 * n + self.alpha[x2]];
                joint[w * n + z] += m1 * m2;
            }
        }
        (0..n).all(|w| (0..n).all(|z| joint[w * n + z] == joint[w * n + self.neg[z]]))
    }

    fn direct_rational(&self, mu1: &Dist, mu2: &Dist) -> bool {
        let n = self.n;
        let mut joint = vec![Rational64::zero(); n * n];
        for x1 in mu1.support_idx() {
            for x2 in mu2.support_idx() {
                let w = self.add[x1 * n + x2];
                let z = self.add[x1 * n + self.alpha[x2]];
                joint[w * n + z] += mu1.masses()[x1] * mu2.masses()[x2];
            }
        }
        (0..n).all(|w| (0..n).all(|z| joint[w * n + z] == joint[w * n + self.neg[z]]))
    }

    /// Largest violation of
    /// `μ̂₁(u+v)μ̂₂(u+α̃v) = μ̂₁(u−v)μ̂₂(u−α̃v)` over all `(u, v)`.
    pub fn fourier_residual(&self, f1: &CharFn, f2: &CharFn) -> f64 {
        let n = self.n;
        let (a, b) = (f1.values(), f2.values());
        let mut worst: f64 = 0.0;
        for u in 0..n {
            for v in 0..n {
                let av = self.adjoint[v];
                let lhs = a[self.add[u * n + v]] * b[self.add[u * n + av]];
                let rhs = a[self.add[u * n + self.neg[v]]] * b[self.add[u * n + self.neg[av]]];
                worst = worst.max((lhs - rhs).norm());
            }
        }
        worst
    }

    pub fn fourier(&self, f1: &CharFn, f2: &CharFn, tol: f64) -> bool {
        self.fourier_residual(f1, f2) <= tol
    }
}

/// Masses as integer numerators over a common denominator, when that fits.
fn scaled(mu: &Dist) -> Option<Vec<(usize, i128)>> {
    let mut den: i64 = 1;
    for i in mu.support_idx() {
        den = den.lcm(mu.masses()[i].denom());
        if den > (1 << 40) {
            return None;
        }
    }
    Some(
        mu.support_idx()
            .map(|i| {
                let m = mu.masses()[i];
                (i, (*m.numer() as i128) * (den / m.denom()) as i128)
            })
            .collect(),
    )
}

pub fn symmetry_direct(inst: &SymmetryInstance) -> bool {
    SymmetryContext::new(&inst.alpha).direct(&inst.mu1, &inst.mu2)
}

pub fn symmetry_fourier(inst: &SymmetryInstance) -> bool {
    symmetry_fourier_with_tol(inst, DEFAULT_TOL)
}

pub fn symmetry_fourier_with_tol(inst: &SymmetryInstance, tol: f64) -> bool {
    SymmetryContext::new(&inst.alpha).fourier(&inst.mu1.fourier(), &inst.mu2.fourier(), tol)
}

/// `H = (I + α̃)Y`.
pub fn compute_h(alpha: &GroupMap) -> Subgroup {
    alpha.adjoint().plus_identity(true).image()
}

pub fn check_unimodular_on_h(inst: &SymmetryInstance) -> bool {
    check_unimodular_on_h_with_tol(inst, DEFAULT_TOL)
}

/// `|μ̂₁| = |μ̂₂| = 1` on `H` within `tol`.
pub fn check_unimodular_on_h_with_tol(inst: &SymmetryInstance, tol: f64) -> bool {
    let h = compute_h(&inst.alpha);
    let unimodular = |f: &CharFn| h.indices().all(|y| (f.at_idx(y).norm() - 1.0).abs() <= tol);
    unimodular(&inst.mu1.fourier()) && unimodular(&inst.mu2.fourier())
}

pub(crate) fn max_norm(values: impl IntoIterator<Item = Complex64>) -> f64 {
    values.into_iter().map(|v| v.norm()).fold(0.0, f64::max)
}
