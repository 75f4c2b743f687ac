use serde_json::{json, Value};

use crate::dist::Dist;
use crate::error::{Error, Result};
use crate::group::{Elem, Subgroup};

use super::{symmetry_direct, SymmetryInstance};

/// `μ_j = ω * E_{x_j}` with `ω` supported in `K = Ker(I + α)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Decomposition {
    pub omega: Dist,
    pub x1: Elem,
    pub x2: Elem,
    pub kernel_k: Subgroup,
    /// Whether the canonical shifts satisfy `x₁ + αx₂ = 0`. Recorded, not
    /// required.
    pub shifts_balanced: bool,
}

impl Decomposition {
    pub fn to_json(&self) -> Value {
        json!({
            "omega": self.omega.to_json(),
            "x1": self.x1.to_string(),
            "x2": self.x2.to_string(),
            "kernel": self.kernel_k.elements().iter().map(|e| e.to_string()).collect::<Vec<_>>(),
            "shifts_balanced": self.shifts_balanced,
        })
    }
}

/// Finds `(ω, x₁, x₂)` with `μ_j = ω * E_{x_j}` and `supp ω ⊆ K`, taking the
/// lexicographically smallest `x₁` and then the smallest `x₂`.
pub fn common_kernel_factor(mu1: &Dist, mu2: &Dist, k: &Subgroup) -> Option<(Dist, Elem, Elem)> {
    let g = mu1.group();
    if mu2.group() != g || k.parent() != g {
        return None;
    }
    let coset = |s: usize| {
        let mut c: Vec<usize> = k.indices().map(|kk| g.add_idx(s, kk)).collect();
        c.sort_unstable();
        c
    };
    let s1 = mu1.support_idx().next()?;
    let x1 = coset(s1)
        .into_iter()
        .find(|&x| mu1.shift_idx(g.neg_idx(x)).is_supported_in(k))?;
    let omega = mu1.shift_idx(g.neg_idx(x1));
    let s2 = mu2.support_idx().next()?;
    let x2 = coset(s2)
        .into_iter()
        .find(|&x| &omega.shift_idx(x) == mu2)?;
    Some((omega, g.elem_at(x1), g.elem_at(x2)))
}

/// Constructive form of the structure theorem: searches the support coset
/// of `μ₁` modulo `K` for a shift that moves it into `K`, then matches `μ₂`.
pub fn decompose(inst: &SymmetryInstance) -> Result<Decomposition> {
    if !symmetry_direct(inst) {
        return Err(Error::Precondition(
            "the conditional distribution is not symmetric".into(),
        ));
    }
    let k = inst.kernel_k();
    let (omega, x1, x2) = common_kernel_factor(inst.mu1(), inst.mu2(), &k).ok_or_else(|| {
        let g = inst.group();
        let mut reasons = Vec::new();
        if g.has_order_two() {
            reasons.push("group has elements of order 2");
        }
        if !inst.mu1().is_nonvanishing() || !inst.mu2().is_nonvanishing() {
            reasons.push("a characteristic function vanishes");
        }
        let tail = if reasons.is_empty() {
            "hypotheses hold: this contradicts the structure theorem".to_string()
        } else {
            format!("outside theorem hypotheses ({})", reasons.join(", "))
        };
        Error::NoDecomposition(format!(
            "no ω supported in Ker(I+α) with μ_j = ω * E_x_j; {tail}"
        ))
    })?;
    let g = inst.group();
    let alpha_x2 = inst.alpha().apply(&x2)?;
    let shifts_balanced = g.add(&x1, &alpha_x2) == g.zero();
    Ok(Decomposition {
        omega,
        x1,
        x2,
        kernel_k: k,
        shifts_balanced,
    })
}
