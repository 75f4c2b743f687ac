use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use crate::dist::{CharFn, DEFAULT_TOL};
use crate::dist::Dist;
use crate::error::{Error, Result};
use crate::group::Elem;
use crate::heyde::common_kernel_factor;
use crate::rational::{format_q, Q};

use super::{rg_symmetry, RGCharFn, RGInstance, RgTerm};

/// A point `(t, g)` of `ℝ × G` with rational real part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RgPoint {
    pub t: Q,
    pub g: Elem,
}

impl RgPoint {
    pub fn to_json(&self) -> Value {
        json!({ "t": format_q(&self.t), "g": self.g.to_string() })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum RgDecomposition {
    /// `μ_j = γ_j * ω * E_{x_j}` with `γ̂_j(s) = exp{−σ_j s²}` and `ω`
    /// supported in `K = Ker(I + α_G)`.
    Gaussian {
        sigma1: Q,
        sigma2: Q,
        omega: Dist,
        x1: RgPoint,
        x2: RgPoint,
    },
    /// `a = −1`: `μ_j = ω * E_{x_j}` with `ω` supported in `ℝ × K`.
    NegativeIdentity {
        omega: RGCharFn,
        x1: RgPoint,
        x2: RgPoint,
    },
    /// No representation of the required form exists.
    Irreducible { reason: String },
}

impl RgDecomposition {
    pub fn is_irreducible(&self) -> bool {
        matches!(self, RgDecomposition::Irreducible { .. })
    }

    pub fn to_json(&self) -> Value {
        match self {
            RgDecomposition::Gaussian {
                sigma1,
                sigma2,
                omega,
                x1,
                x2,
            } => json!({
                "kind": "gaussian",
                "sigma1": format_q(sigma1),
                "sigma2": format_q(sigma2),
                "omega": omega.to_json(),
                "x1": x1.to_json(),
                "x2": x2.to_json(),
            }),
            RgDecomposition::NegativeIdentity { omega, x1, x2 } => json!({
                "kind": "negative_identity",
                "omega": omega.to_json(),
                "x1": x1.to_json(),
                "x2": x2.to_json(),
            }),
            RgDecomposition::Irreducible { reason } => json!({
                "kind": "irreducible",
                "reason": reason,
            }),
        }
    }
}

fn irreducible(reason: impl Into<String>) -> RgDecomposition {
    RgDecomposition::Irreducible {
        reason: reason.into(),
    }
}

/// Exponent data shared by every character, if it is.
fn uniform_exponent(f: &RGCharFn) -> Option<(Q, Q)> {
    let t0 = &f.terms()[0];
    f.terms()
        .iter()
        .all(|t| t.quad == t0.quad && t.lin == t0.lin)
        .then_some((t0.quad, t0.lin))
}

fn kappa_charfn(f: &RGCharFn) -> Result<CharFn> {
    CharFn::new(f.group(), f.terms().iter().map(|t| t.kappa).collect())
}

/// Recovers `(σ_j, ω, x_j)` from a symmetric nonvanishing instance, or
/// reports that no Gaussian-times-`K` representation exists.
pub fn rg_decompose(inst: &RGInstance) -> Result<RgDecomposition> {
    if !rg_symmetry(inst) {
        return Err(Error::Precondition(
            "the functional equation does not hold".into(),
        ));
    }
    if !inst.f1.is_nonvanishing() || !inst.f2.is_nonvanishing() {
        return Err(Error::Precondition(
            "characteristic functions must not vanish".into(),
        ));
    }
    let k = inst.alpha_g.plus_identity(true).kernel();
    if inst.a == Q::from_integer(-1) {
        return Ok(negative_identity_branch(inst, &k));
    }

    let Some((q1, t1)) = uniform_exponent(&inst.f1) else {
        return Ok(irreducible(
            "the exponent of f1 depends on the character, so f1 is not a Gaussian times a law on G",
        ));
    };
    let Some((q2, t2)) = uniform_exponent(&inst.f2) else {
        return Ok(irreducible(
            "the exponent of f2 depends on the character, so f2 is not a Gaussian times a law on G",
        ));
    };
    let (sigma1, sigma2) = (-q1, -q2);
    if sigma1.is_negative() || sigma2.is_negative() {
        return Ok(irreducible("negative Gaussian variance"));
    }
    let omega1 = match kappa_charfn(&inst.f1)?.inverse_fourier() {
        Ok(d) => d,
        Err(e) => return Ok(irreducible(format!("κ of f1 is not a characteristic function: {e}"))),
    };
    let omega2 = match kappa_charfn(&inst.f2)?.inverse_fourier() {
        Ok(d) => d,
        Err(e) => return Ok(irreducible(format!("κ of f2 is not a characteristic function: {e}"))),
    };
    let Some((omega, g1, g2)) = common_kernel_factor(&omega1, &omega2, &k) else {
        return Ok(irreducible(
            "the G-parts are not shifts of one distribution supported in Ker(I+α_G)",
        ));
    };
    Ok(RgDecomposition::Gaussian {
        sigma1,
        sigma2,
        omega,
        x1: RgPoint { t: t1, g: g1 },
        x2: RgPoint { t: t2, g: g2 },
    })
}

fn negative_identity_branch(inst: &RGInstance, k: &crate::group::Subgroup) -> RgDecomposition {
    let g = inst.group();
    let (a, b) = (inst.f1.terms(), inst.f2.terms());
    let dt = a[0].lin - b[0].lin;
    if a.iter().zip(b).any(|(u, v)| u.quad != v.quad || u.lin - v.lin != dt) {
        return irreducible("f1 and f2 differ by more than a shift");
    }
    let roots = g.roots_of_unity();
    let Some(diff) = (0..g.order()).find(|&x| {
        (0..g.order()).all(|h| {
            (a[h].kappa - b[h].kappa * roots[g.phase_idx(x, h) as usize]).norm() <= DEFAULT_TOL
        })
    }) else {
        return irreducible("the G-parts of f1 and f2 are not shifts of each other");
    };
    let marginal = match kappa_charfn(&inst.f2).and_then(|c| c.inverse_fourier()) {
        Ok(d) => d,
        Err(e) => return irreducible(format!("κ of f2 is not a characteristic function: {e}")),
    };
    let coset: Vec<usize> = {
        let s = marginal.support_idx().next().unwrap_or(0);
        let mut c: Vec<usize> = k.indices().map(|kk| g.add_idx(s, kk)).collect();
        c.sort_unstable();
        c
    };
    let Some(g2) = coset
        .into_iter()
        .find(|&x| marginal.shift_idx(g.neg_idx(x)).is_supported_in(k))
    else {
        return irreducible("the G-marginal is not supported in a coset of Ker(I+α_G)");
    };
    let terms = (0..g.order())
        .map(|h| RgTerm {
            kappa: b[h].kappa * roots[g.phase_idx(g2, h) as usize].conj(),
            quad: b[h].quad,
            lin: b[h].lin,
        })
        .collect();
    let omega = match RGCharFn::new(g, terms) {
        Ok(f) => f,
        Err(e) => return irreducible(e.to_string()),
    };
    RgDecomposition::NegativeIdentity {
        omega,
        x1: RgPoint {
            t: dt,
            g: g.elem_at(g.add_idx(g2, diff)),
        },
        x2: RgPoint {
            t: Q::zero(),
            g: g.elem_at(g2),
        },
    }
}
