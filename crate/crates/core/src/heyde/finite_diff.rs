//! Finite differences on the character group and an executable transcript
//! of the difference-operator argument for unimodularity on `H`.

use num_complex::Complex64;
use serde::Serialize;

use crate::dist::DEFAULT_TOL;
use crate::error::{Error, Result};
use crate::group::{Elem, FinGroup, Subgroup};

use super::{compute_h, max_norm, symmetry_direct, SymmetryInstance};

/// A complex-valued function on a finite group, stored densely by index.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupFn {
    group: FinGroup,
    values: Vec<Complex64>,
}

impl GroupFn {
    pub fn new(group: &FinGroup, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != group.order() {
            return Err(Error::InvalidGroup(format!(
                "{} values for a group of order {}",
                values.len(),
                group.order()
            )));
        }
        Ok(GroupFn {
            group: group.clone(),
            values,
        })
    }

    pub fn from_fn(group: &FinGroup, f: impl Fn(&Elem) -> Complex64) -> Self {
        GroupFn {
            group: group.clone(),
            values: group.elements().map(|y| f(&y)).collect(),
        }
    }

    pub fn constant(group: &FinGroup, c: Complex64) -> Self {
        GroupFn {
            group: group.clone(),
            values: vec![c; group.order()],
        }
    }

    pub fn group(&self) -> &FinGroup {
        &self.group
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn at(&self, y: &Elem) -> Complex64 {
        self.values[self.group.index_of(y)]
    }

    fn shifted_diff(&self, h: usize) -> GroupFn {
        let values = (0..self.values.len())
            .map(|y| self.values[self.group.add_idx(y, h)] - self.values[y])
            .collect();
        GroupFn {
            group: self.group.clone(),
            values,
        }
    }
}

/// `Δ_h P(y) = P(y + h) − P(y)`.
pub fn delta(h: &Elem, p: &GroupFn) -> Result<GroupFn> {
    p.group.check(h)?;
    Ok(p.shifted_diff(p.group.index_of(h)))
}

/// Whether `Δ_h^n P ≡ 0` for every `h` (within [`DEFAULT_TOL`]).
pub fn is_polynomial_constant(p: &GroupFn, n: u32) -> bool {
    (0..p.group.order()).all(|h| {
        let mut d = p.clone();
        for _ in 0..n {
            d = d.shifted_diff(h);
        }
        max_norm(d.values.iter().copied()) <= DEFAULT_TOL
    })
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct TranscriptStep {
    pub name: String,
    pub identity: String,
    pub max_residual: f64,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct TranscriptReport {
    pub group: String,
    pub alpha: Vec<Vec<i64>>,
    pub h_order: usize,
    pub steps: Vec<TranscriptStep>,
    /// `max_{h,y ∈ H} |Δ_h³ P(y)|` and the same for `Q`.
    pub cubic_difference_on_h: (f64, f64),
    pub max_abs_p_on_h: f64,
    pub max_abs_q_on_h: f64,
    pub concluded: bool,
}

struct Tables {
    n: usize,
    add: Vec<usize>,
    neg: Vec<usize>,
    adj: Vec<usize>,
}

impl Tables {
    fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.n + b]
    }
    fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg[b])
    }
}

/// Runs the difference-operator argument on a concrete instance with
/// `I − α` invertible: with `P = log|μ̂₁|²`, `Q = log|μ̂₂|²`, checks the log
/// form of the functional equation, the three successive substitution
/// identities, and that they force `P = Q = 0` on `H = (I + α̃)Y`.
pub fn second_proof_reduction(inst: &SymmetryInstance) -> Result<TranscriptReport> {
    second_proof_reduction_with_tol(inst, DEFAULT_TOL)
}

pub fn second_proof_reduction_with_tol(
    inst: &SymmetryInstance,
    tol: f64,
) -> Result<TranscriptReport> {
    let g = inst.group();
    let alpha = inst.alpha();
    if g.has_order_two() {
        return Err(Error::Precondition(
            "multiplication by 2 must be an automorphism (odd-order group)".into(),
        ));
    }
    if !alpha.identity_minus().is_automorphism() {
        return Err(Error::Precondition("I − α is not an automorphism".into()));
    }
    if !symmetry_direct(inst) {
        return Err(Error::Precondition(
            "the conditional distribution is not symmetric".into(),
        ));
    }
    // f = ν̂₁ with ν₁ = μ₁ * μ̄₁, so f = |μ̂₁|² > 0
    let nu1 = inst.mu1().convolve(&inst.mu1().reflect())?;
    let nu2 = inst.mu2().convolve(&inst.mu2().reflect())?;
    let (f, gv) = (nu1.fourier(), nu2.fourier());
    if f.values().iter().chain(gv.values()).any(|v| v.re <= tol) {
        return Err(Error::Precondition(
            "characteristic functions must not vanish".into(),
        ));
    }
    let p: Vec<f64> = f.values().iter().map(|v| v.re.ln()).collect();
    let q: Vec<f64> = gv.values().iter().map(|v| v.re.ln()).collect();

    let n = g.order();
    let adj_map = alpha.adjoint();
    let mut add = vec![0; n * n];
    for i in 0..n {
        for j in 0..n {
            add[i * n + j] = g.add_idx(i, j);
        }
    }
    let t = Tables {
        n,
        add,
        neg: (0..n).map(|i| g.neg_idx(i)).collect(),
        adj: adj_map.table(),
    };
    let plus = adj_map.plus_identity(true).table(); // I + α̃
    let minus = adj_map.identity_minus().table(); // I − α̃
    let adj_minus_i = adj_map.plus_identity(false).table(); // α̃ − I
    let double: Vec<usize> = (0..n).map(|i| t.add(i, i)).collect();
    let two_adj: Vec<usize> = (0..n).map(|i| double[t.adj[i]]).collect();

    // Δ_a f(y), Δ_b Δ_a f(y), Δ_c Δ_b Δ_a f(y)
    let d1 = |f: &[f64], a: usize, y: usize| f[t.add(y, a)] - f[y];
    let d2 = |f: &[f64], b: usize, a: usize, y: usize| d1(f, a, t.add(y, b)) - d1(f, a, y);
    let d3 = |f: &[f64], c: usize, b: usize, a: usize, y: usize| {
        d2(f, b, a, t.add(y, c)) - d2(f, b, a, y)
    };

    let mut steps = Vec::new();
    let mut record = |name: &str, identity: &str, r: f64| {
        steps.push(TranscriptStep {
            name: name.into(),
            identity: identity.into(),
            max_residual: r,
            passed: r <= tol,
        });
    };

    let mut r0: f64 = 0.0;
    for u in 0..n {
        for v in 0..n {
            let av = t.adj[v];
            let e = p[t.add(u, v)] + q[t.add(u, av)] - p[t.sub(u, v)] - q[t.sub(u, av)];
            r0 = r0.max(e.abs());
        }
    }
    record(
        "log-equation",
        "P(u+v) + Q(u+α̃v) − P(u−v) − Q(u−α̃v) = 0",
        r0,
    );

    let mut r1: f64 = 0.0;
    for k1 in 0..n {
        for u in 0..n {
            for v in 0..n {
                let e = d1(&p, plus[k1], t.add(u, v)) + d1(&q, two_adj[k1], t.add(u, t.adj[v]))
                    - d1(&p, adj_minus_i[k1], t.sub(u, v));
                r1 = r1.max(e.abs());
            }
        }
    }
    record(
        "k1-substitution",
        "Δ_{(I+α̃)k₁}P(u+v) + Δ_{2α̃k₁}Q(u+α̃v) − Δ_{(α̃−I)k₁}P(u−v) = 0",
        r1,
    );

    let mut r2: f64 = 0.0;
    for k1 in 0..n {
        for k2 in 0..n {
            for u in 0..n {
                for v in 0..n {
                    let e = d2(&p, double[k2], plus[k1], t.add(u, v))
                        + d2(&q, plus[k2], two_adj[k1], t.add(u, t.adj[v]));
                    r2 = r2.max(e.abs());
                }
            }
        }
    }
    record(
        "k2-substitution",
        "Δ_{2k₂}Δ_{(I+α̃)k₁}P(u+v) + Δ_{(I+α̃)k₂}Δ_{2α̃k₁}Q(u+α̃v) = 0",
        r2,
    );

    let (mut r3, mut r3q): (f64, f64) = (0.0, 0.0);
    for k1 in 0..n {
        for k2 in 0..n {
            for k3 in 0..n {
                for y in 0..n {
                    r3 = r3.max(d3(&p, minus[k3], double[k2], plus[k1], y).abs());
                    r3q = r3q.max(d3(&q, minus[k3], plus[k2], two_adj[k1], y).abs());
                }
            }
        }
    }
    record(
        "k3-substitution",
        "Δ_{(I−α̃)k₃}Δ_{2k₂}Δ_{(I+α̃)k₁}P(u) = 0",
        r3,
    );
    record(
        "k3-substitution-q",
        "Δ_{(I−α̃)k₃}Δ_{(I+α̃)k₂}Δ_{2α̃k₁}Q(u) = 0",
        r3q,
    );

    if let Some(bad) = steps.iter().find(|s| !s.passed) {
        return Err(Error::TranscriptStep {
            step: bad.name.clone(),
            residual: bad.max_residual,
        });
    }

    let h = compute_h(alpha);
    let cubic = |f: &[f64]| cubic_on_subgroup(f, &h, &t);
    let cubic_difference_on_h = (cubic(&p), cubic(&q));
    let on_h = |f: &[f64]| h.indices().map(|y| f[y].abs()).fold(0.0, f64::max);
    let (max_abs_p_on_h, max_abs_q_on_h) = (on_h(&p), on_h(&q));
    let concluded = cubic_difference_on_h.0 <= tol
        && cubic_difference_on_h.1 <= tol
        && max_abs_p_on_h <= tol
        && max_abs_q_on_h <= tol;
    if !concluded {
        return Err(Error::TranscriptStep {
            step: "vanishing on H".into(),
            residual: max_abs_p_on_h.max(max_abs_q_on_h),
        });
    }
    Ok(TranscriptReport {
        group: g.spec(),
        alpha: alpha.matrix().to_vec(),
        h_order: h.order(),
        steps,
        cubic_difference_on_h,
        max_abs_p_on_h,
        max_abs_q_on_h,
        concluded,
    })
}

fn cubic_on_subgroup(f: &[f64], h: &Subgroup, t: &Tables) -> f64 {
    let members: Vec<usize> = h.indices().collect();
    let mut worst: f64 = 0.0;
    for &step in &members {
        for &y in &members {
            let y1 = t.add(y, step);
            let y2 = t.add(y1, step);
            let y3 = t.add(y2, step);
            let d = f[y3] - 3.0 * f[y2] + 3.0 * f[y1] - f[y];
            worst = worst.max(d.abs());
        }
    }
    worst
}
