//! Distributions on `ℝ × G` through Gaussian-type characteristic functions
//! `f(s, h) = κ_h · exp{q_h s² + i l_h s}` with exact rational `q_h`, `l_h`.
//!
//! The symmetry equation
//! `f₁(s₁+s₂, h₁+h₂) f₂(s₁+as₂, h₁+α̃h₂) = f₁(s₁−s₂, h₁−h₂) f₂(s₁−as₂, h₁−α̃h₂)`
//! is decided by matching the polynomial exponents in `(s₁, s₂)` exactly and
//! the constant factors `κ` multiplicatively.

mod decompose;
mod order_two;

pub use decompose::{rg_decompose, RgDecomposition, RgPoint};
pub use order_two::{
    make_remark_family, order_two_charfn, rg_positive_definite_check, DensityGrid, PositivityReport,
    RemarkKappa,
};

use num_complex::Complex64;
use num_traits::{Signed, Zero};
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::dist::{Dist, DEFAULT_TOL};
use crate::error::{Error, Result};
use crate::group::{Elem, FinGroup};
use crate::morphism::GroupMap;
use crate::rational::{format_q, parse_q, snap, to_f64, Q};

/// Coefficients of one character `h`.
#[derive(Clone, Debug, PartialEq)]
pub struct RgTerm {
    pub kappa: Complex64,
    pub quad: Q,
    pub lin: Q,
}

impl RgTerm {
    pub fn new(kappa: Complex64, quad: Q, lin: Q) -> Self {
        RgTerm { kappa, quad, lin }
    }

    pub fn eval(&self, s: f64) -> Complex64 {
        let q = to_f64(&self.quad);
        let l = to_f64(&self.lin);
        self.kappa * Complex64::new(q * s * s, l * s).exp()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RGCharFn {
    group: FinGroup,
    terms: Vec<RgTerm>,
}

impl RGCharFn {
    /// Validates `κ₀ = 1`, `q_h ≤ 0`, `|κ_h| ≤ 1` and the hermitian relations
    /// `κ_{−h} = conj κ_h`, `q_{−h} = q_h`, `l_{−h} = l_h`.
    pub fn new(group: &FinGroup, terms: Vec<RgTerm>) -> Result<Self> {
        let bad = |m: String| Err(Error::InvalidDistribution(m));
        if terms.len() != group.order() {
            return bad(format!(
                "{} terms for a group of order {}",
                terms.len(),
                group.order()
            ));
        }
        if (terms[0].kappa - 1.0).norm() > DEFAULT_TOL {
            return bad(format!("κ at h = 0 is {}, expected 1", terms[0].kappa));
        }
        for (i, t) in terms.iter().enumerate() {
            let h = group.elem_at(i);
            if t.quad.is_positive() {
                return bad(format!("quadratic coefficient at h = {h} is positive"));
            }
            if t.kappa.norm() > 1.0 + DEFAULT_TOL {
                return bad(format!("|κ| > 1 at h = {h}"));
            }
            let m = &terms[group.neg_idx(i)];
            if (m.kappa - t.kappa.conj()).norm() > DEFAULT_TOL || m.quad != t.quad || m.lin != t.lin
            {
                return bad(format!("hermitian symmetry fails between h = {h} and −h"));
            }
        }
        Ok(RGCharFn {
            group: group.clone(),
            terms,
        })
    }

    /// `exp{−σs²} · ω̂(h) · e^{its}(g, h)`: the characteristic function of
    /// `γ_σ * ω * E_{(t, g)}`.
    pub fn gaussian_times(sigma: Q, omega: &Dist, shift: &RgPoint) -> Result<Self> {
        let g = omega.group();
        g.check(&shift.g)?;
        if sigma.is_negative() {
            return Err(Error::InvalidDistribution("σ must be nonnegative".into()));
        }
        let f = omega.fourier();
        let gi = g.index_of(&shift.g);
        let roots = g.roots_of_unity();
        let terms = (0..g.order())
            .map(|h| RgTerm {
                kappa: f.at_idx(h) * roots[g.phase_idx(gi, h) as usize],
                quad: -sigma,
                lin: shift.t,
            })
            .collect();
        RGCharFn::new(g, terms)
    }

    /// Pure Gaussian on `ℝ × {0}`.
    pub fn gaussian(sigma: Q) -> Result<Self> {
        let g = FinGroup::trivial();
        Self::gaussian_times(
            sigma,
            &Dist::point(&g, &g.zero())?,
            &RgPoint {
                t: Q::zero(),
                g: g.zero(),
            },
        )
    }

    pub fn group(&self) -> &FinGroup {
        &self.group
    }

    pub fn terms(&self) -> &[RgTerm] {
        &self.terms
    }

    pub fn term(&self, h: &Elem) -> &RgTerm {
        &self.terms[self.group.index_of(h)]
    }

    pub fn eval(&self, s: f64, h: usize) -> Complex64 {
        self.terms[h].eval(s)
    }

    pub fn is_nonvanishing(&self) -> bool {
        self.terms.iter().all(|t| t.kappa.norm() > DEFAULT_TOL)
    }

    /// `{h: {kappa: [re, im], quad: "p/q", lin: "p/q"}}`.
    pub fn to_json(&self) -> Value {
        let mut map = Map::new();
        for (i, t) in self.terms.iter().enumerate() {
            map.insert(
                self.group.elem_at(i).to_string(),
                json!({
                    "kappa": [format_real(t.kappa.re), format_real(t.kappa.im)],
                    "quad": format_q(&t.quad),
                    "lin": format_q(&t.lin),
                }),
            );
        }
        Value::Object(map)
    }

    pub fn from_json(group: &FinGroup, value: &Value) -> Result<Self> {
        let obj = value
            .as_object()
            .ok_or_else(|| Error::InvalidDistribution("expected a JSON object".into()))?;
        let mut terms: Vec<Option<RgTerm>> = vec![None; group.order()];
        for (k, v) in obj {
            let h = group.parse_elem(k)?;
            let field = |name: &str| -> Result<&Value> {
                v.get(name).ok_or_else(|| {
                    Error::InvalidDistribution(format!("missing `{name}` for h = {k}"))
                })
            };
            let kappa = field("kappa")?
                .as_array()
                .filter(|a| a.len() == 2)
                .ok_or_else(|| Error::InvalidDistribution("kappa must be [re, im]".into()))?;
            let kappa = Complex64::new(parse_real(&kappa[0])?, parse_real(&kappa[1])?);
            let quad = parse_q(field("quad")?.as_str().unwrap_or_default())?;
            let lin = parse_q(field("lin")?.as_str().unwrap_or_default())?;
            terms[group.index_of(&h)] = Some(RgTerm { kappa, quad, lin });
        }
        let terms = terms
            .into_iter()
            .enumerate()
            .map(|(i, t)| {
                t.ok_or_else(|| {
                    Error::InvalidDistribution(format!("missing character {}", group.elem_at(i)))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        RGCharFn::new(group, terms)
    }
}

/// Rational form when the value is one, shortest round-trip decimal otherwise.
fn format_real(x: f64) -> String {
    match snap(x, 1e-15) {
        Some(r) if r.denom().abs() <= 1000 => format_q(&r),
        _ => format!("{x}"),
    }
}

fn parse_real(v: &Value) -> Result<f64> {
    match v {
        Value::Number(n) => n
            .as_f64()
            .ok_or_else(|| Error::InvalidDistribution("bad number".into())),
        Value::String(s) => parse_q(s)
            .map(|q| to_f64(&q))
            .or_else(|_| {
                s.trim().parse::<f64>().map_err(|_| Error::Parse {
                    position: 0,
                    token: s.clone(),
                    message: "expected a rational or decimal".into(),
                })
            }),
        other => Err(Error::InvalidDistribution(format!(
            "expected a number, got {other}"
        ))),
    }
}

/// Automorphism `α = (a, α_G)` of `ℝ × G` acting on two characteristic
/// functions.
#[derive(Clone, Debug)]
pub struct RGInstance {
    pub f1: RGCharFn,
    pub f2: RGCharFn,
    pub a: Q,
    pub alpha_g: GroupMap,
}

impl RGInstance {
    pub fn new(f1: RGCharFn, f2: RGCharFn, a: Q, alpha_g: GroupMap) -> Result<Self> {
        if a.is_zero() {
            return Err(Error::NotAutomorphism("a = 0 on ℝ".into()));
        }
        for f in [&f1, &f2] {
            if f.group() != alpha_g.domain() {
                return Err(Error::GroupMismatch {
                    left: alpha_g.domain().spec(),
                    right: f.group().spec(),
                });
            }
        }
        if !alpha_g.is_automorphism() {
            return Err(Error::NotAutomorphism(format!("α_G = {alpha_g}")));
        }
        Ok(RGInstance {
            f1,
            f2,
            a,
            alpha_g,
        })
    }

    pub fn group(&self) -> &FinGroup {
        self.alpha_g.domain()
    }

    /// `|LHS − RHS|` of the functional equation at one point.
    pub fn residual_at(&self, s1: f64, s2: f64, h1: usize, h2: usize) -> f64 {
        let g = self.group();
        let adj = self.alpha_g.adjoint();
        let ah2 = adj.apply_idx(h2);
        let a = to_f64(&self.a);
        let lhs = self.f1.eval(s1 + s2, g.add_idx(h1, h2))
            * self.f2.eval(s1 + a * s2, g.add_idx(h1, ah2));
        let rhs = self.f1.eval(s1 - s2, g.sub_idx(h1, h2))
            * self.f2.eval(s1 - a * s2, g.sub_idx(h1, ah2));
        (lhs - rhs).norm()
    }
}

/// Monomials matched by [`rg_symmetry_certificate`], in order.
pub const MONOMIALS: [&str; 5] = ["s1^2", "s2^2", "s1*s2", "i*s1", "i*s2"];

#[derive(Clone, Debug, Serialize)]
pub struct CoefficientMatch {
    pub h1: String,
    pub h2: String,
    /// Exponent coefficients of [`MONOMIALS`] on each side, as `p/q`.
    pub lhs: Vec<String>,
    pub rhs: Vec<String>,
    pub kappa_lhs: (f64, f64),
    pub kappa_rhs: (f64, f64),
    /// Both sides vanish identically, so no exponent matching is needed.
    pub both_vanish: bool,
    pub matched: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SymmetryCertificate {
    pub symmetric: bool,
    pub entries: Vec<CoefficientMatch>,
}

fn exponent_coefficients(q1: Q, l1: Q, q2: Q, l2: Q, a: Q, sign: i64) -> [Q; 5] {
    // q1 (s1 ± s2)² + i l1 (s1 ± s2) + q2 (s1 ± a s2)² + i l2 (s1 ± a s2)
    let sg = Q::from_integer(sign);
    [
        q1 + q2,
        q1 + a * a * q2,
        sg * Q::from_integer(2) * (q1 + a * q2),
        l1 + l2,
        sg * (l1 + a * l2),
    ]
}

pub fn rg_symmetry(inst: &RGInstance) -> bool {
    rg_symmetry_certificate(inst).symmetric
}

/// Exact coefficient matching for every pair `(h₁, h₂)`.
pub fn rg_symmetry_certificate(inst: &RGInstance) -> SymmetryCertificate {
    let g = inst.group();
    let adj = inst.alpha_g.adjoint().table();
    let n = g.order();
    let mut entries = Vec::with_capacity(n * n);
    for h1 in 0..n {
        for h2 in 0..n {
            let (p1, p2) = (g.add_idx(h1, h2), g.add_idx(h1, adj[h2]));
            let (m1, m2) = (g.sub_idx(h1, h2), g.sub_idx(h1, adj[h2]));
            let (t1, t2) = (&inst.f1.terms[p1], &inst.f2.terms[p2]);
            let (u1, u2) = (&inst.f1.terms[m1], &inst.f2.terms[m2]);
            let lhs = exponent_coefficients(t1.quad, t1.lin, t2.quad, t2.lin, inst.a, 1);
            let rhs = exponent_coefficients(u1.quad, u1.lin, u2.quad, u2.lin, inst.a, -1);
            let kl = t1.kappa * t2.kappa;
            let kr = u1.kappa * u2.kappa;
            let both_vanish = kl.norm() <= DEFAULT_TOL && kr.norm() <= DEFAULT_TOL;
            let matched = both_vanish || (lhs == rhs && (kl - kr).norm() <= DEFAULT_TOL);
            entries.push(CoefficientMatch {
                h1: g.elem_at(h1).to_string(),
                h2: g.elem_at(h2).to_string(),
                lhs: lhs.iter().map(format_q).collect(),
                rhs: rhs.iter().map(format_q).collect(),
                kappa_lhs: (kl.re, kl.im),
                kappa_rhs: (kr.re, kr.im),
                both_vanish,
                matched,
            });
        }
    }
    SymmetryCertificate {
        symmetric: entries.iter().all(|e| e.matched),
        entries,
    }
}
