use std::f64::consts::PI;

use num_complex::Complex64;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::FinGroup;
use crate::morphism::GroupMap;
use crate::rational::{format_q, to_f64, Q};

use super::{RGCharFn, RGInstance, RgTerm};

/// `κ₁` for the order-two family: either exactly `√(σ'₁/σ₁)` or a rational.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum RemarkKappa {
    Boundary,
    Rational(Q),
}

impl RemarkKappa {
    pub fn value(&self, sigma: Q, sigma_p: Q) -> f64 {
        match self {
            RemarkKappa::Boundary => (to_f64(&sigma_p) / to_f64(&sigma)).sqrt(),
            RemarkKappa::Rational(k) => to_f64(k),
        }
    }

    pub fn describe(&self) -> String {
        match self {
            RemarkKappa::Boundary => "sqrt(sigma1p/sigma1)".into(),
            RemarkKappa::Rational(k) => format_q(k),
        }
    }
}

/// `f(s, 0) = exp{−σs²}`, `f(s, 1) = κ exp{−σ's²}` on `ℝ × ℤ(2)`.
pub fn order_two_charfn(sigma: Q, sigma_p: Q, kappa: f64) -> Result<RGCharFn> {
    let z2 = FinGroup::cyclic(2)?;
    RGCharFn::new(
        &z2,
        vec![
            RgTerm::new(Complex64::new(1.0, 0.0), -sigma, Q::zero()),
            RgTerm::new(Complex64::new(kappa, 0.0), -sigma_p, Q::zero()),
        ],
    )
}

fn violated(inequality: &str, detail: String) -> Error {
    Error::Constraint(format!("{inequality} ({detail})"))
}

/// Builds the pair on `ℝ × ℤ(2)` with `α = (a, I)`, `σ₂ = −σ₁/a`,
/// `σ'₂ = −σ'₁/a` and `κ₂ = κ₁`.
pub fn make_remark_family(
    sigma1: Q,
    sigma1p: Q,
    kappa1: RemarkKappa,
    a: Q,
) -> Result<RGInstance> {
    if !a.is_negative() {
        return Err(violated("a < 0", format!("a = {}", format_q(&a))));
    }
    if a == -Q::one() {
        return Err(violated("a ≠ −1", "a = -1".into()));
    }
    if !sigma1p.is_positive() {
        return Err(violated("0 < σ'1", format!("σ'1 = {}", format_q(&sigma1p))));
    }
    if sigma1p >= sigma1 {
        return Err(violated(
            "σ'1 < σ1",
            format!("σ'1 = {}, σ1 = {}", format_q(&sigma1p), format_q(&sigma1)),
        ));
    }
    if let RemarkKappa::Rational(k) = kappa1 {
        if k.is_zero() {
            return Err(violated("0 < |κ1|", "κ1 = 0".into()));
        }
        if k * k * sigma1 > sigma1p {
            return Err(violated(
                "|κ1| ≤ √(σ'1/σ1)",
                format!(
                    "κ1 = {}, σ'1/σ1 = {}",
                    format_q(&k),
                    format_q(&(sigma1p / sigma1))
                ),
            ));
        }
    }
    let sigma2 = -sigma1 / a;
    let sigma2p = -sigma1p / a;
    // σ'₂/σ₂ = σ'₁/σ₁, so κ₂ = κ₁ obeys the same bound
    let kappa = kappa1.value(sigma1, sigma1p);
    let f1 = order_two_charfn(sigma1, sigma1p, kappa)?;
    let f2 = order_two_charfn(sigma2, sigma2p, kappa)?;
    let id = GroupMap::identity(f1.group());
    RGInstance::new(f1, f2, a, id)
}

/// Sample points `t` for the density check.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DensityGrid {
    pub t_min: f64,
    pub t_max: f64,
    pub points: usize,
}

impl Default for DensityGrid {
    fn default() -> Self {
        DensityGrid {
            t_min: -10.0,
            t_max: 10.0,
            points: 4001,
        }
    }
}

impl DensityGrid {
    pub fn iter(&self) -> impl Iterator<Item = f64> + '_ {
        let n = self.points.max(2);
        let step = (self.t_max - self.t_min) / (n - 1) as f64;
        (0..n).map(move |i| self.t_min + step * i as f64)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PositivityReport {
    pub min_density: f64,
    pub argmin_t: f64,
    pub argmin_g: String,
    /// Largest imaginary part seen; nonzero only through rounding.
    pub max_imag: f64,
    pub passed: bool,
}

pub const POSITIVITY_TOL: f64 = 1e-9;

/// Inverts `f` in closed form on each coset and samples the density
/// `p(t, g)` on the grid.
pub fn rg_positive_definite_check(f: &RGCharFn, grid: &DensityGrid) -> Result<PositivityReport> {
    let g = f.group();
    for (i, t) in f.terms().iter().enumerate() {
        if !t.quad.is_negative() {
            return Err(Error::NonIntegrable(format!(
                "quadratic coefficient at h = {} is {}",
                g.elem_at(i),
                format_q(&t.quad)
            )));
        }
    }
    let n = g.order();
    let roots = g.roots_of_unity();
    let params: Vec<(Complex64, f64, f64)> = f
        .terms()
        .iter()
        .map(|t| (t.kappa, -to_f64(&t.quad), to_f64(&t.lin)))
        .collect();
    let mut report = PositivityReport {
        min_density: f64::INFINITY,
        argmin_t: 0.0,
        argmin_g: g.elem_at(0).to_string(),
        max_imag: 0.0,
        passed: false,
    };
    for t in grid.iter() {
        let per_h: Vec<Complex64> = params
            .iter()
            .map(|&(k, c, l)| k * ((-(t - l) * (t - l) / (4.0 * c)).exp() / (4.0 * PI * c).sqrt()))
            .collect();
        for x in 0..n {
            let mut sum = Complex64::zero();
            for (h, d) in per_h.iter().enumerate() {
                sum += roots[g.phase_idx(x, h) as usize].conj() * d;
            }
            let p = sum / n as f64;
            report.max_imag = report.max_imag.max(p.im.abs());
            if p.re < report.min_density {
                report.min_density = p.re;
                report.argmin_t = t;
                report.argmin_g = g.elem_at(x).to_string();
            }
        }
    }
    report.passed = report.min_density >= -POSITIVITY_TOL;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;
    use crate::rg::{rg_decompose, rg_symmetry};

    #[test]
    fn default_family_parameters() {
        let inst = make_remark_family(q(2, 1), q(1, 1), RemarkKappa::Boundary, q(-2, 1)).unwrap();
        assert!(rg_symmetry(&inst));
        let t = inst.f2.terms();
        assert_eq!(-t[0].quad, q(1, 1));
        assert_eq!(-t[1].quad, q(1, 2));
        assert!((t[1].kappa.re - 0.5f64.sqrt()).abs() < 1e-15);
        assert!(rg_decompose(&inst).unwrap().is_irreducible());
    }

    #[test]
    fn constraint_messages_name_the_inequality() {
        let err = |r: Result<RGInstance>| r.unwrap_err().to_string();
        let over = make_remark_family(
            q(2, 1),
            q(1, 1),
            RemarkKappa::Rational(q(4, 5)),
            q(-2, 1),
        );
        assert!(err(over).contains("|κ1| ≤ √(σ'1/σ1)"));
        let minus_one = make_remark_family(q(2, 1), q(1, 1), RemarkKappa::Boundary, q(-1, 1));
        assert!(err(minus_one).contains("a ≠ −1"));
        let positive = make_remark_family(q(2, 1), q(1, 1), RemarkKappa::Boundary, q(1, 1));
        assert!(err(positive).contains("a < 0"));
        let order = make_remark_family(q(1, 1), q(1, 1), RemarkKappa::Boundary, q(-2, 1));
        assert!(err(order).contains("σ'1 < σ1"));
    }

    #[test]
    fn boundary_density_touches_zero() {
        let f = order_two_charfn(q(2, 1), q(1, 1), 0.5f64.sqrt()).unwrap();
        let r = rg_positive_definite_check(&f, &DensityGrid::default()).unwrap();
        assert!(r.passed);
        assert!(r.min_density.abs() < 1e-12);
        assert_eq!(r.argmin_g, "1");
    }

    #[test]
    fn kappa_over_bound_goes_negative() {
        let f = order_two_charfn(q(2, 1), q(1, 1), 1.1 * 0.5f64.sqrt()).unwrap();
        let r = rg_positive_definite_check(&f, &DensityGrid::default()).unwrap();
        assert!(!r.passed);
        // closed form at t = 0, g = 1: (1/√(8π) − κ/√(4π)) / 2
        let expect = (1.0 / (8.0 * PI).sqrt() - 1.1 * 0.5f64.sqrt() / (4.0 * PI).sqrt()) / 2.0;
        assert!((r.min_density - expect).abs() < 1e-12);
    }

    #[test]
    fn pure_gaussian_is_positive() {
        let f = RGCharFn::gaussian(q(1, 3)).unwrap();
        assert!(rg_positive_definite_check(&f, &DensityGrid::default()).unwrap().passed);
        let flat = RGCharFn::gaussian(q(0, 1)).unwrap();
        assert!(matches!(
            rg_positive_definite_check(&flat, &DensityGrid::default()),
            Err(Error::NonIntegrable(_))
        ));
    }
}
