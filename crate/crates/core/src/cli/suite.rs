use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::dist::{grid_distributions, grid_size, random_grid_dist, random_supported_dist, Dist};
use crate::error::{Error, Result};
use crate::group::FinGroup;
use crate::heyde::{check_unimodular_on_h_with_tol, compute_h, decompose, SymmetryContext, SymmetryInstance};
use crate::morphism::GroupMap;
use crate::rational::format_q;

/// Pair evaluations above this count are refused.
pub const MAX_SUITE_PAIRS: u128 = 200_000_000;

#[derive(Clone, Debug, Default, Serialize)]
pub struct AlphaSummary {
    pub alpha: String,
    pub instances: u64,
    pub symmetric: u64,
    pub mismatches: u64,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct SuiteSummary {
    pub group: String,
    pub grid_denominator: u32,
    pub distributions: usize,
    pub automorphisms: usize,
    pub instances: u64,
    pub symmetric: u64,
    pub symmetric_nonvanishing: u64,
    pub decompositions: u64,
    /// Symmetric nonvanishing instances on an odd group with no decomposition.
    pub decomposition_failures: u64,
    /// `symmetry_direct` and `symmetry_fourier` disagree.
    pub mismatches: u64,
    pub unimodular_failures: u64,
    /// `α = −I` instances where symmetry and `μ₁ = μ₂` disagree.
    pub neg_identity_exceptions: u64,
    /// Symmetric nonvanishing non-degenerate instances with `H = Y`.
    pub h_whole_nondegenerate: u64,
    pub outside_hypotheses: bool,
    pub per_alpha: Vec<AlphaSummary>,
}

impl SuiteSummary {
    pub fn breach(&self) -> bool {
        self.mismatches > 0
            || (!self.outside_hypotheses
                && (self.decomposition_failures
                    + self.unimodular_failures
                    + self.neg_identity_exceptions
                    + self.h_whole_nondegenerate
                    > 0))
    }
}

/// One symmetric instance, as a CSV row.
#[derive(Clone, Debug, Serialize)]
pub struct InstanceRow {
    pub alpha: String,
    pub mu1: String,
    pub mu2: String,
    pub direct: bool,
    pub fourier: bool,
    pub nonvanishing: bool,
    pub decomposed: bool,
    pub omega: String,
    pub x1: String,
    pub x2: String,
}

fn masses(d: &Dist) -> String {
    d.masses().iter().map(format_q).collect::<Vec<_>>().join(" ")
}

fn is_degenerate(d: &Dist) -> bool {
    d.support_idx().count() == 1
}

/// Every pair of grid distributions with denominator `d` under every `α`.
pub fn exhaustive_suite(
    group: &FinGroup,
    alphas: &[GroupMap],
    d: u32,
    tol: f64,
) -> Result<(SuiteSummary, Vec<InstanceRow>)> {
    let pairs = grid_size(group.order(), d).saturating_pow(2) * alphas.len() as u128;
    if pairs > MAX_SUITE_PAIRS {
        return Err(Error::BoundExceeded(format!(
            "{pairs} pair evaluations exceed {MAX_SUITE_PAIRS}"
        )));
    }
    let dists = grid_distributions(group, d);
    let fouriers: Vec<_> = dists.iter().map(Dist::fourier).collect();
    let nonvanishing: Vec<bool> = dists.iter().map(|m| m.is_nonvanishing_with_tol(tol)).collect();
    let odd = !group.has_order_two();
    let mut s = SuiteSummary {
        group: group.spec(),
        grid_denominator: d,
        distributions: dists.len(),
        automorphisms: alphas.len(),
        outside_hypotheses: !odd,
        ..Default::default()
    };
    let mut rows = Vec::new();
    for alpha in alphas {
        let ctx = SymmetryContext::new(alpha);
        let neg_identity = *alpha == GroupMap::neg_identity(group);
        let h_whole = compute_h(alpha).is_whole();
        let mut per = AlphaSummary {
            alpha: alpha.to_string(),
            ..Default::default()
        };
        for i in 0..dists.len() {
            for j in 0..dists.len() {
                per.instances += 1;
                let direct = ctx.direct(&dists[i], &dists[j]);
                let fourier = ctx.fourier(&fouriers[i], &fouriers[j], tol);
                if direct != fourier {
                    per.mismatches += 1;
                }
                if neg_identity && odd && direct != (i == j) {
                    s.neg_identity_exceptions += 1;
                }
                if !direct {
                    continue;
                }
                per.symmetric += 1;
                let nv = nonvanishing[i] && nonvanishing[j];
                let inst = SymmetryInstance::new(alpha.clone(), dists[i].clone(), dists[j].clone())?;
                let dec = decompose(&inst).ok();
                if dec.is_some() {
                    s.decompositions += 1;
                }
                if nv {
                    s.symmetric_nonvanishing += 1;
                    if odd && dec.is_none() {
                        s.decomposition_failures += 1;
                    }
                    if !check_unimodular_on_h_with_tol(&inst, tol) {
                        s.unimodular_failures += 1;
                    }
                    if odd && h_whole && !(is_degenerate(&dists[i]) && is_degenerate(&dists[j])) {
                        s.h_whole_nondegenerate += 1;
                    }
                }
                rows.push(InstanceRow {
                    alpha: per.alpha.clone(),
                    mu1: masses(&dists[i]),
                    mu2: masses(&dists[j]),
                    direct,
                    fourier,
                    nonvanishing: nv,
                    decomposed: dec.is_some(),
                    omega: dec.as_ref().map(|x| masses(&x.omega)).unwrap_or_default(),
                    x1: dec.as_ref().map(|x| x.x1.to_string()).unwrap_or_default(),
                    x2: dec.as_ref().map(|x| x.x2.to_string()).unwrap_or_default(),
                });
            }
        }
        s.instances += per.instances;
        s.symmetric += per.symmetric;
        s.mismatches += per.mismatches;
        s.per_alpha.push(per);
    }
    Ok((s, rows))
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct FuzzSummary {
    pub group: String,
    pub seed: u64,
    pub count: usize,
    /// Constructed `ω * E_{x_j}` instances with `x₁ = −αx₂` that fail symmetry.
    pub converse_failures: u64,
    /// Constructed instances whose decomposition fails or does not reconstruct.
    pub decomposition_failures: u64,
    pub random_pairs: u64,
    pub random_symmetric: u64,
    pub mismatches: u64,
    pub outside_hypotheses: bool,
}

impl FuzzSummary {
    pub fn breach(&self) -> bool {
        self.mismatches > 0
            || (!self.outside_hypotheses
                && self.converse_failures + self.decomposition_failures > 0)
    }
}

/// Seeded draws: `count` constructed symmetric instances and `count` random
/// grid pairs.
pub fn fuzz_suite(
    group: &FinGroup,
    alphas: &[GroupMap],
    d: u32,
    count: usize,
    seed: u64,
    tol: f64,
) -> Result<FuzzSummary> {
    if alphas.is_empty() {
        return Err(Error::Precondition("no automorphisms to sample".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut s = FuzzSummary {
        group: group.spec(),
        seed,
        count,
        outside_hypotheses: group.has_order_two(),
        ..Default::default()
    };
    for _ in 0..count {
        let alpha = alphas.choose(&mut rng).expect("nonempty");
        let ctx = SymmetryContext::new(alpha);
        let k = alpha.plus_identity(true).kernel();
        let omega = random_supported_dist(&k, d, &mut rng);
        let x2 = group.elem_at(rng.gen_range(0..group.order()));
        let x1 = group.neg(&alpha.apply(&x2)?);
        let mu1 = omega.shift(&x1)?;
        let mu2 = omega.shift(&x2)?;
        let direct = ctx.direct(&mu1, &mu2);
        let fourier = ctx.fourier(&mu1.fourier(), &mu2.fourier(), tol);
        if direct != fourier {
            s.mismatches += 1;
        }
        if !direct {
            s.converse_failures += 1;
            continue;
        }
        let inst = SymmetryInstance::new(alpha.clone(), mu1, mu2)?;
        match decompose(&inst) {
            Ok(dec)
                if dec.omega.is_supported_in(&k)
                    && dec.omega.shift(&dec.x1)? == *inst.mu1()
                    && dec.omega.shift(&dec.x2)? == *inst.mu2() => {}
            _ => s.decomposition_failures += 1,
        }

        let a = random_grid_dist(group, d, &mut rng);
        let b = random_grid_dist(group, d, &mut rng);
        s.random_pairs += 1;
        let direct = ctx.direct(&a, &b);
        if direct != ctx.fourier(&a.fourier(), &b.fourier(), tol) {
            s.mismatches += 1;
        }
        s.random_symmetric += u64::from(direct);
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dist::DEFAULT_TOL;
    use crate::morphism::enumerate_automorphisms;

    #[test]
    fn z3_suite_is_clean() {
        let g: FinGroup = "Z3".parse().unwrap();
        let alphas = enumerate_automorphisms(&g, 100).unwrap();
        let (s, rows) = exhaustive_suite(&g, &alphas, 3, DEFAULT_TOL).unwrap();
        assert_eq!(s.distributions, 10);
        assert_eq!(s.instances, 200);
        assert!(!s.breach(), "{s:?}");
        assert_eq!(rows.len() as u64, s.symmetric);
    }

    #[test]
    fn fuzz_is_deterministic() {
        let g: FinGroup = "Z9".parse().unwrap();
        let alphas = enumerate_automorphisms(&g, 100).unwrap();
        let a = fuzz_suite(&g, &alphas, 4, 50, 7, DEFAULT_TOL).unwrap();
        let b = fuzz_suite(&g, &alphas, 4, 50, 7, DEFAULT_TOL).unwrap();
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
        assert!(!a.breach(), "{a:?}");
    }
}
