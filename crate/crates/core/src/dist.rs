//! Exact probability distributions on finite Abelian groups and their
//! characteristic functions.
//!
//! Masses are exact rationals. Characteristic values are floating point
//! and compared with [`DEFAULT_TOL`].

use std::fmt::Write as _;

use num_complex::Complex64;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::group::{Elem, FinGroup, Subgroup};
use crate::rational::{format_q, parse_q, snap, to_f64, Q};

/// Global tolerance for comparisons of characteristic values.
pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dist {
    group: FinGroup,
    mass: Vec<Q>,
}

impl Dist {
    /// Dense constructor; masses are indexed like [`FinGroup::elem_at`].
    pub fn new(group: &FinGroup, mass: Vec<Q>) -> Result<Self> {
        if mass.len() != group.order() {
            return Err(Error::InvalidDistribution(format!(
                "{} masses for a group of order {}",
                mass.len(),
                group.order()
            )));
        }
        if let Some(i) = mass.iter().position(|m| m.is_negative()) {
            return Err(Error::InvalidDistribution(format!(
                "negative mass {} at {}",
                format_q(&mass[i]),
                group.elem_at(i)
            )));
        }
        let total: Q = mass.iter().sum();
        if !total.is_one() {
            return Err(Error::InvalidDistribution(format!(
                "masses sum to {}",
                format_q(&total)
            )));
        }
        Ok(Dist {
            group: group.clone(),
            mass,
        })
    }

    pub fn from_pairs<'a>(
        group: &FinGroup,
        pairs: impl IntoIterator<Item = (&'a Elem, Q)>,
    ) -> Result<Self> {
        let mut mass = vec![Q::zero(); group.order()];
        for (x, m) in pairs {
            group.check(x)?;
            mass[group.index_of(x)] += m;
        }
        Self::new(group, mass)
    }

    /// Integer weights normalised by their sum.
    pub fn from_weights(group: &FinGroup, weights: &[i64]) -> Result<Self> {
        let total: i64 = weights.iter().sum();
        if total <= 0 {
            return Err(Error::InvalidDistribution("weights sum to zero".into()));
        }
        Self::new(group, weights.iter().map(|w| Q::new(*w, total)).collect())
    }

    /// The degenerate distribution `E_x`.
    pub fn point(group: &FinGroup, x: &Elem) -> Result<Self> {
        group.check(x)?;
        let mut mass = vec![Q::zero(); group.order()];
        mass[group.index_of(x)] = Q::one();
        Ok(Dist {
            group: group.clone(),
            mass,
        })
    }

    pub fn uniform(group: &FinGroup) -> Self {
        haar_on(&Subgroup::whole(group))
    }

    pub fn group(&self) -> &FinGroup {
        &self.group
    }

    pub fn masses(&self) -> &[Q] {
        &self.mass
    }

    pub fn mass(&self, x: &Elem) -> Q {
        if self.group.contains(x) {
            self.mass[self.group.index_of(x)]
        } else {
            Q::zero()
        }
    }

    /// Support in lexicographic order.
    pub fn support(&self) -> Vec<Elem> {
        self.support_idx()
            .map(|i| self.group.elem_at(i))
            .collect()
    }

    pub fn support_idx(&self) -> impl Iterator<Item = usize> + '_ {
        self.mass
            .iter()
            .enumerate()
            .filter(|(_, m)| !m.is_zero())
            .map(|(i, _)| i)
    }

    pub fn is_supported_in(&self, s: &Subgroup) -> bool {
        s.parent() == &self.group && self.support_idx().all(|i| s.contains_idx(i))
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.mass.len()).all(|i| self.mass[i] == self.mass[self.group.neg_idx(i)])
    }

    fn same_group(&self, other: &Dist) -> Result<()> {
        if self.group != other.group {
            return Err(Error::GroupMismatch {
                left: self.group.spec(),
                right: other.group.spec(),
            });
        }
        Ok(())
    }

    /// `μ * ν`, exact.
    pub fn convolve(&self, other: &Dist) -> Result<Dist> {
        self.same_group(other)?;
        let mut mass = vec![Q::zero(); self.mass.len()];
        for i in self.support_idx() {
            for j in other.support_idx() {
                mass[self.group.add_idx(i, j)] += self.mass[i] * other.mass[j];
            }
        }
        Ok(Dist {
            group: self.group.clone(),
            mass,
        })
    }

    /// `μ * E_x`.
    pub fn shift(&self, x: &Elem) -> Result<Dist> {
        self.group.check(x)?;
        Ok(self.shift_idx(self.group.index_of(x)))
    }

    pub(crate) fn shift_idx(&self, x: usize) -> Dist {
        let mut mass = vec![Q::zero(); self.mass.len()];
        for i in self.support_idx() {
            mass[self.group.add_idx(i, x)] = self.mass[i];
        }
        Dist {
            group: self.group.clone(),
            mass,
        }
    }

    /// `μ̄(B) = μ(−B)`.
    pub fn reflect(&self) -> Dist {
        let mut mass = vec![Q::zero(); self.mass.len()];
        for i in self.support_idx() {
            mass[self.group.neg_idx(i)] = self.mass[i];
        }
        Dist {
            group: self.group.clone(),
            mass,
        }
    }

    /// `μ̂(y) = Σ_x μ(x)(x, y)`.
    pub fn fourier(&self) -> CharFn {
        let g = &self.group;
        let roots = g.roots_of_unity();
        let support: Vec<(usize, f64)> = self
            .support_idx()
            .map(|i| (i, to_f64(&self.mass[i])))
            .collect();
        let values = (0..g.order())
            .map(|y| {
                support
                    .iter()
                    .map(|&(x, m)| roots[g.phase_idx(x, y) as usize] * m)
                    .sum()
            })
            .collect();
        CharFn {
            group: g.clone(),
            values,
        }
    }

    pub fn is_nonvanishing(&self) -> bool {
        self.is_nonvanishing_with_tol(DEFAULT_TOL)
    }

    /// `min_y |μ̂(y)| > tol`.
    pub fn is_nonvanishing_with_tol(&self, tol: f64) -> bool {
        self.fourier().values.iter().all(|v| v.norm() > tol)
    }

    pub fn unimodular_sets(&self) -> Result<UnimodularSets> {
        self.unimodular_sets_with_tol(DEFAULT_TOL)
    }

    /// The subgroups `E = {μ̂ = 1}` and `B = {|μ̂| = 1}` together with the
    /// smallest `x` such that `μ̂(y) = (x, y)` on `B`.
    pub fn unimodular_sets_with_tol(&self, tol: f64) -> Result<UnimodularSets> {
        let g = &self.group;
        let f = self.fourier();
        let e_mask: Vec<bool> = f.values.iter().map(|v| (v - 1.0).norm() <= tol).collect();
        let b_mask: Vec<bool> = f
            .values
            .iter()
            .map(|v| (v.norm() - 1.0).abs() <= tol)
            .collect();
        let e = Subgroup::from_members(g, e_mask)
            .map_err(|err| Error::ClosureFailure(format!("E: {err}")))?;
        let b = Subgroup::from_members(g, b_mask)
            .map_err(|err| Error::ClosureFailure(format!("B: {err}")))?;
        let roots = g.roots_of_unity();
        let witness = (0..g.order())
            .find(|&x| {
                b.indices()
                    .all(|y| (f.values[y] - roots[g.phase_idx(x, y) as usize]).norm() <= tol)
            })
            .map(|x| g.elem_at(x));
        Ok(UnimodularSets { e, b, witness })
    }

    /// Serialises as `{"a,b": "p/q", …}` over the support.
    pub fn to_json(&self) -> Value {
        let mut map = Map::new();
        for i in self.support_idx() {
            map.insert(
                self.group.elem_at(i).to_string(),
                Value::String(format_q(&self.mass[i])),
            );
        }
        Value::Object(map)
    }

    pub fn from_json(group: &FinGroup, value: &Value) -> Result<Self> {
        let obj = value.as_object().ok_or_else(|| {
            Error::InvalidDistribution("expected a JSON object of element → mass".into())
        })?;
        let mut mass = vec![Q::zero(); group.order()];
        for (k, v) in obj {
            let x = group.parse_elem(k)?;
            let m = match v {
                Value::String(s) => parse_q(s)?,
                Value::Number(n) if n.is_i64() => Q::from_integer(n.as_i64().unwrap_or(0)),
                other => {
                    return Err(Error::InvalidDistribution(format!(
                        "mass for {k} must be a rational string, got {other}"
                    )))
                }
            };
            mass[group.index_of(&x)] += m;
        }
        Self::new(group, mass)
    }

    pub fn from_json_str(group: &FinGroup, s: &str) -> Result<Self> {
        Self::from_json(group, &serde_json::from_str(s)?)
    }
}

/// Output of [`Dist::unimodular_sets`].
#[derive(Clone, Debug)]
pub struct UnimodularSets {
    pub e: Subgroup,
    pub b: Subgroup,
    pub witness: Option<Elem>,
}

/// Uniform distribution on a subgroup; idempotent under convolution.
pub fn haar_on(k: &Subgroup) -> Dist {
    let g = k.parent();
    let w = Q::new(1, k.order() as i64);
    let mut mass = vec![Q::zero(); g.order()];
    for i in k.indices() {
        mass[i] = w;
    }
    Dist {
        group: g.clone(),
        mass,
    }
}

pub fn fourier(mu: &Dist) -> CharFn {
    mu.fourier()
}

pub fn convolve(mu: &Dist, nu: &Dist) -> Result<Dist> {
    mu.convolve(nu)
}

/// A complex function on the character group.
#[derive(Clone, Debug, PartialEq)]
pub struct CharFn {
    group: FinGroup,
    values: Vec<Complex64>,
}

impl CharFn {
    pub fn new(group: &FinGroup, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != group.order() {
            return Err(Error::InvalidGroup(format!(
                "{} values for a group of order {}",
                values.len(),
                group.order()
            )));
        }
        Ok(CharFn {
            group: group.clone(),
            values,
        })
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

    pub fn at_idx(&self, y: usize) -> Complex64 {
        self.values[y]
    }

    pub fn conj(&self) -> CharFn {
        CharFn {
            group: self.group.clone(),
            values: self.values.iter().map(|v| v.conj()).collect(),
        }
    }

    pub fn mul(&self, other: &CharFn) -> Result<CharFn> {
        if self.group != other.group {
            return Err(Error::GroupMismatch {
                left: self.group.spec(),
                right: other.group.spec(),
            });
        }
        Ok(CharFn {
            group: self.group.clone(),
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a * b)
                .collect(),
        })
    }

    pub fn max_distance(&self, other: &CharFn) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Checks `φ(0) = 1`, `|φ| ≤ 1` and `φ(−y) = conj φ(y)` within `tol`.
    pub fn is_valid_characteristic(&self, tol: f64) -> bool {
        let g = &self.group;
        (self.values[0] - 1.0).norm() <= tol
            && self.values.iter().all(|v| v.norm() <= 1.0 + tol)
            && (0..g.order()).all(|y| (self.values[g.neg_idx(y)] - self.values[y].conj()).norm() <= tol)
    }

    pub fn inverse_fourier(&self) -> Result<Dist> {
        self.inverse_fourier_with_tol(DEFAULT_TOL)
    }

    /// Finite Fourier inversion `μ(x) = N⁻¹ Σ_y conj((x, y)) φ(y)`, with
    /// each mass snapped to the nearest small-denominator rational.
    pub fn inverse_fourier_with_tol(&self, tol: f64) -> Result<Dist> {
        let g = &self.group;
        let n = g.order() as f64;
        let roots = g.roots_of_unity();
        let mut mass = Vec::with_capacity(g.order());
        for x in 0..g.order() {
            let v: Complex64 = (0..g.order())
                .map(|y| roots[g.phase_idx(x, y) as usize].conj() * self.values[y])
                .sum::<Complex64>()
                / n;
            if v.im.abs() > tol {
                return Err(Error::NotPositiveDefinite(format!(
                    "mass at {} has imaginary part {:e}",
                    g.elem_at(x),
                    v.im
                )));
            }
            if v.re < -tol {
                return Err(Error::NotPositiveDefinite(format!(
                    "mass at {} is {:e}",
                    g.elem_at(x),
                    v.re
                )));
            }
            let m = snap(v.re.max(0.0), tol).ok_or_else(|| {
                Error::InvalidDistribution(format!(
                    "mass {:.17} at {} is not a small-denominator rational",
                    v.re,
                    g.elem_at(x)
                ))
            })?;
            mass.push(m);
        }
        Dist::new(g, mass)
    }

    /// CSV rows `y,re,im` with a header line.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("y,re,im\n");
        for (i, v) in self.values.iter().enumerate() {
            let _ = writeln!(out, "\"{}\",{:.17e},{:.17e}", self.group.elem_at(i), v.re, v.im);
        }
        out
    }
}

/// Number of compositions of `d` into `n` nonnegative parts.
pub fn grid_size(n: usize, d: u32) -> u128 {
    let (n, d) = (n as u128, d as u128);
    // C(d + n − 1, n − 1)
    let mut acc: u128 = 1;
    for i in 1..n {
        acc = acc * (d + i) / i;
    }
    acc
}

/// All distributions whose masses are multiples of `1/d`, in a fixed order.
pub fn grid_distributions(group: &FinGroup, d: u32) -> Vec<Dist> {
    let n = group.order();
    let mut out = Vec::new();
    let mut parts = vec![0u32; n];
    fn rec(i: usize, left: u32, parts: &mut Vec<u32>, group: &FinGroup, d: u32, out: &mut Vec<Dist>) {
        let n = parts.len();
        if i == n - 1 {
            parts[i] = left;
            let mass = parts.iter().map(|&c| Q::new(c as i64, d as i64)).collect();
            out.push(Dist {
                group: group.clone(),
                mass,
            });
            return;
        }
        for c in (0..=left).rev() {
            parts[i] = c;
            rec(i + 1, left - c, parts, group, d, out);
        }
    }
    rec(0, d, &mut parts, group, d, &mut out);
    out
}

/// A uniformly random point of the simplex grid with denominator `d`.
pub fn random_grid_dist<R: Rng + ?Sized>(group: &FinGroup, d: u32, rng: &mut R) -> Dist {
    let n = group.order();
    // stars and bars: choose n − 1 bar positions among d + n − 1 slots
    let slots = d as usize + n - 1;
    let mut bars = rand::seq::index::sample(rng, slots, n - 1).into_vec();
    bars.sort_unstable();
    let mut mass = Vec::with_capacity(n);
    let mut prev: isize = -1;
    for &b in &bars {
        mass.push(Q::new((b as isize - prev - 1) as i64, d as i64));
        prev = b as isize;
    }
    mass.push(Q::new((slots as isize - prev - 1) as i64, d as i64));
    Dist {
        group: group.clone(),
        mass,
    }
}

/// Random grid distribution with denominator `d` supported in `k`.
pub fn random_supported_dist<R: Rng + ?Sized>(k: &Subgroup, d: u32, rng: &mut R) -> Dist {
    let g = k.parent();
    let members: Vec<usize> = k.indices().collect();
    let d = d.max(1) as i64;
    let mut mass = vec![Q::zero(); g.order()];
    for _ in 0..d {
        mass[members[rng.gen_range(0..members.len())]] += Q::new(1, d);
    }
    Dist {
        group: g.clone(),
        mass,
    }
}

/// Random grid distribution on a subgroup with more than half its mass at
/// `0`, which keeps the characteristic function away from zero.
pub fn random_dominant_dist<R: Rng + ?Sized>(k: &Subgroup, d: u32, rng: &mut R) -> Dist {
    let g = k.parent();
    let members: Vec<usize> = k.indices().collect();
    let d = d.max(2) as i64;
    let zero_weight = d / 2 + 1 + rng.gen_range(0..=(d - d / 2 - 1));
    let mut mass = vec![Q::zero(); g.order()];
    mass[0] = Q::new(zero_weight, d);
    for _ in 0..(d - zero_weight) {
        let j = members[rng.gen_range(0..members.len())];
        mass[j] += Q::new(1, d);
    }
    Dist {
        group: g.clone(),
        mass,
    }
}
