//! Endomorphisms of a finite Abelian group as compatible integer matrices.
//!
//! Column `j` of the matrix is the image of the `j`-th standard generator.
//! A matrix defines a homomorphism iff `A_ij ≡ 0 (mod n_i / gcd(n_i, n_j))`;
//! entries are kept reduced modulo the row order `n_i`, which makes the
//! reduced matrix a canonical form of the map.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::group::{Elem, FinGroup, Subgroup};

/// Default cap on `|X|` for brute-force enumeration.
pub const DEFAULT_MAX_GROUP_ORDER: usize = 100;

/// Cap on the number of compatible matrices scanned by enumeration.
pub const MAX_MATRIX_SEARCH: u128 = 5_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupMap {
    domain: FinGroup,
    matrix: Vec<Vec<i64>>,
}

impl fmt::Display for GroupMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&serde_json::to_string(&self.matrix).unwrap_or_default())
    }
}

fn compat_modulus(orders: &[i64], i: usize, j: usize) -> i64 {
    orders[i] / orders[i].gcd(&orders[j])
}

impl GroupMap {
    pub fn new(domain: &FinGroup, matrix: Vec<Vec<i64>>) -> Result<Self> {
        let k = domain.rank();
        if matrix.len() != k || matrix.iter().any(|row| row.len() != k) {
            return Err(Error::InvalidMap(format!(
                "expected a {k}x{k} matrix for {domain}"
            )));
        }
        let orders = domain.orders();
        let mut reduced = matrix;
        for i in 0..k {
            for j in 0..k {
                let m = compat_modulus(orders, i, j);
                if reduced[i][j].rem_euclid(m) != 0 {
                    return Err(Error::InvalidMap(format!(
                        "entry ({i},{j}) = {} must be divisible by {m} for {domain}",
                        reduced[i][j]
                    )));
                }
                reduced[i][j] = reduced[i][j].rem_euclid(orders[i]);
            }
        }
        Ok(GroupMap {
            domain: domain.clone(),
            matrix: reduced,
        })
    }

    /// Multiplication by `c`.
    pub fn scalar(domain: &FinGroup, c: i64) -> Self {
        let k = domain.rank();
        let matrix = (0..k)
            .map(|i| (0..k).map(|j| if i == j { c } else { 0 }).collect())
            .collect();
        GroupMap::new(domain, matrix).expect("scalar maps are compatible")
    }

    pub fn identity(domain: &FinGroup) -> Self {
        Self::scalar(domain, 1)
    }

    pub fn zero(domain: &FinGroup) -> Self {
        Self::scalar(domain, 0)
    }

    pub fn neg_identity(domain: &FinGroup) -> Self {
        Self::scalar(domain, -1)
    }

    /// Parses `"c"` (multiplication by `c`) or a row-major JSON matrix.
    pub fn parse(domain: &FinGroup, spec: &str) -> Result<Self> {
        let t = spec.trim();
        if let Ok(c) = t.parse::<i64>() {
            return Ok(Self::scalar(domain, c));
        }
        let matrix: Vec<Vec<i64>> = serde_json::from_str(t).map_err(|e| Error::Parse {
            position: e.column().saturating_sub(1),
            token: t.to_string(),
            message: format!("expected a scalar or a JSON integer matrix: {e}"),
        })?;
        Self::new(domain, matrix)
    }

    pub fn domain(&self) -> &FinGroup {
        &self.domain
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    fn same_domain(&self, other: &GroupMap) -> Result<()> {
        if self.domain != other.domain {
            return Err(Error::GroupMismatch {
                left: self.domain.spec(),
                right: other.domain.spec(),
            });
        }
        Ok(())
    }

    pub fn apply(&self, x: &Elem) -> Result<Elem> {
        self.domain.check(x)?;
        Ok(self.apply_unchecked(x))
    }

    fn apply_unchecked(&self, x: &Elem) -> Elem {
        let orders = self.domain.orders();
        let coords: Vec<i64> = self
            .matrix
            .iter()
            .zip(orders)
            .map(|(row, n)| {
                row.iter()
                    .zip(x.coords())
                    .fold(0i64, |acc, (a, c)| (acc + a * c) % n)
            })
            .collect();
        self.domain.elem(&coords).expect("rank matches")
    }

    /// Action on element indices.
    pub fn apply_idx(&self, i: usize) -> usize {
        self.domain
            .index_of(&self.apply_unchecked(&self.domain.elem_at(i)))
    }

    /// The full action as an index table.
    pub fn table(&self) -> Vec<usize> {
        (0..self.domain.order()).map(|i| self.apply_idx(i)).collect()
    }

    /// The adjoint `α̃` with `(αx, y) = (x, α̃y)`, given by
    /// `Ã_ji = A_ij · n_j / n_i`.
    pub fn adjoint(&self) -> GroupMap {
        let orders = self.domain.orders();
        let k = orders.len();
        let mut adj = vec![vec![0i64; k]; k];
        for i in 0..k {
            for j in 0..k {
                let num = self.matrix[i][j] * orders[j];
                assert!(
                    num % orders[i] == 0,
                    "adjoint entry not integral; compatibility invariant broken"
                );
                adj[j][i] = num / orders[i];
            }
        }
        GroupMap::new(&self.domain, adj).expect("adjoint of a compatible matrix is compatible")
    }

    pub fn kernel(&self) -> Subgroup {
        let members = (0..self.domain.order())
            .map(|i| self.apply_idx(i) == 0)
            .collect();
        Subgroup::from_members(&self.domain, members).expect("kernels are subgroups")
    }

    pub fn is_automorphism(&self) -> bool {
        (1..self.domain.order()).all(|i| self.apply_idx(i) != 0)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &GroupMap) -> Result<GroupMap> {
        self.same_domain(other)?;
        let k = self.domain.rank();
        let mut m = vec![vec![0i64; k]; k];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, entry) in row.iter_mut().enumerate() {
                *entry = (0..k).map(|l| self.matrix[i][l] * other.matrix[l][j]).sum();
            }
        }
        GroupMap::new(&self.domain, m)
    }

    pub fn add_maps(&self, other: &GroupMap) -> Result<GroupMap> {
        self.same_domain(other)?;
        let m = self
            .matrix
            .iter()
            .zip(&other.matrix)
            .map(|(r, s)| r.iter().zip(s).map(|(a, b)| a + b).collect())
            .collect();
        GroupMap::new(&self.domain, m)
    }

    pub fn negate(&self) -> GroupMap {
        let m = self
            .matrix
            .iter()
            .map(|r| r.iter().map(|a| -a).collect())
            .collect();
        GroupMap::new(&self.domain, m).expect("negation preserves compatibility")
    }

    /// `sign · I + self`; `plus_identity(true)` is `I + α`, `false` is `α − I`.
    pub fn plus_identity(&self, plus: bool) -> GroupMap {
        let id = if plus {
            GroupMap::identity(&self.domain)
        } else {
            GroupMap::neg_identity(&self.domain)
        };
        self.add_maps(&id).expect("same domain")
    }

    /// `I − α`.
    pub fn identity_minus(&self) -> GroupMap {
        GroupMap::identity(&self.domain)
            .add_maps(&self.negate())
            .expect("same domain")
    }

    pub fn image_subgroup(&self, s: &Subgroup) -> Result<Subgroup> {
        if s.parent() != &self.domain {
            return Err(Error::GroupMismatch {
                left: self.domain.spec(),
                right: s.parent().spec(),
            });
        }
        let mut members = vec![false; self.domain.order()];
        for i in s.indices() {
            members[self.apply_idx(i)] = true;
        }
        Subgroup::from_members(&self.domain, members)
    }

    pub fn image(&self) -> Subgroup {
        self.image_subgroup(&Subgroup::whole(&self.domain))
            .expect("same domain")
    }

    /// Inverse of an automorphism: columns are preimages of the generators.
    pub fn inverse(&self) -> Option<GroupMap> {
        if !self.is_automorphism() {
            return None;
        }
        let table = self.table();
        let mut preimage = vec![0usize; table.len()];
        for (i, &j) in table.iter().enumerate() {
            preimage[j] = i;
        }
        let k = self.domain.rank();
        let mut m = vec![vec![0i64; k]; k];
        for j in 0..k {
            let mut e = vec![0i64; k];
            e[j] = 1;
            let ej = self.domain.elem(&e).expect("rank matches");
            let src = self.domain.elem_at(preimage[self.domain.index_of(&ej)]);
            for (i, row) in m.iter_mut().enumerate() {
                row[j] = src.coords()[i];
            }
        }
        GroupMap::new(&self.domain, m).ok()
    }

    pub fn power(&self, m: u32) -> GroupMap {
        let mut acc = GroupMap::identity(&self.domain);
        for _ in 0..m {
            acc = acc.compose(self).expect("same domain");
        }
        acc
    }

    /// Smallest `m ≥ 1` with `α^m = I`, searched up to `limit`.
    pub fn order_in_aut(&self, limit: usize) -> Option<usize> {
        let id = GroupMap::identity(&self.domain);
        let mut acc = self.clone();
        for m in 1..=limit {
            if acc == id {
                return Some(m);
            }
            acc = acc.compose(self).expect("same domain");
        }
        None
    }
}

/// Every automorphism of `group`, ordered by matrix, for `|group| ≤ max_order`.
pub fn enumerate_automorphisms(group: &FinGroup, max_order: usize) -> Result<Vec<GroupMap>> {
    if group.order() > max_order {
        return Err(Error::BoundExceeded(format!(
            "|{group}| = {} exceeds the enumeration bound {max_order}",
            group.order()
        )));
    }
    let orders = group.orders();
    let k = orders.len();
    // choices for entry (i, j): multiples of the compatibility modulus below n_i
    let mut slots: Vec<(usize, usize, i64, i64)> = Vec::with_capacity(k * k);
    let mut space: u128 = 1;
    for i in 0..k {
        for j in 0..k {
            let m = compat_modulus(orders, i, j);
            let count = orders[i] / m;
            space *= count as u128;
            slots.push((i, j, m, count));
        }
    }
    if space > MAX_MATRIX_SEARCH {
        return Err(Error::BoundExceeded(format!(
            "{space} candidate matrices for {group} exceed the search cap {MAX_MATRIX_SEARCH}"
        )));
    }
    let mut found = BTreeSet::new();
    let mut counters = vec![0i64; slots.len()];
    loop {
        let mut m = vec![vec![0i64; k]; k];
        for (c, &(i, j, modulus, _)) in counters.iter().zip(&slots) {
            m[i][j] = c * modulus;
        }
        let map = GroupMap::new(group, m.clone()).expect("constructed compatible");
        if map.is_automorphism() {
            found.insert(m);
        }
        // odometer increment
        let mut pos = 0;
        loop {
            if pos == counters.len() {
                return Ok(found
                    .into_iter()
                    .map(|m| GroupMap::new(group, m).expect("compatible"))
                    .collect());
            }
            counters[pos] += 1;
            if counters[pos] < slots[pos].3 {
                break;
            }
            counters[pos] = 0;
            pos += 1;
        }
    }
}
