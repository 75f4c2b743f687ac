//! Finite Abelian groups as ordered products of cyclic factors, their
//! elements, characters and subgroups.
//!
//! A group `ℤ(n_1) × … × ℤ(n_k)` is its own character group: the character
//! with coordinates `y` takes the value `exp(2πi Σ x_i y_i / n_i)` at `x`.
//! Elements are indexed in mixed radix with the first coordinate most
//! significant, so index order is lexicographic order.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use num_integer::Integer;

use crate::error::{Error, Result};
use crate::rational::Q;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FinGroup {
    orders: Vec<i64>,
    strides: Vec<usize>,
    size: usize,
    exponent: i64,
}

/// Element of a [`FinGroup`]; characters use the same type.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Elem {
    coords: Vec<i64>,
}

impl Elem {
    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    /// Parses the comma-joined form `"1,3"`. The empty string is the
    /// element of the trivial group.
    pub fn parse(s: &str) -> Result<Elem> {
        let t = s.trim();
        if t.is_empty() {
            return Ok(Elem { coords: vec![] });
        }
        let mut coords = Vec::new();
        let mut pos = 0;
        for part in t.split(',') {
            let v: i64 = part.trim().parse().map_err(|_| Error::Parse {
                position: pos,
                token: part.to_string(),
                message: "expected an integer coordinate".into(),
            })?;
            coords.push(v);
            pos += part.len() + 1;
        }
        Ok(Elem { coords })
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FinGroup {
    pub fn new(orders: Vec<i64>) -> Result<Self> {
        if let Some(bad) = orders.iter().find(|&&n| n < 2) {
            return Err(Error::InvalidGroup(format!(
                "cyclic factor order {bad} must be at least 2"
            )));
        }
        let mut size: usize = 1;
        for &n in &orders {
            size = size
                .checked_mul(n as usize)
                .ok_or_else(|| Error::InvalidGroup("group order overflows".into()))?;
        }
        let mut strides = vec![1usize; orders.len()];
        for i in (0..orders.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * orders[i + 1] as usize;
        }
        let exponent = orders.iter().fold(1i64, |acc, &n| acc.lcm(&n));
        Ok(FinGroup {
            orders,
            strides,
            size,
            exponent,
        })
    }

    pub fn cyclic(n: i64) -> Result<Self> {
        Self::new(vec![n])
    }

    /// The group with one element (rank zero).
    pub fn trivial() -> Self {
        Self::new(vec![]).expect("rank zero group is valid")
    }

    pub fn orders(&self) -> &[i64] {
        &self.orders
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    /// Number of elements `N = Π n_i`.
    pub fn order(&self) -> usize {
        self.size
    }

    /// Least common multiple of the cyclic orders.
    pub fn exponent(&self) -> i64 {
        self.exponent
    }

    /// Spec string such as `Z3xZ9`; the trivial group renders as `1`.
    pub fn spec(&self) -> String {
        if self.orders.is_empty() {
            return "1".into();
        }
        self.orders
            .iter()
            .map(|n| format!("Z{n}"))
            .collect::<Vec<_>>()
            .join("x")
    }

    pub fn zero(&self) -> Elem {
        Elem {
            coords: vec![0; self.rank()],
        }
    }

    /// Builds an element, reducing each coordinate into `[0, n_i)`.
    pub fn elem(&self, coords: &[i64]) -> Result<Elem> {
        if coords.len() != self.rank() {
            return Err(Error::InvalidElement {
                elem: format!("{coords:?}"),
                group: self.spec(),
                reason: format!("expected {} coordinates", self.rank()),
            });
        }
        Ok(Elem {
            coords: coords
                .iter()
                .zip(&self.orders)
                .map(|(c, n)| c.rem_euclid(*n))
                .collect(),
        })
    }

    /// Parses `"a,b"` and reduces it into this group.
    pub fn parse_elem(&self, s: &str) -> Result<Elem> {
        self.elem(Elem::parse(s)?.coords())
    }

    /// Validates that `x` is already a reduced element of this group.
    pub fn check(&self, x: &Elem) -> Result<()> {
        if x.rank() != self.rank() {
            return Err(Error::InvalidElement {
                elem: x.to_string(),
                group: self.spec(),
                reason: format!("rank {} but group rank {}", x.rank(), self.rank()),
            });
        }
        for (i, (c, n)) in x.coords.iter().zip(&self.orders).enumerate() {
            if *c < 0 || c >= n {
                return Err(Error::InvalidElement {
                    elem: x.to_string(),
                    group: self.spec(),
                    reason: format!("coordinate {i} outside [0, {n})"),
                });
            }
        }
        Ok(())
    }

    pub fn contains(&self, x: &Elem) -> bool {
        self.check(x).is_ok()
    }

    pub fn index_of(&self, x: &Elem) -> usize {
        x.coords
            .iter()
            .zip(&self.strides)
            .map(|(c, s)| *c as usize * s)
            .sum()
    }

    pub fn elem_at(&self, mut idx: usize) -> Elem {
        let mut coords = vec![0; self.rank()];
        for (i, s) in self.strides.iter().enumerate() {
            coords[i] = (idx / s) as i64;
            idx %= s;
        }
        Elem { coords }
    }

    /// All elements in lexicographic order.
    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.size).map(move |i| self.elem_at(i))
    }

    pub fn add(&self, x: &Elem, y: &Elem) -> Elem {
        Elem {
            coords: x
                .coords
                .iter()
                .zip(&y.coords)
                .zip(&self.orders)
                .map(|((a, b), n)| (a + b) % n)
                .collect(),
        }
    }

    pub fn neg(&self, x: &Elem) -> Elem {
        Elem {
            coords: x
                .coords
                .iter()
                .zip(&self.orders)
                .map(|(a, n)| (n - a) % n)
                .collect(),
        }
    }

    pub fn sub(&self, x: &Elem, y: &Elem) -> Elem {
        self.add(x, &self.neg(y))
    }

    pub fn scale(&self, k: i64, x: &Elem) -> Elem {
        Elem {
            coords: x
                .coords
                .iter()
                .zip(&self.orders)
                .map(|(a, n)| (k.rem_euclid(*n) * a) % n)
                .collect(),
        }
    }

    pub fn add_idx(&self, i: usize, j: usize) -> usize {
        let mut out = 0;
        let (mut a, mut b) = (i, j);
        for (s, n) in self.strides.iter().zip(&self.orders) {
            let (ca, cb) = (a / s, b / s);
            a %= s;
            b %= s;
            out += ((ca + cb) % *n as usize) * s;
        }
        out
    }

    pub fn neg_idx(&self, i: usize) -> usize {
        let mut out = 0;
        let mut a = i;
        for (s, n) in self.strides.iter().zip(&self.orders) {
            let c = a / s;
            a %= s;
            out += ((*n as usize - c) % *n as usize) * s;
        }
        out
    }

    pub fn sub_idx(&self, i: usize, j: usize) -> usize {
        self.add_idx(i, self.neg_idx(j))
    }

    /// Exponent of the pairing as an integer `e` in `[0, exponent())`, so that
    /// `(x, y) = exp(2πi e / exponent())`.
    pub fn phase_idx(&self, x: usize, y: usize) -> i64 {
        let l = self.exponent;
        let (mut a, mut b) = (x, y);
        let mut acc: i64 = 0;
        for (s, n) in self.strides.iter().zip(&self.orders) {
            let (ca, cb) = ((a / s) as i64, (b / s) as i64);
            a %= s;
            b %= s;
            acc = (acc + (ca * cb % n) * (l / n)) % l;
        }
        acc
    }

    /// The exact rational `Σ x_i y_i / n_i` reduced into `[0, 1)`.
    pub fn pairing_exponent(&self, x: &Elem, y: &Elem) -> Result<Q> {
        self.check(x)?;
        self.check(y)?;
        Ok(Q::new(
            self.phase_idx(self.index_of(x), self.index_of(y)),
            self.exponent,
        ))
    }

    /// The character value `(x, y) = exp(2πi Σ x_i y_i / n_i)`.
    pub fn pairing(&self, x: &Elem, y: &Elem) -> Result<Complex64> {
        let e = self.pairing_exponent(x, y)?;
        Ok(unit_root(*e.numer(), *e.denom()))
    }

    /// `exponent()`-th roots of unity, indexed by phase.
    pub fn roots_of_unity(&self) -> Vec<Complex64> {
        (0..self.exponent)
            .map(|k| unit_root(k, self.exponent))
            .collect()
    }

    /// Whether some element has order exactly two.
    pub fn has_order_two(&self) -> bool {
        self.orders.iter().any(|n| n % 2 == 0)
    }
}

/// `exp(2πi k / n)` with the quarter-turn values pinned exactly.
pub fn unit_root(k: i64, n: i64) -> Complex64 {
    let k = k.rem_euclid(n);
    if k == 0 {
        return Complex64::new(1.0, 0.0);
    }
    if 2 * k == n {
        return Complex64::new(-1.0, 0.0);
    }
    if 4 * k == n {
        return Complex64::new(0.0, 1.0);
    }
    if 4 * k == 3 * n {
        return Complex64::new(0.0, -1.0);
    }
    let theta = 2.0 * std::f64::consts::PI * k as f64 / n as f64;
    Complex64::new(theta.cos(), theta.sin())
}

impl fmt::Display for FinGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.spec())
    }
}

impl FromStr for FinGroup {
    type Err = Error;

    /// Grammar: `Z<n>` factors joined by `x`, case-insensitive, e.g.
    /// `Z3xZ9`. `1` denotes the trivial group.
    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim();
        if trimmed == "1" || trimmed.eq_ignore_ascii_case("trivial") {
            return Ok(FinGroup::trivial());
        }
        if trimmed.is_empty() {
            return Err(Error::Parse {
                position: 0,
                token: String::new(),
                message: "empty group spec".into(),
            });
        }
        let lower = trimmed.to_ascii_lowercase();
        let mut orders = Vec::new();
        let mut pos = 0;
        for token in lower.split('x') {
            let original = &trimmed[pos..pos + token.len()];
            let bad = |message: &str| Error::Parse {
                position: pos,
                token: original.to_string(),
                message: message.to_string(),
            };
            let digits = token
                .strip_prefix('z')
                .ok_or_else(|| bad("expected a factor of the form Z<n>"))?;
            let n: i64 = digits
                .parse()
                .map_err(|_| bad("expected an integer order after Z"))?;
            if n < 2 {
                return Err(bad("cyclic order must be at least 2"));
            }
            orders.push(n);
            pos += token.len() + 1;
        }
        FinGroup::new(orders)
    }
}

/// A subgroup stored as its explicit element set.
#[derive(Clone, Debug)]
pub struct Subgroup {
    parent: FinGroup,
    members: Vec<bool>,
    elements: Vec<Elem>,
    generators: Option<Vec<Elem>>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.parent == other.parent && self.members == other.members
    }
}

impl Eq for Subgroup {}

impl Subgroup {
    fn from_mask(parent: &FinGroup, members: Vec<bool>, generators: Option<Vec<Elem>>) -> Self {
        let elements = members
            .iter()
            .enumerate()
            .filter(|(_, m)| **m)
            .map(|(i, _)| parent.elem_at(i))
            .collect();
        Subgroup {
            parent: parent.clone(),
            members,
            elements,
            generators,
        }
    }

    pub fn trivial(parent: &FinGroup) -> Self {
        let mut members = vec![false; parent.order()];
        members[0] = true;
        Self::from_mask(parent, members, Some(vec![]))
    }

    pub fn whole(parent: &FinGroup) -> Self {
        Self::from_mask(parent, vec![true; parent.order()], None)
    }

    /// Smallest subgroup containing `gens`, by closure under addition.
    pub fn from_generators(parent: &FinGroup, gens: &[Elem]) -> Result<Self> {
        for g in gens {
            parent.check(g)?;
        }
        let gen_idx: Vec<usize> = gens.iter().map(|g| parent.index_of(g)).collect();
        let mut members = vec![false; parent.order()];
        members[0] = true;
        let mut frontier = vec![0usize];
        while let Some(i) = frontier.pop() {
            for &g in &gen_idx {
                let j = parent.add_idx(i, g);
                if !members[j] {
                    members[j] = true;
                    frontier.push(j);
                }
            }
        }
        Ok(Self::from_mask(parent, members, Some(gens.to_vec())))
    }

    /// Accepts an explicit element set after checking it is a subgroup.
    pub fn from_elements(parent: &FinGroup, elems: &[Elem]) -> Result<Self> {
        let mut members = vec![false; parent.order()];
        for e in elems {
            parent.check(e)?;
            members[parent.index_of(e)] = true;
        }
        Self::from_members(parent, members)
    }

    /// Accepts a membership mask after checking closure and `0 ∈ S`.
    pub fn from_members(parent: &FinGroup, members: Vec<bool>) -> Result<Self> {
        if members.len() != parent.order() || !members[0] {
            return Err(Error::ClosureFailure("set does not contain 0".into()));
        }
        let idx: Vec<usize> = (0..members.len()).filter(|&i| members[i]).collect();
        for &i in &idx {
            if !members[parent.neg_idx(i)] {
                return Err(Error::ClosureFailure(format!(
                    "not closed under negation at {}",
                    parent.elem_at(i)
                )));
            }
            for &j in &idx {
                if !members[parent.add_idx(i, j)] {
                    return Err(Error::ClosureFailure(format!(
                        "not closed under addition: {} + {}",
                        parent.elem_at(i),
                        parent.elem_at(j)
                    )));
                }
            }
        }
        Ok(Self::from_mask(parent, members, None))
    }

    pub fn parent(&self) -> &FinGroup {
        &self.parent
    }

    /// Canonical (lexicographically sorted) element list.
    pub fn elements(&self) -> &[Elem] {
        &self.elements
    }

    pub fn generators(&self) -> Option<&[Elem]> {
        self.generators.as_deref()
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, x: &Elem) -> bool {
        self.parent.contains(x) && self.members[self.parent.index_of(x)]
    }

    pub fn contains_idx(&self, i: usize) -> bool {
        self.members[i]
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.members
            .iter()
            .enumerate()
            .filter(|(_, m)| **m)
            .map(|(i, _)| i)
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn is_whole(&self) -> bool {
        self.order() == self.parent.order()
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.parent == other.parent && self.indices().all(|i| other.members[i])
    }
}

/// `A(X, L) = {x : (x, y) = 1 for all y ∈ L}`, decided on exact phases.
pub fn annihilator(group: &FinGroup, l: &Subgroup) -> Result<Subgroup> {
    if l.parent() != group {
        return Err(Error::GroupMismatch {
            left: group.spec(),
            right: l.parent().spec(),
        });
    }
    let ys: Vec<usize> = l.indices().collect();
    let members = (0..group.order())
        .map(|x| ys.iter().all(|&y| group.phase_idx(x, y) == 0))
        .collect();
    Ok(Subgroup::from_mask(group, members, None))
}

/// `S^{(2)} = {2s : s ∈ S}`.
pub fn doubled(s: &Subgroup) -> Subgroup {
    let g = s.parent();
    let mut members = vec![false; g.order()];
    for i in s.indices() {
        members[g.add_idx(i, i)] = true;
    }
    Subgroup::from_mask(g, members, None)
}

pub fn has_order_two(group: &FinGroup) -> bool {
    group.has_order_two()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> FinGroup {
        s.parse().unwrap()
    }

    fn close(a: Complex64, b: Complex64) -> bool {
        (a - b).norm() < 1e-12
    }

    #[test]
    fn pairing_examples() {
        let z3 = g("Z3");
        let one = Complex64::new(1.0, 0.0);
        assert!(close(
            z3.pairing(&z3.elem(&[0]).unwrap(), &z3.elem(&[2]).unwrap())
                .unwrap(),
            one
        ));
        let w = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0);
        assert!(close(
            z3.pairing(&z3.elem(&[1]).unwrap(), &z3.elem(&[1]).unwrap())
                .unwrap(),
            w
        ));
        let x = g("Z3xZ9");
        let p = x
            .pairing(&x.elem(&[1, 3]).unwrap(), &x.elem(&[2, 3]).unwrap())
            .unwrap();
        // 2/3 + 9/9 ≡ 2/3
        assert_eq!(
            x.pairing_exponent(&x.elem(&[1, 3]).unwrap(), &x.elem(&[2, 3]).unwrap())
                .unwrap(),
            Q::new(2, 3)
        );
        assert!(close(
            p,
            Complex64::from_polar(1.0, 4.0 * std::f64::consts::PI / 3.0)
        ));
    }

    #[test]
    fn pairing_rejects_rank_mismatch() {
        let x = g("Z3xZ9");
        assert!(x.pairing(&x.zero(), &Elem::parse("1").unwrap()).is_err());
        assert!(x.pairing(&x.zero(), &Elem::parse("1,9").unwrap()).is_err());
    }

    #[test]
    fn parse_group_specs() {
        assert_eq!(g("Z3xZ9").orders(), &[3, 9]);
        assert_eq!(g("z5XZ5xz25").orders(), &[5, 5, 25]);
        assert_eq!(g("1").order(), 1);
        match "Z0".parse::<FinGroup>() {
            Err(Error::Parse { token, position, .. }) => {
                assert_eq!(token, "Z0");
                assert_eq!(position, 0);
            }
            other => panic!("unexpected {other:?}"),
        }
        match "Z3xQ4".parse::<FinGroup>() {
            Err(Error::Parse { token, position, .. }) => {
                assert_eq!(token, "Q4");
                assert_eq!(position, 3);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn index_order_is_lexicographic() {
        let x = g("Z2xZ3xZ2");
        let elems: Vec<Elem> = x.elements().collect();
        let mut sorted = elems.clone();
        sorted.sort();
        assert_eq!(elems, sorted);
        for (i, e) in elems.iter().enumerate() {
            assert_eq!(x.index_of(e), i);
        }
    }

    #[test]
    fn subgroup_closure_examples() {
        let z9 = g("Z9");
        let s = Subgroup::from_generators(&z9, &[]).unwrap();
        assert!(s.is_trivial());
        let s = Subgroup::from_generators(&z9, &[z9.elem(&[3]).unwrap()]).unwrap();
        let got: Vec<String> = s.elements().iter().map(|e| e.to_string()).collect();
        assert_eq!(got, ["0", "3", "6"]);
        let x = g("Z3xZ3");
        let d = Subgroup::from_generators(&x, &[x.elem(&[1, 1]).unwrap()]).unwrap();
        let got: Vec<String> = d.elements().iter().map(|e| e.to_string()).collect();
        assert_eq!(got, ["0,0", "1,1", "2,2"]);
    }

    #[test]
    fn annihilator_examples() {
        let z9 = g("Z9");
        assert!(annihilator(&z9, &Subgroup::trivial(&z9)).unwrap().is_whole());
        assert!(annihilator(&z9, &Subgroup::whole(&z9)).unwrap().is_trivial());
        let l = Subgroup::from_generators(&z9, &[z9.elem(&[3]).unwrap()]).unwrap();
        // brute force over the 9×3 pairings on complex values
        let expected: Vec<Elem> = z9
            .elements()
            .filter(|x| {
                l.elements()
                    .iter()
                    .all(|y| (z9.pairing(x, y).unwrap() - 1.0).norm() < 1e-12)
            })
            .collect();
        let a = annihilator(&z9, &l).unwrap();
        assert_eq!(a.elements(), expected.as_slice());
        assert_eq!(a, l);
    }

    #[test]
    fn doubled_examples() {
        let z3 = g("Z3");
        assert!(doubled(&Subgroup::whole(&z3)).is_whole());
        let z4 = g("Z4");
        let d = doubled(&Subgroup::whole(&z4));
        let got: Vec<String> = d.elements().iter().map(|e| e.to_string()).collect();
        assert_eq!(got, ["0", "2"]);
        let x = g("Z2xZ3");
        let d = doubled(&Subgroup::whole(&x));
        let got: Vec<String> = d.elements().iter().map(|e| e.to_string()).collect();
        assert_eq!(got, ["0,0", "0,1", "0,2"]);
    }

    #[test]
    fn order_two_examples() {
        assert!(!has_order_two(&g("Z3xZ9")));
        assert!(has_order_two(&g("Z2")));
        let z6 = g("Z6");
        assert!(has_order_two(&z6));
        assert_eq!(z6.scale(2, &z6.elem(&[3]).unwrap()), z6.zero());
    }

    #[test]
    fn from_members_rejects_non_subgroups() {
        let z5 = g("Z5");
        let mut m = vec![false; 5];
        m[0] = true;
        m[1] = true;
        assert!(matches!(
            Subgroup::from_members(&z5, m),
            Err(Error::ClosureFailure(_))
        ));
    }
}
