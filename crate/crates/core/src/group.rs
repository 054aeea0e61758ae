//! Finite abelian groups presented as explicit products of cyclic groups,
//! together with their elements, characters, and subgroups (codes).
//!
//! A group `Z_{n_1} x ... x Z_{n_k}` is self-dual under the canonical pairing
//! `<chi, g> = sum_i chi_i * g_i * (N / n_i) mod N`, where `N = lcm(n_i)`.
//! Characters are therefore represented as elements of a group with the same
//! cyclic orders, and `chi(g) = zeta_N ^ <chi, g>`.

use std::collections::BTreeSet;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GroupError {
    #[error("cyclic orders must all be >= 1, got {0}")]
    InvalidOrder(u64),
    #[error("group order {0} exceeds the configured cap {1}")]
    OrderCapExceeded(u64, u64),
    #[error("element has {got} coordinates, group has {expected} factors")]
    ShapeMismatch { expected: usize, got: usize },
    #[error("coordinate {value} out of range for Z_{modulus}")]
    CoordOutOfRange { value: u64, modulus: u64 },
    #[error("elements belong to different groups")]
    GroupMismatch,
    #[error("subgroup enumeration cap exceeded: |G| = {0} > {1}")]
    EnumerationCapExceeded(u64, u64),
}

/// Default cap on the order of a single group; everything here is desk scale.
pub const DEFAULT_GROUP_CAP: u64 = 1 << 16;

/// Default cap for exhaustive subgroup enumeration.
pub const DEFAULT_SUBGROUP_ENUM_CAP: u64 = 256;

/// A finite abelian group `Z_{n_1} x ... x Z_{n_k}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteAbelianGroup {
    orders: Vec<u64>,
    /// Mixed-radix strides for element indexing.
    strides: Vec<u64>,
    order: u64,
    exponent: u64,
}

/// An element of a [`FiniteAbelianGroup`], stored coordinate-wise with
/// `coords[i] in [0, n_i)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupElement {
    coords: Vec<u64>,
}

/// Characters live in the dual group, which under the canonical self-pairing
/// has the same cyclic orders. The trivial character is the zero element.
pub type Character = GroupElement;

impl GroupElement {
    pub fn coords(&self) -> &[u64] {
        &self.coords
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

impl FiniteAbelianGroup {
    pub fn new(orders: Vec<u64>) -> Result<Self, GroupError> {
        Self::with_cap(orders, DEFAULT_GROUP_CAP)
    }

    pub fn with_cap(orders: Vec<u64>, cap: u64) -> Result<Self, GroupError> {
        let mut order: u64 = 1;
        let mut exponent: u64 = 1;
        for &n in &orders {
            if n == 0 {
                return Err(GroupError::InvalidOrder(n));
            }
            order = order
                .checked_mul(n)
                .ok_or(GroupError::OrderCapExceeded(u64::MAX, cap))?;
            if order > cap {
                return Err(GroupError::OrderCapExceeded(order, cap));
            }
            exponent = lcm(exponent, n);
        }
        // strides[i] = product of orders[i+1..]
        let mut strides = vec![1u64; orders.len()];
        for i in (0..orders.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * orders[i + 1];
        }
        Ok(Self {
            orders,
            strides,
            order,
            exponent,
        })
    }

    /// The direct power `G^n`.
    pub fn power(&self, n: usize) -> Result<Self, GroupError> {
        let mut orders = Vec::with_capacity(self.orders.len() * n);
        for _ in 0..n {
            orders.extend_from_slice(&self.orders);
        }
        Self::new(orders)
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    /// The character group. Under the canonical self-pairing it has the same
    /// presentation.
    pub fn dual_group(&self) -> Self {
        self.clone()
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement {
            coords: vec![0; self.orders.len()],
        }
    }

    pub fn element(&self, coords: Vec<u64>) -> Result<GroupElement, GroupError> {
        if coords.len() != self.orders.len() {
            return Err(GroupError::ShapeMismatch {
                expected: self.orders.len(),
                got: coords.len(),
            });
        }
        for (&c, &n) in coords.iter().zip(&self.orders) {
            if c >= n {
                return Err(GroupError::CoordOutOfRange {
                    value: c,
                    modulus: n,
                });
            }
        }
        Ok(GroupElement { coords })
    }

    /// Element with the given coordinates reduced modulo the cyclic orders.
    pub fn element_mod(&self, coords: &[u64]) -> Result<GroupElement, GroupError> {
        if coords.len() != self.orders.len() {
            return Err(GroupError::ShapeMismatch {
                expected: self.orders.len(),
                got: coords.len(),
            });
        }
        let coords = coords
            .iter()
            .zip(&self.orders)
            .map(|(&c, &n)| c % n)
            .collect();
        Ok(GroupElement { coords })
    }

    pub fn index_of(&self, g: &GroupElement) -> usize {
        g.coords
            .iter()
            .zip(&self.strides)
            .map(|(&c, &s)| (c * s) as usize)
            .sum()
    }

    pub fn element_at(&self, mut index: usize) -> GroupElement {
        debug_assert!((index as u64) < self.order);
        let coords = self
            .strides
            .iter()
            .map(|&s| {
                let c = index as u64 / s;
                index %= s as usize;
                c
            })
            .collect();
        GroupElement { coords }
    }

    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.order as usize).map(|i| self.element_at(i))
    }

    fn check_shape(&self, g: &GroupElement) -> Result<(), GroupError> {
        if g.coords.len() != self.orders.len() {
            return Err(GroupError::ShapeMismatch {
                expected: self.orders.len(),
                got: g.coords.len(),
            });
        }
        Ok(())
    }

    /// Coordinate-wise addition modulo the cyclic orders.
    pub fn add(&self, g: &GroupElement, h: &GroupElement) -> Result<GroupElement, GroupError> {
        self.check_shape(g)?;
        self.check_shape(h)?;
        let coords = g
            .coords
            .iter()
            .zip(&h.coords)
            .zip(&self.orders)
            .map(|((&a, &b), &n)| (a + b) % n)
            .collect();
        Ok(GroupElement { coords })
    }

    /// Coordinate-wise negation modulo the cyclic orders.
    pub fn neg(&self, g: &GroupElement) -> Result<GroupElement, GroupError> {
        self.check_shape(g)?;
        let coords = g
            .coords
            .iter()
            .zip(&self.orders)
            .map(|(&a, &n)| (n - a) % n)
            .collect();
        Ok(GroupElement { coords })
    }

    pub fn sub(&self, g: &GroupElement, h: &GroupElement) -> Result<GroupElement, GroupError> {
        let nh = self.neg(h)?;
        self.add(g, &nh)
    }

    /// Exponent `e in [0, N)` of the canonical pairing, so `chi(g) = zeta_N^e`.
    /// `chi(g) = 1` iff `e = 0`.
    pub fn char_pairing(&self, chi: &Character, g: &GroupElement) -> Result<u64, GroupError> {
        self.check_shape(chi)?;
        self.check_shape(g)?;
        let n = self.exponent;
        let mut e: u64 = 0;
        for ((&a, &b), &ni) in chi.coords.iter().zip(&g.coords).zip(&self.orders) {
            // a, b < ni <= N <= 2^16, so no overflow in u64.
            e = (e + a * b % n * (n / ni)) % n;
        }
        Ok(e)
    }
}

/// A code: a subgroup of a finite abelian group, stored as its full element
/// set (by index) together with the generators it was built from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Code {
    group: FiniteAbelianGroup,
    members: Vec<bool>,
    elements: Vec<usize>,
    generators: Vec<GroupElement>,
}

impl Code {
    /// Smallest subgroup of `group` containing all `generators`.
    pub fn closure(
        group: &FiniteAbelianGroup,
        generators: Vec<GroupElement>,
    ) -> Result<Self, GroupError> {
        let n = group.order() as usize;
        let mut members = vec![false; n];
        members[group.index_of(&group.zero())] = true;
        let mut frontier = vec![group.zero()];
        while let Some(g) = frontier.pop() {
            for gen in &generators {
                let h = group.add(&g, gen)?;
                let idx = group.index_of(&h);
                if !members[idx] {
                    members[idx] = true;
                    frontier.push(h);
                }
            }
        }
        let elements = (0..n).filter(|&i| members[i]).collect();
        Ok(Self {
            group: group.clone(),
            members,
            elements,
            generators,
        })
    }

    pub fn zero_code(group: &FiniteAbelianGroup) -> Self {
        Code::closure(group, vec![]).expect("empty generator list")
    }

    pub fn full_code(group: &FiniteAbelianGroup) -> Self {
        let n = group.order() as usize;
        let generators = group.elements().collect();
        Code {
            group: group.clone(),
            members: vec![true; n],
            elements: (0..n).collect(),
            generators,
        }
    }

    /// Builds a code from an element set that is already a subgroup.
    /// Returns `None` if the set is not closed.
    pub fn from_element_set(
        group: &FiniteAbelianGroup,
        set: &BTreeSet<GroupElement>,
    ) -> Option<Self> {
        let code = Code::closure(group, set.iter().cloned().collect()).ok()?;
        if code.len() == set.len() as u64 {
            Some(code)
        } else {
            None
        }
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn generators(&self) -> &[GroupElement] {
        &self.generators
    }

    pub fn len(&self) -> u64 {
        self.elements.len() as u64
    }

    pub fn is_empty(&self) -> bool {
        false // a code always contains the identity
    }

    pub fn is_trivial(&self) -> bool {
        self.len() == 1 || self.len() == self.group.order()
    }

    pub fn contains_index(&self, index: usize) -> bool {
        self.members[index]
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        self.members[self.group.index_of(g)]
    }

    pub fn element_indices(&self) -> &[usize] {
        &self.elements
    }

    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        self.elements.iter().map(|&i| self.group.element_at(i))
    }

    /// The dual code: all characters annihilating every codeword.
    /// Satisfies `|C| * |C*| = |G|`.
    pub fn dual(&self) -> Code {
        let dual_group = self.group.dual_group();
        let n = dual_group.order() as usize;
        let mut members = vec![false; n];
        let mut elements = Vec::new();
        let mut generators = Vec::new();
        for i in 0..n {
            let chi = dual_group.element_at(i);
            let annihilates = self.elements().all(|g| {
                self.group
                    .char_pairing(&chi, &g)
                    .expect("same presentation")
                    == 0
            });
            if annihilates {
                members[i] = true;
                elements.push(i);
                generators.push(chi);
            }
        }
        Code {
            group: dual_group,
            members,
            elements,
            generators,
        }
    }

    /// Subgroup generated by the union of the two codes.
    pub fn sum(&self, other: &Code) -> Result<Code, GroupError> {
        if self.group != other.group {
            return Err(GroupError::GroupMismatch);
        }
        let mut gens = self.generators.clone();
        gens.extend(other.generators.clone());
        gens.extend(self.elements());
        gens.extend(other.elements());
        Code::closure(&self.group, gens)
    }

    pub fn intersect(&self, other: &Code) -> Result<Code, GroupError> {
        if self.group != other.group {
            return Err(GroupError::GroupMismatch);
        }
        let set: BTreeSet<GroupElement> = self
            .elements()
            .filter(|g| other.contains(g))
            .collect();
        Code::from_element_set(&self.group, &set).ok_or(GroupError::GroupMismatch)
    }
}

/// Every subgroup of `group`, each exactly once, by breadth-first closure.
pub fn enumerate_subgroups(group: &FiniteAbelianGroup) -> Result<Vec<Code>, GroupError> {
    enumerate_subgroups_with_cap(group, DEFAULT_SUBGROUP_ENUM_CAP)
}

pub fn enumerate_subgroups_with_cap(
    group: &FiniteAbelianGroup,
    cap: u64,
) -> Result<Vec<Code>, GroupError> {
    if group.order() > cap {
        return Err(GroupError::EnumerationCapExceeded(group.order(), cap));
    }
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut result = Vec::new();
    let mut queue = vec![Code::zero_code(group)];
    seen.insert(queue[0].element_indices().to_vec());
    while let Some(code) = queue.pop() {
        for g in group.elements() {
            if code.contains(&g) {
                continue;
            }
            let mut gens = code.generators().to_vec();
            gens.push(g);
            let bigger = Code::closure(group, gens)?;
            let key = bigger.element_indices().to_vec();
            if seen.insert(key) {
                queue.push(bigger);
            }
        }
        result.push(code);
    }
    result.sort_by(|a, b| {
        (a.len(), a.element_indices()).cmp(&(b.len(), b.element_indices()))
    });
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u64) -> FiniteAbelianGroup {
        FiniteAbelianGroup::new(vec![n]).unwrap()
    }

    #[test]
    fn add_and_neg_mod_orders() {
        let g = z(4);
        let three = g.element(vec![3]).unwrap();
        assert_eq!(g.add(&three, &three).unwrap(), g.element(vec![2]).unwrap());
        assert_eq!(g.add(&three, &g.zero()).unwrap(), three);
        assert_eq!(
            g.neg(&g.element(vec![1]).unwrap()).unwrap(),
            g.element(vec![3]).unwrap()
        );
        assert_eq!(g.neg(&g.zero()).unwrap(), g.zero());

        let g33 = FiniteAbelianGroup::new(vec![3, 3]).unwrap();
        assert_eq!(
            g33.neg(&g33.element(vec![1, 2]).unwrap()).unwrap(),
            g33.element(vec![2, 1]).unwrap()
        );

        let g22 = FiniteAbelianGroup::new(vec![2, 2]).unwrap();
        assert_eq!(
            g22.add(
                &g22.element(vec![1, 0]).unwrap(),
                &g22.element(vec![0, 1]).unwrap()
            )
            .unwrap(),
            g22.element(vec![1, 1]).unwrap()
        );
    }

    #[test]
    fn add_shape_mismatch() {
        let g = z(4);
        let g22 = FiniteAbelianGroup::new(vec![2, 2]).unwrap();
        let e = g22.element(vec![1, 1]).unwrap();
        assert!(matches!(
            g.add(&g.zero(), &e),
            Err(GroupError::ShapeMismatch { .. })
        ));
    }

    #[test]
    fn pairing_examples() {
        let g = z(4);
        let chi = g.element(vec![1]).unwrap();
        let three = g.element(vec![3]).unwrap();
        assert_eq!(g.char_pairing(&chi, &three).unwrap(), 3);
        assert_eq!(g.char_pairing(&g.zero(), &three).unwrap(), 0);

        // Z_2 x Z_4 has exponent N = 4, so the Z_2 factor pairs via N/n_1 = 2.
        let g24 = FiniteAbelianGroup::new(vec![2, 4]).unwrap();
        let chi = g24.element(vec![1, 0]).unwrap();
        let e = g24.element(vec![1, 0]).unwrap();
        assert_eq!(g24.char_pairing(&chi, &e).unwrap(), 2);
    }

    #[test]
    fn closure_examples() {
        let g = z(4);
        let c = Code::closure(&g, vec![g.element(vec![2]).unwrap()]).unwrap();
        assert_eq!(c.len(), 2);
        assert!(c.contains(&g.zero()));
        assert!(c.contains(&g.element(vec![2]).unwrap()));

        assert_eq!(Code::closure(&g, vec![]).unwrap().len(), 1);

        let g22 = FiniteAbelianGroup::new(vec![2, 2]).unwrap();
        let c = Code::closure(&g22, vec![g22.element(vec![1, 1]).unwrap()]).unwrap();
        assert_eq!(c.len(), 2);
    }

    #[test]
    fn dual_code_examples() {
        let g = z(4);
        let c = Code::closure(&g, vec![g.element(vec![2]).unwrap()]).unwrap();
        let d = c.dual();
        let idx: Vec<usize> = d.element_indices().to_vec();
        assert_eq!(idx, vec![0, 2]);
        assert_eq!(c.len() * d.len(), g.order());

        assert_eq!(Code::zero_code(&g).dual().len(), 4);
        assert_eq!(Code::full_code(&g).dual().len(), 1);
    }

    #[test]
    fn sum_and_intersect() {
        let g = z(4);
        let c = Code::closure(&g, vec![g.element(vec![2]).unwrap()]).unwrap();
        assert_eq!(c.sum(&c).unwrap().len(), 2);
        assert_eq!(c.intersect(&Code::full_code(&g)).unwrap().len(), 2);

        let g22 = FiniteAbelianGroup::new(vec![2, 2]).unwrap();
        let a = Code::closure(&g22, vec![g22.element(vec![1, 0]).unwrap()]).unwrap();
        let b = Code::closure(&g22, vec![g22.element(vec![0, 1]).unwrap()]).unwrap();
        let s = a.sum(&b).unwrap();
        assert_eq!(s.len(), 4);
        // |C + D| = |C| |D| / |C n D|
        assert_eq!(
            s.len(),
            a.len() * b.len() / a.intersect(&b).unwrap().len()
        );
    }

    #[test]
    fn subgroup_counts() {
        assert_eq!(enumerate_subgroups(&z(4)).unwrap().len(), 3);
        assert_eq!(
            enumerate_subgroups(&FiniteAbelianGroup::new(vec![2, 2]).unwrap())
                .unwrap()
                .len(),
            5
        );
        assert_eq!(enumerate_subgroups(&z(7)).unwrap().len(), 2);
    }

    #[test]
    fn enumeration_cap() {
        let g = FiniteAbelianGroup::new(vec![2; 10]).unwrap();
        assert!(matches!(
            enumerate_subgroups(&g),
            Err(GroupError::EnumerationCapExceeded(1024, 256))
        ));
    }
}
