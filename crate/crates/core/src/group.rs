//! Finite groups given by Cayley tables.
//!
//! Elements are the indices `0..n`, and the identity is always index 0. Every
//! constructor (and the BGS parser, through [`FiniteGroup::from_table`])
//! renumbers its input so that this holds, which makes table equality a
//! meaningful comparison between groups.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

/// Default cap on the order of groups whose subgroup lattice is enumerated.
pub const SUBGROUP_BOUND: usize = 24;

/// Largest `n` accepted by [`FiniteGroup::symmetric`].
pub const SYMMETRIC_BOUND: usize = 5;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiniteGroup {
    order: usize,
    cayley: Vec<usize>,
    inverses: Vec<usize>,
}

/// A single violated group axiom together with the first witness found.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupViolation {
    NoIdentity,
    /// `a * b` is not a permutation in row (or column) `index`.
    RowNotPermutation { row: usize },
    ColumnNotPermutation { column: usize },
    NoInverse { element: usize },
    NotAssociative { a: usize, b: usize, c: usize },
}

impl fmt::Display for GroupViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupViolation::NoIdentity => write!(f, "no two-sided identity element"),
            GroupViolation::RowNotPermutation { row } => {
                write!(f, "row {row} is not a permutation")
            }
            GroupViolation::ColumnNotPermutation { column } => {
                write!(f, "column {column} is not a permutation")
            }
            GroupViolation::NoInverse { element } => write!(f, "no inverse for element {element}"),
            GroupViolation::NotAssociative { a, b, c } => {
                write!(f, "({a}*{b})*{c} != {a}*({b}*{c})")
            }
        }
    }
}

/// Result of [`verify_group`]. An empty report means the table is a group.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GroupReport {
    pub violations: Vec<GroupViolation>,
}

impl GroupReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Check every group axiom on a square table of indices.
///
/// Ragged tables and out-of-range entries are input errors, not violations.
pub fn verify_group(table: &[Vec<usize>]) -> Result<GroupReport> {
    let n = table.len();
    check_square(table)?;
    let at = |a: usize, b: usize| table[a][b];
    let mut violations = Vec::new();

    let identity = (0..n).find(|&e| (0..n).all(|a| at(e, a) == a && at(a, e) == a));
    if identity.is_none() {
        violations.push(GroupViolation::NoIdentity);
    }

    if let Some(row) = (0..n).find(|&a| !is_permutation((0..n).map(|b| at(a, b)), n)) {
        violations.push(GroupViolation::RowNotPermutation { row });
    }
    if let Some(column) = (0..n).find(|&b| !is_permutation((0..n).map(|a| at(a, b)), n)) {
        violations.push(GroupViolation::ColumnNotPermutation { column });
    }

    if let Some(e) = identity {
        if let Some(element) =
            (0..n).find(|&a| !(0..n).any(|b| at(a, b) == e && at(b, a) == e))
        {
            violations.push(GroupViolation::NoInverse { element });
        }
    }

    'assoc: for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if at(at(a, b), c) != at(a, at(b, c)) {
                    violations.push(GroupViolation::NotAssociative { a, b, c });
                    break 'assoc;
                }
            }
        }
    }

    Ok(GroupReport { violations })
}

pub(crate) fn check_square(table: &[Vec<usize>]) -> Result<()> {
    let n = table.len();
    if n == 0 {
        return Err(Error::Shape("empty table".into()));
    }
    for (i, row) in table.iter().enumerate() {
        if row.len() != n {
            return Err(Error::Shape(format!(
                "row {i} has {} entries, expected {n}",
                row.len()
            )));
        }
        if let Some(&v) = row.iter().find(|&&v| v >= n) {
            return Err(Error::Shape(format!("entry {v} in row {i} is out of range 0..{n}")));
        }
    }
    Ok(())
}

pub(crate) fn is_permutation(values: impl IntoIterator<Item = usize>, n: usize) -> bool {
    let mut seen = vec![false; n];
    let mut count = 0;
    for v in values {
        if v >= n || seen[v] {
            return false;
        }
        seen[v] = true;
        count += 1;
    }
    count == n
}

impl FiniteGroup {
    /// Validate a Cayley table and renumber it so the identity sits at index 0.
    ///
    /// Returns the group together with the relabeling `old index -> new index`.
    pub fn from_table(table: &[Vec<usize>]) -> Result<(Self, Vec<usize>)> {
        let report = verify_group(table)?;
        if let Some(v) = report.violations.first() {
            return Err(Error::InvalidGroup(v.to_string()));
        }
        let n = table.len();
        let e = (0..n)
            .find(|&e| (0..n).all(|a| table[e][a] == a))
            .expect("validated group has an identity");
        // swap e and 0
        let relabel: Vec<usize> = (0..n)
            .map(|a| {
                if a == e {
                    0
                } else if a == 0 {
                    e
                } else {
                    a
                }
            })
            .collect();
        let mut cayley = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                cayley[relabel[a] * n + relabel[b]] = relabel[table[a][b]];
            }
        }
        Ok((Self::from_flat_unchecked(n, cayley), relabel))
    }

    /// Build from a flat table already known to be a group with identity 0.
    pub(crate) fn from_flat_unchecked(order: usize, cayley: Vec<usize>) -> Self {
        let inverses = (0..order)
            .map(|a| {
                (0..order)
                    .find(|&b| cayley[a * order + b] == 0)
                    .expect("every element has an inverse")
            })
            .collect();
        FiniteGroup { order, cayley, inverses }
    }

    /// The cyclic group Z/n.
    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Bounds("cyclic group order must be positive".into()));
        }
        let cayley = (0..n * n).map(|i| (i / n + i % n) % n).collect();
        Ok(Self::from_flat_unchecked(n, cayley))
    }

    /// The symmetric group on `n` points, permutations listed in lexicographic
    /// one-line order. Element `a * b` is the composition "apply `b`, then `a`".
    pub fn symmetric(n: usize) -> Result<Self> {
        if n == 0 || n > SYMMETRIC_BOUND {
            return Err(Error::Bounds(format!(
                "symmetric group degree must be in 1..={SYMMETRIC_BOUND}, got {n}"
            )));
        }
        let perms = crate::perm::all_permutations(n);
        let order = perms.len();
        let index_of = |p: &[usize]| perms.binary_search_by(|q| q.as_slice().cmp(p)).unwrap();
        let mut cayley = vec![0; order * order];
        for (a, pa) in perms.iter().enumerate() {
            for (b, pb) in perms.iter().enumerate() {
                let composed: Vec<usize> = pb.iter().map(|&i| pa[i]).collect();
                cayley[a * order + b] = index_of(&composed);
            }
        }
        Ok(Self::from_flat_unchecked(order, cayley))
    }

    /// Direct product with lexicographic element order `(a, b) -> a * |H| + b`.
    pub fn direct_product(&self, other: &FiniteGroup) -> Self {
        let (n, k) = (self.order, other.order);
        let order = n * k;
        let mut cayley = vec![0; order * order];
        for x in 0..order {
            for y in 0..order {
                let a = self.mul(x / k, y / k);
                let b = other.mul(x % k, y % k);
                cayley[x * order + y] = a * k + b;
            }
        }
        Self::from_flat_unchecked(order, cayley)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        0
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.cayley[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn inverses(&self) -> &[usize] {
        &self.inverses
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    /// Cayley table as nested rows.
    pub fn table(&self) -> Vec<Vec<usize>> {
        self.cayley.chunks(self.order).map(<[usize]>::to_vec).collect()
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_cyclic(&self) -> bool {
        (0..self.order).any(|a| self.element_order(a) == self.order)
    }

    /// Greedy generating sequence: scan elements in index order and keep each
    /// one that is not already in the subgroup generated so far.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = vec![false; self.order];
        span[0] = true;
        for a in 1..self.order {
            if !span[a] {
                gens.push(a);
                for m in self.closure(&gens) {
                    span[m] = true;
                }
            }
        }
        gens
    }

    /// Members of the subgroup generated by `seed`, sorted.
    pub fn closure(&self, seed: &[usize]) -> Vec<usize> {
        let mut inside = vec![false; self.order];
        inside[0] = true;
        let mut queue: VecDeque<usize> = VecDeque::from([0]);
        while let Some(a) = queue.pop_front() {
            for &s in seed {
                let b = self.mul(a, s);
                if !inside[b] {
                    inside[b] = true;
                    queue.push_back(b);
                }
            }
        }
        (0..self.order).filter(|&a| inside[a]).collect()
    }

    /// All automorphisms, each as an image vector, sorted lexicographically.
    /// The identity automorphism comes first.
    pub fn automorphisms(&self) -> Vec<Vec<usize>> {
        let gens = self.generators();
        let orders: Vec<usize> = gens.iter().map(|&g| self.element_order(g)).collect();
        let candidates: Vec<Vec<usize>> = orders
            .iter()
            .map(|&k| (0..self.order).filter(|&a| self.element_order(a) == k).collect())
            .collect();
        let mut found = Vec::new();
        let mut choice = vec![0; gens.len()];
        crate::perm::for_each_product(&candidates, &mut choice, &mut |images| {
            if let Some(map) = self.extend_homomorphism(&gens, images, self) {
                if is_permutation(map.iter().copied(), self.order) {
                    found.push(map);
                }
            }
        });
        found.sort();
        found
    }

    /// Extend generator images to a homomorphism `self -> target`, if one exists.
    pub(crate) fn extend_homomorphism(
        &self,
        gens: &[usize],
        images: &[usize],
        target: &FiniteGroup,
    ) -> Option<Vec<usize>> {
        let mut map = vec![usize::MAX; self.order];
        map[0] = 0;
        let mut queue = VecDeque::from([0]);
        while let Some(a) = queue.pop_front() {
            for (&g, &img) in gens.iter().zip(images) {
                let b = self.mul(a, g);
                let want = target.mul(map[a], img);
                if map[b] == usize::MAX {
                    map[b] = want;
                    queue.push_back(b);
                } else if map[b] != want {
                    return None;
                }
            }
        }
        Some(map)
    }

    /// Brute-force isomorphism test, returning the first map found.
    pub fn isomorphism_to(&self, other: &FiniteGroup) -> Option<Vec<usize>> {
        if self.order != other.order {
            return None;
        }
        let gens = self.generators();
        let candidates: Vec<Vec<usize>> = gens
            .iter()
            .map(|&g| {
                let k = self.element_order(g);
                (0..other.order).filter(|&a| other.element_order(a) == k).collect()
            })
            .collect();
        let mut choice = vec![0; gens.len()];
        let mut result = None;
        crate::perm::for_each_product(&candidates, &mut choice, &mut |images| {
            if result.is_none() {
                if let Some(map) = self.extend_homomorphism(&gens, images, other) {
                    if is_permutation(map.iter().copied(), self.order) {
                        result = Some(map);
                    }
                }
            }
        });
        result
    }

    pub fn is_normal(&self, h: &Subgroup) -> bool {
        self.normality_witness(h).is_none()
    }

    /// A pair `(g, h)` with `g h g^-1` outside `h`, if any.
    pub fn normality_witness(&self, h: &Subgroup) -> Option<(usize, usize)> {
        for g in 0..self.order {
            for &m in h.members() {
                let c = self.mul(self.mul(g, m), self.inv(g));
                if !h.contains(c) {
                    return Some((g, m));
                }
            }
        }
        None
    }

    /// Every subgroup, sorted by `(size, members)`.
    pub fn subgroups(&self) -> Result<Vec<Subgroup>> {
        self.subgroups_bounded(SUBGROUP_BOUND)
    }

    pub fn subgroups_bounded(&self, bound: usize) -> Result<Vec<Subgroup>> {
        if self.order > bound {
            return Err(Error::Bounds(format!(
                "subgroup enumeration limited to order {bound}, group has order {}",
                self.order
            )));
        }
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut queue = VecDeque::from([vec![0]]);
        seen.insert(vec![0]);
        while let Some(members) = queue.pop_front() {
            for a in 0..self.order {
                if members.binary_search(&a).is_ok() {
                    continue;
                }
                let mut seed = members.clone();
                seed.push(a);
                let next = self.closure(&seed);
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
        let mut all: Vec<Subgroup> = seen
            .into_iter()
            .map(|members| Subgroup { parent_order: self.order, members })
            .collect();
        all.sort_by(|a, b| (a.len(), &a.members).cmp(&(b.len(), &b.members)));
        Ok(all)
    }

    pub fn normal_subgroups(&self) -> Result<Vec<Subgroup>> {
        self.normal_subgroups_bounded(SUBGROUP_BOUND)
    }

    pub fn normal_subgroups_bounded(&self, bound: usize) -> Result<Vec<Subgroup>> {
        Ok(self
            .subgroups_bounded(bound)?
            .into_iter()
            .filter(|h| self.is_normal(h))
            .collect())
    }

    /// The subgroup with the given members, after checking closure.
    pub fn subgroup(&self, members: &[usize]) -> Result<Subgroup> {
        let mut members = members.to_vec();
        members.sort_unstable();
        members.dedup();
        if members.iter().any(|&a| a >= self.order) {
            return Err(Error::Shape("subgroup member out of range".into()));
        }
        if self.closure(&members) != members {
            return Err(Error::InvalidGroup(format!("{members:?} is not a subgroup")));
        }
        Ok(Subgroup { parent_order: self.order, members })
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup { parent_order: self.order, members: vec![0] }
    }

    pub fn full_subgroup(&self) -> Subgroup {
        Subgroup { parent_order: self.order, members: (0..self.order).collect() }
    }

    /// Quotient by a normal subgroup.
    ///
    /// Cosets are numbered by their smallest member, so the coset of the
    /// identity gets index 0. The second component maps each element to its
    /// coset index.
    pub fn quotient(&self, h: &Subgroup) -> Result<(FiniteGroup, Vec<usize>)> {
        if h.parent_order != self.order {
            return Err(Error::Shape("subgroup belongs to a group of another order".into()));
        }
        if let Some((g, m)) = self.normality_witness(h) {
            return Err(Error::NotNormal { g, h: m });
        }
        let mut label = vec![usize::MAX; self.order];
        let mut reps = Vec::new();
        for a in 0..self.order {
            if label[a] == usize::MAX {
                let idx = reps.len();
                reps.push(a);
                for &m in h.members() {
                    label[self.mul(a, m)] = idx;
                }
            }
        }
        let k = reps.len();
        let mut cayley = vec![0; k * k];
        for (i, &a) in reps.iter().enumerate() {
            for (j, &b) in reps.iter().enumerate() {
                cayley[i * k + j] = label[self.mul(a, b)];
            }
        }
        Ok((Self::from_flat_unchecked(k, cayley), label))
    }
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("order", &self.order)
            .field("cayley", &self.table())
            .finish()
    }
}

/// Members of a subgroup of some [`FiniteGroup`], kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subgroup {
    parent_order: usize,
    members: Vec<usize>,
}

impl Subgroup {
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, a: usize) -> bool {
        self.members.binary_search(&a).is_ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.members == [0]
    }

    pub fn parent_order(&self) -> usize {
        self.parent_order
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_small_cases() {
        let g = FiniteGroup::cyclic(1).unwrap();
        assert_eq!(g.table(), vec![vec![0]]);
        let g = FiniteGroup::cyclic(2).unwrap();
        assert_eq!(g.table(), vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(g.inverses(), &[0, 1]);
        let g = FiniteGroup::cyclic(6).unwrap();
        assert!(g.is_abelian());
        assert_eq!(g.element_order(1), 6);
        assert!(FiniteGroup::cyclic(0).is_err());
    }

    #[test]
    fn symmetric_small_cases() {
        assert_eq!(FiniteGroup::symmetric(1).unwrap().order(), 1);
        let s2 = FiniteGroup::symmetric(2).unwrap();
        assert_eq!(s2, FiniteGroup::cyclic(2).unwrap());
        let s3 = FiniteGroup::symmetric(3).unwrap();
        assert_eq!(s3.order(), 6);
        assert!(!s3.is_abelian());
        // transpositions (0 1) = [1,0,2] and (1 2) = [0,2,1] in lexicographic order
        let (t01, t12) = (2, 1);
        assert_ne!(s3.mul(t01, t12), s3.mul(t12, t01));
        assert!(FiniteGroup::symmetric(6).is_err());
    }

    #[test]
    fn verify_group_reports() {
        let z3 = FiniteGroup::cyclic(3).unwrap();
        assert!(verify_group(&z3.table()).unwrap().is_valid());
        let bad = verify_group(&[vec![0, 1], vec![1, 1]]).unwrap();
        assert!(bad.violations.contains(&GroupViolation::RowNotPermutation { row: 1 }));
        assert!(bad.violations.contains(&GroupViolation::NoInverse { element: 1 }));
        let s3 = FiniteGroup::symmetric(3).unwrap();
        assert!(verify_group(&s3.table()).unwrap().is_valid());
        assert!(verify_group(&[vec![0, 1], vec![1]]).is_err());
        assert!(verify_group(&[vec![0, 2], vec![1, 0]]).is_err());
    }

    #[test]
    fn from_table_moves_identity_to_zero() {
        // Z/2 with the identity stored at index 1
        let (g, relabel) = FiniteGroup::from_table(&[vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(relabel, vec![1, 0]);
        assert_eq!(g, FiniteGroup::cyclic(2).unwrap());
    }

    #[test]
    fn normal_subgroups_of_small_groups() {
        let z4 = FiniteGroup::cyclic(4).unwrap();
        let subs: Vec<Vec<usize>> =
            z4.normal_subgroups().unwrap().iter().map(|h| h.members().to_vec()).collect();
        assert_eq!(subs, vec![vec![0], vec![0, 2], vec![0, 1, 2, 3]]);

        let s3 = FiniteGroup::symmetric(3).unwrap();
        let normal = s3.normal_subgroups().unwrap();
        assert_eq!(normal.len(), 3);
        assert!(normal[0].is_trivial());
        // even permutations: identity, [1,2,0], [2,0,1]
        assert_eq!(normal[1].members(), &[0, 3, 4]);
        assert_eq!(normal[2].len(), 6);
        assert_eq!(s3.subgroups().unwrap().len(), 6);

        let trivial = FiniteGroup::cyclic(1).unwrap();
        assert_eq!(trivial.normal_subgroups().unwrap().len(), 1);

        let big = FiniteGroup::cyclic(25).unwrap();
        assert!(big.normal_subgroups().is_err());
    }

    #[test]
    fn quotients() {
        let z4 = FiniteGroup::cyclic(4).unwrap();
        let h = z4.subgroup(&[0, 2]).unwrap();
        let (q, label) = z4.quotient(&h).unwrap();
        assert_eq!(q, FiniteGroup::cyclic(2).unwrap());
        assert_eq!(label, vec![0, 1, 0, 1]);

        let (q, _) = z4.quotient(&z4.trivial_subgroup()).unwrap();
        assert_eq!(q, z4);
        let (q, _) = z4.quotient(&z4.full_subgroup()).unwrap();
        assert_eq!(q.order(), 1);

        let s3 = FiniteGroup::symmetric(3).unwrap();
        let not_normal = s3.subgroup(&[0, 1]).unwrap();
        assert!(matches!(s3.quotient(&not_normal), Err(Error::NotNormal { .. })));
    }

    #[test]
    fn quotient_orders_for_all_normal_subgroups() {
        let mut groups: Vec<FiniteGroup> =
            (1..=12).map(|n| FiniteGroup::cyclic(n).unwrap()).collect();
        groups.push(FiniteGroup::symmetric(3).unwrap());
        let z2 = FiniteGroup::cyclic(2).unwrap();
        groups.push(z2.direct_product(&z2));
        groups.push(FiniteGroup::cyclic(2).unwrap().direct_product(&FiniteGroup::cyclic(6).unwrap()));
        for g in &groups {
            for h in g.normal_subgroups().unwrap() {
                let (q, _) = g.quotient(&h).unwrap();
                assert_eq!(q.order() * h.len(), g.order());
                assert!(verify_group(&q.table()).unwrap().is_valid());
            }
        }
    }

    #[test]
    fn abelian_predicates() {
        for n in 1..=64 {
            assert!(FiniteGroup::cyclic(n).unwrap().is_abelian());
        }
        for n in 3..=5 {
            assert!(!FiniteGroup::symmetric(n).unwrap().is_abelian());
        }
    }

    #[test]
    fn automorphism_counts() {
        assert_eq!(FiniteGroup::cyclic(5).unwrap().automorphisms().len(), 4);
        assert_eq!(FiniteGroup::cyclic(6).unwrap().automorphisms().len(), 2);
        let z2 = FiniteGroup::cyclic(2).unwrap();
        assert_eq!(z2.direct_product(&z2).automorphisms().len(), 6);
        assert_eq!(FiniteGroup::symmetric(3).unwrap().automorphisms().len(), 6);
    }

    #[test]
    fn isomorphism_detection() {
        let z6 = FiniteGroup::cyclic(6).unwrap();
        let z2xz3 = FiniteGroup::cyclic(2).unwrap().direct_product(&FiniteGroup::cyclic(3).unwrap());
        assert!(z6.isomorphism_to(&z2xz3).is_some());
        assert!(z6.isomorphism_to(&FiniteGroup::symmetric(3).unwrap()).is_none());
    }
}
