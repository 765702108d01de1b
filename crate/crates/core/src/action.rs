//! Binary actions of a finite group on a finite set.
//!
//! A binary action assigns to each group element `g` a binary operation
//! `g(x, y)` with `(gh)(x, y) = g(x, h(x, y))` and `e(x, y) = y`. Tables are
//! stored flat in `[g][x][y]` order. Fixing `x` gives an ordinary left action
//! of the group on the set, `y -> g(x, y)`; we call it the row action at `x`
//! and write `g_x` for the permutation it assigns to `g`.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::OnceLock;

use crate::binop::BinaryOp;
use crate::error::{Error, Result};
use crate::group::{is_permutation, FiniteGroup, Subgroup};
use crate::perm;

/// Default cap on the space size for [`are_biequimorphic`].
pub const BIEQUIMORPHISM_BOUND: usize = 8;

pub struct BinaryAction {
    group: FiniteGroup,
    size: usize,
    table: Vec<usize>,
    effective: OnceLock<bool>,
    transitive: OnceLock<bool>,
    semitransitive: OnceLock<bool>,
    distributive: OnceLock<Result<DistributivityReport>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ActionViolation {
    /// Condition 1: `(gh)(x, y) != g(x, h(x, y))`.
    Composition { g: usize, h: usize, x: usize, y: usize },
    /// Condition 2: `e(x, y) != y`.
    Identity { x: usize, y: usize },
}

impl fmt::Display for ActionViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            ActionViolation::Composition { g, h, x, y } => {
                write!(f, "condition 1 fails at g={g} h={h} x={x} y={y}")
            }
            ActionViolation::Identity { x, y } => write!(f, "condition 2 fails at x={x} y={y}"),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ActionReport {
    pub violations: Vec<ActionViolation>,
}

impl ActionReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Three independently computed distributivity tests.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DistributivityReport {
    /// `g(x, h(y, z)) = h(g(x, y), g(x, z))` over all tuples.
    pub direct: bool,
    /// Every `g_x` is a biequivariant bijection.
    pub cond1: bool,
    /// `g_x h_y = h_{g_x(y)} g_x` as permutations.
    pub cond2: bool,
}

impl DistributivityReport {
    pub fn holds(&self) -> bool {
        self.direct
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairStabilizer {
    pub subgroup: Subgroup,
    pub pair: (usize, usize),
}

fn check_shape(group: &FiniteGroup, m: usize, table: &[usize]) -> Result<()> {
    if m == 0 {
        return Err(Error::Shape("space must be nonempty".into()));
    }
    let expected = group.order() * m * m;
    if table.len() != expected {
        return Err(Error::Shape(format!(
            "action table has {} entries, expected {expected}",
            table.len()
        )));
    }
    if let Some(&v) = table.iter().find(|&&v| v >= m) {
        return Err(Error::Shape(format!("entry {v} out of range 0..{m}")));
    }
    Ok(())
}

/// Check both action conditions, reporting the first witness of each.
pub fn verify_action(group: &FiniteGroup, m: usize, table: &[usize]) -> Result<ActionReport> {
    check_shape(group, m, table)?;
    let n = group.order();
    let at = |g: usize, x: usize, y: usize| table[(g * m + x) * m + y];
    let mut violations = Vec::new();
    'cond1: for g in 0..n {
        for h in 0..n {
            let gh = group.mul(g, h);
            for x in 0..m {
                for y in 0..m {
                    if at(gh, x, y) != at(g, x, at(h, x, y)) {
                        violations.push(ActionViolation::Composition { g, h, x, y });
                        break 'cond1;
                    }
                }
            }
        }
    }
    'cond2: for x in 0..m {
        for y in 0..m {
            if at(0, x, y) != y {
                violations.push(ActionViolation::Identity { x, y });
                break 'cond2;
            }
        }
    }
    Ok(ActionReport { violations })
}

impl BinaryAction {
    /// Build from nested slices `slices[g][x][y]`.
    pub fn new(group: FiniteGroup, m: usize, slices: &[Vec<Vec<usize>>]) -> Result<Self> {
        if slices.len() != group.order() {
            return Err(Error::Shape(format!(
                "{} slices given for a group of order {}",
                slices.len(),
                group.order()
            )));
        }
        let mut table = Vec::with_capacity(group.order() * m * m);
        for (g, slice) in slices.iter().enumerate() {
            if slice.len() != m || slice.iter().any(|r| r.len() != m) {
                return Err(Error::Shape(format!("slice {g} is not {m}x{m}")));
            }
            for row in slice {
                table.extend_from_slice(row);
            }
        }
        Self::from_flat(group, m, table)
    }

    pub fn from_flat(group: FiniteGroup, m: usize, table: Vec<usize>) -> Result<Self> {
        let report = verify_action(&group, m, &table)?;
        if let Some(v) = report.violations.first() {
            return Err(Error::InvalidAction(v.to_string()));
        }
        Ok(Self::from_flat_unchecked(group, m, table))
    }

    pub(crate) fn from_flat_unchecked(group: FiniteGroup, size: usize, table: Vec<usize>) -> Self {
        BinaryAction {
            group,
            size,
            table,
            effective: OnceLock::new(),
            transitive: OnceLock::new(),
            semitransitive: OnceLock::new(),
            distributive: OnceLock::new(),
        }
    }

    /// The action in which every group element acts as `e(x, y) = y`.
    pub fn trivial(group: FiniteGroup, m: usize) -> Self {
        let table = (0..group.order() * m * m).map(|i| i % m).collect();
        Self::from_flat_unchecked(group, m, table)
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn space_size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn act(&self, g: usize, x: usize, y: usize) -> usize {
        self.table[(g * self.size + x) * self.size + y]
    }

    pub fn as_flat(&self) -> &[usize] {
        &self.table
    }

    /// The slice of `g` as a binary operation.
    pub fn slice(&self, g: usize) -> BinaryOp {
        let mm = self.size * self.size;
        BinaryOp::from_flat(self.size, self.table[g * mm..(g + 1) * mm].to_vec())
    }

    pub fn slices(&self) -> Vec<Vec<Vec<usize>>> {
        (0..self.group.order()).map(|g| self.slice(g).rows()).collect()
    }

    /// `g_x` as a permutation of the space.
    pub fn row_perm(&self, g: usize, x: usize) -> &[usize] {
        let start = (g * self.size + x) * self.size;
        &self.table[start..start + self.size]
    }

    pub fn kernel(&self) -> Subgroup {
        let members: Vec<usize> = self
            .group
            .elements()
            .filter(|&g| {
                (0..self.size).all(|x| (0..self.size).all(|y| self.act(g, x, y) == y))
            })
            .collect();
        self.group.subgroup(&members).expect("kernel is a subgroup")
    }

    pub fn is_effective(&self) -> bool {
        *self.effective.get_or_init(|| self.kernel().is_trivial())
    }

    /// The induced effective action of `G / Ker`.
    pub fn effectivization(&self) -> BinaryAction {
        let kernel = self.kernel();
        let (quotient, label) = self.group.quotient(&kernel).expect("kernel is normal");
        let k = quotient.order();
        let mm = self.size * self.size;
        let mut table = vec![0; k * mm];
        let mut filled = vec![false; k];
        for g in self.group.elements() {
            let c = label[g];
            if !filled[c] {
                filled[c] = true;
                table[c * mm..(c + 1) * mm].copy_from_slice(&self.table[g * mm..(g + 1) * mm]);
            }
        }
        Self::from_flat_unchecked(quotient, self.size, table)
    }

    pub fn orbit(&self, x: usize, y: usize) -> Vec<usize> {
        let set: BTreeSet<usize> = self.group.elements().map(|g| self.act(g, x, y)).collect();
        set.into_iter().collect()
    }

    pub fn stationary_subgroup(&self, x: usize, y: usize) -> Result<PairStabilizer> {
        let members: Vec<usize> =
            self.group.elements().filter(|&g| self.act(g, x, y) == y).collect();
        let subgroup = self.group.subgroup(&members)?;
        if x == y && self.is_distributive()?.holds() && !self.group.is_normal(&subgroup) {
            return Err(Error::Inconsistent(format!(
                "stabilizer of ({x},{x}) is not normal in a distributive action"
            )));
        }
        Ok(PairStabilizer { subgroup, pair: (x, y) })
    }

    pub fn is_transitive(&self) -> bool {
        *self
            .transitive
            .get_or_init(|| (0..self.size).all(|x| self.orbit(x, x).len() == self.size))
    }

    /// `G(x, x) = {x}` and `G(x, y) = X \ {x}` for `x != y`.
    ///
    /// On a one-point space this holds only for the trivial group.
    pub fn is_semitransitive(&self) -> bool {
        *self.semitransitive.get_or_init(|| {
            let m = self.size;
            if m == 1 {
                return self.group.order() == 1;
            }
            (0..m).all(|x| {
                self.orbit(x, x) == [x]
                    && (0..m).filter(|&y| y != x).all(|y| {
                        let orbit = self.orbit(x, y);
                        orbit.len() == m - 1 && !orbit.contains(&x)
                    })
            })
        })
    }

    /// Runs the three distributivity tests and insists they agree.
    pub fn is_distributive(&self) -> Result<DistributivityReport> {
        self.distributive
            .get_or_init(|| {
                let report = DistributivityReport {
                    direct: self.distributive_direct(),
                    cond1: self.distributive_by_biequivariance(),
                    cond2: self.distributive_by_commutation(),
                };
                if report.direct == report.cond1 && report.cond1 == report.cond2 {
                    Ok(report)
                } else {
                    Err(Error::Inconsistent(format!(
                        "distributivity tests disagree: {report:?}"
                    )))
                }
            })
            .clone()
    }

    /// Convenience: distributive, treating an inconsistency as `false`.
    pub fn distributive(&self) -> bool {
        self.is_distributive().map(|r| r.holds()).unwrap_or(false)
    }

    fn distributive_direct(&self) -> bool {
        let (n, m) = (self.group.order(), self.size);
        for g in 0..n {
            for h in 0..n {
                for x in 0..m {
                    for y in 0..m {
                        let gxy = self.act(g, x, y);
                        for z in 0..m {
                            let lhs = self.act(g, x, self.act(h, y, z));
                            let rhs = self.act(h, gxy, self.act(g, x, z));
                            if lhs != rhs {
                                return false;
                            }
                        }
                    }
                }
            }
        }
        true
    }

    fn distributive_by_biequivariance(&self) -> bool {
        (0..self.group.order()).all(|g| {
            (0..self.size).all(|x| {
                let f = self.row_perm(g, x);
                is_permutation(f.iter().copied(), self.size) && is_biequivariant(self, self, f)
            })
        })
    }

    fn distributive_by_commutation(&self) -> bool {
        let (n, m) = (self.group.order(), self.size);
        for g in 0..n {
            for x in 0..m {
                let gx = self.row_perm(g, x);
                for h in 0..n {
                    for y in 0..m {
                        let lhs = perm::compose(gx, self.row_perm(h, y));
                        let rhs = perm::compose(self.row_perm(h, gx[y]), gx);
                        if lhs != rhs {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// Checks the hypotheses of the field construction, naming the first one
    /// that fails.
    pub fn require_qualifying(&self) -> Result<()> {
        if !self.is_effective() {
            return Err(Error::PreconditionFailed("action is not effective".into()));
        }
        if !self.is_semitransitive() {
            return Err(Error::PreconditionFailed("action is not semitransitive".into()));
        }
        if !self.is_distributive()?.holds() {
            return Err(Error::PreconditionFailed("action is not distributive".into()));
        }
        Ok(())
    }

    pub fn qualifies(&self) -> bool {
        self.require_qualifying().is_ok()
    }

    /// Transport along a space bijection: the result `β` satisfies
    /// `β[g][f(x)][f(y)] = f(α[g][x][y])`.
    pub fn relabel_space(&self, f: &[usize]) -> BinaryAction {
        let m = self.size;
        let mut table = vec![0; self.table.len()];
        for g in self.group.elements() {
            for x in 0..m {
                for y in 0..m {
                    table[(g * m + f[x]) * m + f[y]] = f[self.act(g, x, y)];
                }
            }
        }
        Self::from_flat_unchecked(self.group.clone(), m, table)
    }

    /// Twist by a group automorphism `σ`: `β[σ(g)] = α[g]`.
    pub fn relabel_group(&self, sigma: &[usize]) -> BinaryAction {
        let mm = self.size * self.size;
        let mut table = vec![0; self.table.len()];
        for g in self.group.elements() {
            let s = sigma[g];
            table[s * mm..(s + 1) * mm].copy_from_slice(&self.table[g * mm..(g + 1) * mm]);
        }
        Self::from_flat_unchecked(self.group.clone(), self.size, table)
    }

    /// One-line summary of the property flags.
    pub fn summary(&self) -> String {
        let distributive = match self.is_distributive() {
            Ok(r) => r.holds().to_string(),
            Err(_) => "inconsistent".into(),
        };
        format!(
            "group order {}, space {}, effective {}, distributive {}, transitive {}, semitransitive {}",
            self.group.order(),
            self.size,
            self.is_effective(),
            distributive,
            self.is_transitive(),
            self.is_semitransitive()
        )
    }
}

impl Clone for BinaryAction {
    fn clone(&self) -> Self {
        BinaryAction {
            group: self.group.clone(),
            size: self.size,
            table: self.table.clone(),
            effective: self.effective.clone(),
            transitive: self.transitive.clone(),
            semitransitive: self.semitransitive.clone(),
            distributive: self.distributive.clone(),
        }
    }
}

impl PartialEq for BinaryAction {
    fn eq(&self, other: &Self) -> bool {
        self.size == other.size && self.group == other.group && self.table == other.table
    }
}

impl Eq for BinaryAction {}

impl fmt::Debug for BinaryAction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BinaryAction")
            .field("group_order", &self.group.order())
            .field("space_size", &self.size)
            .field("slices", &self.slices())
            .finish()
    }
}

/// `f(α[g][x][y]) = β[g][f(x)][f(y)]` for all `g, x, y`.
pub fn is_biequivariant(alpha: &BinaryAction, beta: &BinaryAction, f: &[usize]) -> bool {
    let m = alpha.size;
    alpha.group.elements().all(|g| {
        (0..m).all(|x| (0..m).all(|y| f[alpha.act(g, x, y)] == beta.act(g, f[x], f[y])))
    })
}

/// The canonical action of a group on itself: `g(x, y) = x g x^-1 y`.
pub fn conjugate_left_translation(group: &FiniteGroup) -> BinaryAction {
    let n = group.order();
    let mut table = vec![0; n * n * n];
    for g in 0..n {
        for x in 0..n {
            let c = group.mul(group.mul(x, g), group.inv(x));
            for y in 0..n {
                table[(g * n + x) * n + y] = group.mul(c, y);
            }
        }
    }
    BinaryAction::from_flat_unchecked(group.clone(), n, table)
}

/// Action on the cosets of a normal subgroup: `g(kH, lH) = (k g k^-1 l)H`.
/// Cosets are numbered as in [`FiniteGroup::quotient`].
pub fn coset_action(group: &FiniteGroup, h: &Subgroup) -> Result<BinaryAction> {
    let (quotient, label) = group.quotient(h)?;
    let k = quotient.order();
    let mut reps = vec![usize::MAX; k];
    for g in group.elements().rev() {
        reps[label[g]] = g;
    }
    let n = group.order();
    let mut table = vec![0; n * k * k];
    for g in 0..n {
        for (ci, &kr) in reps.iter().enumerate() {
            let c = group.mul(group.mul(kr, g), group.inv(kr));
            for (cj, &lr) in reps.iter().enumerate() {
                table[(g * k + ci) * k + cj] = label[group.mul(c, lr)];
            }
        }
    }
    BinaryAction::from_flat(group.clone(), k, table)
}

type PointInvariant = (usize, usize, Vec<usize>);

fn point_invariants(alpha: &BinaryAction) -> Vec<PointInvariant> {
    let m = alpha.size;
    (0..m)
        .map(|x| {
            let stab = alpha.group.elements().filter(|&g| alpha.act(g, x, x) == x).count();
            let mut sizes: Vec<usize> = (0..m).map(|y| alpha.orbit(x, y).len()).collect();
            sizes.sort_unstable();
            (alpha.orbit(x, x).len(), stab, sizes)
        })
        .collect()
}

struct BijectionSearch<'a> {
    alpha: &'a BinaryAction,
    beta: &'a BinaryAction,
    inv_alpha: Vec<PointInvariant>,
    inv_beta: Vec<PointInvariant>,
}

impl BijectionSearch<'_> {
    /// Assign `f(x) = v` and close under the forced images
    /// `f(α[g][a][b]) = β[g][f(a)][f(b)]`.
    fn extend(&self, f: &mut [usize], used: &mut [bool], x: usize, v: usize) -> bool {
        let m = self.alpha.size;
        if used[v] || self.inv_alpha[x] != self.inv_beta[v] {
            return false;
        }
        f[x] = v;
        used[v] = true;
        let mut assigned: Vec<usize> = (0..m).filter(|&a| f[a] != usize::MAX).collect();
        let mut frontier = vec![x];
        while let Some(new) = frontier.pop() {
            let mut i = 0;
            while i < assigned.len() {
                let a = assigned[i];
                i += 1;
                for (p, q) in [(a, new), (new, a)] {
                    for g in self.alpha.group.elements() {
                        let z = self.alpha.act(g, p, q);
                        let w = self.beta.act(g, f[p], f[q]);
                        if f[z] == usize::MAX {
                            if used[w] || self.inv_alpha[z] != self.inv_beta[w] {
                                return false;
                            }
                            f[z] = w;
                            used[w] = true;
                            assigned.push(z);
                            frontier.push(z);
                        } else if f[z] != w {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    fn search(&self, f: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
        let Some(x) = f.iter().position(|&v| v == usize::MAX) else {
            return true;
        };
        for v in 0..self.alpha.size {
            let (mut f2, mut used2) = (f.clone(), used.clone());
            if self.extend(&mut f2, &mut used2, x, v) && self.search(&mut f2, &mut used2) {
                *f = f2;
                *used = used2;
                return true;
            }
        }
        false
    }
}

/// Search for a biequimorphism `α -> β` with the group labeling fixed.
///
/// Returns the lexicographically least bijection `f` with
/// `f(α[g][x][y]) = β[g][f(x)][f(y)]`.
pub fn are_biequimorphic(alpha: &BinaryAction, beta: &BinaryAction) -> Result<Option<Vec<usize>>> {
    are_biequimorphic_bounded(alpha, beta, BIEQUIMORPHISM_BOUND)
}

pub fn are_biequimorphic_bounded(
    alpha: &BinaryAction,
    beta: &BinaryAction,
    bound: usize,
) -> Result<Option<Vec<usize>>> {
    if alpha.group != beta.group {
        return Err(Error::Shape("biequimorphism needs the same group on both sides".into()));
    }
    if alpha.size != beta.size {
        return Ok(None);
    }
    if alpha.size > bound {
        return Err(Error::Bounds(format!(
            "biequimorphism search limited to {bound} points, got {}",
            alpha.size
        )));
    }
    if alpha.kernel() != beta.kernel() {
        return Ok(None);
    }
    let search = BijectionSearch {
        alpha,
        beta,
        inv_alpha: point_invariants(alpha),
        inv_beta: point_invariants(beta),
    };
    let mut a = search.inv_alpha.clone();
    let mut b = search.inv_beta.clone();
    a.sort();
    b.sort();
    if a != b {
        return Ok(None);
    }
    let mut f = vec![usize::MAX; alpha.size];
    let mut used = vec![false; alpha.size];
    Ok(search.search(&mut f, &mut used).then_some(f))
}

/// Biequimorphism up to a group automorphism. Returns `(σ, f)` where `σ` is
/// the first automorphism (in lexicographic order) for which the twisted
/// action `α` relabeled by `σ` is biequimorphic to `β` via `f`.
pub fn are_biequimorphic_twisted(
    alpha: &BinaryAction,
    beta: &BinaryAction,
) -> Result<Option<(Vec<usize>, Vec<usize>)>> {
    are_biequimorphic_twisted_bounded(alpha, beta, BIEQUIMORPHISM_BOUND)
}

pub fn are_biequimorphic_twisted_bounded(
    alpha: &BinaryAction,
    beta: &BinaryAction,
    bound: usize,
) -> Result<Option<(Vec<usize>, Vec<usize>)>> {
    for sigma in alpha.group.automorphisms() {
        let twisted = alpha.relabel_group(&sigma);
        if let Some(f) = are_biequimorphic_bounded(&twisted, beta, bound)? {
            return Ok(Some((sigma, f)));
        }
    }
    Ok(None)
}
