//! Exhaustive enumeration of semitransitive distributive binary actions.
//!
//! A binary action is the same thing as a family of ordinary left actions,
//! one per point: the row action `y -> g(x, y)` at each `x`. The action
//! axioms hold exactly when every row action is a homomorphism into the
//! symmetric group, and semitransitivity says the row action at `x` fixes `x`
//! and is transitive on the remaining points. So the search assigns whole row
//! actions, one point at a time, from a precomputed candidate list.
//!
//! Distributivity is the family of equations `ρ_t(h) = g_x ρ_y(h) g_x^-1`
//! with `t = g_x(y)`: once rows `x` and `y` are known, row `t` is forced.
//! The search propagates these forced rows and backtracks on conflicts, so
//! in practice rows 0 and 1 determine everything else.

use std::collections::HashSet;
use std::fmt;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::action::{
    are_biequimorphic, are_biequimorphic_bounded, are_biequimorphic_twisted_bounded, BinaryAction,
    BIEQUIMORPHISM_BOUND,
};
use crate::binop::H2_BOUND;
use crate::duality::{action_to_field, canonical_params};
use crate::error::{Error, Result};
use crate::field::FiniteField;
use crate::group::FiniteGroup;
use crate::perm;

/// Default cap on the space size.
pub const SPACE_BOUND: usize = 8;
/// Default cap on the group order.
pub const GROUP_BOUND: usize = 7;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    /// Return nothing at once when `|G| != m - 1`.
    pub size_shortcut: bool,
    /// Return nothing at once when `G` is not abelian.
    pub abelian_shortcut: bool,
    /// Only consider row actions that are regular on the non-fixed points
    /// (pair stabilizers of distinct points are trivial).
    pub regular_rows: bool,
    pub max_space: usize,
    pub max_group: usize,
    /// Explore root branches on the rayon pool.
    pub parallel: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            size_shortcut: true,
            abelian_shortcut: true,
            regular_rows: true,
            max_space: SPACE_BOUND,
            max_group: GROUP_BOUND,
            parallel: true,
        }
    }
}

impl SearchOptions {
    /// Every necessary-condition shortcut disabled; only the definitions
    /// constrain the search.
    pub fn no_prune() -> Self {
        SearchOptions {
            size_shortcut: false,
            abelian_shortcut: false,
            regular_rows: false,
            ..Self::default()
        }
    }

    pub fn sequential(mut self) -> Self {
        self.parallel = false;
        self
    }
}

#[derive(Debug, Clone)]
pub struct SearchReport {
    pub group_description: String,
    pub group: FiniteGroup,
    pub space_size: usize,
    pub options: SearchOptions,
    /// Sorted by flattened table, no duplicates.
    pub found: Vec<BinaryAction>,
    /// Field built from each found action with canonical parameters.
    pub fields: Vec<FiniteField>,
    pub count_raw: usize,
    pub count_up_to_biequimorphism: usize,
    pub count_up_to_twisted_biequimorphism: usize,
    pub nodes_explored: u64,
    /// Which shortcut ended the search early, if any.
    pub short_circuit: Option<&'static str>,
    /// Wall-clock time; deliberately left out of the rendered report.
    pub elapsed: Duration,
}

impl fmt::Display for SearchReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "group: {}", self.group_description)?;
        writeln!(f, "space: {}", self.space_size)?;
        let o = &self.options;
        writeln!(
            f,
            "pruning: size-shortcut={} abelian-shortcut={} regular-rows={}",
            o.size_shortcut, o.abelian_shortcut, o.regular_rows
        )?;
        if let Some(reason) = self.short_circuit {
            writeln!(f, "short-circuit: {reason}")?;
        }
        writeln!(f, "nodes explored: {}", self.nodes_explored)?;
        writeln!(f, "{} actions found", self.count_raw)?;
        writeln!(f, "up to biequimorphism: {}", self.count_up_to_biequimorphism)?;
        writeln!(f, "up to twisted biequimorphism: {}", self.count_up_to_twisted_biequimorphism)?;
        for (i, field) in self.fields.iter().enumerate() {
            writeln!(
                f,
                "  action {i}: induced field of order {} and characteristic {}",
                field.order(),
                field.characteristic()
            )?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum RowKind {
    /// Fixes its point, transitive on the others.
    Semitransitive { regular: bool },
    /// The orbit of its point is the whole space.
    Transitive,
}

/// Row actions stored flat: `row[g * m + y] = g_x(y)`.
type Row = Vec<usize>;

/// All homomorphisms from `group` into the symmetric group on `m` points
/// that satisfy `kind` at point 0, in lexicographic order of generator
/// images.
fn template_rows(group: &FiniteGroup, m: usize, kind: RowKind) -> Vec<Row> {
    let n = group.order();
    let gens = group.generators();
    let perms: Vec<Vec<usize>> = perm::all_permutations(m)
        .into_iter()
        .filter(|p| !matches!(kind, RowKind::Semitransitive { .. }) || p.first() == Some(&0))
        .collect();
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&g| {
            let k = group.element_order(g);
            (0..perms.len()).filter(|&i| k % perm::order(&perms[i]) == 0).collect()
        })
        .collect();

    let mut rows = Vec::new();
    let mut choice = Vec::new();
    crate::perm::for_each_product(&candidates, &mut choice, &mut |images| {
        let images: Vec<&Vec<usize>> = images.iter().map(|&i| &perms[i]).collect();
        if let Some(row) = extend_to_row(group, &gens, &images, m) {
            if row_satisfies(&row, n, m, kind) {
                rows.push(row);
            }
        }
    });
    rows
}

fn extend_to_row(group: &FiniteGroup, gens: &[usize], images: &[&Vec<usize>], m: usize) -> Option<Row> {
    let n = group.order();
    let mut row = vec![usize::MAX; n * m];
    row[..m].iter_mut().enumerate().for_each(|(i, v)| *v = i);
    let mut queue = std::collections::VecDeque::from([0]);
    while let Some(a) = queue.pop_front() {
        for (&g, img) in gens.iter().zip(images) {
            let b = group.mul(a, g);
            // ρ(a g) = ρ(a) ∘ ρ(g)
            let composed: Vec<usize> = img.iter().map(|&i| row[a * m + i]).collect();
            if row[b * m] == usize::MAX {
                row[b * m..(b + 1) * m].copy_from_slice(&composed);
                queue.push_back(b);
            } else if row[b * m..(b + 1) * m] != composed[..] {
                return None;
            }
        }
    }
    Some(row)
}

fn row_satisfies(row: &[usize], n: usize, m: usize, kind: RowKind) -> bool {
    match kind {
        RowKind::Transitive => {
            let orbit: HashSet<usize> = (0..n).map(|g| row[g * m]).collect();
            orbit.len() == m
        }
        RowKind::Semitransitive { regular } => {
            if (0..n).any(|g| row[g * m] != 0) {
                return false;
            }
            if m <= 2 {
                return true;
            }
            let orbit: HashSet<usize> = (0..n).map(|g| row[g * m + 1]).collect();
            orbit.len() == m - 1 && (!regular || n == m - 1)
        }
    }
}

/// Move a row at point 0 to point `x` by conjugating with the swap `(0 x)`.
fn transport(row: &[usize], n: usize, m: usize, x: usize) -> Row {
    let swap = |i: usize| if i == 0 { x } else if i == x { 0 } else { i };
    let mut out = vec![0; n * m];
    for g in 0..n {
        for y in 0..m {
            out[g * m + swap(y)] = swap(row[g * m + y]);
        }
    }
    out
}

struct Engine<'a> {
    group: &'a FiniteGroup,
    m: usize,
    /// Candidate rows per point.
    candidates: Vec<Vec<Row>>,
    members: Vec<HashSet<Row>>,
}

type Partial = Vec<Option<Row>>;

impl<'a> Engine<'a> {
    fn new(group: &'a FiniteGroup, m: usize, kind: RowKind) -> Self {
        let n = group.order();
        let template = template_rows(group, m, kind);
        let candidates: Vec<Vec<Row>> = (0..m)
            .map(|x| {
                let mut rows: Vec<Row> =
                    template.iter().map(|r| if x == 0 { r.clone() } else { transport(r, n, m, x) }).collect();
                rows.sort();
                rows
            })
            .collect();
        let members = candidates.iter().map(|c| c.iter().cloned().collect()).collect();
        Engine { group, m, candidates, members }
    }

    /// Row forced at `t = g_x(y)` by rows `x` and `y`: `h -> g_x ρ_y(h) g_x^-1`.
    fn forced(&self, rx: &[usize], ry: &[usize], y: usize, g: usize) -> (usize, Row) {
        let m = self.m;
        let gx = &rx[g * m..(g + 1) * m];
        let mut out = vec![0; ry.len()];
        for h in 0..self.group.order() {
            for z in 0..m {
                out[h * m + gx[z]] = gx[ry[h * m + z]];
            }
        }
        (gx[y], out)
    }

    /// Assign row `x` and close under forced rows. False on conflict.
    fn assign(&self, state: &mut Partial, x: usize, row: Row) -> bool {
        state[x] = Some(row);
        let mut pending = vec![x];
        while let Some(new) = pending.pop() {
            let assigned: Vec<usize> = (0..self.m).filter(|&a| state[a].is_some()).collect();
            for &other in &assigned {
                for (a, b) in [(new, other), (other, new)] {
                    for g in 0..self.group.order() {
                        let (t, row) = {
                            let ra = state[a].as_ref().unwrap();
                            let rb = state[b].as_ref().unwrap();
                            self.forced(ra, rb, b, g)
                        };
                        match &state[t] {
                            Some(existing) => {
                                if *existing != row {
                                    return false;
                                }
                            }
                            None => {
                                if !self.members[t].contains(&row) {
                                    return false;
                                }
                                state[t] = Some(row);
                                pending.push(t);
                            }
                        }
                    }
                }
            }
        }
        true
    }

    fn descend(&self, state: Partial, nodes: &mut u64, found: &mut Vec<Vec<usize>>) {
        let Some(x) = state.iter().position(Option::is_none) else {
            found.push(self.assemble(&state));
            return;
        };
        for row in &self.candidates[x] {
            *nodes += 1;
            let mut next = state.clone();
            if self.assign(&mut next, x, row.clone()) {
                self.descend(next, nodes, found);
            }
        }
    }

    fn assemble(&self, state: &Partial) -> Vec<usize> {
        let (n, m) = (self.group.order(), self.m);
        let mut table = vec![0; n * m * m];
        for (x, row) in state.iter().enumerate() {
            let row = row.as_ref().unwrap();
            for g in 0..n {
                table[(g * m + x) * m..(g * m + x + 1) * m].copy_from_slice(&row[g * m..(g + 1) * m]);
            }
        }
        table
    }

    /// Every complete consistent assignment, as flat tables, with the node count.
    fn run(&self, parallel: bool) -> (Vec<Vec<usize>>, u64) {
        let root = vec![None; self.m];
        let branch = |row: &Row| {
            let mut nodes = 1;
            let mut found = Vec::new();
            let mut state = root.clone();
            if self.assign(&mut state, 0, row.clone()) {
                self.descend(state, &mut nodes, &mut found);
            }
            (found, nodes)
        };
        let parts: Vec<(Vec<Vec<usize>>, u64)> = if parallel {
            self.candidates[0].par_iter().map(branch).collect()
        } else {
            self.candidates[0].iter().map(branch).collect()
        };
        let nodes = parts.iter().map(|p| p.1).sum();
        let mut tables: Vec<Vec<usize>> = parts.into_iter().flat_map(|p| p.0).collect();
        tables.sort();
        tables.dedup();
        (tables, nodes)
    }
}

fn summarize_classes(found: &[BinaryAction], bound: usize) -> Result<(usize, usize)> {
    let mut reps: Vec<&BinaryAction> = Vec::new();
    for a in found {
        let mut known = false;
        for r in &reps {
            if are_biequimorphic_bounded(a, r, bound)?.is_some() {
                known = true;
                break;
            }
        }
        if !known {
            reps.push(a);
        }
    }
    let mut twisted: Vec<&BinaryAction> = Vec::new();
    for a in &reps {
        let mut known = false;
        for r in &twisted {
            if are_biequimorphic_twisted_bounded(a, r, bound)?.is_some() {
                known = true;
                break;
            }
        }
        if !known {
            twisted.push(a);
        }
    }
    Ok((reps.len(), twisted.len()))
}

pub fn describe_group(group: &FiniteGroup) -> String {
    let kind = if group.is_cyclic() {
        "cyclic"
    } else if group.is_abelian() {
        "abelian"
    } else {
        "non-abelian"
    };
    format!("{kind} group of order {}", group.order())
}

/// Enumerate every effective, semitransitive, distributive binary action of
/// `group` on `m` points.
pub fn search_semitransitive(
    group: &FiniteGroup,
    m: usize,
    options: SearchOptions,
) -> Result<SearchReport> {
    search_semitransitive_described(group, m, options, describe_group(group))
}

pub fn search_semitransitive_described(
    group: &FiniteGroup,
    m: usize,
    options: SearchOptions,
    description: String,
) -> Result<SearchReport> {
    if m == 0 || m > options.max_space {
        return Err(Error::Bounds(format!("space size must be in 1..={}, got {m}", options.max_space)));
    }
    if group.order() > options.max_group {
        return Err(Error::Bounds(format!(
            "group order limited to {}, got {}",
            options.max_group,
            group.order()
        )));
    }
    let start = Instant::now();
    let mut report = SearchReport {
        group_description: description,
        group: group.clone(),
        space_size: m,
        options,
        found: Vec::new(),
        fields: Vec::new(),
        count_raw: 0,
        count_up_to_biequimorphism: 0,
        count_up_to_twisted_biequimorphism: 0,
        nodes_explored: 0,
        short_circuit: None,
        elapsed: Duration::ZERO,
    };
    if m < 2 {
        report.short_circuit = Some("a qualifying action needs at least two points");
    } else if options.size_shortcut && group.order() + 1 != m {
        report.short_circuit = Some("|G| != m - 1");
    } else if options.abelian_shortcut && !group.is_abelian() {
        report.short_circuit = Some("G is not abelian");
    }
    if report.short_circuit.is_some() {
        report.elapsed = start.elapsed();
        return Ok(report);
    }

    let engine = Engine::new(group, m, RowKind::Semitransitive { regular: options.regular_rows });
    let (tables, nodes) = engine.run(options.parallel);
    report.nodes_explored = nodes;
    for table in tables {
        let action = BinaryAction::from_flat(group.clone(), m, table)?;
        if !action.is_effective() {
            continue;
        }
        if !action.is_semitransitive() || !action.is_distributive()?.holds() {
            return Err(Error::Inconsistent("search produced an unqualified action".into()));
        }
        report.found.push(action);
    }
    report.fields = report
        .found
        .iter()
        .map(|a| action_to_field(a, canonical_params(a)).map(|b| b.field))
        .collect::<Result<_>>()?;
    report.count_raw = report.found.len();
    let (plain, twisted) = summarize_classes(&report.found, options.max_space.max(BIEQUIMORPHISM_BOUND))?;
    report.count_up_to_biequimorphism = plain;
    report.count_up_to_twisted_biequimorphism = twisted;
    report.elapsed = start.elapsed();
    Ok(report)
}

/// Result of [`classify_transitive`].
#[derive(Debug, Clone)]
pub struct TransitiveReport {
    pub group: FiniteGroup,
    /// Every effective transitive distributive action on `|G|` points.
    pub actions: Vec<BinaryAction>,
    /// Biequimorphism onto the conjugate left translation, per action.
    pub witnesses: Vec<Option<Vec<usize>>>,
}

impl TransitiveReport {
    pub fn all_biequimorphic(&self) -> bool {
        self.witnesses.iter().all(Option::is_some)
    }
}

impl fmt::Display for TransitiveReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "group order: {}", self.group.order())?;
        writeln!(f, "effective transitive distributive actions: {}", self.actions.len())?;
        for (i, w) in self.witnesses.iter().enumerate() {
            match w {
                Some(map) => writeln!(f, "  action {i}: biequimorphic to conjugate left translation via {map:?}")?,
                None => writeln!(f, "  action {i}: NOT biequimorphic to conjugate left translation")?,
            }
        }
        Ok(())
    }
}

/// Largest group order accepted by [`classify_transitive`].
pub const TRANSITIVE_BOUND: usize = H2_BOUND;

/// Enumerate every effective transitive distributive action of `group` on
/// `|G|` points and compare each with the conjugate left translation.
///
/// Candidate generator images are elements of the binary transformation
/// group, chosen one row at a time.
pub fn classify_transitive(group: &FiniteGroup) -> Result<TransitiveReport> {
    let n = group.order();
    if n > TRANSITIVE_BOUND {
        return Err(Error::Bounds(format!(
            "transitive classification limited to order {TRANSITIVE_BOUND}, got {n}"
        )));
    }
    let engine = Engine::new(group, n, RowKind::Transitive);
    let (tables, _) = engine.run(false);
    let reference = crate::action::conjugate_left_translation(group);
    let mut actions = Vec::new();
    let mut witnesses = Vec::new();
    for table in tables {
        let action = BinaryAction::from_flat(group.clone(), n, table)?;
        if !action.is_effective() {
            continue;
        }
        if !action.is_transitive() || !action.is_distributive()?.holds() {
            return Err(Error::Inconsistent("classification produced an unqualified action".into()));
        }
        witnesses.push(are_biequimorphic(&action, &reference)?);
        actions.push(action);
    }
    Ok(TransitiveReport { group: group.clone(), actions, witnesses })
}

/// Whether `group` is the unit group of a finite field, decided by searching
/// for a semitransitive distributive action on `|G| + 1` points.
#[derive(Debug, Clone)]
pub struct Realization {
    pub realizable: bool,
    pub witness: Option<(BinaryAction, FiniteField)>,
    pub report: SearchReport,
}

pub fn realizable_as_mult_group(group: &FiniteGroup, options: SearchOptions) -> Result<Realization> {
    let report = search_semitransitive(group, group.order() + 1, options)?;
    let witness = report.found.first().cloned().zip(report.fields.first().cloned());
    Ok(Realization { realizable: witness.is_some(), witness, report })
}
