//! Derived group elements of a semitransitive distributive action and the
//! identities they satisfy.
//!
//! For `g != e` there is a unique `bar(g)` with `g(bar(g)(x, y), x) = y`.
//! From it, `hat(g) = bar(g)^-1` satisfies `g(x, y) = hat(g)(y, x)` and
//! `tilde(g) = bar(bar(g))^-1` satisfies `g(tilde(g)(y, x), x) = y`. In field
//! terms, if `g` acts as `(1 - p) x + p y` then `bar(g)` acts with parameter
//! `(1 - p)^-1`.

use std::fmt;

use crate::action::BinaryAction;
use crate::error::{Error, Result};
use crate::group::is_permutation;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DerivedElements {
    pub bar: usize,
    pub hat: usize,
    pub tilde: usize,
}

/// Locate `bar(g)` at the pair `(0, 1)` and verify it at every pair.
fn find_bar(alpha: &BinaryAction, g: usize) -> Result<usize> {
    if g == 0 {
        return Err(Error::DegenerateElement);
    }
    let (x0, y0) = (0, 1);
    let mut hits = alpha.group().elements().filter(|&t| alpha.act(g, alpha.act(t, x0, y0), x0) == y0);
    let bar = hits.next().ok_or(Error::NotFound(g))?;
    if hits.next().is_some() {
        return Err(Error::NotUnique(g));
    }
    let m = alpha.space_size();
    for x in 0..m {
        for y in 0..m {
            if alpha.act(g, alpha.act(bar, x, y), x) != y {
                return Err(Error::Inconsistent(format!(
                    "bar({g}) = {bar} found at (0,1) fails at ({x},{y})"
                )));
            }
        }
    }
    Ok(bar)
}

/// Compute `bar`, `hat` and `tilde` for a non-identity element.
///
/// The action must be semitransitive, distributive and effective with at
/// least two points.
pub fn derived_elements(alpha: &BinaryAction, g: usize) -> Result<DerivedElements> {
    alpha.require_qualifying()?;
    if g >= alpha.group().order() {
        return Err(Error::Shape(format!("group element {g} out of range")));
    }
    derived_elements_unchecked(alpha, g)
}

pub(crate) fn derived_elements_unchecked(alpha: &BinaryAction, g: usize) -> Result<DerivedElements> {
    if alpha.space_size() < 2 {
        return Err(Error::DegenerateElement);
    }
    let group = alpha.group();
    let bar = find_bar(alpha, g)?;
    let hat = group.inv(bar);
    let tilde = group.inv(find_bar(alpha, bar)?);
    let m = alpha.space_size();
    for x in 0..m {
        for y in 0..m {
            if alpha.act(g, alpha.act(tilde, y, x), x) != y {
                return Err(Error::Inconsistent(format!(
                    "tilde({g}) = {tilde} fails at ({x},{y})"
                )));
            }
        }
    }
    Ok(DerivedElements { bar, hat, tilde })
}

/// Every non-identity slice has all rows and all columns bijective.
pub fn quasigroup_check(alpha: &BinaryAction, g: usize) -> bool {
    let m = alpha.space_size();
    (0..m).all(|x| is_permutation((0..m).map(|y| alpha.act(g, x, y)), m))
        && (0..m).all(|y| is_permutation((0..m).map(|x| alpha.act(g, x, y)), m))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityResult {
    pub name: &'static str,
    pub formula: &'static str,
    pub tuples: u64,
    /// `(g, h, x, y, z, t)` with unused coordinates set to 0.
    pub counterexample: Option<[usize; 6]>,
}

impl IdentityResult {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaReport {
    pub results: Vec<IdentityResult>,
}

impl LemmaReport {
    pub fn passed(&self) -> bool {
        self.results.iter().all(IdentityResult::passed)
    }
}

impl fmt::Display for LemmaReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.results {
            match r.counterexample {
                None => writeln!(f, "  {:<22} {:<36} {} tuples, ok", r.name, r.formula, r.tuples)?,
                Some(c) => writeln!(
                    f,
                    "  {:<22} {:<36} {} tuples, FAILED at g={} h={} x={} y={} z={} t={}",
                    r.name, r.formula, r.tuples, c[0], c[1], c[2], c[3], c[4], c[5]
                )?,
            }
        }
        Ok(())
    }
}

struct Tally {
    tuples: u64,
    counterexample: Option<[usize; 6]>,
}

impl Tally {
    fn new() -> Self {
        Tally { tuples: 0, counterexample: None }
    }

    fn record(&mut self, ok: bool, tuple: [usize; 6]) {
        self.tuples += 1;
        if !ok && self.counterexample.is_none() {
            self.counterexample = Some(tuple);
        }
    }

    fn finish(self, name: &'static str, formula: &'static str) -> IdentityResult {
        IdentityResult { name, formula, tuples: self.tuples, counterexample: self.counterexample }
    }
}

/// Check the bar, hat and tilde identities (for `g != e`), right
/// distributivity, the interchange law, and its `y = z` special case over
/// every admissible tuple.
pub fn verify_lemma_suite(alpha: &BinaryAction) -> Result<LemmaReport> {
    alpha.require_qualifying()?;
    let n = alpha.group().order();
    let m = alpha.space_size();
    let a = |g: usize, x: usize, y: usize| alpha.act(g, x, y);

    let derived: Vec<DerivedElements> = if m >= 2 {
        (1..n).map(|g| derived_elements_unchecked(alpha, g)).collect::<Result<_>>()?
    } else {
        Vec::new()
    };

    let (mut bar, mut hat, mut tilde) = (Tally::new(), Tally::new(), Tally::new());
    for (d, g) in derived.iter().zip(1..) {
        for x in 0..m {
            for y in 0..m {
                let t = [g, 0, x, y, 0, 0];
                bar.record(a(g, a(d.bar, x, y), x) == y, t);
                hat.record(a(g, x, y) == a(d.hat, y, x), t);
                tilde.record(a(g, a(d.tilde, y, x), x) == y, t);
            }
        }
    }

    let (mut right, mut interchange, mut diagonal) = (Tally::new(), Tally::new(), Tally::new());
    for g in 0..n {
        for h in 0..n {
            for x in 0..m {
                for y in 0..m {
                    for z in 0..m {
                        right.record(
                            a(g, a(h, x, y), z) == a(h, a(g, x, z), a(g, y, z)),
                            [g, h, x, y, z, 0],
                        );
                        for t in 0..m {
                            interchange.record(
                                a(g, a(h, x, y), a(h, z, t)) == a(h, a(g, x, z), a(g, y, t)),
                                [g, h, x, y, z, t],
                            );
                        }
                        // z plays the role of t when y = z
                        diagonal.record(
                            a(g, a(h, x, y), a(h, y, z)) == a(h, a(g, x, y), a(g, y, z)),
                            [g, h, x, y, y, z],
                        );
                    }
                }
            }
        }
    }

    Ok(LemmaReport {
        results: vec![
            bar.finish("bar", "g(bar(g)(x,y),x) = y"),
            hat.finish("hat", "g(x,y) = bar(g)^-1(y,x)"),
            tilde.finish("tilde", "g(tilde(g)(y,x),x) = y"),
            right.finish("right distributivity", "g(h(x,y),z) = h(g(x,z),g(y,z))"),
            interchange.finish("interchange", "g(h(x,y),h(z,t)) = h(g(x,z),g(y,t))"),
            diagonal.finish("interchange (y = z)", "g(h(x,y),h(y,t)) = h(g(x,y),g(y,t))"),
        ],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::conjugate_left_translation;
    use crate::duality::field_to_action;
    use crate::field::gf;
    use crate::group::FiniteGroup;

    fn act3() -> BinaryAction {
        let e = vec![vec![0, 1, 2]; 3];
        let g = vec![vec![0, 2, 1], vec![2, 1, 0], vec![1, 0, 2]];
        BinaryAction::new(FiniteGroup::cyclic(2).unwrap(), 3, &[e, g]).unwrap()
    }

    #[test]
    fn act3_bar_is_itself() {
        let d = derived_elements(&act3(), 1).unwrap();
        assert_eq!(d.bar, 1);
        assert_eq!(d.hat, 1);
        assert_eq!(derived_elements(&act3(), 0), Err(Error::DegenerateElement));
    }

    #[test]
    fn gf5_bar_matches_field_formula() {
        // group index k <-> field element k + 1, so p = 3 is index 2
        let alpha = field_to_action(&gf(5, 1).unwrap());
        let d = derived_elements(&alpha, 2).unwrap();
        assert_eq!(d.bar + 1, 2);
    }

    #[test]
    fn bar_is_one_minus_p_inverse_on_field_actions() {
        for (p, n) in [(3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2)] {
            let f = gf(p, n).unwrap();
            let alpha = field_to_action(&f);
            for g in 1..alpha.group().order() {
                let param = g + 1;
                let q = f.inv(f.sub(1, param)).unwrap();
                let d = derived_elements(&alpha, g).unwrap();
                assert_eq!(d.bar + 1, q);
                let m = alpha.space_size();
                for x in 0..m {
                    for y in 0..m {
                        assert_eq!(alpha.act(g, x, y), alpha.act(d.hat, y, x));
                    }
                }
                // tilde = bar(bar(g))^-1
                let bb = derived_elements(&alpha, d.bar).unwrap().bar;
                assert_eq!(d.tilde, alpha.group().inv(bb));
            }
        }
    }

    #[test]
    fn bar_is_unique_by_full_scan() {
        let alpha = field_to_action(&gf(7, 1).unwrap());
        let m = alpha.space_size();
        for g in 1..alpha.group().order() {
            let solutions = alpha
                .group()
                .elements()
                .filter(|&t| {
                    (0..m).all(|x| (0..m).all(|y| alpha.act(g, alpha.act(t, x, y), x) == y))
                })
                .count();
            assert_eq!(solutions, 1);
        }
    }

    #[test]
    fn lemma_suite_passes_on_field_actions() {
        let report = verify_lemma_suite(&act3()).unwrap();
        assert!(report.passed());
        assert_eq!(report.results[0].tuples, 9);
        assert_eq!(report.results[4].tuples, 4 * 81);
        let report = verify_lemma_suite(&field_to_action(&gf(2, 2).unwrap())).unwrap();
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn lemma_suite_rejects_non_qualifying_actions() {
        let c = conjugate_left_translation(&FiniteGroup::cyclic(3).unwrap());
        assert!(matches!(verify_lemma_suite(&c), Err(Error::PreconditionFailed(_))));
    }

    #[test]
    fn quasigroup_slices() {
        assert!(quasigroup_check(&act3(), 1));
        assert!(!quasigroup_check(&act3(), 0));
        let alpha = field_to_action(&gf(5, 1).unwrap());
        assert!((1..4).all(|g| quasigroup_check(&alpha, g)));
    }
}
