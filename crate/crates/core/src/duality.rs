//! Passing between fields and semitransitive distributive binary actions.
//!
//! A field `F` gives its unit group the action `p(a, b) = (1 - p) a + p b`.
//! Conversely, a qualifying action with two chosen points `x0 != x1` and a
//! non-identity group element `s` yields a field on the space:
//!
//! * `i(g) = g(x0, x1)` is a bijection from the group onto `X \ {x0}`;
//! * `x y = g_x(x0, y)` where `g_x = i^-1(x)`, and `x0` absorbs;
//! * `x + y = s(tilde(s)(x, x0), s^-1(x0, y))`.
//!
//! Built fields are renumbered so that `x0 -> 0` and `i(g) -> g + 1`. With
//! that convention the unit group of the built field is the action's group
//! with identical Cayley table.

use crate::action::BinaryAction;
use crate::error::{Error, Result};
use crate::field::{fields_isomorphic, gf, multiplicative_group, FieldIso, FiniteField};
use crate::identities::derived_elements_unchecked;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldParams {
    /// Point that becomes the field's zero.
    pub x0: usize,
    /// Point that becomes the field's one.
    pub x1: usize,
    /// Group element driving the addition.
    pub s: usize,
}

impl FieldParams {
    pub fn new(x0: usize, x1: usize, s: usize) -> Self {
        FieldParams { x0, x1, s }
    }
}

/// A field built from an action, with the maps tying it back to the action.
#[derive(Debug, Clone)]
pub struct BuiltField {
    pub field: FiniteField,
    /// Group element -> field element, `g -> i(g)` after renumbering.
    pub embedding: Vec<usize>,
    /// Space point -> field element.
    pub relabel: Vec<usize>,
}

impl BuiltField {
    /// Field element -> space point.
    pub fn points(&self) -> Vec<usize> {
        crate::perm::inverse(&self.relabel)
    }
}

/// The action `p(a, b) = (1 - p) a + p b` of the unit group on the field.
///
/// Group index `k` stands for the field element `p = k + 1`.
pub fn field_to_action(field: &FiniteField) -> BinaryAction {
    let (group, embedding) = multiplicative_group(field);
    let q = field.order();
    let mut table = Vec::with_capacity(group.order() * q * q);
    for &p in &embedding {
        let one_minus_p = field.sub(1, p);
        for a in 0..q {
            let left = field.mul(one_minus_p, a);
            for b in 0..q {
                table.push(field.add(left, field.mul(p, b)));
            }
        }
    }
    BinaryAction::from_flat_unchecked(group, q, table)
}

fn check_params(alpha: &BinaryAction, params: FieldParams) -> Result<()> {
    let m = alpha.space_size();
    if params.x0 >= m || params.x1 >= m || params.s >= alpha.group().order() {
        return Err(Error::Shape(format!("parameters {params:?} out of range")));
    }
    if params.x0 == params.x1 {
        return Err(Error::DegenerateParams(format!(
            "x0 and x1 must differ, both are {}",
            params.x0
        )));
    }
    Ok(())
}

/// Construct the field determined by a qualifying action and parameters.
pub fn action_to_field(alpha: &BinaryAction, params: FieldParams) -> Result<BuiltField> {
    check_params(alpha, params)?;
    alpha.require_qualifying()?;
    let group = alpha.group();
    let n = group.order();
    let m = alpha.space_size();
    let FieldParams { x0, x1, s } = params;

    if n == 1 {
        // two points, and GF(2) is the only field on them
        let mut relabel = vec![0; m];
        relabel[x1] = 1;
        return Ok(BuiltField { field: gf(2, 1)?, embedding: vec![1], relabel });
    }
    if s == group.identity() {
        return Err(Error::DegenerateParams(
            "s must not be the group identity (its tilde element does not exist)".into(),
        ));
    }

    let mut relabel = vec![usize::MAX; m];
    relabel[x0] = 0;
    for g in group.elements() {
        let point = alpha.act(g, x0, x1);
        if point == x0 || relabel[point] != usize::MAX {
            return Err(Error::Inconsistent(format!("i(g) = g(x0, x1) is not injective at g={g}")));
        }
        relabel[point] = g + 1;
    }
    let points = crate::perm::inverse(&relabel);

    let tilde = derived_elements_unchecked(alpha, s)?.tilde;
    let s_inv = group.inv(s);

    let q = m;
    let mut add = vec![vec![0; q]; q];
    let mut mul = vec![vec![0; q]; q];
    for a in 0..q {
        for b in 0..q {
            let (pa, pb) = (points[a], points[b]);
            if a != 0 && b != 0 {
                mul[a][b] = relabel[alpha.act(a - 1, x0, pb)];
            }
            let sum = alpha.act(s, alpha.act(tilde, pa, x0), alpha.act(s_inv, x0, pb));
            add[a][b] = relabel[sum];
        }
    }
    let field = FiniteField::from_tables(&add, &mul)
        .map_err(|e| Error::Inconsistent(format!("constructed tables are not a field: {e}")))?;

    let (units, _) = multiplicative_group(&field);
    if &units != group {
        return Err(Error::Inconsistent("unit group differs from the acting group".into()));
    }
    for g in group.elements() {
        let p = g + 1;
        let one_minus_p = field.sub(1, p);
        for x in 0..m {
            for y in 0..m {
                let expected =
                    field.add(field.mul(one_minus_p, relabel[x]), field.mul(p, relabel[y]));
                if relabel[alpha.act(g, x, y)] != expected {
                    return Err(Error::Inconsistent(format!(
                        "g={g} does not act as (1-p)x + py at ({x},{y})"
                    )));
                }
            }
        }
    }
    Ok(BuiltField { field, embedding: (1..=n).collect(), relabel })
}

/// Every admissible parameter triple in lexicographic `(x0, x1, s)` order.
/// For the one-element group the only `s` is the identity.
pub fn admissible_params(alpha: &BinaryAction) -> Vec<FieldParams> {
    let m = alpha.space_size();
    let n = alpha.group().order();
    let s_range = if n == 1 { 0..1 } else { 1..n };
    let mut out = Vec::new();
    for x0 in 0..m {
        for x1 in (0..m).filter(|&x1| x1 != x0) {
            for s in s_range.clone() {
                out.push(FieldParams { x0, x1, s });
            }
        }
    }
    out
}

/// `x0 = 0`, `x1 = 1`, and `s` the non-identity element whose image
/// `i(s) = s(0, 1)` has the smallest index.
pub fn canonical_params(alpha: &BinaryAction) -> FieldParams {
    let s = (1..alpha.group().order()).min_by_key(|&g| alpha.act(g, 0, 1)).unwrap_or(0);
    FieldParams { x0: 0, x1: 1, s }
}

/// The isomorphism `F(params) -> F(params')` given by the affine map
/// `φ(p) = p (1' - 0') + 0'`, computed in `F(params)`.
pub fn parameter_iso(
    alpha: &BinaryAction,
    params: FieldParams,
    params_other: FieldParams,
) -> Result<FieldIso> {
    let f = action_to_field(alpha, params)?;
    let g = action_to_field(alpha, params_other)?;
    let field = &f.field;
    let q = field.order();
    let points_f = f.points();
    let points_g = g.points();

    // zero and one of F' written as elements of F
    let zero2 = f.relabel[params_other.x0];
    let one2 = f.relabel[params_other.x1];
    let unit = field.sub(one2, zero2);
    let phi: Vec<usize> = (0..q).map(|p| field.add(field.mul(p, unit), zero2)).collect();

    // the operations of F' transported to F's labels
    let to_f = |e: usize| f.relabel[points_g[e]];
    let to_g = |e: usize| g.relabel[points_f[e]];
    let oplus = |a: usize, b: usize| to_f(g.field.add(to_g(a), to_g(b)));
    let circ = |a: usize, b: usize| to_f(g.field.mul(to_g(a), to_g(b)));
    for x in 0..q {
        for y in 0..q {
            if oplus(x, y) != field.sub(field.add(x, y), zero2) {
                return Err(Error::Inconsistent(format!("x (+)' y != x + y - 0' at ({x},{y})")));
            }
            let rhs = field.add(field.mul(x, field.sub(y, zero2)), zero2);
            if circ(phi[x], y) != rhs {
                return Err(Error::Inconsistent(format!(
                    "phi(x) (*)' y != x (y - 0') + 0' at ({x},{y})"
                )));
            }
        }
    }

    let iso = FieldIso { map: phi.iter().map(|&e| to_g(e)).collect() };
    if !iso.verify(field, &g.field) {
        return Err(Error::Inconsistent("affine map is not a field isomorphism".into()));
    }
    Ok(iso)
}

/// Field -> action -> field with canonical parameters; the result must be
/// isomorphic to the input.
pub fn roundtrip_field(field: &FiniteField) -> Result<FieldIso> {
    let alpha = field_to_action(field);
    let built = action_to_field(&alpha, canonical_params(&alpha))?;
    fields_isomorphic(field, &built.field)
        .ok_or_else(|| Error::Inconsistent("round trip produced a non-isomorphic field".into()))
}

/// Action -> field -> action; true when the rebuilt table equals the input
/// after relabeling the space by the field renumbering.
pub fn roundtrip_action(alpha: &BinaryAction, params: FieldParams) -> Result<bool> {
    let built = action_to_field(alpha, params)?;
    let beta = field_to_action(&built.field);
    // group index k of beta is the field element k + 1
    let group_of_beta: Vec<usize> = built.embedding.iter().map(|&e| e - 1).collect();
    if beta.group() != alpha.group() {
        return Ok(false);
    }
    let m = alpha.space_size();
    let r = &built.relabel;
    Ok(alpha.group().elements().all(|g| {
        let bg = group_of_beta[g];
        (0..m).all(|x| (0..m).all(|y| beta.act(bg, r[x], r[y]) == r[alpha.act(g, x, y)]))
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;

    fn act3() -> BinaryAction {
        let e = vec![vec![0, 1, 2]; 3];
        let g = vec![vec![0, 2, 1], vec![2, 1, 0], vec![1, 0, 2]];
        BinaryAction::new(FiniteGroup::cyclic(2).unwrap(), 3, &[e, g]).unwrap()
    }

    #[test]
    fn field_to_action_examples() {
        let a2 = field_to_action(&gf(2, 1).unwrap());
        assert_eq!(a2.group().order(), 1);
        assert_eq!(a2, BinaryAction::trivial(FiniteGroup::cyclic(1).unwrap(), 2));
        assert!(a2.is_semitransitive());

        assert_eq!(field_to_action(&gf(3, 1).unwrap()), act3());

        let a4 = field_to_action(&gf(2, 2).unwrap());
        // group index 1 is the field element t = 2
        assert_eq!(a4.act(1, 0, 1), 2);
    }

    #[test]
    fn field_actions_qualify() {
        for q in 2..=64 {
            let Some((p, n)) = crate::field::prime_power(q) else { continue };
            let alpha = field_to_action(&gf(p, n).unwrap());
            assert!(alpha.is_semitransitive(), "q={q}");
            assert!(alpha.distributive(), "q={q}");
            assert!(alpha.is_effective(), "q={q}");
        }
    }

    #[test]
    fn act3_builds_gf3() {
        let built = action_to_field(&act3(), FieldParams::new(0, 1, 1)).unwrap();
        assert_eq!(built.field, gf(3, 1).unwrap());
        assert_eq!(built.relabel, vec![0, 1, 2]);
    }

    #[test]
    fn two_point_carrier_is_special_cased() {
        let alpha = field_to_action(&gf(2, 1).unwrap());
        let built = action_to_field(&alpha, FieldParams::new(0, 1, 0)).unwrap();
        assert_eq!(built.field, gf(2, 1).unwrap());
        let built = action_to_field(&alpha, FieldParams::new(1, 0, 0)).unwrap();
        assert_eq!(built.relabel, vec![1, 0]);
    }

    #[test]
    fn degenerate_parameters() {
        assert!(matches!(
            action_to_field(&act3(), FieldParams::new(0, 0, 1)),
            Err(Error::DegenerateParams(_))
        ));
        assert!(matches!(
            action_to_field(&act3(), FieldParams::new(0, 1, 0)),
            Err(Error::DegenerateParams(_))
        ));
        assert!(action_to_field(&act3(), FieldParams::new(0, 3, 1)).is_err());
    }

    #[test]
    fn non_qualifying_input_is_rejected() {
        let c = crate::action::conjugate_left_translation(&FiniteGroup::cyclic(3).unwrap());
        assert!(matches!(
            action_to_field(&c, FieldParams::new(0, 1, 1)),
            Err(Error::PreconditionFailed(_))
        ));
    }

    #[test]
    fn parameter_iso_examples() {
        let alpha = act3();
        let p = FieldParams::new(0, 1, 1);
        assert!(parameter_iso(&alpha, p, p).unwrap().is_identity());
        let f = action_to_field(&alpha, p).unwrap();
        let g = action_to_field(&alpha, FieldParams::new(1, 2, 1)).unwrap();
        let iso = parameter_iso(&alpha, p, FieldParams::new(1, 2, 1)).unwrap();
        assert!(iso.verify(&f.field, &g.field));
    }

    #[test]
    fn gf4_parameter_sweep() {
        let alpha = field_to_action(&gf(2, 2).unwrap());
        let all = admissible_params(&alpha);
        assert_eq!(all.len(), 24);
        for &a in &all {
            for &b in &all {
                parameter_iso(&alpha, a, b).unwrap();
            }
        }
    }

    #[test]
    fn roundtrips() {
        let iso = roundtrip_field(&gf(3, 1).unwrap()).unwrap();
        assert!(iso.is_identity());
        assert!(roundtrip_field(&gf(2, 1).unwrap()).unwrap().is_identity());
        for (p, n) in [(2, 2), (5, 1), (7, 1), (2, 3), (3, 2)] {
            roundtrip_field(&gf(p, n).unwrap()).unwrap();
        }
        assert!(roundtrip_action(&act3(), FieldParams::new(0, 1, 1)).unwrap());
        let a5 = field_to_action(&gf(5, 1).unwrap());
        assert!(roundtrip_action(&a5, FieldParams::new(0, 1, 1)).unwrap());
        assert!(roundtrip_action(&a5, FieldParams::new(0, 1, 3)).unwrap());
    }

    #[test]
    fn canonical_params_for_field_actions() {
        let a = field_to_action(&gf(7, 1).unwrap());
        assert_eq!(canonical_params(&a), FieldParams::new(0, 1, 1));
        let a = field_to_action(&gf(2, 1).unwrap());
        assert_eq!(canonical_params(&a), FieldParams::new(0, 1, 0));
    }

    #[test]
    fn biequimorphic_actions_give_isomorphic_fields() {
        let alpha = field_to_action(&gf(5, 1).unwrap());
        let beta = alpha.relabel_space(&[3, 0, 4, 2, 1]);
        assert!(crate::action::are_biequimorphic(&alpha, &beta).unwrap().is_some());
        let f = action_to_field(&alpha, canonical_params(&alpha)).unwrap();
        let g = action_to_field(&beta, canonical_params(&beta)).unwrap();
        assert!(fields_isomorphic(&f.field, &g.field).is_some());
    }
}
