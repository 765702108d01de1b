#![allow(dead_code)]

use std::path::PathBuf;

use binary_gspace::action::{conjugate_left_translation, coset_action};
use binary_gspace::bgs::parse_bgs;
use binary_gspace::binop::{compose_right, enumerate_h2, identity_op, BinaryOp};
use binary_gspace::duality::field_to_action;
use binary_gspace::field::gf;
use binary_gspace::perm::all_permutations;
use binary_gspace::{BinaryAction, FiniteField, FiniteGroup};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

pub fn fixture_names() -> Vec<String> {
    let mut names: Vec<String> = std::fs::read_dir(fixture_path(""))
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .filter(|n| n.ends_with(".bgs"))
        .collect();
    names.sort();
    names
}

pub fn fixture_text(name: &str) -> String {
    std::fs::read_to_string(fixture_path(name)).unwrap()
}

pub fn act3() -> BinaryAction {
    parse_bgs(&fixture_text("act3.bgs")).unwrap().actions().next().unwrap().clone()
}

/// `GF(q)` for the prime powers used throughout the tests.
pub fn field(q: usize) -> FiniteField {
    let (p, n) = binary_gspace::field::prime_power(q).expect("prime power");
    gf(p, n).unwrap()
}

/// Every semitransitive-distributive action of `Z/n` on `m <= 4` points, found
/// by scanning all of H2(m) for a generator slice whose n-th power under
/// `compose_right` is the identity and keeping the qualifying ones. Shares no
/// code with the row-wise search engine.
pub fn cyclic_oracle(n: usize, m: usize) -> Vec<BinaryAction> {
    let group = FiniteGroup::cyclic(n).unwrap();
    let id = identity_op(m);
    let mut out = Vec::new();
    for phi in enumerate_h2(m).unwrap() {
        let mut powers: Vec<BinaryOp> = vec![id.clone()];
        for _ in 1..n {
            powers.push(compose_right(&phi, powers.last().unwrap()).unwrap());
        }
        if compose_right(&phi, powers.last().unwrap()).unwrap() != id {
            continue;
        }
        let table: Vec<usize> = powers.iter().flat_map(|p| p.as_flat().iter().copied()).collect();
        let action = BinaryAction::from_flat(group.clone(), m, table).unwrap();
        if action.is_effective() && action.is_semitransitive() && direct_distributive(&action) {
            out.push(action);
        }
    }
    out.sort_by(|a, b| a.as_flat().cmp(b.as_flat()));
    out.dedup();
    out
}

/// `g(x, h(y, z)) = h(g(x, y), g(x, z))` checked tuple by tuple.
pub fn direct_distributive(a: &BinaryAction) -> bool {
    let n = a.group().order();
    let m = a.space_size();
    for g in 0..n {
        for h in 0..n {
            for x in 0..m {
                for y in 0..m {
                    for z in 0..m {
                        if a.act(g, x, a.act(h, y, z)) != a.act(h, a.act(g, x, y), a.act(g, x, z)) {
                            return false;
                        }
                    }
                }
            }
        }
    }
    true
}

fn perm_order(p: &[usize]) -> usize {
    let mut q: Vec<usize> = p.to_vec();
    let mut k = 1;
    while q.iter().enumerate().any(|(i, &v)| i != v) {
        q = q.iter().map(|&v| p[v]).collect();
        k += 1;
    }
    k
}

/// A uniformly random binary action of `Z/n`: each row action sends the
/// generator to a random permutation whose order divides `n`.
pub fn random_cyclic_action(n: usize, m: usize, rng: &mut impl Rng) -> BinaryAction {
    let mut candidates = all_permutations(m);
    candidates.retain(|p| n % perm_order(p) == 0);
    let rows: Vec<&Vec<usize>> = (0..m).map(|_| candidates.choose(rng).unwrap()).collect();
    let mut table = vec![0; n * m * m];
    for (x, gen) in rows.iter().enumerate() {
        let mut cur: Vec<usize> = (0..m).collect();
        for g in 0..n {
            table[(g * m + x) * m..(g * m + x + 1) * m].copy_from_slice(&cur);
            cur = cur.iter().map(|&v| gen[v]).collect();
        }
    }
    BinaryAction::from_flat(FiniteGroup::cyclic(n).unwrap(), m, table).unwrap()
}

/// Every group of order at most 6, up to isomorphism.
pub fn small_groups() -> Vec<(String, FiniteGroup)> {
    let mut v: Vec<(String, FiniteGroup)> =
        (1..=6).map(|n| (format!("Z/{n}"), FiniteGroup::cyclic(n).unwrap())).collect();
    let z2 = FiniteGroup::cyclic(2).unwrap();
    v.push(("Z/2xZ/2".into(), z2.direct_product(&z2)));
    v.push(("S3".into(), FiniteGroup::symmetric(3).unwrap()));
    v
}

/// Field-derived actions for q <= 9, conjugate left translations of every
/// group of order <= 6, and coset actions of S3 and Z/4 for every normal
/// subgroup.
pub fn structured_actions() -> Vec<(String, BinaryAction)> {
    let mut v = Vec::new();
    for q in [2, 3, 4, 5, 7, 8, 9] {
        v.push((format!("field GF({q})"), field_to_action(&field(q))));
    }
    for (name, g) in small_groups() {
        v.push((format!("conjugate left translation {name}"), conjugate_left_translation(&g)));
    }
    for (name, g) in [("S3", FiniteGroup::symmetric(3).unwrap()), ("Z/4", FiniteGroup::cyclic(4).unwrap())] {
        for h in g.normal_subgroups().unwrap() {
            v.push((format!("coset action {name}/{:?}", h.members()), coset_action(&g, &h).unwrap()));
        }
    }
    v.push(("act3 fixture".into(), act3()));
    v
}
