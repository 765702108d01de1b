//! Binary operations on a finite set and the monoid they form.
//!
//! On a finite discrete space every operation is continuous and a
//! homeomorphism is just a bijection, so the monoid of continuous binary
//! operations is the set of all `m x m` tables. The right product is
//! `(φψ)(x, y) = φ(x, ψ(x, y))` with unit `e(x, y) = y`; its invertible
//! elements are exactly the tables whose rows are all permutations.

use std::fmt;

use crate::error::{Error, Result};
use crate::group::is_permutation;
use crate::perm;

/// Largest space size accepted by [`enumerate_h2`].
pub const H2_BOUND: usize = 4;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinaryOp {
    size: usize,
    table: Vec<usize>,
}

impl BinaryOp {
    pub fn from_rows(rows: &[Vec<usize>]) -> Result<Self> {
        let m = rows.len();
        if m == 0 {
            return Err(Error::Shape("binary operation on an empty space".into()));
        }
        crate::group::check_square(rows)?;
        Ok(BinaryOp { size: m, table: rows.concat() })
    }

    pub(crate) fn from_flat(size: usize, table: Vec<usize>) -> Self {
        debug_assert_eq!(table.len(), size * size);
        BinaryOp { size, table }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> usize {
        self.table[x * self.size + y]
    }

    /// The row `f_a = f(a, ·)`.
    pub fn row(&self, a: usize) -> &[usize] {
        &self.table[a * self.size..(a + 1) * self.size]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.size).map(<[usize]>::to_vec).collect()
    }

    pub fn as_flat(&self) -> &[usize] {
        &self.table
    }
}

impl fmt::Debug for BinaryOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinaryOp{:?}", self.rows())
    }
}

/// Unit of the right product: `e(x, y) = y`.
pub fn identity_op(m: usize) -> BinaryOp {
    BinaryOp::from_flat(m, (0..m * m).map(|i| i % m).collect())
}

/// Unit of the left product: `p(x, y) = x`.
pub fn first_projection(m: usize) -> BinaryOp {
    BinaryOp::from_flat(m, (0..m * m).map(|i| i / m).collect())
}

fn same_size(a: &BinaryOp, b: &BinaryOp) -> Result<usize> {
    if a.size != b.size {
        return Err(Error::SizeMismatch { left: a.size, right: b.size });
    }
    Ok(a.size)
}

/// Right product `(φψ)(x, y) = φ(x, ψ(x, y))`.
pub fn compose_right(phi: &BinaryOp, psi: &BinaryOp) -> Result<BinaryOp> {
    let m = same_size(phi, psi)?;
    let table = (0..m * m).map(|i| phi.get(i / m, psi.table[i])).collect();
    Ok(BinaryOp::from_flat(m, table))
}

/// Left product `(φψ)(x, y) = φ(ψ(x, y), y)`.
pub fn compose_left(phi: &BinaryOp, psi: &BinaryOp) -> Result<BinaryOp> {
    let m = same_size(phi, psi)?;
    let table = (0..m * m).map(|i| phi.get(psi.table[i], i % m)).collect();
    Ok(BinaryOp::from_flat(m, table))
}

/// Argument swap `φ*(x, y) = φ(y, x)`, an anti-isomorphism carrying right
/// products to left products.
pub fn star(phi: &BinaryOp) -> BinaryOp {
    let m = phi.size;
    BinaryOp::from_flat(m, (0..m * m).map(|i| phi.get(i % m, i / m)).collect())
}

pub fn is_left_quasigroup(f: &BinaryOp) -> bool {
    (0..f.size).all(|a| is_permutation(f.row(a).iter().copied(), f.size))
}

/// Inverse in the right-product monoid: invert each row as a permutation.
pub fn invert(f: &BinaryOp) -> Result<BinaryOp> {
    let m = f.size;
    let mut table = Vec::with_capacity(m * m);
    for a in 0..m {
        let row = f.row(a);
        if !is_permutation(row.iter().copied(), m) {
            return Err(Error::NotInvertible { row: a });
        }
        table.extend(perm::inverse(row));
    }
    Ok(BinaryOp::from_flat(m, table))
}

/// Embed a unary permutation `h` as the operation `(x, y) -> h(y)`.
pub fn embed_unary(h: &[usize]) -> Result<BinaryOp> {
    let m = h.len();
    if m == 0 || !is_permutation(h.iter().copied(), m) {
        return Err(Error::NotPermutation(h.to_vec()));
    }
    Ok(BinaryOp::from_flat(m, h.repeat(m)))
}

/// Iterator over the group of invertible binary operations on `m` points, in
/// lexicographic table order. Yields `(m!)^m` operations.
pub fn enumerate_h2(m: usize) -> Result<H2Iter> {
    if m == 0 || m > H2_BOUND {
        return Err(Error::Bounds(format!("enumerate_h2 needs 1 <= m <= {H2_BOUND}, got {m}")));
    }
    Ok(H2Iter { perms: perm::all_permutations(m), digits: Some(vec![0; m]) })
}

pub struct H2Iter {
    perms: Vec<Vec<usize>>,
    digits: Option<Vec<usize>>,
}

impl Iterator for H2Iter {
    type Item = BinaryOp;

    fn next(&mut self) -> Option<BinaryOp> {
        let digits = self.digits.as_mut()?;
        let m = digits.len();
        let table: Vec<usize> = digits.iter().flat_map(|&d| self.perms[d].iter().copied()).collect();
        // odometer, row 0 most significant
        let mut pos = m;
        loop {
            if pos == 0 {
                self.digits = None;
                break;
            }
            pos -= 1;
            digits[pos] += 1;
            if digits[pos] < self.perms.len() {
                break;
            }
            digits[pos] = 0;
        }
        Some(BinaryOp::from_flat(m, table))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn op(rows: &[&[usize]]) -> BinaryOp {
        BinaryOp::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn all_ops(m: usize) -> Vec<BinaryOp> {
        let cells = m * m;
        (0..m.pow(cells as u32))
            .map(|mut code| {
                let mut table = vec![0; cells];
                for cell in table.iter_mut().rev() {
                    *cell = code % m;
                    code /= m;
                }
                BinaryOp::from_flat(m, table)
            })
            .collect()
    }

    fn arb_op(m: usize) -> impl Strategy<Value = BinaryOp> {
        proptest::collection::vec(0..m, m * m).prop_map(move |t| BinaryOp::from_flat(m, t))
    }

    #[test]
    fn identity_tables() {
        assert_eq!(identity_op(2).rows(), vec![vec![0, 1], vec![0, 1]]);
        assert_eq!(identity_op(3).rows(), vec![vec![0, 1, 2]; 3]);
    }

    #[test]
    fn right_product_examples() {
        let phi = op(&[&[1, 0], &[0, 1]]);
        assert_eq!(compose_right(&phi, &identity_op(2)).unwrap(), phi);
        // φ(0, φ(0, y)) swaps twice; row 1 is already the identity
        assert_eq!(compose_right(&phi, &phi).unwrap(), identity_op(2));
        assert!(compose_right(&phi, &identity_op(3)).is_err());
    }

    #[test]
    fn left_product_examples() {
        for f in all_ops(2) {
            assert_eq!(compose_left(&f, &first_projection(2)).unwrap(), f);
            assert_eq!(compose_left(&identity_op(2), &f).unwrap(), identity_op(2));
        }
        let only = identity_op(1);
        assert_eq!(compose_left(&only, &only).unwrap(), only);
        assert_eq!(compose_right(&only, &only).unwrap(), only);
    }

    #[test]
    fn star_examples() {
        assert_eq!(star(&identity_op(2)).rows(), vec![vec![0, 0], vec![1, 1]]);
    }

    #[test]
    fn star_is_anti_isomorphism_exhaustive_m2() {
        let ops = all_ops(2);
        assert_eq!(ops.len(), 16);
        for phi in &ops {
            for psi in &ops {
                let lhs = star(&compose_right(phi, psi).unwrap());
                let rhs = compose_left(&star(phi), &star(psi)).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn monoid_laws_exhaustive_m2() {
        let ops = all_ops(2);
        let (e, p) = (identity_op(2), first_projection(2));
        for a in &ops {
            assert_eq!(compose_right(&e, a).unwrap(), *a);
            assert_eq!(compose_right(a, &e).unwrap(), *a);
            assert_eq!(compose_left(&p, a).unwrap(), *a);
            assert_eq!(compose_left(a, &p).unwrap(), *a);
            for b in &ops {
                for c in &ops {
                    let ab = compose_right(a, b).unwrap();
                    let bc = compose_right(b, c).unwrap();
                    assert_eq!(compose_right(&ab, c).unwrap(), compose_right(a, &bc).unwrap());
                    let ab = compose_left(a, b).unwrap();
                    let bc = compose_left(b, c).unwrap();
                    assert_eq!(compose_left(&ab, c).unwrap(), compose_left(a, &bc).unwrap());
                }
            }
        }
    }

    #[test]
    fn associativity_spot_check_by_hand_evaluation() {
        let a = op(&[&[2, 0, 1], &[1, 1, 0], &[0, 2, 2]]);
        let b = op(&[&[1, 2, 2], &[0, 0, 1], &[2, 1, 0]]);
        let c = op(&[&[0, 0, 1], &[2, 1, 2], &[1, 0, 0]]);
        let lhs = compose_right(&compose_right(&a, &b).unwrap(), &c).unwrap();
        let rhs = compose_right(&a, &compose_right(&b, &c).unwrap()).unwrap();
        for x in 0..3 {
            for y in 0..3 {
                let expected = a.get(x, b.get(x, c.get(x, y)));
                assert_eq!(lhs.get(x, y), expected);
                assert_eq!(rhs.get(x, y), expected);
            }
        }
    }

    #[test]
    fn inversion_examples() {
        assert_eq!(invert(&identity_op(3)).unwrap(), identity_op(3));
        let f = op(&[&[1, 0], &[1, 0]]);
        assert_eq!(invert(&f).unwrap(), f);
        assert_eq!(invert(&op(&[&[0, 0], &[0, 1]])), Err(Error::NotInvertible { row: 0 }));
    }

    #[test]
    fn left_quasigroup_matches_invertibility() {
        assert!(is_left_quasigroup(&identity_op(3)));
        assert!(!is_left_quasigroup(&op(&[&[0, 0], &[0, 1]])));
        for m in 1..=2 {
            for f in all_ops(m) {
                assert_eq!(is_left_quasigroup(&f), invert(&f).is_ok());
            }
        }
        // invertible exactly when every row is bijective, m = 3
        for f in all_ops(3) {
            let rows_bijective =
                (0..3).all(|a| is_permutation(f.row(a).iter().copied(), 3));
            match invert(&f) {
                Ok(g) => {
                    assert!(rows_bijective);
                    assert_eq!(compose_right(&f, &g).unwrap(), identity_op(3));
                    assert_eq!(compose_right(&g, &f).unwrap(), identity_op(3));
                }
                Err(_) => assert!(!rows_bijective),
            }
        }
    }

    #[test]
    fn h2_sizes_and_order() {
        assert_eq!(enumerate_h2(1).unwrap().count(), 1);
        assert_eq!(enumerate_h2(2).unwrap().count(), 4);
        let h3: Vec<BinaryOp> = enumerate_h2(3).unwrap().collect();
        assert_eq!(h3.len(), 216);
        assert!(h3.windows(2).all(|w| w[0].as_flat() < w[1].as_flat()));
        assert!(h3.iter().all(is_left_quasigroup));
        assert!(enumerate_h2(5).is_err());
    }

    #[test]
    fn h2_group_laws_m3() {
        let h3: Vec<BinaryOp> = enumerate_h2(3).unwrap().collect();
        let set: std::collections::HashSet<&BinaryOp> = h3.iter().collect();
        for f in &h3 {
            let g = invert(f).unwrap();
            assert!(set.contains(&g));
            assert_eq!(compose_right(f, &g).unwrap(), identity_op(3));
            assert_eq!(compose_right(&g, f).unwrap(), identity_op(3));
            for k in h3.iter().step_by(7) {
                assert!(set.contains(&compose_right(f, k).unwrap()));
            }
        }
    }

    #[test]
    fn h2_count_m4() {
        assert_eq!(enumerate_h2(4).unwrap().count(), 331_776);
    }

    #[test]
    fn embed_unary_examples() {
        assert_eq!(embed_unary(&[0, 1, 2]).unwrap(), identity_op(3));
        assert_eq!(embed_unary(&[1, 0]).unwrap().rows(), vec![vec![1, 0], vec![1, 0]]);
        assert!(embed_unary(&[0, 0]).is_err());
    }

    #[test]
    fn embed_unary_is_injective_homomorphism_m3() {
        let perms = perm::all_permutations(3);
        let images: Vec<BinaryOp> = perms.iter().map(|h| embed_unary(h).unwrap()).collect();
        for (i, a) in perms.iter().enumerate() {
            for (j, b) in perms.iter().enumerate() {
                let lhs = compose_right(&images[i], &images[j]).unwrap();
                assert_eq!(lhs, embed_unary(&perm::compose(a, b)).unwrap());
                assert_eq!(i == j, images[i] == images[j]);
            }
        }
    }

    proptest! {
        #[test]
        fn monoid_laws_random_m3(a in arb_op(3), b in arb_op(3), c in arb_op(3)) {
            let ab = compose_right(&a, &b).unwrap();
            let bc = compose_right(&b, &c).unwrap();
            prop_assert_eq!(compose_right(&ab, &c).unwrap(), compose_right(&a, &bc).unwrap());
            let ab = compose_left(&a, &b).unwrap();
            let bc = compose_left(&b, &c).unwrap();
            prop_assert_eq!(compose_left(&ab, &c).unwrap(), compose_left(&a, &bc).unwrap());
            prop_assert_eq!(compose_right(&identity_op(3), &a).unwrap(), a.clone());
            prop_assert_eq!(compose_left(&a, &first_projection(3)).unwrap(), a);
        }

        #[test]
        fn star_involution_and_anti_isomorphism_m3(a in arb_op(3), b in arb_op(3)) {
            prop_assert_eq!(star(&star(&a)), a.clone());
            let lhs = star(&compose_right(&a, &b).unwrap());
            prop_assert_eq!(lhs, compose_left(&star(&a), &star(&b)).unwrap());
        }

        #[test]
        fn star_involution_m4(a in arb_op(4)) {
            prop_assert_eq!(star(&star(&a)), a.clone());
            prop_assert_eq!(compose_right(&identity_op(4), &a).unwrap(), a);
        }
    }
}
