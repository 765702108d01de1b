//! Finite fields as explicit addition and multiplication tables.
//!
//! Elements are indices `0..q` with zero at 0 and one at 1. [`gf`] encodes a
//! polynomial `c0 + c1 t + ... + c_{n-1} t^{n-1}` over `GF(p)` as the integer
//! `c0 + c1 p + ... + c_{n-1} p^{n-1}`.

use std::fmt;

use crate::error::{Error, Result};
use crate::group::{is_permutation, FiniteGroup};

/// Largest field order accepted by [`gf`] and [`fields_isomorphic`].
pub const FIELD_BOUND: usize = 4096;

#[derive(Clone, PartialEq, Eq)]
pub struct FiniteField {
    order: usize,
    characteristic: usize,
    add: Vec<u16>,
    mul: Vec<u16>,
}

/// Field isomorphism as an element map `F -> F'`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldIso {
    pub map: Vec<usize>,
}

impl FieldIso {
    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// Entrywise check that the map preserves zero, one, `+` and `*`.
    pub fn verify(&self, from: &FiniteField, to: &FiniteField) -> bool {
        let q = from.order;
        let f = &self.map;
        q == to.order
            && f.len() == q
            && is_permutation(f.iter().copied(), q)
            && f[0] == 0
            && f[1] == 1
            && (0..q).all(|a| {
                (0..q).all(|b| {
                    f[from.add(a, b)] == to.add(f[a], f[b])
                        && f[from.mul(a, b)] == to.mul(f[a], f[b])
                })
            })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FieldViolation {
    AddNotAssociative { a: usize, b: usize, c: usize },
    AddNotCommutative { a: usize, b: usize },
    AddIdentity { a: usize },
    AddInverse { a: usize },
    MulNotAssociative { a: usize, b: usize, c: usize },
    MulNotCommutative { a: usize, b: usize },
    MulIdentity { a: usize },
    MulInverse { a: usize },
    ZeroDivisor { a: usize, b: usize },
    NotAbsorbing { a: usize },
    NotDistributive { a: usize, b: usize, c: usize },
    ZeroEqualsOne,
}

impl fmt::Display for FieldViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use FieldViolation::*;
        match *self {
            AddNotAssociative { a, b, c } => write!(f, "addition not associative at ({a},{b},{c})"),
            AddNotCommutative { a, b } => write!(f, "addition not commutative at ({a},{b})"),
            AddIdentity { a } => write!(f, "0 is not an additive identity for {a}"),
            AddInverse { a } => write!(f, "no additive inverse for {a}"),
            MulNotAssociative { a, b, c } => {
                write!(f, "multiplication not associative at ({a},{b},{c})")
            }
            MulNotCommutative { a, b } => write!(f, "multiplication not commutative at ({a},{b})"),
            MulIdentity { a } => write!(f, "1 is not a multiplicative identity for {a}"),
            MulInverse { a } => write!(f, "no multiplicative inverse for {a}"),
            ZeroDivisor { a, b } => write!(f, "zero divisors {a}*{b}=0"),
            NotAbsorbing { a } => write!(f, "{a}*0 != 0"),
            NotDistributive { a, b, c } => write!(f, "distributivity fails at ({a},{b},{c})"),
            ZeroEqualsOne => write!(f, "0 = 1"),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FieldReport {
    pub violations: Vec<FieldViolation>,
}

impl FieldReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

fn check_table(name: &str, table: &[Vec<usize>], q: usize) -> Result<()> {
    if table.len() != q || table.iter().any(|r| r.len() != q) {
        return Err(Error::Shape(format!("{name} table is not {q}x{q}")));
    }
    if table.iter().flatten().any(|&v| v >= q) {
        return Err(Error::Shape(format!("{name} table has an entry out of range 0..{q}")));
    }
    Ok(())
}

/// Check every field axiom with 0 as zero and 1 as one, reporting the first
/// witness of each kind.
pub fn verify_field(add: &[Vec<usize>], mul: &[Vec<usize>], q: usize) -> Result<FieldReport> {
    if q < 2 {
        return Err(Error::Shape(format!("a field has at least 2 elements, got {q}")));
    }
    check_table("ADD", add, q)?;
    check_table("MUL", mul, q)?;
    let a_ = |a: usize, b: usize| add[a][b];
    let m_ = |a: usize, b: usize| mul[a][b];
    let mut v = Vec::new();
    use FieldViolation::*;

    let first3 = |pred: &dyn Fn(usize, usize, usize) -> bool| {
        for a in 0..q {
            for b in 0..q {
                for c in 0..q {
                    if !pred(a, b, c) {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    };
    let first2 = |pred: &dyn Fn(usize, usize) -> bool| {
        (0..q).flat_map(|a| (0..q).map(move |b| (a, b))).find(|&(a, b)| !pred(a, b))
    };

    if let Some((a, b, c)) = first3(&|a, b, c| a_(a_(a, b), c) == a_(a, a_(b, c))) {
        v.push(AddNotAssociative { a, b, c });
    }
    if let Some((a, b)) = first2(&|a, b| a_(a, b) == a_(b, a)) {
        v.push(AddNotCommutative { a, b });
    }
    if let Some(a) = (0..q).find(|&a| a_(0, a) != a || a_(a, 0) != a) {
        v.push(AddIdentity { a });
    }
    if let Some(a) = (0..q).find(|&a| !(0..q).any(|b| a_(a, b) == 0)) {
        v.push(AddInverse { a });
    }
    if let Some((a, b, c)) = first3(&|a, b, c| m_(m_(a, b), c) == m_(a, m_(b, c))) {
        v.push(MulNotAssociative { a, b, c });
    }
    if let Some((a, b)) = first2(&|a, b| m_(a, b) == m_(b, a)) {
        v.push(MulNotCommutative { a, b });
    }
    if let Some(a) = (0..q).find(|&a| m_(1, a) != a || m_(a, 1) != a) {
        v.push(MulIdentity { a });
    }
    if let Some(a) = (1..q).find(|&a| !(1..q).any(|b| m_(a, b) == 1)) {
        v.push(MulInverse { a });
    }
    if let Some((a, b)) = first2(&|a, b| a == 0 || b == 0 || m_(a, b) != 0) {
        v.push(ZeroDivisor { a, b });
    }
    if let Some(a) = (0..q).find(|&a| m_(a, 0) != 0 || m_(0, a) != 0) {
        v.push(NotAbsorbing { a });
    }
    if let Some((a, b, c)) = first3(&|a, b, c| m_(a, a_(b, c)) == a_(m_(a, b), m_(a, c))) {
        v.push(NotDistributive { a, b, c });
    }
    Ok(FieldReport { violations: v })
}

fn is_prime(p: usize) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// Write `q = p^n`, if `q` is a prime power.
pub fn prime_power(q: usize) -> Option<(usize, usize)> {
    let p = (2..=q).find(|d| q % d == 0)?;
    let (mut rest, mut n) = (q, 0);
    while rest % p == 0 {
        rest /= p;
        n += 1;
    }
    (rest == 1).then_some((p, n))
}

/// Polynomials over GF(p) as coefficient vectors, constant term first.
mod poly {
    pub fn trim(mut a: Vec<usize>) -> Vec<usize> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    /// Remainder of `a` modulo the monic polynomial `m`.
    pub fn rem(a: &[usize], m: &[usize], p: usize) -> Vec<usize> {
        let mut r = a.to_vec();
        let dm = m.len() - 1;
        while r.len() > dm {
            let lead = *r.last().unwrap();
            let shift = r.len() - 1 - dm;
            if lead != 0 {
                for (i, &c) in m.iter().enumerate() {
                    r[shift + i] = (r[shift + i] + p - (lead * c) % p) % p;
                }
            }
            r.pop();
        }
        trim(r)
    }

    pub fn mul(a: &[usize], b: &[usize], p: usize) -> Vec<usize> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % p;
            }
        }
        trim(out)
    }

    /// Monic polynomials of exactly degree `d`.
    pub fn monics(p: usize, d: usize) -> impl Iterator<Item = Vec<usize>> {
        (0..p.pow(d as u32)).map(move |mut code| {
            let mut c = Vec::with_capacity(d + 1);
            for _ in 0..d {
                c.push(code % p);
                code /= p;
            }
            c.push(1);
            c
        })
    }

    pub fn is_irreducible(f: &[usize], p: usize) -> bool {
        let n = f.len() - 1;
        (1..=n / 2).all(|d| monics(p, d).all(|g| !rem(f, &g, p).is_empty()))
    }
}

/// The smallest monic irreducible polynomial of degree `n` over GF(p),
/// comparing coefficient sequences `(c0, c1, ..., c_{n-1})` lexicographically.
/// Coefficients are returned constant term first, including the leading 1.
pub fn smallest_irreducible(p: usize, n: usize) -> Vec<usize> {
    let count = p.pow(n as u32);
    (0..count)
        .map(|code| {
            // c0 is the most significant digit
            let mut c = vec![0; n + 1];
            let mut rest = code;
            for i in (0..n).rev() {
                c[i] = rest % p;
                rest /= p;
            }
            c[n] = 1;
            c
        })
        .find(|c| poly::is_irreducible(c, p))
        .expect("irreducible polynomials exist in every degree")
}

/// GF(p^n) as tables over the base-p digit encoding.
pub fn gf(p: usize, n: usize) -> Result<FiniteField> {
    if !is_prime(p) {
        return Err(Error::InvalidField(format!("{p} is not prime")));
    }
    if n == 0 {
        return Err(Error::Bounds("extension degree must be positive".into()));
    }
    let q = (0..n).try_fold(1usize, |acc, _| acc.checked_mul(p).filter(|&v| v <= FIELD_BOUND));
    let Some(q) = q else {
        return Err(Error::Bounds(format!("{p}^{n} exceeds {FIELD_BOUND}")));
    };
    let modulus = smallest_irreducible(p, n);
    let digits = |mut a: usize| {
        let mut c = Vec::with_capacity(n);
        for _ in 0..n {
            c.push(a % p);
            a /= p;
        }
        poly::trim(c)
    };
    let encode = |c: &[usize]| c.iter().rev().fold(0, |acc, &d| acc * p + d);
    let elems: Vec<Vec<usize>> = (0..q).map(digits).collect();

    let mut add = vec![0u16; q * q];
    let mut mul = vec![0u16; q * q];
    for a in 0..q {
        for b in 0..q {
            let (mut x, mut y, mut sum, mut scale) = (a, b, 0, 1);
            for _ in 0..n {
                sum += ((x % p + y % p) % p) * scale;
                x /= p;
                y /= p;
                scale *= p;
            }
            add[a * q + b] = sum as u16;
            let prod = poly::rem(&poly::mul(&elems[a], &elems[b], p), &modulus, p);
            mul[a * q + b] = encode(&prod) as u16;
        }
    }
    Ok(FiniteField { order: q, characteristic: p, add, mul })
}

impl FiniteField {
    /// Validate tables with 0 as zero and 1 as one.
    pub fn from_tables(add: &[Vec<usize>], mul: &[Vec<usize>]) -> Result<Self> {
        let q = add.len();
        if q > FIELD_BOUND {
            return Err(Error::Bounds(format!("field order {q} exceeds {FIELD_BOUND}")));
        }
        let report = verify_field(add, mul, q)?;
        if let Some(v) = report.violations.first() {
            return Err(Error::InvalidField(v.to_string()));
        }
        Ok(Self::from_tables_unchecked(add, mul))
    }

    /// Validate tables whose zero and one may sit anywhere, renumbering so
    /// zero becomes 0 and one becomes 1. Returns the relabeling `old -> new`.
    pub fn from_tables_renumbered(
        add: &[Vec<usize>],
        mul: &[Vec<usize>],
    ) -> Result<(Self, Vec<usize>)> {
        let q = add.len();
        check_table("ADD", add, q)?;
        check_table("MUL", mul, q)?;
        let zero = (0..q)
            .find(|&z| (0..q).all(|a| add[z][a] == a))
            .ok_or_else(|| Error::InvalidField("no additive identity".into()))?;
        let one = (0..q)
            .find(|&u| u != zero && (0..q).all(|a| mul[u][a] == a))
            .ok_or_else(|| Error::InvalidField("no multiplicative identity".into()))?;
        let mut order: Vec<usize> = vec![zero, one];
        order.extend((0..q).filter(|&a| a != zero && a != one));
        let mut relabel = vec![0; q];
        for (new, &old) in order.iter().enumerate() {
            relabel[old] = new;
        }
        let remap = |t: &[Vec<usize>]| -> Vec<Vec<usize>> {
            (0..q)
                .map(|i| (0..q).map(|j| relabel[t[order[i]][order[j]]]).collect())
                .collect()
        };
        let field = Self::from_tables(&remap(add), &remap(mul))?;
        Ok((field, relabel))
    }

    pub(crate) fn from_tables_unchecked(add: &[Vec<usize>], mul: &[Vec<usize>]) -> Self {
        let q = add.len();
        let flat = |t: &[Vec<usize>]| t.iter().flatten().map(|&v| v as u16).collect::<Vec<u16>>();
        let (add, mul) = (flat(add), flat(mul));
        let mut characteristic = 1;
        let mut acc = 1usize;
        while acc != 0 {
            acc = add[acc * q + 1] as usize;
            characteristic += 1;
        }
        FiniteField { order: q, characteristic, add, mul }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn characteristic(&self) -> usize {
        self.characteristic
    }

    pub fn zero(&self) -> usize {
        0
    }

    pub fn one(&self) -> usize {
        1
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.order + b] as usize
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b] as usize
    }

    pub fn neg(&self, a: usize) -> usize {
        (0..self.order).find(|&b| self.add(a, b) == 0).expect("additive inverse")
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    pub fn inv(&self, a: usize) -> Option<usize> {
        (1..self.order).find(|&b| self.mul(a, b) == 1)
    }

    pub fn add_table(&self) -> Vec<Vec<usize>> {
        rows(&self.add, self.order)
    }

    pub fn mul_table(&self) -> Vec<Vec<usize>> {
        rows(&self.mul, self.order)
    }

    /// Multiplicative order of a nonzero element.
    pub fn mul_order(&self, a: usize) -> usize {
        assert_ne!(a, 0, "zero has no multiplicative order");
        let (mut x, mut k) = (a, 1);
        while x != 1 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// The smallest-index generator of the multiplicative group.
    pub fn primitive_element(&self) -> usize {
        (1..self.order).find(|&a| self.mul_order(a) == self.order - 1).expect("cyclic unit group")
    }
}

fn rows(flat: &[u16], q: usize) -> Vec<Vec<usize>> {
    flat.chunks(q).map(|r| r.iter().map(|&v| v as usize).collect()).collect()
}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteField")
            .field("order", &self.order)
            .field("add", &self.add_table())
            .field("mul", &self.mul_table())
            .finish()
    }
}

/// The unit group of a field.
///
/// Group index `k` corresponds to the field element `k + 1`, so the group
/// identity 0 is the field's one. The returned map sends group indices to
/// field elements.
pub fn multiplicative_group(field: &FiniteField) -> (FiniteGroup, Vec<usize>) {
    let n = field.order - 1;
    let mut cayley = vec![0; n * n];
    for a in 0..n {
        for b in 0..n {
            cayley[a * n + b] = field.mul(a + 1, b + 1) - 1;
        }
    }
    (FiniteGroup::from_flat_unchecked(n, cayley), (1..=n).collect())
}

/// Find a field isomorphism by sending a primitive element of `F` to each
/// element of `F'` with the same multiplicative order, in index order.
pub fn fields_isomorphic(f: &FiniteField, g: &FiniteField) -> Option<FieldIso> {
    if f.order != g.order || f.order > FIELD_BOUND {
        return None;
    }
    let q = f.order;
    let omega = f.primitive_element();
    for target in (1..q).filter(|&b| g.mul_order(b) == q - 1) {
        let mut map = vec![0; q];
        let (mut x, mut y) = (1, 1);
        for _ in 0..q - 1 {
            map[x] = y;
            x = f.mul(x, omega);
            y = g.mul(y, target);
        }
        let additive = (0..q).all(|a| (0..q).all(|b| map[f.add(a, b)] == g.add(map[a], map[b])));
        if additive {
            return Some(FieldIso { map });
        }
    }
    None
}
