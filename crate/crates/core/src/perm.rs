//! Permutation helpers shared by the table modules.

/// All permutations of `0..n` in lexicographic one-line order.
pub fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..n).collect();
    loop {
        out.push(current.clone());
        if !next_permutation(&mut current) {
            return out;
        }
    }
}

/// Advance to the next permutation in lexicographic order; false at the last one.
pub fn next_permutation(p: &mut [usize]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let Some(i) = (0..p.len() - 1).rev().find(|&i| p[i] < p[i + 1]) else {
        return false;
    };
    let j = (i + 1..p.len()).rev().find(|&j| p[j] > p[i]).unwrap();
    p.swap(i, j);
    p[i + 1..].reverse();
    true
}

/// `(a ∘ b)(i) = a(b(i))`.
pub fn compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    b.iter().map(|&i| a[i]).collect()
}

pub fn inverse(p: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; p.len()];
    for (i, &v) in p.iter().enumerate() {
        inv[v] = i;
    }
    inv
}

pub fn is_identity(p: &[usize]) -> bool {
    p.iter().enumerate().all(|(i, &v)| i == v)
}

/// Order of a permutation in its cyclic group.
pub fn order(p: &[usize]) -> usize {
    let mut seen = vec![false; p.len()];
    let mut lcm = 1;
    for start in 0..p.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = p[i];
            len += 1;
        }
        lcm = lcm / gcd(lcm, len) * len;
    }
    lcm
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Visit every tuple in the cartesian product of `choices`, first coordinate
/// most significant.
pub(crate) fn for_each_product<T: Copy>(
    choices: &[Vec<T>],
    scratch: &mut Vec<T>,
    visit: &mut dyn FnMut(&[T]),
) {
    fn rec<T: Copy>(
        choices: &[Vec<T>],
        depth: usize,
        scratch: &mut Vec<T>,
        visit: &mut dyn FnMut(&[T]),
    ) {
        if depth == choices.len() {
            visit(scratch);
            return;
        }
        for &c in &choices[depth] {
            scratch[depth] = c;
            rec(choices, depth + 1, scratch, visit);
        }
    }
    if choices.iter().any(Vec::is_empty) {
        return;
    }
    scratch.clear();
    scratch.extend(choices.iter().map(|c| c[0]));
    rec(choices, 0, scratch, visit);
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lexicographic_permutations() {
        assert_eq!(all_permutations(0), vec![Vec::<usize>::new()]);
        let p3 = all_permutations(3);
        assert_eq!(p3.len(), 6);
        assert_eq!(p3[1], vec![0, 2, 1]);
        assert_eq!(p3[5], vec![2, 1, 0]);
        assert!(p3.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(all_permutations(5).len(), 120);
    }

    #[test]
    fn orders_and_inverses() {
        assert_eq!(order(&[1, 2, 0, 4, 3]), 6);
        assert_eq!(order(&[0, 1]), 1);
        let p = vec![2, 0, 3, 1];
        assert!(is_identity(&compose(&p, &inverse(&p))));
    }
}
