//! Small combinatorial helpers shared by the enumerators.

use core::ops::ControlFlow;

use alloc::vec::Vec;

/// Visits every `k`-subset of `0..n` in lexicographic order.
pub fn for_each_combination<F>(n: usize, k: usize, mut f: F) -> ControlFlow<()>
where
    F: FnMut(&[u32]) -> ControlFlow<()>,
{
    for_each_combination_of(&(0..n as u32).collect::<Vec<_>>(), k, &mut f)
}

/// Visits every `k`-subset of `items` (kept in the given order) lexicographically by position.
pub fn for_each_combination_of<F>(items: &[u32], k: usize, f: &mut F) -> ControlFlow<()>
where
    F: FnMut(&[u32]) -> ControlFlow<()>,
{
    let n = items.len();
    if k > n {
        return ControlFlow::Continue(());
    }
    let mut idx: Vec<usize> = (0..k).collect();
    let mut buf: Vec<u32> = idx.iter().map(|&i| items[i]).collect();
    loop {
        f(&buf)?;
        // advance the rightmost index that still has room
        let mut i = k;
        loop {
            if i == 0 {
                return ControlFlow::Continue(());
            }
            i -= 1;
            if idx[i] < n - k + i {
                break;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
        for j in i..k {
            buf[j] = items[idx[j]];
        }
    }
}

pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

pub fn factorial(n: u64) -> u128 {
    (1..=n as u128).product()
}

/// Rearranges `v` into the next lexicographically larger permutation of its multiset.
/// Returns `false` (leaving `v` sorted ascending) once the last permutation has been passed.
pub fn next_permutation<T: Ord>(v: &mut [T]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        v.reverse();
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

pub fn isqrt(n: u64) -> u64 {
    if n < 2 {
        return n;
    }
    let mut x = libm::sqrt(n as f64) as u64;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn combinations_in_order() {
        let mut seen = Vec::new();
        let _ = for_each_combination(4, 2, |c| {
            seen.push(c.to_vec());
            ControlFlow::Continue(())
        });
        assert_eq!(seen, vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]);
    }

    #[test]
    fn combination_edge_cases() {
        let mut count = 0;
        let _ = for_each_combination(3, 0, |c| {
            assert!(c.is_empty());
            count += 1;
            ControlFlow::Continue(())
        });
        assert_eq!(count, 1);
        let _ = for_each_combination(2, 3, |_| panic!("no 3-subsets of a 2-set"));
    }

    #[test]
    fn multiset_permutations() {
        let mut v = [0, 1, 1];
        let mut n = 1;
        while next_permutation(&mut v) {
            n += 1;
        }
        assert_eq!(n, 3);
        assert_eq!(v, [0, 1, 1]);
    }

    #[test]
    fn binomials_and_roots() {
        assert_eq!(binomial(49, 3), 18424);
        assert_eq!(binomial(5, 7), 0);
        assert_eq!(factorial(4), 24);
        for n in 0..2000u64 {
            let s = isqrt(n);
            assert!(s * s <= n && (s + 1) * (s + 1) > n);
        }
    }
}
