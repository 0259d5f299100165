//! Integer partitions, Young-diagram hooks, and t-cores.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::numtheory::{is_loeschian, is_prime, is_triangular};

/// A weakly decreasing sequence of positive parts. The empty partition is the
/// unique partition of zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition {
    parts: Vec<usize>,
    n: usize,
}

impl Partition {
    /// Builds a partition, sorting the parts and dropping zeros.
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        let n = parts.iter().sum();
        Partition { parts, n }
    }

    /// Wraps parts already known to be weakly decreasing and positive.
    pub(crate) fn from_sorted(parts: Vec<usize>) -> Self {
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]));
        debug_assert!(parts.iter().all(|&p| p > 0));
        let n = parts.iter().sum();
        Partition { parts, n }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new(), n: 0 }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.parts.first().copied().unwrap_or(0);
        let parts = (0..width).map(|j| self.parts.iter().take_while(|&&p| p > j).count()).collect();
        Partition::from_sorted(parts)
    }

    pub fn is_self_conjugate(&self) -> bool {
        *self == self.conjugate()
    }

    /// Multiplicity of each part length `k` (index `k`).
    pub fn multiplicities(&self) -> Vec<usize> {
        let mut m = vec![0; self.parts.first().copied().unwrap_or(0) + 1];
        for &p in &self.parts {
            m[p] += 1;
        }
        m
    }

    /// Hook lengths of the boxes on the main diagonal, decreasing.
    pub fn principal_hooks(&self) -> Vec<usize> {
        let conj = self.conjugate();
        (0..self.parts.len())
            .take_while(|&i| self.parts[i] > i)
            .map(|i| (self.parts[i] - i) + (conj.parts[i] - i) - 1)
            .collect()
    }
}

impl From<Vec<usize>> for Partition {
    fn from(parts: Vec<usize>) -> Self {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// Partitions of `n` in reverse lexicographic order: `(n)`, `(n-1,1)`, ...,
/// `(1^n)`.
pub struct Partitions {
    next: Option<Vec<usize>>,
}

impl Iterator for Partitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        let current = self.next.take()?;
        // Successor: decrement the last part > 1, then refill greedily.
        let mut parts = current.clone();
        let mut ones = 0;
        while parts.last() == Some(&1) {
            parts.pop();
            ones += 1;
        }
        if let Some(last) = parts.last_mut() {
            *last -= 1;
            let cap = *last;
            let mut rest = ones + 1;
            while rest > 0 {
                let take = rest.min(cap);
                parts.push(take);
                rest -= take;
            }
            self.next = Some(parts);
        }
        Some(Partition::from_sorted(current))
    }
}

pub fn enumerate_partitions(n: usize) -> Partitions {
    Partitions { next: Some(if n == 0 { Vec::new() } else { vec![n] }) }
}

/// Per-box hook lengths, stored row by row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HookGrid {
    rows: Vec<Vec<usize>>,
}

impl HookGrid {
    pub fn get(&self, row: usize, col: usize) -> usize {
        self.rows[row][col]
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.iter().flatten().copied()
    }

    /// Hooks as a sorted multiset.
    pub fn sorted(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.iter().collect();
        v.sort_unstable();
        v
    }
}

pub fn hook_lengths(lambda: &Partition) -> HookGrid {
    let conj = lambda.conjugate();
    let rows = lambda
        .parts()
        .iter()
        .enumerate()
        .map(|(i, &li)| (0..li).map(|j| (li - j) + (conj.parts()[j] - i) - 1).collect())
        .collect();
    HookGrid { rows }
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * k)
}

/// Degree of the irreducible character of `S_n` labelled by `lambda`, by the
/// hook-length formula.
pub fn degree_hook(lambda: &Partition) -> BigUint {
    let hooks: BigUint = hook_lengths(lambda).iter().fold(BigUint::one(), |acc, h| acc * h);
    let nf = factorial(lambda.size());
    let (q, r) = (&nf / &hooks, &nf % &hooks);
    assert!(r.is_zero(), "internal error: hook product does not divide n! for {lambda}");
    q
}

pub fn is_t_core(lambda: &Partition, t: usize) -> bool {
    assert!(t >= 2, "t must be at least 2");
    hook_lengths(lambda).iter().all(|h| h % t != 0)
}

/// All t-core partitions of `n`.
///
/// Rows are placed bottom-up: a new, longer top row never changes the hooks of
/// the rows beneath it, so any non-core prefix can be discarded at once.
pub fn t_cores(n: usize, t: usize) -> Vec<Partition> {
    assert!(t >= 2, "t must be at least 2");
    let mut out = Vec::new();
    let mut rows = Vec::new();
    t_core_dfs(n, t, &mut rows, 0, &mut out);
    out
}

fn t_core_dfs(n: usize, t: usize, rows: &mut Vec<usize>, sum: usize, out: &mut Vec<Partition>) {
    if sum == n {
        out.push(Partition::from_sorted(rows.iter().rev().copied().collect()));
        return;
    }
    let min_len = rows.last().copied().unwrap_or(1).max(1);
    for len in min_len..=(n - sum) {
        // Hook of box (new row, col j): arm = len-1-j, leg = rows below longer than j.
        let ok = (0..len).all(|j| {
            let leg = rows.iter().filter(|&&r| r > j).count();
            (len - j + leg) % t != 0
        });
        if ok {
            rows.push(len);
            t_core_dfs(n, t, rows, sum + len, out);
            rows.pop();
        }
    }
}

pub fn count_t_cores(n: usize, t: usize) -> usize {
    t_cores(n, t).len()
}

/// Existence of a t-core of `n`, using the closed-form criteria where they
/// apply: triangular `n` for `t = 2`, Löschian `3n + 1` for `t = 3`, and
/// always for primes `t ≥ 5`.
pub fn exists_t_core(n: usize, t: usize) -> bool {
    assert!(t >= 2, "t must be at least 2");
    match t {
        _ if n == 0 => true,
        2 => is_triangular(n as u64).is_some(),
        3 => is_loeschian(3 * n as u64 + 1),
        _ if t >= 5 && is_prime(t as u64) => true,
        _ => find_t_core(n, t).is_some(),
    }
}

/// Existence decided by enumerating every partition of `n`.
pub fn exists_t_core_brute(n: usize, t: usize) -> bool {
    enumerate_partitions(n).any(|l| is_t_core(&l, t))
}

/// Some t-core of `n`, found by the bottom-up search.
pub fn find_t_core(n: usize, t: usize) -> Option<Partition> {
    let mut rows = Vec::new();
    find_t_core_dfs(n, t, &mut rows, 0)
}

fn find_t_core_dfs(n: usize, t: usize, rows: &mut Vec<usize>, sum: usize) -> Option<Partition> {
    if sum == n {
        return Some(Partition::from_sorted(rows.iter().rev().copied().collect()));
    }
    let min_len = rows.last().copied().unwrap_or(1).max(1);
    for len in (min_len..=(n - sum)).rev() {
        let ok = (0..len).all(|j| {
            let leg = rows.iter().filter(|&&r| r > j).count();
            (len - j + leg) % t != 0
        });
        if ok {
            rows.push(len);
            if let Some(p) = find_t_core_dfs(n, t, rows, sum + len) {
                return Some(p);
            }
            rows.pop();
        }
    }
    None
}

/// Number of hooks of `lambda` divisible by `t`.
pub fn count_hooks_divisible(lambda: &Partition, t: usize) -> usize {
    hook_lengths(lambda).iter().filter(|h| h % t == 0).count()
}

/// A partition of `n` with exactly one even hook length exists iff `n - 2`
/// is triangular.
///
/// "Even" matters: `(4)` has a single hook equal to 2 but also a hook of 4,
/// and it is the count of even hooks that controls the 2-part of the degree.
pub fn unique_hook2_exists(n: usize) -> bool {
    n >= 2 && is_triangular(n as u64 - 2).is_some()
}

pub fn unique_hook2_exists_brute(n: usize) -> bool {
    enumerate_partitions(n).any(|l| count_hooks_divisible(&l, 2) == 1)
}

/// A self-conjugate partition of `n` (absent only for `n = 2`), built from
/// distinct odd principal hooks.
pub fn self_conjugate_partition(n: usize) -> Option<Partition> {
    // Greedy distinct odd parts, largest first, then fold into a diagram.
    fn split(n: usize, max: usize) -> Option<Vec<usize>> {
        if n == 0 {
            return Some(Vec::new());
        }
        let mut h = if max % 2 == 1 { max } else { max.saturating_sub(1) };
        while h >= 1 {
            if h <= n {
                if let Some(mut rest) = split(n - h, h.saturating_sub(2)) {
                    rest.insert(0, h);
                    return Some(rest);
                }
            }
            if h < 2 {
                break;
            }
            h -= 2;
        }
        None
    }
    let hooks = split(n, n)?;
    Some(from_principal_hooks(&hooks))
}

/// The self-conjugate partition whose principal hooks are `hooks`
/// (distinct, odd, decreasing).
pub fn from_principal_hooks(hooks: &[usize]) -> Partition {
    // Arm and leg of the i-th diagonal box are both (h_i - 1) / 2.
    let arms: Vec<usize> = hooks.iter().map(|h| (h - 1) / 2).collect();
    let mut parts: Vec<usize> = arms.iter().enumerate().map(|(i, a)| i + 1 + a).collect();
    for j in arms.len().. {
        let len = arms.iter().enumerate().filter(|&(i, &a)| i + a >= j).count();
        if len == 0 {
            break;
        }
        parts.push(len);
    }
    Partition::new(parts)
}
