//! Exact integer predicates for t-core existence: triangular
//! numbers, Löschian numbers (`X² + XY + Y²`), the twisted divisor sum that
//! counts 3-cores, and trial-division factorization.

/// Prime factorization as `(prime, exponent)` pairs with strictly increasing
/// primes.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Factorization(pub Vec<(u64, u32)>);

impl Factorization {
    pub fn pairs(&self) -> &[(u64, u32)] {
        &self.0
    }

    pub fn product(&self) -> u128 {
        self.0.iter().map(|&(p, e)| (p as u128).pow(e)).product()
    }

    /// Every divisor of the factored number, unsorted.
    pub fn divisors(&self) -> Vec<u64> {
        let mut out = vec![1u64];
        for &(p, e) in &self.0 {
            let len = out.len();
            let mut pk = 1u64;
            for _ in 0..e {
                pk *= p;
                for i in 0..len {
                    out.push(out[i] * pk);
                }
            }
        }
        out
    }
}

/// Trial-division factorization. Panics on `n == 0`.
pub fn factorize(mut n: u64) -> Factorization {
    assert!(n >= 1, "factorize: n must be positive");
    let mut pairs = Vec::new();
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            pairs.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        pairs.push((n, 1));
    }
    Factorization(pairs)
}

/// Exact integer square root (floor).
pub fn isqrt(n: u64) -> u64 {
    if n < 2 {
        return n;
    }
    let mut x = (n as f64).sqrt() as u64;
    while x.saturating_mul(x) > n {
        x -= 1;
    }
    while (x + 1).saturating_mul(x + 1) <= n {
        x += 1;
    }
    x
}

pub fn is_square(n: u64) -> bool {
    let r = isqrt(n);
    r * r == n
}

/// `Some(m)` with `n = m(m+1)/2` when `n` is triangular.
pub fn is_triangular(n: u64) -> Option<u64> {
    let disc = 8 * n + 1;
    let r = isqrt(disc);
    (r * r == disc).then(|| (r - 1) / 2)
}

/// `n = X² + XY + Y²` is solvable iff every prime `≡ 2 (mod 3)` divides `n`
/// to an even power.
pub fn is_loeschian(n: u64) -> bool {
    if n == 0 {
        return true;
    }
    factorize(n).pairs().iter().all(|&(p, e)| p % 3 != 2 || e % 2 == 0)
}

/// Direct search for `X² + XY + Y² = n` with `0 ≤ Y ≤ X`.
pub fn loeschian_witness(n: u64) -> Option<(u64, u64)> {
    let bound = isqrt(n) + 1;
    for x in 0..=bound {
        for y in 0..=x {
            let v = x * x + x * y + y * y;
            if v == n {
                return Some((x, y));
            }
            if v > n {
                break;
            }
        }
    }
    None
}

/// Legendre symbol `(d / 3)`.
fn legendre3(d: u64) -> i64 {
    match d % 3 {
        0 => 0,
        1 => 1,
        _ => -1,
    }
}

/// Twisted divisor sum: `0` when `3 | m`, else `Σ_{d | m} (d/3)`.
/// `sigma3(3n + 1)` is the number of 3-core partitions of `n`.
pub fn sigma3(m: u64) -> i64 {
    assert!(m >= 1, "sigma3: m must be positive");
    if m.is_multiple_of(3) {
        return 0;
    }
    factorize(m).divisors().into_iter().map(legendre3).sum()
}

/// Is `n = X² + X + XY + Y + Y²` for some integers `X, Y`?
///
/// Decided through `3n + 1` being Löschian; [`quadform_xxyy_search`] is the
/// direct search kept as an independent check.
pub fn quadform_xxyy(n: u64) -> bool {
    is_loeschian(3 * n + 1)
}

/// Exhaustive search over `|X| ≤ 2 + ⌈√(2n)⌉`; for each `X` the quadratic
/// in `Y` is solved exactly.
pub fn quadform_xxyy_search(n: u64) -> Option<(i64, i64)> {
    let bound = 2 + isqrt(2 * n) as i64 + 1;
    let n = n as i64;
    for x in -bound..=bound {
        // Y² + (X+1)Y + (X² + X − n) = 0
        let disc = (x + 1) * (x + 1) - 4 * (x * x + x - n);
        if disc < 0 || !is_square(disc as u64) {
            continue;
        }
        let s = isqrt(disc as u64) as i64;
        for y2 in [-(x + 1) + s, -(x + 1) - s] {
            if y2 % 2 == 0 {
                let y = y2 / 2;
                debug_assert_eq!(x * x + x + x * y + y + y * y, n);
                return Some((x, y));
            }
        }
    }
    None
}

/// Map a solution of `X² + X + XY + Y + Y² = n` to one of
/// `A² + AB + B² = 3n + 1` via `A = X − Y`, `B = X + 2Y + 1`.
pub fn quadform_to_loeschian(x: i64, y: i64) -> (i64, i64) {
    (x - y, x + 2 * y + 1)
}

pub fn gcd(a: u64, b: u64) -> u64 {
    num_integer::gcd(a, b)
}

pub fn lcm(a: u64, b: u64) -> u64 {
    num_integer::lcm(a, b)
}

/// `Some((p, f))` when `q = p^f` for a prime `p`.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    match factorize(q).pairs() {
        [(p, f)] => Some((*p, *f)),
        _ => None,
    }
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n).pairs() == [(n, 1)]
}

#[cfg(test)]
mod tests {
    use super::*;

    // Oracle: naive trial division without the square-root cut-off.
    fn naive_factor(mut n: u64) -> Vec<(u64, u32)> {
        let mut out = Vec::new();
        let mut d = 2;
        while n > 1 {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            if e > 0 {
                out.push((d, e));
            }
            d += 1;
        }
        out
    }

    #[test]
    fn factorize_examples() {
        assert!(factorize(1).pairs().is_empty());
        assert_eq!(factorize(12).pairs(), &[(2, 2), (3, 1)]);
        assert_eq!(factorize(19).pairs(), naive_factor(19).as_slice());
        assert_eq!(factorize(19).pairs(), &[(19, 1)]);
    }

    #[test]
    fn factorize_reconstructs() {
        for n in 1..=100_000u64 {
            let f = factorize(n);
            assert_eq!(f.product(), n as u128);
            assert!(f.pairs().windows(2).all(|w| w[0].0 < w[1].0));
            assert!(f.pairs().iter().all(|&(_, e)| e >= 1));
        }
        for n in [1u64, 2, 360, 9973, 65536, 99991] {
            assert_eq!(factorize(n).pairs(), naive_factor(n).as_slice());
        }
    }

    #[test]
    fn triangular_examples() {
        assert_eq!(is_triangular(0), Some(0));
        assert_eq!(is_triangular(6), Some(3));
        assert_eq!(is_triangular(7), None);
        let scan = |n: u64| (0..=n).any(|m| m * (m + 1) / 2 == n);
        assert!(!scan(7));
    }

    #[test]
    fn triangular_matches_enumeration() {
        let tri: std::collections::HashSet<u64> = (0..=450u64).map(|m| m * (m + 1) / 2).collect();
        for n in 0..=100_000u64 {
            assert_eq!(is_triangular(n).is_some(), tri.contains(&n), "n = {n}");
        }
    }

    #[test]
    fn loeschian_examples() {
        assert!(is_loeschian(0));
        assert!(is_loeschian(19));
        assert_eq!(loeschian_witness(19), Some((3, 2)));
        assert!(!is_loeschian(2));
        assert_eq!(loeschian_witness(1), Some((1, 0)));
        assert_eq!(loeschian_witness(7), Some((2, 1)));
        assert_eq!(loeschian_witness(5), None);
    }

    #[test]
    fn loeschian_criterion_matches_witness_search() {
        for n in 0..=10_000 {
            assert_eq!(is_loeschian(n), loeschian_witness(n).is_some(), "n = {n}");
        }
    }

    #[test]
    fn sigma3_examples() {
        assert_eq!(sigma3(3), 0);
        assert_eq!(sigma3(1), 1);
        assert_eq!(sigma3(19), 2);
        assert_eq!(sigma3(4), 1);
        assert_eq!(sigma3(2), 0);
    }

    #[test]
    fn quadform_examples() {
        assert!(quadform_xxyy(0));
        assert!(quadform_xxyy(6));
        assert!(!quadform_xxyy(3));
        assert_eq!(quadform_xxyy_search(3), None);
        assert!(quadform_xxyy_search(0).is_some());
        assert!(quadform_xxyy_search(6).is_some());
    }

    #[test]
    fn quadform_theorem_both_directions() {
        for n in 0..=10_000u64 {
            let found = quadform_xxyy_search(n);
            assert_eq!(found.is_some(), quadform_xxyy(n), "n = {n}");
            if let Some((x, y)) = found {
                let (a, b) = quadform_to_loeschian(x, y);
                assert_eq!(a * a + a * b + b * b, 3 * n as i64 + 1);
            }
        }
    }

    #[test]
    fn prime_power_detection() {
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(8), Some((2, 3)));
        assert_eq!(prime_power(6), None);
        assert_eq!(prime_power(1), None);
    }
}
