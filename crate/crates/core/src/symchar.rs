//! Character tables of the symmetric and alternating groups.
//!
//! Values of `S_n` come from the Murnaghan–Nakayama rule on beta-sets, the
//! largest cycle stripped first; `A_n` tables are obtained by restriction,
//! with self-conjugate labels splitting on the class of their principal hooks.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

use crate::algnum::{rat, AlgebraicNumber, MultiQuadratic};
use crate::error::{Error, Result};
use crate::partitions::{
    degree_hook, enumerate_partitions, factorial, find_t_core, self_conjugate_partition, Partition,
};
use crate::table::{CharacterTable, ConjugacyClass, Irreducible};

/// Default largest `n` for which full tables are built.
pub const DEFAULT_TABLE_CAP: usize = 22;
/// Largest `n` handled by the early-exit column scans.
pub const COLUMN_SCAN_CAP: usize = 30;

/// A conjugacy class of `S_n`, labelled by its cycle lengths.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycleType(pub Partition);

impl CycleType {
    pub fn partition(&self) -> &Partition {
        &self.0
    }

    pub fn n(&self) -> usize {
        self.0.size()
    }

    /// `z_μ = Π_k k^{m_k} m_k!`, the centralizer order.
    pub fn centralizer_order(&self) -> BigInt {
        self.0
            .multiplicities()
            .iter()
            .enumerate()
            .skip(1)
            .fold(BigInt::one(), |acc, (k, &m)| acc * BigInt::from(k).pow(m as u32) * BigInt::from(factorial(m)))
    }

    pub fn class_size(&self) -> BigInt {
        BigInt::from(factorial(self.n())) / self.centralizer_order()
    }

    pub fn is_even(&self) -> bool {
        (self.n() - self.0.len()).is_multiple_of(2)
    }

    pub fn sign(&self) -> i64 {
        if self.is_even() {
            1
        } else {
            -1
        }
    }

    /// An even class with distinct odd parts splits into two `A_n` classes.
    pub fn splits_in_alternating(&self) -> bool {
        let p = self.0.parts();
        p.iter().all(|x| x % 2 == 1) && p.windows(2).all(|w| w[0] != w[1])
    }

    /// Parts other than fixed points.
    pub fn moved_parts(&self) -> Vec<usize> {
        self.0.parts().iter().copied().filter(|&p| p > 1).collect()
    }

    /// Whether the non-fixed-point part has shape `(3^a, 2^b)` with `b` even.
    pub fn is_three_two_even(&self) -> bool {
        let moved = self.moved_parts();
        moved.iter().all(|&p| p == 2 || p == 3) && moved.iter().filter(|&&p| p == 2).count() % 2 == 0
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Classes of `S_n`, identity first (increasing lexicographic order).
pub fn cycle_types(n: usize) -> Vec<CycleType> {
    let mut v: Vec<CycleType> = enumerate_partitions(n).map(CycleType).collect();
    v.reverse();
    v
}

fn degree_i128(parts: &[usize]) -> i128 {
    degree_hook(&Partition::new(parts.to_vec())).to_i128().expect("degree overflows i128")
}

/// Memoized Murnaghan–Nakayama evaluator. Not shared between threads: each
/// worker owns one.
#[derive(Default)]
pub struct MnEvaluator {
    memo: HashMap<Vec<u8>, i128>,
    strip_fixed_points: bool,
}

impl MnEvaluator {
    pub fn new() -> Self {
        Self::default()
    }

    /// Removes 1-cycles one box at a time instead of using the hook-length
    /// formula for the remaining degree.
    pub fn stripping_fixed_points() -> Self {
        MnEvaluator { strip_fixed_points: true, ..Self::default() }
    }

    /// `χ_λ(μ)`.
    pub fn value(&mut self, lambda: &Partition, mu: &CycleType) -> i128 {
        assert_eq!(lambda.size(), mu.n(), "partition sizes differ");
        self.eval(lambda.parts(), mu.partition().parts())
    }

    fn eval(&mut self, parts: &[usize], cycles: &[usize]) -> i128 {
        if cycles.is_empty() {
            return 1;
        }
        let key: Vec<u8> = parts
            .iter()
            .map(|&p| p as u8)
            .chain(std::iter::once(u8::MAX))
            .chain(cycles.iter().map(|&c| c as u8))
            .collect();
        if let Some(&v) = self.memo.get(&key) {
            return v;
        }
        let k = cycles[0];
        let total = if k == 1 && !self.strip_fixed_points {
            degree_i128(parts)
        } else {
            remove_rim_hooks(parts, k).into_iter().map(|(rest, sign)| sign * self.eval(&rest, &cycles[1..])).sum()
        };
        self.memo.insert(key, total);
        total
    }
}

/// Every partition obtained by removing a rim hook of length `k`, with sign
/// `(-1)^{leg length}`.
pub fn remove_rim_hooks(parts: &[usize], k: usize) -> Vec<(Vec<usize>, i128)> {
    let r = parts.len();
    let beta: Vec<usize> = parts.iter().enumerate().map(|(i, &p)| p + (r - 1 - i)).collect();
    let mut out = Vec::new();
    for (i, &b) in beta.iter().enumerate() {
        if b < k || beta.contains(&(b - k)) {
            continue;
        }
        let target = b - k;
        // Beads strictly between target and b; beta is strictly decreasing.
        let crossed = beta[i + 1..].iter().filter(|&&c| c > target).count();
        let mut nb = beta.clone();
        nb[i] = target;
        nb.sort_unstable_by(|a, b| b.cmp(a));
        let rest: Vec<usize> = nb.iter().enumerate().map(|(j, &x)| x - (r - 1 - j)).filter(|&x| x > 0).collect();
        out.push((rest, if crossed % 2 == 0 { 1 } else { -1 }));
    }
    out
}

/// `χ_λ(μ)` with a fresh memo.
pub fn mn_value(lambda: &Partition, mu: &CycleType) -> i128 {
    MnEvaluator::new().value(lambda, mu)
}

fn check_cap(n: usize, cap: usize) -> Result<()> {
    if n > cap {
        return Err(Error::CapExceeded { what: "n", value: n as u64, cap: cap as u64 });
    }
    Ok(())
}

/// Integer character values `values[class][character]` for the given
/// characters and classes.
fn value_grid(lambdas: &[Partition], classes: &[CycleType]) -> Vec<Vec<i128>> {
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        classes
            .par_iter()
            .map_init(MnEvaluator::new, |ev, mu| lambdas.iter().map(|l| ev.value(l, mu)).collect())
            .collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        let mut ev = MnEvaluator::new();
        classes.iter().map(|mu| lambdas.iter().map(|l| ev.value(l, mu)).collect()).collect()
    }
}

pub fn sn_table(n: usize) -> Result<CharacterTable> {
    sn_table_capped(n, DEFAULT_TABLE_CAP)
}

pub fn sn_table_capped(n: usize, cap: usize) -> Result<CharacterTable> {
    if n == 0 {
        return Err(Error::InvalidInput("S_n needs n >= 1".into()));
    }
    check_cap(n, cap)?;
    let lambdas: Vec<Partition> = enumerate_partitions(n).collect();
    let classes = cycle_types(n);
    let grid = value_grid(&lambdas, &classes);
    let irreducibles = lambdas
        .iter()
        .enumerate()
        .map(|(j, l)| Irreducible {
            label: format!("{l}"),
            degree: BigInt::from(degree_hook(l)),
            values: grid.iter().map(|col| AlgebraicNumber::integer(col[j])).collect(),
        })
        .collect();
    Ok(CharacterTable {
        label: format!("S{n}"),
        order: BigInt::from(factorial(n)),
        classes: classes.iter().map(|c| ConjugacyClass { label: c.to_string(), size: c.class_size() }).collect(),
        irreducibles,
    })
}

/// The split values `(ε ± √(ε Π h_i)) / 2` of a self-conjugate label with
/// principal hooks `hooks`.
pub fn split_values(n: usize, hooks: &[usize]) -> (MultiQuadratic, MultiQuadratic) {
    let r = hooks.len();
    let eps: i64 = if ((n - r) / 2).is_multiple_of(2) { 1 } else { -1 };
    let prod: i64 = hooks.iter().map(|&h| h as i64).product();
    let half = rat(1, 2);
    let e = MultiQuadratic::from_integer(eps).scale(&half);
    let root = MultiQuadratic::sqrt(eps * prod).scale(&half);
    (&e + &root, &e - &root)
}

pub fn an_table(n: usize) -> Result<CharacterTable> {
    an_table_capped(n, DEFAULT_TABLE_CAP)
}

/// `A_n` as restriction from `S_n`. A split class `μ` yields `μ+` (the class
/// of the canonical representative `(1 2 … μ₁)(μ₁+1 …)…`) and `μ-`; the label
/// `λ+` of a self-conjugate `λ` takes `(ε + √(ε Π h))/2` on `h(λ)+`.
pub fn an_table_capped(n: usize, cap: usize) -> Result<CharacterTable> {
    if n < 3 {
        return Err(Error::InvalidInput("A_n tables need n >= 3".into()));
    }
    check_cap(n, cap)?;
    let lambdas: Vec<Partition> = enumerate_partitions(n).collect();
    let even: Vec<CycleType> = cycle_types(n).into_iter().filter(CycleType::is_even).collect();
    let grid = value_grid(&lambdas, &even);

    // (S_n class index, Some(is_plus) for split halves)
    let mut classes = Vec::new();
    let mut class_of = Vec::new();
    for (k, mu) in even.iter().enumerate() {
        if mu.splits_in_alternating() {
            let half: BigInt = mu.class_size() / 2;
            classes.push(ConjugacyClass { label: format!("{mu}+"), size: half.clone() });
            class_of.push((k, Some(true)));
            classes.push(ConjugacyClass { label: format!("{mu}-"), size: half });
            class_of.push((k, Some(false)));
        } else {
            classes.push(ConjugacyClass { label: mu.to_string(), size: mu.class_size() });
            class_of.push((k, None));
        }
    }

    let mut irreducibles = Vec::new();
    for (j, l) in lambdas.iter().enumerate() {
        let conj = l.conjugate();
        let degree = BigInt::from(degree_hook(l));
        if conj == *l {
            let hooks = l.principal_hooks();
            let (plus, minus) = split_values(n, &hooks);
            let hook_class = Partition::new(hooks.clone());
            for positive in [true, false] {
                let values = class_of
                    .iter()
                    .map(|&(k, half)| match half {
                        Some(is_plus) if *even[k].partition() == hook_class => {
                            let v = if is_plus == positive { &plus } else { &minus };
                            AlgebraicNumber::from(v.clone())
                        }
                        _ => AlgebraicNumber::Rat(BigRational::new(grid[k][j].into(), 2.into())),
                    })
                    .collect();
                irreducibles.push(Irreducible {
                    label: format!("{l}{}", if positive { "+" } else { "-" }),
                    degree: &degree / 2,
                    values,
                });
            }
        } else if *l > conj {
            irreducibles.push(Irreducible {
                label: format!("{l}"),
                degree,
                values: class_of.iter().map(|&(k, _)| AlgebraicNumber::integer(grid[k][j])).collect(),
            });
        }
    }
    Ok(CharacterTable { label: format!("A{n}"), order: BigInt::from(factorial(n)) / 2, classes, irreducibles })
}

/// Classes of `S_n` on which no irreducible character vanishes.
///
/// Characters are scanned in decreasing degree with an early exit on the
/// first zero. For `n ≥ 3` every result has non-fixed-point shape
/// `(3^a, 2^b)` with `b` even; `S_2` is the exception (its transposition
/// column is `(1, -1)`).
pub fn nonvanishing_classes_sn(n: usize) -> Result<Vec<CycleType>> {
    if n == 0 {
        return Err(Error::InvalidInput("S_n needs n >= 1".into()));
    }
    check_cap(n, COLUMN_SCAN_CAP)?;
    let lambdas = by_decreasing_degree(n);
    let classes = cycle_types(n);
    let keep = crate::par::map(&classes, |mu| {
        let mut ev = MnEvaluator::new();
        lambdas.iter().all(|l| ev.value(l, mu) != 0)
    });
    Ok(classes.into_iter().zip(keep).filter_map(|(c, k)| k.then_some(c)).collect())
}

pub(crate) fn by_decreasing_degree(n: usize) -> Vec<Partition> {
    let mut lambdas: Vec<(BigInt, Partition)> =
        enumerate_partitions(n).map(|l| (BigInt::from(degree_hook(&l)), l)).collect();
    lambdas.sort_by(|a, b| b.0.cmp(&a.0).then_with(|| a.1.cmp(&b.1)));
    lambdas.into_iter().map(|(_, l)| l).collect()
}

/// A character shown to vanish on a class without scanning the column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VanishingCertificate {
    pub class: CycleType,
    pub character: Partition,
    pub reason: CertificateReason,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CertificateReason {
    /// The character is a `t`-core of `n` and the class contains a `t`-cycle.
    Core { t: usize },
    /// The character is self-conjugate and the class is odd.
    SelfConjugate,
}

/// A certificate for classes outside the `(3^a, 2^b)`, `b` even shape, built
/// from a t-core (class with a cycle of length `t ≥ 4`) or a self-conjugate
/// partition (odd class), and verified by evaluating the character.
pub fn vanishing_certificate(mu: &CycleType) -> Option<VanishingCertificate> {
    let n = mu.n();
    let candidate = if let Some(&t) = mu.partition().parts().iter().find(|&&p| p >= 4) {
        find_t_core(n, t).map(|l| (l, CertificateReason::Core { t }))
    } else if !mu.is_even() {
        self_conjugate_partition(n).map(|l| (l, CertificateReason::SelfConjugate))
    } else {
        None
    }?;
    let (character, reason) = candidate;
    (mn_value(&character, mu) == 0).then(|| VanishingCertificate { class: mu.clone(), character, reason })
}

/// `S_n` has a zero in every non-identity column, decided without building
/// the table: classes outside the `(3^a, 2^b)` shape need a verified
/// certificate, the others a full early-exit scan.
pub fn zero_columns_sn(n: usize) -> Result<bool> {
    if n == 0 {
        return Err(Error::InvalidInput("S_n needs n >= 1".into()));
    }
    check_cap(n, COLUMN_SCAN_CAP)?;
    let classes: Vec<CycleType> = cycle_types(n).into_iter().skip(1).collect();
    let (pruned, scanned): (Vec<CycleType>, Vec<CycleType>) =
        classes.into_iter().partition(|mu| !mu.is_three_two_even());
    let mut need_scan = scanned;
    for mu in pruned {
        if vanishing_certificate(&mu).is_none() {
            need_scan.push(mu);
        }
    }
    let lambdas = by_decreasing_degree(n);
    let all_vanish = crate::par::map(&need_scan, |mu| {
        let mut ev = MnEvaluator::new();
        lambdas.iter().any(|l| ev.value(l, mu) == 0)
    });
    Ok(all_vanish.into_iter().all(|v| v))
}

/// Convenience re-export of [`CharacterTable::zero_in_every_nontrivial_column`].
pub fn zero_in_every_nontrivial_column(table: &CharacterTable) -> bool {
    table.zero_in_every_nontrivial_column()
}

/// `true` iff every value is a rational integer.
pub fn is_integral(table: &CharacterTable) -> bool {
    table.irreducibles.iter().all(|c| c.values.iter().all(|v| v.as_rational().is_some_and(|r| r.is_integer())))
}
