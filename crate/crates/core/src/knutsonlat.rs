//! Integer lattice solving by Smith normal form, and the Knutson index
//! computations built on it.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::algnum::AlgebraicNumber;
use crate::charring::{RepRing, VirtualCharacter};
use crate::error::{Error, Result};
use crate::sl2tables::{rho_pm, sl2_table, Sl2Kind, Sl2Param};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows >= 1 && cols >= 1, "matrix dimensions must be positive");
        IntegerMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if r == 0 || c == 0 || rows.iter().any(|row| row.len() != c) {
            return Err(Error::InvalidInput("matrix must be rectangular and non-empty".into()));
        }
        Ok(IntegerMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, other: &IntegerMatrix) -> IntegerMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).filter(|(a, _)| !a.is_zero()).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Determinant by fraction-free elimination (square matrices only).
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut prev = BigInt::one();
        let mut sign = BigInt::one();
        for k in 0..n {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(i) => {
                        a.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)]) / &prev;
                    a[(i, j)] = v;
                }
            }
            prev = a[(k, k)].clone();
        }
        sign * &a[(n - 1, n - 1)]
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self[(i, j)].is_zero()))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// `row[dst] += k · row[src]`.
    fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        for j in 0..self.cols {
            let v = &self[(src, j)] * k;
            self[(dst, j)] += v;
        }
    }

    fn add_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        for i in 0..self.rows {
            let v = &self[(i, src)] * k;
            self[(i, dst)] += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -&self[(i, j)];
            self[(i, j)] = v;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntegerMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntegerMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// `U·M·V = D` with `U`, `V` unimodular and `D` diagonal, `d₁ | d₂ | …`.
#[derive(Clone, Debug)]
pub struct SNFResult {
    pub u: IntegerMatrix,
    pub d: IntegerMatrix,
    pub v: IntegerMatrix,
}

impl SNFResult {
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows.min(self.d.cols)).map(|i| self.d[(i, i)].clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|x| !x.is_zero()).count()
    }

    /// Checks every defining identity of the decomposition of `m`.
    pub fn check(&self, m: &IntegerMatrix) -> bool {
        let diag = self.diagonal();
        let chain = diag.windows(2).all(|w| if w[0].is_zero() { w[1].is_zero() } else { w[1].is_multiple_of(&w[0]) });
        self.u.mul(m).mul(&self.v) == self.d
            && self.d.is_diagonal()
            && diag.iter().all(|x| !x.is_negative())
            && chain
            && self.u.determinant().abs().is_one()
            && self.v.determinant().abs().is_one()
    }
}

/// Smith normal form with smallest-pivot reduction. The returned
/// decomposition is checked before it is returned.
pub fn smith_normal_form(m: &IntegerMatrix) -> SNFResult {
    let (r, c) = (m.rows, m.cols);
    let mut a = m.clone();
    let mut u = IntegerMatrix::identity(r);
    let mut v = IntegerMatrix::identity(c);
    for t in 0..r.min(c) {
        loop {
            let pivot = (t..r)
                .flat_map(|i| (t..c).map(move |j| (i, j)))
                .filter(|&(i, j)| !a[(i, j)].is_zero())
                .min_by(|&x, &y| a[x].abs().cmp(&a[y].abs()));
            let Some((pi, pj)) = pivot else {
                return finish(m, u, a, v);
            };
            a.swap_rows(t, pi);
            u.swap_rows(t, pi);
            a.swap_cols(t, pj);
            v.swap_cols(t, pj);
            let mut clean = true;
            for i in t + 1..r {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let k = -(&a[(i, t)] / &a[(t, t)]);
                a.add_row(i, t, &k);
                u.add_row(i, t, &k);
                clean &= a[(i, t)].is_zero();
            }
            for j in t + 1..c {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let k = -(&a[(t, j)] / &a[(t, t)]);
                a.add_col(j, t, &k);
                v.add_col(j, t, &k);
                clean &= a[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }
            let offender = (t + 1..r).find(|&i| (t + 1..c).any(|j| !a[(i, j)].is_multiple_of(&a[(t, t)])));
            match offender {
                Some(i) => {
                    let one = BigInt::one();
                    a.add_row(t, i, &one);
                    u.add_row(t, i, &one);
                }
                None => break,
            }
        }
        if a[(t, t)].is_negative() {
            a.negate_row(t);
            u.negate_row(t);
        }
    }
    finish(m, u, a, v)
}

fn finish(m: &IntegerMatrix, u: IntegerMatrix, d: IntegerMatrix, v: IntegerMatrix) -> SNFResult {
    let snf = SNFResult { u, d, v };
    assert!(snf.check(m), "Smith normal form identities failed");
    snf
}

/// An integer `x` with `M·x = b`, if one exists.
pub fn solve_integer(m: &IntegerMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    solve_with(m, &smith_normal_form(m), b)
}

fn solve_with(m: &IntegerMatrix, snf: &SNFResult, b: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(b.len(), m.rows, "right-hand side has the wrong length");
    let ub = snf.u.mul_vec(b);
    let diag = snf.diagonal();
    let mut y = vec![BigInt::zero(); m.cols];
    for (i, ubi) in ub.iter().enumerate() {
        let d = diag.get(i).cloned().unwrap_or_default();
        if d.is_zero() {
            if !ubi.is_zero() {
                return None;
            }
        } else {
            let (q, rem) = ubi.div_rem(&d);
            if !rem.is_zero() {
                return None;
            }
            y[i] = q;
        }
    }
    let x = snf.v.mul_vec(&y);
    assert_eq!(m.mul_vec(&x), b, "lattice witness failed to verify");
    Some(x)
}

/// Least `n ≥ 1` with `n·v` in the column lattice of `M`.
pub fn min_multiplier(m: &IntegerMatrix, v: &[BigInt]) -> Option<BigInt> {
    assert_eq!(v.len(), m.rows, "vector has the wrong length");
    let snf = smith_normal_form(m);
    let uv = snf.u.mul_vec(v);
    let diag = snf.diagonal();
    let mut n = BigInt::one();
    for (i, x) in uv.iter().enumerate() {
        let d = diag.get(i).cloned().unwrap_or_default();
        if d.is_zero() {
            if !x.is_zero() {
                return None;
            }
        } else {
            n = n.lcm(&(&d / d.gcd(x)));
        }
    }
    let scaled: Vec<BigInt> = v.iter().map(|x| x * &n).collect();
    solve_with(m, &snf, &scaled)?;
    Some(n)
}

fn fusion_as_matrix(ring: &RepRing, chi: usize) -> Result<IntegerMatrix> {
    IntegerMatrix::from_rows(ring.fusion_matrix(chi)?.matrix.clone())
}

/// A virtual `λ` with `χ ⊗ λ = ρ`, re-verified on every class.
pub fn is_rho_invertible(ring: &RepRing, chi: usize, rho: &VirtualCharacter) -> Result<Option<VirtualCharacter>> {
    let m = fusion_as_matrix(ring, chi)?;
    let Some(x) = solve_integer(&m, &rho.multiplicities) else {
        return Ok(None);
    };
    let lambda = VirtualCharacter::new(x);
    let values = &ring.table().irreducibles[chi].values;
    for (k, v) in values.iter().enumerate() {
        let lhs = v * &ring.evaluate(&lambda, k);
        if lhs != ring.evaluate(rho, k) {
            return Err(Error::Transcription {
                table: ring.table().label.clone(),
                detail: format!(
                    "inverse of {} fails on class {}",
                    ring.table().irreducibles[chi].label,
                    ring.table().classes[k].label
                ),
            });
        }
    }
    Ok(Some(lambda))
}

/// Least `n` such that `χ` is `n·ρ_reg`-invertible; always divides `χ(1)`.
pub fn knutson_index_char(ring: &RepRing, chi: usize) -> Result<BigInt> {
    let m = fusion_as_matrix(ring, chi)?;
    let deg = ring.degrees();
    let n = min_multiplier(&m, &deg).expect("χ(1)·ρ_reg is always reachable");
    assert!(deg[chi].is_multiple_of(&n), "index {n} does not divide the degree {}", deg[chi]);
    Ok(n)
}

/// Per-character indices, in table order.
pub fn knutson_indices(ring: &RepRing) -> Result<Vec<BigInt>> {
    let idx: Vec<usize> = (0..ring.rank()).collect();
    crate::par::map(&idx, |&chi| knutson_index_char(ring, chi)).into_iter().collect()
}

/// `K(G)`, the lcm of the per-character indices.
pub fn knutson_index_group(ring: &RepRing) -> Result<BigInt> {
    Ok(knutson_indices(ring)?.iter().fold(BigInt::one(), |acc, n| acc.lcm(n)))
}

/// `L(G)/|G|`.
pub fn generalized_lower_bound(ring: &RepRing) -> BigRational {
    let t = ring.table();
    BigRational::new(t.lcm_degrees(), t.order.clone())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ZeroColumnCertificate {
    /// `K'(G) = K(G)` = this value.
    #[serde(with = "crate::algnum::bigint_serde")]
    pub index: BigInt,
}

/// When every non-identity column has a zero, `K'(G) = K(G)`; returns the
/// common value.
pub fn zero_column_criterion(ring: &RepRing) -> Result<Option<ZeroColumnCertificate>> {
    if !ring.table().zero_in_every_nontrivial_column() {
        return Ok(None);
    }
    Ok(Some(ZeroColumnCertificate { index: knutson_index_group(ring)? }))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RhoSearchResult {
    pub rho: VirtualCharacter,
    pub degree: BigInt,
    /// `K' = degree / |G|`.
    pub index: BigRational,
}

/// Smallest-degree character `ρ` (degree at most `degree_bound`) for which
/// every irreducible is `ρ`-invertible. Degrees are scanned upward in
/// multiples of `L(G)`; within a degree, multiplicity vectors are scanned
/// lexicographically and must vanish wherever some irreducible vanishes.
pub fn min_rho_search(ring: &RepRing, degree_bound: u64) -> Result<Option<RhoSearchResult>> {
    let table = ring.table();
    if BigInt::from(degree_bound) > table.order {
        return Err(Error::InvalidInput(format!("degree bound {degree_bound} exceeds |G| = {}", table.order)));
    }
    let degrees: Vec<u64> = table
        .degrees()
        .iter()
        .map(|d| u64::try_from(d).map_err(|_| Error::InvalidInput("degree too large".into())))
        .collect::<Result<_>>()?;
    let l = u64::try_from(table.lcm_degrees()).map_err(|_| Error::InvalidInput("L(G) too large".into()))?;
    let constrained: Vec<usize> =
        (1..table.num_classes()).filter(|&k| table.irreducibles.iter().any(|c| c.values[k].is_zero())).collect();
    let matrices: Vec<(IntegerMatrix, SNFResult)> = (0..ring.rank())
        .map(|chi| {
            let m = fusion_as_matrix(ring, chi)?;
            let snf = smith_normal_form(&m);
            Ok((m, snf))
        })
        .collect::<Result<_>>()?;
    let mut degree = l;
    while degree <= degree_bound {
        let mut found = None;
        let mut current = vec![0u64; degrees.len()];
        enumerate_compositions(&degrees, degree, 0, &mut current, &mut |x| {
            let rho = VirtualCharacter::new(x.iter().map(|&m| BigInt::from(m)).collect());
            let vanishes = constrained.iter().all(|&k| ring.evaluate(&rho, k).is_zero());
            if !vanishes {
                return false;
            }
            let ok = matrices.iter().all(|(m, snf)| solve_with(m, snf, &rho.multiplicities).is_some());
            if ok {
                found = Some(rho);
            }
            ok
        });
        if let Some(rho) = found {
            let deg = BigInt::from(degree);
            return Ok(Some(RhoSearchResult {
                index: BigRational::new(deg.clone(), table.order.clone()),
                degree: deg,
                rho,
            }));
        }
        degree += l;
    }
    Ok(None)
}

/// Calls `visit` on every nonnegative `x` with `Σ x_i d_i = target`, in
/// lexicographic order; stops when `visit` returns true.
fn enumerate_compositions(
    d: &[u64],
    target: u64,
    i: usize,
    x: &mut Vec<u64>,
    visit: &mut impl FnMut(&[u64]) -> bool,
) -> bool {
    if i == d.len() {
        return target == 0 && visit(x);
    }
    let max = target / d[i];
    for m in 0..=max {
        x[i] = m;
        if enumerate_compositions(d, target - m * d[i], i + 1, x, visit) {
            return true;
        }
    }
    x[i] = 0;
    false
}

#[derive(Clone, Debug, Serialize)]
pub struct ObstructionReport {
    pub q: u64,
    /// Labels of the two designated characters.
    pub pair: [String; 2],
    /// `[ρ⁺, ρ⁻][character]`: whether an inverse exists.
    pub invertible: [[bool; 2]; 2],
    /// Neither designated character is `ρ_reg`-invertible.
    pub pair_not_regular_invertible: bool,
    pub obstructed: bool,
}

/// For odd `q`, checks that `ρ⁺` and `ρ⁻` each leave one of the designated
/// pair (`θ₁, θ₂` when `q ≡ 1 mod 4`, `χ₁, χ₂` otherwise) without an inverse.
pub fn verify_rho_pm_obstruction(param: &Sl2Param) -> Result<ObstructionReport> {
    if param.is_even() || param.q < 5 {
        return Err(Error::InvalidInput(format!("obstruction check needs odd q ≥ 5, got {}", param.q)));
    }
    let table = sl2_table(param)?;
    let ring = RepRing::new(&table);
    let kinds =
        if param.q % 4 == 1 { [Sl2Kind::Theta(1), Sl2Kind::Theta(2)] } else { [Sl2Kind::Chi(1), Sl2Kind::Chi(2)] };
    let labels = kinds.map(|k| k.to_string());
    let idx = labels.clone().map(|l| table.irreducible_index(&l).expect("designated character exists"));
    let (plus, minus) = rho_pm(&ring)?;
    let reg = ring.regular_character();
    let mut invertible = [[false; 2]; 2];
    for (s, rho) in [&plus, &minus].into_iter().enumerate() {
        for (c, &chi) in idx.iter().enumerate() {
            invertible[s][c] = is_rho_invertible(&ring, chi, rho)?.is_some();
        }
    }
    let mut pair_not_regular_invertible = true;
    for &chi in &idx {
        pair_not_regular_invertible &= is_rho_invertible(&ring, chi, &reg)?.is_none();
    }
    let obstructed = invertible.iter().all(|row| row.iter().any(|x| !x));
    Ok(ObstructionReport { q: param.q, pair: labels, invertible, pair_not_regular_invertible, obstructed })
}

/// The witness `λ` as values, for reports.
pub fn multiplicities_as_numbers(v: &VirtualCharacter) -> Vec<AlgebraicNumber> {
    v.multiplicities.iter().map(|m| AlgebraicNumber::integer(m.clone())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sl2tables::psl2_table;
    use crate::symchar::{an_table, sn_table};
    use crate::table::{CharacterTable, ConjugacyClass, Irreducible};
    use proptest::prelude::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn snf_examples() {
        let id = IntegerMatrix::identity(3);
        assert_eq!(smith_normal_form(&id).d, id);
        let m = IntegerMatrix::from_i64(&[&[2, 0], &[0, 3]]).unwrap();
        assert_eq!(smith_normal_form(&m).diagonal(), ints(&[1, 6]));
        let m = IntegerMatrix::from_i64(&[&[2, 4], &[6, 8]]).unwrap();
        assert_eq!(smith_normal_form(&m).diagonal(), ints(&[2, 4]));
        let z = IntegerMatrix::zeros(2, 3);
        assert_eq!(smith_normal_form(&z).rank(), 0);
    }

    #[test]
    fn determinant_oracle() {
        let m = IntegerMatrix::from_i64(&[&[0, 2, 1], &[3, 1, 0], &[1, 1, 1]]).unwrap();
        // cofactor expansion by hand: 0·1 − 2·(3−0) + 1·(3−1) = −4
        assert_eq!(m.determinant(), BigInt::from(-4));
    }

    #[test]
    fn solve_examples() {
        let id = IntegerMatrix::identity(3);
        assert_eq!(solve_integer(&id, &ints(&[4, -1, 7])), Some(ints(&[4, -1, 7])));
        let two = IntegerMatrix::from_i64(&[&[2, 0], &[0, 2]]).unwrap();
        assert_eq!(solve_integer(&two, &ints(&[1, 0])), None);
        assert_eq!(min_multiplier(&two, &ints(&[1, 1])), Some(BigInt::from(2)));
        assert_eq!(min_multiplier(&id, &ints(&[5, 0, 1])), Some(BigInt::one()));
        let rank_one = IntegerMatrix::from_i64(&[&[1, 1], &[1, 1]]).unwrap();
        assert_eq!(min_multiplier(&rank_one, &ints(&[1, 2])), None);
    }

    fn matrix_strategy() -> impl Strategy<Value = IntegerMatrix> {
        (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-9i64..10, r * c).prop_map(move |data| IntegerMatrix {
                rows: r,
                cols: c,
                data: data.into_iter().map(BigInt::from).collect(),
            })
        })
    }

    proptest! {
        #[test]
        fn snf_identities(m in matrix_strategy()) {
            let snf = smith_normal_form(&m);
            prop_assert!(snf.check(&m));
        }

        #[test]
        fn solve_agrees_with_construction(m in matrix_strategy(), x in proptest::collection::vec(-5i64..6, 4)) {
            let x: Vec<BigInt> = x.into_iter().take(m.cols()).map(BigInt::from).collect();
            prop_assume!(x.len() == m.cols());
            let b = m.mul_vec(&x);
            let w = solve_integer(&m, &b);
            prop_assert!(w.is_some());
            prop_assert_eq!(m.mul_vec(&w.unwrap()), b);
        }

        #[test]
        fn min_multiplier_is_minimal(m in matrix_strategy(), v in proptest::collection::vec(-6i64..7, 4)) {
            let v: Vec<BigInt> = v.into_iter().take(m.rows()).map(BigInt::from).collect();
            prop_assume!(v.len() == m.rows());
            if let Some(n) = min_multiplier(&m, &v) {
                let n: i64 = (&n).try_into().unwrap();
                for k in 1..n {
                    let scaled: Vec<BigInt> = v.iter().map(|x| x * k).collect();
                    prop_assert!(solve_integer(&m, &scaled).is_none());
                }
            }
        }
    }

    /// Exhaustive search over λ with entries in `[−20, 20]`, split in halves.
    fn brute_force_solvable(m: &IntegerMatrix, b: &[BigInt]) -> bool {
        use std::collections::HashSet;
        let c = m.cols();
        let (lo, hi) = (c / 2, c - c / 2);
        let partial = |cols: std::ops::Range<usize>| {
            let mut acc: Vec<Vec<i64>> = vec![vec![0; m.rows()]];
            for j in cols {
                let mut next = Vec::new();
                for s in &acc {
                    for k in -20i64..=20 {
                        next.push((0..m.rows()).map(|i| s[i] + k * i64::try_from(&m[(i, j)]).unwrap()).collect());
                    }
                }
                acc = next;
            }
            acc
        };
        let left: HashSet<Vec<i64>> = partial(0..lo).into_iter().collect();
        let target: Vec<i64> = b.iter().map(|x| i64::try_from(x).unwrap()).collect();
        partial(lo..lo + hi)
            .into_iter()
            .any(|s| left.contains(&target.iter().zip(&s).map(|(t, x)| t - x).collect::<Vec<_>>()))
    }

    #[test]
    fn solver_matches_brute_force_on_small_tables() {
        let tables: Vec<CharacterTable> = vec![
            sn_table(3).unwrap(),
            sn_table(4).unwrap(),
            an_table(4).unwrap(),
            an_table(5).unwrap(),
            sl2_table(&Sl2Param::new(2).unwrap()).unwrap(),
            sl2_table(&Sl2Param::new(4).unwrap()).unwrap(),
        ];
        for t in &tables {
            let ring = RepRing::new(t);
            let r = ring.rank();
            assert!(r <= 5);
            let reg = ring.regular_character();
            for chi in 0..r {
                let m = fusion_as_matrix(&ring, chi).unwrap();
                for target in [reg.multiplicities.clone(), reg.scale(&BigInt::from(2)).multiplicities, ring.degrees()] {
                    assert_eq!(
                        solve_integer(&m, &target).is_some(),
                        brute_force_solvable(&m, &target),
                        "{} χ={chi}",
                        t.label
                    );
                }
            }
        }
    }

    #[test]
    fn s3_standard_is_regular_invertible() {
        let t = sn_table(3).unwrap();
        let ring = RepRing::new(&t);
        let std = t.irreducible_index("(2,1)").unwrap();
        let reg = ring.regular_character();
        assert!(is_rho_invertible(&ring, std, &reg).unwrap().is_some());
        let triv = t.trivial_index().unwrap();
        assert_eq!(is_rho_invertible(&ring, triv, &reg).unwrap(), Some(reg));
    }

    #[test]
    fn sl2_5_degree_four_not_regular_invertible() {
        let p = Sl2Param::new(5).unwrap();
        let t = sl2_table(&p).unwrap();
        let ring = RepRing::new(&t);
        let theta = t.irreducible_index("theta_1").unwrap();
        let m = fusion_as_matrix(&ring, theta).unwrap();
        assert_eq!(min_multiplier(&m, &ring.degrees()), Some(BigInt::from(2)));
        let reg = ring.regular_character();
        assert!(is_rho_invertible(&ring, theta, &reg).unwrap().is_none());
        let rho = crate::sl2tables::rho_theorem_character(&ring).unwrap();
        for chi in 0..ring.rank() {
            assert!(is_rho_invertible(&ring, chi, &rho).unwrap().is_some());
        }
        let eta = t.irreducible_index("eta1").unwrap();
        assert!(is_rho_invertible(&ring, eta, &reg).unwrap().is_some());
        assert_eq!(knutson_index_group(&ring).unwrap(), BigInt::from(2));
        assert_eq!(generalized_lower_bound(&ring), BigRational::new(1.into(), 2.into()));
    }

    #[test]
    fn group_indices() {
        let k = |t: &CharacterTable| knutson_index_group(&RepRing::new(t)).unwrap();
        assert_eq!(k(&sl2_table(&Sl2Param::new(4).unwrap()).unwrap()), BigInt::one());
        assert_eq!(k(&psl2_table(&Sl2Param::new(7).unwrap()).unwrap()), BigInt::one());
        for n in 1..=7 {
            assert_eq!(k(&sn_table(n).unwrap()), BigInt::one(), "S{n}");
        }
    }

    #[test]
    fn bounds_and_zero_columns() {
        let s6 = sn_table(6).unwrap();
        assert_eq!(generalized_lower_bound(&RepRing::new(&s6)), BigRational::one());
        let s3 = sn_table(3).unwrap();
        let ring = RepRing::new(&s3);
        assert_eq!(generalized_lower_bound(&ring), BigRational::new(1.into(), 3.into()));
        assert_eq!(zero_column_criterion(&ring).unwrap(), None);
        let p7 = psl2_table(&Sl2Param::new(7).unwrap()).unwrap();
        let cert = zero_column_criterion(&RepRing::new(&p7)).unwrap().unwrap();
        assert_eq!(cert.index, BigInt::one());
    }

    #[test]
    fn small_rho_search() {
        let s3 = sl2_table(&Sl2Param::new(2).unwrap()).unwrap();
        let ring = RepRing::new(&s3);
        let res = min_rho_search(&ring, 6).unwrap().unwrap();
        assert_eq!(res.index, BigRational::new(1.into(), 3.into()));
        let std = s3.irreducible_index("psi").unwrap();
        assert_eq!(res.rho, VirtualCharacter::basis(3, std));

        let trivial = CharacterTable {
            label: "1".into(),
            order: BigInt::one(),
            classes: vec![ConjugacyClass { label: "1".into(), size: BigInt::one() }],
            irreducibles: vec![Irreducible {
                label: "1".into(),
                degree: BigInt::one(),
                values: vec![AlgebraicNumber::one()],
            }],
        };
        let ring = RepRing::new(&trivial);
        let res = min_rho_search(&ring, 1).unwrap().unwrap();
        assert_eq!(res.index, BigRational::one());
    }

    #[test]
    fn monotonicity_spot_check() {
        let t = sn_table(4).unwrap();
        let ring = RepRing::new(&t);
        let reg = ring.regular_character();
        for chi in 0..ring.rank() {
            assert!(is_rho_invertible(&ring, chi, &reg).unwrap().is_some());
            for mu in 0..ring.rank() {
                let extra = VirtualCharacter::new(ring.tensor_decompose(chi, mu).unwrap());
                assert!(is_rho_invertible(&ring, chi, &reg.add(&extra)).unwrap().is_some());
            }
        }
    }
}
