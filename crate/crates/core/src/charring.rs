//! The representation ring over a character table: virtual characters,
//! inner products, tensor decompositions and fusion matrices.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::algnum::AlgebraicNumber;
use crate::error::{Error, Result};
use crate::table::CharacterTable;

/// Integer combination of the irreducibles of one table, in table order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VirtualCharacter {
    pub multiplicities: Vec<BigInt>,
}

impl VirtualCharacter {
    pub fn new(multiplicities: Vec<BigInt>) -> Self {
        VirtualCharacter { multiplicities }
    }

    pub fn zero(len: usize) -> Self {
        VirtualCharacter { multiplicities: vec![BigInt::zero(); len] }
    }

    pub fn basis(len: usize, index: usize) -> Self {
        let mut v = Self::zero(len);
        v.multiplicities[index] = BigInt::one();
        v
    }

    pub fn len(&self) -> usize {
        self.multiplicities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.multiplicities.is_empty()
    }

    pub fn degree(&self, table: &CharacterTable) -> BigInt {
        self.multiplicities.iter().zip(&table.irreducibles).map(|(m, c)| m * &c.degree).sum()
    }

    pub fn is_character(&self) -> bool {
        self.multiplicities.iter().all(|m| !m.is_negative())
    }

    pub fn add(&self, other: &Self) -> Self {
        VirtualCharacter {
            multiplicities: self.multiplicities.iter().zip(&other.multiplicities).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        VirtualCharacter { multiplicities: self.multiplicities.iter().map(|a| a * k).collect() }
    }
}

/// Tensor multiplicities for a fixed irreducible `a`:
/// `matrix[b][c]` is the multiplicity of `χ_b` in `χ_a ⊗ χ_c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FusionMatrix {
    pub index: usize,
    pub matrix: Vec<Vec<BigInt>>,
}

impl FusionMatrix {
    pub fn size(&self) -> usize {
        self.matrix.len()
    }

    pub fn column(&self, c: usize) -> Vec<BigInt> {
        self.matrix.iter().map(|row| row[c].clone()).collect()
    }

    /// `χ_a ⊗ λ` as a multiplicity vector.
    pub fn apply(&self, lambda: &[BigInt]) -> Vec<BigInt> {
        self.matrix.iter().map(|row| row.iter().zip(lambda).map(|(m, x)| m * x).sum()).collect()
    }

    /// Same as [`apply`](Self::apply) with rational coefficients.
    pub fn apply_rational(&self, lambda: &[BigRational]) -> Vec<BigRational> {
        self.matrix
            .iter()
            .map(|row| row.iter().zip(lambda).fold(BigRational::zero(), |acc, (m, x)| acc + x * m))
            .collect()
    }
}

enum Values {
    /// All values rational integers (e.g. symmetric groups); real-valued.
    Integral(Vec<Vec<i128>>, Vec<i128>, i128),
    General,
}

/// A table together with lazily computed fusion matrices.
pub struct RepRing<'t> {
    table: &'t CharacterTable,
    fusion: Vec<OnceLock<FusionMatrix>>,
    /// `|C_k| · conj(χ_b(k))`, indexed `[b][k]`.
    weighted_conj: Vec<Vec<AlgebraicNumber>>,
    values: Values,
}

impl<'t> RepRing<'t> {
    pub fn new(table: &'t CharacterTable) -> Self {
        let weighted_conj = table
            .irreducibles
            .iter()
            .map(|chi| {
                chi.values
                    .iter()
                    .zip(&table.classes)
                    .map(|(v, cl)| v.conj().scale(&BigRational::from_integer(cl.size.clone())))
                    .collect()
            })
            .collect();
        RepRing {
            table,
            fusion: (0..table.num_irreducibles()).map(|_| OnceLock::new()).collect(),
            weighted_conj,
            values: integral_values(table),
        }
    }

    pub fn table(&self) -> &'t CharacterTable {
        self.table
    }

    pub fn rank(&self) -> usize {
        self.table.num_irreducibles()
    }

    pub fn degrees(&self) -> Vec<BigInt> {
        self.table.degrees()
    }

    /// Values of `x` on every class.
    pub fn class_function(&self, x: &VirtualCharacter) -> Vec<AlgebraicNumber> {
        (0..self.table.num_classes()).map(|k| self.evaluate(x, k)).collect()
    }

    pub fn evaluate(&self, x: &VirtualCharacter, class: usize) -> AlgebraicNumber {
        let mut acc = AlgebraicNumber::zero();
        for (m, chi) in x.multiplicities.iter().zip(&self.table.irreducibles) {
            if !m.is_zero() {
                acc = &acc + &chi.values[class].scale(&BigRational::from_integer(m.clone()));
            }
        }
        acc.simplify()
    }

    /// `Σ_b ⟨f, χ_b⟩ χ_b` for a class function `f`, with every coefficient
    /// required to be an integer.
    pub fn decompose(&self, f: &[AlgebraicNumber]) -> Result<Vec<BigInt>> {
        (0..self.rank())
            .map(|b| {
                let mut acc = AlgebraicNumber::zero();
                for (v, w) in f.iter().zip(&self.weighted_conj[b]) {
                    if !v.is_zero() && !w.is_zero() {
                        acc = &acc + &(v * w);
                    }
                }
                self.to_integer(acc, || format!("<f, {}>", self.table.irreducibles[b].label))
            })
            .collect()
    }

    fn to_integer(&self, sum: AlgebraicNumber, what: impl Fn() -> String) -> Result<BigInt> {
        let r = sum.as_rational().ok_or_else(|| Error::NonIntegral(format!("{} is irrational", what())))?;
        let r = r / BigRational::from_integer(self.table.order.clone());
        if !r.is_integer() {
            return Err(Error::NonIntegral(format!("{} = {r}", what())));
        }
        Ok(r.to_integer())
    }

    /// `⟨x, y⟩`, computed from class values.
    pub fn inner_product(&self, x: &VirtualCharacter, y: &VirtualCharacter) -> Result<BigInt> {
        let fx = self.class_function(x);
        let fy = self.class_function(y);
        let mut acc = AlgebraicNumber::zero();
        for ((a, b), cl) in fx.iter().zip(&fy).zip(&self.table.classes) {
            if !a.is_zero() && !b.is_zero() {
                acc = &acc + &(a * &b.conj()).scale(&BigRational::from_integer(cl.size.clone()));
            }
        }
        self.to_integer(acc, || "inner product".to_string())
    }

    /// Multiplicities of every irreducible in `χ_a ⊗ χ_c`.
    pub fn tensor_decompose(&self, a: usize, c: usize) -> Result<Vec<BigInt>> {
        if let Values::Integral(vals, weights, order) = &self.values {
            if let Some(v) = integral_decompose(vals, weights, *order, a, c) {
                return check_nonnegative(v, a, c);
            }
        }
        let ta = &self.table.irreducibles[a].values;
        let tc = &self.table.irreducibles[c].values;
        let product: Vec<AlgebraicNumber> = ta.iter().zip(tc).map(|(x, y)| x * y).collect();
        check_nonnegative(self.decompose(&product)?, a, c)
    }

    /// Fusion matrix of `χ_a`, computed once and cached.
    pub fn fusion_matrix(&self, a: usize) -> Result<&FusionMatrix> {
        if let Some(m) = self.fusion[a].get() {
            return Ok(m);
        }
        let cols: Vec<usize> = (0..self.rank()).collect();
        let columns = crate::par::map(&cols, |&c| self.tensor_decompose(a, c));
        let columns = columns.into_iter().collect::<Result<Vec<_>>>()?;
        let r = self.rank();
        let matrix = (0..r).map(|b| (0..r).map(|c| columns[c][b].clone()).collect()).collect();
        let fm = FusionMatrix { index: a, matrix };
        self.check_fusion(&fm)?;
        Ok(self.fusion[a].get_or_init(|| fm))
    }

    fn check_fusion(&self, fm: &FusionMatrix) -> Result<()> {
        let deg = self.degrees();
        for c in 0..self.rank() {
            let d: BigInt = (0..self.rank()).map(|b| &fm.matrix[b][c] * &deg[b]).sum();
            if d != &deg[fm.index] * &deg[c] {
                return Err(Error::Transcription {
                    table: self.table.label.clone(),
                    detail: format!("degree identity fails for fusion column {c} of {}", fm.index),
                });
            }
        }
        Ok(())
    }

    /// `ρ_reg = Σ χ(1) χ`; checked to be `|G|` at the identity, zero elsewhere.
    pub fn regular_character(&self) -> VirtualCharacter {
        let reg = VirtualCharacter::new(self.degrees());
        for k in 0..self.table.num_classes() {
            let expected =
                if k == 0 { AlgebraicNumber::integer(self.table.order.clone()) } else { AlgebraicNumber::zero() };
            assert_eq!(self.evaluate(&reg, k), expected, "regular character fails on class {k}");
        }
        reg
    }
}

fn check_nonnegative(v: Vec<BigInt>, a: usize, c: usize) -> Result<Vec<BigInt>> {
    if let Some(b) = v.iter().position(|m| m.is_negative()) {
        return Err(Error::NonIntegral(format!(
            "negative multiplicity {} of irreducible {b} in product ({a}, {c})",
            v[b]
        )));
    }
    Ok(v)
}

fn integral_values(table: &CharacterTable) -> Values {
    let mut vals = Vec::with_capacity(table.num_irreducibles());
    for chi in &table.irreducibles {
        let mut row = Vec::with_capacity(chi.values.len());
        for v in &chi.values {
            match v {
                AlgebraicNumber::Rat(r) if r.is_integer() => match r.to_integer().to_i128() {
                    Some(x) => row.push(x),
                    None => return Values::General,
                },
                _ => return Values::General,
            }
        }
        vals.push(row);
    }
    let weights: Option<Vec<i128>> = table.classes.iter().map(|c| c.size.to_i128()).collect();
    match (weights, table.order.to_i128()) {
        (Some(w), Some(o)) => Values::Integral(vals, w, o),
        _ => Values::General,
    }
}

/// Checked `i128` fast path; `None` on overflow.
fn integral_decompose(vals: &[Vec<i128>], weights: &[i128], order: i128, a: usize, c: usize) -> Option<Vec<BigInt>> {
    let prod: Vec<i128> = vals[a]
        .iter()
        .zip(&vals[c])
        .zip(weights)
        .map(|((x, y), w)| x.checked_mul(*y)?.checked_mul(*w))
        .collect::<Option<_>>()?;
    let mut out = Vec::with_capacity(vals.len());
    for row in vals {
        let mut s: i128 = 0;
        for (p, v) in prod.iter().zip(row) {
            s = s.checked_add(p.checked_mul(*v)?)?;
        }
        let (q, r) = s.div_rem(&order);
        if r != 0 {
            return None;
        }
        out.push(BigInt::from(q));
    }
    Some(out)
}
