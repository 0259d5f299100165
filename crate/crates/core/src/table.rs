//! Character tables with exact values.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algnum::{bigint_serde, AlgebraicNumber};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjugacyClass {
    pub label: String,
    #[serde(with = "bigint_serde")]
    pub size: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Irreducible {
    pub label: String,
    #[serde(with = "bigint_serde")]
    pub degree: BigInt,
    /// Values aligned with [`CharacterTable::classes`].
    pub values: Vec<AlgebraicNumber>,
}

/// An exact character table. Class `0` is always the identity class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterTable {
    pub label: String,
    #[serde(with = "bigint_serde")]
    pub order: BigInt,
    pub classes: Vec<ConjugacyClass>,
    pub irreducibles: Vec<Irreducible>,
}

impl CharacterTable {
    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn num_irreducibles(&self) -> usize {
        self.irreducibles.len()
    }

    pub fn degrees(&self) -> Vec<BigInt> {
        self.irreducibles.iter().map(|c| c.degree.clone()).collect()
    }

    pub fn value(&self, chi: usize, class: usize) -> &AlgebraicNumber {
        &self.irreducibles[chi].values[class]
    }

    pub fn irreducible_index(&self, label: &str) -> Option<usize> {
        self.irreducibles.iter().position(|c| c.label == label)
    }

    pub fn class_index(&self, label: &str) -> Option<usize> {
        self.classes.iter().position(|c| c.label == label)
    }

    /// Index of the trivial character.
    pub fn trivial_index(&self) -> Option<usize> {
        self.irreducibles.iter().position(|c| c.values.iter().all(|v| *v == AlgebraicNumber::one()))
    }

    /// Least common multiple of the irreducible degrees, `L(G)`.
    pub fn lcm_degrees(&self) -> BigInt {
        self.irreducibles.iter().fold(BigInt::one(), |acc, c| acc.lcm(&c.degree))
    }

    /// `(1/|G|) Σ_k |C_k| x_k conj(y_k)` over raw value rows.
    pub fn pairing(&self, x: &[AlgebraicNumber], y: &[AlgebraicNumber]) -> AlgebraicNumber {
        let mut acc = AlgebraicNumber::zero();
        for ((cl, a), b) in self.classes.iter().zip(x).zip(y) {
            if a.is_zero() || b.is_zero() {
                continue;
            }
            let term = (a * &b.conj()).scale(&BigRational::from_integer(cl.size.clone()));
            acc = &acc + &term;
        }
        acc.scale(&BigRational::new(BigInt::one(), self.order.clone())).simplify()
    }

    /// Whether every non-identity class has a vanishing irreducible.
    /// Vacuously true for the trivial group.
    pub fn zero_in_every_nontrivial_column(&self) -> bool {
        (1..self.num_classes()).all(|k| self.irreducibles.iter().any(|c| c.values[k].is_zero()))
    }

    /// Checks the structural identities and both orthogonality relations
    /// exactly; the first violation is reported.
    pub fn validate(&self) -> Result<()> {
        let fail = |detail: String| Error::Transcription { table: self.label.clone(), detail };
        let r = self.num_irreducibles();
        let c = self.num_classes();
        if r != c {
            return Err(fail(format!("{r} irreducibles but {c} classes")));
        }
        let total: BigInt = self.classes.iter().map(|k| &k.size).sum();
        if total != self.order {
            return Err(fail(format!("class sizes sum to {total}, not {}", self.order)));
        }
        let squares: BigInt = self.irreducibles.iter().map(|x| &x.degree * &x.degree).sum();
        if squares != self.order {
            return Err(fail(format!("squared degrees sum to {squares}, not {}", self.order)));
        }
        for chi in &self.irreducibles {
            if chi.values.len() != c {
                return Err(fail(format!("{} has {} values", chi.label, chi.values.len())));
            }
            if chi.values[0] != AlgebraicNumber::integer(chi.degree.clone()) {
                return Err(fail(format!("{}: identity value differs from degree", chi.label)));
            }
        }
        self.check_rows().map_err(fail)?;
        self.check_columns().map_err(fail)?;
        Ok(())
    }

    fn check_rows(&self) -> std::result::Result<(), String> {
        let r = self.num_irreducibles();
        let pairs: Vec<(usize, usize)> = (0..r).flat_map(|i| (i..r).map(move |j| (i, j))).collect();
        let bad = crate::par::find_map_first(&pairs, |&(i, j)| {
            let ip = self.pairing(&self.irreducibles[i].values, &self.irreducibles[j].values);
            let expected = if i == j { AlgebraicNumber::one() } else { AlgebraicNumber::zero() };
            (ip != expected).then(|| {
                format!("row orthogonality: <{}, {}> = {ip}", self.irreducibles[i].label, self.irreducibles[j].label)
            })
        });
        bad.map_or(Ok(()), Err)
    }

    fn check_columns(&self) -> std::result::Result<(), String> {
        let c = self.num_classes();
        let conj: Vec<Vec<AlgebraicNumber>> =
            self.irreducibles.iter().map(|x| x.values.iter().map(AlgebraicNumber::conj).collect()).collect();
        let pairs: Vec<(usize, usize)> = (0..c).flat_map(|i| (i..c).map(move |j| (i, j))).collect();
        let bad = crate::par::find_map_first(&pairs, |&(g, h)| {
            let mut sum = AlgebraicNumber::zero();
            for (x, xc) in self.irreducibles.iter().zip(&conj) {
                sum = &sum + &(&x.values[g] * &xc[h]);
            }
            let expected = if g == h {
                let (q, rem) = self.order.div_rem(&self.classes[g].size);
                if !rem.is_zero() {
                    return Some(format!("class {} size does not divide |G|", self.classes[g].label));
                }
                AlgebraicNumber::integer(q)
            } else {
                AlgebraicNumber::zero()
            };
            (sum != expected).then(|| {
                format!("column orthogonality: ({}, {}) sums to {sum}", self.classes[g].label, self.classes[h].label)
            })
        });
        bad.map_or(Ok(()), Err)
    }
}
