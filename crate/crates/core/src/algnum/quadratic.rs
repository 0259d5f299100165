use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::numtheory::factorize;

/// A finite `Q`-linear combination of square roots of squarefree integers.
///
/// Terms are kept sorted by radicand with no zero coefficients, so structural
/// equality is numeric equality. `√d` for `d < 0` means `i·√|d|`; radicand `1`
/// carries the rational part.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct MultiQuadratic {
    terms: Vec<(i64, BigRational)>,
}

/// Splits `d` into `(g, s)` with `d = g² · s` and `s` squarefree (sign kept).
pub fn squarefree_part(d: i64) -> (u64, i64) {
    assert!(d != 0, "radicand must be nonzero");
    let mut g = 1u64;
    let mut s = 1i64;
    for &(p, e) in factorize(d.unsigned_abs()).pairs() {
        g *= p.pow(e / 2);
        if e % 2 == 1 {
            s *= p as i64;
        }
    }
    (g, s * d.signum())
}

impl MultiQuadratic {
    pub fn zero() -> Self {
        MultiQuadratic { terms: Vec::new() }
    }

    pub fn from_rational(r: BigRational) -> Self {
        Self::from_terms(vec![(1, r)])
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(n.into()))
    }

    /// `√d` for any nonzero integer `d`.
    pub fn sqrt(d: i64) -> Self {
        let (g, s) = squarefree_part(d);
        Self::from_terms(vec![(s, BigRational::from_integer(g.into()))])
    }

    /// Builds from `(squarefree radicand, coefficient)` pairs, merging duplicates.
    pub fn from_terms(mut raw: Vec<(i64, BigRational)>) -> Self {
        raw.sort_by_key(|t| t.0);
        let mut terms: Vec<(i64, BigRational)> = Vec::with_capacity(raw.len());
        for (d, c) in raw {
            match terms.last_mut() {
                Some((ld, lc)) if *ld == d => *lc += c,
                _ => terms.push((d, c)),
            }
        }
        terms.retain(|(_, c)| !c.is_zero());
        MultiQuadratic { terms }
    }

    pub fn terms(&self) -> &[(i64, BigRational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn rational_part(&self) -> BigRational {
        self.terms.iter().find(|(d, _)| *d == 1).map(|(_, c)| c.clone()).unwrap_or_else(BigRational::zero)
    }

    /// `Some(r)` when the number is rational.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self.terms.as_slice() {
            [] => Some(BigRational::zero()),
            [(1, c)] => Some(c.clone()),
            _ => None,
        }
    }

    /// Complex conjugation: negates the coefficients of imaginary radicands.
    pub fn conj(&self) -> Self {
        MultiQuadratic { terms: self.terms.iter().map(|(d, c)| (*d, if *d < 0 { -c } else { c.clone() })).collect() }
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        MultiQuadratic { terms: self.terms.iter().map(|(d, c)| (*d, c * k)).collect() }
    }

    pub fn to_complex(&self) -> Complex64 {
        self.terms.iter().fold(Complex64::new(0.0, 0.0), |acc, (d, c)| {
            let c = c.to_f64().unwrap_or(f64::NAN);
            let r = (d.unsigned_abs() as f64).sqrt() * c;
            acc + if *d < 0 { Complex64::new(0.0, r) } else { Complex64::new(r, 0.0) }
        })
    }
}

impl Add for &MultiQuadratic {
    type Output = MultiQuadratic;

    fn add(self, rhs: &MultiQuadratic) -> MultiQuadratic {
        let mut terms = Vec::with_capacity(self.terms.len() + rhs.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < rhs.terms.len() {
            match (self.terms.get(i), rhs.terms.get(j)) {
                (Some(a), Some(b)) if a.0 == b.0 => {
                    let c = &a.1 + &b.1;
                    if !c.is_zero() {
                        terms.push((a.0, c));
                    }
                    i += 1;
                    j += 1;
                }
                (Some(a), Some(b)) if a.0 < b.0 => {
                    terms.push(a.clone());
                    i += 1;
                }
                (Some(_), Some(b)) => {
                    terms.push(b.clone());
                    j += 1;
                }
                (Some(a), None) => {
                    terms.push(a.clone());
                    i += 1;
                }
                (None, Some(b)) => {
                    terms.push(b.clone());
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        MultiQuadratic { terms }
    }
}

impl Neg for &MultiQuadratic {
    type Output = MultiQuadratic;

    fn neg(self) -> MultiQuadratic {
        MultiQuadratic { terms: self.terms.iter().map(|(d, c)| (*d, -c)).collect() }
    }
}

impl Sub for &MultiQuadratic {
    type Output = MultiQuadratic;

    fn sub(self, rhs: &MultiQuadratic) -> MultiQuadratic {
        self + &(-rhs)
    }
}

impl Mul for &MultiQuadratic {
    type Output = MultiQuadratic;

    fn mul(self, rhs: &MultiQuadratic) -> MultiQuadratic {
        // Rational operands are by far the common case in A_n tables.
        if let [(1, a)] = self.terms.as_slice() {
            return rhs.scale(a);
        }
        if let [(1, b)] = rhs.terms.as_slice() {
            return self.scale(b);
        }
        let mut raw = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for (d1, c1) in &self.terms {
            for (d2, c2) in &rhs.terms {
                // √d1·√d2 = ±√(d1 d2); both imaginary gives i² = -1.
                let sign: i64 = if *d1 < 0 && *d2 < 0 { -1 } else { 1 };
                let prod = d1 * d2;
                let g = d1.unsigned_abs().gcd(&d2.unsigned_abs());
                // d1, d2 squarefree: d1 d2 = g² · (d1 d2 / g²), the latter squarefree.
                let s = prod / (g * g) as i64;
                let coeff = c1 * c2 * BigRational::from_integer(BigInt::from(sign * g as i64));
                raw.push((s, coeff));
            }
        }
        MultiQuadratic::from_terms(raw)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for MultiQuadratic {
            type Output = MultiQuadratic;
            fn $m(self, rhs: MultiQuadratic) -> MultiQuadratic {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for MultiQuadratic {
    /// Renders over a common denominator, e.g. `(1+√5)/2` or `-√-3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let den = self.terms.iter().fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
        let mut body = String::new();
        // rational part first
        let ordered = self.terms.iter().filter(|t| t.0 == 1).chain(self.terms.iter().filter(|t| t.0 != 1));
        for (i, (d, c)) in ordered.enumerate() {
            let num = c.numer() * (&den / c.denom());
            let neg = num.is_negative();
            let abs = num.abs();
            if i > 0 {
                body.push(if neg { '-' } else { '+' });
            } else if neg {
                body.push('-');
            }
            if *d == 1 {
                body.push_str(&abs.to_string());
            } else {
                if !abs.is_one() {
                    body.push_str(&abs.to_string());
                }
                body.push_str(&format!("√{d}"));
            }
        }
        if den.is_one() {
            write!(f, "{body}")
        } else if self.terms.len() == 1 {
            write!(f, "{body}/{den}")
        } else {
            write!(f, "({body})/{den}")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn golden(sign: i64) -> MultiQuadratic {
        &MultiQuadratic::from_rational(rat(1, 2)) + &MultiQuadratic::sqrt(5).scale(&rat(sign, 2))
    }

    #[test]
    fn radical_products() {
        let r5 = MultiQuadratic::sqrt(5);
        assert_eq!(&r5 * &r5, MultiQuadratic::from_integer(5));
        assert_eq!(&MultiQuadratic::sqrt(2) * &MultiQuadratic::sqrt(3), MultiQuadratic::sqrt(6));
        assert_eq!(&golden(1) * &golden(-1), MultiQuadratic::from_integer(-1));
        let i = MultiQuadratic::sqrt(-1);
        assert_eq!(&i * &i, MultiQuadratic::from_integer(-1));
        assert_eq!(MultiQuadratic::sqrt(12), MultiQuadratic::sqrt(3).scale(&rat(2, 1)));
        assert_eq!(&MultiQuadratic::sqrt(-3) * &MultiQuadratic::sqrt(-6), MultiQuadratic::sqrt(2).scale(&rat(-3, 1)));
    }

    #[test]
    fn display() {
        assert_eq!(golden(1).to_string(), "(1+√5)/2");
        assert_eq!(golden(-1).to_string(), "(1-√5)/2");
        assert_eq!(MultiQuadratic::from_integer(-3).to_string(), "-3");
        assert_eq!(MultiQuadratic::zero().to_string(), "0");
    }

    #[test]
    fn approximation() {
        let z = golden(1).to_complex();
        assert!((z.re - 1.618_033_988_7).abs() < 1e-9 && z.im == 0.0);
        let z = MultiQuadratic::from_rational(rat(1, 2)).to_complex();
        assert_eq!(z, Complex64::new(0.5, 0.0));
    }

    fn arb_mq() -> impl Strategy<Value = MultiQuadratic> {
        let radicands = prop::sample::select(vec![1i64, 2, 3, 5, 6, -1, -3, -7, 10]);
        prop::collection::vec((radicands, -6i64..=6, 1i64..=4), 0..4)
            .prop_map(|ts| MultiQuadratic::from_terms(ts.into_iter().map(|(d, n, q)| (d, rat(n, q))).collect()))
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_mq(), b in arb_mq(), c in arb_mq()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn conjugation(a in arb_mq(), b in arb_mq()) {
            prop_assert_eq!(a.conj().conj(), a.clone());
            prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
            let n = (&a * &a.conj()).to_complex();
            prop_assert!(n.im.abs() < 1e-9);
            prop_assert!(n.re > -1e-9);
            let exact = a.to_complex();
            let conj = a.conj().to_complex();
            prop_assert!((exact.conj() - conj).norm() < 1e-9);
        }
    }
}
