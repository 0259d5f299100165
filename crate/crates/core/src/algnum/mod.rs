//! Exact algebraic numbers for character values.
//!
//! Two closed systems are used: [`MultiQuadratic`] (rationals with adjoined
//! square roots, enough for `S_n` and `A_n`) and [`CyclotomicTau`]
//! (`Q(ζ_m)` with one formal square root `τ`, enough for `SL₂(q)`).
//! [`AlgebraicNumber`] wraps both plus plain rationals; rationals promote into
//! either system, the two systems never mix.

mod cyclotomic;
mod quadratic;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub use cyclotomic::{cyclotomic_polynomial, CycContext, CyclotomicTau};
pub use quadratic::{squarefree_part, MultiQuadratic};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(n.into(), d.into())
}

#[derive(Clone, Debug)]
pub enum AlgebraicNumber {
    Rat(Rational),
    Quad(MultiQuadratic),
    Cyc(CyclotomicTau),
}

impl AlgebraicNumber {
    pub fn zero() -> Self {
        AlgebraicNumber::Rat(Rational::zero())
    }

    pub fn one() -> Self {
        AlgebraicNumber::Rat(Rational::one())
    }

    pub fn integer(n: impl Into<BigInt>) -> Self {
        AlgebraicNumber::Rat(Rational::from_integer(n.into()))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            AlgebraicNumber::Rat(r) => r.is_zero(),
            AlgebraicNumber::Quad(q) => q.is_zero(),
            AlgebraicNumber::Cyc(c) => c.is_zero(),
        }
    }

    pub fn as_rational(&self) -> Option<Rational> {
        match self {
            AlgebraicNumber::Rat(r) => Some(r.clone()),
            AlgebraicNumber::Quad(q) => q.as_rational(),
            AlgebraicNumber::Cyc(c) => c.as_rational(),
        }
    }

    /// Collapses to `Rat` when the value is rational.
    pub fn simplify(self) -> Self {
        match self.as_rational() {
            Some(r) => AlgebraicNumber::Rat(r),
            None => self,
        }
    }

    pub fn conj(&self) -> Self {
        match self {
            AlgebraicNumber::Rat(r) => AlgebraicNumber::Rat(r.clone()),
            AlgebraicNumber::Quad(q) => AlgebraicNumber::Quad(q.conj()),
            AlgebraicNumber::Cyc(c) => AlgebraicNumber::Cyc(c.conj()),
        }
    }

    pub fn scale(&self, k: &Rational) -> Self {
        match self {
            AlgebraicNumber::Rat(r) => AlgebraicNumber::Rat(r * k),
            AlgebraicNumber::Quad(q) => AlgebraicNumber::Quad(q.scale(k)),
            AlgebraicNumber::Cyc(c) => AlgebraicNumber::Cyc(c.scale(k)),
        }
    }

    pub fn to_complex(&self) -> Complex64 {
        use num_traits::ToPrimitive;
        match self {
            AlgebraicNumber::Rat(r) => Complex64::new(r.to_f64().unwrap_or(f64::NAN), 0.0),
            AlgebraicNumber::Quad(q) => q.to_complex(),
            AlgebraicNumber::Cyc(c) => c.to_complex(),
        }
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self> {
        use AlgebraicNumber::*;
        Ok(match (self, rhs) {
            (Rat(a), Rat(b)) => Rat(a + b),
            (Quad(a), Quad(b)) => Quad(a + b),
            (Cyc(a), Cyc(b)) => Cyc(a.checked_add(b)?),
            (Rat(a), Quad(b)) | (Quad(b), Rat(a)) => Quad(&MultiQuadratic::from_rational(a.clone()) + b),
            (Rat(a), Cyc(b)) | (Cyc(b), Rat(a)) => Cyc(b.context().rational(a).checked_add(b)?),
            _ => return Err(Error::SystemMismatch("multi-quadratic + cyclotomic".into())),
        })
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        use AlgebraicNumber::*;
        Ok(match (self, rhs) {
            (Rat(a), Rat(b)) => Rat(a * b),
            (Quad(a), Quad(b)) => Quad(a * b),
            (Cyc(a), Cyc(b)) => Cyc(a.checked_mul(b)?),
            (Rat(a), x) | (x, Rat(a)) => x.scale(a),
            _ => return Err(Error::SystemMismatch("multi-quadratic * cyclotomic".into())),
        })
    }
}

impl PartialEq for AlgebraicNumber {
    fn eq(&self, other: &Self) -> bool {
        use AlgebraicNumber::*;
        match (self, other) {
            (Rat(a), Rat(b)) => a == b,
            (Quad(a), Quad(b)) => a == b,
            (Cyc(a), Cyc(b)) => a == b,
            _ => match (self.as_rational(), other.as_rational()) {
                (Some(a), Some(b)) => a == b,
                _ => false,
            },
        }
    }
}

impl Eq for AlgebraicNumber {}

impl From<Rational> for AlgebraicNumber {
    fn from(r: Rational) -> Self {
        AlgebraicNumber::Rat(r)
    }
}

impl From<i64> for AlgebraicNumber {
    fn from(n: i64) -> Self {
        AlgebraicNumber::integer(n)
    }
}

impl From<MultiQuadratic> for AlgebraicNumber {
    fn from(q: MultiQuadratic) -> Self {
        AlgebraicNumber::Quad(q).simplify()
    }
}

impl From<CyclotomicTau> for AlgebraicNumber {
    fn from(c: CyclotomicTau) -> Self {
        AlgebraicNumber::Cyc(c)
    }
}

// Operator forms panic on mixed systems; table construction never mixes them.
impl Add for &AlgebraicNumber {
    type Output = AlgebraicNumber;
    fn add(self, rhs: &AlgebraicNumber) -> AlgebraicNumber {
        self.checked_add(rhs).expect("algebraic number addition")
    }
}

impl Mul for &AlgebraicNumber {
    type Output = AlgebraicNumber;
    fn mul(self, rhs: &AlgebraicNumber) -> AlgebraicNumber {
        self.checked_mul(rhs).expect("algebraic number multiplication")
    }
}

impl Neg for &AlgebraicNumber {
    type Output = AlgebraicNumber;
    fn neg(self) -> AlgebraicNumber {
        match self {
            AlgebraicNumber::Rat(r) => AlgebraicNumber::Rat(-r),
            AlgebraicNumber::Quad(q) => AlgebraicNumber::Quad(-q),
            AlgebraicNumber::Cyc(c) => AlgebraicNumber::Cyc(c.neg()),
        }
    }
}

impl Sub for &AlgebraicNumber {
    type Output = AlgebraicNumber;
    fn sub(self, rhs: &AlgebraicNumber) -> AlgebraicNumber {
        self + &(-rhs)
    }
}

impl fmt::Display for AlgebraicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraicNumber::Rat(r) => write!(f, "{r}"),
            AlgebraicNumber::Quad(q) => write!(f, "{q}"),
            AlgebraicNumber::Cyc(c) => write!(f, "{c}"),
        }
    }
}

/// JSON integer when it fits in `i64`, decimal string otherwise.
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum IntRepr {
    Small(i64),
    Big(String),
}

impl IntRepr {
    fn from_big(n: &BigInt) -> Self {
        use num_traits::ToPrimitive;
        match n.to_i64() {
            Some(v) => IntRepr::Small(v),
            None => IntRepr::Big(n.to_string()),
        }
    }

    fn to_big<E: serde::de::Error>(&self) -> std::result::Result<BigInt, E> {
        match self {
            IntRepr::Small(v) => Ok(BigInt::from(*v)),
            IntRepr::Big(s) => s.parse().map_err(E::custom),
        }
    }
}

pub(crate) mod bigint_serde {
    use super::IntRepr;
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(n: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        IntRepr::from_big(n).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        IntRepr::deserialize(d)?.to_big()
    }
}

#[derive(Serialize, Deserialize)]
struct RatRepr(IntRepr, IntRepr);

impl RatRepr {
    fn new(r: &Rational) -> Self {
        RatRepr(IntRepr::from_big(r.numer()), IntRepr::from_big(r.denom()))
    }

    fn get<E: serde::de::Error>(&self) -> std::result::Result<Rational, E> {
        let den = self.1.to_big::<E>()?;
        if den.is_zero() {
            return Err(E::custom("zero denominator"));
        }
        Ok(Rational::new(self.0.to_big()?, den))
    }
}

#[derive(Serialize, Deserialize)]
struct CycRepr {
    order: u64,
    eq: i64,
    base: Vec<RatRepr>,
    tau: Vec<RatRepr>,
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum NumRepr {
    Rat(RatRepr),
    Mq(Vec<(i64, IntRepr, IntRepr)>),
    Cyc(CycRepr),
}

impl Serialize for AlgebraicNumber {
    /// `{"rat": [n, d]}`, `{"mq": [[radicand, n, d], ...]}` or
    /// `{"cyc": {"order", "eq", "base": [[n, d], ...], "tau": [...]}}`.
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let repr = match self {
            AlgebraicNumber::Rat(r) => NumRepr::Rat(RatRepr::new(r)),
            AlgebraicNumber::Quad(q) => NumRepr::Mq(
                q.terms()
                    .iter()
                    .map(|(d, c)| (*d, IntRepr::from_big(c.numer()), IntRepr::from_big(c.denom())))
                    .collect(),
            ),
            AlgebraicNumber::Cyc(c) => NumRepr::Cyc(CycRepr {
                order: c.context().order(),
                eq: c.context().eq(),
                base: c.base_coefficients().iter().map(RatRepr::new).collect(),
                tau: c.tau_coefficients().iter().map(RatRepr::new).collect(),
            }),
        };
        repr.serialize(s)
    }
}

impl<'de> Deserialize<'de> for AlgebraicNumber {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Ok(match NumRepr::deserialize(d)? {
            NumRepr::Rat(r) => AlgebraicNumber::Rat(r.get()?),
            NumRepr::Mq(terms) => {
                let mut raw = Vec::with_capacity(terms.len());
                for (rad, n, den) in terms {
                    if rad == 0 || squarefree_part(rad) != (1, rad) {
                        return Err(D::Error::custom(format!("radicand {rad} is not squarefree")));
                    }
                    raw.push((rad, RatRepr(n, den).get()?));
                }
                AlgebraicNumber::Quad(MultiQuadratic::from_terms(raw))
            }
            NumRepr::Cyc(c) => {
                if c.order == 0 || c.eq == 0 {
                    return Err(D::Error::custom("invalid cyclotomic context"));
                }
                let ctx = CycContext::get(c.order, c.eq);
                let base = c.base.iter().map(RatRepr::get).collect::<std::result::Result<Vec<_>, _>>()?;
                let tau = c.tau.iter().map(RatRepr::get).collect::<std::result::Result<Vec<_>, _>>()?;
                AlgebraicNumber::Cyc(CyclotomicTau::from_components(&ctx, &base, &tau).map_err(D::Error::custom)?)
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn promotion_and_mismatch() {
        let q = AlgebraicNumber::from(MultiQuadratic::sqrt(5));
        let two = AlgebraicNumber::integer(2);
        assert_eq!(&(&q * &q) * &two, AlgebraicNumber::integer(10));
        let ctx = CycContext::get(4, 1);
        let i = AlgebraicNumber::Cyc(ctx.zeta(1));
        assert_eq!(&i * &i, AlgebraicNumber::integer(-1));
        assert!(matches!(q.checked_add(&i), Err(Error::SystemMismatch(_))));
    }

    #[test]
    fn json_round_trip() {
        let ctx = CycContext::get(12, -3);
        let values = vec![
            AlgebraicNumber::Rat(rat(-3, 4)),
            AlgebraicNumber::from(MultiQuadratic::sqrt(-3)),
            AlgebraicNumber::Cyc(ctx.zeta(5).checked_add(&ctx.tau()).unwrap()),
        ];
        let json = serde_json::to_string(&values).unwrap();
        assert!(json.starts_with(r#"[{"rat":[-3,4]},{"mq":[[-3,1,1]]}"#), "{json}");
        let back: Vec<AlgebraicNumber> = serde_json::from_str(&json).unwrap();
        assert_eq!(back, values);
        let big: AlgebraicNumber = serde_json::from_str(r#"{"rat":["100000000000000000000",1]}"#).unwrap();
        assert_eq!(big.to_string(), "100000000000000000000");
        assert!(serde_json::from_str::<AlgebraicNumber>(r#"{"mq":[[4,1,1]]}"#).is_err());
    }
}
