//! Generic character tables of `SL₂(q)` and `PSL₂(q)`, the `±id`-supported
//! character `ρ`, and a checker for tabulated `ρ`-inverses.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::algnum::{AlgebraicNumber, CycContext, CyclotomicTau};
use crate::charring::{RepRing, VirtualCharacter};
use crate::error::{Error, Result};
use crate::numtheory::{lcm, prime_power};
use crate::table::{CharacterTable, ConjugacyClass, Irreducible};

/// Largest even `q` accepted by default.
pub const EVEN_CAP: u64 = 32;
/// Largest odd `q` accepted by default.
pub const ODD_CAP: u64 = 13;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Residue {
    Even,
    OneMod4,
    ThreeMod4,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Sl2Param {
    pub p: u64,
    pub f: u32,
    pub q: u64,
}

impl Sl2Param {
    pub fn new(q: u64) -> Result<Self> {
        let (p, f) = prime_power(q).ok_or_else(|| Error::InvalidInput(format!("{q} is not a prime power")))?;
        Ok(Sl2Param { p, f, q })
    }

    /// Like [`new`](Self::new), also enforcing the default caps.
    pub fn capped(q: u64) -> Result<Self> {
        let param = Self::new(q)?;
        let cap = if param.is_even() { EVEN_CAP } else { ODD_CAP };
        if q > cap {
            return Err(Error::CapExceeded { what: "q", value: q, cap });
        }
        Ok(param)
    }

    pub fn is_even(&self) -> bool {
        self.p == 2
    }

    pub fn residue(&self) -> Residue {
        match self.q % 4 {
            1 => Residue::OneMod4,
            3 => Residue::ThreeMod4,
            _ => Residue::Even,
        }
    }

    /// `(−1)^{(q−1)/2}`; `None` for even `q`.
    pub fn epsilon(&self) -> Option<i64> {
        match self.residue() {
            Residue::Even => None,
            Residue::OneMod4 => Some(1),
            Residue::ThreeMod4 => Some(-1),
        }
    }

    pub fn order(&self) -> BigInt {
        let q = BigInt::from(self.q);
        &q * (&q * &q - 1u32)
    }

    pub fn psl_order(&self) -> BigInt {
        if self.is_even() {
            self.order()
        } else {
            self.order() / 2u32
        }
    }

    /// Number of `χ_i` (degree `q+1`).
    pub fn chi_count(&self) -> u64 {
        if self.is_even() {
            (self.q - 2) / 2
        } else {
            (self.q - 3) / 2
        }
    }

    /// Number of `θ_j` (degree `q−1`).
    pub fn theta_count(&self) -> u64 {
        if self.is_even() {
            self.q / 2
        } else {
            (self.q - 1) / 2
        }
    }

    /// Irreducibles in table order.
    pub fn irreducibles(&self) -> Vec<Sl2Irr> {
        let q = self.q;
        let mut out = vec![Sl2Irr::new(Sl2Kind::One, 1), Sl2Irr::new(Sl2Kind::Psi, q)];
        out.extend((1..=self.chi_count()).map(|i| Sl2Irr::new(Sl2Kind::Chi(i), q + 1)));
        out.extend((1..=self.theta_count()).map(|j| Sl2Irr::new(Sl2Kind::Theta(j), q - 1)));
        if !self.is_even() {
            out.push(Sl2Irr::new(Sl2Kind::Xi1, (q + 1) / 2));
            out.push(Sl2Irr::new(Sl2Kind::Xi2, (q + 1) / 2));
            out.push(Sl2Irr::new(Sl2Kind::Eta1, (q - 1) / 2));
            out.push(Sl2Irr::new(Sl2Kind::Eta2, (q - 1) / 2));
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Sl2Kind {
    One,
    Psi,
    Chi(u64),
    Theta(u64),
    Xi1,
    Xi2,
    Eta1,
    Eta2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Sl2Irr {
    pub kind: Sl2Kind,
    pub degree: u64,
}

impl Sl2Irr {
    fn new(kind: Sl2Kind, degree: u64) -> Self {
        Sl2Irr { kind, degree }
    }
}

impl fmt::Display for Sl2Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sl2Kind::One => write!(f, "1"),
            Sl2Kind::Psi => write!(f, "psi"),
            Sl2Kind::Chi(i) => write!(f, "chi_{i}"),
            Sl2Kind::Theta(j) => write!(f, "theta_{j}"),
            Sl2Kind::Xi1 => write!(f, "xi1"),
            Sl2Kind::Xi2 => write!(f, "xi2"),
            Sl2Kind::Eta1 => write!(f, "eta1"),
            Sl2Kind::Eta2 => write!(f, "eta2"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Sl2Class {
    One,
    Z,
    C,
    D,
    ZC,
    ZD,
    A(u64),
    B(u64),
}

impl fmt::Display for Sl2Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sl2Class::One => write!(f, "1"),
            Sl2Class::Z => write!(f, "z"),
            Sl2Class::C => write!(f, "c"),
            Sl2Class::D => write!(f, "d"),
            Sl2Class::ZC => write!(f, "zc"),
            Sl2Class::ZD => write!(f, "zd"),
            Sl2Class::A(l) => write!(f, "a^{l}"),
            Sl2Class::B(m) => write!(f, "b^{m}"),
        }
    }
}

fn classes(param: &Sl2Param) -> Vec<(Sl2Class, BigInt)> {
    let q = param.q;
    let big = |x: u64| BigInt::from(x);
    let mut out = vec![(Sl2Class::One, big(1))];
    if param.is_even() {
        out.push((Sl2Class::C, big(q * q - 1)));
        out.extend((1..=(q - 2) / 2).map(|l| (Sl2Class::A(l), big(q * (q + 1)))));
        out.extend((1..=q / 2).map(|m| (Sl2Class::B(m), big(q * (q - 1)))));
    } else {
        let half = big((q * q - 1) / 2);
        out.push((Sl2Class::Z, big(1)));
        for c in [Sl2Class::C, Sl2Class::D, Sl2Class::ZC, Sl2Class::ZD] {
            out.push((c, half.clone()));
        }
        out.extend((1..=(q - 3) / 2).map(|l| (Sl2Class::A(l), big(q * (q + 1)))));
        out.extend((1..=(q - 1) / 2).map(|m| (Sl2Class::B(m), big(q * (q - 1)))));
    }
    out
}

/// Field arithmetic for one `q`: roots `α = ζ_{q−1}`, `β = ζ_{q+1}` inside
/// `Q(ζ_m)` with `m = lcm(q−1, q+1)`, and `τ² = εq`.
struct Field {
    ctx: Arc<CycContext>,
    alpha_step: i64,
    beta_step: i64,
}

impl Field {
    fn new(param: &Sl2Param) -> Self {
        let q = param.q;
        let m = lcm(q - 1, q + 1);
        let eq = param.epsilon().map_or(1, |e| e * q as i64);
        Field { ctx: CycContext::get(m, eq), alpha_step: (m / (q - 1)) as i64, beta_step: (m / (q + 1)) as i64 }
    }

    fn int(&self, n: i64) -> CyclotomicTau {
        self.ctx.integer(n)
    }

    /// `α^k + α^{−k}`.
    fn alpha_trace(&self, k: i64) -> CyclotomicTau {
        add(&self.ctx.zeta(k * self.alpha_step), &self.ctx.zeta(-k * self.alpha_step))
    }

    fn beta_trace(&self, k: i64) -> CyclotomicTau {
        add(&self.ctx.zeta(k * self.beta_step), &self.ctx.zeta(-k * self.beta_step))
    }

    /// `(a + bτ)/2`.
    fn half_tau(&self, a: i64, b: i64) -> CyclotomicTau {
        add(&self.int(a), &self.ctx.tau().scale(&BigRational::from_integer(b.into())))
            .scale(&BigRational::new(1.into(), 2.into()))
    }
}

fn add(a: &CyclotomicTau, b: &CyclotomicTau) -> CyclotomicTau {
    a.checked_add(b).expect("values share one context")
}

fn sign(k: u64) -> i64 {
    if k.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

fn value(field: &Field, param: &Sl2Param, chi: Sl2Kind, class: Sl2Class) -> CyclotomicTau {
    use Sl2Class as C;
    use Sl2Kind as K;
    let q = param.q as i64;
    let eps = param.epsilon().unwrap_or(1);
    let int = |n: i64| field.int(n);
    match (chi, class) {
        (K::One, _) => int(1),
        (K::Psi, C::One | C::Z) => int(q),
        (K::Psi, C::A(_)) => int(1),
        (K::Psi, C::B(_)) => int(-1),
        (K::Psi, _) => int(0),
        (K::Chi(_), C::One) => int(q + 1),
        (K::Chi(i), C::Z) => int(sign(i) * (q + 1)),
        (K::Chi(_), C::C | C::D) => int(1),
        (K::Chi(i), C::ZC | C::ZD) => int(sign(i)),
        (K::Chi(i), C::A(l)) => field.alpha_trace((i * l) as i64),
        (K::Chi(_), C::B(_)) => int(0),
        (K::Theta(_), C::One) => int(q - 1),
        (K::Theta(j), C::Z) => int(sign(j) * (q - 1)),
        (K::Theta(_), C::C | C::D) => int(-1),
        (K::Theta(j), C::ZC | C::ZD) => int(-sign(j)),
        (K::Theta(_), C::A(_)) => int(0),
        (K::Theta(j), C::B(m)) => field.beta_trace((j * m) as i64).neg(),
        (K::Xi1 | K::Xi2, C::One) => int((q + 1) / 2),
        (K::Xi1 | K::Xi2, C::Z) => int(eps * (q + 1) / 2),
        (K::Xi1, C::C) | (K::Xi2, C::D) => field.half_tau(1, 1),
        (K::Xi1, C::D) | (K::Xi2, C::C) => field.half_tau(1, -1),
        (K::Xi1, C::ZC) | (K::Xi2, C::ZD) => field.half_tau(eps, eps),
        (K::Xi1, C::ZD) | (K::Xi2, C::ZC) => field.half_tau(eps, -eps),
        (K::Xi1 | K::Xi2, C::A(l)) => int(sign(l)),
        (K::Xi1 | K::Xi2, C::B(_)) => int(0),
        (K::Eta1 | K::Eta2, C::One) => int((q - 1) / 2),
        (K::Eta1 | K::Eta2, C::Z) => int(-eps * (q - 1) / 2),
        (K::Eta1, C::C) | (K::Eta2, C::D) => field.half_tau(-1, 1),
        (K::Eta1, C::D) | (K::Eta2, C::C) => field.half_tau(-1, -1),
        (K::Eta1, C::ZC) | (K::Eta2, C::ZD) => field.half_tau(eps, -eps),
        (K::Eta1, C::ZD) | (K::Eta2, C::ZC) => field.half_tau(eps, eps),
        (K::Eta1 | K::Eta2, C::A(_)) => int(0),
        (K::Eta1 | K::Eta2, C::B(m)) => int(-sign(m)),
    }
}

/// The character table of `SL₂(q)`, validated by exact orthogonality.
pub fn sl2_table(param: &Sl2Param) -> Result<CharacterTable> {
    let table = sl2_table_unchecked(param)?;
    table.validate()?;
    Ok(table)
}

fn sl2_table_unchecked(param: &Sl2Param) -> Result<CharacterTable> {
    let param = Sl2Param::capped(param.q)?;
    let field = Field::new(&param);
    let cls = classes(&param);
    let irreducibles = param
        .irreducibles()
        .into_iter()
        .map(|irr| Irreducible {
            label: irr.kind.to_string(),
            degree: BigInt::from(irr.degree),
            values: cls
                .iter()
                .map(|(c, _)| AlgebraicNumber::from(value(&field, &param, irr.kind, *c)).simplify())
                .collect(),
        })
        .collect();
    Ok(CharacterTable {
        label: format!("SL2({})", param.q),
        order: param.order(),
        classes: cls.into_iter().map(|(c, size)| ConjugacyClass { label: c.to_string(), size }).collect(),
        irreducibles,
    })
}

/// Image of a class under multiplication by the central `z`.
fn times_z(param: &Sl2Param, class: Sl2Class) -> Sl2Class {
    let fold = |x: u64, n: u64| {
        let r = x % n;
        r.min(n - r)
    };
    let q = param.q;
    match class {
        Sl2Class::One => Sl2Class::Z,
        Sl2Class::Z => Sl2Class::One,
        Sl2Class::C => Sl2Class::ZC,
        Sl2Class::ZC => Sl2Class::C,
        Sl2Class::D => Sl2Class::ZD,
        Sl2Class::ZD => Sl2Class::D,
        Sl2Class::A(l) => Sl2Class::A(fold(l + (q - 1) / 2, q - 1)),
        Sl2Class::B(m) => Sl2Class::B(fold(m + (q + 1) / 2, q + 1)),
    }
}

/// The character table of `PSL₂(q)`: characters trivial on `z`, on classes
/// fused under `g ~ zg`.
pub fn psl2_table(param: &Sl2Param) -> Result<CharacterTable> {
    let param = Sl2Param::capped(param.q)?;
    let sl = sl2_table_unchecked(&param)?;
    if param.is_even() {
        let mut t = sl;
        t.label = format!("PSL2({})", param.q);
        t.validate()?;
        return Ok(t);
    }
    let cls = classes(&param);
    let index_of = |c: Sl2Class| cls.iter().position(|(x, _)| *x == c).expect("class image exists");
    let mut keep_classes = Vec::new();
    let mut sizes = Vec::new();
    for (k, (c, size)) in cls.iter().enumerate() {
        let partner = index_of(times_z(&param, *c));
        if partner < k {
            continue;
        }
        let total = if partner == k { size.clone() } else { size + &cls[partner].1 };
        keep_classes.push((k, c.to_string()));
        sizes.push(total / 2u32);
    }
    let z = index_of(Sl2Class::Z);
    let irreducibles = sl
        .irreducibles
        .into_iter()
        .filter(|chi| chi.values[z] == chi.values[0])
        .map(|chi| Irreducible { values: keep_classes.iter().map(|(k, _)| chi.values[*k].clone()).collect(), ..chi })
        .collect();
    let table = CharacterTable {
        label: format!("PSL2({})", param.q),
        order: param.psl_order(),
        classes: keep_classes.into_iter().zip(sizes).map(|((_, label), size)| ConjugacyClass { label, size }).collect(),
        irreducibles,
    };
    table.validate()?;
    Ok(table)
}

/// `L(SL₂(q))` as given by the closed formula (`q ≥ 4`).
pub fn lcm_degrees_sl2_expected(param: &Sl2Param) -> BigInt {
    let q = BigInt::from(param.q);
    let full = (&q + 1u32) * &q * (&q - 1u32);
    if param.is_even() {
        full
    } else {
        full / 2u32
    }
}

fn is_power_of_two(n: u64) -> bool {
    n.is_power_of_two()
}

/// Closed-form `K(SL₂(q))`: 1 for `q` a power of two or `q = 3`, else 2.
pub fn knutson_index_sl2_formula(param: &Sl2Param) -> u64 {
    if param.is_even() || param.q == 3 {
        1
    } else {
        2
    }
}

/// Closed-form `K(PSL₂(q))`: 1 for `q ∈ {2ⁿ, 2ⁿ ± 1}`, else 2.
pub fn knutson_index_psl2_formula(param: &Sl2Param) -> u64 {
    let q = param.q;
    if is_power_of_two(q) || is_power_of_two(q - 1) || is_power_of_two(q + 1) {
        1
    } else {
        2
    }
}

/// `Σ 2χ(1)χ` over irreducibles with `χ(z) = χ(1)`; the result takes the
/// value `|G|` on `±id` and vanishes elsewhere (checked).
pub fn rho_theorem_character(ring: &RepRing) -> Result<VirtualCharacter> {
    let table = ring.table();
    let z =
        table.class_index("z").ok_or_else(|| Error::InvalidInput(format!("{} has no central class z", table.label)))?;
    let mult = table
        .irreducibles
        .iter()
        .map(|chi| if chi.values[z] == chi.values[0] { &chi.degree * 2u32 } else { BigInt::zero() })
        .collect();
    let rho = VirtualCharacter::new(mult);
    for k in 0..table.num_classes() {
        let expected =
            if k == 0 || k == z { AlgebraicNumber::integer(table.order.clone()) } else { AlgebraicNumber::zero() };
        let got = ring.evaluate(&rho, k);
        if got != expected {
            return Err(Error::Transcription {
                table: table.label.clone(),
                detail: format!("ρ takes value {got} on class {}", table.classes[k].label),
            });
        }
    }
    Ok(rho)
}

/// The characters `ρ±`: `|G|/2` at the identity, `±|G|/2` at `z`, zero elsewhere.
pub fn rho_pm(ring: &RepRing) -> Result<(VirtualCharacter, VirtualCharacter)> {
    let table = ring.table();
    let z =
        table.class_index("z").ok_or_else(|| Error::InvalidInput(format!("{} has no central class z", table.label)))?;
    let split = |plus: bool| {
        VirtualCharacter::new(
            table
                .irreducibles
                .iter()
                .map(|chi| {
                    let fixed = chi.values[z] == chi.values[0];
                    if fixed == plus {
                        chi.degree.clone()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect(),
        )
    };
    Ok((split(true), split(false)))
}

/// Row families of the tabulated `ρ`-inverses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum RowFamily {
    Eta,
    Xi,
    ThetaOdd,
    ThetaEven,
    Psi,
    ChiOdd,
    ChiEven,
}

impl RowFamily {
    pub const ALL: [RowFamily; 7] = [
        RowFamily::Eta,
        RowFamily::Xi,
        RowFamily::ThetaOdd,
        RowFamily::ThetaEven,
        RowFamily::Psi,
        RowFamily::ChiOdd,
        RowFamily::ChiEven,
    ];

    pub fn contains(self, kind: Sl2Kind) -> bool {
        match (self, kind) {
            (RowFamily::Eta, Sl2Kind::Eta1 | Sl2Kind::Eta2) => true,
            (RowFamily::Xi, Sl2Kind::Xi1 | Sl2Kind::Xi2) => true,
            (RowFamily::ThetaOdd, Sl2Kind::Theta(j)) => j % 2 == 1,
            (RowFamily::ThetaEven, Sl2Kind::Theta(j)) => j % 2 == 0,
            (RowFamily::Psi, Sl2Kind::Psi) => true,
            (RowFamily::ChiOdd, Sl2Kind::Chi(i)) => i % 2 == 1,
            (RowFamily::ChiEven, Sl2Kind::Chi(i)) => i % 2 == 0,
            _ => false,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            RowFamily::Eta => "eta1, eta2",
            RowFamily::Xi => "xi1, xi2",
            RowFamily::ThetaOdd => "theta_j, j odd",
            RowFamily::ThetaEven => "theta_j, j even",
            RowFamily::Psi => "psi",
            RowFamily::ChiOdd => "chi_i, i odd",
            RowFamily::ChiEven => "chi_i, i even",
        }
    }
}

/// Which irreducibles a term of an inverse refers to.
#[derive(Clone, Copy, Debug)]
enum Target {
    One,
    Psi,
    Xi,
    Eta,
    Chi1,
    Theta1,
    Theta2,
    ChiParity(u64),
    ThetaParity(u64),
}

impl Target {
    fn describe(self) -> String {
        match self {
            Target::One => "1".into(),
            Target::Psi => "psi".into(),
            Target::Xi => "xi1 + xi2".into(),
            Target::Eta => "eta1 + eta2".into(),
            Target::Chi1 => "chi_1".into(),
            Target::Theta1 => "theta_1".into(),
            Target::Theta2 => "theta_2".into(),
            Target::ChiParity(r) => format!("sum of chi_i, i {}", if r == ODD { "odd" } else { "even" }),
            Target::ThetaParity(r) => format!("sum of theta_j, j {}", if r == ODD { "odd" } else { "even" }),
        }
    }

    fn matches(self, kind: Sl2Kind) -> bool {
        match (self, kind) {
            (Target::One, Sl2Kind::One) | (Target::Psi, Sl2Kind::Psi) => true,
            (Target::Xi, Sl2Kind::Xi1 | Sl2Kind::Xi2) => true,
            (Target::Eta, Sl2Kind::Eta1 | Sl2Kind::Eta2) => true,
            (Target::Chi1, Sl2Kind::Chi(1)) => true,
            (Target::Theta1, Sl2Kind::Theta(1)) => true,
            (Target::Theta2, Sl2Kind::Theta(2)) => true,
            (Target::ChiParity(r), Sl2Kind::Chi(i)) => i % 2 == r,
            (Target::ThetaParity(r), Sl2Kind::Theta(j)) => j % 2 == r,
            _ => false,
        }
    }
}

/// Coefficient `(a·q + b)/d`.
#[derive(Clone, Copy, Debug)]
struct Coeff(i64, i64, i64);

impl Coeff {
    fn at(self, q: u64) -> BigRational {
        BigRational::new((self.0 * q as i64 + self.1).into(), self.2.into())
    }
}

#[derive(Clone, Copy, Debug)]
struct Term {
    coeff: Coeff,
    target: Target,
    /// Marks the coefficient open to a correction search.
    suspect: bool,
}

const fn t(a: i64, b: i64, d: i64, target: Target) -> Term {
    Term { coeff: Coeff(a, b, d), target, suspect: false }
}

const fn c(k: i64, target: Target) -> Term {
    t(0, k, 1, target)
}

const ODD: u64 = 1;
const EVEN: u64 = 0;

/// Each row lists two candidate inverses, one per residue of `q` mod 4.
const INVERSE_ROWS: [(RowFamily, [&[Term]; 2]); 7] = [
    (
        RowFamily::Eta,
        [
            &[c(2, Target::Eta), c(4, Target::ThetaParity(ODD)), t(1, 1, 1, Target::Chi1)],
            &[t(1, -1, 1, Target::One), c(2, Target::Eta), c(4, Target::ThetaParity(EVEN)), t(1, 3, 1, Target::Psi)],
        ],
    ),
    (
        RowFamily::Xi,
        [
            &[c(4, Target::One), c(2, Target::Xi), t(1, 1, 1, Target::Theta2), c(4, Target::ChiParity(EVEN))],
            &[c(2, Target::Xi), t(1, -1, 1, Target::Theta1), c(4, Target::ChiParity(ODD))],
        ],
    ),
    (
        RowFamily::ThetaOdd,
        [
            &[c(1, Target::Eta), c(2, Target::ThetaParity(ODD)), t(1, 1, 2, Target::Chi1)],
            &[t(1, 1, 2, Target::Xi), c(2, Target::ThetaParity(ODD))],
        ],
    ),
    (
        RowFamily::ThetaEven,
        [
            &[c(-2, Target::One), t(1, 3, 2, Target::Xi), c(2, Target::ThetaParity(EVEN))],
            &[t(1, -1, 2, Target::One), c(1, Target::Eta), c(2, Target::ThetaParity(EVEN)), t(1, 3, 2, Target::Psi)],
        ],
    ),
    (
        RowFamily::Psi,
        [
            &[c(-2, Target::One), c(4, Target::ThetaParity(EVEN)), c(2, Target::Psi)],
            &[c(-2, Target::One), c(2, Target::Eta), c(4, Target::ThetaParity(EVEN)), c(2, Target::Psi)],
        ],
    ),
    (
        RowFamily::ChiOdd,
        [
            &[t(1, -1, 2, Target::Eta), c(2, Target::ChiParity(ODD))],
            &[
                c(1, Target::Xi),
                Term { coeff: Coeff(1, -1, 3), target: Target::Chi1, suspect: true },
                c(2, Target::ChiParity(ODD)),
            ],
        ],
    ),
    (
        RowFamily::ChiEven,
        [
            &[c(2, Target::One), c(1, Target::Xi), t(1, 1, 2, Target::Theta2), c(2, Target::ChiParity(EVEN))],
            &[c(2, Target::One), t(1, 1, 2, Target::Eta), c(2, Target::ChiParity(EVEN))],
        ],
    ),
];

/// Coefficient vector of one tabulated inverse, with an optional override
/// for the suspect coefficient.
fn instantiate(
    kinds: &[Sl2Kind],
    q: u64,
    terms: &[Term],
    suspect_override: Option<(i64, Option<usize>)>,
) -> Vec<BigRational> {
    let mut lambda = vec![BigRational::zero(); kinds.len()];
    for term in terms {
        if let (true, Some((k, target))) = (term.suspect, suspect_override) {
            let k = BigRational::from_integer(k.into());
            match target {
                Some(idx) => lambda[idx] += k,
                None => add_term(&mut lambda, kinds, term.target, &k),
            }
        } else {
            add_term(&mut lambda, kinds, term.target, &term.coeff.at(q));
        }
    }
    lambda
}

fn add_term(lambda: &mut [BigRational], kinds: &[Sl2Kind], target: Target, coeff: &BigRational) {
    for (slot, kind) in lambda.iter_mut().zip(kinds) {
        if target.matches(*kind) {
            *slot += coeff;
        }
    }
}

/// Replaces the suspect term of a failing row, first by another integer
/// coefficient on the same characters, then by `k·X` for each single
/// irreducible `X`, with `|k| ≤ 4q` scanned by absolute value.
fn search_correction(
    ring: &RepRing,
    kinds: &[Sl2Kind],
    rho: &VirtualCharacter,
    family: RowFamily,
    column: usize,
    terms: &[Term],
    q: u64,
) -> Result<Option<Correction>> {
    let Some(suspect) = terms.iter().find(|t| t.suspect) else { return Ok(None) };
    let bound = 4 * q as i64;
    let mut coefficients: Vec<i64> = (-bound..=bound).filter(|&k| k != 0).collect();
    coefficients.sort_by_key(|k| (k.abs(), *k));
    let targets = std::iter::once(None).chain((0..kinds.len()).map(Some));
    for target in targets {
        for &k in &coefficients {
            let lambda = instantiate(kinds, q, terms, Some((k, target)));
            let check = check_row(ring, kinds, rho, family, column, lambda)?;
            if check.verified {
                return Ok(Some(Correction {
                    family,
                    original: AlgebraicNumber::Rat(suspect.coeff.at(q)),
                    original_target: suspect.target.describe(),
                    coefficient: k,
                    target: target.map(|i| kinds[i].to_string()),
                    lambda: check.lambda,
                }));
            }
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, Serialize)]
pub struct CharacterDiscrepancy {
    pub character: String,
    /// Multiplicities of `χ ⊗ λ − ρ`.
    pub difference: Vec<AlgebraicNumber>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RowCheck {
    pub family: RowFamily,
    pub column: usize,
    /// No character of the family exists for this `q`.
    pub vacuous: bool,
    pub integral: bool,
    pub verified: bool,
    pub lambda: Vec<AlgebraicNumber>,
    pub discrepancies: Vec<CharacterDiscrepancy>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Correction {
    pub family: RowFamily,
    pub original: AlgebraicNumber,
    pub original_target: String,
    pub coefficient: i64,
    /// The single irreducible now carrying the coefficient; `None` when
    /// the original characters were kept.
    pub target: Option<String>,
    pub lambda: Vec<AlgebraicNumber>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RhoInverseReport {
    pub q: u64,
    pub residue: Residue,
    pub characters: Vec<String>,
    /// Column (0 or 1) under which the most rows verify.
    pub selected_column: usize,
    /// Every row checked under both columns, `[row][column]`.
    pub checks: Vec<[RowCheck; 2]>,
    pub corrections: Vec<Correction>,
}

impl RhoInverseReport {
    /// Rows (non-vacuous) verifying under exactly the selected column.
    pub fn row_verifies_uniquely(&self, row: usize) -> bool {
        let [a, b] = &self.checks[row];
        let sel = [a, b][self.selected_column];
        let other = [a, b][1 - self.selected_column];
        sel.vacuous || (sel.verified && !other.verified)
    }

    pub fn failing_rows(&self) -> Vec<RowFamily> {
        self.checks.iter().filter(|r| !r[self.selected_column].verified).map(|r| r[0].family).collect()
    }

    pub fn all_verified(&self) -> bool {
        self.failing_rows().is_empty()
    }
}

fn check_row(
    ring: &RepRing,
    kinds: &[Sl2Kind],
    rho: &VirtualCharacter,
    family: RowFamily,
    column: usize,
    lambda: Vec<BigRational>,
) -> Result<RowCheck> {
    let members: Vec<usize> = (0..kinds.len()).filter(|&k| family.contains(kinds[k])).collect();
    let mut discrepancies = Vec::new();
    for &a in &members {
        let got = ring.fusion_matrix(a)?.apply_rational(&lambda);
        let diff: Vec<BigRational> =
            got.iter().zip(&rho.multiplicities).map(|(g, r)| g - BigRational::from_integer(r.clone())).collect();
        if diff.iter().any(|d| !d.is_zero()) {
            discrepancies.push(CharacterDiscrepancy {
                character: kinds[a].to_string(),
                difference: diff.into_iter().map(AlgebraicNumber::Rat).collect(),
            });
        }
    }
    Ok(RowCheck {
        family,
        column,
        vacuous: members.is_empty(),
        integral: lambda.iter().all(|x| x.is_integer()),
        verified: discrepancies.is_empty(),
        lambda: lambda.into_iter().map(AlgebraicNumber::Rat).collect(),
        discrepancies,
    })
}

/// Instantiates the tabulated inverses for `q`, checks every row under both
/// columns against `rho_theorem_character`, and selects the column under
/// which the most rows verify. With `search_corrections`, a row failing
/// under the selected column has its suspect coefficient replaced by the
/// integers in `[−4q, 4q]` until it verifies.
pub fn tabulated_rho_inverses(param: &Sl2Param, search_corrections: bool) -> Result<RhoInverseReport> {
    if param.is_even() || param.q < 5 {
        return Err(Error::InvalidInput(format!("ρ-inverses need odd q ≥ 5, got {}", param.q)));
    }
    let table = sl2_table(param)?;
    let ring = RepRing::new(&table);
    let rho = rho_theorem_character(&ring)?;
    let kinds: Vec<Sl2Kind> = param.irreducibles().into_iter().map(|i| i.kind).collect();
    let q = param.q;
    let mut checks = Vec::new();
    for (family, columns) in INVERSE_ROWS {
        let a = check_row(&ring, &kinds, &rho, family, 0, instantiate(&kinds, q, columns[0], None))?;
        let b = check_row(&ring, &kinds, &rho, family, 1, instantiate(&kinds, q, columns[1], None))?;
        checks.push([a, b]);
    }
    let score = |col: usize| checks.iter().filter(|r: &&[RowCheck; 2]| r[col].verified).count();
    let selected_column = if score(1) > score(0) { 1 } else { 0 };
    let mut corrections = Vec::new();
    if search_corrections {
        for (row, (family, columns)) in INVERSE_ROWS.iter().enumerate() {
            if checks[row][selected_column].verified {
                continue;
            }
            let terms = columns[selected_column];
            if let Some(c) = search_correction(&ring, &kinds, &rho, *family, selected_column, terms, q)? {
                corrections.push(c);
            }
        }
    }
    Ok(RhoInverseReport {
        q,
        residue: param.residue(),
        characters: kinds.iter().map(|k| k.to_string()).collect(),
        selected_column,
        checks,
        corrections,
    })
}

/// Whether `χ(z) = ±χ(1)` for every irreducible.
pub fn central_character_consistent(table: &CharacterTable) -> bool {
    let Some(z) = table.class_index("z") else { return true };
    table.irreducibles.iter().all(|chi| {
        let d = AlgebraicNumber::integer(chi.degree.clone());
        chi.values[z] == d || chi.values[z] == -&d
    })
}

/// Whether every column other than those of `±id` has a zero.
pub fn zero_off_center(table: &CharacterTable) -> bool {
    let z = table.class_index("z");
    (1..table.num_classes()).filter(|k| Some(*k) != z).all(|k| table.irreducibles.iter().any(|c| c.values[k].is_zero()))
}
