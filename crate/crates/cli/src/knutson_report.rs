//! The `knutson` subcommand: indices, bounds and `ρ` certificates for one group.

use clap::ValueEnum;
use knutson::algnum::AlgebraicNumber;
use knutson::charring::RepRing;
use knutson::knutsonlat::{
    generalized_lower_bound, is_rho_invertible, knutson_indices, min_rho_search, multiplicities_as_numbers,
    verify_rho_pm_obstruction, ObstructionReport,
};
use knutson::sl2tables::{rho_theorem_character, tabulated_rho_inverses, RhoInverseReport};
use knutson::table::CharacterTable;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use crate::error::{CliError, CliResult};
use crate::groups::GroupSpec;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RhoChoice {
    Regular,
    Theorem,
}

#[derive(Debug, Serialize)]
pub struct CharacterReport {
    pub label: String,
    pub degree: String,
    pub index: String,
    pub rho_invertible: bool,
    pub witness: Option<Vec<AlgebraicNumber>>,
}

#[derive(Debug, Serialize)]
pub struct GeneralizedIndex {
    pub lower_bound: AlgebraicNumber,
    pub upper_bound: AlgebraicNumber,
    pub value: Option<AlgebraicNumber>,
    pub method: String,
}

#[derive(Debug, Serialize)]
pub struct MinRho {
    pub degree: String,
    pub index: AlgebraicNumber,
    pub rho: Vec<AlgebraicNumber>,
}

#[derive(Debug, Serialize)]
pub struct KnutsonReport {
    pub group: String,
    pub order: String,
    pub lcm_degrees: String,
    pub rho: RhoChoice,
    pub characters: Vec<CharacterReport>,
    pub knutson_index: String,
    pub zero_in_every_nontrivial_column: bool,
    pub generalized_index: GeneralizedIndex,
    pub min_rho: Option<MinRho>,
    pub rho_inverse_table: Option<RhoInverseReport>,
    pub obstruction: Option<ObstructionReport>,
}

impl KnutsonReport {
    /// The tabulated inverses were checked and some row failed.
    pub fn has_table_discrepancy(&self) -> bool {
        self.rho_inverse_table.as_ref().is_some_and(|r| !r.all_verified())
    }
}

/// Groups at most this large get an exhaustive minimal-`ρ` search.
const MIN_RHO_ORDER: u64 = 50;

pub fn build(
    spec: GroupSpec,
    table: &CharacterTable,
    character: Option<&str>,
    rho_choice: RhoChoice,
) -> CliResult<KnutsonReport> {
    let ring = RepRing::new(table);
    let selected: Vec<usize> = match character {
        Some(label) => vec![table
            .irreducible_index(label)
            .ok_or_else(|| CliError::Usage(format!("{} has no character {label}", table.label)))?],
        None => (0..ring.rank()).collect(),
    };
    let odd_sl2 = matches!(spec, GroupSpec::Sl2(q) if q % 2 == 1 && q >= 5);
    let rho = match rho_choice {
        RhoChoice::Regular => ring.regular_character(),
        RhoChoice::Theorem if odd_sl2 => rho_theorem_character(&ring)?,
        RhoChoice::Theorem => {
            return Err(CliError::Usage("--rho theorem applies to sl2 with odd q >= 5".into()));
        }
    };
    let indices = knutson_indices(&ring)?;
    let group_index = indices.iter().fold(BigInt::one(), |acc, n| acc.lcm(n));
    let mut characters = Vec::new();
    for &chi in &selected {
        let witness = is_rho_invertible(&ring, chi, &rho)?;
        characters.push(CharacterReport {
            label: table.irreducibles[chi].label.clone(),
            degree: table.irreducibles[chi].degree.to_string(),
            index: indices[chi].to_string(),
            rho_invertible: witness.is_some(),
            witness: witness.as_ref().map(multiplicities_as_numbers),
        });
    }
    let zero_columns = table.zero_in_every_nontrivial_column();
    let lower = generalized_lower_bound(&ring);
    let upper = BigRational::from_integer(group_index.clone());

    let (rho_inverse_table, obstruction) = match (odd_sl2, spec.sl2_param()) {
        (true, Some(param)) => (Some(tabulated_rho_inverses(&param, true)?), Some(verify_rho_pm_obstruction(&param)?)),
        _ => (None, None),
    };
    let small = table.order <= BigInt::from(MIN_RHO_ORDER);
    let min_rho = if small {
        let bound = u64::try_from(&table.order).expect("small order");
        min_rho_search(&ring, bound)?.map(|r| MinRho {
            degree: r.degree.to_string(),
            index: AlgebraicNumber::Rat(r.index),
            rho: multiplicities_as_numbers(&r.rho),
        })
    } else {
        None
    };

    let (value, method) = if zero_columns {
        (Some(upper.clone()), "every non-identity column has a zero, so K' = K".to_string())
    } else if lower == upper {
        (Some(upper.clone()), "L(G)/|G| equals K".to_string())
    } else if let Some(m) = &min_rho {
        (m.index.as_rational(), "exhaustive minimal-degree search".to_string())
    } else if let Some(obs) = &obstruction {
        let theorem = rho_theorem_character(&ring)?;
        let all_invertible = (0..ring.rank())
            .map(|chi| is_rho_invertible(&ring, chi, &theorem).map(|w| w.is_some()))
            .collect::<knutson::Result<Vec<_>>>()?
            .into_iter()
            .all(|x| x);
        if all_invertible && obs.obstructed {
            (Some(BigRational::one()), "theorem ρ inverts every irreducible; ρ± are obstructed".to_string())
        } else {
            (None, "bounds only".to_string())
        }
    } else {
        (None, "bounds only".to_string())
    };

    Ok(KnutsonReport {
        group: table.label.clone(),
        order: table.order.to_string(),
        lcm_degrees: table.lcm_degrees().to_string(),
        rho: rho_choice,
        characters,
        knutson_index: group_index.to_string(),
        zero_in_every_nontrivial_column: zero_columns,
        generalized_index: GeneralizedIndex {
            lower_bound: AlgebraicNumber::Rat(lower),
            upper_bound: AlgebraicNumber::Rat(upper),
            value: value.map(AlgebraicNumber::Rat),
            method,
        },
        min_rho,
        rho_inverse_table,
        obstruction,
    })
}

fn lambda_text(v: &[AlgebraicNumber], labels: &[String]) -> String {
    let mut text = String::new();
    for (c, l) in v.iter().zip(labels).filter(|(c, _)| !c.is_zero()) {
        let s = c.to_string();
        let (negative, magnitude) = match s.strip_prefix('-') {
            Some(m) => (true, m.to_string()),
            None => (false, s),
        };
        let term = if magnitude == "1" { l.clone() } else { format!("{magnitude}·{l}") };
        match (text.is_empty(), negative) {
            (true, false) => text.push_str(&term),
            (true, true) => text.push_str(&format!("-{term}")),
            (false, false) => text.push_str(&format!(" + {term}")),
            (false, true) => text.push_str(&format!(" - {term}")),
        }
    }
    if text.is_empty() {
        "0".into()
    } else {
        text
    }
}

pub fn text(report: &KnutsonReport, table: &CharacterTable) -> Vec<String> {
    let labels: Vec<String> = table.irreducibles.iter().map(|c| c.label.clone()).collect();
    let mut lines = vec![
        format!("group: {}", report.group),
        format!("order: {}", report.order),
        format!("L(G): {}", report.lcm_degrees),
        format!("K(G): {}", report.knutson_index),
        format!("zero in every non-identity column: {}", report.zero_in_every_nontrivial_column),
        format!(
            "K'(G): {} (bounds {} <= K' <= {}; {})",
            report.generalized_index.value.as_ref().map_or("undetermined".to_string(), |v| v.to_string()),
            report.generalized_index.lower_bound,
            report.generalized_index.upper_bound,
            report.generalized_index.method
        ),
    ];
    if let Some(m) = &report.min_rho {
        lines.push(format!(
            "minimal rho: degree {}, K' = {}, rho = {}",
            m.degree,
            m.index,
            lambda_text(&m.rho, &labels)
        ));
    }
    let rho_name = match report.rho {
        RhoChoice::Regular => "rho_reg",
        RhoChoice::Theorem => "rho (theorem)",
    };
    lines.push(format!("characters (index; {rho_name}-invertible):"));
    for c in &report.characters {
        let w = c.witness.as_ref().map_or(String::new(), |w| format!("  lambda = {}", lambda_text(w, &labels)));
        lines.push(format!("  {} (degree {}): index {}; {}{}", c.label, c.degree, c.index, c.rho_invertible, w));
    }
    if let Some(r) = &report.rho_inverse_table {
        lines.push(format!("tabulated rho-inverses (q = {}): column {} selected", r.q, r.selected_column + 1));
        for row in &r.checks {
            let sel = &row[r.selected_column];
            let status = if sel.vacuous {
                "vacuous"
            } else if sel.verified {
                "verified"
            } else {
                "FAILS"
            };
            lines.push(format!("  {}: {status}", sel.family.label()));
            for d in &sel.discrepancies {
                lines.push(format!("    {} ⊗ lambda - rho = {}", d.character, lambda_text(&d.difference, &labels)));
            }
        }
        for c in &r.corrections {
            lines.push(format!(
                "  correction for {}: {}·{} -> {}·{}",
                c.family.label(),
                c.original,
                c.original_target,
                c.coefficient,
                c.target.as_deref().unwrap_or(&c.original_target)
            ));
        }
    }
    if let Some(o) = &report.obstruction {
        lines.push(format!(
            "rho+/rho- obstruction on {}, {}: {} (invertible: rho+ {:?}, rho- {:?})",
            o.pair[0], o.pair[1], o.obstructed, o.invertible[0], o.invertible[1]
        ));
    }
    lines
}

pub fn csv(report: &KnutsonReport) -> Vec<Vec<String>> {
    let mut rows = vec![vec!["character".into(), "degree".into(), "index".into(), "rho_invertible".into()]];
    for c in &report.characters {
        rows.push(vec![c.label.clone(), c.degree.clone(), c.index.clone(), c.rho_invertible.to_string()]);
    }
    rows
}
