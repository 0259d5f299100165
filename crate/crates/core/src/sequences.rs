//! The integer sequences certified by degree lcms and zero columns.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numtheory::{is_loeschian, is_triangular};
use crate::symchar::{zero_columns_sn, COLUMN_SCAN_CAP};
use crate::table::CharacterTable;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SequenceId {
    /// `n` with `L(S_n) = n!`.
    A363675,
    /// `n` with `L(A_n) = n!/2`.
    A363676,
    /// `n` such that every non-identity column of the `S_n` table has a zero.
    A363701,
}

impl SequenceId {
    pub const ALL: [SequenceId; 3] = [SequenceId::A363675, SequenceId::A363676, SequenceId::A363701];

    /// Largest accepted limit, if any.
    pub fn cap(self) -> Option<u64> {
        match self {
            SequenceId::A363701 => Some(COLUMN_SCAN_CAP as u64),
            _ => None,
        }
    }

    pub fn generate(self, limit: u64) -> Result<SequenceRecord> {
        match self {
            SequenceId::A363675 => Ok(seq_l_sn(limit)),
            SequenceId::A363676 => Ok(seq_l_an(limit)),
            SequenceId::A363701 => seq_zero_columns_sn(limit),
        }
    }
}

impl fmt::Display for SequenceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SequenceId::A363675 => "a363675",
            SequenceId::A363676 => "a363676",
            SequenceId::A363701 => "a363701",
        };
        f.write_str(s)
    }
}

impl FromStr for SequenceId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "a363675" => Ok(SequenceId::A363675),
            "a363676" => Ok(SequenceId::A363676),
            "a363701" => Ok(SequenceId::A363701),
            _ => Err(Error::InvalidInput(format!("unknown sequence {s}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceRecord {
    pub id: SequenceId,
    pub limit: u64,
    pub terms: Vec<u64>,
}

impl SequenceRecord {
    /// b-file text: `"i a(i)"` per line, 1-based, LF-terminated.
    pub fn to_bfile(&self) -> String {
        self.terms.iter().enumerate().map(|(i, t)| format!("{} {}\n", i + 1, t)).collect()
    }
}

/// `n ≤ limit` that are triangular with `3n+1` Löschian.
pub fn seq_l_sn(limit: u64) -> SequenceRecord {
    let terms = (1..=limit).filter(|&n| is_triangular(n).is_some() && is_loeschian(3 * n + 1)).collect();
    SequenceRecord { id: SequenceId::A363675, limit, terms }
}

/// `n ≤ limit` with `3n+1` Löschian and `n` or `n−2` triangular.
pub fn seq_l_an(limit: u64) -> SequenceRecord {
    let terms: Vec<u64> = (1..=limit)
        .filter(|&n| {
            let tri = is_triangular(n).is_some() || (n >= 2 && is_triangular(n - 2).is_some());
            tri && is_loeschian(3 * n + 1)
        })
        .collect();
    let sn = seq_l_sn(limit);
    assert!(sn.terms.iter().all(|t| terms.binary_search(t).is_ok()), "S_n terms must be A_n terms");
    SequenceRecord { id: SequenceId::A363676, limit, terms }
}

/// `n ≤ limit` whose `S_n` table has a zero in every non-identity column.
pub fn seq_zero_columns_sn(limit: u64) -> Result<SequenceRecord> {
    if limit > COLUMN_SCAN_CAP as u64 {
        return Err(Error::CapExceeded { what: "limit", value: limit, cap: COLUMN_SCAN_CAP as u64 });
    }
    let ns: Vec<usize> = (1..=limit as usize).collect();
    let flags = crate::par::map(&ns, |&n| zero_columns_sn(n));
    let mut terms = Vec::new();
    for (n, flag) in ns.into_iter().zip(flags) {
        if flag? {
            terms.push(n as u64);
        }
    }
    Ok(SequenceRecord { id: SequenceId::A363701, limit, terms })
}

/// `L(G)`, the lcm of the degrees.
pub fn l_of_table(table: &CharacterTable) -> BigInt {
    table.lcm_degrees()
}
