use std::fmt;

use knutson::sl2tables::{psl2_table, sl2_table, Sl2Param};
use knutson::symchar::{an_table, sn_table};
use knutson::table::CharacterTable;

use crate::error::{CliError, CliResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Sn(usize),
    An(usize),
    Sl2(u64),
    Psl2(u64),
}

impl GroupSpec {
    /// `kind` is one of `sn`, `an`, `sl2`, `psl2`; the parameter comes from
    /// the positional argument or `--q`.
    pub fn parse(kind: &str, param: Option<u64>, q: Option<u64>) -> CliResult<Self> {
        let value = match (param, q) {
            (Some(a), Some(b)) if a != b => {
                return Err(CliError::Usage(format!("conflicting parameters {a} and --q {b}")))
            }
            (Some(a), _) | (None, Some(a)) => a,
            (None, None) => return Err(CliError::Usage(format!("{kind} needs a parameter"))),
        };
        match kind.to_ascii_lowercase().as_str() {
            "sn" | "s" if value >= 1 => Ok(GroupSpec::Sn(value as usize)),
            "an" | "a" if value >= 3 => Ok(GroupSpec::An(value as usize)),
            "sl2" => Ok(GroupSpec::Sl2(value)),
            "psl2" => Ok(GroupSpec::Psl2(value)),
            "sn" | "s" | "an" | "a" => Err(CliError::Usage(format!("{kind} {value} is out of range"))),
            _ => Err(CliError::Usage(format!("unknown group family {kind}; expected sn, an, sl2 or psl2"))),
        }
    }

    pub fn cache_key(&self) -> String {
        match self {
            GroupSpec::Sn(n) => format!("sn-{n}"),
            GroupSpec::An(n) => format!("an-{n}"),
            GroupSpec::Sl2(q) => format!("sl2-{q}"),
            GroupSpec::Psl2(q) => format!("psl2-{q}"),
        }
    }

    /// Parameters are checked before any cache lookup.
    pub fn check(&self) -> CliResult<()> {
        match self {
            GroupSpec::Sn(n) | GroupSpec::An(n) => {
                let cap = knutson::symchar::DEFAULT_TABLE_CAP;
                if *n > cap {
                    return Err(knutson::Error::CapExceeded { what: "n", value: *n as u64, cap: cap as u64 }.into());
                }
            }
            GroupSpec::Sl2(q) | GroupSpec::Psl2(q) => {
                Sl2Param::capped(*q)?;
            }
        }
        Ok(())
    }

    pub fn build(&self) -> knutson::Result<CharacterTable> {
        match self {
            GroupSpec::Sn(n) => sn_table(*n),
            GroupSpec::An(n) => an_table(*n),
            GroupSpec::Sl2(q) => sl2_table(&Sl2Param::capped(*q)?),
            GroupSpec::Psl2(q) => psl2_table(&Sl2Param::capped(*q)?),
        }
    }

    pub fn sl2_param(&self) -> Option<Sl2Param> {
        match self {
            GroupSpec::Sl2(q) | GroupSpec::Psl2(q) => Sl2Param::new(*q).ok(),
            _ => None,
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Sn(n) => write!(f, "S{n}"),
            GroupSpec::An(n) => write!(f, "A{n}"),
            GroupSpec::Sl2(q) => write!(f, "SL2({q})"),
            GroupSpec::Psl2(q) => write!(f, "PSL2({q})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse() {
        assert_eq!(GroupSpec::parse("sn", Some(5), None).unwrap(), GroupSpec::Sn(5));
        assert_eq!(GroupSpec::parse("sl2", None, Some(7)).unwrap(), GroupSpec::Sl2(7));
        assert!(GroupSpec::parse("an", Some(2), None).is_err());
        assert!(GroupSpec::parse("gl2", Some(2), None).is_err());
        assert!(GroupSpec::parse("sl2", Some(5), Some(7)).is_err());
    }
}
