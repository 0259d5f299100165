//! WebAssembly bindings for a static browser page. Every function returns a
//! JSON string; errors surface as JavaScript exceptions carrying a message.

use num_bigint::BigInt;
use num_integer::Integer;
use serde::Serialize;
use wasm_bindgen::prelude::*;

use knutson::charring::RepRing;
use knutson::knutsonlat::{generalized_lower_bound, knutson_indices, zero_column_criterion};
use knutson::sequences::SequenceId;
use knutson::sl2tables::{psl2_table, sl2_table, Sl2Param};
use knutson::symchar::{an_table_capped, sn_table_capped};
use knutson::table::CharacterTable;

/// Largest `n` for which the page builds an `S_n` or `A_n` table.
pub const TABLE_CAP: usize = 14;
/// Largest `n` for which the page computes Knutson indices of `S_n` or `A_n`.
pub const KNUTSON_CAP: usize = 10;
/// Largest sequence bound the page accepts.
pub const SEQUENCE_CAP: u64 = 1_000_000;

#[derive(Serialize)]
struct TableView {
    label: String,
    order: String,
    classes: Vec<String>,
    sizes: Vec<String>,
    rows: Vec<RowView>,
}

#[derive(Serialize)]
struct RowView {
    label: String,
    values: Vec<String>,
}

#[derive(Serialize)]
struct KnutsonView {
    group: String,
    order: String,
    lcm_degrees: String,
    knutson_index: String,
    lower_bound: String,
    zero_in_every_nontrivial_column: bool,
    characters: Vec<CharacterIndex>,
}

#[derive(Serialize)]
struct CharacterIndex {
    label: String,
    degree: String,
    index: String,
}

fn build(family: &str, param: u32, cap: usize) -> Result<CharacterTable, String> {
    let n = param as usize;
    let table = match family {
        "sn" => sn_table_capped(n, cap),
        "an" if n >= 3 => an_table_capped(n, cap),
        "an" => return Err(format!("A_{n} needs n ≥ 3")),
        "sl2" => Sl2Param::capped(param as u64).and_then(|p| sl2_table(&p)),
        "psl2" => Sl2Param::capped(param as u64).and_then(|p| psl2_table(&p)),
        other => return Err(format!("unknown family {other}; expected sn, an, sl2 or psl2")),
    };
    table.map_err(|e| e.to_string())
}

fn to_json<T: Serialize>(value: &T) -> Result<String, String> {
    serde_json::to_string(value).map_err(|e| e.to_string())
}

pub fn table_json(family: &str, param: u32) -> Result<String, String> {
    let t = build(family, param, TABLE_CAP)?;
    to_json(&TableView {
        label: t.label.clone(),
        order: t.order.to_string(),
        classes: t.classes.iter().map(|c| c.label.clone()).collect(),
        sizes: t.classes.iter().map(|c| c.size.to_string()).collect(),
        rows: t
            .irreducibles
            .iter()
            .map(|chi| RowView { label: chi.label.clone(), values: chi.values.iter().map(|v| v.to_string()).collect() })
            .collect(),
    })
}

pub fn sequence_json(id: &str, limit: u64) -> Result<String, String> {
    let id: SequenceId = id.parse().map_err(|e: knutson::Error| e.to_string())?;
    if limit > SEQUENCE_CAP {
        return Err(format!("limit {limit} exceeds {SEQUENCE_CAP}"));
    }
    let record = id.generate(limit).map_err(|e| e.to_string())?;
    to_json(&record)
}

pub fn knutson_json(family: &str, param: u32) -> Result<String, String> {
    let t = build(family, param, KNUTSON_CAP)?;
    let ring = RepRing::new(&t);
    let indices = knutson_indices(&ring).map_err(|e| e.to_string())?;
    let group = indices.iter().fold(BigInt::from(1), |acc, k| acc.lcm(k));
    let zero = zero_column_criterion(&ring).map_err(|e| e.to_string())?.is_some();
    to_json(&KnutsonView {
        group: t.label.clone(),
        order: t.order.to_string(),
        lcm_degrees: t.lcm_degrees().to_string(),
        knutson_index: group.to_string(),
        lower_bound: generalized_lower_bound(&ring).to_string(),
        zero_in_every_nontrivial_column: zero,
        characters: t
            .irreducibles
            .iter()
            .zip(&indices)
            .map(|(chi, k)| CharacterIndex {
                label: chi.label.clone(),
                degree: chi.degree.to_string(),
                index: k.to_string(),
            })
            .collect(),
    })
}

/// Character table of `sn`, `an`, `sl2` or `psl2` with values as display strings.
#[wasm_bindgen(js_name = characterTable)]
pub fn character_table(family: &str, param: u32) -> Result<String, JsValue> {
    table_json(family, param).map_err(|e| JsValue::from_str(&e))
}

/// Terms of `a363675`, `a363676` or `a363701` up to `limit`.
#[wasm_bindgen(js_name = sequenceTerms)]
pub fn sequence_terms(id: &str, limit: u32) -> Result<String, JsValue> {
    sequence_json(id, limit as u64).map_err(|e| JsValue::from_str(&e))
}

/// Knutson index of every irreducible character and of the group.
#[wasm_bindgen(js_name = knutsonIndex)]
pub fn knutson_index(family: &str, param: u32) -> Result<String, JsValue> {
    knutson_json(family, param).map_err(|e| JsValue::from_str(&e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::Value;

    fn parse(s: Result<String, String>) -> Value {
        serde_json::from_str(&s.unwrap()).unwrap()
    }

    #[test]
    fn table_view() {
        let v = parse(table_json("an", 5));
        assert_eq!(v["order"], "60");
        assert_eq!(v["classes"].as_array().unwrap().len(), 5);
        let flat = v["rows"].to_string();
        assert!(flat.contains("(1+√5)/2"));
        assert_eq!(parse(table_json("sl2", 5))["rows"].as_array().unwrap().len(), 9);
    }

    #[test]
    fn sequences() {
        let v = parse(sequence_json("a363675", 100));
        assert_eq!(v["terms"], serde_json::json!([1, 6, 10, 21, 36, 66]));
        assert!(sequence_json("a363675", SEQUENCE_CAP + 1).is_err());
        assert!(sequence_json("a000045", 10).is_err());
    }

    #[test]
    fn knutson() {
        let v = parse(knutson_json("sl2", 5));
        assert_eq!(v["knutson_index"], "2");
        assert_eq!(v["lcm_degrees"], "60");
        assert_eq!(v["lower_bound"], "1/2");
        let v = parse(knutson_json("sn", 4));
        assert_eq!(v["knutson_index"], "1");
        assert_eq!(v["characters"].as_array().unwrap().len(), 5);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(table_json("gl2", 3).is_err());
        assert!(table_json("an", 2).is_err());
        assert!(table_json("sn", 15).is_err());
        assert!(table_json("sl2", 6).is_err());
        assert!(knutson_json("sn", 11).is_err());
    }
}
