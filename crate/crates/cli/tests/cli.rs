use std::path::Path;
use std::process::{Command, Output};

fn run(cache: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_knutson"))
        .args(args)
        .env("KNUTSON_CACHE_DIR", cache)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("valid JSON")
}

#[test]
fn table_text_and_json() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), &["table", "sn", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("(2,1)          2      0   -1"), "{text}");

    let o = run(dir.path(), &["table", "sl2", "5", "--format", "json"]);
    let v = json(&o);
    assert_eq!(v["classes"].as_array().unwrap().len(), 9);
    assert_eq!(v["irreducibles"].as_array().unwrap().len(), 9);

    let text = stdout(&run(dir.path(), &["table", "an", "5"]));
    assert!(text.contains("(1+√5)/2") && text.contains("(1-√5)/2"));

    let csv = stdout(&run(dir.path(), &["table", "sn", "3", "--format", "csv"]));
    assert_eq!(csv.lines().next(), Some("class,\"(1,1,1)\",\"(2,1)\",(3)"));
}

#[test]
fn exact_json_numbers() {
    let dir = tempfile::tempdir().unwrap();
    let v = json(&run(dir.path(), &["table", "an", "5", "--format", "json"]));
    let values = v["irreducibles"][3]["values"].as_array().unwrap();
    assert_eq!(values[0], serde_json::json!({"rat": [3, 1]}));
    assert!(values[3].get("mq").is_some());
    let v = json(&run(dir.path(), &["table", "sl2", "5", "--format", "json"]));
    let cyc = v["irreducibles"]
        .as_array()
        .unwrap()
        .iter()
        .flat_map(|c| c["values"].as_array().unwrap().clone())
        .find(|x| x.get("cyc").is_some())
        .expect("an irrational SL2(5) value");
    for field in ["order", "eq", "base", "tau"] {
        assert!(cyc["cyc"].get(field).is_some(), "{field}");
    }
}

#[test]
fn sequences() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), &["seq", "a363675", "--limit", "200"]);
    assert_eq!(stdout(&o), "1\n6\n10\n21\n36\n66\n105\n120\n136\n190\n");
    let o = run(dir.path(), &["seq", "a363676", "--limit", "60", "--format", "json"]);
    assert_eq!(json(&o)["terms"], serde_json::json!([1, 2, 5, 6, 8, 10, 12, 17, 21, 30, 36, 57]));
    let o = run(dir.path(), &["seq", "a363701", "--limit", "21", "--bfile"]);
    assert_eq!(stdout(&o), "1 1\n2 5\n3 6\n4 8\n5 9\n6 10\n7 12\n8 14\n9 17\n10 21\n");
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let code = |args: &[&str]| run(dir.path(), args).status.code();
    assert_eq!(code(&["seq", "a363701", "--limit", "31"]), Some(3));
    assert_eq!(code(&["table", "sn", "23"]), Some(3));
    assert_eq!(code(&["table", "sl2", "17"]), Some(3));
    assert_eq!(code(&["table", "gl2", "3"]), Some(2));
    assert_eq!(code(&["table", "sl2", "6"]), Some(2));
    assert_eq!(code(&["seq", "a000001"]), Some(2));
    assert_eq!(code(&["frobnicate"]), Some(2));
    assert_eq!(code(&["knutson", "sn", "4", "--rho", "theorem"]), Some(2));
    assert_eq!(code(&["knutson", "sn", "4", "--char", "nope"]), Some(2));
    assert_eq!(code(&["knutson", "sl2", "5"]), Some(0));
    assert_eq!(code(&["knutson", "sl2", "7"]), Some(4));
    assert_eq!(code(&["verify", "cores"]), Some(0));
    assert_eq!(code(&["verify", "sequences"]), Some(0));
    assert_eq!(code(&["verify", "sl2-rho", "--q", "5"]), Some(0));
    assert_eq!(code(&["verify", "sl2-rho", "--q", "7"]), Some(4));
}

#[test]
fn knutson_reports() {
    let dir = tempfile::tempdir().unwrap();
    let v = json(&run(dir.path(), &["knutson", "sl2", "5", "--format", "json"]));
    assert_eq!(v["knutson_index"], "2");
    assert_eq!(v["lcm_degrees"], "60");
    assert_eq!(v["generalized_index"]["lower_bound"], serde_json::json!({"rat": [1, 2]}));
    assert_eq!(v["generalized_index"]["value"], serde_json::json!({"rat": [1, 1]}));
    assert_eq!(v["rho_inverse_table"]["selected_column"], 0);
    assert_eq!(v["obstruction"]["obstructed"], true);

    let v = json(&run(dir.path(), &["knutson", "psl2", "7", "--format", "json"]));
    assert_eq!(v["knutson_index"], "1");
    assert_eq!(v["generalized_index"]["value"], serde_json::json!({"rat": [1, 1]}));

    let v = json(&run(dir.path(), &["knutson", "sn", "8", "--format", "json"]));
    assert_eq!(v["knutson_index"], "1");
    assert_eq!(v["zero_in_every_nontrivial_column"], true);
    assert_eq!(v["generalized_index"]["lower_bound"], serde_json::json!({"rat": [1, 2]}));

    let v = json(&run(dir.path(), &["knutson", "sl2", "5", "--char", "eta1", "--rho", "theorem", "--format", "json"]));
    assert_eq!(v["characters"].as_array().unwrap().len(), 1);
    assert_eq!(v["characters"][0]["rho_invertible"], true);
}

#[test]
fn verify_report_is_json() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), &["verify", "sl2-rho", "--q", "7"]);
    let v = json(&o);
    assert_eq!(v["pass"], true);
    assert_eq!(v["published_discrepancies"], 1);
    let row = v["checks"].as_array().unwrap().iter().find(|c| c["name"] == "q=7: row chi_i, i odd").unwrap();
    assert!(row["computed"].as_str().unwrap().contains("3·theta_1"));
}

#[test]
fn cores_command() {
    let dir = tempfile::tempdir().unwrap();
    let v = json(&run(dir.path(), &["cores", "--t", "3", "--n", "4", "--list", "--format", "json"]));
    assert_eq!(v[0]["count"], 2);
    assert_eq!(v[0]["formula"], 2);
    assert_eq!(v[0]["cores"].as_array().unwrap().len(), 2);
    let o = run(dir.path(), &["cores", "--t", "2", "--limit", "6", "--format", "csv"]);
    let exists: Vec<String> = stdout(&o).lines().skip(1).map(|l| l.rsplit(',').next().unwrap().to_string()).collect();
    assert_eq!(exists, ["true", "true", "false", "true", "false", "false", "true"]);
    assert_eq!(run(dir.path(), &["cores", "--t", "5", "--n", "61"]).status.code(), Some(3));
}

#[test]
fn cache_behaviour() {
    let dir = tempfile::tempdir().unwrap();
    let first = run(dir.path(), &["table", "an", "6", "--format", "json"]);
    let file = dir.path().join("an-6.json");
    assert!(file.exists());
    let second = run(dir.path(), &["table", "an", "6", "--format", "json"]);
    assert_eq!(first.stdout, second.stdout);

    std::fs::write(&file, "{ truncated").unwrap();
    let third = run(dir.path(), &["table", "an", "6", "--format", "json"]);
    assert_eq!(first.stdout, third.stdout);
    assert_ne!(std::fs::read_to_string(&file).unwrap(), "{ truncated");

    let other = tempfile::tempdir().unwrap();
    let o = run(other.path(), &["table", "an", "6", "--format", "json", "--no-cache"]);
    assert_eq!(o.stdout, first.stdout);
    assert_eq!(std::fs::read_dir(other.path()).unwrap().count(), 0);
    let leftovers = std::fs::read_dir(dir.path())
        .unwrap()
        .filter(|e| !e.as_ref().unwrap().file_name().to_string_lossy().ends_with(".json"))
        .count();
    assert_eq!(leftovers, 0);
}
