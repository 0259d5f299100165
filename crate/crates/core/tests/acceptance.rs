//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero unless the failing set is exactly `KNOWN_FAILURES`.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;

use knutson::charring::RepRing;
use knutson::knutsonlat::{
    is_rho_invertible, knutson_index_group, knutson_indices, min_rho_search, verify_rho_pm_obstruction,
};
use knutson::numtheory::{is_loeschian, quadform_xxyy};
use knutson::partitions::{count_t_cores, exists_t_core, exists_t_core_brute};
use knutson::sequences::{seq_l_an, seq_l_sn, seq_zero_columns_sn};
use knutson::sl2tables::{psl2_table, rho_theorem_character, sl2_table, tabulated_rho_inverses, RowFamily, Sl2Param};
use knutson::symchar::{an_table, sn_table, zero_in_every_nontrivial_column};
use knutson::table::CharacterTable;

/// Criteria expected to fail, with the reason printed alongside.
const KNOWN_FAILURES: [(u32, &str); 2] = [
    (5, "PSL2(9) has index 1: 9 - 1 = 8 is a power of two, so the expected 2 is unattainable"),
    (8, "SL2(3) admits rho = theta_1 + xi1 + xi2 of degree 6, so K' = 6/24 = 1/4, not 1/2"),
];

/// Absolute tolerance for the floating-point orthogonality oracle.
const FLOAT_TOL: f64 = 1e-6;

const SECOND: Duration = Duration::from_secs(1);
const MINUTE: Duration = Duration::from_secs(60);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn sl2(q: u64) -> CharacterTable {
    sl2_table(&Sl2Param::new(q).unwrap()).unwrap()
}

fn psl2(q: u64) -> CharacterTable {
    psl2_table(&Sl2Param::new(q).unwrap()).unwrap()
}

fn index(t: &CharacterTable) -> BigInt {
    knutson_index_group(&RepRing::new(t)).unwrap()
}

fn c1() -> Outcome {
    let got = seq_l_sn(200).terms;
    let want = [1, 6, 10, 21, 36, 66, 105, 120, 136, 190];
    outcome(got == want, format!("{got:?}"))
}

fn c2() -> Outcome {
    let got = seq_l_an(60).terms;
    let want = [1, 2, 5, 6, 8, 10, 12, 17, 21, 30, 36, 57];
    let contains = seq_l_sn(60).terms.iter().all(|t| got.contains(t));
    outcome(got == want && contains, format!("{got:?}, contains S_n terms: {contains}"))
}

fn c3() -> Outcome {
    let got = seq_zero_columns_sn(30).unwrap().terms;
    let want = [1, 5, 6, 8, 9, 10, 12, 14, 17, 21, 28, 30];
    outcome(got == want, format!("{got:?}"))
}

fn c4() -> Outcome {
    let mut bad = Vec::new();
    for q in [4u64, 5, 7, 8, 9, 11, 13] {
        let full = BigInt::from((q + 1) * q * (q - 1));
        let want = if q % 2 == 1 { full / 2 } else { full };
        let got = sl2(q).lcm_degrees();
        if got != want {
            bad.push(format!("q={q}: {got} vs {want}"));
        }
    }
    outcome(bad.is_empty(), if bad.is_empty() { "q in {4,5,7,8,9,11,13}".into() } else { bad.join("; ") })
}

fn c5() -> Outcome {
    let cases: [(&str, u64, u32); 16] = [
        ("SL2", 2, 1),
        ("SL2", 3, 1),
        ("SL2", 4, 1),
        ("SL2", 8, 1),
        ("PSL2", 4, 1),
        ("PSL2", 5, 1),
        ("PSL2", 7, 1),
        ("PSL2", 8, 1),
        ("PSL2", 9, 2),
        ("SL2", 5, 2),
        ("SL2", 7, 2),
        ("SL2", 9, 2),
        ("SL2", 11, 2),
        ("SL2", 13, 2),
        ("PSL2", 11, 2),
        ("PSL2", 13, 2),
    ];
    let mut bad = Vec::new();
    for (family, q, want) in cases {
        let t = if family == "SL2" { sl2(q) } else { psl2(q) };
        let got = index(&t);
        if got != BigInt::from(want) {
            bad.push(format!("{family}({q}) = {got}, expected {want}"));
        }
    }
    outcome(bad.is_empty(), if bad.is_empty() { "all 16 groups".into() } else { bad.join("; ") })
}

fn c6() -> Outcome {
    let mut notes = Vec::new();
    let mut pass = true;
    let mut columns = Vec::new();
    for q in [5u64, 13, 7, 11] {
        let report = tabulated_rho_inverses(&Sl2Param::new(q).unwrap(), true).unwrap();
        columns.push(report.selected_column);
        for (row, checks) in report.checks.iter().enumerate() {
            let family = checks[0].family;
            if report.row_verifies_uniquely(row) {
                continue;
            }
            if family != RowFamily::ChiOdd {
                pass = false;
                notes.push(format!("q={q}: {} fails", family.label()));
                continue;
            }
            let reported = !checks[report.selected_column].discrepancies.is_empty();
            let fix = report.corrections.iter().find(|c| c.family == family);
            match fix {
                Some(c) if reported => notes.push(format!(
                    "q={q}: chi odd row corrected to {}·{}",
                    c.coefficient,
                    c.target.as_deref().unwrap_or(&c.original_target)
                )),
                _ => {
                    pass = false;
                    notes.push(format!("q={q}: chi odd row fails without a verifying correction"));
                }
            }
        }
    }
    let per_residue = columns[0] == columns[1] && columns[2] == columns[3] && columns[0] != columns[2];
    pass &= per_residue;
    notes.push(format!("columns {columns:?}"));
    outcome(pass, notes.join("; "))
}

fn c7() -> Outcome {
    let mut notes = Vec::new();
    let mut pass = true;
    for q in [5u64, 7, 9, 13] {
        let param = Sl2Param::new(q).unwrap();
        let report = verify_rho_pm_obstruction(&param).unwrap();
        let table = sl2_table(&param).unwrap();
        let ring = RepRing::new(&table);
        let rho = rho_theorem_character(&ring).unwrap();
        let theorem_rho_inverts_all =
            (0..ring.rank()).all(|chi| is_rho_invertible(&ring, chi, &rho).unwrap().is_some());
        let ok = report.obstructed && report.pair_not_regular_invertible && theorem_rho_inverts_all;
        pass &= ok;
        notes.push(format!("q={q}: {}", if ok { "ok" } else { "not certified" }));
    }
    let table = sl2(5);
    let search = min_rho_search(&RepRing::new(&table), 120).unwrap();
    let exact = search.map(|r| r.index) == Some(BigRational::from_integer(1.into()));
    pass &= exact;
    notes.push(format!("exhaustive search for q=5 gives K' = 1: {exact}"));
    outcome(pass, notes.join("; "))
}

fn c8() -> Outcome {
    let k = |q: u64| {
        let t = sl2(q);
        let ring = RepRing::new(&t);
        let bound = u64::try_from(&t.order).unwrap();
        min_rho_search(&ring, bound).unwrap().expect("the regular character always works").index
    };
    let (k2, k3) = (k(2), k(3));
    let want2 = BigRational::new(1.into(), 3.into());
    let want3 = BigRational::new(1.into(), 2.into());
    outcome(k2 == want2 && k3 == want3, format!("K'(SL2(2)) = {k2} (want 1/3), K'(SL2(3)) = {k3} (want 1/2)"))
}

fn c9() -> Outcome {
    let bad: Vec<usize> = (1..=10).filter(|&n| index(&sn_table(n).unwrap()) != BigInt::from(1)).collect();
    outcome(bad.is_empty(), format!("n <= 10, index != 1 at {bad:?}"))
}

fn c10() -> Outcome {
    let bad: Vec<usize> = (3..=11).filter(|&n| index(&an_table(n).unwrap()) != BigInt::from(1)).collect();
    let t = an_table(12).unwrap();
    let ks = knutson_indices(&RepRing::new(&t)).unwrap();
    let twos: Vec<&str> =
        t.irreducibles.iter().zip(&ks).filter(|(_, k)| **k == BigInt::from(2)).map(|(c, _)| c.label.as_str()).collect();
    outcome(bad.is_empty() && !twos.is_empty(), format!("3..11 index != 1 at {bad:?}; A12 index-2 characters {twos:?}"))
}

/// `Σ_{d | m} (d / 3)` by trial division.
fn sigma3_oracle(m: u64) -> i64 {
    if m.is_multiple_of(3) {
        return 0;
    }
    (1..=m)
        .filter(|d| m.is_multiple_of(*d))
        .map(|d| match d % 3 {
            1 => 1,
            2 => -1,
            _ => 0,
        })
        .sum()
}

fn c11() -> Outcome {
    let bad: Vec<usize> =
        (0..=150).filter(|&n| count_t_cores(n, 3) as i64 != sigma3_oracle(3 * n as u64 + 1)).collect();
    outcome(bad.is_empty(), format!("n <= 150, mismatches {bad:?}"))
}

fn c12() -> Outcome {
    let ts = [2usize, 3, 5, 7, 11, 13];
    let pairs: Vec<(usize, usize)> = (0..=60).flat_map(|n| ts.map(|t| (n, t))).collect();
    let workers = std::thread::available_parallelism().map_or(4, |n| n.get());
    let bad: Vec<(usize, usize)> = std::thread::scope(|s| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                let pairs = &pairs;
                s.spawn(move || {
                    pairs
                        .iter()
                        .skip(w)
                        .step_by(workers)
                        .filter(|&&(n, t)| exists_t_core(n, t) != exists_t_core_brute(n, t))
                        .copied()
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        handles.into_iter().flat_map(|h| h.join().unwrap()).collect()
    });
    outcome(bad.is_empty(), format!("n <= 60, t in {ts:?}, mismatches {bad:?}"))
}

/// Direct search for `X² + X + XY + Y + Y² = n`.
fn quadform_oracle(n: i64) -> bool {
    let b = 2 * (n as f64).sqrt() as i64 + 3;
    (-b..=b).any(|x| (-b..=b).any(|y| x * x + x + x * y + y + y * y == n))
}

/// Direct search for `a² + ab + b² = m` with `a, b ≥ 0`.
fn loeschian_oracle(m: i64) -> bool {
    (0..).take_while(|a| a * a <= m).any(|a| (0..=a).any(|b| a * a + a * b + b * b == m))
}

fn c13() -> Outcome {
    let bad: Vec<u64> = (0..=10_000u64).filter(|&n| quadform_xxyy(n) != is_loeschian(3 * n + 1)).collect();
    let oracle_bad: Vec<u64> = (0..=2_000u64)
        .filter(|&n| {
            quadform_oracle(n as i64) != loeschian_oracle(3 * n as i64 + 1)
                || quadform_xxyy(n) != quadform_oracle(n as i64)
        })
        .collect();
    outcome(
        bad.is_empty() && oracle_bad.is_empty(),
        format!("n <= 10^4 mismatches {bad:?}; direct-search oracle n <= 2000 mismatches {oracle_bad:?}"),
    )
}

/// Both orthogonality relations in floating point.
fn float_orthogonal(t: &CharacterTable) -> bool {
    let order: f64 = t.order.to_string().parse().unwrap();
    let vals: Vec<Vec<Complex64>> =
        t.irreducibles.iter().map(|c| c.values.iter().map(|v| v.to_complex()).collect()).collect();
    let sizes: Vec<f64> = t.classes.iter().map(|c| c.size.to_string().parse().unwrap()).collect();
    let k = t.num_classes();
    let rows = (0..k).all(|a| {
        (0..k).all(|b| {
            let s: Complex64 = (0..k).map(|g| sizes[g] * vals[a][g] * vals[b][g].conj()).sum::<Complex64>() / order;
            let want = if a == b { 1.0 } else { 0.0 };
            (s - want).norm() < FLOAT_TOL
        })
    });
    let cols = (0..k).all(|g| {
        (0..k).all(|h| {
            let s: Complex64 = (0..k).map(|a| vals[a][g] * vals[a][h].conj()).sum();
            let want = if g == h { order / sizes[g] } else { 0.0 };
            (s - want).norm() < FLOAT_TOL * want.max(1.0)
        })
    });
    rows && cols
}

fn c14() -> Outcome {
    let mut tables: Vec<CharacterTable> = (1..=12).map(|n| sn_table(n).unwrap()).collect();
    tables.extend((3..=12).map(|n| an_table(n).unwrap()));
    for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13] {
        tables.push(sl2(q));
        tables.push(psl2(q));
    }
    let bad: Vec<String> =
        tables.iter().filter(|t| t.validate().is_err() || !float_orthogonal(t)).map(|t| t.label.clone()).collect();
    outcome(bad.is_empty(), format!("{} tables, exact and float checks, failures {bad:?}", tables.len()))
}

fn c15() -> Outcome {
    let bad: Vec<usize> = (3..=14)
        .filter(|&n| {
            zero_in_every_nontrivial_column(&an_table(n).unwrap())
                != zero_in_every_nontrivial_column(&sn_table(n).unwrap())
        })
        .collect();
    outcome(bad.is_empty(), format!("3 <= n <= 14, mismatches {bad:?}"))
}

fn main() {
    type Criterion = (u32, &'static str, Option<Duration>, fn() -> Outcome);
    let criteria: [Criterion; 15] = [
        (1, "sequence a363675 to 200", Some(SECOND), c1),
        (2, "sequence a363676 to 60", Some(SECOND), c2),
        (3, "sequence a363701 to 30", Some(10 * MINUTE), c3),
        (4, "lcm of SL2(q) degrees", None, c4),
        (5, "Knutson index of SL2(q) and PSL2(q)", None, c5),
        (6, "rho-inverse rows for q = 5, 7, 11, 13", None, c6),
        (7, "rho+/rho- obstruction for q = 5, 7, 9, 13", None, c7),
        (8, "K' of SL2(2) and SL2(3)", Some(MINUTE), c8),
        (9, "K(S_n) = 1 for n <= 10", Some(30 * MINUTE), c9),
        (10, "K(A_n) = 1 for n <= 11, index 2 in A12", None, c10),
        (11, "3-core counts for n <= 150", None, c11),
        (12, "t-core existence against enumeration, n <= 60", None, c12),
        (13, "quadratic form against Loeschian criterion", None, c13),
        (14, "orthogonality of all tables", None, c14),
        (15, "zero columns agree for A_n and S_n, n <= 14", None, c15),
    ];
    let known: BTreeSet<u32> = KNOWN_FAILURES.iter().map(|(n, _)| *n).collect();
    let mut failed = BTreeSet::new();
    for (n, name, budget, run) in criteria {
        let start = Instant::now();
        let mut out = run();
        let elapsed = start.elapsed();
        if let Some(b) = budget {
            if elapsed > b {
                out.pass = false;
                out.detail.push_str(&format!("; over budget {b:?}"));
            }
        }
        let status = if out.pass { "PASS" } else { "FAIL" };
        println!("[{status}] {n:>2} {name} ({:.2}s): {}", elapsed.as_secs_f64(), out.detail);
        if !out.pass {
            failed.insert(n);
            if let Some((_, why)) = KNOWN_FAILURES.iter().find(|(k, _)| *k == n) {
                println!("        expected failure: {why}");
            }
        }
    }
    println!("failed: {failed:?}, expected: {known:?}");
    if failed != known {
        std::process::exit(1);
    }
}
