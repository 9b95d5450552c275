use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polar-mwd"))
        .args(args)
        .env_remove("POLAR_MWD_THREADS")
        .output()
        .expect("binary runs")
}

fn ok_stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn manifest(args: &[&str]) -> Value {
    let text = ok_stdout(args);
    assert_eq!(text.lines().count(), 1, "one record per line: {text}");
    serde_json::from_str(&text).unwrap()
}

fn without_timing(mut v: Value) -> Value {
    v["elapsed_ms"] = Value::Null;
    if v["result"].get("elapsed_ms").is_some() {
        v["result"]["elapsed_ms"] = Value::Null;
    }
    v
}

#[test]
fn construct_from_rate() {
    let m = manifest(&["construct", "--n", "8", "--rate", "1/2", "--method", "pw"]);
    assert_eq!(m["command"], "construct");
    assert_eq!(m["result"]["K"], 128);
    assert_eq!(m["result"]["info_set_A"].as_array().unwrap().len(), 128);
}

#[test]
fn construct_lists_info_set() {
    let text = ok_stdout(&[
        "construct",
        "--n",
        "3",
        "--k",
        "4",
        "--method",
        "pw",
        "--list-info-set",
    ]);
    let set: Vec<usize> = text
        .split_whitespace()
        .map(|t| t.parse().unwrap())
        .collect();
    assert_eq!(set.len(), 4);
    assert!(set.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn ga_without_design_snr_fails_cleanly() {
    let out = run(&["construct", "--n", "8", "--k", "128", "--method", "ga"]);
    assert!(!out.status.success());
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("design-snr-db"));
}

#[test]
fn mwd_of_half_rate_length_512() {
    let m = manifest(&["mwd", "--n", "9", "--rate", "1/2", "--method", "screm"]);
    assert_eq!(m["result"]["d_min"], 8);
    assert_eq!(m["result"]["a_dmin"], 64);
    assert_eq!(m["result"]["mode"], "count");
}

#[test]
fn count_and_collect_agree() {
    let count = manifest(&["mwd", "--n", "7", "--k", "64", "--mode", "count"]);
    let collect = manifest(&["mwd", "--n", "7", "--k", "64", "--mode", "collect"]);
    assert_eq!(count["result"]["d_min"], collect["result"]["d_min"]);
    assert_eq!(count["result"]["a_dmin"], collect["result"]["a_dmin"]);
}

#[test]
fn mwd_matches_oracle_subcommand() {
    for method in ["scem", "screm", "auto"] {
        let m = manifest(&["mwd", "--n", "4", "--k", "8", "--method", method]);
        let csv = ok_stdout(&["oracle", "--n", "4", "--k", "8"]);
        let first_nonzero = csv
            .lines()
            .skip(1)
            .map(|l| {
                let (d, a) = l.split_once(',').unwrap();
                (d.parse::<u64>().unwrap(), a.parse::<u64>().unwrap())
            })
            .find(|&(d, _)| d > 0)
            .unwrap();
        assert_eq!(m["result"]["d_min"].as_u64().unwrap(), first_nonzero.0);
        assert_eq!(m["result"]["a_dmin"].as_u64().unwrap(), first_nonzero.1);
    }
}

#[test]
fn spec_file_round_trip_and_codeword_dump() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("spec.json");
    let dump = dir.path().join("words.hex");
    let spec_s = spec.to_str().unwrap();
    ok_stdout(&["construct", "--n", "6", "--k", "32", "--out", spec_s]);
    let m = manifest(&[
        "mwd",
        "--spec",
        spec_s,
        "--dump-codewords",
        dump.to_str().unwrap(),
    ]);
    let d = m["result"]["d_min"].as_u64().unwrap() as u32;
    let rows = std::fs::read_to_string(&dump).unwrap();
    assert_eq!(
        rows.lines().count() as u64,
        m["result"]["a_dmin"].as_u64().unwrap()
    );
    for row in rows.lines() {
        let weight: u32 = row
            .chars()
            .map(|ch| ch.to_digit(16).unwrap().count_ones())
            .sum();
        assert_eq!(weight, d);
    }
    // a whole manifest is accepted as a spec too
    let wrapped = dir.path().join("manifest.json");
    std::fs::write(&wrapped, ok_stdout(&["construct", "--n", "6", "--k", "32"])).unwrap();
    let again = manifest(&["mwd", "--spec", wrapped.to_str().unwrap()]);
    assert_eq!(again["result"]["a_dmin"], m["result"]["a_dmin"]);
}

#[test]
fn identical_invocations_identical_payloads() {
    let args = ["mwd", "--n", "8", "--rate", "1/4"];
    assert_eq!(
        without_timing(manifest(&args)),
        without_timing(manifest(&args))
    );
    let args = ["concat", "--n", "6", "--ki", "20", "--crc", "0x59"];
    assert_eq!(
        without_timing(manifest(&args)),
        without_timing(manifest(&args))
    );
}

#[test]
fn bound_row_equals_aub() {
    let csv = ok_stdout(&[
        "bound", "--dmin", "8", "--admin", "96", "--rate", "0.5", "--db", "4",
    ]);
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines.len(), 2);
    assert_eq!(lines[0], "eb_n0_db,value");
    let value: f64 = lines[1].split_once(',').unwrap().1.parse().unwrap();
    assert_eq!(value, polar_mwd::aub(8, 96, 0.5, 4.0).value);
}

#[test]
fn bound_curve_is_nonincreasing() {
    let csv = ok_stdout(&[
        "bound",
        "--dmin",
        "16",
        "--admin",
        "12",
        "--rate",
        "1/4",
        "--from-db",
        "0",
        "--to-db",
        "5",
        "--step-db",
        "0.5",
    ]);
    let values: Vec<f64> = csv
        .lines()
        .skip(1)
        .map(|l| l.split_once(',').unwrap().1.parse().unwrap())
        .collect();
    assert_eq!(values.len(), 11);
    assert!(values.windows(2).all(|w| w[1] <= w[0]));
    let union = ok_stdout(&[
        "bound",
        "--spectrum",
        "16:12,18:40",
        "--rate",
        "1/4",
        "--db",
        "3",
    ]);
    assert_eq!(union.lines().count(), 2);
}

#[test]
fn avn_matches_formula() {
    let m = manifest(&[
        "avn", "--k", "64", "--n-log2", "7", "--list", "32768", "--levels", "3",
    ]);
    assert_eq!(m["result"]["scl_avn"], (3u64 * 32768 * 128 * 7).to_string());
    let m = manifest(&["avn", "--k", "10", "--n-log2", "7", "--list", "1280000"]);
    assert_eq!(m["result"]["scl_avn"], (1024u64 * 128 * 7).to_string());
}

#[test]
fn concat_standard_crc() {
    let m = manifest(&["concat", "--n", "7", "--ki", "32", "--crc", "0x59"]);
    assert_eq!(m["result"]["crc_hex"], "0x59");
    assert_eq!(m["result"]["d_min"], 16);
    assert_eq!(m["result"]["a_dmin"], 12);
}

#[test]
fn crc_search_table_is_ranked() {
    let table = ok_stdout(&[
        "crc-search",
        "--n",
        "6",
        "--ki",
        "20",
        "--kp",
        "3",
        "--format",
        "table",
    ]);
    let rows: Vec<(u64, u64)> = table
        .lines()
        .skip(1)
        .map(|l| {
            let f: Vec<&str> = l.split('\t').collect();
            (f[1].parse().unwrap(), f[2].parse().unwrap())
        })
        .collect();
    assert_eq!(rows.len(), 4);
    assert!(rows
        .windows(2)
        .all(|w| w[0].0 > w[1].0 || (w[0].0 == w[1].0 && w[0].1 <= w[1].1)));
    let m = manifest(&["crc-search", "--n", "6", "--ki", "20", "--kp", "3"]);
    assert_eq!(m["result"]["winner"]["d_min"].as_u64().unwrap(), rows[0].0);
}

#[test]
fn oracle_with_crc_matches_concat() {
    let csv = ok_stdout(&["oracle", "--n", "5", "--k", "10", "--crc", "0x59"]);
    let m = manifest(&["concat", "--n", "5", "--ki", "10", "--crc", "0x59"]);
    let line = csv
        .lines()
        .skip(1)
        .find(|l| !l.starts_with("0,"))
        .unwrap()
        .to_string();
    assert_eq!(
        line,
        format!("{},{}", m["result"]["d_min"], m["result"]["a_dmin"])
    );
}

#[test]
fn bad_input_exits_nonzero() {
    for args in [
        vec!["mwd", "--n", "8"],
        vec!["concat", "--n", "7", "--ki", "32", "--crc", "0xZZ"],
        vec!["bound", "--dmin", "8", "--rate", "0.5", "--db", "1"],
        vec!["oracle", "--n", "6", "--k", "40"],
    ] {
        let out = run(&args);
        assert!(!out.status.success(), "{args:?} should fail");
        assert!(out.stdout.is_empty());
        assert!(!out.stderr.is_empty());
    }
}
