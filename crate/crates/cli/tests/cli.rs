use std::process::{Command, Output};

use num_bigint::{BigInt, BigUint};
use serde_json::Value;

fn apcover(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_apcover"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = apcover(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn strings(v: &Value) -> Vec<String> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_str().unwrap().to_string())
        .collect()
}

#[test]
fn count_reports_counts_and_histogram() {
    let v = json(&["count", "--primes", "2,3,5"]);
    assert_eq!(v["command"], "count");
    let r = &v["results"];
    assert_eq!((r["available"].as_str(), r["free"].as_str(), r["occupied"].as_str()), (Some("22"), Some("8"), Some("8")));
    assert_eq!(strings(&r["histogram"]), ["8", "14", "7", "1"]);
    assert_eq!(v["timing_ms"], Value::Null);

    let v = json(&["count", "--primes", "2"]);
    assert_eq!(v["results"]["available"], "2");
    assert_eq!(v["results"]["free"], "1");
}

#[test]
fn count_rejects_composites_with_exit_2() {
    let out = apcover(&["count", "--primes", "4,3"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("modulus 4 is not prime"), "{err}");

    for bad in ["2,2", "1,3", "", "2,x", "99999999999999999999"] {
        assert_eq!(apcover(&["count", "--primes", bad]).status.code(), Some(2), "{bad:?}");
    }
}

#[test]
fn count_with_coprime_composites() {
    let v = json(&["count", "--primes", "4,9", "--coprime", "--residues", "3,0"]);
    assert_eq!(v["results"]["product"], "36");
    assert_eq!(v["results"]["oracle"]["matches"], true);
    assert_eq!(v["inputs"]["coprime"], true);
    assert_eq!(apcover(&["count", "--primes", "4,6", "--coprime"]).status.code(), Some(2));
}

#[test]
fn count_with_residues_runs_the_sieve() {
    let v = json(&["count", "--primes", "2,3", "--residues", "-1,4"]);
    assert_eq!(strings(&v["inputs"]["residues"]), ["1", "1"]);
    assert_eq!(v["results"]["oracle"]["available"], "5");
    assert_eq!(apcover(&["count", "--primes", "2,3", "--residues", "1"]).status.code(), Some(2));
}

#[test]
fn count_csv_flattens_histogram() {
    let out = apcover(&["count", "--primes", "2,3,5", "--format", "csv"]);
    assert!(out.status.success());
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "moduli,available,free,occupied,product,j0,j1,j2,j3\n\"2,3,5\",22,8,8,30,8,14,7,1\n"
    );
}

#[test]
fn first_k_expands_to_first_primes() {
    let v = json(&["count", "--first-k", "5"]);
    assert_eq!(strings(&v["inputs"]["moduli"]), ["2", "3", "5", "7", "11"]);
    assert_eq!(v["results"]["available"], "1448");
    assert_eq!(apcover(&["count", "--first-k", "2", "--primes", "2,3"]).status.code(), Some(2));
}

#[test]
fn det_methods() {
    let v = json(&["det", "--primes", "2,3,5,7,11", "--which", "available", "--method", "recurrence"]);
    assert_eq!(v["results"]["value"], "1448");
    let v = json(&["det", "--primes", "2,3", "--which", "free", "--method", "bareiss"]);
    assert_eq!(v["results"]["value"], "2");
    let v = json(&["det", "--primes", "3,5,7", "--which", "available", "--method", "bareiss"]);
    assert_eq!(v["results"]["value"], "92");
    let v = json(&["det", "--primes", "2,3,5", "--which", "free", "--method", "laplace"]);
    assert_eq!(v["results"]["value"], "8");
    assert_eq!(v["results"]["raw_determinant"], "-8");
}

#[test]
fn det_methods_agree() {
    for which in ["available", "free"] {
        let values: Vec<Value> = ["recurrence", "bareiss", "laplace"]
            .iter()
            .map(|m| json(&["det", "--first-k", "7", "--which", which, "--method", m])["results"]["value"].clone())
            .collect();
        assert!(values.windows(2).all(|w| w[0] == w[1]), "{which}: {values:?}");
    }
}

#[test]
fn det_laplace_refuses_large_dimension() {
    let out = apcover(&["det", "--first-k", "8", "--which", "free", "--method", "laplace"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(apcover(&["det", "--first-k", "8", "--which", "available", "--method", "laplace"]).status.success());
}

#[test]
fn verify_examples() {
    let v = json(&["verify", "--primes", "2,3,5", "--exhaustive"]);
    let r = &v["results"];
    assert_eq!((r["assignments_tested"].as_str(), r["agreeing"].as_str()), (Some("30"), Some("30")));
    assert_eq!(r["all_agree"], true);
    assert_eq!(r["expected"]["available"], "22");
    assert_eq!(r["expected"]["occupied"], "8");

    let v = json(&["verify", "--primes", "2,3,5,7,11,13,17", "--trials", "20", "--seed", "7"]);
    assert_eq!(v["results"]["agreeing"], "20");
    assert_eq!(v["results"]["expected"]["available"], "291456");
    assert_eq!(v["results"]["expected"]["free"], "92160");

    let v = json(&["verify", "--primes", "2,3", "--trials", "1", "--seed", "0"]);
    assert_eq!(v["results"]["agreeing"], "1");
    assert_eq!(v["results"]["expected"]["available"], "5");
    assert_eq!(v["results"]["expected"]["free"], "2");
}

#[test]
fn verify_resource_refusals_exit_3() {
    assert_eq!(apcover(&["verify", "--primes", "2,3,5,7", "--limit", "209"]).status.code(), Some(3));
    assert_eq!(apcover(&["verify", "--first-k", "8", "--exhaustive", "--limit", "100000000"]).status.code(), Some(3));
    assert!(apcover(&["verify", "--primes", "2,3,5,7", "--limit", "210", "--trials", "2"]).status.success());
    assert_eq!(apcover(&["verify", "--primes", "2,3", "--limit", "-5"]).status.code(), Some(2));
}

#[test]
fn oeis_bfile_output() {
    let out = apcover(&["oeis", "--sequence", "A005867", "--terms", "5", "--bfile"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "1 1\n2 2\n3 8\n4 48\n5 480\n");
    let out = apcover(&["oeis", "--sequence", "A067549", "--terms", "1", "--bfile"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "1 2\n");
    assert_eq!(apcover(&["oeis", "--sequence", "A067549", "--terms", "0"]).status.code(), Some(2));
    assert_eq!(apcover(&["oeis", "--sequence", "A000001", "--terms", "3"]).status.code(), Some(2));
}

#[test]
fn oeis_300_terms_match_elimination_at_spot_checks() {
    let out = apcover(&["oeis", "--sequence", "A067549", "--terms", "300", "--bfile"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 300);
    for index in [10usize, 50] {
        let (i, value) = lines[index - 1].split_once(' ').unwrap();
        assert_eq!(i, index.to_string());
        let system = apcover::ModulusSystem::first_primes(index).unwrap();
        let expected = apcover::det_bareiss(&apcover::build_available_matrix(&system));
        assert_eq!(value.parse::<BigInt>().unwrap(), expected);
    }
}

#[test]
fn oeis_json_and_diff() {
    let v = json(&["oeis", "--sequence", "A067549", "--terms", "3"]);
    assert_eq!(v["results"]["terms"][2]["index"], "3");
    assert_eq!(v["results"]["terms"][2]["value"], "22");

    let dir = std::env::temp_dir().join(format!("apcover-diff-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let good = dir.join("good.txt");
    std::fs::write(&good, "# A005867\n1 1\n2 2\n3 8\n4 48\n").unwrap();
    let bad = dir.join("bad.txt");
    std::fs::write(&bad, "1 1\n2 2\n3 9\n").unwrap();
    let broken = dir.join("broken.txt");
    std::fs::write(&broken, "1 1\nnonsense\n").unwrap();

    let v = json(&["oeis", "--sequence", "A005867", "--terms", "4", "--diff", good.to_str().unwrap()]);
    assert_eq!(v["results"]["diff"]["mismatches"], "0");
    let out = apcover(&["oeis", "--sequence", "A005867", "--terms", "4", "--diff", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["results"]["diff"]["first_mismatch"]["index"], "3");
    assert_eq!(v["results"]["diff"]["first_mismatch"]["expected"], "8");
    let out = apcover(&["oeis", "--sequence", "A005867", "--terms", "4", "--diff", broken.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn bench_small() {
    let v = json(&["bench", "--kmax", "2", "--repeat", "1"]);
    let rows = v["results"]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[1]["value"], "5");
    assert_eq!(rows[1]["agree"], true);
    assert_eq!(apcover(&["bench", "--kmax", "1"]).status.code(), Some(2));

    let v = json(&["bench", "--kmax", "12", "--repeat", "3"]);
    assert_eq!(v["results"]["all_agree"], true);
    assert_eq!(v["results"]["rows"].as_array().unwrap().len(), 12);
}

#[test]
fn bench_skips_elimination_past_the_cap() {
    let v = json(&["bench", "--kmax", "40", "--repeat", "1", "--timeout-ms", "0"]);
    let rows = v["results"]["rows"].as_array().unwrap();
    assert_eq!(rows[0]["bareiss_status"], "ok");
    assert_eq!(rows[39]["bareiss_status"], "skipped (timeout)");
    assert_eq!(rows[39]["agree"], Value::Null);
}

#[test]
fn timing_is_opt_in() {
    let v = json(&["count", "--primes", "2,3", "--timing"]);
    assert!(v["timing_ms"].as_f64().is_some());
}

#[test]
fn numeric_fields_round_trip() {
    let v = json(&["count", "--first-k", "25"]);
    let system = apcover::ModulusSystem::first_primes(25).unwrap();
    let counts = apcover::coverage_counts(&system);
    let parse = |key: &str| v["results"][key].as_str().unwrap().parse::<BigUint>().unwrap();
    assert_eq!(&parse("available"), counts.available());
    assert_eq!(&parse("free"), counts.free());
    assert_eq!(&parse("product"), system.product());
    let hist: Vec<BigUint> = strings(&v["results"]["histogram"]).iter().map(|s| s.parse().unwrap()).collect();
    assert_eq!(hist, apcover::exact_coverage_histogram(&system).unwrap().counts());
}

#[test]
fn histogram_omitted_beyond_limit() {
    let v = json(&["count", "--first-k", "26"]);
    assert_eq!(v["results"]["histogram"], Value::Null);
    assert!(v["results"]["available"].as_str().is_some());
}
