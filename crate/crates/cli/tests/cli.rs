use std::io::Write;
use std::process::{Command, Output};

use klrw_core::multisegment::{enumerate_segmentations, multisegment_of_segmentation};
use klrw_core::klrw::Problem;
use klrw_core::quiver::canonical_rep;
use serde_json::Value;

fn klrw(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_klrw")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let o = klrw(&all);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&stdout(&o)).unwrap()
}

fn temp_json(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

#[test]
fn multisegment_counts() {
    let v = json(&["multisegments", "--m", "2", "--n", "2", "--v", "1", "--chi", "0,1"]);
    assert_eq!(v["count"], 3);
    let v = json(&["multisegments", "--m", "2", "--v", "1", "--chi", "0,0"]);
    assert_eq!(v["count"], 2);
    // Without black strands the only orbit is the zero map.
    let v = json(&["multisegments", "--m", "2", "--v", "0", "--chi", "0,1"]);
    assert_eq!(v["count"], 1);
    assert_eq!(v["multisegments"][0]["segments"].as_array().unwrap().len(), 2);
}

#[test]
fn csv_has_a_header_row() {
    let o = klrw(&["multisegments", "--m", "2", "--v", "1", "--chi", "0,1", "--format", "csv"]);
    assert!(o.status.success());
    let mut reader = csv::Reader::from_reader(o.stdout.as_slice());
    assert_eq!(reader.headers().unwrap().iter().collect::<Vec<_>>(), ["index", "multisegment", "good_word"]);
    assert_eq!(reader.records().count(), 3);
}

#[test]
fn malformed_tuples_are_rejected() {
    for chi in ["1,0", "a,b"] {
        let o = klrw(&["multisegments", "--m", "2", "--v", "1", "--chi", chi]);
        assert_eq!(o.status.code(), Some(2), "chi {chi}");
    }
    let o = klrw(&["multisegments", "--m", "2", "--v", "1,1", "--chi", "0"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn good_words_of_the_flavor_orders() {
    let cases = [
        ("{(1),(2),(2,1),(3,2,1)@0,(3,2)@1}", "1,2,1,2,3,2,1,3,2"),
        ("{(1),(2),(2,1),(3,2,1)@1,(3,2)@0}", "1,2,1,2,3,2,3,2,1"),
        ("{(1),(2),(2,1),(3,2,1)@0,(3,2)@0}", "1,2,1,2,3^2,2^2,1"),
    ];
    for (ms, word) in cases {
        let o = klrw(&["good-word", "--m", "3", "--multisegment", ms]);
        assert!(o.status.success());
        assert_eq!(stdout(&o).trim(), word);
    }
}

#[test]
fn classify_zero_and_canonical() {
    let zero = temp_json(r#"{"m":3,"v":[1,2],"chi":[0,1],"maps":[[["0"],["0"]],[["0","0"],["0","0"]]]}"#);
    let v = json(&["classify", "--input", zero.path().to_str().unwrap()]);
    assert_eq!(v["multisegment"], "{(1),(2),(2),(3)@0,(3)@1}");
    assert_eq!(v["orbit_dimension"], 0);

    let p = Problem::new(3, vec![1, 2], vec![0, 1]).unwrap();
    for s in enumerate_segmentations(&p).unwrap() {
        let rep = canonical_rep(&s, &p.chi).unwrap();
        let expected = multisegment_of_segmentation(&s, &p.chi).unwrap().to_string();
        let file = temp_json(&rep.to_json().to_string());
        let v = json(&["classify", "--input", file.path().to_str().unwrap(), "--seed", "7", "--samples", "3"]);
        assert_eq!(v["multisegment"], expected);
        assert!(v["mismatches"].as_array().unwrap().is_empty());
    }
}

#[test]
fn malformed_json_is_a_structured_error() {
    let bad = temp_json(r#"{"m": 2, "v": ["#);
    let o = klrw(&["classify", "--input", bad.path().to_str().unwrap(), "--format", "json"]);
    assert_eq!(o.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(err["error"]["kind"], "parse");

    let wrong_shape = temp_json(r#"{"m":2,"v":[1],"chi":[0],"maps":[[["1","2"]]]}"#);
    let o = klrw(&["classify", "--input", wrong_shape.path().to_str().unwrap(), "--format", "json"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn relation_suite_passes_and_perturbation_fails() {
    let v = json(&["verify-relations", "--max-strands", "3"]);
    assert_eq!(v["passed"], true);
    assert!(v["checks"].as_u64().unwrap() > 0);
    let o = klrw(&["verify-relations", "--max-strands", "3", "--flip-sign"]);
    assert_eq!(o.status.code(), Some(1));
    let v = json(&["verify-relations", "--max-strands", "0"]);
    assert_eq!(v["checks"], 0);
    assert_eq!(v["passed"], true);
}

#[test]
fn gt_commands() {
    let o = klrw(&["gt-word", "--rows", "[[1],[4,4],[1,2,3]]"]);
    assert_eq!(stdout(&o).trim(), "3,1,3,3,2^2");
    let file = temp_json("[[1],[4,5],[1,2,3]]");
    let o = klrw(&["gt-word", "--input", file.path().to_str().unwrap()]);
    assert_eq!(stdout(&o).trim(), "3,1,3,3,2,2");

    // Weyl dimension of (1,2,3) for gl_3 is 1 since the entries are consecutive.
    let v = json(&["gt-patterns", "--chi", "1,2,3", "--count-only"]);
    assert_eq!(v["count"], 1);
    let v = json(&["gt-patterns", "--chi", "0,1,3"]);
    assert_eq!(v["count"], 3);
    assert_eq!(v["patterns"].as_array().unwrap().len(), 3);
}

#[test]
fn translate_both_ways() {
    let o = klrw(&["translate", "--chi", "1,1,2", "--op", "+1"]);
    assert_eq!(stdout(&o).trim(), "1,2,2");
    let o = klrw(&["translate", "--chi", "1,1,2", "--op", "-1"]);
    assert_eq!(stdout(&o).trim(), "1,1,1");
    let o = klrw(&["translate", "--chi", "-2,1", "--op", "-0", "--power", "1"]);
    assert_eq!(stdout(&o).trim(), "-2,0");
    let o = klrw(&["translate", "--chi", "1,1,2", "--op", "+1", "--power", "3"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn intertwiner_sweep_and_perturbation() {
    let v = json(&["check-intertwiner", "--n", "2", "--i", "0", "--s", "1", "--p", "e1"]);
    assert_eq!(v["passed"], true);
    assert!(!v["cases"].as_array().unwrap().is_empty());

    let o = klrw(&["check-intertwiner", "--n", "2", "--i", "0", "--s", "1", "--p", "e1", "--drop-c"]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.contains("OGZ side") && text.contains("ladder side"));

    let v = json(&["check-intertwiner", "--i", "1", "--rows", "[[1],[1,2]]", "--s", "2"]);
    assert_eq!(v["cases"][0]["report"]["holds"], true);
}

#[test]
fn graded_dimensions_of_an_idempotent() {
    let v = json(&["graded-dims", "--m", "2", "--v", "1", "--chi", "0", "--source", "1,2", "--target", "1,2"]);
    let dims: Vec<u64> = v["dimensions"].as_array().unwrap().iter().map(|d| d["dimension"].as_u64().unwrap()).collect();
    assert_eq!(dims, [1, 0, 2, 0, 3]);
}
