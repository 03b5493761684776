//! End-to-end runs of the `motivic` binary: pinned outputs, exit codes,
//! and the stability of the JSON schema.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

const CARLITZ: &str = "q = 3\nlabel = carlitz\nrank = 1\ntau = t - th\n";
const HALF_WEIGHT: &str =
    "q = 3\nlabel = half\nrank = 2\ntau = 0\ntau = t - th\ntau = 1\ntau = -th\nblocks = 2\n";
const SPLIT: &str =
    "q = 3\nlabel = split\nrank = 2\ntau = t - th\ntau = 0\ntau = 0\ntau = 1\nblocks = 1, 1\n";
const CHARACTER_TARGETS: &str = "q = 3\ntarget = 0 | t - th\ntarget = 1 | t - th\n";
const SPLIT_TARGETS: &str = "q = 3\ntarget = 1 | t - th\ntarget = 0 | t - th\n";
const REPR_PAIR: &str = "\
q = 3
table = 0, 1, 2
table = 1, 2, 0
table = 2, 0, 1
dim = 2
rep1 = 1, 0, 0, 1
rep1 = 1, 1, 0, 1
rep1 = 1, 2, 0, 1
rep2 = 1, 0, 0, 1
rep2 = 1, 0, 0, 1
rep2 = 1, 0, 0, 1
";

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_motivic"))
}

fn write(dir: &Path, name: &str, contents: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, contents).unwrap();
    p
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("process exited normally")
}

#[test]
fn info_reports_the_shape() {
    let dir = tempfile::tempdir().unwrap();
    let carlitz = write(dir.path(), "carlitz.mot", CARLITZ);
    let out = bin().arg("info").arg(&carlitz).output().unwrap();
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("rank: 1"), "{text}");
    assert!(text.contains("dimension: 1"), "{text}");
    assert!(text.contains("hodge-pink weights: {1}"), "{text}");
    assert!(text.contains("height: 1"), "{text}");

    let out = bin().arg("info").arg(&carlitz).arg("--json").output().unwrap();
    assert_eq!(code(&out), 0);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["rank"], 1);
    assert_eq!(v["dimension"], 1);
    assert_eq!(v["hodge_pink_weights"], serde_json::json!([1]));
    assert_eq!(v["label"], "carlitz");
}

#[test]
fn charpoly_pins_the_degree_one_example() {
    let dir = tempfile::tempdir().unwrap();
    let carlitz = write(dir.path(), "carlitz.mot", CARLITZ);
    for method in ["iterate", "restrict", "both"] {
        let out = bin()
            .arg("charpoly")
            .arg(&carlitz)
            .args(["--place", "th - 1", "--method", method])
            .output()
            .unwrap();
        assert_eq!(code(&out), 0, "{}", stderr(&out));
        assert_eq!(stdout(&out).trim(), "X - (t + 2)");
    }
}

#[test]
fn weil_weights_of_the_split_form() {
    let dir = tempfile::tempdir().unwrap();
    let split = write(dir.path(), "split.mot", SPLIT);
    let out = bin()
        .arg("weil")
        .arg(&split)
        .args(["--place", "th - 1"])
        .output()
        .unwrap();
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert_eq!(stdout(&out).trim(), "{0, 1}");

    let out = bin()
        .arg("weil")
        .arg(&split)
        .args(["--place", "th - 1", "--json"])
        .output()
        .unwrap();
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["weights"], serde_json::json!(["0", "1"]));
}

#[test]
fn shtuka_reports_tame_inertia() {
    let dir = tempfile::tempdir().unwrap();
    let carlitz = write(dir.path(), "carlitz.mot", CARLITZ);
    let out = bin()
        .arg("shtuka")
        .arg(&carlitz)
        .args(["--place", "th^2 + 1", "--prime", "t^2 + 1"])
        .output()
        .unwrap();
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("tame inertia: weights {1}"), "{text}");
    assert!(text.contains(": ok"), "{text}");

    let out = bin()
        .arg("shtuka")
        .arg(&carlitz)
        .args(["--place", "th^2 + 1", "--prime", "t^2 + 1", "--json"])
        .output()
        .unwrap();
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["dimension"], 1);
    assert_eq!(v["ram_index"], 1);
    assert_eq!(v["tame_inertia"]["weights"], serde_json::json!([1]));
    assert_eq!(v["tame_inertia"]["sum_matches"], true);
    assert_eq!(v["precision"]["pi"], 16);
    assert_eq!(v["normal_form"][0]["digits"], serde_json::json!([1]));
}

#[test]
fn shtuka_requires_the_place_above_the_prime() {
    let dir = tempfile::tempdir().unwrap();
    let carlitz = write(dir.path(), "carlitz.mot", CARLITZ);
    let out = bin()
        .arg("shtuka")
        .arg(&carlitz)
        .args(["--place", "th^2 + 1", "--prime", "t^2 + t + 2"])
        .output()
        .unwrap();
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("does not lie above"), "{}", stderr(&out));
}

#[test]
fn thm1_identical_inputs_are_isomorphic() {
    let dir = tempfile::tempdir().unwrap();
    let carlitz = write(dir.path(), "carlitz.mot", CARLITZ);
    let out = bin()
        .arg("check-thm1")
        .arg(&carlitz)
        .arg(&carlitz)
        .args(["--place-v", "th - 1", "--prime", "t^5 + 2 t + 1"])
        .output()
        .unwrap();
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("isomorphic ss at v: yes"), "{text}");
    assert!(text.contains("conclusion: isomorphic"), "{text}");

    let out = bin()
        .arg("check-thm1")
        .arg(&carlitz)
        .arg(&carlitz)
        .args(["--place-v", "th - 1", "--prime", "t^5 + 2 t + 1", "--json"])
        .output()
        .unwrap();
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["isomorphic_ss_at_v"], true);
    assert_eq!(v["conclusion"], "isomorphic");
    assert_eq!(v["dims"]["equal"], true);
    assert_eq!(v["weil_weights"]["left"], serde_json::json!(["1"]));
    assert_eq!(v["tame_weights"]["left"], serde_json::json!([1]));
    // the audit carries one entry per coefficient below the leading one
    assert_eq!(v["audit"].as_array().unwrap().len(), 1 + 1);
}

#[test]
fn thm1_separates_twisted_forms() {
    let dir = tempfile::tempdir().unwrap();
    let carlitz = write(dir.path(), "carlitz.mot", CARLITZ);
    let twisted = write(
        dir.path(),
        "twisted.mot",
        "q = 3\nlabel = twisted\nrank = 1\ntau = 2 (t - th)\n",
    );
    let out = bin()
        .arg("check-thm1")
        .arg(&carlitz)
        .arg(&twisted)
        .args(["--place-v", "th - 1", "--prime", "t^5 + 2 t + 1"])
        .output()
        .unwrap();
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("congruent at v: no"), "{text}");
    assert!(text.contains("conclusion: not isomorphic"), "{text}");
    assert!(text.contains("weil weights: left {1}, right {1} (equal: yes)"), "{text}");
}

#[test]
fn thm1_needs_computable_tame_inertia_on_both_sides() {
    // the dense two-by-two block has no permutation-cyclic torsion at the
    // derived place, so its tame inertia multiset is out of reach — a
    // hypothesis failure, not a verdict
    let dir = tempfile::tempdir().unwrap();
    let half = write(dir.path(), "half.mot", HALF_WEIGHT);
    let split = write(dir.path(), "split.mot", SPLIT);
    let out = bin()
        .arg("check-thm1")
        .arg(&half)
        .arg(&split)
        .args(["--place-v", "th - 1", "--prime", "t^5 + 2 t + 1"])
        .output()
        .unwrap();
    assert_eq!(code(&out), 2);
    assert!(
        stderr(&out).contains("permutation support"),
        "{}",
        stderr(&out)
    );
}

#[test]
fn thm1_height_violation_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let carlitz = write(dir.path(), "carlitz.mot", CARLITZ);
    let out = bin()
        .arg("check-thm1")
        .arg(&carlitz)
        .arg(&carlitz)
        .args([
            "--place-v",
            "th - 1",
            "--prime",
            "t^5 + 2 t + 1",
            "--height",
            "0",
        ])
        .output()
        .unwrap();
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("height"), "{}", stderr(&out));
}

#[test]
fn thm2_contradiction_for_half_weights() {
    let dir = tempfile::tempdir().unwrap();
    let half = write(dir.path(), "half.mot", HALF_WEIGHT);
    let targets = write(dir.path(), "targets.txt", CHARACTER_TARGETS);
    let out = bin()
        .arg("check-thm2")
        .arg(&half)
        .args(["--targets"])
        .arg(&targets)
        .args(["--place-v", "th - 1", "--prime", "t^5 + 2 t + 1"])
        .output()
        .unwrap();
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("CONTRADICTION"), "{text}");
    assert!(text.contains("congruent at v: no"), "{text}");

    let out = bin()
        .arg("check-thm2")
        .arg(&half)
        .args(["--targets"])
        .arg(&targets)
        .args(["--place-v", "th - 1", "--prime", "t^5 + 2 t + 1", "--json"])
        .output()
        .unwrap();
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["outcome"], "contradiction");
    assert_eq!(v["witness"]["scaled"], "1/2");
    assert_eq!(v["digits"], serde_json::json!([0, 1]));
    assert_eq!(v["congruent_at_v"], false);
}

#[test]
fn thm2_no_contradiction_for_a_genuine_character_sum() {
    let dir = tempfile::tempdir().unwrap();
    let split = write(dir.path(), "split.mot", SPLIT);
    let targets = write(dir.path(), "targets.txt", SPLIT_TARGETS);
    let out = bin()
        .arg("check-thm2")
        .arg(&split)
        .args(["--targets"])
        .arg(&targets)
        .args(["--place-v", "th - 1", "--prime", "t^5 + 2 t + 1", "--json"])
        .output()
        .unwrap();
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["outcome"], "no_contradiction");
    assert_eq!(v["congruent_at_v"], true);
    assert_eq!(v["equality_forced"], true);
}

#[test]
fn repr_check_compares_fingerprints() {
    let dir = tempfile::tempdir().unwrap();
    let pair = write(dir.path(), "pair.txt", REPR_PAIR);
    let out = bin().arg("repr-check").arg(&pair).output().unwrap();
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert!(stdout(&out).contains("charpoly fingerprints equal: yes"));

    let out = bin().arg("repr-check").arg(&pair).arg("--json").output().unwrap();
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["charpoly_equal"], true);
    assert_eq!(v["trace_criterion"]["applies"], true);
}

#[test]
fn malformed_inputs_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let carlitz = write(dir.path(), "carlitz.mot", CARLITZ);
    // bad literal in a flag
    let out = bin()
        .arg("charpoly")
        .arg(&carlitz)
        .args(["--place", "th ++ 1"])
        .output()
        .unwrap();
    assert_eq!(code(&out), 1);
    // bad motive file: reported with its line
    let broken = write(dir.path(), "broken.mot", "q = 3\nrank = 1\ntau = t -\n");
    let out = bin().arg("info").arg(&broken).output().unwrap();
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("line 3"), "{}", stderr(&out));
    // unknown flag
    let out = bin()
        .arg("info")
        .arg(&carlitz)
        .arg("--frobnicate")
        .output()
        .unwrap();
    assert_eq!(code(&out), 1);
    // missing file
    let out = bin().arg("info").arg(dir.path().join("nope.mot")).output().unwrap();
    assert_eq!(code(&out), 1);
}

#[test]
fn precision_env_var_is_honored() {
    let dir = tempfile::tempdir().unwrap();
    let carlitz = write(dir.path(), "carlitz.mot", CARLITZ);
    let out = bin()
        .arg("shtuka")
        .arg(&carlitz)
        .args(["--place", "th^2 + 1", "--prime", "t^2 + 1", "--json"])
        .env("MOTIVIC_PRECISION", "12,6")
        .output()
        .unwrap();
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["precision"]["pi"], 12);
    assert_eq!(v["precision"]["z"], 6);
    // explicit flags beat the environment
    let out = bin()
        .arg("shtuka")
        .arg(&carlitz)
        .args([
            "--place", "th^2 + 1", "--prime", "t^2 + 1", "--prec-pi", "10", "--json",
        ])
        .env("MOTIVIC_PRECISION", "12,6")
        .output()
        .unwrap();
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["precision"]["pi"], 10);
    assert_eq!(v["precision"]["z"], 6);
    // garbage in the variable is a usage error
    let out = bin()
        .arg("shtuka")
        .arg(&carlitz)
        .args(["--place", "th^2 + 1", "--prime", "t^2 + 1"])
        .env("MOTIVIC_PRECISION", "many")
        .output()
        .unwrap();
    assert_eq!(code(&out), 1);
}

#[test]
fn json_output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let carlitz = write(dir.path(), "carlitz.mot", CARLITZ);
    let run = || {
        let out = bin()
            .arg("check-thm1")
            .arg(&carlitz)
            .arg(&carlitz)
            .args(["--place-v", "th - 1", "--prime", "t^5 + 2 t + 1", "--json"])
            .output()
            .unwrap();
        assert_eq!(code(&out), 0);
        stdout(&out)
    };
    let first = run();
    let second = run();
    assert_eq!(first, second);
}
