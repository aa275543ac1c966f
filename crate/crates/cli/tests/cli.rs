use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../core/fixtures")
        .join(name)
}

fn sctool(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sctool"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

#[test]
fn recognize_smallstar() {
    let out = sctool(&[
        "recognize",
        path(&fixture("smallstar.profile")),
        "--format",
        "json",
    ]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["single_crossing"], true);
    assert_eq!(
        v["full_tree"]["edges"],
        serde_json::json!([[1, 2], [2, 3], [2, 4]])
    );
    let pairs = v["cut_table"]["pairs"].as_array().unwrap();
    let bc = pairs.iter().find(|p| p["a"] == "b" && p["b"] == "c").unwrap();
    assert_eq!(bc["cut"]["edge"], serde_json::json!([1, 2]));
}

#[test]
fn recognize_latin4_is_negative() {
    let out = sctool(&["recognize", path(&fixture("latin4.profile"))]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stdout).contains("not single-crossing"));
    let out = sctool(&["recognize", path(&fixture("latin4.profile")), "--format", "json"]);
    assert_eq!(json(&out)["single_crossing"], false);
}

#[test]
fn cc_smallstar() {
    let (p, t) = (fixture("smallstar.profile"), fixture("smallstar.tree"));
    let out = sctool(&[
        "cc",
        path(&p),
        path(&t),
        "-k",
        "2",
        "--misrep",
        "borda",
        "--rule",
        "utilitarian",
        "--format",
        "json",
    ]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["phi"], "1/1");
    assert_eq!(v["committee"], serde_json::json!(["a", "c"]));
    assert_eq!(v["assignment"]["4"], "c");
    assert_eq!(v["mode"], "utilitarian");

    let out = sctool(&[
        "cc",
        path(&p),
        path(&t),
        "-k",
        "1",
        "--rule",
        "egalitarian",
        "--format",
        "json",
    ]);
    assert_eq!(json(&out)["phi"], "2/1");
    let out = sctool(&["cc", path(&p), path(&t), "-k", "3", "--format", "json"]);
    assert_eq!(json(&out)["phi"], "0/1");
}

#[test]
fn cc_agrees_with_oracle() {
    let p = fixture("smallstar.profile");
    for k in ["1", "2", "3"] {
        for rule in ["utilitarian", "egalitarian"] {
            let dp = sctool(&[
                "cc",
                path(&p),
                path(&fixture("smallstar.tree")),
                "-k",
                k,
                "--rule",
                rule,
                "--format",
                "json",
            ]);
            let bf = sctool(&[
                "oracle",
                "cc",
                path(&p),
                "-k",
                k,
                "--rule",
                rule,
                "--format",
                "json",
            ]);
            assert_eq!(json(&dp)["phi"], json(&bf)["phi"], "k={k} {rule}");
        }
    }
}

#[test]
fn cc_on_a_wrong_tree_is_negative() {
    let dir = TempDir::new().unwrap();
    let line = write(&dir, "line.tree", "1 2\n2 3\n3 4\n");
    let out = sctool(&["cc", path(&fixture("smallstar.profile")), path(&line), "-k", "2"]);
    assert_eq!(code(&out), 1);
    let out = sctool(&[
        "verify",
        path(&fixture("smallstar.profile")),
        path(&line),
        "--format",
        "json",
    ]);
    assert_eq!(code(&out), 1);
    assert_eq!(json(&out)["single_crossing"], false);
}

#[test]
fn verify_reports_minimality() {
    let out = sctool(&[
        "verify",
        path(&fixture("two.profile")),
        path(&fixture("two.tree")),
        "--format",
        "json",
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["minimal"], true);

    let dir = TempDir::new().unwrap();
    let p = write(&dir, "p", "a b\na b\na b\nb a\n");
    let t = write(&dir, "t", "1 2\n2 3\n");
    let out = sctool(&["verify", path(&p), path(&t), "--format", "json"]);
    // voters 1 and 2 are clones, so the edge between them is collapsible
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["minimal"], false);
    assert_eq!(v["collapsible_edges"], serde_json::json!([[1, 2]]));

    let short = write(&dir, "short", "1 2\n");
    assert_eq!(code(&sctool(&["verify", path(&p), path(&short)])), 2);
}

#[test]
fn json_output_is_deterministic() {
    let star = fixture("smallstar.profile");
    let args = ["recognize", path(&star), "--format", "json"];
    let a = sctool(&args);
    let b = sctool(&args);
    assert_eq!(a.stdout, b.stdout);
    let dom = |seed: &str| {
        sctool(&[
            "check-domain",
            path(&fixture("latin4.profile")),
            "--seed",
            seed,
            "--format",
            "json",
        ])
        .stdout
    };
    assert_eq!(dom("7"), dom("7"));
}

#[test]
fn input_errors_name_the_line() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.profile", "a b c\na b c\n# comment\nc x a\n");
    let out = sctool(&["recognize", path(&bad)]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("line 4"), "{}", stderr(&out));
    assert!(stderr(&out).contains("`x`"));

    let short = write(&dir, "short.profile", "a b c\na b\n");
    let out = sctool(&["majority", path(&short)]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("line 2"));

    let tree = write(&dir, "bad.tree", "1 2\n2 three\n");
    let out = sctool(&["verify", path(&fixture("smallstar.profile")), path(&tree)]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("line 2"));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(code(&sctool(&["recognize"])), 2);
    assert_eq!(code(&sctool(&["recognize", "/nonexistent/file"])), 2);
    assert_eq!(code(&sctool(&["frobnicate"])), 2);
    assert_eq!(
        code(&sctool(&[
            "recognize",
            path(&fixture("smallstar.profile")),
            "--bogus"
        ])),
        2
    );
    // randomized subcommands need an explicit seed
    assert_eq!(
        code(&sctool(&["check-domain", path(&fixture("latin4.profile"))])),
        2
    );
    let (p, t) = (fixture("smallstar.profile"), fixture("smallstar.tree"));
    assert_eq!(code(&sctool(&["cc", path(&p), path(&t), "-k", "0"])), 2);
    assert_eq!(
        code(&sctool(&[
            "cc",
            path(&p),
            path(&t),
            "-k",
            "2",
            "--misrep",
            "plurality"
        ])),
        2
    );
    assert_eq!(code(&sctool(&["oracle", "trees", "9"])), 2);
}

#[test]
fn misrep_specs() {
    let (p, t) = (fixture("smallstar.profile"), fixture("smallstar.tree"));
    let out = sctool(&[
        "cc",
        path(&p),
        path(&t),
        "-k",
        "2",
        "--misrep",
        "positional:0,1/2,1/2,3",
        "--format",
        "json",
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["phi"], "1/2");

    let out = sctool(&[
        "cc",
        path(&p),
        path(&t),
        "-k",
        "2",
        "--misrep",
        "positional:0,2,1,3",
    ]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("smaller than"));

    let dir = TempDir::new().unwrap();
    let approval = write(&dir, "approval", "a b\na\n-\nc\n");
    let out = sctool(&[
        "cc",
        path(&p),
        path(&t),
        "-k",
        "1",
        "--misrep",
        &format!("approval:{}", path(&approval)),
        "--format",
        "json",
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["phi"], "2/1");

    // columns a b c d; voter 2 ranks a c b d
    let matrix = write(&dir, "matrix", "0 1 2 3\n0 2 1 3\n1 3 2 0\n2 1 0 3\n");
    let out = sctool(&[
        "cc",
        path(&p),
        path(&t),
        "-k",
        "2",
        "--misrep",
        &format!("matrix:{}", path(&matrix)),
        "--format",
        "json",
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["phi"], "1/1");

    let wrong = write(&dir, "wrong", "0 1 2 3\n0 1 2 3\n0 1 2 3\n0 1 2 3\n");
    let out = sctool(&[
        "cc",
        path(&p),
        path(&t),
        "-k",
        "2",
        "--misrep",
        &format!("matrix:{}", path(&wrong)),
    ]);
    assert_eq!(code(&out), 2);
}

#[test]
fn majority_reports() {
    let out = sctool(&[
        "majority",
        path(&fixture("smallstar.profile")),
        "--format",
        "json",
    ]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["transitive"], true);
    assert_eq!(v["representative"]["status"], "even_electorate");
    assert_eq!(v["margins"][0], serde_json::json!([0, 2, 2, 2]));

    let dir = TempDir::new().unwrap();
    let cycle = write(&dir, "cycle", "a b c\na b c\nb c a\nc a b\n");
    let out = sctool(&["majority", path(&cycle), "--format", "json"]);
    assert_eq!(code(&out), 1);
    assert_eq!(json(&out)["violation"], serde_json::json!(["a", "b", "c"]));

    let odd = write(&dir, "odd", "a b c d\n3* a b c d\nb a c d\nd c b a\n");
    let out = sctool(&["majority", path(&odd), "--format", "json"]);
    assert_eq!(code(&out), 0);
    assert_eq!(
        json(&out)["representative"],
        serde_json::json!({"status": "found", "voter": 1})
    );
}

#[test]
fn check_domain() {
    let out = sctool(&[
        "check-domain",
        path(&fixture("smallstar.profile")),
        "--seed",
        "3",
        "--format",
        "json",
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["failures"], 0);
    assert_eq!(json(&out)["trials"], 1000);

    let out = sctool(&[
        "check-domain",
        path(&fixture("latin4.profile")),
        "--seed",
        "3",
        "--trials",
        "50",
        "--format",
        "json",
    ]);
    assert_eq!(code(&out), 1);
    let v = json(&out);
    assert!(v["failures"].as_u64().unwrap() > 0);
    assert_eq!(v["counterexample"]["cycle"].as_array().unwrap().len(), 3);
}

#[test]
fn generate_round_trip() {
    let dir = TempDir::new().unwrap();
    let tree = write(&dir, "t", "1 2\n2 3\n2 4\n4 5\n");
    let out = sctool(&["generate", path(&tree)]);
    assert_eq!(code(&out), 0);
    let profile = write(&dir, "p", &String::from_utf8(out.stdout).unwrap());
    let out = sctool(&["recognize", path(&profile), "--format", "json"]);
    assert_eq!(
        json(&out)["full_tree"]["edges"],
        serde_json::json!([[1, 2], [2, 3], [2, 4], [4, 5]])
    );

    let out = sctool(&["generate", path(&fixture("two.tree")), "--format", "json"]);
    assert_eq!(
        json(&out)["voters"],
        serde_json::json!([["a1", "a2"], ["a2", "a1"]])
    );

    let empty = write(&dir, "empty", "# nothing\n");
    assert_eq!(code(&sctool(&["generate", path(&empty)])), 2);
}

#[test]
fn oracle_subcommands() {
    let out = sctool(&["oracle", "trees", "4"]);
    assert_eq!(code(&out), 0);
    assert_eq!(String::from_utf8_lossy(&out.stdout).lines().count(), 16);

    let out = sctool(&[
        "oracle",
        "recognize",
        path(&fixture("smallstar.profile")),
        "--format",
        "json",
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(
        json(&out)["minimal"][0]["edges"],
        serde_json::json!([[1, 2], [2, 3], [2, 4]])
    );
    assert_eq!(
        code(&sctool(&[
            "oracle",
            "recognize",
            path(&fixture("latin4.profile"))
        ])),
        1
    );

    let out = sctool(&[
        "oracle",
        "classical",
        path(&fixture("unanimous4.profile")),
        "--format",
        "json",
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["line"], serde_json::json!([1, 2, 3, 4]));
    assert_eq!(
        code(&sctool(&[
            "oracle",
            "classical",
            path(&fixture("smallstar.profile"))
        ])),
        1
    );
}
