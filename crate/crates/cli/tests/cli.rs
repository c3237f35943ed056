// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hyperchrom")).args(args).output().unwrap()
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut all = args.to_vec();
    all.push("--json");
    let out = run(&all);
    let value = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}", String::from_utf8_lossy(&out.stdout));
    });
    (value, out.status.code().unwrap())
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn generate(dir: &Path, name: &str, args: &[&str]) -> String {
    let path = dir.join(name);
    let mut all = vec!["gen", "--out", path.to_str().unwrap()];
    all.extend_from_slice(args);
    assert_eq!(run(&all).status.code(), Some(0));
    path.to_str().unwrap().to_string()
}

#[test]
fn exact_chromatic_index_of_fano_is_seven() {
    let dir = tempfile::tempdir().unwrap();
    let fano = generate(dir.path(), "fano.hg", &["--kind", "plane", "--q", "2"]);
    let (report, code) = json(&["exact", "--in", &fano]);
    assert_eq!(code, 0);
    assert_eq!(report["schema"], 1);
    assert_eq!(report["outcome"], "success");
    assert_eq!(report["colours_used"], 7);
    assert_eq!(report["input_digest"].as_str().unwrap().len(), 64);
}

#[test]
fn fano_is_not_colourable_from_six_colours() {
    let dir = tempfile::tempdir().unwrap();
    let fano = generate(dir.path(), "fano.hg", &["--kind", "plane", "--q", "2"]);
    let (report, code) = json(&["exact", "--in", &fano, "--lists", "uniform:6"]);
    assert_eq!(code, 1);
    assert_eq!(report["outcome"], "not_colourable");
}

#[test]
fn classify_near_pencil() {
    let dir = tempfile::tempdir().unwrap();
    let np = generate(dir.path(), "np5.hg", &["--kind", "near-pencil", "--n", "5"]);
    let out = run(&["classify", "--in", &np]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("near-pencil"));
}

#[test]
fn colour_two_fold_fano_from_fourteen_colours() {
    let dir = tempfile::tempdir().unwrap();
    let f2 = generate(dir.path(), "f2.hg", &["--kind", "plane", "--q", "2", "--t", "2"]);
    let (report, code) = json(&["color", "--in", &f2, "--t", "2", "--lists", "uniform:14"]);
    assert_eq!(code, 0);
    assert_eq!(report["outcome"], "success");
    assert_eq!(report["colours_used"], 14);
}

#[test]
fn list_sidecar_is_read() {
    let dir = tempfile::tempdir().unwrap();
    let hg = write(dir.path(), "p.hg", "4 3\n0 1\n1 2\n2 3\n");
    let lists = write(dir.path(), "p.lists", "5 6\n6\n5 6\n");
    let (report, code) = json(&["exact", "--in", hg.to_str().unwrap(), "--lists", lists.to_str().unwrap()]);
    assert_eq!(code, 0, "{report}");
    assert_eq!(report["outcome"], "success");
}

#[test]
fn parse_errors_name_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.hg", "2 1\n0 2\n");
    let out = run(&["classify", "--in", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["exact"]).status.code(), Some(2));
    assert_eq!(run(&["color", "--in", "/nonexistent/x.hg"]).status.code(), Some(2));
}

#[test]
fn failing_certificates_exit_with_one() {
    let dir = tempfile::tempdir().unwrap();
    let fano = generate(dir.path(), "fano.hg", &["--kind", "plane", "--q", "2"]);
    let (report, code) = json(&["order", "--in", &fano, "--mode", "extremal"]);
    assert_eq!(report["outcome"], "violated");
    assert_eq!(code, 1);
}

#[test]
fn runs_are_deterministic_given_a_seed() {
    let dir = tempfile::tempdir().unwrap();
    let h = generate(
        dir.path(),
        "r.hg",
        &["--kind", "random", "--n", "12", "--density", "20", "--seed", "5", "--t", "2"],
    );
    let again = generate(
        dir.path(),
        "r2.hg",
        &["--kind", "random", "--n", "12", "--density", "20", "--seed", "5", "--t", "2"],
    );
    assert_eq!(std::fs::read(&h).unwrap(), std::fs::read(&again).unwrap());
    let strip = |mut v: Value| {
        v.as_object_mut().unwrap().remove("wall_time_ms");
        v
    };
    let a = strip(json(&["color", "--in", &h, "--t", "2", "--seed", "9"]).0);
    let b = strip(json(&["color", "--in", &h, "--t", "2", "--seed", "9"]).0);
    assert_eq!(a, b);
}

#[test]
fn report_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let fano = generate(dir.path(), "fano.hg", &["--kind", "plane", "--q", "2"]);
    let out = dir.path().join("report.json");
    let (printed, _) = json(&["verify", "--in", &fano, "--out", out.to_str().unwrap()]);
    let written: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(printed["outcome"], "holds");
    assert_eq!(written["outcome"], printed["outcome"]);
    assert_eq!(written["certificates"], printed["certificates"]);
}

#[test]
fn sweep_holds_on_a_small_corpus() {
    let (report, code) = json(&["sweep", "--count", "20", "--n", "9", "--t", "2"]);
    assert_eq!(code, 0, "{report}");
    assert_eq!(report["outcome"], "holds");
}
