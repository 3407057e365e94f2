use std::process::{Command, Output};

use plabic_core::io::{parse, parse_collection, with_default_anchor};
use plabic_core::{enumerate_maximal, verify, Budget, Document, EnumerationMode, GrassmannNecklace};

fn fixture(name: &str) -> String {
    format!("{}/../core/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn plabic(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_plabic")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn check_accepts_the_square() {
    let o = plabic(&["check", &fixture("square.collection.json")]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("maximal"));
}

#[test]
fn check_rejects_a_crossing_pair_by_name() {
    let o = plabic(&["check", &fixture("bad_13_24.json")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("{1,3} and {2,4} are not weakly separated"), "{}", stderr(&o));
    assert!(stdout(&o).is_empty());
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(plabic(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(plabic(&["enumerate", "--uniform", "-n", "5"]).status.code(), Some(2));
    assert_eq!(plabic(&["check", "/nonexistent/file.json"]).status.code(), Some(2));
}

#[test]
fn enumerate_counts_match_the_library() {
    let o = plabic(&["enumerate", "--uniform", "-n", "5", "-k", "2", "--mode", "bruteforce", "--count"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "5\n");
    for (n, k) in [(5, 2), (6, 3), (6, 2)] {
        let nk = GrassmannNecklace::uniform(n, k).unwrap();
        let expected = enumerate_maximal(&nk, EnumerationMode::Closure, &Budget::default()).unwrap().len();
        let o = plabic(&["enumerate", "--uniform", "-n", &n.to_string(), "-k", &k.to_string(), "--count"]);
        assert_eq!(stdout(&o), format!("{expected}\n"), "({n},{k})");
    }
}

#[test]
fn verify_purity_prints_the_size() {
    let o = plabic(&["verify", "purity", "-n", "4", "-k", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("all maximal collections have size 5"), "{}", stdout(&o));
}

#[test]
fn verify_json_matches_the_library_report() {
    let o = plabic(&["verify", "winding", "-n", "4", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let expected = verify::winding(4, &Budget::default()).unwrap();
    assert_eq!(parse(&stdout(&o)).unwrap(), Document::Report(expected));
}

#[test]
fn budget_comes_from_the_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_plabic"))
        .args(["enumerate", "--uniform", "-n", "8", "-k", "4", "--mode", "bruteforce", "--count"])
        .env("WORKBENCH_BUDGET", "10")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("budget exceeded"), "{}", stderr(&o));
}

#[test]
fn maximalize_and_mutate_produce_documents() {
    let o = plabic(&["maximalize", &fixture("incomplete_example.collection.json")]);
    assert_eq!(o.status.code(), Some(0));
    let Document::Collection(full) = parse(&stdout(&o)).unwrap() else { panic!() };
    assert!(full.is_maximal(&Budget::default()).unwrap());

    let o = plabic(&["mutate", &fixture("square.collection.json"), "--site", r#"{"s":[],"a":1,"b":2,"c":3,"d":4}"#]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let square = with_default_anchor(
        &parse_collection(&std::fs::read_to_string(fixture("square.collection.json")).unwrap()).unwrap(),
    )
    .unwrap();
    let site = square.mutation_sites()[0];
    let expected = square.apply_mutation(&site).unwrap();
    let Document::Collection(got) = parse(&stdout(&o)).unwrap() else { panic!() };
    assert_eq!(got.sets(), expected.sets());

    assert_eq!(plabic(&["mutate", &fixture("square.collection.json"), "--index", "3"]).status.code(), Some(1));
}

#[test]
fn necklace_and_bases() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("perm.json");
    std::fs::write(&path, r#"{"kind":"permutation","version":"1","n":4,"perm":[3,4,1,2],"colors":{}}"#).unwrap();
    let o = plabic(&["necklace", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(matches!(parse(&stdout(&o)).unwrap(), Document::Necklace(_)));
    let o = plabic(&["bases", path.to_str().unwrap(), "--count"]);
    assert_eq!(stdout(&o), "6\n");
}

#[test]
fn render_writes_svg() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("pla.svg");
    let o = plabic(&["render", &fixture("octagon_k3.graph.json"), "--graph", "-o", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let svg = std::fs::read_to_string(&out).unwrap();
    assert!(svg.starts_with("<svg") || svg.starts_with("<?xml"));
    assert_eq!(svg.matches("<text class=\"label\"").count(), 16);
    let o = plabic(&["render", &fixture("square.collection.json")]);
    assert_eq!(stdout(&o).matches("<text class=\"label\"").count(), 5);
}
