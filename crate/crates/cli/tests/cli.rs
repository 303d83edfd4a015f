use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn example(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("examples")
        .join(name)
        .display()
        .to_string()
}

fn weyl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_weyl")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn temp_file(name: &str, content: &str) -> String {
    let dir = std::env::temp_dir().join(format!("weyl-cli-tests-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    fs::write(&path, content).unwrap();
    path.display().to_string()
}

#[test]
fn validate_exit_codes() {
    let ok = weyl(&["validate", &example("bruhat.json")]);
    assert_eq!(ok.status.code(), Some(0), "{}", stdout(&ok));
    assert!(stdout(&ok).ends_with("result: valid\n"));

    let affine = weyl(&["validate", &example("affine_a1.json")]);
    assert_eq!(affine.status.code(), Some(1));
    assert!(stdout(&affine).contains("exceed the cap"));

    let broken = temp_file("broken.json", "{\n  \"rank\": 2,\n  \"objects\": [\"a\"\n}");
    let out = weyl(&["validate", &broken]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line 4"), "{}", stderr(&out));

    let wide = temp_file(
        "wide.json",
        r#"{"rank": 2, "objects": ["x"], "reflections": {"1": {"x": "x"}, "2": {"x": "x"}},
            "cartan": {"x": [[2, -1, 0], [-1, 2, 0]]}}"#,
    );
    let out = weyl(&["validate", &wide]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("cartan.x"), "{}", stderr(&out));
}

#[test]
fn c2_violation_is_reported() {
    // The second object changes an entry of row 1 although ρ_1 swaps them.
    let text = r#"{"rank": 2, "objects": ["a", "b"],
        "reflections": {"1": {"a": "b", "b": "a"}, "2": {"a": "a", "b": "b"}},
        "cartan": {"a": [[2, -1], [-1, 2]], "b": [[2, -2], [-1, 2]]}}"#;
    let path = temp_file("c2.json", text);
    let out = weyl(&["validate", &path]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("C1: pass") && text.contains("C2: FAIL"), "{text}");
    let check = weyl(&["check", &path]);
    assert_eq!(check.status.code(), Some(1));
}

#[test]
fn poincare_of_the_bruhat_example() {
    let out = weyl(&["poincare", &example("bruhat.json"), "--target", "c"]);
    assert_eq!(
        stdout(&out),
        "coefficients: 1,3,6,7,6,7,6,3,1\nunimodal: false\nfactorization: none\n"
    );
    let out = weyl(&["poincare", &example("bruhat.json"), "--target", "a"]);
    assert!(stdout(&out).contains("factorization: (1+t)(1+t+t^2+t^3)(1+t+t^2+t^3+t^4)"));
}

#[test]
fn roots_of_a2() {
    let out = weyl(&["roots", &example("a2.json"), "--object", "a"]);
    assert_eq!(stdout(&out), "[1,0]\n[0,1]\n[1,1]\n");
}

#[test]
fn hom_lists_forty_morphisms() {
    let out = weyl(&["hom", &example("bruhat.json"), "--target", "a"]);
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 40);
    assert!(text.contains(r#""label":"12^c","source":"c","target":"a","word":[1,2],"length":2"#));
    assert!(text.lines().last().unwrap().contains("12131232^e"));
}

#[test]
fn poset_dot_uses_figure_labels() {
    let out = weyl(&["poset", &example("bruhat.json"), "--target", "a", "--format", "dot"]);
    let text = stdout(&out);
    assert!(text.starts_with("digraph"));
    assert!(text.contains("[label=\"12^c\"]"));
    assert_eq!(text.matches(" -> ").count(), 40 * 3 / 2);
}

#[test]
fn meet_and_join() {
    let file = example("bruhat.json");
    let mut args = vec!["meet", &file, "--target", "a", "--u", "1,2", "--su", "c", "--v", "1,3", "--sv", "b"];
    let meet = stdout(&weyl(&args));
    assert!(meet.contains(r#""label":"1^b""#), "{meet}");
    args[0] = "join";
    let join = stdout(&weyl(&args));
    assert!(join.contains(r#""target":"a""#), "{join}");

    let wrong = weyl(&["meet", &file, "--target", "a", "--u", "1,2", "--su", "a", "--v", "id", "--sv", "a"]);
    assert_eq!(wrong.status.code(), Some(2));
    let unknown = weyl(&["meet", &file, "--target", "z", "--u", "id", "--su", "a", "--v", "id", "--sv", "a"]);
    assert_eq!(unknown.status.code(), Some(2));
}

#[test]
fn interval_classification() {
    let file = example("bruhat.json");
    let out = weyl(&["interval", &file, "--target", "a", "--u", "id", "--su", "a", "--v", "1,2,1,3,1,2,3,2", "--sv", "e"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["classification"]["type"], "Sphere");
    assert_eq!(doc["classification"]["dimension"], 1);
    assert_eq!(doc["reduced_euler_characteristic"], -1);
    let short = weyl(&["interval", &file, "--target", "a", "--u", "id", "--su", "a", "--v", "2", "--sv", "a"]);
    assert_eq!(short.status.code(), Some(2));
}

#[test]
fn complex_and_arrangement() {
    let out = weyl(&["complex", &example("bruhat.json"), "--object", "c"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["f_vector"], serde_json::json!([22, 60, 40]));
    assert_eq!(doc["euler_characteristic"], 2);
    assert_eq!(doc["pseudomanifold"]["closed"], true);

    let out = weyl(&["arrangement", &example("a2.json"), "--object", "a"]);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["normals"].as_array().unwrap().len(), 3);
    assert_eq!(doc["chambers"].as_array().unwrap().len(), 6);
    assert_eq!(doc["simplicial"], true);
}

#[test]
fn check_passes_and_summarizes() {
    let out = weyl(&["check", &example("bruhat.json"), "--object", "b", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["passed"], true);
    for file in ["a2.json", "b2.json", "rank1.json"] {
        let out = weyl(&["check", &example(file)]);
        assert_eq!(out.status.code(), Some(0), "{file}: {}", stdout(&out));
    }
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["poset", "--target", "d", "--format", "json"],
        vec!["complex", "--object", "e", "--format", "dot"],
        vec!["check", "--object", "a"],
    ] {
        let mut full = vec![args[0].to_string(), example("bruhat.json")];
        full.extend(args[1..].iter().map(|s| s.to_string()));
        let refs: Vec<&str> = full.iter().map(String::as_str).collect();
        assert_eq!(weyl(&refs).stdout, weyl(&refs).stdout);
    }
}
