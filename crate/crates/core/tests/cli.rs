use std::path::PathBuf;
use std::process::{Command, Output};

fn qborel(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qborel")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("qborel-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn write(name: &str, body: &str) -> String {
    let p = scratch(name);
    std::fs::write(&p, body).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn rootdata_lists_roots() {
    let o = qborel(&["rootdata", "A2", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("admissible\ttrue"));
    for r in ["[1, 0]", "[1, 1]", "[0, 1]"] {
        assert!(s.contains(r), "{}", s);
    }
    assert_eq!(qborel(&["rootdata", "B2", "5"]).status.code(), Some(1));
}

#[test]
fn cohomology_table_for_a1() {
    let o = qborel(&["cohomology", "A1", "5"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "degree\tH1\tH2\n5\t0\t1\n");
}

#[test]
fn exit_codes() {
    assert_eq!(qborel(&["--help"]).status.code(), Some(0));
    assert_eq!(qborel(&["--version"]).status.code(), Some(0));
    assert_eq!(qborel(&["frobnicate"]).status.code(), Some(64));
    assert_eq!(qborel(&["rootdata", "A2"]).status.code(), Some(64));
    assert_eq!(qborel(&["rootdata", "Q2", "5"]).status.code(), Some(3));
    let bad = write("bad.json", "{");
    assert_eq!(qborel(&["twist", "verify", &bad]).status.code(), Some(3));
    let missing = scratch("absent.json");
    assert_eq!(qborel(&["twist", "verify", missing.to_str().unwrap()]).status.code(), Some(3));
}

#[test]
fn verify_rejects_a_non_twist() {
    // 1⊗1 + E⊗E for A1 at l = 5
    let one = r#"[[1,1],[0,1],[0,1],[0,1]]"#;
    let body = format!(
        r#"{{"type":"A1","l":5,"twist":[{{"coeff":{one},"left":{{"k":[0],"e":[0]}},"right":{{"k":[0],"e":[0]}}}},{{"coeff":{one},"left":{{"k":[0],"e":[1]}},"right":{{"k":[0],"e":[1]}}}}]}}"#
    );
    let p = write("nontwist.json", &body);
    assert_eq!(qborel(&["twist", "verify", &p]).status.code(), Some(2));
}

#[test]
fn generate_reduce_roundtrip() {
    for (label, form, dense) in [("A1", "[[0]]", true), ("A2", "[[0,1],[4,0]]", false)] {
        let mut args = vec!["twist", "generate", label, "5", "--form", form, "--seed", "3"];
        if dense {
            args.push("--dense");
        }
        let g = qborel(&args);
        assert_eq!(g.status.code(), Some(0), "{}", String::from_utf8_lossy(&g.stderr));
        let twist = write(&format!("twist-{}.json", label), &stdout(&g));
        if label == "A1" {
            assert_eq!(qborel(&["twist", "verify", &twist]).status.code(), Some(0));
        }

        let r = qborel(&["twist", "reduce", &twist, "--form-hint", form]);
        assert_eq!(r.status.code(), Some(0), "{}", String::from_utf8_lossy(&r.stderr));
        let nf: serde_json::Value = serde_json::from_str(&stdout(&r)).unwrap();
        let want: serde_json::Value = serde_json::from_str(form).unwrap();
        assert_eq!(nf["alt_form"], want);
        let nf_path = write(&format!("nf-{}.json", label), &stdout(&r));

        let rt = qborel(&["twist", "roundtrip", &nf_path, "--input", &twist]);
        assert_eq!(rt.status.code(), Some(0));
        assert!(stdout(&rt).contains("exact"));
    }
}

#[test]
fn form_hint_mismatch_fails() {
    let g = qborel(&["twist", "generate", "A2", "5", "--form", "[[0,1],[4,0]]", "--seed", "1"]);
    let twist = write("hint.json", &stdout(&g));
    let r = qborel(&["twist", "reduce", &twist, "--form-hint", "[[0,2],[3,0]]"]);
    assert_eq!(r.status.code(), Some(2));
}

#[test]
fn alt_enumerate_counts() {
    let o = qborel(&["alt", "enumerate", "A2", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let forms: Vec<Vec<Vec<i64>>> = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(forms.len(), 5);
    assert!(forms.iter().all(|m| m[0][0] == 0 && m[1][1] == 0 && (m[0][1] + m[1][0]) % 5 == 0));
}

#[test]
fn acceptance_subset() {
    let o = qborel(&["acceptance", "--suite", "quick", "--only", "7,8"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("PASS criterion 7"));
    assert!(s.contains("PASS criterion 8"));
}
