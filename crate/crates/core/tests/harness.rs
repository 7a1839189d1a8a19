use std::process::Command;

use gamma_acyclic::harness::{run, Config, Status, Suite};
use gamma_acyclic::Error;

const GL2: &str = r#"{"p":3,"f":1,"shape":[2],"rep":"std","suites":["gl2-main","oracle"]}"#;

#[test]
fn reports_are_deterministic() {
    let cfg = Config::from_json(GL2).unwrap();
    let a = run(&cfg, &[], 7, false).unwrap();
    let b = run(&cfg, &[], 7, false).unwrap();
    assert_eq!(a.to_json().unwrap(), b.to_json().unwrap());
    assert_eq!(a.to_csv().unwrap(), b.to_csv().unwrap());
    assert!(a.pass);
}

#[test]
fn config_errors() {
    let bad = [
        r#"{"p":3,"shape":[2],"rep":"std","suites":["nope"]}"#,
        r#"{"p":6,"shape":[2],"rep":"std"}"#,
        r#"{"p":3,"shape":[2],"rep":"std","suites":["gl3-top"]}"#,
        r#"{"p":3,"shape":[2],"rep":"std","extra":1}"#,
        r#"{"p":3,"shape":[2],"rep":"sym9x"}"#,
    ];
    for text in bad {
        assert!(matches!(Config::from_json(text), Err(Error::ConfigInvalid(_))), "{text}");
    }
    let shallow = Config::from_json(r#"{"p":3,"shape":[3],"rep":"std","suites":["gl3-top"],"caps":{"tower":2}}"#).unwrap();
    assert!(matches!(run(&shallow, &[], 1, false), Err(Error::ConfigInvalid(_))));
}

#[test]
fn untwisted_mutation_is_skipped_only_when_vacuous() {
    let std = Config::from_json(r#"{"p":5,"shape":[2],"rep":"std","suites":["gl2-main"]}"#).unwrap();
    let sym3 = Config::from_json(r#"{"p":5,"shape":[2],"rep":"sym3","suites":["gl2-main"]}"#).unwrap();
    let status = |cfg: &Config| {
        let r = run(cfg, &[Suite::Gl2Main], 1, false).unwrap();
        r.suites[0].checks.iter().find(|c| c.check == "untwisted-mutation").unwrap().status
    };
    assert_eq!(status(&std), Status::Skip);
    assert_eq!(status(&sym3), Status::Pass);
}

fn verify(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_verify")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8_lossy(&out.stdout).into_owned())
}

#[test]
fn cli_exit_codes_and_outputs() {
    let dir = std::env::temp_dir().join(format!("verify-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("c.json");
    std::fs::write(&cfg, GL2).unwrap();
    let cfg = cfg.to_str().unwrap();

    let (code, list) = verify(&["list-suites"]);
    assert_eq!(code, 0);
    assert!(Suite::ALL.iter().all(|s| list.contains(s.name())));
    let (code, text) = verify(&["explain", "gl2-main"]);
    assert_eq!(code, 0);
    assert!(text.contains("Borel"));
    assert_eq!(verify(&["explain", "nope"]).0, 2);

    let csv = dir.join("r.csv");
    assert_eq!(verify(&["run", "--config", cfg, "--out", csv.to_str().unwrap(), "--jobs", "2"]).0, 0);
    let body = std::fs::read_to_string(&csv).unwrap();
    assert!(body.starts_with("suite,p,f,shape,rep,check,status,value,detail,wall_ms"));
    let (code, json) = verify(&["run", "--config", cfg, "--suite", "oracle", "--seed", "3"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["suites"][0]["suite"], "oracle");

    std::fs::write(dir.join("bad.json"), "{").unwrap();
    assert_eq!(verify(&["run", "--config", dir.join("bad.json").to_str().unwrap()]).0, 2);
    assert_eq!(verify(&["run", "--config", cfg, "--suite", "gl3-top"]).0, 2);
}
