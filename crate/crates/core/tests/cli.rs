use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn edl(out: &Path, threads: Option<&str>, args: &[&str]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_edl"));
    cmd.args(args).arg("--out").arg(out);
    match threads {
        Some(t) => cmd.env("EDL_THREADS", t),
        None => cmd.env_remove("EDL_THREADS"),
    };
    cmd.output().expect("binary runs")
}

fn run_dir(o: &Output) -> PathBuf {
    PathBuf::from(String::from_utf8_lossy(&o.stdout).trim())
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

#[test]
fn distance_run_writes_reports() {
    let d = tempfile::tempdir().unwrap();
    let o = edl(
        d.path(),
        None,
        &[
            "distance",
            "--model",
            "four-corner",
            "--depth",
            "7",
            "--m",
            "4",
            "--n",
            "16",
            "--t",
            "0.8",
        ],
    );
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let dir = run_dir(&o);
    let counts = fs::read_to_string(dir.join("counts.csv")).unwrap();
    assert!(counts.starts_with("n,count,log2count\n6,"));
    let chain = fs::read_to_string(dir.join("chain.csv")).unwrap();
    assert!(chain.starts_with("stage,k,level,value,bound,margin\n"));
    assert!(chain.lines().any(|l| l.starts_with("covering,,16,")));
    let summary: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.join("summary.json")).unwrap()).unwrap();
    assert_eq!(summary["passed"], true);
    let slope = summary["distance"]["slope"].as_f64().unwrap();
    assert!((0.0..=1.0).contains(&slope));
    let config: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.join("config.json")).unwrap()).unwrap();
    assert_eq!(config["command"], "distance");
    assert_eq!(config["depth"], 7);
}

#[test]
fn exit_codes() {
    let d = tempfile::tempdir().unwrap();
    assert_eq!(
        code(&edl(
            d.path(),
            None,
            &["distance", "--model", "middle-half"]
        )),
        1
    );
    assert_eq!(
        code(&edl(d.path(), None, &["distance", "--depth", "20"])),
        2
    );
    assert_eq!(
        code(&edl(
            d.path(),
            None,
            &["dotproduct", "--depth", "5", "--pin", "0.5,0.5"]
        )),
        1
    );
    assert_eq!(
        code(&edl(d.path(), None, &["distance", "--m", "9", "--n", "8"])),
        1
    );
    assert_eq!(
        code(&edl(
            d.path(),
            None,
            &["distance", "--model", "no-such-model"]
        )),
        1
    );
    assert_eq!(
        code(&edl(d.path(), Some("zero"), &["verify", "--trials", "1"])),
        1
    );
}

#[test]
fn verify_exit_status() {
    let d = tempfile::tempdir().unwrap();
    assert_eq!(
        code(&edl(
            d.path(),
            None,
            &["verify", "--seed", "42", "--trials", "500"]
        )),
        0
    );
    let o = edl(
        d.path(),
        None,
        &["verify", "--seed", "42", "--trials", "20", "--inject-fault"],
    );
    assert_eq!(code(&o), 3);
    let c = fs::read_to_string(run_dir(&o).join("counterexample.json")).unwrap();
    assert!(c.contains("\"check\""));
    let o = edl(d.path(), None, &["verify", "--trials", "0"]);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8_lossy(&o.stderr).contains("vacuous"));
}

#[test]
fn sumproduct_and_generate() {
    let d = tempfile::tempdir().unwrap();
    let o = edl(
        d.path(),
        None,
        &[
            "sumproduct",
            "--model",
            "middle-half",
            "--depth",
            "6",
            "--pin",
            "corner",
        ],
    );
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let s = fs::read_to_string(run_dir(&o).join("summary.json")).unwrap();
    assert!(s.contains("\"identity_holds\": true"));
    let o = edl(
        d.path(),
        None,
        &["generate", "--depth", "4", "--label", "gen"],
    );
    assert_eq!(code(&o), 0);
    let dir = run_dir(&o);
    assert!(dir
        .file_name()
        .unwrap()
        .to_str()
        .unwrap()
        .starts_with("run-gen-"));
    let cloud = fs::read_to_string(dir.join("cloud.txt")).unwrap();
    assert_eq!(cloud.lines().filter(|l| !l.starts_with('#')).count(), 256);
}

#[test]
fn outputs_do_not_depend_on_thread_count() {
    let d = tempfile::tempdir().unwrap();
    for args in [
        &["distance", "--depth", "6", "--seed", "7"][..],
        &["dotproduct", "--depth", "6", "--pins", "4", "--seed", "7"][..],
        &["verify", "--trials", "50", "--seed", "7"][..],
    ] {
        let a = edl(d.path(), Some("1"), args);
        let b = edl(d.path(), Some("8"), args);
        assert_eq!(code(&a), 0);
        assert_eq!(code(&b), 0);
        for f in ["counts.csv", "chain.csv", "summary.json"] {
            assert_eq!(
                fs::read(run_dir(&a).join(f)).unwrap(),
                fs::read(run_dir(&b).join(f)).unwrap(),
                "{} differs for {args:?}",
                f
            );
        }
    }
}
