use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn xminor(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_xminor"))
        .args(args)
        .env_remove("XMINOR_SEED")
        .env_remove("XMINOR_STREAM")
        .output()
        .unwrap()
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("xminor-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    fs::write(&path, contents).unwrap();
    path
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn lambda_prints_constant() {
    let o = xminor(&["lambda"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("0.63817268633"));
}

#[test]
fn usage_errors_exit_3() {
    assert_eq!(xminor(&["no-such-command"]).status.code(), Some(3));
    assert_eq!(
        xminor(&["derive-params", "--epsilon", "0.5"]).status.code(),
        Some(3)
    );
    assert_eq!(xminor(&["--help"]).status.code(), Some(0));
    assert_eq!(
        xminor(&["derive-params", "--epsilon", "2", "--d", "16", "--t", "100"])
            .status
            .code(),
        Some(3)
    );
}

#[test]
fn derive_params_record() {
    let o = xminor(&[
        "derive-params",
        "--epsilon",
        "0.5",
        "--d",
        "16",
        "--t",
        "100",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("s=8\n"));
    assert!(out.contains("r=5\n"));
}

#[test]
fn minor_test_exit_codes() {
    let k3 = scratch("k3.txt", "3 3\n0 1\n0 2\n1 2\n");
    let p5 = scratch("p5.txt", "5 4\n0 1\n1 2\n2 3\n3 4\n");
    let c5 = scratch("c5.txt", "5 5\n0 1\n0 4\n1 2\n2 3\n3 4\n");
    let run = |h: &PathBuf, g: &PathBuf, extra: &[&str]| {
        let mut args = vec![
            "minor-test",
            "--pattern",
            h.to_str().unwrap(),
            "--host",
            g.to_str().unwrap(),
        ];
        args.extend_from_slice(extra);
        xminor(&args).status.code()
    };
    assert_eq!(run(&k3, &c5, &[]), Some(0));
    assert_eq!(run(&k3, &p5, &[]), Some(1));
    let k6 = scratch("k6.txt", &{
        let mut s = String::from("6 15\n");
        for u in 0..6 {
            for v in u + 1..6 {
                s.push_str(&format!("{u} {v}\n"));
            }
        }
        s
    });
    let pet = scratch(
        "petersen.txt",
        "10 15\n0 1\n0 4\n0 5\n1 2\n1 6\n2 3\n2 7\n3 4\n3 8\n4 9\n5 7\n5 8\n6 8\n6 9\n7 9\n",
    );
    assert_eq!(run(&k6, &pet, &["--budget", "2"]), Some(2));
    let bad = scratch("bad.txt", "3 1\n0 0\n");
    assert_eq!(run(&bad, &c5, &[]), Some(3));
}

#[test]
fn run_writes_replayable_record() {
    let cfg = scratch(
        "run.cfg",
        "epsilon = 0.5\nd = 4\nt = 8\ntrials = 5\nseed = 2\n",
    );
    let out = std::env::temp_dir().join(format!("xminor-cli-{}/run.jsonl", std::process::id()));
    let _ = fs::remove_file(&out);
    let o = xminor(&[
        "run",
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let o = xminor(&["run", "--replay", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("replay matches"));
    let missing = scratch("missing.cfg", "epsilon = 0.5\nd = 4\n");
    let o = xminor(&["run", "--config", missing.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("`t`"));
}

#[test]
fn seed_env_fallback() {
    let run = |env: Option<&str>, args: &[&str]| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_xminor"));
        c.args(["gen-g0", "--epsilon", "0.5", "--d", "6", "--t", "7"])
            .args(args)
            .env_remove("XMINOR_SEED");
        if let Some(v) = env {
            c.env("XMINOR_SEED", v);
        }
        stdout(&c.output().unwrap())
    };
    assert_eq!(run(Some("17"), &[]), run(None, &["--seed", "17"]));
}

#[test]
fn counting_commands() {
    let o = xminor(&["g-count", "--d", "2", "--t", "2", "--n", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("g     8\n"));
    let o = xminor(&[
        "count-blobbings",
        "--d",
        "2",
        "--t",
        "2",
        "--capacity",
        "3",
        "--r",
        "2",
    ]);
    assert_eq!(stdout(&o), "8\n");
    let o = xminor(&[
        "count-blobbings",
        "--d",
        "20",
        "--t",
        "4",
        "--capacity",
        "80",
        "--r",
        "4",
        "--budget",
        "10",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn bounds_and_star() {
    let o = xminor(&[
        "bounds",
        "--epsilon",
        "0.5",
        "--d",
        "16",
        "--t",
        "20",
        "--m",
        "3",
        "--q",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("chain holds     true"));
    let k4 = scratch("k4.txt", "4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n");
    let o = xminor(&[
        "verify-star",
        "--graph",
        k4.to_str().unwrap(),
        "--set-size-cap",
        "1",
        "--s",
        "2",
        "--alpha",
        "0.5",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let e4 = scratch("e4.txt", "4 0\n");
    let o = xminor(&[
        "verify-star",
        "--graph",
        e4.to_str().unwrap(),
        "--set-size-cap",
        "1",
        "--s",
        "2",
        "--alpha",
        "0.5",
    ]);
    assert_eq!(o.status.code(), Some(0));
}
