use std::path::PathBuf;
use std::process::{Command, Output};

fn maxcurve(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_maxcurve"))
        .args(args)
        .env_remove("MAXCURVE_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn verify_reports_a_maximal_hurwitz_curve() {
    let o = maxcurve(&["verify", "hurwitz", "--n", "3", "--p", "13"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["observed"], 248);
    assert_eq!(v["expected"], 248);
    assert_eq!(v["maximal"], true);
    assert_eq!(v["criterion"], true);
}

#[test]
fn usage_errors_exit_one() {
    for args in [
        &["verify", "hurwitz", "--n", "2", "--p", "3"][..],
        &["verify", "hurwitz", "--p", "5"],
        &["verify", "fermat", "--m", "3", "--p", "4"],
        &["no-such-command"],
        &["--budget", "0", "verify", "hermitian", "--p", "2"],
    ] {
        let o = maxcurve(args);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn outputs_are_byte_stable() {
    for args in [
        &["tables", "residues"][..],
        &["--format", "csv", "tables", "bounds"],
        &["--format", "text", "tables", "semigroup"],
        &["bounds-table", "--q-min", "8", "--q-max", "128"],
        &[
            "search", "--family", "hurwitz", "--n", "2", "--p-min", "2", "--p-max", "7", "--k-max",
            "2",
        ],
        &["semigroup", "--generators", "4,6,9"],
    ] {
        let (a, b) = (maxcurve(args), maxcurve(args));
        assert_eq!(
            a.status.code(),
            Some(0),
            "{args:?}: {}",
            String::from_utf8_lossy(&a.stderr)
        );
        assert!(!a.stdout.is_empty());
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn out_flag_writes_the_same_bytes() {
    let path: PathBuf =
        std::env::temp_dir().join(format!("maxcurve-cli-{}.json", std::process::id()));
    let args = ["semigroup", "--n", "5", "--l", "2"];
    let direct = maxcurve(&args);
    let mut with_out = vec!["--out", path.to_str().unwrap()];
    with_out.extend_from_slice(&args);
    let o = maxcurve(&with_out);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    assert_eq!(std::fs::read(&path).unwrap(), direct.stdout);
    std::fs::remove_file(path).ok();
}

#[test]
fn budget_from_environment_and_flag() {
    let tight = Command::new(env!("CARGO_BIN_EXE_maxcurve"))
        .args(["verify", "hermitian", "--p", "3"])
        .env("MAXCURVE_BUDGET", "10")
        .output()
        .unwrap();
    assert_eq!(tight.status.code(), Some(1));
    // the flag wins over the environment
    let loose = Command::new(env!("CARGO_BIN_EXE_maxcurve"))
        .args(["--budget", "100", "verify", "hermitian", "--p", "3"])
        .env("MAXCURVE_BUDGET", "10")
        .output()
        .unwrap();
    assert_eq!(loose.status.code(), Some(0));
    // search keeps over-budget rows, marked unverified
    let o = maxcurve(&[
        "--budget", "100", "--format", "csv", "search", "--family", "fermat", "--m", "3",
        "--p-min", "2", "--p-max", "5", "--k-max", "1",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(
        text.lines()
            .any(|l| l.starts_with("fermat,3,5,1,5,") && l.contains("unverified")),
        "{text}"
    );
}

#[test]
fn no_search_disagrees() {
    for family in [
        &["--family", "hurwitz", "--n", "2"][..],
        &["--family", "hurwitz", "--n", "3"],
        &["--family", "generalized", "--n", "3", "--l", "2"],
        &["--family", "fermat", "--m", "7"],
        &["--family", "hermitian"],
    ] {
        let mut args = vec!["--format", "csv", "search"];
        args.extend_from_slice(family);
        // q up to 13, and up to 25 through squares of small primes
        for range in [
            ["--p-min", "2", "--p-max", "13", "--k-max", "1"],
            ["--p-min", "2", "--p-max", "5", "--k-max", "2"],
        ] {
            let mut args = args.clone();
            args.extend_from_slice(&range);
            let o = maxcurve(&args);
            assert_eq!(o.status.code(), Some(0), "{args:?}");
            assert!(!stdout(&o).contains(",disagree,"), "{args:?}");
        }
    }
}

#[test]
fn covering_check_from_specs() {
    let o = maxcurve(&[
        "covering-check",
        "--domain",
        "hermitian::13:1",
        "--target",
        "hurwitz:3:13:1",
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["ok"], true);
}

#[test]
fn bounds_table_defaults_to_csv() {
    let o = maxcurve(&["bounds-table", "--q-min", "8", "--q-max", "16"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("q,p,d1"));
    // 8, 9, 11, 13, 16
    assert_eq!(lines.count(), 5);
    let json = maxcurve(&[
        "--format",
        "json",
        "bounds-table",
        "--q-min",
        "8",
        "--q-max",
        "16",
    ]);
    assert!(stdout(&json).trim_start().starts_with('['));
}
