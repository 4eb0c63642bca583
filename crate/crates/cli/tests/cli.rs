use std::process::{Command, Output};

use jumpstat::format::{
    series_from_json, CoeffJson, GuessJson, MomentTableJson, StatsJson, VerdictJson,
};
use jumpstat_core::genfunc::solve_jump_distance;
use jumpstat_core::moments::reference_forms;

fn jumpstat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_jumpstat"))
        .args(args)
        .env_remove("JUMPSTAT_ORDER")
        .env_remove("JUMPSTAT_FORMAT")
        .output()
        .expect("spawn jumpstat")
}

fn stdout(o: &Output) -> &str {
    std::str::from_utf8(&o.stdout).unwrap()
}

fn stats(tree: &str) -> StatsJson {
    let o = jumpstat(&["stats", tree]);
    assert!(o.status.success());
    serde_json::from_str(stdout(&o)).unwrap()
}

#[test]
fn stats_examples() {
    assert_eq!(
        stats("."),
        StatsJson {
            v: 0,
            j: 0,
            d: 0,
            jd: 0
        }
    );
    assert_eq!(
        stats("[[.,.],[.,.]]"),
        StatsJson {
            v: 3,
            j: 1,
            d: 2,
            jd: 1
        }
    );
    assert_eq!(
        stats("[.,[.,[.,.]]]"),
        StatsJson {
            v: 3,
            j: 0,
            d: 3,
            jd: 0
        }
    );
}

#[test]
fn stats_errors() {
    let o = jumpstat(&["stats", "[.,x]"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(
        String::from_utf8_lossy(&o.stderr).contains('3'),
        "position is reported"
    );
    let o = jumpstat(&["stats", "--max-depth", "2", "[.,[.,[.,.]]]"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn missing_subcommand_is_usage_error() {
    assert_eq!(jumpstat(&[]).status.code(), Some(2));
    assert_eq!(jumpstat(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn enumerate_text_and_count() {
    let o = jumpstat(&["enumerate", "2"]);
    assert_eq!(stdout(&o), "[.,[.,.]]\n[[.,.],.]\n");
    let o = jumpstat(&["enumerate", "6", "--count"]);
    let v: serde_json::Value = serde_json::from_str(stdout(&o)).unwrap();
    assert_eq!(v["count"], 132);
    let o = jumpstat(&["enumerate", "3", "--format", "json"]);
    assert_eq!(stdout(&o).lines().count(), 5);
    assert_eq!(jumpstat(&["enumerate", "20"]).status.code(), Some(3));
}

#[test]
fn env_overrides_flags() {
    let o = Command::new(env!("CARGO_BIN_EXE_jumpstat"))
        .args(["enumerate", "5", "--count"])
        .env("JUMPSTAT_CAP", "4")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
    let o = Command::new(env!("CARGO_BIN_EXE_jumpstat"))
        .args(["series", "f"])
        .env("JUMPSTAT_ORDER", "3")
        .output()
        .unwrap();
    let coeffs: Vec<CoeffJson> = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(coeffs.len(), 4);
}

#[test]
fn series_round_trips() {
    let o = jumpstat(&["series", "K", "--order", "8"]);
    assert!(o.status.success());
    let coeffs: Vec<CoeffJson> = serde_json::from_str(stdout(&o)).unwrap();
    let s = series_from_json(&coeffs).unwrap();
    assert_eq!(s, solve_jump_distance(8).unwrap());
    assert_eq!(
        jumpstat(&["series", "K", "--order", "100000"])
            .status
            .code(),
        Some(3)
    );
}

#[test]
fn verify_examples() {
    for (th, order) in [("0", "30"), ("2", "40"), ("6", "40")] {
        let o = jumpstat(&["verify", th, "--order", order]);
        assert!(o.status.success(), "theorem {th}");
        let v: VerdictJson = serde_json::from_str(stdout(&o)).unwrap();
        assert!(v.pass);
        assert!(v.first_failure.is_none());
    }
    assert_eq!(jumpstat(&["verify", "7"]).status.code(), Some(2));
}

#[test]
fn moments_rows() {
    let o = jumpstat(&["moments", "jumps", "--max-order", "2", "--nmax", "3"]);
    let t: MomentTableJson = serde_json::from_str(stdout(&o)).unwrap();
    let row3 = &t.rows[3];
    assert_eq!(row3.raw[0], "1");
    assert_eq!(row3.central[0], "2/5");
    let row1 = &t.rows[1];
    assert_eq!(row1.central[0], "0");
    assert!(matches!(
        row1.scaled[0],
        jumpstat::format::ScaledJson::Undefined { .. }
    ));

    let o = jumpstat(&[
        "moments",
        "jumpdist",
        "--max-order",
        "2",
        "--nmax",
        "3",
        "--format",
        "csv",
    ]);
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,b_n,m_1,m_2,mu_2,scaled_2"));
    assert_eq!(lines.nth(2), Some("2,2,1/2,1/2,1/4,1"));
}

#[test]
fn moments_check_sets_exit_code() {
    let o = jumpstat(&[
        "moments",
        "jumps",
        "--max-order",
        "8",
        "--nmax",
        "20",
        "--check",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let o = jumpstat(&[
        "moments",
        "jumpdist",
        "--max-order",
        "4",
        "--nmax",
        "20",
        "--check",
    ]);
    assert_eq!(
        o.status.code(),
        Some(1),
        "the printed skewness sign does not hold"
    );
}

#[test]
fn guess_recovers_kurtosis() {
    let forms = reference_forms();
    for (stat, label, limit) in [("jumps", "7.3", "3"), ("jumpdist", "8.4", "25/4")] {
        let o = jumpstat(&["guess", stat, "scaled:4"]);
        assert!(o.status.success());
        let g: GuessJson = serde_json::from_str(stdout(&o)).unwrap();
        let want = forms.iter().find(|f| f.label == label).unwrap();
        assert_eq!(g.formula.to_formula().unwrap(), want.formula);
        assert_eq!(g.limit, limit);
    }
}

#[test]
fn guess_failure_lists_attempts() {
    let o = jumpstat(&["guess", "jumps", "scaled:4", "--max-degree", "2"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(stdout(&o)).unwrap();
    assert!(!v["attempted"].as_array().unwrap().is_empty());
}
