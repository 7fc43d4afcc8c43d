use std::process::Command;

fn udw(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_udw")).args(args).output().unwrap()
}

#[test]
fn point_prints_header_and_row() {
    let o = udw(&["point", "--set", "t_ab_T=7"]);
    assert!(o.status.success());
    let text = String::from_utf8(o.stdout).unwrap();
    assert_eq!(text.lines().count(), 2);
    assert!(text.lines().nth(1).unwrap().contains("lightlike_band"));
}

#[test]
fn exit_codes_follow_error_kind() {
    assert_eq!(udw(&["point", "--set", "bogus=1"]).status.code(), Some(2));
    assert_eq!(udw(&["point", "--set", "n=1"]).status.code(), Some(3));
    let o = udw(&["point", "--set", "lambda_tilde=1e8"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8(o.stderr).unwrap().starts_with("error:regime"));
}

#[test]
fn sweep_writes_to_out() {
    let dir = std::env::temp_dir().join(format!("udw-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join("s.csv");
    let o = udw(&["sweep", "--set", "tab_steps=3", "--out", p.to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(std::fs::read_to_string(&p).unwrap().lines().count(), 4);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn commutator_table_has_both_columns() {
    let o = udw(&["commutator", "--set", "tab_steps=5"]);
    assert!(o.status.success());
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.starts_with("dt_T,dx_T,im_c_minus_numeric,im_c_minus_closed"));
    assert_eq!(text.lines().count(), 6);
}
