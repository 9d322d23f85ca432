use std::process::{Command, Output};

fn lysenok(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lysenok"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = lysenok(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn xi_commands() {
    assert_eq!(stdout(&["xi", "letter", "8"]), "d\n");
    assert_eq!(stdout(&["xi", "prefix", "4"]), "acab\n");
    assert_eq!(stdout(&["xi", "occurs", "aa"]), "false\n");
    assert_eq!(lysenok(&["xi", "letter", "0"]).status.code(), Some(2));
}

#[test]
fn cylinder_commands() {
    assert_eq!(stdout(&["cyl", "measure", "[.a]"]), "1/2\n");
    assert_eq!(stdout(&["cyl", "measure", "[.d]"]), "1/14\n");
    assert_eq!(stdout(&["cyl", "normal", "[.ba]"]), "T^1 [.ab]\n");
    assert_eq!(stdout(&["cyl", "empty", "[a.a]"]), "true\n");
    assert_eq!(lysenok(&["cyl", "empty", "[a.x]"]).status.code(), Some(2));
}

#[test]
fn element_commands() {
    assert_eq!(stdout(&["elem", "order", "tau([.acab])"]), "3\n");
    assert_eq!(stdout(&["elem", "order", "T"]), "infinite\n");
    assert_eq!(stdout(&["elem", "index", "delta([.b])*T^5"]), "5\n");
    assert_eq!(
        stdout(&["elem", "eq", "delta([.acacac])*delta([.acacac])", "T^0"]),
        "true\n"
    );
    let ser = stdout(&["elem", "eval", "delta([.b])"]);
    assert_eq!(ser, "r=1;{ab:1,ac:0,ad:0,ba:-1,ca:0,da:0}\n");
    assert_eq!(stdout(&["elem", "eq", ser.trim(), "delta([.b])"]), "true\n");
    assert_eq!(
        lysenok(&["elem", "eval", "psi([.ac],0,2)"]).status.code(),
        Some(2)
    );
}

#[test]
fn rewrite_command() {
    let out = stdout(&["rewrite", "delta([.c])"]);
    let lines: Vec<&str> = out.lines().collect();
    assert!(lines[0].starts_with("word: "));
    assert_eq!(&lines[1..], ["verified: true", "index: 0"]);
    let out = stdout(&["rewrite", "psi([.b],-1,2)*T^3"]);
    assert!(out.ends_with("verified: true\nindex: 3\n"));
    let raw = lysenok(&["rewrite", "r=1;{ab:1,ac:0,ad:0,ba:-1,ca:0,da:0}"]);
    assert_eq!(raw.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&raw.stderr).contains("not decomposed"));
}

#[test]
fn verify_and_grig_commands() {
    let out = stdout(&["verify", "cyl-st3", "--n", "5"]);
    assert!(out.ends_with("passed: 5\nfailed: 0\n"), "{out}");
    assert_eq!(lysenok(&["verify", "nope"]).status.code(), Some(2));
    let out = stdout(&["grig", "relator", "1", "AD4"]);
    assert_eq!(out, format!("word: {}\nidentity: true\n", "acac".repeat(4)));
}
