use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use tempfile::TempDir;

struct Sandbox {
    dir: TempDir,
}

impl Sandbox {
    fn new() -> Self {
        Sandbox {
            dir: TempDir::new().unwrap(),
        }
    }

    fn file(&self, name: &str, text: &str) -> PathBuf {
        let path = self.dir.path().join(name);
        fs::write(&path, text).unwrap();
        path
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }
}

fn popov(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_popov"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

const HERMITE_INPUT: &str = "7\n2 2\n0 1\n1\n0\n0 1\n";
const HERMITE_OUTPUT: &str = "7\n2 2\n0 0 1\n0\n0 1\n1\n";

#[test]
fn popov_of_identity_is_identity() {
    let sb = Sandbox::new();
    let id = "# identity\n97\n3 3\n1\n0\n0\n0\n1\n0\n0\n0\n1\n";
    let a = sb.file("id.txt", id);
    let out = popov(&["popov", a.to_str().unwrap(), "--shift", "uniform"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "97\n3 3\n1\n0\n0\n0\n1\n0\n0\n0\n1\n");
}

#[test]
fn hermite_shift_flag_and_hermite_command_agree() {
    let sb = Sandbox::new();
    let a = sb.file("a.txt", HERMITE_INPUT);
    let a = a.to_str().unwrap();
    let out = popov(&["popov", a, "--shift", "hermite"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), HERMITE_OUTPUT);
    assert_eq!(stdout(&popov(&["hermite", a])), HERMITE_OUTPUT);
}

#[test]
fn explicit_negative_shift_is_accepted() {
    let sb = Sandbox::new();
    let a = sb.file("a.txt", HERMITE_INPUT);
    let out = popov(&["popov", a.to_str().unwrap(), "--shift", "-3,-1"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), HERMITE_OUTPUT);
}

#[test]
fn output_file_passes_popov_check() {
    let sb = Sandbox::new();
    let a = sb.file(
        "a.txt",
        "65521\n3 3\n1 2 3\n4 5\n6\n7 8 9 10\n11\n12 13\n0\n14 15 16\n17 0 1\n",
    );
    let out_path = sb.path("p.txt");
    let out = popov(&[
        "popov",
        a.to_str().unwrap(),
        "--shift",
        "0,5,2",
        "-o",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    let check = popov(&[
        "check",
        out_path.to_str().unwrap(),
        "--shift",
        "0,5,2",
        "--popov",
    ]);
    assert_eq!(
        code(&check),
        0,
        "{}",
        String::from_utf8_lossy(&check.stderr)
    );
    // a second run is byte-identical
    let again = popov(&["popov", a.to_str().unwrap(), "--shift", "0,5,2"]);
    assert_eq!(stdout(&again), fs::read_to_string(out_path).unwrap());
}

#[test]
fn malformed_input_exits_1() {
    let sb = Sandbox::new();
    let a = sb.file("a.txt", "7\n1 1\n1 x\n");
    let out = popov(&["popov", a.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
    assert_eq!(code(&popov(&["popov", "/nonexistent/matrix.txt"])), 1);
    let a = sb.file("b.txt", HERMITE_INPUT);
    assert_eq!(
        code(&popov(&["popov", a.to_str().unwrap(), "--shift", "1,2,3"])),
        1
    );
}

#[test]
fn singular_input_exits_2() {
    let sb = Sandbox::new();
    let a = sb.file("a.txt", "7\n2 2\n1 1\n1 1\n2 2\n2 2\n");
    assert_eq!(code(&popov(&["popov", a.to_str().unwrap()])), 2);
    assert_eq!(code(&popov(&["smith", a.to_str().unwrap()])), 2);
}

#[test]
fn solve_modsys_prints_basis_and_minimal_degree() {
    let sb = Sandbox::new();
    let m = sb.file("m.txt", "7\n1 1\n0 0 1\n");
    let f = sb.file("f.txt", "7\n2 1\n1\n1\n");
    let out = popov(&[
        "solve-modsys",
        m.to_str().unwrap(),
        f.to_str().unwrap(),
        "--shift",
        "0,0",
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "7\n2 2\n0 0 1\n0\n6\n1\n# delta = 2,0\n");
}

#[test]
fn solve_modsys_zero_equations_give_identity() {
    let sb = Sandbox::new();
    let m = sb.file("m.txt", "5\n2 1\n1 1\n0 0 1\n");
    let f = sb.file("f.txt", "5\n2 2\n0\n0\n0\n0\n");
    let out = popov(&["solve-modsys", m.to_str().unwrap(), f.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "5\n2 2\n1\n0\n0\n1\n# delta = 0,0\n");
}

#[test]
fn solve_modsys_rejects_high_degree_equations() {
    let sb = Sandbox::new();
    let m = sb.file("m.txt", "7\n1 1\n0 0 1\n");
    let f = sb.file("f.txt", "7\n2 1\n1 2 3\n1\n");
    let out = popov(&["solve-modsys", m.to_str().unwrap(), f.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
}

#[test]
fn orderbasis_examples() {
    let sb = Sandbox::new();
    let f = sb.file("f.txt", "7\n2 1\n1\n1\n");
    let f = f.to_str().unwrap();
    let out = popov(&["orderbasis", f, "--order", "2", "--shift", "0,0"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "7\n2 2\n0 0 1\n0\n6\n1\n");
    assert_eq!(code(&popov(&["orderbasis", f, "--order", "0"])), 1);

    let zero = sb.file("z.txt", "7\n2 1\n0\n0\n");
    let out = popov(&["orderbasis", zero.to_str().unwrap(), "--order", "3"]);
    assert_eq!(stdout(&out), "7\n2 2\n1\n0\n0\n1\n");
}

#[test]
fn check_reports_pivot_profile() {
    let sb = Sandbox::new();
    let p = sb.file("p.txt", "7\n2 2\n0 0 1\n0\n6\n1\n");
    let out = popov(&["check", p.to_str().unwrap(), "--popov"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "pivots: (1,2) degrees: (2,0)\n");

    let q = sb.file("q.txt", "7\n2 2\n0 0 1\n0\n0 0 1\n1\n");
    assert_eq!(code(&popov(&["check", q.to_str().unwrap(), "--popov"])), 4);
    assert_eq!(
        code(&popov(&["check", q.to_str().unwrap(), "--reduced"])),
        4
    );
    // reduced but not Popov: non-monic pivot
    let r = sb.file("r.txt", "7\n2 2\n0 0 2\n0\n0\n1\n");
    assert_eq!(
        code(&popov(&["check", r.to_str().unwrap(), "--reduced"])),
        0
    );
    assert_eq!(code(&popov(&["check", r.to_str().unwrap(), "--popov"])), 4);
}

#[test]
fn smith_prints_invariant_factors() {
    let sb = Sandbox::new();
    let id = sb.file("id.txt", "7\n2 2\n1\n0\n0\n1\n");
    assert_eq!(stdout(&popov(&["smith", id.to_str().unwrap()])), "1\n1\n");
    let d = sb.file("d.txt", "7\n2 2\n0 0 1\n0\n0\n0 1\n");
    let out = popov(&["smith", d.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "0 1\n0 0 1\n");
}
