//! Black-box tests of the binary: exit codes per command, output shapes,
//! and byte-stable CSV artifacts.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ricci-trees"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("the binary should run")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn assert_code(out: &Output, code: i32) {
    assert_eq!(
        out.status.code(),
        Some(code),
        "stdout:\n{}\nstderr:\n{}",
        stdout(out),
        stderr(out)
    );
}

#[test]
fn classify_reports_sign_and_provenance() {
    let cases = [
        (vec!["classify", "--caterpillar", "1,0,9"], "sign: ZERO"),
        (vec!["classify", "--named", "s32"], "sign: ZERO"),
        (vec!["classify", "--caterpillar", "1,1,1"], "sign: NEGATIVE"),
        (vec!["classify", "--caterpillar", "1,1,3"], "sign: POSITIVE"),
    ];
    for (args, needle) in cases {
        let out = run(&args);
        assert_code(&out, 0);
        let text = stdout(&out);
        assert!(text.contains(needle), "{args:?} output:\n{text}");
        assert!(
            text.contains("provenance: exact rational arithmetic"),
            "{args:?} output:\n{text}"
        );
    }
}

#[test]
fn classify_reads_edge_list_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("tree.txt");
    fs::write(&path, "0 1\n1 2\n2 3\n# a path on four vertices\n").unwrap();
    let out = run(&["classify", "--tree", path.to_str().unwrap()]);
    assert_code(&out, 0);
    assert!(stdout(&out).contains("sign: NEGATIVE"), "{}", stdout(&out));

    let missing = run(&["classify", "--tree", dir.path().join("absent.txt").to_str().unwrap()]);
    assert_code(&missing, 2);

    let cyclic = dir.path().join("cycle.txt");
    fs::write(&cyclic, "0 1\n1 2\n2 0\n").unwrap();
    let out = run(&["classify", "--tree", cyclic.to_str().unwrap()]);
    assert_code(&out, 2);
}

#[test]
fn classify_usage_errors_exit_two() {
    assert_code(&run(&["classify"]), 2);
    assert_code(&run(&["classify", "--caterpillar", "1,1", "--named", "s32"]), 2);
    assert_code(&run(&["classify", "--caterpillar", "0,1"]), 2);
    assert_code(&run(&["classify", "--caterpillar", "1,x"]), 2);
    assert_code(&run(&["classify", "--named", "nonsuch:3"]), 2);
    assert_code(&run(&["classify", "--caterpillar", "3,3", "--einstein", "--tol", "-1"]), 2);
    assert_code(&run(&["no-such-command"]), 2);
}

#[test]
fn classify_einstein_prints_the_metric() {
    let out = run(&["classify", "--named", "star:4", "--einstein"]);
    assert_code(&out, 0);
    let text = stdout(&out);
    assert!(text.contains("balanced weighting"), "{text}");
    assert!(text.contains("top eigenvalue estimate: -0.5"), "{text}");
    assert!(text.contains("certified residual bound:"), "{text}");
}

#[test]
fn enumerate_writes_byte_identical_csvs() {
    let dir_a = tempfile::tempdir().unwrap();
    let dir_b = tempfile::tempdir().unwrap();
    for dir in [&dir_a, &dir_b] {
        let out = run(&[
            "enumerate",
            "--m-min",
            "3",
            "--m-max",
            "4",
            "--out",
            dir.path().to_str().unwrap(),
        ]);
        assert_code(&out, 0);
    }
    for m in 3..=4 {
        for prefix in ["negatives", "maximal", "boundary"] {
            let name = format!("{prefix}_m{m}.csv");
            let a = fs::read(dir_a.path().join(&name)).unwrap();
            let b = fs::read(dir_b.path().join(&name)).unwrap();
            assert!(!a.is_empty(), "{name} is empty");
            assert_eq!(a, b, "{name} differs between runs");
        }
    }
    let maximal = fs::read_to_string(dir_a.path().join("maximal_m3.csv")).unwrap();
    assert!(maximal.starts_with("m,a\n"), "{maximal}");
    assert!(maximal.contains("3,\"1,1,2\""), "{maximal}");
}

#[test]
fn enumerate_diff_golden_passes_on_the_stored_range() {
    let out = run(&["enumerate", "--m-min", "3", "--m-max", "5", "--diff-golden"]);
    assert_code(&out, 0);
    assert!(stdout(&out).contains("provenance:"), "{}", stdout(&out));
}

#[test]
fn enumerate_guard_breach_exits_one() {
    let out = run(&["enumerate", "--m-min", "3", "--m-max", "3", "--guard", "2"]);
    assert_code(&out, 1);
    assert!(stderr(&out).contains("guard"), "{}", stderr(&out));
}

#[test]
fn enumerate_range_errors_exit_two() {
    assert_code(&run(&["enumerate", "--m-min", "2", "--m-max", "5"]), 2);
    assert_code(&run(&["enumerate", "--m-min", "5", "--m-max", "13"]), 2);
    assert_code(&run(&["enumerate", "--m-min", "6", "--m-max", "5"]), 2);
    assert_code(&run(&["enumerate", "--m-min", "3"]), 2);
}

#[test]
fn verify_zero_passes_on_builtins() {
    let out = run(&["verify-zero"]);
    assert_code(&out, 0);
    let text = stdout(&out);
    assert!(!text.contains("FAIL"), "{text}");
    let passes = text.lines().filter(|l| l.starts_with("PASS")).count();
    // Ten embedded certificates plus the stable family for 2 <= m <= 20.
    assert_eq!(passes, 10 + 19, "{text}");
}

#[test]
fn verify_zero_flags_corrupted_certificates() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("certs.txt");
    // First record is valid, second carries a wrong weight, third is noise.
    fs::write(&path, "3,3|3|1,1,1;1,1,1\n2,5|3|1,1;1,1,1,2\nnot a record\n").unwrap();
    let out = bin()
        .args(["verify-zero", "--certs", path.to_str().unwrap(), "--stable-family-max-m", "0"])
        .output()
        .unwrap();
    assert_code(&out, 1);
    let text = stdout(&out);
    assert!(text.contains("PASS 3,3|3|1,1,1;1,1,1"), "{text}");
    assert!(text.contains("FAIL 2,5|3|1,1;1,1,1,2"), "{text}");
    assert!(text.contains("FAIL not a record"), "{text}");

    let unreadable =
        run(&["verify-zero", "--certs", dir.path().join("absent.txt").to_str().unwrap()]);
    assert_code(&unreadable, 2);
}

#[test]
fn schur_check_passes_and_validates_flags() {
    let out = run(&["schur-check", "--m-max", "8"]);
    assert_code(&out, 0);
    let text = stdout(&out);
    assert_eq!(text.matches("PASS").count(), 3, "{text}");
    assert!(text.contains("provenance:"), "{text}");

    assert_code(&run(&["schur-check", "--m-max", "1"]), 2);
    assert_code(&run(&["schur-check", "--m-max", "many"]), 2);
}

#[test]
fn phase_emits_the_grid_and_is_deterministic() {
    let first = run(&["phase", "--max", "12"]);
    let second = run(&["phase", "--max", "12"]);
    assert_code(&first, 0);
    assert_eq!(first.stdout, second.stdout, "grid must be byte-stable");
    let text = stdout(&first);
    assert_eq!(text.lines().count(), 1 + 144, "{text}");
    assert!(text.starts_with("a,b,computed,predicted\n"), "{text}");
    assert!(text.contains("3,3,ZERO,ZERO"), "{text}");
    assert!(text.contains("2,5,ZERO,ZERO"), "{text}");
    assert!(text.contains("5,2,ZERO,ZERO"), "{text}");
    assert_eq!(text.matches("ZERO,ZERO").count(), 3, "{text}");
    assert!(stderr(&first).contains("rule: 0"), "{}", stderr(&first));

    let single = run(&["phase", "--max", "1"]);
    assert_code(&single, 0);
    assert_eq!(stdout(&single), "a,b,computed,predicted\n1,1,NEGATIVE,NEGATIVE\n");

    let wide = run(&["phase", "--max", "20"]);
    assert_code(&wide, 0);
    for b in 1..=20 {
        assert!(
            stdout(&wide).contains(&format!("1,{b},NEGATIVE,NEGATIVE")),
            "row a=1, b={b} should be negative"
        );
    }

    let zero = run(&["phase", "--max", "0"]);
    assert_code(&zero, 2);
}

#[test]
fn phase_writes_the_grid_to_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("grid.csv");
    let out = run(&["phase", "--max", "3", "--out", path.to_str().unwrap()]);
    assert_code(&out, 0);
    let text = fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().count(), 1 + 9);
    let direct = run(&["phase", "--max", "3"]);
    assert_eq!(text, stdout(&direct), "file and stdout output must agree");
}

#[test]
fn thread_cap_variable_is_validated() {
    let ok = bin()
        .env("EINSTEIN_TREE_THREADS", "1")
        .args(["enumerate", "--m-min", "3", "--m-max", "3", "--diff-golden"])
        .output()
        .unwrap();
    assert_code(&ok, 0);

    let bad = bin()
        .env("EINSTEIN_TREE_THREADS", "plenty")
        .args(["phase", "--max", "1"])
        .output()
        .unwrap();
    assert_code(&bad, 2);
    assert!(stderr(&bad).contains("EINSTEIN_TREE_THREADS"), "{}", stderr(&bad));
}

#[test]
fn forced_panic_exits_three() {
    let out = bin()
        .env("RICCI_TREES_FORCE_PANIC", "1")
        .args(["phase", "--max", "1"])
        .output()
        .unwrap();
    assert_code(&out, 3);
    assert!(stderr(&out).contains("internal invariant breach"), "{}", stderr(&out));
}

#[test]
fn closed_output_pipe_exits_quietly() {
    use std::process::Stdio;
    // Ask for more CSV than a pipe buffer holds, then close the read end
    // without consuming it; the write must fail like any line tool's, not as
    // an internal fault.
    let mut child = bin()
        .args(["phase", "--max", "100"])
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    drop(child.stdout.take());
    let out = child.wait_with_output().unwrap();
    assert_code(&out, 141);
    assert!(
        !stderr(&out).contains("invariant"),
        "a closed pipe must not report an internal fault: {}",
        stderr(&out)
    );
    assert!(
        !stderr(&out).contains("panicked"),
        "a closed pipe must not print a panic report: {}",
        stderr(&out)
    );
}

#[test]
fn help_and_version_exit_zero() {
    assert_code(&run(&["--help"]), 0);
    assert_code(&run(&["--version"]), 0);
    for sub in ["classify", "enumerate", "verify-zero", "schur-check", "phase"] {
        let out = run(&[sub, "--help"]);
        assert_code(&out, 0);
    }
}

#[test]
fn artifacts_land_in_a_created_directory() {
    let dir = tempfile::tempdir().unwrap();
    let nested = dir.path().join("a").join("b");
    let out = run(&[
        "enumerate",
        "--m-min",
        "3",
        "--m-max",
        "3",
        "--out",
        nested.to_str().unwrap(),
    ]);
    assert_code(&out, 0);
    assert!(Path::new(&nested.join("boundary_m3.csv")).exists());
}
