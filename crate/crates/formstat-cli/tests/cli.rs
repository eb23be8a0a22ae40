use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use tempfile::TempDir;

const FORMS: &str = "level,orbit,degree,disc,al_sign,field_poly
11,1,1,1,-1,0;1
37,1,1,1,1,0;1
37,2,1,1,-1,0;1
10007,1,2,5,1,-1;-1;1
10009,1,large,,-1,
";

/// a(1..10) of the newform attached to 11a.
const COEFFS_11: &str = "1 1\n2 -2\n3 -1\n4 2\n5 1\n6 2\n7 -2\n8 0\n9 -2\n10 -2\n";

fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_formstat")).current_dir(dir).args(args).output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn setup() -> TempDir {
    let t = TempDir::new().unwrap();
    std::fs::write(t.path().join("forms.csv"), FORMS).unwrap();
    t
}

fn read_dir_sorted(dir: &Path) -> Vec<(PathBuf, Vec<u8>)> {
    let mut v: Vec<_> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let p = e.unwrap().path();
            let data = std::fs::read(&p).unwrap();
            (PathBuf::from(p.file_name().unwrap()), data)
        })
        .collect();
    v.sort();
    v
}

#[test]
fn counts_writes_artifacts_and_manifest() {
    let t = setup();
    let o = run(t.path(), &["--catalog", "forms.csv", "--out", "out", "counts"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let csv = std::fs::read_to_string(t.path().join("out/counts_degree.csv")).unwrap();
    assert!(csv.starts_with("degree,orbits\n1,3\n2,1\n"), "{csv}");
    let manifest: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(t.path().join("out/manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["tool"], "formstat");
    let outputs = manifest["outputs"].as_array().unwrap();
    assert!(outputs.iter().any(|f| f["path"].as_str().unwrap().ends_with("counts_degree.csv")));
    assert!(outputs.iter().all(|f| f["sha256"].as_str().unwrap().len() == 64));
    let inputs = manifest["inputs"].as_array().unwrap();
    assert!(inputs.iter().any(|f| f["path"].as_str().unwrap().ends_with("forms.csv")));
}

#[test]
fn reruns_are_byte_identical_except_manifest() {
    let t = setup();
    for out in ["a", "b"] {
        let o = run(t.path(), &["--catalog", "forms.csv", "--out", out, "counts", "--by", "disc"]);
        assert_eq!(code(&o), 0);
        let o = run(t.path(), &["--out", out, "genus2", "brumer", "--d", "1"]);
        assert_eq!(code(&o), 0);
    }
    let strip = |v: Vec<(PathBuf, Vec<u8>)>| v.into_iter().filter(|(p, _)| p != Path::new("manifest.json")).collect::<Vec<_>>();
    let a = strip(read_dir_sorted(&t.path().join("a")));
    let b = strip(read_dir_sorted(&t.path().join("b")));
    assert!(a.len() >= 2);
    assert_eq!(a, b);
}

#[test]
fn usage_errors_exit_2() {
    let t = setup();
    assert_eq!(code(&run(t.path(), &["bogus"])), 2);
    assert_eq!(code(&run(t.path(), &["--out", "o", "counts"])), 2, "no catalog");
    assert_eq!(code(&run(t.path(), &["--out", "o", "hilbert", "--d", "5", "--strategy", "full"])), 2);
    let o = run(t.path(), &["--out", "o", "lt", "weilbox", "--poly", "0;1", "--p", "2"]);
    assert_eq!(code(&o), 2, "missing integral basis is a configuration error");
}

#[test]
fn parse_errors_exit_3() {
    let t = setup();
    std::fs::write(t.path().join("bad.csv"), "level,orbit\n11,1\n").unwrap();
    assert_eq!(code(&run(t.path(), &["--catalog", "bad.csv", "--out", "o", "counts"])), 3);
    assert_eq!(code(&run(t.path(), &["--catalog", "missing.csv", "--out", "o", "counts"])), 3);
}

#[test]
fn validation_errors_exit_4() {
    let t = setup();
    std::fs::write(t.path().join("dup.csv"), "level,orbit,degree,disc,al_sign,field_poly\n11,1,1,1,-1,0;1\n11,1,1,1,-1,0;1\n").unwrap();
    assert_eq!(code(&run(t.path(), &["--catalog", "dup.csv", "--out", "o", "counts"])), 4);
    std::fs::write(t.path().join("np.csv"), "level,orbit,degree,disc,al_sign,field_poly\n12,1,1,1,-1,0;1\n").unwrap();
    assert_eq!(code(&run(t.path(), &["--catalog", "np.csv", "--out", "o", "counts"])), 4);
}

#[test]
fn validate_checks_coefficient_tables() {
    let t = setup();
    std::fs::create_dir(t.path().join("coeffs")).unwrap();
    std::fs::write(t.path().join("coeffs/11.1.txt"), COEFFS_11).unwrap();
    let o = run(t.path(), &["--catalog", "forms.csv", "--out", "o", "validate", "--coefficients"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert!(String::from_utf8_lossy(&o.stdout).contains("1 coefficient table"));

    // a(4) = a(2)^2 - 2 fails once a(4) is changed
    std::fs::write(t.path().join("coeffs/11.1.txt"), COEFFS_11.replace("4 2\n", "4 3\n")).unwrap();
    let o = run(t.path(), &["--catalog", "forms.csv", "--out", "o", "validate", "--coefficients"]);
    assert_eq!(code(&o), 4, "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn standalone_commands() {
    let t = TempDir::new().unwrap();
    let o = run(t.path(), &["--out", "o", "genus2", "brumer", "--d", "1"]);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8_lossy(&o.stdout).contains("36481"));
    let o = run(t.path(), &["--out", "o", "heckepoly", "--n", "1", "--p", "2"]);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8_lossy(&o.stdout).contains("h(1) = 5"));
    let o = run(t.path(), &["--out", "o", "lt", "weilbox", "--poly", "0;1", "--p", "2", "--power-basis"]);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8_lossy(&o.stdout).starts_with("5 integers"));
    let o = run(t.path(), &["--out", "o", "hilbert", "--d", "5", "--t", "2,4,8"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert!(t.path().join("o/zd_5.csv").is_file());
}
