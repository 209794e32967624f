//! Bit-exact regression images. Set UPDATE_GOLDEN=1 to regenerate.

use std::path::PathBuf;
use std::process::Command;

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden")
}

fn check(name: &str, args: &[&str]) {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join(name);
    let status = Command::new(env!("CARGO_BIN_EXE_rdyn"))
        .args(args)
        .arg("--out")
        .arg(&out)
        .output()
        .unwrap();
    assert!(status.status.success(), "{}", String::from_utf8_lossy(&status.stderr));
    let got = std::fs::read(&out).unwrap();
    let path = golden_dir().join(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::create_dir_all(golden_dir()).unwrap();
        std::fs::write(&path, &got).unwrap();
        return;
    }
    let want = std::fs::read(&path).unwrap_or_else(|_| panic!("missing {}; run with UPDATE_GOLDEN=1", path.display()));
    assert!(got == want, "{name} differs from its golden image");
}

#[test]
fn mandelbrot_standard_view() {
    check("mandel.pgm", &["mandel", "--size", "175x150", "--iters", "500"]);
}

#[test]
fn bifurcation_full_range() {
    check(
        "bifurcate.pgm",
        &["bifurcate", "--range", "-2,0.25", "--size", "150x200", "--transient", "1000", "--count", "200"],
    );
}

#[test]
fn logview_default() {
    check("logview.pgm", &["logview", "--size", "300x75", "--iters", "1000"]);
}

#[test]
fn basilica() {
    check("basilica.pgm", &["julia", "--c", "-1,0", "--size", "128x128"]);
}

#[test]
fn basilica_inverse() {
    check(
        "basilica_inverse.pgm",
        &["julia", "--c", "-1,0", "--size", "128x128", "--method", "inverse", "--iters", "100000", "--seed", "1"],
    );
}
