//! Builds the static library, compiles `smoke.c` against the generated
//! header and runs it.

use std::path::{Path, PathBuf};
use std::process::Command;

fn target_dir() -> PathBuf {
    // target/<profile>/deps/<this test>
    let exe = std::env::current_exe().unwrap();
    exe.parent().and_then(Path::parent).unwrap().to_path_buf()
}

#[test]
fn c_program_links_and_runs() {
    if Command::new("cc").arg("--version").output().is_err() {
        eprintln!("no C compiler found, skipping");
        return;
    }
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let profile_dir = target_dir();
    let mut build = Command::new(env!("CARGO"));
    build.args(["build", "-p", "ncd-ffi", "--lib", "--manifest-path"]).arg(root.join("Cargo.toml"));
    if profile_dir.file_name().is_some_and(|p| p == "release") {
        build.arg("--release");
    }
    let status = build.env("CARGO_TARGET_DIR", profile_dir.parent().unwrap()).status().unwrap();
    assert!(status.success());

    let exe = profile_dir.join("ncd-ffi-smoke");
    let status = Command::new("cc")
        .arg(root.join("tests/smoke.c"))
        .arg("-I")
        .arg(root.join("include"))
        .arg(profile_dir.join("libncd_ffi.a"))
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success(), "C compile failed");
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(String::from_utf8_lossy(&out.stdout), "ok\n");
}
