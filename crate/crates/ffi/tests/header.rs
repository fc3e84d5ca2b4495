use std::path::PathBuf;
use std::process::Command;

/// The generated header compiles as C11 against a real client.
#[test]
fn header_compiles() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let Ok(status) = Command::new("cc")
        .args(["-std=c11", "-Wall", "-Werror", "-fsyntax-only", "-I"])
        .arg(dir.join("include"))
        .arg(dir.join("tests/smoke.c"))
        .status()
    else {
        eprintln!("no C compiler; skipped");
        return;
    };
    assert!(status.success());
}
