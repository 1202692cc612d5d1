use std::path::{Path, PathBuf};
use std::process::Command;

fn manifest_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

/// Exported symbol names, read from the Rust source.
fn exported() -> Vec<String> {
    let src = std::fs::read_to_string(manifest_dir().join("src/lib.rs")).unwrap();
    src.lines()
        .filter_map(|l| l.split("extern \"C\" fn ").nth(1))
        .map(|rest| rest.split('(').next().unwrap().to_owned())
        .collect()
}

#[test]
fn header_declares_every_export() {
    let header = std::fs::read_to_string(manifest_dir().join("include/segcalc.h")).unwrap();
    let names = exported();
    assert!(names.len() >= 20);
    for name in names {
        assert!(
            header.contains(&format!("{name}(")),
            "{name} missing from header"
        );
    }
    for handle in ["SegcalcRep", "SegcalcClass", "SegcalcTheta"] {
        assert!(header.contains(&format!("typedef struct {handle} {handle};")));
    }
}

fn static_lib() -> Option<PathBuf> {
    let exe = std::env::current_exe().ok()?;
    exe.ancestors()
        .skip(1)
        .take(2)
        .map(|d| d.join("libsegcalc_ffi.a"))
        .find(|p| p.exists())
}

fn c_compiler() -> Option<&'static str> {
    ["cc", "gcc", "clang"].into_iter().find(|cc| {
        Command::new(cc)
            .arg("--version")
            .output()
            .is_ok_and(|o| o.status.success())
    })
}

#[test]
fn c_program_links_and_runs() {
    let (Some(cc), Some(lib)) = (c_compiler(), static_lib()) else {
        eprintln!("no C compiler or static library; skipping");
        return;
    };
    let dir = manifest_dir();
    let out = Path::new(env!("CARGO_TARGET_TMPDIR")).join("segcalc_smoke");
    let status = Command::new(cc)
        .arg(dir.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(dir.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success(), "C compile failed");
    let run = Command::new(&out).output().unwrap();
    assert!(
        run.status.success(),
        "{}",
        String::from_utf8_lossy(&run.stderr)
    );
    assert_eq!(
        String::from_utf8(run.stdout).unwrap().trim(),
        env!("CARGO_PKG_VERSION")
    );
}
