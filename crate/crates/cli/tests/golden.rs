//! Reports are compared byte for byte against files in `tests/golden`.
//! Regenerate with `UPDATE_GOLDEN=1 cargo test -p semimodel-cli --test golden`.

use std::path::{Path, PathBuf};

use semimodel_cli::{run_command, Bounds, Command, SessionConfig};

fn dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

fn golden(input: &str, out: &str, cfg: impl FnOnce(&mut SessionConfig)) {
    let mut c = SessionConfig::new(Command::Check, dir().join(input));
    cfg(&mut c);
    let o = run_command(&c).unwrap();
    assert!(o.positive(), "{:?}", o.witness);
    let path = dir().join(out);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, &o.report).unwrap();
    }
    let want = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing {}", path.display()));
    assert_eq!(o.report, want, "report for {input} drifted from {out}");
    // the same run twice gives the same bytes
    assert_eq!(run_command(&c).unwrap().report, o.report);
}

#[test]
fn check_f0() {
    golden("f0.sm", "f0.check.out", |c| c.verbose = true);
}

#[test]
fn resolve_f0() {
    golden("f0.sm", "f0.resolve.out", |c| c.command = Command::Resolve);
}

#[test]
fn universal_f0() {
    golden("f0.sm", "f0.universal.out", |c| c.command = Command::Universal);
}

#[test]
fn replace_f0() {
    golden("f0.sm", "f0.replace.out", |c| {
        c.command = Command::Replace;
        c.bounds = Bounds {
            weight: 1,
            degree: 1,
            ..Bounds::default()
        };
    });
}

#[test]
fn replace_plane() {
    golden("plane.sm", "plane.replace.out", |c| c.command = Command::Replace);
}

#[test]
fn replace_dg() {
    golden("two.sm", "two.replace-dg.out", |c| {
        c.command = Command::Replace;
        c.dg = true;
    });
}

#[test]
fn compare_two() {
    golden("two.sm", "two.compare.out", |c| c.command = Command::Compare);
}

#[test]
fn verify_own_output() {
    for out in ["f0.resolve.out", "f0.universal.out", "f0.replace.out", "plane.replace.out", "two.replace-dg.out"] {
        let o = run_command(&SessionConfig::new(Command::Verify, dir().join(out))).unwrap();
        assert!(o.positive(), "{out}: {:?}", o.witness);
        assert!(!o.report.contains("artifacts verified: 0"), "{out}");
    }
}
