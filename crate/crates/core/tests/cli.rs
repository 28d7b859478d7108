use std::process::{Command, Output};

fn brauer(args: &[&str], cache: Option<&std::path::Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_brauer"));
    cmd.args(args).env_remove("BRAUER_CACHE_DIR");
    if let Some(dir) = cache {
        cmd.env("BRAUER_CACHE_DIR", dir);
    }
    cmd.output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn exit_status_follows_the_outcome() {
    let ok = brauer(
        &["verify", "brown", "--instance", "GL3(2)", "--ell", "3"],
        None,
    );
    assert_eq!(
        ok.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&ok.stderr)
    );
    let report: serde_json::Value = serde_json::from_str(&stdout(&ok)).unwrap();
    assert_eq!(report["pass"], true);
    assert_eq!(report["task"], "brown");

    let bad = brauer(
        &[
            "verify",
            "theorem-a",
            "--group",
            "kind=GL,n=2,q=4",
            "--ell",
            "3",
        ],
        None,
    );
    assert_eq!(bad.status.code(), Some(2));
    assert!(bad.stdout.is_empty());
    assert!(String::from_utf8_lossy(&bad.stderr).starts_with("error: "));

    assert_eq!(brauer(&["frobnicate"], None).status.code(), Some(2));
    assert_eq!(brauer(&["--version"], None).status.code(), Some(0));
}

#[test]
fn text_tables() {
    let o = brauer(
        &[
            "blocks",
            "--group",
            "kind=alternating,n=5",
            "--ell",
            "2",
            "--format",
            "text",
        ],
        None,
    );
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("|G| = 60"), "{text}");
    assert_eq!(
        text.lines()
            .filter(|l| l.trim_start().starts_with(char::is_numeric))
            .count(),
        2
    );
}

#[test]
fn cache_directory_from_the_environment() {
    let dir = tempfile::tempdir().unwrap();
    let args = [
        "homology",
        "--group",
        "kind=symmetric,n=4",
        "--ell",
        "2",
        "--flavor",
        "abelian",
    ];
    let cold = brauer(&args, Some(dir.path()));
    assert_eq!(cold.status.code(), Some(0));
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    let warm = brauer(&args, Some(dir.path()));
    assert_eq!(cold.stdout, warm.stdout);
    let mut no_cache = args.to_vec();
    no_cache.push("--no-cache");
    let other = tempfile::tempdir().unwrap();
    let fresh = brauer(&no_cache, Some(other.path()));
    assert_eq!(fresh.stdout, cold.stdout);
    assert_eq!(std::fs::read_dir(other.path()).unwrap().count(), 0);
}
