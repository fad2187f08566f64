//! Bit-exact JSON reports. Regenerate with `CRLAB_UPDATE_GOLDEN=1 cargo test -p crlab --test golden`.

use std::path::PathBuf;

use crlab::{run, Command, Flags};

fn dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

const CASES: &[(&str, &[&str], Option<u32>)] = &[
    (
        "heisenberg",
        &[
            "segre",
            "essvar",
            "ftype",
            "mapfinite",
            "criterion",
            "verdict",
            "gb",
        ],
        None,
    ),
    ("quartic", &["essvar", "ftype", "gb"], None),
    (
        "fold",
        &[
            "essvar",
            "mapfinite",
            "mapcheck",
            "preimage-check",
            "criterion",
            "verdict",
        ],
        None,
    ),
    (
        "fold_wrong_source",
        &["mapcheck", "preimage-check", "verdict"],
        None,
    ),
    (
        "degenerate",
        &["essvar", "ftype", "criterion", "verdict"],
        None,
    ),
    ("flat", &["ftype"], Some(6)),
];

#[test]
fn reports_match_golden_files() {
    let update = std::env::var_os("CRLAB_UPDATE_GOLDEN").is_some();
    let mut mismatches = Vec::new();
    for (name, commands, max_length) in CASES {
        let text = std::fs::read_to_string(dir().join(format!("{name}.crl"))).unwrap();
        for cmd in *commands {
            let flags = Flags {
                max_length: *max_length,
                ..Flags::default()
            };
            let report = run(Command::from_name(cmd).unwrap(), &text, &flags).unwrap();
            let path = dir().join("golden").join(format!("{name}.{cmd}.json"));
            let json = report.to_json();
            if update {
                std::fs::write(&path, &json).unwrap();
            } else if std::fs::read_to_string(&path).ok().as_deref() != Some(json.as_str()) {
                mismatches.push(path.display().to_string());
            }
        }
    }
    assert!(
        mismatches.is_empty(),
        "reports differ from golden files: {mismatches:?}"
    );
}
