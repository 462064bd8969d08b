//! Shared by the corpus test and the acceptance suite.

use std::fs;
use std::path::{Path, PathBuf};

use desargues::dsl::{self, Script};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Expect {
    Pass,
    Fail,
    Error,
}

impl Expect {
    fn from_header(src: &str) -> Option<Self> {
        let line = src.lines().find_map(|l| l.trim().strip_prefix("# expect:"))?;
        match line.trim() {
            "pass" => Some(Self::Pass),
            "fail" => Some(Self::Fail),
            "error" => Some(Self::Error),
            _ => None,
        }
    }
}

pub struct Fixture {
    pub path: PathBuf,
    pub source: String,
    pub expect: Expect,
}

pub fn fixture_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

pub fn fixtures() -> Vec<Fixture> {
    let mut paths: Vec<PathBuf> = fs::read_dir(fixture_dir())
        .expect("fixture directory")
        .map(|e| e.expect("dir entry").path())
        .filter(|p| p.extension().is_some_and(|x| x == "dsl"))
        .collect();
    paths.sort();
    paths
        .into_iter()
        .map(|path| {
            let source = fs::read_to_string(&path).expect("readable fixture");
            let expect = Expect::from_header(&source)
                .unwrap_or_else(|| panic!("{} lacks an `# expect:` line", path.display()));
            Fixture { path, source, expect }
        })
        .collect()
}

/// What the script actually does: parse or engine errors count as `Error`.
pub fn outcome(source: &str) -> Expect {
    match dsl::run(source) {
        Ok(r) if r.passed() => Expect::Pass,
        Ok(_) => Expect::Fail,
        Err(_) => Expect::Error,
    }
}

/// `parse(print(s)) == s` and printing is idempotent. Returns a message on
/// the first discrepancy.
pub fn fixpoint(script: &Script) -> Result<(), String> {
    let text = dsl::print(script);
    let back = dsl::parse(&text).map_err(|d| format!("reprint does not parse: {d:?}\n{text}"))?;
    if &back != script {
        return Err(format!("reparse differs\n{text}"));
    }
    if dsl::print(&back) != text {
        return Err(format!("printing is not idempotent\n{text}"));
    }
    Ok(())
}
