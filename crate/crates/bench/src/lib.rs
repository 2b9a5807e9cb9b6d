//! Inputs shared by the benchmarks.

use std::path::PathBuf;

use galrep::data::RepData;

pub fn fixture(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(rel)
}

pub fn load(name: &str) -> RepData {
    let text = std::fs::read_to_string(fixture(&format!("data/{name}.galrep"))).expect("fixture");
    RepData::parse(&text).expect("fixture parses")
}
