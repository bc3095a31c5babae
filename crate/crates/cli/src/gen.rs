//! Group-file generators: the nilpotent constructions and the test corpus.

use std::path::Path;

use nilmat::testkit::{corpus_finite, corpus_rational, gen_max_abs_irr_nilpotent, gen_reducible_nilpotent};
use nilmat::GroupSpec;
use serde_json::Value;

use crate::groupfile::group_json;

pub fn max_abs_irr(n: usize, p: u64, l: usize) -> nilmat::Result<Value> {
    let g = gen_max_abs_irr_nilpotent(n, p, l)?;
    Ok(group_json(&g, Some(&format!("max_nilpotent_{n}_{p}^{l}"))))
}

pub fn reducible(base: &GroupSpec) -> nilmat::Result<Value> {
    Ok(group_json(&gen_reducible_nilpotent(base)?, Some("reducible_nilpotent")))
}

/// Writes `<name>.json` per corpus entry; returns the written names in order.
/// Infinite entries carry their designed label under `"nilpotent"`.
pub fn write_corpus(dir: &Path) -> std::io::Result<Vec<String>> {
    std::fs::create_dir_all(dir)?;
    let mut names = Vec::new();
    for e in corpus_finite().into_iter().chain(corpus_rational()) {
        let mut v = group_json(&e.group, Some(&e.name));
        if let Some(label) = e.designed_nilpotent {
            v["nilpotent"] = Value::Bool(label);
        }
        let text = serde_json::to_string_pretty(&v).expect("serializable") + "\n";
        std::fs::write(dir.join(format!("{}.json", e.name)), text)?;
        names.push(e.name);
    }
    Ok(names)
}
