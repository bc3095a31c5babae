//! Report bodies for analysis results.

use nilmat::nilpotency::{ChainSummary, Method, Reduction, SylowSystem};
use nilmat::structure::{Finiteness, FinitenessRoute, StructureReport};
use nilmat::testkit::OracleInvariants;
use nilmat::{Subspace, Verdict};
use serde_json::{json, Value};

use crate::codec::{
    congruence_json, infinite_witness_json, matrices_json, matrix_json, subspace_json, u128_json, witness_json,
    word_json,
};

pub const SCHEMA: &str = "nilmat/1";

pub fn method_name(m: Method) -> &'static str {
    match m {
        Method::Finite => "finite",
        Method::Congruence => "congruence",
        Method::Adjoint => "adjoint",
    }
}

pub fn sylow_json(s: &SylowSystem) -> Value {
    json!({
        "order": u128_json(s.order()),
        "modulo_center": s.modulo_center,
        "components": s.components.iter().map(|c| json!({
            "prime": c.prime,
            "order": u128_json(c.order),
            "generators": matrices_json(&c.gens),
        })).collect::<Vec<_>>(),
        "central": matrices_json(&s.central),
        "unipotent": matrices_json(&s.unipotent),
    })
}

fn chain_json(c: &ChainSummary) -> Value {
    json!({"depth": c.depth, "a_sizes": c.a_sizes, "c_sizes": c.c_sizes, "cuts": c.cuts})
}

fn reduction_json(r: &Reduction) -> Value {
    json!({
        "congruence": r.congruence.as_ref().map(congruence_json),
        "image_order": r.image_order,
        "semisimple_generators": matrices_json(&r.split.gens_s),
        "unipotent_generators": matrices_json(&r.split.gens_u),
        "kernel": r.kernel.iter().map(|(w, m)| json!({"word": word_json(w), "matrix": matrix_json(m)})).collect::<Vec<_>>(),
    })
}

pub fn verdict_json(v: &Verdict) -> Value {
    json!({
        "nilpotent": v.nilpotent,
        "method": method_name(v.method),
        "class_bound": v.class_bound,
        "witness": v.witness.as_ref().map(witness_json),
        "sylow": v.sylow.as_ref().map(sylow_json),
        "chain": v.chain.as_ref().map(chain_json),
        "reduction": v.reduction.as_ref().map(reduction_json),
        "notes": v.notes,
    })
}

fn route_name(r: FinitenessRoute) -> &'static str {
    match r {
        FinitenessRoute::FiniteField => "finite_field",
        FinitenessRoute::Congruence => "congruence",
        FinitenessRoute::Torsion => "torsion",
    }
}

/// `order` is omitted, not null, for infinite groups.
pub fn finiteness_json(f: &Finiteness) -> Value {
    let mut v = json!({
        "finite": f.finite,
        "route": route_name(f.route),
        "infinite_witness": f.witness.as_ref().map(infinite_witness_json),
    });
    if let Some(o) = f.order {
        v["order"] = u128_json(o);
    }
    v
}

pub fn series_json(s: &[Subspace]) -> Value {
    Value::Array(s.iter().map(subspace_json).collect())
}

pub fn structure_json(s: &StructureReport) -> Value {
    let mut v = json!({
        "finite": s.finite,
        "completely_reducible": s.completely_reducible,
        "cr_series": s.cr_series.as_deref().map(series_json),
        "primary": s.primary.as_ref().map(sylow_json),
        "center_generators": s.center_gens.as_deref().map(matrices_json),
        "infinite_witness": s.infinite_witness.as_ref().map(infinite_witness_json),
        "notes": s.notes,
    });
    if let Some(o) = s.order {
        v["order"] = u128_json(o);
    }
    v
}

pub fn oracle_json(o: &OracleInvariants) -> Value {
    json!({"order": o.order, "nilpotent": o.nilpotent, "class": o.class, "center_size": o.center_size})
}
