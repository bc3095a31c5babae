use std::time::Instant;

use nilmat::nilpotency::{is_nilpotent, is_nilpotent_adjoint, Options};
use nilmat::splitting::is_semisimple;
use nilmat::structure::{is_finite, order};
use nilmat::testkit::{closure, corpus_finite, corpus_rational, oracle_invariants, CorpusEntry};
use nilmat::verify::{verify_infinite, verify_witness};

const CAP: usize = 10_000;

fn truth(e: &CorpusEntry) -> (bool, Option<usize>) {
    if let Some(label) = e.designed_nilpotent {
        let c = closure(&e.group.gens, e.group.dim, &e.group.field, CAP);
        assert!(c.overflowed, "{} is labelled infinite", e.name);
        return (label, None);
    }
    let c = closure(&e.group.gens, e.group.dim, &e.group.field, CAP);
    assert!(!c.overflowed, "{} exceeds the closure cap", e.name);
    let o = oracle_invariants(&c, &e.group.gens, &e.group.field).unwrap();
    (o.nilpotent, Some(o.order))
}

fn check(e: &CorpusEntry) {
    let g = &e.group;
    let opts = Options::default();
    let (nil, ord) = truth(e);
    let t = Instant::now();
    let v = is_nilpotent(g, &opts).unwrap();
    assert_eq!(v.nilpotent, nil, "{}", e.name);
    if let Some(w) = &v.witness {
        assert_eq!(verify_witness(g, w), Ok(()), "{} {}", e.name, w.kind());
    }
    if nil {
        let fin = is_finite(g, &v, &opts).unwrap();
        assert_eq!(fin.finite, ord.is_some(), "{}", e.name);
        match ord {
            Some(o) => assert_eq!(order(g, &v, &opts).unwrap(), o as u128, "{}", e.name),
            None => assert_eq!(verify_infinite(g, fin.witness.as_ref().unwrap()), Ok(()), "{}", e.name),
        }
    }
    let semisimple = g.gens.iter().all(|x| is_semisimple(x, &g.field).unwrap());
    if semisimple {
        match is_nilpotent_adjoint(g, &opts) {
            Ok(a) => {
                assert_eq!(a.nilpotent, nil, "{} adjoint", e.name);
                if let Some(w) = &a.witness {
                    assert_eq!(verify_witness(g, w), Ok(()), "{} adjoint {}", e.name, w.kind());
                }
            }
            Err(err) => assert!(err.is_budget(), "{}: {err}", e.name),
        }
    }
    eprintln!("{:<28} {:>6?} {:?}", e.name, ord, t.elapsed());
}

#[test]
fn finite_corpus_matches_oracle() {
    for e in corpus_finite() {
        check(&e);
    }
}

#[test]
fn rational_corpus_matches_truth() {
    for e in corpus_rational() {
        check(&e);
    }
}

#[test]
fn kernel_condition_discriminates() {
    use nilmat::witness::Witness;
    let e = corpus_rational().into_iter().find(|e| e.name == "diag3_swap").unwrap();
    let v = is_nilpotent(&e.group, &Options::default()).unwrap();
    match v.witness.as_ref().unwrap() {
        Witness::KernelNotCentral { congruence, .. } => assert_eq!(congruence.p, 5),
        w => panic!("unexpected witness {}", w.kind()),
    }
    assert_eq!(v.sylow.unwrap().order(), 32);
}
