//! Nilpotency decisions. Finite fields go straight to the series and Sylow
//! check; infinite fields reduce G_s modulo a prime and test the kernel.

mod adjoint;
mod finite;
pub mod series;

use std::collections::HashSet;

use crate::arith;
use crate::congruence::{
    finite_image_presentation, kernel_is_central, kernel_normal_generators, select_modulus,
    CongruenceData, Policy,
};
use crate::error::Result;
use crate::fields::Field;
use crate::group::{GroupSpec, Program, Ref, Word};
use crate::linalg::Matrix;
use crate::splitting::{reduction_split, Split, SplitResult};
use crate::witness::{Domain, Witness};

pub use adjoint::{adjoint_class_bound, adjoint_of, adjoint_rep, is_nilpotent_adjoint, AdjointData};
pub(crate) use finite::{closure_with_words, sylow_check, Core as SylowOutcome};
pub use finite::{SylowComponent, SylowSystem};
pub use series::{split_semisimple_commutative, Chain};

use finite::{finite_core, Core, CoreWitness};

/// Upper bound on the class of a nilpotent subgroup of GL(n, f).
pub fn class_bound(f: &Field, n: usize) -> usize {
    match f {
        Field::Rationals => 3 * n / 2,
        Field::Number(nf) => 3 * nf.degree() * n / 2,
        Field::Finite(ff) => {
            let q1 = (ff.order() - 1) as u64;
            let best = arith::primes_up_to(n as u64)
                .into_iter()
                .filter(|&t| t != ff.p)
                .map(|t| (t as usize - 1) * arith::valuation(q1, t) as usize + 1)
                .max()
                .unwrap_or(1)
                .max(1);
            n * best
        }
        Field::Function(base) => class_bound(base, n).max(n.saturating_sub(1)) + 1,
    }
}

/// Bound on the order of roots of unity entering a centralizer index.
fn index_factor(f: &Field) -> usize {
    match f {
        Field::Rationals => 2,
        Field::Number(nf) => {
            let m = nf.degree() as u64;
            (1..=2 * m * m + 6).filter(|&k| arith::euler_phi(k) <= m).max().unwrap_or(2) as usize
        }
        Field::Finite(ff) => ((ff.order() - 1) as usize).max(1),
        Field::Function(base) => index_factor(base),
    }
}

pub fn index_cap(f: &Field, n: usize) -> usize {
    n.max(1) * index_factor(f)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Options {
    pub policy: Policy,
    /// Overrides the class bound; witnesses below the true bound do not verify.
    pub class_bound: Option<usize>,
    pub closure_cap: usize,
    pub presentation_cap: usize,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            policy: Policy::default(),
            class_bound: None,
            closure_cap: 100_000,
            presentation_cap: 1_000_000,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Finite,
    Congruence,
    Adjoint,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainSummary {
    pub depth: usize,
    pub a_sizes: Vec<usize>,
    pub c_sizes: Vec<usize>,
    pub cuts: Vec<Option<usize>>,
}

impl ChainSummary {
    fn of(c: &Chain) -> ChainSummary {
        ChainSummary {
            depth: c.a.len(),
            a_sizes: c.a.iter().map(Vec::len).collect(),
            c_sizes: c.c.iter().map(Vec::len).collect(),
            cuts: c.cuts.clone(),
        }
    }
}

/// Artifacts of the reduction pipeline over an infinite field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduction {
    pub split: SplitResult,
    pub congruence: Option<CongruenceData>,
    pub image_order: usize,
    /// Nontrivial kernel normal generators as words in the s_i, deduplicated.
    pub kernel: Vec<(Word, Matrix)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub nilpotent: bool,
    pub method: Method,
    pub class_bound: usize,
    pub witness: Option<Witness>,
    /// Sylow system of G (finite), ψ(G_s) (congruence) or adj(G) (adjoint).
    pub sylow: Option<SylowSystem>,
    pub chain: Option<ChainSummary>,
    pub reduction: Option<Reduction>,
    pub notes: Vec<String>,
}

impl Verdict {
    fn new(method: Method, class_bound: usize) -> Verdict {
        Verdict {
            nilpotent: true,
            method,
            class_bound,
            witness: None,
            sylow: None,
            chain: None,
            reduction: None,
            notes: Vec::new(),
        }
    }

    fn reject(mut self, w: Witness) -> Verdict {
        self.nilpotent = false;
        self.witness = Some(w);
        self
    }
}

fn to_witness(core: CoreWitness, prog: &Program, domain: Domain, bound: usize) -> Witness {
    match core {
        CoreWitness::Long { start, multipliers } => {
            let mut roots = vec![start];
            roots.extend(&multipliers);
            let (slp, idx) = prog.extract(&roots);
            Witness::LongCommutator { domain, slp, start: idx[0], multipliers: idx[1..].to_vec(), bound }
        }
        CoreWitness::NonCommuting { x, y } => {
            let (slp, idx) = prog.extract(&[x, y]);
            Witness::NonCommutingPrimeParts { domain, slp, x: idx[0], y: idx[1] }
        }
        CoreWitness::NonPrimePower { component, word, prime } => {
            let (slp, idx) = prog.extract(&component);
            Witness::NonPrimePowerElement { domain, slp, component: idx, word, prime }
        }
        CoreWitness::InfiniteOrder(e) => {
            let (slp, idx) = prog.extract(&[e]);
            Witness::AdjointInfiniteOrder { slp, element: idx[0] }
        }
    }
}

fn gen_refs(g: &GroupSpec) -> Vec<Ref> {
    (0..g.ngens()).collect()
}

/// Runs the series and Sylow check on `g` and fills `v`; the returned
/// witness, if any, is still relative to `g`.
fn run_core(g: &GroupSpec, k: usize, opts: &Options, v: &mut Verdict) -> Result<Option<(CoreWitness, Program)>> {
    let mut prog = Program::new(g);
    let cap = index_cap(&g.field, g.dim);
    match finite_core(&mut prog, &gen_refs(g), k, cap, opts.closure_cap, &mut v.notes)? {
        Core::Nilpotent { sylow, chain, .. } => {
            v.sylow = Some(sylow);
            v.chain = chain.as_ref().map(ChainSummary::of);
            Ok(None)
        }
        Core::Not(w) => Ok(Some((w, prog))),
    }
}

/// Decides nilpotency of a group over a finite field.
pub fn is_finite_nilpotent(g: &GroupSpec, opts: &Options) -> Result<Verdict> {
    if !g.field.is_finite() {
        return Err(crate::Error::UnsupportedField(g.field.name()));
    }
    let k = opts.class_bound.unwrap_or_else(|| class_bound(&g.field, g.dim));
    let mut v = Verdict::new(Method::Finite, k);
    Ok(match run_core(g, k, opts, &mut v)? {
        None => v,
        Some((w, prog)) => {
            let w = to_witness(w, &prog, Domain::Source, k);
            v.reject(w)
        }
    })
}

/// Class bound used for ψ(G_s) ≤ GL(n, target).
pub fn image_class_bound(source: &Field, target: &Field, n: usize) -> usize {
    class_bound(source, n).min(class_bound(target, n))
}

/// Decides nilpotency over any supported field; infinite fields use the
/// congruence method.
pub fn is_nilpotent(g: &GroupSpec, opts: &Options) -> Result<Verdict> {
    if g.field.is_finite() {
        return is_finite_nilpotent(g, opts);
    }
    let f = &g.field;
    let n = g.dim;
    let bound = class_bound(f, n);
    let v = Verdict::new(Method::Congruence, opts.class_bound.unwrap_or(bound));
    let split = match reduction_split(g)? {
        Split::Ok(r) => r,
        Split::NonUnipotent { pairs, w } => return Ok(v.reject(Witness::NonUnipotentFlag { pairs, w })),
        Split::NonCommuting { pairs, u, s } => {
            return Ok(v.reject(Witness::JordanCommutator { pairs, u, s }))
        }
    };
    let gs = g.with_gens(split.gens_s.clone())?;
    let mut v = v;
    if gs.is_trivial() {
        v.reduction = Some(Reduction { split, congruence: None, image_order: 1, kernel: Vec::new() });
        return Ok(v);
    }
    let cd = select_modulus(&gs, &opts.policy)?;
    let img_gens = gs.gens.iter().map(|s| cd.apply(s)).collect::<Result<Vec<_>>>()?;
    let img = GroupSpec::new(cd.target.clone(), n, img_gens)?;
    let k = opts.class_bound.unwrap_or_else(|| image_class_bound(f, &cd.target, n));
    v.class_bound = k;
    if let Some((w, prog)) = run_core(&img, k, opts, &mut v)? {
        let domain = Domain::SemisimpleImage { pairs: split.pairs.clone(), congruence: cd };
        let w = to_witness(w, &prog, domain, k);
        return Ok(v.reject(w));
    }
    let pres = finite_image_presentation(&img.gens, n, &cd.target, opts.presentation_cap)?;
    let ker = kernel_normal_generators(&gs.gens, &gs.invs, n, f, &pres);
    if let Some((kk, i)) = kernel_is_central(&gs.gens, &ker, f) {
        let relator = pres.relator_word(kk);
        return Ok(v.reject(Witness::KernelNotCentral {
            pairs: split.pairs,
            congruence: cd,
            relator,
            generator: i,
        }));
    }
    let mut seen = HashSet::new();
    let kernel = ker
        .into_iter()
        .enumerate()
        .filter(|(_, m)| !m.is_identity(f) && seen.insert(m.clone()))
        .map(|(kk, m)| (pres.relator_word(kk), m))
        .collect();
    v.reduction = Some(Reduction {
        split,
        congruence: Some(cd),
        image_order: pres.image_order(),
        kernel,
    });
    Ok(v)
}
