//! Finiteness, order, complete reducibility, primary decomposition and
//! centre for groups already known to be nilpotent.

use std::collections::HashSet;

use crate::congruence::{finite_image_presentation, kernel_normal_generators};
use crate::error::{Error, Result};
use crate::group::{GroupSpec, Program, Step, Slp};
use crate::linalg::{Matrix, Subspace};
use crate::nilpotency::{
    adjoint_rep, is_nilpotent, sylow_check, Options, Reduction, SylowOutcome, SylowSystem, Verdict,
};
use crate::splitting::{finite_order, reduction_split, Order, Split};
use crate::witness::InfiniteWitness;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FinitenessRoute {
    /// Field is finite.
    FiniteField,
    /// G_u and the congruence kernel of G_s, characteristic 0.
    Congruence,
    /// Generator orders plus closure, positive characteristic.
    Torsion,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Finiteness {
    pub finite: bool,
    pub order: Option<u128>,
    pub route: FinitenessRoute,
    pub witness: Option<InfiniteWitness>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureReport {
    pub finite: bool,
    pub order: Option<u128>,
    pub completely_reducible: bool,
    pub cr_series: Option<Vec<Subspace>>,
    pub primary: Option<SylowSystem>,
    pub center_gens: Option<Vec<Matrix>>,
    pub infinite_witness: Option<InfiniteWitness>,
    pub notes: Vec<String>,
}

fn require_nilpotent(v: &Verdict) -> Result<()> {
    if v.nilpotent {
        Ok(())
    } else {
        Err(Error::Precondition("group is not nilpotent".into()))
    }
}

fn reduction_of(g: &GroupSpec, v: &Verdict, opts: &Options) -> Result<Reduction> {
    if let Some(r) = &v.reduction {
        return Ok(r.clone());
    }
    let fresh = is_nilpotent(g, opts)?;
    require_nilpotent(&fresh)?;
    fresh.reduction.ok_or_else(|| Error::Precondition("no reduction data".into()))
}

/// Finiteness of a nilpotent group, reusing the artifacts of `v`.
pub fn is_finite(g: &GroupSpec, v: &Verdict, opts: &Options) -> Result<Finiteness> {
    require_nilpotent(v)?;
    let f = &g.field;
    if f.is_finite() {
        let order = match &v.sylow {
            Some(s) => s.order(),
            None => is_nilpotent(g, opts)?.sylow.map(|s| s.order()).unwrap_or(1),
        };
        return Ok(Finiteness {
            finite: true,
            order: Some(order),
            route: FinitenessRoute::FiniteField,
            witness: None,
        });
    }
    if f.characteristic() > 0 {
        // torsion elements of a nilpotent group form a subgroup
        for (i, x) in g.gens.iter().enumerate() {
            if finite_order(x, f)? == Order::Infinite {
                let slp = Slp { steps: vec![Step::Gen(i)] };
                return Ok(Finiteness {
                    finite: false,
                    order: None,
                    route: FinitenessRoute::Torsion,
                    witness: Some(InfiniteWitness::InfiniteOrder { slp, element: 0 }),
                });
            }
        }
        let (all, _) = crate::nilpotency::closure_with_words(&g.gens, g.dim, f, opts.presentation_cap)?;
        return Ok(Finiteness {
            finite: true,
            order: Some(all.len() as u128),
            route: FinitenessRoute::Torsion,
            witness: None,
        });
    }
    let r = reduction_of(g, v, opts)?;
    let route = FinitenessRoute::Congruence;
    if let Some(i) = r.split.gens_u.iter().position(|u| !u.is_identity(f)) {
        let witness = InfiniteWitness::UnipotentPart { pairs: r.split.pairs, generator: i };
        return Ok(Finiteness { finite: false, order: None, route, witness: Some(witness) });
    }
    if let Some((word, _)) = r.kernel.first() {
        let witness = InfiniteWitness::KernelNontrivial {
            pairs: r.split.pairs.clone(),
            congruence: r.congruence.clone().expect("nontrivial kernel implies a congruence"),
            relator: word.clone(),
        };
        return Ok(Finiteness { finite: false, order: None, route, witness: Some(witness) });
    }
    Ok(Finiteness { finite: true, order: Some(r.image_order as u128), route, witness: None })
}

pub fn order(g: &GroupSpec, v: &Verdict, opts: &Options) -> Result<u128> {
    is_finite(g, v, opts)?
        .order
        .ok_or_else(|| Error::Precondition("group is infinite".into()))
}

/// Whether every unipotent part is trivial, with a series whose factors are
/// completely reducible (V > 0 when the answer is yes).
pub fn is_completely_reducible(g: &GroupSpec) -> Result<(bool, Vec<Subspace>)> {
    let f = &g.field;
    match reduction_split(g)? {
        Split::Ok(r) => {
            if r.gens_u.iter().all(|u| u.is_identity(f)) {
                Ok((true, vec![Subspace::full(g.dim, f), Subspace::zero(g.dim)]))
            } else {
                Ok((false, r.cert_u.flag))
            }
        }
        _ => Err(Error::Precondition("group is not nilpotent".into())),
    }
}

fn sylow_of(g: &GroupSpec, cap: usize) -> Result<(SylowSystem, Vec<Vec<usize>>, Program)> {
    let mut prog = Program::new(g);
    let refs: Vec<usize> = (0..g.ngens()).collect();
    match sylow_check(&mut prog, &refs, cap)? {
        SylowOutcome::Nilpotent { sylow, refs, .. } => Ok((sylow, refs, prog)),
        SylowOutcome::Not(_) => Err(Error::Precondition("group is not nilpotent".into())),
    }
}

pub fn primary_decomposition(g: &GroupSpec, v: &Verdict, opts: &Options) -> Result<SylowSystem> {
    require_nilpotent(v)?;
    let f = &g.field;
    if f.is_finite() {
        if let Some(s) = &v.sylow {
            return Ok(s.clone());
        }
    }
    let fin = is_finite(g, v, opts)?;
    if fin.finite {
        return Ok(sylow_of(g, opts.closure_cap)?.0);
    }
    let split = match reduction_split(g)? {
        Split::Ok(r) => r,
        _ => return Err(Error::Precondition("group is not nilpotent".into())),
    };
    let gs = g.with_gens(split.gens_s.clone())?;
    let ad = adjoint_rep(&gs)?;
    let gbar = GroupSpec::new(f.clone(), ad.basis.dim(), ad.gens)?;
    let (bar, refs, prog) = sylow_of(&gbar, opts.closure_cap)?;
    let mut out = SylowSystem { modulo_center: true, ..SylowSystem::default() };
    for (comp, rs) in bar.components.into_iter().zip(refs) {
        let (slp, idx) = prog.extract(&rs);
        let vals = slp.eval(&gs.gens, gs.dim, f)?;
        let gens = idx.iter().map(|&i| vals[i].clone()).collect();
        out.components.push(crate::nilpotency::SylowComponent { gens, ..comp });
    }
    out.central = center_generators(&gs, opts)?;
    out.unipotent = split.gens_u.into_iter().filter(|u| !u.is_identity(f)).collect();
    Ok(out)
}

/// Normal generators of Z(G) = ker adj, which generate it since they are central.
pub fn center_generators(g: &GroupSpec, opts: &Options) -> Result<Vec<Matrix>> {
    let f = &g.field;
    let (cr, _) = is_completely_reducible(g)?;
    if !cr {
        return Err(Error::Precondition("group is not completely reducible".into()));
    }
    let ad = adjoint_rep(g)?;
    let m = ad.basis.dim();
    let pres = finite_image_presentation(&ad.gens, m, f, opts.presentation_cap)?;
    let ker = kernel_normal_generators(&g.gens, &g.invs, g.dim, f, &pres);
    let mut seen = HashSet::new();
    Ok(ker.into_iter().filter(|k| !k.is_identity(f) && seen.insert(k.clone())).collect())
}

pub fn structure_report(g: &GroupSpec, v: &Verdict, opts: &Options) -> Result<StructureReport> {
    require_nilpotent(v)?;
    let fin = is_finite(g, v, opts)?;
    let (cr, series) = is_completely_reducible(g)?;
    let mut notes = Vec::new();
    let primary = match primary_decomposition(g, v, opts) {
        Ok(s) => Some(s),
        Err(e) if e.is_budget() => {
            notes.push(format!("primary decomposition abandoned: {e}"));
            None
        }
        Err(e) => return Err(e),
    };
    let center_gens = if cr {
        match center_generators(g, opts) {
            Ok(c) => Some(c),
            Err(e) if e.is_budget() => {
                notes.push(format!("centre abandoned: {e}"));
                None
            }
            Err(e) => return Err(e),
        }
    } else {
        None
    };
    Ok(StructureReport {
        finite: fin.finite,
        order: fin.order,
        completely_reducible: cr,
        cr_series: Some(series),
        primary,
        center_gens,
        infinite_witness: fin.witness,
        notes,
    })
}
