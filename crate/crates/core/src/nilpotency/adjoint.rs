//! Conjugation action on the enveloping algebra. For semisimple generators
//! the image is G/Z(G), finite exactly when a nilpotent G could be.

use crate::error::{Error, Result};
use crate::fields::Field;
use crate::group::GroupSpec;
use crate::linalg::{spin_basis, AlgebraBasis, Matrix};
use crate::splitting::is_semisimple;
use crate::witness::Domain;

use super::{class_bound, run_core, to_witness, Method, Options, Verdict};

#[derive(Clone, Debug)]
pub struct AdjointData {
    pub basis: AlgebraBasis,
    pub gens: Vec<Matrix>,
}

/// Matrix of b ↦ x·b·x⁻¹ in the algebra basis.
pub fn adjoint_of(x: &Matrix, xinv: &Matrix, basis: &AlgebraBasis, f: &Field) -> Result<Matrix> {
    let m = basis.dim();
    let mut cols = Vec::with_capacity(m);
    for b in &basis.mats {
        let c = x.mul(b, f).mul(xinv, f);
        cols.push(basis.coords(&c, f).ok_or_else(|| {
            Error::Precondition("conjugate left the enveloping algebra".into())
        })?);
    }
    let rows = (0..m).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect();
    if m == 0 {
        return Ok(Matrix::identity(0, f));
    }
    Matrix::from_rows(rows)
}

pub fn adjoint_rep(g: &GroupSpec) -> Result<AdjointData> {
    let f = &g.field;
    let basis = spin_basis(&g.gens, g.dim, f);
    let gens = g
        .gens
        .iter()
        .zip(&g.invs)
        .map(|(x, xi)| adjoint_of(x, xi, &basis, f))
        .collect::<Result<Vec<_>>>()?;
    Ok(AdjointData { basis, gens })
}

/// Class bound used for adj(G) ≤ GL(m, F).
pub fn adjoint_class_bound(f: &Field, n: usize, m: usize) -> usize {
    class_bound(f, n).min(class_bound(f, m))
}

/// Requires diagonalizable generators.
pub fn is_nilpotent_adjoint(g: &GroupSpec, opts: &Options) -> Result<Verdict> {
    let f = &g.field;
    for x in &g.gens {
        if !is_semisimple(x, f)? {
            return Err(Error::NotSemisimple);
        }
    }
    let ad = adjoint_rep(g)?;
    let m = ad.basis.dim();
    let k = opts.class_bound.unwrap_or_else(|| adjoint_class_bound(f, g.dim, m));
    let mut v = Verdict::new(Method::Adjoint, k);
    let gbar = GroupSpec::new(f.clone(), m, ad.gens)?;
    if gbar.is_trivial() {
        return Ok(v);
    }
    Ok(match run_core(&gbar, k, opts, &mut v)? {
        None => v,
        Some((w, prog)) => {
            let w = to_witness(w, &prog, Domain::Adjoint, k);
            v.reject(w)
        }
    })
}
