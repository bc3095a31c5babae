//! Abelian-normal series: second-central elements, centralizers through
//! Schreier generators, and the commuting-subspace cut.

use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};
use crate::fields::{factor, Field};
use crate::group::{commutator, Program, Ref};
use crate::linalg::{minimal_polynomial, nullspace, Matrix, Subspace};

/// Schreier generator lists longer than this abandon the series.
const MAX_SCHREIER: usize = 512;

pub enum Sce {
    /// a ∈ H with [x, a] ∈ Z(H) for every x in H ∪ G.
    Found(Ref),
    /// [start, m_1, …, m_k] is not central in H, hence not 1.
    Long { start: Ref, multipliers: Vec<Ref> },
}

fn is_central(prog: &Program, c: &Matrix, h: &[Ref]) -> bool {
    h.iter().all(|&y| crate::linalg::commutes(c, prog.value(y), &prog.field))
}

fn comm_value(prog: &mut Program, a: Ref, x: Ref) -> Matrix {
    let ai = prog.inv(a);
    let xi = prog.inv(x);
    commutator(prog.value(a), prog.value(ai), prog.value(x), prog.value(xi), &prog.field)
}

/// `None` when H is abelian. At most `k` commutator replacements are made.
pub fn second_central_element(prog: &mut Program, g: &[Ref], h: &[Ref], k: usize) -> Option<Sce> {
    let start = *h.iter().find(|&&x| !is_central(prog, prog.value(x), h))?;
    let mut a = start;
    let mut multipliers = Vec::new();
    loop {
        let mut next = None;
        for &x in h.iter().chain(g) {
            let c = comm_value(prog, a, x);
            if !is_central(prog, &c, h) {
                next = Some(x);
                break;
            }
        }
        let Some(x) = next else {
            return Some(Sce::Found(a));
        };
        if multipliers.len() == k {
            return Some(Sce::Long { start, multipliers });
        }
        a = prog.comm(a, x);
        multipliers.push(x);
    }
}

/// {a} ∪ {[x, a] : x ∈ gens}, identities and repeats removed.
pub fn noncentral_abelian(prog: &mut Program, gens: &[Ref], a: Ref) -> Vec<Ref> {
    let mut out = vec![a];
    let mut seen: HashSet<Matrix> = HashSet::from([prog.value(a).clone()]);
    for &x in gens {
        let c = prog.comm(x, a);
        let v = prog.value(c);
        if !v.is_identity(&prog.field) && seen.insert(v.clone()) {
            out.push(c);
        }
    }
    out
}

/// Generators of C_H(a), where x ↦ [x, a] is a homomorphism from H into an
/// abelian group. `Err(reason)` when the image exceeds `cap`.
pub fn centralizer(
    prog: &mut Program,
    h: &[Ref],
    a: Ref,
    cap: usize,
) -> std::result::Result<Vec<Ref>, String> {
    let phi: Vec<Matrix> = h.iter().map(|&x| comm_value(prog, x, a)).collect();
    let f = prog.field.clone();
    let id = prog.identity();
    let mut index: HashMap<Matrix, usize> = HashMap::new();
    index.insert(prog.value(id).clone(), 0);
    let mut values = vec![prog.value(id).clone()];
    let mut transversal = vec![id];
    let mut out = Vec::new();
    let mut seen: HashSet<Matrix> = HashSet::new();
    let mut head = 0;
    while head < values.len() {
        for (j, &x) in h.iter().enumerate() {
            let z = values[head].mul(&phi[j], &f);
            let t = prog.mul(transversal[head], x);
            match index.get(&z) {
                None => {
                    if values.len() >= cap {
                        return Err(format!("centralizer index exceeds {cap}"));
                    }
                    index.insert(z.clone(), values.len());
                    values.push(z);
                    transversal.push(t);
                }
                Some(&w) => {
                    let twi = prog.inv(transversal[w]);
                    let s = prog.mul(t, twi);
                    let v = prog.value(s);
                    if !v.is_identity(&f) && seen.insert(v.clone()) {
                        if seen.len() > MAX_SCHREIER {
                            return Err(format!("more than {MAX_SCHREIER} Schreier generators"));
                        }
                        out.push(s);
                    }
                }
            }
        }
        head += 1;
    }
    Ok(out)
}

/// {v ∈ w : m·v = 0}
fn restricted_kernel(m: &Matrix, w: &Subspace, f: &Field) -> Subspace {
    let n = w.ambient();
    let d = w.dim();
    let images: Vec<_> = w.basis().iter().map(|b| m.mul_vec(b, f)).collect();
    let rows: Vec<Vec<_>> = (0..n).map(|j| (0..d).map(|i| images[i][j].clone()).collect()).collect();
    let vs = nullspace(rows, d, f)
        .into_iter()
        .map(|c| {
            let mut v = vec![f.zero(); n];
            for (ci, b) in c.iter().zip(w.basis()) {
                for (x, y) in v.iter_mut().zip(b) {
                    *x = f.add(x, &f.mul(ci, y));
                }
            }
            v
        })
        .collect();
    Subspace::span(vs, n, f)
}

/// Decomposes V into common primary components of commuting semisimple
/// matrices.
pub fn split_semisimple_commutative(gens: &[Matrix], n: usize, f: &Field) -> Result<Vec<Subspace>> {
    for (i, a) in gens.iter().enumerate() {
        for b in &gens[i + 1..] {
            if !crate::linalg::commutes(a, b, f) {
                return Err(Error::NotAbelian);
            }
        }
    }
    let mut parts = vec![Subspace::full(n, f)];
    for a in gens {
        let m = minimal_polynomial(a, f);
        let fac = factor(&m, f)?;
        if fac.iter().any(|&(_, e)| e > 1) {
            return Err(Error::NotSemisimple);
        }
        let kernels: Vec<Matrix> = fac.iter().map(|(h, _)| a.eval_poly(h, f)).collect();
        parts = parts
            .iter()
            .flat_map(|w| kernels.iter().map(|k| restricted_kernel(k, w, f)).collect::<Vec<_>>())
            .filter(|s| s.dim() > 0)
            .collect();
    }
    Ok(parts)
}

/// A_1 < … < A_l with C_i the centralizer of A_i in C_{i−1}, C_0 = G.
#[derive(Clone, Debug, Default)]
pub struct Chain {
    pub a: Vec<Vec<Ref>>,
    pub c: Vec<Vec<Ref>>,
    /// Number of common primary components of each A_i, when computable.
    pub cuts: Vec<Option<usize>>,
}

impl Chain {
    pub fn elements(&self) -> Vec<Ref> {
        self.a.iter().chain(&self.c).flatten().copied().collect()
    }
}

pub enum Series {
    Chain(Chain),
    Long { start: Ref, multipliers: Vec<Ref> },
    Abandoned(String),
}

pub fn test_series(prog: &mut Program, g: &[Ref], k: usize, index_cap: usize) -> Series {
    let n = prog.dim;
    let f = prog.field.clone();
    let mut seen = HashSet::new();
    let c0: Vec<Ref> = g
        .iter()
        .copied()
        .filter(|&x| !prog.value(x).is_identity(&f) && seen.insert(prog.value(x).clone()))
        .collect();
    let mut chain = Chain { c: vec![c0], ..Chain::default() };
    loop {
        let h = chain.c.last().unwrap().clone();
        let a = match second_central_element(prog, g, &h, k) {
            None => return Series::Chain(chain),
            Some(Sce::Long { start, multipliers }) => return Series::Long { start, multipliers },
            Some(Sce::Found(a)) => a,
        };
        if chain.a.len() + 1 > n.saturating_sub(1).max(1) {
            return Series::Abandoned(Error::LoopOverflow(chain.a.len() + 1).to_string());
        }
        let big_a = noncentral_abelian(prog, &h, a);
        let vals: Vec<Matrix> = big_a.iter().map(|&r| prog.value(r).clone()).collect();
        chain.cuts.push(split_semisimple_commutative(&vals, n, &f).ok().map(|p| p.len()));
        let c = match centralizer(prog, &h, a, index_cap) {
            Ok(c) => c,
            Err(reason) => return Series::Abandoned(reason),
        };
        chain.a.push(big_a);
        chain.c.push(c);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupSpec;

    fn refs(g: &GroupSpec) -> Vec<Ref> {
        (0..g.ngens()).collect()
    }

    #[test]
    fn sce_on_abelian_is_none() {
        let f = Field::Rationals;
        let g = GroupSpec::new(f.clone(), 2, vec![Matrix::from_ints(&[&[0, -1], &[1, 0]], &f)]).unwrap();
        let mut p = Program::new(&g);
        assert!(second_central_element(&mut p, &refs(&g), &refs(&g), 3).is_none());
    }

    #[test]
    fn quaternion_chain_has_depth_one() {
        let f = Field::prime(3).unwrap();
        let i = Matrix::from_ints(&[&[1, 1], &[1, -1]], &f);
        let j = Matrix::from_ints(&[&[-1, 1], &[1, 1]], &f);
        let g = GroupSpec::new(f.clone(), 2, vec![i, j]).unwrap();
        let mut p = Program::new(&g);
        let Series::Chain(ch) = test_series(&mut p, &refs(&g), 4, 8) else {
            panic!("Q8 is nilpotent");
        };
        assert_eq!(ch.a.len(), 1);
        let top = ch.c.last().unwrap();
        for (x, &r) in top.iter().enumerate() {
            for &s in &top[x + 1..] {
                assert!(crate::linalg::commutes(p.value(r), p.value(s), &f));
            }
        }
    }

    #[test]
    fn s3_gives_long_commutator() {
        let f = Field::Rationals;
        let r = Matrix::from_ints(&[&[0, -1], &[1, -1]], &f);
        let s = Matrix::from_ints(&[&[0, 1], &[1, 0]], &f);
        let g = GroupSpec::new(f.clone(), 2, vec![r, s]).unwrap();
        let mut p = Program::new(&g);
        match second_central_element(&mut p, &refs(&g), &refs(&g), 3) {
            Some(Sce::Long { start, multipliers }) => {
                assert_eq!(multipliers.len(), 3);
                let mut a = start;
                for m in multipliers {
                    a = p.comm(a, m);
                }
                assert!(!p.value(a).is_identity(&f));
            }
            _ => panic!("S3 is not nilpotent"),
        }
    }

    #[test]
    fn cut_of_diagonal() {
        let f = Field::Rationals;
        let d = Matrix::from_ints(&[&[1, 0, 0], &[0, 2, 0], &[0, 0, 2]], &f);
        let parts = split_semisimple_commutative(std::slice::from_ref(&d), 3, &f).unwrap();
        let mut dims: Vec<usize> = parts.iter().map(|s| s.dim()).collect();
        dims.sort();
        assert_eq!(dims, vec![1, 2]);
        let r = Matrix::from_ints(&[&[0, -1], &[1, 0]], &f);
        assert_eq!(split_semisimple_commutative(&[r], 2, &f).unwrap().len(), 1);
        let nil = Matrix::from_ints(&[&[1, 1], &[0, 1]], &f);
        assert_eq!(split_semisimple_commutative(&[nil], 2, &f), Err(Error::NotSemisimple));
    }
}
