//! Corpus generators and a brute-force oracle. The oracle uses nothing but
//! matrix multiplication and equality, so it can arbitrate every other module.

use std::collections::HashSet;

use crate::arith;
use crate::error::{Error, Result};
use crate::fields::{Elem, Field};
use crate::group::{commutator_of, GroupSpec};
use crate::linalg::Matrix;

#[derive(Clone, Debug)]
pub struct Closure {
    pub elements: Vec<Matrix>,
    pub overflowed: bool,
    pub cap: usize,
}

/// Breadth-first closure under right multiplication by `gens`.
pub fn closure(gens: &[Matrix], dim: usize, f: &Field, cap: usize) -> Closure {
    let id = Matrix::identity(dim, f);
    let mut seen: HashSet<Matrix> = HashSet::from([id.clone()]);
    let mut elements = vec![id];
    let mut head = 0;
    while head < elements.len() {
        for g in gens {
            let x = elements[head].mul(g, f);
            if !seen.contains(&x) {
                if elements.len() >= cap {
                    return Closure { elements, overflowed: true, cap };
                }
                seen.insert(x.clone());
                elements.push(x);
            }
        }
        head += 1;
    }
    Closure { elements, overflowed: false, cap }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleInvariants {
    pub order: usize,
    pub nilpotent: bool,
    pub class: Option<usize>,
    pub center_size: usize,
}

/// Subgroup generated by `seeds` inside a finite group, adding a seed only
/// when it is not already contained.
fn subgroup(seeds: &[Matrix], dim: usize, f: &Field) -> HashSet<Matrix> {
    let mut gens: Vec<Matrix> = Vec::new();
    let mut set: HashSet<Matrix> = HashSet::from([Matrix::identity(dim, f)]);
    for s in seeds {
        if set.contains(s) {
            continue;
        }
        gens.push(s.clone());
        set = closure(&gens, dim, f, usize::MAX).elements.into_iter().collect();
    }
    set
}

/// γ_{i+1} = ⟨[x, g] : x ∈ γ_i, g ∈ G⟩, computed on all pairs of γ_i with the
/// generators, closed under conjugation by the generators.
fn next_term(term: &HashSet<Matrix>, gens: &[Matrix], invs: &[Matrix], dim: usize, f: &Field) -> HashSet<Matrix> {
    let mut pool: Vec<Matrix> = Vec::new();
    let mut seen: HashSet<Matrix> = HashSet::new();
    for x in term {
        for g in gens {
            let c = commutator_of(x, g, f).expect("group elements are invertible");
            if seen.insert(c.clone()) {
                pool.push(c);
            }
        }
    }
    let mut head = 0;
    while head < pool.len() {
        for (g, gi) in gens.iter().zip(invs) {
            let c = gi.mul(&pool[head], f).mul(g, f);
            if seen.insert(c.clone()) {
                pool.push(c);
            }
        }
        head += 1;
    }
    subgroup(&pool, dim, f)
}

/// Ground truth for a finite group given by its closure and generators.
pub fn oracle_invariants(c: &Closure, gens: &[Matrix], f: &Field) -> Result<OracleInvariants> {
    if c.overflowed {
        return Err(Error::CapExceeded(c.cap));
    }
    let dim = c.elements[0].rows();
    let invs = gens.iter().map(|g| g.inverse(f)).collect::<Result<Vec<_>>>()?;
    let center_size = c
        .elements
        .iter()
        .filter(|x| gens.iter().all(|g| crate::linalg::commutes(x, g, f)))
        .count();
    let mut term: HashSet<Matrix> = c.elements.iter().cloned().collect();
    let mut class = 0;
    let (nilpotent, class) = loop {
        if term.len() == 1 {
            break (true, Some(class));
        }
        let next = next_term(&term, gens, &invs, dim, f);
        if next.len() == term.len() {
            break (false, None);
        }
        term = next;
        class += 1;
    };
    Ok(OracleInvariants { order: c.elements.len(), nilpotent, class, center_size })
}

/// Oracle centre as an element set.
pub fn oracle_center(c: &Closure, gens: &[Matrix], f: &Field) -> Vec<Matrix> {
    c.elements.iter().filter(|x| gens.iter().all(|g| crate::linalg::commutes(x, g, f))).cloned().collect()
}

fn primitive_element(f: &Field) -> Elem {
    let q = f.size().expect("finite field");
    let fac = arith::factor_u128(q - 1);
    (1..q)
        .map(|k| f.element_at(k).unwrap())
        .find(|z| fac.iter().all(|&(r, _)| !f.is_one(&f.pow(z, (q - 1) / r))))
        .expect("multiplicative group is cyclic")
}

/// Cyclic shift of r blocks of size d.
fn block_cycle(r: usize, d: usize, f: &Field) -> Matrix {
    let perm: Vec<usize> = (0..r).map(|i| (i + 1) % r).collect();
    Matrix::permutation(&perm, f).kron(&Matrix::identity(d, f), f)
}

/// Iterated wreath product of ⟨ω⟩ by C_r, of degree r^a.
fn wreath(r: usize, a: u32, omega: &Elem, f: &Field) -> Vec<Matrix> {
    if a == 0 {
        return vec![Matrix::diag(std::slice::from_ref(omega), f)];
    }
    let d = r.pow(a - 1);
    let mut out: Vec<Matrix> = wreath(r, a - 1, omega, f)
        .into_iter()
        .map(|h| {
            let mut blocks = vec![h];
            blocks.extend((1..r).map(|_| Matrix::identity(d, f)));
            Matrix::block_diag(&blocks, f)
        })
        .collect();
    out.push(block_cycle(r, d, f));
    out
}

/// Absolutely irreducible maximal nilpotent subgroup of GL(n, p^l): Kronecker
/// product of Sylow r-subgroups for the prime powers of n, with all scalars.
pub fn gen_max_abs_irr_nilpotent(n: usize, p: u64, l: usize) -> Result<GroupSpec> {
    let f = Field::finite(p, l, 1)?;
    let q = f.size().unwrap();
    let fac = arith::factor_u64(n as u64);
    for &(r, _) in &fac {
        if (q - 1) % r as u128 != 0 {
            return Err(Error::Nonexistence(format!("{r} does not divide {}", q - 1)));
        }
        if r == 2 && q % 4 == 3 {
            return Err(Error::UnsupportedTwoCase);
        }
    }
    let zeta = primitive_element(&f);
    let mut gens: Vec<Matrix> = Vec::new();
    let mut dim = 1;
    for &(r, a) in &fac {
        let s = arith::valuation((q - 1) as u64, r);
        let omega = f.pow(&zeta, (q - 1) / (r as u128).pow(s));
        let part = wreath(r as usize, a, &omega, &f);
        let d = (r as usize).pow(a);
        gens = gens.iter().map(|g| g.kron(&Matrix::identity(d, &f), &f)).collect();
        gens.extend(part.iter().map(|h| Matrix::identity(dim, &f).kron(h, &f)));
        dim *= d;
    }
    gens.push(Matrix::scalar(n, &zeta, &f));
    GroupSpec::new(f, n, gens)
}

/// h ↦ blockdiag(h, h), plus the central unipotent [[I, I], [0, I]].
pub fn gen_reducible_nilpotent(base: &GroupSpec) -> Result<GroupSpec> {
    let f = &base.field;
    let d = base.dim;
    let mut gens: Vec<Matrix> = base.gens.iter().map(|h| Matrix::block_diag(&[h.clone(), h.clone()], f)).collect();
    let mut u = Matrix::identity(2 * d, f);
    for i in 0..d {
        u.set(i, d + i, f.one());
    }
    gens.push(u);
    GroupSpec::new(f.clone(), 2 * d, gens)
}

/// Uniform over finite fields and fields of fixed degree; a + bX with small
/// a, b over function fields, where generic entries make elimination blow up.
fn small_random<R: rand::Rng>(f: &Field, rng: &mut R) -> Elem {
    match f {
        Field::Function(_) => {
            let x = f.generator().expect("function field");
            let a = f.from_i64(rng.gen_range(-3..=3));
            let b = f.from_i64(rng.gen_range(-2..=2));
            f.add(&a, &f.mul(&b, &x))
        }
        _ => f.random(rng),
    }
}

fn random_unimodular<R: rand::Rng>(f: &Field, n: usize, rng: &mut R) -> Matrix {
    let mut l = Matrix::identity(n, f);
    let mut u = Matrix::identity(n, f);
    for i in 0..n {
        for j in 0..i {
            l.set(i, j, f.from_i64(rng.gen_range(-2..=2)));
            u.set(j, i, small_random(f, rng));
        }
    }
    l.mul(&u, f)
}

/// Seeded g = P·T·P⁻¹ with T upper triangular over a two-value eigenvalue
/// pool (so repeated eigenvalues are common), and an independent conjugator.
pub fn random_jordan_case(f: &Field, n: usize, seed: u64) -> (Matrix, Matrix) {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut pool: Vec<Elem> = [2i64, 3, -1, 1].iter().map(|&k| f.from_i64(k)).filter(|e| !f.is_zero(e)).collect();
    if let Some(a) = f.generator() {
        pool.insert(0, a);
    }
    pool.dedup();
    let pool = [pool[0].clone(), pool[pool.len() - 1].clone()];
    let mut t = Matrix::zeros(n, n, f);
    for i in 0..n {
        t.set(i, i, pool[rng.gen_range(0..2)].clone());
        for j in i + 1..n {
            t.set(i, j, small_random(f, &mut rng));
        }
    }
    let p = random_unimodular(f, n, &mut rng);
    let g = p.mul(&t, f).mul(&p.inverse(f).expect("unimodular"), f);
    (g, random_unimodular(f, n, &mut rng))
}

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: String,
    pub group: GroupSpec,
    /// Label for groups built to be infinite, where no closure can decide.
    pub designed_nilpotent: Option<bool>,
}

fn entry(name: &str, f: &Field, rows: &[&[&[i64]]]) -> CorpusEntry {
    let gens: Vec<Matrix> = rows.iter().map(|r| Matrix::from_ints(r, f)).collect();
    let dim = gens[0].rows();
    CorpusEntry {
        name: name.to_string(),
        group: GroupSpec::new(f.clone(), dim, gens).expect("corpus generators are invertible"),
        designed_nilpotent: None,
    }
}

fn labelled(mut e: CorpusEntry, nilpotent: bool) -> CorpusEntry {
    e.designed_nilpotent = Some(nilpotent);
    e
}

fn from_group(name: &str, g: GroupSpec) -> CorpusEntry {
    CorpusEntry { name: name.to_string(), group: g, designed_nilpotent: None }
}

/// t·g·t⁻¹ on every generator.
pub fn conjugate(g: &GroupSpec, t: &Matrix) -> Result<GroupSpec> {
    let f = &g.field;
    let ti = t.inverse(f)?;
    g.with_gens(g.gens.iter().map(|x| t.mul(x, f).mul(&ti, f)).collect())
}

fn perm(p: &[usize], f: &Field) -> Matrix {
    Matrix::permutation(p, f)
}

fn perm_group(name: &str, f: &Field, perms: &[&[usize]]) -> CorpusEntry {
    let gens: Vec<Matrix> = perms.iter().map(|p| perm(p, f)).collect();
    from_group(name, GroupSpec::new(f.clone(), perms[0].len(), gens).unwrap())
}

fn unitriangular(n: usize, f: &Field) -> GroupSpec {
    let gens = (0..n - 1).map(|i| Matrix::elementary(n, i, i + 1, f)).collect();
    GroupSpec::new(f.clone(), n, gens).unwrap()
}

fn gf(q: u64) -> Field {
    let fac = arith::factor_u64(q);
    Field::finite(fac[0].0, fac[0].1 as usize, 1).unwrap()
}

const D8: &[&[&[i64]]] = &[&[&[0, -1], &[1, 0]], &[&[1, 0], &[0, -1]]];
const Q8_ODD: &[&[&[i64]]] = &[&[&[1, 1], &[1, -1]], &[&[-1, 1], &[1, 1]]];
const S3: &[&[usize]] = &[&[1, 2, 0], &[1, 0, 2]];
const S4: &[&[usize]] = &[&[1, 2, 3, 0], &[1, 0, 2, 3]];
const A4: &[&[usize]] = &[&[1, 2, 0, 3], &[1, 0, 3, 2]];

/// Groups over GF(q), q ≤ 25, degree ≤ 6, closure ≤ 10⁴.
pub fn corpus_finite() -> Vec<CorpusEntry> {
    let mut out = Vec::new();
    for (n, p, l) in [(2, 5, 1), (2, 13, 1), (2, 3, 2), (2, 17, 1), (2, 5, 2), (3, 7, 1), (3, 2, 2), (3, 13, 1), (3, 2, 4), (3, 19, 1), (3, 5, 2), (4, 5, 1), (4, 13, 1), (6, 13, 1)] {
        out.push(from_group(&format!("max_nilpotent_{n}_{p}^{l}"), gen_max_abs_irr_nilpotent(n, p, l).unwrap()));
    }
    for q in [2u64, 3, 5] {
        out.push(from_group(&format!("ut3_gf{q}"), unitriangular(3, &gf(q))));
    }
    out.push(from_group("ut4_gf2", unitriangular(4, &gf(2))));
    out.push(from_group("ut4_gf3", unitriangular(4, &gf(3))));
    out.push(from_group("ut3_gf4", unitriangular(3, &gf(4))));
    for q in [3u64, 5, 7, 11] {
        out.push(entry(&format!("q8_gf{q}"), &gf(q), Q8_ODD));
        out.push(entry(&format!("d8_gf{q}"), &gf(q), D8));
    }
    for q in [2u64, 5, 7, 11] {
        out.push(perm_group(&format!("s3_gf{q}"), &gf(q), S3));
    }
    out.push(perm_group("s4_gf3", &gf(3), S4));
    out.push(perm_group("a4_gf5", &gf(5), A4));
    out.push(perm_group("a4_gf2", &gf(2), A4));
    let f3 = gf(3);
    out.push(entry("gl2_gf3", &f3, &[&[&[1, 1], &[0, 1]], &[&[0, 1], &[1, 0]], &[&[-1, 0], &[0, 1]]]));
    out.push(entry("sl2_gf3", &f3, &[&[&[1, 1], &[0, 1]], &[&[1, 0], &[1, 1]]]));
    out.push(entry("borel2_gf3", &f3, &[&[&[-1, 0], &[0, 1]], &[&[1, 1], &[0, 1]]]));
    let f5 = gf(5);
    out.push(entry("affine_gf5", &f5, &[&[&[2, 0], &[0, 1]], &[&[1, 1], &[0, 1]]]));
    out.push(entry("diag_gf5", &f5, &[&[&[2, 0, 0], &[0, 1, 0], &[0, 0, 4]], &[&[1, 0, 0], &[0, 3, 0], &[0, 0, 1]]]));
    out.push(entry("scalar_by_unipotent_gf5", &f5, &[&[&[2, 1], &[0, 2]]]));
    out.push(from_group("reducible_q8_gf3", gen_reducible_nilpotent(&entry("", &f3, Q8_ODD).group).unwrap()));
    out.push(from_group("reducible_d8_gf5", gen_reducible_nilpotent(&entry("", &f5, D8).group).unwrap()));
    let f7 = gf(7);
    out.push(entry("monomial_c3_gf7", &f7, &[&[&[2, 0], &[0, 4]], &[&[0, 1], &[1, 0]]]));
    out.push(entry("singer_gf2", &gf(2), &[&[&[0, 0, 1], &[1, 0, 1], &[0, 1, 0]]]));
    out.push(entry("heis_times_scalar_gf7", &f7, &[&[&[1, 1, 0], &[0, 1, 0], &[0, 0, 1]], &[&[1, 0, 0], &[0, 1, 1], &[0, 0, 1]], &[&[3, 0, 0], &[0, 3, 0], &[0, 0, 3]]]));
    let f4 = gf(4);
    let w = f4.generator().unwrap();
    let dw = Matrix::diag(&[w.clone(), f4.one()], &f4);
    out.push(from_group("diag_swap_gf4", GroupSpec::new(f4.clone(), 2, vec![dw, perm(&[1, 0], &f4)]).unwrap()));
    out
}

/// Rational groups; finite ones are small, infinite ones carry design labels.
pub fn corpus_rational() -> Vec<CorpusEntry> {
    let q = Field::Rationals;
    let mut out = vec![
        entry("d8", &q, D8),
        entry("klein4", &q, &[&[&[-1, 0], &[0, 1]], &[&[1, 0], &[0, -1]]]),
        entry("c6", &q, &[&[&[1, -1], &[1, 0]]]),
        entry("c3_times_c2", &q, &[&[&[0, -1], &[1, -1]], &[&[-1, 0], &[0, -1]]]),
        entry("d12", &q, &[&[&[1, -1], &[1, 0]], &[&[0, 1], &[1, 0]]]),
        entry("c4_wreath_c2", &q, &[
            &[&[0, -1, 0, 0], &[1, 0, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]],
            &[&[0, 0, 1, 0], &[0, 0, 0, 1], &[1, 0, 0, 0], &[0, 1, 0, 0]],
        ]),
        entry("q8_dim4", &q, &[
            &[&[0, -1, 0, 0], &[1, 0, 0, 0], &[0, 0, 0, -1], &[0, 0, 1, 0]],
            &[&[0, 0, -1, 0], &[0, 0, 0, 1], &[1, 0, 0, 0], &[0, -1, 0, 0]],
        ]),
        entry("signed_perm3_sylow2", &q, &[
            &[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]],
            &[&[-1, 0, 0], &[0, 1, 0], &[0, 0, 1]],
            &[&[1, 0, 0], &[0, 1, 0], &[0, 0, -1]],
        ]),
        entry("signed_perm3", &q, &[
            &[&[0, 1, 0], &[0, 0, 1], &[1, 0, 0]],
            &[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]],
            &[&[-1, 0, 0], &[0, 1, 0], &[0, 0, 1]],
        ]),
        perm_group("s3", &q, S3),
        perm_group("s4", &q, S4),
        perm_group("a4", &q, A4),
        entry("d8_times_c3", &q, &[
            &[&[0, -1, 0, 0], &[1, 0, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]],
            &[&[1, 0, 0, 0], &[0, -1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]],
            &[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 0, -1], &[0, 0, 1, -1]],
        ]),
        entry("rational_conj_klein4", &q, &[&[&[1, 0], &[1, -1]], &[&[-1, 0], &[0, -1]]]),
    ];
    let t2 = Matrix::from_ints(&[&[2, 1], &[3, 5]], &q);
    out.push(from_group("d8_conj", conjugate(&out[0].group, &t2).unwrap()));
    let t3 = Matrix::from_ints(&[&[1, 2, 0], &[0, 1, -1], &[3, 0, 2]], &q);
    out.push(from_group("s3_conj", conjugate(&out[9].group, &t3).unwrap()));
    let heis = entry("heisenberg", &q, &[&[&[1, 1, 0], &[0, 1, 0], &[0, 0, 1]], &[&[1, 0, 0], &[0, 1, 1], &[0, 0, 1]]]);
    out.push(labelled(from_group("reducible_d8", gen_reducible_nilpotent(&out[0].group).unwrap()), true));
    out.push(labelled(heis, true));
    out.push(labelled(from_group("ut4", unitriangular(4, &q)), true));
    out.push(labelled(entry("diag2", &q, &[&[&[2]]]), true));
    out.push(labelled(entry("diag_abelian", &q, &[&[&[2, 0], &[0, 3]], &[&[5, 0], &[0, 7]]]), true));
    out.push(labelled(entry("scalar_times_d8", &q, &[&[&[0, -1], &[1, 0]], &[&[1, 0], &[0, -1]], &[&[2, 0], &[0, 2]]]), true));
    out.push(labelled(entry("scalar_times_unipotent", &q, &[&[&[2, 2], &[0, 2]]]), true));
    out.push(labelled(entry("diag3_swap", &q, &[&[&[3, 0], &[0, 1]], &[&[0, 1], &[1, 0]]]), false));
    out.push(labelled(entry("sl2z_free", &q, &[&[&[1, 2], &[0, 1]], &[&[1, 0], &[2, 1]]]), false));
    out.push(labelled(entry("bs12", &q, &[&[&[2, 0], &[0, 1]], &[&[1, 1], &[0, 1]]]), false));
    out.push(labelled(entry("unipotent_sign", &q, &[&[&[1, 1], &[0, 1]], &[&[-1, 0], &[0, 1]]]), false));
    out.push(labelled(entry("half_swap", &q, &[&[&[1, 0], &[0, 2]], &[&[0, 1], &[1, 0]], &[&[-1, 0], &[0, 1]]]), false));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inv(g: &GroupSpec) -> OracleInvariants {
        let c = closure(&g.gens, g.dim, &g.field, 100_000);
        oracle_invariants(&c, &g.gens, &g.field).unwrap()
    }

    #[test]
    fn oracle_examples() {
        let q = Field::Rationals;
        let d8 = entry("d8", &q, D8).group;
        assert_eq!(inv(&d8), OracleInvariants { order: 8, nilpotent: true, class: Some(2), center_size: 2 });
        let s3 = perm_group("s3", &q, S3).group;
        let o = inv(&s3);
        assert_eq!((o.order, o.nilpotent), (6, false));
        let triv = GroupSpec::new(q.clone(), 2, vec![Matrix::identity(2, &q)]).unwrap();
        assert_eq!(inv(&triv), OracleInvariants { order: 1, nilpotent: true, class: Some(0), center_size: 1 });
        assert!(closure(&[Matrix::from_ints(&[&[2]], &q)], 1, &q, 100).overflowed);
    }

    #[test]
    fn generator_examples() {
        let g = gen_max_abs_irr_nilpotent(2, 5, 1).unwrap();
        let o = inv(&g);
        assert_eq!((o.order, o.nilpotent), (32, true));
        assert_eq!(crate::linalg::spin_basis(&g.gens, 2, &g.field).dim(), 4);
        assert!(matches!(gen_max_abs_irr_nilpotent(3, 5, 1), Err(Error::Nonexistence(_))));
        assert_eq!(gen_max_abs_irr_nilpotent(2, 7, 1).unwrap_err(), Error::UnsupportedTwoCase);
        let g = gen_max_abs_irr_nilpotent(3, 7, 1).unwrap();
        let o = inv(&g);
        assert_eq!((o.order, o.nilpotent), (162, true));
        let q = Field::Rationals;
        let one = GroupSpec::new(q.clone(), 1, vec![Matrix::identity(1, &q)]).unwrap();
        let r = gen_reducible_nilpotent(&one).unwrap();
        assert_eq!(r.gens[1], Matrix::from_ints(&[&[1, 1], &[0, 1]], &q));
    }

    #[test]
    fn corpus_sizes() {
        assert!(corpus_finite().len() >= 40);
        assert!(corpus_rational().len() >= 20);
    }
}
