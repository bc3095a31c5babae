//! Congruence homomorphisms onto finite fields: denominator analysis, modulus
//! selection with validity checks, entrywise reduction, and Schreier
//! presentations of the finite image with kernel normal generators.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use crate::arith;
use crate::error::{Error, Result};
use crate::fields::{discriminant_int, factor, reduce_mod, Elem, Field, Poly};
use crate::group::{GroupSpec, Word};
use crate::linalg::{minimal_polynomial, Matrix};

const PARTIAL_FACTOR_LIMIT: u64 = 1 << 20;
const EVAL_POINT_LIMIT: i64 = 64;
const EXTENSION_LIMIT: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Policy {
    pub prefer_p_gt_n: bool,
    pub prime_cap: u64,
    pub forced_prime: Option<u64>,
    /// Seed for extension-field modulus searches.
    pub seed: u64,
}

impl Default for Policy {
    fn default() -> Self {
        Policy { prefer_p_gt_n: true, prime_cap: 1 << 20, forced_prime: None, seed: 1 }
    }
}

/// Members of π: integers (primes, or unfactored cofactors), or monic
/// irreducible polynomials over a function field's base.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Denominators {
    pub ints: Vec<BigInt>,
    pub polys: Vec<Poly>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Checks {
    pub odd: bool,
    pub avoids_pi: bool,
    pub squarefree_minpolys: bool,
    /// p ∤ disc(minpoly α); number fields only.
    pub unramified: Option<bool>,
    pub p_gt_n: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CongruenceData {
    pub source: Field,
    pub pi: Denominators,
    /// Function fields over Q: denominators remaining after evaluation.
    pub pi_eval: Vec<BigInt>,
    pub p: u64,
    pub target: Field,
    pub alpha_image: Option<Elem>,
    pub eval_point: Option<Elem>,
    pub checks: Checks,
}

impl CongruenceData {
    pub fn reduce(&self, e: &Elem) -> Result<Elem> {
        let t = &self.target;
        let div_err = || Error::DenominatorDivisible(self.p.to_string());
        match (&self.source, e) {
            (Field::Rationals, Elem::Q(x)) => Ok(t.from_i64(reduce_mod(x, self.p)? as i64)),
            (Field::Number(_), Elem::Nf(c)) => {
                let alpha = self.alpha_image.as_ref().expect("number field reduction has alpha");
                let mut acc = t.zero();
                let mut pw = t.one();
                for x in c {
                    let r = t.from_i64(reduce_mod(x, self.p)? as i64);
                    acc = t.add(&acc, &t.mul(&r, &pw));
                    pw = t.mul(&pw, alpha);
                }
                Ok(acc)
            }
            (Field::Function(base), Elem::Rf(r)) => {
                let a = self.eval_point.as_ref().expect("function field reduction has a point");
                match **base {
                    Field::Rationals => {
                        let num = r.num.eval(a, base);
                        let den = r.den.eval(a, base);
                        let v = base.div(&num, &den).ok_or_else(div_err)?;
                        let x = v.as_rational().unwrap();
                        Ok(t.from_i64(reduce_mod(x, self.p)? as i64))
                    }
                    _ => {
                        let num = embed_poly(&r.num, t).eval(a, t);
                        let den = embed_poly(&r.den, t).eval(a, t);
                        t.div(&num, &den).ok_or_else(div_err)
                    }
                }
            }
            _ => Err(Error::Precondition("element does not belong to the source field".into())),
        }
    }

    pub fn apply(&self, g: &Matrix) -> Result<Matrix> {
        g.map(|e| self.reduce(e))
    }

    pub fn reduce_poly(&self, h: &Poly) -> Result<Poly> {
        Ok(Poly::new(h.coeffs().iter().map(|c| self.reduce(c)).collect::<Result<Vec<_>>>()?))
    }
}

pub fn apply_congruence(g: &Matrix, cd: &CongruenceData) -> Result<Matrix> {
    cd.apply(g)
}

/// Prime-field element into an extension of the same characteristic.
fn embed(e: &Elem, t: &Field) -> Elem {
    match e {
        Elem::Fp(v) => t.from_i64(*v as i64),
        other => other.clone(),
    }
}

fn embed_poly(p: &Poly, t: &Field) -> Poly {
    Poly::new(p.coeffs().iter().map(|c| embed(c, t)).collect())
}

fn int_members(dens: impl Iterator<Item = BigInt>) -> Vec<BigInt> {
    let mut out = Vec::new();
    for d in dens {
        if d <= BigInt::one() {
            continue;
        }
        let (primes, rest) = arith::partial_factor(&d, PARTIAL_FACTOR_LIMIT);
        out.extend(primes);
        if rest > BigInt::one() {
            out.push(rest);
        }
    }
    out.sort();
    out.dedup();
    out
}

fn all_entries(g: &GroupSpec) -> impl Iterator<Item = &Elem> {
    g.gens.iter().chain(&g.invs).flat_map(|m| m.entries())
}

pub fn denominator_set(g: &GroupSpec) -> Result<Denominators> {
    let mut pi = Denominators::default();
    match &g.field {
        Field::Rationals | Field::Number(_) => {
            pi.ints = int_members(all_entries(g).filter_map(|e| e.denominator()));
        }
        Field::Function(base) => {
            let mut polys = Vec::new();
            for e in all_entries(g) {
                if let Elem::Rf(r) = e {
                    if r.den.degree() > Some(0) {
                        for (h, _) in factor(&r.den, base)? {
                            polys.push(h);
                        }
                    }
                }
            }
            polys.sort();
            polys.dedup();
            pi.polys = polys;
        }
        Field::Finite(_) => {
            return Err(Error::UnsupportedField("congruence reduction of a finite field".into()))
        }
    }
    Ok(pi)
}

struct Stage {
    field: Field,
    pi_ints: Vec<BigInt>,
    minpolys: Vec<Poly>,
}

/// Tests one prime for a Q or number-field stage; `Err` carries the reason.
fn check_prime(
    st: &Stage,
    p: u64,
    n: usize,
) -> std::result::Result<(Field, Option<Elem>, Checks), String> {
    if p == 2 || !arith::is_prime(p) {
        return Err(format!("{p} is not an odd prime"));
    }
    let bp = BigInt::from(p);
    if let Some(z) = st.pi_ints.iter().find(|z| z.is_multiple_of(&bp)) {
        return Err(format!("{p} divides the denominator {z}"));
    }
    let fp = Field::prime(p).unwrap();
    let (target, alpha, unramified) = match &st.field {
        Field::Number(nf) => {
            if discriminant_int(&nf.minpoly).is_multiple_of(&bp) {
                return Err(format!("{p} divides the discriminant"));
            }
            let fbar = Poly::new(nf.minpoly.iter().map(|c| fp.from_bigint(c)).collect());
            let facs = factor(&fbar, &fp).map_err(|e| e.to_string())?;
            let g = &facs[0].0;
            if g.degree() == Some(1) {
                let root = facs
                    .iter()
                    .filter(|(h, _)| h.degree() == Some(1))
                    .map(|(h, _)| fp.neg(&h.coeff(0, &fp)))
                    .min()
                    .unwrap();
                (fp.clone(), Some(root), Some(true))
            } else {
                let modulus: Vec<u64> = g.coeffs().iter().map(|c| c.as_residue().unwrap()).collect();
                let t = Field::finite_with_modulus(p, modulus).map_err(|e| e.to_string())?;
                let a = t.generator();
                (t, a, Some(true))
            }
        }
        _ => (fp.clone(), None, None),
    };
    let probe = CongruenceData {
        source: st.field.clone(),
        pi: Denominators::default(),
        pi_eval: Vec::new(),
        p,
        target: target.clone(),
        alpha_image: alpha.clone(),
        eval_point: None,
        checks: no_checks(),
    };
    for (i, h) in st.minpolys.iter().enumerate() {
        let hb = probe
            .reduce_poly(h)
            .map_err(|_| format!("minimal polynomial {i} has a denominator divisible by {p}"))?;
        if hb.degree() != h.degree() || !hb.gcd(&hb.derivative(&target), &target).is_one(&target) {
            return Err(format!("minimal polynomial {i} is not squarefree mod {p}"));
        }
    }
    Ok((
        target,
        alpha,
        Checks {
            odd: true,
            avoids_pi: true,
            squarefree_minpolys: true,
            unramified,
            p_gt_n: p as usize > n,
        },
    ))
}

fn no_checks() -> Checks {
    Checks { odd: false, avoids_pi: false, squarefree_minpolys: false, unramified: None, p_gt_n: false }
}

fn prime_search(
    st: &Stage,
    n: usize,
    policy: &Policy,
) -> Result<(u64, Field, Option<Elem>, Checks)> {
    if let Some(p) = policy.forced_prime {
        return check_prime(st, p, n)
            .map(|(t, a, c)| (p, t, a, c))
            .map_err(Error::InvalidModulus);
    }
    let passes: &[bool] = if policy.prefer_p_gt_n { &[true, false] } else { &[false] };
    for &strict in passes {
        let mut p = 3;
        while p < policy.prime_cap {
            if !strict || p as usize > n {
                if let Ok((t, a, c)) = check_prime(st, p, n) {
                    return Ok((p, t, a, c));
                }
            }
            p = arith::next_prime(p);
        }
    }
    Err(Error::NoPrimeInRange(policy.prime_cap))
}

/// Integers 0, 1, −1, 2, −2, …
fn int_points() -> impl Iterator<Item = i64> {
    (0..EVAL_POINT_LIMIT).map(|k| if k % 2 == 1 { (k + 1) / 2 } else { -(k / 2) })
}

/// Chooses a valid congruence homomorphism for the group `g` (normally the
/// semisimple parts G_s).
pub fn select_modulus(g: &GroupSpec, policy: &Policy) -> Result<CongruenceData> {
    let pi = denominator_set(g)?;
    let f = &g.field;
    let n = g.dim;
    let minpolys: Vec<Poly> = g.gens.iter().map(|m| minimal_polynomial(m, f)).collect();
    match f {
        Field::Rationals | Field::Number(_) => {
            let st = Stage { field: f.clone(), pi_ints: pi.ints.clone(), minpolys };
            let (p, target, alpha_image, checks) = prime_search(&st, n, policy)?;
            Ok(CongruenceData {
                source: f.clone(),
                pi,
                pi_eval: Vec::new(),
                p,
                target,
                alpha_image,
                eval_point: None,
                checks,
            })
        }
        Field::Function(base) if matches!(**base, Field::Rationals) => {
            let mut last = Error::NoPrimeInRange(policy.prime_cap);
            for a in int_points() {
                let a = base.from_i64(a);
                if pi.polys.iter().any(|h| base.is_zero(&h.eval(&a, base))) {
                    continue;
                }
                let eval = |e: &Elem| -> Elem {
                    let Elem::Rf(r) = e else { unreachable!() };
                    base.div(&r.num.eval(&a, base), &r.den.eval(&a, base)).unwrap()
                };
                let mps: Option<Vec<Poly>> = minpolys
                    .iter()
                    .map(|h| {
                        let hb = Poly::new(h.coeffs().iter().map(eval).collect());
                        let ok = hb.degree() == h.degree() && hb.gcd(&hb.derivative(base), base).is_one(base);
                        ok.then_some(hb)
                    })
                    .collect();
                let Some(mps) = mps else { continue };
                let pi_eval = int_members(all_entries(g).map(|e| eval(e).denominator().unwrap()));
                let st = Stage { field: Field::Rationals, pi_ints: pi_eval.clone(), minpolys: mps };
                match prime_search(&st, n, policy) {
                    Ok((p, target, _, checks)) => {
                        return Ok(CongruenceData {
                            source: f.clone(),
                            pi,
                            pi_eval,
                            p,
                            target,
                            alpha_image: None,
                            eval_point: Some(a),
                            checks,
                        })
                    }
                    Err(e) => last = e,
                }
            }
            Err(last)
        }
        Field::Function(base) => {
            let bf = base.as_finite().unwrap();
            let p = bf.p;
            let max_k = if bf.l == 1 { EXTENSION_LIMIT } else { 1 };
            for k in 1..=max_k {
                let target = if k == 1 {
                    (**base).clone()
                } else {
                    Field::finite(p, k, policy.seed)?
                };
                let q = target.size().unwrap();
                for idx in 0..q {
                    let a = target.element_at(idx).unwrap();
                    if pi.polys.iter().any(|h| target.is_zero(&embed_poly(h, &target).eval(&a, &target))) {
                        continue;
                    }
                    let cd = CongruenceData {
                        source: f.clone(),
                        pi: pi.clone(),
                        pi_eval: Vec::new(),
                        p,
                        target: target.clone(),
                        alpha_image: None,
                        eval_point: Some(a),
                        checks: Checks {
                            odd: p != 2,
                            avoids_pi: true,
                            squarefree_minpolys: true,
                            unramified: None,
                            p_gt_n: p as usize > n,
                        },
                    };
                    let squarefree = minpolys.iter().all(|h| match cd.reduce_poly(h) {
                        Ok(hb) => {
                            hb.degree() == h.degree()
                                && hb.gcd(&hb.derivative(&target), &target).is_one(&target)
                        }
                        Err(_) => false,
                    });
                    if squarefree {
                        return Ok(cd);
                    }
                }
            }
            Err(Error::NoPrimeInRange(p))
        }
        Field::Finite(_) => Err(Error::UnsupportedField("finite fields need no reduction".into())),
    }
}

/// Recomputes `cd` for `g` with its recorded prime; `Ok` iff every check
/// passes and the data matches.
pub fn revalidate(g: &GroupSpec, cd: &CongruenceData) -> std::result::Result<(), String> {
    let policy = Policy { forced_prime: Some(cd.p), ..Policy::default() };
    match &g.field {
        Field::Function(_) => {
            // the recorded point must itself satisfy every condition
            let pi = denominator_set(g).map_err(|e| e.to_string())?;
            if pi != cd.pi {
                return Err("denominator set differs".into());
            }
            if cd.eval_point.is_none() {
                return Err("missing evaluation point".into());
            }
            let probe = cd;
            for m in &g.gens {
                let h = minimal_polynomial(m, &g.field);
                let hb = probe.reduce_poly(&h).map_err(|e| e.to_string())?;
                let t = &cd.target;
                if hb.degree() != h.degree() || !hb.gcd(&hb.derivative(t), t).is_one(t) {
                    return Err("reduced minimal polynomial is not squarefree".into());
                }
            }
            for x in g.gens.iter().chain(&g.invs) {
                probe.apply(x).map_err(|e| e.to_string())?;
            }
            if let Field::Function(b) = &g.field {
                if matches!(**b, Field::Rationals) {
                    let pi_eval = &cd.pi_eval;
                    let bp = BigInt::from(cd.p);
                    if cd.p == 2 || !arith::is_prime(cd.p) || pi_eval.iter().any(|z| z.is_multiple_of(&bp)) {
                        return Err("second-stage prime is invalid".into());
                    }
                }
            }
            Ok(())
        }
        _ => {
            let fresh = select_modulus(g, &policy).map_err(|e| e.to_string())?;
            if &fresh == cd {
                Ok(())
            } else {
                Err("recorded congruence data does not match a fresh computation".into())
            }
        }
    }
}

/// Cayley graph of a finite image group: BFS spanning tree, one relator per
/// non-tree edge.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub ngens: usize,
    pub elements: Vec<Matrix>,
    /// (parent vertex, generator) of the tree edge into each vertex.
    pub parent: Vec<Option<(usize, usize)>>,
    /// Non-tree edges (from, generator, to): relator t_from · g · t_to⁻¹.
    pub relators: Vec<(usize, usize, usize)>,
}

impl Presentation {
    pub fn image_order(&self) -> usize {
        self.elements.len()
    }

    pub fn word_of(&self, v: usize) -> Word {
        let mut w = Vec::new();
        let mut cur = v;
        while let Some((p, x)) = self.parent[cur] {
            w.push((x, 1));
            cur = p;
        }
        w.reverse();
        Word(w)
    }

    pub fn relator_word(&self, k: usize) -> Word {
        let (from, x, to) = self.relators[k];
        self.word_of(from).concat(&Word(vec![(x, 1)])).concat(&self.word_of(to).inverse())
    }
}

pub fn finite_image_presentation(
    gens: &[Matrix],
    dim: usize,
    f: &Field,
    cap: usize,
) -> Result<Presentation> {
    let id = Matrix::identity(dim, f);
    let mut index: HashMap<Matrix, usize> = HashMap::new();
    index.insert(id.clone(), 0);
    let mut elements = vec![id];
    let mut parent = vec![None];
    let mut relators = Vec::new();
    let mut head = 0;
    while head < elements.len() {
        for (x, g) in gens.iter().enumerate() {
            let w = elements[head].mul(g, f);
            match index.get(&w) {
                Some(&t) => relators.push((head, x, t)),
                None => {
                    if elements.len() >= cap {
                        return Err(Error::CapExceeded(cap));
                    }
                    index.insert(w.clone(), elements.len());
                    elements.push(w);
                    parent.push(Some((head, x)));
                }
            }
        }
        head += 1;
    }
    Ok(Presentation { ngens: gens.len(), elements, parent, relators })
}

/// Relator values w_j(g_i) over the source generators, computed through
/// transversal prefix products. Index k corresponds to `pres.relators[k]`.
pub fn kernel_normal_generators(
    gens: &[Matrix],
    invs: &[Matrix],
    dim: usize,
    f: &Field,
    pres: &Presentation,
) -> Vec<Matrix> {
    let n = pres.elements.len();
    let mut t: Vec<Matrix> = Vec::with_capacity(n);
    let mut tinv: Vec<Matrix> = Vec::with_capacity(n);
    for v in 0..n {
        match pres.parent[v] {
            None => {
                t.push(Matrix::identity(dim, f));
                tinv.push(Matrix::identity(dim, f));
            }
            Some((p, x)) => {
                let a = t[p].mul(&gens[x], f);
                let b = invs[x].mul(&tinv[p], f);
                t.push(a);
                tinv.push(b);
            }
        }
    }
    pres.relators
        .iter()
        .map(|&(from, x, to)| t[from].mul(&gens[x], f).mul(&tinv[to], f))
        .collect()
}

/// First (kernel generator, group generator) pair that fails to commute.
pub fn kernel_is_central(gens: &[Matrix], kernel: &[Matrix], f: &Field) -> Option<(usize, usize)> {
    for (k, w) in kernel.iter().enumerate() {
        if w.is_identity(f) {
            continue;
        }
        for (i, g) in gens.iter().enumerate() {
            if !crate::linalg::commutes(w, g, f) {
                return Some((k, i));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::rat;
    use num_traits::Zero;

    fn q() -> Field {
        Field::Rationals
    }

    fn sqrt2() -> Field {
        Field::number(vec![BigInt::from(-2), BigInt::zero(), BigInt::one()]).unwrap()
    }

    #[test]
    fn denominators() {
        let f = q();
        let g = Matrix::diag(&[Elem::Q(rat(1, 2)), f.from_i64(3)], &f);
        let gs = GroupSpec::new(f.clone(), 2, vec![g]).unwrap();
        let pi = denominator_set(&gs).unwrap();
        assert_eq!(pi.ints, vec![BigInt::from(2), BigInt::from(3)]);
        let ints = GroupSpec::new(f.clone(), 2, vec![Matrix::from_ints(&[&[1, 1], &[0, 1]], &f)]).unwrap();
        assert!(denominator_set(&ints).unwrap().ints.is_empty());
        let k = sqrt2();
        let e = Elem::Nf(vec![rat(1, 3), rat(1, 3)]);
        let gk = GroupSpec::new(k.clone(), 1, vec![Matrix::diag(&[e], &k)]).unwrap();
        assert!(denominator_set(&gk).unwrap().ints.contains(&BigInt::from(3)));
    }

    #[test]
    fn modulus_over_q() {
        let f = q();
        // 1/2 ≡ 3 and 1/3 ≡ 2 mod 5 stay distinct, so 5 qualifies
        let g = Matrix::diag(&[Elem::Q(rat(1, 2)), Elem::Q(rat(1, 3))], &f);
        let gs = GroupSpec::new(f.clone(), 2, vec![g]).unwrap();
        assert_eq!(denominator_set(&gs).unwrap().ints, vec![BigInt::from(2), BigInt::from(3)]);
        let cd = select_modulus(&gs, &Policy::default()).unwrap();
        assert_eq!(cd.p, 5);
        let img = cd.apply(&Matrix::diag(&[Elem::Q(rat(1, 2)), f.one()], &f)).unwrap();
        assert_eq!(img, Matrix::from_ints(&[&[3, 0], &[0, 1]], &cd.target));
        assert!(cd.apply(&Matrix::identity(2, &f)).unwrap().is_identity(&cd.target));
        assert_eq!(revalidate(&gs, &cd), Ok(()));
    }

    #[test]
    fn modulus_over_sqrt2() {
        let k = sqrt2();
        let alpha = k.generator().unwrap();
        let g = GroupSpec::new(k.clone(), 2, vec![Matrix::diag(&[alpha.clone(), k.one()], &k)]).unwrap();
        let forced = |p| Policy { forced_prime: Some(p), ..Policy::default() };
        let cd7 = select_modulus(&g, &forced(7)).unwrap();
        assert_eq!(cd7.alpha_image, Some(Elem::Fp(3)));
        assert_eq!((3 * 3) % 7, 2);
        assert_eq!(cd7.apply(&g.gens[0]).unwrap(), Matrix::from_ints(&[&[3, 0], &[0, 1]], &cd7.target));
        let cd5 = select_modulus(&g, &forced(5)).unwrap();
        assert_eq!(cd5.target.size(), Some(25));
        // disc(X^2 - 2) = 8, so p = 3 is the first admissible prime > n
        let auto = select_modulus(&g, &Policy::default()).unwrap();
        assert_eq!(auto.p, 3);
        assert!(matches!(select_modulus(&g, &forced(2)), Err(Error::InvalidModulus(_))));
    }

    #[test]
    fn modulus_over_function_fields() {
        let fx = Field::function(q()).unwrap();
        let x = fx.generator().unwrap();
        let g = GroupSpec::new(fx.clone(), 1, vec![Matrix::diag(std::slice::from_ref(&x), &fx)]).unwrap();
        let cd = select_modulus(&g, &Policy::default()).unwrap();
        // X vanishes at 0 (X^-1 has denominator X), so the point is 1
        assert_eq!(cd.eval_point, Some(q().one()));
        assert_eq!(revalidate(&g, &cd), Ok(()));
        let f3x = Field::function(Field::prime(3).unwrap()).unwrap();
        let y = f3x.generator().unwrap();
        let h = GroupSpec::new(f3x.clone(), 1, vec![Matrix::diag(&[y], &f3x)]).unwrap();
        let cd = select_modulus(&h, &Policy::default()).unwrap();
        assert_eq!(cd.eval_point, Some(Elem::Fp(1)));
        assert_eq!(cd.apply(&h.gens[0]).unwrap(), Matrix::from_ints(&[&[1]], &cd.target));
    }

    #[test]
    fn presentations() {
        let f5 = Field::prime(5).unwrap();
        let triv = finite_image_presentation(&[Matrix::identity(2, &f5)], 2, &f5, 100).unwrap();
        assert_eq!(triv.image_order(), 1);
        assert_eq!(triv.relators.len(), 1);
        let none = finite_image_presentation(&[], 2, &f5, 100).unwrap();
        assert!(none.relators.is_empty());
        let two = Matrix::from_ints(&[&[2]], &f5);
        let pres = finite_image_presentation(std::slice::from_ref(&two), 1, &f5, 100).unwrap();
        assert_eq!(pres.image_order(), 4);
        assert_eq!(pres.relators.len(), 1);
        assert_eq!(pres.relator_word(0), Word(vec![(0, 1); 4]));
        let r = Matrix::from_ints(&[&[0, -1], &[1, 0]], &f5);
        let s = Matrix::from_ints(&[&[1, 0], &[0, -1]], &f5);
        let gens = [r, s];
        let invs: Vec<Matrix> = gens.iter().map(|g| g.inverse(&f5).unwrap()).collect();
        let d8 = finite_image_presentation(&gens, 2, &f5, 100).unwrap();
        assert_eq!(d8.image_order(), 8);
        assert!(d8.relators.len() >= 2);
        for k in 0..d8.relators.len() {
            assert!(d8.relator_word(k).eval(&gens, &invs, 2, &f5).is_identity(&f5));
        }
        assert_eq!(
            finite_image_presentation(&[two], 1, &f5, 3).unwrap_err(),
            Error::CapExceeded(3)
        );
    }

    #[test]
    fn kernel_generators() {
        let f = q();
        let g = GroupSpec::new(f.clone(), 1, vec![Matrix::from_ints(&[&[2]], &f)]).unwrap();
        let cd = select_modulus(&g, &Policy { forced_prime: Some(5), ..Policy::default() }).unwrap();
        let img: Vec<Matrix> = g.gens.iter().map(|m| cd.apply(m).unwrap()).collect();
        let pres = finite_image_presentation(&img, 1, &cd.target, 100).unwrap();
        let ker = kernel_normal_generators(&g.gens, &g.invs, 1, &f, &pres);
        assert_eq!(ker, vec![Matrix::from_ints(&[&[16]], &f)]);
        let empty = finite_image_presentation(&[], 1, &cd.target, 10).unwrap();
        assert!(kernel_normal_generators(&[], &[], 1, &f, &empty).is_empty());
    }

    #[test]
    fn kernel_centrality() {
        let f = q();
        let g = GroupSpec::new(
            f.clone(),
            2,
            vec![Matrix::diag(&[f.from_i64(3), f.one()], &f), Matrix::from_ints(&[&[0, 1], &[1, 0]], &f)],
        )
        .unwrap();
        let cd = select_modulus(&g, &Policy { forced_prime: Some(5), ..Policy::default() }).unwrap();
        let img: Vec<Matrix> = g.gens.iter().map(|m| cd.apply(m).unwrap()).collect();
        let pres = finite_image_presentation(&img, 2, &cd.target, 1000).unwrap();
        let ker = kernel_normal_generators(&g.gens, &g.invs, 2, &f, &pres);
        let d81 = Matrix::diag(&[f.from_i64(81), f.one()], &f);
        assert!(ker.contains(&d81));
        let (k, i) = kernel_is_central(&g.gens, &ker, &f).unwrap();
        assert!(!crate::linalg::commutes(&ker[k], &g.gens[i], &f));
        let ab = [Matrix::diag(&[f.from_i64(2), f.one()], &f)];
        assert_eq!(kernel_is_central(&ab, &[Matrix::diag(&[f.from_i64(16), f.one()], &f)], &f), None);
    }
}
