//! Polynomial factorization over GF(q) (squarefree split, distinct-degree,
//! Cantor–Zassenhaus) and over Q (Zassenhaus: modular factorization, Hensel
//! lifting, subset recombination).

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::field::{Elem, Field};
use super::poly::{biguint_pow, Poly};
use crate::arith;
use crate::error::{Error, Result};

const FACTOR_SEED: u64 = 0x6e69_6c6d_6174;

/// Squarefree decomposition: coprime squarefree monic pieces with multiplicities.
pub fn squarefree_decomposition(p: &Poly, f: &Field) -> Result<Vec<(Poly, u32)>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let p = p.monic(f);
    let mut out = Vec::new();
    if p.degree() == Some(0) {
        return Ok(out);
    }
    let mut c = p.gcd(&p.derivative(f), f);
    let mut w = p.div_exact(&c, f);
    let mut i = 1;
    while w.degree() > Some(0) {
        let y = w.gcd(&c, f);
        let fac = w.div_exact(&y, f);
        if fac.degree() > Some(0) {
            out.push((fac, i));
        }
        w = y;
        c = c.div_exact(&w, f);
        i += 1;
    }
    if c.degree() > Some(0) {
        let char_p = f.characteristic();
        if char_p == 0 {
            unreachable!("characteristic zero leaves no p-th power part");
        }
        let pu = char_p as usize;
        let mut root = Vec::new();
        for (k, e) in c.coeffs().iter().enumerate() {
            if k % pu == 0 {
                root.push(
                    f.pth_root(e)
                        .ok_or_else(|| Error::ImperfectField(f.name()))?,
                );
            } else if !f.is_zero(e) {
                return Err(Error::ImperfectField(f.name()));
            }
        }
        for (g, m) in squarefree_decomposition(&Poly::new(root), f)? {
            out.push((g, m * char_p as u32));
        }
    }
    Ok(out)
}

/// Irreducible factorization with multiplicities, factors monic and sorted by
/// degree then coefficients.
pub fn factor(p: &Poly, f: &Field) -> Result<Vec<(Poly, u32)>> {
    match f {
        Field::Finite(_) | Field::Rationals => {}
        _ => return Err(Error::UnsupportedField(f.name())),
    }
    let mut acc: Vec<(Poly, u32)> = Vec::new();
    for (piece, m) in squarefree_decomposition(p, f)? {
        let irreducibles = match f {
            Field::Finite(_) => factor_squarefree_finite(&piece, f),
            _ => factor_squarefree_rational(&piece),
        };
        for g in irreducibles {
            if let Some(slot) = acc.iter_mut().find(|(h, _)| *h == g) {
                slot.1 += m;
            } else {
                acc.push((g, m));
            }
        }
    }
    acc.sort();
    acc.sort_by_key(|(g, _)| g.degree());
    Ok(acc)
}

fn field_size(f: &Field) -> u128 {
    f.size().expect("finite field")
}

/// Distinct-degree factorization of a monic squarefree polynomial.
fn distinct_degree(p: &Poly, f: &Field) -> Vec<(Poly, usize)> {
    let q = BigUint::from(field_size(f));
    let x = Poly::x(f);
    let mut rest = p.clone();
    let mut h = x.clone();
    let mut out = Vec::new();
    let mut d = 0;
    while let Some(deg) = rest.degree() {
        if deg < 2 * (d + 1) {
            break;
        }
        d += 1;
        h = h.pow_mod(&q, &rest, f);
        let g = h.sub(&x, f).gcd(&rest, f);
        if g.degree() > Some(0) {
            rest = rest.div_exact(&g, f);
            h = h.rem(&rest, f);
            out.push((g, d));
        }
    }
    if let Some(deg) = rest.degree() {
        if deg > 0 {
            out.push((rest, deg));
        }
    }
    out
}

fn equal_degree(p: &Poly, d: usize, f: &Field, rng: &mut ChaCha8Rng) -> Vec<Poly> {
    let n = p.degree().unwrap();
    if n == d {
        return vec![p.monic(f)];
    }
    let q = field_size(f);
    let char_p = f.characteristic();
    loop {
        let a = Poly::new((0..n).map(|_| f.random(rng)).collect());
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let b = if char_p == 2 {
            // trace to GF(2)
            let k = f.as_finite().unwrap().l * d;
            let mut t = a.rem(p, f);
            let mut cur = t.clone();
            for _ in 1..k {
                cur = cur.mul(&cur, f).rem(p, f);
                t = t.add(&cur, f);
            }
            t
        } else {
            let e = (biguint_pow(q, d) - BigUint::one()) / BigUint::from(2u32);
            a.pow_mod(&e, p, f).sub(&Poly::one(f), f)
        };
        let g = b.gcd(p, f);
        if let Some(gd) = g.degree() {
            if gd > 0 && gd < n {
                let mut out = equal_degree(&g, d, f, rng);
                out.extend(equal_degree(&p.div_exact(&g, f), d, f, rng));
                return out;
            }
        }
    }
}

fn factor_squarefree_finite(p: &Poly, f: &Field) -> Vec<Poly> {
    let p = p.monic(f);
    let mut rng = ChaCha8Rng::seed_from_u64(FACTOR_SEED);
    let mut out = Vec::new();
    for (g, d) in distinct_degree(&p, f) {
        out.extend(equal_degree(&g, d, f, &mut rng));
    }
    out.sort();
    out
}

pub fn is_irreducible_finite(p: &Poly, f: &Field) -> bool {
    let Some(n) = p.degree() else { return false };
    if n == 0 {
        return false;
    }
    let m = p.monic(f);
    if !m.gcd(&m.derivative(f), f).is_one(f) {
        return false;
    }
    let dd = distinct_degree(&m, f);
    dd.len() == 1 && dd[0].1 == n
}

/// Monic irreducible polynomial of degree `l` over GF(p), by seeded random search.
pub fn find_irreducible(p: u64, l: usize, seed: u64) -> Vec<u64> {
    let fp = Field::prime(p).expect("prime");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let mut c: Vec<Elem> = (0..l).map(|_| fp.random(&mut rng)).collect();
        c.push(fp.one());
        let cand = Poly::new(c);
        if is_irreducible_finite(&cand, &fp) {
            return cand.coeffs().iter().map(|e| e.as_residue().unwrap()).collect();
        }
    }
}

// ---------- integer polynomials ----------

type ZPoly = Vec<BigInt>;

fn ztrim(mut a: ZPoly) -> ZPoly {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

fn zmul(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    ztrim(out)
}

fn zsub(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let n = a.len().max(b.len());
    let zero = BigInt::zero();
    ztrim(
        (0..n)
            .map(|i| a.get(i).unwrap_or(&zero) - b.get(i).unwrap_or(&zero))
            .collect(),
    )
}

fn zadd_scaled(a: &[BigInt], b: &[BigInt], s: &BigInt) -> ZPoly {
    let n = a.len().max(b.len());
    let zero = BigInt::zero();
    ztrim(
        (0..n)
            .map(|i| a.get(i).unwrap_or(&zero) + b.get(i).unwrap_or(&zero) * s)
            .collect(),
    )
}

fn zmod_sym(a: &[BigInt], m: &BigInt) -> ZPoly {
    let half = m / 2;
    ztrim(
        a.iter()
            .map(|c| {
                let r = c.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

fn zmod_pos(a: &[BigInt], m: &BigInt) -> ZPoly {
    ztrim(a.iter().map(|c| c.mod_floor(m)).collect())
}

fn to_fp(a: &[BigInt], fp: &Field) -> Poly {
    Poly::new(a.iter().map(|c| fp.from_bigint(c)).collect())
}

fn from_fp(a: &Poly) -> ZPoly {
    a.coeffs()
        .iter()
        .map(|e| BigInt::from(e.as_residue().expect("prime field")))
        .collect()
}

fn content(a: &[BigInt]) -> BigInt {
    a.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

fn primitive(a: &[BigInt]) -> ZPoly {
    let c = content(a);
    if c.is_zero() {
        return Vec::new();
    }
    let sign = if a.last().unwrap().is_negative() { -BigInt::one() } else { BigInt::one() };
    a.iter().map(|x| x / &c * &sign).collect()
}

fn rational_to_primitive(p: &Poly) -> ZPoly {
    let den = p.coeffs().iter().fold(BigInt::one(), |acc, e| {
        acc.lcm(e.as_rational().expect("rational coefficients").denom())
    });
    let ints: ZPoly = p
        .coeffs()
        .iter()
        .map(|e| {
            let q = e.as_rational().unwrap();
            q.numer() * (&den / q.denom())
        })
        .collect();
    primitive(&ints)
}

fn z_to_monic_rational(a: &[BigInt]) -> Poly {
    let lc = a.last().unwrap().clone();
    Poly::new(
        a.iter()
            .map(|c| Elem::Q(BigRational::new(c.clone(), lc.clone())))
            .collect(),
    )
}

/// Exact division over Z, `None` when `d` does not divide `a`.
fn zdiv(a: &[BigInt], d: &[BigInt]) -> Option<ZPoly> {
    let q = Field::Rationals;
    let pa = Poly::new(a.iter().map(|c| Elem::Q(BigRational::from(c.clone()))).collect());
    let pd = Poly::new(d.iter().map(|c| Elem::Q(BigRational::from(c.clone()))).collect());
    let (quot, r) = pa.divrem(&pd, &q);
    if !r.is_zero() {
        return None;
    }
    let mut out = Vec::new();
    for e in quot.coeffs() {
        let v = e.as_rational().unwrap();
        if !v.is_integer() {
            return None;
        }
        out.push(v.numer().clone());
    }
    Some(out)
}

fn modinv_big(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.mod_floor(m).extended_gcd(m);
    debug_assert!(e.gcd.is_one());
    e.x.mod_floor(m)
}

fn lift_two(f: &[BigInt], g0: &Poly, h0: &Poly, p: u64, k: u32, fp: &Field) -> (ZPoly, ZPoly) {
    let (_, s, _t) = g0.ext_gcd(h0, fp);
    let mut g = from_fp(g0);
    let mut h = from_fp(h0);
    let bp = BigInt::from(p);
    let mut m = bp.clone();
    for _ in 1..k {
        let diff = zsub(f, &zmul(&g, &h));
        let e: ZPoly = diff.iter().map(|c| c / &m).collect();
        let ep = to_fp(&e, fp);
        let sigma = s.mul(&ep, fp).rem(h0, fp);
        let tau = ep.sub(&sigma.mul(g0, fp), fp).div_exact(h0, fp);
        h = zadd_scaled(&h, &from_fp(&sigma), &m);
        g = zadd_scaled(&g, &from_fp(&tau), &m);
        m *= &bp;
    }
    (zmod_pos(&g, &m), zmod_pos(&h, &m))
}

fn hensel(f: &[BigInt], factors: &[Poly], p: u64, k: u32, fp: &Field) -> Vec<ZPoly> {
    let pk = BigInt::from(p).pow(k);
    if factors.len() == 1 {
        let inv = modinv_big(f.last().unwrap(), &pk);
        let monic: ZPoly = f.iter().map(|c| c * &inv).collect();
        return vec![zmod_pos(&monic, &pk)];
    }
    let mid = factors.len() / 2;
    let lcf = fp.from_bigint(f.last().unwrap());
    let g0 = factors[..mid]
        .iter()
        .fold(Poly::constant(lcf, fp), |acc, x| acc.mul(x, fp));
    let h0 = factors[mid..].iter().fold(Poly::one(fp), |acc, x| acc.mul(x, fp));
    let (g, h) = lift_two(f, &g0, &h0, p, k, fp);
    let mut out = hensel(&g, &factors[..mid], p, k, fp);
    out.extend(hensel(&h, &factors[mid..], p, k, fp));
    out
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

fn zassenhaus(f: &[BigInt]) -> Vec<ZPoly> {
    let d = f.len() - 1;
    if d <= 1 {
        return vec![f.to_vec()];
    }
    let lc = f.last().unwrap().clone();
    let mut p = 3u64;
    let (fp, modular) = loop {
        if !(&lc % BigInt::from(p)).is_zero() {
            let fp = Field::prime(p).unwrap();
            let fb = to_fp(f, &fp);
            if fb.degree() == Some(d) && fb.gcd(&fb.derivative(&fp), &fp).is_one(&fp) {
                break (fp.clone(), factor_squarefree_finite(&fb, &fp));
            }
        }
        p = arith::next_prime(p);
    };
    if modular.len() == 1 {
        return vec![f.to_vec()];
    }
    let maxc = f.iter().map(|c| c.abs()).max().unwrap();
    let bound = BigInt::from(2u32).pow(d as u32) * BigInt::from(d + 1) * maxc * lc.abs() * 2;
    let mut k = 1u32;
    let mut pk = BigInt::from(p);
    while pk <= bound {
        pk *= p;
        k += 1;
    }
    let mut lifted = hensel(f, &modular, p, k, &fp);
    let mut rest = f.to_vec();
    let mut found = Vec::new();
    let mut s = 1;
    'outer: while 2 * s <= lifted.len() {
        for subset in combinations(lifted.len(), s) {
            let lcr = rest.last().unwrap().clone();
            let mut g = vec![lcr];
            for &i in &subset {
                g = zmod_sym(&zmul(&g, &lifted[i]), &pk);
            }
            let g = primitive(&g);
            if let Some(q) = zdiv(&rest, &g) {
                found.push(g);
                rest = q;
                let keep: Vec<ZPoly> = lifted
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| !subset.contains(i))
                    .map(|(_, v)| v.clone())
                    .collect();
                lifted = keep;
                continue 'outer;
            }
        }
        s += 1;
    }
    found.push(primitive(&rest));
    found
}

fn factor_squarefree_rational(p: &Poly) -> Vec<Poly> {
    let z = rational_to_primitive(p);
    let mut out: Vec<Poly> = zassenhaus(&z).iter().map(|g| z_to_monic_rational(g)).collect();
    out.sort();
    out
}

/// Resultant over a field via the Euclidean recurrence.
pub fn resultant(a: &Poly, b: &Poly, f: &Field) -> Elem {
    let (Some(da), Some(db)) = (a.degree(), b.degree()) else {
        return f.zero();
    };
    if db == 0 {
        return f.pow(b.lc().unwrap(), da as u128);
    }
    if da < db {
        let r = resultant(b, a, f);
        return if (da * db) % 2 == 1 { f.neg(&r) } else { r };
    }
    let r = a.rem(b, f);
    let Some(dr) = r.degree() else { return f.zero() };
    let sub = resultant(b, &r, f);
    let scale = f.pow(b.lc().unwrap(), (da - dr) as u128);
    let v = f.mul(&scale, &sub);
    if (da * db) % 2 == 1 {
        f.neg(&v)
    } else {
        v
    }
}

/// Discriminant of a monic integer polynomial, as an integer.
pub fn discriminant_int(minpoly: &[BigInt]) -> BigInt {
    let q = Field::Rationals;
    let p = Poly::new(minpoly.iter().map(|c| Elem::Q(BigRational::from(c.clone()))).collect());
    let r = resultant(&p, &p.derivative(&q), &q);
    let d = p.degree().unwrap();
    let v = r.as_rational().unwrap().to_integer();
    if (d * (d - 1) / 2) % 2 == 1 {
        -v
    } else {
        v
    }
}

/// Cyclotomic polynomial Φ_k over Q.
pub fn cyclotomic(k: u64) -> Poly {
    fn rec(k: u64, memo: &mut HashMap<u64, Poly>) -> Poly {
        if let Some(p) = memo.get(&k) {
            return p.clone();
        }
        let q = Field::Rationals;
        let mut xk = vec![0i64; k as usize + 1];
        xk[0] = -1;
        xk[k as usize] = 1;
        let mut p = Poly::from_ints(&xk, &q);
        for d in 1..k {
            if k.is_multiple_of(d) {
                p = p.div_exact(&rec(d, memo), &q);
            }
        }
        memo.insert(k, p.clone());
        p
    }
    rec(k, &mut HashMap::new())
}

/// If every irreducible factor of `p` (over Q) is cyclotomic, the lcm of their
/// indices; otherwise `None` (the roots are not all roots of unity).
pub fn cyclotomic_finite_order(p: &Poly, _n: usize) -> Result<Option<u64>> {
    let q = Field::Rationals;
    let mut order = 1u64;
    for (g, _) in factor(p, &q)? {
        let e = g.degree().unwrap() as u64;
        let limit = (2 * e * e).max(6);
        let k = (1..=limit).find(|&k| arith::euler_phi(k) == e && cyclotomic(k) == g);
        match k {
            Some(k) => order = arith::lcm_u64(order, k),
            None => return Ok(None),
        }
    }
    Ok(Some(order))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn expand(fac: &[(Poly, u32)], f: &Field) -> Poly {
        fac.iter().fold(Poly::one(f), |acc, (g, m)| acc.mul(&g.pow(*m, f), f))
    }

    #[test]
    fn x2_minus_2_mod_7_splits() {
        let f7 = Field::prime(7).unwrap();
        let fac = factor(&Poly::from_ints(&[-2, 0, 1], &f7), &f7).unwrap();
        // brute force roots mod 7
        let roots: Vec<i64> = (0..7).filter(|r| (r * r - 2i64).rem_euclid(7) == 0).collect();
        assert_eq!(roots, vec![3, 4]);
        assert_eq!(
            fac,
            vec![
                (Poly::from_ints(&[-4, 1], &f7), 1),
                (Poly::from_ints(&[-3, 1], &f7), 1)
            ]
        );
    }

    #[test]
    fn x2_minus_2_mod_5_irreducible() {
        let f5 = Field::prime(5).unwrap();
        assert!((0..5).all(|r: i64| (r * r - 2).rem_euclid(5) != 0));
        let fac = factor(&Poly::from_ints(&[-2, 0, 1], &f5), &f5).unwrap();
        assert_eq!(fac.len(), 1);
        assert!(is_irreducible_finite(&Poly::from_ints(&[-2, 0, 1], &f5), &f5));
    }

    #[test]
    fn difference_of_squares_over_q() {
        let q = Field::Rationals;
        let fac = factor(&Poly::from_ints(&[-1, 0, 1], &q), &q).unwrap();
        assert_eq!(
            fac,
            vec![(Poly::from_ints(&[-1, 1], &q), 1), (Poly::from_ints(&[1, 1], &q), 1)]
        );
    }

    #[test]
    fn swinnerton_dyer_like_recombination() {
        // x^4 - 10x^2 + 1 is irreducible over Q but splits mod every prime
        let q = Field::Rationals;
        let f = Poly::from_ints(&[1, 0, -10, 0, 1], &q);
        assert_eq!(factor(&f, &q).unwrap().len(), 1);
        // (2x^2 - 3)(3x^3 + x - 5)
        let g = Poly::from_ints(&[-3, 0, 2], &q).mul(&Poly::from_ints(&[-5, 1, 0, 3], &q), &q);
        let fac = factor(&g, &q).unwrap();
        assert_eq!(fac.len(), 2);
        assert_eq!(expand(&fac, &q).scale(&Elem::Q(BigRational::from(BigInt::from(6))), &q), g);
    }

    #[test]
    fn factor_over_extension_field() {
        let f9 = Field::finite(3, 2, 1).unwrap();
        // x^9 - x splits into all linear factors over GF(9)
        let mut c = vec![0i64; 10];
        c[1] = -1;
        c[9] = 1;
        let fac = factor(&Poly::from_ints(&c, &f9), &f9).unwrap();
        assert_eq!(fac.len(), 9);
        assert!(fac.iter().all(|(g, m)| g.degree() == Some(1) && *m == 1));
    }

    #[test]
    fn cyclotomic_orders() {
        let q = Field::Rationals;
        assert_eq!(cyclotomic_finite_order(&Poly::from_ints(&[-1, 1], &q), 1).unwrap(), Some(1));
        assert_eq!(cyclotomic_finite_order(&Poly::from_ints(&[1, 0, 1], &q), 2).unwrap(), Some(4));
        assert_eq!(cyclotomic_finite_order(&Poly::from_ints(&[-2, 1], &q), 1).unwrap(), None);
        assert_eq!(cyclotomic(6), Poly::from_ints(&[1, -1, 1], &q));
    }

    #[test]
    fn discriminants() {
        assert_eq!(discriminant_int(&[BigInt::from(-2), BigInt::zero(), BigInt::one()]), BigInt::from(8));
    }

    fn poly_strategy(p: i64, max_deg: usize) -> impl Strategy<Value = Vec<i64>> {
        prop::collection::vec(-p..p, 1..=max_deg + 1)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(500))]
        #[test]
        fn finite_factor_reexpands(c in poly_strategy(7, 8), mut lead in 1i64..7) {
            let f7 = Field::prime(7).unwrap();
            let mut c = c;
            lead = lead.rem_euclid(7).max(1);
            c.push(lead);
            let p = Poly::from_ints(&c, &f7);
            let fac = factor(&p, &f7).unwrap();
            prop_assert_eq!(expand(&fac, &f7).scale(p.lc().unwrap(), &f7), p);
            for (g, _) in &fac {
                prop_assert!(is_irreducible_finite(g, &f7));
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(500))]
        #[test]
        fn rational_factor_reexpands(c in poly_strategy(6, 6), lead in 1i64..4) {
            let q = Field::Rationals;
            let mut c = c;
            c.push(lead);
            let p = Poly::from_ints(&c, &q);
            let fac = factor(&p, &q).unwrap();
            prop_assert_eq!(expand(&fac, &q).scale(p.lc().unwrap(), &q), p);
        }
    }
}
