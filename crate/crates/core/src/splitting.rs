//! Jordan decomposition, unipotency certificates, and the split of a group
//! into semisimple and unipotent generator parts.

use crate::arith;
use crate::error::{Error, Result};
use num_bigint::BigUint;

use crate::fields::{cyclotomic_finite_order, factor, squarefree_part, Elem, Field, Poly};
use crate::group::GroupSpec;
use crate::linalg::{
    fixed_space, lift_from_quotient, minimal_polynomial, quotient_action, Matrix, Subspace,
};

/// g = s·u with s semisimple, u unipotent, su = us.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JordanPair {
    pub s: Matrix,
    pub u: Matrix,
}

const NEWTON_LIMIT: usize = 64;

pub fn jordan(g: &Matrix, f: &Field) -> Result<JordanPair> {
    let m = minimal_polynomial(g, f);
    let fstar = squarefree_part(&m, f).ok_or_else(|| Error::ImperfectField(f.name()))?;
    let d = fstar.derivative(f);
    if !fstar.gcd(&d, f).is_one(f) {
        return Err(Error::ImperfectField(f.name()));
    }
    let mut x = g.clone();
    for _ in 0..NEWTON_LIMIT {
        let fx = x.eval_poly(&fstar, f);
        if fx.is_zero(f) {
            let u = x.inverse(f)?.mul(g, f);
            return Ok(JordanPair { s: x, u });
        }
        // f*' is invertible at x since f* is separable
        let step = fx.mul(&x.eval_poly(&d, f).inverse(f)?, f);
        x = x.sub(&step, f);
    }
    unreachable!("Newton iteration converges quadratically on nilpotent error terms")
}

pub fn is_unipotent(g: &Matrix, f: &Field) -> bool {
    let n = g.rows();
    g.sub(&Matrix::identity(n, f), f).pow(n as u128, f).is_zero(f)
}

pub fn is_semisimple(g: &Matrix, f: &Field) -> Result<bool> {
    let m = minimal_polynomial(g, f);
    let s = squarefree_part(&m, f).ok_or_else(|| Error::ImperfectField(f.name()))?;
    Ok(s.degree() == m.degree())
}

/// Descending flag V = V_0 > … > V_l = 0 with trivial action on each factor,
/// and T with T·g·T⁻¹ upper unitriangular.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnipotentCert {
    pub flag: Vec<Subspace>,
    pub t: Matrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Unipotency {
    Unipotent(UnipotentCert),
    /// `w` is invariant and the induced action on V/w has no fixed vector.
    NotUnipotent { w: Subspace },
}

pub fn is_unipotent_group(gens: &[Matrix], n: usize, f: &Field) -> Result<Unipotency> {
    if let Some(i) = gens.iter().position(|g| !is_unipotent(g, f)) {
        return Err(Error::NotUnipotentGenerator(i));
    }
    let mut w = Subspace::zero(n);
    let mut ascending = vec![w.clone()];
    let mut basis: Vec<Vec<_>> = Vec::new();
    while w.dim() < n {
        let q = quotient_action(gens, &w, f)?;
        let fix = fixed_space(&q, n - w.dim(), f);
        if fix.dim() == 0 {
            return Ok(Unipotency::NotUnipotent { w });
        }
        let lifts: Vec<_> = fix.basis().iter().map(|v| lift_from_quotient(v, &w, f)).collect();
        let mut span = w.basis().to_vec();
        span.extend(lifts.iter().cloned());
        basis.extend(lifts);
        w = Subspace::span(span, n, f);
        ascending.push(w.clone());
    }
    ascending.reverse();
    let b = if n == 0 {
        Matrix::identity(0, f)
    } else {
        Matrix::from_rows(basis)?.transpose()
    };
    Ok(Unipotency::Unipotent(UnipotentCert { flag: ascending, t: b.inverse(f)? }))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitResult {
    pub pairs: Vec<JordanPair>,
    pub gens_s: Vec<Matrix>,
    pub gens_u: Vec<Matrix>,
    pub cert_u: UnipotentCert,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Split {
    Ok(SplitResult),
    NonUnipotent { pairs: Vec<JordanPair>, w: Subspace },
    /// [u_i, s_j] ≠ 1
    NonCommuting { pairs: Vec<JordanPair>, u: usize, s: usize },
}

pub fn reduction_split(g: &GroupSpec) -> Result<Split> {
    let f = &g.field;
    let pairs = g.gens.iter().map(|x| jordan(x, f)).collect::<Result<Vec<_>>>()?;
    let gens_u: Vec<Matrix> = pairs.iter().map(|p| p.u.clone()).collect();
    let cert_u = match is_unipotent_group(&gens_u, g.dim, f)? {
        Unipotency::Unipotent(c) => c,
        Unipotency::NotUnipotent { w } => return Ok(Split::NonUnipotent { pairs, w }),
    };
    for (i, pu) in pairs.iter().enumerate() {
        if pu.u.is_identity(f) {
            continue;
        }
        for (j, ps) in pairs.iter().enumerate() {
            if !crate::linalg::commutes(&pu.u, &ps.s, f) {
                return Ok(Split::NonCommuting { pairs, u: i, s: j });
            }
        }
    }
    let gens_s = pairs.iter().map(|p| p.s.clone()).collect();
    Ok(Split::Ok(SplitResult { pairs, gens_s, gens_u, cert_u }))
}

/// Flag of G_u, whose factors are completely reducible for nilpotent G.
pub fn cr_series(g: &GroupSpec) -> Result<Vec<Subspace>> {
    match reduction_split(g)? {
        Split::Ok(r) => Ok(r.cert_u.flag),
        _ => Err(Error::Precondition("group is not nilpotent".into())),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Order {
    Finite(u128),
    Infinite,
}

impl Order {
    pub fn finite(self) -> Option<u128> {
        match self {
            Order::Finite(k) => Some(k),
            Order::Infinite => None,
        }
    }
}

/// A number-field matrix as a rational matrix on the basis 1, α, …, α^{m−1}
/// of each coordinate.
pub fn restrict_scalars(g: &Matrix, f: &Field) -> Option<Matrix> {
    let Field::Number(nf) = f else { return None };
    let m = nf.degree();
    let q = Field::Rationals;
    let alpha = f.generator()?;
    let powers: Vec<Elem> = (0..m as u128).map(|j| f.pow(&alpha, j)).collect();
    let n = g.rows();
    let mut rows = vec![vec![q.zero(); n * m]; n * m];
    for i in 0..n {
        for k in 0..n {
            for (j, pw) in powers.iter().enumerate() {
                let Elem::Nf(c) = f.mul(g.get(i, k), pw) else { return None };
                for (r, x) in c.into_iter().enumerate() {
                    rows[i * m + r][k * m + j] = Elem::Q(x);
                }
            }
        }
    }
    Matrix::from_rows(rows).ok()
}

fn companion(m: &Poly, f: &Field) -> Matrix {
    let d = m.degree().unwrap_or(0);
    let mut c = Matrix::zeros(d, d, f);
    for i in 1..d {
        c.set(i, i - 1, f.one());
    }
    for i in 0..d {
        c.set(i, d - 1, f.neg(&m.coeff(i, f)));
    }
    c
}

/// Order of g, computed as the multiplicative order of T in F[T]/(minpoly g).
pub fn finite_order(g: &Matrix, f: &Field) -> Result<Order> {
    let m = minimal_polynomial(g, f);
    if let Field::Function(base) = f {
        // eigenvalues of finite-order elements are algebraic over the base
        let Some(mb) = m.try_map(|c| match c {
            Elem::Rf(r) if r.den.is_one(base) && r.num.degree().unwrap_or(0) == 0 => {
                Some(r.num.coeff(0, base))
            }
            _ => None,
        }) else {
            return Ok(Order::Infinite);
        };
        return residue_order(&mb, base);
    }
    residue_order(&m, f)
}

fn residue_order(m: &Poly, f: &Field) -> Result<Order> {
    match f {
        Field::Rationals => {
            if !m.gcd(&m.derivative(f), f).is_one(f) {
                return Ok(Order::Infinite);
            }
            let d = m.degree().unwrap_or(0);
            Ok(match cyclotomic_finite_order(m, d)? {
                Some(k) => Order::Finite(k as u128),
                None => Order::Infinite,
            })
        }
        Field::Number(_) => {
            let c = restrict_scalars(&companion(m, f), f).expect("number field matrix");
            residue_order(&minimal_polynomial(&c, &Field::Rationals), &Field::Rationals)
        }
        Field::Finite(ff) => {
            let p = ff.p as u128;
            let q = ff.order();
            let mut total: u128 = 1;
            for (h, e) in factor(m, f)? {
                let d = h.degree().unwrap() as u32;
                let big = q.checked_pow(d).ok_or(Error::CapExceeded(usize::MAX))? - 1;
                let modulus = h.pow(e, f);
                let is_one = |k: u128| {
                    Poly::x(f).pow_mod(&BigUint::from(k), &modulus, f) == Poly::one(f).rem(&modulus, f)
                };
                let hk = |k: u128| {
                    Poly::x(f).pow_mod(&BigUint::from(k), &h, f) == Poly::one(f).rem(&h, f)
                };
                let mut o = big;
                for (r, a) in arith::factor_u128(big) {
                    for _ in 0..a {
                        if hk(o / r) {
                            o /= r;
                        } else {
                            break;
                        }
                    }
                }
                while !is_one(o) {
                    o *= p;
                }
                total = lcm_u128(total, o);
            }
            Ok(Order::Finite(total))
        }
        Field::Function(_) => Err(Error::UnsupportedField(f.name())),
    }
}

fn lcm_u128(a: u128, b: u128) -> u128 {
    a / num_integer::Integer::gcd(&a, &b) * b
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::rat;

    fn q() -> Field {
        Field::Rationals
    }

    #[test]
    fn jordan_examples() {
        let f = q();
        let u = Matrix::from_ints(&[&[1, 1], &[0, 1]], &f);
        let p = jordan(&u, &f).unwrap();
        assert!(p.s.is_identity(&f));
        assert_eq!(p.u, u);
        let d = Matrix::from_ints(&[&[1, 1], &[0, 2]], &f);
        let p = jordan(&d, &f).unwrap();
        assert_eq!(p.s, d);
        assert!(p.u.is_identity(&f));
        let g = Matrix::from_ints(&[&[2, 1], &[0, 2]], &f);
        let p = jordan(&g, &f).unwrap();
        assert_eq!(p.s, Matrix::from_ints(&[&[2, 0], &[0, 2]], &f));
        let mut expect = Matrix::identity(2, &f);
        expect.set(0, 1, Elem::Q(rat(1, 2)));
        assert_eq!(p.u, expect);
    }

    #[test]
    fn jordan_imperfect_rejected() {
        // X^p on the diagonal has radical T - X, inseparable over GF(p)(X)
        let ff = Field::function(Field::prime(2).unwrap()).unwrap();
        let x = ff.generator().unwrap();
        let m = Matrix::from_rows(vec![
            vec![ff.zero(), x.clone()],
            vec![ff.one(), ff.zero()],
        ])
        .unwrap();
        assert!(matches!(jordan(&m, &ff), Err(Error::ImperfectField(_))));
    }

    #[test]
    fn unipotent_group_examples() {
        let f = q();
        let h = [Matrix::elementary(3, 0, 1, &f), Matrix::elementary(3, 1, 2, &f)];
        let Unipotency::Unipotent(c) = is_unipotent_group(&h, 3, &f).unwrap() else {
            panic!("Heisenberg generators are unipotent");
        };
        assert_eq!(c.flag.iter().map(|v| v.dim()).collect::<Vec<_>>(), vec![3, 2, 1, 0]);
        let tinv = c.t.inverse(&f).unwrap();
        for g in &h {
            let t = c.t.mul(g, &f).mul(&tinv, &f);
            for i in 0..3 {
                assert!(f.is_one(t.get(i, i)));
                for j in 0..i {
                    assert!(f.is_zero(t.get(i, j)));
                }
            }
        }
        let bad = [Matrix::elementary(2, 0, 1, &f), Matrix::elementary(2, 1, 0, &f)];
        assert!(matches!(is_unipotent_group(&bad, 2, &f).unwrap(), Unipotency::NotUnipotent { .. }));
        let Unipotency::Unipotent(c) = is_unipotent_group(&[Matrix::identity(4, &f)], 4, &f).unwrap() else {
            panic!()
        };
        assert_eq!(c.flag.len(), 2);
        assert!(c.t.is_identity(&f));
        assert_eq!(
            is_unipotent_group(&[Matrix::diag(&[f.one(), f.from_i64(2)], &f)], 2, &f),
            Err(Error::NotUnipotentGenerator(0))
        );
    }

    #[test]
    fn reduction_examples() {
        let f = q();
        let heis = GroupSpec::new(
            f.clone(),
            3,
            vec![Matrix::elementary(3, 0, 1, &f), Matrix::elementary(3, 1, 2, &f)],
        )
        .unwrap();
        let Split::Ok(r) = reduction_split(&heis).unwrap() else { panic!() };
        assert!(r.gens_s.iter().all(|s| s.is_identity(&f)));
        assert_eq!(r.gens_u, heis.gens);
        let mixed = GroupSpec::new(
            f.clone(),
            2,
            vec![Matrix::from_ints(&[&[1, 1], &[0, 1]], &f), Matrix::from_ints(&[&[-1, 0], &[0, 1]], &f)],
        )
        .unwrap();
        assert!(matches!(reduction_split(&mixed).unwrap(), Split::NonCommuting { u: 0, s: 1, .. }));
        let scal = GroupSpec::new(f.clone(), 2, vec![Matrix::from_ints(&[&[2, 2], &[0, 2]], &f)]).unwrap();
        let Split::Ok(r) = reduction_split(&scal).unwrap() else { panic!() };
        assert_eq!(r.gens_s[0], Matrix::scalar(2, &f.from_i64(2), &f));
        // 2I·u = [[2,2],[0,2]] forces u = I + E12
        assert_eq!(r.gens_u[0], Matrix::elementary(2, 0, 1, &f));
    }

    #[test]
    fn cr_series_examples() {
        let f = q();
        let d8 = GroupSpec::new(
            f.clone(),
            2,
            vec![Matrix::from_ints(&[&[0, -1], &[1, 0]], &f), Matrix::from_ints(&[&[1, 0], &[0, -1]], &f)],
        )
        .unwrap();
        assert_eq!(cr_series(&d8).unwrap().iter().map(|v| v.dim()).collect::<Vec<_>>(), vec![2, 0]);
        let g = GroupSpec::new(f.clone(), 2, vec![Matrix::from_ints(&[&[2, 2], &[0, 2]], &f)]).unwrap();
        assert_eq!(cr_series(&g).unwrap().iter().map(|v| v.dim()).collect::<Vec<_>>(), vec![2, 1, 0]);
    }

    #[test]
    fn finite_order_examples() {
        let f = q();
        assert_eq!(finite_order(&Matrix::diag(&[f.from_i64(-1), f.one()], &f), &f).unwrap(), Order::Finite(2));
        assert_eq!(finite_order(&Matrix::diag(&[f.from_i64(2)], &f), &f).unwrap(), Order::Infinite);
        let r = Matrix::from_ints(&[&[0, -1], &[1, 0]], &f);
        assert_eq!(finite_order(&r, &f).unwrap(), Order::Finite(4));
        assert_eq!(finite_order(&Matrix::elementary(2, 0, 1, &f), &f).unwrap(), Order::Infinite);
        let f13 = Field::prime(13).unwrap();
        let g = Matrix::diag(&[f13.from_i64(2)], &f13);
        assert_eq!(finite_order(&g, &f13).unwrap(), Order::Finite(12));
        let f5 = Field::prime(5).unwrap();
        assert_eq!(finite_order(&Matrix::elementary(3, 0, 1, &f5), &f5).unwrap(), Order::Finite(5));
        let nf = Field::number(vec![1.into(), 0.into(), 1.into()]).unwrap();
        let i = nf.generator().unwrap();
        assert_eq!(finite_order(&Matrix::diag(&[i], &nf), &nf).unwrap(), Order::Finite(4));
    }
}
