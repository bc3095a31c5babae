use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::field::{Elem, Field};

/// Dense univariate polynomial, constant term first, no trailing zeros.
/// The coefficient field is supplied to every operation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Poly {
    c: Vec<Elem>,
}

fn elem_is_zero(e: &Elem) -> bool {
    match e {
        Elem::Q(q) => q.is_zero(),
        Elem::Fp(v) => *v == 0,
        Elem::Fq(v) => v.iter().all(|&c| c == 0),
        Elem::Nf(v) => v.iter().all(|c| c.is_zero()),
        Elem::Rf(r) => r.num.is_zero(),
    }
}

impl Poly {
    pub fn new(mut c: Vec<Elem>) -> Poly {
        while c.last().is_some_and(elem_is_zero) {
            c.pop();
        }
        Poly { c }
    }

    pub fn zero() -> Poly {
        Poly { c: Vec::new() }
    }

    pub fn one(f: &Field) -> Poly {
        Poly { c: vec![f.one()] }
    }

    pub fn x(f: &Field) -> Poly {
        Poly { c: vec![f.zero(), f.one()] }
    }

    pub fn constant(e: Elem, _f: &Field) -> Poly {
        Poly::new(vec![e])
    }

    pub fn monomial(e: Elem, k: usize, f: &Field) -> Poly {
        let mut c = vec![f.zero(); k];
        c.push(e);
        Poly::new(c)
    }

    pub fn from_ints(ints: &[i64], f: &Field) -> Poly {
        Poly::new(ints.iter().map(|&k| f.from_i64(k)).collect())
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.c
    }

    pub fn into_coeffs(self) -> Vec<Elem> {
        self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self, f: &Field) -> bool {
        self.c.len() == 1 && f.is_one(&self.c[0])
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn lc(&self) -> Option<&Elem> {
        self.c.last()
    }

    pub fn coeff(&self, i: usize, f: &Field) -> Elem {
        self.c.get(i).cloned().unwrap_or_else(|| f.zero())
    }

    pub fn add(&self, o: &Poly, f: &Field) -> Poly {
        let n = self.c.len().max(o.c.len());
        let z = f.zero();
        Poly::new(
            (0..n)
                .map(|i| f.add(self.c.get(i).unwrap_or(&z), o.c.get(i).unwrap_or(&z)))
                .collect(),
        )
    }

    pub fn neg(&self, f: &Field) -> Poly {
        Poly { c: self.c.iter().map(|e| f.neg(e)).collect() }
    }

    pub fn sub(&self, o: &Poly, f: &Field) -> Poly {
        self.add(&o.neg(f), f)
    }

    pub fn mul(&self, o: &Poly, f: &Field) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![f.zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                if !f.is_zero(b) {
                    out[i + j] = f.add(&out[i + j], &f.mul(a, b));
                }
            }
        }
        Poly::new(out)
    }

    pub fn scale(&self, s: &Elem, f: &Field) -> Poly {
        Poly::new(self.c.iter().map(|e| f.mul(e, s)).collect())
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn divrem(&self, d: &Poly, f: &Field) -> (Poly, Poly) {
        let dd = d.degree().expect("division by zero polynomial");
        let lc_inv = f.inv(d.lc().unwrap()).unwrap();
        let mut r = self.c.clone();
        if r.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut q = vec![f.zero(); r.len() - dd];
        for k in (dd..r.len()).rev() {
            if f.is_zero(&r[k]) {
                continue;
            }
            let t = f.mul(&r[k], &lc_inv);
            for (i, dc) in d.c.iter().enumerate() {
                let idx = k - dd + i;
                r[idx] = f.sub(&r[idx], &f.mul(&t, dc));
            }
            q[k - dd] = t;
        }
        r.truncate(dd);
        (Poly::new(q), Poly::new(r))
    }

    pub fn rem(&self, d: &Poly, f: &Field) -> Poly {
        self.divrem(d, f).1
    }

    pub fn div_exact(&self, d: &Poly, f: &Field) -> Poly {
        let (q, r) = self.divrem(d, f);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn divides(&self, o: &Poly, f: &Field) -> bool {
        o.rem(self, f).is_zero()
    }

    pub fn monic(&self, f: &Field) -> Poly {
        match self.lc() {
            None => Poly::zero(),
            Some(l) if f.is_one(l) => self.clone(),
            Some(l) => self.scale(&f.inv(l).unwrap(), f),
        }
    }

    /// Monic gcd (zero only when both inputs are zero).
    pub fn gcd(&self, o: &Poly, f: &Field) -> Poly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b, f);
            a = b;
            b = r;
        }
        a.monic(f)
    }

    /// Returns `(g, s, t)` with `s·self + t·o = g`, `g` monic.
    pub fn ext_gcd(&self, o: &Poly, f: &Field) -> (Poly, Poly, Poly) {
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (Poly::one(f), Poly::zero());
        let (mut t0, mut t1) = (Poly::zero(), Poly::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1, f);
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1, f), f);
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1, f), f);
            t0 = std::mem::replace(&mut t1, t);
        }
        match r0.lc().cloned() {
            None => (r0, s0, t0),
            Some(l) => {
                let li = f.inv(&l).unwrap();
                (r0.scale(&li, f), s0.scale(&li, f), t0.scale(&li, f))
            }
        }
    }

    pub fn lcm(&self, o: &Poly, f: &Field) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let g = self.gcd(o, f);
        self.div_exact(&g, f).mul(o, f).monic(f)
    }

    pub fn derivative(&self, f: &Field) -> Poly {
        Poly::new(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, e)| f.mul(e, &f.from_i64(i as i64)))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Elem, f: &Field) -> Elem {
        let mut acc = f.zero();
        for c in self.c.iter().rev() {
            acc = f.add(&f.mul(&acc, x), c);
        }
        acc
    }

    /// Composition `self(o)`.
    pub fn compose(&self, o: &Poly, f: &Field) -> Poly {
        let mut acc = Poly::zero();
        for c in self.c.iter().rev() {
            acc = acc.mul(o, f).add(&Poly::constant(c.clone(), f), f);
        }
        acc
    }

    pub fn pow_mod(&self, e: &BigUint, m: &Poly, f: &Field) -> Poly {
        let mut acc = Poly::one(f).rem(m, f);
        let mut base = self.rem(m, f);
        let bits = e.bits();
        for i in 0..bits {
            if e.bit(i) {
                acc = acc.mul(&base, f).rem(m, f);
            }
            if i + 1 < bits {
                base = base.mul(&base, f).rem(m, f);
            }
        }
        acc
    }

    pub fn pow(&self, e: u32, f: &Field) -> Poly {
        let mut acc = Poly::one(f);
        for _ in 0..e {
            acc = acc.mul(self, f);
        }
        acc
    }

    /// Applies a coefficient map (e.g. reduction); `None` if any coefficient fails.
    pub fn try_map<F>(&self, mut g: F) -> Option<Poly>
    where
        F: FnMut(&Elem) -> Option<Elem>,
    {
        let mut out = Vec::with_capacity(self.c.len());
        for e in &self.c {
            out.push(g(e)?);
        }
        Some(Poly::new(out))
    }

    pub fn to_string_with(&self, f: &Field, fmt_elem: impl Fn(&Elem) -> String) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (i, c) in self.c.iter().enumerate().rev() {
            if f.is_zero(c) {
                continue;
            }
            let cs = fmt_elem(c);
            let term = match i {
                0 => cs,
                _ => {
                    let mono = if i == 1 { "X".to_string() } else { format!("X^{i}") };
                    if f.is_one(c) {
                        mono
                    } else {
                        format!("({cs})*{mono}")
                    }
                }
            };
            parts.push(term);
        }
        parts.join(" + ")
    }
}

/// Radical of `f`: the monic product of its distinct irreducible factors.
///
/// In characteristic p the derivative may vanish on p-th powers; those parts
/// are handled by taking p-th roots of coefficients, which fails (returns
/// `None`) only over imperfect fields.
pub fn squarefree_part(p: &Poly, f: &Field) -> Option<Poly> {
    if p.is_zero() {
        return None;
    }
    let p = p.monic(f);
    if p.degree() == Some(0) {
        return Some(p);
    }
    let char_p = f.characteristic();
    if char_p == 0 {
        let g = p.gcd(&p.derivative(f), f);
        return Some(p.div_exact(&g, f).monic(f));
    }
    let mut radical = Poly::one(f);
    let c0 = p.gcd(&p.derivative(f), f);
    let mut w = p.div_exact(&c0, f);
    let mut c = c0;
    while w.degree() > Some(0) {
        let y = w.gcd(&c, f);
        let fac = w.div_exact(&y, f);
        radical = radical.lcm(&fac, f);
        w = y;
        c = c.div_exact(&w, f);
    }
    if c.degree() > Some(0) {
        // c is a polynomial in X^p
        let pu = char_p as usize;
        let mut root = Vec::new();
        for (i, e) in c.coeffs().iter().enumerate() {
            if i % pu == 0 {
                root.push(f.pth_root(e)?);
            } else if !f.is_zero(e) {
                return None;
            }
        }
        let inner = squarefree_part(&Poly::new(root), f)?;
        radical = radical.lcm(&inner, f);
    }
    Some(radical.monic(f))
}

/// True when `gcd(f, f') = 1`, i.e. `f` has no repeated roots in a closure.
pub fn is_separable(p: &Poly, f: &Field) -> bool {
    !p.is_zero() && p.gcd(&p.derivative(f), f).is_one(f)
}

pub fn big(e: u128) -> BigUint {
    BigUint::from(e)
}

pub fn biguint_pow(b: u128, e: usize) -> BigUint {
    let mut acc = BigUint::one();
    for _ in 0..e {
        acc *= b;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn squarefree_rational() {
        let q = Field::Rationals;
        let f = Poly::from_ints(&[1, -2, 1], &q);
        assert_eq!(squarefree_part(&f, &q).unwrap(), Poly::from_ints(&[-1, 1], &q));
        let g = Poly::from_ints(&[-2, 0, 1], &q);
        assert_eq!(squarefree_part(&g, &q).unwrap(), g);
    }

    #[test]
    fn squarefree_char_p() {
        // X^5 - X^4 = X^4 (X - 1) over GF(5)
        let f5 = Field::prime(5).unwrap();
        let f = Poly::from_ints(&[0, 0, 0, 0, -1, 1], &f5);
        assert_eq!(squarefree_part(&f, &f5).unwrap(), Poly::from_ints(&[0, -1, 1], &f5));
        // (X + 1)^5 = X^5 + 1 has vanishing derivative
        let g = Poly::from_ints(&[1, 0, 0, 0, 0, 1], &f5);
        assert_eq!(squarefree_part(&g, &f5).unwrap(), Poly::from_ints(&[1, 1], &f5));
    }

    #[test]
    fn inseparable_over_function_field() {
        let f = Field::function(Field::prime(3).unwrap()).unwrap();
        let x = f.generator().unwrap();
        // T^3 - X is irreducible and inseparable over GF(3)(X)
        let p = Poly::new(vec![f.neg(&x), f.zero(), f.zero(), f.one()]);
        assert!(squarefree_part(&p, &f).is_none());
    }

    #[test]
    fn ext_gcd_identity() {
        let q = Field::Rationals;
        let a = Poly::from_ints(&[-1, 0, 1], &q);
        let b = Poly::from_ints(&[1, 1], &q);
        let (g, s, t) = a.ext_gcd(&b, &q);
        assert_eq!(g, Poly::from_ints(&[1, 1], &q));
        assert_eq!(s.mul(&a, &q).add(&t.mul(&b, &q), &q), g);
    }
}
