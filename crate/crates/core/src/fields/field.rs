use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;

use super::poly::Poly;
use crate::arith::{self, inv_mod, mul_mod};
use crate::error::{Error, Result};

/// GF(p^l). For `l = 1` the modulus is `x`; elements are then plain residues.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiniteField {
    pub p: u64,
    pub l: usize,
    /// Monic irreducible modulus over GF(p), constant term first, length `l + 1`.
    pub modulus: Vec<u64>,
}

impl FiniteField {
    pub fn order(&self) -> u128 {
        (self.p as u128).pow(self.l as u32)
    }
}

/// Q(α) where α is a root of a monic irreducible integer polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NumberField {
    /// Constant term first; monic of degree `m ≥ 2`.
    pub minpoly: Vec<BigInt>,
}

impl NumberField {
    pub fn degree(&self) -> usize {
        self.minpoly.len() - 1
    }
}

/// The ground fields supported by the library.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Rationals,
    Finite(FiniteField),
    Number(NumberField),
    /// Rational function field B(X) over a base B ∈ {Q, GF(q)}.
    Function(Box<Field>),
}

/// A rational function in canonical form: coprime numerator and denominator,
/// denominator monic.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RatFn {
    pub num: Poly,
    pub den: Poly,
}

/// Field elements. Every constructor path produces a canonical representative
/// so structural equality and hashing coincide with field equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Elem {
    Q(BigRational),
    Fp(u64),
    /// Coefficients over GF(p) in the power basis of the modulus root, length `l`.
    Fq(Vec<u64>),
    /// Rational coefficients in the power basis 1, α, …, α^{m-1}.
    Nf(Vec<BigRational>),
    Rf(Box<RatFn>),
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn bad(op: &str) -> ! {
    panic!("field element kind mismatch in {op}")
}

impl Field {
    pub fn prime(p: u64) -> Result<Field> {
        if !arith::is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        Ok(Field::Finite(FiniteField {
            p,
            l: 1,
            modulus: vec![0, 1],
        }))
    }

    /// GF(p^l) with an explicit modulus, checked for irreducibility.
    pub fn finite_with_modulus(p: u64, modulus: Vec<u64>) -> Result<Field> {
        if !arith::is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        let l = modulus.len().saturating_sub(1);
        if l == 0 || modulus[l] != 1 || modulus.iter().any(|&c| c >= p) {
            return Err(Error::InvalidField("modulus must be monic with reduced coefficients".into()));
        }
        if l == 1 {
            return Field::prime(p);
        }
        let fp = Field::prime(p)?;
        let m = Poly::new(modulus.iter().map(|&c| Elem::Fp(c)).collect());
        if !super::factor::is_irreducible_finite(&m, &fp) {
            return Err(Error::InvalidField("modulus is reducible".into()));
        }
        Ok(Field::Finite(FiniteField { p, l, modulus }))
    }

    /// GF(p^l) with a modulus found by seeded random search.
    pub fn finite(p: u64, l: usize, seed: u64) -> Result<Field> {
        if l == 1 {
            return Field::prime(p);
        }
        if l == 0 {
            return Err(Error::InvalidField("extension degree must be positive".into()));
        }
        if !arith::is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        let modulus = super::factor::find_irreducible(p, l, seed);
        Ok(Field::Finite(FiniteField { p, l, modulus }))
    }

    pub fn number(minpoly: Vec<BigInt>) -> Result<Field> {
        let m = minpoly.len().saturating_sub(1);
        if m < 2 || !minpoly[m].is_one() {
            return Err(Error::InvalidField("minimal polynomial must be monic of degree >= 2".into()));
        }
        let q = Poly::new(minpoly.iter().map(|c| Elem::Q(BigRational::from(c.clone()))).collect());
        let fac = super::factor::factor(&q, &Field::Rationals)?;
        if fac.len() != 1 || fac[0].1 != 1 {
            return Err(Error::InvalidField("minimal polynomial is reducible over Q".into()));
        }
        Ok(Field::Number(NumberField { minpoly }))
    }

    pub fn function(base: Field) -> Result<Field> {
        match base {
            Field::Rationals | Field::Finite(_) => Ok(Field::Function(Box::new(base))),
            _ => Err(Error::InvalidField("function field base must be Q or GF(q)".into())),
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rationals | Field::Number(_) => 0,
            Field::Finite(ff) => ff.p,
            Field::Function(b) => b.characteristic(),
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Field::Finite(_))
    }

    /// Number of elements for finite fields.
    pub fn size(&self) -> Option<u128> {
        match self {
            Field::Finite(ff) => Some(ff.order()),
            _ => None,
        }
    }

    pub fn as_finite(&self) -> Option<&FiniteField> {
        match self {
            Field::Finite(ff) => Some(ff),
            _ => None,
        }
    }

    pub fn function_base(&self) -> Option<&Field> {
        match self {
            Field::Function(b) => Some(b),
            _ => None,
        }
    }

    pub fn zero(&self) -> Elem {
        match self {
            Field::Rationals => Elem::Q(BigRational::zero()),
            Field::Finite(ff) if ff.l == 1 => Elem::Fp(0),
            Field::Finite(ff) => Elem::Fq(vec![0; ff.l]),
            Field::Number(nf) => Elem::Nf(vec![BigRational::zero(); nf.degree()]),
            Field::Function(b) => Elem::Rf(Box::new(RatFn {
                num: Poly::zero(),
                den: Poly::one(b),
            })),
        }
    }

    pub fn one(&self) -> Elem {
        self.from_i64(1)
    }

    pub fn from_i64(&self, k: i64) -> Elem {
        self.from_bigint(&BigInt::from(k))
    }

    pub fn from_bigint(&self, k: &BigInt) -> Elem {
        match self {
            Field::Rationals => Elem::Q(BigRational::from(k.clone())),
            Field::Finite(ff) => {
                let r = arith::bigint_mod_u64(k, ff.p);
                if ff.l == 1 {
                    Elem::Fp(r)
                } else {
                    let mut v = vec![0; ff.l];
                    v[0] = r;
                    Elem::Fq(v)
                }
            }
            Field::Number(nf) => {
                let mut v = vec![BigRational::zero(); nf.degree()];
                v[0] = BigRational::from(k.clone());
                Elem::Nf(v)
            }
            Field::Function(b) => Elem::Rf(Box::new(RatFn {
                num: Poly::constant(b.from_bigint(k), b),
                den: Poly::one(b),
            })),
        }
    }

    /// Image of a rational number; `None` when the denominator vanishes.
    pub fn from_rational(&self, q: &BigRational) -> Option<Elem> {
        let n = self.from_bigint(q.numer());
        let d = self.from_bigint(q.denom());
        self.div(&n, &d)
    }

    /// The generator α of a number field, or the indeterminate X of a function field.
    pub fn generator(&self) -> Option<Elem> {
        match self {
            Field::Number(nf) => {
                let mut v = vec![BigRational::zero(); nf.degree()];
                v[1] = BigRational::one();
                Some(Elem::Nf(v))
            }
            Field::Finite(ff) if ff.l > 1 => {
                let mut v = vec![0; ff.l];
                v[1] = 1;
                Some(Elem::Fq(v))
            }
            Field::Function(b) => Some(Elem::Rf(Box::new(RatFn {
                num: Poly::x(b),
                den: Poly::one(b),
            }))),
            _ => None,
        }
    }

    pub fn is_zero(&self, a: &Elem) -> bool {
        match a {
            Elem::Q(q) => q.is_zero(),
            Elem::Fp(v) => *v == 0,
            Elem::Fq(v) => v.iter().all(|&c| c == 0),
            Elem::Nf(v) => v.iter().all(|c| c.is_zero()),
            Elem::Rf(r) => r.num.is_zero(),
        }
    }

    pub fn is_one(&self, a: &Elem) -> bool {
        *a == self.one()
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        match (self, a, b) {
            (_, Elem::Q(x), Elem::Q(y)) => Elem::Q(x + y),
            (Field::Finite(ff), Elem::Fp(x), Elem::Fp(y)) => Elem::Fp((x + y) % ff.p),
            (Field::Finite(ff), Elem::Fq(x), Elem::Fq(y)) => {
                Elem::Fq(x.iter().zip(y).map(|(u, v)| (u + v) % ff.p).collect())
            }
            (_, Elem::Nf(x), Elem::Nf(y)) => Elem::Nf(x.iter().zip(y).map(|(u, v)| u + v).collect()),
            (Field::Function(base), Elem::Rf(x), Elem::Rf(y)) => {
                if x.den == y.den {
                    return rf_normalize(x.num.add(&y.num, base), x.den.clone(), base);
                }
                let num = x.num.mul(&y.den, base).add(&y.num.mul(&x.den, base), base);
                rf_normalize(num, x.den.mul(&y.den, base), base)
            }
            _ => bad("add"),
        }
    }

    pub fn neg(&self, a: &Elem) -> Elem {
        match (self, a) {
            (_, Elem::Q(x)) => Elem::Q(-x),
            (Field::Finite(ff), Elem::Fp(x)) => Elem::Fp((ff.p - x) % ff.p),
            (Field::Finite(ff), Elem::Fq(x)) => Elem::Fq(x.iter().map(|c| (ff.p - c) % ff.p).collect()),
            (_, Elem::Nf(x)) => Elem::Nf(x.iter().map(|c| -c).collect()),
            (Field::Function(base), Elem::Rf(x)) => Elem::Rf(Box::new(RatFn {
                num: x.num.neg(base),
                den: x.den.clone(),
            })),
            _ => bad("neg"),
        }
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        match (a, b) {
            (Elem::Q(x), Elem::Q(y)) => Elem::Q(x - y),
            _ => self.add(a, &self.neg(b)),
        }
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        match (self, a, b) {
            (_, Elem::Q(x), Elem::Q(y)) => Elem::Q(x * y),
            (Field::Finite(ff), Elem::Fp(x), Elem::Fp(y)) => Elem::Fp(mul_mod(*x, *y, ff.p)),
            (Field::Finite(ff), Elem::Fq(x), Elem::Fq(y)) => Elem::Fq(fq_mul(ff, x, y)),
            (Field::Number(nf), Elem::Nf(x), Elem::Nf(y)) => Elem::Nf(nf_mul(nf, x, y)),
            (Field::Function(base), Elem::Rf(x), Elem::Rf(y)) => {
                if self.is_zero(a) || self.is_zero(b) {
                    return self.zero();
                }
                rf_normalize(x.num.mul(&y.num, base), x.den.mul(&y.den, base), base)
            }
            _ => bad("mul"),
        }
    }

    pub fn inv(&self, a: &Elem) -> Option<Elem> {
        if self.is_zero(a) {
            return None;
        }
        Some(match (self, a) {
            (_, Elem::Q(x)) => Elem::Q(x.recip()),
            (Field::Finite(ff), Elem::Fp(x)) => Elem::Fp(inv_mod(*x, ff.p)),
            (Field::Finite(ff), Elem::Fq(_)) => self.pow(a, ff.order() - 2),
            (Field::Number(nf), Elem::Nf(x)) => Elem::Nf(nf_inv(nf, x)),
            (Field::Function(base), Elem::Rf(x)) => rf_normalize(x.den.clone(), x.num.clone(), base),
            _ => bad("inv"),
        })
    }

    pub fn div(&self, a: &Elem, b: &Elem) -> Option<Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    pub fn pow(&self, a: &Elem, mut e: u128) -> Elem {
        let mut acc = self.one();
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// p-th root in characteristic p, when one exists in this field.
    pub fn pth_root(&self, a: &Elem) -> Option<Elem> {
        match (self, a) {
            (Field::Finite(ff), _) => Some(self.pow(a, ff.order() / ff.p as u128)),
            (Field::Function(base), Elem::Rf(x)) if base.characteristic() > 0 => {
                let p = base.characteristic() as usize;
                let root = |f: &Poly| -> Option<Poly> {
                    let mut out = Vec::new();
                    for (i, c) in f.coeffs().iter().enumerate() {
                        if i % p != 0 {
                            if !base.is_zero(c) {
                                return None;
                            }
                        } else {
                            out.push(base.pth_root(c)?);
                        }
                    }
                    Some(Poly::new(out))
                };
                let num = root(&x.num)?;
                let den = root(&x.den)?;
                Some(rf_normalize(num, den, base))
            }
            _ => None,
        }
    }

    /// The `k`-th element of a finite field in little-endian base-p digit order.
    pub fn element_at(&self, mut k: u128) -> Option<Elem> {
        let ff = self.as_finite()?;
        if k >= ff.order() {
            return None;
        }
        let p = ff.p as u128;
        if ff.l == 1 {
            return Some(Elem::Fp(k as u64));
        }
        let mut v = vec![0u64; ff.l];
        for c in v.iter_mut() {
            *c = (k % p) as u64;
            k /= p;
        }
        Some(Elem::Fq(v))
    }

    pub fn random<R: Rng>(&self, rng: &mut R) -> Elem {
        match self {
            Field::Finite(ff) => {
                let k = rng.gen_range(0..ff.order());
                self.element_at(k).expect("in range")
            }
            Field::Rationals => Elem::Q(rat(rng.gen_range(-9..=9), rng.gen_range(1..=4))),
            Field::Number(nf) => Elem::Nf(
                (0..nf.degree())
                    .map(|_| rat(rng.gen_range(-4..=4), rng.gen_range(1..=3)))
                    .collect(),
            ),
            Field::Function(b) => {
                let num = Poly::new((0..3).map(|_| b.random(rng)).collect());
                let mut den = Poly::new((0..2).map(|_| b.random(rng)).collect());
                if den.is_zero() {
                    den = Poly::one(b);
                }
                rf_normalize(num, den, b)
            }
        }
    }

    /// Short human-readable name.
    pub fn name(&self) -> String {
        match self {
            Field::Rationals => "Q".into(),
            Field::Finite(ff) if ff.l == 1 => format!("GF({})", ff.p),
            Field::Finite(ff) => format!("GF({}^{})", ff.p, ff.l),
            Field::Number(nf) => format!("Q(a), a root of degree-{} polynomial", nf.degree()),
            Field::Function(b) => format!("{}(X)", b.name()),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

fn fq_mul(ff: &FiniteField, x: &[u64], y: &[u64]) -> Vec<u64> {
    let l = ff.l;
    let p = ff.p;
    let mut prod = vec![0u64; 2 * l - 1];
    for (i, &a) in x.iter().enumerate() {
        if a == 0 {
            continue;
        }
        for (j, &b) in y.iter().enumerate() {
            prod[i + j] = (prod[i + j] + mul_mod(a, b, p)) % p;
        }
    }
    for k in (l..prod.len()).rev() {
        let c = prod[k];
        if c == 0 {
            continue;
        }
        // x^l = -(m_0 + … + m_{l-1} x^{l-1})
        for i in 0..l {
            let sub = mul_mod(c, ff.modulus[i], p);
            prod[k - l + i] = (prod[k - l + i] + p - sub) % p;
        }
    }
    prod.truncate(l);
    prod
}

fn nf_mul(nf: &NumberField, x: &[BigRational], y: &[BigRational]) -> Vec<BigRational> {
    let m = nf.degree();
    let mut prod = vec![BigRational::zero(); 2 * m - 1];
    for (i, a) in x.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, b) in y.iter().enumerate() {
            if !b.is_zero() {
                prod[i + j] += a * b;
            }
        }
    }
    for k in (m..prod.len()).rev() {
        let c = std::mem::take(&mut prod[k]);
        if c.is_zero() {
            continue;
        }
        for i in 0..m {
            if !nf.minpoly[i].is_zero() {
                prod[k - m + i] -= &c * BigRational::from(nf.minpoly[i].clone());
            }
        }
    }
    prod.truncate(m);
    prod
}

fn nf_inv(nf: &NumberField, x: &[BigRational]) -> Vec<BigRational> {
    let q = Field::Rationals;
    let a = Poly::new(x.iter().cloned().map(Elem::Q).collect());
    let f = Poly::new(nf.minpoly.iter().map(|c| Elem::Q(BigRational::from(c.clone()))).collect());
    let (g, s, _t) = a.ext_gcd(&f, &q);
    debug_assert!(g.is_one(&q), "minimal polynomial is irreducible");
    let mut out = vec![BigRational::zero(); nf.degree()];
    for (i, c) in s.coeffs().iter().enumerate() {
        if let Elem::Q(v) = c {
            out[i] = v.clone();
        }
    }
    out
}

pub(crate) fn rf_normalize(num: Poly, den: Poly, base: &Field) -> Elem {
    assert!(!den.is_zero(), "zero denominator in rational function");
    if num.is_zero() {
        return Elem::Rf(Box::new(RatFn {
            num: Poly::zero(),
            den: Poly::one(base),
        }));
    }
    let g = num.gcd(&den, base);
    let (mut num, mut den) = if g.degree() > Some(0) {
        (num.div_exact(&g, base), den.div_exact(&g, base))
    } else {
        (num, den)
    };
    let lc_inv = base.inv(den.lc().expect("nonzero")).expect("nonzero");
    if !base.is_one(&lc_inv) {
        num = num.scale(&lc_inv, base);
        den = den.scale(&lc_inv, base);
    }
    Elem::Rf(Box::new(RatFn { num, den }))
}

impl Elem {
    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Elem::Q(q) => Some(q),
            _ => None,
        }
    }

    /// Integer value of a prime-field residue.
    pub fn as_residue(&self) -> Option<u64> {
        match self {
            Elem::Fp(v) => Some(*v),
            _ => None,
        }
    }

    /// Common denominator of the rational data of an element: the `z` in `β/z`
    /// for number-field elements, the denominator for rationals.
    pub fn denominator(&self) -> Option<BigInt> {
        match self {
            Elem::Q(q) => Some(q.denom().clone()),
            Elem::Nf(v) => Some(v.iter().fold(BigInt::one(), |acc, c| {
                num_integer::Integer::lcm(&acc, c.denom())
            })),
            _ => None,
        }
    }
}
