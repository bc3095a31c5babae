//! The field tower: rationals, GF(p^l), number fields Q(α), and rational
//! function fields over Q or GF(q), with univariate polynomials over each.

mod factor;
mod field;
mod poly;

use num_rational::BigRational;

pub use factor::{
    cyclotomic, cyclotomic_finite_order, discriminant_int, factor, find_irreducible,
    is_irreducible_finite, resultant, squarefree_decomposition,
};
pub use field::{rat, Elem, Field, FiniteField, NumberField, RatFn};
pub use poly::{big, biguint_pow, is_separable, squarefree_part, Poly};

use crate::arith;
use crate::error::{Error, Result};

/// num·den⁻¹ mod p.
pub fn reduce_mod(x: &BigRational, p: u64) -> Result<u64> {
    let den = arith::bigint_mod_u64(x.denom(), p);
    if den == 0 {
        return Err(Error::DenominatorDivisible(p.to_string()));
    }
    let num = arith::bigint_mod_u64(x.numer(), p);
    Ok(arith::mul_mod(num, arith::inv_mod(den, p), p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn reduce_examples() {
        assert_eq!(reduce_mod(&rat(1, 2), 5), Ok(3));
        assert_eq!(reduce_mod(&rat(0, 1), 7), Ok(0));
        assert!(matches!(reduce_mod(&rat(1, 5), 5), Err(Error::DenominatorDivisible(_))));
    }

    proptest! {
        #[test]
        fn reduce_is_homomorphism(a in -500i64..500, b in 1i64..60, c in -500i64..500, d in 1i64..60) {
            let p = 61;
            let x = rat(a, b);
            let y = rat(c, d);
            let rx = reduce_mod(&x, p).unwrap();
            let ry = reduce_mod(&y, p).unwrap();
            prop_assert_eq!(reduce_mod(&(&x + &y), p).unwrap(), (rx + ry) % p);
            prop_assert_eq!(reduce_mod(&(&x * &y), p).unwrap(), arith::mul_mod(rx, ry, p));
        }
    }

    fn sample_fields() -> Vec<Field> {
        use num_bigint::BigInt;
        vec![
            Field::Rationals,
            Field::prime(7).unwrap(),
            Field::finite(2, 3, 5).unwrap(),
            Field::finite(5, 2, 9).unwrap(),
            Field::number(vec![BigInt::from(-2), BigInt::from(0), BigInt::from(1)]).unwrap(),
            Field::function(Field::Rationals).unwrap(),
            Field::function(Field::prime(3).unwrap()).unwrap(),
        ]
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn field_axioms(seed in any::<u64>()) {
            use rand::SeedableRng;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            for f in sample_fields() {
                let a = f.random(&mut rng);
                let b = f.random(&mut rng);
                let c = f.random(&mut rng);
                prop_assert_eq!(f.add(&f.add(&a, &b), &c), f.add(&a, &f.add(&b, &c)));
                prop_assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
                prop_assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
                if !f.is_zero(&a) {
                    prop_assert!(f.is_one(&f.mul(&a, &f.inv(&a).unwrap())));
                }
            }
        }

        #[test]
        fn squarefree_part_divides(c in prop::collection::vec(-4i64..4, 1..7), e in 1u32..3) {
            let q = Field::Rationals;
            let mut c = c;
            c.push(1);
            let p = Poly::from_ints(&c, &q).pow(e, &q);
            let s = squarefree_part(&p, &q).unwrap();
            prop_assert!(s.divides(&p, &q));
            prop_assert!(s.gcd(&s.derivative(&q), &q).is_one(&q));
        }
    }
}
