use nilmat::fields::{squarefree_part, Field};
use nilmat::linalg::{minimal_polynomial, Matrix};
use nilmat::splitting::jordan;
use nilmat::testkit::random_jordan_case;
use proptest::prelude::*;

fn fields() -> Vec<Field> {
    let q = Field::Rationals;
    vec![
        q.clone(),
        Field::prime(7).unwrap(),
        Field::finite(3, 2, 1).unwrap(),
        Field::number(vec![(-2).into(), 0.into(), 1.into()]).unwrap(),
        Field::function(q).unwrap(),
        Field::function(Field::prime(5).unwrap()).unwrap(),
    ]
}

fn check(f: &Field, n: usize, seed: u64) {
    let (g, h) = random_jordan_case(f, n, seed);
    let p = jordan(&g, f).unwrap();
    assert_eq!(p.s.mul(&p.u, f), g);
    assert_eq!(p.s.mul(&p.u, f), p.u.mul(&p.s, f));
    let m = minimal_polynomial(&p.s, f);
    assert_eq!(squarefree_part(&m, f).unwrap().degree(), m.degree());
    let id = Matrix::identity(n, f);
    assert!(p.u.sub(&id, f).pow(n as u128, f).is_zero(f));
    let hi = h.inverse(f).unwrap();
    let conj = |x: &Matrix| h.mul(x, f).mul(&hi, f);
    let q = jordan(&conj(&g), f).unwrap();
    assert_eq!(q.s, conj(&p.s));
    assert_eq!(q.u, conj(&p.u));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn jordan_rational(seed in any::<u64>(), n in 1usize..=4) { check(&fields()[0], n, seed) }

    #[test]
    fn jordan_prime_field(seed in any::<u64>(), n in 1usize..=4) { check(&fields()[1], n, seed) }

    #[test]
    fn jordan_extension_field(seed in any::<u64>(), n in 1usize..=4) { check(&fields()[2], n, seed) }

    #[test]
    fn jordan_number_field(seed in any::<u64>(), n in 1usize..=3) { check(&fields()[3], n, seed) }

    #[test]
    fn jordan_function_field(seed in any::<u64>(), n in 1usize..=3) { check(&fields()[4], n, seed) }

    #[test]
    fn jordan_function_field_char_p(seed in any::<u64>(), n in 1usize..=3) { check(&fields()[5], n, seed) }
}
