//! Independent re-checking of witnesses from the group generators. Every
//! check recomputes derived data instead of trusting the recorded values.

use num_integer::Integer;

use crate::congruence::revalidate;
use crate::fields::Field;
use crate::group::{commutator_of, GroupSpec, Slp, Word};
use crate::linalg::{commutes, fixed_space, quotient_action, Matrix};
use crate::nilpotency::{adjoint_class_bound, adjoint_rep, class_bound, image_class_bound};
use crate::splitting::{finite_order, is_semisimple, is_unipotent, JordanPair, Order};
use crate::witness::{Domain, InfiniteWitness, Witness};

pub type Check = std::result::Result<(), String>;

fn ensure(cond: bool, msg: &str) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg.to_string())
    }
}

fn check_pairs(g: &GroupSpec, pairs: &[JordanPair]) -> Check {
    let f = &g.field;
    ensure(pairs.len() == g.ngens(), "one Jordan pair per generator")?;
    for (i, (x, p)) in g.gens.iter().zip(pairs).enumerate() {
        ensure(p.s.rows() == g.dim && p.u.rows() == g.dim, "Jordan pair dimension")?;
        ensure(&p.s.mul(&p.u, f) == x, &format!("s·u ≠ g for generator {i}"))?;
        ensure(commutes(&p.s, &p.u, f), &format!("s and u do not commute for generator {i}"))?;
        ensure(is_unipotent(&p.u, f), &format!("u is not unipotent for generator {i}"))?;
        ensure(
            is_semisimple(&p.s, f).map_err(|e| e.to_string())?,
            &format!("s is not semisimple for generator {i}"),
        )?;
    }
    Ok(())
}

fn semisimple_group(g: &GroupSpec, pairs: &[JordanPair]) -> std::result::Result<GroupSpec, String> {
    check_pairs(g, pairs)?;
    g.with_gens(pairs.iter().map(|p| p.s.clone()).collect()).map_err(|e| e.to_string())
}

struct Ambient {
    gens: Vec<Matrix>,
    dim: usize,
    field: Field,
    required: usize,
}

fn ambient(g: &GroupSpec, d: &Domain) -> std::result::Result<Ambient, String> {
    let n = g.dim;
    match d {
        Domain::Source => Ok(Ambient {
            gens: g.gens.clone(),
            dim: n,
            field: g.field.clone(),
            required: class_bound(&g.field, n),
        }),
        Domain::SemisimpleImage { pairs, congruence } => {
            let gs = semisimple_group(g, pairs)?;
            revalidate(&gs, congruence)?;
            let gens = gs
                .gens
                .iter()
                .map(|s| congruence.apply(s))
                .collect::<crate::Result<Vec<_>>>()
                .map_err(|e| e.to_string())?;
            Ok(Ambient {
                gens,
                dim: n,
                field: congruence.target.clone(),
                required: image_class_bound(&g.field, &congruence.target, n),
            })
        }
        Domain::Adjoint => {
            for x in &g.gens {
                ensure(is_semisimple(x, &g.field).map_err(|e| e.to_string())?, "generators must be semisimple")?;
            }
            let ad = adjoint_rep(g).map_err(|e| e.to_string())?;
            let m = ad.basis.dim();
            Ok(Ambient {
                gens: ad.gens,
                dim: m,
                field: g.field.clone(),
                required: adjoint_class_bound(&g.field, n, m),
            })
        }
    }
}

fn replay(a: &Ambient, slp: &Slp) -> std::result::Result<Vec<Matrix>, String> {
    slp.eval(&a.gens, a.dim, &a.field).map_err(|e| e.to_string())
}

fn get(vals: &[Matrix], i: usize) -> std::result::Result<&Matrix, String> {
    vals.get(i).ok_or_else(|| format!("program has no step {i}"))
}

fn order_of(m: &Matrix, f: &Field) -> std::result::Result<Order, String> {
    finite_order(m, f).map_err(|e| e.to_string())
}

fn is_power_of(mut n: u128, p: u64) -> bool {
    if p < 2 {
        return false;
    }
    while n.is_multiple_of(p as u128) {
        n /= p as u128;
    }
    n == 1
}

fn eval_word(w: &Word, gens: &[Matrix], dim: usize, f: &Field) -> std::result::Result<Matrix, String> {
    if let Some(&(i, _)) = w.0.iter().find(|&&(i, _)| i >= gens.len()) {
        return Err(format!("word uses generator {i} of {}", gens.len()));
    }
    let invs = gens.iter().map(|x| x.inverse(f)).collect::<crate::Result<Vec<_>>>().map_err(|e| e.to_string())?;
    Ok(w.eval(gens, &invs, dim, f))
}

/// Ok when the witness proves that `g` is not nilpotent.
pub fn verify_witness(g: &GroupSpec, w: &Witness) -> Check {
    let f = &g.field;
    match w {
        Witness::JordanCommutator { pairs, u, s } => {
            check_pairs(g, pairs)?;
            let (pu, ps) = (pairs.get(*u).ok_or("bad index")?, pairs.get(*s).ok_or("bad index")?);
            ensure(!commutes(&pu.u, &ps.s, f), "u-part and s-part commute")
        }
        Witness::NonUnipotentFlag { pairs, w } => {
            check_pairs(g, pairs)?;
            ensure(w.ambient() == g.dim && w.dim() < g.dim, "subspace must be proper")?;
            let us: Vec<Matrix> = pairs.iter().map(|p| p.u.clone()).collect();
            let q = quotient_action(&us, w, f).map_err(|e| e.to_string())?;
            ensure(fixed_space(&q, g.dim - w.dim(), f).dim() == 0, "quotient has a fixed vector")
        }
        Witness::LongCommutator { domain, slp, start, multipliers, bound } => {
            let a = ambient(g, domain)?;
            ensure(*bound >= a.required, &format!("bound {bound} below class bound {}", a.required))?;
            ensure(multipliers.len() == *bound, "commutator weight must be bound + 1")?;
            let vals = replay(&a, slp)?;
            let mut c = get(&vals, *start)?.clone();
            for &m in multipliers {
                c = commutator_of(&c, get(&vals, m)?, &a.field).map_err(|e| e.to_string())?;
            }
            ensure(!c.is_identity(&a.field), "iterated commutator is trivial")
        }
        Witness::NonCommutingPrimeParts { domain, slp, x, y } => {
            let a = ambient(g, domain)?;
            let vals = replay(&a, slp)?;
            let (vx, vy) = (get(&vals, *x)?, get(&vals, *y)?);
            let (Order::Finite(ox), Order::Finite(oy)) = (order_of(vx, &a.field)?, order_of(vy, &a.field)?) else {
                return Err("elements must have finite order".into());
            };
            ensure(ox.gcd(&oy) == 1, "orders are not coprime")?;
            ensure(!commutes(vx, vy, &a.field), "elements commute")
        }
        Witness::NonPrimePowerElement { domain, slp, component, word, prime } => {
            let a = ambient(g, domain)?;
            let vals = replay(&a, slp)?;
            let mut comp = Vec::new();
            for &c in component {
                let v = get(&vals, c)?;
                match order_of(v, &a.field)? {
                    Order::Finite(o) if is_power_of(o, *prime) => comp.push(v.clone()),
                    _ => return Err(format!("component element {c} is not a {prime}-element")),
                }
            }
            let e = eval_word(word, &comp, a.dim, &a.field)?;
            match order_of(&e, &a.field)? {
                Order::Finite(o) => ensure(!is_power_of(o, *prime), "word has prime-power order"),
                Order::Infinite => Ok(()),
            }
        }
        Witness::KernelNotCentral { pairs, congruence, relator, generator } => {
            let gs = semisimple_group(g, pairs)?;
            revalidate(&gs, congruence)?;
            let x = eval_word(relator, &gs.gens, g.dim, f)?;
            ensure(congruence.apply(&x).map_err(|e| e.to_string())?.is_identity(&congruence.target), "word is not in the kernel")?;
            let s = gs.gens.get(*generator).ok_or("bad generator index")?;
            ensure(!commutes(&x, s, f), "kernel element is central")
        }
        Witness::AdjointInfiniteOrder { slp, element } => {
            let a = ambient(g, &Domain::Adjoint)?;
            let vals = replay(&a, slp)?;
            ensure(order_of(get(&vals, *element)?, &a.field)? == Order::Infinite, "element has finite order")
        }
    }
}

/// Ok when the witness proves that `g` is infinite.
pub fn verify_infinite(g: &GroupSpec, w: &InfiniteWitness) -> Check {
    let f = &g.field;
    match w {
        InfiniteWitness::UnipotentPart { pairs, generator } => {
            ensure(f.characteristic() == 0, "unipotent elements have finite order in characteristic p")?;
            check_pairs(g, pairs)?;
            let p = pairs.get(*generator).ok_or("bad generator index")?;
            ensure(!p.u.is_identity(f), "unipotent part is trivial")
        }
        InfiniteWitness::KernelNontrivial { pairs, congruence, relator } => {
            ensure(f.characteristic() == 0, "kernel torsion-freeness needs characteristic 0")?;
            let gs = semisimple_group(g, pairs)?;
            ensure(pairs.iter().all(|p| p.u.is_identity(f)), "generators must be semisimple")?;
            revalidate(&gs, congruence)?;
            ensure(congruence.p > 2, "modulus must be odd")?;
            let x = eval_word(relator, &gs.gens, g.dim, f)?;
            ensure(!x.is_identity(f), "kernel element is trivial")?;
            ensure(congruence.apply(&x).map_err(|e| e.to_string())?.is_identity(&congruence.target), "word is not in the kernel")
        }
        InfiniteWitness::InfiniteOrder { slp, element } => {
            let vals = slp.eval(&g.gens, g.dim, f).map_err(|e| e.to_string())?;
            ensure(order_of(get(&vals, *element)?, f)? == Order::Infinite, "element has finite order")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nilpotency::{is_nilpotent, is_nilpotent_adjoint, Options};

    fn spec(f: &Field, rows: &[&[&[i64]]]) -> GroupSpec {
        let gens: Vec<Matrix> = rows.iter().map(|r| Matrix::from_ints(r, f)).collect();
        GroupSpec::new(f.clone(), gens[0].rows(), gens).unwrap()
    }

    fn s3(f: &Field) -> GroupSpec {
        spec(f, &[&[&[0, 1, 0], &[0, 0, 1], &[1, 0, 0]], &[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]]])
    }

    #[test]
    fn produced_witnesses_verify() {
        let o = Options::default();
        let q = Field::Rationals;
        let cases = [
            s3(&q),
            s3(&Field::prime(5).unwrap()),
            spec(&q, &[&[&[1, 1], &[0, 1]], &[&[-1, 0], &[0, 1]]]),
            spec(&q, &[&[&[2, 0], &[0, 1]], &[&[0, 1], &[1, 0]]]),
        ];
        for g in &cases {
            let v = is_nilpotent(g, &o).unwrap();
            let w = v.witness.expect("non-nilpotent");
            assert_eq!(verify_witness(g, &w), Ok(()), "{}", w.kind());
        }
        for g in [&cases[0], &cases[3]] {
            let w = is_nilpotent_adjoint(g, &o).unwrap().witness.unwrap();
            assert_eq!(verify_witness(g, &w), Ok(()), "{}", w.kind());
        }
    }

    #[test]
    fn witness_for_other_group_fails() {
        let q = Field::Rationals;
        let o = Options::default();
        let w = is_nilpotent(&s3(&q), &o).unwrap().witness.unwrap();
        let abelian = spec(&q, &[&[&[0, 1, 0], &[0, 0, 1], &[1, 0, 0]], &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]]);
        assert!(verify_witness(&abelian, &w).is_err());
        if let Witness::LongCommutator { domain, slp, start, multipliers, .. } = w {
            let short = Witness::LongCommutator {
                domain,
                slp,
                start,
                multipliers: multipliers[..1].to_vec(),
                bound: 1,
            };
            assert!(verify_witness(&s3(&q), &short).is_err());
        }
    }
}
