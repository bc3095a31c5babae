//! Sylow check for groups of finite-order elements: split every element into
//! prime parts, test cross-prime commutation, close each prime component.

use std::collections::{BTreeMap, HashMap, HashSet};

use num_integer::Integer;

use crate::arith;
use crate::error::{Error, Result};
use crate::group::{Program, Ref, Word};
use crate::linalg::Matrix;
use crate::splitting::{finite_order, Order};

use super::series::{test_series, Chain, Series};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SylowComponent {
    pub prime: u64,
    pub gens: Vec<Matrix>,
    pub order: u128,
}

/// G = ∏ P_p with each P_p a p-group, pairwise commuting. When
/// `modulo_center` is set the components are preimages of the Sylow
/// subgroups of G/Z(G), and `order` refers to that quotient.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SylowSystem {
    pub components: Vec<SylowComponent>,
    pub modulo_center: bool,
    pub central: Vec<Matrix>,
    /// Unipotent generator parts, outside every p-primary component in characteristic 0.
    pub unipotent: Vec<Matrix>,
}

impl SylowSystem {
    pub fn order(&self) -> u128 {
        self.components.iter().map(|c| c.order).product()
    }

    pub fn component(&self, p: u64) -> Option<&SylowComponent> {
        self.components.iter().find(|c| c.prime == p)
    }
}

pub(crate) enum CoreWitness {
    Long { start: Ref, multipliers: Vec<Ref> },
    NonCommuting { x: Ref, y: Ref },
    NonPrimePower { component: Vec<Ref>, word: Word, prime: u64 },
    InfiniteOrder(Ref),
}

pub(crate) enum Core {
    /// `refs[i]` generates `sylow.components[i]`.
    Nilpotent { sylow: SylowSystem, chain: Option<Chain>, refs: Vec<Vec<Ref>> },
    Not(CoreWitness),
}

/// u ≡ 1 mod p^a and u ≡ 0 mod N/p^a.
fn crt_exponent(order: u128, pa: u128) -> u128 {
    let m = order / pa;
    let r = (m % pa) as i128;
    let e = r.extended_gcd(&(pa as i128));
    let inv = e.x.rem_euclid(pa as i128) as u128;
    (m % order) * inv % order
}

pub(crate) fn prime_parts(prog: &mut Program, x: Ref, order: u128) -> Vec<(u64, Ref)> {
    let fac = arith::factor_u128(order);
    if fac.len() == 1 {
        return vec![(fac[0].0 as u64, x)];
    }
    fac.iter()
        .map(|&(p, a)| {
            let u = crt_exponent(order, p.pow(a));
            (p as u64, prog.pow(x, u))
        })
        .collect()
}

/// BFS tree: `parent[v] = (u, j)` when element v = element u · gen j.
pub(crate) type Tree = Vec<Option<(usize, usize)>>;

/// BFS closure with tree words; `Err` past `cap` elements.
pub(crate) fn closure_with_words(
    gens: &[Matrix],
    dim: usize,
    f: &crate::fields::Field,
    cap: usize,
) -> Result<(Vec<Matrix>, Tree)> {
    let id = Matrix::identity(dim, f);
    let mut index: HashMap<Matrix, usize> = HashMap::from([(id.clone(), 0)]);
    let mut elems = vec![id];
    let mut parent = vec![None];
    let mut head = 0;
    while head < elems.len() {
        for (j, g) in gens.iter().enumerate() {
            let w = elems[head].mul(g, f);
            if !index.contains_key(&w) {
                if elems.len() >= cap {
                    return Err(Error::CapExceeded(cap));
                }
                index.insert(w.clone(), elems.len());
                elems.push(w);
                parent.push(Some((head, j)));
            }
        }
        head += 1;
    }
    Ok((elems, parent))
}

fn tree_word(parent: &[Option<(usize, usize)>], v: usize) -> Word {
    let mut w = Vec::new();
    let mut cur = v;
    while let Some((p, j)) = parent[cur] {
        w.push((j, 1));
        cur = p;
    }
    w.reverse();
    Word(w)
}

fn is_power_of(n: u128, p: u64) -> bool {
    let mut n = n;
    while n.is_multiple_of(p as u128) {
        n /= p as u128;
    }
    n == 1
}

pub(crate) fn sylow_check(prog: &mut Program, elems: &[Ref], cap: usize) -> Result<Core> {
    let f = prog.field.clone();
    let mut seen = HashSet::new();
    let mut comps: BTreeMap<u64, Vec<Ref>> = BTreeMap::new();
    let mut comp_seen: HashSet<Matrix> = HashSet::new();
    for &x in elems {
        let v = prog.value(x);
        if v.is_identity(&f) || !seen.insert(v.clone()) {
            continue;
        }
        let ord = match finite_order(v, &f)? {
            Order::Finite(k) => k,
            Order::Infinite => return Ok(Core::Not(CoreWitness::InfiniteOrder(x))),
        };
        for (p, part) in prime_parts(prog, x, ord) {
            if comp_seen.insert(prog.value(part).clone()) {
                comps.entry(p).or_default().push(part);
            }
        }
    }
    let primes: Vec<u64> = comps.keys().copied().collect();
    for (i, p) in primes.iter().enumerate() {
        for q in &primes[i + 1..] {
            for &x in &comps[p] {
                for &y in &comps[q] {
                    if !crate::linalg::commutes(prog.value(x), prog.value(y), &f) {
                        return Ok(Core::Not(CoreWitness::NonCommuting { x, y }));
                    }
                }
            }
        }
    }
    let mut sylow = SylowSystem::default();
    let mut all_refs = Vec::new();
    for (p, refs) in comps {
        let gens: Vec<Matrix> = refs.iter().map(|&r| prog.value(r).clone()).collect();
        let (all, parent) = closure_with_words(&gens, prog.dim, &f, cap)?;
        let size = all.len() as u128;
        if !is_power_of(size, p) {
            for (v, m) in all.iter().enumerate() {
                let o = finite_order(m, &f)?.finite().expect("closure elements have finite order");
                if !is_power_of(o, p) {
                    let word = tree_word(&parent, v);
                    return Ok(Core::Not(CoreWitness::NonPrimePower { component: refs, word, prime: p }));
                }
            }
            unreachable!("a group whose order has a prime divisor r ≠ p has an element of order r");
        }
        sylow.components.push(SylowComponent { prime: p, gens, order: size });
        all_refs.push(refs);
    }
    Ok(Core::Nilpotent { sylow, chain: None, refs: all_refs })
}

/// Series first, then the Sylow check on generators plus chain elements.
pub(crate) fn finite_core(
    prog: &mut Program,
    gens: &[Ref],
    k: usize,
    index_cap: usize,
    closure_cap: usize,
    notes: &mut Vec<String>,
) -> Result<Core> {
    let mut elems = gens.to_vec();
    let chain = match test_series(prog, gens, k, index_cap) {
        Series::Long { start, multipliers } => {
            return Ok(Core::Not(CoreWitness::Long { start, multipliers }))
        }
        Series::Abandoned(reason) => {
            notes.push(format!("series abandoned: {reason}"));
            None
        }
        Series::Chain(c) => {
            elems.extend(c.elements());
            Some(c)
        }
    };
    Ok(match sylow_check(prog, &elems, closure_cap)? {
        Core::Nilpotent { sylow, refs, .. } => Core::Nilpotent { sylow, chain, refs },
        other => other,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn crt_parts_multiply_back() {
        for n in [6u128, 12, 30, 360, 1001] {
            for (p, a) in arith::factor_u128(n) {
                let u = crt_exponent(n, p.pow(a));
                assert_eq!(u % p.pow(a), 1);
                assert_eq!(u % (n / p.pow(a)), 0);
            }
        }
    }
}
