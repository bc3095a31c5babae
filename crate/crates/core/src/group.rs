//! Generated matrix groups, words, and straight-line programs that record how
//! every derived element was produced.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::fields::Field;
use crate::linalg::Matrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupSpec {
    pub field: Field,
    pub dim: usize,
    pub gens: Vec<Matrix>,
    pub invs: Vec<Matrix>,
}

impl GroupSpec {
    pub fn new(field: Field, dim: usize, gens: Vec<Matrix>) -> Result<GroupSpec> {
        let mut invs = Vec::with_capacity(gens.len());
        for (i, g) in gens.iter().enumerate() {
            if g.rows() != dim || g.cols() != dim {
                return Err(Error::Dimension(format!(
                    "generator {i} is {}x{}, expected {dim}x{dim}",
                    g.rows(),
                    g.cols()
                )));
            }
            invs.push(g.inverse(&field).map_err(|_| Error::SingularGenerator(i))?);
        }
        Ok(GroupSpec { field, dim, gens, invs })
    }

    pub fn identity(&self) -> Matrix {
        Matrix::identity(self.dim, &self.field)
    }

    pub fn ngens(&self) -> usize {
        self.gens.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.gens.iter().all(|g| g.is_identity(&self.field))
    }

    pub fn is_abelian(&self) -> bool {
        let f = &self.field;
        self.gens.iter().enumerate().all(|(i, a)| {
            self.gens[i + 1..].iter().all(|b| crate::linalg::commutes(a, b, f))
        })
    }

    /// Same field and dimension, new generators.
    pub fn with_gens(&self, gens: Vec<Matrix>) -> Result<GroupSpec> {
        GroupSpec::new(self.field.clone(), self.dim, gens)
    }
}

/// a⁻¹b⁻¹ab
pub fn commutator(a: &Matrix, ainv: &Matrix, b: &Matrix, binv: &Matrix, f: &Field) -> Matrix {
    ainv.mul(binv, f).mul(a, f).mul(b, f)
}

pub fn commutator_of(a: &Matrix, b: &Matrix, f: &Field) -> Result<Matrix> {
    Ok(commutator(a, &a.inverse(f)?, b, &b.inverse(f)?, f))
}

/// Generator indices (0-based) with exponents ±1, read left to right.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word(pub Vec<(usize, i8)>);

impl Word {
    pub fn eval(&self, gens: &[Matrix], invs: &[Matrix], dim: usize, f: &Field) -> Matrix {
        let mut acc = Matrix::identity(dim, f);
        for &(i, e) in &self.0 {
            acc = acc.mul(if e > 0 { &gens[i] } else { &invs[i] }, f);
        }
        acc
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|&(i, e)| (i, -e)).collect())
    }

    pub fn concat(&self, o: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&o.0);
        Word(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Step {
    Identity,
    Gen(usize),
    Mul(usize, usize),
    Inv(usize),
    Pow(usize, u128),
}

/// Straight-line program; step k may reference only steps < k.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Slp {
    pub steps: Vec<Step>,
}

impl Slp {
    pub fn eval(&self, gens: &[Matrix], dim: usize, f: &Field) -> Result<Vec<Matrix>> {
        let mut vals: Vec<Matrix> = Vec::with_capacity(self.steps.len());
        for (k, s) in self.steps.iter().enumerate() {
            let check = |i: usize| {
                if i < k {
                    Ok(i)
                } else {
                    Err(Error::Precondition(format!("step {k} references step {i}")))
                }
            };
            let v = match *s {
                Step::Identity => Matrix::identity(dim, f),
                Step::Gen(i) => gens
                    .get(i)
                    .cloned()
                    .ok_or_else(|| Error::Precondition(format!("no generator {i}")))?,
                Step::Mul(a, b) => vals[check(a)?].mul(&vals[check(b)?], f),
                Step::Inv(a) => vals[check(a)?].inverse(f)?,
                Step::Pow(a, e) => vals[check(a)?].pow(e, f),
            };
            vals.push(v);
        }
        Ok(vals)
    }
}

/// Builder that evaluates while recording; indices `0..gens.len()` are the
/// generators themselves.
#[derive(Clone, Debug)]
pub struct Program {
    pub field: Field,
    pub dim: usize,
    ngens: usize,
    steps: Vec<Step>,
    values: Vec<Matrix>,
    inv_of: HashMap<usize, usize>,
}

pub type Ref = usize;

impl Program {
    pub fn new(g: &GroupSpec) -> Program {
        let mut p = Program {
            field: g.field.clone(),
            dim: g.dim,
            ngens: g.ngens(),
            steps: Vec::new(),
            values: Vec::new(),
            inv_of: HashMap::new(),
        };
        for (i, m) in g.gens.iter().enumerate() {
            p.steps.push(Step::Gen(i));
            p.values.push(m.clone());
        }
        for (i, m) in g.invs.iter().enumerate() {
            p.steps.push(Step::Inv(i));
            p.values.push(m.clone());
            let r = p.values.len() - 1;
            p.inv_of.insert(i, r);
            p.inv_of.insert(r, i);
        }
        p
    }

    pub fn value(&self, r: Ref) -> &Matrix {
        &self.values[r]
    }

    fn push(&mut self, s: Step, v: Matrix) -> Ref {
        self.steps.push(s);
        self.values.push(v);
        self.values.len() - 1
    }

    pub fn identity(&mut self) -> Ref {
        let id = Matrix::identity(self.dim, &self.field);
        self.push(Step::Identity, id)
    }

    pub fn mul(&mut self, a: Ref, b: Ref) -> Ref {
        let v = self.values[a].mul(&self.values[b], &self.field);
        self.push(Step::Mul(a, b), v)
    }

    pub fn inv(&mut self, a: Ref) -> Ref {
        if let Some(&r) = self.inv_of.get(&a) {
            return r;
        }
        let v = self.values[a].inverse(&self.field).expect("group elements are invertible");
        let r = self.push(Step::Inv(a), v);
        self.inv_of.insert(a, r);
        self.inv_of.insert(r, a);
        r
    }

    /// [a, b] = a⁻¹b⁻¹ab
    pub fn comm(&mut self, a: Ref, b: Ref) -> Ref {
        let ai = self.inv(a);
        let bi = self.inv(b);
        let x = self.mul(ai, bi);
        let y = self.mul(x, a);
        self.mul(y, b)
    }

    pub fn pow(&mut self, a: Ref, e: u128) -> Ref {
        let v = self.values[a].pow(e, &self.field);
        self.push(Step::Pow(a, e), v)
    }

    /// Records a word over the generators.
    pub fn word(&mut self, w: &Word) -> Ref {
        let ngens = self.ngens;
        let mut acc = self.identity();
        for &(i, e) in &w.0 {
            let g = if e > 0 { i } else { ngens + i };
            acc = self.mul(acc, g);
        }
        acc
    }

    /// Compact program containing only what `roots` depend on, with the new
    /// indices of the roots.
    pub fn extract(&self, roots: &[Ref]) -> (Slp, Vec<usize>) {
        let mut need = vec![false; self.steps.len()];
        let mut stack: Vec<usize> = roots.to_vec();
        while let Some(k) = stack.pop() {
            if need[k] {
                continue;
            }
            need[k] = true;
            match self.steps[k] {
                Step::Mul(a, b) => stack.extend([a, b]),
                Step::Inv(a) | Step::Pow(a, _) => stack.push(a),
                _ => {}
            }
        }
        let mut remap = vec![usize::MAX; self.steps.len()];
        let mut steps = Vec::new();
        for k in 0..self.steps.len() {
            if !need[k] {
                continue;
            }
            let s = match self.steps[k] {
                Step::Identity => Step::Identity,
                Step::Gen(i) => Step::Gen(i),
                Step::Inv(a) => Step::Inv(remap[a]),
                Step::Mul(a, b) => Step::Mul(remap[a], remap[b]),
                Step::Pow(a, e) => Step::Pow(remap[a], e),
            };
            steps.push(s);
            remap[k] = steps.len() - 1;
        }
        (Slp { steps }, roots.iter().map(|&r| remap[r]).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d8() -> GroupSpec {
        let f = Field::Rationals;
        let r = Matrix::from_ints(&[&[0, -1], &[1, 0]], &f);
        let s = Matrix::from_ints(&[&[1, 0], &[0, -1]], &f);
        GroupSpec::new(f, 2, vec![r, s]).unwrap()
    }

    #[test]
    fn singular_generator_rejected() {
        let f = Field::Rationals;
        let z = Matrix::from_ints(&[&[1, 1], &[1, 1]], &f);
        assert_eq!(GroupSpec::new(f, 2, vec![z]), Err(Error::SingularGenerator(0)));
    }

    #[test]
    fn extracted_program_replays() {
        let g = d8();
        let mut p = Program::new(&g);
        let c = p.comm(0, 1);
        let junk = p.mul(0, 0);
        let w = p.pow(c, 3);
        let _ = junk;
        let (slp, idx) = p.extract(&[c, w]);
        let vals = slp.eval(&g.gens, 2, &g.field).unwrap();
        assert_eq!(&vals[idx[0]], p.value(c));
        assert_eq!(&vals[idx[1]], p.value(w));
        assert!(slp.steps.len() < 10);
    }

    #[test]
    fn word_evaluation() {
        let g = d8();
        let w = Word(vec![(0, 1), (1, -1), (0, 1)]);
        let m = w.eval(&g.gens, &g.invs, 2, &g.field);
        let mut p = Program::new(&g);
        let r = p.word(&w);
        assert_eq!(p.value(r), &m);
        assert!(w.concat(&w.inverse()).eval(&g.gens, &g.invs, 2, &g.field).is_identity(&g.field));
    }
}
