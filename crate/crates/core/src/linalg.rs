//! Dense exact linear algebra over any [`Field`]. Matrices act on column
//! vectors; subspaces are stored as row bases in reduced row echelon form.

use crate::error::{Error, Result};
use crate::fields::{Elem, Field, Poly};

pub type Vector = Vec<Elem>;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Elem>) -> Result<Matrix> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<Elem>>) -> Result<Matrix> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Matrix::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn from_ints(rows: &[&[i64]], f: &Field) -> Matrix {
        let data = rows.iter().flat_map(|r| r.iter().map(|&k| f.from_i64(k))).collect();
        Matrix::new(rows.len(), rows[0].len(), data).expect("rectangular")
    }

    pub fn zeros(rows: usize, cols: usize, f: &Field) -> Matrix {
        Matrix { rows, cols, data: vec![f.zero(); rows * cols] }
    }

    pub fn identity(n: usize, f: &Field) -> Matrix {
        let mut m = Matrix::zeros(n, n, f);
        for i in 0..n {
            m.data[i * n + i] = f.one();
        }
        m
    }

    pub fn scalar(n: usize, e: &Elem, f: &Field) -> Matrix {
        let mut m = Matrix::zeros(n, n, f);
        for i in 0..n {
            m.data[i * n + i] = e.clone();
        }
        m
    }

    pub fn diag(entries: &[Elem], f: &Field) -> Matrix {
        let n = entries.len();
        let mut m = Matrix::zeros(n, n, f);
        for (i, e) in entries.iter().enumerate() {
            m.data[i * n + i] = e.clone();
        }
        m
    }

    /// I + E_{ij}, 0-based.
    pub fn elementary(n: usize, i: usize, j: usize, f: &Field) -> Matrix {
        let mut m = Matrix::identity(n, f);
        m.data[i * n + j] = f.add(&m.data[i * n + j], &f.one());
        m
    }

    /// Permutation matrix sending e_j to e_{perm[j]}.
    pub fn permutation(perm: &[usize], f: &Field) -> Matrix {
        let n = perm.len();
        let mut m = Matrix::zeros(n, n, f);
        for (j, &i) in perm.iter().enumerate() {
            m.data[i * n + j] = f.one();
        }
        m
    }

    pub fn block_diag(blocks: &[Matrix], f: &Field) -> Matrix {
        let n: usize = blocks.iter().map(|b| b.rows).sum();
        let mut m = Matrix::zeros(n, n, f);
        let mut off = 0;
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    m.data[(off + i) * n + off + j] = b.get(i, j).clone();
                }
            }
            off += b.rows;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Elem] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> &Elem {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, e: Elem) {
        self.data[i * self.cols + j] = e;
    }

    pub fn row(&self, i: usize) -> &[Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row_vectors(&self) -> Vec<Vector> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        Matrix { rows: self.cols, cols: self.rows, data }
    }

    pub fn map<F: FnMut(&Elem) -> Result<Elem>>(&self, mut g: F) -> Result<Matrix> {
        let data = self.data.iter().map(&mut g).collect::<Result<Vec<_>>>()?;
        Ok(Matrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn add(&self, o: &Matrix, f: &Field) -> Matrix {
        debug_assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        let data = self.data.iter().zip(&o.data).map(|(a, b)| f.add(a, b)).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, o: &Matrix, f: &Field) -> Matrix {
        debug_assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        let data = self.data.iter().zip(&o.data).map(|(a, b)| f.sub(a, b)).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, s: &Elem, f: &Field) -> Matrix {
        let data = self.data.iter().map(|a| f.mul(a, s)).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn mul(&self, o: &Matrix, f: &Field) -> Matrix {
        debug_assert_eq!(self.cols, o.rows);
        let mut data = Vec::with_capacity(self.rows * o.cols);
        for i in 0..self.rows {
            for j in 0..o.cols {
                let mut acc = f.zero();
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    if f.is_zero(a) {
                        continue;
                    }
                    let b = o.get(k, j);
                    if !f.is_zero(b) {
                        acc = f.add(&acc, &f.mul(a, b));
                    }
                }
                data.push(acc);
            }
        }
        Matrix { rows: self.rows, cols: o.cols, data }
    }

    pub fn mul_vec(&self, v: &[Elem], f: &Field) -> Vector {
        (0..self.rows)
            .map(|i| {
                self.row(i).iter().zip(v).fold(f.zero(), |acc, (a, b)| {
                    if f.is_zero(a) || f.is_zero(b) {
                        acc
                    } else {
                        f.add(&acc, &f.mul(a, b))
                    }
                })
            })
            .collect()
    }

    pub fn is_identity(&self, f: &Field) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let e = self.get(i, j);
                    if i == j { f.is_one(e) } else { f.is_zero(e) }
                })
            })
    }

    pub fn is_zero(&self, f: &Field) -> bool {
        self.data.iter().all(|e| f.is_zero(e))
    }

    pub fn is_scalar(&self, f: &Field) -> bool {
        let d = self.get(0, 0);
        (0..self.rows).all(|i| {
            (0..self.cols).all(|j| if i == j { self.get(i, j) == d } else { f.is_zero(self.get(i, j)) })
        })
    }

    pub fn inverse(&self, f: &Field) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::Dimension("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut a: Vec<Vector> = self.row_vectors();
        let mut inv: Vec<Vector> = Matrix::identity(n, f).row_vectors();
        for c in 0..n {
            let piv = (c..n).find(|&r| !f.is_zero(&a[r][c])).ok_or(Error::Singular)?;
            a.swap(c, piv);
            inv.swap(c, piv);
            let s = f.inv(&a[c][c]).expect("nonzero pivot");
            scale_row(&mut a[c], &s, f);
            scale_row(&mut inv[c], &s, f);
            for r in 0..n {
                if r != c && !f.is_zero(&a[r][c]) {
                    let k = a[r][c].clone();
                    let (pa, pi) = (a[c].clone(), inv[c].clone());
                    axpy(&mut a[r], &k, &pa, f);
                    axpy(&mut inv[r], &k, &pi, f);
                }
            }
        }
        Matrix::from_rows(inv)
    }

    pub fn determinant(&self, f: &Field) -> Elem {
        let n = self.rows;
        let mut a = self.row_vectors();
        let mut det = f.one();
        for c in 0..n {
            let Some(piv) = (c..n).find(|&r| !f.is_zero(&a[r][c])) else {
                return f.zero();
            };
            if piv != c {
                a.swap(c, piv);
                det = f.neg(&det);
            }
            det = f.mul(&det, &a[c][c]);
            let s = f.inv(&a[c][c]).unwrap();
            for r in c + 1..n {
                if !f.is_zero(&a[r][c]) {
                    let k = f.mul(&a[r][c], &s);
                    let pc = a[c].clone();
                    axpy(&mut a[r], &k, &pc, f);
                }
            }
        }
        det
    }

    pub fn pow(&self, e: u128, f: &Field) -> Matrix {
        let mut acc = Matrix::identity(self.rows, f);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, f);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base, f);
            }
        }
        acc
    }

    pub fn kron(&self, o: &Matrix, f: &Field) -> Matrix {
        let (r, c) = (self.rows * o.rows, self.cols * o.cols);
        let mut data = Vec::with_capacity(r * c);
        for i in 0..r {
            for j in 0..c {
                let a = self.get(i / o.rows, j / o.cols);
                let b = o.get(i % o.rows, j % o.cols);
                data.push(f.mul(a, b));
            }
        }
        Matrix { rows: r, cols: c, data }
    }

    /// Evaluates `p` at this (square) matrix by Horner's rule.
    pub fn eval_poly(&self, p: &Poly, f: &Field) -> Matrix {
        let n = self.rows;
        let mut acc = Matrix::zeros(n, n, f);
        for c in p.coeffs().iter().rev() {
            acc = acc.mul(self, f).add(&Matrix::scalar(n, c, f), f);
        }
        acc
    }

    pub fn to_string_with(&self, fmt_elem: impl Fn(&Elem) -> String) -> String {
        let rows: Vec<String> = (0..self.rows)
            .map(|i| {
                let r: Vec<String> = self.row(i).iter().map(&fmt_elem).collect();
                format!("[{}]", r.join(", "))
            })
            .collect();
        format!("[{}]", rows.join(", "))
    }
}

fn scale_row(r: &mut [Elem], s: &Elem, f: &Field) {
    for e in r.iter_mut() {
        if !f.is_zero(e) {
            *e = f.mul(e, s);
        }
    }
}

/// r ← r − k·p
fn axpy(r: &mut [Elem], k: &Elem, p: &[Elem], f: &Field) {
    for (x, y) in r.iter_mut().zip(p) {
        if !f.is_zero(y) {
            *x = f.sub(x, &f.mul(k, y));
        }
    }
}

pub fn commutes(a: &Matrix, b: &Matrix, f: &Field) -> bool {
    a.mul(b, f) == b.mul(a, f)
}

/// Reduced row echelon form; returns the nonzero rows and their pivot columns.
pub fn rref(rows: Vec<Vector>, cols: usize, f: &Field) -> (Vec<Vector>, Vec<usize>) {
    let mut a = rows;
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..a.len()).find(|&i| !f.is_zero(&a[i][c])) else {
            continue;
        };
        a.swap(r, piv);
        let s = f.inv(&a[r][c]).unwrap();
        scale_row(&mut a[r], &s, f);
        let pr = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i != r && !f.is_zero(&row[c]) {
                let k = row[c].clone();
                axpy(row, &k, &pr, f);
            }
        }
        pivots.push(c);
        r += 1;
        if r == a.len() {
            break;
        }
    }
    a.truncate(r);
    (a, pivots)
}

pub fn rank(m: &Matrix, f: &Field) -> usize {
    rref(m.row_vectors(), m.cols, f).1.len()
}

/// Basis of {v : A v = 0} for the given rows of A.
pub fn nullspace(rows: Vec<Vector>, cols: usize, f: &Field) -> Vec<Vector> {
    let (r, pivots) = rref(rows, cols, f);
    let mut out = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![f.zero(); cols];
        v[free] = f.one();
        for (row, &pc) in r.iter().zip(&pivots) {
            v[pc] = f.neg(&row[free]);
        }
        out.push(v);
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    n: usize,
    basis: Vec<Vector>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(n: usize) -> Subspace {
        Subspace { n, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(n: usize, f: &Field) -> Subspace {
        Subspace::span(Matrix::identity(n, f).row_vectors(), n, f)
    }

    pub fn span(vectors: Vec<Vector>, n: usize, f: &Field) -> Subspace {
        let (basis, pivots) = rref(vectors, n, f);
        Subspace { n, basis, pivots }
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Non-pivot coordinates, which index a basis of V/W.
    pub fn complement_coords(&self) -> Vec<usize> {
        (0..self.n).filter(|c| !self.pivots.contains(c)).collect()
    }

    /// Representative of v + W with zero pivot coordinates.
    pub fn reduce(&self, v: &[Elem], f: &Field) -> Vector {
        let mut v = v.to_vec();
        for (row, &pc) in self.basis.iter().zip(&self.pivots) {
            if !f.is_zero(&v[pc]) {
                let k = v[pc].clone();
                axpy(&mut v, &k, row, f);
            }
        }
        v
    }

    pub fn contains(&self, v: &[Elem], f: &Field) -> bool {
        self.reduce(v, f).iter().all(|e| f.is_zero(e))
    }

    pub fn contains_space(&self, o: &Subspace, f: &Field) -> bool {
        o.basis.iter().all(|v| self.contains(v, f))
    }

    pub fn is_invariant(&self, g: &Matrix, f: &Field) -> bool {
        self.basis.iter().all(|v| self.contains(&g.mul_vec(v, f), f))
    }
}

/// Common fixed vectors ∩ ker(g_i − 1).
pub fn fixed_space(gens: &[Matrix], n: usize, f: &Field) -> Subspace {
    let id = Matrix::identity(n, f);
    let rows: Vec<Vector> = gens.iter().flat_map(|g| g.sub(&id, f).row_vectors()).collect();
    if rows.is_empty() {
        return Subspace::full(n, f);
    }
    Subspace::span(nullspace(rows, n, f), n, f)
}

/// Induced action on V/W in the non-pivot coordinates of W.
pub fn quotient_action(gens: &[Matrix], w: &Subspace, f: &Field) -> Result<Vec<Matrix>> {
    let comp = w.complement_coords();
    let mut out = Vec::with_capacity(gens.len());
    for (i, g) in gens.iter().enumerate() {
        if !w.is_invariant(g, f) {
            return Err(Error::NotInvariant(i));
        }
        let mut m = Matrix::zeros(comp.len(), comp.len(), f);
        for (cj, &j) in comp.iter().enumerate() {
            let img = w.reduce(&g.column(j), f);
            for (ci, &i) in comp.iter().enumerate() {
                m.set(ci, cj, img[i].clone());
            }
        }
        out.push(m);
    }
    Ok(out)
}

/// Lifts quotient coordinates (indexed by `w.complement_coords()`) back to V.
pub fn lift_from_quotient(v: &[Elem], w: &Subspace, f: &Field) -> Vector {
    let mut out = vec![f.zero(); w.ambient()];
    for (e, c) in v.iter().zip(w.complement_coords()) {
        out[c] = e.clone();
    }
    out
}

/// Incremental span membership with coordinates relative to the inserted
/// independent vectors.
#[derive(Clone, Debug)]
pub struct SpanSolver {
    len: usize,
    rows: Vec<(Vector, usize, Vector)>,
}

impl SpanSolver {
    pub fn new(len: usize) -> SpanSolver {
        SpanSolver { len, rows: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &[Elem], f: &Field) -> (Vector, Vector) {
        let mut v = v.to_vec();
        let k = self.rows.len();
        let mut comb = vec![f.zero(); k];
        for (row, pc, rc) in &self.rows {
            if !f.is_zero(&v[*pc]) {
                let c = v[*pc].clone();
                axpy(&mut v, &c, row, f);
                for (x, y) in comb.iter_mut().zip(rc) {
                    if !f.is_zero(y) {
                        *x = f.add(x, &f.mul(&c, y));
                    }
                }
            }
        }
        (v, comb)
    }

    /// Coordinates of `v` in the inserted vectors, if `v` lies in their span.
    pub fn coords(&self, v: &[Elem], f: &Field) -> Option<Vector> {
        let (r, comb) = self.reduce(v, f);
        r.iter().all(|e| f.is_zero(e)).then_some(comb)
    }

    /// Inserts `v` if independent; otherwise returns its coordinates.
    pub fn insert(&mut self, v: &[Elem], f: &Field) -> Option<Vector> {
        debug_assert_eq!(v.len(), self.len);
        let (mut r, comb) = self.reduce(v, f);
        let Some(pc) = r.iter().position(|e| !f.is_zero(e)) else {
            return Some(comb);
        };
        // r = v − Σ comb_j·b_j
        let mut rc: Vector = comb.iter().map(|c| f.neg(c)).collect();
        rc.push(f.one());
        let s = f.inv(&r[pc]).unwrap();
        scale_row(&mut r, &s, f);
        scale_row(&mut rc, &s, f);
        for (_, _, c) in self.rows.iter_mut() {
            c.push(f.zero());
        }
        self.rows.push((r, pc, rc));
        None
    }
}

/// Products of enveloping-algebra basis elements, each as a word in generator
/// indices read left to right.
#[derive(Clone, Debug)]
pub struct AlgebraBasis {
    pub mats: Vec<Matrix>,
    pub words: Vec<Vec<usize>>,
    solver: SpanSolver,
}

impl AlgebraBasis {
    pub fn dim(&self) -> usize {
        self.mats.len()
    }

    pub fn coords(&self, x: &Matrix, f: &Field) -> Option<Vector> {
        self.solver.coords(x.entries(), f)
    }
}

/// Breadth-first spin-up of {1} under right multiplication by the generators.
pub fn spin_basis(gens: &[Matrix], n: usize, f: &Field) -> AlgebraBasis {
    let mut solver = SpanSolver::new(n * n);
    let id = Matrix::identity(n, f);
    solver.insert(id.entries(), f);
    let mut mats = vec![id];
    let mut words: Vec<Vec<usize>> = vec![Vec::new()];
    let mut head = 0;
    while head < mats.len() {
        for (i, g) in gens.iter().enumerate() {
            let c = mats[head].mul(g, f);
            if solver.insert(c.entries(), f).is_none() {
                let mut w = words[head].clone();
                w.push(i);
                mats.push(c);
                words.push(w);
            }
        }
        head += 1;
    }
    AlgebraBasis { mats, words, solver }
}

/// Monic minimal polynomial via Krylov annihilators of the standard basis.
pub fn minimal_polynomial(a: &Matrix, f: &Field) -> Poly {
    let n = a.rows();
    let mut acc = Poly::one(f);
    let mut covered = Subspace::zero(n);
    for i in 0..n {
        let mut e = vec![f.zero(); n];
        e[i] = f.one();
        if covered.contains(&e, f) {
            continue;
        }
        let mut solver = SpanSolver::new(n);
        let mut krylov = vec![e.clone()];
        let mut v = e;
        let ann = loop {
            if let Some(c) = solver.insert(&v, f) {
                let mut coeffs: Vec<Elem> = c.iter().map(|x| f.neg(x)).collect();
                coeffs.push(f.one());
                break Poly::new(coeffs);
            }
            v = a.mul_vec(&v, f);
            krylov.push(v.clone());
        };
        krylov.pop();
        let mut span = covered.basis().to_vec();
        span.extend(krylov);
        covered = Subspace::span(span, n, f);
        acc = acc.lcm(&ann, f);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::rat;
    use proptest::prelude::*;

    fn q() -> Field {
        Field::Rationals
    }

    #[test]
    fn inverse_examples() {
        let f = q();
        assert_eq!(Matrix::identity(3, &f).inverse(&f).unwrap(), Matrix::identity(3, &f));
        let a = Matrix::from_ints(&[&[1, 1], &[0, 1]], &f);
        assert_eq!(a.inverse(&f).unwrap(), Matrix::from_ints(&[&[1, -1], &[0, 1]], &f));
        let s = Matrix::from_ints(&[&[1, 1], &[1, 1]], &f);
        assert_eq!(s.inverse(&f), Err(Error::Singular));
    }

    #[test]
    fn minimal_polynomial_examples() {
        let f = q();
        assert_eq!(minimal_polynomial(&Matrix::identity(3, &f), &f), Poly::from_ints(&[-1, 1], &f));
        let j = Matrix::from_ints(&[&[1, 1], &[0, 1]], &f);
        assert_eq!(minimal_polynomial(&j, &f), Poly::from_ints(&[1, -2, 1], &f));
        let r = Matrix::from_ints(&[&[0, -1], &[1, 0]], &f);
        let m = minimal_polynomial(&r, &f);
        assert!(r.eval_poly(&m, &f).is_zero(&f));
        assert_eq!(m, Poly::from_ints(&[1, 0, 1], &f));
    }

    #[test]
    fn fixed_space_examples() {
        let f = q();
        assert_eq!(fixed_space(&[Matrix::identity(3, &f)], 3, &f).dim(), 3);
        let g = [Matrix::elementary(3, 0, 1, &f), Matrix::elementary(3, 1, 2, &f)];
        let w = fixed_space(&g, 3, &f);
        assert_eq!(w, Subspace::span(vec![vec![f.one(), f.zero(), f.zero()]], 3, &f));
        let h = [Matrix::elementary(2, 0, 1, &f), Matrix::elementary(2, 1, 0, &f)];
        assert_eq!(fixed_space(&h, 2, &f).dim(), 0);
    }

    #[test]
    fn quotient_action_examples() {
        let f = q();
        let g = vec![Matrix::elementary(2, 0, 1, &f)];
        assert_eq!(quotient_action(&g, &Subspace::zero(2), &f).unwrap(), g);
        let e1 = Subspace::span(vec![vec![f.one(), f.zero()]], 2, &f);
        assert_eq!(
            quotient_action(&g, &e1, &f).unwrap(),
            vec![Matrix::identity(1, &f)]
        );
        let d = vec![Matrix::diag(&[f.one(), f.from_i64(2)], &f)];
        let e2 = Subspace::span(vec![vec![f.zero(), f.one()]], 2, &f);
        assert_eq!(quotient_action(&d, &e2, &f).unwrap(), vec![Matrix::identity(1, &f)]);
        let diag_line = Subspace::span(vec![vec![f.one(), f.one()]], 2, &f);
        assert_eq!(quotient_action(&d, &diag_line, &f), Err(Error::NotInvariant(0)));
    }

    #[test]
    fn spin_basis_examples() {
        let f = q();
        assert_eq!(spin_basis(&[Matrix::identity(2, &f)], 2, &f).dim(), 1);
        let d = Matrix::diag(&[f.one(), f.from_i64(2)], &f);
        assert_eq!(spin_basis(&[d], 2, &f).dim(), 2);
        let f5 = Field::prime(5).unwrap();
        let gens = [
            Matrix::from_ints(&[&[2, 0], &[0, 1]], &f5),
            Matrix::from_ints(&[&[0, 1], &[1, 0]], &f5),
        ];
        assert_eq!(spin_basis(&gens, 2, &f5).dim(), 4);
    }

    #[test]
    fn kron_examples() {
        let f = q();
        let i2 = Matrix::identity(2, &f);
        assert_eq!(i2.kron(&Matrix::identity(3, &f), &f), Matrix::identity(6, &f));
        let (a, b) = (Elem::Q(rat(3, 1)), Elem::Q(rat(-1, 2)));
        let d = Matrix::diag(&[a.clone(), b.clone()], &f);
        assert_eq!(d.kron(&i2, &f), Matrix::diag(&[a.clone(), a, b.clone(), b], &f));
    }

    fn small_matrix(n: usize) -> impl Strategy<Value = Vec<i64>> {
        prop::collection::vec(-3i64..4, n * n)
    }

    fn build(v: &[i64], n: usize, f: &Field) -> Matrix {
        Matrix::new(n, n, v.iter().map(|&k| f.from_i64(k)).collect()).unwrap()
    }

    fn fields() -> Vec<Field> {
        use num_bigint::BigInt;
        vec![
            Field::Rationals,
            Field::prime(5).unwrap(),
            Field::finite(2, 2, 3).unwrap(),
            Field::number(vec![BigInt::from(-2), BigInt::from(0), BigInt::from(1)]).unwrap(),
        ]
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]
        #[test]
        fn minpoly_annihilates(v in small_matrix(3)) {
            for f in fields() {
                let a = build(&v, 3, &f);
                prop_assert!(a.eval_poly(&minimal_polynomial(&a, &f), &f).is_zero(&f));
            }
        }

        #[test]
        fn kron_mixed_product(a in small_matrix(2), b in small_matrix(2), c in small_matrix(2), d in small_matrix(2)) {
            let f = q();
            let (a, b, c, d) = (build(&a, 2, &f), build(&b, 2, &f), build(&c, 2, &f), build(&d, 2, &f));
            prop_assert_eq!(a.kron(&b, &f).mul(&c.kron(&d, &f), &f), a.mul(&c, &f).kron(&b.mul(&d, &f), &f));
        }

        #[test]
        fn fixed_space_dimension(a in small_matrix(3), b in small_matrix(3)) {
            let f = Field::prime(3).unwrap();
            let gens = [build(&a, 3, &f), build(&b, 3, &f)];
            let w = fixed_space(&gens, 3, &f);
            for v in w.basis() {
                for g in &gens {
                    prop_assert_eq!(&g.mul_vec(v, &f), v);
                }
            }
            let id = Matrix::identity(3, &f);
            let stacked: Vec<Vector> = gens.iter().flat_map(|g| g.sub(&id, &f).row_vectors()).collect();
            prop_assert_eq!(w.dim(), 3 - rref(stacked, 3, &f).1.len());
        }

        #[test]
        fn spin_words_reproduce(a in small_matrix(2), b in small_matrix(2)) {
            let f = Field::prime(7).unwrap();
            let gens = [build(&a, 2, &f), build(&b, 2, &f)];
            let basis = spin_basis(&gens, 2, &f);
            prop_assert!(basis.dim() <= 4);
            for (m, w) in basis.mats.iter().zip(&basis.words) {
                let e = w.iter().fold(Matrix::identity(2, &f), |acc, &i| acc.mul(&gens[i], &f));
                prop_assert_eq!(&e, m);
            }
        }

        #[test]
        fn quotient_is_functorial(a in small_matrix(3), b in small_matrix(3)) {
            // upper triangular so span(e1) is invariant
            let f = Field::prime(5).unwrap();
            let tri = |v: &[i64]| {
                let mut m = build(v, 3, &f);
                m.set(1, 0, f.zero());
                m.set(2, 0, f.zero());
                m
            };
            let (x, y) = (tri(&a), tri(&b));
            let w = Subspace::span(vec![vec![f.one(), f.zero(), f.zero()]], 3, &f);
            let q = quotient_action(&[x.clone(), y.clone(), x.mul(&y, &f)], &w, &f).unwrap();
            prop_assert_eq!(q[0].mul(&q[1], &f), q[2].clone());
        }

        #[test]
        fn inverse_roundtrip(a in small_matrix(3)) {
            for f in fields() {
                let m = build(&a, 3, &f);
                if let Ok(inv) = m.inverse(&f) {
                    prop_assert!(m.mul(&inv, &f).is_identity(&f));
                    prop_assert!(!f.is_zero(&m.determinant(&f)));
                } else {
                    prop_assert!(f.is_zero(&m.determinant(&f)));
                }
            }
        }
    }
}
