//! Exact dense linear algebra over the tower fields by Gaussian
//! elimination. A matrix is tagged with the field its entries live in;
//! elimination never leaves that field, so ranks and kernels are taken
//! over the tagged field.

use crate::error::{Error, Result};
use crate::gf::{Elem, FieldTag, Tower};

#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<Elem>, // row-major
    field: FieldTag,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Elem>, field: FieldTag) -> Matrix {
        assert_eq!(entries.len(), rows * cols);
        Matrix {
            rows,
            cols,
            entries,
            field,
        }
    }

    pub fn zeros(t: &Tower, rows: usize, cols: usize, field: FieldTag) -> Matrix {
        Matrix::new(rows, cols, vec![t.zero(); rows * cols], field)
    }

    pub fn identity(t: &Tower, dim: usize, field: FieldTag) -> Matrix {
        let mut m = Matrix::zeros(t, dim, dim, field);
        for i in 0..dim {
            m[(i, i)] = t.one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn field(&self) -> FieldTag {
        self.field
    }
    pub fn entries(&self) -> &[Elem] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[Elem] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self, t: &Tower) -> Matrix {
        let mut m = Matrix::zeros(t, self.cols, self.rows, self.field);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(j, i)] = self[(i, j)].clone();
            }
        }
        m
    }

    pub fn mul(&self, t: &Tower, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let mut m = Matrix::zeros(t, self.rows, other.cols, t.join_tags(self.field, other.field));
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self[(i, k)].is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = t.mul(&self[(i, k)], &other[(k, j)]);
                    m[(i, j)] = t.add(&m[(i, j)], &prod);
                }
            }
        }
        m
    }

    pub fn add(&self, t: &Tower, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| t.add(a, b))
            .collect();
        Matrix::new(self.rows, self.cols, entries, t.join_tags(self.field, other.field))
    }

    pub fn sub(&self, t: &Tower, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| t.sub(a, b))
            .collect();
        Matrix::new(self.rows, self.cols, entries, t.join_tags(self.field, other.field))
    }

    pub fn scale(&self, t: &Tower, c: &Elem) -> Matrix {
        let entries = self.entries.iter().map(|a| t.mul(a, c)).collect();
        Matrix::new(self.rows, self.cols, entries, self.field)
    }

    pub fn map<F: Fn(&Elem) -> Elem>(&self, f: F) -> Matrix {
        Matrix::new(
            self.rows,
            self.cols,
            self.entries.iter().map(f).collect(),
            self.field,
        )
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    /// Reduced row echelon form; returns (rref, pivot columns).
    pub fn rref(&self, t: &Tower) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, pr);
            let inv = t.inv(&m[(r, c)]).expect("pivot is nonzero");
            for j in c..m.cols {
                m[(r, j)] = t.mul(&m[(r, j)], &inv);
            }
            for i in 0..m.rows {
                if i != r && !m[(i, c)].is_zero() {
                    let f = m[(i, c)].clone();
                    for j in c..m.cols {
                        let sub = t.mul(&f, &m[(r, j)]);
                        m[(i, j)] = t.sub(&m[(i, j)], &sub);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self, t: &Tower) -> usize {
        self.rref(t).1.len()
    }

    /// Basis of the right kernel {x : M·x = 0}, each vector of length cols.
    pub fn nullspace(&self, t: &Tower) -> Vec<Vec<Elem>> {
        let (m, pivots) = self.rref(t);
        let mut basis = Vec::new();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        for free in 0..self.cols {
            if is_pivot[free] {
                continue;
            }
            let mut v = vec![t.zero(); self.cols];
            v[free] = t.one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = t.neg(&m[(r, free)]);
            }
            basis.push(v);
        }
        basis
    }

    /// Solve M·x = b for square invertible M.
    pub fn solve(&self, t: &Tower, b: &[Elem]) -> Result<Vec<Elem>> {
        assert_eq!(self.rows, b.len());
        let mut aug = Matrix::zeros(t, self.rows, self.cols + 1, self.field);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.cols)] = b[i].clone();
        }
        let (m, pivots) = aug.rref(t);
        if pivots.iter().any(|&c| c == self.cols) {
            return Err(Error::ShapeMismatch); // inconsistent system
        }
        let mut x = vec![t.zero(); self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = m[(r, self.cols)].clone();
        }
        Ok(x)
    }

    pub fn inverse(&self, t: &Tower) -> Option<Matrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = Matrix::zeros(t, n, 2 * n, self.field);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = t.one();
        }
        let (m, pivots) = aug.rref(t);
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        let mut inv = Matrix::zeros(t, n, n, self.field);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = m[(i, n + j)].clone();
            }
        }
        Some(inv)
    }

    pub fn det(&self, t: &Tower) -> Elem {
        assert_eq!(self.rows, self.cols);
        let mut m = self.clone();
        let mut det = t.one();
        for c in 0..m.cols {
            let Some(pr) = (c..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                return t.zero();
            };
            if pr != c {
                m.swap_rows(c, pr);
                det = t.neg(&det);
            }
            det = t.mul(&det, &m[(c, c)]);
            let inv = t.inv(&m[(c, c)]).expect("pivot is nonzero");
            for i in c + 1..m.rows {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let f = t.mul(&m[(i, c)], &inv);
                for j in c..m.cols {
                    let sub = t.mul(&f, &m[(c, j)]);
                    m[(i, j)] = t.sub(&m[(i, j)], &sub);
                }
            }
        }
        det
    }

    /// dim ker(M - λI) over the tagged field.
    pub fn eigenspace_dim(&self, t: &Tower, lambda: &Elem) -> usize {
        assert_eq!(self.rows, self.cols);
        let mut shifted = self.clone();
        for i in 0..self.rows {
            shifted[(i, i)] = t.sub(&shifted[(i, i)], lambda);
        }
        self.cols - shifted.rank(t)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Elem;
    fn index(&self, (i, j): (usize, usize)) -> &Elem {
        assert!(i < self.rows && j < self.cols);
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Elem {
        assert!(i < self.rows && j < self.cols);
        &mut self.entries[i * self.cols + j]
    }
}

/// Canonical form of a row space: RREF with zero rows dropped. Two sets of
/// spanning vectors span the same subspace iff these agree.
pub fn row_space_canon(t: &Tower, rows: &[Vec<Elem>], field: FieldTag) -> Vec<Vec<Elem>> {
    if rows.is_empty() {
        return vec![];
    }
    let cols = rows[0].len();
    let m = Matrix::new(
        rows.len(),
        cols,
        rows.iter().flatten().cloned().collect(),
        field,
    );
    let (r, pivots) = m.rref(t);
    (0..pivots.len()).map(|i| r.row(i).to_vec()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::Tower;

    #[test]
    fn rank_nullspace_inverse_f125() {
        let t = Tower::build(5, 1, 3).unwrap();
        let g = t.gamma();
        let entries = vec![
            t.one(),
            g.clone(),
            t.mul(&g, &g),
            t.frobenius(&g, 1),
            t.from_prime(2),
            t.zero(),
            t.add(&t.one(), &g),
            t.from_prime(3),
            t.one(),
        ];
        let m = Matrix::new(3, 3, entries, FieldTag::L);
        let r = m.rank(&t);
        if r == 3 {
            let inv = m.inverse(&t).unwrap();
            let prod = m.mul(&t, &inv);
            assert_eq!(prod, Matrix::identity(&t, 3, FieldTag::L));
            assert!(!m.det(&t).is_zero());
        }
        // a singular matrix: duplicate rows
        let mut sing = m.clone();
        for j in 0..3 {
            sing[(2, j)] = sing[(1, j)].clone();
        }
        assert!(sing.rank(&t) < 3);
        let ns = sing.nullspace(&t);
        assert_eq!(ns.len(), 3 - sing.rank(&t));
        for v in ns {
            for i in 0..3 {
                let mut acc = t.zero();
                for j in 0..3 {
                    acc = t.add(&acc, &t.mul(&sing[(i, j)], &v[j]));
                }
                assert!(acc.is_zero());
            }
        }
    }

    #[test]
    fn solve_round_trip() {
        let t = Tower::build(3, 1, 2).unwrap();
        let g = t.gamma();
        let m = Matrix::new(
            2,
            2,
            vec![t.one(), g.clone(), g.clone(), t.from_prime(2)],
            FieldTag::L,
        );
        let b = vec![t.from_prime(1), t.frobenius(&g, 1)];
        let x = m.solve(&t, &b).unwrap();
        for i in 0..2 {
            let mut acc = t.zero();
            for j in 0..2 {
                acc = t.add(&acc, &t.mul(&m[(i, j)], &x[j]));
            }
            assert!(acc.eq(&b[i]));
        }
    }
}
