//! Dense matrices over a [`Field`] with exact Gaussian elimination.

use rand::Rng;

use super::field::{Fe, Field};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Fe>,
}

impl Matrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Matrix {
        Matrix { field: field.clone(), rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: &Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: &Field, rows: Vec<Vec<Fe>>) -> Matrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |v| v.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged matrix");
            data.extend(row);
        }
        Matrix { field: field.clone(), rows: r, cols: c, data }
    }

    /// Matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_cols(field: &Field, rows: usize, cols: &[Vec<Fe>]) -> Matrix {
        let mut m = Matrix::zeros(field, rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Fe {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Fe) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> Vec<Fe> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col(&self, j: usize) -> Vec<Fe> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let f = &self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let v = f.add(out.get(i, j), &f.mul(a, other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Fe]) -> Vec<Fe> {
        let f = &self.field;
        (0..self.rows)
            .map(|i| {
                let mut acc = f.zero();
                for (j, x) in v.iter().enumerate() {
                    acc = f.add(&acc, &f.mul(self.get(i, j), x));
                }
                acc
            })
            .collect()
    }

    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        let mut m = Matrix::zeros(&self.field, self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j).clone());
            }
            for j in 0..other.cols {
                m.set(i, self.cols + j, other.get(i, j).clone());
            }
        }
        m
    }

    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix { field: self.field.clone(), rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn select_cols(&self, idx: &[usize]) -> Matrix {
        let cols: Vec<Vec<Fe>> = idx.iter().map(|&j| self.col(j)).collect();
        Matrix::from_cols(&self.field, self.rows, &cols)
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        Matrix::from_rows(&self.field, idx.iter().map(|&i| self.row(i)).collect())
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !f.is_zero(m.get(i, c))) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = f.inv(m.get(r, c)).unwrap();
            for j in c..m.cols {
                let v = f.mul(m.get(r, j), &inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || f.is_zero(m.get(i, c)) {
                    continue;
                }
                let factor = m.get(i, c).clone();
                for j in c..m.cols {
                    let v = f.sub(m.get(i, j), &f.mul(&factor, m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{v : self * v = 0}`, one vector per free column, in
    /// increasing order of the free column. Each vector has a 1 at its
    /// free column and zeros at the other free columns.
    pub fn nullspace(&self) -> Vec<Vec<Fe>> {
        let f = &self.field;
        let (r, pivots) = self.rref();
        let mut out = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![f.zero(); self.cols];
            v[free] = f.one();
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(r.get(i, free));
            }
            out.push(v);
        }
        out
    }

    pub fn det(&self) -> Fe {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let f = &self.field;
        let mut m = self.clone();
        let mut det = f.one();
        for c in 0..m.cols {
            let Some(p) = (c..m.rows).find(|&i| !f.is_zero(m.get(i, c))) else {
                return f.zero();
            };
            if p != c {
                m.swap_rows(p, c);
                det = f.neg(&det);
            }
            let piv = m.get(c, c).clone();
            det = f.mul(&det, &piv);
            let inv = f.inv(&piv).unwrap();
            for i in c + 1..m.rows {
                if f.is_zero(m.get(i, c)) {
                    continue;
                }
                let factor = f.mul(m.get(i, c), &inv);
                for j in c..m.cols {
                    let v = f.sub(m.get(i, j), &f.mul(&factor, m.get(c, j)));
                    m.set(i, j, v);
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let aug = self.hstack(&Matrix::identity(&self.field, n));
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let idx: Vec<usize> = (n..2 * n).collect();
        Some(r.select_cols(&idx))
    }

    /// A uniformly random invertible `n x n` matrix.
    pub fn random_invertible<R: Rng + ?Sized>(field: &Field, n: usize, rng: &mut R) -> Matrix {
        loop {
            let mut m = Matrix::zeros(field, n, n);
            for i in 0..n {
                for j in 0..n {
                    m.set(i, j, field.random(rng));
                }
            }
            if !field.is_zero(&m.det()) {
                return m;
            }
        }
    }
}

/// Whether vectors (all of the same length) are linearly independent.
pub fn independent(field: &Field, len: usize, vecs: &[Vec<Fe>]) -> bool {
    Matrix::from_cols(field, len, vecs).rank() == vecs.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn nullspace_and_inverse() {
        let f = Field::prime(7).unwrap();
        let m = Matrix::from_rows(
            &f,
            vec![
                vec![f.from_i64(1), f.from_i64(2), f.from_i64(3)],
                vec![f.from_i64(2), f.from_i64(4), f.from_i64(6)],
            ],
        );
        assert_eq!(m.rank(), 1);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(m.mul_vec(v).iter().all(|x| f.is_zero(x)));
        }
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let a = Matrix::random_invertible(&f, 4, &mut rng);
        let ai = a.inverse().unwrap();
        assert_eq!(a.mul(&ai), Matrix::identity(&f, 4));
        assert_eq!(f.mul(&a.det(), &ai.det()), f.one());
    }
}
