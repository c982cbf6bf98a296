//! Dense exact matrices and Gaussian elimination over a [`Field`].

use crate::field::Field;

/// Row-major dense matrix acting on column vectors.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Mat<F: Field> {
    pub field: F,
    pub rows: usize,
    pub cols: usize,
    data: Vec<F::Elem>,
}

impl<F: Field> Mat<F> {
    pub fn zero(field: F, rows: usize, cols: usize) -> Self {
        Mat {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: F, n: usize) -> Self {
        let mut m = Mat::zero(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: F, rows: Vec<Vec<F::Elem>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c);
            data.extend(row);
        }
        Mat {
            field,
            rows: r,
            cols: c,
            data,
        }
    }

    pub fn get(&self, r: usize, c: usize) -> &F::Elem {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: F::Elem) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[F::Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vec<F::Elem> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| self.field.is_zero(v))
    }

    pub fn mul(&self, other: &Mat<F>) -> Mat<F> {
        assert_eq!(self.cols, other.rows, "shape mismatch in mul");
        let f = self.field;
        let mut out = Mat::zero(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if f.is_zero(b) {
                        continue;
                    }
                    let v = f.add(out.get(i, j), &f.mul(a, b));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(self.cols, v.len());
        let f = self.field;
        let mut out = vec![f.zero(); self.rows];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if !f.is_zero(a) && !f.is_zero(&v[k]) {
                    out[i] = f.add(&out[i], &f.mul(a, &v[k]));
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Mat<F>) -> Mat<F> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = self.field;
        let mut out = self.clone();
        for i in 0..self.rows * self.cols {
            out.data[i] = f.add(&self.data[i], &other.data[i]);
        }
        out
    }

    pub fn sub(&self, other: &Mat<F>) -> Mat<F> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = self.field;
        let mut out = self.clone();
        for i in 0..self.rows * self.cols {
            out.data[i] = f.sub(&self.data[i], &other.data[i]);
        }
        out
    }

    /// Vertical stack.
    pub fn stack(mats: &[&Mat<F>]) -> Mat<F> {
        let f = mats[0].field;
        let cols = mats[0].cols;
        let rows = mats.iter().map(|m| m.rows).sum();
        let mut data = Vec::with_capacity(rows * cols);
        for m in mats {
            assert_eq!(m.cols, cols);
            data.extend(m.data.iter().cloned());
        }
        Mat {
            field: f,
            rows,
            cols,
            data,
        }
    }

    pub fn rank(&self) -> usize {
        let mut copy = self.clone();
        copy.row_reduce().len()
    }

    /// In-place reduced row echelon form; returns the pivot columns.
    pub fn row_reduce(&mut self) -> Vec<usize> {
        let f = self.field;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| !f.is_zero(self.get(i, c))) else {
                continue;
            };
            if pr != r {
                for j in 0..self.cols {
                    let a = self.get(r, j).clone();
                    let b = self.get(pr, j).clone();
                    self.set(r, j, b);
                    self.set(pr, j, a);
                }
            }
            let inv = f.inv(self.get(r, c));
            for j in c..self.cols {
                let v = f.mul(self.get(r, j), &inv);
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i != r && !f.is_zero(self.get(i, c)) {
                    let factor = self.get(i, c).clone();
                    for j in c..self.cols {
                        let v = f.sub(self.get(i, j), &f.mul(&factor, self.get(r, j)));
                        self.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    /// Basis of the right kernel, in a deterministic order (one vector per
    /// free column, free columns ascending).
    pub fn kernel_basis(&self) -> Vec<Vec<F::Elem>> {
        let f = self.field;
        let mut red = self.clone();
        let pivots = red.row_reduce();
        let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set.contains(&free) {
                continue;
            }
            let mut v = vec![f.zero(); self.cols];
            v[free] = f.one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(red.get(row, free));
            }
            basis.push(v);
        }
        basis
    }

    pub fn inverse(&self) -> Option<Mat<F>> {
        assert_eq!(self.rows, self.cols);
        let f = self.field;
        let n = self.rows;
        let mut aug = Mat::zero(f, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, f.one());
        }
        let pivots = aug.row_reduce();
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        let mut out = Mat::zero(f, n, n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, aug.get(i, n + j).clone());
            }
        }
        Some(out)
    }

    pub fn transpose(&self) -> Mat<F> {
        let mut out = Mat::zero(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }
}

/// Incrementally built row space in echelon form. Used for submodule
/// closures and quotient coordinates.
#[derive(Clone, Debug)]
pub struct Subspace<F: Field> {
    field: F,
    pub dim_ambient: usize,
    /// Rows in echelon form: strictly increasing leading columns, leading
    /// entry one, leading column eliminated from all other rows.
    rows: Vec<Vec<F::Elem>>,
    leads: Vec<usize>,
}

impl<F: Field> Subspace<F> {
    pub fn new(field: F, dim_ambient: usize) -> Self {
        Subspace {
            field,
            dim_ambient,
            rows: Vec::new(),
            leads: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduce `v` against the subspace; the remainder has zeros in all lead
    /// positions of the basis.
    pub fn reduce(&self, mut v: Vec<F::Elem>) -> Vec<F::Elem> {
        let f = self.field;
        for (row, &lead) in self.rows.iter().zip(&self.leads) {
            if !f.is_zero(&v[lead]) {
                let factor = v[lead].clone();
                for j in lead..self.dim_ambient {
                    v[j] = f.sub(&v[j], &f.mul(&factor, &row[j]));
                }
            }
        }
        v
    }

    /// Insert a vector; returns true if it enlarged the space.
    pub fn insert(&mut self, v: Vec<F::Elem>) -> bool {
        let f = self.field;
        let mut v = self.reduce(v);
        let Some(lead) = v.iter().position(|x| !f.is_zero(x)) else {
            return false;
        };
        let inv = f.inv(&v[lead]);
        for x in v.iter_mut() {
            *x = f.mul(x, &inv);
        }
        // Back-substitute into existing rows to keep the form reduced.
        for row in self.rows.iter_mut() {
            if !f.is_zero(&row[lead]) {
                let factor = row[lead].clone();
                for j in lead..self.dim_ambient {
                    row[j] = f.sub(&row[j], &f.mul(&factor, &v[j]));
                }
            }
        }
        let pos = self.leads.partition_point(|&l| l < lead);
        self.rows.insert(pos, v);
        self.leads.insert(pos, lead);
        true
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        let f = self.field;
        self.reduce(v.to_vec()).iter().all(|x| f.is_zero(x))
    }

    pub fn basis_row(&self, r: usize) -> Vec<F::Elem> {
        self.rows[r].clone()
    }
}
