use std::fmt;

use super::base::{BaseField, Fq};

/// Dense row-major matrix over `F_q`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MatrixFq {
    rows: usize,
    cols: usize,
    data: Vec<Fq>,
}

impl MatrixFq {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Fq::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Fq::ONE);
        }
        m
    }

    /// Builds a matrix from its columns; all columns must share a length.
    pub fn from_columns(rows: usize, columns: &[Vec<Fq>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for (i, &v) in col.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Fq>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let n = rows.len();
        let data: Vec<Fq> = rows
            .into_iter()
            .inspect(|r| assert_eq!(r.len(), cols, "row length mismatch"))
            .flatten()
            .collect();
        Self {
            rows: n,
            cols,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Fq {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Fq) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Fq] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Fq> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn as_slice(&self) -> &[Fq] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    /// Keeps the listed columns, in order.
    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let mut m = Self::zeros(self.rows, cols.len());
        for i in 0..self.rows {
            for (k, &j) in cols.iter().enumerate() {
                m.set(i, k, self.get(i, j));
            }
        }
        m
    }

    pub fn add_assign(&mut self, other: &Self, f: &BaseField) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        for (a, &b) in self.data.iter_mut().zip(&other.data) {
            *a = f.add(*a, b);
        }
    }

    pub fn sub(&self, other: &Self, f: &BaseField) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| f.sub(a, b))
            .collect();
        Self {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn scale(&self, c: Fq, f: &BaseField) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| f.mul(c, a)).collect(),
        }
    }

    pub fn mul(&self, other: &Self, f: &BaseField) -> Self {
        assert_eq!(self.cols, other.rows);
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = f.add(out.get(i, j), f.mul(a, other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Fq], f: &BaseField) -> Vec<Fq> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(Fq::ZERO, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
            })
            .collect()
    }

    /// In-place reduced row echelon form; returns the pivot columns.
    pub fn rref(&mut self, f: &BaseField) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            if pr != r {
                for j in 0..self.cols {
                    self.data.swap(pr * self.cols + j, r * self.cols + j);
                }
            }
            let inv = f.inv(self.get(r, c)).expect("pivot is nonzero");
            for j in c..self.cols {
                let v = f.mul(inv, self.get(r, j));
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let factor = self.get(i, c);
                if factor.is_zero() {
                    continue;
                }
                for j in c..self.cols {
                    let v = f.sub(self.get(i, j), f.mul(factor, self.get(r, j)));
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    /// Rank over `F_q` by forward elimination.
    pub fn rank(&self, f: &BaseField) -> usize {
        let mut a = self.clone();
        let mut rank = 0;
        for c in 0..a.cols {
            if rank == a.rows {
                break;
            }
            let Some(pr) = (rank..a.rows).find(|&i| !a.get(i, c).is_zero()) else {
                continue;
            };
            if pr != rank {
                for j in 0..a.cols {
                    a.data.swap(pr * a.cols + j, rank * a.cols + j);
                }
            }
            let inv = f.inv(a.get(rank, c)).expect("pivot is nonzero");
            for i in rank + 1..a.rows {
                let factor = f.mul(a.get(i, c), inv);
                if factor.is_zero() {
                    continue;
                }
                for j in c..a.cols {
                    let v = f.sub(a.get(i, j), f.mul(factor, a.get(rank, j)));
                    a.set(i, j, v);
                }
            }
            rank += 1;
        }
        rank
    }

    /// Basis of the right null space `{v : A v = 0}`, one vector per free
    /// column, in reduced column-echelon form ordered by pivot position.
    pub fn null_space(&self, f: &BaseField) -> Vec<Vec<Fq>> {
        let mut a = self.clone();
        let pivots = a.rref(f);
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![Fq::ZERO; self.cols];
            v[free] = Fq::ONE;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(a.get(r, free));
            }
            basis.push(v);
        }
        column_echelon(basis, f)
    }
}

/// Reduced column-echelon form of a list of independent column vectors,
/// with the leading entry of each vector being its first nonzero coordinate.
pub(crate) fn column_echelon(vectors: Vec<Vec<Fq>>, f: &BaseField) -> Vec<Vec<Fq>> {
    if vectors.is_empty() {
        return vectors;
    }
    let mut m = MatrixFq::from_rows(vectors);
    let pivots = m.rref(f);
    (0..pivots.len()).map(|i| m.row(i).to_vec()).collect()
}

impl fmt::Debug for MatrixFq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "MatrixFq {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<u32> = self.row(i).iter().map(|x| x.index()).collect();
            writeln!(f, "  {row:?}")?;
        }
        write!(f, "]")
    }
}
