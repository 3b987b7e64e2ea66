use std::collections::BTreeMap;

use num_traits::Zero;

use super::field::{Field, Scalar};

/// Sparse row of `(column, value)` pairs, sorted by column, no zeros.
pub type SparseRow = Vec<(usize, Scalar)>;

/// Exact sparse matrix in triplet form.
///
/// Entries are kept sorted row-major with no explicit zeros, so structural
/// equality (`==`) is equality of linear maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat {
    field: Field,
    rows: usize,
    cols: usize,
    entries: Vec<(usize, usize, Scalar)>,
}

impl Mat {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Mat {
        Mat { field, rows, cols, entries: Vec::new() }
    }

    pub fn identity(field: Field, n: usize) -> Mat {
        let entries = (0..n).map(|i| (i, i, field.one())).collect();
        Mat { field, rows: n, cols: n, entries }
    }

    /// Builds a matrix from triplets; duplicates are summed and zeros dropped.
    ///
    /// Panics if an index is out of range.
    pub fn from_triplets<I>(field: Field, rows: usize, cols: usize, triplets: I) -> Mat
    where
        I: IntoIterator<Item = (usize, usize, Scalar)>,
    {
        let mut acc: BTreeMap<(usize, usize), Scalar> = BTreeMap::new();
        for (r, c, v) in triplets {
            assert!(r < rows && c < cols, "entry ({r},{c}) outside {rows}x{cols}");
            let v = field.reduce(&v);
            match acc.get_mut(&(r, c)) {
                Some(x) => *x = field.add(x, &v),
                None => {
                    acc.insert((r, c), v);
                }
            }
        }
        let entries = acc
            .into_iter()
            .filter(|(_, v)| !v.is_zero())
            .map(|((r, c), v)| (r, c, v))
            .collect();
        Mat { field, rows, cols, entries }
    }

    pub fn from_dense(field: Field, rows: usize, cols: usize, data: &[Vec<Scalar>]) -> Mat {
        assert_eq!(data.len(), rows);
        let trip = data.iter().enumerate().flat_map(|(r, row)| {
            assert_eq!(row.len(), cols);
            row.iter().enumerate().map(move |(c, v)| (r, c, v.clone()))
        });
        Mat::from_triplets(field, rows, cols, trip)
    }

    /// Matrix whose columns are the given vectors (each of length `rows`).
    pub fn from_columns(field: Field, rows: usize, columns: &[Vec<Scalar>]) -> Mat {
        let trip = columns.iter().enumerate().flat_map(|(c, col)| {
            assert_eq!(col.len(), rows);
            col.iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(move |(r, v)| (r, c, v.clone()))
        });
        Mat::from_triplets(field, rows, columns.len(), trip)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[(usize, usize, Scalar)] {
        &self.entries
    }

    pub fn get(&self, r: usize, c: usize) -> Scalar {
        match self.entries.binary_search_by(|(rr, cc, _)| (*rr, *cc).cmp(&(r, c))) {
            Ok(i) => self.entries[i].2.clone(),
            Err(_) => Scalar::zero(),
        }
    }

    /// Row-major sparse rows.
    pub fn to_rows(&self) -> Vec<SparseRow> {
        let mut out = vec![Vec::new(); self.rows];
        for (r, c, v) in &self.entries {
            out[*r].push((*c, v.clone()));
        }
        out
    }

    pub fn to_dense(&self) -> Vec<Vec<Scalar>> {
        let mut out = vec![vec![Scalar::zero(); self.cols]; self.rows];
        for (r, c, v) in &self.entries {
            out[*r][*c] = v.clone();
        }
        out
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.rows];
        for (r, cc, v) in &self.entries {
            if *cc == c {
                out[*r] = v.clone();
            }
        }
        out
    }

    pub fn columns(&self) -> Vec<Vec<Scalar>> {
        let mut out = vec![vec![Scalar::zero(); self.rows]; self.cols];
        for (r, c, v) in &self.entries {
            out[*c][*r] = v.clone();
        }
        out
    }

    pub fn transpose(&self) -> Mat {
        let trip = self.entries.iter().map(|(r, c, v)| (*c, *r, v.clone()));
        Mat::from_triplets(self.field, self.cols, self.rows, trip)
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let f = self.field;
        let rhs = other.to_rows();
        let mut acc: BTreeMap<(usize, usize), Scalar> = BTreeMap::new();
        for (r, k, a) in &self.entries {
            for (c, b) in &rhs[*k] {
                let prod = f.mul(a, b);
                let slot = acc.entry((*r, *c)).or_insert_with(Scalar::zero);
                *slot = f.add(slot, &prod);
            }
        }
        let entries = acc
            .into_iter()
            .filter(|(_, v)| !v.is_zero())
            .map(|((r, c), v)| (r, c, v))
            .collect();
        Mat { field: f, rows: self.rows, cols: other.cols, entries }
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len(), "shape mismatch in matrix-vector product");
        let f = self.field;
        let mut out = vec![Scalar::zero(); self.rows];
        for (r, c, a) in &self.entries {
            if !v[*c].is_zero() {
                out[*r] = f.add(&out[*r], &f.mul(a, &v[*c]));
            }
        }
        out
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let trip = self.entries.iter().chain(other.entries.iter()).cloned();
        Mat::from_triplets(self.field, self.rows, self.cols, trip)
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        self.add(&other.scale(&self.field.from_i64(-1)))
    }

    pub fn scale(&self, s: &Scalar) -> Mat {
        let f = self.field;
        let trip = self.entries.iter().map(|(r, c, v)| (*r, *c, f.mul(v, s)));
        Mat::from_triplets(f, self.rows, self.cols, trip)
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.rows, other.rows);
        let shift = self.cols;
        let trip = self
            .entries
            .iter()
            .cloned()
            .chain(other.entries.iter().map(|(r, c, v)| (*r, c + shift, v.clone())));
        Mat::from_triplets(self.field, self.rows, self.cols + other.cols, trip)
    }

    /// Vertical concatenation.
    pub fn vstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.cols);
        let shift = self.rows;
        let trip = self
            .entries
            .iter()
            .cloned()
            .chain(other.entries.iter().map(|(r, c, v)| (r + shift, *c, v.clone())));
        Mat::from_triplets(self.field, self.rows + other.rows, self.cols, trip)
    }

    pub fn block_diag(&self, other: &Mat) -> Mat {
        let (r0, c0) = (self.rows, self.cols);
        let trip = self
            .entries
            .iter()
            .cloned()
            .chain(other.entries.iter().map(|(r, c, v)| (r + r0, c + c0, v.clone())));
        Mat::from_triplets(self.field, r0 + other.rows, c0 + other.cols, trip)
    }

    /// Kronecker product `self ⊗ other`, indexed `(i*other.rows + k, j*other.cols + l)`.
    pub fn kron(&self, other: &Mat) -> Mat {
        let f = self.field;
        let mut trip = Vec::with_capacity(self.nnz() * other.nnz());
        for (i, j, a) in &self.entries {
            for (k, l, b) in &other.entries {
                trip.push((i * other.rows + k, j * other.cols + l, f.mul(a, b)));
            }
        }
        Mat::from_triplets(f, self.rows * other.rows, self.cols * other.cols, trip)
    }

    pub fn select_columns(&self, cols: &[usize]) -> Mat {
        let mut pos = vec![None; self.cols];
        for (i, c) in cols.iter().enumerate() {
            pos[*c] = Some(i);
        }
        let trip = self
            .entries
            .iter()
            .filter_map(|(r, c, v)| pos[*c].map(|nc| (*r, nc, v.clone())));
        Mat::from_triplets(self.field, self.rows, cols.len(), trip)
    }

    pub fn select_rows(&self, rows: &[usize]) -> Mat {
        self.transpose().select_columns(rows).transpose()
    }
}

/// `a·x + b·y` on dense vectors.
pub fn axpy(field: Field, acc: &mut [Scalar], coeff: &Scalar, x: &[Scalar]) {
    if coeff.is_zero() {
        return;
    }
    for (a, v) in acc.iter_mut().zip(x) {
        if !v.is_zero() {
            *a = field.add(a, &field.mul(coeff, v));
        }
    }
}

pub fn is_zero_vec(v: &[Scalar]) -> bool {
    v.iter().all(|x| x.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: i64) -> Scalar {
        Field::Rationals.from_i64(v)
    }

    #[test]
    fn triplets_sum_and_drop_zeros() {
        let m = Mat::from_triplets(
            Field::Rationals,
            2,
            2,
            vec![(0, 0, q(1)), (0, 0, q(-1)), (1, 0, q(2)), (1, 0, q(3))],
        );
        assert_eq!(m.nnz(), 1);
        assert_eq!(m.get(1, 0), q(5));
    }

    #[test]
    fn kron_shapes_and_values() {
        let f = Field::Rationals;
        let a = Mat::from_dense(f, 2, 1, &[vec![q(1)], vec![q(2)]]);
        let b = Mat::from_dense(f, 1, 2, &[vec![q(3), q(4)]]);
        let k = a.kron(&b);
        assert_eq!((k.rows(), k.cols()), (2, 2));
        assert_eq!(k.get(1, 1), q(8));
    }

    #[test]
    fn product_matches_dense() {
        let f = Field::Rationals;
        let a = Mat::from_dense(f, 2, 2, &[vec![q(1), q(2)], vec![q(0), q(1)]]);
        let b = a.mul(&a);
        assert_eq!(b.to_dense(), vec![vec![q(1), q(4)], vec![q(0), q(1)]]);
        assert_eq!(a.transpose().transpose(), a);
    }
}
