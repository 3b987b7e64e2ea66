//! Sparse Gauss-Jordan elimination.
//!
//! The kernel runs on a native element type per field: `BigRational` for ℚ
//! (pivots chosen by smallest numerator/denominator size), `u64` residues for
//! 𝔽_p (first available pivot). Results are converted back to [`Scalar`].

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::field::{mod_inverse, Field, Scalar};
use super::mat::{Mat, SparseRow};

/// Order in which columns are offered as pivot candidates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum PivotOrder {
    #[default]
    Forward,
    Reversed,
}

trait Arith {
    type E: Clone;
    fn is_zero(&self, a: &Self::E) -> bool;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    /// `a - b`
    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn inv(&self, a: &Self::E) -> Self::E;
    fn cost(&self, a: &Self::E) -> u64;
    fn lift(&self, s: &Scalar) -> Self::E;
    fn lower(&self, e: &Self::E) -> Scalar;
}

struct RatArith;

impl Arith for RatArith {
    type E = Scalar;
    fn is_zero(&self, a: &Scalar) -> bool {
        a.is_zero()
    }
    fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        a * b
    }
    fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        a - b
    }
    fn inv(&self, a: &Scalar) -> Scalar {
        a.recip()
    }
    fn cost(&self, a: &Scalar) -> u64 {
        Field::Rationals.cost(a)
    }
    fn lift(&self, s: &Scalar) -> Scalar {
        s.clone()
    }
    fn lower(&self, e: &Scalar) -> Scalar {
        e.clone()
    }
}

struct ModArith(u64);

impl Arith for ModArith {
    type E = u64;
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.0
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.0 - b) % self.0
    }
    fn inv(&self, a: &u64) -> u64 {
        mod_inverse(*a, self.0)
    }
    fn cost(&self, _a: &u64) -> u64 {
        0
    }
    fn lift(&self, s: &Scalar) -> u64 {
        s.numer().to_u64().expect("prime field element out of range")
    }
    fn lower(&self, e: &u64) -> Scalar {
        Scalar::from_integer(BigInt::from(*e))
    }
}

/// Reduced row echelon form restricted to the eligible columns.
///
/// `pivots[i] = (column, row)`: `row` has a 1 at `column` and zeros at every
/// other pivot column. `rest` holds the non-pivot rows, which vanish on all
/// eligible columns but may carry entries in the augmented ones.
#[derive(Clone, Debug)]
pub struct Rref {
    pub cols: usize,
    pub pivots: Vec<(usize, SparseRow)>,
    pub rest: Vec<SparseRow>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        let mut c: Vec<usize> = self.pivots.iter().map(|(c, _)| *c).collect();
        c.sort_unstable();
        c
    }
}

/// Eliminates `rows` (width `cols`) using only columns `< eligible` as pivots.
pub fn rref_rows(
    field: Field,
    rows: Vec<SparseRow>,
    cols: usize,
    eligible: usize,
    order: PivotOrder,
) -> Rref {
    match field {
        Field::Rationals => run(&RatArith, rows, cols, eligible, order),
        Field::Prime(p) => run(&ModArith(p), rows, cols, eligible, order),
    }
}

pub fn rref(m: &Mat, order: PivotOrder) -> Rref {
    rref_rows(m.field(), m.to_rows(), m.cols(), m.cols(), order)
}

fn entry_at<E>(row: &[(usize, E)], col: usize) -> Option<&E> {
    row.binary_search_by_key(&col, |(c, _)| *c)
        .ok()
        .map(|i| &row[i].1)
}

/// `target - coeff * pivot`
fn sub_scaled<A: Arith>(a: &A, target: &[(usize, A::E)], coeff: &A::E, pivot: &[(usize, A::E)]) -> Vec<(usize, A::E)> {
    let mut out = Vec::with_capacity(target.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < target.len() || j < pivot.len() {
        let ti = target.get(i).map(|x| x.0).unwrap_or(usize::MAX);
        let pj = pivot.get(j).map(|x| x.0).unwrap_or(usize::MAX);
        if ti < pj {
            out.push(target[i].clone());
            i += 1;
        } else if pj < ti {
            let v = a.sub(&zero_like(a, &pivot[j].1), &a.mul(coeff, &pivot[j].1));
            if !a.is_zero(&v) {
                out.push((pj, v));
            }
            j += 1;
        } else {
            let v = a.sub(&target[i].1, &a.mul(coeff, &pivot[j].1));
            if !a.is_zero(&v) {
                out.push((ti, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn zero_like<A: Arith>(a: &A, e: &A::E) -> A::E {
    a.sub(e, e)
}

fn run<A: Arith>(a: &A, rows: Vec<SparseRow>, cols: usize, eligible: usize, order: PivotOrder) -> Rref {
    let mut work: Vec<Vec<(usize, A::E)>> = rows
        .into_iter()
        .map(|r| {
            r.into_iter()
                .map(|(c, v)| (c, a.lift(&v)))
                .filter(|(_, v)| !a.is_zero(v))
                .collect()
        })
        .collect();
    let mut used = vec![false; work.len()];
    let mut pivots: Vec<(usize, usize)> = Vec::new();

    let column_order: Vec<usize> = match order {
        PivotOrder::Forward => (0..eligible).collect(),
        PivotOrder::Reversed => (0..eligible).rev().collect(),
    };

    for col in column_order {
        let mut best: Option<(u64, usize, usize)> = None;
        for (ri, row) in work.iter().enumerate() {
            if used[ri] {
                continue;
            }
            if let Some(v) = entry_at(row, col) {
                let key = (a.cost(v), row.len(), ri);
                if best.is_none_or(|b| key < b) {
                    best = Some(key);
                }
            }
        }
        let Some((_, _, pr)) = best else { continue };
        let inv = a.inv(entry_at(&work[pr], col).unwrap());
        let normalized: Vec<(usize, A::E)> = work[pr].iter().map(|(c, v)| (*c, a.mul(v, &inv))).collect();
        for (ri, row) in work.iter_mut().enumerate() {
            if ri == pr {
                continue;
            }
            if let Some(coeff) = entry_at(row, col).cloned() {
                *row = sub_scaled(a, row, &coeff, &normalized);
            }
        }
        work[pr] = normalized;
        used[pr] = true;
        pivots.push((col, pr));
    }

    let lower = |row: &Vec<(usize, A::E)>| -> SparseRow { row.iter().map(|(c, v)| (*c, a.lower(v))).collect() };
    let rest = work
        .iter()
        .enumerate()
        .filter(|(i, _)| !used[*i])
        .map(|(_, r)| lower(r))
        .collect();
    Rref {
        cols,
        pivots: pivots.iter().map(|(c, r)| (*c, lower(&work[*r]))).collect(),
        rest,
    }
}

/// Rank, kernel basis and image basis of a matrix.
#[derive(Clone, Debug)]
pub struct RankKernelImage {
    pub rank: usize,
    /// Kernel vectors, one per free column in increasing column order.
    pub kernel: Vec<Vec<Scalar>>,
    /// Columns of the input at the pivot positions, in increasing column order.
    pub image: Vec<Vec<Scalar>>,
}

pub fn rank_kernel_image(m: &Mat) -> RankKernelImage {
    rank_kernel_image_with(m, PivotOrder::Forward)
}

pub fn rank_kernel_image_with(m: &Mat, order: PivotOrder) -> RankKernelImage {
    let r = rref(m, order);
    let f = m.field();
    let pivot_cols = r.pivot_columns();
    let mut is_pivot = vec![false; m.cols()];
    for c in &pivot_cols {
        is_pivot[*c] = true;
    }
    let mut kernel = Vec::new();
    for free in (0..m.cols()).filter(|c| !is_pivot[*c]) {
        let mut v = vec![Scalar::zero(); m.cols()];
        v[free] = f.one();
        for (pc, row) in &r.pivots {
            if let Some(x) = entry_at(row, free) {
                v[*pc] = f.neg(x);
            }
        }
        kernel.push(v);
    }
    let cols = m.columns();
    let image = pivot_cols.iter().map(|c| cols[*c].clone()).collect();
    RankKernelImage { rank: r.rank(), kernel, image }
}

pub fn rank(m: &Mat) -> usize {
    rref(m, PivotOrder::Forward).rank()
}

/// Solves `m·x = b`; `None` iff `b` is outside the image.
pub fn solve(m: &Mat, b: &[Scalar]) -> Option<Vec<Scalar>> {
    solve_many(m, std::slice::from_ref(&b.to_vec()), PivotOrder::Forward)
        .pop()
        .unwrap()
}

/// Solves `m·x = b` for several right-hand sides with one elimination.
/// Free variables are set to zero, so the chosen solution depends on `order`.
pub fn solve_many(m: &Mat, rhs: &[Vec<Scalar>], order: PivotOrder) -> Vec<Option<Vec<Scalar>>> {
    let n = m.cols();
    let mut rows = m.to_rows();
    for (k, b) in rhs.iter().enumerate() {
        assert_eq!(b.len(), m.rows(), "right-hand side has wrong length");
        for (r, v) in b.iter().enumerate() {
            if !v.is_zero() {
                rows[r].push((n + k, v.clone()));
            }
        }
    }
    let r = rref_rows(m.field(), rows, n + rhs.len(), n, order);
    (0..rhs.len())
        .map(|k| {
            if r.rest.iter().any(|row| entry_at(row, n + k).is_some()) {
                return None;
            }
            let mut x = vec![Scalar::zero(); n];
            for (pc, row) in &r.pivots {
                if let Some(v) = entry_at(row, n + k) {
                    x[*pc] = v.clone();
                }
            }
            Some(x)
        })
        .collect()
}

/// Quotient `k^d / span(gens)` with an explicit complement of coordinate vectors.
#[derive(Clone, Debug)]
pub struct Quotient {
    field: Field,
    ambient: usize,
    pivots: Vec<(usize, SparseRow)>,
    complement: Vec<usize>,
}

impl Quotient {
    pub fn new(field: Field, ambient: usize, gens: &[Vec<Scalar>]) -> Quotient {
        let rows: Vec<SparseRow> = gens
            .iter()
            .map(|g| {
                assert_eq!(g.len(), ambient);
                g.iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(i, v)| (i, v.clone()))
                    .collect()
            })
            .collect();
        let r = rref_rows(field, rows, ambient, ambient, PivotOrder::Forward);
        let mut is_pivot = vec![false; ambient];
        for (c, _) in &r.pivots {
            is_pivot[*c] = true;
        }
        let complement = (0..ambient).filter(|c| !is_pivot[*c]).collect();
        Quotient { field, ambient, pivots: r.pivots, complement }
    }

    pub fn dim(&self) -> usize {
        self.complement.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    /// Coordinates of the class of `v`.
    pub fn project(&self, v: &[Scalar]) -> Vec<Scalar> {
        let f = self.field;
        let mut w = v.to_vec();
        for (pc, row) in &self.pivots {
            let coeff = w[*pc].clone();
            if coeff.is_zero() {
                continue;
            }
            for (c, x) in row {
                w[*c] = f.sub(&w[*c], &f.mul(&coeff, x));
            }
        }
        self.complement.iter().map(|c| w[*c].clone()).collect()
    }

    /// Representative of the class with the given coordinates.
    pub fn lift(&self, coords: &[Scalar]) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); self.ambient];
        for (c, x) in self.complement.iter().zip(coords) {
            v[*c] = x.clone();
        }
        v
    }

    pub fn projection_matrix(&self) -> Mat {
        let cols: Vec<Vec<Scalar>> = (0..self.ambient)
            .map(|i| {
                let mut e = vec![Scalar::zero(); self.ambient];
                e[i] = self.field.one();
                self.project(&e)
            })
            .collect();
        Mat::from_columns(self.field, self.dim(), &cols)
    }

    pub fn section_matrix(&self) -> Mat {
        let trip = self
            .complement
            .iter()
            .enumerate()
            .map(|(j, c)| (*c, j, self.field.one()));
        Mat::from_triplets(self.field, self.ambient, self.dim(), trip)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: i64) -> Scalar {
        Field::Rationals.from_i64(v)
    }

    fn mat(rows: &[&[i64]]) -> Mat {
        let data: Vec<Vec<Scalar>> = rows.iter().map(|r| r.iter().map(|v| q(*v)).collect()).collect();
        let c = data.first().map_or(0, |r| r.len());
        Mat::from_dense(Field::Rationals, data.len(), c, &data)
    }

    #[test]
    fn empty_matrix() {
        let r = rank_kernel_image(&Mat::zeros(Field::Rationals, 0, 0));
        assert_eq!(r.rank, 0);
        assert!(r.kernel.is_empty() && r.image.is_empty());
    }

    #[test]
    fn identity_has_trivial_kernel() {
        let r = rank_kernel_image(&Mat::identity(Field::Rationals, 3));
        assert_eq!(r.rank, 3);
        assert!(r.kernel.is_empty());
    }

    #[test]
    fn proportional_rows() {
        let m = mat(&[&[1, 2], &[2, 4]]);
        let r = rank_kernel_image(&m);
        assert_eq!(r.rank, 1);
        assert_eq!(r.kernel, vec![vec![q(-2), q(1)]]);
        assert!(m.mul_vec(&r.kernel[0]).iter().all(|x| x.is_zero()));
    }

    #[test]
    fn solve_examples() {
        let id = Mat::identity(Field::Rationals, 2);
        assert_eq!(solve(&id, &[q(3), q(4)]), Some(vec![q(3), q(4)]));
        let z = Mat::zeros(Field::Rationals, 2, 2);
        assert_eq!(solve(&z, &[q(1), q(0)]), None);
        let row = mat(&[&[1, 1]]);
        let x = solve(&row, &[q(1)]).unwrap();
        assert_eq!(row.mul_vec(&x), vec![q(1)]);
        let y = solve_many(&row, &[vec![q(1)]], PivotOrder::Reversed).pop().unwrap().unwrap();
        assert_eq!(row.mul_vec(&y), vec![q(1)]);
        assert_ne!(x, y);
    }

    #[test]
    fn prime_field_rank() {
        let f = Field::prime(2).unwrap();
        let m = Mat::from_dense(
            f,
            2,
            2,
            &[vec![f.from_i64(1), f.from_i64(1)], vec![f.from_i64(1), f.from_i64(1)]],
        );
        assert_eq!(rank(&m), 1);
        // over Q the same pattern with a 3 has full rank, over GF(2) it does not
        let n = Mat::from_dense(
            f,
            2,
            2,
            &[vec![f.from_i64(1), f.from_i64(1)], vec![f.from_i64(1), f.from_i64(3)]],
        );
        assert_eq!(rank(&n), 1);
    }

    #[test]
    fn quotient_projection() {
        let f = Field::Rationals;
        let qt = Quotient::new(f, 3, &[vec![q(1), q(1), q(0)]]);
        assert_eq!(qt.dim(), 2);
        let a = qt.project(&[q(1), q(0), q(0)]);
        let b = qt.project(&[q(0), q(-1), q(0)]);
        assert_eq!(a, b);
        assert_eq!(qt.project(&qt.lift(&[q(5), q(7)])), vec![q(5), q(7)]);
        let p = qt.projection_matrix();
        assert_eq!(p.mul(&qt.section_matrix()), Mat::identity(f, 2));
    }
}
