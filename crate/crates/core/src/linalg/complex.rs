use num_traits::Zero;

use super::elim::{rank, rank_kernel_image, rref_rows, solve_many, PivotOrder};
use super::field::{Field, Scalar};
use super::mat::{Mat, SparseRow};
use super::LinalgError;

/// Direction of the differentials.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Grading {
    /// `dⁿ: Cⁿ → Cⁿ⁺¹`
    Cochain,
    /// `dₙ: Cₙ → Cₙ₋₁`
    Chain,
}

/// A bounded complex of finite-dimensional spaces in degrees `0..=top`.
///
/// For cochains `diffs[n]` maps degree `n` to `n+1`; for chains `diffs[n]`
/// maps degree `n+1` to `n`. The differential leaving the top degree is not
/// stored, so (co)homology is only known in degrees `0..top`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Complex {
    field: Field,
    grading: Grading,
    dims: Vec<usize>,
    diffs: Vec<Mat>,
}

impl Complex {
    pub fn new(field: Field, grading: Grading, dims: Vec<usize>, diffs: Vec<Mat>) -> Result<Complex, LinalgError> {
        if dims.is_empty() || diffs.len() + 1 != dims.len() {
            return Err(LinalgError::Shape("complex needs one differential per adjacent pair of degrees".into()));
        }
        for (n, d) in diffs.iter().enumerate() {
            let (src, tgt) = match grading {
                Grading::Cochain => (dims[n], dims[n + 1]),
                Grading::Chain => (dims[n + 1], dims[n]),
            };
            if d.cols() != src || d.rows() != tgt {
                return Err(LinalgError::Shape(format!(
                    "differential {n} is {}x{}, expected {tgt}x{src}",
                    d.rows(),
                    d.cols()
                )));
            }
        }
        Ok(Complex { field, grading, dims, diffs })
    }

    pub fn zero(field: Field, grading: Grading, top: usize) -> Complex {
        Complex {
            field,
            grading,
            dims: vec![0; top + 1],
            diffs: vec![Mat::zeros(field, 0, 0); top],
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn grading(&self) -> Grading {
        self.grading
    }

    pub fn top(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, n: usize) -> usize {
        self.dims[n]
    }

    pub fn diffs(&self) -> &[Mat] {
        &self.diffs
    }

    /// Differential leaving degree `n`, if stored.
    pub fn outgoing(&self, n: usize) -> Option<Mat> {
        match self.grading {
            Grading::Cochain => self.diffs.get(n).cloned(),
            Grading::Chain if n == 0 => Some(Mat::zeros(self.field, 0, self.dims[0])),
            Grading::Chain => self.diffs.get(n - 1).cloned(),
        }
    }

    /// Differential arriving in degree `n`, if stored.
    pub fn incoming(&self, n: usize) -> Option<Mat> {
        match self.grading {
            Grading::Cochain if n == 0 => Some(Mat::zeros(self.field, self.dims[0], 0)),
            Grading::Cochain => self.diffs.get(n - 1).cloned(),
            Grading::Chain => self.diffs.get(n).cloned(),
        }
    }

    /// Checks `d∘d = 0` at every stored pair of consecutive differentials.
    pub fn check_d_squared(&self) -> Result<(), LinalgError> {
        for n in 1..self.diffs.len() {
            let prod = match self.grading {
                Grading::Cochain => self.diffs[n].mul(&self.diffs[n - 1]),
                Grading::Chain => self.diffs[n - 1].mul(&self.diffs[n]),
            };
            if !prod.is_zero() {
                return Err(LinalgError::CompositionNotZero { degree: n });
            }
        }
        Ok(())
    }

    pub fn cohomology_dim(&self, n: usize) -> Result<usize, LinalgError> {
        let (out, inc) = self.boundary_maps(n)?;
        homology_dim_at(&out, &inc)
    }

    /// (Co)homology dimensions in degrees `0..top`.
    pub fn cohomology_dims(&self) -> Result<Vec<usize>, LinalgError> {
        (0..self.top()).map(|n| self.cohomology_dim(n)).collect()
    }

    pub fn cohomology_basis(&self, n: usize) -> Result<CohomologyBasis, LinalgError> {
        let (out, inc) = self.boundary_maps(n)?;
        Ok(CohomologyBasis::new(&out, &inc))
    }

    fn boundary_maps(&self, n: usize) -> Result<(Mat, Mat), LinalgError> {
        let out = self.outgoing(n).ok_or(LinalgError::DegreeOutOfRange(n))?;
        let inc = self.incoming(n).ok_or(LinalgError::DegreeOutOfRange(n))?;
        Ok((out, inc))
    }

    /// Degreewise direct sum with block-diagonal differentials.
    pub fn direct_sum(&self, other: &Complex) -> Result<Complex, LinalgError> {
        if self.grading != other.grading || self.top() != other.top() {
            return Err(LinalgError::Shape("direct sum of incompatible complexes".into()));
        }
        let dims = self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect();
        let diffs = self.diffs.iter().zip(&other.diffs).map(|(a, b)| a.block_diag(b)).collect();
        Complex::new(self.field, self.grading, dims, diffs)
    }

    /// Drops degrees above `top`.
    pub fn truncate(&self, top: usize) -> Complex {
        let top = top.min(self.top());
        Complex {
            field: self.field,
            grading: self.grading,
            dims: self.dims[..=top].to_vec(),
            diffs: self.diffs[..top].to_vec(),
        }
    }
}

/// `dim ker(d_out) − rank(d_in)`, after checking `d_out·d_in = 0`.
pub fn homology_dim_at(d_out: &Mat, d_in: &Mat) -> Result<usize, LinalgError> {
    if d_out.cols() != d_in.rows() {
        return Err(LinalgError::Shape(format!(
            "outgoing map has {} columns but incoming map has {} rows",
            d_out.cols(),
            d_in.rows()
        )));
    }
    if !d_out.mul(d_in).is_zero() {
        return Err(LinalgError::CompositionNotZero { degree: 0 });
    }
    Ok(d_out.cols() - rank(d_out) - rank(d_in))
}

/// Representative cocycles for `ker(d_out)/im(d_in)` plus the machinery to
/// read off coordinates of any cocycle.
///
/// Representatives are kernel vectors that stay independent modulo the image,
/// picked by elimination on `[image | kernel]` in input order.
#[derive(Clone, Debug)]
pub struct CohomologyBasis {
    field: Field,
    ambient: usize,
    boundaries: Vec<Vec<Scalar>>,
    reps: Vec<Vec<Scalar>>,
}

impl CohomologyBasis {
    pub fn new(d_out: &Mat, d_in: &Mat) -> CohomologyBasis {
        let field = d_out.field();
        let ambient = d_out.cols();
        let kernel = rank_kernel_image(d_out).kernel;
        let boundaries = rank_kernel_image(d_in).image;
        let cols: Vec<Vec<Scalar>> = boundaries.iter().chain(kernel.iter()).cloned().collect();
        let m = Mat::from_columns(field, ambient, &cols);
        let rows: Vec<SparseRow> = m.to_rows();
        let r = rref_rows(field, rows, cols.len(), cols.len(), PivotOrder::Forward);
        let nb = boundaries.len();
        let reps = r
            .pivot_columns()
            .into_iter()
            .filter(|c| *c >= nb)
            .map(|c| kernel[c - nb].clone())
            .collect();
        CohomologyBasis { field, ambient, boundaries, reps }
    }

    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn reps(&self) -> &[Vec<Scalar>] {
        &self.reps
    }

    pub fn boundaries(&self) -> &[Vec<Scalar>] {
        &self.boundaries
    }

    /// Coordinates of the classes of the given cocycles.
    pub fn coords_many(&self, cocycles: &[Vec<Scalar>]) -> Result<Vec<Vec<Scalar>>, LinalgError> {
        if cocycles.is_empty() {
            return Ok(Vec::new());
        }
        let cols: Vec<Vec<Scalar>> = self.boundaries.iter().chain(self.reps.iter()).cloned().collect();
        let m = Mat::from_columns(self.field, self.ambient, &cols);
        let nb = self.boundaries.len();
        solve_many(&m, cocycles, PivotOrder::Forward)
            .into_iter()
            .map(|x| x.map(|v| v[nb..].to_vec()).ok_or(LinalgError::NotACocycle))
            .collect()
    }

    /// True iff `v` is a coboundary.
    pub fn is_boundary(&self, v: &[Scalar]) -> bool {
        if v.iter().all(|x| x.is_zero()) {
            return true;
        }
        let m = Mat::from_columns(self.field, self.ambient, &self.boundaries);
        solve_many(&m, &[v.to_vec()], PivotOrder::Forward)[0].is_some()
    }

    /// Matrix of the map induced by `f` into the classes of `target`.
    pub fn induced(&self, f: &Mat, target: &CohomologyBasis) -> Result<Mat, LinalgError> {
        let images: Vec<Vec<Scalar>> = self.reps.iter().map(|z| f.mul_vec(z)).collect();
        let coords = target.coords_many(&images)?;
        Ok(Mat::from_columns(self.field, target.dim(), &coords))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: i64) -> Scalar {
        Field::Rationals.from_i64(v)
    }

    #[test]
    fn homology_dim_examples() {
        let f = Field::Rationals;
        let z = Mat::zeros(f, 1, 1);
        assert_eq!(homology_dim_at(&z, &z).unwrap(), 1);
        assert_eq!(homology_dim_at(&Mat::identity(f, 1), &z).unwrap(), 0);
        let d_in = Mat::from_dense(f, 2, 1, &[vec![q(1)], vec![q(1)]]);
        assert_eq!(homology_dim_at(&Mat::zeros(f, 1, 2), &d_in).unwrap(), 1);
        let id = Mat::identity(f, 1);
        assert!(matches!(
            homology_dim_at(&id, &id),
            Err(LinalgError::CompositionNotZero { .. })
        ));
    }

    #[test]
    fn cohomology_basis_completes_image() {
        let f = Field::Rationals;
        // degree 1 of 0 → k → k² → 0 with d = (1,1)ᵀ
        let d_in = Mat::from_dense(f, 2, 1, &[vec![q(1)], vec![q(1)]]);
        let d_out = Mat::zeros(f, 0, 2);
        let h = CohomologyBasis::new(&d_out, &d_in);
        assert_eq!(h.dim(), 1);
        let c = h.coords_many(&[vec![q(2), q(2)], vec![q(1), q(0)]]).unwrap();
        assert!(c[0][0].is_zero());
        assert!(!c[1][0].is_zero());
        assert!(h.is_boundary(&[q(3), q(3)]));
    }

    #[test]
    fn complex_shape_checks() {
        let f = Field::Rationals;
        let c = Complex::new(f, Grading::Cochain, vec![1, 1], vec![Mat::identity(f, 1)]).unwrap();
        assert_eq!(c.cohomology_dims().unwrap(), vec![0]);
        assert!(Complex::new(f, Grading::Cochain, vec![1, 2], vec![Mat::identity(f, 1)]).is_err());
        let chain = Complex::new(f, Grading::Chain, vec![1, 1], vec![Mat::zeros(f, 1, 1)]).unwrap();
        assert_eq!(chain.cohomology_dims().unwrap(), vec![1]);
    }
}
