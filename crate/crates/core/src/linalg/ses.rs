//! Short exact sequences of cochain complexes, connecting maps and the
//! induced long exact sequence.

use serde::Serialize;

use super::complex::{CohomologyBasis, Complex, Grading};
use super::elim::{rank, solve_many, PivotOrder};
use super::field::Scalar;
use super::mat::Mat;
use super::LinalgError;

/// `0 → sub →inj→ total →proj→ quot → 0`, degreewise.
#[derive(Clone, Debug)]
pub struct ComplexSes {
    pub sub: Complex,
    pub total: Complex,
    pub quot: Complex,
    pub inj: Vec<Mat>,
    pub proj: Vec<Mat>,
}

impl ComplexSes {
    /// Checks exactness at every degree and that both maps are chain maps.
    pub fn validate(&self) -> Result<(), LinalgError> {
        let ill = |m: String| Err(LinalgError::IllFormedSes(m));
        for c in [&self.sub, &self.total, &self.quot] {
            if c.grading() != Grading::Cochain {
                return ill("only cochain complexes are supported".into());
            }
        }
        let top = self.total.top();
        if self.sub.top() != top || self.quot.top() != top || self.inj.len() != top + 1 || self.proj.len() != top + 1 {
            return ill("complexes and maps cover different degree ranges".into());
        }
        for n in 0..=top {
            let (i, p) = (&self.inj[n], &self.proj[n]);
            if i.rows() != self.total.dim(n) || i.cols() != self.sub.dim(n) {
                return ill(format!("inclusion in degree {n} has the wrong shape"));
            }
            if p.rows() != self.quot.dim(n) || p.cols() != self.total.dim(n) {
                return ill(format!("projection in degree {n} has the wrong shape"));
            }
            if !p.mul(i).is_zero() {
                return ill(format!("proj∘inj ≠ 0 in degree {n}"));
            }
            let (ri, rp) = (rank(i), rank(p));
            if ri != i.cols() {
                return ill(format!("inclusion not injective in degree {n}"));
            }
            if rp != p.rows() {
                return ill(format!("projection not surjective in degree {n}"));
            }
            if ri + rp != self.total.dim(n) {
                return ill(format!("not exact in the middle in degree {n}"));
            }
        }
        for n in 0..top {
            let ds = &self.sub.diffs()[n];
            let dt = &self.total.diffs()[n];
            let dq = &self.quot.diffs()[n];
            if dt.mul(&self.inj[n]) != self.inj[n + 1].mul(ds) {
                return ill(format!("inclusion does not commute with d in degree {n}"));
            }
            if dq.mul(&self.proj[n]) != self.proj[n + 1].mul(dt) {
                return ill(format!("projection does not commute with d in degree {n}"));
            }
        }
        Ok(())
    }

    /// Image under the connecting map of a quotient cocycle of degree `n`, as a
    /// cocycle of the sub complex in degree `n + 1`. The lift through `proj`
    /// is chosen by the solver with the given pivot order.
    pub fn connecting_cocycle(
        &self,
        n: usize,
        cocycles: &[Vec<Scalar>],
        order: PivotOrder,
    ) -> Result<Vec<Vec<Scalar>>, LinalgError> {
        if n + 1 > self.total.top() {
            return Err(LinalgError::DegreeOutOfRange(n + 1));
        }
        let lifts = solve_many(&self.proj[n], cocycles, order);
        let d = &self.total.diffs()[n];
        let pushed: Vec<Vec<Scalar>> = lifts
            .into_iter()
            .map(|l| l.map(|y| d.mul_vec(&y)).ok_or_else(|| LinalgError::IllFormedSes("projection not surjective".into())))
            .collect::<Result<_, _>>()?;
        solve_many(&self.inj[n + 1], &pushed, order)
            .into_iter()
            .map(|x| x.ok_or_else(|| LinalgError::IllFormedSes("d(lift) is not in the sub complex".into())))
            .collect()
    }

    /// Matrix of `δⁿ: Hⁿ(quot) → Hⁿ⁺¹(sub)` on the canonical cohomology bases.
    pub fn connecting_map(
        &self,
        n: usize,
        quot_basis: &CohomologyBasis,
        sub_basis: &CohomologyBasis,
        order: PivotOrder,
    ) -> Result<Mat, LinalgError> {
        let images = self.connecting_cocycle(n, quot_basis.reps(), order)?;
        let coords = sub_basis.coords_many(&images)?;
        Ok(Mat::from_columns(self.total.field(), sub_basis.dim(), &coords))
    }
}

/// Connecting map `δⁿ` of a validated short exact sequence.
pub fn snake_connecting(ses: &ComplexSes, n: usize) -> Result<Mat, LinalgError> {
    ses.validate()?;
    let hq = ses.quot.cohomology_basis(n)?;
    let hs = ses.sub.cohomology_basis(n + 1)?;
    ses.connecting_map(n, &hq, &hs, PivotOrder::Forward)
}

#[derive(Clone, Debug, Serialize)]
pub struct Term {
    pub label: String,
    pub degree: usize,
    pub dim: usize,
}

/// Verdict at one interior position of an exact sequence.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Exactness {
    pub position: usize,
    pub incoming_rank: usize,
    pub outgoing_rank: usize,
    pub composes_to_zero: bool,
    pub exact: bool,
}

/// A finite stretch `T₀ → T₁ → ⋯ → T_k` of a long sequence. When
/// `starts_with_zero` is set the implicit map `0 → T₀` is included.
#[derive(Clone, Debug)]
pub struct ExactSequence {
    pub terms: Vec<Term>,
    pub maps: Vec<Mat>,
    pub starts_with_zero: bool,
}

impl ExactSequence {
    /// Verdicts at every term that has both neighbours (the last term is
    /// skipped because its outgoing map is not part of the stretch).
    pub fn verdicts(&self) -> Vec<Exactness> {
        let mut out = Vec::new();
        for pos in 0..self.terms.len().saturating_sub(1) {
            let outgoing = &self.maps[pos];
            let incoming = if pos == 0 {
                if !self.starts_with_zero {
                    continue;
                }
                Mat::zeros(outgoing.field(), self.terms[0].dim, 0)
            } else {
                self.maps[pos - 1].clone()
            };
            let ri = rank(&incoming);
            let ro = rank(outgoing);
            let composes_to_zero = outgoing.mul(&incoming).is_zero();
            out.push(Exactness {
                position: pos,
                incoming_rank: ri,
                outgoing_rank: ro,
                composes_to_zero,
                exact: composes_to_zero && ri + ro == self.terms[pos].dim,
            });
        }
        out
    }
}

/// Assembles `Hⁿ(sub) → Hⁿ(total) → Hⁿ(quot) → Hⁿ⁺¹(sub) → ⋯` for
/// `n = 0..=max_degree`, ending at `H^{max_degree+1}(total)`. Requires the
/// complexes to reach degree `max_degree + 2`. `labels` names the three kinds
/// of terms and receives the degree.
pub fn long_exact_sequence(
    ses: &ComplexSes,
    max_degree: usize,
    labels: &dyn Fn(usize, usize) -> String,
    order: PivotOrder,
) -> Result<ExactSequence, LinalgError> {
    ses.validate()?;
    if ses.total.top() < max_degree + 2 {
        return Err(LinalgError::DegreeOutOfRange(max_degree + 2));
    }
    let hs: Vec<CohomologyBasis> = (0..=max_degree + 1).map(|n| ses.sub.cohomology_basis(n)).collect::<Result<_, _>>()?;
    let ht: Vec<CohomologyBasis> = (0..=max_degree + 1).map(|n| ses.total.cohomology_basis(n)).collect::<Result<_, _>>()?;
    let hq: Vec<CohomologyBasis> = (0..=max_degree).map(|n| ses.quot.cohomology_basis(n)).collect::<Result<_, _>>()?;

    let mut terms = Vec::new();
    let mut maps = Vec::new();
    // The sequence starts at H⁰(sub) → H⁰(total).
    terms.push(Term { label: labels(0, 0), degree: 0, dim: hs[0].dim() });
    maps.push(hs[0].induced(&ses.inj[0], &ht[0])?);
    for n in 0..=max_degree {
        terms.push(Term { label: labels(1, n), degree: n, dim: ht[n].dim() });
        maps.push(ht[n].induced(&ses.proj[n], &hq[n])?);
        terms.push(Term { label: labels(2, n), degree: n, dim: hq[n].dim() });
        maps.push(ses.connecting_map(n, &hq[n], &hs[n + 1], order)?);
        terms.push(Term { label: labels(0, n + 1), degree: n + 1, dim: hs[n + 1].dim() });
        maps.push(hs[n + 1].induced(&ses.inj[n + 1], &ht[n + 1])?);
    }
    terms.push(Term {
        label: labels(1, max_degree + 1),
        degree: max_degree + 1,
        dim: ht[max_degree + 1].dim(),
    });
    Ok(ExactSequence { terms, maps, starts_with_zero: true })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::field::Field;

    /// sub = k in degree 1, total = (k →id→ k) in degrees 0,1, quot = k in degree 0.
    fn acyclic_middle() -> ComplexSes {
        let f = Field::Rationals;
        let sub = Complex::new(f, Grading::Cochain, vec![0, 1, 0], vec![Mat::zeros(f, 1, 0), Mat::zeros(f, 0, 1)]).unwrap();
        let total = Complex::new(
            f,
            Grading::Cochain,
            vec![1, 1, 0],
            vec![Mat::identity(f, 1), Mat::zeros(f, 0, 1)],
        )
        .unwrap();
        let quot = Complex::new(f, Grading::Cochain, vec![1, 0, 0], vec![Mat::zeros(f, 0, 1), Mat::zeros(f, 0, 0)]).unwrap();
        ComplexSes {
            sub,
            total,
            quot,
            inj: vec![Mat::zeros(f, 1, 0), Mat::identity(f, 1), Mat::zeros(f, 0, 0)],
            proj: vec![Mat::identity(f, 1), Mat::zeros(f, 0, 1), Mat::zeros(f, 0, 0)],
        }
    }

    #[test]
    fn connecting_map_is_iso_when_middle_is_acyclic() {
        let ses = acyclic_middle();
        let d = snake_connecting(&ses, 0).unwrap();
        assert_eq!((d.rows(), d.cols()), (1, 1));
        assert_eq!(rank(&d), 1);
    }

    #[test]
    fn split_sequence_has_zero_connecting_map() {
        let f = Field::Rationals;
        let a = Complex::new(f, Grading::Cochain, vec![1, 1, 0], vec![Mat::zeros(f, 1, 1), Mat::zeros(f, 0, 1)]).unwrap();
        let total = a.direct_sum(&a).unwrap();
        let inj: Vec<Mat> = (0..3)
            .map(|n| Mat::identity(f, a.dim(n)).vstack(&Mat::zeros(f, a.dim(n), a.dim(n))))
            .collect();
        let proj: Vec<Mat> = (0..3)
            .map(|n| Mat::zeros(f, a.dim(n), a.dim(n)).hstack(&Mat::identity(f, a.dim(n))))
            .collect();
        let ses = ComplexSes { sub: a.clone(), total, quot: a, inj, proj };
        for n in 0..1 {
            assert!(snake_connecting(&ses, n).unwrap().is_zero());
        }
    }

    #[test]
    fn ill_formed_sequence_is_rejected() {
        let mut ses = acyclic_middle();
        ses.proj[0] = Mat::zeros(Field::Rationals, 1, 1);
        assert!(matches!(snake_connecting(&ses, 0), Err(LinalgError::IllFormedSes(_))));
    }

    #[test]
    fn verdicts_on_short_sequence() {
        let f = Field::Rationals;
        let seq = ExactSequence {
            terms: vec![
                Term { label: "a".into(), degree: 0, dim: 1 },
                Term { label: "b".into(), degree: 0, dim: 1 },
                Term { label: "c".into(), degree: 0, dim: 0 },
            ],
            maps: vec![Mat::identity(f, 1), Mat::zeros(f, 0, 1)],
            starts_with_zero: true,
        };
        let v = seq.verdicts();
        assert!(v.iter().all(|e| e.exact));
    }
}
