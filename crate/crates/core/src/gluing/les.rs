use serde::Serialize;

use super::{one_point_extension, GluedCategory, GluingError, TildeComplex};
use crate::hochschild::{hm_cochain_complex, nerve_basis, NerveBasis};
use crate::linalg::{
    long_exact_sequence, rank, Complex, ComplexSes, ExactSequence, Exactness, Grading, Mat, PivotOrder, Quotient, Term,
};
use crate::module::{BimoduleRep, ModuleRep};

/// Block offsets of the cochain space `⊕_t N(t_last, t_first)` over a nerve basis.
fn offsets(basis: &NerveBasis, block: impl Fn(usize, usize) -> usize) -> (Vec<usize>, usize) {
    let mut offs = Vec::with_capacity(basis.len());
    let mut dim = 0;
    for t in basis.elements() {
        offs.push(dim);
        dim += block(t.last(), t.first());
    }
    (offs, dim)
}

/// `0 → Hom(M̃_{•−1}, r₁,₂N) → C•(C, N) → C•(C₁, r₁N) ⊕ C•(C₂, r₂N) → 0`
/// in degrees `0..=top`.
pub fn cochain_ses(glued: &GluedCategory, n: &BimoduleRep, top: usize) -> Result<ComplexSes, GluingError> {
    let c = glued.category();
    let f = c.field();
    let (r1, r2, r12) = (glued.r1(n)?, glued.r2(n)?, glued.r12(n)?);
    let total = hm_cochain_complex(c, n, top)?;
    let q1 = hm_cochain_complex(glued.c1(), &r1, top)?;
    let q2 = hm_cochain_complex(glued.c2(), &r2, top)?;
    let quot = q1.direct_sum(&q2)?;

    let tilde = TildeComplex::new(glued, top.saturating_sub(1));
    let sub = if top == 0 {
        Complex::zero(f, Grading::Cochain, 0)
    } else {
        let h = tilde.hom_complex(&r12)?;
        let mut dims = vec![0];
        dims.extend_from_slice(h.dims());
        let mut diffs = vec![Mat::zeros(f, h.dim(0), 0)];
        diffs.extend(h.diffs().iter().cloned());
        Complex::new(f, Grading::Cochain, dims, diffs)?
    };

    let n2 = glued.c2().num_objects();
    let mut inj = Vec::with_capacity(top + 1);
    let mut proj = Vec::with_capacity(top + 1);
    for d in 0..=top {
        let basis = nerve_basis(c, d);
        let (toff, tdim) = offsets(&basis, |x, y| n.dim(x, y));
        let mut trip = Vec::new();
        if d > 0 {
            let mut col = 0;
            for t in tilde.tuples(d - 1) {
                let pos = basis.position(&t.morphisms).expect("generators are nerve tuples");
                for k in 0..n.dim(t.last(), t.first()) {
                    trip.push((toff[pos] + k, col + k, f.one()));
                }
                col += n.dim(t.last(), t.first());
            }
        }
        inj.push(Mat::from_triplets(f, tdim, sub.dim(d), trip));

        let mut trip = Vec::new();
        let mut row = 0;
        for (part, emb, shift) in [(glued.c1(), glued.embedding1(), n2), (glued.c2(), glued.embedding2(), 0)] {
            for t in nerve_basis(part, d).elements() {
                let key: Vec<usize> = if d == 0 {
                    vec![t.objects[0] + shift]
                } else {
                    t.morphisms.iter().map(|g| emb.morphisms[*g]).collect()
                };
                let pos = basis.position(&key).expect("pure tuples are nerve tuples");
                let blk = n.dim(t.last() + shift, t.first() + shift);
                for k in 0..blk {
                    trip.push((row + k, toff[pos] + k, f.one()));
                }
                row += blk;
            }
        }
        proj.push(Mat::from_triplets(f, quot.dim(d), tdim, trip));
    }
    let ses = ComplexSes { sub, total, quot, inj, proj };
    ses.validate()?;
    Ok(ses)
}

/// Terms, map ranks and exactness verdicts of a long exact sequence.
#[derive(Clone, Debug, Serialize)]
pub struct LesReport {
    pub terms: Vec<Term>,
    pub ranks: Vec<usize>,
    pub verdicts: Vec<Exactness>,
    pub exact: bool,
    #[serde(skip)]
    pub sequence: ExactSequence,
}

impl LesReport {
    fn new(sequence: ExactSequence) -> LesReport {
        let verdicts = sequence.verdicts();
        LesReport {
            terms: sequence.terms.clone(),
            ranks: sequence.maps.iter().map(rank).collect(),
            exact: verdicts.iter().all(|v| v.exact),
            verdicts,
            sequence,
        }
    }

    pub fn dims(&self) -> Vec<usize> {
        self.terms.iter().map(|t| t.dim).collect()
    }
}

/// `⋯ → Hⁿ(C, N) → Hⁿ(C₁, r₁N) ⊕ Hⁿ(C₂, r₂N) → Extⁿ(M, r₁,₂N) → Hⁿ⁺¹(C, N) → ⋯`
/// for `n = 0..=max_degree`, preceded by `0 → H⁰(C, N)`.
pub fn les_check(glued: &GluedCategory, n: &BimoduleRep, max_degree: usize) -> Result<LesReport, GluingError> {
    let ses = cochain_ses(glued, n, max_degree + 2)?;
    let labels = |kind: usize, d: usize| match kind {
        0 if d == 0 => "0".to_string(),
        0 => format!("Ext^{}(M, r12 N)", d - 1),
        1 => format!("H^{d}(C, N)"),
        _ => format!("H^{d}(C1, r1 N) + H^{d}(C2, r2 N)"),
    };
    let mut seq = long_exact_sequence(&ses, max_degree, &labels, PivotOrder::Forward)?;
    // H⁰(sub) = 0: start at H⁰(C, N).
    seq.terms.remove(0);
    seq.maps.remove(0);
    Ok(LesReport::new(seq))
}

/// `0 → HH⁰(C[M]) → HH⁰(C) → Hom_C(M, M)/k → HH¹(C[M]) → HH¹(C) → Ext¹_C(M, M) → ⋯`
///
/// This is the glued sequence for `ONE ⊔_M C` with regular coefficients,
/// where the summand `H⁰(ONE) = k` is cancelled against the scalar
/// endomorphisms of `M`.
pub fn happel_les(m: &ModuleRep, max_degree: usize) -> Result<LesReport, GluingError> {
    if m.total_dim() == 0 {
        return Err(GluingError::ZeroModule);
    }
    let glued = one_point_extension(m)?;
    let f = glued.category().field();
    let n = glued.regular();
    let ses = cochain_ses(&glued, &n, max_degree + 2)?;
    let labels = |kind: usize, d: usize| match kind {
        0 if d == 1 => "Hom_C(M, M)/k".to_string(),
        0 => format!("Ext^{}_C(M, M)", d.saturating_sub(1)),
        1 => format!("HH^{d}(C[M])"),
        _ => format!("HH^{d}(C)"),
    };
    let les = long_exact_sequence(&ses, max_degree, &labels, PivotOrder::Forward)?;

    let point_dim = hm_cochain_complex(glued.c1(), &glued.r1(&n)?, 1)?.dim(0);
    let hh_c = hm_cochain_complex(glued.c2(), &glued.r2(&n)?, 1)?.cohomology_basis(0)?;
    let ht0 = ses.total.cohomology_basis(0)?;
    let hs1 = ses.sub.cohomology_basis(1)?;
    let ht1 = ses.total.cohomology_basis(1)?;

    // HH⁰(C[M]) → HH⁰(C): project onto the C summand.
    let proj_c = ses.proj[0].select_rows(&(point_dim..ses.quot.dim(0)).collect::<Vec<_>>());
    let a = ht0.induced(&proj_c, &hh_c)?;

    // δ of the unit class of ONE spans the scalars inside Hom_C(M, M).
    let mut unit = vec![f.zero(); ses.quot.dim(0)];
    unit[0] = f.one();
    let u = hs1.coords_many(&ses.connecting_cocycle(0, &[unit], PivotOrder::Forward)?)?;
    let scalars = Quotient::new(f, hs1.dim(), &u);
    let lifted: Vec<_> = hh_c
        .reps()
        .iter()
        .map(|z| {
            let mut v = vec![f.zero(); point_dim];
            v.extend_from_slice(z);
            v
        })
        .collect();
    let images = hs1.coords_many(&ses.connecting_cocycle(0, &lifted, PivotOrder::Forward)?)?;
    let delta = Mat::from_columns(f, scalars.dim(), &images.iter().map(|v| scalars.project(v)).collect::<Vec<_>>());
    let inj1 = hs1.induced(&ses.inj[1], &ht1)?;
    let u_mat = Mat::from_columns(f, hs1.dim(), &u);
    let well_defined = inj1.mul(&u_mat).is_zero();
    let inj1 = inj1.mul(&scalars.section_matrix());

    let t = |label: String, degree: usize, dim: usize| Term { label, degree, dim };
    let mut terms = vec![
        t(labels(1, 0), 0, ht0.dim()),
        t(labels(2, 0), 0, hh_c.dim()),
        t(labels(0, 1), 0, scalars.dim()),
    ];
    let mut maps = vec![a, delta, inj1];
    // From H¹(C[M]) on the glued sequence applies unchanged.
    terms.extend(les.terms[4..].iter().cloned());
    maps.extend(les.maps[4..].iter().cloned());
    for term in &mut terms[3..] {
        if term.label.starts_with("Ext^") {
            term.degree -= 1;
        }
    }
    let mut report = LesReport::new(ExactSequence { terms, maps, starts_with_zero: true });
    report.exact &= well_defined;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::category::{fixtures, FinLinCategory};
    use crate::gluing::glue;
    use crate::hochschild::{hh_regular, Variant};
    use crate::module::Variance;

    fn k_module(c: Arc<FinLinCategory>, dim: usize) -> ModuleRep {
        let f = c.field();
        ModuleRep::new(Variance::Right, c, vec![dim], vec![Mat::identity(f, dim)]).unwrap()
    }

    #[test]
    fn a2_from_two_points() {
        let g = one_point_extension(&k_module(Arc::new(fixtures::one()), 1)).unwrap();
        let ses = cochain_ses(&g, &g.regular(), 4).unwrap();
        for d in 0..=4 {
            assert_eq!(ses.total.dim(d), ses.sub.dim(d) + ses.quot.dim(d));
        }
        let r = les_check(&g, &g.regular(), 3).unwrap();
        assert!(r.exact);
        assert_eq!(&r.dims()[..5], &[1, 2, 1, 0, 0]);
    }

    #[test]
    fn zero_bimodule_splits() {
        let a2 = Arc::new(fixtures::a2());
        let kr = Arc::new(fixtures::kronecker());
        let g = glue(&BimoduleRep::zero(a2.clone(), kr.clone())).unwrap();
        let ses = cochain_ses(&g, &g.regular(), 3).unwrap();
        assert!(ses.sub.dims().iter().all(|d| *d == 0));
        let r = les_check(&g, &g.regular(), 1).unwrap();
        assert!(r.exact);
        let h = hh_regular(g.category(), 1, Variant::Cohomology).unwrap();
        let h1 = hh_regular(&a2, 1, Variant::Cohomology).unwrap();
        let h2 = hh_regular(&kr, 1, Variant::Cohomology).unwrap();
        assert_eq!(h, vec![h1[0] + h2[0], h1[1] + h2[1]]);
    }

    #[test]
    fn happel_for_kronecker() {
        let r = happel_les(&k_module(Arc::new(fixtures::one()), 2), 2).unwrap();
        assert!(r.exact, "{:?}", r.verdicts);
        assert_eq!(&r.dims()[..5], &[1, 1, 3, 3, 0]);
        let r = happel_les(&k_module(Arc::new(fixtures::one()), 1), 2).unwrap();
        assert!(r.exact);
        assert_eq!(&r.dims()[..5], &[1, 1, 0, 0, 0]);
        assert_eq!(
            happel_les(&k_module(Arc::new(fixtures::one()), 0), 1).unwrap_err(),
            GluingError::ZeroModule
        );
    }
}
