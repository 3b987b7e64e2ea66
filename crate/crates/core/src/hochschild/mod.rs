//! The k-nerve, Hochschild-Mitchell (co)chain complexes with coefficients in
//! a bimodule, and Ext groups through the bar resolution.
//!
//! On a tuple `x₁ →f₁ x₂ → ⋯ →f_n x_{n+1}` write `a₁ = f_n, …, a_n = f₁`, so
//! that `a₁a₂⋯a_n = f_n∘⋯∘f₁`. Cochains take values in `_{x_{n+1}}M_{x₁}` and
//!
//! `(dφ)(a₁,…,a_{n+1}) = a₁·φ(a₂,…) + Σ (−1)^k φ(…,a_k a_{k+1},…) + (−1)^{n+1} φ(a₁,…,a_n)·a_{n+1}`.
//!
//! Chains are `m ⊗ a₁ ⊗ ⋯ ⊗ a_n` with `m ∈ _{x₁}M_{x_{n+1}}` and
//!
//! `d(m ⊗ a₁ ⊗ ⋯) = m·a₁ ⊗ a₂ ⊗ ⋯ + Σ (−1)^k m ⊗ ⋯ ⊗ a_k a_{k+1} ⊗ ⋯ + (−1)^n a_n·m ⊗ a₁ ⊗ ⋯ ⊗ a_{n−1}`.

mod nerve;

use serde::Serialize;
use thiserror::Error;

pub use nerve::{nerve_basis, nerve_count, projected_dims, NerveBasis, NerveTuple};

use crate::category::FinLinCategory;
use crate::linalg::{rank, Complex, Grading, LinalgError, Mat, Scalar};
use crate::module::{hom_k, same_category, BimoduleRep, ModuleError, ModuleRep};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HochschildError {
    #[error("coefficients are not a bimodule over the given category")]
    BaseMismatch,
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Cohomology,
    Homology,
}

fn check_coefficients(c: &FinLinCategory, m: &BimoduleRep) -> Result<(), HochschildError> {
    if **m.outer() != *c || **m.inner() != *c {
        return Err(HochschildError::BaseMismatch);
    }
    Ok(())
}

/// Block offsets of a cochain or chain space over a nerve basis.
struct Layout {
    offsets: Vec<usize>,
    dim: usize,
}

impl Layout {
    fn new(basis: &NerveBasis, block: impl Fn(&NerveTuple) -> usize) -> Layout {
        let mut offsets = Vec::with_capacity(basis.len());
        let mut dim = 0;
        for t in basis.elements() {
            offsets.push(dim);
            dim += block(t);
        }
        Layout { offsets, dim }
    }
}

struct Triplets {
    trip: Vec<(usize, usize, Scalar)>,
}

impl Triplets {
    fn block(&mut self, r0: usize, c0: usize, m: &Mat, sign: bool) {
        let f = m.field();
        for (r, c, v) in m.entries() {
            let v = if sign { f.neg(v) } else { v.clone() };
            self.trip.push((r0 + r, c0 + c, v));
        }
    }

    /// Adds `coeff · I_d` at `(r0, c0)`.
    fn scaled_identity(&mut self, r0: usize, c0: usize, d: usize, coeff: Scalar) {
        for i in 0..d {
            self.trip.push((r0 + i, c0 + i, coeff.clone()));
        }
    }
}

/// Tuple with `fⱼ, fⱼ₊₁` (0-based `j`) replaced by basis element `h`.
fn merged_key(t: &NerveTuple, j: usize, h: usize) -> Vec<usize> {
    let mut key = Vec::with_capacity(t.morphisms.len() - 1);
    key.extend_from_slice(&t.morphisms[..j]);
    key.push(h);
    key.extend_from_slice(&t.morphisms[j + 2..]);
    key
}

/// Key of the face dropping `f₁` (`drop_first`) or `f_n`, one degree lower.
fn dropped_key(t: &NerveTuple, drop_first: bool) -> Vec<usize> {
    let n = t.morphisms.len();
    if n == 1 {
        vec![if drop_first { t.objects[1] } else { t.objects[0] }]
    } else if drop_first {
        t.morphisms[1..].to_vec()
    } else {
        t.morphisms[..n - 1].to_vec()
    }
}

/// Cochain differential `Cⁿ → Cⁿ⁺¹`.
fn cochain_differential(
    c: &FinLinCategory,
    m: &BimoduleRep,
    lower: (&NerveBasis, &Layout),
    upper: (&NerveBasis, &Layout),
) -> Mat {
    let f = c.field();
    let (lb, ll) = lower;
    let (ub, ul) = upper;
    let n = lb.degree();
    let mut t = Triplets { trip: Vec::new() };
    for (row_idx, tup) in ub.elements().iter().enumerate() {
        let r0 = ul.offsets[row_idx];
        let (x1, xlast) = (tup.first(), tup.last());
        let fs = &tup.morphisms;
        // a₁·φ(a₂,…): drop f_{n+1}, act on the left.
        let col = lb.position(&dropped_key(tup, false)).expect("faces are nerve tuples");
        t.block(r0, ll.offsets[col], m.left(fs[n], x1), false);
        // (−1)^{n+1} φ(a₁,…,a_n)·a_{n+1}: drop f₁, act on the right.
        let col = lb.position(&dropped_key(tup, true)).expect("faces are nerve tuples");
        t.block(r0, ll.offsets[col], m.right(fs[0], xlast), n % 2 == 0);
        // Inner faces f_{j+1}∘f_j, sign (−1)^{n+1−j} for 1-based j.
        let d = m.dim(xlast, x1);
        for j in 0..n {
            let sign_negative = (n - j) % 2 == 1;
            for (h_local, coeff) in c.compose_basis(fs[j + 1], fs[j]) {
                let src = c.morphism(fs[j]).src;
                let tgt = c.morphism(fs[j + 1]).tgt;
                let h = c.hom_range(src, tgt).start + h_local;
                let col = lb.position(&merged_key(tup, j, h)).expect("faces are nerve tuples");
                let v = if sign_negative { f.neg(coeff) } else { coeff.clone() };
                t.scaled_identity(r0, ll.offsets[col], d, v);
            }
        }
    }
    Mat::from_triplets(f, ul.dim, ll.dim, t.trip)
}

/// Chain differential `C_n → C_{n−1}`.
fn chain_differential(
    c: &FinLinCategory,
    m: &BimoduleRep,
    lower: (&NerveBasis, &Layout),
    upper: (&NerveBasis, &Layout),
) -> Mat {
    let f = c.field();
    let (lb, ll) = lower;
    let (ub, ul) = upper;
    let n = ub.degree();
    let mut t = Triplets { trip: Vec::new() };
    for (col_idx, tup) in ub.elements().iter().enumerate() {
        let c0 = ul.offsets[col_idx];
        let (x1, xlast) = (tup.first(), tup.last());
        let fs = &tup.morphisms;
        // m·a₁ with a₁ = f_n.
        let row = lb.position(&dropped_key(tup, false)).expect("faces are nerve tuples");
        t.block(ll.offsets[row], c0, m.right(fs[n - 1], x1), false);
        // (−1)^n a_n·m with a_n = f₁.
        let row = lb.position(&dropped_key(tup, true)).expect("faces are nerve tuples");
        t.block(ll.offsets[row], c0, m.left(fs[0], xlast), n % 2 == 1);
        let d = m.dim(x1, xlast);
        for j in 0..n - 1 {
            // 1-based j+1, sign (−1)^{n−(j+1)}
            let sign_negative = (n - j - 1) % 2 == 1;
            for (h_local, coeff) in c.compose_basis(fs[j + 1], fs[j]) {
                let src = c.morphism(fs[j]).src;
                let tgt = c.morphism(fs[j + 1]).tgt;
                let h = c.hom_range(src, tgt).start + h_local;
                let row = lb.position(&merged_key(tup, j, h)).expect("faces are nerve tuples");
                let v = if sign_negative { f.neg(coeff) } else { coeff.clone() };
                t.scaled_identity(ll.offsets[row], c0, d, v);
            }
        }
    }
    Mat::from_triplets(f, ll.dim, ul.dim, t.trip)
}

/// `C⁰ → C¹ → ⋯ → C^top` with coefficients in `m`.
pub fn hm_cochain_complex(c: &FinLinCategory, m: &BimoduleRep, top: usize) -> Result<Complex, HochschildError> {
    check_coefficients(c, m)?;
    let bases: Vec<NerveBasis> = (0..=top).map(|n| nerve_basis(c, n)).collect();
    let layouts: Vec<Layout> = bases.iter().map(|b| Layout::new(b, |t| m.dim(t.last(), t.first()))).collect();
    let diffs = (0..top)
        .map(|n| cochain_differential(c, m, (&bases[n], &layouts[n]), (&bases[n + 1], &layouts[n + 1])))
        .collect();
    let cx = Complex::new(c.field(), Grading::Cochain, layouts.iter().map(|l| l.dim).collect(), diffs)?;
    cx.check_d_squared()?;
    Ok(cx)
}

/// `C_0 ← C_1 ← ⋯ ← C_top` with coefficients in `m`.
pub fn hm_chain_complex(c: &FinLinCategory, m: &BimoduleRep, top: usize) -> Result<Complex, HochschildError> {
    check_coefficients(c, m)?;
    let bases: Vec<NerveBasis> = (0..=top).map(|n| nerve_basis(c, n)).collect();
    let layouts: Vec<Layout> = bases.iter().map(|b| Layout::new(b, |t| m.dim(t.first(), t.last()))).collect();
    let diffs = (0..top)
        .map(|n| chain_differential(c, m, (&bases[n], &layouts[n]), (&bases[n + 1], &layouts[n + 1])))
        .collect();
    let cx = Complex::new(c.field(), Grading::Chain, layouts.iter().map(|l| l.dim).collect(), diffs)?;
    cx.check_d_squared()?;
    Ok(cx)
}

/// `dim Hⁿ(C, M)` or `dim H_n(C, M)` for `n = 0..=max_degree`.
pub fn hh_dims(
    c: &FinLinCategory,
    m: &BimoduleRep,
    max_degree: usize,
    variant: Variant,
) -> Result<Vec<usize>, HochschildError> {
    let cx = match variant {
        Variant::Cohomology => hm_cochain_complex(c, m, max_degree + 1)?,
        Variant::Homology => hm_chain_complex(c, m, max_degree + 1)?,
    };
    Ok(cx.cohomology_dims()?)
}

/// `HH^•(C)` with coefficients in the regular bimodule.
pub fn hh_regular(c: &std::sync::Arc<FinLinCategory>, max_degree: usize, variant: Variant) -> Result<Vec<usize>, HochschildError> {
    hh_dims(c, &BimoduleRep::regular(c.clone()), max_degree, variant)
}

/// `Extⁿ(M, N)` for modules of the same variance, as `Hⁿ(D, Hom_k(M, N))`.
pub fn ext_dims_bar(m: &ModuleRep, n: &ModuleRep, max_degree: usize) -> Result<Vec<usize>, HochschildError> {
    let h = hom_k(m, n)?;
    hh_dims(m.base(), &h, max_degree, Variant::Cohomology)
}

/// The cochain complex computing `Ext(M, N)` through the bar resolution.
pub fn ext_complex_bar(m: &ModuleRep, n: &ModuleRep, top: usize) -> Result<Complex, HochschildError> {
    let h = hom_k(m, n)?;
    hm_cochain_complex(m.base(), &h, top)
}

/// `Extⁿ(M, N)` for `A`-`B` bimodules, as modules over `A ⊠ B^op`.
pub fn ext_dims_bar_bimodule(m: &BimoduleRep, n: &BimoduleRep, max_degree: usize) -> Result<Vec<usize>, HochschildError> {
    if !same_category(m.outer(), n.outer()) || !same_category(m.inner(), n.inner()) {
        return Err(ModuleError::BaseMismatch.into());
    }
    let (em, en) = (m.to_enveloping_module(), n.to_enveloping_module());
    let en = ModuleRep::new(en.variance(), em.base().clone(), en.dims().to_vec(), en.actions().to_vec())?;
    ext_dims_bar(&em, &en, max_degree)
}

/// Dimension of the center: families `λ_x ∈ hom(x, x)` with `λ_y∘f = f∘λ_x`.
pub fn center_dim(c: &FinLinCategory) -> usize {
    let f = c.field();
    let no = c.num_objects();
    let mut offset = vec![0; no + 1];
    for x in 0..no {
        offset[x + 1] = offset[x] + c.hom_dim(x, x);
    }
    let mut trip = Vec::new();
    let mut rows = 0;
    for (g, mor) in c.morphisms().iter().enumerate() {
        let (x, y) = (mor.src, mor.tgt);
        // f∘λ_x − λ_y∘f, coordinates in hom(x, y)
        for (k, l) in c.hom_range(x, x).enumerate() {
            for (r, v) in c.compose_basis(g, l) {
                trip.push((rows + r, offset[x] + k, v.clone()));
            }
        }
        for (k, l) in c.hom_range(y, y).enumerate() {
            for (r, v) in c.compose_basis(l, g) {
                trip.push((rows + r, offset[y] + k, f.neg(v)));
            }
        }
        rows += c.hom_dim(x, y);
    }
    let m = Mat::from_triplets(f, rows, offset[no], trip);
    offset[no] - rank(&m)
}

/// Dimension of `⊕_x hom(x, x)` modulo commutators `f∘g − g∘f`.
pub fn cocenter_dim(c: &FinLinCategory) -> usize {
    let f = c.field();
    let no = c.num_objects();
    let mut offset = vec![0; no + 1];
    for x in 0..no {
        offset[x + 1] = offset[x] + c.hom_dim(x, x);
    }
    let mut cols: Vec<Vec<Scalar>> = Vec::new();
    for x in 0..no {
        for y in 0..no {
            for g in c.hom_range(x, y) {
                for h in c.hom_range(y, x) {
                    let mut v = vec![f.zero(); offset[no]];
                    for (r, val) in c.compose_basis(h, g) {
                        v[offset[x] + r] = f.add(&v[offset[x] + r], val);
                    }
                    for (r, val) in c.compose_basis(g, h) {
                        v[offset[y] + r] = f.sub(&v[offset[y] + r], val);
                    }
                    cols.push(v);
                }
            }
        }
    }
    let m = Mat::from_columns(f, offset[no], &cols);
    offset[no] - rank(&m)
}
