//! The resolution `M̃` of `M` by projective `C₁`-`C₂` bimodules.
//!
//! A generator of `M̃_{i,j}` is a tuple of basis morphisms
//! `y₀ → ⋯ → y_i →m x₀ → ⋯ → x_j` with `i` legs in `C₂`, one leg in `M`
//! and `j` legs in `C₁`; the free module on it is
//! `C₁(x_j, −) ⊗ C₂(−, y₀)`. Writing the legs in product order
//! `a₁ = last, …, a_n = first`, the bar differential splits into
//!
//! `d^h = c·a₁ ⊗ ⋯ + Σ_{k<j} (−1)^k ⋯ a_k a_{k+1} ⋯ + (−1)^j ⋯ a_j m ⋯`
//!
//! `d^v = (−1)^{j+1} ⋯ m a_{j+2} ⋯ + Σ_{k>j+1} (−1)^k ⋯ a_k a_{k+1} ⋯ + (−1)^n ⋯ ⊗ a_n·c`
//!
//! with `n = i + j + 1` legs in total, `d^h` lowering `j` and `d^v` lowering `i`.

use std::collections::HashMap;

use serde::Serialize;

use super::{GluedCategory, GluingError};
use crate::hochschild::{nerve_basis, NerveBasis, NerveTuple};
use crate::linalg::{rank, Complex, Field, Grading, Mat, Scalar};
use crate::module::BimoduleRep;

#[derive(Clone, Debug)]
struct Term {
    coeff: Scalar,
    /// A `C₁` morphism multiplied on the left of the generator.
    left: Option<usize>,
    target: usize,
    /// A `C₂` morphism multiplied on the right.
    right: Option<usize>,
}

#[derive(Clone, Debug)]
struct Generator {
    tuple: NerveTuple,
    i: usize,
    j: usize,
    dh: Vec<Term>,
    dv: Vec<Term>,
}

/// Generators of `M̃` up to a total degree, with their differentials.
#[derive(Clone, Debug)]
pub struct TildeComplex<'g> {
    glued: &'g GluedCategory,
    gens: Vec<Vec<Generator>>,
}

/// A double complex with the spaces of each total degree listed by bidegree;
/// `dh[p−1]` and `dv[p−1]` map total degree `p` to `p − 1`.
#[derive(Clone, Debug)]
pub struct DoubleComplex {
    pub field: Field,
    pub bidegrees: Vec<Vec<(usize, usize, usize)>>,
    pub dh: Vec<Mat>,
    pub dv: Vec<Mat>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct DoubleComplexCheck {
    pub dh_squared_zero: bool,
    pub dv_squared_zero: bool,
    pub anticommute: bool,
}

impl DoubleComplexCheck {
    pub fn holds(&self) -> bool {
        self.dh_squared_zero && self.dv_squared_zero && self.anticommute
    }
}

impl DoubleComplex {
    pub fn top(&self) -> usize {
        self.bidegrees.len() - 1
    }

    pub fn total_dim(&self, p: usize) -> usize {
        self.bidegrees[p].iter().map(|b| b.2).sum()
    }

    pub fn check(&self) -> DoubleComplexCheck {
        let mut out = DoubleComplexCheck { dh_squared_zero: true, dv_squared_zero: true, anticommute: true };
        for p in 2..=self.top() {
            let (h1, h0) = (&self.dh[p - 2], &self.dh[p - 1]);
            let (v1, v0) = (&self.dv[p - 2], &self.dv[p - 1]);
            out.dh_squared_zero &= h1.mul(h0).is_zero();
            out.dv_squared_zero &= v1.mul(v0).is_zero();
            out.anticommute &= h1.mul(v0).add(&v1.mul(h0)).is_zero();
        }
        out
    }

    /// The total complex `Tot_top → ⋯ → Tot_0` with `d = d^h + d^v`.
    pub fn total(&self) -> Complex {
        let dims = (0..=self.top()).map(|p| self.total_dim(p)).collect();
        let diffs = self.dh.iter().zip(&self.dv).map(|(h, v)| h.add(v)).collect();
        Complex::new(self.field, Grading::Chain, dims, diffs).expect("shapes agree by construction")
    }
}

/// Everything checked about `M̃` on one fixture.
#[derive(Clone, Debug, Serialize)]
pub struct TildeReport {
    pub max_degree: usize,
    pub generators: Vec<usize>,
    pub double_complex: DoubleComplexCheck,
    /// The augmented total complex is exact at every `(a, b)` through the cap.
    pub resolution: bool,
}

impl TildeReport {
    pub fn holds(&self) -> bool {
        self.double_complex.holds() && self.resolution
    }
}

fn signed(f: Field, c: &Scalar, negative: bool) -> Scalar {
    if negative {
        f.neg(c)
    } else {
        c.clone()
    }
}

impl<'g> TildeComplex<'g> {
    /// Generators of total degree `0..=top`.
    pub fn new(glued: &'g GluedCategory, top: usize) -> TildeComplex<'g> {
        let c = glued.category();
        let f = c.field();
        let mut gens: Vec<Vec<Generator>> = Vec::with_capacity(top + 1);
        let mut index: Vec<HashMap<Vec<usize>, usize>> = Vec::with_capacity(top + 1);
        for p in 0..=top {
            let mut level: Vec<Generator> = nerve_basis(c, p + 1)
                .elements()
                .iter()
                .filter(|t| glued.in_c2(t.first()) && !glued.in_c2(t.last()))
                .map(|t| {
                    let i = t.objects.iter().filter(|x| glued.in_c2(**x)).count() - 1;
                    Generator { tuple: t.clone(), i, j: p - i, dh: Vec::new(), dv: Vec::new() }
                })
                .collect();
            level.sort_by_key(|g| g.i);
            if p > 0 {
                let below = &index[p - 1];
                for g in &mut level {
                    let fs = &g.tuple.morphisms;
                    let n = fs.len();
                    let target = |key: Vec<usize>| below[&key];
                    if g.j >= 1 {
                        g.dh.push(Term {
                            coeff: f.one(),
                            left: Some(fs[n - 1]),
                            target: target(fs[..n - 1].to_vec()),
                            right: None,
                        });
                    }
                    for q in 0..n - 1 {
                        let k = n - 1 - q;
                        let (src, tgt) = (c.morphism(fs[q]).src, c.morphism(fs[q + 1]).tgt);
                        for (h_local, coeff) in c.compose_basis(fs[q + 1], fs[q]) {
                            let mut key = fs[..q].to_vec();
                            key.push(c.hom_range(src, tgt).start + h_local);
                            key.extend_from_slice(&fs[q + 2..]);
                            let term =
                                Term { coeff: signed(f, coeff, k % 2 == 1), left: None, target: target(key), right: None };
                            if q >= g.i {
                                g.dh.push(term);
                            } else {
                                g.dv.push(term);
                            }
                        }
                    }
                    if g.i >= 1 {
                        g.dv.push(Term {
                            coeff: signed(f, &f.one(), n % 2 == 1),
                            left: None,
                            target: target(fs[1..].to_vec()),
                            right: Some(fs[0]),
                        });
                    }
                }
            }
            index.push(level.iter().enumerate().map(|(k, g)| (NerveBasis::key(&g.tuple), k)).collect());
            gens.push(level);
        }
        TildeComplex { glued, gens }
    }

    pub fn top(&self) -> usize {
        self.gens.len() - 1
    }

    /// Number of generators in each total degree.
    pub fn generator_counts(&self) -> Vec<usize> {
        self.gens.iter().map(Vec::len).collect()
    }

    /// Number of generators of bidegree `(i, j)`.
    pub fn bidegree_count(&self, i: usize, j: usize) -> usize {
        self.gens.get(i + j).map_or(0, |l| l.iter().filter(|g| g.i == i).count())
    }

    /// Generator tuples of total degree `p` in basis order.
    pub fn tuples(&self, p: usize) -> impl Iterator<Item = &NerveTuple> {
        self.gens[p].iter().map(|g| &g.tuple)
    }

    fn offsets(&self, p: usize, block: impl Fn(&NerveTuple) -> usize) -> (Vec<usize>, usize) {
        let mut offs = Vec::with_capacity(self.gens[p].len());
        let mut dim = 0;
        for g in &self.gens[p] {
            offs.push(dim);
            dim += block(&g.tuple);
        }
        (offs, dim)
    }

    /// `M̃` evaluated at `(a, b)` for glued objects `a ∈ C₁`, `b ∈ C₂`. The
    /// block of a generator has basis `u ⊗ T ⊗ v` with `u ∈ hom(x_j, a)`,
    /// `v ∈ hom(b, y₀)`, at position `u·dim hom(b, y₀) + v`.
    pub fn component(&self, a: usize, b: usize) -> DoubleComplex {
        let c = self.glued.category();
        let f = c.field();
        let block = |t: &NerveTuple| c.hom_dim(t.last(), a) * c.hom_dim(b, t.first());
        let layouts: Vec<(Vec<usize>, usize)> = (0..=self.top()).map(|p| self.offsets(p, block)).collect();
        let bidegrees = self
            .gens
            .iter()
            .map(|level| {
                let mut out: Vec<(usize, usize, usize)> = Vec::new();
                for g in level {
                    match out.last_mut() {
                        Some(last) if last.0 == g.i => last.2 += block(&g.tuple),
                        _ => out.push((g.i, g.j, block(&g.tuple))),
                    }
                }
                out
            })
            .collect();
        let mut dh = Vec::new();
        let mut dv = Vec::new();
        for p in 1..=self.top() {
            let (lo, ldim) = &layouts[p - 1];
            let (uo, udim) = &layouts[p];
            let mut th = Vec::new();
            let mut tv = Vec::new();
            for (gi, g) in self.gens[p].iter().enumerate() {
                let (xl, y0) = (g.tuple.last(), g.tuple.first());
                let dv_b = c.hom_dim(b, y0);
                for (terms, trip) in [(&g.dh, &mut th), (&g.dv, &mut tv)] {
                    for term in terms {
                        let tt = &self.gens[p - 1][term.target].tuple;
                        let dv_b2 = c.hom_dim(b, tt.first());
                        for (ul, u) in c.hom_range(xl, a).enumerate() {
                            let us: Vec<(usize, Scalar)> = match term.left {
                                Some(gm) => c.compose_basis(u, gm).to_vec(),
                                None => vec![(ul, f.one())],
                            };
                            for (vl, v) in c.hom_range(b, y0).enumerate() {
                                let vs: Vec<(usize, Scalar)> = match term.right {
                                    Some(h) => c.compose_basis(h, v).to_vec(),
                                    None => vec![(vl, f.one())],
                                };
                                let col = uo[gi] + ul * dv_b + vl;
                                for (u2, cu) in &us {
                                    for (v2, cv) in &vs {
                                        let row = lo[term.target] + u2 * dv_b2 + v2;
                                        trip.push((row, col, f.mul(&term.coeff, &f.mul(cu, cv))));
                                    }
                                }
                            }
                        }
                    }
                }
            }
            dh.push(Mat::from_triplets(f, *ldim, *udim, th));
            dv.push(Mat::from_triplets(f, *ldim, *udim, tv));
        }
        DoubleComplex { field: f, bidegrees, dh, dv }
    }

    /// `ε: M̃₀ → M` at `(a, b)`, `u ⊗ m ⊗ v ↦ u·m·v`.
    pub fn augmentation(&self, a: usize, b: usize) -> Mat {
        let c = self.glued.category();
        let f = c.field();
        let (offs, dim) = self.offsets(0, |t| c.hom_dim(t.last(), a) * c.hom_dim(b, t.first()));
        let mut trip = Vec::new();
        for (gi, g) in self.gens[0].iter().enumerate() {
            let m = g.tuple.morphisms[0];
            let (y0, x0) = (g.tuple.first(), g.tuple.last());
            let dv_b = c.hom_dim(b, y0);
            for (ul, u) in c.hom_range(x0, a).enumerate() {
                for (vl, v) in c.hom_range(b, y0).enumerate() {
                    for (k, cmv) in c.compose_basis(m, v) {
                        let mv = c.hom_range(b, x0).start + k;
                        for (r, cu) in c.compose_basis(u, mv) {
                            trip.push((*r, offs[gi] + ul * dv_b + vl, f.mul(cmv, cu)));
                        }
                    }
                }
            }
        }
        Mat::from_triplets(f, c.hom_dim(b, a), dim, trip)
    }

    /// Checks the double complex identities and that `M̃ → M → 0` is exact in
    /// degrees below the top, at every pair of objects.
    pub fn report(&self) -> TildeReport {
        let c = self.glued.category();
        let mut check = DoubleComplexCheck { dh_squared_zero: true, dv_squared_zero: true, anticommute: true };
        let mut resolution = true;
        for a in self.glued.embedding1().objects.clone() {
            for b in self.glued.embedding2().objects.clone() {
                let dc = self.component(a, b);
                let ch = dc.check();
                check.dh_squared_zero &= ch.dh_squared_zero;
                check.dv_squared_zero &= ch.dv_squared_zero;
                check.anticommute &= ch.anticommute;
                let eps = self.augmentation(a, b);
                let tot = dc.total();
                resolution &= rank(&eps) == c.hom_dim(b, a);
                if self.top() >= 1 {
                    resolution &= eps.mul(&tot.diffs()[0]).is_zero();
                    // exact at Tot_0
                    resolution &= rank(&tot.diffs()[0]) + rank(&eps) == tot.dim(0);
                }
                for p in 1..self.top() {
                    let (din, dout) = (&tot.diffs()[p], &tot.diffs()[p - 1]);
                    resolution &= rank(din) + rank(dout) == tot.dim(p);
                }
            }
        }
        TildeReport { max_degree: self.top(), generators: self.generator_counts(), double_complex: check, resolution }
    }

    /// `Hom(M̃_•, X)` for a `C₁`-`C₂` bimodule `X`, degrees `0..=top`.
    pub fn hom_complex(&self, x: &BimoduleRep) -> Result<Complex, GluingError> {
        let g = self.glued;
        if **x.outer() != **g.c1() || **x.inner() != **g.c2() {
            return Err(GluingError::BaseMismatch);
        }
        let c = g.category();
        let f = c.field();
        let n2 = g.c2().num_objects();
        let local = |emb: &crate::category::Embedding| {
            let mut m = vec![usize::MAX; c.num_morphisms()];
            for (i, gm) in emb.morphisms.iter().enumerate() {
                m[*gm] = i;
            }
            m
        };
        let (loc1, loc2) = (local(g.embedding1()), local(g.embedding2()));
        let block = |t: &NerveTuple| x.dim(t.last() - n2, t.first());
        let layouts: Vec<(Vec<usize>, usize)> = (0..=self.top()).map(|p| self.offsets(p, block)).collect();
        let mut diffs = Vec::with_capacity(self.top());
        for p in 0..self.top() {
            let (lo, ldim) = &layouts[p];
            let (uo, udim) = &layouts[p + 1];
            let mut trip = Vec::new();
            for (gi, gen) in self.gens[p + 1].iter().enumerate() {
                for term in gen.dh.iter().chain(&gen.dv) {
                    let t = &self.gens[p][term.target].tuple;
                    let (a, b) = (t.last() - n2, t.first());
                    let blk = match (term.left, term.right) {
                        (Some(l), _) => x.left(loc1[l], b).scale(&term.coeff),
                        (None, Some(r)) => x.right(loc2[r], a).scale(&term.coeff),
                        (None, None) => Mat::identity(f, x.dim(a, b)).scale(&term.coeff),
                    };
                    for (r, col, v) in blk.entries() {
                        trip.push((uo[gi] + r, lo[term.target] + col, v.clone()));
                    }
                }
            }
            diffs.push(Mat::from_triplets(f, *udim, *ldim, trip));
        }
        let dims = layouts.iter().map(|l| l.1).collect();
        let cx = Complex::new(f, Grading::Cochain, dims, diffs)?;
        cx.check_d_squared()?;
        Ok(cx)
    }
}

/// `Extⁿ_{C₁⊠C₂^op}(M, r₁,₂(N))` for `n = 0..=max_degree`, through `M̃`.
pub fn ext_dims_tilde(glued: &GluedCategory, n: &BimoduleRep, max_degree: usize) -> Result<Vec<usize>, GluingError> {
    let r12 = glued.r12(n)?;
    let tilde = TildeComplex::new(glued, max_degree + 1);
    let cx = tilde.hom_complex(&r12)?;
    Ok((0..=max_degree).map(|d| cx.cohomology_dim(d)).collect::<Result<_, _>>()?)
}
