use super::hom::MapCheck;
use super::{same_category, BimoduleRep, ModuleError};
use crate::linalg::{Mat, Quotient, Scalar};

/// `M ⊗_B N` for an `A`-`B` bimodule `M` and a `B`-`C` bimodule `N`.
///
/// The space at `(a, c)` is the cokernel of the relations
/// `m·g ⊗ n − m ⊗ g·n` inside `⊕_b _aM_b ⊗ _bN_c`, with an explicit basis of
/// coordinate vectors chosen by elimination.
#[derive(Clone, Debug)]
pub struct TensorProduct {
    bimodule: BimoduleRep,
    offsets: Vec<Vec<Vec<usize>>>,
    ambient: Vec<Vec<usize>>,
    relations: Vec<Vec<Mat>>,
    quotients: Vec<Vec<Quotient>>,
}

/// Assembles a matrix from blocks given as `(row offset, column offset, block)`.
fn place(f: crate::linalg::Field, r: usize, c: usize, parts: &[(usize, usize, &Mat)]) -> Mat {
    let trip = parts
        .iter()
        .flat_map(|(ro, co, m)| m.entries().iter().map(move |(i, j, v)| (ro + i, co + j, v.clone())));
    Mat::from_triplets(f, r, c, trip)
}

pub fn tensor_over_cat(m: &BimoduleRep, n: &BimoduleRep) -> Result<TensorProduct, ModuleError> {
    if !same_category(m.inner(), n.outer()) {
        return Err(ModuleError::CategoryMismatch);
    }
    let f = m.field();
    let (acat, bcat, ccat) = (m.outer(), m.inner(), n.inner());
    let (na, nb, nc) = (acat.num_objects(), bcat.num_objects(), ccat.num_objects());
    let mut offsets = vec![vec![vec![0; nb + 1]; nc]; na];
    let mut ambient = vec![vec![0; nc]; na];
    for a in 0..na {
        for c in 0..nc {
            for b in 0..nb {
                offsets[a][c][b + 1] = offsets[a][c][b] + m.dim(a, b) * n.dim(b, c);
            }
            ambient[a][c] = offsets[a][c][nb];
        }
    }
    let id = |d: usize| Mat::identity(f, d);
    let mut relations = Vec::with_capacity(na);
    let mut quotients = Vec::with_capacity(na);
    for a in 0..na {
        let mut rel_row = Vec::with_capacity(nc);
        let mut q_row = Vec::with_capacity(nc);
        for c in 0..nc {
            let off = &offsets[a][c];
            let mut rel = Mat::zeros(f, ambient[a][c], 0);
            for (g, mor) in bcat.morphisms().iter().enumerate() {
                let (b, b2) = (mor.src, mor.tgt);
                // columns indexed by (i ∈ _aM_b2, k ∈ _bN_c)
                let lhs = m.right(g, a).kron(&id(n.dim(b, c)));
                let rhs = id(m.dim(a, b2)).kron(n.left(g, c)).scale(&f.neg(&f.one()));
                let width = lhs.cols();
                let block = place(f, ambient[a][c], width, &[(off[b], 0, &lhs), (off[b2], 0, &rhs)]);
                rel = rel.hstack(&block);
            }
            q_row.push(Quotient::new(f, ambient[a][c], &rel.columns()));
            rel_row.push(rel);
        }
        relations.push(rel_row);
        quotients.push(q_row);
    }

    let dims = quotients.iter().map(|row| row.iter().map(Quotient::dim).collect()).collect();
    let ambient_left = |g: usize, c: usize| {
        let mor = acat.morphism(g);
        let (a, a2) = (mor.src, mor.tgt);
        let parts: Vec<Mat> = (0..nb).map(|b| m.left(g, b).kron(&id(n.dim(b, c)))).collect();
        let pos: Vec<(usize, usize, &Mat)> =
            (0..nb).map(|b| (offsets[a2][c][b], offsets[a][c][b], &parts[b])).collect();
        place(f, ambient[a2][c], ambient[a][c], &pos)
    };
    let ambient_right = |h: usize, a: usize| {
        let mor = ccat.morphism(h);
        let (c, c2) = (mor.src, mor.tgt);
        let parts: Vec<Mat> = (0..nb).map(|b| id(m.dim(a, b)).kron(n.right(h, b))).collect();
        let pos: Vec<(usize, usize, &Mat)> =
            (0..nb).map(|b| (offsets[a][c][b], offsets[a][c2][b], &parts[b])).collect();
        place(f, ambient[a][c], ambient[a][c2], &pos)
    };
    let bimodule = BimoduleRep::from_fn(
        acat.clone(),
        ccat.clone(),
        dims,
        |g, c| {
            let mor = acat.morphism(g);
            let amb = ambient_left(g, c);
            quotients[mor.tgt][c].projection_matrix().mul(&amb).mul(&quotients[mor.src][c].section_matrix())
        },
        |h, a| {
            let mor = ccat.morphism(h);
            let amb = ambient_right(h, a);
            quotients[a][mor.src].projection_matrix().mul(&amb).mul(&quotients[a][mor.tgt].section_matrix())
        },
    );
    Ok(TensorProduct { bimodule, offsets, ambient, relations, quotients })
}

impl TensorProduct {
    pub fn bimodule(&self) -> &BimoduleRep {
        &self.bimodule
    }

    pub fn into_bimodule(self) -> BimoduleRep {
        self.bimodule
    }

    /// Dimension of `⊕_b _aM_b ⊗ _bN_c`.
    pub fn ambient_dim(&self, a: usize, c: usize) -> usize {
        self.ambient[a][c]
    }

    /// Offset of the summand `_aM_b ⊗ _bN_c`; basis `m_i ⊗ n_k` sits at `i·dim(_bN_c) + k`.
    pub fn block_offset(&self, a: usize, c: usize, b: usize) -> usize {
        self.offsets[a][c][b]
    }

    /// Relation vectors at `(a, c)` as columns.
    pub fn relations(&self, a: usize, c: usize) -> &Mat {
        &self.relations[a][c]
    }

    pub fn quotient(&self, a: usize, c: usize) -> &Quotient {
        &self.quotients[a][c]
    }

    /// Checks the map induced by `ambient_map(a, c): ⊕_b _aM_b ⊗ _bN_c → _aX_c`.
    ///
    /// The map must kill every relation; the induced maps on the quotient must
    /// commute with both actions and be bijective.
    pub fn check_induced(
        &self,
        target: &BimoduleRep,
        ambient_map: impl Fn(usize, usize) -> Mat,
    ) -> Result<InducedCheck, ModuleError> {
        let t = &self.bimodule;
        let (na, nc) = (t.outer().num_objects(), t.inner().num_objects());
        let mut well_defined = true;
        let mut components = Vec::with_capacity(na);
        for a in 0..na {
            let mut row = Vec::with_capacity(nc);
            for c in 0..nc {
                let phi = ambient_map(a, c);
                if (phi.rows(), phi.cols()) != (target.dim(a, c), self.ambient[a][c]) {
                    return Err(ModuleError::Shape(format!("ambient map at ({a}, {c}) has the wrong shape")));
                }
                well_defined &= phi.mul(&self.relations[a][c]).is_zero();
                row.push(phi.mul(&self.quotients[a][c].section_matrix()));
            }
            components.push(row);
        }
        let map = super::check_bimodule_map(t, target, &components)?;
        Ok(InducedCheck { well_defined, map, components })
    }
}

/// Result of [`TensorProduct::check_induced`].
#[derive(Clone, Debug)]
pub struct InducedCheck {
    pub well_defined: bool,
    pub map: MapCheck,
    pub components: Vec<Vec<Mat>>,
}

impl InducedCheck {
    pub fn is_iso(&self) -> bool {
        self.well_defined && self.map.is_iso()
    }
}

/// `c ⊗ x ↦ c·x` on `⊕_b _aC_b ⊗ _bX_c`, for `X` with outer category `C`.
pub fn left_multiplication(x: &BimoduleRep) -> impl Fn(usize, usize) -> Mat + '_ {
    move |a, c| {
        let cat = x.outer();
        let f = x.field();
        let mut out = Mat::zeros(f, x.dim(a, c), 0);
        for b in 0..cat.num_objects() {
            for g in cat.hom_range(b, a) {
                out = out.hstack(x.left(g, c));
            }
        }
        out
    }
}

/// `x ⊗ c ↦ x·c` on `⊕_b _aX_b ⊗ _bC_c`, for `X` with inner category `C`.
pub fn right_multiplication(x: &BimoduleRep) -> impl Fn(usize, usize) -> Mat + '_ {
    move |a, c| {
        let cat = x.inner();
        let f = x.field();
        let mut out = Mat::zeros(f, x.dim(a, c), 0);
        for b in 0..cat.num_objects() {
            let hs: Vec<usize> = cat.hom_range(c, b).collect();
            let mut cols: Vec<Vec<Scalar>> = Vec::with_capacity(x.dim(a, b) * hs.len());
            for i in 0..x.dim(a, b) {
                for &h in &hs {
                    cols.push(x.right(h, a).column(i));
                }
            }
            out = out.hstack(&Mat::from_columns(f, x.dim(a, c), &cols));
        }
        out
    }
}
