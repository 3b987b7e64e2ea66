use std::collections::BTreeMap;

use super::{dense, unit, CategoryError, FinLinCategory};
use crate::linalg::{is_zero_vec, rank, Mat, Scalar};

/// A growing subspace of one hom space.
#[derive(Clone, Debug, Default)]
struct Span {
    basis: Vec<Vec<Scalar>>,
}

impl Span {
    /// Adds `v`; returns true if the span grew.
    fn insert(&mut self, c: &FinLinCategory, v: Vec<Scalar>) -> bool {
        if is_zero_vec(&v) {
            return false;
        }
        let n = v.len();
        self.basis.push(v);
        if rank(&Mat::from_columns(c.field(), n, &self.basis)) == self.basis.len() {
            true
        } else {
            self.basis.pop();
            false
        }
    }
}

impl FinLinCategory {
    /// True iff no non-zero composite between objects of `sub` passes through
    /// an object outside `sub`.
    ///
    /// Computed by a fixpoint: per pair `(a, b)` accumulate the span of
    /// composites `a → ⋯ → b` that have visited an outside object, growing it
    /// by pre- and post-composition until nothing changes.
    pub fn is_convex(&self, sub: &[usize]) -> Result<bool, CategoryError> {
        let n = self.num_objects();
        if let Some(x) = sub.iter().find(|x| **x >= n) {
            return Err(CategoryError::UnknownObject(x.to_string()));
        }
        let inside: Vec<bool> = (0..n).map(|x| sub.contains(&x)).collect();
        let mut spans: BTreeMap<(usize, usize), Span> = BTreeMap::new();
        for w in (0..n).filter(|w| !inside[*w]) {
            for a in 0..n {
                for b in 0..n {
                    for f in self.hom_range(a, w) {
                        for g in self.hom_range(w, b) {
                            let v = dense(self.hom_dim(a, b), self.compose_basis(g, f));
                            spans.entry((a, b)).or_default().insert(self, v);
                        }
                    }
                }
            }
        }
        let max_dim = self.nonzero_homs().map(|h| h.2).max().unwrap_or(0);
        let rounds = n * n * max_dim + 1;
        for _ in 0..rounds {
            let mut grew = false;
            let snapshot: Vec<((usize, usize), Vec<Vec<Scalar>>)> =
                spans.iter().map(|(k, s)| (*k, s.basis.clone())).collect();
            for ((a, b), basis) in snapshot {
                for c in 0..n {
                    for v in &basis {
                        for g in self.hom_range(b, c) {
                            let gv = unit(self.hom_dim(b, c), self.morphism(g).local);
                            let w = self.compose(a, b, c, &gv, v);
                            grew |= spans.entry((a, c)).or_default().insert(self, w);
                        }
                        for f in self.hom_range(c, a) {
                            let fv = unit(self.hom_dim(c, a), self.morphism(f).local);
                            let w = self.compose(c, a, b, v, &fv);
                            grew |= spans.entry((c, b)).or_default().insert(self, w);
                        }
                    }
                }
            }
            if !grew {
                break;
            }
        }
        Ok(spans
            .iter()
            .all(|((a, b), s)| !(inside[*a] && inside[*b]) || s.basis.is_empty()))
    }
}
