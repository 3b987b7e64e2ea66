use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;

use super::{CategoryError, Coeffs, FinLinCategory, Morphism};
use crate::linalg::Field;

/// A basis morphism addressed by `(source, target, position in the hom basis)`.
pub type BasisRef = (usize, usize, usize);

/// Incremental construction of a [`FinLinCategory`].
///
/// Compositions that are never set are zero. [`CategoryBuilder::unit`] marks a
/// basis element as the identity and fills in `id∘f = f` and `f∘id = f`
/// automatically; explicit entries always take precedence.
#[derive(Clone, Debug)]
pub struct CategoryBuilder {
    field: Field,
    objects: Vec<String>,
    homs: BTreeMap<(usize, usize), Vec<String>>,
    identity: BTreeMap<usize, Coeffs>,
    units: BTreeMap<usize, usize>,
    compose: BTreeMap<(BasisRef, BasisRef), Coeffs>,
}

impl CategoryBuilder {
    pub fn new(field: Field) -> CategoryBuilder {
        CategoryBuilder {
            field,
            objects: Vec::new(),
            homs: BTreeMap::new(),
            identity: BTreeMap::new(),
            units: BTreeMap::new(),
            compose: BTreeMap::new(),
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn object(&mut self, id: impl Into<String>) -> usize {
        self.objects.push(id.into());
        self.objects.len() - 1
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    /// Sets the basis of `hom(x, y)`.
    pub fn hom<S: Into<String>>(&mut self, x: usize, y: usize, ids: impl IntoIterator<Item = S>) -> &mut Self {
        let ids: Vec<String> = ids.into_iter().map(Into::into).collect();
        if ids.is_empty() {
            self.homs.remove(&(x, y));
        } else {
            self.homs.insert((x, y), ids);
        }
        self
    }

    pub fn hom_basis(&self, x: usize, y: usize) -> &[String] {
        self.homs.get(&(x, y)).map_or(&[], |v| v.as_slice())
    }

    pub fn identity(&mut self, x: usize, coeffs: Coeffs) -> &mut Self {
        self.identity.insert(x, coeffs);
        self
    }

    /// Declares basis element `local` of `hom(x, x)` to be the identity.
    pub fn unit(&mut self, x: usize, local: usize) -> &mut Self {
        self.identity.insert(x, vec![(local, self.field.one())]);
        self.units.insert(x, local);
        self
    }

    /// Sets `g∘f`, replacing any earlier value.
    pub fn compose(&mut self, g: BasisRef, f: BasisRef, result: Coeffs) -> &mut Self {
        self.compose.insert((g, f), result);
        self
    }

    pub fn build(&self) -> Result<FinLinCategory, CategoryError> {
        let n = self.objects.len();
        let bad = |m: String| Err(CategoryError::Malformed(m));
        for (i, o) in self.objects.iter().enumerate() {
            if self.objects[..i].contains(o) {
                return bad(format!("duplicate object `{o}`"));
            }
        }
        let mut morphisms = Vec::new();
        let mut homs = BTreeMap::new();
        for (&(x, y), ids) in &self.homs {
            if x >= n || y >= n {
                return bad(format!("hom space ({x}, {y}) refers to a missing object"));
            }
            for (i, id) in ids.iter().enumerate() {
                if ids[..i].contains(id) {
                    return bad(format!("duplicate morphism `{id}` in hom({}, {})", self.objects[x], self.objects[y]));
                }
            }
            homs.insert((x, y), (morphisms.len(), ids.len()));
            for (local, id) in ids.iter().enumerate() {
                morphisms.push(Morphism { src: x, tgt: y, local, id: id.clone() });
            }
        }
        let dim = |x: usize, y: usize| homs.get(&(x, y)).map_or(0, |h: &(usize, usize)| h.1);
        let global = |(x, y, i): BasisRef| -> Option<usize> {
            homs.get(&(x, y)).filter(|h| i < h.1).map(|h| h.0 + i)
        };

        let mut identity = Vec::with_capacity(n);
        for x in 0..n {
            let c = self.identity.get(&x).cloned().unwrap_or_default();
            if c.iter().any(|(i, _)| *i >= dim(x, x)) {
                return bad(format!("identity of `{}` is outside hom(x, x)", self.objects[x]));
            }
            identity.push(normalise(self.field, c));
        }

        let mut compose: HashMap<(usize, usize), Coeffs> = HashMap::new();
        for (&x, &u) in &self.units {
            let Some(id) = global((x, x, u)) else {
                return bad(format!("identity of `{}` is outside hom(x, x)", self.objects[x]));
            };
            for m in &morphisms {
                let g = global((m.src, m.tgt, m.local)).unwrap();
                let v = vec![(m.local, self.field.one())];
                if m.tgt == x {
                    compose.insert((id, g), v.clone());
                }
                if m.src == x {
                    compose.insert((g, id), v);
                }
            }
        }
        for ((g, f), result) in &self.compose {
            let describe = |r: &BasisRef| format!("({}, {}, {})", r.0, r.1, r.2);
            let (Some(gi), Some(fi)) = (global(*g), global(*f)) else {
                return bad(format!("composition of {} with {} uses an unknown morphism", describe(g), describe(f)));
            };
            if f.1 != g.0 {
                return bad(format!(
                    "{} and {} are not composable",
                    self.objects.get(g.0).map_or("?", |s| s),
                    self.objects.get(f.1).map_or("?", |s| s)
                ));
            }
            if result.iter().any(|(i, _)| *i >= dim(f.0, g.1)) {
                return bad(format!("composite of {} with {} leaves its hom space", describe(g), describe(f)));
            }
            let r = normalise(self.field, result.clone());
            if r.is_empty() {
                compose.remove(&(gi, fi));
            } else {
                compose.insert((gi, fi), r);
            }
        }
        compose.retain(|_, v| !v.is_empty());
        Ok(FinLinCategory { field: self.field, objects: self.objects.clone(), morphisms, homs, identity, compose })
    }
}

/// Reduces, sums duplicates, sorts, drops zeros.
fn normalise(field: Field, c: Coeffs) -> Coeffs {
    let mut acc: BTreeMap<usize, crate::linalg::Scalar> = BTreeMap::new();
    for (i, v) in c {
        let v = field.reduce(&v);
        let e = acc.entry(i).or_insert_with(crate::linalg::Scalar::zero);
        *e = field.add(e, &v);
    }
    acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
}

impl FinLinCategory {
    /// A builder pre-filled with this category, for derived constructions.
    pub fn to_builder(&self) -> CategoryBuilder {
        let mut b = CategoryBuilder::new(self.field);
        for o in &self.objects {
            b.object(o.clone());
        }
        for &(x, y) in self.homs.keys() {
            b.hom(x, y, self.hom_ids(x, y).into_iter().map(String::from).collect::<Vec<_>>());
        }
        for x in 0..self.num_objects() {
            b.identity(x, self.identity[x].clone());
        }
        for (g, f, v) in self.composition_table() {
            let (mg, mf) = (&self.morphisms[g], &self.morphisms[f]);
            b.compose((mg.src, mg.tgt, mg.local), (mf.src, mf.tgt, mf.local), v.clone());
        }
        b
    }
}
