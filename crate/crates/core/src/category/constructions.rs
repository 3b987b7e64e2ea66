use std::collections::HashMap;

use super::{CategoryBuilder, CategoryError, Coeffs, FinLinCategory};
use crate::linalg::Field;

/// A partition of the objects into named, non-empty, disjoint classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    classes: Vec<(String, Vec<usize>)>,
}

impl Partition {
    /// Classes given by object ids.
    pub fn new<S: AsRef<str>>(c: &FinLinCategory, classes: &[(String, Vec<S>)]) -> Result<Partition, CategoryError> {
        let mut idx = Vec::new();
        for (name, objs) in classes {
            let ids = objs
                .iter()
                .map(|o| {
                    c.object_index(o.as_ref())
                        .map_err(|_| CategoryError::InvalidPartition(format!("unknown object `{}`", o.as_ref())))
                })
                .collect::<Result<Vec<_>, _>>()?;
            idx.push((name.clone(), ids));
        }
        Partition::from_indices(c, idx)
    }

    pub fn from_indices(c: &FinLinCategory, classes: Vec<(String, Vec<usize>)>) -> Result<Partition, CategoryError> {
        let bad = |m: String| Err(CategoryError::InvalidPartition(m));
        let mut owner = vec![None; c.num_objects()];
        for (k, (name, objs)) in classes.iter().enumerate() {
            if objs.is_empty() {
                return bad(format!("class `{name}` is empty"));
            }
            if classes[..k].iter().any(|(n, _)| n == name) {
                return bad(format!("class `{name}` appears twice"));
            }
            for &x in objs {
                if x >= c.num_objects() {
                    return bad(format!("class `{name}` contains an unknown object"));
                }
                if owner[x].is_some() {
                    return bad(format!("object `{}` lies in two classes", c.objects()[x]));
                }
                owner[x] = Some(k);
            }
        }
        if let Some(x) = owner.iter().position(Option::is_none) {
            return bad(format!("object `{}` is not covered", c.objects()[x]));
        }
        Ok(Partition { classes })
    }

    pub fn singletons(c: &FinLinCategory) -> Partition {
        Partition { classes: c.objects().iter().enumerate().map(|(i, o)| (o.clone(), vec![i])).collect() }
    }

    pub fn one_class(c: &FinLinCategory, name: &str) -> Partition {
        Partition { classes: vec![(name.to_string(), (0..c.num_objects()).collect())] }
    }

    pub fn classes(&self) -> &[(String, Vec<usize>)] {
        &self.classes
    }

    pub fn class_of(&self, x: usize) -> usize {
        self.classes.iter().position(|(_, o)| o.contains(&x)).expect("partition covers every object")
    }

    /// Position of basis morphism `(x, y, local)` inside the contracted hom space.
    pub(crate) fn block_offset(&self, c: &FinLinCategory, x: usize, y: usize) -> usize {
        let (e, f) = (self.class_of(x), self.class_of(y));
        let mut off = 0;
        for &a in &self.classes[e].1 {
            for &b in &self.classes[f].1 {
                if (a, b) == (x, y) {
                    return off;
                }
                off += c.hom_dim(a, b);
            }
        }
        unreachable!("object pair not in its classes")
    }
}

/// Inclusion of a full subcategory: object and global morphism indices in the ambient category.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    pub objects: Vec<usize>,
    pub morphisms: Vec<usize>,
}

impl FinLinCategory {
    /// `hom^op(x, y) = hom(y, x)`, `g ∘^op f = f ∘ g`.
    pub fn opposite(&self) -> FinLinCategory {
        let mut b = CategoryBuilder::new(self.field);
        for o in &self.objects {
            b.object(o.clone());
        }
        for (x, y, _) in self.nonzero_homs() {
            b.hom(y, x, self.hom_ids(x, y).into_iter().map(String::from).collect::<Vec<_>>());
        }
        for x in 0..self.num_objects() {
            b.identity(x, self.identity[x].clone());
        }
        for (g, f, v) in self.composition_table() {
            let (mg, mf) = (&self.morphisms[g], &self.morphisms[f]);
            b.compose((mf.tgt, mf.src, mf.local), (mg.tgt, mg.src, mg.local), v.clone());
        }
        b.build().expect("opposite of a well-formed category")
    }

    /// External tensor product. Objects are pairs `(c, d)` numbered `c·|D₀| + d`;
    /// the basis `f*g` of `hom((c,d),(c',d'))` is numbered `i·dim hom(d,d') + k`.
    pub fn box_tensor(&self, other: &FinLinCategory) -> Result<FinLinCategory, CategoryError> {
        if self.field != other.field {
            return Err(CategoryError::FieldMismatch(self.field, other.field));
        }
        let f = self.field;
        let nd = other.num_objects();
        let obj = |c: usize, d: usize| c * nd + d;
        let mut b = CategoryBuilder::new(f);
        for c in &self.objects {
            for d in &other.objects {
                b.object(format!("({c},{d})"));
            }
        }
        for (c, c2, _) in self.nonzero_homs() {
            for (d, d2, _) in other.nonzero_homs() {
                let mut ids = Vec::new();
                for fi in self.hom_ids(c, c2) {
                    for gi in other.hom_ids(d, d2) {
                        ids.push(format!("{fi}*{gi}"));
                    }
                }
                b.hom(obj(c, d), obj(c2, d2), ids);
            }
        }
        for c in 0..self.num_objects() {
            for d in 0..nd {
                b.identity(obj(c, d), kron(f, &self.identity[c], &other.identity[d], other.hom_dim(d, d)));
            }
        }
        let ta = self.composition_table();
        let tb = other.composition_table();
        for (g1, f1, v1) in &ta {
            let (mg1, mf1) = (&self.morphisms[*g1], &self.morphisms[*f1]);
            for (g2, f2, v2) in &tb {
                let (mg2, mf2) = (&other.morphisms[*g2], &other.morphisms[*f2]);
                let gd = other.hom_dim(mg2.src, mg2.tgt);
                let fd = other.hom_dim(mf2.src, mf2.tgt);
                let rd = other.hom_dim(mf2.src, mg2.tgt);
                b.compose(
                    (obj(mg1.src, mg2.src), obj(mg1.tgt, mg2.tgt), mg1.local * gd + mg2.local),
                    (obj(mf1.src, mf2.src), obj(mf1.tgt, mf2.tgt), mf1.local * fd + mf2.local),
                    kron(f, v1, v2, rd),
                );
            }
        }
        Ok(b.build().expect("tensor of well-formed categories"))
    }

    /// `C ⊠ C^op`.
    pub fn enveloping(&self) -> FinLinCategory {
        self.box_tensor(&self.opposite()).expect("same field")
    }

    /// Contraction along a partition: one object per class, hom spaces the
    /// direct sums of the constituent homs (basis ids `x->y/id`), blockwise
    /// composition, identity the sum of the constituent identities.
    pub fn contract(&self, e: &Partition) -> Result<FinLinCategory, CategoryError> {
        Partition::from_indices(self, e.classes().to_vec())?;
        let mut b = CategoryBuilder::new(self.field);
        for (name, _) in e.classes() {
            b.object(name.clone());
        }
        for (ei, (_, xs)) in e.classes().iter().enumerate() {
            for (fi, (_, ys)) in e.classes().iter().enumerate() {
                let mut ids = Vec::new();
                for &x in xs {
                    for &y in ys {
                        for id in self.hom_ids(x, y) {
                            ids.push(format!("{}->{}/{}", self.objects[x], self.objects[y], id));
                        }
                    }
                }
                b.hom(ei, fi, ids);
            }
        }
        for (ei, (_, xs)) in e.classes().iter().enumerate() {
            let mut id = Coeffs::new();
            for &x in xs {
                let off = e.block_offset(self, x, x);
                id.extend(self.identity[x].iter().map(|(i, v)| (i + off, v.clone())));
            }
            b.identity(ei, id);
        }
        for (g, f, v) in self.composition_table() {
            let (mg, mf) = (&self.morphisms[g], &self.morphisms[f]);
            let (x, y, z) = (mf.src, mf.tgt, mg.tgt);
            let (ex, ey, ez) = (e.class_of(x), e.class_of(y), e.class_of(z));
            let off = e.block_offset(self, x, z);
            b.compose(
                (ey, ez, e.block_offset(self, y, z) + mg.local),
                (ex, ey, e.block_offset(self, x, y) + mf.local),
                v.iter().map(|(i, c)| (i + off, c.clone())).collect(),
            );
        }
        Ok(b.build().expect("contraction of a well-formed category"))
    }

    /// The full subcategory on `objects` (in the given order) and its inclusion.
    pub fn full_subcategory(&self, objects: &[usize]) -> Result<(FinLinCategory, Embedding), CategoryError> {
        for &x in objects {
            if x >= self.num_objects() {
                return Err(CategoryError::UnknownObject(x.to_string()));
            }
        }
        let mut b = CategoryBuilder::new(self.field);
        for &x in objects {
            b.object(self.objects[x].clone());
        }
        let pos: HashMap<usize, usize> = objects.iter().enumerate().map(|(i, x)| (*x, i)).collect();
        for (i, &x) in objects.iter().enumerate() {
            for (j, &y) in objects.iter().enumerate() {
                b.hom(i, j, self.hom_ids(x, y).into_iter().map(String::from).collect::<Vec<_>>());
            }
            b.identity(i, self.identity[x].clone());
        }
        for (g, f, v) in self.composition_table() {
            let (mg, mf) = (&self.morphisms[g], &self.morphisms[f]);
            if let (Some(&a), Some(&bb), Some(&c)) = (pos.get(&mf.src), pos.get(&mf.tgt), pos.get(&mg.tgt)) {
                b.compose((bb, c, mg.local), (a, bb, mf.local), v.clone());
            }
        }
        let sub = b.build()?;
        let morphisms = sub
            .morphisms()
            .iter()
            .map(|m| self.hom_range(objects[m.src], objects[m.tgt]).start + m.local)
            .collect();
        Ok((sub, Embedding { objects: objects.to_vec(), morphisms }))
    }
}

fn kron(f: Field, a: &Coeffs, b: &Coeffs, bdim: usize) -> Coeffs {
    let mut out = Vec::new();
    for (i, x) in a {
        for (k, y) in b {
            out.push((i * bdim + k, f.mul(x, y)));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::super::fixtures;
    use super::*;

    fn total(c: &FinLinCategory) -> usize {
        c.total_hom_dim()
    }

    #[test]
    fn opposite_is_an_involution() {
        for c in [fixtures::one(), fixtures::a2(), fixtures::kronecker(), fixtures::a3()] {
            assert_eq!(c.opposite().opposite(), c);
            assert!(c.opposite().validate().is_valid());
        }
        let op = fixtures::a2().opposite();
        assert_eq!(op.hom_dim(1, 0), 1);
        assert_eq!(op.hom_dim(0, 1), 0);
    }

    #[test]
    fn tensor_dimensions() {
        let a2 = fixtures::a2();
        let t = a2.box_tensor(&a2).unwrap();
        assert_eq!(t.hom_dim(0, 3), 1);
        assert!(t.validate().is_valid());
        assert_eq!(total(&a2.box_tensor(&a2.opposite()).unwrap()), 9);
        assert_eq!(total(&fixtures::kronecker().enveloping()), 16);
        assert_eq!(fixtures::one().enveloping().num_objects(), 1);
    }

    #[test]
    fn contraction_of_full2_is_a_matrix_algebra() {
        let c = fixtures::full2();
        let e = Partition::one_class(&c, "e");
        let k = c.contract(&e).unwrap();
        assert_eq!(k.num_objects(), 1);
        assert_eq!(k.hom_dim(0, 0), 4);
        assert!(k.validate().is_valid());
    }

    #[test]
    fn partition_errors() {
        let c = fixtures::a2();
        assert!(Partition::from_indices(&c, vec![("e".into(), vec![0])]).is_err());
        assert!(Partition::from_indices(&c, vec![("e".into(), vec![0, 1]), ("f".into(), vec![1])]).is_err());
        assert!(Partition::from_indices(&c, vec![("e".into(), vec![])]).is_err());
    }
}
