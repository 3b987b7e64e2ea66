//! Small categories used throughout the tests and the CLI fixtures.
//!
//! Identities are basis elements named `id` (one object) or `id<x>`.

use super::{CategoryBuilder, FinLinCategory};
use crate::linalg::Field;

/// `objects` with identity basis elements plus the given arrows, and the
/// listed non-zero composites `(g, f, g∘f)` between arrows.
fn path_category(
    field: Field,
    objects: &[&str],
    arrows: &[(&str, usize, usize)],
    composites: &[(&str, &str, &str)],
) -> FinLinCategory {
    let mut b = CategoryBuilder::new(field);
    for o in objects {
        b.object(*o);
    }
    let mut homs: Vec<((usize, usize), Vec<String>)> = Vec::new();
    for x in 0..objects.len() {
        let id = if objects.len() == 1 { "id".to_string() } else { format!("id{}", objects[x]) };
        homs.push(((x, x), vec![id]));
    }
    for (id, s, t) in arrows {
        match homs.iter_mut().find(|(k, _)| *k == (*s, *t)) {
            Some((_, ids)) => ids.push(id.to_string()),
            None => homs.push(((*s, *t), vec![id.to_string()])),
        }
    }
    let locate = |id: &str| -> (usize, usize, usize) {
        for ((s, t), ids) in &homs {
            if let Some(i) = ids.iter().position(|x| x == id) {
                return (*s, *t, i);
            }
        }
        panic!("unknown arrow {id}")
    };
    for ((s, t), ids) in &homs {
        b.hom(*s, *t, ids.clone());
    }
    for x in 0..objects.len() {
        b.unit(x, 0);
    }
    for (g, f, gf) in composites {
        let r = locate(gf);
        b.compose(locate(g), locate(f), vec![(r.2, field.one())]);
    }
    b.build().expect("fixture is well formed")
}

/// The terminal k-linear category: one object, `hom = k·id`.
pub fn one() -> FinLinCategory {
    one_over(Field::Rationals)
}

pub fn one_over(field: Field) -> FinLinCategory {
    path_category(field, &["*"], &[], &[])
}

/// `1 → 2` with arrow `a`.
pub fn a2() -> FinLinCategory {
    a2_over(Field::Rationals)
}

pub fn a2_over(field: Field) -> FinLinCategory {
    path_category(field, &["1", "2"], &[("a", 0, 1)], &[])
}

/// `1 → 2 → 3` with arrows `a`, `b` and non-zero composite `ba`.
pub fn a3() -> FinLinCategory {
    path_category(
        Field::Rationals,
        &["1", "2", "3"],
        &[("a", 0, 1), ("b", 1, 2), ("ba", 0, 2)],
        &[("b", "a", "ba")],
    )
}

/// `1 → 2 → 3` with `b∘a = 0`.
pub fn a3_zero_relation() -> FinLinCategory {
    path_category(Field::Rationals, &["1", "2", "3"], &[("a", 0, 1), ("b", 1, 2)], &[])
}

/// Kronecker category: two arrows `a, b: 1 → 2`.
pub fn kronecker() -> FinLinCategory {
    path_category(Field::Rationals, &["1", "2"], &[("a", 0, 1), ("b", 0, 1)], &[])
}

/// Two objects, every hom one-dimensional, matrix-unit composition.
pub fn full2() -> FinLinCategory {
    path_category(
        Field::Rationals,
        &["1", "2"],
        &[("e21", 0, 1), ("e12", 1, 0)],
        &[("e21", "e12", "id2"), ("e12", "e21", "id1")],
    )
}

/// `A₂` with `id2∘a` set to zero, violating the identity law.
pub fn broken_a2() -> FinLinCategory {
    let mut b = a2().to_builder();
    b.compose((1, 1, 0), (0, 1, 0), vec![]);
    b.build().expect("structurally well formed")
}
