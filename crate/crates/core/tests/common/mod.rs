//! Random thin categories for property tests.
//!
//! A random DAG on `n` objects gives a poset; a random set of pairs, closed
//! under widening, gives an ideal of its incidence algebra. The category has
//! a one-dimensional `hom(x, y)` for every `x ≤ y` outside the ideal and
//! composition `e_yz ∘ e_xy = e_xz` whenever the target survives.

#![allow(dead_code)]

use std::sync::Arc;

use hmcoh::category::{CategoryBuilder, FinLinCategory};
use hmcoh::linalg::Field;
use proptest::prelude::*;

#[derive(Clone, Debug)]
pub struct Incidence {
    pub n: usize,
    pub le: Vec<Vec<bool>>,
    pub killed: Vec<Vec<bool>>,
}

impl Incidence {
    pub fn new(n: usize, edges: &[bool], kills: &[bool]) -> Incidence {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        let mut le = vec![vec![false; n]; n];
        for (x, row) in le.iter_mut().enumerate() {
            row[x] = true;
        }
        for (k, (i, j)) in pairs.iter().enumerate() {
            le[*i][*j] = edges.get(k).copied().unwrap_or(false);
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if le[i][k] && le[k][j] {
                        le[i][j] = true;
                    }
                }
            }
        }
        let mut killed = vec![vec![false; n]; n];
        for (k, (i, j)) in pairs.iter().enumerate() {
            killed[*i][*j] = le[*i][*j] && kills.get(k).copied().unwrap_or(false);
        }
        for (x, z) in pairs.iter().copied() {
            if !killed[x][z] {
                continue;
            }
            for x2 in (0..n).filter(|a| le[*a][x]) {
                for z2 in (0..n).filter(|b| le[z][*b]) {
                    killed[x2][z2] = true;
                }
            }
        }
        Incidence { n, le, killed }
    }

    pub fn has_hom(&self, x: usize, y: usize) -> bool {
        self.le[x][y] && !self.killed[x][y]
    }

    pub fn build(&self, field: Field) -> FinLinCategory {
        let mut b = CategoryBuilder::new(field);
        for x in 0..self.n {
            b.object(format!("{x}"));
        }
        for x in 0..self.n {
            for y in (0..self.n).filter(|y| self.has_hom(x, *y)) {
                let id = if x == y { format!("id{x}") } else { format!("e{x}{y}") };
                b.hom(x, y, [id]);
            }
        }
        for x in 0..self.n {
            b.unit(x, 0);
        }
        for x in 0..self.n {
            for y in (0..self.n).filter(|y| *y != x && self.has_hom(x, *y)) {
                for z in (0..self.n).filter(|z| *z != y && self.has_hom(y, *z)) {
                    if self.has_hom(x, z) {
                        b.compose((y, z, 0), (x, y, 0), vec![(0, field.one())]);
                    }
                }
            }
        }
        b.build().expect("incidence categories are well formed")
    }
}

pub fn field() -> impl Strategy<Value = Field> {
    prop_oneof![Just(Field::Rationals), Just(Field::Prime(3))]
}

pub fn incidence(max_objects: usize) -> impl Strategy<Value = Incidence> {
    (1..=max_objects).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        (
            prop::collection::vec(prop::bool::weighted(0.6), pairs),
            prop::collection::vec(prop::bool::weighted(0.2), pairs),
        )
            .prop_map(move |(e, k)| Incidence::new(n, &e, &k))
    })
}

pub fn category(max_objects: usize) -> impl Strategy<Value = Arc<FinLinCategory>> {
    (field(), incidence(max_objects)).prop_map(|(f, i)| Arc::new(i.build(f)))
}

/// Objects `y ∉ sub` reachable by a chain of non-zero homs `x → ⋯ → y → ⋯ → z`
/// with `x, z ∈ sub`; empty when `sub` is closed under paths.
pub fn path_gaps(c: &FinLinCategory, sub: &[usize]) -> Vec<usize> {
    let n = c.num_objects();
    let mut reach = vec![vec![false; n]; n];
    for (x, row) in reach.iter_mut().enumerate() {
        for (y, r) in row.iter_mut().enumerate() {
            *r = c.hom_dim(x, y) > 0;
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if reach[i][k] && reach[k][j] {
                    reach[i][j] = true;
                }
            }
        }
    }
    (0..n)
        .filter(|y| !sub.contains(y))
        .filter(|y| sub.iter().any(|x| reach[*x][*y]) && sub.iter().any(|z| reach[*y][*z]))
        .collect()
}

pub fn subsets(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (1u32..(1 << n)).map(move |mask| (0..n).filter(|i| mask & (1 << i) != 0).collect())
}
