use std::collections::HashMap;

use itertools::Itertools;

use crate::category::FinLinCategory;

/// A composable tuple of basis morphisms `x₁ → x₂ → ⋯ → x_{n+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NerveTuple {
    pub objects: Vec<usize>,
    /// Global morphism indices `f₁, …, f_n` with `fᵢ ∈ hom(xᵢ, xᵢ₊₁)`.
    pub morphisms: Vec<usize>,
}

impl NerveTuple {
    pub fn first(&self) -> usize {
        self.objects[0]
    }

    pub fn last(&self) -> usize {
        *self.objects.last().expect("tuples have at least one object")
    }
}

/// The basis tuples of the k-nerve in one degree, in lexicographic order of
/// object tuples and then of basis indices.
#[derive(Clone, Debug)]
pub struct NerveBasis {
    degree: usize,
    elements: Vec<NerveTuple>,
    index: HashMap<Vec<usize>, usize>,
}

impl NerveBasis {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[NerveTuple] {
        &self.elements
    }

    /// Position of the tuple with morphisms `f` (or, in degree 0, the object `[x]`).
    pub fn position(&self, key: &[usize]) -> Option<usize> {
        self.index.get(key).copied()
    }

    pub(crate) fn key(t: &NerveTuple) -> Vec<usize> {
        if t.morphisms.is_empty() {
            t.objects.clone()
        } else {
            t.morphisms.clone()
        }
    }
}

pub fn nerve_basis(c: &FinLinCategory, n: usize) -> NerveBasis {
    let mut elements = Vec::new();
    let no = c.num_objects();
    let mut objects = Vec::with_capacity(n + 1);
    fn objects_dfs(c: &FinLinCategory, n: usize, objects: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if objects.len() == n + 1 {
            out.push(objects.clone());
            return;
        }
        for y in 0..c.num_objects() {
            if objects.last().is_none_or(|x| c.hom_dim(*x, y) > 0) {
                objects.push(y);
                objects_dfs(c, n, objects, out);
                objects.pop();
            }
        }
    }
    let mut object_tuples = Vec::new();
    if no > 0 {
        objects_dfs(c, n, &mut objects, &mut object_tuples);
    }
    for objs in object_tuples {
        if n == 0 {
            elements.push(NerveTuple { objects: objs, morphisms: Vec::new() });
            continue;
        }
        let ranges = objs.windows(2).map(|w| c.hom_range(w[0], w[1]));
        for morphisms in ranges.multi_cartesian_product() {
            elements.push(NerveTuple { objects: objs.clone(), morphisms });
        }
    }
    let index = elements.iter().enumerate().map(|(i, t)| (NerveBasis::key(t), i)).collect();
    NerveBasis { degree: n, elements, index }
}

/// Hom dimension matrix raised to the `n`-th power, saturating.
fn hom_power(c: &FinLinCategory, n: usize) -> Vec<Vec<u128>> {
    let no = c.num_objects();
    let mut p: Vec<Vec<u128>> = (0..no).map(|x| (0..no).map(|y| u128::from(x == y)).collect()).collect();
    for _ in 0..n {
        let mut q = vec![vec![0u128; no]; no];
        for x in 0..no {
            for z in 0..no {
                let mut acc = 0u128;
                for y in 0..no {
                    acc = acc.saturating_add(p[x][y].saturating_mul(c.hom_dim(y, z) as u128));
                }
                q[x][z] = acc;
            }
        }
        p = q;
    }
    p
}

/// Number of degree-`n` nerve tuples without enumerating them.
pub fn nerve_count(c: &FinLinCategory, n: usize) -> u128 {
    hom_power(c, n).iter().flatten().fold(0u128, |a, b| a.saturating_add(*b))
}

/// `dim Cⁿ` for `n = 0..=top`, from the coefficient dimensions `dims[y][x] = dim _yM_x`.
///
/// Cochains on a tuple `x₁ → ⋯ → x_{n+1}` take values in `_{x_{n+1}}M_{x₁}`,
/// chains in `_{x₁}M_{x_{n+1}}`.
pub fn projected_dims(c: &FinLinCategory, dims: &[Vec<usize>], top: usize, cochain: bool) -> Vec<u128> {
    let no = c.num_objects();
    (0..=top)
        .map(|n| {
            let p = hom_power(c, n);
            let mut acc = 0u128;
            for x in 0..no {
                for y in 0..no {
                    let d = if cochain { dims[y][x] } else { dims[x][y] };
                    acc = acc.saturating_add(p[x][y].saturating_mul(d as u128));
                }
            }
            acc
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::fixtures;

    #[test]
    fn small_nerves() {
        let one = fixtures::one();
        assert_eq!(nerve_basis(&one, 2).len(), 1);
        assert_eq!(nerve_basis(&one, 0).len(), 1);
        let a2 = fixtures::a2();
        assert_eq!(nerve_basis(&a2, 1).len(), 3);
        let kr = fixtures::kronecker();
        for n in 0..5 {
            let b = nerve_basis(&kr, n);
            assert_eq!(b.len() as u128, nerve_count(&kr, n));
            for (i, t) in b.elements().iter().enumerate() {
                assert_eq!(b.position(&NerveBasis::key(t)), Some(i));
            }
        }
    }
}
