#![allow(dead_code)]

use exceptional_core::linalg::Matrix;
use exceptional_core::rep::Rep;
use exceptional_core::{FiniteField, Quiver};
use rand::seq::SliceRandom;
use rand::Rng;

/// Random simple acyclic quiver on `n` vertices: edges kept with probability
/// `density`, oriented along a random vertex order. Optionally forced
/// connected by adding a random spanning path first.
pub fn random_quiver(rng: &mut impl Rng, n: usize, density: f64, connected: bool) -> Quiver {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut rank = vec![0; n];
    for (k, &v) in order.iter().enumerate() {
        rank[v] = k;
    }
    let mut edges = std::collections::BTreeSet::new();
    if connected {
        for v in 1..n {
            let u = rng.gen_range(0..v);
            edges.insert((u, v));
        }
    }
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(density) {
                edges.insert((u, v));
            }
        }
    }
    let arrows = edges.into_iter().map(|(u, v)| if rank[u] < rank[v] { (u, v) } else { (v, u) }).collect();
    Quiver::new(n, arrows).unwrap()
}

pub fn random_rep<'q, F: FiniteField>(rng: &mut impl Rng, q: &'q Quiver, dims: &[usize]) -> Rep<'q, F> {
    let maps = q
        .arrows()
        .iter()
        .map(|&(s, t)| {
            let data = (0..dims[s] * dims[t]).map(|_| F::from_index(rng.gen_range(0..F::ORDER))).collect();
            Matrix::from_vec(dims[t], dims[s], data)
        })
        .collect();
    Rep::new(q, dims.to_vec(), maps).unwrap()
}

/// Symmetric Cartan matrix entry `(e_i, e_j)`.
pub fn cartan(q: &Quiver) -> Vec<Vec<i64>> {
    let n = q.n();
    let mut c = vec![vec![0; n]; n];
    for (i, row) in c.iter_mut().enumerate() {
        row[i] = 2;
    }
    for &(s, t) in q.arrows() {
        c[s][t] -= 1;
        c[t][s] -= 1;
    }
    c
}

/// Whether the tree contains two adjacent vertices of degree at least 3,
/// i.e. an extended D_5 subgraph.
pub fn has_affine_d5(q: &Quiver) -> bool {
    q.edges().iter().any(|&(u, v)| q.degree(u) >= 3 && q.degree(v) >= 3)
}
