//! Clique enumeration and counting on bit-row graphs.

use fixedbitset::FixedBitSet;
use num_bigint::BigInt;

use super::graph::Graph;
use crate::complex::{Complex, Face};
use crate::par;
use crate::vectors::FVector;

/// Degeneracy ordering (repeatedly remove a minimum-degree vertex) and the
/// position of each vertex in it.
pub fn degeneracy_order(g: &Graph) -> (Vec<usize>, Vec<usize>) {
    let n = g.order();
    let mut degree: Vec<usize> = (0..n).map(|u| g.degree(u)).collect();
    let mut removed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let u = (0..n)
            .filter(|&u| !removed[u])
            .min_by_key(|&u| (degree[u], u))
            .expect("vertices remain");
        removed[u] = true;
        order.push(u);
        for v in g.neighbors(u).ones() {
            if !removed[v] {
                degree[v] -= 1;
            }
        }
    }
    let mut position = vec![0; n];
    for (i, &u) in order.iter().enumerate() {
        position[u] = i;
    }
    (order, position)
}

/// Neighbors of each vertex that come later in the degeneracy order.
fn forward_rows(g: &Graph, position: &[usize]) -> Vec<FixedBitSet> {
    (0..g.order())
        .map(|u| {
            let mut row = FixedBitSet::with_capacity(g.order());
            row.extend(g.neighbors(u).ones().filter(|&v| position[v] > position[u]));
            row
        })
        .collect()
}

/// All maximal cliques as sorted index lists, in lexicographic order.
///
/// Bron–Kerbosch with Tomita pivoting, rooted at each vertex in degeneracy
/// order so the outer candidate sets stay small.
pub fn maximal_cliques(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.order();
    let (order, position) = degeneracy_order(g);
    let mut cliques: Vec<Vec<usize>> = par::map(&order, |&v| {
        let mut p = FixedBitSet::with_capacity(n);
        let mut x = FixedBitSet::with_capacity(n);
        for w in g.neighbors(v).ones() {
            if position[w] > position[v] {
                p.insert(w);
            } else {
                x.insert(w);
            }
        }
        let mut out = Vec::new();
        let mut r = vec![v];
        expand(g, &mut r, p, x, &mut out);
        out
    })
    .into_iter()
    .flatten()
    .collect();
    for c in &mut cliques {
        c.sort_unstable();
    }
    cliques.sort_unstable();
    cliques
}

fn expand(
    g: &Graph,
    r: &mut Vec<usize>,
    mut p: FixedBitSet,
    mut x: FixedBitSet,
    out: &mut Vec<Vec<usize>>,
) {
    if p.is_clear() {
        if x.is_clear() {
            out.push(r.clone());
        }
        return;
    }
    // pivot maximises |P ∩ N(u)| over u ∈ P ∪ X
    let pivot = p
        .ones()
        .chain(x.ones())
        .max_by_key(|&u| p.intersection_count(g.neighbors(u)))
        .expect("P is nonempty");
    let mut candidates = p.clone();
    candidates.difference_with(g.neighbors(pivot));
    for v in candidates.ones() {
        let mut np = p.clone();
        np.intersect_with(g.neighbors(v));
        let mut nx = x.clone();
        nx.intersect_with(g.neighbors(v));
        r.push(v);
        expand(g, r, np, nx, out);
        r.pop();
        p.set(v, false);
        x.insert(v);
    }
}

/// The flag complex whose faces are the cliques of `g`.
pub fn clique_complex(g: &Graph) -> Complex {
    if g.order() == 0 {
        return Complex::empty_face();
    }
    let facets = maximal_cliques(g)
        .into_iter()
        .map(|c| Face::from_sorted(c.into_iter().map(|i| g.label(i)).collect()))
        .collect();
    Complex::from_antichain(facets)
}

/// Number of cliques of each size, without materialising faces.
///
/// `f_{k−1}` counts `k`-cliques, up to dimension `max_dim` (defaults to the
/// graph order). Trailing zeros are trimmed so the result matches the
/// f-vector of the clique complex.
pub fn clique_f_vector(g: &Graph, max_dim: Option<usize>) -> FVector {
    let n = g.order();
    let cap = max_dim.map_or(n, |d| (d + 1).min(n));
    let (order, position) = degeneracy_order(g);
    let forward = forward_rows(g, &position);
    let counts = par::fold_range(
        n,
        vec![0u64; cap + 1],
        |i| {
            let mut local = vec![0u64; cap + 1];
            if cap >= 1 {
                local[1] = 1;
                let v = order[i];
                count_from(&forward, forward[v].clone(), 1, cap, &mut local);
            }
            local
        },
        |mut a, b| {
            for (x, y) in a.iter_mut().zip(b) {
                *x += y;
            }
            a
        },
    );
    let mut counts = counts;
    counts[0] = 1;
    while counts.len() > 1 && *counts.last().unwrap() == 0 {
        counts.pop();
    }
    FVector::new(counts.into_iter().map(BigInt::from).collect())
}

fn count_from(forward: &[FixedBitSet], cand: FixedBitSet, size: usize, cap: usize, acc: &mut [u64]) {
    if size >= cap {
        return;
    }
    for u in cand.ones() {
        acc[size + 1] += 1;
        if size + 1 < cap {
            let mut next = cand.clone();
            next.intersect_with(&forward[u]);
            if !next.is_clear() {
                count_from(forward, next, size + 1, cap, acc);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flag::graph::one_skeleton;

    fn complete(n: usize) -> Graph {
        let edges: Vec<(usize, usize)> =
            (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    fn counts(f: &FVector) -> Vec<u64> {
        (-1..f.d()).map(|i| f.f_u64(i)).collect()
    }

    #[test]
    fn complete_graph_counts() {
        let f = clique_f_vector(&complete(5), None);
        assert_eq!(counts(&f), vec![1, 5, 10, 10, 5, 1]);
        let f = clique_f_vector(&complete(5), Some(2));
        assert_eq!(counts(&f), vec![1, 5, 10, 10]);
    }

    #[test]
    fn empty_graph_counts() {
        let g = Graph::from_edges(5, &[]).unwrap();
        assert_eq!(counts(&clique_f_vector(&g, None)), vec![1, 5]);
        assert_eq!(clique_complex(&g).facets().len(), 5);
    }

    #[test]
    fn k4_is_one_facet() {
        let c = clique_complex(&complete(4));
        assert_eq!(c.facets().len(), 1);
        assert_eq!(c.dim(), 3);
    }

    #[test]
    fn square_round_trip() {
        let c4 = Complex::from_facets([[0u32, 1], [1, 2], [2, 3], [3, 0]]).unwrap();
        assert_eq!(clique_complex(&one_skeleton(&c4)), c4);
    }

    #[test]
    fn hollow_triangle_fills_in() {
        let c3 = Complex::from_facets([[0u32, 1], [1, 2], [2, 0]]).unwrap();
        let k = clique_complex(&one_skeleton(&c3));
        assert_eq!(k, Complex::from_facets([[0u32, 1, 2]]).unwrap());
    }

    #[test]
    fn maximal_cliques_brute_force() {
        // Petersen graph plus a chord triangle
        let mut edges = vec![
            (0, 1), (1, 2), (2, 3), (3, 4), (4, 0),
            (0, 5), (1, 6), (2, 7), (3, 8), (4, 9),
            (5, 7), (7, 9), (9, 6), (6, 8), (8, 5),
        ];
        edges.push((0, 2));
        let g = Graph::from_edges(10, &edges).unwrap();
        let found = maximal_cliques(&g);
        let n = g.order();
        let mut brute = Vec::new();
        for mask in 1u32..(1 << n) {
            let vs: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
            let clique = vs.iter().all(|&a| vs.iter().all(|&b| a == b || g.adjacent(a, b)));
            if !clique {
                continue;
            }
            let maximal = (0..n).all(|w| vs.contains(&w) || vs.iter().any(|&a| !g.adjacent(a, w)));
            if maximal {
                brute.push(vs);
            }
        }
        brute.sort();
        assert_eq!(found, brute);
    }
}
