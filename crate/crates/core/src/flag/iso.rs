//! Exact graph isomorphism for small graphs.
//!
//! Both graphs are colour-refined together (1-dimensional Weisfeiler–Leman,
//! seeded by degree), so colours are comparable across them. A mismatch in
//! colour histograms rejects immediately; otherwise a backtracking search
//! maps vertices colour-to-colour while keeping adjacency consistent with
//! every pair already mapped.

use std::collections::{BTreeMap, HashMap};

use super::graph::Graph;

/// Stable colouring of the disjoint union of `a` and `b`. Returns the colour
/// of every vertex of `a`, then of `b`.
fn refine(a: &Graph, b: &Graph) -> (Vec<usize>, Vec<usize>) {
    let graphs = [a, b];
    let mut colors: [Vec<usize>; 2] = [
        (0..a.order()).map(|u| a.degree(u)).collect(),
        (0..b.order()).map(|u| b.degree(u)).collect(),
    ];
    let mut classes = count_classes(&colors);
    loop {
        let mut signatures: [Vec<(usize, Vec<usize>)>; 2] = [Vec::new(), Vec::new()];
        for (side, g) in graphs.iter().enumerate() {
            signatures[side] = (0..g.order())
                .map(|u| {
                    let mut nbr: Vec<usize> = g.neighbors(u).ones().map(|v| colors[side][v]).collect();
                    nbr.sort_unstable();
                    (colors[side][u], nbr)
                })
                .collect();
        }
        let mut palette: BTreeMap<&(usize, Vec<usize>), usize> = BTreeMap::new();
        for sig in signatures.iter().flatten() {
            palette.insert(sig, 0);
        }
        for (i, v) in palette.values_mut().enumerate() {
            *v = i;
        }
        let next: [Vec<usize>; 2] = [
            signatures[0].iter().map(|s| palette[s]).collect(),
            signatures[1].iter().map(|s| palette[s]).collect(),
        ];
        let next_classes = count_classes(&next);
        colors = next;
        if next_classes == classes {
            break;
        }
        classes = next_classes;
    }
    let [ca, cb] = colors;
    (ca, cb)
}

fn count_classes(colors: &[Vec<usize>; 2]) -> usize {
    let mut all: Vec<usize> = colors.iter().flatten().copied().collect();
    all.sort_unstable();
    all.dedup();
    all.len()
}

fn histogram(colors: &[usize]) -> HashMap<usize, usize> {
    let mut h = HashMap::new();
    for &c in colors {
        *h.entry(c).or_insert(0) += 1;
    }
    h
}

/// An isomorphism as a map from vertex indices of `a` to indices of `b`.
pub fn find_isomorphism(a: &Graph, b: &Graph) -> Option<Vec<usize>> {
    if a.order() != b.order() || a.edge_count() != b.edge_count() {
        return None;
    }
    let n = a.order();
    if n == 0 {
        return Some(Vec::new());
    }
    let (ca, cb) = refine(a, b);
    let class_size = histogram(&ca);
    if class_size != histogram(&cb) {
        return None;
    }

    // visit order: BFS from the rarest colour so each new vertex has mapped
    // neighbours to constrain it
    let mut order = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    while order.len() < n {
        let start = (0..n)
            .filter(|&u| !placed[u])
            .min_by_key(|&u| (class_size[&ca[u]], std::cmp::Reverse(a.degree(u)), u))
            .unwrap();
        placed[start] = true;
        let mut queue = std::collections::VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            order.push(u);
            let mut next: Vec<usize> = a.neighbors(u).ones().filter(|&v| !placed[v]).collect();
            next.sort_by_key(|&v| (class_size[&ca[v]], v));
            for v in next {
                placed[v] = true;
                queue.push_back(v);
            }
        }
    }

    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if extend(a, b, &ca, &cb, &order, 0, &mut map, &mut used) {
        Some(map)
    } else {
        None
    }
}

#[allow(clippy::too_many_arguments)]
fn extend(
    a: &Graph,
    b: &Graph,
    ca: &[usize],
    cb: &[usize],
    order: &[usize],
    depth: usize,
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    if depth == order.len() {
        return true;
    }
    let x = order[depth];
    for y in 0..b.order() {
        if used[y] || cb[y] != ca[x] {
            continue;
        }
        let consistent = order[..depth]
            .iter()
            .all(|&px| a.adjacent(x, px) == b.adjacent(y, map[px]));
        if !consistent {
            continue;
        }
        map[x] = y;
        used[y] = true;
        if extend(a, b, ca, cb, order, depth + 1, map, used) {
            return true;
        }
        used[y] = false;
        map[x] = usize::MAX;
    }
    false
}

pub fn is_isomorphic(a: &Graph, b: &Graph) -> bool {
    find_isomorphism(a, b).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn relabelled_square() {
        let a = cycle(4);
        let b = Graph::from_edges(4, &[(0, 2), (2, 1), (1, 3), (3, 0)]).unwrap();
        let map = find_isomorphism(&a, &b).unwrap();
        for (u, v) in a.edges() {
            assert!(b.adjacent(map[u], map[v]));
        }
    }

    #[test]
    fn square_vs_path() {
        let path = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert!(!is_isomorphic(&cycle(4), &path));
    }

    #[test]
    fn same_degrees_different_structure() {
        // C6 and two disjoint triangles are both 2-regular on 6 vertices
        let two_triangles =
            Graph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap();
        assert!(!is_isomorphic(&cycle(6), &two_triangles));
        assert!(is_isomorphic(&cycle(6), &cycle(6).complement().complement()));
    }
}
