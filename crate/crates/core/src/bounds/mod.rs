//! Facet statistics of flag odd-dimensional pseudomanifolds, the identities
//! and inequalities they satisfy, and detectors for extremal structure.

mod identities;
mod inequalities;
mod stats;
mod structure;

pub use identities::{a_k_formula_check, binomial_identity_check, codim2_identity_check, eq1_check};
pub use inequalities::{
    gamma_inequality_check, link_inequality_check, near_extremal_check, reference_f,
    three_manifold_bound_check, ubt_check, vertex_link_sum_check,
};
pub use stats::{facet_stats, w_tau, FacetStats, WSet};
pub use structure::{join_detect, m_sigma_check, suspension_of_circle_check, JoinDecomposition};

use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use crate::classify::is_pseudomanifold;
use crate::complex::{Complex, Face, VertexId};
use crate::error::{Error, Result};
use crate::flag::{one_skeleton, require_flag, Graph};
use crate::par;

/// `C(n, k)` for small arguments; zero outside `0 ≤ k ≤ n`.
pub(crate) fn choose(n: i64, k: i64) -> i64 {
    if k < 0 || n < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1i64, |acc, i| acc * (n - i) / (i + 1))
}

/// A flag pseudomanifold prepared for facet-local computations: the
/// 1-skeleton, the vertex set of every face link, and ridge adjacency.
pub struct Analyzer<'a> {
    complex: &'a Complex,
    graph: Graph,
    links: HashMap<Face, Vec<VertexId>>,
    ridge_facets: HashMap<Face, Vec<usize>>,
}

impl<'a> Analyzer<'a> {
    /// Fails with a precondition error naming `check` unless `c` is a flag
    /// pseudomanifold.
    pub fn new(c: &'a Complex, check: &str) -> Result<Analyzer<'a>> {
        require_flag(c, check)?;
        let pm = is_pseudomanifold(c);
        if !pm.passed() {
            let reason = match pm.failures().next() {
                Some(w) => match &w.face {
                    Some(f) => format!("not a pseudomanifold ({}: {f})", w.label),
                    None => format!("not a pseudomanifold ({})", w.label),
                },
                None => "not a pseudomanifold".to_string(),
            };
            return Err(Error::precondition(check, reason));
        }
        let faces: Vec<Face> = c.faces().cloned().collect();
        let links = par::map(&faces, |s| (s.clone(), c.link_vertices(s).expect("face of c")))
            .into_iter()
            .collect();
        let mut ridge_facets: HashMap<Face, Vec<usize>> = HashMap::new();
        for (i, f) in c.facets().iter().enumerate() {
            for &v in f.vertices() {
                ridge_facets.entry(f.without(v)).or_default().push(i);
            }
        }
        Ok(Analyzer {
            complex: c,
            graph: one_skeleton(c),
            links,
            ridge_facets,
        })
    }

    pub fn complex(&self) -> &Complex {
        self.complex
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn n(&self) -> usize {
        self.complex.num_vertices()
    }

    /// Number of vertices of a facet, `d = dim + 1`.
    pub fn facet_size(&self) -> usize {
        (self.complex.dim() + 1) as usize
    }

    /// `m` with `dim = 2m − 1`; even dimensions are rejected.
    pub fn half(&self, check: &str) -> Result<usize> {
        let d = self.facet_size();
        if d % 2 != 0 || d == 0 {
            return Err(Error::precondition(
                check,
                format!("dimension {} is not of the form 2m-1", self.complex.dim()),
            ));
        }
        Ok(d / 2)
    }

    /// `V(lk s)`.
    pub fn link_vertices(&self, s: &Face) -> &[VertexId] {
        self.links.get(s).map(Vec::as_slice).expect("face of the complex")
    }

    /// `f₀(lk s)`.
    pub fn link_size(&self, s: &Face) -> i64 {
        if s.is_empty() {
            return self.n() as i64;
        }
        self.link_vertices(s).len() as i64
    }

    /// `Σ_{v∈σ} f₀(lk v)`.
    pub fn vertex_link_sum(&self, sigma: &Face) -> i64 {
        sigma
            .vertices()
            .iter()
            .map(|&v| self.link_size(&Face::from_sorted(vec![v])))
            .sum()
    }

    /// Indices of the facets sharing a ridge with facet `i`, ordered by the
    /// vertex of `σ` they omit.
    pub fn adjacent_facets(&self, i: usize) -> Vec<usize> {
        let f = &self.complex.facets()[i];
        f.vertices()
            .iter()
            .flat_map(|&v| {
                self.ridge_facets[&f.without(v)]
                    .iter()
                    .copied()
                    .filter(move |&j| j != i)
            })
            .collect()
    }

    /// Position of `sigma` among the facets.
    pub fn facet_position(&self, sigma: &Face) -> Option<usize> {
        self.complex.facets().binary_search(sigma).ok()
    }

    /// `W_τ`: vertices outside `σ` adjacent to all of `τ` and to none of
    /// `σ − τ`.
    pub fn w_set(&self, sigma: &Face, tau: &Face) -> Vec<VertexId> {
        w_set_in(self.complex, &self.graph, sigma, tau)
    }
}

pub(crate) fn w_set_in(c: &Complex, g: &Graph, sigma: &Face, tau: &Face) -> Vec<VertexId> {
    let idx = |v: VertexId| c.vertex_index(v).expect("vertex of the complex");
    let mut cand = FixedBitSet::with_capacity(g.order());
    cand.insert_range(..);
    for &v in tau.vertices() {
        cand.intersect_with(g.neighbors(idx(v)));
    }
    for &v in sigma.difference(tau).vertices() {
        cand.difference_with(g.neighbors(idx(v)));
    }
    for &v in sigma.vertices() {
        cand.set(idx(v), false);
    }
    cand.ones().map(|i| g.label(i)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen;

    #[test]
    fn small_binomials() {
        assert_eq!(choose(4, 2), 6);
        assert_eq!(choose(5, 0), 1);
        assert_eq!(choose(3, 4), 0);
        assert_eq!(choose(3, -1), 0);
    }

    #[test]
    fn adjacency_in_cross_polytope() {
        let c = gen::j_m_n(2, 8).unwrap();
        let a = Analyzer::new(&c, "test").unwrap();
        assert_eq!(a.half("test").unwrap(), 2);
        for i in 0..c.facets().len() {
            assert_eq!(a.adjacent_facets(i).len(), 4);
        }
    }

    #[test]
    fn rejects_non_flag_and_even_dimension() {
        let hollow = gen::cycle(3).unwrap();
        assert!(matches!(Analyzer::new(&hollow, "x"), Err(Error::Precondition { .. })));
        let oct = gen::octahedron();
        let a = Analyzer::new(&oct, "x").unwrap();
        assert!(a.half("x").is_err());
    }
}
