use serde::{Deserialize, Serialize};

use super::{w_set_in, Analyzer};
use crate::complex::{Complex, Face, VertexId};
use crate::error::{Error, Result};
use crate::flag::one_skeleton;
use crate::par;

/// A nonempty private-neighbour set `W_τ` of a facet.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WSet {
    pub tau: Face,
    pub vertices: Vec<VertexId>,
}

/// Facet-local statistics of a flag `(2m−1)`-pseudomanifold.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FacetStats {
    pub facet: Face,
    /// `a[k] = Σ_{τ⊆σ, |τ|=k} f₀(lk τ)` for `0 ≤ k ≤ 2m`; `a[0] = n`.
    pub a: Vec<i64>,
    /// `b[k] = Σ_{τ⊆σ, |τ|=k} |W_τ|` for `0 ≤ k ≤ 2m`.
    pub b: Vec<i64>,
    /// The nonempty `W_τ`, ordered by `τ`. Every vertex outside `σ` lies in
    /// exactly one of them.
    pub w_sets: Vec<WSet>,
    /// `a₁`.
    pub vertex_link_sum: i64,
    /// `∪_{|δ|=2m−2} V(lk δ)` over `δ ⊂ σ`.
    pub codim2_union: Vec<VertexId>,
    /// `m_σ = Σ_{v∈σ} f₀(lk v)`.
    pub m_sigma: i64,
    /// `M_σ`: `m` summed over `σ` and its ridge-adjacent facets.
    pub m_neighborhood: i64,
    pub adjacent: Vec<Face>,
}

/// `W_τ` for a facet `σ ⊇ τ` of `c`.
pub fn w_tau(c: &Complex, sigma: &Face, tau: &Face) -> Result<Vec<VertexId>> {
    if !tau.is_subset(sigma) {
        return Err(Error::parameter(format!("{tau} is not a subset of {sigma}")));
    }
    if c.facets().binary_search(sigma).is_err() {
        return Err(Error::parameter(format!("{sigma} is not a facet")));
    }
    Ok(w_set_in(c, &one_skeleton(c), sigma, tau))
}

/// Statistics of one facet; `c` must be a flag `(2m−1)`-pseudomanifold.
pub fn facet_stats(c: &Complex, sigma: &Face) -> Result<FacetStats> {
    const CHECK: &str = "facet_stats";
    let an = Analyzer::new(c, CHECK)?;
    an.half(CHECK)?;
    let i = an
        .facet_position(sigma)
        .ok_or_else(|| Error::parameter(format!("{sigma} is not a facet")))?;
    Ok(an.stats(i))
}

impl Analyzer<'_> {
    /// Statistics of facet `i`.
    pub fn stats(&self, i: usize) -> FacetStats {
        let sigma = &self.complex.facets()[i];
        let d = sigma.len();
        let mut a = vec![0i64; d + 1];
        let mut b = vec![0i64; d + 1];
        let mut w_sets = Vec::new();
        for tau in sigma.subsets() {
            let k = tau.len();
            a[k] += self.link_size(&tau);
            let w = self.w_set(sigma, &tau);
            b[k] += w.len() as i64;
            if !w.is_empty() {
                w_sets.push(WSet { tau, vertices: w });
            }
        }
        w_sets.sort_by(|x, y| x.tau.cmp(&y.tau));
        let mut codim2_union: Vec<VertexId> = sigma
            .subsets_of_size(d.saturating_sub(2))
            .flat_map(|delta| self.link_vertices(&delta).to_vec())
            .collect();
        codim2_union.sort_unstable();
        codim2_union.dedup();
        let adjacent_idx = self.adjacent_facets(i);
        let m_sigma = self.vertex_link_sum(sigma);
        let m_neighborhood = m_sigma
            + adjacent_idx
                .iter()
                .map(|&j| self.vertex_link_sum(&self.complex.facets()[j]))
                .sum::<i64>();
        FacetStats {
            facet: sigma.clone(),
            vertex_link_sum: a[1.min(d)],
            a,
            b,
            w_sets,
            codim2_union,
            m_sigma,
            m_neighborhood,
            adjacent: adjacent_idx.iter().map(|&j| self.complex.facets()[j].clone()).collect(),
        }
    }

    /// Statistics of every facet, in facet order.
    pub fn all_stats(&self) -> Vec<FacetStats> {
        par::map_range(self.complex.facets().len(), |i| self.stats(i))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen;

    #[test]
    fn cross_polytope_profile() {
        let c = gen::j_m_n(3, 12).unwrap();
        let s = facet_stats(&c, &c.facets()[0]).unwrap();
        assert_eq!(&s.a[1..], &[60, 120, 120, 60, 12, 0]);
        assert_eq!(s.b[2], 0);
        assert_eq!(s.b[3], 0);
        assert_eq!(s.m_neighborhood, 420);
        assert_eq!(s.adjacent.len(), 6);
    }

    #[test]
    fn w_sets_partition_the_outside() {
        let c = gen::gal_gamma(12).unwrap();
        let an = Analyzer::new(&c, "t").unwrap();
        for st in an.all_stats() {
            let total: i64 = st.b.iter().sum();
            assert_eq!(total, 12 - 4);
        }
    }

    #[test]
    fn w_tau_errors() {
        let c = gen::j_m_n(2, 8).unwrap();
        let sigma = c.facets()[0].clone();
        let outside = Face::new([sigma.vertices()[0].0, 99]).unwrap();
        assert!(w_tau(&c, &sigma, &outside).is_err());
        let not_facet = Face::new([0u32, 1]).unwrap();
        assert!(w_tau(&c, &not_facet, &Face::empty()).is_err());
    }
}
