use std::collections::BTreeSet;

use super::Analyzer;
use crate::classify::is_normal_pseudomanifold;
use crate::complex::{Complex, Face, VertexId};
use crate::error::{Error, Result};
use crate::flag::{one_skeleton, require_flag};
use crate::par;
use crate::report::{Relation, Report, Status, Witness};

/// Join factors of a flag complex, found from the connected components of
/// the complement of its 1-skeleton.
#[derive(Clone, Debug)]
pub struct JoinDecomposition {
    /// Vertex sets of the complement components; each induces a join
    /// factor that is not itself a join.
    pub components: Vec<Vec<VertexId>>,
    /// The prime factors with pairs of `S⁰` factors merged into 4-cycles.
    /// Empty when the complement is connected.
    pub factors: Vec<Complex>,
    /// Whether every factor is a cycle of length at least 4.
    pub all_cycles: bool,
    pub report: Report,
}

impl JoinDecomposition {
    pub fn factors(&self) -> Option<&[Complex]> {
        (!self.factors.is_empty()).then_some(self.factors.as_slice())
    }

    pub fn is_join_of_cycles(&self, m: usize) -> bool {
        self.factors.len() == m && self.all_cycles
    }
}

fn is_long_cycle(c: &Complex) -> bool {
    let g = one_skeleton(c);
    g.order() >= 4 && g.is_cycle() && c.dim() == 1
}

/// Splits a connected flag complex into maximal join factors and verifies
/// each split: for a facet `σ = σ₁ ⊔ σ₂` cut along a factor boundary,
/// `V(lk σ₁) ⊔ V(lk σ₂) = V(c)` and `c = lk σ₁ * lk σ₂`.
pub fn join_detect(c: &Complex) -> Result<JoinDecomposition> {
    const CHECK: &str = "join_detect";
    require_flag(c, CHECK)?;
    if c.is_void() || c.num_vertices() == 0 {
        return Err(Error::precondition(CHECK, "complex has no vertices"));
    }
    if !c.is_connected() {
        return Err(Error::precondition(CHECK, "complex is not connected"));
    }
    let g = one_skeleton(c);
    let parts = g.complement().components();
    if parts.len() < 2 {
        let report = Report::from_witnesses(CHECK, vec![])
            .with_note("complement of the 1-skeleton is connected: no join decomposition");
        return Ok(JoinDecomposition {
            components: vec![c.vertices().to_vec()],
            factors: Vec::new(),
            all_cycles: false,
            report,
        });
    }
    let components: Vec<Vec<VertexId>> = parts
        .iter()
        .map(|p| p.iter().map(|&i| g.label(i)).collect())
        .collect();
    let (pairs, mut rest): (Vec<&Vec<VertexId>>, Vec<&Vec<VertexId>>) =
        components.iter().partition(|p| p.len() == 2);
    let mut groups: Vec<Vec<VertexId>> = pairs
        .chunks(2)
        .map(|ch| {
            let mut vs: Vec<VertexId> = ch.iter().flat_map(|p| p.iter().copied()).collect();
            vs.sort_unstable();
            vs
        })
        .collect();
    groups.extend(rest.drain(..).cloned());
    let mut factors: Vec<Complex> = groups.iter().map(|vs| c.restriction(vs)).collect();
    factors.sort_by(|a, b| b.num_vertices().cmp(&a.num_vertices()).then(a.vertices().cmp(b.vertices())));
    let all_cycles = factors.iter().all(is_long_cycle);
    let sigma = &c.facets()[0];
    let n = c.num_vertices() as i64;
    let mut witnesses = Vec::new();
    for factor in &factors {
        let inside: Vec<VertexId> = sigma.vertices().iter().copied().filter(|v| factor.vertex_index(*v).is_some()).collect();
        let s1 = Face::new(inside).expect("subset of a face");
        let s2 = sigma.difference(&s1);
        let l1 = c.link(&s1)?;
        let l2 = c.link(&s2)?;
        let disjoint = l1.vertices().iter().all(|v| l2.vertex_index(*v).is_none());
        let sizes = (l1.num_vertices() + l2.num_vertices()) as i64;
        witnesses.push(
            Witness::compare("|V(lk s1)| + |V(lk s2)| = n", Some(s1.clone()), sizes, Relation::Eq, n)
                .with_detail(format!("s2 = {s2}, disjoint: {disjoint}")),
        );
        witnesses.push(Witness::flag("vertex sets of the two links are disjoint", Some(s1.clone()), disjoint));
        witnesses.push(Witness::flag("complex = lk(s1) * lk(s2)", Some(s1), l1.join(&l2) == *c));
    }
    let product = factors.iter().fold(Complex::empty_face(), |acc, f| acc.join(f));
    witnesses.push(Witness::flag("complex = join of factors", None, product == *c));
    let sizes: Vec<usize> = factors.iter().map(Complex::num_vertices).collect();
    let report = Report::from_witnesses(CHECK, witnesses)
        .with_note(format!("{} complement components", components.len()))
        .with_note(format!("{} factors with vertex counts {sizes:?}", factors.len()))
        .with_note(format!("all factors cycles of length >= 4: {all_cycles}"));
    Ok(JoinDecomposition {
        components,
        factors,
        all_cycles,
        report,
    })
}

/// Poles of a suspension of a cycle of length ≥ 4, if `c` is one.
fn suspension_poles(c: &Complex) -> Option<(VertexId, VertexId)> {
    let g = one_skeleton(c);
    let n = g.order();
    let full: Vec<usize> = (0..n).filter(|&u| g.degree(u) == n - 2).collect();
    for (i, &p) in full.iter().enumerate() {
        for &q in &full[i + 1..] {
            if g.adjacent(p, q) {
                continue;
            }
            let rest: Vec<usize> = (0..n).filter(|&u| u != p && u != q).collect();
            let h = g.induced(&rest);
            if h.order() >= 4 && h.is_cycle() {
                return Some((g.label(p), g.label(q)));
            }
        }
    }
    None
}

/// For a flag 2-manifold, evaluates (a) whether it is the suspension of a
/// cycle and (b) whether some facet `σ` satisfies `∪_{v∈σ'} V(lk v) = V(c)`
/// for `σ' = σ` and every facet adjacent to `σ`. Passes iff (b) implies (a).
pub fn suspension_of_circle_check(c: &Complex) -> Result<Report> {
    const CHECK: &str = "suspension_of_circle";
    let an = Analyzer::new(c, CHECK)?;
    if c.dim() != 2 {
        return Err(Error::precondition(CHECK, format!("needs dimension 2, got {}", c.dim())));
    }
    if !is_normal_pseudomanifold(c).passed() {
        return Err(Error::precondition(CHECK, "not a 2-manifold"));
    }
    let covers = par::map(c.facets(), |sigma| {
        let mut u: BTreeSet<VertexId> = BTreeSet::new();
        for &v in sigma.vertices() {
            u.extend(an.link_vertices(&Face::from_sorted(vec![v])));
        }
        u.len() == c.num_vertices()
    });
    let hypothesis: Vec<bool> = (0..c.facets().len())
        .map(|i| covers[i] && an.adjacent_facets(i).iter().all(|&j| covers[j]))
        .collect();
    let poles = suspension_poles(c);
    let structural = poles.is_some();
    let any_hyp = hypothesis.iter().any(|&h| h);
    let mut witnesses = vec![Witness::flag(
        "suspension of a cycle",
        poles.map(|(p, q)| Face::new([p, q]).expect("distinct poles")),
        structural,
    )];
    witnesses.extend(
        c.facets()
            .iter()
            .zip(&hypothesis)
            .map(|(f, &h)| Witness::flag("cover hypothesis at facet and its neighbours", Some(f.clone()), h)),
    );
    let holding = hypothesis.iter().filter(|&&h| h).count();
    Ok(Report::from_witnesses(CHECK, witnesses)
        .with_status(Status::from_bool(!any_hyp || structural))
        .with_note(format!("structural: {structural}; hypothesis holds at {holding} of {} facets", hypothesis.len()))
        .with_note("status reflects: hypothesis at some facet implies suspension structure"))
}

/// Per facet, for `m ∈ {2, 3}`: `M_σ ≤ (1+2m)(2(m−1)n+4m)`, strict unless
/// the complex is a join of `m` cycles. Also verifies globally
/// `Σ_σ M_σ = Σ_v f₀(lk v)(2m·#{σ : v ∈ N(σ)} + #{σ : v ∈ σ})
///          = (2m+1) Σ_v f₀(lk v) f_{2m−2}(lk v)`.
pub fn m_sigma_check(c: &Complex) -> Result<Report> {
    const CHECK: &str = "m_sigma";
    let an = Analyzer::new(c, CHECK)?;
    let m = an.half(CHECK)?;
    if !(2..=3).contains(&m) {
        return Err(Error::Unsupported(format!("{CHECK} is available for m = 2, 3 only (m = {m})")));
    }
    if !is_normal_pseudomanifold(c).passed() {
        return Err(Error::precondition(CHECK, "not a normal pseudomanifold"));
    }
    let join = join_detect(c)?.is_join_of_cycles(m);
    let (mi, n) = (m as i64, an.n() as i64);
    let bound = (1 + 2 * mi) * (2 * (mi - 1) * n + 4 * mi);
    let relation = if join { Relation::Le } else { Relation::Lt };
    let facets = c.facets();
    let per_facet = par::map_range(facets.len(), |i| {
        let adj = an.adjacent_facets(i);
        let sigma = &facets[i];
        let total = an.vertex_link_sum(sigma) + adj.iter().map(|&j| an.vertex_link_sum(&facets[j])).sum::<i64>();
        let mut outside: BTreeSet<VertexId> = BTreeSet::new();
        for &j in &adj {
            outside.extend(facets[j].difference(sigma).vertices().iter().copied());
        }
        (adj.len(), total, outside)
    });
    let mut witnesses = Vec::new();
    let mut in_neighborhood = vec![0i64; c.num_vertices()];
    let mut sum_m = 0i64;
    for (sigma, (adj, total, outside)) in facets.iter().zip(&per_facet) {
        if *adj != 2 * m {
            witnesses.push(Witness::compare("adjacent facets", Some(sigma.clone()), *adj as i64, Relation::Eq, 2 * mi));
        }
        witnesses.push(Witness::compare("M_sigma", Some(sigma.clone()), *total, relation, bound));
        sum_m += total;
        for v in outside {
            in_neighborhood[c.vertex_index(*v).expect("vertex")] += 1;
        }
    }
    let mut counted = 0i64;
    let mut weighted = 0i64;
    for (i, &v) in c.vertices().iter().enumerate() {
        let vf = Face::from_sorted(vec![v]);
        let size = an.link_size(&vf);
        let containing = facets.iter().filter(|f| f.contains(v)).count() as i64;
        counted += size * (2 * mi * in_neighborhood[i] + containing);
        weighted += size * containing;
    }
    witnesses.push(Witness::compare("sum M_sigma = neighbourhood count", None, sum_m, Relation::Eq, counted));
    witnesses.push(Witness::compare(
        "sum M_sigma = (2m+1) sum f0(lk v) f_{2m-2}(lk v)",
        None,
        sum_m,
        Relation::Eq,
        (2 * mi + 1) * weighted,
    ));
    let max_m = per_facet.iter().map(|p| p.1).max().unwrap_or(0);
    Ok(Report::from_witnesses(CHECK, witnesses)
        .with_sides(max_m, bound)
        .with_note(format!("bound (1+2m)(2(m-1)n+4m) = {bound}; join of {m} cycles: {join}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen;

    #[test]
    fn joins_detected() {
        let d = join_detect(&gen::j_m_n(3, 13).unwrap()).unwrap();
        assert!(d.report.passed());
        let sizes: Vec<usize> = d.factors.iter().map(Complex::num_vertices).collect();
        assert_eq!(sizes, vec![5, 4, 4]);
        assert!(d.is_join_of_cycles(3));
        assert_eq!(d.components.len(), 5);
        let d = join_detect(&gen::nonjoin_5manifold(16, 4).unwrap()).unwrap();
        assert_eq!(d.factors.len(), 2);
        assert!(!d.all_cycles);
        let sizes: Vec<usize> = d.factors.iter().map(Complex::num_vertices).collect();
        assert_eq!(sizes, vec![12, 4]);
        let d = join_detect(&gen::gal_gamma(12).unwrap()).unwrap();
        assert!(d.factors().is_none());
    }

    #[test]
    fn two_spheres() {
        let r = suspension_of_circle_check(&gen::octahedron()).unwrap();
        assert!(r.passed());
        assert!(r.witnesses.iter().all(|w| w.holds));
        let r = suspension_of_circle_check(&gen::icosahedron()).unwrap();
        assert!(r.passed());
        assert!(r.witnesses.iter().all(|w| !w.holds));
    }

    #[test]
    fn neighbourhood_sums() {
        let r = m_sigma_check(&gen::j_m_n(3, 12).unwrap()).unwrap();
        assert!(r.passed());
        assert_eq!(r.lhs, Some(420.into()));
        let r = m_sigma_check(&gen::j_m_n(2, 8).unwrap()).unwrap();
        assert!(r.passed());
        assert_eq!(r.lhs, Some(120.into()));
    }

    #[test]
    fn neighbourhood_sums_strict_off_joins() {
        let r = m_sigma_check(&gen::nonjoin_5manifold(16, 4).unwrap()).unwrap();
        assert!(r.passed(), "{:?}", r.failures().next());
        assert_eq!(r.rhs, Some(532.into()));
        let r = m_sigma_check(&gen::gal_gamma(12).unwrap()).unwrap();
        assert!(r.passed());
        assert_eq!(r.rhs, Some(160.into()));
    }

    #[test]
    fn suspended_hexagon() {
        let r = suspension_of_circle_check(&gen::j_star(1, 8).unwrap()).unwrap();
        assert!(r.passed());
        assert!(r.witnesses[0].holds);
    }
}
