//! Flag complexes: graphs, clique complexes, flagness and the link
//! identities that hold in flag complexes.

mod cliques;
mod graph;
mod iso;

pub use cliques::{clique_complex, clique_f_vector, degeneracy_order, maximal_cliques};
pub use graph::{one_skeleton, parse_g, read_g_file, write_g, Graph};
pub use iso::{find_isomorphism, is_isomorphic};

use crate::complex::{Complex, Face};
use crate::error::{Error, Result};
use crate::par;
use crate::report::{Report, Witness};

/// Passes iff every minimal non-face has two vertices, i.e. the complex is
/// the clique complex of its 1-skeleton. A failing report names one minimal
/// non-face with at least three vertices.
pub fn is_flag(c: &Complex) -> Report {
    const CHECK: &str = "flag";
    if c.is_void() {
        return Report::from_witnesses(CHECK, vec![]).with_note("void complex");
    }
    let filled = clique_complex(&one_skeleton(c));
    if filled == *c {
        return Report::from_witnesses(CHECK, vec![]);
    }
    let clique = filled
        .facets()
        .iter()
        .find(|f| !c.contains_face(f))
        .expect("clique complex strictly contains a non-flag complex")
        .clone();
    let witness = minimal_non_face(c, clique);
    Report::from_witnesses(
        CHECK,
        vec![Witness::flag("minimal non-face", Some(witness.clone()), false)
            .with_detail(format!("{} vertices, all pairs are edges", witness.len()))],
    )
}

/// Shrinks a non-face until every proper subset is a face.
fn minimal_non_face(c: &Complex, mut face: Face) -> Face {
    debug_assert!(!c.contains_face(&face));
    let mut i = 0;
    while i < face.len() {
        let smaller = face.without(face.vertices()[i]);
        if !c.contains_face(&smaller) {
            face = smaller;
        } else {
            i += 1;
        }
    }
    face
}

pub(crate) fn require_flag(c: &Complex, check: &str) -> Result<()> {
    let r = is_flag(c);
    if r.passed() {
        Ok(())
    } else {
        let w = r.witnesses.first().and_then(|w| w.face.clone()).unwrap_or_default();
        Err(Error::precondition(check, format!("complex is not flag (missing face {w})")))
    }
}

/// For every face σ: `lk(σ) = c[V(lk σ)]`.
pub fn flag_link_identity_check(c: &Complex) -> Result<Report> {
    const CHECK: &str = "flag_link_identity";
    require_flag(c, CHECK)?;
    let faces: Vec<Face> = c.faces().cloned().collect();
    let results = par::map(&faces, |s| {
        let lk = c.link(s).expect("face of c");
        let induced = c.restriction(lk.vertices());
        (lk == induced).then_some(()).ok_or_else(|| s.clone())
    });
    let witnesses = results
        .into_iter()
        .filter_map(|r| r.err())
        .map(|s| Witness::flag("link differs from induced subcomplex", Some(s), false))
        .collect();
    Ok(Report::from_witnesses(CHECK, witnesses).with_note(format!("{} faces checked", faces.len())))
}

/// `lk(σ₁ ∪ σ₂) = lk(σ₁) ∩ lk(σ₂)` for one split of a face.
pub fn link_condition_holds(c: &Complex, s1: &Face, s2: &Face) -> Result<bool> {
    let whole = s1.union(s2);
    let lk = c.link(&whole)?;
    let meet = c.link(s1)?.intersection(&c.link(s2)?);
    Ok(lk == meet)
}

/// For every face σ and every split σ = σ₁ ⊔ σ₂: `lk(σ) = lk(σ₁) ∩ lk(σ₂)`.
pub fn link_intersection_check(c: &Complex) -> Result<Report> {
    const CHECK: &str = "link_intersection";
    require_flag(c, CHECK)?;
    let faces: Vec<Face> = c.faces().cloned().collect();
    let links: std::collections::HashMap<Face, Complex> = par::map(&faces, |s| {
        (s.clone(), c.link(s).expect("face of c"))
    })
    .into_iter()
    .collect();
    let per_face = par::map(&faces, |s| {
        let k = s.len();
        // each unordered split once: σ₂ always holds the last vertex
        let masks = if k == 0 { 1 } else { 1u64 << (k - 1) };
        let mut bad = Vec::new();
        for mask in 0..masks {
            let s1 = s.subset_from_mask(mask);
            let s2 = s.difference(&s1);
            let meet = links[&s1].intersection(&links[&s2]);
            if links[s] != meet {
                bad.push(Witness::flag("split violates link condition", Some(s.clone()), false)
                    .with_detail(format!("{s1} | {s2}")));
            }
        }
        (masks as usize, bad)
    });
    let checked: usize = per_face.iter().map(|(n, _)| n).sum();
    let witnesses = per_face.into_iter().flat_map(|(_, b)| b).collect();
    Ok(Report::from_witnesses(CHECK, witnesses).with_note(format!("{checked} splits checked")))
}
