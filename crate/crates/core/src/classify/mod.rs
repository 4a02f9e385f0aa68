//! Recognisers for pseudomanifolds, normal pseudomanifolds, Eulerian
//! complexes and homology manifolds/spheres over a prime field.

mod homology;

pub use homology::{
    betti_numbers, boundary_matrix, is_prime, sphere_betti, BettiVector, SparseMatrix,
    DENSE_COLUMN_LIMIT,
};

use std::collections::HashMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::complex::{Complex, Face};
use crate::error::Result;
use crate::flag::is_flag;
use crate::par;
use crate::report::{Relation, Report, Witness};
use crate::vectors::{euler_characteristic, f_vector};

pub const DEFAULT_FIELD: u32 = 2;

fn impure_witnesses(c: &Complex) -> Vec<Witness> {
    let d = c.dim();
    c.facets()
        .iter()
        .filter(|f| f.dim() != d)
        .map(|f| {
            Witness::flag("facet of lower dimension", Some(f.clone()), false)
                .with_detail(format!("dim {} < {d}", f.dim()))
        })
        .collect()
}

/// Pure, and every ridge lies in exactly two facets.
pub fn is_pseudomanifold(c: &Complex) -> Report {
    const CHECK: &str = "pseudomanifold";
    if c.is_void() || c.dim() < 0 {
        return Report::from_witnesses(CHECK, vec![Witness::flag("no facets of dimension >= 0", None, false)]);
    }
    let impure = impure_witnesses(c);
    if !impure.is_empty() {
        return Report::from_witnesses(CHECK, impure);
    }
    let mut count: HashMap<Face, usize> = HashMap::new();
    for f in c.facets() {
        for &v in f.vertices() {
            *count.entry(f.without(v)).or_insert(0) += 1;
        }
    }
    let mut bad: Vec<(Face, usize)> = count.into_iter().filter(|(_, n)| *n != 2).collect();
    bad.sort();
    let witnesses = bad
        .into_iter()
        .map(|(ridge, n)| Witness::compare("facets containing ridge", Some(ridge), n, Relation::Eq, 2))
        .collect();
    Report::from_witnesses(CHECK, witnesses)
}

/// Pseudomanifold, connected, and every face of dimension ≤ d−3 has a
/// connected link. Links of dimension 0 are exempt.
pub fn is_normal_pseudomanifold(c: &Complex) -> Report {
    const CHECK: &str = "normal_pseudomanifold";
    let pm = is_pseudomanifold(c);
    if !pm.passed() {
        return Report::from_witnesses(CHECK, pm.witnesses).with_note("not a pseudomanifold");
    }
    let d = c.dim() + 1;
    let faces: Vec<Face> = c.faces().filter(|s| (s.len() as isize) <= d - 2).cloned().collect();
    let results = par::map(&faces, |s| {
        let lk = c.link(s).expect("face of c");
        (s.clone(), lk.components().len())
    });
    let witnesses = results
        .into_iter()
        .filter(|(_, n)| *n != 1)
        .map(|(s, n)| {
            let label = if s.is_empty() { "complex is disconnected" } else { "disconnected link" };
            Witness::compare(label, Some(s), n, Relation::Eq, 1)
        })
        .collect();
    Report::from_witnesses(CHECK, witnesses)
}

/// Pure, and `χ(lk σ) = (−1)^{dim lk σ} + 1` for every face, including ∅.
pub fn is_eulerian(c: &Complex) -> Report {
    const CHECK: &str = "eulerian";
    if c.is_void() {
        return Report::from_witnesses(CHECK, vec![Witness::flag("void complex", None, false)]);
    }
    let impure = impure_witnesses(c);
    if !impure.is_empty() {
        return Report::from_witnesses(CHECK, impure);
    }
    let faces: Vec<Face> = c.faces().cloned().collect();
    let results = par::map(&faces, |s| {
        let lk = c.link(s).expect("face of c");
        let chi = euler_characteristic(&f_vector(&lk));
        let target = if lk.dim().rem_euclid(2) == 0 { 2 } else { 0 };
        (s.clone(), chi, target)
    });
    let witnesses = results
        .into_iter()
        .filter(|(_, chi, t)| *chi != BigInt::from(*t))
        .map(|(s, chi, t)| Witness::compare("link Euler characteristic", Some(s), chi, Relation::Eq, t))
        .collect();
    Report::from_witnesses(CHECK, witnesses).with_note(format!("{} links checked", faces.len()))
}

fn format_betti(b: &[u64]) -> String {
    format!("({})", b.iter().map(u64::to_string).collect::<Vec<_>>().join(","))
}

/// Every nonempty face has a link with the GF(p)-homology of a sphere of
/// dimension `d − 1 − |σ|`.
pub fn is_homology_manifold(c: &Complex, p: u32) -> Result<Report> {
    const CHECK: &str = "homology_manifold";
    homology::require_prime(p)?;
    if c.is_void() || c.dim() < 0 {
        return Ok(Report::from_witnesses(CHECK, vec![Witness::flag("no nonempty faces", None, false)]));
    }
    let impure = impure_witnesses(c);
    if !impure.is_empty() {
        return Ok(Report::from_witnesses(CHECK, impure));
    }
    let d = c.dim() + 1;
    let faces: Vec<Face> = c.faces().filter(|s| !s.is_empty()).cloned().collect();
    let results = par::map(&faces, |s| {
        let lk = c.link(s).expect("face of c");
        let betti = betti_numbers(&lk, p).expect("prime checked").betti;
        let want = sphere_betti(d - 1 - s.len() as isize);
        (s.clone(), betti, want)
    });
    let witnesses = results
        .into_iter()
        .filter(|(_, b, w)| b != w)
        .map(|(s, b, w)| {
            Witness::flag("link homology is not spherical", Some(s), false)
                .with_detail(format!("betti {} != {}", format_betti(&b), format_betti(&w)))
        })
        .collect();
    Ok(Report::from_witnesses(CHECK, witnesses)
        .with_note(format!("field GF({p}); {} links checked", faces.len())))
}

/// Homology manifold with the homology of a `(d−1)`-sphere.
pub fn is_homology_sphere(c: &Complex, p: u32) -> Result<Report> {
    const CHECK: &str = "homology_sphere";
    let manifold = is_homology_manifold(c, p)?;
    let mut witnesses = manifold.witnesses;
    if !c.is_void() {
        let betti = betti_numbers(c, p)?.betti;
        let want = sphere_betti(c.dim());
        witnesses.push(
            Witness::flag("global homology", None, betti == want)
                .with_detail(format!("betti {} vs sphere {}", format_betti(&betti), format_betti(&want))),
        );
    }
    Ok(Report::from_witnesses(CHECK, witnesses).with_note(format!("field GF({p})")))
}

/// All class memberships of one complex, with the underlying reports.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ClassReport {
    pub field_char: u32,
    pub pure: bool,
    pub flag: bool,
    pub pseudomanifold: bool,
    pub normal: bool,
    pub eulerian: bool,
    pub homology_manifold: bool,
    pub homology_sphere: bool,
    pub reports: Vec<Report>,
}

impl ClassReport {
    pub fn get(&self, property: Property) -> bool {
        match property {
            Property::Flag => self.flag,
            Property::Pseudomanifold => self.pseudomanifold,
            Property::Normal => self.normal,
            Property::Eulerian => self.eulerian,
            Property::HomologyManifold => self.homology_manifold,
            Property::HomologySphere => self.homology_sphere,
        }
    }
}

/// Class tags used by the CLI and the corpus manifest.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Property {
    Flag,
    Pseudomanifold,
    Normal,
    Eulerian,
    HomologyManifold,
    HomologySphere,
}

impl Property {
    pub const ALL: [Property; 6] = [
        Property::Flag,
        Property::Pseudomanifold,
        Property::Normal,
        Property::Eulerian,
        Property::HomologyManifold,
        Property::HomologySphere,
    ];

    pub fn parse(s: &str) -> Option<Property> {
        Some(match s.trim() {
            "flag" => Property::Flag,
            "pseudo" | "pseudomanifold" => Property::Pseudomanifold,
            "normal" => Property::Normal,
            "eulerian" => Property::Eulerian,
            "hmanifold" | "homology_manifold" => Property::HomologyManifold,
            "hsphere" | "homology_sphere" => Property::HomologySphere,
            _ => return None,
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            Property::Flag => "flag",
            Property::Pseudomanifold => "pseudomanifold",
            Property::Normal => "normal",
            Property::Eulerian => "eulerian",
            Property::HomologyManifold => "homology_manifold",
            Property::HomologySphere => "homology_sphere",
        }
    }
}

/// Runs one property check.
pub fn check_property(c: &Complex, property: Property, p: u32) -> Result<Report> {
    Ok(match property {
        Property::Flag => is_flag(c),
        Property::Pseudomanifold => is_pseudomanifold(c),
        Property::Normal => is_normal_pseudomanifold(c),
        Property::Eulerian => is_eulerian(c),
        Property::HomologyManifold => is_homology_manifold(c, p)?,
        Property::HomologySphere => is_homology_sphere(c, p)?,
    })
}

pub fn classify(c: &Complex, p: u32) -> Result<ClassReport> {
    let flag = is_flag(c);
    let pm = is_pseudomanifold(c);
    let normal = is_normal_pseudomanifold(c);
    let eulerian = is_eulerian(c);
    let sphere = is_homology_sphere(c, p)?;
    let manifold = is_homology_manifold(c, p)?;
    Ok(ClassReport {
        field_char: p,
        pure: c.is_pure(),
        flag: flag.passed(),
        pseudomanifold: pm.passed(),
        normal: normal.passed(),
        eulerian: eulerian.passed(),
        homology_manifold: manifold.passed(),
        homology_sphere: sphere.passed(),
        reports: vec![flag, pm, normal, eulerian, manifold, sphere],
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(facets: &[&[u32]]) -> Complex {
        Complex::from_facets(facets.iter().map(|f| f.iter().copied())).unwrap()
    }

    fn square() -> Complex {
        c(&[&[0, 1], &[1, 2], &[2, 3], &[3, 0]])
    }

    #[test]
    fn pseudomanifold_cases() {
        assert!(is_pseudomanifold(&square()).passed());
        let two = c(&[&[0, 1, 2], &[1, 2, 3]]);
        let r = is_pseudomanifold(&two);
        assert!(!r.passed());
        assert_eq!(r.witnesses.len(), 4);
        assert!(r.witnesses.iter().all(|w| w.lhs == Some(1.into())));
        assert!(!is_pseudomanifold(&c(&[&[0, 1, 2], &[3, 4]])).passed());
    }

    #[test]
    fn normality_cases() {
        let two_squares = square().disjoint_union(&square());
        assert!(is_pseudomanifold(&two_squares).passed());
        let r = is_normal_pseudomanifold(&two_squares);
        assert!(!r.passed());
        assert_eq!(r.witnesses[0].face, Some(Face::empty()));
    }

    #[test]
    fn eulerian_cases() {
        assert!(is_eulerian(&square().suspension()).passed());
        let r = is_eulerian(&c(&[&[0, 1, 2]]));
        assert!(!r.passed());
        let w = r.failures().find(|w| w.face == Some(Face::empty())).unwrap();
        assert_eq!(w.lhs, Some(1.into()));
        assert_eq!(w.rhs, Some(2.into()));
    }

    #[test]
    fn manifold_cases() {
        let oct = square().suspension();
        assert!(is_homology_manifold(&oct, 2).unwrap().passed());
        assert!(is_homology_sphere(&oct, 3).unwrap().passed());
        let two_squares = square().disjoint_union(&square());
        assert!(is_homology_manifold(&two_squares, 2).unwrap().passed());
        assert!(!is_homology_sphere(&two_squares, 2).unwrap().passed());
        assert!(is_homology_manifold(&oct, 6).is_err());
    }

    #[test]
    fn property_names() {
        for p in Property::ALL {
            assert_eq!(Property::parse(p.name()), Some(p));
        }
        assert_eq!(Property::parse("hsphere"), Some(Property::HomologySphere));
        assert_eq!(Property::parse("nope"), None);
    }
}
