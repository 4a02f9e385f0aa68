//! Constructors for cycles, joins of cycles, their suspensions, edge
//! subdivisions and the test corpus.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::classify::Property;
use crate::complex::{Complex, Face, VertexId};
use crate::error::{Error, Result};
use crate::flag::is_flag;
use crate::par;
use crate::sc::{read_sc_file, write_sc};

/// The `k`-cycle on labels `0..k`. A triangle is allowed but is not flag.
pub fn cycle(k: usize) -> Result<Complex> {
    if k < 3 {
        return Err(Error::parameter(format!("cycle length {k} is below 3")));
    }
    if k == 3 {
        log::warn!("the 3-cycle is not a flag complex");
    }
    Ok(cycle_at(k, 0))
}

fn cycle_at(k: usize, offset: u32) -> Complex {
    let k32 = k as u32;
    Complex::from_antichain(
        (0..k32)
            .map(|i| {
                let (a, b) = (offset + i, offset + (i + 1) % k32);
                Face::from_sorted(vec![VertexId(a.min(b)), VertexId(a.max(b))])
            })
            .collect(),
    )
}

/// Cycle lengths of the balanced join: `n mod m` cycles of length `⌈n/m⌉`
/// first, then the rest of length `⌊n/m⌋`.
pub fn balanced_lengths(m: usize, n: usize) -> Vec<usize> {
    let (q, r) = (n / m, n % m);
    (0..m).map(|i| if i < r { q + 1 } else { q }).collect()
}

fn join_of_cycles(lengths: &[usize]) -> Complex {
    let mut offset = 0u32;
    let mut acc = Complex::empty_face();
    for &k in lengths {
        acc = acc.join(&cycle_at(k, offset));
        offset += k as u32;
    }
    acc
}

fn require_join_size(m: usize, n: usize) -> Result<()> {
    if n < 4 * m {
        return Err(Error::parameter(format!(
            "n = {n} is below 4m = {}; some cycle would be shorter than 4",
            4 * m
        )));
    }
    Ok(())
}

/// Join of `m` cycles with lengths as equal as possible on `n` vertices;
/// cycle `i` occupies a contiguous block of labels.
pub fn j_m_n(m: usize, n: usize) -> Result<Complex> {
    if m < 2 {
        return Err(Error::parameter("m must be at least 2"));
    }
    require_join_size(m, n)?;
    Ok(join_of_cycles(&balanced_lengths(m, n)))
}

/// Suspension of the balanced join of `m` cycles on `n − 2` vertices. For
/// `m = 1` this is the suspension of a single cycle.
pub fn j_star(m: usize, n: usize) -> Result<Complex> {
    if m < 1 {
        return Err(Error::parameter("m must be at least 1"));
    }
    let base = n
        .checked_sub(2)
        .ok_or_else(|| Error::parameter("n must be at least 2"))?;
    require_join_size(m, base)?;
    Ok(join_of_cycles(&balanced_lengths(m, base)).suspension())
}

/// Stellar subdivision of the edge `e = {u, v}` by a new vertex `w` with
/// label one above the current maximum: every facet `F ⊇ e` is replaced by
/// `{w, u} ∪ (F − e)` and `{w, v} ∪ (F − e)`. Flagness of the result is
/// checked and a warning logged if it fails.
pub fn subdivide_edge(c: &Complex, e: &Face) -> Result<Complex> {
    if e.len() != 2 || !c.contains_face(e) {
        return Err(Error::NotAFace(e.clone()));
    }
    let (u, v) = (e.vertices()[0], e.vertices()[1]);
    let w = VertexId(c.max_label().map_or(0, |x| x.0 + 1));
    let mut facets = Vec::with_capacity(c.facets().len() + 8);
    for f in c.facets() {
        if e.is_subset(f) {
            let rest = f.difference(e);
            facets.push(rest.with(w).with(u));
            facets.push(rest.with(w).with(v));
        } else {
            facets.push(f.clone());
        }
    }
    let out = Complex::from_faces(facets);
    if !is_flag(&out).passed() {
        log::warn!("subdividing {e} produced a complex that is not flag");
    }
    Ok(out)
}

/// The lowest vertex of the first factor paired with the lowest vertex of
/// the second; in a join every such pair is an edge.
fn mixed_edge(first: &Complex, second: &Complex) -> Face {
    let a = first.vertices()[0];
    let b = second.vertices()[0];
    Face::from_sorted(vec![a.min(b), a.max(b)])
}

/// `C_{n/2−1} * C_{n/2}` with one mixed edge subdivided: a flag 3-sphere on
/// `n` vertices with `(n² + 2n + 16)/4` edges.
pub fn gal_gamma(n: usize) -> Result<Complex> {
    if n % 2 != 0 || n < 12 {
        return Err(Error::parameter(format!("gal_gamma needs even n >= 12, got {n}")));
    }
    let half = n / 2;
    let first = cycle_at(half - 1, 0);
    let second = cycle_at(half, (half - 1) as u32);
    let joined = first.join(&second);
    subdivide_edge(&joined, &mixed_edge(&first, &second))
}

/// `gal_gamma(n − k) * C_k`: a flag 5-sphere on `n` vertices that is not a
/// join of three cycles.
pub fn nonjoin_5manifold(n: usize, k: usize) -> Result<Complex> {
    if k < 4 {
        return Err(Error::parameter(format!("cycle length k = {k} is below 4")));
    }
    let rest = n
        .checked_sub(k)
        .filter(|r| r % 2 == 0 && *r >= 12)
        .ok_or_else(|| Error::parameter(format!("n − k must be even and at least 12 (n={n}, k={k})")))?;
    let gamma = gal_gamma(rest)?;
    Ok(gamma.join(&cycle_at(k, rest as u32)))
}

/// Boundary of the `m`-dimensional cross-polytope: the join of `m` copies
/// of `S⁰`, antipodes `{2i, 2i+1}`.
pub fn crosspoly(m: usize) -> Result<Complex> {
    if m < 1 {
        return Err(Error::parameter("cross-polytope dimension must be at least 1"));
    }
    let mut acc = Complex::empty_face();
    for i in 0..m as u32 {
        let pair = Complex::from_antichain(vec![
            Face::from_sorted(vec![VertexId(2 * i)]),
            Face::from_sorted(vec![VertexId(2 * i + 1)]),
        ]);
        acc = acc.join(&pair);
    }
    Ok(acc)
}

pub fn octahedron() -> Complex {
    crosspoly(3).expect("m = 3 is valid")
}

/// The boundary of the icosahedron: apex 0, upper ring 1–5, lower ring
/// 6–10, apex 11.
pub fn icosahedron() -> Complex {
    let up = |i: u32| 1 + i % 5;
    let low = |i: u32| 6 + i % 5;
    let mut facets = Vec::new();
    for i in 0..5 {
        facets.push(vec![0, up(i), up(i + 1)]);
        facets.push(vec![11, low(i), low(i + 1)]);
        facets.push(vec![up(i), up(i + 1), low(i)]);
        facets.push(vec![low(i), low(i + 1), up(i + 1)]);
    }
    Complex::from_facets(facets).expect("valid facets")
}

/// Two octahedra sharing exactly one vertex.
pub fn pinched_octahedra() -> Complex {
    let a = octahedron();
    let map = a
        .vertices()
        .iter()
        .map(|&v| (v, if v.0 == 0 { v } else { VertexId(v.0 + 5) }))
        .collect();
    let b = a.relabel(&map);
    Complex::from_faces(a.facets().iter().chain(b.facets()).cloned().collect())
}

fn raw(facets: &[&[u32]]) -> Complex {
    Complex::from_facets(facets.iter().map(|f| f.iter().copied())).expect("valid facets")
}

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: String,
    pub family: String,
    pub complex: Complex,
    pub expected_class: BTreeMap<Property, bool>,
    pub parameters: BTreeMap<String, i64>,
}

fn classes(values: [bool; 6]) -> BTreeMap<Property, bool> {
    Property::ALL.into_iter().zip(values).collect()
}

const SPHERE: [bool; 6] = [true; 6];

struct Recipe {
    name: String,
    family: &'static str,
    parameters: Vec<(&'static str, i64)>,
    expected: [bool; 6],
    build: Box<dyn Fn() -> Result<Complex> + Send + Sync>,
}

fn recipe(
    name: String,
    family: &'static str,
    parameters: Vec<(&'static str, i64)>,
    expected: [bool; 6],
    build: impl Fn() -> Result<Complex> + Send + Sync + 'static,
) -> Recipe {
    Recipe {
        name,
        family,
        parameters,
        expected,
        build: Box::new(build),
    }
}

/// The deterministic corpus used by the acceptance suite. Class order in
/// the expectation arrays follows [`Property::ALL`].
pub fn build_corpus(max_n: usize) -> Result<Vec<CorpusEntry>> {
    if max_n < 14 {
        return Err(Error::parameter(format!("max_n must be at least 14, got {max_n}")));
    }
    let mut recipes = Vec::new();
    for n in 8..=max_n {
        recipes.push(recipe(format!("J2_{n}"), "jmn", vec![("m", 2), ("n", n as i64)], SPHERE, move || j_m_n(2, n)));
    }
    for n in 12..=max_n {
        recipes.push(recipe(format!("J3_{n}"), "jmn", vec![("m", 3), ("n", n as i64)], SPHERE, move || j_m_n(3, n)));
    }
    for n in 10..=max_n {
        recipes.push(recipe(format!("Jstar2_{n}"), "jstar", vec![("m", 2), ("n", n as i64)], SPHERE, move || j_star(2, n)));
    }
    for n in (12..=max_n).step_by(2) {
        recipes.push(recipe(format!("Gamma_{n}"), "gal3", vec![("n", n as i64)], SPHERE, move || gal_gamma(n)));
    }
    for k in 4..=6usize {
        for n in (k + 12..=max_n).step_by(2) {
            recipes.push(recipe(
                format!("nonjoin5_{n}_{k}"),
                "nonjoin5",
                vec![("n", n as i64), ("k", k as i64)],
                SPHERE,
                move || nonjoin_5manifold(n, k),
            ));
        }
    }
    recipes.push(recipe("J3_12_subdivided".into(), "subdivision", vec![("m", 3), ("n", 13)], SPHERE, || {
        let c = j_m_n(3, 12)?;
        subdivide_edge(&c, &Face::new([0u32, 4])?)
    }));
    recipes.push(recipe("octahedron".into(), "crosspoly", vec![("m", 3)], SPHERE, || Ok(octahedron())));
    recipes.push(recipe("crosspoly_4".into(), "crosspoly", vec![("m", 4)], SPHERE, || crosspoly(4)));
    recipes.push(recipe("icosahedron".into(), "icosahedron", vec![], SPHERE, || Ok(icosahedron())));
    recipes.push(recipe("S0_C6".into(), "jstar", vec![("m", 1), ("n", 8)], SPHERE, || j_star(1, 8)));
    recipes.push(recipe(
        "hollow_triangle".into(),
        "negative",
        vec![],
        [false, true, true, true, true, true],
        || Ok(cycle_at(3, 0)),
    ));
    recipes.push(recipe(
        "two_triangles".into(),
        "negative",
        vec![],
        [true, false, false, false, false, false],
        || Ok(raw(&[&[0, 1, 2], &[1, 2, 3]])),
    ));
    recipes.push(recipe(
        "pinched_octahedra".into(),
        "negative",
        vec![],
        [true, true, false, false, false, false],
        || Ok(pinched_octahedra()),
    ));
    recipes.push(recipe(
        "two_squares".into(),
        "negative",
        vec![],
        [true, true, false, true, true, false],
        || Ok(cycle_at(4, 0).disjoint_union(&cycle_at(4, 4))),
    ));
    recipes.push(recipe(
        "solid_triangle".into(),
        "negative",
        vec![],
        [true, false, false, false, false, false],
        || Ok(raw(&[&[0, 1, 2]])),
    ));

    let built = par::map(&recipes, |r| (r.build)());
    recipes
        .into_iter()
        .zip(built)
        .map(|(s, complex)| {
            Ok(CorpusEntry {
                name: s.name,
                family: s.family.to_string(),
                complex: complex?,
                expected_class: classes(s.expected),
                parameters: s.parameters.into_iter().map(|(k, v)| (k.to_string(), v)).collect(),
            })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub name: String,
    pub file: String,
    pub family: String,
    pub parameters: BTreeMap<String, i64>,
    pub expected_class: BTreeMap<Property, bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Manifest {
    pub entries: Vec<ManifestEntry>,
}

pub const MANIFEST_FILE: &str = "manifest.json";

pub fn manifest(entries: &[CorpusEntry]) -> Manifest {
    Manifest {
        entries: entries
            .iter()
            .map(|e| ManifestEntry {
                name: e.name.clone(),
                file: format!("{}.sc", e.name),
                family: e.family.clone(),
                parameters: e.parameters.clone(),
                expected_class: e.expected_class.clone(),
            })
            .collect(),
    }
}

/// Writes one `.sc` file per entry and `manifest.json` into `dir`.
pub fn write_corpus(entries: &[CorpusEntry], dir: impl AsRef<Path>) -> Result<PathBuf> {
    let dir = dir.as_ref();
    fs::create_dir_all(dir)?;
    let m = manifest(entries);
    for (entry, meta) in entries.iter().zip(&m.entries) {
        fs::write(dir.join(&meta.file), write_sc(&entry.complex))?;
    }
    let path = dir.join(MANIFEST_FILE);
    let mut text = serde_json::to_string_pretty(&m)?;
    text.push('\n');
    fs::write(&path, text)?;
    Ok(path)
}

/// Reads a corpus written by [`write_corpus`].
pub fn read_corpus(dir: impl AsRef<Path>) -> Result<Vec<CorpusEntry>> {
    let dir = dir.as_ref();
    let m: Manifest = serde_json::from_str(&fs::read_to_string(dir.join(MANIFEST_FILE))?)?;
    m.entries
        .into_iter()
        .map(|e| {
            Ok(CorpusEntry {
                complex: read_sc_file(dir.join(&e.file))?.complex,
                name: e.name,
                family: e.family,
                expected_class: e.expected_class,
                parameters: e.parameters,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flag::one_skeleton;
    use crate::vectors::f_vector;

    fn f(c: &Complex) -> Vec<u64> {
        let fv = f_vector(c);
        (-1..=c.dim()).map(|i| fv.f_u64(i)).collect()
    }

    #[test]
    fn cycles() {
        assert_eq!(f(&cycle(5).unwrap()), vec![1, 5, 5]);
        assert!(cycle(2).is_err());
        assert!(!is_flag(&cycle(3).unwrap()).passed());
    }

    #[test]
    fn balanced_joins() {
        assert_eq!(balanced_lengths(3, 13), vec![5, 4, 4]);
        assert_eq!(f(&j_m_n(2, 8).unwrap()), vec![1, 8, 24, 32, 16]);
        assert_eq!(j_m_n(3, 13).unwrap().facets().len(), 80);
        assert!(j_m_n(3, 11).is_err());
        assert!(j_m_n(1, 8).is_err());
        let c = j_m_n(3, 13).unwrap();
        assert_eq!(c.num_vertices(), 13);
        assert_eq!(c.vertices().last().unwrap().0, 12);
    }

    #[test]
    fn suspensions() {
        assert_eq!(j_star(2, 10).unwrap().facets().len(), 32);
        assert_eq!(j_star(2, 12).unwrap().facets().len(), 50);
        let oct = j_star(1, 6).unwrap();
        assert!(crate::flag::is_isomorphic(&one_skeleton(&oct), &one_skeleton(&octahedron())));
        assert!(j_star(2, 9).is_err());
    }

    #[test]
    fn subdivision() {
        let c4 = cycle(4).unwrap();
        let s = subdivide_edge(&c4, &Face::new([0u32, 1]).unwrap()).unwrap();
        assert_eq!(s.facets().len(), 5);
        assert!(s.components().len() == 1 && s.num_vertices() == 5);
        let j = j_m_n(3, 12).unwrap();
        let e = Face::new([0u32, 4]).unwrap();
        let s = subdivide_edge(&j, &e).unwrap();
        assert_eq!(s.facets().len(), 80);
        assert!(matches!(subdivide_edge(&j, &Face::new([0u32, 2]).unwrap()), Err(Error::NotAFace(_))));
    }

    #[test]
    fn gamma_construction() {
        let g = gal_gamma(12).unwrap();
        assert_eq!(g.num_vertices(), 12);
        assert_eq!(f_vector(&g).f_u64(1), 46);
        assert_eq!(g.facets().len(), 34);
        assert!(gal_gamma(13).is_err() && gal_gamma(10).is_err());
    }

    #[test]
    fn nonjoins() {
        assert_eq!(nonjoin_5manifold(16, 4).unwrap().facets().len(), 136);
        assert_eq!(nonjoin_5manifold(17, 5).unwrap().facets().len(), 170);
        assert!(nonjoin_5manifold(15, 4).is_err());
        assert!(nonjoin_5manifold(15, 3).is_err());
    }

    #[test]
    fn small_spheres() {
        assert_eq!(f(&octahedron()), vec![1, 6, 12, 8]);
        assert_eq!(f(&icosahedron()), vec![1, 12, 30, 20]);
        assert_eq!(f(&pinched_octahedra()), vec![1, 11, 24, 16]);
    }

    #[test]
    fn corpus_names_unique() {
        let corpus = build_corpus(14).unwrap();
        assert!(corpus.len() >= 15);
        let mut names: Vec<&str> = corpus.iter().map(|e| e.name.as_str()).collect();
        names.sort();
        let before = names.len();
        names.dedup();
        assert_eq!(before, names.len());
        assert_eq!(corpus.iter().filter(|e| e.name == "J3_12").count(), 1);
        assert!(build_corpus(13).is_err());
    }
}
