//! Facet-based simplicial complexes.
//!
//! A [`Complex`] is stored as the antichain of its facets, each facet a
//! strictly increasing vertex sequence. The full face lattice is computed
//! lazily on first use and cached, since most checks walk it repeatedly.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::par;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(pub u32);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<u32> for VertexId {
    fn from(v: u32) -> Self {
        VertexId(v)
    }
}

/// A face: a duplicate-free, strictly increasing vertex sequence. The empty
/// face has dimension −1.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Face(Vec<VertexId>);

impl Face {
    /// Builds a face from arbitrary-order labels; repeated labels are an error.
    pub fn new<I>(vertices: I) -> Result<Face>
    where
        I: IntoIterator,
        I::Item: Into<VertexId>,
    {
        let mut vs: Vec<VertexId> = vertices.into_iter().map(Into::into).collect();
        vs.sort_unstable();
        if let Some(w) = vs.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::MalformedFace(format!(
                "vertex {} repeated in {:?}",
                w[0],
                vs.iter().map(|v| v.0).collect::<Vec<_>>()
            )));
        }
        Ok(Face(vs))
    }

    pub fn empty() -> Face {
        Face(Vec::new())
    }

    /// Caller guarantees the vertices are strictly increasing.
    pub(crate) fn from_sorted(vs: Vec<VertexId>) -> Face {
        debug_assert!(vs.windows(2).all(|w| w[0] < w[1]));
        Face(vs)
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn dim(&self) -> isize {
        self.0.len() as isize - 1
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn is_subset(&self, other: &Face) -> bool {
        if self.len() > other.len() {
            return false;
        }
        let mut it = other.0.iter();
        'outer: for v in &self.0 {
            for w in it.by_ref() {
                if w == v {
                    continue 'outer;
                }
                if w > v {
                    return false;
                }
            }
            return false;
        }
        true
    }

    pub fn union(&self, other: &Face) -> Face {
        let mut vs = Vec::with_capacity(self.len() + other.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].cmp(&other.0[j]) {
                std::cmp::Ordering::Less => {
                    vs.push(self.0[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    vs.push(other.0[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    vs.push(self.0[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        vs.extend_from_slice(&self.0[i..]);
        vs.extend_from_slice(&other.0[j..]);
        Face(vs)
    }

    pub fn difference(&self, other: &Face) -> Face {
        Face(self.0.iter().copied().filter(|v| !other.contains(*v)).collect())
    }

    pub fn intersection(&self, other: &Face) -> Face {
        Face(self.0.iter().copied().filter(|v| other.contains(*v)).collect())
    }

    pub fn with(&self, v: VertexId) -> Face {
        match self.0.binary_search(&v) {
            Ok(_) => self.clone(),
            Err(pos) => {
                let mut vs = self.0.clone();
                vs.insert(pos, v);
                Face(vs)
            }
        }
    }

    pub fn without(&self, v: VertexId) -> Face {
        Face(self.0.iter().copied().filter(|&w| w != v).collect())
    }

    /// Every subset, in increasing bitmask order (the empty face first).
    pub fn subsets(&self) -> impl Iterator<Item = Face> + '_ {
        assert!(self.len() < 64, "face too large to enumerate subsets");
        (0u64..(1u64 << self.len())).map(move |mask| self.subset_from_mask(mask))
    }

    /// Subsets with exactly `k` vertices.
    pub fn subsets_of_size(&self, k: usize) -> impl Iterator<Item = Face> + '_ {
        self.subsets_masked()
            .filter(move |m| m.count_ones() as usize == k)
            .map(move |m| self.subset_from_mask(m))
    }

    fn subsets_masked(&self) -> impl Iterator<Item = u64> {
        assert!(self.len() < 64, "face too large to enumerate subsets");
        0u64..(1u64 << self.len())
    }

    pub(crate) fn subset_from_mask(&self, mask: u64) -> Face {
        Face(
            self.0
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, v)| *v)
                .collect(),
        )
    }

    pub fn labels(&self) -> Vec<u32> {
        self.0.iter().map(|v| v.0).collect()
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// Map from old to new vertex labels produced by auto-relabeling.
pub type Relabeling = BTreeMap<VertexId, VertexId>;

#[derive(Debug)]
struct FaceLattice {
    /// `by_size[k]` holds the faces with `k` vertices, sorted.
    by_size: Vec<Vec<Face>>,
    set: HashSet<Face>,
}

/// An immutable simplicial complex stored by its facets.
///
/// The void complex (no faces at all) and the complex `{∅}` are distinct:
/// the latter is the identity for [`join`].
#[derive(Debug)]
pub struct Complex {
    facets: Vec<Face>,
    vertices: Vec<VertexId>,
    lattice: OnceLock<FaceLattice>,
}

impl Clone for Complex {
    fn clone(&self) -> Self {
        Complex {
            facets: self.facets.clone(),
            vertices: self.vertices.clone(),
            lattice: OnceLock::new(),
        }
    }
}

impl PartialEq for Complex {
    fn eq(&self, other: &Self) -> bool {
        self.facets == other.facets
    }
}

impl Eq for Complex {}

impl Complex {
    /// Builds a complex from raw facet label lists. Dominated faces are
    /// dropped and the facets sorted canonically.
    pub fn from_facets<I, F, V>(facets: I) -> Result<Complex>
    where
        I: IntoIterator<Item = F>,
        F: IntoIterator<Item = V>,
        V: Into<VertexId>,
    {
        let faces = facets
            .into_iter()
            .map(Face::new)
            .collect::<Result<Vec<_>>>()?;
        Ok(Complex::from_faces(faces))
    }

    /// Builds a complex generated by `faces` (any set of faces; the
    /// inclusion-maximal ones become the facets).
    pub fn from_faces(faces: Vec<Face>) -> Complex {
        Complex::from_antichain(maximal_faces(faces))
    }

    /// `facets` must already be an antichain.
    pub(crate) fn from_antichain(mut facets: Vec<Face>) -> Complex {
        facets.sort_unstable();
        facets.dedup();
        let mut vertices: Vec<VertexId> = facets.iter().flat_map(|f| f.0.iter().copied()).collect();
        vertices.sort_unstable();
        vertices.dedup();
        Complex {
            facets,
            vertices,
            lattice: OnceLock::new(),
        }
    }

    pub fn void() -> Complex {
        Complex::from_antichain(Vec::new())
    }

    /// The complex whose only face is the empty face.
    pub fn empty_face() -> Complex {
        Complex::from_antichain(vec![Face::empty()])
    }

    /// The full simplex on the given vertices.
    pub fn simplex(face: Face) -> Complex {
        Complex::from_antichain(vec![face])
    }

    pub fn facets(&self) -> &[Face] {
        &self.facets
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_void(&self) -> bool {
        self.facets.is_empty()
    }

    /// Maximum facet dimension; −1 for `{∅}` and for the void complex.
    pub fn dim(&self) -> isize {
        self.facets.iter().map(Face::dim).max().unwrap_or(-1)
    }

    pub fn is_pure(&self) -> bool {
        let d = self.dim();
        self.facets.iter().all(|f| f.dim() == d)
    }

    pub fn vertex_index(&self, v: VertexId) -> Option<usize> {
        self.vertices.binary_search(&v).ok()
    }

    pub fn max_label(&self) -> Option<VertexId> {
        self.vertices.last().copied()
    }

    pub fn contains_face(&self, face: &Face) -> bool {
        if let Some(lat) = self.lattice.get() {
            return lat.set.contains(face);
        }
        self.facets.iter().any(|f| face.is_subset(f))
    }

    fn lattice(&self) -> &FaceLattice {
        self.lattice.get_or_init(|| {
            if self.facets.is_empty() {
                return FaceLattice {
                    by_size: Vec::new(),
                    set: HashSet::new(),
                };
            }
            let chunks = par::map(&self.facets, |f| f.subsets().collect::<Vec<_>>());
            let mut set = HashSet::new();
            for chunk in chunks {
                set.extend(chunk);
            }
            let top = self.facets.iter().map(Face::len).max().unwrap_or(0);
            let mut by_size = vec![Vec::new(); top + 1];
            for f in &set {
                by_size[f.len()].push(f.clone());
            }
            for layer in &mut by_size {
                layer.sort_unstable();
            }
            FaceLattice { by_size, set }
        })
    }

    /// Faces of dimension `k` (so `k = −1` gives the empty face), sorted.
    pub fn faces_of_dim(&self, k: isize) -> &[Face] {
        let size = k + 1;
        if size < 0 {
            return &[];
        }
        self.lattice()
            .by_size
            .get(size as usize)
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    /// Every face including the empty one, ordered by size then
    /// lexicographically.
    pub fn faces(&self) -> impl Iterator<Item = &Face> {
        self.lattice().by_size.iter().flatten()
    }

    pub fn num_faces(&self) -> usize {
        self.lattice().set.len()
    }

    /// The link `{τ − s : s ⊆ τ ∈ c}`.
    pub fn link(&self, s: &Face) -> Result<Complex> {
        let facets: Vec<Face> = self
            .facets
            .iter()
            .filter(|f| s.is_subset(f))
            .map(|f| f.difference(s))
            .collect();
        if facets.is_empty() {
            return Err(Error::NotAFace(s.clone()));
        }
        Ok(Complex::from_antichain(facets))
    }

    /// Vertex set of the link of `s`, without building the link.
    pub fn link_vertices(&self, s: &Face) -> Result<Vec<VertexId>> {
        let mut found = false;
        let mut vs = Vec::new();
        for f in self.facets.iter().filter(|f| s.is_subset(f)) {
            found = true;
            vs.extend(f.0.iter().copied().filter(|v| !s.contains(*v)));
        }
        if !found {
            return Err(Error::NotAFace(s.clone()));
        }
        vs.sort_unstable();
        vs.dedup();
        Ok(vs)
    }

    /// Induced subcomplex on `w`: all faces contained in `w`.
    pub fn restriction(&self, w: &[VertexId]) -> Complex {
        if self.is_void() {
            return Complex::void();
        }
        let mut keep: Vec<VertexId> = w.to_vec();
        keep.sort_unstable();
        keep.dedup();
        let keep = Face::from_sorted(keep);
        Complex::from_faces(self.facets.iter().map(|f| f.intersection(&keep)).collect())
    }

    /// Faces common to both complexes. Its facets are the maximal pairwise
    /// facet intersections.
    pub fn intersection(&self, other: &Complex) -> Complex {
        if self.is_void() || other.is_void() {
            return Complex::void();
        }
        let mut faces = Vec::with_capacity(self.facets.len() * other.facets.len());
        for a in &self.facets {
            for b in &other.facets {
                faces.push(a.intersection(b));
            }
        }
        Complex::from_faces(faces)
    }

    /// Join with `other`, relabeling `other` if the vertex sets meet.
    pub fn join(&self, other: &Complex) -> Complex {
        self.join_with_relabeling(other).0
    }

    /// Join that also reports how `other` was relabeled, if it was.
    pub fn join_with_relabeling(&self, other: &Complex) -> (Complex, Option<Relabeling>) {
        let (other, relabeling) = self.disjoint_copy(other);
        let mut facets = Vec::with_capacity(self.facets.len() * other.facets.len());
        for a in &self.facets {
            for b in &other.facets {
                facets.push(a.union(b));
            }
        }
        (Complex::from_antichain(facets), relabeling)
    }

    /// Disjoint union with `other`, relabeling `other` if needed.
    pub fn disjoint_union(&self, other: &Complex) -> Complex {
        let (other, _) = self.disjoint_copy(other);
        let mut faces = self.facets.clone();
        faces.extend(other.facets.iter().cloned());
        Complex::from_faces(faces)
    }

    /// Join with a fresh `S⁰` whose two vertices take the next free labels.
    pub fn suspension(&self) -> Complex {
        let next = self.max_label().map_or(0, |v| v.0 + 1);
        let poles = Complex::from_antichain(vec![
            Face(vec![VertexId(next)]),
            Face(vec![VertexId(next + 1)]),
        ]);
        self.join(&poles)
    }

    /// Applies an injective relabeling; unmapped vertices keep their label.
    pub fn relabel(&self, map: &Relabeling) -> Complex {
        let facets = self
            .facets
            .iter()
            .map(|f| {
                let mut vs: Vec<VertexId> = f
                    .0
                    .iter()
                    .map(|v| map.get(v).copied().unwrap_or(*v))
                    .collect();
                vs.sort_unstable();
                Face(vs)
            })
            .collect();
        Complex::from_antichain(facets)
    }

    fn disjoint_copy(&self, other: &Complex) -> (Complex, Option<Relabeling>) {
        let clash = other
            .vertices
            .iter()
            .any(|v| self.vertices.binary_search(v).is_ok());
        if !clash {
            return (other.clone(), None);
        }
        let next = self.max_label().map_or(0, |v| v.0 + 1);
        let map: Relabeling = other
            .vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (*v, VertexId(next + i as u32)))
            .collect();
        (other.relabel(&map), Some(map))
    }

    /// Connectivity of the 1-skeleton. Complexes with at most one vertex
    /// count as connected.
    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Vertex sets of the connected components, each sorted.
    pub fn components(&self) -> Vec<Vec<VertexId>> {
        let n = self.vertices.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for f in &self.facets {
            let idx: Vec<usize> = f.0.iter().map(|v| self.vertex_index(*v).unwrap()).collect();
            for w in idx.windows(2) {
                let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
                if a != b {
                    parent[a] = b;
                }
            }
        }
        let mut groups: BTreeMap<usize, Vec<VertexId>> = BTreeMap::new();
        for i in 0..n {
            let r = find(&mut parent, i);
            groups.entry(r).or_default().push(self.vertices[i]);
        }
        let mut out: Vec<Vec<VertexId>> = groups.into_values().collect();
        out.sort();
        out
    }
}

/// Inclusion-maximal members of `faces`, deduplicated.
fn maximal_faces(mut faces: Vec<Face>) -> Vec<Face> {
    faces.sort_unstable_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    faces.dedup();
    let mut kept: Vec<Face> = Vec::with_capacity(faces.len());
    for f in faces {
        if !kept.iter().any(|k| k.len() > f.len() && f.is_subset(k)) {
            kept.push(f);
        }
    }
    kept
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(facets: &[&[u32]]) -> Complex {
        Complex::from_facets(facets.iter().map(|f| f.iter().copied())).unwrap()
    }

    fn face(vs: &[u32]) -> Face {
        Face::new(vs.iter().copied()).unwrap()
    }

    #[test]
    fn square_from_facets() {
        let c4 = c(&[&[0, 1], &[1, 2], &[2, 3], &[3, 0]]);
        assert_eq!(c4.dim(), 1);
        assert_eq!(c4.num_vertices(), 4);
        assert_eq!(c4.facets().len(), 4);
    }

    #[test]
    fn domination_removed() {
        let t = c(&[&[0, 1], &[0, 1, 2]]);
        assert_eq!(t.facets(), &[face(&[0, 1, 2])]);
        assert_eq!(t.dim(), 2);
    }

    #[test]
    fn repeated_vertex_is_malformed() {
        let err = Complex::from_facets([[0u32, 1, 1]]).unwrap_err();
        assert!(matches!(err, Error::MalformedFace(_)));
    }

    #[test]
    fn void_and_empty_face_differ() {
        let void = Complex::void();
        let e = Complex::empty_face();
        assert_ne!(void, e);
        assert_eq!(void.num_faces(), 0);
        assert_eq!(e.num_faces(), 1);
        assert_eq!(Complex::from_facets(Vec::<Vec<u32>>::new()).unwrap(), void);
        assert_eq!(Complex::from_facets([Vec::<u32>::new()]).unwrap(), e);
    }

    #[test]
    fn link_of_square_vertex() {
        let c4 = c(&[&[0, 1], &[1, 2], &[2, 3], &[3, 0]]);
        let lk = c4.link(&face(&[0])).unwrap();
        assert_eq!(lk, c(&[&[1], &[3]]));
        assert_eq!(c4.link(&face(&[])).unwrap(), c4);
        assert_eq!(c4.link(&face(&[0, 1])).unwrap(), Complex::empty_face());
        assert!(matches!(c4.link(&face(&[0, 2])), Err(Error::NotAFace(_))));
    }

    #[test]
    fn restriction_cases() {
        let c4 = c(&[&[0, 1], &[1, 2], &[2, 3], &[3, 0]]);
        assert_eq!(c4.restriction(&[VertexId(0), VertexId(1)]), c(&[&[0, 1]]));
        assert_eq!(c4.restriction(&[]), Complex::empty_face());
        assert_eq!(c4.restriction(&[VertexId(0), VertexId(2)]), c(&[&[0], &[2]]));
    }

    #[test]
    fn join_and_suspension() {
        let c4 = c(&[&[0, 1], &[1, 2], &[2, 3], &[3, 0]]);
        let (j, relabel) = c4.join_with_relabeling(&c4);
        assert_eq!(j.facets().len(), 16);
        assert_eq!(j.num_vertices(), 8);
        let relabel = relabel.unwrap();
        assert_eq!(relabel[&VertexId(0)], VertexId(4));
        assert_eq!(c4.join(&Complex::empty_face()), c4);
        assert_eq!(c4.join(&Complex::void()), Complex::void());

        let oct = c4.suspension();
        assert_eq!(oct.facets().len(), 8);
        assert_eq!(oct.num_vertices(), 6);
        let s0 = Complex::empty_face().suspension();
        assert_eq!(s0, c(&[&[0], &[1]]));
    }

    #[test]
    fn face_set_ops() {
        let a = face(&[1, 3, 5]);
        let b = face(&[3, 4]);
        assert_eq!(a.union(&b), face(&[1, 3, 4, 5]));
        assert_eq!(a.intersection(&b), face(&[3]));
        assert_eq!(a.difference(&b), face(&[1, 5]));
        assert!(face(&[1, 5]).is_subset(&a));
        assert!(!face(&[1, 4]).is_subset(&a));
        assert!(Face::empty().is_subset(&a));
        assert_eq!(a.subsets().count(), 8);
        assert_eq!(a.subsets_of_size(2).count(), 3);
        assert_eq!(a.to_string(), "{1,3,5}");
    }

    #[test]
    fn components_of_two_squares() {
        let c4 = c(&[&[0, 1], &[1, 2], &[2, 3], &[3, 0]]);
        let two = c4.disjoint_union(&c4);
        assert_eq!(two.components().len(), 2);
        assert!(!two.is_connected());
        assert!(c4.is_connected());
    }
}
