//! Finite abstract simplicial complexes over opaque string labels.
//!
//! Vertices are stored as indices into the sorted label list, faces as strictly
//! increasing index vectors. Faces are kept in lexicographic order, so face ids
//! are a deterministic function of the complex.

use std::borrow::Borrow;
use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};

/// A face: strictly increasing vertex indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simplex(Vec<usize>);

impl Simplex {
    pub fn new(mut vertices: Vec<usize>) -> Self {
        vertices.sort_unstable();
        vertices.dedup();
        Simplex(vertices)
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn contains_vertex(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn is_subset_of(&self, other: &Simplex) -> bool {
        self.0.iter().all(|v| other.contains_vertex(*v))
    }
}

impl Borrow<[usize]> for Simplex {
    fn borrow(&self) -> &[usize] {
        &self.0
    }
}

#[derive(Clone, Debug)]
struct Incidence {
    facets: Vec<Vec<usize>>,
    cofacets: Vec<Vec<usize>>,
    vertex_star: Vec<Vec<usize>>,
}

/// A finite abstract simplicial complex.
///
/// Invariants: downward closed, every label is a 0-face, faces canonical and
/// unique. Values are immutable after construction.
#[derive(Clone)]
pub struct Complex {
    labels: Vec<String>,
    faces: Vec<Simplex>,
    index: HashMap<Simplex, usize>,
    by_dim: Vec<Vec<usize>>,
    vertex_face: Vec<usize>,
    incidence: OnceLock<Incidence>,
}

impl PartialEq for Complex {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.faces == other.faces
    }
}

impl Eq for Complex {}

impl fmt::Debug for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Complex")
            .field("f_vector", &self.f_vector())
            .field("labels", &self.labels)
            .finish()
    }
}

pub(crate) fn validate_label(label: &str) -> Result<()> {
    if label.is_empty() || label.chars().any(|c| c.is_whitespace() || c == '#') {
        return Err(Error::BadLabel(label.to_string()));
    }
    Ok(())
}

impl Complex {
    pub fn empty() -> Complex {
        Complex::from_parts(Vec::new(), Vec::<Vec<usize>>::new())
    }

    /// Downward closure of a list of facets given by label.
    pub fn from_facets<S: AsRef<str>>(facets: &[Vec<S>]) -> Result<Complex> {
        if facets.is_empty() {
            return Err(Error::EmptyFacetList);
        }
        let mut ids: HashMap<String, usize> = HashMap::new();
        let mut labels = Vec::new();
        let mut raw = Vec::with_capacity(facets.len());
        for (i, facet) in facets.iter().enumerate() {
            if facet.is_empty() {
                return Err(Error::EmptyFacet(i));
            }
            let mut face = Vec::with_capacity(facet.len());
            for label in facet {
                let label = label.as_ref();
                validate_label(label)?;
                let next = labels.len();
                let id = *ids.entry(label.to_string()).or_insert_with(|| {
                    labels.push(label.to_string());
                    next
                });
                if face.contains(&id) {
                    return Err(Error::DuplicateVertex(label.to_string()));
                }
                face.push(id);
            }
            raw.push(face);
        }
        Ok(Complex::from_parts(labels, raw))
    }

    /// Builds the closure of `facets`, where facets index into `labels`.
    /// Labels must be unique; every label becomes a vertex.
    pub(crate) fn from_parts<I>(labels: Vec<String>, facets: I) -> Complex
    where
        I: IntoIterator<Item = Vec<usize>>,
    {
        let n = labels.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|a, b| labels[*a].cmp(&labels[*b]));
        let mut rank = vec![0; n];
        for (r, old) in order.iter().enumerate() {
            rank[*old] = r;
        }
        let mut sorted_labels = Vec::with_capacity(n);
        for old in &order {
            sorted_labels.push(labels[*old].clone());
        }
        debug_assert!(
            sorted_labels.windows(2).all(|w| w[0] < w[1]),
            "duplicate labels"
        );

        let mut seen: HashSet<Vec<usize>> = HashSet::new();
        let mut stack: Vec<Vec<usize>> = Vec::new();
        for v in 0..n {
            stack.push(vec![v]);
        }
        for facet in facets {
            let mut f: Vec<usize> = facet.into_iter().map(|v| rank[v]).collect();
            f.sort_unstable();
            f.dedup();
            if !f.is_empty() {
                stack.push(f);
            }
        }
        while let Some(face) = stack.pop() {
            if seen.contains(&face) {
                continue;
            }
            if face.len() > 1 {
                for skip in 0..face.len() {
                    let mut sub = face.clone();
                    sub.remove(skip);
                    if !seen.contains(&sub) {
                        stack.push(sub);
                    }
                }
            }
            seen.insert(face);
        }
        let mut faces: Vec<Simplex> = seen.into_iter().map(Simplex).collect();
        faces.sort_unstable();
        Complex::from_sorted_faces(sorted_labels, faces)
    }

    fn from_sorted_faces(labels: Vec<String>, faces: Vec<Simplex>) -> Complex {
        let mut index = HashMap::with_capacity(faces.len());
        let mut by_dim: Vec<Vec<usize>> = Vec::new();
        let mut vertex_face = vec![usize::MAX; labels.len()];
        for (i, f) in faces.iter().enumerate() {
            index.insert(f.clone(), i);
            let d = f.dim();
            if by_dim.len() <= d {
                by_dim.resize(d + 1, Vec::new());
            }
            by_dim[d].push(i);
            if d == 0 {
                vertex_face[f.0[0]] = i;
            }
        }
        Complex {
            labels,
            faces,
            index,
            by_dim,
            vertex_face,
            incidence: OnceLock::new(),
        }
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn vertex_by_label(&self, label: &str) -> Option<usize> {
        self.labels.binary_search_by(|l| l.as_str().cmp(label)).ok()
    }

    pub fn num_vertices(&self) -> usize {
        self.labels.len()
    }

    pub fn num_faces(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn faces(&self) -> &[Simplex] {
        &self.faces
    }

    pub fn face(&self, id: usize) -> &Simplex {
        &self.faces[id]
    }

    pub fn face_id(&self, vertices: &[usize]) -> Option<usize> {
        self.index.get(vertices).copied()
    }

    /// Face id of a face given by labels, in any order.
    pub fn face_id_by_labels<S: AsRef<str>>(&self, labels: &[S]) -> Result<usize> {
        let mut vs = Vec::with_capacity(labels.len());
        for l in labels {
            let l = l.as_ref();
            vs.push(
                self.vertex_by_label(l)
                    .ok_or_else(|| Error::UnknownVertex(l.to_string()))?,
            );
        }
        vs.sort_unstable();
        self.face_id(&vs)
            .ok_or_else(|| Error::NotSubcomplex(format_labels(labels)))
    }

    pub fn vertex_face(&self, v: usize) -> usize {
        self.vertex_face[v]
    }

    /// `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.by_dim.len().checked_sub(1)
    }

    pub fn faces_of_dim(&self, k: usize) -> &[usize] {
        self.by_dim.get(k).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.by_dim.iter().map(Vec::len).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.by_dim
            .iter()
            .enumerate()
            .map(|(k, fs)| {
                if k % 2 == 0 {
                    fs.len() as i64
                } else {
                    -(fs.len() as i64)
                }
            })
            .sum()
    }

    fn incidence(&self) -> &Incidence {
        self.incidence.get_or_init(|| {
            let mut facets = vec![Vec::new(); self.faces.len()];
            let mut cofacets = vec![Vec::new(); self.faces.len()];
            let mut vertex_star = vec![Vec::new(); self.labels.len()];
            for (id, f) in self.faces.iter().enumerate() {
                for v in &f.0 {
                    vertex_star[*v].push(id);
                }
                if f.len() > 1 {
                    let mut sub = Vec::with_capacity(f.len() - 1);
                    for skip in 0..f.len() {
                        sub.clear();
                        sub.extend(
                            f.0.iter()
                                .enumerate()
                                .filter(|(i, _)| *i != skip)
                                .map(|(_, v)| *v),
                        );
                        let sid = self.index[sub.as_slice()];
                        facets[id].push(sid);
                        cofacets[sid].push(id);
                    }
                }
            }
            Incidence {
                facets,
                cofacets,
                vertex_star,
            }
        })
    }

    /// Codimension-one faces of a face.
    pub fn facets_of(&self, id: usize) -> &[usize] {
        &self.incidence().facets[id]
    }

    /// Codimension-one cofaces of a face.
    pub fn cofacets_of(&self, id: usize) -> &[usize] {
        &self.incidence().cofacets[id]
    }

    /// All faces containing vertex `v`, in id order.
    pub fn vertex_star(&self, v: usize) -> &[usize] {
        &self.incidence().vertex_star[v]
    }

    /// All faces containing face `id` (including itself).
    pub fn cofaces_of(&self, id: usize) -> Vec<usize> {
        let f = &self.faces[id];
        self.vertex_star(f.0[0])
            .iter()
            .copied()
            .filter(|c| f.is_subset_of(&self.faces[*c]))
            .collect()
    }

    pub fn maximal_faces(&self) -> Vec<usize> {
        (0..self.faces.len())
            .filter(|id| self.cofacets_of(*id).is_empty())
            .collect()
    }

    pub fn is_pure(&self) -> bool {
        match self.dim() {
            None => true,
            Some(d) => self
                .maximal_faces()
                .iter()
                .all(|id| self.faces[*id].dim() == d),
        }
    }

    pub fn face_labels(&self, id: usize) -> Vec<&str> {
        self.faces[id]
            .0
            .iter()
            .map(|v| self.labels[*v].as_str())
            .collect()
    }

    /// Tuple label of a face, e.g. `(a,b)`. Used to name derived vertices.
    pub fn face_label(&self, id: usize) -> String {
        format!("({})", self.face_labels(id).join(","))
    }

    /// Downward closure of a set of face ids, returned sorted.
    pub fn closure_of<I: IntoIterator<Item = usize>>(&self, ids: I) -> Vec<usize> {
        let mut mask = vec![false; self.faces.len()];
        let mut stack: Vec<usize> = ids.into_iter().collect();
        while let Some(id) = stack.pop() {
            if mask[id] {
                continue;
            }
            mask[id] = true;
            stack.extend(self.facets_of(id).iter().copied().filter(|f| !mask[*f]));
        }
        mask_to_ids(&mask)
    }

    pub fn is_subcomplex_ids(&self, ids: &[usize]) -> bool {
        let mask = ids_to_mask(self.faces.len(), ids);
        ids.iter()
            .all(|id| self.facets_of(*id).iter().all(|f| mask[*f]))
    }

    /// Vertices used by a set of faces.
    pub fn vertices_of(&self, ids: &[usize]) -> Vec<usize> {
        let mut vs: Vec<usize> = ids
            .iter()
            .flat_map(|id| self.faces[*id].0.iter().copied())
            .collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    /// Faces whose vertices all lie in `vertex_mask`.
    pub fn full_subcomplex(&self, vertex_mask: &[bool]) -> Vec<usize> {
        (0..self.faces.len())
            .filter(|id| self.faces[*id].0.iter().all(|v| vertex_mask[*v]))
            .collect()
    }

    /// Whether the subcomplex `ids` is full: it contains every face spanned by its vertices.
    pub fn is_full(&self, ids: &[usize]) -> bool {
        let mut vmask = vec![false; self.labels.len()];
        for v in self.vertices_of(ids) {
            vmask[v] = true;
        }
        self.full_subcomplex(&vmask).len() == ids.len()
    }

    /// Materializes a subcomplex given by face ids (which must be downward closed).
    pub fn subcomplex(&self, ids: &[usize]) -> Complex {
        let vs = self.vertices_of(ids);
        let mut local = vec![usize::MAX; self.labels.len()];
        let mut labels = Vec::with_capacity(vs.len());
        for (i, v) in vs.iter().enumerate() {
            local[*v] = i;
            labels.push(self.labels[*v].clone());
        }
        // Labels are already sorted, and relabelling preserves lexicographic order.
        let mut faces: Vec<Simplex> = ids
            .iter()
            .map(|id| Simplex(self.faces[*id].0.iter().map(|v| local[*v]).collect()))
            .collect();
        faces.sort_unstable();
        faces.dedup();
        Complex::from_sorted_faces(labels, faces)
    }

    /// Face ids in `self` of the faces of `sub`, matched by label.
    pub fn embed(&self, sub: &Complex) -> Result<Vec<usize>> {
        let mut map = Vec::with_capacity(sub.num_vertices());
        for l in sub.labels() {
            map.push(
                self.vertex_by_label(l)
                    .ok_or_else(|| Error::NotSubcomplex(format!("({l})")))?,
            );
        }
        let mut out = Vec::with_capacity(sub.num_faces());
        for (id, f) in sub.faces.iter().enumerate() {
            let mut vs: Vec<usize> = f.0.iter().map(|v| map[*v]).collect();
            vs.sort_unstable();
            out.push(
                self.face_id(&vs)
                    .ok_or_else(|| Error::NotSubcomplex(sub.face_label(id)))?,
            );
        }
        out.sort_unstable();
        Ok(out)
    }

    /// Connected components of the subcomplex `ids`, each as sorted face ids.
    pub fn connected_components(&self, ids: &[usize]) -> Vec<Vec<usize>> {
        let mut uf = UnionFind::new(self.labels.len());
        for id in ids {
            let f = &self.faces[*id].0;
            for w in f.windows(2) {
                uf.union(w[0], w[1]);
            }
        }
        let mut groups: HashMap<usize, Vec<usize>> = HashMap::new();
        for id in ids {
            groups
                .entry(uf.find(self.faces[*id].0[0]))
                .or_default()
                .push(*id);
        }
        let mut out: Vec<Vec<usize>> = groups.into_values().collect();
        for g in &mut out {
            g.sort_unstable();
        }
        out.sort();
        out
    }

    pub fn is_connected(&self) -> bool {
        let all: Vec<usize> = (0..self.faces.len()).collect();
        self.connected_components(&all).len() <= 1
    }

    /// Star in the sense of subcomplexes: the smallest subcomplex containing
    /// every face that meets `sub`.
    pub fn star_ids(&self, sub: &[usize]) -> Vec<usize> {
        let touching = self
            .vertices_of(sub)
            .into_iter()
            .flat_map(|v| self.vertex_star(v).iter().copied());
        self.closure_of(touching)
    }

    /// Faces of the star of `sub` disjoint from `sub`.
    pub fn link_ids(&self, sub: &[usize]) -> Vec<usize> {
        let mut vmask = vec![false; self.labels.len()];
        for v in self.vertices_of(sub) {
            vmask[v] = true;
        }
        self.star_ids(sub)
            .into_iter()
            .filter(|id| self.faces[*id].0.iter().all(|v| !vmask[*v]))
            .collect()
    }

    /// Classical link of a single face: faces disjoint from it whose union with it is a face.
    pub fn simplex_link_ids(&self, id: usize) -> Vec<usize> {
        let f = &self.faces[id];
        let mut out: Vec<usize> = self
            .cofaces_of(id)
            .into_iter()
            .filter(|c| *c != id)
            .map(|c| {
                let rest: Vec<usize> = self.faces[c]
                    .0
                    .iter()
                    .copied()
                    .filter(|v| !f.contains_vertex(*v))
                    .collect();
                self.index[rest.as_slice()]
            })
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Classical closed star of a single face.
    pub fn simplex_star_ids(&self, id: usize) -> Vec<usize> {
        self.closure_of(self.cofaces_of(id))
    }

    /// Faces of `ids` that are cofaces of a face outside `ids` restricted to
    /// closure: the frontier `ids ∩ closure(complement)`.
    pub fn frontier_ids(&self, ids: &[usize]) -> Vec<usize> {
        let mask = ids_to_mask(self.faces.len(), ids);
        let outside = (0..self.faces.len()).filter(|id| !mask[*id]);
        let cl = self.closure_of(outside);
        cl.into_iter().filter(|id| mask[*id]).collect()
    }
}

pub(crate) fn format_labels<S: AsRef<str>>(labels: &[S]) -> String {
    let parts: Vec<&str> = labels.iter().map(|s| s.as_ref()).collect();
    format!("({})", parts.join(","))
}

pub(crate) fn ids_to_mask(n: usize, ids: &[usize]) -> Vec<bool> {
    let mut mask = vec![false; n];
    for id in ids {
        mask[*id] = true;
    }
    mask
}

pub(crate) fn mask_to_ids(mask: &[bool]) -> Vec<usize> {
    mask.iter()
        .enumerate()
        .filter(|(_, m)| **m)
        .map(|(i, _)| i)
        .collect()
}

#[derive(Debug, Clone)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(facets: &[&[&str]]) -> Complex {
        let v: Vec<Vec<&str>> = facets.iter().map(|f| f.to_vec()).collect();
        Complex::from_facets(&v).unwrap()
    }

    #[test]
    fn triangle_closure() {
        let t = c(&[&["a", "b", "c"]]);
        assert_eq!(t.num_faces(), 7);
        assert_eq!(t.f_vector(), vec![3, 3, 1]);
    }

    #[test]
    fn three_cycle() {
        let t = c(&[&["a", "b"], &["b", "c"], &["c", "a"]]);
        assert_eq!(t.num_faces(), 6);
        assert_eq!(t.euler_characteristic(), 0);
    }

    #[test]
    fn tetrahedron_boundary() {
        let t = c(&[
            &["a", "b", "c"],
            &["a", "b", "d"],
            &["a", "c", "d"],
            &["b", "c", "d"],
        ]);
        assert_eq!(t.num_faces(), 14);
        assert_eq!(t.maximal_faces().len(), 4);
    }

    #[test]
    fn errors() {
        let empty: Vec<Vec<&str>> = vec![];
        assert_eq!(
            Complex::from_facets(&empty).unwrap_err(),
            Error::EmptyFacetList
        );
        assert_eq!(
            Complex::from_facets(&[vec!["a", "b", "a"]]).unwrap_err(),
            Error::DuplicateVertex("a".into())
        );
        assert!(matches!(
            Complex::from_facets(&[vec!["a b"]]),
            Err(Error::BadLabel(_))
        ));
    }

    #[test]
    fn faces_are_lexicographic() {
        let t = c(&[&["b", "c"], &["a", "b"]]);
        let shown: Vec<String> = (0..t.num_faces()).map(|i| t.face_label(i)).collect();
        assert_eq!(shown, ["(a)", "(a,b)", "(b)", "(b,c)", "(c)"]);
    }

    #[test]
    fn simplex_link_of_edge_in_boundary_of_4_simplex() {
        let labels = ["a", "b", "c", "d", "e"];
        let facets: Vec<Vec<&str>> = (0..5)
            .map(|skip| {
                labels
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| *i != skip)
                    .map(|(_, l)| *l)
                    .collect()
            })
            .collect();
        let s3 = Complex::from_facets(&facets).unwrap();
        let ab = s3.face_id_by_labels(&["a", "b"]).unwrap();
        let lk = s3.subcomplex(&s3.simplex_link_ids(ab));
        // Oracle: enumerate subsets of {c,d,e} whose union with {a,b} is a proper subset.
        assert_eq!(lk.f_vector(), vec![3, 3]);
        assert_eq!(lk.labels(), ["c", "d", "e"]);
    }

    #[test]
    fn frontier_of_vertex_star() {
        let t = c(&[&["a", "b"], &["b", "c"], &["c", "a"]]);
        let a = t.vertex_face(t.vertex_by_label("a").unwrap());
        let st = t.simplex_star_ids(a);
        let fr = t.subcomplex(&t.frontier_ids(&st));
        assert_eq!(fr.labels(), ["b", "c"]);
        assert_eq!(fr.f_vector(), vec![2]);
    }
}
