//! Barycentric subdivision and simplicial maps.

use crate::complex::{Complex, Simplex};
use crate::error::{Error, Result};

/// The derived complex `K'` of a base complex `K`: one vertex per face of `K`,
/// one face per chain `σ₀ ⊊ … ⊊ σᵢ`. Derived vertices are labelled by the
/// tuple of base labels of the corresponding face.
#[derive(Clone, Debug)]
pub struct DerivedComplex {
    base: Complex,
    complex: Complex,
    vertex_of_face: Vec<usize>,
    face_of_vertex: Vec<usize>,
}

pub fn derived(c: &Complex) -> DerivedComplex {
    let labels: Vec<String> = (0..c.num_faces()).map(|id| c.face_label(id)).collect();
    let mut flags = Vec::new();
    for top in c.maximal_faces() {
        let mut chain = Vec::with_capacity(c.face(top).len());
        collect_flags(c, top, &mut chain, &mut flags);
    }
    let complex = Complex::from_parts(labels, flags);
    let vertex_of_face: Vec<usize> = (0..c.num_faces())
        .map(|id| {
            complex
                .vertex_by_label(&c.face_label(id))
                .expect("derived label")
        })
        .collect();
    let mut face_of_vertex = vec![0; vertex_of_face.len()];
    for (f, v) in vertex_of_face.iter().enumerate() {
        face_of_vertex[*v] = f;
    }
    DerivedComplex {
        base: c.clone(),
        complex,
        vertex_of_face,
        face_of_vertex,
    }
}

// Maximal chains ending at `top`, as lists of base face ids.
fn collect_flags(c: &Complex, top: usize, chain: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    chain.push(top);
    let facets = c.facets_of(top);
    if facets.is_empty() {
        out.push(chain.clone());
    } else {
        for f in facets {
            collect_flags(c, *f, chain, out);
        }
    }
    chain.pop();
}

impl DerivedComplex {
    pub fn base(&self) -> &Complex {
        &self.base
    }

    pub fn complex(&self) -> &Complex {
        &self.complex
    }

    /// Derived vertex (the barycenter) of a base face.
    pub fn vertex_of_face(&self, base_face: usize) -> usize {
        self.vertex_of_face[base_face]
    }

    pub fn face_of_vertex(&self, v: usize) -> usize {
        self.face_of_vertex[v]
    }

    /// The chain of base faces a derived face stands for, by increasing dimension.
    pub fn chain(&self, derived_face: usize) -> Vec<usize> {
        let mut ch: Vec<usize> = self
            .complex
            .face(derived_face)
            .vertices()
            .iter()
            .map(|v| self.face_of_vertex[*v])
            .collect();
        ch.sort_by_key(|f| self.base.face(*f).len());
        ch
    }

    /// Smallest element of the chain.
    pub fn bottom(&self, derived_face: usize) -> usize {
        self.complex
            .face(derived_face)
            .vertices()
            .iter()
            .map(|v| self.face_of_vertex[*v])
            .min_by_key(|f| self.base.face(*f).len())
            .expect("nonempty face")
    }

    /// Largest element of the chain: the base face whose open cell contains
    /// the open derived face.
    pub fn carrier(&self, derived_face: usize) -> usize {
        self.complex
            .face(derived_face)
            .vertices()
            .iter()
            .map(|v| self.face_of_vertex[*v])
            .max_by_key(|f| self.base.face(*f).len())
            .expect("nonempty face")
    }

    /// The subdivided image of a base subcomplex: derived faces all of whose
    /// vertices are barycenters of faces in `base_ids`.
    pub fn image_of(&self, base_ids: &[usize]) -> Vec<usize> {
        let mut vmask = vec![false; self.complex.num_vertices()];
        for f in base_ids {
            vmask[self.vertex_of_face[*f]] = true;
        }
        self.complex.full_subcomplex(&vmask)
    }
}

/// A vertex assignment carrying faces to faces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialMap {
    source: Complex,
    target: Complex,
    assignment: Vec<usize>,
}

impl SimplicialMap {
    pub fn new(source: Complex, target: Complex, assignment: Vec<usize>) -> Result<SimplicialMap> {
        if assignment.len() != source.num_vertices() {
            return Err(Error::OutOfRange(format!(
                "assignment has {} entries for {} vertices",
                assignment.len(),
                source.num_vertices()
            )));
        }
        if let Some(bad) = assignment.iter().find(|v| **v >= target.num_vertices()) {
            return Err(Error::OutOfRange(format!(
                "target vertex {bad} out of range"
            )));
        }
        let map = SimplicialMap {
            source,
            target,
            assignment,
        };
        for top in map.source.maximal_faces() {
            let img = map.image_vertices(top);
            if map.target.face_id(&img).is_none() {
                let labels: Vec<&str> = img.iter().map(|v| map.target.label(*v)).collect();
                return Err(Error::NotSimplicial {
                    face: map.source.face_label(top),
                    image: format!("({})", labels.join(",")),
                });
            }
        }
        Ok(map)
    }

    /// Builds a map from `(source label, target label)` pairs covering every source vertex.
    pub fn from_labels<S: AsRef<str>>(
        source: Complex,
        target: Complex,
        pairs: &[(S, S)],
    ) -> Result<SimplicialMap> {
        let mut assignment = vec![usize::MAX; source.num_vertices()];
        for (a, b) in pairs {
            let (a, b) = (a.as_ref(), b.as_ref());
            let va = source
                .vertex_by_label(a)
                .ok_or_else(|| Error::UnknownVertex(a.to_string()))?;
            let vb = target
                .vertex_by_label(b)
                .ok_or_else(|| Error::UnknownVertex(b.to_string()))?;
            assignment[va] = vb;
        }
        if let Some(v) = assignment.iter().position(|x| *x == usize::MAX) {
            return Err(Error::UnknownVertex(source.label(v).to_string()));
        }
        SimplicialMap::new(source, target, assignment)
    }

    pub fn identity(c: &Complex) -> SimplicialMap {
        SimplicialMap {
            source: c.clone(),
            target: c.clone(),
            assignment: (0..c.num_vertices()).collect(),
        }
    }

    pub fn source(&self) -> &Complex {
        &self.source
    }

    pub fn target(&self) -> &Complex {
        &self.target
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn apply(&self, v: usize) -> usize {
        self.assignment[v]
    }

    fn image_vertices(&self, face: usize) -> Vec<usize> {
        let s = Simplex::new(
            self.source
                .face(face)
                .vertices()
                .iter()
                .map(|v| self.assignment[*v])
                .collect(),
        );
        s.vertices().to_vec()
    }

    /// Target face id of the image of a source face.
    pub fn image_face(&self, face: usize) -> usize {
        self.target
            .face_id(&self.image_vertices(face))
            .expect("validated simplicial map")
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &SimplicialMap) -> Result<SimplicialMap> {
        if self.target != other.source {
            return Err(Error::Invariant(
                "composing maps with mismatched complexes".into(),
            ));
        }
        let assignment = self
            .assignment
            .iter()
            .map(|v| other.assignment[*v])
            .collect();
        SimplicialMap::new(self.source.clone(), other.target.clone(), assignment)
    }
}

/// The derived map `f': K' → L'`, sending the barycenter of `σ` to the barycenter of `f(σ)`.
pub fn derived_map(f: &SimplicialMap) -> SimplicialMap {
    let ds = derived(&f.source);
    let dt = derived(&f.target);
    derived_map_between(f, &ds, &dt)
}

pub(crate) fn derived_map_between(
    f: &SimplicialMap,
    ds: &DerivedComplex,
    dt: &DerivedComplex,
) -> SimplicialMap {
    let assignment = (0..ds.complex.num_vertices())
        .map(|v| dt.vertex_of_face(f.image_face(ds.face_of_vertex(v))))
        .collect();
    SimplicialMap::new(ds.complex.clone(), dt.complex.clone(), assignment)
        .expect("derived maps are simplicial")
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn boundary_tetrahedron() -> Complex {
        Complex::from_facets(&[
            vec!["a", "b", "c"],
            vec!["a", "b", "d"],
            vec!["a", "c", "d"],
            vec!["b", "c", "d"],
        ])
        .unwrap()
    }

    // Independent oracle: enumerate every chain of faces by brute force over subsets of faces.
    fn chain_count_by_dim(c: &Complex) -> Vec<usize> {
        let faces: Vec<BTreeSet<&str>> = (0..c.num_faces())
            .map(|i| c.face_labels(i).into_iter().collect())
            .collect();
        let mut counts = vec![0usize; 8];
        fn extend(
            faces: &[BTreeSet<&str>],
            last: Option<usize>,
            len: usize,
            counts: &mut Vec<usize>,
        ) {
            for (i, f) in faces.iter().enumerate() {
                let ok = match last {
                    None => true,
                    Some(l) => faces[l].len() < f.len() && faces[l].is_subset(f),
                };
                if ok {
                    counts[len] += 1;
                    extend(faces, Some(i), len + 1, counts);
                }
            }
        }
        extend(&faces, None, 0, &mut counts);
        while counts.last() == Some(&0) {
            counts.pop();
        }
        counts
    }

    #[test]
    fn derived_triangle() {
        let t = Complex::from_facets(&[vec!["a", "b", "c"]]).unwrap();
        let d = derived(&t);
        assert_eq!(d.complex().num_vertices(), 7);
        assert_eq!(d.complex().faces_of_dim(2).len(), 6);
    }

    #[test]
    fn derived_cycle_is_hexagon() {
        let t = Complex::from_facets(&[vec!["a", "b"], vec!["b", "c"], vec!["c", "a"]]).unwrap();
        let d = derived(&t);
        assert_eq!(d.complex().f_vector(), vec![6, 6]);
    }

    #[test]
    fn derived_boundary_tetrahedron_matches_chain_enumeration() {
        let t = boundary_tetrahedron();
        let d = derived(&t);
        let oracle = chain_count_by_dim(&t);
        assert_eq!(oracle, vec![14, 36, 24]);
        assert_eq!(d.complex().f_vector(), oracle);
    }

    #[test]
    fn chain_and_carrier() {
        let t = Complex::from_facets(&[vec!["a", "b"]]).unwrap();
        let d = derived(&t);
        let dc = d.complex();
        let e = dc.face_id_by_labels(&["(a)", "(a,b)"]).unwrap();
        let ch: Vec<String> = d.chain(e).into_iter().map(|f| t.face_label(f)).collect();
        assert_eq!(ch, ["(a)", "(a,b)"]);
        assert_eq!(t.face_label(d.carrier(e)), "(a,b)");
        assert_eq!(t.face_label(d.bottom(e)), "(a)");
    }

    #[test]
    fn derived_identity_is_identity() {
        let seg = Complex::from_facets(&[vec!["a", "b"]]).unwrap();
        let id = SimplicialMap::identity(&seg);
        let did = derived_map(&id);
        assert_eq!(did.source().f_vector(), vec![3, 2]);
        assert_eq!(did.assignment(), (0..3).collect::<Vec<_>>().as_slice());
    }

    #[test]
    fn collapse_segment_to_point() {
        let seg = Complex::from_facets(&[vec!["a", "b"]]).unwrap();
        let pt = Complex::from_facets(&[vec!["p"]]).unwrap();
        let f = SimplicialMap::from_labels(seg, pt, &[("a", "p"), ("b", "p")]).unwrap();
        let df = derived_map(&f);
        assert_eq!(df.target().num_vertices(), 1);
        assert!(df.assignment().iter().all(|v| *v == 0));
    }

    #[test]
    fn non_simplicial_assignment_rejected() {
        let seg = Complex::from_facets(&[vec!["a", "b"]]).unwrap();
        let two = Complex::from_facets(&[vec!["p"], vec!["q"]]).unwrap();
        let err = SimplicialMap::from_labels(seg, two, &[("a", "p"), ("b", "q")]).unwrap_err();
        assert!(matches!(err, Error::NotSimplicial { .. }));
    }

    #[test]
    fn image_of_subcomplex() {
        let t = Complex::from_facets(&[vec!["a", "b", "c"]]).unwrap();
        let d = derived(&t);
        let ab = t.closure_of([t.face_id_by_labels(&["a", "b"]).unwrap()]);
        let img = d.complex().subcomplex(&d.image_of(&ab));
        assert_eq!(img.f_vector(), vec![3, 2]);
    }
}
