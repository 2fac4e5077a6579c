//! Drilling a spine along a subcomplex: P = (Q ∖ R) ∪ ∂R with R the
//! regular neighborhood of the drill site in T″.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complex::{ids_to_mask, Complex};
use crate::error::{Error, Result};
use crate::manifold::is_closed_pseudomanifold;
use crate::spine::{SpineComplex, Tower};
use crate::strata::link_type;

/// Where to drill: a subcomplex of T or a full subcomplex of T′, given by face ids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DrillSite {
    Base(Vec<usize>),
    Derived(Vec<usize>),
}

#[derive(Clone, Debug)]
pub struct DrillResult {
    pub tower: Arc<Tower>,
    /// Drilled polyhedron as face ids of T″.
    pub cells: Vec<usize>,
    /// The regular neighborhood R of the site in T″.
    pub neighborhood: Vec<usize>,
    /// ∂R = R ∩ closure(T″ ∖ R).
    pub frontier: Vec<usize>,
    /// Spine vertices before drilling.
    pub old_vertex_count: usize,
    /// Type-0 points after drilling; `None` when types are unknown (d ≥ 4).
    pub vertex_count: Option<usize>,
    /// Vertices of T″ in the result whose link is not of a simple type.
    pub unclassified_vertices: Vec<usize>,
}

impl DrillResult {
    pub fn complex(&self) -> Complex {
        self.tower.second().complex().subcomplex(&self.cells)
    }

    /// Cells of the result whose link is not of a simple type; `None` for d ≥ 4.
    pub fn non_simple_cells(&self) -> Option<Vec<usize>> {
        let d = self.tower.dim();
        if d > 3 {
            return None;
        }
        let k2 = self.tower.second().complex();
        let mask = ids_to_mask(k2.num_faces(), &self.cells);
        Some(
            self.cells
                .iter()
                .copied()
                .filter(|c| link_type(k2, &mask, *c, d).is_none())
                .collect(),
        )
    }
}

// The site as face ids of T′.
fn site_in_first(s: &SpineComplex, site: &DrillSite) -> Result<Vec<usize>> {
    match site {
        DrillSite::Base(ids) => {
            let t = s.ambient();
            if ids.iter().any(|f| *f >= t.num_faces()) || !t.is_subcomplex_ids(ids) {
                return Err(Error::DrillSite(
                    "site is not a subcomplex of the triangulation".into(),
                ));
            }
            Ok(s.derived().image_of(ids))
        }
        DrillSite::Derived(ids) => {
            let k = s.derived().complex();
            if ids.iter().any(|f| *f >= k.num_faces()) || !k.is_subcomplex_ids(ids) {
                return Err(Error::DrillSite(
                    "site is not a subcomplex of the first derived subdivision".into(),
                ));
            }
            if !k.is_full(ids) {
                return Err(Error::DrillSite(
                    "site is not a full subcomplex of the first derived subdivision".into(),
                ));
            }
            let mut ids = ids.clone();
            ids.sort_unstable();
            ids.dedup();
            Ok(ids)
        }
    }
}

pub fn drill(s: &SpineComplex, site: &DrillSite) -> Result<DrillResult> {
    let first_ids = site_in_first(s, site)?;
    let tower = s.tower().clone();
    let d2 = tower.second();
    let k2 = d2.complex();
    let n2 = k2.num_faces();
    let site2 = d2.image_of(&first_ids);
    let neighborhood = if site2.is_empty() {
        Vec::new()
    } else {
        k2.star_ids(&site2)
    };
    let frontier = k2.frontier_ids(&neighborhood);
    let in_r = ids_to_mask(n2, &neighborhood);
    let q2 = d2.image_of(s.cells());
    let outside: Vec<usize> = q2.iter().copied().filter(|f| !in_r[*f]).collect();
    let mut mask = ids_to_mask(n2, &k2.closure_of(outside));
    for f in &frontier {
        mask[*f] = true;
    }
    let cells: Vec<usize> = (0..n2).filter(|f| mask[*f]).collect();
    let dim = tower.dim();
    let (vertex_count, unclassified_vertices) = if dim <= 3 {
        let mut count = 0;
        let mut bad = Vec::new();
        for f in cells.iter().copied().filter(|f| k2.face(*f).dim() == 0) {
            match link_type(k2, &mask, f, dim) {
                Some(0) => count += 1,
                Some(_) => {}
                None => bad.push(f),
            }
        }
        (Some(count), bad)
    } else {
        (None, Vec::new())
    };
    Ok(DrillResult {
        tower,
        cells,
        neighborhood,
        frontier,
        old_vertex_count: s.vertex_count(),
        vertex_count,
        unclassified_vertices,
    })
}

/// Points of T′ off the closed 1-skeleton of the spine: barycenters of faces
/// meeting at most d − 1 classes, as T′ vertex face ids.
pub fn off_skeleton_points(s: &SpineComplex) -> Vec<usize> {
    let d = s.dim();
    let first = s.derived();
    let k = first.complex();
    (0..k.num_vertices())
        .filter(|v| s.meets(first.face_of_vertex(*v)) < d)
        .map(|v| k.vertex_face(v))
        .collect()
}

/// `count` off-skeleton points drawn with replacement from a seeded stream.
pub fn sample_off_skeleton_points(s: &SpineComplex, count: usize, seed: u64) -> Vec<usize> {
    let pts = off_skeleton_points(s);
    if pts.is_empty() {
        return Vec::new();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| pts[rng.gen_range(0..pts.len())])
        .collect()
}

/// A spine subcomplex given by T′ face ids lifted from a standalone spine complex.
pub fn spine_ids_in_first(
    s: &SpineComplex,
    spine_complex: &Complex,
    ids: &[usize],
) -> Result<Vec<usize>> {
    s.derived().complex().embed(&spine_complex.subcomplex(ids))
}

#[derive(Clone, Debug)]
pub struct HypersurfaceCut {
    pub result: DrillResult,
    pub old_vertex_count: usize,
    pub new_vertex_count: usize,
}

/// Drills along a closed hypersurface lying in the spine, given by T′ face ids.
pub fn cut_along_hypersurface(s: &SpineComplex, surface: &[usize]) -> Result<HypersurfaceCut> {
    let d = s.dim();
    if d < 3 {
        return Err(Error::Unsupported(format!(
            "hypersurface cutting needs ambient dimension at least 3, got {d}"
        )));
    }
    if d > 3 {
        return Err(Error::Unsupported(format!(
            "vertex types after cutting are unknown in dimension {d}"
        )));
    }
    let k = s.derived().complex();
    if !surface.is_empty() {
        if surface
            .iter()
            .any(|f| *f >= k.num_faces() || !s.is_cell(*f))
        {
            return Err(Error::DrillSite("surface does not lie in the spine".into()));
        }
        let sub = k.subcomplex(surface);
        if sub.dim() != Some(d - 1) || !is_closed_pseudomanifold(&sub) {
            return Err(Error::NotPseudomanifold(
                "surface is not a closed pseudomanifold of codimension one".into(),
            ));
        }
    }
    let result = drill(s, &DrillSite::Derived(surface.to_vec()))?;
    let new_vertex_count = result.vertex_count.expect("classified in dimension 3");
    Ok(HypersurfaceCut {
        old_vertex_count: s.vertex_count(),
        new_vertex_count,
        result,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::{hypersurface_from_class, nonzero_classes, top_cycle_basis};
    use crate::models;
    use crate::spine::dual_spine;
    use crate::VertexPartition;

    fn spine(t: &Complex, classes: &[Vec<&str>]) -> SpineComplex {
        dual_spine(t, &VertexPartition::from_labels(t, classes).unwrap()).unwrap()
    }

    #[test]
    fn point_off_the_equator() {
        let t = models::boundary_sphere(2);
        let s = spine(&t, &[vec!["0", "1"], vec!["2", "3"]]);
        // Barycenter of the edge {0,1}, inside one region.
        let e = s
            .derived()
            .complex()
            .vertex_face(s.derived().vertex_of_face(t.face_id(&[0, 1]).unwrap()));
        let r = drill(&s, &DrillSite::Derived(vec![e])).unwrap();
        assert_eq!(r.vertex_count, Some(0));
        assert!(r.unclassified_vertices.is_empty());
        let c = r.complex();
        assert_eq!(
            c.connected_components(&(0..c.num_faces()).collect::<Vec<_>>())
                .len(),
            2
        );
        assert!(crate::manifold::is_closed_1_manifold(&c));
    }

    #[test]
    fn point_on_the_equator_adds_vertices() {
        let t = models::boundary_sphere(2);
        let s = spine(&t, &[vec!["0", "1"], vec!["2", "3"]]);
        let e = s
            .derived()
            .complex()
            .vertex_face(s.derived().vertex_of_face(t.face_id(&[0, 2]).unwrap()));
        let r = drill(&s, &DrillSite::Derived(vec![e])).unwrap();
        assert_eq!(r.vertex_count, Some(2));
        assert_eq!(r.old_vertex_count, 0);
    }

    #[test]
    fn off_skeleton_point_in_pentachoron() {
        let t = models::boundary_sphere(3);
        let s = dual_spine(&t, &VertexPartition::discrete(5)).unwrap();
        let pts = off_skeleton_points(&s);
        // Barycenters of the vertices and edges of T.
        assert_eq!(pts.len(), 15);
        let edge = pts.iter().copied().find(|p| s.is_cell(*p)).unwrap();
        let r = drill(&s, &DrillSite::Derived(vec![edge])).unwrap();
        assert_eq!(r.vertex_count, Some(5));
        assert!(r.unclassified_vertices.is_empty());
        assert_eq!(r.non_simple_cells(), Some(vec![]));
    }

    #[test]
    fn outside_neighborhood_unchanged() {
        let t = models::named("T2_7").unwrap();
        let s = dual_spine(&t, &VertexPartition::discrete(7)).unwrap();
        let r = drill(&s, &DrillSite::Base(vec![t.vertex_face(0)])).unwrap();
        let d2 = s.tower().second();
        let in_r = ids_to_mask(d2.complex().num_faces(), &r.neighborhood);
        let before: Vec<usize> = d2
            .image_of(s.cells())
            .into_iter()
            .filter(|f| !in_r[*f])
            .collect();
        let after: Vec<usize> = r.cells.iter().copied().filter(|f| !in_r[*f]).collect();
        assert_eq!(before, after);
    }

    #[test]
    fn bad_sites() {
        let t = models::boundary_sphere(2);
        let s = spine(&t, &[vec!["0", "1"], vec!["2", "3"]]);
        let edge = t.face_id(&[0, 1]).unwrap();
        assert!(matches!(
            drill(&s, &DrillSite::Base(vec![edge])),
            Err(Error::DrillSite(_))
        ));
        // Two T′ vertices whose edge is in T′ but not included.
        let k = s.derived().complex();
        let a = k.vertex_face(s.derived().vertex_of_face(t.vertex_face(0)));
        let b = k.vertex_face(s.derived().vertex_of_face(edge));
        assert!(matches!(
            drill(&s, &DrillSite::Derived(vec![a, b])),
            Err(Error::DrillSite(_))
        ));
    }

    #[test]
    fn hypersurface_cuts() {
        let t = models::boundary_sphere(2);
        let s = spine(&t, &[vec!["0", "1"], vec!["2", "3"]]);
        assert!(matches!(
            cut_along_hypersurface(&s, &[]),
            Err(Error::Unsupported(_))
        ));

        let t = models::boundary_sphere(3);
        let s = dual_spine(&t, &VertexPartition::discrete(5)).unwrap();
        let empty = cut_along_hypersurface(&s, &[]).unwrap();
        assert_eq!((empty.old_vertex_count, empty.new_vertex_count), (5, 5));
        let sc = s.complex();
        let classes = nonzero_classes(&top_cycle_basis(&sc)).unwrap();
        assert_eq!(classes.len(), 15);
        for class in &classes {
            let ids = hypersurface_from_class(&sc, class).unwrap();
            let surface = spine_ids_in_first(&s, &sc, &ids).unwrap();
            let cut = cut_along_hypersurface(&s, &surface).unwrap();
            assert!(
                cut.new_vertex_count <= cut.old_vertex_count,
                "{} > {}",
                cut.new_vertex_count,
                cut.old_vertex_count
            );
            assert!(cut.result.unclassified_vertices.is_empty());
        }
    }
}
