//! Simple spines dual to a triangulation and a vertex partition.
//!
//! For a triangulation T and a partition of its vertices, the dual polyhedron
//! is the subcomplex of T′ spanned by the barycenters of the faces of T that
//! meet at least two classes. A chain η₁ ⊊ … ⊊ ηⱼ is a spine cell exactly when
//! η₁ meets two classes, and its type is d + 1 − m(η₁), where m counts the
//! classes meeting a face.

use std::sync::{Arc, OnceLock};

use crate::collapse::{ids_collapse_onto, ids_collapse_to_point, DEFAULT_RESTARTS};
use crate::complex::{ids_to_mask, mask_to_ids, Complex, UnionFind};
use crate::derived::{derived, DerivedComplex};
use crate::error::{Error, Result};
use crate::manifold::boundary_ids;
use crate::partition::VertexPartition;

/// A triangulation with its first and (lazily) second derived subdivisions.
#[derive(Debug)]
pub struct Tower {
    first: DerivedComplex,
    second: OnceLock<DerivedComplex>,
    // For each top face of T'', the face η of T whose barycenter starts the flag.
    top_origin: OnceLock<Vec<(usize, usize)>>,
    // Faces of T'' lying in the boundary of T''.
    boundary2: OnceLock<Vec<usize>>,
}

impl Tower {
    pub fn new(t: &Complex) -> Arc<Tower> {
        Arc::new(Tower {
            first: derived(t),
            second: OnceLock::new(),
            top_origin: OnceLock::new(),
            boundary2: OnceLock::new(),
        })
    }

    pub fn base(&self) -> &Complex {
        self.first.base()
    }

    pub fn first(&self) -> &DerivedComplex {
        &self.first
    }

    pub fn second(&self) -> &DerivedComplex {
        self.second.get_or_init(|| derived(self.first.complex()))
    }

    pub fn dim(&self) -> usize {
        self.base().dim().unwrap_or(0)
    }

    /// Pairs `(top face of T'', origin face of T)`.
    pub fn top_origins(&self) -> &[(usize, usize)] {
        self.top_origin.get_or_init(|| {
            let d2 = self.second();
            let k2 = d2.complex();
            k2.faces_of_dim(self.dim())
                .iter()
                .map(|top| {
                    let c0 = d2.bottom(*top);
                    let v = self.first.complex().face(c0).vertices()[0];
                    (*top, self.first.face_of_vertex(v))
                })
                .collect()
        })
    }

    /// Boundary of T'' as face ids of T''.
    pub fn boundary_second(&self) -> &[usize] {
        self.boundary2.get_or_init(|| {
            let bd = boundary_ids(self.base());
            let d2 = self.second();
            d2.image_of(&self.first.image_of(&bd))
        })
    }
}

/// The dual spine of `(T, P)`: spine cells of T′ with their types.
#[derive(Clone, Debug)]
pub struct SpineComplex {
    tower: Arc<Tower>,
    partition: VertexPartition,
    meets: Vec<usize>,
    cells: Vec<usize>,
    is_cell: Vec<bool>,
    face_type: Vec<usize>,
    vertex_count: usize,
}

/// Number of classes meeting each face of `t`.
pub fn classes_meeting_faces(t: &Complex, p: &VertexPartition) -> Vec<usize> {
    (0..t.num_faces())
        .map(|f| p.classes_meeting(t.face(f).vertices()))
        .collect()
}

/// Spine cells by the chain rule: faces of T′ all of whose vertices are
/// barycenters of faces meeting at least two classes.
pub fn chain_rule_cells(first: &DerivedComplex, meets: &[usize]) -> Vec<usize> {
    let k = first.complex();
    let vmask: Vec<bool> = (0..k.num_vertices())
        .map(|v| meets[first.face_of_vertex(v)] >= 2)
        .collect();
    k.full_subcomplex(&vmask)
}

/// Spine cells by the literal definition: the union over faces σ of T of the
/// links `lk(fᵢ, σ′)`, where `fᵢ` is the face of σ spanned by the `i`-th class.
pub fn direct_cells(first: &DerivedComplex, p: &VertexPartition) -> Vec<usize> {
    let t = first.base();
    let k = first.complex();
    let n1 = k.num_faces();
    // T-faces underlying each T'-face.
    let chains: Vec<Vec<usize>> = (0..n1)
        .map(|c| {
            k.face(c)
                .vertices()
                .iter()
                .map(|v| first.face_of_vertex(*v))
                .collect()
        })
        .collect();
    let mut out = vec![false; n1];
    for sigma in 0..t.num_faces() {
        let sv = t.face(sigma);
        let inside = |eta: usize| t.face(eta).is_subset_of(sv);
        let sub: Vec<usize> = (0..n1)
            .filter(|c| chains[*c].iter().all(|e| inside(*e)))
            .collect();
        let mut classes: Vec<usize> = sv.vertices().iter().map(|v| p.class_of(*v)).collect();
        classes.sort_unstable();
        classes.dedup();
        for class in classes {
            let f: Vec<usize> = sv
                .vertices()
                .iter()
                .copied()
                .filter(|v| p.class_of(*v) == class)
                .collect();
            let f = crate::complex::Simplex::new(f);
            let in_f = |eta: usize| t.face(eta).is_subset_of(&f);
            let touching = sub
                .iter()
                .copied()
                .filter(|c| chains[*c].iter().any(|e| in_f(*e)));
            for c in k.closure_of(touching) {
                if !chains[c].iter().any(|e| in_f(*e)) {
                    out[c] = true;
                }
            }
        }
    }
    mask_to_ids(&out)
}

/// Builds the dual spine. Rejects non-pure or empty `t` and partitions that
/// split a boundary component.
pub fn dual_spine(t: &Complex, p: &VertexPartition) -> Result<SpineComplex> {
    dual_spine_in(&Tower::new(t), p)
}

pub fn dual_spine_in(tower: &Arc<Tower>, p: &VertexPartition) -> Result<SpineComplex> {
    let t = tower.base();
    if t.is_empty() {
        return Err(Error::EmptyComplex);
    }
    if !t.is_pure() {
        return Err(Error::NotPure);
    }
    if p.len() != t.num_vertices() {
        return Err(Error::InvalidPartition(format!(
            "partition covers {} vertices, complex has {}",
            p.len(),
            t.num_vertices()
        )));
    }
    p.check_respects_boundary(t)?;
    Ok(dual_spine_unchecked(tower, p))
}

/// As [`dual_spine_in`] without the purity and boundary preconditions; used for
/// local models inside a single simplex.
pub(crate) fn dual_spine_unchecked(tower: &Arc<Tower>, p: &VertexPartition) -> SpineComplex {
    let t = tower.base();
    let d = tower.dim();
    let meets = classes_meeting_faces(t, p);
    let first = tower.first();
    let cells = chain_rule_cells(first, &meets);
    let k = first.complex();
    let is_cell = ids_to_mask(k.num_faces(), &cells);
    let face_type = (0..k.num_faces())
        .map(|c| {
            if is_cell[c] {
                d + 1 - meets[first.bottom(c)]
            } else {
                d
            }
        })
        .collect();
    let vertex_count = t
        .faces_of_dim(d)
        .iter()
        .filter(|f| meets[**f] == d + 1)
        .count();
    SpineComplex {
        tower: tower.clone(),
        partition: p.clone(),
        meets,
        cells,
        is_cell,
        face_type,
        vertex_count,
    }
}

impl SpineComplex {
    pub fn tower(&self) -> &Arc<Tower> {
        &self.tower
    }

    pub fn ambient(&self) -> &Complex {
        self.tower.base()
    }

    pub fn derived(&self) -> &DerivedComplex {
        self.tower.first()
    }

    pub fn partition(&self) -> &VertexPartition {
        &self.partition
    }

    pub fn dim(&self) -> usize {
        self.tower.dim()
    }

    /// Spine cells as face ids of T′, sorted.
    pub fn cells(&self) -> &[usize] {
        &self.cells
    }

    pub fn is_cell(&self, face: usize) -> bool {
        self.is_cell[face]
    }

    /// Classes meeting a face of T.
    pub fn meets(&self, t_face: usize) -> usize {
        self.meets[t_face]
    }

    /// Type of a spine cell, or `None` off the spine.
    pub fn cell_type(&self, face: usize) -> Option<usize> {
        self.is_cell[face].then(|| self.face_type[face])
    }

    /// Type of every face of T′; faces off the spine get type d.
    pub fn face_types(&self) -> &[usize] {
        &self.face_type
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    /// Type-0 cells of T′.
    pub fn vertices(&self) -> Vec<usize> {
        self.cells
            .iter()
            .copied()
            .filter(|c| self.face_type[*c] == 0)
            .collect()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// The spine as a standalone complex labelled by T′ labels.
    pub fn complex(&self) -> Complex {
        self.derived().complex().subcomplex(&self.cells)
    }

    /// Rainbow top faces of T.
    pub fn rainbow_simplices(&self) -> Vec<usize> {
        let d = self.dim();
        self.ambient()
            .faces_of_dim(d)
            .iter()
            .copied()
            .filter(|f| self.meets[*f] == d + 1)
            .collect()
    }

    /// Recomputes the cells by the literal definition and compares.
    pub fn cross_check(&self) -> Result<()> {
        let direct = direct_cells(self.derived(), &self.partition);
        if direct != self.cells {
            return Err(Error::Invariant(format!(
                "chain rule gives {} cells, direct construction {}",
                self.cells.len(),
                direct.len()
            )));
        }
        Ok(())
    }
}

/// The regions M_V (regular neighborhoods of the full subcomplexes T_V) and the
/// regular neighborhood of the spine, all as subcomplexes of T″.
#[derive(Clone, Debug)]
pub struct RegionDecomposition {
    /// Closed region per class, as T″ face ids.
    pub regions: Vec<Vec<usize>>,
    /// Top faces of T″ per class.
    pub region_tops: Vec<Vec<usize>>,
    pub spine_neighborhood: Vec<usize>,
    pub spine_tops: Vec<usize>,
}

pub fn regions(s: &SpineComplex) -> RegionDecomposition {
    let k2 = s.tower.second().complex();
    let mut region_tops = vec![Vec::new(); s.partition.num_classes()];
    let mut spine_tops = Vec::new();
    for (top, eta) in s.tower.top_origins() {
        if s.meets[*eta] == 1 {
            let v = s.ambient().face(*eta).vertices()[0];
            region_tops[s.partition.class_of(v)].push(*top);
        } else {
            spine_tops.push(*top);
        }
    }
    let regions = region_tops
        .iter()
        .map(|tops| k2.closure_of(tops.iter().copied()))
        .collect();
    let spine_neighborhood = k2.closure_of(spine_tops.iter().copied());
    RegionDecomposition {
        regions,
        region_tops,
        spine_neighborhood,
        spine_tops,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Certificate {
    Yes,
    /// Every region collapsed, but ball recognition is heuristic above dimension 3.
    YesHeuristic,
    Unknown,
}

impl std::fmt::Display for Certificate {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Certificate::Yes => "yes",
            Certificate::YesHeuristic => "yes (heuristic)",
            Certificate::Unknown => "unknown",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RegionOutcome {
    /// Collapsed to a point.
    Ball,
    /// Collapsed onto its boundary part.
    Collar,
    NotCollapsed,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegionStatus {
    pub class: usize,
    pub component: usize,
    pub top_faces: usize,
    pub touches_boundary: bool,
    pub outcome: RegionOutcome,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpineReport {
    pub certificate: Certificate,
    pub vertex_count: usize,
    pub regions: Vec<RegionStatus>,
    pub note: Option<String>,
}

#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    pub restarts: usize,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            restarts: DEFAULT_RESTARTS,
            seed: 0,
        }
    }
}

/// Checks that every region is a ball (or a collar of its boundary part) by
/// greedy collapse in T″.
pub fn verify_spine(s: &SpineComplex, opts: VerifyOptions) -> SpineReport {
    let dec = regions(s);
    let k2 = s.tower.second().complex();
    let bd_mask = ids_to_mask(k2.num_faces(), s.tower.boundary_second());
    let mut statuses = Vec::new();
    let mut all_ok = true;
    for (class, region) in dec.regions.iter().enumerate() {
        for (ci, comp) in k2.connected_components(region).into_iter().enumerate() {
            let on_bd: Vec<usize> = comp.iter().copied().filter(|f| bd_mask[*f]).collect();
            let touches_boundary = !on_bd.is_empty();
            let ok = if touches_boundary {
                ids_collapse_onto(k2, &comp, &on_bd, opts.restarts, opts.seed)
            } else {
                ids_collapse_to_point(k2, &comp, opts.restarts, opts.seed)
            };
            all_ok &= ok;
            let top_faces = comp
                .iter()
                .filter(|f| k2.face(**f).dim() == s.dim())
                .count();
            let outcome = match (ok, touches_boundary) {
                (false, _) => RegionOutcome::NotCollapsed,
                (true, true) => RegionOutcome::Collar,
                (true, false) => RegionOutcome::Ball,
            };
            statuses.push(RegionStatus {
                class,
                component: ci,
                top_faces,
                touches_boundary,
                outcome,
            });
        }
    }
    let mut note = None;
    let certificate = if s.partition.num_classes() < 2 {
        note = Some("a single class has an empty dual polyhedron".to_string());
        Certificate::Unknown
    } else if !all_ok {
        Certificate::Unknown
    } else if s.dim() <= 3 {
        Certificate::Yes
    } else {
        note =
            Some("regions collapsed; ball recognition is heuristic above dimension 3".to_string());
        Certificate::YesHeuristic
    };
    SpineReport {
        certificate,
        vertex_count: s.vertex_count,
        regions: statuses,
        note,
    }
}

/// Cheap necessary condition for a certificate on a closed manifold: at least
/// two classes, and every connected component of every T_V has χ = 1.
pub fn passes_euler_filter(t: &Complex, p: &VertexPartition) -> bool {
    if p.num_classes() < 2 {
        return false;
    }
    let mut uf = UnionFind::new(t.num_vertices());
    for e in t.faces_of_dim(1) {
        let vs = t.face(*e).vertices();
        if p.class_of(vs[0]) == p.class_of(vs[1]) {
            uf.union(vs[0], vs[1]);
        }
    }
    let mut chi = vec![0i64; t.num_vertices()];
    for f in 0..t.num_faces() {
        let vs = t.face(f).vertices();
        let c = p.class_of(vs[0]);
        if vs.iter().all(|v| p.class_of(*v) == c) {
            let sign = if vs.len() % 2 == 1 { 1 } else { -1 };
            chi[uf.find(vs[0])] += sign;
        }
    }
    (0..t.num_vertices()).all(|v| uf.find(v) != v || chi[v] == 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::manifold::is_circle;
    use crate::models;

    fn spine(t: &Complex, classes: &[Vec<&str>]) -> SpineComplex {
        dual_spine(t, &VertexPartition::from_labels(t, classes).unwrap()).unwrap()
    }

    #[test]
    fn tetrahedron_discrete_is_k4() {
        let t = models::boundary_sphere(2);
        let s = dual_spine(&t, &VertexPartition::discrete(4)).unwrap();
        assert_eq!(s.vertex_count(), 4);
        let c = s.complex();
        // Subdivided K4: 4 triangle barycenters, 6 edge barycenters, 12 edges.
        assert_eq!(c.f_vector(), vec![10, 12]);
        s.cross_check().unwrap();
    }

    #[test]
    fn tetrahedron_two_pairs_is_equator() {
        let t = models::boundary_sphere(2);
        let s = spine(&t, &[vec!["0", "1"], vec!["2", "3"]]);
        assert_eq!(s.vertex_count(), 0);
        assert!(is_circle(&s.complex()));
        assert_eq!(s.complex().num_vertices(), 8);
        assert!(s.cells().iter().all(|c| s.cell_type(*c) == Some(1)));
        s.cross_check().unwrap();
    }

    #[test]
    fn pentachoron_discrete() {
        let t = models::boundary_sphere(3);
        let s = dual_spine(&t, &VertexPartition::discrete(5)).unwrap();
        assert_eq!(s.vertex_count(), 5);
        assert_eq!(s.complex().dim(), Some(2));
        s.cross_check().unwrap();
    }

    #[test]
    fn discrete_counts_every_top_simplex() {
        let t = models::named("T2_7").unwrap();
        let s = dual_spine(&t, &VertexPartition::discrete(7)).unwrap();
        assert_eq!(s.vertex_count(), 14);
    }

    #[test]
    fn rejects_bad_inputs() {
        let d2 = models::simplex(2);
        assert!(matches!(
            dual_spine(&d2, &VertexPartition::discrete(3)),
            Err(Error::BoundaryNotRespected(_))
        ));
        let np = Complex::from_facets(&[vec!["a", "b", "c"], vec!["c", "d"]]).unwrap();
        assert_eq!(
            dual_spine(&np, &VertexPartition::discrete(4)).unwrap_err(),
            Error::NotPure
        );
    }

    #[test]
    fn regions_of_equator_spine() {
        let t = models::boundary_sphere(2);
        let s = spine(&t, &[vec!["0", "1"], vec!["2", "3"]]);
        let r = regions(&s);
        assert_eq!(r.regions.len(), 2);
        let k2 = s.tower().second().complex();
        let total = r.region_tops.iter().map(Vec::len).sum::<usize>() + r.spine_tops.len();
        assert_eq!(total, k2.faces_of_dim(2).len());
        for region in &r.regions {
            assert!(ids_collapse_to_point(k2, region, 8, 0));
        }
        let rep = verify_spine(&s, VerifyOptions::default());
        assert_eq!(rep.certificate, Certificate::Yes);
        assert_eq!(rep.regions.len(), 2);
    }

    #[test]
    fn disc_with_one_class() {
        let d2 = models::simplex(2);
        let s = dual_spine(&d2, &VertexPartition::single(3)).unwrap();
        assert!(s.is_empty());
        let r = regions(&s);
        let k2 = s.tower().second().complex();
        assert_eq!(r.regions[0].len(), k2.num_faces());
        assert!(r.spine_neighborhood.is_empty());
        assert_eq!(
            verify_spine(&s, VerifyOptions::default()).certificate,
            Certificate::Unknown
        );
    }

    #[test]
    fn torus_discrete_is_certified() {
        let t = models::named("T2_7").unwrap();
        let rep = verify_spine(
            &dual_spine(&t, &VertexPartition::discrete(7)).unwrap(),
            VerifyOptions::default(),
        );
        assert_eq!(rep.certificate, Certificate::Yes);
        assert_eq!(rep.vertex_count, 14);
        assert_eq!(rep.regions.len(), 7);
    }

    #[test]
    fn projective_plane_mobius_region() {
        let t = models::named("RP2_6").unwrap();
        let s = spine(&t, &[vec!["1"], vec!["2", "3", "4", "5", "6"]]);
        let rep = verify_spine(&s, VerifyOptions::default());
        assert_eq!(rep.certificate, Certificate::Unknown);
        let failed: Vec<&RegionStatus> = rep
            .regions
            .iter()
            .filter(|r| r.outcome == RegionOutcome::NotCollapsed)
            .collect();
        assert_eq!(failed.len(), 1);
        assert_eq!(failed[0].class, 1);
    }

    #[test]
    fn euler_filter() {
        let t = models::named("T2_7").unwrap();
        assert!(passes_euler_filter(&t, &VertexPartition::discrete(7)));
        assert!(!passes_euler_filter(&t, &VertexPartition::single(7)));
    }
}
