//! Types of spine points, stratum components and their incidence poset.

use std::collections::BTreeSet;

use crate::complex::{Complex, UnionFind};
use crate::error::{Error, Result};
use crate::ops::join;
use crate::spine::SpineComplex;

/// Type of every spine cell by the rule d + 1 − m(η₁), in the order of `s.cells()`.
pub fn assign_types(s: &SpineComplex) -> Result<Vec<usize>> {
    let d = s.dim();
    let first = s.derived();
    s.cells()
        .iter()
        .map(|c| {
            let m = s.meets(first.bottom(*c));
            if m < 2 {
                return Err(Error::Invariant(format!(
                    "spine cell {} starts at a face meeting {m} class",
                    first.complex().face_label(*c)
                )));
            }
            Ok(d + 1 - m)
        })
        .collect()
}

/// Shape of a graph up to homeomorphism, for the link shapes that occur in simple polyhedra.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphShape {
    Circle,
    Theta,
    K4,
}

/// Recognizes circle, theta and K4 graphs after suppressing degree-two vertices.
pub fn graph_shape(g: &Complex) -> Option<GraphShape> {
    if g.dim() != Some(1) || !g.is_connected() {
        return None;
    }
    let n = g.num_vertices();
    let adj: Vec<Vec<usize>> = (0..n)
        .map(|v| {
            g.cofacets_of(g.vertex_face(v))
                .iter()
                .map(|e| {
                    *g.face(*e)
                        .vertices()
                        .iter()
                        .find(|w| **w != v)
                        .expect("edge")
                })
                .collect()
        })
        .collect();
    let branch: Vec<usize> = (0..n).filter(|v| adj[*v].len() != 2).collect();
    if branch.is_empty() {
        return Some(GraphShape::Circle);
    }
    if branch.iter().any(|v| adj[*v].len() != 3) {
        return None;
    }
    // Walk every path between branch vertices.
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for &b in &branch {
        for &start in &adj[b] {
            let (mut prev, mut cur) = (b, start);
            while adj[cur].len() == 2 {
                let next = if adj[cur][0] == prev {
                    adj[cur][1]
                } else {
                    adj[cur][0]
                };
                prev = cur;
                cur = next;
            }
            if cur == b {
                return None;
            }
            if b < cur {
                edges.push((b, cur));
            }
        }
    }
    edges.sort_unstable();
    match branch.len() {
        2 if edges.len() == 3 => Some(GraphShape::Theta),
        4 if edges.len() == 6 => {
            let mut distinct = edges.clone();
            distinct.dedup();
            (distinct.len() == 6).then_some(GraphShape::K4)
        }
        _ => None,
    }
}

/// The link of an interior point of `face` inside the subcomplex `in_p` of `k`:
/// the join of ∂face with the link of `face` in that subcomplex.
pub fn point_link(k: &Complex, in_p: &[bool], face: usize) -> Complex {
    let boundary = k.subcomplex(&k.closure_of(k.facets_of(face).iter().copied()));
    let f = k.face(face);
    let mut lk: Vec<usize> = k
        .cofaces_of(face)
        .into_iter()
        .filter(|c| *c != face && in_p[*c])
        .map(|c| {
            let rest: Vec<usize> = k
                .face(c)
                .vertices()
                .iter()
                .copied()
                .filter(|v| !f.contains_vertex(*v))
                .collect();
            k.face_id(&rest).expect("link face")
        })
        .collect();
    lk.sort_unstable();
    lk.dedup();
    join(&boundary, &k.subcomplex(&lk))
}

/// Type of a point of a polyhedron of dimension `d − 1` in a `d`-manifold, read
/// off its link: nothing for d = 1; three or two points for d = 2; K4, theta or
/// circle for d = 3. `None` when the link is not of a simple type.
pub fn link_type(k: &Complex, in_p: &[bool], face: usize, d: usize) -> Option<usize> {
    let lk = point_link(k, in_p, face);
    match d {
        1 => lk.is_empty().then_some(0),
        2 => match (lk.dim(), lk.num_vertices()) {
            (Some(0), 3) => Some(0),
            (Some(0), 2) => Some(1),
            _ => None,
        },
        3 => graph_shape(&lk).map(|s| match s {
            GraphShape::K4 => 0,
            GraphShape::Theta => 1,
            GraphShape::Circle => 2,
        }),
        _ => None,
    }
}

/// Type of a spine cell from the shape of its link. Ambient dimension at most 3.
pub fn classify_link_lowdim(s: &SpineComplex, cell: usize) -> Result<Option<usize>> {
    let d = s.dim();
    if d > 3 {
        return Err(Error::Unsupported(format!(
            "link classification in dimension {d}"
        )));
    }
    if !s.is_cell(cell) {
        return Err(Error::OutOfRange(format!(
            "face {cell} is not a spine cell"
        )));
    }
    let mask: Vec<bool> = (0..s.derived().complex().num_faces())
        .map(|c| s.is_cell(c))
        .collect();
    Ok(link_type(s.derived().complex(), &mask, cell, d))
}

/// Cells where the type rule and the link shape disagree, as `(cell, rule, link)`.
pub fn type_disagreements(s: &SpineComplex) -> Result<Vec<(usize, usize, Option<usize>)>> {
    let types = assign_types(s)?;
    let k = s.derived().complex();
    let mask: Vec<bool> = (0..k.num_faces()).map(|c| s.is_cell(c)).collect();
    Ok(s.cells()
        .iter()
        .zip(types)
        .filter_map(|(c, t)| {
            let l = link_type(k, &mask, *c, s.dim());
            (l != Some(t)).then_some((*c, t, l))
        })
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StratumComponent {
    pub id: usize,
    /// Dimension of the component; for spine strata this is the type k.
    pub kind: usize,
    /// Open cells making up the component, as face ids of the underlying complex.
    pub cells: Vec<usize>,
    /// Whether the component lies in the complement of the polyhedron.
    pub is_region: bool,
}

/// Components of a pair (X, Y) triangulated by a complex, with the order
/// C ≤ C′ when C lies in the closure of C′.
#[derive(Clone, Debug)]
pub struct Stratification {
    pub components: Vec<StratumComponent>,
    /// Component of every face of the underlying complex.
    pub component_of: Vec<usize>,
    /// `above[c]` holds every component strictly greater than `c`.
    pub above: Vec<BTreeSet<usize>>,
}

impl Stratification {
    /// Groups the faces of `k` into components: faces with equal `label` joined
    /// along facet relations. `region[label]` marks complement labels. The
    /// component kind is the largest dimension among its cells.
    pub fn from_labels(
        k: &Complex,
        label: &[usize],
        is_region_label: impl Fn(usize) -> bool,
    ) -> Stratification {
        let n = k.num_faces();
        let mut uf = UnionFind::new(n);
        for f in 0..n {
            for g in k.facets_of(f) {
                if label[*g] == label[f] {
                    uf.union(*g, f);
                }
            }
        }
        let mut groups: std::collections::BTreeMap<usize, Vec<usize>> =
            std::collections::BTreeMap::new();
        for f in 0..n {
            groups.entry(uf.find(f)).or_default().push(f);
        }
        let mut comps: Vec<(bool, usize, Vec<usize>)> = groups
            .into_values()
            .map(|cells| {
                let kind = cells.iter().map(|c| k.face(*c).dim()).max().unwrap_or(0);
                (is_region_label(label[cells[0]]), kind, cells)
            })
            .collect();
        // Spine components by kind then first cell; regions last.
        comps.sort_by(|a, b| (a.0, a.1, a.2[0]).cmp(&(b.0, b.1, b.2[0])));
        let mut component_of = vec![0; n];
        let components: Vec<StratumComponent> = comps
            .into_iter()
            .enumerate()
            .map(|(id, (is_region, kind, cells))| {
                for c in &cells {
                    component_of[*c] = id;
                }
                StratumComponent {
                    id,
                    kind,
                    cells,
                    is_region,
                }
            })
            .collect();
        let m = components.len();
        let mut direct: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); m];
        for f in 0..n {
            for g in k.facets_of(f) {
                let (a, b) = (component_of[*g], component_of[f]);
                if a != b {
                    direct[a].insert(b);
                }
            }
        }
        let above = (0..m)
            .map(|c| {
                let mut seen = BTreeSet::new();
                let mut stack: Vec<usize> = direct[c].iter().copied().collect();
                while let Some(x) = stack.pop() {
                    if seen.insert(x) {
                        stack.extend(direct[x].iter().copied());
                    }
                }
                seen
            })
            .collect();
        Stratification {
            components,
            component_of,
            above,
        }
    }

    /// The pair (X, Y) with Y a subcomplex given by face ids: Y and X ∖ Y each
    /// split into connected open pieces. This treats Y as a single stratum.
    pub fn from_pair(x: &Complex, y: &[usize]) -> Stratification {
        let mut label = vec![1; x.num_faces()];
        for f in y {
            label[*f] = 0;
        }
        Stratification::from_labels(x, &label, |l| l == 1)
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn less(&self, a: usize, b: usize) -> bool {
        self.above[a].contains(&b)
    }

    /// Number of spine components of each kind.
    pub fn counts_by_kind(&self, dims: usize) -> Vec<usize> {
        let mut out = vec![0; dims + 1];
        for c in self.components.iter().filter(|c| !c.is_region) {
            out[c.kind] += 1;
        }
        out
    }

    pub fn region_count(&self) -> usize {
        self.components.iter().filter(|c| c.is_region).count()
    }

    /// Labels `c{id}` used for prenerve vertices.
    pub fn label(&self, id: usize) -> String {
        format!("c{id}")
    }
}

/// Stratum components of a dual spine over T′, with complement regions last.
pub fn stratum_components(s: &SpineComplex) -> Stratification {
    let d = s.dim();
    let k = s.derived().complex();
    // Region cells carry label d + 1 to keep them apart from type-d spine cells (none exist).
    let label: Vec<usize> = (0..k.num_faces())
        .map(|c| {
            if s.is_cell(c) {
                s.face_types()[c]
            } else {
                d + 1
            }
        })
        .collect();
    let mut st = Stratification::from_labels(k, &label, |l| l == d + 1);
    for comp in st.components.iter_mut().filter(|c| !c.is_region) {
        comp.kind = label[comp.cells[0]];
    }
    st
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models;
    use crate::spine::dual_spine;
    use crate::VertexPartition;

    fn tetra(classes: &[Vec<&str>]) -> SpineComplex {
        let t = models::boundary_sphere(2);
        dual_spine(&t, &VertexPartition::from_labels(&t, classes).unwrap()).unwrap()
    }

    #[test]
    fn k4_types() {
        let s = tetra(&[vec!["0"], vec!["1"], vec!["2"], vec!["3"]]);
        let types = assign_types(&s).unwrap();
        assert_eq!(types.iter().filter(|t| **t == 0).count(), 4);
        assert_eq!(types.iter().filter(|t| **t == 1).count(), 6 + 12);
        assert!(type_disagreements(&s).unwrap().is_empty());
    }

    #[test]
    fn equator_types_and_components() {
        let s = tetra(&[vec!["0", "1"], vec!["2", "3"]]);
        assert!(assign_types(&s).unwrap().iter().all(|t| *t == 1));
        assert!(type_disagreements(&s).unwrap().is_empty());
        let st = stratum_components(&s);
        assert_eq!(st.counts_by_kind(2), vec![0, 1, 0]);
        assert_eq!(st.region_count(), 2);
        assert!(st.less(0, 1) && st.less(0, 2));
        assert!(!st.less(1, 2));
    }

    #[test]
    fn k4_components() {
        let s = tetra(&[vec!["0"], vec!["1"], vec!["2"], vec!["3"]]);
        let st = stratum_components(&s);
        assert_eq!(st.counts_by_kind(2), vec![4, 6, 0]);
        assert_eq!(st.region_count(), 4);
    }

    #[test]
    fn pentachoron_vertices_are_tetrahedra_barycenters() {
        let t = models::boundary_sphere(3);
        let s = dual_spine(&t, &VertexPartition::discrete(5)).unwrap();
        let k = s.derived().complex();
        let zero: Vec<usize> = s
            .cells()
            .iter()
            .copied()
            .filter(|c| s.cell_type(*c) == Some(0))
            .collect();
        assert_eq!(zero.len(), 5);
        for c in zero {
            assert_eq!(k.face(c).dim(), 0);
            assert_eq!(
                t.face(s.derived().face_of_vertex(k.face(c).vertices()[0]))
                    .dim(),
                3
            );
            assert_eq!(classify_link_lowdim(&s, c).unwrap(), Some(0));
        }
        assert!(type_disagreements(&s).unwrap().is_empty());
    }

    #[test]
    fn graph_shapes() {
        let theta = Complex::from_facets(&[
            vec!["a", "x"],
            vec!["x", "b"],
            vec!["a", "y"],
            vec!["y", "b"],
            vec!["a", "z"],
            vec!["z", "b"],
        ])
        .unwrap();
        assert_eq!(graph_shape(&theta), Some(GraphShape::Theta));
        assert_eq!(
            graph_shape(&models::boundary_sphere(1)),
            Some(GraphShape::Circle)
        );
        let k4 = Complex::from_facets(&[
            vec!["a", "b"],
            vec!["a", "c"],
            vec!["a", "d"],
            vec!["b", "c"],
            vec!["b", "d"],
            vec!["c", "d"],
        ])
        .unwrap();
        assert_eq!(graph_shape(&k4), Some(GraphShape::K4));
        // Two loops at one point.
        let eight = Complex::from_facets(&[
            vec!["o", "a"],
            vec!["a", "b"],
            vec!["b", "o"],
            vec!["o", "c"],
            vec!["c", "e"],
            vec!["e", "o"],
        ])
        .unwrap();
        assert_eq!(graph_shape(&eight), None);
    }

    #[test]
    fn strata_are_pure_of_their_kind() {
        let t = models::named("T2_7").unwrap();
        let s = dual_spine(&t, &VertexPartition::discrete(7)).unwrap();
        let st = stratum_components(&s);
        let k = s.derived().complex();
        for c in &st.components {
            let top = c.cells.iter().map(|f| k.face(*f).dim()).max().unwrap();
            assert_eq!(top, c.kind);
        }
        assert_eq!(st.counts_by_kind(2)[0], s.vertex_count());
    }

    #[test]
    fn pair_of_circle_and_point() {
        let x = models::boundary_sphere(1);
        let y = vec![x.vertex_face(0)];
        let st = Stratification::from_pair(&x, &y);
        assert_eq!(st.len(), 2);
        assert_eq!(st.components[0].kind, 0);
        assert_eq!(st.components[1].kind, 1);
        assert!(st.less(0, 1));
    }
}
