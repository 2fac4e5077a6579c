//! Stein factorization of simplicial maps and the nerve of a stratified pair.

use std::collections::{BTreeMap, HashSet};

use rayon::prelude::*;

use crate::complex::{Complex, UnionFind};
use crate::derived::{derived, DerivedComplex, SimplicialMap};
use crate::error::Result;
use crate::spine::SpineComplex;
use crate::strata::{stratum_components, Stratification};

/// `f′ = g ∘ h` with `h: K′ → H` having connected fibers and `g: H → L′`
/// injective on every face of H.
///
/// Both maps are stored as vertex assignments: `h` is indexed by faces of K
/// (the vertices of K′) and `g` by vertices of the middle complex H, with
/// values faces of L (the vertices of L′).
#[derive(Clone, Debug)]
pub struct SteinFactorization {
    source: Complex,
    target: Complex,
    middle: Complex,
    h: Vec<usize>,
    g: Vec<usize>,
}

// Maximal flags of `c` as lists of face ids, smallest face first.
fn maximal_flags(c: &Complex) -> Vec<Vec<usize>> {
    fn rec(c: &Complex, top: usize, chain: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        chain.push(top);
        let facets = c.facets_of(top);
        if facets.is_empty() {
            out.push(chain.iter().rev().copied().collect());
        } else {
            for f in facets {
                rec(c, *f, chain, out);
            }
        }
        chain.pop();
    }
    let mut out = Vec::new();
    let mut chain = Vec::new();
    for top in c.maximal_faces() {
        rec(c, top, &mut chain, &mut out);
    }
    out
}

pub fn stein(f: &SimplicialMap) -> SteinFactorization {
    let k = f.source();
    let l = f.target();
    let n = k.num_faces();
    let img: Vec<usize> = (0..n).into_par_iter().map(|s| f.image_face(s)).collect();
    let mut uf = UnionFind::new(n);
    for s in 0..n {
        for t in k.facets_of(s) {
            if img[*t] == img[s] {
                uf.union(*t, s);
            }
        }
    }
    // Roots are the smallest face of each component, so sorting by (image, root) is deterministic.
    let mut groups: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let roots: Vec<usize> = (0..n).map(|s| uf.find(s)).collect();
    for s in 0..n {
        groups.insert((img[s], roots[s]), 0);
    }
    let mut labels = Vec::with_capacity(groups.len());
    let mut g = Vec::with_capacity(groups.len());
    let mut last = usize::MAX;
    let mut j = 0;
    for (idx, ((image, _), slot)) in groups.iter_mut().enumerate() {
        if *image != last {
            last = *image;
            j = 0;
        }
        labels.push(format!("{}#{j}", l.face_label(*image)));
        g.push(*image);
        *slot = idx;
        j += 1;
    }
    let h: Vec<usize> = (0..n).map(|s| groups[&(img[s], roots[s])]).collect();
    let mut faces: HashSet<Vec<usize>> = HashSet::new();
    for flag in maximal_flags(k) {
        let mut m: Vec<usize> = flag.iter().map(|s| h[*s]).collect();
        m.sort_unstable();
        m.dedup();
        faces.insert(m);
    }
    let mut faces: Vec<Vec<usize>> = faces.into_iter().collect();
    faces.sort_unstable();
    // from_parts sorts labels; remap h and g to the new vertex order.
    let middle = Complex::from_parts(labels.clone(), faces);
    let new_id: Vec<usize> = labels
        .iter()
        .map(|x| middle.vertex_by_label(x).expect("middle label"))
        .collect();
    let h = h.into_iter().map(|v| new_id[v]).collect();
    let mut g_sorted = vec![0; g.len()];
    for (old, image) in g.into_iter().enumerate() {
        g_sorted[new_id[old]] = image;
    }
    SteinFactorization {
        source: k.clone(),
        target: l.clone(),
        middle,
        h,
        g: g_sorted,
    }
}

impl SteinFactorization {
    pub fn source(&self) -> &Complex {
        &self.source
    }

    pub fn target(&self) -> &Complex {
        &self.target
    }

    pub fn middle(&self) -> &Complex {
        &self.middle
    }

    /// Middle vertex of each face of the source.
    pub fn h_assignment(&self) -> &[usize] {
        &self.h
    }

    /// Target face under each middle vertex.
    pub fn g_assignment(&self) -> &[usize] {
        &self.g
    }

    /// `h` as a simplicial map `K′ → H`, given K′ = derived(source).
    pub fn h_map(&self, source_derived: &DerivedComplex) -> Result<SimplicialMap> {
        let k1 = source_derived.complex();
        let a = (0..k1.num_vertices())
            .map(|v| self.h[source_derived.face_of_vertex(v)])
            .collect();
        SimplicialMap::new(k1.clone(), self.middle.clone(), a)
    }

    /// `g` as a simplicial map `H → L′`, given L′ = derived(target).
    pub fn g_map(&self, target_derived: &DerivedComplex) -> Result<SimplicialMap> {
        let a = self
            .g
            .iter()
            .map(|f| target_derived.vertex_of_face(*f))
            .collect();
        SimplicialMap::new(self.middle.clone(), target_derived.complex().clone(), a)
    }

    /// Middle vertices whose `h`-fiber is disconnected in K′. Recomputed by
    /// a breadth-first search over face inclusions within each fiber.
    pub fn disconnected_fibers(&self) -> Vec<usize> {
        let k = &self.source;
        let mut fibers: Vec<Vec<usize>> = vec![Vec::new(); self.middle.num_vertices()];
        for (s, m) in self.h.iter().enumerate() {
            fibers[*m].push(s);
        }
        (0..fibers.len())
            .into_par_iter()
            .filter(|m| {
                let fiber = &fibers[*m];
                if fiber.is_empty() {
                    return true;
                }
                let mut seen: HashSet<usize> = HashSet::from([fiber[0]]);
                let mut queue = vec![fiber[0]];
                while let Some(s) = queue.pop() {
                    for t in k.facets_of(s).iter().chain(k.cofacets_of(s)) {
                        if self.h[*t] == *m && seen.insert(*t) {
                            queue.push(*t);
                        }
                    }
                }
                seen.len() != fiber.len()
            })
            .collect()
    }

    /// Middle faces whose `g`-image is not a chain of distinct target faces,
    /// i.e. where `dim g(σ) < dim σ`.
    pub fn dimension_drops(&self) -> Vec<usize> {
        let l = &self.target;
        self.middle
            .maximal_faces()
            .into_iter()
            .filter(|m| {
                let mut imgs: Vec<usize> = self
                    .middle
                    .face(*m)
                    .vertices()
                    .iter()
                    .map(|v| self.g[*v])
                    .collect();
                imgs.sort_by_key(|f| (l.face(*f).dim(), *f));
                imgs.windows(2)
                    .any(|w| w[0] == w[1] || !l.face(w[0]).is_subset_of(l.face(w[1])))
            })
            .collect()
    }

    /// Faces of K whose image under `g ∘ h` differs from their image under f.
    pub fn factorization_errors(&self, f: &SimplicialMap) -> Vec<usize> {
        (0..self.source.num_faces())
            .filter(|s| self.g[self.h[*s]] != f.image_face(*s))
            .collect()
    }
}

/// The order complex of the component poset: one vertex `c{id}` per
/// component, one face per chain.
pub fn prenerve(st: &Stratification) -> Complex {
    let n = st.len();
    let labels: Vec<String> = (0..n).map(|c| st.label(c)).collect();
    // Immediate successors: b above a with nothing strictly between.
    let covers: Vec<Vec<usize>> = (0..n)
        .map(|a| {
            st.above[a]
                .iter()
                .copied()
                .filter(|b| !st.above[a].iter().any(|c| st.less(*c, *b)))
                .collect()
        })
        .collect();
    let minimal: Vec<usize> = (0..n).filter(|b| !(0..n).any(|a| st.less(a, *b))).collect();
    let mut chains = Vec::new();
    let mut chain = Vec::new();
    fn rec(a: usize, covers: &[Vec<usize>], chain: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        chain.push(a);
        if covers[a].is_empty() {
            out.push(chain.clone());
        }
        for b in &covers[a] {
            rec(*b, covers, chain, out);
        }
        chain.pop();
    }
    for a in minimal {
        rec(a, &covers, &mut chain, &mut chains);
    }
    Complex::from_parts(labels, chains)
}

/// Strata, pre-nerve, pre-nerve map and its Stein factorization.
#[derive(Clone, Debug)]
pub struct NervePair {
    pub strata: Stratification,
    pub prenerve: Complex,
    /// The pre-nerve map from the subdivided pair to the pre-nerve.
    pub prenerve_map: SimplicialMap,
    pub stein: SteinFactorization,
    /// Derived subdivisions of X applied to the source of the pre-nerve map.
    pub levels: usize,
}

impl NervePair {
    pub fn nerve(&self) -> &Complex {
        self.stein.middle()
    }

    /// Nerve vertex of each face of the source of the pre-nerve map.
    pub fn nerve_map(&self) -> &[usize] {
        self.stein.h_assignment()
    }
}

// Source of the pre-nerve map: X′ sending a barycenter to the component of
// its face, or X″ through carriers if that is not simplicial.
fn prenerve_map(x1: &DerivedComplex, st: &Stratification, n0: &Complex) -> (SimplicialMap, usize) {
    let k1 = x1.complex();
    let vertex: Vec<usize> = (0..st.len())
        .map(|c| n0.vertex_by_label(&st.label(c)).expect("prenerve label"))
        .collect();
    let a: Vec<usize> = (0..k1.num_vertices())
        .map(|v| vertex[st.component_of[x1.face_of_vertex(v)]])
        .collect();
    match SimplicialMap::new(k1.clone(), n0.clone(), a) {
        Ok(m) => (m, 1),
        Err(_) => {
            let x2 = derived(k1);
            let k2 = x2.complex();
            let a = (0..k2.num_vertices())
                .map(|v| vertex[st.component_of[x1.carrier(x2.face_of_vertex(v))]])
                .collect();
            let m = SimplicialMap::new(k2.clone(), n0.clone(), a)
                .expect("carrier map after two subdivisions");
            (m, 2)
        }
    }
}

/// Nerve of a stratification of the complex underlying `x1`.
pub fn nerve_of(x1: &DerivedComplex, strata: Stratification) -> NervePair {
    let pre = prenerve(&strata);
    let (map, levels) = prenerve_map(x1, &strata, &pre);
    let stein = stein(&map);
    NervePair {
        strata,
        prenerve: pre,
        prenerve_map: map,
        stein,
        levels,
    }
}

/// Nerve of a manifold and its dual spine, built on X = T′ with the map on T″.
pub fn nerve(s: &SpineComplex) -> NervePair {
    nerve_of(s.tower().second(), stratum_components(s))
}

/// Nerve of a pair (X, Y) with Y given by face ids of X.
pub fn nerve_of_pair(x: &Complex, y: &[usize]) -> NervePair {
    nerve_of(&derived(x), Stratification::from_pair(x, y))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NerveReport {
    pub dim: Option<usize>,
    pub ambient_dim: usize,
    pub vertex_count: usize,
    pub top_simplices: usize,
    /// Codimension-one faces of the nerve lying in neither zero nor two top faces.
    pub bad_ridges: usize,
    pub disconnected_fibers: usize,
    pub dimension_drops: usize,
}

impl NerveReport {
    pub fn zero_or_two(&self) -> bool {
        self.bad_ridges == 0
    }

    pub fn dim_bounded(&self) -> bool {
        self.dim.is_none_or(|d| d <= self.ambient_dim)
    }

    /// dim 𝒩 = d exactly when the spine has vertices.
    pub fn dim_matches_vertices(&self) -> bool {
        (self.dim == Some(self.ambient_dim)) == (self.vertex_count > 0)
    }

    pub fn stein_ok(&self) -> bool {
        self.disconnected_fibers == 0 && self.dimension_drops == 0
    }

    pub fn all_pass(&self) -> bool {
        self.zero_or_two() && self.dim_bounded() && self.dim_matches_vertices() && self.stein_ok()
    }

    /// Named check lines, one per theorem.
    pub fn lines(&self) -> Vec<String> {
        let mark = |ok: bool| if ok { "pass" } else { "FAIL" };
        vec![
            format!("nerve-0or2: {}", mark(self.zero_or_two())),
            format!("nerve-dim-bound: {}", mark(self.dim_bounded())),
            format!(
                "nerve-dim-iff-vertices: {}",
                mark(self.dim_matches_vertices())
            ),
            format!(
                "stein-fibers-connected: {}",
                mark(self.disconnected_fibers == 0)
            ),
            format!("stein-g-dimension: {}", mark(self.dimension_drops == 0)),
        ]
    }
}

pub fn nerve_checks(np: &NervePair, s: &SpineComplex) -> NerveReport {
    let nv = np.nerve();
    let d = s.dim();
    let bad_ridges = if d == 0 {
        0
    } else {
        nv.faces_of_dim(d - 1)
            .iter()
            .filter(|r| {
                let c = nv
                    .cofacets_of(**r)
                    .iter()
                    .filter(|t| nv.face(**t).dim() == d)
                    .count();
                c != 0 && c != 2
            })
            .count()
    };
    NerveReport {
        dim: nv.dim(),
        ambient_dim: d,
        vertex_count: s.vertex_count(),
        top_simplices: nv.faces_of_dim(d).len(),
        bad_ridges,
        disconnected_fibers: np.stein.disconnected_fibers().len(),
        dimension_drops: np.stein.dimension_drops().len(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::betti_numbers;
    use crate::iso::isomorphic;
    use crate::manifold::is_circle;
    use crate::models;
    use crate::spine::dual_spine;
    use crate::VertexPartition;

    fn tetra(classes: &[Vec<&str>]) -> SpineComplex {
        let t = models::boundary_sphere(2);
        dual_spine(&t, &VertexPartition::from_labels(&t, classes).unwrap()).unwrap()
    }

    #[test]
    fn identity_middle_is_derived() {
        let c = models::boundary_sphere(1);
        let st = stein(&SimplicialMap::identity(&c));
        assert_eq!(isomorphic(st.middle(), derived(&c).complex()), Some(true));
        assert!(st.disconnected_fibers().is_empty());
        assert!(st.dimension_drops().is_empty());
    }

    #[test]
    fn hexagon_fold() {
        let hex = Complex::from_facets(
            &(0..6)
                .map(|i| vec![format!("v{i}"), format!("v{}", (i + 1) % 6)])
                .collect::<Vec<_>>(),
        )
        .unwrap();
        let seg = models::simplex(1);
        let pairs: Vec<(String, String)> = (0..6)
            .map(|i| (format!("v{i}"), (i % 2).to_string()))
            .collect();
        let f = SimplicialMap::from_labels(hex, seg, &pairs).unwrap();
        let st = stein(&f);
        assert!(is_circle(st.middle()));
        assert_eq!(st.middle().num_vertices(), 12);
        // Three preimage components over each endpoint, six over the edge.
        let mut per_dim = [0; 2];
        for img in st.g_assignment() {
            per_dim[f.target().face(*img).dim()] += 1;
        }
        assert_eq!(per_dim, [6, 6]);
        assert!(st.factorization_errors(&f).is_empty());
        let gm = st.g_map(&derived(f.target())).unwrap();
        let hm = st.h_map(&derived(f.source())).unwrap();
        assert_eq!(hm.then(&gm).unwrap(), crate::derived::derived_map(&f));
    }

    #[test]
    fn two_triangles_onto_one() {
        let two = Complex::from_facets(&[vec!["a", "b", "c"], vec!["x", "y", "z"]]).unwrap();
        let one = models::simplex(2);
        let pairs = [
            ("a", "0"),
            ("b", "1"),
            ("c", "2"),
            ("x", "0"),
            ("y", "1"),
            ("z", "2"),
        ];
        let st = stein(&SimplicialMap::from_labels(two.clone(), one, &pairs).unwrap());
        assert_eq!(isomorphic(st.middle(), derived(&two).complex()), Some(true));
        assert!(st.dimension_drops().is_empty());
    }

    #[test]
    fn circle_and_point() {
        let x = models::boundary_sphere(1);
        let np = nerve_of_pair(&x, &[x.vertex_face(0)]);
        assert_eq!(np.prenerve.f_vector(), vec![2, 1]);
        assert!(is_circle(np.nerve()));
        assert_eq!(betti_numbers(np.nerve()), vec![1, 1]);
        assert_eq!(np.levels, 1);
    }

    #[test]
    fn equator_nerve_is_a_path() {
        let s = tetra(&[vec!["0", "1"], vec!["2", "3"]]);
        let np = nerve(&s);
        assert_eq!(np.prenerve.f_vector(), vec![3, 2]);
        assert_eq!(np.nerve().dim(), Some(1));
        assert_eq!(betti_numbers(np.nerve()), vec![1, 0]);
        let r = nerve_checks(&np, &s);
        assert!(r.all_pass(), "{r:?}");
        assert_eq!(r.vertex_count, 0);
    }

    #[test]
    fn k4_nerve() {
        let s = tetra(&[vec!["0"], vec!["1"], vec!["2"], vec!["3"]]);
        let np = nerve(&s);
        // vertex < edge < region chains.
        assert_eq!(np.prenerve.dim(), Some(2));
        let r = nerve_checks(&np, &s);
        assert_eq!(r.dim, Some(2));
        assert!(r.all_pass(), "{r:?}");
        assert_eq!(r.top_simplices, 144);
        assert!(r.lines().contains(&"nerve-0or2: pass".to_string()));
    }

    #[test]
    fn prenerve_of_discrete_sphere_is_first_derived() {
        let s = tetra(&[vec!["0"], vec!["1"], vec!["2"], vec!["3"]]);
        let pre = prenerve(&stratum_components(&s));
        assert_eq!(pre.f_vector(), vec![14, 36, 24]);
    }
}
