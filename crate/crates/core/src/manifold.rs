//! Manifold recognition by vertex links, dimensions one to three.
//!
//! Higher dimensions only get the pure pseudomanifold check.

use crate::complex::Complex;

fn vertex_link(c: &Complex, v: usize) -> Complex {
    c.subcomplex(&c.simplex_link_ids(c.vertex_face(v)))
}

fn degrees(c: &Complex) -> Vec<usize> {
    (0..c.num_vertices())
        .map(|v| c.cofacets_of(c.vertex_face(v)).len())
        .collect()
}

/// A connected graph with every vertex of degree two.
pub fn is_circle(c: &Complex) -> bool {
    c.dim() == Some(1) && c.is_pure() && c.is_connected() && degrees(c).iter().all(|d| *d == 2)
}

/// A connected tree with two leaves and no branching.
pub fn is_arc(c: &Complex) -> bool {
    if c.dim() == Some(0) {
        return c.num_vertices() == 1;
    }
    if c.dim() != Some(1) || !c.is_connected() {
        return false;
    }
    let deg = degrees(c);
    deg.iter().all(|d| *d == 1 || *d == 2) && deg.iter().filter(|d| **d == 1).count() == 2
}

/// Disjoint union of circles.
pub fn is_closed_1_manifold(c: &Complex) -> bool {
    c.dim() == Some(1) && c.is_pure() && degrees(c).iter().all(|d| *d == 2)
}

pub fn is_1_manifold(c: &Complex) -> bool {
    c.dim() == Some(1) && c.is_pure() && degrees(c).iter().all(|d| *d == 1 || *d == 2)
}

pub fn is_closed_surface(c: &Complex) -> bool {
    c.dim() == Some(2)
        && c.is_pure()
        && (0..c.num_vertices()).all(|v| is_circle(&vertex_link(c, v)))
}

/// Surface, possibly with boundary: every vertex link is a circle or an arc.
pub fn is_surface_with_boundary(c: &Complex) -> bool {
    c.dim() == Some(2)
        && c.is_pure()
        && (0..c.num_vertices()).all(|v| {
            let lk = vertex_link(c, v);
            is_circle(&lk) || (lk.dim() == Some(1) && is_arc(&lk))
        })
}

/// Connected closed surface with χ = 2.
pub fn is_2_sphere(c: &Complex) -> bool {
    c.is_connected() && c.euler_characteristic() == 2 && is_closed_surface(c)
}

/// Connected surface with one boundary circle and χ = 1.
pub fn is_2_disc(c: &Complex) -> bool {
    c.is_connected()
        && c.euler_characteristic() == 1
        && is_surface_with_boundary(c)
        && is_circle(&c.subcomplex(&boundary_ids(c)))
}

pub fn is_closed_3_manifold(c: &Complex) -> bool {
    c.dim() == Some(3)
        && c.is_pure()
        && (0..c.num_vertices()).all(|v| is_2_sphere(&vertex_link(c, v)))
}

pub fn is_3_manifold(c: &Complex) -> bool {
    c.dim() == Some(3)
        && c.is_pure()
        && (0..c.num_vertices()).all(|v| {
            let lk = vertex_link(c, v);
            is_2_sphere(&lk) || is_2_disc(&lk)
        })
}

/// Pure, and every codimension-one face lies in exactly two top faces.
pub fn is_closed_pseudomanifold(c: &Complex) -> bool {
    let Some(d) = c.dim() else { return false };
    d > 0
        && c.is_pure()
        && c.faces_of_dim(d - 1)
            .iter()
            .all(|f| c.cofacets_of(*f).len() == 2)
}

/// Pure, and every codimension-one face lies in one or two top faces.
pub fn is_pseudomanifold(c: &Complex) -> bool {
    let Some(d) = c.dim() else { return false };
    d > 0
        && c.is_pure()
        && c.faces_of_dim(d - 1)
            .iter()
            .all(|f| matches!(c.cofacets_of(*f).len(), 1 | 2))
}

/// Closed manifold check: exact link recognition for d ≤ 3, pseudomanifold otherwise.
pub fn is_closed_manifold(c: &Complex) -> bool {
    match c.dim() {
        None => false,
        Some(0) => c.num_vertices() == 2,
        Some(1) => is_closed_1_manifold(c),
        Some(2) => is_closed_surface(c),
        Some(3) => is_closed_3_manifold(c),
        Some(_) => is_closed_pseudomanifold(c),
    }
}

/// Manifold check allowing boundary.
pub fn is_manifold(c: &Complex) -> bool {
    match c.dim() {
        None => false,
        Some(0) => true,
        Some(1) => is_1_manifold(c),
        Some(2) => is_surface_with_boundary(c),
        Some(3) => is_3_manifold(c),
        Some(_) => is_pseudomanifold(c),
    }
}

/// Closure of the codimension-one faces lying in exactly one top face.
pub fn boundary_ids(c: &Complex) -> Vec<usize> {
    let Some(d) = c.dim() else { return Vec::new() };
    if d == 0 {
        return Vec::new();
    }
    let free = c
        .faces_of_dim(d - 1)
        .iter()
        .copied()
        .filter(|f| c.cofacets_of(*f).len() == 1);
    c.closure_of(free)
}

pub fn boundary(c: &Complex) -> Complex {
    c.subcomplex(&boundary_ids(c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models;

    #[test]
    fn spheres() {
        assert!(is_closed_surface(&models::boundary_sphere(2)));
        assert_eq!(models::boundary_sphere(2).euler_characteristic(), 2);
        assert!(is_closed_3_manifold(&models::boundary_sphere(3)));
        assert!(is_closed_manifold(&models::boundary_sphere(4)));
        assert!(is_circle(&models::boundary_sphere(1)));
    }

    #[test]
    fn torus() {
        let t = models::named("T2_7").unwrap();
        assert!(is_closed_surface(&t));
        assert_eq!(t.euler_characteristic(), 0);
    }

    #[test]
    fn simplices_have_boundary() {
        let d2 = models::simplex(2);
        assert!(!is_closed_surface(&d2));
        assert!(is_surface_with_boundary(&d2));
        assert!(is_2_disc(&d2));
        assert_eq!(boundary(&d2), models::boundary_sphere(1));
        assert!(is_3_manifold(&models::simplex(3)));
        assert!(!is_closed_3_manifold(&models::simplex(3)));
    }

    #[test]
    fn non_pure_rejected() {
        let c = Complex::from_facets(&[vec!["a", "b", "c"], vec!["c", "d"]]).unwrap();
        assert!(!is_surface_with_boundary(&c));
        assert!(!is_manifold(&c));
    }

    #[test]
    fn pinched_surface_is_pseudomanifold_but_not_manifold() {
        // Two tetrahedron boundaries glued at one vertex.
        let c = Complex::from_facets(&[
            vec!["a", "b", "c"],
            vec!["a", "b", "d"],
            vec!["a", "c", "d"],
            vec!["b", "c", "d"],
            vec!["a", "x", "y"],
            vec!["a", "x", "z"],
            vec!["a", "y", "z"],
            vec!["x", "y", "z"],
        ])
        .unwrap();
        assert!(is_closed_pseudomanifold(&c));
        assert!(!is_closed_surface(&c));
    }
}
