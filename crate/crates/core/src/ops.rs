//! Link, star, regular neighborhood, join, cone and suspension.

use std::collections::HashSet;

use crate::complex::Complex;
use crate::derived::derived;
use crate::error::Result;

/// Smallest subcomplex of `amb` containing every face that meets `sub`.
pub fn star(sub: &Complex, amb: &Complex) -> Result<Complex> {
    let ids = amb.embed(sub)?;
    Ok(amb.subcomplex(&amb.star_ids(&ids)))
}

/// Faces of `star(sub, amb)` that do not meet `sub`.
pub fn link(sub: &Complex, amb: &Complex) -> Result<Complex> {
    let ids = amb.embed(sub)?;
    Ok(amb.subcomplex(&amb.link_ids(&ids)))
}

/// Classical link of one face, given by its labels.
pub fn simplex_link<S: AsRef<str>>(face: &[S], amb: &Complex) -> Result<Complex> {
    let id = amb.face_id_by_labels(face)?;
    Ok(amb.subcomplex(&amb.simplex_link_ids(id)))
}

/// Classical closed star of one face.
pub fn simplex_star<S: AsRef<str>>(face: &[S], amb: &Complex) -> Result<Complex> {
    let id = amb.face_id_by_labels(face)?;
    Ok(amb.subcomplex(&amb.simplex_star_ids(id)))
}

/// Regular neighborhood of `sub` in `amb`: the star of the twice-subdivided
/// `sub` inside the second derived subdivision of `amb`. The result is a
/// subcomplex of `amb''`.
pub fn regular_neighborhood(sub: &Complex, amb: &Complex) -> Result<Complex> {
    let ids = amb.embed(sub)?;
    let first = derived(amb);
    let second = derived(first.complex());
    let img = second.image_of(&first.image_of(&ids));
    let k = second.complex();
    Ok(k.subcomplex(&k.star_ids(&img)))
}

fn fresh_label(taken: &HashSet<String>, base: &str) -> String {
    let mut l = base.to_string();
    while taken.contains(&l) {
        l.push('\'');
    }
    l
}

/// Join `a ∗ b`. Labels of `b` that clash with `a` get primes appended.
pub fn join(a: &Complex, b: &Complex) -> Complex {
    let mut taken: HashSet<String> = a.labels().iter().cloned().collect();
    let mut labels: Vec<String> = a.labels().to_vec();
    let offset = labels.len();
    for l in b.labels() {
        let fresh = fresh_label(&taken, l);
        taken.insert(fresh.clone());
        labels.push(fresh);
    }
    let ma = a.maximal_faces();
    let mb = b.maximal_faces();
    let mut facets: Vec<Vec<usize>> = Vec::new();
    if ma.is_empty() {
        facets.extend(
            mb.iter()
                .map(|f| b.face(*f).vertices().iter().map(|v| v + offset).collect()),
        );
    } else if mb.is_empty() {
        facets.extend(ma.iter().map(|f| a.face(*f).vertices().to_vec()));
    } else {
        for fa in &ma {
            for fb in &mb {
                let mut f = a.face(*fa).vertices().to_vec();
                f.extend(b.face(*fb).vertices().iter().map(|v| v + offset));
                facets.push(f);
            }
        }
    }
    Complex::from_parts(labels, facets)
}

pub fn point(label: &str) -> Complex {
    Complex::from_parts(vec![label.to_string()], Vec::<Vec<usize>>::new())
}

pub fn zero_sphere() -> Complex {
    Complex::from_parts(
        vec!["north".into(), "south".into()],
        Vec::<Vec<usize>>::new(),
    )
}

pub fn cone(a: &Complex) -> Complex {
    join(a, &point("apex"))
}

pub fn suspension(a: &Complex) -> Complex {
    join(a, &zero_sphere())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::collapse::collapses_to_point;
    use crate::models;

    fn cycle3() -> Complex {
        Complex::from_facets(&[vec!["a", "b"], vec!["b", "c"], vec!["c", "a"]]).unwrap()
    }

    #[test]
    fn link_of_vertex_in_tetrahedron_boundary() {
        let s2 = models::boundary_sphere(2);
        let v = Complex::from_facets(&[vec!["0"]]).unwrap();
        let lk = link(&v, &s2).unwrap();
        assert_eq!(lk.f_vector(), vec![3, 3]);
    }

    #[test]
    fn star_of_vertex_in_triangle_is_everything() {
        let t = models::simplex(2);
        let v = Complex::from_facets(&[vec!["0"]]).unwrap();
        assert_eq!(star(&v, &t).unwrap(), t);
    }

    #[test]
    fn link_of_edge_as_subcomplex_is_opposite_triangle() {
        // With the subcomplex convention the link of a closed edge in ∂Δ⁴ is the
        // filled opposite triangle; the classical link of the edge is its boundary.
        let s3 = models::boundary_sphere(3);
        let e = Complex::from_facets(&[vec!["0", "1"]]).unwrap();
        assert_eq!(link(&e, &s3).unwrap().f_vector(), vec![3, 3, 1]);
        assert_eq!(
            simplex_link(&["0", "1"], &s3).unwrap().f_vector(),
            vec![3, 3]
        );
    }

    #[test]
    fn not_a_subcomplex() {
        let t = models::simplex(2);
        let bad = Complex::from_facets(&[vec!["0", "9"]]).unwrap();
        assert!(star(&bad, &t).is_err());
    }

    #[test]
    fn regular_neighborhood_of_point_in_cycle_is_arc() {
        let c = cycle3();
        let p = Complex::from_facets(&[vec!["a"]]).unwrap();
        let r = regular_neighborhood(&p, &c).unwrap();
        assert_eq!(r.f_vector(), vec![3, 2]);
        assert!(collapses_to_point(&r, 1, 0));
    }

    #[test]
    fn regular_neighborhood_of_endpoint() {
        let seg = models::simplex(1);
        let p = Complex::from_facets(&[vec!["0"]]).unwrap();
        let r = regular_neighborhood(&p, &seg).unwrap();
        assert_eq!(r.f_vector(), vec![2, 1]);
        assert!(r.vertex_by_label("((0))").is_some());
    }

    #[test]
    fn regular_neighborhood_of_vertex_in_sphere_is_disc() {
        let s2 = models::boundary_sphere(2);
        let p = Complex::from_facets(&[vec!["0"]]).unwrap();
        let r = regular_neighborhood(&p, &s2).unwrap();
        assert_eq!(r.euler_characteristic(), 1);
        assert!(collapses_to_point(&r, 4, 7));
    }

    #[test]
    fn joins() {
        let s1 = join(&zero_sphere(), &zero_sphere());
        assert_eq!(s1.f_vector(), vec![4, 4]);
        assert!(crate::manifold::is_closed_1_manifold(&s1));

        let disc = cone(&cycle3());
        assert_eq!(disc.f_vector(), vec![4, 6, 3]);
        assert!(collapses_to_point(&disc, 1, 0));

        let oct = suspension(&cycle3());
        assert_eq!(oct.f_vector(), vec![5, 9, 6]);
        assert!(crate::manifold::is_closed_surface(&oct));
    }

    #[test]
    fn join_with_empty() {
        let c = cycle3();
        assert_eq!(join(&c, &Complex::empty()), c);
        assert_eq!(join(&Complex::empty(), &c).f_vector(), c.f_vector());
    }
}
