//! Greedy elementary collapses.
//!
//! A face σ is free when it lies in exactly one other face η; then η is a
//! maximal coface of codimension one and the pair (σ, η) can be removed. The
//! scan order is a seeded shuffle, so a run is reproducible but different seeds
//! explore different collapse sequences. Failure to reach a target is reported
//! as "not collapsed", never as "not collapsible".

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::complex::{ids_to_mask, mask_to_ids, Complex};

pub const DEFAULT_RESTARTS: usize = 32;

/// Collapses `c` greedily and returns what is left.
pub fn greedy_collapse(c: &Complex, seed: u64) -> Complex {
    let all: Vec<usize> = (0..c.num_faces()).collect();
    let left = collapse_ids(c, &all, &[], seed);
    c.subcomplex(&left)
}

/// Greedy collapse of the subcomplex `ids` of `c`, never removing a face listed
/// in `frozen` (which must itself be a subcomplex). Returns the surviving ids.
pub fn collapse_ids(c: &Complex, ids: &[usize], frozen: &[usize], seed: u64) -> Vec<usize> {
    let n = c.num_faces();
    let mut alive = ids_to_mask(n, ids);
    let frozen = ids_to_mask(n, frozen);
    let mut up = vec![0usize; n];
    for id in ids {
        for f in c.facets_of(*id) {
            up[*f] += 1;
        }
    }
    let mut order: Vec<usize> = ids.to_vec();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    // Stack of candidates; entries may be stale and are rechecked on pop.
    let mut stack: Vec<usize> = order.into_iter().rev().collect();
    while let Some(s) = stack.pop() {
        if !alive[s] || frozen[s] || up[s] != 1 {
            continue;
        }
        let e = *c
            .cofacets_of(s)
            .iter()
            .find(|e| alive[**e])
            .expect("one live coface");
        alive[s] = false;
        alive[e] = false;
        for f in c.facets_of(e) {
            up[*f] -= 1;
            if alive[*f] {
                stack.push(*f);
            }
        }
        for f in c.facets_of(s) {
            up[*f] -= 1;
            if alive[*f] {
                stack.push(*f);
            }
        }
    }
    mask_to_ids(&alive)
}

fn restart_seed(seed: u64, i: usize) -> u64 {
    seed.wrapping_add((i as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

/// Whether some seeded greedy run reduces `c` to a single vertex.
pub fn collapses_to_point(c: &Complex, restarts: usize, seed: u64) -> bool {
    let all: Vec<usize> = (0..c.num_faces()).collect();
    ids_collapse_to_point(c, &all, restarts, seed)
}

pub fn ids_collapse_to_point(c: &Complex, ids: &[usize], restarts: usize, seed: u64) -> bool {
    if ids.is_empty() {
        return false;
    }
    (0..restarts.max(1)).any(|i| collapse_ids(c, ids, &[], restart_seed(seed, i)).len() == 1)
}

/// Whether some seeded greedy run reduces `ids` onto the subcomplex `target`.
pub fn ids_collapse_onto(
    c: &Complex,
    ids: &[usize],
    target: &[usize],
    restarts: usize,
    seed: u64,
) -> bool {
    (0..restarts.max(1))
        .any(|i| collapse_ids(c, ids, target, restart_seed(seed, i)).len() == target.len())
}

/// True if no elementary collapse is available.
pub fn is_collapse_free(c: &Complex) -> bool {
    (0..c.num_faces()).all(|id| c.cofacets_of(id).len() != 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::derived::derived;
    use crate::models;

    #[test]
    fn triangle_collapses() {
        let t = models::simplex(2);
        let r = greedy_collapse(&t, 3);
        assert_eq!(r.num_faces(), 1);
    }

    #[test]
    fn cycle_is_stuck() {
        let c = models::boundary_sphere(1);
        let r = greedy_collapse(&c, 0);
        assert_eq!(r, c);
        assert!(is_collapse_free(&r));
    }

    #[test]
    fn derived_tetrahedron_collapses_for_many_seeds() {
        let d = derived(&models::simplex(3));
        for seed in 0..16 {
            assert_eq!(
                greedy_collapse(d.complex(), seed).num_faces(),
                1,
                "seed {seed}"
            );
        }
    }

    #[test]
    fn sphere_does_not_collapse() {
        assert!(!collapses_to_point(&models::boundary_sphere(2), 8, 0));
    }

    #[test]
    fn annulus_collapses_onto_boundary_circle() {
        // Cylinder over a triangle: two 3-cycles joined by six triangles.
        let c = Complex::from_facets(&[
            vec!["a", "b", "B"],
            vec!["a", "A", "B"],
            vec!["b", "c", "C"],
            vec!["b", "B", "C"],
            vec!["c", "a", "A"],
            vec!["c", "C", "A"],
        ])
        .unwrap();
        let lower: Vec<usize> = ["a", "b", "c"]
            .iter()
            .flat_map(|x| ["a", "b", "c"].iter().map(move |y| (*x, *y)))
            .filter_map(|(x, y)| {
                if x == y {
                    c.face_id_by_labels(&[x]).ok()
                } else {
                    c.face_id_by_labels(&[x, y]).ok()
                }
            })
            .collect();
        let lower = c.closure_of(lower);
        let all: Vec<usize> = (0..c.num_faces()).collect();
        assert!(ids_collapse_onto(&c, &all, &lower, 4, 0));
        assert!(!ids_collapse_to_point(&c, &all, 8, 0));
    }

    #[test]
    fn result_is_subcomplex_and_stuck() {
        let c = models::named("T2_7").unwrap();
        let r = greedy_collapse(&c, 11);
        assert!(c.embed(&r).is_ok());
        assert!(is_collapse_free(&r));
    }
}
