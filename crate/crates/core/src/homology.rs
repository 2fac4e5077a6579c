//! Simplicial homology with coefficients in the two-element field.

use rayon::prelude::*;

use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::gf2::{rank, reduce, BitVec, ColMatrix};

/// Chain complex of a simplicial complex. `boundary[k]` maps k-chains to (k−1)-chains;
/// `boundary[0]` is the zero map.
#[derive(Clone, Debug)]
pub struct Z2ChainComplex {
    pub bases: Vec<Vec<usize>>,
    pub boundary: Vec<ColMatrix>,
}

impl Z2ChainComplex {
    pub fn new(c: &Complex) -> Z2ChainComplex {
        let dims = c.f_vector().len();
        let bases: Vec<Vec<usize>> = (0..dims).map(|k| c.faces_of_dim(k).to_vec()).collect();
        let mut pos = vec![0usize; c.num_faces()];
        for basis in &bases {
            for (i, f) in basis.iter().enumerate() {
                pos[*f] = i;
            }
        }
        let boundary = (0..dims)
            .map(|k| {
                if k == 0 {
                    return ColMatrix::new(0, bases[0].iter().map(|_| BitVec::zeros(0)).collect());
                }
                let rows = bases[k - 1].len();
                let cols = bases[k]
                    .iter()
                    .map(|f| {
                        let ones: Vec<usize> = c.facets_of(*f).iter().map(|g| pos[*g]).collect();
                        BitVec::from_ones(rows, &ones)
                    })
                    .collect();
                ColMatrix::new(rows, cols)
            })
            .collect();
        Z2ChainComplex { bases, boundary }
    }

    /// Checks ∂∘∂ = 0 in every degree.
    pub fn check(&self) -> Result<()> {
        for k in 2..self.boundary.len() {
            if !self.boundary[k - 1].compose(&self.boundary[k]).is_zero() {
                return Err(Error::Invariant(format!(
                    "boundary squared is nonzero in degree {k}"
                )));
            }
        }
        Ok(())
    }

    pub fn betti_numbers(&self) -> Vec<usize> {
        let ranks: Vec<usize> = self.boundary.par_iter().map(rank).collect();
        (0..self.bases.len())
            .map(|k| {
                let next = ranks.get(k + 1).copied().unwrap_or(0);
                self.bases[k].len() - ranks[k] - next
            })
            .collect()
    }
}

pub fn betti_numbers(c: &Complex) -> Vec<usize> {
    Z2ChainComplex::new(c).betti_numbers()
}

pub fn betti(c: &Complex, k: usize) -> usize {
    betti_numbers(c).get(k).copied().unwrap_or(0)
}

/// Basis of the top-dimensional cycles, each given as sorted face ids. In the
/// top dimension these are exactly the homology classes.
pub fn top_cycle_basis(c: &Complex) -> Vec<Vec<usize>> {
    let Some(d) = c.dim() else { return Vec::new() };
    let cx = Z2ChainComplex::new(c);
    let basis = &cx.bases[d];
    reduce(&cx.boundary[d])
        .kernel
        .iter()
        .map(|v| v.ones().into_iter().map(|i| basis[i]).collect())
        .collect()
}

/// Every nonzero sum of the given basis cycles, in binary counting order.
pub fn nonzero_classes(basis: &[Vec<usize>]) -> Result<Vec<Vec<usize>>> {
    if basis.len() > 20 {
        return Err(Error::Unsupported(format!(
            "{} generators; enumeration capped at 20",
            basis.len()
        )));
    }
    let mut out = Vec::with_capacity((1 << basis.len()) - 1);
    for mask in 1u32..(1 << basis.len()) {
        let mut acc: Vec<usize> = Vec::new();
        for (i, cyc) in basis.iter().enumerate() {
            if mask >> i & 1 == 1 {
                acc = symmetric_difference(&acc, cyc);
            }
        }
        out.push(acc);
    }
    Ok(out)
}

fn symmetric_difference(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i] < b[j]) {
            out.push(a[i]);
            i += 1;
        } else if i == a.len() || b[j] < a[i] {
            out.push(b[j]);
            j += 1;
        } else {
            i += 1;
            j += 1;
        }
    }
    out
}

/// The subcomplex carried by a top-dimensional cycle: the closure of its support.
/// Fails unless the support is a closed pseudomanifold, i.e. every codimension-one
/// face of the support lies in exactly zero or two support cells.
pub fn hypersurface_from_class(c: &Complex, cycle: &[usize]) -> Result<Vec<usize>> {
    if cycle.is_empty() {
        return Ok(Vec::new());
    }
    let d = c.dim().ok_or(Error::EmptyComplex)?;
    if cycle.iter().any(|f| c.face(*f).dim() != d) {
        return Err(Error::OutOfRange(
            "cycle contains a face below the top dimension".into(),
        ));
    }
    let mut count = vec![0usize; c.num_faces()];
    for f in cycle {
        for g in c.facets_of(*f) {
            count[*g] += 1;
        }
    }
    if count.iter().any(|n| n % 2 == 1) {
        return Err(Error::NotACycle);
    }
    if let Some(bad) = (0..c.num_faces()).find(|g| count[*g] != 0 && count[*g] != 2) {
        return Err(Error::NotPseudomanifold(format!(
            "face {} lies in {} cells of the support",
            c.face_label(bad),
            count[bad]
        )));
    }
    Ok(c.closure_of(cycle.iter().copied()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models;

    #[test]
    fn cycle_and_sphere() {
        assert_eq!(betti(&models::boundary_sphere(1), 1), 1);
        assert_eq!(betti(&models::boundary_sphere(1), 0), 1);
        assert_eq!(betti_numbers(&models::boundary_sphere(2)), vec![1, 0, 1]);
        assert_eq!(betti_numbers(&models::simplex(3)), vec![1, 0, 0, 0]);
    }

    #[test]
    fn surfaces() {
        assert_eq!(
            betti_numbers(&models::named("T2_7").unwrap()),
            vec![1, 2, 1]
        );
        assert_eq!(
            betti_numbers(&models::named("RP2_6").unwrap()),
            vec![1, 1, 1]
        );
        assert_eq!(
            betti_numbers(&models::named("genus2_10").unwrap()),
            vec![1, 4, 1]
        );
    }

    #[test]
    fn boundary_squares_to_zero() {
        for c in [models::boundary_sphere(3), models::named("T2_7").unwrap()] {
            Z2ChainComplex::new(&c).check().unwrap();
        }
    }

    #[test]
    fn top_cycles_of_two_circles() {
        let c = Complex::from_facets(&[
            vec!["a", "b"],
            vec!["b", "c"],
            vec!["c", "a"],
            vec!["c", "d"],
            vec!["d", "a"],
        ])
        .unwrap();
        let basis = top_cycle_basis(&c);
        assert_eq!(basis.len(), 2);
        let classes = nonzero_classes(&basis).unwrap();
        assert_eq!(classes.len(), 3);
        for cl in &classes {
            let sub = c.subcomplex(&hypersurface_from_class(&c, cl).unwrap());
            assert!(crate::manifold::is_circle(&sub));
        }
    }

    #[test]
    fn non_cycles_rejected() {
        let c = models::boundary_sphere(1);
        let e = c.faces_of_dim(1)[0];
        assert_eq!(hypersurface_from_class(&c, &[e]), Err(Error::NotACycle));
        assert_eq!(hypersurface_from_class(&c, &[]), Ok(vec![]));
    }
}
