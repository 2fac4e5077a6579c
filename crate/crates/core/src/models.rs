//! Simplices, spheres, local models and the built-in catalogue.

use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::format::parse_complex;
use crate::partition::VertexPartition;
use crate::spine::{dual_spine_unchecked, Tower};

fn numbered(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

/// The n-simplex Δⁿ on vertices `0..=n`.
pub fn simplex(n: usize) -> Complex {
    Complex::from_parts(numbered(n + 1), vec![(0..=n).collect()])
}

/// The boundary ∂Δⁿ⁺¹, an n-sphere on vertices `0..=n+1`.
pub fn boundary_sphere(n: usize) -> Complex {
    let facets = (0..n + 2)
        .map(|skip| (0..n + 2).filter(|v| *v != skip).collect())
        .collect::<Vec<Vec<usize>>>();
    Complex::from_parts(numbered(n + 2), facets)
}

/// A dual polyhedron inside the derived subdivision of a simplex or sphere.
#[derive(Clone, Debug)]
pub struct LocalModel {
    /// Δ′ or (∂Δ)′.
    pub ambient: Complex,
    /// The model, a subcomplex of `ambient` with the same labels.
    pub model: Complex,
    pub n: usize,
    /// Index of Πⁿₖ; equals n + 1 for a one-class partition, whose dual is empty.
    pub k: usize,
}

fn partition_of(
    n_vertices: usize,
    classes: &[Vec<usize>],
    ambient: &Complex,
) -> Result<VertexPartition> {
    // Vertex i of the ambient is labelled `i`; map through labels since they sort lexicographically.
    let mut ids = Vec::with_capacity(classes.len());
    for class in classes {
        let mut c = Vec::with_capacity(class.len());
        for v in class {
            if *v >= n_vertices {
                return Err(Error::InvalidPartition(format!("vertex {v} out of range")));
            }
            c.push(
                ambient
                    .vertex_by_label(&v.to_string())
                    .expect("numbered vertex"),
            );
        }
        ids.push(c);
    }
    VertexPartition::from_classes(n_vertices, &ids)
}

/// The polyhedron dual to a partition of the vertices `0..=n+1` of Δⁿ⁺¹.
/// With k + 1 classes it is a copy of Πⁿ₍ₙ₊₁₋ₖ₎.
pub fn dual_model(n: usize, classes: &[Vec<usize>]) -> Result<LocalModel> {
    let delta = simplex(n + 1);
    let p = partition_of(n + 2, classes, &delta)?;
    let tower = Tower::new(&delta);
    let s = dual_spine_unchecked(&tower, &p);
    let k = n + 2 - p.num_classes();
    Ok(LocalModel {
        ambient: tower.first().complex().clone(),
        model: s.complex(),
        n,
        k,
    })
}

/// ∂Πⁿₖ as the dual of the partition of ∂Δⁿ⁺¹ into n + 1 − k singletons and
/// one class holding the remaining k + 1 vertices.
pub fn pi_boundary(n: usize, k: usize) -> Result<LocalModel> {
    if k > n {
        return Err(Error::OutOfRange(format!("k = {k} exceeds n = {n}")));
    }
    let sphere = boundary_sphere(n);
    let mut classes: Vec<Vec<usize>> = (0..n + 1 - k).map(|i| vec![i]).collect();
    classes.push((n + 1 - k..n + 2).collect());
    let p = partition_of(n + 2, &classes, &sphere)?;
    let tower = Tower::new(&sphere);
    let s = dual_spine_unchecked(&tower, &p);
    Ok(LocalModel {
        ambient: tower.first().complex().clone(),
        model: s.complex(),
        n,
        k,
    })
}

const CATALOGUE: &[(&str, &str)] = &[
    ("S2_tetra", include_str!("../catalogue/S2_tetra.cplx")),
    ("S2_octa", include_str!("../catalogue/S2_octa.cplx")),
    ("RP2_6", include_str!("../catalogue/RP2_6.cplx")),
    ("T2_7", include_str!("../catalogue/T2_7.cplx")),
    ("genus2_10", include_str!("../catalogue/genus2_10.cplx")),
    (
        "S3_pentachoron",
        include_str!("../catalogue/S3_pentachoron.cplx"),
    ),
    ("S3_16cell", include_str!("../catalogue/S3_16cell.cplx")),
];

pub fn catalogue_names() -> Vec<&'static str> {
    CATALOGUE.iter().map(|(n, _)| *n).collect()
}

/// Source text of a catalogue entry.
pub fn catalogue_text(name: &str) -> Result<&'static str> {
    CATALOGUE
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, t)| *t)
        .ok_or_else(|| Error::UnknownName(name.to_string()))
}

pub fn named(name: &str) -> Result<Complex> {
    parse_complex(catalogue_text(name)?)
}
