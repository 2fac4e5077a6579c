//! Normal discs: duals of two-class partitions of a simplex.

use std::collections::BTreeMap;

use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::models::{dual_model, simplex};
use crate::partition::VertexPartition;

#[derive(Clone, Debug)]
pub struct NormalDisc {
    /// Δⁿ⁺¹ with vertices `0..=n+1`.
    pub ambient_simplex: Complex,
    pub partition: VertexPartition,
    /// Subcomplex of (Δⁿ⁺¹)′, labelled as in `derived(ambient_simplex)`.
    pub disc: Complex,
    /// Class sizes, larger first.
    pub disc_type: (usize, usize),
}

impl NormalDisc {
    /// ∂D = D ∩ (∂Δ)′: the faces of the disc avoiding the barycenter of Δ.
    pub fn boundary(&self) -> Complex {
        let n = self.ambient_simplex.num_vertices();
        let top = self
            .ambient_simplex
            .face_label(self.ambient_simplex.faces_of_dim(n - 1)[0]);
        let mask: Vec<bool> = self.disc.labels().iter().map(|l| *l != top).collect();
        self.disc.subcomplex(&self.disc.full_subcomplex(&mask))
    }
}

/// All 2ⁿ⁺¹ − 1 normal discs of Δⁿ⁺¹, one per two-class partition.
pub fn enumerate_normal_discs(n: usize) -> Result<Vec<NormalDisc>> {
    if n == 0 {
        return Err(Error::OutOfRange("normal discs need n >= 1".into()));
    }
    let m = n + 2;
    let ambient = simplex(n + 1);
    let mut out = Vec::with_capacity((1 << (m - 1)) - 1);
    // Vertex 0 always sits in the first class, so each partition appears once.
    for mask in 0u64..(1 << (m - 1)) - 1 {
        let full = (mask << 1) | 1;
        let first: Vec<usize> = (0..m).filter(|v| full & (1 << v) != 0).collect();
        let second: Vec<usize> = (0..m).filter(|v| full & (1 << v) == 0).collect();
        let model = dual_model(n, &[first.clone(), second.clone()])?;
        let partition = VertexPartition::from_classes(m, &[first.clone(), second.clone()])?;
        let (a, b) = (first.len(), second.len());
        out.push(NormalDisc {
            ambient_simplex: ambient.clone(),
            partition,
            disc: model.model,
            disc_type: (a.max(b), a.min(b)),
        });
    }
    Ok(out)
}

/// Number of discs of each type, larger types first.
pub fn disc_census(discs: &[NormalDisc]) -> Vec<((usize, usize), usize)> {
    let mut counts: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for d in discs {
        *counts.entry(d.disc_type).or_default() += 1;
    }
    counts.into_iter().rev().collect()
}

/// A line such as `total: 7 (4×(3,1), 3×(2,2))`.
pub fn census_line(discs: &[NormalDisc]) -> String {
    let parts: Vec<String> = disc_census(discs)
        .iter()
        .map(|((a, b), c)| format!("{c}×({a},{b})"))
        .collect();
    format!("total: {} ({})", discs.len(), parts.join(", "))
}
