//! Fixtures shared by the benchmarks.

use spinelab::{models, Complex, VertexPartition};

/// Catalogue entries used by the pipeline benchmarks, with their discrete partitions.
pub fn fixtures() -> Vec<(&'static str, Complex, VertexPartition)> {
    ["S2_tetra", "T2_7", "genus2_10", "S3_pentachoron"]
        .into_iter()
        .map(|name| {
            let c = models::named(name).expect("catalogue entry");
            let p = VertexPartition::discrete(c.num_vertices());
            (name, c, p)
        })
        .collect()
}
