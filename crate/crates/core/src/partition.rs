//! Vertex partitions in canonical form.

use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::manifold::boundary_ids;

/// A partition of the vertex set `0..n` of a complex.
///
/// Canonical form: each class sorted, classes ordered by smallest member, so
/// `class_of` is a restricted growth string.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexPartition {
    class_of: Vec<usize>,
    classes: Vec<Vec<usize>>,
}

impl VertexPartition {
    /// Builds the canonical partition with the given (arbitrary) class tags.
    pub fn from_class_of(tags: &[usize]) -> VertexPartition {
        let mut seen: std::collections::HashMap<usize, usize> = std::collections::HashMap::new();
        let mut class_of = Vec::with_capacity(tags.len());
        for t in tags {
            let next = seen.len();
            class_of.push(*seen.entry(*t).or_insert(next));
        }
        let mut classes = vec![Vec::new(); seen.len()];
        for (v, c) in class_of.iter().enumerate() {
            classes[*c].push(v);
        }
        VertexPartition { class_of, classes }
    }

    pub fn discrete(n: usize) -> VertexPartition {
        VertexPartition::from_class_of(&(0..n).collect::<Vec<_>>())
    }

    pub fn single(n: usize) -> VertexPartition {
        VertexPartition::from_class_of(&vec![0; n])
    }

    /// Validates disjointness, coverage and nonemptiness.
    pub fn from_classes(n: usize, classes: &[Vec<usize>]) -> Result<VertexPartition> {
        build(n, classes, |v| v.to_string())
    }

    pub fn from_labels<S: AsRef<str>>(c: &Complex, classes: &[Vec<S>]) -> Result<VertexPartition> {
        let mut ids = Vec::with_capacity(classes.len());
        for class in classes {
            let mut ci = Vec::with_capacity(class.len());
            for l in class {
                let l = l.as_ref();
                ci.push(
                    c.vertex_by_label(l)
                        .ok_or_else(|| Error::UnknownVertex(l.to_string()))?,
                );
            }
            ids.push(ci);
        }
        build(c.num_vertices(), &ids, |v| format!("`{}`", c.label(v)))
    }

    pub fn len(&self) -> usize {
        self.class_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.class_of.is_empty()
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn class_of(&self, v: usize) -> usize {
        self.class_of[v]
    }

    pub fn class_tags(&self) -> &[usize] {
        &self.class_of
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn is_discrete(&self) -> bool {
        self.classes.len() == self.class_of.len()
    }

    /// Number of classes meeting a vertex set.
    pub fn classes_meeting(&self, vertices: &[usize]) -> usize {
        let mut seen: Vec<usize> = vertices.iter().map(|v| self.class_of[*v]).collect();
        seen.sort_unstable();
        seen.dedup();
        seen.len()
    }

    pub fn labels(&self, c: &Complex) -> Vec<Vec<String>> {
        self.classes
            .iter()
            .map(|cl| cl.iter().map(|v| c.label(*v).to_string()).collect())
            .collect()
    }

    /// Every connected component of ∂c must lie in a single class.
    pub fn check_respects_boundary(&self, c: &Complex) -> Result<()> {
        let bd = boundary_ids(c);
        for comp in c.connected_components(&bd) {
            let vs = c.vertices_of(&comp);
            if self.classes_meeting(&vs) > 1 {
                return Err(Error::BoundaryNotRespected(c.label(vs[0]).to_string()));
            }
        }
        Ok(())
    }
}

fn build(
    n: usize,
    classes: &[Vec<usize>],
    name: impl Fn(usize) -> String,
) -> Result<VertexPartition> {
    let mut tag = vec![usize::MAX; n];
    for (i, class) in classes.iter().enumerate() {
        if class.is_empty() {
            return Err(Error::InvalidPartition(format!("class {i} is empty")));
        }
        for v in class {
            if *v >= n {
                return Err(Error::InvalidPartition(format!("vertex {v} out of range")));
            }
            if tag[*v] != usize::MAX {
                return Err(Error::InvalidPartition(format!(
                    "vertex {} in two classes",
                    name(*v)
                )));
            }
            tag[*v] = i;
        }
    }
    if let Some(v) = tag.iter().position(|t| *t == usize::MAX) {
        return Err(Error::InvalidPartition(format!(
            "vertex {} in no class",
            name(v)
        )));
    }
    Ok(VertexPartition::from_class_of(&tag))
}

/// All partitions of `0..n` as restricted growth strings, in lexicographic order.
pub fn restricted_growth_strings(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if n == 0 {
        out.push(Vec::new());
        return out;
    }
    let mut a = vec![0usize; n];
    let mut max = vec![0usize; n];
    loop {
        out.push(a.clone());
        // Find the rightmost position that can be incremented.
        let mut i = n - 1;
        loop {
            if i == 0 {
                return out;
            }
            if a[i] <= max[i - 1] {
                break;
            }
            i -= 1;
        }
        a[i] += 1;
        max[i] = max[i - 1].max(a[i]);
        for j in i + 1..n {
            a[j] = 0;
            max[j] = max[i];
        }
    }
}

/// Bell number, saturating at `u64::MAX`.
pub fn bell(n: usize) -> u64 {
    let mut row: Vec<u64> = vec![1];
    for _ in 0..n {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(*row.last().expect("nonempty row"));
        for x in &row {
            let last = *next.last().expect("nonempty row");
            next.push(last.saturating_add(*x));
        }
        row = next;
    }
    row[0]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models;

    #[test]
    fn canonical_form() {
        let p = VertexPartition::from_class_of(&[7, 3, 7, 3, 9]);
        assert_eq!(p.classes(), &[vec![0, 2], vec![1, 3], vec![4]]);
        assert_eq!(p.class_tags(), &[0, 1, 0, 1, 2]);
        let q = VertexPartition::from_classes(5, &[vec![4], vec![3, 1], vec![2, 0]]).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn invalid() {
        assert!(VertexPartition::from_classes(3, &[vec![0, 1]]).is_err());
        assert!(VertexPartition::from_classes(3, &[vec![0, 1], vec![1, 2]]).is_err());
        assert!(VertexPartition::from_classes(3, &[vec![0, 1, 2], vec![]]).is_err());
        let c = models::simplex(1);
        let err = VertexPartition::from_labels(&c, &[vec!["0"]]).unwrap_err();
        assert_eq!(
            err,
            Error::InvalidPartition("vertex `1` in no class".into())
        );
    }

    #[test]
    fn bell_numbers_match_enumeration() {
        for n in 0..8 {
            assert_eq!(restricted_growth_strings(n).len() as u64, bell(n));
        }
        assert_eq!(bell(6), 203);
        assert_eq!(bell(7), 877);
    }

    #[test]
    fn boundary_respect() {
        let d2 = models::simplex(2);
        assert!(VertexPartition::single(3)
            .check_respects_boundary(&d2)
            .is_ok());
        assert!(matches!(
            VertexPartition::discrete(3).check_respects_boundary(&d2),
            Err(Error::BoundaryNotRespected(_))
        ));
        assert!(VertexPartition::discrete(4)
            .check_respects_boundary(&models::boundary_sphere(2))
            .is_ok());
    }
}
