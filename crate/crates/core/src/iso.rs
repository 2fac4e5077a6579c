//! Backtracking isomorphism test for small complexes.

use crate::complex::Complex;

/// Largest face count handled by [`isomorphic`].
pub const ISO_FACE_LIMIT: usize = 200;

/// Cheap invariant: f-vector plus sorted per-vertex face counts by dimension.
pub fn signature(c: &Complex) -> (Vec<usize>, Vec<Vec<usize>>) {
    let dims = c.f_vector().len();
    let mut per_vertex: Vec<Vec<usize>> = (0..c.num_vertices())
        .map(|v| {
            let mut counts = vec![0; dims];
            for f in c.vertex_star(v) {
                counts[c.face(*f).dim()] += 1;
            }
            counts
        })
        .collect();
    per_vertex.sort();
    (c.f_vector(), per_vertex)
}

/// `Some(answer)` for complexes up to [`ISO_FACE_LIMIT`] faces, `None` above.
pub fn isomorphic(a: &Complex, b: &Complex) -> Option<bool> {
    if a.num_faces() > ISO_FACE_LIMIT || b.num_faces() > ISO_FACE_LIMIT {
        return None;
    }
    if signature(a) != signature(b) {
        return Some(false);
    }
    let n = a.num_vertices();
    let key = |c: &Complex, v: usize| -> Vec<usize> {
        let mut k = vec![0; c.f_vector().len()];
        for f in c.vertex_star(v) {
            k[c.face(*f).dim()] += 1;
        }
        k
    };
    let ka: Vec<Vec<usize>> = (0..n).map(|v| key(a, v)).collect();
    let kb: Vec<Vec<usize>> = (0..n).map(|v| key(b, v)).collect();
    // Map a's vertices in BFS order so that each new vertex has mapped neighbours.
    let order = bfs_order(a);
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    Some(extend(a, b, &order, 0, &ka, &kb, &mut map, &mut used))
}

fn bfs_order(c: &Complex) -> Vec<usize> {
    let n = c.num_vertices();
    let mut seen = vec![false; n];
    let mut out = Vec::with_capacity(n);
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut q = std::collections::VecDeque::from([s]);
        while let Some(v) = q.pop_front() {
            out.push(v);
            for e in c.cofacets_of(c.vertex_face(v)) {
                for w in c.face(*e).vertices() {
                    if !seen[*w] {
                        seen[*w] = true;
                        q.push_back(*w);
                    }
                }
            }
        }
    }
    out
}

#[allow(clippy::too_many_arguments)]
fn extend(
    a: &Complex,
    b: &Complex,
    order: &[usize],
    i: usize,
    ka: &[Vec<usize>],
    kb: &[Vec<usize>],
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    if i == order.len() {
        return true;
    }
    let v = order[i];
    for w in 0..b.num_vertices() {
        if used[w] || ka[v] != kb[w] {
            continue;
        }
        map[v] = w;
        if consistent(a, b, v, map) {
            used[w] = true;
            if extend(a, b, order, i + 1, ka, kb, map, used) {
                return true;
            }
            used[w] = false;
        }
        map[v] = usize::MAX;
    }
    false
}

// Every face of `a` through `v` whose vertices are all mapped must map to a face
// of `b`. Since the counts per vertex agree, this yields a bijection on faces.
fn consistent(a: &Complex, b: &Complex, v: usize, map: &[usize]) -> bool {
    a.vertex_star(v).iter().all(|f| {
        let vs = a.face(*f).vertices();
        if vs.iter().any(|x| map[*x] == usize::MAX) {
            return true;
        }
        let mut img: Vec<usize> = vs.iter().map(|x| map[*x]).collect();
        img.sort_unstable();
        b.face_id(&img).is_some()
    })
}
