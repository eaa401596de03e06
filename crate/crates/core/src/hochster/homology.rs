//! Simplicial complexes and their reduced homology over the rationals.

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use super::exact_rank::{exact_rank, SparseRow};
use super::HochsterError;
use crate::graph::{bits, VertexId, VertexSet};

/// A simplicial complex given by its facets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimplicialComplex {
    pub ground: Vec<VertexId>,
    pub facets: Vec<VertexSet>,
}

impl SimplicialComplex {
    /// Keeps only inclusion-maximal sets; the ground set is the union of the
    /// given ground and all facet vertices.
    pub fn from_faces<G, F>(ground: G, faces: F) -> Self
    where
        G: IntoIterator<Item = VertexId>,
        F: IntoIterator<Item = VertexSet>,
    {
        let mut faces: Vec<VertexSet> = faces.into_iter().collect::<HashSet<_>>().into_iter().collect();
        faces.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        let mut facets: Vec<VertexSet> = Vec::new();
        for f in faces {
            if !facets.iter().any(|g| f.is_subset(g)) {
                facets.push(f);
            }
        }
        facets.sort();
        let mut ground: VertexSet = ground.into_iter().collect();
        for f in &facets {
            ground.extend(f.iter().copied());
        }
        SimplicialComplex {
            ground: ground.into_iter().collect(),
            facets,
        }
    }

    /// Dimension of the largest facet; `-1` for `{∅}`, `None` for the void complex.
    pub fn dimension(&self) -> Option<i64> {
        self.facets.iter().map(|f| f.len() as i64 - 1).max()
    }

    /// All faces as masks over `ground` positions, grouped by dimension + 1.
    pub(crate) fn faces_by_size(&self, cap: usize) -> Result<Vec<Vec<u64>>, HochsterError> {
        if self.ground.len() > 64 {
            return Err(HochsterError::TooLarge {
                what: "ground set",
                size: self.ground.len(),
                cap: 64,
            });
        }
        let pos: HashMap<VertexId, usize> = self.ground.iter().enumerate().map(|(p, &v)| (v, p)).collect();
        let mut seen: HashSet<u64> = HashSet::new();
        for facet in &self.facets {
            let fm = facet.iter().fold(0u64, |m, v| m | (1 << pos[v]));
            // every subset of the facet mask
            let mut sub = fm;
            loop {
                if seen.insert(sub) && seen.len() > cap {
                    return Err(HochsterError::TooLarge {
                        what: "face count",
                        size: seen.len(),
                        cap,
                    });
                }
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & fm;
            }
        }
        let top = self.facets.iter().map(VertexSet::len).max().map_or(0, |d| d + 1);
        let mut by_size = vec![Vec::new(); top];
        for f in seen {
            by_size[f.count_ones() as usize].push(f);
        }
        for level in &mut by_size {
            level.sort_unstable();
        }
        Ok(by_size)
    }
}

/// Reduced Betti numbers `rank H̃_t` for `t = -1, 0, 1, ...`, stored at index
/// `t + 1`, up to the complex's dimension. The void complex yields an empty
/// vector.
pub fn reduced_homology_ranks(c: &SimplicialComplex, face_cap: usize) -> Result<Vec<u64>, HochsterError> {
    let faces = c.faces_by_size(face_cap)?;
    ranks_from_faces(&faces)
}

/// `faces[k]` holds the faces with `k` vertices, as sorted masks; `faces[0]`
/// is `[0]` whenever the complex is non-void.
pub(crate) fn ranks_from_faces(faces: &[Vec<u64>]) -> Result<Vec<u64>, HochsterError> {
    if faces.is_empty() || faces[0].is_empty() {
        return Ok(Vec::new());
    }
    // rank of the boundary map from k-vertex faces to (k-1)-vertex faces
    let mut boundary_rank = vec![0usize; faces.len() + 1];
    for k in 1..faces.len() {
        let index: HashMap<u64, usize> = faces[k - 1].iter().enumerate().map(|(i, &f)| (f, i)).collect();
        let rows: Vec<SparseRow> = faces[k].iter().map(|&f| boundary_row(f, &index)).collect();
        if cfg!(debug_assertions) && k >= 2 {
            check_boundary_squares_to_zero(&faces[k]);
        }
        boundary_rank[k] = exact_rank(&rows);
    }
    let ranks: Vec<u64> = (0..faces.len())
        .map(|k| {
            let f = faces[k].len() as i64;
            let h = f - boundary_rank[k] as i64 - boundary_rank[k + 1] as i64;
            debug_assert!(h >= 0);
            h as u64
        })
        .collect();
    // Euler characteristic: sum over faces equals sum over homology
    let chi_faces: i64 = faces
        .iter()
        .enumerate()
        .map(|(k, level)| sign(k) * level.len() as i64)
        .sum();
    let chi_homology: i64 = ranks.iter().enumerate().map(|(k, &h)| sign(k) * h as i64).sum();
    if chi_faces != chi_homology {
        return Err(HochsterError::Inconsistent(format!(
            "Euler characteristic mismatch: faces {chi_faces}, homology {chi_homology}"
        )));
    }
    Ok(ranks)
}

fn sign(k: usize) -> i64 {
    if k % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Boundary of a face: removing its `i`-th smallest vertex carries sign `(-1)^i`.
fn boundary_row(face: u64, index: &HashMap<u64, usize>) -> SparseRow {
    let mut row: SparseRow = bits(face)
        .enumerate()
        .map(|(i, p)| (index[&(face & !(1 << p))], sign(i)))
        .collect();
    row.sort_unstable();
    row
}

fn check_boundary_squares_to_zero(level: &[u64]) {
    for &face in level {
        let mut total: HashMap<u64, i64> = HashMap::new();
        for (i, p) in bits(face).enumerate() {
            let sub = face & !(1 << p);
            for (j, q) in bits(sub).enumerate() {
                *total.entry(sub & !(1 << q)).or_default() += sign(i) * sign(j);
            }
        }
        assert!(total.values().all(|&v| v == 0), "boundary of boundary is non-zero");
    }
}
