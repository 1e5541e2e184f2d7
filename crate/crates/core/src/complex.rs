//! The simplicial complex of a fan and the ellipticity criterion.
//!
//! A simplicial fan determines a complex on its rays: a ray set is a simplex
//! when the rays span a cone of the fan. The orbit space of the maximal
//! compact torus is stratified dually to this complex. A compact simply
//! connected toric orbifold is rationally elliptic exactly when that
//! stratification is the face structure of a product of simplices, which on
//! the complex side means a join of simplex boundaries. Joins are read off
//! from the minimal non-faces: they must partition the vertex set.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use thiserror::Error;

use crate::fan::{subsets_of_size, FanError, ValidatedFan};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("facet {facet} uses vertex {vertex}, but there are only {n} vertices")]
    VertexOutOfRange {
        facet: usize,
        vertex: usize,
        n: usize,
    },
    #[error("vertex {0} lies in no facet")]
    IsolatedVertex(usize),
    #[error("classification precondition failed: {0}")]
    PreconditionFailed(String),
    #[error(transparent)]
    Fan(#[from] FanError),
}

/// An abstract simplicial complex on vertices `0..n`, stored by its facets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    n_vertices: usize,
    facets: Vec<Vec<usize>>,
}

impl SimplicialComplex {
    /// Sorts the facets, drops any that are contained in another, and checks
    /// that every vertex is used.
    pub fn new(n_vertices: usize, facets: Vec<Vec<usize>>) -> Result<Self, ComplexError> {
        let mut sets: BTreeSet<Vec<usize>> = BTreeSet::new();
        for (i, mut f) in facets.into_iter().enumerate() {
            f.sort_unstable();
            f.dedup();
            if let Some(&v) = f.iter().find(|&&v| v >= n_vertices) {
                return Err(ComplexError::VertexOutOfRange {
                    facet: i,
                    vertex: v,
                    n: n_vertices,
                });
            }
            sets.insert(f);
        }
        let all: Vec<Vec<usize>> = sets.into_iter().collect();
        let facets: Vec<Vec<usize>> = all
            .iter()
            .filter(|f| {
                !all.iter()
                    .any(|g| g.len() > f.len() && crate::fan::is_subset(f, g))
            })
            .cloned()
            .collect();
        let mut used = vec![false; n_vertices];
        facets.iter().flatten().for_each(|&v| used[v] = true);
        if let Some(v) = used.iter().position(|u| !u) {
            return Err(ComplexError::IsolatedVertex(v));
        }
        Ok(SimplicialComplex { n_vertices, facets })
    }

    /// The boundary of the simplex on `n >= 2` vertices: every proper subset.
    pub fn simplex_boundary(n: usize) -> Self {
        assert!(n >= 2, "a simplex boundary needs at least two vertices");
        let all: Vec<usize> = (0..n).collect();
        let facets = subsets_of_size(&all, n - 1);
        SimplicialComplex {
            n_vertices: n,
            facets,
        }
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn facets(&self) -> &[Vec<usize>] {
        &self.facets
    }

    /// Largest number of vertices in a face.
    pub fn max_face_size(&self) -> usize {
        self.facets.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn is_face(&self, s: &[usize]) -> bool {
        let mut sorted = s.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        sorted.is_empty()
            || self
                .facets
                .iter()
                .any(|f| crate::fan::is_subset(&sorted, f))
    }

    /// All nonempty faces, ordered by size and then lexicographically.
    pub fn faces(&self) -> Vec<Vec<usize>> {
        let mut faces: BTreeSet<(usize, Vec<usize>)> = BTreeSet::new();
        for f in &self.facets {
            for k in 1..=f.len() {
                for s in subsets_of_size(f, k) {
                    faces.insert((k, s));
                }
            }
        }
        faces.into_iter().map(|(_, s)| s).collect()
    }

    /// `f[i]` is the number of faces with `i` vertices, so `f[0] = 1` counts
    /// the empty face.
    pub fn f_vector(&self) -> Vec<u64> {
        let mut f = vec![0u64; self.max_face_size() + 1];
        f[0] = 1;
        for s in self.faces() {
            f[s.len()] += 1;
        }
        f
    }

    /// `h_j = sum_i (-1)^(j-i) C(d-i, j-i) f_(i-1)` for `j = 0..=d`.
    pub fn h_vector(&self) -> Vec<i64> {
        let f = self.f_vector();
        let d = f.len() - 1;
        (0..=d)
            .map(|j| {
                (0..=j)
                    .map(|i| {
                        let term = binomial(d - i, j - i) as i64 * f[i] as i64;
                        if (j - i) % 2 == 0 {
                            term
                        } else {
                            -term
                        }
                    })
                    .sum()
            })
            .collect()
    }

    pub fn face_poset(&self) -> FacePoset {
        FacePoset {
            elements: self.faces(),
        }
    }

    /// Inclusion-minimal vertex sets that are not faces.
    ///
    /// Grown level by level: a set of size `k` is a candidate only if it is a
    /// face of size `k - 1` extended by a larger vertex, and it is minimal when
    /// every `(k - 1)`-subset is a face.
    pub fn minimal_nonfaces(&self) -> Vec<Vec<usize>> {
        let faces: HashSet<Vec<usize>> = self.faces().into_iter().collect();
        let mut out: Vec<Vec<usize>> = (0..self.n_vertices)
            .filter(|v| !faces.contains(&vec![*v]))
            .map(|v| vec![v])
            .collect();
        let mut level: Vec<Vec<usize>> = faces.iter().filter(|f| f.len() == 1).cloned().collect();
        level.sort();
        for k in 2..=self.max_face_size() + 1 {
            let mut next = Vec::new();
            for f in &level {
                let last = *f.last().expect("nonempty");
                for v in last + 1..self.n_vertices {
                    let mut cand = f.clone();
                    cand.push(v);
                    if faces.contains(&cand) {
                        next.push(cand);
                        continue;
                    }
                    let minimal = (0..k).all(|skip| {
                        let sub: Vec<usize> = cand
                            .iter()
                            .enumerate()
                            .filter(|&(i, _)| i != skip)
                            .map(|(_, &x)| x)
                            .collect();
                        faces.contains(&sub)
                    });
                    if minimal {
                        out.push(cand);
                    }
                }
            }
            level = next;
        }
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }

    /// Blocks `B_i` with `self = *_i boundary(simplex on B_i)`, if such a
    /// decomposition exists. Blocks are ordered by smallest vertex.
    pub fn join_decomposition(&self) -> Option<Vec<Vec<usize>>> {
        self.join_obstruction().ok()
    }

    fn join_obstruction(&self) -> Result<Vec<Vec<usize>>, JoinObstruction> {
        let mut blocks = self.minimal_nonfaces();
        let mut owner: Vec<Option<usize>> = vec![None; self.n_vertices];
        for (b, block) in blocks.iter().enumerate() {
            if block.len() < 2 {
                return Err(JoinObstruction::Singleton(block[0]));
            }
            for &v in block {
                if let Some(a) = owner[v] {
                    return Err(JoinObstruction::Overlap {
                        first: blocks[a].clone(),
                        second: block.clone(),
                        vertex: v,
                    });
                }
                owner[v] = Some(b);
            }
        }
        if let Some(v) = owner.iter().position(Option::is_none) {
            return Err(JoinObstruction::Uncovered(v));
        }
        blocks.sort_by_key(|b| b[0]);
        let rebuilt = join_of_boundaries(self.n_vertices, &blocks);
        if rebuilt.facets != self.facets {
            return Err(JoinObstruction::Reconstruction);
        }
        Ok(blocks)
    }

    /// Join with `other`, whose vertices are shifted past ours.
    pub fn join(&self, other: &SimplicialComplex) -> SimplicialComplex {
        let shift = self.n_vertices;
        let mut facets = Vec::new();
        for a in &self.facets {
            for b in &other.facets {
                let mut f = a.clone();
                f.extend(b.iter().map(|v| v + shift));
                facets.push(f);
            }
        }
        if other.facets.is_empty() {
            return self.clone();
        }
        if self.facets.is_empty() {
            facets = other
                .facets
                .iter()
                .map(|b| b.iter().map(|v| v + shift).collect())
                .collect();
        }
        SimplicialComplex::new(self.n_vertices + other.n_vertices, facets)
            .expect("join of complexes is a complex")
    }
}

/// The join of the boundaries of the simplices on the given disjoint blocks.
pub fn join_of_boundaries(n_vertices: usize, blocks: &[Vec<usize>]) -> SimplicialComplex {
    let mut facets: Vec<Vec<usize>> = vec![Vec::new()];
    for block in blocks {
        let mut next = Vec::new();
        for f in &facets {
            for &drop in block {
                let mut g = f.clone();
                g.extend(block.iter().filter(|&&v| v != drop));
                next.push(g);
            }
        }
        facets = next;
    }
    let mut sorted: Vec<Vec<usize>> = facets
        .into_iter()
        .map(|mut f| {
            f.sort_unstable();
            f
        })
        .collect();
    sorted.sort();
    SimplicialComplex {
        n_vertices,
        facets: sorted,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum JoinObstruction {
    Overlap {
        first: Vec<usize>,
        second: Vec<usize>,
        vertex: usize,
    },
    Singleton(usize),
    Uncovered(usize),
    Reconstruction,
}

impl fmt::Display for JoinObstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Overlap {
                first,
                second,
                vertex,
            } => write!(
                f,
                "overlapping minimal non-faces {first:?} and {second:?} share vertex {vertex}"
            ),
            Self::Singleton(v) => write!(f, "vertex {v} is itself a minimal non-face"),
            Self::Uncovered(v) => write!(f, "vertex {v} lies in no minimal non-face"),
            Self::Reconstruction => {
                write!(
                    f,
                    "minimal non-faces do not reconstruct the complex as a join"
                )
            }
        }
    }
}

/// Nonempty simplices ordered by reverse inclusion. Element `s` stands for
/// the closed stratum of codimension `|s|` in the orbit space; the orbit space
/// itself (the empty simplex) is not included.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacePoset {
    elements: Vec<Vec<usize>>,
}

impl FacePoset {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Vec<usize>] {
        &self.elements
    }

    pub fn codimension(&self, i: usize) -> usize {
        self.elements[i].len()
    }

    /// Stratum `a` lies in the closure of stratum `b`.
    pub fn leq(&self, a: usize, b: usize) -> bool {
        crate::fan::is_subset(&self.elements[b], &self.elements[a])
    }

    /// Entry `k` is the number of strata of codimension `k`; entry 0 is zero.
    pub fn count_by_codimension(&self) -> Vec<usize> {
        let top = self.elements.iter().map(Vec::len).max().unwrap_or(0);
        let mut counts = vec![0; top + 1];
        for e in &self.elements {
            counts[e.len()] += 1;
        }
        counts
    }

    /// Pairs `(a, b)` with `a < b` and nothing strictly between.
    pub fn covering_relations(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (a, ea) in self.elements.iter().enumerate() {
            for (b, eb) in self.elements.iter().enumerate() {
                if ea.len() == eb.len() + 1 && crate::fan::is_subset(eb, ea) {
                    out.push((a, b));
                }
            }
        }
        out
    }
}

/// Outcome of the ellipticity test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub elliptic: bool,
    /// Partition of the rays; empty unless elliptic.
    pub blocks: Vec<Vec<usize>>,
    /// `n_i = |B_i| - 1`.
    pub block_dims: Vec<usize>,
    pub reason: Option<String>,
}

/// Σ_X: facets are the ray sets of the maximal cones.
pub fn underlying_complex(vf: &ValidatedFan) -> SimplicialComplex {
    let fan = vf.fan();
    SimplicialComplex::new(fan.n_rays(), fan.max_cones().to_vec())
        .expect("fan invariants make a valid complex")
}

/// Even Betti numbers `b_0, b_2, ..., b_2n`; odd ones vanish.
pub fn betti_numbers(vf: &ValidatedFan) -> Result<Vec<u64>, ComplexError> {
    vf.require_complete()?;
    Ok(underlying_complex(vf)
        .h_vector()
        .into_iter()
        .map(|h| u64::try_from(h).expect("h-vector of a complete simplicial fan is nonnegative"))
        .collect())
}

/// Decides rational ellipticity of the toric orbifold of a complete simply
/// connected simplicial fan.
pub fn classify(vf: &ValidatedFan) -> Result<Classification, ComplexError> {
    if let Some(w) = vf.completeness_witness() {
        return Err(ComplexError::PreconditionFailed(format!(
            "fan is not complete: {w}"
        )));
    }
    if !vf.is_simply_connected()? {
        return Err(ComplexError::PreconditionFailed(
            "fan is not simply connected: rays do not generate the lattice".into(),
        ));
    }
    let complex = underlying_complex(vf);
    Ok(match complex.join_obstruction() {
        Ok(blocks) => {
            let block_dims: Vec<usize> = blocks.iter().map(|b| b.len() - 1).collect();
            assert_eq!(block_dims.iter().sum::<usize>(), vf.dim());
            Classification {
                elliptic: true,
                blocks,
                block_dims,
                reason: None,
            }
        }
        Err(why) => Classification {
            elliptic: false,
            blocks: Vec::new(),
            block_dims: Vec::new(),
            reason: Some(format!(
                "{why}; the complex is not a join of simplex boundaries, and suspension \
                 factors cannot occur for toric orbifolds"
            )),
        },
    })
}

fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::{validate, Fan};

    fn complex(n: usize, facets: &[&[usize]]) -> SimplicialComplex {
        SimplicialComplex::new(n, facets.iter().map(|f| f.to_vec()).collect()).unwrap()
    }

    fn cycle(n: usize) -> SimplicialComplex {
        SimplicialComplex::new(n, (0..n).map(|i| vec![i, (i + 1) % n]).collect()).unwrap()
    }

    // Full scan of all vertex subsets.
    fn brute_minimal_nonfaces(c: &SimplicialComplex) -> Vec<Vec<usize>> {
        let n = c.n_vertices();
        let sets: Vec<Vec<usize>> = (0u32..1 << n)
            .map(|mask| (0..n).filter(|i| mask >> i & 1 == 1).collect())
            .collect();
        let mut out: Vec<Vec<usize>> = sets
            .iter()
            .filter(|s| !c.is_face(s))
            .filter(|s| {
                (0..s.len()).all(|skip| {
                    let sub: Vec<usize> = s
                        .iter()
                        .enumerate()
                        .filter(|&(i, _)| i != skip)
                        .map(|(_, &x)| x)
                        .collect();
                    c.is_face(&sub)
                })
            })
            .cloned()
            .collect();
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }

    #[test]
    fn triangle_boundary() {
        let c = complex(3, &[&[0, 1], &[1, 2], &[0, 2]]);
        assert_eq!(c, SimplicialComplex::simplex_boundary(3));
        assert_eq!(c.f_vector(), vec![1, 3, 3]);
        assert_eq!(c.h_vector(), vec![1, 1, 1]);
        assert_eq!(c.minimal_nonfaces(), vec![vec![0, 1, 2]]);
        assert_eq!(c.join_decomposition(), Some(vec![vec![0, 1, 2]]));
        let p = c.face_poset();
        assert_eq!(p.len(), 6);
        assert_eq!(p.count_by_codimension(), vec![0, 3, 3]);
        // vertex {0} lies above edge {0,1}
        let v0 = p.elements().iter().position(|e| *e == vec![0]).unwrap();
        let e01 = p.elements().iter().position(|e| *e == vec![0, 1]).unwrap();
        assert!(p.leq(e01, v0) && !p.leq(v0, e01));
        assert_eq!(p.covering_relations().len(), 6);
    }

    #[test]
    fn four_cycle() {
        let c = cycle(4);
        assert_eq!(c.f_vector(), vec![1, 4, 4]);
        assert_eq!(c.h_vector(), vec![1, 2, 1]);
        assert_eq!(c.face_poset().len(), 8);
        assert_eq!(c.minimal_nonfaces(), vec![vec![0, 2], vec![1, 3]]);
        assert_eq!(c.join_decomposition(), Some(vec![vec![0, 2], vec![1, 3]]));
    }

    #[test]
    fn hexagon_is_not_a_join() {
        let c = cycle(6);
        let mnf = c.minimal_nonfaces();
        assert_eq!(mnf.len(), 9);
        assert_eq!(mnf, brute_minimal_nonfaces(&c));
        assert!(mnf.iter().all(|s| s.len() == 2));
        assert_eq!(c.join_decomposition(), None);
    }

    #[test]
    fn single_facet() {
        let c = complex(2, &[&[0, 1]]);
        assert_eq!(c.face_poset().len(), 3);
        assert!(c.minimal_nonfaces().is_empty());
        assert_eq!(c.join_decomposition(), None);
    }

    #[test]
    fn join_multiplies_h_vectors() {
        let j =
            SimplicialComplex::simplex_boundary(3).join(&SimplicialComplex::simplex_boundary(2));
        assert_eq!(j.h_vector(), vec![1, 2, 2, 1]);
        assert_eq!(
            j.join_decomposition(),
            Some(vec![vec![0, 1, 2], vec![3, 4]])
        );
    }

    #[test]
    fn brute_force_agrees_on_small_complexes() {
        let cases = [
            cycle(5),
            cycle(7),
            complex(5, &[&[0, 1, 2], &[2, 3], &[3, 4], &[1, 4]]),
            complex(4, &[&[0, 1], &[2, 3]]),
            SimplicialComplex::simplex_boundary(5),
        ];
        for c in &cases {
            assert_eq!(c.minimal_nonfaces(), brute_minimal_nonfaces(c), "{c:?}");
        }
    }

    #[test]
    fn reconstruction_from_minimal_nonfaces() {
        for c in [
            cycle(5),
            cycle(6),
            complex(5, &[&[0, 1, 2], &[2, 3], &[3, 4], &[1, 4]]),
        ] {
            let mnf = c.minimal_nonfaces();
            let n = c.n_vertices();
            for mask in 0u32..1 << n {
                let s: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
                let avoids = mnf.iter().all(|m| !crate::fan::is_subset(m, &s));
                assert_eq!(avoids, c.is_face(&s));
            }
        }
    }

    #[test]
    fn classify_preconditions() {
        let single = validate(Fan::from_i64(2, &[&[1, 0], &[0, 1]], &[&[0, 1]]).unwrap()).unwrap();
        assert!(
            matches!(classify(&single), Err(ComplexError::PreconditionFailed(m)) if m.contains("not complete"))
        );
        assert!(matches!(
            betti_numbers(&single),
            Err(ComplexError::Fan(FanError::NotComplete(_)))
        ));
        let diag = validate(
            Fan::from_i64(
                2,
                &[&[1, 1], &[-1, 1], &[-1, -1], &[1, -1]],
                &[&[0, 1], &[1, 2], &[2, 3], &[0, 3]],
            )
            .unwrap(),
        )
        .unwrap();
        assert!(
            matches!(classify(&diag), Err(ComplexError::PreconditionFailed(m)) if m.contains("simply connected"))
        );
    }

    #[test]
    fn classify_cp2_and_hexagon() {
        let cp2 = validate(
            Fan::from_i64(
                2,
                &[&[1, 0], &[0, 1], &[-1, -1]],
                &[&[0, 1], &[1, 2], &[0, 2]],
            )
            .unwrap(),
        )
        .unwrap();
        let c = classify(&cp2).unwrap();
        assert!(c.elliptic);
        assert_eq!(c.block_dims, vec![2]);
        assert_eq!(betti_numbers(&cp2).unwrap(), vec![1, 1, 1]);

        let hex = validate(
            Fan::from_i64(
                2,
                &[&[1, 0], &[1, 1], &[0, 1], &[-1, 0], &[-1, -1], &[0, -1]],
                &[&[0, 1], &[1, 2], &[2, 3], &[3, 4], &[4, 5], &[0, 5]],
            )
            .unwrap(),
        )
        .unwrap();
        let c = classify(&hex).unwrap();
        assert!(!c.elliptic);
        assert!(c.blocks.is_empty());
        assert!(c.reason.unwrap().contains("overlapping minimal non-faces"));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(3, 0), 1);
        assert_eq!(binomial(2, 3), 0);
    }
}
