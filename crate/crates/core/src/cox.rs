//! Cox's quotient presentation `X = Y(Σ) / G`.
//!
//! `Y(Σ)` is `C^I` minus the coordinate subspaces cut out by the minimal
//! non-faces, and `G` is the group of characters dual to the class group
//! `Z^I / {(<m, v_i>)_i : m in Z^n}`. Coordinate `z_i` is scaled by the
//! character given by the class of the `i`-th unit vector.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::complex::{classify, underlying_complex, Classification, ComplexError};
use crate::fan::{is_subset, FanError, ValidatedFan};
use crate::lattice::{
    cokernel_invariants, hermite_normal_form, kernel_basis, smith_normal_form, CokernelInvariants,
    IntMatrix,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoxError {
    #[error(transparent)]
    Fan(#[from] FanError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error("fan is not rationally elliptic: {0}")]
    NotElliptic(String),
}

/// `Y(Σ) = {z in C^I : the zero set of z is a face of Σ}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct YDescription {
    pub ambient_dim: usize,
    /// Minimal non-faces `S`; the subspace `{z_i = 0 for i in S}` is removed.
    pub removed_subspaces: Vec<Vec<usize>>,
    /// `n_i` with `Y = prod_i (C^(n_i + 1) - {0})`, when `Y` splits that way.
    pub product_factors: Option<Vec<usize>>,
}

impl YDescription {
    /// Whether a point with the given set of vanishing coordinates lies in `Y`.
    pub fn contains(&self, zero_set: &[usize]) -> bool {
        let mut sorted = zero_set.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        !self.removed_subspaces.iter().any(|s| is_subset(s, &sorted))
    }
}

/// Character of `G` by which one coordinate is scaled, written in
/// `Z^free_rank ⊕ ⊕_j Z/torsion_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Weight {
    pub free: Vec<BigInt>,
    /// Residues in `[0, torsion_j)`.
    pub torsion: Vec<BigInt>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupPresentation {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
    pub weights: Vec<Weight>,
}

impl GroupPresentation {
    /// `free_rank x |I|` matrix of the free parts of the weights.
    pub fn free_weight_matrix(&self) -> IntMatrix {
        let cols: Vec<Vec<BigInt>> = self.weights.iter().map(|w| w.free.clone()).collect();
        IntMatrix::from_columns(self.free_rank, &cols).expect("weights share the free rank")
    }

    /// The lattice of `x in Z^I` with `sum_i x_i w_i = 0`, as HNF rows.
    ///
    /// Two presentations describe the same group action up to isomorphism of
    /// `G` exactly when these lattices coincide.
    pub fn relation_lattice(&self) -> IntMatrix {
        let n = self.weights.len();
        let t = self.torsion.len();
        let mut m = IntMatrix::zeros(self.free_rank + t, n + t);
        for (i, w) in self.weights.iter().enumerate() {
            for (k, x) in w.free.iter().enumerate() {
                m.set(k, i, x.clone());
            }
            for (k, x) in w.torsion.iter().enumerate() {
                m.set(self.free_rank + k, i, x.clone());
            }
        }
        for (k, d) in self.torsion.iter().enumerate() {
            m.set(self.free_rank + k, n + k, d.clone());
        }
        let rows: Vec<Vec<BigInt>> = kernel_basis(&m)
            .into_iter()
            .map(|v| v[..n].to_vec())
            .collect();
        canonical_rows(&rows, n)
    }

    pub fn equivalent(&self, other: &GroupPresentation) -> bool {
        self.weights.len() == other.weights.len()
            && self.torsion == other.torsion
            && self.free_rank == other.free_rank
            && self.relation_lattice() == other.relation_lattice()
    }
}

/// HNF of the row lattice with zero rows removed.
pub(crate) fn canonical_rows(rows: &[Vec<BigInt>], width: usize) -> IntMatrix {
    if rows.is_empty() {
        return IntMatrix::zeros(0, width);
    }
    let h = hermite_normal_form(&IntMatrix::from_rows(rows).expect("rows share a width"));
    let kept: Vec<Vec<BigInt>> = h
        .to_rows()
        .into_iter()
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .collect();
    if kept.is_empty() {
        IntMatrix::zeros(0, width)
    } else {
        IntMatrix::from_rows(&kept).expect("rows share a width")
    }
}

/// Finite stabilizer of a maximal cone's fixed points, as invariant factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeStabilizer {
    pub cone: usize,
    pub invariants: Vec<BigInt>,
}

impl ConeStabilizer {
    pub fn order(&self) -> BigInt {
        self.invariants.iter().product()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientPresentation {
    pub y: YDescription,
    pub group: GroupPresentation,
    /// `G` is a torus acting freely.
    pub smooth_case: bool,
    pub stabilizers: Vec<ConeStabilizer>,
}

/// Ranks of the rational homotopy groups of the model space, by degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomotopyDegrees {
    pub even: Vec<usize>,
    pub odd: Vec<usize>,
}

impl HomotopyDegrees {
    pub fn total_dimension(&self) -> usize {
        self.even.len() + self.odd.len()
    }
}

pub fn y_description(vf: &ValidatedFan) -> YDescription {
    let complex = underlying_complex(vf);
    let product_factors = complex
        .join_decomposition()
        .map(|blocks| blocks.iter().map(|b| b.len() - 1).collect());
    YDescription {
        ambient_dim: complex.n_vertices(),
        removed_subspaces: complex.minimal_nonfaces(),
        product_factors,
    }
}

/// `|I| x n` matrix sending `m` to `(<m, v_i>)_i`.
fn character_map(vf: &ValidatedFan) -> IntMatrix {
    IntMatrix::from_rows(vf.fan().rays()).expect("rays share the ambient dimension")
}

/// The class group `Z^I / image(m -> (<m, v_i>)_i)`.
pub fn class_group(vf: &ValidatedFan) -> Result<CokernelInvariants, CoxError> {
    vf.require_complete()?;
    Ok(cokernel_invariants(&character_map(vf)))
}

/// Weights of the `G`-action in an SNF-split basis of the class group, with
/// the free parts brought to Hermite normal form.
pub fn weight_matrix(vf: &ValidatedFan) -> Result<GroupPresentation, CoxError> {
    vf.require_complete()?;
    let a = character_map(vf);
    let snf = smith_normal_form(&a);
    let factors = snf.invariant_factors();
    let r = factors.len();
    let n_rays = a.rows();
    let torsion_rows: Vec<usize> = (0..r).filter(|&k| !factors[k].is_one()).collect();
    let torsion: Vec<BigInt> = torsion_rows.iter().map(|&k| factors[k].clone()).collect();

    let free_rows: Vec<Vec<BigInt>> = (r..n_rays).map(|k| snf.u.row(k).to_vec()).collect();
    let free = canonical_free_part(&free_rows, n_rays);

    let weights = (0..n_rays)
        .map(|i| Weight {
            free: (0..free.rows()).map(|k| free.get(k, i).clone()).collect(),
            torsion: torsion_rows
                .iter()
                .map(|&k| snf.u.get(k, i).mod_floor(&factors[k]))
                .collect(),
        })
        .collect();
    Ok(GroupPresentation {
        free_rank: n_rays - r,
        torsion,
        weights,
    })
}

// Rows of U spanning the free quotient are linearly independent, so the HNF
// keeps every row and only changes the basis of the free part.
fn canonical_free_part(rows: &[Vec<BigInt>], width: usize) -> IntMatrix {
    let h = canonical_rows(rows, width);
    debug_assert_eq!(h.rows(), rows.len());
    h
}

/// Invariant factors of `Z^n / span(rays of the cone)`.
pub fn stabilizer_invariants(vf: &ValidatedFan, cone: usize) -> Result<Vec<BigInt>, CoxError> {
    vf.multiplicity(cone)?;
    let rays = vf.fan().ray_matrix(&vf.fan().max_cones()[cone]);
    Ok(cokernel_invariants(&rays).torsion)
}

pub fn quotient_presentation(vf: &ValidatedFan) -> Result<QuotientPresentation, CoxError> {
    let classification = classify(vf)?;
    if !classification.elliptic {
        return Err(CoxError::NotElliptic(
            classification.reason.unwrap_or_default(),
        ));
    }
    let y = y_description(vf);
    let factors = y.product_factors.as_ref().expect("elliptic fans split Y");
    assert_eq!(factors.iter().sum::<usize>(), vf.dim());
    assert_eq!(*factors, classification.block_dims);

    let group = weight_matrix(vf)?;
    assert_eq!(group.free_rank, classification.blocks.len());

    let stabilizers = (0..vf.fan().max_cones().len())
        .map(|c| {
            stabilizer_invariants(vf, c).map(|invariants| ConeStabilizer {
                cone: c,
                invariants,
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    let smooth_case = vf.is_smooth();
    if smooth_case {
        assert!(group.torsion.is_empty());
        assert!(stabilizers.iter().all(|s| s.invariants.is_empty()));
    }
    Ok(QuotientPresentation {
        y,
        group,
        smooth_case,
        stabilizers,
    })
}

/// Degrees of the rational homotopy of `prod_i (C^(n_i + 1) - {0}) / G`:
/// one generator in degree 2 per block and one in degree `2 n_i + 1`.
pub fn rational_homotopy_degrees(c: &Classification) -> Result<HomotopyDegrees, CoxError> {
    if !c.elliptic {
        return Err(CoxError::NotElliptic(c.reason.clone().unwrap_or_default()));
    }
    Ok(HomotopyDegrees {
        even: vec![2; c.block_dims.len()],
        odd: c.block_dims.iter().map(|n| 2 * n + 1).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::{validate, Fan};
    use crate::lattice::ints;

    fn vf(dim: usize, rays: &[&[i64]], cones: &[&[usize]]) -> ValidatedFan {
        validate(Fan::from_i64(dim, rays, cones).unwrap()).unwrap()
    }

    fn cp2() -> ValidatedFan {
        vf(
            2,
            &[&[1, 0], &[0, 1], &[-1, -1]],
            &[&[0, 1], &[1, 2], &[0, 2]],
        )
    }

    fn p112() -> ValidatedFan {
        vf(
            2,
            &[&[1, 0], &[-1, -2], &[0, 1]],
            &[&[0, 1], &[1, 2], &[0, 2]],
        )
    }

    fn hirzebruch(a: i64) -> ValidatedFan {
        vf(
            2,
            &[&[1, 0], &[0, 1], &[-1, a], &[0, -1]],
            &[&[0, 1], &[1, 2], &[2, 3], &[0, 3]],
        )
    }

    fn free_weights(g: &GroupPresentation) -> Vec<Vec<BigInt>> {
        g.weights.iter().map(|w| w.free.clone()).collect()
    }

    #[test]
    fn y_of_cp2_and_hirzebruch() {
        let y = y_description(&cp2());
        assert_eq!(y.removed_subspaces, vec![vec![0, 1, 2]]);
        assert_eq!(y.product_factors, Some(vec![2]));
        assert!(y.contains(&[0, 1]) && !y.contains(&[0, 1, 2]) && y.contains(&[]));

        let y = y_description(&hirzebruch(3));
        assert_eq!(y.removed_subspaces, vec![vec![0, 2], vec![1, 3]]);
        assert_eq!(y.product_factors, Some(vec![1, 1]));
    }

    #[test]
    fn class_groups() {
        let free = |r| CokernelInvariants {
            free_rank: r,
            torsion: vec![],
        };
        assert_eq!(class_group(&cp2()).unwrap(), free(1));
        assert_eq!(class_group(&hirzebruch(2)).unwrap(), free(2));
        assert_eq!(class_group(&p112()).unwrap(), free(1));
        let single = vf(2, &[&[1, 0], &[0, 1]], &[&[0, 1]]);
        assert!(matches!(
            class_group(&single),
            Err(CoxError::Fan(FanError::NotComplete(_)))
        ));
    }

    #[test]
    fn weights_of_cp2_and_p112() {
        let g = weight_matrix(&cp2()).unwrap();
        assert_eq!(free_weights(&g), vec![ints(&[1]); 3]);
        let g = weight_matrix(&p112()).unwrap();
        assert_eq!(free_weights(&g), vec![ints(&[1]), ints(&[1]), ints(&[2])]);
    }

    #[test]
    fn hirzebruch_weights_match_up_to_basis_change() {
        for a in -2..=3 {
            let g = weight_matrix(&hirzebruch(a)).unwrap();
            let expected = GroupPresentation {
                free_rank: 2,
                torsion: vec![],
                weights: [[1, 0], [0, 1], [1, 0], [a, 1]]
                    .iter()
                    .map(|w| Weight {
                        free: ints(w),
                        torsion: vec![],
                    })
                    .collect(),
            };
            assert!(g.equivalent(&expected), "a = {a}: {g:?}");
            let wrong = GroupPresentation {
                weights: [[1, 0], [0, 1], [1, 0], [a + 1, 1]]
                    .iter()
                    .map(|w| Weight {
                        free: ints(w),
                        torsion: vec![],
                    })
                    .collect(),
                ..expected
            };
            assert!(!g.equivalent(&wrong));
        }
    }

    #[test]
    fn relation_lattice_is_the_character_lattice() {
        for fan in [cp2(), p112(), hirzebruch(4)] {
            let g = weight_matrix(&fan).unwrap();
            let chars: Vec<Vec<BigInt>> = character_map(&fan).transpose().to_rows();
            assert_eq!(
                g.relation_lattice(),
                canonical_rows(&chars, fan.fan().n_rays())
            );
        }
    }

    #[test]
    fn torsion_weights_are_reduced() {
        // Complete, but the rays span an index-2 sublattice.
        let diag = vf(
            2,
            &[&[1, 1], &[-1, 1], &[-1, -1], &[1, -1]],
            &[&[0, 1], &[1, 2], &[2, 3], &[0, 3]],
        );
        let g = weight_matrix(&diag).unwrap();
        assert_eq!(g.free_rank, 2);
        assert_eq!(g.torsion, ints(&[2]));
        for w in &g.weights {
            assert!(w.torsion[0] >= BigInt::zero() && w.torsion[0] < BigInt::from(2));
        }
        let chars: Vec<Vec<BigInt>> = character_map(&diag).transpose().to_rows();
        assert_eq!(g.relation_lattice(), canonical_rows(&chars, 4));
    }

    #[test]
    fn stabilizers() {
        assert!(stabilizer_invariants(&cp2(), 0).unwrap().is_empty());
        let p = p112();
        // cone {(1,0), (-1,-2)}
        assert_eq!(stabilizer_invariants(&p, 0).unwrap(), ints(&[2]));
        let diag = vf(
            2,
            &[&[1, 1], &[1, -1], &[-1, 1], &[-1, -1]],
            &[&[0, 1], &[0, 2], &[2, 3], &[1, 3]],
        );
        assert_eq!(stabilizer_invariants(&diag, 0).unwrap(), ints(&[2]));
        let low = vf(2, &[&[1, 0]], &[&[0]]);
        assert!(matches!(
            stabilizer_invariants(&low, 0),
            Err(CoxError::Fan(FanError::NotFullDimensional(0)))
        ));
    }

    #[test]
    fn presentations() {
        let q = quotient_presentation(&cp2()).unwrap();
        assert!(q.smooth_case);
        assert_eq!(q.y.product_factors, Some(vec![2]));
        assert_eq!(free_weights(&q.group), vec![ints(&[1]); 3]);

        let q = quotient_presentation(&p112()).unwrap();
        assert!(!q.smooth_case);
        let orders: Vec<BigInt> = q.stabilizers.iter().map(ConeStabilizer::order).collect();
        assert_eq!(orders, ints(&[2, 1, 1]));

        let cp1xcp1 = vf(
            2,
            &[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]],
            &[&[0, 2], &[0, 3], &[1, 2], &[1, 3]],
        );
        let q = quotient_presentation(&cp1xcp1).unwrap();
        assert_eq!(q.y.product_factors, Some(vec![1, 1]));
        let expected = GroupPresentation {
            free_rank: 2,
            torsion: vec![],
            weights: [[1, 0], [1, 0], [0, 1], [0, 1]]
                .iter()
                .map(|w| Weight {
                    free: ints(w),
                    torsion: vec![],
                })
                .collect(),
        };
        assert!(q.group.equivalent(&expected));
        assert_eq!(free_weights(&q.group), free_weights(&expected));
    }

    #[test]
    fn hexagon_has_no_presentation() {
        let hex = vf(
            2,
            &[&[1, 0], &[1, 1], &[0, 1], &[-1, 0], &[-1, -1], &[0, -1]],
            &[&[0, 1], &[1, 2], &[2, 3], &[3, 4], &[4, 5], &[0, 5]],
        );
        let y = y_description(&hex);
        assert_eq!(y.removed_subspaces.len(), 9);
        assert_eq!(y.product_factors, None);
        assert!(matches!(
            quotient_presentation(&hex),
            Err(CoxError::NotElliptic(_))
        ));
        let c = classify(&hex).unwrap();
        assert!(rational_homotopy_degrees(&c).is_err());
    }

    #[test]
    fn homotopy_degrees() {
        let c = classify(&cp2()).unwrap();
        assert_eq!(
            rational_homotopy_degrees(&c).unwrap(),
            HomotopyDegrees {
                even: vec![2],
                odd: vec![5]
            }
        );
        let c = classify(&hirzebruch(1)).unwrap();
        let d = rational_homotopy_degrees(&c).unwrap();
        assert_eq!(
            d,
            HomotopyDegrees {
                even: vec![2, 2],
                odd: vec![3, 3]
            }
        );
        assert_eq!(d.total_dimension(), 4);
    }
}
