//! Fans of simplicial rational cones and their geometric validation.

mod separation;

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::lattice::{
    cokernel_invariants, determinant, ints, lattice_spans, primitive, rank, IntMatrix,
};

pub use separation::separating_functional;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FanError {
    #[error("ambient dimension must be at least 1")]
    InvalidDimension,
    #[error("fan has no maximal cones")]
    NoCones,
    #[error("ray {ray} has length {len}, expected {dim}")]
    RayLength { ray: usize, len: usize, dim: usize },
    #[error("ray {0} is the zero vector")]
    ZeroRay(usize),
    #[error("NonPrimitiveRay: ray {0} is not primitive")]
    NonPrimitiveRay(usize),
    #[error("DuplicateRay: rays {0} and {1} coincide")]
    DuplicateRay(usize, usize),
    #[error("cone {cone} references ray {index}, but there are only {rays} rays")]
    RayIndexOutOfRange {
        cone: usize,
        index: usize,
        rays: usize,
    },
    #[error("cone {0} is empty")]
    EmptyCone(usize),
    #[error("cone {0} lists a ray more than once")]
    RepeatedRay(usize),
    #[error("ray {0} lies in no maximal cone")]
    UnusedRay(usize),
    #[error("cone {inner} is contained in cone {outer}")]
    NestedCones { inner: usize, outer: usize },
    #[error("NotSimplicial: rays of cone {0} are linearly dependent")]
    NotSimplicial(usize),
    #[error("FanAxiomViolation: cones {0} and {1} do not meet in a common face")]
    FanAxiomViolation(usize, usize),
    #[error("NotComplete: {0}")]
    NotComplete(IncompletenessWitness),
    #[error("cone {0} is not full-dimensional")]
    NotFullDimensional(usize),
    #[error("no maximal cone with index {0}")]
    UnknownCone(usize),
}

/// Certificate that the support of a fan is not all of `R^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IncompletenessWitness {
    /// A maximal cone of dimension below `n`.
    LowDimensionalCone { cone: usize },
    /// A wall lying in a single maximal cone; the far side of it is uncovered.
    OpenWall { wall: Vec<usize>, cone: usize },
}

impl fmt::Display for IncompletenessWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::LowDimensionalCone { cone } => {
                write!(f, "maximal cone {cone} is not full-dimensional")
            }
            Self::OpenWall { wall, cone } => {
                write!(f, "wall {wall:?} lies only in maximal cone {cone}")
            }
        }
    }
}

/// A finite set of simplicial cones given by primitive ray generators and the
/// ray-index sets of the maximal cones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fan {
    dim: usize,
    rays: Vec<Vec<BigInt>>,
    max_cones: Vec<Vec<usize>>,
}

impl Fan {
    /// Checks the structural invariants. Rays must already be primitive;
    /// cone index lists are sorted.
    pub fn new(
        dim: usize,
        rays: Vec<Vec<BigInt>>,
        max_cones: Vec<Vec<usize>>,
    ) -> Result<Self, FanError> {
        if dim == 0 {
            return Err(FanError::InvalidDimension);
        }
        if max_cones.is_empty() {
            return Err(FanError::NoCones);
        }
        let mut seen: HashMap<&[BigInt], usize> = HashMap::new();
        for (i, r) in rays.iter().enumerate() {
            if r.len() != dim {
                return Err(FanError::RayLength {
                    ray: i,
                    len: r.len(),
                    dim,
                });
            }
            match primitive(r) {
                Err(_) => return Err(FanError::ZeroRay(i)),
                Ok(p) if p != *r => return Err(FanError::NonPrimitiveRay(i)),
                Ok(_) => {}
            }
            if let Some(&j) = seen.get(r.as_slice()) {
                return Err(FanError::DuplicateRay(j, i));
            }
            seen.insert(r, i);
        }

        let mut cones = Vec::with_capacity(max_cones.len());
        let mut used = vec![false; rays.len()];
        for (c, mut cone) in max_cones.into_iter().enumerate() {
            if cone.is_empty() {
                return Err(FanError::EmptyCone(c));
            }
            cone.sort_unstable();
            if cone.windows(2).any(|w| w[0] == w[1]) {
                return Err(FanError::RepeatedRay(c));
            }
            for &index in &cone {
                if index >= rays.len() {
                    return Err(FanError::RayIndexOutOfRange {
                        cone: c,
                        index,
                        rays: rays.len(),
                    });
                }
                used[index] = true;
            }
            cones.push(cone);
        }
        if let Some(i) = used.iter().position(|u| !u) {
            return Err(FanError::UnusedRay(i));
        }
        for (i, a) in cones.iter().enumerate() {
            for (j, b) in cones.iter().enumerate() {
                if i != j && is_subset(a, b) {
                    return Err(FanError::NestedCones { inner: i, outer: j });
                }
            }
        }
        Ok(Fan {
            dim,
            rays,
            max_cones: cones,
        })
    }

    /// Like [`Fan::new`], but first replaces every nonzero ray by its
    /// primitive generator.
    pub fn normalized(
        dim: usize,
        rays: Vec<Vec<BigInt>>,
        max_cones: Vec<Vec<usize>>,
    ) -> Result<Self, FanError> {
        let rays = rays
            .into_iter()
            .enumerate()
            .map(|(i, r)| primitive(&r).map_err(|_| FanError::ZeroRay(i)))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(dim, rays, max_cones)
    }

    pub fn from_i64(dim: usize, rays: &[&[i64]], max_cones: &[&[usize]]) -> Result<Self, FanError> {
        Self::new(
            dim,
            rays.iter().map(|r| ints(r)).collect(),
            max_cones.iter().map(|c| c.to_vec()).collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[Vec<BigInt>] {
        &self.rays
    }

    pub fn ray(&self, i: usize) -> &[BigInt] {
        &self.rays[i]
    }

    pub fn n_rays(&self) -> usize {
        self.rays.len()
    }

    pub fn max_cones(&self) -> &[Vec<usize>] {
        &self.max_cones
    }

    /// `dim x |cone|` matrix with the cone's ray generators as columns.
    pub fn ray_matrix(&self, cone: &[usize]) -> IntMatrix {
        let cols: Vec<Vec<BigInt>> = cone.iter().map(|&i| self.rays[i].clone()).collect();
        IntMatrix::from_columns(self.dim, &cols).expect("rays have the ambient dimension")
    }

    /// Index of the maximal cone whose ray set equals `cone` (any order).
    pub fn find_cone(&self, cone: &[usize]) -> Option<usize> {
        let mut sorted = cone.to_vec();
        sorted.sort_unstable();
        self.max_cones.iter().position(|c| *c == sorted)
    }

    /// Whether the ray set spans a cone of the fan, i.e. lies in a maximal cone.
    pub fn contains_cone(&self, cone: &[usize]) -> bool {
        let mut sorted = cone.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        self.max_cones.iter().any(|c| is_subset(&sorted, c))
    }

    fn is_simplicial_cone(&self, c: usize) -> bool {
        let cone = &self.max_cones[c];
        rank(&self.ray_matrix(cone)) == cone.len()
    }

    fn cones_meet_in_face(&self, a: usize, b: usize) -> bool {
        let (ca, cb) = (&self.max_cones[a], &self.max_cones[b]);
        let zero: Vec<&[BigInt]> = ca
            .iter()
            .filter(|i| cb.contains(i))
            .map(|&i| self.ray(i))
            .collect();
        let pos: Vec<&[BigInt]> = ca
            .iter()
            .filter(|i| !cb.contains(i))
            .map(|&i| self.ray(i))
            .collect();
        let neg: Vec<&[BigInt]> = cb
            .iter()
            .filter(|i| !ca.contains(i))
            .map(|&i| self.ray(i))
            .collect();
        separating_functional(self.dim, &zero, &pos, &neg).is_some()
    }
}

/// `a ⊆ b` for sorted index lists.
pub(crate) fn is_subset(a: &[usize], b: &[usize]) -> bool {
    let mut it = b.iter();
    a.iter().all(|x| it.any(|y| y == x))
}

/// A fan whose cones are simplicial and pairwise meet in common faces.
#[derive(Clone, Debug)]
pub struct ValidatedFan {
    fan: Fan,
    walls: BTreeMap<Vec<usize>, Vec<usize>>,
    multiplicities: BTreeMap<usize, BigInt>,
}

/// Checks simpliciality and the fan axiom, then caches walls and
/// multiplicities.
pub fn validate(fan: Fan) -> Result<ValidatedFan, FanError> {
    if let Some(c) = (0..fan.max_cones.len()).find(|&c| !fan.is_simplicial_cone(c)) {
        return Err(FanError::NotSimplicial(c));
    }
    let m = fan.max_cones.len();
    for a in 0..m {
        for b in a + 1..m {
            if !fan.cones_meet_in_face(a, b) {
                return Err(FanError::FanAxiomViolation(a, b));
            }
        }
    }
    Ok(ValidatedFan::from_checked(fan))
}

impl ValidatedFan {
    fn from_checked(fan: Fan) -> Self {
        let n = fan.dim;
        let mut walls: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
        let mut multiplicities = BTreeMap::new();
        for (c, cone) in fan.max_cones.iter().enumerate() {
            if cone.len() == n {
                let det = determinant(&fan.ray_matrix(cone)).expect("square");
                multiplicities.insert(c, det.abs());
            }
            if cone.len() + 1 >= n && cone.len() <= n {
                for wall in subsets_of_size(cone, n - 1) {
                    walls.entry(wall).or_default().push(c);
                }
            }
        }
        // An (n-1)-cone can border at most two n-cones of a fan.
        debug_assert!(walls.values().all(|cs| cs.len() <= 2));
        ValidatedFan {
            fan,
            walls,
            multiplicities,
        }
    }

    pub fn fan(&self) -> &Fan {
        &self.fan
    }

    pub fn into_fan(self) -> Fan {
        self.fan
    }

    pub fn dim(&self) -> usize {
        self.fan.dim
    }

    /// Each `(n-1)`-subset of a maximal cone with the maximal cones containing it.
    pub fn walls(&self) -> &BTreeMap<Vec<usize>, Vec<usize>> {
        &self.walls
    }

    /// Multiplicities of the full-dimensional maximal cones.
    pub fn multiplicities(&self) -> &BTreeMap<usize, BigInt> {
        &self.multiplicities
    }

    /// A reason the fan fails to cover `R^n`, if any.
    ///
    /// A pure fan of full-dimensional cones in which every wall bounds exactly
    /// two cones has closed support with empty boundary, hence covers `R^n`.
    pub fn completeness_witness(&self) -> Option<IncompletenessWitness> {
        let n = self.fan.dim;
        if let Some(cone) = self.fan.max_cones.iter().position(|c| c.len() < n) {
            return Some(IncompletenessWitness::LowDimensionalCone { cone });
        }
        self.walls
            .iter()
            .find(|(_, cones)| cones.len() != 2)
            .map(|(wall, cones)| IncompletenessWitness::OpenWall {
                wall: wall.clone(),
                cone: cones[0],
            })
    }

    pub fn is_complete(&self) -> bool {
        self.completeness_witness().is_none()
    }

    pub fn require_complete(&self) -> Result<(), FanError> {
        match self.completeness_witness() {
            Some(w) => Err(FanError::NotComplete(w)),
            None => Ok(()),
        }
    }

    /// `|det|` of the ray matrix of a full-dimensional maximal cone.
    pub fn multiplicity(&self, cone: usize) -> Result<BigInt, FanError> {
        if cone >= self.fan.max_cones.len() {
            return Err(FanError::UnknownCone(cone));
        }
        self.multiplicities
            .get(&cone)
            .cloned()
            .ok_or(FanError::NotFullDimensional(cone))
    }

    /// Every maximal cone is generated by part of a lattice basis.
    pub fn is_smooth(&self) -> bool {
        self.fan.max_cones.iter().all(|cone| {
            let inv = cokernel_invariants(&self.fan.ray_matrix(cone));
            inv.torsion.is_empty()
        })
    }

    /// Whether the ray generators span `Z^n`. This is the criterion for the
    /// underlying space of the toric variety to be simply connected.
    pub fn is_simply_connected(&self) -> Result<bool, FanError> {
        self.require_complete()?;
        Ok(lattice_spans(&self.fan.rays, self.fan.dim))
    }

    pub fn report(&self) -> ValidationReport {
        let complete = self.is_complete();
        let smooth = self.is_smooth();
        let simply_connected = complete && lattice_spans(&self.fan.rays, self.fan.dim);
        let failures = self
            .completeness_witness()
            .map(|w| vec![format!("NotComplete: {w}")])
            .unwrap_or_default();
        ValidationReport {
            simplicial: true,
            fan_axiom_ok: true,
            complete,
            smooth,
            simply_connected,
            multiplicities: self.multiplicities.clone(),
            failures,
        }
    }
}

/// Summary of every geometric check, including the ones that fail.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub simplicial: bool,
    pub fan_axiom_ok: bool,
    pub complete: bool,
    pub smooth: bool,
    /// Underlying-space criterion: the rays generate `Z^n`.
    pub simply_connected: bool,
    pub multiplicities: BTreeMap<usize, BigInt>,
    pub failures: Vec<String>,
}

impl ValidationReport {
    /// Valid, simplicial and complete.
    pub fn is_ok(&self) -> bool {
        self.simplicial && self.fan_axiom_ok && self.complete && self.failures.is_empty()
    }

    /// Report for input that did not even form a [`Fan`].
    pub fn structural_failure(err: &FanError) -> Self {
        ValidationReport {
            simplicial: false,
            fan_axiom_ok: false,
            complete: false,
            smooth: false,
            simply_connected: false,
            multiplicities: BTreeMap::new(),
            failures: vec![err.to_string()],
        }
    }
}

/// Runs every check and collects all failures instead of stopping at the first.
pub fn validation_report(fan: &Fan) -> ValidationReport {
    let non_simplicial: Vec<usize> = (0..fan.max_cones.len())
        .filter(|&c| !fan.is_simplicial_cone(c))
        .collect();
    if !non_simplicial.is_empty() {
        let mut report = ValidationReport {
            simplicial: false,
            fan_axiom_ok: false,
            complete: false,
            smooth: false,
            simply_connected: false,
            multiplicities: BTreeMap::new(),
            failures: non_simplicial
                .iter()
                .map(|&c| FanError::NotSimplicial(c).to_string())
                .collect(),
        };
        report
            .failures
            .push("fan axiom not checked for non-simplicial cones".into());
        return report;
    }
    let m = fan.max_cones.len();
    let mut violations = Vec::new();
    for a in 0..m {
        for b in a + 1..m {
            if !fan.cones_meet_in_face(a, b) {
                violations.push(FanError::FanAxiomViolation(a, b).to_string());
            }
        }
    }
    let checked = ValidatedFan::from_checked(fan.clone());
    if violations.is_empty() {
        return checked.report();
    }
    ValidationReport {
        simplicial: true,
        fan_axiom_ok: false,
        complete: false,
        smooth: checked.is_smooth(),
        simply_connected: false,
        multiplicities: checked.multiplicities,
        failures: violations,
    }
}

pub(crate) fn subsets_of_size(set: &[usize], k: usize) -> Vec<Vec<usize>> {
    fn go(set: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..set.len() {
            if set.len() - i < k - cur.len() {
                break;
            }
            cur.push(set[i]);
            go(set, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= set.len() {
        go(set, k, 0, &mut Vec::new(), &mut out);
    }
    out
}

impl fmt::Display for Fan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rays: Vec<String> = self
            .rays
            .iter()
            .map(|r| {
                let parts: Vec<String> = r.iter().map(ToString::to_string).collect();
                format!("({})", parts.join(","))
            })
            .collect();
        write!(
            f,
            "fan in dim {} with rays {} and cones {:?}",
            self.dim,
            rays.join(" "),
            self.max_cones
        )
    }
}

/// Whether `sum_i weights_i * rays_i = 0`.
pub fn is_linear_relation(fan: &Fan, weights: &[BigInt]) -> bool {
    (0..fan.dim).all(|k| {
        fan.rays
            .iter()
            .zip(weights)
            .map(|(r, w)| &r[k] * w)
            .sum::<BigInt>()
            .is_zero()
    })
}

/// Number of cones of each dimension `0..=dim`, counting the zero cone once.
pub fn cone_counts(fan: &Fan) -> Vec<usize> {
    let mut faces: Vec<std::collections::BTreeSet<Vec<usize>>> =
        vec![Default::default(); fan.dim + 1];
    for cone in &fan.max_cones {
        for (k, level) in faces.iter_mut().enumerate().take(cone.len() + 1).skip(1) {
            level.extend(subsets_of_size(cone, k));
        }
    }
    let mut counts: Vec<usize> = faces.iter().map(|s| s.len()).collect();
    counts[0] = 1;
    counts
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn cp2() -> Fan {
        Fan::from_i64(
            2,
            &[&[1, 0], &[0, 1], &[-1, -1]],
            &[&[0, 1], &[1, 2], &[0, 2]],
        )
        .unwrap()
    }

    fn hirzebruch(a: i64) -> Fan {
        Fan::from_i64(
            2,
            &[&[1, 0], &[0, 1], &[-1, a], &[0, -1]],
            &[&[0, 1], &[1, 2], &[2, 3], &[0, 3]],
        )
        .unwrap()
    }

    // Exhaustive search over small integer functionals.
    fn small_separator(fan: &Fan, a: usize, b: usize) -> bool {
        let (ca, cb) = (&fan.max_cones()[a], &fan.max_cones()[b]);
        let n = fan.dim();
        let range: Vec<i64> = (-3..=3).collect();
        let mut l = vec![0i64; n];
        fn rec(
            i: usize,
            l: &mut Vec<i64>,
            range: &[i64],
            f: &mut dyn FnMut(&[i64]) -> bool,
        ) -> bool {
            if i == l.len() {
                return f(l);
            }
            for &x in range {
                l[i] = x;
                if rec(i + 1, l, range, f) {
                    return true;
                }
            }
            false
        }
        let dot = |l: &[i64], r: &[BigInt]| -> BigInt {
            l.iter().zip(r).map(|(x, y)| BigInt::from(*x) * y).sum()
        };
        rec(0, &mut l, &range, &mut |l| {
            ca.iter().all(|i| {
                let d = dot(l, fan.ray(*i));
                if cb.contains(i) {
                    d.is_zero()
                } else {
                    d.is_positive()
                }
            }) && cb
                .iter()
                .filter(|i| !ca.contains(i))
                .all(|i| dot(l, fan.ray(*i)).is_negative())
        })
    }

    #[test]
    fn cp2_is_valid_and_separators_exist() {
        let fan = cp2();
        for (a, b) in [(0, 1), (1, 2), (0, 2)] {
            assert!(small_separator(&fan, a, b));
        }
        assert!(validate(fan).is_ok());
    }

    #[test]
    fn dependent_rays_are_not_simplicial() {
        let fan = Fan::from_i64(2, &[&[1, 0], &[-1, 0], &[0, 1]], &[&[0, 1], &[2]]).unwrap();
        assert_eq!(validate(fan).unwrap_err(), FanError::NotSimplicial(0));
    }

    #[test]
    fn nested_cone_overlap_violates_fan_axiom() {
        let fan = Fan::from_i64(2, &[&[1, 0], &[0, 1], &[1, 1]], &[&[0, 1], &[0, 2]]).unwrap();
        assert!(!small_separator(&fan, 0, 1));
        assert_eq!(
            validate(fan).unwrap_err(),
            FanError::FanAxiomViolation(0, 1)
        );
    }

    #[test]
    fn structural_errors() {
        assert_eq!(
            Fan::from_i64(2, &[&[1, 0], &[1, 0]], &[&[0], &[1]]).unwrap_err(),
            FanError::DuplicateRay(0, 1)
        );
        assert_eq!(
            Fan::from_i64(2, &[&[2, 0]], &[&[0]]).unwrap_err(),
            FanError::NonPrimitiveRay(0)
        );
        assert_eq!(
            Fan::from_i64(0, &[], &[&[]]).unwrap_err(),
            FanError::InvalidDimension
        );
        assert_eq!(
            Fan::from_i64(2, &[&[1, 0], &[0, 1]], &[&[0]]).unwrap_err(),
            FanError::UnusedRay(1)
        );
        assert_eq!(
            Fan::from_i64(2, &[&[1, 0], &[0, 1]], &[&[0, 1], &[1]]).unwrap_err(),
            FanError::NestedCones { inner: 1, outer: 0 }
        );
        assert_eq!(
            Fan::from_i64(2, &[&[1, 0]], &[&[0, 3]]).unwrap_err(),
            FanError::RayIndexOutOfRange {
                cone: 0,
                index: 3,
                rays: 1
            }
        );
        let n = Fan::normalized(2, vec![ints(&[2, 4]), ints(&[0, 3])], vec![vec![1, 0]]).unwrap();
        assert_eq!(n.rays(), &[ints(&[1, 2]), ints(&[0, 1])]);
        assert_eq!(n.max_cones(), &[vec![0, 1]]);
    }

    #[test]
    fn completeness_examples() {
        let vf = validate(cp2()).unwrap();
        assert!(vf.is_complete());
        assert!(vf.walls().values().all(|c| c.len() == 2));
        assert_eq!(vf.walls().len(), 3);

        let single = validate(Fan::from_i64(2, &[&[1, 0], &[0, 1]], &[&[0, 1]]).unwrap()).unwrap();
        assert!(!single.is_complete());
        assert!(matches!(
            single.completeness_witness(),
            Some(IncompletenessWitness::OpenWall { .. })
        ));

        for a in -3..=3 {
            assert!(validate(hirzebruch(a)).unwrap().is_complete());
        }

        let cp1 = validate(Fan::from_i64(1, &[&[1], &[-1]], &[&[0], &[1]]).unwrap()).unwrap();
        assert!(cp1.is_complete());
        let half = validate(Fan::from_i64(1, &[&[1]], &[&[0]]).unwrap()).unwrap();
        assert!(!half.is_complete());
    }

    #[test]
    fn low_dimensional_cone_is_incomplete() {
        let fan = Fan::from_i64(2, &[&[1, 0], &[0, 1], &[-1, 0]], &[&[0, 1], &[2]]).unwrap();
        let vf = validate(fan).unwrap();
        assert_eq!(
            vf.completeness_witness(),
            Some(IncompletenessWitness::LowDimensionalCone { cone: 1 })
        );
        assert!(matches!(
            vf.is_simply_connected(),
            Err(FanError::NotComplete(_))
        ));
    }

    #[test]
    fn multiplicity_examples() {
        let p112 = validate(
            Fan::from_i64(
                2,
                &[&[1, 0], &[0, 1], &[-1, -2]],
                &[&[0, 1], &[1, 2], &[0, 2]],
            )
            .unwrap(),
        )
        .unwrap();
        assert_eq!(p112.multiplicity(0).unwrap(), BigInt::one());
        assert_eq!(p112.multiplicity(2).unwrap(), BigInt::from(2));
        assert_eq!(p112.multiplicity(1).unwrap(), BigInt::one());
        assert!(!p112.is_smooth());
        assert!(p112.is_simply_connected().unwrap());
        let low = validate(Fan::from_i64(2, &[&[1, 0]], &[&[0]]).unwrap()).unwrap();
        assert_eq!(low.multiplicity(0), Err(FanError::NotFullDimensional(0)));
        assert_eq!(low.multiplicity(4), Err(FanError::UnknownCone(4)));
    }

    #[test]
    fn simple_connectivity_examples() {
        assert!(validate(cp2()).unwrap().is_simply_connected().unwrap());
        let diag = Fan::from_i64(
            2,
            &[&[1, 1], &[-1, 1], &[-1, -1], &[1, -1]],
            &[&[0, 1], &[1, 2], &[2, 3], &[0, 3]],
        )
        .unwrap();
        let vf = validate(diag).unwrap();
        assert!(vf.is_complete());
        assert!(!vf.is_simply_connected().unwrap());
        let report = vf.report();
        assert!(report.is_ok());
        assert!(!report.simply_connected);
        assert!(report
            .multiplicities
            .values()
            .all(|m| *m == BigInt::from(2)));
    }

    #[test]
    fn report_collects_failures() {
        let fan = Fan::from_i64(2, &[&[1, 0], &[0, 1], &[1, 1]], &[&[0, 1], &[0, 2]]).unwrap();
        let report = validation_report(&fan);
        assert!(report.simplicial);
        assert!(!report.fan_axiom_ok);
        assert!(!report.is_ok());
        assert!(report.failures[0].starts_with("FanAxiomViolation"));

        let report = validation_report(&cp2());
        assert!(report.is_ok() && report.smooth && report.simply_connected);
    }

    #[test]
    fn cone_counts_of_cp2() {
        assert_eq!(cone_counts(&cp2()), vec![1, 3, 3]);
    }
}
