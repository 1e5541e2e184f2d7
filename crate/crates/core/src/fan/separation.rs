//! Separating functionals for pairs of simplicial cones.
//!
//! Two simplicial cones with shared rays `tau` meet exactly in `cone(tau)` iff
//! some linear functional vanishes on `tau`, is positive on the remaining rays
//! of the first cone and negative on those of the second. Strict inequalities
//! are homogeneous, so they are scaled to `>= 1` and the resulting system is
//! decided by Fourier-Motzkin elimination over the rationals.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::lattice::{kernel_basis, primitive, IntMatrix};

/// `coeffs . y >= rhs`
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Constraint {
    coeffs: Vec<BigRational>,
    rhs: BigRational,
}

impl Constraint {
    /// Scales so the last nonzero coefficient has absolute value one, which
    /// makes duplicate rows collide in a hash set.
    fn normalized(mut self) -> Self {
        if let Some(c) = self.coeffs.iter().rev().find(|c| !c.is_zero()).cloned() {
            let s = c.abs();
            for x in &mut self.coeffs {
                *x /= &s;
            }
            self.rhs /= s;
        }
        self
    }
}

/// Finds an integer functional `l` with `l.v = 0` for every `v` in `zero`,
/// `l.v > 0` for `positive` and `l.v < 0` for `negative`, or `None` if the
/// system is infeasible. The returned functional is primitive.
pub fn separating_functional(
    dim: usize,
    zero: &[&[BigInt]],
    positive: &[&[BigInt]],
    negative: &[&[BigInt]],
) -> Option<Vec<BigInt>> {
    // l = K y with the columns of K spanning the annihilator of `zero`.
    let basis = if zero.is_empty() {
        IntMatrix::identity(dim).to_rows()
    } else {
        let rows: Vec<Vec<BigInt>> = zero.iter().map(|v| v.to_vec()).collect();
        kernel_basis(&IntMatrix::from_rows(&rows).expect("rays share the ambient dimension"))
    };
    let k = basis.len();

    let project = |v: &[BigInt], sign: i32| -> Vec<BigRational> {
        basis
            .iter()
            .map(|b| {
                let dot: BigInt = b.iter().zip(v).map(|(x, y)| x * y).sum();
                BigRational::from_integer(if sign < 0 { -dot } else { dot })
            })
            .collect()
    };
    let system: Vec<Constraint> = positive
        .iter()
        .map(|v| project(v, 1))
        .chain(negative.iter().map(|v| project(v, -1)))
        .map(|coeffs| Constraint {
            coeffs,
            rhs: BigRational::one(),
        })
        .collect();

    let y = solve(system, k)?;
    let scale = y.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let y_int: Vec<BigInt> = y.iter().map(|q| (q * &scale).to_integer()).collect();
    let functional: Vec<BigInt> = (0..dim)
        .map(|i| basis.iter().zip(&y_int).map(|(b, c)| &b[i] * c).sum())
        .collect();
    let functional = primitive(&functional).ok()?;

    let dot = |v: &[BigInt]| -> BigInt { functional.iter().zip(v).map(|(a, b)| a * b).sum() };
    assert!(
        zero.iter().all(|v| dot(v).is_zero())
            && positive.iter().all(|v| dot(v).is_positive())
            && negative.iter().all(|v| dot(v).is_negative()),
        "Fourier-Motzkin produced an invalid certificate"
    );
    Some(functional)
}

/// Feasibility of `coeffs . y >= rhs` over `Q^k`, with a witness.
fn solve(system: Vec<Constraint>, k: usize) -> Option<Vec<BigRational>> {
    // levels[j] holds the constraints involving only y_0..=y_j.
    let mut levels: Vec<Vec<Constraint>> = vec![Vec::new(); k];
    let mut current = dedup(system);
    for var in (0..k).rev() {
        levels[var] = current.clone();
        let (mut lower, mut upper, mut rest) = (Vec::new(), Vec::new(), Vec::new());
        for c in current {
            let a = &c.coeffs[var];
            if a.is_positive() {
                lower.push(c);
            } else if a.is_negative() {
                upper.push(c);
            } else {
                rest.push(c);
            }
        }
        for lo in &lower {
            for up in &upper {
                let (a, b) = (lo.coeffs[var].clone(), -up.coeffs[var].clone());
                let coeffs = lo
                    .coeffs
                    .iter()
                    .zip(&up.coeffs)
                    .map(|(x, y)| x * &b + y * &a)
                    .collect();
                rest.push(Constraint {
                    coeffs,
                    rhs: &lo.rhs * &b + &up.rhs * &a,
                });
            }
        }
        current = dedup(rest);
    }
    if current.iter().any(|c| c.rhs.is_positive()) {
        return None;
    }

    let mut y: Vec<BigRational> = vec![BigRational::zero(); k];
    for var in 0..k {
        let mut lo: Option<BigRational> = None;
        let mut hi: Option<BigRational> = None;
        for c in &levels[var] {
            let a = &c.coeffs[var];
            if a.is_zero() {
                continue;
            }
            let partial: BigRational = (0..var).map(|i| &c.coeffs[i] * &y[i]).sum();
            let bound = (&c.rhs - partial) / a;
            if a.is_positive() {
                if lo.as_ref().is_none_or(|l| bound > *l) {
                    lo = Some(bound);
                }
            } else if hi.as_ref().is_none_or(|h| bound < *h) {
                hi = Some(bound);
            }
        }
        y[var] = match (lo, hi) {
            (None, None) => BigRational::zero(),
            (Some(l), None) => l.ceil(),
            (None, Some(h)) => h.floor(),
            (Some(l), Some(h)) => {
                let c = l.ceil();
                if c <= h {
                    c
                } else {
                    l
                }
            }
        };
    }
    Some(y)
}

fn dedup(system: Vec<Constraint>) -> Vec<Constraint> {
    let mut seen = HashSet::new();
    system
        .into_iter()
        .map(Constraint::normalized)
        .filter(|c| seen.insert(c.clone()))
        .collect()
}
