//! Named fans and fan surgeries.

use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::fan::{is_subset, Fan, FanError, ValidatedFan};
use crate::lattice::{determinant, ints, primitive, rank, smith_normal_form, IntMatrix};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeneratorError {
    #[error("InvalidDimension: dimension must be at least 1, got {0}")]
    InvalidDimension(usize),
    #[error("InvalidWeights: {0}")]
    InvalidWeights(String),
    #[error("InvalidSpec: {0}")]
    InvalidSpec(String),
    #[error("ConeNotFound: {0:?} is not a cone of the fan")]
    ConeNotFound(Vec<usize>),
    #[error(transparent)]
    Fan(#[from] FanError),
}

fn unit(dim: usize, i: usize) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); dim];
    v[i] = BigInt::one();
    v
}

fn all_but_one(block: &[usize]) -> Vec<Vec<usize>> {
    (0..block.len())
        .rev()
        .map(|skip| {
            block
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != skip)
                .map(|(_, &x)| x)
                .collect()
        })
        .collect()
}

/// `CP^n`: rays `e_1, ..., e_n, -(e_1 + ... + e_n)`, cones all `n`-subsets.
pub fn projective_space(n: usize) -> Result<Fan, GeneratorError> {
    if n == 0 {
        return Err(GeneratorError::InvalidDimension(0));
    }
    let mut rays: Vec<Vec<BigInt>> = (0..n).map(|i| unit(n, i)).collect();
    rays.push(vec![-BigInt::one(); n]);
    let cones = all_but_one(&(0..=n).collect::<Vec<_>>());
    Ok(Fan::new(n, rays, cones)?)
}

/// `P(q_0, ..., q_n)`: rays `v_i` with `sum q_i v_i = 0`, cones all `n`-subsets.
///
/// When some weight is 1, the last such index carries the dependent ray and
/// the others get the standard basis in order, so `P(1, ..., 1)` reproduces
/// [`projective_space`]. Otherwise the rays are the images of the unit
/// vectors in `Z^(n+1) / Z q`, computed from a Smith form of `q`. Rays are
/// made primitive, so weights that are not well formed give the fan of the
/// isomorphic well-formed space.
pub fn weighted_projective(weights: &[i64]) -> Result<Fan, GeneratorError> {
    if weights.len() < 2 {
        return Err(GeneratorError::InvalidWeights(
            "need at least two weights".into(),
        ));
    }
    if let Some(bad) = weights.iter().find(|&&q| q < 1) {
        return Err(GeneratorError::InvalidWeights(format!(
            "weights must be positive, got {bad}"
        )));
    }
    let g = weights.iter().fold(0i64, |acc, &q| acc.gcd(&q));
    if g != 1 {
        return Err(GeneratorError::InvalidWeights(format!(
            "weights {weights:?} have common factor {g}"
        )));
    }
    let n = weights.len() - 1;
    let q = ints(weights);

    let rays: Vec<Vec<BigInt>> = match weights.iter().rposition(|&w| w == 1) {
        Some(j) => {
            let mut rays = vec![Vec::new(); n + 1];
            let mut dependent = vec![BigInt::zero(); n];
            for (next, i) in (0..=n).filter(|&i| i != j).enumerate() {
                rays[i] = unit(n, next);
                dependent[next] = -q[i].clone();
            }
            rays[j] = dependent;
            rays
        }
        None => {
            let column =
                IntMatrix::from_columns(n + 1, std::slice::from_ref(&q)).expect("one column");
            let snf = smith_normal_form(&column);
            (0..=n)
                .map(|i| (1..=n).map(|k| snf.u.get(k, i).clone()).collect())
                .collect()
        }
    };
    debug_assert!((0..n).all(|k| rays
        .iter()
        .zip(&q)
        .map(|(r, w)| &r[k] * w)
        .sum::<BigInt>()
        .is_zero()));
    let cones = all_but_one(&(0..=n).collect::<Vec<_>>());
    Ok(Fan::normalized(n, rays, cones)?)
}

/// Hirzebruch surface `H_a`: rays `(1,0), (0,1), (-1,a), (0,-1)`.
pub fn hirzebruch(a: i64) -> Fan {
    Fan::from_i64(
        2,
        &[&[1, 0], &[0, 1], &[-1, a], &[0, -1]],
        &[&[0, 1], &[1, 2], &[2, 3], &[0, 3]],
    )
    .expect("Hirzebruch fans are well formed")
}

/// Fan of `X_1 x X_2`: rays `(v, 0)` then `(0, w)`, cones all unions.
pub fn product(first: &Fan, second: &Fan) -> Fan {
    let (d1, d2) = (first.dim(), second.dim());
    let shift = first.n_rays();
    let mut rays: Vec<Vec<BigInt>> = Vec::with_capacity(shift + second.n_rays());
    for r in first.rays() {
        let mut v = r.clone();
        v.resize(d1 + d2, BigInt::zero());
        rays.push(v);
    }
    for r in second.rays() {
        let mut v = vec![BigInt::zero(); d1];
        v.extend(r.iter().cloned());
        rays.push(v);
    }
    let mut cones = Vec::new();
    for a in first.max_cones() {
        for b in second.max_cones() {
            let mut c = a.clone();
            c.extend(b.iter().map(|i| i + shift));
            cones.push(c);
        }
    }
    Fan::new(d1 + d2, rays, cones).expect("product of fans is a fan")
}

/// One level of a generalized Bott tower: a `CP^fiber_dim` bundle given by
/// `fiber_dim` twisting vectors over the coordinates of the earlier stages.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BottStage {
    pub fiber_dim: usize,
    /// Empty for an untwisted stage, otherwise `fiber_dim` vectors whose
    /// length is the total dimension of the earlier stages.
    pub degrees: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BottTowerSpec {
    pub stages: Vec<BottStage>,
}

impl BottTowerSpec {
    pub fn dim(&self) -> usize {
        self.stages.iter().map(|s| s.fiber_dim).sum()
    }

    fn check(&self) -> Result<(), GeneratorError> {
        if self.stages.is_empty() {
            return Err(GeneratorError::InvalidSpec(
                "a tower needs at least one stage".into(),
            ));
        }
        let mut base = 0;
        for (j, stage) in self.stages.iter().enumerate() {
            if stage.fiber_dim == 0 {
                return Err(GeneratorError::InvalidSpec(format!(
                    "stage {j} has fiber dimension 0"
                )));
            }
            if !stage.degrees.is_empty() {
                if stage.degrees.len() != stage.fiber_dim {
                    return Err(GeneratorError::InvalidSpec(format!(
                        "stage {j} needs {} degree vectors, got {}",
                        stage.fiber_dim,
                        stage.degrees.len()
                    )));
                }
                if let Some(d) = stage.degrees.iter().find(|d| d.len() != base) {
                    return Err(GeneratorError::InvalidSpec(format!(
                        "stage {j} degree vector {d:?} must have length {base}"
                    )));
                }
            }
            base += stage.fiber_dim;
        }
        Ok(())
    }
}

/// Parses `stage;stage;...` where a stage is `n` or `n:v/v/...`, and each
/// degree vector `v` is a comma-separated integer list, optionally written
/// `name=...`. For example `1;1:a=2` is the Hirzebruch surface `H_2`.
impl FromStr for BottTowerSpec {
    type Err = GeneratorError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = |msg: String| GeneratorError::InvalidSpec(msg);
        let stages = s
            .split(';')
            .map(|stage| {
                let stage = stage.trim();
                let (dim, degrees) = match stage.split_once(':') {
                    Some((d, rest)) => (d, Some(rest)),
                    None => (stage, None),
                };
                let fiber_dim: usize = dim
                    .trim()
                    .parse()
                    .map_err(|_| bad(format!("bad fiber dimension {dim:?}")))?;
                let degrees = match degrees {
                    None => Vec::new(),
                    Some(rest) => rest
                        .split('/')
                        .map(|v| {
                            let v = v.split_once('=').map_or(v, |(_, x)| x).trim();
                            if v.is_empty() {
                                return Ok(Vec::new());
                            }
                            v.split(',')
                                .map(|x| {
                                    x.trim()
                                        .parse::<i64>()
                                        .map_err(|_| bad(format!("bad degree {x:?}")))
                                })
                                .collect::<Result<Vec<_>, _>>()
                        })
                        .collect::<Result<Vec<_>, _>>()?,
                };
                Ok(BottStage { fiber_dim, degrees })
            })
            .collect::<Result<Vec<_>, GeneratorError>>()?;
        let spec = BottTowerSpec { stages };
        spec.check()?;
        Ok(spec)
    }
}

/// Fan of a generalized Bott tower.
///
/// Stage `j` over a base of dimension `m` adds the rays `e_(m+k) + d_k`
/// (`d_k` placed in the first `m` coordinates) for `k = 1..n_j`, followed by
/// `-(e_(m+1) + ... + e_(m+n_j))`. Maximal cones drop exactly one ray from
/// every stage.
pub fn generalized_bott_fan(spec: &BottTowerSpec) -> Result<Fan, GeneratorError> {
    spec.check()?;
    let dim = spec.dim();
    let mut rays: Vec<Vec<BigInt>> = Vec::new();
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut base = 0;
    for stage in &spec.stages {
        let start = rays.len();
        for k in 0..stage.fiber_dim {
            let mut v = unit(dim, base + k);
            if let Some(d) = stage.degrees.get(k) {
                for (slot, x) in v.iter_mut().zip(d) {
                    *slot = BigInt::from(*x);
                }
            }
            rays.push(v);
        }
        let mut neg = vec![BigInt::zero(); dim];
        for slot in &mut neg[base..base + stage.fiber_dim] {
            *slot = -BigInt::one();
        }
        rays.push(neg);
        blocks.push((start..rays.len()).collect());
        base += stage.fiber_dim;
    }
    let mut cones: Vec<Vec<usize>> = vec![Vec::new()];
    for block in &blocks {
        let choices = all_but_one(block);
        cones = cones
            .iter()
            .flat_map(|c| {
                choices.iter().map(move |x| {
                    let mut c = c.clone();
                    c.extend(x);
                    c
                })
            })
            .collect();
    }
    Ok(Fan::new(dim, rays, cones)?)
}

/// Star subdivision at a cone of at least two rays: inserts the primitive
/// generator of the sum of its rays and splits every maximal cone containing
/// it. The new ray gets the next free index.
pub fn star_subdivision(vf: &ValidatedFan, cone: &[usize]) -> Result<Fan, GeneratorError> {
    let fan = vf.fan();
    let mut tau = cone.to_vec();
    tau.sort_unstable();
    tau.dedup();
    if tau.iter().any(|&i| i >= fan.n_rays()) || !fan.contains_cone(&tau) {
        return Err(GeneratorError::ConeNotFound(tau));
    }
    if tau.len() < 2 {
        return Err(GeneratorError::InvalidSpec(
            "subdividing a single ray does not change the fan".into(),
        ));
    }
    let sum: Vec<BigInt> = (0..fan.dim())
        .map(|k| tau.iter().map(|&i| &fan.ray(i)[k]).sum())
        .collect();
    let new_ray = primitive(&sum).map_err(|_| GeneratorError::ConeNotFound(tau.clone()))?;
    let new_index = fan.n_rays();

    let mut rays = fan.rays().to_vec();
    rays.push(new_ray);
    let mut cones = Vec::new();
    for sigma in fan.max_cones() {
        if !is_subset(&tau, sigma) {
            cones.push(sigma.clone());
            continue;
        }
        for &t in &tau {
            let mut c: Vec<usize> = sigma.iter().copied().filter(|&i| i != t).collect();
            c.push(new_index);
            cones.push(c);
        }
    }
    Ok(Fan::new(fan.dim(), rays, cones)?)
}

/// Whether some unimodular map carries the rays of `a` bijectively onto the
/// rays of `b` and the maximal cones onto the maximal cones.
pub fn fans_isomorphic(a: &Fan, b: &Fan) -> bool {
    if a.dim() != b.dim() || a.n_rays() != b.n_rays() || a.max_cones().len() != b.max_cones().len()
    {
        return false;
    }
    let n = a.dim();
    let mut a_cones: Vec<Vec<usize>> = a.max_cones().to_vec();
    a_cones.sort();
    let b_cones: std::collections::HashSet<Vec<usize>> = b.max_cones().iter().cloned().collect();

    // A full-dimensional cone must land on a full-dimensional cone, in some
    // order; without one, try every injective image of independent rays.
    let mut targets: Vec<Vec<usize>> = Vec::new();
    let anchor: Vec<usize> = match a.max_cones().iter().find(|c| c.len() == n) {
        Some(c) => {
            for cone in b.max_cones().iter().filter(|c| c.len() == n) {
                let mut perms = Vec::new();
                permutations_into(n, n, &mut Vec::new(), &mut perms);
                targets.extend(
                    perms
                        .into_iter()
                        .map(|p| p.iter().map(|&i| cone[i]).collect()),
                );
            }
            c.clone()
        }
        None => {
            permutations_into(b.n_rays(), n, &mut Vec::new(), &mut targets);
            independent_rays(a)
        }
    };
    if anchor.len() != n {
        return false;
    }
    let source = a.ray_matrix(&anchor);
    let det = determinant(&source).expect("square");
    let adj = adjugate(&source);

    targets.into_iter().any(|image| {
        let target = b.ray_matrix(&image);
        let Some(g) = exact_quotient(&target.mul(&adj).expect("shapes match"), &det) else {
            return false;
        };
        if !determinant(&g).expect("square").abs().is_one() {
            return false;
        }
        let mut pi = Vec::with_capacity(a.n_rays());
        for r in a.rays() {
            let gr = g.mul_vec(r).expect("length n");
            match b.rays().iter().position(|w| *w == gr) {
                Some(j) => pi.push(j),
                None => return false,
            }
        }
        a_cones.iter().all(|c| {
            let mut img: Vec<usize> = c.iter().map(|&i| pi[i]).collect();
            img.sort_unstable();
            b_cones.contains(&img)
        })
    })
}

fn independent_rays(fan: &Fan) -> Vec<usize> {
    let mut chosen = Vec::new();
    for i in 0..fan.n_rays() {
        chosen.push(i);
        if rank(&fan.ray_matrix(&chosen)) < chosen.len() {
            chosen.pop();
        }
    }
    chosen
}

fn permutations_into(n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if cur.len() == k {
        out.push(cur.clone());
        return;
    }
    for i in 0..n {
        if !cur.contains(&i) {
            cur.push(i);
            permutations_into(n, k, cur, out);
            cur.pop();
        }
    }
}

fn adjugate(m: &IntMatrix) -> IntMatrix {
    let n = m.rows();
    let mut adj = IntMatrix::zeros(n, n);
    if n == 1 {
        adj.set(0, 0, BigInt::one());
        return adj;
    }
    for i in 0..n {
        for j in 0..n {
            let minor: Vec<Vec<BigInt>> = (0..n)
                .filter(|&r| r != i)
                .map(|r| {
                    (0..n)
                        .filter(|&c| c != j)
                        .map(|c| m.get(r, c).clone())
                        .collect()
                })
                .collect();
            let d = determinant(&IntMatrix::from_rows(&minor).expect("square minor"))
                .expect("square minor");
            adj.set(j, i, if (i + j) % 2 == 0 { d } else { -d });
        }
    }
    adj
}

fn exact_quotient(m: &IntMatrix, d: &BigInt) -> Option<IntMatrix> {
    if d.is_zero() {
        return None;
    }
    let mut out = IntMatrix::zeros(m.rows(), m.cols());
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let (q, r) = m.get(i, j).div_rem(d);
            if !r.is_zero() {
                return None;
            }
            out.set(i, j, q);
        }
    }
    Some(out)
}
