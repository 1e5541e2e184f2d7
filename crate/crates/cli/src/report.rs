use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Serialize, Serializer};
use torell::cox::ConeStabilizer;
use torell::num_bigint::BigInt;
use torell::{Classification, HomotopyDegrees, QuotientPresentation, ValidationReport};

/// Exact integer in JSON: a number when it fits in `i64`, else a string.
#[derive(Clone, Debug)]
pub struct Big(pub BigInt);

impl Serialize for Big {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match i64::try_from(&self.0) {
            Ok(x) => s.serialize_i64(x),
            Err(_) => s.serialize_str(&self.0.to_string()),
        }
    }
}

fn bigs(xs: &[BigInt]) -> Vec<Big> {
    xs.iter().cloned().map(Big).collect()
}

pub const SIMPLY_CONNECTED_CRITERION: &str =
    "underlying-space criterion: ray generators span the lattice";

#[derive(Serialize)]
pub struct ValidationSection {
    pub simplicial: bool,
    pub fan_axiom_ok: bool,
    pub complete: bool,
    pub smooth: bool,
    pub simply_connected: bool,
    pub simply_connected_criterion: &'static str,
    pub multiplicities: BTreeMap<usize, Big>,
    pub failures: Vec<String>,
}

impl From<&ValidationReport> for ValidationSection {
    fn from(r: &ValidationReport) -> Self {
        ValidationSection {
            simplicial: r.simplicial,
            fan_axiom_ok: r.fan_axiom_ok,
            complete: r.complete,
            smooth: r.smooth,
            simply_connected: r.simply_connected,
            simply_connected_criterion: SIMPLY_CONNECTED_CRITERION,
            multiplicities: r
                .multiplicities
                .iter()
                .map(|(k, v)| (*k, Big(v.clone())))
                .collect(),
            failures: r.failures.clone(),
        }
    }
}

#[derive(Serialize)]
pub struct ClassificationSection {
    pub elliptic: bool,
    pub blocks: Vec<Vec<usize>>,
    pub block_dims: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

impl From<&Classification> for ClassificationSection {
    fn from(c: &Classification) -> Self {
        ClassificationSection {
            elliptic: c.elliptic,
            blocks: c.blocks.clone(),
            block_dims: c.block_dims.clone(),
            reason: c.reason.clone(),
        }
    }
}

#[derive(Serialize)]
pub struct WeightEntry {
    pub free: Vec<Big>,
    pub torsion: Vec<Big>,
}

#[derive(Serialize)]
pub struct StabilizerEntry {
    pub cone: usize,
    pub invariants: Vec<Big>,
    pub order: Big,
}

impl From<&ConeStabilizer> for StabilizerEntry {
    fn from(s: &ConeStabilizer) -> Self {
        StabilizerEntry {
            cone: s.cone,
            invariants: bigs(&s.invariants),
            order: Big(s.order()),
        }
    }
}

#[derive(Serialize)]
pub struct QuotientSection {
    pub y_ambient_dim: usize,
    /// `k` for each factor `C^k - {0}` of `Y`.
    pub y_factors: Vec<usize>,
    pub removed_subspaces: Vec<Vec<usize>>,
    pub group_free_rank: usize,
    pub group_torsion: Vec<Big>,
    pub weights: Vec<WeightEntry>,
    pub smooth_case: bool,
    pub stabilizers: Vec<StabilizerEntry>,
}

impl From<&QuotientPresentation> for QuotientSection {
    fn from(q: &QuotientPresentation) -> Self {
        QuotientSection {
            y_ambient_dim: q.y.ambient_dim,
            y_factors: q
                .y
                .product_factors
                .iter()
                .flatten()
                .map(|n| n + 1)
                .collect(),
            removed_subspaces: q.y.removed_subspaces.clone(),
            group_free_rank: q.group.free_rank,
            group_torsion: bigs(&q.group.torsion),
            weights: q
                .group
                .weights
                .iter()
                .map(|w| WeightEntry {
                    free: bigs(&w.free),
                    torsion: bigs(&w.torsion),
                })
                .collect(),
            smooth_case: q.smooth_case,
            stabilizers: q.stabilizers.iter().map(StabilizerEntry::from).collect(),
        }
    }
}

#[derive(Serialize)]
pub struct DegreesSection {
    pub even: Vec<usize>,
    pub odd: Vec<usize>,
}

impl From<&HomotopyDegrees> for DegreesSection {
    fn from(d: &HomotopyDegrees) -> Self {
        DegreesSection {
            even: d.even.clone(),
            odd: d.odd.clone(),
        }
    }
}

#[derive(Serialize)]
pub struct ClassificationReport {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub dim: usize,
    pub n_rays: usize,
    pub n_max_cones: usize,
    pub validation: ValidationSection,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classification: Option<ClassificationSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quotient: Option<QuotientSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub betti: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub homotopy_degrees: Option<DegreesSection>,
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn join<T: ToString>(xs: &[T], sep: &str) -> String {
    xs.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(sep)
}

fn tuple(xs: &[Big]) -> String {
    format!(
        "({})",
        join(&xs.iter().map(|x| x.0.clone()).collect::<Vec<_>>(), ",")
    )
}

pub fn validation_text(v: &ValidationSection) -> String {
    let mut out = String::new();
    writeln!(out, "simplicial: {}", yes(v.simplicial)).unwrap();
    writeln!(out, "fan axiom: {}", yes(v.fan_axiom_ok)).unwrap();
    writeln!(out, "complete: {}", yes(v.complete)).unwrap();
    writeln!(out, "smooth: {}", yes(v.smooth)).unwrap();
    writeln!(
        out,
        "simply connected ({}): {}",
        v.simply_connected_criterion,
        yes(v.simply_connected)
    )
    .unwrap();
    if !v.multiplicities.is_empty() {
        let parts: Vec<String> = v
            .multiplicities
            .iter()
            .map(|(c, m)| format!("{c}:{}", m.0))
            .collect();
        writeln!(out, "multiplicities: {}", parts.join(" ")).unwrap();
    }
    for f in &v.failures {
        writeln!(out, "failure: {f}").unwrap();
    }
    out
}

pub fn y_text(factors: &[usize]) -> String {
    factors
        .iter()
        .map(|k| format!("(C^{k}-{{0}})"))
        .collect::<Vec<_>>()
        .join(" x ")
}

impl ClassificationReport {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let name = self.name.as_deref().unwrap_or("<unnamed>");
        writeln!(
            out,
            "fan: {name} (dim {}, {} rays, {} maximal cones)",
            self.dim, self.n_rays, self.n_max_cones
        )
        .unwrap();
        out.push_str(&validation_text(&self.validation));
        if let Some(c) = &self.classification {
            writeln!(out, "elliptic: {}", yes(c.elliptic)).unwrap();
            if c.elliptic {
                let blocks: Vec<String> = c
                    .blocks
                    .iter()
                    .map(|b| format!("{{{}}}", join(b, ",")))
                    .collect();
                writeln!(out, "blocks: {}", blocks.join(" ")).unwrap();
                writeln!(out, "n_i: {}", join(&c.block_dims, " ")).unwrap();
            }
            if let Some(r) = &c.reason {
                writeln!(out, "reason: {r}").unwrap();
            }
        }
        if let Some(q) = &self.quotient {
            writeln!(out, "Y: {}", y_text(&q.y_factors)).unwrap();
            let torsion = if q.group_torsion.is_empty() {
                "none".to_string()
            } else {
                join(
                    &q.group_torsion
                        .iter()
                        .map(|x| format!("Z/{}", x.0))
                        .collect::<Vec<_>>(),
                    " + ",
                )
            };
            writeln!(out, "G: free rank {}, torsion {torsion}", q.group_free_rank).unwrap();
            let weights: Vec<String> = q
                .weights
                .iter()
                .enumerate()
                .map(|(i, w)| {
                    if w.torsion.is_empty() {
                        format!("z{i}:{}", tuple(&w.free))
                    } else {
                        format!("z{i}:{}+{}", tuple(&w.free), tuple(&w.torsion))
                    }
                })
                .collect();
            writeln!(out, "weights: {}", weights.join(" ")).unwrap();
            writeln!(
                out,
                "action: {}",
                if q.smooth_case {
                    "free (G is a torus)"
                } else {
                    "almost free"
                }
            )
            .unwrap();
            let nontrivial: Vec<String> = q
                .stabilizers
                .iter()
                .filter(|s| !s.invariants.is_empty())
                .map(|s| {
                    format!(
                        "cone {}: {}",
                        s.cone,
                        join(
                            &s.invariants
                                .iter()
                                .map(|x| format!("Z/{}", x.0))
                                .collect::<Vec<_>>(),
                            "+"
                        )
                    )
                })
                .collect();
            if nontrivial.is_empty() {
                writeln!(out, "stabilizers: all trivial").unwrap();
            } else {
                writeln!(out, "stabilizers: {}", nontrivial.join("; ")).unwrap();
            }
        }
        if let Some(b) = &self.betti {
            writeln!(out, "betti (even degrees): {}", join(b, " ")).unwrap();
        }
        if let Some(d) = &self.homotopy_degrees {
            writeln!(
                out,
                "rational homotopy degrees: even {}; odd {}",
                join(&d.even, " "),
                join(&d.odd, " ")
            )
            .unwrap();
        }
        out
    }
}
