//! Principal minors as sums over substructures.
//!
//! `det L_omega[V']` equals the sum of `det L_omega(V', E')` over all edge
//! subsets `E'` with `|E'| = |V'|`. Only all-regular substructures contribute,
//! and each of those contributes the product of its cycle contributions.

use std::collections::BTreeMap;

use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;

use crate::cyclotomic::{cycle_contribution, CycloNum, RootParam};
use crate::error::{Error, Result};
use crate::graph::{ComponentClass, OrientedGraph, Substructure, VertexId};
use crate::hermitian::{build_laplacian, determinant};

/// Bound on how many edge subsets a single enumeration may visit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_subsets: Option<u128>,
}

impl Limits {
    pub const DEFAULT_MAX_SUBSETS: u128 = 10_000_000;

    pub fn unbounded() -> Self {
        Self { max_subsets: None }
    }
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            max_subsets: Some(Self::DEFAULT_MAX_SUBSETS),
        }
    }
}

/// `C(n, k)`, saturating at `u128::MAX`.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

fn check_limits(graph: &OrientedGraph, size: usize, limits: Limits) -> Result<()> {
    let required = binomial(graph.edge_count(), size);
    match limits.max_subsets {
        Some(limit) if required > limit => Err(Error::GuardrailExceeded { required, limit }),
        _ => Ok(()),
    }
}

/// Edge subsets of the given size, in lexicographic order of edge ids.
fn edge_subsets(graph: &OrientedGraph, size: usize) -> impl Iterator<Item = Vec<usize>> + Send {
    (0..graph.edge_count()).combinations(size)
}

/// `sum over |E'| = |V'|` of `det L_omega(V', E')`, each term computed by
/// elimination on the substructure Laplacian.
pub fn cauchy_binet_expand(
    graph: &OrientedGraph,
    param: RootParam,
    vset: &[VertexId],
    limits: Limits,
) -> Result<CycloNum> {
    let rows = graph.vertex_indices(vset)?;
    check_limits(graph, rows.len(), limits)?;
    let total = edge_subsets(graph, rows.len())
        .par_bridge()
        .map(|eset| {
            let sub = Substructure::from_indices(graph, rows.clone(), eset);
            determinant(&build_laplacian(&sub, param).matrix)
        })
        .reduce(|| CycloNum::zero(param.order()), |a, b| &a + &b);
    Ok(total.simplify())
}

/// Determinant of a substructure Laplacian read off its components: zero
/// unless all-regular, otherwise the product of the cycle contributions of
/// its unicyclic components. A substructure with more edges than vertices
/// is first expanded over its regular edge subsets.
pub fn structural_determinant(sub: &Substructure<'_>, param: RootParam) -> CycloNum {
    let (nv, ne) = (sub.vertex_indices().len(), sub.edge_ids().len());
    if ne > nv {
        return sub
            .edge_ids()
            .iter()
            .copied()
            .combinations(nv)
            .map(|eset| {
                let part = Substructure::from_indices(sub.graph(), sub.vertex_indices().to_vec(), eset);
                regular_structural_determinant(&part, param)
            })
            .fold(CycloNum::zero(1), |a, b| &a + &b)
            .simplify();
    }
    regular_structural_determinant(sub, param)
}

fn regular_structural_determinant(sub: &Substructure<'_>, param: RootParam) -> CycloNum {
    let mut acc = CycloNum::one(1);
    for comp in sub.components() {
        match comp.classify() {
            ComponentClass::RootlessTree => {}
            ComponentClass::Unicyclic { k, g } => {
                acc = &acc * &cycle_contribution(param, k as i64, g as i64);
            }
            _ => return CycloNum::zero(1),
        }
    }
    acc.simplify()
}

/// Census key of an all-regular substructure.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CensusClass {
    /// A rootless forest on `n` vertices.
    Forest { n: usize },
    /// A single unicyclic component on all `n` vertices.
    Unicyclic { n: usize, k: usize, g: usize },
    /// One unicyclic component on `n` vertices plus a nonempty rootless
    /// forest.
    TU { n: usize, k: usize, g: usize },
    /// Two or more unicyclic components, cycles listed as sorted `(k, g)`.
    Mixed { n: usize, cycles: Vec<(usize, usize)> },
}

impl CensusClass {
    pub fn cycles(&self) -> Vec<(usize, usize)> {
        match self {
            CensusClass::Forest { .. } => Vec::new(),
            CensusClass::Unicyclic { k, g, .. } | CensusClass::TU { k, g, .. } => vec![(*k, *g)],
            CensusClass::Mixed { cycles, .. } => cycles.clone(),
        }
    }

    /// Determinant of any substructure in this class.
    pub fn contribution(&self, param: RootParam) -> CycloNum {
        self.cycles()
            .into_iter()
            .fold(CycloNum::one(1), |acc, (k, g)| {
                &acc * &cycle_contribution(param, k as i64, g as i64)
            })
            .simplify()
    }

    pub fn label(&self) -> &'static str {
        match self {
            CensusClass::Forest { .. } => "forest",
            CensusClass::Unicyclic { .. } => "unicyclic",
            CensusClass::TU { .. } => "tu",
            CensusClass::Mixed { .. } => "mixed",
        }
    }
}

impl std::fmt::Display for CensusClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CensusClass::Forest { n } => write!(f, "F({n})"),
            CensusClass::Unicyclic { n, k, g } => write!(f, "C({n},{k},{g})"),
            CensusClass::TU { n, k, g } => write!(f, "TU({n},{k},{g})"),
            CensusClass::Mixed { n, cycles } => {
                write!(f, "M({n}")?;
                for (k, g) in cycles {
                    write!(f, ";{k},{g}")?;
                }
                write!(f, ")")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusEntry {
    pub class: CensusClass,
    pub count: u64,
}

/// The census key of `sub`, or `None` when it is not all-regular.
pub fn classify_substructure(sub: &Substructure<'_>) -> Option<CensusClass> {
    let mut cycles = Vec::new();
    let mut cyclic_order = 0;
    for comp in sub.components() {
        match comp.classify() {
            ComponentClass::RootlessTree => {}
            ComponentClass::Unicyclic { k, g } => {
                cycles.push((k, g));
                cyclic_order = comp.vertex_indices().len();
            }
            _ => return None,
        }
    }
    let n = sub.vertex_indices().len();
    cycles.sort_unstable();
    Some(match cycles.len() {
        0 => CensusClass::Forest { n },
        1 if cyclic_order == n => CensusClass::Unicyclic {
            n,
            k: cycles[0].0,
            g: cycles[0].1,
        },
        1 => CensusClass::TU {
            n: cyclic_order,
            k: cycles[0].0,
            g: cycles[0].1,
        },
        _ => CensusClass::Mixed { n, cycles },
    })
}

/// Tallies the all-regular substructures `(V', E')` with `|E'| = |V'|`.
/// Entries are sorted by class.
pub fn census(graph: &OrientedGraph, vset: &[VertexId], limits: Limits) -> Result<Vec<CensusEntry>> {
    let rows = graph.vertex_indices(vset)?;
    check_limits(graph, rows.len(), limits)?;
    let tally = edge_subsets(graph, rows.len())
        .par_bridge()
        .filter_map(|eset| classify_substructure(&Substructure::from_indices(graph, rows.clone(), eset)))
        .fold(BTreeMap::new, |mut acc: BTreeMap<CensusClass, u64>, class| {
            *acc.entry(class).or_default() += 1;
            acc
        })
        .reduce(BTreeMap::new, |mut a, b| {
            for (class, count) in b {
                *a.entry(class).or_default() += count;
            }
            a
        });
    Ok(tally
        .into_iter()
        .map(|(class, count)| CensusEntry { class, count })
        .collect())
}

/// `sum of count * contribution` over a census.
pub fn census_total(entries: &[CensusEntry], param: RootParam) -> CycloNum {
    entries
        .iter()
        .map(|e| &CycloNum::from_int(1, e.count as i64) * &e.class.contribution(param))
        .fold(CycloNum::zero(1), |a, b| &a + &b)
        .simplify()
}

#[derive(Serialize)]
struct CensusRecord {
    class: &'static str,
    n: usize,
    k: Option<usize>,
    g: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    cycles: Option<Vec<(usize, usize)>>,
    count: u64,
    contribution: CycloNum,
}

/// JSON records `{class, n, k, g, count, contribution}`; mixed classes carry
/// their cycle list instead of a single `(k, g)`.
pub fn census_json(entries: &[CensusEntry], param: RootParam) -> serde_json::Value {
    let records: Vec<CensusRecord> = entries
        .iter()
        .map(|e| {
            let (n, k, g, cycles) = match &e.class {
                CensusClass::Forest { n } => (*n, None, None, None),
                CensusClass::Unicyclic { n, k, g } | CensusClass::TU { n, k, g } => {
                    (*n, Some(*k), Some(*g), None)
                }
                CensusClass::Mixed { n, cycles } => (*n, None, None, Some(cycles.clone())),
            };
            CensusRecord {
                class: e.class.label(),
                n,
                k,
                g,
                cycles,
                count: e.count,
                contribution: e.class.contribution(param),
            }
        })
        .collect();
    serde_json::to_value(records).expect("census records serialize")
}
