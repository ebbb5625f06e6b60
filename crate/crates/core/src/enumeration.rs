//! Counting substructures from determinants at several parameters.
//!
//! At a primitive fifth root of unity every non-vanishing cycle contributes
//! either `alpha` or `beta`; the determinants at `omega_5` and `omega_5^2` are
//! Galois conjugates, and together they pin down how many of each occur. For
//! an odd prime `p` the product over the conjugate parameters is `p` raised
//! to the number of non-vanishing cycles. Small vertex sets can be counted
//! by solving a linear system over the parameters `omega_2 .. omega_6`.

use std::sync::OnceLock;

use serde::Serialize;

use crate::cyclotomic::{alpha, beta, cycle_contribution, golden_ratio, log_power_of, CycloNum, RootParam};
use crate::decomposition::{census, CensusClass, Limits};
use crate::error::{Error, Result};
use crate::graph::{OrientedGraph, Substructure, VertexId};
use crate::hermitian::{build_laplacian, laplacian_minor, CycloMatrix};

/// What a `k`-cycle with `g` negative edges contributes at `omega_5`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PairClass {
    Alpha,
    Beta,
    Vanishing,
}

pub fn classify_pair(k: i64, g: i64) -> PairClass {
    match (k - 2 * g).rem_euclid(5) {
        0 => PairClass::Vanishing,
        2 | 3 => PairClass::Alpha,
        _ => PairClass::Beta,
    }
}

/// Counts of non-vanishing unicyclic components. The alpha/beta split is
/// only known to the fifth-root method.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct UnicyclicCounts {
    pub n_alpha: Option<u32>,
    pub n_beta: Option<u32>,
    pub n_star: u32,
}

fn param(order: u32, power: u32) -> RootParam {
    RootParam::new(order, power).expect("valid root parameter")
}

fn substructure_determinant(sub: &Substructure<'_>, p: RootParam) -> CycloNum {
    build_laplacian(sub, p).determinant().simplify()
}

/// Recovers `(n_alpha, n_beta)` of an all-regular substructure from its
/// determinants at `omega_5` and `omega_5^2`.
pub fn count_alpha_beta(sub: &Substructure<'_>) -> Result<UnicyclicCounts> {
    let d1 = substructure_determinant(sub, param(5, 1));
    let d2 = substructure_determinant(sub, param(5, 2));
    let product = &d1 * &d2;
    if product.is_zero() {
        return Err(Error::VanishingComponent);
    }
    let a = log_power_of(&product, 5)?;
    // d1 / d2 = (alpha / beta)^(n_alpha - n_beta) and alpha / beta = phi^2
    let ratio = d1.checked_div(&d2)?;
    let phi2 = golden_ratio().pow(2);
    let mut up = ratio.clone();
    let mut down = ratio;
    let mut b = None;
    for step in 0..=a {
        if up.is_one() {
            b = Some(step);
            break;
        }
        if down.is_one() {
            b = Some(-step);
            break;
        }
        up = up.checked_div(&phi2)?;
        down = &down * &phi2;
    }
    let b = b.ok_or_else(|| {
        Error::NonIntegerSolution(format!("d1/d2 is not a power of phi^2 within {a} steps"))
    })?;
    if (a + b) % 2 != 0 || a + b < 0 || a - b < 0 {
        return Err(Error::NonIntegerSolution(format!("A = {a}, B = {b}")));
    }
    let (n_alpha, n_beta) = (((a + b) / 2) as u32, ((a - b) / 2) as u32);
    if &alpha().pow(n_alpha) * &beta().pow(n_beta) != d1 {
        return Err(Error::NonIntegerSolution(format!(
            "alpha^{n_alpha} beta^{n_beta} does not reproduce {d1}"
        )));
    }
    Ok(UnicyclicCounts {
        n_alpha: Some(n_alpha),
        n_beta: Some(n_beta),
        n_star: n_alpha + n_beta,
    })
}

fn is_odd_prime(p: u64) -> bool {
    p >= 3 && p % 2 == 1 && (3..).step_by(2).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// Number of non-`p`-vanishing unicyclic components of an all-regular
/// substructure, from the product of its determinants at `omega_p^q` for
/// `q = 1 .. (p-1)/2`.
pub fn galois_count(sub: &Substructure<'_>, p: u64) -> Result<UnicyclicCounts> {
    if !is_odd_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let order = u32::try_from(p).map_err(|_| Error::NotPrime(p))?;
    let product: CycloNum = (1..=(order - 1) / 2)
        .map(|q| substructure_determinant(sub, param(order, q)))
        .product();
    if product.is_zero() {
        return Err(Error::VanishingComponent);
    }
    let n_star = log_power_of(&product, p)?;
    Ok(UnicyclicCounts {
        n_alpha: None,
        n_beta: None,
        n_star: n_star as u32,
    })
}

fn expect_size(vset: &[VertexId], expected: usize) -> Result<()> {
    if vset.len() != expected {
        return Err(Error::SizeMismatch {
            expected,
            got: vset.len(),
        });
    }
    Ok(())
}

fn non_negative(x: &CycloNum) -> Result<u64> {
    x.to_integer()
        .and_then(|v| u64::try_from(v).ok())
        .ok_or_else(|| Error::NonIntegerResult(x.to_string()))
}

fn tally(entries: &[crate::decomposition::CensusEntry], wanted: impl Fn(&CensusClass) -> bool) -> u64 {
    entries.iter().filter(|e| wanted(&e.class)).map(|e| e.count).sum()
}

#[derive(Debug, Clone, Serialize)]
pub struct TriangleReport {
    pub triangles: u64,
    pub rootless_trees: u64,
    /// Minors at `omega_2` and `omega_4`.
    pub determinants: Vec<(RootParam, CycloNum)>,
}

/// Triangles and rootless trees spanned by three vertices, from the minors
/// at `-1` and `i`. With `verify` the result is checked against a census.
pub fn triangle_count(
    graph: &OrientedGraph,
    vset: &[VertexId],
    verify: bool,
    limits: Limits,
) -> Result<TriangleReport> {
    expect_size(vset, 3)?;
    let m2 = laplacian_minor(graph, param(2, 1), vset)?.simplify();
    let m4 = laplacian_minor(graph, param(4, 1), vset)?.simplify();
    let half = CycloNum::from_rational(1, &num_rational::BigRational::new(1.into(), 2.into()));
    let triangles = non_negative(&(&(&m2 - &m4) * &half))?;
    let rootless_trees = non_negative(&(&(&m4 + &m4) - &m2))?;
    if verify {
        let c = census(graph, vset, limits)?;
        let t = tally(&c, |k| matches!(k, CensusClass::Unicyclic { k: 3, .. }));
        let r = tally(&c, |k| matches!(k, CensusClass::Forest { .. }));
        if (t, r) != (triangles, rootless_trees) {
            return Err(Error::CensusMismatch(format!(
                "formulas give ({triangles}, {rootless_trees}), census gives ({t}, {r})"
            )));
        }
    }
    Ok(TriangleReport {
        triangles,
        rootless_trees,
        determinants: vec![(param(2, 1), m2), (param(4, 1), m4)],
    })
}

/// Unknowns of the four-vertex system, in column order of its matrix.
/// `tu33g` counts a triangle plus one rootless vertex as well as a triangle
/// with a pendant vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FourVertexCounts {
    pub c440: u64,
    pub c441: u64,
    pub tu330: u64,
    pub tu331: u64,
    pub f4: u64,
}

impl FourVertexCounts {
    pub fn to_array(self) -> [u64; 5] {
        [self.c440, self.c441, self.tu330, self.tu331, self.f4]
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FourVertexReport {
    #[serde(flatten)]
    pub counts: FourVertexCounts,
    /// Minors at `omega_2 .. omega_6`.
    pub determinants: Vec<(RootParam, CycloNum)>,
}

/// The matrix relating class counts to minors at `omega_2 .. omega_6`, and
/// its exact inverse.
#[derive(Debug, Clone, Serialize)]
pub struct FourVertexSystem {
    pub params: Vec<RootParam>,
    pub a: CycloMatrix,
    pub a_inv: CycloMatrix,
}

/// `(k, g)` of the cycle in each column; the last column is the forest.
const COLUMNS: [Option<(i64, i64)>; 5] = [Some((4, 0)), Some((4, 1)), Some((3, 0)), Some((3, 1)), None];

pub fn four_vertex_system() -> &'static FourVertexSystem {
    static SYSTEM: OnceLock<FourVertexSystem> = OnceLock::new();
    SYSTEM.get_or_init(|| {
        let params: Vec<RootParam> = (2..=6).map(|n| param(n, 1)).collect();
        let rows = params
            .iter()
            .map(|&p| {
                COLUMNS
                    .iter()
                    .map(|col| match col {
                        Some((k, g)) => cycle_contribution(p, *k, *g).simplify(),
                        None => CycloNum::one(1),
                    })
                    .collect()
            })
            .collect();
        let a = CycloMatrix::from_rows(rows);
        let a_inv = a.inverse().expect("the four-vertex system is invertible");
        FourVertexSystem { params, a, a_inv }
    })
}

/// Counts of 4-cycles, triangle-with-one-more-vertex structures and rootless
/// forests on four vertices, by inverting the four-vertex system. With
/// `verify` the result is checked against a census.
pub fn four_vertex_count(
    graph: &OrientedGraph,
    vset: &[VertexId],
    verify: bool,
    limits: Limits,
) -> Result<FourVertexReport> {
    expect_size(vset, 4)?;
    let system = four_vertex_system();
    let determinants = system
        .params
        .iter()
        .map(|&p| Ok((p, laplacian_minor(graph, p, vset)?.simplify())))
        .collect::<Result<Vec<_>>>()?;
    let mut x = [0u64; 5];
    for (i, slot) in x.iter_mut().enumerate() {
        let value: CycloNum = system
            .a_inv
            .row(i)
            .iter()
            .zip(&determinants)
            .map(|(a, (_, d))| a * d)
            .sum();
        *slot = non_negative(&value.simplify())?;
    }
    let counts = FourVertexCounts {
        c440: x[0],
        c441: x[1],
        tu330: x[2],
        tu331: x[3],
        f4: x[4],
    };
    if verify {
        let c = census(graph, vset, limits)?;
        let tu = |g0: usize| {
            tally(&c, |k| {
                matches!(k, CensusClass::TU { n: 3, k: 3, g } | CensusClass::Unicyclic { n: 4, k: 3, g } if *g == g0)
            })
        };
        let expected = FourVertexCounts {
            c440: tally(&c, |k| matches!(k, CensusClass::Unicyclic { n: 4, k: 4, g: 0 })),
            c441: tally(&c, |k| matches!(k, CensusClass::Unicyclic { n: 4, k: 4, g: 1 })),
            tu330: tu(0),
            tu331: tu(1),
            f4: tally(&c, |k| matches!(k, CensusClass::Forest { .. })),
        };
        if expected != counts {
            return Err(Error::CensusMismatch(format!(
                "system gives {:?}, census gives {:?}",
                counts.to_array(),
                expected.to_array()
            )));
        }
    }
    Ok(FourVertexReport {
        counts,
        determinants,
    })
}
