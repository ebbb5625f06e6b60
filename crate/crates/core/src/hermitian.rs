//! Hermitian incidence and Laplacian matrices with exact cyclotomic entries.

use num_complex::Complex64;
use serde::Serialize;

use crate::cyclotomic::{root_of_unity, CycloNum, RootParam};
use crate::error::Result;
use crate::graph::{OrientedGraph, Substructure, VertexId};

/// Dense row-major matrix of cyclotomic numbers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycloMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<CycloNum>,
}

impl CycloMatrix {
    pub fn zeros(rows: usize, cols: usize, order: u32) -> Self {
        Self {
            rows,
            cols,
            entries: vec![CycloNum::zero(order); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n, 1);
        for i in 0..n {
            m[(i, i)] = CycloNum::one(1);
        }
        m
    }

    /// Panics if the rows are ragged.
    pub fn from_rows(rows: Vec<Vec<CycloNum>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        Self {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[CycloNum] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<CycloNum>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn conjugate_transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows, 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].conjugate();
            }
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols, 1);
        for i in 0..self.rows {
            for j in 0..other.cols {
                out[(i, j)] = (0..self.cols)
                    .map(|k| &self[(i, k)] * &other[(k, j)])
                    .sum();
            }
        }
        out
    }

    /// Submatrix on the given row and column positions.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self {
            rows: rows.len(),
            cols: cols.len(),
            entries: rows
                .iter()
                .flat_map(|&i| cols.iter().map(move |&j| self[(i, j)].clone()))
                .collect(),
        }
    }

    pub fn to_complex(&self) -> Vec<Complex64> {
        self.entries.iter().map(CycloNum::to_complex).collect()
    }

    /// Exact inverse by Gauss-Jordan elimination, `None` when singular.
    pub fn inverse(&self) -> Option<Self> {
        assert_eq!(self.rows, self.cols, "inverse of a non-square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[(r, col)].is_zero())?;
            a.swap_rows(col, pivot);
            inv.swap_rows(col, pivot);
            let p = a[(col, col)].inv().ok()?;
            for j in 0..n {
                a[(col, j)] = (&a[(col, j)] * &p).simplify();
                inv[(col, j)] = (&inv[(col, j)] * &p).simplify();
            }
            for r in (0..n).filter(|&r| r != col) {
                let f = a[(r, col)].clone();
                if f.is_zero() {
                    continue;
                }
                for j in 0..n {
                    a[(r, j)] = (&a[(r, j)] - &(&f * &a[(col, j)])).simplify();
                    inv[(r, j)] = (&inv[(r, j)] - &(&f * &inv[(col, j)])).simplify();
                }
            }
        }
        Some(inv)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl std::ops::Index<(usize, usize)> for CycloMatrix {
    type Output = CycloNum;
    fn index(&self, (i, j): (usize, usize)) -> &CycloNum {
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for CycloMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut CycloNum {
        &mut self.entries[i * self.cols + j]
    }
}

impl Serialize for CycloMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_rows().serialize(s)
    }
}

/// `S_omega` restricted to rows `V'` and columns `E'`.
#[derive(Debug, Clone, Serialize)]
pub struct IncidenceMatrix {
    pub rows: Vec<VertexId>,
    pub cols: Vec<usize>,
    pub matrix: CycloMatrix,
}

/// A Hermitian matrix indexed by vertices.
#[derive(Debug, Clone, Serialize)]
pub struct HermitianMatrix {
    pub index: Vec<VertexId>,
    pub matrix: CycloMatrix,
}

impl HermitianMatrix {
    pub fn is_hermitian(&self) -> bool {
        self.matrix == self.matrix.conjugate_transpose()
    }

    pub fn determinant(&self) -> CycloNum {
        determinant(&self.matrix)
    }
}

/// Entry `s_ve`: `-omega` at the tail of `e`, `1` at its head, `0` elsewhere.
pub fn build_incidence(sub: &Substructure<'_>, param: RootParam) -> IncidenceMatrix {
    let g = sub.graph();
    let n = param.order();
    let omega = root_of_unity(param);
    let minus_omega = -&omega;
    let vs = sub.vertex_indices();
    let es = sub.edge_ids();
    let mut m = CycloMatrix::zeros(vs.len(), es.len(), n);
    for (c, &e) in es.iter().enumerate() {
        let (t, h) = g.endpoints(e);
        for (r, &v) in vs.iter().enumerate() {
            if v == t {
                m[(r, c)] = minus_omega.clone();
            } else if v == h {
                m[(r, c)] = CycloNum::one(n);
            }
        }
    }
    IncidenceMatrix {
        rows: sub.vertex_ids(),
        cols: es.to_vec(),
        matrix: m,
    }
}

/// `L_omega(G')`: substructure degrees on the diagonal, `-omega` at `(u, v)`
/// and `-conj(omega)` at `(v, u)` for each edge `u -> v` of `E'` inside `V'`.
pub fn build_laplacian(sub: &Substructure<'_>, param: RootParam) -> HermitianMatrix {
    let g = sub.graph();
    let n = param.order();
    let vs = sub.vertex_indices();
    let mut pos = vec![usize::MAX; g.vertex_count()];
    for (i, &v) in vs.iter().enumerate() {
        pos[v] = i;
    }
    let omega = root_of_unity(param);
    let minus_omega = -&omega;
    let minus_conj = -&omega.conjugate();
    let mut degree = vec![0i64; vs.len()];
    let mut m = CycloMatrix::zeros(vs.len(), vs.len(), n);
    for &e in sub.edge_ids() {
        let (t, h) = g.endpoints(e);
        let (pt, ph) = (pos[t], pos[h]);
        if pt != usize::MAX {
            degree[pt] += 1;
        }
        if ph != usize::MAX {
            degree[ph] += 1;
        }
        if pt != usize::MAX && ph != usize::MAX {
            m[(pt, ph)] = minus_omega.clone();
            m[(ph, pt)] = minus_conj.clone();
        }
    }
    for (i, d) in degree.into_iter().enumerate() {
        m[(i, i)] = CycloNum::from_int(n, d);
    }
    HermitianMatrix {
        index: sub.vertex_ids(),
        matrix: m,
    }
}

/// `L_omega(G)` of the whole graph.
pub fn graph_laplacian(graph: &OrientedGraph, param: RootParam) -> HermitianMatrix {
    build_laplacian(&Substructure::whole(graph), param)
}

/// Exact determinant by fraction-free (Bareiss) elimination. The empty
/// matrix has determinant 1.
pub fn determinant(m: &CycloMatrix) -> CycloNum {
    assert_eq!(m.rows, m.cols, "determinant of a non-square matrix");
    let n = m.rows;
    let order = m
        .entries
        .iter()
        .map(CycloNum::order)
        .fold(1u32, |acc, o| num_integer::lcm(acc, o));
    if n == 0 {
        return CycloNum::one(order);
    }
    if (0..n).any(|i| m.row(i).iter().all(CycloNum::is_zero)) {
        return CycloNum::zero(order);
    }
    let mut a: Vec<Vec<CycloNum>> = (0..n)
        .map(|i| m.row(i).iter().map(|x| x.lift(order)).collect())
        .collect();
    let mut negate = false;
    let mut prev_inv = CycloNum::one(order);
    for k in 0..n - 1 {
        let Some(p) = (k..n).find(|&r| !a[r][k].is_zero()) else {
            return CycloNum::zero(order);
        };
        if p != k {
            a.swap(p, k);
            negate = !negate;
        }
        let (top, rest) = a.split_at_mut(k + 1);
        let pivot_row = &top[k];
        let pivot = &pivot_row[k];
        for row in rest.iter_mut() {
            let lead = row[k].clone();
            for j in k + 1..n {
                let mut v = &row[j] * pivot;
                if !lead.is_zero() && !pivot_row[j].is_zero() {
                    v = &v - &(&lead * &pivot_row[j]);
                }
                row[j] = &v * &prev_inv;
            }
        }
        prev_inv = a[k][k].inv().expect("pivot is non-zero");
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

/// `det L_omega[V']`: the principal minor of the full graph Laplacian on the
/// given vertices. Diagonal entries are full-graph degrees.
pub fn laplacian_minor(graph: &OrientedGraph, param: RootParam, vset: &[VertexId]) -> Result<CycloNum> {
    let rows = graph.vertex_indices(vset)?;
    let full = graph_laplacian(graph, param);
    Ok(determinant(&full.matrix.select(&rows, &rows)))
}

/// Floating-point determinant with partial pivoting, for cross-checks.
pub fn complex_determinant(n: usize, entries: &[Complex64]) -> Complex64 {
    assert_eq!(entries.len(), n * n, "determinant of a non-square matrix");
    let mut a = entries.to_vec();
    let mut det = Complex64::new(1.0, 0.0);
    for k in 0..n {
        let p = (k..n)
            .max_by(|&x, &y| a[x * n + k].norm().total_cmp(&a[y * n + k].norm()))
            .unwrap();
        if a[p * n + k].norm() == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        if p != k {
            for j in 0..n {
                a.swap(p * n + j, k * n + j);
            }
            det = -det;
        }
        let pivot = a[k * n + k];
        det *= pivot;
        for i in k + 1..n {
            let f = a[i * n + k] / pivot;
            for j in k..n {
                let s = a[k * n + j];
                a[i * n + j] -= f * s;
            }
        }
    }
    det
}

pub fn numeric_determinant(m: &CycloMatrix) -> Complex64 {
    assert_eq!(m.rows, m.cols, "determinant of a non-square matrix");
    complex_determinant(m.rows, &m.to_complex())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::cycle_contribution;

    fn w(n: u32) -> RootParam {
        RootParam::primitive(n).unwrap()
    }

    #[test]
    fn incidence_single_edge() {
        let g = OrientedGraph::from_arcs(&[(1, 2)]).unwrap();
        let s = build_incidence(&Substructure::whole(&g), w(5));
        assert_eq!(s.matrix[(0, 0)], -CycloNum::zeta_pow(5, 1));
        assert!(s.matrix[(1, 0)].is_one());
    }

    #[test]
    fn incidence_shapes() {
        let g = OrientedGraph::from_arcs(&[(1, 2), (3, 4)]).unwrap();
        let s = build_incidence(&Substructure::new(&g, &[], &[0, 1]).unwrap(), w(3));
        assert_eq!((s.matrix.rows(), s.matrix.cols()), (0, 2));
        let s = build_incidence(&Substructure::new(&g, &[1, 2], &[0, 1]).unwrap(), w(3));
        assert!(s.matrix[(0, 1)].is_zero() && s.matrix[(1, 1)].is_zero());
    }

    #[test]
    fn two_vertex_trees() {
        // a -> b -> c with c outside: rootless
        let g = OrientedGraph::from_arcs(&[(1, 2), (2, 3)]).unwrap();
        let p = w(7);
        let om = root_of_unity(p);
        let l = build_laplacian(&Substructure::new(&g, &[1, 2], &[0, 1]).unwrap(), p);
        let expected = CycloMatrix::from_rows(vec![
            vec![CycloNum::one(7), -&om],
            vec![-&om.conjugate(), CycloNum::from_int(7, 2)],
        ]);
        assert_eq!(l.matrix, expected);
        assert!(l.determinant().is_one());
        let l = build_laplacian(&Substructure::new(&g, &[1, 2], &[0]).unwrap(), p);
        assert!(l.determinant().is_zero());
        let empty = build_laplacian(&Substructure::new(&g, &[], &[]).unwrap(), p);
        assert_eq!(empty.matrix.rows(), 0);
        assert!(empty.determinant().is_one());
    }

    #[test]
    fn determinant_basics() {
        assert!(determinant(&CycloMatrix::identity(3)).is_one());
        let mut m = CycloMatrix::identity(3);
        m[(1, 1)] = CycloNum::zero(1);
        m[(0, 1)] = CycloNum::from_int(1, 5);
        assert!(determinant(&m).is_zero());
        // needs a row swap
        let m = CycloMatrix::from_rows(vec![
            vec![CycloNum::zero(1), CycloNum::one(1)],
            vec![CycloNum::one(1), CycloNum::zero(1)],
        ]);
        assert_eq!(determinant(&m), CycloNum::from_int(1, -1));
    }

    #[test]
    fn numeric_determinants() {
        let m = CycloMatrix::from_rows(vec![vec![CycloNum::from_int(1, 2)]]);
        assert!((numeric_determinant(&m) - Complex64::new(2.0, 0.0)).norm() < 1e-12);
        let i = CycloNum::zeta_pow(4, 1);
        let m = CycloMatrix::from_rows(vec![
            vec![CycloNum::one(4), -&i],
            vec![i.clone(), CycloNum::one(4)],
        ]);
        assert!(numeric_determinant(&m).norm() < 1e-12);
        assert!(determinant(&m).is_zero());
    }

    #[test]
    fn principal_minors() {
        let tri = OrientedGraph::from_arcs(&[(1, 2), (2, 3), (3, 1)]).unwrap();
        assert!(laplacian_minor(&tri, RootParam::ONE, &[1, 2, 3]).unwrap().is_zero());
        assert!(laplacian_minor(&tri, w(5), &[]).unwrap().is_one());
        assert_eq!(laplacian_minor(&tri, w(2), &[1, 2, 3]).unwrap(), CycloNum::from_int(1, 4));
        assert_eq!(laplacian_minor(&tri, w(4), &[1, 2, 3]).unwrap(), CycloNum::from_int(1, 2));
        assert!(matches!(
            laplacian_minor(&tri, w(4), &[9]),
            Err(crate::Error::UnknownVertex(9))
        ));
    }

    #[test]
    fn bare_cycle_matches_walk_weight() {
        // 1->2, 3->2, 3->4, 4->5, 5->1: walking 1,2,3,4,5 the edge 3->2 is
        // against the walk
        let g = OrientedGraph::from_arcs(&[(1, 2), (3, 2), (3, 4), (4, 5), (5, 1)]).unwrap();
        for p in [w(3), w(5), RootParam::new(5, 2).unwrap(), w(7), w(12)] {
            let l = graph_laplacian(&g, p);
            let order = [1, 2, 3, 4, 5];
            let idx = |v| order.iter().position(|&x| x == v).unwrap();
            let walk: CycloNum = (0..5)
                .map(|i| {
                    let (a, b) = (order[i], order[(i + 1) % 5]);
                    // adjacency entry a_{uv} = -l_{uv}
                    -&l.matrix[(idx(a), idx(b))]
                })
                .product();
            let via_weight = &(&CycloNum::from_int(1, 2) - &walk) - &walk.conjugate();
            let det = l.determinant();
            assert_eq!(det, via_weight);
            assert_eq!(det, cycle_contribution(p, 5, 1));
        }
    }
}
