//! Total unimodularity, balancedness and class `Q` membership.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::bitset::{combinations, VertexSet};
use crate::budget::Budget;
use crate::cliques::clique_matrix;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::matrix::IntMatrix;
use crate::scalar::ExactInt;

/// Determinant by fraction-free (Bareiss) elimination.
pub fn determinant<I: ExactInt>(mut a: Vec<Vec<I>>) -> I {
    let n = a.len();
    if n == 0 {
        return I::one();
    }
    let mut sign = I::one();
    let mut prev = I::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return I::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = a[i][j].clone() * a[k][k].clone() - a[i][k].clone() * a[k][j].clone();
                a[i][j] = v / prev.clone();
            }
        }
        prev = a[k][k].clone();
    }
    sign * a[n - 1][n - 1].clone()
}

/// Determinant of the square submatrix on `rows` x `cols`.
pub fn minor<I: ExactInt>(m: &IntMatrix, rows: &[usize], cols: &[usize]) -> I {
    determinant(
        rows.iter()
            .map(|&i| cols.iter().map(|&j| I::of(m.get(i, j))).collect())
            .collect(),
    )
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violator {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub det: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TuReport {
    pub is_tu: bool,
    /// Smallest non-unimodular square submatrix, least rows then least columns.
    pub violator: Option<Violator>,
    pub minors_checked: u64,
}

/// Exhaustive TU test with 128-bit determinants.
pub fn is_totally_unimodular(m: &IntMatrix, budget: &Budget) -> Result<TuReport> {
    if m.rows().min(m.cols()) > 20 {
        is_totally_unimodular_with::<num_bigint::BigInt>(m, budget)
    } else {
        is_totally_unimodular_with::<i128>(m, budget)
    }
}

/// Exhaustive TU test over any exact integer type wide enough for the minors.
///
/// Square submatrices are examined by increasing size, so when size `k` is
/// reached every smaller minor is already known to be in `{0, ±1}`. A row or
/// column with at most one nonzero then forces the minor into `{0, ±1}` by
/// cofactor expansion, and such submatrices are skipped.
pub fn is_totally_unimodular_with<I: ExactInt>(m: &IntMatrix, budget: &Budget) -> Result<TuReport> {
    m.check_signed_unit()?;
    let mut checked = 0u64;
    let max_k = m.rows().min(m.cols());
    for k in 2..=max_k {
        for rows in combinations(m.rows(), k) {
            let cand: Vec<usize> = (0..m.cols())
                .filter(|&j| rows.iter().filter(|&&i| m.get(i, j) != 0).count() >= 2)
                .collect();
            if cand.len() < k
                || rows
                    .iter()
                    .any(|&i| cand.iter().filter(|&&j| m.get(i, j) != 0).count() < 2)
            {
                continue;
            }
            for pick in combinations(cand.len(), k) {
                let cols: Vec<usize> = pick.iter().map(|&p| cand[p]).collect();
                if rows
                    .iter()
                    .any(|&i| cols.iter().filter(|&&j| m.get(i, j) != 0).count() < 2)
                {
                    continue;
                }
                checked += 1;
                if checked > budget.tu_max_minors {
                    return Err(Error::budget("TU minor enumeration", budget.tu_max_minors));
                }
                let det: I = minor(m, &rows, &cols);
                if det.abs() > I::one() {
                    let det = det.to_i64().expect("minimal violators have small determinants");
                    return Ok(TuReport {
                        is_tu: false,
                        violator: Some(Violator { rows, cols, det }),
                        minors_checked: checked,
                    });
                }
            }
        }
    }
    Ok(TuReport {
        is_tu: true,
        violator: None,
        minors_checked: checked,
    })
}

/// TU test of `B_G`.
pub fn is_tu_graph(g: &Graph, budget: &Budget) -> Result<TuReport> {
    let (b, _) = clique_matrix(g, budget)?;
    is_totally_unimodular(&b, budget)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BalanceReport {
    pub balanced: bool,
    /// Rows and columns of an odd-cycle incidence submatrix.
    pub witness: Option<(Vec<usize>, Vec<usize>)>,
}

/// A 0/1 matrix is balanced when no square submatrix of odd order is the
/// incidence matrix of a cycle. Such submatrices are exactly the chordless
/// cycles of length `2 mod 4` in the row-column bipartite graph.
pub fn is_balanced(m: &IntMatrix) -> Result<BalanceReport> {
    m.check_binary()?;
    let r = m.rows();
    let g = row_column_graph(m)?;
    let cycle = g.find_chordless_cycle(6, |len| len % 4 == 2);
    Ok(match cycle {
        None => BalanceReport {
            balanced: true,
            witness: None,
        },
        Some(c) => {
            let mut rows: Vec<usize> = c.iter().copied().filter(|&v| v < r).collect();
            let mut cols: Vec<usize> = c.iter().filter(|&&v| v >= r).map(|&v| v - r).collect();
            rows.sort_unstable();
            cols.sort_unstable();
            BalanceReport {
                balanced: false,
                witness: Some((rows, cols)),
            }
        }
    })
}

fn row_column_graph(m: &IntMatrix) -> Result<Graph> {
    let r = m.rows();
    let mut edges = Vec::new();
    for i in 0..r {
        for j in 0..m.cols() {
            if m.get(i, j) != 0 {
                edges.push((i, r + j));
            }
        }
    }
    Graph::from_edges(r + m.cols(), &edges)
}

/// Biadjacency matrix with rows `u_side` and columns the other vertices,
/// both in increasing order.
pub fn biadjacency(g: &Graph, u_side: VertexSet) -> Result<IntMatrix> {
    g.check_set(u_side)?;
    let us = u_side.to_vec();
    let vs = g.vertices().difference(u_side).to_vec();
    if !g.is_stable(u_side) || !g.is_stable(g.vertices().difference(u_side)) {
        return Err(Error::NotBipartite("declared sides are not stable sets".into()));
    }
    let mut m = IntMatrix::zeros(us.len(), vs.len());
    for (i, &u) in us.iter().enumerate() {
        for (j, &v) in vs.iter().enumerate() {
            if g.has_edge(u, v) {
                m.set(i, j, 1);
            }
        }
    }
    Ok(m)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QReport {
    pub member: bool,
    pub eulerian: bool,
    pub equal_sides: bool,
    pub edges: usize,
    pub edges_two_mod_four: bool,
    pub violator: Option<Violator>,
}

/// Whether the biadjacency matrix is not TU while every proper submatrix is.
///
/// The parity conditions every member must satisfy are computed alongside
/// and checked against the verdict; a member failing them is reported as an
/// internal error.
pub fn class_q_membership(g: &Graph, u_side: VertexSet, budget: &Budget) -> Result<QReport> {
    let m = biadjacency(g, u_side)?;
    let tu = is_totally_unimodular(&m, budget)?;
    let member = matches!(&tu.violator, Some(v) if v.rows.len() == m.rows() && v.cols.len() == m.cols());
    let eulerian = (0..g.n()).all(|v| g.degree(v).is_multiple_of(2));
    let equal_sides = m.rows() == m.cols();
    let edges = g.edge_count();
    let report = QReport {
        member,
        eulerian,
        equal_sides,
        edges,
        edges_two_mod_four: edges % 4 == 2,
        violator: tu.violator,
    };
    if member && !(eulerian && equal_sides && report.edges_two_mod_four) {
        return Err(Error::Internal(format!(
            "minimally non-TU biadjacency violates the parity conditions: {report:?}"
        )));
    }
    Ok(report)
}

/// Splits `rows` into two parts whose signed sum (first minus second) has
/// all entries in `{0, ±1}`. The first row always goes to the first part;
/// the remaining assignments are tried in binary counting order.
pub fn row_bipartition(
    m: &IntMatrix,
    rows: &[usize],
    budget: &Budget,
) -> Result<Option<(Vec<usize>, Vec<usize>)>> {
    if rows.len() > budget.row_partition_max_rows {
        return Err(Error::budget("signed row partition", budget.row_partition_max_rows as u64));
    }
    if let Some(&bad) = rows.iter().find(|&&i| i >= m.rows()) {
        return Err(Error::DimensionMismatch(format!("row {bad} out of range")));
    }
    if rows.is_empty() {
        return Ok(Some((Vec::new(), Vec::new())));
    }
    let k = rows.len();
    for mask in 0u64..1 << (k - 1) {
        let ok = (0..m.cols()).all(|j| {
            let s: i64 = rows
                .iter()
                .enumerate()
                .map(|(t, &i)| {
                    let neg = t > 0 && mask >> (t - 1) & 1 == 1;
                    if neg {
                        -m.get(i, j)
                    } else {
                        m.get(i, j)
                    }
                })
                .sum();
            s.abs() <= 1
        });
        if ok {
            let (mut a, mut b) = (Vec::new(), Vec::new());
            for (t, &i) in rows.iter().enumerate() {
                if t > 0 && mask >> (t - 1) & 1 == 1 {
                    b.push(i);
                } else {
                    a.push(i);
                }
            }
            return Ok(Some((a, b)));
        }
    }
    Ok(None)
}

/// All square submatrices (as row and column index lists) that are not TU
/// but whose proper square submatrices all are.
pub fn minimally_non_tu_submatrices(m: &IntMatrix) -> Result<Vec<(Vec<usize>, Vec<usize>)>> {
    m.check_signed_unit()?;
    if m.rows() > 16 || m.cols() > 16 {
        return Err(Error::budget("minimal violator listing", 16));
    }
    // closed[(R, C)]: every square submatrix of R x C, itself included, is unimodular
    let mut closed: HashMap<(u32, u32), bool> = HashMap::new();
    let mut out = Vec::new();
    let mask = |idx: &[usize]| idx.iter().fold(0u32, |acc, &i| acc | 1 << i);
    for k in 1..=m.rows().min(m.cols()) {
        for rows in combinations(m.rows(), k) {
            for cols in combinations(m.cols(), k) {
                let det: i128 = minor(m, &rows, &cols);
                let subs_closed = k == 1
                    || (0..k).all(|a| {
                        (0..k).all(|b| {
                            let r: Vec<usize> = rows.iter().copied().filter(|&x| x != rows[a]).collect();
                            let c: Vec<usize> = cols.iter().copied().filter(|&x| x != cols[b]).collect();
                            closed[&(mask(&r), mask(&c))]
                        })
                    });
                let unit = det.abs() <= 1;
                if subs_closed && !unit {
                    out.push((rows.clone(), cols.clone()));
                }
                closed.insert((mask(&rows), mask(&cols)), subs_closed && unit);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_named;
    use rand::{Rng, SeedableRng};

    fn mat(rows: &[&[i64]]) -> IntMatrix {
        let cols = rows.first().map_or(0, |r| r.len());
        IntMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>(), cols).unwrap()
    }

    /// Cofactor expansion along the first row.
    fn laplace(a: &[Vec<i64>]) -> i64 {
        let n = a.len();
        if n == 0 {
            return 1;
        }
        (0..n)
            .map(|j| {
                let sub: Vec<Vec<i64>> = a[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &v)| v).collect())
                    .collect();
                let s = if j % 2 == 0 { 1 } else { -1 };
                s * a[0][j] * laplace(&sub)
            })
            .sum()
    }

    fn slow_is_tu(m: &IntMatrix) -> bool {
        for k in 1..=m.rows().min(m.cols()) {
            for r in combinations(m.rows(), k) {
                for c in combinations(m.cols(), k) {
                    let a: Vec<Vec<i64>> = r.iter().map(|&i| c.iter().map(|&j| m.get(i, j)).collect()).collect();
                    if laplace(&a).abs() > 1 {
                        return false;
                    }
                }
            }
        }
        true
    }

    #[test]
    fn bareiss_matches_laplace() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        for _ in 0..300 {
            let n = rng.gen_range(0..=6);
            let a: Vec<Vec<i64>> = (0..n).map(|_| (0..n).map(|_| rng.gen_range(-3..=3)).collect()).collect();
            let big: Vec<Vec<num_bigint::BigInt>> =
                a.iter().map(|r| r.iter().map(|&v| v.into()).collect()).collect();
            assert_eq!(determinant(a.clone()), laplace(&a));
            assert_eq!(determinant(big), laplace(&a).into());
        }
    }

    #[test]
    fn examples() {
        let b = Budget::default();
        assert!(is_totally_unimodular(&IntMatrix::identity(5), &b).unwrap().is_tu);
        let c6 = mat(&[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]]);
        let r = is_totally_unimodular(&c6, &b).unwrap();
        assert!(!r.is_tu);
        let v = r.violator.unwrap();
        assert_eq!((v.rows, v.cols, v.det.abs()), (vec![0, 1, 2], vec![0, 1, 2], 2));
        let interval = mat(&[&[1, 1, 1, 0], &[0, 1, 1, 1], &[0, 0, 1, 1], &[1, 1, 0, 0]]);
        assert!(is_totally_unimodular(&interval, &b).unwrap().is_tu);
        assert!(matches!(
            is_totally_unimodular(&mat(&[&[2]]), &b),
            Err(Error::EntryOutOfRange { .. })
        ));
    }

    #[test]
    fn agrees_with_slow_oracle() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2);
        let b = Budget::default();
        for _ in 0..400 {
            let r = rng.gen_range(1..=6);
            let c = rng.gen_range(1..=6);
            let signed = rng.gen_bool(0.3);
            let rows: Vec<Vec<i64>> = (0..r)
                .map(|_| {
                    (0..c)
                        .map(|_| match rng.gen_range(0..4) {
                            0 | 1 => 0,
                            2 => 1,
                            _ if signed => -1,
                            _ => 1,
                        })
                        .collect()
                })
                .collect();
            let m = IntMatrix::from_rows(&rows, c).unwrap();
            let fast = is_totally_unimodular(&m, &b).unwrap();
            assert_eq!(fast.is_tu, slow_is_tu(&m), "{m:?}");
            if let Some(v) = fast.violator {
                let sub = m.submatrix(&v.rows, &v.cols);
                assert!(!slow_is_tu(&sub));
                assert_eq!(v.det.abs(), 2, "minimal violators have determinant ±2");
            }
        }
    }

    #[test]
    fn interval_matrices_are_tu() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let c = rng.gen_range(1..=7);
            let rows: Vec<Vec<i64>> = (0..rng.gen_range(1..=7))
                .map(|_| {
                    let a = rng.gen_range(0..c);
                    let z = rng.gen_range(a..c);
                    (0..c).map(|j| (a <= j && j <= z) as i64).collect()
                })
                .collect();
            let m = IntMatrix::from_rows(&rows, c).unwrap();
            assert!(is_totally_unimodular(&m, &Budget::default()).unwrap().is_tu);
        }
    }

    #[test]
    fn graphs() {
        let b = Budget::default();
        assert!(is_tu_graph(&build_named("Cn", &[6]).unwrap(), &b).unwrap().is_tu);
        assert!(is_tu_graph(&build_named("Kmn", &[3, 4]).unwrap(), &b).unwrap().is_tu);
        assert!(!is_tu_graph(&build_named("S_n", &[3]).unwrap(), &b).unwrap().is_tu);
    }

    #[test]
    fn balancedness() {
        assert!(is_balanced(&IntMatrix::identity(4)).unwrap().balanced);
        let triangle = mat(&[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]]);
        let r = is_balanced(&triangle).unwrap();
        assert!(!r.balanced);
        assert_eq!(r.witness, Some((vec![0, 1, 2], vec![0, 1, 2])));
        // C_4 incidence: the only cycle has length 8
        let c4 = mat(&[&[1, 1, 0, 0], &[0, 1, 1, 0], &[0, 0, 1, 1], &[1, 0, 0, 1]]);
        assert!(is_balanced(&c4).unwrap().balanced);
        let (b, _) = clique_matrix(&build_named("Kmn", &[2, 3]).unwrap(), &Budget::default()).unwrap();
        assert!(is_balanced(&b).unwrap().balanced);
    }

    #[test]
    fn class_q_examples() {
        let b = Budget::default();
        let c6 = build_named("Cn", &[6]).unwrap();
        let r = class_q_membership(&c6, [0, 2, 4].iter().collect(), &b).unwrap();
        assert!(r.member && r.eulerian && r.equal_sides && r.edges_two_mod_four);
        let c4 = build_named("Cn", &[4]).unwrap();
        assert!(!class_q_membership(&c4, [0, 2].iter().collect(), &b).unwrap().member);
        let c8 = build_named("Cn", &[8]).unwrap();
        assert!(!class_q_membership(&c8, [0, 2, 4, 6].iter().collect(), &b).unwrap().member);
        assert!(matches!(
            class_q_membership(&build_named("Cn", &[5]).unwrap(), [0, 2].iter().collect(), &b),
            Err(Error::NotBipartite(_))
        ));
    }

    #[test]
    fn row_partitions() {
        let b = Budget::default();
        let id = IntMatrix::identity(3);
        assert_eq!(row_bipartition(&id, &[0, 1, 2], &b).unwrap(), Some((vec![0, 1, 2], vec![])));
        let (bc4, _) = clique_matrix(&build_named("Cn", &[4]).unwrap(), &b).unwrap();
        let (p, q) = row_bipartition(&bc4, &[0, 1, 2, 3], &b).unwrap().unwrap();
        let signed: Vec<i64> = (0..4)
            .map(|j| p.iter().map(|&i| bc4.get(i, j)).sum::<i64>() - q.iter().map(|&i| bc4.get(i, j)).sum::<i64>())
            .collect();
        assert_eq!(signed, vec![0; 4]);
        let c6 = mat(&[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]]);
        assert_eq!(row_bipartition(&c6, &[0, 1, 2], &b).unwrap(), None);
    }

    #[test]
    fn minimal_violators() {
        let c6 = mat(&[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]]);
        assert_eq!(minimally_non_tu_submatrices(&c6).unwrap(), vec![(vec![0, 1, 2], vec![0, 1, 2])]);
        let with_ones = c6.with_row(&[1, 1, 1]).unwrap();
        let all = minimally_non_tu_submatrices(&with_ones).unwrap();
        assert_eq!(all, vec![(vec![0, 1, 2], vec![0, 1, 2])]);
        assert!(minimally_non_tu_submatrices(&IntMatrix::identity(3)).unwrap().is_empty());
    }
}
