//! Dense linear algebra: ranks and null spaces (exact over the Gaussian
//! rationals when possible, otherwise floating point), Hermitian PSD tests,
//! and joint eigenspaces of commuting normal matrices.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::scalar::QI;
use crate::Scalar;

pub type CMatrix = DMatrix<Complex64>;

pub fn to_cmatrix(rows: &[Vec<Scalar>]) -> CMatrix {
    let r = rows.len();
    let c = rows.first().map_or(0, Vec::len);
    CMatrix::from_fn(r, c, |i, j| rows[i][j].to_c64())
}

fn all_qi(rows: &[Vec<Scalar>]) -> Option<Vec<Vec<QI>>> {
    rows.iter().map(|r| r.iter().map(Scalar::as_qi).collect()).collect()
}

/// Rank of a QI matrix by fraction-free-free row reduction.
fn rank_qi(mut m: Vec<Vec<QI>>) -> usize {
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][c].is_zero()) else { continue };
        m.swap(rank, p);
        let inv = QI::new(num_traits::One::one(), Zero::zero()) / m[rank][c].clone();
        let pivot: Vec<QI> = m[rank].iter().map(|x| x * &inv).collect();
        for r in 0..m.len() {
            if r != rank && !m[r][c].is_zero() {
                let f = m[r][c].clone();
                for k in c..cols {
                    let d = &f * &pivot[k];
                    m[r][k] -= d;
                }
            }
        }
        m[rank] = pivot;
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

/// Rank of a sparse system, by incremental exact elimination over the
/// ground field when every entry is exact; falls back to SVD otherwise.
pub fn rank_sparse(rows: Vec<BTreeMap<usize, Scalar>>, n_cols: usize, eps: f64) -> (usize, bool) {
    if rows.iter().all(|r| r.values().all(Scalar::is_exact)) {
        if let Some(r) = rank_sparse_exact(&rows) {
            return (r, true);
        }
    }
    let mut m = CMatrix::zeros(rows.len(), n_cols);
    for (i, r) in rows.iter().enumerate() {
        for (j, v) in r {
            m[(i, *j)] = v.to_c64();
        }
    }
    (rank_c64(&m, eps), false)
}

fn rank_sparse_exact(rows: &[BTreeMap<usize, Scalar>]) -> Option<usize> {
    // pivot column → row normalised to 1 at the pivot
    let mut pivots: BTreeMap<usize, BTreeMap<usize, Scalar>> = BTreeMap::new();
    for r in rows {
        let mut row = r.clone();
        while let Some((&c, v)) = row.iter().next() {
            let v = v.clone();
            match pivots.get(&c) {
                Some(p) => {
                    for (j, x) in p {
                        let e = row.entry(*j).or_default();
                        *e = &*e - &(&v * x);
                    }
                    row.retain(|_, x| !x.is_zero());
                }
                None => {
                    let inv = v.inverse()?;
                    let norm = row.iter().map(|(j, x)| (*j, x * &inv)).collect();
                    pivots.insert(c, norm);
                    break;
                }
            }
        }
    }
    Some(pivots.len())
}

/// Numerical rank: singular values above `eps · max(1, σ_max)`.
pub fn rank_c64(m: &CMatrix, eps: f64) -> usize {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0;
    }
    let sv = m.clone().svd(false, false).singular_values;
    let top = sv.iter().cloned().fold(0.0, f64::max).max(1.0);
    sv.iter().filter(|&&s| s > eps * top).count()
}

/// Rank with a flag telling whether it was computed exactly.
pub fn rank(rows: &[Vec<Scalar>], eps: f64) -> (usize, bool) {
    match all_qi(rows) {
        Some(q) => (rank_qi(q), true),
        None => (rank_c64(&to_cmatrix(rows), eps), false),
    }
}

/// Orthonormal basis of the (numerical) null space, via the eigenvectors
/// of `M*M` with eigenvalue ≤ `(eps·scale)²`.
pub fn null_space(m: &CMatrix, eps: f64) -> Vec<DVector<Complex64>> {
    let n = m.ncols();
    if m.nrows() == 0 {
        return (0..n).map(|i| DVector::from_fn(n, |j, _| if i == j { Complex64::new(1.0, 0.0) } else { Complex64::zero() })).collect();
    }
    // pad to at least n rows so the SVD exposes all n right singular vectors
    let rows = m.nrows().max(n);
    let padded = CMatrix::from_fn(rows, n, |i, j| if i < m.nrows() { m[(i, j)] } else { Complex64::zero() });
    let svd = padded.svd(false, true);
    let v_t = svd.v_t.expect("requested V");
    let top = svd.singular_values.iter().cloned().fold(0.0, f64::max).max(1.0);
    (0..n)
        .filter(|&i| svd.singular_values[i] <= eps * top)
        .map(|i| v_t.row(i).adjoint())
        .collect()
}

/// Eigenvalues (ascending) of a Hermitian matrix.
pub fn hermitian_eigenvalues(m: &CMatrix) -> Vec<f64> {
    let h = (m + m.adjoint()) * Complex64::new(0.5, 0.0);
    let mut v: Vec<f64> = h.symmetric_eigen().eigenvalues.iter().cloned().collect();
    v.sort_by(|a, b| a.partial_cmp(b).unwrap_or(Ordering::Equal));
    v
}

#[derive(Clone, Debug, PartialEq)]
pub struct PsdResult {
    pub psd: bool,
    pub exact: bool,
    /// Smallest eigenvalue (float mode) or smallest pivot (exact mode).
    pub min_value: f64,
    /// A vector `v` with `v* G v < 0` when not PSD.
    pub witness: Option<Vec<Scalar>>,
}

/// PSD test: exact symmetric elimination when all entries are exact,
/// otherwise eigenvalues with tolerance `−tol·(1+‖G‖)`.
pub fn psd_test(g: &[Vec<Scalar>], tol: f64) -> PsdResult {
    if g.iter().flatten().all(Scalar::is_exact) {
        if let Some(r) = psd_exact(g) {
            return r;
        }
    }
    psd_float(g, tol)
}

fn unit(n: usize, i: usize) -> Vec<Scalar> {
    (0..n).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }).collect()
}

fn psd_exact(g: &[Vec<Scalar>]) -> Option<PsdResult> {
    let n = g.len();
    let mut m: Vec<Vec<Scalar>> = g.to_vec();
    // vecs[i] expresses the current i-th direction in original coordinates
    let mut vecs: Vec<Vec<Scalar>> = (0..n).map(|i| unit(n, i)).collect();
    let mut alive: Vec<usize> = (0..n).collect();
    let mut min_pivot = f64::INFINITY;
    while !alive.is_empty() {
        let mut pos = None;
        for &i in &alive {
            match m[i][i].real_sign(0.0)? {
                Ordering::Less => {
                    return Some(PsdResult {
                        psd: false,
                        exact: true,
                        min_value: m[i][i].to_f64(),
                        witness: Some(vecs[i].clone()),
                    })
                }
                Ordering::Greater if pos.is_none() => pos = Some(i),
                _ => {}
            }
        }
        let Some(p) = pos else {
            // all remaining diagonal entries vanish: PSD only if the block is zero
            for &i in &alive {
                for &j in &alive {
                    if i != j && !m[i][j].is_zero() {
                        let t = -m[i][j].conj();
                        let w: Vec<Scalar> = (0..n).map(|k| &vecs[i][k] + &(&t * &vecs[j][k])).collect();
                        return Some(PsdResult { psd: false, exact: true, min_value: -m[i][j].abs_f64(), witness: Some(w) });
                    }
                }
            }
            min_pivot = min_pivot.min(0.0);
            break;
        };
        let piv = m[p][p].clone();
        min_pivot = min_pivot.min(piv.to_f64());
        let inv = piv.inverse()?;
        alive.retain(|&i| i != p);
        for &i in &alive {
            let c = &m[p][i] * &inv;
            for k in 0..n {
                let d = &c.conj() * &vecs[p][k];
                vecs[i][k] = &vecs[i][k] - &d;
            }
        }
        for &i in &alive {
            for &j in &alive {
                let d = &(&m[i][p] * &m[p][j]) * &inv;
                m[i][j] = &m[i][j] - &d;
            }
        }
    }
    Some(PsdResult { psd: true, exact: true, min_value: if n == 0 { 0.0 } else { min_pivot }, witness: None })
}

fn psd_float(g: &[Vec<Scalar>], tol: f64) -> PsdResult {
    let m = to_cmatrix(g);
    if m.nrows() == 0 {
        return PsdResult { psd: true, exact: false, min_value: 0.0, witness: None };
    }
    let norm = m.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let h = (&m + m.adjoint()) * Complex64::new(0.5, 0.0);
    let eig = h.symmetric_eigen();
    let (i, &lo) = eig
        .eigenvalues
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.partial_cmp(b.1).unwrap_or(Ordering::Equal))
        .unwrap();
    let psd = lo >= -tol * (1.0 + norm);
    let witness = (!psd).then(|| eig.eigenvectors.column(i).iter().map(|z| Scalar::Approx(*z)).collect());
    PsdResult { psd, exact: false, min_value: lo, witness }
}

/// Joint eigenspaces of commuting normal matrices: a random real
/// combination of their Hermitian and anti-Hermitian parts is diagonalised
/// and eigenvectors are grouped by eigenvalue. Returns orthonormal bases
/// (as columns) with the eigenvalue of each input matrix on that space.
pub fn joint_eigenspaces(mats: &[CMatrix], eps: f64) -> Vec<(CMatrix, Vec<Complex64>)> {
    let n = mats.first().map_or(0, |m| m.nrows());
    if n == 0 {
        return Vec::new();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut h = CMatrix::zeros(n, n);
    let half = Complex64::new(0.5, 0.0);
    let mhalf_i = Complex64::new(0.0, -0.5);
    for m in mats {
        let re = (m + m.adjoint()) * half;
        let im = (m - m.adjoint()) * mhalf_i;
        h += re * Complex64::new(rng.gen_range(0.5..1.5), 0.0) + im * Complex64::new(rng.gen_range(0.5..1.5), 0.0);
    }
    let eig = h.symmetric_eigen();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].partial_cmp(&eig.eigenvalues[b]).unwrap_or(Ordering::Equal));
    let scale = eig.eigenvalues.iter().map(|x| x.abs()).fold(1.0, f64::max);
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for i in order {
        match groups.last_mut() {
            Some(g) if (eig.eigenvalues[i] - eig.eigenvalues[*g.last().unwrap()]).abs() <= eps.max(1e-9) * scale => g.push(i),
            _ => groups.push(vec![i]),
        }
    }
    groups
        .into_iter()
        .map(|g| {
            let basis = CMatrix::from_fn(n, g.len(), |r, c| eig.eigenvectors[(r, g[c])]);
            let v = basis.column(0).into_owned();
            let vals = mats.iter().map(|m| (v.adjoint() * m * &v)[(0, 0)]).collect();
            (basis, vals)
        })
        .collect()
}

/// `U = W V*` from the SVD `T = W Σ V*`: the unitary part of the polar
/// decomposition.
pub fn unitary_part(t: &CMatrix) -> CMatrix {
    let svd = t.clone().svd(true, true);
    svd.u.unwrap() * svd.v_t.unwrap()
}

#[cfg(test)]
mod test {
    use super::*;

    #[test]
    fn exact_psd_with_witness() {
        let g = vec![
            vec![Scalar::one(), Scalar::zero()],
            vec![Scalar::zero(), Scalar::int(-1)],
        ];
        let r = psd_test(&g, 1e-9);
        assert!(!r.psd && r.exact);
        assert_eq!(r.witness.unwrap(), vec![Scalar::zero(), Scalar::one()]);
        let g = vec![vec![Scalar::zero(), Scalar::one()], vec![Scalar::one(), Scalar::zero()]];
        let r = psd_test(&g, 1e-9);
        assert!(!r.psd);
        let w = r.witness.unwrap();
        let val = &(&w[0].conj() * &w[1]) + &(&w[1].conj() * &w[0]);
        assert_eq!(val.real_sign(0.0), Some(Ordering::Less));
        let g = vec![vec![Scalar::int(2), Scalar::one()], vec![Scalar::one(), Scalar::rat(1, 2)]];
        assert!(psd_test(&g, 1e-9).psd);
    }

    #[test]
    fn ranks_agree() {
        let rows = vec![vec![Scalar::one(), Scalar::int(2)], vec![Scalar::int(2), Scalar::int(4)]];
        assert_eq!(rank(&rows, 1e-9), (1, true));
        let approx: Vec<Vec<Scalar>> = rows.iter().map(|r| r.iter().map(|x| x.clone().into_approx()).collect()).collect();
        assert_eq!(rank(&approx, 1e-9), (1, false));
        assert_eq!(null_space(&to_cmatrix(&rows), 1e-9).len(), 1);
    }
}
