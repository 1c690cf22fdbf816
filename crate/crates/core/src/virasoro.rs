//! Virasoro λ-density representations `L_k w_n = (n + a + kλ) w_{n+k}` and
//! the discrete-series parameters `z_n = 1 − 6/(n(n+1))`,
//! `a_n^{(p,q)} = ((np+q)² − 1)/(4n(n+1))`.

use std::collections::BTreeMap;

use crate::algebra::GradedAlgebraSpec;
use crate::group::GroupElem;
use crate::induction::{InducedRep, Label, Origin, Truncation, Window};
use crate::matrix::SparseMatrix;
use crate::scalar::{qr, Q};
use crate::{Error, Result, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct DensityParams {
    pub a: Scalar,
    pub lambda: Scalar,
}

impl DensityParams {
    /// Requires `a` real and `Re λ = 1/2`.
    pub fn new(a: Scalar, lambda: Scalar) -> Result<Self> {
        if !a.im().is_zero_tol(1e-14) {
            return Err(Error::Invalid("a must be real".into()));
        }
        if !lambda.re().approx_eq(&Scalar::rat(1, 2), 1e-14) {
            return Err(Error::Invalid(format!("Re λ must be 1/2, got λ = {lambda}")));
        }
        Ok(DensityParams { a, lambda })
    }
}

/// Banded matrices of `L_k` (`|k| ≤ k_range`) on `w_n`, `n ∈ window`, and
/// `C = 0`. Generator names match [`GradedAlgebraSpec::virasoro_density`].
pub fn density_rep(p: &DensityParams, window: Window, k_range: i64) -> InducedRep {
    let (lo, hi) = (window.lo, window.hi - 1);
    let dim = (hi - lo + 1) as usize;
    let mut ops = BTreeMap::new();
    for k in -k_range..=k_range {
        let mut m = SparseMatrix::square(dim);
        for n in lo..=hi {
            let t = n + k;
            if (lo..=hi).contains(&t) {
                let v = &(&Scalar::int(n) + &p.a) + &(&p.lambda * &Scalar::int(k));
                m.set((t - lo) as usize, (n - lo) as usize, v);
            }
        }
        ops.insert(GradedAlgebraSpec::vir_name(k), m);
    }
    ops.insert("C".into(), SparseMatrix::square(dim));
    InducedRep {
        labels: (lo..=hi).map(Label::Int).collect(),
        degrees: (lo..=hi).map(GroupElem::int).collect(),
        ops,
        truncation: Truncation { cut_lo: true, cut_hi: true },
        origin: Origin::Density { a: p.a.clone(), lambda: p.lambda.clone() },
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FqsPoint {
    pub n: i64,
    pub p: i64,
    pub q: i64,
    pub z: Q,
    pub a: Q,
}

/// All `(z_n, a_n^{(p,q)})` for `2 ≤ n ≤ n_max`, `0 ≤ p < q < n`.
pub fn fqs_parameters(n_max: i64) -> Result<Vec<FqsPoint>> {
    if n_max < 2 {
        return Err(Error::Invalid(format!("n_max must be at least 2, got {n_max}")));
    }
    let mut out = Vec::new();
    for n in 2..=n_max {
        let z = Q::from_integer(1.into()) - qr(6, n * (n + 1));
        for q in 1..n {
            for p in 0..q {
                let a = qr((n * p + q).pow(2) - 1, 4 * n * (n + 1));
                out.push(FqsPoint { n, p, q, z: z.clone(), a });
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod test {
    use super::*;
    use crate::scalar::q;

    #[test]
    fn density_entries() {
        let p = DensityParams::new(Scalar::zero(), Scalar::rat(1, 2)).unwrap();
        let rep = density_rep(&p, Window::symmetric(3), 2);
        let i = |n: i64| (n + 3) as usize;
        assert_eq!(rep.op("L[1]").unwrap().get(i(1), i(0)), Scalar::rat(1, 2));
        assert_eq!(rep.op("L[0]").unwrap().get(i(2), i(2)), Scalar::int(2));
        assert!(DensityParams::new(Scalar::zero(), Scalar::one()).is_err());
    }

    #[test]
    fn fqs_small_cases() {
        let pts = fqs_parameters(3).unwrap();
        let n2: Vec<_> = pts.iter().filter(|x| x.n == 2).collect();
        assert_eq!(n2.len(), 1);
        assert_eq!((n2[0].z.clone(), n2[0].a.clone()), (q(0), q(0)));
        let n3: Vec<Q> = pts.iter().filter(|x| x.n == 3).map(|x| x.a.clone()).collect();
        assert_eq!(n3, vec![q(0), qr(1, 16), qr(1, 2)]);
        assert!(pts.iter().filter(|x| x.n == 3).all(|x| x.z == qr(1, 2)));
        assert!(fqs_parameters(1).is_err());
    }
}
