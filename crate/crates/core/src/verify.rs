//! Verification oracles: relation residuals, commutants, equivalence,
//! Casimir scalars, finite-dimensional well-behavedness, Gram positivity.
//!
//! Exact representations are checked with no tolerance (an entry either
//! vanishes or it does not); float representations use a relative
//! tolerance, by default `1e-10`.

use std::collections::BTreeMap;
use std::fmt;

use nalgebra::DVector;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Adjoint, Family, GradedAlgebraSpec};
use crate::character::finite::{finite_act, grading_of};
use crate::character::{
    dyn_eval_word, dyn_extend_orbit, sl2_act, sl2_eval_word, BranchPolicy, ExtendOptions, FiniteGroupCharacter,
    Sl2Character, Sl2Kind, ZeroDegreeFunctional,
};
use crate::expectation::conditional_expectation;
use crate::group::GroupElem;
use crate::induction::{excursion, InducedRep};
use crate::linalg::{self, CMatrix, PsdResult};
use crate::matrix::SparseMatrix;
use crate::poly::simplest_between;
use crate::scalar::Q;
use crate::word::{GradedWord, Letter, NCPolynomial};
use crate::{Error, Result, Scalar};

pub const DEFAULT_TOLERANCE: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerificationReport {
    pub check: String,
    pub status: Status,
    /// Nonnegative; exactly zero for a passing exact check.
    pub residual: Scalar,
    pub tolerance: f64,
    pub witness: Option<String>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    fn judge(check: &str, residual: Scalar, tolerance: f64, witness: Option<String>) -> Self {
        let ok = if residual.is_exact() { residual.is_zero() } else { residual.to_f64() <= tolerance };
        VerificationReport {
            check: check.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            residual,
            tolerance,
            witness: if ok { None } else { witness },
        }
    }
}

/// CLI-style exit code for a batch of reports: 0 all pass, 1 any fail,
/// 2 otherwise inconclusive.
pub fn exit_code(reports: &[VerificationReport]) -> i32 {
    if reports.iter().any(|r| r.status == Status::Fail) {
        1
    } else if reports.iter().any(|r| r.status == Status::Inconclusive) {
        2
    } else {
        0
    }
}

/// Residual of `m` on the given columns: exact zero, or the largest entry
/// magnitude divided by `1 + scale`.
fn column_residual(m: &SparseMatrix, cols: &[usize], scale: f64) -> (Scalar, Option<(usize, usize)>) {
    let (v, pos) = m.max_abs_in_cols(cols);
    if m.is_exact() {
        (if pos.is_none() { Scalar::zero() } else { Scalar::approx(v) }, pos)
    } else {
        (Scalar::approx(v / (1.0 + scale)), pos)
    }
}

fn worse(a: &(Scalar, Option<String>), b: &(Scalar, Option<String>)) -> bool {
    let key = |x: &Scalar| if x.is_exact() && x.is_zero() { -1.0 } else { x.to_f64() };
    key(&b.0) > key(&a.0)
}

/// `max_r ‖π(r)‖` over the defining relations plus the adjointness check
/// `π(x)* = π(x*)`, both restricted to `interior` columns.
pub fn relation_residual(
    rep: &InducedRep,
    spec: &GradedAlgebraSpec,
    interior: &[usize],
    tolerance: f64,
) -> Result<VerificationReport> {
    if interior.is_empty() {
        return Err(Error::Invalid("empty interior".into()));
    }
    let mut worst: (Scalar, Option<String>) = (Scalar::zero(), None);
    for (i, r) in spec.relations.iter().enumerate() {
        let mut scale: f64 = 0.0;
        let mut total = SparseMatrix::square(rep.dim());
        for (w, c) in r.terms() {
            let t = rep.word_matrix(spec, w)?.scale(c);
            scale = scale.max(t.max_abs_in_cols(interior).0);
            total = total.add(&t);
        }
        let (res, pos) = column_residual(&total, interior, scale);
        let cand = (res, pos.map(|(_, j)| format!("relation {} ({}) at column {}", i, spec.poly_string(r), rep.labels[j])));
        if worse(&worst, &cand) {
            worst = cand;
        }
    }
    for (gi, g) in spec.generators.iter().enumerate() {
        let m = rep.letter_matrix(spec, Letter::plain(gi))?;
        let ms = rep.letter_matrix(spec, Letter::starred(gi))?;
        // a column j of π(x)* is exact when the row j of π(x) is: interior rows
        let diff = m.adjoint().sub(&ms);
        let scale = m.max_abs();
        let (res, pos) = column_residual(&diff, interior, scale);
        let cand = (res, pos.map(|(_, j)| format!("adjoint of {} at column {}", g.name, rep.labels[j])));
        if worse(&worst, &cand) {
            worst = cand;
        }
    }
    Ok(VerificationReport::judge("relations", worst.0, tolerance, worst.1))
}

/// `relation_residual` on the interior implied by the spec's relations.
pub fn relation_check(rep: &InducedRep, spec: &GradedAlgebraSpec, tolerance: f64) -> Result<VerificationReport> {
    relation_residual(rep, spec, &rep.interior(excursion(spec)), tolerance)
}

#[derive(Clone, Debug, PartialEq)]
pub struct CommutantReport {
    pub dimension: usize,
    pub exact: bool,
    pub irreducible: bool,
}

/// Sparse rows of the linear system `T A_i − B_i T = 0` in the unknowns
/// `T_{ab}` (index `a·n + b`).
fn intertwiner_rows(a: &[&SparseMatrix], b: &[&SparseMatrix], n: usize) -> Vec<BTreeMap<usize, Scalar>> {
    let mut rows = Vec::new();
    for (ai, bi) in a.iter().zip(b) {
        let mut eq: Vec<BTreeMap<usize, Scalar>> = vec![BTreeMap::new(); n * n];
        // (TA)_{ij} = Σ_k T_{ik} A_{kj}
        for (k, j, v) in ai.entries() {
            for i in 0..n {
                let e = eq[i * n + j].entry(i * n + k).or_default();
                *e = &*e + v;
            }
        }
        // (BT)_{ij} = Σ_k B_{ik} T_{kj}
        for (i, k, v) in bi.entries() {
            for j in 0..n {
                let e = eq[i * n + j].entry(k * n + j).or_default();
                *e = &*e - v;
            }
        }
        for mut r in eq {
            r.retain(|_, v| !v.is_zero());
            if !r.is_empty() {
                rows.push(r);
            }
        }
    }
    rows
}

/// `dim {T : T M_i = M_i T, T M_i* = M_i* T}`; irreducible iff 1.
pub fn commutant_dimension(mats: &[&SparseMatrix]) -> Result<CommutantReport> {
    let n = mats.first().map_or(0, |m| m.n_rows);
    if mats.iter().any(|m| m.n_rows != n || m.n_cols != n) {
        return Err(Error::Invalid("commutant of matrices of different sizes".into()));
    }
    let adj: Vec<SparseMatrix> = mats.iter().map(|m| m.adjoint()).collect();
    let all: Vec<&SparseMatrix> = mats.iter().copied().chain(adj.iter()).collect();
    let rows = intertwiner_rows(&all, &all, n);
    let (rank, exact) = linalg::rank_sparse(rows, n * n, 1e-9);
    let dimension = n * n - rank;
    Ok(CommutantReport { dimension, exact, irreducible: dimension == 1 })
}

pub fn commutant_report(rep: &InducedRep, tolerance: f64) -> Result<VerificationReport> {
    let mats: Vec<&SparseMatrix> = rep.ops.values().collect();
    let c = commutant_dimension(&mats)?;
    Ok(VerificationReport {
        check: "commutant".into(),
        status: if c.irreducible { Status::Pass } else { Status::Fail },
        residual: Scalar::int(c.dimension as i64 - 1),
        tolerance,
        witness: (!c.irreducible).then(|| format!("commutant has dimension {}", c.dimension)),
    })
}

fn c64_ops(rep: &InducedRep) -> Vec<(String, CMatrix)> {
    rep.ops.iter().map(|(k, v)| (k.clone(), v.to_c64())).collect()
}

fn float_null_space(rows: &[BTreeMap<usize, Scalar>], n_cols: usize, eps: f64) -> Vec<DVector<Complex64>> {
    let mut m = CMatrix::zeros(rows.len(), n_cols);
    for (i, r) in rows.iter().enumerate() {
        for (j, v) in r {
            m[(i, *j)] = v.to_c64();
        }
    }
    linalg::null_space(&m, eps)
}

/// Basis of the commutant (float), as `n×n` matrices.
pub fn commutant_basis(mats: &[&SparseMatrix]) -> Vec<CMatrix> {
    let n = mats.first().map_or(0, |m| m.n_rows);
    let adj: Vec<SparseMatrix> = mats.iter().map(|m| m.adjoint()).collect();
    let all: Vec<&SparseMatrix> = mats.iter().copied().chain(adj.iter()).collect();
    let rows = intertwiner_rows(&all, &all, n);
    float_null_space(&rows, n * n, 1e-9)
        .into_iter()
        .map(|v| CMatrix::from_fn(n, n, |a, b| v[a * n + b]))
        .collect()
}

/// Split a finite representation into the eigenspaces of a generic
/// Hermitian element of its commutant. Each piece is returned as the
/// compressed operators `Q* π(x) Q`.
pub fn decompose_by_commutant(rep: &InducedRep) -> Vec<BTreeMap<String, CMatrix>> {
    let mats: Vec<&SparseMatrix> = rep.ops.values().collect();
    let basis = commutant_basis(&mats);
    let n = rep.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let mut h = CMatrix::zeros(n, n);
    for b in &basis {
        let herm = (b + b.adjoint()) * Complex64::new(rng.gen_range(0.5..1.5), 0.0);
        let skew = (b - b.adjoint()) * Complex64::new(0.0, rng.gen_range(0.5..1.5));
        h += herm + skew;
    }
    let ops = c64_ops(rep);
    linalg::joint_eigenspaces(&[h], 1e-7)
        .into_iter()
        .map(|(q, _)| ops.iter().map(|(k, m)| (k.clone(), q.adjoint() * m * &q)).collect())
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub enum Equivalence {
    Equivalent { intertwiner: CMatrix, residual: f64 },
    Inequivalent { witness: String },
    Inconclusive { reason: String },
}

impl Equivalence {
    pub fn is_equivalent(&self) -> bool {
        matches!(self, Equivalence::Equivalent { .. })
    }
}

const MAX_TRACE_WORDS: usize = 20_000;

fn words_over(k: usize, max_len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut layer: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for i in 0..k {
                let mut v = w.clone();
                v.push(i);
                next.push(v);
            }
        }
        if out.len() + next.len() > MAX_TRACE_WORDS {
            let room = MAX_TRACE_WORDS - out.len();
            out.extend(next.into_iter().take(room));
            return out;
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// Unitary equivalence of two finite representations with the same
/// operator names: traces of words up to `max_len` must agree, after which
/// an intertwiner is solved for and made unitary.
pub fn equivalence_check(r1: &InducedRep, r2: &InducedRep, max_len: usize, tolerance: f64) -> Equivalence {
    if r1.dim() != r2.dim() {
        return Equivalence::Inequivalent { witness: "dim".into() };
    }
    if r1.ops.keys().ne(r2.ops.keys()) {
        return Equivalence::Inequivalent { witness: "operator names differ".into() };
    }
    let a = c64_ops(r1);
    let b = c64_ops(r2);
    let n = r1.dim();
    let scale = a.iter().chain(&b).map(|(_, m)| m.iter().map(|z| z.norm()).fold(0.0, f64::max)).fold(1.0, f64::max);
    for w in words_over(a.len(), max_len) {
        let mut ma = CMatrix::identity(n, n);
        let mut mb = CMatrix::identity(n, n);
        for &i in &w {
            ma *= &a[i].1;
            mb *= &b[i].1;
        }
        let (ta, tb) = (ma.trace(), mb.trace());
        let bound = scale.powi(w.len() as i32) * n as f64;
        if (ta - tb).norm() > 1e-8 * bound.max(1.0) {
            let names: Vec<&str> = w.iter().map(|&i| a[i].0.as_str()).collect();
            return Equivalence::Inequivalent { witness: names.join(" ") };
        }
    }
    let sa: Vec<&SparseMatrix> = r1.ops.values().collect();
    let sb: Vec<&SparseMatrix> = r2.ops.values().collect();
    let rows = intertwiner_rows(&sa, &sb, n);
    let null = float_null_space(&rows, n * n, 1e-9);
    if null.is_empty() {
        return Equivalence::Inconclusive { reason: "traces agree but no intertwiner was found".into() };
    }
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..8 {
        let mut t = CMatrix::zeros(n, n);
        for v in &null {
            let c = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            t += CMatrix::from_fn(n, n, |i, j| v[i * n + j]) * c;
        }
        let sv = t.clone().svd(false, false).singular_values;
        let lo = sv.iter().cloned().fold(f64::INFINITY, f64::min);
        if lo < 1e-8 {
            continue;
        }
        let u = linalg::unitary_part(&t);
        let residual = a
            .iter()
            .zip(&b)
            .map(|((_, ma), (_, mb))| (&u * ma - mb * &u).iter().map(|z| z.norm()).fold(0.0, f64::max))
            .fold(0.0, f64::max);
        if residual <= tolerance.max(1e-9) * scale {
            return Equivalence::Equivalent { intertwiner: u, residual };
        }
    }
    Equivalence::Inconclusive { reason: "intertwiners found but none is invertible".into() }
}

pub fn equivalence_report(r1: &InducedRep, r2: &InducedRep, tolerance: f64) -> VerificationReport {
    let e = equivalence_check(r1, r2, 6, tolerance);
    let (status, residual, witness) = match &e {
        Equivalence::Equivalent { residual, .. } => (Status::Pass, Scalar::approx(*residual), None),
        Equivalence::Inequivalent { witness } => (Status::Fail, Scalar::approx(f64::INFINITY), Some(witness.clone())),
        Equivalence::Inconclusive { reason } => (Status::Inconclusive, Scalar::approx(f64::NAN), Some(reason.clone())),
    };
    VerificationReport { check: "equivalence".into(), status, residual, tolerance, witness }
}

/// `‖4π(F)π(E) + π(H)(π(H) + 2) − s‖` on the interior.
pub fn casimir_check(rep: &InducedRep, s: &Scalar, tolerance: f64) -> Result<VerificationReport> {
    let (e, f, h) = (rep.op("E")?, rep.op("F")?, rep.op("H")?);
    let n = rep.dim();
    let id = SparseMatrix::identity(n);
    let c = f
        .mul(e)
        .scale(&Scalar::int(4))
        .add(&h.mul(&h.add(&id.scale(&Scalar::int(2)))))
        .sub(&id.scale(s));
    let interior = rep.interior(1);
    if interior.is_empty() {
        return Err(Error::Invalid("empty interior".into()));
    }
    let (res, pos) = column_residual(&c, &interior, s.abs_f64() + h.max_abs().powi(2));
    let witness = pos.map(|(_, j)| format!("column {}", rep.labels[j]));
    Ok(VerificationReport::judge("casimir", res, tolerance, witness))
}

fn all_letters(spec: &GradedAlgebraSpec) -> Vec<Letter> {
    let mut out = Vec::new();
    for (i, g) in spec.generators.iter().enumerate() {
        out.push(Letter::plain(i));
        if g.adjoint == Adjoint::Star {
            out.push(Letter::starred(i));
        }
    }
    out
}

/// Words of length `1..=max_len` over the letters, grouped by degree.
fn words_by_degree(spec: &GradedAlgebraSpec, max_len: usize) -> Result<BTreeMap<GroupElem, Vec<GradedWord>>> {
    let letters = all_letters(spec);
    let mut out: BTreeMap<GroupElem, Vec<GradedWord>> = BTreeMap::new();
    let mut layer = vec![GradedWord::empty()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for &l in &letters {
                let v = w.concat(&GradedWord::new(vec![l]));
                out.entry(spec.degree_of(&v)?).or_default().push(v.clone());
                next.push(v);
            }
        }
        layer = next;
    }
    Ok(out)
}

/// One joint eigenspace of `π(B)`.
struct Atom {
    basis: CMatrix,
    projector: CMatrix,
    /// Values of the B-words on this atom.
    values: Vec<Complex64>,
}

fn round_q(x: f64) -> Q {
    let d = 1e-9 * (1.0 + x.abs());
    simplest_between(&Q::from_float(x - d).unwrap(), &Q::from_float(x + d).unwrap())
}

/// The character `χ_Δ^g` predicted by the character engine from the atom's
/// values, as values on the B-words; `Ok(None)` when `χ^g` is undefined.
fn predicted_shift(
    spec: &GradedAlgebraSpec,
    rep: &InducedRep,
    b_words: &[GradedWord],
    v: &DVector<Complex64>,
    letter: Letter,
) -> Result<Option<Vec<Complex64>>> {
    let state = |w: &GradedWord| -> Result<Complex64> {
        let m = rep.word_matrix(spec, w)?.to_c64();
        Ok((v.adjoint() * m * v)[(0, 0)])
    };
    let deg = spec.letter_degree(letter)?;
    let eval_all = |f: &dyn Fn(&GradedWord) -> Result<Scalar>| -> Result<Vec<Complex64>> {
        b_words.iter().map(|w| f(w).map(|s| s.to_c64())).collect()
    };
    match &spec.family {
        Family::EnvSU2 | Family::EnvSU11 => {
            let h = spec.gen("H");
            let ef = GradedWord::new(vec![Letter::plain(spec.gen("E")), Letter::plain(spec.gen("F"))]);
            let t = round_q(state(&GradedWord::new(vec![Letter::plain(h)]))?.re);
            let u = round_q(state(&ef)?.re);
            let s = Q::from_integer(4.into()) * u + &t * (&t - Q::from_integer(2.into()));
            let kind = if spec.family == Family::EnvSU2 { Sl2Kind::Su2 } else { Sl2Kind::Su11 };
            let c = Sl2Character::new(kind, s, t);
            let n = deg.as_int().unwrap();
            match sl2_act(&c, n) {
                Ok(Some(c2)) => Ok(Some(eval_all(&|w| sl2_eval_word(&c2, w))?)),
                Ok(None) => Ok(None),
                Err(e) => Err(e),
            }
        }
        Family::Weyl | Family::Dynamical(_) | Family::QuantumDisk { .. } => {
            let f = spec.family.dyn_function().unwrap();
            let a = spec.gen("a");
            let x0 = round_q(state(&GradedWord::new(vec![Letter::starred(a), Letter::plain(a)]))?.re);
            let opts = ExtendOptions { policy: BranchPolicy::All, ..ExtendOptions::steps(4, 4) };
            let n = deg.as_int().unwrap();
            let mut first_defined = None;
            for o in dyn_extend_orbit(&f, &Scalar::from_q(x0), &opts)? {
                if let Some(sh) = o.shifted(n)? {
                    let vals = eval_all(&|w| dyn_eval_word(&sh, w))?;
                    first_defined.get_or_insert(vals);
                }
            }
            Ok(first_defined)
        }
        Family::GroupAlgebra(group) => {
            let (_, grading) = grading_of(spec)?;
            let kernel: Vec<usize> = (0..group.order()).filter(|&g| grading[g] == spec.group.identity()).collect();
            let mut values = BTreeMap::new();
            for &k in &kernel {
                values.insert(k, Scalar::Approx(state(&GradedWord::new(vec![Letter::plain(k)]))?));
            }
            let chi = FiniteGroupCharacter { group: group.clone(), values };
            match finite_act(spec, &chi, &deg)? {
                Some(c2) => Ok(Some(eval_all(&|w| c2.eval_word(w))?)),
                None => Ok(None),
            }
        }
        _ => {
            // generic definition χ^g(w) = χ(b* w b)/χ(b* b)
            let bw = GradedWord::new(vec![letter]);
            let bs = GradedWord::new(vec![Letter { gen: letter.gen, star: !letter.star }]);
            let norm = state(&bs.concat(&bw))?;
            if norm.norm() <= 1e-12 {
                return Ok(None);
            }
            b_words.iter().map(|w| state(&bs.concat(w).concat(&bw)).map(|z| z / norm)).collect::<Result<_>>().map(Some)
        }
    }
}

/// Finite-dimensional well-behavedness: the restriction to `B` is jointly
/// diagonalised into atoms labelled by characters, and every generator of
/// degree `g` must carry the atom `Δ` exactly onto the atom `Δ^g` given by
/// the partial action (or annihilate `Δ` where `χ^g` is undefined).
pub fn well_behaved_check(rep: &InducedRep, spec: &GradedAlgebraSpec, tolerance: f64) -> Result<VerificationReport> {
    let id = spec.group.identity();
    let by_deg = words_by_degree(spec, 2)?;
    let b_words: Vec<GradedWord> = by_deg.get(&id).cloned().unwrap_or_default();
    let b_mats: Vec<CMatrix> = b_words.iter().map(|w| rep.word_matrix(spec, w).map(|m| m.to_c64())).collect::<Result<_>>()?;
    let scale = b_mats.iter().map(|m| m.iter().map(|z| z.norm()).fold(0.0, f64::max)).fold(1.0, f64::max);
    let tol = tolerance.max(1e-9) * scale;
    for (i, x) in b_mats.iter().enumerate() {
        if (x * x.adjoint() - x.adjoint() * x).iter().any(|z| z.norm() > tol * scale) {
            return Err(Error::Invalid(format!("π({}) is not normal", spec.word_string(&b_words[i]))));
        }
        for (j, y) in b_mats.iter().enumerate().skip(i + 1) {
            if (x * y - y * x).iter().any(|z| z.norm() > tol * scale) {
                return Err(Error::Invalid(format!(
                    "π({}) and π({}) do not commute",
                    spec.word_string(&b_words[i]),
                    spec.word_string(&b_words[j])
                )));
            }
        }
    }
    let atoms: Vec<Atom> = linalg::joint_eigenspaces(&b_mats, 1e-7)
        .into_iter()
        .map(|(basis, values)| Atom { projector: &basis * basis.adjoint(), basis, values })
        .collect();
    let mut worst = 0.0f64;
    let mut witness = None;
    let n = rep.dim();
    for (ai, atom) in atoms.iter().enumerate() {
        let v = atom.basis.column(0).into_owned();
        for l in all_letters(spec) {
            if spec.letter_degree(l)? == id {
                continue;
            }
            let pb = rep.letter_matrix(spec, l)?.to_c64();
            let name = spec.word_string(&GradedWord::new(vec![l]));
            let (target, undefined) = match predicted_shift(spec, rep, &b_words, &v, l) {
                Ok(Some(vals)) => {
                    let hit = atoms.iter().position(|o| {
                        o.values.iter().zip(&vals).all(|(x, y)| (x - y).norm() <= 1e-6 * (1.0 + y.norm()))
                    });
                    (hit.map(|k| atoms[k].projector.clone()), false)
                }
                Ok(None) => (None, true),
                Err(_) => (None, false),
            };
            let lhs = &pb * &atom.projector;
            let res = match &target {
                Some(p) => (p * &pb - &lhs).iter().map(|z| z.norm()).fold(0.0, f64::max),
                None if undefined => lhs.iter().map(|z| z.norm()).fold(0.0, f64::max),
                // χ^g defined but carried by no atom: covariance fails whenever π(b)Δ ≠ 0
                None => lhs.iter().map(|z| z.norm()).fold(0.0, f64::max).max(if n > 0 { tol * 2.0 } else { 0.0 }),
            };
            if res > worst {
                worst = res;
                let what = if target.is_none() && !undefined { "; χ^g carried by no atom" } else { "" };
                witness = Some(format!("atom {ai} (values {:?}) under {name}{what}", rounded(&atom.values)));
            }
        }
    }
    Ok(VerificationReport::judge("well_behaved", Scalar::approx(worst / scale), tolerance.max(1e-9), witness))
}

fn rounded(v: &[Complex64]) -> Vec<String> {
    v.iter()
        .map(|z| if z.im.abs() < 1e-9 { format!("{:.6}", z.re) } else { format!("{:.6}{:+.6}i", z.re, z.im) })
        .collect()
}

/// Gram matrix `G_ij = χ(p(x_i* x_j))` of the vectors `x_i ⊗ 1` under the
/// induced form, with its PSD verdict.
pub fn inducibility_gram(
    chi: &dyn ZeroDegreeFunctional,
    spec: &GradedAlgebraSpec,
    elements: &[NCPolynomial],
) -> Result<(Vec<Vec<Scalar>>, PsdResult)> {
    let trivial = spec.group.trivial_subgroup();
    let mut g = vec![vec![Scalar::zero(); elements.len()]; elements.len()];
    for (i, xi) in elements.iter().enumerate() {
        let xs = spec.involute(xi);
        for (j, xj) in elements.iter().enumerate() {
            let p = conditional_expectation(spec, &(&xs * xj), &trivial)?;
            g[i][j] = chi.eval_poly(&p)?;
        }
    }
    let psd = linalg::psd_test(&g, 1e-9);
    Ok((g, psd))
}

pub fn gram_report(check: &str, psd: &PsdResult, tolerance: f64) -> VerificationReport {
    VerificationReport {
        check: check.into(),
        status: if psd.psd { Status::Pass } else { Status::Fail },
        residual: if psd.psd { Scalar::zero() } else { Scalar::approx(-psd.min_value) },
        tolerance,
        witness: psd.witness.as_ref().map(|w| {
            let parts: Vec<String> = w.iter().map(ToString::to_string).collect();
            format!("negative direction [{}]", parts.join(", "))
        }),
    }
}

/// Bracket convention for the Virasoro Gram oracle.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Convention {
    /// `[L_m, L_n] = (m−n) L_{m+n} + (m³−m)/12·c·δ_{m+n,0}`; highest-weight
    /// vector killed by `L_k`, `k > 0`; descendants `L_{−k}` monomials.
    Standard,
    /// `[L_n, L_m] = (m−n) L_{n+m} + (n³−n)/12·C·δ_{n,−m}` taken verbatim;
    /// lowest-weight vector killed by `L_{−k}`, `k > 0`; descendants `L_k`.
    Reversed,
}

impl Convention {
    /// `[L_m, L_n] = α L_{m+n} + β`.
    fn bracket(self, m: i64, n: i64, c: &Scalar) -> (Scalar, Scalar) {
        let central = if m + n == 0 { c * &Scalar::rat(m * m * m - m, 12) } else { Scalar::zero() };
        match self {
            Convention::Standard => (Scalar::int(m - n), central),
            Convention::Reversed => (Scalar::int(n - m), central),
        }
    }

    /// Sign `σ` such that descendants are built from `L_{σk}`, `k > 0`.
    fn creation_sign(self) -> i64 {
        match self {
            Convention::Standard => -1,
            Convention::Reversed => 1,
        }
    }
}

/// PBW monomials `L_{σk_1}⋯L_{σk_r}|v⟩` with `k_1 ≥ … ≥ k_r ≥ 1`.
type Verma = BTreeMap<Vec<i64>, Scalar>;

struct VermaModule {
    conv: Convention,
    h: Scalar,
    c: Scalar,
}

impl VermaModule {
    fn push(out: &mut Verma, k: Vec<i64>, v: Scalar) {
        let e = out.entry(k).or_default();
        *e = &*e + &v;
    }

    /// The operator index `m` written as `L_m`; applies it to a monomial.
    fn apply(&self, m: i64, mono: &[i64]) -> Verma {
        let sg = self.conv.creation_sign();
        let mut out = Verma::new();
        if mono.is_empty() {
            if m == 0 {
                out.insert(vec![], self.h.clone());
            } else if m * sg > 0 {
                out.insert(vec![m * sg], Scalar::one());
            }
            return out;
        }
        let k1 = mono[0];
        if m * sg > 0 && m * sg >= k1 {
            let mut v = vec![m * sg];
            v.extend_from_slice(mono);
            out.insert(v, Scalar::one());
            return out;
        }
        // L_m L_n X = L_n (L_m X) + [L_m, L_n] X with L_n the first factor
        let n = sg * k1;
        let rest = &mono[1..];
        for (mono2, coef) in self.apply(m, rest) {
            for (mono3, c3) in self.apply(n, &mono2) {
                Self::push(&mut out, mono3, &coef * &c3);
            }
        }
        let (alpha, beta) = self.conv.bracket(m, n, &self.c);
        if !alpha.is_zero() {
            for (mono2, coef) in self.apply(m + n, rest) {
                Self::push(&mut out, mono2, &coef * &alpha);
            }
        }
        if !beta.is_zero() {
            Self::push(&mut out, rest.to_vec(), beta);
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    /// `⟨x|v⟩` coefficient of the vacuum after applying `L_{m}` for each `m`
    /// in `ops` (rightmost first) to `mono`.
    fn vacuum_coefficient(&self, ops: &[i64], mono: &[i64]) -> Scalar {
        let mut state = Verma::from([(mono.to_vec(), Scalar::one())]);
        for &m in ops.iter().rev() {
            let mut next = Verma::new();
            for (k, c) in &state {
                for (k2, c2) in self.apply(m, k) {
                    Self::push(&mut next, k2, c * &c2);
                }
            }
            next.retain(|_, v| !v.is_zero());
            state = next;
        }
        state.get(&Vec::new()).cloned().unwrap_or_default()
    }
}

/// Partitions of `n` as non-increasing lists, in reverse lexicographic order.
pub fn partitions(n: i64) -> Vec<Vec<i64>> {
    fn rec(n: i64, max: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for k in (1..=max.min(n)).rev() {
            cur.push(k);
            rec(n - k, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut vec![], &mut out);
    out
}

/// Gram matrix of the level-`level` descendants with `L_0 = a`, central
/// element `= z`, and adjoint `L_k* = L_{−k}`.
pub fn vir_gram(a: &Scalar, z: &Scalar, level: i64, conv: Convention) -> Vec<Vec<Scalar>> {
    let module = VermaModule { conv, h: a.clone(), c: z.clone() };
    let sg = conv.creation_sign();
    let basis = partitions(level);
    basis
        .iter()
        .map(|bi| {
            // (L_{σk_1}⋯)* = ⋯L_{−σk_1}: apply in reverse as annihilators
            let ops: Vec<i64> = bi.iter().rev().map(|&k| -sg * k).collect();
            basis.iter().map(|bj| module.vacuum_coefficient(&ops, bj)).collect()
        })
        .collect()
}

pub fn vir_gram_positivity(a: &Scalar, z: &Scalar, level: i64, conv: Convention) -> Result<(Vec<Vec<Scalar>>, VerificationReport)> {
    if !(1..=3).contains(&level) {
        return Err(Error::Invalid("Gram levels 1..=3 are supported".into()));
    }
    let g = vir_gram(a, z, level, conv);
    let psd = linalg::psd_test(&g, 1e-9);
    let mut rep = gram_report("vir_gram", &psd, 0.0);
    if let Some(w) = rep.witness.as_mut() {
        *w = format!("level {level}: {w}");
    }
    Ok((g, rep))
}

/// Samples `χ(c*d)χ(d*c) = χ(c*c)χ(d*d)` on pairs of words of equal degree
/// up to length `max_len`.
pub fn condition_sample_check(
    spec: &GradedAlgebraSpec,
    chi: &dyn ZeroDegreeFunctional,
    max_len: usize,
    tolerance: f64,
) -> Result<VerificationReport> {
    let by_deg = words_by_degree(spec, max_len)?;
    let star = |w: &GradedWord| spec.involute(&NCPolynomial::word(w.clone()));
    let ev = |x: &GradedWord, y: &GradedWord| chi.eval_poly(&(&star(x) * &NCPolynomial::word(y.clone())));
    let mut worst: (Scalar, Option<String>) = (Scalar::zero(), None);
    for words in by_deg.values() {
        for (i, c) in words.iter().enumerate() {
            let cc = match ev(c, c) {
                Ok(v) => v,
                Err(Error::Window(_)) => continue,
                Err(e) => return Err(e),
            };
            for d in &words[i + 1..] {
                let vals = (|| -> Result<_> { Ok((ev(c, d)?, ev(d, c)?, ev(d, d)?)) })();
                let (cd, dc, dd) = match vals {
                    Ok(v) => v,
                    Err(Error::Window(_)) => continue,
                    Err(e) => return Err(e),
                };
                let lhs = &cd * &dc;
                let rhs = &cc * &dd;
                let diff = &lhs - &rhs;
                let res = if diff.is_exact() && diff.is_zero() {
                    Scalar::zero()
                } else {
                    let r = diff.abs_f64() / (1.0 + rhs.abs_f64());
                    if diff.is_exact() { Scalar::approx(r.max(f64::MIN_POSITIVE)) } else { Scalar::approx(r) }
                };
                let cand = (res, Some(format!("c = {}, d = {}", spec.word_string(c), spec.word_string(d))));
                if worse(&worst, &cand) {
                    worst = cand;
                }
            }
        }
    }
    let exact_fail = worst.0.is_exact() && !worst.0.is_zero();
    let mut r = VerificationReport::judge("condition", worst.0.clone(), tolerance, worst.1);
    if exact_fail {
        r.status = Status::Fail;
    }
    Ok(r)
}

/// The vector state `w ↦ ⟨π(w) e_i, e_i⟩` of a basis vector.
pub struct VectorState<'a> {
    pub rep: &'a InducedRep,
    pub spec: &'a GradedAlgebraSpec,
    pub index: usize,
}

impl ZeroDegreeFunctional for VectorState<'_> {
    fn eval_word(&self, w: &GradedWord) -> Result<Scalar> {
        Ok(self.rep.word_matrix(self.spec, w)?.get(self.index, self.index))
    }
}

#[cfg(test)]
mod test {
    use super::*;
    use crate::character::WeylCharacter;
    use crate::induction::su2_spin_rep;

    #[test]
    fn spin_one_checks() {
        let spec = GradedAlgebraSpec::su2();
        let rep = su2_spin_rep(2);
        let r = relation_check(&rep, &spec, DEFAULT_TOLERANCE).unwrap();
        assert!(r.passed() && r.residual.is_exact(), "{r:?}");
        assert!(casimir_check(&rep, &Scalar::int(8), DEFAULT_TOLERANCE).unwrap().passed());
        let c = commutant_dimension(&rep.ops.values().collect::<Vec<_>>()).unwrap();
        assert_eq!((c.dimension, c.exact), (1, true));
        assert!(well_behaved_check(&rep, &spec, DEFAULT_TOLERANCE).unwrap().passed());
        assert!(equivalence_check(&rep, &rep, 6, DEFAULT_TOLERANCE).is_equivalent());
    }

    #[test]
    fn corrupted_weight_is_named() {
        let spec = GradedAlgebraSpec::su2();
        let mut rep = su2_spin_rep(2);
        let e = rep.ops.get_mut("E").unwrap();
        e.set(1, 0, Scalar::int(3));
        let r = relation_check(&rep, &spec, DEFAULT_TOLERANCE).unwrap();
        assert_eq!(r.status, Status::Fail);
        assert!(r.witness.unwrap().contains("column"));
    }

    #[test]
    fn weyl_gram_falling_factorials() {
        let spec = GradedAlgebraSpec::weyl();
        let xs: Vec<NCPolynomial> =
            (0..4).map(|k| NCPolynomial::word(GradedWord::power(Letter::plain(0), k))).collect();
        let (g, psd) = inducibility_gram(&WeylCharacter::new(Scalar::int(2)), &spec, &xs).unwrap();
        let diag: Vec<Scalar> = (0..4).map(|i| g[i][i].clone()).collect();
        assert_eq!(diag, vec![Scalar::int(1), Scalar::int(2), Scalar::int(2), Scalar::int(0)]);
        assert!(psd.psd);
        let (g, psd) = inducibility_gram(&WeylCharacter::new(Scalar::int(-2)), &spec, &xs[1..2]).unwrap();
        assert_eq!(g[0][0], Scalar::int(-2));
        assert!(!psd.psd);
    }

    #[test]
    fn standard_level_two_gram() {
        let (h, c) = (Scalar::rat(1, 16), Scalar::rat(1, 2));
        let g = vir_gram(&h, &c, 2, Convention::Standard);
        // basis L_{-2}, L_{-1}²: [[4h + c/2, 6h], [6h, 4h(2h+1)]]
        let four = Scalar::int(4);
        assert_eq!(g[0][0], &(&four * &h) + &(&c * &Scalar::rat(1, 2)));
        assert_eq!(g[0][1], &Scalar::int(6) * &h);
        assert_eq!(g[1][1], &(&four * &h) * &(&(&Scalar::int(2) * &h) + &Scalar::one()));
        assert_eq!(vir_gram(&h, &c, 1, Convention::Reversed), vec![vec![&Scalar::int(2) * &h]]);
    }
}
