//! Systems of imprimitivity `(π, E)` over `G/H`: construction from induced
//! representations, axiom checks, conjugation `E^f(k·fHf⁻¹) = E(kfH)`,
//! reconstruction of the inducing representation on `Ran E(H)`, and the
//! greedy decomposition of bounded systems into generated subsystems.

use std::collections::BTreeMap;

use nalgebra::DVector;
use num_complex::Complex64;

use crate::algebra::{Family, GradedAlgebraSpec};
use crate::character::{dyn_extend_orbit, BranchPolicy, Character, ExtendOptions, Sl2Character, Sl2Kind};
use crate::group::{GroupElem, Subgroup};
use crate::induction::{
    dyn_periodic_rep, dyn_shift_rep, finite_group_induce, induce_character, InducedRep, Origin, Window,
};
use crate::linalg::CMatrix;
use crate::matrix::SparseMatrix;
use crate::poly::simplest_between;
use crate::scalar::Q;
use crate::verify::{Status, VerificationReport};
use crate::word::{GradedWord, Letter};
use crate::{Error, Result, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct ImprimitivitySystem {
    pub rep: InducedRep,
    pub subgroup: Subgroup,
    /// Coset label → orthogonal projection; missing labels mean `E(t) = 0`.
    pub projections: BTreeMap<GroupElem, SparseMatrix>,
}

fn coset_of(spec: &GradedAlgebraSpec, h: &Subgroup, d: &GroupElem) -> Result<GroupElem> {
    spec.group.check(d).map_err(|_| Error::Invalid(format!("basis degree {d} is not in the grading group")))?;
    Ok(h.coset(d))
}

/// `E(t)` = coordinate projection onto the basis vectors with `gH = t`.
pub fn build_induced_system(rep: &InducedRep, spec: &GradedAlgebraSpec, h: &Subgroup) -> Result<ImprimitivitySystem> {
    let n = rep.dim();
    let mut projections: BTreeMap<GroupElem, SparseMatrix> = BTreeMap::new();
    for (i, d) in rep.degrees.iter().enumerate() {
        let t = coset_of(spec, h, d)?;
        projections.entry(t).or_insert_with(|| SparseMatrix::square(n)).set(i, i, Scalar::one());
    }
    Ok(ImprimitivitySystem { rep: rep.clone(), subgroup: h.clone(), projections })
}

fn residual_of(m: &SparseMatrix, cols: &[usize]) -> Scalar {
    let (v, pos) = m.max_abs_in_cols(cols);
    if pos.is_none() {
        Scalar::zero()
    } else if m.is_exact() {
        Scalar::approx(v.max(f64::MIN_POSITIVE))
    } else {
        Scalar::approx(v)
    }
}

fn bigger(a: &Scalar, b: &Scalar) -> bool {
    let key = |x: &Scalar| if x.is_exact() && x.is_zero() { -1.0 } else { x.to_f64() };
    key(b) > key(a)
}

/// Axioms (i) `E(t)² = E(t) = E(t)*`, `E(s)E(t) = 0`, `Σ E(t) = I`, and
/// covariance (ii) `E(gt)π(a_g) = π(a_g)E(t)` for every generator letter,
/// on the interior columns.
pub fn verify_system(sys: &ImprimitivitySystem, spec: &GradedAlgebraSpec, tolerance: f64) -> Result<VerificationReport> {
    let n = sys.rep.dim();
    if sys.projections.values().any(|p| p.n_rows != n || p.n_cols != n) {
        return Err(Error::Invalid("projection size differs from the representation".into()));
    }
    let all: Vec<usize> = (0..n).collect();
    let interior = sys.rep.interior(1);
    let mut worst = Scalar::zero();
    let mut witness = None;
    let mut note = |r: Scalar, w: String, worst: &mut Scalar| {
        if bigger(worst, &r) {
            *worst = r;
            witness = Some(w);
        }
    };
    let mut sum = SparseMatrix::square(n);
    let labels: Vec<&GroupElem> = sys.projections.keys().collect();
    for (t, e) in &sys.projections {
        note(residual_of(&e.mul(e).sub(e), &all), format!("E({t}) is not idempotent"), &mut worst);
        note(residual_of(&e.adjoint().sub(e), &all), format!("E({t}) is not self-adjoint"), &mut worst);
        for s in &labels {
            if *s > t {
                note(residual_of(&e.mul(&sys.projections[*s]), &all), format!("E({t})E({s}) ≠ 0"), &mut worst);
            }
        }
        sum = sum.add(e);
    }
    note(residual_of(&sum.sub(&SparseMatrix::identity(n)), &all), "Σ E(t) ≠ I".into(), &mut worst);
    let zero = SparseMatrix::square(n);
    for (gi, g) in spec.generators.iter().enumerate() {
        let mut letters = vec![Letter::plain(gi)];
        if g.adjoint == crate::algebra::Adjoint::Star {
            letters.push(Letter::starred(gi));
        }
        for l in letters {
            let pa = sys.rep.letter_matrix(spec, l)?;
            let deg = spec.letter_degree(l)?;
            for (t, e) in &sys.projections {
                let gt = sys.subgroup.coset(&spec.group.mul(&deg, t));
                let egt = sys.projections.get(&gt).unwrap_or(&zero);
                let r = residual_of(&egt.mul(&pa).sub(&pa.mul(e)), &interior);
                let name = spec.word_string(&GradedWord::new(vec![l]));
                note(r, format!("covariance fails for g = {deg} ({name}), t = {t}"), &mut worst);
            }
        }
    }
    let ok = if worst.is_exact() { worst.is_zero() } else { worst.to_f64() <= tolerance };
    Ok(VerificationReport {
        check: "imprimitivity".into(),
        status: if ok { Status::Pass } else { Status::Fail },
        residual: worst,
        tolerance,
        witness: if ok { None } else { witness },
    })
}

/// `(π, E^f)` over `G/fHf⁻¹` with `E^f(k·fHf⁻¹) = E(kfH)`.
pub fn conjugate_system(sys: &ImprimitivitySystem, spec: &GradedAlgebraSpec, f: &GroupElem) -> Result<ImprimitivitySystem> {
    spec.group.check(f)?;
    let h2 = sys.subgroup.conjugate(f);
    let finv = spec.group.inv(f);
    let mut projections = BTreeMap::new();
    match &sys.subgroup {
        Subgroup::Finite { group, .. } => {
            for k in 0..group.order() {
                let k = GroupElem::Finite(k);
                let src = sys.subgroup.coset(&spec.group.mul(&k, f));
                if let Some(e) = sys.projections.get(&src) {
                    projections.insert(h2.coset(&k), e.clone());
                }
            }
        }
        Subgroup::Lattice { .. } => {
            // t = k f H  ⇒  k = t f⁻¹
            for (t, e) in &sys.projections {
                projections.insert(h2.coset(&spec.group.mul(t, &finv)), e.clone());
            }
        }
    }
    Ok(ImprimitivitySystem { rep: sys.rep.clone(), subgroup: h2, projections })
}

/// `ρ` on `Ran E(H)`: the compression of `π` restricted to degree-`H` words.
#[derive(Clone, Debug, PartialEq)]
pub struct InducingRep {
    /// Basis indices of `Ran E(H)` in the ambient representation.
    pub support: Vec<usize>,
    pub compressed: BTreeMap<GradedWord, SparseMatrix>,
}

impl InducingRep {
    pub fn dim(&self) -> usize {
        self.support.len()
    }

    pub fn value(&self, w: &GradedWord) -> Option<&SparseMatrix> {
        self.compressed.get(w)
    }
}

fn orthonormal_insert(basis: &mut Vec<DVector<Complex64>>, v: DVector<Complex64>, eps: f64) -> bool {
    let mut w = v;
    for _ in 0..2 {
        for b in basis.iter() {
            let c = b.dotc(&w);
            w -= b * c;
        }
    }
    let nrm = w.norm();
    if nrm > eps {
        basis.push(w / Complex64::new(nrm, 0.0));
        true
    } else {
        false
    }
}

fn coordinate_support(e: &SparseMatrix) -> Option<Vec<usize>> {
    let mut out = Vec::new();
    for (i, j, v) in e.entries() {
        if i != j || *v != Scalar::one() {
            return None;
        }
        out.push(i);
    }
    Some(out)
}

fn zero_degree_words(spec: &GradedAlgebraSpec, h: &Subgroup, max_len: usize) -> Result<Vec<GradedWord>> {
    let mut letters = Vec::new();
    for (i, g) in spec.generators.iter().enumerate() {
        letters.push(Letter::plain(i));
        if g.adjoint == crate::algebra::Adjoint::Star {
            letters.push(Letter::starred(i));
        }
    }
    let mut out = Vec::new();
    let mut layer = vec![GradedWord::empty()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for &l in &letters {
                let v = w.concat(&GradedWord::new(vec![l]));
                if h.contains(&spec.degree_of(&v)?) {
                    out.push(v.clone());
                }
                next.push(v);
            }
        }
        layer = next;
    }
    Ok(out)
}

/// Checks non-degeneracy (the spaces `π(A_t)·Ran E(H)` exhaust every
/// `Ran E(t)`) and returns the compression of `π` to `Ran E(H)` on words of
/// degree in `H` up to length `max_len`.
pub fn reconstruct_inducing_rep(sys: &ImprimitivitySystem, spec: &GradedAlgebraSpec, max_len: usize) -> Result<InducingRep> {
    let n = sys.rep.dim();
    let home = sys.subgroup.coset(&spec.group.identity());
    let e_h = sys.projections.get(&home).cloned().unwrap_or_else(|| SparseMatrix::square(n));
    let ops: Vec<(Letter, GroupElem, CMatrix)> = {
        let mut v = Vec::new();
        for (i, g) in spec.generators.iter().enumerate() {
            let mut ls = vec![Letter::plain(i)];
            if g.adjoint == crate::algebra::Adjoint::Star {
                ls.push(Letter::starred(i));
            }
            for l in ls {
                v.push((l, spec.letter_degree(l)?, sys.rep.letter_matrix(spec, l)?.to_c64()));
            }
        }
        v
    };
    // closure: V_t ⊇ π(x) V_{t'} for letters x of degree g with t = g t'
    let mut spaces: BTreeMap<GroupElem, Vec<DVector<Complex64>>> = BTreeMap::new();
    let eh = e_h.to_c64();
    let mut start = Vec::new();
    for j in 0..n {
        orthonormal_insert(&mut start, eh.column(j).into_owned(), 1e-9);
    }
    spaces.insert(home.clone(), start);
    let passes = sys.projections.len() + max_len + 1;
    for _ in 0..passes {
        let mut changed = false;
        let snapshot: Vec<(GroupElem, Vec<DVector<Complex64>>)> =
            spaces.iter().map(|(k, v)| (k.clone(), v.clone())).collect();
        for (t, vs) in &snapshot {
            for (_, deg, m) in &ops {
                let target = sys.subgroup.coset(&spec.group.mul(deg, t));
                let entry = spaces.entry(target).or_default();
                for v in vs {
                    changed |= orthonormal_insert(entry, m * v, 1e-9);
                }
            }
        }
        if !changed {
            break;
        }
    }
    for (t, e) in &sys.projections {
        let rank = e.to_c64().rank(1e-9);
        let got = spaces.get(t).map_or(0, Vec::len);
        if got < rank {
            return Err(Error::Invalid(format!(
                "degenerate system: π(A_t)·Ran E(H) has rank {got} < rank E(t) = {rank} at coset t = {t}"
            )));
        }
    }
    let words = zero_degree_words(spec, &sys.subgroup, max_len)?;
    let mut compressed = BTreeMap::new();
    let support = match coordinate_support(&e_h) {
        Some(s) => s,
        None => return Err(Error::Invalid("E(H) is not a coordinate projection".into())),
    };
    for w in words {
        let m = sys.rep.word_matrix(spec, &w)?;
        compressed.insert(w, m.restrict(&support));
    }
    Ok(InducingRep { support, compressed })
}

fn round_q(x: f64) -> Q {
    let d = 1e-9 * (1.0 + x.abs());
    simplest_between(&Q::from_float(x - d).unwrap(), &Q::from_float(x + d).unwrap())
}

fn exact_or_rounded(s: &Scalar) -> Scalar {
    if s.is_exact() {
        s.clone()
    } else {
        Scalar::from_q(round_q(s.to_f64()))
    }
}

fn scalar_value(rho: &InducingRep, w: &GradedWord) -> Result<Scalar> {
    let m = rho.value(w).ok_or_else(|| Error::Invalid("compression lacks a needed word".into()))?;
    if m.n_rows != 1 {
        return Err(Error::Invalid("expected a one-dimensional inducing representation".into()));
    }
    Ok(m.get(0, 0))
}

/// Induce the representation recovered by [`reconstruct_inducing_rep`]
/// again, using the family recorded in the system's representation.
pub fn reinduce(sys: &ImprimitivitySystem, spec: &GradedAlgebraSpec, rho: &InducingRep) -> Result<InducedRep> {
    let labels_window = || -> Result<Window> {
        let ints: Vec<i64> = sys.rep.degrees.iter().filter_map(GroupElem::as_int).collect();
        match (ints.iter().min(), ints.iter().max()) {
            (Some(&lo), Some(&hi)) => Ok(Window::new(lo, hi + 1)),
            _ => Err(Error::Invalid("no integer labels".into())),
        }
    };
    let n_word = |a: usize| GradedWord::new(vec![Letter::starred(a), Letter::plain(a)]);
    match &sys.rep.origin {
        Origin::Character(Character::Dyn(_)) | Origin::DynShift(_) | Origin::Periodic { .. } => {
            let f = spec.family.dyn_function().ok_or_else(|| Error::Invalid("not a dynamical family".into()))?;
            let a = spec.gen("a");
            let x0 = exact_or_rounded(&scalar_value(rho, &n_word(a))?);
            let w = labels_window()?;
            let opts = ExtendOptions {
                policy: BranchPolicy::Principal,
                ..ExtendOptions::steps(w.lo.unsigned_abs() as usize + 2, w.hi.unsigned_abs() as usize + 2)
            };
            let orbit = dyn_extend_orbit(&f, &x0, &opts)?.remove(0);
            if let Some(m) = sys.subgroup.modulus().filter(|&m| m > 0) {
                let am = scalar_value(rho, &GradedWord::power(Letter::plain(a), m as usize))?;
                let mut prod = Scalar::one();
                for r in 0..m {
                    prod = &prod * &orbit.weight(r)?;
                }
                let z = am.checked_div(&prod).ok_or_else(|| Error::Numeric("vanishing weight product".into()))?;
                return dyn_periodic_rep(&orbit, &z);
            }
            match &sys.rep.origin {
                Origin::DynShift(_) => dyn_shift_rep(&orbit, w),
                _ => induce_character(&Character::Dyn(orbit), spec, w),
            }
        }
        Origin::Character(Character::Sl2(_)) | Origin::Spin { .. } => {
            let (e, f, h) = (spec.gen("E"), spec.gen("F"), spec.gen("H"));
            let t = exact_or_rounded(&scalar_value(rho, &GradedWord::new(vec![Letter::plain(h)]))?);
            let u = exact_or_rounded(&scalar_value(rho, &GradedWord::new(vec![Letter::plain(e), Letter::plain(f)]))?);
            let (t, u) = (t.as_q().unwrap(), u.as_q().unwrap());
            let s = Q::from_integer(4.into()) * u + &t * (&t - Q::from_integer(2.into()));
            let kind = if spec.family == Family::EnvSU11 { Sl2Kind::Su11 } else { Sl2Kind::Su2 };
            let mut rep = induce_character(&Character::Sl2(Sl2Character::new(kind, s, t)), spec, labels_window()?)?;
            if let Origin::Spin { .. } = sys.rep.origin {
                rep.labels = sys.rep.labels.clone();
            }
            Ok(rep)
        }
        Origin::FiniteGroup { group, subgroup, .. } => {
            let rho_map = finite_rho(rho, subgroup)?;
            finite_group_induce(group, subgroup, &rho_map)
        }
        Origin::Character(Character::Finite(chi)) => {
            let group = &chi.group;
            let kernel = chi.support();
            let rho_map = finite_rho(rho, &kernel)?;
            let values = rho_map.iter().map(|(&k, m)| (k, m.get(0, 0))).collect();
            let c = crate::character::FiniteGroupCharacter::new(group.clone(), values)?;
            let _ = group;
            induce_character(&Character::Finite(c), spec, Window::default())
        }
        _ => Err(Error::Invalid("re-induction is not available for this representation".into())),
    }
}

fn finite_rho(rho: &InducingRep, members: &[usize]) -> Result<BTreeMap<usize, SparseMatrix>> {
    members
        .iter()
        .map(|&h| {
            let w = GradedWord::new(vec![Letter::plain(h)]);
            rho.value(&w).cloned().map(|m| (h, m)).ok_or_else(|| Error::Invalid("compression lacks a group element".into()))
        })
        .collect()
}

/// The subgroup `H` a representation was induced over: `mℤ` for the
/// periodic family, the inducing subgroup for finite groups, else `{e}`.
pub fn natural_subgroup(rep: &InducedRep, spec: &GradedAlgebraSpec) -> Result<Subgroup> {
    match &rep.origin {
        Origin::Periodic { orbit, .. } => Ok(Subgroup::multiples(orbit.period.unwrap_or(0) as i64)),
        Origin::FiniteGroup { subgroup, .. } => {
            Ok(spec.group.subgroup(&subgroup.iter().map(|&h| GroupElem::Finite(h)).collect::<Vec<_>>())?)
        }
        _ => Ok(spec.group.trivial_subgroup()),
    }
}

/// Reconstruct `ρ`, induce it again and compare with `π`: by an explicit
/// intertwiner for finite systems, entrywise on truncations.
pub fn round_trip(sys: &ImprimitivitySystem, spec: &GradedAlgebraSpec, tolerance: f64) -> VerificationReport {
    let fail = |status, w: String| VerificationReport {
        check: "round-trip".into(),
        status,
        residual: Scalar::approx(f64::INFINITY),
        tolerance,
        witness: Some(w),
    };
    let again = match reconstruct_inducing_rep(sys, spec, 4).and_then(|rho| reinduce(sys, spec, &rho)) {
        Ok(r) => r,
        Err(e @ Error::Invalid(_)) if e.to_string().contains("degenerate") => return fail(Status::Fail, e.to_string()),
        Err(e) => return fail(Status::Inconclusive, e.to_string()),
    };
    if !sys.rep.truncation.cut_lo && !sys.rep.truncation.cut_hi {
        let mut r = crate::verify::equivalence_report(&again, &sys.rep, tolerance);
        r.check = "round-trip".into();
        return r;
    }
    let same = again.dim() == sys.rep.dim()
        && sys.rep.ops.iter().all(|(k, m)| again.ops.get(k).is_some_and(|m2| m2.approx_eq(m, tolerance)));
    if same {
        VerificationReport { check: "round-trip".into(), status: Status::Pass, residual: Scalar::zero(), tolerance, witness: None }
    } else {
        fail(Status::Fail, "re-induced matrices differ from the original truncation".into())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Subsystem {
    /// Orthonormal basis (columns) of the subsystem's space.
    pub basis: CMatrix,
    pub generating_coset: GroupElem,
    pub ops: BTreeMap<String, CMatrix>,
    pub projections: BTreeMap<GroupElem, CMatrix>,
}

/// Greedy decomposition: repeatedly take the first coset `t` whose
/// projection meets the remaining space, close `E(t)`'s part of it under
/// `π`, and split that subsystem off.
pub fn decompose_bounded_system(sys: &ImprimitivitySystem) -> Result<Vec<Subsystem>> {
    if sys.rep.truncation.cut_lo || sys.rep.truncation.cut_hi {
        return Err(Error::Invalid("decomposition needs a finite (untruncated) system".into()));
    }
    let n = sys.rep.dim();
    let ops: Vec<(String, CMatrix)> = sys.rep.ops.iter().map(|(k, v)| (k.clone(), v.to_c64())).collect();
    let proj: Vec<(GroupElem, CMatrix)> = sys.projections.iter().map(|(k, v)| (k.clone(), v.to_c64())).collect();
    let mut remaining: Vec<DVector<Complex64>> = (0..n)
        .map(|i| DVector::from_fn(n, |j, _| if i == j { Complex64::new(1.0, 0.0) } else { Complex64::new(0.0, 0.0) }))
        .collect();
    let mut out = Vec::new();
    while !remaining.is_empty() {
        let mut found = None;
        for (t, e) in &proj {
            let mut seed = Vec::new();
            for r in &remaining {
                orthonormal_insert(&mut seed, e * r, 1e-9);
            }
            if !seed.is_empty() {
                found = Some((t.clone(), seed));
                break;
            }
        }
        let Some((t, seed)) = found else {
            return Err(Error::Invalid("projections do not cover the space".into()));
        };
        let mut space = seed;
        let mut i = 0;
        while i < space.len() {
            let v = space[i].clone();
            for (_, m) in &ops {
                let w = m * &v;
                orthonormal_insert(&mut space, w.clone(), 1e-9);
                orthonormal_insert(&mut space, m.adjoint() * &v, 1e-9);
            }
            i += 1;
        }
        let q = CMatrix::from_columns(&space);
        let mut rest = Vec::new();
        let mut all = space.clone();
        for r in &remaining {
            if orthonormal_insert(&mut all, r.clone(), 1e-9) {
                rest.push(all.last().unwrap().clone());
            }
        }
        remaining = rest;
        out.push(Subsystem {
            generating_coset: t,
            ops: ops.iter().map(|(k, m)| (k.clone(), q.adjoint() * m * &q)).collect(),
            projections: proj.iter().map(|(k, e)| (k.clone(), q.adjoint() * e * &q)).collect(),
            basis: q,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod test {
    use super::*;
    use crate::induction::{su2_spin_rep, Window};
    use crate::poly::RationalFunction;

    #[test]
    fn spin_half_system_and_round_trip() {
        let spec = GradedAlgebraSpec::su2();
        let rep = su2_spin_rep(1);
        let sys = build_induced_system(&rep, &spec, &Subgroup::multiples(0)).unwrap();
        assert!(verify_system(&sys, &spec, 1e-12).unwrap().passed());
        let rho = reconstruct_inducing_rep(&sys, &spec, 4).unwrap();
        assert_eq!(rho.dim(), 1);
        let again = reinduce(&sys, &spec, &rho).unwrap();
        assert_eq!(again.ops, rep.ops);
        let shifted = conjugate_system(&sys, &spec, &GroupElem::int(3)).unwrap();
        assert!(verify_system(&shifted, &spec, 1e-12).unwrap().passed());
        let back = conjugate_system(&shifted, &spec, &GroupElem::int(-3)).unwrap();
        assert_eq!(back, sys);
    }

    #[test]
    fn swapped_projections_fail() {
        let spec = GradedAlgebraSpec::su2();
        let mut sys = build_induced_system(&su2_spin_rep(1), &spec, &Subgroup::multiples(0)).unwrap();
        let a = sys.projections.remove(&GroupElem::int(0)).unwrap();
        let b = sys.projections.remove(&GroupElem::int(1)).unwrap();
        sys.projections.insert(GroupElem::int(0), b);
        sys.projections.insert(GroupElem::int(1), a);
        let r = verify_system(&sys, &spec, 1e-12).unwrap();
        assert_eq!(r.status, Status::Fail);
        assert!(r.witness.unwrap().contains("covariance"));
    }

    #[test]
    fn shifted_oscillator_system_is_degenerate() {
        let f: RationalFunction = "1/2*t + 1".parse().unwrap();
        let spec = GradedAlgebraSpec::dynamical(f.clone());
        let o = dyn_extend_orbit(&f, &Scalar::zero(), &ExtendOptions::steps(12, 2)).unwrap().remove(0);
        let rep = dyn_shift_rep(&o, Window::new(-10, 1)).unwrap();
        let sys = build_induced_system(&rep, &spec, &Subgroup::multiples(0)).unwrap();
        assert!(reconstruct_inducing_rep(&sys, &spec, 4).is_ok());
        let shifted = conjugate_system(&sys, &spec, &GroupElem::int(1)).unwrap();
        assert!(verify_system(&shifted, &spec, 1e-12).unwrap().passed());
        assert!(!shifted.projections.contains_key(&GroupElem::int(0)));
        let err = reconstruct_inducing_rep(&shifted, &spec, 4).unwrap_err();
        assert!(err.to_string().contains("degenerate"), "{err}");
    }

    #[test]
    fn direct_sum_splits_in_two() {
        let spec = GradedAlgebraSpec::su2();
        let one = su2_spin_rep(1);
        let mut sum = one.clone();
        sum.labels.extend(one.labels.iter().cloned());
        sum.degrees = (0..4).map(GroupElem::int).collect();
        sum.ops = one.ops.iter().map(|(k, m)| (k.clone(), m.direct_sum(m))).collect();
        let sys = build_induced_system(&sum, &spec, &Subgroup::multiples(0)).unwrap();
        let parts = decompose_bounded_system(&sys).unwrap();
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[0].generating_coset, GroupElem::int(0));
        assert_eq!(parts[1].generating_coset, GroupElem::int(2));
        for (t, e) in &sys.projections {
            let total = parts.iter().fold(CMatrix::zeros(4, 4), |acc, p| acc + &p.basis * &p.projections[t] * p.basis.adjoint());
            assert!((total - e.to_c64()).norm() < 1e-9);
        }
    }
}
