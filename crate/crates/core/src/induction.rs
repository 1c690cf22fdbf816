//! Induced representations as explicit operator matrices.
//!
//! For a character `χ` of the degree-zero part, the induced space has the
//! orthonormal basis `e_g = a_g ⊗ 1 / √χ(a_g* a_g)` over `g ∈ G_χ`, and a
//! generator `b` of degree `h` acts by
//! `⟨π(b) e_g, e_{hg}⟩ = χ(a_{hg}* b a_g) / √(χ(a_{hg}* a_{hg}) χ(a_g* a_g))`.
//! For ℤ-graded families `a_{hg}* b a_g` is a scalar multiple of
//! `a_{hg}* a_{hg}` ("shift models"), so entries are `c·√(N_{hg}/N_g)`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::algebra::{Adjoint, GradedAlgebraSpec};
use crate::character::finite::sections;
use crate::character::sl2::{letter_action, sl2_membership};
use crate::character::{
    stabilizer_and_orbit, Character, DynOrbit, FiniteGroupCharacter, OrbitClass, Sl2Character, ZeroDegreeFunctional,
};
use crate::group::{FiniteGroup, GroupElem, Subgroup};
use crate::matrix::SparseMatrix;
use crate::scalar::qr;
use crate::word::{GradedWord, Letter, NCPolynomial};
use crate::{Error, Result, Scalar};

/// Half-open integer window `[lo, hi)`, written `lo:hi`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Window {
    pub lo: i64,
    pub hi: i64,
}

impl Window {
    pub fn new(lo: i64, hi: i64) -> Self {
        Window { lo, hi }
    }

    /// `[-r, r]`.
    pub fn symmetric(r: i64) -> Self {
        Window { lo: -r, hi: r + 1 }
    }
}

impl Default for Window {
    fn default() -> Self {
        Window { lo: -50, hi: 50 }
    }
}

impl FromStr for Window {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Schema(format!("window {s:?} is not of the form K:M"));
        let (a, b) = s.split_once(':').ok_or_else(bad)?;
        let lo = a.trim().parse().map_err(|_| bad())?;
        let hi = b.trim().parse().map_err(|_| bad())?;
        if lo >= hi {
            return Err(Error::Schema(format!("window {s:?} is empty")));
        }
        Ok(Window { lo, hi })
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.lo, self.hi)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Label {
    Int(i64),
    Text(String),
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Int(k) => write!(f, "{k}"),
            Label::Text(s) => f.write_str(s),
        }
    }
}

/// Which edges of the basis are truncation cuts (as opposed to walls of
/// `G_χ` or the genuine end of a finite basis).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Truncation {
    pub cut_lo: bool,
    pub cut_hi: bool,
}

/// How a representation was produced; enough to rebuild it.
#[derive(Clone, Debug, PartialEq)]
pub enum Origin {
    Character(Character),
    DynShift(DynOrbit),
    Periodic { orbit: DynOrbit, z: Scalar },
    Spin { two_l: u32 },
    FiniteGroup { group: Arc<FiniteGroup>, subgroup: Vec<usize>, rho: BTreeMap<usize, SparseMatrix> },
    Density { a: Scalar, lambda: Scalar },
    Explicit,
}

#[derive(Clone, Debug, PartialEq)]
pub struct InducedRep {
    pub labels: Vec<Label>,
    /// Degree (grading-group label) of each basis vector.
    pub degrees: Vec<GroupElem>,
    /// Generator name → matrix; Star-type generators also carry `name*`.
    pub ops: BTreeMap<String, SparseMatrix>,
    pub truncation: Truncation,
    pub origin: Origin,
}

impl InducedRep {
    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn op(&self, name: &str) -> Result<&SparseMatrix> {
        self.ops.get(name).ok_or_else(|| Error::Invalid(format!("representation has no operator {name}")))
    }

    pub fn is_exact(&self) -> bool {
        self.ops.values().all(SparseMatrix::is_exact)
    }

    pub fn index_of(&self, l: &Label) -> Option<usize> {
        self.labels.iter().position(|x| x == l)
    }

    /// `π(x)` for a letter, resolving `x*` through the spec's involution.
    pub fn letter_matrix(&self, spec: &GradedAlgebraSpec, l: Letter) -> Result<SparseMatrix> {
        let g = &spec.generators[l.gen];
        if !l.star {
            return self.op(&g.name).cloned();
        }
        match &g.adjoint {
            Adjoint::Star => self.op(&format!("{}*", g.name)).cloned(),
            Adjoint::Gen { target, sign } => Ok(self.op(&spec.generators[*target].name)?.scale(sign)),
        }
    }

    pub fn word_matrix(&self, spec: &GradedAlgebraSpec, w: &GradedWord) -> Result<SparseMatrix> {
        let mut acc = SparseMatrix::identity(self.dim());
        for &l in &w.letters {
            acc = acc.mul(&self.letter_matrix(spec, l)?);
        }
        Ok(acc)
    }

    pub fn poly_matrix(&self, spec: &GradedAlgebraSpec, p: &NCPolynomial) -> Result<SparseMatrix> {
        let mut acc = SparseMatrix::square(self.dim());
        for (w, c) in p.terms() {
            acc = acc.add(&self.word_matrix(spec, w)?.scale(c));
        }
        Ok(acc)
    }

    /// Columns at distance at least `excursion` from every truncation cut.
    pub fn interior(&self, excursion: usize) -> Vec<usize> {
        let n = self.dim();
        (0..n)
            .filter(|&i| (!self.truncation.cut_lo || i >= excursion) && (!self.truncation.cut_hi || i + excursion < n))
            .collect()
    }

    /// All operators in name order.
    pub fn matrices(&self) -> Vec<(&str, &SparseMatrix)> {
        self.ops.iter().map(|(k, v)| (k.as_str(), v)).collect()
    }
}

/// Largest distance (in ℤ-degree) a relation word or a generator moves a
/// basis label while being applied right to left. Columns this far from a
/// cut are computed exactly by products of truncated matrices.
pub fn excursion(spec: &GradedAlgebraSpec) -> usize {
    let deg = |l: Letter| spec.letter_degree(l).ok().and_then(|d| d.as_int()).unwrap_or(0);
    let mut best = spec.generators.iter().enumerate().map(|(i, _)| deg(Letter::plain(i)).unsigned_abs()).max().unwrap_or(0);
    for r in &spec.relations {
        for (w, _) in r.terms() {
            let mut p = 0i64;
            for &l in w.letters.iter().rev() {
                p += deg(l);
                best = best.max(p.unsigned_abs());
            }
        }
    }
    best as usize
}

/// A ℤ-graded character model whose letters map `h_p` to a multiple of
/// `h_{p+deg}`, with `h_p = a_p ⊗ 1` of norm² `N_p`.
pub trait ShiftModel {
    /// Inclusive bounds of `G_χ`.
    fn domain(&self) -> (Option<i64>, Option<i64>);
    /// Inclusive range where the model has data, if limited.
    fn explored(&self) -> Option<(i64, i64)>;
    /// Coefficient `c` in `l·h_p = c·h_{p+deg l}`.
    fn coefficient(&self, l: Letter, p: i64) -> Result<Scalar>;
    /// `N_{p+1}/N_p` for `p, p+1 ∈ G_χ`.
    fn ratio_up(&self, p: i64) -> Result<Scalar>;
}

impl ShiftModel for DynOrbit {
    fn domain(&self) -> (Option<i64>, Option<i64>) {
        (self.lower.wall().map(|k| k + 1), self.upper.wall().map(|m| m - 1))
    }

    fn explored(&self) -> Option<(i64, i64)> {
        let (lo, hi) = DynOrbit::explored(self);
        Some((lo, hi))
    }

    fn coefficient(&self, l: Letter, p: i64) -> Result<Scalar> {
        Ok(match (l.star, p) {
            (false, p) if p < 0 => self.x(p)?.clone(),
            (true, p) if p > 0 => self.x(p - 1)?.clone(),
            _ => Scalar::one(),
        })
    }

    fn ratio_up(&self, p: i64) -> Result<Scalar> {
        let x = self.x(p)?;
        if p >= 0 {
            Ok(x.clone())
        } else {
            x.inverse().ok_or_else(|| Error::Numeric(format!("x_{p} vanishes inside the domain")))
        }
    }
}

impl ShiftModel for Sl2Character {
    fn domain(&self) -> (Option<i64>, Option<i64>) {
        Sl2Character::domain(self)
    }

    fn explored(&self) -> Option<(i64, i64)> {
        None
    }

    fn coefficient(&self, l: Letter, p: i64) -> Result<Scalar> {
        Ok(Scalar::from_q(letter_action(self, l.gen, l.star, p).1))
    }

    fn ratio_up(&self, p: i64) -> Result<Scalar> {
        self.norm_ratio_up(p).map(Scalar::from_q).ok_or_else(|| Error::Numeric(format!("N_{p} vanishes")))
    }
}

fn shift_rep(model: &dyn ShiftModel, spec: &GradedAlgebraSpec, window: Window, origin: Origin) -> Result<InducedRep> {
    let (dlo, dhi) = model.domain();
    let lo = dlo.map_or(window.lo, |d| d.max(window.lo));
    let hi = dhi.map_or(window.hi - 1, |d| d.min(window.hi - 1));
    if lo > hi {
        return Err(Error::Window(format!("window {window} does not meet G_χ")));
    }
    if let Some((elo, ehi)) = model.explored() {
        if lo < elo || hi > ehi {
            return Err(Error::Window(format!("window {window} leaves the explored orbit [{elo}, {ehi}]")));
        }
    }
    let n = (hi - lo + 1) as usize;
    let mut ops = BTreeMap::new();
    for (gi, g) in spec.generators.iter().enumerate() {
        let deg = g.degree.as_int().ok_or_else(|| Error::Group("shift models need a ℤ grading".into()))?;
        let mut forms = vec![(g.name.clone(), Letter::plain(gi), deg)];
        if g.adjoint == Adjoint::Star {
            forms.push((format!("{}*", g.name), Letter::starred(gi), -deg));
        }
        for (name, l, d) in forms {
            let mut m = SparseMatrix::square(n);
            for p in lo..=hi {
                let q = p + d;
                if q < lo || q > hi {
                    continue;
                }
                let c = model.coefficient(l, p)?;
                if c.is_zero() {
                    continue;
                }
                let ratio = match d {
                    0 => Scalar::one(),
                    1 => model.ratio_up(p)?,
                    -1 => model
                        .ratio_up(q)?
                        .inverse()
                        .ok_or_else(|| Error::Numeric(format!("N_{p} vanishes inside the domain")))?,
                    _ => return Err(Error::Invalid(format!("generator {name} has degree {d}; shift models need |deg| ≤ 1"))),
                };
                let root = ratio.sqrt().ok_or_else(|| Error::NotPositive(format!("N_{q}/N_{p} < 0")))?;
                m.set((q - lo) as usize, (p - lo) as usize, &c * &root);
            }
            ops.insert(name, m);
        }
    }
    Ok(InducedRep {
        labels: (lo..=hi).map(Label::Int).collect(),
        degrees: (lo..=hi).map(GroupElem::int).collect(),
        ops,
        truncation: Truncation { cut_lo: dlo.is_none_or(|d| d < lo), cut_hi: dhi.is_none_or(|d| d > hi) },
        origin,
    })
}

/// `Ind χ` on the labels `G_χ ∩ window` (all of `G_χ` for finite gradings).
pub fn induce_character(chi: &Character, spec: &GradedAlgebraSpec, window: Window) -> Result<InducedRep> {
    let origin = Origin::Character(chi.clone());
    match chi {
        Character::Dyn(o) => shift_rep(o, spec, window, origin),
        Character::Sl2(c) => {
            if !sl2_membership(c).is_yes() {
                return Err(Error::NotPositive(format!("(s={}, t={})", c.s, c.t)));
            }
            shift_rep(c, spec, window, origin)
        }
        Character::Finite(c) => {
            let (group, grading) = crate::character::finite::grading_of(spec)?;
            let kernel: Vec<usize> = (0..group.order()).filter(|&g| grading[g] == spec.group.identity()).collect();
            if c.support() != kernel {
                return Err(Error::Invalid("character must live on the degree-zero subgroup".into()));
            }
            let mut rep = finite_group_induce(&group, &kernel, &character_rep(c))?;
            rep.degrees = rep.degrees.iter().map(|d| match d {
                GroupElem::Finite(r) => grading[*r].clone(),
                other => other.clone(),
            }).collect();
            rep.labels = rep.degrees.iter().map(|d| Label::Text(format!("deg {d}"))).collect();
            rep.origin = origin;
            Ok(rep)
        }
    }
}

/// Weighted shift `π(a)e_k = √x_k e_{k+1}`, `π(a*)e_k = √x_{k−1} e_{k−1}`
/// on `G_χ ∩ window`.
pub fn dyn_shift_rep(orbit: &DynOrbit, window: Window) -> Result<InducedRep> {
    let (dlo, dhi) = ShiftModel::domain(orbit);
    let lo = dlo.map_or(window.lo, |d| d.max(window.lo));
    let hi = dhi.map_or(window.hi - 1, |d| d.min(window.hi - 1));
    let (elo, ehi) = orbit.explored();
    if lo > hi || lo < elo || hi > ehi {
        return Err(Error::Window(format!("window {window} not inside the explored orbit [{elo}, {ehi}]")));
    }
    let n = (hi - lo + 1) as usize;
    let mut a = SparseMatrix::square(n);
    for k in lo..hi {
        a.set((k + 1 - lo) as usize, (k - lo) as usize, orbit.weight(k)?);
    }
    let mut ops = BTreeMap::new();
    ops.insert("a*".to_string(), a.adjoint());
    ops.insert("a".to_string(), a);
    Ok(InducedRep {
        labels: (lo..=hi).map(Label::Int).collect(),
        degrees: (lo..=hi).map(GroupElem::int).collect(),
        ops,
        truncation: Truncation { cut_lo: dlo.is_none_or(|d| d < lo), cut_hi: dhi.is_none_or(|d| d > hi) },
        origin: Origin::DynShift(orbit.clone()),
    })
}

/// `π_z` for a bilateral periodic orbit of period `m`: `π(a)f_r = λ_r f_{r+1}`
/// with the wrap-around `π(a)f_{m−1} = z λ_{m−1} f_0`.
pub fn dyn_periodic_rep(orbit: &DynOrbit, z: &Scalar) -> Result<InducedRep> {
    let OrbitClass::BilateralPeriodic { m } = crate::character::dyn_classify(orbit) else {
        return Err(Error::Invalid("orbit is not bilateral periodic".into()));
    };
    if !z.norm_sqr().approx_eq(&Scalar::one(), 1e-12) {
        return Err(Error::Invalid("z must have modulus 1".into()));
    }
    let m = m as usize;
    let mut a = SparseMatrix::square(m);
    for r in 0..m {
        let w = orbit.weight(r as i64)?;
        if r + 1 < m {
            a.set(r + 1, r, w);
        } else {
            a.set(0, r, z * &w);
        }
    }
    let mut ops = BTreeMap::new();
    ops.insert("a*".to_string(), a.adjoint());
    ops.insert("a".to_string(), a);
    Ok(InducedRep {
        labels: (0..m as i64).map(Label::Int).collect(),
        degrees: (0..m as i64).map(GroupElem::int).collect(),
        ops,
        truncation: Truncation::default(),
        origin: Origin::Periodic { orbit: orbit.clone(), z: z.clone() },
    })
}

/// The `z` values `e^{2πij/n}`, `j = 0..n`.
pub fn roots_of_unity(n: u32) -> Vec<Scalar> {
    (0..n as i64).map(|j| Scalar::root_of_unity(n, j)).collect()
}

/// Spin `l = two_l/2`: basis `e_m`, `m = −l..l`, with
/// `E e_m = √((l−m)(l+m+1)) e_{m+1}`, `F e_m = √((l+m)(l−m+1)) e_{m−1}`,
/// `H e_m = 2m e_m`.
pub fn su2_spin_rep(two_l: u32) -> InducedRep {
    let n = two_l as usize + 1;
    let l2 = two_l as i64;
    let (mut e, mut f, mut h) = (SparseMatrix::square(n), SparseMatrix::square(n), SparseMatrix::square(n));
    for j in 0..n {
        let ji = j as i64;
        // with j = m + l: (l−m)(l+m+1) = (2l−j)(j+1), (l+m)(l−m+1) = j(2l−j+1)
        if j + 1 < n {
            e.set(j + 1, j, Scalar::int((l2 - ji) * (ji + 1)).sqrt().unwrap());
        }
        if j > 0 {
            f.set(j - 1, j, Scalar::int(ji * (l2 - ji + 1)).sqrt().unwrap());
        }
        h.set(j, j, Scalar::int(2 * ji - l2));
    }
    let ops = [("E", e), ("F", f), ("H", h)].into_iter().map(|(k, v)| (k.to_string(), v)).collect();
    InducedRep {
        labels: (0..n as i64).map(|j| Label::Text(format!("m={}", qr(2 * j - l2, 2)))).collect(),
        degrees: (0..n as i64).map(GroupElem::int).collect(),
        ops,
        truncation: Truncation::default(),
        origin: Origin::Spin { two_l },
    }
}

/// `Ind χ` for an sl2 character, on `G_χ ∩ window`.
pub fn sl2_truncated_rep(c: &Sl2Character, window: Window) -> Result<InducedRep> {
    let spec = match c.algebra {
        crate::character::Sl2Kind::Su2 => GradedAlgebraSpec::su2(),
        crate::character::Sl2Kind::Su11 => GradedAlgebraSpec::su11(),
    };
    induce_character(&Character::Sl2(c.clone()), &spec, window)
}

/// A character as a 1×1 matrix representation.
pub fn character_rep(chi: &FiniteGroupCharacter) -> BTreeMap<usize, SparseMatrix> {
    chi.values
        .iter()
        .map(|(&h, v)| {
            let mut m = SparseMatrix::square(1);
            m.set(0, 0, v.clone());
            (h, m)
        })
        .collect()
}

/// Left coset representatives of `H` (least element of each coset), in order.
pub fn coset_representatives(group: &FiniteGroup, members: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; group.order()];
    let mut reps = Vec::new();
    for g in 0..group.order() {
        if !seen[g] {
            reps.push(g);
            for &h in members {
                seen[group.mul(g, h)] = true;
            }
        }
    }
    reps
}

/// `Ind_H^G ρ` on `ℂ[G] ⊗_{ℂ[H]} V`: with representatives `r_i`,
/// `g r_i = r_k h` puts `ρ(h)` in block `(k, i)` of `π(g)`. Sections are
/// unitary, so the blocks `r_i ⊗ V` are orthonormal for the induced form.
pub fn finite_group_induce(
    group: &Arc<FiniteGroup>,
    members: &[usize],
    rho: &BTreeMap<usize, SparseMatrix>,
) -> Result<InducedRep> {
    let mut members = members.to_vec();
    members.sort_unstable();
    if group.closure(&members) != members {
        return Err(Error::Group("H is not a subgroup".into()));
    }
    if rho.keys().copied().collect::<Vec<_>>() != members {
        return Err(Error::Invalid("ρ must be given on every element of H".into()));
    }
    let d = rho[&group.identity()].n_rows;
    let reps = coset_representatives(group, &members);
    let index: BTreeMap<usize, usize> = reps.iter().enumerate().map(|(i, &r)| (r, i)).collect();
    let n = reps.len() * d;
    let mut ops = BTreeMap::new();
    for g in 0..group.order() {
        let mut m = SparseMatrix::square(n);
        for (i, &r) in reps.iter().enumerate() {
            let gr = group.mul(g, r);
            let (k, h) = members
                .iter()
                .find_map(|&h| {
                    let rk = group.mul(gr, group.inv(h));
                    index.get(&rk).map(|&k| (k, h))
                })
                .expect("cosets partition G");
            for (a, b, v) in rho[&h].entries() {
                m.set(k * d + a, i * d + b, v.clone());
            }
        }
        ops.insert(group.name(g).to_string(), m);
    }
    let mut labels = Vec::with_capacity(n);
    let mut degrees = Vec::with_capacity(n);
    for &r in &reps {
        for j in 0..d {
            let name = group.name(r);
            labels.push(Label::Text(if d == 1 { format!("{name}H") } else { format!("{name}H#{j}") }));
            degrees.push(GroupElem::Finite(r));
        }
    }
    Ok(InducedRep {
        labels,
        degrees,
        ops,
        truncation: Truncation::default(),
        origin: Origin::FiniteGroup { group: group.clone(), subgroup: members, rho: rho.clone() },
    })
}

#[derive(Clone, Debug, PartialEq)]
pub enum Obstruction {
    Trivial(String),
    Nontrivial(String),
    Inconclusive(String),
}

impl Obstruction {
    pub fn is_trivial(&self) -> bool {
        matches!(self, Obstruction::Trivial(_))
    }
}

impl fmt::Display for Obstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Obstruction::Trivial(r) => write!(f, "trivial ({r})"),
            Obstruction::Nontrivial(r) => write!(f, "nontrivial ({r})"),
            Obstruction::Inconclusive(r) => write!(f, "inconclusive ({r})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MackeyCocycle {
    pub stabilizer: Subgroup,
    /// Tested stabilizer elements with their section words.
    pub sections: Vec<(GroupElem, GradedWord)>,
    pub tau: BTreeMap<(GroupElem, GroupElem), Scalar>,
    pub verdict: Obstruction,
    /// For periodic orbits, `χ̃(a^m) = λ_0⋯λ_{m−1}` (times `z ∈ 𝕋`).
    pub extension: Option<Scalar>,
}

impl MackeyCocycle {
    /// Largest `|τ(h,k)τ(hk,l) − τ(k,l)τ(h,kl)|` over tested triples whose
    /// products stay in the tested range, and the largest `||τ| − 1|`.
    pub fn residuals(&self, spec: &GradedAlgebraSpec) -> (f64, f64) {
        let hs: Vec<&GroupElem> = self.sections.iter().map(|(h, _)| h).collect();
        let mul = |a: &GroupElem, b: &GroupElem| spec.group.mul(a, b);
        let mut cocycle: f64 = 0.0;
        for h in &hs {
            for k in &hs {
                for l in &hs {
                    let (hk, kl) = (mul(h, k), mul(k, l));
                    let get = |a: &GroupElem, b: &GroupElem| self.tau.get(&((*a).clone(), (*b).clone()));
                    if let (Some(a), Some(b), Some(c), Some(d)) = (get(h, k), get(&hk, l), get(k, l), get(h, &kl)) {
                        cocycle = cocycle.max((&(a * b) - &(c * d)).abs_f64());
                    }
                }
            }
        }
        let unit = self.tau.values().map(|t| (t.abs_f64() - 1.0).abs()).fold(0.0, f64::max);
        (cocycle, unit)
    }
}

fn star_word(w: &GradedWord) -> GradedWord {
    GradedWord::new(w.letters.iter().rev().map(|l| Letter { gen: l.gen, star: !l.star }).collect())
}

/// The Mackey 2-cocycle `τ(h,k) = χ(a_k* a_h* a_{hk}) / √(N_{hk} N_h N_k)` on
/// the stabilizer (for `ℤ`-stabilizers `mℤ`, on `|h| ≤ 2m`), with a verdict on
/// its cohomology class.
pub fn mackey_cocycle(chi: &Character, spec: &GradedAlgebraSpec, depth: usize) -> Result<MackeyCocycle> {
    let report = stabilizer_and_orbit(chi, Some(spec), depth)?;
    let stabilizer = report.stabilizer;
    if stabilizer.is_trivial() {
        return Ok(MackeyCocycle {
            stabilizer,
            sections: Vec::new(),
            tau: BTreeMap::new(),
            verdict: Obstruction::Trivial("trivial stabilizer".into()),
            extension: None,
        });
    }
    let sections: Vec<(GroupElem, GradedWord)> = match (&stabilizer, chi) {
        (Subgroup::Lattice { .. }, Character::Dyn(_)) => {
            let m = stabilizer.modulus().unwrap();
            (-2..=2).map(|j| (GroupElem::int(j * m), crate::character::dynamics::section(j * m))).collect()
        }
        (Subgroup::Finite { members, .. }, Character::Finite(_)) => {
            let secs = sections(spec)?;
            members
                .iter()
                .map(|&h| {
                    let ge = GroupElem::Finite(h);
                    let s = secs.get(&ge).copied().ok_or_else(|| Error::Group(format!("no element of degree {ge}")))?;
                    Ok((ge, GradedWord::new(vec![Letter::plain(s)])))
                })
                .collect::<Result<_>>()?
        }
        _ => return Err(Error::Invalid("unsupported stabilizer for this character family".into())),
    };
    let word_of: BTreeMap<GroupElem, GradedWord> = sections.iter().cloned().collect();
    let norm = |w: &GradedWord| -> Result<Scalar> {
        let v = chi.eval_word(&star_word(w).concat(w))?;
        if v.is_zero() {
            return Err(Error::Invalid("section with vanishing norm".into()));
        }
        Ok(v)
    };
    let mut tau = BTreeMap::new();
    for (h, ah) in &sections {
        for (k, ak) in &sections {
            let hk = spec.group.mul(h, k);
            let Some(ahk) = word_of.get(&hk) else { continue };
            let w = star_word(ak).concat(&star_word(ah)).concat(ahk);
            let den = (&(&norm(ahk)? * &norm(ah)?) * &norm(ak)?)
                .sqrt()
                .ok_or_else(|| Error::Numeric("negative section norm".into()))?;
            let t = chi
                .eval_word(&w)?
                .checked_div(&den)
                .ok_or_else(|| Error::Numeric("section norm product vanishes".into()))?;
            tau.insert((h.clone(), k.clone()), t);
        }
    }
    let mut extension = None;
    let verdict = match (&stabilizer, chi) {
        (Subgroup::Lattice { .. }, Character::Dyn(o)) => {
            let m = stabilizer.modulus().unwrap();
            let mut prod = Scalar::one();
            for r in 0..m {
                prod = &prod * &o.weight(r)?;
            }
            extension = Some(prod);
            Obstruction::Trivial(format!("stabilizer {m}Z is cyclic; χ̃(a^{m}) = λ_0⋯λ_{}", m - 1))
        }
        (Subgroup::Finite { group, members }, _) => {
            let cyclic = members.iter().any(|&g| group.closure(&[g]).len() == members.len());
            let abelian = members.iter().all(|&a| members.iter().all(|&b| group.mul(a, b) == group.mul(b, a)));
            let symmetric = tau.iter().all(|((h, k), t)| tau.get(&(k.clone(), h.clone())).is_some_and(|u| u.approx_eq(t, 1e-12)));
            if cyclic {
                Obstruction::Trivial("cyclic stabilizer".into())
            } else if abelian && symmetric {
                Obstruction::Trivial("abelian stabilizer with symmetric cocycle".into())
            } else if abelian {
                Obstruction::Nontrivial("τ(h,k) ≠ τ(k,h)".into())
            } else {
                Obstruction::Inconclusive("non-abelian stabilizer".into())
            }
        }
        _ => Obstruction::Inconclusive("unsupported stabilizer".into()),
    };
    Ok(MackeyCocycle { stabilizer, sections, tau, verdict, extension })
}

#[cfg(test)]
mod test {
    use super::*;
    use crate::character::{dyn_extend_orbit, BranchPolicy, ExtendOptions};
    use crate::poly::RationalFunction;

    fn orbit(f: &str, seed: Scalar, back: usize, fwd: usize) -> DynOrbit {
        let f: RationalFunction = f.parse().unwrap();
        let opts = ExtendOptions { policy: BranchPolicy::Principal, ..ExtendOptions::steps(back, fwd) };
        dyn_extend_orbit(&f, &seed, &opts).unwrap().remove(0)
    }

    #[test]
    fn weyl_fock_weights() {
        let o = orbit("t+1", Scalar::int(2), 10, 10);
        let rep = dyn_shift_rep(&o, Window::new(-3, 3)).unwrap();
        assert_eq!(rep.labels.first(), Some(&Label::Int(-3)));
        assert_eq!(rep.labels.last(), Some(&Label::Int(2)));
        assert!(rep.truncation.cut_lo && !rep.truncation.cut_hi);
        let a = rep.op("a").unwrap();
        for k in -3..2i64 {
            let i = (k + 3) as usize;
            assert_eq!(a.get(i + 1, i).pow(2), Scalar::int(2 - k));
        }
        let spec = GradedAlgebraSpec::weyl();
        let generic = induce_character(&Character::Dyn(o), &spec, Window::new(-3, 3)).unwrap();
        assert_eq!(generic.ops, rep.ops);
    }

    #[test]
    fn periodic_twist() {
        let o = orbit("1-t", Scalar::rat(1, 4), 6, 6);
        let rep = dyn_periodic_rep(&o, &Scalar::int(-1)).unwrap();
        let a = rep.op("a").unwrap();
        assert_eq!(a.get(1, 0), Scalar::rat(1, 2));
        assert_eq!(a.mul(a).trace().pow(2), Scalar::rat(3, 4));
        assert_eq!(a.mul(a).trace().to_f64().signum(), -1.0);
        let m = mackey_cocycle(&Character::Dyn(o), &GradedAlgebraSpec::dynamical("1-t".parse().unwrap()), 6).unwrap();
        assert!(m.verdict.is_trivial());
        assert!(m.tau.values().all(|t| *t == Scalar::one()));
        assert_eq!(m.residuals(&GradedAlgebraSpec::weyl()), (0.0, 0.0));
    }

    #[test]
    fn spin_matches_induced_psi() {
        for n in 0..5u32 {
            let spin = su2_spin_rep(n);
            let ind = sl2_truncated_rep(&Sl2Character::psi(n as i64), Window::default()).unwrap();
            assert_eq!(ind.dim(), n as usize + 1);
            assert_eq!(ind.ops, spin.ops);
        }
        let h = su2_spin_rep(2);
        assert_eq!(h.op("H").unwrap().get(0, 0), Scalar::int(-2));
    }

    #[test]
    fn s3_induction_dimensions() {
        let (spec, s3) = GradedAlgebraSpec::s3_over_a3();
        let r = s3.find("(123)").unwrap();
        let omega = FiniteGroupCharacter::cyclic(s3.clone(), r, 1).unwrap();
        let rep = induce_character(&Character::Finite(omega), &spec, Window::default()).unwrap();
        assert_eq!(rep.dim(), 2);
        let whole: Vec<usize> = (0..6).collect();
        let triv = FiniteGroupCharacter::trivial(s3.clone(), &whole);
        assert_eq!(finite_group_induce(&s3, &whole, &character_rep(&triv)).unwrap().dim(), 1);
        let e = finite_group_induce(&s3, &[s3.identity()], &character_rep(&FiniteGroupCharacter::trivial(s3.clone(), &[0])))
            .unwrap();
        assert_eq!(e.dim(), 6);
        assert_eq!(e.op("e").unwrap().trace(), Scalar::int(6));
    }
}
