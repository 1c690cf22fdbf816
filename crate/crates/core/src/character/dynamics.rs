//! Orbits of the recursion `x_{k−1} = f(x_k)` with `x_k = λ_k²`, for the
//! one-generator ℤ-graded families `aa* = f(a*a)`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};

use crate::poly::{RationalFunction, RealRoot};
use crate::scalar::Q;
use crate::word::GradedWord;
use crate::{Error, Result, Scalar};

/// Default threshold below which a float weight counts as zero.
pub const EPS_ZERO: f64 = 1e-9;

/// Rationals beyond this many bits are continued in floating point.
const MAX_BITS: u64 = 4096;

const MAX_BRANCHES: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BranchPolicy {
    /// Smallest nonnegative preimage at every forward step.
    Principal,
    /// One orbit per forward root sequence.
    All,
}

/// One end of an orbit window.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Edge {
    /// The orbit stops here: `K` below, `M` above (both excluded).
    Wall(i64),
    /// Explored up to and including this index; the orbit continues.
    Open(i64),
}

impl Edge {
    pub fn wall(&self) -> Option<i64> {
        match self {
            Edge::Wall(k) => Some(*k),
            Edge::Open(_) => None,
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct ExtendOptions {
    pub back: usize,
    pub fwd: usize,
    pub policy: BranchPolicy,
    pub eps_zero: f64,
}

impl Default for ExtendOptions {
    fn default() -> Self {
        ExtendOptions { back: 50, fwd: 50, policy: BranchPolicy::Principal, eps_zero: EPS_ZERO }
    }
}

impl ExtendOptions {
    pub fn steps(back: usize, fwd: usize) -> Self {
        ExtendOptions { back, fwd, ..Default::default() }
    }
}

/// A nonnegative orbit, indexed so that `x_0 = χ(a*a)` for the character it
/// represents.
#[derive(Clone, Debug, PartialEq)]
pub struct DynOrbit {
    pub f: RationalFunction,
    values: BTreeMap<i64, Scalar>,
    pub lower: Edge,
    pub upper: Edge,
    pub period: Option<u64>,
    /// Root index chosen at each forward step (0 = smallest).
    pub branch: Vec<usize>,
    /// Set when some forward step had several nonnegative preimages; the
    /// orbit classification then goes beyond the injective case.
    pub multi_branch: bool,
    pub eps_zero: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrbitClass {
    FiniteDim { k: i64, m: i64 },
    Fock { m: i64 },
    AntiFock { k: i64 },
    BilateralPeriodic { m: u64 },
    BilateralAperiodic { horizon: u64 },
}

impl fmt::Display for OrbitClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrbitClass::FiniteDim { k, m } => write!(f, "FiniteDim(K={k}, M={m})"),
            OrbitClass::Fock { m } => write!(f, "Fock(M={m})"),
            OrbitClass::AntiFock { k } => write!(f, "AntiFock(K={k})"),
            OrbitClass::BilateralPeriodic { m } => write!(f, "BilateralPeriodic({m})"),
            OrbitClass::BilateralAperiodic { horizon } => write!(f, "BilateralAperiodic(horizon={horizon})"),
        }
    }
}

fn tame(x: Q) -> Scalar {
    if x.numer().bits() > MAX_BITS || x.denom().bits() > MAX_BITS {
        Scalar::approx(x.to_f64().unwrap_or(f64::NAN))
    } else {
        Scalar::from_q(x)
    }
}

/// Real value of a scalar that must be a real number ≥ 0 (after snapping).
fn snap_nonneg(x: Scalar, eps: f64, what: impl Fn() -> String) -> Result<Scalar> {
    match x.real_sign(eps) {
        Some(Ordering::Equal) => Ok(Scalar::zero()),
        Some(Ordering::Greater) => Ok(x),
        Some(Ordering::Less) => Err(Error::NotPositive(format!("{} = {x} is negative", what()))),
        None => Err(Error::Numeric(format!("{} = {x} is not real", what()))),
    }
}

fn apply_f(f: &RationalFunction, x: &Scalar) -> Result<Scalar> {
    match x.as_q() {
        Some(q) => f.eval(&q).map(tame).map_err(|_| Error::Numeric(format!("pole of f at {x}"))),
        None => f
            .eval_f64(x.to_f64())
            .map(Scalar::approx)
            .map_err(|_| Error::Numeric(format!("pole of f at {x}"))),
    }
}

fn preimages(f: &RationalFunction, y: &Scalar, eps: f64) -> Result<Vec<Scalar>> {
    let (target, exact) = match y.as_q() {
        Some(q) => (q, true),
        None => {
            let v = y.to_f64();
            let q = BigRational::from_float(v).ok_or_else(|| Error::Numeric(format!("non-finite value {v}")))?;
            (q, false)
        }
    };
    let width = Q::new(BigInt::from(1), BigInt::from(1u64 << 50)) * (Q::from_integer(1.into()) + target.abs());
    let roots = f.preimages_nonneg(&target, &width);
    Ok(roots
        .into_iter()
        .map(|r| match r {
            RealRoot::Exact(t) if exact => tame(t),
            other => {
                let v = other.midpoint_f64();
                if v.abs() <= eps {
                    Scalar::zero()
                } else {
                    Scalar::approx(v)
                }
            }
        })
        .collect())
}

/// Extend a seed `x_0 ≥ 0` backward by evaluating `f` and forward by solving
/// `f(t) = x_k` over `t ≥ 0`.
///
/// Backward stops at a wall `K` once `x_K` vanishes; forward stops at `M`
/// once `x_{M−1}` vanishes. A negative backward value or a positive value
/// without nonnegative preimage means the seed is not a positive character.
pub fn dyn_extend_orbit(f: &RationalFunction, seed: &Scalar, opts: &ExtendOptions) -> Result<Vec<DynOrbit>> {
    let eps = opts.eps_zero;
    let seed = match seed.real_sign(eps) {
        Some(Ordering::Less) => return Err(Error::NotPositive(format!("seed {seed} is negative"))),
        None => return Err(Error::Numeric(format!("seed {seed} is not real"))),
        Some(Ordering::Equal) => Scalar::zero(),
        Some(Ordering::Greater) => seed.clone(),
    };

    let mut back = BTreeMap::new();
    let mut lower = Edge::Open(-(opts.back as i64));
    let mut x = seed.clone();
    for i in 1..=opts.back as i64 {
        let y = snap_nonneg(apply_f(f, &x)?, eps, || format!("x_{}", -i))?;
        if y.is_zero() {
            lower = Edge::Wall(-i);
            break;
        }
        back.insert(-i, y.clone());
        x = y;
    }

    let mut out = Vec::new();
    let mut values = back;
    values.insert(0, seed.clone());
    let mut multi = false;
    forward(f, opts, values, Vec::new(), &mut multi, &mut out)?;
    let mut orbits: Vec<DynOrbit> = out
        .into_iter()
        .map(|(values, upper, branch)| {
            let mut o = DynOrbit {
                f: f.clone(),
                values,
                lower,
                upper,
                period: None,
                branch,
                multi_branch: multi,
                eps_zero: eps,
            };
            o.period = o.detect_period();
            o
        })
        .collect();
    orbits.sort_by(|a, b| a.branch.cmp(&b.branch));
    Ok(orbits)
}

type Partial = (BTreeMap<i64, Scalar>, Edge, Vec<usize>);

fn forward(
    f: &RationalFunction,
    opts: &ExtendOptions,
    mut values: BTreeMap<i64, Scalar>,
    mut branch: Vec<usize>,
    multi: &mut bool,
    out: &mut Vec<Partial>,
) -> Result<()> {
    let mut k = *values.keys().next_back().unwrap();
    loop {
        let x = values[&k].clone();
        if x.is_zero() {
            out.push((values, Edge::Wall(k + 1), branch));
            return Ok(());
        }
        if branch.len() >= opts.fwd {
            out.push((values, Edge::Open(k), branch));
            return Ok(());
        }
        let roots = preimages(f, &x, opts.eps_zero)?;
        if roots.is_empty() {
            return Err(Error::NotPositive(format!("x_{k} = {x} has no nonnegative preimage under f")));
        }
        if roots.len() > 1 {
            *multi = true;
        }
        if opts.policy == BranchPolicy::All {
            for (i, r) in roots.iter().enumerate().skip(1) {
                if out.len() + 1 >= MAX_BRANCHES {
                    break;
                }
                let mut v = values.clone();
                v.insert(k + 1, r.clone());
                let mut b = branch.clone();
                b.push(i);
                match forward(f, opts, v, b, multi, out) {
                    // a side branch may leave the positive set; drop it
                    Err(Error::NotPositive(_)) => {}
                    r => r?,
                }
            }
        }
        values.insert(k + 1, roots[0].clone());
        branch.push(0);
        k += 1;
    }
}

impl DynOrbit {
    /// Build an orbit from explicit data; checks the recursion and signs.
    pub fn from_values(
        f: RationalFunction,
        values: BTreeMap<i64, Scalar>,
        lower: Edge,
        upper: Edge,
        eps_zero: f64,
    ) -> Result<Self> {
        let mut o = DynOrbit { f, values, lower, upper, period: None, branch: Vec::new(), multi_branch: false, eps_zero };
        o.validate()?;
        o.period = o.detect_period();
        Ok(o)
    }

    fn validate(&self) -> Result<()> {
        if !self.values.contains_key(&0) {
            return Err(Error::Invalid("orbit must contain index 0".into()));
        }
        let (lo, hi) = self.explored();
        if self.values.len() as i64 != hi - lo + 1 {
            return Err(Error::Invalid("orbit values must be contiguous".into()));
        }
        for (k, x) in &self.values {
            if x.real_sign(self.eps_zero) == Some(Ordering::Less) {
                return Err(Error::NotPositive(format!("x_{k} = {x}")));
            }
            if let Some(prev) = self.values.get(&(k - 1)) {
                if !apply_f(&self.f, x)?.approx_eq(prev, self.eps_zero) {
                    return Err(Error::Invalid(format!("recursion fails between x_{} and x_{k}", k - 1)));
                }
            }
        }
        match self.lower {
            Edge::Wall(w) if w != lo - 1 => return Err(Error::Invalid("lower wall must sit below the values".into())),
            Edge::Wall(_) => {
                if !apply_f(&self.f, &self.values[&lo])?.is_zero_tol(self.eps_zero) {
                    return Err(Error::Invalid("f at the lowest value must vanish at a wall".into()));
                }
            }
            Edge::Open(e) if e != lo => return Err(Error::Invalid("lower edge mismatch".into())),
            _ => {}
        }
        match self.upper {
            Edge::Wall(w) if w != hi + 1 || !self.values[&hi].is_zero_tol(self.eps_zero) => {
                Err(Error::Invalid("upper wall needs x_{M-1} = 0".into()))
            }
            Edge::Open(e) if e != hi => Err(Error::Invalid("upper edge mismatch".into())),
            _ => Ok(()),
        }
    }

    /// Smallest and largest stored index.
    pub fn explored(&self) -> (i64, i64) {
        (*self.values.keys().next().unwrap(), *self.values.keys().next_back().unwrap())
    }

    pub fn values(&self) -> &BTreeMap<i64, Scalar> {
        &self.values
    }

    pub fn seed(&self) -> &Scalar {
        &self.values[&0]
    }

    /// `x_k`, or an error if `k` lies outside the stored range.
    pub fn x(&self, k: i64) -> Result<&Scalar> {
        self.values.get(&k).ok_or_else(|| Error::Window(format!("index {k} outside the explored orbit")))
    }

    /// The weight `λ_k = √x_k`.
    pub fn weight(&self, k: i64) -> Result<Scalar> {
        self.x(k)?.sqrt().ok_or_else(|| Error::Numeric(format!("negative x_{k}")))
    }

    /// Whether `k ∈ G_χ = (K, M)`; `None` if `k` is beyond the explored part.
    pub fn in_domain(&self, k: i64) -> Option<bool> {
        if let Edge::Wall(w) = self.lower {
            if k <= w {
                return Some(false);
            }
        }
        if let Edge::Wall(w) = self.upper {
            if k >= w {
                return Some(false);
            }
        }
        let (lo, hi) = self.explored();
        if k < lo || k > hi {
            None
        } else {
            Some(true)
        }
    }

    pub fn is_exact(&self) -> bool {
        self.values.values().all(Scalar::is_exact)
    }

    fn detect_period(&self) -> Option<u64> {
        if !matches!((self.lower, self.upper), (Edge::Open(_), Edge::Open(_))) {
            return None;
        }
        let xs: Vec<&Scalar> = self.values.values().collect();
        let n = xs.len();
        (1..=n / 2).find(|&m| (0..n - m).all(|i| xs[i].approx_eq(xs[i + m], self.eps_zero))).map(|m| m as u64)
    }

    /// The character `χ^g`: the same orbit re-indexed so that position `g`
    /// becomes 0. Defined iff `g ∈ (K, M)`.
    pub fn shifted(&self, g: i64) -> Result<Option<DynOrbit>> {
        match self.in_domain(g) {
            None => Err(Error::Window(format!("shift {g} exits the explored orbit"))),
            Some(false) => Ok(None),
            Some(true) => {
                let sh = |e: Edge| match e {
                    Edge::Wall(k) => Edge::Wall(k - g),
                    Edge::Open(k) => Edge::Open(k - g),
                };
                Ok(Some(DynOrbit {
                    values: self.values.iter().map(|(k, v)| (k - g, v.clone())).collect(),
                    lower: sh(self.lower),
                    upper: sh(self.upper),
                    ..self.clone()
                }))
            }
        }
    }

    /// Equality as characters, compared on the common explored range.
    pub fn same_character(&self, o: &DynOrbit) -> bool {
        let (lo, hi) = self.explored();
        let (lo2, hi2) = o.explored();
        let walls_ok = |a: Edge, b: Edge| match (a, b) {
            (Edge::Wall(x), Edge::Wall(y)) => x == y,
            _ => true,
        };
        walls_ok(self.lower, o.lower)
            && walls_ok(self.upper, o.upper)
            && (lo.max(lo2)..=hi.min(hi2)).all(|k| self.values[&k].approx_eq(&o.values[&k], self.eps_zero))
    }

    /// Depth of exploration on the shorter side.
    pub fn horizon(&self) -> u64 {
        let (lo, hi) = self.explored();
        lo.unsigned_abs().min(hi.unsigned_abs())
    }
}

/// Case analysis by window markers; bilateral orbits report their period
/// or the horizon up to which no period was found.
pub fn dyn_classify(orbit: &DynOrbit) -> OrbitClass {
    match (orbit.lower, orbit.upper) {
        (Edge::Wall(k), Edge::Wall(m)) => OrbitClass::FiniteDim { k, m },
        (Edge::Open(_), Edge::Wall(m)) => OrbitClass::Fock { m },
        (Edge::Wall(k), Edge::Open(_)) => OrbitClass::AntiFock { k },
        (Edge::Open(_), Edge::Open(_)) => match orbit.period {
            Some(m) => OrbitClass::BilateralPeriodic { m },
            None => OrbitClass::BilateralAperiodic { horizon: orbit.horizon() },
        },
    }
}

/// Net ℤ-degree of a word in `a` (letter 0) and `a*`.
pub fn z_degree(word: &GradedWord) -> i64 {
    word.letters.iter().map(|l| if l.star { -1 } else { 1 }).sum()
}

/// `χ(w)` for a zero-degree word, computed as `⟨π(w)h_0, h_0⟩` on the
/// unnormalised vectors `h_p = [a_p ⊗ 1]`: letters act right to left,
/// `a h_p = h_{p+1}` (times `x_p` when `p < 0`), `a* h_p = h_{p−1}` (times
/// `x_{p−1}` when `p > 0`). Leaving `(K, M)` gives 0.
pub fn dyn_eval_word(orbit: &DynOrbit, word: &GradedWord) -> Result<Scalar> {
    if z_degree(word) != 0 {
        return Err(Error::Invalid("word is not of degree zero".into()));
    }
    Ok(walk(orbit, word, 0)?.map(|(_, c)| c).unwrap_or_default())
}

/// Apply a word to `h_start`; `None` when the result is zero, otherwise the
/// end position and coefficient.
pub fn walk(orbit: &DynOrbit, word: &GradedWord, start: i64) -> Result<Option<(i64, Scalar)>> {
    let mut p = start;
    let mut c = Scalar::one();
    for l in word.letters.iter().rev() {
        if l.star {
            if p > 0 {
                c = &c * orbit.x(p - 1)?;
            }
            p -= 1;
        } else {
            if p < 0 {
                c = &c * orbit.x(p)?;
            }
            p += 1;
        }
        match orbit.in_domain(p) {
            Some(true) => {}
            Some(false) => return Ok(None),
            None => return Err(Error::Window(format!("word walks to {p}, beyond the explored orbit"))),
        }
        if c.is_zero() {
            return Ok(None);
        }
    }
    Ok(Some((p, c)))
}

/// The canonical section `a_g`: `a^g` for `g ≥ 0`, `a*^{|g|}` otherwise.
pub fn section(g: i64) -> GradedWord {
    use crate::word::Letter;
    if g >= 0 {
        GradedWord::power(Letter::plain(0), g as usize)
    } else {
        GradedWord::power(Letter::starred(0), g.unsigned_abs() as usize)
    }
}

/// `χ^g(w) = χ(a_g* w a_g) / χ(a_g* a_g)` evaluated directly from the
/// definition; `None` when the denominator vanishes.
pub fn act_by_formula(orbit: &DynOrbit, g: i64, word: &GradedWord) -> Result<Option<Scalar>> {
    let a = section(g);
    let astar = section(-g);
    let den = dyn_eval_word(orbit, &astar.concat(&a))?;
    if den.is_zero() {
        return Ok(None);
    }
    let num = dyn_eval_word(orbit, &astar.concat(word).concat(&a))?;
    Ok(num.checked_div(&den))
}

/// Sum of `c_w · χ(w)` over the terms of a zero-degree polynomial.
pub fn dyn_eval_poly(orbit: &DynOrbit, p: &crate::word::NCPolynomial) -> Result<Scalar> {
    let mut acc = Scalar::zero();
    for (w, c) in p.terms() {
        acc = acc + c * &dyn_eval_word(orbit, w)?;
    }
    Ok(acc)
}

/// Positivity of the Weyl character `χ(N) = λ` on the cone generated by the
/// falling factorials `N(N−1)…(N−k+1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConeVerdict {
    Positive,
    Violated { k: u64 },
}

pub fn weyl_cone_check(lambda: &Scalar, eps: f64) -> ConeVerdict {
    let lam = lambda.re();
    // snap near-integers so float inputs behave like their exact value
    let v = lam.to_f64();
    let lam = if !lam.is_exact() && (v - v.round()).abs() <= eps { Scalar::int(v.round() as i64) } else { lam };
    let top = v.max(0.0).ceil() as u64 + 1;
    let mut prod = Scalar::one();
    for k in 1..=top {
        prod = &prod * &(&lam - &Scalar::int(k as i64 - 1));
        if prod.real_sign(eps) == Some(Ordering::Less) {
            return ConeVerdict::Violated { k };
        }
    }
    ConeVerdict::Positive
}

#[cfg(test)]
mod test {
    use super::*;
    use crate::poly::QPoly;
    use crate::scalar::{q, qr};
    use crate::word::Letter;

    fn lin(c0: Q, c1: Q) -> RationalFunction {
        RationalFunction::polynomial(QPoly::new(vec![c0, c1]))
    }

    fn one(f: &RationalFunction, seed: Scalar, back: usize, fwd: usize) -> DynOrbit {
        dyn_extend_orbit(f, &seed, &ExtendOptions::steps(back, fwd)).unwrap().remove(0)
    }

    #[test]
    fn weyl_orbit_is_fock() {
        let o = one(&lin(q(1), q(1)), Scalar::int(2), 6, 6);
        for k in -6..=2 {
            assert_eq!(o.x(k).unwrap(), &Scalar::int(2 - k));
        }
        assert_eq!(o.upper, Edge::Wall(3));
        assert_eq!(dyn_classify(&o), OrbitClass::Fock { m: 3 });
    }

    #[test]
    fn one_minus_t_has_period_two() {
        let o = one(&lin(q(1), q(-1)), Scalar::rat(1, 4), 10, 10);
        assert_eq!(o.x(1).unwrap(), &Scalar::rat(3, 4));
        assert_eq!(o.x(-1).unwrap(), &Scalar::rat(3, 4));
        assert_eq!(dyn_classify(&o), OrbitClass::BilateralPeriodic { m: 2 });
    }

    #[test]
    fn finite_orbit_of_identity_at_zero() {
        let o = one(&lin(q(0), q(1)), Scalar::zero(), 3, 3);
        assert_eq!(dyn_classify(&o), OrbitClass::FiniteDim { k: -1, m: 1 });
    }

    #[test]
    fn negative_seed_and_stuck_forward_are_rejected() {
        let f = lin(q(1), q(1));
        assert!(dyn_extend_orbit(&f, &Scalar::int(-1), &ExtendOptions::default()).is_err());
        // x_k = 3/2 − k never hits 0 exactly
        assert!(matches!(
            dyn_extend_orbit(&f, &Scalar::rat(3, 2), &ExtendOptions::default()),
            Err(Error::NotPositive(_))
        ));
    }

    #[test]
    fn walk_matches_falling_factorial() {
        let o = one(&lin(q(1), q(1)), Scalar::int(5), 4, 8);
        let w = GradedWord::new(vec![Letter::starred(0), Letter::starred(0), Letter::plain(0), Letter::plain(0)]);
        assert_eq!(dyn_eval_word(&o, &w).unwrap(), Scalar::int(20));
        let w = GradedWord::new(vec![Letter::plain(0), Letter::starred(0)]);
        assert_eq!(dyn_eval_word(&o, &w).unwrap(), Scalar::int(6));
    }

    #[test]
    fn shift_agrees_with_definition() {
        let o = one(&lin(qr(1, 1), qr(1, 2)), Scalar::rat(3, 2), 6, 6);
        let w = GradedWord::new(vec![Letter::starred(0), Letter::plain(0)]);
        for g in -3..=3 {
            let sh = o.shifted(g).unwrap();
            let direct = act_by_formula(&o, g, &w).unwrap();
            match (sh, direct) {
                (Some(s), Some(d)) => assert_eq!(dyn_eval_word(&s, &w).unwrap(), d),
                (None, None) => {}
                other => panic!("definedness mismatch at {g}: {other:?}"),
            }
        }
    }

    #[test]
    fn all_branches_of_a_folding_map() {
        // f(t) = (t − 1)², preimages of y are 1 ± √y
        let f = RationalFunction::polynomial(QPoly::new(vec![q(1), q(-2), q(1)]));
        let opts = ExtendOptions { back: 0, fwd: 2, policy: BranchPolicy::All, eps_zero: EPS_ZERO };
        let os = dyn_extend_orbit(&f, &Scalar::rat(1, 4), &opts).unwrap();
        assert!(os.len() >= 2);
        assert!(os[0].multi_branch);
        assert_eq!(os[0].x(1).unwrap(), &Scalar::rat(1, 2));
        let last = os.last().unwrap();
        assert_eq!(last.branch[0], 1);
        assert_eq!(last.x(1).unwrap(), &Scalar::rat(3, 2));
        assert_eq!(os.len(), 3);
    }

    #[test]
    fn cone_check() {
        assert_eq!(weyl_cone_check(&Scalar::int(2), EPS_ZERO), ConeVerdict::Positive);
        assert_eq!(weyl_cone_check(&Scalar::rat(3, 2), EPS_ZERO), ConeVerdict::Violated { k: 3 });
        assert_eq!(weyl_cone_check(&Scalar::int(-1), EPS_ZERO), ConeVerdict::Violated { k: 1 });
        assert_eq!(weyl_cone_check(&Scalar::int(0), EPS_ZERO), ConeVerdict::Positive);
    }
}
