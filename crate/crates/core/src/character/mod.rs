//! Characters of the degree-zero subalgebra `B`, the positivity test for
//! `B̂⁺`, the partial action `χ ↦ χ^g`, orbits and stabilizers.

pub mod dynamics;
pub mod finite;
pub mod sl2;

use std::fmt;

pub use dynamics::{
    act_by_formula, dyn_classify, dyn_eval_poly, dyn_eval_word, dyn_extend_orbit, weyl_cone_check, BranchPolicy,
    ConeVerdict, DynOrbit, Edge, ExtendOptions, OrbitClass, EPS_ZERO,
};
pub use finite::{finite_act, FiniteGroupCharacter};
pub use sl2::{sl2_act, sl2_eval_word, sl2_membership, Membership, Sl2Character, Sl2Kind, Su11Series, Witness};

use crate::algebra::GradedAlgebraSpec;
use crate::group::{GroupElem, GroupSpec, Subgroup};
use crate::word::{GradedWord, NCPolynomial};
use crate::{Error, Result, Scalar};

/// Anything that can be evaluated on degree-zero words.
pub trait ZeroDegreeFunctional {
    fn eval_word(&self, w: &GradedWord) -> Result<Scalar>;

    fn eval_poly(&self, p: &NCPolynomial) -> Result<Scalar> {
        let mut acc = Scalar::zero();
        for (w, c) in p.terms() {
            acc = acc + c * &self.eval_word(w)?;
        }
        Ok(acc)
    }
}

impl ZeroDegreeFunctional for DynOrbit {
    fn eval_word(&self, w: &GradedWord) -> Result<Scalar> {
        dyn_eval_word(self, w)
    }
}

impl ZeroDegreeFunctional for Sl2Character {
    fn eval_word(&self, w: &GradedWord) -> Result<Scalar> {
        sl2_eval_word(self, w)
    }
}

impl ZeroDegreeFunctional for FiniteGroupCharacter {
    fn eval_word(&self, w: &GradedWord) -> Result<Scalar> {
        let g = &self.group;
        let x = w.letters.iter().fold(g.identity(), |acc, l| g.mul(acc, if l.star { g.inv(l.gen) } else { l.gen }));
        self.value(x).cloned().ok_or_else(|| Error::Invalid(format!("{} is not of degree zero", g.name(x))))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Character {
    Dyn(DynOrbit),
    Sl2(Sl2Character),
    Finite(FiniteGroupCharacter),
}

impl Character {
    pub fn describe(&self) -> String {
        match self {
            Character::Dyn(o) => format!("x0={}", o.seed()),
            Character::Sl2(c) => format!("(s={}, t={})", c.s, c.t),
            Character::Finite(c) => c.describe(),
        }
    }
}

impl ZeroDegreeFunctional for Character {
    fn eval_word(&self, w: &GradedWord) -> Result<Scalar> {
        match self {
            Character::Dyn(o) => o.eval_word(w),
            Character::Sl2(c) => c.eval_word(w),
            Character::Finite(c) => c.eval_word(w),
        }
    }
}

/// Description of `G_χ`.
#[derive(Clone, Debug, PartialEq)]
pub enum Definedness {
    /// Integers in `[lo, hi]` (None = unbounded), known up to `explored`.
    Interval { lo: Option<i64>, hi: Option<i64>, explored: Option<(i64, i64)> },
    Elements(Vec<GroupElem>),
}

impl fmt::Display for Definedness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Definedness::Interval { lo, hi, .. } => match (lo, hi) {
                (None, None) => write!(f, "Z"),
                (Some(l), None) => write!(f, "{{n >= {l}}}"),
                (None, Some(h)) => write!(f, "{{n <= {h}}}"),
                (Some(l), Some(h)) => write!(f, "{{{l}..{h}}}"),
            },
            Definedness::Elements(v) => {
                let s: Vec<String> = v.iter().map(ToString::to_string).collect();
                write!(f, "{{{}}}", s.join(", "))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct StabilizerOrbitReport {
    pub stabilizer: Subgroup,
    /// Reachable characters with the group element reaching them.
    pub orbit: Vec<(GroupElem, Character)>,
    pub definedness: Definedness,
}

/// Stabilizer, orbit sample (|g| ≤ depth for ℤ) and definedness set.
pub fn stabilizer_and_orbit(
    chi: &Character,
    spec: Option<&GradedAlgebraSpec>,
    depth: usize,
) -> Result<StabilizerOrbitReport> {
    let d = depth as i64;
    match chi {
        Character::Dyn(o) => {
            let stabilizer = Subgroup::multiples(o.period.map_or(0, |m| m as i64));
            let mut orbit = Vec::new();
            for g in -d..=d {
                if o.in_domain(g) == Some(true) {
                    if let Some(s) = o.shifted(g)? {
                        orbit.push((GroupElem::int(g), Character::Dyn(s)));
                    }
                }
            }
            Ok(StabilizerOrbitReport {
                stabilizer,
                orbit,
                definedness: Definedness::Interval {
                    lo: o.lower.wall().map(|k| k + 1),
                    hi: o.upper.wall().map(|m| m - 1),
                    explored: Some(o.explored()),
                },
            })
        }
        Character::Sl2(c) => {
            if !sl2_membership(c).is_yes() {
                return Err(Error::NotPositive(c_describe(c)));
            }
            let (lo, hi) = c.domain();
            let orbit = (-d..=d)
                .filter_map(|n| sl2_act(c, n).ok().flatten().map(|x| (GroupElem::int(n), Character::Sl2(x))))
                .collect();
            Ok(StabilizerOrbitReport {
                stabilizer: Subgroup::multiples(0),
                orbit,
                definedness: Definedness::Interval { lo, hi, explored: None },
            })
        }
        Character::Finite(c) => {
            let spec = spec.ok_or_else(|| Error::Invalid("finite characters need the graded spec".into()))?;
            let GroupSpec { kind: crate::group::GroupKind::Finite(gamma) } = &spec.group else {
                return Err(Error::Group("grading group must be finite".into()));
            };
            let mut stab = Vec::new();
            let mut orbit = Vec::new();
            let mut defined = Vec::new();
            for g in 0..gamma.order() {
                let ge = GroupElem::Finite(g);
                if let Some(x) = finite_act(spec, c, &ge)? {
                    defined.push(ge.clone());
                    if x.approx_eq(c, 1e-12) {
                        stab.push(g);
                    }
                    if !orbit.iter().any(|(_, y): &(GroupElem, Character)| matches!(y, Character::Finite(y) if y.approx_eq(&x, 1e-12))) {
                        orbit.push((ge, Character::Finite(x)));
                    }
                }
            }
            let stabilizer = spec.group.subgroup(&stab.into_iter().map(GroupElem::Finite).collect::<Vec<_>>())?;
            Ok(StabilizerOrbitReport { stabilizer, orbit, definedness: Definedness::Elements(defined) })
        }
    }
}

fn c_describe(c: &Sl2Character) -> String {
    format!("{} character (s={}, t={})", c.algebra.name(), c.s, c.t)
}

/// `χ(N) = λ` on the Weyl algebra for arbitrary `λ` (not necessarily in
/// `B̂⁺`), evaluated through the normal form `Σ a^r f_r(N)`.
#[derive(Clone, Debug, PartialEq)]
pub struct WeylCharacter {
    pub lambda: Scalar,
    spec: GradedAlgebraSpec,
}

impl WeylCharacter {
    pub fn new(lambda: Scalar) -> Self {
        WeylCharacter { lambda, spec: GradedAlgebraSpec::weyl() }
    }
}

impl ZeroDegreeFunctional for WeylCharacter {
    fn eval_word(&self, w: &GradedWord) -> Result<Scalar> {
        self.eval_poly(&NCPolynomial::word(w.clone()))
    }

    fn eval_poly(&self, p: &NCPolynomial) -> Result<Scalar> {
        let nf = crate::expectation::weyl_normal_form(&self.spec, p)?;
        if nf.keys().any(|&r| r != 0) {
            return Err(Error::Invalid("Weyl character evaluated on an element of nonzero degree".into()));
        }
        Ok(nf.get(&0).map_or_else(Scalar::zero, |f| f.eval(&self.lambda)))
    }
}
