//! One-dimensional characters of finite groups, viewed as characters of the
//! degree-zero part `ℂ[N]` of a graded group algebra (`N` the kernel of the
//! grading), and their partial action by conjugation.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::{Family, GradedAlgebraSpec};
use crate::group::{FiniteGroup, GroupElem};
use crate::{Error, Result, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct FiniteGroupCharacter {
    pub group: Arc<FiniteGroup>,
    /// Values on the members of the subgroup the character lives on.
    pub values: BTreeMap<usize, Scalar>,
}

impl FiniteGroupCharacter {
    /// Checks: support is a subgroup, `χ(e) = 1`, multiplicative, `|χ| = 1`.
    pub fn new(group: Arc<FiniteGroup>, values: BTreeMap<usize, Scalar>) -> Result<Self> {
        let members: Vec<usize> = values.keys().copied().collect();
        if group.closure(&members) != members {
            return Err(Error::Group("character support is not a subgroup".into()));
        }
        if values.get(&group.identity()) != Some(&Scalar::one()) {
            return Err(Error::Invalid("character must be 1 at the identity".into()));
        }
        for (&a, va) in &values {
            if !va.norm_sqr().approx_eq(&Scalar::one(), 1e-12) {
                return Err(Error::Invalid(format!("|χ({})| ≠ 1", group.name(a))));
            }
            for (&b, vb) in &values {
                if !(va * vb).approx_eq(&values[&group.mul(a, b)], 1e-12) {
                    return Err(Error::Invalid(format!(
                        "χ is not multiplicative at ({}, {})",
                        group.name(a),
                        group.name(b)
                    )));
                }
            }
        }
        Ok(FiniteGroupCharacter { group, values })
    }

    pub fn trivial(group: Arc<FiniteGroup>, members: &[usize]) -> Self {
        let values = members.iter().map(|&m| (m, Scalar::one())).collect();
        FiniteGroupCharacter { group, values }
    }

    /// The character of a cyclic subgroup `⟨g⟩` sending `g ↦ e^{2πik/ord(g)}`.
    pub fn cyclic(group: Arc<FiniteGroup>, g: usize, k: i64) -> Result<Self> {
        let mut values = BTreeMap::new();
        let mut x = group.identity();
        let mut i = 0i64;
        let mut order = 0u32;
        loop {
            order += 1;
            x = group.mul(x, g);
            if x == group.identity() {
                break;
            }
        }
        x = group.identity();
        loop {
            values.insert(x, Scalar::root_of_unity(order, k * i));
            x = group.mul(x, g);
            i += 1;
            if x == group.identity() {
                break;
            }
        }
        FiniteGroupCharacter::new(group, values)
    }

    pub fn support(&self) -> Vec<usize> {
        self.values.keys().copied().collect()
    }

    pub fn value(&self, h: usize) -> Option<&Scalar> {
        self.values.get(&h)
    }

    /// `h ↦ χ(g⁻¹ h g)`; requires the support to be normalised by `g`.
    pub fn conjugated(&self, g: usize) -> Result<Self> {
        let gi = self.group.inv(g);
        let mut values = BTreeMap::new();
        for &h in self.values.keys() {
            let x = self.group.mul(self.group.mul(gi, h), g);
            let v = self.values.get(&x).ok_or_else(|| Error::Group("support is not normalised".into()))?;
            values.insert(h, v.clone());
        }
        Ok(FiniteGroupCharacter { group: self.group.clone(), values })
    }

    pub fn approx_eq(&self, o: &Self, eps: f64) -> bool {
        self.values.len() == o.values.len()
            && self.values.iter().all(|(k, v)| o.values.get(k).is_some_and(|w| v.approx_eq(w, eps)))
    }

    pub fn describe(&self) -> String {
        let parts: Vec<String> = self.values.iter().map(|(k, v)| format!("{}:{}", self.group.name(*k), v)).collect();
        format!("{{{}}}", parts.join(", "))
    }
}

/// The grading data of a group-algebra spec: the group, and for each element
/// its degree.
pub fn grading_of(spec: &GradedAlgebraSpec) -> Result<(Arc<FiniteGroup>, Vec<GroupElem>)> {
    match &spec.family {
        Family::GroupAlgebra(g) => Ok((g.clone(), spec.generators.iter().map(|x| x.degree.clone()).collect())),
        _ => Err(Error::Invalid("not a group algebra".into())),
    }
}

/// First element (in element order) of each degree: the canonical sections.
pub fn sections(spec: &GradedAlgebraSpec) -> Result<BTreeMap<GroupElem, usize>> {
    let (_, grading) = grading_of(spec)?;
    let mut out = BTreeMap::new();
    for (i, d) in grading.into_iter().enumerate() {
        out.entry(d).or_insert(i);
    }
    Ok(out)
}

/// `χ^γ(n) = χ(a_γ* n a_γ)/χ(a_γ* a_γ) = χ(a_γ⁻¹ n a_γ)`; always defined since
/// the sections are unitary. `None` if `γ` is not a degree in use.
pub fn finite_act(spec: &GradedAlgebraSpec, chi: &FiniteGroupCharacter, gamma: &GroupElem) -> Result<Option<FiniteGroupCharacter>> {
    let secs = sections(spec)?;
    match secs.get(gamma) {
        None => Ok(None),
        Some(&s) => chi.conjugated(s).map(Some),
    }
}

#[cfg(test)]
mod test {
    use super::*;

    #[test]
    fn omega_is_swapped_by_transpositions() {
        let (spec, s3) = GradedAlgebraSpec::s3_over_a3();
        let r = s3.find("(123)").unwrap();
        let omega = FiniteGroupCharacter::cyclic(s3.clone(), r, 1).unwrap();
        let omega2 = FiniteGroupCharacter::cyclic(s3.clone(), r, 2).unwrap();
        let moved = finite_act(&spec, &omega, &GroupElem::Finite(1)).unwrap().unwrap();
        assert!(moved.approx_eq(&omega2, 0.0));
        let fixed = finite_act(&spec, &omega, &GroupElem::Finite(0)).unwrap().unwrap();
        assert_eq!(fixed, omega);
    }

    #[test]
    fn rejects_non_multiplicative() {
        let s3 = Arc::new(FiniteGroup::symmetric(3));
        let r = s3.find("(123)").unwrap();
        let mut values: BTreeMap<usize, Scalar> = s3.closure(&[r]).into_iter().map(|m| (m, Scalar::one())).collect();
        values.insert(r, Scalar::int(-1));
        assert!(FiniteGroupCharacter::new(s3, values).is_err());
    }
}
