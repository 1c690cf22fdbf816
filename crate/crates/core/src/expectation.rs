//! Conditional expectations (canonical degree projection, finite-group
//! averaging, ℂ[G] → ℂ[H]) and the Weyl normal form.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::{Family, GradedAlgebraSpec};
use crate::group::{FiniteGroup, Subgroup};
use crate::poly::Poly;
use crate::word::{GradedWord, Letter, NCPolynomial};
use crate::{Error, Result, Scalar};

pub type ScalarPoly = Poly<Scalar>;

fn subgroup_compatible(spec: &GradedAlgebraSpec, h: &Subgroup) -> bool {
    match (h, &spec.group.kind) {
        (Subgroup::Lattice { rank, .. }, crate::group::GroupKind::FreeAbelian { rank: r }) => rank == r,
        (Subgroup::Finite { group, .. }, crate::group::GroupKind::Finite(g)) => **group == **g,
        _ => false,
    }
}

/// `p_H`: keep the terms whose degree lies in `H`.
pub fn conditional_expectation(spec: &GradedAlgebraSpec, p: &NCPolynomial, h: &Subgroup) -> Result<NCPolynomial> {
    if !subgroup_compatible(spec, h) {
        return Err(Error::Group("subgroup is not contained in the grading group".into()));
    }
    for (w, _) in p.terms() {
        spec.degree_of(w)?;
    }
    Ok(p.filter(|w| spec.degree_of(w).map(|d| h.contains(&d)).unwrap_or(false)))
}

/// A *-automorphism given on generators by `x_i ↦ c_i · x_{σ(i)}`.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorMap {
    pub images: Vec<(Scalar, usize)>,
}

impl GeneratorMap {
    pub fn identity(n: usize) -> Self {
        GeneratorMap { images: (0..n).map(|i| (Scalar::one(), i)).collect() }
    }

    pub fn apply(&self, spec: &GradedAlgebraSpec, p: &NCPolynomial) -> NCPolynomial {
        let mapped = p.substitute(|l| {
            let (c, t) = &self.images[l.gen];
            if l.star {
                NCPolynomial::term(c.conj(), GradedWord::new(vec![Letter::starred(*t)]))
            } else {
                NCPolynomial::term(c.clone(), GradedWord::new(vec![Letter::plain(*t)]))
            }
        });
        spec.normalize(&mapped)
    }

    fn compose(&self, o: &GeneratorMap) -> GeneratorMap {
        // (self ∘ o)(x_i) = self(c_i x_{σ(i)})
        GeneratorMap {
            images: o.images.iter().map(|(c, t)| {
                let (c2, t2) = &self.images[*t];
                (c * c2, *t2)
            }).collect(),
        }
    }
}

/// Uniform average `(1/|G|) Σ α_g(p)` over a finite group of generator maps.
pub fn finite_average_expectation(
    spec: &GradedAlgebraSpec,
    p: &NCPolynomial,
    action: &[GeneratorMap],
) -> Result<NCPolynomial> {
    validate_action(spec, action)?;
    let mut acc = NCPolynomial::zero();
    for a in action {
        acc = &acc + &a.apply(spec, p);
    }
    let inv = Scalar::rat(1, action.len() as i64);
    Ok(acc.scale(&inv))
}

fn validate_action(spec: &GradedAlgebraSpec, action: &[GeneratorMap]) -> Result<()> {
    let n = spec.generators.len();
    if action.is_empty() || action.iter().any(|a| a.images.len() != n || a.images.iter().any(|(_, t)| *t >= n)) {
        return Err(Error::Invalid("action maps must send every generator to a generator".into()));
    }
    if !action.contains(&GeneratorMap::identity(n)) {
        return Err(Error::Invalid("action must contain the identity".into()));
    }
    for a in action {
        for b in action {
            if !action.contains(&a.compose(b)) {
                return Err(Error::Invalid("action is not closed under composition".into()));
            }
        }
        // *-compatibility: α(x*) = α(x)*
        for i in 0..n {
            let x = NCPolynomial::letter(Letter::plain(i));
            let lhs = a.apply(spec, &spec.involute(&x));
            let rhs = spec.involute(&a.apply(spec, &x));
            if lhs != rhs {
                return Err(Error::Invalid(format!("map does not commute with * on {}", spec.generators[i].name)));
            }
        }
        for (ri, r) in spec.relations.iter().enumerate() {
            let img = a.apply(spec, r);
            if !in_relation_span(spec, &img) {
                return Err(Error::Invalid(format!("map does not preserve relation {ri}")));
            }
        }
    }
    Ok(())
}

/// `img` vanishes in the algebra, checked as a multiple of one relation
/// (or via the normal form for the Weyl family).
fn in_relation_span(spec: &GradedAlgebraSpec, img: &NCPolynomial) -> bool {
    if img.is_zero() {
        return true;
    }
    if spec.family == Family::Weyl {
        return weyl_normal_form(spec, img).map(|nf| nf.is_empty()).unwrap_or(false);
    }
    spec.relations.iter().any(|r| {
        let Some((w, c)) = r.terms().next() else { return false };
        let k = img.coefficient(w);
        match k.checked_div(c) {
            Some(ratio) => (&r.scale(&ratio) - img).is_zero(),
            None => false,
        }
    })
}

// ---- Weyl normal form -------------------------------------------------------

/// `a*^i a^j` coefficients.
type AntiNormal = BTreeMap<(usize, usize), Scalar>;

fn push_an(m: &mut AntiNormal, key: (usize, usize), c: Scalar) {
    if c.is_zero() {
        return;
    }
    let e = m.entry(key).or_default();
    *e = &*e + &c;
    if e.is_zero() {
        m.remove(&key);
    }
}

/// Right-multiply by one letter using `a^j a* = a* a^j + j a^{j−1}`.
fn times_letter(m: &AntiNormal, star: bool) -> AntiNormal {
    let mut out = AntiNormal::new();
    for (&(i, j), c) in m {
        if !star {
            push_an(&mut out, (i, j + 1), c.clone());
        } else {
            push_an(&mut out, (i + 1, j), c.clone());
            if j > 0 {
                push_an(&mut out, (i, j - 1), c * &Scalar::int(j as i64));
            }
        }
    }
    out
}

fn falling(i: usize, shift: i64) -> ScalarPoly {
    // (N+shift)(N+shift−1)…(N+shift−i+1)
    let mut p = ScalarPoly::constant(Scalar::one());
    for k in 0..i as i64 {
        p = p.mul(&ScalarPoly::new(vec![Scalar::int(shift - k), Scalar::one()]));
    }
    p
}

/// Normal form `Σ a^r f_r(N) + Σ a*^s f_{−s}(N)` as a map `r ↦ f_r`
/// (negative keys are the `a*` side). Zero polynomials are omitted.
pub fn weyl_normal_form(spec: &GradedAlgebraSpec, p: &NCPolynomial) -> Result<BTreeMap<i64, ScalarPoly>> {
    if spec.family != Family::Weyl {
        return Err(Error::Invalid("Weyl normal form requires the Weyl family".into()));
    }
    let mut total = AntiNormal::new();
    for (w, c) in p.terms() {
        let mut m = AntiNormal::from([((0, 0), c.clone())]);
        for l in &w.letters {
            m = times_letter(&m, l.star);
        }
        for (k, v) in m {
            push_an(&mut total, k, v);
        }
    }
    let mut out: BTreeMap<i64, ScalarPoly> = BTreeMap::new();
    for ((i, j), c) in total {
        let (r, f) = if i <= j {
            let r = (j - i) as i64;
            (r, falling(i, -r))
        } else {
            (-((i - j) as i64), falling(j, 0))
        };
        let e = out.entry(r).or_insert_with(ScalarPoly::zero);
        *e = e.add(&f.scale(&c));
    }
    out.retain(|_, f| !f.is_zero());
    Ok(out)
}

/// Reassemble a normal form into a word polynomial.
pub fn weyl_assemble(spec: &GradedAlgebraSpec, nf: &BTreeMap<i64, ScalarPoly>) -> NCPolynomial {
    let a = spec.gen("a");
    let n = NCPolynomial::word(GradedWord::new(vec![Letter::starred(a), Letter::plain(a)]));
    let mut out = NCPolynomial::zero();
    for (&r, f) in nf {
        let prefix = NCPolynomial::word(GradedWord::power(
            if r >= 0 { Letter::plain(a) } else { Letter::starred(a) },
            r.unsigned_abs() as usize,
        ));
        let mut fp = NCPolynomial::zero();
        let mut pw = NCPolynomial::one();
        for c in f.coeffs() {
            fp = &fp + &pw.scale(c);
            pw = &pw * &n;
        }
        out = &out + &(&prefix * &fp);
    }
    out
}

// ---- group algebras ---------------------------------------------------------

/// `Σ θ_g g ∈ ℂ[G]`.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupAlgebraElement {
    pub group: Arc<FiniteGroup>,
    pub coeffs: Vec<Scalar>,
}

impl GroupAlgebraElement {
    pub fn zero(group: Arc<FiniteGroup>) -> Self {
        let n = group.order();
        GroupAlgebraElement { group, coeffs: vec![Scalar::zero(); n] }
    }

    pub fn basis(group: Arc<FiniteGroup>, g: usize) -> Self {
        let mut e = Self::zero(group);
        e.coeffs[g] = Scalar::one();
        e
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        GroupAlgebraElement {
            group: self.group.clone(),
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero(self.group.clone());
        for (g, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (h, b) in o.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    let gh = self.group.mul(g, h);
                    out.coeffs[gh] = &out.coeffs[gh] + &(a * b);
                }
            }
        }
        out
    }

    /// `(Σ θ_g g)* = Σ θ̄_g g⁻¹`.
    pub fn star(&self) -> Self {
        let mut out = Self::zero(self.group.clone());
        for (g, a) in self.coeffs.iter().enumerate() {
            out.coeffs[self.group.inv(g)] = a.conj();
        }
        out
    }

    /// `p(Σ θ_g g) = Σ_{g∈H} θ_g g`.
    pub fn expectation(&self, h: &[usize]) -> Self {
        let mut out = Self::zero(self.group.clone());
        for &g in h {
            out.coeffs[g] = self.coeffs[g].clone();
        }
        out
    }

    /// `a = Σ_i k_i a_i` with `a_i ∈ ℂ[H]`, over left coset representatives
    /// `k_i` (least element of each coset).
    pub fn coset_decomposition(&self, h: &[usize]) -> Vec<(usize, Self)> {
        let g = &self.group;
        let mut reps: Vec<usize> = (0..g.order()).map(|x| h.iter().map(|&y| g.mul(x, y)).min().unwrap()).collect();
        reps.sort_unstable();
        reps.dedup();
        reps.into_iter()
            .map(|k| {
                let mut ai = Self::zero(g.clone());
                for &y in h {
                    ai.coeffs[y] = self.coeffs[g.mul(k, y)].clone();
                }
                (k, ai)
            })
            .collect()
    }

    /// Evaluate a word polynomial of a group-algebra spec.
    pub fn from_poly(spec: &GradedAlgebraSpec, p: &NCPolynomial) -> Result<Self> {
        let Family::GroupAlgebra(group) = &spec.family else {
            return Err(Error::Invalid("not a group algebra".into()));
        };
        let mut out = Self::zero(group.clone());
        for (w, c) in p.terms() {
            let mut x = group.identity();
            for l in &w.letters {
                let g = if l.star { group.inv(l.gen) } else { l.gen };
                x = group.mul(x, g);
            }
            out.coeffs[x] = &out.coeffs[x] + c;
        }
        Ok(out)
    }
}

/// Coefficients of the identity in `a*a`: `Σ |θ_g|²` (faithfulness witness).
pub fn trace_state(a: &GroupAlgebraElement) -> Scalar {
    a.coeffs.iter().map(Scalar::norm_sqr).sum()
}
