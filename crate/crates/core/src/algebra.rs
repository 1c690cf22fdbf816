//! Graded *-algebra specifications: generators with degrees, the
//! involution, homogeneous relations and the built-in families.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::group::{FiniteGroup, GroupElem, GroupSpec};
use crate::poly::{QPoly, RationalFunction};
use crate::scalar::{parse_q, qi, Q};
use crate::word::{GradedWord, Letter, NCPolynomial};
use crate::{Error, Result, Scalar};

/// How a generator behaves under `*`.
#[derive(Clone, Debug, PartialEq)]
pub enum Adjoint {
    /// `x*` is an independent letter (star flag).
    Star,
    /// `x* = sign · target`.
    Gen { target: usize, sign: Scalar },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Generator {
    pub name: String,
    pub degree: GroupElem,
    pub adjoint: Adjoint,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Family {
    Weyl,
    Dynamical(RationalFunction),
    QuantumDisk { mu: Q, q: Q, f: RationalFunction },
    EnvSU2,
    EnvSU11,
    VirasoroDensity { k_range: i64 },
    GroupAlgebra(Arc<FiniteGroup>),
    Custom,
}

impl Family {
    pub fn tag(&self) -> &'static str {
        match self {
            Family::Weyl => "weyl",
            Family::Dynamical(_) => "dynamical",
            Family::QuantumDisk { .. } => "quantum_disk",
            Family::EnvSU2 => "su2",
            Family::EnvSU11 => "su11",
            Family::VirasoroDensity { .. } => "virasoro_density",
            Family::GroupAlgebra(_) => "group_algebra",
            Family::Custom => "custom",
        }
    }

    /// The recursion function `f` with `aa* = f(a*a)`, for the one-generator
    /// ℤ-graded families.
    pub fn dyn_function(&self) -> Option<RationalFunction> {
        match self {
            Family::Weyl => Some(RationalFunction::polynomial(QPoly::new(vec![Q::one(), Q::one()]))),
            Family::Dynamical(f) | Family::QuantumDisk { f, .. } => Some(f.clone()),
            _ => None,
        }
    }

    pub fn is_sl2(&self) -> bool {
        matches!(self, Family::EnvSU2 | Family::EnvSU11)
    }
}

/// One offending relation from [`GradedAlgebraSpec::check_homogeneity`].
#[derive(Clone, Debug, PartialEq)]
pub struct HomogeneityIssue {
    pub index: usize,
    pub degrees: Vec<GroupElem>,
}

impl fmt::Display for HomogeneityIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d: Vec<String> = self.degrees.iter().map(ToString::to_string).collect();
        write!(f, "relation {} mixes degrees {}", self.index, d.join(", "))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GradedAlgebraSpec {
    pub group: GroupSpec,
    pub generators: Vec<Generator>,
    /// Each polynomial means `r = 0`.
    pub relations: Vec<NCPolynomial>,
    pub family: Family,
}

impl GradedAlgebraSpec {
    /// Build and validate: degrees in the group, involution closed, every
    /// relation homogeneous.
    pub fn new(
        group: GroupSpec,
        generators: Vec<Generator>,
        relations: Vec<NCPolynomial>,
        family: Family,
    ) -> Result<Self> {
        for g in &generators {
            group.check(&g.degree)?;
            if let Adjoint::Gen { target, sign } = &g.adjoint {
                let t = generators
                    .get(*target)
                    .ok_or_else(|| Error::Schema(format!("adjoint of {} points outside the generator list", g.name)))?;
                if group.inv(&g.degree) != t.degree {
                    return Err(Error::Schema(format!("{}* = {} but degrees are not inverse", g.name, t.name)));
                }
                if !(sign * &sign.conj()).approx_eq(&Scalar::one(), 1e-12) {
                    return Err(Error::Schema(format!("adjoint sign for {} must have modulus 1", g.name)));
                }
            }
        }
        for (i, g) in generators.iter().enumerate() {
            if let Adjoint::Gen { target, sign } = &g.adjoint {
                // (x*)* = x:  x* = s·y  ⇒  y* = s̄⁻¹ x = s·x for |s| = 1 real; require consistency.
                match &generators[*target].adjoint {
                    Adjoint::Gen { target: back, sign: s2 } if *back == i && s2.approx_eq(&sign.conj(), 1e-12) => {}
                    _ => {
                        return Err(Error::Schema(format!("involution does not close on generator {}", g.name)));
                    }
                }
            }
        }
        let spec = GradedAlgebraSpec { group, generators, relations, family };
        let issues = spec.check_homogeneity();
        if let Some(bad) = issues.first() {
            return Err(Error::Schema(format!("inhomogeneous relation: {bad}")));
        }
        Ok(spec)
    }

    pub fn gen_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    pub fn gen(&self, name: &str) -> usize {
        self.gen_index(name).unwrap_or_else(|| panic!("no generator {name}"))
    }

    pub fn letter_degree(&self, l: Letter) -> Result<GroupElem> {
        let g = self
            .generators
            .get(l.gen)
            .ok_or_else(|| Error::Invalid(format!("unknown generator id {}", l.gen)))?;
        Ok(if l.star { self.group.inv(&g.degree) } else { g.degree.clone() })
    }

    pub fn degree_of(&self, w: &GradedWord) -> Result<GroupElem> {
        let mut d = self.group.identity();
        for &l in &w.letters {
            d = self.group.mul(&d, &self.letter_degree(l)?);
        }
        Ok(d)
    }

    /// The common degree of all terms, if homogeneous (zero is homogeneous
    /// of every degree and reports the identity).
    pub fn homogeneous_degree(&self, p: &NCPolynomial) -> Option<GroupElem> {
        let mut deg: Option<GroupElem> = None;
        for (w, _) in p.terms() {
            let d = self.degree_of(w).ok()?;
            match &deg {
                None => deg = Some(d),
                Some(e) if *e == d => {}
                Some(_) => return None,
            }
        }
        Some(deg.unwrap_or_else(|| self.group.identity()))
    }

    pub fn check_homogeneity(&self) -> Vec<HomogeneityIssue> {
        let mut out = Vec::new();
        for (i, r) in self.relations.iter().enumerate() {
            let mut degs: Vec<GroupElem> = r.terms().filter_map(|(w, _)| self.degree_of(w).ok()).collect();
            degs.sort();
            degs.dedup();
            if degs.len() > 1 {
                out.push(HomogeneityIssue { index: i, degrees: degs });
            }
        }
        out
    }

    /// `l*` as a polynomial (a signed letter).
    pub fn star_letter(&self, l: Letter) -> NCPolynomial {
        match &self.generators[l.gen].adjoint {
            Adjoint::Star => NCPolynomial::letter(Letter { gen: l.gen, star: !l.star }),
            Adjoint::Gen { .. } if l.star => NCPolynomial::letter(Letter::plain(l.gen)),
            Adjoint::Gen { target, sign } => {
                NCPolynomial::term(sign.clone(), GradedWord::new(vec![Letter::plain(*target)]))
            }
        }
    }

    /// Rewrite starred letters of generators whose adjoint is another
    /// generator.
    pub fn normalize(&self, p: &NCPolynomial) -> NCPolynomial {
        p.substitute(|l| {
            if l.star {
                self.star_letter(Letter::plain(l.gen))
            } else {
                NCPolynomial::letter(l)
            }
        })
    }

    /// The antilinear anti-automorphism `*`.
    pub fn involute(&self, p: &NCPolynomial) -> NCPolynomial {
        let mut out = NCPolynomial::zero();
        for (w, c) in p.terms() {
            let mut acc = NCPolynomial::constant(c.conj());
            for &l in w.letters.iter().rev() {
                acc = &acc * &self.star_letter(l);
            }
            out = &out + &acc;
        }
        out
    }

    /// Parse `"lhs"` or `"lhs = rhs"` into a polynomial over the generators.
    pub fn parse_polynomial(&self, src: &str) -> Result<NCPolynomial> {
        let p = match src.split_once('=') {
            Some((l, r)) => &self.parse_expr(l)? - &self.parse_expr(r)?,
            None => self.parse_expr(src)?,
        };
        Ok(self.normalize(&p))
    }

    fn parse_expr(&self, src: &str) -> Result<NCPolynomial> {
        Parser { spec: self, s: src.as_bytes(), src, pos: 0 }.expr()
    }

    pub fn word_from_names(&self, names: &[(&str, bool)]) -> GradedWord {
        GradedWord::new(names.iter().map(|&(n, star)| Letter { gen: self.gen(n), star }).collect())
    }

    /// Display a word using generator names.
    pub fn word_string(&self, w: &GradedWord) -> String {
        if w.is_empty() {
            return "1".into();
        }
        w.letters
            .iter()
            .map(|l| format!("{}{}", self.generators[l.gen].name, if l.star { "*" } else { "" }))
            .collect::<Vec<_>>()
            .join("")
    }

    pub fn poly_string(&self, p: &NCPolynomial) -> String {
        if p.is_zero() {
            return "0".into();
        }
        p.terms()
            .map(|(w, c)| format!("({c}){}", if w.is_empty() { String::new() } else { self.word_string(w) }))
            .collect::<Vec<_>>()
            .join(" + ")
    }

    // ---- built-in families -------------------------------------------------

    fn one_gen_z(name: &str) -> Vec<Generator> {
        vec![Generator { name: name.into(), degree: GroupElem::int(1), adjoint: Adjoint::Star }]
    }

    /// `aa* − a*a − 1 = 0`, ℤ-graded with `a` of degree 1.
    pub fn weyl() -> Self {
        let mut spec = GradedAlgebraSpec {
            group: GroupSpec::integers(),
            generators: Self::one_gen_z("a"),
            relations: vec![],
            family: Family::Weyl,
        };
        spec.relations = vec![spec.parse_polynomial("aa* - a*a - 1").unwrap()];
        spec
    }

    /// `aa*·den(a*a) = num(a*a)`.
    pub fn dynamical(f: RationalFunction) -> Self {
        let mut spec = GradedAlgebraSpec {
            group: GroupSpec::integers(),
            generators: Self::one_gen_z("a"),
            relations: vec![],
            family: Family::Dynamical(f.clone()),
        };
        spec.relations = vec![spec.dyn_relation(&f)];
        spec
    }

    fn dyn_relation(&self, f: &RationalFunction) -> NCPolynomial {
        let a = NCPolynomial::letter(Letter::plain(0));
        let astar = NCPolynomial::letter(Letter::starred(0));
        let n = &astar * &a;
        let eval = |p: &QPoly| {
            let mut acc = NCPolynomial::zero();
            let mut pw = NCPolynomial::one();
            for c in p.coeffs() {
                acc = &acc + &pw.scale(&Scalar::from_q(c.clone()));
                pw = &pw * &n;
            }
            acc
        };
        &(&(&a * &astar) * &eval(&f.den)) - &eval(&f.num)
    }

    /// `f(λ) = ((q+μ)λ + 1 − q − μ)/(μλ + 1 − μ)`, excluding `(μ,q) = (0,1)`.
    pub fn quantum_disk(mu: Q, q: Q) -> Result<Self> {
        if mu.is_zero() && q.is_one() {
            return Err(Error::Schema("quantum disk requires (mu, q) != (0, 1)".into()));
        }
        let one = Q::one();
        let num = QPoly::new(vec![&one - &q - &mu, &q + &mu]);
        let den = QPoly::new(vec![&one - &mu, mu.clone()]);
        let f = RationalFunction::new(num, den).map_err(Error::Schema)?;
        let mut spec = Self::dynamical(f.clone());
        spec.family = Family::QuantumDisk { mu, q, f };
        Ok(spec)
    }

    fn sl2(su11: bool) -> Self {
        let sign = Scalar::int(if su11 { -1 } else { 1 });
        let generators = vec![
            Generator { name: "E".into(), degree: GroupElem::int(1), adjoint: Adjoint::Gen { target: 1, sign: sign.clone() } },
            Generator { name: "F".into(), degree: GroupElem::int(-1), adjoint: Adjoint::Gen { target: 0, sign } },
            Generator { name: "H".into(), degree: GroupElem::int(0), adjoint: Adjoint::Gen { target: 2, sign: Scalar::one() } },
        ];
        let mut spec = GradedAlgebraSpec {
            group: GroupSpec::integers(),
            generators,
            relations: vec![],
            family: if su11 { Family::EnvSU11 } else { Family::EnvSU2 },
        };
        spec.relations = ["HE - EH - 2E", "HF - FH + 2F", "EF - FE - H"]
            .iter()
            .map(|r| spec.parse_polynomial(r).unwrap())
            .collect();
        spec
    }

    /// U(su(2)): `E* = F`, `H* = H`.
    pub fn su2() -> Self {
        Self::sl2(false)
    }

    /// U(su(1,1)): `E* = −F`, `H* = H`.
    pub fn su11() -> Self {
        Self::sl2(true)
    }

    /// Generator name of `L_k`.
    pub fn vir_name(k: i64) -> String {
        format!("L[{k}]")
    }

    /// Generators `L_k` for `|k| ≤ k_range` and `C`, with the bracket
    /// `[L_n, L_m] = (m−n) L_{n+m} + δ_{n,−m} (n³−n)/12 · C` for all pairs
    /// with `|n+m| ≤ k_range`.
    pub fn virasoro_density(k_range: i64) -> Self {
        let ks: Vec<i64> = (-k_range..=k_range).collect();
        let idx = |k: i64| (k + k_range) as usize;
        let mut generators: Vec<Generator> = ks
            .iter()
            .map(|&k| Generator {
                name: Self::vir_name(k),
                degree: GroupElem::int(k),
                adjoint: Adjoint::Gen { target: idx(-k), sign: Scalar::one() },
            })
            .collect();
        let c_id = generators.len();
        generators.push(Generator {
            name: "C".into(),
            degree: GroupElem::int(0),
            adjoint: Adjoint::Gen { target: c_id, sign: Scalar::one() },
        });
        let l = |k: i64| NCPolynomial::letter(Letter::plain(idx(k)));
        let mut relations = Vec::new();
        for &n in &ks {
            for &m in &ks {
                if n >= m || (n + m).abs() > k_range {
                    continue;
                }
                let mut r = &(&l(n) * &l(m)) - &(&l(m) * &l(n));
                r = &r - &l(n + m).scale(&Scalar::int(m - n));
                if n == -m {
                    let cc = Scalar::rat(n * n * n - n, 12);
                    r = &r - &NCPolynomial::letter(Letter::plain(c_id)).scale(&cc);
                }
                relations.push(r);
            }
        }
        GradedAlgebraSpec {
            group: GroupSpec::integers(),
            generators,
            relations,
            family: Family::VirasoroDensity { k_range },
        }
    }

    /// ℂ[G] with generators the group elements, `g* = g⁻¹`, graded by the
    /// homomorphism `grading: G → grading group` (element-indexed images).
    pub fn group_algebra(group: Arc<FiniteGroup>, grading_group: GroupSpec, grading: Vec<GroupElem>) -> Result<Self> {
        let n = group.order();
        if grading.len() != n {
            return Err(Error::Schema("grading map must list one image per element".into()));
        }
        for a in 0..n {
            for b in 0..n {
                if grading_group.mul(&grading[a], &grading[b]) != grading[group.mul(a, b)] {
                    return Err(Error::Schema("grading map is not a homomorphism".into()));
                }
            }
        }
        let generators: Vec<Generator> = (0..n)
            .map(|g| Generator {
                name: group.name(g).to_string(),
                degree: grading[g].clone(),
                adjoint: Adjoint::Gen { target: group.inv(g), sign: Scalar::one() },
            })
            .collect();
        let g = |i: usize| NCPolynomial::letter(Letter::plain(i));
        let mut relations = vec![&g(group.identity()) - &NCPolynomial::one()];
        for a in 0..n {
            for b in 0..n {
                relations.push(&(&g(a) * &g(b)) - &g(group.mul(a, b)));
            }
        }
        GradedAlgebraSpec::new(grading_group, generators, relations, Family::GroupAlgebra(group))
    }

    /// ℂ[G] graded by `G` itself (`A_g = ℂ·g`).
    pub fn group_algebra_self_graded(group: Arc<FiniteGroup>) -> Self {
        let grading = (0..group.order()).map(GroupElem::Finite).collect();
        Self::group_algebra(group.clone(), GroupSpec { kind: crate::group::GroupKind::Finite(group) }, grading)
            .expect("identity grading is a homomorphism")
    }

    /// ℂ[S₃] graded by `ℤ₂ = S₃/A₃` via the sign.
    pub fn s3_over_a3() -> (Self, Arc<FiniteGroup>) {
        let s3 = Arc::new(FiniteGroup::symmetric(3));
        let z2 = GroupSpec::finite(FiniteGroup::cyclic(2));
        let a3 = s3.closure(&[s3.find("(123)").unwrap()]);
        let grading = (0..s3.order())
            .map(|g| GroupElem::Finite(usize::from(a3.binary_search(&g).is_err())))
            .collect();
        (Self::group_algebra(s3.clone(), z2, grading).expect("sign is a homomorphism"), s3)
    }
}

struct Parser<'a> {
    spec: &'a GradedAlgebraSpec,
    s: &'a [u8],
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Schema(format!("{msg} at column {} in {:?}", self.pos + 1, self.src))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<NCPolynomial> {
        let mut acc = NCPolynomial::zero();
        self.skip_ws();
        let mut sign = 1;
        if let Some(c @ (b'+' | b'-')) = self.peek() {
            sign = if c == b'-' { -1 } else { 1 };
            self.pos += 1;
        }
        loop {
            let t = self.term()?;
            acc = &acc + &t.scale(&Scalar::int(sign));
            self.skip_ws();
            match self.peek() {
                None => break,
                Some(b'+') => sign = 1,
                Some(b'-') => sign = -1,
                Some(_) => return Err(self.err("expected '+' or '-'")),
            }
            self.pos += 1;
        }
        Ok(acc)
    }

    fn match_gen(&self) -> Option<(usize, usize)> {
        let rest = &self.src[self.pos..];
        self.spec
            .generators
            .iter()
            .enumerate()
            .filter(|(_, g)| rest.starts_with(g.name.as_str()))
            .max_by_key(|(_, g)| g.name.len())
            .map(|(i, g)| (i, g.name.len()))
    }

    fn number(&mut self) -> Result<Q> {
        let start = self.pos;
        while self.pos < self.s.len() && (self.s[self.pos].is_ascii_digit() || b"./".contains(&self.s[self.pos])) {
            self.pos += 1;
        }
        parse_q(&self.src[start..self.pos]).map_err(|e| self.err(&e))
    }

    fn term(&mut self) -> Result<NCPolynomial> {
        self.skip_ws();
        let mut coef = Scalar::one();
        let mut word = Vec::new();
        let mut any = false;
        loop {
            self.skip_ws();
            if self.match_gen().is_some() {
                let (g, len) = self.match_gen().unwrap();
                self.pos += len;
                let mut star = false;
                if self.peek() == Some(b'*') {
                    star = true;
                    self.pos += 1;
                }
                let mut rep = 1;
                if self.peek() == Some(b'^') {
                    self.pos += 1;
                    let start = self.pos;
                    while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                        self.pos += 1;
                    }
                    rep = self.src[start..self.pos].parse::<usize>().map_err(|_| self.err("bad exponent"))?;
                }
                for _ in 0..rep {
                    word.push(Letter { gen: g, star });
                }
                any = true;
                continue;
            }
            match self.peek() {
                Some(c) if c.is_ascii_digit() || c == b'.' => {
                    let v = self.number()?;
                    coef = &coef * &Scalar::from_q(v);
                    any = true;
                    if self.peek() == Some(b'*') {
                        self.pos += 1;
                    }
                }
                Some(b'(') => {
                    let close = self.src[self.pos..].find(')').ok_or_else(|| self.err("unclosed '('"))? + self.pos;
                    let inner = self.src[self.pos + 1..close].trim();
                    coef = &coef * &parse_gaussian(inner).map_err(|e| self.err(&e))?;
                    self.pos = close + 1;
                    any = true;
                    if self.peek() == Some(b'*') {
                        self.pos += 1;
                    }
                }
                _ => break,
            }
        }
        if !any {
            return Err(self.err("expected a term"));
        }
        Ok(NCPolynomial::term(coef, GradedWord::new(word)))
    }
}

/// `"a+bi"`, `"bi"`, `"i"` or a rational.
fn parse_gaussian(s: &str) -> std::result::Result<Scalar, String> {
    let s = s.replace(' ', "");
    if let Some(body) = s.strip_suffix('i') {
        let split = body.char_indices().skip(1).filter(|(_, c)| *c == '+' || *c == '-').map(|(i, _)| i).last();
        let (re, im) = match split {
            Some(i) => (&body[..i], &body[i..]),
            None => ("0", body),
        };
        let im = match im {
            "" | "+" => Q::one(),
            "-" => -Q::one(),
            x => parse_q(x)?,
        };
        return Ok(Scalar::from_qi(qi(parse_q(re)?, im)));
    }
    parse_q(&s).map(Scalar::from_q)
}

#[cfg(test)]
mod test {
    use super::*;

    #[test]
    fn degrees_of_words() {
        let w = GradedAlgebraSpec::weyl();
        let a = w.gen("a");
        let aas = GradedWord::new(vec![Letter::plain(a), Letter::starred(a)]);
        assert_eq!(w.degree_of(&aas).unwrap(), GroupElem::int(0));
        let w2 = GradedWord::new(vec![Letter::starred(a), Letter::starred(a), Letter::plain(a)]);
        assert_eq!(w2.len(), 3);
        assert_eq!(w.degree_of(&w2).unwrap(), GroupElem::int(-1));
        let s = GradedAlgebraSpec::su2();
        let efh = s.word_from_names(&[("E", false), ("F", false), ("H", false)]);
        assert_eq!(s.degree_of(&efh).unwrap(), GroupElem::int(0));
        assert!(w.degree_of(&GradedWord::new(vec![Letter::plain(7)])).is_err());
    }

    #[test]
    fn homogeneity_report() {
        let w = GradedAlgebraSpec::weyl();
        assert!(w.check_homogeneity().is_empty());
        let bad = w.parse_polynomial("a - a*a").unwrap();
        let mut spec = w.clone();
        spec.relations.push(bad);
        let rep = spec.check_homogeneity();
        assert_eq!(rep.len(), 1);
        assert_eq!(rep[0].degrees, vec![GroupElem::int(0), GroupElem::int(1)]);
        let s = GradedAlgebraSpec::su2();
        assert!(s.check_homogeneity().is_empty());
        assert_eq!(s.homogeneous_degree(&s.relations[0]), Some(GroupElem::int(1)));
        let e = GradedAlgebraSpec::new(spec.group.clone(), spec.generators.clone(), spec.relations.clone(), Family::Custom);
        assert!(matches!(e, Err(Error::Schema(_))));
    }

    #[test]
    fn involution_examples() {
        // free algebra on a, b
        let generators = vec![
            Generator { name: "a".into(), degree: GroupElem::int(1), adjoint: Adjoint::Star },
            Generator { name: "b".into(), degree: GroupElem::int(1), adjoint: Adjoint::Star },
        ];
        let free = GradedAlgebraSpec::new(GroupSpec::integers(), generators, vec![], Family::Custom).unwrap();
        let p = free.parse_polynomial("(2+i)ab").unwrap();
        assert_eq!(free.involute(&p), free.parse_polynomial("(2-i)b*a*").unwrap());
        let w = GradedAlgebraSpec::weyl();
        let n = w.parse_polynomial("a*a").unwrap();
        assert_eq!(w.involute(&n), n);
        let s = GradedAlgebraSpec::su2();
        let ih = s.parse_polynomial("(i)H").unwrap();
        assert_eq!(s.involute(&ih), s.parse_polynomial("(-i)H").unwrap());
        let s11 = GradedAlgebraSpec::su11();
        let e = s11.parse_polynomial("E").unwrap();
        assert_eq!(s11.involute(&e), s11.parse_polynomial("-F").unwrap());
        assert_eq!(s11.parse_polynomial("E*").unwrap(), s11.parse_polynomial("-F").unwrap());
    }

    #[test]
    fn parser_forms() {
        let w = GradedAlgebraSpec::weyl();
        let p = w.parse_polynomial("a^2 + 3a*a + a*").unwrap();
        assert_eq!(p.len(), 3);
        let q = w.parse_polynomial("aa* = a*a + 1").unwrap();
        assert_eq!(q, w.relations[0]);
        assert!(w.parse_polynomial("a + ?").is_err());
        assert!(w.parse_polynomial("1/0 a").is_err());
    }

    #[test]
    fn quantum_disk_expansion() {
        assert!(GradedAlgebraSpec::quantum_disk(Q::zero(), Q::one()).is_err());
        let qd = GradedAlgebraSpec::quantum_disk(crate::scalar::qr(1, 2), crate::scalar::qr(1, 3)).unwrap();
        let f = qd.family.dyn_function().unwrap();
        // f(1) = 1 for every (μ, q)
        assert_eq!(f.eval(&Q::one()).unwrap(), Q::one());
        assert!(qd.check_homogeneity().is_empty());
    }

    #[test]
    fn virasoro_relations_are_homogeneous() {
        let v = GradedAlgebraSpec::virasoro_density(3);
        assert!(v.check_homogeneity().is_empty());
        assert_eq!(v.involute(&v.parse_polynomial("L[2]").unwrap()), v.parse_polynomial("L[-2]").unwrap());
    }

    #[test]
    fn group_algebra_grading() {
        let (spec, s3) = GradedAlgebraSpec::s3_over_a3();
        assert!(spec.check_homogeneity().is_empty());
        let t = s3.find("(12)").unwrap();
        assert_eq!(spec.generators[t].degree, GroupElem::Finite(1));
        let _ = GradedAlgebraSpec::group_algebra_self_graded(s3);
    }
}
