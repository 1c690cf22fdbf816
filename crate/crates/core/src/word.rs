//! Words in the generators and noncommutative polynomials.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use crate::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub gen: usize,
    pub star: bool,
}

impl Letter {
    pub fn plain(gen: usize) -> Self {
        Letter { gen, star: false }
    }

    pub fn starred(gen: usize) -> Self {
        Letter { gen, star: true }
    }
}

/// A product of letters, read left to right as operator composition.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct GradedWord {
    pub letters: Vec<Letter>,
}

impl GradedWord {
    pub fn empty() -> Self {
        GradedWord { letters: Vec::new() }
    }

    pub fn new(letters: Vec<Letter>) -> Self {
        GradedWord { letters }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, o: &GradedWord) -> GradedWord {
        let mut l = self.letters.clone();
        l.extend_from_slice(&o.letters);
        GradedWord { letters: l }
    }

    pub fn power(letter: Letter, n: usize) -> GradedWord {
        GradedWord { letters: vec![letter; n] }
    }
}

/// `Σ c_w · w` with no zero coefficients stored.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct NCPolynomial {
    terms: BTreeMap<GradedWord, Scalar>,
}

impl NCPolynomial {
    pub fn zero() -> Self {
        NCPolynomial { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        NCPolynomial::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        NCPolynomial::term(c, GradedWord::empty())
    }

    pub fn word(w: GradedWord) -> Self {
        NCPolynomial::term(Scalar::one(), w)
    }

    pub fn letter(l: Letter) -> Self {
        NCPolynomial::word(GradedWord::new(vec![l]))
    }

    pub fn term(c: Scalar, w: GradedWord) -> Self {
        let mut p = NCPolynomial::zero();
        p.add_term(w, c);
        p
    }

    pub fn add_term(&mut self, w: GradedWord, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(v) => {
                *v = &*v + &c;
                if v.is_zero() {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, c);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&GradedWord, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, w: &GradedWord) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn scale(&self, k: &Scalar) -> Self {
        let mut out = NCPolynomial::zero();
        for (w, c) in &self.terms {
            out.add_term(w.clone(), c * k);
        }
        out
    }

    /// Keep only the terms accepted by `keep`.
    pub fn filter(&self, mut keep: impl FnMut(&GradedWord) -> bool) -> Self {
        NCPolynomial {
            terms: self.terms.iter().filter(|(w, _)| keep(w)).map(|(w, c)| (w.clone(), c.clone())).collect(),
        }
    }

    /// Apply a letter substitution (each letter ↦ polynomial) multiplicatively.
    pub fn substitute(&self, mut f: impl FnMut(Letter) -> NCPolynomial) -> Self {
        let mut out = NCPolynomial::zero();
        for (w, c) in &self.terms {
            let mut acc = NCPolynomial::constant(c.clone());
            for &l in &w.letters {
                acc = &acc * &f(l);
            }
            out = &out + &acc;
        }
        out
    }

    pub fn max_word_len(&self) -> usize {
        self.terms.keys().map(GradedWord::len).max().unwrap_or(0)
    }
}

impl Add for &NCPolynomial {
    type Output = NCPolynomial;
    fn add(self, o: &NCPolynomial) -> NCPolynomial {
        let mut out = self.clone();
        for (w, c) in &o.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }
}

impl Sub for &NCPolynomial {
    type Output = NCPolynomial;
    fn sub(self, o: &NCPolynomial) -> NCPolynomial {
        let mut out = self.clone();
        for (w, c) in &o.terms {
            out.add_term(w.clone(), -c);
        }
        out
    }
}

impl Neg for &NCPolynomial {
    type Output = NCPolynomial;
    fn neg(self) -> NCPolynomial {
        self.scale(&Scalar::int(-1))
    }
}

impl Mul for &NCPolynomial {
    type Output = NCPolynomial;
    fn mul(self, o: &NCPolynomial) -> NCPolynomial {
        let mut out = NCPolynomial::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &o.terms {
                out.add_term(w1.concat(w2), c1 * c2);
            }
        }
        out
    }
}

impl Add for NCPolynomial {
    type Output = NCPolynomial;
    fn add(self, o: NCPolynomial) -> NCPolynomial {
        &self + &o
    }
}

impl Sub for NCPolynomial {
    type Output = NCPolynomial;
    fn sub(self, o: NCPolynomial) -> NCPolynomial {
        &self - &o
    }
}

impl Mul for NCPolynomial {
    type Output = NCPolynomial;
    fn mul(self, o: NCPolynomial) -> NCPolynomial {
        &self * &o
    }
}
