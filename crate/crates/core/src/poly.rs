//! Dense univariate polynomials and real-root isolation over ℚ.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::scalar::{Q, QI};

/// Coefficients in ascending order, trailing zeros trimmed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

pub type QPoly = Poly<Q>;
pub type QIPoly = Poly<QI>;

impl<T: Clone + Zero + One + PartialEq> Poly<T>
where
    for<'a> &'a T: std::ops::Add<&'a T, Output = T>
        + std::ops::Mul<&'a T, Output = T>
        + std::ops::Sub<&'a T, Output = T>,
{
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: T) -> Self {
        Poly::new(vec![c])
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Poly::new(vec![T::zero(), T::one()])
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: &T) -> T {
        let mut acc = T::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let z = T::zero();
        Poly::new((0..n).map(|i| {
            let a = self.coeffs.get(i).unwrap_or(&z);
            let b = o.coeffs.get(i).unwrap_or(&z);
            a + b
        }).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let z = T::zero();
        Poly::new((0..n).map(|i| {
            let a = self.coeffs.get(i).unwrap_or(&z);
            let b = o.coeffs.get(i).unwrap_or(&z);
            a - b
        }).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Poly::new(out)
    }

    pub fn scale(&self, k: &T) -> Self {
        Poly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// `p(x + s)`.
    pub fn shift(&self, s: &T) -> Self {
        let lin = Poly::new(vec![s.clone(), T::one()]);
        let mut acc = Poly::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(&lin).add(&Poly::constant(c.clone()));
        }
        acc
    }
}

impl QPoly {
    pub fn to_qi(&self) -> QIPoly {
        Poly::new(self.coeffs.iter().map(|c| QI::new(c.clone(), Q::zero())).collect())
    }

    pub fn derivative(&self) -> Self {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Q::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    fn lead(&self) -> &Q {
        self.coeffs.last().expect("nonzero polynomial")
    }

    /// Euclidean remainder.
    pub fn rem(&self, d: &Self) -> Self {
        let mut r = self.clone();
        let dd = d.degree().expect("division by zero polynomial");
        while let Some(rd) = r.degree() {
            if rd < dd {
                break;
            }
            let k = r.lead() / d.lead();
            let mut sub = vec![Q::zero(); rd - dd];
            sub.extend(d.coeffs.iter().map(|c| c * &k));
            r = r.sub(&Poly::new(sub));
        }
        r
    }

    pub fn div_exact(&self, d: &Self) -> Self {
        let mut r = self.clone();
        let dd = d.degree().expect("division by zero polynomial");
        let mut quo = vec![Q::zero(); self.coeffs.len().saturating_sub(dd)];
        while let Some(rd) = r.degree() {
            if rd < dd {
                break;
            }
            let k = r.lead() / d.lead();
            quo[rd - dd] = k.clone();
            let mut sub = vec![Q::zero(); rd - dd];
            sub.extend(d.coeffs.iter().map(|c| c * &k));
            r = r.sub(&Poly::new(sub));
        }
        Poly::new(quo)
    }

    pub fn gcd(a: &Self, b: &Self) -> Self {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            return a;
        }
        let l = a.lead().clone();
        a.scale(&(Q::one() / l))
    }

    fn sturm_chain(&self) -> Vec<QPoly> {
        let mut chain = vec![self.clone(), self.derivative()];
        while !chain.last().unwrap().is_zero() {
            let n = chain.len();
            let r = chain[n - 2].rem(&chain[n - 1]);
            chain.push(Poly::new(r.coeffs.iter().map(|c| -c.clone()).collect()));
        }
        chain.pop();
        chain
    }

    fn sign_changes(chain: &[QPoly], x: &Q) -> usize {
        let mut last = 0i8;
        let mut n = 0;
        for p in chain {
            let v = p.eval(x);
            let s = if v.is_positive() { 1 } else if v.is_negative() { -1 } else { 0 };
            if s != 0 {
                if last != 0 && s != last {
                    n += 1;
                }
                last = s;
            }
        }
        n
    }

    /// Real roots in `[lo, ∞)`, each as a tiny isolating interval
    /// `(a, b]` or an exact rational root. Width target is `width`.
    pub fn real_roots_from(&self, lo: &Q, width: &Q) -> Vec<RealRoot> {
        if self.is_zero() || self.degree() == Some(0) {
            return Vec::new();
        }
        let sq = self.div_exact(&QPoly::gcd(self, &self.derivative()));
        let mut out = Vec::new();
        if sq.eval(lo).is_zero() {
            out.push(RealRoot::Exact(lo.clone()));
        }
        if sq.degree() == Some(1) {
            let r = -&sq.coeffs[0] / &sq.coeffs[1];
            if r > *lo {
                out.push(RealRoot::Exact(r));
            }
            return out;
        }
        let bound = Q::one()
            + sq.coeffs[..sq.coeffs.len() - 1]
                .iter()
                .map(|c| (c / sq.lead()).abs())
                .fold(Q::zero(), |a, b| if b > a { b } else { a });
        let chain = sq.sturm_chain();
        let mut stack = vec![(lo.clone(), bound)];
        let mut found = Vec::new();
        while let Some((a, b)) = stack.pop() {
            let n = Self::sign_changes(&chain, &a) - Self::sign_changes(&chain, &b);
            if n == 0 {
                continue;
            }
            if sq.eval(&b).is_zero() {
                found.push(RealRoot::Exact(b.clone()));
                if n == 1 {
                    continue;
                }
            }
            if n == 1 && &b - &a <= *width {
                found.push(refine_to_rational(&sq, a, b));
                continue;
            }
            let mid = (&a + &b) / Q::from_integer(BigInt::from(2));
            stack.push((mid.clone(), b));
            stack.push((a, mid));
        }
        found.sort_by(|x, y| x.lower().cmp(y.lower()));
        found.dedup();
        out.extend(found);
        out
    }
}

/// A located real root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RealRoot {
    Exact(Q),
    /// Root lies in `(lo, hi]`; irrational or not detected as rational.
    Interval(Q, Q),
}

impl RealRoot {
    pub fn lower(&self) -> &Q {
        match self {
            RealRoot::Exact(x) => x,
            RealRoot::Interval(a, _) => a,
        }
    }

    pub fn midpoint_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        match self {
            RealRoot::Exact(x) => x.to_f64().unwrap_or(f64::NAN),
            RealRoot::Interval(a, b) => ((a + b) / Q::from_integer(BigInt::from(2))).to_f64().unwrap_or(f64::NAN),
        }
    }
}

/// The rational of least denominator in `(a, b)`, via continued fractions.
pub fn simplest_between(a: &Q, b: &Q) -> Q {
    if a >= b {
        return a.clone();
    }
    let fl = a.floor();
    if &fl + Q::one() < *b {
        return fl + Q::one();
    }
    if fl == *a {
        // simplest in (x, ∞) is ⌊x⌋ + 1
        let inv = Q::one() / (b - &fl);
        return fl + Q::one() / (inv.floor() + Q::one());
    }
    let lo = Q::one() / (b - &fl);
    let hi = Q::one() / (a - &fl);
    fl + Q::one() / simplest_between(&lo, &hi)
}

fn refine_to_rational(p: &QPoly, a: Q, b: Q) -> RealRoot {
    let s = simplest_between(&a, &b);
    if p.eval(&s).is_zero() {
        return RealRoot::Exact(s);
    }
    RealRoot::Interval(a, b)
}

/// `f = num/den` with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFunction {
    pub num: QPoly,
    pub den: QPoly,
}

impl RationalFunction {
    pub fn new(num: QPoly, den: QPoly) -> Result<Self, String> {
        if den.is_zero() {
            return Err("rational function with zero denominator".into());
        }
        Ok(RationalFunction { num, den })
    }

    pub fn polynomial(num: QPoly) -> Self {
        RationalFunction { num, den: QPoly::constant(Q::one()) }
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.degree() == Some(0)
    }

    /// Exact evaluation; `Err` at a pole.
    pub fn eval(&self, x: &Q) -> Result<Q, ()> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(());
        }
        Ok(self.num.eval(x) / d)
    }

    pub fn eval_f64(&self, x: f64) -> Result<f64, ()> {
        use num_traits::ToPrimitive;
        let ev = |p: &QPoly| p.coeffs().iter().rev().fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN));
        let d = ev(&self.den);
        if d == 0.0 {
            return Err(());
        }
        Ok(ev(&self.num) / d)
    }

    /// All `t ≥ 0` with `f(t) = y` and `den(t) ≠ 0`.
    pub fn preimages_nonneg(&self, y: &Q, width: &Q) -> Vec<RealRoot> {
        let eq = self.num.sub(&self.den.scale(y));
        if eq.is_zero() {
            // f is constantly y: every t works; report t = y as the canonical choice
            return vec![RealRoot::Exact(y.clone())];
        }
        eq.real_roots_from(&Q::zero(), width)
            .into_iter()
            .filter(|r| match r {
                RealRoot::Exact(t) => !self.den.eval(t).is_zero(),
                RealRoot::Interval(..) => true,
            })
            .collect()
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let cs = if c.is_integer() { c.numer().to_string() } else { format!("{}/{}", c.numer(), c.denom()) };
            parts.push(match i {
                0 => cs,
                1 => format!("{cs}*t"),
                _ => format!("{cs}*t^{i}"),
            });
        }
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            let c = &self.den.coeffs()[0];
            return write!(f, "{}", self.num.scale(&(Q::one() / c)));
        }
        write!(f, "({})/({})", self.num, self.den)
    }
}

/// Parses expressions in `t` with rational constants, `+ - * / ^` and
/// parentheses, e.g. `1-t`, `1/2*t + 1`, `(t+1)/(2t+3)`, `t^2`.
impl std::str::FromStr for RationalFunction {
    type Err = String;

    fn from_str(src: &str) -> Result<Self, String> {
        let mut p = RfParser { s: src.as_bytes(), pos: 0 };
        let (num, den) = p.expr()?;
        p.skip_ws();
        if p.pos != p.s.len() {
            return Err(format!("unexpected {:?} at offset {} in {src:?}", p.s[p.pos] as char, p.pos));
        }
        let g = QPoly::gcd(&num, &den);
        let (num, den) = if g.degree().unwrap_or(0) > 0 { (num.div_exact(&g), den.div_exact(&g)) } else { (num, den) };
        RationalFunction::new(num, den)
    }
}

type Frac = (QPoly, QPoly);

struct RfParser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl RfParser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Frac, String> {
        let mut acc = self.term()?;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let (n, d) = self.term()?;
            let n = if c == b'-' { n.scale(&-Q::one()) } else { n };
            acc = (acc.0.mul(&d).add(&n.mul(&acc.1)), acc.1.mul(&d));
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Frac, String> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    let (n, d) = self.power()?;
                    acc = (acc.0.mul(&n), acc.1.mul(&d));
                }
                Some(b'/') => {
                    self.pos += 1;
                    let (n, d) = self.power()?;
                    if n.is_zero() {
                        return Err("division by zero".into());
                    }
                    acc = (acc.0.mul(&d), acc.1.mul(&n));
                }
                // implicit product such as `2t` or `3(t+1)`
                Some(b't' | b'(') => {
                    let (n, d) = self.power()?;
                    acc = (acc.0.mul(&n), acc.1.mul(&d));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<Frac, String> {
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let e: u32 = std::str::from_utf8(&self.s[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| format!("expected an exponent at offset {start}"))?;
        let mut out = (QPoly::constant(Q::one()), QPoly::constant(Q::one()));
        for _ in 0..e {
            out = (out.0.mul(&base.0), out.1.mul(&base.1));
        }
        Ok(out)
    }

    fn atom(&mut self) -> Result<Frac, String> {
        let one = QPoly::constant(Q::one());
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                let (n, d) = self.power()?;
                Ok((n.scale(&-Q::one()), d))
            }
            Some(b'+') => {
                self.pos += 1;
                self.power()
            }
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(format!("missing ')' at offset {}", self.pos));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(b't') => {
                self.pos += 1;
                Ok((QPoly::x(), one))
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => {
                let start = self.pos;
                while self.pos < self.s.len() && (self.s[self.pos].is_ascii_digit() || self.s[self.pos] == b'.') {
                    self.pos += 1;
                }
                let lit = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
                let v = crate::scalar::parse_q(lit)?;
                Ok((QPoly::constant(v), one))
            }
            Some(c) => Err(format!("unexpected {:?} at offset {}", c as char, self.pos)),
            None => Err("unexpected end of expression".into()),
        }
    }
}

#[cfg(test)]
mod test {
    use super::*;
    use crate::scalar::{q, qr};

    fn qp(c: &[i64]) -> QPoly {
        Poly::new(c.iter().map(|&x| q(x)).collect())
    }

    #[test]
    fn parses_rational_functions() {
        let f: RationalFunction = "1/2*t + 1".parse().unwrap();
        assert_eq!(f.eval(&q(2)).unwrap(), q(2));
        let g: RationalFunction = "(t^2-1)/(2t+2)".parse().unwrap();
        assert_eq!(g.den.degree(), Some(0));
        assert_eq!(g.eval(&q(5)).unwrap(), q(2));
        let h: RationalFunction = "(t+1)/(2t+3)".parse().unwrap();
        assert_eq!(h.to_string().parse::<RationalFunction>().unwrap(), h);
        assert!("t +".parse::<RationalFunction>().is_err());
        assert!("1/(t-t)".parse::<RationalFunction>().is_err());
    }

    #[test]
    fn eval_and_shift() {
        let p = qp(&[1, 2, 3]);
        assert_eq!(p.eval(&q(2)), q(17));
        assert_eq!(p.shift(&q(1)).eval(&q(1)), q(17));
    }

    #[test]
    fn rational_roots_are_exact() {
        // (t - 1/2)(t - 3)(t + 1)
        let p = qp(&[-1, 2]).mul(&qp(&[-3, 1])).mul(&qp(&[1, 1]));
        let roots = p.real_roots_from(&q(0), &qr(1, 1 << 40));
        assert_eq!(roots, vec![RealRoot::Exact(qr(1, 2)), RealRoot::Exact(q(3))]);
    }

    #[test]
    fn irrational_root_is_bracketed() {
        let p = qp(&[-2, 0, 1]);
        let roots = p.real_roots_from(&q(0), &qr(1, 1 << 40));
        assert_eq!(roots.len(), 1);
        assert!((roots[0].midpoint_f64() - 2f64.sqrt()).abs() < 1e-11);
    }

    #[test]
    fn repeated_root_counted_once() {
        let p = qp(&[-1, 1]).mul(&qp(&[-1, 1])).mul(&qp(&[-5, 1]));
        let roots = p.real_roots_from(&q(0), &qr(1, 1 << 40));
        assert_eq!(roots, vec![RealRoot::Exact(q(1)), RealRoot::Exact(q(5))]);
    }

    #[test]
    fn simplest_rational() {
        assert_eq!(simplest_between(&qr(3, 10), &qr(4, 10)), qr(1, 3));
        assert_eq!(simplest_between(&qr(1, 10), &qr(3, 2)), q(1));
    }

    #[test]
    fn preimages_of_one_minus_t() {
        let f = RationalFunction::polynomial(qp(&[1, -1]));
        assert_eq!(f.preimages_nonneg(&qr(1, 4), &qr(1, 1 << 40)), vec![RealRoot::Exact(qr(3, 4))]);
        assert!(f.preimages_nonneg(&q(2), &qr(1, 1 << 40)).is_empty());
    }
}
