//! Exact and approximate scalars.
//!
//! Exact values live in the field generated over the Gaussian rationals by
//! square roots of positive integers, stored as `Σ c_j √n_j` with distinct
//! square-free-up-to-square-ratio radicands. That is enough to keep matrix
//! entries like `√(N_{k+1}/N_k)` exact, so products of entries stay exact.
//! Anything touching a float becomes [`Scalar::Approx`].

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_complex::{Complex, Complex64};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Q = BigRational;
pub type QI = Complex<BigRational>;

/// Beyond this many bits the trial-division helpers give up on full factoring.
const FACTOR_LIMIT: u64 = 1_000_000;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qr(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn qi(re: Q, im: Q) -> QI {
    Complex::new(re, im)
}

pub fn qi_real(re: Q) -> QI {
    Complex::new(re, Q::zero())
}

fn qi_is_real(c: &QI) -> bool {
    c.im.is_zero()
}

fn q_to_f64(x: &Q) -> f64 {
    x.to_f64().unwrap_or_else(|| {
        // Huge numerator/denominator: scale through bit lengths.
        let nb = x.numer().bits() as i64;
        let db = x.denom().bits() as i64;
        let shift = nb - db;
        let scaled = if shift > 0 {
            Q::new(x.numer().clone(), x.denom() << (shift as usize))
        } else {
            Q::new(x.numer() << ((-shift) as usize), x.denom().clone())
        };
        scaled.to_f64().unwrap_or(f64::NAN) * 2f64.powi(shift as i32)
    })
}

fn qi_to_c64(c: &QI) -> Complex64 {
    Complex64::new(q_to_f64(&c.re), q_to_f64(&c.im))
}

fn is_perfect_square(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &r * &r == *n {
        Some(r)
    } else {
        None
    }
}

/// Split a positive integer as `k² · m`, removing small square factors by
/// trial division and a final perfect-square test on the cofactor.
fn extract_square(n: &BigInt) -> (BigInt, BigInt) {
    debug_assert!(n.is_positive());
    let mut outside = BigInt::one();
    let mut rest = n.clone();
    if let Some(r) = is_perfect_square(&rest) {
        return (r, BigInt::one());
    }
    let mut p: u64 = 2;
    while p < 2000 {
        let bp = BigInt::from(p);
        let p2 = &bp * &bp;
        if p2 > rest {
            break;
        }
        while (&rest % &p2).is_zero() {
            rest /= &p2;
            outside *= &bp;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if let Some(r) = is_perfect_square(&rest) {
        outside *= r;
        rest = BigInt::one();
    }
    (outside, rest)
}

/// Full prime factorisation up to [`FACTOR_LIMIT`]; `None` if a cofactor
/// larger than the limit squared remains unfactored.
fn prime_factors(n: &BigInt) -> Option<Vec<BigInt>> {
    let mut rest = n.clone();
    let mut out = Vec::new();
    let mut p: u64 = 2;
    while p <= FACTOR_LIMIT {
        let bp = BigInt::from(p);
        if &bp * &bp > rest {
            break;
        }
        if (&rest % &bp).is_zero() {
            out.push(bp.clone());
            while (&rest % &bp).is_zero() {
                rest /= &bp;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest > BigInt::one() {
        let lim = BigInt::from(FACTOR_LIMIT);
        if rest > &lim * &lim {
            return None;
        }
        out.push(rest);
    }
    Some(out)
}

/// Element of `Q(i)(√2, √3, …)`: a finite sum `Σ c_j √n_j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Surd {
    /// Sorted by radicand; coefficients nonzero; no two radicands with a
    /// rational-square ratio.
    terms: Vec<(BigInt, QI)>,
}

impl Surd {
    pub fn zero() -> Self {
        Surd { terms: Vec::new() }
    }

    pub fn from_qi(c: QI) -> Self {
        if c.is_zero() {
            Surd::zero()
        } else {
            Surd { terms: vec![(BigInt::one(), c)] }
        }
    }

    pub fn from_q(x: Q) -> Self {
        Surd::from_qi(qi_real(x))
    }

    /// `c · √r` for a nonnegative rational `r`.
    pub fn sqrt_term(c: QI, r: &Q) -> Self {
        assert!(!r.is_negative(), "negative radicand");
        if r.is_zero() || c.is_zero() {
            return Surd::zero();
        }
        // √(p/q) = √(pq)/q
        let dn = r.denom().clone();
        let n = r.numer() * &dn;
        let (k, m) = extract_square(&n);
        let factor = Q::new(k, dn);
        Surd { terms: vec![(m, c * qi_real(factor))] }
    }

    pub fn sqrt_q(r: &Q) -> Self {
        Surd::sqrt_term(qi_real(Q::one()), r)
    }

    pub fn terms(&self) -> &[(BigInt, QI)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn as_qi(&self) -> Option<QI> {
        match self.terms.as_slice() {
            [] => Some(QI::zero()),
            [(n, c)] if n.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn as_q(&self) -> Option<Q> {
        self.as_qi().filter(qi_is_real).map(|c| c.re)
    }

    pub fn is_real(&self) -> bool {
        self.terms.iter().all(|(_, c)| qi_is_real(c))
    }

    pub fn to_c64(&self) -> Complex64 {
        self.terms.iter().fold(Complex64::zero(), |acc, (n, c)| {
            acc + qi_to_c64(c) * n.to_f64().unwrap_or(f64::INFINITY).sqrt()
        })
    }

    fn push(&mut self, n: BigInt, c: QI) {
        if c.is_zero() {
            return;
        }
        if let Ok(i) = self.terms.binary_search_by(|(m, _)| m.cmp(&n)) {
            let s = &mut self.terms[i].1;
            *s = s.clone() + c;
            if s.is_zero() {
                self.terms.remove(i);
            }
            return;
        }
        // Radicands whose product is a square describe the same irrational.
        for i in 0..self.terms.len() {
            let m = &self.terms[i].0;
            if let Some(r) = is_perfect_square(&(m * &n)) {
                // c√n = c·(r/m)·√m
                let f = qi_real(Q::new(r, m.clone()));
                let s = &mut self.terms[i].1;
                *s = s.clone() + c * f;
                if s.is_zero() {
                    self.terms.remove(i);
                }
                return;
            }
        }
        let pos = self.terms.partition_point(|(m, _)| *m < n);
        self.terms.insert(pos, (n, c));
    }

    pub fn conj(&self) -> Self {
        Surd { terms: self.terms.iter().map(|(n, c)| (n.clone(), c.conj())).collect() }
    }

    pub fn real_part(&self) -> Self {
        let mut s = Surd::zero();
        for (n, c) in &self.terms {
            s.push(n.clone(), qi_real(c.re.clone()));
        }
        s
    }

    pub fn imag_part(&self) -> Self {
        let mut s = Surd::zero();
        for (n, c) in &self.terms {
            s.push(n.clone(), qi_real(c.im.clone()));
        }
        s
    }

    pub fn scale(&self, k: &QI) -> Self {
        if k.is_zero() {
            return Surd::zero();
        }
        Surd { terms: self.terms.iter().map(|(n, c)| (n.clone(), c * k)).collect() }
    }

    /// Multiplicative inverse, rationalising one prime at a time.
    /// `None` for zero or when a radicand resists factoring.
    pub fn inverse(&self) -> Option<Self> {
        match self.terms.as_slice() {
            [] => None,
            [(n, c)] => {
                // 1/(c√n) = √n / (c n)
                let k = QI::one() / (c * qi_real(Q::from_integer(n.clone())));
                Some(Surd { terms: vec![(n.clone(), k)] })
            }
            _ => {
                let p = self.pick_prime()?;
                let (a, b) = self.split_prime(&p);
                let conj = &a - &b.times_sqrt_prime(&p);
                let den = &(&a * &a) - &(&(&b * &b) * &Surd::from_q(Q::from_integer(p)));
                Some(&den.inverse()? * &conj)
            }
        }
    }

    fn pick_prime(&self) -> Option<BigInt> {
        for (n, _) in &self.terms {
            if !n.is_one() {
                return prime_factors(n)?.into_iter().next();
            }
        }
        None
    }

    /// `self = a + b·√p` with neither `a` nor `b` involving `√p`.
    fn split_prime(&self, p: &BigInt) -> (Surd, Surd) {
        let mut a = Surd::zero();
        let mut b = Surd::zero();
        for (n, c) in &self.terms {
            if (n % p).is_zero() {
                b.push(n / p, c.clone());
            } else {
                a.push(n.clone(), c.clone());
            }
        }
        (a, b)
    }

    fn times_sqrt_prime(&self, p: &BigInt) -> Surd {
        let mut out = Surd::zero();
        for (n, c) in &self.terms {
            let prod = n * p;
            let (k, m) = extract_square(&prod);
            out.push(m, c * qi_real(Q::from_integer(k)));
        }
        out
    }

    /// Exact sign of a real surd; `None` if not real or factoring fails.
    pub fn real_sign(&self) -> Option<Ordering> {
        if !self.is_real() {
            return None;
        }
        match self.terms.as_slice() {
            [] => Some(Ordering::Equal),
            [(_, c)] => Some(c.re.cmp(&Q::zero())),
            _ => {
                let f = self.to_c64().re;
                let scale: f64 = self.terms.iter().map(|(n, c)| {
                    q_to_f64(&c.re).abs() * n.to_f64().unwrap_or(f64::INFINITY).sqrt()
                }).sum();
                if f.abs() > 1e-9 * scale {
                    return Some(if f > 0.0 { Ordering::Greater } else { Ordering::Less });
                }
                let p = self.pick_prime()?;
                let (a, b) = self.split_prime(&p);
                let sa = a.real_sign()?;
                let sb = b.real_sign()?;
                if sb == Ordering::Equal {
                    return Some(sa);
                }
                if sa == Ordering::Equal || sa == sb {
                    return Some(sb);
                }
                // a and b√p of opposite sign: compare a² with p b².
                let diff = &(&a * &a) - &(&(&b * &b) * &Surd::from_q(Q::from_integer(p)));
                let sd = diff.real_sign()?;
                Some(if sd == Ordering::Equal {
                    Ordering::Equal
                } else if sd == Ordering::Greater {
                    sa
                } else {
                    sb
                })
            }
        }
    }
}

impl Add for &Surd {
    type Output = Surd;
    fn add(self, o: &Surd) -> Surd {
        let mut s = self.clone();
        for (n, c) in &o.terms {
            s.push(n.clone(), c.clone());
        }
        s
    }
}

impl Sub for &Surd {
    type Output = Surd;
    fn sub(self, o: &Surd) -> Surd {
        let mut s = self.clone();
        for (n, c) in &o.terms {
            s.push(n.clone(), -c.clone());
        }
        s
    }
}

impl Neg for &Surd {
    type Output = Surd;
    fn neg(self) -> Surd {
        Surd { terms: self.terms.iter().map(|(n, c)| (n.clone(), -c.clone())).collect() }
    }
}

impl Mul for &Surd {
    type Output = Surd;
    fn mul(self, o: &Surd) -> Surd {
        let mut s = Surd::zero();
        for (n1, c1) in &self.terms {
            for (n2, c2) in &o.terms {
                let g = n1.gcd(n2);
                let rest = (n1 / &g) * (n2 / &g);
                let (k, m) = extract_square(&rest);
                let coef = c1 * c2 * qi_real(Q::from_integer(g * k));
                s.push(m, coef);
            }
        }
        s
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(n, c)| {
                let cs = fmt_qi(c);
                if n.is_one() {
                    cs
                } else {
                    format!("{cs}*sqrt({n})")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

fn fmt_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

fn fmt_qi(c: &QI) -> String {
    if c.im.is_zero() {
        fmt_q(&c.re)
    } else if c.re.is_zero() {
        format!("({}i)", fmt_q(&c.im))
    } else {
        let sign = if c.im.is_negative() { "-" } else { "+" };
        format!("({}{}{}i)", fmt_q(&c.re), sign, fmt_q(&c.im.abs()))
    }
}

/// A scalar that remembers whether it is exact.
#[derive(Clone, Debug, PartialEq)]
pub enum Scalar {
    Exact(Surd),
    Approx(Complex64),
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Exact(Surd::zero())
    }

    pub fn one() -> Self {
        Scalar::int(1)
    }

    pub fn int(n: i64) -> Self {
        Scalar::Exact(Surd::from_q(q(n)))
    }

    pub fn rat(n: i64, d: i64) -> Self {
        Scalar::Exact(Surd::from_q(qr(n, d)))
    }

    pub fn from_q(x: Q) -> Self {
        Scalar::Exact(Surd::from_q(x))
    }

    pub fn from_qi(x: QI) -> Self {
        Scalar::Exact(Surd::from_qi(x))
    }

    pub fn approx(re: f64) -> Self {
        Scalar::Approx(Complex64::new(re, 0.0))
    }

    pub fn i() -> Self {
        Scalar::from_qi(qi(Q::zero(), Q::one()))
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Scalar::Exact(_))
    }

    pub fn as_surd(&self) -> Option<&Surd> {
        match self {
            Scalar::Exact(s) => Some(s),
            Scalar::Approx(_) => None,
        }
    }

    pub fn as_q(&self) -> Option<Q> {
        self.as_surd().and_then(Surd::as_q)
    }

    pub fn as_qi(&self) -> Option<QI> {
        self.as_surd().and_then(Surd::as_qi)
    }

    pub fn to_c64(&self) -> Complex64 {
        match self {
            Scalar::Exact(s) => s.to_c64(),
            Scalar::Approx(z) => *z,
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.to_c64().re
    }

    pub fn into_approx(self) -> Self {
        Scalar::Approx(self.to_c64())
    }

    /// Exact zero test; floats compare against `0.0` literally.
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Exact(s) => s.is_zero(),
            Scalar::Approx(z) => z.re == 0.0 && z.im == 0.0,
        }
    }

    pub fn is_zero_tol(&self, eps: f64) -> bool {
        match self {
            Scalar::Exact(s) => s.is_zero(),
            Scalar::Approx(z) => z.norm() <= eps,
        }
    }

    pub fn conj(&self) -> Self {
        match self {
            Scalar::Exact(s) => Scalar::Exact(s.conj()),
            Scalar::Approx(z) => Scalar::Approx(z.conj()),
        }
    }

    pub fn re(&self) -> Self {
        match self {
            Scalar::Exact(s) => Scalar::Exact(s.real_part()),
            Scalar::Approx(z) => Scalar::approx(z.re),
        }
    }

    pub fn im(&self) -> Self {
        match self {
            Scalar::Exact(s) => Scalar::Exact(s.imag_part()),
            Scalar::Approx(z) => Scalar::approx(z.im),
        }
    }

    /// `|x|²`, exact when `x` is.
    pub fn norm_sqr(&self) -> Self {
        self * &self.conj()
    }

    /// Magnitude as a float (used for residual norms).
    pub fn abs_f64(&self) -> f64 {
        self.to_c64().norm()
    }

    pub fn inverse(&self) -> Option<Self> {
        match self {
            Scalar::Exact(s) => s.inverse().map(Scalar::Exact).or_else(|| {
                if s.is_zero() {
                    None
                } else {
                    Some(Scalar::Approx(Complex64::new(1.0, 0.0) / s.to_c64()))
                }
            }),
            Scalar::Approx(z) => {
                if z.norm() == 0.0 {
                    None
                } else {
                    Some(Scalar::Approx(z.inv()))
                }
            }
        }
    }

    pub fn checked_div(&self, d: &Scalar) -> Option<Self> {
        Some(self * &d.inverse()?)
    }

    /// Square root of a nonnegative real value: exact for nonnegative
    /// rationals, approx otherwise. `None` for negative input.
    pub fn sqrt(&self) -> Option<Self> {
        match self {
            Scalar::Exact(s) => {
                if let Some(r) = s.as_q() {
                    if r.is_negative() {
                        return None;
                    }
                    return Some(Scalar::Exact(Surd::sqrt_q(&r)));
                }
                let z = s.to_c64();
                if s.real_sign() == Some(Ordering::Less) {
                    return None;
                }
                Some(Scalar::Approx(z.sqrt()))
            }
            Scalar::Approx(z) => {
                if z.re < 0.0 && z.re.abs() > 1e-300 && z.im.abs() <= 1e-15 * z.re.abs() {
                    return None;
                }
                Some(Scalar::Approx(z.sqrt()))
            }
        }
    }

    /// Sign of a real value. Exact values use exact comparison; floats
    /// within `eps` of zero count as zero.
    pub fn real_sign(&self, eps: f64) -> Option<Ordering> {
        match self {
            Scalar::Exact(s) => s.real_sign().or_else(|| {
                if !s.is_real() {
                    return None;
                }
                let v = s.to_c64().re;
                Some(if v.abs() <= eps { Ordering::Equal } else if v > 0.0 { Ordering::Greater } else { Ordering::Less })
            }),
            Scalar::Approx(z) => {
                if z.im.abs() > eps {
                    return None;
                }
                Some(if z.re.abs() <= eps {
                    Ordering::Equal
                } else if z.re > 0.0 {
                    Ordering::Greater
                } else {
                    Ordering::Less
                })
            }
        }
    }

    /// Exact equality for exact pairs, `|a-b| ≤ eps` otherwise.
    pub fn approx_eq(&self, o: &Scalar, eps: f64) -> bool {
        match (self, o) {
            (Scalar::Exact(a), Scalar::Exact(b)) => a == b,
            _ => (self.to_c64() - o.to_c64()).norm() <= eps * (1.0 + self.abs_f64().max(o.abs_f64())),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Scalar::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// `e^{2πik/n}`; exact whenever `n` divides 24.
    pub fn root_of_unity(n: u32, k: i64) -> Self {
        if n == 0 {
            return Scalar::one();
        }
        if 24 % n == 0 {
            let j = (k.rem_euclid(n as i64) * (24 / n as i64)) as usize;
            let re = cos15(j);
            let im = cos15((j + 18) % 24);
            return Scalar::Exact(&re + &im.scale(&qi(Q::zero(), Q::one())));
        }
        let th = 2.0 * std::f64::consts::PI * k as f64 / n as f64;
        Scalar::Approx(Complex64::new(th.cos(), th.sin()))
    }
}

/// `cos(15°·j)` exactly.
fn cos15(j: usize) -> Surd {
    let table = |i: usize| -> Surd {
        let h = |r: i64| Surd::sqrt_term(qi_real(qr(1, 4)), &q(r));
        match i {
            0 => Surd::from_q(q(1)),
            1 => &h(6) + &h(2),
            2 => Surd::sqrt_term(qi_real(qr(1, 2)), &q(3)),
            3 => Surd::sqrt_term(qi_real(qr(1, 2)), &q(2)),
            4 => Surd::from_q(qr(1, 2)),
            5 => &h(6) - &h(2),
            _ => Surd::zero(),
        }
    };
    let j = j % 24;
    match j {
        0..=6 => table(j),
        7..=12 => -&table(12 - j),
        13..=18 => -&table(j - 12),
        _ => table(24 - j),
    }
}


macro_rules! binop {
    ($tr:ident, $m:ident, $surd:expr, $float:expr) => {
        impl $tr for &Scalar {
            type Output = Scalar;
            fn $m(self, o: &Scalar) -> Scalar {
                match (self, o) {
                    (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact($surd(a, b)),
                    _ => Scalar::Approx($float(self.to_c64(), o.to_c64())),
                }
            }
        }
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                (&self).$m(&o)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: &Scalar) -> Scalar {
                (&self).$m(o)
            }
        }
    };
}

binop!(Add, add, |a: &Surd, b: &Surd| a + b, |x: Complex64, y: Complex64| x + y);
binop!(Sub, sub, |a: &Surd, b: &Surd| a - b, |x: Complex64, y: Complex64| x - y);
binop!(Mul, mul, |a: &Surd, b: &Surd| a * b, |x: Complex64, y: Complex64| x * y);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Exact(s) => Scalar::Exact(-s),
            Scalar::Approx(z) => Scalar::Approx(-z),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |a, b| a + b)
    }
}

impl Zero for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
}

impl One for Scalar {
    fn one() -> Self {
        Scalar::one()
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::int(n)
    }
}

impl From<Q> for Scalar {
    fn from(x: Q) -> Self {
        Scalar::from_q(x)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(s) => write!(f, "{s}"),
            Scalar::Approx(z) if z.im == 0.0 => write!(f, "{:?}", z.re),
            Scalar::Approx(z) => write!(f, "{:?}{:+?}i", z.re, z.im),
        }
    }
}

/// Parse `"p"`, `"p/q"`, or a terminating decimal such as `"0.25"`.
pub fn parse_q(s: &str) -> Result<Q, String> {
    let t = s.trim();
    if t.is_empty() {
        return Err("empty rational".into());
    }
    if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| format!("bad numerator in {t:?}"))?;
        let d: BigInt = d.trim().parse().map_err(|_| format!("bad denominator in {t:?}"))?;
        if d.is_zero() {
            return Err(format!("zero denominator in {t:?}"));
        }
        return Ok(Q::new(n, d));
    }
    let (mant, exp) = match t.find(['e', 'E']) {
        Some(i) => (&t[..i], t[i + 1..].parse::<i32>().map_err(|_| format!("bad exponent in {t:?}"))?),
        None => (t, 0),
    };
    let (neg, body) = match mant.strip_prefix('-') {
        Some(b) => (true, b),
        None => (false, mant.strip_prefix('+').unwrap_or(mant)),
    };
    let (ip, fp) = body.split_once('.').unwrap_or((body, ""));
    if ip.is_empty() && fp.is_empty() {
        return Err(format!("malformed rational {t:?}"));
    }
    if !ip.chars().chain(fp.chars()).all(|c| c.is_ascii_digit()) {
        return Err(format!("malformed rational {t:?}"));
    }
    let digits: BigInt = format!("{ip}{fp}").parse().unwrap_or_default();
    let scale = exp - fp.len() as i32;
    let ten = BigInt::from(10);
    let mut v = if scale >= 0 {
        Q::from_integer(digits * num_traits::pow(ten, scale as usize))
    } else {
        Q::new(digits, num_traits::pow(ten, (-scale) as usize))
    };
    if neg {
        v = -v;
    }
    Ok(v)
}

/// Parse the exact string form produced by `Display` for real surds:
/// terms `c` or `c*sqrt(n)` joined by `+`.
pub fn parse_surd(s: &str) -> Result<Surd, String> {
    let mut out = Surd::zero();
    for part in s.split(" + ") {
        let part = part.trim();
        if let Some((c, rest)) = part.split_once("*sqrt(") {
            let n = rest.strip_suffix(')').ok_or_else(|| format!("malformed surd {s:?}"))?;
            let n: BigInt = n.parse().map_err(|_| format!("bad radicand in {s:?}"))?;
            if !n.is_positive() {
                return Err(format!("nonpositive radicand in {s:?}"));
            }
            let c = parse_qi(c)?;
            out = &out + &Surd::sqrt_term(c, &Q::from_integer(n));
        } else {
            out = &out + &Surd::from_qi(parse_qi(part)?);
        }
    }
    Ok(out)
}

fn parse_qi(s: &str) -> Result<QI, String> {
    let t = s.trim();
    if let Some(inner) = t.strip_prefix('(').and_then(|x| x.strip_suffix(')')) {
        let body = inner.strip_suffix('i').ok_or_else(|| format!("malformed complex {t:?}"))?;
        // split at the last sign that is not leading
        let idx = body
            .char_indices()
            .skip(1)
            .filter(|(_, c)| *c == '+' || *c == '-')
            .map(|(i, _)| i)
            .last();
        return match idx {
            Some(i) => Ok(qi(parse_q(&body[..i])?, parse_q(&body[i..])?)),
            None => Ok(qi(Q::zero(), parse_q(body)?)),
        };
    }
    Ok(qi_real(parse_q(t)?))
}

/// Exact string for a real exact scalar; `None` for complex or approx.
pub fn exact_real_string(x: &Scalar) -> Option<String> {
    match x {
        Scalar::Exact(s) if s.is_real() => Some(s.to_string()),
        _ => None,
    }
}

#[allow(dead_code)]
pub(crate) fn sign_of(b: &BigInt) -> Sign {
    b.sign()
}

#[cfg(test)]
mod test {
    use super::*;

    #[test]
    fn sqrt_normalises_radicand() {
        let a = Surd::sqrt_q(&qr(3, 4));
        assert_eq!(a.to_string(), "1/2*sqrt(3)");
        let b = Surd::sqrt_q(&q(12));
        assert_eq!(b.to_string(), "2*sqrt(3)");
        assert_eq!(Surd::sqrt_q(&q(16)).as_q(), Some(q(4)));
    }

    #[test]
    fn surd_field_ops() {
        let s2 = Surd::sqrt_q(&q(2));
        let s3 = Surd::sqrt_q(&q(3));
        let s6 = Surd::sqrt_q(&q(6));
        assert_eq!(&s2 * &s3, s6);
        assert_eq!((&s2 * &s2).as_q(), Some(q(2)));
        let x = &s2 + &s3;
        let inv = x.inverse().unwrap();
        assert_eq!((&x * &inv).as_q(), Some(q(1)));
        assert!((&x - &x).is_zero());
    }

    #[test]
    fn exact_sign_of_near_cancellation() {
        // 99 - 70√2 ≈ 0.00505 > 0
        let x = &Surd::from_q(q(99)) - &Surd::sqrt_term(qi_real(q(70)), &q(2));
        assert_eq!(x.real_sign(), Some(Ordering::Greater));
        let y = -&x;
        assert_eq!(y.real_sign(), Some(Ordering::Less));
    }

    #[test]
    fn unit_root_modulus_is_exactly_one() {
        let z = Surd::sqrt_term(qi(qr(1, 2), qr(1, 2)), &q(2));
        assert_eq!((&z * &z.conj()).as_q(), Some(q(1)));
        for n in [1, 2, 3, 4, 6, 8, 12, 24] {
            for k in 0..n as i64 {
                let w = Scalar::root_of_unity(n, k);
                assert!(w.is_exact());
                assert_eq!(w.pow(n), Scalar::one(), "n={n} k={k}");
                let th = 2.0 * std::f64::consts::PI * k as f64 / n as f64;
                assert!((w.to_c64() - Complex64::new(th.cos(), th.sin())).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn approx_is_contagious() {
        let e = Scalar::rat(1, 2);
        let a = Scalar::approx(0.5);
        assert!((&e * &e).is_exact());
        assert!(!(&e * &a).is_exact());
    }

    #[test]
    fn parse_round_trip() {
        for s in ["3/4", "-7", "1/2*sqrt(3)", "1 + 2*sqrt(5)", "(1/2+1/3i)*sqrt(2)"] {
            let v = parse_surd(s).unwrap();
            assert_eq!(parse_surd(&v.to_string()).unwrap(), v, "{s}");
        }
        assert_eq!(parse_q("0.25").unwrap(), qr(1, 4));
        assert_eq!(parse_q("-1.5e1").unwrap(), q(-15));
        assert!(parse_q("1/0").is_err());
        assert!(parse_q("x").is_err());
    }
}
