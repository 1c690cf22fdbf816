//! Characters `χ_{st}` of `B = ℂ[C, H]` in `U(su(2))` and `U(su(1,1))`,
//! with `s = χ(C)`, `t = χ(H)` and `C = 4EF + H(H−2)`.
//!
//! Everything reduces to the factors `φ(n) = χ(EF) + n·t − n(n+1)`:
//! `χ(E^kF^k) = Π_{j<k} φ(j)` and `χ(F^kE^k) = Π_{j=1..k} φ(−j)`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::scalar::{q, Q};
use crate::word::GradedWord;
use crate::{Error, Result, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sl2Kind {
    Su2,
    Su11,
}

impl Sl2Kind {
    /// `E* = σF`.
    pub fn sigma(self) -> i64 {
        match self {
            Sl2Kind::Su2 => 1,
            Sl2Kind::Su11 => -1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Sl2Kind::Su2 => "su2",
            Sl2Kind::Su11 => "su11",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Sl2Character {
    pub s: Q,
    pub t: Q,
    pub algebra: Sl2Kind,
}

/// The su(1,1) parameter families.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Su11Series {
    /// `X₀₀`, the trivial character.
    Trivial,
    /// `X₁ₖ`, principal.
    Principal(i64),
    /// `X₂ₖ`, supplementary.
    Supplementary(i64),
    /// `X₃ₖ`, lowest-weight discrete.
    Lowest(i64),
    /// `X₄ₖ`, highest-weight discrete.
    Highest(i64),
}

impl fmt::Display for Su11Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Su11Series::Trivial => write!(f, "X00"),
            Su11Series::Principal(k) => write!(f, "X1,{k}"),
            Su11Series::Supplementary(k) => write!(f, "X2,{k}"),
            Su11Series::Lowest(k) => write!(f, "X3,{k}"),
            Su11Series::Highest(k) => write!(f, "X4,{k}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// su(2): the `n` with `s = (t+2n)(t+2n+2)`.
    Su2 { n: i64 },
    Su11(Su11Series),
}

/// Which family of inequalities failed: `χ(E^{*k}E^k) ≥ 0` or
/// `χ(F^{*k}F^k) ≥ 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    E,
    F,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership {
    Yes(Witness),
    No { k: u64, side: Side },
}

impl Membership {
    pub fn is_yes(&self) -> bool {
        matches!(self, Membership::Yes(_))
    }
}

fn floor_i64(x: &Q) -> i64 {
    let f = x.floor().to_integer();
    i64::try_from(f).unwrap_or(if x.is_negative() { i64::MIN / 4 } else { i64::MAX / 4 })
}

fn as_integer(x: &Q) -> Option<i64> {
    if x.is_integer() {
        i64::try_from(x.to_integer()).ok()
    } else {
        None
    }
}

/// Exact square root of a nonnegative rational, if it is a square.
fn rational_sqrt(x: &Q) -> Option<Q> {
    if x.is_negative() {
        return None;
    }
    let n: &BigInt = x.numer();
    let d: &BigInt = x.denom();
    let (rn, rd) = (n.sqrt(), d.sqrt());
    (&rn * &rn == *n && &rd * &rd == *d).then(|| Q::new(rn, rd))
}

impl Sl2Character {
    pub fn new(algebra: Sl2Kind, s: Q, t: Q) -> Self {
        Sl2Character { s, t, algebra }
    }

    pub fn su2(s: i64, t: i64) -> Self {
        Sl2Character::new(Sl2Kind::Su2, q(s), q(t))
    }

    pub fn su11(s: Q, t: Q) -> Self {
        Sl2Character::new(Sl2Kind::Su11, s, t)
    }

    /// `ψ_n = χ_{n(n+2), −n}`, the su(2) character inducing spin `n/2`.
    pub fn psi(n: i64) -> Self {
        Sl2Character::su2(n * (n + 2), -n)
    }

    /// `u = χ(EF) = (s − t(t−2))/4`.
    pub fn u(&self) -> Q {
        (&self.s - &self.t * (&self.t - q(2))) / q(4)
    }

    pub fn phi(&self, n: i64) -> Q {
        self.u() + q(n) * &self.t - q(n * (n + 1))
    }

    fn sigma(&self) -> Q {
        q(self.algebra.sigma())
    }

    /// `N_{n+1} / N_n` for the canonical sections `E^n`, `F^{|n|}`, where
    /// `N_n = χ(a_n* a_n)`. For `n < 0` this is the reciprocal of a factor
    /// and `None` if that factor vanishes.
    pub fn norm_ratio_up(&self, n: i64) -> Option<Q> {
        if n >= 0 {
            Some(self.sigma() * self.phi(-(n + 1)))
        } else {
            let f = self.sigma() * self.phi(-n - 1);
            (!f.is_zero()).then(|| Q::one() / f)
        }
    }

    /// `N_n` by the product formulas.
    pub fn norm(&self, n: i64) -> Q {
        let sg = self.sigma();
        if n >= 0 {
            (1..=n).map(|j| &sg * self.phi(-j)).fold(Q::one(), |a, b| a * b)
        } else {
            (0..-n).map(|j| &sg * self.phi(j)).fold(Q::one(), |a, b| a * b)
        }
    }

    /// Integer zeros of `φ`: `φ(n) = (s+1)/4 − (n − (t−1)/2)²`.
    fn phi_zeros(&self) -> Vec<i64> {
        let Some(r) = rational_sqrt(&(&self.s + Q::one())) else { return Vec::new() };
        let c = (&self.t - Q::one()) / q(2);
        let half = r / q(2);
        let mut z: Vec<i64> = [&c - &half, &c + &half].iter().filter_map(as_integer).collect();
        z.sort_unstable();
        z.dedup();
        z
    }

    /// Bounds of `G_χ = {n : N_n ≠ 0}` (inclusive; `None` = unbounded).
    pub fn domain(&self) -> (Option<i64>, Option<i64>) {
        let z = self.phi_zeros();
        // F side: N_{−k} contains φ(0)…φ(k−1); the first zero j ≥ 0 kills k > j.
        let lo = z.iter().filter(|&&j| j >= 0).min().map(|&j| -j);
        // E side: N_k contains φ(−1)…φ(−k); the first zero −j kills k ≥ j.
        let hi = z.iter().filter(|&&j| j <= -1).max().map(|&j| -j - 1);
        (lo, hi)
    }

    pub fn defined_at(&self, n: i64) -> bool {
        let (lo, hi) = self.domain();
        lo.is_none_or(|l| n >= l) && hi.is_none_or(|h| n <= h)
    }

    /// Past this distance from 0 every factor `φ` is negative.
    fn sign_bound(&self) -> i64 {
        let c = (&self.t - Q::one()) / q(2);
        let rho = ((&self.s + q(1)).abs() + q(1)) / q(4); // ≥ √((s+1)/4)
        floor_i64(&(c.abs() + rho)) + 3
    }

    /// Decide the positivity inequalities by tracking signs of the products
    /// outward from 0 until the factors' signs are settled.
    pub fn brute_force(&self) -> Option<(u64, Side)> {
        let sg = self.sigma();
        let bound = self.sign_bound().max(1) as u64 + 2;
        let mut first: Option<(u64, Side)> = None;
        for (side, fac) in [(Side::E, -1i64), (Side::F, 1)] {
            let mut sign = Ordering::Greater;
            for k in 1..=bound {
                // E side multiplies σφ(−k); F side σφ(k−1)
                let n = if fac < 0 { -(k as i64) } else { k as i64 - 1 };
                let f = &sg * self.phi(n);
                let fs = f.cmp(&Q::zero());
                if fs == Ordering::Equal {
                    break;
                }
                sign = if fs == sign { Ordering::Greater } else { Ordering::Less };
                if sign == Ordering::Less {
                    if first.is_none_or(|(k0, _)| k < k0) {
                        first = Some((k, side));
                    }
                    break;
                }
            }
        }
        first
    }

    /// su(1,1) family by the closed-form parameter sets.
    pub fn su11_series(&self) -> Option<Su11Series> {
        let (s, t) = (&self.s, &self.t);
        if s.is_zero() && t.is_zero() {
            return Some(Su11Series::Trivial);
        }
        let k = floor_i64(&(t / q(2)));
        let b = (t - q(2 * k)) * (t - q(2 * k + 2));
        if *s < b {
            return Some(Su11Series::Principal(k));
        }
        if *s == b && *t != q(2 * k) {
            return Some(Su11Series::Supplementary(k));
        }
        let r = rational_sqrt(&(s + Q::one()))?;
        if r < Q::one() {
            return None;
        }
        if let Some(k3) = as_integer(&((t - Q::one() - &r) / q(2))) {
            if k3 >= 0 {
                return Some(Su11Series::Lowest(k3));
            }
        }
        if let Some(k4) = as_integer(&((t - Q::one() + &r) / q(2))) {
            if k4 <= -1 {
                return Some(Su11Series::Highest(k4));
            }
        }
        None
    }

    /// su(2) witness by the closed form `s = (t+2n)(t+2n+2)`, `n ≥ 0`, `n+t ≥ 0`.
    pub fn su2_witness(&self) -> Option<i64> {
        let t = as_integer(&self.t)?;
        let r = rational_sqrt(&(&self.s + Q::one()))?;
        let r = as_integer(&r)?;
        [r - t - 1, -r - t - 1]
            .into_iter()
            .filter(|v| v % 2 == 0)
            .map(|v| v / 2)
            .find(|&n| n >= 0 && n + t >= 0)
    }
}

/// Membership of `χ_{st}` in the positive character set.
pub fn sl2_membership(c: &Sl2Character) -> Membership {
    if let Some((k, side)) = c.brute_force() {
        return Membership::No { k, side };
    }
    match c.algebra {
        Sl2Kind::Su2 => {
            let (_, hi) = c.domain();
            Membership::Yes(Witness::Su2 { n: hi.expect("positive su(2) characters have finite orbits") })
        }
        Sl2Kind::Su11 => {
            Membership::Yes(Witness::Su11(c.su11_series().expect("closed-form sets cover the positive characters")))
        }
    }
}

/// `χ^n = χ_{s, t+2n}`, defined iff `N_n ≠ 0`.
pub fn sl2_act(c: &Sl2Character, n: i64) -> Result<Option<Sl2Character>> {
    if !sl2_membership(c).is_yes() {
        return Err(Error::NotPositive(format!("χ(s={}, t={})", c.s, c.t)));
    }
    Ok(c.defined_at(n).then(|| Sl2Character { t: &c.t + q(2 * n), ..c.clone() }))
}

/// Generator indices in the built-in sl2 specs.
pub const E: usize = 0;
pub const F: usize = 1;
pub const H: usize = 2;

/// Action of a letter of the built-in sl2 spec on `h_p = [a_p ⊗ 1]`:
/// target position and coefficient.
pub fn letter_action(c: &Sl2Character, gen: usize, star: bool, p: i64) -> (i64, Q) {
    let sg = c.sigma();
    match (gen, star) {
        (H, _) => (p, &c.t + q(2 * p)),
        (E, false) | (F, true) => {
            let k = if p >= 0 { Q::one() } else { c.phi(-p - 1) };
            let k = if star { k * &sg } else { k };
            (p + 1, k)
        }
        _ => {
            let k = if p <= 0 { Q::one() } else { c.phi(-p) };
            let k = if star { k * &sg } else { k };
            (p - 1, k)
        }
    }
}

/// `χ(w)` for a zero-degree word as `⟨π(w)h_0, h_0⟩`.
pub fn sl2_eval_word(c: &Sl2Character, w: &GradedWord) -> Result<Scalar> {
    let (lo, hi) = c.domain();
    let mut p = 0i64;
    let mut acc = Q::one();
    for l in w.letters.iter().rev() {
        let (np, k) = letter_action(c, l.gen, l.star, p);
        p = np;
        acc *= k;
        if acc.is_zero() || lo.is_some_and(|v| p < v) || hi.is_some_and(|v| p > v) {
            return Ok(Scalar::zero());
        }
    }
    if p != 0 {
        return Err(Error::Invalid("word is not of degree zero".into()));
    }
    Ok(Scalar::from_q(acc))
}

#[cfg(test)]
mod test {
    use super::*;
    use crate::scalar::qr;

    #[test]
    fn su2_examples() {
        assert_eq!(sl2_membership(&Sl2Character::su2(8, 0)), Membership::Yes(Witness::Su2 { n: 1 }));
        assert!(!sl2_membership(&Sl2Character::su2(1, 0)).is_yes());
        let p1 = Sl2Character::psi(1);
        assert_eq!(sl2_act(&p1, 1).unwrap().unwrap().t, q(1));
        assert_eq!(sl2_act(&p1, 2).unwrap(), None);
    }

    #[test]
    fn psi_norms_are_factorial_ratios() {
        // ‖E^k⊗1‖² = k!·n!/(n−k)!
        for n in 0..6i64 {
            let c = Sl2Character::psi(n);
            let fact = |m: i64| (1..=m).product::<i64>();
            for k in 0..=n {
                assert_eq!(c.norm(k), q(fact(k) * fact(n) / fact(n - k)));
            }
            assert_eq!(c.domain(), (Some(0), Some(n)));
        }
    }

    #[test]
    fn su11_samples() {
        let cases = [
            (q(0), q(0), Su11Series::Trivial, (Some(0), Some(0))),
            (q(-1), q(0), Su11Series::Principal(0), (None, None)),
            (q(-1), q(1), Su11Series::Supplementary(0), (Some(0), None)),
            (q(8), q(4), Su11Series::Lowest(0), (Some(0), None)),
            (q(0), q(-2), Su11Series::Highest(-1), (None, Some(0))),
            (qr(-3, 4), qr(1, 2), Su11Series::Supplementary(0), (Some(0), None)),
        ];
        for (s, t, series, dom) in cases {
            let c = Sl2Character::su11(s, t);
            assert_eq!(sl2_membership(&c), Membership::Yes(Witness::Su11(series)), "{c:?}");
            assert_eq!(c.domain(), dom, "{c:?}");
        }
        let c = Sl2Character::su11(q(-1), q(0));
        assert_eq!(sl2_act(&c, -7).unwrap().unwrap().t, q(-14));
        assert!(!sl2_membership(&Sl2Character::su11(q(3), q(0))).is_yes());
    }

    #[test]
    fn word_walk_matches_product_formula() {
        let c = Sl2Character::su11(q(-5), qr(1, 3));
        let w = |s: &str| {
            GradedWord::new(
                s.chars()
                    .map(|ch| crate::word::Letter::plain(match ch {
                        'E' => E,
                        'F' => F,
                        _ => H,
                    }))
                    .collect(),
            )
        };
        assert_eq!(sl2_eval_word(&c, &w("EF")).unwrap(), Scalar::from_q(c.u()));
        assert_eq!(sl2_eval_word(&c, &w("EEFF")).unwrap(), Scalar::from_q(c.phi(0) * c.phi(1)));
        assert_eq!(sl2_eval_word(&c, &w("FFEE")).unwrap(), Scalar::from_q(c.phi(-1) * c.phi(-2)));
        assert_eq!(sl2_eval_word(&c, &w("H")).unwrap(), Scalar::from_q(c.t.clone()));
    }
}
