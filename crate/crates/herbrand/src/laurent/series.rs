//! Window-tracked Laurent series arithmetic over F_p.

use std::fmt;

use serde::Serialize;

use crate::ramification::is_prime;
use crate::{Error, Result};

/// Sentinel window end for series that are known exactly (Laurent
/// polynomials built from explicit terms). Kept far from `i64::MAX` so
/// window arithmetic can add offsets without overflow.
pub(crate) const END_EXACT: i64 = i64::MAX / 4;

fn end_add(a: i64, b: i64) -> i64 {
    if a >= END_EXACT || b >= END_EXACT {
        END_EXACT
    } else {
        a + b
    }
}

/// A measured valuation: exact, or only bounded below because every known
/// coefficient vanished.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Valuation {
    Exact(i64),
    /// All coefficients up to (excluding) the bound are zero.
    AtLeast(i64),
}

impl Valuation {
    /// The guaranteed lower bound in either case.
    pub fn lower_bound(&self) -> i64 {
        match *self {
            Valuation::Exact(v) | Valuation::AtLeast(v) => v,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Valuation::Exact(_))
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Valuation::Exact(v) => write!(f, "{v}"),
            Valuation::AtLeast(v) if v >= END_EXACT => write!(f, "infinity"),
            Valuation::AtLeast(v) => write!(f, ">={v}"),
        }
    }
}

impl Serialize for Valuation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// An element of F_p((t)) known on the window `(-inf, end)`: zero below
/// `v`, the stored coefficients on `v..v+coeffs.len()`, zero from there to
/// `end`, unknown beyond. The leading stored coefficient is nonzero (a
/// series with no significant coefficients stores none and is
/// "zero to precision").
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedLaurentSeries {
    p: u64,
    v: i64,
    coeffs: Vec<u64>,
    end: i64,
}

impl TruncatedLaurentSeries {
    fn normalized(p: u64, mut v: i64, mut coeffs: Vec<u64>, end: i64) -> Self {
        if v + coeffs.len() as i64 > end {
            coeffs.truncate((end - v).max(0) as usize);
        }
        while coeffs.first() == Some(&0) {
            coeffs.remove(0);
            v += 1;
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            v = end;
        }
        TruncatedLaurentSeries { p, v, coeffs, end }
    }

    fn check_p(p: u64) -> Result<()> {
        if !is_prime(p) {
            return Err(Error::InvalidParameter(format!("{p} is not prime")));
        }
        Ok(())
    }

    /// The zero series, known to be zero below `end`.
    pub fn zero_to(p: u64, end: i64) -> Result<Self> {
        Self::check_p(p)?;
        Ok(TruncatedLaurentSeries { p, v: end, coeffs: Vec::new(), end })
    }

    /// An exactly known Laurent polynomial from `(exponent, coefficient)`
    /// terms.
    pub fn from_terms(p: u64, terms: &[(i64, u64)]) -> Result<Self> {
        Self::check_p(p)?;
        if terms.is_empty() {
            return Ok(TruncatedLaurentSeries {
                p,
                v: END_EXACT,
                coeffs: Vec::new(),
                end: END_EXACT,
            });
        }
        let lo = terms.iter().map(|&(e, _)| e).min().unwrap();
        let hi = terms.iter().map(|&(e, _)| e).max().unwrap();
        let mut coeffs = vec![0u64; (hi - lo + 1) as usize];
        for &(e, c) in terms {
            let slot = &mut coeffs[(e - lo) as usize];
            *slot = (*slot + c) % p;
        }
        Ok(Self::normalized(p, lo, coeffs, END_EXACT))
    }

    pub fn one(p: u64) -> Result<Self> {
        Self::from_terms(p, &[(0, 1)])
    }

    /// The monomial `c t^k`, exactly known.
    pub fn monomial(p: u64, c: u64, k: i64) -> Result<Self> {
        Self::from_terms(p, &[(k, c % p)])
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// First exponent beyond the guaranteed window.
    pub fn precision_end(&self) -> i64 {
        self.end
    }

    pub fn is_zero_to_precision(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// The coefficient of `t^k`, or `None` when `k` is beyond the window.
    pub fn coeff_at(&self, k: i64) -> Option<u64> {
        if k >= self.end {
            return None;
        }
        let idx = k - self.v;
        if idx < 0 || idx >= self.coeffs.len() as i64 {
            Some(0)
        } else {
            Some(self.coeffs[idx as usize])
        }
    }

    pub fn valuation(&self) -> Valuation {
        if self.coeffs.is_empty() {
            Valuation::AtLeast(self.end)
        } else {
            Valuation::Exact(self.v)
        }
    }

    /// Restricts the guaranteed window to end at `new_end` at most.
    pub fn truncated(&self, new_end: i64) -> Self {
        if new_end >= self.end {
            return self.clone();
        }
        Self::normalized(self.p, self.v, self.coeffs.clone(), new_end)
    }

    fn assert_same_p(&self, other: &Self) {
        assert_eq!(self.p, other.p, "mixed characteristics {} and {}", self.p, other.p);
    }

    pub fn add(&self, other: &Self) -> Self {
        self.assert_same_p(other);
        let end = self.end.min(other.end);
        if end <= self.v.min(other.v) {
            return TruncatedLaurentSeries { p: self.p, v: end, coeffs: Vec::new(), end };
        }
        let lo = self.v.min(other.v);
        // Beyond both stored windows every known coefficient is zero, so
        // only the union of the stored spans needs slots (end itself can be
        // the exactness sentinel; an empty operand stores no span at all).
        let span_top = |s: &Self| {
            if s.coeffs.is_empty() {
                i64::MIN / 4
            } else {
                s.v + s.coeffs.len() as i64
            }
        };
        let hi = end.min(span_top(self).max(span_top(other)));
        let mut coeffs = vec![0u64; (hi - lo).max(0) as usize];
        for (slot, k) in coeffs.iter_mut().zip(lo..hi) {
            let a = self.coeff_at(k).unwrap_or(0);
            let b = other.coeff_at(k).unwrap_or(0);
            *slot = (a + b) % self.p;
        }
        Self::normalized(self.p, lo, coeffs, end)
    }

    pub fn neg(&self) -> Self {
        let coeffs = self.coeffs.iter().map(|&c| (self.p - c) % self.p).collect();
        TruncatedLaurentSeries { p: self.p, v: self.v, coeffs, end: self.end }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: u64) -> Self {
        let c = c % self.p;
        let coeffs = self.coeffs.iter().map(|&a| (a * c) % self.p).collect();
        Self::normalized(self.p, self.v, coeffs, self.end)
    }

    /// Product. The window ends where the first unknown cross-term could
    /// land: `min(v1 + end2, v2 + end1)` (with a zero-to-precision factor
    /// contributing its window end as its valuation bound).
    pub fn mul(&self, other: &Self) -> Self {
        self.assert_same_p(other);
        let end = end_add(self.v, other.end).min(end_add(other.v, self.end));
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return TruncatedLaurentSeries { p: self.p, v: end, coeffs: Vec::new(), end };
        }
        let lo = self.v + other.v;
        let len = ((end - lo).max(0) as usize).min(self.coeffs.len() + other.coeffs.len() - 1);
        let mut coeffs = vec![0u64; len];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                if i + j >= len {
                    break;
                }
                coeffs[i + j] = (coeffs[i + j] + a * b) % self.p;
            }
        }
        Self::normalized(self.p, lo, coeffs, end)
    }

    /// Small nonnegative power by repeated multiplication.
    pub fn pow(&self, k: u32) -> Self {
        let mut acc = TruncatedLaurentSeries {
            p: self.p,
            v: 0,
            coeffs: vec![1],
            end: END_EXACT,
        };
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiplicative inverse. Exactly known inputs get
    /// [`crate::laurent::DEFAULT_PRECISION`] relative coefficients (a pure
    /// monomial inverts exactly).
    pub fn invert(&self) -> Result<Self> {
        if self.coeffs.is_empty() {
            return Err(Error::PrecisionExhausted(
                "cannot invert a series with no significant coefficients".into(),
            ));
        }
        let p = self.p;
        let c0_inv = mod_inverse(self.coeffs[0], p);
        if self.coeffs.len() == 1 {
            let end = if self.end >= END_EXACT { END_EXACT } else { self.end - 2 * self.v };
            return Ok(Self::normalized(p, -self.v, vec![c0_inv], end));
        }
        let rel = if self.end >= END_EXACT {
            crate::laurent::DEFAULT_PRECISION
        } else {
            (self.end - self.v) as usize
        };
        // Long division of 1 by the unit part: q_k = -c0^-1 sum_{j>=1} a_j q_{k-j}.
        let mut q = vec![0u64; rel];
        q[0] = c0_inv;
        for k in 1..rel {
            let mut acc = 0u64;
            for j in 1..=k.min(self.coeffs.len() - 1) {
                acc = (acc + self.coeffs[j] * q[k - j]) % p;
            }
            q[k] = (p - acc) % p * c0_inv % p;
        }
        let end = if self.end >= END_EXACT {
            -self.v + rel as i64
        } else {
            self.end - 2 * self.v
        };
        Ok(Self::normalized(p, -self.v, q, end))
    }

    /// Substitution `x(s)` for `s` of positive valuation, via
    /// Paterson-Stockmeyer on the regular part (about `2 sqrt(T)` series
    /// products for `T` known terms instead of `T`).
    pub fn substitute(&self, s: &Self) -> Result<Self> {
        self.assert_same_p(s);
        let p = self.p;
        let w = match s.valuation() {
            Valuation::Exact(w) if w >= 1 => w,
            _ => {
                return Err(Error::Domain(
                    "substitution needs a substituend of positive exact valuation".into(),
                ))
            }
        };
        if self.coeffs.is_empty() {
            let end = if self.v >= END_EXACT { END_EXACT } else { self.v.saturating_mul(w).min(END_EXACT) };
            return TruncatedLaurentSeries::zero_to(p, end.min(END_EXACT));
        }

        // x = t^v u(t): evaluate the polynomial u at s, then shift by s^v.
        let t_count = self.coeffs.len();
        let block = (t_count as f64).sqrt().ceil() as usize;
        let mut s_pows = Vec::with_capacity(block + 1);
        s_pows.push(TruncatedLaurentSeries::one(p)?);
        for i in 1..=block {
            let nxt = s_pows[i - 1].mul(s);
            s_pows.push(nxt);
        }
        let blocks = t_count.div_ceil(block);
        let mut acc = TruncatedLaurentSeries::zero_to(p, END_EXACT)?;
        for bi in (0..blocks).rev() {
            acc = acc.mul(&s_pows[block]);
            let mut part = TruncatedLaurentSeries::zero_to(p, END_EXACT)?;
            let lo = bi * block;
            let chunk = &self.coeffs[lo..t_count.min(lo + block)];
            for (pow, &c) in s_pows.iter().zip(chunk) {
                if c != 0 {
                    part = part.add(&pow.scale(c));
                }
            }
            acc = acc.add(&part);
        }

        let shift = if self.v >= 0 {
            s.pow(self.v as u32)
        } else {
            s.invert()?.pow((-self.v) as u32)
        };
        let mut result = acc.mul(&shift);

        // Terms of x beyond its window would land at exponent >= end * w.
        if self.end < END_EXACT {
            result = result.truncated(self.end.saturating_mul(w).min(END_EXACT));
        }
        Ok(result)
    }

    /// Whether the two series agree on the intersection of their windows.
    pub fn eq_to_precision(&self, other: &Self) -> bool {
        self.sub(other).is_zero_to_precision()
    }
}

/// Inverse mod a prime via Fermat.
pub(crate) fn mod_inverse(a: u64, p: u64) -> u64 {
    assert!(!a.is_multiple_of(p), "zero has no inverse");
    mod_pow(a % p, p - 2, p)
}

pub(crate) fn mod_pow(mut base: u64, mut exp: u64, modulus: u64) -> u64 {
    let mut acc = 1u64 % modulus;
    base %= modulus;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % modulus;
        }
        base = base * base % modulus;
        exp >>= 1;
    }
    acc
}

impl fmt::Display for TruncatedLaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            if self.end >= END_EXACT {
                return write!(f, "0");
            }
            return write!(f, "O(t^{})", self.end);
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let e = self.v + i as i64;
            match (c, e) {
                (c, 0) => write!(f, "{c}")?,
                (1, 1) => write!(f, "t")?,
                (1, e) => write!(f, "t^{e}")?,
                (c, 1) => write!(f, "{c}*t")?,
                (c, e) => write!(f, "{c}*t^{e}")?,
            }
        }
        if self.end < END_EXACT {
            write!(f, " + O(t^{})", self.end)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(p: u64, terms: &[(i64, u64)]) -> TruncatedLaurentSeries {
        TruncatedLaurentSeries::from_terms(p, terms).unwrap()
    }

    #[test]
    fn char_two_square_of_one_plus_t() {
        let x = poly(2, &[(0, 1), (1, 1)]);
        let sq = x.mul(&x);
        assert_eq!(sq, poly(2, &[(0, 1), (2, 1)]));
    }

    #[test]
    fn geometric_inverse_in_char_two() {
        let x = poly(2, &[(0, 1), (1, 1)]);
        let inv = x.invert().unwrap();
        // 1 + t + t^2 + ... to the default relative precision.
        for k in 0..crate::laurent::DEFAULT_PRECISION as i64 {
            assert_eq!(inv.coeff_at(k), Some(1));
        }
        // Multiplying back gives 1 to precision.
        let prod = x.mul(&inv);
        assert!(prod.sub(&TruncatedLaurentSeries::one(2).unwrap()).is_zero_to_precision());
        assert_eq!(prod.coeff_at(0), Some(1));
    }

    #[test]
    fn valuation_of_t3_plus_t5() {
        let x = poly(5, &[(3, 1), (5, 1)]);
        assert_eq!(x.valuation(), Valuation::Exact(3));
        let zero = x.sub(&x);
        assert!(matches!(zero.valuation(), Valuation::AtLeast(b) if b >= END_EXACT));
    }

    #[test]
    fn windows_follow_min_and_cross_rules() {
        let a = poly(3, &[(0, 1), (1, 2)]).truncated(5);
        let b = poly(3, &[(2, 1)]).truncated(9);
        assert_eq!(a.add(&b).precision_end(), 5);
        // mul: min(v_a + end_b, v_b + end_a) = min(0 + 9, 2 + 5) = 7.
        assert_eq!(a.mul(&b).precision_end(), 7);
        // Unknown coefficients never appear: coeff_at beyond end is None.
        assert_eq!(a.coeff_at(5), None);
        assert_eq!(a.coeff_at(4), Some(0));
    }

    #[test]
    fn monomial_inverts_exactly() {
        let m = TruncatedLaurentSeries::monomial(5, 3, 7).unwrap();
        let inv = m.invert().unwrap();
        assert_eq!(inv, TruncatedLaurentSeries::monomial(5, 2, -7).unwrap());
        assert_eq!(inv.precision_end(), END_EXACT);
        assert!(m.mul(&inv).eq_to_precision(&TruncatedLaurentSeries::one(5).unwrap()));
    }

    #[test]
    fn inverse_of_zero_to_precision_fails() {
        let z = TruncatedLaurentSeries::zero_to(3, 10).unwrap();
        assert_eq!(z.invert().unwrap_err().code(), "E_PRECISION");
    }

    #[test]
    fn substitution_matches_direct_expansion() {
        // x = t^-1 + t, s = t + t^2 over F_3: x(s) = s^-1 + s.
        let x = poly(3, &[(-1, 1), (1, 1)]);
        let s = poly(3, &[(1, 1), (2, 1)]).truncated(12);
        let direct = s.invert().unwrap().add(&s);
        let subbed = x.substitute(&s).unwrap();
        assert!(subbed.eq_to_precision(&direct));
        assert_eq!(subbed.valuation(), Valuation::Exact(-1));
    }

    #[test]
    fn substitution_rejects_bad_substituends() {
        let x = poly(3, &[(0, 1), (1, 1)]);
        let unit = poly(3, &[(0, 1), (1, 1)]);
        assert!(x.substitute(&unit).is_err());
        let zero = TruncatedLaurentSeries::zero_to(3, 4).unwrap();
        assert!(x.substitute(&zero).is_err());
    }

    #[test]
    fn substitution_window_respects_source_truncation() {
        // x known only to t^4: x(s) can promise nothing at or beyond t^4
        // when val(s) = 1.
        let x = poly(2, &[(0, 1), (1, 1)]).truncated(4);
        let s = poly(2, &[(1, 1), (3, 1)]).truncated(50);
        let y = x.substitute(&s).unwrap();
        assert_eq!(y.precision_end(), 4);
    }

    #[test]
    fn display_renders_negative_powers_and_window() {
        let x = poly(3, &[(-2, 1), (0, 2), (1, 1)]).truncated(6);
        assert_eq!(x.to_string(), "t^-2 + 2 + t + O(t^6)");
        assert_eq!(TruncatedLaurentSeries::zero_to(3, 4).unwrap().to_string(), "O(t^4)");
    }

    #[test]
    fn modular_helpers() {
        assert_eq!(mod_pow(2, 10, 1000), 24);
        for p in [2u64, 3, 5, 7, 13] {
            for a in 1..p {
                assert_eq!(a * mod_inverse(a, p) % p, 1);
            }
        }
    }
}
