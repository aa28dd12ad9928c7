//! Ramification filtration profiles and their Hasse-Herbrand functions.
//!
//! A [`RamificationProfile`] is finite combinatorial data describing the
//! lower-numbering ramification filtration `G = G_0 >= G_1 >= ...` of a
//! finite extension of local fields: residue characteristic `p`, ramification
//! index `e = |G_0|`, residue degree `f`, and the list of jumps with the
//! group orders there. From it the crate builds the exact piecewise-linear
//! pair `phi` (the integral of `1/(G_0 : G_t)`) and `psi = phi^{-1}`, computes
//! upper-numbering jumps, and checks the Hasse-Arf integrality property.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::exactnum::{PiecewiseLinearFn, Rational};
use crate::{Error, Result};

/// One step of the lower-numbering filtration in canonical form.
///
/// The entry `(jump, order)` means `|G_u| = order` for all integers `u` with
/// `prev_jump < u <= jump` (where `prev_jump` is the previous entry's jump,
/// or `-1` for the first entry), and the order drops strictly immediately
/// after `jump`. After the last entry the order is 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiltrationStep {
    /// Lower-numbering jump: the largest `u` at which this order persists.
    #[serde(rename = "break")]
    pub jump: u64,
    /// `|G_u|` on the run of integers ending at `jump`.
    pub order: u64,
}

/// Ramification data of a finite extension, in lower numbering.
///
/// Invariants, enforced at construction:
/// * `p` is prime, `e >= 1`, `f >= 1`;
/// * jumps strictly increase and orders strictly decrease along the list,
///   each order dividing the previous one;
/// * the first order equals `e` (the list is empty exactly when `e = 1`);
/// * every order at a jump `>= 1` is a power of `p` (wild part);
/// * `e / |G_1|` is coprime to `p` (tame quotient).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RamificationProfile {
    p: u64,
    e: u64,
    f: u64,
    abelian: bool,
    filtration: Vec<FiltrationStep>,
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl RamificationProfile {
    /// Builds a profile from raw `(break, order)` pairs.
    ///
    /// The input is read as a step function (`order` holds up to and
    /// including `break`) and normalized: runs of equal orders are merged and
    /// trailing order-1 entries are dropped. All profile invariants are then
    /// checked; violations produce an invalid-parameter error naming the
    /// constraint.
    pub fn from_breaks(
        p: u64,
        e: u64,
        f: u64,
        steps: &[(u64, u64)],
        abelian: bool,
    ) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidParameter(format!("p = {p} is not prime")));
        }
        if e == 0 {
            return Err(Error::InvalidParameter("e must be >= 1".into()));
        }
        if f == 0 {
            return Err(Error::InvalidParameter("f must be >= 1".into()));
        }
        for w in steps.windows(2) {
            if w[1].0 <= w[0].0 {
                return Err(Error::InvalidParameter(format!(
                    "breaks must strictly increase, got {} after {}",
                    w[1].0, w[0].0
                )));
            }
            if w[1].1 > w[0].1 {
                return Err(Error::InvalidParameter(format!(
                    "orders must not increase, got {} after {}",
                    w[1].1, w[0].1
                )));
            }
        }
        if steps.iter().any(|&(_, g)| g == 0) {
            return Err(Error::InvalidParameter("orders must be >= 1".into()));
        }

        // Canonical form: keep an entry only when its order differs from the
        // next one, and drop (trailing) order-1 entries entirely.
        let mut filtration: Vec<FiltrationStep> = Vec::new();
        for (i, &(jump, order)) in steps.iter().enumerate() {
            if order == 1 {
                continue;
            }
            if i + 1 == steps.len() || steps[i + 1].1 != order {
                filtration.push(FiltrationStep { jump, order });
            }
        }

        let first_order = filtration.first().map_or(1, |s| s.order);
        if first_order != e {
            return Err(Error::InvalidParameter(format!(
                "e = {e} but the filtration starts with |G_0| = {first_order}"
            )));
        }
        for w in filtration.windows(2) {
            if w[0].order % w[1].order != 0 {
                return Err(Error::InvalidParameter(format!(
                    "order {} does not divide the previous order {}",
                    w[1].order, w[0].order
                )));
            }
        }
        for s in &filtration {
            if s.jump >= 1 && !is_power_of(s.order, p) {
                return Err(Error::InvalidParameter(format!(
                    "wild order {} at break {} is not a power of p = {p}",
                    s.order, s.jump
                )));
            }
        }
        let wild = filtration.iter().find(|s| s.jump >= 1).map_or(1, |s| s.order);
        if (e / wild).gcd(&p) != 1 {
            return Err(Error::InvalidParameter(format!(
                "tame quotient e/|G_1| = {} is divisible by p = {p}",
                e / wild
            )));
        }

        Ok(RamificationProfile { p, e, f, abelian, filtration })
    }

    /// Unramified extension of residue degree `f`.
    pub fn unramified(p: u64, f: u64) -> Result<Self> {
        Self::from_breaks(p, 1, f, &[], true)
    }

    /// Totally tamely ramified extension of degree `e` (requires
    /// `gcd(e, p) = 1`).
    pub fn tame(p: u64, e: u64) -> Result<Self> {
        if e.gcd(&p) != 1 {
            return Err(Error::InvalidParameter(format!(
                "tame degree e = {e} must be coprime to p = {p}"
            )));
        }
        let steps = if e > 1 { vec![(0, e)] } else { vec![] };
        Self::from_breaks(p, e, 1, &steps, true)
    }

    /// Degree-`p` wild extension with a single break at `m`
    /// (requires `m >= 1`, `gcd(m, p) = 1`).
    pub fn artin_schreier(p: u64, m: u64) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidParameter("break m must be >= 1".into()));
        }
        if m.gcd(&p) != 1 {
            return Err(Error::InvalidParameter(format!(
                "break m = {m} must be coprime to p = {p}"
            )));
        }
        Self::from_breaks(p, p, 1, &[(m, p)], true)
    }

    /// The `p^n`-th cyclotomic extension of the `p`-adic base field:
    /// `e = p^(n-1) (p-1)`, breaks at `0` (when `p > 2`) and at
    /// `p^k - 1` for `1 <= k < n`.
    pub fn cyclotomic(p: u64, n: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidParameter(format!("p = {p} is not prime")));
        }
        if n == 0 {
            return Err(Error::InvalidParameter("n must be >= 1".into()));
        }
        let pk = |k: u32| -> Result<u64> {
            p.checked_pow(k)
                .ok_or_else(|| Error::InvalidParameter(format!("p^{k} overflows u64")))
        };
        let e = pk(n - 1)?
            .checked_mul(p - 1)
            .ok_or_else(|| Error::InvalidParameter("e overflows u64".into()))?;
        let mut steps = Vec::new();
        if p > 2 {
            steps.push((0, e));
        }
        for k in 1..n {
            // |G_u| = p^(n-k) on p^(k-1) <= u <= p^k - 1.
            steps.push((pk(k)? - 1, pk(n - k)?));
        }
        Self::from_breaks(p, e, 1, &steps, true)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// Ramification index `e = |G_0|`.
    pub fn e(&self) -> u64 {
        self.e
    }

    /// Residue degree.
    pub fn f(&self) -> u64 {
        self.f
    }

    /// Total degree `e * f` of the extension.
    pub fn degree(&self) -> u64 {
        self.e * self.f
    }

    pub fn abelian(&self) -> bool {
        self.abelian
    }

    /// Canonical filtration steps (one entry per lower-numbering jump).
    pub fn filtration(&self) -> &[FiltrationStep] {
        &self.filtration
    }

    /// `|G_u|` for an integer `u >= 0`.
    pub fn order_at(&self, u: u64) -> u64 {
        self.filtration.iter().find(|s| s.jump >= u).map_or(1, |s| s.order)
    }

    /// Lower-numbering jumps (positions where the order strictly drops).
    pub fn lower_jumps(&self) -> Vec<u64> {
        self.filtration.iter().map(|s| s.jump).collect()
    }

    /// True when the wild inertia subgroup is trivial, i.e. the largest
    /// upper jump is 0.
    pub fn is_tame(&self) -> bool {
        self.filtration.iter().all(|s| s.jump == 0)
    }

    /// The concave Hasse-Herbrand function `phi(u) = int_0^u dt/(G_0 : G_t)`.
    ///
    /// Slopes are `|G_u|/e` on each run of the filtration, ending with `1/e`;
    /// the first slope is `<= 1` and `phi` is the identity exactly on
    /// unramified profiles.
    pub fn build_phi(&self) -> PiecewiseLinearFn {
        let e = Rational::from(self.e);
        let mut breaks: Vec<Rational> = Vec::new();
        let mut slopes: Vec<Rational> = Vec::new();
        for s in &self.filtration {
            if s.jump >= 1 {
                breaks.push(Rational::from(s.jump));
                slopes.push(Rational::from(s.order) / &e);
            }
        }
        // Orders strictly decrease, so slopes strictly decrease: already
        // canonical. The tail beyond the largest lower jump has slope 1/e.
        slopes.push(Rational::one() / &e);
        PiecewiseLinearFn::from_breaks_and_slopes(&breaks, &slopes)
            .expect("profile invariants imply a valid piecewise-linear function")
    }

    /// The convex Hasse-Herbrand function `psi = phi^{-1}`, with integer
    /// slopes `e/|G_u|` dividing `e` and final slope `e`.
    pub fn build_psi(&self) -> PiecewiseLinearFn {
        self.build_phi().invert()
    }

    /// Upper-numbering jumps: the images under `phi` of the positive lower
    /// jumps, preceded by 0 when `G_0 != G_{0+}` (i.e. the tame quotient is
    /// nontrivial). Sorted ascending; may be empty for unramified profiles.
    pub fn upper_jumps(&self) -> Vec<Rational> {
        let phi = self.build_phi();
        let mut jumps = Vec::new();
        for s in &self.filtration {
            if s.jump == 0 {
                jumps.push(Rational::zero());
            } else {
                jumps.push(phi.eval(&Rational::from(s.jump)).expect("jump >= 0"));
            }
        }
        jumps
    }

    /// The largest upper jump `j` (0 when there are no jumps). The profile
    /// is tame exactly when `j = 0`.
    pub fn largest_upper_jump(&self) -> Rational {
        self.upper_jumps().pop().unwrap_or_else(Rational::zero)
    }

    /// The largest lower jump (0 when there are no positive jumps); this is
    /// `psi(j)` and the start of the final linear segment of `phi`.
    pub fn largest_lower_jump(&self) -> u64 {
        self.filtration.last().map_or(0, |s| s.jump)
    }

    /// Hasse-Arf integrality: all upper jumps are integers.
    ///
    /// Only meaningful for filtrations of abelian extensions; errors when
    /// the profile is not flagged abelian.
    pub fn hasse_arf_check(&self) -> Result<bool> {
        if !self.abelian {
            return Err(Error::NotAbelian(
                "hasse_arf_check requires a profile flagged abelian".into(),
            ));
        }
        Ok(self.upper_jumps().iter().all(Rational::is_integer))
    }
}

impl<'de> Deserialize<'de> for RamificationProfile {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            p: u64,
            e: u64,
            f: u64,
            abelian: bool,
            filtration: Vec<FiltrationStep>,
        }
        let raw = Raw::deserialize(deserializer)?;
        let steps: Vec<(u64, u64)> = raw.filtration.iter().map(|s| (s.jump, s.order)).collect();
        RamificationProfile::from_breaks(raw.p, raw.e, raw.f, &steps, raw.abelian)
            .map_err(serde::de::Error::custom)
    }
}

fn is_power_of(mut n: u64, p: u64) -> bool {
    if n == 0 {
        return false;
    }
    while n.is_multiple_of(p) {
        n /= p;
    }
    n == 1
}

/// `psi` of a two-step tower: with `lower = psi_{E/F}` and
/// `upper = psi_{L/E}`, returns `psi_{L/F} = upper o lower`.
///
/// Both arguments must be psi-shaped (convex with positive integer slopes);
/// the final slope of the result is the product of the final slopes.
pub fn compose_tower_psi(
    lower: &PiecewiseLinearFn,
    upper: &PiecewiseLinearFn,
) -> PiecewiseLinearFn {
    upper.compose(lower)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn prime_check() {
        assert!(is_prime(2) && is_prime(3) && is_prime(97));
        assert!(!is_prime(0) && !is_prime(1) && !is_prime(4) && !is_prime(91));
    }

    #[test]
    fn catalog_canonical_filtrations() {
        assert!(RamificationProfile::unramified(5, 3).unwrap().filtration().is_empty());
        assert_eq!(
            RamificationProfile::tame(5, 3).unwrap().filtration(),
            &[FiltrationStep { jump: 0, order: 3 }]
        );
        assert_eq!(
            RamificationProfile::artin_schreier(2, 3).unwrap().filtration(),
            &[FiltrationStep { jump: 3, order: 2 }]
        );
        // G_0 = G_1 of order 4, G_2 = G_3 of order 2, trivial after.
        assert_eq!(
            RamificationProfile::cyclotomic(2, 3).unwrap().filtration(),
            &[FiltrationStep { jump: 1, order: 4 }, FiltrationStep { jump: 3, order: 2 }]
        );
        // G_0 of order 6, G_1 = G_2 of order 3, trivial after.
        assert_eq!(
            RamificationProfile::cyclotomic(3, 2).unwrap().filtration(),
            &[FiltrationStep { jump: 0, order: 6 }, FiltrationStep { jump: 2, order: 3 }]
        );
    }

    #[test]
    fn order_at_reads_the_step_function() {
        let c = RamificationProfile::cyclotomic(2, 3).unwrap();
        assert_eq!(
            (0..=4).map(|u| c.order_at(u)).collect::<Vec<_>>(),
            vec![4, 4, 2, 2, 1]
        );
        let t = RamificationProfile::tame(5, 4).unwrap();
        assert_eq!(t.order_at(0), 4);
        assert_eq!(t.order_at(1), 1);
    }

    #[test]
    fn from_breaks_normalizes_redundant_runs() {
        let a = RamificationProfile::from_breaks(2, 2, 1, &[(0, 2), (1, 2)], true).unwrap();
        assert_eq!(a, RamificationProfile::artin_schreier(2, 1).unwrap());
        let b = RamificationProfile::from_breaks(2, 2, 1, &[(3, 2), (5, 1)], true).unwrap();
        assert_eq!(b, RamificationProfile::artin_schreier(2, 3).unwrap());
    }

    #[test]
    fn from_breaks_rejects_invalid_data() {
        let err = |r: Result<RamificationProfile>| r.unwrap_err();
        // Non-prime p.
        assert_eq!(
            err(RamificationProfile::from_breaks(4, 2, 1, &[(1, 2)], false)).code(),
            "E_PARAM"
        );
        // Wild order not a p-power.
        assert!(RamificationProfile::from_breaks(2, 6, 1, &[(0, 6), (1, 3)], false).is_err());
        // Tame quotient divisible by p.
        assert!(RamificationProfile::from_breaks(2, 4, 1, &[(0, 4), (1, 2)], false).is_err());
        // e inconsistent with the filtration.
        assert!(RamificationProfile::from_breaks(2, 4, 1, &[(1, 2)], false).is_err());
        // Orders increasing.
        assert!(RamificationProfile::from_breaks(2, 2, 1, &[(1, 2), (2, 4)], false).is_err());
        // Non-divisibility: 4 then 3 would already fail the p-power rule;
        // use p = 3 with orders 9 then 3 vs 9 then 6.
        assert!(RamificationProfile::from_breaks(3, 9, 1, &[(1, 9), (2, 6)], false).is_err());
        // Breaks not strictly increasing.
        assert!(RamificationProfile::from_breaks(2, 2, 1, &[(1, 2), (1, 2)], false).is_err());
        // Catalog preconditions.
        assert!(RamificationProfile::tame(3, 6).is_err());
        assert!(RamificationProfile::artin_schreier(2, 4).is_err());
        assert!(RamificationProfile::artin_schreier(3, 0).is_err());
        assert!(RamificationProfile::cyclotomic(3, 0).is_err());
    }

    #[test]
    fn psi_of_tame_is_multiplication_by_e() {
        let t = RamificationProfile::tame(2, 3).unwrap();
        assert_eq!(t.build_psi(), PiecewiseLinearFn::linear(r(3, 1)).unwrap());
        assert_eq!(t.build_phi(), PiecewiseLinearFn::linear(r(1, 3)).unwrap());
    }

    #[test]
    fn psi_of_single_wild_break() {
        // Break at 1, degree 2: psi = x on [0,1], 2x - 1 after.
        let a = RamificationProfile::artin_schreier(2, 1).unwrap();
        let expected =
            PiecewiseLinearFn::from_breaks_and_slopes(&[r(1, 1)], &[r(1, 1), r(2, 1)]).unwrap();
        assert_eq!(a.build_psi(), expected);
    }

    #[test]
    fn phi_of_wild_break_at_3() {
        // phi = x on [0,3], 3 + (x-3)/2 after; phi(5) = 4.
        let a = RamificationProfile::artin_schreier(2, 3).unwrap();
        let phi = a.build_phi();
        assert_eq!(phi.slopes(), &[r(1, 1), r(1, 2)]);
        assert_eq!(phi.eval(&r(5, 1)).unwrap(), r(4, 1));
    }

    #[test]
    fn phi_of_cyclotomic_2_3() {
        let c = RamificationProfile::cyclotomic(2, 3).unwrap();
        let phi = c.build_phi();
        assert_eq!(phi.slopes(), &[r(1, 1), r(1, 2), r(1, 4)]);
        assert_eq!(
            phi.breakpoints().iter().map(|(x, _)| x.clone()).collect::<Vec<_>>(),
            vec![r(0, 1), r(1, 1), r(3, 1)]
        );
        assert_eq!(phi.eval(&r(3, 1)).unwrap(), r(2, 1));
    }

    #[test]
    fn phi_and_psi_are_mutually_inverse_structurally() {
        for profile in [
            RamificationProfile::unramified(2, 2).unwrap(),
            RamificationProfile::tame(2, 5).unwrap(),
            RamificationProfile::artin_schreier(3, 2).unwrap(),
            RamificationProfile::cyclotomic(2, 3).unwrap(),
            RamificationProfile::cyclotomic(3, 2).unwrap(),
        ] {
            assert_eq!(profile.build_phi(), profile.build_psi().invert());
            assert_eq!(profile.build_psi(), profile.build_phi().invert());
        }
    }

    /// Independent pointwise evaluator for phi: the classical sum
    /// `phi(u) = (1/e) (|G_1| + ... + |G_M| + (u - M) |G_{M+1}|)`, `M = floor(u)`.
    fn phi_oracle(profile: &RamificationProfile, u: &Rational) -> Rational {
        let m = u.floor().to_string().parse::<u64>().unwrap();
        let mut acc = Rational::zero();
        for k in 1..=m {
            acc = acc + Rational::from(profile.order_at(k));
        }
        let frac = u - &Rational::from(m);
        acc = acc + frac * Rational::from(profile.order_at(m + 1));
        acc / Rational::from(profile.e())
    }

    #[test]
    fn phi_matches_independent_sum_formula() {
        let profiles = [
            RamificationProfile::unramified(2, 3).unwrap(),
            RamificationProfile::tame(3, 4).unwrap(),
            RamificationProfile::artin_schreier(2, 5).unwrap(),
            RamificationProfile::artin_schreier(5, 3).unwrap(),
            RamificationProfile::cyclotomic(2, 3).unwrap(),
            RamificationProfile::cyclotomic(3, 3).unwrap(),
            RamificationProfile::from_breaks(2, 8, 2, &[(1, 8), (2, 4), (5, 2)], false).unwrap(),
        ];
        for profile in &profiles {
            let phi = profile.build_phi();
            for i in 0..60 {
                let u = r(i, 7);
                assert_eq!(phi.eval(&u).unwrap(), phi_oracle(profile, &u), "at {u} in {profile:?}");
            }
        }
    }

    #[test]
    fn upper_jumps_follow_the_filtration() {
        // Tame: single jump at 0.
        assert_eq!(RamificationProfile::tame(2, 5).unwrap().upper_jumps(), vec![r(0, 1)]);
        // Unramified: no jumps at all; largest upper jump defaults to 0.
        let u = RamificationProfile::unramified(3, 2).unwrap();
        assert!(u.upper_jumps().is_empty());
        assert_eq!(u.largest_upper_jump(), r(0, 1));
        // Wild with G_0 = G_1: no jump at 0.
        assert_eq!(
            RamificationProfile::artin_schreier(3, 2).unwrap().upper_jumps(),
            vec![r(2, 1)]
        );
        // Cyclotomic p = 2: G_0 = G_1, jumps phi(1) = 1, phi(3) = 2.
        assert_eq!(
            RamificationProfile::cyclotomic(2, 3).unwrap().upper_jumps(),
            vec![r(1, 1), r(2, 1)]
        );
        // Cyclotomic p = 3, n = 2: tame quotient of order 2 gives a jump at
        // 0; the wild jump at u = 2 maps to phi(2) = 1.
        let c = RamificationProfile::cyclotomic(3, 2).unwrap();
        assert_eq!(c.upper_jumps(), vec![r(0, 1), r(1, 1)]);
        assert_eq!(c.largest_upper_jump(), r(1, 1));
    }

    #[test]
    fn tame_predicate_matches_largest_jump() {
        for (profile, expect) in [
            (RamificationProfile::unramified(2, 4).unwrap(), true),
            (RamificationProfile::tame(2, 7).unwrap(), true),
            (RamificationProfile::artin_schreier(2, 3).unwrap(), false),
            (RamificationProfile::cyclotomic(3, 2).unwrap(), false),
        ] {
            assert_eq!(profile.is_tame(), expect);
            assert_eq!(profile.largest_upper_jump() == Rational::zero(), expect);
        }
    }

    #[test]
    fn hasse_arf_on_abelian_catalog() {
        assert!(RamificationProfile::cyclotomic(2, 3).unwrap().hasse_arf_check().unwrap());
        assert!(RamificationProfile::artin_schreier(5, 4).unwrap().hasse_arf_check().unwrap());
        assert!(RamificationProfile::cyclotomic(3, 3).unwrap().hasse_arf_check().unwrap());
        // A filtration no abelian extension can realize: upper jumps 1, 3/2.
        let fake =
            RamificationProfile::from_breaks(2, 4, 1, &[(1, 4), (2, 2)], true).unwrap();
        assert!(!fake.hasse_arf_check().unwrap());
        // The check refuses profiles not flagged abelian.
        let nonab =
            RamificationProfile::from_breaks(2, 4, 1, &[(1, 4), (2, 2)], false).unwrap();
        assert_eq!(nonab.hasse_arf_check().unwrap_err().code(), "E_ABELIAN");
    }

    #[test]
    fn tower_composition_of_psi() {
        // tame e = 2 below a wild break at 1: psi = 2x on [0, 1/2], 4x - 1 after.
        let lower = RamificationProfile::tame(3, 2).unwrap().build_psi();
        let upper = RamificationProfile::artin_schreier(2, 1).unwrap().build_psi();
        let tower = compose_tower_psi(&lower, &upper);
        let expected =
            PiecewiseLinearFn::from_breaks_and_slopes(&[r(1, 2)], &[r(2, 1), r(4, 1)]).unwrap();
        assert_eq!(tower, expected);
        assert_eq!(tower.final_slope(), &r(4, 1));
    }

    #[test]
    fn psi_shape_postconditions() {
        for profile in [
            RamificationProfile::tame(2, 5).unwrap(),
            RamificationProfile::artin_schreier(3, 2).unwrap(),
            RamificationProfile::cyclotomic(2, 3).unwrap(),
            RamificationProfile::cyclotomic(3, 3).unwrap(),
        ] {
            let psi = profile.build_psi();
            assert!(psi.is_convex());
            assert_eq!(psi.final_slope(), &Rational::from(profile.e()));
            let e = Rational::from(profile.e());
            for s in psi.slopes() {
                assert!(s.is_integer(), "psi slope {s} not an integer");
                let ratio = &e / s;
                assert!(ratio.is_integer(), "psi slope {s} does not divide e = {e}");
            }
            let phi = profile.build_phi();
            assert!(phi.first_slope() <= &Rational::one());
        }
    }

    #[test]
    fn profile_json_round_trip() {
        let c = RamificationProfile::cyclotomic(3, 2).unwrap();
        let json = serde_json::to_value(&c).unwrap();
        assert_eq!(
            json,
            serde_json::json!({
                "p": 3, "e": 6, "f": 1, "abelian": true,
                "filtration": [
                    {"break": 0, "order": 6},
                    {"break": 2, "order": 3},
                ],
            })
        );
        let back: RamificationProfile = serde_json::from_value(json).unwrap();
        assert_eq!(back, c);
        // Deserialization validates: a bad profile is rejected.
        let bad = serde_json::json!({
            "p": 2, "e": 4, "f": 1, "abelian": false,
            "filtration": [{"break": 0, "order": 4}, {"break": 1, "order": 2}],
        });
        assert!(serde_json::from_value::<RamificationProfile>(bad).is_err());
    }
}
