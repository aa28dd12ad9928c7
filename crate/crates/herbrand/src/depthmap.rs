//! Depth and conductor transformation laws.
//!
//! Each operation is an exact formula in the Hasse-Herbrand pair of a
//! profile: restriction to the smaller field multiplies depth by `e`,
//! the Shapiro direction applies `psi`, and the dual (base-change /
//! induction / Asai) direction applies `phi`. Conductors of essentially
//! square-integrable representations of `GL_n` (`n >= 2`) relate to depth by
//! `f = n d + n`, making the Swan slope `(f - n)/n` equal to the depth.

use serde::Serialize;

use crate::exactnum::{PiecewiseLinearFn, Rational};
use crate::ramification::RamificationProfile;
use crate::{Error, Result};

/// A depth transformation request: a depth `d >= 0`, a twisting exponent
/// `kappa > 0` (default 1; the caller supplies it, nothing here guesses it),
/// and the profile of the extension.
#[derive(Clone, Debug)]
pub struct DepthQuery<'a> {
    profile: &'a RamificationProfile,
    depth: Rational,
    kappa: Rational,
}

impl<'a> DepthQuery<'a> {
    /// Query with `kappa = 1`.
    pub fn new(profile: &'a RamificationProfile, depth: Rational) -> Result<Self> {
        Self::with_kappa(profile, depth, Rational::one())
    }

    pub fn with_kappa(
        profile: &'a RamificationProfile,
        depth: Rational,
        kappa: Rational,
    ) -> Result<Self> {
        if depth.is_negative() {
            return Err(Error::Domain(format!("depth {depth} is negative")));
        }
        if !(kappa > Rational::zero()) {
            return Err(Error::Domain(format!("kappa {kappa} is not positive")));
        }
        Ok(DepthQuery { profile, depth, kappa })
    }

    pub fn profile(&self) -> &RamificationProfile {
        self.profile
    }

    pub fn depth(&self) -> &Rational {
        &self.depth
    }

    pub fn kappa(&self) -> &Rational {
        &self.kappa
    }
}

/// Invariants of a `GL_n` representation datum: `swan = (conductor - rank)/rank`
/// exactly, and for the essentially square-integrable constructions used here
/// (`rank >= 2`), `conductor = rank * depth + rank`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GLnData {
    pub rank: u64,
    pub conductor: u64,
    pub swan: Rational,
    pub depth: Rational,
}

fn check_nonneg(d: &Rational) -> Result<()> {
    if d.is_negative() {
        return Err(Error::Domain(format!("depth {d} is negative")));
    }
    Ok(())
}

/// Depth under restriction to the Weil group of the extension: `e * d`.
pub fn depth_weil_restriction(profile: &RamificationProfile, d: &Rational) -> Result<Rational> {
    check_nonneg(d)?;
    Ok(Rational::from(profile.e()) * d)
}

/// Depth of the induced (Shapiro) object: `psi(d)`.
pub fn depth_shapiro(profile: &RamificationProfile, d: &Rational) -> Result<Rational> {
    check_nonneg(d)?;
    depth_shapiro_with(&profile.build_psi(), d)
}

/// [`depth_shapiro`] with a precomputed (possibly tower-composite) `psi`.
pub fn depth_shapiro_with(psi: &PiecewiseLinearFn, d: &Rational) -> Result<Rational> {
    psi.eval(d)
}

/// Depth on the other side of the correspondence: `phi(kappa * e * d)`.
pub fn depth_llc(q: &DepthQuery<'_>) -> Rational {
    depth_llc_with(
        &q.profile().build_phi(),
        q.profile().e(),
        q.depth(),
        q.kappa(),
    )
}

/// [`depth_llc`] with a precomputed `phi` and ramification index.
pub fn depth_llc_with(
    phi: &PiecewiseLinearFn,
    e: u64,
    d: &Rational,
    kappa: &Rational,
) -> Rational {
    let arg = kappa * &(Rational::from(e) * d);
    phi.eval(&arg).expect("kappa, e, d nonnegative")
}

/// Whether `depth_llc(d, 1) = d` for all `d` (exactly the tame case). For
/// wild profiles also returns a witness: the largest upper jump `j`, where
/// `phi(e j) > j` because `e j > psi(j)`.
pub fn is_depth_preserving(profile: &RamificationProfile) -> (bool, Option<Rational>) {
    if profile.is_tame() {
        (true, None)
    } else {
        (false, Some(profile.largest_upper_jump()))
    }
}

/// The exact constant `c >= 0` with `depth_llc(d, 1) = d + c` for every
/// `d >= ratio_tail_start(profile)`: evaluating `phi` at the largest lower
/// jump `u`, `c = phi(u) - u/e`. Zero exactly on tame profiles, so the
/// depth ratio `1 + c/d` tends to 1 and equals 1 identically iff tame.
pub fn depth_ratio_constant(profile: &RamificationProfile) -> Rational {
    let u = Rational::from(profile.largest_lower_jump());
    let phi_u = profile.build_phi().eval(&u).expect("jump >= 0");
    phi_u - u / Rational::from(profile.e())
}

/// Start of the linear tail in depth coordinates: `u/e` for the largest
/// lower jump `u`. From here on the ratio identity of
/// [`depth_ratio_constant`] is exact.
pub fn ratio_tail_start(profile: &RamificationProfile) -> Rational {
    Rational::from(profile.largest_lower_jump()) / Rational::from(profile.e())
}

/// Asserts the strict depth increase of wild profiles at one point:
/// `phi(e d) > d`. Errors on tame profiles (where equality holds instead).
pub fn wild_strict_increase_check(profile: &RamificationProfile, d: &Rational) -> Result<bool> {
    if profile.is_tame() {
        return Err(Error::TameProfile(
            "strict increase holds only for wild profiles".into(),
        ));
    }
    if !(d > &Rational::zero()) {
        return Err(Error::Domain(format!("d = {d} must be positive")));
    }
    let q = DepthQuery::new(profile, d.clone())?;
    Ok(depth_llc(&q) > *d)
}

/// Conductor of an essentially square-integrable representation of `GL_n`
/// from its depth: `f = n d + n`, Swan term `d`. Requires `n >= 2` and an
/// integral `n d`.
pub fn conductor_from_depth(n: u64, d: &Rational) -> Result<GLnData> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("rank n = {n} must be >= 2")));
    }
    check_nonneg(d)?;
    let nd = Rational::from(n) * d;
    if !nd.is_integer() {
        return Err(Error::NonIntegralConductor(format!(
            "n*d = {nd} is not an integer (n = {n}, d = {d})"
        )));
    }
    let conductor = (nd + Rational::from(n))
        .to_i64()
        .filter(|&f| f >= 0)
        .ok_or_else(|| Error::InvalidParameter("conductor out of range".into()))?;
    Ok(GLnData {
        rank: n,
        conductor: conductor as u64,
        swan: d.clone(),
        depth: d.clone(),
    })
}

/// Depth of the automorphically induced representation: `phi(d_E)`.
pub fn automorphic_induction_depth(
    profile: &RamificationProfile,
    d_e: &Rational,
) -> Result<Rational> {
    check_nonneg(d_e)?;
    profile.build_phi().eval(d_e)
}

/// Depth of the Asai lift: `phi(d_E)`. Defined only for quadratic
/// extensions (`e * f = 2`).
pub fn asai_depth(profile: &RamificationProfile, d_e: &Rational) -> Result<Rational> {
    check_quadratic(profile)?;
    check_nonneg(d_e)?;
    profile.build_phi().eval(d_e)
}

/// Swan term of the Asai lift (`n >= 2`): `phi(swan_E)`. Same quadratic
/// degree guard as [`asai_depth`].
pub fn asai_swan(n: u64, profile: &RamificationProfile, swan_e: &Rational) -> Result<Rational> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("rank n = {n} must be >= 2")));
    }
    check_quadratic(profile)?;
    check_nonneg(swan_e)?;
    profile.build_phi().eval(swan_e)
}

fn check_quadratic(profile: &RamificationProfile) -> Result<()> {
    if profile.degree() != 2 {
        return Err(Error::DegreeNotTwo(format!(
            "extension degree e*f = {} but the Asai lift needs a quadratic extension",
            profile.degree()
        )));
    }
    Ok(())
}
