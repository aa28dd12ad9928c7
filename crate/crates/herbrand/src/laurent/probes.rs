//! Randomized probes that confront the exact transformation laws with
//! series arithmetic: norms of principal units must land where the inverse
//! Herbrand function says they do.

use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::automorphism::{norm_unchecked, profile_from_group, SeriesAutomorphism};
use super::series::{TruncatedLaurentSeries, Valuation};
use crate::exactnum::Rational;
use crate::ramification::RamificationProfile;
use crate::{Error, Result};

/// Extra coefficients carried past the certified threshold so sharp hits
/// (valuation exactly e*n) are distinguishable from mere passes.
const PROBE_MARGIN: u64 = 8;

/// Per-trial seeds are decorrelated by the golden-ratio increment.
const SEED_STRIDE: u64 = 0x9E37_79B9_7F4A_7C15;

/// Outcome of a [`norm_filtration_probe`] run.
#[derive(Clone, Debug, Serialize)]
pub struct NormProbeReport {
    pub p: u64,
    pub e: u64,
    pub n: u64,
    pub trials: u64,
    pub seed: u64,
    /// psi(n): the level the probe units start at.
    pub psi_n: u64,
    /// e * n: the certified valuation of norm(u) - 1.
    pub required: u64,
    pub pass_count: u64,
    pub min_valuation: Valuation,
    /// Trials where the valuation equals `required` exactly.
    pub sharp_hits: u64,
    pub passed: bool,
}

fn trial_outcome(
    group: &[SeriesAutomorphism],
    p: u64,
    psi_n: u64,
    required: u64,
    window_end: i64,
    seed: u64,
    index: u64,
) -> Result<(bool, Valuation)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add((index + 1).wrapping_mul(SEED_STRIDE)));
    // u = 1 + t^psi_n * (unit series), coefficients random mod p with a
    // nonzero leading term; from_terms folds colliding exponents mod p.
    let mut terms: Vec<(i64, u64)> = vec![(0, 1)];
    terms.push((psi_n as i64, rng.random_range(1..p)));
    for k in (psi_n as i64 + 1)..window_end {
        terms.push((k, rng.random_range(0..p)));
    }
    let unit = TruncatedLaurentSeries::from_terms(p, &terms)?.truncated(window_end);
    let one = TruncatedLaurentSeries::one(p)?;
    let val = norm_unchecked(&unit, group)?.sub(&one).valuation();
    let pass = match val {
        Valuation::Exact(v) => v >= required as i64,
        Valuation::AtLeast(b) => b >= required as i64,
    };
    Ok((pass, val))
}

/// Draws `trials` random principal units at level psi(n) and certifies that
/// every norm lands at valuation >= e*n, the image level predicted by the
/// inverse Herbrand function of `profile`.
///
/// The group must be closed (as produced by
/// [`group_closure`](super::group_closure)) and is cross-checked against
/// `profile` by re-measuring its filtration. Deterministic for a fixed
/// seed, including under the parallel feature: trials are merged in index
/// order.
pub fn norm_filtration_probe(
    group: &[SeriesAutomorphism],
    profile: &RamificationProfile,
    n: u64,
    trials: u64,
    seed: u64,
) -> Result<NormProbeReport> {
    #[cfg(feature = "parallel")]
    {
        norm_filtration_probe_par(group, profile, n, trials, seed)
    }
    #[cfg(not(feature = "parallel"))]
    {
        norm_filtration_probe_seq(group, profile, n, trials, seed)
    }
}

/// [`norm_filtration_probe`] forced onto the sequential path; identical
/// output for identical inputs.
pub fn norm_filtration_probe_seq(
    group: &[SeriesAutomorphism],
    profile: &RamificationProfile,
    n: u64,
    trials: u64,
    seed: u64,
) -> Result<NormProbeReport> {
    let setup = ProbeSetup::new(group, profile, n, trials, seed)?;
    let run = |i: u64| setup.trial(group, i);
    let outcomes: Vec<(bool, Valuation)> = (0..trials).map(run).collect::<Result<_>>()?;
    Ok(setup.report(&outcomes))
}

/// [`norm_filtration_probe`] forced onto the rayon path. Trials are merged
/// in index order, so the report matches the sequential one exactly.
#[cfg(feature = "parallel")]
pub fn norm_filtration_probe_par(
    group: &[SeriesAutomorphism],
    profile: &RamificationProfile,
    n: u64,
    trials: u64,
    seed: u64,
) -> Result<NormProbeReport> {
    use rayon::prelude::*;
    let setup = ProbeSetup::new(group, profile, n, trials, seed)?;
    let run = |i: u64| setup.trial(group, i);
    let outcomes: Vec<(bool, Valuation)> =
        (0..trials).into_par_iter().map(run).collect::<Result<_>>()?;
    Ok(setup.report(&outcomes))
}

/// Validated probe parameters shared by both execution strategies.
struct ProbeSetup {
    p: u64,
    e: u64,
    n: u64,
    trials: u64,
    seed: u64,
    psi_n: u64,
    required: u64,
    window_end: i64,
}

impl ProbeSetup {
    fn new(
        group: &[SeriesAutomorphism],
        profile: &RamificationProfile,
        n: u64,
        trials: u64,
        seed: u64,
    ) -> Result<Self> {
        let p = profile.p();
        let e = profile.e();
        let measured = profile_from_group(group, p, e)?;
        if &measured != profile {
            return Err(Error::InvalidParameter(
                "profile does not match the filtration measured from the group".into(),
            ));
        }

        let psi = profile.build_psi();
        let psi_n = psi
            .eval(&Rational::from(n))?
            .to_i64()
            .and_then(|v| u64::try_from(v).ok())
            .ok_or_else(|| Error::Domain("psi(n) must be a nonnegative integer".into()))?;
        let required = e * n;

        let window_end = (required + PROBE_MARGIN) as i64;
        for g in group {
            if g.image_of_t().precision_end() < window_end {
                return Err(Error::PrecisionInsufficient(format!(
                    "group precision {} cannot certify valuations up to {}",
                    g.image_of_t().precision_end(),
                    window_end
                )));
            }
        }
        Ok(ProbeSetup { p, e, n, trials, seed, psi_n, required, window_end })
    }

    fn trial(&self, group: &[SeriesAutomorphism], index: u64) -> Result<(bool, Valuation)> {
        trial_outcome(group, self.p, self.psi_n, self.required, self.window_end, self.seed, index)
    }

    fn report(&self, outcomes: &[(bool, Valuation)]) -> NormProbeReport {
        let mut pass_count = 0;
        let mut sharp_hits = 0;
        let mut min_valuation = Valuation::AtLeast(self.window_end);
        for &(pass, val) in outcomes {
            if pass {
                pass_count += 1;
            }
            if val == Valuation::Exact(self.required as i64) {
                sharp_hits += 1;
            }
            if val.lower_bound() < min_valuation.lower_bound()
                || (val.lower_bound() == min_valuation.lower_bound() && val.is_exact())
            {
                min_valuation = val;
            }
        }
        NormProbeReport {
            p: self.p,
            e: self.e,
            n: self.n,
            trials: self.trials,
            seed: self.seed,
            psi_n: self.psi_n,
            required: self.required,
            pass_count,
            min_valuation,
            sharp_hits,
            passed: pass_count == self.trials,
        }
    }
}

/// Checks the depth convention on the induced torus: a unit `1 + t^k * w`
/// has depth >= r exactly when its valuation clears ceil(e*r). Samples
/// `samples` levels with random tails (internal base p = 2, fixed seed).
pub fn torus_filtration_check(
    e: u64,
    r: &Rational,
    samples: u64,
    precision: usize,
) -> Result<bool> {
    if e == 0 {
        return Err(Error::InvalidParameter("e must be positive".into()));
    }
    if r.is_negative() {
        return Err(Error::Domain("depth threshold must be nonnegative".into()));
    }
    let threshold = (Rational::from(e) * r.clone())
        .ceil()
        .to_i64()
        .ok_or_else(|| Error::Domain("e*r out of range".into()))?;
    if samples as i64 >= precision as i64 || threshold >= precision as i64 {
        return Err(Error::PrecisionInsufficient(format!(
            "precision {precision} too small for {samples} samples at threshold {threshold}"
        )));
    }

    let p = 2u64;
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let e_rat = Rational::from(e);
    for k in 0..samples {
        let mut terms: Vec<(i64, u64)> = vec![(0, 1), (k as i64, 1)];
        for j in (k as i64 + 1)..precision as i64 {
            terms.push((j, rng.random_range(0..p)));
        }
        let unit = TruncatedLaurentSeries::from_terms(p, &terms)?.truncated(precision as i64);
        let one = TruncatedLaurentSeries::one(p)?;
        let v = match unit.sub(&one).valuation() {
            Valuation::Exact(v) => v,
            Valuation::AtLeast(_) => {
                return Err(Error::PrecisionInsufficient(
                    "sample unit is trivial to precision".into(),
                ))
            }
        };
        let by_threshold = v >= threshold;
        let by_depth = Rational::new(v, 1) / e_rat.clone() >= *r;
        if by_threshold != by_depth {
            return Ok(false);
        }
    }
    Ok(true)
}
