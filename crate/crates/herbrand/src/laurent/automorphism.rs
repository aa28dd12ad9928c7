//! Continuous automorphisms of F_p((t)) as substitutions, and the
//! ramification data measured from them.

use super::series::{mod_inverse, TruncatedLaurentSeries, Valuation};
use crate::ramification::{is_prime, RamificationProfile};
use crate::{Error, Result};

/// An automorphism of F_p((t)) fixing F_p, determined by the image of `t`
/// (a series of valuation exactly 1 with unit leading coefficient); it acts
/// on any series by substitution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesAutomorphism {
    p: u64,
    image: TruncatedLaurentSeries,
}

impl SeriesAutomorphism {
    pub fn new(image: TruncatedLaurentSeries) -> Result<Self> {
        match image.valuation() {
            Valuation::Exact(1) => {}
            v => {
                return Err(Error::InvalidParameter(format!(
                    "image of t must have valuation exactly 1, got {v}"
                )))
            }
        }
        Ok(SeriesAutomorphism { p: image.p(), image })
    }

    /// The identity substitution, exactly known.
    pub fn identity(p: u64) -> Result<Self> {
        Self::new(TruncatedLaurentSeries::monomial(p, 1, 1)?)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn image_of_t(&self) -> &TruncatedLaurentSeries {
        &self.image
    }

    /// Applies the automorphism to a series: `x -> x(image)`.
    pub fn apply(&self, x: &TruncatedLaurentSeries) -> Result<TruncatedLaurentSeries> {
        x.substitute(&self.image)
    }

    /// Composition `self . other` (apply `other` first).
    pub fn compose(&self, other: &Self) -> Result<Self> {
        Ok(SeriesAutomorphism { p: self.p, image: self.apply(&other.image)? })
    }

    /// Whether this is the identity to the image's precision.
    pub fn is_identity_to_precision(&self) -> Result<bool> {
        let t = TruncatedLaurentSeries::monomial(self.p, 1, 1)?;
        Ok(self.image.sub(&t).is_zero_to_precision())
    }

    /// Agreement with another automorphism on the shared window.
    pub fn eq_to_precision(&self, other: &Self) -> bool {
        self.image.eq_to_precision(&other.image)
    }

    /// Multiplicative order, by repeated composition, erroring beyond `cap`.
    pub fn order(&self, cap: usize) -> Result<usize> {
        let mut power = self.clone();
        for k in 1..=cap {
            if power.is_identity_to_precision()? {
                return Ok(k);
            }
            power = self.compose(&power)?;
        }
        Err(Error::NonClosure(format!("no order found within {cap} compositions")))
    }
}

/// binom(n, k) mod p by Lucas' theorem (digitwise base p).
fn binom_mod_p(mut n: u64, mut k: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    while k > 0 || n > 0 {
        let (nd, kd) = (n % p, k % p);
        if kd > nd {
            return 0;
        }
        // binom(nd, kd) for digits < p, small enough to multiply out.
        let mut digit = 1u64;
        for i in 0..kd {
            digit = digit * (nd - i) % p * mod_inverse(i + 1, p) % p;
        }
        acc = acc * digit % p;
        n /= p;
        k /= p;
    }
    acc
}

/// The wild automorphism `sigma(t) = t (1 + t^m)^(-1/m)` of order p and
/// ramification break m. On `x = t^-m` it acts as `x -> x + 1`, the
/// Artin-Schreier translation picture.
///
/// The exponent -1/m is a p-adic integer; binom(a, k) mod p depends only on
/// a mod p^L once p^L > k, so an integer representative of -1/m mod p^L
/// with p^L above the largest term index gives every binomial coefficient
/// exactly.
pub fn as_automorphism(p: u64, m: u64, precision: usize) -> Result<SeriesAutomorphism> {
    if !is_prime(p) {
        return Err(Error::InvalidParameter(format!("{p} is not prime")));
    }
    if m == 0 || m.is_multiple_of(p) {
        return Err(Error::InvalidParameter(format!(
            "break m = {m} must be positive and coprime to p = {p}"
        )));
    }
    if precision < 2 {
        return Err(Error::InvalidParameter("precision must be at least 2".into()));
    }
    // Terms binom(a, k) t^(mk) for mk < precision.
    let k_max = (precision as u64 - 1) / m + 1;
    let mut p_l: u64 = 1;
    while p_l <= k_max {
        p_l = p_l.checked_mul(p).ok_or_else(|| {
            Error::InvalidParameter("precision too large for the exponent modulus".into())
        })?;
    }
    // a = -1/m mod p^L, as a nonnegative integer.
    let a = (p_l - m % p_l) % p_l;
    let a = modular_inverse_u64(a, p_l)?;

    let mut terms: Vec<(i64, u64)> = Vec::new();
    for k in 0..=k_max {
        let c = binom_mod_p(a, k, p);
        if c != 0 {
            terms.push(((m * k) as i64, c));
        }
    }
    let binomial = TruncatedLaurentSeries::from_terms(p, &terms)?.truncated(precision as i64);
    let t = TruncatedLaurentSeries::monomial(p, 1, 1)?;
    SeriesAutomorphism::new(t.mul(&binomial))
}

/// Extended-Euclid inverse mod an arbitrary modulus (the exponent modulus
/// p^L is not prime, so Fermat does not apply).
fn modular_inverse_u64(a: u64, modulus: u64) -> Result<u64> {
    let (mut r0, mut r1) = (modulus as i128, a as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    if r0 != 1 {
        return Err(Error::InvalidParameter(format!("{a} is not invertible mod {modulus}")));
    }
    Ok(s0.rem_euclid(modulus as i128) as u64)
}

/// The tame scaling automorphism `t -> zeta t`, exactly known.
pub fn scaling_automorphism(p: u64, zeta: u64) -> Result<SeriesAutomorphism> {
    if zeta.is_multiple_of(p) {
        return Err(Error::InvalidParameter("zeta must be a unit".into()));
    }
    SeriesAutomorphism::new(TruncatedLaurentSeries::monomial(p, zeta, 1)?)
}

/// Closes a generating set under composition, deduplicating up to the
/// shared precision. Errors if more than `cap` elements appear.
pub fn group_closure(
    gens: &[SeriesAutomorphism],
    p: u64,
    cap: usize,
) -> Result<Vec<SeriesAutomorphism>> {
    let mut elements = vec![SeriesAutomorphism::identity(p)?];
    for g in gens {
        if g.p() != p {
            return Err(Error::Domain(format!(
                "generator over F_{} in a group over F_{p}",
                g.p()
            )));
        }
        if !elements.iter().any(|e| e.eq_to_precision(g)) {
            elements.push(g.clone());
        }
    }
    let mut i = 0;
    while i < elements.len() {
        let mut j = 0;
        while j < elements.len() {
            let prod = elements[i].compose(&elements[j])?;
            if !elements.iter().any(|e| e.eq_to_precision(&prod)) {
                if elements.len() >= cap {
                    return Err(Error::NonClosure(format!(
                        "generated set exceeds {cap} elements"
                    )));
                }
                elements.push(prod);
            }
            j += 1;
        }
        i += 1;
    }
    Ok(elements)
}

/// Measures the lower-numbering break of a nontrivial automorphism:
/// `valuation(sigma(t) - t) - 1`.
pub fn measured_break(sigma: &SeriesAutomorphism) -> Result<u64> {
    let t = TruncatedLaurentSeries::monomial(sigma.p(), 1, 1)?;
    match sigma.image_of_t().sub(&t).valuation() {
        Valuation::Exact(v) => Ok((v - 1) as u64),
        Valuation::AtLeast(_) => Err(Error::IdentityInput(
            "break of the identity (to precision) is undefined".into(),
        )),
    }
}

/// Reconstructs a ramification profile from measured displacement
/// valuations `i(g) = valuation(g(t) - t)`: the order of the filtration
/// subgroup at `u` is `#{g : i(g) >= u + 1}` plus the identity. The level
/// sets are verified to be subgroups and the result is validated as a
/// canonical profile.
pub fn profile_from_group(
    gens: &[SeriesAutomorphism],
    p: u64,
    e_expected: u64,
) -> Result<RamificationProfile> {
    let elements = group_closure(gens, p, 64)?;
    let e = elements.len() as u64;
    if e != e_expected {
        return Err(Error::InvalidParameter(format!(
            "generated group has {e} elements, expected {e_expected}"
        )));
    }

    // i(g) for non-identity elements; the identity sits in every level set.
    let mut displacement = vec![u64::MAX; elements.len()];
    for (idx, g) in elements.iter().enumerate() {
        if !g.is_identity_to_precision()? {
            displacement[idx] = measured_break(g)? + 1;
        }
    }

    // Composition table for the subgroup-chain and abelian checks.
    let mut table = vec![0usize; elements.len() * elements.len()];
    for i in 0..elements.len() {
        for j in 0..elements.len() {
            let prod = elements[i].compose(&elements[j])?;
            let k = elements
                .iter()
                .position(|e| e.eq_to_precision(&prod))
                .ok_or_else(|| Error::NonClosure("closure lost under composition".into()))?;
            table[i * elements.len() + j] = k;
        }
    }
    let abelian = (0..elements.len()).all(|i| {
        (0..elements.len()).all(|j| table[i * elements.len() + j] == table[j * elements.len() + i])
    });

    let max_break = displacement
        .iter()
        .filter(|&&d| d != u64::MAX)
        .map(|&d| d - 1)
        .max()
        .unwrap_or(0);
    for u in 0..=max_break {
        let level: Vec<usize> = (0..elements.len())
            .filter(|&idx| displacement[idx] > u)
            .collect();
        for &i in &level {
            for &j in &level {
                let k = table[i * elements.len() + j];
                if !level.contains(&k) {
                    return Err(Error::NonSubgroupChain(format!(
                        "level set at u = {u} is not closed under composition"
                    )));
                }
            }
        }
    }

    let mut breaks = Vec::new();
    for u in 0..=max_break {
        let order = displacement.iter().filter(|&&d| d > u).count() as u64;
        breaks.push((u, order));
    }
    RamificationProfile::from_breaks(p, e, 1, &breaks, abelian)
}

/// The norm `prod_g g(x)` over a verified group of automorphisms (must
/// contain the identity and be closed under composition to precision).
pub fn norm(
    x: &TruncatedLaurentSeries,
    group: &[SeriesAutomorphism],
) -> Result<TruncatedLaurentSeries> {
    let p = x.p();
    if !group.iter().any(|g| g.p() == p && matches!(g.is_identity_to_precision(), Ok(true))) {
        return Err(Error::NonClosure("group does not contain the identity".into()));
    }
    for a in group {
        for b in group {
            let prod = a.compose(b)?;
            if !group.iter().any(|g| g.eq_to_precision(&prod)) {
                return Err(Error::NonClosure(
                    "set of automorphisms is not closed under composition".into(),
                ));
            }
        }
    }
    norm_unchecked(x, group)
}

/// [`norm`] without the closure verification, for callers that verified the
/// group once and probe it repeatedly.
pub fn norm_unchecked(
    x: &TruncatedLaurentSeries,
    group: &[SeriesAutomorphism],
) -> Result<TruncatedLaurentSeries> {
    let mut acc = TruncatedLaurentSeries::one(x.p())?;
    for g in group {
        acc = acc.mul(&g.apply(x)?);
    }
    Ok(acc)
}
