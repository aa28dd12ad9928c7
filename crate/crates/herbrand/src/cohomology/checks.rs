//! Elementwise verification of the canonical cohomology maps.
//!
//! Nothing here assumes the theorems it checks: each map is constructed
//! explicitly and tested for well-definedness, injectivity, surjectivity,
//! and preservation of the distinguished point by walking every cocycle.

use super::h1::{enumerate_h1, is_cocycle};
use super::module::induce;
use super::{FiniteGGroup, FiniteGroup, H1PointedSet};
use crate::{Error, Result};
use serde::Serialize;

/// Outcome of one canonical-map check, with a human-readable account of the
/// cardinalities involved and the first counterexample if the check failed.
#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckReport {
    fn new(name: &str, passed: bool, detail: String) -> Self {
        CheckReport { name: name.into(), passed, detail }
    }
}

fn sorted_dedup(elems: &[usize]) -> Vec<usize> {
    let mut v = elems.to_vec();
    v.sort_unstable();
    v.dedup();
    v
}

fn internal(msg: &str) -> Error {
    Error::InvalidParameter(format!("internal invariant violated: {msg}"))
}

/// The quotient module (g/u acting on A^u) together with the data needed to
/// move cocycles between the two levels.
struct QuotientFixed {
    module: FiniteGGroup,
    /// g-element -> coset index in g/u.
    coset_of: Vec<usize>,
    /// abstract fixed-point index -> coefficient index in the original A.
    embed: Vec<usize>,
}

fn quotient_fixed_module(m: &FiniteGGroup, u_elems: &[usize]) -> Result<QuotientFixed> {
    let u = sorted_dedup(u_elems);
    let (q, coset_of, reps) = m.acting().quotient(&u)?;
    let (afix, embed) = m.fixed_subgroup(&u)?;
    let mut act = Vec::with_capacity(q.order() * afix.order());
    for &rep in &reps {
        for &v in &embed {
            let img = m.act(rep, v);
            let pos = embed
                .binary_search(&img)
                .map_err(|_| internal("fixed points not stable under the quotient action"))?;
            act.push(pos);
        }
    }
    let module = FiniteGGroup::new(q, afix, act)?;
    Ok(QuotientFixed { module, coset_of, embed })
}

/// The image of a subgroup `h <= g` inside a quotient of `g`, as an abstract
/// subgroup of the quotient, with a deterministic h-lift (smallest element of
/// `h` in the coset) for every image element.
fn image_with_lifts(
    q: &FiniteGroup,
    coset_of: &[usize],
    h_sorted: &[usize],
) -> Result<(FiniteGroup, Vec<usize>, Vec<usize>)> {
    let image = sorted_dedup(&h_sorted.iter().map(|&x| coset_of[x]).collect::<Vec<_>>());
    let (hbar, hbar_sorted) = q.subgroup(&image)?;
    let lifts: Vec<usize> = hbar_sorted
        .iter()
        .map(|&ci| {
            h_sorted
                .iter()
                .copied()
                .find(|&x| coset_of[x] == ci)
                .expect("image element has a preimage in h")
        })
        .collect();
    Ok((hbar, hbar_sorted, lifts))
}

/// The action of an image subgroup (via its chosen lifts) on a fixed-point
/// subgroup of the original coefficients.
fn lifted_action_module(
    hbar: FiniteGroup,
    lifts: &[usize],
    h_sorted: &[usize],
    m: &FiniteGGroup,
    fixed_group: FiniteGroup,
    fixed_embed: &[usize],
) -> Result<FiniteGGroup> {
    let mut act = Vec::with_capacity(hbar.order() * fixed_group.order());
    for &lift in lifts {
        let hpos = h_sorted.binary_search(&lift).expect("lift is an element of h");
        for &v in fixed_embed {
            let img = m.act(hpos, v);
            let pos = fixed_embed
                .binary_search(&img)
                .map_err(|_| internal("fixed points not stable under the subgroup action"))?;
            act.push(pos);
        }
    }
    FiniteGGroup::new(hbar, fixed_group, act)
}

/// Verifies that mapping every source cocycle through `map` induces a
/// well-defined bijection of pointed sets onto the target.
fn verify_pointed_bijection(
    source: &H1PointedSet,
    target: &H1PointedSet,
    target_module: &FiniteGGroup,
    map: impl Fn(&[usize]) -> Result<Vec<usize>>,
) -> Result<(bool, String)> {
    let mut target_of: Vec<Option<usize>> = vec![None; source.len()];
    for z in source.cocycles() {
        let src = source.class_of(z).ok_or_else(|| internal("cocycle missing its class"))?;
        let image = map(z)?;
        if !is_cocycle(target_module, &image) {
            return Ok((false, format!("image of a class-{src} cocycle is not a cocycle")));
        }
        let dst = target
            .class_of(&image)
            .ok_or_else(|| internal("mapped cocycle missing from the target enumeration"))?;
        match target_of[src] {
            None => target_of[src] = Some(dst),
            Some(prev) if prev != dst => {
                return Ok((
                    false,
                    format!(
                        "not well defined: class {src} maps to both classes {prev} and {dst}"
                    ),
                ));
            }
            _ => {}
        }
    }
    let mut hit = vec![false; target.len()];
    for (src, dst) in target_of.iter().enumerate() {
        let dst = dst.ok_or_else(|| internal("class with no cocycles"))?;
        if hit[dst] {
            let other = target_of.iter().position(|d| *d == Some(dst)).unwrap();
            return Ok((
                false,
                format!("not injective: classes {other} and {src} both map to class {dst}"),
            ));
        }
        hit[dst] = true;
    }
    if let Some(missed) = hit.iter().position(|h| !h) {
        return Ok((false, format!("not surjective: target class {missed} is not hit")));
    }
    if target_of[source.distinguished_index()] != Some(target.distinguished_index()) {
        return Ok((false, "distinguished point is not preserved".into()));
    }
    Ok((true, format!("{} classes matched", source.len())))
}

/// Checks the Shapiro bijection H1(g, Ind_h^g A) -> H1(h, A) given by
/// restriction to `h` and evaluation at the identity.
pub fn shapiro_report(
    g: &FiniteGroup,
    h_elems: &[usize],
    m: &FiniteGGroup,
) -> Result<CheckReport> {
    let h_sorted = sorted_dedup(h_elems);
    let ind = induce(g, &h_sorted, m)?;
    let left = enumerate_h1(ind.module())?;
    let right = enumerate_h1(m)?;
    let (passed, why) = verify_pointed_bijection(&left, &right, m, |z| {
        Ok(h_sorted.iter().map(|&x| ind.value_at(z[x], g.id())).collect())
    })?;
    let detail = format!(
        "|H1(g, A*)| = {}, |H1(h, A)| = {}; {}",
        left.len(),
        right.len(),
        why
    );
    Ok(CheckReport::new("shapiro", passed, detail))
}

pub fn shapiro_check(g: &FiniteGroup, h_elems: &[usize], m: &FiniteGGroup) -> Result<bool> {
    shapiro_report(g, h_elems, m).map(|r| r.passed)
}

/// Checks injectivity of inflation H1(g/u, A^u) -> H1(g, A) for a normal
/// subgroup `u`.
pub fn inflation_report(m: &FiniteGGroup, u_elems: &[usize]) -> Result<CheckReport> {
    let qf = quotient_fixed_module(m, u_elems)?;
    let down = enumerate_h1(&qf.module)?;
    let top = enumerate_h1(m)?;
    let n = m.acting().order();
    let mut images: Vec<usize> = Vec::with_capacity(down.len());
    let mut passed = true;
    let mut why = format!("|H1(g/u, A^u)| = {} into |H1(g, A)| = {}", down.len(), top.len());
    for (i, zbar) in down.classes().iter().enumerate() {
        let z: Vec<usize> = (0..n).map(|x| qf.embed[zbar[qf.coset_of[x]]]).collect();
        if !is_cocycle(m, &z) {
            return Err(internal("inflation of a cocycle is not a cocycle"));
        }
        let cls = top
            .class_of(&z)
            .ok_or_else(|| internal("inflated cocycle missing from the enumeration"))?;
        if let Some(j) = images.iter().position(|&c| c == cls) {
            passed = false;
            why = format!("{why}; classes {j} and {i} inflate to the same class {cls}");
            break;
        }
        images.push(cls);
        if i == down.distinguished_index() && cls != top.distinguished_index() {
            return Err(internal("inflation moved the distinguished point"));
        }
    }
    Ok(CheckReport::new("inflation", passed, why))
}

pub fn inflation_injectivity_check(m: &FiniteGGroup, u_elems: &[usize]) -> Result<bool> {
    inflation_report(m, u_elems).map(|r| r.passed)
}

/// Checks the submodule isomorphism (Ind_H^J M)^A = Ind_{H/B}^{J/A} M^B,
/// B = H n A, as an explicit group isomorphism commuting with the
/// J/A-actions.
pub fn submodule_report(
    j: &FiniteGroup,
    h_elems: &[usize],
    a_elems: &[usize],
    m: &FiniteGGroup,
) -> Result<CheckReport> {
    let h_sorted = sorted_dedup(h_elems);
    let a_sorted = sorted_dedup(a_elems);
    if !j.is_normal(&a_sorted) {
        return Err(Error::NotNormal(format!("{a_sorted:?}")));
    }
    let ind = induce(j, &h_sorted, m)?;
    let astar = ind.module();

    // Left side: A-fixed points of the induced group, acted on by J/A.
    let fixed = astar.fixed_point_set(&a_sorted);
    let (lgroup, lembed) = astar.coeff().subgroup(&fixed)?;
    let (q, coset_of, reps) = j.quotient(&a_sorted)?;
    let mut act_l = Vec::with_capacity(q.order() * lgroup.order());
    for &rep in &reps {
        for &f in &lembed {
            let img = astar.act(rep, f);
            let pos = lembed
                .binary_search(&img)
                .map_err(|_| internal("A-fixed maps not stable under J/A"))?;
            act_l.push(pos);
        }
    }
    let lhs = FiniteGGroup::new(q.clone(), lgroup.clone(), act_l)?;

    // Right side: Ind_{H/B}^{J/A} M^B.
    let b: Vec<usize> = h_sorted.iter().copied().filter(|x| a_sorted.contains(x)).collect();
    let b_pos: Vec<usize> =
        b.iter().map(|x| h_sorted.binary_search(x).expect("B inside H")).collect();
    let (mb_group, mb_embed) = m.fixed_subgroup(&b_pos)?;
    let (hbar, hbar_sorted, lifts) = image_with_lifts(&q, &coset_of, &h_sorted)?;
    let m2 = lifted_action_module(hbar, &lifts, &h_sorted, m, mb_group, &mb_embed)?;
    let rhs = induce(&q, &hbar_sorted, &m2)?;
    let rhs_order = rhs.module().coeff().order();

    // The canonical map: restrict an A-fixed equivariant map to coset
    // representatives.
    let mut phi = Vec::with_capacity(lgroup.order());
    for &f in &lembed {
        let mut tuple = Vec::with_capacity(rhs.coset_count());
        for c in 0..rhs.coset_count() {
            let v = ind.value_at(f, reps[rhs.rep(c)]);
            let pos = mb_embed
                .binary_search(&v)
                .map_err(|_| internal("restricted value is not B-fixed"))?;
            tuple.push(pos);
        }
        phi.push(rhs.index_of_tuple(&tuple));
    }

    let mut detail = format!("|(A*)^A| = {}, |Ind M^B| = {}", lgroup.order(), rhs_order);
    if lgroup.order() != rhs_order {
        return Ok(CheckReport::new("submodule", false, format!("{detail}; orders differ")));
    }
    let mut seen = vec![false; rhs_order];
    for &img in &phi {
        if seen[img] {
            detail = format!("{detail}; map is not injective");
            return Ok(CheckReport::new("submodule", false, detail));
        }
        seen[img] = true;
    }
    for s1 in 0..lgroup.order() {
        for s2 in 0..lgroup.order() {
            if phi[lgroup.mul(s1, s2)] != rhs.module().coeff().mul(phi[s1], phi[s2]) {
                detail = format!("{detail}; not a homomorphism at ({s1}, {s2})");
                return Ok(CheckReport::new("submodule", false, detail));
            }
        }
    }
    for qi in 0..q.order() {
        for s in 0..lgroup.order() {
            if phi[lhs.act(qi, s)] != rhs.module().act(qi, phi[s]) {
                detail = format!("{detail}; does not commute with J/A at ({qi}, {s})");
                return Ok(CheckReport::new("submodule", false, detail));
            }
        }
    }
    Ok(CheckReport::new("submodule", true, format!("{detail}; isomorphism verified")))
}

pub fn submodule_lemma_check(
    j: &FiniteGroup,
    h_elems: &[usize],
    a_elems: &[usize],
    m: &FiniteGGroup,
) -> Result<bool> {
    submodule_report(j, h_elems, a_elems, m).map(|r| r.passed)
}

/// Checks the refined Shapiro bijection
/// H1(g/N, (A*)^N) = H1(h/(h n N), A^(h n N)) through the composite of the
/// submodule isomorphism and the Shapiro map, including injectivity of
/// h/(h n N) -> g/N.
pub fn refined_shapiro_report(
    g: &FiniteGroup,
    h_elems: &[usize],
    n_elems: &[usize],
    m: &FiniteGGroup,
) -> Result<CheckReport> {
    let h_sorted = sorted_dedup(h_elems);
    let n_sorted = sorted_dedup(n_elems);
    if !g.is_normal(&n_sorted) {
        return Err(Error::NotNormal(format!("{n_sorted:?}")));
    }
    let ind = induce(g, &h_sorted, m)?;
    let qf = quotient_fixed_module(ind.module(), &n_sorted)?;
    let left = enumerate_h1(&qf.module)?;

    let bprime: Vec<usize> =
        h_sorted.iter().copied().filter(|x| n_sorted.contains(x)).collect();
    let image_size = sorted_dedup(
        &h_sorted.iter().map(|&x| qf.coset_of[x]).collect::<Vec<_>>(),
    )
    .len();
    let eta_injective = image_size * bprime.len() == h_sorted.len();

    let b_pos: Vec<usize> =
        bprime.iter().map(|x| h_sorted.binary_search(x).expect("B' inside h")).collect();
    let (aprime_group, aprime_embed) = m.fixed_subgroup(&b_pos)?;
    let q = qf.module.acting().clone();
    let (hbar, hbar_sorted, lifts) = image_with_lifts(&q, &qf.coset_of, &h_sorted)?;
    let m2 = lifted_action_module(hbar, &lifts, &h_sorted, m, aprime_group, &aprime_embed)?;
    let right = enumerate_h1(&m2)?;

    let (bij, why) = verify_pointed_bijection(&left, &right, &m2, |z| {
        hbar_sorted
            .iter()
            .map(|&qi| {
                let fstar = qf.embed[z[qi]];
                let v = ind.value_at(fstar, g.id());
                aprime_embed
                    .binary_search(&v)
                    .map_err(|_| internal("evaluated value is not B'-fixed"))
            })
            .collect()
    })?;
    let passed = eta_injective && bij;
    let detail = format!(
        "eta injective: {eta_injective}; |H1(g/N, (A*)^N)| = {}, |H1(h/B', A^B')| = {}; {}",
        left.len(),
        right.len(),
        why
    );
    Ok(CheckReport::new("refined-shapiro", passed, detail))
}

pub fn refined_shapiro_check(
    g: &FiniteGroup,
    h_elems: &[usize],
    n_elems: &[usize],
    m: &FiniteGGroup,
) -> Result<bool> {
    refined_shapiro_report(g, h_elems, n_elems, m).map(|r| r.passed)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trivial_on(g: &FiniteGroup, h_elems: &[usize], a: FiniteGroup) -> FiniteGGroup {
        let (sub, _) = g.subgroup(h_elems).unwrap();
        FiniteGGroup::trivial(sub, a)
    }

    #[test]
    fn shapiro_z2_over_trivial_subgroup() {
        let g = FiniteGroup::cyclic(2);
        let m = trivial_on(&g, &[0], FiniteGroup::cyclic(3));
        let report = shapiro_report(&g, &[0], &m).unwrap();
        assert!(report.passed, "{}", report.detail);
        assert!(report.detail.contains("= 1"));
    }

    #[test]
    fn shapiro_s3_over_a3_matches_three_classes() {
        let s3 = FiniteGroup::symmetric3();
        // A3 = the 3-cycles with the identity: indices of even permutations.
        let a3: Vec<usize> = s3
            .all_subgroups()
            .unwrap()
            .into_iter()
            .find(|h| h.len() == 3)
            .unwrap();
        let m = trivial_on(&s3, &a3, FiniteGroup::cyclic(3));
        let right = enumerate_h1(&m).unwrap();
        assert_eq!(right.len(), 3);
        let report = shapiro_report(&s3, &a3, &m).unwrap();
        assert!(report.passed, "{}", report.detail);
        assert!(report.detail.contains("3 classes matched"), "{}", report.detail);
    }

    #[test]
    fn shapiro_index_one_degenerate() {
        let g = FiniteGroup::cyclic(2);
        let m = trivial_on(&g, &[0, 1], FiniteGroup::cyclic(2));
        assert!(shapiro_check(&g, &[0, 1], &m).unwrap());
    }

    #[test]
    fn inflation_c4_mod_c2() {
        let g = FiniteGroup::cyclic(4);
        let m = FiniteGGroup::trivial(g.clone(), FiniteGroup::cyclic(2));
        let report = inflation_report(&m, &[0, 2]).unwrap();
        assert!(report.passed, "{}", report.detail);
        assert!(report.detail.contains("= 2"), "{}", report.detail);
    }

    #[test]
    fn inflation_degenerate_subgroups() {
        let g = FiniteGroup::symmetric3();
        let m = FiniteGGroup::trivial(g.clone(), FiniteGroup::cyclic(3));
        // u = g: one class upstairs maps in.
        assert!(inflation_injectivity_check(&m, &(0..6).collect::<Vec<_>>()).unwrap());
        // u = trivial: inflation is the identity.
        assert!(inflation_injectivity_check(&m, &[0]).unwrap());
        // Non-normal u errors.
        let c2 = g.all_subgroups().unwrap().into_iter().find(|h| h.len() == 2).unwrap();
        assert_eq!(inflation_report(&m, &c2).unwrap_err().code(), "E_NORMAL");
    }

    #[test]
    fn submodule_c4_example_and_degenerates() {
        let j = FiniteGroup::cyclic(4);
        let m = trivial_on(&j, &[0, 2], FiniteGroup::cyclic(2));
        // The frozen example: H = A = 2Z/4.
        let report = submodule_report(&j, &[0, 2], &[0, 2], &m).unwrap();
        assert!(report.passed, "{}", report.detail);
        // A trivial: both sides are the plain induced module.
        assert!(submodule_lemma_check(&j, &[0, 2], &[0], &m).unwrap());
        // A = J with H = J.
        let mj = trivial_on(&j, &[0, 1, 2, 3], FiniteGroup::cyclic(2));
        assert!(submodule_lemma_check(&j, &[0, 1, 2, 3], &[0, 1, 2, 3], &mj).unwrap());
    }

    #[test]
    fn refined_shapiro_c4_example_and_degenerates() {
        let g = FiniteGroup::cyclic(4);
        let m = trivial_on(&g, &[0, 2], FiniteGroup::cyclic(2));
        let report = refined_shapiro_report(&g, &[0, 2], &[0, 2], &m).unwrap();
        assert!(report.passed, "{}", report.detail);
        // N trivial reduces to the plain Shapiro bijection.
        assert!(refined_shapiro_check(&g, &[0, 2], &[0], &m).unwrap());
        // N = g with h = g.
        let mg = trivial_on(&g, &[0, 1, 2, 3], FiniteGroup::cyclic(3));
        assert!(refined_shapiro_check(&g, &[0, 1, 2, 3], &[0, 1, 2, 3], &mg).unwrap());
    }

    #[test]
    fn refined_shapiro_nonabelian_case() {
        let s3 = FiniteGroup::symmetric3();
        let a3: Vec<usize> = s3
            .all_subgroups()
            .unwrap()
            .into_iter()
            .find(|h| h.len() == 3)
            .unwrap();
        let m = trivial_on(&s3, &a3, FiniteGroup::cyclic(3));
        // N = A3: h = A3 maps onto the trivial coset.
        let report = refined_shapiro_report(&s3, &a3, &a3, &m).unwrap();
        assert!(report.passed, "{}", report.detail);
    }
}
