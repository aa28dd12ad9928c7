//! The fixed verification battery.
//!
//! Acting groups: the cyclic groups C1..C8, the Klein four-group, S3, and
//! D4, with every subgroup of each. Coefficient groups: C2, C3, C4, S3.
//! Actions, in order:
//!   - trivial: always included;
//!   - inversion: for the abelian coefficients C3 and C4, one action per
//!     index-2 subgroup K of the acting group (elements of K act trivially,
//!     everything else inverts);
//!   - conjugation: when both the acting group and the coefficients are S3,
//!     via the first isomorphism in lexicographic order.
//!
//! Combinations whose induced coefficient group would exceed
//! [`INDUCED_ORDER_CAP`] or whose enumeration would exceed the default
//! budget are skipped and counted rather than failed: the caps are part of
//! the battery's definition, not a soft limit.

use serde::Serialize;

use super::checks::{
    inflation_report, refined_shapiro_report, shapiro_report, submodule_report,
};
use super::module::MAX_INDUCED_ORDER;
use super::{FiniteGGroup, FiniteGroup};
use crate::{Error, Result};

/// Battery-level alias for the induced-order cap shared with [`super::induce`].
pub const INDUCED_ORDER_CAP: u128 = MAX_INDUCED_ORDER;

#[derive(Clone, Debug, Serialize)]
pub struct BatteryRow {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct BatteryReport {
    pub rows: Vec<BatteryRow>,
    /// Combinations skipped because of the size caps.
    pub skipped: usize,
}

impl BatteryReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &BatteryRow> {
        self.rows.iter().filter(|r| !r.passed)
    }
}

fn acting_zoo() -> Vec<(String, FiniteGroup)> {
    let mut zoo: Vec<(String, FiniteGroup)> =
        (1..=8).map(|n| (format!("C{n}"), FiniteGroup::cyclic(n))).collect();
    zoo.push(("V4".into(), FiniteGroup::klein_four()));
    zoo.push(("S3".into(), FiniteGroup::symmetric3()));
    zoo.push(("D4".into(), FiniteGroup::dihedral4()));
    zoo
}

fn coefficient_zoo() -> Vec<(String, FiniteGroup)> {
    vec![
        ("C2".into(), FiniteGroup::cyclic(2)),
        ("C3".into(), FiniteGroup::cyclic(3)),
        ("C4".into(), FiniteGroup::cyclic(4)),
        ("S3".into(), FiniteGroup::symmetric3()),
    ]
}

/// The first isomorphism from `g` onto `target` in lexicographic order on
/// the image vector, if one exists.
fn first_isomorphism(g: &FiniteGroup, target: &FiniteGroup) -> Option<Vec<usize>> {
    fn extend(
        g: &FiniteGroup,
        t: &FiniteGroup,
        image: &mut [usize],
        used: &mut [bool],
        depth: usize,
    ) -> bool {
        let n = g.order();
        if depth == n {
            return (0..n)
                .all(|x| (0..n).all(|y| image[g.mul(x, y)] == t.mul(image[x], image[y])));
        }
        for cand in 0..n {
            if used[cand] {
                continue;
            }
            image[depth] = cand;
            used[cand] = true;
            // Prune: partial homomorphism on already-assigned pairs.
            let ok = (0..=depth).all(|x| {
                (0..=depth).all(|y| {
                    let p = g.mul(x, y);
                    p > depth || image[p] == t.mul(image[x], image[y])
                })
            });
            if ok && extend(g, t, image, used, depth + 1) {
                return true;
            }
            used[cand] = false;
            image[depth] = usize::MAX;
        }
        false
    }
    let n = g.order();
    if n != target.order() {
        return None;
    }
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if extend(g, target, &mut image, &mut used, 0) {
        Some(image)
    } else {
        None
    }
}

/// The documented list of actions of `h` on coefficient group `a`.
fn actions_on(h: &FiniteGroup, a_name: &str, a: &FiniteGroup) -> Result<Vec<(String, FiniteGGroup)>> {
    let mut out = vec![("trivial".to_string(), FiniteGGroup::trivial(h.clone(), a.clone()))];
    if a_name == "C3" || a_name == "C4" {
        let index2: Vec<Vec<usize>> = h
            .all_subgroups()?
            .into_iter()
            .filter(|k| k.len() * 2 == h.order())
            .collect();
        for (i, kernel) in index2.iter().enumerate() {
            let act: Vec<usize> = (0..h.order())
                .flat_map(|x| {
                    let inverts = !kernel.contains(&x);
                    (0..a.order()).map(move |v| (v, inverts))
                })
                .map(|(v, inverts)| if inverts { a.inv(v) } else { v })
                .collect();
            out.push((format!("inversion-k{i}"), FiniteGGroup::new(h.clone(), a.clone(), act)?));
        }
    }
    if a_name == "S3" && h.order() == 6 && !h.is_abelian() {
        if let Some(iso) = first_isomorphism(h, a) {
            let act: Vec<usize> = (0..h.order())
                .flat_map(|x| (0..a.order()).map(move |v| (x, v)))
                .map(|(x, v)| a.mul(a.mul(iso[x], v), a.inv(iso[x])))
                .collect();
            out.push(("conjugation".to_string(), FiniteGGroup::new(h.clone(), a.clone(), act)?));
        }
    }
    Ok(out)
}

fn subgroup_label(elems: &[usize]) -> String {
    let parts: Vec<String> = elems.iter().map(|e| e.to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

/// Runs a closure per battery combination; `Err(BudgetExceeded)` from the
/// row body counts as a skip, every other error aborts.
fn push_row(
    rows: &mut Vec<BatteryRow>,
    skipped: &mut usize,
    name: String,
    body: impl FnOnce() -> Result<super::checks::CheckReport>,
) -> Result<()> {
    match body() {
        Ok(report) => {
            rows.push(BatteryRow { name, passed: report.passed, detail: report.detail });
            Ok(())
        }
        Err(Error::BudgetExceeded { .. }) => {
            *skipped += 1;
            Ok(())
        }
        Err(other) => Err(other),
    }
}

/// The Shapiro block: every (g, h <= g, A, action) combination within caps,
/// checking the explicit bijection (which subsumes the cardinality
/// invariant |H1(g, A*)| = |H1(h, A)|).
pub fn shapiro_battery() -> Result<BatteryReport> {
    let mut rows = Vec::new();
    let mut skipped = 0usize;
    for (g_name, g) in acting_zoo() {
        for h_elems in g.all_subgroups()? {
            let (sub, sorted) = g.subgroup(&h_elems)?;
            for (a_name, a) in coefficient_zoo() {
                for (act_name, m) in actions_on(&sub, &a_name, &a)? {
                    let name = format!(
                        "shapiro g={g_name} h={} A={a_name} action={act_name}",
                        subgroup_label(&sorted)
                    );
                    push_row(&mut rows, &mut skipped, name, || shapiro_report(&g, &sorted, &m))?;
                }
            }
        }
    }
    Ok(BatteryReport { rows, skipped })
}

/// The full battery: the Shapiro block plus inflation injectivity over all
/// normal subgroups, the submodule isomorphism over all (normal A, H)
/// pairs, and the refined Shapiro bijection over all (normal N, h) pairs.
pub fn full_battery() -> Result<BatteryReport> {
    let mut report = shapiro_battery()?;
    let rows = &mut report.rows;
    let skipped = &mut report.skipped;

    for (g_name, g) in acting_zoo() {
        let normals: Vec<Vec<usize>> =
            g.all_subgroups()?.into_iter().filter(|u| g.is_normal(u)).collect();

        for u in &normals {
            for (a_name, a) in coefficient_zoo() {
                for (act_name, m) in actions_on(&g, &a_name, &a)? {
                    let name = format!(
                        "inflation g={g_name} u={} A={a_name} action={act_name}",
                        subgroup_label(u)
                    );
                    push_row(rows, skipped, name, || inflation_report(&m, u))?;
                }
            }
        }

        for h_elems in g.all_subgroups()? {
            let (sub, sorted) = g.subgroup(&h_elems)?;
            for (a_name, a) in coefficient_zoo() {
                for (act_name, m) in actions_on(&sub, &a_name, &a)? {
                    for n in &normals {
                        let name_sub = format!(
                            "submodule J={g_name} H={} A={} M={a_name} action={act_name}",
                            subgroup_label(&sorted),
                            subgroup_label(n)
                        );
                        push_row(rows, skipped, name_sub, || {
                            submodule_report(&g, &sorted, n, &m)
                        })?;
                        let name_ref = format!(
                            "refined g={g_name} h={} N={} A={a_name} action={act_name}",
                            subgroup_label(&sorted),
                            subgroup_label(n)
                        );
                        push_row(rows, skipped, name_ref, || {
                            refined_shapiro_report(&g, &sorted, n, &m)
                        })?;
                    }
                }
            }
        }
    }
    Ok(report)
}
