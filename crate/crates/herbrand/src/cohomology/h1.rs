//! Enumeration of nonabelian first cohomology as a pointed set.
//!
//! A cocycle is a table `z: g -> A` with `z(xy) = z(x).(x.z(y))`; two
//! cocycles are equivalent when they differ by a coboundary twist
//! `z_a(x) = a^-1 . z(x) . (x.a)`. Cocycles are determined by their values
//! on a generating set, so enumeration assigns generator values, expands
//! each assignment along a fixed spanning recipe, and keeps the assignments
//! whose full tables satisfy the cocycle identity everywhere.

use std::collections::HashMap;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use super::FiniteGGroup;
use crate::{Error, Result};

/// Default ceiling on the number of candidate generator assignments
/// (`|A| ^ #generators`) a single enumeration may try.
pub const DEFAULT_ENUMERATION_BUDGET: u128 = 10_000_000;

/// The pointed set H1(g, A): canonical class representatives (each the
/// lexicographically least cocycle in its class), sorted, plus the index of
/// the unit cocycle's class and the full list of cocycles behind them.
#[derive(Clone, Debug)]
pub struct H1PointedSet {
    classes: Vec<Vec<usize>>,
    distinguished: usize,
    cocycles: Vec<Vec<usize>>,
    membership: HashMap<Vec<usize>, usize>,
}

impl H1PointedSet {
    /// Number of cohomology classes.
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Canonical representatives in lexicographic order.
    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    /// Index of the class of the unit cocycle.
    pub fn distinguished_index(&self) -> usize {
        self.distinguished
    }

    /// Every cocycle table, sorted lexicographically.
    pub fn cocycles(&self) -> &[Vec<usize>] {
        &self.cocycles
    }

    /// The class index of any cocycle from this enumeration.
    pub fn class_of(&self, table: &[usize]) -> Option<usize> {
        self.membership.get(table).copied()
    }
}

/// Whether `table` satisfies the cocycle identity for `m` at every pair.
pub fn is_cocycle(m: &FiniteGGroup, table: &[usize]) -> bool {
    let n = m.acting().order();
    if table.len() != n || table.iter().any(|&v| v >= m.coeff().order()) {
        return false;
    }
    (0..n).all(|x| {
        (0..n).all(|y| {
            table[m.acting().mul(x, y)] == m.coeff().mul(table[x], m.act(x, table[y]))
        })
    })
}

/// The unit cocycle (constant identity).
pub fn unit_cocycle(m: &FiniteGGroup) -> Vec<usize> {
    vec![m.coeff().id(); m.acting().order()]
}

/// The coboundary twist of a cocycle by `a`: `x -> a^-1 . z(x) . (x.a)`.
pub fn twist(m: &FiniteGGroup, table: &[usize], a: usize) -> Vec<usize> {
    let inv = m.coeff().inv(a);
    (0..table.len())
        .map(|x| m.coeff().mul(m.coeff().mul(inv, table[x]), m.act(x, a)))
        .collect()
}

/// Expansion recipe: `ops[i] = (target, source, gen_pos)` fills
/// `z(target) = z(source) . (source . assigned[gen_pos])` in an order that
/// reaches every element from the identity.
struct Recipe {
    gens: Vec<usize>,
    ops: Vec<(usize, usize, usize)>,
}

fn build_recipe(m: &FiniteGGroup) -> Recipe {
    let g = m.acting();
    let gens = g.generators();
    let mut known = vec![false; g.order()];
    known[g.id()] = true;
    let mut order = vec![g.id()];
    let mut ops = Vec::new();
    let mut i = 0;
    while i < order.len() {
        let x = order[i];
        for (pos, &s) in gens.iter().enumerate() {
            let t = g.mul(x, s);
            if !known[t] {
                known[t] = true;
                order.push(t);
                ops.push((t, x, pos));
            }
        }
        i += 1;
    }
    debug_assert!(known.iter().all(|&k| k));
    Recipe { gens, ops }
}

fn expand(m: &FiniteGGroup, recipe: &Recipe, assignment: usize) -> Option<Vec<usize>> {
    let na = m.coeff().order();
    let mut vals = vec![0usize; recipe.gens.len()];
    let mut rem = assignment;
    for i in (0..recipe.gens.len()).rev() {
        vals[i] = rem % na;
        rem /= na;
    }
    let mut table = vec![0usize; m.acting().order()];
    table[m.acting().id()] = m.coeff().id();
    for &(t, x, pos) in &recipe.ops {
        table[t] = m.coeff().mul(table[x], m.act(x, vals[pos]));
    }
    if is_cocycle(m, &table) {
        Some(table)
    } else {
        None
    }
}

fn candidate_count(m: &FiniteGGroup, recipe: &Recipe, budget: u128) -> Result<usize> {
    let required = (m.coeff().order() as u128).saturating_pow(recipe.gens.len() as u32);
    if required > budget {
        return Err(Error::BudgetExceeded { required, budget });
    }
    Ok(required as usize)
}

fn collect_seq(m: &FiniteGGroup, recipe: &Recipe, total: usize) -> Vec<Vec<usize>> {
    (0..total).filter_map(|i| expand(m, recipe, i)).collect()
}

#[cfg(feature = "parallel")]
fn collect_par(m: &FiniteGGroup, recipe: &Recipe, total: usize) -> Vec<Vec<usize>> {
    (0..total).into_par_iter().filter_map(|i| expand(m, recipe, i)).collect()
}

fn partition(m: &FiniteGGroup, mut cocycles: Vec<Vec<usize>>) -> H1PointedSet {
    cocycles.sort_unstable();
    let mut membership: HashMap<Vec<usize>, usize> = HashMap::with_capacity(cocycles.len());
    let mut classes = Vec::new();
    for z in &cocycles {
        if membership.contains_key(z) {
            continue;
        }
        let idx = classes.len();
        for a in 0..m.coeff().order() {
            let twisted = twist(m, z, a);
            debug_assert!(is_cocycle(m, &twisted));
            membership.entry(twisted).or_insert(idx);
        }
        // Sweeping in ascending order with whole orbits marked makes each
        // new representative the least element of its class.
        classes.push(z.clone());
    }
    let distinguished = *membership
        .get(&unit_cocycle(m))
        .expect("unit cocycle is always a cocycle");
    H1PointedSet { classes, distinguished, cocycles, membership }
}

/// Enumerates H1 with the default budget, fanning out over candidate
/// assignments when the `parallel` feature is enabled. The result is
/// deterministic either way.
pub fn enumerate_h1(m: &FiniteGGroup) -> Result<H1PointedSet> {
    enumerate_h1_with_budget(m, DEFAULT_ENUMERATION_BUDGET)
}

pub fn enumerate_h1_with_budget(m: &FiniteGGroup, budget: u128) -> Result<H1PointedSet> {
    let recipe = build_recipe(m);
    let total = candidate_count(m, &recipe, budget)?;
    #[cfg(feature = "parallel")]
    let tables = collect_par(m, &recipe, total);
    #[cfg(not(feature = "parallel"))]
    let tables = collect_seq(m, &recipe, total);
    Ok(partition(m, tables))
}

/// Sequential enumeration, regardless of feature flags.
pub fn enumerate_h1_seq(m: &FiniteGGroup) -> Result<H1PointedSet> {
    let recipe = build_recipe(m);
    let total = candidate_count(m, &recipe, DEFAULT_ENUMERATION_BUDGET)?;
    Ok(partition(m, collect_seq(m, &recipe, total)))
}

/// Parallel enumeration via rayon; merges into the same canonical order as
/// the sequential path.
#[cfg(feature = "parallel")]
pub fn enumerate_h1_par(m: &FiniteGGroup) -> Result<H1PointedSet> {
    let recipe = build_recipe(m);
    let total = candidate_count(m, &recipe, DEFAULT_ENUMERATION_BUDGET)?;
    Ok(partition(m, collect_par(m, &recipe, total)))
}
