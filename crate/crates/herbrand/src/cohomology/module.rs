//! Groups with an action of a finite group, and induction along a subgroup.

use super::FiniteGroup;
use crate::{Error, Result};

/// Largest induced coefficient group the crate will materialize. The
/// multiplication table and its validation are quadratic in this order, so
/// the cap keeps every construction at desk scale.
pub const MAX_INDUCED_ORDER: u128 = 512;

/// A finite group `A` with a left action of a finite group `g` by
/// automorphisms. Construction validates that every `act(x, .)` is an
/// automorphism of `A` and that `act` is a homomorphism `g -> Aut(A)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FiniteGGroup {
    g: FiniteGroup,
    a: FiniteGroup,
    act: Vec<usize>,
}

impl FiniteGGroup {
    pub fn new(g: FiniteGroup, a: FiniteGroup, act: Vec<usize>) -> Result<Self> {
        let (ng, na) = (g.order(), a.order());
        if act.len() != ng * na {
            return Err(Error::InvalidParameter(format!(
                "action table has {} entries, expected {}",
                act.len(),
                ng * na
            )));
        }
        if act.iter().any(|&v| v >= na) {
            return Err(Error::InvalidParameter("action table entry out of range".into()));
        }
        let m = FiniteGGroup { g, a, act };
        for x in 0..ng {
            let mut seen = vec![false; na];
            for v in 0..na {
                let img = m.act(x, v);
                if seen[img] {
                    return Err(Error::InvalidParameter(format!(
                        "action of element {x} is not injective"
                    )));
                }
                seen[img] = true;
            }
            for v in 0..na {
                for w in 0..na {
                    if m.act(x, m.a.mul(v, w)) != m.a.mul(m.act(x, v), m.act(x, w)) {
                        return Err(Error::InvalidParameter(format!(
                            "action of element {x} is not multiplicative"
                        )));
                    }
                }
            }
        }
        for v in 0..na {
            if m.act(m.g.id(), v) != v {
                return Err(Error::InvalidParameter("identity must act trivially".into()));
            }
        }
        for x in 0..ng {
            for y in 0..ng {
                let xy = m.g.mul(x, y);
                for v in 0..na {
                    if m.act(xy, v) != m.act(x, m.act(y, v)) {
                        return Err(Error::InvalidParameter(format!(
                            "action is not a homomorphism at ({x}, {y})"
                        )));
                    }
                }
            }
        }
        Ok(m)
    }

    /// The trivial action of `g` on `a`.
    pub fn trivial(g: FiniteGroup, a: FiniteGroup) -> Self {
        let act = (0..g.order()).flat_map(|_| 0..a.order()).collect();
        FiniteGGroup { g, a, act }
    }

    pub fn acting(&self) -> &FiniteGroup {
        &self.g
    }

    pub fn coeff(&self) -> &FiniteGroup {
        &self.a
    }

    #[inline]
    pub fn act(&self, x: usize, v: usize) -> usize {
        self.act[x * self.a.order() + v]
    }

    /// Coefficient elements fixed by every listed acting element.
    pub fn fixed_point_set(&self, by: &[usize]) -> Vec<usize> {
        (0..self.a.order())
            .filter(|&v| by.iter().all(|&x| self.act(x, v) == v))
            .collect()
    }

    /// The fixed points under a subgroup, as an abstract group together with
    /// the embedding list (new index -> coefficient index). Fixed points are
    /// closed under multiplication because the subgroup acts by
    /// automorphisms.
    pub fn fixed_subgroup(&self, by: &[usize]) -> Result<(FiniteGroup, Vec<usize>)> {
        self.a.subgroup(&self.fixed_point_set(by))
    }
}

/// An induced coefficient group `A* = Ind_h^g A`: the h-equivariant maps
/// `f: g -> A` (`f(hx) = h.f(x)`) under pointwise multiplication, with `g`
/// acting by right translation of the argument, `(x.f)(y) = f(yx)`.
///
/// Elements are tuples of values on the right-coset representatives of `h`
/// (the smallest element of each coset), encoded lexicographically, so
/// `|A*| = |A|^[g:h]` and every canonical map built on top is reproducible.
#[derive(Clone, Debug)]
pub struct InducedModule {
    module: FiniteGGroup,
    base: FiniteGGroup,
    /// Right-coset representative for each coset index.
    reps: Vec<usize>,
    /// Coset index of every element of `g`.
    coset_of: Vec<usize>,
    /// For `y = h . rep(coset_of(y))`, the index of `h` in the base acting
    /// group (position within the sorted subgroup element list).
    hpart: Vec<usize>,
}

/// Induces the `h`-group `m` along `h <= g`. `h_elems` lists the subgroup
/// inside `g`; `m`'s acting group must be the abstract subgroup on those
/// elements (as produced by [`FiniteGroup::subgroup`]).
pub fn induce(g: &FiniteGroup, h_elems: &[usize], m: &FiniteGGroup) -> Result<InducedModule> {
    let (sub, sorted) = g.subgroup(h_elems)?;
    if *m.acting() != sub {
        return Err(Error::InvalidParameter(
            "coefficient group's action is not by the named subgroup".into(),
        ));
    }
    let n = g.order();
    let na = m.coeff().order();

    let mut coset_of = vec![usize::MAX; n];
    let mut hpart = vec![0usize; n];
    let mut reps = Vec::new();
    for x in 0..n {
        if coset_of[x] != usize::MAX {
            continue;
        }
        let k = reps.len();
        reps.push(x);
        for (pos, &h) in sorted.iter().enumerate() {
            let y = g.mul(h, x);
            coset_of[y] = k;
            hpart[y] = pos;
        }
    }
    let k = reps.len();

    let order = (na as u128)
        .checked_pow(k as u32)
        .filter(|&o| o <= MAX_INDUCED_ORDER)
        .ok_or(Error::BudgetExceeded {
            required: (na as u128).saturating_pow(k as u32),
            budget: MAX_INDUCED_ORDER,
        })? as usize;

    let decode = |mut f: usize| -> Vec<usize> {
        let mut t = vec![0usize; k];
        for i in (0..k).rev() {
            t[i] = f % na;
            f /= na;
        }
        t
    };
    let encode = |t: &[usize]| -> usize { t.iter().fold(0, |acc, &v| acc * na + v) };

    let tuples: Vec<Vec<usize>> = (0..order).map(decode).collect();
    let rows: Vec<Vec<usize>> = tuples
        .iter()
        .map(|s| {
            tuples
                .iter()
                .map(|t| {
                    let prod: Vec<usize> =
                        (0..k).map(|i| m.coeff().mul(s[i], t[i])).collect();
                    encode(&prod)
                })
                .collect()
        })
        .collect();
    let astar = FiniteGroup::from_table(&rows)?;

    let mut act = Vec::with_capacity(n * order);
    for x in 0..n {
        for t in &tuples {
            let moved: Vec<usize> = (0..k)
                .map(|i| {
                    let y = g.mul(reps[i], x);
                    m.act(hpart[y], t[coset_of[y]])
                })
                .collect();
            act.push(encode(&moved));
        }
    }
    let module = FiniteGGroup::new(g.clone(), astar, act)?;
    Ok(InducedModule { module, base: m.clone(), reps, coset_of, hpart })
}

impl InducedModule {
    /// The induced g-group itself.
    pub fn module(&self) -> &FiniteGGroup {
        &self.module
    }

    /// The base h-group that was induced.
    pub fn base(&self) -> &FiniteGGroup {
        &self.base
    }

    pub fn coset_count(&self) -> usize {
        self.reps.len()
    }

    pub fn rep(&self, coset: usize) -> usize {
        self.reps[coset]
    }

    /// The value tuple of induced element `f` on the coset representatives.
    pub fn tuple(&self, f: usize) -> Vec<usize> {
        let na = self.base.coeff().order();
        let mut t = vec![0usize; self.reps.len()];
        let mut rem = f;
        for i in (0..self.reps.len()).rev() {
            t[i] = rem % na;
            rem /= na;
        }
        t
    }

    pub fn index_of_tuple(&self, t: &[usize]) -> usize {
        let na = self.base.coeff().order();
        t.iter().fold(0, |acc, &v| acc * na + v)
    }

    /// The value `f(x)` of the equivariant map encoded by `f` at any group
    /// element: expand `x = h . rep` and apply the base action.
    pub fn value_at(&self, f: usize, x: usize) -> usize {
        let t = self.tuple(f);
        self.base.act(self.hpart[x], t[self.coset_of[x]])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn action_validation_rejects_non_automorphisms() {
        let g = FiniteGroup::cyclic(2);
        let a = FiniteGroup::cyclic(4);
        // x -> x + 1 is a bijection but not multiplicative.
        let mut act: Vec<usize> = (0..4).collect();
        act.extend([1, 2, 3, 0]);
        assert!(FiniteGGroup::new(g.clone(), a.clone(), act).is_err());
        // Squaring on C4 is multiplicative but not injective.
        let mut act: Vec<usize> = (0..4).collect();
        act.extend([0, 2, 0, 2]);
        assert!(FiniteGGroup::new(g.clone(), a.clone(), act).is_err());
        // Inversion is an automorphism and an involution: valid.
        let mut act: Vec<usize> = (0..4).collect();
        act.extend((0..4).map(|v| a.inv(v)));
        assert!(FiniteGGroup::new(g, a, act).is_ok());
    }

    #[test]
    fn action_must_be_a_homomorphism() {
        // C4 acting on C4 where the generator acts by inversion but its
        // square (which is not the identity of C4) is claimed to act
        // trivially... that IS the homomorphism through C2; break it by
        // letting element 2 act by inversion as well.
        let g = FiniteGroup::cyclic(4);
        let a = FiniteGroup::cyclic(4);
        let invrow: Vec<usize> = (0..4).map(|v| a.inv(v)).collect();
        let idrow: Vec<usize> = (0..4).collect();
        let good: Vec<usize> =
            [idrow.clone(), invrow.clone(), idrow.clone(), invrow.clone()].concat();
        assert!(FiniteGGroup::new(g.clone(), a.clone(), good).is_ok());
        let bad: Vec<usize> = [idrow.clone(), invrow.clone(), invrow, idrow].concat();
        assert!(FiniteGGroup::new(g, a, bad).is_err());
    }

    #[test]
    fn induce_full_subgroup_is_identity() {
        // h = g: A* is A with the original action.
        let s3 = FiniteGroup::symmetric3();
        let (sub, elems) = s3.subgroup(&(0..6).collect::<Vec<_>>()).unwrap();
        // Conjugation action of S3 on itself.
        let act: Vec<usize> =
            (0..6).flat_map(|x| (0..6).map(move |v| (x, v))).map(|(x, v)| {
                sub.mul(sub.mul(x, v), sub.inv(x))
            }).collect();
        let m = FiniteGGroup::new(sub.clone(), sub.clone(), act).unwrap();
        let ind = induce(&s3, &elems, &m).unwrap();
        assert_eq!(ind.module().coeff().order(), 6);
        for x in 0..6 {
            for v in 0..6 {
                assert_eq!(ind.module().act(x, v), m.act(x, v));
                assert_eq!(ind.value_at(v, x), m.act(x, v));
            }
        }
    }

    #[test]
    fn induce_from_trivial_subgroup_swaps_coordinates() {
        // g = Z/2, h = 1, A = Z/3: A* = Z/3 x Z/3 with coordinate swap.
        let g = FiniteGroup::cyclic(2);
        let (triv, elems) = g.subgroup(&[0]).unwrap();
        let m = FiniteGGroup::trivial(triv, FiniteGroup::cyclic(3));
        let ind = induce(&g, &elems, &m).unwrap();
        let astar = ind.module();
        assert_eq!(astar.coeff().order(), 9);
        for f in 0..9 {
            let t = ind.tuple(f);
            let swapped = ind.index_of_tuple(&[t[1], t[0]]);
            assert_eq!(astar.act(1, f), swapped);
            assert_eq!(astar.act(0, f), f);
        }
    }

    #[test]
    fn induce_trivial_coefficients_stay_trivial() {
        let g = FiniteGroup::dihedral4();
        let (triv, elems) = g.subgroup(&[0]).unwrap();
        let m = FiniteGGroup::trivial(triv, FiniteGroup::trivial());
        let ind = induce(&g, &elems, &m).unwrap();
        assert_eq!(ind.module().coeff().order(), 1);
    }

    #[test]
    fn induce_respects_equivariance() {
        // Values of the encoded map on a full coset follow f(hx) = h.f(x).
        let d4 = FiniteGroup::dihedral4();
        let sub_elems = vec![0, 2];
        let (sub, elems) = d4.subgroup(&sub_elems).unwrap();
        // The order-2 subgroup acts on C4 by inversion.
        let a = FiniteGroup::cyclic(4);
        let mut act: Vec<usize> = (0..4).collect();
        act.extend((0..4).map(|v| a.inv(v)));
        let m = FiniteGGroup::new(sub, a, act).unwrap();
        let ind = induce(&d4, &elems, &m).unwrap();
        assert_eq!(ind.coset_count(), 4);
        assert_eq!(ind.module().coeff().order(), 256);
        for f in [0usize, 17, 200, 255] {
            for x in 0..8 {
                for (pos, &h) in elems.iter().enumerate() {
                    let lhs = ind.value_at(f, d4.mul(h, x));
                    let rhs = m.act(pos, ind.value_at(f, x));
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn induce_rejects_oversized_and_mismatched_inputs() {
        let d4 = FiniteGroup::dihedral4();
        let (triv, elems) = d4.subgroup(&[0]).unwrap();
        // 4^8 = 65536 > cap.
        let m = FiniteGGroup::trivial(triv.clone(), FiniteGroup::cyclic(4));
        assert_eq!(induce(&d4, &elems, &m).unwrap_err().code(), "E_BUDGET");
        // Acting group mismatch: action by C2 but subgroup is trivial.
        let m = FiniteGGroup::trivial(FiniteGroup::cyclic(2), FiniteGroup::cyclic(3));
        assert_eq!(induce(&d4, &elems, &m).unwrap_err().code(), "E_PARAM");
    }
}
