//! Finite groups as fully validated multiplication tables.

use crate::{Error, Result};

/// A finite group on elements `0..order()`. Construction validates the
/// group laws: a unique two-sided identity, two-sided inverses, and
/// associativity (Light's test over a generating set, so validating the
/// order-512 tables produced by induction stays cheap).
///
/// All constructors in this crate place the identity at index 0, and
/// subgroup/quotient constructions preserve that convention because they
/// index by smallest element.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    mul: Vec<usize>,
    inv: Vec<usize>,
    id: usize,
}

impl std::fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FiniteGroup(order {})", self.order)
    }
}

impl FiniteGroup {
    /// Builds and validates a group from a square multiplication table.
    pub fn from_table(rows: &[Vec<usize>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidParameter("empty multiplication table".into()));
        }
        let mut mul = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::InvalidParameter(format!(
                    "multiplication table is not square: row of length {} in a table of {}",
                    row.len(),
                    n
                )));
            }
            for &v in row {
                if v >= n {
                    return Err(Error::InvalidParameter(format!(
                        "table entry {v} out of range for order {n}"
                    )));
                }
                mul.push(v);
            }
        }

        let id = (0..n)
            .find(|&e| (0..n).all(|x| mul[e * n + x] == x && mul[x * n + e] == x))
            .ok_or_else(|| Error::InvalidParameter("table has no two-sided identity".into()))?;

        let mut inv = vec![0usize; n];
        for x in 0..n {
            inv[x] = (0..n)
                .find(|&y| mul[x * n + y] == id && mul[y * n + x] == id)
                .ok_or_else(|| {
                    Error::InvalidParameter(format!("element {x} has no two-sided inverse"))
                })?;
        }

        let group = FiniteGroup { order: n, mul, inv, id };

        // Light's associativity test: with closure under the table given,
        // checking x(sy) = (xs)y for s in a generating set suffices.
        for &s in &group.generators() {
            for x in 0..n {
                for y in 0..n {
                    if group.mul(x, group.mul(s, y)) != group.mul(group.mul(x, s), y) {
                        return Err(Error::InvalidParameter(format!(
                            "table is not associative at ({x}, {s}, {y})"
                        )));
                    }
                }
            }
        }
        Ok(group)
    }

    /// Cyclic group of order `n`, element `i` = residue `i`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1);
        let rows: Vec<Vec<usize>> = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
        Self::from_table(&rows).expect("cyclic table is a group")
    }

    /// Trivial group.
    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    /// Klein four-group, element `2a + b` = (a, b) over Z/2 x Z/2.
    pub fn klein_four() -> Self {
        let rows: Vec<Vec<usize>> = (0..4).map(|i| (0..4).map(|j| i ^ j).collect()).collect();
        Self::from_table(&rows).expect("xor table is a group")
    }

    /// Symmetric group on three letters. Elements are the permutations of
    /// (0,1,2) in lexicographic one-line order, so the identity is index 0;
    /// the product `p*q` applies `q` first.
    pub fn symmetric3() -> Self {
        let perms: [[usize; 3]; 6] =
            [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let index_of = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
        let rows: Vec<Vec<usize>> = perms
            .iter()
            .map(|p| {
                perms
                    .iter()
                    .map(|q| index_of([p[q[0]], p[q[1]], p[q[2]]]))
                    .collect()
            })
            .collect();
        Self::from_table(&rows).expect("permutation table is a group")
    }

    /// Dihedral group of order 8, element `a + 4b` = r^a s^b with s r = r^-1 s.
    pub fn dihedral4() -> Self {
        let idx = |a: usize, b: usize| (a % 4) + 4 * (b % 2);
        let mut rows = vec![vec![0usize; 8]; 8];
        for a in 0..4 {
            for b in 0..2 {
                for c in 0..4 {
                    for d in 0..2 {
                        // (r^a s^b)(r^c s^d): pull r^c through s^b.
                        let shift = if b == 0 { a + c } else { a + 4 - c };
                        rows[idx(a, b)][idx(c, d)] = idx(shift % 4, b + d);
                    }
                }
            }
        }
        Self::from_table(&rows).expect("dihedral table is a group")
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn id(&self) -> usize {
        self.id
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.mul[x * self.order + y]
    }

    #[inline]
    pub fn inv(&self, x: usize) -> usize {
        self.inv[x]
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|x| (x..self.order).all(|y| self.mul(x, y) == self.mul(y, x)))
    }

    /// A small generating set, chosen deterministically: repeatedly adjoin
    /// the smallest element outside the subgroup generated so far.
    pub fn generators(&self) -> Vec<usize> {
        let mut generated = vec![false; self.order];
        generated[self.id] = true;
        let mut members = vec![self.id];
        let mut gens = Vec::new();
        while members.len() < self.order {
            let next = (0..self.order).find(|&x| !generated[x]).unwrap();
            gens.push(next);
            generated[next] = true;
            members.push(next);
            // Close under the table.
            let mut i = 0;
            while i < members.len() {
                for j in 0..members.len() {
                    for prod in [self.mul(members[i], members[j]), self.mul(members[j], members[i])]
                    {
                        if !generated[prod] {
                            generated[prod] = true;
                            members.push(prod);
                        }
                    }
                }
                i += 1;
            }
        }
        gens
    }

    /// Whether `elems` (as element indices) form a subgroup.
    pub fn is_subgroup(&self, elems: &[usize]) -> bool {
        let mut member = vec![false; self.order];
        for &x in elems {
            if x >= self.order {
                return false;
            }
            member[x] = true;
        }
        member[self.id]
            && elems
                .iter()
                .all(|&x| member[self.inv(x)] && elems.iter().all(|&y| member[self.mul(x, y)]))
    }

    /// Whether a subgroup on `elems` is normal.
    pub fn is_normal(&self, elems: &[usize]) -> bool {
        if !self.is_subgroup(elems) {
            return false;
        }
        let mut member = vec![false; self.order];
        for &x in elems {
            member[x] = true;
        }
        (0..self.order)
            .all(|x| elems.iter().all(|&u| member[self.mul(self.mul(x, u), self.inv(x))]))
    }

    /// Every subgroup, as sorted element lists ordered by (size, elements).
    /// Exhaustive over subsets, so restricted to order <= 16.
    pub fn all_subgroups(&self) -> Result<Vec<Vec<usize>>> {
        if self.order > 16 {
            return Err(Error::InvalidParameter(format!(
                "subgroup enumeration is exhaustive over subsets; order {} > 16",
                self.order
            )));
        }
        let mut subs = Vec::new();
        for mask in 0u32..(1 << self.order) {
            if mask & (1 << self.id) == 0 {
                continue;
            }
            let elems: Vec<usize> = (0..self.order).filter(|&x| mask & (1 << x) != 0).collect();
            if self.is_subgroup(&elems) {
                subs.push(elems);
            }
        }
        subs.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
        Ok(subs)
    }

    /// The abstract group on a subgroup, with its sorted element list (new
    /// index -> old index). Identity lands at new index 0.
    pub fn subgroup(&self, elems: &[usize]) -> Result<(FiniteGroup, Vec<usize>)> {
        let mut sorted: Vec<usize> = elems.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if !self.is_subgroup(&sorted) {
            return Err(Error::NotASubgroup(format!("{sorted:?} in a group of order {}", self.order)));
        }
        let pos = |x: usize| sorted.binary_search(&x).expect("closed subset");
        let rows: Vec<Vec<usize>> = sorted
            .iter()
            .map(|&x| sorted.iter().map(|&y| pos(self.mul(x, y))).collect())
            .collect();
        Ok((FiniteGroup::from_table(&rows)?, sorted))
    }

    /// The quotient by a normal subgroup. Returns the quotient group, the
    /// coset index of every element, and the coset representatives (the
    /// smallest element of each coset, so the identity coset is index 0).
    pub fn quotient(&self, normal_elems: &[usize]) -> Result<(FiniteGroup, Vec<usize>, Vec<usize>)> {
        let mut sorted: Vec<usize> = normal_elems.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if !self.is_subgroup(&sorted) {
            return Err(Error::NotASubgroup(format!("{sorted:?}")));
        }
        if !self.is_normal(&sorted) {
            return Err(Error::NotNormal(format!("{sorted:?}")));
        }
        let mut coset_of = vec![usize::MAX; self.order];
        let mut reps = Vec::new();
        for x in 0..self.order {
            if coset_of[x] != usize::MAX {
                continue;
            }
            let k = reps.len();
            reps.push(x);
            for &v in &sorted {
                coset_of[self.mul(x, v)] = k;
            }
        }
        let rows: Vec<Vec<usize>> = reps
            .iter()
            .map(|&r| reps.iter().map(|&s| coset_of[self.mul(r, s)]).collect())
            .collect();
        Ok((FiniteGroup::from_table(&rows)?, coset_of, reps))
    }
}
