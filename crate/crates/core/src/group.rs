//! Finite abelian groups as direct sums of cyclic groups.
//!
//! A group is an ordered list of cyclic factor orders `n_0, …, n_{r-1}`.
//! Factor lists are not normalized: `Z/2 ⊕ Z/2 ⊕ Z/4` and `Z/4 ⊕ Z/2 ⊕ Z/2`
//! are different (isomorphic) objects, and factors of order 1 are allowed.
//!
//! Elements are indexed lexicographically with the first coordinate most
//! significant. That index is the storage order of every [`GroupFunction`].
//!
//! [`GroupFunction`]: crate::function::GroupFunction

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteAbelianGroup {
    factors: Vec<usize>,
    strides: Vec<usize>,
    order: usize,
}

/// Reduced coordinates of an element, one entry per cyclic factor.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    coords: Vec<usize>,
}

impl GroupElement {
    pub fn new(coords: Vec<usize>) -> Self {
        GroupElement { coords }
    }

    pub fn coords(&self) -> &[usize] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }
}

impl From<Vec<usize>> for GroupElement {
    fn from(coords: Vec<usize>) -> Self {
        GroupElement::new(coords)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl FiniteAbelianGroup {
    pub fn new(factors: Vec<usize>) -> Result<Self> {
        if let Some(bad) = factors.iter().find(|&&n| n == 0) {
            return Err(Error::InvalidGroup(format!("factor order {bad} must be >= 1")));
        }
        let mut order: usize = 1;
        for &n in &factors {
            order = order
                .checked_mul(n)
                .ok_or_else(|| Error::InvalidGroup("group order overflows".into()))?;
        }
        let mut strides = vec![1; factors.len()];
        for m in (0..factors.len().saturating_sub(1)).rev() {
            strides[m] = strides[m + 1] * factors[m + 1];
        }
        Ok(FiniteAbelianGroup { factors, strides, order })
    }

    pub fn trivial() -> Self {
        FiniteAbelianGroup::new(Vec::new()).expect("empty factor list is valid")
    }

    pub fn cyclic(n: usize) -> Result<Self> {
        FiniteAbelianGroup::new(vec![n])
    }

    /// `n` copies of the factors of `self`.
    pub fn power(&self, n: usize) -> Result<Self> {
        let mut factors = Vec::with_capacity(self.factors.len() * n);
        for _ in 0..n {
            factors.extend_from_slice(&self.factors);
        }
        FiniteAbelianGroup::new(factors)
    }

    pub fn direct_sum(&self, other: &FiniteAbelianGroup) -> Result<Self> {
        let mut factors = self.factors.clone();
        factors.extend_from_slice(&other.factors);
        FiniteAbelianGroup::new(factors)
    }

    pub fn factors(&self) -> &[usize] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    pub fn contains(&self, x: &GroupElement) -> bool {
        x.coords.len() == self.factors.len()
            && x.coords.iter().zip(&self.factors).all(|(&c, &n)| c < n)
    }

    pub fn check(&self, x: &GroupElement) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(Error::NotAnElement { coords: x.coords.clone(), group: self.to_string() })
        }
    }

    /// Validated element from raw coordinates.
    pub fn element(&self, coords: Vec<usize>) -> Result<GroupElement> {
        let x = GroupElement::new(coords);
        self.check(&x)?;
        Ok(x)
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement::new(vec![0; self.rank()])
    }

    /// Generator of factor `m`.
    pub fn unit(&self, m: usize) -> GroupElement {
        let mut coords = vec![0; self.rank()];
        if self.factors[m] > 1 {
            coords[m] = 1;
        }
        GroupElement::new(coords)
    }

    pub fn index_of(&self, x: &GroupElement) -> usize {
        x.coords.iter().zip(&self.strides).map(|(c, s)| c * s).sum()
    }

    pub fn element_at(&self, index: usize) -> GroupElement {
        let mut coords = vec![0; self.rank()];
        self.write_coords(index, &mut coords);
        GroupElement::new(coords)
    }

    pub fn write_coords(&self, mut index: usize, out: &mut [usize]) {
        for (slot, &stride) in out.iter_mut().zip(&self.strides) {
            *slot = index / stride;
            index %= stride;
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.order).map(move |i| self.element_at(i))
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        GroupElement::new(
            a.coords
                .iter()
                .zip(&b.coords)
                .zip(&self.factors)
                .map(|((&x, &y), &n)| (x + y) % n)
                .collect(),
        )
    }

    pub fn neg(&self, a: &GroupElement) -> GroupElement {
        GroupElement::new(
            a.coords.iter().zip(&self.factors).map(|(&x, &n)| (n - x) % n).collect(),
        )
    }

    pub fn sub(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        self.add(a, &self.neg(b))
    }

    pub fn scale(&self, a: &GroupElement, k: usize) -> GroupElement {
        GroupElement::new(
            a.coords.iter().zip(&self.factors).map(|(&x, &n)| (x * (k % n)) % n).collect(),
        )
    }

    /// `index(a + b)` without allocating.
    pub fn add_index(&self, a: usize, b: usize) -> usize {
        let mut out = 0;
        let (mut a, mut b) = (a, b);
        for m in 0..self.rank() {
            let s = self.strides[m];
            let (xa, xb) = (a / s, b / s);
            a %= s;
            b %= s;
            out += ((xa + xb) % self.factors[m]) * s;
        }
        out
    }

    /// `index(a - b)` without allocating.
    pub fn sub_index(&self, a: usize, b: usize) -> usize {
        let mut out = 0;
        let (mut a, mut b) = (a, b);
        for m in 0..self.rank() {
            let s = self.strides[m];
            let n = self.factors[m];
            let (xa, xb) = (a / s, b / s);
            a %= s;
            b %= s;
            out += ((xa + n - xb) % n) * s;
        }
        out
    }

    pub fn element_order(&self, a: &GroupElement) -> usize {
        a.coords
            .iter()
            .zip(&self.factors)
            .map(|(&x, &n)| n / gcd(x, n))
            .fold(1, lcm)
    }

    /// Sorted indices of the subgroup generated by `generators`.
    pub fn subgroup_indices(&self, generators: &[GroupElement]) -> Result<Vec<usize>> {
        for g in generators {
            self.check(g)?;
        }
        let gens: Vec<usize> = generators.iter().map(|g| self.index_of(g)).collect();
        let mut seen = vec![false; self.order];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(x) = queue.pop_front() {
            for &g in &gens {
                let y = self.add_index(x, g);
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        Ok((0..self.order).filter(|&i| seen[i]).collect())
    }

    /// True when the canonical pairing of `g` and `x` is exactly 1, decided
    /// in integer arithmetic.
    pub fn pairs_trivially(&self, g: &GroupElement, x: &GroupElement) -> bool {
        let l = self.factors.iter().copied().fold(1, lcm) as u128;
        let total: u128 = g
            .coords
            .iter()
            .zip(&x.coords)
            .zip(&self.factors)
            .map(|((&a, &b), &n)| ((a * b) % n) as u128 * (l / n as u128))
            .sum();
        total.is_multiple_of(l)
    }

    /// Sorted indices of `{g : <g, h> = 1 for every generator h}`.
    pub fn annihilator(&self, generators: &[GroupElement]) -> Result<Vec<usize>> {
        for h in generators {
            self.check(h)?;
        }
        Ok(self
            .elements()
            .enumerate()
            .filter(|(_, g)| generators.iter().all(|h| self.pairs_trivially(g, h)))
            .map(|(i, _)| i)
            .collect())
    }
}

impl fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.factors.iter().map(|n| n.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Group literal: comma-separated factor orders, e.g. `"4,2,2"`. An empty
/// literal is the trivial group.
impl FromStr for FiniteAbelianGroup {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(FiniteAbelianGroup::trivial());
        }
        let factors = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad factor order {t:?} in group literal {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        FiniteAbelianGroup::new(factors)
    }
}

/// Projection `G -> G/H` onto an explicit cyclic decomposition of the
/// quotient.
#[derive(Debug, Clone)]
pub struct QuotientMap {
    source: FiniteAbelianGroup,
    target: FiniteAbelianGroup,
    // columns[t][m]: coefficient of source coordinate m in target coordinate t
    columns: Vec<Vec<i128>>,
}

impl QuotientMap {
    pub fn source(&self) -> &FiniteAbelianGroup {
        &self.source
    }

    pub fn target(&self) -> &FiniteAbelianGroup {
        &self.target
    }

    pub fn project(&self, x: &GroupElement) -> GroupElement {
        let coords = self
            .columns
            .iter()
            .zip(self.target.factors())
            .map(|(col, &d)| {
                let v: i128 = col.iter().zip(x.coords()).map(|(&c, &xm)| c * xm as i128).sum();
                v.rem_euclid(d as i128) as usize
            })
            .collect();
        GroupElement::new(coords)
    }

    pub fn project_index(&self, index: usize) -> usize {
        self.target.index_of(&self.project(&self.source.element_at(index)))
    }

    /// Membership mask over the source of `π^{-1}(V)`, `V` given as target indices.
    pub fn preimage(&self, target_set: &[usize]) -> Vec<bool> {
        let mut in_v = vec![false; self.target.order()];
        for &v in target_set {
            in_v[v] = true;
        }
        (0..self.source.order()).map(|i| in_v[self.project_index(i)]).collect()
    }

    /// Pullback `f ∘ π` of a real function on the quotient.
    pub fn pullback(&self, f: &[f64]) -> Vec<f64> {
        (0..self.source.order()).map(|i| f[self.project_index(i)]).collect()
    }
}

/// Quotient of `g` by the subgroup generated by `subgroup_generators`.
///
/// The relation lattice (`n_m e_m` together with the generators) is
/// diagonalized by integer row and column operations; the accumulated column
/// transform gives the projection.
pub fn quotient_map(
    g: &FiniteAbelianGroup,
    subgroup_generators: &[GroupElement],
) -> Result<QuotientMap> {
    for h in subgroup_generators {
        g.check(h)?;
    }
    let r = g.rank();
    let mut rows: Vec<Vec<i128>> = Vec::with_capacity(r + subgroup_generators.len());
    for (m, &n) in g.factors().iter().enumerate() {
        let mut row = vec![0i128; r];
        row[m] = n as i128;
        rows.push(row);
    }
    for h in subgroup_generators {
        rows.push(h.coords().iter().map(|&c| c as i128).collect());
    }
    let mut transform: Vec<Vec<i128>> =
        (0..r).map(|i| (0..r).map(|j| i128::from(i == j)).collect()).collect();
    let diag = diagonalize(&mut rows, &mut transform);

    let mut factors = Vec::new();
    let mut columns = Vec::new();
    for (t, &d) in diag.iter().enumerate() {
        if d > 1 {
            factors.push(d as usize);
            columns.push((0..r).map(|m| transform[m][t].rem_euclid(d)).collect());
        }
    }
    Ok(QuotientMap { source: g.clone(), target: FiniteAbelianGroup::new(factors)?, columns })
}

// Diagonalizes `a` (rows x r, full column rank) in place. Column operations are
// mirrored into `q`. Returns the r diagonal entries (positive).
fn diagonalize(a: &mut [Vec<i128>], q: &mut [Vec<i128>]) -> Vec<i128> {
    let rows = a.len();
    let cols = q.len();
    let mut diag = Vec::with_capacity(cols);
    for t in 0..cols {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if a[i][j] != 0
                        && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                diag.push(0);
                break;
            };
            a.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            for row in q.iter_mut() {
                row.swap(t, pj);
            }
            let pivot = a[t][t];
            let mut clean = true;
            for i in (t + 1)..rows {
                let f = a[i][t] / pivot;
                if f != 0 {
                    let (top, rest) = a.split_at_mut(i);
                    for (x, &y) in rest[0][t..].iter_mut().zip(&top[t][t..]) {
                        *x -= f * y;
                    }
                }
                clean &= a[i][t] == 0;
            }
            for j in (t + 1)..cols {
                let f = a[t][j] / pivot;
                if f != 0 {
                    for row in a.iter_mut() {
                        row[j] -= f * row[t];
                    }
                    for row in q.iter_mut() {
                        row[j] -= f * row[t];
                    }
                }
                clean &= a[t][j] == 0;
            }
            if clean {
                diag.push(pivot.abs());
                break;
            }
        }
    }
    diag
}

pub fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: usize, b: usize) -> usize {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}
