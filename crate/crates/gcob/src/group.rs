//! Finite groups as explicit multiplication tables over element indices.
//!
//! Element 0 is always the identity. Tables are validated on construction
//! (identity row/column, Latin-square property, associativity, inverses),
//! so everything downstream may assume a genuine group.

use std::path::Path;

use crate::error::{Error, Result};

/// Default cap on group orders built from specs.
pub const DEFAULT_ORDER_BOUND: u64 = 64;

/// An immutable finite group given by its full multiplication table.
#[derive(Debug, Clone)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    /// Row-major: `table[a * order + b]` is the index of `a * b`.
    table: Vec<usize>,
    inverses: Vec<usize>,
    element_orders: Vec<usize>,
}

impl FiniteGroup {
    /// Validates and wraps a multiplication table. `table` is row-major,
    /// `order * order` entries, with element 0 acting as the identity.
    pub fn from_table(name: impl Into<String>, order: usize, table: Vec<usize>) -> Result<Self> {
        let name = name.into();
        if order == 0 {
            return Err(Error::InvalidTable("order must be positive".into()));
        }
        if table.len() != order * order {
            return Err(Error::InvalidTable(format!(
                "expected {} entries, got {}",
                order * order,
                table.len()
            )));
        }
        if let Some(&bad) = table.iter().find(|&&e| e >= order) {
            return Err(Error::InvalidTable(format!(
                "entry {bad} out of range [0, {order})"
            )));
        }
        for j in 0..order {
            if table[j] != j {
                return Err(Error::InvalidTable("row 0 must act as identity".into()));
            }
            if table[j * order] != j {
                return Err(Error::InvalidTable("column 0 must act as identity".into()));
            }
        }
        // Latin square: every row and column is a permutation
        for i in 0..order {
            let mut row_seen = vec![false; order];
            let mut col_seen = vec![false; order];
            for j in 0..order {
                let r = table[i * order + j];
                let c = table[j * order + i];
                if row_seen[r] {
                    return Err(Error::InvalidTable(format!("row {i} repeats element {r}")));
                }
                if col_seen[c] {
                    return Err(Error::InvalidTable(format!(
                        "column {i} repeats element {c}"
                    )));
                }
                row_seen[r] = true;
                col_seen[c] = true;
            }
        }
        for a in 0..order {
            for b in 0..order {
                let ab = table[a * order + b];
                for c in 0..order {
                    let bc = table[b * order + c];
                    if table[ab * order + c] != table[a * order + bc] {
                        return Err(Error::InvalidTable(format!(
                            "associativity fails at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        let mut inverses = vec![0; order];
        for a in 0..order {
            let inv = (0..order)
                .find(|&b| table[a * order + b] == 0)
                .expect("Latin square rows contain the identity");
            if table[inv * order + a] != 0 {
                return Err(Error::InvalidTable(format!(
                    "element {a} has no two-sided inverse"
                )));
            }
            inverses[a] = inv;
        }
        let mut element_orders = vec![0; order];
        for a in 0..order {
            let mut x = a;
            let mut ord = 1;
            while x != 0 {
                x = table[x * order + a];
                ord += 1;
            }
            element_orders[a] = ord;
        }
        Ok(Self {
            name,
            order,
            table,
            inverses,
            element_orders,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        0
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    /// `b * a * b^-1`.
    #[inline]
    pub fn conjugate(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(b, a), self.inv(b))
    }

    /// `[a, b] = a * b * a^-1 * b^-1`.
    #[inline]
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b)))
    }

    /// Multiplicative order of element `a`.
    #[inline]
    pub fn elem_order(&self, a: usize) -> usize {
        self.element_orders[a]
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (a + 1..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// `a^n` for a non-negative exponent.
    pub fn pow(&self, a: usize, n: usize) -> usize {
        let mut acc = 0;
        for _ in 0..n {
            acc = self.mul(acc, a);
        }
        acc
    }

    /// Smallest subgroup containing `seed`, as a sorted element list.
    pub fn closure_of(&self, seed: &[usize]) -> Vec<usize> {
        let mut member = vec![false; self.order];
        member[0] = true;
        let mut work: Vec<usize> = vec![0];
        for &s in seed {
            if !member[s] {
                member[s] = true;
                work.push(s);
            }
        }
        // close under products; inverses follow because the group is finite
        let mut i = 0;
        while i < work.len() {
            let a = work[i];
            i += 1;
            for j in 0..work.len() {
                let b = work[j];
                for p in [self.mul(a, b), self.mul(b, a)] {
                    if !member[p] {
                        member[p] = true;
                        work.push(p);
                    }
                }
            }
        }
        let mut out: Vec<usize> = (0..self.order).filter(|&x| member[x]).collect();
        out.sort_unstable();
        out
    }

    /// The commutator subgroup `[G, G]`: closure of all commutators.
    pub fn commutator_subgroup(&self) -> Vec<usize> {
        let mut seed = Vec::new();
        for a in 0..self.order {
            for b in 0..self.order {
                seed.push(self.commutator(a, b));
            }
        }
        seed.sort_unstable();
        seed.dedup();
        self.closure_of(&seed)
    }

    /// Number of connected components of the classifying space:
    /// the size of the abelianization `|G| / |[G, G]|`.
    pub fn pi0_count(&self) -> usize {
        let derived = self.commutator_subgroup().len();
        debug_assert_eq!(self.order % derived, 0, "Lagrange");
        self.order / derived
    }

    // ---- constructors -------------------------------------------------

    /// Cyclic group of order `n`, addition mod `n`.
    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("cyclic group needs order >= 1".into()));
        }
        let table = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i + j) % n))
            .collect();
        Self::from_table(format!("Z{n}"), n, table)
    }

    /// Dihedral group of the given (even) order `2n`, presented as
    /// `<r, s | r^n = s^2 = 1, s r = r^-1 s>`. Elements are `s^a r^b`
    /// indexed as `a*n + b`.
    pub fn dihedral_of_order(order: usize) -> Result<Self> {
        if order == 0 || !order.is_multiple_of(2) {
            return Err(Error::InvalidArgument(format!(
                "dihedral order must be even and positive, got {order}"
            )));
        }
        let n = order / 2;
        let idx = |a: usize, b: usize| a * n + b;
        let mut table = vec![0; order * order];
        for a in 0..2 {
            for b in 0..n {
                for c in 0..2 {
                    for d in 0..n {
                        // (s^a r^b)(s^c r^d): push r^b through s^c
                        let (na, nb) = if c == 0 {
                            (a, (b + d) % n)
                        } else {
                            ((a + 1) % 2, (n + d - b) % n)
                        };
                        table[idx(a, b) * order + idx(c, d)] = idx(na, nb);
                    }
                }
            }
        }
        Self::from_table(format!("D{order}"), order, table)
    }

    /// Dicyclic group of order `4n`, presented as
    /// `<r, s | r^(2n) = 1, r^n = s^2, s r = r^-1 s>`. Elements are
    /// `s^a r^b` with `b < 2n`, indexed as `a*2n + b`. `Dic2` is Q8.
    pub fn dicyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("dicyclic parameter must be >= 1".into()));
        }
        let m = 2 * n;
        let order = 4 * n;
        let idx = |a: usize, b: usize| a * m + b;
        let mut table = vec![0; order * order];
        for a in 0..2 {
            for b in 0..m {
                for c in 0..2 {
                    for d in 0..m {
                        let (na, nb) = if c == 0 {
                            (a, (b + d) % m)
                        } else if a == 0 {
                            (1, (m + d - b) % m)
                        } else {
                            // s^2 = r^n
                            (0, (n + m + d - b) % m)
                        };
                        table[idx(a, b) * order + idx(c, d)] = idx(na, nb);
                    }
                }
            }
        }
        Self::from_table(format!("Dic{n}"), order, table)
    }

    /// Symmetric group on `n` letters, `n <= 5`. Elements are the
    /// permutations of `0..n` in lexicographic one-line order, so the
    /// identity has index 0. The product `p * q` acts as `q` first.
    pub fn symmetric(n: usize) -> Result<Self> {
        if n == 0 || n > 5 {
            return Err(Error::InvalidArgument(format!(
                "symmetric group supported for 1 <= n <= 5, got {n}"
            )));
        }
        let perms = permutations(n);
        Self::from_permutations(format!("S{n}"), perms)
    }

    /// Alternating group on `n` letters, `n <= 5`.
    pub fn alternating(n: usize) -> Result<Self> {
        if n == 0 || n > 5 {
            return Err(Error::InvalidArgument(format!(
                "alternating group supported for 1 <= n <= 5, got {n}"
            )));
        }
        let perms: Vec<Vec<usize>> = permutations(n)
            .into_iter()
            .filter(|p| is_even_permutation(p))
            .collect();
        Self::from_permutations(format!("A{n}"), perms)
    }

    fn from_permutations(name: String, perms: Vec<Vec<usize>>) -> Result<Self> {
        let order = perms.len();
        let index_of = |p: &[usize]| perms.binary_search_by(|q| q.as_slice().cmp(p)).unwrap();
        let mut table = vec![0; order * order];
        for (i, p) in perms.iter().enumerate() {
            for (j, q) in perms.iter().enumerate() {
                let composed: Vec<usize> = (0..p.len()).map(|x| p[q[x]]).collect();
                table[i * order + j] = index_of(&composed);
            }
        }
        Self::from_table(name, order, table)
    }

    /// Direct product with componentwise multiplication; the pair `(g, h)`
    /// gets index `g * |H| + h`.
    pub fn direct_product(&self, other: &FiniteGroup) -> Result<Self> {
        let order = self.order * other.order;
        let idx = |g: usize, h: usize| g * other.order + h;
        let mut table = vec![0; order * order];
        for g1 in 0..self.order {
            for h1 in 0..other.order {
                for g2 in 0..self.order {
                    for h2 in 0..other.order {
                        table[idx(g1, h1) * order + idx(g2, h2)] =
                            idx(self.mul(g1, g2), other.mul(h1, h2));
                    }
                }
            }
        }
        Self::from_table(format!("{} x {}", self.name, other.name), order, table)
    }

    /// Parses the Cayley file format: line 1 is the order `n`, lines
    /// `2..n+1` hold `n` space-separated element indices (row `i`, column
    /// `j` = index of `i*j`). All group axioms are validated.
    pub fn from_cayley_text(name: impl Into<String>, text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let first = lines
            .next()
            .ok_or_else(|| Error::InvalidTable("empty file".into()))?;
        let order: usize = first
            .trim()
            .parse()
            .map_err(|_| Error::InvalidTable(format!("bad order line {first:?}")))?;
        let mut table = Vec::with_capacity(order * order);
        for _ in 0..order {
            let line = lines
                .next()
                .ok_or_else(|| Error::InvalidTable("missing table rows".into()))?;
            let row: Vec<usize> = line
                .split_whitespace()
                .map(|tok| {
                    tok.parse::<usize>()
                        .map_err(|_| Error::InvalidTable(format!("bad entry {tok:?}")))
                })
                .collect::<Result<_>>()?;
            if row.len() != order {
                return Err(Error::InvalidTable(format!(
                    "row has {} entries, expected {order}",
                    row.len()
                )));
            }
            table.extend(row);
        }
        if lines.next().is_some() {
            return Err(Error::InvalidTable("trailing content after table".into()));
        }
        Self::from_table(name, order, table)
    }

    pub fn from_cayley_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        let name = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| path.display().to_string());
        Self::from_cayley_text(name, &text)
    }

    /// Rename in place; used by builders to keep spec-derived names.
    pub(crate) fn with_name(mut self, name: String) -> Self {
        self.name = name;
        self
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..n).collect();
    loop {
        out.push(current.clone());
        // next_permutation in lexicographic order
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| current[i] < current[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| current[j] > current[i]).unwrap();
        current.swap(i, j);
        current[i + 1..].reverse();
    }
    out
}

fn is_even_permutation(p: &[usize]) -> bool {
    let mut inversions = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inversions += 1;
            }
        }
    }
    inversions % 2 == 0
}
