//! The genus-tuple monoid engine.
//!
//! A genus-n element over a group G is a sequence of pairs
//! `(g_1,k_1)...(g_n,k_n)` whose reversed commutator product
//! `[k_n,g_n][k_(n-1),g_(n-1)]...[k_1,g_1]` is the identity, with
//! `[a,b] = a b a^-1 b^-1`. Valid tuples are enumerated exhaustively and
//! closed under the rewrite moves with a union-find; the class counts per
//! genus are peeled into generator counts `r_1, r_2, ...` using the free
//! abelian structure of the quotient monoid (violations are reported,
//! never papered over).
//!
//! A pair contributes `[k,g]` to the boundary; a pair whose contribution
//! is the identity is a valid genus-1 element on its own, so a tuple block
//! splits exactly where a contribution is trivial. The closure identifies
//! decomposable blocks only through their factors (transpositions realize
//! the commutativity of the monoid product), while blocks of pairs with
//! nontrivial contributions are additionally identified under the full
//! handle-interchange mapping classes of the two-handle subsurface,
//! computed from the hyperelliptic braid lifts (see `braid`). Every move
//! preserves the boundary product exactly.
//!
//! Two independent oracles live here as well: the Euclidean canonical form
//! for cyclic groups at genus 1, and the matrix-orbit count over prime
//! fields that must agree with the closed formula for elementary abelian
//! groups.

use crate::error::{Error, Result};
use crate::formulas::{gcd, is_prime};
use crate::group::FiniteGroup;
use crate::union_find::UnionFind;

/// Default cap on raw (pre-validation) tuple counts per enumeration.
pub const DEFAULT_TUPLE_BUDGET: u64 = 10_000_000;

/// Smaller cap used when probing one genus beyond the requested rank, to
/// decide the `truncated` flag without large hidden costs.
pub const DEFAULT_PROBE_BUDGET: u64 = 1_000_000;

/// One handle decoration: a base label `g` and a twist label `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GenusPair {
    pub g: usize,
    pub k: usize,
}

/// A sequence of pairs; the genus is the length. The empty tuple is the
/// monoid identity.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct GenusTuple {
    pub pairs: Vec<GenusPair>,
}

impl GenusTuple {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn new(pairs: Vec<GenusPair>) -> Self {
        Self { pairs }
    }

    pub fn from_pairs(pairs: &[(usize, usize)]) -> Self {
        Self {
            pairs: pairs.iter().map(|&(g, k)| GenusPair { g, k }).collect(),
        }
    }

    pub fn genus(&self) -> usize {
        self.pairs.len()
    }

    /// Monoid product: plain concatenation. Both operands must refer to the
    /// same ambient group for the result to mean anything.
    pub fn concat(&self, other: &GenusTuple) -> GenusTuple {
        let mut pairs = self.pairs.clone();
        pairs.extend_from_slice(&other.pairs);
        GenusTuple { pairs }
    }
}

/// The product `[k_n,g_n][k_(n-1),g_(n-1)]...[k_1,g_1]`; the tuple is valid
/// iff this is the identity. The empty product is the identity.
pub fn boundary_product(group: &FiniteGroup, t: &GenusTuple) -> usize {
    let mut acc = group.identity();
    for p in &t.pairs {
        acc = group.mul(group.commutator(p.k, p.g), acc);
    }
    acc
}

pub fn is_valid(group: &FiniteGroup, t: &GenusTuple) -> bool {
    boundary_product(group, t) == group.identity()
}

fn check_position(t: &GenusTuple, i: usize, need_next: bool) -> Result<()> {
    let limit = if need_next {
        t.genus().saturating_sub(1)
    } else {
        t.genus()
    };
    if i >= limit {
        return Err(Error::InvalidArgument(format!(
            "position {i} out of range for genus {}",
            t.genus()
        )));
    }
    Ok(())
}

/// Move A at position `i` (0-based): `(g, k) -> (g, h^a k g^b)` with
/// `h = k g k^-1`. Preserves `[k_i, g_i]`, hence validity. Exponents are
/// cyclic and may be given in any range.
pub fn move_a(group: &FiniteGroup, t: &GenusTuple, i: usize, a: usize, b: usize) -> Result<GenusTuple> {
    check_position(t, i, false)?;
    let GenusPair { g, k } = t.pairs[i];
    let h = group.conjugate(g, k);
    let new_k = group.mul(
        group.mul(group.pow(h, a % group.elem_order(h)), k),
        group.pow(g, b % group.elem_order(g)),
    );
    let mut out = t.clone();
    out.pairs[i].k = new_k;
    Ok(out)
}

/// Move B at positions `(i, i+1)`: applicable when `k_(i+1) = k_i^-1`,
/// rewriting `(g1, k)(g2, k^-1)` to `(g1^-1, k^-1)(k^-2 g2^-1 k^2, k)`.
/// Returns `None` when the pattern does not match or when the rewritten
/// tuple fails the boundary constraint.
pub fn move_b(group: &FiniteGroup, t: &GenusTuple, i: usize) -> Result<Option<GenusTuple>> {
    check_position(t, i, true)?;
    match move_b_unchecked(group, t, i) {
        Some(out) if is_valid(group, &out) => Ok(Some(out)),
        _ => Ok(None),
    }
}

fn move_b_unchecked(group: &FiniteGroup, t: &GenusTuple, i: usize) -> Option<GenusTuple> {
    let GenusPair { g: g1, k } = t.pairs[i];
    let GenusPair { g: g2, k: k2 } = t.pairs[i + 1];
    if k2 != group.inv(k) {
        return None;
    }
    let k_inv = group.inv(k);
    let k_sq = group.mul(k, k);
    let k_inv_sq = group.mul(k_inv, k_inv);
    let mut out = t.clone();
    out.pairs[i] = GenusPair {
        g: group.inv(g1),
        k: k_inv,
    };
    out.pairs[i + 1] = GenusPair {
        g: group.mul(group.mul(k_inv_sq, group.inv(g2)), k_sq),
        k,
    };
    Some(out)
}

/// Move C, clockwise: the interchange of adjacent handles,
/// `(g, k)(g', k') -> (g', k') (c' g c'^-1, c' k c'^-1)` with
/// `c' = [k', g']`. The pair that moves right is conjugated coordinatewise
/// by the contribution of the pair it passes, which keeps the product of
/// the two affected contributions fixed; on pairs with trivial
/// contributions this is a plain transposition.
pub fn move_c_cw(group: &FiniteGroup, t: &GenusTuple, i: usize) -> Result<GenusTuple> {
    check_position(t, i, true)?;
    let GenusPair { g, k } = t.pairs[i];
    let c2 = group.commutator(t.pairs[i + 1].k, t.pairs[i + 1].g);
    let mut out = t.clone();
    out.pairs[i] = t.pairs[i + 1];
    out.pairs[i + 1] = GenusPair {
        g: group.conjugate(g, c2),
        k: group.conjugate(k, c2),
    };
    Ok(out)
}

/// Move C, counter-clockwise: the inverse interchange,
/// `(g, k)(g', k') -> (c^-1 g' c, c^-1 k' c) (g, k)` with `c = [k, g]`.
pub fn move_c_ccw(group: &FiniteGroup, t: &GenusTuple, i: usize) -> Result<GenusTuple> {
    check_position(t, i, true)?;
    let GenusPair { g: g2, k: k2 } = t.pairs[i + 1];
    let c_inv = group.inv(group.commutator(t.pairs[i].k, t.pairs[i].g));
    let mut out = t.clone();
    out.pairs[i] = GenusPair {
        g: group.conjugate(g2, c_inv),
        k: group.conjugate(k2, c_inv),
    };
    out.pairs[i + 1] = t.pairs[i];
    Ok(out)
}

/// Move D at position `i`: `(g, k) -> (g k g^-1, g^-1)`. Preserves
/// `[k_i, g_i]`; on a commuting pair this is `(g, k) -> (k, g^-1)`.
pub fn move_d(group: &FiniteGroup, t: &GenusTuple, i: usize) -> Result<GenusTuple> {
    check_position(t, i, false)?;
    let GenusPair { g, k } = t.pairs[i];
    let mut out = t.clone();
    out.pairs[i] = GenusPair {
        g: group.conjugate(k, g),
        k: group.inv(g),
    };
    Ok(out)
}

// ---- the two-handle mapping classes -------------------------------------

/// Word machinery for the mapping classes of the two-handle subsurface,
/// in the hyperelliptic model: pi1 is free on A2..A5 (the even subgroup of
/// the 5-fold free product of Z2), the boundary is
/// `W2 = A5 A4^-1 A3 A2^-1 A5^-1 A4 A3^-1 A2`, and the braid generators of
/// the 5-punctured disk lift to automorphisms fixing W2 exactly. Conjugated
/// through a change of basis, they act on a block `(g_i,k_i)(g_j,k_j)` while
/// preserving `[k_j,g_j][k_i,g_i]`.
mod braid {
    pub type Word = Vec<i8>; // letters 1..=4; negative is the inverse

    fn reduce(w: &[i8]) -> Word {
        let mut out: Word = Vec::with_capacity(w.len());
        for &l in w {
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        out
    }

    fn inv(w: &[i8]) -> Word {
        w.iter().rev().map(|&l| -l).collect()
    }

    pub fn subst(w: &[i8], imgs: &[Word; 4]) -> Word {
        let mut out = Vec::new();
        for &l in w {
            let img = &imgs[(l.unsigned_abs() - 1) as usize];
            if l > 0 {
                out.extend_from_slice(img);
            } else {
                out.extend(inv(img));
            }
        }
        reduce(&out)
    }

    fn compose(f: &[Word; 4], g: &[Word; 4]) -> [Word; 4] {
        [
            subst(&f[0], g),
            subst(&f[1], g),
            subst(&f[2], g),
            subst(&f[3], g),
        ]
    }

    #[cfg(test)]
    pub fn boundary() -> Word {
        vec![4, -3, 2, -1, -4, 3, -2, 1]
    }

    pub fn lift(i: usize, invert: bool) -> [Word; 4] {
        let mut imgs: [Word; 4] = [vec![1], vec![2], vec![3], vec![4]];
        if i == 0 {
            for (j, img) in imgs.iter_mut().enumerate().skip(1) {
                *img = vec![j as i8 + 1, if invert { -1 } else { 1 }];
            }
        } else {
            let a = i as i8;
            if invert {
                imgs[(a - 1) as usize] = vec![a + 1];
                imgs[a as usize] = vec![a + 1, -a, a + 1];
            } else {
                imgs[(a - 1) as usize] = vec![a, -(a + 1), a];
                imgs[a as usize] = vec![a];
            }
        }
        imgs
    }

    /// Change of basis with `Theta(W2) = [A4^-1,A5^-1][A2^-1,A3^-1]`, the
    /// boundary shape of a tuple block read off as
    /// `(A2,A3,A4,A5) = (k_i^-1, g_i^-1, k_j^-1, g_j^-1)`.
    pub fn theta() -> [Word; 4] {
        [vec![1, 2], vec![2], vec![3, 4, -1], vec![4, -1]]
    }

    pub fn theta_inv() -> [Word; 4] {
        [vec![1, -2], vec![2], vec![3, -4], vec![4, 1, -2]]
    }

    /// The eight block moves (four braid lifts and their inverses) in tuple
    /// coordinates.
    pub fn block_moves() -> Vec<[Word; 4]> {
        let th = theta();
        let th_inv = theta_inv();
        let mut out = Vec::with_capacity(8);
        for i in 0..4 {
            for invert in [false, true] {
                out.push(compose(&compose(&th_inv, &lift(i, invert)), &th));
            }
        }
        out
    }

}

fn block_move_table() -> &'static Vec<[braid::Word; 4]> {
    use std::sync::OnceLock;
    static TABLE: OnceLock<Vec<[braid::Word; 4]>> = OnceLock::new();
    TABLE.get_or_init(braid::block_moves)
}

// ---- enumeration ------------------------------------------------------

/// The set of valid tuples of one genus, stored as packed codes in
/// lexicographic order. Index positions are dense and stable.
#[derive(Debug, Clone)]
pub struct TupleSet {
    order: usize,
    genus: usize,
    bits: u32,
    codes: Vec<u64>,
}

impl TupleSet {
    pub fn len(&self) -> usize {
        self.codes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codes.is_empty()
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn get(&self, index: usize) -> GenusTuple {
        let mut buf = vec![(0usize, 0usize); self.genus];
        self.decode(self.codes[index], &mut buf);
        GenusTuple {
            pairs: buf.iter().map(|&(g, k)| GenusPair { g, k }).collect(),
        }
    }

    pub fn index_of(&self, t: &GenusTuple) -> Option<usize> {
        if t.genus() != self.genus || t.pairs.iter().any(|p| p.g >= self.order || p.k >= self.order)
        {
            return None;
        }
        let buf: Vec<(usize, usize)> = t.pairs.iter().map(|p| (p.g, p.k)).collect();
        self.codes.binary_search(&self.encode(&buf)).ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = GenusTuple> + '_ {
        (0..self.len()).map(|i| self.get(i))
    }

    fn index_of_code(&self, code: u64) -> Option<usize> {
        self.codes.binary_search(&code).ok()
    }

    fn encode(&self, buf: &[(usize, usize)]) -> u64 {
        let mut code = 0u64;
        for &(g, k) in buf {
            code = code << self.bits | g as u64;
            code = code << self.bits | k as u64;
        }
        code
    }

    fn decode(&self, mut code: u64, buf: &mut [(usize, usize)]) {
        let mask = (1u64 << self.bits) - 1;
        for slot in buf.iter_mut().rev() {
            let k = (code & mask) as usize;
            code >>= self.bits;
            let g = (code & mask) as usize;
            code >>= self.bits;
            *slot = (g, k);
        }
    }
}

fn coord_bits(order: usize) -> u32 {
    usize::BITS - (order - 1).max(1).leading_zeros()
}

/// Enumerates every valid tuple of the given genus in lexicographic order
/// over the flattened coordinates `(g_1, k_1, ..., g_n, k_n)`.
///
/// The raw tuple count `|G|^(2 genus)` must stay within `budget`.
pub fn enumerate_valid(group: &FiniteGroup, genus: usize, budget: u64) -> Result<TupleSet> {
    let order = group.order();
    let raw = (order as u128)
        .checked_pow(2 * genus as u32)
        .ok_or(Error::Overflow("raw tuple count"))?;
    if raw > budget as u128 {
        return Err(Error::BudgetExceeded {
            needed: raw,
            budget,
        });
    }
    let bits = coord_bits(order);
    if 2 * genus as u32 * bits > 64 {
        return Err(Error::InvalidArgument(format!(
            "genus {genus} tuples over order {order} do not fit the packed encoding"
        )));
    }
    let mut set = TupleSet {
        order,
        genus,
        bits,
        codes: Vec::new(),
    };
    if genus == 0 {
        set.codes.push(0);
        return Ok(set);
    }
    // pairs bucketed by their commutator value, each bucket sorted, so the
    // last coordinate pair can be matched directly instead of scanned
    let mut by_commutator: Vec<Vec<(usize, usize)>> = vec![Vec::new(); order];
    for g in 0..order {
        for k in 0..order {
            by_commutator[group.commutator(k, g)].push((g, k));
        }
    }
    let mut prefix = vec![(0usize, 0usize); genus];
    enumerate_rec(group, &by_commutator, &mut prefix, 0, 0, &mut set);
    Ok(set)
}

fn enumerate_rec(
    group: &FiniteGroup,
    by_commutator: &[Vec<(usize, usize)>],
    prefix: &mut Vec<(usize, usize)>,
    depth: usize,
    partial: usize,
    set: &mut TupleSet,
) {
    let genus = prefix.len();
    if depth == genus - 1 {
        // the last pair must contribute the inverse of the partial product
        let needed = group.inv(partial);
        let base = set.encode(&prefix[..depth]);
        let shift = 2 * set.bits;
        for &(g, k) in &by_commutator[needed] {
            set.codes
                .push(base << shift | (g as u64) << set.bits | k as u64);
        }
        return;
    }
    for g in 0..group.order() {
        for k in 0..group.order() {
            prefix[depth] = (g, k);
            let partial = group.mul(group.commutator(k, g), partial);
            enumerate_rec(group, by_commutator, prefix, depth + 1, partial, set);
        }
    }
}

// ---- orbit closure ----------------------------------------------------

/// The valid tuples of one genus partitioned into equivalence classes
/// under the rewrite moves.
#[derive(Debug, Clone)]
pub struct OrbitPartition {
    set: TupleSet,
    roots: Vec<u32>,
    class_count: usize,
    rejected_b_moves: u64,
}

impl OrbitPartition {
    pub fn len(&self) -> usize {
        self.set.len()
    }

    pub fn is_empty(&self) -> bool {
        self.set.is_empty()
    }

    pub fn genus(&self) -> usize {
        self.set.genus()
    }

    pub fn class_count(&self) -> usize {
        self.class_count
    }

    /// B-move applications whose rewrite left the valid set and were skipped.
    pub fn rejected_b_moves(&self) -> u64 {
        self.rejected_b_moves
    }

    pub fn tuples(&self) -> &TupleSet {
        &self.set
    }

    pub fn index_of(&self, t: &GenusTuple) -> Option<usize> {
        self.set.index_of(t)
    }

    /// Class id (the resolved union-find root) of the tuple at `index`.
    pub fn class_of_index(&self, index: usize) -> usize {
        self.roots[index] as usize
    }

    pub fn class_of(&self, t: &GenusTuple) -> Option<usize> {
        self.index_of(t).map(|i| self.class_of_index(i))
    }

    pub fn same_class(&self, a: &GenusTuple, b: &GenusTuple) -> Option<bool> {
        Some(self.class_of(a)? == self.class_of(b)?)
    }

    /// Lexicographically least tuple of every class, in code order.
    pub fn representatives(&self) -> Vec<GenusTuple> {
        self.representative_indices()
            .into_iter()
            .map(|i| self.set.get(i))
            .collect()
    }

    pub fn representative_indices(&self) -> Vec<usize> {
        let mut seen = std::collections::HashSet::new();
        let mut out = Vec::with_capacity(self.class_count);
        for i in 0..self.set.len() {
            if seen.insert(self.roots[i]) {
                out.push(i);
            }
        }
        out
    }
}

/// Enumerates the valid tuples of `genus` and closes them under every
/// applicable move: A and D at each position; pattern-matched B merged only
/// while the rewrite stays valid; the interchange C at each adjacent
/// position (the transposition instance whenever a trivial contribution
/// makes the block split there, the conjugated interchange when both
/// contributions are nontrivial); and, on non-split blocks, the full
/// two-handle mapping classes. Genus-1 closure reduces to the two
/// simplified moves `(g,k) ~ (g, k g^m)` and `(g,k) ~ (k, g^-1)`.
pub fn orbit_classes(group: &FiniteGroup, genus: usize, budget: u64) -> Result<OrbitPartition> {
    let set = enumerate_valid(group, genus, budget)?;
    let n = set.len();
    let e = group.identity();
    let mut uf = UnionFind::new(n);
    let mut rejected_b = 0u64;
    let mut base = vec![(0usize, 0usize); genus];
    let mut scratch = vec![(0usize, 0usize); genus];
    let block_moves = block_move_table();
    let lookup = |set: &TupleSet, buf: &[(usize, usize)]| -> usize {
        set.index_of_code(set.encode(buf))
            .expect("moves must preserve the boundary constraint")
    };
    for idx in 0..n {
        set.decode(set.codes[idx], &mut base);
        for i in 0..genus {
            let (g, k) = base[i];
            // move A, single step k -> k*g; higher powers follow by
            // transitivity (h^a k g^b = k g^(a+b) since h = k g k^-1)
            scratch.copy_from_slice(&base);
            scratch[i].1 = group.mul(k, g);
            uf.union(idx, lookup(&set, &scratch));
            // move D
            scratch.copy_from_slice(&base);
            scratch[i] = (group.conjugate(k, g), group.inv(g));
            uf.union(idx, lookup(&set, &scratch));
        }
        for i in 0..genus.saturating_sub(1) {
            let (g1, k1) = base[i];
            let (g2, k2) = base[i + 1];
            let c1 = group.commutator(k1, g1);
            let c2 = group.commutator(k2, g2);
            // move B
            if k2 == group.inv(k1) {
                let k_sq = group.mul(k1, k1);
                let k_inv_sq = group.mul(k2, k2);
                scratch.copy_from_slice(&base);
                scratch[i] = (group.inv(g1), k2);
                scratch[i + 1] = (group.mul(group.mul(k_inv_sq, group.inv(g2)), k_sq), k1);
                let boundary = scratch.iter().fold(e, |acc, &(g, k)| {
                    group.mul(group.commutator(k, g), acc)
                });
                if boundary == e {
                    uf.union(idx, lookup(&set, &scratch));
                } else {
                    rejected_b += 1;
                }
            }
            // move C: the block splits where a contribution is trivial, and
            // the corresponding interchange instance is the transposition
            if c1 == e || c2 == e {
                scratch.copy_from_slice(&base);
                scratch.swap(i, i + 1);
                uf.union(idx, lookup(&set, &scratch));
            }
            if c1 != e && c2 != e {
                // conjugated interchange, both directions
                scratch.copy_from_slice(&base);
                scratch[i] = (g2, k2);
                scratch[i + 1] = (group.conjugate(g1, c2), group.conjugate(k1, c2));
                uf.union(idx, lookup(&set, &scratch));
                let c1_inv = group.inv(c1);
                scratch.copy_from_slice(&base);
                scratch[i] = (group.conjugate(g2, c1_inv), group.conjugate(k2, c1_inv));
                scratch[i + 1] = (g1, k1);
                uf.union(idx, lookup(&set, &scratch));
                // two-handle mapping classes on the non-split block, gated
                // to instances that keep the block non-split
                let vals = [
                    group.inv(k1),
                    group.inv(g1),
                    group.inv(k2),
                    group.inv(g2),
                ];
                for mv in block_moves {
                    let a2 = eval_word(&mv[0], &vals, group);
                    let a3 = eval_word(&mv[1], &vals, group);
                    let a4 = eval_word(&mv[2], &vals, group);
                    let a5 = eval_word(&mv[3], &vals, group);
                    let p1 = (group.inv(a3), group.inv(a2));
                    let p2 = (group.inv(a5), group.inv(a4));
                    if group.commutator(p1.1, p1.0) == e || group.commutator(p2.1, p2.0) == e {
                        continue;
                    }
                    scratch.copy_from_slice(&base);
                    scratch[i] = p1;
                    scratch[i + 1] = p2;
                    uf.union(idx, lookup(&set, &scratch));
                }
            }
        }
    }
    let class_count = uf.count();
    let roots = uf.resolve();
    Ok(OrbitPartition {
        set,
        roots,
        class_count,
        rejected_b_moves: rejected_b,
    })
}

#[inline]
fn eval_word(word: &[i8], vals: &[usize; 4], group: &FiniteGroup) -> usize {
    let mut acc = group.identity();
    for &l in word {
        let v = vals[(l.unsigned_abs() - 1) as usize];
        let v = if l < 0 { group.inv(v) } else { v };
        acc = group.mul(acc, v);
    }
    acc
}

/// Number of genus-1 generators: the class count of the genus-1 partition.
pub fn r1(group: &FiniteGroup, budget: u64) -> Result<u64> {
    Ok(orbit_classes(group, 1, budget)?.class_count() as u64)
}

/// Number of genus-2 generators: the genus-2 class count minus the
/// `r1 (r1 + 1) / 2` classes of unordered genus-1 pair products. Errors
/// with a freeness violation if the pair products collide or the class
/// count falls short.
pub fn r2(group: &FiniteGroup, budget: u64) -> Result<u64> {
    let analysis = analyze(group, 2, budget)?;
    Ok(analysis.r[1])
}

/// Per-genus generator counts and partitions, built genus by genus.
pub struct GenusAnalysis {
    pub partitions: Vec<OrbitPartition>,
    /// `r[i]` is the generator count at genus `i + 1`.
    pub r: Vec<u64>,
    /// Lex-least representative tuples of the generator classes per genus.
    pub generator_reps: Vec<Vec<GenusTuple>>,
}

/// Computes `r_1 .. r_max_genus` by peeling composite classes off each
/// genus level, verifying the free-abelian structure along the way.
pub fn analyze(group: &FiniteGroup, max_genus: usize, budget: u64) -> Result<GenusAnalysis> {
    let mut analysis = GenusAnalysis {
        partitions: Vec::new(),
        r: Vec::new(),
        generator_reps: Vec::new(),
    };
    for _ in 1..=max_genus {
        extend_analysis(group, &mut analysis, budget)?;
    }
    Ok(analysis)
}

/// Adds one more genus level to an analysis.
pub fn extend_analysis(
    group: &FiniteGroup,
    analysis: &mut GenusAnalysis,
    budget: u64,
) -> Result<()> {
    let m = analysis.partitions.len() + 1;
    let part = orbit_classes(group, m, budget)?;
    let class_count = part.class_count() as u64;
    if m == 1 {
        analysis.generator_reps.push(part.representatives());
        analysis.r.push(class_count);
        analysis.partitions.push(part);
        return Ok(());
    }
    let (expected, composite_roots) = composite_classes(&analysis.generator_reps, m, &part)?;
    if (composite_roots.len() as u64) < expected {
        return Err(Error::FreenessViolation(format!(
            "at genus {m}: {} distinct product classes but {expected} products \
             (the product map is not injective)",
            composite_roots.len()
        )));
    }
    if class_count < expected {
        return Err(Error::FreenessViolation(format!(
            "at genus {m}: {class_count} classes but {expected} composite products"
        )));
    }
    let r_m = class_count - expected;
    let reps: Vec<GenusTuple> = part
        .representative_indices()
        .into_iter()
        .filter(|&i| !composite_roots.contains(&part.class_of_index(i)))
        .map(|i| part.tuples().get(i))
        .collect();
    debug_assert_eq!(reps.len() as u64, r_m);
    analysis.generator_reps.push(reps);
    analysis.r.push(r_m);
    analysis.partitions.push(part);
    Ok(())
}

/// Enumerates every multiset of known generators (all of genus `< m`) with
/// total genus `m`, concatenates their representatives, and returns the
/// number of such multisets together with the set of orbit classes they
/// land in.
#[allow(clippy::too_many_arguments)]
fn composite_classes(
    generator_reps: &[Vec<GenusTuple>],
    m: usize,
    part: &OrbitPartition,
) -> Result<(u64, std::collections::HashSet<usize>)> {
    fn rec<'a>(
        generator_reps: &'a [Vec<GenusTuple>],
        level: usize,
        min_index: usize,
        remaining: usize,
        stack: &mut Vec<&'a GenusTuple>,
        part: &OrbitPartition,
        expected: &mut u64,
        roots: &mut std::collections::HashSet<usize>,
    ) -> Result<()> {
        if remaining == 0 {
            let mut tuple = GenusTuple::empty();
            for t in stack.iter() {
                tuple = tuple.concat(t);
            }
            let class = part.class_of(&tuple).ok_or_else(|| {
                Error::FreenessViolation(
                    "a product of valid generators is not a valid tuple".into(),
                )
            })?;
            roots.insert(class);
            *expected += 1;
            return Ok(());
        }
        if level == 0 {
            return Ok(());
        }
        if level > remaining {
            return rec(generator_reps, level - 1, 0, remaining, stack, part, expected, roots);
        }
        // skip this genus level entirely
        rec(generator_reps, level - 1, 0, remaining, stack, part, expected, roots)?;
        // or take one generator of genus `level`; nondecreasing indices
        // within a level produce each multiset exactly once
        for i in min_index..generator_reps[level - 1].len() {
            stack.push(&generator_reps[level - 1][i]);
            rec(generator_reps, level, i, remaining - level, stack, part, expected, roots)?;
            stack.pop();
        }
        Ok(())
    }
    let mut roots = std::collections::HashSet::new();
    let mut expected = 0u64;
    let mut stack: Vec<&GenusTuple> = Vec::new();
    let top = (m - 1).min(generator_reps.len());
    rec(
        generator_reps,
        top,
        0,
        m,
        &mut stack,
        part,
        &mut expected,
        &mut roots,
    )?;
    Ok((expected, roots))
}

/// Result of a rank computation: generator counts per genus (index 0 is
/// genus 1) and whether higher-genus generators may remain uncounted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankReport {
    pub per_genus: Vec<u64>,
    /// False only when a one-genus-ahead probe ran and found no further
    /// generators.
    pub truncated: bool,
    /// Set when genus-3 counts are included; the relation set beyond
    /// genus 2 is extrapolated.
    pub experimental: bool,
}

impl RankReport {
    /// Lower bound for the total rank: the sum of the counted generators.
    pub fn total(&self) -> u64 {
        self.per_genus.iter().sum()
    }
}

/// Computes `r_1 .. r_max_genus`. `max_genus` may be 1 or 2 in general and
/// 3 for groups of order at most 8. After the requested genus, one further
/// level is probed (within `probe_budget`) to decide `truncated`.
pub fn rank(
    group: &FiniteGroup,
    max_genus: usize,
    budget: u64,
    probe_budget: u64,
) -> Result<RankReport> {
    if max_genus == 0 || max_genus > 3 {
        return Err(Error::InvalidArgument(format!(
            "max genus must be 1, 2, or 3; got {max_genus}"
        )));
    }
    if max_genus == 3 && group.order() > 8 {
        return Err(Error::InvalidArgument(format!(
            "genus-3 ranks are limited to groups of order <= 8 (|G| = {})",
            group.order()
        )));
    }
    let mut analysis = analyze(group, max_genus, budget)?;
    let raw_next = (group.order() as u128).checked_pow(2 * (max_genus as u32 + 1));
    let within = raw_next.is_some_and(|raw| raw <= probe_budget.min(budget) as u128);
    let truncated = if within {
        extend_analysis(group, &mut analysis, probe_budget.min(budget))?;
        analysis.r[max_genus] > 0
    } else {
        true
    };
    Ok(RankReport {
        per_genus: analysis.r[..max_genus].to_vec(),
        truncated,
        experimental: max_genus >= 3,
    })
}

// ---- independent oracles ----------------------------------------------

/// Canonical representative of the genus-1 class of `(g, k)` over the
/// cyclic group of order `n`: the Euclidean reduction collapses the class
/// to `(d, 0)` with `d = gcd(g, k, n)`, reported as a residue (so the pair
/// `(0, 0)` maps to 0). Two pairs are equivalent iff they generate the same
/// subgroup of Z_n.
pub fn canonical_cyclic_genus1(n: u64, g: u64, k: u64) -> u64 {
    assert!(n >= 1);
    gcd(gcd(g % n, k % n), n) % n
}

/// Brute-force count of the orbits of `n x 2` matrices over `Z_p` under the
/// right action generated by `((0,1),(-1,0))` and `((1,0),(m,1))` for all
/// `m`. This is the independent oracle for the genus-1 count on elementary
/// abelian groups.
pub fn sl2_mat_orbits(p: u64, n: u32, budget: u64) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::InvalidArgument(format!("{p} is not prime")));
    }
    let total = (p as u128)
        .checked_pow(2 * n)
        .ok_or(Error::Overflow("matrix count"))?;
    if total > budget as u128 {
        return Err(Error::BudgetExceeded {
            needed: total,
            budget,
        });
    }
    let total = total as usize;
    let p = p as usize;
    let rows = n as usize;
    let decode = |mut code: usize, buf: &mut Vec<(usize, usize)>| {
        buf.clear();
        for _ in 0..rows {
            let a = code % p;
            code /= p;
            let b = code % p;
            code /= p;
            buf.push((a, b));
        }
    };
    let encode = |buf: &[(usize, usize)]| -> usize {
        buf.iter().rev().fold(0, |acc, &(a, b)| (acc * p + b) * p + a)
    };
    let mut uf = UnionFind::new(total);
    let mut buf = Vec::with_capacity(rows);
    let mut image = Vec::with_capacity(rows);
    for code in 0..total {
        decode(code, &mut buf);
        // rotation (a, b) -> (-b, a)
        image.clear();
        image.extend(buf.iter().map(|&(a, b)| ((p - b) % p, a)));
        uf.union(code, encode(&image));
        // shears (a, b) -> (a + m b, b)
        for m in 1..p {
            image.clear();
            image.extend(buf.iter().map(|&(a, b)| ((a + m * b) % p, b)));
            uf.union(code, encode(&image));
        }
    }
    Ok(uf.count() as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spec::group_from_spec;

    fn transpositions(g: &FiniteGroup) -> Vec<usize> {
        (0..g.order()).filter(|&a| g.elem_order(a) == 2).collect()
    }

    #[test]
    fn empty_tuple_is_valid_identity() {
        let g = group_from_spec("S3").unwrap();
        let empty = GenusTuple::empty();
        assert_eq!(boundary_product(&g, &empty), 0);
        assert!(is_valid(&g, &empty));
        let t = GenusTuple::from_pairs(&[(1, 2)]);
        assert_eq!(t.concat(&empty), t);
        assert_eq!(empty.concat(&t), t);
    }

    #[test]
    fn commuting_pairs_are_valid() {
        let g = group_from_spec("Z6").unwrap();
        for a in 0..6 {
            for b in 0..6 {
                assert!(is_valid(&g, &GenusTuple::from_pairs(&[(a, b)])));
            }
        }
    }

    #[test]
    fn non_commuting_single_pair_is_invalid() {
        let s3 = group_from_spec("S3").unwrap();
        let t = transpositions(&s3);
        let tuple = GenusTuple::from_pairs(&[(t[0], t[1])]);
        assert_ne!(boundary_product(&s3, &tuple), 0);
        assert!(!is_valid(&s3, &tuple));
    }

    #[test]
    fn genus_adds_under_concat() {
        let t1 = GenusTuple::from_pairs(&[(1, 2), (3, 4)]);
        let t2 = GenusTuple::from_pairs(&[(0, 5)]);
        assert_eq!(t1.concat(&t2).genus(), 3);
    }

    #[test]
    fn enumeration_counts() {
        let z2 = group_from_spec("Z2").unwrap();
        assert_eq!(enumerate_valid(&z2, 1, 1000).unwrap().len(), 4);
        let s3 = group_from_spec("S3").unwrap();
        // sum of centralizer sizes: 6 + 3*2 + 2*3
        assert_eq!(enumerate_valid(&s3, 1, 1000).unwrap().len(), 18);
        let z1 = group_from_spec("Z1").unwrap();
        for genus in 0..4 {
            assert_eq!(enumerate_valid(&z1, genus, 1000).unwrap().len(), 1);
        }
    }

    #[test]
    fn enumeration_is_lexicographic_and_indexable() {
        let g = group_from_spec("S3").unwrap();
        let set = enumerate_valid(&g, 2, 10_000).unwrap();
        let tuples: Vec<GenusTuple> = set.iter().collect();
        for w in tuples.windows(2) {
            let a: Vec<(usize, usize)> = w[0].pairs.iter().map(|p| (p.g, p.k)).collect();
            let b: Vec<(usize, usize)> = w[1].pairs.iter().map(|p| (p.g, p.k)).collect();
            assert!(a < b);
        }
        for (i, t) in tuples.iter().enumerate() {
            assert!(is_valid(&g, t));
            assert_eq!(set.index_of(t), Some(i));
        }
    }

    #[test]
    fn enumeration_budget_is_enforced() {
        let g = group_from_spec("D8").unwrap();
        assert!(matches!(
            enumerate_valid(&g, 2, 100),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn move_a_identity_exponents_do_nothing() {
        let g = group_from_spec("D8").unwrap();
        let set = enumerate_valid(&g, 2, 10_000).unwrap();
        let t = set.get(5);
        assert_eq!(move_a(&g, &t, 0, 0, 0).unwrap(), t);
        assert_eq!(move_a(&g, &t, 1, 0, 0).unwrap(), t);
    }

    #[test]
    fn move_a_on_z4() {
        let g = group_from_spec("Z4").unwrap();
        let t = GenusTuple::from_pairs(&[(2, 1)]);
        let moved = move_a(&g, &t, 0, 0, 1).unwrap();
        assert_eq!(moved, GenusTuple::from_pairs(&[(2, 3)]));
    }

    #[test]
    fn move_positions_are_checked() {
        let g = group_from_spec("Z4").unwrap();
        let t = GenusTuple::from_pairs(&[(1, 1)]);
        assert!(move_a(&g, &t, 1, 0, 0).is_err());
        assert!(move_d(&g, &t, 1).is_err());
        assert!(move_c_cw(&g, &t, 0).is_err()); // needs two pairs
        assert!(move_b(&g, &t, 0).is_err());
    }

    #[test]
    fn move_b_pattern_gate() {
        let g = group_from_spec("Z6").unwrap();
        // k2 != k1^-1: not applicable
        let bad = GenusTuple::from_pairs(&[(1, 2), (3, 3)]);
        assert_eq!(move_b(&g, &bad, 0).unwrap(), None);
        // abelian: ((g1,k),(g2,-k)) -> ((-g1,-k),(-g2,k))
        let t = GenusTuple::from_pairs(&[(1, 2), (3, 4)]);
        assert!(is_valid(&g, &t));
        let moved = move_b(&g, &t, 0).unwrap().unwrap();
        assert_eq!(moved, GenusTuple::from_pairs(&[(5, 4), (3, 2)]));
        assert!(is_valid(&g, &moved));
    }

    #[test]
    fn move_c_transposes_in_abelian_groups() {
        let g = group_from_spec("Z6").unwrap();
        let t = GenusTuple::from_pairs(&[(1, 2), (3, 4)]);
        let swapped = GenusTuple::from_pairs(&[(3, 4), (1, 2)]);
        assert_eq!(move_c_cw(&g, &t, 0).unwrap(), swapped);
        assert_eq!(move_c_ccw(&g, &t, 0).unwrap(), swapped);
    }

    #[test]
    fn move_c_transposes_central_pairs() {
        // the center of Q8 is {0, 2}; central pairs have trivial commutators
        let g = group_from_spec("Q8").unwrap();
        let t = GenusTuple::from_pairs(&[(2, 0), (0, 2)]);
        let swapped = GenusTuple::from_pairs(&[(0, 2), (2, 0)]);
        assert_eq!(move_c_cw(&g, &t, 0).unwrap(), swapped);
        assert_eq!(move_c_ccw(&g, &t, 0).unwrap(), swapped);
    }

    #[test]
    fn move_c_preserves_block_contribution() {
        let g = group_from_spec("S3").unwrap();
        let set = enumerate_valid(&g, 2, 10_000).unwrap();
        for t in set.iter() {
            for moved in [move_c_cw(&g, &t, 0).unwrap(), move_c_ccw(&g, &t, 0).unwrap()] {
                assert!(is_valid(&g, &moved));
                let contribution = |t: &GenusTuple| {
                    g.mul(
                        g.commutator(t.pairs[1].k, t.pairs[1].g),
                        g.commutator(t.pairs[0].k, t.pairs[0].g),
                    )
                };
                assert_eq!(contribution(&t), contribution(&moved));
            }
        }
    }

    #[test]
    fn move_c_directions_invert_each_other() {
        let g = group_from_spec("S3").unwrap();
        let set = enumerate_valid(&g, 2, 10_000).unwrap();
        for t in set.iter() {
            let there = move_c_cw(&g, &t, 0).unwrap();
            assert_eq!(move_c_ccw(&g, &there, 0).unwrap(), t);
            let back = move_c_ccw(&g, &t, 0).unwrap();
            assert_eq!(move_c_cw(&g, &back, 0).unwrap(), t);
        }
    }

    #[test]
    fn move_d_on_commuting_pairs() {
        let g = group_from_spec("S3").unwrap();
        assert_eq!(
            move_d(&g, &GenusTuple::from_pairs(&[(0, 0)]), 0).unwrap(),
            GenusTuple::from_pairs(&[(0, 0)])
        );
        for a in 0..6 {
            for b in 0..6 {
                if g.mul(a, b) != g.mul(b, a) {
                    continue;
                }
                let t = GenusTuple::from_pairs(&[(a, b)]);
                let once = move_d(&g, &t, 0).unwrap();
                assert_eq!(once, GenusTuple::from_pairs(&[(b, g.inv(a))]));
                // the simplified move has order four
                let mut cur = t.clone();
                for _ in 0..4 {
                    cur = move_d(&g, &cur, 0).unwrap();
                }
                assert_eq!(cur, t);
            }
        }
    }

    #[test]
    fn move_d_preserves_pair_commutator() {
        // the convention check: [g^-1, g k g^-1] = [k, g] on all pairs
        let g = group_from_spec("D8").unwrap();
        for a in 0..8 {
            for b in 0..8 {
                let moved_g = g.conjugate(b, a);
                let moved_k = g.inv(a);
                assert_eq!(g.commutator(moved_k, moved_g), g.commutator(b, a));
            }
        }
    }

    #[test]
    fn z2_genus1_orbits() {
        let g = group_from_spec("Z2").unwrap();
        let part = orbit_classes(&g, 1, 1000).unwrap();
        assert_eq!(part.class_count(), 2);
        let zero = GenusTuple::from_pairs(&[(0, 0)]);
        for pair in [(0, 1), (1, 0), (1, 1)] {
            let t = GenusTuple::from_pairs(&[pair]);
            assert_eq!(part.same_class(&zero, &t), Some(false));
        }
        let a = GenusTuple::from_pairs(&[(0, 1)]);
        let b = GenusTuple::from_pairs(&[(1, 1)]);
        assert_eq!(part.same_class(&a, &b), Some(true));
    }

    #[test]
    fn small_genus1_class_counts() {
        for (spec, expected) in [("Z4", 3), ("S3", 5), ("D8", 9), ("Q8", 5), ("Dic3", 7)] {
            let g = group_from_spec(spec).unwrap();
            assert_eq!(r1(&g, 100_000).unwrap(), expected, "{spec}");
        }
    }

    #[test]
    fn genus0_is_a_single_class() {
        let g = group_from_spec("S3").unwrap();
        let part = orbit_classes(&g, 0, 1000).unwrap();
        assert_eq!(part.class_count(), 1);
    }

    #[test]
    fn canonical_cyclic_examples() {
        assert_eq!(canonical_cyclic_genus1(7, 0, 0), 0);
        assert_eq!(canonical_cyclic_genus1(6, 2, 4), 2);
        assert_eq!(canonical_cyclic_genus1(12, 8, 6), 2);
    }

    #[test]
    fn canonical_cyclic_matches_orbit_closure() {
        for n in 1..=12u64 {
            let g = FiniteGroup::cyclic(n as usize).unwrap();
            let part = orbit_classes(&g, 1, 100_000).unwrap();
            // the canonical residue is a complete class invariant
            let mut by_class = std::collections::HashMap::new();
            for a in 0..n {
                for b in 0..n {
                    let t = GenusTuple::from_pairs(&[(a as usize, b as usize)]);
                    let class = part.class_of(&t).unwrap();
                    let canon = canonical_cyclic_genus1(n, a, b);
                    if let Some(prev) = by_class.insert(class, canon) {
                        assert_eq!(prev, canon, "n={n} ({a},{b})");
                    }
                }
            }
            assert_eq!(by_class.len() as u64, crate::formulas::tau(n));
        }
    }

    #[test]
    fn sl2_orbit_counts() {
        assert_eq!(sl2_mat_orbits(2, 2, 10_000).unwrap(), 5);
        assert_eq!(sl2_mat_orbits(2, 3, 10_000).unwrap(), 15);
        assert_eq!(sl2_mat_orbits(3, 2, 10_000).unwrap(), 7);
        assert!(matches!(
            sl2_mat_orbits(2, 20, 10_000),
            Err(Error::BudgetExceeded { .. })
        ));
        assert!(sl2_mat_orbits(4, 2, 10_000).is_err());
    }

    #[test]
    fn r2_of_small_groups() {
        let s3 = group_from_spec("S3").unwrap();
        assert_eq!(r2(&s3, 100_000).unwrap(), 1);
        let q8 = group_from_spec("Q8").unwrap();
        assert_eq!(r2(&q8, 100_000).unwrap(), 1);
        let z22 = group_from_spec("Z2^2").unwrap();
        let part = orbit_classes(&z22, 2, 100_000).unwrap();
        assert_eq!(part.class_count(), 15); // 5 * 6 / 2, all composite
        assert_eq!(r2(&z22, 100_000).unwrap(), 0);
    }

    #[test]
    fn rank_of_cyclic_groups_is_tau_untruncated() {
        for n in [1usize, 4, 6, 12] {
            let g = FiniteGroup::cyclic(n).unwrap();
            let report = rank(&g, 1, 1_000_000, DEFAULT_PROBE_BUDGET).unwrap();
            assert_eq!(report.per_genus, vec![crate::formulas::tau(n as u64)]);
            assert!(!report.truncated, "Z{n} probe should verify r2 = 0");
            assert!(!report.experimental);
        }
    }

    #[test]
    fn rank_of_s3() {
        let g = group_from_spec("S3").unwrap();
        let report = rank(&g, 2, 1_000_000, DEFAULT_PROBE_BUDGET).unwrap();
        assert_eq!(report.per_genus, vec![5, 1]);
        assert_eq!(report.total(), 6);
    }

    #[test]
    fn rank_of_d12_is_truncated() {
        // the genus-3 probe does not fit the probe budget, so completeness
        // beyond genus 2 stays unverified
        let g = group_from_spec("D12").unwrap();
        let report = rank(&g, 2, DEFAULT_TUPLE_BUDGET, DEFAULT_PROBE_BUDGET).unwrap();
        assert_eq!(report.per_genus[0], 13);
        assert!(report.truncated);
    }

    #[test]
    fn rank_rejects_unsupported_genus() {
        let g = group_from_spec("D12").unwrap();
        assert!(rank(&g, 0, 1000, 1000).is_err());
        assert!(rank(&g, 4, 1_000_000, 1000).is_err());
        // genus 3 only for |G| <= 8
        assert!(rank(&g, 3, 10_000_000, 1000).is_err());
    }
}
