//! Complete subgroup enumeration for small groups, plus the closed-form
//! subgroup counts for the dihedral and dicyclic families.
//!
//! Subgroups are represented as bitmasks over element indices (hence the
//! order-64 cap) and canonicalized by their sorted element list.

use crate::error::{Error, Result};
use crate::formulas::{sigma, tau};
use crate::group::FiniteGroup;

/// A subgroup as a sorted list of element indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgroupSet {
    pub elements: Vec<usize>,
    pub is_abelian: bool,
}

impl SubgroupSet {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        false // a subgroup always contains the identity
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elements.binary_search(&x).is_ok()
    }
}

fn close_mask(g: &FiniteGroup, mut mask: u64) -> u64 {
    let n = g.order();
    loop {
        let before = mask;
        let mut members: Vec<usize> = Vec::with_capacity(mask.count_ones() as usize);
        for a in 0..n {
            if mask >> a & 1 == 1 {
                members.push(a);
            }
        }
        for &a in &members {
            for &b in &members {
                mask |= 1 << g.mul(a, b);
            }
        }
        if mask == before {
            return mask;
        }
    }
}

/// Enumerates every subgroup: seed with all cyclic subgroups, then repeatedly
/// extend each known subgroup by one outside element and close, until no new
/// subgroup appears. Output is sorted by (size, elements) and duplicate-free.
pub fn all_subgroups(g: &FiniteGroup) -> Result<Vec<SubgroupSet>> {
    let n = g.order();
    if n > 64 {
        return Err(Error::OrderBound {
            order: n as u64,
            bound: 64,
        });
    }
    let mut known: Vec<u64> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    let mut push = |mask: u64, known: &mut Vec<u64>| {
        if seen.insert(mask) {
            known.push(mask);
        }
    };
    for a in 0..n {
        push(close_mask(g, 1 | 1 << a), &mut known);
    }
    let mut i = 0;
    while i < known.len() {
        let base = known[i];
        i += 1;
        for x in 0..n {
            if base >> x & 1 == 0 {
                push(close_mask(g, base | 1 << x), &mut known);
            }
        }
    }
    let mut out: Vec<SubgroupSet> = known
        .into_iter()
        .map(|mask| {
            let elements: Vec<usize> = (0..n).filter(|&a| mask >> a & 1 == 1).collect();
            let is_abelian = elements
                .iter()
                .all(|&a| elements.iter().all(|&b| g.mul(a, b) == g.mul(b, a)));
            SubgroupSet {
                elements,
                is_abelian,
            }
        })
        .collect();
    out.sort_by(|a, b| {
        a.elements
            .len()
            .cmp(&b.elements.len())
            .then_with(|| a.elements.cmp(&b.elements))
    });
    debug_assert!(out.iter().all(|s| n.is_multiple_of(s.len())), "Lagrange");
    Ok(out)
}

/// Number of subgroups whose restricted table is commutative.
pub fn count_abelian_subgroups(g: &FiniteGroup) -> Result<u64> {
    Ok(all_subgroups(g)?.iter().filter(|s| s.is_abelian).count() as u64)
}

/// Cavior's count for the dihedral group of order `2n`: `tau(n) + sigma(n)`.
pub fn dihedral_subgroup_formula(n: u64) -> u64 {
    tau(n) + sigma(n)
}

/// Subgroup count for the dicyclic group `Dic_n`: `tau(2n) + sigma(n)`.
pub fn dicyclic_subgroup_formula(n: u64) -> u64 {
    tau(2 * n) + sigma(n)
}
