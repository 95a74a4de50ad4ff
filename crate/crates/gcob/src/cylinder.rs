//! Elementary pieces of the cobordism category over a finite group:
//! cylinder morphism classes, pants composition, and the connectivity
//! predicate on circle labels.

use crate::group::FiniteGroup;

/// One morphism class of cylinders from `source` to `target`: conjugators
/// `k` with `target = k * source * k^-1`, identified under
/// `k ~ target^n * k * source^m`. The representative is the least member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CylinderClass {
    pub source: usize,
    pub target: usize,
    /// Sorted; non-empty.
    pub members: Vec<usize>,
}

impl CylinderClass {
    pub fn representative(&self) -> usize {
        self.members[0]
    }
}

/// Partitions the conjugator set `{k : h = k g k^-1}` into classes under
/// `k ~ h^a k g^b`. Empty output means `g` and `h` are not conjugate.
/// Classes come out sorted by representative.
pub fn cylinder_classes(group: &FiniteGroup, g: usize, h: usize) -> Vec<CylinderClass> {
    let n = group.order();
    let conjugators: Vec<usize> = (0..n).filter(|&k| group.conjugate(g, k) == h).collect();
    let mut class_of: Vec<Option<usize>> = vec![None; n];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for &k0 in &conjugators {
        if class_of[k0].is_some() {
            continue;
        }
        // breadth-first closure under single steps k -> h*k and k -> k*g;
        // arbitrary exponents follow by iterating
        let id = classes.len();
        let mut members = vec![k0];
        class_of[k0] = Some(id);
        let mut i = 0;
        while i < members.len() {
            let k = members[i];
            i += 1;
            for next in [group.mul(h, k), group.mul(k, g)] {
                if class_of[next].is_none() {
                    class_of[next] = Some(id);
                    members.push(next);
                }
            }
        }
        members.sort_unstable();
        classes.push(members);
    }
    classes.sort_by_key(|m| m[0]);
    classes
        .into_iter()
        .map(|members| CylinderClass {
            source: g,
            target: h,
            members,
        })
        .collect()
}

/// Outgoing circle label of the thin pair of pants with incoming `g` and
/// `h`: the product `g * h`.
pub fn pants_target(group: &FiniteGroup, g: usize, h: usize) -> usize {
    group.mul(g, h)
}

/// Whether the circles labelled `g` and `h` lie in the same connected
/// component: true iff `g * h^-1` lies in the commutator subgroup.
pub fn connected(group: &FiniteGroup, g: usize, h: usize) -> bool {
    let derived = group.commutator_subgroup();
    derived.binary_search(&group.mul(g, group.inv(h))).is_ok()
}
