use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::OnceLock;

use super::table::GroupTable;

/// A subset of the elements of a parent table, stored both as a bitset and
/// as a sorted member list.
///
/// The parent table is not stored; every operation takes it explicitly.
/// Two sets compare by member list, so comparing sets of different parents
/// is meaningless.
#[derive(Clone)]
pub struct SubgroupSet {
    bits: Vec<u64>,
    members: Vec<usize>,
    gens: OnceLock<Vec<usize>>,
}

impl SubgroupSet {
    /// Builds a set from arbitrary members of a parent of order `n`.
    /// No closure is checked.
    pub fn from_members(n: usize, members: impl IntoIterator<Item = usize>) -> SubgroupSet {
        let mut bits = vec![0u64; n.div_ceil(64)];
        for x in members {
            bits[x / 64] |= 1 << (x % 64);
        }
        SubgroupSet::from_bits(bits)
    }

    pub(crate) fn from_bits(bits: Vec<u64>) -> SubgroupSet {
        let mut members = Vec::new();
        for (w, &word) in bits.iter().enumerate() {
            let mut v = word;
            while v != 0 {
                let b = v.trailing_zeros() as usize;
                members.push(w * 64 + b);
                v &= v - 1;
            }
        }
        SubgroupSet { bits, members, gens: OnceLock::new() }
    }

    pub(crate) fn with_gens(self, gens: Vec<usize>) -> SubgroupSet {
        let _ = self.gens.set(gens);
        self
    }

    pub fn trivial(n: usize) -> SubgroupSet {
        SubgroupSet::from_members(n, [0])
    }

    pub fn whole(g: &GroupTable) -> SubgroupSet {
        SubgroupSet::from_members(g.order(), 0..g.order()).with_gens(g.generators().to_vec())
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        self.bits[x / 64] >> (x % 64) & 1 == 1
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    /// Sorted member indices.
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub(crate) fn bits(&self) -> &[u64] {
        &self.bits
    }

    pub fn is_subset(&self, other: &SubgroupSet) -> bool {
        self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0)
    }

    pub fn intersection(&self, other: &SubgroupSet) -> SubgroupSet {
        SubgroupSet::from_bits(self.bits.iter().zip(&other.bits).map(|(a, b)| a & b).collect())
    }

    /// Position of `x` in the sorted member list.
    pub fn position(&self, x: usize) -> Option<usize> {
        self.members.binary_search(&x).ok()
    }

    /// A generating set, computed greedily from the members on first use
    /// unless one was recorded at construction.
    pub fn generators(&self, g: &GroupTable) -> &[usize] {
        self.gens.get_or_init(|| {
            let mut inside = vec![0u64; self.bits.len()];
            inside[0] |= 1;
            let mut list = vec![0usize];
            let mut gens = Vec::new();
            for &x in &self.members {
                if inside[x / 64] >> (x % 64) & 1 == 1 {
                    continue;
                }
                gens.push(x);
                super::ops::close_into(g, &mut inside, &mut list, &gens);
            }
            gens
        })
    }

    /// Checks that the set is a subgroup of `g`: contains the identity and is
    /// closed under products. Finite, so inverses follow.
    pub fn is_subgroup_of(&self, g: &GroupTable) -> bool {
        if self.bits.len() != g.order().div_ceil(64) || !self.contains(0) {
            return false;
        }
        if !g.order().is_multiple_of(self.order()) {
            return false;
        }
        self.members
            .iter()
            .all(|&a| self.members.iter().all(|&b| self.contains(g.mul(a, b))))
    }
}

impl PartialEq for SubgroupSet {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members
    }
}

impl Eq for SubgroupSet {}

impl Hash for SubgroupSet {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.members.hash(state)
    }
}

impl Ord for SubgroupSet {
    /// By order, then lexicographically by sorted members.
    fn cmp(&self, other: &Self) -> Ordering {
        self.order()
            .cmp(&other.order())
            .then_with(|| self.members.cmp(&other.members))
    }
}

impl PartialOrd for SubgroupSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Serializes as the sorted member list.
impl serde::Serialize for SubgroupSet {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.members.serialize(serializer)
    }
}

impl fmt::Debug for SubgroupSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SubgroupSet{:?}", self.members)
    }
}
