use std::collections::{HashMap, HashSet};

use super::morphism::GroupMorphism;
use super::ops;
use super::subgroup::SubgroupSet;
use super::table::GroupTable;
use crate::caps::Caps;
use crate::error::{precondition, validation, Result};

type PosMap = Vec<u16>;

/// A group of permutations of a subgroup's elements, with its own table.
///
/// The product `a * b` in the carrier is "apply `a`, then `b`", so with
/// conjugation `x -> x^g` the assignment `g -> c_g` is a homomorphism.
pub struct ActionGroup {
    carrier: GroupTable,
    acts_on: SubgroupSet,
    parent_order: usize,
    maps: Vec<PosMap>,
    index: HashMap<PosMap, usize>,
}

impl std::fmt::Debug for ActionGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ActionGroup")
            .field("order", &self.carrier.order())
            .field("acts_on", &self.acts_on)
            .finish()
    }
}

fn compose(x: &PosMap, y: &PosMap) -> PosMap {
    x.iter().map(|&i| y[i as usize]).collect()
}

fn closure(identity: &PosMap, gens: &[PosMap]) -> HashSet<PosMap> {
    let mut set = HashSet::new();
    set.insert(identity.clone());
    let mut queue = vec![identity.clone()];
    let mut head = 0;
    while head < queue.len() {
        for s in gens {
            let y = compose(&queue[head], s);
            if set.insert(y.clone()) {
                queue.push(y);
            }
        }
        head += 1;
    }
    set
}

impl ActionGroup {
    fn build(acts_on: SubgroupSet, parent_order: usize, gens: Vec<PosMap>, caps: &Caps) -> Result<ActionGroup> {
        let identity: PosMap = (0..acts_on.order() as u16).collect();
        let (carrier, maps) = GroupTable::from_generators(identity, &gens, compose, caps)?;
        let index = maps.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        Ok(ActionGroup { carrier, acts_on, parent_order, maps, index })
    }

    fn to_positions(acts_on: &SubgroupSet, m: &GroupMorphism) -> Result<PosMap> {
        if m.domain() != acts_on {
            return validation("action map has the wrong domain");
        }
        let mut seen = vec![false; acts_on.order()];
        let mut out = Vec::with_capacity(acts_on.order());
        for &y in m.images() {
            match acts_on.position(y) {
                Some(i) if !seen[i] => {
                    seen[i] = true;
                    out.push(i as u16);
                }
                _ => return validation("action map is not a permutation of the acted-on set"),
            }
        }
        Ok(out)
    }

    /// The group generated by the given bijections of `acts_on`.
    pub fn generated_by(
        parent_order: usize,
        acts_on: &SubgroupSet,
        gens: &[GroupMorphism],
        caps: &Caps,
    ) -> Result<ActionGroup> {
        let pos: Vec<PosMap> = gens
            .iter()
            .map(|m| ActionGroup::to_positions(acts_on, m))
            .collect::<Result<_>>()?;
        ActionGroup::build(acts_on.clone(), parent_order, pos, caps)
    }

    /// The group whose elements are exactly `maps`; fails if they are not
    /// closed under composition.
    pub fn from_maps(parent_order: usize, acts_on: &SubgroupSet, maps: &[GroupMorphism], caps: &Caps) -> Result<ActionGroup> {
        let pos: Vec<PosMap> = maps
            .iter()
            .map(|m| ActionGroup::to_positions(acts_on, m))
            .collect::<Result<_>>()?;
        let distinct: HashSet<&PosMap> = pos.iter().collect();
        let identity: PosMap = (0..acts_on.order() as u16).collect();
        let mut gens: Vec<PosMap> = Vec::new();
        let mut reached = closure(&identity, &gens);
        for m in &pos {
            if !reached.contains(m) {
                gens.push(m.clone());
                reached = closure(&identity, &gens);
                caps.check("action group", caps.table, reached.len())?;
            }
        }
        if reached.len() != distinct.len() || !distinct.iter().all(|m| reached.contains(*m)) {
            return validation("maps are not closed under composition");
        }
        ActionGroup::build(acts_on.clone(), parent_order, gens, caps)
    }

    pub fn carrier(&self) -> &GroupTable {
        &self.carrier
    }

    pub fn order(&self) -> usize {
        self.carrier.order()
    }

    pub fn acts_on(&self) -> &SubgroupSet {
        &self.acts_on
    }

    /// Image of the element `x` (of the acted-on set) under carrier element `a`.
    pub fn image(&self, a: usize, x: usize) -> usize {
        let i = self.acts_on.position(x).expect("element outside acted-on set");
        self.acts_on.members()[self.maps[a][i] as usize]
    }

    pub fn morphism(&self, a: usize) -> GroupMorphism {
        let m = self.acts_on.members();
        GroupMorphism::new(self.acts_on.clone(), self.maps[a].iter().map(|&i| m[i as usize]).collect())
    }

    /// Carrier element acting as `m`, if any.
    pub fn find(&self, m: &GroupMorphism) -> Option<usize> {
        let pos = ActionGroup::to_positions(&self.acts_on, m).ok()?;
        self.index.get(&pos).copied()
    }

    /// Elements of the acted-on set fixed by every element of `sub`.
    pub fn fixed_points(&self, sub: &SubgroupSet) -> SubgroupSet {
        let gens = sub.generators(&self.carrier);
        SubgroupSet::from_members(
            self.parent_order,
            (0..self.acts_on.order())
                .filter(|&i| gens.iter().all(|&a| self.maps[a][i] as usize == i))
                .map(|i| self.acts_on.members()[i]),
        )
    }

    /// Whether `h` (a subset of the acted-on set) is mapped into itself by
    /// every element of `sub`.
    pub fn stabilizes(&self, sub: &SubgroupSet, h: &SubgroupSet) -> bool {
        sub.generators(&self.carrier)
            .iter()
            .all(|&a| h.members().iter().all(|&x| h.contains(self.image(a, x))))
    }

    /// Carrier elements acting trivially on `h`.
    pub fn kernel_on(&self, h: &SubgroupSet) -> SubgroupSet {
        SubgroupSet::from_members(
            self.order(),
            (0..self.order()).filter(|&a| h.members().iter().all(|&x| self.image(a, x) == x)),
        )
    }

    /// The same action restricted to a subgroup of the carrier.
    pub fn restrict_carrier(&self, sub: &SubgroupSet, caps: &Caps) -> Result<ActionGroup> {
        let gens: Vec<PosMap> = sub.generators(&self.carrier).iter().map(|&a| self.maps[a].clone()).collect();
        ActionGroup::build(self.acts_on.clone(), self.parent_order, gens, caps)
    }
}

/// `G/N` with a projection and a section by smallest coset member.
///
/// Cosets are numbered by increasing smallest member, so `N` itself is 0.
pub struct QuotientGroup {
    table: GroupTable,
    projection: Vec<usize>,
    section: Vec<usize>,
}

impl QuotientGroup {
    pub fn new(g: &GroupTable, n: &SubgroupSet) -> Result<QuotientGroup> {
        if !ops::is_normal_in(g, n, &SubgroupSet::whole(g)) {
            return precondition("quotient by a subgroup that is not normal");
        }
        let mut projection = vec![usize::MAX; g.order()];
        let mut section = Vec::new();
        for x in 0..g.order() {
            if projection[x] != usize::MAX {
                continue;
            }
            let c = section.len();
            section.push(x);
            for &m in n.members() {
                projection[g.mul(x, m)] = c;
            }
        }
        let k = section.len();
        let mut mult = Vec::with_capacity(k * k);
        for &a in &section {
            for &b in &section {
                mult.push(projection[g.mul(a, b)] as u16);
            }
        }
        let gens = g.generators().iter().map(|&x| projection[x]).filter(|&c| c != 0).collect();
        let table = GroupTable::assemble(k, mult, gens)?;
        Ok(QuotientGroup { table, projection, section })
    }

    pub fn table(&self) -> &GroupTable {
        &self.table
    }

    pub fn project(&self, x: usize) -> usize {
        self.projection[x]
    }

    pub fn lift(&self, c: usize) -> usize {
        self.section[c]
    }

    /// Image of a subgroup of the parent.
    pub fn project_subgroup(&self, h: &SubgroupSet) -> SubgroupSet {
        SubgroupSet::from_members(self.table.order(), h.members().iter().map(|&x| self.projection[x]))
    }

    /// Full preimage of a subgroup of the quotient.
    pub fn preimage(&self, h: &SubgroupSet) -> SubgroupSet {
        SubgroupSet::from_members(
            self.projection.len(),
            (0..self.projection.len()).filter(|&x| h.contains(self.projection[x])),
        )
    }
}
