use super::subgroup::SubgroupSet;
use super::table::GroupTable;

/// An injective homomorphism from a subgroup of one table into another
/// (possibly the same) table, stored element by element.
///
/// `images[i]` is the image of `domain.members()[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupMorphism {
    domain: SubgroupSet,
    images: Vec<usize>,
}

impl GroupMorphism {
    pub fn new(domain: SubgroupSet, images: Vec<usize>) -> GroupMorphism {
        assert_eq!(domain.order(), images.len());
        GroupMorphism { domain, images }
    }

    pub fn identity(domain: &SubgroupSet) -> GroupMorphism {
        GroupMorphism::new(domain.clone(), domain.members().to_vec())
    }

    /// Conjugation `x -> x^g` restricted to `domain`.
    pub fn conjugation(g: &GroupTable, domain: &SubgroupSet, x: usize) -> GroupMorphism {
        let images = domain.members().iter().map(|&s| g.conj(s, x)).collect();
        GroupMorphism::new(domain.clone(), images)
    }

    pub fn domain(&self) -> &SubgroupSet {
        &self.domain
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// Image of `x`; panics if `x` is outside the domain.
    pub fn apply(&self, x: usize) -> usize {
        self.images[self.domain.position(x).expect("element outside morphism domain")]
    }

    pub fn try_apply(&self, x: usize) -> Option<usize> {
        self.domain.position(x).map(|i| self.images[i])
    }

    /// The image as a subset of the codomain table of order `n`.
    pub fn image(&self, n: usize) -> SubgroupSet {
        SubgroupSet::from_members(n, self.images.iter().copied())
    }

    /// `self` followed by `next` (right-action order: `x -> next(self(x))`).
    pub fn then(&self, next: &GroupMorphism) -> Option<GroupMorphism> {
        let images: Option<Vec<usize>> = self.images.iter().map(|&y| next.try_apply(y)).collect();
        images.map(|im| GroupMorphism::new(self.domain.clone(), im))
    }

    /// Inverse map, as a morphism on the image (a subgroup of a table of
    /// order `n`) back into the domain's table.
    pub fn inverse(&self, n: usize) -> GroupMorphism {
        let image = self.image(n);
        let mut back = vec![0; image.order()];
        for (i, &y) in self.images.iter().enumerate() {
            back[image.position(y).unwrap()] = self.domain.members()[i];
        }
        GroupMorphism::new(image, back)
    }

    /// Restriction to a subgroup of the domain.
    pub fn restrict(&self, sub: &SubgroupSet) -> Option<GroupMorphism> {
        let images: Option<Vec<usize>> = sub.members().iter().map(|&x| self.try_apply(x)).collect();
        images.map(|im| GroupMorphism::new(sub.clone(), im))
    }

    pub fn is_identity(&self) -> bool {
        self.images == self.domain.members()
    }

    /// Checks the homomorphism property and injectivity against the domain
    /// table `a` and codomain table `b`.
    pub fn is_injective_hom(&self, a: &GroupTable, b: &GroupTable) -> bool {
        let m = self.domain.members();
        let mut seen = std::collections::HashSet::new();
        if !self.images.iter().all(|&y| y < b.order() && seen.insert(y)) {
            return false;
        }
        m.iter().enumerate().all(|(i, &x)| {
            m.iter().enumerate().all(|(j, &y)| {
                self.try_apply(a.mul(x, y)) == Some(b.mul(self.images[i], self.images[j]))
            })
        })
    }
}
