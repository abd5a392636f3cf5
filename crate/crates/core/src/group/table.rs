use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;
use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

use crate::caps::Caps;
use crate::error::{validation, Error, Result};

/// A finite group given by its complete multiplication table.
///
/// Element `0` is always the identity. Elements of a generated group are
/// numbered in breadth-first order of right multiplication by the
/// generators, so tables are reproducible for a fixed generating list.
pub struct GroupTable {
    order: usize,
    mult: Vec<u16>,
    inv: Vec<u16>,
    elem_order: Vec<u32>,
    generators: Vec<usize>,
    labels: Option<Vec<String>>,
    label_index: OnceLock<HashMap<String, usize>>,
    hash: OnceLock<String>,
}

impl fmt::Debug for GroupTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GroupTable")
            .field("order", &self.order)
            .field("generators", &self.generators)
            .finish()
    }
}

impl GroupTable {
    pub(crate) fn assemble(order: usize, mult: Vec<u16>, generators: Vec<usize>) -> Result<GroupTable> {
        let mut inv = vec![u16::MAX; order];
        for x in 0..order {
            let row = &mult[x * order..(x + 1) * order];
            match row.iter().position(|&v| v == 0) {
                Some(y) => inv[x] = y as u16,
                None => return validation(format!("element {x} has no inverse")),
            }
        }
        let mut elem_order = vec![0u32; order];
        for x in 0..order {
            let mut k = 1u32;
            let mut y = x;
            while y != 0 {
                y = mult[y * order + x] as usize;
                k += 1;
                if k as usize > order + 1 {
                    return validation(format!("element {x} has no finite order"));
                }
            }
            elem_order[x] = k;
        }
        // identity has order 1
        if order > 0 {
            elem_order[0] = 1;
        }
        Ok(GroupTable {
            order,
            mult,
            inv,
            elem_order,
            generators,
            labels: None,
            label_index: OnceLock::new(),
            hash: OnceLock::new(),
        })
    }

    /// Builds a table from explicit rows, validating every group axiom.
    pub fn from_rows(rows: &[Vec<usize>], caps: &Caps) -> Result<GroupTable> {
        let n = rows.len();
        if n == 0 {
            return validation("empty multiplication table");
        }
        caps.check("group order", caps.table, n)?;
        let mut mult = Vec::with_capacity(n * n);
        for (x, row) in rows.iter().enumerate() {
            if row.len() != n {
                return validation(format!("row {x} has length {} instead of {n}", row.len()));
            }
            for &v in row {
                if v >= n {
                    return validation(format!("entry {v} out of range in row {x}"));
                }
                mult.push(v as u16);
            }
        }
        let table = GroupTable::assemble(n, mult, Vec::new())?;
        table.validate(caps)?;
        let gens = greedy_generators(&table);
        Ok(GroupTable { generators: gens, ..table })
    }

    /// Closes `gens` under a multiplication given in closed form.
    ///
    /// Returns the table together with the element list (index to value).
    /// The generator list of the table records the index of every entry of
    /// `gens`, in order.
    pub fn from_generators<T, F>(identity: T, gens: &[T], mul: F, caps: &Caps) -> Result<(GroupTable, Vec<T>)>
    where
        T: Clone + Eq + Hash,
        F: Fn(&T, &T) -> T,
    {
        let cap = caps.table.min(u16::MAX as usize);
        let k = gens.len();
        let mut elems = vec![identity.clone()];
        let mut index: HashMap<T, usize> = HashMap::new();
        index.insert(identity, 0);
        let mut right: Vec<u32> = Vec::new();
        let mut parent: Vec<(u32, u32)> = vec![(0, 0)];
        let mut head = 0;
        while head < elems.len() {
            for (i, g) in gens.iter().enumerate() {
                let y = mul(&elems[head], g);
                let idx = match index.get(&y) {
                    Some(&j) => j,
                    None => {
                        let j = elems.len();
                        if j >= cap {
                            return Err(Error::SizeLimit {
                                what: "group closure",
                                limit: cap,
                                actual: j + 1,
                            });
                        }
                        index.insert(y.clone(), j);
                        elems.push(y);
                        parent.push((head as u32, i as u32));
                        j
                    }
                };
                right.push(idx as u32);
            }
            head += 1;
        }
        let n = elems.len();
        let mut mult = vec![0u16; n * n];
        for x in 0..n {
            let row = &mut mult[x * n..(x + 1) * n];
            row[0] = x as u16;
            for y in 1..n {
                let (py, gi) = parent[y];
                let left = row[py as usize] as usize;
                row[y] = right[left * k + gi as usize] as u16;
            }
        }
        let gen_idx = gens.iter().map(|g| index[g]).collect();
        let table = GroupTable::assemble(n, mult, gen_idx)?;
        table.validate(caps)?;
        Ok((table, elems))
    }

    /// Multiplication table of a permutation group.
    ///
    /// Generators are image lists on `0..degree`. The product `x * y` is the
    /// composite map `i -> x(y(i))`.
    pub fn from_permutations(degree: usize, gens: &[Vec<usize>], caps: &Caps) -> Result<GroupTable> {
        if degree == 0 {
            return validation("permutation degree must be positive");
        }
        for (gi, g) in gens.iter().enumerate() {
            if g.len() != degree {
                return validation(format!(
                    "generator {gi} has {} images for degree {degree}",
                    g.len()
                ));
            }
            let mut seen = vec![false; degree];
            for &v in g {
                if v >= degree || seen[v] {
                    return validation(format!("generator {gi} is not a bijection of the points"));
                }
                seen[v] = true;
            }
        }
        let perms: Vec<Vec<u32>> = gens
            .iter()
            .map(|g| g.iter().map(|&v| v as u32).collect())
            .collect();
        let identity: Vec<u32> = (0..degree as u32).collect();
        let (table, elems) = GroupTable::from_generators(
            identity,
            &perms,
            |x, y| y.iter().map(|&i| x[i as usize]).collect(),
            caps,
        )?;
        let labels = elems.iter().map(|p| cycle_notation(p)).collect();
        Ok(table.with_labels(labels))
    }

    /// The group of order one.
    pub fn trivial() -> GroupTable {
        GroupTable::assemble(1, vec![0], Vec::new()).expect("trivial group")
    }

    /// Direct product `a x b`; the pair `(i, j)` has index `i * |b| + j`.
    pub fn direct_product(a: &GroupTable, b: &GroupTable, caps: &Caps) -> Result<GroupTable> {
        let (na, nb) = (a.order(), b.order());
        let n = na * nb;
        caps.check("group order", caps.table.min(u16::MAX as usize), n)?;
        let mut mult = vec![0u16; n * n];
        for x in 0..n {
            let (xa, xb) = (x / nb, x % nb);
            for y in 0..n {
                let (ya, yb) = (y / nb, y % nb);
                mult[x * n + y] = (a.mul(xa, ya) * nb + b.mul(xb, yb)) as u16;
            }
        }
        let mut gens: Vec<usize> = a.generators.iter().map(|&g| g * nb).collect();
        gens.extend(b.generators.iter().copied());
        let table = GroupTable::assemble(n, mult, gens)?;
        table.validate(caps)?;
        let labels = match (&a.labels, &b.labels) {
            (None, None) => None,
            _ => Some(
                (0..n)
                    .map(|x| {
                        format!(
                            "({}, {})",
                            a.label_or_index(x / nb),
                            b.label_or_index(x % nb)
                        )
                    })
                    .collect(),
            ),
        };
        Ok(match labels {
            Some(l) => table.with_labels(l),
            None => table,
        })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> GroupTable {
        assert_eq!(labels.len(), self.order);
        self.labels = Some(labels);
        self.label_index = OnceLock::new();
        self
    }

    pub fn with_generators(mut self, generators: Vec<usize>) -> GroupTable {
        self.generators = generators;
        self
    }

    /// Checks identity, Latin-square, inverse and associativity axioms.
    ///
    /// Associativity is checked on all triples up to `caps.assoc_full` and on
    /// `caps.assoc_samples` seeded random triples above it.
    pub fn validate(&self, caps: &Caps) -> Result<()> {
        let n = self.order;
        for x in 0..n {
            if self.mul(0, x) != x || self.mul(x, 0) != x {
                return validation(format!("element 0 is not a two-sided identity (fails at {x})"));
            }
            if self.mul(x, self.inv(x)) != 0 || self.mul(self.inv(x), x) != 0 {
                return validation(format!("inverse table wrong at {x}"));
            }
        }
        let mut seen = vec![0u32; n];
        for x in 0..n {
            let stamp = x as u32 + 1;
            for y in 0..n {
                let v = self.mul(x, y);
                if seen[v] == stamp {
                    return validation(format!("row {x} repeats entry {v}"));
                }
                seen[v] = stamp;
            }
        }
        let mut seen = vec![0u32; n];
        for y in 0..n {
            let stamp = y as u32 + 1;
            for x in 0..n {
                let v = self.mul(x, y);
                if seen[v] == stamp {
                    return validation(format!("column {y} repeats entry {v}"));
                }
                seen[v] = stamp;
            }
        }
        let assoc = |x: usize, y: usize, z: usize| self.mul(self.mul(x, y), z) == self.mul(x, self.mul(y, z));
        if n <= caps.assoc_full {
            for x in 0..n {
                for y in 0..n {
                    let xy = self.mul(x, y);
                    for z in 0..n {
                        if self.mul(xy, z) != self.mul(x, self.mul(y, z)) {
                            return validation(format!("associativity fails at ({x}, {y}, {z})"));
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
            for _ in 0..caps.assoc_samples {
                let (x, y, z) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
                if !assoc(x, y, z) {
                    return validation(format!("associativity fails at ({x}, {y}, {z})"));
                }
            }
        }
        Ok(())
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mult[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    /// `x^g = g^-1 x g`.
    #[inline]
    pub fn conj(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(self.inv(g), x), g)
    }

    /// `[x, y] = x^-1 y^-1 x y`.
    #[inline]
    pub fn commutator(&self, x: usize, y: usize) -> usize {
        self.mul(self.mul(self.inv(x), self.inv(y)), self.mul(x, y))
    }

    pub fn pow(&self, x: usize, k: i64) -> usize {
        let ord = self.element_order(x) as i64;
        let e = k.rem_euclid(ord);
        let mut acc = 0;
        let mut base = x;
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    #[inline]
    pub fn element_order(&self, x: usize) -> usize {
        self.elem_order[x] as usize
    }

    /// Defining generators (for catalog groups, the designated generators of
    /// the family presentation, in order).
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn label(&self, x: usize) -> Option<&str> {
        self.labels.as_ref().map(|l| l[x].as_str())
    }

    pub fn label_or_index(&self, x: usize) -> String {
        match self.label(x) {
            Some(l) => l.to_string(),
            None => format!("#{x}"),
        }
    }

    pub fn find_label(&self, label: &str) -> Option<usize> {
        let labels = self.labels.as_ref()?;
        let index = self
            .label_index
            .get_or_init(|| labels.iter().enumerate().map(|(i, l)| (l.clone(), i)).collect());
        index.get(label).copied()
    }

    pub fn is_abelian(&self) -> bool {
        let g = &self.generators;
        if !g.is_empty() {
            return g.iter().all(|&a| g.iter().all(|&b| self.mul(a, b) == self.mul(b, a)));
        }
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// SHA-256 of the order and the multiplication table, hex encoded.
    pub fn content_hash(&self) -> &str {
        self.hash.get_or_init(|| {
            let mut h = Sha256::new();
            h.update((self.order as u64).to_le_bytes());
            for v in &self.mult {
                h.update(v.to_le_bytes());
            }
            hex::encode(h.finalize())
        })
    }
}

/// Generating set chosen greedily by descending element order.
fn greedy_generators(t: &GroupTable) -> Vec<usize> {
    let mut by_order: Vec<usize> = (1..t.order()).collect();
    by_order.sort_by_key(|&x| (std::cmp::Reverse(t.element_order(x)), x));
    let mut inside = vec![false; t.order()];
    inside[0] = true;
    let mut members = vec![0usize];
    let mut gens = Vec::new();
    for x in by_order {
        if inside[x] {
            continue;
        }
        gens.push(x);
        // re-close from scratch with the enlarged generator list
        members.clear();
        members.push(0);
        inside.iter_mut().for_each(|b| *b = false);
        inside[0] = true;
        let mut head = 0;
        while head < members.len() {
            let e = members[head];
            for &g in &gens {
                let y = t.mul(e, g);
                if !inside[y] {
                    inside[y] = true;
                    members.push(y);
                }
            }
            head += 1;
        }
    }
    gens
}

/// GAP-style cycle notation with 1-based points, `()` for the identity.
pub fn cycle_notation(perm: &[u32]) -> String {
    let mut seen = vec![false; perm.len()];
    let mut out = String::new();
    for start in 0..perm.len() {
        if seen[start] || perm[start] as usize == start {
            continue;
        }
        let mut cycle = vec![start + 1];
        seen[start] = true;
        let mut i = perm[start] as usize;
        while i != start {
            seen[i] = true;
            cycle.push(i + 1);
            i = perm[i] as usize;
        }
        out.push('(');
        out.push_str(&cycle.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","));
        out.push(')');
    }
    if out.is_empty() {
        out.push_str("()");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(one_based: &[usize]) -> Vec<usize> {
        one_based.iter().map(|v| v - 1).collect()
    }

    #[test]
    fn symmetric_group_of_degree_three() {
        let caps = Caps::default();
        let s3 = GroupTable::from_permutations(3, &[perm(&[2, 3, 1]), perm(&[2, 1, 3])], &caps).unwrap();
        assert_eq!(s3.order(), 6);
        assert_eq!(s3.label(0), Some("()"));
        assert!(!s3.is_abelian());
        let r = s3.find_label("(1,2,3)").unwrap();
        assert_eq!(s3.element_order(r), 3);
    }

    #[test]
    fn trivial_permutation_group() {
        let t = GroupTable::from_permutations(1, &[], &Caps::default()).unwrap();
        assert_eq!(t.order(), 1);
    }

    #[test]
    fn malformed_permutations_rejected() {
        let caps = Caps::default();
        assert!(matches!(
            GroupTable::from_permutations(3, &[vec![0, 0, 1]], &caps),
            Err(Error::Validation(_))
        ));
        assert!(matches!(
            GroupTable::from_permutations(3, &[vec![0, 1]], &caps),
            Err(Error::Validation(_))
        ));
    }

    #[test]
    fn closure_cap_is_enforced() {
        let caps = Caps { table: 10, ..Caps::default() };
        let err = GroupTable::from_permutations(4, &[perm(&[2, 3, 4, 1]), perm(&[2, 1, 3, 4])], &caps).unwrap_err();
        assert!(matches!(err, Error::SizeLimit { .. }));
    }

    #[test]
    fn product_convention_is_composition() {
        let caps = Caps::default();
        let s3 = GroupTable::from_permutations(3, &[perm(&[2, 3, 1]), perm(&[2, 1, 3])], &caps).unwrap();
        let a = s3.find_label("(1,2)").unwrap();
        let b = s3.find_label("(2,3)").unwrap();
        // (1,2) o (2,3): 1 -> 1 -> 2, 2 -> 3 -> 3, 3 -> 2 -> 1
        assert_eq!(s3.label(s3.mul(a, b)), Some("(1,2,3)"));
    }

    #[test]
    fn rows_are_validated() {
        let caps = Caps::default();
        let bad = vec![vec![0, 1, 2], vec![1, 1, 0], vec![2, 0, 1]];
        assert!(GroupTable::from_rows(&bad, &caps).is_err());
        let c3 = vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]];
        let t = GroupTable::from_rows(&c3, &caps).unwrap();
        assert_eq!(t.order(), 3);
        assert_eq!(t.generators().len(), 1);
    }

    #[test]
    fn direct_product_orders() {
        let caps = Caps::default();
        let c2 = GroupTable::from_rows(&[vec![0, 1], vec![1, 0]], &caps).unwrap();
        let v = GroupTable::direct_product(&c2, &c2, &caps).unwrap();
        assert_eq!(v.order(), 4);
        assert!((1..4).all(|x| v.element_order(x) == 2));
    }

    #[test]
    fn hash_is_stable() {
        let caps = Caps::default();
        let a = GroupTable::from_permutations(3, &[perm(&[2, 3, 1])], &caps).unwrap();
        let b = GroupTable::from_permutations(3, &[perm(&[2, 3, 1])], &caps).unwrap();
        assert_eq!(a.content_hash(), b.content_hash());
        assert_eq!(a.content_hash().len(), 64);
    }
}
