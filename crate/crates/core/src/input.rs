//! Group documents: permutation groups, catalog members and products.
//!
//! ```json
//! {"kind": "permutation", "degree": 3, "generators": [[2, 3, 1], [2, 1, 3]]}
//! {"kind": "catalog", "name": "dihedral", "params": {"n": 3}}
//! {"kind": "product", "op": "direct", "factors": [...]}
//! {"kind": "product", "op": "semidirect", "factors": [N, H], "action": [[...], ...]}
//! ```
//!
//! Permutation images are 1-based. For a semidirect product, `action[i]`
//! lists the images (element indices of `N`) of the generators of `N` under
//! the `i`-th generator of `H`.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::caps::Caps;
use crate::catalog::{self, CatalogSpec};
use crate::error::{validation, Error, Result};
use crate::group::GroupTable;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProductOp {
    Direct,
    Semidirect,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GroupDocument {
    Permutation {
        degree: usize,
        generators: Vec<Vec<usize>>,
    },
    Catalog(CatalogSpec),
    Product {
        op: ProductOp,
        factors: Vec<GroupDocument>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        action: Option<Vec<Vec<usize>>>,
    },
}

impl GroupDocument {
    pub fn from_json(text: &str) -> Result<GroupDocument> {
        serde_json::from_str(text).map_err(|e| Error::Validation(format!("group document: {e}")))
    }

    pub fn build(&self, caps: &Caps) -> Result<GroupTable> {
        match self {
            GroupDocument::Permutation { degree, generators } => {
                let gens = generators
                    .iter()
                    .map(|img| {
                        img.iter()
                            .map(|&v| match v {
                                1.. if v <= *degree => Ok(v - 1),
                                _ => validation(format!("point {v} outside 1..={degree}")),
                            })
                            .collect::<Result<Vec<usize>>>()
                    })
                    .collect::<Result<Vec<_>>>()?;
                GroupTable::from_permutations(*degree, &gens, caps)
            }
            GroupDocument::Catalog(spec) => catalog::build(spec, caps),
            GroupDocument::Product { op: ProductOp::Direct, factors, .. } => {
                let mut acc = GroupTable::trivial();
                for f in factors {
                    acc = GroupTable::direct_product(&acc, &f.build(caps)?, caps)?;
                }
                Ok(acc)
            }
            GroupDocument::Product { op: ProductOp::Semidirect, factors, action } => {
                let [n, h] = factors.as_slice() else {
                    return validation("semidirect product takes exactly two factors");
                };
                let action = action.as_ref().ok_or_else(|| Error::Validation("semidirect product needs an action".into()))?;
                semidirect(&n.build(caps)?, &h.build(caps)?, action, caps)
            }
        }
    }
}

/// Extends generator images to a homomorphism `src -> dst`, or `None` if
/// the assignment is inconsistent.
fn extend_images(src: &GroupTable, dst: &GroupTable, images: &[usize]) -> Option<Vec<usize>> {
    let gens = src.generators();
    let mut f = vec![usize::MAX; src.order()];
    f[0] = 0;
    let mut queue = VecDeque::from([0usize]);
    while let Some(y) = queue.pop_front() {
        for (&s, &t) in gens.iter().zip(images) {
            let z = src.mul(y, s);
            let w = dst.mul(f[y], t);
            if f[z] == usize::MAX {
                f[z] = w;
                queue.push_back(z);
            } else if f[z] != w {
                return None;
            }
        }
    }
    Some(f)
}

/// `N x| H` with `(n1, h1)(n2, h2) = (n1 theta_h1(n2), h1 h2)`, element
/// `(n, h)` at index `n |H| + h`.
fn semidirect(n: &GroupTable, h: &GroupTable, action: &[Vec<usize>], caps: &Caps) -> Result<GroupTable> {
    if action.len() != h.generators().len() {
        return validation("one action entry per generator of the acting factor");
    }
    let mut gen_autos = Vec::new();
    for imgs in action {
        if imgs.len() != n.generators().len() || imgs.iter().any(|&x| x >= n.order()) {
            return validation("action entry must give an image for each generator of the normal factor");
        }
        let f = extend_images(n, n, imgs).ok_or_else(|| Error::Validation("action is not a homomorphism".into()))?;
        let mut seen = vec![false; n.order()];
        for &x in &f {
            seen[x] = true;
        }
        if seen.contains(&false) {
            return validation("action is not bijective");
        }
        gen_autos.push(f);
    }
    // theta_{h s} = theta_h o theta_s
    let mut theta: Vec<Option<Vec<usize>>> = vec![None; h.order()];
    theta[0] = Some((0..n.order()).collect());
    let mut queue = VecDeque::from([0usize]);
    while let Some(y) = queue.pop_front() {
        for (&s, a) in h.generators().iter().zip(&gen_autos) {
            let z = h.mul(y, s);
            let ty = theta[y].as_ref().unwrap();
            let tz: Vec<usize> = a.iter().map(|&x| ty[x]).collect();
            match &theta[z] {
                None => {
                    theta[z] = Some(tz);
                    queue.push_back(z);
                }
                Some(prev) if *prev != tz => return validation("action does not define a homomorphism"),
                Some(_) => {}
            }
        }
    }
    let theta: Vec<Vec<usize>> = theta.into_iter().map(Option::unwrap).collect();
    let (nn, hn) = (n.order(), h.order());
    caps.check("group closure", caps.table, nn * hn)?;
    let rows: Vec<Vec<usize>> = (0..nn * hn)
        .map(|a| {
            let (n1, h1) = (a / hn, a % hn);
            (0..nn * hn)
                .map(|b| {
                    let (n2, h2) = (b / hn, b % hn);
                    n.mul(n1, theta[h1][n2]) * hn + h.mul(h1, h2)
                })
                .collect()
        })
        .collect();
    GroupTable::from_rows(&rows, caps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::iso::are_isomorphic;

    #[test]
    fn documents_parse_and_build() {
        let caps = Caps::default();
        let perm = GroupDocument::from_json(r#"{"kind":"permutation","degree":3,"generators":[[2,3,1],[2,1,3]]}"#).unwrap();
        assert_eq!(perm.build(&caps).unwrap().order(), 6);
        let cat = GroupDocument::from_json(r#"{"kind":"catalog","name":"dihedral","params":{"n":3}}"#).unwrap();
        assert_eq!(cat.build(&caps).unwrap().order(), 8);
        let prod = GroupDocument::Product { op: ProductOp::Direct, factors: vec![perm.clone(), cat.clone()], action: None };
        let text = serde_json::to_string(&prod).unwrap();
        assert_eq!(GroupDocument::from_json(&text).unwrap(), prod);
        assert_eq!(prod.build(&caps).unwrap().order(), 48);
    }

    #[test]
    fn semidirect_c3_by_c2_is_s3() {
        let caps = Caps::default();
        let c3 = GroupDocument::Catalog(CatalogSpec::Cyclic { n: 3 });
        let c2 = GroupDocument::Catalog(CatalogSpec::Cyclic { n: 2 });
        let n = c3.build(&caps).unwrap();
        let inv = n.inv(n.generators()[0]);
        let doc = GroupDocument::Product { op: ProductOp::Semidirect, factors: vec![c3.clone(), c2.clone()], action: Some(vec![vec![inv]]) };
        let g = doc.build(&caps).unwrap();
        let s3 = GroupDocument::Permutation { degree: 3, generators: vec![vec![2, 3, 1], vec![2, 1, 3]] }.build(&caps).unwrap();
        assert!(are_isomorphic(&g, &s3));
        // trivial action gives C6
        let triv = GroupDocument::Product { op: ProductOp::Semidirect, factors: vec![c3, c2], action: Some(vec![vec![n.generators()[0]]]) };
        assert!(triv.build(&caps).unwrap().is_abelian());
    }

    #[test]
    fn bad_documents() {
        let caps = Caps::default();
        assert!(GroupDocument::from_json(r#"{"kind":"permutation","degree":3,"generators":[[2,3,4]]}"#).unwrap().build(&caps).is_err());
        assert!(GroupDocument::from_json(r#"{"kind":"permutation","degree":3,"generators":[[2,2,1]]}"#).unwrap().build(&caps).is_err());
        assert!(GroupDocument::from_json(r#"{"kind":"nope"}"#).is_err());
        let c3 = GroupDocument::Catalog(CatalogSpec::Cyclic { n: 3 });
        let c2 = GroupDocument::Catalog(CatalogSpec::Cyclic { n: 2 });
        let zero = GroupDocument::Product { op: ProductOp::Semidirect, factors: vec![c3, c2], action: Some(vec![vec![0]]) };
        assert!(zero.build(&caps).is_err());
    }
}
