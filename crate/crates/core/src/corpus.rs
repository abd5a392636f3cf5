//! The shipped manifest of `(G, p, P)` instances.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::fusion::{FusionContext, Mode};
use crate::group::{ops, GroupTable, SubgroupSet};
use crate::input::GroupDocument;

/// How to choose the strongly closed subgroup `P`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PSelector {
    /// `P = S`.
    #[default]
    Sylow,
    /// `P = O_p(G)`.
    Core,
    /// The subgroup generated by the listed elements.
    Generated(Vec<usize>),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CorpusEntry {
    pub name: String,
    pub group: GroupDocument,
    pub prime: usize,
    #[serde(default)]
    pub p_sub: PSelector,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct Manifest {
    pub entries: Vec<CorpusEntry>,
}

impl Manifest {
    pub fn from_json(text: &str) -> Result<Manifest> {
        serde_json::from_str(text).map_err(|e| Error::Validation(format!("manifest: {e}")))
    }
}

pub fn shipped() -> Manifest {
    Manifest::from_json(include_str!("../data/corpus.json")).expect("shipped corpus parses")
}

/// Resolves `S` (given generators, else the deterministic Sylow) and `P`.
pub fn build_context(
    g: Arc<GroupTable>,
    p: usize,
    sylow: Option<&[usize]>,
    p_sub: &PSelector,
    mode: Mode,
    caps: Caps,
) -> Result<FusionContext> {
    let n = g.order();
    if let Some(x) = sylow.into_iter().flatten().find(|&&x| x >= n) {
        return Err(Error::Validation(format!("element {x} outside 0..{n}")));
    }
    let whole = SubgroupSet::whole(&g);
    let s = match sylow {
        Some(gens) => ops::generated(&g, gens),
        None => ops::sylow_subgroup(&g, &whole, p),
    };
    let pp = match p_sub {
        PSelector::Sylow => s.clone(),
        PSelector::Core => ops::o_p(&g, &whole, p),
        PSelector::Generated(gens) => {
            if let Some(x) = gens.iter().find(|&&x| x >= n) {
                return Err(Error::Validation(format!("element {x} outside 0..{n}")));
            }
            ops::generated(&g, gens)
        }
    };
    FusionContext::new(g, p, s, Some(pp), mode, caps)
}

impl CorpusEntry {
    pub fn group_table(&self, caps: &Caps) -> Result<GroupTable> {
        self.group.build(caps)
    }

    pub fn context(&self, caps: &Caps) -> Result<FusionContext> {
        let g = Arc::new(self.group_table(caps)?);
        build_context(g, self.prime, None, &self.p_sub, Mode::Restricted, *caps)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shipped_manifest_shape() {
        let m = shipped();
        assert!(m.entries.len() >= 20);
        let caps = Caps::default();
        for e in m.entries.iter().filter(|e| !e.name.starts_with("SL(3,3)")) {
            let ctx = e.context(&caps).unwrap_or_else(|err| panic!("{}: {err}", e.name));
            assert!(ctx.p_sub().is_subset(ctx.s()));
        }
    }

    #[test]
    fn matrix_groups_have_expected_orders() {
        let caps = Caps::default();
        let m = shipped();
        let order = |name: &str| m.entries.iter().find(|e| e.name.starts_with(name)).unwrap().group_table(&caps).unwrap().order();
        assert_eq!(order("SL(2,3)"), 24);
        assert_eq!(order("GL(2,3)"), 48);
        assert_eq!(order("A5"), 60);
    }

    #[test]
    fn core_selector() {
        let m = shipped();
        let e = m.entries.iter().find(|e| e.name == "GL(2,3) at 2, normal Q8").unwrap();
        let ctx = e.context(&Caps::default()).unwrap();
        assert_eq!(ctx.p_sub().order(), 8);
        assert_eq!(ctx.s().order(), 16);
    }
}
