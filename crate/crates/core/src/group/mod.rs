//! Finite groups as multiplication tables and the subgroup machinery on top.

pub mod action;
pub mod arith;
pub mod counting;
pub mod iso;
pub mod lattice;
pub mod morphism;
pub mod ops;
pub mod subgroup;
pub mod table;

pub use action::{ActionGroup, QuotientGroup};
pub use morphism::GroupMorphism;
pub use subgroup::SubgroupSet;
pub use table::GroupTable;
