//! Fusion systems of finite groups on p-subgroups.
//!
//! Groups are complete multiplication tables ([`group::GroupTable`]); the
//! fusion system of a group `G` on a Sylow p-subgroup `S` is realized by
//! conjugation in `G`, optionally restricted to a strongly closed `P <= S`.

pub mod caps;
pub mod catalog;
pub mod corpus;
pub mod error;
pub mod essentials;
pub mod fusion;
pub mod group;
pub mod input;
pub mod theorems;

pub use caps::Caps;
pub use error::{Error, Result};
