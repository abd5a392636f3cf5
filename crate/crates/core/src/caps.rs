use crate::error::{Error, Result};

/// Size caps for the expensive operations.
///
/// The element type of a table is `u16`, so `table` can never exceed 65535.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Maximum order of any constructed group table.
    pub table: usize,
    /// Full associativity check up to this order; sampled above it.
    pub assoc_full: usize,
    /// Number of random triples checked above `assoc_full`.
    pub assoc_samples: usize,
    /// Maximum order of a group whose subgroup lattice is enumerated.
    pub lattice: usize,
    /// Maximum order of a group whose automorphism group is computed.
    pub automorphism: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            table: 10_000,
            assoc_full: 512,
            assoc_samples: 100_000,
            lattice: 2000,
            automorphism: 512,
        }
    }
}

impl Caps {
    /// Applies a `NAME=VALUE` override as accepted on the command line.
    pub fn apply_override(&mut self, spec: &str) -> Result<()> {
        let (name, value) = spec
            .split_once('=')
            .ok_or_else(|| Error::Validation(format!("cap override `{spec}` is not NAME=VALUE")))?;
        let value: usize = value
            .trim()
            .parse()
            .map_err(|_| Error::Validation(format!("cap override `{spec}` has a non-integer value")))?;
        match name.trim() {
            "table" => {
                if value > u16::MAX as usize {
                    return Err(Error::Validation(format!(
                        "table cap {value} exceeds the element index range {}",
                        u16::MAX
                    )));
                }
                self.table = value
            }
            "assoc_full" => self.assoc_full = value,
            "assoc_samples" => self.assoc_samples = value,
            "lattice" => self.lattice = value,
            "automorphism" => self.automorphism = value,
            other => return Err(Error::Validation(format!("unknown cap `{other}`"))),
        }
        Ok(())
    }

    pub(crate) fn check(&self, what: &'static str, limit: usize, actual: usize) -> Result<()> {
        if actual > limit {
            Err(Error::SizeLimit { what, limit, actual })
        } else {
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overrides() {
        let mut caps = Caps::default();
        caps.apply_override("lattice=50").unwrap();
        assert_eq!(caps.lattice, 50);
        assert!(caps.apply_override("table=70000").is_err());
        assert!(caps.apply_override("bogus=1").is_err());
        assert!(caps.apply_override("lattice").is_err());
    }
}
