//! Consistency of computed normality with the strong-resistance
//! classification on concrete instances.

use serde::Serialize;

use crate::caps::Caps;
use crate::catalog::{resistance_class_of, ResistanceClass};
use crate::corpus::CorpusEntry;
use crate::error::Result;
use crate::fusion::FusionContext;
use crate::group::ops;
use crate::theorems::normality::{all_verdicts, NormalityVerdict};

#[derive(Clone, Debug, Serialize)]
pub struct ResistanceRow {
    pub name: String,
    pub class: Option<ResistanceClass>,
    pub verdicts: Vec<NormalityVerdict>,
    /// Normality is predicted and therefore asserted.
    pub asserted: bool,
    pub passed: bool,
    pub error: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ResistanceReport {
    pub rows: Vec<ResistanceRow>,
}

impl ResistanceReport {
    pub fn failures(&self) -> impl Iterator<Item = &ResistanceRow> {
        self.rows.iter().filter(|r| !r.passed)
    }

    pub fn passed(&self) -> bool {
        self.failures().next().is_none()
    }
}

/// Classifies `P` and computes every normality verdict.
pub fn resistance_row(name: &str, ctx: &FusionContext) -> Result<ResistanceRow> {
    let pt = ops::induced_table(ctx.g(), ctx.p_sub());
    let class = resistance_class_of(&pt, ctx.caps())?;
    let verdicts = all_verdicts(ctx)?;
    let asserted = class.predicted_normal;
    let agree = verdicts.iter().all(|v| v.normal == verdicts[0].normal);
    let passed = agree && (!asserted || verdicts.iter().all(|v| v.normal));
    Ok(ResistanceRow { name: name.to_string(), class: Some(class), verdicts, asserted, passed, error: None })
}

/// Runs every entry; errors are recorded per row and fail that row.
pub fn resistance_suite(entries: &[CorpusEntry], caps: &Caps) -> ResistanceReport {
    let rows = entries
        .iter()
        .map(|e| {
            e.context(caps).and_then(|ctx| resistance_row(&e.name, &ctx)).unwrap_or_else(|err| ResistanceRow {
                name: e.name.clone(),
                class: None,
                verdicts: Vec::new(),
                asserted: false,
                passed: false,
                error: Some(err.to_string()),
            })
        })
        .collect();
    ResistanceReport { rows }
}
