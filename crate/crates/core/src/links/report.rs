//! Outcomes of candidate Sarkisov links.

use serde::Serialize;

use crate::ambient::{ConeReport, LinkTrace, WciSpec};
use crate::singular::DiscrepancyRecord;

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum LinkVerdict {
    ElementaryLink { target: WciSpec },
    NotSarkisov { certificate: String },
    NotMaximal { certificate: String },
    CitedExclusion { reference: String },
}

impl LinkVerdict {
    pub fn is_link(&self) -> bool {
        matches!(self, LinkVerdict::ElementaryLink { .. })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LinkReport {
    pub name: String,
    pub center: String,
    pub extraction: Option<DiscrepancyRecord>,
    pub trace: Option<LinkTrace>,
    pub cones: Option<ConeReport>,
    pub verdict: LinkVerdict,
}

impl LinkReport {
    pub fn cited(name: &str, center: &str, reference: &str) -> Self {
        LinkReport {
            name: name.into(),
            center: center.into(),
            extraction: None,
            trace: None,
            cones: None,
            verdict: LinkVerdict::CitedExclusion { reference: reference.into() },
        }
    }
}
