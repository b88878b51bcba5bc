//! JSON documents for [`ProductColoring`].
//!
//! ```json
//! {"n": 2, "d": 3, "c": 3, "kind": "simplex_assigned",
//!  "simplices": {"k=2;J=1,2|3;sigma=1,2": 1, ...}, "base": [1, 2]}
//! ```
//! `explicit` documents carry `colors` indexed by point rank; `shift_reduced`
//! documents carry `p`, `q` and a nested `inner` document; `block_reduced`
//! documents carry `dprime`, the `simplices` of `[n]^dprime` and `inner`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::constructions::{block_reduced_with_assignment, shift_reduced_coloring};
use crate::error::{argument, Result};
use crate::hypergraph::Coloring;
use crate::product::{ColoringKind, ProductColoring, SimplexAssignment};
use crate::simplex::SimplexId;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoringDocument {
    pub n: usize,
    pub d: usize,
    pub c: u32,
    #[serde(flatten)]
    pub payload: Payload,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Payload {
    Explicit {
        colors: Vec<u32>,
    },
    SimplexAssigned {
        simplices: BTreeMap<String, u32>,
        base: Vec<u32>,
    },
    ShiftReduced {
        p: u32,
        q: u32,
        inner: Box<ColoringDocument>,
    },
    BlockReduced {
        dprime: usize,
        simplices: BTreeMap<String, u32>,
        inner: Box<ColoringDocument>,
    },
}

fn simplex_strings(assignment: &SimplexAssignment) -> BTreeMap<String, u32> {
    assignment
        .map()
        .iter()
        .map(|(id, &color)| (id.to_string(), color))
        .collect()
}

fn parse_simplices(
    d: usize,
    c: u32,
    simplices: &BTreeMap<String, u32>,
) -> Result<SimplexAssignment> {
    let map = simplices
        .iter()
        .map(|(key, &color)| Ok((key.parse::<SimplexId>()?, color)))
        .collect::<Result<BTreeMap<_, _>>>()?;
    if let Some(id) = map.keys().find(|id| id.ambient() != d) {
        return Err(argument(format!(
            "simplex {id} does not live in dimension {d}"
        )));
    }
    SimplexAssignment::new(d, c, map)
}

impl ProductColoring {
    pub fn to_document(&self) -> ColoringDocument {
        let payload = match self.kind() {
            ColoringKind::Explicit(table) => Payload::Explicit {
                colors: table.clone(),
            },
            ColoringKind::SimplexAssigned { assignment, base } => Payload::SimplexAssigned {
                simplices: simplex_strings(assignment),
                base: base.assignment().to_vec(),
            },
            ColoringKind::ShiftReduced { p, q, inner } => Payload::ShiftReduced {
                p: *p,
                q: *q,
                inner: Box::new(inner.to_document()),
            },
            ColoringKind::BlockReduced {
                block_dim,
                assignment,
                inner,
            } => Payload::BlockReduced {
                dprime: *block_dim,
                simplices: simplex_strings(assignment),
                inner: Box::new(inner.to_document()),
            },
        };
        ColoringDocument {
            n: self.n(),
            d: self.d(),
            c: self.colors(),
            payload,
        }
    }

    /// Rebuilds and validates a coloring from its document.
    pub fn from_document(doc: &ColoringDocument) -> Result<Self> {
        let chi = match &doc.payload {
            Payload::Explicit { colors } => {
                ProductColoring::explicit(doc.n, doc.d, doc.c, colors.clone())?
            }
            Payload::SimplexAssigned { simplices, base } => {
                let base = Coloring::new(doc.c, base.clone())?;
                let assignment = parse_simplices(doc.d, doc.c, simplices)?;
                ProductColoring::simplex_assigned(base, doc.d, assignment)?
            }
            Payload::ShiftReduced { p, q, inner } => {
                shift_reduced_coloring(ProductColoring::from_document(inner)?, *p, *q, doc.d)?
            }
            Payload::BlockReduced {
                dprime,
                simplices,
                inner,
            } => {
                let assignment = parse_simplices(*dprime, doc.c, simplices)?;
                block_reduced_with_assignment(
                    ProductColoring::from_document(inner)?,
                    doc.d,
                    assignment,
                )?
            }
        };
        if (chi.n(), chi.d(), chi.colors()) != (doc.n, doc.d, doc.c) {
            return Err(argument(format!(
                "document header (n = {}, d = {}, c = {}) disagrees with its payload",
                doc.n, doc.d, doc.c
            )));
        }
        Ok(chi)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_document()).expect("documents always serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: ColoringDocument =
            serde_json::from_str(text).map_err(|e| crate::error::Error::Parse {
                line: e.line(),
                message: e.to_string(),
            })?;
        Self::from_document(&doc)
    }
}
