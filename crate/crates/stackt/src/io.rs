//! Document format: a line-oriented UTF-8 text format (JSON object
//! layout) with explicit integer tables, a kind tag, and a format
//! version. Serialization is canonical, so equal documents serialize to
//! identical bytes and canonical text round-trips exactly.

use serde::{Deserialize, Serialize};

use crate::action::{GMorphism, WeakAction};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::groupoid::FiniteGroupoid;

pub const FORMAT_VERSION: &str = "1";

/// The payload of a document, discriminated by the `kind` field.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Payload {
    Group { group: FiniteGroup },
    Groupoid { groupoid: FiniteGroupoid },
    Action { action: WeakAction },
    GMorphism {
        source: WeakAction,
        target: WeakAction,
        morphism: GMorphism,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecDocument {
    pub version: String,
    #[serde(flatten)]
    pub payload: Payload,
}

impl SpecDocument {
    pub fn group(group: FiniteGroup) -> Self {
        SpecDocument { version: FORMAT_VERSION.into(), payload: Payload::Group { group } }
    }

    pub fn groupoid(groupoid: FiniteGroupoid) -> Self {
        SpecDocument { version: FORMAT_VERSION.into(), payload: Payload::Groupoid { groupoid } }
    }

    pub fn action(action: WeakAction) -> Self {
        SpecDocument { version: FORMAT_VERSION.into(), payload: Payload::Action { action } }
    }

    pub fn g_morphism(source: WeakAction, target: WeakAction, morphism: GMorphism) -> Self {
        SpecDocument {
            version: FORMAT_VERSION.into(),
            payload: Payload::GMorphism { source, target, morphism },
        }
    }
}

/// Canonical text: pretty-printed with fixed key order and a trailing
/// newline.
pub fn serialize_spec(doc: &SpecDocument) -> String {
    let mut text = serde_json::to_string_pretty(doc).expect("documents always serialize");
    text.push('\n');
    text
}

/// Parse a document; errors carry line and column, and table shapes
/// are pre-checked so that a missing coherence entry is reported by its
/// (g, h) coordinates rather than failing later.
pub fn parse_spec(text: &str) -> Result<SpecDocument> {
    let doc: SpecDocument = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        detail: e.to_string(),
    })?;
    if doc.version != FORMAT_VERSION {
        return Err(Error::Version {
            found: doc.version,
            expected: FORMAT_VERSION.into(),
        });
    }
    check_shapes(&doc)?;
    Ok(doc)
}

/// Shape-level semantic checks; axiom checking is left to the
/// validators.
fn check_shapes(doc: &SpecDocument) -> Result<()> {
    match &doc.payload {
        Payload::Group { group } => {
            let n = group.order();
            if group.table.iter().any(|row| row.len() != n) {
                return Err(Error::Semantic {
                    detail: "group table is not square".into(),
                });
            }
        }
        Payload::Groupoid { .. } => {}
        Payload::Action { action } => check_action_shape(action)?,
        Payload::GMorphism { source, target, morphism } => {
            check_action_shape(source)?;
            check_action_shape(target)?;
            let n = source.group.order();
            if morphism.sigma.len() != n {
                return Err(Error::Semantic {
                    detail: format!(
                        "equivariance family has {} rows, expected {n}",
                        morphism.sigma.len()
                    ),
                });
            }
        }
    }
    Ok(())
}

fn check_action_shape(action: &WeakAction) -> Result<()> {
    let n = action.group.order();
    if action.mu.len() != n {
        return Err(Error::Semantic {
            detail: format!("action has {} functors, expected {n}", action.mu.len()),
        });
    }
    for g in 0..n {
        if action.alpha.len() <= g || action.alpha[g].len() != n {
            let h = action.alpha.get(g).map_or(0, Vec::len);
            return Err(Error::Semantic {
                detail: format!("coherence entry missing at (g={g}, h={h})"),
            });
        }
        for h in 0..n {
            if action.alpha[g][h].components.len() != action.space.objects {
                return Err(Error::Semantic {
                    detail: format!("coherence entry at (g={g}, h={h}) has wrong length"),
                });
            }
        }
    }
    if action.unit.components.len() != action.space.objects {
        return Err(Error::Semantic {
            detail: "unit family has wrong length".into(),
        });
    }
    Ok(())
}
