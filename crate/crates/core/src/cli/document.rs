//! The on-disk dessin document: a small, strict TOML file.
//!
//! ```toml
//! format_version = "1"
//! n_darts = 4
//! rho0 = [1, 2, 3, 0]
//! rho1 = [2, 3, 0, 1]
//!
//! [metric]                      # optional, indexed by dart
//! lengths = [1.0, 1.0, 1.0, 1.0]
//! angles = [1.5707963267948966, ...]
//!
//! [colors]                      # optional, indexed by orbit id
//! edge_color = ["blue", ...]
//! face_shade = ["white", ...]
//! vertex_label = ["zero", ...]
//! ```
//!
//! Unknown keys are rejected. [`DessinDocument::to_canonical_string`]
//! always produces the same text for the same document.

use std::fmt::{self, Write as _};
use std::ops::Range;

use serde::Deserialize;
use thiserror::Error;
use toml::Spanned;

use crate::cartography::{Dessin, DessinError, MalformedError};
use crate::metric::{MetricData, MetricError};
use crate::tiling::{EdgeColor, Shade, TilingError, TricoloredDessin, VertexLabel};

pub const FORMAT_VERSION: &str = "1";

/// Where in the source text a problem was found (1-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Position {
    pub line: usize,
    pub column: usize,
}

impl Position {
    fn at(text: &str, offset: usize) -> Self {
        let before = &text[..offset.min(text.len())];
        let line = before.matches('\n').count() + 1;
        let column = before.len() - before.rfind('\n').map_or(0, |i| i + 1) + 1;
        Position { line, column }
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}", self.line, self.column)
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DocumentError {
    #[error("{}{message}", position.map(|p| format!("{p}: ")).unwrap_or_default())]
    Syntax {
        position: Option<Position>,
        message: String,
    },
    #[error("{position}: unsupported format_version {found:?}, expected {FORMAT_VERSION:?}")]
    Version { position: Position, found: String },
    #[error("{position}: {source}")]
    Shape {
        position: Position,
        source: MalformedError,
    },
    #[error("{position}: {field}[{index}] = {value:?} is not one of {allowed}")]
    UnknownName {
        position: Position,
        field: &'static str,
        index: usize,
        value: String,
        allowed: &'static str,
    },
    #[error("{position}: {field} has {len} entries, expected {expected}")]
    BlockLength {
        position: Position,
        field: &'static str,
        len: usize,
        expected: usize,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct MetricBlock {
    pub lengths: Vec<f64>,
    pub angles: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColorBlock {
    pub edge_color: Vec<EdgeColor>,
    pub face_shade: Vec<Shade>,
    pub vertex_label: Vec<VertexLabel>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DessinDocument {
    pub format_version: String,
    pub n_darts: usize,
    pub rho0: Vec<usize>,
    pub rho1: Vec<usize>,
    pub metric: Option<MetricBlock>,
    pub colors: Option<ColorBlock>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    format_version: Spanned<String>,
    n_darts: Spanned<usize>,
    rho0: Spanned<Vec<Spanned<usize>>>,
    rho1: Spanned<Vec<Spanned<usize>>>,
    metric: Option<RawMetric>,
    colors: Option<RawColors>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMetric {
    lengths: Spanned<Vec<f64>>,
    angles: Spanned<Vec<f64>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawColors {
    edge_color: Spanned<Vec<Spanned<String>>>,
    face_shade: Spanned<Vec<Spanned<String>>>,
    vertex_label: Spanned<Vec<Spanned<String>>>,
}

fn permutation_images(
    text: &str,
    name: &'static str,
    raw: Spanned<Vec<Spanned<usize>>>,
    n: usize,
) -> Result<Vec<usize>, DocumentError> {
    let span = raw.span();
    let items = raw.into_inner();
    if items.len() != n {
        return Err(DocumentError::Shape {
            position: Position::at(text, span.start),
            source: MalformedError::Length {
                name,
                len: items.len(),
                expected: n,
            },
        });
    }
    let mut out = Vec::with_capacity(n);
    for (index, item) in items.into_iter().enumerate() {
        let position = Position::at(text, item.span().start);
        let value = item.into_inner();
        if value >= n {
            return Err(DocumentError::Shape {
                position,
                source: MalformedError::OutOfRange {
                    name,
                    index,
                    value,
                    n,
                },
            });
        }
        out.push(value);
    }
    Ok(out)
}

fn names<T>(
    text: &str,
    field: &'static str,
    allowed: &'static str,
    raw: Spanned<Vec<Spanned<String>>>,
    parse: impl Fn(&str) -> Option<T>,
) -> Result<Vec<T>, DocumentError> {
    raw.into_inner()
        .into_iter()
        .enumerate()
        .map(|(index, item)| {
            parse(item.get_ref()).ok_or_else(|| DocumentError::UnknownName {
                position: Position::at(text, item.span().start),
                field,
                index,
                value: item.get_ref().clone(),
                allowed,
            })
        })
        .collect()
}

fn block_length(
    text: &str,
    field: &'static str,
    span: Range<usize>,
    len: usize,
    expected: usize,
) -> Result<(), DocumentError> {
    if len == expected {
        Ok(())
    } else {
        Err(DocumentError::BlockLength {
            position: Position::at(text, span.start),
            field,
            len,
            expected,
        })
    }
}

impl DessinDocument {
    /// Parses and shape-checks a document. Structural validity of the
    /// permutations is left to [`DessinDocument::dessin`].
    pub fn parse(text: &str) -> Result<Self, DocumentError> {
        let raw: RawDocument = toml::from_str(text).map_err(|e| DocumentError::Syntax {
            position: e.span().map(|s| Position::at(text, s.start)),
            message: e.message().trim_end().to_string(),
        })?;

        if raw.format_version.get_ref() != FORMAT_VERSION {
            return Err(DocumentError::Version {
                position: Position::at(text, raw.format_version.span().start),
                found: raw.format_version.into_inner(),
            });
        }
        let n = *raw.n_darts.get_ref();
        if n == 0 {
            return Err(DocumentError::Shape {
                position: Position::at(text, raw.n_darts.span().start),
                source: MalformedError::Empty,
            });
        }
        let rho0 = permutation_images(text, "rho0", raw.rho0, n)?;
        let rho1 = permutation_images(text, "rho1", raw.rho1, n)?;

        let metric = match raw.metric {
            None => None,
            Some(m) => {
                block_length(
                    text,
                    "metric.lengths",
                    m.lengths.span(),
                    m.lengths.get_ref().len(),
                    n,
                )?;
                block_length(
                    text,
                    "metric.angles",
                    m.angles.span(),
                    m.angles.get_ref().len(),
                    n,
                )?;
                Some(MetricBlock {
                    lengths: m.lengths.into_inner(),
                    angles: m.angles.into_inner(),
                })
            }
        };

        let colors = match raw.colors {
            None => None,
            Some(c) => Some(ColorBlock {
                edge_color: names(
                    text,
                    "colors.edge_color",
                    "blue, green, red",
                    c.edge_color,
                    EdgeColor::from_name,
                )?,
                face_shade: names(
                    text,
                    "colors.face_shade",
                    "white, black",
                    c.face_shade,
                    Shade::from_name,
                )?,
                vertex_label: names(
                    text,
                    "colors.vertex_label",
                    "zero, one, infinity",
                    c.vertex_label,
                    VertexLabel::from_name,
                )?,
            }),
        };

        Ok(DessinDocument {
            format_version: FORMAT_VERSION.to_string(),
            n_darts: n,
            rho0,
            rho1,
            metric,
            colors,
        })
    }

    pub fn from_dessin(d: &Dessin) -> Self {
        DessinDocument {
            format_version: FORMAT_VERSION.to_string(),
            n_darts: d.n_darts(),
            rho0: d.rho0().to_vec(),
            rho1: d.rho1().to_vec(),
            metric: None,
            colors: None,
        }
    }

    pub fn from_tricolored(t: &TricoloredDessin) -> Self {
        DessinDocument {
            colors: Some(ColorBlock {
                edge_color: t.edge_color.clone(),
                face_shade: t.face_shade.clone(),
                vertex_label: t.vertex_label.clone(),
            }),
            ..Self::from_dessin(&t.base)
        }
    }

    pub fn with_metric(mut self, m: &MetricData) -> Self {
        self.metric = Some(MetricBlock {
            lengths: m.lengths().to_vec(),
            angles: m.angles().to_vec(),
        });
        self
    }

    pub fn dessin(&self) -> Result<Dessin, DessinError> {
        Dessin::new(self.rho0.clone(), self.rho1.clone())
    }

    pub fn metric_data(&self, d: &Dessin) -> Option<Result<MetricData, MetricError>> {
        self.metric
            .as_ref()
            .map(|m| MetricData::new(d, m.lengths.clone(), m.angles.clone()))
    }

    pub fn tricolored(&self, d: &Dessin) -> Option<Result<TricoloredDessin, TilingError>> {
        self.colors.as_ref().map(|c| {
            TricoloredDessin::new(
                d.clone(),
                c.edge_color.clone(),
                c.face_shade.clone(),
                c.vertex_label.clone(),
            )
        })
    }

    pub fn to_canonical_string(&self) -> String {
        fn list<T>(items: &[T], f: impl Fn(&T) -> String) -> String {
            let parts: Vec<String> = items.iter().map(f).collect();
            format!("[{}]", parts.join(", "))
        }
        let quoted = |s: &str| format!("\"{s}\"");
        let mut out = String::new();
        let _ = writeln!(out, "format_version = \"{}\"", self.format_version);
        let _ = writeln!(out, "n_darts = {}", self.n_darts);
        let _ = writeln!(out, "rho0 = {}", list(&self.rho0, |v| v.to_string()));
        let _ = writeln!(out, "rho1 = {}", list(&self.rho1, |v| v.to_string()));
        if let Some(m) = &self.metric {
            let _ = writeln!(out, "\n[metric]");
            let _ = writeln!(out, "lengths = {}", list(&m.lengths, |v| format!("{v:?}")));
            let _ = writeln!(out, "angles = {}", list(&m.angles, |v| format!("{v:?}")));
        }
        if let Some(c) = &self.colors {
            let _ = writeln!(out, "\n[colors]");
            let _ = writeln!(
                out,
                "edge_color = {}",
                list(&c.edge_color, |v| quoted(v.name()))
            );
            let _ = writeln!(
                out,
                "face_shade = {}",
                list(&c.face_shade, |v| quoted(v.name()))
            );
            let _ = writeln!(
                out,
                "vertex_label = {}",
                list(&c.vertex_label, |v| quoted(v.name()))
            );
        }
        out
    }
}
