//! Problem documents and report rendering.

mod render;
mod spec;

pub use render::{
    emit, failure_document, matrix_json, scalar_latex, scalar_terms_json, spec_json, terms_json,
    vector_latex, Emit, SCHEMA_VERSION,
};
pub use spec::{
    builtin_document, builtin_names, emit_spec, parse_document, parse_spec, Options, SpecDocument,
};

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Rendering target for reports.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum OutputFormat {
    #[default]
    Json,
    Latex,
    Text,
}

impl OutputFormat {
    pub fn name(self) -> &'static str {
        match self {
            OutputFormat::Json => "json",
            OutputFormat::Latex => "latex",
            OutputFormat::Text => "text",
        }
    }
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "latex" => Ok(OutputFormat::Latex),
            "text" => Ok(OutputFormat::Text),
            other => Err(Error::Invalid(format!("unknown output format {other:?}"))),
        }
    }
}
