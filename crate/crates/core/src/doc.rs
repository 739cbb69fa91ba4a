//! Shared pieces of the JSON document schemas.

use thiserror::Error;

/// Current version stamped on every document this crate reads or writes.
pub const SCHEMA_VERSION: u32 = 1;

pub fn default_schema_version() -> u32 {
    SCHEMA_VERSION
}

pub fn validate_schema_version(v: u32) -> Result<(), DocError> {
    if v == SCHEMA_VERSION {
        Ok(())
    } else {
        Err(DocError::SchemaVersion {
            found: v,
            supported: SCHEMA_VERSION,
        })
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DocError {
    #[error("unsupported schemaVersion {found}, this build reads version {supported}")]
    SchemaVersion { found: u32, supported: u32 },
    #[error("{0}")]
    Invalid(String),
}
