//! Machine-readable diagnostics shared by every stage.

use std::fmt;
use std::ops::Range;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Severity {
    Error,
    Info,
}

impl Severity {
    pub fn as_str(self) -> &'static str {
        match self {
            Severity::Error => "error",
            Severity::Info => "info",
        }
    }
}

/// One message with a stable `code`, human text and an optional byte span
/// into the sentence it concerns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub code: &'static str,
    pub message: String,
    pub span: Option<Range<usize>>,
    pub severity: Severity,
}

impl Diagnostic {
    pub fn error(code: &'static str, message: impl Into<String>, span: Option<Range<usize>>) -> Self {
        Diagnostic { code, message: message.into(), span, severity: Severity::Error }
    }

    pub fn info(code: &'static str, message: impl Into<String>, span: Option<Range<usize>>) -> Self {
        Diagnostic { code, message: message.into(), span, severity: Severity::Info }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]: {}", self.severity.as_str(), self.code, self.message)?;
        if let Some(s) = &self.span {
            write!(f, " at {}..{}", s.start, s.end)?;
        }
        Ok(())
    }
}
