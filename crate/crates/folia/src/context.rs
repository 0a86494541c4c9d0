//! Shared variable/parameter context.
//!
//! Every polynomial, derivation and point refers to one `VariableContext`.
//! The orders of the variable list and of the parameter list are fixed for
//! the lifetime of a computation so that every downstream iteration is
//! deterministic.

use crate::error::{FoliaError, Result};
use std::fmt;
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VariableContext {
    vars: Vec<String>,
    params: Vec<String>,
}

impl VariableContext {
    /// Build a context; names must be unique across both lists.
    pub fn new<S: Into<String>>(vars: Vec<S>, params: Vec<S>) -> Result<Arc<Self>> {
        let vars: Vec<String> = vars.into_iter().map(Into::into).collect();
        let params: Vec<String> = params.into_iter().map(Into::into).collect();
        let mut seen = std::collections::BTreeSet::new();
        for name in vars.iter().chain(params.iter()) {
            if !seen.insert(name.clone()) {
                return Err(FoliaError::InvalidOption {
                    message: format!("duplicate name `{name}` in context"),
                });
            }
        }
        Ok(Arc::new(Self { vars, params }))
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn nparams(&self) -> usize {
        self.params.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn params(&self) -> &[String] {
        &self.params
    }

    pub fn var_name(&self, i: usize) -> &str {
        &self.vars[i]
    }

    pub fn param_name(&self, i: usize) -> &str {
        &self.params[i]
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn param_index(&self, name: &str) -> Option<usize> {
        self.params.iter().position(|p| p == name)
    }
}

impl fmt::Display for VariableContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "vars: {}", self.vars.join(" "))?;
        if !self.params.is_empty() {
            write!(f, "; params: {}", self.params.join(" "))?;
        }
        Ok(())
    }
}

/// Check that two values share a context, erroring with both summaries otherwise.
pub fn ensure_same_context(a: &VariableContext, b: &VariableContext) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(FoliaError::ContextMismatch {
            left: a.to_string(),
            right: b.to_string(),
        })
    }
}
