use std::fmt;
use std::sync::Arc;

use super::ScalarError;

/// An ordered list of named symbolic parameters.
///
/// Every [`Scalar`](super::Scalar) lives in exactly one context; arithmetic
/// between scalars of different contexts is rejected.
#[derive(Clone)]
pub struct Context(Arc<Vec<String>>);

impl Context {
    pub fn new<I, S>(names: I) -> Result<Self, ScalarError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut out: Vec<String> = Vec::new();
        for name in names {
            let name = name.into();
            if !is_identifier(&name) {
                return Err(ScalarError::InvalidIdentifier(name));
            }
            if out.contains(&name) {
                return Err(ScalarError::DuplicateParameter(name));
            }
            out.push(name);
        }
        Ok(Context(Arc::new(out)))
    }

    pub fn empty() -> Self {
        Context(Arc::new(Vec::new()))
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }

    /// A new context with `extra` appended after the current parameters.
    pub fn extend<I, S>(&self, extra: I) -> Result<Context, ScalarError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names = self
            .0
            .iter()
            .cloned()
            .chain(extra.into_iter().map(Into::into));
        Context::new(names)
    }
}

impl PartialEq for Context {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for Context {}

impl fmt::Debug for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.0.iter()).finish()
    }
}

/// Letter followed by letters, digits or underscores.
pub fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_alphabetic() => chars.all(|c| c.is_alphanumeric() || c == '_'),
        _ => false,
    }
}
