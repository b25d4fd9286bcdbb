use std::collections::HashMap;
use std::fmt;

use super::PolyError;

/// Ordered universe of ring variables.
///
/// Position 0 has the highest priority in every monomial order.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct VariableRegistry {
    names: Vec<String>,
    position: HashMap<String, usize>,
}

pub(crate) fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl VariableRegistry {
    pub fn new<I, S>(names: I) -> Result<Self, PolyError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut reg = VariableRegistry::default();
        for name in names {
            reg.push(name.into())?;
        }
        Ok(reg)
    }

    fn push(&mut self, name: String) -> Result<usize, PolyError> {
        if !is_identifier(&name) {
            return Err(PolyError::BadVariableName(name));
        }
        if self.position.contains_key(&name) {
            return Err(PolyError::DuplicateVariable(name));
        }
        let idx = self.names.len();
        self.position.insert(name.clone(), idx);
        self.names.push(name);
        Ok(idx)
    }

    /// Copy of this registry with `name` appended at the lowest priority.
    pub fn extended(&self, name: &str) -> Result<Self, PolyError> {
        let mut reg = self.clone();
        reg.push(name.to_string())?;
        Ok(reg)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, idx: usize) -> Option<&str> {
        self.names.get(idx).map(String::as_str)
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.position.get(name).copied()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Comma-separated form used in file headers.
    pub fn serialize(&self) -> String {
        self.names.join(",")
    }

    pub fn parse(text: &str) -> Result<Self, PolyError> {
        let text = text.trim();
        if text.is_empty() {
            return Ok(Self::default());
        }
        Self::new(text.split(',').map(|s| s.trim().to_string()))
    }
}

impl fmt::Debug for VariableRegistry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.names).finish()
    }
}
