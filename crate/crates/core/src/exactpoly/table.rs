use std::collections::HashMap;

use super::PolyError;

/// What a variable stands for. `A`..`D` are entries of a generic 2×2 matrix;
/// `slot` on the variable links the four entries of the same matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Role {
    A,
    B,
    C,
    D,
    Nu,
    Eps,
    Delta,
    XSigma,
    Param,
    Other,
}

impl Role {
    pub fn default_weight(self) -> i32 {
        match self {
            Role::B => 1,
            Role::C => -1,
            _ => 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarInfo {
    pub name: String,
    pub role: Role,
    pub slot: Option<usize>,
    pub weight: i32,
}

#[derive(Clone, Debug, Default)]
pub struct VariableTable {
    vars: Vec<VarInfo>,
    index: HashMap<String, usize>,
}

impl PartialEq for VariableTable {
    fn eq(&self, other: &Self) -> bool {
        self.vars == other.vars
    }
}
impl Eq for VariableTable {}

impl VariableTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Table of untagged variables, handy for tests and small examples.
    pub fn plain(names: &[&str]) -> Self {
        let mut t = Self::new();
        for n in names {
            t.push(n, Role::Other, None).expect("distinct names");
        }
        t
    }

    pub fn push(&mut self, name: &str, role: Role, slot: Option<usize>) -> Result<usize, PolyError> {
        self.push_weighted(name, role, slot, role.default_weight())
    }

    pub fn push_weighted(
        &mut self,
        name: &str,
        role: Role,
        slot: Option<usize>,
        weight: i32,
    ) -> Result<usize, PolyError> {
        if self.index.contains_key(name) {
            return Err(PolyError::Structural(format!("duplicate variable '{name}'")));
        }
        let id = self.vars.len();
        self.vars.push(VarInfo {
            name: name.to_string(),
            role,
            slot,
            weight,
        });
        self.index.insert(name.to_string(), id);
        Ok(id)
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn id(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn info(&self, id: usize) -> &VarInfo {
        &self.vars[id]
    }

    pub fn name(&self, id: usize) -> &str {
        &self.vars[id].name
    }

    pub fn vars(&self) -> &[VarInfo] {
        &self.vars
    }

    /// Finds the variable with the given role and matrix slot.
    pub fn find(&self, role: Role, slot: usize) -> Option<usize> {
        self.vars
            .iter()
            .position(|v| v.role == role && v.slot == Some(slot))
    }

    /// A name not yet used in the table, built from `base`.
    pub fn fresh_name(&self, base: &str) -> String {
        if !self.index.contains_key(base) {
            return base.to_string();
        }
        let mut k = 1;
        loop {
            let cand = format!("{base}_{k}");
            if !self.index.contains_key(&cand) {
                return cand;
            }
            k += 1;
        }
    }

    /// True when every variable of `self` occurs in `other` at the same index.
    pub fn is_prefix_of(&self, other: &VariableTable) -> bool {
        self.vars.len() <= other.vars.len()
            && self.vars.iter().zip(&other.vars).all(|(a, b)| a == b)
    }
}
