//! Global environment of checked definitions, axioms and theorems.

use std::collections::HashMap;
use std::sync::Arc;

use crate::chain::Chain;
use crate::syntax::{Context, Tm};

/// A proved statement together with the chain that proves it.
#[derive(Clone, Debug, PartialEq)]
pub struct TheoremRecord {
    pub name: String,
    /// Short human label of the rule the theorem states, if any.
    pub anchor: Option<String>,
    pub telescope: Context,
    /// The goal, interpreted under `telescope`.
    pub goal: Tm,
    pub chain: Chain,
}

impl TheoremRecord {
    /// Closed statement: the goal quantified over the telescope.
    pub fn statement(&self) -> Tm {
        self.telescope.close_pi(self.goal.clone())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum EntryKind {
    Definition,
    Axiom,
    Theorem(Box<TheoremRecord>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Entry {
    pub name: String,
    pub ty: Tm,
    /// `None` for axioms; axioms never reduce.
    pub body: Option<Tm>,
    pub kind: EntryKind,
}

/// An ordered map from names to entries. Cloning is cheap; a clone may be
/// restricted to a prefix of the entries with [`Environment::prefix`].
#[derive(Clone, Debug, Default)]
pub struct Environment {
    entries: Arc<Vec<Entry>>,
    index: Arc<HashMap<String, usize>>,
    visible: usize,
}

impl PartialEq for Environment {
    fn eq(&self, other: &Self) -> bool {
        self.entries() == other.entries()
    }
}

impl Environment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.visible
    }

    pub fn is_empty(&self) -> bool {
        self.visible == 0
    }

    pub fn entries(&self) -> &[Entry] {
        &self.entries[..self.visible]
    }

    pub fn get(&self, name: &str) -> Option<&Entry> {
        self.position(name).map(|i| &self.entries[i])
    }

    pub fn position(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied().filter(|&i| i < self.visible)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.position(name).is_some()
    }

    pub fn theorems(&self) -> impl Iterator<Item = &TheoremRecord> {
        self.entries().iter().filter_map(|e| match &e.kind {
            EntryKind::Theorem(r) => Some(&**r),
            _ => None,
        })
    }

    pub fn theorem(&self, name: &str) -> Option<&TheoremRecord> {
        match &self.get(name)?.kind {
            EntryKind::Theorem(r) => Some(r),
            _ => None,
        }
    }

    /// View containing only the first `n` entries.
    pub fn prefix(&self, n: usize) -> Environment {
        Environment {
            entries: self.entries.clone(),
            index: self.index.clone(),
            visible: n.min(self.visible),
        }
    }

    /// Appends an entry. The caller is responsible for having checked it
    /// against the current environment. Returns `false` on a duplicate name.
    pub fn push(&mut self, entry: Entry) -> bool {
        if self.contains(&entry.name) {
            return false;
        }
        let entries = Arc::make_mut(&mut self.entries);
        entries.truncate(self.visible);
        let index = Arc::make_mut(&mut self.index);
        index.retain(|_, i| *i < self.visible);
        index.insert(entry.name.clone(), entries.len());
        entries.push(entry);
        self.visible = entries.len();
        true
    }

    /// Replaces the chain stored for theorem `name`, leaving its statement and
    /// body untouched. Used to re-verify altered proofs.
    pub fn replace_chain(&mut self, name: &str, chain: Chain) -> bool {
        let Some(pos) = self.position(name) else {
            return false;
        };
        let entries = Arc::make_mut(&mut self.entries);
        match &mut entries[pos].kind {
            EntryKind::Theorem(r) => {
                r.chain = chain;
                true
            }
            _ => false,
        }
    }
}
