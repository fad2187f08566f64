//! Variable tables: the holomorphic block `Z`, its conjugate partner block
//! `ζ` (rendered `~z`), and auxiliary variables used by elimination.

use std::collections::HashSet;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Prefix that names the conjugate partner of a holomorphic variable.
pub const CONJ_PREFIX: char = '~';

/// Resource caps for exact computations. Exceeding one is a hard error.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Limits {
    /// Maximum total degree of any monomial produced by arithmetic.
    pub max_degree: u32,
    /// Maximum number of terms in any polynomial produced during reduction.
    pub max_terms: usize,
    /// Maximum number of elements in an intermediate Gröbner basis.
    pub max_basis: usize,
    /// Maximum number of S-pairs processed by one basis computation.
    pub max_pairs: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_degree: 256,
            max_terms: 200_000,
            max_basis: 5_000,
            max_pairs: 200_000,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VarRole {
    Holomorphic,
    Conjugate,
    Auxiliary,
}

/// Ordered variable names with a fixed layout: `Z_0..Z_{N-1}`, then (when
/// paired) `ζ_0..ζ_{N-1}`, then auxiliary variables. `ζ_k` is the partner of
/// `Z_k`; auxiliary variables are never paired.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VarTable {
    names: Vec<String>,
    holo: usize,
    paired: bool,
    limits: Limits,
}

fn check_identifier(name: &str) -> Result<()> {
    let mut chars = name.chars();
    let ok = match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {
            chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
        }
        _ => false,
    };
    if !ok || name == "i" {
        return Err(Error::usage(format!(
            "`{name}` is not a valid variable name"
        )));
    }
    Ok(())
}

impl VarTable {
    /// Table over `(Z, ζ)` with `ζ_k` named `~z_k`.
    pub fn paired<S: AsRef<str>>(names: &[S]) -> Result<Arc<Self>> {
        Self::build(names, true, Limits::default())
    }

    /// Table over the holomorphic block only.
    pub fn holomorphic<S: AsRef<str>>(names: &[S]) -> Result<Arc<Self>> {
        Self::build(names, false, Limits::default())
    }

    fn build<S: AsRef<str>>(names: &[S], paired: bool, limits: Limits) -> Result<Arc<Self>> {
        let mut all: Vec<String> = Vec::with_capacity(names.len() * 2);
        for n in names {
            check_identifier(n.as_ref())?;
            all.push(n.as_ref().to_string());
        }
        if paired {
            for n in names {
                all.push(format!("{CONJ_PREFIX}{}", n.as_ref()));
            }
        }
        let table = VarTable {
            holo: names.len(),
            names: all,
            paired,
            limits,
        };
        table.check_unique()?;
        Ok(Arc::new(table))
    }

    fn check_unique(&self) -> Result<()> {
        let mut seen = HashSet::new();
        for n in &self.names {
            if !seen.insert(n.as_str()) {
                return Err(Error::usage(format!("variable `{n}` declared twice")));
            }
        }
        Ok(())
    }

    /// Same table with additional auxiliary variables appended. Auxiliary
    /// names are free-form; they only need to be unique.
    pub fn with_aux<S: AsRef<str>>(&self, aux: &[S]) -> Result<Arc<Self>> {
        let mut t = self.clone();
        t.names.extend(aux.iter().map(|s| s.as_ref().to_string()));
        t.check_unique()?;
        Ok(Arc::new(t))
    }

    /// Holomorphic-only table carrying the same `Z` names and limits.
    pub fn holomorphic_part(&self) -> Arc<Self> {
        Arc::new(VarTable {
            names: self.names[..self.holo].to_vec(),
            holo: self.holo,
            paired: false,
            limits: self.limits,
        })
    }

    pub fn with_limits(&self, limits: Limits) -> Arc<Self> {
        let mut t = self.clone();
        t.limits = limits;
        Arc::new(t)
    }

    pub fn limits(&self) -> &Limits {
        &self.limits
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    /// Number of holomorphic variables `N`.
    pub fn n(&self) -> usize {
        self.holo
    }

    pub fn is_paired(&self) -> bool {
        self.paired
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, idx: usize) -> &str {
        &self.names[idx]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn role(&self, idx: usize) -> VarRole {
        if idx < self.holo {
            VarRole::Holomorphic
        } else if self.paired && idx < 2 * self.holo {
            VarRole::Conjugate
        } else {
            VarRole::Auxiliary
        }
    }

    /// Index of `ζ_k`, the partner of `Z_k`.
    pub fn zeta(&self, k: usize) -> usize {
        debug_assert!(self.paired && k < self.holo);
        self.holo + k
    }

    pub fn partner(&self, idx: usize) -> Option<usize> {
        match self.role(idx) {
            VarRole::Holomorphic if self.paired => Some(idx + self.holo),
            VarRole::Conjugate => Some(idx - self.holo),
            _ => None,
        }
    }

    /// Index of the first auxiliary variable.
    pub fn aux_start(&self) -> usize {
        if self.paired {
            2 * self.holo
        } else {
            self.holo
        }
    }

    pub fn holo_indices(&self) -> std::ops::Range<usize> {
        0..self.holo
    }

    pub fn zeta_indices(&self) -> std::ops::Range<usize> {
        if self.paired {
            self.holo..2 * self.holo
        } else {
            self.holo..self.holo
        }
    }

    pub fn aux_indices(&self) -> std::ops::Range<usize> {
        self.aux_start()..self.names.len()
    }

    /// Plain variable names of the `Z` block (the `vars =` declaration).
    pub fn holo_names(&self) -> &[String] {
        &self.names[..self.holo]
    }
}

/// Two tables are compatible when they are the same allocation or equal.
pub fn same_table(a: &Arc<VarTable>, b: &Arc<VarTable>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}
