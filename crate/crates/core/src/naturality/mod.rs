//! Natural transformations computed by brute force over a single object of
//! a category and all of its endomorphisms (or a generating family of
//! them), for finite sets, modules, graded modules, monoid actions and
//! groups.

mod groups;
mod modules;
mod monoid;
mod sets;

use serde::Serialize;
use serde_json::Value;

pub use crate::finite::{FiniteFunction, FiniteGroup, FiniteMonoidTable};
use crate::linalg::ExactMatrix;

pub use groups::{finite_group_natural_maps, GroupMapsReport};
pub use modules::{central_module, graded_central, graded_central_with_rank, GradedComponent, EXHAUSTIVE_MORPHISM_LIMIT};
pub use monoid::{monoid_reconstruction, MonoidReconstruction};
pub use sets::{
    central_set_bruteforce, central_set_determined, component_on, natural_maps_bruteforce, projection_index,
};

/// The full subcategory a computation ranged over.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Subcategory {
    pub objects: Vec<String>,
    /// Number of morphisms imposed (all endomorphisms, or a generating family).
    pub morphisms: usize,
}

/// The transformations that survived every compatibility condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Survivors {
    /// Set-level maps `X^n -> X`, tabulated over tuples in lexicographic order.
    Functions(Vec<FiniteFunction>),
    /// A basis of a solution space over a field.
    Basis(Vec<ExactMatrix>),
    /// Every solution, listed.
    Elements(Vec<ExactMatrix>),
    /// Independent solution sets per graded component.
    Graded(Vec<GradedComponent>),
}

impl Survivors {
    pub fn len(&self) -> usize {
        match self {
            Self::Functions(v) => v.len(),
            Self::Basis(v) | Self::Elements(v) => v.len(),
            Self::Graded(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn functions(&self) -> Option<&[FiniteFunction]> {
        match self {
            Self::Functions(v) => Some(v),
            _ => None,
        }
    }

    pub fn matrices(&self) -> Option<&[ExactMatrix]> {
        match self {
            Self::Basis(v) | Self::Elements(v) => Some(v),
            _ => None,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            Self::Functions(_) => "functions",
            Self::Basis(_) => "basis",
            Self::Elements(_) => "elements",
            Self::Graded(_) => "graded",
        }
    }

    fn to_json(&self) -> Value {
        match self {
            Self::Functions(v) => serde_json::to_value(v.iter().map(|f| f.table()).collect::<Vec<_>>()).unwrap_or_default(),
            Self::Basis(v) | Self::Elements(v) => Value::Array(v.iter().map(ExactMatrix::to_json).collect()),
            Self::Graded(v) => serde_json::to_value(v).unwrap_or_default(),
        }
    }
}

/// The natural transformations found at one arity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NaturalityReport {
    pub context: String,
    pub arity: usize,
    pub subcategory: Subcategory,
    pub survivors: Survivors,
    /// Number of natural transformations, when finite and known
    /// (`|R|^dim` for a basis over a finite field).
    pub count: Option<u128>,
    /// Whether the survivors are exactly the natural transformations
    /// (false when only a generating family plus a random sample was used).
    pub complete: bool,
    pub method: String,
    /// Whether every survivor passed an independent re-check of all
    /// compatibility equations.
    pub reverified: bool,
    /// Optional human-readable names for the survivors, in order.
    pub labels: Vec<String>,
    pub elapsed_ms: Option<u64>,
}

impl NaturalityReport {
    pub fn to_json(&self) -> Value {
        serde_json::json!({
            "context": self.context,
            "arity": self.arity,
            "subcategory": self.subcategory,
            "survivor_kind": self.survivors.kind(),
            "survivors": self.survivors.to_json(),
            "labels": self.labels,
            "count": self.count.map(|c| c.to_string()),
            "complete": self.complete,
            "method": self.method,
            "reverified": self.reverified,
            "elapsed_ms": self.elapsed_ms,
        })
    }

    /// Clears wall-clock data so that output is reproducible.
    pub fn without_timing(mut self) -> Self {
        self.elapsed_ms = None;
        self
    }
}

impl Serialize for NaturalityReport {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

pub(crate) fn elapsed_ms(start: std::time::Instant) -> Option<u64> {
    Some(start.elapsed().as_millis() as u64)
}
