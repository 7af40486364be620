//! Check outcomes, witnesses and mutation switches.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::exact::SparseMatrix;

/// Result of one verification: pass flag plus JSON witnesses.
///
/// Failing witnesses point at the first violated identity; informational
/// ones record what was checked (blocks, dimensions, scalars).
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Outcome {
    pub pass: bool,
    pub witnesses: Vec<Value>,
}

impl Outcome {
    pub fn new() -> Self {
        Outcome { pass: true, witnesses: Vec::new() }
    }

    pub fn fail(&mut self, w: Value) {
        self.pass = false;
        self.witnesses.push(w);
    }

    pub fn info(&mut self, w: Value) {
        self.witnesses.push(w);
    }

    /// Records `w` as a failure when `ok` is false.
    pub fn require(&mut self, ok: bool, w: impl FnOnce() -> Value) {
        if !ok {
            self.fail(w());
        }
    }

    pub fn absorb(&mut self, o: Outcome) {
        self.pass &= o.pass;
        self.witnesses.extend(o.witnesses);
    }

    /// Fails with the first differing entry (or the shapes) when `lhs != rhs`.
    pub fn require_equal(&mut self, lhs: &SparseMatrix, rhs: &SparseMatrix, context: impl FnOnce() -> Value) {
        if (lhs.rows(), lhs.cols()) != (rhs.rows(), rhs.cols()) {
            self.fail(json!({"violation": context(), "lhs_shape": [lhs.rows(), lhs.cols()],
                             "rhs_shape": [rhs.rows(), rhs.cols()]}));
        } else if let Some((r, c, a, b)) = lhs.first_difference(rhs) {
            self.fail(json!({"violation": context(), "row": r, "col": c,
                             "lhs": a.to_string(), "rhs": b.to_string()}));
        }
    }

    pub fn failures(&self) -> usize {
        self.witnesses.iter().filter(|w| w.get("violation").is_some()).count()
    }
}

/// Deliberate corruptions of the constructions, used to show that the checks
/// can fail.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mutations {
    /// Replace (-1)^s by (-1)^{s+1} in the fused action elements.
    #[serde(default)]
    pub flip_combact_sign: bool,
    /// Drop the unit term from σ_p x_p = x_{p+1} σ_p - 1.
    #[serde(default)]
    pub drop_hecke_unit: bool,
    /// Omit the factor (1 - Z(u)) in the X/E exchange identity.
    #[serde(default)]
    pub omit_one_minus_z: bool,
}

impl Mutations {
    pub fn none() -> Self {
        Self::default()
    }

    pub fn parse(name: &str) -> Option<Self> {
        let mut m = Self::default();
        match name {
            "none" => {}
            "flip-combact-sign" => m.flip_combact_sign = true,
            "drop-hecke-unit" => m.drop_hecke_unit = true,
            "omit-one-minus-z" => m.omit_one_minus_z = true,
            _ => return None,
        }
        Some(m)
    }

    pub fn is_none(&self) -> bool {
        *self == Self::default()
    }
}
