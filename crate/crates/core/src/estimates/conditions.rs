//! Exponent conditions for the bilinear `X^{s,b}` product estimate.

use serde::{Deserialize, Serialize};

/// `(s0, s1, s2, b0, b1, b2)`: the estimate reads
/// `||uv||_{X^{-s0,-b0}} <~ ||u||_{X^{s1,b1}} ||v||_{X^{s2,b2}}`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct ExponentTuple {
    pub s0: f64,
    pub s1: f64,
    pub s2: f64,
    pub b0: f64,
    pub b1: f64,
    pub b2: f64,
}

impl ExponentTuple {
    pub fn new(s: [f64; 3], b: [f64; 3]) -> Self {
        ExponentTuple {
            s0: s[0],
            s1: s[1],
            s2: s[2],
            b0: b[0],
            b1: b[1],
            b2: b[2],
        }
    }

    pub fn s(&self) -> [f64; 3] {
        [self.s0, self.s1, self.s2]
    }

    pub fn b(&self) -> [f64; 3] {
        [self.b0, self.b1, self.b2]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConditionReport {
    pub satisfied: bool,
    /// Names of the failing inequalities, in list order.
    pub violated: Vec<String>,
}

/// Names of the fourteen inequalities, in evaluation order.
pub const CONDITION_NAMES: [&str; 14] = [
    "b0+b1+b2 > 1/2",
    "b0+b1 >= 0",
    "b0+b2 >= 0",
    "b1+b2 >= 0",
    "s0+s1+s2 > 3/2 - (b0+b1+b2)",
    "s0+s1+s2 > 1 - min(b0+b1, b0+b2, b1+b2)",
    "s0+s1+s2 > 1/2 - min(b0, b1, b2)",
    "s0+s1+s2 > 3/4",
    "(s0+b0) + 2s1 + 2s2 > 1",
    "2s0 + (s1+b1) + 2s2 > 1",
    "2s0 + 2s1 + (s2+b2) > 1",
    "s1+s2 >= max(0, -b0)",
    "s0+s2 >= max(0, -b1)",
    "s0+s1 >= max(0, -b2)",
];

/// Evaluates each inequality as stated, strict and non-strict kept apart.
pub fn bilinear_conditions(e: &ExponentTuple) -> ConditionReport {
    let ExponentTuple { s0, s1, s2, b0, b1, b2 } = *e;
    let s = s0 + s1 + s2;
    let bsum = b0 + b1 + b2;
    let checks = [
        bsum > 0.5,
        b0 + b1 >= 0.0,
        b0 + b2 >= 0.0,
        b1 + b2 >= 0.0,
        s > 1.5 - bsum,
        s > 1.0 - (b0 + b1).min(b0 + b2).min(b1 + b2),
        s > 0.5 - b0.min(b1).min(b2),
        s > 0.75,
        (s0 + b0) + 2.0 * s1 + 2.0 * s2 > 1.0,
        2.0 * s0 + (s1 + b1) + 2.0 * s2 > 1.0,
        2.0 * s0 + 2.0 * s1 + (s2 + b2) > 1.0,
        s1 + s2 >= 0f64.max(-b0),
        s0 + s2 >= 0f64.max(-b1),
        s0 + s1 >= 0f64.max(-b2),
    ];
    let violated: Vec<String> = checks
        .iter()
        .zip(CONDITION_NAMES)
        .filter(|(ok, _)| !**ok)
        .map(|(_, name)| name.to_string())
        .collect();
    ConditionReport {
        satisfied: violated.is_empty(),
        violated,
    }
}

/// Conditions of the Sobolev multiplication law
/// `||uv||_{H^{-s0}} <~ ||u||_{H^{s1}} ||v||_{H^{s2}}` in two dimensions.
pub fn sobolev_product_conditions(s0: f64, s1: f64, s2: f64) -> bool {
    let sum = s0 + s1 + s2;
    let max = s0.max(s1).max(s2);
    let equalities = (sum == 1.0) as u8 + (sum == max) as u8;
    sum >= 1.0 && sum >= max && equalities <= 1
}
