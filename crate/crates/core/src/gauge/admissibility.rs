use serde::{Deserialize, Serialize};

/// Regularity exponents of the data: `phi0 in H^s`, `A^df in H^r`,
/// `|grad|^eps_tilde A^cf in H^{l - eps_tilde}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegularityTriple {
    pub s: f64,
    pub r: f64,
    pub l: f64,
    pub eps_tilde: f64,
}

impl RegularityTriple {
    pub const DEFAULT_EPS_TILDE: f64 = 0.01;

    pub fn new(s: f64, r: f64, l: f64) -> Self {
        RegularityTriple {
            s,
            r,
            l,
            eps_tilde: Self::DEFAULT_EPS_TILDE,
        }
    }

    pub fn is_admissible(&self) -> bool {
        check_admissibility(self).admissible
    }
}

impl Default for RegularityTriple {
    fn default() -> Self {
        Self::new(1.0, 1.0, 1.0)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AdmissibilityReport {
    pub admissible: bool,
    pub violations: Vec<&'static str>,
}

/// Evaluates the local well-posedness hypotheses, strict and non-strict
/// inequalities exactly as stated.
pub fn check_admissibility(reg: &RegularityTriple) -> AdmissibilityReport {
    let RegularityTriple { s, r, l, eps_tilde } = *reg;
    let checks: [(&'static str, bool); 10] = [
        ("r > 1/4", r > 0.25),
        ("l >= s", l >= s),
        ("s > 1/2 + l/8", s > 0.5 + l / 8.0),
        ("s > 1/4 + l/2", s > 0.25 + l / 2.0),
        ("s > 1/4 + r/2", s > 0.25 + r / 2.0),
        ("s > 7/16 + r/4", s > 7.0 / 16.0 + r / 4.0),
        ("r + 1/2 > s", r + 0.5 > s),
        ("s >= r - 1/2", s >= r - 0.5),
        ("s > l - 1/2", s > l - 0.5),
        ("0 < eps_tilde < 1/4", eps_tilde > 0.0 && eps_tilde < 0.25),
    ];
    let violations: Vec<&'static str> = checks
        .iter()
        .filter(|(_, ok)| !ok)
        .map(|(name, _)| *name)
        .collect();
    AdmissibilityReport {
        admissible: violations.is_empty(),
        violations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const DELTA: f64 = 0.01;

    #[test]
    fn stated_admissible_choices() {
        assert!(RegularityTriple::new(1.0, 1.0, 1.0).is_admissible());
        let sl = 0.5 + 1.0 / 14.0 + DELTA;
        assert!(RegularityTriple::new(sl, 0.25 + DELTA, sl).is_admissible());
        let x = 0.5 + 1.0 / 12.0 + DELTA;
        assert!(RegularityTriple::new(x, x, x).is_admissible());
    }

    #[test]
    fn one_half_is_not_admissible() {
        let rep = check_admissibility(&RegularityTriple::new(0.5, 0.5, 0.5));
        assert!(!rep.admissible);
        assert!(rep.violations.contains(&"s > 1/2 + l/8"));
        assert!(!rep.violations.contains(&"r > 1/4"));
    }

    #[test]
    fn minimal_choice_without_slack_fails() {
        // dropping the "+" lands on the boundary of a strict inequality
        let rep = check_admissibility(&RegularityTriple::new(4.0 / 7.0, 0.25, 4.0 / 7.0));
        assert!(rep.violations.contains(&"r > 1/4"));
    }

    #[test]
    fn eps_tilde_range() {
        let mut reg = RegularityTriple::new(1.0, 1.0, 1.0);
        reg.eps_tilde = 0.3;
        assert_eq!(check_admissibility(&reg).violations, vec!["0 < eps_tilde < 1/4"]);
    }

    mod props {
        use proptest::prelude::*;

        use super::*;

        proptest! {
            #[test]
            fn verdict_matches_violation_list(s in -1.0f64..2.0, r in -1.0f64..2.0, l in -1.0f64..2.0) {
                let rep = check_admissibility(&RegularityTriple::new(s, r, l));
                prop_assert_eq!(rep.admissible, rep.violations.is_empty());
            }

            #[test]
            fn raising_s_toward_l_cannot_break_the_s_lower_bounds(s in 0.0f64..2.0, r in 0.3f64..2.0, l in 0.0f64..2.0) {
                // every lower bound on s stays satisfied when s grows
                let lower = |v: &str| v.starts_with("s > ");
                let before = check_admissibility(&RegularityTriple::new(s, r, l));
                let after = check_admissibility(&RegularityTriple::new(s + 0.1, r, l));
                for v in after.violations.iter().filter(|v| lower(v)) {
                    prop_assert!(before.violations.contains(v), "{v}");
                }
            }
        }
    }
}
