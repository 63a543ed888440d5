//! Numerical checks of the multilinear estimates: angle bound, free-wave
//! Strichartz-type ratios, exponent predicates and ratio fuzzing.

mod angle;
mod conditions;
mod fuzz;
mod sml;
mod strichartz;

pub use angle::{
    angle_ratio, angle_scan, signed_angle, AngleScanConfig, AngleScanReport, FrequencyTriple, Sign,
    ANGLE_RATIO_BOUND, ANTI_PARALLEL_RATIO,
};
pub use conditions::{bilinear_conditions, sobolev_product_conditions, ConditionReport, ExponentTuple, CONDITION_NAMES};
pub use strichartz::{
    free_wave, gaussian_bump, strichartz_sides, strichartz_tataru_ratio, strichartz_tataru_ratio_default,
    StrichartzVariant, TimeGrid,
};
pub use fuzz::{
    bilinear_ratio, bilinear_ratio_fuzz, BilinearTarget, FieldRecipe, FuzzConfig, RatioReport, TrialDescriptor,
};
pub use sml::{sobolev_product_fuzz, sobolev_product_ratio, SobolevFuzzConfig};
