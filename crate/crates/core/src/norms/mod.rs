//! Discrete Sobolev, mixed Lebesgue and `X^{s,b}` norms.

mod mixed;
mod sobolev;
mod spacetime;
mod xsb;

pub use mixed::{mixed_norm, MixedOrder};
pub use sobolev::{curl_free_weighted_norm, curl_free_weighted_norm_pair, sobolev_norm, sobolev_norm_pair};
pub use spacetime::{SpaceTimeField, TimeWindow};
pub use xsb::{xsb_norm, XsbSpec, XsbWeight, DEFAULT_EPS};
