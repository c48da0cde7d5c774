//! The conversions between valuations and ideals of `≺_V`.

pub mod fv;
pub mod gv;
pub mod roundtrip;

pub use fv::{enumerate_b, fv_chain, fv_directed_merge, fv_member, is_fv_member, Merge, MergeBranch, MergeParams};
pub use gv::{gv_eval, mass_above};
pub use roundtrip::{roundtrip_fg_check, roundtrip_gf_check, validate_chain, Agreement, FgReport};
