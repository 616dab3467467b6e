//! Ideals and certificates shipped with the crate.

use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;

const GENERIC: [&str; 3] = [
    include_str!("../data/ideals/J1.ideal"),
    include_str!("../data/ideals/J2.ideal"),
    include_str!("../data/ideals/J3.ideal"),
];

const CERTIFICATES: [&str; 2] = [include_str!("../data/certs/case1.cert"), include_str!("../data/certs/case2.cert")];

pub const TRIANGLE: &str = include_str!("../data/ideals/triangle.ideal");

/// J_k ∩ K[X] for k = 1, 2, 3: the members of the minimal reduced generic
/// set for μ = 5, height 2, pd 3.
pub fn generic_ideal(k: usize) -> Result<MonomialIdeal> {
    let text = GENERIC.get(k.wrapping_sub(1)).ok_or_else(|| Error::Precondition(format!("no generic ideal J{k}")))?;
    MonomialIdeal::parse_text(text)
}

/// Text of the shipped radical certificate for J_k, k = 1, 2.
pub fn certificate_text(k: usize) -> Result<&'static str> {
    CERTIFICATES
        .get(k.wrapping_sub(1))
        .copied()
        .ok_or_else(|| Error::Precondition(format!("no certificate for J{k}")))
}
