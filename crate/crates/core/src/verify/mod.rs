//! Exact polynomial arithmetic, radical-membership certificates and a
//! budgeted Gröbner oracle.

pub mod certificate;
pub mod groebner;
pub mod poly;

pub use certificate::{member_monomial_ideal, trivial_certificate, CertificateReport, RadicalCertificate, Ref, Step};
pub use groebner::{groebner_radical_member, RadicalMembership};
pub use poly::{squarefree_part, Monomial, Polynomial};
