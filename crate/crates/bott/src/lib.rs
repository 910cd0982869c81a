//! Exact-arithmetic computations in the integral cohomology rings of Bott
//! manifolds.
//!
//! A stage-`n` Bott manifold is encoded by a strictly upper triangular
//! integer matrix; its cohomology ring is a quotient of a polynomial ring on
//! `n` degree-two generators by one quadratic relation per stage.  On top of
//! the ring arithmetic this crate enumerates and verifies all graded ring
//! isomorphisms between two such rings, checks that they preserve total
//! Pontrjagin classes, and, for even ("Z/2-trivial") families, factors each
//! isomorphism into a chain of pieces realizable by diffeomorphisms.
//!
//! Every value is immutable after construction and every operation is a
//! pure function, so everything here can be evaluated concurrently without
//! synchronization.  All arithmetic is arbitrary precision.
//!
//! # Example
//! ```
//! use bott::{find_isos, pontrjagin_preserved, BottMatrix, SearchMode};
//!
//! // the Hirzebruch surface ring Z[x1, x2]/(x1^2, x2^2 - x1 x2)
//! let h = BottMatrix::from_rows(&[&[0, 1], &[0, 0]])?;
//! let autos = find_isos(&h, &h, SearchMode::All)?;
//! assert_eq!(autos.len(), 8);
//! for iso in &autos {
//!     assert!(pontrjagin_preserved(&h, &h, iso)?.preserved);
//! }
//! # Ok::<(), bott::Error>(())
//! ```
//!
//! The `examples/` directory has one runnable program per major capability;
//! the `bott` binary exposes the same functionality over JSON files.

pub mod base_change;
pub mod cli;
pub mod error;
pub mod expr;
pub mod iso;
pub mod json;
pub mod matrix;
pub mod oracle;
pub mod perm;
pub mod rigidity;
pub mod ring;
pub mod scalar;
pub mod scan;

mod linalg;

pub use base_change::{
    exceptional_type, is_q_trivial, is_z2_trivial, primitive_square_zero,
    vanishing_pair_decompose, y_basis, y_square_expansion, DegreeTwo, ExceptionalKind,
    ExceptionalReport, YBasisData,
};
pub use error::{Error, Result};
pub use iso::{
    build_map, candidate_set, find_isos, pairing_audit, pontrjagin_preserved,
    signed_perm_image, verify_iso, DegreeTwoMap, IsoDescriptor, SearchMode, SignedPermImage,
    VerifyOutcome,
};
pub use matrix::BottMatrix;
pub use perm::Perm;
pub use rigidity::{
    certify_diffeo, normalize, permutation_conjugate, upper_triangular_realizable,
    CertifyOutcome, DiffeoCertificate, NormalizationStep,
};
pub use ring::{alpha, graded_basis, multiply, pontrjagin, reduce, CohomClass, Monomial};
pub use scalar::{Int, Rat};
pub use scan::{run_scan, CheckKind, Parity, ScanConfig, ScanReport};
