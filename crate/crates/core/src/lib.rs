//! Combinatorics of multisegments: the degeneration poset `S(a)`, end and
//! begin truncations with their descent sets, reduction to symmetric
//! multisegments, and multiplicities `m(b, a)` computed as
//! Kazhdan–Lusztig polynomials at `q = 1`.
//!
//! ```
//! use multiseg::{mult, Multisegment};
//!
//! let a: Multisegment = "{[1],[2],[2],[3]}".parse().unwrap();
//! let b: Multisegment = "{[1,2],[2,3]}".parse().unwrap();
//! assert_eq!(mult(&b, &a).unwrap(), 2);
//! ```

pub mod cli;
pub mod error;
pub mod multiplicity;
pub mod multisegment;
pub mod poset;
pub mod ring;
pub mod segment;
pub mod symmetrization;
pub mod truncation;
pub mod weyl;

pub use error::{Error, Result};
pub use multiplicity::{
    mult, mult_direct_symmetric, mult_matrix, mult_via_symmetrization, relation_type,
    same_relation_type, xi_transport, MultMatrix, RelationType, RelationTypeMap,
};
pub use multisegment::{Multisegment, WeightFunction};
pub use poset::{generate_poset, hasse_dot, leq_rank, minimal_element, MultisegmentPoset};
pub use ring::{Basis, RingElement};
pub use segment::Segment;
pub use symmetrization::{lift, lift_stepwise, symmetrize, SymmetrizationData};
pub use truncation::{DescentPath, Side};
pub use weyl::{bruhat_leq, kl_polynomial, phi, phi_inverse, KlPolynomial, Permutation};
