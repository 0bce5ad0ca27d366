//! Quasi-Heffter arrays over `Z_v` and the Archdeacon embeddings they induce
//! on complete multipartite graphs `K_{(v/t)×t}`.
//!
//! - [`ring`]: `Z_v`, the subgroup `J`, supports.
//! - [`array`]: skeletons, partially filled arrays, QH/NH validation.
//! - [`orderings`]: orientations, row/column orderings, the knight walk and solver.
//! - [`embedding`]: `ρ₀`, rotation systems, faces, census, genus.
//! - [`autiso`]: automorphism groups, isomorphism tests, equality criteria.
//! - [`harness`]: seeded Monte Carlo experiments and reports.
//! - [`io`]: JSON file formats.

pub mod array;
pub mod autiso;
pub mod embedding;
pub mod error;
pub mod harness;
pub mod io;
pub mod orderings;
pub mod ring;
pub mod rng;

pub use array::{cyclic_diagonal_skeleton, random_fill, row_major_fixture, Cell, PartiallyFilledArray, Skeleton};
pub use autiso::{
    aut0_minus, aut0_plus, diagonal_shift_equivalent, embeddings_equal, extend_candidate, full_aut, isomorphic,
    isomorphic_exact, isomorphic_fast, phi_check, verify_morphism, AutReport, Sense, VertexMap,
};
pub use embedding::{
    all_faces, build_rho0, euler_genus, expand, face_multiset_formula, face_successor, DifferenceRotation, Face,
    FaceCensus, RotationSystem,
};
pub use error::{Error, Result};
pub use orderings::{is_compatible, knight_walk, orderings_from_orientation, solve_knight, OrderingPair, Orientation};
pub use ring::{default_support, lambda_of, random_support, Ring, Support};
