//! Exact-arithmetic and combinatorial toolkit for genus-one Belyi maps obtained
//! from genus-zero ones through the quadratic correspondence
//! `Q{f} = 1/2 + sqrt(1 - f)/2`.
//!
//! The crate is organized bottom-up:
//!
//! - [`field`]: rationals and explicit number fields `Q(theta)` with exact arithmetic;
//! - [`poly`], [`ratfun`]: dense univariate polynomials and reduced rational functions
//!   over those fields, including squarefree decomposition;
//! - [`quadext`]: elements `u + v*w` of a quadratic extension `w^2 = R(s)` of the
//!   rational function field, with differentiation on the curve;
//! - [`passport`]: ramification passports, genus arithmetic, and the correspondent
//!   passport calculus relating a genus-one passport `[A/A/B^2 C]` to genus-zero
//!   candidates `[A / 2^l 1^k / B~ C]`;
//! - [`perm`], [`dessin`]: permutation machinery and dessins d'enfants: enumeration up
//!   to isomorphism, symmetry detection, double-cover lifting and quotients;
//! - [`belyi`], [`qcorr`]: exact Belyi verification and the quadratic-correspondence
//!   construction `(Q - P) Q = c * S^2 * D` producing a genus-one curve `y^2 = c*D`;
//! - [`curve`]: invariants `I`, `J` and the j-invariant of binary quartics, Weierstrass
//!   models, twist-insensitive curve comparison;
//! - [`painleve`]: Painleve VI with algebraic solutions parametrized on those curves,
//!   exact residual checks;
//! - [`corpus`]: a built-in catalog of maps, expectation data, and the `.map` text
//!   format with its parser;
//! - [`render`]: SVG drawings of dessins on the sphere and on the torus;
//! - [`cli`]: the command-line interface used by the `quadbelyi` binary.
//!
//! Every runnable example under `examples/` exercises one capability end to end, e.g.
//! `cargo run --example verify_map` or `cargo run --example lift_quotient_roundtrip`.

pub mod belyi;
pub mod cli;
pub mod corpus;
pub mod curve;
pub mod dessin;
pub mod field;
pub mod painleve;
pub mod passport;
pub mod perm;
pub mod poly;
pub mod qcorr;
pub mod quadext;
pub mod ratfun;
pub mod render;
