//! Exact checks of trace and Riemann–Roch identities.
//!
//! [`hochschild`] computes Hochschild homology of finite-dimensional algebras
//! with bimodule coefficients, Chern characters of perfect modules and the
//! canonical pairing on `HH_0`. [`chow`] does the same bookkeeping for
//! products of projective spaces via Chow rings and `K_0`. Everything runs in
//! exact arithmetic over `Q` or `F_p` ([`exactalg`]).

pub mod exactalg;
pub mod complexes;
pub mod algebra;
pub mod hochschild;
pub mod chow;
pub mod verify;
