//! Linear algebra over `Z_d` for composite `d`.

mod matrix;
mod modint;
mod reduce;
mod snf;
mod solve;

pub use matrix::ModMatrix;
pub use modint::{ext_gcd, gcd, inverse_mod, ModInt};
pub use snf::{smith_normal_form, IntMatrix, SmithForm};
pub use solve::{mod_kernel, mod_solve, LinearSystem, SolveOutcome};
