//! Exact-arithmetic toolkit for real osculating Schubert problems on
//! Grassmannians: polynomial system formulation (determinantal and
//! primal-dual square bilinear), symbolic real-root counting, combinatorial
//! lower bounds and congruence criteria, and numerical certification of
//! square systems.

pub mod algebra;
pub mod bounds;
pub mod certify;
pub mod combinatorics;
pub mod geometry;
pub mod harness;
pub mod solver;
pub mod systems;
