//! Exact computations for Calabi-Yau threefolds of type A built as free quotients of abelian
//! threefolds, together with their automorphisms, fixed loci, quotient invariants and fundamental groups.

pub mod ratlin;
pub mod torus;
pub mod families;
pub mod invariants;
pub mod fixloc;
pub mod pi1;
pub mod report;
