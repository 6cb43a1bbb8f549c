//! Exact classification and evaluation for the eight-vertex model
//! Holant(≠₂ | f) over the cyclotomic field Q(ζ₈).

pub mod numeric;
pub mod signatures;
pub mod classes;
pub mod gadgets;
pub mod mobius;
pub mod evaluate;
pub mod classify;
