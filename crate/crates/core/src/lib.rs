//! Exact dynamics of quadratic birational maps
//! `f(x,y) = (a0+a1x+a2y, (b0+b1x+b2y)/(g0+g1x+g2y))`:
//! indeterminacy and exceptional structure, blow-up orbits, the
//! characteristic polynomial of the degree sequence, growth class, and an
//! independent symbolic degree oracle.

pub mod algebra;
pub mod blowup;
pub mod classify;
pub mod cli;
pub mod fibration;
pub mod map;
pub mod oracle;
pub mod spectral;
