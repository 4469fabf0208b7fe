pub mod exactalg;
pub mod invariants;
pub mod lattice;
pub mod logfront;
pub mod numerics;
