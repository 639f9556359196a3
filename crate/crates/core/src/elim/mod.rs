//! Elimination: Gröbner bases, normal forms, ideal membership and
//! resultants.

mod buchberger;
mod f4;
mod reduce;
mod resultant;

pub use buchberger::{
    buchberger, buchberger_with, ideal_contains, Algorithm, Certificate, GbOptions, GbStats, GroebnerBasis, Strategy,
};
pub use reduce::normal_form;
pub use resultant::{det_polymatrix, resultant, resultant_named, sylvester_matrix, PolyMatrix};
