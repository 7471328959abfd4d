//! Exact scalar and binary-form arithmetic: rationals, binary forms, gcd,
//! square-free and irreducible factorization over `Q`, and number fields
//! `Q[u]/(f)`.

mod factor;
mod field;
mod form;
mod poly;
mod scalar;

pub use factor::{
    gcd_forms, irreducible_factorization, is_irreducible_low_degree, squarefree_factorization,
    Factorization,
};
pub use field::{poly_to_string, FieldElt, NumberField};
pub use form::{series_at, BinaryForm};
pub use poly::Poly;
pub use scalar::{
    binomial, factorial, parse_rat, rat, rat_int, rat_to_f64, rat_to_string, Rat, Scalar,
};
