//! Finite commutative rings, the ideal generated by their zero-divisors,
//! and the quotient mid(R) = R/z(R) by the smallest prime containing it.
//!
//! - [`ring`]: Cayley-table rings, constructors for ℤₙ, products and
//!   polynomial quotients, axiom checking, units.
//! - [`ideals`]: ideal generation, lattices, prime/maximal tests, minimal
//!   primes, quotient rings.
//! - [`mid`]: zero-divisors, the proper-ideal gate, z(R), mid(R) and the
//!   integral-domain certificate.
//! - [`ringspec`]: the `Zn(6) x poly(Zn(2), x^2+x+1)` expression language.
//! - [`cli`]: the commands behind the `midring` binary.

pub mod cli;
pub mod error;
pub mod ideals;
pub mod mid;
pub mod ring;
pub mod ringspec;

pub use error::Error;
pub use ideals::{
    generate_ideal, ideals_containing, is_maximal_ideal, is_prime_ideal, is_proper,
    minimal_primes_over, quotient_ring, Ideal, QuotientRing,
};
pub use mid::{
    gate_check, is_integral_domain, mid, verify_proposition, z_ideal, zero_divisors,
    DomainCertificate, GateReport, MidOptions, MidResult, ZeroDivisorReport,
};
pub use ring::{
    make_modular_ring, make_poly_quotient_ring, make_product_ring, units, verify_ring_axioms,
    AxiomReport, ElementId, FiniteRing,
};
pub use ringspec::{eval_ring_expr, format_ring_expr, parse_ring_spec, RingExpr, SpecError};
