//! Zero-divisors, the proper-ideal gate, z(R) and mid(R) = R/z(R).
//!
//! z(R) is the smallest prime ideal containing every zero-divisor. Rather
//! than assuming it exists, [`z_ideal`] enumerates all minimal primes over
//! the zero-divisor ideal and fails with [`Error::NonUniqueMinimalPrime`]
//! when there is more than one.

use std::collections::BTreeMap;

use crate::error::Error;
use crate::ideals::{
    contains_unit, generate_ideal, is_proper, minimal_primes_over, quotient_ring, Ideal,
    QuotientRing, DEFAULT_LATTICE_BUDGET,
};
use crate::ring::{ElementId, FiniteRing};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZeroDivisorReport {
    /// Nonzero `x` with some nonzero `y` such that `xy = 0`, ascending.
    pub divisors: Vec<ElementId>,
    /// Least nonzero annihilating partner of each divisor.
    pub witnesses: BTreeMap<ElementId, ElementId>,
}

#[derive(Debug, Clone)]
pub struct GateReport {
    pub passes: bool,
    /// Ideal generated by the zero-divisors.
    pub ideal: Ideal,
    /// Least unit lying in `ideal`, present exactly when the gate fails.
    pub unit_witness: Option<ElementId>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DomainCertificate {
    pub is_domain: bool,
    pub pairs_checked: u64,
    pub counterexample: Option<(ElementId, ElementId)>,
}

#[derive(Debug, Clone)]
pub struct MidResult {
    pub z_ideal: Ideal,
    pub quotient: QuotientRing,
    /// Absent when certification was skipped.
    pub certificate: Option<DomainCertificate>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MidOptions {
    pub lattice_budget: usize,
    pub certify: bool,
}

impl Default for MidOptions {
    fn default() -> Self {
        MidOptions {
            lattice_budget: DEFAULT_LATTICE_BUDGET,
            certify: true,
        }
    }
}

pub fn zero_divisors(r: &FiniteRing) -> ZeroDivisorReport {
    let mut witnesses = BTreeMap::new();
    for x in r.elements().filter(|&x| !r.is_zero(x)) {
        if let Some(y) = r
            .elements()
            .find(|&y| !r.is_zero(y) && r.is_zero(r.mul(x, y)))
        {
            witnesses.insert(x, y);
        }
    }
    ZeroDivisorReport {
        divisors: witnesses.keys().copied().collect(),
        witnesses,
    }
}

/// Checks whether the zero-divisors generate a proper ideal.
pub fn gate_check(r: &FiniteRing) -> GateReport {
    let ideal = generate_ideal(r, &zero_divisors(r).divisors);
    let unit_witness = contains_unit(r, &ideal);
    debug_assert_eq!(unit_witness.is_none(), is_proper(&ideal));
    GateReport {
        passes: unit_witness.is_none(),
        ideal,
        unit_witness,
    }
}

/// The unique minimal prime over a proper ideal, if there is exactly one.
pub fn unique_minimal_prime(r: &FiniteRing, i: &Ideal, budget: usize) -> Result<Ideal, Error> {
    let mut primes = minimal_primes_over(r, i, budget)?;
    if primes.len() == 1 {
        Ok(primes.pop().unwrap())
    } else {
        Err(Error::NonUniqueMinimalPrime { primes })
    }
}

/// z(R): the smallest prime ideal containing every zero-divisor.
pub fn z_ideal(r: &FiniteRing, budget: usize) -> Result<Ideal, Error> {
    let gate = gate_check(r);
    if let Some(u) = gate.unit_witness {
        return Err(Error::GateFailed {
            unit_witness: u,
            witness_name: r.name(u).to_string(),
        });
    }
    unique_minimal_prime(r, &gate.ideal, budget)
}

pub fn is_integral_domain(r: &FiniteRing) -> bool {
    r.order() >= 2 && first_zero_product(r).is_none()
}

fn first_zero_product(r: &FiniteRing) -> Option<(ElementId, ElementId)> {
    let nonzero: Vec<ElementId> = r.elements().filter(|&x| !r.is_zero(x)).collect();
    nonzero
        .iter()
        .flat_map(|&a| nonzero.iter().map(move |&b| (a, b)))
        .find(|&(a, b)| r.is_zero(r.mul(a, b)))
}

/// Checks every pair of nonzero elements of `q` for a zero product.
pub fn certify_domain(q: &FiniteRing) -> DomainCertificate {
    let nonzero = (q.order() - 1) as u64;
    let counterexample = first_zero_product(q);
    DomainCertificate {
        is_domain: counterexample.is_none(),
        pairs_checked: nonzero * nonzero,
        counterexample,
    }
}

/// Builds mid(R) = R/z(R). When certification is on, a quotient that is not
/// a domain is reported as [`Error::PropositionViolated`].
pub fn mid(r: &FiniteRing, opts: MidOptions) -> Result<MidResult, Error> {
    let z = z_ideal(r, opts.lattice_budget)?;
    let quotient = quotient_ring(r, &z)?;
    let certificate = if opts.certify {
        let cert = certify_domain(&quotient.quotient);
        if let Some((a, b)) = cert.counterexample {
            let q = &quotient.quotient;
            return Err(Error::PropositionViolated {
                a,
                b,
                a_name: q.name(a).to_string(),
                b_name: q.name(b).to_string(),
            });
        }
        Some(cert)
    } else {
        None
    };
    Ok(MidResult {
        z_ideal: z,
        quotient,
        certificate,
    })
}

/// Exhaustively checks that mid(R) has no zero-divisors.
///
/// Unlike [`mid`], a failing check comes back as a certificate with its
/// counterexample instead of an error.
pub fn verify_proposition(r: &FiniteRing, budget: usize) -> Result<DomainCertificate, Error> {
    let z = z_ideal(r, budget)?;
    let q = quotient_ring(r, &z)?;
    Ok(certify_domain(&q.quotient))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideals::zero_ideal;
    use crate::ring::{make_modular_ring, make_poly_quotient_ring, make_product_ring, DEFAULT_ORDER_CAP};

    fn zn(n: u64) -> FiniteRing {
        make_modular_ring(n).unwrap()
    }

    fn ids(xs: &[u32]) -> Vec<ElementId> {
        xs.iter().map(|&x| ElementId(x)).collect()
    }

    fn dual_gf2() -> FiniteRing {
        make_poly_quotient_ring(&zn(2), &[0, 0, 1], DEFAULT_ORDER_CAP).unwrap()
    }

    #[test]
    fn zero_divisors_of_z6() {
        let rep = zero_divisors(&zn(6));
        assert_eq!(rep.divisors, ids(&[2, 3, 4]));
        let w: Vec<_> = rep.witnesses.iter().map(|(a, b)| (a.0, b.0)).collect();
        assert_eq!(w, vec![(2, 3), (3, 2), (4, 3)]);
    }

    #[test]
    fn fields_have_no_zero_divisors() {
        assert!(zero_divisors(&zn(5)).divisors.is_empty());
    }

    #[test]
    fn klein_product_zero_divisors() {
        let k = make_product_ring(&zn(2), &zn(2), DEFAULT_ORDER_CAP).unwrap();
        let names: Vec<_> = zero_divisors(&k).divisors.iter().map(|&d| k.name(d).to_string()).collect();
        assert_eq!(names, vec!["(0,1)", "(1,0)"]);
    }

    #[test]
    fn gates() {
        let g = gate_check(&zn(5));
        assert!(g.passes);
        assert_eq!(g.ideal, zero_ideal(&zn(5)));

        let g = gate_check(&zn(6));
        assert!(!g.passes);
        assert_eq!(g.unit_witness, Some(ElementId(1)));

        let g = gate_check(&zn(4));
        assert!(g.passes);
        assert_eq!(g.ideal.elements(), ids(&[0, 2]).as_slice());
        assert_eq!(g.unit_witness, None);
    }

    #[test]
    fn z_ideals() {
        assert_eq!(z_ideal(&zn(4), DEFAULT_LATTICE_BUDGET).unwrap().elements(), ids(&[0, 2]).as_slice());
        assert_eq!(z_ideal(&zn(5), DEFAULT_LATTICE_BUDGET).unwrap().elements(), ids(&[0]).as_slice());
        match z_ideal(&zn(6), DEFAULT_LATTICE_BUDGET) {
            Err(Error::GateFailed { unit_witness, witness_name }) => {
                assert_eq!(unit_witness, ElementId(1));
                assert_eq!(witness_name, "1");
            }
            other => panic!("expected GateFailed, got {other:?}"),
        }
    }

    #[test]
    fn non_unique_minimal_prime() {
        let r6 = zn(6);
        match unique_minimal_prime(&r6, &zero_ideal(&r6), DEFAULT_LATTICE_BUDGET) {
            Err(Error::NonUniqueMinimalPrime { primes }) => assert_eq!(primes.len(), 2),
            other => panic!("expected NonUniqueMinimalPrime, got {other:?}"),
        }
    }

    #[test]
    fn mid_constructions() {
        let m = mid(&zn(4), MidOptions::default()).unwrap();
        assert_eq!(m.quotient.quotient.order(), 2);
        assert_eq!(m.quotient.coset(ElementId(1)), ids(&[1, 3]));
        assert!(m.certificate.unwrap().is_domain);

        let m = mid(&zn(5), MidOptions::default()).unwrap();
        assert_eq!(m.quotient.quotient.order(), 5);
        assert_eq!(m.quotient.quotient.mul_table(), zn(5).mul_table());

        let r = dual_gf2();
        let m = mid(&r, MidOptions::default()).unwrap();
        assert_eq!(m.z_ideal.element_names(&r), vec!["0", "x"]);
        assert_eq!(m.quotient.quotient.order(), 2);
        assert!(m.certificate.unwrap().is_domain);

        let m = mid(&zn(9), MidOptions { certify: false, ..Default::default() }).unwrap();
        assert!(m.certificate.is_none());
        assert_eq!(m.quotient.quotient.order(), 3);
    }

    #[test]
    fn mid_propagates_gate_failure() {
        assert!(matches!(mid(&zn(6), MidOptions::default()), Err(Error::GateFailed { .. })));
        assert!(matches!(verify_proposition(&zn(10), DEFAULT_LATTICE_BUDGET), Err(Error::GateFailed { .. })));
    }

    #[test]
    fn integral_domains() {
        assert!(is_integral_domain(&zn(5)));
        assert!(!is_integral_domain(&zn(6)));
        assert!(!is_integral_domain(&dual_gf2()));
    }

    #[test]
    fn proposition_certificates() {
        let c = verify_proposition(&zn(4), DEFAULT_LATTICE_BUDGET).unwrap();
        assert_eq!(c, DomainCertificate { is_domain: true, pairs_checked: 1, counterexample: None });
        let c = verify_proposition(&zn(9), DEFAULT_LATTICE_BUDGET).unwrap();
        assert_eq!(c.pairs_checked, 4);
        assert!(c.is_domain);
        let c = verify_proposition(&zn(7), DEFAULT_LATTICE_BUDGET).unwrap();
        assert_eq!(c.pairs_checked, 36);
        assert!(c.is_domain);
    }

    #[test]
    fn certify_reports_counterexample() {
        let c = certify_domain(&zn(6));
        assert!(!c.is_domain);
        assert_eq!(c.counterexample, Some((ElementId(2), ElementId(3))));
        assert_eq!(c.pairs_checked, 25);
    }
}
