//! Derivations of trusses: heap endomorphisms `D` with
//! `D(ab) = [D(a)b, ab, aD(b)]`. The set of derivations is an abelian
//! subheap of the endomorphism heap; inner derivations `[λ_a, ρ_a, ι]` and
//! the commutator `[DD', D'D, ι]` of two derivations stay inside it.

use crate::error::{Error, Result};
use crate::table::{Elem, Endomap};
use crate::truss::NearTruss;

#[derive(Debug, Clone)]
pub struct DerivationCheck {
    pub is_heap_endomorphism: bool,
    /// first pair violating the derivation identity
    pub witness: Option<(Elem, Elem)>,
}

impl DerivationCheck {
    pub fn is_derivation(&self) -> bool {
        self.is_heap_endomorphism && self.witness.is_none()
    }
}

pub fn check_derivation(t: &NearTruss, d: &Endomap) -> Result<DerivationCheck> {
    t.require_truss()?;
    if d.size() != t.size() {
        return Err(Error::CarrierMismatch {
            left: d.size(),
            right: t.size(),
        });
    }
    let is_heap_endomorphism = t.heap().is_endomorphism(d);
    let mut witness = None;
    'outer: for a in 0..t.size() {
        for b in 0..t.size() {
            let lhs = d.apply(t.mul(a, b));
            let rhs = t.bracket(
                t.mul(d.apply(a), b),
                t.mul(a, b),
                t.mul(a, d.apply(b)),
            );
            if lhs != rhs {
                witness = Some((a, b));
                break 'outer;
            }
        }
    }
    Ok(DerivationCheck {
        is_heap_endomorphism,
        witness,
    })
}

pub fn is_derivation(t: &NearTruss, d: &Endomap) -> Result<bool> {
    Ok(check_derivation(t, d)?.is_derivation())
}

/// All derivations, with closure under the pointwise bracket verified on
/// every member triple.
#[derive(Debug, Clone)]
pub struct DerivationSet {
    pub members: Vec<Endomap>,
}

pub fn enumerate_derivations(t: &NearTruss) -> Result<DerivationSet> {
    t.require_truss()?;
    let members: Vec<Endomap> = t
        .heap()
        .endomorphisms()
        .into_iter()
        .filter(|d| {
            check_derivation(t, d)
                .expect("truss checked above")
                .is_derivation()
        })
        .collect();
    // closed under the pointwise bracket, and abelian because the heap is
    let pointwise = crate::truss::MapAlgebra::new(t.heap());
    for d1 in &members {
        for d2 in &members {
            for d3 in &members {
                let combined = pointwise.pointwise(d1, d2, d3);
                assert!(
                    members.contains(&combined),
                    "derivations must be closed under the pointwise bracket"
                );
            }
        }
    }
    Ok(DerivationSet { members })
}

/// `[D D', D' D, ι]`, pointwise; rejects non-derivations and checks the
/// result is again a derivation.
pub fn commutator_derivation(t: &NearTruss, d1: &Endomap, d2: &Endomap) -> Result<Endomap> {
    for d in [d1, d2] {
        if !is_derivation(t, d)? {
            return Err(Error::Unsupported(
                "commutator derivation requires derivation inputs".into(),
            ));
        }
    }
    let result = Endomap::from_fn(t.size(), |x| {
        t.bracket(d1.apply(d2.apply(x)), d2.apply(d1.apply(x)), x)
    })
    .expect("closed");
    assert!(
        is_derivation(t, &result)?,
        "commutator of derivations must be a derivation"
    );
    Ok(result)
}

/// `D_a = [λ_a, ρ_a, ι]`: `x ↦ [ax, xa, x]`.
pub fn inner_derivation(t: &NearTruss, a: Elem) -> Result<Endomap> {
    t.require_truss()?;
    t.heap().table().check_element(a)?;
    let result =
        Endomap::from_fn(t.size(), |x| t.bracket(t.mul(a, x), t.mul(x, a), x)).expect("closed");
    assert!(
        is_derivation(t, &result)?,
        "inner maps of a truss must be derivations"
    );
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn z2_ring_truss_has_only_the_identity_derivation() {
        let t = corpus::ring_truss(2);
        let set = enumerate_derivations(&t).unwrap();
        assert_eq!(set.members, vec![Endomap::identity(2)]);
        // constant 0 fails at a = b = 1
        let check = check_derivation(&t, &Endomap::constant(2, 0).unwrap()).unwrap();
        assert_eq!(check.witness, Some((1, 1)));
        // the shift x+1 is an endomorphism but no derivation
        let shift = Endomap::new(2, vec![1, 0]).unwrap();
        let check = check_derivation(&t, &shift).unwrap();
        assert!(check.is_heap_endomorphism);
        assert!(!check.is_derivation());
    }

    #[test]
    fn z3_ring_truss_derivations_contain_the_identity() {
        let t = corpus::ring_truss(3);
        let set = enumerate_derivations(&t).unwrap();
        assert!(set.members.contains(&Endomap::identity(3)));
        // brute force over all 27 self-maps agrees
        let mut by_brute_force = Vec::new();
        for code in 0..27usize {
            let images = vec![code / 9 % 3, code / 3 % 3, code % 3];
            let d = Endomap::new(3, images).unwrap();
            let check = check_derivation(&t, &d).unwrap();
            if check.is_derivation() {
                by_brute_force.push(d);
            }
        }
        by_brute_force.sort();
        assert_eq!(set.members, by_brute_force);
    }

    #[test]
    fn singleton_truss_has_one_derivation() {
        let t = corpus::ring_truss(1);
        assert_eq!(enumerate_derivations(&t).unwrap().members.len(), 1);
    }

    #[test]
    fn commutator_of_equal_derivations_is_the_identity() {
        let t = corpus::upper_triangular_truss();
        let set = enumerate_derivations(&t).unwrap();
        for d in &set.members {
            let c = commutator_derivation(&t, d, d).unwrap();
            assert_eq!(c, Endomap::identity(8));
        }
    }

    #[test]
    fn rejects_non_derivation_inputs() {
        let t = corpus::ring_truss(2);
        let shift = Endomap::new(2, vec![1, 0]).unwrap();
        assert!(commutator_derivation(&t, &shift, &shift).is_err());
    }

    #[test]
    fn inner_derivations_of_commutative_trusses_are_trivial() {
        let t = corpus::ring_truss(4);
        for a in 0..4 {
            assert_eq!(inner_derivation(&t, a).unwrap(), Endomap::identity(4));
        }
    }

    #[test]
    fn upper_triangular_truss_has_a_nontrivial_inner_derivation() {
        let t = corpus::upper_triangular_truss();
        let strictly_upper = corpus::ut_index(0, 1, 0);
        let d = inner_derivation(&t, strictly_upper).unwrap();
        assert_ne!(d, Endomap::identity(8));
        // matrix arithmetic oracle: D_a(x) = ax - xa + x componentwise
        let decode = |x: usize| (x >> 2 & 1, x >> 1 & 1, x & 1);
        for x in 0..8usize {
            let (xa, _xb, xc) = decode(x);
            // a = [0 1; 0 0]: ax = [0 xc; 0 0] (row shift), xa = [0 xa; 0 0]
            let ax = corpus::ut_index(0, xc, 0);
            let xa_prod = corpus::ut_index(0, xa, 0);
            let expected = t.bracket(ax, xa_prod, x);
            assert_eq!(d.apply(x), expected);
        }
        // some x with ax != xa moves
        assert_ne!(d.apply(corpus::ut_index(1, 0, 0)), corpus::ut_index(1, 0, 0));
    }

    #[test]
    fn commutator_of_distinct_inner_derivations_is_a_derivation() {
        let t = corpus::upper_triangular_truss();
        let d1 = inner_derivation(&t, corpus::ut_index(0, 1, 0)).unwrap();
        let d2 = inner_derivation(&t, corpus::ut_index(1, 0, 0)).unwrap();
        let c = commutator_derivation(&t, &d1, &d2).unwrap();
        assert!(is_derivation(&t, &c).unwrap());
    }
}
