//! Commutators of congruences. For heaps: the retract-group fast path
//! (commutator subgroup of the class subgroups) and an independent
//! smallest-congruence oracle that searches the congruence lattice directly.
//! For left near-trusses: Smith and Huq commutator ideals generated from the
//! explicit defect terms, plus the piecewise-multiplication example on `M^3`
//! where the two differ.

use crate::error::{Error, Result};
use crate::group::GroupView;
use crate::heap::Heap;
use crate::ideal::{
    congruence_of_ideal, enumerate_near_truss_congruences, ideal_closure, is_near_truss_congruence,
    is_near_truss_ideal,
};
use crate::report::Limits;
use crate::scan;
use crate::subobject::{
    congruence_of_normal, enumerate_congruences, heap_congruence_violation, Partition, Subset,
};
use crate::table::{BinaryTable, Elem, TernaryTable};
use crate::truss::{NearTruss, Side};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// The set of triples `(x, y, z)` with `x R y` and `y S z`, closed under the
/// componentwise bracket.
#[derive(Debug, Clone)]
pub struct ConnectorDomain {
    pub triples: Vec<(Elem, Elem, Elem)>,
    /// `x S [x,y,z]` and `[x,y,z] R z` on every triple.
    pub connector_conditions: bool,
    pub first_condition_failure: Option<(Elem, Elem, Elem)>,
}

pub fn connector_domain(heap: &Heap, r: &Partition, s: &Partition) -> Result<ConnectorDomain> {
    for part in [r, s] {
        if let Some((x, y)) = heap_congruence_violation(heap, part) {
            return Err(Error::NotACongruence { x, y });
        }
    }
    let n = heap.size();
    let mut triples = Vec::new();
    for x in 0..n {
        for y in 0..n {
            if !r.same_class(x, y) {
                continue;
            }
            for z in 0..n {
                if s.same_class(y, z) {
                    triples.push((x, y, z));
                }
            }
        }
    }
    let mut first_condition_failure = None;
    for &(x, y, z) in &triples {
        let value = heap.get(x, y, z);
        if !(s.same_class(x, value) && r.same_class(value, z)) {
            first_condition_failure = Some((x, y, z));
            break;
        }
    }
    Ok(ConnectorDomain {
        triples,
        connector_conditions: first_condition_failure.is_none(),
        first_condition_failure,
    })
}

/// Smith commutator of two heap congruences through the retract group at
/// `e`: the congruence of the commutator subgroup `[N, M]` of the class
/// subgroups. The result is recomputed at every other base and asserted
/// identical.
pub fn smith_commutator_heap(
    heap: &Heap,
    r: &Partition,
    s: &Partition,
    e: Elem,
) -> Result<Partition> {
    heap.table().check_element(e)?;
    for part in [r, s] {
        if let Some((x, y)) = heap_congruence_violation(heap, part) {
            return Err(Error::NotACongruence { x, y });
        }
    }
    let at_base = |base: Elem| -> Partition {
        let group = heap.retract_group(base).expect("base in range");
        let n_class = r.class_of(base);
        let m_class = s.class_of(base);
        let commutator = group.commutator_subgroup(n_class.members(), m_class.members());
        congruence_of_normal(heap, &Subset::new(commutator))
            .expect("commutator subgroup is normal")
    };
    let result = at_base(e);
    for other in 0..heap.size() {
        assert_eq!(
            at_base(other),
            result,
            "commutator must not depend on the base"
        );
    }
    Ok(result)
}

fn bracket_values(heap: &Heap, triples: &[(Elem, Elem, Elem)]) -> Vec<Elem> {
    triples
        .iter()
        .map(|&(x, y, z)| heap.get(x, y, z))
        .collect()
}

/// Whether `(x,y,z) ↦ [[x,y,z]]_T` is a heap morphism on the connector
/// domain. A map between heaps is a morphism exactly when it is a group
/// homomorphism between the retract groups at a single base, so only pairs
/// need scanning; the cubic definition is kept alongside as a test oracle.
pub fn connector_morphism_pairwise(
    heap: &Heap,
    triples: &[(Elem, Elem, Elem)],
    values: &[Elem],
    part: &Partition,
) -> bool {
    if triples.is_empty() {
        return true;
    }
    let t0 = triples[0];
    let v0 = values[0];
    scan::pairs_hold(triples.len(), |i, j| {
        let a = triples[i];
        let b = triples[j];
        let u = (
            heap.get(a.0, t0.0, b.0),
            heap.get(a.1, t0.1, b.1),
            heap.get(a.2, t0.2, b.2),
        );
        part.same_class(
            heap.get(u.0, u.1, u.2),
            heap.get(values[i], v0, values[j]),
        )
    })
}

/// The literal definition: images of componentwise brackets agree with
/// brackets of images, over all triples of domain elements.
pub fn connector_morphism_by_definition(
    heap: &Heap,
    triples: &[(Elem, Elem, Elem)],
    part: &Partition,
) -> bool {
    let values = bracket_values(heap, triples);
    let k = triples.len();
    for i in 0..k {
        for j in 0..k {
            for l in 0..k {
                let (a, b, c) = (triples[i], triples[j], triples[l]);
                let u = (
                    heap.get(a.0, b.0, c.0),
                    heap.get(a.1, b.1, c.1),
                    heap.get(a.2, b.2, c.2),
                );
                if !part.same_class(
                    heap.get(u.0, u.1, u.2),
                    heap.get(values[i], values[j], values[l]),
                ) {
                    return false;
                }
            }
        }
    }
    true
}

/// Pick the refinement-least passing congruence. Candidates are tried
/// finest-first; anything refined by a known passing congruence passes
/// without a scan, because composing with a further quotient preserves
/// morphisms.
fn least_passing(
    mut candidates: Vec<Partition>,
    passes: impl Fn(&Partition) -> bool,
) -> Partition {
    candidates.sort_by(|a, b| {
        b.num_blocks()
            .cmp(&a.num_blocks())
            .then_with(|| a.cmp(b))
    });
    let mut passing: Vec<Partition> = Vec::new();
    for candidate in candidates {
        if passing.iter().any(|p| p.refines(&candidate)) || passes(&candidate) {
            passing.push(candidate);
        }
    }
    let least: Vec<&Partition> = passing
        .iter()
        .filter(|c| passing.iter().all(|d| c.refines(d)))
        .collect();
    assert_eq!(
        least.len(),
        1,
        "the passing congruences must have a unique least element"
    );
    least[0].clone()
}

/// Smallest congruence making the connector a heap morphism, found by direct
/// search over the congruence lattice.
pub fn smith_commutator_oracle_heap(
    heap: &Heap,
    r: &Partition,
    s: &Partition,
    limits: &Limits,
) -> Result<Partition> {
    let domain = connector_domain(heap, r, s)?;
    let values = bracket_values(heap, &domain.triples);
    let candidates = enumerate_congruences(heap, limits)?;
    Ok(least_passing(candidates, |t| {
        connector_morphism_pairwise(heap, &domain.triples, &values, t)
    }))
}

/// Smallest near-truss congruence making the connector a near-truss
/// morphism: the heap condition plus multiplicativity on the domain.
pub fn smith_commutator_oracle_near_truss(
    x: &NearTruss,
    r: &Partition,
    s: &Partition,
    limits: &Limits,
) -> Result<Partition> {
    for part in [r, s] {
        if !is_near_truss_congruence(x, part) {
            return Err(Error::NotACongruence { x: 0, y: 0 });
        }
    }
    let heap = x.heap();
    let domain = connector_domain(heap, r, s)?;
    let values = bracket_values(heap, &domain.triples);
    let candidates = enumerate_near_truss_congruences(x, limits)?;
    Ok(least_passing(candidates, |t| {
        connector_morphism_pairwise(heap, &domain.triples, &values, t)
            && scan::pairs_hold(domain.triples.len(), |i, j| {
                let a = domain.triples[i];
                let b = domain.triples[j];
                let u = (x.mul(a.0, b.0), x.mul(a.1, b.1), x.mul(a.2, b.2));
                t.same_class(x.bracket(u.0, u.1, u.2), x.mul(values[i], values[j]))
            })
    }))
}

/// Smith and Huq commutator ideals of two ideals through a base, generated
/// from the defect terms in the retract-group arithmetic at that base.
#[derive(Debug, Clone)]
pub struct NearTrussCommutators {
    pub smith_ideal: Subset,
    pub huq_ideal: Subset,
    pub smith_congruence: Partition,
    pub huq_congruence: Partition,
}

pub fn near_truss_commutators(
    x: &NearTruss,
    e: Elem,
    a: &Subset,
    b: &Subset,
) -> Result<NearTrussCommutators> {
    x.require_left()?;
    x.heap().table().check_element(e)?;
    for (label, ideal) in [("A", a), ("B", b)] {
        if !ideal.contains(e) {
            return Err(Error::BaseNotInSubset { element: e });
        }
        if !is_near_truss_ideal(x, ideal).is_ideal() {
            return Err(Error::NotAnIdeal {
                reason: format!("{label} is not an ideal through the base"),
            });
        }
    }
    let group = x.heap().retract_group(e)?;
    let smith_seed = smith_generator_set(x, &group, a.members(), b.members());
    let huq_seed = huq_generator_set(x, &group, a.members(), b.members());
    let smith_ideal = ideal_closure(x, &smith_seed, e)?;
    let huq_ideal = ideal_closure(x, &huq_seed, e)?;
    assert!(
        huq_ideal.is_subset_of(&smith_ideal),
        "the Huq generators are a specialization of the Smith generators"
    );
    let smith_congruence = congruence_of_ideal(x, &smith_ideal)?;
    let huq_congruence = congruence_of_ideal(x, &huq_ideal)?;
    Ok(NearTrussCommutators {
        smith_ideal,
        huq_ideal,
        smith_congruence,
        huq_congruence,
    })
}

/// `(a1+x1)(a2+x2) - x1x2 + (x1+b1)(x2+b2) - (a1+x1+b1)(a2+x2+b2)`,
/// evaluated left to right in the retract group.
fn smith_generator_set(
    x: &NearTruss,
    g: &GroupView,
    a: &[Elem],
    b: &[Elem],
) -> Subset {
    let n = x.size();
    let lane = |a1: Elem| {
        let mut mask = vec![false; n];
        for &a2 in a {
            for x1 in 0..n {
                let a1x1 = g.mul(a1, x1);
                for x2 in 0..n {
                    let t1 = x.mul(a1x1, g.mul(a2, x2));
                    let t2 = x.mul(x1, x2);
                    let head = g.mul(t1, g.inv(t2));
                    for &b1 in b {
                        let x1b1 = g.mul(x1, b1);
                        let a1x1b1 = g.mul(a1x1, b1);
                        for &b2 in b {
                            let t3 = x.mul(x1b1, g.mul(x2, b2));
                            let t4 = x.mul(a1x1b1, g.mul(g.mul(a2, x2), b2));
                            mask[g.mul(g.mul(head, t3), g.inv(t4))] = true;
                        }
                    }
                }
            }
        }
        mask
    };
    let merged = merge_lanes(a, n, lane);
    Subset::new((0..n).filter(|&v| merged[v]).collect())
}

/// `a1a2 + b1b2 - (a1+b1)(a2+b2)`.
fn huq_generator_set(x: &NearTruss, g: &GroupView, a: &[Elem], b: &[Elem]) -> Subset {
    let n = x.size();
    let lane = |a1: Elem| {
        let mut mask = vec![false; n];
        for &a2 in a {
            let a1a2 = x.mul(a1, a2);
            for &b1 in b {
                let a1b1 = g.mul(a1, b1);
                for &b2 in b {
                    let value = g.mul(
                        g.mul(a1a2, x.mul(b1, b2)),
                        g.inv(x.mul(a1b1, g.mul(a2, b2))),
                    );
                    mask[value] = true;
                }
            }
        }
        mask
    };
    let merged = merge_lanes(a, n, lane);
    Subset::new((0..n).filter(|&v| merged[v]).collect())
}

fn merge_lanes(a: &[Elem], n: usize, lane: impl Fn(Elem) -> Vec<bool> + Sync) -> Vec<bool> {
    #[cfg(feature = "parallel")]
    {
        a.par_iter()
            .map(|&a1| lane(a1))
            .reduce(
                || vec![false; n],
                |mut acc, mask| {
                    for (slot, hit) in acc.iter_mut().zip(mask) {
                        *slot |= hit;
                    }
                    acc
                },
            )
    }
    #[cfg(not(feature = "parallel"))]
    {
        let mut acc = vec![false; n];
        for &a1 in a {
            for (slot, hit) in acc.iter_mut().zip(lane(a1)) {
                *slot |= hit;
            }
        }
        acc
    }
}

/// The piecewise-multiplication left near-truss on `M^3` distinguishing the
/// Smith and Huq commutators, together with its two distinguished ideals.
#[derive(Debug, Clone)]
pub struct HuqSmithExample {
    pub truss: NearTruss,
    /// `M × K × {0}`.
    pub a: Subset,
    /// `M × {0} × M`.
    pub b: Subset,
    pub base: Elem,
}

/// Build the example for an abelian group `M` and a nonzero proper subgroup
/// `K`: bracket componentwise `x - y + z`, product `(n1,n2,n3)(m1,m2,m3) =
/// (m2,0,0)` when `n2` and `n3` are both nonzero and `(0,0,0)` otherwise.
pub fn build_huq_smith_example(m_group: &GroupView, k: &Subset) -> Result<HuqSmithExample> {
    if !m_group.is_abelian() {
        return Err(Error::Unsupported(
            "the base group of the example must be abelian".into(),
        ));
    }
    let m = m_group.size();
    k.check_range(m)?;
    if !m_group.is_subgroup(k.members()) {
        return Err(Error::Unsupported("K must be a subgroup of M".into()));
    }
    if k.len() <= 1 || k.len() >= m {
        return Err(Error::Unsupported(
            "K must be a nonzero proper subgroup of M".into(),
        ));
    }
    let zero = m_group.identity();
    let n = m * m * m;
    let decode = |p: Elem| (p / (m * m), p / m % m, p % m);
    let encode = |c1: Elem, c2: Elem, c3: Elem| (c1 * m + c2) * m + c3;
    let heap_table = TernaryTable::from_fn(n, |p, q, r| {
        let (p1, p2, p3) = decode(p);
        let (q1, q2, q3) = decode(q);
        let (r1, r2, r3) = decode(r);
        let comp = |a: Elem, b: Elem, c: Elem| m_group.mul(m_group.mul(a, m_group.inv(b)), c);
        encode(comp(p1, q1, r1), comp(p2, q2, r2), comp(p3, q3, r3))
    })?;
    let mul = BinaryTable::from_fn(n, |p, q| {
        let (_, p2, p3) = decode(p);
        let (_, q2, _) = decode(q);
        if p2 != zero && p3 != zero {
            encode(q2, zero, zero)
        } else {
            encode(zero, zero, zero)
        }
    })?;
    let truss = NearTruss::new(heap_table, mul, Side::Left, &Limits::covering(n))?;
    let a = Subset::new(
        (0..m)
            .flat_map(|c1| k.members().iter().map(move |&c2| encode(c1, c2, zero)))
            .collect(),
    );
    let b = Subset::new(
        (0..m)
            .flat_map(|c1| (0..m).map(move |c3| encode(c1, zero, c3)))
            .collect(),
    );
    Ok(HuqSmithExample {
        truss,
        a,
        b,
        base: encode(zero, zero, zero),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::group;
    use crate::heap::heap_from_group;

    fn z4_heap() -> Heap {
        heap_from_group(&group::cyclic(4))
    }

    #[test]
    fn connector_domain_sizes() {
        let heap = z4_heap();
        let evens = Partition::parse("0,2|1,3", 4).unwrap();
        let domain = connector_domain(&heap, &evens, &evens).unwrap();
        assert_eq!(domain.triples.len(), 16);
        assert!(domain.connector_conditions);

        // R = equality: triples are (x, x, z) with x S z
        let eq = Partition::equality(4);
        let domain = connector_domain(&heap, &eq, &evens).unwrap();
        assert!(domain.triples.iter().all(|t| t.0 == t.1));
        assert_eq!(domain.triples.len(), 8);

        let s3 = heap_from_group(&group::symmetric_3());
        let top = Partition::single_block(6);
        let a3 = smith_commutator_heap(&s3, &top, &top, 0).unwrap();
        let domain = connector_domain(&s3, &a3, &a3).unwrap();
        assert_eq!(domain.triples.len(), 54); // 6 * 3 * 3
    }

    #[test]
    fn connector_domain_closed_under_bracket() {
        let heap = z4_heap();
        let evens = Partition::parse("0,2|1,3", 4).unwrap();
        let domain = connector_domain(&heap, &evens, &evens).unwrap();
        for &a in &domain.triples {
            for &b in &domain.triples {
                for &c in &domain.triples {
                    let u = (
                        heap.get(a.0, b.0, c.0),
                        heap.get(a.1, b.1, c.1),
                        heap.get(a.2, b.2, c.2),
                    );
                    assert!(domain.triples.contains(&u));
                }
            }
        }
    }

    #[test]
    fn smith_commutator_on_abelian_heap_is_equality() {
        let heap = z4_heap();
        let top = Partition::single_block(4);
        let result = smith_commutator_heap(&heap, &top, &top, 0).unwrap();
        assert_eq!(result, Partition::equality(4));
        // R = equality forces the commutator to be equality
        let eq = Partition::equality(4);
        let result = smith_commutator_heap(&heap, &eq, &top, 2).unwrap();
        assert_eq!(result, Partition::equality(4));
    }

    #[test]
    fn smith_commutator_of_s3_top_is_a3() {
        let s3 = heap_from_group(&group::symmetric_3());
        let top = Partition::single_block(6);
        let result = smith_commutator_heap(&s3, &top, &top, 0).unwrap();
        assert_eq!(result.num_blocks(), 2);
        let blocks = result.blocks();
        assert_eq!(blocks[0].len(), 3);
        assert_eq!(blocks[1].len(), 3);
    }

    #[test]
    fn oracle_agrees_with_fast_path_on_small_heaps() {
        for heap in [z4_heap(), heap_from_group(&group::symmetric_3())] {
            let congruences = enumerate_congruences(&heap, &Limits::default()).unwrap();
            for r in &congruences {
                for s in &congruences {
                    let fast = smith_commutator_heap(&heap, r, s, 0).unwrap();
                    let slow =
                        smith_commutator_oracle_heap(&heap, r, s, &Limits::default()).unwrap();
                    assert_eq!(fast, slow, "oracle disagrees on {r} vs {s}");
                }
            }
        }
    }

    #[test]
    fn pairwise_morphism_check_matches_cubic_definition() {
        let s3 = heap_from_group(&group::symmetric_3());
        let congruences = enumerate_congruences(&s3, &Limits::default()).unwrap();
        for r in &congruences {
            for s in &congruences {
                let domain = connector_domain(&s3, r, s).unwrap();
                let values = bracket_values(&s3, &domain.triples);
                for t in &congruences {
                    assert_eq!(
                        connector_morphism_pairwise(&s3, &domain.triples, &values, t),
                        connector_morphism_by_definition(&s3, &domain.triples, t)
                    );
                }
            }
        }
    }

    #[test]
    fn trivial_ideals_collapse_both_commutators() {
        let t = corpus::ring_truss(4);
        let point = Subset::parse("0").unwrap();
        let result = near_truss_commutators(&t, 0, &point, &point).unwrap();
        assert_eq!(result.smith_ideal, point);
        assert_eq!(result.huq_ideal, point);
        assert_eq!(result.smith_congruence, Partition::equality(4));
    }

    #[test]
    fn example_builder_rejects_bad_inputs() {
        // Z3 has no proper nonzero subgroup
        assert!(build_huq_smith_example(&group::cyclic(3), &Subset::parse("0").unwrap()).is_err());
        assert!(
            build_huq_smith_example(&group::cyclic(4), &Subset::parse("0,1,2,3").unwrap())
                .is_err()
        );
        // subgroup check
        assert!(build_huq_smith_example(&group::cyclic(4), &Subset::parse("0,1").unwrap()).is_err());
        // non-abelian base group
        assert!(
            build_huq_smith_example(&group::symmetric_3(), &Subset::parse("0,1").unwrap())
                .is_err()
        );
    }

    #[test]
    fn huq_smith_example_separates_the_commutators() {
        let example =
            build_huq_smith_example(&group::cyclic(4), &Subset::parse("0,2").unwrap()).unwrap();
        assert_eq!(example.truss.size(), 64);
        assert_eq!(example.a.len(), 8);
        assert_eq!(example.b.len(), 16);
        let result =
            near_truss_commutators(&example.truss, example.base, &example.a, &example.b).unwrap();
        // Huq stays inside K x {0} x {0}
        let k_line = Subset::new(vec![0, 2 * 16]);
        assert!(result.huq_ideal.is_subset_of(&k_line));
        // Smith contains M x {0} x {0}
        let m_line = Subset::new((0..4).map(|c1| c1 * 16).collect());
        assert!(m_line.is_subset_of(&result.smith_ideal));
        assert_ne!(result.smith_ideal, result.huq_ideal);
    }
}
