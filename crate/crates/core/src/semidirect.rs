//! Idempotent endomorphisms and semidirect decompositions: the equivalent
//! condition battery for a pair (section, congruence), the bijection between
//! idempotents and such pairs, the conjugation action of the section on a
//! kernel class, the outer semidirect product of two heaps along an action,
//! and the criteria for a decomposition to be a direct product.

use crate::error::{Error, Result};
use crate::heap::Heap;
use crate::report::Limits;
use crate::subobject::{
    congruence_of_normal, enumerate_congruences, enumerate_subheaps, heap_congruence_violation,
    is_normal_quick, is_subheap, Partition, Subset,
};
use crate::table::{Elem, Endomap, TernaryTable};
use crate::truss::NearTruss;

/// A heap or a near-truss; the decomposition machinery is the same, the
/// near-truss side just also respects the multiplication everywhere.
#[derive(Clone, Copy)]
pub enum Algebra<'a> {
    Heap(&'a Heap),
    NearTruss(&'a NearTruss),
}

impl<'a> Algebra<'a> {
    pub fn heap(&self) -> &'a Heap {
        match self {
            Algebra::Heap(h) => h,
            Algebra::NearTruss(t) => t.heap(),
        }
    }

    pub fn size(&self) -> usize {
        self.heap().size()
    }

    pub fn is_endomorphism(&self, f: &Endomap) -> bool {
        match self {
            Algebra::Heap(h) => h.is_endomorphism(f),
            Algebra::NearTruss(t) => t.is_endomorphism(f),
        }
    }

    pub fn is_congruence(&self, part: &Partition) -> bool {
        match self {
            Algebra::Heap(h) => heap_congruence_violation(h, part).is_none(),
            Algebra::NearTruss(t) => crate::ideal::is_near_truss_congruence(t, part),
        }
    }

    pub fn is_subalgebra(&self, s: &Subset) -> bool {
        let closed_mul = match self {
            Algebra::Heap(_) => true,
            Algebra::NearTruss(t) => s
                .members()
                .iter()
                .all(|&x| s.members().iter().all(|&y| s.contains(t.mul(x, y)))),
        };
        is_subheap(self.heap(), s) && closed_mul
    }

    pub fn congruences(&self, limits: &Limits) -> Result<Vec<Partition>> {
        match self {
            Algebra::Heap(h) => enumerate_congruences(h, limits),
            Algebra::NearTruss(t) => crate::ideal::enumerate_near_truss_congruences(t, limits),
        }
    }

    pub fn endomorphisms(&self) -> Vec<Endomap> {
        match self {
            Algebra::Heap(h) => h.endomorphisms(),
            Algebra::NearTruss(t) => t.endomorphisms(),
        }
    }
}

/// Kernel of a self-map: same-image partition.
pub fn kernel_partition(f: &Endomap) -> Partition {
    Partition::from_labels(f.images())
}

/// All idempotent endomorphisms of the algebra. Small carriers are scanned
/// by brute force over all self-maps; larger ones go through the
/// (congruence, section) pairs that characterize idempotents.
pub fn enumerate_idempotents(algebra: &Algebra, limits: &Limits) -> Result<Vec<Endomap>> {
    let n = algebra.size();
    limits.check("idempotent enumeration", n)?;
    let mut out: Vec<Endomap> = Vec::new();
    if n <= 6 {
        let mut images = vec![0usize; n];
        loop {
            let candidate = Endomap::new(n, images.clone()).expect("in range");
            if candidate.is_idempotent() && algebra.is_endomorphism(&candidate) {
                out.push(candidate);
            }
            let mut pos = n;
            loop {
                if pos == 0 {
                    out.sort();
                    return Ok(out);
                }
                pos -= 1;
                images[pos] += 1;
                if images[pos] < n {
                    break;
                }
                images[pos] = 0;
            }
        }
    }
    // pair route: sections of congruences
    let congruences = algebra.congruences(limits)?;
    let subheaps = enumerate_subheaps(algebra.heap(), false, limits)?;
    for omega in &congruences {
        for section in &subheaps {
            if !algebra.is_subalgebra(section) {
                continue;
            }
            if let Some(f) = transversal_map(section, omega) {
                if algebra.is_endomorphism(&f) {
                    out.push(f);
                }
            }
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// The map sending each element to the unique section member in its class,
/// when the section is a transversal of the congruence.
fn transversal_map(section: &Subset, omega: &Partition) -> Option<Endomap> {
    let n = omega.size();
    let mut images = Vec::with_capacity(n);
    for x in 0..n {
        let mut hits = section
            .members()
            .iter()
            .copied()
            .filter(|&y| omega.same_class(x, y));
        let image = hits.next()?;
        if hits.next().is_some() {
            return None;
        }
        images.push(image);
    }
    Some(Endomap::new(n, images).expect("section members are in range"))
}

/// The equivalent characterizations of an inner semidirect decomposition,
/// each evaluated by its own literal search. The labels follow the usual
/// lettering with (j), (k) unused.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemidirectConditions {
    /// the section meets every congruence class exactly once
    pub a: bool,
    /// some idempotent endomorphism has image Y and kernel ω
    pub b: bool,
    /// for every e in Y, an idempotent group endomorphism of the retract at e
    /// has image Y and kernel the class of e
    pub c: bool,
    /// for some e in Y
    pub d: bool,
    /// for every e in Y the retract group is the inner semidirect product of
    /// Y and the class of e
    pub e: bool,
    /// for some e in Y
    pub f: bool,
    /// unique factorization a = p(b, c, d) with b ω c, d in Y
    pub g: bool,
    /// unique factorization a = p(d, c, b) with b ω c, d in Y
    pub h: bool,
    /// y ↦ [y]_ω is an isomorphism from the section onto the quotient
    pub i: bool,
    /// some endomorphism has kernel ω and fixes the section pointwise
    pub l: bool,
}

impl SemidirectConditions {
    pub fn as_array(&self) -> [(&'static str, bool); 10] {
        [
            ("a", self.a),
            ("b", self.b),
            ("c", self.c),
            ("d", self.d),
            ("e", self.e),
            ("f", self.f),
            ("g", self.g),
            ("h", self.h),
            ("i", self.i),
            ("l", self.l),
        ]
    }

    pub fn all_agree(&self) -> bool {
        let first = self.a;
        self.as_array().iter().all(|&(_, v)| v == first)
    }

    pub fn holds(&self) -> bool {
        self.as_array().iter().all(|&(_, v)| v)
    }
}

pub fn check_semidirect_conditions(
    algebra: &Algebra,
    section: &Subset,
    omega: &Partition,
    limits: &Limits,
) -> Result<SemidirectConditions> {
    let n = algebra.size();
    section.check_range(n)?;
    if !algebra.is_subalgebra(section) {
        return Err(Error::NotASubheap { x: 0, y: 0, z: 0 });
    }
    if !algebra.is_congruence(omega) {
        return Err(Error::NotACongruence { x: 0, y: 0 });
    }
    let heap = algebra.heap();

    let a = (0..n).all(|x| {
        section
            .members()
            .iter()
            .filter(|&&y| omega.same_class(x, y))
            .count()
            == 1
    });

    let idempotents = enumerate_idempotents(algebra, limits)?;
    let b = idempotents.iter().any(|f| {
        Subset::new(f.image_set()) == *section && kernel_partition(f) == *omega
    });

    // for near-trusses the retract endomorphism must respect the
    // multiplication as well (an idempotent endomorphism of the retract
    // J-ring rather than of the bare group)
    let group_condition = |e: Elem| -> bool {
        let group = heap.retract_group(e).expect("member in range");
        let class = omega.class_of(e);
        group.endomorphisms().iter().any(|f| {
            let respects_mul = match algebra {
                Algebra::Heap(_) => true,
                Algebra::NearTruss(t) => crate::scan::holds_on_all::<2, _>(n, |&[x, y]| {
                    f.apply(t.mul(x, y)) == t.mul(f.apply(x), f.apply(y))
                }),
            };
            respects_mul
                && f.is_idempotent()
                && Subset::new(f.image_set()) == *section
                && Subset::new(
                    (0..n).filter(|&x| f.apply(x) == e).collect::<Vec<_>>(),
                ) == class
        })
    };
    let c = !section.is_empty() && section.members().iter().all(|&e| group_condition(e));
    let d = section.members().iter().any(|&e| group_condition(e));

    let semidirect_group = |e: Elem| -> bool {
        let group = heap.retract_group(e).expect("member in range");
        let class = omega.class_of(e);
        if !group.is_subgroup(section.members()) || !group.is_normal_subgroup(class.members()) {
            return false;
        }
        if section.intersection(&class).members() != [e] {
            return false;
        }
        let mut product: Vec<Elem> = class
            .members()
            .iter()
            .flat_map(|&k| section.members().iter().map(move |&y| (k, y)))
            .map(|(k, y)| group.mul(k, y))
            .collect();
        product.sort_unstable();
        product.dedup();
        product.len() == n
    };
    let e = !section.is_empty() && section.members().iter().all(|&p| semidirect_group(p));
    let f = section.members().iter().any(|&p| semidirect_group(p));

    let unique_factorization = |flipped: bool| -> bool {
        (0..n).all(|target| {
            section.members().iter().all(|&c| {
                let count = (0..n)
                    .flat_map(|b| section.members().iter().map(move |&d| (b, d)))
                    .filter(|&(b, d)| {
                        omega.same_class(b, c)
                            && target
                                == if flipped {
                                    heap.get(d, c, b)
                                } else {
                                    heap.get(b, c, d)
                                }
                    })
                    .count();
                count == 1
            })
        })
    };
    let g = unique_factorization(false);
    let h = unique_factorization(true);

    // bijectivity onto the blocks plus the literal morphism check against
    // the quotient operations evaluated on representatives
    let i = {
        let blocks = omega.num_blocks();
        let mut seen = vec![false; blocks];
        let mut bijective = section.len() == blocks;
        for &y in section.members() {
            let block = omega.block_ids()[y];
            if seen[block] {
                bijective = false;
            }
            seen[block] = true;
        }
        let reps = omega.representatives();
        let rep = |x: Elem| reps[omega.block_ids()[x]];
        let morphism = section.members().iter().all(|&y1| {
            section.members().iter().all(|&y2| {
                section.members().iter().all(|&y3| {
                    let value = heap.get(y1, y2, y3);
                    section.contains(value)
                        && omega.same_class(value, heap.get(rep(y1), rep(y2), rep(y3)))
                })
            })
        });
        let mul_morphism = match algebra {
            Algebra::Heap(_) => true,
            Algebra::NearTruss(t) => section.members().iter().all(|&y1| {
                section.members().iter().all(|&y2| {
                    let value = t.mul(y1, y2);
                    section.contains(value)
                        && omega.same_class(value, t.mul(rep(y1), rep(y2)))
                })
            }),
        };
        bijective && morphism && mul_morphism
    };

    // the witness endomorphism must land inside the section; dropping that
    // lets the identity map satisfy the letter of the condition with
    // ω = equality and any section, breaking the equivalence
    let l = algebra.endomorphisms().iter().any(|f| {
        kernel_partition(f) == *omega
            && f.images().iter().all(|&v| section.contains(v))
            && section.members().iter().all(|&y| f.apply(y) == y)
    });

    Ok(SemidirectConditions {
        a,
        b,
        c,
        d,
        e,
        f,
        g,
        h,
        i,
        l,
    })
}

/// The two sides of the idempotent ↔ (congruence, section) correspondence.
#[derive(Debug, Clone)]
pub struct CorrespondenceReport {
    pub idempotents: Vec<Endomap>,
    pub pairs: Vec<(Partition, Subset)>,
    pub forward_lands_in_pairs: bool,
    pub backward_lands_in_idempotents: bool,
    pub mutually_inverse: bool,
}

impl CorrespondenceReport {
    pub fn is_bijection(&self) -> bool {
        self.idempotents.len() == self.pairs.len()
            && self.forward_lands_in_pairs
            && self.backward_lands_in_idempotents
            && self.mutually_inverse
    }
}

pub fn decomposition_correspondence(
    algebra: &Algebra,
    limits: &Limits,
) -> Result<CorrespondenceReport> {
    let idempotents = enumerate_idempotents(algebra, limits)?;
    let congruences = algebra.congruences(limits)?;
    let subheaps = enumerate_subheaps(algebra.heap(), false, limits)?;
    let n = algebra.size();
    let mut pairs = Vec::new();
    for omega in &congruences {
        for section in &subheaps {
            if !algebra.is_subalgebra(section) {
                continue;
            }
            let transversal = (0..n).all(|x| {
                section
                    .members()
                    .iter()
                    .filter(|&&y| omega.same_class(x, y))
                    .count()
                    == 1
            });
            if transversal {
                pairs.push((omega.clone(), section.clone()));
            }
        }
    }
    let forward_lands_in_pairs = idempotents.iter().all(|f| {
        pairs
            .iter()
            .any(|(omega, y)| kernel_partition(f) == *omega && Subset::new(f.image_set()) == *y)
    });
    let backward_lands_in_idempotents = pairs.iter().all(|(omega, y)| {
        transversal_map(y, omega)
            .is_some_and(|f| idempotents.binary_search(&f).is_ok())
    });
    let mutually_inverse = pairs.iter().all(|(omega, y)| {
        match transversal_map(y, omega) {
            Some(f) => kernel_partition(&f) == *omega && Subset::new(f.image_set()) == *y,
            None => false,
        }
    }) && idempotents.iter().all(|f| {
        let omega = kernel_partition(f);
        let y = Subset::new(f.image_set());
        transversal_map(&y, &omega).as_ref() == Some(f)
    });
    Ok(CorrespondenceReport {
        idempotents,
        pairs,
        forward_lands_in_pairs,
        backward_lands_in_idempotents,
        mutually_inverse,
    })
}

/// An action of a heap on another heap by automorphisms: one map per acting
/// element, with a designated base acting as the identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActionTable {
    pub base: Elem,
    pub maps: Vec<Endomap>,
}

impl ActionTable {
    pub fn trivial(acting: usize, acted: usize) -> Self {
        ActionTable {
            base: 0,
            maps: vec![Endomap::identity(acted); acting],
        }
    }
}

/// Check the action invariants against concrete heaps: every map an
/// automorphism of K, the base mapped to the identity, and
/// `α_{[y1,y2,y3]} = α_{y1} ∘ α_{y2}^{-1} ∘ α_{y3}`.
pub fn validate_action(action: &ActionTable, k_heap: &Heap, y_heap: &Heap) -> Result<()> {
    if action.maps.len() != y_heap.size() {
        return Err(Error::CarrierMismatch {
            left: action.maps.len(),
            right: y_heap.size(),
        });
    }
    y_heap.table().check_element(action.base)?;
    for (y, map) in action.maps.iter().enumerate() {
        if map.size() != k_heap.size() {
            return Err(Error::CarrierMismatch {
                left: map.size(),
                right: k_heap.size(),
            });
        }
        if !map.is_permutation() || !k_heap.is_endomorphism(map) {
            return Err(Error::invalid("action", "automorphism", &[y]));
        }
    }
    if action.maps[action.base] != Endomap::identity(k_heap.size()) {
        return Err(Error::invalid("action", "identity_base", &[action.base]));
    }
    let ny = y_heap.size();
    for y1 in 0..ny {
        for y2 in 0..ny {
            let inverse = action.maps[y2].inverse().expect("permutation");
            for y3 in 0..ny {
                let composed = action.maps[y1].compose(&inverse).compose(&action.maps[y3]);
                if composed != action.maps[y_heap.get(y1, y2, y3)] {
                    return Err(Error::invalid("action", "heap_morphism", &[y1, y2, y3]));
                }
            }
        }
    }
    Ok(())
}

/// The conjugation action of a section on a kernel class, in the K-local
/// index space, together with the data needed to compare it elsewhere.
#[derive(Debug, Clone)]
pub struct ConjugationOutcome {
    /// members of the kernel class `[e]_ω`, ascending
    pub class: Subset,
    /// the class as a heap in local indices
    pub class_heap: Heap,
    /// the section members, ascending; `action.maps[i]` belongs to
    /// `section[i]`
    pub section: Subset,
    pub action: ActionTable,
}

/// `α_y(k) = [y, e, [k, y, e]]` for `y` in the section and `k` in the class
/// of `e`. Each map is verified to be an automorphism of the class, the map
/// at `e` the identity, the family a heap morphism, and the whole thing is
/// cross-checked against plain group conjugation in the retract at `e`.
pub fn conjugation_action(
    heap: &Heap,
    section: &Subset,
    omega: &Partition,
    e: Elem,
) -> Result<ConjugationOutcome> {
    if !section.contains(e) {
        return Err(Error::BaseNotInSubset { element: e });
    }
    if let Some((x, y)) = heap_congruence_violation(heap, omega) {
        return Err(Error::NotACongruence { x, y });
    }
    if !is_subheap(heap, section) {
        return Err(Error::NotASubheap { x: 0, y: 0, z: 0 });
    }
    let class = omega.class_of(e);
    let members = class.members();
    let local = |x: Elem| members.binary_search(&x).expect("value stays in the class");
    let class_table = TernaryTable::from_fn(members.len(), |i, j, l| {
        local(heap.get(members[i], members[j], members[l]))
    })
    .expect("class is non-empty");
    let class_heap = Heap::new(class_table, &Limits::covering(members.len()))?;

    let group = heap.retract_group(e)?;
    let mut maps = Vec::with_capacity(section.len());
    for &y in section.members() {
        let mut images = Vec::with_capacity(members.len());
        for &k in members {
            let value = heap.get(y, e, heap.get(k, y, e));
            if !class.contains(value) {
                return Err(Error::invalid("conjugation", "class_stability", &[y, k]));
            }
            // the bracket form must match group conjugation y k y^{-1}
            let conjugate = group.mul(group.mul(y, k), group.inv(y));
            assert_eq!(
                value, conjugate,
                "bracket conjugation must equal group conjugation"
            );
            images.push(local(value));
        }
        maps.push(Endomap::new(members.len(), images).expect("in range"));
    }
    let base = section
        .members()
        .iter()
        .position(|&y| y == e)
        .expect("checked membership");
    let section_table = TernaryTable::from_fn(section.len(), |i, j, l| {
        let value = heap.get(
            section.members()[i],
            section.members()[j],
            section.members()[l],
        );
        section
            .members()
            .binary_search(&value)
            .expect("section is a subheap")
    })
    .expect("section is non-empty");
    let section_heap = Heap::new(section_table, &Limits::covering(section.len()))?;
    let action = ActionTable { base, maps };
    validate_action(&action, &class_heap, &section_heap)?;
    Ok(ConjugationOutcome {
        class,
        class_heap,
        section: section.clone(),
        action,
    })
}

/// The outer semidirect product and the facts verified about it.
#[derive(Debug, Clone)]
pub struct OuterProduct {
    pub heap: Heap,
    /// index of `(k, y)` is `k * |Y| + y`
    pub k_size: usize,
    pub y_size: usize,
    /// `K × {base}` is a normal subheap isomorphic to K
    pub kernel_copy_normal: bool,
    /// every `{k} × Y` is a subheap and `(a, b) ↦ (k, b)` idempotent
    pub section_copies_ok: bool,
    /// conjugation on `K × {base}` recovers the input action
    pub action_recovered: bool,
    /// the full condition battery on the canonical pair, when within reach
    pub conditions: Option<SemidirectConditions>,
}

/// Build `K ⋊ Y` along an action whose designated base acts as the identity:
/// `[(k1,y1),(k2,y2),(k3,y3)] = ([k1, α_{[y1,y2,y0]}k2, α_{[y1,y2,y0]}k3],
/// [y1,y2,y3])`.
pub fn outer_semidirect(
    k_heap: &Heap,
    y_heap: &Heap,
    action: &ActionTable,
) -> Result<OuterProduct> {
    validate_action(action, k_heap, y_heap)?;
    let (nk, ny) = (k_heap.size(), y_heap.size());
    let n = nk * ny;
    let y0 = action.base;
    let code = |k: Elem, y: Elem| k * ny + y;
    let table = TernaryTable::from_fn(n, |p, q, r| {
        let (k1, y1) = (p / ny, p % ny);
        let (k2, y2) = (q / ny, q % ny);
        let (k3, y3) = (r / ny, r % ny);
        let twist = &action.maps[y_heap.get(y1, y2, y0)];
        code(
            k_heap.get(k1, twist.apply(k2), twist.apply(k3)),
            y_heap.get(y1, y2, y3),
        )
    })?;
    let heap = Heap::new(table, &Limits::covering(n))?;

    let kernel_copy = Subset::new((0..nk).map(|k| code(k, y0)).collect());
    let kernel_copy_normal = is_normal_quick(&heap, &kernel_copy)
        && crate::scan::holds_on_all::<3, _>(nk, |&[k1, k2, k3]| {
            heap.get(code(k1, y0), code(k2, y0), code(k3, y0))
                == code(k_heap.get(k1, k2, k3), y0)
        });

    let mut section_copies_ok = true;
    for k in 0..nk {
        let copy = Subset::new((0..ny).map(|y| code(k, y)).collect());
        let projector = Endomap::from_fn(n, |p| code(k, p % ny)).expect("in range");
        if !is_subheap(&heap, &copy)
            || !projector.is_idempotent()
            || !heap.is_endomorphism(&projector)
        {
            section_copies_ok = false;
        }
    }

    // conjugating the kernel copy by the k = 0 section recovers the action
    let omega = kernel_partition(&Endomap::from_fn(n, |p| code(0, p % ny)).expect("in range"));
    let section = Subset::new((0..ny).map(|y| code(0, y)).collect());
    let conjugation = conjugation_action(&heap, &section, &omega, code(0, y0))?;
    let action_recovered = conjugation.action.maps == action.maps
        && conjugation.class.members().iter().enumerate().all(|(i, &p)| p == code(i, y0));

    let conditions = if n <= 6 {
        Some(check_semidirect_conditions(
            &Algebra::Heap(&heap),
            &section,
            &omega,
            &Limits::covering(n),
        )?)
    } else {
        None
    };

    Ok(OuterProduct {
        heap,
        k_size: nk,
        y_size: ny,
        kernel_copy_normal,
        section_copies_ok,
        action_recovered,
        conditions,
    })
}

/// Componentwise product heap on `K × Y`, for the bit-exact comparison with
/// the trivial-action outer product.
pub fn direct_product_heap(k_heap: &Heap, y_heap: &Heap) -> Result<Heap> {
    let (nk, ny) = (k_heap.size(), y_heap.size());
    let table = TernaryTable::from_fn(nk * ny, |p, q, r| {
        k_heap.get(p / ny, q / ny, r / ny) * ny + y_heap.get(p % ny, q % ny, r % ny)
    })?;
    Heap::new(table, &Limits::covering(nk * ny))
}

/// The equivalent direct-product criteria for a semidirect decomposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectProductConditions {
    /// the section is normal
    pub a: bool,
    /// the canonical map (k, y) ↦ [k, e, y] is an isomorphism from K × Y
    pub b: bool,
    /// [y, e, k] = [k, e, y] for all section and class members
    pub c: bool,
    /// some idempotent has image K and preimage of e equal to the section
    pub d: bool,
    /// the conjugation action is constantly the identity
    pub e: bool,
    /// when everything holds, the commutator of the two congruences is the
    /// equality congruence
    pub commutator_trivial: Option<bool>,
}

impl DirectProductConditions {
    pub fn as_array(&self) -> [(&'static str, bool); 5] {
        [
            ("a", self.a),
            ("b", self.b),
            ("c", self.c),
            ("d", self.d),
            ("e", self.e),
        ]
    }

    pub fn all_agree(&self) -> bool {
        self.as_array().iter().all(|&(_, v)| v == self.a)
    }

    pub fn holds(&self) -> bool {
        self.as_array().iter().all(|&(_, v)| v)
    }
}

pub fn direct_product_conditions(
    heap: &Heap,
    section: &Subset,
    omega: &Partition,
    e: Elem,
    limits: &Limits,
) -> Result<DirectProductConditions> {
    if !section.contains(e) {
        return Err(Error::BaseNotInSubset { element: e });
    }
    let decomposition =
        check_semidirect_conditions(&Algebra::Heap(heap), section, omega, limits)?;
    if !decomposition.holds() {
        return Err(Error::Unsupported(
            "the pair is not a semidirect decomposition".into(),
        ));
    }
    let class = omega.class_of(e);

    let a = is_normal_quick(heap, section);

    let b = {
        let members_k = class.members();
        let members_y = section.members();
        let canonical: Vec<Elem> = members_k
            .iter()
            .flat_map(|&k| members_y.iter().map(move |&y| heap.get(k, e, y)))
            .collect();
        let mut distinct = canonical.clone();
        distinct.sort_unstable();
        distinct.dedup();
        let bijective = distinct.len() == heap.size() && canonical.len() == heap.size();
        let (nk, ny) = (members_k.len(), members_y.len());
        let map = |k: usize, y: usize| canonical[k * ny + y];
        let morphism = bijective
            && crate::scan::holds_on_all::<3, _>(nk * ny, |&[p, q, r]| {
                let value = heap.get(
                    map(p / ny, p % ny),
                    map(q / ny, q % ny),
                    map(r / ny, r % ny),
                );
                let k = heap.get(members_k[p / ny], members_k[q / ny], members_k[r / ny]);
                let y = heap.get(members_y[p % ny], members_y[q % ny], members_y[r % ny]);
                value == heap.get(k, e, y)
            });
        morphism
    };

    let c = section.members().iter().all(|&y| {
        class
            .members()
            .iter()
            .all(|&k| heap.get(y, e, k) == heap.get(k, e, y))
    });

    let idempotents = enumerate_idempotents(&Algebra::Heap(heap), limits)?;
    let d = idempotents.iter().any(|f| {
        Subset::new(f.image_set()) == class
            && Subset::new((0..heap.size()).filter(|&x| f.apply(x) == e).collect::<Vec<_>>())
                == *section
    });

    let conjugation = conjugation_action(heap, section, omega, e)?;
    let e_cond = conjugation
        .action
        .maps
        .iter()
        .all(|m| *m == Endomap::identity(class.len()));

    let conditions = DirectProductConditions {
        a,
        b,
        c,
        d,
        e: e_cond,
        commutator_trivial: None,
    };
    let commutator_trivial = if conditions.holds() {
        let section_congruence = congruence_of_normal(heap, section)?;
        let commutator =
            crate::commutator::smith_commutator_heap(heap, &section_congruence, omega, e)?;
        Some(commutator == Partition::equality(heap.size()))
    } else {
        None
    };
    Ok(DirectProductConditions {
        commutator_trivial,
        ..conditions
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group;
    use crate::heap::heap_from_group;

    fn z4_heap() -> Heap {
        heap_from_group(&group::cyclic(4))
    }

    fn klein_heap() -> Heap {
        heap_from_group(&group::klein())
    }

    #[test]
    fn idempotents_of_z4_heap() {
        let heap = z4_heap();
        let idempotents =
            enumerate_idempotents(&Algebra::Heap(&heap), &Limits::default()).unwrap();
        // four constants and the identity
        assert_eq!(idempotents.len(), 5);
    }

    #[test]
    fn idempotents_of_klein_heap_by_brute_force() {
        let heap = klein_heap();
        let idempotents =
            enumerate_idempotents(&Algebra::Heap(&heap), &Limits::default()).unwrap();
        // 4 constants + identity + 6 projections with 2 shifts each
        assert_eq!(idempotents.len(), 17);
        for f in &idempotents {
            assert!(f.is_idempotent());
            assert!(heap.is_endomorphism(f));
        }
    }

    #[test]
    fn near_truss_idempotents_are_a_subset_of_heap_ones() {
        let t = crate::corpus::ring_truss(4);
        let heap_count =
            enumerate_idempotents(&Algebra::Heap(t.heap()), &Limits::default())
                .unwrap()
                .len();
        let truss_idempotents =
            enumerate_idempotents(&Algebra::NearTruss(&t), &Limits::default()).unwrap();
        assert!(truss_idempotents.len() <= heap_count);
        for f in &truss_idempotents {
            assert!(t.is_endomorphism(f));
        }
    }

    #[test]
    fn conditions_all_true_for_constant_decomposition() {
        let heap = z4_heap();
        let conditions = check_semidirect_conditions(
            &Algebra::Heap(&heap),
            &Subset::parse("0").unwrap(),
            &Partition::single_block(4),
            &Limits::default(),
        )
        .unwrap();
        assert!(conditions.holds());
        assert!(conditions.all_agree());
    }

    #[test]
    fn conditions_all_true_for_klein_split() {
        let heap = klein_heap();
        // classes by second coordinate; section = first-coordinate axis
        let omega = Partition::parse("0,1|2,3", 4).unwrap();
        let section = Subset::parse("0,2").unwrap();
        let conditions = check_semidirect_conditions(
            &Algebra::Heap(&heap),
            &section,
            &omega,
            &Limits::default(),
        )
        .unwrap();
        assert!(conditions.holds());
        assert!(conditions.all_agree());
    }

    #[test]
    fn conditions_all_false_when_section_overshoots() {
        let heap = z4_heap();
        let conditions = check_semidirect_conditions(
            &Algebra::Heap(&heap),
            &Subset::parse("0,2").unwrap(),
            &Partition::parse("0,2|1,3", 4).unwrap(),
            &Limits::default(),
        )
        .unwrap();
        assert!(!conditions.a);
        assert!(conditions.as_array().iter().all(|&(_, v)| !v));
        assert!(conditions.all_agree());
    }

    #[test]
    fn correspondence_is_a_bijection_on_small_heaps() {
        for heap in [z4_heap(), klein_heap()] {
            let report =
                decomposition_correspondence(&Algebra::Heap(&heap), &Limits::default()).unwrap();
            assert!(report.is_bijection());
        }
        let report = decomposition_correspondence(
            &Algebra::Heap(&z4_heap()),
            &Limits::default(),
        )
        .unwrap();
        assert_eq!(report.idempotents.len(), 5);
        assert_eq!(report.pairs.len(), 5);
    }

    #[test]
    fn conjugation_is_trivial_on_abelian_heaps() {
        let heap = klein_heap();
        let omega = Partition::parse("0,1|2,3", 4).unwrap();
        let section = Subset::parse("0,2").unwrap();
        let outcome = conjugation_action(&heap, &section, &omega, 0).unwrap();
        assert!(outcome
            .action
            .maps
            .iter()
            .all(|m| *m == Endomap::identity(2)));
    }

    #[test]
    fn conjugation_is_nontrivial_on_s3_heap() {
        let s3 = heap_from_group(&group::symmetric_3());
        // section: a two-element subgroup-subheap through 0; class: A3
        let top = Partition::single_block(6);
        let a3_partition =
            crate::commutator::smith_commutator_heap(&s3, &top, &top, 0).unwrap();
        let section = enumerate_subheaps(&s3, false, &Limits::default())
            .unwrap()
            .into_iter()
            .find(|s| {
                s.len() == 2
                    && s.contains(0)
                    && (0..6).all(|x| {
                        s.members()
                            .iter()
                            .filter(|&&y| a3_partition.same_class(x, y))
                            .count()
                            == 1
                    })
            })
            .expect("S3 splits over A3");
        let outcome = conjugation_action(&s3, &section, &a3_partition, 0).unwrap();
        assert!(outcome
            .action
            .maps
            .iter()
            .any(|m| *m != Endomap::identity(3)));
    }

    #[test]
    fn outer_with_trivial_action_is_the_direct_product() {
        let k = heap_from_group(&group::cyclic(2));
        let y = heap_from_group(&group::cyclic(2));
        let action = ActionTable::trivial(2, 2);
        let product = outer_semidirect(&k, &y, &action).unwrap();
        assert!(product.kernel_copy_normal);
        assert!(product.section_copies_ok);
        assert!(product.action_recovered);
        assert!(product.conditions.as_ref().unwrap().holds());
        let direct = direct_product_heap(&k, &y).unwrap();
        assert_eq!(product.heap.table(), direct.table());
        // the 4-element direct product of Z2s is the Klein heap
        assert!(crate::heap::heap_isomorphism(&product.heap, &klein_heap()).is_some());
    }

    #[test]
    fn outer_with_inversion_action_gives_s3_retract() {
        let k = heap_from_group(&group::cyclic(3));
        let y = heap_from_group(&group::cyclic(2));
        let inversion = Endomap::new(3, vec![0, 2, 1]).unwrap();
        let action = ActionTable {
            base: 0,
            maps: vec![Endomap::identity(3), inversion],
        };
        let product = outer_semidirect(&k, &y, &action).unwrap();
        assert!(product.kernel_copy_normal);
        assert!(product.section_copies_ok);
        assert!(product.action_recovered);
        assert!(product.conditions.as_ref().unwrap().holds());
        let retract = product.heap.retract_group(0).unwrap();
        assert!(
            crate::group::group_isomorphism(&retract, &group::symmetric_3()).is_some(),
            "the retract of Z3 ⋊ Z2 must be S3"
        );
    }

    #[test]
    fn outer_with_singleton_section_is_the_kernel() {
        let k = heap_from_group(&group::cyclic(3));
        let y = Heap::from_fn(1, |_, _, _| 0).unwrap();
        let action = ActionTable::trivial(1, 3);
        let product = outer_semidirect(&k, &y, &action).unwrap();
        assert!(crate::heap::heap_isomorphism(&product.heap, &k).is_some());
    }

    #[test]
    fn rejects_action_without_identity_base() {
        let k = heap_from_group(&group::cyclic(3));
        let y = heap_from_group(&group::cyclic(2));
        let inversion = Endomap::new(3, vec![0, 2, 1]).unwrap();
        let action = ActionTable {
            base: 0,
            maps: vec![inversion.clone(), inversion],
        };
        assert!(outer_semidirect(&k, &y, &action).is_err());
    }

    #[test]
    fn direct_product_conditions_on_abelian_split() {
        let heap = klein_heap();
        let omega = Partition::parse("0,1|2,3", 4).unwrap();
        let section = Subset::parse("0,2").unwrap();
        let report =
            direct_product_conditions(&heap, &section, &omega, 0, &Limits::default()).unwrap();
        assert!(report.holds());
        assert!(report.all_agree());
        assert_eq!(report.commutator_trivial, Some(true));
    }

    #[test]
    fn direct_product_conditions_fail_on_s3_split() {
        let s3 = heap_from_group(&group::symmetric_3());
        let top = Partition::single_block(6);
        let a3_partition =
            crate::commutator::smith_commutator_heap(&s3, &top, &top, 0).unwrap();
        let section = enumerate_subheaps(&s3, false, &Limits::default())
            .unwrap()
            .into_iter()
            .find(|s| {
                s.len() == 2
                    && s.contains(0)
                    && (0..6).all(|x| {
                        s.members()
                            .iter()
                            .filter(|&&y| a3_partition.same_class(x, y))
                            .count()
                            == 1
                    })
            })
            .expect("S3 splits over A3");
        let report =
            direct_product_conditions(&s3, &section, &a3_partition, 0, &Limits::default())
                .unwrap();
        assert!(report.as_array().iter().all(|&(_, v)| !v));
        assert!(report.all_agree());
        assert_eq!(report.commutator_trivial, None);
    }

    #[test]
    fn direct_product_conditions_with_singleton_section() {
        let heap = z4_heap();
        let report = direct_product_conditions(
            &heap,
            &Subset::parse("0").unwrap(),
            &Partition::single_block(4),
            0,
            &Limits::default(),
        )
        .unwrap();
        assert!(report.holds());
        assert_eq!(report.commutator_trivial, Some(true));
    }
}
