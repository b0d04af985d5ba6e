//! Heaps and semiheaps: ternary-operation axiom scans, retract groups,
//! translation groups and the standard constructions from groups and join
//! semilattices.

use crate::error::{Error, Result};
use crate::group::GroupView;
use crate::report::{Limits, ValidationReport};
use crate::scan;
use crate::table::{BinaryTable, Elem, Endomap, TernaryTable};

/// How much of the axiom stack to check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Level {
    /// Associativity only.
    Semiheap,
    /// Associativity plus both Mal'tsev cancellation laws.
    Heap,
    /// A heap whose brackets are insensitive to swapping the outer arguments.
    AbelianHeap,
}

/// Scan the ternary table against the axioms of the requested level. Every
/// law reports at most the lexicographically first witness.
pub fn validate_ternary(
    table: &TernaryTable,
    level: Level,
    limits: &Limits,
) -> Result<ValidationReport> {
    let n = table.size();
    limits.check("ternary axiom scan", n)?;
    let mut report = ValidationReport::new(match level {
        Level::Semiheap => "semiheap",
        Level::Heap => "heap",
        Level::AbelianHeap => "abelian heap",
    });
    report.record(
        "associativity",
        scan::first_failure::<5, _>(n, |&[x, y, z, w, u]| {
            table.get(table.get(x, y, z), w, u) == table.get(x, y, table.get(z, w, u))
        })
        .map(|w| w.to_vec()),
    );
    if level >= Level::Heap {
        report.record(
            "maltsev_left",
            scan::first_failure::<2, _>(n, |&[x, y]| table.get(x, x, y) == y).map(|w| w.to_vec()),
        );
        report.record(
            "maltsev_right",
            scan::first_failure::<2, _>(n, |&[x, y]| table.get(x, y, y) == x).map(|w| w.to_vec()),
        );
    }
    if level >= Level::AbelianHeap {
        report.record(
            "commutativity",
            scan::first_failure::<3, _>(n, |&[x, y, z]| table.get(x, y, z) == table.get(z, y, x))
                .map(|w| w.to_vec()),
        );
    }
    Ok(report)
}

/// A ternary table that passed the heap axioms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Heap {
    table: TernaryTable,
}

impl Heap {
    pub fn new(table: TernaryTable, limits: &Limits) -> Result<Self> {
        validate_ternary(&table, Level::Heap, limits)?.into_result("heap")?;
        Ok(Heap { table })
    }

    pub fn from_fn(size: usize, op: impl Fn(Elem, Elem, Elem) -> Elem) -> Result<Self> {
        let table = TernaryTable::from_fn(size, op)?;
        Heap::new(table, &Limits::covering(size))
    }

    /// For callers that already ran the heap-level scan on this exact table.
    pub(crate) fn from_validated(table: TernaryTable) -> Self {
        Heap { table }
    }

    pub fn size(&self) -> usize {
        self.table.size()
    }

    #[inline]
    pub fn get(&self, x: Elem, y: Elem, z: Elem) -> Elem {
        self.table.get(x, y, z)
    }

    pub fn table(&self) -> &TernaryTable {
        &self.table
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.size();
        scan::holds_on_all::<3, _>(n, |&[x, y, z]| self.get(x, y, z) == self.get(z, y, x))
    }

    /// The group `(X, b_e)` with `b_e(x, z) = [x, e, z]`, identity `e` and
    /// inverse `[e, y, e]`.
    pub fn retract_group(&self, e: Elem) -> Result<GroupView> {
        self.table.check_element(e)?;
        let op = BinaryTable::from_fn(self.size(), |x, z| self.get(x, e, z))?;
        let group = GroupView::from_table(op).expect("retract of a heap is a group");
        debug_assert_eq!(group.identity(), e);
        debug_assert!((0..self.size()).all(|y| group.inv(y) == self.get(e, y, e)));
        Ok(group)
    }

    /// Translation `z ↦ [x, y, z]`.
    pub fn translation(&self, x: Elem, y: Elem) -> Endomap {
        Endomap::from_fn(self.size(), |z| self.get(x, y, z)).expect("table is closed")
    }

    /// Heap quotient by a partition already known to be a congruence: table
    /// on block indices plus the projection map.
    pub fn quotient(&self, part: &crate::subobject::Partition) -> (Heap, Vec<Elem>) {
        let reps = part.representatives();
        let k = reps.len();
        let block = part.block_ids();
        let table = TernaryTable::from_fn(k, |a, b, c| block[self.get(reps[a], reps[b], reps[c])])
            .expect("non-empty quotient");
        let heap = Heap::new(table, &Limits::covering(k)).expect("quotient of a heap is a heap");
        (heap, block.to_vec())
    }

    /// Whether `f` commutes with the ternary operation.
    pub fn is_endomorphism(&self, f: &Endomap) -> bool {
        f.size() == self.size()
            && scan::holds_on_all::<3, _>(self.size(), |&[x, y, z]| {
                f.apply(self.get(x, y, z)) == self.get(f.apply(x), f.apply(y), f.apply(z))
            })
    }

    /// All endomorphisms of the heap. Through a base `e` these are exactly
    /// the maps `x ↦ g(x) ·_e c` with `g` an endomorphism of the retract
    /// group, which keeps the search well below the n^n brute force.
    pub fn endomorphisms(&self) -> Vec<Endomap> {
        let e = 0;
        let group = self.retract_group(e).expect("0 is in range");
        let mut out = Vec::new();
        for g in group.endomorphisms() {
            for c in 0..self.size() {
                let f = Endomap::from_fn(self.size(), |x| group.mul(g.apply(x), c))
                    .expect("closed");
                if self.is_endomorphism(&f) {
                    out.push(f);
                }
            }
        }
        out.sort();
        out.dedup();
        out
    }
}

/// A ternary table that passed associativity (Mal'tsev not required).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Semiheap {
    table: TernaryTable,
}

impl Semiheap {
    pub fn new(table: TernaryTable, limits: &Limits) -> Result<Self> {
        validate_ternary(&table, Level::Semiheap, limits)?.into_result("semiheap")?;
        Ok(Semiheap { table })
    }

    pub fn size(&self) -> usize {
        self.table.size()
    }

    pub fn get(&self, x: Elem, y: Elem, z: Elem) -> Elem {
        self.table.get(x, y, z)
    }

    pub fn table(&self) -> &TernaryTable {
        &self.table
    }
}

/// `[x, y, z] = x y^{-1} z`. Retracting the result at the group identity
/// gives back the input table.
pub fn heap_from_group(group: &GroupView) -> Heap {
    let n = group.size();
    let table = TernaryTable::from_fn(n, |x, y, z| group.mul(group.mul(x, group.inv(y)), z))
        .expect("group carrier is non-empty");
    Heap::new(table, &Limits::covering(n)).expect("group bracket satisfies the heap axioms")
}

/// `[x, y, z] = (x ∨ y) ∨ z` for a join-semilattice table. Rejects tables
/// that are not associative, commutative and idempotent.
pub fn semiheap_from_join_lattice(join: &BinaryTable) -> Result<Semiheap> {
    let n = join.size();
    if !join.is_associative() {
        return Err(Error::invalid("join semilattice", "associativity", &[]));
    }
    if !join.is_commutative() {
        return Err(Error::invalid("join semilattice", "commutativity", &[]));
    }
    if !join.is_idempotent() {
        return Err(Error::invalid("join semilattice", "idempotency", &[]));
    }
    let table = TernaryTable::from_fn(n, |x, y, z| join.get(join.get(x, y), z))?;
    Semiheap::new(table, &Limits::covering(n))
}

/// Report of the translation set `S_X = {τ_x^y}` of a heap, together with
/// the structural facts that make it a group.
#[derive(Debug, Clone)]
pub struct TranslationReport {
    /// Deduplicated members, sorted by image vector.
    pub members: Vec<Endomap>,
    pub all_permutations: bool,
    /// τ_x^y ∘ τ_u^v = τ_{[x,y,u]}^v on all index pairs.
    pub composition_law: bool,
    /// For every base y, x ↦ τ_x^y is a group isomorphism (X, b_y) → S_X.
    pub cayley_isomorphisms: bool,
}

impl TranslationReport {
    pub fn passed(&self) -> bool {
        self.all_permutations && self.composition_law && self.cayley_isomorphisms
    }
}

/// Compute and cross-check the translation set of a heap.
pub fn translations(heap: &Heap) -> TranslationReport {
    let n = heap.size();
    let mut members: Vec<Endomap> = Vec::new();
    let mut table = vec![vec![Endomap::identity(n); n]; n];
    for x in 0..n {
        for y in 0..n {
            let t = heap.translation(x, y);
            table[x][y] = t.clone();
            members.push(t);
        }
    }
    members.sort();
    members.dedup();
    let all_permutations = members.iter().all(|m| m.is_permutation());

    let mut composition_law = true;
    'outer: for x in 0..n {
        for y in 0..n {
            for u in 0..n {
                for v in 0..n {
                    let composed = table[x][y].compose(&table[u][v]);
                    if composed != table[heap.get(x, y, u)][v] {
                        composition_law = false;
                        break 'outer;
                    }
                }
            }
        }
    }

    let mut cayley_isomorphisms = true;
    for y in 0..n {
        // injective with image covering the whole set forces |S_X| = n
        let column: Vec<&Endomap> = (0..n).map(|x| &table[x][y]).collect();
        let mut sorted: Vec<&Endomap> = column.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != n || members.len() != n {
            cayley_isomorphisms = false;
            break;
        }
        // morphism: τ_{b_y(x, x')}^y = τ_x^y ∘ τ_{x'}^y
        let hom = scan::holds_on_all::<2, _>(n, |&[x, xp]| {
            table[heap.get(x, y, xp)][y] == column[x].compose(column[xp])
        });
        if !hom {
            cayley_isomorphisms = false;
            break;
        }
    }

    TranslationReport {
        members,
        all_permutations,
        composition_law,
        cayley_isomorphisms,
    }
}

/// Pairwise compatibility of the derived magmas: `(u ·_x z) ·_y w =
/// u ·_x (z ·_y w)` for all five indices. Agrees with the associativity scan
/// by construction; both orders are checked literally.
pub fn compatibility_check(table: &TernaryTable, limits: &Limits) -> Result<ValidationReport> {
    let n = table.size();
    limits.check("compatibility scan", n)?;
    let mut report = ValidationReport::new("compatible magmas");
    report.record(
        "compatibility",
        scan::first_failure::<5, _>(n, |&[x, y, u, z, w]| {
            table.get(table.get(u, x, z), y, w) == table.get(u, x, table.get(z, y, w))
        })
        .map(|w| w.to_vec()),
    );
    Ok(report)
}

/// Exhaustive heap isomorphism search (small carriers only).
pub fn heap_isomorphism(a: &Heap, b: &Heap) -> Option<Vec<Elem>> {
    use itertools::Itertools;
    let n = a.size();
    if n != b.size() {
        return None;
    }
    for perm in (0..n).permutations(n) {
        if scan::holds_on_all::<3, _>(n, |&[x, y, z]| {
            perm[a.get(x, y, z)] == b.get(perm[x], perm[y], perm[z])
        }) {
            return Some(perm);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group;

    fn z4_heap() -> Heap {
        heap_from_group(&group::cyclic(4))
    }

    fn chain_join(n: usize) -> BinaryTable {
        BinaryTable::from_fn(n, |x, y| x.max(y)).unwrap()
    }

    #[test]
    fn z4_is_an_abelian_heap() {
        let report =
            validate_ternary(z4_heap().table(), Level::AbelianHeap, &Limits::default()).unwrap();
        assert!(report.passed);
    }

    #[test]
    fn join_semiheap_is_not_a_heap() {
        let sh = semiheap_from_join_lattice(&chain_join(3)).unwrap();
        let heap_report = validate_ternary(sh.table(), Level::Heap, &Limits::default()).unwrap();
        assert!(!heap_report.passed);
        // the reported witness actually violates a cancellation law
        let v = &heap_report.violations[0];
        assert!(v.law.starts_with("maltsev"));
        let (x, y) = (v.witness[0], v.witness[1]);
        let value = match v.law {
            "maltsev_left" => sh.get(x, x, y) != y,
            _ => sh.get(x, y, y) != x,
        };
        assert!(value);
    }

    #[test]
    fn singleton_passes_everything() {
        let t = TernaryTable::from_fn(1, |_, _, _| 0).unwrap();
        let report = validate_ternary(&t, Level::AbelianHeap, &Limits::default()).unwrap();
        assert!(report.passed);
        assert!(Heap::new(t, &Limits::default()).is_ok());
    }

    #[test]
    fn scan_cap_is_enforced() {
        let t = TernaryTable::from_fn(3, |x, _, _| x).unwrap();
        let err = validate_ternary(&t, Level::Semiheap, &Limits::with_max_n(2)).unwrap_err();
        assert!(matches!(err, Error::ResourceLimit { .. }));
    }

    #[test]
    fn retract_group_of_z4() {
        let heap = z4_heap();
        let g0 = heap.retract_group(0).unwrap();
        assert_eq!(g0.identity(), 0);
        assert_eq!(g0.mul(1, 3), 0);
        assert_eq!(g0.inv(1), 3);
        let g1 = heap.retract_group(1).unwrap();
        assert_eq!(g1.identity(), 1);
        // inverse of 3 in (X, b_1) is [1,3,1]
        assert_eq!(g1.inv(3), heap.get(1, 3, 1));
        assert_eq!(g1.inv(3), 3);
    }

    #[test]
    fn translations_of_z4_are_the_four_shifts() {
        let heap = z4_heap();
        let report = translations(&heap);
        assert!(report.passed());
        assert_eq!(report.members.len(), 4);
        // τ_2^1 is the shift by +1
        let t = heap.translation(2, 1);
        assert_eq!(t.images(), &[1, 2, 3, 0]);
    }

    #[test]
    fn translations_of_s3_heap() {
        let heap = heap_from_group(&group::symmetric_3());
        let report = translations(&heap);
        assert!(report.passed());
        assert_eq!(report.members.len(), 6);
    }

    #[test]
    fn heap_from_s3_is_not_abelian() {
        let heap = heap_from_group(&group::symmetric_3());
        assert!(!heap.is_abelian());
        let report =
            validate_ternary(heap.table(), Level::AbelianHeap, &Limits::default()).unwrap();
        assert!(report.violated("commutativity"));
    }

    #[test]
    fn group_heap_round_trip() {
        for g in [group::cyclic(4), group::symmetric_3(), group::klein()] {
            let heap = heap_from_group(&g);
            let back = heap.retract_group(g.identity()).unwrap();
            assert_eq!(back.table(), g.table());
        }
    }

    #[test]
    fn diamond_lattice_semiheap() {
        // 0 below a=1, b=2, top=3
        let join = BinaryTable::from_fn(4, |x, y| {
            if x == y {
                x
            } else if x == 0 {
                y
            } else if y == 0 {
                x
            } else {
                3
            }
        })
        .unwrap();
        assert!(semiheap_from_join_lattice(&join).is_ok());
    }

    #[test]
    fn non_semilattice_rejected() {
        let sub = BinaryTable::from_fn(3, |x, y| (x + 2 * y) % 3).unwrap();
        assert!(semiheap_from_join_lattice(&sub).is_err());
    }

    #[test]
    fn compatibility_agrees_with_associativity() {
        let good = z4_heap();
        let report = compatibility_check(good.table(), &Limits::default()).unwrap();
        assert!(report.passed);

        // a table failing associativity must fail compatibility too
        let bad = TernaryTable::from_fn(3, |x, y, z| (x + y * z) % 3).unwrap();
        let assoc = validate_ternary(&bad, Level::Semiheap, &Limits::default()).unwrap();
        let compat = compatibility_check(&bad, &Limits::default()).unwrap();
        assert!(!assoc.passed);
        assert!(!compat.passed);
    }

    #[test]
    fn quotient_of_z4_by_evens() {
        let heap = z4_heap();
        let part = crate::subobject::Partition::parse("0,2|1,3", 4).unwrap();
        let (q, projection) = heap.quotient(&part);
        assert_eq!(q.size(), 2);
        assert_eq!(projection, vec![0, 1, 0, 1]);
    }

    #[test]
    fn endomorphisms_of_small_heaps() {
        // all four self-maps of the 2-element heap are endomorphisms
        let z2 = heap_from_group(&group::cyclic(2));
        assert_eq!(z2.endomorphisms().len(), 4);
        // affine maps az+b over Z3
        let z3 = heap_from_group(&group::cyclic(3));
        assert_eq!(z3.endomorphisms().len(), 9);
    }

    #[test]
    fn heap_isomorphism_search_works() {
        let a = heap_from_group(&group::cyclic(4));
        let b = heap_from_group(&group::cyclic(4));
        assert!(heap_isomorphism(&a, &b).is_some());
        let v4 = heap_from_group(&group::klein());
        assert!(heap_isomorphism(&a, &v4).is_none());
    }
}
