//! Named standard instances used by tests, benchmarks and the shipped
//! example files: small cyclic and permutation groups, ring trusses, the
//! upper-triangular matrix truss, the Jacobson circle tables and a
//! four-element skew brace.

use crate::group::{self, GroupView};
use crate::heap::{heap_from_group, Heap};
use crate::report::Limits;
use crate::table::{BinaryTable, Elem};
use crate::truss::{near_truss_from_ring, NearTruss, RingKind, Side, SkewBrace};

/// All groups of order at most 8 shipped with the crate.
pub fn corpus_groups() -> Vec<(String, GroupView)> {
    let mut out: Vec<(String, GroupView)> = (2..=8)
        .map(|n| (format!("z{n}"), group::cyclic(n)))
        .collect();
    out.push(("klein".into(), group::klein()));
    out.push(("s3".into(), group::symmetric_3()));
    out.push(("d4".into(), group::dihedral_4()));
    out.push(("q8".into(), group::quaternion()));
    out
}

/// Heaps of all corpus groups.
pub fn corpus_heaps() -> Vec<(String, Heap)> {
    corpus_groups()
        .into_iter()
        .map(|(name, g)| (format!("{name}_heap"), heap_from_group(&g)))
        .collect()
}

/// Multiplication mod n.
pub fn zn_mul(n: usize) -> BinaryTable {
    BinaryTable::from_fn(n, |x, y| (x * y) % n).expect("n >= 1")
}

/// Jacobson circle operation `x ∘ y = x + y + xy` mod n.
pub fn jacobson_mul(n: usize) -> BinaryTable {
    BinaryTable::from_fn(n, |x, y| (x + y + x * y) % n).expect("n >= 1")
}

/// The truss of the ring `Z_n`.
pub fn ring_truss(n: usize) -> NearTruss {
    near_truss_from_ring(&group::cyclic(n), &zn_mul(n), RingKind::Ring)
        .expect("Z_n is a ring")
}

/// Additive group and multiplication of the ring of upper-triangular 2x2
/// matrices over Z_2. Element `(a, b, c)` stands for rows `[a b; 0 c]` and is
/// indexed as `a*4 + b*2 + c`.
pub fn upper_triangular_ring() -> (GroupView, BinaryTable) {
    let decode = |x: usize| (x >> 2 & 1, x >> 1 & 1, x & 1);
    let add = BinaryTable::from_fn(8, |x, y| {
        let (a1, b1, c1) = decode(x);
        let (a2, b2, c2) = decode(y);
        ((a1 ^ a2) << 2) | ((b1 ^ b2) << 1) | (c1 ^ c2)
    })
    .expect("size 8");
    let mul = BinaryTable::from_fn(8, |x, y| {
        let (a1, b1, c1) = decode(x);
        let (a2, b2, c2) = decode(y);
        ((a1 & a2) << 2) | (((a1 & b2) ^ (b1 & c2)) << 1) | (c1 & c2)
    })
    .expect("size 8");
    (
        GroupView::from_table(add).expect("componentwise xor is a group"),
        mul,
    )
}

/// The 8-element non-commutative truss of upper-triangular 2x2 matrices
/// over Z_2.
pub fn upper_triangular_truss() -> NearTruss {
    let (add, mul) = upper_triangular_ring();
    near_truss_from_ring(&add, &mul, RingKind::Ring).expect("matrix ring")
}

/// The skew brace on 4 elements with additive group Z_4 and circle group
/// Klein: `a ∘ b = a + b` for even `a`, `a - b` for odd `a`.
pub fn brace_z4_klein() -> SkewBrace {
    let star = group::cyclic(4);
    let circ_table = BinaryTable::from_fn(4, |a, b| {
        if a % 2 == 0 {
            (a + b) % 4
        } else {
            (a + 4 - b) % 4
        }
    })
    .expect("size 4");
    let circ = GroupView::from_table(circ_table).expect("circle operation is a group");
    SkewBrace::new(star, circ).expect("compatibility holds")
}

/// A group together with its own multiplication is a two-sided near-truss
/// (a truss exactly when the group is abelian).
pub fn group_mul_near_truss(g: &GroupView) -> NearTruss {
    let heap = heap_from_group(g);
    NearTruss::new(
        heap.table().clone(),
        g.table().clone(),
        Side::Both,
        &Limits::covering(g.size()),
    )
    .expect("group multiplication distributes over its own bracket")
}

/// Left (or two-sided) near-trusses of size at most 8.
pub fn corpus_left_near_trusses() -> Vec<(String, NearTruss)> {
    let mut out: Vec<(String, NearTruss)> = [2usize, 3, 4, 6]
        .into_iter()
        .map(|n| (format!("z{n}_ring_truss"), ring_truss(n)))
        .collect();
    out.push(("ut2_z2_truss".into(), upper_triangular_truss()));
    out.push((
        "brace4_near_truss".into(),
        crate::truss::near_truss_from_skew_brace(&brace_z4_klein()).expect("valid brace"),
    ));
    out.push((
        "s3_group_near_truss".into(),
        group_mul_near_truss(&group::symmetric_3()),
    ));
    out
}

/// Trusses (abelian heap, both distributivity laws) of size at most 8.
pub fn corpus_trusses() -> Vec<(String, NearTruss)> {
    let mut out: Vec<(String, NearTruss)> = [2usize, 3, 4, 6]
        .into_iter()
        .map(|n| (format!("z{n}_ring_truss"), ring_truss(n)))
        .collect();
    out.push(("ut2_z2_truss".into(), upper_triangular_truss()));
    out.retain(|(_, t)| t.is_truss());
    out
}

/// Join table of the chain `0 < 1 < .. < n-1`.
pub fn chain_join(n: usize) -> BinaryTable {
    BinaryTable::from_fn(n, |x, y| x.max(y)).expect("n >= 1")
}

/// Join table of the diamond lattice: bottom 0, incomparable 1 and 2, top 3.
pub fn diamond_join() -> BinaryTable {
    BinaryTable::from_fn(4, |x, y| {
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
    .expect("size 4")
}

/// Element index of the matrix `[a b; 0 c]` in the upper-triangular corpus
/// ring.
pub fn ut_index(a: Elem, b: Elem, c: Elem) -> Elem {
    (a << 2) | (b << 1) | c
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_sizes() {
        let groups = corpus_groups();
        assert_eq!(groups.len(), 11);
        assert!(groups.iter().all(|(_, g)| g.size() <= 8));
    }

    #[test]
    fn upper_triangular_is_a_noncommutative_truss() {
        let t = upper_triangular_truss();
        assert_eq!(t.size(), 8);
        assert!(t.is_truss());
        assert!(!t.mul_table().is_commutative());
        // the multiplicative identity is [1 0; 0 1]
        let one = ut_index(1, 0, 1);
        assert!((0..8).all(|x| t.mul(one, x) == x && t.mul(x, one) == x));
    }

    #[test]
    fn corpus_trusses_are_trusses() {
        let trusses = corpus_trusses();
        assert_eq!(trusses.len(), 5);
        assert!(trusses.iter().all(|(_, t)| t.is_truss()));
    }

    #[test]
    fn left_near_truss_corpus_is_left_valid() {
        for (name, t) in corpus_left_near_trusses() {
            assert!(t.side().is_left(), "{name} is not left-sided");
            assert!(t.size() <= 8, "{name} exceeds desk scale");
        }
    }
}
