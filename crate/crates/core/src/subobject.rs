//! Subheaps, normal subheaps and congruences, together with the bijection
//! between congruences and normal subheaps through a base point, the
//! pre-order on normal subheaps and coset tests in retract groups.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::heap::Heap;
use crate::report::Limits;
use crate::table::Elem;

/// A subset of the carrier, kept sorted and duplicate-free.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Subset {
    members: Vec<Elem>,
}

impl Subset {
    pub fn new(mut members: Vec<Elem>) -> Self {
        members.sort_unstable();
        members.dedup();
        Subset { members }
    }

    pub fn empty() -> Self {
        Subset { members: vec![] }
    }

    pub fn full(n: usize) -> Self {
        Subset {
            members: (0..n).collect(),
        }
    }

    /// Comma-separated element list, e.g. `0,2`. Empty input is the empty
    /// subset.
    pub fn parse(text: &str) -> Result<Self> {
        let trimmed = text.trim();
        if trimmed.is_empty() {
            return Ok(Subset::empty());
        }
        let mut members = Vec::new();
        for piece in trimmed.split(',') {
            let value: usize = piece
                .trim()
                .parse()
                .map_err(|_| Error::Unsupported(format!("bad subset element {piece:?}")))?;
            members.push(value);
        }
        Ok(Subset::new(members))
    }

    pub fn members(&self) -> &[Elem] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn check_range(&self, n: usize) -> Result<()> {
        match self.members.last() {
            Some(&max) if max >= n => Err(Error::ElementOutOfRange {
                element: max,
                size: n,
            }),
            _ => Ok(()),
        }
    }

    pub fn intersection(&self, other: &Subset) -> Subset {
        Subset::new(
            self.members
                .iter()
                .copied()
                .filter(|&x| other.contains(x))
                .collect(),
        )
    }

    pub fn is_subset_of(&self, other: &Subset) -> bool {
        self.members.iter().all(|&x| other.contains(x))
    }

    /// Membership mask for O(1) lookups in hot loops.
    pub fn mask(&self, n: usize) -> Vec<bool> {
        let mut mask = vec![false; n];
        for &x in &self.members {
            mask[x] = true;
        }
        mask
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for &x in &self.members {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
            first = false;
        }
        Ok(())
    }
}

/// A partition of `{0..n}` in canonical block-id form: ids appear in
/// first-occurrence order starting at 0.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Partition {
    block_id: Vec<usize>,
}

impl Partition {
    /// Canonicalize an arbitrary labelling.
    pub fn from_labels(labels: &[usize]) -> Self {
        let mut rename: Vec<Option<usize>> = vec![None; labels.len() + 1];
        let mut next = 0usize;
        let mut block_id = Vec::with_capacity(labels.len());
        for &label in labels {
            let slot = rename
                .get_mut(label)
                .expect("labels stay below n in canonical use");
            let id = *slot.get_or_insert_with(|| {
                let id = next;
                next += 1;
                id
            });
            block_id.push(id);
        }
        Partition { block_id }
    }

    pub fn equality(n: usize) -> Self {
        Partition {
            block_id: (0..n).collect(),
        }
    }

    pub fn single_block(n: usize) -> Self {
        Partition {
            block_id: vec![0; n],
        }
    }

    pub fn from_blocks(blocks: &[Vec<Elem>], n: usize) -> Result<Self> {
        let mut labels = vec![usize::MAX; n];
        for (id, block) in blocks.iter().enumerate() {
            for &x in block {
                if x >= n {
                    return Err(Error::ElementOutOfRange { element: x, size: n });
                }
                if labels[x] != usize::MAX {
                    return Err(Error::Unsupported(format!(
                        "element {x} appears in two blocks"
                    )));
                }
                labels[x] = id;
            }
        }
        if let Some(x) = labels.iter().position(|&l| l == usize::MAX) {
            return Err(Error::Unsupported(format!(
                "element {x} is missing from the partition"
            )));
        }
        Ok(Partition::from_labels(&labels))
    }

    /// Parse the block syntax `0,2|1,3`; every element of `{0..n}` must occur
    /// exactly once.
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        let mut blocks = Vec::new();
        for piece in text.trim().split('|') {
            blocks.push(Subset::parse(piece)?.members().to_vec());
        }
        Partition::from_blocks(&blocks, n)
    }

    pub fn size(&self) -> usize {
        self.block_id.len()
    }

    pub fn block_ids(&self) -> &[usize] {
        &self.block_id
    }

    pub fn num_blocks(&self) -> usize {
        self.block_id.iter().copied().max().map_or(0, |m| m + 1)
    }

    #[inline]
    pub fn same_class(&self, x: Elem, y: Elem) -> bool {
        self.block_id[x] == self.block_id[y]
    }

    pub fn class_of(&self, x: Elem) -> Subset {
        Subset::new(
            (0..self.size())
                .filter(|&y| self.same_class(x, y))
                .collect(),
        )
    }

    /// Blocks in block-id order; elements ascending within each block.
    pub fn blocks(&self) -> Vec<Vec<Elem>> {
        let mut blocks = vec![Vec::new(); self.num_blocks()];
        for (x, &id) in self.block_id.iter().enumerate() {
            blocks[id].push(x);
        }
        blocks
    }

    /// First element of each block, in block-id order.
    pub fn representatives(&self) -> Vec<Elem> {
        let mut reps = vec![usize::MAX; self.num_blocks()];
        for (x, &id) in self.block_id.iter().enumerate() {
            if reps[id] == usize::MAX {
                reps[id] = x;
            }
        }
        reps
    }

    /// Every block of `self` sits inside a block of `other`.
    pub fn refines(&self, other: &Partition) -> bool {
        debug_assert_eq!(self.size(), other.size());
        let mut image = vec![usize::MAX; self.num_blocks()];
        for (x, &id) in self.block_id.iter().enumerate() {
            let target = other.block_id[x];
            if image[id] == usize::MAX {
                image[id] = target;
            } else if image[id] != target {
                return false;
            }
        }
        true
    }

    /// Common refinement.
    pub fn meet(&self, other: &Partition) -> Partition {
        let n = self.size();
        let stride = other.num_blocks();
        let labels: Vec<usize> = (0..n)
            .map(|x| self.block_id[x] * stride + other.block_id[x])
            .collect();
        // labels may exceed n; relabel through pairs
        let mut seen: Vec<usize> = Vec::new();
        let mut out = Vec::with_capacity(n);
        for label in labels {
            let id = match seen.iter().position(|&s| s == label) {
                Some(i) => i,
                None => {
                    seen.push(label);
                    seen.len() - 1
                }
            };
            out.push(id);
        }
        Partition::from_labels(&out)
    }

    /// Join in the partition lattice: transitive closure of the union of the
    /// two relations.
    pub fn join(&self, other: &Partition) -> Partition {
        let n = self.size();
        let mut parent: Vec<usize> = (0..n).collect();
        fn root(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for part in [self, other] {
            for block in part.blocks() {
                for pair in block.windows(2) {
                    let (a, b) = (root(&mut parent, pair[0]), root(&mut parent, pair[1]));
                    if a != b {
                        parent[a.max(b)] = a.min(b);
                    }
                }
            }
        }
        let labels: Vec<usize> = (0..n).map(|x| root(&mut parent, x)).collect();
        Partition::from_labels(&labels)
    }

    /// All partitions of `{0..n}` as restricted-growth strings, in
    /// lexicographic order of the canonical form.
    pub fn enumerate_all(n: usize) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut rgs = vec![0usize; n];
        loop {
            out.push(Partition {
                block_id: rgs.clone(),
            });
            // next restricted-growth string
            let mut pos = n;
            loop {
                if pos <= 1 {
                    return out;
                }
                pos -= 1;
                let cap = rgs[..pos].iter().copied().max().unwrap_or(0) + 1;
                if rgs[pos] < cap {
                    rgs[pos] += 1;
                    for slot in rgs.iter_mut().skip(pos + 1) {
                        *slot = 0;
                    }
                    break;
                }
                rgs[pos] = 0;
            }
        }
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, block) in self.blocks().iter().enumerate() {
            if i > 0 {
                write!(f, "|")?;
            }
            for (j, x) in block.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{x}")?;
            }
        }
        Ok(())
    }
}

/// A finite partial order with opaque node labels.
#[derive(Debug, Clone)]
pub struct PosetView {
    pub nodes: Vec<String>,
    pub leq: Vec<Vec<bool>>,
}

impl PosetView {
    pub fn is_partial_order(&self) -> bool {
        let k = self.nodes.len();
        let refl = (0..k).all(|i| self.leq[i][i]);
        let antisym = (0..k).all(|i| (0..k).all(|j| i == j || !(self.leq[i][j] && self.leq[j][i])));
        let trans = (0..k).all(|i| {
            (0..k).all(|j| {
                (0..k).all(|l| !(self.leq[i][j] && self.leq[j][l]) || self.leq[i][l])
            })
        });
        refl && antisym && trans
    }
}

/// First bracket of members that escapes the subset, if any.
pub fn subheap_violation(heap: &Heap, s: &Subset) -> Option<(Elem, Elem, Elem)> {
    for &x in s.members() {
        for &y in s.members() {
            for &z in s.members() {
                if !s.contains(heap.get(x, y, z)) {
                    return Some((x, y, z));
                }
            }
        }
    }
    None
}

/// Closed under the ternary operation; the empty subset counts.
pub fn is_subheap(heap: &Heap, s: &Subset) -> bool {
    subheap_violation(heap, s).is_none()
}

/// Smallest subheap containing `seed`.
pub fn subheap_closure(heap: &Heap, seed: &[Elem]) -> Subset {
    let n = heap.size();
    let mut member = vec![false; n];
    let mut queue: Vec<Elem> = Vec::new();
    for &s in seed {
        if !member[s] {
            member[s] = true;
            queue.push(s);
        }
    }
    loop {
        let snapshot = queue.clone();
        let before = queue.len();
        for &x in &snapshot {
            for &y in &snapshot {
                for &z in &snapshot {
                    let v = heap.get(x, y, z);
                    if !member[v] {
                        member[v] = true;
                        queue.push(v);
                    }
                }
            }
        }
        if queue.len() == before {
            break;
        }
    }
    Subset::new(queue)
}

/// The three equivalent normality conditions, evaluated independently, plus
/// the retract-group criterion (normal subgroup of `(X, b_e)` for every
/// member `e`). All four must agree on subheaps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalityReport {
    pub is_subheap: bool,
    /// some e in S works for all x, s
    pub cond_a: bool,
    /// every e in S works
    pub cond_b: bool,
    /// [[x,e,s],x,e] stays in S
    pub cond_c: bool,
    /// S is a normal subgroup of every retract through its members
    pub retract_criterion: bool,
}

impl NormalityReport {
    pub fn is_normal(&self) -> bool {
        self.is_subheap && self.cond_c
    }

    pub fn conditions_agree(&self) -> bool {
        self.cond_a == self.cond_b && self.cond_b == self.cond_c && self.cond_c == self.retract_criterion
    }
}

/// Cheap normality test: non-empty subheap closed under the exchange
/// condition `[[x,e,s],x,e] in S`. Equivalent to the full report's verdict
/// but avoids building retract groups, which matters inside enumerations
/// over large carriers.
pub fn is_normal_quick(heap: &Heap, s: &Subset) -> bool {
    if s.is_empty() || !is_subheap(heap, s) {
        return false;
    }
    let n = heap.size();
    let mask = s.mask(n);
    (0..n).all(|x| {
        s.members().iter().all(|&e| {
            s.members()
                .iter()
                .all(|&sm| mask[heap.get(heap.get(x, e, sm), x, e)])
        })
    })
}

pub fn is_normal_subheap(heap: &Heap, s: &Subset) -> NormalityReport {
    let sub = is_subheap(heap, s);
    if s.is_empty() || !sub {
        return NormalityReport {
            is_subheap: sub,
            cond_a: false,
            cond_b: false,
            cond_c: false,
            retract_criterion: false,
        };
    }
    let n = heap.size();
    let members = s.members();
    let exchanges = |e: Elem| -> bool {
        (0..n).all(|x| {
            members.iter().all(|&sm| {
                let lhs = heap.get(x, e, sm);
                members.iter().any(|&t| lhs == heap.get(t, e, x))
            })
        })
    };
    let cond_a = members.iter().any(|&e| exchanges(e));
    let cond_b = members.iter().all(|&e| exchanges(e));
    let cond_c = (0..n).all(|x| {
        members.iter().all(|&e| {
            members
                .iter()
                .all(|&sm| s.contains(heap.get(heap.get(x, e, sm), x, e)))
        })
    });
    let retract_criterion = members.iter().all(|&e| {
        let group = heap.retract_group(e).expect("member in range");
        group.is_normal_subgroup(members)
    });
    NormalityReport {
        is_subheap: sub,
        cond_a,
        cond_b,
        cond_c,
        retract_criterion,
    }
}

/// All subheaps (including the empty one) in lexicographic order of their
/// member lists; with `normal_only` the empty subheap is dropped and the
/// normality filter applied. The returned list is checked to be closed under
/// pairwise intersection.
pub fn enumerate_subheaps(heap: &Heap, normal_only: bool, limits: &Limits) -> Result<Vec<Subset>> {
    let n = heap.size();
    limits.check("subheap enumeration", n)?;
    let mut all: BTreeSet<Subset> = BTreeSet::new();
    if n <= 12 {
        for mask in 0u32..(1u32 << n) {
            let members: Vec<Elem> = (0..n).filter(|&x| mask & (1 << x) != 0).collect();
            let candidate = Subset::new(members);
            if is_subheap(heap, &candidate) {
                all.insert(candidate);
            }
        }
    } else {
        // closure-based enumeration: extend each found subheap by one element
        all.insert(Subset::empty());
        let mut queue: Vec<Subset> = (0..n)
            .map(|x| subheap_closure(heap, &[x]))
            .collect();
        for s in &queue {
            all.insert(s.clone());
        }
        while let Some(current) = queue.pop() {
            for g in 0..n {
                if current.contains(g) {
                    continue;
                }
                let mut seed = current.members().to_vec();
                seed.push(g);
                let next = subheap_closure(heap, &seed);
                if all.insert(next.clone()) {
                    queue.push(next);
                }
            }
        }
    }
    let list: Vec<Subset> = all.into_iter().collect();
    for a in &list {
        for b in &list {
            let meet = a.intersection(b);
            assert!(
                list.binary_search(&meet).is_ok() || list.contains(&meet),
                "subheaps must be intersection-closed"
            );
        }
    }
    let mut out: Vec<Subset> = if normal_only {
        list.into_iter()
            .filter(|s| !s.is_empty() && is_normal_subheap(heap, s).is_normal())
            .collect()
    } else {
        list
    };
    out.sort_by(|a, b| a.members().cmp(b.members()));
    Ok(out)
}

/// One-variable-at-a-time congruence test for a heap.
pub fn is_heap_congruence(heap: &Heap, part: &Partition) -> bool {
    heap_congruence_violation(heap, part).is_none()
}

/// Substituting one argument within its class must not move the bracket out
/// of its class; by transitivity it is enough to compare against the class
/// representative.
pub fn heap_congruence_violation(heap: &Heap, part: &Partition) -> Option<(Elem, Elem)> {
    let n = heap.size();
    if part.size() != n {
        return Some((0, 0));
    }
    let reps = part.representatives();
    for x in 0..n {
        let r = reps[part.block_ids()[x]];
        if r == x {
            continue;
        }
        for y in 0..n {
            for z in 0..n {
                if !part.same_class(heap.get(x, y, z), heap.get(r, y, z))
                    || !part.same_class(heap.get(y, x, z), heap.get(y, r, z))
                    || !part.same_class(heap.get(y, z, x), heap.get(y, z, r))
                {
                    return Some((x, r));
                }
            }
        }
    }
    None
}

/// The congruence `x ~ y iff [x, y, s] lands in S for some s in S` of a
/// normal subheap. The relation is rebuilt from its definition, checked to be
/// an equivalence and a heap congruence, and the class of every member of `S`
/// is checked to be `S` itself.
pub fn congruence_of_normal(heap: &Heap, s: &Subset) -> Result<Partition> {
    s.check_range(heap.size())?;
    if !is_normal_quick(heap, s) {
        return Err(Error::NotNormal);
    }
    let n = heap.size();
    let mask = s.mask(n);
    let related = |x: Elem, y: Elem| -> bool {
        s.members().iter().any(|&sm| mask[heap.get(x, y, sm)])
    };
    let mut labels = vec![usize::MAX; n];
    let mut next = 0usize;
    for x in 0..n {
        if labels[x] != usize::MAX {
            continue;
        }
        labels[x] = next;
        for y in (x + 1)..n {
            if labels[y] == usize::MAX && related(x, y) {
                labels[y] = next;
            }
        }
        next += 1;
    }
    // the defining relation must agree with the computed classes exactly
    for x in 0..n {
        for y in 0..n {
            if related(x, y) != (labels[x] == labels[y]) {
                return Err(Error::NotACongruence { x, y });
            }
        }
    }
    let part = Partition::from_labels(&labels);
    if let Some((x, y)) = heap_congruence_violation(heap, &part) {
        return Err(Error::NotACongruence { x, y });
    }
    for &sm in s.members() {
        if part.class_of(sm) != *s {
            return Err(Error::NotACongruence { x: sm, y: sm });
        }
    }
    Ok(part)
}

/// Class of `e` under a congruence, after checking the partition really is
/// one.
pub fn normal_of_congruence(heap: &Heap, part: &Partition, e: Elem) -> Result<Subset> {
    heap.table().check_element(e)?;
    if let Some((x, y)) = heap_congruence_violation(heap, part) {
        return Err(Error::NotACongruence { x, y });
    }
    Ok(part.class_of(e))
}

/// All congruences of a heap, via normal subgroups of the retract at base 0.
/// For carriers of size at most 6 the result is cross-checked against the
/// brute-force scan over all partitions.
pub fn enumerate_congruences(heap: &Heap, limits: &Limits) -> Result<Vec<Partition>> {
    let n = heap.size();
    limits.check("congruence enumeration", n)?;
    let base = 0;
    let group = heap.retract_group(base)?;
    let mut out: Vec<Partition> = Vec::new();
    for normal in group.normal_subgroups() {
        let part = congruence_of_normal(heap, &Subset::new(normal))?;
        out.push(part);
    }
    out.sort();
    out.dedup();
    if n <= 6 {
        let by_scan = enumerate_congruences_by_partition_scan(heap);
        assert_eq!(
            out, by_scan,
            "normal-subheap route must agree with the all-partitions scan"
        );
    }
    Ok(out)
}

/// Brute-force oracle: test every partition of the carrier.
pub fn enumerate_congruences_by_partition_scan(heap: &Heap) -> Vec<Partition> {
    let mut out: Vec<Partition> = Partition::enumerate_all(heap.size())
        .into_iter()
        .filter(|p| is_heap_congruence(heap, p))
        .collect();
    out.sort();
    out
}

/// The pre-order on normal subheaps: `M ⪯ N` when every witnessed relation
/// step of `M` is matched by one of `N`. Evaluated by the literal quantifier
/// form.
pub fn normal_preorder(heap: &Heap, m: &Subset, n_sub: &Subset) -> Result<bool> {
    for s in [m, n_sub] {
        s.check_range(heap.size())?;
        if !is_normal_quick(heap, s) {
            return Err(Error::NotNormal);
        }
    }
    let n = heap.size();
    let m_mask = m.mask(n);
    let n_mask = n_sub.mask(n);
    for x in 0..n {
        for y in 0..n {
            let in_m = m.members().iter().any(|&s| m_mask[heap.get(x, y, s)]);
            if !in_m {
                continue;
            }
            let in_n = n_sub.members().iter().any(|&t| n_mask[heap.get(x, y, t)]);
            if !in_n {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Quotient of the normal-subheap pre-order, checked to be order-isomorphic
/// to the congruence poset under refinement.
pub fn quotient_poset(heap: &Heap, limits: &Limits) -> Result<PosetView> {
    let normals = enumerate_subheaps(heap, true, limits)?;
    let k = normals.len();
    let mut pre = vec![vec![false; k]; k];
    for i in 0..k {
        for j in 0..k {
            pre[i][j] = normal_preorder(heap, &normals[i], &normals[j])?;
        }
    }
    // group into equivalence classes of the pre-order
    let mut class_of = vec![usize::MAX; k];
    let mut class_reps: Vec<usize> = Vec::new();
    for i in 0..k {
        if class_of[i] != usize::MAX {
            continue;
        }
        let id = class_reps.len();
        class_reps.push(i);
        class_of[i] = id;
        for j in (i + 1)..k {
            if pre[i][j] && pre[j][i] {
                class_of[j] = id;
            }
        }
    }
    let m = class_reps.len();
    let mut leq = vec![vec![false; m]; m];
    for (a, &i) in class_reps.iter().enumerate() {
        for (b, &j) in class_reps.iter().enumerate() {
            leq[a][b] = pre[i][j];
        }
    }
    let nodes: Vec<String> = class_reps
        .iter()
        .map(|&i| {
            let mut members: Vec<String> = (0..k)
                .filter(|&j| class_of[j] == class_of[i])
                .map(|j| format!("{{{}}}", normals[j]))
                .collect();
            members.sort();
            members.join("~")
        })
        .collect();
    let poset = PosetView { nodes, leq };
    assert!(poset.is_partial_order(), "quotient of a pre-order is a poset");

    // order isomorphism onto the congruence poset, class by class
    let congruences = enumerate_congruences(heap, limits)?;
    assert_eq!(
        poset.nodes.len(),
        congruences.len(),
        "one pre-order class per congruence"
    );
    let image: Vec<Partition> = class_reps
        .iter()
        .map(|&i| congruence_of_normal(heap, &normals[i]).expect("normal subheap"))
        .collect();
    let mut sorted = image.clone();
    sorted.sort();
    assert_eq!(sorted, congruences, "classes map onto all congruences");
    for a in 0..m {
        for b in 0..m {
            assert_eq!(
                poset.leq[a][b],
                image[a].refines(&image[b]),
                "pre-order must match congruence refinement"
            );
        }
    }
    Ok(poset)
}

/// Whether `y ·_x N` and `z ·_x N` coincide in the retract group at `x`;
/// `x` must belong to the normal subheap. Cross-checked against the
/// congruence of `N`.
pub fn same_coset(heap: &Heap, x: Elem, n_sub: &Subset, y: Elem, z: Elem) -> Result<bool> {
    n_sub.check_range(heap.size())?;
    heap.table().check_element(y)?;
    heap.table().check_element(z)?;
    if !n_sub.contains(x) {
        return Err(Error::BaseNotInSubset { element: x });
    }
    if !is_normal_quick(heap, n_sub) {
        return Err(Error::NotNormal);
    }
    let group = heap.retract_group(x)?;
    let coset_equal = group.left_coset(y, n_sub.members()) == group.left_coset(z, n_sub.members());
    let congruence = congruence_of_normal(heap, n_sub)?;
    assert_eq!(
        coset_equal,
        congruence.same_class(y, z),
        "coset equality must match the congruence"
    );
    Ok(coset_equal)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group;
    use crate::heap::heap_from_group;

    fn z4_heap() -> Heap {
        heap_from_group(&group::cyclic(4))
    }

    fn s3_heap() -> Heap {
        heap_from_group(&group::symmetric_3())
    }

    #[test]
    fn subset_parse_and_display() {
        let s = Subset::parse("2,0").unwrap();
        assert_eq!(s.to_string(), "0,2");
        assert!(Subset::parse("").unwrap().is_empty());
        assert!(Subset::parse("a").is_err());
    }

    #[test]
    fn partition_parse_roundtrip_and_canonical_form() {
        let p = Partition::parse("1,3|0,2", 4).unwrap();
        assert_eq!(p.to_string(), "0,2|1,3");
        assert_eq!(p.block_ids(), &[0, 1, 0, 1]);
        assert!(Partition::parse("0|1", 3).is_err());
        assert!(Partition::parse("0,1|1,2", 3).is_err());
    }

    #[test]
    fn partition_lattice_operations() {
        let a = Partition::parse("0,1|2,3", 4).unwrap();
        let b = Partition::parse("0,2|1,3", 4).unwrap();
        assert_eq!(a.meet(&b), Partition::equality(4));
        assert_eq!(a.join(&b), Partition::single_block(4));
        assert!(Partition::equality(4).refines(&a));
        assert!(a.refines(&Partition::single_block(4)));
        assert!(!a.refines(&b));
    }

    #[test]
    fn bell_numbers() {
        assert_eq!(Partition::enumerate_all(3).len(), 5);
        assert_eq!(Partition::enumerate_all(5).len(), 52);
        assert_eq!(Partition::enumerate_all(6).len(), 203);
    }

    #[test]
    fn z4_subheap_facts() {
        let heap = z4_heap();
        assert!(is_subheap(&heap, &Subset::parse("0,2").unwrap()));
        let bad = Subset::parse("0,1").unwrap();
        assert!(!is_subheap(&heap, &bad));
        assert_eq!(subheap_violation(&heap, &bad), Some((0, 1, 0)));
        assert_eq!(heap.get(0, 1, 0), 3);
        assert!(is_subheap(&heap, &Subset::empty()));
    }

    #[test]
    fn z4_subheap_enumeration() {
        let heap = z4_heap();
        let all = enumerate_subheaps(&heap, false, &Limits::default()).unwrap();
        assert_eq!(all.len(), 8);
        let normal = enumerate_subheaps(&heap, true, &Limits::default()).unwrap();
        assert_eq!(normal.len(), 7);
    }

    #[test]
    fn closure_route_matches_bitmask_route() {
        // force the closure path by keeping n <= 12 in the bitmask run and
        // comparing against subheap_closure seeds
        let heap = s3_heap();
        let all = enumerate_subheaps(&heap, false, &Limits::default()).unwrap();
        assert_eq!(all.len(), 19); // cosets of the six subgroups, plus the empty set
        for s in &all {
            if !s.is_empty() {
                assert_eq!(subheap_closure(&heap, s.members()), *s);
            }
        }
    }

    #[test]
    fn normality_in_abelian_and_nonabelian_heaps() {
        let heap = z4_heap();
        let report = is_normal_subheap(&heap, &Subset::parse("1,3").unwrap());
        assert!(report.is_normal());
        assert!(report.conditions_agree());

        let singleton = is_normal_subheap(&heap, &Subset::parse("2").unwrap());
        assert!(singleton.is_normal());

        // a coset of a non-normal subgroup of S3
        let s3 = s3_heap();
        let non_normal = enumerate_subheaps(&s3, false, &Limits::default())
            .unwrap()
            .into_iter()
            .find(|s| s.len() == 2 && !is_normal_subheap(&s3, s).is_normal())
            .expect("S3 heap has non-normal 2-element subheaps");
        let report = is_normal_subheap(&s3, &non_normal);
        assert!(!report.is_normal());
        assert!(report.conditions_agree());

        let empty = is_normal_subheap(&heap, &Subset::empty());
        assert!(!empty.is_normal());
    }

    #[test]
    fn congruence_of_normal_z4() {
        let heap = z4_heap();
        let p1 = congruence_of_normal(&heap, &Subset::parse("0,2").unwrap()).unwrap();
        assert_eq!(p1.to_string(), "0,2|1,3");
        let p2 = congruence_of_normal(&heap, &Subset::parse("1,3").unwrap()).unwrap();
        assert_eq!(p1, p2);
        let full = congruence_of_normal(&heap, &Subset::full(4)).unwrap();
        assert_eq!(full, Partition::single_block(4));
        assert!(congruence_of_normal(&heap, &Subset::parse("0,1").unwrap()).is_err());
    }

    #[test]
    fn normal_of_congruence_round_trips() {
        let heap = z4_heap();
        let part = Partition::parse("0,2|1,3", 4).unwrap();
        let s = normal_of_congruence(&heap, &part, 1).unwrap();
        assert_eq!(s.to_string(), "1,3");
        assert_eq!(congruence_of_normal(&heap, &s).unwrap(), part);
        assert_eq!(
            normal_of_congruence(&heap, &Partition::equality(4), 2)
                .unwrap()
                .to_string(),
            "2"
        );
        assert_eq!(
            normal_of_congruence(&heap, &Partition::single_block(4), 2).unwrap(),
            Subset::full(4)
        );
        let not_congruence = Partition::parse("0,1|2,3", 4).unwrap();
        assert!(normal_of_congruence(&heap, &not_congruence, 0).is_err());
    }

    #[test]
    fn congruence_counts() {
        assert_eq!(
            enumerate_congruences(&z4_heap(), &Limits::default())
                .unwrap()
                .len(),
            3
        );
        assert_eq!(
            enumerate_congruences(&s3_heap(), &Limits::default())
                .unwrap()
                .len(),
            3
        );
        let singleton = Heap::from_fn(1, |_, _, _| 0).unwrap();
        assert_eq!(
            enumerate_congruences(&singleton, &Limits::default())
                .unwrap()
                .len(),
            1
        );
    }

    #[test]
    fn preorder_identifies_equivalent_normals() {
        let heap = z4_heap();
        let m = Subset::parse("0,2").unwrap();
        let n = Subset::parse("1,3").unwrap();
        assert!(normal_preorder(&heap, &m, &n).unwrap());
        assert!(normal_preorder(&heap, &n, &m).unwrap());
        assert!(normal_preorder(&heap, &m, &m).unwrap());
        let singleton = Subset::parse("0").unwrap();
        assert!(normal_preorder(&heap, &singleton, &m).unwrap());
        assert!(!normal_preorder(&heap, &m, &singleton).unwrap());
    }

    #[test]
    fn z4_quotient_poset_is_a_chain_of_three() {
        let poset = quotient_poset(&z4_heap(), &Limits::default()).unwrap();
        assert_eq!(poset.nodes.len(), 3);
        let comparable = (0..3)
            .all(|i| (0..3).all(|j| poset.leq[i][j] || poset.leq[j][i]));
        assert!(comparable, "expected a chain");
    }

    #[test]
    fn coset_test_in_z4() {
        let heap = z4_heap();
        let n = Subset::parse("0,2").unwrap();
        assert!(same_coset(&heap, 0, &n, 1, 3).unwrap());
        assert!(!same_coset(&heap, 0, &n, 1, 2).unwrap());
        assert!(same_coset(&heap, 0, &n, 3, 3).unwrap());
        assert!(same_coset(&heap, 1, &n, 0, 0).is_err()); // 1 not in N
    }
}
