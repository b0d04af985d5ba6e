//! Finite groups as Cayley tables, plus the subgroup machinery the rest of
//! the crate leans on: subgroup closure and enumeration, normality,
//! commutator subgroups, endomorphisms and brute-force isomorphism search.

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::table::{BinaryTable, Elem, Endomap};

/// A group structure on `{0..n}`: Cayley table, identity and inverse table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupView {
    op: BinaryTable,
    identity: Elem,
    inverse: Vec<Elem>,
}

impl GroupView {
    /// Check the table is a group and locate identity and inverses.
    pub fn from_table(op: BinaryTable) -> Result<Self> {
        let n = op.size();
        if !op.is_associative() {
            let w = crate::scan::first_failure::<3, _>(n, |&[x, y, z]| {
                op.get(op.get(x, y), z) == op.get(x, op.get(y, z))
            })
            .expect("non-associative table has a witness");
            return Err(Error::invalid("group", "associativity", &w));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| op.get(e, x) == x && op.get(x, e) == x))
            .ok_or_else(|| Error::invalid("group", "identity", &[]))?;
        let mut inverse = Vec::with_capacity(n);
        for x in 0..n {
            let inv = (0..n)
                .find(|&y| op.get(x, y) == identity && op.get(y, x) == identity)
                .ok_or_else(|| Error::invalid("group", "inverse", &[x]))?;
            inverse.push(inv);
        }
        Ok(GroupView {
            op,
            identity,
            inverse,
        })
    }

    pub fn size(&self) -> usize {
        self.op.size()
    }

    #[inline]
    pub fn mul(&self, x: Elem, y: Elem) -> Elem {
        self.op.get(x, y)
    }

    #[inline]
    pub fn inv(&self, x: Elem) -> Elem {
        self.inverse[x]
    }

    pub fn identity(&self) -> Elem {
        self.identity
    }

    pub fn table(&self) -> &BinaryTable {
        &self.op
    }

    pub fn inverses(&self) -> &[Elem] {
        &self.inverse
    }

    pub fn is_abelian(&self) -> bool {
        self.op.is_commutative()
    }

    /// `x y x^{-1} y^{-1}`.
    pub fn commutator(&self, x: Elem, y: Elem) -> Elem {
        self.mul(self.mul(x, y), self.mul(self.inv(x), self.inv(y)))
    }

    /// Smallest subgroup containing `seed`, as a sorted element list.
    pub fn subgroup_closure(&self, seed: &[Elem]) -> Vec<Elem> {
        let n = self.size();
        let mut member = vec![false; n];
        member[self.identity] = true;
        let mut queue: Vec<Elem> = vec![self.identity];
        for &s in seed {
            if !member[s] {
                member[s] = true;
                queue.push(s);
            }
        }
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            let ix = self.inv(x);
            if !member[ix] {
                member[ix] = true;
                queue.push(ix);
            }
            for i in 0..queue.len() {
                let y = queue[i];
                for p in [self.mul(x, y), self.mul(y, x)] {
                    if !member[p] {
                        member[p] = true;
                        queue.push(p);
                    }
                }
            }
        }
        (0..n).filter(|&x| member[x]).collect()
    }

    pub fn is_subgroup(&self, members: &[Elem]) -> bool {
        if members.is_empty() {
            return false;
        }
        members.contains(&self.identity)
            && members.iter().all(|&x| {
                members.contains(&self.inv(x))
                    && members.iter().all(|&y| members.contains(&self.mul(x, y)))
            })
    }

    /// Closed under conjugation by every group element.
    pub fn is_normal_subgroup(&self, members: &[Elem]) -> bool {
        self.is_subgroup(members)
            && (0..self.size()).all(|g| {
                members
                    .iter()
                    .all(|&s| members.contains(&self.mul(self.mul(g, s), self.inv(g))))
            })
    }

    /// All subgroups, sorted by (size, elements). Breadth-first closure over
    /// one-generator extensions; avoids the 2^n subset scan.
    pub fn subgroups(&self) -> Vec<Vec<Elem>> {
        let mut found: std::collections::BTreeSet<Vec<Elem>> = std::collections::BTreeSet::new();
        let trivial = vec![self.identity];
        let mut queue = vec![trivial.clone()];
        found.insert(trivial);
        while let Some(current) = queue.pop() {
            for g in 0..self.size() {
                if current.binary_search(&g).is_ok() {
                    continue;
                }
                let mut seed = current.clone();
                seed.push(g);
                let next = self.subgroup_closure(&seed);
                if found.insert(next.clone()) {
                    queue.push(next);
                }
            }
        }
        let mut out: Vec<Vec<Elem>> = found.into_iter().collect();
        out.sort_by_key(|s| (s.len(), s.clone()));
        out
    }

    pub fn normal_subgroups(&self) -> Vec<Vec<Elem>> {
        self.subgroups()
            .into_iter()
            .filter(|s| self.is_normal_subgroup(s))
            .collect()
    }

    /// Normal closure of the commutators `{n m n^{-1} m^{-1}}`, `n` in `a`,
    /// `m` in `b`.
    pub fn commutator_subgroup(&self, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
        let mut gens: Vec<Elem> = Vec::new();
        for &n in a {
            for &m in b {
                gens.push(self.commutator(n, m));
            }
        }
        let mut current = self.subgroup_closure(&gens);
        loop {
            let mut extended = current.clone();
            for g in 0..self.size() {
                for &s in &current {
                    extended.push(self.mul(self.mul(g, s), self.inv(g)));
                }
            }
            let next = self.subgroup_closure(&extended);
            if next == current {
                return current;
            }
            current = next;
        }
    }

    /// Left coset `g · members`, sorted.
    pub fn left_coset(&self, g: Elem, members: &[Elem]) -> Vec<Elem> {
        let mut coset: Vec<Elem> = members.iter().map(|&s| self.mul(g, s)).collect();
        coset.sort_unstable();
        coset
    }

    /// All group endomorphisms. Elements are expressed as words in a greedy
    /// generating set, candidate images are enumerated per generator and each
    /// candidate map is verified on the full multiplication table.
    pub fn endomorphisms(&self) -> Vec<Endomap> {
        let n = self.size();
        let generators = self.generating_set();
        let words = self.words_over(&generators);
        let mut out = Vec::new();
        let mut images = vec![0usize; generators.len()];
        loop {
            if let Some(candidate) = self.map_from_generator_images(&generators, &words, &images) {
                if crate::scan::holds_on_all::<2, _>(n, |&[x, y]| {
                    candidate.apply(self.mul(x, y))
                        == self.mul(candidate.apply(x), candidate.apply(y))
                }) {
                    out.push(candidate);
                }
            }
            // odometer over generator images
            let mut pos = images.len();
            loop {
                if pos == 0 {
                    out.sort();
                    out.dedup();
                    return out;
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

    /// A small generating set found greedily.
    pub fn generating_set(&self) -> Vec<Elem> {
        let mut gens: Vec<Elem> = Vec::new();
        let mut span = self.subgroup_closure(&[]);
        while span.len() < self.size() {
            let g = (0..self.size())
                .find(|x| span.binary_search(x).is_err())
                .expect("span is proper");
            gens.push(g);
            span = self.subgroup_closure(&gens);
        }
        gens
    }

    /// Express every element as a word (sequence of generator indices),
    /// identity = empty word.
    fn words_over(&self, generators: &[Elem]) -> Vec<Vec<usize>> {
        let n = self.size();
        let mut words: Vec<Option<Vec<usize>>> = vec![None; n];
        words[self.identity] = Some(Vec::new());
        let mut frontier = vec![self.identity];
        while let Some(x) = frontier.pop() {
            let word = words[x].clone().expect("frontier is reached");
            for (gi, &g) in generators.iter().enumerate() {
                let y = self.mul(x, g);
                if words[y].is_none() {
                    let mut extended = word.clone();
                    extended.push(gi);
                    words[y] = Some(extended);
                    frontier.push(y);
                }
            }
        }
        words
            .into_iter()
            .map(|w| w.expect("generators span the group"))
            .collect()
    }

    fn map_from_generator_images(
        &self,
        _generators: &[Elem],
        words: &[Vec<usize>],
        images: &[Elem],
    ) -> Option<Endomap> {
        let n = self.size();
        let mut map = Vec::with_capacity(n);
        for word in words {
            let mut value = self.identity;
            for &gi in word {
                value = self.mul(value, images[gi]);
            }
            map.push(value);
        }
        Endomap::new(n, map).ok()
    }
}

/// Exhaustive isomorphism search between two groups; `None` if sizes differ
/// or no bijection works. The identity is pinned to cut the factorial down.
pub fn group_isomorphism(a: &GroupView, b: &GroupView) -> Option<Vec<Elem>> {
    let n = a.size();
    if n != b.size() {
        return None;
    }
    let rest_a: Vec<Elem> = (0..n).filter(|&x| x != a.identity()).collect();
    let rest_b: Vec<Elem> = (0..n).filter(|&x| x != b.identity()).collect();
    for perm in rest_b.iter().copied().permutations(rest_b.len()) {
        let mut map = vec![0usize; n];
        map[a.identity()] = b.identity();
        for (&x, &y) in rest_a.iter().zip(perm.iter()) {
            map[x] = y;
        }
        if crate::scan::holds_on_all::<2, _>(n, |&[x, y]| {
            map[a.mul(x, y)] == b.mul(map[x], map[y])
        }) {
            return Some(map);
        }
    }
    None
}

/// `Z_n` under addition.
pub fn cyclic(n: usize) -> GroupView {
    GroupView::from_table(BinaryTable::from_fn(n, |x, y| (x + y) % n).expect("n >= 1"))
        .expect("modular addition is a group")
}

/// Direct product; pairs `(x, y)` are indexed as `x * |b| + y`.
pub fn direct_product(a: &GroupView, b: &GroupView) -> GroupView {
    let (na, nb) = (a.size(), b.size());
    let op = BinaryTable::from_fn(na * nb, |p, q| {
        let (px, py) = (p / nb, p % nb);
        let (qx, qy) = (q / nb, q % nb);
        a.mul(px, qx) * nb + b.mul(py, qy)
    })
    .expect("sizes positive");
    GroupView::from_table(op).expect("product of groups is a group")
}

/// `Z_2 × Z_2`.
pub fn klein() -> GroupView {
    let z2 = cyclic(2);
    direct_product(&z2, &z2)
}

/// Group generated by permutations of `{0..points}`, elements sorted by
/// their image vectors.
pub fn permutation_group(points: usize, generators: &[Vec<Elem>]) -> GroupView {
    let mut perms: std::collections::BTreeSet<Vec<Elem>> = std::collections::BTreeSet::new();
    perms.insert((0..points).collect());
    for g in generators {
        perms.insert(g.clone());
    }
    loop {
        let snapshot: Vec<Vec<Elem>> = perms.iter().cloned().collect();
        let before = perms.len();
        for p in &snapshot {
            for q in &snapshot {
                perms.insert(q.iter().map(|&i| p[i]).collect());
            }
        }
        if perms.len() == before {
            break;
        }
    }
    let elements: Vec<Vec<Elem>> = perms.into_iter().collect();
    let index = |perm: &Vec<Elem>| {
        elements
            .binary_search(perm)
            .expect("closure contains all products")
    };
    let n = elements.len();
    let op = BinaryTable::from_fn(n, |x, y| {
        let composed: Vec<Elem> = elements[y].iter().map(|&i| elements[x][i]).collect();
        index(&composed)
    })
    .expect("closure non-empty");
    GroupView::from_table(op).expect("permutation composition is a group")
}

/// Symmetric group on 3 points (order 6).
pub fn symmetric_3() -> GroupView {
    permutation_group(3, &[vec![1, 0, 2], vec![1, 2, 0]])
}

/// Dihedral group of the square (order 8), as rotations and a reflection.
pub fn dihedral_4() -> GroupView {
    permutation_group(4, &[vec![1, 2, 3, 0], vec![3, 2, 1, 0]])
}

/// Quaternion group (order 8): 0..7 stand for 1, -1, i, -i, j, -j, k, -k.
pub fn quaternion() -> GroupView {
    // axis: 0 = scalar, 1 = i, 2 = j, 3 = k; element = (sign, axis)
    let decode = |x: usize| -> (bool, usize) { (x % 2 == 1, x / 2) };
    let encode = |negative: bool, axis: usize| -> usize { axis * 2 + usize::from(negative) };
    let unit_mul = |a: usize, b: usize| -> (bool, usize) {
        match (a, b) {
            (0, other) => (false, other),
            (other, 0) => (false, other),
            (x, y) if x == y => (true, 0),
            (1, 2) => (false, 3),
            (2, 1) => (true, 3),
            (2, 3) => (false, 1),
            (3, 2) => (true, 1),
            (3, 1) => (false, 2),
            (1, 3) => (true, 2),
            _ => unreachable!("axes are 0..4"),
        }
    };
    let op = BinaryTable::from_fn(8, |x, y| {
        let (sx, ax) = decode(x);
        let (sy, ay) = decode(y);
        let (flip, axis) = unit_mul(ax, ay);
        encode(sx ^ sy ^ flip, axis)
    })
    .expect("size 8");
    GroupView::from_table(op).expect("quaternion table is a group")
}
