//! Operation tables over a finite carrier `{0, 1, .., n-1}`.
//!
//! Elements are plain indices. All tables are immutable after construction
//! and every entry is range-checked once, up front.

use crate::error::{Error, Result};

pub type Elem = usize;

fn check_entries(entries: &[Elem], size: usize, expected: usize) -> Result<()> {
    if size == 0 {
        return Err(Error::EmptyCarrier);
    }
    if entries.len() != expected {
        return Err(Error::EntryCountMismatch {
            expected,
            got: entries.len(),
        });
    }
    for (position, &value) in entries.iter().enumerate() {
        if value >= size {
            return Err(Error::EntryOutOfRange {
                value,
                position,
                size,
            });
        }
    }
    Ok(())
}

/// A ternary operation as a flat `n^3` lookup table; entry `(x*n + y)*n + z`
/// holds the value at `(x, y, z)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TernaryTable {
    size: usize,
    entries: Vec<Elem>,
}

impl TernaryTable {
    pub fn new(size: usize, entries: Vec<Elem>) -> Result<Self> {
        check_entries(&entries, size, size * size * size)?;
        Ok(TernaryTable { size, entries })
    }

    /// Tabulate `op` on a carrier of the given size.
    pub fn from_fn(size: usize, op: impl Fn(Elem, Elem, Elem) -> Elem) -> Result<Self> {
        if size == 0 {
            return Err(Error::EmptyCarrier);
        }
        let mut entries = Vec::with_capacity(size * size * size);
        for x in 0..size {
            for y in 0..size {
                for z in 0..size {
                    entries.push(op(x, y, z));
                }
            }
        }
        TernaryTable::new(size, entries)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn get(&self, x: Elem, y: Elem, z: Elem) -> Elem {
        self.entries[(x * self.size + y) * self.size + z]
    }

    pub fn entries(&self) -> &[Elem] {
        &self.entries
    }

    pub fn check_element(&self, element: Elem) -> Result<()> {
        if element < self.size {
            Ok(())
        } else {
            Err(Error::ElementOutOfRange {
                element,
                size: self.size,
            })
        }
    }
}

/// A binary operation as a flat `n^2` lookup table; row index is the left
/// argument.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryTable {
    size: usize,
    entries: Vec<Elem>,
}

impl BinaryTable {
    pub fn new(size: usize, entries: Vec<Elem>) -> Result<Self> {
        check_entries(&entries, size, size * size)?;
        Ok(BinaryTable { size, entries })
    }

    pub fn from_fn(size: usize, op: impl Fn(Elem, Elem) -> Elem) -> Result<Self> {
        if size == 0 {
            return Err(Error::EmptyCarrier);
        }
        let mut entries = Vec::with_capacity(size * size);
        for x in 0..size {
            for y in 0..size {
                entries.push(op(x, y));
            }
        }
        BinaryTable::new(size, entries)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn get(&self, x: Elem, y: Elem) -> Elem {
        self.entries[x * self.size + y]
    }

    pub fn entries(&self) -> &[Elem] {
        &self.entries
    }

    /// The same operation with swapped arguments.
    pub fn opposite(&self) -> BinaryTable {
        BinaryTable::from_fn(self.size, |x, y| self.get(y, x)).expect("valid table")
    }

    pub fn is_associative(&self) -> bool {
        crate::scan::holds_on_all::<3, _>(self.size, |&[x, y, z]| {
            self.get(self.get(x, y), z) == self.get(x, self.get(y, z))
        })
    }

    pub fn is_commutative(&self) -> bool {
        crate::scan::holds_on_all::<2, _>(self.size, |&[x, y]| self.get(x, y) == self.get(y, x))
    }

    pub fn is_idempotent(&self) -> bool {
        (0..self.size).all(|x| self.get(x, x) == x)
    }

    pub fn check_element(&self, element: Elem) -> Result<()> {
        if element < self.size {
            Ok(())
        } else {
            Err(Error::ElementOutOfRange {
                element,
                size: self.size,
            })
        }
    }
}

/// A self-map of the carrier.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Endomap {
    images: Vec<Elem>,
}

impl Endomap {
    pub fn new(size: usize, images: Vec<Elem>) -> Result<Self> {
        check_entries(&images, size, size)?;
        Ok(Endomap { images })
    }

    pub fn from_fn(size: usize, f: impl Fn(Elem) -> Elem) -> Result<Self> {
        Endomap::new(size, (0..size).map(f).collect())
    }

    pub fn identity(size: usize) -> Self {
        Endomap {
            images: (0..size).collect(),
        }
    }

    pub fn constant(size: usize, value: Elem) -> Result<Self> {
        Endomap::new(size, vec![value; size])
    }

    pub fn size(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, x: Elem) -> Elem {
        self.images[x]
    }

    pub fn images(&self) -> &[Elem] {
        &self.images
    }

    /// `self` after `other`: `x ↦ self(other(x))`.
    pub fn compose(&self, other: &Endomap) -> Endomap {
        Endomap {
            images: other.images.iter().map(|&x| self.images[x]).collect(),
        }
    }

    pub fn is_permutation(&self) -> bool {
        let mut seen = vec![false; self.images.len()];
        for &image in &self.images {
            if seen[image] {
                return false;
            }
            seen[image] = true;
        }
        true
    }

    pub fn inverse(&self) -> Option<Endomap> {
        let n = self.images.len();
        let mut inv = vec![usize::MAX; n];
        for (x, &image) in self.images.iter().enumerate() {
            if inv[image] != usize::MAX {
                return None;
            }
            inv[image] = x;
        }
        Some(Endomap { images: inv })
    }

    pub fn is_idempotent(&self) -> bool {
        self.images.iter().all(|&image| self.images[image] == image)
    }

    /// Sorted, deduplicated image set.
    pub fn image_set(&self) -> Vec<Elem> {
        let mut set: Vec<Elem> = self.images.clone();
        set.sort_unstable();
        set.dedup();
        set
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_empty_and_out_of_range() {
        assert_eq!(TernaryTable::new(0, vec![]), Err(Error::EmptyCarrier));
        assert!(matches!(
            BinaryTable::new(2, vec![0, 1, 2, 0]),
            Err(Error::EntryOutOfRange { value: 2, .. })
        ));
        assert!(matches!(
            TernaryTable::new(2, vec![0; 7]),
            Err(Error::EntryCountMismatch { expected: 8, got: 7 })
        ));
    }

    #[test]
    fn ternary_indexing() {
        let t = TernaryTable::from_fn(3, |x, y, z| (x + 2 * y + z) % 3).unwrap();
        assert_eq!(t.get(1, 2, 2), (1 + 4 + 2) % 3);
        assert_eq!(t.entries().len(), 27);
    }

    #[test]
    fn binary_properties() {
        let add = BinaryTable::from_fn(4, |x, y| (x + y) % 4).unwrap();
        assert!(add.is_associative());
        assert!(add.is_commutative());
        assert!(!add.is_idempotent());
        let max = BinaryTable::from_fn(3, |x, y| x.max(y)).unwrap();
        assert!(max.is_idempotent());
    }

    #[test]
    fn endomap_composition_and_inverse() {
        let f = Endomap::new(3, vec![1, 2, 0]).unwrap();
        let g = Endomap::new(3, vec![0, 0, 1]).unwrap();
        // f∘g applies g first
        assert_eq!(f.compose(&g).images(), &[1, 1, 2]);
        assert!(f.is_permutation());
        assert!(!g.is_permutation());
        assert_eq!(f.inverse().unwrap().images(), &[2, 0, 1]);
        assert_eq!(g.inverse(), None);
    }

    #[test]
    fn idempotent_detection() {
        assert!(Endomap::identity(5).is_idempotent());
        assert!(Endomap::constant(5, 2).unwrap().is_idempotent());
        assert!(!Endomap::new(2, vec![1, 0]).unwrap().is_idempotent());
    }
}
