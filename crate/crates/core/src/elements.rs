//! Insertion-ordered set of permutations stored in one flat buffer.

use std::hash::BuildHasher;

use hashbrown::{DefaultHashBuilder, HashTable};

use crate::perm::Perm;

pub struct ElementSet {
    degree: usize,
    data: Vec<u8>,
    table: HashTable<u32>,
    hasher: DefaultHashBuilder,
}

impl ElementSet {
    pub fn new(degree: usize) -> Self {
        ElementSet {
            degree,
            data: Vec::new(),
            table: HashTable::new(),
            hasher: DefaultHashBuilder::default(),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.data.len() / self.degree
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    #[inline]
    pub fn get(&self, index: usize) -> &[u8] {
        &self.data[index * self.degree..(index + 1) * self.degree]
    }

    pub fn perm(&self, index: usize) -> Perm {
        Perm::from_bytes(self.get(index))
    }

    pub fn index_of(&self, p: &[u8]) -> Option<usize> {
        debug_assert_eq!(p.len(), self.degree);
        let hash = self.hasher.hash_one(p);
        let d = self.degree;
        let data = &self.data;
        self.table
            .find(hash, |&i| &data[i as usize * d..(i as usize + 1) * d] == p)
            .map(|&i| i as usize)
    }

    pub fn contains(&self, p: &[u8]) -> bool {
        self.index_of(p).is_some()
    }

    /// Inserts `p` and returns `(index, newly_inserted)`.
    pub fn insert(&mut self, p: &[u8]) -> (usize, bool) {
        debug_assert_eq!(p.len(), self.degree);
        let hash = self.hasher.hash_one(p);
        let d = self.degree;
        let data = &self.data;
        if let Some(&i) = self
            .table
            .find(hash, |&i| &data[i as usize * d..(i as usize + 1) * d] == p)
        {
            return (i as usize, false);
        }
        let index = self.len();
        self.data.extend_from_slice(p);
        let (data, hasher) = (&self.data, &self.hasher);
        self.table.insert_unique(hash, index as u32, |&i| {
            hasher.hash_one(&data[i as usize * d..(i as usize + 1) * d])
        });
        (index, true)
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = &[u8]> + '_ {
        self.data.chunks_exact(self.degree)
    }
}

impl std::fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ElementSet")
            .field("degree", &self.degree)
            .field("len", &self.len())
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn insertion_order_and_lookup() {
        let mut s = ElementSet::new(3);
        assert_eq!(s.insert(&[0, 1, 2]), (0, true));
        assert_eq!(s.insert(&[1, 2, 0]), (1, true));
        assert_eq!(s.insert(&[0, 1, 2]), (0, false));
        assert_eq!(s.len(), 2);
        assert_eq!(s.index_of(&[1, 2, 0]), Some(1));
        assert_eq!(s.index_of(&[2, 1, 0]), None);
        assert_eq!(s.get(1), &[1, 2, 0]);
    }
}
