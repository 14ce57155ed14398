use std::cmp::Ordering;

use smallvec::SmallVec;

/// A word in the free monoid on the generators. Ordered by length, then
/// lexicographically by generator index.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Word(pub SmallVec<[u16; 8]>);

impl Word {
    pub fn empty() -> Self {
        Word(SmallVec::new())
    }

    pub fn letter(i: usize) -> Self {
        let mut w = SmallVec::new();
        w.push(i as u16);
        Word(w)
    }

    pub fn from_slice(s: &[u16]) -> Self {
        Word(SmallVec::from_slice(s))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[u16] {
        &self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut w = self.0.clone();
        w.extend_from_slice(&other.0);
        Word(w)
    }

    pub fn concat3(a: &Word, b: &Word, c: &Word) -> Word {
        let mut w = SmallVec::with_capacity(a.len() + b.len() + c.len());
        w.extend_from_slice(&a.0);
        w.extend_from_slice(&b.0);
        w.extend_from_slice(&c.0);
        Word(w)
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Index of all words of length at most `max_degree` over `base` letters,
/// in degree-then-lexicographic order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WordIndex {
    base: usize,
    max_degree: usize,
}

impl WordIndex {
    pub fn new(base: usize, max_degree: usize) -> Self {
        WordIndex { base, max_degree }
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    /// Number of words of length exactly `d`.
    pub fn count(&self, d: usize) -> usize {
        self.base.pow(d as u32)
    }

    /// Index of the first word of length `d`.
    pub fn offset(&self, d: usize) -> usize {
        (0..d).map(|e| self.count(e)).sum()
    }

    pub fn dim(&self) -> usize {
        self.offset(self.max_degree + 1)
    }

    pub fn index(&self, w: &Word) -> usize {
        debug_assert!(w.len() <= self.max_degree);
        let mut k = 0;
        for &l in w.letters() {
            k = k * self.base + l as usize;
        }
        self.offset(w.len()) + k
    }

    pub fn word(&self, index: usize) -> Word {
        let mut d = 0;
        let mut rest = index;
        while rest >= self.count(d) {
            rest -= self.count(d);
            d += 1;
        }
        let mut letters = vec![0u16; d];
        for slot in letters.iter_mut().rev() {
            *slot = (rest % self.base) as u16;
            rest /= self.base;
        }
        Word::from_slice(&letters)
    }

    pub fn degree_of(&self, index: usize) -> usize {
        self.word(index).len()
    }

    /// All words of length exactly `d`, in order.
    pub fn words_of_degree(&self, d: usize) -> impl Iterator<Item = Word> + '_ {
        let start = self.offset(d);
        (start..start + self.count(d)).map(move |i| self.word(i))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_round_trip() {
        let ix = WordIndex::new(3, 3);
        assert_eq!(ix.dim(), 1 + 3 + 9 + 27);
        for i in 0..ix.dim() {
            assert_eq!(ix.index(&ix.word(i)), i);
        }
        assert_eq!(ix.index(&Word::empty()), 0);
        assert_eq!(ix.index(&Word::from_slice(&[0, 0])), 4);
    }

    #[test]
    fn deglex_order_matches_index_order() {
        let ix = WordIndex::new(2, 3);
        for i in 1..ix.dim() {
            assert!(ix.word(i - 1) < ix.word(i));
        }
    }
}
