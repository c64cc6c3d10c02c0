//! Dense vertex subsets over `0..n`.

use std::fmt;
use std::hash::{Hash, Hasher};

const WORD: usize = 64;

/// A subset of `0..n` stored as a bitset.
#[derive(Clone, PartialEq, Eq)]
pub struct VertexSet {
    n: usize,
    words: Vec<u64>,
}

impl VertexSet {
    pub fn empty(n: usize) -> Self {
        Self { n, words: vec![0; n.div_ceil(WORD)] }
    }

    pub fn full(n: usize) -> Self {
        let mut set = Self { n, words: vec![u64::MAX; n.div_ceil(WORD)] };
        set.clear_tail();
        set
    }

    /// Builds a set from vertex ids. Panics if an id is `>= n`.
    pub fn from_vertices<I: IntoIterator<Item = usize>>(n: usize, vertices: I) -> Self {
        let mut set = Self::empty(n);
        for v in vertices {
            set.insert(v);
        }
        set
    }

    /// Interprets bit `v` of `mask` as membership of `v`. Requires `n <= 64`.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        assert!(n <= WORD, "from_mask needs n <= 64");
        let mut set = Self::empty(n);
        if n > 0 {
            set.words[0] = mask;
            set.clear_tail();
        }
        set
    }

    /// The low 64 bits of the membership vector.
    pub fn to_mask(&self) -> u64 {
        self.words.first().copied().unwrap_or(0)
    }

    fn clear_tail(&mut self) {
        let rem = self.n % WORD;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    /// Size of the universe `0..n`.
    #[inline]
    pub fn universe(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        v < self.n && self.words[v / WORD] >> (v % WORD) & 1 == 1
    }

    /// Inserts `v`, returning `true` if it was absent.
    #[inline]
    pub fn insert(&mut self, v: usize) -> bool {
        assert!(v < self.n, "vertex {v} outside 0..{}", self.n);
        let (w, b) = (v / WORD, 1u64 << (v % WORD));
        let absent = self.words[w] & b == 0;
        self.words[w] |= b;
        absent
    }

    #[inline]
    pub fn remove(&mut self, v: usize) -> bool {
        if v >= self.n {
            return false;
        }
        let (w, b) = (v / WORD, 1u64 << (v % WORD));
        let present = self.words[w] & b != 0;
        self.words[w] &= !b;
        present
    }

    #[inline]
    pub fn set(&mut self, v: usize, member: bool) {
        if member {
            self.insert(v);
        } else {
            self.remove(v);
        }
    }

    /// Cardinality.
    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_full(&self) -> bool {
        self.len() == self.n
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.n == other.n && self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn union_with(&mut self, other: &VertexSet) {
        assert_eq!(self.n, other.n, "universe mismatch");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersection_len(&self, other: &VertexSet) -> usize {
        self.words.iter().zip(&other.words).map(|(a, b)| (a & b).count_ones() as usize).sum()
    }

    /// Members in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &word)| {
            let mut w = word;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let bit = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * WORD + bit)
            })
        })
    }

    /// Hexadecimal rendering of the membership vector read as the integer
    /// `sum(2^v)`, most significant digit first, zero-padded to `ceil(n/4)` digits.
    pub fn to_hex(&self) -> String {
        let digits = self.n.div_ceil(4).max(1);
        let mut out = String::with_capacity(digits);
        for d in (0..digits).rev() {
            let bit = d * 4;
            let word = self.words.get(bit / WORD).copied().unwrap_or(0);
            let nibble = (word >> (bit % WORD)) & 0xf;
            out.push(char::from_digit(nibble as u32, 16).unwrap());
        }
        out
    }

    /// 64-bit FNV-1a fingerprint of the membership words.
    pub fn fingerprint(&self) -> u64 {
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        for &w in &self.words {
            for byte in w.to_le_bytes() {
                h ^= u64::from(byte);
                h = h.wrapping_mul(0x0100_0000_01b3);
            }
        }
        h
    }
}

impl Hash for VertexSet {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.words.hash(state);
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}
