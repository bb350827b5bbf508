//! Fixed-width bitset with shifted-OR, the kernel of the sumset DPs.
//!
//! A `BitRow` of width `w` represents a subset of `[0, w)`. The layered
//! sumset dynamic programs only ever need three operations: set a bit,
//! OR another row shifted by a (possibly negative) offset, and iterate
//! the set bits. Shifts are word-level; bits pushed outside `[0, w)`
//! are dropped.

const WORD_BITS: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitRow {
    nbits: usize,
    words: Vec<u64>,
}

impl BitRow {
    pub fn new(nbits: usize) -> Self {
        let nwords = nbits.div_ceil(WORD_BITS);
        BitRow {
            nbits,
            words: vec![0; nwords],
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.nbits
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    #[inline]
    pub fn set(&mut self, i: usize) {
        debug_assert!(i < self.nbits);
        self.words[i / WORD_BITS] |= 1u64 << (i % WORD_BITS);
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.nbits);
        self.words[i / WORD_BITS] & (1u64 << (i % WORD_BITS)) != 0
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// `self |= src << shift` (negative shift moves bits down).
    pub fn or_shifted(&mut self, src: &BitRow, shift: i64) {
        debug_assert_eq!(self.nbits, src.nbits);
        if shift.unsigned_abs() as usize >= self.nbits {
            return;
        }
        let n = self.words.len();
        if shift >= 0 {
            let (woff, boff) = (shift as usize / WORD_BITS, shift as usize % WORD_BITS);
            for i in (woff..n).rev() {
                let lo = src.words[i - woff] << boff;
                let hi = if boff > 0 && i > woff {
                    src.words[i - woff - 1] >> (WORD_BITS - boff)
                } else {
                    0
                };
                self.words[i] |= lo | hi;
            }
        } else {
            let r = shift.unsigned_abs() as usize;
            let (woff, boff) = (r / WORD_BITS, r % WORD_BITS);
            for i in 0..n {
                let lo = if i + woff < n { src.words[i + woff] >> boff } else { 0 };
                let hi = if boff > 0 && i + woff + 1 < n {
                    src.words[i + woff + 1] << (WORD_BITS - boff)
                } else {
                    0
                };
                self.words[i] |= lo | hi;
            }
        }
        self.mask_tail();
    }

    /// `self |= self << shift`, without a scratch copy.
    ///
    /// For a positive shift the destination words are written from high to
    /// low so every read sees the pre-shift value; for a negative shift the
    /// order is reversed.
    pub fn or_shifted_in_place(&mut self, shift: i64) {
        if shift == 0 || shift.unsigned_abs() as usize >= self.nbits {
            return;
        }
        let n = self.words.len();
        if shift > 0 {
            let (woff, boff) = (shift as usize / WORD_BITS, shift as usize % WORD_BITS);
            for i in (woff..n).rev() {
                let lo = self.words[i - woff] << boff;
                let hi = if boff > 0 && i > woff {
                    self.words[i - woff - 1] >> (WORD_BITS - boff)
                } else {
                    0
                };
                self.words[i] |= lo | hi;
            }
        } else {
            let r = shift.unsigned_abs() as usize;
            let (woff, boff) = (r / WORD_BITS, r % WORD_BITS);
            for i in 0..n {
                let lo = if i + woff < n { self.words[i + woff] >> boff } else { 0 };
                let hi = if boff > 0 && i + woff + 1 < n {
                    self.words[i + woff + 1] << (WORD_BITS - boff)
                } else {
                    0
                };
                self.words[i] |= lo | hi;
            }
        }
        self.mask_tail();
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &word)| {
            let mut w = word;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * WORD_BITS + b)
                }
            })
        })
    }

    fn mask_tail(&mut self) {
        let used = self.nbits % WORD_BITS;
        if used != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << used) - 1;
            }
        }
    }
}
