//! Dense bit matrices backing segment maps, relations and order views.

const WORD: usize = 64;

#[inline]
pub(crate) fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD)
}

/// Row-major matrix of bits with fixed row width.
#[derive(Clone, PartialEq, Eq, Hash)]
pub(crate) struct BitMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    words: Vec<u64>,
}

impl BitMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        let stride = words_for(cols);
        BitMatrix {
            rows,
            cols,
            stride,
            words: vec![0; rows * stride],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> bool {
        debug_assert!(row < self.rows && col < self.cols);
        self.words[row * self.stride + col / WORD] >> (col % WORD) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: bool) {
        debug_assert!(row < self.rows && col < self.cols);
        let word = &mut self.words[row * self.stride + col / WORD];
        let mask = 1u64 << (col % WORD);
        if value {
            *word |= mask;
        } else {
            *word &= !mask;
        }
    }

    #[inline]
    pub fn row(&self, row: usize) -> &[u64] {
        &self.words[row * self.stride..(row + 1) * self.stride]
    }

    #[inline]
    pub fn row_mut(&mut self, row: usize) -> &mut [u64] {
        &mut self.words[row * self.stride..(row + 1) * self.stride]
    }

    /// Copies row `src` into row `dst`.
    pub fn copy_row(&mut self, src: usize, dst: usize) {
        let s = self.stride;
        self.words.copy_within(src * s..(src + 1) * s, dst * s);
    }

    pub fn ones_in_row(&self, row: usize) -> Ones<'_> {
        Ones::new(self.row(row))
    }
}

impl std::fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("BitMatrix")
            .field("rows", &self.rows)
            .field("cols", &self.cols)
            .finish()
    }
}

/// Iterator over set bit positions of a word slice, ascending.
pub(crate) struct Ones<'a> {
    words: &'a [u64],
    index: usize,
    current: u64,
}

impl<'a> Ones<'a> {
    pub fn new(words: &'a [u64]) -> Self {
        Ones {
            words,
            index: 0,
            current: words.first().copied().unwrap_or(0),
        }
    }
}

impl Iterator for Ones<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let bit = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.index * WORD + bit);
            }
            self.index += 1;
            if self.index >= self.words.len() {
                return None;
            }
            self.current = self.words[self.index];
        }
    }
}

#[inline]
pub(crate) fn test_bit(words: &[u64], bit: usize) -> bool {
    words[bit / WORD] >> (bit % WORD) & 1 == 1
}

#[inline]
pub(crate) fn set_bit(words: &mut [u64], bit: usize) {
    words[bit / WORD] |= 1 << (bit % WORD);
}

#[inline]
pub(crate) fn clear_bit(words: &mut [u64], bit: usize) {
    words[bit / WORD] &= !(1 << (bit % WORD));
}

pub(crate) fn count_ones(words: &[u64]) -> usize {
    words.iter().map(|w| w.count_ones() as usize).sum()
}

/// True iff every bit of `a` is also set in `b`.
pub(crate) fn is_subset(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x & !y == 0)
}

/// Lowest bit set in `a` but not in `b`, if any.
pub(crate) fn first_difference(a: &[u64], b: &[u64]) -> Option<usize> {
    a.iter().zip(b).enumerate().find_map(|(i, (x, y))| {
        let m = x & !y;
        (m != 0).then(|| i * WORD + m.trailing_zeros() as usize)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_get_across_word_boundary() {
        let mut m = BitMatrix::new(3, 130);
        m.set(1, 0, true);
        m.set(1, 63, true);
        m.set(1, 64, true);
        m.set(2, 129, true);
        assert!(m.get(1, 63) && m.get(1, 64) && m.get(2, 129));
        assert!(!m.get(0, 0) && !m.get(1, 65));
        assert_eq!(m.ones_in_row(1).collect::<Vec<_>>(), vec![0, 63, 64]);
        m.set(1, 63, false);
        assert_eq!(count_ones(m.row(1)), 2);
        m.copy_row(2, 0);
        assert!(m.get(0, 129));
    }

    #[test]
    fn word_helpers() {
        let a = [0b0110u64, 0];
        let b = [0b1110u64, 1];
        assert!(is_subset(&a, &b));
        assert!(!is_subset(&b, &a));
        assert_eq!(first_difference(&b, &a), Some(3));
        assert_eq!(first_difference(&a, &b), None);
        assert_eq!(Ones::new(&[]).next(), None);
    }
}
