//! Small bitmask helpers shared by every module.

/// Iterates over the set bit positions of `mask`, lowest first.
pub fn ones(mut mask: u64) -> impl Iterator<Item = u32> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let b = mask.trailing_zeros();
            mask &= mask - 1;
            Some(b)
        }
    })
}

/// Iterates over every submask of `mask`, from `mask` itself down to 0.
pub fn submasks(mask: u64) -> impl Iterator<Item = u64> {
    let mut next = Some(mask);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 { None } else { Some((cur - 1) & mask) };
        Some(cur)
    })
}

#[inline]
pub fn is_subset(a: u64, b: u64) -> bool {
    a & !b == 0
}

#[inline]
pub fn popcount(a: u64) -> usize {
    a.count_ones() as usize
}

/// Dense re-indexing of the bits of a fixed support mask, so that tables can
/// be indexed by `0..2^k` instead of by sparse 64-bit masks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Compressor {
    positions: Vec<u32>,
}

impl Compressor {
    pub fn new(support: u64) -> Self {
        Compressor {
            positions: ones(support).collect(),
        }
    }

    pub fn width(&self) -> usize {
        self.positions.len()
    }

    pub fn table_len(&self) -> usize {
        1usize << self.positions.len()
    }

    pub fn compress(&self, mask: u64) -> usize {
        let mut out = 0usize;
        for (i, &p) in self.positions.iter().enumerate() {
            if mask >> p & 1 == 1 {
                out |= 1 << i;
            }
        }
        out
    }

    pub fn expand(&self, idx: usize) -> u64 {
        let mut out = 0u64;
        for (i, &p) in self.positions.iter().enumerate() {
            if idx >> i & 1 == 1 {
                out |= 1 << p;
            }
        }
        out
    }

    pub fn position(&self, bit: u32) -> Option<usize> {
        self.positions.iter().position(|&p| p == bit)
    }

    pub fn bit(&self, position: usize) -> u32 {
        self.positions[position]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn submasks_are_complete() {
        let m = 0b1011;
        let mut subs: Vec<u64> = submasks(m).collect();
        subs.sort();
        assert_eq!(subs, vec![0, 1, 2, 3, 8, 9, 10, 11]);
        assert_eq!(submasks(0).collect::<Vec<_>>(), vec![0]);
    }

    #[test]
    fn compressor_round_trips() {
        let c = Compressor::new(0b1010_0110);
        assert_eq!(c.width(), 4);
        for idx in 0..c.table_len() {
            assert_eq!(c.compress(c.expand(idx)), idx);
        }
        assert_eq!(c.position(5), Some(2));
        assert_eq!(c.position(0), None);
    }
}
