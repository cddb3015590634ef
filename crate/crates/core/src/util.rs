//! Small shared helpers.

/// SplitMix64, the tiny deterministic generator behind every seeded search.
///
/// Kept in-tree so that perturbation logs and certificates reproduce
/// byte-identically regardless of external crate versions.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    /// Creates a generator from a seed; equal seeds yield equal streams.
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    /// Next raw 64-bit value.
    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform value in `0..bound` (bound must be nonzero).
    pub fn below(&mut self, bound: u64) -> u64 {
        self.next_u64() % bound
    }

    /// Signed value in `-bound..=bound`.
    pub fn signed(&mut self, bound: i64) -> i64 {
        let span = (2 * bound + 1) as u64;
        (self.below(span) as i64) - bound
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_stream() {
        let mut a = SplitMix64::new(7);
        let mut b = SplitMix64::new(7);
        for _ in 0..100 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
    }

    #[test]
    fn signed_stays_in_range() {
        let mut g = SplitMix64::new(1);
        for _ in 0..1000 {
            let v = g.signed(8);
            assert!((-8..=8).contains(&v));
        }
    }
}
