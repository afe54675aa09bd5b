//! SplitMix64: a tiny deterministic PRNG used to draw reproducible random
//! parameters for family members. Fixed constants mean a seed pins the exact
//! sample sequence across platforms and releases.

#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// A small integer parameter in [-3, 3].
    pub fn next_param(&mut self) -> i64 {
        (self.next_u64() % 7) as i64 - 3
    }
}
