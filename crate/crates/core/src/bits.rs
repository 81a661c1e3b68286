//! Bit extraction helpers.

/// Returns the `bit`-th least significant bit of `value` (1-based), as 0 or 1.
///
/// `bit` must lie in `1..=64`.
#[inline(always)]
pub fn extract_bit(value: u64, bit: u32) -> u64 {
    debug_assert!((1..=64).contains(&bit), "bit index {bit} out of range");
    (value >> (bit - 1)) & 1
}

/// Number of bits needed to encode `value`, never less than 1.
#[inline]
pub fn bit_width(value: u64) -> u32 {
    (u64::BITS - value.leading_zeros()).max(1)
}

/// Number of bits needed to encode every value in `values`: the width of the
/// maximum, or 0 for an empty slice.
pub fn key_width(values: &[u64]) -> u32 {
    values.iter().copied().max().map_or(0, bit_width)
}

/// Keeps only the `bits` least significant bits of `value`. `bits >= 64`
/// leaves the value untouched.
#[inline]
pub fn low_bits(value: u64, bits: u32) -> u64 {
    if bits >= u64::BITS {
        value
    } else {
        value & ((1u64 << bits) - 1)
    }
}
