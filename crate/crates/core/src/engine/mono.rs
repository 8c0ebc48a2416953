//! Bit-packed monomials: root-vector exponents (and grouplike exponents) in a u64.

use crate::error::{Error, Result};

/// Packing of an exponent vector with `len` slots of `bits` bits each,
/// starting at bit `offset`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Packing {
    pub len: usize,
    pub bits: u32,
    pub offset: u32,
}

impl Packing {
    /// Slots able to hold values up to `max`.
    pub fn new(len: usize, max: u64, offset: u32) -> Result<Packing> {
        let bits = (64 - max.leading_zeros()).max(1);
        if offset as u64 + len as u64 * bits as u64 > 64 {
            return Err(Error::Config(format!(
                "algebra too large for packed monomials ({} slots of {} bits)",
                len, bits
            )));
        }
        Ok(Packing { len, bits, offset })
    }

    pub fn end(&self) -> u32 {
        self.offset + self.len as u32 * self.bits
    }

    #[inline]
    fn mask(&self) -> u64 {
        (1u64 << self.bits) - 1
    }

    #[inline]
    pub fn get(&self, m: u64, i: usize) -> u32 {
        ((m >> (self.offset + i as u32 * self.bits)) & self.mask()) as u32
    }

    #[inline]
    pub fn set(&self, m: u64, i: usize, v: u32) -> u64 {
        let sh = self.offset + i as u32 * self.bits;
        (m & !(self.mask() << sh)) | ((v as u64) << sh)
    }

    /// Unit vector in slot i.
    #[inline]
    pub fn unit(&self, i: usize) -> u64 {
        1u64 << (self.offset + i as u32 * self.bits)
    }

    /// The field occupied by this packing.
    #[inline]
    pub fn field(&self, m: u64) -> u64 {
        let w = self.len as u32 * self.bits;
        if w == 0 {
            return 0;
        }
        let mask = if w == 64 { u64::MAX } else { (1u64 << w) - 1 };
        (m >> self.offset) & mask
    }

    pub fn pack(&self, v: &[u32]) -> u64 {
        v.iter().enumerate().fold(0u64, |m, (i, &x)| m | ((x as u64) << (self.offset + i as u32 * self.bits)))
    }

    pub fn unpack(&self, m: u64) -> Vec<u32> {
        (0..self.len).map(|i| self.get(m, i)).collect()
    }

    /// Index of the last nonzero slot.
    pub fn last_nonzero(&self, m: u64) -> Option<usize> {
        (0..self.len).rev().find(|&i| self.get(m, i) != 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pack_roundtrip() {
        let p = Packing::new(3, 4, 5).unwrap();
        let m = p.pack(&[4, 0, 3]);
        assert_eq!(p.unpack(m), vec![4, 0, 3]);
        assert_eq!(p.get(p.set(m, 1, 2), 1), 2);
        assert_eq!(p.last_nonzero(m), Some(2));
        assert!(Packing::new(30, 7, 0).is_err());
    }
}
