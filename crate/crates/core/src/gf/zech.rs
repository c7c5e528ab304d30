//! Zech-logarithm representation for bulk evaluation: a nonzero element is
//! stored as its discrete log, so multiplication is one addition and
//! addition is one table lookup.

use super::{FieldElement, FieldTower};

/// A field element in log form; [`ZechField::ZERO`] marks zero.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct ZechElement(u32);

#[derive(Clone, Debug)]
pub struct ZechField {
    order: u32,
    /// `zech[k] = log(1 + gᵏ)`.
    zech: Vec<u32>,
    /// `log(−1)`.
    minus_one: u32,
}

impl ZechField {
    pub const ZERO: ZechElement = ZechElement(u32::MAX);
    pub const ONE: ZechElement = ZechElement(0);

    pub fn new(tower: &FieldTower) -> Self {
        let order = tower.size() - 1;
        let zech = (0..order)
            .map(|k| {
                let s = tower.add(tower.one(), tower.exp(k as u64));
                tower.log(s).unwrap_or(u32::MAX)
            })
            .collect();
        let minus_one = tower.log(tower.neg(tower.one())).expect("−1 is nonzero");
        ZechField {
            order,
            zech,
            minus_one,
        }
    }

    pub fn encode(&self, tower: &FieldTower, a: FieldElement) -> ZechElement {
        tower.log(a).map_or(Self::ZERO, ZechElement)
    }

    pub fn decode(&self, tower: &FieldTower, a: ZechElement) -> FieldElement {
        if a == Self::ZERO {
            tower.zero()
        } else {
            tower.exp(a.0 as u64)
        }
    }

    /// `gᵏ` for `0 ≤ k < q − 1`.
    #[inline]
    pub fn from_log(&self, k: u32) -> ZechElement {
        debug_assert!(k < self.order);
        ZechElement(k)
    }

    #[inline]
    pub fn is_zero(&self, a: ZechElement) -> bool {
        a == Self::ZERO
    }

    #[inline]
    pub fn mul(&self, a: ZechElement, b: ZechElement) -> ZechElement {
        if a == Self::ZERO || b == Self::ZERO {
            return Self::ZERO;
        }
        let s = a.0 + b.0;
        ZechElement(if s >= self.order { s - self.order } else { s })
    }

    /// `gᵃ + gᵇ = gᵃ (1 + g^{b−a})`.
    #[inline]
    pub fn add(&self, a: ZechElement, b: ZechElement) -> ZechElement {
        if a == Self::ZERO {
            return b;
        }
        if b == Self::ZERO {
            return a;
        }
        let d = if b.0 >= a.0 {
            b.0 - a.0
        } else {
            b.0 + self.order - a.0
        };
        let z = self.zech[d as usize];
        if z == u32::MAX {
            return Self::ZERO;
        }
        let s = a.0 + z;
        ZechElement(if s >= self.order { s - self.order } else { s })
    }

    #[inline]
    pub fn neg(&self, a: ZechElement) -> ZechElement {
        self.mul(a, ZechElement(self.minus_one))
    }

    pub fn pow(&self, a: ZechElement, e: u32) -> ZechElement {
        if e == 0 {
            return Self::ONE;
        }
        if a == Self::ZERO {
            return a;
        }
        ZechElement(((a.0 as u64 * e as u64) % self.order as u64) as u32)
    }
}
