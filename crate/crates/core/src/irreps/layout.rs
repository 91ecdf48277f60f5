use crate::error::{invalid, Result};

/// Position of a Dicke state `|J = N/2 - delta, M>` in the distilled basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DickeIndex {
    pub delta: usize,
    pub m: i64,
    pub flat: usize,
}

/// Bright irrep label, `J = N/2 - delta` with `delta` in `{0, 1, 2}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IrrepLabel(usize);

impl IrrepLabel {
    pub const SYMMETRIC: IrrepLabel = IrrepLabel(0);

    pub fn new(delta: usize) -> Result<Self> {
        if delta > 2 {
            return Err(invalid(format!("irrep label delta = {delta} outside 0..=2")));
        }
        Ok(IrrepLabel(delta))
    }
    pub fn delta(self) -> usize {
        self.0
    }
    pub fn spin(self, n: usize) -> i64 {
        (n / 2) as i64 - self.0 as i64
    }
    pub fn dim(self, n: usize) -> usize {
        n + 1 - 2 * self.0
    }
}

/// Distilled basis ordering: delta-major, `M` ascending within each block.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BasisLayout {
    n: usize,
}

impl BasisLayout {
    pub fn new(n: usize) -> Result<Self> {
        if n < 4 || n % 2 != 0 {
            return Err(invalid(format!("N must be even and >= 4, got {n}")));
        }
        Ok(Self { n })
    }
    pub fn n(&self) -> usize {
        self.n
    }
    pub fn dim(&self) -> usize {
        3 * (self.n - 1)
    }
    pub fn spin(&self, delta: usize) -> i64 {
        (self.n / 2) as i64 - delta as i64
    }
    pub fn block_len(&self, delta: usize) -> usize {
        self.n + 1 - 2 * delta
    }
    pub fn offset(&self, delta: usize) -> usize {
        match delta {
            0 => 0,
            1 => self.n + 1,
            _ => 2 * self.n,
        }
    }
    pub fn block(&self, delta: usize) -> std::ops::Range<usize> {
        let o = self.offset(delta);
        o..o + self.block_len(delta)
    }
    pub fn flat(&self, delta: usize, m: i64) -> Option<usize> {
        let j = self.spin(delta);
        if delta > 2 || m.abs() > j {
            return None;
        }
        Some(self.offset(delta) + (m + j) as usize)
    }
    pub fn index(&self, flat: usize) -> DickeIndex {
        assert!(flat < self.dim(), "flat index {flat} out of range");
        let delta = if flat < self.n + 1 {
            0
        } else if flat < 2 * self.n {
            1
        } else {
            2
        };
        let m = (flat - self.offset(delta)) as i64 - self.spin(delta);
        DickeIndex { delta, m, flat }
    }
    pub fn iter(&self) -> impl Iterator<Item = DickeIndex> + '_ {
        (0..self.dim()).map(move |f| self.index(f))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flat_map_is_bijective() {
        for n in [4, 6, 10, 32] {
            let l = BasisLayout::new(n).unwrap();
            assert_eq!(l.dim(), (0..3).map(|d| l.block_len(d)).sum::<usize>());
            for idx in l.iter() {
                assert_eq!(l.flat(idx.delta, idx.m), Some(idx.flat));
            }
            assert_eq!(l.index(0).m, -(n as i64) / 2);
            assert_eq!(l.index(n).m, (n as i64) / 2);
        }
    }
}
