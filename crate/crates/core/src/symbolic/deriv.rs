use std::cmp::Ordering;
use std::fmt;

/// Multi-index `α` over `(∂₀, ∂₁, ∂₂, ∂₃)`; derivatives commute, so order is irrelevant.
///
/// The `Ord` impl is the canonical term order: higher total order first, then
/// larger powers of earlier coordinates first. The zero index sorts last.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct MultiIndex(pub [u8; 4]);

pub const MAX_ORDER: u32 = 4;

impl MultiIndex {
    pub const ZERO: MultiIndex = MultiIndex([0; 4]);

    pub fn new(a: [u8; 4]) -> Self {
        MultiIndex(a)
    }

    /// `∂_μ`
    pub fn unit(mu: usize) -> Self {
        let mut a = [0; 4];
        a[mu] = 1;
        MultiIndex(a)
    }

    /// Index from a list of coordinates, e.g. `[0, 1, 1]` is `∂₀∂₁²`.
    pub fn from_coords(coords: &[usize]) -> Self {
        let mut a = [0u8; 4];
        for &c in coords {
            a[c] += 1;
        }
        MultiIndex(a)
    }

    pub fn order(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn get(&self, mu: usize) -> u8 {
        self.0[mu]
    }

    pub fn add(&self, o: &MultiIndex) -> MultiIndex {
        let mut a = self.0;
        for (x, y) in a.iter_mut().zip(o.0) {
            *x += y;
        }
        MultiIndex(a)
    }

    /// Coordinates with repetition, ascending (`∂₀∂₁²` → `[0, 1, 1]`).
    pub fn coords(&self) -> Vec<usize> {
        (0..4)
            .flat_map(|mu| std::iter::repeat_n(mu, self.0[mu] as usize))
            .collect()
    }

    /// All indices of exactly the given order, in canonical order.
    pub fn all_of_order(order: u32) -> Vec<MultiIndex> {
        let mut out = Vec::new();
        let n = order as u8;
        for a in 0..=n {
            for b in 0..=n - a {
                for c in 0..=n - a - b {
                    out.push(MultiIndex([a, b, c, n - a - b - c]));
                }
            }
        }
        out.sort();
        out
    }

    /// Whether only spatial coordinates occur.
    pub fn is_spatial(&self) -> bool {
        self.0[0] == 0
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .order()
            .cmp(&self.order())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "d[{},{},{},{}]", self.0[0], self.0[1], self.0[2], self.0[3])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_order() {
        let v = MultiIndex::all_of_order(2);
        assert_eq!(v.len(), 10);
        assert_eq!(v[0], MultiIndex([2, 0, 0, 0]));
        assert_eq!(v[1], MultiIndex([1, 1, 0, 0]));
        assert!(MultiIndex([0, 0, 0, 3]) < MultiIndex([2, 0, 0, 0]));
        assert!(MultiIndex::unit(0) < MultiIndex::ZERO);
        assert_eq!(MultiIndex::all_of_order(4).len(), 35);
    }

    #[test]
    fn coords_roundtrip() {
        let m = MultiIndex::from_coords(&[1, 0, 1]);
        assert_eq!(m, MultiIndex([1, 2, 0, 0]));
        assert_eq!(m.coords(), vec![0, 1, 1]);
    }
}
