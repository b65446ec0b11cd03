//! Basis blades of the exterior algebra over a 6-dimensional space.
//!
//! Bit `k` of the mask stands for the basis covector `e^{k+1}`; blade
//! coefficients always refer to the ascending-index ordering, so `e135`
//! is `e^1 ∧ e^3 ∧ e^5`.

use std::fmt;
use std::str::FromStr;

use crate::error::Error;

pub const DIM: usize = 6;
pub const BLADE_COUNT: usize = 1 << DIM;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Blade(u8);

impl Blade {
    pub const SCALAR: Blade = Blade(0);
    pub const VOLUME: Blade = Blade((BLADE_COUNT - 1) as u8);

    pub fn new(mask: u8) -> Option<Blade> {
        ((mask as usize) < BLADE_COUNT).then_some(Blade(mask))
    }

    /// Blade spanned by the given zero-based indices, which must be strictly ascending.
    pub fn from_indices(indices: &[usize]) -> Option<Blade> {
        let mut mask = 0u8;
        let mut last = None;
        for &i in indices {
            if i >= DIM || last.is_some_and(|l| l >= i) {
                return None;
            }
            mask |= 1 << i;
            last = Some(i);
        }
        Some(Blade(mask))
    }

    pub fn basis(i: usize) -> Blade {
        assert!(i < DIM, "basis index {i} out of range");
        Blade(1 << i)
    }

    #[inline]
    pub fn mask(self) -> u8 {
        self.0
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn degree(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn contains(self, i: usize) -> bool {
        self.0 & (1 << i) != 0
    }

    /// Zero-based indices in ascending order.
    pub fn indices(self) -> impl Iterator<Item = usize> {
        (0..DIM).filter(move |&i| self.contains(i))
    }

    pub fn complement(self) -> Blade {
        Blade(!self.0 & Self::VOLUME.0)
    }

    pub fn all() -> impl Iterator<Item = Blade> {
        (0..BLADE_COUNT as u8).map(Blade)
    }

    /// Blades of one degree in lexicographic order of their index lists.
    pub fn of_degree(k: usize) -> Vec<Blade> {
        let mut out: Vec<Blade> = Self::all().filter(|b| b.degree() == k).collect();
        out.sort_by_key(|b| b.indices().collect::<Vec<_>>());
        out
    }

    /// Sign of `e^a ∧ e^b` relative to the ascending blade `a | b`, or
    /// `None` when the blades share an index.
    #[inline]
    pub fn wedge_sign(a: Blade, b: Blade) -> Option<i8> {
        if a.0 & b.0 != 0 {
            return None;
        }
        // each index j of b moves left past every index of a above j
        let mut swaps = 0u32;
        let mut rest = b.0;
        while rest != 0 {
            let j = rest.trailing_zeros();
            swaps += (a.0 >> (j + 1)).count_ones();
            rest &= rest - 1;
        }
        Some(if swaps.is_multiple_of(2) { 1 } else { -1 })
    }

    /// Sign and remainder of `e_i ⌟ e^self`, or `None` if `i` is absent.
    #[inline]
    pub fn contract_sign(self, i: usize) -> Option<(i8, Blade)> {
        if !self.contains(i) {
            return None;
        }
        let before = (self.0 & ((1u8 << i) - 1)).count_ones();
        let sign = if before.is_multiple_of(2) { 1 } else { -1 };
        Some((sign, Blade(self.0 & !(1 << i))))
    }
}

impl fmt::Display for Blade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("e")?;
        for i in self.indices() {
            write!(f, "{}", i + 1)?;
        }
        Ok(())
    }
}

impl FromStr for Blade {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let digits = s.strip_prefix('e').ok_or_else(|| Error::Parse(format!("blade `{s}` must start with `e`")))?;
        let mut indices = Vec::with_capacity(digits.len());
        for c in digits.chars() {
            match c.to_digit(10) {
                Some(d @ 1..=6) => indices.push(d as usize - 1),
                _ => return Err(Error::Parse(format!("blade `{s}`: `{c}` is not a digit 1-6"))),
            }
        }
        Blade::from_indices(&indices)
            .ok_or_else(|| Error::Parse(format!("blade `{s}` must list strictly ascending indices")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Sign of the permutation sorting `seq`, by counting inversions.
    fn inversion_sign(seq: &[usize]) -> i8 {
        let mut inv = 0;
        for i in 0..seq.len() {
            for j in i + 1..seq.len() {
                if seq[i] > seq[j] {
                    inv += 1;
                }
            }
        }
        if inv % 2 == 0 {
            1
        } else {
            -1
        }
    }

    #[test]
    fn wedge_sign_matches_inversion_count() {
        for a in Blade::all() {
            for b in Blade::all() {
                let expected = (a.mask() & b.mask() == 0).then(|| {
                    let seq: Vec<usize> = a.indices().chain(b.indices()).collect();
                    inversion_sign(&seq)
                });
                assert_eq!(Blade::wedge_sign(a, b), expected, "{a} ^ {b}");
            }
        }
    }

    #[test]
    fn parse_and_display() {
        let b: Blade = "e135".parse().unwrap();
        assert_eq!(b, Blade::from_indices(&[0, 2, 4]).unwrap());
        assert_eq!(b.to_string(), "e135");
        assert_eq!("e".parse::<Blade>().unwrap(), Blade::SCALAR);
        assert!("e17".parse::<Blade>().is_err());
        assert!("e31".parse::<Blade>().is_err());
        assert!("e11".parse::<Blade>().is_err());
        assert!("135".parse::<Blade>().is_err());
    }

    #[test]
    fn degree_listing_is_lexicographic() {
        let two: Vec<String> = Blade::of_degree(2).iter().map(|b| b.to_string()).collect();
        assert_eq!(two.len(), 15);
        assert_eq!(&two[..6], ["e12", "e13", "e14", "e15", "e16", "e23"]);
        assert_eq!(Blade::of_degree(3).len(), 20);
    }

    #[test]
    fn contraction_sign() {
        let b: Blade = "e135".parse().unwrap();
        assert_eq!(b.contract_sign(2), Some((-1, "e15".parse().unwrap())));
        assert_eq!(b.contract_sign(1), None);
    }
}
