use alloc::vec::Vec;
use core::fmt;

/// Domain values. Domains are 64-bit sets, so values range over `0..=MAX_VALUE`.
pub type Value = u32;

/// Index of a variable in a [`Model`](super::Model).
pub type VarId = usize;

pub const MAX_VALUE: Value = 63;

/// A finite set of values in `0..=MAX_VALUE`, stored as a bitset.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Domain(u64);

impl Domain {
    pub const EMPTY: Domain = Domain(0);
    pub const BOOL: Domain = Domain(0b11);

    pub fn singleton(value: Value) -> Domain {
        assert!(value <= MAX_VALUE, "value {value} exceeds {MAX_VALUE}");
        Domain(1 << value)
    }

    /// Inclusive range.
    pub fn range(lo: Value, hi: Value) -> Domain {
        assert!(hi <= MAX_VALUE, "value {hi} exceeds {MAX_VALUE}");
        if lo > hi {
            return Domain::EMPTY;
        }
        let width = hi - lo + 1;
        let mask = if width == 64 { u64::MAX } else { (1u64 << width) - 1 };
        Domain(mask << lo)
    }

    /// Returns `None` if some value exceeds [`MAX_VALUE`].
    pub fn from_values<I: IntoIterator<Item = Value>>(values: I) -> Option<Domain> {
        let mut bits = 0u64;
        for v in values {
            if v > MAX_VALUE {
                return None;
            }
            bits |= 1 << v;
        }
        Some(Domain(bits))
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, value: Value) -> bool {
        value <= MAX_VALUE && self.0 & (1 << value) != 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn min(self) -> Option<Value> {
        (self.0 != 0).then(|| self.0.trailing_zeros())
    }

    pub fn max(self) -> Option<Value> {
        (self.0 != 0).then(|| 63 - self.0.leading_zeros())
    }

    /// The value of a singleton domain.
    pub fn value(self) -> Option<Value> {
        (self.0.count_ones() == 1).then(|| self.0.trailing_zeros())
    }

    pub fn intersect(self, other: Domain) -> Domain {
        Domain(self.0 & other.0)
    }

    pub fn union(self, other: Domain) -> Domain {
        Domain(self.0 | other.0)
    }

    pub fn without(self, other: Domain) -> Domain {
        Domain(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Domain) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn insert(&mut self, value: Value) {
        *self = self.union(Domain::singleton(value));
    }

    /// Removes `value`; returns whether the domain changed.
    pub fn remove(&mut self, value: Value) -> bool {
        let before = self.0;
        if value <= MAX_VALUE {
            self.0 &= !(1 << value);
        }
        before != self.0
    }

    /// Values strictly below `bound`.
    pub fn below(self, bound: Value) -> Domain {
        if bound == 0 {
            Domain::EMPTY
        } else {
            self.intersect(Domain::range(0, (bound - 1).min(MAX_VALUE)))
        }
    }

    /// Values strictly above `bound`.
    pub fn above(self, bound: Value) -> Domain {
        if bound >= MAX_VALUE {
            Domain::EMPTY
        } else {
            self.intersect(Domain::range(bound + 1, MAX_VALUE))
        }
    }

    pub fn iter(self) -> DomainIter {
        DomainIter(self.0)
    }

    pub fn to_vec(self) -> Vec<Value> {
        self.iter().collect()
    }
}

pub struct DomainIter(u64);

impl Iterator for DomainIter {
    type Item = Value;

    fn next(&mut self) -> Option<Value> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros();
        self.0 &= self.0 - 1;
        Some(v)
    }
}

impl IntoIterator for Domain {
    type Item = Value;
    type IntoIter = DomainIter;

    fn into_iter(self) -> DomainIter {
        self.iter()
    }
}

impl FromIterator<Value> for Domain {
    fn from_iter<I: IntoIterator<Item = Value>>(iter: I) -> Self {
        let mut d = Domain::EMPTY;
        for v in iter {
            d.insert(v);
        }
        d
    }
}

impl fmt::Debug for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_set_operations() {
        let d = Domain::range(1, 4);
        assert_eq!(d.to_vec(), [1, 2, 3, 4]);
        assert_eq!(d.min(), Some(1));
        assert_eq!(d.max(), Some(4));
        assert_eq!(d.below(3).to_vec(), [1, 2]);
        assert_eq!(d.above(3).to_vec(), [4]);
        assert_eq!(d.below(0), Domain::EMPTY);
        assert_eq!(Domain::singleton(5).value(), Some(5));
        assert_eq!(Domain::BOOL.value(), None);
        assert_eq!(Domain::range(0, 63).len(), 64);
        assert_eq!(Domain::range(3, 2), Domain::EMPTY);
        assert!(Domain::from_values([64]).is_none());
        let mut e = Domain::BOOL;
        assert!(e.remove(1));
        assert!(!e.remove(1));
        assert_eq!(alloc::format!("{e}"), "{0}");
    }
}
