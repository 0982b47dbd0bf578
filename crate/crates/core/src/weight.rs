//! Weight vectors with half-integer coordinates.

use std::fmt;
use std::ops::{Add, Index, Neg, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::halfint::HalfInt;

/// Whether all coordinates are integers or all are half-odd-integers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Parity {
    Integer,
    HalfInteger,
}

impl Parity {
    pub fn of(value: HalfInt) -> Parity {
        if value.is_integer() {
            Parity::Integer
        } else {
            Parity::HalfInteger
        }
    }

    /// Parity class of a sum of two weights from the given classes.
    pub fn combine(self, other: Parity) -> Parity {
        if self == other {
            Parity::Integer
        } else {
            Parity::HalfInteger
        }
    }

    /// The smallest nonnegative representative of the class.
    pub fn base(self) -> HalfInt {
        match self {
            Parity::Integer => HalfInt::ZERO,
            Parity::HalfInteger => HalfInt::HALF,
        }
    }
}

/// A tuple of half-integers, all in one parity class.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightVector {
    coords: Vec<HalfInt>,
}

impl WeightVector {
    pub fn new(coords: Vec<HalfInt>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::domain("weight vector must have rank at least 1"));
        }
        let first = coords[0];
        if coords.iter().any(|c| !c.same_class(first)) {
            return Err(Error::domain(format!(
                "mixed parity in weight ({}): coordinates must be all integers or all half-integers",
                coords.iter().map(HalfInt::to_string).collect::<Vec<_>>().join(", ")
            )));
        }
        Ok(WeightVector { coords })
    }

    /// Builds a weight from doubled coordinates; `[3, 1]` is `(3/2, 1/2)`.
    pub fn from_doubled(doubled: &[i64]) -> Result<Self> {
        Self::new(doubled.iter().copied().map(HalfInt::from_doubled).collect())
    }

    pub fn from_ints(values: &[i64]) -> Result<Self> {
        Self::new(values.iter().copied().map(HalfInt::from_int).collect())
    }

    pub fn parse<S: AsRef<str>>(items: &[S]) -> Result<Self> {
        let coords = items
            .iter()
            .map(|s| {
                s.as_ref()
                    .parse::<HalfInt>()
                    .map_err(|e| Error::domain(e.to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(coords)
    }

    pub fn zero(rank: usize) -> Self {
        WeightVector {
            coords: vec![HalfInt::ZERO; rank.max(1)],
        }
    }

    pub(crate) fn from_coords_unchecked(coords: Vec<HalfInt>) -> Self {
        debug_assert!(!coords.is_empty());
        WeightVector { coords }
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[HalfInt] {
        &self.coords
    }

    pub fn doubled(&self) -> Vec<i64> {
        self.coords.iter().map(|c| c.doubled()).collect()
    }

    pub fn parity(&self) -> Parity {
        Parity::of(self.coords[0])
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| *c == HalfInt::ZERO)
    }

    /// Largest absolute coordinate.
    pub fn max_abs(&self) -> HalfInt {
        self.coords.iter().map(|c| c.abs()).max().unwrap_or_default()
    }

    /// The same tuple with its last coordinate negated.
    pub fn with_last_negated(&self) -> Self {
        let mut coords = self.coords.clone();
        if let Some(last) = coords.last_mut() {
            *last = -*last;
        }
        WeightVector { coords }
    }

    pub fn first(&self) -> HalfInt {
        self.coords[0]
    }

    pub fn last(&self) -> HalfInt {
        self.coords[self.coords.len() - 1]
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.coords.iter().map(HalfInt::to_string).collect()
    }
}

impl Index<usize> for WeightVector {
    type Output = HalfInt;
    fn index(&self, i: usize) -> &HalfInt {
        &self.coords[i]
    }
}

impl fmt::Debug for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

fn zip_with(a: &WeightVector, b: &WeightVector, op: impl Fn(HalfInt, HalfInt) -> HalfInt) -> WeightVector {
    assert_eq!(a.rank(), b.rank(), "rank mismatch in weight arithmetic");
    WeightVector {
        coords: a.coords.iter().zip(&b.coords).map(|(x, y)| op(*x, *y)).collect(),
    }
}

impl Add for &WeightVector {
    type Output = WeightVector;
    fn add(self, rhs: &WeightVector) -> WeightVector {
        zip_with(self, rhs, |x, y| x + y)
    }
}

impl Sub for &WeightVector {
    type Output = WeightVector;
    fn sub(self, rhs: &WeightVector) -> WeightVector {
        zip_with(self, rhs, |x, y| x - y)
    }
}

impl Neg for &WeightVector {
    type Output = WeightVector;
    fn neg(self) -> WeightVector {
        WeightVector {
            coords: self.coords.iter().map(|c| -*c).collect(),
        }
    }
}

impl Serialize for WeightVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.coords.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for WeightVector {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let coords = Vec::<HalfInt>::deserialize(deserializer)?;
        WeightVector::new(coords).map_err(serde::de::Error::custom)
    }
}
