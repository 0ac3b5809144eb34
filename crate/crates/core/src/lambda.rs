//! Z^n under the right lexicographic order.
//!
//! Coordinates are stored least significant first, so `coords[k-1]` is the
//! E_k axis and the last entry dominates comparisons.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LambdaError {
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("length arithmetic overflowed 64 bits")]
    Overflow,
}

/// Height of a length vector: 0 for the zero vector, otherwise the index of
/// the most significant nonzero coordinate (1-based).
pub type Height = usize;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LambdaVec {
    coords: Vec<i64>,
}

impl LambdaVec {
    pub fn zero(rank: usize) -> Self {
        LambdaVec { coords: vec![0; rank] }
    }

    /// Unit vector on axis `k` (1-based).
    pub fn unit(rank: usize, k: usize) -> Self {
        assert!(k >= 1 && k <= rank, "axis {k} outside rank {rank}");
        let mut v = Self::zero(rank);
        v.coords[k - 1] = 1;
        v
    }

    pub fn from_coords(coords: Vec<i64>) -> Self {
        LambdaVec { coords }
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    /// Coordinate on axis `k` (1-based); zero outside the rank.
    pub fn coord(&self, k: usize) -> i64 {
        if k == 0 || k > self.coords.len() {
            0
        } else {
            self.coords[k - 1]
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn height(&self) -> Height {
        self.coords.iter().rposition(|&c| c != 0).map_or(0, |i| i + 1)
    }

    /// The most significant coordinate.
    pub fn lambda_top(&self) -> i64 {
        self.coords.last().copied().unwrap_or(0)
    }

    pub fn signum(&self) -> i64 {
        self.coords.iter().rev().find(|&&c| c != 0).map_or(0, |c| c.signum())
    }

    pub fn try_cmp(&self, other: &Self) -> Result<Ordering, LambdaError> {
        check_rank(self, other)?;
        Ok(self.cmp_unchecked(other))
    }

    fn cmp_unchecked(&self, other: &Self) -> Ordering {
        for (a, b) in self.coords.iter().zip(&other.coords).rev() {
            match a.cmp(b) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, LambdaError> {
        check_rank(self, other)?;
        zip_checked(self, other, i64::checked_add)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, LambdaError> {
        check_rank(self, other)?;
        zip_checked(self, other, i64::checked_sub)
    }

    pub fn try_neg(&self) -> Result<Self, LambdaError> {
        let coords =
            self.coords.iter().map(|c| c.checked_neg().ok_or(LambdaError::Overflow)).collect::<Result<_, _>>()?;
        Ok(LambdaVec { coords })
    }

    pub fn try_abs(&self) -> Result<Self, LambdaError> {
        if self.signum() < 0 {
            self.try_neg()
        } else {
            Ok(self.clone())
        }
    }

    pub fn abs(&self) -> Self {
        self.try_abs().expect("length overflow")
    }

    pub fn try_scale(&self, k: i64) -> Result<Self, LambdaError> {
        let coords =
            self.coords.iter().map(|c| c.checked_mul(k).ok_or(LambdaError::Overflow)).collect::<Result<_, _>>()?;
        Ok(LambdaVec { coords })
    }

    pub fn scale(&self, k: i64) -> Self {
        self.try_scale(k).expect("length overflow")
    }

    /// Copy with rank widened (zero padded) or truncated.
    pub fn with_rank(&self, rank: usize) -> Self {
        let mut coords = self.coords.clone();
        coords.resize(rank, 0);
        LambdaVec { coords }
    }
}

fn check_rank(a: &LambdaVec, b: &LambdaVec) -> Result<(), LambdaError> {
    if a.rank() != b.rank() {
        Err(LambdaError::RankMismatch(a.rank(), b.rank()))
    } else {
        Ok(())
    }
}

fn zip_checked(a: &LambdaVec, b: &LambdaVec, f: fn(i64, i64) -> Option<i64>) -> Result<LambdaVec, LambdaError> {
    let coords = a
        .coords
        .iter()
        .zip(&b.coords)
        .map(|(&x, &y)| f(x, y).ok_or(LambdaError::Overflow))
        .collect::<Result<_, _>>()?;
    Ok(LambdaVec { coords })
}

/// Total order; panics on rank mismatch, which never happens inside one tower.
impl Ord for LambdaVec {
    fn cmp(&self, other: &Self) -> Ordering {
        self.try_cmp(other).expect("rank mismatch")
    }
}

impl PartialOrd for LambdaVec {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &LambdaVec {
    type Output = LambdaVec;
    fn add(self, rhs: &LambdaVec) -> LambdaVec {
        self.try_add(rhs).expect("length arithmetic")
    }
}

impl Sub for &LambdaVec {
    type Output = LambdaVec;
    fn sub(self, rhs: &LambdaVec) -> LambdaVec {
        self.try_sub(rhs).expect("length arithmetic")
    }
}

impl Neg for &LambdaVec {
    type Output = LambdaVec;
    fn neg(self) -> LambdaVec {
        self.try_neg().expect("length overflow")
    }
}

impl fmt::Display for LambdaVec {
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

impl fmt::Debug for LambdaVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
