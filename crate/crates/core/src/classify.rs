//! Function index and order classes over space-time dimension `s` and
//! function order `m`.
//!
//! For fixed `s >= 2` the orders `m >= 2` split into three complicacy
//! classes: Lower for `m <= s + 1`, High for `m > s(s-1)/2 + 2`, and
//! Intermediate in between. The Intermediate band is empty exactly when
//! `s(s-1)/2 + 2 <= s + 1`, i.e. for `s = 2`. One-point functions (`m = 1`)
//! have no difference vectors and are excluded from classification.

use crate::error::Error;
use crate::Result;

/// Complicacy class of an `m`-point function in dimension `s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderClass {
    Lower,
    Intermediate,
    High,
}

impl OrderClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            OrderClass::Lower => "lower",
            OrderClass::Intermediate => "intermediate",
            OrderClass::High => "high",
        }
    }
}

/// Function index `n = s * m`, checked: overflow is an explicit error, never
/// wraparound.
pub fn function_index(s: u64, m: u64) -> Result<u64> {
    if s < 2 {
        return Err(Error::OutOfRange("s must be at least 2"));
    }
    if m < 1 {
        return Err(Error::OutOfRange("m must be at least 1"));
    }
    s.checked_mul(m).ok_or(Error::Overflow("n = s * m"))
}

/// Order class of `(s, m)` for `s >= 2`, `m >= 2`.
pub fn order_class(s: u64, m: u64) -> Result<OrderClass> {
    if s < 2 {
        return Err(Error::OutOfRange("s must be at least 2"));
    }
    if m < 2 {
        return Err(Error::OutOfRange("m must be at least 2"));
    }
    if m <= s + 1 {
        return Ok(OrderClass::Lower);
    }
    let high_bound = s
        .checked_mul(s - 1)
        .map(|x| x / 2)
        .and_then(|x| x.checked_add(2))
        .ok_or(Error::Overflow("s(s-1)/2 + 2"))?;
    if m > high_bound {
        Ok(OrderClass::High)
    } else {
        Ok(OrderClass::Intermediate)
    }
}

/// One row of a classification table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassRow {
    pub m: u64,
    pub class: OrderClass,
    pub n: u64,
}

/// Rows for `m = 2..=m_max`, consistent with [`order_class`] and
/// [`function_index`] by construction.
pub fn class_table(s: u64, m_max: u64) -> Result<Vec<ClassRow>> {
    if m_max < 2 {
        return Err(Error::OutOfRange("m_max must be at least 2"));
    }
    (2..=m_max)
        .map(|m| {
            Ok(ClassRow { m, class: order_class(s, m)?, n: function_index(s, m)? })
        })
        .collect()
}
