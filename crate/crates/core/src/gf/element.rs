use std::fmt;

use super::{Field, Fq, Ring};
use crate::error::{Error, Result};

/// An element of an [`Fq`] that remembers its field, for callers that want
/// mixed-field mistakes reported instead of silently computed.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElement {
    field: Fq,
    value: u32,
}

impl FieldElement {
    pub fn new(field: &Fq, value: u64) -> Result<Self> {
        Ok(FieldElement {
            field: field.clone(),
            value: field.elem(value)?,
        })
    }

    pub fn field(&self) -> &Fq {
        &self.field
    }

    pub fn value(&self) -> u32 {
        self.value
    }

    fn same(&self, other: &Self) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    fn wrap(&self, value: u32) -> Self {
        FieldElement {
            field: self.field.clone(),
            value,
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same(other)?;
        Ok(self.wrap(self.field.add(&self.value, &other.value)))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same(other)?;
        Ok(self.wrap(self.field.sub(&self.value, &other.value)))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same(other)?;
        Ok(self.wrap(self.field.mul(&self.value, &other.value)))
    }

    pub fn inv(&self) -> Result<Self> {
        self.field
            .inv(&self.value)
            .map(|v| self.wrap(v))
            .ok_or(Error::DivisionByZero)
    }

    pub fn pow(&self, e: u64) -> Self {
        self.wrap(self.field.pow(&self.value, e))
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}∈{}", self.value, self.field.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn checked_ops() {
        let f7 = Fq::new(7, 1, None).unwrap();
        let f4 = Fq::new(2, 2, None).unwrap();
        let three = FieldElement::new(&f7, 3).unwrap();
        assert_eq!(three.inv().unwrap().value(), 5);
        assert_eq!(FieldElement::new(&f7, 0).unwrap().inv(), Err(Error::DivisionByZero));
        let w = FieldElement::new(&f4, 2).unwrap();
        assert_eq!(w.mul(&w).unwrap().value(), 3);
        assert_eq!(w.add(&three), Err(Error::FieldMismatch));
        assert!(FieldElement::new(&f4, 4).is_err());
        assert_eq!(three.pow(6).value(), 1);
    }
}
