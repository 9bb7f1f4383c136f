//! Finite formal linear combinations of loop classes with exact rational coefficients.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::surface::LoopClass;

pub type Rational = BigRational;

pub fn rational(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Always `p/q`, including integers (`2/1`).
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn parse_rational(text: &str) -> Result<Rational> {
    let bad = || Error::Schema(format!("bad rational `{text}`"));
    let text = text.trim();
    match text.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(text.parse().map_err(|_| bad())?)),
    }
}

/// An element of the Goldman space `L`: no stored zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FormalSum {
    genus: usize,
    terms: BTreeMap<LoopClass, Rational>,
}

impl FormalSum {
    pub fn zero(genus: usize) -> Self {
        FormalSum {
            genus,
            terms: BTreeMap::new(),
        }
    }

    pub fn single(class: LoopClass, coeff: Rational) -> Self {
        let mut s = FormalSum::zero(class.genus());
        s.add_term(class, coeff);
        s
    }

    pub fn basis(class: LoopClass) -> Self {
        FormalSum::single(class, Rational::one())
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&LoopClass, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, class: &LoopClass) -> Rational {
        self.terms.get(class).cloned().unwrap_or_else(Rational::zero)
    }

    /// Sum of all coefficients.
    pub fn total(&self) -> Rational {
        self.terms.values().fold(Rational::zero(), |acc, c| acc + c)
    }

    pub fn add_term(&mut self, class: LoopClass, coeff: Rational) {
        debug_assert_eq!(class.genus(), self.genus);
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(class);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check(&self, other: &FormalSum) -> Result<()> {
        if self.genus != other.genus {
            return Err(Error::GenusMismatch {
                left: self.genus,
                right: other.genus,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &FormalSum) -> Result<FormalSum> {
        self.check(other)?;
        let mut out = self.clone();
        for (c, v) in &other.terms {
            out.add_term(c.clone(), v.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &FormalSum) -> Result<FormalSum> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rational) -> FormalSum {
        if c.is_zero() {
            return FormalSum::zero(self.genus);
        }
        FormalSum {
            genus: self.genus,
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    pub fn neg(&self) -> FormalSum {
        FormalSum {
            genus: self.genus,
            terms: self.terms.iter().map(|(k, v)| (k.clone(), -v)).collect(),
        }
    }

    /// Drops the trivial class: the distinguished representative in `L / k γ0`.
    pub fn without_trivial(&self) -> FormalSum {
        FormalSum {
            genus: self.genus,
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| !k.is_trivial())
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect(),
        }
    }

    pub fn trivial_coefficient(&self) -> Rational {
        self.coefficient(&LoopClass::trivial(self.genus))
    }

    /// Rewrites each term `c [w]` as `f(w) c [w]`.
    pub fn weighted(&self, mut f: impl FnMut(&LoopClass) -> Result<Rational>) -> Result<FormalSum> {
        let mut out = FormalSum::zero(self.genus);
        for (k, v) in &self.terms {
            out.add_term(k.clone(), f(k)? * v);
        }
        Ok(out)
    }

    /// Largest class length in the support.
    pub fn max_class_len(&self) -> usize {
        self.terms.keys().map(LoopClass::len).max().unwrap_or(0)
    }
}

impl fmt::Display for FormalSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (class, coeff)) in self.terms.iter().enumerate() {
            let sign = if coeff.is_negative() { "-" } else { "+" };
            if i == 0 {
                if coeff.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let label = if class.is_trivial() {
                "γ0".to_string()
            } else {
                class.to_string()
            };
            write!(f, "{}·[{label}]", coeff.abs())?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(p: i64, q: i64) -> LoopClass {
        LoopClass::Torus { p, q }
    }

    #[test]
    fn zero_coefficients_are_dropped() {
        let mut s = FormalSum::zero(1);
        s.add_term(t(1, 0), rational(2));
        s.add_term(t(1, 0), rational(-2));
        assert!(s.is_zero());
        s.add_term(t(0, 1), rational(0));
        assert!(s.is_zero());
    }

    #[test]
    fn arithmetic() {
        let a = FormalSum::single(t(1, 0), ratio(1, 2));
        let b = FormalSum::single(t(0, 1), rational(3));
        let s = a.add(&b).unwrap();
        assert_eq!(s.total(), ratio(7, 2));
        assert!(s.sub(&s).unwrap().is_zero());
        assert_eq!(s.scale(&rational(2)).coefficient(&t(1, 0)), rational(1));
        let with_trivial = s.add(&FormalSum::basis(t(0, 0))).unwrap();
        assert_eq!(with_trivial.trivial_coefficient(), rational(1));
        assert_eq!(with_trivial.without_trivial(), s);
        assert!(a.add(&FormalSum::zero(2)).is_err());
    }

    #[test]
    fn rational_text() {
        assert_eq!(format_rational(&rational(-2)), "-2/1");
        assert_eq!(parse_rational("6/4").unwrap(), ratio(3, 2));
        assert_eq!(parse_rational("-5").unwrap(), rational(-5));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }
}
