//! Points of the two infinite carriers: rational tuples for the unsigned
//! space and signed rational tuples for the doubled space.

use std::fmt;
use std::str::FromStr;

use num::BigRational;

use crate::RepError;

/// An n-tuple of arbitrary-precision rationals.  Coordinates are kept in
/// canonical reduced form with positive denominator, so structural equality
/// is value equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalTuple {
    coords: Vec<BigRational>,
}

impl RationalTuple {
    pub fn new(coords: Vec<BigRational>) -> RationalTuple {
        let coords = coords.into_iter().map(|c| c.reduced()).collect();
        RationalTuple { coords }
    }

    pub fn from_integers(values: &[i64]) -> RationalTuple {
        RationalTuple {
            coords: values.iter().map(|&v| BigRational::from_integer(v.into())).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    /// Coordinate at 1-based position k, matching the lex-level convention.
    pub fn coord(&self, k: usize) -> &BigRational {
        &self.coords[k - 1]
    }
}

impl fmt::Display for RationalTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl FromStr for RationalTuple {
    type Err = RepError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| RepError::Invalid {
                field: "tuple",
                reason: format!("expected parenthesized coordinates, got {s:?}"),
            })?;
        let mut coords = Vec::new();
        for part in inner.split(',') {
            let c = part.trim().parse::<BigRational>().map_err(|e| RepError::Invalid {
                field: "tuple",
                reason: format!("bad coordinate {:?}: {e}", part.trim()),
            })?;
            coords.push(c);
        }
        if coords.is_empty() {
            return Err(RepError::Invalid {
                field: "tuple",
                reason: "a tuple needs at least one coordinate".to_string(),
            });
        }
        Ok(RationalTuple::new(coords))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Minus,
    Plus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Minus => Sign::Plus,
            Sign::Plus => Sign::Minus,
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Minus => -1,
            Sign::Plus => 1,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Minus => "-",
            Sign::Plus => "+",
        })
    }
}

/// A tuple tagged with a sign from {-1, +1}.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignedPoint {
    pub tuple: RationalTuple,
    pub sign: Sign,
}

impl SignedPoint {
    pub fn new(tuple: RationalTuple, sign: Sign) -> SignedPoint {
        SignedPoint { tuple, sign }
    }

    /// The same tuple with the opposite sign: the order-automorphism of the
    /// doubled space.
    pub fn flipped(&self) -> SignedPoint {
        SignedPoint {
            tuple: self.tuple.clone(),
            sign: self.sign.flip(),
        }
    }
}

impl fmt::Display for SignedPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.tuple, self.sign)
    }
}

impl FromStr for SignedPoint {
    type Err = RepError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let (body, sign) = if let Some(b) = t.strip_suffix('+') {
            (b, Sign::Plus)
        } else if let Some(b) = t.strip_suffix('-') {
            (b, Sign::Minus)
        } else {
            return Err(RepError::Invalid {
                field: "point",
                reason: format!("missing trailing sign on {t:?}"),
            });
        };
        Ok(SignedPoint::new(body.parse()?, sign))
    }
}
