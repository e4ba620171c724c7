//! Exact rationals used for generator input and scale factors.

use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;

use crate::error::{Error, Result};

/// A rational number kept in lowest terms with a positive denominator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rat(Ratio<i64>);

impl Rat {
    pub fn new(numer: i64, denom: i64) -> Result<Rat> {
        if denom == 0 {
            return Err(Error::Parse(format!("{numer}/0 has a zero denominator")));
        }
        Ok(Rat(Ratio::new(numer, denom)))
    }

    pub fn integer(n: i64) -> Rat {
        Rat(Ratio::from_integer(n))
    }

    pub fn one() -> Rat {
        Rat::integer(1)
    }

    pub fn numer(&self) -> i64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i64 {
        *self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_positive(&self) -> bool {
        self.numer() > 0
    }

    /// The value as an integer, if it is one.
    pub fn to_integer(&self) -> Option<i64> {
        self.is_integer().then(|| self.numer())
    }

    /// Rejects zero and negative values.
    pub fn positive(self) -> Result<Rat> {
        if self.is_positive() {
            Ok(self)
        } else {
            Err(Error::NonPositive(self.to_string()))
        }
    }
}

/// Least common multiple of the denominators of `values` (1 for an empty slice).
pub fn lcm_of_denominators(values: &[Rat]) -> i64 {
    values.iter().fold(1i64, |acc, r| acc.lcm(&r.denom()))
}

impl Mul for Rat {
    type Output = Rat;

    fn mul(self, rhs: Rat) -> Rat {
        Rat(self.0 * rhs.0)
    }
}

impl From<i64> for Rat {
    fn from(n: i64) -> Rat {
        Rat::integer(n)
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl FromStr for Rat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Rat> {
        let s = s.trim();
        let parse = |part: &str| {
            part.trim()
                .parse::<i64>()
                .map_err(|_| Error::Parse(format!("`{s}` is not a rational number")))
        };
        match s.split_once('/') {
            Some((n, d)) => Rat::new(parse(n)?, parse(d)?),
            None => Ok(Rat::integer(parse(s)?)),
        }
    }
}

/// Parses a comma-separated list such as `3/2, 4, 9`.
pub fn parse_list(s: &str) -> Result<Vec<Rat>> {
    s.split(',')
        .filter(|part| !part.trim().is_empty())
        .map(str::parse)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_integers() {
        assert_eq!("3/2".parse::<Rat>().unwrap(), Rat::new(3, 2).unwrap());
        assert_eq!(" 6/4 ".parse::<Rat>().unwrap(), Rat::new(3, 2).unwrap());
        assert_eq!("35".parse::<Rat>().unwrap(), Rat::integer(35));
        assert!("1/0".parse::<Rat>().is_err());
        assert!("x".parse::<Rat>().is_err());
    }

    #[test]
    fn lowest_terms_and_display() {
        let r = Rat::new(-4, -6).unwrap();
        assert_eq!((r.numer(), r.denom()), (2, 3));
        assert_eq!(r.to_string(), "2/3");
        assert_eq!(Rat::new(8, 4).unwrap().to_string(), "2");
    }

    #[test]
    fn positivity() {
        assert!(Rat::integer(0).positive().is_err());
        assert!(Rat::new(-1, 2).unwrap().positive().is_err());
        assert!(Rat::new(1, 2).unwrap().positive().is_ok());
    }

    #[test]
    fn denominators_lcm() {
        let v = parse_list("3/2, 5/6, 4").unwrap();
        assert_eq!(lcm_of_denominators(&v), 6);
    }
}
