use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::HomError;

/// Coefficient ring.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Ring {
    #[default]
    Z,
    Q,
}

impl FromStr for Ring {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "z" => Ok(Ring::Z),
            "q" => Ok(Ring::Q),
            other => Err(format!("unknown ring `{other}` (expected z or q)")),
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Ring::Z => "Z",
            Ring::Q => "Q",
        })
    }
}

/// Sparse cellular chain; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ChainVec {
    ring: Ring,
    coeffs: BTreeMap<usize, BigRational>,
}

impl ChainVec {
    pub fn zero(ring: Ring) -> Self {
        ChainVec { ring, coeffs: BTreeMap::new() }
    }

    pub fn from_integers(ring: Ring, dense: &[BigInt]) -> Self {
        let mut c = Self::zero(ring);
        for (i, x) in dense.iter().enumerate() {
            c.add(i, BigRational::from_integer(x.clone())).expect("integers are valid in every ring");
        }
        c
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn get(&self, cell: usize) -> BigRational {
        self.coeffs.get(&cell).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.coeffs.keys().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &BigRational)> {
        self.coeffs.iter().map(|(&k, v)| (k, v))
    }

    /// Adds `x` to the coefficient of `cell`; rejects non-integers over Z.
    pub fn add(&mut self, cell: usize, x: BigRational) -> Result<(), HomError> {
        if self.ring == Ring::Z && !x.is_integer() {
            return Err(HomError::RingMismatch(format!("coefficient {x} is not an integer")));
        }
        let e = self.coeffs.entry(cell).or_insert_with(BigRational::zero);
        *e += x;
        if e.is_zero() {
            self.coeffs.remove(&cell);
        }
        Ok(())
    }

    pub fn plus(&self, other: &ChainVec) -> Result<ChainVec, HomError> {
        if self.ring != other.ring {
            return Err(HomError::RingMismatch(format!("{} vs {}", self.ring, other.ring)));
        }
        let mut out = self.clone();
        for (k, v) in other.iter() {
            out.add(k, v.clone())?;
        }
        Ok(out)
    }

    pub fn scaled(&self, k: &BigRational) -> Result<ChainVec, HomError> {
        let mut out = ChainVec::zero(self.ring);
        for (c, v) in self.iter() {
            out.add(c, v * k)?;
        }
        Ok(out)
    }

    /// Dense vector of length `n`, scaled to integers by the least common denominator.
    pub fn to_dense_integers(&self, n: usize) -> Vec<BigInt> {
        let den = self.coeffs.values().fold(BigInt::one(), |acc, v| num_integer::lcm(acc, v.denom().clone()));
        let mut out = vec![BigInt::zero(); n];
        for (k, v) in self.iter() {
            out[k] = (v * BigRational::from_integer(den.clone())).to_integer();
        }
        out
    }
}

/// Parses `<coeff> <cell>` lines; `#` starts a comment.
pub fn parse_chain_file(
    text: &str,
    ring: Ring,
    lookup: impl Fn(&str) -> Option<usize>,
) -> Result<ChainVec, HomError> {
    let mut c = ChainVec::zero(ring);
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |m: String| HomError::Parse { line: n + 1, msg: m };
        let toks: Vec<&str> = line.split_whitespace().collect();
        let [coeff, cell] = toks[..] else {
            return Err(err("expected `<coeff> <cell>`".into()));
        };
        let x = BigRational::from_str(coeff).map_err(|_| err(format!("bad coefficient `{coeff}`")))?;
        let id = lookup(cell).ok_or_else(|| err(format!("unknown cell `{cell}`")))?;
        c.add(id, x).map_err(|e| err(e.to_string()))?;
    }
    Ok(c)
}

pub fn print_chain_file(c: &ChainVec, name: impl Fn(usize) -> String) -> String {
    c.iter().map(|(k, v)| format!("{v} {}\n", name(k))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_coefficients_vanish() {
        let mut c = ChainVec::zero(Ring::Z);
        c.add(3, BigRational::from_integer(2.into())).unwrap();
        c.add(3, BigRational::from_integer((-2).into())).unwrap();
        assert!(c.is_zero());
        assert!(c.add(1, BigRational::new(1.into(), 2.into())).is_err());
    }

    #[test]
    fn chain_file_round_trip() {
        let names = ["f1", "f2"];
        let lookup = |s: &str| names.iter().position(|n| *n == s);
        let c = parse_chain_file("# two faces\n2 f1\n-1/3 f2\n", Ring::Q, lookup).unwrap();
        let text = print_chain_file(&c, |k| names[k].to_string());
        assert_eq!(text, "2 f1\n-1/3 f2\n");
        assert_eq!(parse_chain_file(&text, Ring::Q, lookup).unwrap(), c);
        assert!(parse_chain_file("1/2 f1\n", Ring::Z, lookup).is_err());
        assert!(parse_chain_file("1 f9\n", Ring::Z, lookup).is_err());
    }
}
