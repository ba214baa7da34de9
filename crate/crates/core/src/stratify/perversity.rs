use std::fmt;

use crate::error::{Error, Result};

/// A Goresky–MacPherson perversity on a space of formal dimension `n`:
/// values `p(c)` for real codimensions `2 ≤ c ≤ n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Perversity {
    top_dim: usize,
    values: Vec<i64>,
}

impl Perversity {
    /// Validates `p(2) = 0` and `p(c) ≤ p(c+1) ≤ p(c) + 1`. `values[j]` is
    /// `p(j + 2)`; exactly `n − 1` values are required for `n ≥ 2`.
    pub fn custom(top_dim: usize, values: Vec<i64>) -> Result<Self> {
        let expected = top_dim.saturating_sub(1);
        if values.len() != expected {
            return Err(Error::InvalidPerversity(format!(
                "expected {expected} values p(2..={top_dim}), got {}",
                values.len()
            )));
        }
        if let Some(p2) = values.first() {
            if *p2 != 0 {
                return Err(Error::InvalidPerversity(format!("p(2) = {p2}, must be 0")));
            }
        }
        for (j, w) in values.windows(2).enumerate() {
            let step = w[1] - w[0];
            if !(0..=1).contains(&step) {
                return Err(Error::InvalidPerversity(format!(
                    "p({}) = {} and p({}) = {} violate p(c) ≤ p(c+1) ≤ p(c)+1",
                    j + 2,
                    w[0],
                    j + 3,
                    w[1]
                )));
            }
        }
        Ok(Self { top_dim, values })
    }

    fn from_fn(top_dim: usize, f: impl Fn(i64) -> i64) -> Self {
        let values = (2..=top_dim as i64).map(f).collect();
        Self::custom(top_dim, values).expect("standard perversities satisfy the growth conditions")
    }

    /// `p(c) = ⌊(c − 2)/2⌋`.
    pub fn middle(top_dim: usize) -> Self {
        Self::from_fn(top_dim, |c| (c - 2).div_euclid(2))
    }

    /// `p(c) = ⌊(c − 1)/2⌋`.
    pub fn upper_middle(top_dim: usize) -> Self {
        Self::from_fn(top_dim, |c| (c - 1).div_euclid(2))
    }

    pub fn zero(top_dim: usize) -> Self {
        Self::from_fn(top_dim, |_| 0)
    }

    /// `p(c) = c − 2`.
    pub fn top(top_dim: usize) -> Self {
        Self::from_fn(top_dim, |c| c - 2)
    }

    /// Complementary perversity `c − 2 − p(c)`.
    pub fn complement(&self) -> Self {
        Self::from_fn(self.top_dim, |c| c - 2 - self.value(c as usize))
    }

    pub fn top_dim(&self) -> usize {
        self.top_dim
    }

    /// `p(c)` for `2 ≤ c ≤ n`.
    pub fn value(&self, c: usize) -> i64 {
        assert!(
            (2..=self.top_dim).contains(&c),
            "codimension {c} outside 2..={}",
            self.top_dim
        );
        self.values[c - 2]
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    /// Pointwise `self ≤ other` (same formal dimension).
    pub fn le(&self, other: &Perversity) -> bool {
        self.top_dim == other.top_dim && self.values.iter().zip(&other.values).all(|(a, b)| a <= b)
    }

    /// Parses `middle`, `upper`, `zero`, `top` or `custom:v2,v3,…`.
    pub fn parse(spec: &str, top_dim: usize) -> Result<Self> {
        match spec {
            "middle" => Ok(Self::middle(top_dim)),
            "upper" | "upper-middle" => Ok(Self::upper_middle(top_dim)),
            "zero" => Ok(Self::zero(top_dim)),
            "top" => Ok(Self::top(top_dim)),
            _ => {
                let rest = spec.strip_prefix("custom:").ok_or_else(|| {
                    Error::InvalidPerversity(format!("unknown perversity `{spec}`"))
                })?;
                let values = rest
                    .split(',')
                    .filter(|s| !s.trim().is_empty())
                    .map(|s| {
                        s.trim().parse::<i64>().map_err(|_| {
                            Error::InvalidPerversity(format!("`{s}` is not an integer"))
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                Self::custom(top_dim, values)
            }
        }
    }
}

impl fmt::Debug for Perversity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perversity(n={}, {:?})", self.top_dim, self.values)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_values() {
        assert_eq!(Perversity::middle(2).values(), &[0]);
        assert_eq!(Perversity::middle(3).values(), &[0, 0]);
        assert_eq!(Perversity::top(4).values(), &[0, 1, 2]);
        assert_eq!(Perversity::upper_middle(3).values(), &[0, 1]);
        assert_eq!(
            Perversity::middle(3).complement(),
            Perversity::upper_middle(3)
        );
        assert!(Perversity::zero(1).values().is_empty());
    }

    #[test]
    fn growth_is_enforced() {
        assert!(Perversity::custom(3, vec![1, 1]).is_err());
        assert!(Perversity::custom(4, vec![0, 2, 2]).is_err());
        assert!(Perversity::custom(4, vec![0, 1, 0]).is_err());
        assert!(Perversity::custom(3, vec![0]).is_err());
        assert!(Perversity::custom(3, vec![0, 1]).is_ok());
    }

    #[test]
    fn parse_forms() {
        assert_eq!(
            Perversity::parse("custom:0,1", 3).unwrap(),
            Perversity::upper_middle(3)
        );
        assert_eq!(Perversity::parse("top", 3).unwrap(), Perversity::top(3));
        assert!(Perversity::parse("bogus", 3).is_err());
    }

    #[test]
    fn pointwise_order() {
        assert!(Perversity::zero(4).le(&Perversity::middle(4)));
        assert!(Perversity::middle(4).le(&Perversity::top(4)));
        assert!(!Perversity::top(4).le(&Perversity::zero(4)));
    }
}
