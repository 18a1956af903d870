use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// A weight stored in doubled coordinates, so half-integral entries are exact.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Weight(pub Vec<i32>);

impl Weight {
    pub fn from_doubled(v: Vec<i32>) -> Weight {
        Weight(v)
    }

    /// From integral coordinates.
    pub fn from_ints(v: &[i32]) -> Weight {
        Weight(v.iter().map(|x| 2 * x).collect())
    }

    pub fn zero(n: usize) -> Weight {
        Weight(vec![0; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn doubled(&self) -> &[i32] {
        &self.0
    }

    pub fn add(&self, o: &Weight) -> Weight {
        Weight(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, o: &Weight) -> Weight {
        Weight(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> Weight {
        Weight(self.0.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, k: i32) -> Weight {
        Weight(self.0.iter().map(|a| k * a).collect())
    }

    /// Four times the Euclidean inner product.
    pub fn dot4(&self, o: &Weight) -> i64 {
        self.0.iter().zip(&o.0).map(|(&a, &b)| a as i64 * b as i64).sum()
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|x| x % 2 == 0)
    }

    pub fn is_half_integral(&self) -> bool {
        self.0.iter().all(|x| x.rem_euclid(2) == 1)
    }

    /// Comparison used to break height ties: last coordinate first, ascending.
    pub fn colex_cmp(&self, o: &Weight) -> Ordering {
        for (a, b) in self.0.iter().rev().zip(o.0.iter().rev()) {
            match a.cmp(b) {
                Ordering::Equal => continue,
                c => return c,
            }
        }
        Ordering::Equal
    }

    /// Parse `2,1,0` or `3/2,1/2,1/2`.
    pub fn parse(s: &str) -> Result<Weight> {
        let s = s.trim().trim_start_matches(['(', '[']).trim_end_matches([')', ']']);
        if s.is_empty() {
            return Err(Error::Parse("empty weight".into()));
        }
        let mut out = Vec::new();
        for part in s.split(',') {
            let p = part.trim();
            let v = if let Some((n, d)) = p.split_once('/') {
                let n: i32 = n.trim().parse().map_err(|_| Error::Parse(format!("bad coordinate {}", p)))?;
                match d.trim() {
                    "2" => n,
                    "1" => 2 * n,
                    _ => return Err(Error::Parse(format!("coordinate {} is not in (1/2)Z", p))),
                }
            } else {
                let n: i32 = p.parse().map_err(|_| Error::Parse(format!("bad coordinate {}", p)))?;
                2 * n
            };
            out.push(v);
        }
        Ok(Weight(out))
    }

    pub fn render(&self) -> String {
        self.0.iter().map(|&x| render_half(x)).collect::<Vec<_>>().join(",")
    }
}

pub fn render_half(x: i32) -> String {
    if x % 2 == 0 {
        (x / 2).to_string()
    } else {
        format!("{}/2", x)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.render())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_render() {
        let w = Weight::parse("3/2,1/2,1/2").unwrap();
        assert_eq!(w.0, vec![3, 1, 1]);
        assert_eq!(w.render(), "3/2,1/2,1/2");
        assert_eq!(Weight::parse("(2, 1, -1)").unwrap().0, vec![4, 2, -2]);
        assert!(Weight::parse("1/3").is_err());
    }
}
