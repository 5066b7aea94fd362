//! Permutations in image-vector form.
//!
//! A `Perm` of degree n maps the points 0..n-1; `images[i]` is the image of
//! point i. Composition is fixed left-to-right throughout the crate:
//! `a.compose(&b)` applies a first, then b. Cycle notation at the text
//! boundary (parsing and display) is 1-based; everything in memory is
//! 0-based.

use crate::error::{Error, Result};
use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<usize>,
}

impl Perm {
    pub fn identity(degree: usize) -> Perm {
        Perm {
            images: (0..degree).collect(),
        }
    }

    /// Validates that `images` is a bijection on 0..len.
    pub fn from_images(images: Vec<usize>) -> Result<Perm> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &img in &images {
            if img >= n {
                return Err(Error::InvalidPermutation(format!(
                    "image {} out of range for degree {}",
                    img, n
                )));
            }
            if seen[img] {
                return Err(Error::InvalidPermutation(format!(
                    "image {} repeated",
                    img
                )));
            }
            seen[img] = true;
        }
        Ok(Perm { images })
    }

    /// Builds a permutation of the given degree from 0-based disjoint cycles.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Perm> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for window in 0..cycle.len() {
                let from = cycle[window];
                let to = cycle[(window + 1) % cycle.len()];
                if from >= degree || to >= degree {
                    return Err(Error::InvalidPermutation(format!(
                        "cycle point {} out of range for degree {}",
                        from.max(to),
                        degree
                    )));
                }
                if touched[from] {
                    return Err(Error::InvalidPermutation(format!(
                        "point {} appears in two cycles",
                        from + 1
                    )));
                }
                touched[from] = true;
                images[from] = to;
            }
        }
        Perm::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &img)| i == img)
    }

    /// self then other: `result(i) = other(self(i))`.
    pub fn compose(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm {
            images: self.images.iter().map(|&i| other.images[i]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0; self.images.len()];
        for (i, &img) in self.images.iter().enumerate() {
            images[img] = i;
        }
        Perm { images }
    }

    /// self^g = g⁻¹ · self · g.
    pub fn conjugate_by(&self, g: &Perm) -> Perm {
        g.inverse().compose(self).compose(g)
    }

    pub fn pow(&self, mut e: u64) -> Perm {
        let mut acc = Perm::identity(self.degree());
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose(&base);
            }
            base = base.compose(&base);
            e >>= 1;
        }
        acc
    }

    pub fn commutator(&self, other: &Perm) -> Perm {
        self.inverse()
            .compose(&other.inverse())
            .compose(self)
            .compose(other)
    }

    pub fn smallest_moved_point(&self) -> Option<usize> {
        self.images.iter().enumerate().find_map(
            |(i, &img)| {
                if i != img {
                    Some(i)
                } else {
                    None
                }
            },
        )
    }

    /// Disjoint cycles of length >= 2, each rotated to start at its smallest
    /// point, sorted by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.images[start] == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut p = self.images[start];
            while p != start {
                seen[p] = true;
                cycle.push(p);
                p = self.images[p];
            }
            out.push(cycle);
        }
        out
    }

    /// Multiplicative order, the lcm of the cycle lengths.
    pub fn order(&self) -> u64 {
        let mut ord: u64 = 1;
        for cycle in self.cycles() {
            ord = num_integer::lcm(ord, cycle.len() as u64);
        }
        ord
    }

    /// Parses 1-based cycle notation like `(1,2,3)(4,5)`. `()` is the
    /// identity. `degree` fixes the ambient degree; points above it are
    /// rejected.
    pub fn parse_cycles(degree: usize, text: &str) -> Result<Perm> {
        let bad = |msg: String| Error::InvalidPermutation(format!("{}: {:?}", msg, text));
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let mut rest = text.trim();
        if rest.is_empty() {
            return Err(bad("empty cycle expression".into()));
        }
        while !rest.is_empty() {
            let Some(stripped) = rest.strip_prefix('(') else {
                return Err(bad("expected '('".into()));
            };
            let Some(close) = stripped.find(')') else {
                return Err(bad("unclosed cycle".into()));
            };
            let body = &stripped[..close];
            rest = stripped[close + 1..].trim_start();
            let body = body.trim();
            if body.is_empty() {
                continue; // () contributes nothing
            }
            let mut cycle = Vec::new();
            for token in body.split(',') {
                let token = token.trim();
                let point: usize = token
                    .parse()
                    .map_err(|_| bad(format!("bad point {:?}", token)))?;
                if point == 0 || point > degree {
                    return Err(bad(format!(
                        "point {} out of range 1..={}",
                        point, degree
                    )));
                }
                cycle.push(point - 1);
            }
            cycles.push(cycle);
        }
        Perm::from_cycles(degree, &cycles)
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for cycle in cycles {
            write!(f, "(")?;
            for (k, p) in cycle.iter().enumerate() {
                if k > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", p + 1)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm[{}]{}", self.degree(), self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_is_left_to_right() {
        // a = (1,2,3), b = (1,2) on 3 points; a then b sends 1 -> 2 -> 1.
        let a = Perm::parse_cycles(3, "(1,2,3)").unwrap();
        let b = Perm::parse_cycles(3, "(1,2)").unwrap();
        let ab = a.compose(&b);
        assert_eq!(ab.apply(0), 0);
        assert_eq!(ab.apply(1), 2);
        assert_eq!(ab.apply(2), 1);
    }

    #[test]
    fn inverse_and_order() {
        let a = Perm::parse_cycles(5, "(1,2,3)(4,5)").unwrap();
        assert!(a.compose(&a.inverse()).is_identity());
        assert_eq!(a.order(), 6);
        assert_eq!(a.pow(6), Perm::identity(5));
        assert_ne!(a.pow(3), Perm::identity(5));
    }

    #[test]
    fn parse_and_display_round_trip() {
        for text in ["(1,2,3)(4,5)", "(1,4)(2,5)(3,6)", "(2,3)", "()"] {
            let p = Perm::parse_cycles(6, text).unwrap();
            let shown = p.to_string();
            let back = Perm::parse_cycles(6, &shown).unwrap();
            assert_eq!(p, back);
        }
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(Perm::parse_cycles(4, "(1,2").is_err());
        assert!(Perm::parse_cycles(4, "(0,1)").is_err());
        assert!(Perm::parse_cycles(4, "(1,5)").is_err());
        assert!(Perm::parse_cycles(4, "(1,1)").is_err());
        assert!(Perm::parse_cycles(4, "1,2)").is_err());
        assert!(Perm::parse_cycles(4, "").is_err());
    }

    #[test]
    fn conjugation_moves_cycles() {
        let a = Perm::parse_cycles(4, "(1,2)").unwrap();
        let g = Perm::parse_cycles(4, "(2,3)").unwrap();
        assert_eq!(a.conjugate_by(&g), Perm::parse_cycles(4, "(1,3)").unwrap());
    }

    #[test]
    fn identity_display() {
        assert_eq!(Perm::identity(4).to_string(), "()");
    }
}
