//! Permutations of `{0, .., n-1}` stored as image sequences.
//!
//! Composition is a right action: `p.compose(&q)` applies `p` first and then
//! `q`, so `(p * q)(i) = q(p(i))`. External text uses 1-based disjoint cycle
//! notation such as `(1 2 3)(4 5)`; `()` is the identity.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation { images: (0..degree as u32).collect() }
    }

    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            let x = x as usize;
            if x >= n {
                return Err(Error::PointOutOfRange { point: x, degree: n });
            }
            if std::mem::replace(&mut seen[x], true) {
                return Err(Error::NotAPermutation(format!("image {x} repeated")));
            }
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    /// `self` then `other`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch { left: self.degree(), right: other.degree() });
        }
        Ok(self.then(other))
    }

    /// Unchecked composition for callers that already agree on degree.
    #[inline]
    pub(crate) fn then(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation { images: self.images.iter().map(|&i| other.images[i as usize]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    /// `g^-1 * self * g`.
    pub fn conjugate_by(&self, g: &Permutation) -> Permutation {
        g.inverse().then(self).then(g)
    }

    pub fn fixed_points(&self) -> Vec<usize> {
        self.images.iter().enumerate().filter(|(i, &x)| *i == x as usize).map(|(i, _)| i).collect()
    }

    pub fn is_derangement(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i != x as usize)
    }

    /// Nontrivial cycles, each starting at its smallest point, ordered by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.apply(start) == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.apply(start);
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.apply(x);
            }
            out.push(cycle);
        }
        out
    }

    pub fn order(&self) -> usize {
        self.cycles().iter().fold(1, |acc, c| lcm(acc, c.len()))
    }

    /// Parses 1-based disjoint cycle notation at the given degree.
    pub fn parse_cycles(text: &str, degree: usize) -> Result<Permutation> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut used = vec![false; degree];
        let mut rest = text.trim();
        if rest.is_empty() {
            return Err(Error::MalformedCycles("empty input".into()));
        }
        while !rest.is_empty() {
            let Some(body) = rest.strip_prefix('(') else {
                return Err(Error::MalformedCycles(format!("expected `(` at `{rest}`")));
            };
            let Some(close) = body.find(')') else {
                return Err(Error::MalformedCycles("unclosed cycle".into()));
            };
            let inner = &body[..close];
            if inner.contains('(') {
                return Err(Error::MalformedCycles("nested `(`".into()));
            }
            let mut points = Vec::new();
            for tok in inner.split(|c: char| c.is_whitespace() || c == ',').filter(|t| !t.is_empty()) {
                let p: usize = tok
                    .parse()
                    .map_err(|_| Error::MalformedCycles(format!("bad point `{tok}`")))?;
                if p == 0 || p > degree {
                    return Err(Error::PointOutOfRange { point: p, degree });
                }
                let p = p - 1;
                if std::mem::replace(&mut used[p], true) {
                    return Err(Error::MalformedCycles(format!("point {} repeated", p + 1)));
                }
                points.push(p);
            }
            for (k, &p) in points.iter().enumerate() {
                images[p] = points[(k + 1) % points.len()] as u32;
            }
            rest = body[close + 1..].trim_start();
        }
        Ok(Permutation { images })
    }

    pub fn format_cycles(&self) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "()".to_string();
        }
        let mut s = String::new();
        for c in cycles {
            s.push('(');
            let pts: Vec<String> = c.iter().map(|p| (p + 1).to_string()).collect();
            s.push_str(&pts.join(" "));
            s.push(')');
        }
        s
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

impl TryFrom<Vec<u32>> for Permutation {
    type Error = Error;
    fn try_from(images: Vec<u32>) -> Result<Self> {
        Permutation::from_images(images)
    }
}

impl From<Permutation> for Vec<u32> {
    fn from(p: Permutation) -> Vec<u32> {
        p.images
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_cycles())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.format_cycles(), self.degree())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str, n: usize) -> Permutation {
        Permutation::parse_cycles(s, n).unwrap()
    }

    #[test]
    fn compose_identity_and_squares() {
        let c = p("(1 2 3 4)", 4);
        assert_eq!(Permutation::identity(4).compose(&c).unwrap(), c);
        assert_eq!(c.compose(&c).unwrap(), p("(1 3)(2 4)", 4));
        assert!(c.compose(&c.inverse()).unwrap().is_identity());
    }

    #[test]
    fn compose_is_right_action() {
        // (1 2) then (2 3): 1 -> 2 -> 3
        let r = p("(1 2)", 3).compose(&p("(2 3)", 3)).unwrap();
        assert_eq!(r.apply(0), 2);
        assert_eq!(r, p("(1 3 2)", 3));
    }

    #[test]
    fn compose_degree_mismatch() {
        let e = Permutation::identity(3).compose(&Permutation::identity(4));
        assert_eq!(e, Err(Error::DegreeMismatch { left: 3, right: 4 }));
    }

    #[test]
    fn fixed_point_examples() {
        assert_eq!(Permutation::identity(5).fixed_points(), vec![0, 1, 2, 3, 4]);
        assert!(p("(1 2)(3 4)", 4).fixed_points().is_empty());
        assert!(p("(1 2)(3 4)", 4).is_derangement());
        assert_eq!(p("(1 2 3)", 5).fixed_points(), vec![3, 4]);
    }

    #[test]
    fn parse_examples() {
        assert_eq!(p("()", 3), Permutation::identity(3));
        assert_eq!(p("(1 2 3 4)", 4).images(), &[1, 2, 3, 0]);
        assert!(matches!(Permutation::parse_cycles("(1 2)(2 3)", 3), Err(Error::MalformedCycles(_))));
        assert_eq!(
            Permutation::parse_cycles("(1 8)", 7),
            Err(Error::PointOutOfRange { point: 8, degree: 7 })
        );
        assert_eq!(p("  ( 1  2 )  (3 4)", 4), p("(1 2)(3 4)", 4));
        assert!(Permutation::parse_cycles("(1 2", 3).is_err());
        assert!(Permutation::parse_cycles("1 2", 3).is_err());
        assert!(Permutation::parse_cycles("(a)", 3).is_err());
    }

    #[test]
    fn format_and_order() {
        assert_eq!(p("(2 3 1)(5 4)", 5).format_cycles(), "(1 2 3)(4 5)");
        assert_eq!(Permutation::identity(2).to_string(), "()");
        assert_eq!(p("(1 2 3)(4 5)", 5).order(), 6);
    }

    #[test]
    fn from_images_rejects_non_bijection() {
        assert!(Permutation::from_images(vec![0, 0]).is_err());
        assert!(Permutation::from_images(vec![0, 2]).is_err());
    }

    fn perm_strategy(n: usize) -> impl Strategy<Value = Permutation> {
        Just((0..n as u32).collect::<Vec<_>>())
            .prop_shuffle()
            .prop_map(|v| Permutation::from_images(v).unwrap())
    }

    proptest! {
        #[test]
        fn compose_associative(a in perm_strategy(7), b in perm_strategy(7), c in perm_strategy(7)) {
            prop_assert_eq!(a.then(&b).then(&c), a.then(&b.then(&c)));
        }

        #[test]
        fn inverse_shares_fixed_points(a in perm_strategy(9)) {
            prop_assert_eq!(a.fixed_points(), a.inverse().fixed_points());
            prop_assert!(a.then(&a.inverse()).is_identity());
        }

        #[test]
        fn cycles_round_trip(a in perm_strategy(10)) {
            prop_assert_eq!(Permutation::parse_cycles(&a.format_cycles(), 10).unwrap(), a);
        }
    }
}
