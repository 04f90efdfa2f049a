//! Permutations of a vertex set `0..n`.
//!
//! Permutations act on the right: `p.then(q)` maps `v` to `q(p(v))`, so the
//! product `αγ` of two permutations is `alpha.then(&gamma)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// A bijection on `0..n`, stored as its image array.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct VertexPermutation {
    image: Vec<usize>,
}

impl VertexPermutation {
    /// Validates that `image` is a permutation of `0..image.len()`.
    pub fn new(image: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; image.len()];
        for &v in &image {
            if v >= image.len() || std::mem::replace(&mut seen[v], true) {
                return Err(Error::InvalidArgument(format!(
                    "{image:?} is not a permutation of 0..{}",
                    image.len()
                )));
            }
        }
        Ok(VertexPermutation { image })
    }

    pub(crate) fn from_vec_unchecked(image: Vec<usize>) -> Self {
        debug_assert!(Self::new(image.clone()).is_ok());
        VertexPermutation { image }
    }

    pub fn identity(n: usize) -> Self {
        VertexPermutation {
            image: (0..n).collect(),
        }
    }

    /// The transposition swapping `a` and `b`.
    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        let mut image: Vec<usize> = (0..n).collect();
        image.swap(a, b);
        VertexPermutation { image }
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.image.len()
    }

    #[inline]
    pub fn apply(&self, v: usize) -> usize {
        self.image[v]
    }

    pub fn images(&self) -> &[usize] {
        &self.image
    }

    pub fn into_images(self) -> Vec<usize> {
        self.image
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Self) -> Self {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        VertexPermutation {
            image: self.image.iter().map(|&v| other.image[v]).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let mut image = vec![0; self.degree()];
        for (i, &v) in self.image.iter().enumerate() {
            image[v] = i;
        }
        VertexPermutation { image }
    }

    /// Number of points moved.
    pub fn support_size(&self) -> usize {
        self.image.iter().enumerate().filter(|&(i, &v)| i != v).count()
    }

    /// True when `u ~ v` iff `p(u) ~ p(v)` for all vertex pairs.
    pub fn is_automorphism_of(&self, g: &Graph) -> bool {
        self.degree() == g.order()
            && g.edge_count()
                == g.edges()
                    .iter()
                    .filter(|&&(u, v)| g.has_edge(self.image[u], self.image[v]))
                    .count()
    }

    pub fn preserves_colors(&self, colors: &[usize]) -> bool {
        colors.len() == self.degree() && (0..self.degree()).all(|v| colors[self.image[v]] == colors[v])
    }
}

impl fmt::Display for VertexPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.image.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{i}→{v}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for VertexPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{:?}", self.image)
    }
}

impl<'de> Deserialize<'de> for VertexPermutation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let image = Vec::<usize>::deserialize(d)?;
        VertexPermutation::new(image).map_err(serde::de::Error::custom)
    }
}
