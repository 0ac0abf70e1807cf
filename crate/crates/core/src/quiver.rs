//! Dynkin quivers, dimension vectors and the Euler form.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::root_system::{DynkinType, RootSystem};

/// A dimension vector, one entry per vertex.
pub type DimVector = Vec<i64>;

/// An orientation of a simply-laced Dynkin diagram. Vertices are `0..rank`
/// internally and printed 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Quiver {
    dynkin: DynkinType,
    arrows: Vec<(usize, usize)>,
}

impl Quiver {
    /// Validates that the arrows orient exactly the edges of the diagram.
    pub fn new(dynkin: DynkinType, arrows: Vec<(usize, usize)>) -> Result<Self> {
        let n = dynkin.rank();
        let mut seen = BTreeSet::new();
        for &(s, t) in &arrows {
            if s >= n || t >= n {
                return Err(Error::InvalidQuiver(format!(
                    "vertex out of range in {}>{}",
                    s + 1,
                    t + 1
                )));
            }
            if s == t {
                return Err(Error::InvalidQuiver(format!("loop at {}", s + 1)));
            }
            if !seen.insert((s.min(t), s.max(t))) {
                return Err(Error::InvalidQuiver(format!(
                    "multiple edge {}-{}",
                    s + 1,
                    t + 1
                )));
            }
        }
        let expected: BTreeSet<_> = dynkin.edges().into_iter().collect();
        if seen != expected {
            return Err(Error::InvalidQuiver(format!(
                "arrows do not orient the {dynkin} diagram"
            )));
        }
        Ok(Quiver { dynkin, arrows })
    }

    /// Every edge oriented from its lower-numbered to its higher-numbered vertex.
    pub fn standard(dynkin: DynkinType) -> Self {
        Quiver {
            dynkin,
            arrows: dynkin.edges(),
        }
    }

    /// Parses an arrow list like `1>2,3>2` (1-based vertices). An empty string
    /// gives the standard orientation.
    pub fn parse(dynkin: DynkinType, s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Self::standard(dynkin));
        }
        let mut arrows = Vec::new();
        for part in s.split(',') {
            let bad = || Error::InvalidQuiver(format!("cannot parse arrow '{part}'"));
            let (a, b) = part.split_once('>').ok_or_else(bad)?;
            let a: usize = a.trim().parse().map_err(|_| bad())?;
            let b: usize = b.trim().parse().map_err(|_| bad())?;
            if a == 0 || b == 0 {
                return Err(bad());
            }
            arrows.push((a - 1, b - 1));
        }
        Self::new(dynkin, arrows)
    }

    pub fn dynkin(&self) -> DynkinType {
        self.dynkin
    }

    pub fn vertex_count(&self) -> usize {
        self.dynkin.rank()
    }

    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    pub fn is_sink(&self, v: usize) -> bool {
        self.arrows.iter().all(|&(s, _)| s != v)
    }

    pub fn is_source(&self, v: usize) -> bool {
        self.arrows.iter().all(|&(_, t)| t != v)
    }

    /// Reverses every arrow incident to `v`.
    pub fn reflect_at(&self, v: usize) -> Quiver {
        let arrows = self
            .arrows
            .iter()
            .map(|&(s, t)| if s == v || t == v { (t, s) } else { (s, t) })
            .collect();
        Quiver {
            dynkin: self.dynkin,
            arrows,
        }
    }

    /// Vertex order in which every arrow's target precedes its source; ties go
    /// to the smallest vertex.
    pub fn sink_first_order(&self) -> Vec<usize> {
        let n = self.vertex_count();
        let mut placed = vec![false; n];
        let mut order = Vec::with_capacity(n);
        while order.len() < n {
            let v = (0..n)
                .find(|&v| !placed[v] && self.arrows.iter().all(|&(s, t)| s != v || placed[t]))
                .expect("Dynkin quivers are acyclic");
            placed[v] = true;
            order.push(v);
        }
        order
    }

    /// `⟨d, e⟩ = Σ dᵢeᵢ − Σ_{a: i→j} dᵢeⱼ`.
    pub fn euler_form(&self, d: &[i64], e: &[i64]) -> Result<i64> {
        let n = self.vertex_count();
        if d.len() != n || e.len() != n {
            return Err(Error::Shape(format!(
                "dimension vectors of length {} and {} for a quiver with {n} vertices",
                d.len(),
                e.len()
            )));
        }
        let diag: i64 = d.iter().zip(e).map(|(a, b)| a * b).sum();
        let off: i64 = self.arrows.iter().map(|&(s, t)| d[s] * e[t]).sum();
        Ok(diag - off)
    }

    /// Dimension vectors of the indecomposables: the positive roots, in root order.
    pub fn indecomposable_dims(&self) -> Vec<DimVector> {
        RootSystem::new(self.dynkin).positive_roots().to_vec()
    }
}

impl fmt::Display for Quiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .arrows
            .iter()
            .map(|&(s, t)| format!("{}>{}", s + 1, t + 1))
            .collect();
        write!(f, "{}", parts.join(","))
    }
}
