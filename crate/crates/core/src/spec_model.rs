//! Functions from a finite model of `Spec R` into `NC(Q)`.
//!
//! All functions classify localizing subcategories; the specialization
//! closed (monotone) ones classify thick subcategories of perfect complexes,
//! and equally the smashing subcategories.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::nc::NcLattice;
use crate::poset::{order_isomorphic, FinitePoset, Hasse};

pub const DEFAULT_SIZE_GUARD: u128 = 100_000;
pub const SIZE_GUARD_ENV: &str = "THICKLAT_SIZE_GUARD";

/// Enumeration cap, from `THICKLAT_SIZE_GUARD` when set to a valid integer.
pub fn size_guard() -> u128 {
    std::env::var(SIZE_GUARD_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_SIZE_GUARD)
}

/// A function from the points of a poset to `NC(Q)`, stored as indices into
/// an [`NcLattice`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpecFunction {
    values: Vec<usize>,
}

impl SpecFunction {
    pub fn new(poset: &FinitePoset, nc: &NcLattice, values: Vec<usize>) -> Result<Self> {
        if values.len() != poset.len() {
            return Err(Error::Shape(format!(
                "{} values for a poset with {} points",
                values.len(),
                poset.len()
            )));
        }
        if values.iter().any(|&v| v >= nc.len()) {
            return Err(Error::NotNoncrossing);
        }
        Ok(SpecFunction { values })
    }

    pub fn constant(poset: &FinitePoset, value: usize) -> Self {
        SpecFunction {
            values: vec![value; poset.len()],
        }
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn value(&self, point: usize) -> usize {
        self.values[point]
    }
}

/// `σ(p) ≤ σ(q)` whenever `p ≤ q`.
pub fn is_specialization_closed(poset: &FinitePoset, nc: &NcLattice, f: &SpecFunction) -> bool {
    poset
        .strict_relations()
        .into_iter()
        .all(|(p, q)| nc.leq(f.values[p], f.values[q]))
}

/// A set of functions under the pointwise order.
#[derive(Clone, Debug)]
pub struct FunctionLattice {
    poset: FinitePoset,
    nc: NcLattice,
    members: Vec<SpecFunction>,
    index: HashMap<SpecFunction, usize>,
    covers: Vec<(usize, usize)>,
}

impl FunctionLattice {
    fn build(poset: &FinitePoset, nc: &NcLattice, members: Vec<SpecFunction>) -> Self {
        let index: HashMap<SpecFunction, usize> = members
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, f)| (f, i))
            .collect();
        let mut up: Vec<Vec<usize>> = vec![Vec::new(); nc.len()];
        for &(a, b) in nc.covers() {
            up[a].push(b);
        }
        // a cover raises the value at exactly one point by one cover of NC
        let mut covers: Vec<(usize, usize)> = members
            .par_iter()
            .enumerate()
            .flat_map_iter(|(i, f)| {
                let mut out = Vec::new();
                for p in 0..f.values.len() {
                    for &v in &up[f.values[p]] {
                        let mut g = f.clone();
                        g.values[p] = v;
                        if let Some(&j) = index.get(&g) {
                            out.push((i, j));
                        }
                    }
                }
                out
            })
            .collect();
        covers.sort();
        FunctionLattice {
            poset: poset.clone(),
            nc: nc.clone(),
            members,
            index,
            covers,
        }
    }

    pub fn poset(&self) -> &FinitePoset {
        &self.poset
    }

    pub fn nc(&self) -> &NcLattice {
        &self.nc
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[SpecFunction] {
        &self.members
    }

    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn index_of(&self, f: &SpecFunction) -> Option<usize> {
        self.index.get(f).copied()
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        let (f, g) = (&self.members[i], &self.members[j]);
        f.values
            .iter()
            .zip(&g.values)
            .all(|(&a, &b)| self.nc.leq(a, b))
    }

    fn pointwise(&self, i: usize, j: usize, op: impl Fn(usize, usize) -> usize) -> usize {
        let (f, g) = (&self.members[i], &self.members[j]);
        let h = SpecFunction {
            values: f
                .values
                .iter()
                .zip(&g.values)
                .map(|(&a, &b)| op(a, b))
                .collect(),
        };
        self.index_of(&h)
            .unwrap_or_else(|| panic!("pointwise combination {h:?} left the lattice"))
    }

    pub fn meet(&self, i: usize, j: usize) -> usize {
        self.pointwise(i, j, |a, b| self.nc.meet(a, b))
    }

    pub fn join(&self, i: usize, j: usize) -> usize {
        self.pointwise(i, j, |a, b| self.nc.join(a, b))
    }

    /// `name=label` for every point, joined by `;`.
    pub fn label(&self, i: usize) -> String {
        let f = &self.members[i];
        self.poset
            .names()
            .iter()
            .zip(&f.values)
            .map(|(p, &v)| format!("{p}={}", self.nc.label(v)))
            .collect::<Vec<_>>()
            .join(";")
    }

    pub fn hasse(&self) -> Hasse {
        Hasse {
            labels: (0..self.len()).map(|i| self.label(i)).collect(),
            covers: self.covers.clone(),
        }
    }
}

/// Every function `P → NC(Q)`.
pub fn all_functions(poset: &FinitePoset, nc: &NcLattice) -> Result<FunctionLattice> {
    all_functions_with_cap(poset, nc, size_guard())
}

pub fn all_functions_with_cap(
    poset: &FinitePoset,
    nc: &NcLattice,
    cap: u128,
) -> Result<FunctionLattice> {
    let count = (nc.len() as u128)
        .checked_pow(poset.len() as u32)
        .unwrap_or(u128::MAX);
    if count > cap {
        return Err(Error::SizeGuard { count, cap });
    }
    let (k, m) = (nc.len(), poset.len());
    let members = (0..count as usize)
        .map(|mut code| {
            let mut values = vec![0; m];
            for v in values.iter_mut().rev() {
                *v = code % k;
                code /= k;
            }
            SpecFunction { values }
        })
        .collect();
    Ok(FunctionLattice::build(poset, nc, members))
}

/// Counts specialization closed functions by backtracking over a linear
/// extension, giving up once the count passes `stop_above`.
fn count_monotone(poset: &FinitePoset, nc: &NcLattice, stop_above: u128) -> u128 {
    let order = poset.linear_extension();
    let mut values = vec![usize::MAX; poset.len()];
    let mut count = 0u128;
    fn go(
        k: usize,
        order: &[usize],
        poset: &FinitePoset,
        nc: &NcLattice,
        values: &mut Vec<usize>,
        count: &mut u128,
        stop: u128,
    ) {
        if *count > stop {
            return;
        }
        if k == order.len() {
            *count += 1;
            return;
        }
        let p = order[k];
        for v in 0..nc.len() {
            let ok = order[..k]
                .iter()
                .all(|&q| !poset.leq(q, p) || nc.leq(values[q], v));
            if ok {
                values[p] = v;
                go(k + 1, order, poset, nc, values, count, stop);
            }
        }
        values[p] = usize::MAX;
    }
    go(0, &order, poset, nc, &mut values, &mut count, stop_above);
    count
}

/// The specialization closed functions `P → NC(Q)`.
pub fn monotone_functions(poset: &FinitePoset, nc: &NcLattice) -> Result<FunctionLattice> {
    monotone_functions_with_cap(poset, nc, size_guard())
}

pub fn monotone_functions_with_cap(
    poset: &FinitePoset,
    nc: &NcLattice,
    cap: u128,
) -> Result<FunctionLattice> {
    let count = count_monotone(poset, nc, cap);
    if count > cap {
        return Err(Error::SizeGuard { count, cap });
    }
    let order = poset.linear_extension();
    let mut members = Vec::with_capacity(count as usize);
    let mut values = vec![usize::MAX; poset.len()];
    fn go(
        k: usize,
        order: &[usize],
        poset: &FinitePoset,
        nc: &NcLattice,
        values: &mut Vec<usize>,
        out: &mut Vec<SpecFunction>,
    ) {
        if k == order.len() {
            out.push(SpecFunction {
                values: values.clone(),
            });
            return;
        }
        let p = order[k];
        for v in 0..nc.len() {
            if order[..k]
                .iter()
                .all(|&q| !poset.leq(q, p) || nc.leq(values[q], v))
            {
                values[p] = v;
                go(k + 1, order, poset, nc, values, out);
            }
        }
        values[p] = usize::MAX;
    }
    go(0, &order, poset, nc, &mut values, &mut members);
    members.sort();
    debug_assert!(members
        .iter()
        .all(|f| is_specialization_closed(poset, nc, f)));
    Ok(FunctionLattice::build(poset, nc, members))
}

/// Number of smashing subcategories, equal to the number of specialization
/// closed functions. Counted without materialising the lattice.
pub fn smashing_count(poset: &FinitePoset, nc: &NcLattice) -> u128 {
    count_monotone(poset, nc, u128::MAX)
}

pub fn lattice_iso(a: &FunctionLattice, b: &FunctionLattice) -> bool {
    order_isomorphic(&a.hasse(), &b.hasse())
}

/// The Hasse diagram of specialization closed functions from a two-point
/// spectrum `η < x` into `NC(A2)`, transcribed node by node from its
/// published drawing. Labels give the partition at `η` then at `x`.
pub fn reference_two_point_a2() -> Hasse {
    const NODES: [(&str, &str); 12] = [
        ("a", "(1,2,3) | (1,2,3)"),
        ("b", "(1,2),(3) | (1,2,3)"),
        ("c", "(1,2),(3) | (1,2)"),
        ("d", "(1),(2),(3) | (1,2),(3)"),
        ("e", "(1,3),(2) | (1,2,3)"),
        ("f", "(1,3),(2) | (1,3)"),
        ("g", "(1),(2),(3) | (1,3),(2)"),
        ("h", "(2,3),(1) | (1,2,3)"),
        ("i", "(2,3),(1) | (2,3)"),
        ("j", "(1),(2),(3) | (2,3),(1)"),
        ("k", "(1),(2),(3) | (1),(2),(3)"),
        ("m", "(1),(2),(3) | (1,2,3)"),
    ];
    // (lower, higher), oriented by vertical position in the drawing
    const EDGES: [(&str, &str); 18] = [
        ("b", "a"),
        ("e", "a"),
        ("h", "a"),
        ("c", "b"),
        ("d", "c"),
        ("k", "d"),
        ("f", "e"),
        ("g", "f"),
        ("k", "g"),
        ("i", "h"),
        ("j", "i"),
        ("k", "j"),
        ("d", "m"),
        ("g", "m"),
        ("j", "m"),
        ("m", "b"),
        ("m", "e"),
        ("m", "h"),
    ];
    let pos = |id: &str| NODES.iter().position(|n| n.0 == id).unwrap();
    Hasse {
        labels: NODES.iter().map(|n| n.1.to_string()).collect(),
        covers: EDGES.iter().map(|&(a, b)| (pos(a), pos(b))).collect(),
    }
}
