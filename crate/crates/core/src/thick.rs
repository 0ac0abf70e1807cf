//! Thick subcategories of `D^b(kQ)` as wide subcategories of `mod kQ`.
//!
//! A [`ThickContext`] realises every indecomposable over a finite field once
//! and records, for each ordered pair of indecomposables, the summands of all
//! kernels, cokernels and extension middle terms between them. Closure of a
//! set of indecomposables is then a fixpoint over that table.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::{FieldKind, FiniteField};
use crate::nc::NcLattice;
use crate::quiver::{DimVector, Quiver};
use crate::rep::{FieldRep, TreeModule};
use crate::root_system::{RootSystem, WeylElement};

/// Bitmask over the indecomposables of a quiver (at most 120 for E8).
type RootSet = u128;

/// A wide subcategory, keyed by the dimension vectors of its indecomposables.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WideSubcategory {
    quiver: Quiver,
    field: FieldKind,
    objects: BTreeSet<DimVector>,
}

impl WideSubcategory {
    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn field(&self) -> FieldKind {
        self.field
    }

    pub fn objects(&self) -> &BTreeSet<DimVector> {
        &self.objects
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    pub fn contains(&self, d: &[i64]) -> bool {
        self.objects.contains(d)
    }

    pub fn is_subcategory_of(&self, other: &WideSubcategory) -> bool {
        self.objects.is_subset(&other.objects)
    }
}

/// Precomputed representation data for one quiver over one finite field.
pub struct ThickContext<F: FiniteField> {
    quiver: Quiver,
    roots: Vec<DimVector>,
    index: HashMap<DimVector, usize>,
    modules: Vec<FieldRep<F>>,
    hom: Vec<Vec<usize>>,
    ext: Vec<Vec<usize>>,
    /// `generated[i][j]`: summands of kernels and cokernels of maps `i → j`
    /// and of middle terms of extensions `0 → j → E → i → 0`.
    generated: Vec<Vec<RootSet>>,
    /// `injects[i][j]`: some morphism `i → j` is injective.
    injects: Vec<Vec<bool>>,
}

impl<F: FiniteField> ThickContext<F> {
    pub fn new(quiver: &Quiver) -> Result<Self> {
        let roots = quiver.indecomposable_dims();
        assert!(roots.len() <= 128);
        let index: HashMap<DimVector, usize> = roots
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, r)| (r, i))
            .collect();
        let modules: Vec<FieldRep<F>> = roots
            .iter()
            .map(|r| TreeModule::new(quiver, r).map(|m| m.base_change()))
            .collect::<Result<_>>()?;
        let n = roots.len();
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
        let results: Vec<(usize, usize, RootSet, bool)> = pairs
            .par_iter()
            .map(|&(i, j)| {
                let (x, y) = (&modules[i], &modules[j]);
                let hom = x.hom_dim(y).unwrap();
                let ext = x.ext_dim(y).unwrap();
                let mut set: RootSet = 0;
                let mut injective = false;
                let add = |rep: &FieldRep<F>, set: &mut RootSet| {
                    for d in rep.summand_dims() {
                        let k = *index
                            .get(&d)
                            .unwrap_or_else(|| panic!("summand {d:?} is not a root"));
                        *set |= 1 << k;
                    }
                };
                if hom > 0 {
                    for phi in x.all_morphisms(y).unwrap() {
                        injective |=
                            FieldRep::is_injective(&phi) && phi.iter().any(|p| p.cols() > 0);
                        add(&x.kernel(y, &phi), &mut set);
                        add(&x.cokernel(y, &phi), &mut set);
                    }
                }
                if ext > 0 {
                    for c in x.all_extension_cocycles(y).unwrap() {
                        add(&x.extension(y, &c).unwrap(), &mut set);
                    }
                }
                (i, j, set, injective)
            })
            .collect();
        let mut generated = vec![vec![0; n]; n];
        let mut injects = vec![vec![false; n]; n];
        let mut hom = vec![vec![0; n]; n];
        let mut ext = vec![vec![0; n]; n];
        for (i, j, set, inj) in results {
            generated[i][j] = set;
            injects[i][j] = inj;
        }
        for i in 0..n {
            for j in 0..n {
                hom[i][j] = modules[i].hom_dim(&modules[j])?;
                ext[i][j] = modules[i].ext_dim(&modules[j])?;
            }
        }
        Ok(ThickContext {
            quiver: quiver.clone(),
            roots,
            index,
            modules,
            hom,
            ext,
            generated,
            injects,
        })
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn field(&self) -> FieldKind {
        FieldKind::Prime(F::characteristic())
    }

    pub fn roots(&self) -> &[DimVector] {
        &self.roots
    }

    pub fn module(&self, d: &[i64]) -> Option<&FieldRep<F>> {
        self.index.get(d).map(|&i| &self.modules[i])
    }

    pub fn hom_dim(&self, a: &[i64], b: &[i64]) -> usize {
        self.hom[self.index[a]][self.index[b]]
    }

    pub fn ext_dim(&self, a: &[i64], b: &[i64]) -> usize {
        self.ext[self.index[a]][self.index[b]]
    }

    fn to_mask(&self, seed: &[DimVector]) -> Result<RootSet> {
        seed.iter().try_fold(0, |acc, d| {
            self.index
                .get(d)
                .map(|&i| acc | 1 << i)
                .ok_or_else(|| Error::NotARoot(d.clone()))
        })
    }

    fn subcategory_of_mask(&self, mask: RootSet) -> WideSubcategory {
        WideSubcategory {
            quiver: self.quiver.clone(),
            field: self.field(),
            objects: (0..self.roots.len())
                .filter(|&i| mask >> i & 1 == 1)
                .map(|i| self.roots[i].clone())
                .collect(),
        }
    }

    fn close_mask(&self, mut mask: RootSet) -> RootSet {
        let n = self.roots.len();
        loop {
            let mut next = mask;
            for i in (0..n).filter(|&i| mask >> i & 1 == 1) {
                for j in (0..n).filter(|&j| mask >> j & 1 == 1) {
                    next |= self.generated[i][j];
                }
            }
            if next == mask {
                return mask;
            }
            mask = next;
        }
    }

    /// Least set of indecomposables containing `seed` that is closed under
    /// summands of kernels, cokernels and extensions.
    pub fn closure(&self, seed: &[DimVector]) -> Result<WideSubcategory> {
        Ok(self.subcategory_of_mask(self.close_mask(self.to_mask(seed)?)))
    }

    /// All wide subcategories, found by closing `W ∪ {x}` for every closed
    /// `W` already found and every indecomposable `x`.
    pub fn enumerate(&self) -> Vec<WideSubcategory> {
        let n = self.roots.len();
        let start = self.close_mask(0);
        let mut seen: HashSet<RootSet> = [start].into();
        let mut queue = VecDeque::from([start]);
        while let Some(w) = queue.pop_front() {
            for x in (0..n).filter(|&x| w >> x & 1 == 0) {
                let c = self.close_mask(w | 1 << x);
                if seen.insert(c) {
                    queue.push_back(c);
                }
            }
        }
        let mut out: Vec<WideSubcategory> = seen
            .into_iter()
            .map(|m| self.subcategory_of_mask(m))
            .collect();
        out.sort();
        out
    }

    /// [`enumerate`](Self::enumerate) together with the covers `(lower, upper)`
    /// of inclusion.
    pub fn enumerate_with_covers(&self) -> (Vec<WideSubcategory>, Vec<(usize, usize)>) {
        let subcats = self.enumerate();
        let masks: Vec<RootSet> = subcats
            .iter()
            .map(|w| w.objects.iter().fold(0, |m, d| m | 1 << self.index[d]))
            .collect();
        let proper = |a: RootSet, b: RootSet| a != b && a & b == a;
        let covers = (0..masks.len())
            .into_par_iter()
            .flat_map_iter(|a| {
                let sups: Vec<usize> = (0..masks.len())
                    .filter(|&b| proper(masks[a], masks[b]))
                    .collect();
                sups.iter()
                    .filter(|&&b| !sups.iter().any(|&c| proper(masks[c], masks[b])))
                    .map(|&b| (a, b))
                    .collect::<Vec<_>>()
            })
            .collect();
        (subcats, covers)
    }

    /// `{closure(S) : S ⊆ indecomposables}` by running over every subset.
    /// Exponential; meant for small quivers.
    pub fn enumerate_by_seeds(&self) -> Vec<WideSubcategory> {
        let n = self.roots.len();
        assert!(n < 24, "too many seeds to enumerate");
        let masks: BTreeSet<RootSet> = (0..1u64 << n)
            .into_par_iter()
            .map(|s| self.close_mask(s as RootSet))
            .collect::<HashSet<_>>()
            .into_iter()
            .collect();
        let mut out: Vec<WideSubcategory> = masks
            .into_iter()
            .map(|m| self.subcategory_of_mask(m))
            .collect();
        out.sort();
        out
    }

    /// Members with no proper nonzero subobject in the subcategory.
    pub fn simples_of(&self, wide: &WideSubcategory) -> Vec<DimVector> {
        let idx: Vec<usize> = wide.objects.iter().map(|d| self.index[d]).collect();
        idx.iter()
            .filter(|&&x| !idx.iter().any(|&y| y != x && self.injects[y][x]))
            .map(|&x| self.roots[x].clone())
            .collect()
    }

    /// Orders of the simples in which whenever `Hom(X, Y)` or `Ext¹(X, Y)` is
    /// nonzero for distinct `X`, `Y`, `Y` comes first.
    pub fn exceptional_orders(&self, simples: &[DimVector]) -> Vec<Vec<DimVector>> {
        let k = simples.len();
        let idx: Vec<usize> = simples.iter().map(|d| self.index[d]).collect();
        // before[a] = set of positions that must precede a
        let before: Vec<Vec<usize>> = (0..k)
            .map(|a| {
                (0..k)
                    .filter(|&b| {
                        b != a && (self.hom[idx[a]][idx[b]] > 0 || self.ext[idx[a]][idx[b]] > 0)
                    })
                    .collect()
            })
            .collect();
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(k);
        let mut used = vec![false; k];
        fn go(
            before: &[Vec<usize>],
            used: &mut Vec<bool>,
            cur: &mut Vec<usize>,
            out: &mut Vec<Vec<usize>>,
        ) {
            let k = before.len();
            if cur.len() == k {
                out.push(cur.clone());
                return;
            }
            for a in 0..k {
                if !used[a] && before[a].iter().all(|&b| used[b]) {
                    used[a] = true;
                    cur.push(a);
                    go(before, used, cur, out);
                    cur.pop();
                    used[a] = false;
                }
            }
        }
        go(&before, &mut used, &mut cur, &mut out);
        out.into_iter()
            .map(|o| o.into_iter().map(|a| simples[a].clone()).collect())
            .collect()
    }

    /// Product of the reflections of the simples in an exceptional order.
    /// Panics if the simples admit no such order or if two orders disagree.
    pub fn it_map(&self, rs: &RootSystem, wide: &WideSubcategory) -> WeylElement {
        let simples = self.simples_of(wide);
        let orders = self.exceptional_orders(&simples);
        assert!(
            !orders.is_empty(),
            "simples {simples:?} of {:?} admit no exceptional order",
            wide.objects
        );
        let product = |order: &[DimVector]| {
            order
                .iter()
                .fold(WeylElement::identity(rs.rank()), |acc, d| {
                    acc.compose(
                        &rs.reflection(d)
                            .expect("dimension vector of an indecomposable"),
                    )
                })
        };
        let first = product(&orders[0]);
        for o in &orders[1..] {
            assert_eq!(
                product(o),
                first,
                "exceptional orders of {:?} give different products",
                wide.objects
            );
        }
        first
    }

    /// Checks that [`it_map`](Self::it_map) is an order isomorphism from the
    /// enumerated wide subcategories onto `NC(W, c)`.
    pub fn verify_bijection(&self) -> Result<BijectionReport> {
        let nc = NcLattice::for_quiver(&self.quiver)?;
        let rs = nc.root_system().clone();
        let thick = self.enumerate();
        let mut violations = Vec::new();
        let mut images: Vec<Option<usize>> = Vec::with_capacity(thick.len());
        for w in &thick {
            let img = self.it_map(&rs, w);
            let simples = self.simples_of(w).len();
            match nc.index_of(&img) {
                Some(i) => {
                    if nc.length(i) != simples {
                        violations.push(format!(
                            "{:?}: reflection length {} but {} simples",
                            w.objects,
                            nc.length(i),
                            simples
                        ));
                    }
                    images.push(Some(i));
                }
                None => {
                    violations.push(format!(
                        "{:?}: image is not below the Coxeter element",
                        w.objects
                    ));
                    images.push(None);
                }
            }
        }
        let hit: HashSet<usize> = images.iter().flatten().copied().collect();
        let injective = hit.len() == images.iter().flatten().count();
        let surjective = hit.len() == nc.len();
        if !injective {
            violations.push("two subcategories share an image".into());
        }
        if !surjective {
            violations.push(format!(
                "{} of {} noncrossing elements are hit",
                hit.len(),
                nc.len()
            ));
        }
        let mut order_preserving = true;
        let mut order_reflecting = true;
        for (a, wa) in thick.iter().enumerate() {
            for (b, wb) in thick.iter().enumerate() {
                let (Some(ia), Some(ib)) = (images[a], images[b]) else {
                    continue;
                };
                let sub = wa.is_subcategory_of(wb);
                let leq = nc.leq(ia, ib);
                if sub && !leq {
                    order_preserving = false;
                    violations.push(format!(
                        "{:?} ⊆ {:?} but images are not ordered",
                        wa.objects, wb.objects
                    ));
                }
                if leq && !sub {
                    order_reflecting = false;
                    violations.push(format!(
                        "images ordered but {:?} ⊄ {:?}",
                        wa.objects, wb.objects
                    ));
                }
            }
        }
        Ok(BijectionReport {
            quiver: self.quiver.to_string(),
            dynkin: self.quiver.dynkin().to_string(),
            field: self.field().to_string(),
            thick_count: thick.len(),
            nc_count: nc.len(),
            injective,
            surjective,
            order_preserving,
            order_reflecting,
            violations,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BijectionReport {
    pub dynkin: String,
    pub quiver: String,
    pub field: String,
    pub thick_count: usize,
    pub nc_count: usize,
    pub injective: bool,
    pub surjective: bool,
    pub order_preserving: bool,
    pub order_reflecting: bool,
    pub violations: Vec<String>,
}

impl BijectionReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
            && self.injective
            && self.surjective
            && self.order_preserving
            && self.order_reflecting
            && self.thick_count == self.nc_count
    }
}

impl fmt::Display for BijectionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} over {}: {} thick, {} noncrossing, bijection {}",
            self.dynkin,
            self.field,
            self.thick_count,
            self.nc_count,
            if self.ok() { "OK" } else { "FAILED" }
        )
    }
}

fn require_prime(field: FieldKind) -> Result<u64> {
    match field {
        FieldKind::Prime(p) => Ok(p),
        FieldKind::Rationals => Err(Error::InfiniteField(field.to_string())),
    }
}

/// Wide closure over a field chosen at runtime.
pub fn wide_closure(
    quiver: &Quiver,
    field: FieldKind,
    seed: &[DimVector],
) -> Result<WideSubcategory> {
    let p = require_prime(field)?;
    crate::with_prime_field!(p, F => ThickContext::<F>::new(quiver)?.closure(seed))
        .ok_or_else(|| Error::UnsupportedField(field.to_string()))?
}

/// All thick subcategories of `D^b(kQ)` over a field chosen at runtime.
pub fn enumerate_thick(quiver: &Quiver, field: FieldKind) -> Result<Vec<WideSubcategory>> {
    let p = require_prime(field)?;
    crate::with_prime_field!(p, F => ThickContext::<F>::new(quiver).map(|c| c.enumerate()))
        .ok_or_else(|| Error::UnsupportedField(field.to_string()))?
}

pub fn verify_bijection(quiver: &Quiver, field: FieldKind) -> Result<BijectionReport> {
    let p = require_prime(field)?;
    crate::with_prime_field!(p, F => ThickContext::<F>::new(quiver)?.verify_bijection())
        .ok_or_else(|| Error::UnsupportedField(field.to_string()))?
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Fp;
    use crate::root_system::DynkinType;

    fn ctx2(t: &str) -> ThickContext<Fp<2>> {
        ThickContext::new(&Quiver::standard(t.parse().unwrap())).unwrap()
    }

    fn set(v: &[&[i64]]) -> BTreeSet<DimVector> {
        v.iter().map(|d| d.to_vec()).collect()
    }

    #[test]
    fn a2_closures() {
        let c = ctx2("A2");
        assert_eq!(
            c.closure(&[vec![1, 0]]).unwrap().objects(),
            &set(&[&[1, 0]])
        );
        assert_eq!(
            c.closure(&[vec![1, 0], vec![0, 1]]).unwrap().objects(),
            &set(&[&[1, 0], &[0, 1], &[1, 1]])
        );
        assert_eq!(
            c.closure(&[vec![1, 1]]).unwrap().objects(),
            &set(&[&[1, 1]])
        );
        assert!(c.closure(&[vec![2, 0]]).is_err());
    }

    #[test]
    fn rationals_are_rejected() {
        let q = Quiver::standard(DynkinType::a(2));
        assert!(matches!(
            wide_closure(&q, FieldKind::Rationals, &[vec![1, 0]]),
            Err(Error::InfiniteField(_))
        ));
        assert!(enumerate_thick(&q, FieldKind::Rationals).is_err());
    }

    #[test]
    fn small_counts() {
        assert_eq!(ctx2("A1").enumerate().len(), 2);
        assert_eq!(ctx2("A2").enumerate().len(), 5);
        assert_eq!(ctx2("A3").enumerate().len(), 14);
    }

    #[test]
    fn incremental_enumeration_matches_all_seeds() {
        for t in ["A2", "A3"] {
            let c = ctx2(t);
            assert_eq!(c.enumerate(), c.enumerate_by_seeds());
        }
    }

    #[test]
    fn simples_examples() {
        let c = ctx2("A2");
        let full = c.closure(c.roots()).unwrap();
        assert_eq!(c.simples_of(&full), vec![vec![0, 1], vec![1, 0]]);
        let zero = c.closure(&[]).unwrap();
        assert!(c.simples_of(&zero).is_empty());
        let p = c.closure(&[vec![1, 1]]).unwrap();
        assert_eq!(c.simples_of(&p), vec![vec![1, 1]]);
    }

    #[test]
    fn it_map_examples() {
        let c = ctx2("A2");
        let rs = RootSystem::new(DynkinType::a(2));
        let cox = rs.coxeter_element(c.quiver()).unwrap();
        assert!(c.it_map(&rs, &c.closure(&[]).unwrap()).is_identity());
        let full = c.closure(c.roots()).unwrap();
        assert_eq!(c.it_map(&rs, &full), cox);
        let p = c.closure(&[vec![1, 1]]).unwrap();
        assert_eq!(c.it_map(&rs, &p), rs.reflection(&[1, 1]).unwrap());
    }

    #[test]
    fn a2_bijection() {
        let r = ctx2("A2").verify_bijection().unwrap();
        assert!(r.ok(), "{r:?}");
        assert_eq!((r.thick_count, r.nc_count), (5, 5));
    }

    #[test]
    fn runtime_dispatch() {
        let q = Quiver::standard(DynkinType::a(2));
        assert_eq!(enumerate_thick(&q, FieldKind::Prime(7)).unwrap().len(), 5);
        assert!(verify_bijection(&q, FieldKind::Prime(3)).unwrap().ok());
    }
}
