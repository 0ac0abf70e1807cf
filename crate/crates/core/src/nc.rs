//! Noncrossing partitions as the interval `[e, c]` of the absolute order.
//!
//! [`NcLattice`] enumerates the interval once by breadth-first search and
//! keeps the cover graph, so comparisons and lattice operations afterwards
//! are table lookups. The standalone [`nc_leq`] recomputes the order from
//! reflection lengths and is the reference the table is checked against.

use std::collections::{HashMap, HashSet};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::root_system::{Family, RootSystem, WeylElement};

/// Lattices larger than this keep no comparison table.
const LEQ_TABLE_MAX: usize = 5000;

/// An element of `NC(W, c)` together with its Coxeter element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NcElement {
    elem: WeylElement,
    coxeter: WeylElement,
}

impl NcElement {
    /// Checks `ℓ(w) + ℓ(w⁻¹c) = ℓ(c) = rank`.
    pub fn new(rs: &RootSystem, elem: WeylElement, coxeter: WeylElement) -> Result<Self> {
        check_coxeter(rs, &coxeter)?;
        if rs.reflection_length(&elem) + rs.relative_length(&elem, &coxeter) != rs.rank() {
            return Err(Error::NotNoncrossing);
        }
        Ok(NcElement { elem, coxeter })
    }

    pub fn elem(&self) -> &WeylElement {
        &self.elem
    }

    pub fn coxeter(&self) -> &WeylElement {
        &self.coxeter
    }
}

fn check_coxeter(rs: &RootSystem, c: &WeylElement) -> Result<()> {
    let len = rs.reflection_length(c);
    if len != rs.rank() || !rs.preserves_roots(c) {
        return Err(Error::NotCoxeter {
            found: len,
            expected: rs.rank(),
        });
    }
    Ok(())
}

/// Absolute order test `u ≤ w ⇔ ℓ(u) + ℓ(u⁻¹w) = ℓ(w)`.
pub fn nc_leq(rs: &RootSystem, u: &NcElement, w: &NcElement) -> Result<bool> {
    if u.coxeter != w.coxeter {
        return Err(Error::CoxeterMismatch);
    }
    Ok(
        rs.reflection_length(&u.elem) + rs.relative_length(&u.elem, &w.elem)
            == rs.reflection_length(&w.elem),
    )
}

/// Enumerates `[e, c]` by breadth-first search over reflection steps.
pub fn enumerate_nc(rs: &RootSystem, c: &WeylElement) -> Result<Vec<NcElement>> {
    let reflections = rs.reflections();
    let (elements, _) = bfs_interval(rs, c, &reflections)?;
    Ok(elements
        .into_iter()
        .map(|elem| NcElement {
            elem,
            coxeter: c.clone(),
        })
        .collect())
}

/// BFS with a caller-supplied reflection list. Returns the sorted interval and
/// cover pairs `(lower, upper)` as indices into it.
pub fn bfs_interval(
    rs: &RootSystem,
    c: &WeylElement,
    reflections: &[WeylElement],
) -> Result<(Vec<WeylElement>, Vec<(usize, usize)>)> {
    check_coxeter(rs, c)?;
    let n = rs.rank();
    let mut seen: HashSet<WeylElement> = HashSet::new();
    let id = WeylElement::identity(n);
    seen.insert(id.clone());
    let mut frontier = vec![id];
    let mut raw_covers: Vec<(WeylElement, WeylElement)> = Vec::new();
    for len in 0..n {
        let steps: Vec<(WeylElement, WeylElement)> = frontier
            .par_iter()
            .flat_map_iter(|w| {
                reflections.iter().filter_map(move |t| {
                    let y = w.compose(t);
                    let ok = rs.reflection_length(&y) == len + 1
                        && rs.relative_length(&y, c) == n - len - 1;
                    ok.then(|| (w.clone(), y))
                })
            })
            .collect();
        let mut next = Vec::new();
        for (w, y) in steps {
            if seen.insert(y.clone()) {
                next.push(y.clone());
            }
            raw_covers.push((w, y));
        }
        frontier = next;
    }
    let mut elements: Vec<WeylElement> = seen.into_iter().collect();
    elements.sort();
    let index: HashMap<&WeylElement, usize> =
        elements.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let mut covers: Vec<(usize, usize)> = raw_covers
        .iter()
        .map(|(a, b)| (index[a], index[b]))
        .collect();
    covers.sort_unstable();
    covers.dedup();
    Ok((elements, covers))
}

/// The noncrossing-partition lattice `NC(W, c)`.
#[derive(Clone, Debug)]
pub struct NcLattice {
    rs: RootSystem,
    coxeter: WeylElement,
    elements: Vec<WeylElement>,
    lengths: Vec<usize>,
    index: HashMap<WeylElement, usize>,
    covers: Vec<(usize, usize)>,
    /// `below[w]` has bit `u` set iff `u ≤ w`.
    below: Option<Vec<Vec<u64>>>,
}

impl NcLattice {
    pub fn new(rs: &RootSystem, coxeter: &WeylElement) -> Result<Self> {
        let (elements, covers) = bfs_interval(rs, coxeter, &rs.reflections())?;
        let lengths: Vec<usize> = elements.iter().map(|w| rs.reflection_length(w)).collect();
        let index = elements
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, w)| (w, i))
            .collect();
        let below =
            (elements.len() <= LEQ_TABLE_MAX).then(|| downsets(elements.len(), &lengths, &covers));
        Ok(NcLattice {
            rs: rs.clone(),
            coxeter: coxeter.clone(),
            elements,
            lengths,
            index,
            covers,
            below,
        })
    }

    /// Lattice for the sink-first Coxeter element of a quiver.
    pub fn for_quiver(quiver: &crate::quiver::Quiver) -> Result<Self> {
        let rs = RootSystem::new(quiver.dynkin());
        let c = rs.coxeter_element(quiver)?;
        Self::new(&rs, &c)
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn coxeter(&self) -> &WeylElement {
        &self.coxeter
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[WeylElement] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> NcElement {
        NcElement {
            elem: self.elements[i].clone(),
            coxeter: self.coxeter.clone(),
        }
    }

    pub fn index_of(&self, w: &WeylElement) -> Option<usize> {
        self.index.get(w).copied()
    }

    pub fn length(&self, i: usize) -> usize {
        self.lengths[i]
    }

    pub fn bottom(&self) -> usize {
        self.index[&WeylElement::identity(self.rs.rank())]
    }

    pub fn top(&self) -> usize {
        self.index[&self.coxeter]
    }

    /// Cover pairs `(lower, upper)`, sorted.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn leq(&self, u: usize, w: usize) -> bool {
        match &self.below {
            Some(below) => below[w][u / 64] >> (u % 64) & 1 == 1,
            None => {
                self.lengths[u]
                    + self
                        .rs
                        .relative_length(&self.elements[u], &self.elements[w])
                    == self.lengths[w]
            }
        }
    }

    fn lower_bounds(&self, u: usize, w: usize) -> Vec<usize> {
        (0..self.len())
            .filter(|&x| self.leq(x, u) && self.leq(x, w))
            .collect()
    }

    fn upper_bounds(&self, u: usize, w: usize) -> Vec<usize> {
        (0..self.len())
            .filter(|&x| self.leq(u, x) && self.leq(w, x))
            .collect()
    }

    /// Greatest common lower bound, found by scanning the interval.
    pub fn meet(&self, u: usize, w: usize) -> usize {
        let lb = self.lower_bounds(u, w);
        let m = *lb
            .iter()
            .max_by_key(|&&x| (self.lengths[x], std::cmp::Reverse(x)))
            .unwrap();
        assert!(
            lb.iter().all(|&x| self.leq(x, m)),
            "meet of {u} and {w} is not unique"
        );
        m
    }

    /// Least common upper bound, found by scanning the interval.
    pub fn join(&self, u: usize, w: usize) -> usize {
        let ub = self.upper_bounds(u, w);
        let m = *ub.iter().min_by_key(|&&x| (self.lengths[x], x)).unwrap();
        assert!(
            ub.iter().all(|&x| self.leq(m, x)),
            "join of {u} and {w} is not unique"
        );
        m
    }

    /// Kreweras-style complement `w⁻¹c`.
    pub fn complement(&self, i: usize) -> Option<usize> {
        let inv = self.rs.inverse(&self.elements[i]);
        self.index_of(&inv.compose(&self.coxeter))
    }

    fn idx(&self, x: &NcElement) -> Result<usize> {
        if x.coxeter != self.coxeter {
            return Err(Error::CoxeterMismatch);
        }
        self.index_of(&x.elem).ok_or(Error::NotNoncrossing)
    }

    pub fn nc_meet(&self, u: &NcElement, w: &NcElement) -> Result<NcElement> {
        Ok(self.element(self.meet(self.idx(u)?, self.idx(w)?)))
    }

    pub fn nc_join(&self, u: &NcElement, w: &NcElement) -> Result<NcElement> {
        Ok(self.element(self.join(self.idx(u)?, self.idx(w)?)))
    }

    /// Canonical label: the set partition in type A, otherwise the
    /// lexicographically first minimal reflection factorization.
    pub fn label(&self, i: usize) -> String {
        if self.rs.dynkin().family() == Family::A {
            format_partition(&nc_to_set_partition(&self.rs, &self.elements[i]).unwrap())
        } else {
            format_factorization(&reflection_factorization(&self.rs, &self.elements[i]))
        }
    }
}

fn downsets(n: usize, lengths: &[usize], covers: &[(usize, usize)]) -> Vec<Vec<u64>> {
    let words = n.div_ceil(64);
    let mut below = vec![vec![0u64; words]; n];
    let mut lower_covers: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(a, b) in covers {
        lower_covers[b].push(a);
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| lengths[i]);
    for &w in &order {
        below[w][w / 64] |= 1 << (w % 64);
        for &u in &lower_covers[w] {
            let (lo, hi) = if u < w {
                let (a, b) = below.split_at_mut(w);
                (&a[u], &mut b[0])
            } else {
                let (a, b) = below.split_at_mut(u);
                (&b[0], &mut a[w])
            };
            for k in 0..words {
                hi[k] |= lo[k];
            }
        }
    }
    below
}

/// Reads a type-A Weyl element as a permutation of `{1, …, rank+1}`; the
/// result maps `j` (0-based) to its image.
pub fn type_a_permutation(rs: &RootSystem, w: &WeylElement) -> Result<Vec<usize>> {
    if rs.dynkin().family() != Family::A {
        return Err(Error::NotTypeA(rs.dynkin().to_string()));
    }
    let n = rs.rank();
    // e_j − e_{n+1} = α_j + … + α_n in root coordinates
    let to_e = |v: &[i64]| -> Vec<i64> {
        let mut x = vec![0; n + 1];
        x[0] = v[0];
        for k in 1..n {
            x[k] = v[k] - v[k - 1];
        }
        x[n] = -v[n - 1];
        x
    };
    let mut images = Vec::with_capacity(n);
    let mut last = None;
    for j in 0..n {
        let v: Vec<i64> = (0..n).map(|k| i64::from(k >= j)).collect();
        let x = to_e(&w.apply(&v));
        let plus = x.iter().position(|&a| a == 1).expect("image is a root");
        let minus = x.iter().position(|&a| a == -1).expect("image is a root");
        images.push(plus);
        if let Some(m) = last {
            assert_eq!(m, minus);
        }
        last = Some(minus);
    }
    images.push(last.unwrap());
    Ok(images)
}

/// Blocks of the set partition of `{1, …, rank+1}` given by the cycles of the
/// permutation. Blocks are sorted, and sorted internally.
pub fn nc_to_set_partition(rs: &RootSystem, w: &WeylElement) -> Result<Vec<Vec<usize>>> {
    let perm = type_a_permutation(rs, w)?;
    let mut seen = vec![false; perm.len()];
    let mut blocks = Vec::new();
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut block = Vec::new();
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            block.push(x + 1);
            x = perm[x];
        }
        block.sort_unstable();
        blocks.push(block);
    }
    blocks.sort();
    Ok(blocks)
}

/// `(1,2),(3)` style rendering.
pub fn format_partition(blocks: &[Vec<usize>]) -> String {
    blocks
        .iter()
        .map(|b| {
            let inner: Vec<String> = b.iter().map(|x| x.to_string()).collect();
            format!("({})", inner.join(","))
        })
        .collect::<Vec<_>>()
        .join(",")
}

/// True when no `a < b < c < d` has `a ~ c`, `b ~ d` across distinct blocks.
pub fn is_noncrossing(blocks: &[Vec<usize>]) -> bool {
    let block_of = |x: usize| blocks.iter().position(|b| b.contains(&x));
    let m = blocks.iter().flatten().copied().max().unwrap_or(0);
    for a in 1..=m {
        for b in a + 1..=m {
            for c in b + 1..=m {
                for d in c + 1..=m {
                    let (ba, bb, bc, bd) = (block_of(a), block_of(b), block_of(c), block_of(d));
                    if ba == bc && bb == bd && ba != bb {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Lexicographically first minimal factorization `w = t₁⋯t_k` into
/// reflections, returned as the roots of the `tᵢ` in positive-root order.
pub fn reflection_factorization(rs: &RootSystem, w: &WeylElement) -> Vec<Vec<i64>> {
    let mut rest = w.clone();
    let mut out = Vec::new();
    let mut len = rs.reflection_length(w);
    while len > 0 {
        let (root, next) = rs
            .positive_roots()
            .iter()
            .find_map(|r| {
                let t = rs.reflection(r).unwrap();
                let next = t.compose(&rest);
                (rs.reflection_length(&next) + 1 == len).then(|| (r.clone(), next))
            })
            .expect("some reflection shortens a nontrivial element");
        out.push(root);
        rest = next;
        len -= 1;
    }
    out
}

pub fn format_factorization(roots: &[Vec<i64>]) -> String {
    if roots.is_empty() {
        return "e".to_string();
    }
    roots
        .iter()
        .map(|r| {
            let inner: Vec<String> = r.iter().map(|x| x.to_string()).collect();
            format!("t[{}]", inner.join(","))
        })
        .collect::<Vec<_>>()
        .join("*")
}

/// `∏ (h + dᵢ) / dᵢ` over the degrees of the Weyl group.
pub fn w_catalan(t: crate::root_system::DynkinType) -> u64 {
    let h = t.coxeter_number();
    let degrees = t.degrees();
    let num: u128 = degrees.iter().map(|&d| (h + d) as u128).product();
    let den: u128 = degrees.iter().map(|&d| d as u128).product();
    assert_eq!(num % den, 0);
    (num / den) as u64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::Quiver;
    use crate::root_system::DynkinType;

    fn lattice(t: &str) -> NcLattice {
        NcLattice::for_quiver(&Quiver::standard(t.parse().unwrap())).unwrap()
    }

    #[test]
    fn small_counts() {
        assert_eq!(lattice("A1").len(), 2);
        assert_eq!(lattice("A2").len(), 5);
        assert_eq!(lattice("A3").len(), 14);
    }

    #[test]
    fn catalan_formula_values() {
        let expect = [
            ("A1", 2),
            ("A2", 5),
            ("A3", 14),
            ("A4", 42),
            ("D4", 50),
            ("D5", 182),
            ("E6", 833),
        ];
        for (t, n) in expect {
            assert_eq!(w_catalan(t.parse().unwrap()), n, "{t}");
        }
        assert_eq!(w_catalan(DynkinType::e(7)), 4160);
        assert_eq!(w_catalan(DynkinType::e(8)), 25080);
    }

    #[test]
    fn rejects_non_coxeter() {
        let rs = RootSystem::new(DynkinType::a(2));
        let s = rs.simple_reflection(0);
        assert!(matches!(
            enumerate_nc(&rs, &s),
            Err(Error::NotCoxeter { .. })
        ));
    }

    #[test]
    fn a2_partitions_match_the_figure() {
        let l = lattice("A2");
        let labels: Vec<String> = (0..l.len()).map(|i| l.label(i)).collect();
        assert_eq!(l.label(l.bottom()), "(1),(2),(3)");
        assert_eq!(l.label(l.top()), "(1,2,3)");
        for atom in ["(1,2),(3)", "(1),(2,3)", "(1,3),(2)"] {
            assert!(
                labels.contains(&atom.to_string()),
                "{atom} missing from {labels:?}"
            );
        }
        assert_eq!(l.covers().len(), 6);
    }

    #[test]
    fn two_atoms_of_a2_are_incomparable_and_join_to_top() {
        let l = lattice("A2");
        let atoms: Vec<usize> = (0..l.len()).filter(|&i| l.length(i) == 1).collect();
        assert_eq!(atoms.len(), 3);
        for &a in &atoms {
            for &b in &atoms {
                if a != b {
                    assert!(!l.leq(a, b));
                    assert!(!nc_leq(l.root_system(), &l.element(a), &l.element(b)).unwrap());
                    assert_eq!(l.join(a, b), l.top());
                    assert_eq!(l.meet(a, b), l.bottom());
                }
            }
        }
    }

    #[test]
    fn bounded_lattice_laws() {
        let l = lattice("A3");
        for w in 0..l.len() {
            assert_eq!(l.meet(w, l.bottom()), l.bottom());
            assert_eq!(l.join(w, l.top()), l.top());
            assert_eq!(l.meet(w, w), w);
            assert_eq!(l.join(w, w), w);
        }
    }

    #[test]
    fn element_api_checks_coxeter() {
        let l2 = lattice("A2");
        let rs = l2.root_system().clone();
        let other_c = rs.coxeter_from_order(&[0, 1]);
        let other = NcLattice::new(&rs, &other_c).unwrap();
        let u = l2.element(l2.bottom());
        let w = other.element(other.top());
        assert_eq!(nc_leq(&rs, &u, &w), Err(Error::CoxeterMismatch));
        assert!(l2.nc_meet(&u, &w).is_err());
        assert!(NcElement::new(&rs, other_c.clone(), l2.coxeter().clone()).is_err());
        assert!(NcElement::new(&rs, l2.coxeter().clone(), l2.coxeter().clone()).is_ok());
    }

    #[test]
    fn set_partition_requires_type_a() {
        let rs = RootSystem::new(DynkinType::d(4));
        assert!(matches!(
            nc_to_set_partition(&rs, &WeylElement::identity(4)),
            Err(Error::NotTypeA(_))
        ));
    }

    #[test]
    fn partition_blocks_track_length() {
        for t in ["A3", "A4"] {
            let l = lattice(t);
            let n = l.root_system().rank();
            let mut seen = HashSet::new();
            for i in 0..l.len() {
                let p = nc_to_set_partition(l.root_system(), &l.elements()[i]).unwrap();
                assert!(is_noncrossing(&p), "{p:?}");
                assert_eq!(p.len(), n + 1 - l.length(i));
                assert!(seen.insert(p));
            }
        }
    }

    #[test]
    fn crossing_detection() {
        assert!(!is_noncrossing(&[vec![1, 3], vec![2, 4]]));
        assert!(is_noncrossing(&[vec![1, 4], vec![2, 3]]));
    }

    #[test]
    fn factorization_labels_round_trip() {
        let l = lattice("D4");
        let rs = l.root_system();
        for (i, w) in l.elements().iter().enumerate() {
            let f = reflection_factorization(rs, w);
            assert_eq!(f.len(), l.length(i));
            let prod = f.iter().fold(WeylElement::identity(4), |acc, r| {
                acc.compose(&rs.reflection(r).unwrap())
            });
            assert_eq!(&prod, w);
        }
        assert_eq!(l.label(l.bottom()), "e");
    }

    #[test]
    fn complement_stays_in_interval() {
        let l = lattice("D4");
        for i in 0..l.len() {
            let k = l.complement(i).expect("complement in NC");
            assert_eq!(l.length(i) + l.length(k), 4);
        }
    }
}
