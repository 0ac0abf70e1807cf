//! Simply-laced root systems and their Weyl groups in root-basis coordinates.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::quiver::Quiver;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    D,
    E,
}

/// A simply-laced Dynkin type. Vertices follow Bourbaki numbering.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DynkinType {
    family: Family,
    rank: usize,
}

impl DynkinType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
        };
        if ok {
            Ok(DynkinType { family, rank })
        } else {
            Err(Error::InvalidType(format!("{family:?}{rank}")))
        }
    }

    pub fn a(rank: usize) -> Self {
        Self::new(Family::A, rank).expect("invalid rank for type A")
    }

    pub fn d(rank: usize) -> Self {
        Self::new(Family::D, rank).expect("invalid rank for type D")
    }

    pub fn e(rank: usize) -> Self {
        Self::new(Family::E, rank).expect("invalid rank for type E")
    }

    pub fn family(self) -> Family {
        self.family
    }

    pub fn rank(self) -> usize {
        self.rank
    }

    /// Undirected edges of the Dynkin diagram as 0-based vertex pairs `(i, j)`, `i < j`.
    pub fn edges(self) -> Vec<(usize, usize)> {
        let n = self.rank;
        match self.family {
            Family::A => (0..n - 1).map(|i| (i, i + 1)).collect(),
            Family::D => {
                let mut e: Vec<_> = (0..n - 2).map(|i| (i, i + 1)).collect();
                e.push((n - 3, n - 1));
                e
            }
            Family::E => {
                // 1-3-4-5-6(-7-8) with 2 attached to 4
                let mut e = vec![(0, 2), (1, 3), (2, 3)];
                e.extend((3..n - 1).map(|i| (i, i + 1)));
                e
            }
        }
    }

    /// Number of positive roots.
    pub fn positive_root_count(self) -> usize {
        let n = self.rank;
        match (self.family, n) {
            (Family::A, _) => n * (n + 1) / 2,
            (Family::D, _) => n * (n - 1),
            (Family::E, 6) => 36,
            (Family::E, 7) => 63,
            (Family::E, _) => 120,
        }
    }

    /// Degrees of the basic invariants of the Weyl group.
    pub fn degrees(self) -> Vec<u64> {
        let n = self.rank as u64;
        match (self.family, n) {
            (Family::A, _) => (2..=n + 1).collect(),
            (Family::D, _) => {
                let mut d: Vec<u64> = (1..n).map(|i| 2 * i).collect();
                d.push(n);
                d.sort_unstable();
                d
            }
            (Family::E, 6) => vec![2, 5, 6, 8, 9, 12],
            (Family::E, 7) => vec![2, 6, 8, 10, 12, 14, 18],
            (Family::E, _) => vec![2, 8, 12, 14, 18, 20, 24, 30],
        }
    }

    pub fn coxeter_number(self) -> u64 {
        *self.degrees().last().unwrap()
    }
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.family, self.rank)
    }
}

impl FromStr for DynkinType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidType(s.to_string());
        let mut chars = s.chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('D') => Family::D,
            Some('E') => Family::E,
            _ => return Err(bad()),
        };
        let rank: usize = chars.as_str().parse().map_err(|_| bad())?;
        DynkinType::new(family, rank)
    }
}

/// An element of the Weyl group, stored as its matrix on root coordinates
/// (columns are images of simple roots). Ordering is lexicographic on entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeylElement {
    mat: Matrix<i64>,
}

impl WeylElement {
    pub fn identity(rank: usize) -> Self {
        WeylElement {
            mat: Matrix::identity(rank),
        }
    }

    pub fn from_matrix(mat: Matrix<i64>) -> Self {
        assert_eq!(mat.rows(), mat.cols());
        WeylElement { mat }
    }

    pub fn matrix(&self) -> &Matrix<i64> {
        &self.mat
    }

    pub fn rank(&self) -> usize {
        self.mat.rows()
    }

    /// Group product; `self.compose(other)` acts as `other` first.
    pub fn compose(&self, other: &WeylElement) -> WeylElement {
        WeylElement {
            mat: self.mat.mul(&other.mat),
        }
    }

    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        self.mat.mul_vec(v)
    }

    pub fn is_identity(&self) -> bool {
        self.mat.is_identity()
    }
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    dynkin: DynkinType,
    cartan: Matrix<i64>,
    simple_roots: Vec<Vec<i64>>,
    positive_roots: Vec<Vec<i64>>,
    root_set: HashSet<Vec<i64>>,
}

impl RootSystem {
    /// Builds the root system, generating positive roots by closing the simple
    /// roots under simple reflections.
    pub fn new(dynkin: DynkinType) -> Self {
        let n = dynkin.rank();
        let mut cartan = Matrix::<i64>::identity(n).map(|&x| 2 * x);
        for (i, j) in dynkin.edges() {
            cartan.set(i, j, -1);
            cartan.set(j, i, -1);
        }
        let simple_roots: Vec<Vec<i64>> = (0..n).map(|i| unit(n, i)).collect();

        let mut seen: BTreeSet<Vec<i64>> = simple_roots.iter().cloned().collect();
        let mut queue: VecDeque<Vec<i64>> = simple_roots.iter().cloned().collect();
        while let Some(beta) = queue.pop_front() {
            let cb = cartan.mul_vec(&beta);
            for i in 0..n {
                let mut img = beta.clone();
                img[i] -= cb[i];
                if img.iter().all(|&x| x >= 0)
                    && img.iter().any(|&x| x > 0)
                    && seen.insert(img.clone())
                {
                    queue.push_back(img);
                }
            }
        }
        let mut positive_roots: Vec<Vec<i64>> = seen.into_iter().collect();
        positive_roots.sort_by_key(|r| (r.iter().sum::<i64>(), std::cmp::Reverse(r.clone())));
        let root_set = positive_roots.iter().cloned().collect();
        RootSystem {
            dynkin,
            cartan,
            simple_roots,
            positive_roots,
            root_set,
        }
    }

    pub fn dynkin(&self) -> DynkinType {
        self.dynkin
    }

    pub fn rank(&self) -> usize {
        self.dynkin.rank()
    }

    pub fn cartan(&self) -> &Matrix<i64> {
        &self.cartan
    }

    pub fn simple_roots(&self) -> &[Vec<i64>] {
        &self.simple_roots
    }

    /// Positive roots ordered by height, then reverse-lexicographically (so the
    /// simple roots come in vertex order).
    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.positive_roots
    }

    pub fn is_positive_root(&self, v: &[i64]) -> bool {
        self.root_set.contains(v)
    }

    pub fn is_root(&self, v: &[i64]) -> bool {
        let neg: Vec<i64> = v.iter().map(|x| -x).collect();
        self.is_positive_root(v) || self.is_positive_root(&neg)
    }

    /// Symmetric bilinear form `(u, v) = uᵀ C v`.
    pub fn form(&self, u: &[i64], v: &[i64]) -> i64 {
        u.iter()
            .zip(self.cartan.mul_vec(v))
            .map(|(a, b)| a * b)
            .sum()
    }

    /// The reflection `v ↦ v − (root, v)·root`.
    pub fn reflection(&self, root: &[i64]) -> Result<WeylElement> {
        if root.len() != self.rank() || !self.is_root(root) {
            return Err(Error::NotARoot(root.to_vec()));
        }
        let cb = self.cartan.mul_vec(root);
        let n = self.rank();
        let mat = Matrix::from_fn(n, n, |r, c| i64::from(r == c) - root[r] * cb[c]);
        Ok(WeylElement { mat })
    }

    pub fn simple_reflection(&self, i: usize) -> WeylElement {
        self.reflection(&self.simple_roots[i])
            .expect("simple roots are roots")
    }

    /// Reflections of all positive roots, in positive-root order.
    pub fn reflections(&self) -> Vec<WeylElement> {
        self.positive_roots
            .iter()
            .map(|r| self.reflection(r).expect("positive root"))
            .collect()
    }

    /// Absolute length: codimension of the fixed space, i.e. `rank(w − 1)`.
    pub fn reflection_length(&self, w: &WeylElement) -> usize {
        (w.matrix() - &Matrix::identity(self.rank())).rank_fraction_free()
    }

    /// `ℓ(u⁻¹w)`, computed as `rank(w − u)` without forming an inverse.
    pub fn relative_length(&self, u: &WeylElement, w: &WeylElement) -> usize {
        (w.matrix() - u.matrix()).rank_fraction_free()
    }

    /// Inverse via the invariance of the form: `w⁻¹ = C⁻¹ wᵀ C`.
    pub fn inverse(&self, w: &WeylElement) -> WeylElement {
        use crate::field::Rational;
        let c = self.cartan.to_field::<Rational>();
        let rhs = w
            .matrix()
            .transpose()
            .mul(&self.cartan)
            .to_field::<Rational>();
        let x = c.solve(&rhs).expect("Cartan matrix is invertible");
        let mat = x.map(|q| {
            assert!(q.is_integer(), "Weyl inverse must be integral");
            i64::try_from(q.to_integer()).expect("entry fits in i64")
        });
        debug_assert!(w.matrix().mul(&mat).is_identity());
        WeylElement { mat }
    }

    /// Checks that `w` permutes the roots.
    pub fn preserves_roots(&self, w: &WeylElement) -> bool {
        self.positive_roots
            .iter()
            .all(|r| self.is_root(&w.apply(r)))
    }

    /// Coxeter element attached to a quiver orientation: the product of all
    /// simple reflections with every arrow's target multiplied in before its
    /// source (sinks first).
    pub fn coxeter_element(&self, quiver: &Quiver) -> Result<WeylElement> {
        if quiver.dynkin() != self.dynkin {
            return Err(Error::InvalidQuiver(format!(
                "quiver of type {} used with root system {}",
                quiver.dynkin(),
                self.dynkin
            )));
        }
        Ok(self.coxeter_from_order(&quiver.sink_first_order()))
    }

    /// `s_{order[0]} · s_{order[1]} · …`
    pub fn coxeter_from_order(&self, order: &[usize]) -> WeylElement {
        order
            .iter()
            .fold(WeylElement::identity(self.rank()), |acc, &i| {
                acc.compose(&self.simple_reflection(i))
            })
    }
}

pub(crate) fn unit(n: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Brute-force shortest factorization into reflections.
    fn shortest_factorization(rs: &RootSystem, w: &WeylElement) -> usize {
        let refl = rs.reflections();
        let mut layer: HashSet<WeylElement> = [WeylElement::identity(rs.rank())].into();
        let mut seen = layer.clone();
        for k in 0..=rs.rank() {
            if layer.contains(w) {
                return k;
            }
            let mut next = HashSet::new();
            for x in &layer {
                for t in &refl {
                    let y = x.compose(t);
                    if seen.insert(y.clone()) {
                        next.insert(y);
                    }
                }
            }
            layer = next;
        }
        panic!("no factorization within rank steps");
    }

    #[test]
    fn parse_and_validate_types() {
        assert_eq!("A3".parse::<DynkinType>().unwrap(), DynkinType::a(3));
        assert_eq!("e6".parse::<DynkinType>().unwrap(), DynkinType::e(6));
        assert!("D3".parse::<DynkinType>().is_err());
        assert!("E9".parse::<DynkinType>().is_err());
        assert!("A0".parse::<DynkinType>().is_err());
        assert!("B2".parse::<DynkinType>().is_err());
        assert!("A".parse::<DynkinType>().is_err());
    }

    #[test]
    fn positive_root_counts() {
        assert_eq!(RootSystem::new(DynkinType::a(1)).positive_roots().len(), 1);
        assert_eq!(RootSystem::new(DynkinType::a(2)).positive_roots().len(), 3);
        assert_eq!(RootSystem::new(DynkinType::d(4)).positive_roots().len(), 12);
        for t in ["A5", "D5", "D6", "E6", "E7", "E8"] {
            let t: DynkinType = t.parse().unwrap();
            assert_eq!(
                RootSystem::new(t).positive_roots().len(),
                t.positive_root_count(),
                "{t}"
            );
        }
    }

    #[test]
    fn cartan_is_symmetric_simply_laced() {
        for t in ["A4", "D5", "E8"] {
            let rs = RootSystem::new(t.parse().unwrap());
            let c = rs.cartan();
            assert_eq!(c, &c.transpose());
            for i in 0..rs.rank() {
                for j in 0..rs.rank() {
                    let v = *c.get(i, j);
                    assert!(if i == j { v == 2 } else { v == 0 || v == -1 });
                }
            }
            // each positive root has squared length 2
            assert!(rs.positive_roots().iter().all(|r| rs.form(r, r) == 2));
        }
    }

    #[test]
    fn d4_highest_root() {
        let rs = RootSystem::new(DynkinType::d(4));
        assert_eq!(rs.positive_roots().last().unwrap(), &vec![1, 2, 1, 1]);
    }

    #[test]
    fn reflections_are_involutions_of_length_one() {
        let rs = RootSystem::new(DynkinType::a(2));
        let s1 = rs.simple_reflection(0);
        assert_eq!(s1.apply(&[1, 0]), vec![-1, 0]);
        // fixes the line perpendicular to α1, spanned by α1 + 2α2
        assert_eq!(s1.apply(&[1, 2]), vec![1, 2]);
        for r in rs.positive_roots() {
            let t = rs.reflection(r).unwrap();
            assert!(t.compose(&t).is_identity());
            assert_eq!(rs.reflection_length(&t), 1);
            assert!(rs.preserves_roots(&t));
        }
        assert_eq!(rs.reflection_length(&rs.reflection(&[1, 1]).unwrap()), 1);
        assert!(rs.reflection(&[1, -1]).is_err());
        assert!(rs.reflection(&[2, 0]).is_err());
    }

    #[test]
    fn reflection_length_matches_brute_force_on_a3() {
        let rs = RootSystem::new(DynkinType::a(3));
        let c = rs.coxeter_from_order(&[2, 1, 0]);
        assert_eq!(shortest_factorization(&rs, &c), 3);
        assert_eq!(rs.reflection_length(&c), 3);
        assert_eq!(rs.reflection_length(&WeylElement::identity(3)), 0);
        // a sample of products of two reflections
        let refl = rs.reflections();
        for a in &refl {
            for b in &refl {
                let w = a.compose(b);
                assert_eq!(rs.reflection_length(&w), shortest_factorization(&rs, &w));
            }
        }
    }

    #[test]
    fn inverse_is_exact() {
        let rs = RootSystem::new(DynkinType::e(6));
        let c = rs.coxeter_from_order(&[0, 1, 2, 3, 4, 5]);
        assert!(rs.inverse(&c).compose(&c).is_identity());
    }

    #[test]
    fn coxeter_element_from_orientation() {
        let rs = RootSystem::new(DynkinType::a(2));
        let q = Quiver::new(DynkinType::a(2), vec![(0, 1)]).unwrap();
        let c = rs.coxeter_element(&q).unwrap();
        let expected = rs.simple_reflection(1).compose(&rs.simple_reflection(0));
        assert_eq!(c, expected);
        assert_eq!(rs.reflection_length(&c), 2);

        let rs1 = RootSystem::new(DynkinType::a(1));
        let q1 = Quiver::standard(DynkinType::a(1));
        assert_eq!(rs1.coxeter_element(&q1).unwrap(), rs1.simple_reflection(0));

        let rs3 = RootSystem::new(DynkinType::a(3));
        let c3 = rs3
            .coxeter_element(&Quiver::standard(DynkinType::a(3)))
            .unwrap();
        assert_eq!(rs3.reflection_length(&c3), 3);

        assert!(rs3.coxeter_element(&q).is_err());
    }

    #[test]
    fn coxeter_order_is_conjugation_invariant_in_length() {
        for t in ["D4", "E6"] {
            let rs = RootSystem::new(t.parse().unwrap());
            let q = Quiver::standard(rs.dynkin());
            let c = rs.coxeter_element(&q).unwrap();
            assert_eq!(rs.reflection_length(&c), rs.rank());
            assert!(rs.preserves_roots(&c));
        }
    }
}
