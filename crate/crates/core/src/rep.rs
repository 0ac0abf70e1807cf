//! Quiver representations over exact fields.
//!
//! A [`FieldRep`] stores one matrix per arrow, in the arrow order of its
//! [`Quiver`]; the matrix of an arrow `i → j` has shape `dim[j] × dim[i]`.
//! Hom and Ext are read off the linear map
//!
//! ```text
//! δ : ⊕ᵢ Hom(Mᵢ, Nᵢ) → ⊕_{a: i→j} Hom(Mᵢ, Nⱼ),   δ(φ)_a = N_a φᵢ − φⱼ M_a
//! ```
//!
//! whose kernel is `Hom(M, N)` and whose cokernel is `Ext¹(M, N)`.
//!
//! [`TreeModule`] is the integral 0/1 realisation of an indecomposable, built
//! by reflection functors and base-changed to any field with
//! [`TreeModule::base_change`].

use std::collections::{HashMap, HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::field::{Field, FiniteField, Rational};
use crate::linalg::Matrix;
use crate::quiver::{DimVector, Quiver};
use crate::root_system::RootSystem;

/// States explored when looking for a 0/1 basis of a tree module.
const TREE_SEARCH_BUDGET: usize = 200_000;

/// A morphism of representations: one matrix per vertex.
pub type Morphism<F> = Vec<Matrix<F>>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldRep<F> {
    quiver: Quiver,
    dim: DimVector,
    maps: Vec<Matrix<F>>,
}

impl<F: Field> FieldRep<F> {
    pub fn new(quiver: Quiver, dim: DimVector, maps: Vec<Matrix<F>>) -> Result<Self> {
        if dim.len() != quiver.vertex_count() || dim.iter().any(|&d| d < 0) {
            return Err(Error::Shape(format!("bad dimension vector {dim:?}")));
        }
        if maps.len() != quiver.arrows().len() {
            return Err(Error::Shape(format!(
                "{} matrices for {} arrows",
                maps.len(),
                quiver.arrows().len()
            )));
        }
        for (m, &(s, t)) in maps.iter().zip(quiver.arrows()) {
            if m.shape() != (dim[t] as usize, dim[s] as usize) {
                return Err(Error::Shape(format!(
                    "arrow {}>{} needs a {}x{} matrix, got {}x{}",
                    s + 1,
                    t + 1,
                    dim[t],
                    dim[s],
                    m.rows(),
                    m.cols()
                )));
            }
        }
        Ok(FieldRep { quiver, dim, maps })
    }

    pub fn zero(quiver: &Quiver) -> Self {
        let n = quiver.vertex_count();
        let maps = quiver
            .arrows()
            .iter()
            .map(|_| Matrix::zeros(0, 0))
            .collect();
        FieldRep {
            quiver: quiver.clone(),
            dim: vec![0; n],
            maps,
        }
    }

    /// The simple representation at vertex `v`.
    pub fn simple(quiver: &Quiver, v: usize) -> Self {
        let mut dim = vec![0; quiver.vertex_count()];
        dim[v] = 1;
        Self::thin(quiver, &dim)
    }

    /// Representation with `k` or `0` at each vertex and identity maps
    /// wherever both ends are nonzero. `dim` must be a 0/1 vector.
    pub fn thin(quiver: &Quiver, dim: &[i64]) -> Self {
        assert!(dim.iter().all(|&d| d == 0 || d == 1));
        let maps = quiver
            .arrows()
            .iter()
            .map(|&(s, t)| Matrix::from_fn(dim[t] as usize, dim[s] as usize, |_, _| F::one()))
            .collect();
        FieldRep {
            quiver: quiver.clone(),
            dim: dim.to_vec(),
            maps,
        }
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn dim(&self) -> &DimVector {
        &self.dim
    }

    pub fn maps(&self) -> &[Matrix<F>] {
        &self.maps
    }

    pub fn total_dim(&self) -> usize {
        self.dim.iter().sum::<i64>() as usize
    }

    pub fn is_zero(&self) -> bool {
        self.dim.iter().all(|&d| d == 0)
    }

    fn d(&self, v: usize) -> usize {
        self.dim[v] as usize
    }

    fn check_compatible(&self, other: &FieldRep<F>) -> Result<()> {
        if self.quiver != other.quiver {
            return Err(Error::Shape("representations of different quivers".into()));
        }
        Ok(())
    }

    /// The matrix of `δ` together with the column offsets of each vertex block.
    fn hom_system(m: &FieldRep<F>, n: &FieldRep<F>) -> (Matrix<F>, Vec<usize>) {
        let q = &m.quiver;
        let verts = q.vertex_count();
        let mut offsets = Vec::with_capacity(verts + 1);
        let mut acc = 0;
        for v in 0..verts {
            offsets.push(acc);
            acc += n.d(v) * m.d(v);
        }
        offsets.push(acc);
        let unknowns = acc;
        let eqs: usize = q.arrows().iter().map(|&(s, t)| n.d(t) * m.d(s)).sum();
        let mut sys: Matrix<F> = Matrix::zeros(eqs, unknowns);
        let mut row = 0;
        for (a, &(s, t)) in q.arrows().iter().enumerate() {
            let (ma, na) = (&m.maps[a], &n.maps[a]);
            // (N_a φ_s − φ_t M_a)[r, c]
            for r in 0..n.d(t) {
                for c in 0..m.d(s) {
                    for k in 0..n.d(s) {
                        let var = offsets[s] + k * m.d(s) + c;
                        let v = sys.get(row, var).clone() + na.get(r, k).clone();
                        sys.set(row, var, v);
                    }
                    for k in 0..m.d(t) {
                        let var = offsets[t] + r * m.d(t) + k;
                        let v = sys.get(row, var).clone() - ma.get(k, c).clone();
                        sys.set(row, var, v);
                    }
                    row += 1;
                }
            }
        }
        (sys, offsets)
    }

    fn unpack_morphism(
        m: &FieldRep<F>,
        n: &FieldRep<F>,
        offsets: &[usize],
        x: &[F],
    ) -> Morphism<F> {
        (0..m.quiver.vertex_count())
            .map(|v| {
                Matrix::from_fn(n.d(v), m.d(v), |r, c| {
                    x[offsets[v] + r * m.d(v) + c].clone()
                })
            })
            .collect()
    }

    /// A basis of `Hom(self, other)`.
    pub fn hom_basis(&self, other: &FieldRep<F>) -> Result<Vec<Morphism<F>>> {
        self.check_compatible(other)?;
        let (sys, offsets) = Self::hom_system(self, other);
        let null = sys.nullspace();
        Ok((0..null.cols())
            .map(|k| Self::unpack_morphism(self, other, &offsets, &null.col(k)))
            .collect())
    }

    pub fn hom_dim(&self, other: &FieldRep<F>) -> Result<usize> {
        self.check_compatible(other)?;
        let (sys, _) = Self::hom_system(self, other);
        Ok(sys.cols() - sys.rank())
    }

    /// `dim Ext¹` by the hereditary identity `hom − ⟨dim M, dim N⟩`.
    pub fn ext_dim(&self, other: &FieldRep<F>) -> Result<usize> {
        let hom = self.hom_dim(other)? as i64;
        let euler = self.quiver.euler_form(&self.dim, &other.dim)?;
        let ext = hom - euler;
        assert!(ext >= 0, "negative Ext dimension");
        Ok(ext as usize)
    }

    /// `dim Ext¹` as the cokernel of `δ`, i.e. from the standard projective
    /// presentation. Independent of the Euler form.
    pub fn ext_dim_presentation(&self, other: &FieldRep<F>) -> Result<usize> {
        self.check_compatible(other)?;
        let (sys, _) = Self::hom_system(self, other);
        Ok(sys.rows() - sys.rank())
    }

    /// Cocycles `(c_a)_a` whose classes form a basis of `Ext¹(self, other)`.
    /// Each has a single nonzero entry equal to one.
    pub fn ext_cocycle_basis(&self, other: &FieldRep<F>) -> Result<Vec<Vec<Matrix<F>>>> {
        self.check_compatible(other)?;
        let (sys, _) = Self::hom_system(self, other);
        let comp = sys.complement_coordinates();
        let mut out = Vec::with_capacity(comp.len());
        for idx in comp {
            let mut flat = vec![F::zero(); sys.rows()];
            flat[idx] = F::one();
            out.push(self.unpack_cocycle(other, &flat));
        }
        Ok(out)
    }

    fn unpack_cocycle(&self, other: &FieldRep<F>, flat: &[F]) -> Vec<Matrix<F>> {
        let mut pos = 0;
        self.quiver
            .arrows()
            .iter()
            .map(|&(s, t)| {
                let (r, c) = (other.d(t), self.d(s));
                let m = Matrix::from_fn(r, c, |i, j| flat[pos + i * c + j].clone());
                pos += r * c;
                m
            })
            .collect()
    }

    /// Middle term `E` of the extension `0 → other → E → self → 0` given by a
    /// cocycle `c_a : self_{s(a)} → other_{t(a)}`.
    pub fn extension(&self, other: &FieldRep<F>, cocycle: &[Matrix<F>]) -> Result<FieldRep<F>> {
        self.check_compatible(other)?;
        let dim: DimVector = self
            .dim
            .iter()
            .zip(&other.dim)
            .map(|(a, b)| a + b)
            .collect();
        let maps = self
            .quiver
            .arrows()
            .iter()
            .enumerate()
            .map(|(a, &(s, t))| {
                let top = Matrix::hstack(other.d(t), &[other.maps[a].clone(), cocycle[a].clone()]);
                let bottom = Matrix::hstack(
                    self.d(t),
                    &[Matrix::zeros(self.d(t), other.d(s)), self.maps[a].clone()],
                );
                Matrix::vstack(other.d(s) + self.d(s), &[top, bottom])
            })
            .collect();
        FieldRep::new(self.quiver.clone(), dim, maps)
    }

    pub fn direct_sum(&self, other: &FieldRep<F>) -> Result<FieldRep<F>> {
        let zero: Vec<Matrix<F>> = self
            .quiver
            .arrows()
            .iter()
            .map(|&(s, t)| Matrix::zeros(other.d(t), self.d(s)))
            .collect();
        self.extension(other, &zero)
    }

    pub fn is_morphism(&self, other: &FieldRep<F>, phi: &Morphism<F>) -> bool {
        self.quiver
            .arrows()
            .iter()
            .enumerate()
            .all(|(a, &(s, t))| other.maps[a].mul(&phi[s]) == phi[t].mul(&self.maps[a]))
    }

    /// Subrepresentation spanned at each vertex by the columns of `basis[v]`
    /// (which must be linearly independent and invariant under the arrows).
    pub fn subrep(&self, basis: &[Matrix<F>]) -> FieldRep<F> {
        let dim: DimVector = basis.iter().map(|b| b.cols() as i64).collect();
        let maps = self
            .quiver
            .arrows()
            .iter()
            .enumerate()
            .map(|(a, &(s, t))| {
                let img = self.maps[a].mul(&basis[s]);
                basis[t].solve(&img).expect("subspace is not invariant")
            })
            .collect();
        FieldRep {
            quiver: self.quiver.clone(),
            dim,
            maps,
        }
    }

    /// Quotient by the subrepresentation spanned by the columns of `sub[v]`.
    /// The quotient basis at each vertex is a set of standard coordinates.
    pub fn quotient(&self, sub: &[Matrix<F>]) -> FieldRep<F> {
        let mut proj = Vec::with_capacity(sub.len());
        let mut section = Vec::with_capacity(sub.len());
        for (v, s) in sub.iter().enumerate() {
            let n = self.d(v);
            let span = s.column_basis();
            let comp = span.complement_coordinates();
            let ident = Matrix::<F>::identity(n);
            let sec = ident.select_cols(&comp);
            let full = Matrix::hstack(n, &[span.clone(), sec.clone()]);
            let inv = full.inverse().expect("basis extension is invertible");
            let rows: Vec<usize> = (span.cols()..n).collect();
            proj.push(inv.select_rows(&rows));
            section.push(sec);
        }
        let dim: DimVector = section.iter().map(|s| s.cols() as i64).collect();
        let maps = self
            .quiver
            .arrows()
            .iter()
            .enumerate()
            .map(|(a, &(s, t))| proj[t].mul(&self.maps[a]).mul(&section[s]))
            .collect();
        FieldRep {
            quiver: self.quiver.clone(),
            dim,
            maps,
        }
    }

    pub fn kernel(&self, other: &FieldRep<F>, phi: &Morphism<F>) -> FieldRep<F> {
        debug_assert!(self.is_morphism(other, phi));
        let basis: Vec<Matrix<F>> = phi.iter().map(|p| p.nullspace()).collect();
        self.subrep(&basis)
    }

    pub fn cokernel(&self, other: &FieldRep<F>, phi: &Morphism<F>) -> FieldRep<F> {
        debug_assert!(self.is_morphism(other, phi));
        other.quotient(phi)
    }

    pub fn image(&self, other: &FieldRep<F>, phi: &Morphism<F>) -> FieldRep<F> {
        let basis: Vec<Matrix<F>> = phi.iter().map(|p| p.column_basis()).collect();
        other.subrep(&basis)
    }

    pub fn is_injective(phi: &Morphism<F>) -> bool {
        phi.iter().all(|p| p.rank() == p.cols())
    }

    pub fn compose(psi: &Morphism<F>, phi: &Morphism<F>) -> Morphism<F> {
        psi.iter().zip(phi).map(|(a, b)| a.mul(b)).collect()
    }

    pub fn end_dim(&self) -> usize {
        self.hom_dim(self).unwrap()
    }

    /// Reflection functor at a sink `k`: replaces `M_k` by the kernel of
    /// `⊕ M_i → M_k` and reverses the arrows at `k`.
    pub fn reflect_at_sink(&self, k: usize) -> FieldRep<F> {
        assert!(self.quiver.is_sink(k));
        let incoming: Vec<usize> = (0..self.maps.len())
            .filter(|&a| self.quiver.arrows()[a].1 == k)
            .collect();
        let blocks: Vec<Matrix<F>> = incoming.iter().map(|&a| self.maps[a].clone()).collect();
        let h = Matrix::hstack(self.d(k), &blocks);
        let ker = h.nullspace();
        let mut maps = self.maps.clone();
        let mut row = 0;
        for &a in &incoming {
            let s = self.quiver.arrows()[a].0;
            let rows: Vec<usize> = (row..row + self.d(s)).collect();
            maps[a] = ker.select_rows(&rows);
            row += self.d(s);
        }
        let mut dim = self.dim.clone();
        dim[k] = ker.cols() as i64;
        FieldRep {
            quiver: self.quiver.reflect_at(k),
            dim,
            maps,
        }
    }

    /// Reflection functor at a source `k`: replaces `M_k` by the cokernel of
    /// `M_k → ⊕ M_i` and reverses the arrows at `k`.
    pub fn reflect_at_source(&self, k: usize) -> FieldRep<F> {
        assert!(self.quiver.is_source(k));
        let outgoing: Vec<usize> = (0..self.maps.len())
            .filter(|&a| self.quiver.arrows()[a].0 == k)
            .collect();
        let blocks: Vec<Matrix<F>> = outgoing.iter().map(|&a| self.maps[a].clone()).collect();
        let total: usize = outgoing
            .iter()
            .map(|&a| self.d(self.quiver.arrows()[a].1))
            .sum();
        let g = Matrix::vstack(self.d(k), &blocks);
        let span = g.column_basis();
        let comp = span.complement_coordinates();
        let full = Matrix::hstack(
            total,
            &[span.clone(), Matrix::identity(total).select_cols(&comp)],
        );
        let inv = full.inverse().expect("basis extension is invertible");
        let rows: Vec<usize> = (span.cols()..total).collect();
        let proj = inv.select_rows(&rows);
        let mut maps = self.maps.clone();
        let mut col = 0;
        for &a in &outgoing {
            let t = self.quiver.arrows()[a].1;
            let cols: Vec<usize> = (col..col + self.d(t)).collect();
            maps[a] = proj.select_cols(&cols);
            col += self.d(t);
        }
        let mut dim = self.dim.clone();
        dim[k] = proj.rows() as i64;
        FieldRep {
            quiver: self.quiver.reflect_at(k),
            dim,
            maps,
        }
    }
}

impl<F: FiniteField> FieldRep<F> {
    /// Every element of `Hom(self, other)`, enumerated from a basis.
    pub fn all_morphisms(&self, other: &FieldRep<F>) -> Result<Vec<Morphism<F>>> {
        let basis = self.hom_basis(other)?;
        Ok(linear_combinations(&basis, &F::elements())
            .into_iter()
            .map(|coeffs| combine(&basis, &coeffs, &self.zero_morphism(other)))
            .collect())
    }

    /// Every extension class, as a cocycle (the zero class included).
    pub fn all_extension_cocycles(&self, other: &FieldRep<F>) -> Result<Vec<Vec<Matrix<F>>>> {
        let basis = self.ext_cocycle_basis(other)?;
        let zero: Vec<Matrix<F>> = self
            .quiver
            .arrows()
            .iter()
            .map(|&(s, t)| Matrix::zeros(other.d(t), self.d(s)))
            .collect();
        Ok(linear_combinations(&basis, &F::elements())
            .into_iter()
            .map(|coeffs| combine(&basis, &coeffs, &zero))
            .collect())
    }

    fn zero_morphism(&self, other: &FieldRep<F>) -> Morphism<F> {
        (0..self.quiver.vertex_count())
            .map(|v| Matrix::zeros(other.d(v), self.d(v)))
            .collect()
    }

    /// Krull–Schmidt decomposition. Splits along the Fitting decomposition of
    /// an endomorphism that is neither nilpotent nor invertible, searching the
    /// endomorphism algebra by increasing support; a representation with no
    /// such endomorphism is indecomposable.
    pub fn decompose(&self) -> Vec<FieldRep<F>> {
        if self.is_zero() {
            return Vec::new();
        }
        let basis = self.hom_basis(self).unwrap();
        if basis.len() == 1 {
            return vec![self.clone()];
        }
        let total = self.total_dim();
        let exp = self.dim.iter().copied().max().unwrap_or(0) as usize;
        let nonzero: Vec<F> = F::elements().into_iter().filter(|x| !x.is_zero()).collect();
        let zero = self.zero_morphism(self);
        for support in 1..=basis.len() {
            for subset in subsets_of_size(basis.len(), support) {
                for coeffs in tuples(&nonzero, support) {
                    let mut phi = zero.clone();
                    for (&b, c) in subset.iter().zip(&coeffs) {
                        phi = phi
                            .iter()
                            .zip(&basis[b])
                            .map(|(x, y)| x + &y.scale(c))
                            .collect();
                    }
                    let stable: Morphism<F> = phi.iter().map(|p| p.pow(exp)).collect();
                    let rank: usize = stable.iter().map(|p| p.rank()).sum();
                    if rank == 0 || rank == total {
                        continue;
                    }
                    let im: Vec<Matrix<F>> = stable.iter().map(|p| p.column_basis()).collect();
                    let ker: Vec<Matrix<F>> = stable.iter().map(|p| p.nullspace()).collect();
                    let mut out = self.subrep(&im).decompose();
                    out.extend(self.subrep(&ker).decompose());
                    return out;
                }
            }
        }
        vec![self.clone()]
    }

    /// Dimension vectors of the indecomposable summands, sorted.
    pub fn summand_dims(&self) -> Vec<DimVector> {
        let mut dims: Vec<DimVector> = self.decompose().into_iter().map(|r| r.dim).collect();
        dims.sort();
        dims
    }
}

fn combine<F: Field>(basis: &[Vec<Matrix<F>>], coeffs: &[F], zero: &[Matrix<F>]) -> Vec<Matrix<F>> {
    let mut acc = zero.to_vec();
    for (b, c) in basis.iter().zip(coeffs) {
        if c.is_zero() {
            continue;
        }
        acc = acc.iter().zip(b).map(|(x, y)| x + &y.scale(c)).collect();
    }
    acc
}

/// All coefficient vectors of length `basis.len()` over `elements`.
fn linear_combinations<T, F: Clone>(basis: &[T], elements: &[F]) -> Vec<Vec<F>> {
    tuples(elements, basis.len())
}

fn tuples<F: Clone>(elements: &[F], len: usize) -> Vec<Vec<F>> {
    let mut out = vec![Vec::with_capacity(len)];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                elements.iter().map(move |e| {
                    let mut p = prefix.clone();
                    p.push(e.clone());
                    p
                })
            })
            .collect();
    }
    out
}

fn subsets_of_size(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// An integral realisation of an indecomposable with 0/1 arrow matrices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TreeModule {
    quiver: Quiver,
    dim: DimVector,
    maps: Vec<Matrix<i64>>,
}

impl TreeModule {
    /// Builds the indecomposable of dimension vector `alpha` by reflection
    /// functors from a thin representation, then rescales basis vectors along
    /// the coefficient quiver so every nonzero entry is 1.
    pub fn new(quiver: &Quiver, alpha: &[i64]) -> Result<Self> {
        let rs = RootSystem::new(quiver.dynkin());
        if alpha.len() != rs.rank() || !rs.is_positive_root(alpha) {
            return Err(Error::NotARoot(alpha.to_vec()));
        }
        let path = reflection_path(&rs, quiver, alpha);
        let (start_q, start_dim) = match path.last() {
            Some(step) => (step.quiver.clone(), step.dim.clone()),
            None => (quiver.clone(), alpha.to_vec()),
        };
        let mut rep: FieldRep<Rational> = FieldRep::thin(&start_q, &start_dim);
        for step in path.iter().rev() {
            rep = if step.quiver.is_source(step.vertex) {
                rep.reflect_at_source(step.vertex)
            } else {
                rep.reflect_at_sink(step.vertex)
            };
            rep = normalize_entries(&rep)
                .or_else(|| search_tree_basis(&rep, TREE_SEARCH_BUDGET))
                .unwrap_or(rep);
        }
        debug_assert_eq!(&rep.quiver, quiver);
        debug_assert_eq!(rep.dim, alpha);
        let maps = rep
            .maps
            .iter()
            .map(|m| {
                m.map(|q| {
                    assert!(
                        q.is_integer(),
                        "non-integral entry {q} in tree module {alpha:?}"
                    );
                    i64::try_from(q.to_integer()).expect("entry fits in i64")
                })
            })
            .collect();
        Ok(TreeModule {
            quiver: quiver.clone(),
            dim: alpha.to_vec(),
            maps,
        })
    }

    pub fn zero(quiver: &Quiver) -> Self {
        TreeModule {
            quiver: quiver.clone(),
            dim: vec![0; quiver.vertex_count()],
            maps: quiver
                .arrows()
                .iter()
                .map(|_| Matrix::zeros(0, 0))
                .collect(),
        }
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn dim(&self) -> &DimVector {
        &self.dim
    }

    pub fn maps(&self) -> &[Matrix<i64>] {
        &self.maps
    }

    pub fn is_zero_one(&self) -> bool {
        self.maps
            .iter()
            .all(|m| m.entries().iter().all(|&x| x == 0 || x == 1))
    }

    /// Entry-wise reinterpretation in the field `F`.
    pub fn base_change<F: Field>(&self) -> FieldRep<F> {
        FieldRep {
            quiver: self.quiver.clone(),
            dim: self.dim.clone(),
            maps: self.maps.iter().map(|m| m.to_field()).collect(),
        }
    }
}

/// One step back from a target `(quiver, dim)`: the representation over
/// `quiver` is the reflection at `vertex` of the one over `quiver.reflect_at(vertex)`.
#[derive(Clone, Debug)]
struct ReflectionStep {
    vertex: usize,
    /// Orientation and dimension vector the step starts from.
    quiver: Quiver,
    dim: DimVector,
}

/// Shortest sequence of sink/source reflections from `(quiver, alpha)` to a
/// state with a 0/1 dimension vector. Step `i` records the state reached
/// after `i + 1` moves.
fn reflection_path(rs: &RootSystem, quiver: &Quiver, alpha: &[i64]) -> Vec<ReflectionStep> {
    let thin = |d: &[i64]| d.iter().all(|&x| x == 0 || x == 1);
    if thin(alpha) {
        return Vec::new();
    }
    type State = (Vec<(usize, usize)>, DimVector);
    let start: State = (quiver.arrows().to_vec(), alpha.to_vec());
    let mut parent: HashMap<State, (State, usize)> = HashMap::new();
    let mut seen: HashSet<State> = [start.clone()].into();
    let mut queue = VecDeque::from([start.clone()]);
    let n = rs.rank();
    while let Some(state) = queue.pop_front() {
        let q = Quiver::new(quiver.dynkin(), state.0.clone()).expect("valid orientation");
        for k in 0..n {
            if !(q.is_sink(k) || q.is_source(k)) {
                continue;
            }
            let cb = rs.cartan().mul_vec(&state.1);
            let mut next_dim = state.1.clone();
            next_dim[k] -= cb[k];
            if next_dim.iter().any(|&x| x < 0) {
                continue;
            }
            let next: State = (q.reflect_at(k).arrows().to_vec(), next_dim);
            if !seen.insert(next.clone()) {
                continue;
            }
            parent.insert(next.clone(), (state.clone(), k));
            if thin(&next.1) {
                let mut path = Vec::new();
                let mut cur = next;
                while cur != start {
                    let (prev, k) = parent[&cur].clone();
                    let q = Quiver::new(quiver.dynkin(), prev.0.clone()).unwrap();
                    path.push(ReflectionStep {
                        vertex: k,
                        quiver: q.reflect_at(k),
                        dim: cur.1.clone(),
                    });
                    cur = prev;
                }
                path.reverse();
                return path;
            }
            queue.push_back(next);
        }
    }
    panic!("no reflection path to a thin root from {alpha:?}");
}

fn nonzero_count<F: Field>(maps: &[Matrix<F>]) -> usize {
    maps.iter()
        .map(|m| m.entries().iter().filter(|x| !x.is_zero()).count())
        .sum()
}

/// Best-first search over elementary basis changes `b_j ← b_j ± b_i` at
/// single vertices, ordered by the number of nonzero entries, until the
/// coefficient quiver can be rescaled to 0/1 entries.
fn search_tree_basis<F: Field>(rep: &FieldRep<F>, budget: usize) -> Option<FieldRep<F>> {
    use std::cmp::Reverse;
    use std::collections::BinaryHeap;

    let q = rep.quiver().clone();
    let signs = [F::one(), -F::one()];
    let wrap = |maps: Vec<Matrix<F>>| FieldRep {
        quiver: q.clone(),
        dim: rep.dim().clone(),
        maps,
    };
    let mut seen: HashSet<Vec<Matrix<F>>> = HashSet::new();
    let mut arena: Vec<Vec<Matrix<F>>> = vec![rep.maps().to_vec()];
    let mut heap = BinaryHeap::new();
    seen.insert(rep.maps().to_vec());
    heap.push((Reverse(nonzero_count(rep.maps())), Reverse(0usize)));
    while let Some((_, Reverse(idx))) = heap.pop() {
        let maps = arena[idx].clone();
        if let Some(done) = normalize_entries(&wrap(maps.clone())) {
            return Some(done);
        }
        if seen.len() > budget {
            return None;
        }
        for v in 0..q.vertex_count() {
            let d = rep.d(v);
            for i in 0..d {
                for j in 0..d {
                    if i == j {
                        continue;
                    }
                    for lambda in &signs {
                        let cand: Vec<Matrix<F>> = q
                            .arrows()
                            .iter()
                            .zip(&maps)
                            .map(|(&(s, t), m)| {
                                let mut m = m.clone();
                                if s == v {
                                    // column j ← column j + λ·column i
                                    for r in 0..m.rows() {
                                        let x = m.get(r, j).clone()
                                            + lambda.clone() * m.get(r, i).clone();
                                        m.set(r, j, x);
                                    }
                                }
                                if t == v {
                                    // row i ← row i − λ·row j
                                    for c in 0..m.cols() {
                                        let x = m.get(i, c).clone()
                                            - lambda.clone() * m.get(j, c).clone();
                                        m.set(i, c, x);
                                    }
                                }
                                m
                            })
                            .collect();
                        if seen.insert(cand.clone()) {
                            heap.push((Reverse(nonzero_count(&cand)), Reverse(arena.len())));
                            arena.push(cand);
                        }
                    }
                }
            }
        }
    }
    None
}

/// Rescales basis vectors so that the entries along a spanning forest of the
/// coefficient quiver become 1. Returns `None` unless every entry ends up in
/// `{0, 1}`.
pub fn normalize_entries<F: Field>(rep: &FieldRep<F>) -> Option<FieldRep<F>> {
    let q = rep.quiver();
    let verts = q.vertex_count();
    let mut offset = vec![0usize; verts + 1];
    for v in 0..verts {
        offset[v + 1] = offset[v] + rep.d(v);
    }
    let nodes = offset[verts];
    // edges: (row node, col node, entry)
    let mut adj: Vec<Vec<(usize, usize, usize, usize, bool)>> = vec![Vec::new(); nodes];
    for (a, &(s, t)) in q.arrows().iter().enumerate() {
        let m = &rep.maps()[a];
        for r in 0..m.rows() {
            for c in 0..m.cols() {
                if !m.get(r, c).is_zero() {
                    let (rn, cn) = (offset[t] + r, offset[s] + c);
                    adj[rn].push((cn, a, r, c, true));
                    adj[cn].push((rn, a, r, c, false));
                }
            }
        }
    }
    // new entry = old · λ_col / λ_row
    let mut scale: Vec<Option<F>> = vec![None; nodes];
    for root in 0..nodes {
        if scale[root].is_some() {
            continue;
        }
        scale[root] = Some(F::one());
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            let su = scale[u].clone().unwrap();
            for &(v, a, r, c, u_is_row) in &adj[u] {
                if scale[v].is_some() {
                    continue;
                }
                let e = rep.maps()[a].get(r, c).clone();
                // want e·λ_col/λ_row = 1
                let sv = if u_is_row {
                    su.clone() * e.inv().unwrap()
                } else {
                    su.clone() * e
                };
                scale[v] = Some(sv);
                queue.push_back(v);
            }
        }
    }
    let scale: Vec<F> = scale.into_iter().map(Option::unwrap).collect();
    let maps: Vec<Matrix<F>> = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(a, &(s, t))| {
            let m = &rep.maps()[a];
            Matrix::from_fn(m.rows(), m.cols(), |r, c| {
                m.get(r, c).clone()
                    * scale[offset[s] + c].clone()
                    * scale[offset[t] + r].inv().unwrap()
            })
        })
        .collect();
    let ok = maps
        .iter()
        .all(|m| m.entries().iter().all(|x| x.is_zero() || x.is_one()));
    ok.then(|| FieldRep {
        quiver: q.clone(),
        dim: rep.dim().clone(),
        maps,
    })
}
