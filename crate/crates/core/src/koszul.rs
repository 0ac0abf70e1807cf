//! Bounded complexes of free modules over `ℚ[x₁, …, xₙ]`, Koszul complexes
//! and their homology after evaluation at a rational point.
//!
//! Grading is homological: `d_n` goes from degree `n` to degree `n − 1`, and
//! `cone(R --f--> R)` sits in degrees 1 and 0.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::field::{parse_rational, Rational};
use crate::linalg::Matrix;
use crate::poly::{Poly, PolyRing};
use crate::quiver::DimVector;
use crate::rep::TreeModule;

/// One rational value per ring variable.
pub type RationalPoint = Vec<Rational>;

type PolyMatrix = Matrix<Poly<Rational>>;

/// A bounded complex of finitely generated free modules.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeComplex {
    ring: PolyRing,
    low: i64,
    ranks: Vec<usize>,
    /// `diffs[k]` is `d_{low+k+1}`, of shape `ranks[k] × ranks[k+1]`.
    diffs: Vec<PolyMatrix>,
}

impl FreeComplex {
    /// Checks shapes and that consecutive differentials compose to zero.
    pub fn new(
        ring: PolyRing,
        low: i64,
        ranks: Vec<usize>,
        diffs: Vec<PolyMatrix>,
    ) -> Result<Self> {
        if diffs.len() + 1 != ranks.len().max(1) {
            return Err(Error::Shape(format!(
                "{} differentials for {} degrees",
                diffs.len(),
                ranks.len()
            )));
        }
        for (k, d) in diffs.iter().enumerate() {
            if d.shape() != (ranks[k], ranks[k + 1]) {
                return Err(Error::Shape(format!(
                    "differential out of degree {} has shape {:?}, expected {:?}",
                    low + k as i64 + 1,
                    d.shape(),
                    (ranks[k], ranks[k + 1])
                )));
            }
            for p in d.entries() {
                if p.var_bound() > ring.var_count() {
                    return Err(Error::RingMismatch(
                        "entry uses a variable outside the ring".into(),
                    ));
                }
            }
        }
        for k in 1..diffs.len() {
            if !diffs[k - 1].mul(&diffs[k]).is_zero() {
                return Err(Error::NotAComplex(low + k as i64 + 1));
            }
        }
        Ok(FreeComplex {
            ring,
            low,
            ranks,
            diffs,
        })
    }

    /// `R` in degree 0.
    pub fn unit(ring: &PolyRing) -> Self {
        FreeComplex {
            ring: ring.clone(),
            low: 0,
            ranks: vec![1],
            diffs: Vec::new(),
        }
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    /// Lowest degree carrying a basis.
    pub fn low(&self) -> i64 {
        self.low
    }

    pub fn high(&self) -> i64 {
        self.low + self.ranks.len() as i64 - 1
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i64> {
        self.low..=self.high()
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn rank(&self, n: i64) -> usize {
        usize::try_from(n - self.low)
            .ok()
            .and_then(|k| self.ranks.get(k).copied())
            .unwrap_or(0)
    }

    /// `d_n`, or `None` outside the range where both ends may be nonzero.
    pub fn differential(&self, n: i64) -> Option<&PolyMatrix> {
        usize::try_from(n - self.low - 1)
            .ok()
            .and_then(|k| self.diffs.get(k))
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.degrees()
            .map(|n| if n % 2 == 0 { 1 } else { -1 } * self.rank(n) as i64)
            .sum()
    }
}

/// `R --f--> R` in degrees 1 and 0.
pub fn cone_of_scalar(ring: &PolyRing, f: Poly<Rational>) -> Result<FreeComplex> {
    FreeComplex::new(
        ring.clone(),
        0,
        vec![1, 1],
        vec![Matrix::from_fn(1, 1, |_, _| f.clone())],
    )
}

/// Total complex of `C ⊗ D` with `d(a ⊗ b) = da ⊗ b + (−1)^p a ⊗ db` for
/// `a` in degree `p`. The basis of degree `n` lists the blocks `C_p ⊗ D_q`
/// by increasing `p`, each in Kronecker order.
pub fn tensor(c: &FreeComplex, d: &FreeComplex) -> Result<FreeComplex> {
    if c.ring != d.ring {
        return Err(Error::RingMismatch(format!(
            "({}) vs ({})",
            c.ring.vars().join(","),
            d.ring.vars().join(",")
        )));
    }
    let low = c.low + d.low;
    let high = c.high() + d.high();
    let blocks = |n: i64| -> Vec<(i64, i64)> {
        c.degrees()
            .map(|p| (p, n - p))
            .filter(|&(p, q)| c.rank(p) > 0 && d.rank(q) > 0)
            .collect()
    };
    let ranks: Vec<usize> = (low..=high)
        .map(|n| blocks(n).iter().map(|&(p, q)| c.rank(p) * d.rank(q)).sum())
        .collect();
    let mut diffs = Vec::new();
    for n in low + 1..=high {
        let (src, dst) = (blocks(n), blocks(n - 1));
        let offsets = |bs: &[(i64, i64)]| {
            let mut acc = 0;
            bs.iter()
                .map(|&(p, q)| {
                    let o = acc;
                    acc += c.rank(p) * d.rank(q);
                    ((p, q), o)
                })
                .collect::<Vec<_>>()
        };
        let (so, dof) = (offsets(&src), offsets(&dst));
        let mut m: PolyMatrix =
            Matrix::zeros(ranks[(n - 1 - low) as usize], ranks[(n - low) as usize]);
        let find = |p: i64, q: i64| dof.iter().find(|(b, _)| *b == (p, q)).map(|&(_, o)| o);
        let mut place = |block: &PolyMatrix, r0: usize, c0: usize| {
            for i in 0..block.rows() {
                for j in 0..block.cols() {
                    m.set(r0 + i, c0 + j, block.get(i, j).clone());
                }
            }
        };
        for &((p, q), col) in &so {
            if let (Some(dc), Some(row)) = (c.differential(p), find(p - 1, q)) {
                place(&dc.kron(&Matrix::identity(d.rank(q))), row, col);
            }
            if let (Some(dd), Some(row)) = (d.differential(q), find(p, q - 1)) {
                let mut b = Matrix::<Poly<Rational>>::identity(c.rank(p)).kron(dd);
                if p.rem_euclid(2) == 1 {
                    b = -&b;
                }
                place(&b, row, col);
            }
        }
        diffs.push(m);
    }
    FreeComplex::new(c.ring.clone(), low, ranks, diffs)
}

/// `K(f₁, …, f_r) = cone(f₁) ⊗ … ⊗ cone(f_r)`; the empty list gives the unit.
pub fn koszul_complex(ring: &PolyRing, generators: &[Poly<Rational>]) -> Result<FreeComplex> {
    match generators.split_first() {
        None => Ok(FreeComplex::unit(ring)),
        Some((f, rest)) => rest
            .iter()
            .try_fold(cone_of_scalar(ring, f.clone())?, |acc, g| {
                tensor(&acc, &cone_of_scalar(ring, g.clone())?)
            }),
    }
}

/// A complex of finite-dimensional ℚ-vector spaces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvaluatedComplex {
    pub low: i64,
    pub ranks: Vec<usize>,
    pub diffs: Vec<Matrix<Rational>>,
}

impl EvaluatedComplex {
    pub fn is_zero(&self) -> bool {
        self.diffs.iter().all(Matrix::is_zero)
    }
}

/// Substitutes `point` into every differential.
pub fn evaluate(c: &FreeComplex, point: &[Rational]) -> Result<EvaluatedComplex> {
    if point.len() != c.ring.var_count() {
        return Err(Error::Shape(format!(
            "point has {} coordinates for a ring in {} variables",
            point.len(),
            c.ring.var_count()
        )));
    }
    let diffs = c
        .diffs
        .iter()
        .map(|d| {
            let entries = d
                .entries()
                .iter()
                .map(|p| p.eval(point))
                .collect::<Result<Vec<_>>>()?;
            Ok(Matrix::from_fn(d.rows(), d.cols(), |i, j| {
                entries[i * d.cols() + j].clone()
            }))
        })
        .collect::<Result<_>>()?;
    Ok(EvaluatedComplex {
        low: c.low,
        ranks: c.ranks.clone(),
        diffs,
    })
}

/// `dim ker d_n − rank d_{n+1}` for every degree, lowest first.
pub fn homology_dims(c: &EvaluatedComplex) -> Result<Vec<usize>> {
    for k in 1..c.diffs.len() {
        if !c.diffs[k - 1].mul(&c.diffs[k]).is_zero() {
            return Err(Error::NotAComplex(c.low + k as i64 + 1));
        }
    }
    let ranks: Vec<usize> = c.diffs.iter().map(Matrix::rank).collect();
    Ok((0..c.ranks.len())
        .map(|k| {
            let out = if k > 0 { ranks[k - 1] } else { 0 };
            let inc = ranks.get(k).copied().unwrap_or(0);
            c.ranks[k] - out - inc
        })
        .collect())
}

/// Homology of `K ⊗ M̃` at `point`, as one dimension vector per degree from
/// `K.low()` upward. Vertex `v` in degree `n` carries `K_n ⊗ ℚ^{dim_v}` with
/// differential `d_n ⊗ 1`; arrows act by `1 ⊗ M_a`.
pub fn koszul_tensor_module(
    k: &FreeComplex,
    m: &TreeModule,
    point: &[Rational],
) -> Result<Vec<DimVector>> {
    let ev = evaluate(k, point)?;
    let dims = m.dim();
    let maps: Vec<Matrix<Rational>> = m.maps().iter().map(|a| a.to_field()).collect();
    let per_vertex: Vec<Vec<usize>> = dims
        .iter()
        .map(|&dv| {
            let id = Matrix::<Rational>::identity(dv as usize);
            let local = EvaluatedComplex {
                low: ev.low,
                ranks: ev.ranks.iter().map(|r| r * dv as usize).collect(),
                diffs: ev.diffs.iter().map(|d| d.kron(&id)).collect(),
            };
            homology_dims(&local)
        })
        .collect::<Result<_>>()?;
    // each arrow is a chain map between the vertex complexes
    for (a, &(s, t)) in maps.iter().zip(m.quiver().arrows()) {
        for (kk, d) in ev.diffs.iter().enumerate() {
            let lhs = d
                .kron(&Matrix::identity(dims[t] as usize))
                .mul(&Matrix::identity(ev.ranks[kk + 1]).kron(a));
            let rhs = Matrix::identity(ev.ranks[kk])
                .kron(a)
                .mul(&d.kron(&Matrix::identity(dims[s] as usize)));
            assert_eq!(lhs, rhs);
        }
    }
    Ok((0..ev.ranks.len())
        .map(|deg| per_vertex.iter().map(|h| h[deg] as i64).collect())
        .collect())
}

/// Parses `a,b,…` with integer or `p/q` coordinates.
pub fn parse_point(s: &str) -> Result<RationalPoint> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    let mut pos = 0;
    s.split(',')
        .map(|part| {
            let here = pos;
            pos += part.len() + 1;
            parse_rational(part).ok_or_else(|| Error::Parse {
                pos: here,
                msg: format!("'{}' is not a rational number", part.trim()),
            })
        })
        .collect()
}

/// Whether the point lies on the zero set of every generator.
pub fn vanishes_at(generators: &[Poly<Rational>], point: &[Rational]) -> Result<bool> {
    for f in generators {
        if !f.eval(point)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}
