//! Finite-dimensional left modules as bound quiver representations.

mod cover;
mod decompose;
mod hom;

use std::sync::Arc;

pub use cover::{
    cyclic_module, projective, projective_basis, projective_cover, radical, regular_module, right_multiplication, syzygy,
    CoverData,
};
pub use decompose::{
    complement, find_split_pair, is_indecomposable, is_isomorphic, strip_projectives, Indecomposability, IsoVerdict, NonIsoReason,
    SplitPair, Stripped,
};
pub use hom::{hom, HomSpace};

use crate::error::{Error, Result};
use crate::exactlin::{quotient_basis, Field, Matrix};
use crate::quiver::{Algebra, Path};

/// A representation: a vector space per vertex and a matrix per arrow.
#[derive(Clone, Debug)]
pub struct Representation {
    algebra: Arc<Algebra>,
    dims: Vec<usize>,
    maps: Vec<Matrix>,
}

impl PartialEq for Representation {
    fn eq(&self, other: &Self) -> bool {
        self.dims == other.dims && self.maps == other.maps && *self.algebra == *other.algebra
    }
}

impl Representation {
    /// Checks matrix shapes and every defining relation of the algebra.
    pub fn new(algebra: Arc<Algebra>, dims: Vec<usize>, maps: Vec<Matrix>) -> Result<Self> {
        let q = algebra.quiver();
        if dims.len() != q.num_vertices() || maps.len() != q.arrows().len() {
            return Err(Error::DimensionMismatch("representation does not match the quiver".into()));
        }
        for (arrow, m) in q.arrows().iter().zip(&maps) {
            if m.shape() != (dims[arrow.target], dims[arrow.source]) {
                return Err(Error::DimensionMismatch(format!(
                    "arrow {} needs a {}x{} matrix, got {}x{}",
                    arrow.name,
                    dims[arrow.target],
                    dims[arrow.source],
                    m.rows(),
                    m.cols()
                )));
            }
            if m.field() != algebra.field() {
                return Err(Error::DimensionMismatch(format!("arrow {} has entries from another field", arrow.name)));
            }
        }
        let rep = Representation { algebra, dims, maps };
        for r in rep.algebra.relations() {
            let (s, t) = (r.source(), r.target());
            let mut sum = Matrix::zeros(rep.field(), rep.dims[t], rep.dims[s]);
            for (c, p) in r.terms() {
                sum.add_assign(&rep.path_matrix(p).scale(c));
            }
            if !sum.is_zero() {
                let words: Vec<String> = r.terms().iter().map(|(_, p)| rep.algebra.display_path(p)).collect();
                return Err(Error::RelationViolated(words.join(" + ")));
            }
        }
        Ok(rep)
    }

    pub fn zero(algebra: Arc<Algebra>) -> Self {
        let q = algebra.quiver();
        let f = algebra.field();
        let maps = q.arrows().iter().map(|_| Matrix::zeros(f, 0, 0)).collect();
        Representation { dims: vec![0; q.num_vertices()], maps, algebra }
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn field(&self) -> Field {
        self.algebra.field()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim_at(&self, v: usize) -> usize {
        self.dims[v]
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }

    pub fn map(&self, arrow: usize) -> &Matrix {
        &self.maps[arrow]
    }

    /// Whether both modules live over structurally equal algebras.
    pub fn same_algebra(&self, other: &Representation) -> bool {
        Arc::ptr_eq(&self.algebra, &other.algebra) || *self.algebra == *other.algebra
    }

    pub fn check_same_algebra(&self, other: &Representation) -> Result<()> {
        if self.same_algebra(other) { Ok(()) } else { Err(Error::AlgebraMismatch) }
    }

    /// Re-tags the module with a structurally equal algebra.
    pub fn with_algebra(&self, algebra: &Arc<Algebra>) -> Result<Representation> {
        if *self.algebra != **algebra {
            return Err(Error::AlgebraMismatch);
        }
        Ok(Representation { algebra: algebra.clone(), dims: self.dims.clone(), maps: self.maps.clone() })
    }

    /// Action of a path: `dims[t] × dims[s]`.
    pub fn path_matrix(&self, p: &Path) -> Matrix {
        let mut acc = Matrix::identity(self.field(), self.dims[p.source()]);
        for &a in p.arrows() {
            acc = &self.maps[a] * &acc;
        }
        acc
    }

    /// Start of each vertex block in the total space.
    pub fn offsets(&self) -> Vec<usize> {
        let mut acc = 0;
        self.dims
            .iter()
            .map(|d| {
                let o = acc;
                acc += d;
                o
            })
            .collect()
    }

    /// Action of the basis element `b` on the total space.
    pub fn action_matrix(&self, b: usize) -> Matrix {
        let n = self.total_dim();
        let off = self.offsets();
        let p = &self.algebra.basis()[b];
        let mut m = Matrix::zeros(self.field(), n, n);
        m.set_block(off[p.target()], off[p.source()], &self.path_matrix(p));
        m
    }

    /// Submodule generated by per-vertex column families, with its inclusion.
    pub fn submodule(&self, gens: &[Matrix]) -> (Representation, Morphism) {
        let f = self.field();
        let q = self.algebra.quiver();
        let mut spans: Vec<Matrix> = gens.iter().map(Matrix::column_basis).collect();
        loop {
            let mut grew = false;
            for (a, arrow) in q.arrows().iter().enumerate() {
                let image = &self.maps[a] * &spans[arrow.source];
                let combined = spans[arrow.target].hstack(&image).column_basis();
                if combined.cols() > spans[arrow.target].cols() {
                    spans[arrow.target] = combined;
                    grew = true;
                }
            }
            if !grew {
                break;
            }
        }
        let dims: Vec<usize> = spans.iter().map(Matrix::cols).collect();
        let maps = q
            .arrows()
            .iter()
            .enumerate()
            .map(|(a, arrow)| {
                let image = &self.maps[a] * &spans[arrow.source];
                spans[arrow.target]
                    .solve(&image)
                    .expect("shapes agree")
                    .unwrap_or_else(|| Matrix::zeros(f, dims[arrow.target], dims[arrow.source]))
            })
            .collect();
        let sub = Representation::new(self.algebra.clone(), dims, maps).expect("submodule of a module");
        (sub, Morphism { blocks: spans })
    }

    /// Quotient by a submodule given as per-vertex column spans, with the projection.
    pub fn quotient(&self, sub: &[Matrix]) -> (Representation, Morphism) {
        let f = self.field();
        let q = self.algebra.quiver();
        let qb: Vec<_> = sub.iter().enumerate().map(|(v, s)| quotient_basis(f, self.dims[v], s)).collect();
        let dims: Vec<usize> = qb.iter().map(|b| b.dim()).collect();
        let maps = q
            .arrows()
            .iter()
            .enumerate()
            .map(|(a, arrow)| &(&qb[arrow.target].projection * &self.maps[a]) * &qb[arrow.source].lift)
            .collect();
        let quo = Representation::new(self.algebra.clone(), dims, maps).expect("quotient of a module");
        (quo, Morphism { blocks: qb.into_iter().map(|b| b.projection).collect() })
    }

    pub fn direct_sum(&self, other: &Representation) -> Result<Representation> {
        self.check_same_algebra(other)?;
        Ok(direct_sum_all(self.algebra.clone(), &[self.clone(), other.clone()]))
    }

    /// Map `P_v → self` sending the idempotent `e_v` to the column `m` at vertex `v`.
    pub fn hom_from_projective(&self, v: usize, m: &Matrix) -> Morphism {
        let f = self.field();
        let layout = projective_basis(&self.algebra, v);
        let blocks = layout
            .iter()
            .enumerate()
            .map(|(j, paths)| {
                let mut block = Matrix::zeros(f, self.dims[j], paths.len());
                for (c, &b) in paths.iter().enumerate() {
                    block.set_block(0, c, &(&self.path_matrix(&self.algebra.basis()[b]) * m));
                }
                block
            })
            .collect();
        Morphism { blocks }
    }
}

/// Block-diagonal sum of several modules over one algebra.
pub fn direct_sum_all(algebra: Arc<Algebra>, parts: &[Representation]) -> Representation {
    let f = algebra.field();
    let q = algebra.quiver();
    let dims = (0..q.num_vertices()).map(|v| parts.iter().map(|p| p.dims[v]).sum()).collect();
    let maps = (0..q.arrows().len())
        .map(|a| Matrix::block_diag(f, &parts.iter().map(|p| &p.maps[a]).collect::<Vec<_>>()))
        .collect();
    Representation::new(algebra, dims, maps).expect("direct sum of modules")
}

/// A module homomorphism given by one matrix per vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    pub blocks: Vec<Matrix>,
}

impl Morphism {
    pub fn zero(source: &Representation, target: &Representation) -> Self {
        let f = source.field();
        Morphism { blocks: source.dims.iter().zip(&target.dims).map(|(&s, &t)| Matrix::zeros(f, t, s)).collect() }
    }

    pub fn identity(m: &Representation) -> Self {
        Morphism { blocks: m.dims.iter().map(|&d| Matrix::identity(m.field(), d)).collect() }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Morphism) -> Morphism {
        Morphism { blocks: self.blocks.iter().zip(&other.blocks).map(|(a, b)| a * b).collect() }
    }

    pub fn add(&self, other: &Morphism) -> Morphism {
        Morphism { blocks: self.blocks.iter().zip(&other.blocks).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn scale(&self, s: &crate::exactlin::Scalar) -> Morphism {
        Morphism { blocks: self.blocks.iter().map(|b| b.scale(s)).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(Matrix::is_zero)
    }

    pub fn is_invertible(&self) -> bool {
        self.blocks.iter().all(|b| b.rows() == b.cols() && (b.rows() == 0 || b.is_invertible()))
    }

    pub fn inverse(&self) -> Option<Morphism> {
        let blocks = self
            .blocks
            .iter()
            .map(|b| if b.rows() == 0 && b.cols() == 0 { Some(b.clone()) } else { b.inverse() })
            .collect::<Option<Vec<_>>>()?;
        Some(Morphism { blocks })
    }

    /// Whether the vertex matrices intertwine the arrow actions.
    pub fn is_homomorphism(&self, source: &Representation, target: &Representation) -> bool {
        source.algebra.quiver().arrows().iter().enumerate().all(|(a, arrow)| {
            &target.maps[a] * &self.blocks[arrow.source] == &self.blocks[arrow.target] * &source.maps[a]
        })
    }

    /// Row-major concatenation of all vertex blocks.
    pub fn to_vec(&self) -> Vec<crate::exactlin::Scalar> {
        self.blocks.iter().flat_map(|b| (0..b.rows()).flat_map(move |r| b.row(r).to_vec())).collect()
    }

    pub fn from_vec(field: Field, source_dims: &[usize], target_dims: &[usize], v: &[crate::exactlin::Scalar]) -> Self {
        let mut pos = 0;
        let blocks = source_dims
            .iter()
            .zip(target_dims)
            .map(|(&s, &t)| {
                let b = Matrix::from_fn(field, t, s, |r, c| v[pos + r * s + c].clone());
                pos += s * t;
                b
            })
            .collect();
        Morphism { blocks }
    }

    /// Vertexwise kernel as a submodule of `source`.
    pub fn kernel(&self, source: &Representation) -> (Representation, Morphism) {
        let gens: Vec<Matrix> = self.blocks.iter().map(Matrix::nullspace).collect();
        source.submodule(&gens)
    }

    /// Vertexwise image as a submodule of `target`.
    pub fn image(&self, target: &Representation) -> (Representation, Morphism) {
        target.submodule(&self.blocks)
    }

    pub fn rank(&self) -> usize {
        self.blocks.iter().map(Matrix::rank).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    const Q: Field = Field::Rational;

    #[test]
    fn relations_are_checked_on_construction() {
        let g = fixtures::gamma(Q);
        let x = Matrix::from_i64_rows(Q, &[&[1]], 1);
        let y = Matrix::from_i64_rows(Q, &[&[1]], 1);
        let z = Matrix::zeros(Q, 1, 1);
        let err = Representation::new(g.clone(), vec![1, 1], vec![x, y, z]).unwrap_err();
        assert!(matches!(err, Error::RelationViolated(_)));
        assert!(matches!(
            Representation::new(g, vec![1, 1], vec![Matrix::zeros(Q, 2, 1), Matrix::zeros(Q, 1, 1), Matrix::zeros(Q, 1, 1)]),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn direct_sum_dims_add() {
        let l = fixtures::lambda(Q);
        let v = cyclic_module(&l, &l.quiver().path_from_written(&["b", "a"]).unwrap()).unwrap();
        let p1 = projective(&l, 0);
        let s = v.direct_sum(&p1).unwrap();
        assert_eq!(s.dims(), &[3, 3]);
        let z = Representation::zero(l.clone());
        assert_eq!(v.direct_sum(&z).unwrap(), v);
    }

    #[test]
    fn quotient_by_radical_is_semisimple() {
        let l = fixtures::lambda(Q);
        let p = projective(&l, 0);
        let (_, inc) = radical(&p);
        let (top, proj) = p.quotient(&inc.blocks);
        assert_eq!(top.dims(), &[1, 0]);
        assert!(top.maps().iter().all(Matrix::is_zero));
        assert!(proj.is_homomorphism(&p, &top));
    }
}
