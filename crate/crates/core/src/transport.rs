//! Bimodules `ΓXΛ` and the functor `X ⊗_Λ −` from `Λ`-modules to `Γ`-modules.

use std::sync::Arc;

use serde::Serialize;

use crate::deformation::{classify_defo_ring, DefoOptions, DefoReport};
use crate::error::{Error, Result};
use crate::exactlin::Matrix;
use crate::homology::{is_gorenstein_projective, opposite_algebra, stable_hom, GprojVerdict, Verdict};
use crate::quiver::Algebra;
use crate::repmod::{projective, right_multiplication, strip_projectives, syzygy, Representation};

/// `X = ⊕ e_j X e_i` with `j` a vertex of the left algebra and `i` of the right one.
#[derive(Clone, Debug, PartialEq)]
pub struct Bimodule {
    left: Arc<Algebra>,
    right: Arc<Algebra>,
    /// `dims[j][i] = dim e_j X e_i`.
    dims: Vec<Vec<usize>>,
    /// `left_maps[γ][i]: e_{s γ} X e_i → e_{t γ} X e_i`.
    left_maps: Vec<Vec<Matrix>>,
    /// `right_maps[α][j]: e_j X e_{t α} → e_j X e_{s α}`, `x ↦ xα`.
    right_maps: Vec<Vec<Matrix>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Left,
    Right,
}

impl Bimodule {
    pub fn new(
        left: Arc<Algebra>,
        right: Arc<Algebra>,
        dims: Vec<Vec<usize>>,
        left_maps: Vec<Vec<Matrix>>,
        right_maps: Vec<Vec<Matrix>>,
    ) -> Result<Self> {
        let (lq, rq) = (left.quiver(), right.quiver());
        if left.field() != right.field() {
            return Err(Error::AlgebraMismatch);
        }
        let shape_ok = dims.len() == lq.num_vertices()
            && dims.iter().all(|row| row.len() == rq.num_vertices())
            && left_maps.len() == lq.arrows().len()
            && right_maps.len() == rq.arrows().len()
            && lq.arrows().iter().zip(&left_maps).all(|(g, ms)| {
                ms.len() == rq.num_vertices()
                    && ms.iter().enumerate().all(|(i, m)| m.shape() == (dims[g.target][i], dims[g.source][i]))
            })
            && rq.arrows().iter().zip(&right_maps).all(|(a, ms)| {
                ms.len() == lq.num_vertices()
                    && ms.iter().enumerate().all(|(j, m)| m.shape() == (dims[j][a.source], dims[j][a.target]))
            });
        if !shape_ok {
            return Err(Error::DimensionMismatch("bimodule blocks do not match the quivers".into()));
        }
        for (g, gamma) in lq.arrows().iter().enumerate() {
            for (a, alpha) in rq.arrows().iter().enumerate() {
                // On e_{sγ} X e_{tα}: γ(xα) = (γx)α.
                let one = &left_maps[g][alpha.source] * &right_maps[a][gamma.source];
                let other = &right_maps[a][gamma.target] * &left_maps[g][alpha.target];
                if one != other {
                    return Err(Error::RelationViolated("left and right actions do not commute".into()));
                }
            }
        }
        let x = Bimodule { left, right, dims, left_maps, right_maps };
        x.left_module()?;
        x.right_module()?;
        Ok(x)
    }

    pub fn left_algebra(&self) -> &Arc<Algebra> {
        &self.left
    }

    pub fn right_algebra(&self) -> &Arc<Algebra> {
        &self.right
    }

    pub fn dims(&self) -> &[Vec<usize>] {
        &self.dims
    }

    /// `X e_i` as a left module over the left algebra.
    pub fn column(&self, i: usize) -> Result<Representation> {
        let dims = self.dims.iter().map(|row| row[i]).collect();
        let maps = self.left_maps.iter().map(|ms| ms[i].clone()).collect();
        Representation::new(self.left.clone(), dims, maps)
    }

    /// `e_j X` as a left module over the opposite of the right algebra.
    pub fn row(&self, j: usize, op: &Arc<Algebra>) -> Result<Representation> {
        let maps = self.right_maps.iter().map(|ms| ms[j].clone()).collect();
        Representation::new(op.clone(), self.dims[j].clone(), maps)
    }

    /// `X` forgetting the right action.
    pub fn left_module(&self) -> Result<Representation> {
        let f = self.left.field();
        let cols: Vec<Representation> =
            (0..self.right.quiver().num_vertices()).map(|i| self.column(i)).collect::<Result<_>>()?;
        if cols.is_empty() {
            return Ok(Representation::zero(self.left.clone()));
        }
        let dims = (0..self.dims.len()).map(|j| cols.iter().map(|c| c.dim_at(j)).sum()).collect();
        let maps = (0..self.left_maps.len())
            .map(|g| Matrix::block_diag(f, &cols.iter().map(|c| c.map(g)).collect::<Vec<_>>()))
            .collect();
        Representation::new(self.left.clone(), dims, maps)
    }

    /// `X` forgetting the left action, as a module over the opposite algebra.
    pub fn right_module(&self) -> Result<Representation> {
        let op = opposite_algebra(&self.right)?;
        let f = self.left.field();
        let rows: Vec<Representation> = (0..self.dims.len()).map(|j| self.row(j, &op)).collect::<Result<_>>()?;
        if rows.is_empty() {
            return Ok(Representation::zero(op));
        }
        let dims = (0..self.right.quiver().num_vertices()).map(|i| rows.iter().map(|r| r.dim_at(i)).sum()).collect();
        let maps = (0..self.right_maps.len())
            .map(|a| Matrix::block_diag(f, &rows.iter().map(|r| r.map(a)).collect::<Vec<_>>()))
            .collect();
        Representation::new(op, dims, maps)
    }

    /// `ΛΛΛ`.
    pub fn regular(a: &Arc<Algebra>) -> Result<Self> {
        Self::twisted(a.clone(), a, &(0..a.quiver().num_vertices()).collect::<Vec<_>>(), &(0..a.quiver().arrows().len()).collect::<Vec<_>>())
    }

    /// `Λ` with the left algebra `Γ` acting through an isomorphism `σ: Γ → Λ`
    /// given on vertices and arrows.
    pub fn twisted(left: Arc<Algebra>, right: &Arc<Algebra>, vertex_map: &[usize], arrow_map: &[usize]) -> Result<Self> {
        let (lq, rq) = (left.quiver(), right.quiver());
        if vertex_map.len() != lq.num_vertices() || arrow_map.len() != lq.arrows().len() {
            return Err(Error::DimensionMismatch("twist must cover every vertex and arrow".into()));
        }
        let columns: Vec<Representation> = (0..rq.num_vertices()).map(|i| projective(right, i)).collect();
        let dims = vertex_map.iter().map(|&j| columns.iter().map(|c| c.dim_at(j)).collect()).collect();
        let left_maps = arrow_map.iter().map(|&a| columns.iter().map(|c| c.map(a).clone()).collect()).collect();
        let right_maps = (0..rq.arrows().len())
            .map(|a| {
                let rho = right_multiplication(right, a);
                vertex_map.iter().map(|&j| rho.blocks[j].clone()).collect()
            })
            .collect();
        Self::new(left, right.clone(), dims, left_maps, right_maps)
    }

    /// `Λe_i ⊗_k e_jΛ`.
    pub fn elementary(a: &Arc<Algebra>, i: usize, j: usize) -> Result<Self> {
        let f = a.field();
        let op = opposite_algebra(a)?;
        let l = projective(a, i);
        let r = projective(&op, j);
        let n = a.quiver().num_vertices();
        let dims = (0..n).map(|k| (0..n).map(|m| l.dim_at(k) * r.dim_at(m)).collect()).collect();
        let left_maps = (0..a.quiver().arrows().len())
            .map(|g| (0..n).map(|m| l.map(g).kron(&Matrix::identity(f, r.dim_at(m)))).collect())
            .collect();
        let right_maps = (0..a.quiver().arrows().len())
            .map(|g| (0..n).map(|k| Matrix::identity(f, l.dim_at(k)).kron(r.map(g))).collect())
            .collect();
        Self::new(a.clone(), a.clone(), dims, left_maps, right_maps)
    }

    /// Direct sum of bimodules between the same algebras.
    pub fn direct_sum(&self, other: &Bimodule) -> Result<Self> {
        if *self.left != *other.left || *self.right != *other.right {
            return Err(Error::AlgebraMismatch);
        }
        let f = self.left.field();
        let dims = self.dims.iter().zip(&other.dims).map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect()).collect();
        let sum = |a: &[Vec<Matrix>], b: &[Vec<Matrix>]| -> Vec<Vec<Matrix>> {
            a.iter().zip(b).map(|(x, y)| x.iter().zip(y).map(|(m, n)| Matrix::block_diag(f, &[m, n])).collect()).collect()
        };
        let left_maps = sum(&self.left_maps, &other.left_maps);
        let right_maps = sum(&self.right_maps, &other.right_maps);
        Self::new(self.left.clone(), self.right.clone(), dims, left_maps, right_maps)
    }
}

pub fn is_projective_one_sided(x: &Bimodule, side: Side) -> Result<bool> {
    let m = match side {
        Side::Left => x.left_module()?,
        Side::Right => x.right_module()?,
    };
    Ok(syzygy(&m, 1).is_zero())
}

/// `X ⊗_Λ V`: the quotient of `⊕_i X e_i ⊗ V_i` by `xα ⊗ v − x ⊗ αv`.
pub fn tensor(x: &Bimodule, v: &Representation) -> Result<Representation> {
    if **v.algebra() != *x.right {
        return Err(Error::AlgebraMismatch);
    }
    let f = v.field();
    let lq = x.left.quiver();
    let rq = x.right.quiver();
    let nl = lq.num_vertices();
    let ni = rq.num_vertices();
    // Block (j, i) holds X_{j,i} ⊗ V_i, row-major.
    let block = |j: usize, i: usize| x.dims[j][i] * v.dim_at(i);
    let offsets: Vec<Vec<usize>> = (0..nl)
        .map(|j| {
            let mut acc = 0;
            (0..ni)
                .map(|i| {
                    let o = acc;
                    acc += block(j, i);
                    o
                })
                .collect()
        })
        .collect();
    let dims: Vec<usize> = (0..nl).map(|j| (0..ni).map(|i| block(j, i)).sum()).collect();
    let maps = lq
        .arrows()
        .iter()
        .enumerate()
        .map(|(g, gamma)| {
            let mut m = Matrix::zeros(f, dims[gamma.target], dims[gamma.source]);
            for i in 0..ni {
                let piece = x.left_maps[g][i].kron(&Matrix::identity(f, v.dim_at(i)));
                m.set_block(offsets[gamma.target][i], offsets[gamma.source][i], &piece);
            }
            m
        })
        .collect();
    let ambient = Representation::new(x.left.clone(), dims.clone(), maps)?;
    let balancing: Vec<Matrix> = (0..nl)
        .map(|j| {
            let mut cols = Matrix::zeros(f, dims[j], 0);
            for (a, alpha) in rq.arrows().iter().enumerate() {
                let (s, t) = (alpha.source, alpha.target);
                let width = x.dims[j][t] * v.dim_at(s);
                let mut gens = Matrix::zeros(f, dims[j], width);
                let moved_right = x.right_maps[a][j].kron(&Matrix::identity(f, v.dim_at(s)));
                let moved_left = Matrix::identity(f, x.dims[j][t]).kron(v.map(a));
                let mut top = gens.block(offsets[j][s], 0, block(j, s), width);
                top.add_assign(&moved_right);
                gens.set_block(offsets[j][s], 0, &top);
                let mut bottom = gens.block(offsets[j][t], 0, block(j, t), width);
                bottom = bottom.sub(&moved_left);
                gens.set_block(offsets[j][t], 0, &bottom);
                cols = cols.hstack(&gens);
            }
            cols
        })
        .collect();
    Ok(ambient.quotient(&balancing).0)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TransportReport {
    pub transported_dims: Vec<usize>,
    pub transported_gproj: GprojVerdict,
    pub stable_end_dim: usize,
    pub source_ring: DefoReport,
    pub target_ring: DefoReport,
    pub pass: bool,
}

/// Carries `V` across `X` and compares deformation rings on both sides.
/// Projective summands of `X ⊗ V` are removed before comparing.
pub fn transport_check(x: &Bimodule, v: &Representation, cutoff: usize, opts: DefoOptions) -> Result<TransportReport> {
    if !is_projective_one_sided(x, Side::Left)? {
        return Err(Error::PrerequisiteFails("bimodule is not projective as a left module".into()));
    }
    if !is_projective_one_sided(x, Side::Right)? {
        return Err(Error::PrerequisiteFails("bimodule is not projective as a right module".into()));
    }
    if is_gorenstein_projective(v, cutoff, opts.seed)?.verdict != Verdict::True {
        return Err(Error::PrerequisiteFails("module is not certified Gorenstein-projective".into()));
    }
    let image = strip_projectives(&tensor(x, v)?, 16, opts.seed)?.core;
    let transported_gproj = is_gorenstein_projective(&image, cutoff, opts.seed)?;
    let stable_end_dim = stable_hom(&image, &image)?.dim();
    let source_ring = classify_defo_ring(v, opts)?;
    let target_ring = classify_defo_ring(&image, opts)?;
    let pass = source_ring.ring == target_ring.ring;
    Ok(TransportReport {
        transported_dims: image.dims().to_vec(),
        transported_gproj,
        stable_end_dim,
        source_ring,
        target_ring,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::deformation::RingTag;
    use crate::exactlin::Field;
    use crate::fixtures;
    use crate::repmod::{cyclic_module, is_isomorphic};

    const Q: Field = Field::Rational;

    fn lambda_v(l: &Arc<Algebra>) -> Representation {
        cyclic_module(l, &l.quiver().path_from_written(&["b", "a"]).unwrap()).unwrap()
    }

    /// The opposite of `lambda` mapped back onto `lambda`: vertices fixed, `a ↦ b`, `b ↦ a`.
    fn lambda_twist(l: &Arc<Algebra>) -> Bimodule {
        let op = opposite_algebra(l).unwrap();
        Bimodule::twisted(op, l, &[0, 1], &[1, 0]).unwrap()
    }

    #[test]
    fn regular_and_elementary_bimodules_are_projective() {
        for a in [fixtures::lambda(Q), fixtures::gamma(Q)] {
            let x = Bimodule::regular(&a).unwrap();
            assert!(is_projective_one_sided(&x, Side::Left).unwrap());
            assert!(is_projective_one_sided(&x, Side::Right).unwrap());
        }
        let l = fixtures::lambda(Q);
        for (i, j) in [(0, 0), (0, 1), (1, 0)] {
            let x = Bimodule::elementary(&l, i, j).unwrap();
            assert!(is_projective_one_sided(&x, Side::Left).unwrap());
            assert!(is_projective_one_sided(&x, Side::Right).unwrap());
        }
    }

    #[test]
    fn simple_with_ground_field_on_the_right_is_not_left_projective() {
        let l = fixtures::lambda(Q);
        let k = fixtures::ground(Q);
        let x = Bimodule::new(
            l.clone(),
            k,
            vec![vec![0], vec![1]],
            vec![vec![Matrix::zeros(Q, 1, 0)], vec![Matrix::zeros(Q, 0, 1)]],
            vec![],
        )
        .unwrap();
        assert!(!is_projective_one_sided(&x, Side::Left).unwrap());
        assert!(is_projective_one_sided(&x, Side::Right).unwrap());
    }

    #[test]
    fn noncommuting_actions_rejected() {
        let d = fixtures::dual_numbers(Q);
        let a = Matrix::from_i64_rows(Q, &[&[0, 0], &[1, 0]], 2);
        let b = Matrix::from_i64_rows(Q, &[&[0, 1], &[0, 0]], 2);
        let bad = Bimodule::new(d.clone(), d.clone(), vec![vec![2]], vec![vec![a]], vec![vec![b]]);
        assert!(matches!(bad, Err(Error::RelationViolated(_))));
    }

    #[test]
    fn regular_tensor_is_identity() {
        let l = fixtures::lambda(Q);
        let v = lambda_v(&l);
        let out = tensor(&Bimodule::regular(&l).unwrap(), &v).unwrap();
        assert!(is_isomorphic(&out, &v, 16, 0).unwrap().is_yes());
        let g = fixtures::gamma(Q);
        let w = fixtures::gamma_string_module(&g);
        let out = tensor(&Bimodule::regular(&g).unwrap(), &w).unwrap();
        assert!(is_isomorphic(&out, &w, 16, 0).unwrap().is_yes());
    }

    #[test]
    fn elementary_tensor_is_free_on_the_fibre() {
        let l = fixtures::lambda(Q);
        let v = lambda_v(&l);
        let x = Bimodule::elementary(&l, 0, 0).unwrap();
        let out = tensor(&x, &v).unwrap();
        assert!(is_isomorphic(&out, &projective(&l, 0), 16, 0).unwrap().is_yes());
    }

    #[test]
    fn tensor_with_projective_is_column() {
        let l = fixtures::lambda(Q);
        let x = Bimodule::elementary(&l, 1, 0).unwrap();
        for i in 0..2 {
            let out = tensor(&x, &projective(&l, i)).unwrap();
            assert!(is_isomorphic(&out, &x.column(i).unwrap(), 16, 0).unwrap().is_yes());
        }
    }

    #[test]
    fn tensor_is_additive() {
        let l = fixtures::lambda(Q);
        let v = lambda_v(&l);
        let p = projective(&l, 1);
        let x = Bimodule::elementary(&l, 1, 0).unwrap().direct_sum(&Bimodule::regular(&l).unwrap()).unwrap();
        let whole = tensor(&x, &v.direct_sum(&p).unwrap()).unwrap();
        let parts = tensor(&x, &v).unwrap().direct_sum(&tensor(&x, &p).unwrap()).unwrap();
        assert!(is_isomorphic(&whole, &parts, 16, 0).unwrap().is_yes());
    }

    #[test]
    fn identity_transports_pass() {
        let l = fixtures::lambda(Q);
        let v = lambda_v(&l);
        let r = transport_check(&Bimodule::regular(&l).unwrap(), &v, 11, DefoOptions::default()).unwrap();
        assert!(r.pass);
        assert_eq!(r.source_ring.ring, RingTag::DualNumbers2);
        assert_eq!(r.target_ring.ring, RingTag::DualNumbers2);
        assert_eq!(r.transported_dims, vec![1, 1]);

        let g = fixtures::gamma(Q);
        let w = fixtures::gamma_string_module(&g);
        let r = transport_check(&Bimodule::regular(&g).unwrap(), &w, 8, DefoOptions::default()).unwrap();
        assert!(r.pass);
    }

    #[test]
    fn twisted_transport_passes() {
        let l = fixtures::lambda(Q);
        let x = lambda_twist(&l);
        assert!(is_projective_one_sided(&x, Side::Left).unwrap());
        assert!(is_projective_one_sided(&x, Side::Right).unwrap());
        let r = transport_check(&x, &lambda_v(&l), 11, DefoOptions::default()).unwrap();
        assert!(r.pass);
        assert_eq!(r.transported_gproj.verdict, Verdict::True);
        assert_eq!(r.stable_end_dim, 1);
        assert_eq!(r.target_ring.ring, RingTag::DualNumbers2);
    }

    #[test]
    fn non_projective_bimodule_is_refused() {
        let l = fixtures::lambda(Q);
        let k = fixtures::ground(Q);
        // Right algebra k, left algebra lambda: tensoring k-modules needs V over k.
        let x = Bimodule::new(
            l.clone(),
            k.clone(),
            vec![vec![0], vec![1]],
            vec![vec![Matrix::zeros(Q, 1, 0)], vec![Matrix::zeros(Q, 0, 1)]],
            vec![],
        )
        .unwrap();
        let v = projective(&k, 0);
        let err = transport_check(&x, &v, 4, DefoOptions::default()).unwrap_err();
        assert_eq!(err, Error::PrerequisiteFails("bimodule is not projective as a left module".into()));
    }

    #[test]
    fn mismatched_tensor_rejected() {
        let l = fixtures::lambda(Q);
        let g = fixtures::gamma(Q);
        let x = Bimodule::regular(&l).unwrap();
        assert_eq!(tensor(&x, &fixtures::gamma_string_module(&g)).unwrap_err(), Error::AlgebraMismatch);
    }
}
