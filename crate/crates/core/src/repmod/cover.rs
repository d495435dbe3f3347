use std::sync::Arc;

use super::{direct_sum_all, Morphism, Representation};
use crate::error::{Error, Result};
use crate::exactlin::{quotient_basis, Matrix};
use crate::quiver::{Algebra, Path};

/// For the projective `Λe_v`: algebra basis indices of the paths starting at
/// `v`, grouped by their target vertex.
pub fn projective_basis(a: &Algebra, v: usize) -> Vec<Vec<usize>> {
    let mut layout = vec![Vec::new(); a.quiver().num_vertices()];
    for (b, p) in a.basis().iter().enumerate() {
        if p.source() == v {
            layout[p.target()].push(b);
        }
    }
    layout
}

/// The indecomposable projective `Λe_v`, arrows acting by left multiplication.
pub fn projective(a: &Arc<Algebra>, v: usize) -> Representation {
    let f = a.field();
    let q = a.quiver();
    let layout = projective_basis(a, v);
    let dims: Vec<usize> = layout.iter().map(Vec::len).collect();
    let maps = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(ai, arrow)| {
            let mut m = Matrix::zeros(f, dims[arrow.target], dims[arrow.source]);
            let step = q.path_from_arrows(&[ai]).expect("single arrow");
            for (c, &b) in layout[arrow.source].iter().enumerate() {
                let prod = step.mul(&a.basis()[b]).expect("arrow starts where the path ends");
                for (k, coeff) in a.normal_form(&prod) {
                    let r = layout[arrow.target].iter().position(|&x| x == k).expect("normal form stays parallel");
                    m[(r, c)] = &m[(r, c)] + &coeff;
                }
            }
            m
        })
        .collect();
    Representation::new(a.clone(), dims, maps).expect("projective modules satisfy the relations")
}

/// The left regular module `Λ = ⊕_v Λe_v`.
pub fn regular_module(a: &Arc<Algebra>) -> Representation {
    let parts: Vec<_> = (0..a.quiver().num_vertices()).map(|v| projective(a, v)).collect();
    direct_sum_all(a.clone(), &parts)
}

/// The left ideal `Λp` inside `Λe_{s(p)}`.
pub fn cyclic_module(a: &Arc<Algebra>, p: &Path) -> Result<Representation> {
    let nf = a.normal_form(p);
    if nf.is_empty() {
        return Err(Error::ZeroGenerator);
    }
    let f = a.field();
    let layout = projective_basis(a, p.source());
    let ambient = projective(a, p.source());
    let gens: Vec<Matrix> = layout
        .iter()
        .enumerate()
        .map(|(j, paths)| {
            let mut g = Matrix::zeros(f, paths.len(), usize::from(j == p.target()));
            if j == p.target() {
                for (k, c) in &nf {
                    let r = paths.iter().position(|x| x == k).expect("normal form stays parallel");
                    g[(r, 0)] = c.clone();
                }
            }
            g
        })
        .collect();
    Ok(ambient.submodule(&gens).0)
}

/// `rad M = JM` with its inclusion.
pub fn radical(m: &Representation) -> (Representation, Morphism) {
    let f = m.field();
    let q = m.algebra().quiver();
    let gens: Vec<Matrix> = (0..q.num_vertices())
        .map(|v| {
            q.arrows()
                .iter()
                .enumerate()
                .filter(|(_, a)| a.target == v)
                .fold(Matrix::zeros(f, m.dim_at(v), 0), |acc, (i, _)| acc.hstack(m.map(i)))
        })
        .collect();
    m.submodule(&gens)
}

/// `P_{t(α)} → P_{s(α)}`, `p ↦ pα`.
pub fn right_multiplication(a: &Arc<Algebra>, arrow: usize) -> Morphism {
    let f = a.field();
    let q = a.quiver();
    let (s, t) = (q.arrow(arrow).source, q.arrow(arrow).target);
    let step = q.path_from_arrows(&[arrow]).expect("single arrow");
    let from = projective_basis(a, t);
    let to = projective_basis(a, s);
    let blocks = from
        .iter()
        .zip(&to)
        .map(|(src, dst)| {
            let mut m = Matrix::zeros(f, dst.len(), src.len());
            for (c, &b) in src.iter().enumerate() {
                let prod = a.basis()[b].mul(&step).expect("path starts where the arrow ends");
                for (k, coeff) in a.normal_form(&prod) {
                    let r = dst.iter().position(|&x| x == k).expect("normal form stays parallel");
                    m[(r, c)] = &m[(r, c)] + &coeff;
                }
            }
            m
        })
        .collect();
    Morphism { blocks }
}

/// A projective cover `π: P(M) → M` with its kernel `ΩM`.
#[derive(Clone, Debug)]
pub struct CoverData {
    pub cover: Representation,
    /// Vertex of each indecomposable summand of the cover, in block order.
    pub summands: Vec<usize>,
    pub map: Morphism,
    pub kernel: Representation,
    pub inclusion: Morphism,
}

/// Lifts a basis of `M / rad M` (pivot columns) to generators and takes the
/// exact kernel of the induced map from their projectives.
pub fn projective_cover(m: &Representation) -> Result<CoverData> {
    if m.is_zero() {
        return Err(Error::ZeroModule);
    }
    let a = m.algebra();
    let f = m.field();
    let (_, rad) = radical(m);
    let mut summands = Vec::new();
    let mut parts = Vec::new();
    let mut pieces: Vec<Morphism> = Vec::new();
    for v in 0..a.quiver().num_vertices() {
        let top = quotient_basis(f, m.dim_at(v), &rad.blocks[v]);
        if top.dim() == 0 {
            continue;
        }
        let pv = projective(a, v);
        for c in 0..top.dim() {
            summands.push(v);
            parts.push(pv.clone());
            pieces.push(m.hom_from_projective(v, &top.lift.col(c)));
        }
    }
    let cover = direct_sum_all(a.clone(), &parts);
    let blocks = (0..a.quiver().num_vertices())
        .map(|j| pieces.iter().fold(Matrix::zeros(f, m.dim_at(j), 0), |acc, p| acc.hstack(&p.blocks[j])))
        .collect();
    let map = Morphism { blocks };
    debug_assert!(map.is_homomorphism(&cover, m));
    let (kernel, inclusion) = map.kernel(&cover);
    Ok(CoverData { cover, summands, map, kernel, inclusion })
}

/// `Ω^i M`, with `Ω^0 M = M` and `Ω 0 = 0`.
pub fn syzygy(m: &Representation, i: usize) -> Representation {
    let mut cur = m.clone();
    for _ in 0..i {
        if cur.is_zero() {
            break;
        }
        cur = projective_cover(&cur).expect("nonzero module").kernel;
    }
    cur
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::Field;
    use crate::fixtures;
    use crate::repmod::{hom, is_isomorphic, IsoVerdict};

    const Q: Field = Field::Rational;

    #[test]
    fn lambda_projectives() {
        let l = fixtures::lambda(Q);
        let p1 = projective(&l, 0);
        assert_eq!(p1.dims(), &[2, 2]);
        let names: Vec<_> = projective_basis(&l, 0).concat().iter().map(|&b| l.display_path(&l.basis()[b])).collect();
        assert_eq!(names, vec!["e1", "ba", "a", "aba"]);
        assert_eq!(projective(&l, 1).total_dim(), 5);
        let g = fixtures::gamma(Q);
        assert_eq!(projective(&g, 0).dims(), &[1, 1]);
    }

    #[test]
    fn cyclic_modules() {
        let l = fixtures::lambda(Q);
        let ba = l.quiver().path_from_written(&["b", "a"]).unwrap();
        assert_eq!(cyclic_module(&l, &ba).unwrap().dims(), &[1, 1]);
        let e1 = cyclic_module(&l, &Path::trivial(0)).unwrap();
        assert_eq!(e1, projective(&l, 0));
        let baba = l.quiver().path_from_written(&["b", "a", "b", "a"]).unwrap();
        assert_eq!(cyclic_module(&l, &baba).unwrap_err(), Error::ZeroGenerator);

        let d = fixtures::dual_numbers(Q);
        let a = d.quiver().path_from_written(&["a"]).unwrap();
        let s = cyclic_module(&d, &a).unwrap();
        assert_eq!(s.total_dim(), 1);
        assert!(s.map(0).is_zero());
    }

    #[test]
    fn radical_examples() {
        let l = fixtures::lambda(Q);
        assert_eq!(radical(&projective(&l, 0)).0.total_dim(), 3);
        let g = fixtures::gamma(Q);
        let w = fixtures::gamma_string_module(&g);
        assert_eq!(radical(&w).0.dims(), &[0, 1]);
    }

    #[test]
    fn covers_and_syzygies() {
        let l = fixtures::lambda(Q);
        let v = cyclic_module(&l, &l.quiver().path_from_written(&["b", "a"]).unwrap()).unwrap();
        let c = projective_cover(&v).unwrap();
        assert_eq!(c.summands, vec![0]);
        assert_eq!(c.cover.total_dim(), 4);
        assert_eq!(c.kernel.total_dim(), 2);
        assert!(matches!(is_isomorphic(&c.kernel, &v, 16, 1).unwrap(), IsoVerdict::Yes(_)));

        let p = projective(&l, 1);
        assert!(projective_cover(&p).unwrap().kernel.is_zero());
        assert!(syzygy(&p, 1).is_zero());
        assert_eq!(syzygy(&v, 0), v);
        assert_eq!(projective_cover(&Representation::zero(l.clone())).unwrap_err(), Error::ZeroModule);
    }

    #[test]
    fn gamma_string_module_is_its_own_syzygy() {
        let g = fixtures::gamma(Q);
        let w = fixtures::gamma_string_module(&g);
        let c = projective_cover(&w).unwrap();
        assert_eq!(c.summands, vec![0, 1]);
        assert_eq!(c.cover.total_dim(), 6);
        assert_eq!(c.kernel.total_dim(), 3);
        assert!(matches!(is_isomorphic(&c.kernel, &w, 16, 1).unwrap(), IsoVerdict::Yes(_)));
        assert!(matches!(is_isomorphic(&syzygy(&w, 2), &w, 16, 1).unwrap(), IsoVerdict::Yes(_)));
    }

    #[test]
    fn cover_top_matches_module_top() {
        let g = fixtures::gamma(Q);
        let w = fixtures::gamma_string_module(&g);
        let c = projective_cover(&w).unwrap();
        let top = |m: &Representation| -> Vec<usize> {
            let r = radical(m).0;
            m.dims().iter().zip(r.dims()).map(|(a, b)| a - b).collect()
        };
        assert_eq!(top(&c.cover), top(&w));
        assert_eq!(hom(&c.cover, &w).unwrap().dim(), 3);
    }
}
