use super::{Morphism, Representation};
use crate::error::Result;
use crate::exactlin::{Matrix, Scalar};

/// A basis of `Hom(source, target)`.
#[derive(Clone, Debug)]
pub struct HomSpace {
    pub source: Representation,
    pub target: Representation,
    pub basis: Vec<Morphism>,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Basis morphisms flattened into the columns of one matrix.
    pub fn coordinate_matrix(&self) -> Matrix {
        let f = self.source.field();
        let n = ambient_len(&self.source, &self.target);
        let mut m = Matrix::zeros(f, n, self.basis.len());
        for (c, b) in self.basis.iter().enumerate() {
            for (r, x) in b.to_vec().into_iter().enumerate() {
                m[(r, c)] = x;
            }
        }
        m
    }

    /// Coordinates of `f` in the basis, if it is a homomorphism.
    pub fn coordinates(&self, f: &Morphism) -> Option<Vec<Scalar>> {
        let target = Matrix::column(self.source.field(), f.to_vec());
        let x = self.coordinate_matrix().solve(&target).expect("shapes agree")?;
        Some(x.col_vec(0))
    }

    pub fn combination(&self, coeffs: &[Scalar]) -> Morphism {
        let mut acc = Morphism::zero(&self.source, &self.target);
        for (b, c) in self.basis.iter().zip(coeffs) {
            if !c.is_zero() {
                acc = acc.add(&b.scale(c));
            }
        }
        acc
    }
}

fn ambient_len(m: &Representation, n: &Representation) -> usize {
    m.dims().iter().zip(n.dims()).map(|(a, b)| a * b).sum()
}

/// All intertwiners `M → N`, as the nullspace of the stacked commutation system.
pub fn hom(m: &Representation, n: &Representation) -> Result<HomSpace> {
    m.check_same_algebra(n)?;
    let f = m.field();
    let q = m.algebra().quiver();
    let (dm, dn) = (m.dims(), n.dims());
    let mut offset = Vec::with_capacity(dm.len());
    let mut acc = 0;
    for v in 0..dm.len() {
        offset.push(acc);
        acc += dm[v] * dn[v];
    }
    let unknowns = acc;
    let var = |v: usize, r: usize, c: usize| offset[v] + r * dm[v] + c;

    let rows: usize = q.arrows().iter().map(|a| dn[a.target] * dm[a.source]).sum();
    let mut system = Matrix::zeros(f, rows, unknowns);
    let mut row = 0;
    for (a, arrow) in q.arrows().iter().enumerate() {
        let (s, t) = (arrow.source, arrow.target);
        let (na, ma) = (n.map(a), m.map(a));
        // (N_a f_s - f_t M_a)[r, c] = 0
        for r in 0..dn[t] {
            for c in 0..dm[s] {
                for k in 0..dn[s] {
                    let x = &na[(r, k)];
                    if !x.is_zero() {
                        let idx = var(s, k, c);
                        system[(row, idx)] = &system[(row, idx)] + x;
                    }
                }
                for k in 0..dm[t] {
                    let x = &ma[(k, c)];
                    if !x.is_zero() {
                        let idx = var(t, r, k);
                        system[(row, idx)] = &system[(row, idx)] - x;
                    }
                }
                row += 1;
            }
        }
    }
    let kernel = system.nullspace();
    let basis = (0..kernel.cols()).map(|c| Morphism::from_vec(f, dm, dn, &kernel.col_vec(c))).collect();
    Ok(HomSpace { source: m.clone(), target: n.clone(), basis })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::Field;
    use crate::fixtures;
    use crate::repmod::{cyclic_module, projective};

    const Q: Field = Field::Rational;

    fn simple(alg: &std::sync::Arc<crate::quiver::Algebra>, v: usize) -> Representation {
        let mut dims = vec![0; alg.quiver().num_vertices()];
        dims[v] = 1;
        let maps = alg.quiver().arrows().iter().map(|a| Matrix::zeros(Q, dims[a.target], dims[a.source])).collect();
        Representation::new(alg.clone(), dims, maps).unwrap()
    }

    #[test]
    fn endomorphisms_contain_identity() {
        let l = fixtures::lambda(Q);
        let p = projective(&l, 1);
        let h = hom(&p, &p).unwrap();
        assert!(h.dim() >= 1);
        assert!(h.coordinates(&Morphism::identity(&p)).is_some());
        assert!(h.basis.iter().all(|b| b.is_homomorphism(&p, &p)));
    }

    #[test]
    fn perfect_cyclic_module_has_one_dimensional_end() {
        let l = fixtures::lambda(Q);
        let v = cyclic_module(&l, &l.quiver().path_from_written(&["b", "a"]).unwrap()).unwrap();
        assert_eq!(hom(&v, &v).unwrap().dim(), 1);
    }

    #[test]
    fn simples_at_different_vertices() {
        let l = fixtures::lambda(Q);
        assert_eq!(hom(&simple(&l, 0), &simple(&l, 1)).unwrap().dim(), 0);
    }

    #[test]
    fn projective_hom_counts_vertex_dimension() {
        let g = fixtures::gamma(Q);
        let w = fixtures::gamma_string_module(&g);
        for v in 0..2 {
            assert_eq!(hom(&projective(&g, v), &w).unwrap().dim(), w.dim_at(v));
        }
    }

    #[test]
    fn mismatched_algebras_rejected() {
        let l = fixtures::lambda(Q);
        let g = fixtures::gamma(Q);
        assert!(hom(&projective(&l, 0), &projective(&g, 0)).is_err());
    }
}
