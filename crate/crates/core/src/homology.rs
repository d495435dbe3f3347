//! Stable Hom, Ext, and the Cohen-Macaulay / Gorenstein predicates.
//!
//! Finiteness of homological dimensions is only semi-decidable by truncated
//! search, so predicates answer with a three-valued [`Verdict`] relative to a
//! cutoff.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactlin::{quotient_basis, Matrix, QuotientBasis};
use crate::monomial;
use crate::quiver::Algebra;
use crate::repmod::{
    hom, is_isomorphic, projective, projective_cover, regular_module, right_multiplication, syzygy, HomSpace,
    IsoVerdict, Representation,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    True,
    False,
    UnknownAtCutoff,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::True => "true",
            Verdict::False => "false",
            Verdict::UnknownAtCutoff => "unknown_at_cutoff",
        }
    }
}

/// Generous default for homological searches: `dim Λ + 2`.
pub fn default_cutoff(a: &Algebra) -> usize {
    a.dim() + 2
}

/// `Hom(M,N)` modulo maps factoring through a projective.
#[derive(Clone, Debug)]
pub struct StableHomSpace {
    pub hom: HomSpace,
    /// Coordinates (in `hom`'s basis) of a spanning set of `PHom(M,N)`.
    pub proj_factor: Matrix,
    pub quotient: QuotientBasis,
}

impl StableHomSpace {
    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }

    pub fn proj_factor_dim(&self) -> usize {
        self.proj_factor.rank()
    }
}

/// Every map `M → N` through a projective factors through the cover `π_N`,
/// so `PHom(M,N) = π_N ∘ Hom(M, P(N))`.
pub fn stable_hom(m: &Representation, n: &Representation) -> Result<StableHomSpace> {
    let h = hom(m, n)?;
    let f = m.field();
    let mut proj_factor = Matrix::zeros(f, h.dim(), 0);
    if !n.is_zero() && h.dim() > 0 {
        let cover = projective_cover(n)?;
        let through = hom(m, &cover.cover)?;
        for g in &through.basis {
            let c = h.coordinates(&cover.map.compose(g)).expect("composite is a homomorphism");
            proj_factor = proj_factor.hstack(&Matrix::column(f, c));
        }
    }
    let quotient = quotient_basis(f, h.dim(), &proj_factor);
    Ok(StableHomSpace { hom: h, proj_factor, quotient })
}

/// `dim Ext¹(M,N)` as the cokernel of restriction `Hom(P(M),N) → Hom(ΩM,N)`.
pub fn ext1(m: &Representation, n: &Representation) -> Result<usize> {
    m.check_same_algebra(n)?;
    if m.is_zero() {
        return Ok(0);
    }
    let cover = projective_cover(m)?;
    if cover.kernel.is_zero() {
        return Ok(0);
    }
    let target = hom(&cover.kernel, n)?;
    let from_cover = hom(&cover.cover, n)?;
    let f = m.field();
    let mut restricted = Matrix::zeros(f, target.coordinate_matrix().rows(), 0);
    for h in &from_cover.basis {
        restricted = restricted.hstack(&Matrix::column(f, h.compose(&cover.inclusion).to_vec()));
    }
    Ok(target.dim() - restricted.rank())
}

/// `dim Ext^i(M,N)` for `i ≥ 1` by dimension shifting along syzygies.
pub fn ext(m: &Representation, n: &Representation, i: usize) -> Result<usize> {
    assert!(i >= 1, "Ext degree starts at 1");
    m.check_same_algebra(n)?;
    ext1(&syzygy(m, i - 1), n)
}

/// `dim Ext^i(M,N)` as `dim Hom_(Ω^i M, N)`, licensed only when `Ext^i(M,Λ) = 0`.
pub fn ext_via_syzygy(m: &Representation, n: &Representation, i: usize) -> Result<usize> {
    m.check_same_algebra(n)?;
    if i == 0 {
        return Err(Error::HypothesisFails("syzygy formula needs i >= 1".into()));
    }
    let lam = regular_module(m.algebra());
    if ext(m, &lam, i)? != 0 {
        return Err(Error::HypothesisFails(format!("Ext^{i}(M, A) is nonzero")));
    }
    Ok(stable_hom(&syzygy(m, i), n)?.dim())
}

/// Three-valued answer plus the first degree with a nonvanishing Ext, if any.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CmVerdict {
    pub verdict: Verdict,
    pub nonvanishing_degree: Option<usize>,
}

/// `Ext^i(M, Λ) = 0` for all `i > 0`, decided up to `cutoff`.
pub fn is_cohen_macaulay(m: &Representation, cutoff: usize) -> Result<CmVerdict> {
    let a = m.algebra();
    let lam = regular_module(a);
    let mut cur = m.clone();
    for i in 1..=cutoff {
        if cur.is_zero() {
            // Finite projective dimension: every later Ext vanishes.
            return Ok(CmVerdict { verdict: Verdict::True, nonvanishing_degree: None });
        }
        if ext1(&cur, &lam)? != 0 {
            return Ok(CmVerdict { verdict: Verdict::False, nonvanishing_degree: Some(i) });
        }
        cur = syzygy(&cur, 1);
    }
    let verdict = match is_gorenstein(a, cutoff)? {
        GorensteinVerdict::True { .. } => Verdict::True,
        GorensteinVerdict::UnknownAtCutoff { .. } => {
            if cur.is_zero() { Verdict::True } else { Verdict::UnknownAtCutoff }
        }
    };
    Ok(CmVerdict { verdict, nonvanishing_degree: None })
}

pub fn opposite_algebra(a: &Algebra) -> Result<Arc<Algebra>> {
    Ok(Arc::new(a.opposite()?))
}

fn is_opposite_pair(a: &Algebra, op: &Algebra) -> bool {
    a.field() == op.field()
        && *op.quiver() == a.quiver().opposite()
        && op.relations().len() == a.relations().len()
        && a.relations().iter().zip(op.relations()).all(|(r, s)| r.reversed() == *s)
}

/// Vector-space dual `Hom_k(M, k)`, a module over the opposite algebra `op`.
pub fn dual(m: &Representation, op: &Arc<Algebra>) -> Result<Representation> {
    if !is_opposite_pair(m.algebra(), op) {
        return Err(Error::AlgebraMismatch);
    }
    let maps = m.maps().iter().map(Matrix::transpose).collect();
    Representation::new(op.clone(), m.dims().to_vec(), maps)
}

/// `M* = Hom_Λ(M, Λ)` with the right `Λ`-action, as a module over `op`.
pub fn hom_dual(m: &Representation, op: &Arc<Algebra>) -> Result<Representation> {
    let a = m.algebra();
    if !is_opposite_pair(a, op) {
        return Err(Error::AlgebraMismatch);
    }
    let f = a.field();
    let q = a.quiver();
    let spaces: Vec<HomSpace> =
        (0..q.num_vertices()).map(|v| hom(m, &projective(a, v))).collect::<Result<_>>()?;
    let dims: Vec<usize> = spaces.iter().map(HomSpace::dim).collect();
    let mut maps = Vec::with_capacity(q.arrows().len());
    for (ai, arrow) in q.arrows().iter().enumerate() {
        let (s, t) = (arrow.source, arrow.target);
        let rho = right_multiplication(a, ai);
        let mut mat = Matrix::zeros(f, dims[s], dims[t]);
        for (c, h) in spaces[t].basis.iter().enumerate() {
            let coords = spaces[s].coordinates(&rho.compose(h)).expect("right multiplication is Λ-linear");
            for (r, x) in coords.into_iter().enumerate() {
                mat[(r, c)] = x;
            }
        }
        maps.push(mat);
    }
    Representation::new(op.clone(), dims, maps)
}

/// Projective dimension if the syzygy chain reaches zero within `cutoff` steps.
pub fn projective_dimension(m: &Representation, cutoff: usize) -> Option<usize> {
    let mut cur = m.clone();
    for k in 0..=cutoff {
        if cur.is_zero() {
            return Some(k.saturating_sub(1));
        }
        cur = syzygy(&cur, 1);
        if cur.is_zero() {
            return Some(k);
        }
    }
    None
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Left,
    Right,
}

/// Injective dimension of the regular module on `side`, computed as the
/// projective dimension of its vector-space dual.
pub fn injective_dimension(a: &Arc<Algebra>, side: Side, cutoff: usize) -> Result<Option<usize>> {
    let op = opposite_algebra(a)?;
    let dualized = match side {
        Side::Left => dual(&regular_module(a), &op)?,
        Side::Right => dual(&regular_module(&op), a)?,
    };
    Ok(projective_dimension(&dualized, cutoff))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum GorensteinVerdict {
    True { left: usize, right: usize },
    /// Truncated search never certifies infinite injective dimension.
    UnknownAtCutoff { left: Option<usize>, right: Option<usize> },
}

impl GorensteinVerdict {
    /// The self-injective dimension when certified.
    pub fn dimension(&self) -> Option<usize> {
        match self {
            GorensteinVerdict::True { left, right } => Some(*left.max(right)),
            GorensteinVerdict::UnknownAtCutoff { .. } => None,
        }
    }
}

pub fn is_gorenstein(a: &Arc<Algebra>, cutoff: usize) -> Result<GorensteinVerdict> {
    let left = injective_dimension(a, Side::Left, cutoff)?;
    let right = injective_dimension(a, Side::Right, cutoff)?;
    Ok(match (left, right) {
        (Some(left), Some(right)) => GorensteinVerdict::True { left, right },
        (left, right) => GorensteinVerdict::UnknownAtCutoff { left, right },
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "route", rename_all = "snake_case")]
pub enum GprojRoute {
    Projective,
    /// Gorenstein algebra of self-injective dimension `d`: Cohen-Macaulay up to `d`.
    Gorenstein { d: usize },
    /// Perfect-path classification over a monomial algebra.
    Monomial,
    /// Truncated total reflexivity; never upgraded to `True`.
    TotalReflexivity,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GprojVerdict {
    pub verdict: Verdict,
    #[serde(flatten)]
    pub route: GprojRoute,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

pub fn is_gorenstein_projective(m: &Representation, cutoff: usize, seed: u64) -> Result<GprojVerdict> {
    let a = m.algebra();
    if m.is_zero() || syzygy(m, 1).is_zero() {
        return Ok(GprojVerdict { verdict: Verdict::True, route: GprojRoute::Projective, note: None });
    }
    if a.is_monomial() {
        let yes = monomial::is_gproj_monomial(m, seed)?;
        let verdict = if yes { Verdict::True } else { Verdict::False };
        return Ok(GprojVerdict { verdict, route: GprojRoute::Monomial, note: None });
    }
    if let Some(d) = is_gorenstein(a, cutoff)?.dimension() {
        let lam = regular_module(a);
        for i in 1..=d {
            if ext(m, &lam, i)? != 0 {
                let note = Some(format!("Ext^{i}(M, A) is nonzero"));
                return Ok(GprojVerdict { verdict: Verdict::False, route: GprojRoute::Gorenstein { d }, note });
            }
        }
        return Ok(GprojVerdict { verdict: Verdict::True, route: GprojRoute::Gorenstein { d }, note: None });
    }
    total_reflexivity_probe(m, cutoff, seed)
}

/// `M ≅ M**` and `Ext^i(M,Λ) = 0 = Ext^i(M*,Λ)` for `i ≤ cutoff`. Failing any
/// check certifies `False`; passing all of them is reported as unknown.
pub fn total_reflexivity_probe(m: &Representation, cutoff: usize, seed: u64) -> Result<GprojVerdict> {
    let a = m.algebra();
    let route = GprojRoute::TotalReflexivity;
    let op = opposite_algebra(a)?;
    let lam = regular_module(a);
    let lam_op = regular_module(&op);
    let star = hom_dual(m, &op)?;
    for i in 1..=cutoff {
        if ext(m, &lam, i)? != 0 {
            return Ok(GprojVerdict { verdict: Verdict::False, route, note: Some(format!("Ext^{i}(M, A) is nonzero")) });
        }
        if !star.is_zero() && ext(&star, &lam_op, i)? != 0 {
            let note = Some(format!("Ext^{i}(M*, A) is nonzero"));
            return Ok(GprojVerdict { verdict: Verdict::False, route, note });
        }
    }
    let double = hom_dual(&star, a)?.with_algebra(a)?;
    let note = match is_isomorphic(m, &double, 32, seed)? {
        IsoVerdict::Yes(_) => "totally reflexive up to the cutoff".to_string(),
        IsoVerdict::No(_) => {
            return Ok(GprojVerdict { verdict: Verdict::False, route, note: Some("M is not reflexive".into()) })
        }
        IsoVerdict::ProbablyNo => "no isomorphism M -> M** found".to_string(),
    };
    Ok(GprojVerdict { verdict: Verdict::UnknownAtCutoff, route, note: Some(note) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::Field;
    use crate::fixtures;
    use crate::repmod::cyclic_module;

    const Q: Field = Field::Rational;

    fn simple(a: &Arc<Algebra>, v: usize) -> Representation {
        let mut dims = vec![0; a.quiver().num_vertices()];
        dims[v] = 1;
        let maps = a.quiver().arrows().iter().map(|x| Matrix::zeros(Q, dims[x.target], dims[x.source])).collect();
        Representation::new(a.clone(), dims, maps).unwrap()
    }

    fn lambda_v() -> (Arc<Algebra>, Representation) {
        let l = fixtures::lambda(Q);
        let v = cyclic_module(&l, &l.quiver().path_from_written(&["b", "a"]).unwrap()).unwrap();
        (l, v)
    }

    #[test]
    fn stable_hom_examples() {
        let (l, v) = lambda_v();
        assert_eq!(stable_hom(&projective(&l, 0), &v).unwrap().dim(), 0);
        assert_eq!(stable_hom(&v, &v).unwrap().dim(), 1);
        let g = fixtures::gamma(Q);
        let w = fixtures::gamma_string_module(&g);
        assert_eq!(stable_hom(&w, &w).unwrap().dim(), 1);
    }

    #[test]
    fn ext1_examples() {
        let (l, v) = lambda_v();
        assert_eq!(ext1(&projective(&l, 1), &v).unwrap(), 0);
        assert_eq!(ext1(&v, &v).unwrap(), 1);
        let g = fixtures::gamma(Q);
        let w = fixtures::gamma_string_module(&g);
        assert_eq!(ext1(&w, &w).unwrap(), 1);
    }

    #[test]
    fn syzygy_route_examples() {
        let (l, v) = lambda_v();
        assert_eq!(ext_via_syzygy(&v, &v, 1).unwrap(), 1);
        for i in 1..4 {
            assert_eq!(ext_via_syzygy(&projective(&l, 0), &v, i).unwrap(), 0);
        }
        let g = fixtures::gamma(Q);
        let w = fixtures::gamma_string_module(&g);
        assert_eq!(ext_via_syzygy(&w, &w, 1).unwrap(), 1);
    }

    #[test]
    fn syzygy_route_refuses_without_hypothesis() {
        let l = fixtures::lambda(Q);
        let s2 = simple(&l, 1);
        let lam = regular_module(&l);
        let i = (1..=4).find(|&i| ext(&s2, &lam, i).unwrap() != 0).expect("simple module is not Cohen-Macaulay");
        assert!(matches!(ext_via_syzygy(&s2, &s2, i), Err(Error::HypothesisFails(_))));
    }

    #[test]
    fn cohen_macaulay_examples() {
        let (l, _) = lambda_v();
        assert_eq!(is_cohen_macaulay(&projective(&l, 1), 3).unwrap().verdict, Verdict::True);
        let g = fixtures::gamma(Q);
        let w = fixtures::gamma_string_module(&g);
        assert_eq!(is_cohen_macaulay(&w, 2).unwrap().verdict, Verdict::True);
        let s = is_cohen_macaulay(&simple(&l, 1), default_cutoff(&l)).unwrap();
        assert_eq!(s.verdict, Verdict::False);
        assert!(s.nonvanishing_degree.is_some());
    }

    #[test]
    fn opposite_and_duals() {
        let g = fixtures::gamma(Q);
        let op = opposite_algebra(&g).unwrap();
        let opop = opposite_algebra(&op).unwrap();
        assert_eq!(opop.dim(), g.dim());
        let w = fixtures::gamma_string_module(&g);
        let back = dual(&dual(&w, &op).unwrap(), &opop).unwrap().with_algebra(&g).unwrap();
        assert!(is_isomorphic(&back, &w, 8, 0).unwrap().is_yes());
        assert!(dual(&w, &g).is_err());
    }

    #[test]
    fn lambda_opposite_is_lambda_with_arrows_swapped() {
        let l = fixtures::lambda(Q);
        let op = opposite_algebra(&l).unwrap();
        assert_eq!(op.dim(), l.dim());
        let zero = op.minimal_zero_paths().unwrap();
        assert_eq!(zero.len(), 1);
        let swapped: Vec<&str> =
            op.quiver().written_names(&zero[0]).iter().map(|n| if n == "a" { "b" } else { "a" }).collect();
        assert_eq!(swapped, vec!["b", "a", "b", "a"]);
    }

    #[test]
    fn self_injective_dimensions() {
        for a in [fixtures::lambda(Q), fixtures::gamma(Q)] {
            assert_eq!(injective_dimension(&a, Side::Left, 6).unwrap(), Some(2));
            assert_eq!(injective_dimension(&a, Side::Right, 6).unwrap(), Some(2));
            assert_eq!(is_gorenstein(&a, 6).unwrap(), GorensteinVerdict::True { left: 2, right: 2 });
        }
        let k = fixtures::ground(Q);
        assert_eq!(is_gorenstein(&k, 2).unwrap(), GorensteinVerdict::True { left: 0, right: 0 });
        let a2 = fixtures::a2(Q);
        let d = is_gorenstein(&a2, 4).unwrap().dimension().unwrap();
        assert!(d <= 1);
    }

    #[test]
    fn short_cutoff_stays_unknown() {
        let l = fixtures::lambda(Q);
        assert!(matches!(is_gorenstein(&l, 1).unwrap(), GorensteinVerdict::UnknownAtCutoff { .. }));
    }

    #[test]
    fn gproj_routes() {
        let (l, v) = lambda_v();
        let p = is_gorenstein_projective(&projective(&l, 0), 4, 0).unwrap();
        assert_eq!((p.verdict, p.route), (Verdict::True, GprojRoute::Projective));
        let r = is_gorenstein_projective(&v, default_cutoff(&l), 0).unwrap();
        assert_eq!((r.verdict, r.route), (Verdict::True, GprojRoute::Monomial));
        let s = is_gorenstein_projective(&simple(&l, 1), default_cutoff(&l), 0).unwrap();
        assert_eq!(s.verdict, Verdict::False);

        let g = fixtures::gamma(Q);
        let w = fixtures::gamma_string_module(&g);
        let r = is_gorenstein_projective(&w, default_cutoff(&g), 0).unwrap();
        assert_eq!((r.verdict, r.route), (Verdict::True, GprojRoute::Gorenstein { d: 2 }));
        let s = is_gorenstein_projective(&simple(&g, 0), default_cutoff(&g), 0).unwrap();
        assert_eq!(s.verdict, Verdict::False);
    }

    #[test]
    fn total_reflexivity_probe_never_certifies() {
        let (l, v) = lambda_v();
        let r = total_reflexivity_probe(&v, 3, 0).unwrap();
        assert_eq!(r.verdict, Verdict::UnknownAtCutoff);
        assert_eq!(r.note.as_deref(), Some("totally reflexive up to the cutoff"));
        let s = total_reflexivity_probe(&simple(&l, 1), 4, 0).unwrap();
        assert_eq!(s.verdict, Verdict::False);
    }
}
