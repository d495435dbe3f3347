//! Lifts of a module over truncated polynomial rings `k[t]/(t^{n+1})` and
//! the classification of its deformation ring.
//!
//! A lift of order `n` replaces each arrow matrix `A` by `A + tX₁ + … + tⁿXₙ`
//! and must satisfy every defining relation modulo `t^{n+1}`.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactlin::{quotient_basis, Matrix, QuotientBasis, Scalar};
use crate::homology::{default_cutoff, ext1, is_gorenstein, is_gorenstein_projective, stable_hom, Verdict};
use crate::monomial::{gproj_indecomposables, overlaps};
use crate::quiver::{Path, Relation};
use crate::repmod::{is_isomorphic, projective_cover, syzygy, IsoVerdict, Representation};

pub const DEFAULT_ORDER_CUTOFF: usize = 6;
const ISO_TRIALS: usize = 32;

/// Arrow matrices over `k[t]/(t^{order+1})`.
#[derive(Clone, Debug, PartialEq)]
pub struct LiftOrderN {
    pub module: Representation,
    /// `corrections[k-1][arrow]` is the coefficient of `t^k`.
    pub corrections: Vec<Vec<Matrix>>,
}

impl LiftOrderN {
    pub fn trivial(module: &Representation) -> Self {
        LiftOrderN { module: module.clone(), corrections: Vec::new() }
    }

    /// The first-order lift `A + tC`.
    pub fn first_order(module: &Representation, c: Vec<Matrix>) -> Result<Self> {
        let lift = LiftOrderN { module: module.clone(), corrections: vec![c] };
        lift.validate()?;
        Ok(lift)
    }

    pub fn order(&self) -> usize {
        self.corrections.len()
    }

    /// Coefficient list `[A, X₁, …, Xₙ]` of one arrow.
    fn arrow_series(&self, arrow: usize) -> Vec<Matrix> {
        std::iter::once(self.module.map(arrow).clone()).chain(self.corrections.iter().map(|c| c[arrow].clone())).collect()
    }

    /// Relation values up to `t^deg`, higher corrections taken as zero.
    fn relation_series(&self, rel: &Relation, deg: usize) -> Vec<Matrix> {
        let f = self.module.field();
        let dims = self.module.dims();
        let mut total = vec![Matrix::zeros(f, dims[rel.target()], dims[rel.source()]); deg + 1];
        for (c, p) in rel.terms() {
            for (k, m) in self.path_series(p, deg).into_iter().enumerate() {
                total[k].add_assign(&m.scale(c));
            }
        }
        total
    }

    fn path_series(&self, p: &Path, deg: usize) -> Vec<Matrix> {
        let f = self.module.field();
        let dims = self.module.dims();
        let mut cur = vec![Matrix::zeros(f, dims[p.source()], dims[p.source()]); deg + 1];
        cur[0] = Matrix::identity(f, dims[p.source()]);
        let q = self.module.algebra().quiver();
        for &a in p.arrows() {
            let x = self.arrow_series(a);
            let rows = dims[q.arrow(a).target];
            let mut next = vec![Matrix::zeros(f, rows, dims[p.source()]); deg + 1];
            for (i, xi) in x.iter().enumerate().take(deg + 1) {
                for (j, cj) in cur.iter().enumerate().take(deg + 1 - i) {
                    next[i + j].add_assign(&(xi * cj));
                }
            }
            cur = next;
        }
        cur
    }

    /// Relation coefficients at `t^deg` for `deg` one past the order.
    fn defect(&self, deg: usize) -> Vec<Matrix> {
        let rels = self.module.algebra().relations();
        rels.iter().map(|r| self.relation_series(r, deg).pop().expect("nonempty series")).collect()
    }

    /// Every relation vanishes modulo `t^{order+1}`.
    pub fn validate(&self) -> Result<()> {
        let dims = self.module.dims();
        let q = self.module.algebra().quiver();
        for (k, c) in self.corrections.iter().enumerate() {
            let shapes_ok = c.len() == q.arrows().len()
                && q.arrows().iter().zip(c).all(|(a, m)| m.shape() == (dims[a.target], dims[a.source]));
            if !shapes_ok {
                return Err(Error::InvalidLift(k + 1));
            }
        }
        for rel in self.module.algebra().relations() {
            for (k, m) in self.relation_series(rel, self.order()).iter().enumerate() {
                if !m.is_zero() {
                    return Err(Error::InvalidLift(k));
                }
            }
        }
        Ok(())
    }
}

/// Positions of all arrow-matrix entries in one flat vector, row-major per arrow.
fn arrow_offsets(m: &Representation) -> Vec<usize> {
    let q = m.algebra().quiver();
    let mut acc = 0;
    q.arrows()
        .iter()
        .map(|a| {
            let o = acc;
            acc += m.dim_at(a.target) * m.dim_at(a.source);
            o
        })
        .collect()
}

fn flatten(mats: &[Matrix]) -> Vec<Scalar> {
    mats.iter().flat_map(|m| (0..m.rows()).flat_map(move |r| m.row(r).to_vec())).collect()
}

fn unflatten(m: &Representation, v: &[Scalar]) -> Vec<Matrix> {
    let f = m.field();
    let q = m.algebra().quiver();
    let mut pos = 0;
    q.arrows()
        .iter()
        .map(|a| {
            let (r, c) = (m.dim_at(a.target), m.dim_at(a.source));
            let out = Matrix::from_fn(f, r, c, |i, j| v[pos + i * c + j].clone());
            pos += r * c;
            out
        })
        .collect()
}

/// Derivative of all relations at the module: `Y ↦ Σ c Σ A…Y…A`, in row-major coordinates.
fn linearization(m: &Representation) -> Matrix {
    let f = m.field();
    let a = m.algebra();
    let q = a.quiver();
    let offsets = arrow_offsets(m);
    let unknowns: usize = q.arrows().iter().map(|x| m.dim_at(x.target) * m.dim_at(x.source)).sum();
    let mut blocks = Matrix::zeros(f, 0, unknowns);
    for rel in a.relations() {
        let rows = m.dim_at(rel.target()) * m.dim_at(rel.source());
        let mut block = Matrix::zeros(f, rows, unknowns);
        for (c, p) in rel.terms() {
            let arrows = p.arrows();
            for i in 0..arrows.len() {
                let before = m.path_matrix(&p.segment(q, 0, i));
                let after = m.path_matrix(&p.segment(q, i + 1, arrows.len()));
                let term = after.kron(&before.transpose()).scale(c);
                let ai = arrows[i];
                let width = m.dim_at(q.arrow(ai).target) * m.dim_at(q.arrow(ai).source);
                let mut cur = block.block(0, offsets[ai], rows, width);
                cur.add_assign(&term);
                block.set_block(0, offsets[ai], &cur);
            }
        }
        blocks = blocks.vstack(&block);
    }
    blocks
}

/// Coboundaries `A_α g_s − g_t A_α` for `g ∈ ⊕ End(V_v)`, as columns.
fn coboundaries(m: &Representation) -> Matrix {
    let f = m.field();
    let q = m.algebra().quiver();
    let dims = m.dims();
    let mut goff = Vec::new();
    let mut acc = 0;
    for &d in dims {
        goff.push(acc);
        acc += d * d;
    }
    let offsets = arrow_offsets(m);
    let rows: usize = q.arrows().iter().map(|x| dims[x.target] * dims[x.source]).sum();
    let mut out = Matrix::zeros(f, rows, acc);
    for (ai, arrow) in q.arrows().iter().enumerate() {
        let (s, t) = (arrow.source, arrow.target);
        let am = m.map(ai);
        let r = dims[t] * dims[s];
        let left = am.kron(&Matrix::identity(f, dims[s]));
        let right = Matrix::identity(f, dims[t]).kron(&am.transpose());
        let mut b = out.block(offsets[ai], goff[s], r, dims[s] * dims[s]);
        b.add_assign(&left);
        out.set_block(offsets[ai], goff[s], &b);
        let mut b = out.block(offsets[ai], goff[t], r, dims[t] * dims[t]);
        b = b.sub(&right);
        out.set_block(offsets[ai], goff[t], &b);
    }
    out
}

/// First-order deformations modulo gauge: cocycles over coboundaries.
#[derive(Clone, Debug)]
pub struct TangentSpace {
    pub cocycles: Matrix,
    pub coboundaries: Matrix,
    /// Cocycles whose classes form a basis of the quotient.
    pub representatives: Vec<Vec<Matrix>>,
    quotient: QuotientBasis,
}

impl TangentSpace {
    pub fn dim(&self) -> usize {
        self.representatives.len()
    }

    /// Is this first-order correction a coboundary?
    pub fn is_trivial_class(&self, c: &[Matrix]) -> bool {
        let v = Matrix::column(self.cocycles.field(), flatten(c));
        (&self.quotient.projection * &v).is_zero()
    }
}

pub fn tangent_space(m: &Representation) -> TangentSpace {
    let f = m.field();
    let cocycles = linearization(m).nullspace();
    let coboundaries = coboundaries(m).column_basis();
    let ambient = cocycles.rows();
    let quotient = quotient_basis(f, ambient, &coboundaries);
    let stacked = coboundaries.hstack(&cocycles);
    let representatives = stacked
        .independent_cols()
        .into_iter()
        .filter(|&c| c >= coboundaries.cols())
        .map(|c| unflatten(m, &stacked.col_vec(c)))
        .collect();
    TangentSpace { cocycles, coboundaries, representatives, quotient }
}

/// Solves for the next correction with all lower orders fixed; `None` when obstructed.
pub fn extend_lift(lift: &LiftOrderN) -> Result<Option<LiftOrderN>> {
    lift.validate()?;
    let m = &lift.module;
    let rhs = Matrix::column(m.field(), flatten(&lift.defect(lift.order() + 1))).scale(&m.field().from_i64(-1));
    let Some(y) = linearization(m).solve(&rhs)? else {
        return Ok(None);
    };
    let mut next = lift.clone();
    next.corrections.push(unflatten(m, &y.col_vec(0)));
    next.validate()?;
    Ok(Some(next))
}

/// Like [`extend_lift`], but may also shift the top correction by a cocycle,
/// which keeps the lift valid at its own order. The defect is affine in that
/// shift once the order is at least two.
pub fn extend_lift_adjusting(lift: &LiftOrderN) -> Result<Option<LiftOrderN>> {
    if let Some(next) = extend_lift(lift)? {
        return Ok(Some(next));
    }
    let n = lift.order();
    if n < 2 {
        return Ok(None);
    }
    let m = &lift.module;
    let f = m.field();
    let base = flatten(&lift.defect(n + 1));
    let z = linearization(m).nullspace();
    let mut system = linearization(m);
    let mut shifts = Matrix::zeros(f, base.len(), 0);
    for k in 0..z.cols() {
        let zk = unflatten(m, &z.col_vec(k));
        let mut moved = lift.clone();
        for (x, d) in moved.corrections[n - 1].iter_mut().zip(&zk) {
            x.add_assign(d);
        }
        let delta: Vec<_> = flatten(&moved.defect(n + 1)).iter().zip(&base).map(|(a, b)| a - b).collect();
        shifts = shifts.hstack(&Matrix::column(f, delta));
    }
    system = system.hstack(&shifts);
    let rhs = Matrix::column(f, base).scale(&f.from_i64(-1));
    let Some(sol) = system.solve(&rhs)? else {
        return Ok(None);
    };
    let sol = sol.col_vec(0);
    let ny = linearization(m).cols();
    let mut shift = vec![f.zero(); ny];
    for k in 0..z.cols() {
        for (r, s) in shift.iter_mut().enumerate() {
            *s = &*s + &(&z[(r, k)] * &sol[ny + k]);
        }
    }
    let mut next = lift.clone();
    for (x, d) in next.corrections[n - 1].iter_mut().zip(unflatten(m, &shift)) {
        x.add_assign(&d);
    }
    next.corrections.push(unflatten(m, &sol[..ny]));
    next.validate()?;
    Ok(Some(next))
}

/// The lift over dual numbers given by `P(V)` with `t` acting as `ι ∘ φ ∘ π`
/// for an isomorphism `φ: V → ΩV`. In a basis adapted to
/// `0 → V → P(V) → V → 0` every arrow of `P(V)` reads `[[A, C], [0, A]]`,
/// and `C` is the first-order correction.
pub fn canonical_selfext_lift(v: &Representation, seed: u64) -> Result<LiftOrderN> {
    if v.is_zero() {
        return Err(Error::HypothesisFails("zero module".into()));
    }
    let cover = projective_cover(v)?;
    let phi = match is_isomorphic(v, &cover.kernel, ISO_TRIALS, seed)? {
        IsoVerdict::Yes(phi) => phi,
        _ => return Err(Error::HypothesisFails("syzygy is not isomorphic to the module".into())),
    };
    let f = v.field();
    let q = v.algebra().quiver();
    let frames: Vec<Matrix> = (0..q.num_vertices())
        .map(|j| {
            let sub = &cover.inclusion.blocks[j] * &phi.blocks[j];
            let section = cover.map.blocks[j]
                .solve(&Matrix::identity(f, v.dim_at(j)))
                .expect("shapes agree")
                .expect("cover map is onto");
            sub.hstack(&section)
        })
        .collect();
    let mut c = Vec::with_capacity(q.arrows().len());
    for (ai, arrow) in q.arrows().iter().enumerate() {
        let (s, t) = (arrow.source, arrow.target);
        let inv = frames[t].inverse().expect("adapted frame is a basis");
        let adapted = &(&inv * cover.cover.map(ai)) * &frames[s];
        c.push(adapted.block(0, v.dim_at(s), v.dim_at(t), v.dim_at(s)));
    }
    LiftOrderN::first_order(v, c)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RingTag {
    /// The ground field `k`.
    Trivial,
    /// `k[[t]]/(t²)`.
    DualNumbers2,
    /// `k[[t]]/(tⁿ)`, `n ≥ 3`.
    TruncatedPoly(usize),
    Undetermined,
}

impl fmt::Display for RingTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingTag::Trivial => write!(f, "k"),
            RingTag::DualNumbers2 => write!(f, "k[[t]]/(t^2)"),
            RingTag::TruncatedPoly(n) => write!(f, "k[[t]]/(t^{n})"),
            RingTag::Undetermined => write!(f, "undetermined"),
        }
    }
}

impl Serialize for RingTag {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

fn ring_from_obstruction(order: usize) -> RingTag {
    if order == 2 { RingTag::DualNumbers2 } else { RingTag::TruncatedPoly(order) }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DefoRoute {
    /// Tangent space zero.
    Rigid,
    Monomial,
    Gorenstein,
    /// Hypotheses unmet: evidence only.
    None,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DefoReport {
    pub ring: RingTag,
    pub route: DefoRoute,
    pub tangent_dim: usize,
    /// Smallest `n` at which the probed first-order lift fails to reach order `n`.
    pub obstruction_order: Option<usize>,
    pub orders_probed: usize,
    pub order_cutoff: usize,
}

/// Outcome of pushing one first-order lift upward.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Probe {
    /// Extends to order `n - 1` but not to `n`.
    ObstructedAt(usize),
    /// Reached the cutoff order.
    Unobstructed(usize),
}

pub fn probe(first: &LiftOrderN, order_cutoff: usize) -> Result<Probe> {
    let mut cur = first.clone();
    while cur.order() < order_cutoff {
        match extend_lift_adjusting(&cur)? {
            Some(next) => cur = next,
            None => return Ok(Probe::ObstructedAt(cur.order() + 1)),
        }
    }
    Ok(Probe::Unobstructed(cur.order()))
}

#[derive(Clone, Copy, Debug)]
pub struct DefoOptions {
    pub order_cutoff: usize,
    /// Cutoff for Gorenstein and Gorenstein-projective certification; `None` means `dim Λ + 2`.
    pub homological_cutoff: Option<usize>,
    pub seed: u64,
}

impl Default for DefoOptions {
    fn default() -> Self {
        DefoOptions { order_cutoff: DEFAULT_ORDER_CUTOFF, homological_cutoff: None, seed: 0 }
    }
}

/// Is `V` isomorphic to some `Λp` with `p` perfect, over a monomial algebra without overlaps?
fn monomial_hypotheses(v: &Representation, seed: u64) -> Result<bool> {
    let a = v.algebra();
    if !a.is_monomial() || !overlaps(a)?.is_empty() {
        return Ok(false);
    }
    for entry in gproj_indecomposables(a, seed)?.nonprojective {
        if is_isomorphic(v, &entry.module, ISO_TRIALS, seed)?.is_yes() {
            return Ok(true);
        }
    }
    Ok(false)
}

fn gorenstein_hypotheses(v: &Representation, cutoff: usize, seed: u64) -> Result<bool> {
    let a = v.algebra();
    Ok(is_gorenstein(a, cutoff)?.dimension().is_some()
        && is_gorenstein_projective(v, cutoff, seed)?.verdict == Verdict::True
        && stable_hom(v, v)?.dim() == 1)
}

/// First-order lift spanning a one-dimensional tangent space: the canonical
/// one when `ΩV ≅ V`, otherwise the tangent basis vector.
fn spanning_lift(v: &Representation, tangent: &TangentSpace, seed: u64) -> Result<LiftOrderN> {
    match canonical_selfext_lift(v, seed) {
        Ok(l) => Ok(l),
        Err(Error::HypothesisFails(_)) => LiftOrderN::first_order(v, tangent.representatives[0].clone()),
        Err(e) => Err(e),
    }
}

pub fn classify_defo_ring(v: &Representation, opts: DefoOptions) -> Result<DefoReport> {
    let a = v.algebra();
    let cutoff = opts.homological_cutoff.unwrap_or_else(|| default_cutoff(a));
    let tangent = tangent_space(v);
    let mut report = DefoReport {
        ring: RingTag::Undetermined,
        route: DefoRoute::None,
        tangent_dim: tangent.dim(),
        obstruction_order: None,
        orders_probed: 0,
        order_cutoff: opts.order_cutoff,
    };
    let probed = if tangent.dim() == 1 {
        let first = spanning_lift(v, &tangent, opts.seed)?;
        let outcome = probe(&first, opts.order_cutoff)?;
        match outcome {
            Probe::ObstructedAt(n) => {
                report.orders_probed = n;
                report.obstruction_order = Some(n);
            }
            Probe::Unobstructed(n) => report.orders_probed = n,
        }
        Some(outcome)
    } else {
        None
    };
    if monomial_hypotheses(v, opts.seed)? {
        report.route = DefoRoute::Monomial;
        report.ring = if ext1(v, v)? == 0 { RingTag::Trivial } else { RingTag::DualNumbers2 };
    } else if gorenstein_hypotheses(v, cutoff, opts.seed)? {
        report.route = DefoRoute::Gorenstein;
        report.ring = match (tangent.dim(), probed) {
            (0, _) => RingTag::Trivial,
            (_, Some(Probe::ObstructedAt(n))) => ring_from_obstruction(n),
            _ => RingTag::Undetermined,
        };
    } else if tangent.dim() == 0 {
        // A zero tangent space forces the versal ring to be k.
        report.route = DefoRoute::Rigid;
        report.ring = RingTag::Trivial;
    }
    Ok(report)
}

/// Side-by-side classification of `V` and `ΩV`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SyzygyComparison {
    pub module: DefoReport,
    pub syzygy: DefoReport,
    pub agree: bool,
}

pub fn compare_with_syzygy(v: &Representation, opts: DefoOptions) -> Result<SyzygyComparison> {
    let module = classify_defo_ring(v, opts)?;
    let omega = syzygy(v, 1);
    let syzygy = if omega.is_zero() {
        DefoReport { ring: RingTag::Trivial, route: DefoRoute::Rigid, tangent_dim: 0, obstruction_order: None, orders_probed: 0, order_cutoff: opts.order_cutoff }
    } else {
        classify_defo_ring(&omega, opts)?
    };
    let agree = module.ring == syzygy.ring;
    Ok(SyzygyComparison { module, syzygy, agree })
}
