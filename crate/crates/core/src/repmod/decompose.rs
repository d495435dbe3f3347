//! Isomorphism testing, projective peeling and indecomposability.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{hom, projective, projective_basis, HomSpace, Morphism, Representation};
use crate::error::{Error, Result};
use crate::exactlin::{Field, Matrix, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NonIsoReason {
    DimensionVectors,
    /// `dim Hom(M,N)`, `dim Hom(N,M)` and `dim End(M)` must agree for isomorphic modules.
    HomDimensions { forward: usize, backward: usize, endo: usize },
}

#[derive(Clone, Debug)]
pub enum IsoVerdict {
    /// An invertible intertwiner `M → N`, verified exactly.
    Yes(Morphism),
    No(NonIsoReason),
    /// Every sampled intertwiner was singular.
    ProbablyNo,
}

impl IsoVerdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, IsoVerdict::Yes(_))
    }
}

fn random_coeffs(field: Field, rng: &mut ChaCha8Rng, n: usize, range: i64) -> Vec<Scalar> {
    (0..n).map(|_| field.from_i64(rng.gen_range(-range..=range))).collect()
}

pub fn is_isomorphic(m: &Representation, n: &Representation, trials: usize, seed: u64) -> Result<IsoVerdict> {
    m.check_same_algebra(n)?;
    if m.dims() != n.dims() {
        return Ok(IsoVerdict::No(NonIsoReason::DimensionVectors));
    }
    if m == n {
        return Ok(IsoVerdict::Yes(Morphism::identity(m)));
    }
    let forward = hom(m, n)?;
    let backward = hom(n, m)?.dim();
    let endo = hom(m, m)?.dim();
    if forward.dim() != backward || forward.dim() != endo {
        return Ok(IsoVerdict::No(NonIsoReason::HomDimensions { forward: forward.dim(), backward, endo }));
    }
    if m.is_zero() {
        return Ok(IsoVerdict::Yes(Morphism::identity(m)));
    }
    let field = m.field();
    for b in &forward.basis {
        if b.is_invertible() {
            return Ok(IsoVerdict::Yes(b.clone()));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for t in 0..trials {
        let coeffs = random_coeffs(field, &mut rng, forward.dim(), 2 + t as i64);
        let f = forward.combination(&coeffs);
        if f.is_invertible() {
            debug_assert!(f.is_homomorphism(m, n));
            return Ok(IsoVerdict::Yes(f));
        }
    }
    Ok(IsoVerdict::ProbablyNo)
}

/// Maps `f: X → M`, `g: M → X` with `g ∘ f` invertible, exhibiting `X` as a summand of `M`.
#[derive(Clone, Debug)]
pub struct SplitPair {
    pub f: Morphism,
    pub g: Morphism,
}

/// Searches basis pairs of `Hom(X,M) × Hom(M,X)` first, then random
/// combinations. When `End(X)` is local the basis pass alone is exhaustive.
pub fn find_split_pair(m: &Representation, x: &Representation, trials: usize, seed: u64) -> Result<Option<SplitPair>> {
    let into = hom(x, m)?;
    let out = hom(m, x)?;
    for f in &into.basis {
        for g in &out.basis {
            if g.compose(f).is_invertible() {
                return Ok(Some(SplitPair { f: f.clone(), g: g.clone() }));
            }
        }
    }
    if into.dim() == 0 || out.dim() == 0 {
        return Ok(None);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for t in 0..trials {
        let range = 2 + t as i64;
        let f = into.combination(&random_coeffs(m.field(), &mut rng, into.dim(), range));
        let g = out.combination(&random_coeffs(m.field(), &mut rng, out.dim(), range));
        if g.compose(&f).is_invertible() {
            return Ok(Some(SplitPair { f, g }));
        }
    }
    Ok(None)
}

/// Complement of a split summand: `ker g`, which is `ker(f (gf)^{-1} g)`.
pub fn complement(m: &Representation, pair: &SplitPair) -> Representation {
    pair.g.kernel(m).0
}

/// Exact test: `P_v` is a summand of `M` iff some composite `P_v → M → P_v`
/// has a nonzero coefficient on `e_v`, i.e. lies outside `rad End(P_v)`.
fn projective_is_summand(m: &Representation, v: usize) -> Result<bool> {
    let a = m.algebra();
    let pv = projective(a, v);
    let local = projective_basis(a, v)[v].iter().position(|&b| b == a.idempotent(v)).expect("e_v lies in P_v");
    let into = hom(&pv, m)?;
    let out = hom(m, &pv)?;
    for f in &into.basis {
        for g in &out.basis {
            if !g.compose(f).blocks[v][(local, local)].is_zero() {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

#[derive(Clone, Debug)]
pub struct Stripped {
    pub core: Representation,
    /// Vertices of the peeled projectives, in peeling order.
    pub peeled: Vec<usize>,
}

/// Splits off indecomposable projective summands until none remain.
pub fn strip_projectives(m: &Representation, trials: usize, seed: u64) -> Result<Stripped> {
    let a = m.algebra().clone();
    let mut core = m.clone();
    let mut peeled = Vec::new();
    'outer: loop {
        for v in 0..a.quiver().num_vertices() {
            if core.is_zero() {
                break 'outer;
            }
            if !projective_is_summand(&core, v)? {
                continue;
            }
            let pv = projective(&a, v);
            let pair = find_split_pair(&core, &pv, trials, seed)?.ok_or(Error::SplitSearchExhausted(trials))?;
            core = complement(&core, &pair);
            peeled.push(v);
            continue 'outer;
        }
        break;
    }
    Ok(Stripped { core, peeled })
}

#[derive(Clone, Debug)]
pub enum Indecomposability {
    Yes,
    /// A nontrivial idempotent endomorphism.
    No(Morphism),
    Undetermined,
}

/// Decides indecomposability from `End(M)/rad End(M)` where the radical is the
/// kernel of the trace form (characteristic zero only).
pub fn is_indecomposable(m: &Representation, seed: u64) -> Result<Indecomposability> {
    if m.field().characteristic() != 0 {
        return Err(Error::UnsupportedField("trace-form radical needs characteristic 0".into()));
    }
    if m.is_zero() {
        return Ok(Indecomposability::No(Morphism::identity(m)));
    }
    let end = hom(m, m)?;
    let f = m.field();
    let k = end.dim();
    let gram = Matrix::from_fn(f, k, k, |i, j| {
        end.basis[i].compose(&end.basis[j]).blocks.iter().fold(f.zero(), |acc, b| &acc + &b.trace())
    });
    let rad_dim = gram.nullspace().cols();
    if k - rad_dim == 1 {
        return Ok(Indecomposability::Yes);
    }
    Ok(match find_idempotent(m, &end, seed) {
        Some(e) => Indecomposability::No(e),
        None => Indecomposability::Undetermined,
    })
}

/// Fitting decomposition search: an endomorphism `y` that is neither
/// nilpotent nor invertible splits `M = ker y^n ⊕ im y^n`.
fn find_idempotent(m: &Representation, end: &HomSpace, seed: u64) -> Option<Morphism> {
    let f = m.field();
    let n = m.total_dim() as u32;
    let mut candidates: Vec<Morphism> = end.basis.clone();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..8 {
        candidates.push(end.combination(&random_coeffs(f, &mut rng, end.dim(), 3)));
    }
    for x in candidates {
        let full = Matrix::block_diag(f, &x.blocks.iter().collect::<Vec<_>>());
        for lambda in rational_eigenvalues(&full) {
            let y = Morphism {
                blocks: x.blocks.iter().map(|b| b.sub(&Matrix::identity(f, b.rows()).scale(&lambda))).collect(),
            };
            let powered: Vec<Matrix> = y.blocks.iter().map(|b| b.pow(n)).collect();
            let nilpotent = powered.iter().all(Matrix::is_zero);
            if nilpotent || y.is_invertible() {
                continue;
            }
            let blocks = powered
                .iter()
                .map(|p| {
                    let image = p.column_basis();
                    let kernel = p.nullspace();
                    let frame = image.hstack(&kernel);
                    let mut diag = Matrix::zeros(f, frame.rows(), frame.cols());
                    for i in 0..image.cols() {
                        diag[(i, i)] = f.one();
                    }
                    &(&frame * &diag) * &frame.inverse().expect("Fitting frame is invertible")
                })
                .collect();
            let e = Morphism { blocks };
            debug_assert!(e.is_homomorphism(m, m));
            return Some(e);
        }
    }
    None
}

/// Rational roots of the characteristic polynomial (Faddeev-LeVerrier), for
/// matrices over Q with moderately sized coefficients.
fn rational_eigenvalues(a: &Matrix) -> Vec<Scalar> {
    let f = a.field();
    let n = a.rows();
    if n == 0 {
        return Vec::new();
    }
    // coeffs[i] multiplies t^i; monic of degree n.
    let mut coeffs = vec![f.zero(); n + 1];
    coeffs[n] = f.one();
    let mut mk = Matrix::zeros(f, n, n);
    let ident = Matrix::identity(f, n);
    for k in 1..=n {
        mk = (a * &mk).add(&ident.scale(&coeffs[n - k + 1]));
        let tr = (a * &mk).trace();
        coeffs[n - k] = -(&tr / &f.from_i64(k as i64));
    }
    let rat: Vec<BigRational> = coeffs.iter().map(|c| c.as_rational().expect("characteristic 0").clone()).collect();
    let lcm = rat.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let mut ints: Vec<BigInt> = rat.iter().map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    let mut roots = Vec::new();
    while ints.len() > 1 && ints[0].is_zero() {
        ints.remove(0);
        if !roots.contains(&f.zero()) {
            roots.push(f.zero());
        }
    }
    if ints.len() <= 1 {
        return roots;
    }
    let (Some(c0), Some(cn)) = (ints[0].abs().to_u64(), ints.last().and_then(|c| c.abs().to_u64())) else {
        return roots;
    };
    if c0 > 1_000_000_000_000 || cn > 1_000_000_000_000 {
        return roots;
    }
    for p in divisors(c0) {
        for q in divisors(cn) {
            for sign in [1i64, -1] {
                let cand = BigRational::new(BigInt::from(sign) * BigInt::from(p), BigInt::from(q));
                let value = ints.iter().rev().fold(BigRational::zero(), |acc, c| acc * &cand + BigRational::from_integer(c.clone()));
                let s = Scalar::Q(cand);
                if value.is_zero() && !roots.contains(&s) {
                    roots.push(s);
                }
            }
        }
    }
    roots
}

fn divisors(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            if d != n / d {
                out.push(n / d);
            }
        }
        d += 1;
    }
    out.sort_unstable();
    out
}
