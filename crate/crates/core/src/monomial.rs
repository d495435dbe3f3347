//! Perfect paths and overlaps of monomial algebras, and the resulting
//! classification of Gorenstein-projective modules.
//!
//! Factorizations are read on written words: `q' = q q''` means the written
//! word of `q` is a prefix of that of `q'`. In application order that makes
//! `q` a suffix of `q'`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::quiver::{Algebra, Path};
use crate::repmod::{complement, cyclic_module, find_split_pair, projective, strip_projectives, Representation};

fn require_monomial(a: &Algebra) -> Result<()> {
    if a.is_monomial() { Ok(()) } else { Err(Error::NotMonomial) }
}

fn is_nonzero(a: &Algebra, p: &Path) -> bool {
    !a.is_zero_path(p)
}

/// Is the written product `p·q` defined and zero in the algebra?
fn product_vanishes(a: &Algebra, p: &Path, q: &Path) -> bool {
    p.mul(q).is_some_and(|pq| a.is_zero_path(&pq))
}

pub fn is_perfect_pair(a: &Algebra, p: &Path, q: &Path) -> Result<bool> {
    require_monomial(a)?;
    if p.is_trivial() || q.is_trivial() || !is_nonzero(a, p) || !is_nonzero(a, q) {
        return Ok(false);
    }
    if !product_vanishes(a, p, q) {
        return Ok(false);
    }
    let paths = a.nonzero_paths();
    // Every nonzero q' killed by p is q·q''.
    let right = paths
        .iter()
        .filter(|r| r.target() == p.source() && product_vanishes(a, p, r))
        .all(|r| r.arrows().ends_with(q.arrows()));
    // Every nonzero p' killing q is p''·p.
    let left = paths
        .iter()
        .filter(|l| l.source() == q.target() && product_vanishes(a, l, q))
        .all(|l| l.arrows().starts_with(p.arrows()));
    Ok(right && left)
}

/// A cyclic sequence with each consecutive pair `(p_i, p_{i+1})` perfect.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PerfectCycle {
    pub paths: Vec<Path>,
}

impl PerfectCycle {
    pub fn contains(&self, p: &Path) -> bool {
        self.paths.contains(p)
    }

    /// `p_{i-1}` for `p = p_i`, cyclically.
    pub fn predecessor(&self, p: &Path) -> Option<&Path> {
        let i = self.paths.iter().position(|x| x == p)?;
        Some(&self.paths[(i + self.paths.len() - 1) % self.paths.len()])
    }
}

/// All elementary cycles of the perfect-pair graph on nonzero non-trivial paths.
///
/// Each path has at most one perfect successor and one perfect predecessor,
/// since both are generators of a one-sided annihilator. The graph is a
/// partial permutation, so its elementary cycles are its orbits.
pub fn perfect_paths(a: &Algebra) -> Result<Vec<PerfectCycle>> {
    require_monomial(a)?;
    let nodes: Vec<Path> = a.nonzero_paths().into_iter().filter(|p| !p.is_trivial()).collect();
    let mut succ = vec![None; nodes.len()];
    for (i, p) in nodes.iter().enumerate() {
        for (j, q) in nodes.iter().enumerate() {
            if is_perfect_pair(a, p, q)? {
                debug_assert!(succ[i].is_none(), "perfect successor is unique");
                succ[i] = Some(j);
            }
        }
    }
    let mut cycles = Vec::new();
    let mut seen = vec![false; nodes.len()];
    for start in 0..nodes.len() {
        if seen[start] {
            continue;
        }
        let mut walk = vec![start];
        let mut cur = start;
        while let Some(next) = succ[cur] {
            if next == start {
                for &i in &walk {
                    seen[i] = true;
                }
                cycles.push(PerfectCycle { paths: walk.iter().map(|&i| nodes[i].clone()).collect() });
                break;
            }
            if seen[next] || walk.contains(&next) {
                break;
            }
            walk.push(next);
            cur = next;
        }
        seen[start] = true;
    }
    Ok(cycles)
}

/// Members of all perfect cycles, in basis order.
pub fn perfect_path_list(a: &Algebra) -> Result<Vec<Path>> {
    let cycles = perfect_paths(a)?;
    Ok(a.nonzero_paths().into_iter().filter(|p| cycles.iter().any(|c| c.contains(p))).collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OverlapKind {
    /// `p = q`, with `p'`, `x`, `q'` all non-trivial.
    SelfOverlap,
    /// `p ≠ q`, with `x` non-trivial.
    Distinct,
}

/// `p = p'x`, `q = xq'` with `p'xq'` nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Overlap {
    pub kind: OverlapKind,
    pub p: Path,
    pub q: Path,
    pub x: Path,
    pub p_prime: Path,
    pub q_prime: Path,
}

impl Overlap {
    /// Whether the overlap survives when `p'` and `q'` must also be non-trivial.
    pub fn is_strict(&self) -> bool {
        !self.p_prime.is_trivial() && !self.q_prime.is_trivial()
    }
}

/// All overlaps between ordered pairs of perfect paths. Distinct pairs only
/// need `x` non-trivial; [`Overlap::is_strict`] tells the stricter reading apart.
pub fn overlaps(a: &Algebra) -> Result<Vec<Overlap>> {
    let perfect = perfect_path_list(a)?;
    let quiver = a.quiver();
    let mut out = Vec::new();
    for p in &perfect {
        for q in &perfect {
            let kind = if p == q { OverlapKind::SelfOverlap } else { OverlapKind::Distinct };
            for k in 1..=p.len().min(q.len()) {
                // Written p = p'x: x is applied first. Written q = xq': x is applied last.
                let x = p.segment(quiver, 0, k);
                let p_prime = p.segment(quiver, k, p.len());
                if q.segment(quiver, q.len() - k, q.len()) != x {
                    continue;
                }
                let q_prime = q.segment(quiver, 0, q.len() - k);
                let candidate = Overlap { kind, p: p.clone(), q: q.clone(), x, p_prime, q_prime };
                if kind == OverlapKind::SelfOverlap && !candidate.is_strict() {
                    continue;
                }
                let whole = candidate
                    .p_prime
                    .mul(&candidate.x)
                    .and_then(|px| px.mul(&candidate.q_prime))
                    .expect("factors compose");
                if is_nonzero(a, &whole) {
                    out.push(candidate);
                }
            }
        }
    }
    Ok(out)
}

/// `p_i` for `p = p_{i+1}` in its perfect cycle; `Ω(Λp_{i+1}) ≅ Λp_i`.
pub fn syzygy_of_perfect(a: &Algebra, p: &Path) -> Result<Path> {
    perfect_paths(a)?
        .iter()
        .find_map(|c| c.predecessor(p).cloned())
        .ok_or(Error::NotPerfect)
}

#[derive(Clone, Debug)]
pub struct GprojEntry {
    pub generator: Path,
    pub module: Representation,
    pub syzygy_generator: Path,
}

#[derive(Clone, Debug)]
pub struct GprojClassification {
    /// One `Λp` per isomorphism class, `p` perfect.
    pub nonprojective: Vec<GprojEntry>,
    /// Vertices `v` of the indecomposable projectives `Λe_v`.
    pub projectives: Vec<usize>,
}

/// The indecomposable Gorenstein-projective modules: the `Λp` for perfect `p`
/// up to isomorphism, plus the indecomposable projectives.
pub fn gproj_indecomposables(a: &Arc<Algebra>, seed: u64) -> Result<GprojClassification> {
    let perfect = perfect_paths(a)?;
    let mut nonprojective: Vec<GprojEntry> = Vec::new();
    for p in perfect_path_list(a)? {
        let module = cyclic_module(a, &p)?;
        let mut duplicate = false;
        for e in &nonprojective {
            if crate::repmod::is_isomorphic(&e.module, &module, 16, seed)?.is_yes() {
                duplicate = true;
                break;
            }
        }
        if duplicate {
            continue;
        }
        let syzygy_generator =
            perfect.iter().find_map(|c| c.predecessor(&p).cloned()).expect("perfect path lies on a cycle");
        nonprojective.push(GprojEntry { generator: p, module, syzygy_generator });
    }
    Ok(GprojClassification { nonprojective, projectives: (0..a.quiver().num_vertices()).collect() })
}

/// Exact Gorenstein-projectivity over a monomial algebra: after removing
/// projective summands, `M` must split completely into modules `Λp`.
///
/// Each candidate summand has a local endomorphism ring, so the basis pass of
/// [`find_split_pair`] decides membership without sampling.
pub fn is_gproj_monomial(m: &Representation, seed: u64) -> Result<bool> {
    let a = m.algebra();
    require_monomial(a)?;
    let candidates: Vec<Representation> =
        perfect_path_list(a)?.iter().map(|p| cyclic_module(a, p)).collect::<Result<_>>()?;
    let mut core = strip_projectives(m, 0, seed)?.core;
    'outer: while !core.is_zero() {
        for x in &candidates {
            if x.total_dim() > core.total_dim() {
                continue;
            }
            if let Some(pair) = find_split_pair(&core, x, 0, seed)? {
                core = complement(&core, &pair);
                continue 'outer;
            }
        }
        return Ok(false);
    }
    Ok(true)
}

/// `Λe_v` for every vertex, the projective entries of the classification.
pub fn indecomposable_projectives(a: &Arc<Algebra>) -> Vec<Representation> {
    (0..a.quiver().num_vertices()).map(|v| projective(a, v)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::{Field, Matrix};
    use crate::fixtures;
    use crate::homology::{ext1, stable_hom};
    use crate::repmod::{is_isomorphic, syzygy};

    const Q: Field = Field::Rational;

    fn w(a: &Algebra, word: &[&str]) -> Path {
        a.quiver().path_from_written(word).unwrap()
    }

    fn names(a: &Algebra, ps: &[Path]) -> Vec<String> {
        ps.iter().map(|p| a.display_path(p)).collect()
    }

    #[test]
    fn perfect_pair_examples() {
        let l = fixtures::lambda(Q);
        assert!(is_perfect_pair(&l, &w(&l, &["b", "a"]), &w(&l, &["b", "a"])).unwrap());
        assert!(!is_perfect_pair(&l, &w(&l, &["a"]), &w(&l, &["b"])).unwrap());
        let d = fixtures::dual_numbers(Q);
        assert!(is_perfect_pair(&d, &w(&d, &["a"]), &w(&d, &["a"])).unwrap());
        let g = fixtures::gamma(Q);
        assert_eq!(is_perfect_pair(&g, &w(&g, &["x"]), &w(&g, &["y"])).unwrap_err(), Error::NotMonomial);
    }

    #[test]
    fn perfect_path_examples() {
        let l = fixtures::lambda(Q);
        let cycles = perfect_paths(&l).unwrap();
        assert_eq!(cycles.len(), 1);
        assert_eq!(names(&l, &cycles[0].paths), vec!["ba"]);

        assert!(perfect_paths(&fixtures::a2(Q)).unwrap().is_empty());

        let d = fixtures::dual_numbers(Q);
        let cycles = perfect_paths(&d).unwrap();
        assert_eq!(cycles.len(), 1);
        assert_eq!(names(&d, &cycles[0].paths), vec!["a"]);

        let c = fixtures::cycle3(Q);
        let cycles = perfect_paths(&c).unwrap();
        assert_eq!(cycles.len(), 1);
        assert_eq!(cycles[0].paths.len(), 3);
    }

    #[test]
    fn overlap_examples() {
        for a in [fixtures::lambda(Q), fixtures::dual_numbers(Q), fixtures::cycle3(Q), fixtures::a2(Q)] {
            assert!(overlaps(&a).unwrap().is_empty());
        }
    }

    #[test]
    fn overlap_found_in_longer_cycle_algebra() {
        // Loop `a` with a³ = 0: the perfect paths are a and a², pairing with each other.
        let q = crate::quiver::Quiver::new(&["1"], &[("a", "1", "1")]).unwrap();
        let rel = crate::quiver::Relation::monomial(Q, q.path_from_written(&["a", "a", "a"]).unwrap()).unwrap();
        let a = Algebra::from_presentation(Q, q, vec![rel]).unwrap();
        let perfect = perfect_path_list(&a).unwrap();
        assert_eq!(names(&a, &perfect), vec!["a", "aa"]);
        let found = overlaps(&a).unwrap();
        assert!(!found.is_empty());
        // p = aa, q = a, x = a: here q' is trivial, only the as-written reading counts it.
        assert!(found.iter().any(|o| !o.is_strict()));
        assert!(found.iter().all(|o| o.kind == OverlapKind::Distinct));
    }

    #[test]
    fn syzygy_of_perfect_examples() {
        let l = fixtures::lambda(Q);
        let ba = w(&l, &["b", "a"]);
        assert_eq!(syzygy_of_perfect(&l, &ba).unwrap(), ba);
        assert_eq!(syzygy_of_perfect(&l, &w(&l, &["a"])).unwrap_err(), Error::NotPerfect);
        let d = fixtures::dual_numbers(Q);
        assert_eq!(syzygy_of_perfect(&d, &w(&d, &["a"])).unwrap(), w(&d, &["a"]));

        let c = fixtures::cycle3(Q);
        let mut p = w(&c, &["a"]);
        let mut seen = Vec::new();
        for _ in 0..3 {
            p = syzygy_of_perfect(&c, &p).unwrap();
            seen.push(c.display_path(&p));
        }
        assert_eq!(p, w(&c, &["a"]));
        seen.sort();
        assert_eq!(seen, vec!["a", "b", "c"]);
    }

    #[test]
    fn syzygy_formula_matches_kernel() {
        for a in [fixtures::lambda(Q), fixtures::dual_numbers(Q), fixtures::cycle3(Q)] {
            for p in perfect_path_list(&a).unwrap() {
                let omega = syzygy(&cyclic_module(&a, &p).unwrap(), 1);
                let predicted = cyclic_module(&a, &syzygy_of_perfect(&a, &p).unwrap()).unwrap();
                assert!(is_isomorphic(&omega, &predicted, 16, 0).unwrap().is_yes());
            }
        }
    }

    #[test]
    fn stable_endomorphisms_and_ext_dichotomy() {
        for a in [fixtures::lambda(Q), fixtures::dual_numbers(Q), fixtures::cycle3(Q)] {
            for p in perfect_path_list(&a).unwrap() {
                let v = cyclic_module(&a, &p).unwrap();
                assert_eq!(stable_hom(&v, &v).unwrap().dim(), 1);
                let self_syzygy = is_isomorphic(&syzygy(&v, 1), &v, 16, 0).unwrap().is_yes();
                assert_eq!(ext1(&v, &v).unwrap(), usize::from(self_syzygy));
            }
        }
    }

    #[test]
    fn classification_examples() {
        let l = fixtures::lambda(Q);
        let c = gproj_indecomposables(&l, 0).unwrap();
        assert_eq!(c.nonprojective.len(), 1);
        assert_eq!(c.nonprojective[0].module.dims(), &[1, 1]);
        assert_eq!(c.projectives, vec![0, 1]);
        assert!(gproj_indecomposables(&fixtures::a2(Q), 0).unwrap().nonprojective.is_empty());
        let d = fixtures::dual_numbers(Q);
        let c = gproj_indecomposables(&d, 0).unwrap();
        assert_eq!(c.nonprojective.len(), 1);
        assert_eq!(c.nonprojective[0].module.dims(), &[1]);
    }

    #[test]
    fn monomial_gproj_test_splits_sums() {
        let l = fixtures::lambda(Q);
        let v = cyclic_module(&l, &w(&l, &["b", "a"])).unwrap();
        let sum = v.direct_sum(&projective(&l, 1)).unwrap().direct_sum(&v).unwrap();
        assert!(is_gproj_monomial(&sum, 3).unwrap());
        let s = Representation::new(
            l.clone(),
            vec![0, 1],
            vec![Matrix::zeros(Q, 1, 0), Matrix::zeros(Q, 0, 1)],
        )
        .unwrap();
        assert!(!is_gproj_monomial(&s, 3).unwrap());
        assert!(!is_gproj_monomial(&v.direct_sum(&s).unwrap(), 3).unwrap());
    }
}
