//! Quivers, paths, admissible relations and the finite-dimensional quotient
//! `kQ/I` with an explicit multiplication table.
//!
//! Paths are stored in application order: `arrows[0]` acts first. Displayed
//! paths use right-to-left composition, so the stored `[a, b]` prints as `ba`.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::exactlin::{Field, Matrix, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

impl Quiver {
    /// `arrows` are `(name, source, target)` triples naming declared vertices.
    pub fn new<S: AsRef<str>>(vertices: &[S], arrows: &[(S, S, S)]) -> Result<Self> {
        let vertices: Vec<String> = vertices.iter().map(|v| v.as_ref().to_string()).collect();
        for (i, v) in vertices.iter().enumerate() {
            if vertices[..i].contains(v) {
                return Err(Error::Parse(format!("duplicate vertex {v:?}")));
            }
        }
        let find = |v: &str| {
            vertices.iter().position(|w| w == v).ok_or_else(|| Error::Parse(format!("unknown vertex {v:?}")))
        };
        let mut out = Vec::with_capacity(arrows.len());
        for (name, s, t) in arrows {
            let name = name.as_ref().to_string();
            if out.iter().any(|a: &Arrow| a.name == name) {
                return Err(Error::Parse(format!("duplicate arrow {name:?}")));
            }
            out.push(Arrow { name, source: find(s.as_ref())?, target: find(t.as_ref())? });
        }
        Ok(Quiver { vertices, arrows: out })
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    pub fn arrow(&self, i: usize) -> &Arrow {
        &self.arrows[i]
    }

    /// Same vertices, every arrow reversed, names kept.
    pub fn opposite(&self) -> Quiver {
        let arrows = self
            .arrows
            .iter()
            .map(|a| Arrow { name: a.name.clone(), source: a.target, target: a.source })
            .collect();
        Quiver { vertices: self.vertices.clone(), arrows }
    }

    /// All paths grouped by length, up to and including `max_len`.
    pub fn paths_by_length(&self, max_len: usize) -> Vec<Vec<Path>> {
        let mut layers = vec![(0..self.num_vertices()).map(Path::trivial).collect::<Vec<_>>()];
        for _ in 0..max_len {
            let last = layers.last().expect("nonempty");
            let mut next = Vec::new();
            for p in last {
                for (i, a) in self.arrows.iter().enumerate() {
                    if a.source == p.target {
                        next.push(p.then_arrow(i, a.target));
                    }
                }
            }
            layers.push(next);
        }
        layers
    }

    /// Sort key: shorter first, then lexicographic on the written word.
    pub fn path_key(&self, p: &Path) -> (usize, Vec<&str>, usize) {
        let names = p.arrows.iter().rev().map(|&a| self.arrows[a].name.as_str()).collect();
        (p.len(), names, p.source)
    }

    /// Written form, e.g. `ba` or `b*a` when some name has more than one character.
    pub fn display_path(&self, p: &Path) -> String {
        if p.is_trivial() {
            return format!("e{}", self.vertices[p.source]);
        }
        let names: Vec<&str> = p.arrows.iter().rev().map(|&a| self.arrows[a].name.as_str()).collect();
        if names.iter().all(|n| n.chars().count() == 1) { names.concat() } else { names.join("*") }
    }

    /// Arrow names in written order (last applied first).
    pub fn written_names(&self, p: &Path) -> Vec<String> {
        p.arrows.iter().rev().map(|&a| self.arrows[a].name.clone()).collect()
    }

    /// Parses a written word given as arrow names, last-applied first.
    pub fn path_from_written<S: AsRef<str>>(&self, names: &[S]) -> Result<Path> {
        let mut app = Vec::with_capacity(names.len());
        for n in names.iter().rev() {
            let n = n.as_ref().trim();
            app.push(self.arrow_index(n).ok_or_else(|| Error::Parse(format!("unknown arrow {n:?}")))?);
        }
        self.path_from_arrows(&app)
    }

    /// Builds a non-trivial path from arrows in application order.
    pub fn path_from_arrows(&self, arrows: &[usize]) -> Result<Path> {
        let Some(&first) = arrows.first() else {
            return Err(Error::Parse("empty arrow sequence; use a trivial path".into()));
        };
        let mut p = Path::trivial(self.arrows[first].source);
        for &a in arrows {
            let arrow = &self.arrows[a];
            if arrow.source != p.target {
                return Err(Error::Parse(format!("arrow {:?} does not compose", arrow.name)));
            }
            p = p.then_arrow(a, arrow.target);
        }
        Ok(p)
    }
}

/// A path in a quiver, arrows in application order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    source: usize,
    target: usize,
    arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(v: usize) -> Self {
        Path { source: v, target: v, arrows: Vec::new() }
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn arrows(&self) -> &[usize] {
        &self.arrows
    }

    /// Number of arrows; a trivial path has length 0 but is not empty.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    fn then_arrow(&self, arrow: usize, target: usize) -> Path {
        let mut arrows = self.arrows.clone();
        arrows.push(arrow);
        Path { source: self.source, target, arrows }
    }

    /// The algebra product `self · rhs`: `rhs` acts first. `None` when the
    /// endpoints do not match (the product is zero in `kQ`).
    pub fn mul(&self, rhs: &Path) -> Option<Path> {
        if rhs.target != self.source {
            return None;
        }
        let mut arrows = rhs.arrows.clone();
        arrows.extend_from_slice(&self.arrows);
        Some(Path { source: rhs.source, target: self.target, arrows })
    }

    /// Path of the arrows `arrows[start..end]` (application positions).
    pub fn segment(&self, quiver: &Quiver, start: usize, end: usize) -> Path {
        if start == end {
            let v = if start == 0 { self.source } else { quiver.arrow(self.arrows[start - 1]).target };
            return Path::trivial(v);
        }
        quiver.path_from_arrows(&self.arrows[start..end]).expect("segment of a path composes")
    }

    /// The same word read in the opposite quiver.
    pub fn reversed(&self) -> Path {
        let mut arrows = self.arrows.clone();
        arrows.reverse();
        Path { source: self.target, target: self.source, arrows }
    }
}

/// A linear combination of parallel paths of length at least two.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Relation {
    terms: Vec<(Scalar, Path)>,
}

impl Relation {
    pub fn new(terms: Vec<(Scalar, Path)>) -> Result<Self> {
        let terms: Vec<_> = terms.into_iter().filter(|(c, _)| !c.is_zero()).collect();
        let Some((_, first)) = terms.first() else {
            return Err(Error::MalformedRelation("relation has no nonzero term".into()));
        };
        let (s, t) = (first.source, first.target);
        for (_, p) in &terms {
            if p.len() < 2 {
                return Err(Error::MalformedRelation("relation term of length < 2".into()));
            }
            if p.source != s || p.target != t {
                return Err(Error::MalformedRelation("relation terms are not parallel".into()));
            }
        }
        Ok(Relation { terms })
    }

    pub fn monomial(field: Field, path: Path) -> Result<Self> {
        Self::new(vec![(field.one(), path)])
    }

    pub fn terms(&self) -> &[(Scalar, Path)] {
        &self.terms
    }

    pub fn source(&self) -> usize {
        self.terms[0].1.source
    }

    pub fn target(&self) -> usize {
        self.terms[0].1.target
    }

    fn max_len(&self) -> usize {
        self.terms.iter().map(|(_, p)| p.len()).max().unwrap_or(0)
    }

    fn min_len(&self) -> usize {
        self.terms.iter().map(|(_, p)| p.len()).min().unwrap_or(0)
    }

    pub fn reversed(&self) -> Relation {
        Relation { terms: self.terms.iter().map(|(c, p)| (c.clone(), p.reversed())).collect() }
    }
}

/// Sparse linear combination of basis elements.
pub type Sparse = Vec<(usize, Scalar)>;

/// The finite-dimensional algebra `kQ/I` with a path basis.
#[derive(Clone, Debug)]
pub struct Algebra {
    field: Field,
    quiver: Quiver,
    relations: Vec<Relation>,
    max_degree: usize,
    nilpotency: usize,
    basis: Vec<Path>,
    normal_forms: HashMap<Path, Sparse>,
    mult: Vec<Vec<Sparse>>,
    monomial: bool,
}

impl PartialEq for Algebra {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.quiver == other.quiver && self.relations == other.relations
    }
}

impl Eq for Algebra {}

/// Default admissibility search bound for a quiver.
pub fn default_max_degree(q: &Quiver) -> usize {
    2 + q.arrows().len() * 8
}

impl Algebra {
    pub fn build(field: Field, quiver: Quiver, relations: Vec<Relation>, max_degree: usize) -> Result<Self> {
        if max_degree < 2 {
            return Err(Error::Parse("max_degree must be at least 2".into()));
        }
        for r in &relations {
            for (c, p) in r.terms() {
                if c.field() != field {
                    return Err(Error::MalformedRelation("coefficient from another field".into()));
                }
                if p.arrows.iter().any(|&a| a >= quiver.arrows.len()) || p.source >= quiver.num_vertices() {
                    return Err(Error::MalformedRelation("path outside the quiver".into()));
                }
            }
        }
        let nilpotency = find_nilpotency(field, &quiver, &relations, max_degree)?;
        let layers = quiver.paths_by_length(nilpotency - 1);
        let mut short: Vec<Path> = layers.into_iter().flatten().collect();
        // Descending order so that elimination pivots land on the largest term.
        short.sort_by(|a, b| quiver.path_key(b).cmp(&quiver.path_key(a)));
        let col_of: HashMap<&Path, usize> = short.iter().enumerate().map(|(i, p)| (p, i)).collect();

        let rows = ideal_elements(&quiver, &relations, nilpotency - 1, true);
        let mut ideal = Matrix::zeros(field, rows.len(), short.len());
        for (r, elem) in rows.iter().enumerate() {
            for (p, c) in elem {
                let col = col_of[p];
                ideal[(r, col)] = &ideal[(r, col)] + c;
            }
        }
        let ech = ideal.echelon();
        let pivot_rows: HashMap<usize, usize> = ech.pivots.iter().enumerate().map(|(r, &c)| (c, r)).collect();
        let monomial = (0..ech.pivots.len())
            .all(|r| ech.reduced.row(r).iter().filter(|x| !x.is_zero()).count() == 1);

        let mut basis: Vec<Path> =
            short.iter().enumerate().filter(|(i, _)| !pivot_rows.contains_key(i)).map(|(_, p)| p.clone()).collect();
        basis.sort_by(|a, b| quiver.path_key(a).cmp(&quiver.path_key(b)));
        let basis_index: HashMap<&Path, usize> = basis.iter().enumerate().map(|(i, p)| (p, i)).collect();

        let mut normal_forms = HashMap::with_capacity(short.len());
        for (col, p) in short.iter().enumerate() {
            let nf: Sparse = match pivot_rows.get(&col) {
                None => vec![(basis_index[p], field.one())],
                Some(&r) => {
                    let mut nf: Sparse = ech
                        .reduced
                        .row(r)
                        .iter()
                        .enumerate()
                        .filter(|(c, x)| *c != col && !x.is_zero())
                        .map(|(c, x)| (basis_index[&short[c]], -x))
                        .collect();
                    nf.sort_by_key(|(i, _)| *i);
                    nf
                }
            };
            normal_forms.insert(p.clone(), nf);
        }

        let mut alg = Algebra {
            field,
            quiver,
            relations,
            max_degree,
            nilpotency,
            basis,
            normal_forms,
            mult: Vec::new(),
            monomial,
        };
        alg.mult = (0..alg.dim())
            .map(|i| {
                (0..alg.dim())
                    .map(|j| alg.basis[i].mul(&alg.basis[j]).map(|p| alg.normal_form(&p)).unwrap_or_default())
                    .collect()
            })
            .collect();
        Ok(alg)
    }

    /// Builds with the default admissibility bound.
    pub fn from_presentation(field: Field, quiver: Quiver, relations: Vec<Relation>) -> Result<Self> {
        let d = default_max_degree(&quiver);
        Self::build(field, quiver, relations, d)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    /// Smallest certified `d` with every path of length `d` in the ideal.
    pub fn nilpotency(&self) -> usize {
        self.nilpotency
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Path] {
        &self.basis
    }

    pub fn is_monomial(&self) -> bool {
        self.monomial
    }

    pub fn basis_index(&self, p: &Path) -> Option<usize> {
        self.basis.iter().position(|b| b == p)
    }

    /// Residue of a path in the basis; zero (empty) for paths in the ideal.
    pub fn normal_form(&self, p: &Path) -> Sparse {
        if p.len() >= self.nilpotency {
            return Vec::new();
        }
        self.normal_forms.get(p).cloned().unwrap_or_default()
    }

    pub fn is_zero_path(&self, p: &Path) -> bool {
        self.normal_form(p).is_empty()
    }

    /// Dense coordinates of a sparse combination.
    pub fn dense(&self, s: &Sparse) -> Vec<Scalar> {
        let mut v = vec![self.field.zero(); self.dim()];
        for (i, c) in s {
            v[*i] = &v[*i] + c;
        }
        v
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &Sparse {
        &self.mult[i][j]
    }

    pub fn multiply(&self, u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(u.len(), self.dim());
        assert_eq!(v.len(), self.dim());
        let mut out = vec![self.field.zero(); self.dim()];
        for (i, a) in u.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in v.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                let ab = a * b;
                for (k, c) in &self.mult[i][j] {
                    out[*k] = &out[*k] + &(&ab * c);
                }
            }
        }
        out
    }

    pub fn one(&self) -> Vec<Scalar> {
        let mut v = vec![self.field.zero(); self.dim()];
        for i in 0..self.quiver.num_vertices() {
            v[self.idempotent(i)] = self.field.one();
        }
        v
    }

    /// Basis index of the trivial path `e_i`.
    pub fn idempotent(&self, vertex: usize) -> usize {
        self.basis_index(&Path::trivial(vertex)).expect("trivial paths are basis elements")
    }

    /// Basis indices of paths from `source` to `target`.
    pub fn basis_between(&self, source: usize, target: usize) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.basis[i].source == source && self.basis[i].target == target).collect()
    }

    /// Nonzero paths: for monomial algebras every path outside the ideal,
    /// otherwise the chosen basis representatives.
    pub fn nonzero_paths(&self) -> Vec<Path> {
        self.basis.clone()
    }

    /// Paths minimal among those in the ideal (monomial algebras only).
    pub fn minimal_zero_paths(&self) -> Result<Vec<Path>> {
        if !self.monomial {
            return Err(Error::NotMonomial);
        }
        let mut out = Vec::new();
        for layer in self.quiver.paths_by_length(self.nilpotency).into_iter().skip(2) {
            for p in layer {
                if !self.is_zero_path(&p) {
                    continue;
                }
                let n = p.len();
                let head = p.segment(&self.quiver, 0, n - 1);
                let tail = p.segment(&self.quiver, 1, n);
                if !self.is_zero_path(&head) && !self.is_zero_path(&tail) {
                    out.push(p);
                }
            }
        }
        Ok(out)
    }

    /// `kQ^op / I^op` with arrows and relation words reversed.
    pub fn opposite(&self) -> Result<Algebra> {
        let rels = self.relations.iter().map(Relation::reversed).collect();
        Algebra::build(self.field, self.quiver.opposite(), rels, self.max_degree)
    }

    pub fn display_path(&self, p: &Path) -> String {
        self.quiver.display_path(p)
    }

    pub fn display_basis(&self) -> Vec<String> {
        self.basis.iter().map(|p| self.display_path(p)).collect()
    }
}

/// `Σ c · (u p v)` over relation terms, as path/coefficient pairs.
type PathCombination = Vec<(Path, Scalar)>;

/// Products `u · r · v` of relations with paths. With `truncate`, terms longer
/// than `max_len` are dropped (computing modulo `J^{max_len+1}`); otherwise only
/// products whose every term fits are kept.
fn ideal_elements(quiver: &Quiver, relations: &[Relation], max_len: usize, truncate: bool) -> Vec<PathCombination> {
    let layers = quiver.paths_by_length(max_len);
    let mut out = Vec::new();
    for r in relations {
        let budget_len = if truncate { r.min_len() } else { r.max_len() };
        if budget_len > max_len {
            continue;
        }
        let spare = max_len - budget_len;
        for lu in 0..=spare {
            for u in layers[lu].iter().filter(|u| u.source == r.target()) {
                for lv in 0..=(spare - lu) {
                    for v in layers[lv].iter().filter(|v| v.target == r.source()) {
                        let elem: PathCombination = r
                            .terms()
                            .iter()
                            .filter_map(|(c, p)| {
                                let w = u.mul(p).and_then(|up| up.mul(v)).expect("endpoints checked");
                                (w.len() <= max_len).then(|| (w, c.clone()))
                            })
                            .collect();
                        if !elem.is_empty() {
                            out.push(elem);
                        }
                    }
                }
            }
        }
    }
    out
}

/// Smallest `d` such that every path of length `d` lies in the span of the
/// exact (untruncated) ideal elements of degree at most `L`, searching `L` up
/// to `max_degree`.
fn find_nilpotency(field: Field, quiver: &Quiver, relations: &[Relation], max_degree: usize) -> Result<usize> {
    for bound in 2..=max_degree {
        let layers = quiver.paths_by_length(bound);
        let all: Vec<&Path> = layers.iter().skip(2).flatten().collect();
        let col_of: HashMap<&Path, usize> = all.iter().enumerate().map(|(i, p)| (*p, i)).collect();
        let elems = ideal_elements(quiver, relations, bound, false);
        let mut m = Matrix::zeros(field, elems.len(), all.len());
        for (r, e) in elems.iter().enumerate() {
            for (p, c) in e {
                let col = col_of[p];
                m[(r, col)] = &m[(r, col)] + c;
            }
        }
        let ech = m.echelon();
        let rank = ech.pivots.len();
        let basis = ech.reduced.select_rows(&(0..rank).collect::<Vec<_>>());
        for d in 2..=bound {
            let layer = &layers[d];
            if layer.is_empty() {
                return Ok(d);
            }
            let mut units = Matrix::zeros(field, layer.len(), all.len());
            for (i, p) in layer.iter().enumerate() {
                units[(i, col_of[p])] = field.one();
            }
            if basis.vstack(&units).rank() == rank {
                return Ok(d);
            }
        }
    }
    Err(Error::NotAdmissible { max_degree })
}

impl fmt::Display for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "kQ/I over {} of dimension {}", self.field, self.dim())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    const Q: Field = Field::Rational;

    /// All paths of length < bound not containing any generator as a consecutive subword.
    fn subword_filter(q: &Quiver, gens: &[Path], bound: usize) -> Vec<Path> {
        q.paths_by_length(bound)
            .into_iter()
            .flatten()
            .filter(|p| !gens.iter().any(|g| p.arrows.windows(g.len()).any(|w| w == g.arrows.as_slice())))
            .collect()
    }

    #[test]
    fn lambda_basis_matches_subword_enumeration() {
        let a = fixtures::lambda(Q);
        assert_eq!(a.dim(), 9);
        assert!(a.is_monomial());
        let gen = a.quiver().path_from_written(&["b", "a", "b", "a"]).unwrap();
        // βαβα contains every path of length 5, so enumeration up to 8 is exhaustive.
        let oracle = subword_filter(a.quiver(), &[gen], 8);
        assert_eq!(oracle.len(), 9);
        let mut mine = a.nonzero_paths();
        let mut theirs = oracle;
        mine.sort();
        theirs.sort();
        assert_eq!(mine, theirs);
        assert_eq!(a.display_basis(), vec!["e1", "e2", "a", "b", "ab", "ba", "aba", "bab", "abab"]);
    }

    #[test]
    fn gamma_basis_and_reduction() {
        let a = fixtures::gamma(Q);
        assert_eq!(a.dim(), 6);
        assert!(!a.is_monomial());
        assert_eq!(a.display_basis(), vec!["e1'", "e2'", "x", "y", "z", "xy"]);
        let z = a.quiver().path_from_written(&["z"]).unwrap();
        let zz = z.mul(&z).unwrap();
        let xy = a.quiver().path_from_written(&["x", "y"]).unwrap();
        assert_eq!(a.normal_form(&zz), a.normal_form(&xy));
    }

    #[test]
    fn ground_field_algebra() {
        let q = Quiver::new(&["1"], &[]).unwrap();
        let a = Algebra::from_presentation(Q, q, vec![]).unwrap();
        assert_eq!(a.dim(), 1);
        assert_eq!(a.display_basis(), vec!["e1"]);
    }

    #[test]
    fn multiplication_examples() {
        let a = fixtures::lambda(Q);
        let q = a.quiver();
        let path = |w: &[&str]| q.path_from_written(w).unwrap();
        let elem = |p: &Path| a.dense(&a.normal_form(p));
        let ba = elem(&path(&["b", "a"]));
        assert_eq!(a.multiply(&elem(&path(&["b"])), &elem(&path(&["a"]))), ba);
        assert!(a.multiply(&ba, &ba).iter().all(Scalar::is_zero));

        let g = fixtures::gamma(Q);
        let gz = g.dense(&g.normal_form(&g.quiver().path_from_written(&["z"]).unwrap()));
        let gxy = g.dense(&g.normal_form(&g.quiver().path_from_written(&["x", "y"]).unwrap()));
        assert_eq!(g.multiply(&gz, &gz), gxy);
    }

    #[test]
    fn loop_with_square_zero() {
        let a = fixtures::dual_numbers(Q);
        assert_eq!(a.display_basis(), vec!["e1", "a"]);
        assert!(a.is_monomial());
    }

    #[test]
    fn associativity_and_unit_on_fixtures() {
        for a in [fixtures::lambda(Q), fixtures::gamma(Q), fixtures::cycle3(Q), fixtures::a2(Q)] {
            let n = a.dim();
            let unit = |i: usize| {
                let mut v = vec![Q.zero(); n];
                v[i] = Q.one();
                v
            };
            let one = a.one();
            for i in 0..n {
                assert_eq!(a.multiply(&one, &unit(i)), unit(i));
                assert_eq!(a.multiply(&unit(i), &one), unit(i));
                for j in 0..n {
                    for k in 0..n {
                        let l = a.multiply(&a.multiply(&unit(i), &unit(j)), &unit(k));
                        let r = a.multiply(&unit(i), &a.multiply(&unit(j), &unit(k)));
                        assert_eq!(l, r);
                    }
                }
            }
        }
    }

    #[test]
    fn dimension_splits_over_idempotents() {
        let a = fixtures::lambda(Q);
        let from = |v: usize| a.basis().iter().filter(|p| p.source() == v).count();
        assert_eq!((from(0), from(1)), (4, 5));
    }

    #[test]
    fn malformed_relations_rejected() {
        let q = Quiver::new(&["1", "2"], &[("a", "1", "2"), ("b", "2", "1")]).unwrap();
        let a = q.path_from_written(&["a"]).unwrap();
        assert!(matches!(Relation::monomial(Q, a.clone()), Err(Error::MalformedRelation(_))));
        let ab = q.path_from_written(&["a", "b"]).unwrap();
        let ba = q.path_from_written(&["b", "a"]).unwrap();
        let r = Relation::new(vec![(Q.one(), ab), (Q.one(), ba)]);
        assert!(matches!(r, Err(Error::MalformedRelation(_))));
    }

    #[test]
    fn non_admissible_inputs_rejected() {
        let q = Quiver::new(&["1"], &[("a", "1", "1")]).unwrap();
        assert_eq!(
            Algebra::build(Q, q.clone(), vec![], 6).unwrap_err(),
            Error::NotAdmissible { max_degree: 6 }
        );
        // a^2 - a^3 generates an ideal without any power of the arrow ideal.
        let a2 = q.path_from_written(&["a", "a"]).unwrap();
        let a3 = q.path_from_written(&["a", "a", "a"]).unwrap();
        let r = Relation::new(vec![(Q.one(), a2), (Q.from_i64(-1), a3)]).unwrap();
        assert!(matches!(Algebra::build(Q, q, vec![r], 8), Err(Error::NotAdmissible { .. })));
    }

    #[test]
    fn mixed_degree_admissible_relation() {
        // (a^2 - a^3, a^3) = (a^2).
        let q = Quiver::new(&["1"], &[("a", "1", "1")]).unwrap();
        let a2 = q.path_from_written(&["a", "a"]).unwrap();
        let a3 = q.path_from_written(&["a", "a", "a"]).unwrap();
        let r1 = Relation::new(vec![(Q.one(), a2), (Q.from_i64(-1), a3.clone())]).unwrap();
        let r2 = Relation::monomial(Q, a3).unwrap();
        let alg = Algebra::build(Q, q, vec![r1, r2], 8).unwrap();
        assert_eq!(alg.dim(), 2);
        assert!(alg.is_monomial());
    }

    #[test]
    fn minimal_zero_paths_recover_generator() {
        let a = fixtures::lambda(Q);
        let gens = a.minimal_zero_paths().unwrap();
        assert_eq!(gens.len(), 1);
        assert_eq!(a.display_path(&gens[0]), "baba");
        assert_eq!(fixtures::gamma(Q).minimal_zero_paths(), Err(Error::NotMonomial));
    }

    #[test]
    fn opposite_twice_is_the_same_presentation() {
        let a = fixtures::gamma(Q);
        let back = a.opposite().unwrap().opposite().unwrap();
        assert_eq!(back, *a);
        assert_eq!(back.display_basis(), a.display_basis());
    }
}
