//! JSON encodings of algebras, modules and bimodules.
//!
//! Path words are arrays of arrow names written right to left, so
//! `["b", "a"]` means `a` then `b`. Scalars are strings (`"3"`, `"-1/2"`);
//! plain JSON integers are accepted on input.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::exactlin::{Field, Matrix, Scalar};
use crate::fixtures;
use crate::quiver::{Algebra, Path, Quiver, Relation};
use crate::repmod::Representation;
use crate::transport::Bimodule;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FieldSpec {
    Name(String),
    Prime { #[serde(rename = "Fp")] p: u64 },
}

impl FieldSpec {
    pub fn resolve(&self) -> Result<Field> {
        match self {
            FieldSpec::Name(s) => parse_field(s),
            FieldSpec::Prime { p } => Field::prime(*p),
        }
    }
}

/// `Q` or `Fp:<p>`.
pub fn parse_field(s: &str) -> Result<Field> {
    let s = s.trim();
    if s == "Q" {
        return Ok(Field::Rational);
    }
    let p = s
        .strip_prefix("Fp:")
        .and_then(|p| p.parse::<u64>().ok())
        .ok_or_else(|| Error::Parse(format!("unknown field {s:?}; expected Q or Fp:<p>")))?;
    Field::prime(p)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowSpec {
    pub name: String,
    pub from: String,
    pub to: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermSpec {
    pub coeff: Value,
    pub path: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlgebraSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldSpec>,
    pub vertices: Vec<String>,
    #[serde(default)]
    pub arrows: Vec<ArrowSpec>,
    #[serde(default)]
    pub relations: Vec<Vec<TermSpec>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_degree: Option<usize>,
}

fn scalar(field: Field, v: &Value, at: &str) -> Result<Scalar> {
    match v {
        Value::String(s) => field.parse_scalar(s).map_err(|e| Error::Parse(format!("{at}: {e}"))),
        Value::Number(n) => n
            .as_i64()
            .map(|n| field.from_i64(n))
            .ok_or_else(|| Error::Parse(format!("{at}: scalar {n} is not an integer; use \"a/b\""))),
        other => Err(Error::Parse(format!("{at}: expected a scalar, found {other}"))),
    }
}

fn scalar_value(s: &Scalar) -> Value {
    Value::String(s.to_string())
}

impl AlgebraSpec {
    /// Builds the algebra; `field` overrides the one named in the document.
    pub fn build(&self, field: Option<Field>) -> Result<Arc<Algebra>> {
        let field = match (field, &self.field) {
            (Some(f), _) => f,
            (None, Some(spec)) => spec.resolve()?,
            (None, None) => Field::Rational,
        };
        let arrows: Vec<(&str, &str, &str)> =
            self.arrows.iter().map(|a| (a.name.as_str(), a.from.as_str(), a.to.as_str())).collect();
        let vertices: Vec<&str> = self.vertices.iter().map(String::as_str).collect();
        let quiver = Quiver::new(&vertices, &arrows)?;
        let mut relations = Vec::with_capacity(self.relations.len());
        for (r, terms) in self.relations.iter().enumerate() {
            let mut parsed = Vec::with_capacity(terms.len());
            for (t, term) in terms.iter().enumerate() {
                let at = format!("relations[{r}][{t}]");
                let c = scalar(field, &term.coeff, &format!("{at}.coeff"))?;
                let p = quiver.path_from_written(&term.path).map_err(|e| Error::Parse(format!("{at}.path: {e}")))?;
                parsed.push((c, p));
            }
            relations.push(Relation::new(parsed)?);
        }
        let algebra = match self.max_degree {
            Some(d) => Algebra::build(field, quiver, relations, d)?,
            None => Algebra::from_presentation(field, quiver, relations)?,
        };
        Ok(Arc::new(algebra))
    }

    pub fn from_algebra(a: &Algebra) -> Self {
        let q = a.quiver();
        let field = Some(match a.field() {
            Field::Rational => FieldSpec::Name("Q".into()),
            Field::Prime(p) => FieldSpec::Prime { p },
        });
        let arrows = q
            .arrows()
            .iter()
            .map(|x| ArrowSpec {
                name: x.name.clone(),
                from: q.vertices()[x.source].clone(),
                to: q.vertices()[x.target].clone(),
            })
            .collect();
        let relations = a
            .relations()
            .iter()
            .map(|r| r.terms().iter().map(|(c, p)| TermSpec { coeff: scalar_value(c), path: q.written_names(p) }).collect())
            .collect();
        AlgebraSpec { field, vertices: q.vertices().to_vec(), arrows, relations, max_degree: None }
    }
}

pub fn parse_algebra(text: &str, field: Option<Field>) -> Result<Arc<Algebra>> {
    let spec: AlgebraSpec = serde_json::from_str(text).map_err(|e| Error::Parse(format!("algebra JSON: {e}")))?;
    spec.build(field)
}

/// A built-in fixture name or an inline algebra document.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AlgebraRef {
    Fixture(String),
    Inline(AlgebraSpec),
}

impl AlgebraRef {
    pub fn resolve(&self, field: Option<Field>) -> Result<Arc<Algebra>> {
        match self {
            AlgebraRef::Fixture(name) => fixtures::by_name(name, field.unwrap_or(Field::Rational))
                .ok_or_else(|| Error::Parse(format!("unknown fixture {name:?}"))),
            AlgebraRef::Inline(spec) => spec.build(field),
        }
    }
}

pub type MatrixSpec = Vec<Vec<Value>>;

fn matrix(field: Field, rows: usize, cols: usize, spec: &MatrixSpec, at: &str) -> Result<Matrix> {
    if spec.len() != rows || spec.iter().any(|r| r.len() != cols) {
        return Err(Error::DimensionMismatch(format!("{at}: expected a {rows}x{cols} matrix")));
    }
    let mut m = Matrix::zeros(field, rows, cols);
    for (r, row) in spec.iter().enumerate() {
        for (c, v) in row.iter().enumerate() {
            m[(r, c)] = scalar(field, v, &format!("{at}[{r}][{c}]"))?;
        }
    }
    Ok(m)
}

fn matrix_spec(m: &Matrix) -> MatrixSpec {
    (0..m.rows()).map(|r| m.row(r).iter().map(scalar_value).collect()).collect()
}

/// `{"dims": {"1": 1, "2": 1}, "maps": {"a": [["1"]], ...}}`. Missing vertices
/// have dimension zero; missing arrows act by zero.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModuleSpec {
    pub dims: BTreeMap<String, usize>,
    #[serde(default)]
    pub maps: BTreeMap<String, MatrixSpec>,
}

impl ModuleSpec {
    pub fn build(&self, a: &Arc<Algebra>) -> Result<Representation> {
        let q = a.quiver();
        for v in self.dims.keys() {
            q.vertex_index(v).ok_or_else(|| Error::Parse(format!("dims: unknown vertex {v:?}")))?;
        }
        for name in self.maps.keys() {
            q.arrow_index(name).ok_or_else(|| Error::Parse(format!("maps: unknown arrow {name:?}")))?;
        }
        let dims: Vec<usize> = q.vertices().iter().map(|v| self.dims.get(v).copied().unwrap_or(0)).collect();
        let maps = q
            .arrows()
            .iter()
            .map(|x| {
                let (r, c) = (dims[x.target], dims[x.source]);
                match self.maps.get(&x.name) {
                    Some(spec) => matrix(a.field(), r, c, spec, &format!("maps.{}", x.name)),
                    None => Ok(Matrix::zeros(a.field(), r, c)),
                }
            })
            .collect::<Result<_>>()?;
        Representation::new(a.clone(), dims, maps)
    }

    pub fn from_module(m: &Representation) -> Self {
        let q = m.algebra().quiver();
        let dims = q.vertices().iter().cloned().zip(m.dims().iter().copied()).collect();
        let maps = q.arrows().iter().zip(m.maps()).map(|(x, mat)| (x.name.clone(), matrix_spec(mat))).collect();
        ModuleSpec { dims, maps }
    }
}

pub fn parse_module(text: &str, a: &Arc<Algebra>) -> Result<Representation> {
    let spec: ModuleSpec = serde_json::from_str(text).map_err(|e| Error::Parse(format!("module JSON: {e}")))?;
    spec.build(a)
}

pub fn dims_map(m: &Representation) -> BTreeMap<String, usize> {
    m.algebra().quiver().vertices().iter().cloned().zip(m.dims().iter().copied()).collect()
}

pub fn path_words(a: &Algebra, ps: &[Path]) -> Vec<Vec<String>> {
    ps.iter().map(|p| a.quiver().written_names(p)).collect()
}

/// Explicit bimodule: `dims[j][i]`, `left_maps[γ][i]`, `right_maps[α][j]`, keyed by names.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BimoduleBlocks {
    pub dims: BTreeMap<String, BTreeMap<String, usize>>,
    #[serde(default)]
    pub left_maps: BTreeMap<String, BTreeMap<String, MatrixSpec>>,
    #[serde(default)]
    pub right_maps: BTreeMap<String, BTreeMap<String, MatrixSpec>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BimoduleSpec {
    /// `{"builtin": "regular", "algebra": "lambda"}`.
    Builtin { builtin: String, algebra: AlgebraRef },
    Explicit { left: AlgebraRef, right: AlgebraRef, #[serde(flatten)] blocks: BimoduleBlocks },
}

impl BimoduleSpec {
    pub fn build(&self, field: Option<Field>) -> Result<Bimodule> {
        match self {
            BimoduleSpec::Builtin { builtin, algebra } => {
                let a = algebra.resolve(field)?;
                match builtin.as_str() {
                    "regular" => Bimodule::regular(&a),
                    other => Err(Error::Parse(format!("unknown builtin bimodule {other:?}"))),
                }
            }
            BimoduleSpec::Explicit { left, right, blocks } => {
                let (l, r) = (left.resolve(field)?, right.resolve(field)?);
                let (lq, rq) = (l.quiver(), r.quiver());
                let f = l.field();
                let dim = |j: &str, i: &str| blocks.dims.get(j).and_then(|row| row.get(i)).copied().unwrap_or(0);
                let dims: Vec<Vec<usize>> =
                    lq.vertices().iter().map(|j| rq.vertices().iter().map(|i| dim(j, i)).collect()).collect();
                let block = |family: &BTreeMap<String, BTreeMap<String, MatrixSpec>>,
                             arrow: &str,
                             key: &str,
                             rows: usize,
                             cols: usize,
                             at: String|
                 -> Result<Matrix> {
                    match family.get(arrow).and_then(|m| m.get(key)) {
                        Some(spec) => matrix(f, rows, cols, spec, &at),
                        None => Ok(Matrix::zeros(f, rows, cols)),
                    }
                };
                let left_maps = lq
                    .arrows()
                    .iter()
                    .map(|g| {
                        rq.vertices()
                            .iter()
                            .enumerate()
                            .map(|(i, iname)| {
                                let at = format!("left_maps.{}.{iname}", g.name);
                                block(&blocks.left_maps, &g.name, iname, dims[g.target][i], dims[g.source][i], at)
                            })
                            .collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<_>>()?;
                let right_maps = rq
                    .arrows()
                    .iter()
                    .map(|x| {
                        lq.vertices()
                            .iter()
                            .enumerate()
                            .map(|(j, jname)| {
                                let at = format!("right_maps.{}.{jname}", x.name);
                                block(&blocks.right_maps, &x.name, jname, dims[j][x.source], dims[j][x.target], at)
                            })
                            .collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<_>>()?;
                Bimodule::new(l, r, dims, left_maps, right_maps)
            }
        }
    }
}

pub fn parse_bimodule(text: &str, field: Option<Field>) -> Result<Bimodule> {
    let spec: BimoduleSpec = serde_json::from_str(text).map_err(|e| Error::Parse(format!("bimodule JSON: {e}")))?;
    spec.build(field)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::repmod::is_isomorphic;

    const Q: Field = Field::Rational;

    #[test]
    fn lambda_document_matches_fixture() {
        let text = r#"{"field": "Q", "vertices": ["1","2"],
            "arrows": [{"name":"a","from":"1","to":"2"}, {"name":"b","from":"2","to":"1"}],
            "relations": [[{"coeff":"1","path":["b","a","b","a"]}]]}"#;
        let a = parse_algebra(text, None).unwrap();
        assert_eq!(*a, *fixtures::lambda(Q));
        assert_eq!(a.dim(), 9);
    }

    #[test]
    fn algebra_round_trip() {
        for name in fixtures::NAMES {
            let a = fixtures::by_name(name, Q).unwrap();
            let text = serde_json::to_string(&AlgebraSpec::from_algebra(&a)).unwrap();
            assert_eq!(*parse_algebra(&text, None).unwrap(), *a);
        }
    }

    #[test]
    fn prime_field_forms() {
        assert_eq!(parse_field("Fp:7").unwrap(), Field::Prime(7));
        assert!(parse_field("Fp:8").is_err());
        assert!(parse_field("R").is_err());
        let text = r#"{"field": {"Fp": 5}, "vertices": ["1"], "arrows": [{"name":"a","from":"1","to":"1"}],
            "relations": [[{"coeff": 1, "path": ["a","a"]}]]}"#;
        assert_eq!(parse_algebra(text, None).unwrap().field(), Field::Prime(5));
        assert_eq!(parse_algebra(text, Some(Q)).unwrap().field(), Q);
    }

    #[test]
    fn parse_errors_name_the_location() {
        let bad_arrow = r#"{"vertices": ["1"], "arrows": [], "relations": [[{"coeff":"1","path":["a","a"]}]]}"#;
        let e = parse_algebra(bad_arrow, None).unwrap_err().to_string();
        assert!(e.contains("relations[0][0].path"), "{e}");
        let bad_json = "{\n  \"vertices\": [1,\n}";
        let e = parse_algebra(bad_json, None).unwrap_err().to_string();
        assert!(e.contains("line"), "{e}");
        let non_admissible = r#"{"vertices": ["1"], "arrows": [{"name":"a","from":"1","to":"1"}]}"#;
        assert!(matches!(parse_algebra(non_admissible, None), Err(Error::NotAdmissible { .. })));
    }

    #[test]
    fn module_round_trip_and_validation() {
        let g = fixtures::gamma(Q);
        let w = fixtures::gamma_string_module(&g);
        let text = serde_json::to_string(&ModuleSpec::from_module(&w)).unwrap();
        assert_eq!(parse_module(&text, &g).unwrap(), w);

        let l = fixtures::lambda(Q);
        let v = parse_module(r#"{"dims": {"1": 1, "2": 1}, "maps": {"a": [["1"]]}}"#, &l).unwrap();
        assert_eq!(v.dims(), &[1, 1]);
        let violates = r#"{"dims": {"1": 1, "2": 1}, "maps": {"a": [["1"]], "b": [["1"]]}}"#;
        assert!(matches!(parse_module(violates, &l), Err(Error::RelationViolated(_))));
        let shape = r#"{"dims": {"1": 1, "2": 1}, "maps": {"a": [["1", "0"]]}}"#;
        assert!(matches!(parse_module(shape, &l), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn bimodule_documents() {
        let x = parse_bimodule(r#"{"builtin": "regular", "algebra": "lambda"}"#, None).unwrap();
        assert_eq!(x, Bimodule::regular(&fixtures::lambda(Q)).unwrap());
        let text = r#"{"left": "lambda", "right": {"vertices": ["*"]},
            "dims": {"2": {"*": 1}}}"#;
        let simple = parse_bimodule(text, None).unwrap();
        assert_eq!(simple.dims(), &[vec![0], vec![1]]);
        let l = fixtures::lambda(Q);
        let col = simple.column(0).unwrap();
        assert!(!is_isomorphic(&col, &crate::repmod::projective(&l, 1), 4, 0).unwrap().is_yes());
    }
}
