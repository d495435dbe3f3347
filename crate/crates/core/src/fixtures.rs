//! Built-in algebras and modules.
//!
//! Words are written right to left: `["b", "a"]` is `a` followed by `b`.

use std::sync::Arc;

use crate::exactlin::{Field, Matrix};
use crate::quiver::{Algebra, Quiver, Relation};
use crate::repmod::Representation;

pub const NAMES: [&str; 5] = ["lambda", "gamma", "dual", "a2", "cycle3"];

fn build(field: Field, vertices: &[&str], arrows: &[(&str, &str, &str)], rels: &[&[(i64, &[&str])]]) -> Arc<Algebra> {
    let q = Quiver::new(vertices, arrows).expect("fixture quiver");
    let relations = rels
        .iter()
        .map(|terms| {
            let terms = terms
                .iter()
                .map(|(c, w)| (field.from_i64(*c), q.path_from_written(w).expect("fixture word")))
                .collect();
            Relation::new(terms).expect("fixture relation")
        })
        .collect();
    Arc::new(Algebra::from_presentation(field, q, relations).expect("fixture algebra"))
}

/// 1 ⇄ 2 with `a: 1 → 2`, `b: 2 → 1` and the single relation `baba`.
pub fn lambda(field: Field) -> Arc<Algebra> {
    build(field, &["1", "2"], &[("a", "1", "2"), ("b", "2", "1")], &[&[(1, &["b", "a", "b", "a"])]])
}

/// 1' ⇄ 2' with a loop `z` at 2' and relations `yx, zx, yz, zz - xy`.
pub fn gamma(field: Field) -> Arc<Algebra> {
    build(
        field,
        &["1'", "2'"],
        &[("x", "1'", "2'"), ("y", "2'", "1'"), ("z", "2'", "2'")],
        &[
            &[(1, &["y", "x"])],
            &[(1, &["z", "x"])],
            &[(1, &["y", "z"])],
            &[(1, &["z", "z"]), (-1, &["x", "y"])],
        ],
    )
}

/// `k[a]/(a²)`.
pub fn dual_numbers(field: Field) -> Arc<Algebra> {
    build(field, &["1"], &[("a", "1", "1")], &[&[(1, &["a", "a"])]])
}

/// The path algebra of `1 → 2`.
pub fn a2(field: Field) -> Arc<Algebra> {
    build(field, &["1", "2"], &[("a", "1", "2")], &[])
}

/// Oriented 3-cycle with every length-two path zero.
pub fn cycle3(field: Field) -> Arc<Algebra> {
    build(
        field,
        &["1", "2", "3"],
        &[("a", "1", "2"), ("b", "2", "3"), ("c", "3", "1")],
        &[&[(1, &["b", "a"])], &[(1, &["c", "b"])], &[(1, &["a", "c"])]],
    )
}

/// The ground field as a one-vertex algebra.
pub fn ground(field: Field) -> Arc<Algebra> {
    build(field, &["1"], &[], &[])
}

pub fn by_name(name: &str, field: Field) -> Option<Arc<Algebra>> {
    Some(match name {
        "lambda" => lambda(field),
        "gamma" => gamma(field),
        "dual" => dual_numbers(field),
        "a2" => a2(field),
        "cycle3" => cycle3(field),
        _ => return None,
    })
}

/// The string module `u --x--> v1 <--z-- v2` over [`gamma`], dimension vector (1, 2).
pub fn gamma_string_module(gamma: &Arc<Algebra>) -> Representation {
    let f = gamma.field();
    let x = Matrix::from_i64_rows(f, &[&[1], &[0]], 1);
    let y = Matrix::zeros(f, 1, 2);
    let z = Matrix::from_i64_rows(f, &[&[0, 1], &[0, 0]], 2);
    Representation::new(gamma.clone(), vec![1, 2], vec![x, y, z]).expect("string module satisfies the relations")
}
