//! Small hand-built modules shared by unit tests.

use std::sync::Arc;

use crate::component::{load_component, validate_component, ArComponent, DEFAULT_CAP};
use crate::format::{BlocksText, ScalarText};
use crate::linalg::Matrix;
use crate::module::{Algebra, ComponentMap, HomCache, Morphism, Relation, Representation};
use crate::quiver::{QPath, Quiver};
use crate::scalar::{Rational, Scalar};

pub type Q = Rational;

/// `1 <-a- 2 <-b- 3`, no relations.
pub fn a3_algebra<S: Scalar>() -> Arc<Algebra<S>> {
    let q = Quiver::new(
        ["1", "2", "3"],
        [
            ("a".into(), "2".into(), "1".into()),
            ("b".into(), "3".into(), "2".into()),
        ],
    )
    .unwrap();
    Arc::new(Algebra::new(q, vec![]).unwrap())
}

pub fn rep<S: Scalar>(alg: &Arc<Algebra<S>>, dims: [usize; 3], a: i64, b: i64) -> Representation<S> {
    let m = |r: usize, c: usize, x: i64| {
        if r * c == 0 {
            Matrix::zeros(r, c)
        } else {
            Matrix::from_fn(r, c, |_, _| S::from_i64(x))
        }
    };
    let maps = vec![m(dims[0], dims[1], a), m(dims[1], dims[2], b)];
    Representation::new(alg.clone(), dims.to_vec(), maps, "test").unwrap()
}

pub const A3_NAMES: [&str; 6] = ["P1", "P2", "P3", "S2", "I2", "I3"];

pub fn a3_modules<S: Scalar>() -> Vec<Representation<S>> {
    let alg = a3_algebra();
    vec![
        rep(&alg, [1, 0, 0], 0, 0),
        rep(&alg, [1, 1, 0], 1, 0),
        rep(&alg, [1, 1, 1], 1, 1),
        rep(&alg, [0, 1, 0], 0, 0),
        rep(&alg, [0, 1, 1], 0, 1),
        rep(&alg, [0, 0, 1], 0, 0),
    ]
}

pub fn a3_cache<S: Scalar>() -> HomCache<S> {
    let names: Vec<String> = A3_NAMES.iter().map(|s| s.to_string()).collect();
    HomCache::new(a3_modules(), &names).unwrap()
}

/// The unique (up to scalar) map `x -> y`.
pub fn basis_map<S: Scalar>(c: &HomCache<S>, x: usize, y: usize) -> Morphism<S> {
    c.hom(x, y).basis[0].clone()
}

/// Sink maps of the A3 component, from the first Hom basis element per arrow.
pub fn a3_sinks<S: Scalar>(c: &HomCache<S>) -> Vec<ComponentMap<S>> {
    let incoming: [&[usize]; 6] = [&[], &[0], &[1], &[1], &[3, 2], &[4]];
    incoming
        .iter()
        .enumerate()
        .map(|(x, ys)| ComponentMap {
            summands: ys.to_vec(),
            components: ys.iter().map(|&y| basis_map(c, y, x)).collect(),
        })
        .collect()
}

/// `k[t]/(t²)` as a module over itself.
pub fn dual_numbers() -> Representation<Q> {
    let q = Quiver::new(["x"], [("t".into(), "x".into(), "x".into())]).unwrap();
    let tt = q.path(None, &["t", "t"]).unwrap();
    let alg = Arc::new(
        Algebra::new(
            q,
            vec![Relation {
                terms: vec![(Q::from_i64(1), tt)],
            }],
        )
        .unwrap(),
    );
    let t = Matrix::from_rows(vec![
        vec![Q::from_i64(0), Q::from_i64(0)],
        vec![Q::from_i64(1), Q::from_i64(0)],
    ])
    .unwrap();
    Representation::new(alg, vec![2], vec![t], "k[t]/t^2").unwrap()
}

pub const A3_ALG: &str = include_str!("../../../fixtures/a3.algebra.json");
pub const A3_COMP: &str = include_str!("../../../fixtures/a3.component.json");
pub const EX3_ALG: &str = include_str!("../../../fixtures/ex3.algebra.json");
pub const EX3_COMP: &str = include_str!("../../../fixtures/ex3.component.json");

pub fn validated(alg: &str, comp: &str) -> ArComponent<Q> {
    let c = load_component::<Q>(alg, comp).unwrap();
    validate_component(&c, 1, DEFAULT_CAP)
        .component
        .expect("fixture validates")
}

pub fn a3_component() -> ArComponent<Q> {
    validated(A3_ALG, A3_COMP)
}

pub fn ex3_component() -> ArComponent<Q> {
    validated(EX3_ALG, EX3_COMP)
}

/// A morphism between component modules from integer blocks keyed by
/// algebra vertex.
pub fn blocks(c: &ArComponent<Q>, from: &str, to: &str, given: &[(&str, Vec<Vec<i64>>)]) -> Morphism<Q> {
    let text: BlocksText = given
        .iter()
        .map(|(v, rows)| {
            (
                v.to_string(),
                rows.iter()
                    .map(|r| r.iter().map(|&x| ScalarText::Int(x)).collect())
                    .collect(),
            )
        })
        .collect();
    c.parse_morphism(c.vertex(from).unwrap(), c.vertex(to).unwrap(), &text)
        .unwrap()
}

pub fn path(c: &ArComponent<Q>, arrows: &[&str]) -> QPath {
    c.tq.quiver().path(None, arrows).unwrap()
}
