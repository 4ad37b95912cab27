//! Slow, definition-level recomputations used to cross-check the library.
//!
//! Nothing here goes through sink maps, graded tables or functors: Hom
//! spaces are found by enumerating every block map over a prime field, the
//! radical powers by composing radical maps through every module of the
//! component, and the mesh category by listing paths and their mesh
//! multiples.
#![allow(dead_code)]

use std::collections::HashMap;

use meshlab::component::{load_component, validate_component, ArComponent, DEFAULT_CAP};
use meshlab::linalg::{Matrix, Subspace};
use meshlab::quiver::{QPath, TranslationQuiver};
use meshlab::{FieldSpec, Fp, Morphism, Representation, Scalar};

pub const A3_ALG: &str = include_str!("../../../../fixtures/a3.algebra.json");
pub const A3_COMP: &str = include_str!("../../../../fixtures/a3.component.json");
pub const EX3_ALG: &str = include_str!("../../../../fixtures/ex3.algebra.json");
pub const EX3_COMP: &str = include_str!("../../../../fixtures/ex3.component.json");

/// The algebra file with its field replaced.
pub fn retag(alg: &str, field: FieldSpec) -> String {
    let mut v: serde_json::Value = serde_json::from_str(alg).unwrap();
    v["field"] = serde_json::to_value(field).unwrap();
    v.to_string()
}

pub fn component<S: Scalar>(alg: &str, comp: &str) -> ArComponent<S> {
    let alg = retag(alg, S::field_spec());
    let loaded = load_component::<S>(&alg, comp).unwrap();
    let v = validate_component(&loaded, 7, DEFAULT_CAP);
    assert!(
        v.certificate.valid,
        "{:?}",
        v.certificate.failures().collect::<Vec<_>>()
    );
    v.component.unwrap()
}

/// Every module morphism `x -> y`, by enumerating all block matrices.
pub fn brute_hom<const P: u64>(x: &Representation<Fp<P>>, y: &Representation<Fp<P>>) -> Vec<Morphism<Fp<P>>> {
    let (dx, dy) = (x.dims(), y.dims());
    let ambient: usize = dx.iter().zip(dy).map(|(a, b)| a * b).sum();
    let total = (P as usize).pow(ambient as u32);
    let mut out = Vec::new();
    for code in 0..total {
        let mut c = code;
        let flat: Vec<Fp<P>> = (0..ambient)
            .map(|_| {
                let d = c % P as usize;
                c /= P as usize;
                Fp::new(d as u64)
            })
            .collect();
        let f = Morphism::unflatten(dx, dy, &flat);
        if f.check(x, y).is_ok() {
            out.push(f);
        }
    }
    out
}

fn span<S: Scalar>(x: &Representation<S>, y: &Representation<S>, fs: &[Morphism<S>]) -> Subspace<S> {
    let ambient: usize = x.dims().iter().zip(y.dims()).map(|(a, b)| a * b).sum();
    Subspace::span(ambient, fs.iter().map(Morphism::flatten).collect::<Vec<_>>())
}

/// `rad^n(x, y)` for `n = 0..=depth` over GF(p), straight from the
/// definitions: `rad` is all maps between distinct vertices and the
/// non-invertible endomorphisms at a vertex, and `rad^n` is spanned by
/// composites `g h` with `h ∈ rad^{n-1}(x, z)`, `g ∈ rad(z, y)` for every
/// module `z` of the component.
pub fn rad_powers<const P: u64>(c: &ArComponent<Fp<P>>, depth: usize) -> Vec<Vec<Vec<Subspace<Fp<P>>>>> {
    let n = c.len();
    let mut homs = HashMap::new();
    for x in 0..n {
        for y in 0..n {
            homs.insert((x, y), brute_hom(c.rep(x), c.rep(y)));
        }
    }
    let rad1: Vec<Vec<Subspace<Fp<P>>>> = (0..n)
        .map(|x| {
            (0..n)
                .map(|y| {
                    let all = &homs[&(x, y)];
                    let maps: Vec<Morphism<Fp<P>>> = if x == y {
                        all.iter().filter(|f| !f.is_isomorphism()).cloned().collect()
                    } else {
                        all.clone()
                    };
                    span(c.rep(x), c.rep(y), &maps)
                })
                .collect()
        })
        .collect();
    let mut out: Vec<Vec<Vec<Subspace<Fp<P>>>>> = (0..n)
        .map(|x| {
            (0..n)
                .map(|y| vec![span(c.rep(x), c.rep(y), &homs[&(x, y)]), rad1[x][y].clone()])
                .collect()
        })
        .collect();
    for k in 2..=depth {
        for x in 0..n {
            for y in 0..n {
                let mut gens = Vec::new();
                for z in 0..n {
                    for h in out[x][z][k - 1].basis() {
                        let h = Morphism::unflatten(c.rep(x).dims(), c.rep(z).dims(), h);
                        for g in rad1[z][y].basis() {
                            let g = Morphism::unflatten(c.rep(z).dims(), c.rep(y).dims(), g);
                            gens.push(g.after(&h));
                        }
                    }
                }
                let s = span(c.rep(x), c.rep(y), &gens);
                out[x][y].push(s);
            }
        }
    }
    out
}

/// Paths of length `n` from `x` to `y`, by depth-first search.
pub fn paths(tq: &TranslationQuiver, x: usize, y: usize, n: usize) -> Vec<Vec<usize>> {
    let q = tq.quiver();
    let mut out = Vec::new();
    let mut stack = vec![(x, Vec::new())];
    while let Some((v, arrows)) = stack.pop() {
        if arrows.len() == n {
            if v == y {
                out.push(arrows);
            }
            continue;
        }
        for &a in q.outgoing(v) {
            let mut next = arrows.clone();
            next.push(a);
            stack.push((q.arrow(a).target, next));
        }
    }
    out.sort();
    out
}

/// `dim` of the degree-`n` slice of the mesh category at `(x, y)`: paths
/// modulo all `u ρ_z w` where `ρ_z` sums the length-two paths `τz -> z`.
/// Assumes no multiple arrows.
pub fn mesh_dim(tq: &TranslationQuiver, x: usize, y: usize, n: usize) -> usize {
    let ps = paths(tq, x, y, n);
    if ps.is_empty() {
        return 0;
    }
    let index: HashMap<&Vec<usize>, usize> = ps.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let mut rows: Vec<Vec<i64>> = Vec::new();
    if n >= 2 {
        for z in 0..tq.vertex_count() {
            let Some(t) = tq.tau(z) else { continue };
            let rho = paths(tq, t, z, 2);
            for a in 0..=n - 2 {
                for u in paths(tq, x, t, a) {
                    for w in paths(tq, z, y, n - 2 - a) {
                        let mut row = vec![0i64; ps.len()];
                        for r in &rho {
                            let full: Vec<usize> = u.iter().chain(r).chain(&w).copied().collect();
                            row[index[&full]] += 1;
                        }
                        rows.push(row);
                    }
                }
            }
        }
    }
    if rows.is_empty() {
        return ps.len();
    }
    let m = Matrix::from_rows(
        rows.into_iter()
            .map(|r| r.into_iter().map(meshlab::Rational::from_i64).collect())
            .collect(),
    )
    .unwrap();
    ps.len() - m.rank()
}

/// Every path of the component of length at most `max`, as `QPath`s.
pub fn all_paths(tq: &TranslationQuiver, max: usize) -> Vec<QPath> {
    let mut out = Vec::new();
    for x in 0..tq.vertex_count() {
        for y in 0..tq.vertex_count() {
            for n in 0..=max {
                for p in paths(tq, x, y, n) {
                    out.push(QPath { start: x, arrows: p });
                }
            }
        }
    }
    out
}

/// Least `n ≥ 1` for which some `h ∈ radⁿ ∖ radⁿ⁺¹` at a vertex `z` has its
/// composite with `f` in `radⁿ⁺²`, found by trying every `h` over GF(p).
/// `left` composes `f h` for `h: z -> x`, otherwise `h f` for `h: y -> z`.
pub fn brute_degree<const P: u64>(
    c: &ArComponent<Fp<P>>,
    rad: &[Vec<Vec<Subspace<Fp<P>>>>],
    x: usize,
    y: usize,
    f: &Morphism<Fp<P>>,
    left: bool,
) -> Option<usize> {
    let depth = rad[0][0].len() - 1;
    for n in 1..depth.saturating_sub(1) {
        for z in 0..c.len() {
            let (hs, he, cs, ce) = if left { (z, x, z, y) } else { (y, z, x, z) };
            for h in brute_hom(c.rep(hs), c.rep(he)) {
                let v = h.flatten();
                if !rad[hs][he][n].contains(&v) || rad[hs][he][n + 1].contains(&v) {
                    continue;
                }
                let comp = if left { f.after(&h) } else { h.after(f) };
                if rad[cs][ce][n + 2].contains(&comp.flatten()) {
                    return Some(n);
                }
            }
        }
    }
    None
}
