mod oracle;

use meshlab::analysis::{degree, Side};
use meshlab::mesh::GradedHomTable;
use meshlab::quiver::{build_z_delta, linear_quiver};
use meshlab::riedtmann::{find_mesh_comparison, SearchConfig};
use meshlab::{Depth, Gf3, Rational};
use oracle::*;

#[test]
fn hom_dimensions_match_enumeration() {
    for (alg, comp) in [(A3_ALG, A3_COMP), (EX3_ALG, EX3_COMP)] {
        let c = component::<Gf3>(alg, comp);
        for x in 0..c.len() {
            for y in 0..c.len() {
                let count = brute_hom(c.rep(x), c.rep(y)).len();
                assert_eq!(count, 3usize.pow(c.cache.hom(x, y).dim() as u32), "{} -> {}", c.name(x), c.name(y));
            }
        }
    }
}

#[test]
fn radical_powers_match_composition_closure() {
    for (alg, comp) in [(A3_ALG, A3_COMP), (EX3_ALG, EX3_COMP)] {
        let c = component::<Gf3>(alg, comp);
        let depth = c.filtration.stable_index() + 2;
        let rad = rad_powers(&c, depth);
        for x in 0..c.len() {
            for y in 0..c.len() {
                for n in 0..=depth {
                    let lib = c.filtration.rad_power(x, y, n);
                    let ora = &rad[x][y][n];
                    assert!(
                        lib.contains_subspace(ora) && ora.contains_subspace(lib),
                        "rad^{n}({}, {})",
                        c.name(x),
                        c.name(y)
                    );
                }
            }
        }
    }
}

#[test]
fn fixture_dimensions_agree_across_fields() {
    for (alg, comp) in [(A3_ALG, A3_COMP), (EX3_ALG, EX3_COMP)] {
        let q = component::<Rational>(alg, comp);
        let f = component::<Gf3>(alg, comp);
        assert_eq!(q.filtration.stable_index(), f.filtration.stable_index());
        for x in 0..q.len() {
            for y in 0..q.len() {
                for n in 0..=q.filtration.stable_index() {
                    assert_eq!(q.filtration.layer_dim(x, y, n), f.filtration.layer_dim(x, y, n));
                }
            }
        }
    }
}

#[test]
fn mesh_category_matches_path_enumeration() {
    let cap = 8;
    let mut quivers = vec![];
    for n in [2, 3] {
        quivers.push(build_z_delta(&linear_quiver(n), 0..=4).unwrap());
    }
    quivers.push(component::<Rational>(A3_ALG, A3_COMP).tq);
    quivers.push(component::<Rational>(EX3_ALG, EX3_COMP).tq);
    for tq in &quivers {
        let table = GradedHomTable::<Rational>::build(tq, cap);
        for x in 0..tq.vertex_count() {
            for y in 0..tq.vertex_count() {
                for n in 0..=cap {
                    assert_eq!(table.dim(x, y, n).unwrap(), mesh_dim(tq, x, y, n), "({x}, {y}, {n})");
                }
            }
        }
    }
}

#[test]
fn degrees_match_enumeration() {
    let c = component::<Gf3>(A3_ALG, A3_COMP);
    let f = find_mesh_comparison(&c, &SearchConfig::default()).unwrap();
    let f = f.functor().unwrap();
    let rad = rad_powers(&c, c.filtration.stable_index() + 3);
    let q = c.tq.quiver();
    for a in 0..q.arrow_count() {
        let arr = q.arrow(a);
        for (side, left) in [(Side::Left, true), (Side::Right, false)] {
            let (d, _) = degree(&c, arr.source, arr.target, f.chosen(a), side).unwrap();
            let brute = brute_degree(&c, &rad, arr.source, arr.target, f.chosen(a), left);
            assert_eq!(d.finite(), brute, "{} {side:?}", arr.id);
            assert_eq!(d == Depth::Infinite, brute.is_none());
        }
    }
}
