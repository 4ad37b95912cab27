use std::fmt;

use super::hom::{end_radical_of, hom_basis, HomSpace};
use super::repr::{Morphism, Representation};
use crate::error::{Error, Result};
use crate::linalg::{kernel_basis, linear_combination, Matrix, Subspace};
use crate::scalar::Scalar;

/// Hom spaces and radicals between a fixed list of pairwise non-isomorphic
/// indecomposables.
#[derive(Clone, Debug)]
pub struct HomCache<S> {
    reps: Vec<Representation<S>>,
    hom: Vec<Vec<HomSpace<S>>>,
    rad: Vec<Vec<Subspace<S>>>,
}

impl<S: Scalar> HomCache<S> {
    /// `names` are used in error messages only.
    pub fn new(reps: Vec<Representation<S>>, names: &[String]) -> Result<Self> {
        let n = reps.len();
        let mut hom = Vec::with_capacity(n);
        let mut rad = Vec::with_capacity(n);
        for x in 0..n {
            let mut hrow = Vec::with_capacity(n);
            let mut rrow = Vec::with_capacity(n);
            for y in 0..n {
                let h = hom_basis(&reps[x], &reps[y])?;
                let r = if x == y {
                    end_radical_of(&h, reps[x].dims(), &names[x])?
                } else {
                    h.span.clone()
                };
                hrow.push(h);
                rrow.push(r);
            }
            hom.push(hrow);
            rad.push(rrow);
        }
        Ok(HomCache { reps, hom, rad })
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn rep(&self, x: usize) -> &Representation<S> {
        &self.reps[x]
    }

    pub fn reps(&self) -> &[Representation<S>] {
        &self.reps
    }

    pub fn hom(&self, x: usize, y: usize) -> &HomSpace<S> {
        &self.hom[x][y]
    }

    /// `rad(X, Y)` as a subspace of flattened block tuples.
    pub fn rad(&self, x: usize, y: usize) -> &Subspace<S> {
        &self.rad[x][y]
    }

    pub fn is_radical(&self, x: usize, y: usize, f: &Morphism<S>) -> bool {
        self.rad[x][y].contains(&f.flatten())
    }

    /// `Σ_i g_i ∘ Hom(M, Y_i)` for a map `[g_1 ... g_r]: ⊕ Y_i -> X`.
    pub fn sink_image(&self, m: usize, x: usize, map: &ComponentMap<S>) -> Subspace<S> {
        let ambient = self.hom[m][x].ambient();
        let gens = map
            .summands
            .iter()
            .zip(&map.components)
            .flat_map(|(&y, g)| self.hom[m][y].basis.iter().map(move |h| g.after(h).flatten()))
            .collect::<Vec<_>>();
        Subspace::span(ambient, gens)
    }

    /// `Σ_i Hom(Z_i, M) ∘ f_i` for a map `(f_1, ..., f_r): X -> ⊕ Z_i`.
    pub fn source_image(&self, x: usize, m: usize, map: &ComponentMap<S>) -> Subspace<S> {
        let ambient = self.hom[x][m].ambient();
        let gens = map
            .summands
            .iter()
            .zip(&map.components)
            .flat_map(|(&z, f)| self.hom[z][m].basis.iter().map(move |h| h.after(f).flatten()))
            .collect::<Vec<_>>();
        Subspace::span(ambient, gens)
    }

    /// Checks that a map into `x` is a sink map relative to the cached
    /// modules.
    pub fn verify_sink_map(&self, x: usize, map: &ComponentMap<S>) -> MapReport {
        let mut report = MapReport::default();
        for (i, (&y, g)) in map.summands.iter().zip(&map.components).enumerate() {
            if !self.is_radical(y, x, g) {
                report.not_radical.push(i);
            }
        }
        for m in 0..self.len() {
            if !self.sink_image(m, x, map).contains_subspace(&self.rad[m][x]) {
                report.not_factoring.push(m);
            }
        }
        report.minimal = self.kernel_in_radical(map, Side::Sink);
        report
    }

    /// Dual of [`Self::verify_sink_map`].
    pub fn verify_source_map(&self, x: usize, map: &ComponentMap<S>) -> MapReport {
        let mut report = MapReport::default();
        for (i, (&z, f)) in map.summands.iter().zip(&map.components).enumerate() {
            if !self.is_radical(x, z, f) {
                report.not_radical.push(i);
            }
        }
        for m in 0..self.len() {
            if !self.source_image(x, m, map).contains_subspace(&self.rad[x][m]) {
                report.not_factoring.push(m);
            }
        }
        report.minimal = self.kernel_in_radical(map, Side::Source);
        report
    }

    /// Minimality: every endomorphism `k` of `E = ⊕ E_i` with `g∘k = 0`
    /// (resp. `k∘f = 0`) is radical. A non-radical `k` would split off a
    /// summand of `E` killed by the map.
    fn kernel_in_radical(&self, map: &ComponentMap<S>, side: Side) -> bool {
        let e = &map.summands;
        let r = e.len();
        // unknowns: coefficients of k_ij : E_j -> E_i over the Hom basis
        let mut vars = Vec::new();
        for i in 0..r {
            for j in 0..r {
                for b in 0..self.hom[e[j]][e[i]].dim() {
                    vars.push((i, j, b));
                }
            }
        }
        if vars.is_empty() {
            return true;
        }
        // equations: one flattened Hom space per free index
        let eq_ambient: Vec<usize> = (0..r)
            .map(|t| {
                let first = &map.components[t];
                first
                    .source_dims()
                    .iter()
                    .zip(first.target_dims())
                    .map(|(a, b)| a * b)
                    .sum::<usize>()
            })
            .collect();
        let eq_offsets: Vec<usize> = eq_ambient
            .iter()
            .scan(0, |acc, &d| {
                let o = *acc;
                *acc += d;
                Some(o)
            })
            .collect();
        let rows = eq_ambient.iter().sum::<usize>();
        let mut columns = Vec::with_capacity(vars.len());
        for &(i, j, b) in &vars {
            let k = &self.hom[e[j]][e[i]].basis[b];
            let mut col = vec![S::zero(); rows];
            // sink: (g∘k)_j = Σ_i g_i k_ij ; source: (k∘f)_i = Σ_j k_ij f_j
            let (slot, prod) = match side {
                Side::Sink => (j, map.components[i].after(k)),
                Side::Source => (i, k.after(&map.components[j])),
            };
            for (t, x) in prod.flatten().into_iter().enumerate() {
                col[eq_offsets[slot] + t] = x;
            }
            columns.push(col);
        }
        let system = Matrix::from_columns(rows, &columns);
        let kernel = kernel_basis(&system);
        kernel.basis().iter().all(|c| {
            (0..r).all(|i| {
                (0..r).all(|j| {
                    let hom = &self.hom[e[j]][e[i]];
                    let terms: Vec<(S, &[S])> = vars
                        .iter()
                        .zip(c)
                        .filter(|((a, b, _), _)| (*a, *b) == (i, j))
                        .map(|((_, _, t), x)| (x.clone(), hom.span.basis()[*t].as_slice()))
                        .collect();
                    let flat = linear_combination(hom.ambient(), &terms);
                    self.rad[e[j]][e[i]].contains(&flat)
                })
            })
        })
    }
}

#[derive(Clone, Copy)]
enum Side {
    Sink,
    Source,
}

/// A map `⊕ E_i -> X` (sink side) or `X -> ⊕ E_i` (source side) given by
/// its components; `summands` are module indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentMap<S> {
    pub summands: Vec<usize>,
    pub components: Vec<Morphism<S>>,
}

impl<S: Scalar> ComponentMap<S> {
    /// `[g_1 ... g_r]` as one morphism out of the direct sum.
    pub fn as_row(&self, target_dims: &[usize]) -> Morphism<S> {
        if self.components.is_empty() {
            return Morphism::zero(&vec![0; target_dims.len()], target_dims);
        }
        Morphism::row(&self.components.iter().collect::<Vec<_>>())
    }

    pub fn as_column(&self, source_dims: &[usize]) -> Morphism<S> {
        if self.components.is_empty() {
            return Morphism::zero(source_dims, &vec![0; source_dims.len()]);
        }
        Morphism::column(&self.components.iter().collect::<Vec<_>>())
    }

    pub fn direct_sum(&self, cache: &HomCache<S>, x: usize) -> Result<Representation<S>> {
        if self.summands.is_empty() {
            return Ok(Representation::zero(cache.rep(x).algebra().clone()));
        }
        Representation::direct_sum(&self.summands.iter().map(|&y| cache.rep(y)).collect::<Vec<_>>())
    }
}

/// Outcome of a sink or source map check.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MapReport {
    /// Components that are not radical.
    pub not_radical: Vec<usize>,
    /// Modules `M` with a radical map that does not factor.
    pub not_factoring: Vec<usize>,
    pub minimal: bool,
}

impl MapReport {
    pub fn passed(&self) -> bool {
        self.not_radical.is_empty() && self.not_factoring.is_empty() && self.minimal
    }
}

/// Depth of a morphism: least `n` with `f ∈ radⁿ ∖ radⁿ⁺¹`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Depth {
    Finite(usize),
    Infinite,
}

impl Depth {
    pub fn finite(self) -> Option<usize> {
        match self {
            Depth::Finite(n) => Some(n),
            Depth::Infinite => None,
        }
    }
}

impl serde::Serialize for Depth {
    fn serialize<Z: serde::Serializer>(&self, s: Z) -> std::result::Result<Z::Ok, Z::Error> {
        match self {
            Depth::Finite(n) => s.serialize_u64(*n as u64),
            Depth::Infinite => s.serialize_str("inf"),
        }
    }
}

impl fmt::Display for Depth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Depth::Finite(n) => write!(f, "{n}"),
            Depth::Infinite => write!(f, "inf"),
        }
    }
}

/// The powers of the radical between the cached modules, computed by the
/// recursion `radⁿ(M, X) = g_X ∘ radⁿ⁻¹(M, E_X)` along sink maps.
#[derive(Clone, Debug)]
pub struct RadicalFiltration<S> {
    /// `levels[x][y][n]` for `n = 0..=stable`.
    levels: Vec<Vec<Vec<Subspace<S>>>>,
    stable: usize,
}

impl<S: Scalar> RadicalFiltration<S> {
    /// Stops at the first `m` with `rad^{m+1} = rad^m` at every pair; then
    /// `rad^∞ = rad^m`.
    pub fn build(cache: &HomCache<S>, sinks: &[ComponentMap<S>], cap: usize) -> Result<Self> {
        let n = cache.len();
        if sinks.len() != n {
            return Err(Error::MissingSinkMap(format!(
                "{} sink maps for {n} modules",
                sinks.len()
            )));
        }
        let mut levels: Vec<Vec<Vec<Subspace<S>>>> = (0..n)
            .map(|m| (0..n).map(|x| vec![cache.hom(m, x).span.clone()]).collect())
            .collect();
        for step in 0..=cap {
            let mut changed = false;
            let mut next = Vec::with_capacity(n);
            for m in 0..n {
                let mut row = Vec::with_capacity(n);
                for (x, sink) in sinks.iter().enumerate() {
                    let ambient = cache.hom(m, x).ambient();
                    let gens: Vec<Vec<S>> = sink
                        .summands
                        .iter()
                        .zip(&sink.components)
                        .flat_map(|(&y, g)| {
                            let prev = &levels[m][y][step];
                            prev.basis()
                                .iter()
                                .map(|h| g.after(&cache.hom(m, y).morphism(h)).flatten())
                                .collect::<Vec<_>>()
                        })
                        .collect();
                    let sub = Subspace::span(ambient, gens);
                    let prev = &levels[m][x][step];
                    if !prev.contains_subspace(&sub) {
                        return Err(Error::Internal("radical powers are not descending".into()));
                    }
                    changed |= sub.dim() != prev.dim();
                    row.push(sub);
                }
                next.push(row);
            }
            if !changed {
                return Ok(RadicalFiltration { levels, stable: step });
            }
            for (m, row) in next.into_iter().enumerate() {
                for (x, sub) in row.into_iter().enumerate() {
                    levels[m][x].push(sub);
                }
            }
        }
        Err(Error::NotStabilized { cap })
    }

    /// The stabilization index `m`.
    pub fn stable_index(&self) -> usize {
        self.stable
    }

    pub fn rad_power(&self, x: usize, y: usize, n: usize) -> &Subspace<S> {
        &self.levels[x][y][n.min(self.stable)]
    }

    pub fn rad_infty(&self, x: usize, y: usize) -> &Subspace<S> {
        &self.levels[x][y][self.stable]
    }

    /// Least `m` with `rad^m(X, Y) = rad^∞(X, Y)`.
    pub fn pairwise_stable_index(&self, x: usize, y: usize) -> usize {
        let inf = self.rad_infty(x, y).dim();
        (0..=self.stable)
            .find(|&n| self.levels[x][y][n].dim() == inf)
            .unwrap_or(self.stable)
    }

    pub fn depth(&self, x: usize, y: usize, f: &Morphism<S>) -> Depth {
        let flat = f.flatten();
        if self.rad_infty(x, y).contains(&flat) {
            return Depth::Infinite;
        }
        let levels = &self.levels[x][y];
        Depth::Finite(
            (0..self.stable)
                .find(|&n| !levels[n + 1].contains(&flat))
                .unwrap_or(self.stable),
        )
    }

    /// `dim rad(X, Y) - dim rad²(X, Y)`.
    pub fn irr_dim(&self, x: usize, y: usize) -> usize {
        self.rad_power(x, y, 1).dim() - self.rad_power(x, y, 2).dim()
    }

    /// `dim radⁿ(X, Y) - dim radⁿ⁺¹(X, Y)`.
    pub fn layer_dim(&self, x: usize, y: usize, n: usize) -> usize {
        self.rad_power(x, y, n).dim() - self.rad_power(x, y, n + 1).dim()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::{end_radical, hom_basis, rad_basis};
    use crate::testing::*;

    const P1: usize = 0;
    const P2: usize = 1;
    const P3: usize = 2;
    const S2: usize = 3;
    const I2: usize = 4;
    const I3: usize = 5;

    #[test]
    fn hom_dimensions_in_a3() {
        let c = a3_cache::<Q>();
        assert_eq!(c.hom(S2, S2).dim(), 1);
        assert_eq!(c.hom(P2, I2).dim(), 1);
        assert_eq!(c.hom(P1, I3).dim(), 0);
        assert_eq!(c.hom(P1, P2).dim(), 1);
        assert_eq!(c.hom(P2, P1).dim(), 0);
    }

    #[test]
    fn radicals_in_a3() {
        let c = a3_cache::<Q>();
        assert!(c.rad(S2, S2).is_zero());
        assert_eq!(c.rad(P2, I2).dim(), 1);
        let mods = a3_modules::<Q>();
        assert_eq!(rad_basis(&mods[P2], &mods[I2], 0).unwrap().dim(), 1);
        assert!(rad_basis(&mods[S2], &mods[S2], 0).unwrap().is_zero());
    }

    #[test]
    fn radical_of_dual_numbers_is_the_nilpotent() {
        let m = dual_numbers();
        assert_eq!(hom_basis(&m, &m).unwrap().dim(), 2);
        let rad = end_radical(&m, "M").unwrap();
        assert_eq!(rad.dim(), 1);
        let t = Morphism {
            blocks: vec![m.map(0).clone()],
        };
        assert!(rad.contains(&t.flatten()));
    }

    #[test]
    fn sink_maps_in_a3() {
        let c = a3_cache::<Q>();
        let sinks = a3_sinks(&c);
        for (x, s) in sinks.iter().enumerate() {
            assert!(c.verify_sink_map(x, s).passed(), "sink at {}", A3_NAMES[x]);
        }
        let mut broken = sinks[I2].clone();
        broken.components[1] = Morphism::zero(&[1, 1, 1], &[0, 1, 1]);
        let report = c.verify_sink_map(I2, &broken);
        assert!(!report.passed());
        assert_eq!(report.not_factoring, vec![P3]);
        assert!(!report.minimal);
    }

    #[test]
    fn source_maps_in_a3() {
        let c = a3_cache::<Q>();
        let outgoing: [&[usize]; 6] = [&[P2], &[P3, S2], &[I2], &[I2], &[I3], &[]];
        for (x, zs) in outgoing.iter().enumerate() {
            let map = ComponentMap {
                summands: zs.to_vec(),
                components: zs.iter().map(|&z| basis_map(&c, x, z)).collect(),
            };
            assert!(c.verify_source_map(x, &map).passed(), "source at {}", A3_NAMES[x]);
        }
    }

    #[test]
    fn filtration_of_a3() {
        let c = a3_cache::<Q>();
        let f = RadicalFiltration::build(&c, &a3_sinks(&c), 20).unwrap();
        assert_eq!(f.rad_power(P2, I2, 2).dim(), 1);
        assert!(f.rad_power(P2, I2, 3).is_zero());
        assert_eq!(f.irr_dim(P1, P2), 1);
        assert_eq!(f.irr_dim(P2, I2), 0);
        for x in 0..6 {
            assert_eq!(f.irr_dim(x, x), 0);
            for y in 0..6 {
                assert!(f.rad_infty(x, y).is_zero());
                assert_eq!(f.rad_power(x, y, 1), c.rad(x, y));
            }
        }
        let jp = basis_map(&c, S2, I2).after(&basis_map(&c, P2, S2));
        assert_eq!(f.depth(P2, I2, &jp), Depth::Finite(2));
        assert_eq!(
            f.depth(P2, I2, &Morphism::zero(&[1, 1, 0], &[0, 1, 1])),
            Depth::Infinite
        );
        assert_eq!(f.depth(S2, S2, &Morphism::identity(&[0, 1, 0])), Depth::Finite(0));
        assert_eq!(f.pairwise_stable_index(P2, I2), 3);
        assert_eq!(f.pairwise_stable_index(P1, I3), 0);
        assert_eq!(f.pairwise_stable_index(S2, S2), 1);
    }

    #[test]
    fn forced_non_radical_sink_data_never_drops() {
        // an automorphism posing as a sink map keeps every level equal to Hom
        let m = dual_numbers();
        let c = HomCache::new(vec![m.clone()], &["M".to_string()]).unwrap();
        let unit = Morphism::identity(&[2]).add(&Morphism {
            blocks: vec![m.map(0).clone()],
        });
        let sinks = vec![ComponentMap {
            summands: vec![0],
            components: vec![unit],
        }];
        let f = RadicalFiltration::build(&c, &sinks, 5).unwrap();
        assert_eq!(f.stable_index(), 0);
        assert_eq!(f.rad_infty(0, 0).dim(), 2);
        assert!(!c.verify_sink_map(0, &sinks[0]).passed());
    }
}
