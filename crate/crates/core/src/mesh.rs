//! Homogeneous slices of the path category and the mesh category of a
//! translation quiver.
//!
//! For each triple `(x, y, n)` the length-`n` paths `x -> y` span a
//! coordinate space. The mesh ideal meets it in a subspace stored in reduced
//! echelon form; the paths at non-pivot columns represent a basis of the
//! degree-`n` component of the mesh category, and reduction modulo the slice
//! is the normal form of a class.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::linalg::{is_zero_vec, Subspace};
use crate::quiver::{QPath, TranslationQuiver};
use crate::scalar::Scalar;

#[derive(Clone, Debug)]
struct Slice<S> {
    paths: Vec<QPath>,
    index: HashMap<Vec<usize>, usize>,
    relations: Subspace<S>,
    /// Non-pivot columns of `relations`: the representative paths.
    complement: Vec<usize>,
}

/// A homogeneous morphism of the mesh category, in normal form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MeshClass<S> {
    pub source: usize,
    pub target: usize,
    pub degree: usize,
    /// Coefficients over the length-`degree` paths `source -> target`.
    pub coords: Vec<S>,
}

impl<S: Scalar> MeshClass<S> {
    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.coords)
    }
}

/// Graded slices of the mesh category, materialized up to a degree cap.
#[derive(Clone, Debug)]
pub struct GradedHomTable<S> {
    tq: TranslationQuiver,
    cap: usize,
    slices: HashMap<(usize, usize, usize), Slice<S>>,
}

impl<S: Scalar> GradedHomTable<S> {
    pub fn build(tq: &TranslationQuiver, cap: usize) -> Self {
        let q = tq.quiver();
        let n = tq.vertex_count();
        let mut slices = HashMap::new();
        // Paths grouped by (start, length), extended one arrow at a time.
        let mut by_start: Vec<Vec<Vec<QPath>>> = vec![Vec::with_capacity(cap + 1); n];
        for (x, levels) in by_start.iter_mut().enumerate() {
            levels.push(vec![QPath::trivial(x)]);
            for len in 1..=cap {
                let next: Vec<QPath> = levels[len - 1]
                    .iter()
                    .flat_map(|p| {
                        q.outgoing(p.end(q)).iter().map(move |&a| {
                            let mut arrows = p.arrows.clone();
                            arrows.push(a);
                            QPath { start: x, arrows }
                        })
                    })
                    .collect();
                levels.push(next);
            }
        }
        for x in 0..n {
            for len in 0..=cap {
                let mut grouped: HashMap<usize, Vec<QPath>> = HashMap::new();
                for p in &by_start[x][len] {
                    grouped.entry(p.end(q)).or_default().push(p.clone());
                }
                for (y, mut paths) in grouped {
                    paths.sort();
                    let index = paths.iter().enumerate().map(|(i, p)| (p.arrows.clone(), i)).collect();
                    slices.insert(
                        (x, y, len),
                        Slice {
                            paths,
                            index,
                            relations: Subspace::zero(0),
                            complement: Vec::new(),
                        },
                    );
                }
            }
        }
        // Mesh ideal: prefix p: x -> tau z, mesh at z, suffix s: z -> y.
        let meshes = tq.meshes();
        let mut generators: HashMap<(usize, usize, usize), Vec<Vec<S>>> = HashMap::new();
        for x in 0..n {
            for a in 0..=cap.saturating_sub(2) {
                for prefix in &by_start[x][a] {
                    let w = prefix.end(q);
                    for mesh in meshes.iter().filter(|m| m.start == w) {
                        for b in 0..=cap.saturating_sub(a + 2) {
                            if a + b + 2 > cap {
                                break;
                            }
                            for suffix in &by_start[mesh.end][b] {
                                let y = suffix.end(q);
                                let key = (x, y, a + b + 2);
                                let slice = &slices[&key];
                                let mut v = vec![S::zero(); slice.paths.len()];
                                for &(s, alpha) in &mesh.legs {
                                    let mut arrows = prefix.arrows.clone();
                                    arrows.push(s);
                                    arrows.push(alpha);
                                    arrows.extend_from_slice(&suffix.arrows);
                                    let i = slice.index[&arrows];
                                    v[i] = v[i].clone() + S::one();
                                }
                                generators.entry(key).or_default().push(v);
                            }
                        }
                    }
                }
            }
        }
        for (key, slice) in slices.iter_mut() {
            let dim = slice.paths.len();
            slice.relations = Subspace::span(dim, generators.remove(key).unwrap_or_default());
            let pivots = slice.relations.pivots();
            slice.complement = (0..dim).filter(|c| !pivots.contains(c)).collect();
        }
        GradedHomTable {
            tq: tq.clone(),
            cap,
            slices,
        }
    }

    pub fn translation_quiver(&self) -> &TranslationQuiver {
        &self.tq
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    fn slice(&self, x: usize, y: usize, n: usize) -> Result<Option<&Slice<S>>> {
        if n > self.cap {
            return Err(Error::Precondition(format!(
                "degree {n} exceeds the table cap {}",
                self.cap
            )));
        }
        Ok(self.slices.get(&(x, y, n)))
    }

    /// Length-`n` paths `x -> y`, sorted; coordinates refer to this order.
    pub fn paths(&self, x: usize, y: usize, n: usize) -> Result<&[QPath]> {
        Ok(self.slice(x, y, n)?.map_or(&[], |s| s.paths.as_slice()))
    }

    /// The degree-`n` part of the mesh ideal at `(x, y)`.
    pub fn mesh_ideal_slice(&self, x: usize, y: usize, n: usize) -> Result<Subspace<S>> {
        Ok(self
            .slice(x, y, n)?
            .map_or_else(|| Subspace::zero(0), |s| s.relations.clone()))
    }

    pub fn dim(&self, x: usize, y: usize, n: usize) -> Result<usize> {
        Ok(self.slice(x, y, n)?.map_or(0, |s| s.complement.len()))
    }

    /// Representatives of a basis of the degree-`n` component at `(x, y)`.
    pub fn graded_hom_basis(&self, x: usize, y: usize, n: usize) -> Result<Vec<MeshClass<S>>> {
        let Some(s) = self.slice(x, y, n)? else {
            return Ok(Vec::new());
        };
        let len = s.paths.len();
        Ok(s.complement
            .iter()
            .map(|&c| {
                let mut coords = vec![S::zero(); len];
                coords[c] = S::one();
                MeshClass {
                    source: x,
                    target: y,
                    degree: n,
                    coords,
                }
            })
            .collect())
    }

    /// The paths representing [`Self::graded_hom_basis`].
    pub fn basis_paths(&self, x: usize, y: usize, n: usize) -> Result<Vec<QPath>> {
        Ok(self
            .slice(x, y, n)?
            .map_or_else(Vec::new, |s| s.complement.iter().map(|&c| s.paths[c].clone()).collect()))
    }

    /// `Σ_{n ≤ cap} dim` at `(x, y)`.
    pub fn cumulative_dim(&self, x: usize, y: usize) -> usize {
        (0..=self.cap).map(|n| self.dim(x, y, n).unwrap_or(0)).sum()
    }

    /// Whether some path of length `cap` leaves `x`, so higher degrees may
    /// be nonzero.
    pub fn truncated(&self, x: usize) -> bool {
        (0..self.tq.vertex_count()).any(|y| self.slices.contains_key(&(x, y, self.cap)))
    }

    pub fn zero_class(&self, x: usize, y: usize, n: usize) -> Result<MeshClass<S>> {
        let len = self.paths(x, y, n)?.len();
        Ok(MeshClass {
            source: x,
            target: y,
            degree: n,
            coords: vec![S::zero(); len],
        })
    }

    /// Normal form of an arbitrary coefficient column over the paths.
    pub fn class(&self, x: usize, y: usize, n: usize, coords: Vec<S>) -> Result<MeshClass<S>> {
        match self.slice(x, y, n)? {
            None if coords.is_empty() => self.zero_class(x, y, n),
            None => Err(Error::Shape(format!("no paths of length {n} for this pair"))),
            Some(s) if s.paths.len() != coords.len() => Err(Error::Shape(format!(
                "{} coefficients for {} paths",
                coords.len(),
                s.paths.len()
            ))),
            Some(s) => Ok(MeshClass {
                source: x,
                target: y,
                degree: n,
                coords: s.relations.reduce(&coords),
            }),
        }
    }

    pub fn class_of_path(&self, path: &QPath) -> Result<MeshClass<S>> {
        let q = self.tq.quiver();
        let (x, y, n) = (path.start, path.end(q), path.len());
        let s = self
            .slice(x, y, n)?
            .ok_or_else(|| Error::Internal("path missing from its slice".into()))?;
        let mut coords = vec![S::zero(); s.paths.len()];
        coords[s.index[&path.arrows]] = S::one();
        self.class(x, y, n, coords)
    }

    /// Coordinates of a class in [`Self::graded_hom_basis`].
    pub fn basis_coordinates(&self, c: &MeshClass<S>) -> Result<Vec<S>> {
        let Some(s) = self.slice(c.source, c.target, c.degree)? else {
            return Ok(Vec::new());
        };
        let reduced = s.relations.reduce(&c.coords);
        Ok(s.complement.iter().map(|&i| reduced[i].clone()).collect())
    }

    /// `a ∘ b`: `b` is applied first.
    pub fn compose_classes(&self, a: &MeshClass<S>, b: &MeshClass<S>) -> Result<MeshClass<S>> {
        if b.target != a.source {
            let q = self.tq.quiver();
            return Err(Error::EndpointMismatch(format!(
                "first class ends at {}, second starts at {}",
                q.vertex_id(b.target),
                q.vertex_id(a.source)
            )));
        }
        let (x, y, n) = (b.source, a.target, a.degree + b.degree);
        let pa = self.paths(a.source, a.target, a.degree)?;
        let pb = self.paths(b.source, b.target, b.degree)?;
        let Some(target) = self.slice(x, y, n)? else {
            return self.zero_class(x, y, n);
        };
        let mut coords = vec![S::zero(); target.paths.len()];
        for (i, cb) in b.coords.iter().enumerate() {
            if cb.is_zero() {
                continue;
            }
            for (j, ca) in a.coords.iter().enumerate() {
                if ca.is_zero() {
                    continue;
                }
                let joined = pb[i].then(&pa[j]);
                let k = target.index[&joined.arrows];
                coords[k] = coords[k].clone() + cb.clone() * ca.clone();
            }
        }
        self.class(x, y, n, coords)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::{build_z_delta, linear_quiver, ArrowSpec, TauSpec, TranslationQuiverSpec};
    use crate::scalar::{Fp, Rational};
    use proptest::prelude::*;

    type Q = Rational;

    fn a3() -> TranslationQuiver {
        let arrow = |id: &str, from: &str, to: &str| ArrowSpec {
            id: Some(id.into()),
            from: from.into(),
            to: to.into(),
        };
        let tau = |of: &str, is: &str| TauSpec {
            of: of.into(),
            is: is.into(),
        };
        TranslationQuiver::new(&TranslationQuiverSpec {
            vertices: ["P1", "P2", "P3", "S2", "I2", "I3"].map(String::from).to_vec(),
            arrows: vec![
                arrow("u", "P1", "P2"),
                arrow("i", "P2", "P3"),
                arrow("p", "P2", "S2"),
                arrow("j", "S2", "I2"),
                arrow("q", "P3", "I2"),
                arrow("v", "I2", "I3"),
            ],
            projectives: ["P1", "P2", "P3"].map(String::from).to_vec(),
            injectives: ["P3", "I2", "I3"].map(String::from).to_vec(),
            tau: vec![tau("S2", "P1"), tau("I2", "P2"), tau("I3", "S2")],
            sigma: vec![],
        })
        .unwrap()
    }

    fn v(tq: &TranslationQuiver, id: &str) -> usize {
        tq.quiver().vertex(id).unwrap()
    }

    #[test]
    fn low_degrees_have_no_relations() {
        let tq = a3();
        let t = GradedHomTable::<Q>::build(&tq, 4);
        for x in 0..6 {
            for y in 0..6 {
                assert!(t.mesh_ideal_slice(x, y, 0).unwrap().is_zero());
                assert!(t.mesh_ideal_slice(x, y, 1).unwrap().is_zero());
            }
            let id = t.graded_hom_basis(x, x, 0).unwrap();
            assert_eq!(id.len(), 1);
        }
    }

    #[test]
    fn a3_slices() {
        let tq = a3();
        let t = GradedHomTable::<Q>::build(&tq, 4);
        let (p1, p2, i2, i3) = (v(&tq, "P1"), v(&tq, "P2"), v(&tq, "I2"), v(&tq, "I3"));
        assert_eq!(t.paths(p2, i2, 2).unwrap().len(), 2);
        assert_eq!(t.mesh_ideal_slice(p2, i2, 2).unwrap().dim(), 1);
        assert_eq!(t.graded_hom_basis(p2, i2, 2).unwrap().len(), 1);
        assert_eq!(t.paths(p1, i3, 4).unwrap().len(), 2);
        assert_eq!(t.mesh_ideal_slice(p1, i3, 4).unwrap().dim(), 2);
        assert!(t.graded_hom_basis(p1, i3, 4).unwrap().is_empty());
    }

    #[test]
    fn composition_in_a3() {
        let tq = a3();
        let q = tq.quiver();
        let t = GradedHomTable::<Q>::build(&tq, 4);
        let class = |ids: &[&str]| t.class_of_path(&q.path(None, ids).unwrap()).unwrap();
        let (p, j) = (class(&["p"]), class(&["j"]));
        let jp = t.compose_classes(&j, &p).unwrap();
        assert_eq!(jp.degree, 2);
        assert!(!jp.is_zero());
        // pj and -iq are the same class
        let iq = class(&["i", "q"]);
        assert_eq!(
            t.basis_coordinates(&jp).unwrap(),
            vec![-t.basis_coordinates(&iq).unwrap()[0].clone()]
        );
        let eps = t.graded_hom_basis(v(&tq, "I2"), v(&tq, "I2"), 0).unwrap().remove(0);
        assert_eq!(t.compose_classes(&eps, &jp).unwrap(), jp);
        let up = t.compose_classes(&p, &class(&["u"])).unwrap();
        assert!(up.is_zero());
        assert!(matches!(t.compose_classes(&p, &j), Err(Error::EndpointMismatch(_))));
    }

    #[test]
    fn mesh_relations_vanish() {
        let tq = build_z_delta(&linear_quiver(3), 0..=3).unwrap();
        let t = GradedHomTable::<Fp<3>>::build(&tq, 6);
        for m in tq.meshes() {
            let mut coords = vec![Fp::<3>::new(0); t.paths(m.start, m.end, 2).unwrap().len()];
            for p in m.relation_paths() {
                let c = t.class_of_path(&p).unwrap();
                for (a, b) in coords.iter_mut().zip(c.coords) {
                    *a = *a + b;
                }
            }
            assert!(t.class(m.start, m.end, 2, coords).unwrap().is_zero());
        }
    }

    fn random_class(t: &GradedHomTable<Q>, x: usize, y: usize, n: usize, seed: &[i64]) -> MeshClass<Q> {
        let len = t.paths(x, y, n).unwrap().len();
        let coords = (0..len).map(|i| Q::from_i64(seed[i % seed.len()])).collect();
        t.class(x, y, n, coords).unwrap()
    }

    proptest! {
        #[test]
        fn grading_additive_and_associative(
            picks in proptest::collection::vec((0usize..12, 0usize..3), 3),
            seed in proptest::collection::vec(-3i64..=3, 1..5),
        ) {
            let tq = build_z_delta(&linear_quiver(3), 0..=3).unwrap();
            let t = GradedHomTable::<Q>::build(&tq, 9);
            let (x0, n1) = picks[0];
            // walk to endpoints reachable by paths of the chosen lengths
            let reach = |x: usize, n: usize, k: usize| -> Option<usize> {
                let ys: Vec<usize> = (0..tq.vertex_count()).filter(|&y| !t.paths(x, y, n).unwrap().is_empty()).collect();
                (!ys.is_empty()).then(|| ys[k % ys.len()])
            };
            let Some(x1) = reach(x0, n1, picks[1].0) else { return Ok(()); };
            let n2 = picks[1].1;
            let Some(x2) = reach(x1, n2, picks[2].0) else { return Ok(()); };
            let n3 = picks[2].1;
            let Some(x3) = reach(x2, n3, picks[0].0 + 1) else { return Ok(()); };
            let a = random_class(&t, x0, x1, n1, &seed);
            let b = random_class(&t, x1, x2, n2, &seed[1..].iter().chain(&seed).copied().collect::<Vec<_>>());
            let c = random_class(&t, x2, x3, n3, &seed);
            let ba = t.compose_classes(&b, &a).unwrap();
            prop_assert_eq!(ba.degree, n1 + n2);
            let left = t.compose_classes(&c, &ba).unwrap();
            let right = t.compose_classes(&t.compose_classes(&c, &b).unwrap(), &a).unwrap();
            prop_assert_eq!(left, right);
        }
    }
}
