//! Decision procedures on a component with a mesh-comparison: higher-radical
//! membership of composites, standardness, stabilization bounds, degrees of
//! irreducible morphisms and their kernel paths, and shortcut witnesses.

use serde::Serialize;

use crate::component::{blocks_text, ArComponent, ValidationCertificate};
use crate::decomposition::{decompose, principal_secondary};
use crate::error::{Error, Result};
use crate::format::BlocksText;
use crate::linalg::{kernel_basis, linear_combination, quotient_basis, Matrix};
use crate::mesh::GradedHomTable;
use crate::module::{cokernel, kernel, Depth, Morphism};
use crate::quiver::QPath;
use crate::riedtmann::{
    graded_images, span_of, theorem_b_table, BijectionRow, RiedtmannFunctor, SearchOutcome, SearchStats,
};
use crate::scalar::Scalar;

/// A morphism together with its endpoints in the component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrowed<S> {
    pub source: usize,
    pub target: usize,
    pub map: Morphism<S>,
}

impl<S> Arrowed<S> {
    pub fn new(source: usize, target: usize, map: Morphism<S>) -> Self {
        Arrowed { source, target, map }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompositionVerdict<S> {
    pub depths: Vec<usize>,
    /// Sum of the depths.
    pub total: usize,
    pub principal_product: Morphism<S>,
    pub composite: Morphism<S>,
    /// Direct membership of the composite in `rad^{N+1}`.
    pub in_rad_n_plus_1: bool,
    pub composite_depth: Depth,
}

impl<S: Scalar> CompositionVerdict<S> {
    /// The principal product vanishes exactly when the composite drops into
    /// `rad^{N+1}`.
    pub fn consistent(&self) -> bool {
        self.in_rad_n_plus_1 == self.principal_product.is_zero()
    }
}

/// Decides whether `f_n ⋯ f_1` lies in `rad^{N+1}`, both through principal
/// parts and by direct membership.
pub fn composition_verdict<S: Scalar>(
    c: &ArComponent<S>,
    functor: &RiedtmannFunctor<S>,
    table: &GradedHomTable<S>,
    chain: &[Arrowed<S>],
) -> Result<CompositionVerdict<S>> {
    let (Some(first), Some(last)) = (chain.first(), chain.last()) else {
        return Err(Error::Precondition("empty chain".into()));
    };
    for w in chain.windows(2) {
        if w[0].target != w[1].source {
            return Err(Error::EndpointMismatch(format!(
                "{} -> {} followed by {} -> {}",
                c.name(w[0].source),
                c.name(w[0].target),
                c.name(w[1].source),
                c.name(w[1].target)
            )));
        }
    }
    let mut depths = Vec::with_capacity(chain.len());
    let mut product: Option<Morphism<S>> = None;
    let mut composite: Option<Morphism<S>> = None;
    for link in chain {
        let parts = decompose(c, functor, table, link.source, link.target, &link.map, None)?;
        let Depth::Finite(d) = parts.depth() else {
            return Err(Error::InfiniteDepthInput);
        };
        depths.push(d);
        let (principal, _) = principal_secondary(&parts)?;
        product = Some(product.map_or(principal.clone(), |p| principal.after(&p)));
        composite = Some(composite.map_or(link.map.clone(), |p| link.map.after(&p)));
    }
    let (principal_product, composite) = (product.unwrap(), composite.unwrap());
    let total: usize = depths.iter().sum();
    let (x, y) = (first.source, last.target);
    let in_rad_n_plus_1 = c.filtration.rad_power(x, y, total + 1).contains(&composite.flatten());
    Ok(CompositionVerdict {
        depths,
        total,
        composite_depth: c.filtration.depth(x, y, &composite),
        principal_product,
        composite,
        in_rad_n_plus_1,
    })
}

/// Whether `rad^∞` vanishes at every pair of the component.
pub fn is_generalized_standard<S: Scalar>(c: &ArComponent<S>) -> bool {
    c.is_generalized_standard()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Standardness {
    Standard,
    NotStandard,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StandardnessReport {
    pub generalized_standard: bool,
    pub verdict: Standardness,
    pub reason: String,
    /// Ordered pairs at which fullness was checked.
    pub pairs_checked: usize,
    /// Pairs `X -> Y` where the images of the graded bases miss part of
    /// `Hom(X, Y)`.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub fullness_failures: Vec<String>,
}

pub fn standardness_verdict<S: Scalar>(
    c: &ArComponent<S>,
    outcome: &SearchOutcome<S>,
    table: &GradedHomTable<S>,
) -> Result<StandardnessReport> {
    let generalized_standard = c.is_generalized_standard();
    let report = |verdict, reason: &str| StandardnessReport {
        generalized_standard,
        verdict,
        reason: reason.into(),
        pairs_checked: 0,
        fullness_failures: vec![],
    };
    if !generalized_standard {
        return Ok(report(
            Standardness::NotStandard,
            "rad^inf does not vanish on the component",
        ));
    }
    let functor = match outcome {
        SearchOutcome::Found(f, _) => f,
        SearchOutcome::NotMeshComparable(_) => {
            return Ok(report(
                Standardness::NotStandard,
                "generalized standard but not mesh-comparable",
            ));
        }
        SearchOutcome::Unknown(_, why) => {
            return Ok(report(
                Standardness::Inconclusive,
                &format!("no mesh-comparison decided: {why}"),
            ));
        }
    };
    let top = c.filtration.stable_index().min(table.cap());
    let mut failures = Vec::new();
    let mut pairs = 0;
    for x in 0..c.len() {
        for y in 0..c.len() {
            let mut images = Vec::new();
            for n in 0..=top {
                images.extend(graded_images(c, functor, table, x, y, n)?);
            }
            let span = span_of(c, x, y, &images);
            if span.dim() != c.cache.hom(x, y).dim() {
                failures.push(format!("{} -> {}", c.name(x), c.name(y)));
            }
            pairs += 1;
        }
    }
    let (verdict, reason) = if failures.is_empty() {
        (
            Standardness::Standard,
            "generalized standard and mesh-comparable; the functor is full",
        )
    } else {
        (Standardness::Inconclusive, "graded images do not span every Hom space")
    };
    Ok(StandardnessReport {
        pairs_checked: pairs,
        fullness_failures: failures,
        ..report(verdict, reason)
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundRow {
    pub source: String,
    pub target: String,
    /// Least `m` with `rad^m = rad^∞` at the pair.
    pub m: usize,
    /// Longest nonzero composite of chosen morphisms along a path.
    pub longest_nonzero_path: Option<usize>,
    pub consistent: bool,
}

/// Compares the pairwise stabilization index with the longest nonzero
/// composite of chosen morphisms.
pub fn stabilization_bound_report<S: Scalar>(
    c: &ArComponent<S>,
    functor: &RiedtmannFunctor<S>,
    table: &GradedHomTable<S>,
    x: usize,
    y: usize,
) -> Result<BoundRow> {
    let m = c.filtration.pairwise_stable_index(x, y);
    let reach = (c.filtration.stable_index() + 1).min(table.cap());
    let mut longest = None;
    for n in 0..=reach {
        if table
            .paths(x, y, n)?
            .iter()
            .any(|p| !functor.evaluate_path(c, p).is_zero())
        {
            longest = Some(n);
        }
    }
    let consistent = match m {
        0 => longest.is_none(),
        m => longest == Some(m - 1),
    };
    Ok(BoundRow {
        source: c.name(x).to_string(),
        target: c.name(y).to_string(),
        m,
        longest_nonzero_path: longest,
        consistent,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Left,
    Right,
}

/// `h ∈ radⁿ ∖ radⁿ⁺¹` at `vertex` whose composite with `f` falls into
/// `radⁿ⁺²`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeWitness<S> {
    pub vertex: usize,
    pub n: usize,
    pub h: Morphism<S>,
}

/// Left (`side = Left`) or right degree of an irreducible `f: x -> y`.
/// Only modules of the component are tried as the auxiliary vertex.
pub fn degree<S: Scalar>(
    c: &ArComponent<S>,
    x: usize,
    y: usize,
    f: &Morphism<S>,
    side: Side,
) -> Result<(Depth, Option<DegreeWitness<S>>)> {
    f.check(c.rep(x), c.rep(y))?;
    let flat = f.flatten();
    if !c.filtration.rad_power(x, y, 1).contains(&flat) || c.filtration.rad_power(x, y, 2).contains(&flat) {
        return Err(Error::NotIrreducible);
    }
    let fl = &c.filtration;
    for n in 1..=fl.stable_index() {
        for z in 0..c.len() {
            // h runs over Hom(z, x) on the left, Hom(y, z) on the right.
            let (hs, he, cs, ce) = match side {
                Side::Left => (z, x, z, y),
                Side::Right => (y, z, x, z),
            };
            let reps = quotient_basis(fl.rad_power(hs, he, n), fl.rad_power(hs, he, n + 1))?;
            if reps.is_empty() {
                continue;
            }
            let hom = c.cache.hom(hs, he);
            let lower = fl.rad_power(cs, ce, n + 2);
            let cols: Vec<Vec<S>> = reps
                .iter()
                .map(|h| {
                    let h = hom.morphism(h);
                    let fh = match side {
                        Side::Left => f.after(&h),
                        Side::Right => h.after(f),
                    };
                    lower.reduce(&fh.flatten())
                })
                .collect();
            let ker = kernel_basis(&Matrix::from_columns(lower.ambient_dim(), &cols));
            if let Some(k) = ker.basis().first() {
                let terms: Vec<(S, &[S])> = k.iter().cloned().zip(reps.iter().map(Vec::as_slice)).collect();
                let h = hom.morphism(&linear_combination(hom.ambient(), &terms));
                return Ok((Depth::Finite(n), Some(DegreeWitness { vertex: z, n, h })));
            }
        }
    }
    Ok((Depth::Infinite, None))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeReport<S> {
    pub arrow: usize,
    pub left: Depth,
    pub right: Depth,
    pub left_witness: Option<DegreeWitness<S>>,
    pub right_witness: Option<DegreeWitness<S>>,
}

impl<S: Scalar> DegreeReport<S> {
    pub fn to_text(&self, c: &ArComponent<S>) -> DegreeText {
        let q = c.algebra.quiver();
        let w = |w: &Option<DegreeWitness<S>>| {
            w.as_ref().map(|w| WitnessText {
                vertex: c.name(w.vertex).to_string(),
                n: w.n,
                h: blocks_text(q, &w.h),
            })
        };
        DegreeText {
            arrow: c.tq.quiver().arrow(self.arrow).id.clone(),
            left_degree: self.left,
            right_degree: self.right,
            left_witness: w(&self.left_witness),
            right_witness: w(&self.right_witness),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct WitnessText {
    pub vertex: String,
    pub n: usize,
    pub h: BlocksText,
}

#[derive(Clone, Debug, Serialize)]
pub struct DegreeText {
    pub arrow: String,
    pub left_degree: Depth,
    pub right_degree: Depth,
    pub left_witness: Option<WitnessText>,
    pub right_witness: Option<WitnessText>,
}

/// Both degrees of the chosen morphism of `arrow`.
pub fn arrow_degrees<S: Scalar>(
    c: &ArComponent<S>,
    functor: &RiedtmannFunctor<S>,
    arrow: usize,
) -> Result<DegreeReport<S>> {
    let a = c.tq.quiver().arrow(arrow);
    let f = functor.chosen(arrow);
    let (left, left_witness) = degree(c, a.source, a.target, f, Side::Left)?;
    let (right, right_witness) = degree(c, a.source, a.target, f, Side::Right)?;
    Ok(DegreeReport {
        arrow,
        left,
        right,
        left_witness,
        right_witness,
    })
}

/// A path of chosen morphisms from `Ker f` (or to `Coker f`) whose
/// composite is nonzero and killed by `f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelWitness<S> {
    pub side: Side,
    pub arrow: usize,
    pub degree: usize,
    /// The vertex isomorphic to the kernel (left) or cokernel (right).
    pub vertex: usize,
    pub path: QPath,
    pub composite: Morphism<S>,
}

pub fn kernel_path_witness<S: Scalar>(
    c: &ArComponent<S>,
    functor: &RiedtmannFunctor<S>,
    table: &GradedHomTable<S>,
    arrow: usize,
    side: Side,
) -> Result<KernelWitness<S>> {
    let a = c.tq.quiver().arrow(arrow);
    let f = functor.chosen(arrow);
    let (d, _) = degree(c, a.source, a.target, f, side)?;
    let Depth::Finite(n) = d else {
        return Err(Error::Precondition(
            format!("{side:?} degree of {} is infinite", a.id).to_lowercase(),
        ));
    };
    let (module, what) = match side {
        Side::Left => (kernel(f, c.rep(a.source)).0, "kernel"),
        Side::Right => (cokernel(f, c.rep(a.target)).0, "cokernel"),
    };
    let Some(z) = c.locate(&module)? else {
        return Err(Error::KernelNotInComponent(format!("{what} of {}", a.id)));
    };
    let (from, to) = match side {
        Side::Left => (z, a.source),
        Side::Right => (a.target, z),
    };
    for p in table.paths(from, to, n)? {
        let g = functor.evaluate_path(c, p);
        let killed = match side {
            Side::Left => f.after(&g),
            Side::Right => g.after(f),
        };
        if !g.is_zero() && killed.is_zero() {
            return Ok(KernelWitness {
                side,
                arrow,
                degree: n,
                vertex: z,
                path: p.clone(),
                composite: g,
            });
        }
    }
    Err(Error::Internal(format!(
        "no chosen path of length {n} realizes the {what} of {}",
        a.id
    )))
}

/// A zero chain of chosen combinations that becomes nonzero once some
/// links are replaced by images of longer paths.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShortcutWitness<S> {
    pub vertices: Vec<usize>,
    /// The links `f_i`, with `f_n ⋯ f_1 = 0`.
    pub fs: Vec<Morphism<S>>,
    /// Replaced positions, 0-based.
    pub indices: Vec<usize>,
    /// `φ` for each replaced position, each in the span of images of paths
    /// of length at least two.
    pub phis: Vec<Morphism<S>>,
    /// `f_n ⋯ φ_{i_l} ⋯ φ_{i_1} ⋯ f_1`.
    pub replaced: Morphism<S>,
    /// Irreducible links `h_i = f_i + t φ_i` with nonzero composite in
    /// `rad^{n+1}`, when a scalar `t` achieving this was found.
    pub hs: Option<Vec<Morphism<S>>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShortcutSearch<S> {
    pub witness: Option<ShortcutWitness<S>>,
    /// Whether every combination was tried.
    pub exhaustive: bool,
    /// `rad^∞(X_0, X_n) ≠ 0`, in which case composites of irreducible maps
    /// may also vanish into the infinite radical.
    pub infinite_radical: bool,
}

/// Searches for shortcuts along `X_0 -> ⋯ -> X_n`. Links range over
/// combinations of the chosen morphisms between consecutive vertices with
/// coefficients from `values` (leading coefficient 1); replacements range
/// over images of graded basis elements of degree at least two, which is
/// exhaustive because the composite is multilinear in the replacements.
pub fn shortcut_witness<S: Scalar>(
    c: &ArComponent<S>,
    functor: &RiedtmannFunctor<S>,
    table: &GradedHomTable<S>,
    vertices: &[usize],
    values: &[S],
    full_field: bool,
) -> Result<ShortcutSearch<S>> {
    let q = c.tq.quiver();
    if vertices.is_empty() {
        return Err(Error::Precondition("empty chain of vertices".into()));
    }
    let (x0, xn) = (vertices[0], *vertices.last().unwrap());
    let infinite_radical = !c.filtration.rad_infty(x0, xn).is_zero();
    let mut links = Vec::new();
    let mut longer = Vec::new();
    let top = c.filtration.stable_index().min(table.cap());
    for w in vertices.windows(2) {
        let arrows = q.arrows_between(w[0], w[1]);
        if arrows.is_empty() {
            return Err(Error::Precondition(format!(
                "no arrow {} -> {}",
                c.name(w[0]),
                c.name(w[1])
            )));
        }
        let chosen: Vec<&Morphism<S>> = arrows.iter().map(|&a| functor.chosen(a)).collect();
        links.push(combinations(&chosen, values));
        let mut imgs = Vec::new();
        for n in 2..=top {
            imgs.extend(
                graded_images(c, functor, table, w[0], w[1], n)?
                    .into_iter()
                    .filter(|m| !m.is_zero()),
            );
        }
        longer.push(imgs);
    }
    let exhaustive = full_field || links.iter().all(|l| l.len() == 1);
    let none = ShortcutSearch {
        witness: None,
        exhaustive,
        infinite_radical,
    };
    let len = links.len();
    if len == 0 {
        return Ok(none);
    }
    let mut choice = vec![0usize; len];
    loop {
        let fs: Vec<Morphism<S>> = (0..len).map(|i| links[i][choice[i]].clone()).collect();
        if compose_all(&fs).is_zero() {
            if let Some(w) = replace(vertices, &fs, &longer, values) {
                return Ok(ShortcutSearch {
                    witness: Some(w),
                    ..none
                });
            }
        }
        let Some(i) = (0..len).find(|&i| choice[i] + 1 < links[i].len()) else {
            return Ok(none);
        };
        choice[i] += 1;
        choice[..i].iter_mut().for_each(|v| *v = 0);
    }
}

/// Nonzero combinations of `ms` whose first nonzero coefficient is 1.
fn combinations<S: Scalar>(ms: &[&Morphism<S>], values: &[S]) -> Vec<Morphism<S>> {
    let mut out = Vec::new();
    let k = ms.len();
    let palette: Vec<S> = std::iter::once(S::zero()).chain(values.iter().cloned()).collect();
    let mut idx = vec![0usize; k];
    loop {
        let lead = idx.iter().position(|&i| i != 0);
        if lead.is_some_and(|l| palette[idx[l]].is_one()) {
            let terms: Vec<(S, &Morphism<S>)> = idx
                .iter()
                .map(|&i| palette[i].clone())
                .zip(ms.iter().copied())
                .collect();
            out.push(Morphism::combination(
                &ms[0].source_dims(),
                &ms[0].target_dims(),
                &terms,
            ));
        }
        let Some(i) = (0..k).find(|&i| idx[i] + 1 < palette.len()) else {
            return out;
        };
        idx[i] += 1;
        idx[..i].iter_mut().for_each(|v| *v = 0);
    }
}

fn compose_all<S: Scalar>(fs: &[Morphism<S>]) -> Morphism<S> {
    let mut acc = fs[0].clone();
    for f in &fs[1..] {
        acc = f.after(&acc);
    }
    acc
}

fn replace<S: Scalar>(
    vertices: &[usize],
    fs: &[Morphism<S>],
    longer: &[Vec<Morphism<S>>],
    values: &[S],
) -> Option<ShortcutWitness<S>> {
    let len = fs.len();
    for mask in 1u64..(1 << len) {
        let indices: Vec<usize> = (0..len).filter(|i| mask >> i & 1 == 1).collect();
        if indices.iter().any(|&i| longer[i].is_empty()) {
            continue;
        }
        let mut pick = vec![0usize; indices.len()];
        loop {
            let mut links = fs.to_vec();
            for (j, &i) in indices.iter().enumerate() {
                links[i] = longer[i][pick[j]].clone();
            }
            let replaced = compose_all(&links);
            if !replaced.is_zero() {
                let phis: Vec<Morphism<S>> = indices.iter().zip(&pick).map(|(&i, &p)| longer[i][p].clone()).collect();
                let hs = scaled_links(fs, &indices, &phis, values);
                return Some(ShortcutWitness {
                    vertices: vertices.to_vec(),
                    fs: fs.to_vec(),
                    indices,
                    phis,
                    replaced,
                    hs,
                });
            }
            let j = (0..pick.len()).find(|&j| pick[j] + 1 < longer[indices[j]].len())?;
            pick[j] += 1;
            pick[..j].iter_mut().for_each(|v| *v = 0);
        }
    }
    None
}

/// `h_i = f_i + t φ_i`: the composite is a polynomial in `t` whose top
/// coefficient is the replaced composite, so some `t` among `|indices| + 1`
/// distinct values makes it nonzero.
fn scaled_links<S: Scalar>(
    fs: &[Morphism<S>],
    indices: &[usize],
    phis: &[Morphism<S>],
    values: &[S],
) -> Option<Vec<Morphism<S>>> {
    values.iter().find_map(|t| {
        let mut hs = fs.to_vec();
        for (&i, phi) in indices.iter().zip(phis) {
            hs[i] = hs[i].add(&phi.scale(t));
        }
        (!compose_all(&hs).is_zero()).then_some(hs)
    })
}

/// Everything the analyses say about one component, in a stable order.
#[derive(Clone, Debug, Serialize)]
pub struct ComponentReport {
    pub validation: ValidationCertificate,
    pub search: SearchSummary,
    pub theorem_b: Vec<BijectionRow>,
    pub standardness: StandardnessReport,
    pub degrees: Vec<DegreeText>,
    pub bounds: Vec<BoundRow>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchSummary {
    pub outcome: &'static str,
    pub stats: SearchStats,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

impl SearchSummary {
    pub fn of<S>(outcome: &SearchOutcome<S>) -> Self {
        let (stats, reason) = match outcome {
            SearchOutcome::Found(_, s) | SearchOutcome::NotMeshComparable(s) => (s.clone(), None),
            SearchOutcome::Unknown(s, why) => (s.clone(), Some(why.clone())),
        };
        SearchSummary {
            outcome: outcome.kind(),
            stats,
            reason,
        }
    }
}

/// Runs every analysis that the search outcome allows.
pub fn component_report<S: Scalar>(
    c: &ArComponent<S>,
    validation: ValidationCertificate,
    outcome: &SearchOutcome<S>,
    table: &GradedHomTable<S>,
) -> Result<ComponentReport> {
    let standardness = standardness_verdict(c, outcome, table)?;
    let (mut theorem_b, mut degrees, mut bounds) = (vec![], vec![], vec![]);
    if let Some(f) = outcome.functor() {
        theorem_b = theorem_b_table(c, f, table)?;
        for a in 0..c.tq.quiver().arrow_count() {
            degrees.push(arrow_degrees(c, f, a)?.to_text(c));
        }
        for x in 0..c.len() {
            for y in 0..c.len() {
                bounds.push(stabilization_bound_report(c, f, table, x, y)?);
            }
        }
    }
    Ok(ComponentReport {
        validation,
        search: SearchSummary::of(outcome),
        theorem_b,
        standardness,
        degrees,
        bounds,
    })
}
