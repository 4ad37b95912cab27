//! Mesh-comparisons: an irreducible morphism chosen for every arrow so that
//! the chosen maps at each vertex form sink and source maps and every mesh
//! sums to zero.
//!
//! The search knits mesh by mesh. A vertex whose incoming arrows are still
//! open and whose mesh has all its translated legs fixed turns the mesh
//! relation into a linear system for the open arrows; projective vertices
//! and vertices on dependency cycles get their arrows guessed and their
//! meshes checked once every leg is fixed.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::component::{blocks_text, ArComponent, Verdict};
use crate::error::{Error, Result};
use crate::format::{FunctorFile, FORMAT_VERSION};
use crate::linalg::{kernel_basis, linear_combination, quotient_basis, Matrix, Subspace};
use crate::mesh::{GradedHomTable, MeshClass};
use crate::module::{ComponentMap, Morphism};
use crate::quiver::{Mesh, QPath};
use crate::scalar::Scalar;

/// Default bound on the number of candidate assignments tried.
pub const DEFAULT_BUDGET: usize = 100_000;

/// An irreducible morphism for every arrow of a component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RiedtmannFunctor<S> {
    /// Indexed by arrow of the component.
    pub chosen: Vec<Morphism<S>>,
    pub seed: u64,
    pub search_level: u8,
}

impl<S: Scalar> RiedtmannFunctor<S> {
    pub fn chosen(&self, arrow: usize) -> &Morphism<S> {
        &self.chosen[arrow]
    }

    /// Composite of chosen morphisms along a path, first arrow first.
    pub fn evaluate_path(&self, c: &ArComponent<S>, path: &QPath) -> Morphism<S> {
        let mut f = Morphism::identity(c.rep(path.start).dims());
        for &a in &path.arrows {
            f = self.chosen[a].after(&f);
        }
        f
    }

    /// `Σ λ_i F(p_i)` for parallel paths `p_i`.
    pub fn evaluate(&self, c: &ArComponent<S>, terms: &[(S, QPath)]) -> Result<Morphism<S>> {
        let q = c.tq.quiver();
        let Some((_, first)) = terms.first() else {
            return Err(Error::Precondition("empty linear combination has no endpoints".into()));
        };
        let ends = (first.start, first.end(q));
        let mut acc = Morphism::zero(c.rep(ends.0).dims(), c.rep(ends.1).dims());
        for (l, p) in terms {
            QPath::new(q, p.start, p.arrows.clone())?;
            if (p.start, p.end(q)) != ends {
                return Err(Error::EndpointMismatch(format!(
                    "path {} does not run {} -> {}",
                    p.display(q),
                    c.name(ends.0),
                    c.name(ends.1)
                )));
            }
            acc = acc.add(&self.evaluate_path(c, p).scale(l));
        }
        Ok(acc)
    }

    /// The image of a homogeneous class of the mesh category.
    pub fn evaluate_class(
        &self,
        c: &ArComponent<S>,
        table: &GradedHomTable<S>,
        class: &MeshClass<S>,
    ) -> Result<Morphism<S>> {
        let paths = table.paths(class.source, class.target, class.degree)?;
        let mut acc = Morphism::zero(c.rep(class.source).dims(), c.rep(class.target).dims());
        for (l, p) in class.coords.iter().zip(paths) {
            if !l.is_zero() {
                acc = acc.add(&self.evaluate_path(c, p).scale(l));
            }
        }
        Ok(acc)
    }

    pub fn to_file(&self, c: &ArComponent<S>) -> FunctorFile {
        let q = c.tq.quiver();
        let alg = c.algebra.quiver();
        FunctorFile {
            format_version: FORMAT_VERSION,
            field: S::field_spec(),
            chosen: q
                .arrows()
                .iter()
                .zip(&self.chosen)
                .map(|(a, f)| (a.id.clone(), blocks_text(alg, f)))
                .collect(),
            seed: self.seed,
            search_level: self.search_level,
        }
    }

    /// Reads a functor file; every arrow needs a morphism.
    pub fn from_file(c: &ArComponent<S>, file: &FunctorFile) -> Result<Self> {
        if file.field != S::field_spec() {
            return Err(Error::InvalidField(format!("functor is over {}", file.field)));
        }
        let chosen = parse_arrow_map(c, &file.chosen)?;
        let q = c.tq.quiver();
        let chosen = chosen
            .into_iter()
            .enumerate()
            .map(|(a, f)| f.ok_or_else(|| Error::Parse(format!("no morphism for arrow {}", q.arrow(a).id))))
            .collect::<Result<Vec<_>>>()?;
        Ok(RiedtmannFunctor {
            chosen,
            seed: file.seed,
            search_level: file.search_level,
        })
    }
}

/// Parses morphisms keyed by component arrow id.
pub fn parse_arrow_map<S: Scalar>(
    c: &ArComponent<S>,
    map: &BTreeMap<String, crate::format::BlocksText>,
) -> Result<Vec<Option<Morphism<S>>>> {
    let q = c.tq.quiver();
    let mut out = vec![None; q.arrow_count()];
    for (id, blocks) in map {
        let a = q.arrow_by_id(id)?;
        let arrow = q.arrow(a);
        out[a] = Some(c.parse_morphism(arrow.source, arrow.target, blocks)?);
    }
    Ok(out)
}

/// Results of [`verify_mesh_comparison`], one verdict per arrow, vertex or
/// mesh.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FunctorReport {
    pub verdicts: Vec<Verdict>,
}

impl FunctorReport {
    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Verdict> {
        self.verdicts.iter().filter(|v| !v.pass)
    }
}

fn verdict(check: &str, subject: &str, pass: bool, detail: &str) -> Verdict {
    Verdict {
        check: check.into(),
        subject: subject.into(),
        pass,
        detail: detail.into(),
    }
}

fn sink_of<S: Scalar>(c: &ArComponent<S>, chosen: &[Morphism<S>], x: usize) -> ComponentMap<S> {
    let q = c.tq.quiver();
    let arrows = q.incoming(x);
    ComponentMap {
        summands: arrows.iter().map(|&a| q.arrow(a).source).collect(),
        components: arrows.iter().map(|&a| chosen[a].clone()).collect(),
    }
}

fn source_of<S: Scalar>(c: &ArComponent<S>, chosen: &[Morphism<S>], x: usize) -> ComponentMap<S> {
    let q = c.tq.quiver();
    let arrows = q.outgoing(x);
    ComponentMap {
        summands: arrows.iter().map(|&a| q.arrow(a).target).collect(),
        components: arrows.iter().map(|&a| chosen[a].clone()).collect(),
    }
}

fn mesh_sum<S: Scalar>(c: &ArComponent<S>, chosen: &[Morphism<S>], mesh: &Mesh) -> Morphism<S> {
    let mut acc = Morphism::zero(c.rep(mesh.start).dims(), c.rep(mesh.end).dims());
    for &(s, a) in &mesh.legs {
        acc = acc.add(&chosen[a].after(&chosen[s]));
    }
    acc
}

/// Checks every condition of a mesh-comparison: irreducible chosen maps,
/// source and sink maps at every vertex, and an exact mesh sequence with
/// zero composite at every mesh.
pub fn verify_mesh_comparison<S: Scalar>(c: &ArComponent<S>, f: &RiedtmannFunctor<S>) -> FunctorReport {
    let q = c.tq.quiver();
    let mut verdicts = Vec::new();
    if f.chosen.len() != q.arrow_count() {
        verdicts.push(verdict(
            "arrows",
            "functor",
            false,
            &format!("{} morphisms for {} arrows", f.chosen.len(), q.arrow_count()),
        ));
        return FunctorReport { verdicts };
    }
    let mut shapes_ok = true;
    for (a, g) in q.arrows().iter().zip(&f.chosen) {
        let subject = format!("{} ({} -> {})", a.id, c.name(a.source), c.name(a.target));
        if let Err(e) = g.check(c.rep(a.source), c.rep(a.target)) {
            shapes_ok = false;
            verdicts.push(verdict("irreducible", &subject, false, &e.to_string()));
            continue;
        }
        let flat = g.flatten();
        let (pass, detail) = if !c.cache.rad(a.source, a.target).contains(&flat) {
            (false, "not radical")
        } else if c.filtration.rad_power(a.source, a.target, 2).contains(&flat) {
            (false, "lies in rad^2")
        } else {
            (true, "")
        };
        verdicts.push(verdict("irreducible", &subject, pass, detail));
    }
    if !shapes_ok {
        return FunctorReport { verdicts };
    }
    for x in 0..c.len() {
        let report = c.cache.verify_source_map(x, &source_of(c, &f.chosen, x));
        verdicts.push(verdict("source_map", c.name(x), report.passed(), &map_detail(&report)));
        let report = c.cache.verify_sink_map(x, &sink_of(c, &f.chosen, x));
        verdicts.push(verdict("sink_map", c.name(x), report.passed(), &map_detail(&report)));
    }
    for mesh in c.tq.meshes() {
        let name = c.name(mesh.end);
        let sum = mesh_sum(c, &f.chosen, &mesh);
        verdicts.push(verdict(
            "mesh_relation",
            name,
            sum.is_zero(),
            if sum.is_zero() { "" } else { "nonzero sum" },
        ));
        let (pass, detail) = mesh_exact(c, &f.chosen, &mesh);
        verdicts.push(verdict("mesh_exact", name, pass, detail));
    }
    FunctorReport { verdicts }
}

fn map_detail(r: &crate::module::MapReport) -> String {
    let mut parts = Vec::new();
    if !r.not_radical.is_empty() {
        parts.push("a component is not radical");
    }
    if !r.not_factoring.is_empty() {
        parts.push("some radical map does not factor");
    }
    if !r.minimal {
        parts.push("not minimal");
    }
    parts.join("; ")
}

/// `0 -> τx -> ⊕ y -> x -> 0` built from the legs is exact.
fn mesh_exact<S: Scalar>(c: &ArComponent<S>, chosen: &[Morphism<S>], mesh: &Mesh) -> (bool, &'static str) {
    let q = c.tq.quiver();
    let left: Vec<&Morphism<S>> = mesh.legs.iter().map(|&(s, _)| &chosen[s]).collect();
    let right: Vec<&Morphism<S>> = mesh.legs.iter().map(|&(_, a)| &chosen[a]).collect();
    let f = Morphism::column(&left);
    let g = Morphism::row(&right);
    if !f.is_injective() {
        return (false, "left map is not mono");
    }
    if !g.is_surjective() {
        return (false, "right map is not onto");
    }
    if !g.after(&f).is_zero() {
        return (false, "composite is nonzero");
    }
    let dims = |x: usize| c.rep(x).dims().to_vec();
    let (a, b) = (dims(mesh.start), dims(mesh.end));
    let mut mid = vec![0; a.len()];
    for &(_, arrow) in &mesh.legs {
        for (m, d) in mid.iter_mut().zip(dims(q.arrow(arrow).source)) {
            *m += d;
        }
    }
    if (0..a.len()).all(|v| a[v] + b[v] == mid[v]) {
        (true, "")
    } else {
        (false, "not exact in the middle")
    }
}

/// Search settings.
#[derive(Clone, Debug)]
pub struct SearchConfig<S> {
    /// Highest level tried: 1 uses irreducible representatives only, 2 adds
    /// corrections from `rad^2`.
    pub max_level: u8,
    /// Nonzero values tried for each free parameter. `None` means the whole
    /// field for prime fields and `{-2, -1, 1, 2}` for the rationals.
    pub grid: Option<Vec<S>>,
    pub budget: usize,
    /// Arrows whose chosen morphism is prescribed.
    pub pins: BTreeMap<usize, Morphism<S>>,
}

impl<S: Scalar> Default for SearchConfig<S> {
    fn default() -> Self {
        SearchConfig {
            max_level: 2,
            grid: None,
            budget: DEFAULT_BUDGET,
            pins: BTreeMap::new(),
        }
    }
}

impl<S: Scalar> SearchConfig<S> {
    /// Nonzero values tried per parameter, and whether they exhaust the
    /// field.
    fn values(&self) -> (Vec<S>, bool) {
        if let Some(g) = &self.grid {
            let mut g: Vec<S> = g.iter().filter(|x| !x.is_zero()).cloned().collect();
            g.dedup();
            let full = S::elements().is_some_and(|e| e.len() == g.len() + 1);
            return (g, full);
        }
        match S::elements() {
            Some(e) => (e.into_iter().filter(|x| !x.is_zero()).collect(), true),
            None => ([1, -1, 2, -2].into_iter().map(S::from_i64).collect(), false),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    pub nodes: usize,
    pub level: u8,
    /// Vertices whose incoming arrows were guessed rather than solved for.
    pub guessed: Vec<String>,
}

#[derive(Clone, Debug)]
pub enum SearchOutcome<S> {
    Found(RiedtmannFunctor<S>, SearchStats),
    /// Complete enumeration over a prime field found nothing.
    NotMeshComparable(SearchStats),
    Unknown(SearchStats, String),
}

impl<S> SearchOutcome<S> {
    pub fn kind(&self) -> &'static str {
        match self {
            SearchOutcome::Found(..) => "found",
            SearchOutcome::NotMeshComparable(_) => "not_mesh_comparable",
            SearchOutcome::Unknown(..) => "unknown",
        }
    }

    pub fn functor(&self) -> Option<&RiedtmannFunctor<S>> {
        match self {
            SearchOutcome::Found(f, _) => Some(f),
            _ => None,
        }
    }
}

/// Looks for a mesh-comparison on a validated component.
pub fn find_mesh_comparison<S: Scalar>(c: &ArComponent<S>, cfg: &SearchConfig<S>) -> Result<SearchOutcome<S>> {
    let q = c.tq.quiver();
    for (&a, f) in &cfg.pins {
        let arrow = q.arrow(a);
        f.check(c.rep(arrow.source), c.rep(arrow.target))?;
    }
    let (values, full_field) = cfg.values();
    let (order, guessed) = processing_order(c);
    let guessed_names: Vec<String> = (0..c.len())
        .filter(|&x| guessed[x])
        .map(|x| c.name(x).to_string())
        .collect();
    let mut nodes = 0;
    let mut last_level = 1;
    for level in 1..=cfg.max_level.clamp(1, 2) {
        last_level = level;
        let params = Params::new(c, level)?;
        let mut s = Search {
            c,
            params: &params,
            values: &values,
            order: &order,
            guessed: &guessed,
            chosen: vec![None; q.arrow_count()],
            nodes,
            budget: cfg.budget,
            exhausted_budget: false,
            meshes: c.tq.meshes(),
        };
        for (&a, f) in &cfg.pins {
            s.chosen[a] = Some(f.clone());
        }
        let found = s.run(0);
        nodes = s.nodes;
        let stats = SearchStats {
            nodes,
            level,
            guessed: guessed_names.clone(),
        };
        if let Some(chosen) = found {
            return Ok(SearchOutcome::Found(
                RiedtmannFunctor {
                    chosen,
                    seed: c.seed,
                    search_level: level,
                },
                stats,
            ));
        }
        if s.exhausted_budget {
            return Ok(SearchOutcome::Unknown(
                stats,
                format!("budget of {} candidates exhausted", cfg.budget),
            ));
        }
    }
    let stats = SearchStats {
        nodes,
        level: last_level,
        guessed: guessed_names,
    };
    if last_level < 2 {
        return Ok(SearchOutcome::Unknown(
            stats,
            "level 1 exhausted; rad^2 corrections not searched".into(),
        ));
    }
    if !cfg.pins.is_empty() {
        return Ok(SearchOutcome::Unknown(
            stats,
            "no extension of the pinned morphisms".into(),
        ));
    }
    if !full_field {
        return Ok(SearchOutcome::Unknown(stats, "scalar grid exhausted".into()));
    }
    Ok(SearchOutcome::NotMeshComparable(stats))
}

/// Vertices in knitting order. A non-projective vertex waits for its
/// in-neighbours; on a cycle the first waiting vertex is guessed.
fn processing_order<S: Scalar>(c: &ArComponent<S>) -> (Vec<usize>, Vec<bool>) {
    let q = c.tq.quiver();
    let n = c.len();
    let deps: Vec<Vec<usize>> = (0..n)
        .map(|x| {
            if c.tq.is_projective(x) {
                Vec::new()
            } else {
                let mut d: Vec<usize> = q.incoming(x).iter().map(|&a| q.arrow(a).source).collect();
                d.sort_unstable();
                d.dedup();
                d
            }
        })
        .collect();
    let mut done = vec![false; n];
    let mut guessed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    while order.len() < n {
        let next = (0..n)
            .find(|&x| !done[x] && deps[x].iter().all(|&y| done[y]))
            .unwrap_or_else(|| {
                let x = (0..n).find(|&x| !done[x]).expect("some vertex is left");
                guessed[x] = true;
                x
            });
        done[next] = true;
        order.push(next);
    }
    (order, guessed)
}

/// Parameter directions per arrow: irreducible representatives first, then
/// (at level 2) a basis of `rad^2`.
struct Params<S> {
    dirs: Vec<Vec<Morphism<S>>>,
}

impl<S: Scalar> Params<S> {
    fn new(c: &ArComponent<S>, level: u8) -> Result<Self> {
        let q = c.tq.quiver();
        let mut dirs = Vec::with_capacity(q.arrow_count());
        for a in q.arrows() {
            let (y, x) = (a.source, a.target);
            let hom = c.cache.hom(y, x);
            let rad2 = c.filtration.rad_power(y, x, 2);
            let reps = quotient_basis(c.cache.rad(y, x), rad2)?;
            let mut d: Vec<Morphism<S>> = reps.iter().map(|v| hom.morphism(v)).collect();
            if level >= 2 {
                d.extend(rad2.basis().iter().map(|v| hom.morphism(v)));
            }
            dirs.push(d);
        }
        Ok(Params { dirs })
    }

    fn morphism(&self, c: &ArComponent<S>, a: usize, coeffs: &[S]) -> Morphism<S> {
        let arrow = c.tq.quiver().arrow(a);
        let terms: Vec<(S, &Morphism<S>)> = coeffs.iter().cloned().zip(&self.dirs[a]).collect();
        Morphism::combination(c.rep(arrow.source).dims(), c.rep(arrow.target).dims(), &terms)
    }
}

struct Search<'a, S> {
    c: &'a ArComponent<S>,
    params: &'a Params<S>,
    values: &'a [S],
    order: &'a [usize],
    guessed: &'a [bool],
    chosen: Vec<Option<Morphism<S>>>,
    nodes: usize,
    budget: usize,
    exhausted_budget: bool,
    meshes: Vec<Mesh>,
}

impl<'a, S: Scalar> Search<'a, S> {
    fn run(&mut self, step: usize) -> Option<Vec<Morphism<S>>> {
        if step == self.order.len() {
            let chosen: Vec<Morphism<S>> = self
                .chosen
                .iter()
                .map(|f| f.clone().expect("all arrows fixed"))
                .collect();
            let f = RiedtmannFunctor {
                chosen,
                seed: 0,
                search_level: 0,
            };
            return verify_mesh_comparison(self.c, &f).passed().then_some(f.chosen);
        }
        let x = self.order[step];
        let q = self.c.tq.quiver();
        let open: Vec<usize> = q
            .incoming(x)
            .iter()
            .copied()
            .filter(|&a| self.chosen[a].is_none())
            .collect();
        let candidates = self.candidates(x, &open)?;
        for coeffs in candidates {
            if self.nodes >= self.budget {
                self.exhausted_budget = true;
                return None;
            }
            self.nodes += 1;
            let mut off = 0;
            for &a in &open {
                let k = self.params.dirs[a].len();
                self.chosen[a] = Some(self.params.morphism(self.c, a, &coeffs[off..off + k]));
                off += k;
            }
            if self.irreducible_at(x) && self.meshes_hold(&open) {
                if let Some(found) = self.run(step + 1) {
                    return Some(found);
                }
                if self.exhausted_budget {
                    return None;
                }
            }
        }
        for &a in &open {
            self.chosen[a] = None;
        }
        None
    }

    /// Parameter vectors for the open arrows into `x`: solutions of the
    /// mesh relation when it is linear in them, otherwise everything.
    fn candidates(&self, x: usize, open: &[usize]) -> Option<Box<dyn Iterator<Item = Vec<S>> + 'a>> {
        let values: &'a [S] = self.values;
        let dim: usize = open.iter().map(|&a| self.params.dirs[a].len()).sum();
        if open.is_empty() {
            return Some(Box::new(std::iter::once(Vec::new())));
        }
        let mesh = self.c.tq.mesh_at(x);
        let linear = !self.guessed[x]
            && mesh
                .as_ref()
                .is_some_and(|m| m.legs.iter().all(|&(s, _)| self.chosen[s].is_some()));
        if !linear {
            return Some(Box::new(Vectors::new(values, dim)));
        }
        let mesh = mesh.expect("checked above");
        // Σ_open f_α(c)∘f_σα = -Σ_fixed f_α∘f_σα
        let (s, e) = (self.c.rep(mesh.start).dims(), self.c.rep(mesh.end).dims());
        let ambient: usize = s.iter().zip(e).map(|(a, b)| a * b).sum();
        let mut columns = Vec::with_capacity(dim);
        let mut rhs = Morphism::zero(s, e);
        for &(sa, a) in &mesh.legs {
            let left = self.chosen[sa].as_ref().expect("fixed leg");
            if let Some(fa) = &self.chosen[a] {
                rhs = rhs.sub(&fa.after(left));
            }
        }
        for &a in open {
            let sa = mesh.legs.iter().find(|&&(_, b)| b == a).map(|&(s, _)| s).expect("leg");
            let left = self.chosen[sa].as_ref().expect("fixed leg");
            for d in &self.params.dirs[a] {
                columns.push(d.after(left).flatten());
            }
        }
        let system = Matrix::from_columns(ambient, &columns);
        let particular = system.solve(&rhs.flatten())?;
        let kernel = kernel_basis(&system);
        let base: Vec<Vec<S>> = kernel.basis().to_vec();
        Some(Box::new(Vectors::new(values, base.len()).map(move |t| {
            let terms: Vec<(S, &[S])> = t.into_iter().zip(base.iter().map(Vec::as_slice)).collect();
            let mut v = linear_combination(dim, &terms);
            for (vi, pi) in v.iter_mut().zip(&particular) {
                *vi = vi.clone() + pi.clone();
            }
            v
        })))
    }

    /// Chosen maps into `x` are irreducible, and parallel ones independent
    /// modulo `rad^2`.
    fn irreducible_at(&self, x: usize) -> bool {
        let q = self.c.tq.quiver();
        let mut by_source: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for &a in q.incoming(x) {
            by_source.entry(q.arrow(a).source).or_default().push(a);
        }
        by_source.into_iter().all(|(y, arrows)| {
            let mut span = self.c.filtration.rad_power(y, x, 2).clone();
            arrows.iter().all(|&a| {
                let f = self.chosen[a].as_ref().expect("arrow fixed").flatten();
                self.c.cache.rad(y, x).contains(&f) && span.insert(f)
            })
        })
    }

    /// Every mesh through a newly fixed arrow whose legs are all fixed sums
    /// to zero.
    fn meshes_hold(&self, fresh: &[usize]) -> bool {
        self.meshes.iter().all(|m| {
            let touches = m.legs.iter().any(|&(s, a)| fresh.contains(&s) || fresh.contains(&a));
            let fixed = m
                .legs
                .iter()
                .all(|&(s, a)| self.chosen[s].is_some() && self.chosen[a].is_some());
            if !touches || !fixed {
                return true;
            }
            let mut acc = Morphism::zero(self.c.rep(m.start).dims(), self.c.rep(m.end).dims());
            for &(s, a) in &m.legs {
                let (fs, fa) = (self.chosen[s].as_ref(), self.chosen[a].as_ref());
                acc = acc.add(&fa.expect("fixed").after(fs.expect("fixed")));
            }
            acc.is_zero()
        })
    }
}

/// Nonzero-first enumeration of vectors over `{0} ∪ values`: fewer nonzero
/// entries first, then lexicographic.
struct Vectors<'a, S> {
    values: &'a [S],
    dim: usize,
    k: usize,
    positions: Vec<usize>,
    digits: Vec<usize>,
    done: bool,
}

impl<'a, S: Scalar> Vectors<'a, S> {
    fn new(values: &'a [S], dim: usize) -> Self {
        Vectors {
            values,
            dim,
            k: 0,
            positions: Vec::new(),
            digits: Vec::new(),
            done: false,
        }
    }

    fn advance(&mut self) {
        // next digit assignment
        for d in self.digits.iter_mut().rev() {
            *d += 1;
            if *d < self.values.len() {
                return;
            }
            *d = 0;
        }
        // next position subset
        let k = self.k;
        let mut i = k;
        while i > 0 {
            i -= 1;
            if self.positions[i] < self.dim - k + i {
                self.positions[i] += 1;
                for j in i + 1..k {
                    self.positions[j] = self.positions[j - 1] + 1;
                }
                return;
            }
        }
        // next subset size
        self.k += 1;
        if self.k > self.dim || self.values.is_empty() {
            self.done = true;
            return;
        }
        self.positions = (0..self.k).collect();
        self.digits = vec![0; self.k];
    }
}

impl<S: Scalar> Iterator for Vectors<'_, S> {
    type Item = Vec<S>;

    fn next(&mut self) -> Option<Vec<S>> {
        if self.done {
            return None;
        }
        let mut v = vec![S::zero(); self.dim];
        for (p, d) in self.positions.iter().zip(&self.digits) {
            v[*p] = self.values[*d].clone();
        }
        self.advance();
        Some(v)
    }
}

/// One row of the graded comparison between the mesh category and the
/// radical layers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BijectionRow {
    pub source: String,
    pub target: String,
    pub degree: usize,
    pub mesh_dim: usize,
    pub rad_dim: usize,
    /// Images of the graded basis lie in `radⁿ` and are independent modulo
    /// `radⁿ⁺¹`.
    pub independent: bool,
    pub holds: bool,
}

/// Whether `F` maps a basis of the degree-`n` slice at `(x, y)` onto a
/// basis of `radⁿ/radⁿ⁺¹(x, y)`.
pub fn verify_graded_bijection<S: Scalar>(
    c: &ArComponent<S>,
    f: &RiedtmannFunctor<S>,
    table: &GradedHomTable<S>,
    x: usize,
    y: usize,
    n: usize,
) -> Result<BijectionRow> {
    let images = graded_images(c, f, table, x, y, n)?;
    let upper = c.filtration.rad_power(x, y, n);
    let lower = c.filtration.rad_power(x, y, n + 1);
    let mut span = lower.clone();
    let independent = images.iter().all(|g| {
        let v = g.flatten();
        upper.contains(&v) && span.insert(v)
    });
    let mesh_dim = images.len();
    let rad_dim = c.filtration.layer_dim(x, y, n);
    Ok(BijectionRow {
        source: c.name(x).to_string(),
        target: c.name(y).to_string(),
        degree: n,
        mesh_dim,
        rad_dim,
        independent,
        holds: independent && mesh_dim == rad_dim,
    })
}

/// `F` applied to the graded basis of the degree-`n` slice at `(x, y)`.
pub fn graded_images<S: Scalar>(
    c: &ArComponent<S>,
    f: &RiedtmannFunctor<S>,
    table: &GradedHomTable<S>,
    x: usize,
    y: usize,
    n: usize,
) -> Result<Vec<Morphism<S>>> {
    table
        .graded_hom_basis(x, y, n)?
        .iter()
        .map(|b| f.evaluate_class(c, table, b))
        .collect()
}

/// Rows for every ordered pair and every degree up to the stabilization
/// index.
pub fn theorem_b_table<S: Scalar>(
    c: &ArComponent<S>,
    f: &RiedtmannFunctor<S>,
    table: &GradedHomTable<S>,
) -> Result<Vec<BijectionRow>> {
    let m = c.filtration.stable_index();
    let mut rows = Vec::new();
    for x in 0..c.len() {
        for y in 0..c.len() {
            for n in 0..=m.min(table.cap()) {
                rows.push(verify_graded_bijection(c, f, table, x, y, n)?);
            }
        }
    }
    Ok(rows)
}

/// A mesh table deep enough for every degree below stabilization.
pub fn table_for<S: Scalar>(c: &ArComponent<S>) -> GradedHomTable<S> {
    GradedHomTable::build(&c.tq, c.filtration.stable_index() + 1)
}

/// Subspace spanned by a list of morphisms in `Hom(x, y)`.
pub fn span_of<S: Scalar>(c: &ArComponent<S>, x: usize, y: usize, fs: &[Morphism<S>]) -> Subspace<S> {
    Subspace::span(
        c.cache.hom(x, y).ambient(),
        fs.iter().map(Morphism::flatten).collect::<Vec<_>>(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testing::*;

    /// The paper-style choice on A3: natural maps with `-q`.
    pub(crate) fn a3_paper_choice(c: &ArComponent<Q>, q_sign: i64) -> RiedtmannFunctor<Q> {
        let by_arrow = [
            ("u", "P1", "P2", vec![("1", vec![vec![1]])]),
            ("i", "P2", "P3", vec![("1", vec![vec![1]]), ("2", vec![vec![1]])]),
            ("p", "P2", "S2", vec![("2", vec![vec![1]])]),
            ("j", "S2", "I2", vec![("2", vec![vec![1]])]),
            (
                "q",
                "P3",
                "I2",
                vec![("2", vec![vec![q_sign]]), ("3", vec![vec![q_sign]])],
            ),
            ("v", "I2", "I3", vec![("3", vec![vec![1]])]),
        ];
        let q = c.tq.quiver();
        let mut chosen = vec![None; q.arrow_count()];
        for (id, from, to, b) in by_arrow {
            chosen[q.arrow_by_id(id).unwrap()] = Some(blocks(c, from, to, &b));
        }
        RiedtmannFunctor {
            chosen: chosen.into_iter().map(Option::unwrap).collect(),
            seed: 0,
            search_level: 1,
        }
    }

    fn failing(r: &FunctorReport) -> Vec<(String, String)> {
        r.failures().map(|v| (v.check.clone(), v.subject.clone())).collect()
    }

    #[test]
    fn paper_choice_on_a3_verifies() {
        let c = a3_component();
        let f = a3_paper_choice(&c, -1);
        assert!(verify_mesh_comparison(&c, &f).passed());
    }

    #[test]
    fn flipped_sign_breaks_the_mesh_at_i2() {
        let c = a3_component();
        let f = a3_paper_choice(&c, 1);
        let r = verify_mesh_comparison(&c, &f);
        assert!(failing(&r).contains(&("mesh_relation".into(), "I2".into())));
        assert!(!failing(&r).iter().any(|(check, _)| check == "irreducible"));
    }

    #[test]
    fn zero_on_an_arrow_is_not_irreducible() {
        let c = a3_component();
        let mut f = a3_paper_choice(&c, -1);
        let u = c.tq.quiver().arrow_by_id("u").unwrap();
        f.chosen[u] = Morphism::zero(&[1, 0, 0], &[1, 1, 0]);
        let r = verify_mesh_comparison(&c, &f);
        assert!(failing(&r).contains(&("irreducible".into(), "u (P1 -> P2)".into())));
    }

    #[test]
    fn search_finds_a_functor_on_a3() {
        let c = a3_component();
        let out = find_mesh_comparison(&c, &SearchConfig::default()).unwrap();
        let f = out.functor().expect("found");
        assert!(verify_mesh_comparison(&c, f).passed());
        let jp = f.evaluate(&c, &[(Q::from_i64(1), path(&c, &["p", "j"]))]).unwrap();
        let qi = f.evaluate(&c, &[(Q::from_i64(1), path(&c, &["i", "q"]))]).unwrap();
        assert!(!jp.is_zero());
        assert!(jp.add(&qi).is_zero());
    }

    #[test]
    fn search_finds_a_functor_with_a_relation() {
        let c = ex3_component();
        let out = find_mesh_comparison(&c, &SearchConfig::default()).unwrap();
        let f = out.functor().expect("found");
        assert!(verify_mesh_comparison(&c, f).passed());
        if let SearchOutcome::Found(_, stats) = out {
            assert!(stats.guessed.is_empty());
        }
    }

    #[test]
    fn pinned_natural_maps_extend() {
        let c = ex3_component();
        let q = c.tq.quiver();
        let pins = [
            (
                "f",
                "2/1",
                "23/12",
                vec![("1", vec![vec![1]]), ("2", vec![vec![1], vec![0]])],
            ),
            ("g", "23/12", "3/2", vec![("2", vec![vec![0, 1]]), ("3", vec![vec![1]])]),
            (
                "phi1",
                "23/12",
                "23/1",
                vec![("1", vec![vec![1]]), ("2", vec![vec![1, 0]]), ("3", vec![vec![1]])],
            ),
            ("phi2", "23/1", "2", vec![("2", vec![vec![1]])]),
            ("phi3", "2", "3/12", vec![("2", vec![vec![1]])]),
            (
                "phi4",
                "3/12",
                "23/12",
                vec![
                    ("1", vec![vec![1]]),
                    ("2", vec![vec![0], vec![1]]),
                    ("3", vec![vec![1]]),
                ],
            ),
        ];
        let mut cfg = SearchConfig::default();
        for (id, from, to, b) in pins {
            cfg.pins.insert(q.arrow_by_id(id).unwrap(), blocks(&c, from, to, &b));
        }
        let out = find_mesh_comparison(&c, &cfg).unwrap();
        let f = out.functor().expect("found");
        for (&a, m) in &cfg.pins {
            assert_eq!(f.chosen(a), m);
        }
        assert!(verify_mesh_comparison(&c, f).passed());
    }

    #[test]
    fn single_vertex_needs_no_arrows() {
        let comp = r#"{"modules": [{"id": "S2", "dims": {"2": 1}}], "arrows": [],
            "projectives": ["S2"], "injectives": ["S2"]}"#;
        let c = validated(A3_ALG, comp);
        let out = find_mesh_comparison(&c, &SearchConfig::default()).unwrap();
        assert!(out.functor().unwrap().chosen.is_empty());
    }

    #[test]
    fn evaluation() {
        let c = a3_component();
        let f = a3_paper_choice(&c, -1);
        let p2 = c.vertex("P2").unwrap();
        assert_eq!(f.evaluate_path(&c, &QPath::trivial(p2)), Morphism::identity(&[1, 1, 0]));
        let mesh = [
            (Q::from_i64(1), path(&c, &["p", "j"])),
            (Q::from_i64(1), path(&c, &["i", "q"])),
        ];
        assert!(f.evaluate(&c, &mesh).unwrap().is_zero());
        let bad = [
            (Q::from_i64(1), path(&c, &["p", "j"])),
            (Q::from_i64(1), path(&c, &["i"])),
        ];
        assert!(matches!(f.evaluate(&c, &bad), Err(Error::EndpointMismatch(_))));
    }

    #[test]
    fn graded_bijection_rows() {
        let c = a3_component();
        let f = a3_paper_choice(&c, -1);
        let table = GradedHomTable::build(&c.tq, 6);
        let (p1, p2, i2, i3) = (
            c.vertex("P1").unwrap(),
            c.vertex("P2").unwrap(),
            c.vertex("I2").unwrap(),
            c.vertex("I3").unwrap(),
        );
        let row = verify_graded_bijection(&c, &f, &table, p2, i2, 2).unwrap();
        assert_eq!((row.mesh_dim, row.rad_dim, row.holds), (1, 1, true));
        let row = verify_graded_bijection(&c, &f, &table, p1, i3, 4).unwrap();
        assert_eq!((row.mesh_dim, row.rad_dim, row.holds), (0, 0, true));
        assert!(theorem_b_table(&c, &f, &table).unwrap().iter().all(|r| r.holds));
    }

    #[test]
    fn functor_files_round_trip() {
        let c = ex3_component();
        let out = find_mesh_comparison(&c, &SearchConfig::default()).unwrap();
        let f = out.functor().unwrap();
        let text = serde_json::to_string(&f.to_file(&c)).unwrap();
        let back = RiedtmannFunctor::from_file(&c, &crate::format::from_json(&text).unwrap()).unwrap();
        assert_eq!(&back, f);
    }

    #[test]
    fn vectors_enumerate_by_support() {
        let vals = [Q::from_i64(1), Q::from_i64(2)];
        let all: Vec<Vec<Q>> = Vectors::new(&vals, 2).collect();
        assert_eq!(all.len(), 9);
        assert!(all[0].iter().all(num_traits::Zero::is_zero));
        assert_eq!(all[1], vec![Q::from_i64(1), Q::from_i64(0)]);
        assert_eq!(all.iter().collect::<std::collections::HashSet<_>>().len(), 9);
        assert_eq!(Vectors::new(&vals, 0).count(), 1);
    }
}
