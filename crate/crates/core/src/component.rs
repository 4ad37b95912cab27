//! Components of the Auslander-Reiten quiver given as data: a translation
//! quiver whose vertices carry representations. Nothing here computes AR
//! structure; the supplied structure is checked against the modules.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::format::{self, parse_matrix, AlgebraFile, BlocksText, ComponentFile, FORMAT_VERSION};
use crate::linalg::{axpy, quotient_basis, Matrix, Subspace};
use crate::module::{
    end_radical, find_isomorphism, kernel, Algebra, ComponentMap, HomCache, Morphism, RadicalFiltration, Relation,
    Representation,
};
use crate::quiver::{validate_translation_quiver, Quiver, TranslationQuiver, TranslationQuiverSpec};
use crate::scalar::{FieldSpec, Scalar};

/// Default bound on the number of radical powers computed.
pub const DEFAULT_CAP: usize = 64;

/// Random sink/source candidates tried after the echelon ones fail.
const RETRIES: usize = 16;

pub fn load_algebra<S: Scalar>(file: &AlgebraFile) -> Result<Arc<Algebra<S>>> {
    if file.field != S::field_spec() {
        return Err(Error::InvalidField(format!(
            "file is over {}, analysis over {}",
            file.field,
            S::field_spec()
        )));
    }
    let arrows = file.quiver.arrows.iter().enumerate().map(|(i, a)| {
        (
            a.id.clone().unwrap_or_else(|| format!("a{i}")),
            a.from.clone(),
            a.to.clone(),
        )
    });
    let q = Quiver::new(file.quiver.vertices.iter().cloned(), arrows)?;
    let mut relations = Vec::with_capacity(file.relations.len());
    for rel in &file.relations {
        let mut terms = Vec::with_capacity(rel.terms.len());
        for t in &rel.terms {
            let ids: Vec<&str> = t.path.iter().map(String::as_str).collect();
            terms.push((t.coef.parse::<S>()?, q.path(None, &ids)?));
        }
        relations.push(Relation { terms });
    }
    Ok(Arc::new(Algebra::new(q, relations)?))
}

/// A component as read from disk, before any AR check.
#[derive(Clone, Debug)]
pub struct LoadedComponent<S> {
    pub algebra: Arc<Algebra<S>>,
    pub spec: TranslationQuiverSpec,
    pub reps: Vec<Representation<S>>,
    /// sha256 of the algebra text, a newline, and the component text.
    pub input_hash: String,
}

impl<S: Scalar> LoadedComponent<S> {
    pub fn names(&self) -> &[String] {
        &self.spec.vertices
    }
}

/// Parses an algebra file and a component file. Every module is checked
/// against the relations of the algebra.
pub fn load_component<S: Scalar>(algebra_text: &str, component_text: &str) -> Result<LoadedComponent<S>> {
    let afile: AlgebraFile = format::from_json(algebra_text)?;
    let cfile: ComponentFile = format::from_json(component_text)?;
    for v in [afile.format_version, cfile.format_version] {
        if v != FORMAT_VERSION {
            return Err(Error::Parse(format!("unsupported format_version {v}")));
        }
    }
    let algebra = load_algebra::<S>(&afile)?;
    let q = algebra.quiver();
    let mut reps = Vec::with_capacity(cfile.modules.len());
    for m in &cfile.modules {
        let mut dims = vec![0; q.vertex_count()];
        for (v, &d) in &m.dims {
            dims[q.vertex(v)?] = d;
        }
        let mut given = BTreeMap::new();
        for (a, rows) in &m.maps {
            given.insert(q.arrow_by_id(a)?, rows);
        }
        let maps = q
            .arrows()
            .iter()
            .enumerate()
            .map(|(k, a)| {
                let (r, c) = (dims[a.target], dims[a.source]);
                match given.get(&k) {
                    Some(rows) => parse_matrix(rows, r, c, &format!("{}: map {}", m.id, a.id)),
                    None => Ok(Matrix::zeros(r, c)),
                }
            })
            .collect::<Result<Vec<_>>>()?;
        reps.push(Representation::new(algebra.clone(), dims, maps, &m.id)?);
    }
    let spec = TranslationQuiverSpec {
        vertices: cfile.modules.iter().map(|m| m.id.clone()).collect(),
        arrows: cfile.arrows,
        projectives: cfile.projectives,
        injectives: cfile.injectives,
        tau: cfile.tau,
        sigma: cfile.sigma,
    };
    let mut hasher = Sha256::new();
    hasher.update(algebra_text.as_bytes());
    hasher.update(b"\n");
    hasher.update(component_text.as_bytes());
    Ok(LoadedComponent {
        algebra,
        spec,
        reps,
        input_hash: hex::encode(hasher.finalize()),
    })
}

/// Parses blocks keyed by algebra vertex into a morphism `source -> target`.
pub fn parse_blocks<S: Scalar>(
    source: &Representation<S>,
    target: &Representation<S>,
    blocks: &BlocksText,
) -> Result<Morphism<S>> {
    let q = source.algebra().quiver();
    let mut out: Vec<Matrix<S>> = source
        .dims()
        .iter()
        .zip(target.dims())
        .map(|(&s, &t)| Matrix::zeros(t, s))
        .collect();
    for (v, rows) in blocks {
        let i = q.vertex(v)?;
        out[i] = parse_matrix(rows, target.dims()[i], source.dims()[i], &format!("block at {v}"))?;
    }
    Morphism::new(source, target, out)
}

pub fn blocks_text<S: Scalar>(q: &Quiver, f: &Morphism<S>) -> BlocksText {
    f.blocks
        .iter()
        .enumerate()
        .filter(|(_, b)| b.rows() > 0 && b.cols() > 0)
        .map(|(v, b)| (q.vertex_id(v).to_string(), format::matrix_text(b)))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub check: String,
    pub subject: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

impl Verdict {
    fn new(check: &str, subject: impl Into<String>, pass: bool, detail: impl Into<String>) -> Self {
        Verdict {
            check: check.into(),
            subject: subject.into(),
            pass,
            detail: detail.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationCertificate {
    pub format_version: u32,
    pub field: FieldSpec,
    pub seed: u64,
    pub input_hash: String,
    pub valid: bool,
    /// Irreducibility, almost-split and radical statements only quantify
    /// over the supplied modules.
    pub scope: String,
    pub verdicts: Vec<Verdict>,
}

impl ValidationCertificate {
    pub fn failures(&self) -> impl Iterator<Item = &Verdict> {
        self.verdicts.iter().filter(|v| !v.pass)
    }
}

/// A component whose AR structure passed validation.
#[derive(Clone, Debug)]
pub struct ArComponent<S> {
    pub algebra: Arc<Algebra<S>>,
    pub tq: TranslationQuiver,
    pub cache: HomCache<S>,
    /// Verified sink map at every vertex, components ordered by incoming
    /// arrow.
    pub sinks: Vec<ComponentMap<S>>,
    /// Verified source map at every vertex, components ordered by outgoing
    /// arrow.
    pub sources: Vec<ComponentMap<S>>,
    pub filtration: RadicalFiltration<S>,
    pub seed: u64,
    pub input_hash: String,
}

impl<S: Scalar> ArComponent<S> {
    pub fn len(&self) -> usize {
        self.tq.vertex_count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn name(&self, x: usize) -> &str {
        self.tq.quiver().vertex_id(x)
    }

    pub fn vertex(&self, id: &str) -> Result<usize> {
        self.tq.quiver().vertex(id)
    }

    pub fn rep(&self, x: usize) -> &Representation<S> {
        self.cache.rep(x)
    }

    /// The vertex whose module is isomorphic to `m`, if any.
    pub fn locate(&self, m: &Representation<S>) -> Result<Option<usize>> {
        for x in 0..self.len() {
            if is_isomorphic(self.rep(x), m, self.seed)? {
                return Ok(Some(x));
            }
        }
        Ok(None)
    }

    pub fn parse_morphism(&self, source: usize, target: usize, blocks: &BlocksText) -> Result<Morphism<S>> {
        parse_blocks(self.rep(source), self.rep(target), blocks)
    }

    /// Whether `rad^∞` vanishes at every pair.
    pub fn is_generalized_standard(&self) -> bool {
        (0..self.len()).all(|x| (0..self.len()).all(|y| self.filtration.rad_infty(x, y).is_zero()))
    }
}

/// Decides `M ≅ N`; see [`crate::module::find_isomorphism`].
pub fn is_isomorphic<S: Scalar>(m: &Representation<S>, n: &Representation<S>, seed: u64) -> Result<bool> {
    crate::module::is_isomorphic(m, n, seed)
}

/// Outcome of [`validate_component`]; the component is present exactly when
/// the certificate is valid.
#[derive(Clone, Debug)]
pub struct Validation<S> {
    pub certificate: ValidationCertificate,
    pub component: Option<ArComponent<S>>,
}

pub fn validate_component<S: Scalar>(c: &LoadedComponent<S>, seed: u64, cap: usize) -> Validation<S> {
    let mut v = Validator {
        c,
        seed,
        verdicts: Vec::new(),
    };
    let component = v.run(cap);
    let valid = v.verdicts.iter().all(|x| x.pass) && component.is_some();
    Validation {
        certificate: ValidationCertificate {
            format_version: FORMAT_VERSION,
            field: S::field_spec(),
            seed,
            input_hash: c.input_hash.clone(),
            valid,
            scope: "relative to supplied modules".into(),
            verdicts: v.verdicts,
        },
        component: if valid { component } else { None },
    }
}

struct Validator<'a, S> {
    c: &'a LoadedComponent<S>,
    seed: u64,
    verdicts: Vec<Verdict>,
}

impl<S: Scalar> Validator<'_, S> {
    fn push(&mut self, check: &str, subject: impl Into<String>, pass: bool, detail: impl Into<String>) {
        self.verdicts.push(Verdict::new(check, subject, pass, detail));
    }

    fn run(&mut self, cap: usize) -> Option<ArComponent<S>> {
        let names = self.c.names().to_vec();
        let report = validate_translation_quiver(&self.c.spec);
        if !report.is_valid() {
            for msg in report.violations {
                self.push("translation_quiver", "component", false, msg);
            }
            return None;
        }
        let tq = match TranslationQuiver::new(&self.c.spec) {
            Ok(tq) => tq,
            Err(e) => {
                self.push("translation_quiver", "component", false, e.to_string());
                return None;
            }
        };
        self.push(
            "translation_quiver",
            "component",
            true,
            format!("{} meshes", tq.meshes().len()),
        );

        let reps = &self.c.reps;
        let mut local = true;
        for (x, m) in reps.iter().enumerate() {
            match end_radical(m, &names[x]) {
                Ok(rad) => self.push("end_local", &names[x], true, format!("dim rad End = {}", rad.dim())),
                Err(e) => {
                    local = false;
                    self.push("end_local", &names[x], false, e.to_string());
                }
            }
        }
        if !local {
            return None;
        }
        self.check_distinct(&names);
        let cache = match HomCache::new(reps.clone(), &names) {
            Ok(c) => c,
            Err(e) => {
                self.push("end_local", "component", false, e.to_string());
                return None;
            }
        };

        let rad2 = approximate_rad2(&cache);
        let q = tq.quiver();
        let n = tq.vertex_count();
        let mut counts_ok = true;
        for y in 0..n {
            for x in 0..n {
                let arrows = q.arrows_between(y, x).len();
                let irr = cache.rad(y, x).dim() - rad2[y][x].dim();
                if arrows != irr {
                    counts_ok = false;
                    self.push(
                        "arrow_count",
                        format!("{} -> {}", names[y], names[x]),
                        false,
                        format!("{arrows} arrows but dim irr = {irr}"),
                    );
                } else if arrows > 0 {
                    self.push(
                        "arrow_count",
                        format!("{} -> {}", names[y], names[x]),
                        true,
                        format!("{arrows}"),
                    );
                }
            }
        }

        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let mut sinks = Vec::with_capacity(n);
        let mut sources = Vec::with_capacity(n);
        for x in 0..n {
            let incoming: Vec<usize> = q.incoming(x).iter().map(|&a| q.arrow(a).source).collect();
            let sink = find_map(&cache, &rad2, x, &incoming, Side::Sink, &mut rng);
            self.push_map("sink_map", &names[x], &sink);
            sinks.push(sink.ok());
            let outgoing: Vec<usize> = q.outgoing(x).iter().map(|&a| q.arrow(a).target).collect();
            let source = find_map(&cache, &rad2, x, &outgoing, Side::Source, &mut rng);
            self.push_map("source_map", &names[x], &source);
            sources.push(source.ok());
        }

        for x in 0..n {
            let Some(sink) = &sinks[x] else { continue };
            let target = cache.rep(x);
            let g = sink.as_row(target.dims());
            let surjective = g.is_surjective();
            let marked = tq.is_projective(x);
            self.push(
                "projective",
                &names[x],
                marked != surjective,
                match (marked, surjective) {
                    (true, true) => "marked projective but the sink map is onto",
                    (false, false) => "sink map is not onto but vertex is not marked projective",
                    _ => "",
                },
            );
            if let Some(t) = tq.tau(x) {
                self.check_tau(&cache, sink, x, t, &names);
            }
        }
        for x in 0..n {
            let Some(source) = &sources[x] else { continue };
            let f = source.as_column(cache.rep(x).dims());
            let injective = f.is_injective();
            let marked = tq.is_injective(x);
            self.push(
                "injective",
                &names[x],
                marked != injective,
                match (marked, injective) {
                    (true, true) => "marked injective but the source map is mono",
                    (false, false) => "source map is not mono but vertex is not marked injective",
                    _ => "",
                },
            );
        }

        if !counts_ok || sinks.iter().any(Option::is_none) || sources.iter().any(Option::is_none) {
            return None;
        }
        let sinks: Vec<ComponentMap<S>> = sinks.into_iter().flatten().collect();
        let sources: Vec<ComponentMap<S>> = sources.into_iter().flatten().collect();
        let filtration = match RadicalFiltration::build(&cache, &sinks, cap) {
            Ok(f) => {
                self.push("stabilization", "component", true, format!("m = {}", f.stable_index()));
                f
            }
            Err(e) => {
                self.push("stabilization", "component", false, e.to_string());
                return None;
            }
        };
        Some(ArComponent {
            algebra: self.c.algebra.clone(),
            tq,
            cache,
            sinks,
            sources,
            filtration,
            seed: self.seed,
            input_hash: self.c.input_hash.clone(),
        })
    }

    fn check_distinct(&mut self, names: &[String]) {
        let reps = &self.c.reps;
        for x in 0..reps.len() {
            for y in x + 1..reps.len() {
                if reps[x].dims() != reps[y].dims() {
                    continue;
                }
                let subject = format!("{} ~ {}", names[x], names[y]);
                match find_isomorphism(&reps[x], &reps[y], self.seed) {
                    Ok(None) => {}
                    Ok(Some(_)) => self.push("modules_distinct", subject, false, "isomorphic modules"),
                    Err(e) => self.push("modules_distinct", subject, false, e.to_string()),
                }
            }
        }
    }

    fn push_map(&mut self, check: &str, name: &str, found: &std::result::Result<ComponentMap<S>, String>) {
        match found {
            Ok(_) => self.push(check, name, true, ""),
            Err(detail) => self.push(check, name, false, detail.clone()),
        }
    }

    fn check_tau(&mut self, cache: &HomCache<S>, sink: &ComponentMap<S>, x: usize, t: usize, names: &[String]) {
        let subject = &names[x];
        let middle = match sink.direct_sum(cache, x) {
            Ok(m) => m,
            Err(e) => return self.push("tau", subject, false, e.to_string()),
        };
        let g = sink.as_row(cache.rep(x).dims());
        if !g.is_surjective() {
            return self.push("tau", subject, false, "sink map is not onto");
        }
        let (ker, _) = kernel(&g, &middle);
        match find_isomorphism(&ker, cache.rep(t), self.seed) {
            Ok(Some(_)) => self.push("tau", subject, true, format!("kernel of the sink map is {}", names[t])),
            Ok(None) => self.push(
                "tau",
                subject,
                false,
                format!("kernel of the sink map is not {}", names[t]),
            ),
            Err(e) => self.push("tau", subject, false, e.to_string()),
        }
    }
}

/// `Σ_Z rad(Z, X) ∘ rad(Y, Z)` over the supplied modules, at every pair.
pub fn approximate_rad2<S: Scalar>(cache: &HomCache<S>) -> Vec<Vec<Subspace<S>>> {
    let n = cache.len();
    let rads: Vec<Vec<Vec<Morphism<S>>>> = (0..n)
        .map(|y| (0..n).map(|x| cache.hom(y, x).morphisms_of(cache.rad(y, x))).collect())
        .collect();
    (0..n)
        .map(|y| {
            (0..n)
                .map(|x| {
                    let gens: Vec<Vec<S>> = (0..n)
                        .flat_map(|z| {
                            let (first, second) = (&rads[y][z], &rads[z][x]);
                            first
                                .iter()
                                .flat_map(move |f| second.iter().map(move |g| g.after(f).flatten()))
                        })
                        .collect();
                    Subspace::span(cache.hom(y, x).ambient(), gens)
                })
                .collect()
        })
        .collect()
}

#[derive(Clone, Copy)]
enum Side {
    Sink,
    Source,
}

/// Assembles a sink (or source) map at `x` from irreducible representatives,
/// one per arrow, and verifies it. Echelon representatives come first, then
/// seeded random ones.
fn find_map<S: Scalar>(
    cache: &HomCache<S>,
    rad2: &[Vec<Subspace<S>>],
    x: usize,
    others: &[usize],
    side: Side,
    rng: &mut ChaCha8Rng,
) -> std::result::Result<ComponentMap<S>, String> {
    let pair = |o: usize| match side {
        Side::Sink => (o, x),
        Side::Source => (x, o),
    };
    let mut reps: BTreeMap<usize, Vec<Vec<S>>> = BTreeMap::new();
    for &o in others {
        if reps.contains_key(&o) {
            continue;
        }
        let (a, b) = pair(o);
        let q = quotient_basis(cache.rad(a, b), &rad2[a][b]).map_err(|e| e.to_string())?;
        let needed = others.iter().filter(|&&z| z == o).count();
        if q.len() < needed {
            return Err(format!("{needed} arrows but only {} irreducible directions", q.len()));
        }
        reps.insert(o, q);
    }
    let assemble = |pick: &dyn Fn(usize, usize) -> Vec<S>| {
        let mut seen: BTreeMap<usize, usize> = BTreeMap::new();
        let components = others
            .iter()
            .map(|&o| {
                let k = seen.entry(o).or_insert(0);
                let (a, b) = pair(o);
                let f = cache.hom(a, b).morphism(&pick(o, *k));
                *k += 1;
                f
            })
            .collect();
        ComponentMap {
            summands: others.to_vec(),
            components,
        }
    };
    let check = |m: &ComponentMap<S>| match side {
        Side::Sink => cache.verify_sink_map(x, m),
        Side::Source => cache.verify_source_map(x, m),
    };
    let first = assemble(&|o, k| reps[&o][k].clone());
    let report = check(&first);
    if report.passed() {
        return Ok(first);
    }
    for _ in 0..RETRIES {
        let mut coeffs: BTreeMap<(usize, usize), Vec<S>> = BTreeMap::new();
        for &o in others {
            let k = coeffs.keys().filter(|(z, _)| *z == o).count();
            let (a, b) = pair(o);
            let mut v = vec![S::zero(); cache.hom(a, b).ambient()];
            for q in &reps[&o] {
                axpy(&mut v, &S::sample(rng), q);
            }
            for r in rad2[a][b].basis() {
                axpy(&mut v, &S::sample(rng), r);
            }
            coeffs.insert((o, k), v);
        }
        let candidate = assemble(&|o, k| coeffs[&(o, k)].clone());
        if check(&candidate).passed() {
            return Ok(candidate);
        }
    }
    let mut detail = Vec::new();
    if !report.not_radical.is_empty() {
        detail.push("a component is not radical".to_string());
    }
    if !report.not_factoring.is_empty() {
        detail.push(format!("{} radical maps do not factor", report.not_factoring.len()));
    }
    if !report.minimal {
        detail.push("not minimal".to_string());
    }
    Err(detail.join("; "))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Fp, Rational};

    const A3_ALG: &str = include_str!("../../../fixtures/a3.algebra.json");
    const A3_COMP: &str = include_str!("../../../fixtures/a3.component.json");
    const EX3_ALG: &str = include_str!("../../../fixtures/ex3.algebra.json");
    const EX3_COMP: &str = include_str!("../../../fixtures/ex3.component.json");

    fn failing(cert: &ValidationCertificate) -> Vec<String> {
        cert.failures()
            .map(|v| format!("{} {}: {}", v.check, v.subject, v.detail))
            .collect()
    }

    #[test]
    fn a3_fixture_validates() {
        let c = load_component::<Rational>(A3_ALG, A3_COMP).unwrap();
        let v = validate_component(&c, 7, DEFAULT_CAP);
        assert!(v.certificate.valid, "{:?}", failing(&v.certificate));
        let tau = v
            .certificate
            .verdicts
            .iter()
            .find(|x| x.check == "tau" && x.subject == "S2")
            .unwrap();
        assert_eq!(tau.detail, "kernel of the sink map is P1");
        let comp = v.component.unwrap();
        assert!(comp.is_generalized_standard());
        assert_eq!(v.certificate.input_hash.len(), 64);
    }

    #[test]
    fn example_with_relation_validates() {
        let c = load_component::<Rational>(EX3_ALG, EX3_COMP).unwrap();
        let v = validate_component(&c, 7, DEFAULT_CAP);
        assert!(v.certificate.valid, "{:?}", failing(&v.certificate));
        assert_eq!(
            v.certificate
                .verdicts
                .iter()
                .filter(|x| x.check == "tau" && x.pass)
                .count(),
            6
        );
    }

    #[test]
    fn field_mismatch_is_rejected() {
        assert!(matches!(
            load_component::<Fp<3>>(A3_ALG, A3_COMP),
            Err(Error::InvalidField(_))
        ));
    }

    #[test]
    fn relation_violation_names_the_module() {
        let bad = EX3_COMP.replace(
            r#""maps": {"beta": [[1]], "gamma": [[1]]}"#,
            r#""maps": {"alpha": [[1]], "beta": [[1]], "gamma": [[1]]}"#,
        );
        match load_component::<Rational>(EX3_ALG, &bad) {
            Err(Error::RelationViolated { module, relation }) => {
                assert_eq!(module, "3/12");
                assert_eq!(relation, 0);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn missing_tau_is_reported() {
        let bad = A3_COMP.replace("{\"of\": \"S2\", \"is\": \"P1\"},\n", "");
        let c = load_component::<Rational>(A3_ALG, &bad).unwrap();
        let v = validate_component(&c, 0, DEFAULT_CAP);
        assert!(!v.certificate.valid);
        assert!(v
            .certificate
            .failures()
            .any(|f| f.check == "translation_quiver" && f.detail == "tau missing at S2"));
    }

    #[test]
    fn wrong_arrow_count_is_reported() {
        let comp = r#"{
  "modules": [
    {"id": "P1", "dims": {"1": 1}},
    {"id": "P2", "dims": {"1": 1, "2": 1}, "maps": {"a": [[1]]}}
  ],
  "arrows": [],
  "projectives": ["P1", "P2"],
  "injectives": ["P1", "P2"]
}"#;
        let c = load_component::<Rational>(A3_ALG, comp).unwrap();
        let v = validate_component(&c, 0, DEFAULT_CAP);
        assert!(!v.certificate.valid);
        assert!(v
            .certificate
            .failures()
            .any(|f| f.check == "arrow_count" && f.subject == "P1 -> P2"));
    }

    #[test]
    fn validation_is_deterministic() {
        let c = load_component::<Fp<3>>(
            &A3_ALG.replace(r#"{"kind": "rational"}"#, r#"{"kind": "prime", "p": 3}"#),
            A3_COMP,
        )
        .unwrap();
        let a = validate_component(&c, 11, DEFAULT_CAP).certificate;
        let b = validate_component(&c, 11, DEFAULT_CAP).certificate;
        assert!(a.valid);
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    }
}
