//! Quivers, paths and translation quivers.
//!
//! Paths are stored in traversal order: the first arrow walked is the first
//! entry. Composition of morphisms along a path applies the first arrow first.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::ops::RangeInclusive;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub id: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Clone, Debug)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    vertex_index: HashMap<String, usize>,
    arrow_index: HashMap<String, usize>,
    outgoing: Vec<Vec<usize>>,
    incoming: Vec<Vec<usize>>,
}

impl Quiver {
    /// `arrows` are `(id, source, target)` triples of string ids.
    pub fn new<V, A>(vertices: V, arrows: A) -> Result<Self>
    where
        V: IntoIterator,
        V::Item: Into<String>,
        A: IntoIterator<Item = (String, String, String)>,
    {
        let vertices: Vec<String> = vertices.into_iter().map(Into::into).collect();
        let mut vertex_index = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if vertex_index.insert(v.clone(), i).is_some() {
                return Err(Error::InvalidQuiver(format!("duplicate vertex {v}")));
            }
        }
        let mut q = Quiver {
            outgoing: vec![Vec::new(); vertices.len()],
            incoming: vec![Vec::new(); vertices.len()],
            vertices,
            arrows: Vec::new(),
            vertex_index,
            arrow_index: HashMap::new(),
        };
        for (id, from, to) in arrows {
            let source = q.vertex(&from).map_err(|_| dangling(&id, &from))?;
            let target = q.vertex(&to).map_err(|_| dangling(&id, &to))?;
            if q.arrow_index.insert(id.clone(), q.arrows.len()).is_some() {
                return Err(Error::InvalidQuiver(format!("duplicate arrow {id}")));
            }
            q.outgoing[source].push(q.arrows.len());
            q.incoming[target].push(q.arrows.len());
            q.arrows.push(Arrow { id, source, target });
        }
        Ok(q)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn vertex_id(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn arrow(&self, a: usize) -> &Arrow {
        &self.arrows[a]
    }

    pub fn vertex(&self, id: &str) -> Result<usize> {
        self.vertex_index
            .get(id)
            .copied()
            .ok_or_else(|| Error::UnknownId(id.to_string()))
    }

    pub fn arrow_by_id(&self, id: &str) -> Result<usize> {
        self.arrow_index
            .get(id)
            .copied()
            .ok_or_else(|| Error::UnknownId(id.to_string()))
    }

    pub fn outgoing(&self, v: usize) -> &[usize] {
        &self.outgoing[v]
    }

    pub fn incoming(&self, v: usize) -> &[usize] {
        &self.incoming[v]
    }

    /// Arrows `x -> y`, in declaration order.
    pub fn arrows_between(&self, x: usize, y: usize) -> Vec<usize> {
        self.outgoing[x]
            .iter()
            .copied()
            .filter(|&a| self.arrows[a].target == y)
            .collect()
    }

    /// A topological order of the vertices, or `None` if there is an oriented
    /// cycle.
    pub fn topological_order(&self) -> Option<Vec<usize>> {
        let mut indeg: Vec<usize> = self.incoming.iter().map(Vec::len).collect();
        let mut queue: VecDeque<usize> = (0..self.vertex_count()).filter(|&v| indeg[v] == 0).collect();
        let mut order = Vec::with_capacity(self.vertex_count());
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &a in &self.outgoing[v] {
                let t = self.arrows[a].target;
                indeg[t] -= 1;
                if indeg[t] == 0 {
                    queue.push_back(t);
                }
            }
        }
        (order.len() == self.vertex_count()).then_some(order)
    }

    pub fn is_acyclic(&self) -> bool {
        self.topological_order().is_some()
    }

    /// Connected and acyclic as an undirected graph.
    pub fn is_tree(&self) -> bool {
        let n = self.vertex_count();
        if n == 0 || self.arrow_count() + 1 != n {
            return false;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &a in self.outgoing[v].iter().chain(&self.incoming[v]) {
                let arrow = &self.arrows[a];
                let w = if arrow.source == v { arrow.target } else { arrow.source };
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Builds a path from arrow ids; `start` is required for trivial paths.
    pub fn path(&self, start: Option<&str>, arrow_ids: &[&str]) -> Result<QPath> {
        let arrows = arrow_ids
            .iter()
            .map(|id| {
                self.arrow_by_id(id)
                    .map_err(|_| Error::PathNotInQuiver(format!("unknown arrow {id}")))
            })
            .collect::<Result<Vec<_>>>()?;
        let start = match (start, arrows.first()) {
            (Some(s), _) => self.vertex(s)?,
            (None, Some(&a)) => self.arrows[a].source,
            (None, None) => {
                return Err(Error::PathNotInQuiver("trivial path needs a vertex".into()));
            }
        };
        QPath::new(self, start, arrows)
    }
}

fn dangling(arrow: &str, vertex: &str) -> Error {
    Error::InvalidQuiver(format!("arrow {arrow} has dangling endpoint {vertex}"))
}

/// A path in a quiver, stored in traversal order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QPath {
    pub start: usize,
    pub arrows: Vec<usize>,
}

impl QPath {
    pub fn new(q: &Quiver, start: usize, arrows: Vec<usize>) -> Result<Self> {
        let mut at = start;
        for &a in &arrows {
            let arrow = q
                .arrows
                .get(a)
                .ok_or_else(|| Error::PathNotInQuiver(format!("arrow index {a}")))?;
            if arrow.source != at {
                return Err(Error::PathNotInQuiver(format!(
                    "arrow {} starts at {}, not {}",
                    arrow.id,
                    q.vertex_id(arrow.source),
                    q.vertex_id(at)
                )));
            }
            at = arrow.target;
        }
        Ok(QPath { start, arrows })
    }

    pub fn trivial(v: usize) -> Self {
        QPath {
            start: v,
            arrows: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn end(&self, q: &Quiver) -> usize {
        self.arrows.last().map_or(self.start, |&a| q.arrow(a).target)
    }

    /// Vertices visited, `start` first.
    pub fn vertices(&self, q: &Quiver) -> Vec<usize> {
        let mut out = vec![self.start];
        out.extend(self.arrows.iter().map(|&a| q.arrow(a).target));
        out
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &QPath) -> QPath {
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&next.arrows);
        QPath {
            start: self.start,
            arrows,
        }
    }

    pub fn display<'a>(&'a self, q: &'a Quiver) -> impl fmt::Display + 'a {
        PathDisplay { path: self, quiver: q }
    }

    pub fn arrow_ids(&self, q: &Quiver) -> Vec<String> {
        self.arrows.iter().map(|&a| q.arrow(a).id.clone()).collect()
    }
}

struct PathDisplay<'a> {
    path: &'a QPath,
    quiver: &'a Quiver,
}

impl fmt::Display for PathDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.path.is_empty() {
            return write!(f, "e[{}]", self.quiver.vertex_id(self.path.start));
        }
        write!(f, "{}", self.path.arrow_ids(self.quiver).join(","))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub id: Option<String>,
    pub from: String,
    pub to: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TauSpec {
    pub of: String,
    pub is: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SigmaSpec {
    pub at: String,
    pub arrow_in: String,
    pub arrow_out: String,
}

/// Serialized form of a translation quiver.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TranslationQuiverSpec {
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowSpec>,
    #[serde(default)]
    pub projectives: Vec<String>,
    #[serde(default)]
    pub injectives: Vec<String>,
    #[serde(default)]
    pub tau: Vec<TauSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub sigma: Vec<SigmaSpec>,
}

impl TranslationQuiverSpec {
    /// Arrow ids, generating `a<i>` for anonymous arrows.
    pub fn arrow_ids(&self) -> Vec<String> {
        self.arrows
            .iter()
            .enumerate()
            .map(|(i, a)| a.id.clone().unwrap_or_else(|| format!("a{i}")))
            .collect()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<String>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks every translation-quiver axiom and lists all violations.
pub fn validate_translation_quiver(spec: &TranslationQuiverSpec) -> ValidationReport {
    match check_spec(spec) {
        Ok(_) => ValidationReport::default(),
        Err(violations) => ValidationReport { violations },
    }
}

struct Checked {
    quiver: Quiver,
    projective: Vec<bool>,
    injective: Vec<bool>,
    tau: Vec<Option<usize>>,
    sigma: HashMap<usize, usize>,
}

fn check_spec(spec: &TranslationQuiverSpec) -> std::result::Result<Checked, Vec<String>> {
    let mut v = Vec::new();
    let mut index = HashMap::new();
    for (i, x) in spec.vertices.iter().enumerate() {
        if index.insert(x.as_str(), i).is_some() {
            v.push(format!("duplicate vertex {x}"));
        }
    }
    let ids = spec.arrow_ids();
    let mut seen_ids = BTreeSet::new();
    let mut good_arrows = Vec::new();
    for (id, a) in ids.iter().zip(&spec.arrows) {
        if !seen_ids.insert(id.as_str()) {
            v.push(format!("duplicate arrow {id}"));
            continue;
        }
        let mut ok = true;
        for end in [&a.from, &a.to] {
            if !index.contains_key(end.as_str()) {
                v.push(format!("arrow {id} has dangling endpoint {end}"));
                ok = false;
            }
        }
        if a.from == a.to {
            v.push(format!("loop {id} at {}", a.from));
            ok = false;
        }
        if ok {
            good_arrows.push((id.clone(), a.from.clone(), a.to.clone()));
        }
    }
    let mut unique_vertices = spec.vertices.clone();
    let mut dedup = BTreeSet::new();
    unique_vertices.retain(|x| dedup.insert(x.clone()));
    let quiver = match Quiver::new(unique_vertices, good_arrows) {
        Ok(q) => q,
        Err(e) => {
            v.push(e.to_string());
            return Err(v);
        }
    };
    let n = quiver.vertex_count();
    let mark = |list: &[String], what: &str, v: &mut Vec<String>| {
        let mut flags = vec![false; n];
        for x in list {
            match quiver.vertex(x) {
                Ok(i) => flags[i] = true,
                Err(_) => v.push(format!("{what} marker on unknown vertex {x}")),
            }
        }
        flags
    };
    let projective = mark(&spec.projectives, "projective", &mut v);
    let injective = mark(&spec.injectives, "injective", &mut v);

    let mut tau = vec![None; n];
    let mut tau_inv: Vec<Option<usize>> = vec![None; n];
    for t in &spec.tau {
        let (Ok(x), Ok(y)) = (quiver.vertex(&t.of), quiver.vertex(&t.is)) else {
            v.push(format!("tau entry {} -> {} names an unknown vertex", t.of, t.is));
            continue;
        };
        if projective[x] {
            v.push(format!("tau defined at projective {}", t.of));
        }
        if injective[y] {
            v.push(format!("tau image {} of {} is injective", t.is, t.of));
        }
        if tau[x].is_some() {
            v.push(format!("tau defined twice at {}", t.of));
            continue;
        }
        if let Some(prev) = tau_inv[y] {
            v.push(format!(
                "tau not injective: {} and {} both map to {}",
                quiver.vertex_id(prev),
                t.of,
                t.is
            ));
        }
        tau[x] = Some(y);
        tau_inv[y] = Some(x);
    }
    for x in 0..n {
        if !projective[x] && tau[x].is_none() {
            v.push(format!("tau missing at {}", quiver.vertex_id(x)));
        }
        if !injective[x] && tau_inv[x].is_none() {
            v.push(format!("non-injective {} is not a tau image", quiver.vertex_id(x)));
        }
    }

    let mut explicit: BTreeMap<usize, Vec<&SigmaSpec>> = BTreeMap::new();
    for s in &spec.sigma {
        match quiver.vertex(&s.at) {
            Ok(x) => explicit.entry(x).or_default().push(s),
            Err(_) => v.push(format!("sigma entry at unknown vertex {}", s.at)),
        }
    }
    let mut sigma = HashMap::new();
    for x in 0..n {
        let (false, Some(tx)) = (projective[x], tau[x]) else {
            continue;
        };
        let name = quiver.vertex_id(x);
        let ins = quiver.incoming(x);
        if ins.len() != quiver.outgoing(tx).len() {
            v.push(format!(
                "arrow count mismatch at {name}: {} in, {} out of tau",
                ins.len(),
                quiver.outgoing(tx).len()
            ));
        }
        let mut local: HashMap<usize, usize> = HashMap::new();
        if let Some(entries) = explicit.get(&x) {
            for s in entries {
                let (Ok(a), Ok(b)) = (quiver.arrow_by_id(&s.arrow_in), quiver.arrow_by_id(&s.arrow_out)) else {
                    v.push(format!("sigma at {name} names an unknown arrow"));
                    continue;
                };
                let (ai, bi) = (quiver.arrow(a), quiver.arrow(b));
                if ai.target != x {
                    v.push(format!("sigma at {name}: {} does not end at {name}", ai.id));
                    continue;
                }
                if bi.source != tx || bi.target != ai.source {
                    v.push(format!(
                        "sigma at {name}: {} does not run from tau({name}) to {}",
                        bi.id,
                        quiver.vertex_id(ai.source)
                    ));
                }
                if local.insert(a, b).is_some() {
                    v.push(format!("sigma defined twice on {} at {name}", ai.id));
                }
            }
        } else {
            for &a in ins {
                let y = quiver.arrow(a).source;
                let ins_from_y = quiver.arrows_between(y, x);
                let outs_to_y = quiver.arrows_between(tx, y);
                if ins_from_y.len() > 1 || outs_to_y.len() > 1 {
                    v.push(format!("sigma must be supplied at {name}: parallel arrows"));
                    break;
                }
                match outs_to_y.first() {
                    Some(&b) => {
                        local.insert(a, b);
                    }
                    None => v.push(format!(
                        "no arrow from tau({name}) to {} for the mesh at {name}",
                        quiver.vertex_id(y)
                    )),
                }
            }
        }
        let images: BTreeSet<usize> = local.values().copied().collect();
        if images.len() < local.len() {
            v.push(format!("sigma not injective at {name}"));
        }
        for &a in ins {
            if !local.contains_key(&a) {
                v.push(format!("sigma undefined on {} at {name}", quiver.arrow(a).id));
            }
        }
        for &b in quiver.outgoing(tx) {
            if !images.contains(&b) && images.len() == local.len() {
                v.push(format!("sigma not surjective at {name}: misses {}", quiver.arrow(b).id));
            }
        }
        sigma.extend(local);
    }

    if v.is_empty() {
        Ok(Checked {
            quiver,
            projective,
            injective,
            tau,
            sigma,
        })
    } else {
        Err(v)
    }
}

/// The arrows ending at a non-projective vertex together with their
/// translates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mesh {
    pub end: usize,
    pub start: usize,
    /// `(sigma(alpha), alpha)` pairs; `sigma(alpha)` runs `start -> y`,
    /// `alpha` runs `y -> end`.
    pub legs: Vec<(usize, usize)>,
}

impl Mesh {
    /// The mesh relation as paths in traversal order, each with coefficient 1.
    pub fn relation_paths(&self) -> Vec<QPath> {
        self.legs
            .iter()
            .map(|&(s, a)| QPath {
                start: self.start,
                arrows: vec![s, a],
            })
            .collect()
    }
}

/// A validated translation quiver.
#[derive(Clone, Debug)]
pub struct TranslationQuiver {
    quiver: Quiver,
    projective: Vec<bool>,
    injective: Vec<bool>,
    tau: Vec<Option<usize>>,
    tau_inv: Vec<Option<usize>>,
    sigma: HashMap<usize, usize>,
}

impl TranslationQuiver {
    pub fn new(spec: &TranslationQuiverSpec) -> Result<Self> {
        let c = check_spec(spec).map_err(|v| Error::InvalidQuiver(v.join("; ")))?;
        let mut tau_inv = vec![None; c.quiver.vertex_count()];
        for (x, t) in c.tau.iter().enumerate() {
            if let Some(y) = t {
                tau_inv[*y] = Some(x);
            }
        }
        Ok(TranslationQuiver {
            quiver: c.quiver,
            projective: c.projective,
            injective: c.injective,
            tau: c.tau,
            tau_inv,
            sigma: c.sigma,
        })
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn vertex_count(&self) -> usize {
        self.quiver.vertex_count()
    }

    pub fn is_projective(&self, x: usize) -> bool {
        self.projective[x]
    }

    pub fn is_injective(&self, x: usize) -> bool {
        self.injective[x]
    }

    pub fn tau(&self, x: usize) -> Option<usize> {
        self.tau[x]
    }

    pub fn tau_inverse(&self, x: usize) -> Option<usize> {
        self.tau_inv[x]
    }

    /// `sigma(alpha)` for an arrow ending at a non-projective vertex.
    pub fn sigma(&self, arrow: usize) -> Option<usize> {
        self.sigma.get(&arrow).copied()
    }

    /// Inverse of sigma: the arrow `alpha` with `sigma(alpha) = arrow`.
    pub fn sigma_inverse(&self, arrow: usize) -> Option<usize> {
        self.sigma.iter().find(|(_, &b)| b == arrow).map(|(&a, _)| a)
    }

    pub fn mesh_at(&self, x: usize) -> Option<Mesh> {
        if self.projective[x] {
            return None;
        }
        let start = self.tau[x]?;
        let legs = self.quiver.incoming(x).iter().map(|&a| (self.sigma[&a], a)).collect();
        Some(Mesh { end: x, start, legs })
    }

    /// One mesh per non-projective vertex, in vertex order.
    pub fn meshes(&self) -> Vec<Mesh> {
        (0..self.vertex_count()).filter_map(|x| self.mesh_at(x)).collect()
    }

    pub fn to_spec(&self) -> TranslationQuiverSpec {
        let q = &self.quiver;
        let name = |v: usize| q.vertex_id(v).to_string();
        let mut sigma: Vec<SigmaSpec> = self
            .sigma
            .iter()
            .map(|(&a, &b)| SigmaSpec {
                at: name(q.arrow(a).target),
                arrow_in: q.arrow(a).id.clone(),
                arrow_out: q.arrow(b).id.clone(),
            })
            .collect();
        sigma.sort_by(|x, y| (&x.at, &x.arrow_in).cmp(&(&y.at, &y.arrow_in)));
        TranslationQuiverSpec {
            vertices: q.vertices().to_vec(),
            arrows: q
                .arrows()
                .iter()
                .map(|a| ArrowSpec {
                    id: Some(a.id.clone()),
                    from: name(a.source),
                    to: name(a.target),
                })
                .collect(),
            projectives: (0..q.vertex_count())
                .filter(|&x| self.projective[x])
                .map(name)
                .collect(),
            injectives: (0..q.vertex_count()).filter(|&x| self.injective[x]).map(name).collect(),
            tau: (0..q.vertex_count())
                .filter_map(|x| {
                    self.tau[x].map(|y| TauSpec {
                        of: name(x),
                        is: name(y),
                    })
                })
                .collect(),
            sigma,
        }
    }

    /// Whether no `x_i` equals `tau(x_{i+2})` along the path.
    pub fn is_sectional(&self, path: &QPath) -> Result<bool> {
        QPath::new(&self.quiver, path.start, path.arrows.clone())?;
        let xs = path.vertices(&self.quiver);
        Ok(xs.windows(3).all(|w| self.tau[w[2]] != Some(w[0])))
    }

    /// Decides whether all paths between any two vertices have equal length.
    ///
    /// An oriented cycle through `x` gives paths `x -> x` of lengths 0 and
    /// the cycle length, so cyclic quivers never have length; the witness is
    /// still reported.
    pub fn has_length(&self) -> LengthVerdict {
        let n = self.vertex_count();
        let bound = 2 * n;
        let mut best: Option<(bool, usize, usize, usize, QPath, QPath)> = None;
        for x in 0..n {
            // first path found for every (endpoint, length)
            let mut reps: BTreeMap<(usize, usize), QPath> = BTreeMap::new();
            let mut layer = vec![QPath::trivial(x)];
            reps.insert((x, 0), QPath::trivial(x));
            for len in 1..=bound {
                let mut next = Vec::new();
                for p in &layer {
                    for &a in self.quiver.outgoing(p.end(&self.quiver)) {
                        let mut arrows = p.arrows.clone();
                        arrows.push(a);
                        let q = QPath { start: x, arrows };
                        let y = q.end(&self.quiver);
                        if let std::collections::btree_map::Entry::Vacant(e) = reps.entry((y, len)) {
                            e.insert(q.clone());
                            next.push(q);
                        }
                    }
                }
                if next.is_empty() {
                    break;
                }
                layer = next;
            }
            let mut by_target: BTreeMap<usize, Vec<&QPath>> = BTreeMap::new();
            for ((y, _), p) in &reps {
                by_target.entry(*y).or_default().push(p);
            }
            for (y, ps) in by_target {
                if ps.len() < 2 {
                    continue;
                }
                let (short, long) = (ps[0], ps[ps.len() - 1]);
                let key = (x == y, long.len(), x, y);
                if best.as_ref().is_none_or(|b| key < (b.0, b.1, b.2, b.3)) {
                    best = Some((key.0, key.1, key.2, key.3, short.clone(), long.clone()));
                }
            }
        }
        match best {
            None => LengthVerdict {
                has_length: true,
                witness: None,
            },
            Some((_, _, _, _, p, q)) => LengthVerdict {
                has_length: false,
                witness: Some((p, q)),
            },
        }
    }
}

/// Outcome of [`TranslationQuiver::has_length`]; the witness is a pair of
/// parallel paths of different lengths.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LengthVerdict {
    pub has_length: bool,
    pub witness: Option<(QPath, QPath)>,
}

/// Vertex id of `(k, v)` in a ZΔ window.
pub fn z_delta_vertex(k: i64, v: &str) -> String {
    format!("({k},{v})")
}

/// A finite window `window x Δ` of the translation quiver ZΔ.
///
/// The leftmost column is marked projective and the rightmost injective, so
/// every interior mesh is complete.
pub fn build_z_delta(delta: &Quiver, window: RangeInclusive<i64>) -> Result<TranslationQuiver> {
    if !delta.is_tree() {
        return Err(Error::NotATree(format!(
            "{} vertices, {} arrows",
            delta.vertex_count(),
            delta.arrow_count()
        )));
    }
    let (lo, hi) = (*window.start(), *window.end());
    if lo > hi {
        return Err(Error::Precondition("empty window".into()));
    }
    let mut spec = TranslationQuiverSpec::default();
    for k in lo..=hi {
        for v in delta.vertices() {
            let id = z_delta_vertex(k, v);
            if k == lo {
                spec.projectives.push(id.clone());
            }
            if k == hi {
                spec.injectives.push(id.clone());
            }
            if k > lo {
                spec.tau.push(TauSpec {
                    of: id.clone(),
                    is: z_delta_vertex(k - 1, v),
                });
            }
            spec.vertices.push(id);
        }
    }
    let arrow_id = |k: i64, a: &str, star: bool| format!("({k},{a}{})", if star { "*" } else { "" });
    for k in lo..=hi {
        for a in delta.arrows() {
            let (u, v) = (delta.vertex_id(a.source), delta.vertex_id(a.target));
            spec.arrows.push(ArrowSpec {
                id: Some(arrow_id(k, &a.id, false)),
                from: z_delta_vertex(k, u),
                to: z_delta_vertex(k, v),
            });
            if k < hi {
                spec.arrows.push(ArrowSpec {
                    id: Some(arrow_id(k, &a.id, true)),
                    from: z_delta_vertex(k, v),
                    to: z_delta_vertex(k + 1, u),
                });
            }
        }
    }
    // sigma(k,a) = (k-1,a*) and sigma(k-1,a*) = (k-1,a)
    for k in lo + 1..=hi {
        for a in delta.arrows() {
            let (u, v) = (delta.vertex_id(a.source), delta.vertex_id(a.target));
            spec.sigma.push(SigmaSpec {
                at: z_delta_vertex(k, v),
                arrow_in: arrow_id(k, &a.id, false),
                arrow_out: arrow_id(k - 1, &a.id, true),
            });
            spec.sigma.push(SigmaSpec {
                at: z_delta_vertex(k, u),
                arrow_in: arrow_id(k - 1, &a.id, true),
                arrow_out: arrow_id(k - 1, &a.id, false),
            });
        }
    }
    TranslationQuiver::new(&spec)
}

/// The quiver `1 -> 2 -> ... -> n` with arrows `a1, a2, ...`.
pub fn linear_quiver(n: usize) -> Quiver {
    let vertices: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    let arrows = (1..n).map(|i| (format!("a{i}"), i.to_string(), (i + 1).to_string()));
    Quiver::new(vertices, arrows).expect("linear quiver is well formed")
}
