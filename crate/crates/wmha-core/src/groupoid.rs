//! Finite and lazily presented groupoids, groupoid actions on sets, and
//! fixture generators.
//!
//! Convention used throughout: `compose(p, q)` means "p after q", defined
//! exactly when `source(p) = target(q)`, matching the convolution rule
//! λ_p λ_q = λ_{pq} in the groupoid algebra.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::rc::Rc;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::sample::Sampler;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupoidError {
    EmptyParameter(&'static str),
    UnknownLabel(String),
    Duplicate(String),
    Inconsistent(String),
}

impl core::fmt::Display for GroupoidError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            GroupoidError::EmptyParameter(what) => write!(f, "{what} must be at least 1"),
            GroupoidError::UnknownLabel(l) => write!(f, "unknown label {l}"),
            GroupoidError::Duplicate(l) => write!(f, "duplicate label {l}"),
            GroupoidError::Inconsistent(m) => write!(f, "{m}"),
        }
    }
}

/// One reported axiom violation, with a witness.
#[derive(Clone, Debug)]
pub struct Violation {
    pub rule: String,
    pub witness: String,
}

/// Result of exhaustive (or sampled) validation. Empty iff valid;
/// invalidity is data, not an error.
#[derive(Clone, Debug, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub(crate) fn violation(&mut self, rule: &str, witness: String) {
        self.violations.push(Violation {
            rule: rule.to_string(),
            witness,
        });
    }
}

impl core::fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        if self.is_valid() {
            return write!(f, "valid");
        }
        for v in &self.violations {
            writeln!(f, "{}: {}", v.rule, v.witness)?;
        }
        Ok(())
    }
}

/// A finite groupoid: morphisms with source/target objects, a partial
/// composition, inverses and a unit morphism per object.
#[derive(Clone, Debug)]
pub struct Groupoid {
    objects: Vec<String>,
    names: Vec<String>,
    source: Vec<usize>,
    target: Vec<usize>,
    compose: BTreeMap<(usize, usize), usize>,
    inverse: Vec<usize>,
    identity: Vec<usize>,
    name_index: BTreeMap<String, usize>,
}

impl Groupoid {
    /// Raw constructor; resolves labels, performs structural sanity checks
    /// (label resolution, shape), but NOT the groupoid axioms — run
    /// [`Groupoid::validate`] for those.
    #[allow(clippy::too_many_arguments)]
    pub fn from_parts(
        objects: Vec<String>,
        morphisms: Vec<(String, String, String)>, // (name, source object, target object)
        compose: Vec<(String, String, String)>,   // p.q = r
        inverses: Vec<(String, String)>,
        identities: Vec<(String, String)>, // (object, unit morphism)
    ) -> Result<Groupoid, GroupoidError> {
        let mut obj_index = BTreeMap::new();
        for (i, o) in objects.iter().enumerate() {
            if obj_index.insert(o.clone(), i).is_some() {
                return Err(GroupoidError::Duplicate(o.clone()));
            }
        }
        let mut name_index = BTreeMap::new();
        let mut names = Vec::new();
        let mut source = Vec::new();
        let mut target = Vec::new();
        for (i, (name, s, t)) in morphisms.iter().enumerate() {
            if name_index.insert(name.clone(), i).is_some() {
                return Err(GroupoidError::Duplicate(name.clone()));
            }
            names.push(name.clone());
            source.push(
                *obj_index
                    .get(s)
                    .ok_or_else(|| GroupoidError::UnknownLabel(s.clone()))?,
            );
            target.push(
                *obj_index
                    .get(t)
                    .ok_or_else(|| GroupoidError::UnknownLabel(t.clone()))?,
            );
        }
        let resolve = |n: &String| -> Result<usize, GroupoidError> {
            name_index
                .get(n)
                .copied()
                .ok_or_else(|| GroupoidError::UnknownLabel(n.clone()))
        };
        let mut table = BTreeMap::new();
        for (p, q, r) in &compose {
            let (p, q, r) = (resolve(p)?, resolve(q)?, resolve(r)?);
            if let Some(&old) = table.get(&(p, q)) {
                if old != r {
                    return Err(GroupoidError::Inconsistent(format!(
                        "conflicting compositions {}.{}",
                        names[p], names[q]
                    )));
                }
            }
            table.insert((p, q), r);
        }
        let mut inverse = alloc::vec![usize::MAX; names.len()];
        for (p, q) in &inverses {
            let (p, q) = (resolve(p)?, resolve(q)?);
            for (a, b) in [(p, q), (q, p)] {
                if inverse[a] != usize::MAX && inverse[a] != b {
                    return Err(GroupoidError::Inconsistent(format!(
                        "conflicting inverses for {}",
                        names[a]
                    )));
                }
                inverse[a] = b;
            }
        }
        let mut identity = alloc::vec![usize::MAX; objects.len()];
        for (o, m) in &identities {
            let o = *obj_index
                .get(o)
                .ok_or_else(|| GroupoidError::UnknownLabel(o.clone()))?;
            let m = resolve(m)?;
            if identity[o] != usize::MAX && identity[o] != m {
                return Err(GroupoidError::Inconsistent(format!(
                    "conflicting identities for object {}",
                    objects[o]
                )));
            }
            identity[o] = m;
        }
        for (o, &id) in identity.iter().enumerate() {
            if id == usize::MAX {
                return Err(GroupoidError::Inconsistent(format!(
                    "object {} has no identity morphism",
                    objects[o]
                )));
            }
        }
        for (m, &inv) in inverse.iter().enumerate() {
            if inv == usize::MAX {
                return Err(GroupoidError::Inconsistent(format!(
                    "morphism {} has no inverse",
                    names[m]
                )));
            }
        }
        Ok(Groupoid {
            objects,
            names,
            source,
            target,
            compose: table,
            inverse,
            identity,
            name_index,
        })
    }

    pub fn n_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn n_morphisms(&self) -> usize {
        self.names.len()
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn morphism_names(&self) -> &[String] {
        &self.names
    }

    pub fn morphism_name(&self, m: usize) -> &str {
        &self.names[m]
    }

    pub fn morphism_index(&self, name: &str) -> Option<usize> {
        self.name_index.get(name).copied()
    }

    pub fn source(&self, m: usize) -> usize {
        self.source[m]
    }

    pub fn target(&self, m: usize) -> usize {
        self.target[m]
    }

    /// `compose(p, q)` = "p after q"; `None` when `source(p) != target(q)`
    /// or the table has no entry.
    pub fn compose(&self, p: usize, q: usize) -> Option<usize> {
        self.compose.get(&(p, q)).copied()
    }

    pub fn inverse(&self, m: usize) -> usize {
        self.inverse[m]
    }

    pub fn identity(&self, object: usize) -> usize {
        self.identity[object]
    }

    pub fn is_unit(&self, m: usize) -> bool {
        self.identity[self.source[m]] == m
    }

    pub fn units(&self) -> impl Iterator<Item = usize> + '_ {
        self.identity.iter().copied()
    }

    /// Exhaustively checks every groupoid axiom, reporting each violation
    /// with a witness.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        let n = self.n_morphisms();
        for p in 0..n {
            for q in 0..n {
                let defined = self.compose(p, q).is_some();
                let composable = self.source(p) == self.target(q);
                if defined && !composable {
                    report.violation(
                        "composition-domain",
                        format!(
                            "{}.{} defined but source({}) != target({})",
                            self.names[p], self.names[q], self.names[p], self.names[q]
                        ),
                    );
                }
                if composable && !defined {
                    report.violation(
                        "composition-totality",
                        format!(
                            "composable pair {}.{} has no composition entry",
                            self.names[p], self.names[q]
                        ),
                    );
                }
                if let Some(r) = self.compose(p, q) {
                    if self.source(r) != self.source(q) || self.target(r) != self.target(p) {
                        report.violation(
                            "composition-typing",
                            format!(
                                "{}.{}={} has wrong source/target",
                                self.names[p], self.names[q], self.names[r]
                            ),
                        );
                    }
                }
            }
        }
        // Associativity wherever both sides are defined.
        for p in 0..n {
            for q in 0..n {
                let Some(pq) = self.compose(p, q) else { continue };
                for r in 0..n {
                    let lhs = self.compose(pq, r);
                    let rhs = self.compose(q, r).and_then(|qr| self.compose(p, qr));
                    if lhs != rhs {
                        report.violation(
                            "associativity",
                            format!(
                                "({}.{}).{} != {}.({}.{})",
                                self.names[p],
                                self.names[q],
                                self.names[r],
                                self.names[p],
                                self.names[q],
                                self.names[r]
                            ),
                        );
                    }
                }
            }
        }
        // Unit laws.
        for (o, &e) in self.identity.iter().enumerate() {
            if self.source(e) != o || self.target(e) != o {
                report.violation(
                    "identity-endomorphism",
                    format!("identity of {} is not an endomorphism", self.objects[o]),
                );
            }
        }
        for p in 0..n {
            let es = self.identity[self.source(p)];
            let et = self.identity[self.target(p)];
            if self.compose(p, es) != Some(p) {
                report.violation(
                    "right-unit",
                    format!("{}.{} != {}", self.names[p], self.names[es], self.names[p]),
                );
            }
            if self.compose(et, p) != Some(p) {
                report.violation(
                    "left-unit",
                    format!("{}.{} != {}", self.names[et], self.names[p], self.names[p]),
                );
            }
        }
        // Inverse laws.
        for p in 0..n {
            let inv = self.inverse(p);
            if self.source(inv) != self.target(p) || self.target(inv) != self.source(p) {
                report.violation(
                    "inverse-typing",
                    format!("inverse of {} has wrong endpoints", self.names[p]),
                );
            }
            if self.compose(p, inv) != Some(self.identity[self.target(p)]) {
                report.violation(
                    "inverse-right",
                    format!("{}.{} is not the unit at target", self.names[p], self.names[inv]),
                );
            }
            if self.compose(inv, p) != Some(self.identity[self.source(p)]) {
                report.violation(
                    "inverse-left",
                    format!("{}.{} is not the unit at source", self.names[inv], self.names[p]),
                );
            }
        }
        report
    }
}

/// The pair groupoid on `n` objects: one morphism `(i,j) : j -> i` for every
/// ordered pair, with `(i,j).(j,k) = (i,k)`.
pub fn pair_groupoid(n: usize) -> Result<Groupoid, GroupoidError> {
    if n == 0 {
        return Err(GroupoidError::EmptyParameter("pair groupoid size"));
    }
    let objects: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    let mname = |i: usize, j: usize| format!("m{i}{j}");
    let mut morphisms = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            morphisms.push((mname(i, j), j.to_string(), i.to_string()));
        }
    }
    let mut compose = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            for k in 1..=n {
                compose.push((mname(i, j), mname(j, k), mname(i, k)));
            }
        }
    }
    let mut inverses = Vec::new();
    let mut identities = Vec::new();
    for i in 1..=n {
        identities.push((i.to_string(), mname(i, i)));
        for j in 1..=n {
            inverses.push((mname(i, j), mname(j, i)));
        }
    }
    Groupoid::from_parts(objects, morphisms, compose, inverses, identities)
}

/// The cyclic group of order `n` as a one-object groupoid with morphisms
/// `g0..g{n-1}`.
pub fn cyclic_group(n: usize) -> Result<Groupoid, GroupoidError> {
    if n == 0 {
        return Err(GroupoidError::EmptyParameter("cyclic group order"));
    }
    let g = |k: usize| format!("g{k}");
    let objects = alloc::vec!["o".to_string()];
    let morphisms: Vec<_> = (0..n).map(|k| (g(k), "o".to_string(), "o".to_string())).collect();
    let mut compose = Vec::new();
    for a in 0..n {
        for b in 0..n {
            compose.push((g(a), g(b), g((a + b) % n)));
        }
    }
    let inverses: Vec<_> = (0..n).map(|a| (g(a), g((n - a) % n))).collect();
    let identities = alloc::vec![("o".to_string(), g(0))];
    Groupoid::from_parts(objects, morphisms, compose, inverses, identities)
}

/// Disjoint union; labels are prefixed `a.` / `b.` and there is no cross
/// composition.
pub fn disjoint_union(g1: &Groupoid, g2: &Groupoid) -> Result<Groupoid, GroupoidError> {
    let mut objects = Vec::new();
    let mut morphisms = Vec::new();
    let mut compose = Vec::new();
    let mut inverses = Vec::new();
    let mut identities = Vec::new();
    for (prefix, g) in [("a", g1), ("b", g2)] {
        let tag = |s: &str| format!("{prefix}.{s}");
        for o in g.objects() {
            objects.push(tag(o));
        }
        for m in 0..g.n_morphisms() {
            morphisms.push((
                tag(g.morphism_name(m)),
                tag(&g.objects()[g.source(m)]),
                tag(&g.objects()[g.target(m)]),
            ));
            inverses.push((tag(g.morphism_name(m)), tag(g.morphism_name(g.inverse(m)))));
        }
        for (&(p, q), &r) in g.compose.iter() {
            compose.push((
                tag(g.morphism_name(p)),
                tag(g.morphism_name(q)),
                tag(g.morphism_name(r)),
            ));
        }
        for (o, &e) in g.identity.iter().enumerate() {
            identities.push((tag(&g.objects()[o]), tag(g.morphism_name(e))));
        }
    }
    Groupoid::from_parts(objects, morphisms, compose, inverses, identities)
}

/// An action of a finite groupoid on a finite set of points: a domain
/// `X_p` per morphism and an injection `α_p : X_p -> X`.
#[derive(Clone, Debug)]
pub struct GroupoidAction {
    pub base: Groupoid,
    points: Vec<String>,
    point_index: BTreeMap<String, usize>,
    domain: Vec<BTreeSet<usize>>,
    map: BTreeMap<(usize, usize), usize>,
}

impl GroupoidAction {
    pub fn from_parts(
        base: Groupoid,
        points: Vec<String>,
        domain: Vec<(String, Vec<String>)>, // morphism -> points in X_p
        map: Vec<(String, String, String)>, // morphism, point, image point
    ) -> Result<GroupoidAction, GroupoidError> {
        let mut point_index = BTreeMap::new();
        for (i, p) in points.iter().enumerate() {
            if point_index.insert(p.clone(), i).is_some() {
                return Err(GroupoidError::Duplicate(p.clone()));
            }
        }
        let mut domains = alloc::vec![BTreeSet::new(); base.n_morphisms()];
        for (m, pts) in &domain {
            let m = base
                .morphism_index(m)
                .ok_or_else(|| GroupoidError::UnknownLabel(m.clone()))?;
            for p in pts {
                let p = *point_index
                    .get(p)
                    .ok_or_else(|| GroupoidError::UnknownLabel(p.clone()))?;
                domains[m].insert(p);
            }
        }
        let mut table = BTreeMap::new();
        for (m, x, y) in &map {
            let m = base
                .morphism_index(m)
                .ok_or_else(|| GroupoidError::UnknownLabel(m.clone()))?;
            let x = *point_index
                .get(x)
                .ok_or_else(|| GroupoidError::UnknownLabel(x.clone()))?;
            let y = *point_index
                .get(y)
                .ok_or_else(|| GroupoidError::UnknownLabel(y.clone()))?;
            if table.insert((m, x), y).is_some() {
                return Err(GroupoidError::Duplicate(format!(
                    "map entry for ({}, {})",
                    base.morphism_name(m),
                    points[x]
                )));
            }
        }
        Ok(GroupoidAction {
            base,
            points,
            point_index,
            domain: domains,
            map: table,
        })
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn point_index(&self, p: &str) -> Option<usize> {
        self.point_index.get(p).copied()
    }

    pub fn in_domain(&self, m: usize, x: usize) -> bool {
        self.domain[m].contains(&x)
    }

    pub fn apply(&self, m: usize, x: usize) -> Option<usize> {
        if self.in_domain(m, x) {
            self.map.get(&(m, x)).copied()
        } else {
            None
        }
    }

    /// Exhaustively checks the action axioms, including trueness.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        let g = &self.base;
        let name = |m: usize| g.morphism_name(m);
        for (m, dom) in self.domain.iter().enumerate() {
            for &x in dom {
                match self.map.get(&(m, x)) {
                    None => report.violation(
                        "map-totality",
                        format!("alpha_{} undefined on {}", name(m), self.points[x]),
                    ),
                    Some(_) => {}
                }
            }
        }
        // Injectivity of each alpha_p.
        for (m, dom) in self.domain.iter().enumerate() {
            let mut seen = BTreeMap::new();
            for &x in dom {
                if let Some(y) = self.apply(m, x) {
                    if let Some(&x0) = seen.get(&y) {
                        report.violation(
                            "injectivity",
                            format!(
                                "alpha_{} maps {} and {} to {}",
                                name(m),
                                self.points[x0],
                                self.points[x],
                                self.points[y]
                            ),
                        );
                    }
                    seen.insert(y, x);
                }
            }
        }
        // Composition: if pq exists then X_q ⊆ X_{pq}, α_q(X_q) ⊆ X_p and
        // α_p(α_q(x)) = α_{pq}(x) on X_q.
        for p in 0..g.n_morphisms() {
            for q in 0..g.n_morphisms() {
                let Some(pq) = g.compose(p, q) else { continue };
                for &x in &self.domain[q] {
                    if !self.in_domain(pq, x) {
                        report.violation(
                            "domain-monotone",
                            format!("{} in X_{} but not in X_{}", self.points[x], name(q), name(pq)),
                        );
                        continue;
                    }
                    let Some(qx) = self.apply(q, x) else { continue };
                    if !self.in_domain(p, qx) {
                        report.violation(
                            "image-in-domain",
                            format!(
                                "alpha_{}({}) = {} not in X_{}",
                                name(q),
                                self.points[x],
                                self.points[qx],
                                name(p)
                            ),
                        );
                        continue;
                    }
                    if self.apply(p, qx) != self.apply(pq, x) {
                        report.violation(
                            "composition",
                            format!(
                                "alpha_{}(alpha_{}({})) != alpha_{}({})",
                                name(p),
                                name(q),
                                self.points[x],
                                name(pq),
                                self.points[x]
                            ),
                        );
                    }
                }
            }
        }
        // Units act as identity on their domain.
        for e in g.units() {
            for &x in &self.domain[e] {
                if self.apply(e, x) != Some(x) {
                    report.violation(
                        "unit-identity",
                        format!("alpha_{} moves {}", name(e), self.points[x]),
                    );
                }
            }
        }
        // Trueness: x in X_p and alpha_p(x) in X_q imply qp defined.
        for p in 0..g.n_morphisms() {
            for &x in &self.domain[p] {
                let Some(px) = self.apply(p, x) else { continue };
                for q in 0..g.n_morphisms() {
                    if self.in_domain(q, px) && g.compose(q, p).is_none() {
                        report.violation(
                            "trueness",
                            format!(
                                "{} in X_{}, alpha_{}({}) in X_{} but {}.{} undefined",
                                self.points[x],
                                name(p),
                                name(p),
                                self.points[x],
                                name(q),
                                name(q),
                                name(p)
                            ),
                        );
                    }
                }
            }
        }
        // Unit domains cover X.
        let mut covered: BTreeSet<usize> = BTreeSet::new();
        for e in g.units() {
            covered.extend(self.domain[e].iter().copied());
        }
        for (x, pt) in self.points.iter().enumerate() {
            if !covered.contains(&x) {
                report.violation("unit-cover", format!("point {pt} in no unit domain"));
            }
        }
        report
    }
}

/// The action groupoid `G ⋉ X` of a group action: objects are the points,
/// morphisms `(g, x) : x -> g·x`.
pub fn action_groupoid(group: &Groupoid, action: &GroupoidAction) -> Result<Groupoid, GroupoidError> {
    if group.n_objects() != 1 {
        return Err(GroupoidError::Inconsistent(
            "action groupoid needs a one-object base".to_string(),
        ));
    }
    let points = action.points();
    let mname = |g: usize, x: usize| format!("{}@{}", group.morphism_name(g), points[x]);
    let mut morphisms = Vec::new();
    let mut compose = Vec::new();
    let mut inverses = Vec::new();
    let mut identities = Vec::new();
    for g in 0..group.n_morphisms() {
        for x in 0..points.len() {
            let Some(gx) = action.apply(g, x) else {
                return Err(GroupoidError::Inconsistent(
                    "group action must be total".to_string(),
                ));
            };
            morphisms.push((mname(g, x), points[x].clone(), points[gx].clone()));
            let ginv = group.inverse(g);
            inverses.push((mname(g, x), mname(ginv, gx)));
        }
    }
    for g in 0..group.n_morphisms() {
        for h in 0..group.n_morphisms() {
            let gh = group.compose(g, h).expect("group is total");
            for x in 0..points.len() {
                let hx = action.apply(h, x).unwrap();
                compose.push((mname(g, hx), mname(h, x), mname(gh, x)));
            }
        }
    }
    let e = group.identity(0);
    for x in 0..points.len() {
        identities.push((points[x].clone(), mname(e, x)));
    }
    Groupoid::from_parts(
        points.to_vec(),
        morphisms,
        compose,
        inverses,
        identities,
    )
}

/// A groupoid presented by computable maps over an enumerable (possibly
/// infinite) morphism set. Morphisms and objects are named by strings.
#[derive(Clone)]
pub struct LazyGroupoid {
    pub name: String,
    pub contains: Rc<dyn Fn(&str) -> bool>,
    /// Enumerates morphism names; used by sampling.
    pub enumerate: Rc<dyn Fn(u64) -> String>,
    pub source: Rc<dyn Fn(&str) -> String>,
    pub target: Rc<dyn Fn(&str) -> String>,
    pub compose: Rc<dyn Fn(&str, &str) -> Option<String>>,
    pub inverse: Rc<dyn Fn(&str) -> String>,
    pub identity: Rc<dyn Fn(&str) -> String>,
}

impl LazyGroupoid {
    /// Draws `budget` random triples (bounded by `max_index`) and checks the
    /// groupoid axioms on each.
    pub fn validate_sampled(&self, budget: usize, seed: u64, max_index: u64) -> ValidationReport {
        let mut report = ValidationReport::default();
        let mut sampler = Sampler::new(seed);
        for _ in 0..budget {
            let p = (self.enumerate)(sampler.below(max_index));
            let q = (self.enumerate)(sampler.below(max_index));
            let r = (self.enumerate)(sampler.below(max_index));
            if !(self.contains)(&p) {
                report.violation("membership", format!("enumerated {p} not a member"));
                continue;
            }
            let composable = (self.source)(&p) == (self.target)(&q);
            let pq = (self.compose)(&p, &q);
            if composable != pq.is_some() {
                report.violation("composition-domain", format!("{p}.{q}"));
            }
            if let Some(pq) = &pq {
                if let Some(qr) = (self.compose)(&q, &r) {
                    let lhs = (self.compose)(pq, &r);
                    let rhs = (self.compose)(&p, &qr);
                    if lhs != rhs {
                        report.violation("associativity", format!("({p}.{q}).{r}"));
                    }
                }
            }
            let inv = (self.inverse)(&p);
            let et = (self.identity)(&(self.target)(&p));
            let es = (self.identity)(&(self.source)(&p));
            if (self.compose)(&p, &inv).as_deref() != Some(et.as_str())
                || (self.compose)(&inv, &p).as_deref() != Some(es.as_str())
            {
                report.violation("inverse", format!("{p} vs {inv}"));
            }
            if (self.compose)(&p, &es).as_deref() != Some(p.as_str()) {
                report.violation("right-unit", p.clone());
            }
        }
        report
    }
}

/// The pair groupoid over the natural numbers: morphisms `(i,j) : i -> j`,
/// enumerated by diagonal pairing. `compose((a,b),(c,a)) = (c,b)`.
pub fn lazy_pair_groupoid() -> LazyGroupoid {
    fn name(i: u64, j: u64) -> String {
        format!("({i},{j})")
    }
    fn parse(s: &str) -> Option<(u64, u64)> {
        let inner = s.strip_prefix('(')?.strip_suffix(')')?;
        let (i, j) = inner.split_once(',')?;
        Some((i.parse().ok()?, j.parse().ok()?))
    }
    LazyGroupoid {
        name: "pair groupoid on the naturals".to_string(),
        contains: Rc::new(|s| parse(s).is_some()),
        enumerate: Rc::new(|k| {
            // Cantor-style diagonal enumeration of pairs.
            let mut d = 0u64;
            let mut total = 0u64;
            loop {
                if total + d + 1 > k {
                    let off = k - total;
                    return name(off, d - off);
                }
                total += d + 1;
                d += 1;
            }
        }),
        source: Rc::new(|s| parse(s).expect("pair label").0.to_string()),
        target: Rc::new(|s| parse(s).expect("pair label").1.to_string()),
        compose: Rc::new(|p, q| {
            let (a, b) = parse(p)?;
            let (c, d) = parse(q)?;
            (a == d).then(|| name(c, b))
        }),
        inverse: Rc::new(|p| {
            let (i, j) = parse(p).expect("pair label");
            name(j, i)
        }),
        identity: Rc::new(|o| {
            let i: u64 = o.parse().expect("numeric object");
            name(i, i)
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_groupoid_counts() {
        let g = pair_groupoid(2).unwrap();
        assert_eq!(g.n_objects(), 2);
        assert_eq!(g.n_morphisms(), 4);
        assert_eq!(g.units().count(), 2);
        assert!(g.validate().is_valid());
        // Every morphism composes with its inverse.
        for m in 0..g.n_morphisms() {
            assert!(g.compose(g.inverse(m), m).is_some());
        }
    }

    #[test]
    fn cyclic_group_counts() {
        let g = cyclic_group(3).unwrap();
        assert_eq!(g.n_morphisms(), 3);
        assert_eq!(g.units().count(), 1);
        assert!(g.validate().is_valid());
        assert!(cyclic_group(0).is_err());
        assert!(pair_groupoid(0).is_err());
    }

    #[test]
    fn disjoint_union_counts() {
        let g = disjoint_union(&pair_groupoid(2).unwrap(), &cyclic_group(2).unwrap()).unwrap();
        assert_eq!(g.n_morphisms(), 6);
        assert_eq!(g.units().count(), 3);
        assert!(g.validate().is_valid());
    }

    #[test]
    fn inverse_is_involution() {
        for g in [pair_groupoid(3).unwrap(), cyclic_group(4).unwrap()] {
            for m in 0..g.n_morphisms() {
                assert_eq!(g.inverse(g.inverse(m)), m);
            }
            for e in g.units() {
                assert_eq!(g.inverse(e), e);
            }
            assert_eq!(g.units().count(), g.n_objects());
        }
    }

    /// Corrupting any single composition entry of a valid table is detected.
    #[test]
    fn seeded_mutation_detected() {
        let g = pair_groupoid(2).unwrap();
        let keys: Vec<(usize, usize)> = g.compose.keys().copied().collect();
        for &(p, q) in &keys {
            let mut bad = g.clone();
            bad.compose.remove(&(p, q));
            assert!(!bad.validate().is_valid(), "deleted {p}.{q} not detected");
            let mut bad = g.clone();
            let r = bad.compose[&(p, q)];
            let wrong = (r + 1) % bad.n_morphisms();
            bad.compose.insert((p, q), wrong);
            assert!(!bad.validate().is_valid(), "rewired {p}.{q} not detected");
        }
    }

    fn p2_action() -> GroupoidAction {
        let g = pair_groupoid(2).unwrap();
        GroupoidAction::from_parts(
            g,
            alloc::vec!["x1".to_string(), "x2".to_string()],
            alloc::vec![
                ("m11".to_string(), alloc::vec!["x1".to_string()]),
                ("m22".to_string(), alloc::vec!["x2".to_string()]),
                ("m21".to_string(), alloc::vec!["x1".to_string()]),
                ("m12".to_string(), alloc::vec!["x2".to_string()]),
            ],
            alloc::vec![
                ("m11".to_string(), "x1".to_string(), "x1".to_string()),
                ("m22".to_string(), "x2".to_string(), "x2".to_string()),
                ("m21".to_string(), "x1".to_string(), "x2".to_string()),
                ("m12".to_string(), "x2".to_string(), "x1".to_string()),
            ],
        )
        .unwrap()
    }

    #[test]
    fn p2_set_action_validates() {
        assert!(p2_action().validate().is_valid());
    }

    #[test]
    fn wrong_fiber_breaks_trueness() {
        let mut a = p2_action();
        // Send alpha_{m21}(x1) to x1 instead of x2: x1 lies in X_{m11} and
        // X_{m21}, and m11.m21 is defined but m21.m21 is not.
        a.map.insert(
            (a.base.morphism_index("m21").unwrap(), a.point_index("x1").unwrap()),
            a.point_index("x1").unwrap(),
        );
        let report = a.validate();
        assert!(!report.is_valid());
        assert!(report.violations.iter().any(|v| v.rule == "trueness"));
    }

    #[test]
    fn translation_action_is_true() {
        let g = cyclic_group(3).unwrap();
        let a = translation_action(&g);
        assert!(a.validate().is_valid());
    }

    #[test]
    fn action_groupoid_validates() {
        let g = cyclic_group(2).unwrap();
        let a = translation_action(&g);
        let ag = action_groupoid(&g, &a).unwrap();
        assert!(ag.validate().is_valid());
        assert_eq!(ag.n_objects(), 2);
        assert_eq!(ag.n_morphisms(), 4);
    }

    #[test]
    fn lazy_pair_groupoid_samples_clean() {
        let g = lazy_pair_groupoid();
        let report = g.validate_sampled(300, 7, 100);
        assert!(report.is_valid(), "{report}");
    }
}

/// A group acting on itself by left translation (every domain is the whole
/// set). Group actions are automatically true.
pub fn translation_action(group: &Groupoid) -> GroupoidAction {
    assert_eq!(group.n_objects(), 1, "translation action needs a group");
    let points: Vec<String> = group.morphism_names().to_vec();
    let all = points.clone();
    let mut domain = Vec::new();
    let mut map = Vec::new();
    for g in 0..group.n_morphisms() {
        domain.push((group.morphism_name(g).to_string(), all.clone()));
        for x in 0..group.n_morphisms() {
            let gx = group.compose(g, x).expect("group is total");
            map.push((
                group.morphism_name(g).to_string(),
                points[x].clone(),
                points[gx].clone(),
            ));
        }
    }
    GroupoidAction::from_parts(group.clone(), points, domain, map).unwrap()
}
