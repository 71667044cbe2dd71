//! Line-oriented UTF-8 file formats.
//!
//! Groupoid files:
//!
//! ```text
//! objects: 1 2
//! morphisms: id1:1->1 id2:2->2 p:1->2 q:2->1
//! compose: q.p=id1 p.q=id2
//! inverses: p=q
//! ```
//!
//! Identities are inferred: for each object the unique endomorphism that is
//! neutral under every explicit composition entry. Unit-law compositions and
//! unit inverses are filled in automatically; any remaining inverse must
//! either be given or be derivable from the composition table. After
//! parsing, the full groupoid axioms are validated; a violation is a
//! semantic error.
//!
//! Action files (resolved against a base groupoid):
//!
//! ```text
//! points: x1 x2
//! domain: id1={x1} id2={x2} p={x1} q={x2}
//! map: p:x1->x2 q:x2->x1 id1:x1->x1 id2:x2->x2
//! ```
//!
//! Structure-constant files for raw algebras:
//!
//! ```text
//! basis: e1 e2
//! mul: e1.e1 = 1*e1
//! mul: e1.e2 = 1/2*e1 + 3*e2
//! ```
//!
//! Omitted products are zero; coefficients are rationals `p/q`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::rc::Rc;

use wmha_core::algebra::{Algebra, Element, ProductRule};
use wmha_core::groupoid::{Groupoid, GroupoidAction};
use wmha_core::label::{Basis, Label};
use wmha_core::scalar::Scalar;

#[derive(Debug)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    fn new(line: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            message: message.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for ParseError {}

struct Sections {
    /// (line number, section key, payload)
    entries: Vec<(usize, String, String)>,
}

fn split_sections(text: &str) -> Result<Sections, ParseError> {
    let mut entries = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, payload)) = line.split_once(':') else {
            return Err(ParseError::new(line_no, format!("expected `section: ...`, found `{line}`")));
        };
        entries.push((line_no, key.trim().to_string(), payload.trim().to_string()));
    }
    Ok(Sections { entries })
}

impl Sections {
    fn payloads<'a>(&'a self, key: &'a str) -> impl Iterator<Item = (usize, &'a str)> + 'a {
        self.entries
            .iter()
            .filter(move |(_, k, _)| k == key)
            .map(|(line, _, payload)| (*line, payload.as_str()))
    }
}

/// Parses a groupoid file; identities, unit laws and missing inverses are
/// inferred as documented at module level, then the groupoid axioms are
/// validated exhaustively.
pub fn parse_groupoid(text: &str) -> Result<Groupoid, ParseError> {
    let groupoid = parse_groupoid_raw(text)?;
    let report = groupoid.validate();
    if !report.is_valid() {
        let first = &report.violations[0];
        return Err(ParseError::new(
            0,
            format!("not a groupoid: {}: {}", first.rule, first.witness),
        ));
    }
    Ok(groupoid)
}

/// As [`parse_groupoid`] but without the final axiom validation, so that
/// `validate` can report violations as data instead of failing the parse.
pub fn parse_groupoid_raw(text: &str) -> Result<Groupoid, ParseError> {
    let sections = split_sections(text)?;
    let mut objects: Vec<String> = Vec::new();
    for (line, payload) in sections.payloads("objects") {
        for tok in payload.split_whitespace() {
            if objects.iter().any(|o| o == tok) {
                return Err(ParseError::new(line, format!("duplicate object {tok}")));
            }
            objects.push(tok.to_string());
        }
    }
    if objects.is_empty() {
        return Err(ParseError::new(0, "no objects declared"));
    }
    // morphisms: name:src->tgt
    let mut morphisms: Vec<(String, String, String)> = Vec::new();
    for (line, payload) in sections.payloads("morphisms") {
        for tok in payload.split_whitespace() {
            let Some((name, arrow)) = tok.split_once(':') else {
                return Err(ParseError::new(line, format!("expected name:src->tgt, found `{tok}`")));
            };
            let Some((src, tgt)) = arrow.split_once("->") else {
                return Err(ParseError::new(line, format!("expected src->tgt in `{tok}`")));
            };
            if !objects.iter().any(|o| o == src) {
                return Err(ParseError::new(line, format!("unknown object {src}")));
            }
            if !objects.iter().any(|o| o == tgt) {
                return Err(ParseError::new(line, format!("unknown object {tgt}")));
            }
            if morphisms.iter().any(|(n, _, _)| n == name) {
                return Err(ParseError::new(line, format!("duplicate morphism {name}")));
            }
            morphisms.push((name.to_string(), src.to_string(), tgt.to_string()));
        }
    }
    let src_of: BTreeMap<&str, &str> = morphisms
        .iter()
        .map(|(n, s, _)| (n.as_str(), s.as_str()))
        .collect();
    let tgt_of: BTreeMap<&str, &str> = morphisms
        .iter()
        .map(|(n, _, t)| (n.as_str(), t.as_str()))
        .collect();
    // compose entries: p.q=r
    let mut compose: Vec<(String, String, String)> = Vec::new();
    let mut compose_set: BTreeMap<(String, String), String> = BTreeMap::new();
    for (line, payload) in sections.payloads("compose") {
        for tok in payload.split_whitespace() {
            let Some((lhs, r)) = tok.split_once('=') else {
                return Err(ParseError::new(line, format!("expected p.q=r, found `{tok}`")));
            };
            let Some((p, q)) = lhs.split_once('.') else {
                return Err(ParseError::new(line, format!("expected p.q on the left of `{tok}`")));
            };
            for name in [p, q, r] {
                if !src_of.contains_key(name) {
                    return Err(ParseError::new(line, format!("unknown morphism {name}")));
                }
            }
            // semantic check: composability
            if src_of[p] != tgt_of[q] {
                return Err(ParseError::new(
                    line,
                    format!("{p}.{q} declared but source({p}) != target({q})"),
                ));
            }
            if let Some(old) = compose_set.get(&(p.to_string(), q.to_string())) {
                if old != r {
                    return Err(ParseError::new(line, format!("conflicting entries for {p}.{q}")));
                }
            }
            compose_set.insert((p.to_string(), q.to_string()), r.to_string());
            compose.push((p.to_string(), q.to_string(), r.to_string()));
        }
    }
    // identities: the unique endomorphism of each object neutral under all
    // explicit entries.
    let mut identities: Vec<(String, String)> = Vec::new();
    for object in &objects {
        let candidates: Vec<&str> = morphisms
            .iter()
            .filter(|(n, s, t)| {
                s == object
                    && t == object
                    && compose_set.iter().all(|((p, q), r)| {
                        (p != n || r == q) && (q != n || r == p)
                    })
            })
            .map(|(n, _, _)| n.as_str())
            .collect();
        match candidates.as_slice() {
            [only] => identities.push((object.clone(), only.to_string())),
            [] => {
                return Err(ParseError::new(
                    0,
                    format!("cannot infer an identity morphism for object {object}"),
                ))
            }
            _ => {
                return Err(ParseError::new(
                    0,
                    format!(
                        "ambiguous identity for object {object}: candidates {}",
                        candidates.join(", ")
                    ),
                ))
            }
        }
    }
    let id_of: BTreeMap<&str, &str> = identities
        .iter()
        .map(|(o, m)| (o.as_str(), m.as_str()))
        .collect();
    // infer unit-law compositions
    for (name, src, tgt) in &morphisms {
        let es = id_of[src.as_str()];
        let et = id_of[tgt.as_str()];
        for (p, q) in [(name.as_str(), es), (et, name.as_str())] {
            let key = (p.to_string(), q.to_string());
            if !compose_set.contains_key(&key) {
                compose_set.insert(key, name.clone());
                compose.push((p.to_string(), q.to_string(), name.clone()));
            }
        }
    }
    // inverses: explicit entries, units self-inverse, the rest derived from
    // the composition table when unambiguous.
    let mut inverses: Vec<(String, String)> = Vec::new();
    let mut inv_known: BTreeSet<String> = BTreeSet::new();
    for (line, payload) in sections.payloads("inverses") {
        for tok in payload.split_whitespace() {
            let Some((p, q)) = tok.split_once('=') else {
                return Err(ParseError::new(line, format!("expected p=q, found `{tok}`")));
            };
            for name in [p, q] {
                if !src_of.contains_key(name) {
                    return Err(ParseError::new(line, format!("unknown morphism {name}")));
                }
            }
            inverses.push((p.to_string(), q.to_string()));
            inv_known.insert(p.to_string());
            inv_known.insert(q.to_string());
        }
    }
    for (_, m) in &identities {
        if !inv_known.contains(m) {
            inverses.push((m.clone(), m.clone()));
            inv_known.insert(m.clone());
        }
    }
    for (name, src, tgt) in &morphisms {
        if inv_known.contains(name) {
            continue;
        }
        let et = id_of[tgt.as_str()];
        let es = id_of[src.as_str()];
        let candidates: Vec<String> = morphisms
            .iter()
            .filter(|(q, _, _)| {
                compose_set.get(&(name.clone(), q.clone())).map(String::as_str) == Some(et)
                    && compose_set.get(&(q.clone(), name.clone())).map(String::as_str) == Some(es)
            })
            .map(|(q, _, _)| q.clone())
            .collect();
        match candidates.as_slice() {
            [only] => {
                inverses.push((name.clone(), only.clone()));
                inv_known.insert(name.clone());
                inv_known.insert(only.clone());
            }
            _ => {
                return Err(ParseError::new(
                    0,
                    format!("cannot determine the inverse of {name}"),
                ))
            }
        }
    }
    Groupoid::from_parts(objects, morphisms, compose, inverses, identities)
        .map_err(|e| ParseError::new(0, format!("{e}")))
}

/// Canonical rendering; `parse(render(g))` reproduces an isomorphic (in
/// fact identical) groupoid.
pub fn render_groupoid(g: &Groupoid) -> String {
    let mut out = String::new();
    out.push_str("objects:");
    for o in g.objects() {
        out.push(' ');
        out.push_str(o);
    }
    out.push('\n');
    out.push_str("morphisms:");
    for m in 0..g.n_morphisms() {
        out.push_str(&format!(
            " {}:{}->{}",
            g.morphism_name(m),
            g.objects()[g.source(m)],
            g.objects()[g.target(m)]
        ));
    }
    out.push('\n');
    for p in 0..g.n_morphisms() {
        let mut entries = Vec::new();
        for q in 0..g.n_morphisms() {
            if let Some(r) = g.compose(p, q) {
                entries.push(format!(
                    "{}.{}={}",
                    g.morphism_name(p),
                    g.morphism_name(q),
                    g.morphism_name(r)
                ));
            }
        }
        if !entries.is_empty() {
            out.push_str("compose: ");
            out.push_str(&entries.join(" "));
            out.push('\n');
        }
    }
    let mut seen = BTreeSet::new();
    let mut inv_entries = Vec::new();
    for m in 0..g.n_morphisms() {
        let inv = g.inverse(m);
        if seen.contains(&m) || seen.contains(&inv) {
            continue;
        }
        seen.insert(m);
        seen.insert(inv);
        inv_entries.push(format!("{}={}", g.morphism_name(m), g.morphism_name(inv)));
    }
    out.push_str("inverses: ");
    out.push_str(&inv_entries.join(" "));
    out.push('\n');
    out
}

/// Parses an action file against a base groupoid and validates the action
/// axioms (including trueness).
pub fn parse_action(text: &str, base: &Groupoid) -> Result<GroupoidAction, ParseError> {
    let action = parse_action_raw(text, base)?;
    let report = action.validate();
    if !report.is_valid() {
        let first = &report.violations[0];
        return Err(ParseError::new(
            0,
            format!("not a true action: {}: {}", first.rule, first.witness),
        ));
    }
    Ok(action)
}

/// As [`parse_action`] but without the axiom validation.
pub fn parse_action_raw(text: &str, base: &Groupoid) -> Result<GroupoidAction, ParseError> {
    let sections = split_sections(text)?;
    let mut points: Vec<String> = Vec::new();
    for (line, payload) in sections.payloads("points") {
        for tok in payload.split_whitespace() {
            if points.iter().any(|p| p == tok) {
                return Err(ParseError::new(line, format!("duplicate point {tok}")));
            }
            points.push(tok.to_string());
        }
    }
    let mut domain: Vec<(String, Vec<String>)> = Vec::new();
    for (line, payload) in sections.payloads("domain") {
        for tok in payload.split_whitespace() {
            let Some((m, set)) = tok.split_once('=') else {
                return Err(ParseError::new(line, format!("expected m={{...}}, found `{tok}`")));
            };
            let Some(inner) = set.strip_prefix('{').and_then(|s| s.strip_suffix('}')) else {
                return Err(ParseError::new(line, format!("expected {{...}} in `{tok}`")));
            };
            if base.morphism_index(m).is_none() {
                return Err(ParseError::new(line, format!("unknown morphism {m}")));
            }
            let pts: Vec<String> = inner
                .split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(str::to_string)
                .collect();
            for p in &pts {
                if !points.iter().any(|x| x == p) {
                    return Err(ParseError::new(line, format!("unknown point {p}")));
                }
            }
            domain.push((m.to_string(), pts));
        }
    }
    let mut map: Vec<(String, String, String)> = Vec::new();
    for (line, payload) in sections.payloads("map") {
        for tok in payload.split_whitespace() {
            let Some((m, arrow)) = tok.split_once(':') else {
                return Err(ParseError::new(line, format!("expected m:x->y, found `{tok}`")));
            };
            let Some((x, y)) = arrow.split_once("->") else {
                return Err(ParseError::new(line, format!("expected x->y in `{tok}`")));
            };
            map.push((m.to_string(), x.to_string(), y.to_string()));
        }
    }
    GroupoidAction::from_parts(base.clone(), points, domain, map)
        .map_err(|e| ParseError::new(0, format!("{e}")))
}

/// Parses a structure-constant file into a finite algebra; associativity is
/// checked at construction and omitted products are zero.
pub fn parse_algebra(text: &str) -> Result<Algebra, ParseError> {
    let sections = split_sections(text)?;
    let mut names: Vec<String> = Vec::new();
    for (line, payload) in sections.payloads("basis") {
        for tok in payload.split_whitespace() {
            if names.iter().any(|n| n == tok) {
                return Err(ParseError::new(line, format!("duplicate basis label {tok}")));
            }
            names.push(tok.to_string());
        }
    }
    if names.is_empty() {
        return Err(ParseError::new(0, "no basis declared"));
    }
    let mut table: BTreeMap<(String, String), Element> = BTreeMap::new();
    for (line, payload) in sections.payloads("mul") {
        let Some((lhs, rhs)) = payload.split_once('=') else {
            return Err(ParseError::new(line, "expected `ei.ej = ...`"));
        };
        let Some((a, b)) = lhs.trim().split_once('.') else {
            return Err(ParseError::new(line, "expected `ei.ej` on the left"));
        };
        let (a, b) = (a.trim(), b.trim());
        for n in [a, b] {
            if !names.iter().any(|x| x == n) {
                return Err(ParseError::new(line, format!("unknown basis label {n}")));
            }
        }
        let mut value = Element::zero();
        for term in rhs.split('+') {
            let term = term.trim();
            if term.is_empty() || term == "0" {
                continue;
            }
            let (coeff, label) = match term.split_once('*') {
                Some((c, l)) => {
                    let c = Scalar::parse(c.trim()).ok_or_else(|| {
                        ParseError::new(line, format!("bad coefficient `{c}`"))
                    })?;
                    (c, l.trim())
                }
                None => (Scalar::one(), term),
            };
            if !names.iter().any(|x| x == label) {
                return Err(ParseError::new(line, format!("unknown basis label {label}")));
            }
            value.add_term(&Label::atom(label), &coeff);
        }
        if table
            .insert((a.to_string(), b.to_string()), value)
            .is_some()
        {
            return Err(ParseError::new(line, format!("duplicate product {a}.{b}")));
        }
    }
    let basis = Basis::new(names.iter().map(Label::atom).collect());
    let rule: ProductRule = {
        let table = Rc::new(table);
        Rc::new(move |x: &Label, y: &Label| {
            table
                .get(&(
                    x.as_atom().unwrap_or_default().to_string(),
                    y.as_atom().unwrap_or_default().to_string(),
                ))
                .cloned()
                .unwrap_or_default()
        })
    };
    Algebra::finite("file algebra", basis, rule)
        .map_err(|e| ParseError::new(0, format!("{e}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    const P2_FILE: &str = "\
objects: 1 2
morphisms: id1:1->1 id2:2->2 p:1->2 q:2->1
compose: q.p=id1 p.q=id2 id1.id1=id1 id2.id2=id2 p.id1=p id2.p=p q.id2=q id1.q=q
inverses: p=q
";

    #[test]
    fn parse_p2_sample() {
        let g = parse_groupoid(P2_FILE).unwrap();
        assert_eq!(g.n_objects(), 2);
        assert_eq!(g.n_morphisms(), 4);
        assert!(g.validate().is_valid());
        let p = g.morphism_index("p").unwrap();
        assert_eq!(g.objects()[g.source(p)], "1");
        assert_eq!(g.objects()[g.target(p)], "2");
    }

    #[test]
    fn non_composable_entry_is_a_semantic_error() {
        let bad = "\
objects: 1 2
morphisms: id1:1->1 id2:2->2 p:1->2 q:2->1
compose: p.q=id2 q.p=id1 p.p=id1
inverses: p=q
";
        let err = parse_groupoid(bad).unwrap_err();
        assert!(err.message.contains("source(p) != target(q)"), "{err}");
    }

    #[test]
    fn missing_composition_fails_validation() {
        let bad = "\
objects: 1 2
morphisms: id1:1->1 id2:2->2 p:1->2 q:2->1
compose: p.q=id2
inverses: p=q
";
        let err = parse_groupoid(bad).unwrap_err();
        assert!(err.message.contains("not a groupoid"), "{err}");
    }

    #[test]
    fn round_trip_is_canonical() {
        let g = parse_groupoid(P2_FILE).unwrap();
        let rendered = render_groupoid(&g);
        let g2 = parse_groupoid(&rendered).unwrap();
        assert_eq!(render_groupoid(&g2), rendered);
        // cyclic group needs identity inference among two endomorphisms
        let z2 = "\
objects: o
morphisms: e:o->o g:o->o
compose: g.g=e e.e=e e.g=g g.e=g
";
        let g = parse_groupoid(z2).unwrap();
        assert_eq!(g.n_morphisms(), 2);
        let rendered = render_groupoid(&g);
        assert_eq!(render_groupoid(&parse_groupoid(&rendered).unwrap()), rendered);
    }

    #[test]
    fn action_file() {
        let g = parse_groupoid(P2_FILE).unwrap();
        let action = "\
points: x1 x2
domain: id1={x1} id2={x2} p={x1} q={x2}
map: p:x1->x2 q:x2->x1 id1:x1->x1 id2:x2->x2
";
        let a = parse_action(action, &g).unwrap();
        assert!(a.validate().is_valid());
        // non-true action rejected
        let bad = "\
points: x1 x2
domain: id1={x1} id2={x2} p={x1} q={x2}
map: p:x1->x1 q:x2->x2 id1:x1->x1 id2:x2->x2
";
        assert!(parse_action(bad, &g).is_err());
    }

    #[test]
    fn algebra_file() {
        let text = "\
basis: e n
mul: e.e = 1*e
mul: e.n = n
mul: n.e = n
";
        let a = parse_algebra(text).unwrap();
        assert_eq!(a.dim(), 2);
        assert!(a.check_idempotent());
        assert!(a.check_nondegenerate());
        // rational coefficients
        let text = "\
basis: x
mul: x.x = 1/2*x
";
        let a = parse_algebra(text).unwrap();
        let x = Element::basis(Label::atom("x"));
        assert_eq!(
            a.mul(&x, &x),
            Element::term(Label::atom("x"), Scalar::fraction(1, 2))
        );
        // a non-associative table is rejected
        let bad = "\
basis: a b
mul: a.a = b
mul: a.b = a
";
        assert!(parse_algebra(bad).is_err());
    }
}
