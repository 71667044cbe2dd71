//! Named fixtures exposed to the command line and the test suites, plus the
//! single-entry corruption matrix used for mutation-soundness testing.

use alloc::rc::Rc;
use alloc::string::ToString;
use alloc::vec::Vec;

use crate::action::ModuleAlgebra;
use crate::algebra::Element;
use crate::constructions::{
    adjoint_module_algebra, function_algebra, groupoid_algebra, lazy_groupoid_algebra,
    set_action_module_algebra, trivial_module_algebra,
};
use crate::groupoid::{
    cyclic_group, disjoint_union, lazy_pair_groupoid, pair_groupoid, translation_action, Groupoid,
    GroupoidAction,
};
use crate::label::Label;
use crate::report::AxiomId;
use crate::scalar::Scalar;
use crate::wmha::{LinMap, ScalarMap, TMap, Wmha};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FixtureKind {
    /// A finite weak multiplier Hopf algebra.
    Structure,
    /// A module algebra over a finite structure.
    Module,
    /// A lazily presented structure (sampled checks only).
    Lazy,
}

#[derive(Clone)]
pub struct FixtureInfo {
    pub name: &'static str,
    pub description: &'static str,
    pub kind: FixtureKind,
}

/// Stable registry order; the CLI lists exactly these.
pub fn registry() -> Vec<FixtureInfo> {
    alloc::vec![
        FixtureInfo {
            name: "CZ2",
            description: "group algebra of the cyclic group of order 2 (Hopf case)",
            kind: FixtureKind::Structure,
        },
        FixtureInfo {
            name: "CZ3",
            description: "group algebra of the cyclic group of order 3 (Hopf case)",
            kind: FixtureKind::Structure,
        },
        FixtureInfo {
            name: "CP2",
            description: "groupoid algebra of the pair groupoid on 2 objects",
            kind: FixtureKind::Structure,
        },
        FixtureInfo {
            name: "KP2",
            description: "function algebra of the pair groupoid on 2 objects",
            kind: FixtureKind::Structure,
        },
        FixtureInfo {
            name: "CP2-disjoint-CZ3",
            description: "groupoid algebra of the disjoint union of P2 and Z3",
            kind: FixtureKind::Structure,
        },
        FixtureInfo {
            name: "P2-set-action",
            description: "K(X) over CP2 for the true action of P2 on two points",
            kind: FixtureKind::Module,
        },
        FixtureInfo {
            name: "trivial-action",
            description: "the target algebra of CP2 with a ▷ ε_t(b) = ε_t(ab)",
            kind: FixtureKind::Module,
        },
        FixtureInfo {
            name: "adjoint-action",
            description: "the centralizer A0 of CP2 under Σ a₍₁₎ x S(a₍₂₎)",
            kind: FixtureKind::Module,
        },
        FixtureInfo {
            name: "Z2-translation-action",
            description: "K(Z2) over CZ2 for the translation action (Hopf case)",
            kind: FixtureKind::Module,
        },
        FixtureInfo {
            name: "lazy-pairN",
            description: "groupoid algebra of the pair groupoid on the naturals (sampled)",
            kind: FixtureKind::Lazy,
        },
    ]
}

pub fn find(name: &str) -> Option<FixtureInfo> {
    registry().into_iter().find(|f| f.name == name)
}

/// Closest registry name by edit-distance, for error messages.
pub fn nearest(name: &str) -> &'static str {
    registry()
        .into_iter()
        .min_by_key(|f| edit_distance(name, f.name))
        .map(|f| f.name)
        .unwrap_or("CP2")
}

fn edit_distance(a: &str, b: &str) -> usize {
    let a: Vec<char> = a.chars().collect();
    let b: Vec<char> = b.chars().collect();
    let mut prev: Vec<usize> = (0..=b.len()).collect();
    for (i, ca) in a.iter().enumerate() {
        let mut cur = alloc::vec![i + 1];
        for (j, cb) in b.iter().enumerate() {
            let cost = if ca.eq_ignore_ascii_case(cb) { 0 } else { 1 };
            cur.push((prev[j] + cost).min(prev[j + 1] + 1).min(cur[j] + 1));
        }
        prev = cur;
    }
    prev[b.len()]
}

pub fn p2_point_action() -> GroupoidAction {
    let g = pair_groupoid(2).expect("n >= 1");
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
    .expect("well-formed action")
}

/// Builds a structure fixture by name.
pub fn build_structure(name: &str) -> Option<Wmha> {
    match name {
        "CZ2" => Some(groupoid_algebra(&cyclic_group(2).unwrap())),
        "CZ3" => Some(groupoid_algebra(&cyclic_group(3).unwrap())),
        "CP2" => Some(groupoid_algebra(&pair_groupoid(2).unwrap())),
        "KP2" => Some(function_algebra(&pair_groupoid(2).unwrap())),
        "CP2-disjoint-CZ3" => Some(groupoid_algebra(
            &disjoint_union(&pair_groupoid(2).unwrap(), &cyclic_group(3).unwrap()).unwrap(),
        )),
        _ => None,
    }
}

/// Builds a module-algebra fixture by name.
pub fn build_module(name: &str) -> Option<ModuleAlgebra> {
    match name {
        "P2-set-action" => Some(set_action_module_algebra(&p2_point_action()).expect("true action")),
        "trivial-action" => {
            let w = groupoid_algebra(&pair_groupoid(2).unwrap());
            Some(trivial_module_algebra(&w).expect("target algebra closes"))
        }
        "adjoint-action" => {
            let w = groupoid_algebra(&pair_groupoid(2).unwrap());
            Some(adjoint_module_algebra(&w).expect("adjoint data").1)
        }
        "Z2-translation-action" => {
            let g = cyclic_group(2).unwrap();
            Some(set_action_module_algebra(&translation_action(&g)).expect("group action"))
        }
        _ => None,
    }
}

/// Builds the lazy fixture with the given sampling truncation.
pub fn build_lazy(name: &str, truncation: u64) -> Option<Wmha> {
    match name {
        "lazy-pairN" => Some(lazy_groupoid_algebra(&lazy_pair_groupoid(), truncation.max(2))),
        _ => None,
    }
}

/// The canonical faithful integral of a groupoid-algebra fixture: the
/// indicator of the units.
pub fn unit_indicator(g: &Groupoid) -> Element {
    let mut phi = Element::zero();
    for e in g.units() {
        phi.add_term(&Label::atom(g.morphism_name(e)), &Scalar::one());
    }
    phi
}

// ---- single-entry corruption matrix ------------------------------------

pub struct Mutation {
    pub id: &'static str,
    pub description: &'static str,
    /// The axioms whose checks must fail on this corruption; all other
    /// axioms must pass.
    pub expected_failures: &'static [AxiomId],
    pub build: fn() -> Wmha,
}

fn corrupt_t1(w: &Wmha, at: (Label, Label), value: Element) -> Wmha {
    let mut spec = w.spec().clone();
    let orig: TMap = Rc::clone(&spec.t1);
    spec.t1 = Rc::new(move |a: &Label, b: &Label| {
        if *a == at.0 && *b == at.1 {
            value.clone()
        } else {
            orig(a, b)
        }
    });
    Wmha::from_spec(spec)
}

fn corrupt_t3(w: &Wmha, at: (Label, Label), value: Element) -> Wmha {
    let mut spec = w.spec().clone();
    let orig: TMap = Rc::clone(spec.t3.as_ref().expect("regular"));
    spec.t3 = Some(Rc::new(move |a: &Label, b: &Label| {
        if *a == at.0 && *b == at.1 {
            value.clone()
        } else {
            orig(a, b)
        }
    }));
    Wmha::from_spec(spec)
}

fn corrupt_counit(w: &Wmha, at: Label, value: Scalar) -> Wmha {
    let mut spec = w.spec().clone();
    let orig: ScalarMap = Rc::clone(&spec.counit);
    spec.counit = Rc::new(move |a: &Label| if *a == at { value.clone() } else { orig(a) });
    Wmha::from_spec(spec)
}

fn corrupt_antipode(w: &Wmha, at: Label, value: Element) -> Wmha {
    let mut spec = w.spec().clone();
    let orig: LinMap = Rc::clone(&spec.antipode);
    spec.antipode = Rc::new(move |a: &Label| if *a == at { value.clone() } else { orig(a) });
    Wmha::from_spec(spec)
}

/// Adds `delta` to the LEFT action of E on the single tensor-basis vector
/// `at` (the right action is left untouched).
fn corrupt_e_left(w: &Wmha, at: Label, delta: Element) -> Wmha {
    let mut spec = w.spec().clone();
    let orig = Rc::clone(&spec.e_left);
    spec.e_left = Rc::new(move |z: &Element| {
        let mut out = orig(z);
        let c = z.get(&at);
        if !c.is_zero() {
            out.add_scaled(&delta, &c);
        }
        out
    });
    Wmha::from_spec(spec)
}

fn corrupt_e_right(w: &Wmha, at: Label, delta: Element) -> Wmha {
    let mut spec = w.spec().clone();
    let orig = Rc::clone(&spec.e_right);
    spec.e_right = Rc::new(move |z: &Element| {
        let mut out = orig(z);
        let c = z.get(&at);
        if !c.is_zero() {
            out.add_scaled(&delta, &c);
        }
        out
    });
    Wmha::from_spec(spec)
}

fn pair(a: &str, b: &str) -> Label {
    Label::pair(Label::atom(a), Label::atom(b))
}

fn tensor(a: &str, b: &str) -> Element {
    Element::basis(pair(a, b))
}

pub fn mutations() -> Vec<Mutation> {
    alloc::vec![
        Mutation {
            id: "counit-zero",
            description: "CP2 with ε(λ_m21) = 0",
            expected_failures: &[
                AxiomId::Counit,
                AxiomId::SourceTarget,
                AxiomId::EFormulas,
                AxiomId::Regularity,
            ],
            build: || {
                let w = build_structure("CP2").unwrap();
                corrupt_counit(&w, Label::atom("m21"), Scalar::zero())
            },
        },
        Mutation {
            id: "antipode-redirect",
            description: "CP2 with S(λ_m21) = λ_m11 instead of λ_m12",
            expected_failures: &[
                AxiomId::Antipode23,
                AxiomId::AntipodeS,
                AxiomId::EFormulas,
                AxiomId::Regularity,
            ],
            build: || {
                let w = build_structure("CP2").unwrap();
                corrupt_antipode(&w, Label::atom("m21"), Element::basis(Label::atom("m11")))
            },
        },
        Mutation {
            id: "t1-zero",
            description: "CP2 with T1(λ_m21 ⊗ λ_m11) = 0",
            expected_failures: &[
                AxiomId::CoproductHomomorphism,
                AxiomId::Counit,
                AxiomId::ERangeT1,
                AxiomId::KernelT1,
                AxiomId::Antipode23,
                AxiomId::AntipodeS,
                AxiomId::EFormulas,
                AxiomId::Regularity,
            ],
            build: || {
                let w = build_structure("CP2").unwrap();
                corrupt_t1(&w, (Label::atom("m21"), Label::atom("m11")), Element::zero())
            },
        },
        Mutation {
            id: "t1-first-leg",
            description: "CP2 with T1(λ_m21 ⊗ λ_m11) redirected to λ_m11 ⊗ λ_m21",
            expected_failures: &[
                AxiomId::CoproductHomomorphism,
                AxiomId::Coassociativity,
                AxiomId::ERangeT1,
                AxiomId::EDelta,
                AxiomId::Antipode23,
                AxiomId::EFormulas,
                AxiomId::Regularity,
            ],
            build: || {
                let w = build_structure("CP2").unwrap();
                corrupt_t1(
                    &w,
                    (Label::atom("m21"), Label::atom("m11")),
                    tensor("m11", "m21"),
                )
            },
        },
        Mutation {
            id: "e-scale",
            description: "CP2 with the left action of E doubled on λ_m21 ⊗ λ_m21",
            expected_failures: &[
                AxiomId::EIdempotent,
                AxiomId::ECoassoc,
                AxiomId::EDelta,
                AxiomId::ECanonical,
                AxiomId::KernelT1,
                AxiomId::Regularity,
            ],
            build: || {
                let w = build_structure("CP2").unwrap();
                corrupt_e_left(&w, pair("m21", "m21"), tensor("m21", "m21"))
            },
        },
        Mutation {
            id: "e-keep-left",
            description: "CP2 with E(λ_m21 ⊗ λ_m11) = λ_m21 ⊗ λ_m11 instead of 0",
            expected_failures: &[
                AxiomId::ERangeT1,
                AxiomId::ECoassoc,
                AxiomId::ECanonical,
                AxiomId::KernelT1,
                AxiomId::SourceTarget,
                AxiomId::EFormulas,
                AxiomId::Regularity,
            ],
            build: || {
                let w = build_structure("CP2").unwrap();
                corrupt_e_left(&w, pair("m21", "m11"), tensor("m21", "m11"))
            },
        },
        Mutation {
            id: "e-keep-right",
            description: "CP2 with (λ_m11 ⊗ λ_m12)E = λ_m11 ⊗ λ_m12 instead of 0",
            expected_failures: &[
                AxiomId::ERangeT2,
                AxiomId::ECoassoc,
                AxiomId::ECanonical,
                AxiomId::KernelT2,
                AxiomId::SourceTarget,
                AxiomId::EFormulas,
                AxiomId::Regularity,
            ],
            build: || {
                let w = build_structure("CP2").unwrap();
                corrupt_e_right(&w, pair("m11", "m12"), tensor("m11", "m12"))
            },
        },
        Mutation {
            id: "left-leg-collapse",
            description: "CZ3 with every T1 left leg collapsed onto the unit",
            expected_failures: &[
                AxiomId::CoproductHomomorphism,
                AxiomId::Coassociativity,
                AxiomId::ERangeT1,
                AxiomId::KernelT1,
                AxiomId::EFormulas,
                AxiomId::Fullness,
                AxiomId::Regularity,
            ],
            build: || {
                let w = build_structure("CZ3").unwrap();
                let mut spec = w.spec().clone();
                let orig: TMap = Rc::clone(&spec.t1);
                spec.t1 = Rc::new(move |a: &Label, b: &Label| {
                    let mut out = Element::zero();
                    for (l, c) in orig(a, b).iter() {
                        let (_, second) = l.as_pair().unwrap();
                        out.add_term(
                            &Label::pair(Label::atom("g0"), second.clone()),
                            c,
                        );
                    }
                    out
                });
                Wmha::from_spec(spec)
            },
        },
        Mutation {
            id: "t3-zero",
            description: "CZ2 with T3(λ_g1 ⊗ λ_g1) = 0",
            expected_failures: &[AxiomId::Regularity],
            build: || {
                let w = build_structure("CZ2").unwrap();
                corrupt_t3(&w, (Label::atom("g1"), Label::atom("g1")), Element::zero())
            },
        },
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::collections::BTreeSet;

    #[test]
    fn registry_contents() {
        let names: Vec<&str> = registry().iter().map(|f| f.name).collect();
        assert!(names.len() >= 9);
        for required in [
            "CZ2",
            "CZ3",
            "CP2",
            "KP2",
            "CP2-disjoint-CZ3",
            "P2-set-action",
            "trivial-action",
            "adjoint-action",
            "lazy-pairN",
        ] {
            assert!(names.contains(&required), "missing fixture {required}");
        }
        assert_eq!(nearest("cp2"), "CP2");
        assert_eq!(nearest("KZ2"), "CZ2");
    }

    #[test]
    fn every_axiom_covered_by_a_mutation() {
        let mut covered: BTreeSet<&str> = BTreeSet::new();
        for m in mutations() {
            for a in m.expected_failures {
                covered.insert(a.as_str());
            }
        }
        for axiom in AxiomId::structure_suite() {
            assert!(
                covered.contains(axiom.as_str()),
                "axiom {axiom} not covered by any mutation"
            );
        }
    }

    /// Each corruption is detected by exactly the expected axioms.
    #[test]
    fn mutation_soundness() {
        for m in mutations() {
            let w = (m.build)();
            let report = w.run_axiom_suite();
            let failing: BTreeSet<&str> =
                report.failing().iter().map(|a| a.as_str()).collect();
            let expected: BTreeSet<&str> =
                m.expected_failures.iter().map(|a| a.as_str()).collect();
            assert_eq!(
                failing, expected,
                "mutation {}: failing set {:?} != expected {:?}",
                m.id, failing, expected
            );
        }
    }
}
