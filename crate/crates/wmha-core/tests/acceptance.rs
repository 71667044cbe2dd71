//! Acceptance suite: one test per criterion, each printing a pass/fail
//! line. All arithmetic is exact, so every comparison is tolerance-zero.
//!
//! Oracles are computed inside this file by direct enumeration of the
//! groupoid combinatorics and independent row reduction; they never call
//! the structure-suite code paths they are checking.

use std::collections::BTreeSet;
use std::time::Instant;

use wmha_core::action::ModuleAlgebra;
use wmha_core::algebra::{Element, Multiplier};
use wmha_core::constructions::{function_algebra, groupoid_algebra};
use wmha_core::duality::{
    check_commutation_picture, check_faithful, check_smash_on_dual_action,
    check_wmha_isomorphism, diamond_bar_span, dual_action_on_smash, dual_wmha, find_integrals,
    heisenberg, is_invariant, run_dual_suite, verify_duality_theorem, Side,
};
use wmha_core::fixtures::{build_module, build_structure, mutations, unit_indicator};
use wmha_core::groupoid::{cyclic_group, lazy_pair_groupoid, pair_groupoid, Groupoid};
use wmha_core::label::{Basis, Label};
use wmha_core::linalg::{self, SparseMat, SparseVec};
use wmha_core::report::{AxiomId, CheckStatus};
use wmha_core::scalar::Scalar;
use wmha_core::smash::{BalancedTensor, CovariantCorrespondence, SmashModule, SmashProduct};
use wmha_core::Wmha;

fn verdict(criterion: &str, pass: bool) {
    println!(
        "criterion {:<28} {}",
        criterion,
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "criterion {criterion} failed");
}

fn p2_module() -> ModuleAlgebra {
    build_module("P2-set-action").unwrap()
}

/// 1. The full axiom suite passes exhaustively on all five finite fixtures.
#[test]
fn criterion_01_axiom_suite() {
    let start = Instant::now();
    let mut all = true;
    for name in ["CZ2", "CZ3", "CP2", "KP2", "CP2-disjoint-CZ3"] {
        let w = build_structure(name).unwrap();
        let report = w.run_axiom_suite();
        // every axiom of the suite appears exactly once
        let seen: Vec<_> = report.checks.iter().map(|c| c.axiom).collect();
        assert_eq!(seen, AxiomId::structure_suite().to_vec(), "{name}");
        for check in &report.checks {
            assert_eq!(check.status, CheckStatus::Pass, "{name}: {check}");
        }
        all &= report.is_pass();
    }
    let elapsed = start.elapsed();
    assert!(
        elapsed.as_secs() < 30,
        "suite took {elapsed:?}, budget is 30 s"
    );
    verdict("1-axiom-suite", all);
}

/// Oracle for criterion 2: T1, E and G1 on CP2 enumerated directly from
/// pair-groupoid combinatorics.
fn cp2_oracle_data() -> (Groupoid, Basis, Vec<SparseVec>, Vec<SparseVec>, SparseMat) {
    let g = pair_groupoid(2).unwrap();
    let labels: Vec<Label> = g.morphism_names().iter().map(Label::atom).collect();
    let basis = Basis::new(labels.clone());
    let pair_basis = basis.tensor(&basis);
    let mut t1_images = Vec::new();
    let mut e_images = Vec::new();
    let mut t1_matrix = SparseMat::new(pair_basis.clone());
    for (ri, r) in labels.iter().enumerate() {
        for (si, s) in labels.iter().enumerate() {
            // T1(λ_r ⊗ λ_s) = λ_r ⊗ λ_{rs} when source(r) = target(s)
            let mut image = SparseVec::zero();
            if let Some(rs) = g.compose(ri, si) {
                image.set(
                    Label::pair(r.clone(), Label::atom(g.morphism_name(rs))),
                    Scalar::one(),
                );
            }
            if !image.is_zero() {
                t1_images.push(image.clone());
            }
            t1_matrix.push_row(Label::pair(r.clone(), s.clone()), image);
            // E(λ_r ⊗ λ_s) = λ_r ⊗ λ_s when target(r) = target(s)
            if g.target(ri) == g.target(si) {
                e_images.push(SparseVec::basis(Label::pair(r.clone(), s.clone())));
            }
        }
    }
    (g, basis, t1_images, e_images, t1_matrix)
}

/// 2. Rank facts on CP2: dim image(T1) = dim E(A⊗A) = 8 and
/// dim Ker(T1) = dim (1−G1)(A⊗A) = 8.
#[test]
fn criterion_02_rank_facts() {
    let (g, basis, t1_images, e_images, t1_matrix_oracle) = cp2_oracle_data();
    assert_eq!(linalg::span_rank(&t1_images), 8);
    assert_eq!(linalg::span_rank(&e_images), 8);
    assert!(linalg::span_equal(&t1_images, &e_images));
    // The transposed convention: the oracle matrix rows are indexed by the
    // input pairs, columns by the image coordinates; the kernel of the map
    // itself comes from the column matrix.
    let pair_basis = basis.tensor(&basis);
    let t1_as_map = SparseMat::from_map(&pair_basis, &pair_basis, |l| {
        let (r, s) = l.as_pair().unwrap();
        let (ri, si) = (
            g.morphism_index(r.as_atom().unwrap()).unwrap(),
            g.morphism_index(s.as_atom().unwrap()).unwrap(),
        );
        match g.compose(ri, si) {
            Some(rs) => SparseVec::basis(Label::pair(
                r.clone(),
                Label::atom(g.morphism_name(rs)),
            )),
            None => SparseVec::zero(),
        }
    });
    let kernel = linalg::kernel_basis(&t1_as_map);
    assert_eq!(kernel.len(), 8);
    assert_eq!(linalg::rank(&t1_matrix_oracle), 8);
    // (1−G1) with G1(λ_r⊗λ_s) = [rs composable]·λ_r⊗λ_s
    let mut one_minus_g1_images = Vec::new();
    for r in 0..g.n_morphisms() {
        for s in 0..g.n_morphisms() {
            if g.compose(r, s).is_none() {
                one_minus_g1_images.push(SparseVec::basis(Label::pair(
                    Label::atom(g.morphism_name(r)),
                    Label::atom(g.morphism_name(s)),
                )));
            }
        }
    }
    assert_eq!(linalg::span_rank(&one_minus_g1_images), 8);
    assert!(linalg::span_equal(&kernel, &one_minus_g1_images));

    // The suite path agrees with the oracle.
    let w = build_structure("CP2").unwrap();
    let mut suite_t1 = Vec::new();
    let mut suite_e = Vec::new();
    for a in w.algebra().basis().unwrap().iter() {
        for b in w.algebra().basis().unwrap().iter() {
            let im = w.t1(&Element::basis(a.clone()), &Element::basis(b.clone()));
            if !im.is_zero() {
                suite_t1.push(im);
            }
            let e = w.e_left(&Element::basis(Label::pair(a.clone(), b.clone())));
            if !e.is_zero() {
                suite_e.push(e);
            }
        }
    }
    assert!(linalg::span_equal(&suite_t1, &t1_images));
    assert!(linalg::span_equal(&suite_e, &e_images));
    verdict("2-rank-facts", true);
}

/// 3. The integral solver on CP2 returns exactly the functionals supported
/// on units; the unit indicator is two-sided invariant and faithful.
#[test]
fn criterion_03_integrals() {
    let g = pair_groupoid(2).unwrap();
    let w = build_structure("CP2").unwrap();
    let left = find_integrals(&w, Side::Left);
    let right = find_integrals(&w, Side::Right);
    assert_eq!(left.len(), 2);
    assert_eq!(right.len(), 2);
    // Oracle: the space of functionals supported on the units, enumerated
    // directly from the groupoid.
    let oracle: Vec<SparseVec> = g
        .units()
        .map(|e| SparseVec::basis(Label::atom(g.morphism_name(e))))
        .collect();
    assert!(linalg::span_equal(&left, &oracle));
    assert!(linalg::span_equal(&right, &oracle));
    let phi = unit_indicator(&g);
    assert!(is_invariant(&w, &phi, Side::Left));
    assert!(is_invariant(&w, &phi, Side::Right));
    assert!(check_faithful(&w, core::slice::from_ref(&phi)));
    verdict("3-integrals", true);
}

/// 4. dual(ℂG) is isomorphic to K(G) for G in {Z2, Z3, P2}, matching all
/// structure constants under the δ-basis identification.
#[test]
fn criterion_04_dual_constructions() {
    let start = Instant::now();
    let mut all = true;
    for (gname, g) in [
        ("Z2", cyclic_group(2).unwrap()),
        ("Z3", cyclic_group(3).unwrap()),
        ("P2", pair_groupoid(2).unwrap()),
    ] {
        let w = groupoid_algebra(&g);
        let dp = dual_wmha(&w, &unit_indicator(&g)).unwrap();
        let k = function_algebra(&g);
        let report = check_wmha_isomorphism(&dp.dual, &k, &|om| dp.functional_of(om));
        assert!(report.is_ok(), "dual(C{gname}) vs K({gname}): {report}");
        let suite = run_dual_suite(&dp);
        assert!(suite.is_pass(), "dual pair for {gname}: {suite}");
        all &= report.is_ok() && suite.is_pass();
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 10, "duals took {elapsed:?}, budget 10 s");
    verdict("4-dual-constructions", all);
}

/// 5. The three module-algebra fixtures pass the full module suite
/// (Def 3.2, Eq 3.3/3.4, the M(A)-extension and the M(R)-extension laws).
#[test]
fn criterion_05_module_algebras() {
    let mut all = true;
    for name in ["trivial-action", "P2-set-action", "adjoint-action"] {
        let m = build_module(name).unwrap();
        let report = m.run_module_suite();
        assert!(report.is_pass(), "{name}: {report}");
        all &= report.is_pass();
    }
    verdict("5-module-algebras", all);
}

/// 6. The smash layer for K(X) # CP2: associativity, the Prop 4.2
/// projection identities, non-degeneracy, the balanced-tensor isomorphism,
/// the π-map identities, and the covariant correspondence round trips.
#[test]
fn criterion_06_smash_layer() {
    let m = p2_module();
    let s = SmashProduct::new(&m).unwrap();
    let suite = s.run_smash_suite();
    assert!(suite.is_pass(), "{suite}");
    let t = BalancedTensor::new(&m);
    assert_eq!(t.dim(), s.dim());
    let r = t.check(&s);
    assert!(r.is_ok(), "{r}");
    // covariant correspondence on two fixture modules
    let corr = CovariantCorrespondence::new(&s).unwrap();
    let alg = s.algebra.clone();
    let self_module = SmashModule {
        space: s.algebra.basis().unwrap().clone(),
        action: std::rc::Rc::new(move |xi: &Label, v: &Label| {
            alg.mul(&Element::basis(xi.clone()), &Element::basis(v.clone()))
        }),
    };
    assert!(corr.check_round_trip(&self_module).is_ok());
    let m2 = m.clone();
    let s2 = s.clone();
    let r_module = SmashModule {
        space: m.coeff.basis().unwrap().clone(),
        action: std::rc::Rc::new(move |xi: &Label, v: &Label| {
            let z = s2.lift(&Element::basis(xi.clone()));
            let mut out = Element::zero();
            for (l, c) in z.iter() {
                let (r, a) = l.as_pair().unwrap();
                let av = m2.act(&Element::basis(a.clone()), &Element::basis(v.clone()));
                out.add_scaled(&m2.coeff.mul(&Element::basis(r.clone()), &av), c);
            }
            out
        }),
    };
    assert!(corr.check_round_trip(&r_module).is_ok());
    // universal property against the smash product itself
    let report = s.check_universal_property(
        &s.algebra,
        &|a: &Element| s.pi_a(a),
        &|r: &Element| s.pi_r(r),
    );
    assert!(report.is_ok(), "{report}");
    // deliberately swapped hypothesis is rejected
    let swapped = s.check_universal_property(
        &s.algebra,
        &|a: &Element| s.pi_r(&pi_a_abuse(&s, a)),
        &|r: &Element| s.pi_a(&pi_r_abuse(&s, r)),
    );
    assert!(!swapped.is_ok(), "swapped hypothesis must be rejected");
    verdict("6-smash-layer", true);
}

// Size-mismatched role swap used to violate the universal-property
// hypothesis: reinterpret coordinates through truncation/padding.
fn pi_a_abuse(s: &SmashProduct, a: &Element) -> Element {
    let r_basis = s.module.coeff.basis().unwrap();
    let mut out = Element::zero();
    for (i, l) in s.module.wmha.algebra().basis().unwrap().iter().enumerate() {
        let c = a.get(l);
        if !c.is_zero() {
            out.add_term(r_basis.label(i % r_basis.len()), &c);
        }
    }
    out
}

fn pi_r_abuse(s: &SmashProduct, r: &Element) -> Element {
    let a_basis = s.module.wmha.algebra().basis().unwrap();
    let mut out = Element::zero();
    for (i, l) in s.module.coeff.basis().unwrap().iter().enumerate() {
        let c = r.get(l);
        if !c.is_zero() {
            out.add_term(a_basis.label(i), &c);
        }
    }
    out
}

/// 7. The Heisenberg realization: A#_ÊÂ for CZ2 has dimension 4 (the full
/// 2x2 matrix algebra) and θ is a multiplicative bijection onto A⋄̄Â; for
/// CP2 both dimensions agree and θ is verified. Both sides of each rank
/// fact are computed independently.
#[test]
fn criterion_07_heisenberg() {
    // CZ2 (Hopf case): dimension 4, operator span = all of End(A).
    let g = cyclic_group(2).unwrap();
    let w = groupoid_algebra(&g);
    let dp = dual_wmha(&w, &unit_indicator(&g)).unwrap();
    let h = heisenberg(&dp).unwrap();
    assert_eq!(h.dim_smash, 4);
    assert_eq!(h.dim_diamond_bar, 4);
    assert!(h.check_span(&dp).is_ok());
    assert!(h.check_theta(&dp).is_ok());
    // independent rank oracle: flatten the Heisenberg operators and
    // row-reduce; in the Hopf case the span must be the full matrix algebra
    let basis = w.algebra().basis().unwrap().clone();
    let flat: Vec<Element> = h
        .smash
        .carrier_witnesses()
        .iter()
        .map(|xi| {
            let m = h.operator(&dp, xi);
            linalg::flatten_operator(&basis, |l| m.apply(&Element::basis(l.clone())))
        })
        .collect();
    assert_eq!(linalg::span_rank(&flat), 4);
    // A⋄̄Â equals the full diamond algebra in the Hopf case.
    let full: Vec<Element> = {
        let mut v = Vec::new();
        for a in basis.iter() {
            for om in dp.dual.algebra().basis().unwrap().iter() {
                v.push(Element::basis(Label::pair(a.clone(), om.clone())));
            }
        }
        v
    };
    assert!(linalg::span_equal(&diamond_bar_span(&dp), &full));

    // CP2: dims agree, θ verified, plus Prop 5.1/5.2/5.3 pictures.
    let g = pair_groupoid(2).unwrap();
    let w = groupoid_algebra(&g);
    let dp = dual_wmha(&w, &unit_indicator(&g)).unwrap();
    let h = heisenberg(&dp).unwrap();
    assert_eq!(h.dim_smash, h.dim_diamond_bar);
    assert!(h.check_span(&dp).is_ok());
    assert!(h.check_theta(&dp).is_ok());
    assert!(check_smash_on_dual_action(&dp).is_ok());
    assert!(check_commutation_picture(&dp).is_ok());
    verdict("7-heisenberg", true);
}

/// 8. The duality theorem at desk scale, with the Hopf and weak-Hopf
/// corollary reductions.
#[test]
fn criterion_08_duality_theorem() {
    let start = Instant::now();
    // CZ2 with R = K(Z2): both sides dimension 8, explicit bijective
    // algebra homomorphism (the factorized rank-one route).
    let m = build_module("Z2-translation-action").unwrap();
    let s = SmashProduct::new(&m).unwrap();
    let g = cyclic_group(2).unwrap();
    let dp = dual_wmha(&m.wmha, &unit_indicator(&g)).unwrap();
    let report = verify_duality_theorem(&s, &dp).unwrap();
    assert_eq!(report.dim_bismash, 8);
    assert_eq!(report.dim_rhs, 8);
    assert!(report.spans_equal, "{report:?}");
    assert!(report.iso_verified, "{report:?}");
    assert!(report.is_pass(), "{report:?}");
    // Corollary 6.6 shape: dim R·(dim A)² = 2·4 = 8 in the Hopf case.
    assert_eq!(
        report.dim_bismash,
        m.coeff.dim() * m.wmha.algebra().dim() * m.wmha.algebra().dim()
    );

    // CP2 with R = K(X): operator spans agree and the induced map is an
    // isomorphism (balanced dimensions).
    let m = p2_module();
    let s = SmashProduct::new(&m).unwrap();
    let g = pair_groupoid(2).unwrap();
    let dp = dual_wmha(&m.wmha, &unit_indicator(&g)).unwrap();
    let report = verify_duality_theorem(&s, &dp).unwrap();
    assert_eq!(report.dim_bismash, report.dim_rhs);
    assert!(report.spans_equal, "{report:?}");
    assert!(report.iso_verified, "{report:?}");

    // Corollary 6.5 reduction on the weak-Hopf fixture: the bi-smash action
    // route α((x#h)#φ)(y#g) = (x#h)(y#(φ⇀g)) agrees with the library's
    // dual-action route, exhaustively over generators.
    let outer = dual_action_on_smash(&s, &dp).unwrap();
    let bismash = SmashProduct::new(&outer).unwrap();
    let outer_rule = outer.action_rule();
    for xi2 in bismash.carrier_witnesses() {
        let z = bismash.lift(&xi2);
        for eta in s.carrier_witnesses() {
            // library route: the solved dual-action operator, then multiply
            let mut lhs = Element::zero();
            for (l, c) in z.iter() {
                let (inner, om) = l.as_pair().unwrap();
                let mut image = Element::zero();
                for (el, ec) in eta.iter() {
                    image.add_scaled(&outer_rule(om, el), ec);
                }
                lhs.add_scaled(&s.algebra.mul(&Element::basis(inner.clone()), &image), c);
            }
            // direct Corollary 6.5 route: (r#a)(r' # ω▷a') freshly computed
            // through the pairing action and the E-projection
            let mut rhs = Element::zero();
            for (l, c) in z.iter() {
                let (inner, om) = l.as_pair().unwrap();
                let eta_rxa = s.lift(&eta);
                let mut twisted = Element::zero();
                for (pl, pc) in eta_rxa.iter() {
                    let (r2, a2) = pl.as_pair().unwrap();
                    let acted = dp.act_on_primal_left(
                        &Element::basis(om.clone()),
                        &Element::basis(a2.clone()),
                    );
                    for (al, ac) in acted.iter() {
                        twisted.add_term(&Label::pair(r2.clone(), al.clone()), &(pc * ac));
                    }
                }
                let twisted = s.project(&twisted);
                let product = s.mul_rxa(&s.lift(&Element::basis(inner.clone())), &twisted);
                rhs.add_scaled(&s.to_carrier(&product).expect("stays in carrier"), c);
            }
            assert_eq!(lhs, rhs, "Corollary 6.5 reduction fails");
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 60, "duality took {elapsed:?}, budget 60 s");
    verdict("8-duality-theorem", true);
}

/// 9. Lazy backend: multiplier compatibility and E-projector idempotency
/// hold on at least 200 seeded samples over the pair groupoid on the
/// naturals (truncation 50), and E preserves finite support.
#[test]
fn criterion_09_lazy_backend() {
    let w = wmha_core::constructions::lazy_groupoid_algebra(&lazy_pair_groupoid(), 50);
    let report = w.run_sampled_suite(200, 0);
    for axiom in [
        AxiomId::MultiplierCompat,
        AxiomId::EIdempotent,
        AxiomId::FiniteSupport,
        AxiomId::Coassociativity,
        AxiomId::Counit,
        AxiomId::Antipode23,
    ] {
        let check = report.find(axiom).expect("axiom in report");
        assert_eq!(
            check.status,
            CheckStatus::SampledPass,
            "lazy check {axiom}: {check}"
        );
    }
    // E applied to finite-support elements returns finite support, with the
    // the target-match indicator on elementary tensors.
    let z = Element::basis(Label::pair(Label::atom("(1,2)"), Label::atom("(3,2)")));
    assert_eq!(w.e_left(&z), z);
    let z = Element::basis(Label::pair(Label::atom("(1,2)"), Label::atom("(2,3)")));
    assert!(w.e_left(&z).is_zero());
    let mut big = Element::zero();
    for i in 0..50 {
        big.add_term(
            &Label::pair(
                Label::atom(format!("({i},7)")),
                Label::atom(format!("({},7)", i + 1)),
            ),
            &Scalar::one(),
        );
    }
    let image = w.e_left(&big);
    assert!(image.len() <= big.len());
    verdict("9-lazy-backend", true);
}

/// 10. Mutation soundness: each single-entry corruption in the shipped
/// matrix is detected by exactly its expected axiom set, and every axiom of
/// the suite is covered by at least one corruption.
#[test]
fn criterion_10_mutation_soundness() {
    let mut covered: BTreeSet<&str> = BTreeSet::new();
    for m in mutations() {
        let w: Wmha = (m.build)();
        let report = w.run_axiom_suite();
        let failing: BTreeSet<&str> = report.failing().iter().map(|a| a.as_str()).collect();
        let expected: BTreeSet<&str> = m.expected_failures.iter().map(|a| a.as_str()).collect();
        assert_eq!(failing, expected, "mutation {}", m.id);
        covered.extend(expected);
    }
    for axiom in AxiomId::structure_suite() {
        assert!(covered.contains(axiom.as_str()), "axiom {axiom} uncovered");
    }
    verdict("10-mutation-soundness", true);
}

/// Biduality, checked alongside the acceptance criteria: the double dual of
/// each finite fixture is isomorphic to the fixture itself under the
/// canonical evaluation map.
#[test]
fn biduality_on_finite_fixtures() {
    for name in ["CZ2", "CZ3", "CP2", "KP2", "CP2-disjoint-CZ3"] {
        let w = build_structure(name).unwrap();
        let integrals = find_integrals(&w, Side::Left);
        let mut phi = Element::zero();
        for p in &integrals {
            phi.add_scaled(p, &Scalar::one());
        }
        assert!(
            check_faithful(&w, core::slice::from_ref(&phi)),
            "{name}: default integral not faithful"
        );
        let dp = dual_wmha(&w, &phi).unwrap();
        let dual_integrals = find_integrals(&dp.dual, Side::Left);
        let mut psi = Element::zero();
        for p in &dual_integrals {
            psi.add_scaled(p, &Scalar::one());
        }
        assert!(check_faithful(&dp.dual, core::slice::from_ref(&psi)));
        let ddp = dual_wmha(&dp.dual, &psi).unwrap();
        let eval = |a: &Element| -> Element {
            let mut values = Element::zero();
            for l in dp.dual.algebra().basis().unwrap().iter() {
                values.add_term(l, &dp.pair(a, &Element::basis(l.clone())));
            }
            ddp.to_dual_coords(&values).expect("evaluation lands in the bidual")
        };
        let report = check_wmha_isomorphism(&w, &ddp.dual, &eval);
        assert!(report.is_ok(), "{name}: {report}");
    }
}

/// The constructions pairing invariant: the product constants of K(G) are
/// dual to the coproduct constants of CG under ⟨λ_p, δ_q⟩ = [p=q].
#[test]
fn pairing_duality_of_constructions() {
    for g in [cyclic_group(3).unwrap(), pair_groupoid(2).unwrap()] {
        let cg = groupoid_algebra(&g);
        let kg = function_algebra(&g);
        let pair = |x: &Element, f: &Element| -> Scalar {
            let mut out = Scalar::zero();
            for (l, c) in x.iter() {
                let v = f.get(l);
                if !v.is_zero() {
                    out = out + (c * &v);
                }
            }
            out
        };
        let labels: Vec<Label> = g.morphism_names().iter().map(Label::atom).collect();
        for p in &labels {
            let ep = Element::basis(p.clone());
            for q in &labels {
                let eq = Element::basis(q.clone());
                for u in &labels {
                    let eu = Element::basis(u.clone());
                    // ⟨λ_pλ_q, δ_u⟩ = ⟨λ_p⊗λ_q, Δ(δ_u)⟩
                    let lhs = pair(&cg.mul(&ep, &eq), &eu);
                    let delta_u = kg.delta(&eu);
                    let mut rhs = Scalar::zero();
                    for (l, c) in delta_u.iter() {
                        let (x, y) = l.as_pair().unwrap();
                        rhs = rhs
                            + &(&(c * &pair(&ep, &Element::basis(x.clone())))
                                * &pair(&eq, &Element::basis(y.clone())));
                    }
                    assert_eq!(lhs, rhs);
                    // ⟨λ_p, δ_uδ_q⟩ = ⟨Δ(λ_p), δ_u⊗δ_q⟩
                    let lhs = pair(&ep, &kg.mul(&eu, &eq));
                    let delta_p = cg.delta(&ep);
                    let mut rhs = Scalar::zero();
                    for (l, c) in delta_p.iter() {
                        let (x, y) = l.as_pair().unwrap();
                        rhs = rhs
                            + &(&(c * &pair(&Element::basis(x.clone()), &eu))
                                * &pair(&Element::basis(y.clone()), &eq));
                    }
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }
}

/// Multiplier-extension consistency for the module fixtures: mu = E acting
/// diagonally matches the Eq 3.3 usage (Prop 3.3 setup).
#[test]
fn extension_e_diagonal_matches_eq33() {
    let m = p2_module();
    // extend the multipliers E₍₁₎, applied leg-wise: Σ (E₍₁₎▷r)(E₍₂₎▷r')
    // must multiply back to rr'.
    let e = m.wmha.e_elem();
    let r_basis = m.coeff.basis().unwrap().clone();
    for r in r_basis.iter() {
        for r2 in r_basis.iter() {
            let mut acc = Element::zero();
            for (l, c) in e.iter() {
                let (u, v) = l.as_pair().unwrap();
                let left = m
                    .extend_to_multiplier(&Multiplier::from_element(
                        m.wmha.algebra(),
                        &Element::basis(u.clone()),
                    ))
                    .unwrap();
                let right = m
                    .extend_to_multiplier(&Multiplier::from_element(
                        m.wmha.algebra(),
                        &Element::basis(v.clone()),
                    ))
                    .unwrap();
                let lr = left
                    .iter()
                    .find(|(l2, _)| l2 == r)
                    .map(|(_, img)| img.clone())
                    .unwrap();
                let rr = right
                    .iter()
                    .find(|(l2, _)| l2 == r2)
                    .map(|(_, img)| img.clone())
                    .unwrap();
                acc.add_scaled(&m.coeff.mul(&lr, &rr), c);
            }
            let expected = m
                .coeff
                .mul(&Element::basis(r.clone()), &Element::basis(r2.clone()));
            assert_eq!(acc, expected);
        }
    }
}
