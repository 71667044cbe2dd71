//! Module algebras over a weak multiplier Hopf algebra and the module
//! extension theory: unital modules extend to the multiplier algebra of the
//! acting algebra, and actions on a module algebra R extend to M(R).

use alloc::format;
use alloc::rc::Rc;
use alloc::string::String;
use alloc::vec::Vec;

use crate::algebra::{tensor_elem, Algebra, Element, Multiplier};
use crate::label::{Basis, Label};
use crate::linalg::{self, SparseMat, Span};
use crate::report::{AxiomId, CheckReport, SuiteReport};
use crate::wmha::Wmha;

pub type ActionRule = Rc<dyn Fn(&Label, &Label) -> Element>;

/// An algebra R carrying a unital left action of a structure A satisfying
/// a▷(xy) = Σ (a₍₁₎▷x)(a₍₂₎▷y).
#[derive(Clone)]
pub struct ModuleAlgebra {
    pub wmha: Wmha,
    pub coeff: Algebra,
    action: ActionRule,
}

impl ModuleAlgebra {
    pub fn new(wmha: Wmha, coeff: Algebra, action: ActionRule) -> ModuleAlgebra {
        ModuleAlgebra {
            wmha,
            coeff,
            action,
        }
    }

    pub fn action_rule(&self) -> ActionRule {
        Rc::clone(&self.action)
    }

    /// a ▷ r, extended bilinearly.
    pub fn act(&self, a: &Element, r: &Element) -> Element {
        let mut out = Element::zero();
        for (la, ca) in a.iter() {
            for (lr, cr) in r.iter() {
                out.add_scaled(&(self.action)(la, lr), &(ca * cr));
            }
        }
        out
    }

    /// E ▷ (r⊗r') for the canonical idempotent of the acting structure,
    /// computed leg by leg from the materialized E.
    pub fn e_act_pair(&self, r: &Element, r2: &Element) -> Element {
        let e = self.wmha.e_elem();
        let mut out = Element::zero();
        for (l, c) in e.iter() {
            let (u, v) = l.as_pair().expect("pair label");
            out.add_scaled(
                &tensor_elem(
                    &self.act(&Element::basis(u.clone()), r),
                    &self.act(&Element::basis(v.clone()), r2),
                ),
                c,
            );
        }
        out
    }

    fn a_labels(&self) -> &[Label] {
        self.wmha.algebra().basis().expect("finite").labels()
    }

    fn r_labels(&self) -> &[Label] {
        self.coeff.basis().expect("finite").labels()
    }

    /// Def 3.2 layer: associativity, unitality, non-degeneracy and Eq (3.1),
    /// all exhaustive on finite backends.
    pub fn check_module_algebra(&self) -> SuiteReport {
        let mut suite = SuiteReport::default();
        let a_labels = self.a_labels();
        let r_labels = self.r_labels();

        let mut assoc = Vec::new();
        for a in a_labels {
            let ea = Element::basis(a.clone());
            for b in a_labels {
                let eb = Element::basis(b.clone());
                let ab = self.wmha.mul(&ea, &eb);
                for r in r_labels {
                    let er = Element::basis(r.clone());
                    let lhs = self.act(&ab, &er);
                    let rhs = self.act(&ea, &self.act(&eb, &er));
                    if lhs != rhs {
                        assoc.push(format!("({a}{b})▷{r} != {a}▷({b}▷{r})"));
                        if assoc.len() > 5 {
                            break;
                        }
                    }
                }
            }
        }
        suite.push(CheckReport::from_witnesses(AxiomId::ModuleAssociativity, assoc));

        let mut values = Vec::new();
        for a in a_labels {
            for r in r_labels {
                let v = (self.action)(a, r);
                if !v.is_zero() {
                    values.push(v);
                }
            }
        }
        let unital = linalg::span_rank(&values) == r_labels.len();
        suite.push(CheckReport::from_witnesses(
            AxiomId::ModuleUnital,
            if unital {
                Vec::new()
            } else {
                alloc::vec![format!(
                    "A▷R spans a proper subspace of dim {}",
                    linalg::span_rank(&values)
                )]
            },
        ));

        // Non-degeneracy: joint kernel of all action operators is zero.
        let r_basis = self.coeff.basis().expect("finite");
        let mut stacked = SparseMat::new(r_basis.clone());
        for (i, a) in a_labels.iter().enumerate() {
            for (j, l) in r_basis.iter().enumerate() {
                let mut row = Element::zero();
                for r in r_basis.iter() {
                    row.add_term(r, &(self.action)(a, r).get(l));
                }
                stacked.push_row(Label::atom(format!("{i}.{j}")), row);
            }
        }
        let ker = linalg::kernel_basis(&stacked);
        suite.push(CheckReport::from_witnesses(
            AxiomId::ModuleNonDegenerate,
            if ker.is_empty() {
                Vec::new()
            } else {
                alloc::vec![format!("annihilated subspace of dim {}", ker.len())]
            },
        ));

        let mut eq31 = Vec::new();
        for a in a_labels {
            let ea = Element::basis(a.clone());
            let delta = self.wmha.delta(&ea);
            for x in r_labels {
                let ex = Element::basis(x.clone());
                for y in r_labels {
                    let ey = Element::basis(y.clone());
                    let lhs = self.act(&ea, &self.coeff.mul(&ex, &ey));
                    let mut rhs = Element::zero();
                    for (l, c) in delta.iter() {
                        let (u, v) = l.as_pair().unwrap();
                        rhs.add_scaled(
                            &self.coeff.mul(
                                &self.act(&Element::basis(u.clone()), &ex),
                                &self.act(&Element::basis(v.clone()), &ey),
                            ),
                            c,
                        );
                    }
                    if lhs != rhs {
                        eq31.push(format!(
                            "{a}▷({x}{y}) = {lhs} != Σ({a}₍₁₎▷{x})({a}₍₂₎▷{y}) = {rhs}"
                        ));
                        if eq31.len() > 5 {
                            break;
                        }
                    }
                }
            }
        }
        suite.push(CheckReport::from_witnesses(AxiomId::ModuleEq31, eq31));
        suite
    }

    /// Prop 3.3: m(E▷(r⊗r')) = rr' and (y▷r)r' = r(S(y)▷r') for y in the
    /// source algebra; for unital R also a▷1 = ε_t(a)▷1.
    pub fn check_prop33(&self) -> SuiteReport {
        let mut suite = SuiteReport::default();
        let r_labels = self.r_labels();
        let a_labels = self.a_labels();

        let mut eq33 = Vec::new();
        for r in r_labels {
            let er = Element::basis(r.clone());
            for r2 in r_labels {
                let er2 = Element::basis(r2.clone());
                let projected = self.e_act_pair(&er, &er2);
                let mut value = Element::zero();
                for (l, c) in projected.iter() {
                    let (u, v) = l.as_pair().unwrap();
                    value.add_scaled(
                        &self
                            .coeff
                            .mul(&Element::basis(u.clone()), &Element::basis(v.clone())),
                        c,
                    );
                }
                let expected = self.coeff.mul(&er, &er2);
                if value != expected {
                    eq33.push(format!("m(E▷({r}⊗{r2})) = {value}, expected {expected}"));
                }
            }
        }
        // a▷1_R = ε_t(a)▷1_R on unital coefficient algebras.
        if let Some(one_r) = self.coeff.unit() {
            for a in a_labels {
                let ea = Element::basis(a.clone());
                let lhs = self.act(&ea, &one_r);
                let rhs = self.act(&self.wmha.eps_t(&ea), &one_r);
                if lhs != rhs {
                    eq33.push(format!("{a}▷1 = {lhs} != ε_t({a})▷1 = {rhs}"));
                }
            }
        }
        suite.push(CheckReport::from_witnesses(AxiomId::ModuleEq33, eq33));

        let mut eq34 = Vec::new();
        for a in a_labels {
            let y = self.wmha.eps_s(&Element::basis(a.clone()));
            let sy = self.wmha.s(&y);
            for r in r_labels {
                let er = Element::basis(r.clone());
                for r2 in r_labels {
                    let er2 = Element::basis(r2.clone());
                    let lhs = self.coeff.mul(&self.act(&y, &er), &er2);
                    let rhs = self.coeff.mul(&er, &self.act(&sy, &er2));
                    if lhs != rhs {
                        eq34.push(format!(
                            "(y▷{r}){r2} != {r}(S(y)▷{r2}) for y=ε_s({a})"
                        ));
                        if eq34.len() > 5 {
                            break;
                        }
                    }
                }
            }
        }
        suite.push(CheckReport::from_witnesses(AxiomId::ModuleEq34, eq34));
        suite
    }

    /// Prop 3.4 identities relating the action and multiplication in R:
    /// (a▷r)r' = Σ a₍₁₎▷(r·(S(a₍₂₎)▷r')) and
    /// r(a▷r') = Σ a₍₂₎▷((S⁻¹(a₍₁₎)▷r)·r').
    pub fn check_prop34(&self) -> CheckReport {
        let mut witnesses = Vec::new();
        for a in self.a_labels() {
            let ea = Element::basis(a.clone());
            let delta = self.wmha.delta(&ea);
            for r in self.r_labels() {
                let er = Element::basis(r.clone());
                for r2 in self.r_labels() {
                    let er2 = Element::basis(r2.clone());
                    let lhs1 = self.coeff.mul(&self.act(&ea, &er), &er2);
                    let mut rhs1 = Element::zero();
                    let lhs2 = self.coeff.mul(&er, &self.act(&ea, &er2));
                    let mut rhs2 = Element::zero();
                    for (l, c) in delta.iter() {
                        let (u, v) = l.as_pair().unwrap();
                        let eu = Element::basis(u.clone());
                        let ev = Element::basis(v.clone());
                        rhs1.add_scaled(
                            &self.act(
                                &eu,
                                &self.coeff.mul(&er, &self.act(&self.wmha.s(&ev), &er2)),
                            ),
                            c,
                        );
                        rhs2.add_scaled(
                            &self.act(
                                &ev,
                                &self.coeff.mul(&self.act(&self.wmha.s_inv(&eu), &er), &er2),
                            ),
                            c,
                        );
                    }
                    if lhs1 != rhs1 {
                        witnesses.push(format!("(a▷r)r' identity fails at ({a},{r},{r2})"));
                    }
                    if lhs2 != rhs2 {
                        witnesses.push(format!("r(a▷r') identity fails at ({a},{r},{r2})"));
                    }
                    if witnesses.len() > 5 {
                        return CheckReport::from_witnesses(AxiomId::ModuleExtensionMR, witnesses);
                    }
                }
            }
        }
        CheckReport::from_witnesses(AxiomId::ModuleExtensionMR, witnesses)
    }

    /// Theorem 3.1: the unique extension of the unital action to M(A).
    /// Returns the extended operator of `mu` on R; errors when the
    /// decomposition-independence fails (non-unital or degenerate module).
    pub fn extend_to_multiplier(&self, mu: &Multiplier) -> Result<Vec<(Label, Element)>, String> {
        let module = UnitalModule {
            algebra: self.wmha.algebra().clone(),
            space: self.coeff.basis().expect("finite").clone(),
            action: Rc::clone(&self.action),
        };
        module.extend_multiplier(mu)
    }

    /// Consistency checks for the M(A)-extension: agreement with the plain
    /// action on embedded elements, 1▷r = r, and the E-diagonal usage of
    /// Eq (3.3).
    pub fn check_extension_ma(&self) -> CheckReport {
        let mut witnesses = Vec::new();
        let alg = self.wmha.algebra();
        // mu = embedded basis elements agree with the plain action.
        for a in self.a_labels() {
            let ea = Element::basis(a.clone());
            let mu = Multiplier::from_element(alg, &ea);
            match self.extend_to_multiplier(&mu) {
                Err(e) => witnesses.push(format!("extension failed for {a}: {e}")),
                Ok(op) => {
                    for (v, img) in &op {
                        let direct = self.act(&ea, &Element::basis(v.clone()));
                        if *img != direct {
                            witnesses.push(format!("extension of {a} disagrees at {v}"));
                        }
                    }
                }
            }
        }
        // mu = 1 is the identity.
        match self.extend_to_multiplier(&Multiplier::identity()) {
            Err(e) => witnesses.push(format!("extension failed for 1: {e}")),
            Ok(op) => {
                for (v, img) in &op {
                    if *img != Element::basis(v.clone()) {
                        witnesses.push(format!("1▷{v} != {v}"));
                    }
                }
            }
        }
        CheckReport::from_witnesses(AxiomId::ModuleExtensionMA, witnesses)
    }

    /// Prop 3.6: the action of A on M(R), (a▷m)·r = Σ a₍₁₎▷(m(S(a₍₂₎)▷r)).
    pub fn extend_action_to_mr(&self, a: &Element, m: &Multiplier) -> Multiplier {
        let delta = self.wmha.delta(a);
        let this = self.clone();
        let m1 = m.clone();
        let d1 = delta.clone();
        let left = Rc::new(move |r: &Element| {
            let mut out = Element::zero();
            for (l, c) in d1.iter() {
                let (u, v) = l.as_pair().unwrap();
                let inner = m1.apply_left(&this.act(&this.wmha.s(&Element::basis(v.clone())), r));
                out.add_scaled(&this.act(&Element::basis(u.clone()), &inner), c);
            }
            out
        });
        let this = self.clone();
        let m2 = m.clone();
        let right = Rc::new(move |r: &Element| {
            let mut out = Element::zero();
            for (l, c) in delta.iter() {
                let (u, v) = l.as_pair().unwrap();
                let inner =
                    m2.apply_right(&this.act(&this.wmha.s_inv(&Element::basis(u.clone())), r));
                out.add_scaled(&this.act(&Element::basis(v.clone()), &inner), c);
            }
            out
        });
        Multiplier::unchecked(left, right)
    }

    /// Verifies the M(R)-extension laws: multiplier compatibility of a▷m,
    /// the module law (ab)▷m = a▷(b▷m), and a▷1 = ε_t(a) (left action;
    /// the right action is ε'_s(a) = S⁻¹(ε_t(a))).
    pub fn check_extension_mr(&self) -> CheckReport {
        let mut witnesses = Vec::new();
        let r_witnesses: Vec<Element> = self
            .r_labels()
            .iter()
            .map(|l| Element::basis(l.clone()))
            .collect();
        let mult_witnesses: Vec<Multiplier> = self
            .r_labels()
            .iter()
            .map(|l| Multiplier::from_element(&self.coeff, &Element::basis(l.clone())))
            .chain(core::iter::once(Multiplier::identity()))
            .collect();
        for a in self.a_labels() {
            let ea = Element::basis(a.clone());
            for b in self.a_labels() {
                let eb = Element::basis(b.clone());
                let ab = self.wmha.mul(&ea, &eb);
                for m in &mult_witnesses {
                    let lhs = self.extend_action_to_mr(&ab, m);
                    let rhs = self.extend_action_to_mr(&ea, &self.extend_action_to_mr(&eb, m));
                    if !lhs.eq_on(&rhs, &r_witnesses) {
                        witnesses.push(format!("(({a}{b})▷m) != ({a}▷({b}▷m))"));
                    }
                }
            }
            // multiplier law r(am)·s = r·((am)s) on witnesses
            let am = self.extend_action_to_mr(&ea, &Multiplier::identity());
            for r in &r_witnesses {
                for s in &r_witnesses {
                    let lhs = self.coeff.mul(&am.apply_right(r), s);
                    let rhs = self.coeff.mul(r, &am.apply_left(s));
                    if lhs != rhs {
                        witnesses.push(format!("a▷1 not a multiplier at a={a}"));
                    }
                }
            }
            let eps_t = self.wmha.eps_t(&ea);
            let eps_s_prime = self.wmha.eps_s_prime(&ea);
            for r in &r_witnesses {
                if am.apply_left(r) != self.act(&eps_t, r) {
                    witnesses.push(format!("({a}▷1)·r != ε_t({a})▷r"));
                }
                if am.apply_right(r) != self.act(&eps_s_prime, r) {
                    witnesses.push(format!("r·({a}▷1) != ε'_s({a})▷r"));
                }
            }
        }
        CheckReport::from_witnesses(AxiomId::ModuleExtensionMR, witnesses)
    }

    /// All module-algebra checks in one report.
    pub fn run_module_suite(&self) -> SuiteReport {
        let mut suite = self.check_module_algebra();
        for check in self.check_prop33().checks {
            suite.push(check);
        }
        suite.push(self.check_extension_ma());
        suite.push(self.check_prop34());
        suite.push(self.check_extension_mr());
        suite
    }
}

/// A unital module over a finite algebra, for the Theorem 3.1 extension
/// machinery: decompose v = Σ bᵢ▷xᵢ and act by mu▷v = Σ (mu·bᵢ)▷xᵢ.
pub struct UnitalModule {
    pub algebra: Algebra,
    pub space: Basis,
    pub action: ActionRule,
}

impl UnitalModule {
    pub fn act(&self, b: &Element, v: &Element) -> Element {
        let mut out = Element::zero();
        for (lb, cb) in b.iter() {
            for (lv, cv) in v.iter() {
                out.add_scaled(&(self.action)(lb, lv), &(cb * cv));
            }
        }
        out
    }

    /// Extends a multiplier of the acting algebra to an operator on the
    /// space, checking that the result is independent of the decomposition.
    pub fn extend_multiplier(&self, mu: &Multiplier) -> Result<Vec<(Label, Element)>, String> {
        let alg_basis = self.algebra.basis().expect("finite");
        let mut gen_pairs: Vec<(Label, Label)> = Vec::new();
        let mut gen_values: Vec<Element> = Vec::new();
        for b in alg_basis.iter() {
            for v in self.space.iter() {
                gen_pairs.push((b.clone(), v.clone()));
                gen_values.push((self.action)(b, v));
            }
        }
        let span = Span::over_basis(&gen_values, &self.space);
        if span.dim() != self.space.len() {
            return Err("module is not unital: generators do not span".into());
        }
        // Well-definedness: combinations acting to zero stay zero after mu.
        let mut gen_matrix = SparseMat::new(Basis::new(
            gen_pairs
                .iter()
                .enumerate()
                .map(|(i, _)| Label::atom(format!("g{i}")))
                .collect(),
        ));
        for v in self.space.iter() {
            let mut row = Element::zero();
            for (i, val) in gen_values.iter().enumerate() {
                row.add_term(&Label::atom(format!("g{i}")), &val.get(v));
            }
            gen_matrix.push_row(v.clone(), row);
        }
        for k in linalg::kernel_basis(&gen_matrix) {
            let mut image = Element::zero();
            for (i, (b, v)) in gen_pairs.iter().enumerate() {
                let c = k.get(&Label::atom(format!("g{i}")));
                if c.is_zero() {
                    continue;
                }
                let mb = mu.apply_left(&Element::basis(b.clone()));
                image.add_scaled(&self.act(&mb, &Element::basis(v.clone())), &c);
            }
            if !image.is_zero() {
                return Err(format!(
                    "extension is ill-defined: kernel combination maps to {image}"
                ));
            }
        }
        let mut out = Vec::new();
        for v in self.space.iter() {
            let coords = span
                .coordinates_in_generators(&Element::basis(v.clone()))
                .expect("unital module spans");
            let mut image = Element::zero();
            for (i, c) in coords.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let (b, x) = &gen_pairs[i];
                let mb = mu.apply_left(&Element::basis(b.clone()));
                image.add_scaled(&self.act(&mb, &Element::basis(x.clone())), c);
            }
            out.push((v.clone(), image));
        }
        Ok(out)
    }
}
