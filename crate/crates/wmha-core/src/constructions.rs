//! Concrete structures built from groupoids: the groupoid algebra, the
//! function algebra of a finite groupoid, and the three module-algebra
//! families (trivial action on the target algebra, groupoid-set actions on
//! K(X), and the adjoint action on A₀).

use alloc::format;
use alloc::rc::Rc;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::action::{ActionRule, ModuleAlgebra};
use crate::algebra::{Algebra, AlgebraError, Element, LazyBasis, ProductRule};
use crate::groupoid::{Groupoid, GroupoidAction, LazyGroupoid};
use crate::label::{Basis, Label};
use crate::linalg::{self, SparseMat, Span};
use crate::report::{AxiomId, CheckReport, SuiteReport};
use crate::scalar::Scalar;
use crate::wmha::{LinMap, ScalarMap, TMap, Wmha, WmhaSpec};

/// The groupoid algebra of a finite groupoid: basis λ_p, convolution
/// product, Δ(λ_p) = λ_p⊗λ_p, ε ≡ 1, S(λ_p) = λ_{p⁻¹},
/// E = Σ_units λ_e⊗λ_e.
pub fn groupoid_algebra(g: &Groupoid) -> Wmha {
    assert!(g.validate().is_valid(), "invalid groupoid rejected");
    let names: Vec<Label> = g.morphism_names().iter().map(Label::atom).collect();
    let basis = Basis::new(names);
    let idx = move |g: &Groupoid, l: &Label| -> usize {
        g.morphism_index(l.as_atom().expect("atom label"))
            .expect("morphism label")
    };

    let product: ProductRule = {
        let g = g.clone();
        Rc::new(move |a: &Label, b: &Label| match g.compose(idx(&g, a), idx(&g, b)) {
            Some(r) => Element::basis(Label::atom(g.morphism_name(r))),
            None => Element::zero(),
        })
    };
    let algebra =
        Algebra::finite("groupoid algebra", basis, product).expect("convolution is associative");

    let t1: TMap = {
        let g = g.clone();
        Rc::new(move |a: &Label, b: &Label| match g.compose(idx(&g, a), idx(&g, b)) {
            Some(r) => Element::basis(Label::pair(a.clone(), Label::atom(g.morphism_name(r)))),
            None => Element::zero(),
        })
    };
    let t2: TMap = {
        let g = g.clone();
        Rc::new(move |a: &Label, b: &Label| match g.compose(idx(&g, a), idx(&g, b)) {
            Some(r) => Element::basis(Label::pair(Label::atom(g.morphism_name(r)), b.clone())),
            None => Element::zero(),
        })
    };
    // T3(a⊗b) = (1⊗b)Δ(a) = a⊗ba, T4(a⊗b) = Δ(b)(a⊗1) = ba⊗b.
    let t3: TMap = {
        let g = g.clone();
        Rc::new(move |a: &Label, b: &Label| match g.compose(idx(&g, b), idx(&g, a)) {
            Some(r) => Element::basis(Label::pair(a.clone(), Label::atom(g.morphism_name(r)))),
            None => Element::zero(),
        })
    };
    let t4: TMap = {
        let g = g.clone();
        Rc::new(move |a: &Label, b: &Label| match g.compose(idx(&g, b), idx(&g, a)) {
            Some(r) => Element::basis(Label::pair(Label::atom(g.morphism_name(r)), b.clone())),
            None => Element::zero(),
        })
    };
    let counit: ScalarMap = Rc::new(|_| Scalar::one());
    let antipode: LinMap = {
        let g = g.clone();
        Rc::new(move |a: &Label| {
            Element::basis(Label::atom(g.morphism_name(g.inverse(idx(&g, a)))))
        })
    };
    let antipode_inv = Some(Rc::clone(&antipode));
    // E = Σ_e λ_e⊗λ_e: the left action keeps pairs with equal targets, the
    // right action pairs with equal sources.
    let e_left = {
        let g = g.clone();
        Rc::new(move |z: &Element| {
            let mut out = Element::zero();
            for (l, c) in z.iter() {
                let (x, y) = l.as_pair().expect("pair label");
                if g.target(idx(&g, x)) == g.target(idx(&g, y)) {
                    out.add_term(l, c);
                }
            }
            out
        })
    };
    let e_right = {
        let g = g.clone();
        Rc::new(move |z: &Element| {
            let mut out = Element::zero();
            for (l, c) in z.iter() {
                let (x, y) = l.as_pair().expect("pair label");
                if g.source(idx(&g, x)) == g.source(idx(&g, y)) {
                    out.add_term(l, c);
                }
            }
            out
        })
    };
    Wmha::from_spec(WmhaSpec {
        algebra,
        t1,
        t2,
        t3: Some(t3),
        t4: Some(t4),
        counit,
        antipode,
        antipode_inv,
        e_left,
        e_right,
    })
}

/// The function algebra K(G) of a finite groupoid: basis δ_p with pointwise
/// product; the coproduct is dual to composition, stored as the
/// factorization enumeration Δ(δ_p) = Σ_{uv=p} δ_u⊗δ_v.
pub fn function_algebra(g: &Groupoid) -> Wmha {
    assert!(g.validate().is_valid(), "invalid groupoid rejected");
    let n = g.n_morphisms();
    let names: Vec<Label> = g.morphism_names().iter().map(Label::atom).collect();
    let basis = Basis::new(names);
    // factorizations[p] = all (u, v) with uv = p.
    let mut factorizations: Vec<Vec<(usize, usize)>> = alloc::vec![Vec::new(); n];
    for u in 0..n {
        for v in 0..n {
            if let Some(p) = g.compose(u, v) {
                factorizations[p].push((u, v));
            }
        }
    }
    let idx = move |g: &Groupoid, l: &Label| -> usize {
        g.morphism_index(l.as_atom().expect("atom label"))
            .expect("morphism label")
    };
    let product: ProductRule = Rc::new(move |a: &Label, b: &Label| {
        if a == b {
            Element::basis(a.clone())
        } else {
            Element::zero()
        }
    });
    let algebra =
        Algebra::finite("function algebra", basis, product).expect("pointwise product");

    // T1(δ_p⊗δ_q) = Σ_{uq=p} δ_u⊗δ_q
    let t1: TMap = {
        let g = g.clone();
        let facts = factorizations.clone();
        Rc::new(move |p: &Label, q: &Label| {
            let (pi, qi) = (idx(&g, p), idx(&g, q));
            let mut out = Element::zero();
            for &(u, v) in &facts[pi] {
                if v == qi {
                    out.add_term(
                        &Label::pair(Label::atom(g.morphism_name(u)), q.clone()),
                        &Scalar::one(),
                    );
                }
            }
            out
        })
    };
    // T2(δ_p⊗δ_q) = Σ_{pv=q} δ_p⊗δ_v
    let t2: TMap = {
        let g = g.clone();
        let facts = factorizations.clone();
        Rc::new(move |p: &Label, q: &Label| {
            let (pi, qi) = (idx(&g, p), idx(&g, q));
            let mut out = Element::zero();
            for &(u, v) in &facts[qi] {
                if u == pi {
                    out.add_term(
                        &Label::pair(p.clone(), Label::atom(g.morphism_name(v))),
                        &Scalar::one(),
                    );
                }
            }
            out
        })
    };
    // The algebra is commutative, so T3 = T1 and T4 = T2.
    let t3 = Some(Rc::clone(&t1));
    let t4 = Some(Rc::clone(&t2));
    let counit: ScalarMap = {
        let g = g.clone();
        Rc::new(move |p: &Label| {
            if g.is_unit(idx(&g, p)) {
                Scalar::one()
            } else {
                Scalar::zero()
            }
        })
    };
    let antipode: LinMap = {
        let g = g.clone();
        Rc::new(move |p: &Label| {
            Element::basis(Label::atom(g.morphism_name(g.inverse(idx(&g, p)))))
        })
    };
    let antipode_inv = Some(Rc::clone(&antipode));
    // E = Σ_{uv defined} δ_u⊗δ_v acts as the composability indicator.
    let e_action = {
        let g = g.clone();
        Rc::new(move |z: &Element| {
            let mut out = Element::zero();
            for (l, c) in z.iter() {
                let (x, y) = l.as_pair().expect("pair label");
                if g.compose(idx(&g, x), idx(&g, y)).is_some() {
                    out.add_term(l, c);
                }
            }
            out
        })
    };
    Wmha::from_spec(WmhaSpec {
        algebra,
        t1,
        t2,
        t3,
        t4,
        counit,
        antipode,
        antipode_inv,
        e_left: e_action.clone(),
        e_right: e_action,
    })
}

/// The groupoid algebra of a lazily presented groupoid, with sampling
/// truncated to morphism indices below `max_index`.
pub fn lazy_groupoid_algebra(g: &LazyGroupoid, max_index: u64) -> Wmha {
    let lg = g.clone();
    let contains = {
        let lg = lg.clone();
        Rc::new(move |l: &Label| l.as_atom().map(|s| (lg.contains)(s)).unwrap_or(false))
    };
    let sample = {
        let lg = lg.clone();
        Rc::new(move |s: &mut crate::sample::Sampler| Label::atom((lg.enumerate)(s.below(max_index))))
    };
    // Joint local unit: the sum of unit morphisms at every object touching
    // the supports.
    let local_unit = {
        let lg = lg.clone();
        Rc::new(move |elems: &[Element]| {
            let mut objects: Vec<String> = Vec::new();
            for e in elems {
                for l in e.support() {
                    let name = l.as_atom().expect("atom label");
                    for o in [(lg.source)(name), (lg.target)(name)] {
                        if !objects.contains(&o) {
                            objects.push(o);
                        }
                    }
                }
            }
            let mut unit = Element::zero();
            for o in objects {
                unit.add_term(&Label::atom((lg.identity)(&o)), &Scalar::one());
            }
            unit
        })
    };
    let product: ProductRule = {
        let lg = lg.clone();
        Rc::new(move |a: &Label, b: &Label| {
            match (lg.compose)(a.as_atom().unwrap(), b.as_atom().unwrap()) {
                Some(r) => Element::basis(Label::atom(r)),
                None => Element::zero(),
            }
        })
    };
    let algebra = Algebra::lazy(
        format!("lazy {}", lg.name),
        LazyBasis {
            contains,
            sample,
            local_unit: Some(local_unit),
        },
        product,
        64,
        1,
    )
    .expect("lazy convolution is associative");

    let t1: TMap = {
        let lg = lg.clone();
        Rc::new(move |a: &Label, b: &Label| {
            match (lg.compose)(a.as_atom().unwrap(), b.as_atom().unwrap()) {
                Some(r) => Element::basis(Label::pair(a.clone(), Label::atom(r))),
                None => Element::zero(),
            }
        })
    };
    let t2: TMap = {
        let lg = lg.clone();
        Rc::new(move |a: &Label, b: &Label| {
            match (lg.compose)(a.as_atom().unwrap(), b.as_atom().unwrap()) {
                Some(r) => Element::basis(Label::pair(Label::atom(r), b.clone())),
                None => Element::zero(),
            }
        })
    };
    let t3: TMap = {
        let lg = lg.clone();
        Rc::new(move |a: &Label, b: &Label| {
            match (lg.compose)(b.as_atom().unwrap(), a.as_atom().unwrap()) {
                Some(r) => Element::basis(Label::pair(a.clone(), Label::atom(r))),
                None => Element::zero(),
            }
        })
    };
    let t4: TMap = {
        let lg = lg.clone();
        Rc::new(move |a: &Label, b: &Label| {
            match (lg.compose)(b.as_atom().unwrap(), a.as_atom().unwrap()) {
                Some(r) => Element::basis(Label::pair(Label::atom(r), b.clone())),
                None => Element::zero(),
            }
        })
    };
    let counit: ScalarMap = Rc::new(|_| Scalar::one());
    let antipode: LinMap = {
        let lg = lg.clone();
        Rc::new(move |a: &Label| Element::basis(Label::atom((lg.inverse)(a.as_atom().unwrap()))))
    };
    let antipode_inv = Some(Rc::clone(&antipode));
    // E = Σ_e λ_e⊗λ_e applied to a finite-support element stays finite: it
    // keeps the target-matched (resp. source-matched) part.
    let e_left = {
        let lg = lg.clone();
        Rc::new(move |z: &Element| {
            let mut out = Element::zero();
            for (l, c) in z.iter() {
                let (x, y) = l.as_pair().expect("pair label");
                if (lg.target)(x.as_atom().unwrap()) == (lg.target)(y.as_atom().unwrap()) {
                    out.add_term(l, c);
                }
            }
            out
        })
    };
    let e_right = {
        let lg = lg.clone();
        Rc::new(move |z: &Element| {
            let mut out = Element::zero();
            for (l, c) in z.iter() {
                let (x, y) = l.as_pair().expect("pair label");
                if (lg.source)(x.as_atom().unwrap()) == (lg.source)(y.as_atom().unwrap()) {
                    out.add_term(l, c);
                }
            }
            out
        })
    };
    Wmha::from_spec(WmhaSpec {
        algebra,
        t1,
        t2,
        t3: Some(t3),
        t4: Some(t4),
        counit,
        antipode,
        antipode_inv,
        e_left,
        e_right,
    })
}

/// A subspace of a finite algebra closed under the product, carried as a
/// standalone algebra. Basis labels are inherited from the parent when the
/// canonical basis consists of single parent basis vectors, synthetic
/// otherwise.
pub struct Subalgebra {
    pub parent: Algebra,
    pub algebra: Algebra,
    inclusion: Vec<Element>,
    span: Span,
}

impl Subalgebra {
    pub fn from_span(
        parent: &Algebra,
        name: &str,
        generators: &[Element],
    ) -> Result<Subalgebra, AlgebraError> {
        let parent_basis = parent.basis().expect("finite");
        let span = Span::over_basis(generators, parent_basis);
        let vectors = span.basis_vectors();
        let single = vectors.iter().all(|v| v.len() == 1);
        let labels: Vec<Label> = vectors
            .iter()
            .enumerate()
            .map(|(i, v)| {
                if single {
                    v.support().next().unwrap().clone()
                } else {
                    Label::atom(format!("{name}{i}"))
                }
            })
            .collect();
        let sub_basis = Basis::new(labels.clone());
        // closure check + structure constants
        let mut table: Vec<Vec<Element>> = Vec::new();
        for x in &vectors {
            let mut row = Vec::new();
            for y in &vectors {
                let prod = parent.mul(x, y);
                let coords = span.coordinates(&prod).ok_or_else(|| {
                    AlgebraError::ProductNotClosed(format!("{x} * {y} = {prod}"))
                })?;
                let mut e = Element::zero();
                for (i, c) in coords.iter().enumerate() {
                    e.add_term(&labels[i], c);
                }
                row.push(e);
            }
            table.push(row);
        }
        let sub_basis_for_rule = sub_basis.clone();
        let product: ProductRule = Rc::new(move |a: &Label, b: &Label| {
            let i = sub_basis_for_rule.position(a).expect("sub label");
            let j = sub_basis_for_rule.position(b).expect("sub label");
            table[i][j].clone()
        });
        let algebra = Algebra::finite(format!("{name} (sub of {})", parent.name()), sub_basis, product)?;
        Ok(Subalgebra {
            parent: parent.clone(),
            algebra,
            inclusion: vectors,
            span,
        })
    }

    pub fn dim(&self) -> usize {
        self.inclusion.len()
    }

    /// Image in the parent of a subalgebra element.
    pub fn embed(&self, e: &Element) -> Element {
        let basis = self.algebra.basis().expect("finite");
        let mut out = Element::zero();
        for (l, c) in e.iter() {
            let i = basis.position(l).expect("sub label");
            out.add_scaled(&self.inclusion[i], c);
        }
        out
    }

    /// Expresses a parent element in subalgebra coordinates when it lies in
    /// the span.
    pub fn project(&self, e: &Element) -> Option<Element> {
        let coords = self.span.coordinates(e)?;
        let basis = self.algebra.basis().expect("finite");
        let mut out = Element::zero();
        for (i, c) in coords.iter().enumerate() {
            out.add_term(basis.label(i), c);
        }
        Some(out)
    }
}

/// §3.2.1: the target algebra ε_t(A) as an A-module algebra, with
/// a ▷ ε_t(b) = ε_t(a·ε_t(b)) = ε_t(ab).
pub fn trivial_module_algebra(w: &Wmha) -> Result<ModuleAlgebra, AlgebraError> {
    let targets = w.target_span();
    let sub = Subalgebra::from_span(w.algebra(), "t", &targets)?;
    let w2 = w.clone();
    let sub2 = Rc::new(sub);
    let sub_for_action = Rc::clone(&sub2);
    let action: ActionRule = Rc::new(move |a: &Label, r: &Label| {
        let x = sub_for_action.embed(&Element::basis(r.clone()));
        let image = w2.eps_t(&w2.mul(&Element::basis(a.clone()), &x));
        sub_for_action
            .project(&image)
            .expect("ε_t image stays in the target algebra")
    });
    Ok(ModuleAlgebra::new(w.clone(), sub2.algebra.clone(), action))
}

/// §3.2.2: the function algebra K(X) of a true groupoid action, as a module
/// algebra over the groupoid algebra via γ_p(f) = f∘α_{p⁻¹} on X_{p⁻¹}.
pub fn set_action_module_algebra(action: &GroupoidAction) -> Result<ModuleAlgebra, String> {
    let report = action.validate();
    if !report.is_valid() {
        return Err(format!("action rejected: {report}"));
    }
    let wmha = groupoid_algebra(&action.base);
    let points: Vec<Label> = action.points().iter().map(Label::atom).collect();
    let basis = Basis::new(points);
    let product: ProductRule = Rc::new(move |a: &Label, b: &Label| {
        if a == b {
            Element::basis(a.clone())
        } else {
            Element::zero()
        }
    });
    let coeff = Algebra::finite("K(X)", basis, product).expect("pointwise product");
    let act = action.clone();
    let rule: ActionRule = Rc::new(move |p: &Label, x: &Label| {
        let g = &act.base;
        let pi = g.morphism_index(p.as_atom().expect("atom")).expect("morphism");
        let xi = act.point_index(x.as_atom().expect("atom")).expect("point");
        let p_inv = g.inverse(pi);
        // γ_p(δ_x) = Σ { δ_y : y ∈ X_{p⁻¹}, α_{p⁻¹}(y) = x }
        let mut out = Element::zero();
        for (y, name) in act.points().iter().enumerate() {
            if act.apply(p_inv, y) == Some(xi) {
                out.add_term(&Label::atom(name.clone()), &Scalar::one());
            }
        }
        out
    });
    Ok(ModuleAlgebra::new(wmha, coeff, rule))
}

/// §3.2.3 data: the subalgebra A₀ (the centralizer of the source algebra)
/// and the conditional expectation π(a) = E₍₁₎ a S(E₍₂₎).
pub struct AdjointData {
    pub wmha: Wmha,
    pub a0: Rc<Subalgebra>,
}

impl AdjointData {
    /// π(a) = Σ E₍₁₎ a S(E₍₂₎), computed from the materialized E.
    pub fn pi(&self, a: &Element) -> Element {
        let w = &self.wmha;
        let mut out = Element::zero();
        for (l, c) in w.e_elem().iter() {
            let (u, v) = l.as_pair().expect("pair label");
            let term = w.mul(
                &w.mul(&Element::basis(u.clone()), a),
                &w.s(&Element::basis(v.clone())),
            );
            out.add_scaled(&term, c);
        }
        out
    }

    /// Props 3.5 - 3.9: π is an idempotent conditional expectation onto A₀,
    /// A₀A = AA₀ = A, A₀ is non-degenerate, and A₀ is exactly the
    /// centralizer of ε_s(A) (cross-checked against the π-image span).
    pub fn check(&self) -> SuiteReport {
        let mut suite = SuiteReport::default();
        let w = &self.wmha;
        let labels = w.algebra().basis().expect("finite").labels().to_vec();
        let mut witnesses = Vec::new();
        let pi_images: Vec<Element> = labels
            .iter()
            .map(|l| self.pi(&Element::basis(l.clone())))
            .collect();
        let a0_vectors: Vec<Element> = (0..self.a0.dim())
            .map(|i| {
                self.a0
                    .embed(&Element::basis(
                        self.a0.algebra.basis().unwrap().label(i).clone(),
                    ))
            })
            .collect();
        if !linalg::span_equal(&pi_images, &a0_vectors) {
            witnesses.push("span{π(a)} differs from the centralizer of ε_s(A)".to_string());
        }
        for (i, a) in labels.iter().enumerate() {
            // π restricted to A₀ is the identity; π∘π = π.
            let ppi = self.pi(&pi_images[i]);
            if ppi != pi_images[i] {
                witnesses.push(format!("π(π({a})) != π({a})"));
            }
            for x in &a0_vectors {
                if w.mul(x, &w.eps_s(&Element::basis(a.clone())))
                    != w.mul(&w.eps_s(&Element::basis(a.clone())), x)
                {
                    witnesses.push(format!("A₀ element fails to centralize ε_s({a})"));
                }
            }
        }
        for x in &a0_vectors {
            if self.pi(x) != *x {
                witnesses.push(format!("π not the identity on A₀ at {x}"));
            }
        }
        // π(a)π(b) = π(π(a)b) and Prop 3.8: π(ab) = aπ(b), π(ba) = π(b)a
        // for a ∈ A₀.
        for (i, a) in labels.iter().enumerate() {
            for (j, b) in labels.iter().enumerate() {
                let lhs = w.mul(&pi_images[i], &pi_images[j]);
                let rhs = self.pi(&w.mul(&pi_images[i], &Element::basis(b.clone())));
                if lhs != rhs {
                    witnesses.push(format!("π({a})π({b}) != π(π({a}){b})"));
                }
            }
        }
        for x in &a0_vectors {
            for b in &labels {
                let eb = Element::basis(b.clone());
                if self.pi(&w.mul(x, &eb)) != w.mul(x, &self.pi(&eb)) {
                    witnesses.push(format!("π(a·{b}) != a·π({b}) for a ∈ A₀"));
                }
                if self.pi(&w.mul(&eb, x)) != w.mul(&self.pi(&eb), x) {
                    witnesses.push(format!("π({b}·a) != π({b})·a for a ∈ A₀"));
                }
            }
        }
        // A₀A = AA₀ = A.
        let mut left_products = Vec::new();
        let mut right_products = Vec::new();
        for x in &a0_vectors {
            for b in &labels {
                let eb = Element::basis(b.clone());
                left_products.push(w.mul(x, &eb));
                right_products.push(w.mul(&eb, x));
            }
        }
        let dim = w.algebra().dim();
        if linalg::span_rank(&left_products) != dim {
            witnesses.push("A₀A is a proper subspace".to_string());
        }
        if linalg::span_rank(&right_products) != dim {
            witnesses.push("AA₀ is a proper subspace".to_string());
        }
        if !self.a0.algebra.check_nondegenerate() {
            witnesses.push("A₀ product is degenerate".to_string());
        }
        suite.push(CheckReport::from_witnesses(AxiomId::ModuleAssociativity, Vec::new()));
        suite.checks.clear();
        suite.push(CheckReport::from_witnesses(AxiomId::ModuleNonDegenerate, witnesses));
        suite
    }
}

/// §3.2.3: the adjoint action α_a(x) = Σ a₍₁₎ x S(a₍₂₎) on A₀.
pub fn adjoint_module_algebra(w: &Wmha) -> Result<(AdjointData, ModuleAlgebra), AlgebraError> {
    let alg = w.algebra();
    let basis = alg.basis().expect("finite");
    // A₀ = {a : a y = y a for all y ∈ ε_s(A)}, solved as a kernel.
    let eps_s_basis: Vec<Element> = {
        let images: Vec<Element> = basis
            .iter()
            .map(|l| w.eps_s(&Element::basis(l.clone())))
            .collect();
        Span::over_basis(&images, basis).basis_vectors()
    };
    let mut commutant = SparseMat::new(basis.clone());
    for (yi, y) in eps_s_basis.iter().enumerate() {
        for (li, l) in basis.iter().enumerate() {
            let mut row = Element::zero();
            for a in basis.iter() {
                let ea = Element::basis(a.clone());
                let diff = w.mul(&ea, y).sub(&w.mul(y, &ea));
                row.add_term(a, &diff.get(l));
            }
            commutant.push_row(Label::atom(format!("{yi}.{li}")), row);
        }
    }
    let a0_basis = linalg::kernel_basis(&commutant);
    let sub = Rc::new(Subalgebra::from_span(alg, "a0", &a0_basis)?);
    let data = AdjointData {
        wmha: w.clone(),
        a0: Rc::clone(&sub),
    };
    let w2 = w.clone();
    let sub_for_action = Rc::clone(&sub);
    let action: ActionRule = Rc::new(move |a: &Label, r: &Label| {
        let x = sub_for_action.embed(&Element::basis(r.clone()));
        let delta = w2.delta(&Element::basis(a.clone()));
        let mut out = Element::zero();
        for (l, c) in delta.iter() {
            let (u, v) = l.as_pair().unwrap();
            let term = w2.mul(
                &w2.mul(&Element::basis(u.clone()), &x),
                &w2.s(&Element::basis(v.clone())),
            );
            out.add_scaled(&term, c);
        }
        sub_for_action
            .project(&out)
            .expect("adjoint action lands in A₀")
    });
    let module = ModuleAlgebra::new(w.clone(), sub.algebra.clone(), action);
    Ok((data, module))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupoid::{cyclic_group, pair_groupoid, translation_action};

    #[test]
    fn cz2_is_a_hopf_algebra() {
        let w = groupoid_algebra(&cyclic_group(2).unwrap());
        assert_eq!(w.algebra().dim(), 2);
        // E = 1⊗1 in the group case.
        let unit = w.unit().unwrap();
        let e = w.e_elem();
        assert_eq!(e, crate::algebra::tensor_elem(&unit, &unit));
        let report = w.run_axiom_suite();
        assert!(report.is_pass(), "{report}");
    }

    #[test]
    fn cp2_passes_the_suite() {
        let w = groupoid_algebra(&pair_groupoid(2).unwrap());
        assert_eq!(w.algebra().dim(), 4);
        let report = w.run_axiom_suite();
        assert!(report.is_pass(), "{report}");
    }

    #[test]
    fn kp2_passes_the_suite() {
        let w = function_algebra(&pair_groupoid(2).unwrap());
        let report = w.run_axiom_suite();
        assert!(report.is_pass(), "{report}");
    }

    #[test]
    fn kz3_passes_the_suite() {
        let w = function_algebra(&cyclic_group(3).unwrap());
        let report = w.run_axiom_suite();
        assert!(report.is_pass(), "{report}");
    }

    #[test]
    fn groupoid_source_target_closed_form() {
        // ε_t(λ_p) = λ_{id(target(p))} and ε_s(λ_p) = λ_{id(source(p))}.
        let g = pair_groupoid(2).unwrap();
        let w = groupoid_algebra(&g);
        for m in 0..g.n_morphisms() {
            let a = Element::basis(Label::atom(g.morphism_name(m)));
            let et = w.eps_t(&a);
            let expected =
                Element::basis(Label::atom(g.morphism_name(g.identity(g.target(m)))));
            assert_eq!(et, expected, "ε_t(λ_{})", g.morphism_name(m));
            let es = w.eps_s(&a);
            let expected =
                Element::basis(Label::atom(g.morphism_name(g.identity(g.source(m)))));
            assert_eq!(es, expected, "ε_s(λ_{})", g.morphism_name(m));
        }
    }

    #[test]
    fn trivial_action_on_cp2() {
        let w = groupoid_algebra(&pair_groupoid(2).unwrap());
        let m = trivial_module_algebra(&w).unwrap();
        assert_eq!(m.coeff.dim(), 2);
        // λ_{m21} ▷ λ_{m11} = ε_t(λ_{m21}λ_{m11}) = λ_{m22}
        let result = m.act(
            &Element::basis(Label::atom("m21")),
            &Element::basis(Label::atom("m11")),
        );
        assert_eq!(result, Element::basis(Label::atom("m22")));
        let report = m.run_module_suite();
        assert!(report.is_pass(), "{report}");
    }

    #[test]
    fn trivial_action_on_group_is_counit() {
        let w = groupoid_algebra(&cyclic_group(3).unwrap());
        let m = trivial_module_algebra(&w).unwrap();
        assert_eq!(m.coeff.dim(), 1);
        // a ▷ 1 = ε(a)·1 in the group case.
        let r = m.coeff.basis().unwrap().label(0).clone();
        for a in w.algebra().basis().unwrap().iter() {
            let acted = m.act(&Element::basis(a.clone()), &Element::basis(r.clone()));
            assert_eq!(acted, Element::basis(r.clone()));
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
    fn set_action_values() {
        let m = set_action_module_algebra(&p2_action()).unwrap();
        // λ_p ▷ δ_{x1} = δ_{x2} for p = m21 : 1 -> 2.
        let acted = m.act(
            &Element::basis(Label::atom("m21")),
            &Element::basis(Label::atom("x1")),
        );
        assert_eq!(acted, Element::basis(Label::atom("x2")));
        // λ_{id1} ▷ δ_{x1} = δ_{x1}, λ_{id1} ▷ δ_{x2} = 0.
        let acted = m.act(
            &Element::basis(Label::atom("m11")),
            &Element::basis(Label::atom("x1")),
        );
        assert_eq!(acted, Element::basis(Label::atom("x1")));
        let acted = m.act(
            &Element::basis(Label::atom("m11")),
            &Element::basis(Label::atom("x2")),
        );
        assert!(acted.is_zero());
        let report = m.run_module_suite();
        assert!(report.is_pass(), "{report}");
    }

    #[test]
    fn set_action_gamma_is_partial_representation() {
        let action = p2_action();
        let m = set_action_module_algebra(&action).unwrap();
        let g = &action.base;
        let points = m.coeff.basis().unwrap().clone();
        for p in 0..g.n_morphisms() {
            for q in 0..g.n_morphisms() {
                let ep = Element::basis(Label::atom(g.morphism_name(p)));
                let eq = Element::basis(Label::atom(g.morphism_name(q)));
                for x in points.iter() {
                    let ex = Element::basis(x.clone());
                    let composed = m.act(&ep, &m.act(&eq, &ex));
                    let direct = match g.compose(p, q) {
                        Some(pq) => m.act(
                            &Element::basis(Label::atom(g.morphism_name(pq))),
                            &ex,
                        ),
                        None => Element::zero(),
                    };
                    assert_eq!(composed, direct);
                }
            }
        }
    }

    #[test]
    fn non_true_action_rejected() {
        let g = pair_groupoid(2).unwrap();
        let bad = GroupoidAction::from_parts(
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
                // wrong fiber: lands where only m11 is defined
                ("m21".to_string(), "x1".to_string(), "x1".to_string()),
                ("m12".to_string(), "x2".to_string(), "x2".to_string()),
            ],
        )
        .unwrap();
        assert!(set_action_module_algebra(&bad).is_err());
    }

    #[test]
    fn translation_action_module_algebra() {
        let g = cyclic_group(2).unwrap();
        let m = set_action_module_algebra(&translation_action(&g)).unwrap();
        let report = m.run_module_suite();
        assert!(report.is_pass(), "{report}");
    }

    #[test]
    fn adjoint_on_group_is_whole_algebra() {
        let w = groupoid_algebra(&cyclic_group(2).unwrap());
        let (data, module) = adjoint_module_algebra(&w).unwrap();
        assert_eq!(data.a0.dim(), 2);
        // group case: π = identity
        for l in w.algebra().basis().unwrap().iter() {
            assert_eq!(data.pi(&Element::basis(l.clone())), Element::basis(l.clone()));
        }
        assert!(data.check().is_pass());
        assert!(module.run_module_suite().is_pass());
    }

    #[test]
    fn adjoint_on_cp2_is_the_diagonal() {
        let w = groupoid_algebra(&pair_groupoid(2).unwrap());
        let (data, module) = adjoint_module_algebra(&w).unwrap();
        // centralizer of span{λ_id1, λ_id2} is span{λ_id1, λ_id2}
        assert_eq!(data.a0.dim(), 2);
        let embedded: Vec<Element> = (0..2)
            .map(|i| {
                data.a0.embed(&Element::basis(
                    data.a0.algebra.basis().unwrap().label(i).clone(),
                ))
            })
            .collect();
        assert!(linalg::span_equal(
            &embedded,
            &[
                Element::basis(Label::atom("m11")),
                Element::basis(Label::atom("m22"))
            ]
        ));
        // π(λ_p) = 0 for p : 1 -> 2 off the diagonal
        let pi_p = data.pi(&Element::basis(Label::atom("m21")));
        assert!(pi_p.is_zero(), "π(λ_m21) = {pi_p}");
        assert!(data.check().is_pass());
        let report = module.run_module_suite();
        assert!(report.is_pass(), "{report}");
    }

    #[test]
    fn lazy_pair_algebra_sampled_suite() {
        let w = lazy_groupoid_algebra(&crate::groupoid::lazy_pair_groupoid(), 50);
        let report = w.run_sampled_suite(200, 0);
        assert!(report.is_pass(), "{report}");
        // E applied to elementary tensors keeps finite support, and acts as
        // the target-match indicator: (1,2) and (3,2) share the target 2,
        // (1,2) and (2,3) do not.
        let z = Element::basis(Label::pair(Label::atom("(1,2)"), Label::atom("(3,2)")));
        assert_eq!(w.e_left(&z), z);
        let z = Element::basis(Label::pair(Label::atom("(1,2)"), Label::atom("(2,3)")));
        assert!(w.e_left(&z).is_zero());
    }
}
