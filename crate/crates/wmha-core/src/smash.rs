//! The smash product R#_E A of a module algebra, its balanced-tensor
//! presentation R⊗_t A, the π_A/π_R multiplier embeddings, the universal
//! property, and the correspondence between smash modules and covariant
//! modules.
//!
//! The carrier E▷(R⊗A) is represented concretely as the image of the
//! E-action projector with a computed canonical basis, so every element of
//! the smash product has unique coordinates; `r #_E a` denotes the projected
//! image of r⊗a.

use alloc::format;
use alloc::rc::Rc;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::action::{ActionRule, ModuleAlgebra, UnitalModule};
use crate::algebra::{product_span, Algebra, AlgebraError, Element, Multiplier, ProductRule};
use crate::label::{Basis, Label};
use crate::linalg::{self, SparseMat, Span};
use crate::report::{AxiomId, CheckReport, SuiteReport};

#[derive(Clone)]
pub struct SmashProduct {
    pub module: ModuleAlgebra,
    rxa_basis: Basis,
    carrier: Rc<Span>,
    /// The carrier as a standalone algebra with synthetic labels `#k`.
    pub algebra: Algebra,
}

impl SmashProduct {
    pub fn new(module: &ModuleAlgebra) -> Result<SmashProduct, AlgebraError> {
        let r_basis = module.coeff.basis().expect("finite").clone();
        let a_basis = module.wmha.algebra().basis().expect("finite").clone();
        let rxa_basis = r_basis.tensor(&a_basis);
        let mut images = Vec::new();
        for r in r_basis.iter() {
            for a in a_basis.iter() {
                let z = Element::basis(Label::pair(r.clone(), a.clone()));
                let p = project_rxa(module, &z);
                if !p.is_zero() {
                    images.push(p);
                }
            }
        }
        let carrier = Rc::new(Span::over_basis(&images, &rxa_basis));
        let dim = carrier.dim();
        let vectors = carrier.basis_vectors();
        let labels: Vec<Label> = (0..dim).map(|i| Label::atom(format!("#{i}"))).collect();
        let basis = Basis::new(labels.clone());
        // Structure constants through Eq (4.1), with closure verified.
        let mut table: Vec<Vec<Element>> = Vec::new();
        for x in &vectors {
            let mut row = Vec::new();
            for y in &vectors {
                let prod = smash_mul_rxa(module, x, y);
                let coords = carrier.coordinates(&prod).ok_or_else(|| {
                    AlgebraError::ProductNotClosed(format!("smash product leaves carrier: {prod}"))
                })?;
                let mut e = Element::zero();
                for (i, c) in coords.iter().enumerate() {
                    e.add_term(&labels[i], c);
                }
                row.push(e);
            }
            table.push(row);
        }
        let basis_for_rule = basis.clone();
        let product: ProductRule = Rc::new(move |a: &Label, b: &Label| {
            let i = basis_for_rule.position(a).expect("carrier label");
            let j = basis_for_rule.position(b).expect("carrier label");
            table[i][j].clone()
        });
        let algebra = Algebra::finite_unchecked("smash carrier", basis, product);
        Ok(SmashProduct {
            module: module.clone(),
            rxa_basis,
            carrier,
            algebra,
        })
    }

    pub fn dim(&self) -> usize {
        self.carrier.dim()
    }

    pub fn rxa_basis(&self) -> &Basis {
        &self.rxa_basis
    }

    /// E▷(z) for z in R⊗A.
    pub fn project(&self, z: &Element) -> Element {
        project_rxa(&self.module, z)
    }

    /// Eq (4.1) product on R⊗A vectors.
    pub fn mul_rxa(&self, x: &Element, y: &Element) -> Element {
        smash_mul_rxa(&self.module, x, y)
    }

    /// Carrier coordinates of an R⊗A vector lying in the carrier.
    pub fn to_carrier(&self, z: &Element) -> Option<Element> {
        let coords = self.carrier.coordinates(z)?;
        let basis = self.algebra.basis().unwrap();
        let mut out = Element::zero();
        for (i, c) in coords.iter().enumerate() {
            out.add_term(basis.label(i), c);
        }
        Some(out)
    }

    /// R⊗A vector of a carrier element.
    pub fn lift(&self, x: &Element) -> Element {
        let basis = self.algebra.basis().unwrap();
        let vectors = self.carrier.basis_vectors();
        let mut out = Element::zero();
        for (l, c) in x.iter() {
            let i = basis.position(l).expect("carrier label");
            out.add_scaled(&vectors[i], c);
        }
        out
    }

    /// r #_E a in carrier coordinates.
    pub fn embed(&self, r: &Element, a: &Element) -> Element {
        let mut z = Element::zero();
        for (lr, cr) in r.iter() {
            for (la, ca) in a.iter() {
                z.add_term(&Label::pair(lr.clone(), la.clone()), &(cr * ca));
            }
        }
        self.to_carrier(&self.project(&z))
            .expect("projection lands in the carrier")
    }

    /// π_A(a) as a multiplier of the carrier algebra:
    /// π_A(a)(r#_Ea') = Σ a₍₁₎▷r #_E a₍₂₎a' and (r#_Ea')π_A(a) = r#_E a'a.
    pub fn pi_a(&self, a: &Element) -> Multiplier {
        let this = self.clone();
        let delta = self.module.wmha.delta(a);
        let left = Rc::new(move |x: &Element| {
            let z = this.lift(x);
            let mut out = Element::zero();
            for (l, c) in z.iter() {
                let (r, a2) = l.as_pair().unwrap();
                for (dl, dc) in delta.iter() {
                    let (u, v) = dl.as_pair().unwrap();
                    let racted = this
                        .module
                        .act(&Element::basis(u.clone()), &Element::basis(r.clone()));
                    if racted.is_zero() {
                        continue;
                    }
                    let amul = this
                        .module
                        .wmha
                        .mul(&Element::basis(v.clone()), &Element::basis(a2.clone()));
                    for (rl, rc) in racted.iter() {
                        for (al, ac) in amul.iter() {
                            out.add_term(
                                &Label::pair(rl.clone(), al.clone()),
                                &(&(&(c * dc) * rc) * ac),
                            );
                        }
                    }
                }
            }
            this.to_carrier(&out).expect("π_A stays in the carrier")
        });
        let this = self.clone();
        let a2 = a.clone();
        let right = Rc::new(move |x: &Element| {
            let z = this.lift(x);
            let mut out = Element::zero();
            for (l, c) in z.iter() {
                let (r, a1) = l.as_pair().unwrap();
                let amul = this.module.wmha.mul(&Element::basis(a1.clone()), &a2);
                for (al, ac) in amul.iter() {
                    out.add_term(&Label::pair(r.clone(), al.clone()), &(c * ac));
                }
            }
            this.to_carrier(&this.project(&out))
                .expect("π_A stays in the carrier")
        });
        Multiplier::unchecked(left, right)
    }

    /// π_R(r) as a multiplier of the carrier algebra:
    /// π_R(r)(r'#_Ea) = rr'#_E a and (r'#_Ea)π_R(r) = Σ r'(a₍₁₎▷r)#_E a₍₂₎.
    pub fn pi_r(&self, r: &Element) -> Multiplier {
        let this = self.clone();
        let r1 = r.clone();
        let left = Rc::new(move |x: &Element| {
            let z = this.lift(x);
            let mut out = Element::zero();
            for (l, c) in z.iter() {
                let (r2, a) = l.as_pair().unwrap();
                let rr = this.module.coeff.mul(&r1, &Element::basis(r2.clone()));
                for (rl, rc) in rr.iter() {
                    out.add_term(&Label::pair(rl.clone(), a.clone()), &(c * rc));
                }
            }
            this.to_carrier(&this.project(&out))
                .expect("π_R stays in the carrier")
        });
        let this = self.clone();
        let r2 = r.clone();
        let right = Rc::new(move |x: &Element| {
            let z = this.lift(x);
            let mut out = Element::zero();
            for (l, c) in z.iter() {
                let (r1, a) = l.as_pair().unwrap();
                let delta = this.module.wmha.delta(&Element::basis(a.clone()));
                for (dl, dc) in delta.iter() {
                    let (u, v) = dl.as_pair().unwrap();
                    let racted = this.module.act(&Element::basis(u.clone()), &r2);
                    if racted.is_zero() {
                        continue;
                    }
                    let rr = this.module.coeff.mul(&Element::basis(r1.clone()), &racted);
                    for (rl, rc) in rr.iter() {
                        out.add_term(&Label::pair(rl.clone(), v.clone()), &(&(c * dc) * rc));
                    }
                }
            }
            this.to_carrier(&this.project(&out))
                .expect("π_R stays in the carrier")
        });
        Multiplier::unchecked(left, right)
    }

    pub fn carrier_witnesses(&self) -> Vec<Element> {
        self.algebra
            .basis()
            .unwrap()
            .iter()
            .map(|l| Element::basis(l.clone()))
            .collect()
    }

    fn elementary_rxa(&self) -> Vec<Element> {
        self.rxa_basis
            .iter()
            .map(|l| Element::basis(l.clone()))
            .collect()
    }

    /// Prop 4.1: Eq (4.1) is associative, exhaustively on elementary
    /// tensors of R⊗A.
    pub fn check_associativity(&self) -> CheckReport {
        let mut witnesses = Vec::new();
        let gens = self.elementary_rxa();
        for x in &gens {
            for y in &gens {
                let xy = self.mul_rxa(x, y);
                for z in &gens {
                    let lhs = self.mul_rxa(&xy, z);
                    let rhs = self.mul_rxa(x, &self.mul_rxa(y, z));
                    if lhs != rhs {
                        witnesses.push(format!("({x})({y})({z}) associativity fails"));
                        if witnesses.len() > 5 {
                            return CheckReport::from_witnesses(
                                AxiomId::SmashAssociativity,
                                witnesses,
                            );
                        }
                    }
                }
            }
        }
        CheckReport::from_witnesses(AxiomId::SmashAssociativity, witnesses)
    }

    /// Prop 4.2: (E▷x)y = xy = x(E▷y) and E▷(xy) = (E▷x)y; plus E▷ is
    /// idempotent on R⊗A.
    pub fn check_projection(&self) -> CheckReport {
        let mut witnesses = Vec::new();
        let gens = self.elementary_rxa();
        for x in &gens {
            let px = self.project(x);
            if self.project(&px) != px {
                witnesses.push(format!("E▷ not idempotent at {x}"));
            }
            for y in &gens {
                let xy = self.mul_rxa(x, y);
                let lhs = self.mul_rxa(&px, y);
                if lhs != xy {
                    witnesses.push(format!("(E▷{x}){y} != {x}{y}"));
                }
                let rhs = self.mul_rxa(x, &self.project(y));
                if rhs != xy {
                    witnesses.push(format!("{x}(E▷{y}) != {x}{y}"));
                }
                if self.project(&xy) != lhs {
                    witnesses.push(format!("E▷({x}{y}) != (E▷{x}){y}"));
                }
                if witnesses.len() > 5 {
                    return CheckReport::from_witnesses(AxiomId::SmashProjection, witnesses);
                }
            }
        }
        CheckReport::from_witnesses(AxiomId::SmashProjection, witnesses)
    }

    /// Prop 4.3: both annihilators of the carrier vanish.
    pub fn check_nondegenerate(&self) -> CheckReport {
        let ok = self.algebra.check_nondegenerate();
        CheckReport::from_witnesses(
            AxiomId::SmashNonDegenerate,
            if ok {
                Vec::new()
            } else {
                alloc::vec!["smash carrier has a nonzero annihilator".to_string()]
            },
        )
    }

    /// Prop 4.8 / 4.9 and the span identities for π_A, π_R.
    pub fn check_pi_maps(&self) -> CheckReport {
        let mut witnesses = Vec::new();
        let wmha = &self.module.wmha;
        let a_basis = wmha.algebra().basis().unwrap().clone();
        let r_basis = self.module.coeff.basis().unwrap().clone();
        let carrier_wit = self.carrier_witnesses();
        // Multiplier compatibility.
        for a in a_basis.iter() {
            let pa = self.pi_a(&Element::basis(a.clone()));
            let pa_l = pa.clone();
            let pa_r = pa.clone();
            if Multiplier::checked(
                &self.algebra,
                Rc::new(move |x: &Element| pa_l.apply_left(x)),
                Rc::new(move |x: &Element| pa_r.apply_right(x)),
                &carrier_wit,
            )
            .is_err()
            {
                witnesses.push(format!("π_A({a}) is not a multiplier"));
            }
        }
        // Homomorphism properties.
        for a in a_basis.iter() {
            let ea = Element::basis(a.clone());
            let pa = self.pi_a(&ea);
            for b in a_basis.iter() {
                let eb = Element::basis(b.clone());
                let ab = wmha.mul(&ea, &eb);
                let lhs = pa.mul(&self.pi_a(&eb));
                let rhs = self.pi_a(&ab);
                if !lhs.eq_on(&rhs, &carrier_wit) {
                    witnesses.push(format!("π_A({a})π_A({b}) != π_A({a}{b})"));
                }
            }
        }
        for r in r_basis.iter() {
            let er = Element::basis(r.clone());
            let pr = self.pi_r(&er);
            for s in r_basis.iter() {
                let es = Element::basis(s.clone());
                let rs = self.module.coeff.mul(&er, &es);
                let lhs = pr.mul(&self.pi_r(&es));
                let rhs = self.pi_r(&rs);
                if !lhs.eq_on(&rhs, &carrier_wit) {
                    witnesses.push(format!("π_R({r})π_R({s}) != π_R({r}{s})"));
                }
            }
        }
        // Prop 4.8: π_A(a)π_R(r) = Σ a₍₁₎▷r #_E a₍₂₎ and π_R(r)π_A(a) = r #_E a.
        for a in a_basis.iter() {
            let ea = Element::basis(a.clone());
            let pa = self.pi_a(&ea);
            let delta = wmha.delta(&ea);
            for r in r_basis.iter() {
                let er = Element::basis(r.clone());
                let pr = self.pi_r(&er);
                let mut expected = Element::zero();
                for (dl, dc) in delta.iter() {
                    let (u, v) = dl.as_pair().unwrap();
                    let racted = self.module.act(&Element::basis(u.clone()), &er);
                    expected.add_scaled(&self.embed(&racted, &Element::basis(v.clone())), dc);
                }
                let lhs = pa.mul(&pr);
                let rhs = Multiplier::from_element(&self.algebra, &expected);
                if !lhs.eq_on(&rhs, &carrier_wit) {
                    witnesses.push(format!("π_A({a})π_R({r}) != Σ a₍₁₎▷r #_E a₍₂₎"));
                }
                let lhs = pr.mul(&pa);
                let rhs = Multiplier::from_element(&self.algebra, &self.embed(&er, &ea));
                if !lhs.eq_on(&rhs, &carrier_wit) {
                    witnesses.push(format!("π_R({r})π_A({a}) != {r} #_E {a}"));
                }
            }
        }
        // π_A is unital: π_A(A)(R#_EA) = R#_EA; and the span identities.
        let mut pa_span = Vec::new();
        let mut pr_pa_span = Vec::new();
        let mut pa_pr_span = Vec::new();
        for a in a_basis.iter() {
            let pa = self.pi_a(&Element::basis(a.clone()));
            for x in &carrier_wit {
                pa_span.push(pa.apply_left(x));
            }
            for r in r_basis.iter() {
                let pr = self.pi_r(&Element::basis(r.clone()));
                for x in &carrier_wit {
                    pr_pa_span.push(pr.apply_left(&pa.apply_left(x)));
                    pa_pr_span.push(pa.apply_left(&pr.apply_left(x)));
                }
            }
        }
        let dim = self.dim();
        if linalg::span_rank(&pa_span) != dim {
            witnesses.push("π_A(A)(R#_EA) is a proper subspace".to_string());
        }
        if linalg::span_rank(&pr_pa_span) != dim {
            witnesses.push("π_R(R)π_A(A) does not span".to_string());
        }
        if linalg::span_rank(&pa_pr_span) != dim {
            witnesses.push("π_A(A)π_R(R) does not span".to_string());
        }
        // R² = R makes π_R unital.
        if product_span(&self.module.coeff).dim() == self.module.coeff.dim() {
            let mut pr_span = Vec::new();
            for r in r_basis.iter() {
                let pr = self.pi_r(&Element::basis(r.clone()));
                for x in &carrier_wit {
                    pr_span.push(pr.apply_left(x));
                }
            }
            if linalg::span_rank(&pr_span) != dim {
                witnesses.push("R² = R but π_R(R)(R#_EA) is a proper subspace".to_string());
            }
        }
        CheckReport::from_witnesses(AxiomId::SmashPiMaps, witnesses)
    }

    /// Prop 4.10 universal property, for homomorphisms pA, pR into the
    /// multiplier algebra of a finite target satisfying the commutation
    /// hypothesis π_A(a)π_R(r) = Σ π_R(a₍₁₎▷r)π_A(a₍₂₎).
    pub fn check_universal_property(
        &self,
        target: &Algebra,
        p_a: &dyn Fn(&Element) -> Multiplier,
        p_r: &dyn Fn(&Element) -> Multiplier,
    ) -> CheckReport {
        let mut witnesses = Vec::new();
        let wmha = &self.module.wmha;
        let a_basis = wmha.algebra().basis().unwrap();
        let r_basis = self.module.coeff.basis().unwrap();
        let target_wit: Vec<Element> = target
            .basis()
            .expect("finite target")
            .iter()
            .map(|l| Element::basis(l.clone()))
            .collect();
        // Hypothesis first; a violation aborts the construction.
        for a in a_basis.iter() {
            let ea = Element::basis(a.clone());
            let delta = wmha.delta(&ea);
            for r in r_basis.iter() {
                let er = Element::basis(r.clone());
                let lhs = p_a(&ea).mul(&p_r(&er));
                let mut rhs: Option<Multiplier> = None;
                for (dl, dc) in delta.iter() {
                    let (u, v) = dl.as_pair().unwrap();
                    let racted = self.module.act(&Element::basis(u.clone()), &er);
                    let term = p_r(&racted.scaled(dc)).mul(&p_a(&Element::basis(v.clone())));
                    rhs = Some(match rhs {
                        None => term,
                        Some(acc) => add_multipliers(acc, term),
                    });
                }
                let rhs = rhs.unwrap_or_else(zero_multiplier);
                if !lhs.eq_on(&rhs, &target_wit) {
                    witnesses.push(format!(
                        "hypothesis violated at (a,r)=({a},{r}); construction aborted"
                    ));
                }
            }
        }
        if !witnesses.is_empty() {
            return CheckReport::from_witnesses(AxiomId::SmashUniversal, witnesses);
        }
        // π(ξ) = Σ coords pR(r)pA(a); verify π is a homomorphism and matches
        // pR(r)pA(a) on projected generators.
        let pi = |x: &Element| -> Multiplier {
            let z = self.lift(x);
            let mut acc: Option<Multiplier> = None;
            for (l, c) in z.iter() {
                let (r, a) = l.as_pair().unwrap();
                let term = p_r(&Element::basis(r.clone()).scaled(c))
                    .mul(&p_a(&Element::basis(a.clone())));
                acc = Some(match acc {
                    None => term,
                    Some(prev) => add_multipliers(prev, term),
                });
            }
            acc.unwrap_or_else(zero_multiplier)
        };
        for r in r_basis.iter() {
            let er = Element::basis(r.clone());
            for a in a_basis.iter() {
                let ea = Element::basis(a.clone());
                let embedded = self.embed(&er, &ea);
                let lhs = pi(&embedded);
                let rhs = p_r(&er).mul(&p_a(&ea));
                if !lhs.eq_on(&rhs, &target_wit) {
                    witnesses.push(format!("π({r}#{a}) != π_R({r})π_A({a})"));
                }
            }
        }
        let carrier_wit = self.carrier_witnesses();
        for x in &carrier_wit {
            let px = pi(x);
            for y in &carrier_wit {
                let lhs = pi(&self.algebra.mul(x, y));
                let rhs = px.mul(&pi(y));
                if !lhs.eq_on(&rhs, &target_wit) {
                    witnesses.push(format!("π({x}·{y}) != π({x})π({y})"));
                }
            }
        }
        CheckReport::from_witnesses(AxiomId::SmashUniversal, witnesses)
    }

    pub fn run_smash_suite(&self) -> SuiteReport {
        let mut suite = SuiteReport::default();
        suite.push(self.check_associativity());
        suite.push(self.check_projection());
        suite.push(self.check_nondegenerate());
        suite.push(self.check_pi_maps());
        suite
    }
}

fn add_multipliers(a: Multiplier, b: Multiplier) -> Multiplier {
    let (a2, b2) = (a.clone(), b.clone());
    Multiplier::unchecked(
        Rc::new(move |x: &Element| a.apply_left(x).add(&b.apply_left(x))),
        Rc::new(move |x: &Element| a2.apply_right(x).add(&b2.apply_right(x))),
    )
}

fn zero_multiplier() -> Multiplier {
    Multiplier::unchecked(Rc::new(|_| Element::zero()), Rc::new(|_| Element::zero()))
}

/// E ▷ (r⊗a) on R⊗A: the first E-leg acts on R, the second multiplies.
fn project_rxa(module: &ModuleAlgebra, z: &Element) -> Element {
    let e = module.wmha.e_elem();
    let mut out = Element::zero();
    for (l, c) in z.iter() {
        let (r, a) = l.as_pair().expect("pair label");
        for (el, ec) in e.iter() {
            let (u, v) = el.as_pair().unwrap();
            let racted = module.act(&Element::basis(u.clone()), &Element::basis(r.clone()));
            if racted.is_zero() {
                continue;
            }
            let amul = module
                .wmha
                .mul(&Element::basis(v.clone()), &Element::basis(a.clone()));
            for (rl, rc) in racted.iter() {
                for (al, ac) in amul.iter() {
                    out.add_term(&Label::pair(rl.clone(), al.clone()), &(&(&(c * ec) * rc) * ac));
                }
            }
        }
    }
    out
}

/// Eq (4.1): (r⊗a)(s⊗b) = Σ r(a₍₁₎▷s) ⊗ a₍₂₎b, extended bilinearly.
fn smash_mul_rxa(module: &ModuleAlgebra, x: &Element, y: &Element) -> Element {
    let mut out = Element::zero();
    for (lx, cx) in x.iter() {
        let (r, a) = lx.as_pair().expect("pair label");
        let delta = module.wmha.delta(&Element::basis(a.clone()));
        for (ly, cy) in y.iter() {
            let (s, b) = ly.as_pair().expect("pair label");
            for (dl, dc) in delta.iter() {
                let (u, v) = dl.as_pair().unwrap();
                let racted = module.act(&Element::basis(u.clone()), &Element::basis(s.clone()));
                if racted.is_zero() {
                    continue;
                }
                let rmul = module.coeff.mul(&Element::basis(r.clone()), &racted);
                let amul = module
                    .wmha
                    .mul(&Element::basis(v.clone()), &Element::basis(b.clone()));
                let coeff = &(cx * cy) * dc;
                for (rl, rc) in rmul.iter() {
                    for (al, ac) in amul.iter() {
                        out.add_term(&Label::pair(rl.clone(), al.clone()), &(&(&coeff * rc) * ac));
                    }
                }
            }
        }
    }
    out
}

/// The balanced tensor product R⊗_t A: the quotient of R⊗A by
/// r·ε_t(a)⊗b − r⊗ε_t(a)b, with r·ε_t(a) = S⁻¹(ε_t(a))▷r, together with
/// the isomorphism f : R⊗_t A -> R#_E A, f = E▷(·).
pub struct BalancedTensor {
    relations: Span,
    rxa_basis: Basis,
    /// Representatives: the free (non-pivot) pair labels.
    pub quotient_labels: Vec<Label>,
}

impl BalancedTensor {
    pub fn new(module: &ModuleAlgebra) -> BalancedTensor {
        let wmha = &module.wmha;
        let r_basis = module.coeff.basis().unwrap().clone();
        let a_basis = wmha.algebra().basis().unwrap().clone();
        let rxa_basis = r_basis.tensor(&a_basis);
        let mut rels = Vec::new();
        for l in a_basis.iter() {
            let y = wmha.eps_t(&Element::basis(l.clone()));
            if y.is_zero() {
                continue;
            }
            let s_inv_y = wmha.s_inv(&y);
            for r in r_basis.iter() {
                let er = Element::basis(r.clone());
                let racted = module.act(&s_inv_y, &er);
                for b in a_basis.iter() {
                    let eb = Element::basis(b.clone());
                    let mut rel = Element::zero();
                    for (rl, rc) in racted.iter() {
                        rel.add_term(&Label::pair(rl.clone(), b.clone()), rc);
                    }
                    let yb = wmha.mul(&y, &eb);
                    for (al, ac) in yb.iter() {
                        rel.add_term(&Label::pair(r.clone(), al.clone()), &-ac);
                    }
                    if !rel.is_zero() {
                        rels.push(rel);
                    }
                }
            }
        }
        let relations = Span::over_basis(&rels, &rxa_basis);
        let pivot_labels: Vec<Label> = relations
            .basis_vectors()
            .iter()
            .map(|v| v.support().next().unwrap().clone())
            .collect();
        let quotient_labels: Vec<Label> = rxa_basis
            .iter()
            .filter(|l| !pivot_labels.contains(l))
            .cloned()
            .collect();
        BalancedTensor {
            relations,
            rxa_basis,
            quotient_labels,
        }
    }

    pub fn dim(&self) -> usize {
        self.rxa_basis.len() - self.relations.dim()
    }

    /// Canonical representative of z modulo the balancing relations.
    pub fn reduce(&self, z: &Element) -> Element {
        self.relations.reduce(z)
    }

    /// Checks that the Eq (4.1) product respects the balancing relations,
    /// that f = E▷(·) kills them, and that f is a multiplicative bijection
    /// onto the smash carrier (Prop 4.6 / 4.7).
    pub fn check(&self, smash: &SmashProduct) -> CheckReport {
        let mut witnesses = Vec::new();
        let module = &smash.module;
        let gens: Vec<Element> = self
            .rxa_basis
            .iter()
            .map(|l| Element::basis(l.clone()))
            .collect();
        for rel in self.relations.basis_vectors() {
            if !smash.project(&rel).is_zero() {
                witnesses.push(format!("f does not kill the balancing relation {rel}"));
            }
            for g in &gens {
                if !self.reduce(&smash_mul_rxa(module, &rel, g)).is_zero() {
                    witnesses.push(format!("relation · generator escapes the relations: {rel}"));
                }
                if !self.reduce(&smash_mul_rxa(module, g, &rel)).is_zero() {
                    witnesses.push(format!("generator · relation escapes the relations: {rel}"));
                }
                if witnesses.len() > 5 {
                    return CheckReport::from_witnesses(AxiomId::SmashBalanced, witnesses);
                }
            }
        }
        // Dimensions agree and f is bijective.
        if self.dim() != smash.dim() {
            witnesses.push(format!(
                "dim R⊗_t A = {} but dim R#_E A = {}",
                self.dim(),
                smash.dim()
            ));
        }
        let f_images: Vec<Element> = self
            .quotient_labels
            .iter()
            .map(|l| smash.project(&Element::basis(l.clone())))
            .collect();
        if linalg::span_rank(&f_images) != self.dim() {
            witnesses.push("f is not injective on the quotient".to_string());
        }
        // Multiplicativity on quotient representatives.
        for l1 in &self.quotient_labels {
            let z1 = Element::basis(l1.clone());
            for l2 in &self.quotient_labels {
                let z2 = Element::basis(l2.clone());
                let prod = self.reduce(&smash_mul_rxa(module, &z1, &z2));
                let lhs = smash.project(&prod);
                let rhs = smash.mul_rxa(&smash.project(&z1), &smash.project(&z2));
                if lhs != rhs {
                    witnesses.push(format!("f({l1}·{l2}) != f({l1})f({l2})"));
                    if witnesses.len() > 5 {
                        return CheckReport::from_witnesses(AxiomId::SmashBalanced, witnesses);
                    }
                }
            }
        }
        CheckReport::from_witnesses(AxiomId::SmashBalanced, witnesses)
    }
}

/// A vector space carrying compatible A- and R-actions:
/// a(rv) = Σ (a₍₁₎r)(a₍₂₎v).
#[derive(Clone)]
pub struct CovariantModule {
    pub space: Basis,
    pub a_action: ActionRule,
    pub r_action: ActionRule,
}

/// A left module over the smash carrier algebra.
#[derive(Clone)]
pub struct SmashModule {
    pub space: Basis,
    pub action: ActionRule,
}

/// The correspondence of the final theorem of the smash-product section:
/// unital smash modules and unital covariant modules determine each other.
/// Requires R² = R.
pub struct CovariantCorrespondence<'a> {
    pub smash: &'a SmashProduct,
}

impl<'a> CovariantCorrespondence<'a> {
    pub fn new(smash: &'a SmashProduct) -> Result<Self, String> {
        let coeff = &smash.module.coeff;
        if product_span(coeff).dim() != coeff.dim() {
            return Err("R² != R: correspondence hypothesis fails".to_string());
        }
        Ok(CovariantCorrespondence { smash })
    }

    /// Smash module -> covariant pair via the extensions of π_A and π_R.
    pub fn to_covariant(&self, module: &SmashModule) -> Result<CovariantModule, String> {
        let unital = UnitalModule {
            algebra: self.smash.algebra.clone(),
            space: module.space.clone(),
            action: Rc::clone(&module.action),
        };
        let a_basis = self.smash.module.wmha.algebra().basis().unwrap().clone();
        let r_basis = self.smash.module.coeff.basis().unwrap().clone();
        let mut a_table: Vec<Vec<(Label, Element)>> = Vec::new();
        for a in a_basis.iter() {
            a_table.push(unital.extend_multiplier(&self.smash.pi_a(&Element::basis(a.clone())))?);
        }
        let mut r_table: Vec<Vec<(Label, Element)>> = Vec::new();
        for r in r_basis.iter() {
            r_table.push(unital.extend_multiplier(&self.smash.pi_r(&Element::basis(r.clone())))?);
        }
        let space = module.space.clone();
        let a_basis2 = a_basis.clone();
        let space2 = space.clone();
        let a_action: ActionRule = Rc::new(move |a: &Label, v: &Label| {
            let i = a_basis2.position(a).expect("algebra label");
            let j = space2.position(v).expect("space label");
            a_table[i][j].1.clone()
        });
        let space3 = space.clone();
        let r_action: ActionRule = Rc::new(move |r: &Label, v: &Label| {
            let i = r_basis.position(r).expect("coefficient label");
            let j = space3.position(v).expect("space label");
            r_table[i][j].1.clone()
        });
        Ok(CovariantModule {
            space,
            a_action,
            r_action,
        })
    }

    /// Covariant pair -> smash module via (r#_E a)v = r(av).
    pub fn to_smash_module(&self, covariant: &CovariantModule) -> SmashModule {
        let smash = self.smash.clone();
        let cov = covariant.clone();
        let action: ActionRule = Rc::new(move |xi: &Label, v: &Label| {
            let z = smash.lift(&Element::basis(xi.clone()));
            let mut out = Element::zero();
            for (l, c) in z.iter() {
                let (r, a) = l.as_pair().unwrap();
                let av = (cov.a_action)(a, v);
                for (vl, vc) in av.iter() {
                    out.add_scaled(&(cov.r_action)(r, vl), &(c * vc));
                }
            }
            out
        });
        SmashModule {
            space: covariant.space.clone(),
            action,
        }
    }

    /// Covariance law, unitality, and both round-trips on a given smash
    /// module fixture.
    pub fn check_round_trip(&self, module: &SmashModule) -> CheckReport {
        let mut witnesses = Vec::new();
        let covariant = match self.to_covariant(module) {
            Ok(c) => c,
            Err(e) => {
                return CheckReport::from_witnesses(
                    AxiomId::SmashCovariant,
                    alloc::vec![format!("extension failed: {e}")],
                )
            }
        };
        let wmha = &self.smash.module.wmha;
        let a_basis = wmha.algebra().basis().unwrap();
        let r_basis = self.smash.module.coeff.basis().unwrap();
        // Covariance: a(rv) = Σ (a₍₁₎▷r)(a₍₂₎v).
        for a in a_basis.iter() {
            let delta = wmha.delta(&Element::basis(a.clone()));
            for r in r_basis.iter() {
                for v in covariant.space.iter() {
                    let rv = (covariant.r_action)(r, v);
                    let mut lhs = Element::zero();
                    for (vl, vc) in rv.iter() {
                        lhs.add_scaled(&(covariant.a_action)(a, vl), vc);
                    }
                    let mut rhs = Element::zero();
                    for (dl, dc) in delta.iter() {
                        let (u, x) = dl.as_pair().unwrap();
                        let racted = self
                            .smash
                            .module
                            .act(&Element::basis(u.clone()), &Element::basis(r.clone()));
                        let xv = (covariant.a_action)(x, v);
                        for (vl, vc) in xv.iter() {
                            for (rl, rc) in racted.iter() {
                                rhs.add_scaled(&(covariant.r_action)(rl, vl), &(&(dc * vc) * rc));
                            }
                        }
                    }
                    if lhs != rhs {
                        witnesses.push(format!("covariance fails at ({a},{r},{v})"));
                        if witnesses.len() > 5 {
                            return CheckReport::from_witnesses(AxiomId::SmashCovariant, witnesses);
                        }
                    }
                }
            }
        }
        // Round trip: covariant -> smash module recovers the original action.
        let back = self.to_smash_module(&covariant);
        for xi in self.smash.algebra.basis().unwrap().iter() {
            for v in module.space.iter() {
                let orig = (module.action)(xi, v);
                let round = (back.action)(xi, v);
                if orig != round {
                    witnesses.push(format!("round trip differs at ({xi},{v})"));
                }
            }
        }
        // Non-degeneracy transported: the smash module is non-degenerate
        // iff the R-action is (the A-action is automatic for unital V).
        let space = &module.space;
        let mut stacked = SparseMat::new(space.clone());
        for (i, xi) in self.smash.algebra.basis().unwrap().iter().enumerate() {
            for (j, l) in space.iter().enumerate() {
                let mut row = Element::zero();
                for v in space.iter() {
                    row.add_term(v, &(module.action)(xi, v).get(l));
                }
                stacked.push_row(Label::atom(format!("{i}.{j}")), row);
            }
        }
        let smash_nondeg = linalg::kernel_basis(&stacked).is_empty();
        let mut stacked_r = SparseMat::new(space.clone());
        for (i, r) in r_basis.iter().enumerate() {
            for (j, l) in space.iter().enumerate() {
                let mut row = Element::zero();
                for v in space.iter() {
                    row.add_term(v, &(covariant.r_action)(r, v).get(l));
                }
                stacked_r.push_row(Label::atom(format!("{i}.{j}")), row);
            }
        }
        let r_nondeg = linalg::kernel_basis(&stacked_r).is_empty();
        if smash_nondeg != r_nondeg {
            witnesses.push("non-degeneracy not transported".to_string());
        }
        CheckReport::from_witnesses(AxiomId::SmashCovariant, witnesses)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{set_action_module_algebra, trivial_module_algebra, groupoid_algebra};
    use crate::groupoid::{cyclic_group, pair_groupoid, translation_action, GroupoidAction};

    fn p2_module() -> ModuleAlgebra {
        let g = pair_groupoid(2).unwrap();
        let action = GroupoidAction::from_parts(
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
        .unwrap();
        set_action_module_algebra(&action).unwrap()
    }

    #[test]
    fn group_smash_is_full_tensor() {
        let g = cyclic_group(2).unwrap();
        let m = set_action_module_algebra(&translation_action(&g)).unwrap();
        let s = SmashProduct::new(&m).unwrap();
        // E = 1⊗1: the carrier is all of R⊗A.
        assert_eq!(s.dim(), 4);
        let report = s.run_smash_suite();
        assert!(report.is_pass(), "{report}");
    }

    #[test]
    fn kx_smash_cp2() {
        let m = p2_module();
        let s = SmashProduct::new(&m).unwrap();
        // carrier = span{δ_x ⊗ λ_a : target(a) = object(x)}, dimension 4
        assert_eq!(s.dim(), 4);
        let report = s.run_smash_suite();
        assert!(report.is_pass(), "{report}");
        // unital R embeds: a -> 1_R #_E a is a homomorphism
        let one_r = m.coeff.unit().unwrap();
        let a_basis = m.wmha.algebra().basis().unwrap().clone();
        for a in a_basis.iter() {
            let ea = Element::basis(a.clone());
            for b in a_basis.iter() {
                let eb = Element::basis(b.clone());
                let lhs = s.algebra.mul(&s.embed(&one_r, &ea), &s.embed(&one_r, &eb));
                let rhs = s.embed(&one_r, &m.wmha.mul(&ea, &eb));
                assert_eq!(lhs, rhs, "1#a homomorphism fails at ({a},{b})");
            }
        }
    }

    #[test]
    fn balanced_tensor_cp2() {
        let m = p2_module();
        let s = SmashProduct::new(&m).unwrap();
        let t = BalancedTensor::new(&m);
        assert_eq!(t.dim(), s.dim());
        let report = t.check(&s);
        assert!(report.is_ok(), "{report}");
    }

    #[test]
    fn balanced_tensor_group_case_is_trivial() {
        let g = cyclic_group(2).unwrap();
        let m = set_action_module_algebra(&translation_action(&g)).unwrap();
        let t = BalancedTensor::new(&m);
        // ε_t(A) is scalar: the balancing relations are trivial.
        assert_eq!(t.dim(), 4);
        let s = SmashProduct::new(&m).unwrap();
        assert!(t.check(&s).is_ok());
    }

    #[test]
    fn covariant_round_trips() {
        let m = p2_module();
        let s = SmashProduct::new(&m).unwrap();
        let corr = CovariantCorrespondence::new(&s).unwrap();
        // V = the carrier acting on itself.
        let alg = s.algebra.clone();
        let self_module = SmashModule {
            space: s.algebra.basis().unwrap().clone(),
            action: Rc::new(move |xi: &Label, v: &Label| {
                alg.mul(&Element::basis(xi.clone()), &Element::basis(v.clone()))
            }),
        };
        let report = corr.check_round_trip(&self_module);
        assert!(report.is_ok(), "{report}");
        // V = R with (r#_E a)v = r(a▷v).
        let m2 = m.clone();
        let s2 = s.clone();
        let r_module = SmashModule {
            space: m.coeff.basis().unwrap().clone(),
            action: Rc::new(move |xi: &Label, v: &Label| {
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
        let report = corr.check_round_trip(&r_module);
        assert!(report.is_ok(), "{report}");
    }

    #[test]
    fn trivial_action_smash() {
        let w = groupoid_algebra(&pair_groupoid(2).unwrap());
        let m = trivial_module_algebra(&w).unwrap();
        let s = SmashProduct::new(&m).unwrap();
        let report = s.run_smash_suite();
        assert!(report.is_pass(), "{report}");
        let t = BalancedTensor::new(&m);
        assert!(t.check(&s).is_ok());
    }
}
