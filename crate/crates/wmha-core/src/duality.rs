//! Integrals, the dual structure of an algebraic quantum groupoid, dual
//! pairings, the Heisenberg picture, and the duality theorem for actions.
//!
//! The dual carrier is realized concretely: a functional is stored as its
//! value vector over the primal basis, and the dual basis is the canonical
//! row-reduced family among {φ(a·)}. All dual structure maps are obtained by
//! solving the defining duality relations as exact linear systems; the
//! result is then re-verified by the generic structure suite, which shares
//! no code with the construction.

use alloc::format;
use alloc::rc::Rc;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::action::{ActionRule, ModuleAlgebra};
use crate::algebra::{tensor2, tensor_elem, Algebra, Element, ProductRule};
use crate::label::{Basis, Label};
use crate::linalg::{self, solve_batch, solve_linear_map, Span, SparseMat, SparseVec};
use crate::report::{AxiomId, CheckReport, SuiteReport};
use crate::scalar::Scalar;
use crate::smash::SmashProduct;
use crate::wmha::{LinMap, ScalarMap, TMap, Wmha, WmhaSpec};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Side {
    Left,
    Right,
}

/// Evaluates a functional (stored as its value vector over the basis)
/// on an element.
pub fn eval_functional(phi: &Element, x: &Element) -> Scalar {
    let mut out = Scalar::zero();
    for (l, c) in x.iter() {
        let v = phi.get(l);
        if !v.is_zero() {
            out += &(c * &v);
        }
    }
    out
}

/// Basis of the space of invariant functionals: left invariance means
/// (ι⊗φ)Δ(a) ∈ A_t for every basis a; right invariance is the A_s mirror.
/// Returns an exact basis of the solution space (zero excluded by
/// construction).
pub fn find_integrals(w: &Wmha, side: Side) -> Vec<Element> {
    let basis = w.algebra().basis().expect("finite").clone();
    let base_span = match side {
        Side::Left => Span::over_basis(&w.target_span(), &basis),
        Side::Right => Span::over_basis(&w.source_span(), &basis),
    };
    // Unknown: the value vector of φ. For each basis a the residue of
    // (ι⊗φ)Δ(a) modulo the base algebra must vanish; each residue
    // coordinate is linear in φ.
    let mut system = SparseMat::new(basis.clone());
    for (ai, a) in basis.iter().enumerate() {
        let delta = w.delta(&Element::basis(a.clone()));
        // contributions[w-label] = Σ_u c_{uw}·u, the element multiplying φ(w).
        let grouped = crate::algebra::group_by_second(&delta);
        let mut residues: Vec<(Label, Element)> = Vec::new();
        for (wl, part) in grouped {
            let slice = match side {
                Side::Left => part,
                Side::Right => part,
            };
            let reduced = base_span.reduce(&slice);
            if !reduced.is_zero() {
                residues.push((wl, reduced));
            }
        }
        // Row per output coordinate: Σ_w φ(w)·reduced_w[l] = 0.
        let mut out_labels: Vec<Label> = Vec::new();
        for (_, red) in &residues {
            for l in red.support() {
                if !out_labels.contains(l) {
                    out_labels.push(l.clone());
                }
            }
        }
        for (li, l) in out_labels.iter().enumerate() {
            let mut row = SparseVec::zero();
            for (wl, red) in &residues {
                row.add_term(wl, &red.get(l));
            }
            system.push_row(Label::atom(format!("{ai}.{li}")), row);
        }
    }
    match side {
        Side::Left => {}
        Side::Right => {}
    }
    linalg::kernel_basis(&system)
}

/// Left invariance uses (ι⊗φ)Δ(a); right invariance (φ⊗ι)Δ(a). This
/// grouping picks the leg φ is applied to.
fn invariance_slices(w: &Wmha, a: &Label, side: Side) -> Vec<(Label, Element)> {
    let delta = w.delta(&Element::basis(a.clone()));
    match side {
        Side::Left => crate::algebra::group_by_second(&delta),
        Side::Right => crate::algebra::group_by_first(&delta),
    }
}

/// Direct check that a single functional is invariant on the given side.
pub fn is_invariant(w: &Wmha, phi: &Element, side: Side) -> bool {
    let basis = w.algebra().basis().expect("finite").clone();
    let base_span = match side {
        Side::Left => Span::over_basis(&w.target_span(), &basis),
        Side::Right => Span::over_basis(&w.source_span(), &basis),
    };
    for a in basis.iter() {
        let mut contracted = Element::zero();
        for (leg, part) in invariance_slices(w, a, side) {
            contracted.add_scaled(&part, &phi.get(&leg));
        }
        if !base_span.contains(&contracted) {
            return false;
        }
    }
    true
}

/// A set of functionals is faithful when x = 0 follows from φ(xa) = 0 for
/// all φ, a, and likewise from φ(ax) = 0.
pub fn check_faithful(w: &Wmha, phis: &[Element]) -> bool {
    let basis = w.algebra().basis().expect("finite").clone();
    let mut stacked = SparseMat::new(basis.clone());
    let mut idx = 0usize;
    for phi in phis {
        for a in basis.iter() {
            let mut row_r = SparseVec::zero();
            let mut row_l = SparseVec::zero();
            for x in basis.iter() {
                let xa = w.mul(&Element::basis(x.clone()), &Element::basis(a.clone()));
                row_r.add_term(x, &eval_functional(phi, &xa));
                let ax = w.mul(&Element::basis(a.clone()), &Element::basis(x.clone()));
                row_l.add_term(x, &eval_functional(phi, &ax));
            }
            stacked.push_row(Label::atom(format!("r{idx}")), row_r);
            stacked.push_row(Label::atom(format!("l{idx}")), row_l);
            idx += 1;
        }
    }
    linalg::kernel_basis(&stacked).is_empty()
}

/// An algebraic quantum groupoid together with its constructed dual and the
/// canonical pairing ⟨a, ω⟩ = ω(a).
pub struct DualPair {
    pub primal: Wmha,
    pub dual: Wmha,
    pub phi: Element,
    /// Value vector over the primal basis of each dual basis element.
    functionals: Vec<Element>,
    dual_span: Span,
    primal_basis: Basis,
    dual_basis: Basis,
}

impl DualPair {
    /// ⟨a, ω⟩ for a over the primal basis and ω over the dual basis.
    pub fn pair(&self, a: &Element, omega: &Element) -> Scalar {
        let mut out = Scalar::zero();
        for (i, f) in self.functionals.iter().enumerate() {
            let c = omega.get(self.dual_basis.label(i));
            if !c.is_zero() {
                out += &(&c * &eval_functional(f, a));
            }
        }
        out
    }

    /// The value vector over the primal basis of a dual element.
    pub fn functional_of(&self, omega: &Element) -> Element {
        let mut out = Element::zero();
        for (i, f) in self.functionals.iter().enumerate() {
            let c = omega.get(self.dual_basis.label(i));
            if !c.is_zero() {
                out.add_scaled(f, &c);
            }
        }
        out
    }

    /// Dual coordinates of a functional given by its value vector, if it
    /// lies in the dual carrier.
    pub fn to_dual_coords(&self, values: &Element) -> Option<Element> {
        let coords = self.dual_span.coordinates(values)?;
        let mut out = Element::zero();
        for (i, c) in coords.iter().enumerate() {
            out.add_term(self.dual_basis.label(i), c);
        }
        Some(out)
    }

    /// φ(c·) in dual coordinates.
    pub fn phi_shift(&self, c: &Element) -> Element {
        let basis = &self.primal_basis;
        let mut values = Element::zero();
        for x in basis.iter() {
            let cx = self.primal.mul(c, &Element::basis(x.clone()));
            values.add_term(x, &eval_functional(&self.phi, &cx));
        }
        self.to_dual_coords(&values)
            .expect("φ(c·) lies in the dual carrier")
    }

    /// The inverse of `phi_shift` (exists by faithfulness).
    pub fn phi_shift_inv(&self, omega: &Element) -> Element {
        let basis = &self.primal_basis;
        let pairs: Vec<(Element, Element)> = basis
            .iter()
            .map(|c| {
                (
                    self.phi_shift(&Element::basis(c.clone())),
                    Element::basis(c.clone()),
                )
            })
            .collect();
        let sol = solve_linear_map(&pairs, &self.dual_basis, basis)
            .expect("phi_shift is invertible");
        sol.matrix.apply(omega)
    }

    /// a▷ω: the functional x ↦ ω(xa).
    pub fn act_on_dual_left(&self, a: &Element, omega: &Element) -> Element {
        let f = self.functional_of(omega);
        let mut values = Element::zero();
        for x in self.primal_basis.iter() {
            let xa = self.primal.mul(&Element::basis(x.clone()), a);
            values.add_term(x, &eval_functional(&f, &xa));
        }
        self.to_dual_coords(&values).expect("a▷ω stays in the dual")
    }

    /// ω◁a: the functional x ↦ ω(ax).
    pub fn act_on_dual_right(&self, omega: &Element, a: &Element) -> Element {
        let f = self.functional_of(omega);
        let mut values = Element::zero();
        for x in self.primal_basis.iter() {
            let ax = self.primal.mul(a, &Element::basis(x.clone()));
            values.add_term(x, &eval_functional(&f, &ax));
        }
        self.to_dual_coords(&values).expect("ω◁a stays in the dual")
    }

    /// ω▷a = Σ a₍₁₎⟨a₍₂₎, ω⟩.
    pub fn act_on_primal_left(&self, omega: &Element, a: &Element) -> Element {
        let f = self.functional_of(omega);
        let delta = self.primal.delta(a);
        let mut out = Element::zero();
        for (l, c) in delta.iter() {
            let (u, v) = l.as_pair().unwrap();
            let val = f.get(v);
            if !val.is_zero() {
                out.add_term(u, &(c * &val));
            }
        }
        out
    }

    /// a◁ω = Σ ⟨a₍₁₎, ω⟩a₍₂₎.
    pub fn act_on_primal_right(&self, a: &Element, omega: &Element) -> Element {
        let f = self.functional_of(omega);
        let delta = self.primal.delta(a);
        let mut out = Element::zero();
        for (l, c) in delta.iter() {
            let (u, v) = l.as_pair().unwrap();
            let val = f.get(u);
            if !val.is_zero() {
                out.add_term(v, &(c * &val));
            }
        }
        out
    }

    fn primal_elems(&self) -> Vec<Element> {
        self.primal_basis
            .iter()
            .map(|l| Element::basis(l.clone()))
            .collect()
    }

    fn dual_elems(&self) -> Vec<Element> {
        self.dual_basis
            .iter()
            .map(|l| Element::basis(l.clone()))
            .collect()
    }

    /// The pairing laws: duality of products and coproducts on both sides,
    /// counit compatibility (both evaluation routes for ⟨a,1⟩), the
    /// antipode transpose, and ⟨a⊗a', Ê⟩ = ε(aa').
    pub fn check_pairing(&self) -> CheckReport {
        let mut witnesses = Vec::new();
        let a_elems = self.primal_elems();
        let d_elems = self.dual_elems();
        let one_dual = self
            .dual
            .unit()
            .expect("dual of a finite structure is unital");
        let one_primal = self.primal.unit().expect("unital");
        for a in &a_elems {
            for b in &a_elems {
                let ab = self.primal.mul(a, b);
                for om in &d_elems {
                    // ⟨ab, ω⟩ = Σ ⟨a, ω₍₁₎⟩⟨b, ω₍₂₎⟩ via the dual T-maps.
                    let lhs = self.pair(&ab, om);
                    let delta_om = self.dual.delta(om);
                    let mut rhs = Scalar::zero();
                    for (l, c) in delta_om.iter() {
                        let (p, q) = l.as_pair().unwrap();
                        rhs += &(&(c
                            * &self.pair(a, &Element::basis(p.clone())))
                            * &self.pair(b, &Element::basis(q.clone())));
                    }
                    if lhs != rhs {
                        witnesses.push(format!("⟨ab,ω⟩ != ⟨a⊗b,Δ̂ω⟩ at ({a},{b},{om})"));
                    }
                }
                // ⟨a⊗b, Ê⟩ = ε(ab).
                let e_dual = self.dual.e_elem();
                let mut val = Scalar::zero();
                for (l, c) in e_dual.iter() {
                    let (p, q) = l.as_pair().unwrap();
                    val += &(&(c * &self.pair(a, &Element::basis(p.clone())))
                        * &self.pair(b, &Element::basis(q.clone())));
                }
                if val != self.primal.counit(&ab) {
                    witnesses.push(format!("⟨a⊗b,Ê⟩ != ε(ab) at ({a},{b})"));
                }
            }
        }
        for om in &d_elems {
            for om2 in &d_elems {
                let prod = self.dual.mul(om, om2);
                for a in &a_elems {
                    // ⟨a, ωω'⟩ = (ω⊗ω')(Δa).
                    let lhs = self.pair(a, &prod);
                    let delta = self.primal.delta(a);
                    let mut rhs = Scalar::zero();
                    for (l, c) in delta.iter() {
                        let (u, v) = l.as_pair().unwrap();
                        rhs += &(&(c * &self.pair(&Element::basis(u.clone()), om))
                            * &self.pair(&Element::basis(v.clone()), om2));
                    }
                    if lhs != rhs {
                        witnesses.push(format!("⟨a,ωω'⟩ != (ω⊗ω')Δ(a) at ({a},{om},{om2})"));
                    }
                }
            }
            // ε̂(ω) = ⟨1, ω⟩.
            let lhs = self.dual.counit(om);
            let rhs = self.pair(&one_primal, om);
            if lhs != rhs {
                witnesses.push(format!("ε̂(ω) != ω(1) at {om}"));
            }
            // antipode transpose
            for a in &a_elems {
                let lhs = self.pair(&self.primal.s(a), om);
                let rhs = self.pair(a, &self.dual.s(om));
                if lhs != rhs {
                    witnesses.push(format!("⟨S(a),ω⟩ != ⟨a,Ŝ(ω)⟩ at ({a},{om})"));
                }
            }
        }
        // ε_A(a) = ⟨a, 1⟩, with both extension routes agreeing:
        // ⟨a,1·b⟩ = ⟨a◁b... in the ⟨A,Â⟩ pairing: ε(a◁ω) = ⟨a,ω⟩ = ε̂-side.
        for a in &a_elems {
            let lhs = self.primal.counit(a);
            let rhs = self.pair(a, &one_dual);
            if lhs != rhs {
                witnesses.push(format!("ε(a) != ⟨a,1⟩ at {a}"));
            }
            for om in &d_elems {
                let via_left = self.primal.counit(&self.act_on_primal_right(a, om));
                let via_right = self.primal.counit(&self.act_on_primal_left(om, a));
                let direct = self.pair(a, om);
                if via_left != direct || via_right != direct {
                    witnesses.push(format!("⟨a,1⟩ extension routes disagree at ({a},{om})"));
                }
            }
        }
        CheckReport::from_witnesses(AxiomId::PairingLaws, witnesses)
    }

    /// Surjectivity of the four pairing actions.
    pub fn check_surjectivity(&self) -> CheckReport {
        let mut witnesses = Vec::new();
        let a_elems = self.primal_elems();
        let d_elems = self.dual_elems();
        let mut onto_dual_l = Vec::new();
        let mut onto_dual_r = Vec::new();
        let mut onto_primal_l = Vec::new();
        let mut onto_primal_r = Vec::new();
        for a in &a_elems {
            for om in &d_elems {
                onto_dual_l.push(self.act_on_dual_left(a, om));
                onto_dual_r.push(self.act_on_dual_right(om, a));
                onto_primal_l.push(self.act_on_primal_left(om, a));
                onto_primal_r.push(self.act_on_primal_right(a, om));
            }
        }
        let nd = self.dual_basis.len();
        let na = self.primal_basis.len();
        if linalg::span_rank(&onto_dual_l) != nd {
            witnesses.push("a▷ω is not surjective".to_string());
        }
        if linalg::span_rank(&onto_dual_r) != nd {
            witnesses.push("ω◁a is not surjective".to_string());
        }
        if linalg::span_rank(&onto_primal_l) != na {
            witnesses.push("ω▷a is not surjective".to_string());
        }
        if linalg::span_rank(&onto_primal_r) != na {
            witnesses.push("a◁ω is not surjective".to_string());
        }
        CheckReport::from_witnesses(AxiomId::PairingSurjective, witnesses)
    }
}

/// Builds the dual structure of Theorem 3.15 from a faithful left integral:
/// carrier Â = {φ(a·)}, product (ωω')(x) = (ω⊗ω')Δ(x), T̂-maps solved from
/// the duality relations, Ŝ = (·)∘S, ε̂(ω) = ω(1), and Ê determined by
/// ⟨x⊗y, Ê⟩ = ε(xy).
pub fn dual_wmha(w: &Wmha, phi: &Element) -> Result<DualPair, String> {
    let primal_basis = w.algebra().basis().expect("finite").clone();
    let n = primal_basis.len();
    // Value vectors of φ(λ_a ·).
    let shifted: Vec<Element> = primal_basis
        .iter()
        .map(|a| {
            let mut values = Element::zero();
            for x in primal_basis.iter() {
                let ax = w.mul(&Element::basis(a.clone()), &Element::basis(x.clone()));
                values.add_term(x, &eval_functional(phi, &ax));
            }
            values
        })
        .collect();
    let dual_span = Span::over_basis(&shifted, &primal_basis);
    if dual_span.dim() != n {
        return Err(format!(
            "dual carrier has dimension {} < {}: the selected integral is not faithful",
            dual_span.dim(),
            n
        ));
    }
    let functionals = dual_span.basis_vectors();
    // Label dual basis elements by the primal label when the canonical
    // functional is a single delta, synthetic otherwise.
    let single = functionals.iter().all(|f| f.len() == 1);
    let labels: Vec<Label> = functionals
        .iter()
        .enumerate()
        .map(|(i, f)| {
            if single {
                f.support().next().unwrap().clone()
            } else {
                Label::atom(format!("w{i}"))
            }
        })
        .collect();
    let dual_basis = Basis::new(labels.clone());

    // Product structure constants: (ω_iω_j)(x) = Σ ω_i(x₍₁₎)ω_j(x₍₂₎).
    let mut product_table: Vec<Vec<Element>> = Vec::new();
    for fi in &functionals {
        let mut row = Vec::new();
        for fj in &functionals {
            let mut values = Element::zero();
            for x in primal_basis.iter() {
                let delta = w.delta(&Element::basis(x.clone()));
                let mut acc = Scalar::zero();
                for (l, c) in delta.iter() {
                    let (u, v) = l.as_pair().unwrap();
                    let a = fi.get(u);
                    if a.is_zero() {
                        continue;
                    }
                    let b = fj.get(v);
                    if b.is_zero() {
                        continue;
                    }
                    acc += &(&(c * &a) * &b);
                }
                values.add_term(x, &acc);
            }
            let coords = dual_span
                .coordinates(&values)
                .ok_or_else(|| "dual product is not closed: inconsistent duality system".to_string())?;
            let mut e = Element::zero();
            for (k, c) in coords.iter().enumerate() {
                e.add_term(&labels[k], c);
            }
            row.push(e);
        }
        product_table.push(row);
    }
    let dual_basis_for_rule = dual_basis.clone();
    let product: ProductRule = Rc::new(move |a: &Label, b: &Label| {
        let i = dual_basis_for_rule.position(a).expect("dual label");
        let j = dual_basis_for_rule.position(b).expect("dual label");
        product_table[i][j].clone()
    });
    let dual_alg = Algebra::finite("dual algebra", dual_basis.clone(), product)
        .map_err(|e| format!("dual product: {e}"))?;

    // Solve the T̂-map and Ê systems: unknowns in Â⊗Â, constraint rows
    // indexed by primal basis pairs, coefficient ω_k(x)ω_l(y).
    let dual2 = dual_basis.tensor(&dual_basis);
    let mut rows: Vec<(Label, SparseVec)> = Vec::new();
    for x in primal_basis.iter() {
        for y in primal_basis.iter() {
            let mut row = SparseVec::zero();
            for (k, fk) in functionals.iter().enumerate() {
                let a = fk.get(x);
                if a.is_zero() {
                    continue;
                }
                for (l, fl) in functionals.iter().enumerate() {
                    let b = fl.get(y);
                    if b.is_zero() {
                        continue;
                    }
                    row.set(
                        Label::pair(labels[k].clone(), labels[l].clone()),
                        &a * &b,
                    );
                }
            }
            rows.push((Label::pair(x.clone(), y.clone()), row));
        }
    }
    // Right-hand sides: ⟨T2(x⊗y), ω_i⊗ω_j⟩ for T̂1, ⟨T1(x⊗y), ·⟩ for T̂2,
    // ⟨fl T3(y⊗x), ·⟩ for T̂3, ⟨fl T4(y⊗x), ·⟩ for T̂4, and ε(xy) for Ê.
    let pair_with = |z: &Element, fi: &Element, fj: &Element| -> Scalar {
        let mut acc = Scalar::zero();
        for (l, c) in z.iter() {
            let (u, v) = l.as_pair().unwrap();
            let a = fi.get(u);
            if a.is_zero() {
                continue;
            }
            let b = fj.get(v);
            if b.is_zero() {
                continue;
            }
            acc += &(&(c * &a) * &b);
        }
        acc
    };
    let mut targets: Vec<SparseVec> = Vec::new();
    let mut target_tags: Vec<(usize, usize, usize)> = Vec::new(); // (map, i, j)
    for (mi, tmap) in [0usize, 1, 2, 3].iter().enumerate() {
        let _ = tmap;
        for (i, fi) in functionals.iter().enumerate() {
            for (j, fj) in functionals.iter().enumerate() {
                let mut t = SparseVec::zero();
                for x in primal_basis.iter() {
                    for y in primal_basis.iter() {
                        let ex = Element::basis(x.clone());
                        let ey = Element::basis(y.clone());
                        let z = match mi {
                            0 => w.t2(&ex, &ey),
                            1 => w.t1(&ex, &ey),
                            2 => crate::algebra::flip2(&w.t3(&ey, &ex)),
                            _ => crate::algebra::flip2(&w.t4(&ey, &ex)),
                        };
                        let val = pair_with(&z, fi, fj);
                        if !val.is_zero() {
                            t.set(Label::pair(x.clone(), y.clone()), val);
                        }
                    }
                }
                targets.push(t);
                target_tags.push((mi, i, j));
            }
        }
    }
    // Ê target.
    let mut e_target = SparseVec::zero();
    for x in primal_basis.iter() {
        for y in primal_basis.iter() {
            let xy = w.mul(&Element::basis(x.clone()), &Element::basis(y.clone()));
            let val = w.counit(&xy);
            if !val.is_zero() {
                e_target.set(Label::pair(x.clone(), y.clone()), val);
            }
        }
    }
    targets.push(e_target);
    let solutions = solve_batch(&rows, &dual2, &targets)
        .ok_or_else(|| "duality system inconsistent: input not faithful".to_string())?;
    let e_hat = solutions.last().unwrap().clone();
    let mut tmap_tables: [Vec<Vec<Element>>; 4] = [
        alloc::vec![alloc::vec![Element::zero(); n]; n],
        alloc::vec![alloc::vec![Element::zero(); n]; n],
        alloc::vec![alloc::vec![Element::zero(); n]; n],
        alloc::vec![alloc::vec![Element::zero(); n]; n],
    ];
    for (sol, (mi, i, j)) in solutions.iter().zip(target_tags.iter()) {
        tmap_tables[*mi][*i][*j] = sol.clone();
    }
    let [t1_table, t2_table, t3_table, t4_table] = tmap_tables;
    let mk_tmap = |table: Vec<Vec<Element>>| -> TMap {
        let basis = dual_basis.clone();
        Rc::new(move |a: &Label, b: &Label| {
            let i = basis.position(a).expect("dual label");
            let j = basis.position(b).expect("dual label");
            table[i][j].clone()
        })
    };
    let t1 = mk_tmap(t1_table);
    let t2 = mk_tmap(t2_table);
    let t3 = mk_tmap(t3_table);
    let t4 = mk_tmap(t4_table);

    // Counit: ε̂(ω) = ω(1).
    let one = w
        .unit()
        .ok_or_else(|| "primal structure has no unit".to_string())?;
    let counit_values: Vec<Scalar> = functionals
        .iter()
        .map(|f| eval_functional(f, &one))
        .collect();
    let dual_basis_for_counit = dual_basis.clone();
    let counit: ScalarMap = Rc::new(move |l: &Label| {
        counit_values[dual_basis_for_counit.position(l).expect("dual label")].clone()
    });

    // Antipode: Ŝ(ω) = ω∘S, in dual coordinates.
    let mut s_images: Vec<Element> = Vec::new();
    let mut s_inv_images: Vec<Element> = Vec::new();
    for f in &functionals {
        let mut values = Element::zero();
        let mut values_inv = Element::zero();
        for x in primal_basis.iter() {
            let sx = w.s(&Element::basis(x.clone()));
            values.add_term(x, &eval_functional(f, &sx));
            let six = w.s_inv(&Element::basis(x.clone()));
            values_inv.add_term(x, &eval_functional(f, &six));
        }
        s_images.push(
            dual_span
                .coordinates(&values)
                .map(|coords| coords_to_elem(&coords, &labels))
                .ok_or_else(|| "Ŝ leaves the dual carrier".to_string())?,
        );
        s_inv_images.push(
            dual_span
                .coordinates(&values_inv)
                .map(|coords| coords_to_elem(&coords, &labels))
                .ok_or_else(|| "Ŝ⁻¹ leaves the dual carrier".to_string())?,
        );
    }
    let dual_basis_for_s = dual_basis.clone();
    let antipode: LinMap = Rc::new(move |l: &Label| {
        s_images[dual_basis_for_s.position(l).expect("dual label")].clone()
    });
    let dual_basis_for_si = dual_basis.clone();
    let antipode_inv: LinMap = Rc::new(move |l: &Label| {
        s_inv_images[dual_basis_for_si.position(l).expect("dual label")].clone()
    });

    // Ê acts by multiplication with its materialized element.
    let dual_t2alg = tensor2(&dual_alg, &dual_alg);
    let e_for_left = e_hat.clone();
    let t2_for_left = dual_t2alg.clone();
    let e_left = Rc::new(move |z: &Element| t2_for_left.mul(&e_for_left, z));
    let e_for_right = e_hat;
    let e_right = Rc::new(move |z: &Element| dual_t2alg.mul(z, &e_for_right));

    let dual = Wmha::from_spec(WmhaSpec {
        algebra: dual_alg,
        t1,
        t2,
        t3: Some(t3),
        t4: Some(t4),
        counit,
        antipode,
        antipode_inv: Some(antipode_inv),
        e_left,
        e_right,
    });
    Ok(DualPair {
        primal: w.clone(),
        dual,
        phi: phi.clone(),
        functionals,
        dual_span,
        primal_basis,
        dual_basis,
    })
}

fn coords_to_elem(coords: &[Scalar], labels: &[Label]) -> Element {
    let mut out = Element::zero();
    for (i, c) in coords.iter().enumerate() {
        out.add_term(&labels[i], c);
    }
    out
}

/// Checks that a linear map (given on basis coordinates) is an isomorphism
/// of structures: bijective, multiplicative, intertwines the T-maps, the
/// counit, the antipode and E.
pub fn check_wmha_isomorphism(
    w1: &Wmha,
    w2: &Wmha,
    f: &dyn Fn(&Element) -> Element,
) -> CheckReport {
    let mut witnesses = Vec::new();
    let b1 = w1.algebra().basis().expect("finite");
    let images: Vec<Element> = b1
        .iter()
        .map(|l| f(&Element::basis(l.clone())))
        .collect();
    if linalg::span_rank(&images) != w2.algebra().dim() || b1.len() != w2.algebra().dim() {
        witnesses.push("map is not bijective".to_string());
        return CheckReport::from_witnesses(AxiomId::WmhaIsomorphism, witnesses);
    }
    let f2 = |z: &Element| -> Element {
        // (f⊗f) on pair-labelled elements
        let mut out = Element::zero();
        for (l, c) in z.iter() {
            let (a, b) = l.as_pair().unwrap();
            out.add_scaled(
                &tensor_elem(&f(&Element::basis(a.clone())), &f(&Element::basis(b.clone()))),
                c,
            );
        }
        out
    };
    for a in b1.iter() {
        let ea = Element::basis(a.clone());
        let fa = f(&ea);
        // counit and antipode
        if w2.counit(&fa) != w1.counit(&ea) {
            witnesses.push(format!("ε₂(f({a})) != ε₁({a})"));
        }
        if f(&w1.s(&ea)) != w2.s(&fa) {
            witnesses.push(format!("f(S({a})) != S(f({a}))"));
        }
        for b in b1.iter() {
            let eb = Element::basis(b.clone());
            let fb = f(&eb);
            if f(&w1.mul(&ea, &eb)) != w2.mul(&fa, &fb) {
                witnesses.push(format!("f({a}{b}) != f({a})f({b})"));
            }
            if f2(&w1.t1(&ea, &eb)) != w2.t1(&fa, &fb) {
                witnesses.push(format!("(f⊗f)T1({a}⊗{b}) != T1(f⊗f)"));
            }
            if f2(&w1.t2(&ea, &eb)) != w2.t2(&fa, &fb) {
                witnesses.push(format!("(f⊗f)T2({a}⊗{b}) != T2(f⊗f)"));
            }
            if w1.is_regular() && w2.is_regular() {
                if f2(&w1.t3(&ea, &eb)) != w2.t3(&fa, &fb) {
                    witnesses.push(format!("(f⊗f)T3({a}⊗{b}) != T3(f⊗f)"));
                }
                if f2(&w1.t4(&ea, &eb)) != w2.t4(&fa, &fb) {
                    witnesses.push(format!("(f⊗f)T4({a}⊗{b}) != T4(f⊗f)"));
                }
            }
            if witnesses.len() > 6 {
                return CheckReport::from_witnesses(AxiomId::WmhaIsomorphism, witnesses);
            }
        }
    }
    if f2(&w1.e_elem()) != w2.e_elem() {
        witnesses.push("(f⊗f)(E₁) != E₂".to_string());
    }
    CheckReport::from_witnesses(AxiomId::WmhaIsomorphism, witnesses)
}

/// Prop 5.1: Â is a faithful left module over Â#_{E_A}A via
/// (ω#a)·ω' = ω(a▷ω').
pub fn check_smash_on_dual_action(dp: &DualPair) -> CheckReport {
    let mut witnesses = Vec::new();
    let module = dual_coefficient_module(dp);
    let smash = match SmashProduct::new(&module) {
        Ok(s) => s,
        Err(e) => {
            return CheckReport::from_witnesses(
                AxiomId::DualAction,
                alloc::vec![format!("smash construction failed: {e}")],
            )
        }
    };
    // action of the carrier on Â
    let act = |xi: &Element, omega: &Element| -> Element {
        let z = smash.lift(xi);
        let mut out = Element::zero();
        for (l, c) in z.iter() {
            let (om, a) = l.as_pair().unwrap();
            let acted = dp.act_on_dual_left(&Element::basis(a.clone()), omega);
            out.add_scaled(&dp.dual.mul(&Element::basis(om.clone()), &acted), c);
        }
        out
    };
    let d_elems = dp.dual_elems();
    let carrier = smash.carrier_witnesses();
    for xi in &carrier {
        for eta in &carrier {
            let prod = smash.algebra.mul(xi, eta);
            for om in &d_elems {
                let lhs = act(&prod, om);
                let rhs = act(xi, &act(eta, om));
                if lhs != rhs {
                    witnesses.push(format!("module law fails at ({xi},{eta},{om})"));
                    if witnesses.len() > 5 {
                        return CheckReport::from_witnesses(AxiomId::DualAction, witnesses);
                    }
                }
            }
        }
    }
    // faithfulness: flatten the operators
    let flat: Vec<Element> = carrier
        .iter()
        .map(|xi| {
            linalg::flatten_operator(&dp.dual_basis, |v| act(xi, &Element::basis(v.clone())))
        })
        .collect();
    if linalg::span_rank(&flat) != smash.dim() {
        witnesses.push("the action of Â#A on Â is not faithful".to_string());
    }
    CheckReport::from_witnesses(AxiomId::DualAction, witnesses)
}

/// Â as a left A-module algebra via a▷ω (the coefficient algebra of
/// Â#_{E_A}A).
pub fn dual_coefficient_module(dp: &DualPair) -> ModuleAlgebra {
    let dp2 = dual_pair_rc(dp);
    let rule: ActionRule = Rc::new(move |a: &Label, om: &Label| {
        dp2.act_on_dual_left(&Element::basis(a.clone()), &Element::basis(om.clone()))
    });
    ModuleAlgebra::new(dp.primal.clone(), dp.dual.algebra().clone(), rule)
}

/// A as a left Â-module algebra via ω▷a (the coefficient algebra of
/// A#_Ê Â).
pub fn primal_coefficient_module(dp: &DualPair) -> ModuleAlgebra {
    let dp2 = dual_pair_rc(dp);
    let rule: ActionRule = Rc::new(move |om: &Label, a: &Label| {
        dp2.act_on_primal_left(&Element::basis(om.clone()), &Element::basis(a.clone()))
    });
    ModuleAlgebra::new(dp.dual.clone(), dp.primal.algebra().clone(), rule)
}

// DualPair is cloned into action closures through a cheap Rc-backed copy.
fn dual_pair_rc(dp: &DualPair) -> Rc<DualPair> {
    Rc::new(DualPair {
        primal: dp.primal.clone(),
        dual: dp.dual.clone(),
        phi: dp.phi.clone(),
        functionals: dp.functionals.clone(),
        dual_span: Span::over_basis(&dp.functionals, &dp.primal_basis),
        primal_basis: dp.primal_basis.clone(),
        dual_basis: dp.dual_basis.clone(),
    })
}

/// Prop 5.2 and 5.3: the commutation relation ab = Σ ⟨a₍₁₎,b₍₂₎⟩b₍₁₎a₍₂₎
/// inside the operators on Â, and the anti-isomorphism
/// b#_{E_A}a -> S⁻¹(a)#_{E_B}S(b) between the two smash products.
pub fn check_commutation_picture(dp: &DualPair) -> CheckReport {
    let mut witnesses = Vec::new();
    // Operators on B = Â: A acts by a▷·, B by left multiplication.
    let a_elems = dp.primal_elems();
    let d_elems = dp.dual_elems();
    for a in &a_elems {
        let delta_a = dp.primal.delta(a);
        for b in &d_elems {
            let delta_b = dp.dual.delta(b);
            for x in &d_elems {
                let lhs = dp.act_on_dual_left(a, &dp.dual.mul(b, x));
                let mut rhs = Element::zero();
                for (la, ca) in delta_a.iter() {
                    let (a1, a2) = la.as_pair().unwrap();
                    for (lb, cb) in delta_b.iter() {
                        let (b1, b2) = lb.as_pair().unwrap();
                        let c = dp.pair(
                            &Element::basis(a1.clone()),
                            &Element::basis(b2.clone()),
                        );
                        if c.is_zero() {
                            continue;
                        }
                        let acted =
                            dp.act_on_dual_left(&Element::basis(a2.clone()), x);
                        rhs.add_scaled(
                            &dp.dual.mul(&Element::basis(b1.clone()), &acted),
                            &(&(ca * cb) * &c),
                        );
                    }
                }
                if lhs != rhs {
                    witnesses.push(format!("commutation relation fails at ({a},{b},{x})"));
                    if witnesses.len() > 5 {
                        return CheckReport::from_witnesses(AxiomId::HeisenbergSpan, witnesses);
                    }
                }
            }
        }
    }
    // Prop 5.3: the anti-isomorphism between B#_{E_A}A and A#_{E_B}B.
    let m_b = dual_coefficient_module(dp);
    let m_a = primal_coefficient_module(dp);
    let (s1, s2) = match (SmashProduct::new(&m_b), SmashProduct::new(&m_a)) {
        (Ok(s1), Ok(s2)) => (s1, s2),
        _ => {
            witnesses.push("smash construction failed".to_string());
            return CheckReport::from_witnesses(AxiomId::HeisenbergSpan, witnesses);
        }
    };
    // generator map (ω, a) -> S⁻¹(a) # Ŝ(ω)
    let mut pairs: Vec<(Element, Element)> = Vec::new();
    for om in dp.dual_basis.iter() {
        for a in dp.primal_basis.iter() {
            let src = s1.embed(&Element::basis(om.clone()), &Element::basis(a.clone()));
            let dst = s2.embed(
                &dp.primal.s_inv(&Element::basis(a.clone())),
                &dp.dual.s(&Element::basis(om.clone())),
            );
            pairs.push((src, dst));
        }
    }
    let Some(sol) = solve_linear_map(
        &pairs,
        s1.algebra.basis().unwrap(),
        s2.algebra.basis().unwrap(),
    ) else {
        witnesses.push("anti-isomorphism is not well-defined on the carrier".to_string());
        return CheckReport::from_witnesses(AxiomId::HeisenbergSpan, witnesses);
    };
    let theta = sol.matrix;
    if linalg::rank(&theta) != s1.dim() || s1.dim() != s2.dim() {
        witnesses.push("anti-isomorphism is not bijective".to_string());
    }
    let carrier1 = s1.carrier_witnesses();
    for x in &carrier1 {
        for y in &carrier1 {
            let lhs = theta.apply(&s1.algebra.mul(x, y));
            let rhs = s2.algebra.mul(&theta.apply(y), &theta.apply(x));
            if lhs != rhs {
                witnesses.push(format!("θ({x}{y}) != θ({y})θ({x})"));
                if witnesses.len() > 5 {
                    return CheckReport::from_witnesses(AxiomId::HeisenbergSpan, witnesses);
                }
            }
        }
    }
    // The reverse map composes to the identity.
    let mut rev_pairs: Vec<(Element, Element)> = Vec::new();
    for a in dp.primal_basis.iter() {
        for om in dp.dual_basis.iter() {
            let src = s2.embed(&Element::basis(a.clone()), &Element::basis(om.clone()));
            let dst = s1.embed(
                &dp.dual.s_inv(&Element::basis(om.clone())),
                &dp.primal.s(&Element::basis(a.clone())),
            );
            rev_pairs.push((src, dst));
        }
    }
    if let Some(rev) = solve_linear_map(
        &rev_pairs,
        s2.algebra.basis().unwrap(),
        s1.algebra.basis().unwrap(),
    ) {
        for x in &carrier1 {
            if rev.matrix.apply(&theta.apply(x)) != *x {
                witnesses.push(format!("θ⁻¹θ != id at {x}"));
                break;
            }
        }
    } else {
        witnesses.push("reverse map ill-defined".to_string());
    }
    CheckReport::from_witnesses(AxiomId::HeisenbergSpan, witnesses)
}

/// The Heisenberg realization of A#_Ê Â on A, the Prop 5.5 span
/// comparison, and the Prop 5.6 isomorphism θ onto A⋄̄Â.
pub struct Heisenberg {
    pub smash: SmashProduct,
    /// Basis of A⋄̄Â inside A⊗Â.
    pub diamond_bar: Vec<Element>,
    pub dim_smash: usize,
    pub dim_diamond_bar: usize,
}

pub fn heisenberg(dp: &DualPair) -> Result<Heisenberg, String> {
    let module = primal_coefficient_module(dp);
    let smash = SmashProduct::new(&module).map_err(|e| format!("{e}"))?;
    // A⋄̄Â = span{ S(E₍₁₎a) ⊗ φ((E₍₂₎c)·) }.
    let e = dp.primal.e_elem();
    let mut vectors = Vec::new();
    for a in dp.primal_basis.iter() {
        for c in dp.primal_basis.iter() {
            let mut vec = Element::zero();
            for (l, coef) in e.iter() {
                let (u, v) = l.as_pair().unwrap();
                let first = dp.primal.s(
                    &dp.primal
                        .mul(&Element::basis(u.clone()), &Element::basis(a.clone())),
                );
                if first.is_zero() {
                    continue;
                }
                let arg = dp
                    .primal
                    .mul(&Element::basis(v.clone()), &Element::basis(c.clone()));
                if arg.is_zero() {
                    continue;
                }
                let second = dp.phi_shift(&arg);
                vec.add_scaled(&tensor_elem(&first, &second), coef);
            }
            if !vec.is_zero() {
                vectors.push(vec);
            }
        }
    }
    let ab_basis = dp.primal_basis.tensor(&dp.dual_basis);
    let span = Span::over_basis(&vectors, &ab_basis);
    let diamond_bar = span.basis_vectors();
    Ok(Heisenberg {
        dim_smash: smash.dim(),
        dim_diamond_bar: diamond_bar.len(),
        smash,
        diamond_bar,
    })
}

/// The span Σ aS(c₍₁₎)⊗φ(c₍₂₎·) of Prop 5.6 (equal to A⋄̄Â); this is the
/// diamond-closed E-constrained subspace of A♦Â carrying both the
/// Heisenberg realization and the right-hand side of the duality theorem.
pub fn diamond_bar_span(dp: &DualPair) -> Vec<Element> {
    let ab_basis = dp.primal_basis.tensor(&dp.dual_basis);
    let mut vectors = Vec::new();
    for a in dp.primal_basis.iter() {
        let ea = Element::basis(a.clone());
        for c in dp.primal_basis.iter() {
            let delta_c = dp.primal.delta(&Element::basis(c.clone()));
            let mut vec = Element::zero();
            for (l, coef) in delta_c.iter() {
                let (c1, c2) = l.as_pair().unwrap();
                let first = dp.primal.mul(&ea, &dp.primal.s(&Element::basis(c1.clone())));
                if first.is_zero() {
                    continue;
                }
                vec.add_scaled(
                    &tensor_elem(&first, &dp.phi_shift(&Element::basis(c2.clone()))),
                    coef,
                );
            }
            if !vec.is_zero() {
                vectors.push(vec);
            }
        }
    }
    Span::over_basis(&vectors, &ab_basis).basis_vectors()
}

/// The literal fixed-point space {Σ a⊗φ(c·) : Σ c⊗a = E₍₁₎c⊗E₍₂₎a},
/// i.e. the image of the E-left projector on A⊗A transported leg-wise by
/// c⊗a -> a⊗φ(c·). On Hopf-type structures (E = 1⊗1) this coincides with
/// [`diamond_bar_span`]; on genuinely weak fixtures it differs and is not
/// closed under the diamond product.
pub fn tensor_bar_span(dp: &DualPair) -> Vec<Element> {
    let a2_basis = dp.primal_basis.tensor(&dp.primal_basis);
    let proj = SparseMat::from_map(&a2_basis, &a2_basis, |l| {
        let z = Element::basis(l.clone());
        dp.primal.e_left(&z).sub(&z)
    });
    let fixed = linalg::kernel_basis(&proj);
    let ab_basis = dp.primal_basis.tensor(&dp.dual_basis);
    let mapped: Vec<Element> = fixed
        .iter()
        .map(|vec| {
            let mut out = Element::zero();
            for (l, coef) in vec.iter() {
                let (c, a) = l.as_pair().unwrap();
                let om = dp.phi_shift(&Element::basis(c.clone()));
                for (ol, oc) in om.iter() {
                    out.add_term(&Label::pair(a.clone(), ol.clone()), &(coef * oc));
                }
            }
            out
        })
        .collect();
    Span::over_basis(&mapped, &ab_basis).basis_vectors()
}

/// The diamond product (a⊗ω)(a'⊗ω') = ⟨a',ω⟩ a⊗ω' on A⊗Â vectors.
pub fn diamond_mul(dp: &DualPair, x: &Element, y: &Element) -> Element {
    let mut out = Element::zero();
    for (lx, cx) in x.iter() {
        let (a, om) = lx.as_pair().unwrap();
        for (ly, cy) in y.iter() {
            let (a2, om2) = ly.as_pair().unwrap();
            let c = dp.pair(&Element::basis(a2.clone()), &Element::basis(om.clone()));
            if c.is_zero() {
                continue;
            }
            out.add_term(
                &Label::pair(a.clone(), om2.clone()),
                &(&(cx * cy) * &c),
            );
        }
    }
    out
}

impl Heisenberg {
    /// The operator of ξ ∈ A#_ÊÂ on A: a' ↦ Σ a·(ω▷a').
    pub fn operator(&self, dp: &DualPair, xi: &Element) -> SparseMat {
        let z = self.smash.lift(xi);
        SparseMat::from_map(&dp.primal_basis, &dp.primal_basis, |a_prime| {
            let mut out = Element::zero();
            for (l, c) in z.iter() {
                let (a, om) = l.as_pair().unwrap();
                let acted = dp.act_on_primal_left(
                    &Element::basis(om.clone()),
                    &Element::basis(a_prime.clone()),
                );
                out.add_scaled(
                    &dp.primal.mul(&Element::basis(a.clone()), &acted),
                    c,
                );
            }
            out
        })
    }

    /// Prop 5.5: the operator span of A#_ÊÂ on A equals the span of the
    /// maps a' ↦ Σ pS(E₍₁₎)φ(E₍₂₎q a'); plus faithfulness of the action.
    pub fn check_span(&self, dp: &DualPair) -> CheckReport {
        let mut witnesses = Vec::new();
        let flat_smash: Vec<Element> = self
            .smash
            .carrier_witnesses()
            .iter()
            .map(|xi| {
                let m = self.operator(dp, xi);
                linalg::flatten_operator(&dp.primal_basis, |l| m.apply(&Element::basis(l.clone())))
            })
            .collect();
        if linalg::span_rank(&flat_smash) != self.smash.dim() {
            witnesses.push("the Heisenberg action is not faithful".to_string());
        }
        let e = dp.primal.e_elem();
        let mut flat_forms: Vec<Element> = Vec::new();
        for p in dp.primal_basis.iter() {
            for q in dp.primal_basis.iter() {
                let flat = linalg::flatten_operator(&dp.primal_basis, |a_prime| {
                    let mut out = Element::zero();
                    for (l, coef) in e.iter() {
                        let (u, v) = l.as_pair().unwrap();
                        let vq = dp
                            .primal
                            .mul(&Element::basis(v.clone()), &Element::basis(q.clone()));
                        let arg = dp.primal.mul(&vq, &Element::basis(a_prime.clone()));
                        let val = eval_functional(&dp.phi, &arg);
                        if val.is_zero() {
                            continue;
                        }
                        let ps = dp.primal.mul(
                            &Element::basis(p.clone()),
                            &dp.primal.s(&Element::basis(u.clone())),
                        );
                        out.add_scaled(&ps, &(coef * &val));
                    }
                    out
                });
                if !flat.is_zero() {
                    flat_forms.push(flat);
                }
            }
        }
        if !linalg::span_equal(&flat_smash, &flat_forms) {
            witnesses.push(format!(
                "operator span (dim {}) differs from the pS(E₍₁₎)φ(E₍₂₎q·) span (dim {})",
                linalg::span_rank(&flat_smash),
                linalg::span_rank(&flat_forms)
            ));
        }
        CheckReport::from_witnesses(AxiomId::HeisenbergSpan, witnesses)
    }

    /// Prop 5.6: θ(a #_Ê φ(c·)) = Σ aS(c₍₁₎) ⋄ φ(c₍₂₎·) is a multiplicative
    /// bijection onto A⋄̄Â.
    pub fn check_theta(&self, dp: &DualPair) -> CheckReport {
        let mut witnesses = Vec::new();
        let ab_basis = dp.primal_basis.tensor(&dp.dual_basis);
        let mut pairs: Vec<(Element, Element)> = Vec::new();
        for a in dp.primal_basis.iter() {
            let ea = Element::basis(a.clone());
            for c in dp.primal_basis.iter() {
                let ec = Element::basis(c.clone());
                let omega = dp.phi_shift(&ec);
                let src = self.smash.embed(&ea, &omega);
                // Σ aS(c₍₁₎) ⊗ φ(c₍₂₎·)
                let delta_c = dp.primal.delta(&ec);
                let mut dst = Element::zero();
                for (l, coef) in delta_c.iter() {
                    let (x, y) = l.as_pair().unwrap();
                    let first = dp
                        .primal
                        .mul(&ea, &dp.primal.s(&Element::basis(x.clone())));
                    if first.is_zero() {
                        continue;
                    }
                    let second = dp.phi_shift(&Element::basis(y.clone()));
                    dst.add_scaled(&tensor_elem(&first, &second), coef);
                }
                pairs.push((src, dst));
            }
        }
        let Some(sol) = solve_linear_map(&pairs, self.smash.algebra.basis().unwrap(), &ab_basis)
        else {
            witnesses.push("θ is not well-defined".to_string());
            return CheckReport::from_witnesses(AxiomId::ThetaIso, witnesses);
        };
        let theta = sol.matrix;
        // bijective onto A⋄̄Â
        let images: Vec<Element> = self
            .smash
            .carrier_witnesses()
            .iter()
            .map(|xi| theta.apply(xi))
            .collect();
        if linalg::span_rank(&images) != self.smash.dim() {
            witnesses.push("θ is not injective".to_string());
        }
        if !linalg::span_equal(&images, &self.diamond_bar) {
            witnesses.push("θ image differs from A⋄̄Â".to_string());
        }
        // closure of A⋄̄Â under the diamond product
        for x in &self.diamond_bar {
            for y in &self.diamond_bar {
                let prod = diamond_mul(dp, x, y);
                if !Span::over_basis(&self.diamond_bar, &ab_basis).contains(&prod) {
                    witnesses.push("A⋄̄Â is not closed under the diamond product".to_string());
                    break;
                }
            }
        }
        // multiplicativity
        let carrier = self.smash.carrier_witnesses();
        for x in &carrier {
            for y in &carrier {
                let lhs = theta.apply(&self.smash.algebra.mul(x, y));
                let rhs = diamond_mul(dp, &theta.apply(x), &theta.apply(y));
                if lhs != rhs {
                    witnesses.push(format!("θ({x}{y}) != θ({x})θ({y})"));
                    if witnesses.len() > 5 {
                        return CheckReport::from_witnesses(AxiomId::ThetaIso, witnesses);
                    }
                }
            }
        }
        CheckReport::from_witnesses(AxiomId::ThetaIso, witnesses)
    }
}

/// Prop 6.1: the dual action b·(r#_E a) = r#_E(b▷a) makes R#_EA a
/// B-module algebra. Returns the module algebra over the dual.
pub fn dual_action_on_smash(
    smash: &SmashProduct,
    dp: &DualPair,
) -> Result<ModuleAlgebra, String> {
    let carrier_basis = smash.algebra.basis().unwrap().clone();
    // Solve the operator of each dual basis element from its values on
    // generators r #_E a.
    let r_basis = smash.module.coeff.basis().unwrap().clone();
    let mut tables: Vec<SparseMat> = Vec::new();
    for om in dp.dual_basis.iter() {
        let om_elem = Element::basis(om.clone());
        let mut pairs: Vec<(Element, Element)> = Vec::new();
        for r in r_basis.iter() {
            let er = Element::basis(r.clone());
            for a in dp.primal_basis.iter() {
                let src = smash.embed(&er, &Element::basis(a.clone()));
                let acted = dp.act_on_primal_left(&om_elem, &Element::basis(a.clone()));
                let dst = smash.embed(&er, &acted);
                pairs.push((src, dst));
            }
        }
        let sol = solve_linear_map(&pairs, &carrier_basis, &carrier_basis)
            .ok_or_else(|| format!("dual action ill-defined for {om}"))?;
        tables.push(sol.matrix);
    }
    let dual_basis = dp.dual_basis.clone();
    let rule: ActionRule = Rc::new(move |om: &Label, xi: &Label| {
        let i = dual_basis.position(om).expect("dual label");
        tables[i].apply(&Element::basis(xi.clone()))
    });
    Ok(ModuleAlgebra::new(dp.dual.clone(), smash.algebra.clone(), rule))
}

/// R⊗̄A, the twist T and its inverse, and the π action of the bi-smash.
pub struct BarModule {
    pub basis: Vec<Element>,
    bar_span: Span,
    t_matrix: SparseMat,
    t_inv_matrix: SparseMat,
}

pub fn bar_module(smash: &SmashProduct, dp: &DualPair) -> Result<BarModule, String> {
    let module = &smash.module;
    let w = &module.wmha;
    let r_basis = module.coeff.basis().unwrap().clone();
    let rxa_basis = smash.rxa_basis().clone();
    // Π(r⊗a) = Σ S⁻¹(E₍₁₎)▷r ⊗ aE₍₂₎; R⊗̄A is its fixed subspace.
    let e = w.e_elem();
    let projector = SparseMat::from_map(&rxa_basis, &rxa_basis, |l| {
        let (r, a) = l.as_pair().unwrap();
        let mut out = Element::zero();
        for (el, ec) in e.iter() {
            let (u, v) = el.as_pair().unwrap();
            let racted = module.act(
                &w.s_inv(&Element::basis(u.clone())),
                &Element::basis(r.clone()),
            );
            if racted.is_zero() {
                continue;
            }
            let amul = w.mul(&Element::basis(a.clone()), &Element::basis(v.clone()));
            for (rl, rc) in racted.iter() {
                for (al, ac) in amul.iter() {
                    out.add_term(&Label::pair(rl.clone(), al.clone()), &(&(ec * rc) * ac));
                }
            }
        }
        out
    });
    // sanity: Π is idempotent
    for l in rxa_basis.iter() {
        let z = Element::basis(l.clone());
        let p = projector.apply(&z);
        if projector.apply(&p) != p {
            return Err("the bar projector is not idempotent".to_string());
        }
    }
    // fixed subspace = kernel of (Π − id)
    let minus_id = SparseMat::from_map(&rxa_basis, &rxa_basis, |l| {
        let z = Element::basis(l.clone());
        projector.apply(&z).sub(&z)
    });
    let basis_vecs = linalg::kernel_basis(&minus_id);
    let bar_span = Span::over_basis(&basis_vecs, &rxa_basis);
    // T(r⊗̄a) = Σ a₍₁₎▷r #_E a₍₂₎ : bar space -> carrier coordinates.
    let t_images: Vec<Element> = basis_vecs
        .iter()
        .map(|vec| {
            let mut out = Element::zero();
            for (l, c) in vec.iter() {
                let (r, a) = l.as_pair().unwrap();
                let delta = w.delta(&Element::basis(a.clone()));
                for (dl, dc) in delta.iter() {
                    let (x, y) = dl.as_pair().unwrap();
                    let racted = module.act(&Element::basis(x.clone()), &Element::basis(r.clone()));
                    for (rl, rc) in racted.iter() {
                        out.add_term(&Label::pair(rl.clone(), y.clone()), &(&(c * dc) * rc));
                    }
                }
            }
            smash
                .to_carrier(&smash.project(&out))
                .expect("T lands in the carrier")
        })
        .collect();
    // T as a matrix over the bar basis (columns = bar basis indices).
    let bar_index_basis = Basis::new(
        (0..basis_vecs.len())
            .map(|i| Label::atom(format!("b{i}")))
            .collect(),
    );
    let carrier_basis = smash.algebra.basis().unwrap().clone();
    let t_matrix = SparseMat::from_map(&bar_index_basis, &carrier_basis, |l| {
        let i: usize = l.as_atom().unwrap()[1..].parse().unwrap();
        t_images[i].clone()
    });
    // T⁻¹(r#_Ea) = Σ S⁻¹(a₍₁₎)▷r ⊗̄ a₍₂₎, solved on generators.
    let mut pairs: Vec<(Element, Element)> = Vec::new();
    for r in r_basis.iter() {
        let er = Element::basis(r.clone());
        for a in dp.primal_basis.iter() {
            let src = smash.embed(&er, &Element::basis(a.clone()));
            let delta = w.delta(&Element::basis(a.clone()));
            let mut dst = Element::zero();
            for (dl, dc) in delta.iter() {
                let (x, y) = dl.as_pair().unwrap();
                let racted = module.act(&w.s_inv(&Element::basis(x.clone())), &er);
                for (rl, rc) in racted.iter() {
                    dst.add_term(&Label::pair(rl.clone(), y.clone()), &(dc * rc));
                }
            }
            // express dst in bar coordinates
            let coords = bar_span
                .coordinates(&dst)
                .ok_or_else(|| format!("T⁻¹ image leaves R⊗̄A at ({r},{a})"))?;
            let mut dst_coords = Element::zero();
            for (i, c) in coords.iter().enumerate() {
                dst_coords.add_term(&Label::atom(format!("b{i}")), c);
            }
            pairs.push((src, dst_coords));
        }
    }
    let sol = solve_linear_map(&pairs, &carrier_basis, &bar_index_basis)
        .ok_or_else(|| "T⁻¹ is not well-defined".to_string())?;
    Ok(BarModule {
        basis: basis_vecs,
        bar_span,
        t_matrix,
        t_inv_matrix: sol.matrix,
    })
}

impl BarModule {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// bar coordinates -> carrier coordinates
    pub fn t(&self, bar: &Element) -> Element {
        self.t_matrix.apply(bar)
    }

    /// carrier coordinates -> bar coordinates
    pub fn t_inv(&self, xi: &Element) -> Element {
        self.t_inv_matrix.apply(xi)
    }

    /// bar coordinates of an R⊗A vector in the bar subspace.
    pub fn to_bar(&self, z: &Element) -> Option<Element> {
        let coords = self.bar_span.coordinates(z)?;
        let mut out = Element::zero();
        for (i, c) in coords.iter().enumerate() {
            out.add_term(&Label::atom(format!("b{i}")), c);
        }
        Some(out)
    }

    pub fn lift(&self, bar: &Element) -> Element {
        let mut out = Element::zero();
        for (l, c) in bar.iter() {
            let i: usize = l.as_atom().unwrap()[1..].parse().unwrap();
            out.add_scaled(&self.basis[i], c);
        }
        out
    }

    /// T and T⁻¹ are mutually inverse bijections.
    pub fn check_twist(&self, smash: &SmashProduct) -> CheckReport {
        let mut witnesses = Vec::new();
        if self.dim() != smash.dim() {
            witnesses.push(format!(
                "dim R⊗̄A = {} but dim R#_EA = {}",
                self.dim(),
                smash.dim()
            ));
        }
        for i in 0..self.dim() {
            let b = Element::basis(Label::atom(format!("b{i}")));
            if self.t_inv(&self.t(&b)) != b {
                witnesses.push(format!("T⁻¹T != id at bar index {i}"));
            }
        }
        for xi in smash.carrier_witnesses() {
            if self.t(&self.t_inv(&xi)) != xi {
                witnesses.push(format!("TT⁻¹ != id at {xi}"));
            }
        }
        CheckReport::from_witnesses(AxiomId::TwistBijective, witnesses)
    }
}

/// The report of the duality-theorem verification.
#[derive(Clone, Debug)]
pub struct DualityReport {
    pub dim_bismash: usize,
    pub dim_rhs: usize,
    pub spans_equal: bool,
    pub iso_verified: bool,
    pub witnesses: Vec<String>,
}

impl DualityReport {
    pub fn is_pass(&self) -> bool {
        self.spans_equal && self.iso_verified && self.witnesses.is_empty()
    }

    pub fn to_check(&self) -> CheckReport {
        let mut witnesses = self.witnesses.clone();
        if !self.spans_equal {
            witnesses.push("operator spans differ".to_string());
        }
        if !self.iso_verified {
            witnesses.push("isomorphism not verified".to_string());
        }
        CheckReport::from_witnesses(AxiomId::DualityTheorem, witnesses)
    }
}

/// Mechanical verification of the duality theorem
/// (R#_{E_A}A)#_Ê Â ≅ R⊗(A⊗̄Â): builds the bi-smash, realizes both sides
/// as operator algebras on R⊗̄A, compares the spans, and verifies the
/// induced bijection is an algebra isomorphism.
pub fn verify_duality_theorem(smash: &SmashProduct, dp: &DualPair) -> Result<DualityReport, String> {
    let mut witnesses: Vec<String> = Vec::new();
    // (1) the bi-smash via the dual action, and its representation on
    // R⊗̄A through the twist.
    let outer_module = dual_action_on_smash(smash, dp)?;
    let bismash = SmashProduct::new(&outer_module).map_err(|e| format!("{e}"))?;
    let bar = bar_module(smash, dp)?;
    let bar_index_basis = Basis::new(
        (0..bar.dim())
            .map(|i| Label::atom(format!("b{i}")))
            .collect(),
    );
    let outer_rule = outer_module.action_rule();
    let act_on_carrier = |xi2: &Element, eta: &Element| -> Element {
        let z = bismash.lift(xi2);
        let mut out = Element::zero();
        for (l, c) in z.iter() {
            let (inner, om) = l.as_pair().unwrap();
            // Prop 6.2 action: apply the dual action, then multiply.
            let mut eta_acted = Element::zero();
            for (el, ec) in eta.iter() {
                eta_acted.add_scaled(&outer_rule(om, el), ec);
            }
            out.add_scaled(
                &smash.algebra.mul(&Element::basis(inner.clone()), &eta_acted),
                c,
            );
        }
        out
    };
    let pi_op = |xi2: &Element| -> SparseMat {
        SparseMat::from_map(&bar_index_basis, &bar_index_basis, |bl| {
            let b = Element::basis(bl.clone());
            bar.t_inv(&act_on_carrier(xi2, &bar.t(&b)))
        })
    };
    let flatten = |m: &SparseMat| -> Element {
        linalg::flatten_operator(&bar_index_basis, |l| m.apply(&Element::basis(l.clone())))
    };
    // π is a homomorphism and faithful (so the bi-smash is isomorphic to
    // its operator algebra P).
    let bismash_wit = bismash.carrier_witnesses();
    let pi_ops: Vec<SparseMat> = bismash_wit.iter().map(&pi_op).collect();
    let flat_pi: Vec<Element> = pi_ops.iter().map(&flatten).collect();
    for (i, x) in bismash_wit.iter().enumerate() {
        for (j, y) in bismash_wit.iter().enumerate() {
            let prod_flat = flatten(&pi_op(&bismash.algebra.mul(x, y)));
            let composed = SparseMat::from_map(&bar_index_basis, &bar_index_basis, |l| {
                pi_ops[i].apply(&pi_ops[j].apply(&Element::basis(l.clone())))
            });
            if prod_flat != flatten(&composed) {
                witnesses.push(format!("π(ΞΞ\') != π(Ξ)π(Ξ\') at pair ({i},{j})"));
            }
        }
        if witnesses.len() > 5 {
            break;
        }
    }
    if linalg::span_rank(&flat_pi) != bismash.dim() {
        witnesses.push("π is not faithful on the bi-smash".to_string());
    }
    // (2) the E-constrained subspace of A♦Â carrying the right-hand side:
    // realized as the θ-image span of Prop 5.6, Σ aS(c₍₁₎) ⊗ φ(c₍₂₎·),
    // which is diamond-closed and identical to A⋄̄Â. (The literal fixed-point
    // constraint c⊗a = E₍₁₎c⊗E₍₂₎a is not closed under the diamond product
    // on genuinely weak fixtures; see tensor_bar_span.)
    let ab_basis = dp.primal_basis.tensor(&dp.dual_basis);
    let bar_diamond: Vec<Element> = {
        let mut vectors = Vec::new();
        for a in dp.primal_basis.iter() {
            let ea = Element::basis(a.clone());
            for c in dp.primal_basis.iter() {
                let delta_c = dp.primal.delta(&Element::basis(c.clone()));
                let mut vec = Element::zero();
                for (l, coef) in delta_c.iter() {
                    let (c1, c2) = l.as_pair().unwrap();
                    let first = dp
                        .primal
                        .mul(&ea, &dp.primal.s(&Element::basis(c1.clone())));
                    if first.is_zero() {
                        continue;
                    }
                    let om = dp.phi_shift(&Element::basis(c2.clone()));
                    vec.add_scaled(&tensor_elem(&first, &om), coef);
                }
                if !vec.is_zero() {
                    vectors.push(vec);
                }
            }
        }
        vectors
    };
    let bar_diamond_span = Span::over_basis(&bar_diamond, &ab_basis);
    let bar_diamond_basis = bar_diamond_span.basis_vectors();
    for x in &bar_diamond_basis {
        for y in &bar_diamond_basis {
            if !bar_diamond_span.contains(&diamond_mul(dp, x, y)) {
                witnesses.push("A⊗̄Â is not closed under the diamond product".to_string());
                break;
            }
        }
    }
    // (3) the operator span of the proof, computed independently of the
    // bi-smash machinery from the Prop 6.3 closed form
    //   r\'⊗̄a\' -> Σ (S⁻¹(a₍₁₎a\'₍₁₎)▷r)r\' ⊗̄ a₍₂₎a\'₍₂₎⟨a\'₍₃₎,ω⟩.
    let r_basis = smash.module.coeff.basis().unwrap().clone();
    let w = &smash.module.wmha;
    let closed_form = |r: &Label, a: &Label, om_fun: &Element| -> Option<SparseMat> {
        let delta_a = w.delta(&Element::basis(a.clone()));
        let mut cols: Vec<(Label, Element)> = Vec::new();
        for bl in bar_index_basis.iter() {
            let rho = bar.lift(&Element::basis(bl.clone()));
            let mut out = Element::zero();
            for (rl, rc) in rho.iter() {
                let (x_leg, a_leg) = rl.as_pair().unwrap();
                // (Δ⊗ι)Δ(a\') materialized
                let d2 = w.delta(&Element::basis(a_leg.clone()));
                for (l2, c2) in d2.iter() {
                    let (a1, rest) = l2.as_pair().unwrap();
                    let d1 = w.delta(&Element::basis(a1.clone()));
                    for (l1, c1) in d1.iter() {
                        let (ap1, ap2) = l1.as_pair().unwrap();
                        let detect = om_fun.get(rest);
                        if detect.is_zero() {
                            continue;
                        }
                        for (la, ca) in delta_a.iter() {
                            let (u, v) = la.as_pair().unwrap();
                            let arg = w.mul(
                                &Element::basis(u.clone()),
                                &Element::basis(ap1.clone()),
                            );
                            if arg.is_zero() {
                                continue;
                            }
                            let racted = smash
                                .module
                                .act(&w.s_inv(&arg), &Element::basis(r.clone()));
                            if racted.is_zero() {
                                continue;
                            }
                            let rr = smash
                                .module
                                .coeff
                                .mul(&racted, &Element::basis(x_leg.clone()));
                            let aa = w.mul(
                                &Element::basis(v.clone()),
                                &Element::basis(ap2.clone()),
                            );
                            let coeff = &(&(&(rc * c2) * c1) * &detect) * ca;
                            for (pl, pc) in rr.iter() {
                                for (al, ac) in aa.iter() {
                                    out.add_term(
                                        &Label::pair(pl.clone(), al.clone()),
                                        &(&(&coeff * pc) * ac),
                                    );
                                }
                            }
                        }
                    }
                }
            }
            let in_bar = bar.to_bar(&out)?;
            cols.push((bl.clone(), in_bar));
        }
        Some(SparseMat::from_map(&bar_index_basis, &bar_index_basis, |l| {
            cols.iter()
                .find(|(bl, _)| bl == l)
                .map(|(_, v)| v.clone())
                .unwrap_or_default()
        }))
    };
    let mut flat_forms: Vec<Element> = Vec::new();
    let mut forms_ok = true;
    'outer_forms: for r in r_basis.iter() {
        for a in dp.primal_basis.iter() {
            for om in dp.dual_basis.iter() {
                let om_fun = dp.functional_of(&Element::basis(om.clone()));
                match closed_form(r, a, &om_fun) {
                    Some(m) => {
                        let f = flatten(&m);
                        if !f.is_zero() {
                            flat_forms.push(f);
                        }
                    }
                    None => {
                        witnesses.push(format!(
                            "closed-form operator leaves R⊗̄A at ({r},{a},{om})"
                        ));
                        forms_ok = false;
                        break 'outer_forms;
                    }
                }
            }
        }
    }
    let spans_equal = forms_ok && linalg::span_equal(&flat_pi, &flat_forms);
    // (4) dimension of R⊗(A⊗̄Â) balanced over the target algebra: the
    // quotient by r·x ⊗ ζ − r ⊗ x·ζ with r·x = S⁻¹(x)▷r and x acting on
    // the A-leg of ζ. In the Hopf case the balancing is trivial and this is
    // the plain tensor product.
    let mut relations: Vec<Element> = Vec::new();
    for l in dp.primal_basis.iter() {
        let x = w.eps_t(&Element::basis(l.clone()));
        if x.is_zero() {
            continue;
        }
        let s_inv_x = w.s_inv(&x);
        for r in r_basis.iter() {
            let racted = smash.module.act(&s_inv_x, &Element::basis(r.clone()));
            for (zi, zeta) in bar_diamond_basis.iter().enumerate() {
                let mut rel = Element::zero();
                for (rl, rc) in racted.iter() {
                    rel.add_term(
                        &Label::pair(rl.clone(), Label::atom(format!("z{zi}"))),
                        rc,
                    );
                }
                // x·ζ multiplies the A-leg from the left; express the
                // result back in the ζ-basis.
                let mut xzeta = Element::zero();
                for (zl, zc) in zeta.iter() {
                    let (a_leg, om_leg) = zl.as_pair().unwrap();
                    let xa = w.mul(&x, &Element::basis(a_leg.clone()));
                    for (al, ac) in xa.iter() {
                        xzeta.add_term(&Label::pair(al.clone(), om_leg.clone()), &(zc * ac));
                    }
                }
                match bar_diamond_span.coordinates(&xzeta) {
                    Some(coords) => {
                        for (zj, c) in coords.iter().enumerate() {
                            rel.add_term(
                                &Label::pair(r.clone(), Label::atom(format!("z{zj}"))),
                                &-c,
                            );
                        }
                    }
                    None => {
                        witnesses.push("x·ζ leaves A⊗̄Â".to_string());
                        continue;
                    }
                }
                if !rel.is_zero() {
                    relations.push(rel);
                }
            }
        }
    }
    let balancing_rank = linalg::span_rank(&relations);
    let dim_rhs = r_basis.len() * bar_diamond_basis.len() - balancing_rank;
    if dim_rhs != bismash.dim() {
        witnesses.push(format!(
            "dimension mismatch: bi-smash {} vs balanced R⊗(A⊗̄Â) {}",
            bismash.dim(),
            dim_rhs
        ));
    }
    // (5) the induced bijection. When the balancing is trivial (multiplier
    // Hopf case) the factorized rank-one action ρ(r⊗ζ): ρ\' -> ⟨a\',ω⟩rr\'⊗α
    // is itself a faithful representation on R⊗̄A; the induced coordinate
    // map is then verified multiplicative against the componentwise diamond
    // product. In the genuinely weak case the factorized action does not
    // preserve R⊗̄A and the isomorphism is carried by the operator spans:
    // bismash ≅ P = span of the R⊗(A⊗̄Â)-derived closed-form operators,
    // with the balanced dimensions agreeing.
    let mut iso_verified = false;
    if balancing_rank == 0 {
        let rank_one = |r: &Label, zeta: &Element| -> Option<SparseMat> {
            let mut cols: Vec<(Label, Element)> = Vec::new();
            for bl in bar_index_basis.iter() {
                let rho = bar.lift(&Element::basis(bl.clone()));
                let mut out = Element::zero();
                for (zl, zc) in zeta.iter() {
                    let (a_leg, om_leg) = zl.as_pair().unwrap();
                    let f = dp.functional_of(&Element::basis(om_leg.clone()));
                    for (rl, rc) in rho.iter() {
                        let (x_leg, ap) = rl.as_pair().unwrap();
                        let val = f.get(ap);
                        if val.is_zero() {
                            continue;
                        }
                        let rr = smash
                            .module
                            .coeff
                            .mul(&Element::basis(r.clone()), &Element::basis(x_leg.clone()));
                        for (pl, pc) in rr.iter() {
                            out.add_term(
                                &Label::pair(pl.clone(), a_leg.clone()),
                                &(&(&(zc * rc) * &val) * pc),
                            );
                        }
                    }
                }
                cols.push((bl.clone(), bar.to_bar(&out)?));
            }
            Some(SparseMat::from_map(&bar_index_basis, &bar_index_basis, |l| {
                cols.iter()
                    .find(|(bl, _)| bl == l)
                    .map(|(_, v)| v.clone())
                    .unwrap_or_default()
            }))
        };
        let mut rhs_flat: Vec<Element> = Vec::new();
        let mut rhs_gens: Vec<(Label, usize)> = Vec::new();
        let mut rank_one_ok = true;
        'build: for r in r_basis.iter() {
            for (zi, zeta) in bar_diamond_basis.iter().enumerate() {
                match rank_one(r, zeta) {
                    Some(m) => {
                        rhs_flat.push(flatten(&m));
                        rhs_gens.push((r.clone(), zi));
                    }
                    None => {
                        witnesses.push("rank-one action leaves R⊗̄A".to_string());
                        rank_one_ok = false;
                        break 'build;
                    }
                }
            }
        }
        if rank_one_ok {
            if linalg::span_rank(&rhs_flat) != dim_rhs {
                witnesses.push("the factorized representation is not faithful".to_string());
            } else if spans_equal && linalg::span_equal(&flat_pi, &rhs_flat) {
                let rhs_span = Span::new(&rhs_flat);
                let elem_of = |coords: &[Scalar]| -> Element {
                    let mut out = Element::zero();
                    for (i, ci) in coords.iter().enumerate() {
                        if ci.is_zero() {
                            continue;
                        }
                        let (r1, zi) = &rhs_gens[i];
                        for (zl, zc) in bar_diamond_basis[*zi].iter() {
                            out.add_term(&Label::pair(r1.clone(), zl.clone()), &(ci * zc));
                        }
                    }
                    out
                };
                let mul_rhs = |u: &Element, v: &Element| -> Element {
                    // componentwise: (r⊗ζ)(r\'⊗ζ\') = rr\' ⊗ ζ⋄ζ\'
                    let mut out = Element::zero();
                    for (lu, cu) in u.iter() {
                        let (r1, z1) = lu.as_pair().unwrap();
                        for (lv, cv) in v.iter() {
                            let (r2, z2) = lv.as_pair().unwrap();
                            let rr = smash.module.coeff.mul(
                                &Element::basis(r1.clone()),
                                &Element::basis(r2.clone()),
                            );
                            let zz = diamond_mul(
                                dp,
                                &Element::basis(z1.clone()),
                                &Element::basis(z2.clone()),
                            );
                            for (rl, rc) in rr.iter() {
                                for (zl, zc) in zz.iter() {
                                    out.add_term(
                                        &Label::pair(rl.clone(), zl.clone()),
                                        &(&(&(cu * cv) * rc) * zc),
                                    );
                                }
                            }
                        }
                    }
                    out
                };
                let coords: Vec<Element> = flat_pi
                    .iter()
                    .map(|f| elem_of(&rhs_span.coordinates_in_generators(f).expect("span-equal")))
                    .collect();
                let mut ok = linalg::span_rank(&coords) == bismash.dim();
                if !ok {
                    witnesses.push("induced map is not injective".to_string());
                }
                'pairs: for (i, x) in bismash_wit.iter().enumerate() {
                    for (j, y) in bismash_wit.iter().enumerate() {
                        let prod_flat = flatten(&pi_op(&bismash.algebra.mul(x, y)));
                        let prod_coords = elem_of(
                            &rhs_span
                                .coordinates_in_generators(&prod_flat)
                                .expect("span-equal"),
                        );
                        if prod_coords != mul_rhs(&coords[i], &coords[j]) {
                            witnesses.push(format!(
                                "induced map not multiplicative at ({i},{j})"
                            ));
                            ok = false;
                            break 'pairs;
                        }
                    }
                }
                iso_verified = ok;
            }
        }
    } else {
        // weak path: π is a verified isomorphism onto P, P coincides with
        // the closed-form span derived from R⊗(A⊗̄Â), and the balanced
        // dimensions agree.
        iso_verified =
            witnesses.is_empty() && spans_equal && dim_rhs == bismash.dim();
    }
    Ok(DualityReport {
        dim_bismash: bismash.dim(),
        dim_rhs,
        spans_equal,
        iso_verified,
        witnesses,
    })
}

/// All pairing- and dual-side reports for a constructed dual pair.
pub fn run_dual_suite(dp: &DualPair) -> SuiteReport {
    let mut suite = SuiteReport::default();
    let dual_suite = dp.dual.run_axiom_suite();
    let ok = dual_suite.is_pass();
    suite.push(CheckReport::from_witnesses(
        AxiomId::DualSuite,
        if ok {
            Vec::new()
        } else {
            dual_suite
                .failing()
                .iter()
                .map(|a| format!("dual fails {a}"))
                .collect()
        },
    ));
    suite.push(dp.check_pairing());
    suite.push(dp.check_surjectivity());
    suite
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{function_algebra, groupoid_algebra, set_action_module_algebra};
    use crate::groupoid::{cyclic_group, pair_groupoid, translation_action, GroupoidAction};

    /// The functional with value 1 on every unit morphism and 0 elsewhere.
    fn unit_indicator(g: &crate::groupoid::Groupoid) -> Element {
        let mut phi = Element::zero();
        for e in g.units() {
            phi.add_term(&Label::atom(g.morphism_name(e)), &Scalar::one());
        }
        phi
    }

    #[test]
    fn integrals_on_cz2() {
        let g = cyclic_group(2).unwrap();
        let w = groupoid_algebra(&g);
        let left = find_integrals(&w, Side::Left);
        assert_eq!(left.len(), 1);
        // up to scale: φ(λ_e) = 1, φ(λ_g) = 0
        let phi = &left[0];
        assert!(phi.get(&Label::atom("g1")).is_zero());
        assert!(!phi.get(&Label::atom("g0")).is_zero());
        assert!(is_invariant(&w, phi, Side::Left));
        assert!(check_faithful(&w, &left));
    }

    #[test]
    fn integrals_on_cp2_form_unit_supported_plane() {
        let g = pair_groupoid(2).unwrap();
        let w = groupoid_algebra(&g);
        let left = find_integrals(&w, Side::Left);
        assert_eq!(left.len(), 2);
        // every solution is supported on units
        for phi in &left {
            for (l, _) in phi.iter() {
                let m = g.morphism_index(l.as_atom().unwrap()).unwrap();
                assert!(g.is_unit(m), "integral supported off units at {l}");
            }
        }
        let right = find_integrals(&w, Side::Right);
        assert_eq!(right.len(), 2);
        // the unit indicator is left and right invariant and faithful
        let phi = unit_indicator(&g);
        assert!(is_invariant(&w, &phi, Side::Left));
        assert!(is_invariant(&w, &phi, Side::Right));
        assert!(check_faithful(&w, core::slice::from_ref(&phi)));
        // the zero functional alone is not faithful
        assert!(!check_faithful(&w, &[Element::zero()]));
    }

    #[test]
    fn integral_on_kp2_contains_summation() {
        let g = pair_groupoid(2).unwrap();
        let w = function_algebra(&g);
        let left = find_integrals(&w, Side::Left);
        // f -> Σ_p f(p) is left invariant
        let mut total = Element::zero();
        for name in g.morphism_names() {
            total.add_term(&Label::atom(name.clone()), &Scalar::one());
        }
        assert!(is_invariant(&w, &total, Side::Left));
        let span = Span::new(&left);
        assert!(span.contains(&total), "summation functional not in the solution space");
        assert!(check_faithful(&w, core::slice::from_ref(&total)));
    }

    #[test]
    fn dual_of_cz2_is_kz2() {
        let g = cyclic_group(2).unwrap();
        let w = groupoid_algebra(&g);
        let phi = unit_indicator(&g);
        let dp = dual_wmha(&w, &phi).unwrap();
        assert_eq!(dp.dual.algebra().dim(), 2);
        let suite = run_dual_suite(&dp);
        assert!(suite.is_pass(), "{suite}");
        // identification ω -> Σ ω(λ_q) δ_q is a structure isomorphism
        let k = function_algebra(&g);
        let report = check_wmha_isomorphism(&dp.dual, &k, &|om| dp.functional_of(om));
        assert!(report.is_ok(), "{report}");
    }

    #[test]
    fn dual_of_cp2_is_kp2() {
        let g = pair_groupoid(2).unwrap();
        let w = groupoid_algebra(&g);
        let phi = unit_indicator(&g);
        let dp = dual_wmha(&w, &phi).unwrap();
        assert_eq!(dp.dual.algebra().dim(), 4);
        let suite = run_dual_suite(&dp);
        assert!(suite.is_pass(), "{suite}");
        let k = function_algebra(&g);
        let report = check_wmha_isomorphism(&dp.dual, &k, &|om| dp.functional_of(om));
        assert!(report.is_ok(), "{report}");
        // the full axiom suite also passes on the dual itself
        assert!(dp.dual.run_axiom_suite().is_pass());
    }

    #[test]
    fn dual_actions_and_commutation() {
        let g = pair_groupoid(2).unwrap();
        let w = groupoid_algebra(&g);
        let dp = dual_wmha(&w, &unit_indicator(&g)).unwrap();
        let r = check_smash_on_dual_action(&dp);
        assert!(r.is_ok(), "{r}");
        let r = check_commutation_picture(&dp);
        assert!(r.is_ok(), "{r}");
    }

    #[test]
    fn heisenberg_cz2_is_two_by_two_matrices() {
        let g = cyclic_group(2).unwrap();
        let w = groupoid_algebra(&g);
        let dp = dual_wmha(&w, &unit_indicator(&g)).unwrap();
        let h = heisenberg(&dp).unwrap();
        assert_eq!(h.dim_smash, 4);
        assert_eq!(h.dim_diamond_bar, 4);
        let r = h.check_span(&dp);
        assert!(r.is_ok(), "{r}");
        let r = h.check_theta(&dp);
        assert!(r.is_ok(), "{r}");
        // Hopf case: the operator span is all of End(A), i.e. M_2(Q)
        let flat: Vec<Element> = h
            .smash
            .carrier_witnesses()
            .iter()
            .map(|xi| {
                let m = h.operator(&dp, xi);
                linalg::flatten_operator(&dp.primal_basis, |l| m.apply(&Element::basis(l.clone())))
            })
            .collect();
        assert_eq!(linalg::span_rank(&flat), 4);
    }

    #[test]
    fn heisenberg_cp2() {
        let g = pair_groupoid(2).unwrap();
        let w = groupoid_algebra(&g);
        let dp = dual_wmha(&w, &unit_indicator(&g)).unwrap();
        let h = heisenberg(&dp).unwrap();
        assert_eq!(h.dim_smash, h.dim_diamond_bar);
        assert!(h.check_span(&dp).is_ok());
        assert!(h.check_theta(&dp).is_ok());
    }

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
    fn duality_theorem_cz2() {
        let g = cyclic_group(2).unwrap();
        let m = set_action_module_algebra(&translation_action(&g)).unwrap();
        let smash = SmashProduct::new(&m).unwrap();
        let dp = dual_wmha(&m.wmha, &unit_indicator(&g)).unwrap();
        let report = verify_duality_theorem(&smash, &dp).unwrap();
        assert_eq!(report.dim_bismash, 8);
        assert_eq!(report.dim_rhs, 8);
        assert!(report.is_pass(), "{:?}", report);
    }

    #[test]
    fn duality_theorem_cp2() {
        let m = p2_module();
        let smash = SmashProduct::new(&m).unwrap();
        let g = pair_groupoid(2).unwrap();
        let dp = dual_wmha(&m.wmha, &unit_indicator(&g)).unwrap();
        let report = verify_duality_theorem(&smash, &dp).unwrap();
        assert_eq!(report.dim_bismash, report.dim_rhs);
        assert!(report.is_pass(), "{:?}", report);
    }

    #[test]
    fn dual_action_module_algebra_checks() {
        let m = p2_module();
        let smash = SmashProduct::new(&m).unwrap();
        let g = pair_groupoid(2).unwrap();
        let dp = dual_wmha(&m.wmha, &unit_indicator(&g)).unwrap();
        let m2 = dual_action_on_smash(&smash, &dp).unwrap();
        let report = m2.check_module_algebra();
        assert!(report.is_pass(), "{report}");
        let bar = bar_module(&smash, &dp).unwrap();
        let r = bar.check_twist(&smash);
        assert!(r.is_ok(), "{r}");
    }

    #[test]
    fn diamond_bar_spaces() {
        // In the Hopf case both E-constrained subspaces coincide with the
        // full diamond algebra; on the pair groupoid they differ, and only
        // the Prop 5.6 span is closed under the diamond product.
        let g = cyclic_group(2).unwrap();
        let w = groupoid_algebra(&g);
        let dp = dual_wmha(&w, &unit_indicator(&g)).unwrap();
        let d = diamond_bar_span(&dp);
        let t = tensor_bar_span(&dp);
        assert_eq!(d.len(), 4);
        assert!(linalg::span_equal(&d, &t));

        let g = pair_groupoid(2).unwrap();
        let w = groupoid_algebra(&g);
        let dp = dual_wmha(&w, &unit_indicator(&g)).unwrap();
        let d = diamond_bar_span(&dp);
        assert_eq!(d.len(), 8);
        let span = Span::new(&d);
        for x in &d {
            for y in &d {
                assert!(span.contains(&diamond_mul(&dp, x, y)));
            }
        }
        let t = tensor_bar_span(&dp);
        assert_eq!(t.len(), 8);
        assert!(!linalg::span_equal(&d, &t));
        let tspan = Span::new(&t);
        let closed = t.iter().all(|x| {
            t.iter().all(|y| tspan.contains(&diamond_mul(&dp, x, y)))
        });
        assert!(!closed, "the literal fixed-point space is unexpectedly closed");
    }

    #[test]
    fn biduality_cp2() {
        let g = pair_groupoid(2).unwrap();
        let w = groupoid_algebra(&g);
        let dp = dual_wmha(&w, &unit_indicator(&g)).unwrap();
        // integrals on the dual, then the bidual
        let dual_integrals = find_integrals(&dp.dual, Side::Left);
        assert!(!dual_integrals.is_empty());
        assert!(check_faithful(&dp.dual, &dual_integrals));
        // the sum of the basis integrals is the faithful default
        let mut psi = Element::zero();
        for phi in &dual_integrals {
            psi.add_scaled(phi, &Scalar::one());
        }
        assert!(check_faithful(&dp.dual, core::slice::from_ref(&psi)));
        let ddp = dual_wmha(&dp.dual, &psi).unwrap();
        // canonical evaluation: a -> (ω -> ω(a)) lands in the bidual
        let eval = |a: &Element| -> Element {
            let mut values = Element::zero();
            for (i, l) in ddp.primal_basis.iter().enumerate() {
                let _ = i;
                let om = Element::basis(l.clone());
                values.add_term(l, &dp.pair(a, &om));
            }
            ddp.to_dual_coords(&values).expect("evaluation lands in the bidual")
        };
        let report = check_wmha_isomorphism(&w, &ddp.dual, &eval);
        assert!(report.is_ok(), "{report}");
    }
}
