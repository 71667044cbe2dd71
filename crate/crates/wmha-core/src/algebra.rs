//! Non-unital associative algebras over the rationals with a declared basis
//! and product rule, together with their multiplier algebras.
//!
//! A multiplier is represented extensionally as a pair of linear actions
//! `(l, r)` with `r(a)b = a l(b)`; on finite backends a matrix realization
//! is available by applying the actions to the basis. The multiplier algebra
//! of a non-unital algebra is not enumerable in general, so equality is only
//! ever decided against an explicit witness set (the full basis when finite,
//! a sampled set otherwise).

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::rc::Rc;
use alloc::string::String;
use alloc::vec::Vec;
use core::cell::OnceCell;

use crate::label::{Basis, Label};
use crate::linalg::{self, SparseMat, SparseVec, Span};
use crate::sample::Sampler;
use crate::scalar::Scalar;

/// An algebra element: a finite linear combination of basis labels. Finite
/// support holds by construction even over a lazy backend.
pub type Element = SparseVec;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgebraError {
    NotAssociative(String),
    NotFinite(&'static str),
    IncompatibleActions(String),
    ProductNotClosed(String),
}

impl core::fmt::Display for AlgebraError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            AlgebraError::NotAssociative(w) => write!(f, "product not associative: {w}"),
            AlgebraError::NotFinite(op) => write!(f, "{op} needs a finite backend"),
            AlgebraError::IncompatibleActions(w) => {
                write!(f, "multiplier actions violate r(a)b = a l(b): {w}")
            }
            AlgebraError::ProductNotClosed(w) => write!(f, "product leaves the span: {w}"),
        }
    }
}

/// Product rule on basis labels, extended bilinearly.
pub type ProductRule = Rc<dyn Fn(&Label, &Label) -> Element>;

/// Enumerable basis with membership predicate for lazily presented algebras.
#[derive(Clone)]
pub struct LazyBasis {
    pub contains: Rc<dyn Fn(&Label) -> bool>,
    pub sample: Rc<dyn Fn(&mut Sampler) -> Label>,
    /// Produces a joint two-sided local unit for the given elements, when
    /// the presentation knows how (groupoid algebras do).
    pub local_unit: Option<Rc<dyn Fn(&[Element]) -> Element>>,
}

enum Backend {
    Finite(Basis),
    Lazy(LazyBasis),
}

struct AlgebraInner {
    name: String,
    backend: Backend,
    product: ProductRule,
    unit: OnceCell<Option<Element>>,
}

/// A non-unital associative algebra over the rationals.
#[derive(Clone)]
pub struct Algebra {
    inner: Rc<AlgebraInner>,
}

impl Algebra {
    /// Finite-backend algebra; associativity of the supplied product table
    /// is checked exhaustively, failing fast on bad tables.
    pub fn finite(
        name: impl Into<String>,
        basis: Basis,
        product: ProductRule,
    ) -> Result<Algebra, AlgebraError> {
        let alg = Algebra::finite_unchecked(name, basis, product);
        alg.check_associative_exhaustive()?;
        Ok(alg)
    }

    /// Finite-backend algebra whose associativity is inherited from its
    /// construction (tensor powers, verified carriers).
    pub fn finite_unchecked(
        name: impl Into<String>,
        basis: Basis,
        product: ProductRule,
    ) -> Algebra {
        Algebra {
            inner: Rc::new(AlgebraInner {
                name: name.into(),
                backend: Backend::Finite(basis),
                product,
                unit: OnceCell::new(),
            }),
        }
    }

    /// Lazy-backend algebra; associativity is sampled with the given budget.
    pub fn lazy(
        name: impl Into<String>,
        basis: LazyBasis,
        product: ProductRule,
        budget: usize,
        seed: u64,
    ) -> Result<Algebra, AlgebraError> {
        let alg = Algebra {
            inner: Rc::new(AlgebraInner {
                name: name.into(),
                backend: Backend::Lazy(basis),
                product,
                unit: OnceCell::new(),
            }),
        };
        let mut sampler = Sampler::new(seed);
        for _ in 0..budget {
            let a = alg.sample_basis(&mut sampler);
            let b = alg.sample_basis(&mut sampler);
            let c = alg.sample_basis(&mut sampler);
            let ab_c = alg.mul(&alg.mul_labels(&a, &b), &Element::basis(c.clone()));
            let a_bc = alg.mul(&Element::basis(a.clone()), &alg.mul_labels(&b, &c));
            if ab_c != a_bc {
                return Err(AlgebraError::NotAssociative(format!("({a}.{b}).{c}")));
            }
        }
        Ok(alg)
    }

    pub fn name(&self) -> &str {
        &self.inner.name
    }

    pub fn is_finite(&self) -> bool {
        matches!(self.inner.backend, Backend::Finite(_))
    }

    pub fn basis(&self) -> Option<&Basis> {
        match &self.inner.backend {
            Backend::Finite(b) => Some(b),
            Backend::Lazy(_) => None,
        }
    }

    /// Finite dimension; panics on lazy backends.
    pub fn dim(&self) -> usize {
        self.basis().expect("finite backend").len()
    }

    pub fn lazy_basis(&self) -> Option<&LazyBasis> {
        match &self.inner.backend {
            Backend::Lazy(b) => Some(b),
            Backend::Finite(_) => None,
        }
    }

    pub fn sample_basis(&self, sampler: &mut Sampler) -> Label {
        match &self.inner.backend {
            Backend::Finite(b) => b.label(sampler.index(b.len())).clone(),
            Backend::Lazy(b) => (b.sample)(sampler),
        }
    }

    pub fn mul_labels(&self, a: &Label, b: &Label) -> Element {
        (self.inner.product)(a, b)
    }

    /// Bilinear extension of the product rule.
    pub fn mul(&self, a: &Element, b: &Element) -> Element {
        let mut out = Element::zero();
        for (la, ca) in a.iter() {
            for (lb, cb) in b.iter() {
                out.add_scaled(&self.mul_labels(la, lb), &(ca * cb));
            }
        }
        out
    }

    pub fn product_rule(&self) -> ProductRule {
        Rc::clone(&self.inner.product)
    }

    fn check_associative_exhaustive(&self) -> Result<(), AlgebraError> {
        let basis = self.basis().expect("finite");
        for a in basis.iter() {
            for b in basis.iter() {
                let ab = self.mul_labels(a, b);
                for l in ab.support() {
                    if !basis.contains(l) {
                        return Err(AlgebraError::ProductNotClosed(format!("{a}.{b} -> {l}")));
                    }
                }
                for c in basis.iter() {
                    let lhs = self.mul(&ab, &Element::basis(c.clone()));
                    let rhs = self.mul(&Element::basis(a.clone()), &self.mul_labels(b, c));
                    if lhs != rhs {
                        return Err(AlgebraError::NotAssociative(format!("({a}.{b}).{c}")));
                    }
                }
            }
        }
        Ok(())
    }

    /// Matrix of left multiplication by `x` on the finite basis.
    pub fn left_mul_matrix(&self, x: &Element) -> SparseMat {
        let basis = self.basis().expect("finite");
        SparseMat::from_map(basis, basis, |l| self.mul(x, &Element::basis(l.clone())))
    }

    pub fn right_mul_matrix(&self, x: &Element) -> SparseMat {
        let basis = self.basis().expect("finite");
        SparseMat::from_map(basis, basis, |l| self.mul(&Element::basis(l.clone()), x))
    }

    /// True iff both annihilators of `A` in `A` vanish, computed as kernels
    /// of the stacked multiplication matrices.
    pub fn check_nondegenerate(&self) -> bool {
        let basis = match self.basis() {
            Some(b) => b,
            None => panic!("check_nondegenerate needs a finite backend"),
        };
        // Left annihilator {x : x·b = 0 for all b}: stack the matrices of
        // right multiplication by each basis element.
        let mut left = SparseMat::new(basis.clone());
        let mut right = SparseMat::new(basis.clone());
        for (bi, b) in basis.iter().enumerate() {
            for (li, l) in basis.iter().enumerate() {
                // row (b, l): coefficient of l in x·b as a function of x
                let mut row_l = SparseVec::zero();
                let mut row_r = SparseVec::zero();
                for x in basis.iter() {
                    let xb = self.mul_labels(x, b);
                    row_l.add_term(x, &xb.get(l));
                    let bx = self.mul_labels(b, x);
                    row_r.add_term(x, &bx.get(l));
                }
                let row_label = Label::atom(format!("{bi}.{li}"));
                left.push_row(row_label.clone(), row_l);
                right.push_row(row_label, row_r);
            }
        }
        linalg::kernel_basis(&left).is_empty() && linalg::kernel_basis(&right).is_empty()
    }

    /// True iff span{xy} = span{basis} (A² = A).
    pub fn check_idempotent(&self) -> bool {
        let basis = match self.basis() {
            Some(b) => b,
            None => panic!("check_idempotent needs a finite backend"),
        };
        let mut products = Vec::new();
        for a in basis.iter() {
            for b in basis.iter() {
                let ab = self.mul_labels(a, b);
                if !ab.is_zero() {
                    products.push(ab);
                }
            }
        }
        linalg::span_rank(&products) == basis.len()
    }

    /// A joint two-sided local unit for the listed elements: solves
    /// `e·x = x` and `x·e = x` for all listed `x`. The empty list yields the
    /// zero element (vacuous constraints). `None` when no local unit exists.
    pub fn find_local_unit(&self, elems: &[Element]) -> Option<Element> {
        if elems.is_empty() {
            return Some(Element::zero());
        }
        match &self.inner.backend {
            Backend::Lazy(lb) => {
                let f = lb.local_unit.as_ref()?;
                Some(f(elems))
            }
            Backend::Finite(basis) => {
                let mut system = SparseMat::new(basis.clone());
                let mut target = SparseVec::zero();
                for (i, x) in elems.iter().enumerate() {
                    // e·x = x and x·e = x, coordinates of e as unknowns.
                    for (side, tag) in [(true, "l"), (false, "r")] {
                        for (j, l) in basis.iter().enumerate() {
                            let mut row = SparseVec::zero();
                            for eb in basis.iter() {
                                let prod = if side {
                                    self.mul(&Element::basis(eb.clone()), x)
                                } else {
                                    self.mul(x, &Element::basis(eb.clone()))
                                };
                                row.add_term(eb, &prod.get(l));
                            }
                            let row_label = Label::atom(format!("{tag}{i}.{j}"));
                            target.set(row_label.clone(), x.get(l));
                            system.push_row(row_label, row);
                        }
                    }
                }
                linalg::solve_linear(&system, &target)
            }
        }
    }

    /// The unit element when the algebra is unital (cached).
    pub fn unit(&self) -> Option<Element> {
        self.inner
            .unit
            .get_or_init(|| {
                let basis = self.basis()?;
                let elems: Vec<Element> = basis
                    .iter()
                    .map(|l| Element::basis(l.clone()))
                    .collect();
                self.find_local_unit(&elems)
            })
            .clone()
    }
}

impl core::fmt::Debug for Algebra {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "Algebra({})", self.inner.name)
    }
}

/// A multiplier of an algebra: a pair of linear actions `(l, r)` with
/// `l(ab) = l(a)b`, `r(ab) = a r(b)` and `r(a)b = a l(b)`.
#[derive(Clone)]
pub struct Multiplier {
    left: Rc<dyn Fn(&Element) -> Element>,
    right: Rc<dyn Fn(&Element) -> Element>,
}

impl Multiplier {
    /// Wraps the two actions after verifying compatibility `r(a)b = a l(b)`
    /// on the given witnesses (the full basis on finite backends).
    pub fn checked(
        algebra: &Algebra,
        left: Rc<dyn Fn(&Element) -> Element>,
        right: Rc<dyn Fn(&Element) -> Element>,
        witnesses: &[Element],
    ) -> Result<Multiplier, AlgebraError> {
        for a in witnesses {
            for b in witnesses {
                let lhs = algebra.mul(&right(a), b);
                let rhs = algebra.mul(a, &left(b));
                if lhs != rhs {
                    return Err(AlgebraError::IncompatibleActions(format!(
                        "a={a}, b={b}: r(a)b={lhs}, a l(b)={rhs}"
                    )));
                }
            }
        }
        Ok(Multiplier { left, right })
    }

    pub fn unchecked(
        left: Rc<dyn Fn(&Element) -> Element>,
        right: Rc<dyn Fn(&Element) -> Element>,
    ) -> Multiplier {
        Multiplier { left, right }
    }

    /// The embedding a -> (x -> ax, x -> xa).
    pub fn from_element(algebra: &Algebra, x: &Element) -> Multiplier {
        let alg_l = algebra.clone();
        let alg_r = algebra.clone();
        let xl = x.clone();
        let xr = x.clone();
        Multiplier {
            left: Rc::new(move |b| alg_l.mul(&xl, b)),
            right: Rc::new(move |b| alg_r.mul(b, &xr)),
        }
    }

    pub fn identity() -> Multiplier {
        Multiplier {
            left: Rc::new(|x| x.clone()),
            right: Rc::new(|x| x.clone()),
        }
    }

    /// Left action `m·x`.
    pub fn apply_left(&self, x: &Element) -> Element {
        (self.left)(x)
    }

    /// Right action `x·m`.
    pub fn apply_right(&self, x: &Element) -> Element {
        (self.right)(x)
    }

    /// Multiplier product: left actions compose, right actions compose in
    /// reverse order.
    pub fn mul(&self, other: &Multiplier) -> Multiplier {
        let l1 = Rc::clone(&self.left);
        let l2 = Rc::clone(&other.left);
        let r1 = Rc::clone(&self.right);
        let r2 = Rc::clone(&other.right);
        Multiplier {
            left: Rc::new(move |x| l1(&l2(x))),
            right: Rc::new(move |x| r2(&r1(x))),
        }
    }

    /// Equality on the witness set (both actions must agree on every
    /// witness). On finite backends with the basis as witnesses this is
    /// genuine equality; on lazy backends it is only "equal on N witnesses".
    pub fn eq_on(&self, other: &Multiplier, witnesses: &[Element]) -> bool {
        witnesses.iter().all(|w| {
            self.apply_left(w) == other.apply_left(w)
                && self.apply_right(w) == other.apply_right(w)
        })
    }
}

/// Tensor product of two algebras with componentwise product; basis labels
/// are pairs in lexicographic factor order.
pub fn tensor2(a: &Algebra, b: &Algebra) -> Algebra {
    let name = format!("{} (x) {}", a.name(), b.name());
    let pa = a.product_rule();
    let pb = b.product_rule();
    let product: ProductRule = Rc::new(move |x: &Label, y: &Label| {
        let (x1, x2) = x.as_pair().expect("pair label");
        let (y1, y2) = y.as_pair().expect("pair label");
        tensor_elem(&pa(x1, y1), &pb(x2, y2))
    });
    match (a.basis(), b.basis()) {
        (Some(ba), Some(bb)) => Algebra::finite_unchecked(name, ba.tensor(bb), product),
        _ => {
            let la = a
                .lazy_basis()
                .cloned()
                .unwrap_or_else(|| finite_as_lazy(a));
            let lb = b
                .lazy_basis()
                .cloned()
                .unwrap_or_else(|| finite_as_lazy(b));
            let contains = {
                let (ca, cb) = (Rc::clone(&la.contains), Rc::clone(&lb.contains));
                Rc::new(move |l: &Label| {
                    l.as_pair()
                        .map(|(x, y)| ca(x) && cb(y))
                        .unwrap_or(false)
                })
            };
            let sample = {
                let (sa, sb) = (Rc::clone(&la.sample), Rc::clone(&lb.sample));
                Rc::new(move |s: &mut Sampler| Label::pair(sa(s), sb(s)))
            };
            let local_unit = match (&la.local_unit, &lb.local_unit) {
                (Some(ua), Some(ub)) => {
                    let (ua, ub) = (Rc::clone(ua), Rc::clone(ub));
                    Some(Rc::new(move |elems: &[Element]| {
                        let mut lefts = Vec::new();
                        let mut rights = Vec::new();
                        for e in elems {
                            for (l, _) in e.iter() {
                                let (x, y) = l.as_pair().expect("pair label");
                                lefts.push(Element::basis(x.clone()));
                                rights.push(Element::basis(y.clone()));
                            }
                        }
                        tensor_elem(&ua(&lefts), &ub(&rights))
                    }) as Rc<dyn Fn(&[Element]) -> Element>)
                }
                _ => None,
            };
            Algebra {
                inner: Rc::new(AlgebraInner {
                    name,
                    backend: Backend::Lazy(LazyBasis {
                        contains,
                        sample,
                        local_unit,
                    }),
                    product,
                    unit: OnceCell::new(),
                }),
            }
        }
    }
}

fn finite_as_lazy(a: &Algebra) -> LazyBasis {
    let basis = a.basis().expect("finite").clone();
    let b2 = basis.clone();
    LazyBasis {
        contains: Rc::new(move |l| basis.contains(l)),
        sample: Rc::new(move |s| b2.label(s.index(b2.len())).clone()),
        local_unit: None,
    }
}

/// Triple tensor product with flat triple labels.
pub fn tensor3(a: &Algebra, b: &Algebra, c: &Algebra) -> Algebra {
    let name = format!("{} (x) {} (x) {}", a.name(), b.name(), c.name());
    let pa = a.product_rule();
    let pb = b.product_rule();
    let pc = c.product_rule();
    let product: ProductRule = Rc::new(move |x: &Label, y: &Label| {
        let (x1, x2, x3) = x.as_triple().expect("triple label");
        let (y1, y2, y3) = y.as_triple().expect("triple label");
        tensor_elem3(&pa(x1, y1), &pb(x2, y2), &pc(x3, y3))
    });
    match (a.basis(), b.basis(), c.basis()) {
        (Some(ba), Some(bb), Some(bc)) => {
            Algebra::finite_unchecked(name, ba.tensor3(bb, bc), product)
        }
        _ => panic!("lazy triple tensor algebras are not materialized"),
    }
}

/// Outer product x (x) y as an element of the pair-labelled tensor space.
pub fn tensor_elem(x: &Element, y: &Element) -> Element {
    let mut out = Element::zero();
    for (lx, cx) in x.iter() {
        for (ly, cy) in y.iter() {
            out.add_term(&Label::pair(lx.clone(), ly.clone()), &(cx * cy));
        }
    }
    out
}

pub fn tensor_elem3(x: &Element, y: &Element, z: &Element) -> Element {
    let mut out = Element::zero();
    for (lx, cx) in x.iter() {
        for (ly, cy) in y.iter() {
            let cxy = cx * cy;
            for (lz, cz) in z.iter() {
                out.add_term(&Label::triple(lx.clone(), ly.clone(), lz.clone()), &(&cxy * cz));
            }
        }
    }
    out
}

/// Flip of a pair-labelled tensor element.
pub fn flip2(x: &Element) -> Element {
    x.map_terms(|l| Element::basis(l.flipped()))
}

/// (a,b,c) -> (a,c,b), the flip of the last two legs.
pub fn flip23(x: &Element) -> Element {
    x.map_terms(|l| {
        let (a, b, c) = l.as_triple().expect("triple label");
        Element::basis(Label::triple(a.clone(), c.clone(), b.clone()))
    })
}

/// Decomposes a pair-labelled element into elementary tensors, grouped by
/// first leg: returns pairs (first-leg label, second-leg element).
pub fn group_by_first(x: &Element) -> Vec<(Label, Element)> {
    let mut firsts: Vec<Label> = Vec::new();
    let mut seen: BTreeSet<Label> = BTreeSet::new();
    for (l, _) in x.iter() {
        let (a, _) = l.as_pair().expect("pair label");
        if seen.insert(a.clone()) {
            firsts.push(a.clone());
        }
    }
    firsts
        .into_iter()
        .map(|a| {
            let mut part = Element::zero();
            for (l, c) in x.iter() {
                let (la, lb) = l.as_pair().unwrap();
                if *la == a {
                    part.add_term(lb, c);
                }
            }
            (a, part)
        })
        .collect()
}

/// As [`group_by_first`] but grouped by second leg.
pub fn group_by_second(x: &Element) -> Vec<(Label, Element)> {
    let mut seconds: Vec<Label> = Vec::new();
    let mut seen: BTreeSet<Label> = BTreeSet::new();
    for (l, _) in x.iter() {
        let (_, b) = l.as_pair().expect("pair label");
        if seen.insert(b.clone()) {
            seconds.push(b.clone());
        }
    }
    seconds
        .into_iter()
        .map(|b| {
            let mut part = Element::zero();
            for (l, c) in x.iter() {
                let (la, lb) = l.as_pair().unwrap();
                if *lb == b {
                    part.add_term(la, c);
                }
            }
            (b, part)
        })
        .collect()
}

/// Elementary-tensor terms of a pair-labelled element: (first, second,
/// coefficient) triples in label order.
pub fn pair_terms(x: &Element) -> Vec<(Label, Label, Scalar)> {
    x.iter()
        .map(|(l, c)| {
            let (a, b) = l.as_pair().expect("pair label");
            (a.clone(), b.clone(), c.clone())
        })
        .collect()
}

/// The injectivity check behind "multiplier_from_element is injective on
/// non-degenerate algebras": kernel of a -> (left action, right action).
pub fn embedding_kernel_dim(algebra: &Algebra) -> usize {
    let basis = algebra.basis().expect("finite");
    let mut stacked = SparseMat::new(basis.clone());
    for (bi, b) in basis.iter().enumerate() {
        for (li, l) in basis.iter().enumerate() {
            let mut row_l = SparseVec::zero();
            let mut row_r = SparseVec::zero();
            for a in basis.iter() {
                row_l.add_term(a, &algebra.mul_labels(a, b).get(l));
                row_r.add_term(a, &algebra.mul_labels(b, a).get(l));
            }
            stacked.push_row(Label::atom(format!("l{bi}.{li}")), row_l);
            stacked.push_row(Label::atom(format!("r{bi}.{li}")), row_r);
        }
    }
    linalg::kernel_basis(&stacked).len()
}

/// Span of all products x·y over basis pairs, as a [`Span`].
pub fn product_span(algebra: &Algebra) -> Span {
    let basis = algebra.basis().expect("finite");
    let mut products = Vec::new();
    for a in basis.iter() {
        for b in basis.iter() {
            let ab = algebra.mul_labels(a, b);
            if !ab.is_zero() {
                products.push(ab);
            }
        }
    }
    Span::over_basis(&products, basis)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::groupoid_algebra;
    use crate::groupoid::{cyclic_group, pair_groupoid};

    fn zero_product_algebra() -> Algebra {
        Algebra::finite(
            "null2",
            Basis::from_atoms(["u", "v"]),
            Rc::new(|_, _| Element::zero()),
        )
        .unwrap()
    }

    #[test]
    fn zero_product_is_degenerate() {
        let a = zero_product_algebra();
        assert!(!a.check_nondegenerate());
        assert!(!a.check_idempotent());
        assert_eq!(a.unit(), None);
    }

    #[test]
    fn group_algebra_is_nondegenerate() {
        let a = groupoid_algebra(&cyclic_group(2).unwrap()).algebra().clone();
        assert!(a.check_nondegenerate());
        assert!(a.check_idempotent());
        let unit = a.unit().expect("group algebra is unital");
        assert_eq!(unit, Element::basis(Label::atom("g0")));
    }

    #[test]
    fn pair_groupoid_algebra_unit() {
        let a = groupoid_algebra(&pair_groupoid(2).unwrap()).algebra().clone();
        assert!(a.check_nondegenerate());
        // unit = sum of the unit idempotents
        let unit = a.unit().expect("unital");
        let expected = Element::basis(Label::atom("m11")).add(&Element::basis(Label::atom("m22")));
        assert_eq!(unit, expected);
    }

    #[test]
    fn local_units() {
        let a = groupoid_algebra(&pair_groupoid(2).unwrap()).algebra().clone();
        // elems = {λ_m21}: any e with e·λ = λ·e = λ is accepted.
        let x = Element::basis(Label::atom("m21"));
        let e = a.find_local_unit(core::slice::from_ref(&x)).unwrap();
        assert_eq!(a.mul(&e, &x), x);
        assert_eq!(a.mul(&x, &e), x);
        // empty list -> zero element
        assert_eq!(a.find_local_unit(&[]), Some(Element::zero()));
        // the zero-product algebra has no local unit for a nonzero element
        let z = zero_product_algebra();
        assert_eq!(z.find_local_unit(&[Element::basis(Label::atom("u"))]), None);
    }

    #[test]
    fn multiplier_embedding() {
        let a = groupoid_algebra(&pair_groupoid(2).unwrap()).algebra().clone();
        let basis_elems: Vec<Element> = a
            .basis()
            .unwrap()
            .iter()
            .map(|l| Element::basis(l.clone()))
            .collect();
        // zero element -> zero multiplier
        let m0 = Multiplier::from_element(&a, &Element::zero());
        for w in &basis_elems {
            assert!(m0.apply_left(w).is_zero());
            assert!(m0.apply_right(w).is_zero());
        }
        // the unit embeds as the identity multiplier
        let unit = a.unit().unwrap();
        let mu = Multiplier::from_element(&a, &unit);
        assert!(mu.eq_on(&Multiplier::identity(), &basis_elems));
        // embedding is an algebra homomorphism on basis pairs
        for x in a.basis().unwrap().iter() {
            for y in a.basis().unwrap().iter() {
                let mx = Multiplier::from_element(&a, &Element::basis(x.clone()));
                let my = Multiplier::from_element(&a, &Element::basis(y.clone()));
                let mxy = Multiplier::from_element(&a, &a.mul_labels(x, y));
                assert!(mx.mul(&my).eq_on(&mxy, &basis_elems));
            }
        }
        // and injective because the algebra is non-degenerate
        assert_eq!(embedding_kernel_dim(&a), 0);
    }

    #[test]
    fn incompatible_actions_rejected() {
        let a = groupoid_algebra(&cyclic_group(2).unwrap()).algebra().clone();
        let witnesses: Vec<Element> = a
            .basis()
            .unwrap()
            .iter()
            .map(|l| Element::basis(l.clone()))
            .collect();
        let g = Element::basis(Label::atom("g1"));
        let alg = a.clone();
        let left: Rc<dyn Fn(&Element) -> Element> = {
            let g = g.clone();
            let alg = alg.clone();
            Rc::new(move |x| alg.mul(&g, x))
        };
        // right action deliberately NOT the right multiplication by g
        let right: Rc<dyn Fn(&Element) -> Element> = Rc::new(|x| x.clone());
        assert!(Multiplier::checked(&a, left, right, &witnesses).is_err());
    }

    #[test]
    fn tensor_of_nondegenerate_is_nondegenerate() {
        let a = groupoid_algebra(&pair_groupoid(2).unwrap()).algebra().clone();
        let b = groupoid_algebra(&cyclic_group(2).unwrap()).algebra().clone();
        let t = tensor2(&a, &b);
        assert_eq!(t.dim(), 8);
        assert!(t.check_nondegenerate());
        assert!(t.check_idempotent());
    }

    #[test]
    fn multiplier_product_associative_sampled() {
        let a = groupoid_algebra(&pair_groupoid(2).unwrap()).algebra().clone();
        let basis_elems: Vec<Element> = a
            .basis()
            .unwrap()
            .iter()
            .map(|l| Element::basis(l.clone()))
            .collect();
        let ms: Vec<Multiplier> = basis_elems
            .iter()
            .map(|x| Multiplier::from_element(&a, x))
            .collect();
        for x in &ms {
            for y in &ms {
                for z in &ms {
                    let lhs = x.mul(y).mul(z);
                    let rhs = x.mul(&y.mul(z));
                    assert!(lhs.eq_on(&rhs, &basis_elems));
                }
            }
        }
    }
}
