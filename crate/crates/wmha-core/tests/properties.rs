//! Property tests for the exact-arithmetic substrate and the groupoid
//! generators.

use proptest::prelude::*;

use wmha_core::groupoid::{cyclic_group, disjoint_union, pair_groupoid};
use wmha_core::label::{Basis, Label};
use wmha_core::linalg::{self, SparseMat, SparseVec};
use wmha_core::scalar::Scalar;

fn scalar_strategy() -> impl Strategy<Value = Scalar> {
    (-40i64..40, 1i64..20).prop_map(|(n, d)| Scalar::fraction(n, d))
}

fn vector_strategy(n_labels: usize) -> impl Strategy<Value = SparseVec> {
    prop::collection::vec((0..n_labels, scalar_strategy()), 0..5).prop_map(|entries| {
        let mut v = SparseVec::zero();
        for (i, c) in entries {
            v.add_term(&Label::atom(format!("e{i}")), &c);
        }
        v
    })
}

fn full_basis(n: usize) -> Basis {
    Basis::new((0..n).map(|i| Label::atom(format!("e{i}"))).collect())
}

proptest! {
    #[test]
    fn scalar_field_laws(a in scalar_strategy(), b in scalar_strategy(), c in scalar_strategy()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        if !a.is_zero() {
            prop_assert!((&a * &a.recip()).is_one());
        }
    }

    #[test]
    fn vectors_never_store_zeros(v in vector_strategy(6), w in vector_strategy(6)) {
        let sum = v.add(&w);
        for (_, c) in sum.iter() {
            prop_assert!(!c.is_zero());
        }
        let cancel = sum.sub(&v).sub(&w);
        prop_assert!(cancel.is_zero());
    }

    /// span_equal is an equivalence relation on sampled triples.
    #[test]
    fn span_equal_is_an_equivalence(
        u in prop::collection::vec(vector_strategy(5), 0..4),
        v in prop::collection::vec(vector_strategy(5), 0..4),
        w in prop::collection::vec(vector_strategy(5), 0..4),
    ) {
        prop_assert!(linalg::span_equal(&u, &u));
        prop_assert_eq!(linalg::span_equal(&u, &v), linalg::span_equal(&v, &u));
        if linalg::span_equal(&u, &v) && linalg::span_equal(&v, &w) {
            prop_assert!(linalg::span_equal(&u, &w));
        }
    }

    /// rank(m) + |kernel_basis(m)| = number of columns, and kernel vectors
    /// are genuine null vectors.
    #[test]
    fn rank_nullity(rows in prop::collection::vec(vector_strategy(5), 0..6)) {
        let basis = full_basis(5);
        let mut m = SparseMat::new(basis);
        for (i, r) in rows.iter().enumerate() {
            m.push_row(Label::atom(format!("r{i}")), r.clone());
        }
        let rank = linalg::rank(&m);
        let kernel = linalg::kernel_basis(&m);
        prop_assert_eq!(rank + kernel.len(), 5);
        for k in &kernel {
            prop_assert!(m.apply(k).is_zero());
        }
    }

    /// solve_linear returns v with m·v = target, exactly.
    #[test]
    fn solve_is_exact(
        rows in prop::collection::vec(vector_strategy(4), 1..5),
        coeffs in prop::collection::vec(scalar_strategy(), 1..5),
    ) {
        let basis = full_basis(4);
        let mut m = SparseMat::new(basis);
        for (i, r) in rows.iter().enumerate() {
            m.push_row(Label::atom(format!("r{i}")), r.clone());
        }
        // build a consistent target from a random combination of columns
        let mut x = SparseVec::zero();
        for (i, c) in coeffs.iter().enumerate().take(4) {
            x.add_term(&Label::atom(format!("e{i}")), c);
        }
        let target = m.apply(&x);
        let solution = linalg::solve_linear(&m, &target);
        prop_assert!(solution.is_some());
        prop_assert_eq!(m.apply(&solution.unwrap()), target);
    }

    /// pair_groupoid(n): n² morphisms, n units, inverse an involution, and
    /// m⁻¹·m is always defined.
    #[test]
    fn pair_groupoid_laws(n in 1usize..5) {
        let g = pair_groupoid(n).unwrap();
        prop_assert_eq!(g.n_morphisms(), n * n);
        prop_assert_eq!(g.units().count(), n);
        prop_assert!(g.validate().is_valid());
        for m in 0..g.n_morphisms() {
            prop_assert_eq!(g.inverse(g.inverse(m)), m);
            prop_assert!(g.compose(g.inverse(m), m).is_some());
        }
    }

    #[test]
    fn cyclic_group_laws(n in 1usize..7) {
        let g = cyclic_group(n).unwrap();
        prop_assert_eq!(g.n_morphisms(), n);
        prop_assert_eq!(g.units().count(), 1);
        prop_assert!(g.validate().is_valid());
    }

    #[test]
    fn disjoint_union_is_additive(n in 1usize..4, m in 1usize..4) {
        let g = disjoint_union(&pair_groupoid(n).unwrap(), &cyclic_group(m).unwrap()).unwrap();
        prop_assert_eq!(g.n_morphisms(), n * n + m);
        prop_assert_eq!(g.units().count(), n + 1);
        prop_assert!(g.validate().is_valid());
    }
}
