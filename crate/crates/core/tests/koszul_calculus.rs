use std::sync::Arc;

use nkoszul_core::koszul_calculus::tensor_form::{
    cap_left_tensor, cap_right_tensor, cup_tensor, Extension, TensorChain,
};
use nkoszul_core::koszul_calculus::{
    assoc_defect, cap_left, cap_right, cartan_wedge, contraction, cup, cup_with_case, graded_comm_defect,
};
use nkoszul_core::ratlin::int;
use nkoszul_core::tensorspace::increasing_tuples;
use nkoszul_core::{AlgebraElement, Chain, Cochain, IncreasingTuple, NSymAlgebra, ParityCase, Word};

fn sign(e: usize) -> i64 {
    if e.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

fn duals(ctx: &Arc<NSymAlgebra>, p: usize) -> Vec<Cochain> {
    Cochain::dual_basis_all(ctx, p)
}

fn basis_chains(ctx: &Arc<NSymAlgebra>, q: usize) -> Vec<Chain> {
    if ctx.nu(q) > ctx.n() {
        return Vec::new();
    }
    increasing_tuples(ctx.n(), ctx.nu(q))
        .into_iter()
        .map(|t| Chain::basis(ctx, q, AlgebraElement::one(ctx), t).unwrap())
        .collect()
}

fn tuple(ctx: &Arc<NSymAlgebra>, one_based: &[usize]) -> IncreasingTuple {
    IncreasingTuple::from_one_based(one_based, ctx.n()).unwrap()
}

#[test]
fn cup_with_zero_is_zero() {
    let ctx = NSymAlgebra::new(3, 3).unwrap();
    let f = Cochain::random(&ctx, 1, 1, 4).unwrap();
    let z = Cochain::zero(&ctx, 1);
    assert!(cup(&f, &z).unwrap().is_zero());
    assert!(cup(&z, &f).unwrap().is_zero());
}

#[test]
fn symmetric_values_cancel_at_n2() {
    let ctx = NSymAlgebra::new(2, 2).unwrap();
    let mut f = Cochain::zero(&ctx, 1);
    for i in 1..=2 {
        f.set(tuple(&ctx, &[i]), AlgebraElement::one(&ctx)).unwrap();
    }
    let ff = cup(&f, &f).unwrap();
    assert!(ff.value(&tuple(&ctx, &[1, 2])).is_zero());
}

/// Literal expansion of the spread cup for `f = e^1`, `g = e^2` at `N = 3, n = 3`:
/// every layout and every block shuffle, counted before cancellation.
#[test]
fn dual_basis_spread_cup_by_hand() {
    let ctx = NSymAlgebra::new(3, 3).unwrap();
    let f = Cochain::dual_basis(&ctx, 1, tuple(&ctx, &[1])).unwrap();
    let g = Cochain::dual_basis(&ctx, 1, tuple(&ctx, &[2])).unwrap();
    let mut expected = AlgebraElement::zero(&ctx);
    let mut raw_terms = 0;
    // layouts (i, mid, j) with i + j ≤ 1; the blocks are single slots
    for (i, j) in [(0, 0), (1, 0), (0, 1)] {
        let (b1, b2) = (i, 3 - 1 - j);
        for perm in nkoszul_core::tensorspace::Perm::all(3) {
            raw_terms += 1;
            let letters: Vec<usize> = (0..3).map(|k| perm.apply(k)).collect();
            if letters[b1] != 0 || letters[b2] != 1 {
                continue;
            }
            let spectators: Vec<usize> = (0..3).filter(|&k| k != b1 && k != b2).map(|k| letters[k]).collect();
            let (before, middle, after) = match (i, j) {
                (0, 0) => (vec![], spectators, vec![]),
                (1, 0) => (spectators, vec![], vec![]),
                _ => (vec![], vec![], spectators),
            };
            let w = Word::new([before, middle, after].concat());
            expected.add_scaled(&AlgebraElement::from_word(&ctx, &w), &int(-perm.sign()));
        }
    }
    assert_eq!(raw_terms, 18);
    let got = cup(&f, &g).unwrap().value(&tuple(&ctx, &[1, 2, 3]));
    assert_eq!(got, expected);
    // layouts (0,0), (1,0), (0,1) contribute +e3, −e3, −e3
    assert_eq!(got, AlgebraElement::generator(&ctx, 2).scaled(&int(-1)));
}

#[test]
fn n2_cup_is_associative() {
    for n in 2..=3 {
        let ctx = NSymAlgebra::new(n, 2).unwrap();
        for p in 0..=2 {
            for q in 0..=2 {
                for r in 0..=2 {
                    for f in duals(&ctx, p) {
                        for g in duals(&ctx, q) {
                            for h in duals(&ctx, r) {
                                assert!(assoc_defect(&f, &g, &h).unwrap().is_zero(), "n={n} {p},{q},{r}");
                            }
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn n2_cup_is_graded_commutative() {
    for n in 2..=3 {
        let ctx = NSymAlgebra::new(n, 2).unwrap();
        for p in 0..=2 {
            for q in 0..=2 {
                for f in duals(&ctx, p) {
                    for g in duals(&ctx, q) {
                        assert!(graded_comm_defect(&f, &g).unwrap().is_zero());
                    }
                }
            }
        }
    }
}

#[test]
fn n2_cup_is_signed_cartan_wedge() {
    for n in 2..=3 {
        let ctx = NSymAlgebra::new(n, 2).unwrap();
        for p in 0..=2 {
            for q in 0..=2 {
                for f in duals(&ctx, p) {
                    for g in duals(&ctx, q) {
                        let wedge = cartan_wedge(&f, &g).unwrap();
                        assert_eq!(cup(&f, &g).unwrap(), wedge.scaled(&int(sign(p * q))));
                    }
                }
            }
        }
    }
}

#[test]
fn cartan_wedge_examples() {
    let ctx = NSymAlgebra::new(2, 2).unwrap();
    let f = Cochain::dual_basis(&ctx, 1, tuple(&ctx, &[1])).unwrap();
    let g = Cochain::dual_basis(&ctx, 1, tuple(&ctx, &[2])).unwrap();
    let w = cartan_wedge(&f, &g).unwrap();
    assert_eq!(w.value(&tuple(&ctx, &[1, 2])), AlgebraElement::one(&ctx));
    let mut a = Cochain::zero(&ctx, 0);
    a.set(IncreasingTuple::empty(), AlgebraElement::generator(&ctx, 0)).unwrap();
    let mut b = Cochain::zero(&ctx, 0);
    b.set(IncreasingTuple::empty(), AlgebraElement::generator(&ctx, 1)).unwrap();
    let prod = cartan_wedge(&a, &b).unwrap();
    let e1e2 = AlgebraElement::from_word(&ctx, &Word::new(vec![0, 1]));
    assert_eq!(prod.value(&IncreasingTuple::empty()), e1e2);
    let bad = NSymAlgebra::new(3, 3).unwrap();
    assert!(cartan_wedge(&Cochain::zero(&bad, 0), &Cochain::zero(&bad, 0)).is_err());
}

#[test]
fn contraction_examples() {
    let ctx = NSymAlgebra::new(2, 2).unwrap();
    let f = Cochain::dual_basis(&ctx, 1, tuple(&ctx, &[1])).unwrap();
    let z = Chain::basis(&ctx, 2, AlgebraElement::one(&ctx), tuple(&ctx, &[1, 2])).unwrap();
    let expected = Chain::basis(&ctx, 1, AlgebraElement::one(&ctx), tuple(&ctx, &[2])).unwrap();
    assert_eq!(contraction(&f, &z).unwrap(), expected);
    let z0 = Chain::basis(&ctx, 0, AlgebraElement::one(&ctx), IncreasingTuple::empty()).unwrap();
    assert!(contraction(&f, &z0).unwrap().is_zero());
    assert_eq!(cap_left(&f, &z).unwrap(), expected);
}

/// `cap_left = ε(p, q) · i_f` with one sign per `(p, q)`; the observed table is `ε ≡ +1`.
fn epsilon_table() -> Vec<((usize, usize), i64)> {
    let mut table = Vec::new();
    for p in 0..=2 {
        for q in p..=3 {
            let mut eps: Option<i64> = None;
            for n in 2..=3 {
                let ctx = NSymAlgebra::new(n, 2).unwrap();
                for f in duals(&ctx, p) {
                    for z in basis_chains(&ctx, q) {
                        let cap = cap_left(&f, &z).unwrap();
                        let classical = contraction(&f, &z).unwrap();
                        if classical.is_zero() {
                            assert!(cap.is_zero());
                            continue;
                        }
                        let s = if cap == classical {
                            1
                        } else {
                            assert_eq!(cap, classical.scaled(&int(-1)));
                            -1
                        };
                        assert_eq!(*eps.get_or_insert(s), s, "sign changes inside class ({p},{q})");
                    }
                }
            }
            if let Some(s) = eps {
                table.push(((p, q), s));
            }
        }
    }
    table
}

#[test]
fn n2_cap_left_is_contraction() {
    let table = epsilon_table();
    assert_eq!(table.len(), 9);
    assert!(table.iter().all(|&(_, s)| s == 1), "{table:?}");
}

#[test]
fn n2_cap_right_over_cap_left_is_sign_of_qp() {
    for n in 2..=3 {
        let ctx = NSymAlgebra::new(n, 2).unwrap();
        for p in 0..=2 {
            for q in p..=3 {
                for f in duals(&ctx, p) {
                    for z in basis_chains(&ctx, q) {
                        let left = cap_left(&f, &z).unwrap();
                        let right = cap_right(&z, &f).unwrap();
                        assert_eq!(right, left.scaled(&int(sign(q * p))), "n={n} p={p} q={q}");
                    }
                }
            }
        }
    }
}

#[test]
fn n2_both_formulas_agree() {
    let ctx = NSymAlgebra::new(3, 2).unwrap();
    for p in 0..=2 {
        for q in 0..=2 {
            for f in duals(&ctx, p) {
                for g in duals(&ctx, q) {
                    let a = cup_with_case(&f, &g, ParityCase::Concatenation).unwrap();
                    let b = cup_with_case(&f, &g, ParityCase::Spread).unwrap();
                    // the sign prefactors are (−1)^{pq} and −1; the sums are identical
                    let relative = if p % 2 == 1 && q % 2 == 1 { 1 } else { -1 };
                    assert_eq!(a, b.scaled(&int(relative)));
                }
            }
        }
    }
}

#[test]
fn wrong_formula_is_rejected() {
    let ctx = NSymAlgebra::new(4, 3).unwrap();
    let f = Cochain::dual_basis(&ctx, 1, tuple(&ctx, &[1])).unwrap();
    assert!(cup_with_case(&f, &f, ParityCase::Concatenation).is_err());
    let g = Cochain::dual_basis(&ctx, 2, tuple(&ctx, &[1, 2, 3])).unwrap();
    assert!(cup_with_case(&f, &g, ParityCase::Spread).is_err());
}

#[test]
fn caps_vanish_below_the_chain_degree() {
    for (n, big_n) in [(2, 2), (3, 2), (3, 3), (4, 3)] {
        let ctx = NSymAlgebra::new(n, big_n).unwrap();
        for p in 1..=3 {
            if ctx.nu(p) > n {
                continue;
            }
            for q in 0..p {
                let f = Cochain::random(&ctx, p, 1, 7).unwrap();
                for z in basis_chains(&ctx, q) {
                    assert!(cap_left(&f, &z).unwrap().is_zero());
                    assert!(cap_right(&z, &f).unwrap().is_zero());
                }
            }
        }
    }
}

#[test]
fn constant_zero_cochain_caps_are_identity() {
    let ctx = NSymAlgebra::new(4, 3).unwrap();
    let mut one = Cochain::zero(&ctx, 0);
    one.set(IncreasingTuple::empty(), AlgebraElement::one(&ctx)).unwrap();
    for q in 0..=3 {
        let z = Chain::random(&ctx, q, 2, 11).unwrap();
        assert_eq!(cap_left(&one, &z).unwrap(), z);
        assert_eq!(cap_right(&z, &one).unwrap(), z);
    }
}

#[test]
fn products_vanish_past_top_degree() {
    let ctx = NSymAlgebra::new(3, 3).unwrap();
    let f = Cochain::random(&ctx, 1, 1, 3).unwrap();
    let g = Cochain::random(&ctx, 2, 1, 4).unwrap();
    let fg = cup(&f, &g).unwrap();
    assert_eq!(fg.degree(), 3);
    assert!(fg.is_zero());
}

#[test]
fn degree_bookkeeping() {
    let ctx = NSymAlgebra::new(5, 3).unwrap();
    for p in 0..=3 {
        for q in 0..=3 {
            if ctx.nu(p + q) > 5 {
                continue;
            }
            let f = Cochain::random(&ctx, p, 1, 1).unwrap();
            let g = Cochain::random(&ctx, q, 1, 2).unwrap();
            let fg = cup(&f, &g).unwrap();
            let extra = if p % 2 == 1 && q % 2 == 1 { 1 } else { 0 };
            assert_eq!(fg.arity(), ctx.nu(p) + ctx.nu(q) + extra);
            assert!(fg.entries().all(|(t, _)| t.len() == fg.arity()));
        }
    }
}

#[test]
fn random_cochain_fixture() {
    let ctx = NSymAlgebra::new(3, 3).unwrap();
    let f = Cochain::random(&ctx, 1, 2, 1).unwrap();
    assert_eq!(f, Cochain::random(&ctx, 1, 2, 1).unwrap());
    assert_eq!(f.to_string(), "e1 ↦ (-2/1) 1 + (2/1) e2e1; e2 ↦ (-1/1) e3 + (-2/1) e1e2 + (1/1) e2e2");
    let scalar = Cochain::random(&ctx, 1, 0, 1).unwrap();
    assert!(scalar.entries().all(|(_, v)| v.parts().all(|(m, _)| m == 0)));
}

fn tensor_chain(z: &Chain) -> TensorChain {
    TensorChain::from_chain(z)
}

fn agreement(n: usize, big_n: usize, seed: u64) {
    let ctx = NSymAlgebra::new(n, big_n).unwrap();
    for p in 0..=3 {
        for q in 0..=3 - p {
            if ctx.nu(p) > n || ctx.nu(q) > n {
                continue;
            }
            let mut fs = duals(&ctx, p);
            fs.push(Cochain::random(&ctx, p, 1, seed).unwrap());
            let mut gs = duals(&ctx, q);
            gs.push(Cochain::random(&ctx, q, 1, seed + 1).unwrap());
            for f in &fs {
                for g in &gs {
                    let direct = cup(f, g).unwrap();
                    for ext in [Extension::IncreasingWord, Extension::Antisymmetric] {
                        assert_eq!(cup_tensor(f, g, ext).unwrap(), direct, "cup N={big_n} n={n} p={p} q={q}");
                    }
                }
            }
            // caps: f of degree p against chains of degree p + q
            let cq = p + q;
            if ctx.nu(cq) > n {
                continue;
            }
            let mut zs = basis_chains(&ctx, cq);
            zs.push(Chain::random(&ctx, cq, 1, seed + 2).unwrap());
            for f in &fs {
                for z in &zs {
                    let left = tensor_chain(&cap_left(f, z).unwrap());
                    let right = tensor_chain(&cap_right(z, f).unwrap());
                    for ext in [Extension::IncreasingWord, Extension::Antisymmetric] {
                        assert_eq!(
                            cap_left_tensor(f, z, ext).unwrap().terms().collect::<Vec<_>>(),
                            left.terms().collect::<Vec<_>>(),
                            "capl N={big_n} n={n} p={p} q={cq}"
                        );
                        assert_eq!(
                            cap_right_tensor(z, f, ext).unwrap().terms().collect::<Vec<_>>(),
                            right.terms().collect::<Vec<_>>(),
                            "capr N={big_n} n={n} p={p} q={cq}"
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn wedge_and_tensor_forms_agree_n2() {
    for n in 2..=4 {
        agreement(n, 2, 5);
    }
}

#[test]
fn wedge_and_tensor_forms_agree_n3() {
    for n in 3..=4 {
        agreement(n, 3, 9);
    }
}

mod bilinearity {
    use super::*;
    use proptest::prelude::*;

    fn degrees() -> impl Strategy<Value = (usize, usize, usize, usize)> {
        // (n, N, p, q) with every operand and product inside Λ^{≤n}
        (3usize..=4, 2usize..=3, 0usize..=2, 0usize..=2)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn cup_and_caps_are_bilinear((n, big_n, p, q) in degrees(), seed in 0u64..1000, c in -3i64..=3) {
            let ctx = NSymAlgebra::new(n, big_n).unwrap();
            prop_assume!(ctx.nu(p) <= n && ctx.nu(q) <= n);
            let f = Cochain::random(&ctx, p, 1, seed).unwrap();
            let f2 = Cochain::random(&ctx, p, 1, seed + 1).unwrap();
            let g = Cochain::random(&ctx, q, 1, seed + 2).unwrap();
            let g2 = Cochain::random(&ctx, q, 1, seed + 3).unwrap();
            let mut fs = f.clone();
            fs.add_scaled(&f2, &int(c)).unwrap();
            let mut gs = g.clone();
            gs.add_scaled(&g2, &int(c)).unwrap();

            let mut left = cup(&f, &g).unwrap();
            left.add_scaled(&cup(&f2, &g).unwrap(), &int(c)).unwrap();
            prop_assert_eq!(cup(&fs, &g).unwrap(), left);
            let mut right = cup(&f, &g).unwrap();
            right.add_scaled(&cup(&f, &g2).unwrap(), &int(c)).unwrap();
            prop_assert_eq!(cup(&f, &gs).unwrap(), right);

            let z = Chain::random(&ctx, q, 1, seed + 4).unwrap();
            let z2 = Chain::random(&ctx, q, 1, seed + 5).unwrap();
            let mut zs = z.clone();
            zs.add_scaled(&z2, &int(c)).unwrap();
            let mut expected = cap_left(&f, &z).unwrap();
            expected.add_scaled(&cap_left(&f2, &z).unwrap(), &int(c)).unwrap();
            prop_assert_eq!(cap_left(&fs, &z).unwrap(), expected);
            let mut expected = cap_left(&f, &z).unwrap();
            expected.add_scaled(&cap_left(&f, &z2).unwrap(), &int(c)).unwrap();
            prop_assert_eq!(cap_left(&f, &zs).unwrap(), expected);
            let mut expected = cap_right(&z, &f).unwrap();
            expected.add_scaled(&cap_right(&z, &f2).unwrap(), &int(c)).unwrap();
            prop_assert_eq!(cap_right(&z, &fs).unwrap(), expected);
            let mut expected = cap_right(&z, &f).unwrap();
            expected.add_scaled(&cap_right(&z2, &f).unwrap(), &int(c)).unwrap();
            prop_assert_eq!(cap_right(&zs, &f).unwrap(), expected);
        }
    }
}
