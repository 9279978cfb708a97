use proptest::prelude::*;

use diffhom::dpoly::{is_diff_homogeneous, matrix_action, parse, DiffPoly};
use diffhom::exact::{det, det_by_minors, int, nullspace_basis, rank, rat, ParamPoly, Rational, SparseMatrix};
use diffhom::hwv::{j_ell, symmetrizer_projection, tensor_sigma_action, Tensor};
use diffhom::tableaux::{partitions_of, GroupAlgebraElem, Permutation};
use diffhom::wronskian::enumerate_canonical_basis;

fn rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(p, q)| rat(p, q))
}

/// Random differential polynomials in `x0..x2` with orders up to 3.
fn diff_poly() -> impl Strategy<Value = DiffPoly> {
    let factor = (0usize..3, 0u32..4, 1u32..3);
    let term = (rational(), prop::collection::vec(factor, 0..4));
    prop::collection::vec(term, 0..5).prop_map(|terms| {
        let mut acc = DiffPoly::zero(2);
        for (c, factors) in terms {
            let mut t = DiffPoly::constant(2, c);
            for (v, k, e) in factors {
                t = &t * &DiffPoly::var(2, v, k).pow(e);
            }
            acc = acc + t;
        }
        acc
    })
}

fn dense(rows: usize, cols: usize) -> impl Strategy<Value = Vec<Vec<Rational>>> {
    prop::collection::vec(prop::collection::vec(rational(), cols), rows)
}

fn permutation(d: usize) -> impl Strategy<Value = Permutation> {
    Just((1..=d).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::new(v).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn text_roundtrip(p in diff_poly()) {
        let printed = p.to_string();
        prop_assert_eq!(parse(&printed, 2).unwrap(), p.clone());
        prop_assert_eq!(DiffPoly::from_json(&p.to_json().unwrap()).unwrap(), p);
    }

    #[test]
    fn ring_laws(a in diff_poly(), b in diff_poly(), c in diff_poly()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn rank_plus_nullity(rows in 1usize..5, cols in 1usize..6, seed in dense(5, 6)) {
        let m: Vec<Vec<Rational>> = seed.into_iter().take(rows).map(|r| r.into_iter().take(cols).collect()).collect();
        let sm = SparseMatrix::from_dense(m);
        let kernel = nullspace_basis(&sm);
        prop_assert_eq!(rank(&sm) + kernel.len(), cols);
        for v in &kernel {
            prop_assert!(sm.mul_vec(v).iter().all(|x| *x == int(0)));
        }
    }

    #[test]
    fn determinant_algorithms_agree(m in dense(4, 4)) {
        let sm = SparseMatrix::from_dense(m.clone());
        prop_assert_eq!(det(&sm).unwrap(), det_by_minors(&sm).unwrap());
        let mut twin = m;
        twin[3] = twin[1].clone();
        prop_assert_eq!(det(&SparseMatrix::from_dense(twin)).unwrap(), int(0));
    }

    #[test]
    fn gradings_survive_constant_matrices(p in diff_poly(), m in dense(3, 3)) {
        let mut a = SparseMatrix::new(3, 3);
        for (i, row) in m.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                a.set(i, j, ParamPoly::rational(v.clone()));
            }
        }
        let image = matrix_action(&a, &p).unwrap();
        if !image.is_zero() {
            let (g, h) = (p.gradings().unwrap(), image.gradings().unwrap());
            if g.degree.is_some() {
                prop_assert_eq!(g.degree, h.degree);
            }
            if g.weight.is_some() {
                prop_assert_eq!(g.weight, h.weight);
            }
            prop_assert!(h.order <= g.order);
        }
    }

    #[test]
    fn group_algebra_is_associative(
        xs in prop::collection::vec((permutation(4), rational()), 1..4),
        ys in prop::collection::vec((permutation(4), rational()), 1..4),
        zs in prop::collection::vec((permutation(4), rational()), 1..4),
    ) {
        let build = |v: &[(Permutation, Rational)]| {
            let mut e = GroupAlgebraElem::zero(4);
            for (p, c) in v {
                e.add_term(p.clone(), c.clone());
            }
            e
        };
        let (x, y, z) = (build(&xs), build(&ys), build(&zs));
        prop_assert_eq!(x.mul(&y).unwrap().mul(&z).unwrap(), x.mul(&y.mul(&z).unwrap()).unwrap());
    }

    #[test]
    fn right_action_is_an_action(index in prop::collection::vec(0usize..3, 4), s in permutation(4), t in permutation(4)) {
        let v = Tensor::basis(2, index).unwrap();
        let lhs = tensor_sigma_action(&tensor_sigma_action(&v, &s).unwrap(), &t).unwrap();
        prop_assert_eq!(lhs, tensor_sigma_action(&v, &s.compose(&t)).unwrap());
    }

    #[test]
    fn j_is_equivariant(index in prop::collection::vec(0usize..4, 4), s in permutation(4), ell in 1usize..=4) {
        let v = Tensor::basis(3, index).unwrap();
        let lhs = j_ell(&tensor_sigma_action(&v, &s).unwrap(), ell).unwrap();
        let rhs = tensor_sigma_action(&j_ell(&v, ell).unwrap(), &s).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn symmetrizer_commutes_with_j(index in prop::collection::vec(0usize..3, 3), ell in 1usize..=3, which in 0usize..3) {
        let lambda = &partitions_of(3, None)[which];
        let v = Tensor::basis(2, index).unwrap();
        let lhs = j_ell(&symmetrizer_projection(&v, lambda).unwrap(), ell).unwrap();
        let rhs = symmetrizer_projection(&j_ell(&v, ell).unwrap(), lambda).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn basis_enumeration_is_deterministic() {
    let first = enumerate_canonical_basis(2, 3).unwrap();
    for _ in 0..3 {
        assert_eq!(enumerate_canonical_basis(2, 3).unwrap(), first);
    }
}

#[test]
fn non_homogeneous_polynomials_are_rejected() {
    for text in ["x0[1]", "x0 + x1^2", "x0*x1[2]", "x0[1]^2"] {
        let p = parse(text, 1).unwrap();
        assert!(!is_diff_homogeneous(&p).unwrap().homogeneous, "{text}");
    }
}
