//! Cross-checks of computed values against independently derived ones.

use diffhom::dpoly::{span_rank, DiffPoly};
use diffhom::exact::{binomial, factorial, int, Rational};
use diffhom::hwv::{hwv_basis, kernel_dim_full};
use diffhom::tableaux::{contents, count_semistandard, count_standard, kostka, partitions_of, schur_poly_eval};
use diffhom::wronskian::enumerate_canonical_basis;

fn to_usize(r: Rational) -> usize {
    r.to_integer().try_into().unwrap()
}

#[test]
fn hook_length_formula_matches_enumeration() {
    for d in 1..=7 {
        for lambda in partitions_of(d, None) {
            let hook = factorial(d as u64) / num_bigint::BigInt::from(lambda.hook_product());
            assert_eq!(hook, count_standard(&lambda).into(), "{lambda}");
        }
    }
}

#[test]
fn kostka_sums_give_schur_dimensions() {
    // Σ_{|a| = d, a ∈ ℕ^{k+1}} K_{λ,a} = d_λ(k+1)
    for d in 1..=4 {
        for k in 0..=3 {
            for lambda in partitions_of(d, None) {
                let total: usize = contents(d, k + 1).iter().map(|a| kostka(&lambda, a).unwrap()).sum();
                assert_eq!(total, count_semistandard(&lambda, k + 1), "{lambda} k={k}");
                let ones = vec![int(1); k + 1];
                assert_eq!(to_usize(schur_poly_eval(&lambda, &ones)), total);
            }
        }
    }
}

#[test]
fn highest_weight_counts_fill_the_jet_space() {
    // Σ_λ d_λ(k+1)·d_λ(N+1) = dim Sym^d(ℚ^{(N+1)(k+1)})
    for d in 1..=4 {
        for n in 0..=3 {
            for k in 0..=3 {
                let total: usize = partitions_of(d, None)
                    .iter()
                    .map(|l| hwv_basis(l, k, n).len() * count_semistandard(l, n + 1))
                    .sum();
                let dim = to_usize(binomial(((n + 1) * (k + 1) + d - 1) as u64, d as u64));
                assert_eq!(total, dim, "d={d} N={n} k={k}");
            }
        }
    }
}

#[test]
fn two_factor_kernel_by_hand() {
    // on F⊗F the kernel of J^{(1)}, J^{(2)} is spanned by e_0⊗e_0 and e_0⊗e_1 - e_1⊗e_0
    for k in 1..=4 {
        assert_eq!(kernel_dim_full(2, k), 2);
    }
    assert_eq!(kernel_dim_full(2, 0), 1);
}

#[test]
fn single_variable_basis_is_a_power() {
    for d in 1..=5 {
        let b = enumerate_canonical_basis(0, d).unwrap();
        assert_eq!(b.len(), 1);
        assert!(!b[0].poly.is_zero());
        assert_eq!(span_rank(&[b[0].poly.clone(), DiffPoly::var(0, 0, 0).pow(d as u32)]), 1);
    }
}

#[test]
fn linear_basis_is_the_variables() {
    let b = enumerate_canonical_basis(2, 1).unwrap();
    let polys: Vec<DiffPoly> = b.into_iter().map(|e| e.poly).collect();
    let vars: Vec<DiffPoly> = (0..3).map(|i| DiffPoly::var(2, i, 0)).collect();
    assert_eq!(span_rank(&polys), 3);
    let mut all = polys;
    all.extend(vars);
    assert_eq!(span_rank(&all), 3);
}
