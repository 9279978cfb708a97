//! Dimensions of `∩_ℓ Ker J^{(ℓ)}` on `E = (ℚ^{k+1})^{⊗d}` and on the
//! isotypic pieces `E·c_T`.

use rayon::prelude::*;

use super::tensor::{basis_indices, j_ell, tensor_algebra_action, Tensor};
use super::HwvError;
use crate::exact::{nullspace_basis, rank, Rational, SparseMatrix, SparseVec};
use crate::tableaux::{canonical_tableau, young_symmetrizer, Partition, Tableau};

/// The operators `J^{(1)}, …, J^{(d)}` stacked into one matrix whose columns
/// are indexed by the basis of `E`.
pub fn j_operator_matrix(d: usize, k: usize) -> SparseMatrix<Rational> {
    let size = (k + 1).pow(d as u32);
    let columns: Vec<Vec<(usize, Rational)>> = basis_indices(d, k)
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|index| {
            let t = Tensor::basis(k, index).expect("index in range");
            let mut col = Vec::new();
            for ell in 1..=d {
                let img = j_ell(&t, ell).expect("ell in range");
                for (row, c) in img.coordinates() {
                    col.push(((ell - 1) * size + row, c));
                }
            }
            col
        })
        .collect();
    let mut m = SparseMatrix::new(d * size, size);
    for (c, col) in columns.into_iter().enumerate() {
        for (r, v) in col {
            m.set(r, c, v);
        }
    }
    m
}

/// A basis of `∩_{1≤ℓ≤d} Ker J^{(ℓ)}`, as coordinate vectors.
pub fn kernel_basis_full(d: usize, k: usize) -> Vec<Vec<Rational>> {
    nullspace_basis(&j_operator_matrix(d, k))
}

pub fn kernel_dim_full(d: usize, k: usize) -> usize {
    kernel_basis_full(d, k).len()
}

/// Spanning vectors `e_b·c_T` of the image of right multiplication by `c_T`.
pub fn symmetrizer_image(t: &Tableau, k: usize) -> Result<Vec<SparseVec>, HwvError> {
    let c = young_symmetrizer(t)?;
    let d = t.filling().len();
    basis_indices(d, k)
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|index| {
            let b = Tensor::basis(k, index)?;
            Ok(tensor_algebra_action(&b, &c)?.coordinates())
        })
        .collect()
}

fn dense_to_sparse(v: &[Rational]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !crate::exact::Ring::is_zero(*x))
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

/// `dim(∩_ℓ Ker J^{(ℓ)} ∩ E·c_T)` for a standard tableau `T`, as
/// `dim K + dim Im − dim(K + Im)`.
pub fn kernel_dim_for_tableau(t: &Tableau, k: usize) -> Result<usize, HwvError> {
    let d = t.filling().len();
    let size = (k + 1).pow(d as u32);
    let kernel: Vec<SparseVec> = kernel_basis_full(d, k).iter().map(|v| dense_to_sparse(v)).collect();
    let image = symmetrizer_image(t, k)?;
    let dim_k = kernel.len();
    let dim_im = rank(&SparseMatrix::from_rows(image.clone(), size));
    let mut both = kernel;
    both.extend(image);
    let dim_sum = rank(&SparseMatrix::from_rows(both, size));
    Ok(dim_k + dim_im - dim_sum)
}

/// [`kernel_dim_for_tableau`] at the canonical tableau of `λ`.
pub fn kernel_dim_isotypic(shape: &Partition, k: usize) -> Result<usize, HwvError> {
    kernel_dim_for_tableau(&canonical_tableau(shape), k)
}

/// `dim E·c_λ`.
pub fn symmetrizer_image_dim(shape: &Partition, k: usize) -> Result<usize, HwvError> {
    let t = canonical_tableau(shape);
    let size = (k + 1).pow(shape.size() as u32);
    Ok(rank(&SparseMatrix::from_rows(symmetrizer_image(&t, k)?, size)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tableaux::{count_semistandard, count_standard, partitions_of, standard_tableaux};

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn full_kernel_examples() {
        for k in 0..4 {
            assert_eq!(kernel_dim_full(1, k), 1);
        }
        assert_eq!(kernel_dim_full(2, 1), 2);
        assert_eq!(kernel_dim_full(3, 2), 6);
        // J^{(1)} alone on F⊗F, k = 1: kernel spanned by (0,0) and (0,1)-(1,0)
        assert_eq!(kernel_dim_full(2, 0), 1);
    }

    #[test]
    fn isotypic_examples() {
        assert_eq!(kernel_dim_isotypic(&p(&[1]), 0).unwrap(), 1);
        assert_eq!(kernel_dim_isotypic(&p(&[2]), 1).unwrap(), 1);
        assert_eq!(kernel_dim_isotypic(&p(&[1, 1]), 1).unwrap(), 1);
        assert_eq!(kernel_dim_isotypic(&p(&[2, 1]), 2).unwrap(), 2);
    }

    #[test]
    fn isotypic_kernels_match_standard_counts_d3() {
        let d = 3;
        for lambda in partitions_of(d, None) {
            let f = count_standard(&lambda);
            for t in standard_tableaux(&lambda) {
                assert_eq!(kernel_dim_for_tableau(&t, d - 1).unwrap(), f, "{t}");
            }
        }
    }

    #[test]
    fn image_dimension_is_schur_dimension() {
        for d in 1..=3 {
            for lambda in partitions_of(d, None) {
                for k in 0..3 {
                    assert_eq!(
                        symmetrizer_image_dim(&lambda, k).unwrap(),
                        count_semistandard(&lambda, k + 1),
                        "{lambda} k={k}"
                    );
                }
            }
        }
    }
}
