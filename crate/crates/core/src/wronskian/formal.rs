//! Wronskians of `t^{α_1}Y_1, …, t^{α_d}Y_d` over distinct formal variables,
//! their rewriting into the triangular family `α_i ≤ i-1`, and the wedge
//! identities behind that rewriting.
//!
//! `Y_{j+1}` is represented by `X_j` with ambient `N = d-1`.

use std::collections::BTreeMap;

use super::{build_wronskian, compositions, WronskSpec, WronskianError};
use crate::dpoly::DiffPoly;
use crate::exact::{det, int, Rational, Ring, SparseMatrix};

fn check_alpha(alpha: &[usize]) -> Result<usize, WronskianError> {
    let d = alpha.len();
    if d == 0 {
        return Err(WronskianError::EmptySpec);
    }
    if let Some(&value) = alpha.iter().find(|&&a| a >= d) {
        return Err(WronskianError::AlphaOutOfRange { value, max: d - 1 });
    }
    Ok(d)
}

/// `Wronsk(t^{α_1}Y_1, …, t^{α_d}Y_d)`.
pub fn build_formal_wronskian(alpha: &[usize]) -> Result<DiffPoly, WronskianError> {
    let d = check_alpha(alpha)?;
    let cols: Vec<(usize, usize)> = alpha.iter().enumerate().map(|(j, &a)| (a, j)).collect();
    build_wronskian(&WronskSpec::monomial(&cols), d - 1)
}

/// `α_i ≤ i-1` for every (1-based) `i`.
pub fn is_triangular(alpha: &[usize]) -> bool {
    alpha.iter().enumerate().all(|(i, &a)| a <= i)
}

/// Writes `P_α` as a combination of triangular `P_β`.
///
/// At the first position `i` (1-based) with `α_i ≥ i`, the identity
/// `Σ_{|γ|=i} P_{α_1..α_{i-1}, s+γ} = 0` with `s = (α_i - i, α_{i+1}, …, α_d)`
/// expresses `P_α` through indices that agree with `α` before position `i` and
/// are smaller at position `i`. Entries `≥ d` give zero polynomials and are
/// dropped. Every step lowers the index lexicographically, so processing the
/// largest pending index first terminates.
pub fn reduce_to_triangular(alpha: &[usize]) -> Result<Vec<(Rational, Vec<usize>)>, WronskianError> {
    let d = check_alpha(alpha)?;
    let mut pending: BTreeMap<Vec<usize>, Rational> = BTreeMap::new();
    let mut done: BTreeMap<Vec<usize>, Rational> = BTreeMap::new();
    pending.insert(alpha.to_vec(), int(1));
    while let Some((a, c)) = pending.pop_last() {
        if Ring::is_zero(&c) {
            continue;
        }
        let Some(pos) = (0..d).find(|&p| a[p] > p) else {
            let e = done.entry(a).or_insert_with(|| int(0));
            *e += c;
            continue;
        };
        let i = pos + 1;
        let tail = d - pos;
        let mut shift: Vec<usize> = a[pos..].to_vec();
        shift[0] -= i;
        for gamma in compositions(i, tail) {
            if gamma[0] == i {
                continue;
            }
            let mut b = a[..pos].to_vec();
            b.extend(shift.iter().zip(&gamma).map(|(s, g)| s + g));
            if b.iter().any(|&x| x >= d) {
                continue;
            }
            let e = pending.entry(b).or_insert_with(|| int(0));
            *e -= &c;
        }
    }
    Ok(done.into_iter().filter(|(_, c)| !Ring::is_zero(c)).map(|(a, c)| (c, a)).collect())
}

/// `Σ c·P_α` over a combination of formal indices.
pub fn expand_combination(combo: &[(Rational, Vec<usize>)]) -> Result<DiffPoly, WronskianError> {
    let mut acc: Option<DiffPoly> = None;
    for (c, a) in combo {
        let term = build_formal_wronskian(a)?.scale(c);
        acc = Some(match acc {
            Some(p) => p + term,
            None => term,
        });
    }
    Ok(acc.unwrap_or_else(|| DiffPoly::zero(0)))
}

/// The `d×d` matrix with `N e_i = i·e_{i+1}` (1-based), `N e_d = 0`.
pub fn nilpotent_shift(d: usize) -> Vec<Vec<Rational>> {
    let mut m = vec![vec![int(0); d]; d];
    for c in 0..d.saturating_sub(1) {
        m[c + 1][c] = int(c as i64 + 1);
    }
    m
}

fn mat_vec(m: &[Vec<Rational>], v: &[Rational]) -> Vec<Rational> {
    m.iter()
        .map(|row| row.iter().zip(v).fold(int(0), |acc, (a, b)| acc + a * b))
        .collect()
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(n, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, k, 0, &mut Vec::new(), &mut out);
    out
}

/// Checks `Σ_{|α|=i} N^{α_1}v_1 ∧ … ∧ N^{α_m}v_m = 0` (`m = d-i+1`) by computing
/// every Plücker coordinate of the sum.
pub fn verify_wedge_identity(
    nilpotent: &[Vec<Rational>],
    vectors: &[Vec<Rational>],
    i: usize,
) -> Result<bool, WronskianError> {
    let d = nilpotent.len();
    if nilpotent.iter().any(|r| r.len() != d) {
        return Err(WronskianError::Dimension("matrix must be square".into()));
    }
    if i > d {
        return Err(WronskianError::Dimension(format!("i = {i} exceeds d = {d}")));
    }
    let m = d + 1 - i;
    if vectors.len() != m {
        return Err(WronskianError::Dimension(format!(
            "expected {m} vectors, got {}",
            vectors.len()
        )));
    }
    if vectors.iter().any(|v| v.len() != d) {
        return Err(WronskianError::Dimension(format!("vectors must have length {d}")));
    }
    // powers[j][a] = N^a v_j
    let mut powers: Vec<Vec<Vec<Rational>>> = Vec::with_capacity(m);
    for v in vectors {
        let mut list = vec![v.clone()];
        for _ in 0..d {
            let next = mat_vec(nilpotent, list.last().unwrap());
            list.push(next);
        }
        if list[d].iter().any(|x| !Ring::is_zero(x)) {
            return Err(WronskianError::NotNilpotent(d));
        }
        powers.push(list);
    }
    // N^d = 0 must hold on the whole space, not just on the given vectors
    let mut p = nilpotent.to_vec();
    for _ in 1..d {
        p = p
            .iter()
            .map(|row| {
                (0..d)
                    .map(|c| (0..d).fold(int(0), |acc, k| acc + &row[k] * &nilpotent[k][c]))
                    .collect()
            })
            .collect();
    }
    if d > 0 && p.iter().flatten().any(|x| !Ring::is_zero(x)) {
        return Err(WronskianError::NotNilpotent(d));
    }
    if m > d {
        return Ok(true);
    }
    let alphas = compositions(i, m);
    for rows in subsets(d, m) {
        let mut total = int(0);
        for alpha in &alphas {
            if alpha.iter().any(|&a| a >= d) {
                continue;
            }
            let mut minor = SparseMatrix::new(m, m);
            for (j, &a) in alpha.iter().enumerate() {
                for (r, &row) in rows.iter().enumerate() {
                    minor.set(r, j, powers[j][a][row].clone());
                }
            }
            total += det(&minor).expect("square minor");
        }
        if !Ring::is_zero(&total) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dpoly::parse;

    #[test]
    fn formal_examples() {
        assert_eq!(build_formal_wronskian(&[0]).unwrap(), DiffPoly::var(0, 0, 0));
        let w = parse("x0*x1[1] - x1*x0[1]", 1).unwrap();
        assert_eq!(build_formal_wronskian(&[0, 0]).unwrap(), w);
        // W(tY_1, tY_2) = t^2 W(Y_1, Y_2) vanishes at t = 0
        assert!(build_formal_wronskian(&[1, 1]).unwrap().is_zero());
        assert!(reduce_to_triangular(&[1, 1]).unwrap().is_empty());
        assert!(matches!(
            build_formal_wronskian(&[0, 2]),
            Err(WronskianError::AlphaOutOfRange { value: 2, max: 1 })
        ));
    }

    #[test]
    fn reduction_examples() {
        assert_eq!(reduce_to_triangular(&[0, 1]).unwrap(), vec![(int(1), vec![0, 1])]);
        assert_eq!(reduce_to_triangular(&[1, 0]).unwrap(), vec![(int(-1), vec![0, 1])]);
        let combo = reduce_to_triangular(&[1, 1]).unwrap();
        assert!(combo.iter().all(|(_, a)| is_triangular(a)));
        assert_eq!(
            expand_combination(&combo).unwrap(),
            build_formal_wronskian(&[1, 1]).unwrap()
        );
    }

    #[test]
    fn reduction_is_exact_for_d3() {
        for code in 0..27 {
            let a = vec![code % 3, (code / 3) % 3, code / 9];
            let combo = reduce_to_triangular(&a).unwrap();
            assert!(combo.iter().all(|(_, b)| is_triangular(b)));
            let lhs = build_formal_wronskian(&a).unwrap();
            assert_eq!(expand_combination(&combo).unwrap().with_ambient(2), lhs, "alpha {a:?}");
        }
    }

    #[test]
    fn nilpotent_shift_matches_definition() {
        let n = nilpotent_shift(3);
        assert_eq!(n[1][0], int(1));
        assert_eq!(n[2][1], int(2));
        assert_eq!(n.iter().flatten().filter(|x| !Ring::is_zero(*x)).count(), 2);
    }

    #[test]
    fn wedge_identity_on_basis_vectors() {
        let d = 3;
        let n = nilpotent_shift(d);
        let e = |k: usize| (0..d).map(|j| int((j == k) as i64)).collect::<Vec<_>>();
        for i in 1..=d {
            let m = d + 1 - i;
            for code in 0..d.pow(m as u32) {
                let vs: Vec<_> = (0..m).map(|j| e((code / d.pow(j as u32)) % d)).collect();
                assert!(verify_wedge_identity(&n, &vs, i).unwrap());
            }
        }
        let vs: Vec<_> = (0..=d).map(|k| e(k % d)).collect();
        assert!(verify_wedge_identity(&n, &vs, 0).unwrap());
    }

    #[test]
    fn wedge_rejects_non_nilpotent() {
        let id = vec![vec![int(1), int(0)], vec![int(0), int(1)]];
        let vs = vec![vec![int(1), int(0)], vec![int(0), int(1)]];
        assert_eq!(verify_wedge_identity(&id, &vs, 1), Err(WronskianError::NotNilpotent(2)));
    }
}
