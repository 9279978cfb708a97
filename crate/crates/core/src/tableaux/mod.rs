//! Partitions, Young tableaux and their counts.
//!
//! Standard tableaux are filled with `1..=d`; tableaux indexing products of
//! minors are filled with `0..=k`. Both use the same [`Tableau`] type.

mod group;

pub use group::{
    all_permutations, column_antisymmetrizer, row_symmetrizer, young_symmetrizer, GroupAlgebraElem,
    Permutation,
};

use std::fmt;

use thiserror::Error;

use crate::exact::{int, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TableauxError {
    #[error("parts must be positive and weakly decreasing: {0:?}")]
    InvalidPartition(Vec<usize>),
    #[error("filling has {got} entries, shape has {expected} cells")]
    ShapeMismatch { expected: usize, got: usize },
    #[error("tableau is not standard")]
    NotStandard,
    #[error("size mismatch: expected {expected}, got {got}")]
    SizeMismatch { expected: usize, got: usize },
    #[error("not a permutation of 1..{0}")]
    NotPermutation(usize),
}

/// A partition `λ_1 ≥ λ_2 ≥ … > 0`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self, TableauxError> {
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(TableauxError::InvalidPartition(parts));
        }
        Ok(Partition { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of rows.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.parts.first().copied().unwrap_or(0);
        Partition {
            parts: (0..width)
                .map(|c| self.parts.iter().filter(|&&p| p > c).count())
                .collect(),
        }
    }

    /// Cells `(row, col)` in row-major order.
    pub fn cells(&self) -> Vec<(usize, usize)> {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(r, &len)| (0..len).map(move |c| (r, c)))
            .collect()
    }

    /// Product of hook lengths; `d!/hooks` is `f_λ`.
    pub fn hook_product(&self) -> u128 {
        let conj = self.conjugate();
        self.cells()
            .iter()
            .map(|&(r, c)| (self.parts[r] - c + conj.parts[c] - r - 1) as u128)
            .product()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(usize::to_string).collect();
        write!(f, "({})", s.join(","))
    }
}

/// Partitions of `d` in reverse lexicographic order, optionally with at most `max_parts` rows.
pub fn partitions_of(d: usize, max_parts: Option<usize>) -> Vec<Partition> {
    fn rec(rest: usize, max: usize, rows_left: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        if rows_left == 0 {
            return;
        }
        for p in (1..=max.min(rest)).rev() {
            cur.push(p);
            rec(rest - p, p, rows_left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(d, d, max_parts.unwrap_or(d.max(1)), &mut Vec::new(), &mut out);
    out
}

/// A filling of a Young diagram, stored row by row.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Tableau {
    shape: Partition,
    filling: Vec<usize>,
}

impl Tableau {
    pub fn new(shape: Partition, filling: Vec<usize>) -> Result<Self, TableauxError> {
        if filling.len() != shape.size() {
            return Err(TableauxError::ShapeMismatch {
                expected: shape.size(),
                got: filling.len(),
            });
        }
        Ok(Tableau { shape, filling })
    }

    /// From explicit rows, which must have weakly decreasing lengths.
    pub fn from_rows(rows: &[Vec<usize>]) -> Result<Self, TableauxError> {
        let shape = Partition::new(rows.iter().map(Vec::len).collect())?;
        Tableau::new(shape, rows.concat())
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    /// Row-major reading.
    pub fn filling(&self) -> &[usize] {
        &self.filling
    }

    pub fn rows(&self) -> Vec<&[usize]> {
        let mut out = Vec::with_capacity(self.shape.len());
        let mut pos = 0;
        for &len in self.shape.parts() {
            out.push(&self.filling[pos..pos + len]);
            pos += len;
        }
        out
    }

    /// Columns, each read top to bottom.
    pub fn columns(&self) -> Vec<Vec<usize>> {
        let rows = self.rows();
        let width = self.shape.parts().first().copied().unwrap_or(0);
        (0..width)
            .map(|c| rows.iter().filter(|r| r.len() > c).map(|r| r[c]).collect())
            .collect()
    }

    /// Rows weakly increase, columns strictly increase.
    pub fn is_semistandard(&self) -> bool {
        self.rows().iter().all(|r| r.windows(2).all(|w| w[0] <= w[1]))
            && self.columns().iter().all(|c| c.windows(2).all(|w| w[0] < w[1]))
    }

    /// Semistandard and a bijective filling with `1..=d`.
    pub fn is_standard(&self) -> bool {
        let mut seen = self.filling.clone();
        seen.sort_unstable();
        seen.iter().enumerate().all(|(i, &v)| v == i + 1) && self.is_semistandard()
    }

    /// The same shape with every entry `v` replaced by `f(v)`.
    pub fn relabel<F: Fn(usize) -> usize>(&self, f: F) -> Tableau {
        Tableau {
            shape: self.shape.clone(),
            filling: self.filling.iter().map(|&v| f(v)).collect(),
        }
    }
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows()
            .iter()
            .map(|r| r.iter().map(usize::to_string).collect::<Vec<_>>().join(" "))
            .collect();
        write!(f, "[{}]", rows.join(" / "))
    }
}

/// Row-consecutive standard filling: first row `1..=λ_1`, and so on.
pub fn canonical_tableau(shape: &Partition) -> Tableau {
    Tableau {
        shape: shape.clone(),
        filling: (1..=shape.size()).collect(),
    }
}

/// Semistandard tableaux of the given shape with entries in `lo..=hi`,
/// in lexicographic order of their row-major reading.
pub fn semistandard_tableaux(shape: &Partition, lo: usize, hi: usize) -> Vec<Tableau> {
    let cells = shape.cells();
    let mut out = Vec::new();
    if lo > hi && !cells.is_empty() {
        return out;
    }
    let mut fill = vec![0usize; cells.len()];
    // row-major index of the first cell of each row
    let offsets: Vec<usize> = shape
        .parts()
        .iter()
        .scan(0, |acc, &w| {
            let o = *acc;
            *acc += w;
            Some(o)
        })
        .collect();
    #[allow(clippy::too_many_arguments)]
    fn rec(
        pos: usize,
        cells: &[(usize, usize)],
        offsets: &[usize],
        lo: usize,
        hi: usize,
        fill: &mut Vec<usize>,
        shape: &Partition,
        out: &mut Vec<Tableau>,
    ) {
        if pos == cells.len() {
            out.push(Tableau {
                shape: shape.clone(),
                filling: fill.clone(),
            });
            return;
        }
        let (r, c) = cells[pos];
        let mut min = lo;
        if c > 0 {
            min = min.max(fill[pos - 1]);
        }
        if r > 0 {
            min = min.max(fill[offsets[r - 1] + c] + 1);
        }
        for v in min..=hi {
            fill[pos] = v;
            rec(pos + 1, cells, offsets, lo, hi, fill, shape, out);
        }
    }
    rec(0, &cells, &offsets, lo, hi, &mut fill, shape, &mut out);
    out
}

/// Standard tableaux of the given shape.
pub fn standard_tableaux(shape: &Partition) -> Vec<Tableau> {
    let d = shape.size();
    let cells = shape.cells();
    let mut out = Vec::new();
    // place 1..=d one at a time on an outer corner of the growing diagram
    fn rec(next: usize, d: usize, rows: &mut Vec<usize>, shape: &Partition, placed: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
        if next > d {
            out.push(placed.clone());
            return;
        }
        for r in 0..shape.len() {
            let c = rows[r];
            if c < shape.parts()[r] && (r == 0 || rows[r - 1] > c) {
                rows[r] += 1;
                placed.push((r, c));
                rec(next + 1, d, rows, shape, placed, out);
                placed.pop();
                rows[r] -= 1;
            }
        }
    }
    let mut placements = Vec::new();
    rec(1, d, &mut vec![0; shape.len()], shape, &mut Vec::new(), &mut placements);
    for placed in placements {
        let mut filling = vec![0; d];
        for (value, cell) in placed.iter().enumerate() {
            let idx = cells.iter().position(|c| c == cell).unwrap();
            filling[idx] = value + 1;
        }
        out.push(Tableau {
            shape: shape.clone(),
            filling,
        });
    }
    out.sort();
    out
}

/// `f_λ`, by enumeration.
pub fn count_standard(shape: &Partition) -> usize {
    standard_tableaux(shape).len()
}

/// `d_λ(n)`: semistandard tableaux with entries in `1..=n`, by enumeration.
pub fn count_semistandard(shape: &Partition, n: usize) -> usize {
    if n == 0 {
        return usize::from(shape.is_empty());
    }
    semistandard_tableaux(shape, 1, n).len()
}

/// `K_{λ,a}`: semistandard tableaux with `a_1` ones, `a_2` twos, and so on.
pub fn kostka(shape: &Partition, content: &[usize]) -> Result<usize, TableauxError> {
    let total: usize = content.iter().sum();
    if total != shape.size() {
        return Err(TableauxError::SizeMismatch {
            expected: shape.size(),
            got: total,
        });
    }
    if content.is_empty() {
        return Ok(usize::from(shape.is_empty()));
    }
    Ok(semistandard_tableaux(shape, 1, content.len())
        .into_iter()
        .filter(|t| {
            let mut c = vec![0; content.len()];
            for &v in t.filling() {
                c[v - 1] += 1;
            }
            c == content
        })
        .count())
}

/// `s_λ(x)`: the sum over semistandard tableaux with entries in `1..=len(x)`
/// of `Π x_{T(cell)}`.
pub fn schur_poly_eval(shape: &Partition, x: &[Rational]) -> Rational {
    if x.is_empty() {
        return int(i64::from(shape.is_empty()));
    }
    semistandard_tableaux(shape, 1, x.len())
        .iter()
        .map(|t| t.filling().iter().fold(int(1), |acc, &v| acc * &x[v - 1]))
        .fold(int(0), |acc, v| acc + v)
}

/// All contents `a ∈ ℕ^n` with `|a| = d`, in lexicographic order.
pub fn contents(d: usize, n: usize) -> Vec<Vec<usize>> {
    crate::wronskian::compositions(d, n)
}
