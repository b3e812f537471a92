//! Standard Young tableaux, their enumeration and statistics, the exact
//! tableau mass formula for the lattice growth process, Kostka-Foulkes
//! polynomials, and the RSK correspondence.
//!
//! A standard Young tableau of shape lambda with n boxes fills the diagram
//! with 1..n increasing along rows and down columns. Its major index is the
//! sum of all i such that i + 1 sits in a strictly lower row than i. The
//! major index of a permutation is the sum of its descent positions, and
//! under RSK maj(pi) equals maj of the recording tableau.
//!
//! The Kostka-Foulkes polynomial used here is
//! K_lambda(q) = q^(n(lambda)) [n]! / prod_s [h(s)], where [m] denotes
//! 1 + q + ... + q^(m-1); it equals the generating function of maj over
//! the standard tableaux of shape lambda.
//!
//! For the lattice growth chain with parameters (u, q), the chance that the
//! first N growth intervals produce exactly the creation order T is
//!
//!   P^N(T) = u^|T| / |GL(lambda'_1, q)|
//!            * prod_{r=1}^N (1 - u/q^r)(1 - 1/q^r)
//!              / prod_{r=1}^{N - lambda'_1} (1 - 1/q^r)
//!            * prod_{cells (i,j), j >= 2}
//!                (q^(1-i) - q^(-A(i,j))) / (q^(B(i,j)) - 1)
//!
//! and 0 when the shape has more than N rows, where A(i,j) counts the
//! entries of column j - 1 smaller than the entry at (i, j) and B(i,j)
//! counts the entries of column 1 smaller than it.

use crate::error::{Error, Result};
use crate::gl::gl_order_rat;
use crate::measures::JPolynomial;
use crate::partition::{Cell, PartitionShape};
use crate::qseries::{rat_pow, Rational};
use num::{BigInt, One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// Hard cap on tableau enumeration size.
pub const SYT_ENUMERATION_CAP: usize = 12;

/// A standard Young tableau stored by rows.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<usize>>", into = "Vec<Vec<usize>>")]
pub struct StandardTableau {
    rows: Vec<Vec<usize>>,
}

impl StandardTableau {
    /// Builds a tableau from rows, validating the standard conditions.
    pub fn from_rows(rows: Vec<Vec<usize>>) -> Result<Self> {
        let lens: Vec<usize> = rows.iter().map(|r| r.len()).collect();
        if lens.contains(&0) {
            return Err(Error::InvalidTableau("empty row".into()));
        }
        for w in lens.windows(2) {
            if w[0] < w[1] {
                return Err(Error::InvalidTableau(
                    "row lengths must weakly decrease".into(),
                ));
            }
        }
        let n: usize = lens.iter().sum();
        let mut seen = vec![false; n + 1];
        for row in &rows {
            for &e in row {
                if e == 0 || e > n || seen[e] {
                    return Err(Error::InvalidTableau(format!(
                        "entries must be a permutation of 1..{}",
                        n
                    )));
                }
                seen[e] = true;
            }
        }
        for row in &rows {
            for w in row.windows(2) {
                if w[0] >= w[1] {
                    return Err(Error::InvalidTableau("rows must increase".into()));
                }
            }
        }
        for pair in rows.windows(2) {
            if pair[0].iter().zip(&pair[1]).any(|(a, b)| a >= b) {
                return Err(Error::InvalidTableau("columns must increase".into()));
            }
        }
        Ok(StandardTableau { rows })
    }

    /// The empty tableau.
    pub fn empty() -> Self {
        StandardTableau { rows: Vec::new() }
    }

    /// Builds the creation-order tableau of a growth path: the k-th cell in
    /// the list receives entry k + 1.
    pub fn from_growth_cells(cells: &[Cell]) -> Result<Self> {
        let max_row = cells.iter().map(|c| c.row).max().unwrap_or(0);
        let mut rows: Vec<Vec<usize>> = vec![Vec::new(); max_row];
        for (k, c) in cells.iter().enumerate() {
            if c.row == 0 || c.col == 0 || c.col != rows[c.row - 1].len() + 1 {
                return Err(Error::InvalidTableau(format!(
                    "cell {} does not extend the shape",
                    c
                )));
            }
            rows[c.row - 1].push(k + 1);
        }
        StandardTableau::from_rows(rows)
    }

    /// Number of boxes.
    pub fn size(&self) -> usize {
        self.rows.iter().map(|r| r.len()).sum()
    }

    /// The underlying partition shape.
    pub fn shape(&self) -> PartitionShape {
        PartitionShape::new(self.rows.iter().map(|r| r.len()).collect())
            .expect("tableau rows form a partition")
    }

    /// The rows of entries.
    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    /// Entry at a 1-indexed cell, if inside the shape.
    pub fn entry(&self, cell: Cell) -> Option<usize> {
        self.rows
            .get(cell.row.wrapping_sub(1))
            .and_then(|r| r.get(cell.col.wrapping_sub(1)))
            .copied()
    }

    /// Cell holding a given entry.
    pub fn position(&self, entry: usize) -> Option<Cell> {
        for (i, row) in self.rows.iter().enumerate() {
            for (j, &e) in row.iter().enumerate() {
                if e == entry {
                    return Some(Cell::new(i + 1, j + 1));
                }
            }
        }
        None
    }

    /// Cells listed in entry order 1, 2, ..., n.
    pub fn cells_in_entry_order(&self) -> Vec<Cell> {
        let mut out = vec![Cell::new(0, 0); self.size()];
        for (i, row) in self.rows.iter().enumerate() {
            for (j, &e) in row.iter().enumerate() {
                out[e - 1] = Cell::new(i + 1, j + 1);
            }
        }
        out
    }

    /// Sum of all i whose successor i + 1 lies in a strictly lower row.
    pub fn major_index(&self) -> usize {
        let n = self.size();
        let mut row_of = vec![0usize; n + 1];
        for (i, row) in self.rows.iter().enumerate() {
            for &e in row {
                row_of[e] = i + 1;
            }
        }
        (1..n).filter(|&i| row_of[i + 1] > row_of[i]).sum()
    }

    /// The transposed tableau.
    pub fn transpose(&self) -> StandardTableau {
        let shape = self.shape().conjugate();
        let rows: Vec<Vec<usize>> = shape
            .parts()
            .iter()
            .enumerate()
            .map(|(i, &len)| (0..len).map(|j| self.rows[j][i]).collect())
            .collect();
        StandardTableau { rows }
    }
}

impl fmt::Display for StandardTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let line = row
                .iter()
                .map(|e| e.to_string())
                .collect::<Vec<_>>()
                .join(" ");
            write!(f, "{}", line)?;
        }
        Ok(())
    }
}

impl fmt::Debug for StandardTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.rows)
    }
}

impl FromStr for StandardTableau {
    type Err = Error;

    /// Parses rows of space-separated entries, one row per line.
    fn from_str(s: &str) -> Result<Self> {
        let mut rows = Vec::new();
        for line in s.lines() {
            if line.trim().is_empty() {
                continue;
            }
            let row = line
                .split_whitespace()
                .map(|tok| {
                    tok.parse::<usize>()
                        .map_err(|_| Error::Parse(format!("bad tableau entry `{}`", tok)))
                })
                .collect::<Result<Vec<usize>>>()?;
            rows.push(row);
        }
        StandardTableau::from_rows(rows)
    }
}

impl TryFrom<Vec<Vec<usize>>> for StandardTableau {
    type Error = Error;
    fn try_from(rows: Vec<Vec<usize>>) -> Result<Self> {
        StandardTableau::from_rows(rows)
    }
}

impl From<StandardTableau> for Vec<Vec<usize>> {
    fn from(t: StandardTableau) -> Self {
        t.rows
    }
}

/// Number of standard tableaux of the shape, by the hook length formula.
pub fn hook_count(shape: &PartitionShape) -> BigInt {
    let n = shape.size();
    let mut num = BigInt::one();
    for k in 1..=n {
        num *= BigInt::from(k);
    }
    let mut den = BigInt::one();
    for cell in shape.cells() {
        den *= BigInt::from(shape.cell_stats(cell).expect("cell in shape").hook);
    }
    let (quot, rem) = num::Integer::div_rem(&num, &den);
    assert!(rem.is_zero(), "hook formula must divide n!");
    quot
}

/// All standard tableaux of the shape in a deterministic order; the shape
/// size is capped at SYT_ENUMERATION_CAP.
pub fn enumerate_syt(shape: &PartitionShape) -> Result<Vec<StandardTableau>> {
    let n = shape.size();
    if n > SYT_ENUMERATION_CAP {
        return Err(Error::CapExceeded(format!(
            "tableau enumeration is capped at {} boxes; {} has {}",
            SYT_ENUMERATION_CAP, shape, n
        )));
    }
    let target: Vec<usize> = shape.parts().to_vec();
    let mut rows: Vec<Vec<usize>> = vec![Vec::new(); target.len()];
    let mut out = Vec::new();
    fn rec(
        entry: usize,
        n: usize,
        target: &[usize],
        rows: &mut Vec<Vec<usize>>,
        out: &mut Vec<StandardTableau>,
    ) {
        if entry > n {
            out.push(StandardTableau { rows: rows.clone() });
            return;
        }
        for r in 0..target.len() {
            let len = rows[r].len();
            if len >= target[r] {
                continue;
            }
            if r > 0 && rows[r - 1].len() <= len {
                continue;
            }
            rows[r].push(entry);
            rec(entry + 1, n, target, rows, out);
            rows[r].pop();
        }
    }
    rec(1, n, &target, &mut rows, &mut out);
    Ok(out)
}

/// Per-cell (A, B) statistics for the cells in columns >= 2, row-major:
/// A counts entries of the previous column smaller than the cell's entry,
/// B counts entries of column 1 smaller than it.
pub fn tableau_ab_stats(t: &StandardTableau) -> Vec<(Cell, usize, usize)> {
    let shape = t.shape();
    let mut out = Vec::new();
    for cell in shape.cells() {
        if cell.col < 2 {
            continue;
        }
        let e = t.entry(cell).expect("cell in shape");
        let smaller_in = |col: usize| -> usize {
            (1..=shape.col_len(col))
                .filter(|&i| t.entry(Cell::new(i, col)).expect("cell in shape") < e)
                .count()
        };
        out.push((cell, smaller_in(cell.col - 1), smaller_in(1)));
    }
    out
}

/// Exact chance that the first N growth intervals of the (u, q) lattice
/// chain realize the creation order T; zero when T has more than N rows.
pub fn tableau_pmf_truncated(
    t: &StandardTableau,
    u: &Rational,
    qf: &Rational,
    n_intervals: usize,
) -> Result<Rational> {
    if *qf <= Rational::one() {
        return Err(Error::Domain("the lattice chain needs qf > 1".into()));
    }
    if u.is_negative() {
        return Err(Error::Domain("u must be nonnegative".into()));
    }
    let shape = t.shape();
    let rows = shape.rows();
    if rows > n_intervals {
        return Ok(Rational::zero());
    }
    let tinv = qf.recip();
    let mut out = rat_pow(u, t.size()) / gl_order_rat(rows, qf);
    for r in 1..=n_intervals {
        let tr = rat_pow(&tinv, r);
        out *= Rational::one() - u * &tr;
        out *= Rational::one() - &tr;
    }
    for r in 1..=n_intervals - rows {
        out /= Rational::one() - rat_pow(&tinv, r);
    }
    for (cell, a, b) in tableau_ab_stats(t) {
        let num = rat_pow(&tinv, cell.row - 1) - rat_pow(&tinv, a);
        let den = rat_pow(qf, b) - Rational::one();
        out *= num / den;
    }
    Ok(out)
}

/// A permutation of 1..n in one-line notation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    word: Vec<usize>,
}

impl Permutation {
    /// Validates that the word is a permutation of 1..n.
    pub fn new(word: Vec<usize>) -> Result<Self> {
        let n = word.len();
        let mut seen = vec![false; n + 1];
        for &v in &word {
            if v == 0 || v > n || seen[v] {
                return Err(Error::InvalidPermutation(format!(
                    "{:?} is not a permutation of 1..{}",
                    word, n
                )));
            }
            seen[v] = true;
        }
        Ok(Permutation { word })
    }

    /// The identity on 1..n.
    pub fn identity(n: usize) -> Self {
        Permutation {
            word: (1..=n).collect(),
        }
    }

    /// One-line word.
    pub fn word(&self) -> &[usize] {
        &self.word
    }

    /// Number of letters.
    pub fn len(&self) -> usize {
        self.word.len()
    }

    /// True for the empty permutation.
    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    /// The inverse permutation.
    pub fn inverse(&self) -> Permutation {
        let mut word = vec![0usize; self.word.len()];
        for (i, &v) in self.word.iter().enumerate() {
            word[v - 1] = i + 1;
        }
        Permutation { word }
    }

    /// Sum of the descent positions: all i with w_i > w_{i+1}.
    pub fn major_index(&self) -> usize {
        (1..self.word.len())
            .filter(|&i| self.word[i - 1] > self.word[i])
            .sum()
    }
}

/// All permutations of 1..n in lexicographic order; capped at n <= 9.
pub fn all_permutations(n: usize) -> Result<Vec<Permutation>> {
    if n > 9 {
        return Err(Error::CapExceeded(format!(
            "permutation enumeration is capped at 9 letters; got {}",
            n
        )));
    }
    let mut word: Vec<usize> = (1..=n).collect();
    let mut out = vec![Permutation { word: word.clone() }];
    // advance to the next permutation in lexicographic order until none is left
    while let Some(i) = (1..word.len()).rev().find(|&i| word[i - 1] < word[i]) {
        let j = (i..word.len())
            .rev()
            .find(|&j| word[j] > word[i - 1])
            .expect("suffix has a larger element");
        word.swap(i - 1, j);
        word[i..].reverse();
        out.push(Permutation { word: word.clone() });
    }
    Ok(out)
}

/// Row-insertion RSK: returns the insertion tableau P and recording
/// tableau Q, with shape(P) = shape(Q).
pub fn rsk(perm: &Permutation) -> (StandardTableau, StandardTableau) {
    let mut p_rows: Vec<Vec<usize>> = Vec::new();
    let mut q_rows: Vec<Vec<usize>> = Vec::new();
    for (step, &val) in perm.word().iter().enumerate() {
        let mut v = val;
        let mut r = 0;
        loop {
            if r == p_rows.len() {
                p_rows.push(vec![v]);
                q_rows.push(vec![step + 1]);
                break;
            }
            match p_rows[r].iter().position(|&e| e > v) {
                None => {
                    p_rows[r].push(v);
                    q_rows[r].push(step + 1);
                    break;
                }
                Some(pos) => {
                    std::mem::swap(&mut v, &mut p_rows[r][pos]);
                    r += 1;
                }
            }
        }
    }
    (
        StandardTableau::from_rows(p_rows).expect("insertion tableau is standard"),
        StandardTableau::from_rows(q_rows).expect("recording tableau is standard"),
    )
}

/// K_lambda(q) = q^(n(lambda)) [n]! / prod_s [h(s)], an exact polynomial.
pub fn kostka_foulkes(shape: &PartitionShape) -> JPolynomial {
    let n = shape.size();
    let mut num = JPolynomial::monomial(shape.n_stat());
    for m in 1..=n {
        num = num.mul(&JPolynomial::q_integer(m));
    }
    let mut den = JPolynomial::one();
    for cell in shape.cells() {
        den = den.mul(&JPolynomial::q_integer(
            shape.cell_stats(cell).expect("cell in shape").hook,
        ));
    }
    num.div_exact(&den)
        .expect("hook generating function divides exactly")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::{partitions_of, shape};
    use crate::qseries::{rat, rat_int};

    fn tab(rows: &[&[usize]]) -> StandardTableau {
        StandardTableau::from_rows(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn tableau_validation() {
        assert!(StandardTableau::from_rows(vec![vec![1, 2], vec![3]]).is_ok());
        assert!(StandardTableau::from_rows(vec![vec![1, 3], vec![2]]).is_ok());
        assert!(StandardTableau::from_rows(vec![vec![2, 1], vec![3]]).is_err());
        assert!(StandardTableau::from_rows(vec![vec![1, 2], vec![2]]).is_err());
        assert!(StandardTableau::from_rows(vec![vec![1], vec![2, 3]]).is_err());
        assert!(StandardTableau::from_rows(vec![vec![3, 4], vec![5, 6]]).is_err());
        // column condition
        assert!(StandardTableau::from_rows(vec![vec![1, 4], vec![2, 3]]).is_err());
    }

    #[test]
    fn growth_cells_round_trip() {
        let cells = vec![
            Cell::new(1, 1),
            Cell::new(1, 2),
            Cell::new(2, 1),
            Cell::new(1, 3),
        ];
        let t = StandardTableau::from_growth_cells(&cells).unwrap();
        assert_eq!(t, tab(&[&[1, 2, 4], &[3]]));
        assert_eq!(t.cells_in_entry_order(), cells);
        // skipping a column is rejected
        assert!(StandardTableau::from_growth_cells(&[Cell::new(1, 2)]).is_err());
        assert!(StandardTableau::from_growth_cells(&[Cell::new(2, 1)]).is_err());
    }

    #[test]
    fn major_index_examples() {
        assert_eq!(tab(&[&[1, 2], &[3]]).major_index(), 2);
        assert_eq!(tab(&[&[1, 3], &[2]]).major_index(), 1);
        assert_eq!(tab(&[&[1, 2, 3]]).major_index(), 0);
        assert_eq!(tab(&[&[1], &[2], &[3]]).major_index(), 3);
    }

    #[test]
    fn enumeration_matches_hook_counts() {
        for n in 0..=8 {
            for lam in partitions_of(n) {
                let all = enumerate_syt(&lam).unwrap();
                assert_eq!(BigInt::from(all.len()), hook_count(&lam), "shape {}", lam);
                for t in &all {
                    assert_eq!(t.shape(), lam);
                }
                // deterministic and duplicate-free
                let mut seen = all.clone();
                seen.dedup();
                assert_eq!(seen.len(), all.len());
            }
        }
        assert!(enumerate_syt(&shape(&[13])).is_err());
    }

    #[test]
    fn ab_stats_example() {
        let t = tab(&[&[1, 2, 5], &[3], &[4]]);
        let stats = tableau_ab_stats(&t);
        // cells (1,2) entry 2 and (1,3) entry 5; column 1 holds {1,3,4}
        assert_eq!(
            stats,
            vec![(Cell::new(1, 2), 1, 1), (Cell::new(1, 3), 1, 3),]
        );
    }

    #[test]
    fn lattice_masses_for_2_1_1() {
        // The three tableaux of shape (2,1,1) carry masses S/q, S/q^2, S/q^3
        // where S collects the shape-level factors.
        for (u, q) in [(rat(1, 2), rat_int(2)), (rat(1, 3), rat_int(3))] {
            let n = 4usize;
            let t1 = tab(&[&[1, 2], &[3], &[4]]);
            let t2 = tab(&[&[1, 3], &[2], &[4]]);
            let t3 = tab(&[&[1, 4], &[2], &[3]]);
            let tinv = q.recip();
            let mut s = rat_pow(&u, 4) / gl_order_rat(3, &q);
            for r in 1..=n {
                s *= Rational::one() - &u * rat_pow(&tinv, r);
            }
            for r in 2..=n {
                s *= Rational::one() - rat_pow(&tinv, r);
            }
            assert_eq!(tableau_pmf_truncated(&t1, &u, &q, n).unwrap(), &s * &tinv);
            assert_eq!(
                tableau_pmf_truncated(&t2, &u, &q, n).unwrap(),
                &s * rat_pow(&tinv, 2)
            );
            assert_eq!(
                tableau_pmf_truncated(&t3, &u, &q, n).unwrap(),
                &s * rat_pow(&tinv, 3)
            );
        }
    }

    #[test]
    fn lattice_mass_vanishes_past_row_cap() {
        let t = tab(&[&[1], &[2], &[3]]);
        assert_eq!(
            tableau_pmf_truncated(&t, &rat(1, 2), &rat_int(2), 2).unwrap(),
            rat_int(0)
        );
        assert!(tableau_pmf_truncated(&t, &rat(1, 2), &rat(1, 2), 3).is_err());
    }

    #[test]
    fn permutation_basics() {
        let p = Permutation::new(vec![3, 1, 2]).unwrap();
        assert_eq!(p.major_index(), 1);
        assert_eq!(p.inverse().word(), &[2, 3, 1]);
        assert_eq!(p.inverse().inverse(), p);
        assert!(Permutation::new(vec![1, 1]).is_err());
        assert!(Permutation::new(vec![2, 3]).is_err());
        assert_eq!(all_permutations(3).unwrap().len(), 6);
        assert_eq!(all_permutations(0).unwrap().len(), 1);
        assert!(all_permutations(10).is_err());
    }

    #[test]
    fn rsk_bijectivity_and_shapes() {
        // over S_4: distinct pairs, matching shapes, maj(pi) = maj(Q),
        // and rsk(pi^{-1}) = (Q, P).
        let perms = all_permutations(4).unwrap();
        let mut images = Vec::new();
        for p in &perms {
            let (ins, rec) = rsk(p);
            assert_eq!(ins.shape(), rec.shape());
            assert_eq!(p.major_index(), rec.major_index(), "pi = {:?}", p);
            let (ins_inv, rec_inv) = rsk(&p.inverse());
            assert_eq!(ins_inv, rec);
            assert_eq!(rec_inv, ins);
            images.push((ins, rec));
        }
        images.sort_by_key(|(a, b)| (format!("{}", a), format!("{}", b)));
        images.dedup();
        assert_eq!(images.len(), perms.len());
    }

    #[test]
    fn kostka_foulkes_small_values() {
        assert_eq!(kostka_foulkes(&PartitionShape::empty()), JPolynomial::one());
        assert_eq!(kostka_foulkes(&shape(&[2])), JPolynomial::one());
        assert_eq!(kostka_foulkes(&shape(&[1, 1])), JPolynomial::monomial(1));
        // K_(2,1) = q + q^2
        let k21 = kostka_foulkes(&shape(&[2, 1]));
        assert_eq!(k21.coeff(1), BigInt::one());
        assert_eq!(k21.coeff(2), BigInt::one());
        assert_eq!(k21.degree(), Some(2));
    }

    #[test]
    fn kostka_foulkes_is_maj_generating_function() {
        for n in 0..=6 {
            for lam in partitions_of(n) {
                let mut want = JPolynomial::zero();
                for t in enumerate_syt(&lam).unwrap() {
                    want = want.add(&JPolynomial::monomial(t.major_index()));
                }
                assert_eq!(kostka_foulkes(&lam), want, "shape {}", lam);
            }
        }
    }

    #[test]
    fn display_and_parse_round_trip() {
        let t = tab(&[&[1, 3, 4], &[2, 5]]);
        let s = t.to_string();
        assert_eq!(s, "1 3 4\n2 5");
        let back: StandardTableau = s.parse().unwrap();
        assert_eq!(back, t);
        let json = serde_json::to_string(&t).unwrap();
        assert_eq!(json, "[[1,3,4],[2,5]]");
        let from_json: StandardTableau = serde_json::from_str(&json).unwrap();
        assert_eq!(from_json, t);
        assert!(serde_json::from_str::<StandardTableau>("[[2,1]]").is_err());
    }

    #[test]
    fn transpose_is_involution() {
        for n in 0..=6 {
            for lam in partitions_of(n) {
                for t in enumerate_syt(&lam).unwrap() {
                    let tt = t.transpose();
                    assert_eq!(tt.shape(), lam.conjugate());
                    assert_eq!(tt.transpose(), t);
                }
            }
        }
    }

    #[test]
    fn ab_stats_match_worked_nine_box_example() {
        // For rows (1 3 5 6 / 2 4 7 / 8 9): the entry 5 at (1,3) sees two
        // smaller entries in column 2 and two in column 1.
        let t = tab(&[&[1, 3, 5, 6], &[2, 4, 7], &[8, 9]]);
        let stats = tableau_ab_stats(&t);
        assert_eq!(
            stats,
            vec![
                (Cell::new(1, 2), 2, 2),
                (Cell::new(1, 3), 2, 2),
                (Cell::new(1, 4), 1, 2),
                (Cell::new(2, 2), 2, 2),
                (Cell::new(2, 3), 2, 2),
                (Cell::new(3, 2), 3, 3),
            ]
        );
    }

    #[test]
    fn ab_stats_agree_with_double_loop_oracle() {
        for n in 0..=6 {
            for lam in partitions_of(n) {
                for t in enumerate_syt(&lam).unwrap() {
                    let stats = tableau_ab_stats(&t);
                    let mut by_cell = std::collections::HashMap::new();
                    for (cell, a, b) in &stats {
                        by_cell.insert(*cell, (*a, *b));
                    }
                    for cell in lam.cells() {
                        if cell.col < 2 {
                            continue;
                        }
                        let value = t.entry(cell).unwrap();
                        let mut a = 0usize;
                        for row in 1..=lam.col_len(cell.col - 1) {
                            if t.entry(Cell::new(row, cell.col - 1)).unwrap() < value {
                                a += 1;
                            }
                        }
                        let mut b = 0usize;
                        for row in 1..=lam.col_len(1) {
                            if t.entry(Cell::new(row, 1)).unwrap() < value {
                                b += 1;
                            }
                        }
                        assert_eq!(by_cell.get(&cell), Some(&(a, b)), "{:?}", t);
                    }
                }
            }
        }
    }

    #[test]
    fn kostka_foulkes_at_one_counts_tableaux() {
        for n in 0..=8 {
            for lam in partitions_of(n) {
                assert_eq!(
                    kostka_foulkes(&lam).eval(&Rational::one()),
                    Rational::from(hook_count(&lam)),
                    "{}",
                    lam
                );
            }
        }
    }

    #[test]
    fn maj_sums_grouped_by_correspondence_shape_give_j_polynomials() {
        // Grouping S_n by the shape of the row-insertion tableaux, the sum
        // of q^(maj(pi) + maj(pi^-1)) over a group equals the j-polynomial
        // of the conjugate shape, and the grand total is the size-n sum.
        use crate::measures::{j_lambda, j_n, plancherel_conditional, JPolynomial};
        use std::collections::HashMap;
        for n in 0..=5usize {
            let mut grouped: HashMap<PartitionShape, JPolynomial> = HashMap::new();
            for perm in all_permutations(n).unwrap() {
                let (p, _) = rsk(&perm);
                let stat = perm.major_index() + perm.inverse().major_index();
                let entry = grouped.entry(p.shape()).or_insert_with(JPolynomial::zero);
                *entry = entry.add(&JPolynomial::monomial(stat));
            }
            let mut total = JPolynomial::zero();
            for lam in partitions_of(n) {
                let got = grouped
                    .get(&lam.conjugate())
                    .cloned()
                    .unwrap_or_else(JPolynomial::zero);
                assert_eq!(got, j_lambda(&lam), "{}", lam);
                let ratio = plancherel_conditional(&lam);
                assert_eq!(ratio.num, got);
                total = total.add(&got);
            }
            assert_eq!(total, j_n(n));
        }
    }
}
