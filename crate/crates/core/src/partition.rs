//! Partitions, their Young diagrams, and diagram combinatorics.
//!
//! A partition is a weakly decreasing list of positive integers. Its Young
//! diagram is drawn in English notation: row i has lambda_i boxes, rows grow
//! downward, and cells are addressed by 1-indexed (row, column) pairs. The
//! conjugate partition transposes the diagram, so its j-th part is the number
//! of rows with at least j boxes.
//!
//! For a cell s = (i, j) of lambda the arm a(s) counts boxes strictly east of
//! s in its row, the leg l(s) counts boxes strictly south in its column, the
//! coarm a'(s) = j - 1 counts boxes west, and the coleg l'(s) = i - 1 counts
//! boxes north. The hook length is a(s) + l(s) + 1 and the content is
//! a'(s) - l'(s). The statistic n(lambda) = sum_i (i - 1) lambda_i equals the
//! sum of binomial(lambda'_j, 2) over columns.
//!
//! A horizontal strip is a skew diagram with at most one box per column;
//! lambda grows to Lambda by a horizontal strip exactly when the two shapes
//! interlace: Lambda_1 >= lambda_1 >= Lambda_2 >= lambda_2 >= ...

use crate::error::{Error, Result};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::str::FromStr;

/// A 1-indexed (row, column) cell of a Young diagram.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cell {
    /// Row index, starting at 1 for the top row.
    pub row: usize,
    /// Column index, starting at 1 for the leftmost column.
    pub col: usize,
}

impl Cell {
    /// Builds a cell from 1-indexed row and column.
    pub fn new(row: usize, col: usize) -> Self {
        Cell { row, col }
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row, self.col)
    }
}

/// Arm, leg, coarm, coleg, hook, and content of one cell.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CellStats {
    /// Boxes strictly east of the cell in its row.
    pub arm: usize,
    /// Boxes strictly south of the cell in its column.
    pub leg: usize,
    /// Boxes strictly west of the cell in its row.
    pub coarm: usize,
    /// Boxes strictly north of the cell in its column.
    pub coleg: usize,
    /// arm + leg + 1.
    pub hook: usize,
    /// coarm - coleg, which can be negative.
    pub content: i64,
}

/// A partition stored as its weakly decreasing list of positive parts.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartitionShape {
    parts: Vec<usize>,
}

impl PartitionShape {
    /// Builds a partition, rejecting zero parts and out-of-order lists.
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        for w in parts.windows(2) {
            if w[0] < w[1] {
                return Err(Error::Parse(format!(
                    "parts must be weakly decreasing, got {:?}",
                    parts
                )));
            }
        }
        if parts.contains(&0) {
            return Err(Error::Parse("parts must be positive".into()));
        }
        Ok(PartitionShape { parts })
    }

    /// The empty partition of 0.
    pub fn empty() -> Self {
        PartitionShape { parts: Vec::new() }
    }

    /// The parts as a slice, largest first.
    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Number of boxes.
    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of nonzero rows.
    pub fn rows(&self) -> usize {
        self.parts.len()
    }

    /// True for the empty partition.
    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// The 1-indexed i-th part, 0 beyond the last row.
    pub fn part(&self, i: usize) -> usize {
        if i >= 1 && i <= self.parts.len() {
            self.parts[i - 1]
        } else {
            0
        }
    }

    /// Length of the 1-indexed j-th column, i.e. the j-th conjugate part.
    pub fn col_len(&self, j: usize) -> usize {
        if j == 0 {
            return 0;
        }
        self.parts.iter().take_while(|&&p| p >= j).count()
    }

    /// Multiplicity of i as a part.
    pub fn multiplicity(&self, i: usize) -> usize {
        self.parts.iter().filter(|&&p| p == i).count()
    }

    /// The conjugate (transposed) partition.
    pub fn conjugate(&self) -> PartitionShape {
        let cols = self.part(1);
        let parts = (1..=cols).map(|j| self.col_len(j)).collect();
        PartitionShape { parts }
    }

    /// n(lambda) = sum_i (i - 1) lambda_i, checked against the column form.
    pub fn n_stat(&self) -> usize {
        let by_rows: usize = self.parts.iter().enumerate().map(|(i, &p)| i * p).sum();
        let by_cols: usize = (1..=self.part(1))
            .map(|j| {
                let c = self.col_len(j);
                c * c.saturating_sub(1) / 2
            })
            .sum();
        assert_eq!(by_rows, by_cols, "n(lambda) computed two ways disagreed");
        by_rows
    }

    /// True when the cell lies inside the diagram.
    pub fn contains_cell(&self, cell: Cell) -> bool {
        cell.row >= 1 && cell.col >= 1 && self.part(cell.row) >= cell.col
    }

    /// True when mu fits inside self column by column.
    pub fn contains(&self, mu: &PartitionShape) -> bool {
        mu.parts
            .iter()
            .enumerate()
            .all(|(i, &p)| self.part(i + 1) >= p)
    }

    /// All cells of the diagram in row-major order.
    pub fn cells(&self) -> Vec<Cell> {
        let mut out = Vec::with_capacity(self.size());
        for (i, &p) in self.parts.iter().enumerate() {
            for j in 1..=p {
                out.push(Cell::new(i + 1, j));
            }
        }
        out
    }

    /// Arm, leg, coarm, coleg, hook, and content of one cell of the diagram.
    pub fn cell_stats(&self, cell: Cell) -> Result<CellStats> {
        if !self.contains_cell(cell) {
            return Err(Error::CellOutsideShape {
                shape: self.to_string(),
                row: cell.row,
                col: cell.col,
            });
        }
        let arm = self.part(cell.row) - cell.col;
        let leg = self.col_len(cell.col) - cell.row;
        let coarm = cell.col - 1;
        let coleg = cell.row - 1;
        Ok(CellStats {
            arm,
            leg,
            coarm,
            coleg,
            hook: arm + leg + 1,
            content: coarm as i64 - coleg as i64,
        })
    }

    /// True when self minus mu is a horizontal strip (at most one box per
    /// column), checked on column lengths.
    pub fn is_horizontal_strip_over(&self, mu: &PartitionShape) -> bool {
        if !self.contains(mu) {
            return false;
        }
        (1..=self.part(1)).all(|j| self.col_len(j) - mu.col_len(j) <= 1)
    }

    /// All partitions obtained from self by adding a horizontal strip of k
    /// boxes, optionally with a bound on the number of rows. Results are in
    /// lexicographically largest-first order.
    pub fn horizontal_strip_extensions(
        &self,
        k: usize,
        max_parts: Option<usize>,
    ) -> Vec<PartitionShape> {
        let mut out = Vec::new();
        let mut prefix = Vec::new();
        self.extend_rows(1, k, usize::MAX, max_parts, &mut prefix, &mut out);
        out
    }

    fn extend_rows(
        &self,
        row: usize,
        remaining: usize,
        upper: usize,
        max_parts: Option<usize>,
        prefix: &mut Vec<usize>,
        out: &mut Vec<PartitionShape>,
    ) {
        let lower = self.part(row);
        if remaining == 0 && lower == 0 {
            out.push(PartitionShape {
                parts: prefix.clone(),
            });
            return;
        }
        if let Some(m) = max_parts {
            if row > m {
                return;
            }
        }
        // Interlacing: lambda_row <= new part <= min(lambda_{row-1}, lower + remaining).
        let hi = upper.min(lower + remaining);
        if hi == 0 {
            return;
        }
        let lo = lower.max(1);
        if lo > hi {
            return;
        }
        for v in (lo..=hi).rev() {
            prefix.push(v);
            // The next row is capped by this row of the base shape.
            self.extend_rows(
                row + 1,
                remaining - (v - lower),
                lower,
                max_parts,
                prefix,
                out,
            );
            prefix.pop();
        }
    }

    /// All covers of self in the Young lattice, paired with the column of the
    /// added box, ordered top row first.
    pub fn covers(&self) -> Vec<(PartitionShape, usize)> {
        let mut out = Vec::new();
        for row in 1..=self.parts.len() + 1 {
            let here = self.part(row);
            if row == 1 || self.part(row - 1) > here {
                let mut parts = self.parts.clone();
                if row <= parts.len() {
                    parts[row - 1] += 1;
                } else {
                    parts.push(1);
                }
                out.push((PartitionShape { parts }, here + 1));
            }
        }
        out
    }

    /// Space-separated parts, e.g. "5 4 4 1"; empty string for the empty
    /// partition.
    pub fn to_space_string(&self) -> String {
        self.parts
            .iter()
            .map(|p| p.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for PartitionShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", p)?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for PartitionShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl FromStr for PartitionShape {
    type Err = Error;

    /// Parses "5 4 4 1" or "(5,4,4,1)"; "" and "()" give the empty partition.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let inner = if t.starts_with('(') && t.ends_with(')') {
            t[1..t.len() - 1].replace(',', " ")
        } else {
            t.replace(',', " ")
        };
        let mut parts = Vec::new();
        for tok in inner.split_whitespace() {
            let p: usize = tok
                .parse()
                .map_err(|_| Error::Parse(format!("bad part `{}` in partition `{}`", tok, s)))?;
            parts.push(p);
        }
        PartitionShape::new(parts)
    }
}

impl Serialize for PartitionShape {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for PartitionShape {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(D::Error::custom)
    }
}

/// All partitions of n in lexicographically largest-first order.
pub fn partitions_of(n: usize) -> Vec<PartitionShape> {
    let mut out = Vec::new();
    let mut prefix = Vec::new();
    fill_partitions(n, usize::MAX, &mut prefix, &mut out);
    out
}

fn fill_partitions(
    remaining: usize,
    cap: usize,
    prefix: &mut Vec<usize>,
    out: &mut Vec<PartitionShape>,
) {
    if remaining == 0 {
        out.push(PartitionShape {
            parts: prefix.clone(),
        });
        return;
    }
    for v in (1..=cap.min(remaining)).rev() {
        prefix.push(v);
        fill_partitions(remaining - v, v, prefix, out);
        prefix.pop();
    }
}

/// All partitions of every size from 0 through n, smaller sizes first.
pub fn partitions_up_to(n: usize) -> Vec<PartitionShape> {
    (0..=n).flat_map(partitions_of).collect()
}

/// Shorthand for building a partition in tests and examples.
pub fn shape(parts: &[usize]) -> PartitionShape {
    PartitionShape::new(parts.to_vec()).expect("invalid literal partition")
}
