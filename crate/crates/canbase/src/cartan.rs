//! Symmetric Cartan data, weights, and the orders on vertices and sequences.
//!
//! A symmetric Cartan datum is a symmetric integer matrix with 2 on the
//! diagonal and non-positive entries elsewhere, together with a total order
//! `i_1 < i_2 < ... < i_n` on the vertex set. The order is data, not
//! convention: it drives the sequence order on `S` and through it the
//! processing order of every basis computation downstream.
//!
//! Vertices are 0-based internally and 1-based in all I/O.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt;

/// A dimension vector: non-negative integer coordinates over the vertex set.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Weight(pub Vec<u32>);

impl Weight {
    pub fn zero(n: usize) -> Self {
        Weight(vec![0; n])
    }

    /// The unit weight e_i.
    pub fn unit(n: usize, i: usize) -> Self {
        let mut w = vec![0; n];
        w[i] = 1;
        Weight(w)
    }

    pub fn height(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn get(&self, i: usize) -> u32 {
        self.0[i]
    }

    /// self + k * e_i.
    pub fn plus(&self, i: usize, k: u32) -> Weight {
        let mut w = self.0.clone();
        w[i] += k;
        Weight(w)
    }

    /// self - k * e_i, or None if the coordinate would go negative.
    pub fn minus(&self, i: usize, k: u32) -> Option<Weight> {
        if self.0[i] < k {
            return None;
        }
        let mut w = self.0.clone();
        w[i] -= k;
        Some(Weight(w))
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, c) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A sequence of (vertex, multiplicity) pairs; multiplicities are >= 1.
///
/// This is both the index type for monomials of divided powers and the
/// value type of the string map `s`. Vertices are stored 0-based.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SequenceS(pub Vec<(usize, u32)>);

impl SequenceS {
    pub fn empty() -> Self {
        SequenceS(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self, rank: usize) -> Weight {
        let mut w = vec![0u32; rank];
        for &(i, m) in &self.0 {
            w[i] += m;
        }
        Weight(w)
    }

    /// No zero multiplicities and no two consecutive equal vertices.
    pub fn is_normalized(&self) -> bool {
        self.0.iter().all(|&(_, m)| m >= 1)
            && self.0.windows(2).all(|w| w[0].0 != w[1].0)
    }
}

impl fmt::Display for SequenceS {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "()");
        }
        for &(i, m) in &self.0 {
            write!(f, "({},{})", i + 1, m)?;
        }
        Ok(())
    }
}

impl fmt::Debug for SequenceS {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Result of comparing two sequences under the sequence order.
///
/// Sequences of different total weight are incomparable; within a fixed
/// weight the order is total.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeqOrdering {
    Less,
    Greater,
    Equal,
    Incomparable,
}

/// A symmetric generalized Cartan matrix together with a vertex order.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CartanDatum {
    n: usize,
    matrix: Vec<Vec<i64>>,
    /// order[k] = the vertex (0-based) at position k, so order[0] is the
    /// smallest vertex.
    order: Vec<usize>,
    /// position[i] = k iff order[k] = i.
    position: Vec<usize>,
}

impl CartanDatum {
    /// Validate a matrix and vertex order into a datum.
    ///
    /// The matrix must be square and symmetric with a_ii = 2 and a_ij <= 0
    /// off the diagonal; the order must be a permutation of the vertex set.
    /// Errors name the violated cell (1-based).
    pub fn new(matrix: Vec<Vec<i64>>, order: Vec<usize>) -> Result<Self> {
        let n = matrix.len();
        if n == 0 {
            return Err(Error::Config("empty cartan matrix".into()));
        }
        for (r, row) in matrix.iter().enumerate() {
            if row.len() != n {
                return Err(Error::LengthMismatch {
                    expected: n,
                    got: row.len(),
                });
            }
            for (c, &a) in row.iter().enumerate() {
                if r == c {
                    if a != 2 {
                        return Err(Error::BadDiagonal { index: r + 1 });
                    }
                } else {
                    if a > 0 {
                        return Err(Error::PositiveOffDiagonal { row: r + 1, col: c + 1 });
                    }
                    if matrix[c][r] != a {
                        return Err(Error::NonSymmetric { row: r + 1, col: c + 1 });
                    }
                }
            }
        }
        if order.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                got: order.len(),
            });
        }
        let mut position = vec![usize::MAX; n];
        for (k, &i) in order.iter().enumerate() {
            if i >= n || position[i] != usize::MAX {
                return Err(Error::Config(format!(
                    "vertex order is not a permutation of 1..{n}"
                )));
            }
            position[i] = k;
        }
        Ok(CartanDatum {
            n,
            matrix,
            order,
            position,
        })
    }

    /// Natural order 1 < 2 < ... < n.
    pub fn with_natural_order(matrix: Vec<Vec<i64>>) -> Result<Self> {
        let n = matrix.len();
        Self::new(matrix, (0..n).collect())
    }

    /// Built-in data: "A1", "A2", "A3", "D4", "A1-double-bond".
    pub fn preset(name: &str) -> Option<Self> {
        let matrix: Vec<Vec<i64>> = match name.to_ascii_uppercase().as_str() {
            "A1" => vec![vec![2]],
            "A2" => vec![vec![2, -1], vec![-1, 2]],
            "A3" => vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]],
            "D4" => vec![
                vec![2, 0, 0, -1],
                vec![0, 2, 0, -1],
                vec![0, 0, 2, -1],
                vec![-1, -1, -1, 2],
            ],
            "A1-DOUBLE-BOND" => vec![vec![2, -2], vec![-2, 2]],
            _ => return None,
        };
        Some(Self::with_natural_order(matrix).expect("preset data is valid"))
    }

    /// Read a datum from a JSON document {"matrix": [[...]], "order": [...]}
    /// with a 1-based order; "order" may be omitted for the natural order.
    pub fn from_json(text: &str) -> Result<Self> {
        #[derive(Deserialize)]
        struct Doc {
            matrix: Vec<Vec<i64>>,
            order: Option<Vec<usize>>,
        }
        let doc: Doc = serde_json::from_str(text)?;
        let n = doc.matrix.len();
        let order = match doc.order {
            Some(ord) => {
                for &i in &ord {
                    if i == 0 {
                        return Err(Error::Config("order entries are 1-based".into()));
                    }
                }
                ord.iter().map(|&i| i - 1).collect()
            }
            None => (0..n).collect(),
        };
        Self::new(doc.matrix, order)
    }

    /// Canonical JSON form (1-based order); used for cache keys.
    pub fn to_json(&self) -> String {
        let order: Vec<usize> = self.order.iter().map(|&i| i + 1).collect();
        serde_json::json!({ "matrix": self.matrix, "order": order }).to_string()
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.matrix[i][j]
    }

    /// Position of vertex i in the order (0 = smallest).
    pub fn order_position(&self, i: usize) -> usize {
        self.position[i]
    }

    /// Vertices listed from smallest to largest.
    pub fn vertices_in_order(&self) -> &[usize] {
        &self.order
    }

    /// Replace the vertex order, keeping the matrix.
    pub fn with_order(&self, order: Vec<usize>) -> Result<Self> {
        Self::new(self.matrix.clone(), order)
    }

    /// The bilinear form on weights: sum_{i,j} nu_i mu_j a_ij.
    pub fn pairing(&self, nu: &Weight, mu: &Weight) -> Result<i64> {
        if nu.rank() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                got: nu.rank(),
            });
        }
        if mu.rank() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                got: mu.rank(),
            });
        }
        let mut acc = 0i64;
        for i in 0..self.n {
            if nu.get(i) == 0 {
                continue;
            }
            for j in 0..self.n {
                acc += nu.get(i) as i64 * mu.get(j) as i64 * self.matrix[i][j];
            }
        }
        Ok(acc)
    }

    /// (nu, e_i) without building the unit weight.
    pub fn pairing_unit(&self, nu: &Weight, i: usize) -> i64 {
        (0..self.n)
            .map(|j| nu.get(j) as i64 * self.matrix[j][i])
            .sum()
    }

    /// Pair order on (vertex, multiplicity): (j,m') < (i,m) iff i < j in the
    /// vertex order, or i = j and m > m'.
    fn pair_cmp(&self, a: (usize, u32), b: (usize, u32)) -> Ordering {
        // a < b iff b's vertex is order-smaller, or same vertex and b's
        // multiplicity is smaller.
        let pa = self.position[a.0];
        let pb = self.position[b.0];
        match pb.cmp(&pa) {
            Ordering::Less => Ordering::Less,    // b has smaller vertex => a < b
            Ordering::Greater => Ordering::Greater,
            Ordering::Equal => b.1.cmp(&a.1),
        }
    }

    /// The sequence order: equal-weight sequences are compared at the first
    /// differing entry by the pair order; different weights are incomparable.
    pub fn compare_sequences(&self, s1: &SequenceS, s2: &SequenceS) -> SeqOrdering {
        if s1.weight(self.n) != s2.weight(self.n) {
            return SeqOrdering::Incomparable;
        }
        for (a, b) in s1.0.iter().zip(s2.0.iter()) {
            if a != b {
                return match self.pair_cmp(*a, *b) {
                    Ordering::Less => SeqOrdering::Less,
                    Ordering::Greater => SeqOrdering::Greater,
                    Ordering::Equal => unreachable!("distinct pairs compare unequal"),
                };
            }
        }
        match s1.len().cmp(&s2.len()) {
            Ordering::Equal => SeqOrdering::Equal,
            // A proper prefix of equal total weight cannot occur: the extra
            // entries would have positive weight.
            _ => unreachable!("equal-weight sequences cannot be proper prefixes"),
        }
    }

    /// Total comparator used for sorting within a weight: sequence order
    /// first, plain lexicographic comparison as a tie-break for sequences of
    /// different weights.
    pub fn sequence_sort_key(&self, a: &SequenceS, b: &SequenceS) -> Ordering {
        match self.compare_sequences(a, b) {
            SeqOrdering::Less => Ordering::Less,
            SeqOrdering::Greater => Ordering::Greater,
            SeqOrdering::Equal => Ordering::Equal,
            SeqOrdering::Incomparable => a.0.cmp(&b.0),
        }
    }
}

/// All weights of height <= max_height, in height-then-lexicographic order.
pub fn enumerate_weights(datum: &CartanDatum, max_height: u32) -> Vec<Weight> {
    let n = datum.rank();
    let mut out = Vec::new();
    for h in 0..=max_height {
        let mut cur = vec![0u32; n];
        fill(&mut out, &mut cur, 0, h, n);
    }
    return out;

    fn fill(out: &mut Vec<Weight>, cur: &mut Vec<u32>, pos: usize, rem: u32, n: usize) {
        if pos == n - 1 {
            cur[pos] = rem;
            out.push(Weight(cur.clone()));
            return;
        }
        for c in 0..=rem {
            cur[pos] = c;
            fill(out, cur, pos + 1, rem - c, n);
        }
        cur[pos] = 0;
    }
}
