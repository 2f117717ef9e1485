//! Nonnegative integer matrices as a `(gl_n, gl_n)`-bicrystal, the RSK map
//! `κ(M) = (b_a, b_c)` and the diagonal crystal structure `M ≡ a ⊗ c`.
//!
//! For `M = M(a, b)` the biword lists each pair `(i, j)` with multiplicity
//! `m_ij`, sorted by column `j` and, within a column, by decreasing row `i`.
//! The row word `a` carries the row-side crystal, the row word `c` of `Mᵗ`
//! the column-side crystal.

use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ls_path::{order_geq, psi};
use crate::tableau::{word_to_tableau, Tableau};
use crate::weyl::{act, coset_rep_of, Partition, Permutation};
use crate::word::{Direction, Word};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NNMatrix {
    n: usize,
    entries: Vec<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Row,
    Col,
}

impl NNMatrix {
    pub fn zero(n: usize) -> Self {
        NNMatrix {
            n,
            entries: vec![0; n * n],
        }
    }

    pub fn from_rows(rows: Vec<Vec<u64>>) -> Result<Self> {
        let n = rows.len();
        if let Some(r) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: r.len(),
            });
        }
        Ok(NNMatrix {
            n,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// `M_λ = diag(λ_1, …, λ_n)`.
    pub fn diag(lambda: &Partition) -> Self {
        let n = lambda.n();
        let mut m = Self::zero(n);
        for k in 0..n {
            m.entries[k * n + k] = lambda.parts()[k] as u64;
        }
        m
    }

    /// The elementary matrix `e_ij` (1-based).
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zero(n);
        m.entries[(i - 1) * n + (j - 1)] = 1;
        m
    }

    /// Parses `"r1c1,r1c2;r2c1,r2c2"`.
    pub fn parse(s: &str) -> Result<Self> {
        let rows = s
            .split(';')
            .map(|row| {
                row.split(',')
                    .map(|t| {
                        t.trim().parse::<u64>().map_err(|_| Error::Parse {
                            what: "matrix",
                            detail: s.to_string(),
                        })
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(rows)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `m_ij`, 1-based.
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries[(i - 1) * self.n + (j - 1)]
    }

    fn get_mut(&mut self, i: usize, j: usize) -> &mut u64 {
        &mut self.entries[(i - 1) * self.n + (j - 1)]
    }

    pub fn rows(&self) -> Vec<Vec<u64>> {
        self.entries.chunks(self.n.max(1)).map(|r| r.to_vec()).take(self.n).collect()
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        let mut t = Self::zero(n);
        for i in 1..=n {
            for j in 1..=n {
                *t.get_mut(j, i) = self.get(i, j);
            }
        }
        t
    }

    pub fn entry_sum(&self) -> u64 {
        self.entries.iter().sum()
    }

    pub fn is_lower_triangular(&self) -> bool {
        self.first_above_diagonal().is_none()
    }

    fn first_above_diagonal(&self) -> Option<(usize, usize)> {
        (1..=self.n)
            .flat_map(|i| (i + 1..=self.n).map(move |j| (i, j)))
            .find(|&(i, j)| self.get(i, j) != 0)
    }

    pub fn is_upper_triangular(&self) -> bool {
        self.transpose().is_lower_triangular()
    }

    /// `Some(λ)` when `self = M_λ` for a partition `λ`.
    pub fn as_diagonal_partition(&self) -> Option<Partition> {
        let n = self.n;
        let off_diagonal_zero = (1..=n).all(|i| (1..=n).all(|j| i == j || self.get(i, j) == 0));
        if !off_diagonal_zero {
            return None;
        }
        Partition::new((1..=n).map(|k| self.get(k, k) as i64).collect()).ok()
    }

    /// The top row `a` of the biword, i.e. the word carrying the row-side
    /// crystal structure.
    pub fn row_word(&self) -> Word {
        let n = self.n;
        let mut letters = Vec::with_capacity(self.entry_sum() as usize);
        for j in 1..=n {
            for i in (1..=n).rev() {
                letters.extend((0..self.get(i, j)).map(|_| i as u32));
            }
        }
        Word::new(n, letters).expect("letters lie in [n]")
    }

    /// The row word of the transpose.
    pub fn col_word(&self) -> Word {
        self.transpose().row_word()
    }

    /// Matrices of size `n` with the given entry sum whose support is
    /// allowed by `support(i, j)` (1-based).
    pub fn enumerate(n: usize, sum: u64, support: impl Fn(usize, usize) -> bool) -> Vec<NNMatrix> {
        let cells: Vec<(usize, usize)> = (1..=n)
            .flat_map(|i| (1..=n).map(move |j| (i, j)))
            .filter(|&(i, j)| support(i, j))
            .collect();
        let mut out = Vec::new();
        let mut m = Self::zero(n);
        fn rec(cells: &[(usize, usize)], remaining: u64, m: &mut NNMatrix, out: &mut Vec<NNMatrix>) {
            match cells.split_first() {
                None => {
                    if remaining == 0 {
                        out.push(m.clone());
                    }
                }
                Some((&(i, j), rest)) => {
                    let cap = if rest.is_empty() { remaining } else { 0 };
                    for v in cap..=remaining {
                        *m.get_mut(i, j) = v;
                        rec(rest, remaining - v, m, out);
                    }
                    *m.get_mut(i, j) = 0;
                }
            }
        }
        rec(&cells, sum, &mut m, &mut out);
        out
    }

    pub fn all_lower_triangular(n: usize, sum: u64) -> Vec<NNMatrix> {
        Self::enumerate(n, sum, |i, j| j <= i)
    }
}

impl fmt::Display for NNMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows = self.rows().iter().map(|r| r.iter().join(",")).join(";");
        f.write_str(&rows)
    }
}

impl Serialize for NNMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.rows().serialize(s)
    }
}

impl<'de> Deserialize<'de> for NNMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<u64>>::deserialize(d)?;
        NNMatrix::from_rows(rows).map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Biword {
    pub a: Vec<u32>,
    pub b: Vec<u32>,
}

/// `(a, b) ≤ (c, d)` iff `b < d`, or `b = d` and `a ≥ c`.
fn biword_leq(p: (u32, u32), q: (u32, u32)) -> bool {
    p.1 < q.1 || (p.1 == q.1 && p.0 >= q.0)
}

pub fn matrix_biword(m: &NNMatrix) -> Biword {
    let n = m.n();
    let mut bw = Biword { a: Vec::new(), b: Vec::new() };
    for j in 1..=n {
        for i in (1..=n).rev() {
            for _ in 0..m.get(i, j) {
                bw.a.push(i as u32);
                bw.b.push(j as u32);
            }
        }
    }
    bw
}

pub fn biword_matrix(bw: &Biword, n: usize) -> Result<NNMatrix> {
    if bw.a.len() != bw.b.len() {
        return Err(Error::DimensionMismatch {
            expected: bw.a.len(),
            found: bw.b.len(),
        });
    }
    let pairs: Vec<(u32, u32)> = bw.a.iter().copied().zip(bw.b.iter().copied()).collect();
    if let Some(k) = pairs.windows(2).position(|p| !biword_leq(p[0], p[1])) {
        return Err(Error::UnsortedBiword(k + 1));
    }
    count_pairs(n, &pairs)
}

fn count_pairs(n: usize, pairs: &[(u32, u32)]) -> Result<NNMatrix> {
    let mut m = NNMatrix::zero(n);
    for &(i, j) in pairs {
        for letter in [i, j] {
            if letter == 0 || letter as usize > n {
                return Err(Error::LetterOutOfRange { letter, n });
            }
        }
        *m.get_mut(i as usize, j as usize) += 1;
    }
    Ok(m)
}

/// Replaces the top row of the biword of `m` by `a` (same length).
fn with_row_word(m: &NNMatrix, a: &Word) -> NNMatrix {
    let bw = matrix_biword(m);
    let pairs: Vec<(u32, u32)> = a.letters().iter().copied().zip(bw.b).collect();
    count_pairs(m.n(), &pairs).expect("letters lie in [n]")
}

/// `x̃_i M = M(x̃_i a, b)` (row side) or `(x̃_i Mᵗ)ᵗ` (column side).
pub fn bicrystal_op(m: &NNMatrix, i: usize, dir: Direction, side: Side) -> Result<Option<NNMatrix>> {
    match side {
        Side::Row => Ok(m.row_word().op(i, dir)?.map(|a| with_row_word(m, &a))),
        Side::Col => {
            let t = m.transpose();
            Ok(bicrystal_op(&t, i, dir, Side::Row)?.map(|r| r.transpose()))
        }
    }
}

/// The side the diagonal operator acts on, chosen by the tensor rule on
/// `a ⊗ c`.
pub fn diagonal_side(m: &NNMatrix, i: usize, dir: Direction) -> Result<Side> {
    let (a, c) = (m.row_word(), m.col_word());
    if i == 0 || i >= m.n() {
        return Err(Error::IndexOutOfRange { index: i, n: m.n() });
    }
    let (phi_a, eps_c) = (a.phi(i), c.eps(i));
    let first = match dir {
        Direction::Raise => phi_a >= eps_c,
        Direction::Lower => phi_a > eps_c,
    };
    Ok(if first { Side::Row } else { Side::Col })
}

/// `ẽ_i`/`f̃_i` of the crystal `M ≡ a ⊗ c`.
pub fn diagonal_op(m: &NNMatrix, i: usize, dir: Direction) -> Result<Option<NNMatrix>> {
    let side = diagonal_side(m, i, dir)?;
    bicrystal_op(m, i, dir, side)
}

/// `κ(M) = (b_a, b_c)`.
pub fn rsk(m: &NNMatrix) -> (Tableau, Tableau) {
    (word_to_tableau(&m.row_word()), word_to_tableau(&m.col_word()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScriptStep {
    pub index: usize,
    pub side: Side,
}

/// Applies diagonal raises (smallest index first) until none applies; the
/// terminal matrix must be some `M_λ`.
pub fn raise_to_highest(m: &NNMatrix) -> Result<(Partition, Vec<ScriptStep>)> {
    let mut cur = m.clone();
    let mut script = Vec::new();
    'outer: loop {
        for i in 1..cur.n() {
            let side = diagonal_side(&cur, i, Direction::Raise)?;
            if let Some(next) = bicrystal_op(&cur, i, Direction::Raise, side)? {
                script.push(ScriptStep { index: i, side });
                cur = next;
                continue 'outer;
            }
        }
        break;
    }
    let lambda = cur
        .as_diagonal_partition()
        .ok_or_else(|| Error::Internal(format!("raise-extremal matrix {cur} is not of the form M_λ")))?;
    Ok((lambda, script))
}

/// Image of a lower-triangular matrix in `⨆ B^w(λ) × B̂_w(λ)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub lambda: Partition,
    #[serde(serialize_with = "serialize_one_line")]
    pub w: Permutation,
    #[serde(rename = "P")]
    pub p: Tableau,
    #[serde(rename = "Q")]
    pub q: Tableau,
}

fn serialize_one_line<S: serde::Serializer>(w: &Permutation, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&w.one_line())
}

pub fn classify_low(m: &NNMatrix) -> Result<Classification> {
    if let Some((i, j)) = m.first_above_diagonal() {
        return Err(Error::NotLowerTriangular(i, j));
    }
    let (p, q) = rsk(m);
    if p.shape() != q.shape() {
        return Err(Error::Internal(format!("RSK shapes differ for {m}")));
    }
    let lambda = p.shape().clone();
    let path_q = psi(&q, &lambda)?;
    let w = coset_rep_of(&lambda, path_q.iota_tau().0)?;
    let wl = act(&w, &lambda.as_weight());
    let path_p = psi(&p, &lambda)?;
    if !order_geq(path_p.iota_tau().1, &wl, &lambda)? {
        return Err(Error::Internal(format!("P ∉ B^w(λ) for {m}")));
    }
    Ok(Classification { lambda, w, p, q })
}
