//! Continuous crystals at rational scale: piecewise-linear paths with the
//! operators `ẽ_i^r`, the continuous tensor rule, paths `π_M` of rational
//! matrices and the continuous RSK image of lower-triangular matrices.
//!
//! `f̃_i^r` is written `ẽ_i^{-r}` throughout.

use std::fmt;

use num_traits::{Signed, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ls_path::{order_geq, LSPath};
use crate::matrix::{NNMatrix, Side};
use crate::rational::{common_denominator, format_q, parse_q, q, qi, serde_q, serde_q_mat, serde_q_vec, Q};
use crate::weyl::{coset_rep_of, Partition, Permutation, Weight};

/// Piecewise-linear path `[0,1] → ℚ^n` through `values[k]` at `times[k]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "PLPathRepr", into = "PLPathRepr")]
pub struct PLPath {
    times: Vec<Q>,
    values: Vec<Vec<Q>>,
}

#[derive(Serialize, Deserialize)]
struct PLPathRepr {
    #[serde(with = "serde_q_vec")]
    t: Vec<Q>,
    #[serde(with = "serde_q_mat")]
    v: Vec<Vec<Q>>,
}

impl From<PLPath> for PLPathRepr {
    fn from(p: PLPath) -> Self {
        PLPathRepr { t: p.times, v: p.values }
    }
}

impl TryFrom<PLPathRepr> for PLPath {
    type Error = Error;
    fn try_from(r: PLPathRepr) -> Result<Self> {
        PLPath::new(r.t, r.v)
    }
}

fn bad_path(detail: &str) -> Error {
    Error::Parse {
        what: "path",
        detail: detail.to_string(),
    }
}

fn axpy(a: Q, x: &[Q], y: &[Q]) -> Vec<Q> {
    x.iter().zip(y).map(|(x, y)| a * x + y).collect()
}

impl PLPath {
    /// Validates and normalizes.
    pub fn new(times: Vec<Q>, values: Vec<Vec<Q>>) -> Result<Self> {
        let p = Self::raw(times, values)?;
        Ok(p.normalized())
    }

    fn raw(times: Vec<Q>, values: Vec<Vec<Q>>) -> Result<Self> {
        if times.len() < 2 || times.len() != values.len() {
            return Err(bad_path("need matching times and values with at least two points"));
        }
        if times[0] != Q::zero() || times[times.len() - 1] != qi(1) {
            return Err(bad_path("times must run from 0 to 1"));
        }
        if times.windows(2).any(|w| w[0] >= w[1]) {
            return Err(bad_path("times must be strictly increasing"));
        }
        let n = values[0].len();
        if let Some(v) = values.iter().find(|v| v.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: v.len(),
            });
        }
        if values[0].iter().any(|c| !c.is_zero()) {
            return Err(bad_path("path must start at 0"));
        }
        Ok(PLPath { times, values })
    }

    /// `π_λ(t) = tλ`.
    pub fn straight(lambda: &[Q]) -> Self {
        PLPath {
            times: vec![Q::zero(), qi(1)],
            values: vec![vec![Q::zero(); lambda.len()], lambda.to_vec()],
        }
    }

    pub fn from_ls(pi: &LSPath) -> Self {
        PLPath {
            times: pi.cuts().to_vec(),
            values: pi.vertices(),
        }
        .normalized()
    }

    pub fn n(&self) -> usize {
        self.values[0].len()
    }

    pub fn times(&self) -> &[Q] {
        &self.times
    }

    pub fn values(&self) -> &[Vec<Q>] {
        &self.values
    }

    fn velocity(&self, k: usize) -> Vec<Q> {
        let dt = self.times[k + 1] - self.times[k];
        self.values[k + 1]
            .iter()
            .zip(&self.values[k])
            .map(|(b, a)| (b - a) / dt)
            .collect()
    }

    /// Drops interior breakpoints where the velocity does not change.
    pub fn normalized(&self) -> Self {
        let mut times = vec![self.times[0]];
        let mut values = vec![self.values[0].clone()];
        for k in 1..self.times.len() {
            if times.len() >= 2 {
                let last = times.len() - 1;
                let v_prev = PLPath::segment_velocity(times[last - 1], &values[last - 1], times[last], &values[last]);
                let v_next = PLPath::segment_velocity(times[last], &values[last], self.times[k], &self.values[k]);
                if v_prev == v_next {
                    times.pop();
                    values.pop();
                }
            }
            times.push(self.times[k]);
            values.push(self.values[k].clone());
        }
        PLPath { times, values }
    }

    fn segment_velocity(t0: Q, v0: &[Q], t1: Q, v1: &[Q]) -> Vec<Q> {
        v1.iter().zip(v0).map(|(b, a)| (b - a) / (t1 - t0)).collect()
    }

    pub fn endpoint(&self) -> &[Q] {
        &self.values[self.values.len() - 1]
    }

    pub fn eval(&self, t: Q) -> Vec<Q> {
        let k = match self.times.iter().position(|&s| s >= t) {
            Some(0) => return self.values[0].clone(),
            Some(k) => k,
            None => return self.endpoint().to_vec(),
        };
        let (t0, t1) = (self.times[k - 1], self.times[k]);
        let a = (t - t0) / (t1 - t0);
        let step: Vec<Q> = self.values[k].iter().zip(&self.values[k - 1]).map(|(b, c)| b - c).collect();
        axpy(a, &step, &self.values[k - 1])
    }

    /// Velocities of the segments of the normalized path.
    pub fn directions(&self) -> Vec<Vec<Q>> {
        let p = self.normalized();
        (0..p.times.len() - 1).map(|k| p.velocity(k)).collect()
    }

    pub fn scaled(&self, c: Q) -> Self {
        PLPath {
            times: self.times.clone(),
            values: self.values.iter().map(|v| v.iter().map(|x| x * c).collect()).collect(),
        }
        .normalized()
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i == 0 || i >= self.n() {
            return Err(Error::IndexOutOfRange { index: i, n: self.n() });
        }
        Ok(())
    }

    /// `⟨π(t_k), h_i⟩` at every breakpoint.
    pub fn levels(&self, i: usize) -> Vec<Q> {
        self.values.iter().map(|v| v[i - 1] - v[i]).collect()
    }

    fn min_level(&self, i: usize) -> Q {
        self.levels(i).into_iter().min().expect("nonempty")
    }

    pub fn eps(&self, i: usize) -> Q {
        -self.min_level(i)
    }

    pub fn phi(&self, i: usize) -> Q {
        let l = self.levels(i);
        l[l.len() - 1] - self.min_level(i)
    }

    /// `ẽ_i^r π`; `None` outside `−φ_i(π) ≤ r ≤ ε_i(π)`.
    pub fn cont_op(&self, i: usize, r: Q) -> Result<Option<PLPath>> {
        self.check_index(i)?;
        if r.is_zero() {
            return Ok(Some(self.normalized()));
        }
        let levels = self.levels(i);
        let m = *levels.iter().min().expect("nonempty");
        let end = levels[levels.len() - 1];
        let raising = r.is_positive();
        if (raising && r > -m) || (!raising && -r > end - m) {
            return Ok(None);
        }
        // the running minimum and the clamp are linear between crossings of
        // these levels
        let mut marks = levels.clone();
        marks.push(if raising { m + r } else { m - r });
        marks.sort();
        marks.dedup();

        let mut times = vec![self.times[0]];
        let mut values = vec![self.values[0].clone()];
        let mut lv = vec![levels[0]];
        for k in 0..self.times.len() - 1 {
            let (l0, l1) = (levels[k], levels[k + 1]);
            let (t0, t1) = (self.times[k], self.times[k + 1]);
            let mut inner: Vec<Q> = marks
                .iter()
                .filter(|&&c| (l0 - c) * (l1 - c) < Q::zero())
                .map(|&c| (c - l0) / (l1 - l0))
                .collect();
            inner.sort();
            let step: Vec<Q> = self.values[k + 1].iter().zip(&self.values[k]).map(|(b, a)| b - a).collect();
            for a in inner {
                times.push(t0 + a * (t1 - t0));
                values.push(axpy(a, &step, &self.values[k]));
                lv.push(l0 + a * (l1 - l0));
            }
            times.push(t1);
            values.push(self.values[k + 1].clone());
            lv.push(l1);
        }

        let shift: Vec<Q> = if raising {
            let mut running = lv[0];
            lv.iter()
                .map(|&l| {
                    running = running.min(l);
                    (m + r - running).max(Q::zero())
                })
                .collect()
        } else {
            let s = -r;
            let mut running = lv[lv.len() - 1];
            let mut out: Vec<Q> = lv
                .iter()
                .rev()
                .map(|&l| {
                    running = running.min(l);
                    -(s.min(running - m))
                })
                .collect();
            out.reverse();
            out
        };
        for (v, g) in values.iter_mut().zip(shift) {
            v[i - 1] += g;
            v[i] -= g;
        }
        Ok(Some(PLPath { times, values }.normalized()))
    }

    /// `π ∗ π′ ∗ ⋯`, each factor taking an equal share of `[0,1]`.
    pub fn concat(paths: &[PLPath]) -> Result<PLPath> {
        Ok(Self::concat_raw(paths)?.normalized())
    }

    fn concat_raw(paths: &[PLPath]) -> Result<PLPath> {
        let k = paths.len();
        if k == 0 {
            return Err(bad_path("nothing to concatenate"));
        }
        let n = paths[0].n();
        let mut times = vec![Q::zero()];
        let mut values = vec![vec![Q::zero(); n]];
        for (idx, p) in paths.iter().enumerate() {
            if p.n() != n {
                return Err(Error::DimensionMismatch { expected: n, found: p.n() });
            }
            let offset = values[values.len() - 1].clone();
            for (t, v) in p.times.iter().zip(&p.values).skip(1) {
                times.push((qi(idx as i64) + t) / qi(k as i64));
                values.push(axpy(qi(1), v, &offset));
            }
        }
        Ok(PLPath { times, values })
    }
}

impl fmt::Display for PLPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pts: Vec<String> = self
            .times
            .iter()
            .zip(&self.values)
            .map(|(t, v)| format!("{}:({})", format_q(t), v.iter().map(format_q).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "{}", pts.join(" "))
    }
}

/// Continuous tensor rule on `b_1 ⊗ b_2`.
pub fn cont_tensor_op(pair: (&PLPath, &PLPath), i: usize, r: Q) -> Result<Option<(PLPath, PLPath)>> {
    let (b1, b2) = pair;
    b1.check_index(i)?;
    b2.check_index(i)?;
    let d = b2.eps(i) - b1.phi(i);
    let zero = Q::zero();
    let r1 = r.max(d) - d.max(zero);
    let r2 = r.min(d) + (-d).max(zero);
    match (b1.cont_op(i, r1)?, b2.cont_op(i, r2)?) {
        (Some(a), Some(b)) => Ok(Some((a, b))),
        _ => Ok(None),
    }
}

/// Checks that `π` is a generalized LS datum for `λ`: every direction lies
/// in `Wλ` and the directions strictly decrease.
pub fn is_generalized_ls(pi: &PLPath, lambda: &[Q]) -> Result<bool> {
    let dirs = pi.directions();
    let mut sorted_lambda = lambda.to_vec();
    sorted_lambda.sort_by(|a, b| b.cmp(a));
    for d in &dirs {
        let mut s = d.clone();
        s.sort_by(|a, b| b.cmp(a));
        if s != sorted_lambda {
            return Ok(false);
        }
    }
    let (lam, scaled) = integral_orbit(lambda, &dirs)?;
    for w in scaled.windows(2) {
        if w[0] == w[1] || !order_geq(&w[0], &w[1], &lam)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Clears denominators of `λ` and of the given orbit elements together.
fn integral_orbit(lambda: &[Q], weights: &[Vec<Q>]) -> Result<(Partition, Vec<Weight>)> {
    let d = common_denominator(lambda.iter().chain(weights.iter().flatten()));
    let to_int = |v: &[Q]| -> Vec<i64> { v.iter().map(|x| (x * d).to_integer() as i64).collect() };
    let lam = Partition::new(to_int(lambda))?;
    Ok((lam, weights.iter().map(|w| Weight(to_int(w))).collect()))
}

/// Square matrix with nonnegative rational entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    n: usize,
    entries: Vec<Q>,
}

impl RatMatrix {
    pub fn zero(n: usize) -> Self {
        RatMatrix {
            n,
            entries: vec![Q::zero(); n * n],
        }
    }

    pub fn from_rows(rows: Vec<Vec<Q>>) -> Result<Self> {
        let n = rows.len();
        for (i, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: r.len() });
            }
            if let Some(j) = r.iter().position(|x| x.is_negative()) {
                return Err(Error::NegativeEntry(i + 1, j + 1));
            }
        }
        Ok(RatMatrix {
            n,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_nn(m: &NNMatrix) -> Self {
        let rows = m
            .rows()
            .into_iter()
            .map(|r| r.into_iter().map(|x| q(x as i128, 1)).collect())
            .collect();
        Self::from_rows(rows).expect("nonnegative square")
    }

    /// `diag(λ)`.
    pub fn diag(lambda: &[Q]) -> Self {
        let n = lambda.len();
        let mut m = Self::zero(n);
        for (k, x) in lambda.iter().enumerate() {
            m.entries[k * n + k] = *x;
        }
        m
    }

    /// Parses `"1/2,0;1,1/3"`.
    pub fn parse(s: &str) -> Result<Self> {
        let rows = s
            .split(';')
            .map(|row| row.split(',').map(parse_q).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(rows)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `m_ij`, 1-based.
    pub fn get(&self, i: usize, j: usize) -> Q {
        self.entries[(i - 1) * self.n + (j - 1)]
    }

    pub fn rows(&self) -> Vec<Vec<Q>> {
        (0..self.n).map(|i| self.entries[i * self.n..(i + 1) * self.n].to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        let mut t = Self::zero(n);
        for i in 1..=n {
            for j in 1..=n {
                t.entries[(j - 1) * n + (i - 1)] = self.get(i, j);
            }
        }
        t
    }

    pub fn scaled(&self, c: Q) -> Self {
        RatMatrix {
            n: self.n,
            entries: self.entries.iter().map(|x| x * c).collect(),
        }
    }

    pub fn entry_sum(&self) -> Q {
        self.entries.iter().sum()
    }

    pub fn denominator(&self) -> i128 {
        common_denominator(&self.entries)
    }

    pub fn row_sums(&self) -> Vec<Q> {
        self.rows().iter().map(|r| r.iter().sum()).collect()
    }

    pub fn col_sums(&self) -> Vec<Q> {
        self.transpose().row_sums()
    }

    fn first_above_diagonal(&self) -> Option<(usize, usize)> {
        (1..=self.n)
            .flat_map(|i| (i + 1..=self.n).map(move |j| (i, j)))
            .find(|&(i, j)| !self.get(i, j).is_zero())
    }

    pub fn is_lower_triangular(&self) -> bool {
        self.first_above_diagonal().is_none()
    }

    /// `Some(λ)` when `self = M_λ` for a dominant `λ`.
    pub fn as_dominant_diagonal(&self) -> Option<Vec<Q>> {
        let n = self.n;
        if (1..=n).any(|i| (1..=n).any(|j| i != j && !self.get(i, j).is_zero())) {
            return None;
        }
        let lam: Vec<Q> = (1..=n).map(|k| self.get(k, k)).collect();
        lam.windows(2).all(|w| w[0] >= w[1]).then_some(lam)
    }

    /// Integer matrix `N·M` when it is integral.
    pub fn to_nn_scaled(&self, factor: i128) -> Option<NNMatrix> {
        let rows = self
            .rows()
            .into_iter()
            .map(|r| {
                r.into_iter()
                    .map(|x| {
                        let y = x * factor;
                        y.is_integer().then(|| y.to_integer() as u64)
                    })
                    .collect::<Option<Vec<_>>>()
            })
            .collect::<Option<Vec<_>>>()?;
        NNMatrix::from_rows(rows).ok()
    }
}

impl fmt::Display for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows()
            .iter()
            .map(|r| r.iter().map(format_q).collect::<Vec<_>>().join(","))
            .collect();
        f.write_str(&rows.join(";"))
    }
}

impl Serialize for RatMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        serde_q_mat::serialize(&self.rows(), s)
    }
}

impl<'de> Deserialize<'de> for RatMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = serde_q_mat::deserialize(d)?;
        RatMatrix::from_rows(rows).map_err(serde::de::Error::custom)
    }
}

/// Axis segments of `π_M`: column by column, rows `n, …, 1`.
fn segments(m: &RatMatrix) -> Vec<Vec<Q>> {
    let n = m.n();
    let mut out = Vec::with_capacity(n * n);
    for j in 1..=n {
        for i in (1..=n).rev() {
            let mut v = vec![Q::zero(); n];
            v[i - 1] = m.get(i, j);
            out.push(v);
        }
    }
    out
}

fn path_of_segments(n: usize, segs: &[Vec<Q>]) -> PLPath {
    if segs.is_empty() {
        return PLPath::straight(&vec![Q::zero(); n]);
    }
    let k = qi(segs.len() as i64);
    let mut times = vec![Q::zero()];
    let mut values = vec![vec![Q::zero(); n]];
    for (idx, s) in segs.iter().enumerate() {
        times.push(qi(idx as i64 + 1) / k);
        let last = values[values.len() - 1].clone();
        values.push(axpy(qi(1), s, &last));
    }
    PLPath { times, values }
}

/// `π_M`, with zero segments dropped and the rest sharing `[0,1]` equally.
pub fn build_pi_m(m: &RatMatrix) -> PLPath {
    let segs: Vec<Vec<Q>> = segments(m).into_iter().filter(|s| s.iter().any(|x| !x.is_zero())).collect();
    path_of_segments(m.n(), &segs).normalized()
}

/// A parametrization of `π_M` in which column `j` occupies `[(j-1)/n, j/n]`.
fn column_tracking_path(m: &RatMatrix) -> PLPath {
    path_of_segments(m.n(), &segments(m))
}

fn read_columns(pi: &PLPath, n: usize) -> RatMatrix {
    let mut m = RatMatrix::zero(n);
    for j in 1..=n {
        let a = pi.eval(q(j as i128 - 1, n as i128));
        let b = pi.eval(q(j as i128, n as i128));
        for i in 1..=n {
            m.entries[(i - 1) * n + (j - 1)] = b[i - 1] - a[i - 1];
        }
    }
    m
}

/// `ε_i` of the row-side (or column-side) continuous crystal.
pub fn matrix_eps(m: &RatMatrix, i: usize, side: Side) -> Q {
    match side {
        Side::Row => column_tracking_path(m).eps(i),
        Side::Col => column_tracking_path(&m.transpose()).eps(i),
    }
}

pub fn matrix_phi(m: &RatMatrix, i: usize, side: Side) -> Q {
    match side {
        Side::Row => column_tracking_path(m).phi(i),
        Side::Col => column_tracking_path(&m.transpose()).phi(i),
    }
}

/// `ẽ_i^r M` on the row side, `(ẽ_i^r Mᵗ)ᵗ` on the column side.
pub fn cont_matrix_op(m: &RatMatrix, i: usize, r: Q, side: Side) -> Result<Option<RatMatrix>> {
    match side {
        Side::Row => {
            let pi = column_tracking_path(m);
            Ok(pi.cont_op(i, r)?.map(|p| read_columns(&p, m.n())))
        }
        Side::Col => Ok(cont_matrix_op(&m.transpose(), i, r, Side::Row)?.map(|t| t.transpose())),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContStep {
    pub index: usize,
    pub side: Side,
    #[serde(with = "serde_q")]
    pub r: Q,
}

/// Step budget for [`cont_raise_to_highest`]: `n² · N · (N · Σ m_ij)` with
/// `N` the common denominator.
pub fn raise_budget(m: &RatMatrix) -> u64 {
    let n = m.n() as i128;
    let d = m.denominator();
    let sum = (m.entry_sum() * d).to_integer();
    (n * n * d * sum.max(1)) as u64
}

/// Alternately exhausts row-side and column-side raises, each by the full
/// `ε_i`, until both sides are highest weight; the result is `M_λ`.
pub fn cont_raise_to_highest(m: &RatMatrix) -> Result<(Vec<Q>, Vec<ContStep>)> {
    let n = m.n();
    let budget = raise_budget(m);
    let mut cur = m.clone();
    let mut script = Vec::new();
    loop {
        let mut progressed = false;
        for side in [Side::Row, Side::Col] {
            loop {
                let mut any = false;
                for i in 1..n {
                    let e = matrix_eps(&cur, i, side);
                    if e.is_zero() {
                        continue;
                    }
                    if script.len() as u64 >= budget {
                        return Err(Error::BudgetExhausted {
                            budget,
                            state: cur.to_string(),
                        });
                    }
                    cur = cont_matrix_op(&cur, i, e, side)?
                        .ok_or_else(|| Error::Internal(format!("full raise by ε_{i} was null on {cur}")))?;
                    script.push(ContStep { index: i, side, r: e });
                    any = true;
                    progressed = true;
                }
                if !any {
                    break;
                }
            }
        }
        if !progressed {
            break;
        }
    }
    let lambda = cur
        .as_dominant_diagonal()
        .ok_or_else(|| Error::Internal(format!("raise-extremal matrix {cur} is not of the form M_λ")))?;
    Ok((lambda, script))
}

/// Replays the inverse of the `side` part of a raising script on `π_λ`.
pub fn replay_side(lambda: &[Q], script: &[ContStep], side: Side) -> Result<PLPath> {
    let mut pi = PLPath::straight(lambda);
    for step in script.iter().rev().filter(|s| s.side == side) {
        pi = pi
            .cont_op(step.index, -step.r)?
            .ok_or_else(|| Error::Internal(format!("replaying lowering by {} at {} was null", format_q(&step.r), step.index)))?;
    }
    Ok(pi)
}

#[derive(Clone, Debug, Serialize)]
pub struct Main2Report {
    pub matrix: RatMatrix,
    #[serde(with = "serde_q_vec")]
    pub lambda: Vec<Q>,
    #[serde(serialize_with = "serialize_one_line")]
    pub w: Permutation,
    pub first: PLPath,
    pub second: PLPath,
    /// `τ(first) ≥ ι(second)`.
    pub membership: bool,
    /// Endpoints equal the row and column sums.
    pub weights_match: bool,
    /// Both paths are generalized LS data for `λ`.
    pub ls_data: bool,
    pub ok: bool,
}

fn serialize_one_line<S: serde::Serializer>(w: &Permutation, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&w.one_line())
}

pub fn verify_main2(m: &RatMatrix) -> Result<Main2Report> {
    if let Some((i, j)) = m.first_above_diagonal() {
        return Err(Error::NotLowerTriangular(i, j));
    }
    let (lambda, script) = cont_raise_to_highest(m)?;
    let first = replay_side(&lambda, &script, Side::Row)?;
    let second = replay_side(&lambda, &script, Side::Col)?;
    let tau = first.directions().pop().expect("nonempty");
    let iota = second.directions().swap_remove(0);
    let (lam, ws) = integral_orbit(&lambda, &[tau, iota])?;
    let w = coset_rep_of(&lam, &ws[1])?;
    let membership = order_geq(&ws[0], &ws[1], &lam)?;
    let weights_match = first.endpoint() == m.row_sums().as_slice() && second.endpoint() == m.col_sums().as_slice();
    let ls_data = is_generalized_ls(&first, &lambda)? && is_generalized_ls(&second, &lambda)?;
    Ok(Main2Report {
        matrix: m.clone(),
        lambda,
        w,
        first,
        second,
        membership,
        weights_match,
        ls_data,
        ok: membership && weights_match && ls_data,
    })
}

/// Random dominant weight with entries in `{0, 1/den, …, max/den}`.
pub fn random_dominant(rng: &mut impl Rng, n: usize, max: i128, den: i128) -> Vec<Q> {
    let mut v: Vec<Q> = (0..n).map(|_| q(rng.gen_range(0..=max), den)).collect();
    v.sort_by(|a, b| b.cmp(a));
    v
}

/// A path reached from `π_λ` by `steps` random continuous lowerings.
pub fn random_path(rng: &mut impl Rng, lambda: &[Q], steps: usize, den: i128) -> PLPath {
    let n = lambda.len();
    let mut pi = PLPath::straight(lambda);
    if n < 2 {
        return pi;
    }
    for _ in 0..steps {
        let i = rng.gen_range(1..n);
        let phi = pi.phi(i);
        if phi.is_zero() {
            continue;
        }
        let s = phi.min(q(rng.gen_range(1..=2 * den), den));
        pi = pi.cont_op(i, -s).expect("index in range").expect("s ≤ φ");
    }
    pi
}

/// Random matrix with entries in `{0, 1/den, …, max/den}`, optionally
/// lower triangular.
pub fn random_rat_matrix(rng: &mut impl Rng, n: usize, max: i128, den: i128, lower: bool) -> RatMatrix {
    let rows = (1..=n)
        .map(|i| {
            (1..=n)
                .map(|j| if lower && j > i { Q::zero() } else { q(rng.gen_range(0..=max), den) })
                .collect()
        })
        .collect();
    RatMatrix::from_rows(rows).expect("nonnegative square")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{bicrystal_op, classify_low, rsk};
    use crate::ls_path::psi;
    use crate::word::Direction;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn qv(v: &[(i128, i128)]) -> Vec<Q> {
        v.iter().map(|&(a, b)| q(a, b)).collect()
    }

    fn pi_lambda(l: &[i64]) -> PLPath {
        PLPath::straight(&l.iter().map(|&x| qi(x)).collect::<Vec<_>>())
    }

    #[test]
    fn op_examples() {
        let p = pi_lambda(&[1, 0]);
        assert_eq!(p.cont_op(1, q(1, 3)).unwrap(), None);
        let lowered = p.cont_op(1, q(-1, 2)).unwrap().unwrap();
        assert_eq!(lowered.times(), &[qi(0), q(1, 2), qi(1)]);
        assert_eq!(lowered.endpoint(), qv(&[(1, 2), (1, 2)]).as_slice());
        assert_eq!(lowered.cont_op(1, q(1, 2)).unwrap(), Some(p.clone()));
        assert_eq!(p.cont_op(1, qi(0)).unwrap(), Some(p.clone()));
        assert!(p.cont_op(2, qi(1)).is_err());
        assert_eq!(p.cont_op(1, q(-3, 2)).unwrap(), None);
    }

    #[test]
    fn tensor_examples() {
        let p = pi_lambda(&[1, 0]);
        assert_eq!(cont_tensor_op((&p, &p), 1, qi(0)).unwrap(), Some((p.clone(), p.clone())));
        let (a, b) = cont_tensor_op((&p, &p), 1, qi(-1)).unwrap().unwrap();
        assert_eq!(a, p.cont_op(1, qi(-1)).unwrap().unwrap());
        assert_eq!(b, p);
        assert_eq!(cont_tensor_op((&p, &p), 1, qi(1)).unwrap(), None);
        assert_eq!(cont_tensor_op((&p, &p), 1, qi(-3)).unwrap(), None);
    }

    #[test]
    fn pi_m_examples() {
        let m = RatMatrix::diag(&qv(&[(1, 1), (0, 1)]));
        assert_eq!(build_pi_m(&m), pi_lambda(&[1, 0]));
        let m = RatMatrix::diag(&qv(&[(1, 1), (1, 1)]));
        let p = build_pi_m(&m);
        assert_eq!(p.directions(), vec![qv(&[(2, 1), (0, 1)]), qv(&[(0, 1), (2, 1)])]);
        let m = RatMatrix::parse("0,0;1/2,0").unwrap();
        assert_eq!(build_pi_m(&m), PLPath::straight(&qv(&[(0, 1), (1, 2)])));
    }

    #[test]
    fn raise_examples() {
        let lam = qv(&[(2, 1), (1, 2)]);
        assert_eq!(cont_raise_to_highest(&RatMatrix::diag(&lam)).unwrap(), (lam, vec![]));
        let m = RatMatrix::parse("0,0;1/2,0").unwrap();
        let (lam, script) = cont_raise_to_highest(&m).unwrap();
        assert_eq!(lam, qv(&[(1, 2), (0, 1)]));
        assert_eq!(script, vec![ContStep { index: 1, side: Side::Row, r: q(1, 2) }]);
    }

    #[test]
    fn main2_examples() {
        let lam = qv(&[(3, 2), (1, 2)]);
        let r = verify_main2(&RatMatrix::diag(&lam)).unwrap();
        assert!(r.ok);
        assert_eq!(r.w, Permutation::identity(2));
        assert_eq!((r.first.clone(), r.second.clone()), (PLPath::straight(&lam), PLPath::straight(&lam)));
        assert!(matches!(
            verify_main2(&RatMatrix::parse("0,1;0,0").unwrap()),
            Err(Error::NotLowerTriangular(1, 2))
        ));
    }

    /// `(1/2)e_21` against the integer classification of `e_21`.
    #[test]
    fn main2_half_e21_scales_integer_answer() {
        let e21 = NNMatrix::unit(2, 2, 1);
        let c = classify_low(&e21).unwrap();
        let r = verify_main2(&RatMatrix::from_nn(&e21).scaled(q(1, 2))).unwrap();
        assert!(r.ok);
        assert_eq!(r.w, c.w);
        let half = q(1, 2);
        assert_eq!(r.first, PLPath::from_ls(&psi(&c.p, &c.lambda).unwrap()).scaled(half));
        assert_eq!(r.second, PLPath::from_ls(&psi(&c.q, &c.lambda).unwrap()).scaled(half));
    }

    /// With `r = ±1` the continuous operator on an LS path is Littelmann's.
    #[test]
    fn integer_steps_match_ls_operators() {
        for lambda in [vec![2, 1, 0], vec![2, 0, 0], vec![3, 1, 0]] {
            let lambda = Partition::new(lambda).unwrap();
            for pi in crate::ls_path::generate_by_lowering(&lambda) {
                let pl = PLPath::from_ls(&pi);
                for i in 1..3 {
                    for (dir, r) in [(Direction::Raise, qi(1)), (Direction::Lower, qi(-1))] {
                        let expected = pi.op(i, dir).unwrap().map(|p| PLPath::from_ls(&p));
                        assert_eq!(pl.cont_op(i, r).unwrap(), expected, "{pi} i={i} {dir:?}");
                    }
                    assert_eq!(pl.eps(i), qi(pi.eps(i)));
                    assert_eq!(pl.phi(i), qi(pi.phi(i)));
                }
            }
        }
    }

    /// With `r = ±1` the matrix-level operator is the integer bicrystal one.
    #[test]
    fn integer_matrix_steps_match_bicrystal() {
        for m in NNMatrix::enumerate(3, 3, |_, _| true) {
            let rm = RatMatrix::from_nn(&m);
            for i in 1..3 {
                for side in [Side::Row, Side::Col] {
                    for (dir, r) in [(Direction::Raise, qi(1)), (Direction::Lower, qi(-1))] {
                        let expected = bicrystal_op(&m, i, dir, side).unwrap().map(|x| RatMatrix::from_nn(&x));
                        assert_eq!(cont_matrix_op(&rm, i, r, side).unwrap(), expected);
                    }
                }
            }
        }
    }

    #[test]
    fn main2_on_integer_matrices_matches_rsk() {
        for s in 0..=3 {
            for m in NNMatrix::all_lower_triangular(3, s) {
                let r = verify_main2(&RatMatrix::from_nn(&m)).unwrap();
                assert!(r.ok, "{m}");
                let c = classify_low(&m).unwrap();
                let (p, qq) = rsk(&m);
                assert_eq!(r.w, c.w);
                assert_eq!(r.first, PLPath::from_ls(&psi(&p, &c.lambda).unwrap()));
                assert_eq!(r.second, PLPath::from_ls(&psi(&qq, &c.lambda).unwrap()));
            }
        }
    }

    #[test]
    fn group_law_and_admissibility() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let n = rng.gen_range(2..=3);
            let den = rng.gen_range(1..=4);
            let lam = random_dominant(&mut rng, n, 3 * den, den);
            let pi = random_path(&mut rng, &lam, 4, den);
            let i = rng.gen_range(1..n);
            let (e, f) = (pi.eps(i), pi.phi(i));
            assert!(pi.cont_op(i, e).unwrap().is_some());
            assert!(pi.cont_op(i, -f).unwrap().is_some());
            assert!(pi.cont_op(i, e + q(1, 5)).unwrap().is_none());
            assert!(pi.cont_op(i, -f - q(1, 5)).unwrap().is_none());
            let r = q(rng.gen_range(-8..=8), den);
            let s = q(rng.gen_range(-8..=8), den);
            if let Some(a) = pi.cont_op(i, r).unwrap() {
                if let Some(b) = a.cont_op(i, s).unwrap() {
                    assert_eq!(pi.cont_op(i, r + s).unwrap(), Some(b));
                }
            }
            assert!(is_generalized_ls(&pi, &lam).unwrap(), "{pi}");
        }
    }

    #[test]
    fn tensor_rule_matches_concatenation() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let n = 3;
            let den = rng.gen_range(1..=3);
            let la = random_dominant(&mut rng, n, 2 * den, den);
            let a = random_path(&mut rng, &la, 3, den);
            let lb = random_dominant(&mut rng, n, 2 * den, den);
            let b = random_path(&mut rng, &lb, 3, den);
            let i = rng.gen_range(1..n);
            let r = q(rng.gen_range(-6..=6), den);
            let cat = PLPath::concat(&[a.clone(), b.clone()]).unwrap();
            let via_pair = cont_tensor_op((&a, &b), i, r)
                .unwrap()
                .map(|(x, y)| PLPath::concat(&[x, y]).unwrap());
            assert_eq!(cat.cont_op(i, r).unwrap(), via_pair);
        }
    }

    #[test]
    fn json_shape() {
        let p = PLPath::new(
            vec![qi(0), q(1, 3), qi(1)],
            vec![qv(&[(0, 1), (0, 1)]), qv(&[(1, 3), (0, 1)]), qv(&[(1, 3), (1, 3)])],
        )
        .unwrap();
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(json, r#"{"t":["0","1/3","1"],"v":[["0","0"],["1/3","0"],["1/3","1/3"]]}"#);
        assert_eq!(serde_json::from_str::<PLPath>(&json).unwrap(), p);
        assert!(serde_json::from_str::<PLPath>(r#"{"t":["0","1"],"v":[["1"],["2"]]}"#).is_err());
        let m = RatMatrix::parse("1/2,0;1,2/4").unwrap();
        assert_eq!(serde_json::to_string(&m).unwrap(), r#"[["1/2","0"],["1","1/2"]]"#);
        assert!(RatMatrix::parse("-1,0;0,0").is_err());
    }

    #[test]
    fn normalization_merges_collinear_pieces() {
        let p = PLPath::new(
            vec![qi(0), q(1, 2), qi(1)],
            vec![qv(&[(0, 1), (0, 1)]), qv(&[(1, 2), (0, 1)]), qv(&[(1, 1), (0, 1)])],
        )
        .unwrap();
        assert_eq!(p, pi_lambda(&[1, 0]));
    }
}
