//! Lakshmibai–Seshadri paths of class `λ`.
//!
//! A path is stored as its directions `ν_1 > ν_2 > ⋯ > ν_s` in the orbit
//! `Wλ` together with cut points `0 = a_0 < a_1 < ⋯ < a_s = 1`; on
//! `[a_{k−1}, a_k]` the path moves with velocity `ν_k`. The orbit order puts
//! `λ` at the bottom and `w_0λ` at the top, so `ι(π) = ν_1` is the largest
//! direction and `τ(π) = ν_s` the smallest.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{format_q, q, serde_q_vec, Q};
use crate::tableau::Tableau;
use crate::weyl::{orbit, Partition, Weight};
use crate::word::Direction;

fn check_in_orbit(nu: &Weight, lambda: &Partition) -> Result<()> {
    if nu.n() != lambda.n() || nu.sorted_decreasing() != lambda.parts() {
        return Err(Error::NotInOrbit(nu.0.clone(), lambda.parts().to_vec()));
    }
    Ok(())
}

/// Reflections `ν ↦ s_β ν` with `⟨ν, h_β⟩ < 0`, as `(a, b, pairing)`.
fn raising_reflections(nu: &Weight) -> impl Iterator<Item = (usize, usize, i64)> + '_ {
    let n = nu.n();
    (1..=n)
        .flat_map(move |a| (a + 1..=n).map(move |b| (a, b)))
        .filter_map(move |(a, b)| {
            let p = nu.root_pairing(a, b);
            (p < 0).then_some((a, b, p))
        })
}

fn longest_chain(x: &Weight, target: &Weight, memo: &mut HashMap<Weight, Option<usize>>) -> Option<usize> {
    if x == target {
        return Some(0);
    }
    if let Some(&v) = memo.get(x) {
        return v;
    }
    let best = raising_reflections(x)
        .filter_map(|(a, b, _)| longest_chain(&x.reflect(a, b), target, memo).map(|d| d + 1))
        .max();
    memo.insert(x.clone(), best);
    best
}

/// `dist(ν, μ)`: the maximal length of a reflection chain from `ν` down to
/// `μ`, or `None` when `ν ≱ μ`.
pub fn dist(nu: &Weight, mu: &Weight, lambda: &Partition) -> Result<Option<usize>> {
    check_in_orbit(nu, lambda)?;
    check_in_orbit(mu, lambda)?;
    Ok(longest_chain(nu, mu, &mut HashMap::new()))
}

/// `ν ≥ μ` in the orbit order of `Wλ`.
pub fn order_geq(nu: &Weight, mu: &Weight, lambda: &Partition) -> Result<bool> {
    Ok(dist(nu, mu, lambda)?.is_some())
}

/// Whether an `a`-chain joins `ν > μ`: a saturated chain whose steps
/// `x → s_β x` satisfy `a·⟨x, h_β⟩ ∈ ℤ`.
fn has_a_chain(nu: &Weight, mu: &Weight, a: &Q, lambda: &Partition) -> bool {
    fn search(x: &Weight, mu: &Weight, a: &Q, lambda: &Partition, memo: &mut HashMap<Weight, bool>) -> bool {
        if x == mu {
            return true;
        }
        if let Some(&v) = memo.get(x) {
            return v;
        }
        let found = raising_reflections(x).any(|(ra, rb, p)| {
            let y = x.reflect(ra, rb);
            (a * Q::from_integer(p as i128)).is_integer()
                && dist(x, &y, lambda).ok().flatten() == Some(1)
                && order_geq(&y, mu, lambda).unwrap_or(false)
                && search(&y, mu, a, lambda, memo)
        });
        memo.insert(x.clone(), found);
        found
    }
    nu != mu && search(nu, mu, a, lambda, &mut HashMap::new())
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LSPath {
    lambda: Partition,
    nus: Vec<Weight>,
    cuts: Vec<Q>,
}

impl LSPath {
    /// `π_λ(t) = tλ`.
    pub fn straight(lambda: &Partition) -> Self {
        LSPath {
            lambda: lambda.clone(),
            nus: vec![lambda.as_weight()],
            cuts: vec![Q::zero(), Q::one()],
        }
    }

    /// Validates the data of an LS path of class `λ`.
    pub fn validate(nus: Vec<Weight>, cuts: Vec<Q>, lambda: &Partition) -> Result<Self> {
        if nus.is_empty() || cuts.len() != nus.len() + 1 {
            return Err(Error::BadCuts);
        }
        if !cuts[0].is_zero() || !cuts[cuts.len() - 1].is_one() || cuts.windows(2).any(|c| c[0] >= c[1]) {
            return Err(Error::BadCuts);
        }
        for nu in &nus {
            check_in_orbit(nu, lambda)?;
        }
        for k in 1..nus.len() {
            if nus[k - 1] == nus[k] || !order_geq(&nus[k - 1], &nus[k], lambda)? {
                return Err(Error::UnorderedDirections(k));
            }
            if !has_a_chain(&nus[k - 1], &nus[k], &cuts[k], lambda) {
                return Err(Error::MissingChain {
                    cut: format_q(&cuts[k]),
                    from: nus[k - 1].0.clone(),
                    to: nus[k].0.clone(),
                });
            }
        }
        Ok(LSPath {
            lambda: lambda.clone(),
            nus,
            cuts,
        })
    }

    pub fn lambda(&self) -> &Partition {
        &self.lambda
    }

    pub fn directions(&self) -> &[Weight] {
        &self.nus
    }

    pub fn cuts(&self) -> &[Q] {
        &self.cuts
    }

    pub fn n(&self) -> usize {
        self.lambda.n()
    }

    /// `(ι(π), τ(π))`.
    pub fn iota_tau(&self) -> (&Weight, &Weight) {
        (&self.nus[0], &self.nus[self.nus.len() - 1])
    }

    /// `π(a_k)` for every cut point.
    pub fn vertices(&self) -> Vec<Vec<Q>> {
        let n = self.n();
        let mut out = Vec::with_capacity(self.cuts.len());
        let mut p = vec![Q::zero(); n];
        out.push(p.clone());
        for (k, nu) in self.nus.iter().enumerate() {
            let dt = self.cuts[k + 1] - self.cuts[k];
            for (c, v) in p.iter_mut().zip(&nu.0) {
                *c += dt * Q::from_integer(*v as i128);
            }
            out.push(p.clone());
        }
        out
    }

    /// `π(1)`, which is the weight of the path.
    pub fn endpoint(&self) -> Weight {
        let end = self.vertices().pop().expect("nonempty");
        Weight(
            end.iter()
                .map(|c| {
                    assert!(c.is_integer(), "LS paths end at integral weights");
                    c.to_integer() as i64
                })
                .collect(),
        )
    }

    /// `⟨π(a_k), h_i⟩` at every cut point.
    fn levels(&self, i: usize) -> Vec<Q> {
        let mut out = Vec::with_capacity(self.cuts.len());
        let mut level = Q::zero();
        out.push(level);
        for (k, nu) in self.nus.iter().enumerate() {
            level += (self.cuts[k + 1] - self.cuts[k]) * Q::from_integer(nu.pairing(i) as i128);
            out.push(level);
        }
        out
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i == 0 || i >= self.n() {
            return Err(Error::IndexOutOfRange { index: i, n: self.n() });
        }
        Ok(())
    }

    /// `h = min_t ⟨π(t), h_i⟩`; attained at a vertex.
    fn min_level(levels: &[Q]) -> Result<i64> {
        let h = *levels.iter().min().expect("nonempty");
        if !h.is_integer() {
            return Err(Error::Internal(format!("non-integral minimum {}", format_q(&h))));
        }
        Ok(h.to_integer() as i64)
    }

    pub fn eps(&self, i: usize) -> i64 {
        -Self::min_level(&self.levels(i)).expect("LS path levels are integral")
    }

    pub fn phi(&self, i: usize) -> i64 {
        self.endpoint().pairing(i) + self.eps(i)
    }

    /// Reflects the velocities on `[t0, t1]` by `s_i`; `t0`, `t1` must lie in
    /// `[0, 1]` and are inserted as cut points when interior to a segment.
    fn reflect_window(&self, i: usize, t0: Q, t1: Q) -> LSPath {
        let mut cuts = vec![Q::zero()];
        let mut nus = Vec::new();
        for (k, nu) in self.nus.iter().enumerate() {
            let (start, end) = (self.cuts[k], self.cuts[k + 1]);
            let mut pieces = vec![start];
            for t in [t0, t1] {
                if start < t && t < end {
                    pieces.push(t);
                }
            }
            pieces.push(end);
            for w in pieces.windows(2) {
                let inside = t0 <= w[0] && w[1] <= t1;
                nus.push(if inside { nu.reflect(i, i + 1) } else { nu.clone() });
                cuts.push(w[1]);
            }
        }
        let mut path = LSPath {
            lambda: self.lambda.clone(),
            nus,
            cuts,
        };
        path.normalize();
        path
    }

    /// Merges adjacent segments with equal directions.
    fn normalize(&mut self) {
        let mut nus: Vec<Weight> = Vec::with_capacity(self.nus.len());
        let mut cuts = vec![self.cuts[0]];
        for (k, nu) in self.nus.iter().enumerate() {
            if nus.last() == Some(nu) {
                *cuts.last_mut().expect("nonempty") = self.cuts[k + 1];
            } else {
                nus.push(nu.clone());
                cuts.push(self.cuts[k + 1]);
            }
        }
        self.nus = nus;
        self.cuts = cuts;
    }

    /// Littelmann's root operators.
    ///
    /// Raising: `t_1` is the first time the minimum `h` is attained and `t_0`
    /// the last time before `t_1` at level `h+1`. Lowering: `t_0` is the last
    /// time `h` is attained and `t_1` the first time after `t_0` at level
    /// `h+1`. The segment between is reflected by `s_i`; the tail is
    /// translated, which needs no bookkeeping in the direction/cut encoding.
    pub fn op(&self, i: usize, dir: Direction) -> Result<Option<LSPath>> {
        self.check_index(i)?;
        let levels = self.levels(i);
        let h = Self::min_level(&levels)?;
        let hq = Q::from_integer(h as i128);
        let target = hq + Q::one();
        let slope = |k: usize| Q::from_integer(self.nus[k].pairing(i) as i128);
        match dir {
            Direction::Raise => {
                if h == 0 {
                    return Ok(None);
                }
                let k1 = levels.iter().position(|l| *l == hq).expect("minimum attained");
                let t1 = self.cuts[k1];
                let mut t0 = None;
                for k in (0..k1).rev() {
                    let (l0, l1) = (levels[k], levels[k + 1]);
                    if l1 == target {
                        t0 = Some(self.cuts[k + 1]);
                        break;
                    }
                    if (l0 - target).signum() * (l1 - target).signum() < Q::zero() {
                        t0 = Some(self.cuts[k] + (target - l0) / slope(k));
                        break;
                    }
                    if l0 == target {
                        t0 = Some(self.cuts[k]);
                        break;
                    }
                }
                let t0 = t0.ok_or_else(|| Error::Internal("level h+1 not attained before t_1".into()))?;
                Ok(Some(self.reflect_window(i, t0, t1)))
            }
            Direction::Lower => {
                let end = levels[levels.len() - 1];
                if end - hq < Q::one() {
                    return Ok(None);
                }
                let k0 = levels.iter().rposition(|l| *l == hq).expect("minimum attained");
                let t0 = self.cuts[k0];
                let mut t1 = None;
                for k in k0..self.nus.len() {
                    let (l0, l1) = (levels[k], levels[k + 1]);
                    if l0 == target {
                        t1 = Some(self.cuts[k]);
                        break;
                    }
                    if (l0 - target).signum() * (l1 - target).signum() < Q::zero() {
                        t1 = Some(self.cuts[k] + (target - l0) / slope(k));
                        break;
                    }
                    if l1 == target {
                        t1 = Some(self.cuts[k + 1]);
                        break;
                    }
                }
                let t1 = t1.ok_or_else(|| Error::Internal("level h+1 not attained after t_0".into()))?;
                Ok(Some(self.reflect_window(i, t0, t1)))
            }
        }
    }

    pub fn raise(&self, i: usize) -> Result<Option<LSPath>> {
        self.op(i, Direction::Raise)
    }

    pub fn lower(&self, i: usize) -> Result<Option<LSPath>> {
        self.op(i, Direction::Lower)
    }

    /// Applies `f̃_{script[k]}` for `k` from last to first.
    pub fn replay_lowering(&self, script: &[usize]) -> Result<LSPath> {
        let mut p = self.clone();
        for &i in script.iter().rev() {
            p = p
                .lower(i)?
                .ok_or_else(|| Error::Internal(format!("f̃_{i} vanished on a path")))?;
        }
        Ok(p)
    }

    /// Raises to `π_λ`, smallest applicable index first.
    pub fn raise_script(&self) -> Vec<usize> {
        let mut p = self.clone();
        let mut script = Vec::new();
        while let Some(i) = (1..self.n()).find(|&i| p.eps(i) > 0) {
            p = p.raise(i).expect("index in range").expect("ε_i > 0");
            script.push(i);
        }
        script
    }
}

impl fmt::Display for LSPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nus: Vec<String> = self.nus.iter().map(|w| w.to_string()).collect();
        let cuts: Vec<String> = self.cuts.iter().map(format_q).collect();
        write!(f, "({}; {})", nus.join(", "), cuts.join(", "))
    }
}

#[derive(Serialize, Deserialize)]
struct LSPathRepr {
    nus: Vec<Vec<i64>>,
    #[serde(with = "serde_q_vec")]
    cuts: Vec<Q>,
}

impl Serialize for LSPath {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        LSPathRepr {
            nus: self.nus.iter().map(|w| w.0.clone()).collect(),
            cuts: self.cuts.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LSPath {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let r = LSPathRepr::deserialize(d)?;
        let first = r.nus.first().ok_or_else(|| D::Error::custom("empty direction list"))?;
        let mut parts = first.clone();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        let lambda = Partition::new(parts).map_err(D::Error::custom)?;
        LSPath::validate(r.nus.into_iter().map(Weight).collect(), r.cuts, &lambda).map_err(D::Error::custom)
    }
}

/// `ψ_λ`: the crystal isomorphism `B(λ) → 𝐁(λ)` with `v_λ ↦ π_λ`.
pub fn psi(t: &Tableau, lambda: &Partition) -> Result<LSPath> {
    if t.shape() != lambda {
        return Err(Error::ShapeMismatch(format!("tableau of shape {} vs class {lambda}", t.shape())));
    }
    LSPath::straight(lambda).replay_lowering(&t.raise_script())
}

/// `ψ_λ^{-1}`.
pub fn psi_inv(pi: &LSPath) -> Result<Tableau> {
    Tableau::highest(pi.lambda()).replay_lowering(&pi.raise_script())
}

/// `𝐁(λ)` generated from `π_λ` by lowering operators.
pub fn generate_by_lowering(lambda: &Partition) -> BTreeSet<LSPath> {
    let start = LSPath::straight(lambda);
    let mut seen = BTreeSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(p) = queue.pop_front() {
        for i in 1..lambda.n() {
            if let Some(next) = p.lower(i).expect("index in range") {
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
    }
    seen
}

/// Every LS path of class `λ`, found by validating all candidate
/// direction chains and cut sequences. Cut points of an LS path have
/// denominators dividing some `⟨ν, h_β⟩`, hence at most `λ_1 − λ_n`.
pub fn enumerate_ls_paths(lambda: &Partition) -> BTreeSet<LSPath> {
    let n = lambda.n();
    let span = if n == 0 { 0 } else { lambda.parts()[0] - lambda.parts()[n - 1] };
    let candidates: Vec<Q> = {
        let mut c: BTreeSet<Q> = BTreeSet::new();
        for den in 1..=span.max(1) as i128 {
            for num in 1..den {
                c.insert(q(num, den));
            }
        }
        c.into_iter().collect()
    };
    let elems: Vec<Weight> = orbit(lambda).into_iter().collect();
    let mut out = BTreeSet::new();

    // strictly decreasing chains of directions
    fn chains(elems: &[Weight], lambda: &Partition, prefix: &mut Vec<Weight>, out: &mut Vec<Vec<Weight>>) {
        out.push(prefix.clone());
        let last = prefix.last().cloned();
        for e in elems {
            let ok = match &last {
                None => true,
                Some(l) => l != e && order_geq(l, e, lambda).unwrap_or(false),
            };
            if ok {
                prefix.push(e.clone());
                chains(elems, lambda, prefix, out);
                prefix.pop();
            }
        }
    }
    let mut all = Vec::new();
    chains(&elems, lambda, &mut Vec::new(), &mut all);
    for chain in all.into_iter().filter(|c| !c.is_empty()) {
        let inner = chain.len() - 1;
        for cut_choice in itertools::Itertools::combinations(candidates.iter(), inner) {
            let mut cuts = vec![Q::zero()];
            cuts.extend(cut_choice.into_iter().copied());
            cuts.push(Q::one());
            if let Ok(p) = LSPath::validate(chain.clone(), cuts, lambda) {
                out.insert(p);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qi;

    fn part(p: &[i64]) -> Partition {
        Partition::new(p.to_vec()).unwrap()
    }

    fn wt(c: &[i64]) -> Weight {
        Weight(c.to_vec())
    }

    fn tab(p: &[i64], rows: &[&[u32]]) -> Tableau {
        Tableau::new(part(p), rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn order_examples() {
        let lam = part(&[1, 0]);
        assert!(order_geq(&wt(&[0, 1]), &wt(&[1, 0]), &lam).unwrap());
        assert_eq!(dist(&wt(&[0, 1]), &wt(&[1, 0]), &lam).unwrap(), Some(1));
        assert_eq!(dist(&wt(&[1, 0]), &wt(&[1, 0]), &lam).unwrap(), Some(0));
        assert!(!order_geq(&wt(&[1, 0]), &wt(&[0, 1]), &lam).unwrap());
        assert_eq!(dist(&wt(&[1, 0]), &wt(&[0, 1]), &lam).unwrap(), None);
        assert!(matches!(
            order_geq(&wt(&[2, 0]), &wt(&[1, 0]), &lam),
            Err(Error::NotInOrbit(..))
        ));
        let lam = part(&[2, 1, 0]);
        assert_eq!(dist(&wt(&[0, 1, 2]), &wt(&[2, 1, 0]), &lam).unwrap(), Some(3));
    }

    #[test]
    fn extremes_of_orbit_order() {
        for p in [vec![2, 1, 0], vec![1, 1, 0], vec![2, 1, 1, 0]] {
            let lam = part(&p);
            let mut top = p.clone();
            top.reverse();
            for nu in orbit(&lam) {
                assert!(order_geq(&nu, &lam.as_weight(), &lam).unwrap());
                assert!(order_geq(&Weight(top.clone()), &nu, &lam).unwrap());
            }
        }
    }

    #[test]
    fn validate_examples() {
        let lam = part(&[3, 1, 0]);
        assert_eq!(
            LSPath::validate(vec![lam.as_weight()], vec![qi(0), qi(1)], &lam).unwrap(),
            LSPath::straight(&lam)
        );
        let lam = part(&[2, 0]);
        let p = LSPath::validate(vec![wt(&[0, 2]), wt(&[2, 0])], vec![qi(0), q(1, 2), qi(1)], &lam);
        assert!(p.is_ok());
        // listed in increasing order: rejected as unordered
        assert!(matches!(
            LSPath::validate(vec![wt(&[2, 0]), wt(&[0, 2])], vec![qi(0), q(1, 2), qi(1)], &lam),
            Err(Error::UnorderedDirections(1))
        ));
        let lam = part(&[1, 0]);
        assert!(matches!(
            LSPath::validate(vec![wt(&[0, 1]), wt(&[1, 0])], vec![qi(0), q(1, 2), qi(1)], &lam),
            Err(Error::MissingChain { .. })
        ));
        assert_eq!(enumerate_ls_paths(&lam).len(), 2);
        assert!(matches!(
            LSPath::validate(vec![wt(&[1, 0])], vec![qi(0), q(1, 2)], &lam),
            Err(Error::BadCuts)
        ));
        assert!(matches!(
            LSPath::validate(vec![wt(&[0, 1]), wt(&[1, 0])], vec![qi(0), qi(1), qi(1)], &lam),
            Err(Error::BadCuts)
        ));
    }

    #[test]
    fn path_op_examples() {
        let lam = part(&[1, 0]);
        let low = LSPath::straight(&lam).lower(1).unwrap().unwrap();
        assert_eq!(low.directions(), &[wt(&[0, 1])]);
        assert_eq!(low.cuts(), &[qi(0), qi(1)]);

        let lam = part(&[2, 0]);
        let p = LSPath::validate(vec![wt(&[0, 2]), wt(&[2, 0])], vec![qi(0), q(1, 2), qi(1)], &lam).unwrap();
        let low = p.lower(1).unwrap().unwrap();
        assert_eq!(low, LSPath::validate(vec![wt(&[0, 2])], vec![qi(0), qi(1)], &lam).unwrap());

        let lam = part(&[3, 1, 0]);
        for i in 1..3 {
            assert_eq!(LSPath::straight(&lam).raise(i).unwrap(), None);
        }
        assert!(LSPath::straight(&lam).raise(3).is_err());
    }

    #[test]
    fn psi_examples() {
        let lam = part(&[2, 1, 0]);
        assert_eq!(psi(&Tableau::highest(&lam), &lam).unwrap(), LSPath::straight(&lam));

        let lam = part(&[1, 0]);
        let p = psi(&tab(&[1, 0], &[&[2]]), &lam).unwrap();
        assert_eq!(p.directions(), &[wt(&[0, 1])]);

        let lam = part(&[2, 0]);
        let p = psi(&tab(&[2, 0], &[&[1, 2]]), &lam).unwrap();
        assert_eq!(p.directions(), &[wt(&[0, 2]), wt(&[2, 0])]);
        assert_eq!(p.cuts(), &[qi(0), q(1, 2), qi(1)]);
        assert_eq!(p.iota_tau(), (&wt(&[0, 2]), &wt(&[2, 0])));

        let p = psi(&tab(&[2, 0], &[&[2, 2]]), &lam).unwrap();
        assert_eq!(p.iota_tau(), (&wt(&[0, 2]), &wt(&[0, 2])));
        assert_eq!(LSPath::straight(&lam).iota_tau(), (&wt(&[2, 0]), &wt(&[2, 0])));

        assert!(matches!(psi(&tab(&[1, 0], &[&[2]]), &lam), Err(Error::ShapeMismatch(_))));
    }

    #[test]
    fn json_round_trip() {
        let lam = part(&[2, 0]);
        let p = psi(&tab(&[2, 0], &[&[1, 2]]), &lam).unwrap();
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"{"nus":[[0,2],[2,0]],"cuts":["0","1/2","1"]}"#);
        assert_eq!(serde_json::from_str::<LSPath>(&s).unwrap(), p);
        assert!(serde_json::from_str::<LSPath>(r#"{"nus":[[0,1],[1,0]],"cuts":["0","1/2","1"]}"#).is_err());
    }

    #[test]
    fn raise_and_lower_are_inverse() {
        let lam = part(&[3, 1, 0]);
        for p in generate_by_lowering(&lam) {
            for i in 1..3 {
                if let Some(l) = p.lower(i).unwrap() {
                    assert_eq!(l.raise(i).unwrap().as_ref(), Some(&p));
                }
                if let Some(r) = p.raise(i).unwrap() {
                    assert_eq!(r.lower(i).unwrap().as_ref(), Some(&p));
                }
            }
        }
    }
}
