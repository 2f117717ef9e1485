//! Exhaustive and seeded-random invariant suites shared by the acceptance
//! tests and the `verify-all` command.

use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::continuous::{
    cont_matrix_op, cont_raise_to_highest, matrix_eps, matrix_phi, random_dominant, random_path, random_rat_matrix,
    verify_main2, RatMatrix,
};
use crate::demazure::{atom, character_of, demazure_crystal, demazure_operator_oracle, opposite_demazure_crystal, Kind};
use crate::error::Result;
use crate::identity::{
    kernel_series, rhs_from_summands, rhs_summands, verify_littlewood, KernelSpec, Summand, Variant,
};
use crate::ls_path::{enumerate_ls_paths, order_geq, psi, psi_inv};
use crate::matrix::{bicrystal_op, classify_low, diagonal_op, raise_to_highest, rsk, NNMatrix, Side};
use crate::poly::Vars;
use crate::rational::{q, Q};
use crate::tableau::{enumerate_crystal, Tableau};
use crate::weyl::{stabilizer_and_coset_reps, Partition};
use crate::word::Direction;

const MAX_REPORTED_FAILURES: usize = 10;

#[derive(Clone, Debug, Serialize)]
pub struct SuiteResult {
    pub name: String,
    pub checks: u64,
    pub failures: Vec<String>,
    /// Failures beyond the reported ones.
    pub suppressed: u64,
}

impl SuiteResult {
    pub fn new(name: impl Into<String>) -> Self {
        SuiteResult {
            name: name.into(),
            checks: 0,
            failures: Vec::new(),
            suppressed: 0,
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn check(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            if self.failures.len() < MAX_REPORTED_FAILURES {
                self.failures.push(detail());
            } else {
                self.suppressed += 1;
            }
        }
    }

    /// Records an error as a failed check.
    pub fn check_result<T>(&mut self, r: Result<T>, context: impl FnOnce() -> String) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.check(false, || format!("{}: {e}", context()));
                None
            }
        }
    }

    pub fn summary_line(&self) -> String {
        format!(
            "{} {} ({} checks, {} failures)",
            if self.passed() { "PASS" } else { "FAIL" },
            self.name,
            self.checks,
            self.failures.len() as u64 + self.suppressed
        )
    }
}

/// Partitions with at most `n` parts and size in `0..=max_size`.
pub fn partitions_up_to(n: usize, max_size: i64) -> Vec<Partition> {
    (0..=max_size).flat_map(|s| Partition::all_of_size(n, s)).collect()
}

/// Drops the first element of the atom factor of `summands[index]`.
pub fn drop_atom_element(summands: &mut [Summand], index: usize) -> Option<Tableau> {
    let s = summands.get_mut(index)?;
    let set = match s.atom_side {
        Vars::X => &mut s.x_set,
        Vars::Y => &mut s.y_set,
    };
    let first = set.iter().next()?.clone();
    set.remove(&first);
    Some(first)
}

/// Kernel minus right-hand side for each `(n, D)`; `fault` drops one atom
/// element from the first nontrivial summand.
pub fn cauchy_suite(name: &str, variants: &[Variant], cases: &[(usize, u32)], fault: bool) -> SuiteResult {
    let mut res = SuiteResult::new(name);
    for &variant in variants {
        for &(n, d) in cases {
            let ctx = || format!("{variant} n={n} D={d}");
            let Some(mut summands) = res.check_result(rhs_summands(n, d, variant), ctx) else {
                continue;
            };
            if fault {
                if let Some(idx) = summands.iter().position(|s| s.lambda.size() > 0) {
                    drop_atom_element(&mut summands, idx);
                }
            }
            let lhs = kernel_series(&KernelSpec {
                n,
                support: variant.support(),
                degree: d,
            });
            let diff = &lhs - &rhs_from_summands(n, &summands);
            res.check(diff.is_zero(), || format!("{}: difference has {} terms", ctx(), diff.num_terms()));
        }
    }
    res
}

pub fn littlewood_suite(max_n: usize, max_degree: u32) -> SuiteResult {
    let mut res = SuiteResult::new("littlewood");
    for n in 1..=max_n {
        for d in (0..=max_degree).step_by(2) {
            let r = verify_littlewood(n, d);
            res.check(r.ok, || format!("n={n} D={d}: difference has {} terms", r.difference_terms));
        }
    }
    res
}

/// Every cell `B^w(λ) × B̂_w(λ)` with `|λ| = s` is hit exactly once by
/// `classify_low` on lower-triangular matrices of entry sum `s`.
pub fn bijection_suite(max_n: usize, max_sum: u64) -> SuiteResult {
    let mut res = SuiteResult::new("main bijection");
    for n in 1..=max_n {
        for s in 0..=max_sum {
            let mut targets: BTreeMap<(Tableau, Tableau), (Partition, Vec<usize>)> = BTreeMap::new();
            for lambda in Partition::all_of_size(n, s as i64) {
                for w in stabilizer_and_coset_reps(&lambda).1 {
                    let xs = opposite_demazure_crystal(&lambda, &w).elements;
                    let Some(ys) = res.check_result(atom(&lambda, &w, Kind::Atom), || format!("atom {lambda} {w}")) else {
                        continue;
                    };
                    for p in &xs {
                        for qq in &ys.elements {
                            targets.insert((p.clone(), qq.clone()), (lambda.clone(), w.window().to_vec()));
                        }
                    }
                }
            }
            let matrices = NNMatrix::all_lower_triangular(n, s);
            let mut hit = BTreeSet::new();
            for m in &matrices {
                let Some(c) = res.check_result(classify_low(m), || format!("classify {m}")) else {
                    continue;
                };
                let key = (c.p.clone(), c.q.clone());
                res.check(
                    targets.get(&key) == Some(&(c.lambda.clone(), c.w.window().to_vec())),
                    || format!("{m}: ({}, {}) not in the cell of λ={}, w={}", c.p, c.q, c.lambda, c.w),
                );
                res.check(hit.insert(key), || format!("{m}: image hit twice"));
                let order = psi(&c.p, &c.lambda)
                    .and_then(|pp| psi(&c.q, &c.lambda).and_then(|pq| order_geq(pp.iota_tau().1, pq.iota_tau().0, &c.lambda)));
                res.check(matches!(order, Ok(true)), || format!("{m}: τ(ψ(P)) ≥ ι(ψ(Q)) fails"));
            }
            res.check(hit.len() == targets.len(), || {
                format!("n={n} s={s}: {} images for {} targets", hit.len(), targets.len())
            });
        }
    }
    res
}

/// Demazure characters against divided differences; atoms partition
/// `B(λ)` and their characters sum to `s_λ`.
pub fn demazure_suite(max_n: usize, max_size: i64) -> SuiteResult {
    let mut res = SuiteResult::new("demazure oracle");
    for n in 1..=max_n {
        for lambda in partitions_up_to(n, max_size) {
            let full = enumerate_crystal(&lambda);
            let schur = character_of(n, &full, Vars::X);
            let reps = stabilizer_and_coset_reps(&lambda).1;
            for w in &reps {
                let ch = character_of(n, &demazure_crystal(&lambda, w).elements, Vars::X);
                let oracle = res.check_result(demazure_operator_oracle(&lambda, w), || format!("oracle {lambda} {w}"));
                if let Some(o) = oracle {
                    res.check(ch == o, || format!("λ={lambda} w={w}: {ch} ≠ {o}"));
                }
            }
            for kind in [Kind::Atom, Kind::OppositeAtom] {
                let mut union = BTreeSet::new();
                let mut total = 0usize;
                let mut sum = crate::poly::SparsePoly::zero(n);
                for w in &reps {
                    if let Some(a) = res.check_result(atom(&lambda, w, kind), || format!("{kind} {lambda} {w}")) {
                        total += a.elements.len();
                        sum = &sum + &character_of(n, &a.elements, Vars::X);
                        union.extend(a.elements);
                    }
                }
                res.check(union == full && total == full.len(), || format!("{kind}s do not partition B({lambda})"));
                res.check(sum == schur, || format!("{kind} characters do not sum to s_{lambda}"));
            }
        }
    }
    res
}

/// `∏ (n + c(x)) / h(x)` over the cells of `λ`.
pub fn hook_content_count(lambda: &Partition, n: usize) -> u64 {
    let parts = lambda.parts();
    let (mut num, mut den) = (1u128, 1u128);
    for (r, &len) in parts.iter().enumerate() {
        for c in 0..len as usize {
            let arm = len as usize - c - 1;
            let leg = parts[r + 1..].iter().filter(|&&p| p as usize > c).count();
            num *= (n + c - r) as u128;
            den *= (arm + leg + 1) as u128;
        }
    }
    (num / den) as u64
}

/// `ψ_λ` commutes with the operators and is a bijection onto the LS paths.
pub fn psi_suite(max_n: usize, max_size: i64) -> SuiteResult {
    let mut res = SuiteResult::new("psi isomorphism");
    for n in 1..=max_n {
        for lambda in partitions_up_to(n, max_size) {
            let tabs = enumerate_crystal(&lambda);
            res.check(tabs.len() as u64 == hook_content_count(&lambda, n), || {
                format!("|B({lambda})| = {} but hook-content gives {}", tabs.len(), hook_content_count(&lambda, n))
            });
            let mut image = BTreeSet::new();
            for t in &tabs {
                let Some(p) = res.check_result(psi(t, &lambda), || format!("ψ({t})")) else {
                    continue;
                };
                res.check(psi_inv(&p).ok().as_ref() == Some(t), || format!("ψ⁻¹ψ({t}) ≠ {t}"));
                for i in 1..n {
                    for dir in [Direction::Raise, Direction::Lower] {
                        let via_t = t.op(i, dir).ok().flatten().map(|x| psi(&x, &lambda).ok());
                        let via_p = p.op(i, dir).ok().flatten().map(Some);
                        res.check(via_t == via_p, || format!("ψ does not commute with {dir:?}_{i} at {t}"));
                    }
                }
                image.insert(p);
            }
            let all = enumerate_ls_paths(&lambda);
            res.check(image == all, || {
                format!("ψ image has {} paths, enumeration has {} for λ={lambda}", image.len(), all.len())
            });
        }
    }
    res
}

/// Row-side and column-side operators commute.
pub fn bicrystal_suite(n: usize, max_sum: u64) -> SuiteResult {
    let mut res = SuiteResult::new("bicrystal commutation");
    let dirs = [Direction::Raise, Direction::Lower];
    for s in 0..=max_sum {
        for m in NNMatrix::enumerate(n, s, |_, _| true) {
            for i in 1..n {
                for j in 1..n {
                    for &d1 in &dirs {
                        for &d2 in &dirs {
                            let rc = bicrystal_op(&m, i, d1, Side::Row)
                                .ok()
                                .flatten()
                                .and_then(|x| bicrystal_op(&x, j, d2, Side::Col).ok().flatten());
                            let cr = bicrystal_op(&m, j, d2, Side::Col)
                                .ok()
                                .flatten()
                                .and_then(|x| bicrystal_op(&x, i, d1, Side::Row).ok().flatten());
                            res.check(rc == cr, || format!("{m}: row {d1:?}_{i} and col {d2:?}_{j} do not commute"));
                        }
                    }
                }
            }
        }
    }
    res
}

/// Diagonal operators preserve `𝓜^low`, and the raise-extremal elements
/// of `𝓜^low` are exactly the `M_λ`.
pub fn low_closure_suite(max_n: usize, max_sum: u64) -> SuiteResult {
    let mut res = SuiteResult::new("lower-triangular closure");
    for n in 1..=max_n {
        for s in 0..=max_sum {
            let mut extremal = BTreeSet::new();
            for m in NNMatrix::all_lower_triangular(n, s) {
                let mut raisable = false;
                for i in 1..n {
                    for dir in [Direction::Raise, Direction::Lower] {
                        if let Some(x) = res.check_result(diagonal_op(&m, i, dir), || format!("{m}")).flatten() {
                            raisable |= dir == Direction::Raise;
                            res.check(x.is_lower_triangular(), || format!("{dir:?}_{i} {m} = {x} leaves 𝓜^low"));
                        }
                    }
                }
                if !raisable {
                    extremal.insert(m.clone());
                }
                if let Some((lam, _)) = res.check_result(raise_to_highest(&m), || format!("raise {m}")) {
                    let (p, qq) = rsk(&m);
                    res.check(lam == *p.shape() && lam == *qq.shape(), || format!("{m}: terminal λ differs from RSK shape"));
                }
            }
            let diagonals: BTreeSet<NNMatrix> = Partition::all_of_size(n, s as i64).iter().map(NNMatrix::diag).collect();
            res.check(extremal == diagonals, || format!("n={n} s={s}: extremal set ≠ {{M_λ}}"));
        }
    }
    res
}

#[derive(Clone, Copy, Debug)]
pub struct ContinuousCounts {
    pub group_law: usize,
    pub commutation: usize,
    pub main2: usize,
    pub max_denominator: i128,
}

impl Default for ContinuousCounts {
    fn default() -> Self {
        ContinuousCounts {
            group_law: 1000,
            commutation: 200,
            main2: 200,
            max_denominator: 4,
        }
    }
}

fn integer_op_power(m: &NNMatrix, i: usize, k: i64, side: Side) -> Option<NNMatrix> {
    let dir = if k >= 0 { Direction::Raise } else { Direction::Lower };
    let mut cur = m.clone();
    for _ in 0..k.unsigned_abs() {
        cur = bicrystal_op(&cur, i, dir, side).ok()??;
    }
    Some(cur)
}

/// Group law, scaling against the integer bicrystal, row/column
/// commutation and the continuous classification, all seeded.
pub fn continuous_suites(seed: u64, counts: ContinuousCounts, max_n: usize) -> Vec<SuiteResult> {
    let max_n = max_n.clamp(2, 3);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dens = counts.max_denominator.max(1);

    let mut group = SuiteResult::new("continuous group law");
    while (group.checks as usize) < counts.group_law {
        let n = rng.gen_range(2..=max_n);
        let den = rng.gen_range(1..=dens);
        let lam = random_dominant(&mut rng, n, 3 * den, den);
        let steps = rng.gen_range(0..=5);
        let pi = random_path(&mut rng, &lam, steps, den);
        let i = rng.gen_range(1..n);
        let r = q(rng.gen_range(-4 * den..=4 * den), den);
        let s = q(rng.gen_range(-4 * den..=4 * den), den);
        let Ok(Some(a)) = pi.cont_op(i, r) else { continue };
        let Ok(Some(b)) = a.cont_op(i, s) else { continue };
        let direct = pi.cont_op(i, r + s).ok().flatten();
        group.check(direct.as_ref() == Some(&b), || format!("ẽ^{s} ẽ^{r} ≠ ẽ^(r+s) at i={i} on {pi}"));
    }

    let mut scaling = SuiteResult::new("continuous scaling");
    for n in 2..=max_n {
        for sum in 0..=3u64 {
            for m in NNMatrix::enumerate(n, sum, |_, _| true) {
                for den in 1..=dens {
                    let inv = q(1, den);
                    let rm = RatMatrix::from_nn(&m).scaled(inv);
                    for i in 1..n {
                        for side in [Side::Row, Side::Col] {
                            for k in -3..=3i64 {
                                let cont = cont_matrix_op(&rm, i, q(k as i128, den), side).ok().flatten();
                                let int = integer_op_power(&m, i, k, side).map(|x| RatMatrix::from_nn(&x).scaled(inv));
                                scaling.check(cont == int, || format!("ẽ^({k}/{den})_{i} {side:?} on {m}/{den}"));
                            }
                        }
                    }
                    // both sides highest weight means P = Q = v_λ, so λ is the RSK shape
                    let expected: Vec<Q> = rsk(&m).0.shape().parts().iter().map(|&p| q(p as i128, den)).collect();
                    match cont_raise_to_highest(&rm) {
                        Ok((lam, _)) => scaling.check(lam == expected, || format!("highest weight of {m}/{den}")),
                        Err(e) => scaling.check(false, || format!("raising {m}/{den}: {e}")),
                    }
                }
            }
        }
    }

    let mut commute = SuiteResult::new("continuous commutation");
    for t in 0..counts.commutation {
        let n = 2 + t % (max_n - 1);
        let den = rng.gen_range(1..=dens);
        let m = random_rat_matrix(&mut rng, n, 2 * den, den, false);
        let i = rng.gen_range(1..n);
        let j = rng.gen_range(1..n);
        let pick = |rng: &mut ChaCha8Rng, lo: Q, hi: Q| -> Q {
            // a multiple of 1/den in [−φ − 1/den, ε + 1/den], so nulls are exercised too
            let a = (lo * den).floor().to_integer() - 1;
            let b = (hi * den).ceil().to_integer() + 1;
            q(rng.gen_range(a..=b), den)
        };
        let r = pick(&mut rng, -matrix_phi(&m, i, Side::Row), matrix_eps(&m, i, Side::Row));
        let s = pick(&mut rng, -matrix_phi(&m, j, Side::Col), matrix_eps(&m, j, Side::Col));
        let rc = cont_matrix_op(&m, i, r, Side::Row)
            .ok()
            .flatten()
            .and_then(|x| cont_matrix_op(&x, j, s, Side::Col).ok().flatten());
        let cr = cont_matrix_op(&m, j, s, Side::Col)
            .ok()
            .flatten()
            .and_then(|x| cont_matrix_op(&x, i, r, Side::Row).ok().flatten());
        commute.check(rc == cr, || format!("row ẽ^{r}_{i} and column ẽ^{s}_{j} on {m}"));
    }

    let mut main2 = SuiteResult::new("continuous classification");
    for t in 0..counts.main2 {
        let n = 2 + t % (max_n - 1);
        let den = rng.gen_range(1..=dens);
        let m = random_rat_matrix(&mut rng, n, 2 * den, den, true);
        match verify_main2(&m) {
            Ok(r) => main2.check(r.ok, || {
                format!("{m}: membership={} weights={} ls={}", r.membership, r.weights_match, r.ls_data)
            }),
            Err(e) => main2.check(false, || format!("{m}: {e}")),
        }
    }

    vec![group, scaling, commute, main2]
}

/// Dropping any single atom element from any summand must break the
/// identity.
pub fn negative_control_suite(variants: &[Variant], cases: &[(usize, u32)]) -> SuiteResult {
    let mut res = SuiteResult::new("negative control");
    for &variant in variants {
        for &(n, d) in cases {
            let Some(summands) = res.check_result(rhs_summands(n, d, variant), || format!("{variant} n={n} D={d}")) else {
                continue;
            };
            let lhs = kernel_series(&KernelSpec {
                n,
                support: variant.support(),
                degree: d,
            });
            let rhs = rhs_from_summands(n, &summands);
            for (idx, summand) in summands.iter().enumerate() {
                let mut perturbed = vec![summand.clone()];
                if drop_atom_element(&mut perturbed, 0).is_none() {
                    continue;
                }
                let new_rhs = &(&rhs - &summand.product()) + &perturbed[0].product();
                let diff = &lhs - &new_rhs;
                res.check(!diff.is_zero(), || {
                    format!("{variant} n={n} D={d}: dropping an element of summand {idx} went unnoticed")
                });
            }
        }
    }
    res
}

/// `(n, D)` pairs with `1 ≤ n ≤ max_n` and even `2 ≤ D ≤ max_degree`.
pub fn degree_cases(max_n: usize, max_degree: u32) -> Vec<(usize, u32)> {
    (1..=max_n)
        .flat_map(|n| (2..=max_degree).step_by(2).map(move |d| (n, d)))
        .collect()
}

/// Every suite below the given bounds; `fault` injects an off-by-one into
/// a right-hand side.
pub fn verify_all(max_n: usize, max_degree: u32, seed: u64, fault: bool) -> Vec<SuiteResult> {
    if max_n == 0 {
        return Vec::new();
    }
    let cases = degree_cases(max_n, max_degree);
    let lower = [Variant::LowerKhatK, Variant::LowerKKhat];
    let half = (max_degree / 2) as u64;
    let mut out = vec![
        cauchy_suite("cauchy lower", &lower, &cases, fault),
        cauchy_suite("cauchy staircase", &[Variant::Staircase], &cases, fault),
        littlewood_suite(max_n, max_degree),
        bijection_suite(max_n, half),
        demazure_suite(max_n, half as i64),
        psi_suite(max_n, half as i64),
        bicrystal_suite(max_n, half),
        low_closure_suite(max_n, half),
    ];
    if max_n >= 2 {
        let counts = ContinuousCounts {
            group_law: 200,
            commutation: 50,
            main2: 50,
            max_denominator: 4,
        };
        out.extend(continuous_suites(seed, counts, max_n));
    }
    out.push(negative_control_suite(&lower, &cases));
    out
}
