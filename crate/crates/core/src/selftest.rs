//! The acceptance checks, shared by `wflag selftest` and the test suite.
//!
//! Every check is exact. Each returns a [`CriterionResult`] carrying the
//! elapsed time and, on failure, the first offending case.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::gkm::{
    chevalley_product, check_restriction_formulas, expand_in_basis, linear_combination,
    monk_identity_check, schubert_class, straight_class, verify_gkm, weighted_class, Flavor,
    GkmContext,
};
use crate::poly::{rat, Polynomial, Universe, Var};
use crate::repr::{
    enumerate_tableaux, pluecker_polynomial, sl_normalize, staircase_shape, tableau_of_perm,
    tableau_weight, weight_string, WeightData,
};
use crate::schubert::{
    double_schubert, schubert_poly, set_b_zero, staircase_product, weighted_double_schubert,
    weighted_schubert, Route, WeightedSubstitution,
};
use crate::weyl::{poincare_counts, CosetSystem, FlagConfig, Permutation};

pub const DEFAULT_SEED: u64 = 20_240_917;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriterionResult {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
    pub limit: Option<Duration>,
}

impl CriterionResult {
    pub fn line(&self) -> String {
        format!(
            "[{}] criterion {:>2}: {} ({}; {:.2?})",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.detail,
            self.elapsed
        )
    }
}

/// `(n, dims, weights, u)` of the standard sweep.
pub fn sweep() -> Vec<(FlagConfig, WeightData)> {
    let mut out = Vec::new();
    for (n, dims) in [(2, vec![1]), (3, vec![1, 2]), (4, vec![2]), (4, vec![1, 3])] {
        let config = FlagConfig::new(n, dims).expect("valid sweep configuration");
        let mut weights = vec![(vec![0; n], 1), ((1..=n as i64).collect(), 1)];
        if n == 4 {
            weights.push((vec![1, 1, 2, 3], 5));
        }
        for (w, u) in weights {
            let wd = WeightData::new(&config, w, u).expect("admissible sweep weights");
            out.push((config.clone(), wd));
        }
    }
    out
}

fn contexts() -> Result<Vec<Arc<GkmContext>>> {
    sweep().iter().map(|(c, w)| GkmContext::new(c, w)).collect()
}

fn label(ctx: &GkmContext) -> String {
    format!(
        "n={} dims={:?} w={:?} u={}",
        ctx.config().n(),
        ctx.config().dims(),
        ctx.weights().weights,
        ctx.weights().u
    )
}

fn run(
    id: usize,
    name: &'static str,
    limit: Option<Duration>,
    body: impl FnOnce() -> Result<std::result::Result<String, String>>,
) -> CriterionResult {
    let start = Instant::now();
    let outcome = body();
    let elapsed = start.elapsed();
    let (mut passed, mut detail) = match outcome {
        Ok(Ok(d)) => (true, d),
        Ok(Err(d)) => (false, d),
        Err(e) => (false, format!("error: {e}")),
    };
    if let Some(limit) = limit {
        if elapsed > limit {
            passed = false;
            detail = format!("{detail}; exceeded time limit {limit:?}");
        }
    }
    CriterionResult {
        id,
        name,
        passed,
        detail,
        elapsed,
        limit,
    }
}

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)*) => {
        if !$cond {
            return Ok(Err(format!($($fmt)*)));
        }
    };
}

pub fn betti_table() -> CriterionResult {
    run(1, "Betti table of GL(4)/P, dims (1,3)", Some(Duration::from_secs(1)), || {
        let config = FlagConfig::new(4, vec![1, 3])?;
        let system = CosetSystem::new(&config);
        let pc = poincare_counts(&system);
        ensure!(pc.dim == 5, "dimension {} != 5", pc.dim);
        ensure!(pc.counts == [1, 2, 3, 3, 2, 1], "Betti numbers {:?}", pc.counts);
        let listed = [
            "id", "s1", "s3", "s1*s3", "s2*s1", "s2*s3", "s2*s1*s3", "s1*s2*s3", "s3*s2*s1",
            "s3*s2*s3*s1", "s1*s2*s3*s1", "s3*s1*s2*s3*s1",
        ];
        let listed: BTreeSet<Permutation> = listed.iter().map(|s| s.parse()).collect::<Result<_>>()?;
        let reps: BTreeSet<Permutation> = system.reps().iter().cloned().collect();
        ensure!(system.len() == 12, "|W^P| = {}", system.len());
        ensure!(listed == reps, "representatives differ from the listed ones");
        Ok(Ok("dim 5, ranks 1,2,3,3,2,1, |W^P| = 12".into()))
    })
}

pub fn tableau_basis() -> CriterionResult {
    run(2, "staircase tableaux of shape (2,1)", Some(Duration::from_secs(1)), || {
        let config = FlagConfig::new(3, vec![1, 2])?;
        let ys = enumerate_tableaux(&staircase_shape(&config), 3);
        ensure!(ys.len() == 8, "{} tableaux", ys.len());
        let expected_fillings: [&[&[u8]]; 8] = [
            &[&[1, 1], &[2]],
            &[&[1, 1], &[3]],
            &[&[1, 2], &[2]],
            &[&[1, 2], &[3]],
            &[&[1, 3], &[2]],
            &[&[1, 3], &[3]],
            &[&[2, 2], &[3]],
            &[&[2, 3], &[3]],
        ];
        let expected_weights = ["t1^2*t2", "t1^2*t3", "t1*t2^2", "1", "1", "t1*t3^2", "t2^2*t3", "t2*t3^2"];
        for ((y, rows), w) in ys.iter().zip(expected_fillings).zip(expected_weights) {
            let rows: Vec<Vec<u8>> = rows.iter().map(|r| r.to_vec()).collect();
            ensure!(y.rows() == rows.as_slice(), "unexpected tableau {y}");
            let got = weight_string(&sl_normalize(&tableau_weight(y, 3)));
            ensure!(got == w, "tableau {y} has weight {got}, expected {w}");
        }
        let u = Universe::new(3);
        let e = pluecker_polynomial(&ys[0], u)?;
        let expected = &u.xg(1, 1) * &(&(&u.xg(1, 1) * &u.xg(2, 2)) - &(&u.xg(1, 2) * &u.xg(2, 1)));
        ensure!(e == expected, "e_Y0 = {e}");
        Ok(Ok(format!("8 tableaux, e_Y0 = {e}")))
    })
}

pub fn sigma_tableau() -> CriterionResult {
    run(3, "tableau of sigma = 1,4,2,3", None, || {
        let config = FlagConfig::full(4)?;
        let y = tableau_of_perm(&"1,4,2,3".parse()?, &config)?;
        let w = weight_string(&tableau_weight(&y, 4));
        ensure!(w == "t1^3*t2*t4^2", "weight {w}");
        Ok(Ok(format!("{y} has weight {w}")))
    })
}

pub fn gkm_suite() -> CriterionResult {
    run(4, "GKM conditions on every edge", Some(Duration::from_secs(30)), || {
        let mut classes = 0;
        let mut edges = 0;
        let mut improper = 0;
        for ctx in contexts()? {
            for flavor in Flavor::ALL {
                for sigma in ctx.reps() {
                    let report = verify_gkm(&schubert_class(&ctx, sigma, flavor)?);
                    ensure!(
                        report.passed(),
                        "{} {flavor} class {sigma}: {}",
                        label(&ctx),
                        report.first_failure().unwrap_or_default()
                    );
                    classes += 1;
                    edges += report.edges.len();
                    improper += report.edges.iter().filter(|e| !e.proportional).count();
                }
            }
        }
        ensure!(improper == 0, "{improper} edges with y_σ - y_τ not proportional to y_i - y_j");
        Ok(Ok(format!("{classes} classes, {edges} edge checks")))
    })
}

pub fn restriction_formulas() -> CriterionResult {
    run(5, "closed restriction formulas at tau = sigma", None, || {
        let mut count = 0;
        for ctx in contexts()? {
            for flavor in Flavor::ALL {
                for sigma in ctx.reps() {
                    let class = schubert_class(&ctx, sigma, flavor)?;
                    ensure!(
                        check_restriction_formulas(&class, sigma)?,
                        "{} {flavor} class {sigma}",
                        label(&ctx)
                    );
                    count += 1;
                }
            }
        }
        Ok(Ok(format!("{count} classes")))
    })
}

pub fn weighted_chevalley() -> CriterionResult {
    run(6, "weighted Chevalley formula", Some(Duration::from_secs(60)), || {
        let mut count = 0;
        for ctx in contexts()? {
            for sigma in ctx.reps() {
                for &d in ctx.config().dims() {
                    let check = chevalley_product(&ctx, d, sigma, Flavor::Weighted)?;
                    ensure!(
                        check.passed(),
                        "{}: {}",
                        label(&ctx),
                        check.mismatch().unwrap_or_default()
                    );
                    count += 1;
                }
            }
        }
        Ok(Ok(format!("{count} products")))
    })
}

fn monk_weights(n: usize, seed: u64) -> Vec<(Vec<i64>, i64)> {
    let mut out = vec![(vec![0; n], 1), ((1..=n as i64).collect(), 1)];
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ n as u64);
    for _ in 0..2 {
        let w: Vec<i64> = (0..n).map(|_| rng.gen_range(-3..=5)).collect();
        let config = FlagConfig::full(n).expect("n >= 2");
        let u = crate::repr::min_admissible_u(&w, &config).max(1) + rng.gen_range(0..4);
        out.push((w, u));
    }
    out
}

pub fn weighted_monk(seed: u64) -> CriterionResult {
    run(7, "weighted Chevalley-Monk identity", None, || {
        let mut count = 0;
        for n in 2..=3 {
            let config = FlagConfig::full(n)?;
            for (w, u) in monk_weights(n, seed) {
                let wd = WeightData::new(&config, w.clone(), u)?;
                let ws = WeightedSubstitution::new(&config, &wd, Universe::new(n))?;
                for sigma in Permutation::all(n) {
                    for d in 1..n {
                        let check = monk_identity_check(&ws, d, &sigma)?;
                        ensure!(
                            check.passed(),
                            "n={n} w={w:?} u={u} sigma={sigma} d={d}: residual {}",
                            check.residual()
                        );
                        count += 1;
                    }
                }
            }
        }
        Ok(Ok(format!("{count} identities")))
    })
}

pub fn degeneration() -> CriterionResult {
    run(8, "zero weights give the classical objects", None, || {
        let mut count = 0;
        for (config, wd) in sweep().into_iter().filter(|(_, wd)| wd.is_trivial()) {
            let ctx = GkmContext::new(&config, &wd)?;
            let u = ctx.universe();
            for sigma in ctx.reps() {
                let w = weighted_class(&ctx, sigma)?;
                let s = straight_class(&ctx, sigma)?;
                ensure!(w.restrictions() == s.restrictions(), "{} class {sigma}", label(&ctx));
                for &d in config.dims() {
                    let a = chevalley_product(&ctx, d, sigma, Flavor::Weighted)?;
                    let b = chevalley_product(&ctx, d, sigma, Flavor::Straight)?;
                    ensure!(
                        a.lhs.restrictions() == b.lhs.restrictions()
                            && a.rhs.restrictions() == b.rhs.restrictions()
                            && a.multiplier == b.multiplier,
                        "{} Chevalley d={d} sigma={sigma}",
                        label(&ctx)
                    );
                }
                count += 1;
            }
            let ws = WeightedSubstitution::new(&config, &wd, u)?;
            let n = config.n();
            for sigma in Permutation::all(n) {
                let plain = double_schubert(&sigma, n, Route::DividedDifference, u)?;
                let renamed = plain.rename(|v| match v {
                    Var::B(l) => Var::Bw(l),
                    v => v,
                });
                ensure!(weighted_double_schubert(&sigma, &ws)? == renamed, "w𝔖_{sigma}(x, b^w)");
                ensure!(
                    weighted_schubert(&sigma, &ws)? == schubert_poly(&sigma, n, u)?,
                    "w𝔖_{sigma}(x)"
                );
                for d in 1..n {
                    let check = monk_identity_check(&ws, d, &sigma)?;
                    let classical = &schubert_poly(&Permutation::simple(d), n, u)? * &schubert_poly(&sigma, n, u)?;
                    ensure!(check.passed() && check.lhs == classical, "Monk d={d} sigma={sigma}");
                }
            }
        }
        Ok(Ok(format!("{count} classes with their products")))
    })
}

pub fn route_agreement() -> CriterionResult {
    run(9, "double Schubert routes agree on S_4", None, || {
        let u = Universe::new(4);
        for sigma in Permutation::all(4) {
            let a = double_schubert(&sigma, 4, Route::SumFormula, u)?;
            let b = double_schubert(&sigma, 4, Route::DividedDifference, u)?;
            ensure!(a == b, "sigma = {sigma}: {a} vs {b}");
        }
        for m in 1..=4 {
            let w0 = Permutation::longest(m);
            for route in [Route::SumFormula, Route::DividedDifference] {
                let f = double_schubert(&w0, m, route, u)?;
                ensure!(f == staircase_product(m, u), "longest element of S_{m}");
            }
            ensure!(
                set_b_zero(&staircase_product(m, u))? == schubert_poly(&w0, m, u)?,
                "b = 0 for S_{m}"
            );
        }
        Ok(Ok("24 permutations, longest elements up to S_4".into()))
    })
}

fn random_coefficient(ctx: &GkmContext, flavor: Flavor, rng: &mut ChaCha8Rng) -> Polynomial {
    let u = ctx.universe();
    let n = ctx.config().n();
    let mut c = u.constant(rat(rng.gen_range(-9..=9), rng.gen_range(1..=6)));
    if rng.gen_bool(0.5) {
        let i = rng.gen_range(1..=n);
        let y = if flavor == Flavor::Weighted { ctx.yw(i) } else { u.y(i) };
        c += &y.scale(&rat(rng.gen_range(-4..=4), rng.gen_range(1..=3)));
    }
    c
}

pub fn basis_property(seed: u64) -> CriterionResult {
    run(10, "Schubert classes form a triangular basis", None, || {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut trials = 0;
        for ctx in contexts()? {
            for flavor in Flavor::ALL {
                for (s, sigma) in ctx.reps().iter().enumerate() {
                    let class = schubert_class(&ctx, sigma, flavor)?;
                    let entries = class.restrictions();
                    ensure!(!entries[s].is_zero(), "{} {flavor}: zero diagonal at {sigma}", label(&ctx));
                    ensure!(
                        entries[..s].iter().all(Polynomial::is_zero),
                        "{} {flavor}: class {sigma} is not triangular",
                        label(&ctx)
                    );
                }
                for _ in 0..3 {
                    let mut terms: BTreeMap<usize, Polynomial> = BTreeMap::new();
                    for _ in 0..rng.gen_range(1..=4) {
                        let s = rng.gen_range(0..ctx.len());
                        terms.insert(s, random_coefficient(&ctx, flavor, &mut rng));
                    }
                    let terms: Vec<(Permutation, Polynomial)> = terms
                        .into_iter()
                        .filter(|(_, c)| !c.is_zero())
                        .map(|(s, c)| (ctx.reps()[s].clone(), c))
                        .collect();
                    let combo = linear_combination(&ctx, flavor, &terms)?;
                    let back = expand_in_basis(&combo)?;
                    ensure!(back == terms, "{} {flavor}: round trip of {terms:?} gave {back:?}", label(&ctx));
                    trials += 1;
                }
            }
        }
        Ok(Ok(format!("{trials} random combinations recovered")))
    })
}

/// Runs every criterion in order.
pub fn run_all(seed: u64) -> Vec<CriterionResult> {
    vec![
        betti_table(),
        tableau_basis(),
        sigma_tableau(),
        gkm_suite(),
        restriction_formulas(),
        weighted_chevalley(),
        weighted_monk(seed),
        degeneration(),
        route_agreement(),
        basis_property(seed),
    ]
}
