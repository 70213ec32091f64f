//! Single, double and weighted Schubert polynomials.
//!
//! `𝔖_σ(x)` and `𝔖_σ(x, b)` are built from the longest element of `S_m` by
//! divided differences in `x`; the double polynomials can also be built from
//! the factorization sum
//!
//! ```text
//! 𝔖_σ(x, b) = Σ 𝔖_μ(x) 𝔖_τ(-b),   μ = τσ,   l(σ) = l(τ) + l(μ).
//! ```
//!
//! Both constructions are stable in `m`. Results are memoized in a
//! process-wide table keyed by permutation, ambient size and universe.

use std::collections::{BTreeMap, HashMap};
use std::sync::{LazyLock, RwLock};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::{int, LinearForm, Polynomial, Rational, Universe, Var};
use crate::repr::{perm_weight, WeightData};
use crate::weyl::{FlagConfig, Permutation};

/// Which construction of `𝔖_σ(x, b)` to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Route {
    SumFormula,
    DividedDifference,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Key {
    Single(Permutation),
    Double(Route, Permutation),
}

/// Thread-safe memo table for Schubert polynomials.
#[derive(Default)]
pub struct SchubertCache {
    table: RwLock<HashMap<(Key, usize, usize), Polynomial>>,
}

static CACHE: LazyLock<SchubertCache> = LazyLock::new(SchubertCache::default);

impl SchubertCache {
    /// The shared process-wide cache.
    pub fn global() -> &'static SchubertCache {
        &CACHE
    }

    pub fn len(&self) -> usize {
        self.table.read().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn get(&self, key: &(Key, usize, usize)) -> Option<Polynomial> {
        self.table.read().unwrap().get(key).cloned()
    }

    fn insert(&self, key: (Key, usize, usize), value: Polynomial) {
        self.table.write().unwrap().entry(key).or_insert(value);
    }

    pub fn single(&self, sigma: &Permutation, m: usize, universe: Universe) -> Result<Polynomial> {
        check_ambient(sigma, m, universe)?;
        self.single_unchecked(sigma, m, universe)
    }

    fn single_unchecked(&self, sigma: &Permutation, m: usize, u: Universe) -> Result<Polynomial> {
        let key = (Key::Single(sigma.clone()), m, u.n());
        if let Some(p) = self.get(&key) {
            return Ok(p);
        }
        let p = match first_ascent(sigma, m) {
            None => {
                // σ = σ_0: x_1^{m-1} x_2^{m-2} … x_{m-1}
                let mut p = u.one();
                for i in 1..m {
                    p = &p * &u.x(i).pow((m - i) as u32);
                }
                p
            }
            Some(i) => self
                .single_unchecked(&sigma.swap_positions(i, i + 1), m, u)?
                .divided_difference(i)?,
        };
        self.insert(key, p.clone());
        Ok(p)
    }

    pub fn double(
        &self,
        sigma: &Permutation,
        m: usize,
        route: Route,
        universe: Universe,
    ) -> Result<Polynomial> {
        check_ambient(sigma, m, universe)?;
        match route {
            Route::DividedDifference => self.double_dd(sigma, m, universe),
            Route::SumFormula => {
                let key = (Key::Double(route, sigma.clone()), m, universe.n());
                if let Some(p) = self.get(&key) {
                    return Ok(p);
                }
                let p = self.double_sum(sigma, m, universe)?;
                self.insert(key, p.clone());
                Ok(p)
            }
        }
    }

    fn double_dd(&self, sigma: &Permutation, m: usize, u: Universe) -> Result<Polynomial> {
        let key = (Key::Double(Route::DividedDifference, sigma.clone()), m, u.n());
        if let Some(p) = self.get(&key) {
            return Ok(p);
        }
        let p = match first_ascent(sigma, m) {
            None => {
                let mut p = u.one();
                for i in 1..m {
                    for j in 1..=m - i {
                        p = &p * &(&u.x(i) - &u.b(j));
                    }
                }
                p
            }
            Some(i) => self
                .double_dd(&sigma.swap_positions(i, i + 1), m, u)?
                .divided_difference(i)?,
        };
        self.insert(key, p.clone());
        Ok(p)
    }

    fn double_sum(&self, sigma: &Permutation, m: usize, u: Universe) -> Result<Polynomial> {
        let l = sigma.length();
        let negate_b: BTreeMap<Var, Polynomial> =
            (1..m).map(|i| (Var::X(i as u8), -&u.b(i))).collect();
        let mut out = u.zero();
        for tau in Permutation::all(m) {
            let mu = tau.compose(sigma);
            if tau.length() + mu.length() != l {
                continue;
            }
            let x_part = self.single_unchecked(&mu, m, u)?;
            let b_part = self.single_unchecked(&tau, m, u)?.substitute(&negate_b)?;
            out += &(&x_part * &b_part);
        }
        Ok(out)
    }
}

/// Smallest `i < m` with `σ(i) < σ(i+1)`; `None` for the longest element.
fn first_ascent(sigma: &Permutation, m: usize) -> Option<usize> {
    (1..m).find(|&i| sigma.apply(i) < sigma.apply(i + 1))
}

fn check_ambient(sigma: &Permutation, m: usize, universe: Universe) -> Result<()> {
    if sigma.size() > m || m > universe.n() + 1 {
        return Err(Error::AmbientTooSmall {
            perm: sigma.to_string(),
            m,
        });
    }
    Ok(())
}

/// Smallest ambient size holding `σ`.
fn ambient(sigma: &Permutation) -> usize {
    sigma.size().max(1)
}

/// `𝔖_σ(x)` computed in `S_m`.
pub fn schubert_poly(sigma: &Permutation, m: usize, universe: Universe) -> Result<Polynomial> {
    SchubertCache::global().single(sigma, m, universe)
}

/// `𝔖_σ(x, b)` computed in `S_m` by the chosen route.
pub fn double_schubert(
    sigma: &Permutation,
    m: usize,
    route: Route,
    universe: Universe,
) -> Result<Polynomial> {
    SchubertCache::global().double(sigma, m, route, universe)
}

/// `Π_{i+j ≤ m} (x_i - b_j)`.
pub fn staircase_product(m: usize, universe: Universe) -> Polynomial {
    let mut p = universe.one();
    for i in 1..m {
        for j in 1..=m - i {
            p = &p * &(&universe.x(i) - &universe.b(j));
        }
    }
    p
}

/// `x_id = r(x_1 + … + x_{d_1}) + (r-1)(x_{d_1+1} + … + x_{d_2}) + …`.
pub fn x_id(config: &FlagConfig, universe: Universe) -> Polynomial {
    let mut p = universe.zero();
    for k in 1..=config.n() {
        p += &universe.x(k).scale(&int(config.multiplier(k) as i64));
    }
    p
}

/// `𝔖_div = Σ_i 𝔖_{s_{d_i}}(x)`, which equals `x_id`.
pub fn schubert_div(config: &FlagConfig, universe: Universe) -> Result<Polynomial> {
    let mut p = universe.zero();
    for &d in config.dims() {
        let s = Permutation::simple(d);
        p += &schubert_poly(&s, ambient(&s), universe)?;
    }
    Ok(p)
}

/// The ring isomorphism `ℚ[x, b] ≅ ℚ[x, b^w]` given by
/// `b_l = b^w_l - (w_l/u) x_id`, with `w_l = 0` for `l > n`.
#[derive(Clone, Debug)]
pub struct WeightedSubstitution {
    config: FlagConfig,
    wd: WeightData,
    universe: Universe,
    x_id: Polynomial,
}

impl WeightedSubstitution {
    pub fn new(config: &FlagConfig, wd: &WeightData, universe: Universe) -> Result<Self> {
        if wd.u == 0 {
            return Err(Error::ZeroShift);
        }
        if wd.n() != config.n() || universe.n() < config.n() {
            return Err(Error::InvalidWeights(format!(
                "weights {:?} do not match n={} (universe n={})",
                wd.weights,
                config.n(),
                universe.n()
            )));
        }
        Ok(Self {
            config: config.clone(),
            wd: wd.clone(),
            universe,
            x_id: x_id(config, universe),
        })
    }

    pub fn config(&self) -> &FlagConfig {
        &self.config
    }

    pub fn weights(&self) -> &WeightData {
        &self.wd
    }

    pub fn universe(&self) -> Universe {
        self.universe
    }

    pub fn x_id(&self) -> &Polynomial {
        &self.x_id
    }

    /// `w_l / u`.
    fn ratio(&self, l: usize) -> Rational {
        Rational::new(self.wd.w(l).into(), self.wd.u.into())
    }

    fn b_indices(&self) -> std::ops::RangeInclusive<usize> {
        1..=self.universe.n() + 1
    }

    /// `b_l ↦ b^w_l - (w_l/u) x_id`.
    pub fn to_weighted(&self, f: &Polynomial) -> Result<Polynomial> {
        let u = self.universe;
        let map = self
            .b_indices()
            .map(|l| (Var::B(l as u8), &u.bw(l) - &self.x_id.scale(&self.ratio(l))))
            .collect();
        f.substitute(&map)
    }

    /// `b^w_l ↦ b_l + (w_l/u) x_id`.
    pub fn from_weighted(&self, f: &Polynomial) -> Result<Polynomial> {
        let u = self.universe;
        let map = self
            .b_indices()
            .map(|l| (Var::Bw(l as u8), &u.b(l) + &self.x_id.scale(&self.ratio(l))))
            .collect();
        f.substitute(&map)
    }

    /// `b_l ↦ -(w_l/u) x_id`, i.e. `to_weighted` followed by `b^w = 0`.
    pub fn weighted_origin(&self, f: &Polynomial) -> Result<Polynomial> {
        let map = self
            .b_indices()
            .map(|l| (Var::B(l as u8), -&self.x_id.scale(&self.ratio(l))))
            .collect();
        f.substitute(&map)
    }
}

/// `w𝔖_σ(x, b^w)`: the image of `𝔖_σ(x, b)` in `ℚ[x, b^w]`.
pub fn weighted_double_schubert(sigma: &Permutation, ws: &WeightedSubstitution) -> Result<Polynomial> {
    check_weighted_size(sigma, ws)?;
    let p = double_schubert(sigma, ambient(sigma), Route::DividedDifference, ws.universe)?;
    ws.to_weighted(&p)
}

/// `w𝔖_σ(x) = w𝔖_σ(x, 0) = 𝔖_σ(x, -(w_1/u) x_id, -(w_2/u) x_id, …)`.
pub fn weighted_schubert(sigma: &Permutation, ws: &WeightedSubstitution) -> Result<Polynomial> {
    check_weighted_size(sigma, ws)?;
    let p = double_schubert(sigma, ambient(sigma), Route::DividedDifference, ws.universe)?;
    ws.weighted_origin(&p)
}

fn check_weighted_size(sigma: &Permutation, ws: &WeightedSubstitution) -> Result<()> {
    if sigma.size() > ws.config.n() + 1 {
        return Err(Error::AmbientTooSmall {
            perm: sigma.to_string(),
            m: ws.config.n() + 1,
        });
    }
    Ok(())
}

/// `𝔖_σ(b_{τ(1)}, …, b_{τ(n)}; b)`.
pub fn kaji_specialize(sigma: &Permutation, tau: &Permutation, universe: Universe) -> Result<Polynomial> {
    let n = universe.n();
    if tau.size() > n {
        return Err(Error::AmbientTooSmall {
            perm: tau.to_string(),
            m: n,
        });
    }
    let p = double_schubert(sigma, ambient(sigma), Route::DividedDifference, universe)?;
    let map = (1..=n).map(|i| (Var::X(i as u8), universe.b(tau.apply(i)))).collect();
    p.substitute(&map)
}

/// `b^w_τ = Σ_k m_k b^w_{τ(k)}`.
pub fn bw_sigma(tau: &Permutation, config: &FlagConfig, universe: Universe) -> Polynomial {
    let mut p = universe.zero();
    for k in 1..=config.n() {
        p += &universe.bw(tau.apply(k)).scale(&int(config.multiplier(k) as i64));
    }
    p
}

/// `α_τ`: `x_i ↦ b^w_{τ(i)} - (w_{τ(i)}/w_τ) b^w_τ` for `i ≤ n + 1`.
///
/// Sends `x_id` to `(u/w_τ) b^w_τ`; this is asserted.
pub fn alpha_tau(f: &Polynomial, tau: &Permutation, ws: &WeightedSubstitution) -> Result<Polynomial> {
    let config = ws.config();
    let u = ws.universe();
    config.check_min_rep(tau)?;
    let w_tau = perm_weight(tau, config, ws.weights());
    assert!(w_tau > 0, "w_τ must be positive");
    let bw_tau = bw_sigma(tau, config, u);
    let map: BTreeMap<Var, Polynomial> = (1..=config.n() + 1)
        .map(|i| {
            let ti = tau.apply(i);
            let ratio = Rational::new(ws.weights().w(ti).into(), w_tau.into());
            (Var::X(i as u8), &u.bw(ti) - &bw_tau.scale(&ratio))
        })
        .collect();
    let image_of_x_id = ws.x_id().substitute(&map)?;
    assert_eq!(
        image_of_x_id,
        bw_tau.scale(&Rational::new(ws.weights().u.into(), w_tau.into())),
        "α_τ(x_id) = (u/w_τ) b^w_τ"
    );
    f.substitute(&map)
}

/// Expansion of `p ∈ ℚ[x, b]` in the double Schubert basis over `ℚ[b]`.
///
/// Repeatedly takes the top `x`-degree part, whose largest `x`-monomial
/// (lexicographic, later variables more significant) is `x^{code(w)}` for the
/// next basis element `𝔖_w`.
pub fn expand_double(p: &Polynomial) -> Result<Vec<(Permutation, Polynomial)>> {
    let u = p.universe();
    let is_x = |v: Var| matches!(v, Var::X(_));
    let mut residual = p.clone();
    let mut out: BTreeMap<Permutation, Polynomial> = BTreeMap::new();
    while !residual.is_zero() {
        let top = residual
            .terms()
            .map(|(m, _)| m.restrict(is_x).degree())
            .max()
            .unwrap();
        let lead = residual
            .terms()
            .map(|(m, _)| m.restrict(is_x))
            .filter(|m| m.degree() == top)
            .max_by(|a, b| x_lex(a, b, u))
            .unwrap();
        let code: Vec<usize> = (1..=u.n() + 1)
            .map(|i| lead.exponent(Var::X(i as u8)) as usize)
            .collect();
        let w = Permutation::from_code(&code);
        let mut coeff = u.zero();
        for (m, c) in residual.terms() {
            if m.restrict(is_x) == lead {
                coeff += &Polynomial::monomial(u, m.restrict(|v| !is_x(v)), c.clone());
            }
        }
        let basis = double_schubert(&w, ambient(&w), Route::DividedDifference, u)?;
        residual -= &(&coeff * &basis);
        let entry = out.entry(w).or_insert_with(|| u.zero());
        *entry += &coeff;
    }
    Ok(out.into_iter().filter(|(_, c)| !c.is_zero()).collect())
}

fn x_lex(a: &crate::poly::Monomial, b: &crate::poly::Monomial, u: Universe) -> std::cmp::Ordering {
    for i in (1..=u.n() + 1).rev() {
        let v = Var::X(i as u8);
        match a.exponent(v).cmp(&b.exponent(v)) {
            std::cmp::Ordering::Equal => {}
            ord => return ord,
        }
    }
    std::cmp::Ordering::Equal
}

/// Linear forms `x_i - x_{i+1}`; handy for tests of `∂_i`.
pub fn simple_root(i: usize, universe: Universe) -> LinearForm {
    LinearForm::new(&universe.x(i) - &universe.x(i + 1)).expect("nonzero")
}

/// `f|_{b = 0}`.
pub fn set_b_zero(f: &Polynomial) -> Result<Polynomial> {
    let u = f.universe();
    let map = (1..=u.n() + 1).map(|l| (Var::B(l as u8), u.zero())).collect();
    f.substitute(&map)
}

/// Rank of the coefficient matrix of polynomials over `ℚ`, by elimination.
pub fn rank(polys: &[Polynomial]) -> usize {
    let mut rows: Vec<BTreeMap<crate::poly::Monomial, Rational>> = polys
        .iter()
        .map(|p| p.terms().map(|(m, c)| (m.clone(), c.clone())).collect())
        .collect();
    let mut rank = 0;
    while let Some(pos) = rows.iter().position(|r| !r.is_empty()) {
        let pivot_row = rows.swap_remove(pos);
        let (pm, pc) = pivot_row.iter().next_back().map(|(m, c)| (m.clone(), c.clone())).unwrap();
        for row in rows.iter_mut() {
            if let Some(c) = row.get(&pm).cloned() {
                let factor = c / &pc;
                for (m, a) in &pivot_row {
                    let e = row.entry(m.clone()).or_insert_with(Rational::zero);
                    *e -= &factor * a;
                }
                row.retain(|_, a| !a.is_zero());
            }
        }
        rank += 1;
    }
    rank
}
