//! Equivariant cohomology through fixed-point restrictions.
//!
//! A class is a tuple of polynomials indexed by `W^P`. Three presentations
//! are supported:
//!
//! - **straight**: `H^*_T(Σ)`, entries in `ℚ[y]`;
//! - **cone**: `H^*_K(aΣ^×)`, entry at `τ` taken modulo `⟨y_τ - z⟩`;
//! - **weighted**: `H^*_{T_w}(wΣ)`, entries in `ℚ[y^w]` where
//!   `y^w_i = y_i + (w_i/u) z`, stored as polynomials in `y` and `z`.
//!
//! Straight Schubert classes come from specializing double Schubert
//! polynomials; weighted ones from the map `α_τ`. Passing from a straight
//! entry at `τ` to the weighted entry is the substitution
//! `y_i ↦ y_i + (w_i/w_τ)(z - y_τ)`, called *transport* below.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock};

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{int, reduce_mod_linear, LinearForm, Polynomial, Rational, Universe, Var};
use crate::repr::{min_admissible_u, perm_weight, WeightData};
use crate::schubert::{
    alpha_tau, expand_double, kaji_specialize, weighted_double_schubert, weighted_schubert,
    WeightedSubstitution,
};
use crate::weyl::{
    bruhat_leq, monk_terms, monk_terms_embedded, moment_graph_edges, Convention, CosetSystem,
    Edge, FlagConfig, Permutation,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    Straight,
    Cone,
    Weighted,
}

impl Flavor {
    pub const ALL: [Flavor; 3] = [Flavor::Straight, Flavor::Cone, Flavor::Weighted];

    fn slot(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Flavor::Straight => "straight",
            Flavor::Cone => "cone",
            Flavor::Weighted => "weighted",
        })
    }
}

impl FromStr for Flavor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "straight" => Ok(Flavor::Straight),
            "cone" => Ok(Flavor::Cone),
            "weighted" => Ok(Flavor::Weighted),
            _ => Err(Error::Parse(format!(
                "unknown flavor {s:?} (expected straight, cone or weighted)"
            ))),
        }
    }
}

/// Per-fixed-point scalars, aligned with the coset system.
#[derive(Clone, Debug)]
pub struct EquivariantScalars {
    /// `y_σ = Σ_k m_k y_{σ(k)}`.
    pub y: Vec<Polynomial>,
    /// `y^w_σ = y_σ + ((w_σ - u)/u) z`; empty when `u = 0`.
    pub y_w: Vec<Polynomial>,
    /// `w_σ = Σ_k m_k w_{σ(k)} + u`.
    pub w: Vec<i64>,
    /// `h_σ = Π_{(i,j) ∈ Inv_P(σ)} 1/(q - p)`, `p, q` the blocks of `i, j`.
    pub h: Vec<Rational>,
}

/// A flag type with weight data, its fixed points and moment graph.
#[derive(Debug)]
pub struct GkmContext {
    config: FlagConfig,
    wd: WeightData,
    system: CosetSystem,
    universe: Universe,
    scalars: EquivariantScalars,
    ws: Option<WeightedSubstitution>,
    edges: Vec<Edge>,
    basis: [OnceLock<Vec<Vec<Polynomial>>>; 3],
}

impl GkmContext {
    pub fn new(config: &FlagConfig, wd: &WeightData) -> Result<Arc<Self>> {
        let wd = WeightData::new(config, wd.weights.clone(), wd.u)?;
        debug_assert!(wd.u >= min_admissible_u(&wd.weights, config));
        let system = CosetSystem::new(config);
        let universe = Universe::new(config.n());
        let ws = if wd.u > 0 {
            Some(WeightedSubstitution::new(config, &wd, universe)?)
        } else {
            None
        };
        let mut ctx = Self {
            config: config.clone(),
            wd,
            edges: moment_graph_edges(&system),
            system,
            universe,
            scalars: EquivariantScalars {
                y: Vec::new(),
                y_w: Vec::new(),
                w: Vec::new(),
                h: Vec::new(),
            },
            ws,
            basis: Default::default(),
        };
        let reps = ctx.system.reps().to_vec();
        ctx.scalars.y = reps.iter().map(|s| ctx.y_of(s)).collect();
        ctx.scalars.w = reps.iter().map(|s| ctx.w_of(s)).collect();
        ctx.scalars.h = reps.iter().map(|s| ctx.h_of(s)).collect();
        if ctx.wd.u > 0 {
            ctx.scalars.y_w = reps.iter().map(|s| ctx.yw_of(s)).collect();
        }
        Ok(Arc::new(ctx))
    }

    /// The unweighted context (`w = 0`, `u = 1`).
    pub fn trivial(config: &FlagConfig) -> Arc<Self> {
        Self::new(config, &WeightData::trivial(config)).expect("trivial weights are admissible")
    }

    pub fn config(&self) -> &FlagConfig {
        &self.config
    }

    pub fn weights(&self) -> &WeightData {
        &self.wd
    }

    pub fn system(&self) -> &CosetSystem {
        &self.system
    }

    pub fn universe(&self) -> Universe {
        self.universe
    }

    pub fn scalars(&self) -> &EquivariantScalars {
        &self.scalars
    }

    /// Edges of the moment graph, checked by [`verify_gkm`].
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.system.len()
    }

    pub fn is_empty(&self) -> bool {
        self.system.is_empty()
    }

    pub fn reps(&self) -> &[Permutation] {
        self.system.reps()
    }

    pub fn index_of(&self, sigma: &Permutation) -> Result<usize> {
        self.system.index_of(sigma).ok_or_else(|| Error::NotMinimalRep {
            perm: sigma.to_string(),
            n: self.config.n(),
            dims: self.config.dims().to_vec(),
        })
    }

    fn same_as(&self, other: &GkmContext) -> bool {
        std::ptr::eq(self, other) || (self.config == other.config && self.wd == other.wd)
    }

    pub fn substitution(&self) -> Result<&WeightedSubstitution> {
        self.ws.as_ref().ok_or(Error::ZeroShift)
    }

    fn require_weighted(&self, flavor: Flavor) -> Result<()> {
        if flavor == Flavor::Weighted {
            self.substitution()?;
        }
        Ok(())
    }

    /// `y_σ` for any permutation of `1..n`.
    pub fn y_of(&self, sigma: &Permutation) -> Polynomial {
        let u = self.universe;
        let mut p = u.zero();
        for k in 1..=self.config.n() {
            p += &u.y(sigma.apply(k)).scale(&int(self.config.multiplier(k) as i64));
        }
        p
    }

    pub fn w_of(&self, sigma: &Permutation) -> i64 {
        perm_weight(sigma, &self.config, &self.wd)
    }

    /// `y^w_σ = y_σ + ((w_σ - u)/u) z`. Requires `u > 0`.
    pub fn yw_of(&self, sigma: &Permutation) -> Polynomial {
        let ratio = Rational::new((self.w_of(sigma) - self.wd.u).into(), self.wd.u.into());
        &self.y_of(sigma) + &self.universe.z().scale(&ratio)
    }

    /// `y^w_i = y_i + (w_i/u) z`. Requires `u > 0`.
    pub fn yw(&self, i: usize) -> Polynomial {
        let ratio = Rational::new(self.wd.w(i).into(), self.wd.u.into());
        &self.universe.y(i) + &self.universe.z().scale(&ratio)
    }

    fn h_of(&self, sigma: &Permutation) -> Rational {
        let mut h = Rational::one();
        for (i, j) in sigma.inversions() {
            let (p, q) = (self.config.block_of(i), self.config.block_of(j));
            assert!(q > p, "inversions of W^P cross blocks");
            h /= int((q - p) as i64);
        }
        h
    }

    /// `y_i ↦ y_i + (w_i/w_τ)(z - y_τ)` for the fixed point with index `tau`.
    pub fn transport(&self, f: &Polynomial, tau: usize) -> Polynomial {
        if self.wd.is_trivial() {
            return f.clone();
        }
        let u = self.universe;
        let shift = &u.z() - &self.scalars.y[tau];
        let w_tau = self.scalars.w[tau];
        let map: BTreeMap<Var, Polynomial> = (1..=self.config.n())
            .map(|i| {
                let ratio = Rational::new(self.wd.w(i).into(), w_tau.into());
                (Var::Y(i as u8), &u.y(i) + &shift.scale(&ratio))
            })
            .collect();
        f.substitute(&map).expect("same universe")
    }

    /// Whether `f ∈ ℚ[y^w_1, …, y^w_n]`: rewriting `y_i = y^w_i - (w_i/u) z`
    /// must eliminate `z`.
    pub fn in_weighted_subring(&self, f: &Polynomial) -> bool {
        let Some(_) = self.ws else { return false };
        let u = self.universe;
        let map: BTreeMap<Var, Polynomial> = (1..=self.config.n())
            .map(|i| {
                let ratio = Rational::new(self.wd.w(i).into(), self.wd.u.into());
                (Var::Y(i as u8), &u.y(i) - &u.z().scale(&ratio))
            })
            .collect();
        f.substitute(&map)
            .expect("same universe")
            .uses_only(|v| matches!(v, Var::Y(_)))
    }

    /// Normal form of `f` modulo `⟨y_τ - z⟩`, eliminating `z`.
    pub fn cone_normalize(&self, f: &Polynomial, tau: usize) -> Polynomial {
        let g = LinearForm::new(&self.scalars.y[tau] - &self.universe.z()).expect("nonzero");
        reduce_mod_linear(f, &[g]).expect("single generator")
    }

    /// Brings a straight entry at `τ` into the given presentation.
    pub fn lift(&self, f: &Polynomial, tau: usize, flavor: Flavor) -> Polynomial {
        match flavor {
            Flavor::Straight => f.clone(),
            Flavor::Cone => self.cone_normalize(f, tau),
            Flavor::Weighted => self.transport(f, tau),
        }
    }

    fn normalize(&self, f: Polynomial, tau: usize, flavor: Flavor) -> Polynomial {
        if flavor == Flavor::Cone {
            self.cone_normalize(&f, tau)
        } else {
            f
        }
    }

    /// Restriction tables of all Schubert classes of a flavor, memoized.
    fn basis(self: &Arc<Self>, flavor: Flavor) -> Result<&Vec<Vec<Polynomial>>> {
        self.require_weighted(flavor)?;
        if let Some(b) = self.basis[flavor.slot()].get() {
            return Ok(b);
        }
        let mut table = Vec::with_capacity(self.len());
        for sigma in self.reps() {
            table.push(schubert_class(self, sigma, flavor)?.restrictions);
        }
        Ok(self.basis[flavor.slot()].get_or_init(|| table))
    }
}

/// A tuple of restrictions `c|_τ`, `τ ∈ W^P`, in a fixed presentation.
#[derive(Clone, Debug)]
pub struct GkmClass {
    flavor: Flavor,
    ctx: Arc<GkmContext>,
    restrictions: Vec<Polynomial>,
}

impl PartialEq for GkmClass {
    fn eq(&self, other: &Self) -> bool {
        self.flavor == other.flavor
            && self.ctx.same_as(&other.ctx)
            && self.restrictions == other.restrictions
    }
}

impl GkmClass {
    /// Builds a class from entries aligned with `ctx.reps()`. Cone entries
    /// are normalized.
    pub fn from_restrictions(
        ctx: &Arc<GkmContext>,
        flavor: Flavor,
        restrictions: Vec<Polynomial>,
    ) -> Result<Self> {
        ctx.require_weighted(flavor)?;
        if restrictions.len() != ctx.len() {
            return Err(Error::MissingRestriction(format!(
                "expected {} entries, got {}",
                ctx.len(),
                restrictions.len()
            )));
        }
        for f in &restrictions {
            if f.universe() != ctx.universe {
                return Err(Error::UniverseMismatch {
                    left: f.universe().n(),
                    right: ctx.universe.n(),
                });
            }
        }
        let restrictions = restrictions
            .into_iter()
            .enumerate()
            .map(|(t, f)| ctx.normalize(f, t, flavor))
            .collect();
        Ok(Self {
            flavor,
            ctx: ctx.clone(),
            restrictions,
        })
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn context(&self) -> &Arc<GkmContext> {
        &self.ctx
    }

    pub fn restrictions(&self) -> &[Polynomial] {
        &self.restrictions
    }

    pub fn restriction(&self, tau: &Permutation) -> Option<&Polynomial> {
        self.ctx.system.index_of(tau).map(|t| &self.restrictions[t])
    }

    pub fn is_zero(&self) -> bool {
        self.restrictions.iter().all(Polynomial::is_zero)
    }

    fn check_compatible(&self, other: &GkmClass) -> Result<()> {
        if self.flavor == other.flavor && self.ctx.same_as(&other.ctx) {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    fn zip_with(
        &self,
        other: &GkmClass,
        f: impl Fn(&Polynomial, &Polynomial) -> Polynomial,
    ) -> Result<GkmClass> {
        self.check_compatible(other)?;
        let entries = self
            .restrictions
            .iter()
            .zip(&other.restrictions)
            .map(|(a, b)| f(a, b))
            .collect();
        GkmClass::from_restrictions(&self.ctx, self.flavor, entries)
    }

    pub fn add(&self, other: &GkmClass) -> Result<GkmClass> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &GkmClass) -> Result<GkmClass> {
        self.zip_with(other, |a, b| a - b)
    }

    /// Multiplication by a scalar from the coefficient ring.
    pub fn scale(&self, c: &Polynomial) -> GkmClass {
        let entries = self.restrictions.iter().map(|f| f * c).collect();
        GkmClass::from_restrictions(&self.ctx, self.flavor, entries).expect("same context")
    }

    /// Entrywise multiplication by a tuple of polynomials.
    pub fn scale_pointwise(&self, tuple: &[Polynomial]) -> GkmClass {
        assert_eq!(tuple.len(), self.restrictions.len());
        let entries = self.restrictions.iter().zip(tuple).map(|(f, c)| f * c).collect();
        GkmClass::from_restrictions(&self.ctx, self.flavor, entries).expect("same context")
    }
}

fn check_min(ctx: &GkmContext, sigma: &Permutation) -> Result<usize> {
    ctx.config.check_min_rep(sigma)?;
    ctx.index_of(sigma)
}

/// `ξ_σ|_τ = 𝔖_σ(y_{τ(1)}, …, y_{τ(n)}; y_1, …, y_n)`.
pub fn straight_class(ctx: &Arc<GkmContext>, sigma: &Permutation) -> Result<GkmClass> {
    check_min(ctx, sigma)?;
    let u = ctx.universe;
    let b_to_y: BTreeMap<Var, Polynomial> = (1..=u.n() + 1)
        .map(|i| {
            let image = if i <= ctx.config.n() { u.y(i) } else { u.zero() };
            (Var::B(i as u8), image)
        })
        .collect();
    let mut entries = Vec::with_capacity(ctx.len());
    for tau in ctx.reps() {
        entries.push(kaji_specialize(sigma, tau, u)?.substitute(&b_to_y)?);
    }
    GkmClass::from_restrictions(ctx, Flavor::Straight, entries)
}

/// Straight entries read modulo `⟨y_τ - z⟩`.
pub fn cone_class(ctx: &Arc<GkmContext>, sigma: &Permutation) -> Result<GkmClass> {
    let straight = straight_class(ctx, sigma)?;
    GkmClass::from_restrictions(ctx, Flavor::Cone, straight.restrictions)
}

/// `wξ_σ|_τ = α_τ(w𝔖_σ(x, b^w))` with `b^w_i ↦ y^w_i` (`i ≤ n`) and `0` beyond.
pub fn weighted_class(ctx: &Arc<GkmContext>, sigma: &Permutation) -> Result<GkmClass> {
    check_min(ctx, sigma)?;
    let ws = ctx.substitution()?;
    let u = ctx.universe;
    let poly = weighted_double_schubert(sigma, ws)?;
    let bw_to_y: BTreeMap<Var, Polynomial> = (1..=u.n() + 1)
        .map(|i| {
            let image = if i <= ctx.config.n() { ctx.yw(i) } else { u.zero() };
            (Var::Bw(i as u8), image)
        })
        .collect();
    let mut entries = Vec::with_capacity(ctx.len());
    for tau in ctx.reps() {
        entries.push(alpha_tau(&poly, tau, ws)?.substitute(&bw_to_y)?);
    }
    GkmClass::from_restrictions(ctx, Flavor::Weighted, entries)
}

/// The weighted class obtained by transporting each straight entry; agrees
/// with [`weighted_class`].
pub fn weighted_class_by_transport(ctx: &Arc<GkmContext>, sigma: &Permutation) -> Result<GkmClass> {
    ctx.substitution()?;
    let straight = straight_class(ctx, sigma)?;
    transport_class(&straight)
}

/// Transports a straight class entrywise into the weighted presentation.
pub fn transport_class(c: &GkmClass) -> Result<GkmClass> {
    if c.flavor != Flavor::Straight {
        return Err(Error::ContextMismatch);
    }
    let entries = c
        .restrictions
        .iter()
        .enumerate()
        .map(|(t, f)| c.ctx.transport(f, t))
        .collect();
    GkmClass::from_restrictions(&c.ctx, Flavor::Weighted, entries)
}

pub fn schubert_class(ctx: &Arc<GkmContext>, sigma: &Permutation, flavor: Flavor) -> Result<GkmClass> {
    if let Some(b) = ctx.basis[flavor.slot()].get() {
        let t = check_min(ctx, sigma)?;
        return GkmClass::from_restrictions(ctx, flavor, b[t].clone());
    }
    match flavor {
        Flavor::Straight => straight_class(ctx, sigma),
        Flavor::Cone => cone_class(ctx, sigma),
        Flavor::Weighted => weighted_class(ctx, sigma),
    }
}

/// The unit class.
pub fn one_class(ctx: &Arc<GkmContext>, flavor: Flavor) -> Result<GkmClass> {
    GkmClass::from_restrictions(ctx, flavor, vec![ctx.universe.one(); ctx.len()])
}

/// `ξ_div = Σ_i ξ_{s_{d_i}}`.
pub fn divisor_class(ctx: &Arc<GkmContext>, flavor: Flavor) -> Result<GkmClass> {
    let mut total = GkmClass::from_restrictions(ctx, flavor, vec![ctx.universe.zero(); ctx.len()])?;
    for &d in ctx.config.dims() {
        total = total.add(&schubert_class(ctx, &Permutation::simple(d), flavor)?)?;
    }
    Ok(total)
}

/// `Σ c_σ ξ_σ` for scalars `c_σ` of the coefficient ring.
pub fn linear_combination(
    ctx: &Arc<GkmContext>,
    flavor: Flavor,
    terms: &[(Permutation, Polynomial)],
) -> Result<GkmClass> {
    let basis = ctx.basis(flavor)?;
    let mut entries = vec![ctx.universe.zero(); ctx.len()];
    for (sigma, c) in terms {
        let s = check_min(ctx, sigma)?;
        for (t, e) in entries.iter_mut().enumerate() {
            *e += &(c * &basis[s][t]);
        }
    }
    GkmClass::from_restrictions(ctx, flavor, entries)
}

/// The outcome of checking one edge `σ -- τ = (ij)σ` of the moment graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeCheck {
    pub sigma: Permutation,
    pub tau: Permutation,
    pub i: usize,
    pub j: usize,
    pub passed: bool,
    /// Straight flavor: divisibility by `y_i - y_j` as well as by `y_σ - y_τ`.
    pub passed_root: Option<bool>,
    /// `y_σ - y_τ` is a multiple of `y_i - y_j`.
    pub proportional: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GkmReport {
    pub flavor: Flavor,
    pub edges: Vec<EdgeCheck>,
    /// Weighted entries outside `ℚ[y^w]`.
    pub non_members: Vec<Permutation>,
}

impl GkmReport {
    pub fn passed(&self) -> bool {
        self.non_members.is_empty()
            && self.edges.iter().all(|e| e.passed && e.passed_root != Some(false))
    }

    pub fn first_failure(&self) -> Option<String> {
        if let Some(s) = self.non_members.first() {
            return Some(format!("entry at {s} is not in Q[y^w]"));
        }
        self.edges
            .iter()
            .find(|e| !e.passed || e.passed_root == Some(false))
            .map(|e| {
                format!(
                    "edge {} -- {} (values {}, {}) fails the {} condition",
                    e.sigma, e.tau, e.i, e.j, self.flavor
                )
            })
    }
}

/// Checks the GKM condition of the class's flavor on every moment-graph edge:
///
/// - straight: `c|_σ - c|_τ ∈ ⟨y_σ - y_τ⟩` (and `⟨y_i - y_j⟩`);
/// - cone: `c|_σ - c|_τ ≡ 0` modulo `⟨y_σ - z, y_τ - z⟩`;
/// - weighted: `c|_σ - c|_τ ∈ ⟨w_τ y^w_σ - w_σ y^w_τ⟩`, and every entry lies
///   in `ℚ[y^w]`.
pub fn verify_gkm(c: &GkmClass) -> GkmReport {
    let ctx = &c.ctx;
    let u = ctx.universe;
    let sc = &ctx.scalars;
    let mut edges = Vec::with_capacity(ctx.edges.len());
    for e in &ctx.edges {
        let (a, b) = (e.sigma, e.tau);
        let diff = &c.restrictions[a] - &c.restrictions[b];
        let root = LinearForm::new(&u.y(e.i) - &u.y(e.j)).expect("i ≠ j");
        let chord = LinearForm::new(&sc.y[a] - &sc.y[b]).expect("distinct fixed points");
        let proportional = chord.as_poly().div_exact_linear(&root).is_ok_and(|q| q.degree() == Some(0));
        let divides = |l: &LinearForm| diff.div_exact_linear(l).is_ok();
        let (passed, passed_root) = match c.flavor {
            Flavor::Straight => (divides(&chord), Some(divides(&root))),
            Flavor::Cone => {
                let gens = [
                    LinearForm::new(&sc.y[a] - &u.z()).expect("nonzero"),
                    LinearForm::new(&sc.y[b] - &u.z()).expect("nonzero"),
                ];
                (reduce_mod_linear(&diff, &gens).is_ok_and(|r| r.is_zero()), None)
            }
            Flavor::Weighted => {
                let l = &sc.y_w[a].scale(&int(sc.w[b])) - &sc.y_w[b].scale(&int(sc.w[a]));
                (divides(&LinearForm::new(l).expect("nonzero")), None)
            }
        };
        edges.push(EdgeCheck {
            sigma: ctx.reps()[a].clone(),
            tau: ctx.reps()[b].clone(),
            i: e.i,
            j: e.j,
            passed,
            passed_root,
            proportional,
        });
    }
    let non_members = if c.flavor == Flavor::Weighted {
        c.restrictions
            .iter()
            .zip(ctx.reps())
            .filter(|(f, _)| !ctx.in_weighted_subring(f))
            .map(|(_, s)| s.clone())
            .collect()
    } else {
        Vec::new()
    };
    GkmReport {
        flavor: c.flavor,
        edges,
        non_members,
    }
}

/// Pointwise product.
pub fn gkm_multiply(a: &GkmClass, b: &GkmClass) -> Result<GkmClass> {
    a.zip_with(b, |x, y| x * y)
}

/// Linear factors of `ξ_σ|_σ` in the class's presentation.
fn diagonal_factors(ctx: &GkmContext, s: usize, flavor: Flavor) -> Vec<LinearForm> {
    let u = ctx.universe;
    let sigma = &ctx.reps()[s];
    sigma
        .inversions()
        .into_iter()
        .map(|(i, j)| {
            let f = &u.y(sigma.apply(i)) - &u.y(sigma.apply(j));
            let f = if flavor == Flavor::Weighted { ctx.transport(&f, s) } else { f };
            LinearForm::new(f).expect("nonzero")
        })
        .collect()
}

/// Coefficients `c_σ` with `c = Σ c_σ ξ_σ`, by elimination along `W^P` in
/// order of increasing length. Only nonzero coefficients are returned.
pub fn expand_in_basis(c: &GkmClass) -> Result<Vec<(Permutation, Polynomial)>> {
    let ctx = &c.ctx;
    let basis = ctx.basis(c.flavor)?;
    let mut residual = c.restrictions.clone();
    let mut out = Vec::new();
    for s in 0..ctx.len() {
        let r = ctx.normalize(residual[s].clone(), s, c.flavor);
        if r.is_zero() {
            continue;
        }
        let mut coeff = r;
        for l in diagonal_factors(ctx, s, c.flavor) {
            coeff = coeff.div_exact_linear(&l).map_err(|_| {
                Error::NotInSpan(format!(
                    "entry at {} is not divisible by the diagonal of its Schubert class",
                    ctx.reps()[s]
                ))
            })?;
        }
        for (t, e) in residual.iter_mut().enumerate() {
            if !basis[s][t].is_zero() {
                *e = ctx.normalize(&*e - &(&coeff * &basis[s][t]), t, c.flavor);
            }
        }
        out.push((ctx.reps()[s].clone(), coeff));
    }
    if let Some(t) = residual
        .iter()
        .enumerate()
        .position(|(t, e)| !ctx.normalize(e.clone(), t, c.flavor).is_zero())
    {
        return Err(Error::NotInSpan(format!("residual left at {}", ctx.reps()[t])));
    }
    Ok(out)
}

/// `ξ_σ|_σ = Π_{(i,j) ∈ Inv_P(σ)} (y_{σ(i)} - y_{σ(j)})`.
pub fn kaji_diagonal(ctx: &GkmContext, sigma: &Permutation) -> Polynomial {
    let u = ctx.universe;
    sigma.inversions().into_iter().fold(u.one(), |acc, (i, j)| {
        &acc * &(&u.y(sigma.apply(i)) - &u.y(sigma.apply(j)))
    })
}

/// `h_σ Π (y_σ - y_{σ t_ij})`.
pub fn straight_diagonal(ctx: &GkmContext, sigma: &Permutation) -> Result<Polynomial> {
    let s = check_min(ctx, sigma)?;
    let y_s = &ctx.scalars.y[s];
    let mut p = ctx.universe.constant(ctx.scalars.h[s].clone());
    for (i, j) in sigma.inversions() {
        p = &p * &(y_s - &ctx.y_of(&sigma.swap_positions(i, j)));
    }
    Ok(p)
}

/// `h_σ Π (z - y_{σ t_ij})` modulo `⟨y_σ - z⟩`.
pub fn cone_diagonal(ctx: &GkmContext, sigma: &Permutation) -> Result<Polynomial> {
    let s = check_min(ctx, sigma)?;
    let z = ctx.universe.z();
    let mut p = ctx.universe.constant(ctx.scalars.h[s].clone());
    for (i, j) in sigma.inversions() {
        p = &p * &(&z - &ctx.y_of(&sigma.swap_positions(i, j)));
    }
    Ok(ctx.cone_normalize(&p, s))
}

/// `h_σ Π ((w_{σ t_ij}/w_σ) y^w_σ - y^w_{σ t_ij})`.
pub fn weighted_diagonal(ctx: &GkmContext, sigma: &Permutation) -> Result<Polynomial> {
    let s = check_min(ctx, sigma)?;
    ctx.substitution()?;
    let (yw_s, w_s) = (&ctx.scalars.y_w[s], ctx.scalars.w[s]);
    let mut p = ctx.universe.constant(ctx.scalars.h[s].clone());
    for (i, j) in sigma.inversions() {
        let t = sigma.swap_positions(i, j);
        let ratio = Rational::new(ctx.w_of(&t).into(), w_s.into());
        p = &p * &(&yw_s.scale(&ratio) - &ctx.yw_of(&t));
    }
    Ok(p)
}

/// Checks that `ξ_σ|_τ = 0` for `τ ⋡ σ` and that the diagonal entry matches
/// the closed product formula of the class's presentation.
pub fn check_restriction_formulas(c: &GkmClass, sigma: &Permutation) -> Result<bool> {
    let ctx = &c.ctx;
    let s = check_min(ctx, sigma)?;
    let vanishing = ctx
        .reps()
        .iter()
        .zip(&c.restrictions)
        .all(|(tau, f)| bruhat_leq(sigma, tau) || f.is_zero());
    let expected = match c.flavor {
        Flavor::Straight => {
            let closed = straight_diagonal(ctx, sigma)?;
            if closed != kaji_diagonal(ctx, sigma) {
                return Ok(false);
            }
            closed
        }
        Flavor::Cone => cone_diagonal(ctx, sigma)?,
        Flavor::Weighted => weighted_diagonal(ctx, sigma)?,
    };
    Ok(vanishing && c.restrictions[s] == expected)
}

/// The Chevalley product `ξ_{s_d} · ξ_σ` compared with
/// `m ⊙ ξ_σ + Σ ξ_{σ t_ab}`, the sum over [`monk_terms`] with positions
/// `a ≤ d < b`.
///
/// The multiplier is the tuple `m_τ = lift_τ(Σ_{j ≤ d} (y_{σ(j)} - y_j))`. In
/// the weighted presentation this is
/// `Σ_{j ≤ d} (y^w_{σ(j)} - y^w_j) - ((Σ_{j ≤ d} w_{σ(j)} - w_j)/w_τ) y^w_τ`.
#[derive(Clone, Debug)]
pub struct ChevalleyCheck {
    pub d: usize,
    pub sigma: Permutation,
    pub lhs: GkmClass,
    pub rhs: GkmClass,
    pub multiplier: Vec<Polynomial>,
    pub covers: Vec<Permutation>,
    /// `expand_in_basis(lhs - m ⊙ ξ_σ)`.
    pub cover_expansion: Vec<(Permutation, Polynomial)>,
    /// The coefficient of `ξ_σ` in `expand_in_basis(lhs)`.
    pub diagonal_coefficient: Polynomial,
}

impl ChevalleyCheck {
    pub fn entrywise(&self) -> bool {
        self.lhs == self.rhs
    }

    /// The expansion oracle: multiplier at `σ` plus unit cover coefficients.
    pub fn oracle(&self) -> bool {
        let s = self.lhs.ctx.system.index_of(&self.sigma).expect("σ ∈ W^P");
        let units: Vec<(Permutation, Polynomial)> = self
            .covers
            .iter()
            .map(|t| (t.clone(), self.lhs.ctx.universe.one()))
            .collect();
        let mut sorted = units;
        sorted.sort_by_key(|(t, _)| self.lhs.ctx.system.index_of(t));
        self.diagonal_coefficient == self.multiplier[s] && self.cover_expansion == sorted
    }

    pub fn passed(&self) -> bool {
        self.entrywise() && self.oracle()
    }

    /// First fixed point where the two sides differ.
    pub fn mismatch(&self) -> Option<String> {
        let ctx = &self.lhs.ctx;
        (0..ctx.len())
            .find(|&t| self.lhs.restrictions[t] != self.rhs.restrictions[t])
            .map(|t| {
                format!(
                    "d={} sigma={}: at {} lhs = {}, rhs = {}",
                    self.d,
                    self.sigma,
                    ctx.reps()[t],
                    self.lhs.restrictions[t],
                    self.rhs.restrictions[t]
                )
            })
            .or_else(|| {
                (!self.oracle()).then(|| {
                    format!(
                        "d={} sigma={}: basis expansion {:?} disagrees with covers {:?}",
                        self.d, self.sigma, self.cover_expansion, self.covers
                    )
                })
            })
    }
}

pub fn chevalley_product(
    ctx: &Arc<GkmContext>,
    d: usize,
    sigma: &Permutation,
    flavor: Flavor,
) -> Result<ChevalleyCheck> {
    ctx.config.check_dim(d)?;
    check_min(ctx, sigma)?;
    let u = ctx.universe;
    let divisor = schubert_class(ctx, &Permutation::simple(d), flavor)?;
    let xi = schubert_class(ctx, sigma, flavor)?;
    let lhs = gkm_multiply(&divisor, &xi)?;
    let c = (1..=d).fold(u.zero(), |acc, j| &(&acc + &u.y(sigma.apply(j))) - &u.y(j));
    let multiplier: Vec<Polynomial> = (0..ctx.len()).map(|t| ctx.lift(&c, t, flavor)).collect();
    let covers = monk_terms(sigma, d, &ctx.system, Convention::PositionSwap)?;
    let diagonal_part = xi.scale_pointwise(&multiplier);
    let mut rhs = diagonal_part.clone();
    for t in &covers {
        rhs = rhs.add(&schubert_class(ctx, t, flavor)?)?;
    }
    let cover_expansion = expand_in_basis(&lhs.sub(&diagonal_part)?)?;
    let diagonal_coefficient = expand_in_basis(&lhs)?
        .into_iter()
        .find(|(s, _)| s == sigma)
        .map_or_else(|| u.zero(), |(_, c)| c);
    Ok(ChevalleyCheck {
        d,
        sigma: sigma.clone(),
        lhs,
        rhs,
        multiplier,
        covers,
        cover_expansion,
        diagonal_coefficient,
    })
}

/// The weighted Chevalley–Monk identity
/// `w𝔖_{s_d} w𝔖_σ = ((Σ_{i ≤ d} w_i - w_{σ(i)})/u) x_id w𝔖_σ + Σ w𝔖_{σ t_ab}`
/// in `ℚ[x]`, the sum over `a ≤ d < b ≤ n + 1` raising the length by one.
#[derive(Clone, Debug)]
pub struct MonkCheck {
    pub d: usize,
    pub sigma: Permutation,
    pub terms: Vec<Permutation>,
    pub lhs: Polynomial,
    pub rhs: Polynomial,
}

impl MonkCheck {
    pub fn residual(&self) -> Polynomial {
        &self.lhs - &self.rhs
    }

    pub fn passed(&self) -> bool {
        self.lhs == self.rhs
    }
}

pub fn monk_identity_check(ws: &WeightedSubstitution, d: usize, sigma: &Permutation) -> Result<MonkCheck> {
    let n = ws.config().n();
    if d == 0 || d >= n {
        return Err(Error::InvalidConfig(format!("d = {d} must satisfy 1 <= d < {n}")));
    }
    if sigma.size() > n {
        return Err(Error::AmbientTooSmall {
            perm: sigma.to_string(),
            m: n,
        });
    }
    let wd = ws.weights();
    let lhs = &weighted_schubert(&Permutation::simple(d), ws)? * &weighted_schubert(sigma, ws)?;
    let shift: i64 = (1..=d).map(|i| wd.w(i) - wd.w(sigma.apply(i))).sum();
    let ratio = Rational::new(shift.into(), wd.u.into());
    let mut rhs = &ws.x_id().scale(&ratio) * &weighted_schubert(sigma, ws)?;
    let terms = monk_terms_embedded(sigma, d, n + 1, Convention::PositionSwap);
    for t in &terms {
        rhs += &weighted_schubert(t, ws)?;
    }
    Ok(MonkCheck {
        d,
        sigma: sigma.clone(),
        terms,
        lhs,
        rhs,
    })
}

/// `θ(p)`: expands `p ∈ ℚ[x, b]` in double Schubert polynomials and sends
/// `𝔖_σ(x, b) ↦ ξ_σ`, `b_i ↦ y_i`, dropping `σ ∉ W^P`.
///
/// For `p` symmetric in each block of `x` no terms are dropped, and the image
/// is the localization `θ(p)|_τ = p(y_{τ(1)}, …, y_{τ(n)}; y)`. The weighted
/// image is the entrywise transport of the straight one.
pub fn theta_image(ctx: &Arc<GkmContext>, p: &Polynomial, flavor: Flavor) -> Result<GkmClass> {
    ctx.require_weighted(flavor)?;
    let u = ctx.universe;
    if p.universe() != u {
        return Err(Error::UniverseMismatch {
            left: p.universe().n(),
            right: u.n(),
        });
    }
    if !p.uses_only(|v| matches!(v, Var::X(_) | Var::B(_))) {
        return Err(Error::NotInSpan(format!("{p} is not a polynomial in x and b")));
    }
    let b_to_y: BTreeMap<Var, Polynomial> = (1..=u.n() + 1)
        .map(|i| {
            let image = if i <= ctx.config.n() { u.y(i) } else { u.zero() };
            (Var::B(i as u8), image)
        })
        .collect();
    let mut terms = Vec::new();
    for (w, coeff) in expand_double(p)? {
        if ctx.system.contains(&w) {
            terms.push((w, coeff.substitute(&b_to_y)?));
        }
    }
    let straight = linear_combination(ctx, Flavor::Straight, &terms)?;
    match flavor {
        Flavor::Straight => Ok(straight),
        Flavor::Cone => GkmClass::from_restrictions(ctx, Flavor::Cone, straight.restrictions),
        Flavor::Weighted => transport_class(&straight),
    }
}

/// `θ(p)|_τ = p(x_i ↦ y_{τ(i)}, b_i ↦ y_i)`, read in the given presentation.
pub fn localize(ctx: &Arc<GkmContext>, p: &Polynomial, flavor: Flavor) -> Result<GkmClass> {
    let u = ctx.universe;
    let n = ctx.config.n();
    let mut entries = Vec::with_capacity(ctx.len());
    for (t, tau) in ctx.reps().iter().enumerate() {
        let map: BTreeMap<Var, Polynomial> = (1..=n + 1)
            .flat_map(|i| {
                let (x, b) = if i <= n { (u.y(tau.apply(i)), u.y(i)) } else { (u.zero(), u.zero()) };
                [(Var::X(i as u8), x), (Var::B(i as u8), b)]
            })
            .collect();
        entries.push(ctx.lift(&p.substitute(&map)?, t, flavor));
    }
    GkmClass::from_restrictions(ctx, flavor, entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;
    use crate::schubert::{double_schubert, x_id, Route};
    use num_traits::Zero;

    fn cfg(n: usize, dims: &[usize]) -> FlagConfig {
        FlagConfig::new(n, dims.to_vec()).unwrap()
    }

    fn ctx(n: usize, dims: &[usize], w: &[i64], shift: i64) -> Arc<GkmContext> {
        let config = cfg(n, dims);
        GkmContext::new(&config, &WeightData::new(&config, w.to_vec(), shift).unwrap()).unwrap()
    }

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn flavor_names() {
        for f in Flavor::ALL {
            assert_eq!(f.to_string().parse::<Flavor>().unwrap(), f);
        }
        assert!("round".parse::<Flavor>().is_err());
        assert_eq!(serde_json::to_string(&Flavor::Cone).unwrap(), "\"cone\"");
    }

    #[test]
    fn scalars_of_projective_line() {
        let c = ctx(2, &[1], &[3, 5], 2);
        let u = c.universe();
        assert_eq!(c.scalars().y[0], u.y(1));
        assert_eq!(c.scalars().w[0], 3 + 2);
        assert_eq!(c.scalars().w[1], 5 + 2);
        assert_eq!(c.scalars().h[1], Rational::one());
        let c0 = ctx(2, &[1], &[0, 0], 1);
        for s in 0..c0.len() {
            assert_eq!(c0.scalars().y_w[s], c0.scalars().y[s]);
        }
    }

    #[test]
    fn scalars_agree_with_tableau_weights() {
        use crate::repr::{tableau_of_perm, total_weight};
        let c = ctx(4, &[1, 3], &[1, 1, 2, 3], 5);
        for (s, sigma) in c.reps().iter().enumerate() {
            let y = tableau_of_perm(sigma, c.config()).unwrap();
            assert_eq!(c.scalars().w[s], total_weight(&y, c.weights()));
            let shift = rat(c.scalars().w[s] - 5, 5);
            assert_eq!(c.scalars().y_w[s], &c.scalars().y[s] + &c.universe().z().scale(&shift));
        }
    }

    #[test]
    fn simple_classes_restrict_to_differences() {
        let c = ctx(3, &[1, 2], &[0, 0, 0], 1);
        let u = c.universe();
        for d in [1, 2] {
            let xi = straight_class(&c, &Permutation::simple(d)).unwrap();
            for (tau, f) in c.reps().iter().zip(xi.restrictions()) {
                let expected = (1..=d).fold(u.zero(), |acc, j| &(&acc + &u.y(tau.apply(j))) - &u.y(j));
                assert_eq!(f, &expected);
            }
        }
        let one = straight_class(&c, &Permutation::identity()).unwrap();
        assert_eq!(one, one_class(&c, Flavor::Straight).unwrap());
    }

    #[test]
    fn divisor_restrictions() {
        let c = ctx(4, &[1, 3], &[1, 1, 2, 3], 5);
        let u = c.universe();
        let y_id = &c.scalars().y[0];
        let straight = divisor_class(&c, Flavor::Straight).unwrap();
        let cone = divisor_class(&c, Flavor::Cone).unwrap();
        for t in 0..c.len() {
            assert_eq!(straight.restrictions()[t], &c.scalars().y[t] - y_id);
            assert_eq!(cone.restrictions()[t], c.cone_normalize(&(&u.z() - y_id), t));
        }
        assert!(straight.restrictions()[0].is_zero());
    }

    #[test]
    fn weighted_projective_line() {
        let c = ctx(2, &[1], &[3, 5], 2);
        let xi = weighted_class(&c, &Permutation::simple(1)).unwrap();
        let expected = &c.yw(2).scale(&rat(5, 7)) - &c.yw(1);
        assert_eq!(xi.restrictions()[1], expected);
        assert!(xi.restrictions()[0].is_zero());
    }

    #[test]
    fn weighted_routes_agree_and_degenerate() {
        for (n, dims, w, shift) in [
            (3, vec![1, 2], vec![1, 2, 3], 1),
            (3, vec![1], vec![-1, 4, 0], 2),
            (4, vec![1, 3], vec![1, 1, 2, 3], 5),
        ] {
            let c = ctx(n, &dims, &w, shift);
            for sigma in c.reps() {
                assert_eq!(
                    weighted_class(&c, sigma).unwrap(),
                    weighted_class_by_transport(&c, sigma).unwrap(),
                    "σ = {sigma}"
                );
            }
        }
        let c = ctx(3, &[1, 2], &[0, 0, 0], 1);
        for sigma in c.reps() {
            let w = weighted_class(&c, sigma).unwrap();
            let s = straight_class(&c, sigma).unwrap();
            assert_eq!(w.restrictions(), s.restrictions());
        }
    }

    #[test]
    fn all_classes_pass_gkm() {
        for (n, dims, w, shift) in [
            (2, vec![1], vec![1, 2], 1),
            (3, vec![1, 2], vec![1, 2, 3], 1),
            (3, vec![1], vec![2, -1, 0], 2),
            (4, vec![2], vec![1, 1, 2, 3], 5),
        ] {
            let c = ctx(n, &dims, &w, shift);
            for flavor in Flavor::ALL {
                for sigma in c.reps() {
                    let xi = schubert_class(&c, sigma, flavor).unwrap();
                    let report = verify_gkm(&xi);
                    assert!(report.passed(), "{flavor} σ={sigma}: {:?}", report.first_failure());
                    assert!(report.edges.iter().all(|e| e.proportional));
                    assert!(check_restriction_formulas(&xi, sigma).unwrap());
                    for f in xi.restrictions() {
                        assert!(f.is_zero() || f.degree() == Some(sigma.length() as u32));
                        assert!(f.is_homogeneous());
                    }
                }
            }
        }
    }

    #[test]
    fn corrupted_class_fails() {
        let c = ctx(3, &[1, 2], &[1, 2, 3], 1);
        for flavor in Flavor::ALL {
            let xi = schubert_class(&c, &p("2,3,1"), flavor).unwrap();
            let mut entries = xi.restrictions().to_vec();
            let last = entries.len() - 1;
            entries[last] = &entries[last] + &c.universe().y(1).pow(2);
            let bad = GkmClass::from_restrictions(&c, flavor, entries).unwrap();
            assert!(!verify_gkm(&bad).passed(), "{flavor}");
            assert!(matches!(expand_in_basis(&bad), Err(Error::NotInSpan(_))));
        }
    }

    #[test]
    fn cone_restriction_identity() {
        // w_τ y^w_σ - w_σ y^w_τ ≡ -w_σ (y_τ - z) modulo ⟨y_σ - z⟩.
        let c = ctx(3, &[1, 2], &[1, 2, 3], 4);
        let u = c.universe();
        let sc = c.scalars();
        for e in c.edges() {
            let (a, b) = (e.sigma, e.tau);
            let lhs = &sc.y_w[a].scale(&int(sc.w[b])) - &sc.y_w[b].scale(&int(sc.w[a]));
            let rhs = (&sc.y[b] - &u.z()).scale(&int(-sc.w[a]));
            assert_eq!(c.cone_normalize(&lhs, a), c.cone_normalize(&rhs, a));
        }
    }

    #[test]
    fn product_examples() {
        let c = ctx(2, &[1], &[0, 0], 1);
        let u = c.universe();
        let xi = straight_class(&c, &Permutation::simple(1)).unwrap();
        let sq = gkm_multiply(&xi, &xi).unwrap();
        assert_eq!(sq, xi.scale(&(&u.y(2) - &u.y(1))));
        let one = one_class(&c, Flavor::Straight).unwrap();
        assert_eq!(gkm_multiply(&xi, &one).unwrap(), xi);
        let cone = cone_class(&c, &Permutation::simple(1)).unwrap();
        assert_eq!(gkm_multiply(&xi, &cone), Err(Error::ContextMismatch));
    }

    #[test]
    fn products_stay_in_gkm() {
        let c = ctx(3, &[1, 2], &[2, 1, 3], 1);
        for flavor in Flavor::ALL {
            let a = schubert_class(&c, &p("2,1"), flavor).unwrap();
            let b = schubert_class(&c, &p("1,3,2"), flavor).unwrap();
            let ab = gkm_multiply(&a, &b).unwrap();
            assert!(verify_gkm(&ab).passed());
            assert!(expand_in_basis(&ab).is_ok());
        }
    }

    #[test]
    fn expansion_examples() {
        let c = ctx(3, &[1, 2], &[1, 2, 3], 7);
        for flavor in Flavor::ALL {
            let one = one_class(&c, flavor).unwrap();
            assert_eq!(
                expand_in_basis(&one).unwrap(),
                vec![(Permutation::identity(), c.universe().one())]
            );
            for sigma in c.reps() {
                let xi = schubert_class(&c, sigma, flavor).unwrap();
                assert_eq!(expand_in_basis(&xi).unwrap(), vec![(sigma.clone(), c.universe().one())]);
            }
        }
    }

    #[test]
    fn expansion_round_trip() {
        let c = ctx(3, &[1, 2], &[1, 2, 3], 7);
        let u = c.universe();
        let terms = vec![
            (Permutation::identity(), (&u.y(1) - &u.y(3)).pow(2)),
            (p("2,1"), u.y(2).scale(&rat(-3, 2))),
            (p("3,1,2"), u.constant(rat(5, 4))),
        ];
        let combo = linear_combination(&c, Flavor::Straight, &terms).unwrap();
        assert_eq!(expand_in_basis(&combo).unwrap(), terms);
        let wterms: Vec<_> = terms
            .iter()
            .map(|(s, f)| {
                let map = (1..=3).map(|i| (Var::Y(i as u8), c.yw(i))).collect();
                (s.clone(), f.substitute(&map).unwrap())
            })
            .collect();
        let combo = linear_combination(&c, Flavor::Weighted, &wterms).unwrap();
        assert_eq!(expand_in_basis(&combo).unwrap(), wterms);
    }

    #[test]
    fn chevalley_full_flag_three() {
        let c = ctx(3, &[1, 2], &[1, 2, 3], 7);
        for flavor in Flavor::ALL {
            for sigma in c.reps() {
                for d in [1, 2] {
                    let check = chevalley_product(&c, d, sigma, flavor).unwrap();
                    assert!(check.passed(), "{flavor}: {:?}", check.mismatch());
                }
            }
        }
        let check = chevalley_product(&c, 1, &p("2,1"), Flavor::Weighted).unwrap();
        assert_eq!(check.covers, vec![p("3,1,2")]);
        let check = chevalley_product(&c, 1, &Permutation::identity(), Flavor::Weighted).unwrap();
        assert!(check.multiplier.iter().all(Polynomial::is_zero));
        assert_eq!(check.lhs, weighted_class(&c, &Permutation::simple(1)).unwrap());
        assert!(chevalley_product(&c, 3, &Permutation::identity(), Flavor::Weighted).is_err());
    }

    /// Expanding the weighted product directly: the cover `σ t_ab` picks up
    /// `1 - K·#{k : a ≤ d_k < b}/w_σ`, other-`d` covers `-K·#{…}/w_σ`,
    /// where `K = Σ_{j ≤ d} (w_{σ(j)} - w_j)`.
    #[test]
    fn chevalley_plain_expansion_closed_form() {
        let c = ctx(4, &[1, 3], &[1, 1, 2, 3], 5);
        let u = c.universe();
        for sigma in c.reps() {
            let s = c.system().index_of(sigma).unwrap();
            for &d in c.config().dims() {
                let check = chevalley_product(&c, d, sigma, Flavor::Weighted).unwrap();
                let expansion = expand_in_basis(&check.lhs).unwrap();
                let k: i64 = (1..=d).map(|j| c.weights().w(sigma.apply(j)) - c.weights().w(j)).sum();
                let w_s = c.scalars().w[s];
                let mut expected = BTreeMap::new();
                for &e in c.config().dims() {
                    for t in monk_terms(sigma, e, c.system(), Convention::PositionSwap).unwrap() {
                        let (a, b) = (1..=4)
                            .filter(|&q| t.apply(q) != sigma.apply(q))
                            .fold((usize::MAX, 0), |(lo, hi), q| (lo.min(q), hi.max(q)));
                        let mult = c.config().dims().iter().filter(|&&dk| a <= dk && dk < b).count();
                        let base = if check.covers.contains(&t) { 1 } else { 0 };
                        let coeff = int(base) - rat(k * mult as i64, w_s);
                        expected.insert(t, coeff);
                    }
                }
                for (t, coeff) in &expansion {
                    if t == sigma {
                        assert_eq!(coeff, &check.multiplier[s]);
                    } else {
                        let e = expected.get(t).cloned().unwrap_or_else(Rational::zero);
                        assert_eq!(coeff, &u.constant(e), "σ={sigma} d={d} τ={t}");
                    }
                }
                for (t, e) in &expected {
                    if !e.is_zero() {
                        assert!(expansion.iter().any(|(s, _)| s == t));
                    }
                }
            }
        }
    }

    #[test]
    fn value_swap_convention_fails_chevalley() {
        // n = 3, σ = s1, d = 1: the value swap would predict 2,3,1.
        let c = ctx(3, &[1, 2], &[0, 0, 0], 1);
        let sigma = p("2,1");
        let check = chevalley_product(&c, 1, &sigma, Flavor::Straight).unwrap();
        assert_eq!(check.cover_expansion, vec![(p("3,1,2"), c.universe().one())]);
        let value = Convention::ValueSwap.apply(&sigma, 1, 3);
        assert_eq!(value, p("2,3,1"));
        assert!(!check.covers.contains(&value));
    }

    #[test]
    fn monk_examples() {
        let config = FlagConfig::full(2).unwrap();
        let wd = WeightData::trivial(&config);
        let ws = WeightedSubstitution::new(&config, &wd, Universe::new(2)).unwrap();
        let check = monk_identity_check(&ws, 1, &p("2,1")).unwrap();
        assert_eq!(check.terms, vec![p("3,1,2")]);
        assert!(check.passed());
        assert_eq!(check.lhs, ws.universe().x(1).pow(2));

        for (n, w, shift) in [(3, vec![1, 2, 3], 1), (3, vec![2, -1, 4], 3), (2, vec![5, 1], 2)] {
            let config = FlagConfig::full(n).unwrap();
            let wd = WeightData::new(&config, w, shift).unwrap();
            let ws = WeightedSubstitution::new(&config, &wd, Universe::new(n)).unwrap();
            for sigma in Permutation::all(n) {
                for d in 1..n {
                    let check = monk_identity_check(&ws, d, &sigma).unwrap();
                    assert!(check.passed(), "σ={sigma} d={d}: residual {}", check.residual());
                }
            }
        }
    }

    #[test]
    fn theta_examples() {
        let c = ctx(4, &[1, 3], &[1, 1, 2, 3], 5);
        let u = c.universe();
        for flavor in Flavor::ALL {
            let one = theta_image(&c, &u.one(), flavor).unwrap();
            assert_eq!(one, one_class(&c, flavor).unwrap());
            for &d in c.config().dims() {
                let s = Permutation::simple(d);
                let sd = double_schubert(&s, d + 1, Route::DividedDifference, u).unwrap();
                assert_eq!(theta_image(&c, &sd, flavor).unwrap(), schubert_class(&c, &s, flavor).unwrap());
            }
        }
        let xid = x_id(c.config(), u);
        let cone = theta_image(&c, &xid, Flavor::Cone).unwrap();
        for t in 0..c.len() {
            assert_eq!(cone.restrictions()[t], c.cone_normalize(&u.z(), t));
        }
        let div = divisor_class(&c, Flavor::Cone).unwrap();
        let shifted = div.add(&one_class(&c, Flavor::Cone).unwrap().scale(&c.scalars().y[0])).unwrap();
        assert_eq!(shifted, cone);
    }

    #[test]
    fn theta_is_localization_on_block_symmetric_input() {
        let c = ctx(4, &[1, 3], &[1, 1, 2, 3], 5);
        let u = c.universe();
        let e1 = &(&u.x(2) + &u.x(3)) - &u.b(1);
        let e2 = &(&u.x(2) * &u.x(3)) + &u.b(2).scale(&int(2));
        let samples = [
            x_id(c.config(), u),
            &e1 * &e2,
            &(&u.x(1).pow(2) * &e1) - &u.b(3),
            &(&x_id(c.config(), u) * &e2) * &u.x(4),
        ];
        for f in &samples {
            for flavor in Flavor::ALL {
                assert_eq!(theta_image(&c, f, flavor).unwrap(), localize(&c, f, flavor).unwrap());
            }
        }
    }

    #[test]
    fn theta_weighted_matches_alpha() {
        // θ_w on ℚ[x, b^w] is localization by α_τ.
        let c = ctx(3, &[1, 2], &[2, 1, 3], 4);
        let u = c.universe();
        let ws = c.substitution().unwrap();
        let f = &(&u.x(1) * &x_id(c.config(), u)) - &u.b(2);
        let image = theta_image(&c, &f, Flavor::Weighted).unwrap();
        let g = ws.to_weighted(&f).unwrap();
        let bw_to_y: BTreeMap<Var, Polynomial> = (1..=4)
            .map(|i| (Var::Bw(i as u8), if i <= 3 { c.yw(i) } else { u.zero() }))
            .collect();
        for (t, tau) in c.reps().iter().enumerate() {
            let expected = alpha_tau(&g, tau, ws).unwrap().substitute(&bw_to_y).unwrap();
            assert_eq!(image.restrictions()[t], expected);
        }
    }

    #[test]
    fn errors() {
        let c = ctx(3, &[1], &[0, 0, 0], 1);
        assert!(matches!(straight_class(&c, &p("1,3,2")), Err(Error::NotMinimalRep { .. })));
        let config = cfg(2, &[1]);
        let zero_u = GkmContext::new(&config, &WeightData::new(&config, vec![1, 1], 0).unwrap()).unwrap();
        assert_eq!(weighted_class(&zero_u, &Permutation::identity()), Err(Error::ZeroShift));
        assert!(straight_class(&zero_u, &p("2,1")).is_ok());
        let too_small = WeightData { weights: vec![-3, 5], u: 1 };
        assert!(GkmContext::new(&config, &too_small).is_err());
    }
}
