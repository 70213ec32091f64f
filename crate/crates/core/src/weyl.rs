//! Type A Weyl group combinatorics.
//!
//! Permutations are stored in one-line notation with trailing fixed points
//! trimmed, so `S_n` embeds in `S_{n+1}` without duplicates. Positions and
//! values are 1-based throughout, matching the usual notation `σ(1),…,σ(m)`.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;

use crate::error::{Error, Result};

/// An element of `S_∞` in one-line notation.
///
/// The derived ordering agrees with the lexicographic order of the padded
/// one-line words.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Permutation {
    word: Vec<u8>,
}

impl Permutation {
    pub fn identity() -> Self {
        Self::default()
    }

    /// Builds a permutation from its one-line word `σ(1),…,σ(m)`.
    pub fn from_word(word: &[usize]) -> Result<Self> {
        let m = word.len();
        if m > u8::MAX as usize {
            return Err(Error::InvalidPermutation(format!("word too long ({m})")));
        }
        let mut seen = vec![false; m + 1];
        for &v in word {
            if v == 0 || v > m || seen[v] {
                return Err(Error::InvalidPermutation(format!(
                    "{word:?} is not a permutation of 1..{m}"
                )));
            }
            seen[v] = true;
        }
        Ok(Self::from_word_unchecked(word.iter().map(|&v| v as u8).collect()))
    }

    fn from_word_unchecked(mut word: Vec<u8>) -> Self {
        while word.last().is_some_and(|&v| v as usize == word.len()) {
            word.pop();
        }
        Self { word }
    }

    /// The simple reflection `s_i = (i, i+1)`.
    pub fn simple(i: usize) -> Self {
        assert!(i >= 1, "simple reflections are indexed from 1");
        let mut word: Vec<u8> = (1..=(i + 1) as u8).collect();
        word.swap(i - 1, i);
        Self::from_word_unchecked(word)
    }

    /// The product `s_{i_1} s_{i_2} ⋯ s_{i_k}`.
    pub fn from_reduced_word(indices: &[usize]) -> Self {
        indices
            .iter()
            .fold(Self::identity(), |acc, &i| acc.swap_positions(i, i + 1))
    }

    /// The longest element `(m, m-1, …, 1)` of `S_m`.
    pub fn longest(m: usize) -> Self {
        Self::from_word_unchecked((1..=m as u8).rev().collect())
    }

    /// Smallest `m` with the permutation in `S_m`.
    pub fn size(&self) -> usize {
        self.word.len()
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }

    /// `σ(i)`; positions beyond the stored word are fixed.
    pub fn apply(&self, i: usize) -> usize {
        self.word.get(i.wrapping_sub(1)).map_or(i, |&v| v as usize)
    }

    /// The one-line word padded to length `n`.
    pub fn word(&self, n: usize) -> Vec<usize> {
        assert!(n >= self.size(), "permutation does not fit in S_{n}");
        (1..=n).map(|i| self.apply(i)).collect()
    }

    pub fn word_string(&self, n: usize) -> String {
        self.word(n.max(1)).iter().join(",")
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u8; self.size()];
        for (i, &v) in self.word.iter().enumerate() {
            inv[v as usize - 1] = (i + 1) as u8;
        }
        Self::from_word_unchecked(inv)
    }

    /// The composition `self ∘ other`, i.e. `k ↦ self(other(k))`.
    pub fn compose(&self, other: &Self) -> Self {
        let m = self.size().max(other.size());
        Self::from_word_unchecked(
            (1..=m).map(|k| self.apply(other.apply(k)) as u8).collect(),
        )
    }

    /// Right multiplication `σ·t_{ab}`: swaps the entries in positions `a`, `b`.
    pub fn swap_positions(&self, a: usize, b: usize) -> Self {
        let m = self.size().max(a).max(b);
        let mut word: Vec<u8> = (1..=m).map(|k| self.apply(k) as u8).collect();
        word.swap(a - 1, b - 1);
        Self::from_word_unchecked(word)
    }

    /// Left multiplication `t_{ij}·σ`: swaps the values `i` and `j`.
    pub fn swap_values(&self, i: usize, j: usize) -> Self {
        let m = self.size().max(i).max(j);
        let word = (1..=m)
            .map(|k| {
                let v = self.apply(k);
                (if v == i {
                    j
                } else if v == j {
                    i
                } else {
                    v
                }) as u8
            })
            .collect();
        Self::from_word_unchecked(word)
    }

    /// `Inv(σ) = {(i,j) : i<j, σ(i)>σ(j)}` as position pairs.
    pub fn inversions(&self) -> Vec<(usize, usize)> {
        let m = self.size();
        let mut out = Vec::new();
        for i in 1..=m {
            for j in i + 1..=m {
                if self.apply(i) > self.apply(j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn length(&self) -> usize {
        let w = &self.word;
        let mut count = 0;
        for i in 0..w.len() {
            for j in i + 1..w.len() {
                if w[i] > w[j] {
                    count += 1;
                }
            }
        }
        count
    }

    /// Positions `i` with `σ(i) > σ(i+1)`.
    pub fn descents(&self) -> Vec<usize> {
        (1..self.size())
            .filter(|&i| self.apply(i) > self.apply(i + 1))
            .collect()
    }

    /// A reduced word found by greedy descent, so that
    /// `from_reduced_word(&σ.reduced_word()) == σ`.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut cur = self.clone();
        let mut word = Vec::new();
        while let Some(&i) = cur.descents().first() {
            cur = cur.swap_positions(i, i + 1);
            word.push(i);
        }
        word.reverse();
        word
    }

    /// Lehmer code: `c_i = #{j > i : σ(j) < σ(i)}`.
    pub fn code(&self) -> Vec<usize> {
        let m = self.size();
        (1..=m)
            .map(|i| ((i + 1)..=m).filter(|&j| self.apply(j) < self.apply(i)).count())
            .collect()
    }

    /// Inverse of [`Permutation::code`]; trailing zeros are allowed.
    pub fn from_code(code: &[usize]) -> Self {
        let m = code
            .iter()
            .enumerate()
            .map(|(i, &c)| i + 1 + c)
            .max()
            .unwrap_or(0)
            .max(code.len());
        let mut remaining: Vec<usize> = (1..=m).collect();
        let mut word = Vec::with_capacity(m);
        for i in 0..m {
            let c = code.get(i).copied().unwrap_or(0);
            word.push(remaining.remove(c) as u8);
        }
        Self::from_word_unchecked(word)
    }

    /// All elements of `S_m`.
    pub fn all(m: usize) -> impl Iterator<Item = Permutation> {
        (1..=m)
            .permutations(m)
            .map(|w| Self::from_word_unchecked(w.into_iter().map(|v| v as u8).collect()))
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({self})")
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            f.write_str("1")
        } else {
            f.write_str(&self.word.iter().join(","))
        }
    }
}

/// Accepts one-line notation (`1,4,2,3`), products of simple reflections
/// (`s2*s1`) and `id`.
impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "id" || s == "e" {
            return Ok(Self::identity());
        }
        if s.starts_with('s') {
            let mut indices = Vec::new();
            for factor in s.split(|c: char| c == '*' || c.is_whitespace()) {
                if factor.is_empty() {
                    continue;
                }
                let idx = factor
                    .strip_prefix('s')
                    .and_then(|d| d.parse::<usize>().ok())
                    .filter(|&i| i >= 1)
                    .ok_or_else(|| Error::Parse(format!("bad simple reflection {factor:?}")))?;
                indices.push(idx);
            }
            return Ok(Self::from_reduced_word(&indices));
        }
        let word = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad permutation entry {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_word(&word)
    }
}

/// A partial flag type `(n; d_1 < … < d_r)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FlagConfig {
    n: usize,
    dims: Vec<usize>,
}

impl FlagConfig {
    pub fn new(n: usize, dims: Vec<usize>) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidConfig(format!("n must be at least 2, got {n}")));
        }
        if dims.is_empty() {
            return Err(Error::InvalidConfig("dims must be non-empty".into()));
        }
        if dims[0] == 0 || *dims.last().unwrap() >= n {
            return Err(Error::InvalidConfig(format!(
                "dims {dims:?} must lie strictly between 0 and {n}"
            )));
        }
        if dims.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidConfig(format!(
                "dims {dims:?} must be strictly increasing"
            )));
        }
        Ok(Self { n, dims })
    }

    /// The complete flag variety `d = (1, …, n-1)`.
    pub fn full(n: usize) -> Result<Self> {
        Self::new(n, (1..n).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn r(&self) -> usize {
        self.dims.len()
    }

    /// Blocks `[d_p + 1, d_{p+1}]` for `p = 0..=r` (1-based, inclusive).
    pub fn blocks(&self) -> Vec<(usize, usize)> {
        let mut bounds = vec![0];
        bounds.extend(&self.dims);
        bounds.push(self.n);
        bounds.windows(2).map(|w| (w[0] + 1, w[1])).collect()
    }

    /// Index `p` of the block containing position `pos`.
    pub fn block_of(&self, pos: usize) -> usize {
        self.dims.iter().filter(|&&d| d < pos).count()
    }

    /// Multiplicity `r - p` of position `pos` in `χ`, `y_σ`, `x_id` and `w_σ`.
    pub fn multiplier(&self, pos: usize) -> usize {
        self.r() - self.block_of(pos)
    }

    /// `dim Σ = Σ d_i (d_{i+1} - d_i)`.
    pub fn dimension(&self) -> usize {
        let mut next = self.dims[1..].to_vec();
        next.push(self.n);
        self.dims.iter().zip(next).map(|(d, e)| d * (e - d)).sum()
    }

    pub fn is_min_rep(&self, sigma: &Permutation) -> bool {
        sigma.size() <= self.n
            && self
                .blocks()
                .iter()
                .all(|&(a, b)| (a..b).all(|i| sigma.apply(i) < sigma.apply(i + 1)))
    }

    /// Minimal length representative of `σ W_P`: sorts each block.
    pub fn project(&self, sigma: &Permutation) -> Permutation {
        let mut word = sigma.word(self.n.max(sigma.size()));
        for (a, b) in self.blocks() {
            word[a - 1..b].sort_unstable();
        }
        Permutation::from_word_unchecked(word.into_iter().map(|v| v as u8).collect())
    }

    pub fn check_min_rep(&self, sigma: &Permutation) -> Result<()> {
        if self.is_min_rep(sigma) {
            Ok(())
        } else {
            Err(Error::NotMinimalRep {
                perm: sigma.to_string(),
                n: self.n,
                dims: self.dims.clone(),
            })
        }
    }

    pub fn check_dim(&self, d: usize) -> Result<()> {
        if self.dims.contains(&d) {
            Ok(())
        } else {
            Err(Error::NotAFlagDimension {
                d,
                dims: self.dims.clone(),
            })
        }
    }
}

/// `Inv_P(σ)`: inversions of a minimal coset representative.
///
/// Minimal representatives have no inversions inside a block, so the
/// result is `Inv(σ)`; the block condition is still checked.
pub fn inv_p(sigma: &Permutation, config: &FlagConfig) -> Result<Vec<(usize, usize)>> {
    config.check_min_rep(sigma)?;
    let inv = sigma.inversions();
    debug_assert!(inv
        .iter()
        .all(|&(i, j)| config.block_of(i) != config.block_of(j)));
    Ok(inv)
}

/// The minimal coset representatives `W^P` with their lengths.
#[derive(Clone, Debug)]
pub struct CosetSystem {
    config: FlagConfig,
    reps: Vec<Permutation>,
    lengths: Vec<usize>,
    index: HashMap<Permutation, usize>,
}

impl CosetSystem {
    /// Enumerates `W^P`, sorted by `(length, word)`.
    pub fn new(config: &FlagConfig) -> Self {
        let mut reps: Vec<(usize, Permutation)> = Permutation::all(config.n())
            .filter(|p| config.is_min_rep(p))
            .map(|p| (p.length(), p))
            .collect();
        reps.sort();
        let lengths = reps.iter().map(|(l, _)| *l).collect();
        let reps: Vec<Permutation> = reps.into_iter().map(|(_, p)| p).collect();
        let index = reps.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        Self {
            config: config.clone(),
            reps,
            lengths,
            index,
        }
    }

    pub fn config(&self) -> &FlagConfig {
        &self.config
    }

    pub fn reps(&self) -> &[Permutation] {
        &self.reps
    }

    pub fn lengths(&self) -> &[usize] {
        &self.lengths
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn index_of(&self, sigma: &Permutation) -> Option<usize> {
        self.index.get(sigma).copied()
    }

    pub fn contains(&self, sigma: &Permutation) -> bool {
        self.index.contains_key(sigma)
    }

    /// The maximal element `σ'_0`.
    pub fn longest(&self) -> &Permutation {
        self.reps.last().expect("W^P is never empty")
    }

    /// Bruhat covers inside `W^P` as index pairs `(lower, upper)`.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (a, sa) in self.reps.iter().enumerate() {
            for (b, sb) in self.reps.iter().enumerate() {
                if self.lengths[b] == self.lengths[a] + 1 && bruhat_leq(sa, sb) {
                    out.push((a, b));
                }
            }
        }
        out
    }
}

pub fn minimal_coset_reps(config: &FlagConfig) -> CosetSystem {
    CosetSystem::new(config)
}

/// Bruhat order by the tableau criterion:
/// `#{k ≤ i : σ(k) ≥ j} ≤ #{k ≤ i : τ(k) ≥ j}` for all `i, j`.
pub fn bruhat_leq(sigma: &Permutation, tau: &Permutation) -> bool {
    let m = sigma.size().max(tau.size());
    for j in 2..=m {
        let (mut cs, mut ct) = (0usize, 0usize);
        for i in 1..=m {
            cs += usize::from(sigma.apply(i) >= j);
            ct += usize::from(tau.apply(i) >= j);
            if cs > ct {
                return false;
            }
        }
    }
    true
}

/// An edge `σ -- τ` of the fixed-point graph, carrying the swapped values `i < j`.
/// `sigma` and `tau` are indices into the coset system.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub sigma: usize,
    pub tau: usize,
    pub i: usize,
    pub j: usize,
}

/// Pairs of representatives whose one-line words differ by swapping two values.
pub fn reflection_edges(system: &CosetSystem) -> Vec<Edge> {
    let n = system.config().n();
    let words: Vec<Vec<usize>> = system.reps().iter().map(|p| p.word(n)).collect();
    let mut out = Vec::new();
    for a in 0..words.len() {
        for b in a + 1..words.len() {
            let diff: Vec<usize> = (0..n).filter(|&k| words[a][k] != words[b][k]).collect();
            if let [p, q] = diff[..] {
                if words[a][p] == words[b][q] && words[a][q] == words[b][p] {
                    let (i, j) = (words[a][p].min(words[a][q]), words[a][p].max(words[a][q]));
                    out.push(Edge { sigma: a, tau: b, i, j });
                }
            }
        }
    }
    out
}

/// All edges of the moment graph of `G/P`: `σ W_P -- t_{ij} σ W_P` whenever the
/// two cosets differ. Contains [`reflection_edges`], and equals it for full flags.
pub fn moment_graph_edges(system: &CosetSystem) -> Vec<Edge> {
    let config = system.config();
    let n = config.n();
    let mut out = BTreeSet::new();
    for (a, sigma) in system.reps().iter().enumerate() {
        for i in 1..=n {
            for j in i + 1..=n {
                let tau = config.project(&sigma.swap_values(i, j));
                let b = system.index_of(&tau).expect("projection lands in W^P");
                if a < b {
                    out.insert(Edge { sigma: a, tau: b, i, j });
                }
            }
        }
    }
    out.into_iter().collect()
}

/// How `(ij)σ` acts on the one-line word.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Convention {
    /// `t_{ij}·σ`: swap the values `i` and `j`.
    ValueSwap,
    /// `σ·t_{ij}`: swap the entries in positions `i` and `j`.
    PositionSwap,
}

impl Convention {
    pub fn apply(self, sigma: &Permutation, i: usize, j: usize) -> Permutation {
        match self {
            Convention::ValueSwap => sigma.swap_values(i, j),
            Convention::PositionSwap => sigma.swap_positions(i, j),
        }
    }
}

/// Chevalley terms inside `W^P`: all `τ = (ij)σ ∈ W^P` with `i ≤ d < j ≤ n`
/// and `l(τ) = l(σ) + 1`.
pub fn monk_terms(
    sigma: &Permutation,
    d: usize,
    system: &CosetSystem,
    convention: Convention,
) -> Result<Vec<Permutation>> {
    let config = system.config();
    config.check_dim(d)?;
    config.check_min_rep(sigma)?;
    let target = sigma.length() + 1;
    let mut out = BTreeSet::new();
    for i in 1..=d {
        for j in d + 1..=config.n() {
            let tau = convention.apply(sigma, i, j);
            if tau.length() == target && system.contains(&tau) {
                out.insert(tau);
            }
        }
    }
    Ok(out.into_iter().collect())
}

/// Monk terms in the ambient group `S_m`: all `(ij)σ` with `i ≤ d < j ≤ m`
/// raising the length by one.
///
/// For `σ ∈ S_n`, transpositions with `j ≥ n + 2` raise the length by at least
/// three, so `m = n + 1` already captures every term.
pub fn monk_terms_embedded(
    sigma: &Permutation,
    d: usize,
    m: usize,
    convention: Convention,
) -> Vec<Permutation> {
    let target = sigma.length() + 1;
    let mut out = BTreeSet::new();
    for i in 1..=d {
        for j in d + 1..=m {
            let tau = convention.apply(sigma, i, j);
            if tau.length() == target {
                out.insert(tau);
            }
        }
    }
    out.into_iter().collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoincareCounts {
    pub dim: usize,
    pub counts: Vec<usize>,
}

/// Betti numbers: `counts[k] = #{σ ∈ W^P : l(σ) = k}`.
pub fn poincare_counts(system: &CosetSystem) -> PoincareCounts {
    let dim = system.config().dimension();
    let mut counts = vec![0; dim + 1];
    for &l in system.lengths() {
        counts[l] += 1;
    }
    assert_eq!(counts[dim], 1, "unique longest element");
    assert!(
        (0..=dim).all(|k| counts[k] == counts[dim - k]),
        "Poincaré polynomial is palindromic"
    );
    PoincareCounts { dim, counts }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn identity_and_trimming() {
        assert_eq!(p("1,2,3"), Permutation::identity());
        assert_eq!(p("2,1,3,4"), p("2,1"));
        assert_eq!(p("id").length(), 0);
        assert_eq!(p("2,1").word(4), vec![2, 1, 3, 4]);
    }

    #[test]
    fn rejects_non_permutations() {
        assert!(Permutation::from_word(&[1, 1, 2]).is_err());
        assert!(Permutation::from_word(&[0, 1]).is_err());
        assert!(Permutation::from_word(&[3, 1]).is_err());
        assert!("1,x".parse::<Permutation>().is_err());
    }

    #[test]
    fn length_and_inversions_examples() {
        assert_eq!(Permutation::identity().inversions(), vec![]);
        for n in 1..=6 {
            assert_eq!(Permutation::longest(n).length(), n * (n - 1) / 2);
        }
        let s = p("1,4,2,3");
        assert_eq!(s.length(), 2);
        assert_eq!(s.inversions(), vec![(2, 3), (2, 4)]);
    }

    #[test]
    fn simple_reflection_words() {
        assert_eq!(p("s2*s1").word(4), vec![3, 1, 2, 4]);
        assert_eq!(p("s1*s2").word(3), vec![2, 3, 1]);
        assert_eq!(Permutation::simple(2).word(3), vec![1, 3, 2]);
    }

    #[test]
    fn reduced_word_round_trip_and_length() {
        for sigma in Permutation::all(5) {
            let w = sigma.reduced_word();
            assert_eq!(w.len(), sigma.length());
            assert_eq!(Permutation::from_reduced_word(&w), sigma);
        }
    }

    #[test]
    fn code_round_trip() {
        for sigma in Permutation::all(5) {
            assert_eq!(Permutation::from_code(&sigma.code()), sigma);
            assert_eq!(sigma.code().iter().sum::<usize>(), sigma.length());
        }
    }

    #[test]
    fn config_validation() {
        assert!(FlagConfig::new(4, vec![1, 3]).is_ok());
        assert!(FlagConfig::new(4, vec![3, 1]).is_err());
        assert!(FlagConfig::new(4, vec![0, 2]).is_err());
        assert!(FlagConfig::new(4, vec![2, 4]).is_err());
        assert!(FlagConfig::new(4, vec![]).is_err());
    }

    #[test]
    fn coset_counts() {
        let sys = CosetSystem::new(&FlagConfig::new(4, vec![1, 3]).unwrap());
        assert_eq!(sys.len(), 12);
        let sys = CosetSystem::new(&FlagConfig::full(3).unwrap());
        assert_eq!(sys.len(), 6);
        let sys = CosetSystem::new(&FlagConfig::new(4, vec![2]).unwrap());
        assert_eq!(sys.len(), 6);
    }

    #[test]
    fn listed_gl4_representatives() {
        let config = FlagConfig::new(4, vec![1, 3]).unwrap();
        let sys = CosetSystem::new(&config);
        let listed = [
            "id", "s1", "s3", "s1*s3", "s2*s1", "s2*s3", "s2*s1*s3", "s1*s2*s3", "s3*s2*s1",
            "s3*s2*s3*s1", "s1*s2*s3*s1", "s3*s1*s2*s3*s1",
        ];
        let parsed: BTreeSet<Permutation> = listed.iter().map(|s| p(s)).collect();
        let reps: BTreeSet<Permutation> = sys.reps().iter().cloned().collect();
        assert_eq!(parsed, reps);
        assert_eq!(sys.longest().length(), config.dimension());
    }

    #[test]
    fn inv_p_examples() {
        let c2 = FlagConfig::new(2, vec![1]).unwrap();
        assert_eq!(inv_p(&Permutation::identity(), &c2).unwrap(), vec![]);
        assert_eq!(inv_p(&Permutation::simple(1), &c2).unwrap(), vec![(1, 2)]);
        let c4 = FlagConfig::new(4, vec![1, 3]).unwrap();
        assert_eq!(inv_p(&p("3,1,2,4"), &c4).unwrap(), vec![(1, 2), (1, 3)]);
        assert!(matches!(
            inv_p(&p("1,3,2,4"), &c4),
            Err(Error::NotMinimalRep { .. })
        ));
    }

    #[test]
    fn bruhat_examples() {
        let s1 = Permutation::simple(1);
        let s2 = Permutation::simple(2);
        assert!(!bruhat_leq(&s1, &s2));
        assert!(!bruhat_leq(&s2, &s1));
        for tau in Permutation::all(4) {
            assert!(bruhat_leq(&Permutation::identity(), &tau));
            assert!(bruhat_leq(&tau, &tau));
            assert!(bruhat_leq(&tau, &Permutation::longest(4)));
        }
    }

    #[test]
    fn reflection_edge_examples() {
        let sys = CosetSystem::new(&FlagConfig::new(2, vec![1]).unwrap());
        assert_eq!(reflection_edges(&sys), vec![Edge { sigma: 0, tau: 1, i: 1, j: 2 }]);
        let sys = CosetSystem::new(&FlagConfig::full(3).unwrap());
        let edges = reflection_edges(&sys);
        assert_eq!(edges.len(), 9);
        let id = sys.index_of(&Permutation::identity()).unwrap();
        let w0 = sys.index_of(&Permutation::longest(3)).unwrap();
        assert!(edges.iter().any(|e| e.sigma == id && e.tau == w0 && (e.i, e.j) == (1, 3)));
        assert_eq!(moment_graph_edges(&sys), edges);
    }

    #[test]
    fn moment_graph_of_projective_plane() {
        // P^2 has every pair of fixed points joined, including id -- 312,
        // which is not a value swap of one-line words.
        let sys = CosetSystem::new(&FlagConfig::new(3, vec![1]).unwrap());
        assert_eq!(moment_graph_edges(&sys).len(), 3);
        assert_eq!(reflection_edges(&sys).len(), 2);
    }

    #[test]
    fn monk_terms_from_identity() {
        for config in [FlagConfig::full(4).unwrap(), FlagConfig::new(4, vec![1, 3]).unwrap()] {
            let sys = CosetSystem::new(&config);
            for &d in config.dims() {
                for conv in [Convention::ValueSwap, Convention::PositionSwap] {
                    let terms = monk_terms(&Permutation::identity(), d, &sys, conv).unwrap();
                    assert_eq!(terms, vec![Permutation::simple(d)]);
                }
            }
        }
        let sys = CosetSystem::new(&FlagConfig::new(4, vec![1, 3]).unwrap());
        assert!(monk_terms(&Permutation::identity(), 2, &sys, Convention::PositionSwap).is_err());
    }

    #[test]
    fn monk_terms_embedded_reach_past_n() {
        let s1 = Permutation::simple(1);
        let terms = monk_terms_embedded(&s1, 1, 3, Convention::PositionSwap);
        assert_eq!(terms, vec![p("3,1,2")]);
        let s1 = Permutation::simple(1);
        let terms = monk_terms_embedded(&s1, 1, 4, Convention::PositionSwap);
        assert_eq!(terms, vec![p("3,1,2")]);
        // n = 3, σ = s1, d = 1: candidates with j = n + 1 = 4 appear.
        let sigma = p("2,1,3");
        let terms = monk_terms_embedded(&sigma, 1, 4, Convention::PositionSwap);
        assert!(terms.contains(&p("3,1,2")));
        for t in &terms {
            assert_eq!(t.length(), 2);
        }
        let sigma = p("1,3,2");
        let terms = monk_terms_embedded(&sigma, 3, 4, Convention::PositionSwap);
        assert_eq!(terms, vec![p("1,3,4,2"), p("1,4,2,3")]);
    }

    #[test]
    fn poincare_examples() {
        let pc = poincare_counts(&CosetSystem::new(&FlagConfig::new(4, vec![1, 3]).unwrap()));
        assert_eq!(pc.dim, 5);
        assert_eq!(pc.counts, vec![1, 2, 3, 3, 2, 1]);
        let pc = poincare_counts(&CosetSystem::new(&FlagConfig::new(2, vec![1]).unwrap()));
        assert_eq!((pc.dim, pc.counts), (1, vec![1, 1]));
        let pc = poincare_counts(&CosetSystem::new(&FlagConfig::full(3).unwrap()));
        assert_eq!((pc.dim, pc.counts), (3, vec![1, 2, 2, 1]));
    }
}
