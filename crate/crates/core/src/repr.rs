//! Staircase tableaux and the torus weights of `V_χ`, `χ = Σ ω_{d_i}`.
//!
//! Semi-standard fillings of the staircase diagram index the `T`-weight basis
//! `e_Y` of `V_χ`. Each `e_Y` is a product of minors of the generic matrix
//! `(x_{ij})`, one minor per column of `Y`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{Polynomial, Universe};
use crate::weyl::{CosetSystem, FlagConfig, Permutation};

/// Row lengths of the Young diagram of `χ`: `d_1` rows of length `r`, then
/// `d_2 - d_1` rows of length `r - 1`, down to `d_r - d_{r-1}` rows of length 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StaircaseShape {
    rows: Vec<usize>,
}

impl StaircaseShape {
    /// Any weakly decreasing list of positive row lengths.
    pub fn new(rows: Vec<usize>) -> Result<Self> {
        if rows.is_empty() || rows.contains(&0) || rows.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidConfig(format!("{rows:?} is not a partition")));
        }
        Ok(Self { rows })
    }

    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn num_columns(&self) -> usize {
        self.rows[0]
    }

    /// Length of column `c` (1-based).
    pub fn column_len(&self, c: usize) -> usize {
        self.rows.iter().filter(|&&l| l >= c).count()
    }

    pub fn boxes(&self) -> usize {
        self.rows.iter().sum()
    }
}

impl fmt::Display for StaircaseShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.rows.iter().map(usize::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

pub fn staircase_shape(config: &FlagConfig) -> StaircaseShape {
    let r = config.r();
    let mut rows = Vec::new();
    let mut prev = 0;
    for (k, &d) in config.dims().iter().enumerate() {
        rows.extend(std::iter::repeat_n(r - k, d - prev));
        prev = d;
    }
    StaircaseShape { rows }
}

/// A semi-standard filling: rows weakly increase, columns strictly increase.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Tableau {
    rows: Vec<Vec<u8>>,
}

impl Tableau {
    pub fn new(rows: Vec<Vec<u8>>) -> Result<Self> {
        let bad = |msg: &str| Error::InvalidConfig(format!("tableau {rows:?}: {msg}"));
        StaircaseShape::new(rows.iter().map(Vec::len).collect()).map_err(|_| bad("not a Young diagram"))?;
        for row in &rows {
            if row.contains(&0) {
                return Err(bad("entries start at 1"));
            }
            if row.windows(2).any(|w| w[0] > w[1]) {
                return Err(bad("row decreases"));
            }
        }
        for w in rows.windows(2) {
            if w[1].iter().zip(&w[0]).any(|(below, above)| below <= above) {
                return Err(bad("column does not strictly increase"));
            }
        }
        Ok(Self { rows })
    }

    pub fn rows(&self) -> &[Vec<u8>] {
        &self.rows
    }

    pub fn shape(&self) -> StaircaseShape {
        StaircaseShape {
            rows: self.rows.iter().map(Vec::len).collect(),
        }
    }

    /// Column `c` (1-based), top to bottom.
    pub fn column(&self, c: usize) -> Vec<usize> {
        self.rows
            .iter()
            .filter(|row| row.len() >= c)
            .map(|row| row[c - 1] as usize)
            .collect()
    }

    pub fn columns(&self) -> Vec<Vec<usize>> {
        (1..=self.rows[0].len()).map(|c| self.column(c)).collect()
    }

    pub fn entries(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.iter().flatten().map(|&e| e as usize)
    }

    pub fn max_entry(&self) -> usize {
        self.entries().max().unwrap_or(0)
    }
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&serde_json::to_string(&self.rows).expect("rows serialize"))
    }
}

/// All semi-standard fillings of `shape` with entries in `1..=n`, in row-major
/// lexicographic order.
pub fn enumerate_tableaux(shape: &StaircaseShape, n: usize) -> Vec<Tableau> {
    fn fill(
        rows: &mut Vec<Vec<u8>>,
        shape: &[usize],
        cell: usize,
        n: u8,
        out: &mut Vec<Tableau>,
    ) {
        let mut k = cell;
        let mut i = 0;
        while i < shape.len() && k >= shape[i] {
            k -= shape[i];
            i += 1;
        }
        if i == shape.len() {
            out.push(Tableau { rows: rows.clone() });
            return;
        }
        let j = k;
        let left = if j > 0 { rows[i][j - 1] } else { 1 };
        let above = if i > 0 { rows[i - 1][j] + 1 } else { 1 };
        for v in left.max(above)..=n {
            rows[i].push(v);
            fill(rows, shape, cell + 1, n, out);
            rows[i].pop();
        }
    }
    let mut out = Vec::new();
    if shape.num_rows() <= n {
        let mut rows = vec![Vec::new(); shape.num_rows()];
        fill(&mut rows, &shape.rows, 0, n as u8, &mut out);
    }
    out
}

/// Exponent vector of `t_1, …, t_n` in the torus weight of `e_Y`.
pub fn tableau_weight(y: &Tableau, n: usize) -> Vec<u32> {
    let mut exps = vec![0; n];
    for e in y.entries() {
        exps[e - 1] += 1;
    }
    exps
}

/// The weight modulo the determinant character of `GL_n`, i.e. the `SL_n` weight.
pub fn sl_normalize(exps: &[u32]) -> Vec<u32> {
    let m = exps.iter().copied().min().unwrap_or(0);
    exps.iter().map(|e| e - m).collect()
}

/// `t_1^a t_2^b …`, or `1` for the trivial weight.
pub fn weight_string(exps: &[u32]) -> String {
    let parts: Vec<String> = exps
        .iter()
        .enumerate()
        .filter(|&(_, &e)| e > 0)
        .map(|(i, &e)| if e == 1 { format!("t{}", i + 1) } else { format!("t{}^{e}", i + 1) })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

/// The one-parameter subgroup weights `w_1..w_n` and the shift `u`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WeightData {
    pub weights: Vec<i64>,
    pub u: i64,
}

impl WeightData {
    /// Validates that every total weight `w_Y` is positive.
    pub fn new(config: &FlagConfig, weights: Vec<i64>, u: i64) -> Result<Self> {
        if weights.len() != config.n() {
            return Err(Error::InvalidWeights(format!(
                "expected {} weights, got {}",
                config.n(),
                weights.len()
            )));
        }
        if u < 0 {
            return Err(Error::InvalidWeights(format!("u must be non-negative, got {u}")));
        }
        let least = min_admissible_u(&weights, config);
        if u < least {
            return Err(Error::InvalidWeights(format!(
                "u = {u} is too small for weights {weights:?}: need u >= {least}"
            )));
        }
        Ok(Self { weights, u })
    }

    /// All weights zero and `u = 1`: the unweighted flag variety.
    pub fn trivial(config: &FlagConfig) -> Self {
        Self {
            weights: vec![0; config.n()],
            u: 1,
        }
    }

    pub fn n(&self) -> usize {
        self.weights.len()
    }

    /// `w_i`, with `w_i = 0` for `i > n`.
    pub fn w(&self, i: usize) -> i64 {
        self.weights.get(i - 1).copied().unwrap_or(0)
    }

    pub fn is_trivial(&self) -> bool {
        self.weights.iter().all(|&w| w == 0)
    }
}

/// `w_Y = Σ_{i ∈ Y} w_i + u`, entries counted with multiplicity.
pub fn total_weight(y: &Tableau, wd: &WeightData) -> i64 {
    y.entries().map(|e| wd.w(e)).sum::<i64>() + wd.u
}

/// `w_σ = Σ_k m_k w_{σ(k)} + u`, where `m_k` is the multiplicity of position
/// `k` in `χ`. Equals `total_weight(tableau_of_perm(σ))`.
pub fn perm_weight(sigma: &Permutation, config: &FlagConfig, wd: &WeightData) -> i64 {
    (1..=config.n())
        .map(|k| config.multiplier(k) as i64 * wd.w(sigma.apply(k)))
        .sum::<i64>()
        + wd.u
}

/// Least `u ≥ 0` making every `w_Y` positive.
///
/// The weight sum is linear on the weight polytope of `V_χ`, whose vertices
/// are the extremal weights `σχ`, so the minimum is taken over `W^P`.
pub fn min_admissible_u(weights: &[i64], config: &FlagConfig) -> i64 {
    let system = CosetSystem::new(config);
    let least = system
        .reps()
        .iter()
        .map(|s| {
            let y = tableau_of_perm(s, config).expect("representatives are minimal");
            y.entries().map(|e| weights[e - 1]).sum::<i64>()
        })
        .min()
        .expect("W^P is non-empty");
    (1 - least).max(0)
}

/// The multiset `{w_Y}` of weights of the ambient weighted projective space.
pub fn ambient_weights(config: &FlagConfig, wd: &WeightData) -> Vec<i64> {
    enumerate_tableaux(&staircase_shape(config), config.n())
        .iter()
        .map(|y| total_weight(y, wd))
        .collect()
}

/// The tableau of the extremal vector `e_σ`: column `i` holds
/// `{σ(1), …, σ(d_{r-i+1})}` in increasing order.
pub fn tableau_of_perm(sigma: &Permutation, config: &FlagConfig) -> Result<Tableau> {
    config.check_min_rep(sigma)?;
    let shape = staircase_shape(config);
    let r = config.r();
    let columns: Vec<Vec<usize>> = (1..=r)
        .map(|i| {
            let mut col: Vec<usize> = (1..=config.dims()[r - i]).map(|k| sigma.apply(k)).collect();
            col.sort_unstable();
            col
        })
        .collect();
    let rows = (0..shape.num_rows())
        .map(|i| {
            (0..shape.rows()[i])
                .map(|c| columns[c][i] as u8)
                .collect()
        })
        .collect();
    Tableau::new(rows)
}

/// `e_Y = Π_c det(x_{i, c_j})_{1 ≤ i, j ≤ |c|}` over the columns `c` of `Y`.
pub fn pluecker_polynomial(y: &Tableau, universe: Universe) -> Result<Polynomial> {
    if y.max_entry() > universe.n() || y.shape().num_rows() > universe.n() {
        return Err(Error::VariableOutOfRange(format!(
            "tableau {y} needs n >= {}",
            y.max_entry().max(y.shape().num_rows())
        )));
    }
    let mut out = universe.one();
    for col in y.columns() {
        out = &out * &minor(&col, universe);
    }
    Ok(out)
}

/// Leibniz expansion of `det(x_{i, col_j})`.
fn minor(col: &[usize], universe: Universe) -> Polynomial {
    let l = col.len();
    let mut det = universe.zero();
    for p in Permutation::all(l) {
        let mut term = universe.one();
        for i in 1..=l {
            term = &term * &universe.xg(i, col[p.apply(i) - 1]);
        }
        if p.length() % 2 == 1 {
            det -= &term;
        } else {
            det += &term;
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Var;
    use std::collections::{BTreeMap, BTreeSet};

    fn cfg(n: usize, dims: &[usize]) -> FlagConfig {
        FlagConfig::new(n, dims.to_vec()).unwrap()
    }

    fn t(rows: &[&[u8]]) -> Tableau {
        Tableau::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    /// Weyl dimension formula for `GL_n` and a partition `λ`.
    fn weyl_dimension(rows: &[usize], n: usize) -> u64 {
        let lam: Vec<i64> = (0..n).map(|i| rows.get(i).copied().unwrap_or(0) as i64).collect();
        let (mut num, mut den) = (1i64, 1i64);
        for i in 0..n {
            for j in i + 1..n {
                num *= lam[i] - lam[j] + (j - i) as i64;
                den *= (j - i) as i64;
            }
        }
        (num / den) as u64
    }

    fn binomial(n: u64, k: u64) -> u64 {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn shapes() {
        assert_eq!(staircase_shape(&cfg(3, &[1, 2])).rows(), &[2, 1]);
        assert_eq!(staircase_shape(&cfg(2, &[1])).rows(), &[1]);
        assert_eq!(staircase_shape(&cfg(4, &[1, 3])).rows(), &[2, 1, 1]);
        assert_eq!(staircase_shape(&cfg(5, &[1, 2, 3, 4])).rows(), &[4, 3, 2, 1]);
    }

    #[test]
    fn tableaux_of_shape_21() {
        let ys = enumerate_tableaux(&staircase_shape(&cfg(3, &[1, 2])), 3);
        assert_eq!(ys.len(), 8);
        assert_eq!(ys[0], t(&[&[1, 1], &[2]]));
        assert!(ys.contains(&t(&[&[2, 3], &[3]])));
        let mut sorted = ys.clone();
        sorted.sort();
        assert_eq!(sorted, ys);
        let ys = enumerate_tableaux(&staircase_shape(&cfg(2, &[1])), 2);
        assert_eq!(ys, vec![t(&[&[1]]), t(&[&[2]])]);
    }

    #[test]
    fn counts_match_weyl_dimension() {
        for n in 2..=5 {
            for mask in 1u32..(1 << (n - 1)) {
                let dims: Vec<usize> = (1..n).filter(|d| mask & (1 << (d - 1)) != 0).collect();
                let shape = staircase_shape(&cfg(n, &dims));
                let count = enumerate_tableaux(&shape, n).len() as u64;
                assert_eq!(count, weyl_dimension(shape.rows(), n), "n={n} dims={dims:?}");
                if let [k] = dims[..] {
                    assert_eq!(count, binomial(n as u64, k as u64));
                }
            }
        }
    }

    #[test]
    fn character_is_symmetric() {
        for (n, dims) in [(3, vec![1, 2]), (4, vec![1, 3]), (4, vec![2]), (4, vec![1, 2, 3])] {
            let ys = enumerate_tableaux(&staircase_shape(&cfg(n, &dims)), n);
            let mut character: BTreeMap<Vec<u32>, usize> = BTreeMap::new();
            for y in &ys {
                *character.entry(tableau_weight(y, n)).or_default() += 1;
            }
            for p in Permutation::all(n) {
                for (exps, mult) in &character {
                    let permuted: Vec<u32> = (1..=n).map(|i| exps[p.apply(i) - 1]).collect();
                    assert_eq!(character.get(&permuted), Some(mult));
                }
            }
        }
    }

    #[test]
    fn weights_of_the_listed_tableaux() {
        assert_eq!(tableau_weight(&t(&[&[1, 1], &[2]]), 3), vec![2, 1, 0]);
        assert_eq!(tableau_weight(&t(&[&[2, 3], &[3]]), 3), vec![0, 1, 2]);
        assert_eq!(weight_string(&tableau_weight(&t(&[&[1, 2], &[3]]), 3)), "t1*t2*t3");
        assert_eq!(weight_string(&sl_normalize(&[1, 1, 1])), "1");
        assert_eq!(weight_string(&[2, 1, 0]), "t1^2*t2");
        let zero = WeightData::trivial(&cfg(3, &[1, 2]));
        assert_eq!(total_weight(&t(&[&[2, 3], &[3]]), &zero), 1);
    }

    #[test]
    fn invalid_tableaux() {
        assert!(Tableau::new(vec![vec![2, 1]]).is_err());
        assert!(Tableau::new(vec![vec![1, 1], vec![1]]).is_err());
        assert!(Tableau::new(vec![vec![1], vec![2, 3]]).is_err());
        assert!(Tableau::new(vec![vec![0]]).is_err());
    }

    #[test]
    fn tableau_of_perm_examples() {
        let full4 = FlagConfig::full(4).unwrap();
        let y0 = tableau_of_perm(&Permutation::identity(), &full4).unwrap();
        assert_eq!(y0, t(&[&[1, 1, 1], &[2, 2], &[3]]));
        let y = tableau_of_perm(&"1,4,2,3".parse().unwrap(), &full4).unwrap();
        assert_eq!(weight_string(&tableau_weight(&y, 4)), "t1^3*t2*t4^2");
        assert!(tableau_of_perm(&"2,1".parse().unwrap(), &cfg(3, &[2])).is_err());
    }

    #[test]
    fn tableau_of_perm_is_injective() {
        for n in 2..=4 {
            for mask in 1u32..(1 << (n - 1)) {
                let dims: Vec<usize> = (1..n).filter(|d| mask & (1 << (d - 1)) != 0).collect();
                let config = cfg(n, &dims);
                let system = CosetSystem::new(&config);
                let images: BTreeSet<Tableau> = system
                    .reps()
                    .iter()
                    .map(|s| tableau_of_perm(s, &config).unwrap())
                    .collect();
                assert_eq!(images.len(), system.len());
            }
        }
    }

    #[test]
    fn perm_weight_is_tableau_weight() {
        let weights = [vec![0, 0, 0, 0], vec![1, 2, 3, 4], vec![1, 1, 2, 3], vec![-2, 7, 0, 3]];
        for dims in [vec![1, 3], vec![2], vec![1, 2, 3], vec![3]] {
            let config = cfg(4, &dims);
            for w in &weights {
                let wd = WeightData { weights: w.clone(), u: 11 };
                for s in CosetSystem::new(&config).reps() {
                    let y = tableau_of_perm(s, &config).unwrap();
                    assert_eq!(perm_weight(s, &config, &wd), total_weight(&y, &wd));
                }
            }
        }
    }

    #[test]
    fn highest_weight_vector() {
        let u = Universe::new(3);
        let e = pluecker_polynomial(&t(&[&[1, 1], &[2]]), u).unwrap();
        let expected = &u.xg(1, 1) * &(&(&u.xg(1, 1) * &u.xg(2, 2)) - &(&u.xg(1, 2) * &u.xg(2, 1)));
        assert_eq!(e, expected);
        assert_eq!(pluecker_polynomial(&t(&[&[3]]), u).unwrap(), u.xg(1, 3));
    }

    #[test]
    fn pluecker_of_y0_is_product_of_leading_minors() {
        let u = Universe::new(3);
        let config = cfg(3, &[1, 2]);
        let y0 = tableau_of_perm(&Permutation::identity(), &config).unwrap();
        let m1 = u.xg(1, 1);
        let m2 = &(&u.xg(1, 1) * &u.xg(2, 2)) - &(&u.xg(1, 2) * &u.xg(2, 1));
        assert_eq!(pluecker_polynomial(&y0, u).unwrap(), &m1 * &m2);
    }

    #[test]
    fn pluecker_torus_weights() {
        // xg[i][j] ↦ t_j·xg[i][j] scales every monomial by its column multidegree.
        for (n, dims) in [(3, vec![1, 2]), (4, vec![1, 3])] {
            let u = Universe::new(n);
            for y in enumerate_tableaux(&staircase_shape(&cfg(n, &dims)), n) {
                let e = pluecker_polynomial(&y, u).unwrap();
                assert!(!e.is_zero());
                let expected = tableau_weight(&y, n);
                for (m, _) in e.terms() {
                    let mut exps = vec![0; n];
                    for &(v, k) in m.factors() {
                        let Var::Xg(_, j) = v else { panic!("unexpected variable {v}") };
                        exps[j as usize - 1] += k;
                    }
                    assert_eq!(exps, expected);
                }
            }
        }
    }

    #[test]
    fn admissible_u() {
        let config = cfg(2, &[1]);
        assert_eq!(min_admissible_u(&[0, 0], &config), 1);
        assert_eq!(min_admissible_u(&[-3, 5], &config), 4);
        assert_eq!(min_admissible_u(&[2, 5], &config), 0);
        assert!(WeightData::new(&config, vec![-3, 5], 3).is_err());
        assert!(WeightData::new(&config, vec![-3, 5], 4).is_ok());
        assert!(WeightData::new(&config, vec![1], 4).is_err());
    }

    #[test]
    fn admissible_u_matches_enumeration() {
        let weights = [[-3, 1, 4, -1], [2, -5, 0, 0], [0, 0, 0, 0], [1, 1, 2, 3]];
        for dims in [vec![1, 3], vec![2], vec![1, 2, 3]] {
            let config = cfg(4, &dims);
            let ys = enumerate_tableaux(&staircase_shape(&config), 4);
            for w in &weights {
                let least = ys
                    .iter()
                    .map(|y| y.entries().map(|e| w[e - 1]).sum::<i64>())
                    .min()
                    .unwrap();
                assert_eq!(min_admissible_u(w, &config), (1 - least).max(0));
            }
        }
    }

    #[test]
    fn json_rows() {
        let y = t(&[&[1, 1], &[2]]);
        assert_eq!(serde_json::to_string(&y).unwrap(), "[[1,1],[2]]");
        assert_eq!(y.to_string(), "[[1,1],[2]]");
    }
}
