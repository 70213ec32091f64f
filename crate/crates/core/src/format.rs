//! JSON interchange for restriction tables.
//!
//! ```json
//! {"flavor": "weighted", "config": {"n": 3, "dims": [1, 2]},
//!  "weights": [1, 2, 3], "u": 7,
//!  "classes": {"2,1,3": {"1,2,3": "0", "2,1,3": "5/9*y2 - ..."}}}
//! ```
//!
//! Class and fixed-point keys are one-line words padded to length `n`;
//! entries use the polynomial text format.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gkm::{Flavor, GkmClass, GkmContext};
use crate::poly::Polynomial;
use crate::repr::WeightData;
use crate::weyl::{FlagConfig, Permutation};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigJson {
    pub n: usize,
    pub dims: Vec<usize>,
}

impl From<&FlagConfig> for ConfigJson {
    fn from(c: &FlagConfig) -> Self {
        Self {
            n: c.n(),
            dims: c.dims().to_vec(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RestrictionTable {
    pub flavor: Flavor,
    pub config: ConfigJson,
    pub weights: Vec<i64>,
    pub u: i64,
    pub classes: BTreeMap<String, BTreeMap<String, String>>,
}

/// Serializes classes sharing one context and flavor.
pub fn restriction_table(ctx: &Arc<GkmContext>, flavor: Flavor, classes: &[(Permutation, GkmClass)]) -> Result<RestrictionTable> {
    let n = ctx.config().n();
    let mut out = BTreeMap::new();
    for (sigma, class) in classes {
        if class.flavor() != flavor || !Arc::ptr_eq(class.context(), ctx) {
            return Err(Error::ContextMismatch);
        }
        let entries = ctx
            .reps()
            .iter()
            .zip(class.restrictions())
            .map(|(tau, f)| (tau.word_string(n), f.to_string()))
            .collect();
        out.insert(sigma.word_string(n), entries);
    }
    Ok(RestrictionTable {
        flavor,
        config: ctx.config().into(),
        weights: ctx.weights().weights.clone(),
        u: ctx.weights().u,
        classes: out,
    })
}

pub type LoadedTable = (Arc<GkmContext>, Vec<(Permutation, GkmClass)>);

/// Rebuilds the context and the classes of a table, validating every key.
pub fn read_table(table: &RestrictionTable) -> Result<LoadedTable> {
    let config = FlagConfig::new(table.config.n, table.config.dims.clone())?;
    let wd = WeightData::new(&config, table.weights.clone(), table.u)?;
    let ctx = GkmContext::new(&config, &wd)?;
    let universe = ctx.universe();
    let mut classes = Vec::new();
    for (key, entries) in &table.classes {
        let sigma: Permutation = key.parse()?;
        config.check_min_rep(&sigma)?;
        let mut restrictions = vec![None; ctx.len()];
        for (tau_key, text) in entries {
            let tau: Permutation = tau_key.parse()?;
            let t = ctx.index_of(&tau)?;
            restrictions[t] = Some(Polynomial::parse(universe, text)?);
        }
        let restrictions = restrictions
            .into_iter()
            .zip(ctx.reps())
            .map(|(f, tau)| {
                f.ok_or_else(|| Error::MissingRestriction(format!("class {sigma} has no entry at {tau}")))
            })
            .collect::<Result<Vec<_>>>()?;
        classes.push((sigma, GkmClass::from_restrictions(&ctx, table.flavor, restrictions)?));
    }
    Ok((ctx, classes))
}

pub fn to_json(table: &RestrictionTable) -> String {
    serde_json::to_string_pretty(table).expect("tables serialize")
}

pub fn from_json(text: &str) -> Result<RestrictionTable> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gkm::schubert_class;

    #[test]
    fn round_trip() {
        let config = FlagConfig::new(3, vec![1, 2]).unwrap();
        let wd = WeightData::new(&config, vec![1, 2, 3], 7).unwrap();
        let ctx = GkmContext::new(&config, &wd).unwrap();
        for flavor in Flavor::ALL {
            let classes: Vec<_> = ctx
                .reps()
                .iter()
                .map(|s| (s.clone(), schubert_class(&ctx, s, flavor).unwrap()))
                .collect();
            let table = restriction_table(&ctx, flavor, &classes).unwrap();
            let text = to_json(&table);
            let back = from_json(&text).unwrap();
            assert_eq!(back, table);
            let (ctx2, classes2) = read_table(&back).unwrap();
            assert_eq!(ctx2.config(), ctx.config());
            let mut sorted = classes.clone();
            sorted.sort_by_key(|a| a.0.word(3));
            assert_eq!(classes2, sorted);
        }
    }

    #[test]
    fn rejects_bad_tables() {
        let good = r#"{"flavor":"straight","config":{"n":2,"dims":[1]},"weights":[0,0],"u":1,
            "classes":{"2,1":{"1,2":"0","2,1":"-y1 + y2"}}}"#;
        assert!(read_table(&from_json(good).unwrap()).is_ok());
        let missing = good.replace(r#""1,2":"0","#, "");
        assert!(matches!(
            read_table(&from_json(&missing).unwrap()),
            Err(Error::MissingRestriction(_))
        ));
        let not_min = good.replace(r#""classes":{"2,1""#, r#""classes":{"1,3,2""#);
        assert!(read_table(&from_json(&not_min).unwrap()).is_err());
        assert!(from_json("{").is_err());
        let bad_flavor = good.replace("straight", "curved");
        assert!(from_json(&bad_flavor).is_err());
    }
}
