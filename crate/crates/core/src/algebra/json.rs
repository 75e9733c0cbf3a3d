use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use super::{AlgebraError, SuperAlgebra};
use crate::arith::Scalar;

/// On-disk form of a superalgebra:
///
/// ```json
/// {"name": "S_7^3", "dims": [1, 2],
///  "products": {"e1.e1": [["e1", "1"]], "e1.f1": [["f1", "1/2"]], "f1.f2": [["e1", "1"]]}}
/// ```
///
/// Only even·even, even·odd and odd·odd products are listed; the loader
/// fills in the mirrored products unless `raw` is set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlgebraJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub dims: [usize; 2],
    #[serde(default)]
    pub products: BTreeMap<String, Vec<(String, Scalar)>>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub raw: bool,
}

impl AlgebraJson {
    /// Builds the algebra; `complete` applies the supercommutative
    /// completion (ignored when the document itself is marked raw).
    pub fn to_algebra(&self, complete: bool) -> Result<SuperAlgebra, AlgebraError> {
        let [m, n] = self.dims;
        let mut alg = SuperAlgebra::zero(m, n);
        alg.name = self.name.clone();
        let d = m + n;
        let mut explicit: HashMap<(usize, usize), Vec<Scalar>> = HashMap::new();
        for (key, terms) in &self.products {
            let (l, r) = key
                .split_once('.')
                .ok_or_else(|| AlgebraError::Json(format!("bad product key {key:?}")))?;
            let a = alg.parse_label(l)?;
            let b = alg.parse_label(r)?;
            let mut v = vec![Scalar::zero(); d];
            for (label, coeff) in terms {
                let c = alg.parse_label(label)?;
                v[c] = &v[c] + coeff;
            }
            explicit.insert((a, b), v);
        }
        let complete = complete && !self.raw;
        let mut keys: Vec<_> = explicit.keys().copied().collect();
        keys.sort_unstable();
        for (a, b) in keys {
            let v = &explicit[&(a, b)];
            for (c, coeff) in v.iter().enumerate() {
                alg.set_coeff(a, b, c, coeff.clone())?;
            }
            if !complete {
                continue;
            }
            let both_odd = a >= m && b >= m;
            let mirror: Vec<Scalar> = v
                .iter()
                .map(|x| if both_odd { -x } else { x.clone() })
                .collect();
            if let Some(given) = explicit.get(&(b, a)) {
                if *given != mirror {
                    return Err(AlgebraError::InconsistentProducts(format!(
                        "{}{} and {}{} disagree with supercommutativity",
                        alg.label(a),
                        alg.label(b),
                        alg.label(b),
                        alg.label(a)
                    )));
                }
            }
            for (c, coeff) in mirror.into_iter().enumerate() {
                alg.set_coeff(b, a, c, coeff)?;
            }
        }
        Ok(alg)
    }

    /// Canonical document for an algebra. Supercommutative algebras list
    /// each pair once (`a <= b`); anything else is written raw with every
    /// nonzero product.
    pub fn from_algebra(alg: &SuperAlgebra) -> Self {
        let sc = alg.is_supercommutative();
        let mut products = BTreeMap::new();
        for (a, b, terms) in alg.nonzero_products() {
            if sc && a > b {
                continue;
            }
            products.insert(
                format!("{}.{}", alg.label(a), alg.label(b)),
                terms.into_iter().map(|(c, v)| (alg.label(c), v)).collect(),
            );
        }
        AlgebraJson {
            name: alg.name.clone(),
            dims: [alg.m, alg.n],
            products,
            raw: !sc,
        }
    }
}

impl SuperAlgebra {
    pub fn from_json_str(text: &str, complete: bool) -> Result<Self, AlgebraError> {
        let doc: AlgebraJson =
            serde_json::from_str(text).map_err(|e| AlgebraError::Json(e.to_string()))?;
        doc.to_algebra(complete)
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(AlgebraJson::from_algebra(self)).expect("serializable")
    }
}
