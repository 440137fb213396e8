use serde::{Deserialize, Serialize};

use super::{BallMapError, MapComponent, MonomialBallMap, Signature};
use crate::exactnum::{parse_rational, surd_normalize, Rational};
use crate::poly::ExponentVector;

#[derive(Serialize, Deserialize)]
struct CoeffJson {
    rat: String,
    sqrt: u64,
}

#[derive(Serialize, Deserialize)]
struct ComponentJson {
    coeff: CoeffJson,
    exp: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MapJson {
    r: usize,
    s: usize,
    rp: usize,
    sp: usize,
    positive: Vec<Option<ComponentJson>>,
    negative: Vec<Option<ComponentJson>>,
}

fn encode(side: &[Option<MapComponent>]) -> Vec<Option<ComponentJson>> {
    side.iter()
        .map(|slot| {
            slot.as_ref().map(|c| ComponentJson {
                coeff: CoeffJson {
                    rat: c.coeff.coeff().to_string(),
                    sqrt: c.coeff.radicand(),
                },
                exp: c.exponents.as_slice().to_vec(),
            })
        })
        .collect()
}

fn decode(side: Vec<Option<ComponentJson>>) -> Result<Vec<Option<MapComponent>>, BallMapError> {
    side.into_iter()
        .map(|slot| {
            slot.map(|c| {
                if c.coeff.sqrt == 0 {
                    return Err(BallMapError::Json("sqrt must be a positive integer".into()));
                }
                let q = parse_rational(&c.coeff.rat)?;
                let surd = surd_normalize(&q, &Rational::from_integer(c.coeff.sqrt.into()))?;
                MapComponent::new(surd, ExponentVector::new(c.exp))
            })
            .transpose()
        })
        .collect()
}

impl MonomialBallMap {
    pub fn to_json_value(&self) -> serde_json::Value {
        let s = self.signature;
        serde_json::to_value(MapJson {
            r: s.r,
            s: s.s,
            rp: s.rp,
            sp: s.sp,
            positive: encode(&self.positive),
            negative: encode(&self.negative),
        })
        .expect("map json is always serializable")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_value()).unwrap()
    }

    pub fn from_json_value(value: serde_json::Value) -> Result<Self, BallMapError> {
        let raw: MapJson = serde_json::from_value(value).map_err(|e| BallMapError::Json(e.to_string()))?;
        Self::from_raw(raw)
    }

    /// Parse errors carry serde's line and column.
    pub fn from_json(text: &str) -> Result<Self, BallMapError> {
        let raw: MapJson = serde_json::from_str(text).map_err(|e| BallMapError::Json(e.to_string()))?;
        Self::from_raw(raw)
    }

    fn from_raw(raw: MapJson) -> Result<Self, BallMapError> {
        let sig = Signature::new(raw.r, raw.s, raw.rp, raw.sp)?;
        Self::new(sig, decode(raw.positive)?, decode(raw.negative)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let g = MonomialBallMap::parse(
            Signature::new(2, 2, 3, 3).unwrap(),
            &["z1^2", "sqrt(2)*z1*z2", "0"],
            &["z3^2", "1/2*sqrt(6)*z3*z4", "z4^2"],
        )
        .unwrap();
        let text = g.to_json();
        assert!(text.contains("\"sqrt\": 6"));
        assert_eq!(MonomialBallMap::from_json(&text).unwrap(), g);
    }

    #[test]
    fn normalizes_and_reports_errors() {
        let text = r#"{"r":1,"s":1,"rp":1,"sp":1,
            "positive":[{"coeff":{"rat":"1","sqrt":8},"exp":[1,0]}],
            "negative":[null]}"#;
        let g = MonomialBallMap::from_json(text).unwrap();
        assert_eq!(g.component_texts().0, vec!["2*sqrt(2)*z1".to_string()]);
        let err = MonomialBallMap::from_json("{\"r\": 1,").unwrap_err();
        assert!(err.to_string().contains("line"));
    }
}
