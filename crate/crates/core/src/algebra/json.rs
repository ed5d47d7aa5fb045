//! Text form `{"s":[re,im],"v":[[re,im],[re,im],[re,im]]}`.
//!
//! Parsing is strict: unknown keys, missing keys, wrong array lengths and
//! non-numeric entries are all rejected.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{Biquaternion, CVec3, Complex};
use crate::{Error, Result};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Wire {
    s: [f64; 2],
    v: [[f64; 2]; 3],
}

impl From<&Biquaternion> for Wire {
    fn from(b: &Biquaternion) -> Self {
        Wire {
            s: [b.scalar.re, b.scalar.im],
            v: b.vector.0.map(|c| [c.re, c.im]),
        }
    }
}

impl Serialize for Biquaternion {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        Wire::from(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Biquaternion {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let w = Wire::deserialize(deserializer)?;
        Biquaternion::try_new(
            Complex::new(w.s[0], w.s[1]),
            CVec3(w.v.map(|[re, im]| Complex::new(re, im))),
        )
        .map_err(serde::de::Error::custom)
    }
}

impl Biquaternion {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("biquaternion serialization is infallible")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            message: e.to_string(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_shape_round_trips() {
        let text = r#"{"s":[1.0,-2.0],"v":[[0.5,0.0],[0.0,0.25],[-3.0,4.0]]}"#;
        let b = Biquaternion::from_json(text).unwrap();
        assert_eq!(b.scalar, Complex::new(1.0, -2.0));
        assert_eq!(b.vector[2], Complex::new(-3.0, 4.0));
        assert_eq!(Biquaternion::from_json(&b.to_json()).unwrap(), b);
    }

    #[test]
    fn rejects_other_shapes() {
        for bad in [
            r#"{"s":[1.0],"v":[[0,0],[0,0],[0,0]]}"#,
            r#"{"s":[1.0,0.0],"v":[[0,0],[0,0]]}"#,
            r#"{"s":[1.0,0.0],"v":[[0,0],[0,0],[0,0]],"extra":1}"#,
            r#"{"v":[[0,0],[0,0],[0,0]]}"#,
            r#"{"s":[1.0,0.0],"v":[[0,0,0],[0,0],[0,0]]}"#,
            r#"{"s":["1",0.0],"v":[[0,0],[0,0],[0,0]]}"#,
            r#"[1,0,0,0]"#,
        ] {
            assert!(Biquaternion::from_json(bad).is_err(), "accepted {bad}");
        }
    }
}
