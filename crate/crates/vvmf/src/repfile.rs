//! The JSON representation file.
//!
//! ```json
//! {
//!   "name": "kappa",
//!   "degree": 1,
//!   "entry_encoding": "cyclotomic",
//!   "S": [[{"order": 4, "coeffs": ["0", "0", "0", "1"]}]],
//!   "T": [[{"order": 12, "coeffs": ["0", "1"]}]],
//!   "irreducible": true
//! }
//! ```
//!
//! A complex entry is `[re, im]`; a cyclotomic entry `{"order": n, "coeffs": [c0, c1, ...]}`
//! stands for Σ c_j e^{2πi j/n}, each c_j an integer or `"p/q"` string. Both entry
//! forms are accepted in either encoding; `entry_encoding` records how the file
//! was written and selects the form used by [`RepFile::from_rep`].

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use num_rational::Rational64;
use num_traits::CheckedAdd;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use vvmf_core::{unit_root, ComplexMatrix, Irreducibility, ModularRepresentation, Tolerance, C64};

#[derive(Debug, thiserror::Error)]
pub enum RepFileError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("parse error at {path} (line {line}, column {column}): {message}")]
    Syntax { path: String, line: usize, column: usize, message: String },
    #[error("field {field}: {message}")]
    Field { field: String, message: String },
    #[error(transparent)]
    Core(#[from] vvmf_core::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Encoding {
    Complex,
    Cyclotomic,
}

/// A rational coefficient, written as a string and read from a string or integer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Coeff(pub Rational64);

impl Serialize for Coeff {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(&self.0)
    }
}

impl<'de> Deserialize<'de> for Coeff {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Text(String),
        }
        match Raw::deserialize(deserializer)? {
            Raw::Int(n) => Ok(Coeff(Rational64::from_integer(n))),
            Raw::Text(s) => Rational64::from_str(s.trim()).map(Coeff).map_err(|_| {
                serde::de::Error::custom(format!("{:?} is not an integer or p/q rational", s))
            }),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Cyclotomic {
    pub order: u32,
    pub coeffs: Vec<Coeff>,
}

impl Cyclotomic {
    /// Collects coefficients by exponent mod `order` in exact arithmetic, then
    /// evaluates in floating point.
    pub fn evaluate(&self) -> Result<C64, String> {
        if self.order == 0 {
            return Err("order must be positive".into());
        }
        let n = self.order as usize;
        let mut folded = vec![Rational64::from_integer(0); n];
        for (j, c) in self.coeffs.iter().enumerate() {
            let slot = &mut folded[j % n];
            *slot = slot.checked_add(&c.0).ok_or("coefficient overflow")?;
        }
        Ok(folded
            .iter()
            .enumerate()
            .filter(|(_, c)| *c.numer() != 0)
            .map(|(j, c)| unit_root(j as i64, n as u64) * (*c.numer() as f64 / *c.denom() as f64))
            .sum())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Complex([f64; 2]),
    Cyclotomic(Cyclotomic),
}

impl Entry {
    pub fn evaluate(&self) -> Result<C64, String> {
        match self {
            Entry::Complex([re, im]) => Ok(C64::new(*re, *im)),
            Entry::Cyclotomic(c) => c.evaluate(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub degree: usize,
    pub entry_encoding: Encoding,
    #[serde(rename = "S")]
    pub s: Vec<Vec<Entry>>,
    #[serde(rename = "T")]
    pub t: Vec<Vec<Entry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub irreducible: Option<bool>,
}

impl RepFile {
    pub fn from_json(text: &str) -> Result<Self, RepFileError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            let inner = e.into_inner();
            RepFileError::Syntax {
                path,
                line: inner.line(),
                column: inner.column(),
                message: strip_position(&inner.to_string()),
            }
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("rep file serializes")
    }

    pub fn read(path: &Path) -> Result<Self, RepFileError> {
        let text = std::fs::read_to_string(path)
            .map_err(|source| RepFileError::Io { path: path.display().to_string(), source })?;
        Self::from_json(&text)
    }

    /// Builds the representation; `fallback_name` is used when the file has none.
    pub fn to_rep(&self, fallback_name: &str) -> Result<ModularRepresentation, RepFileError> {
        let s = self.matrix("S", &self.s)?;
        let t = self.matrix("T", &self.t)?;
        let irreducible = match self.irreducible {
            Some(true) => Irreducibility::Irreducible,
            Some(false) => Irreducibility::Reducible,
            None => Irreducibility::Unknown,
        };
        let name = self.name.clone().unwrap_or_else(|| fallback_name.to_string());
        Ok(ModularRepresentation::new(name, s, t, irreducible)?)
    }

    fn matrix(&self, field: &str, rows: &[Vec<Entry>]) -> Result<ComplexMatrix, RepFileError> {
        let d = self.degree;
        if rows.len() != d {
            return Err(RepFileError::Field {
                field: field.to_string(),
                message: format!("expected {} rows, found {}", d, rows.len()),
            });
        }
        let mut data = Vec::with_capacity(d * d);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != d {
                return Err(RepFileError::Field {
                    field: format!("{}[{}]", field, i),
                    message: format!("expected {} entries, found {}", d, row.len()),
                });
            }
            for (j, entry) in row.iter().enumerate() {
                let z = entry.evaluate().map_err(|message| RepFileError::Field {
                    field: format!("{}[{}][{}]", field, i, j),
                    message,
                })?;
                data.push(z);
            }
        }
        Ok(ComplexMatrix::new(d, d, data)?)
    }

    /// Writes `rep` in the requested encoding. Cyclotomic output expresses each
    /// entry as r·e^{2πi j/N} with r rational and N = lcm(order of ρ(T), 12),
    /// and fails for entries not of that shape.
    pub fn from_rep(
        rep: &ModularRepresentation,
        encoding: Encoding,
        t_order: usize,
        tol: Tolerance,
    ) -> Result<Self, RepFileError> {
        let order = lcm(t_order.max(1) as u64, 12) as u32;
        let convert = |field: &str, m: &ComplexMatrix| -> Result<Vec<Vec<Entry>>, RepFileError> {
            (0..m.rows())
                .map(|i| {
                    (0..m.cols())
                        .map(|j| match encoding {
                            Encoding::Complex => Ok(Entry::Complex([m[(i, j)].re, m[(i, j)].im])),
                            Encoding::Cyclotomic => cyclotomic_of(m[(i, j)], order, tol)
                                .map(Entry::Cyclotomic)
                                .ok_or_else(|| RepFileError::Field {
                                    field: format!("{}[{}][{}]", field, i, j),
                                    message: format!(
                                        "{} is not a rational multiple of a {}-th root of unity",
                                        m[(i, j)],
                                        order
                                    ),
                                }),
                        })
                        .collect()
                })
                .collect()
        };
        Ok(RepFile {
            name: Some(rep.name().to_string()),
            degree: rep.degree(),
            entry_encoding: encoding,
            s: convert("S", rep.s_image())?,
            t: convert("T", rep.t_image())?,
            irreducible: match rep.irreducibility() {
                Irreducibility::Irreducible => Some(true),
                Irreducibility::Reducible => Some(false),
                Irreducibility::Unknown => None,
            },
        })
    }
}

impl fmt::Display for RepFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_json())
    }
}

fn strip_position(message: &str) -> String {
    match message.rfind(" at line ") {
        Some(i) => message[..i].to_string(),
        None => message.to_string(),
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    let (mut x, mut y) = (a, b);
    while y != 0 {
        (x, y) = (y, x % y);
    }
    a / x * b
}

fn cyclotomic_of(z: C64, order: u32, tol: Tolerance) -> Option<Cyclotomic> {
    let eps = tol.eps();
    let r = z.norm();
    if r <= eps {
        return Some(Cyclotomic { order: 1, coeffs: vec![Coeff(Rational64::from_integer(0))] });
    }
    let turns = z.arg() / std::f64::consts::TAU * order as f64;
    let j = (turns.round() as i64).rem_euclid(order as i64);
    let radial = z * unit_root(-j, order as u64);
    if radial.im.abs() > eps {
        return None;
    }
    let q = small_rational(radial.re, eps)?;
    let mut coeffs = vec![Coeff(Rational64::from_integer(0)); j as usize + 1];
    coeffs[j as usize] = Coeff(q);
    Some(Cyclotomic { order, coeffs })
}

/// The rational with least denominator (at most `MAX_DENOMINATOR`) within `eps` of `x`.
fn small_rational(x: f64, eps: f64) -> Option<Rational64> {
    const MAX_DENOMINATOR: i64 = 1000;
    (1..=MAX_DENOMINATOR).find_map(|q| {
        let p = (x * q as f64).round();
        ((p / q as f64 - x).abs() <= eps).then(|| Rational64::new(p as i64, q))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use vvmf_core::{build_kappa_power, build_p1_permutation};

    const KAPPA: &str = r#"{
        "degree": 1,
        "entry_encoding": "cyclotomic",
        "S": [[[0, -1]]],
        "T": [[{"order": 12, "coeffs": [0, 1]}]]
    }"#;

    #[test]
    fn kappa_file_matches_builder() {
        let rep = RepFile::from_json(KAPPA).unwrap().to_rep("kappa").unwrap();
        let built = build_kappa_power(1);
        let tol = Tolerance::default();
        assert!(rep.s_image().approx_eq(built.s_image(), tol));
        assert!(rep.t_image().approx_eq(built.t_image(), tol));
        assert_eq!(rep.name(), "kappa");
    }

    #[test]
    fn rational_coefficients() {
        let c: Cyclotomic =
            serde_json::from_str(r#"{"order": 6, "coeffs": ["1/2", 0, 0, 0, 0, 0, "-1/2"]}"#)
                .unwrap();
        assert_eq!(c.evaluate().unwrap(), C64::new(0.0, 0.0));
        let c: Cyclotomic = serde_json::from_str(r#"{"order": 3, "coeffs": ["0", "1", "1"]}"#).unwrap();
        assert!((c.evaluate().unwrap() - C64::new(-1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn missing_t_is_a_parse_error() {
        let text = r#"{"degree": 1, "entry_encoding": "complex", "S": [[[1, 0]]]}"#;
        let err = RepFile::from_json(text).unwrap_err();
        assert!(matches!(err, RepFileError::Syntax { .. }));
        assert!(err.to_string().contains("`T`"), "{}", err);
    }

    #[test]
    fn errors_carry_field_paths() {
        let text = r#"{"degree": 1, "entry_encoding": "complex", "S": [[[1, 0]]],
                       "T": [[{"order": 12, "coeffs": ["x"]}]]}"#;
        let err = RepFile::from_json(text).unwrap_err();
        assert!(matches!(&err, RepFileError::Syntax { path, .. } if path.starts_with("T[0][0]")), "{}", err);

        let text = r#"{"degree": 2, "entry_encoding": "complex", "S": [[[1, 0]]], "T": [[[1, 0]]]}"#;
        let err = RepFile::from_json(text).unwrap().to_rep("x").unwrap_err();
        assert!(matches!(&err, RepFileError::Field { field, .. } if field == "S"));

        let text = r#"{"degree": 1, "entry_encoding": "complex", "S": [[[1, 0]]], "T": [[[1, 0]]], "extra": 1}"#;
        assert!(RepFile::from_json(text).is_err());
    }

    #[test]
    fn cyclotomic_export_round_trip() {
        let tol = Tolerance::default();
        for rep in [build_kappa_power(5), build_p1_permutation(3).unwrap()] {
            let order = vvmf_core::t_order(&rep, tol, 4096).unwrap();
            let file = RepFile::from_rep(&rep, Encoding::Cyclotomic, order, tol).unwrap();
            let back = RepFile::from_json(&file.to_json()).unwrap();
            assert_eq!(back, file);
            let rebuilt = back.to_rep("x").unwrap();
            assert!(rebuilt.s_image().approx_eq(rep.s_image(), tol));
            assert!(rebuilt.t_image().approx_eq(rep.t_image(), tol));
        }
    }

    #[test]
    fn irrational_modulus_is_not_cyclotomic() {
        let z = C64::new(std::f64::consts::SQRT_2, 0.0);
        assert!(cyclotomic_of(z, 12, Tolerance::default()).is_none());
        assert_eq!(small_rational(0.9999999999999998, 1e-9), Some(Rational64::from_integer(1)));
        assert_eq!(small_rational(-0.6666666666, 1e-9), Some(Rational64::new(-2, 3)));
        assert_eq!(lcm(4, 6), 12);
    }
}
