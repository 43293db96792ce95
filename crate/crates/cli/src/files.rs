//! JSON spec files, map files and the short argument syntaxes.

use std::fs;
use std::path::Path;

use leibniz_core::cyclic::{build_cyclic, CyclicAlgebra, CyclicSpec};
use leibniz_core::leibniz::LeibnizAlgebra;
use leibniz_core::{Field, Matrix, Scalar};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum FieldDesc {
    Rationals,
    Prime { p: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketEntry {
    pub left: usize,
    pub right: usize,
    pub value: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum AlgebraDesc {
    Cyclic {
        n: usize,
        alpha: Vec<String>,
    },
    Table {
        dim: usize,
        brackets: Vec<BracketEntry>,
    },
}

/// An algebra spec file. Indices are 1-based; scalars use the text syntax
/// `a`, `-a`, `a/b` over Q and `r` over GF(p).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecFile {
    pub field: FieldDesc,
    pub algebra: AlgebraDesc,
}

/// Map file: rows of the matrix whose columns are basis images.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapFile {
    pub matrix: Vec<Vec<String>>,
}

/// A loaded algebra: cyclic specs keep their classification data.
#[derive(Clone, Debug)]
pub enum Loaded {
    Cyclic(CyclicAlgebra),
    Table(LeibnizAlgebra),
}

impl Loaded {
    pub fn algebra(&self) -> &LeibnizAlgebra {
        match self {
            Loaded::Cyclic(c) => c.algebra(),
            Loaded::Table(t) => t,
        }
    }

    pub fn cyclic(&self) -> Option<&CyclicAlgebra> {
        match self {
            Loaded::Cyclic(c) => Some(c),
            Loaded::Table(_) => None,
        }
    }

    /// Basis letter used in output: `a` for cyclic specs, `b` otherwise.
    pub fn letter(&self) -> &'static str {
        match self {
            Loaded::Cyclic(_) => "a",
            Loaded::Table(_) => "b",
        }
    }
}

impl FieldDesc {
    pub fn to_field(&self) -> Result<Field, CliError> {
        match *self {
            FieldDesc::Rationals => Ok(Field::Rationals),
            FieldDesc::Prime { p } => Ok(Field::prime(p)?),
        }
    }

    pub fn from_field(field: Field) -> FieldDesc {
        match field {
            Field::Rationals => FieldDesc::Rationals,
            Field::Prime(p) => FieldDesc::Prime { p: u64::from(p) },
        }
    }
}

fn parse_all(field: Field, texts: &[String]) -> Result<Vec<Scalar>, CliError> {
    texts
        .iter()
        .map(|t| field.parse_scalar(t).map_err(CliError::from))
        .collect()
}

fn texts(v: &[Scalar]) -> Vec<String> {
    v.iter().map(Scalar::to_text).collect()
}

impl SpecFile {
    pub fn parse(text: &str) -> Result<SpecFile, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::input(format!("malformed spec file: {e}")))
    }

    pub fn load(path: &Path) -> Result<SpecFile, CliError> {
        SpecFile::parse(&read(path)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spec files always serialize")
    }

    pub fn from_cyclic(spec: &CyclicSpec) -> SpecFile {
        SpecFile {
            field: FieldDesc::from_field(spec.field()),
            algebra: AlgebraDesc::Cyclic {
                n: spec.n(),
                alpha: texts(spec.alphas()),
            },
        }
    }

    /// Table form listing every nonzero product.
    pub fn from_table(alg: &LeibnizAlgebra) -> SpecFile {
        let brackets = alg
            .products()
            .map(|((i, j), v)| BracketEntry {
                left: i + 1,
                right: j + 1,
                value: texts(v),
            })
            .collect();
        SpecFile {
            field: FieldDesc::from_field(alg.field()),
            algebra: AlgebraDesc::Table {
                dim: alg.dim(),
                brackets,
            },
        }
    }

    /// Builds the algebra; tables must satisfy the left Leibniz identity.
    pub fn to_loaded(&self) -> Result<Loaded, CliError> {
        let field = self.field.to_field()?;
        match &self.algebra {
            AlgebraDesc::Cyclic { n, alpha } => {
                let spec = CyclicSpec::new(field, *n, parse_all(field, alpha)?)?;
                Ok(Loaded::Cyclic(build_cyclic(spec)?))
            }
            AlgebraDesc::Table { dim, brackets } => {
                let mut products = Vec::with_capacity(brackets.len());
                for b in brackets {
                    if b.left == 0 || b.right == 0 || b.left > *dim || b.right > *dim {
                        return Err(CliError::input(format!(
                            "bracket index ({}, {}) outside 1..={dim}",
                            b.left, b.right
                        )));
                    }
                    products.push(((b.left - 1, b.right - 1), parse_all(field, &b.value)?));
                }
                Ok(Loaded::Table(LeibnizAlgebra::new(field, *dim, products)?))
            }
        }
    }
}

impl MapFile {
    pub fn parse(text: &str) -> Result<MapFile, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::input(format!("malformed map file: {e}")))
    }

    pub fn load(path: &Path) -> Result<MapFile, CliError> {
        MapFile::parse(&read(path)?)
    }

    pub fn from_matrix(m: &Matrix) -> MapFile {
        MapFile {
            matrix: m.to_rows().iter().map(|r| texts(r)).collect(),
        }
    }

    pub fn to_matrix(&self, field: Field) -> Result<Matrix, CliError> {
        let rows = self
            .matrix
            .iter()
            .map(|r| parse_all(field, r))
            .collect::<Result<Vec<_>, _>>()?;
        let cols = rows.first().map_or(0, Vec::len);
        if rows.is_empty() || rows.iter().any(|r| r.len() != cols) {
            return Err(CliError::input(
                "map matrix must be a nonempty rectangular grid",
            ));
        }
        Ok(Matrix::from_rows(field, cols, rows)?)
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path)
        .map_err(|e| CliError::input(format!("cannot read {}: {e}", path.display())))
}

/// `Q` or `GF:p`.
pub fn parse_field(text: &str) -> Result<Field, CliError> {
    if text == "Q" {
        return Ok(Field::Rationals);
    }
    let p = text
        .strip_prefix("GF:")
        .and_then(|p| p.parse::<u64>().ok())
        .ok_or_else(|| CliError::input(format!("field must be `Q` or `GF:p`, got `{text}`")))?;
    Ok(Field::prime(p)?)
}

/// Comma-separated scalars.
pub fn parse_coeffs(field: Field, text: &str) -> Result<Vec<Scalar>, CliError> {
    text.split(',')
        .map(|t| field.parse_scalar(t.trim()).map_err(CliError::from))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_round_trip() {
        let text =
            r#"{"field":{"kind":"prime","p":3},"algebra":{"kind":"cyclic","n":2,"alpha":["1"]}}"#;
        let spec = SpecFile::parse(text).unwrap();
        let loaded = spec.to_loaded().unwrap();
        let again = SpecFile::parse(&spec.to_json()).unwrap();
        assert_eq!(spec, again);
        let table = SpecFile::from_table(loaded.algebra());
        let reloaded = SpecFile::parse(&table.to_json())
            .unwrap()
            .to_loaded()
            .unwrap();
        assert_eq!(reloaded.algebra(), loaded.algebra());
    }

    #[test]
    fn table_errors() {
        let bad_index = r#"{"field":{"kind":"rationals"},"algebra":{"kind":"table","dim":1,"brackets":[{"left":2,"right":1,"value":["1"]}]}}"#;
        assert_eq!(
            SpecFile::parse(bad_index)
                .unwrap()
                .to_loaded()
                .unwrap_err()
                .code,
            2
        );
        let not_leibniz = r#"{"field":{"kind":"rationals"},"algebra":{"kind":"table","dim":1,"brackets":[{"left":1,"right":1,"value":["1"]}]}}"#;
        let err = SpecFile::parse(not_leibniz)
            .unwrap()
            .to_loaded()
            .unwrap_err();
        assert!(err.message.contains("(1, 1, 1)"), "{}", err.message);
        assert!(SpecFile::parse(r#"{"field":{"kind":"reals"}}"#).is_err());
    }

    #[test]
    fn short_syntaxes() {
        assert_eq!(parse_field("Q").unwrap(), Field::Rationals);
        assert_eq!(parse_field("GF:7").unwrap(), Field::prime(7).unwrap());
        assert!(parse_field("GF:8").is_err());
        assert!(parse_field("R").is_err());
        let f = Field::prime(5).unwrap();
        assert_eq!(
            parse_coeffs(f, "1, 0,4").unwrap(),
            vec![f.one(), f.zero(), f.from_i64(4)]
        );
        assert!(parse_coeffs(f, "1,,2").is_err());
    }
}
