//! JSON interchange for algebras, products, matrices, and classification
//! reports. Rationals travel as strings (`"p/q"` or `"p"`), never as floats;
//! emitting and re-reading any document is the identity. Indices in files are
//! 1-based, matching the basis labels `e1, e2, ...`.

use crate::cpa::{AffineComponent, CPAProduct, Classification, Kind, QuadPoly};
use crate::lie::LieAlgebra;
use crate::linalg::{format_rational, parse_rational, Matrix, Rational, Subspace};
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum JsonError {
    #[error("json syntax: {0}")]
    Syntax(#[from] serde_json::Error),
    #[error("bad rational literal {0:?}")]
    BadRational(String),
    #[error("index {index} out of range for dimension {dim}")]
    BadIndex { index: usize, dim: usize },
    #[error("{0}")]
    Shape(String),
}

fn rational_in(s: &str) -> Result<Rational, JsonError> {
    parse_rational(s).map_err(|_| JsonError::BadRational(s.to_string()))
}

#[derive(Serialize, Deserialize)]
struct PairEntry {
    i: usize,
    j: usize,
    coeffs: BTreeMap<String, String>,
}

#[derive(Serialize, Deserialize)]
struct AlgebraDoc {
    name: String,
    dim: usize,
    basis: Vec<String>,
    brackets: Vec<PairEntry>,
}

fn coeffs_out(v: &[Rational]) -> BTreeMap<String, String> {
    v.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| (format!("{:04}", k + 1), format_rational(c)))
        .collect()
}

fn coeffs_in(map: &BTreeMap<String, String>, dim: usize) -> Result<Vec<Rational>, JsonError> {
    let mut v = vec![Rational::zero(); dim];
    for (key, val) in map {
        let k: usize = key
            .trim_start_matches('0')
            .parse()
            .map_err(|_| JsonError::Shape(format!("bad coefficient key {key:?}")))?;
        if k == 0 || k > dim {
            return Err(JsonError::BadIndex { index: k, dim });
        }
        v[k - 1] = rational_in(val)?;
    }
    Ok(v)
}

/// Serializes an algebra: only pairs `i < j` with a nonzero bracket appear;
/// the antisymmetric completion is implied. Keys inside `coeffs` are
/// zero-padded so serialization order is numeric.
pub fn algebra_to_json(l: &LieAlgebra) -> String {
    let n = l.dim();
    let mut brackets = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let v = l.bracket_basis(i, j);
            if v.iter().any(|c| !c.is_zero()) {
                brackets.push(PairEntry {
                    i: i + 1,
                    j: j + 1,
                    coeffs: coeffs_out(v),
                });
            }
        }
    }
    let doc = AlgebraDoc {
        name: l.name().to_string(),
        dim: n,
        basis: l.labels().to_vec(),
        brackets,
    };
    serde_json::to_string_pretty(&doc).expect("algebra serialization")
}

pub fn algebra_from_json(text: &str) -> Result<LieAlgebra, JsonError> {
    let doc: AlgebraDoc = serde_json::from_str(text)?;
    let n = doc.dim;
    if doc.basis.len() != n {
        return Err(JsonError::Shape(format!(
            "dim is {n} but {} basis labels given",
            doc.basis.len()
        )));
    }
    let mut pairs = Vec::new();
    for entry in &doc.brackets {
        if entry.i == 0 || entry.i > n {
            return Err(JsonError::BadIndex {
                index: entry.i,
                dim: n,
            });
        }
        if entry.j == 0 || entry.j > n {
            return Err(JsonError::BadIndex {
                index: entry.j,
                dim: n,
            });
        }
        if entry.i >= entry.j {
            return Err(JsonError::Shape(format!(
                "bracket pair ({}, {}) must have i < j",
                entry.i, entry.j
            )));
        }
        let coeffs = coeffs_in(&entry.coeffs, n)?;
        pairs.push((
            (entry.i - 1, entry.j - 1),
            coeffs
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .collect::<Vec<_>>(),
        ));
    }
    Ok(LieAlgebra::from_brackets(
        &doc.name,
        doc.basis.clone(),
        &pairs,
    ))
}

#[derive(Serialize, Deserialize)]
struct ProductDoc {
    dim: usize,
    products: Vec<PairEntry>,
}

/// Serializes a product: only pairs `i <= j` with a nonzero value appear;
/// the symmetric completion is implied.
pub fn product_to_json(p: &CPAProduct) -> String {
    let n = p.dim();
    let mut products = Vec::new();
    for i in 0..n {
        for j in i..n {
            let v = p.product_basis(i, j);
            if v.iter().any(|c| !c.is_zero()) {
                products.push(PairEntry {
                    i: i + 1,
                    j: j + 1,
                    coeffs: coeffs_out(v),
                });
            }
        }
    }
    let doc = ProductDoc { dim: n, products };
    serde_json::to_string_pretty(&doc).expect("product serialization")
}

pub fn product_from_json(text: &str) -> Result<CPAProduct, JsonError> {
    let doc: ProductDoc = serde_json::from_str(text)?;
    let n = doc.dim;
    let mut table: Vec<((usize, usize), Vec<(usize, Rational)>)> = Vec::new();
    for entry in &doc.products {
        if entry.i == 0 || entry.i > n {
            return Err(JsonError::BadIndex {
                index: entry.i,
                dim: n,
            });
        }
        if entry.j == 0 || entry.j > n {
            return Err(JsonError::BadIndex {
                index: entry.j,
                dim: n,
            });
        }
        if entry.i > entry.j {
            return Err(JsonError::Shape(format!(
                "product pair ({}, {}) must have i <= j",
                entry.i, entry.j
            )));
        }
        let coeffs = coeffs_in(&entry.coeffs, n)?;
        table.push((
            (entry.i - 1, entry.j - 1),
            coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (k, c.clone()))
                .collect(),
        ));
    }
    Ok(CPAProduct::from_products(n, &table))
}

#[derive(Serialize, Deserialize)]
struct MatrixDoc {
    matrix: Vec<Vec<String>>,
}

pub fn matrix_to_json(m: &Matrix) -> String {
    let doc = MatrixDoc {
        matrix: m
            .iter_rows()
            .map(|row| row.iter().map(format_rational).collect())
            .collect(),
    };
    serde_json::to_string_pretty(&doc).expect("matrix serialization")
}

pub fn matrix_from_json(text: &str) -> Result<Matrix, JsonError> {
    let doc: MatrixDoc = serde_json::from_str(text)?;
    let rows = doc.matrix.len();
    if rows == 0 {
        return Err(JsonError::Shape("matrix needs at least one row".into()));
    }
    let cols = doc.matrix[0].len();
    let mut m = Matrix::zero(rows, cols);
    for (r, row) in doc.matrix.iter().enumerate() {
        if row.len() != cols {
            return Err(JsonError::Shape(format!(
                "row {} has {} entries, expected {cols}",
                r + 1,
                row.len()
            )));
        }
        for (c, s) in row.iter().enumerate() {
            m[(r, c)] = rational_in(s)?;
        }
    }
    Ok(m)
}

fn rationals_out(v: &[Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

#[derive(Serialize)]
struct QuadEntry {
    a: usize,
    b: usize,
    coeff: String,
}

#[derive(Serialize)]
struct ResidualDoc {
    constant: String,
    linear: Vec<String>,
    quadratic: Vec<QuadEntry>,
}

fn residual_doc(q: &QuadPoly) -> ResidualDoc {
    ResidualDoc {
        constant: format_rational(q.constant()),
        linear: rationals_out(q.linear()),
        quadratic: q
            .quadratic()
            .iter()
            .map(|((a, b), c)| QuadEntry {
                a: a + 1,
                b: b + 1,
                coeff: format_rational(c),
            })
            .collect(),
    }
}

#[derive(Serialize)]
struct EquationDoc {
    coeffs: Vec<String>,
    rhs: String,
}

#[derive(Serialize)]
struct ComponentDoc {
    dim: usize,
    point: Vec<String>,
    directions: Vec<Vec<String>>,
    equations: Vec<EquationDoc>,
}

fn component_doc(c: &AffineComponent) -> ComponentDoc {
    ComponentDoc {
        dim: c.dim(),
        point: rationals_out(&c.point),
        directions: c
            .directions
            .basis()
            .iter()
            .map(|v| rationals_out(v))
            .collect(),
        equations: c
            .equations
            .iter()
            .map(|(coeffs, rhs)| EquationDoc {
                coeffs: rationals_out(coeffs),
                rhs: format_rational(rhs),
            })
            .collect(),
    }
}

#[derive(Serialize)]
struct ClassificationDoc {
    method: String,
    kind: String,
    parameters: usize,
    variety_dimension: Option<usize>,
    linear_basis: Vec<serde_json::Value>,
    residuals: Vec<ResidualDoc>,
    components: Vec<ComponentDoc>,
}

pub fn kind_name(kind: Kind) -> &'static str {
    match kind {
        Kind::Trivial => "Trivial",
        Kind::FullLinearSpace => "FullLinearSpace",
        Kind::ComponentUnion => "ComponentUnion",
        Kind::Unresolved => "Unresolved",
    }
}

pub fn classification_to_json(c: &Classification) -> String {
    let doc = ClassificationDoc {
        method: match c.method {
            crate::cpa::ClassifyMethod::General => "general".into(),
            crate::cpa::ClassifyMethod::Inner => "inner".into(),
        },
        kind: kind_name(c.kind).into(),
        parameters: c.linear_basis.len(),
        variety_dimension: c.variety_dimension(),
        linear_basis: c
            .linear_basis
            .iter()
            .map(|p| serde_json::from_str(&product_to_json(p)).expect("product doc round trip"))
            .collect(),
        residuals: c.residuals.iter().map(residual_doc).collect(),
        components: c.components.iter().map(component_doc).collect(),
    };
    serde_json::to_string_pretty(&doc).expect("classification serialization")
}

#[derive(Serialize)]
struct SubspaceDoc {
    ambient: usize,
    dim: usize,
    basis: Vec<Vec<String>>,
}

pub fn subspace_to_json_value(s: &Subspace) -> serde_json::Value {
    let doc = SubspaceDoc {
        ambient: s.ambient(),
        dim: s.dim(),
        basis: s.basis().iter().map(|v| rationals_out(v)).collect(),
    };
    serde_json::to_value(doc).expect("subspace serialization")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{list_keys, make};
    use crate::cpa::{classify, heisenberg_a_mu, ClassifyMethod};
    use crate::lie::test_algebras::*;
    use crate::linalg::rat;

    #[test]
    fn algebra_round_trip_all_catalog_entries() {
        for key in list_keys() {
            let l = make(&key).unwrap();
            let text = algebra_to_json(&l);
            let back = algebra_from_json(&text).unwrap();
            assert_eq!(back.name(), l.name(), "{key}");
            assert_eq!(back.labels(), l.labels(), "{key}");
            for i in 0..l.dim() {
                for j in 0..l.dim() {
                    assert_eq!(back.bracket_basis(i, j), l.bracket_basis(i, j), "{key}");
                }
            }
            // Emit of the re-read document is byte-identical.
            assert_eq!(algebra_to_json(&back), text, "{key}");
        }
    }

    #[test]
    fn product_round_trip() {
        let p = heisenberg_a_mu(&crate::linalg::ratio(-7, 3));
        let text = product_to_json(&p);
        let back = product_from_json(&text).unwrap();
        assert_eq!(back, p);
        assert_eq!(product_to_json(&back), text);
    }

    #[test]
    fn matrix_round_trip() {
        let m = Matrix::from_i64(&[&[1, -2], &[0, 5]]);
        let back = matrix_from_json(&matrix_to_json(&m)).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn rejects_bad_documents() {
        assert!(matches!(algebra_from_json("{"), Err(JsonError::Syntax(_))));
        let bad_index = r#"{"name":"x","dim":2,"basis":["e1","e2"],
            "brackets":[{"i":1,"j":5,"coeffs":{"0001":"1"}}]}"#;
        assert!(matches!(
            algebra_from_json(bad_index),
            Err(JsonError::BadIndex { index: 5, dim: 2 })
        ));
        let bad_rational = r#"{"name":"x","dim":2,"basis":["e1","e2"],
            "brackets":[{"i":1,"j":2,"coeffs":{"0001":"1.5"}}]}"#;
        assert!(matches!(
            algebra_from_json(bad_rational),
            Err(JsonError::BadRational(_))
        ));
        let bad_order = r#"{"name":"x","dim":2,"basis":["e1","e2"],
            "brackets":[{"i":2,"j":1,"coeffs":{"0001":"1"}}]}"#;
        assert!(matches!(
            algebra_from_json(bad_order),
            Err(JsonError::Shape(_))
        ));
    }

    #[test]
    fn classification_json_is_deterministic() {
        let c = classify(&borel2(), ClassifyMethod::General).unwrap();
        let a = classification_to_json(&c);
        let b = classification_to_json(&classify(&borel2(), ClassifyMethod::General).unwrap());
        assert_eq!(a, b);
        assert!(a.contains("\"kind\": \"ComponentUnion\""));
    }

    #[test]
    fn heisenberg_document_shape() {
        let text = algebra_to_json(&heisenberg());
        let value: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(value["dim"], 3);
        assert_eq!(value["brackets"][0]["i"], 1);
        assert_eq!(value["brackets"][0]["j"], 2);
        assert_eq!(value["brackets"][0]["coeffs"]["0003"], "1");
        let _ = rat(0);
    }
}
