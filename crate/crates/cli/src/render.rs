//! Text forms of vectors, subspaces and matrices.

use leibniz_core::{Matrix, Scalar, Subspace};

/// `a1 − 2a3 + (1/2)a4`; the zero vector is `0`.
pub fn lincomb(letter: &str, v: &[Scalar]) -> String {
    let mut out = String::new();
    for (i, c) in v.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
        let negative = c.is_negative();
        let magnitude = if negative { -c } else { c.clone() };
        if out.is_empty() {
            if negative {
                out.push('−');
            }
        } else {
            out.push_str(if negative { " − " } else { " + " });
        }
        let text = magnitude.to_text();
        if !magnitude.is_one() {
            if text.contains('/') {
                out.push_str(&format!("({text})"));
            } else {
                out.push_str(&text);
            }
        }
        out.push_str(&format!("{letter}{}", i + 1));
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// `span{a2, a3}` using the RREF basis; `0` for the zero space.
pub fn span(letter: &str, s: &Subspace) -> String {
    if s.is_zero() {
        return String::from("0");
    }
    let parts: Vec<String> = s.basis_vectors().map(|v| lincomb(letter, v)).collect();
    format!("span{{{}}}", parts.join(", "))
}

/// `[[1,0],[0,1]]`, row by row.
pub fn compact(m: &Matrix) -> String {
    let rows: Vec<String> = m
        .row_vectors()
        .map(|r| {
            let cells: Vec<String> = r.iter().map(Scalar::to_text).collect();
            format!("[{}]", cells.join(","))
        })
        .collect();
    format!("[{}]", rows.join(","))
}

pub fn texts(v: &[Scalar]) -> Vec<String> {
    v.iter().map(Scalar::to_text).collect()
}

pub fn matrix_texts(m: &Matrix) -> Vec<Vec<String>> {
    m.row_vectors().map(texts).collect()
}

pub fn span_texts(s: &Subspace) -> Vec<Vec<String>> {
    s.basis_vectors().map(texts).collect()
}

/// Left-aligned two-column table.
pub fn table(rows: &[(String, String)]) -> String {
    let width = rows
        .iter()
        .map(|(k, _)| k.chars().count())
        .max()
        .unwrap_or(0);
    let mut out = String::new();
    for (k, v) in rows {
        let pad = width - k.chars().count();
        out.push_str(&format!("{k}{}  {v}\n", " ".repeat(pad)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use leibniz_core::Field;

    #[test]
    fn linear_combinations() {
        let q = Field::Rationals;
        let v = vec![q.one(), q.zero(), q.from_i64(-2), q.ratio(1, 2).unwrap()];
        assert_eq!(lincomb("a", &v), "a1 − 2a3 + (1/2)a4");
        assert_eq!(lincomb("b", &[q.from_i64(-1), q.one()]), "−b1 + b2");
        assert_eq!(lincomb("a", &[q.zero()]), "0");
        let gf = Field::prime(3).unwrap();
        assert_eq!(lincomb("a", &[gf.from_i64(2), gf.one()]), "2a1 + a2");
    }

    #[test]
    fn spans_and_matrices() {
        let q = Field::Rationals;
        let s = Subspace::coordinate(q, 3, [1, 2]);
        assert_eq!(span("a", &s), "span{a2, a3}");
        assert_eq!(span("a", &Subspace::zero(q, 3)), "0");
        assert_eq!(
            compact(&Matrix::from_i64(q, &[&[1, 0], &[-1, 2]])),
            "[[1,0],[-1,2]]"
        );
        let t = table(&[("ab".into(), "1".into()), ("c".into(), "2".into())]);
        assert_eq!(t, "ab  1\nc   2\n");
    }
}
