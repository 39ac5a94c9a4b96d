//! Real, complex and quaternionic scalars with a uniform four-slot layout.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Base field of a matrix model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Field {
    Real,
    Complex,
    Quaternion,
}

impl Field {
    /// Real dimension of the field.
    pub fn degree(self) -> usize {
        match self {
            Field::Real => 1,
            Field::Complex => 2,
            Field::Quaternion => 4,
        }
    }

    pub fn from_degree(d: usize) -> Option<Field> {
        match d {
            1 => Some(Field::Real),
            2 => Some(Field::Complex),
            4 => Some(Field::Quaternion),
            _ => None,
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Field::Real => "real",
            Field::Complex => "complex",
            Field::Quaternion => "quaternion",
        };
        f.write_str(s)
    }
}

/// `c[0] + c[1] i + c[2] j + c[3] k`, with unused slots kept at zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scalar {
    field: Field,
    c: [f64; 4],
}

impl Scalar {
    pub fn real(a: f64) -> Self {
        Self {
            field: Field::Real,
            c: [a, 0.0, 0.0, 0.0],
        }
    }

    pub fn complex(a: f64, b: f64) -> Self {
        Self {
            field: Field::Complex,
            c: [a, b, 0.0, 0.0],
        }
    }

    pub fn quaternion(a: f64, b: f64, c: f64, d: f64) -> Self {
        Self {
            field: Field::Quaternion,
            c: [a, b, c, d],
        }
    }

    pub fn zero(field: Field) -> Self {
        Self { field, c: [0.0; 4] }
    }

    pub fn one(field: Field) -> Self {
        Self {
            field,
            c: [1.0, 0.0, 0.0, 0.0],
        }
    }

    /// Build from a component slice of length 1, 2 or 4.
    pub fn from_components(parts: &[f64]) -> Result<Self> {
        let field = Field::from_degree(parts.len()).ok_or_else(|| {
            Error::Parse(format!(
                "scalar needs 1, 2 or 4 components, got {}",
                parts.len()
            ))
        })?;
        let mut c = [0.0; 4];
        c[..parts.len()].copy_from_slice(parts);
        Ok(Self { field, c })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn components(&self) -> [f64; 4] {
        self.c
    }

    pub fn re(&self) -> f64 {
        self.c[0]
    }

    /// Same value viewed in a larger field.
    pub fn promote(&self, field: Field) -> Result<Self> {
        if field.degree() < self.field.degree() {
            return Err(Error::FieldMismatch {
                expected: field.to_string(),
                found: self.field.to_string(),
            });
        }
        Ok(Self { field, c: self.c })
    }

    pub fn conj(&self) -> Self {
        let [a, b, c, d] = self.c;
        Self {
            field: self.field,
            c: [a, -b, -c, -d],
        }
    }

    pub fn norm_sqr(&self) -> f64 {
        self.c.iter().map(|x| x * x).sum()
    }

    /// Product in the common field of both operands.
    pub fn mul(&self, other: &Scalar) -> Result<Scalar> {
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                expected: self.field.to_string(),
                found: other.field.to_string(),
            });
        }
        Ok(Scalar {
            field: self.field,
            c: hamilton(&self.c, &other.c),
        })
    }

    /// Left-multiplication matrix `x -> self * x` on the real basis `(1, i, j, k)`,
    /// truncated to the field degree.
    pub fn left_block(&self) -> Vec<f64> {
        let [a, b, c, d] = self.c;
        let full = [
            [a, -b, -c, -d],
            [b, a, -d, c],
            [c, d, a, -b],
            [d, -c, b, a],
        ];
        let n = self.field.degree();
        let mut out = Vec::with_capacity(n * n);
        for row in full.iter().take(n) {
            out.extend_from_slice(&row[..n]);
        }
        out
    }
}

fn hamilton(p: &[f64; 4], q: &[f64; 4]) -> [f64; 4] {
    let [a1, b1, c1, d1] = *p;
    let [a2, b2, c2, d2] = *q;
    [
        a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
        a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
        a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
        a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
    ]
}

/// Hamilton product of two quaternion-tagged scalars.
pub fn quaternion_multiply(p: &Scalar, q: &Scalar) -> Result<Scalar> {
    for s in [p, q] {
        if s.field != Field::Quaternion {
            return Err(Error::FieldMismatch {
                expected: Field::Quaternion.to_string(),
                found: s.field.to_string(),
            });
        }
    }
    p.mul(q)
}

impl Add for Scalar {
    type Output = Scalar;

    fn add(self, rhs: Scalar) -> Scalar {
        let field = if self.field.degree() >= rhs.field.degree() {
            self.field
        } else {
            rhs.field
        };
        let mut c = [0.0; 4];
        for (k, slot) in c.iter_mut().enumerate() {
            *slot = self.c[k] + rhs.c[k];
        }
        Scalar { field, c }
    }
}

impl Neg for Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        Scalar {
            field: self.field,
            c: self.c.map(|x| -x),
        }
    }
}

impl Sub for Scalar {
    type Output = Scalar;

    fn sub(self, rhs: Scalar) -> Scalar {
        self + (-rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: f64, b: f64, c: f64, d: f64) -> Scalar {
        Scalar::quaternion(a, b, c, d)
    }

    fn close(p: &Scalar, r: &Scalar, tol: f64) -> bool {
        p.c.iter().zip(r.c.iter()).all(|(x, y)| (x - y).abs() <= tol)
    }

    #[test]
    fn hamilton_relations() {
        let (i, j, k) = (q(0., 1., 0., 0.), q(0., 0., 1., 0.), q(0., 0., 0., 1.));
        assert_eq!(quaternion_multiply(&i, &j).unwrap(), k);
        assert_eq!(quaternion_multiply(&j, &k).unwrap(), i);
        assert_eq!(quaternion_multiply(&k, &i).unwrap(), j);
        assert_eq!(quaternion_multiply(&i, &i).unwrap(), q(-1., 0., 0., 0.));
    }

    #[test]
    fn identity_is_neutral() {
        let x = q(0.3, -1.2, 2.0, 0.7);
        assert_eq!(quaternion_multiply(&Scalar::one(Field::Quaternion), &x).unwrap(), x);
    }

    #[test]
    fn field_mismatch() {
        let err = quaternion_multiply(&Scalar::complex(1., 0.), &q(1., 0., 0., 0.));
        assert!(matches!(err, Err(Error::FieldMismatch { .. })));
    }

    #[test]
    fn conjugation_reverses_products() {
        let p = q(1.0, 2.0, -0.5, 0.25);
        let r = q(-0.3, 0.1, 0.9, 2.0);
        let lhs = p.mul(&r).unwrap().conj();
        let rhs = r.conj().mul(&p.conj()).unwrap();
        assert!(close(&lhs, &rhs, 1e-14));
    }

    #[test]
    fn left_block_matches_product() {
        let p = q(0.4, -1.0, 0.5, 2.0);
        let x = q(1.5, 0.2, -0.7, 0.3);
        let m = p.left_block();
        let px = p.mul(&x).unwrap();
        for r in 0..4 {
            let v: f64 = (0..4).map(|c| m[4 * r + c] * x.c[c]).sum();
            assert!((v - px.c[r]).abs() < 1e-14);
        }
    }
}
