//! Dense exact matrices over [`RingElt`].
//!
//! Bit ordering is global: the leftmost wire of a diagram is the most
//! significant bit of a row/column index.

use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ring::RingElt;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: {0}x{1} after {2}x{3}")]
    Dimension(usize, usize, usize, usize),
    #[error("matrix is all zero; proportionality is degenerate")]
    Degenerate,
    #[error("shape mismatch: {0}x{1} vs {2}x{3}")]
    Shape(usize, usize, usize, usize),
    #[error("malformed matrix document: {0}")]
    Format(String),
}

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<RingElt>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![RingElt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = RingElt::from_int(1);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<RingElt>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| RingElt::from_int(x)).collect()).collect())
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> RingElt) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// A 1x1 matrix.
    pub fn scalar(x: RingElt) -> Self {
        Matrix { rows: 1, cols: 1, data: vec![x] }
    }

    pub fn diag(entries: &[RingElt]) -> Self {
        let n = entries.len();
        Matrix::from_fn(n, n, |i, j| if i == j { entries[i].clone() } else { RingElt::zero() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &RingElt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: RingElt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[RingElt] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// Kronecker product `self ⊗ other`; `self` occupies the high bits.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        let (r, c) = (self.rows * other.rows, self.cols * other.cols);
        let mut out = Matrix::zeros(r, c);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let b = other.get(k, l);
                        if !b.is_zero() {
                            out.set(i * other.rows + k, j * other.cols + l, a * b);
                        }
                    }
                }
            }
        }
        out
    }

    /// `later · earlier`: apply `earlier` first.
    pub fn matmul(later: &Matrix, earlier: &Matrix) -> Result<Matrix, LinalgError> {
        if later.cols != earlier.rows {
            return Err(LinalgError::Dimension(earlier.rows, earlier.cols, later.rows, later.cols));
        }
        let mut out = Matrix::zeros(later.rows, earlier.cols);
        for i in 0..later.rows {
            for k in 0..later.cols {
                let a = later.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..earlier.cols {
                    let b = earlier.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.data[idx] += &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn scale(&self, s: &RingElt) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * s).collect() }
    }

    /// Exact equality, shape included.
    pub fn equal(a: &Matrix, b: &Matrix) -> bool {
        a == b
    }

    /// Finds nonzero `(p, q)` with `p·a = q·b`, taking `p = b_ij`, `q = a_ij`
    /// at the first entry where `a` is nonzero, then verifying every entry.
    pub fn proportional(a: &Matrix, b: &Matrix) -> Result<Option<(RingElt, RingElt)>, LinalgError> {
        if a.rows != b.rows || a.cols != b.cols {
            return Err(LinalgError::Shape(a.rows, a.cols, b.rows, b.cols));
        }
        if a.is_zero() || b.is_zero() {
            return Err(LinalgError::Degenerate);
        }
        let idx = a.data.iter().position(|x| !x.is_zero()).expect("nonzero");
        let (p, q) = (b.data[idx].clone(), a.data[idx].clone());
        if p.is_zero() {
            return Ok(None);
        }
        let ok = a.data.iter().zip(&b.data).all(|(x, y)| &p * x == &q * y);
        Ok(ok.then_some((p, q)))
    }

    /// If `b = s·a` for a single ring scalar `s` read off the first nonzero
    /// entry of `a`, returns `s`.
    pub fn scalar_multiple(a: &Matrix, b: &Matrix) -> Option<RingElt> {
        if a.rows != b.rows || a.cols != b.cols {
            return None;
        }
        let idx = a.data.iter().position(|x| !x.is_zero())?;
        let target = &b.data[idx];
        let pivot = &a.data[idx];
        // s = target / pivot must be a ring element; find it by checking the
        // candidate obtained from the unit or dyadic inverse when possible
        let inv = ring_inverse(pivot)?;
        let s = target * &inv;
        a.data.iter().zip(&b.data).all(|(x, y)| &(x * &s) == y).then_some(s)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_string_rows()).expect("serializable")
    }

    pub fn to_string_rows(&self) -> Vec<Vec<String>> {
        (0..self.rows).map(|i| (0..self.cols).map(|j| self.get(i, j).to_string()).collect()).collect()
    }

    pub fn from_json(src: &str) -> Result<Matrix, LinalgError> {
        let rows: Vec<Vec<RingElt>> = serde_json::from_str(src).map_err(|e| LinalgError::Format(e.to_string()))?;
        let c = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != c) {
            return Err(LinalgError::Format("ragged rows".into()));
        }
        Ok(Matrix::from_rows(rows))
    }
}

/// Inverse in the ring when it exists for the easy cases: `λ·w^k` with `λ` a
/// power of two, or products with `√2`. Returns `None` otherwise.
pub fn ring_inverse(x: &RingElt) -> Option<RingElt> {
    use crate::ring::Dyadic;
    if let Some((l, k)) = x.polar_in_fragment() {
        if l.is_zero() {
            return None;
        }
        // l = n/2^e invertible iff n = ±1 (after normalization n odd or power of two)
        let n = l.numerator().clone();
        let e = l.exponent();
        let one = num_bigint::BigInt::from(1);
        let (n_odd, twos) = {
            let tz = n.trailing_zeros().unwrap_or(0);
            (&n >> tz as usize, tz as u32)
        };
        if n_odd != one {
            return None;
        }
        // l = 2^(twos - e)
        let inv_l = if twos >= e { Dyadic::new(1, twos - e) } else { Dyadic::new(num_bigint::BigInt::from(1) << (e - twos) as usize, 0) };
        return Some(RingElt::from_dyadic(inv_l).mul_phase(-k));
    }
    // try x = √2·u with u invertible
    let u = x * &RingElt::inv_sqrt2();
    if u.polar_in_fragment().is_some() {
        return ring_inverse(&u).map(|ui| &ui * &RingElt::inv_sqrt2());
    }
    None
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{}", self.rows, self.cols)?;
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Matrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_string_rows().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Matrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let rows: Vec<Vec<RingElt>> = Vec::deserialize(d)?;
        Ok(Matrix::from_rows(rows))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{Dyadic, PhaseK};
    use proptest::prelude::*;

    fn lam(n: i64, k: u32) -> RingElt {
        RingElt::from_dyadic(Dyadic::new(n, k))
    }

    #[test]
    fn kron_examples() {
        assert_eq!(Matrix::identity(2).kron(&Matrix::identity(2)), Matrix::identity(4));
        let ket0 = Matrix::from_int_rows(&[&[1], &[0]]);
        let ket1 = Matrix::from_int_rows(&[&[0], &[1]]);
        let e1 = Matrix::from_int_rows(&[&[0], &[1], &[0], &[0]]);
        assert_eq!(ket0.kron(&ket1), e1);
        let l = lam(3, 1);
        let d = Matrix::diag(&[RingElt::from_int(1), l.clone()]);
        let expect = Matrix::diag(&[RingElt::from_int(1), RingElt::from_int(1), l.clone(), l]);
        assert_eq!(d.kron(&Matrix::identity(2)), expect);
    }

    #[test]
    fn matmul_examples() {
        let a = Matrix::from_int_rows(&[&[1, 2], &[3, 4]]);
        assert_eq!(Matrix::matmul(&Matrix::identity(2), &a).unwrap(), a);
        let t = Matrix::from_int_rows(&[&[1, 1], &[0, 1]]);
        let ti = Matrix::from_int_rows(&[&[1, -1], &[0, 1]]);
        assert_eq!(Matrix::matmul(&t, &ti).unwrap(), Matrix::identity(2));
        let bra = Matrix::from_int_rows(&[&[1, 0, 0, 1]]);
        let ket = Matrix::from_int_rows(&[&[1], &[0], &[0], &[1]]);
        assert_eq!(Matrix::matmul(&bra, &ket).unwrap(), Matrix::scalar(RingElt::from_int(2)));
        assert!(Matrix::matmul(&bra, &bra).is_err());
    }

    #[test]
    fn equality_examples() {
        let a = Matrix::from_int_rows(&[&[1, 2], &[3, 4]]);
        assert!(Matrix::equal(&a, &a));
        let z = Matrix::diag(&[RingElt::from_int(1), RingElt::from_int(-1)]);
        assert!(!Matrix::equal(&Matrix::identity(2), &z));
        assert!(!Matrix::equal(&Matrix::identity(2), &Matrix::identity(4)));
    }

    #[test]
    fn proportional_examples() {
        let i2 = Matrix::identity(2);
        let two_i = i2.scale(&RingElt::from_int(2));
        let (p, q) = Matrix::proportional(&two_i, &i2).unwrap().unwrap();
        assert_eq!((p, q), (RingElt::from_int(1), RingElt::from_int(2)));
        let (p, q) = Matrix::proportional(&i2, &i2).unwrap().unwrap();
        assert_eq!((p, q), (RingElt::from_int(1), RingElt::from_int(1)));
        let z = Matrix::diag(&[RingElt::from_int(1), RingElt::from_int(-1)]);
        assert!(Matrix::proportional(&i2, &z).unwrap().is_none());
        assert_eq!(Matrix::proportional(&Matrix::zeros(2, 2), &i2), Err(LinalgError::Degenerate));
    }

    #[test]
    fn inverse_of_units() {
        for k in 0..8 {
            let x = RingElt::from_phase(PhaseK::new(k));
            assert!((&x * &ring_inverse(&x).unwrap()).is_one());
        }
        let s = RingElt::sqrt2();
        assert!((&s * &ring_inverse(&s).unwrap()).is_one());
        assert!(ring_inverse(&RingElt::from_int(3)).is_none());
        let q = lam(1, 3);
        assert!((&q * &ring_inverse(&q).unwrap()).is_one());
    }

    #[test]
    fn json_roundtrip() {
        let m = Matrix::from_rows(vec![vec![RingElt::omega(), lam(-3, 2)]]);
        let s = m.to_json();
        assert_eq!(Matrix::from_json(&s).unwrap(), m);
    }

    fn arb_small() -> impl Strategy<Value = RingElt> {
        prop::array::uniform4(-3i64..4).prop_map(RingElt::from_ints)
    }

    fn arb_matrix(r: usize, c: usize) -> impl Strategy<Value = Matrix> {
        prop::collection::vec(arb_small(), r * c).prop_map(move |v| {
            let mut it = v.into_iter();
            Matrix::from_fn(r, c, |_, _| it.next().unwrap())
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn interchange_law(a in arb_matrix(2, 2), b in arb_matrix(2, 1), c in arb_matrix(2, 2), d in arb_matrix(1, 2)) {
            let lhs = Matrix::matmul(&a.kron(&b), &c.kron(&d)).unwrap();
            let rhs = Matrix::matmul(&a, &c).unwrap().kron(&Matrix::matmul(&b, &d).unwrap());
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn kron_and_matmul_associate(a in arb_matrix(2, 2), b in arb_matrix(2, 2), c in arb_matrix(2, 2)) {
            prop_assert_eq!(a.kron(&b).kron(&c), a.kron(&b.kron(&c)));
            let ab = Matrix::matmul(&a, &b).unwrap();
            let bc = Matrix::matmul(&b, &c).unwrap();
            prop_assert_eq!(Matrix::matmul(&ab, &c).unwrap(), Matrix::matmul(&a, &bc).unwrap());
        }

        #[test]
        fn proportional_is_verified(a in arb_matrix(2, 2), s in arb_small()) {
            prop_assume!(!a.is_zero() && !s.is_zero());
            let b = a.scale(&s);
            let (p, q) = Matrix::proportional(&a, &b).unwrap().unwrap();
            for (x, y) in a.entries().iter().zip(b.entries()) {
                prop_assert_eq!(&p * x, &q * y);
            }
        }
    }
}
