//! Dense matrices of polynomials.

use std::fmt;

use crate::error::{AlgebraError, Result};
use crate::poly::Polynomial;
use crate::ring::{same_ring, RingRef};

#[derive(Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    ring: RingRef,
    rows: usize,
    cols: usize,
    entries: Vec<Polynomial>,
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl PolyMatrix {
    pub fn zero(ring: &RingRef, rows: usize, cols: usize) -> Self {
        PolyMatrix { ring: ring.clone(), rows, cols, entries: vec![Polynomial::zero(ring); rows * cols] }
    }

    pub fn identity(ring: &RingRef, n: usize) -> Self {
        let mut m = Self::zero(ring, n, n);
        for i in 0..n {
            m.set(i, i, Polynomial::one(ring));
        }
        m
    }

    pub fn from_rows(ring: &RingRef, rows: Vec<Vec<Polynomial>>) -> Result<Self> {
        let r = rows.len();
        if r == 0 {
            return Err(AlgebraError::Dimension("matrix has no rows".into()));
        }
        let c = rows[0].len();
        if c == 0 || rows.iter().any(|row| row.len() != c) {
            return Err(AlgebraError::Dimension("ragged or empty matrix rows".into()));
        }
        if rows.iter().flatten().any(|p| !same_ring(p.ring(), ring)) {
            return Err(AlgebraError::RingMismatch);
        }
        Ok(PolyMatrix { ring: ring.clone(), rows: r, cols: c, entries: rows.into_iter().flatten().collect() })
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(ring: &RingRef, nrows: usize, cols: &[Vec<Polynomial>]) -> Self {
        let mut m = Self::zero(ring, nrows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for (i, v) in c.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Polynomial) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[Polynomial] {
        &self.entries
    }

    pub fn column(&self, j: usize) -> Vec<Polynomial> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Polynomial>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn row(&self, i: usize) -> Vec<Polynomial> {
        (0..self.cols).map(|j| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Polynomial::is_zero)
    }

    pub fn map(&self, f: impl Fn(&Polynomial) -> Polynomial) -> Self {
        PolyMatrix { ring: self.ring.clone(), rows: self.rows, cols: self.cols, entries: self.entries.iter().map(f).collect() }
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zero(&self.ring, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(j, i, self.get(i, j).clone());
            }
        }
        m
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(AlgebraError::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        if !same_ring(&self.ring, &other.ring) {
            return Err(AlgebraError::RingMismatch);
        }
        let mut m = Self::zero(&self.ring, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Polynomial::zero(&self.ring);
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    let b = other.get(k, j);
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                m.set(i, j, acc);
            }
        }
        Ok(m)
    }

    pub fn mul_vec(&self, v: &[Polynomial]) -> Result<Vec<Polynomial>> {
        if v.len() != self.cols {
            return Err(AlgebraError::RankMismatch { expected: self.cols, got: v.len() });
        }
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = Polynomial::zero(&self.ring);
                for (k, x) in v.iter().enumerate() {
                    let a = self.get(i, k);
                    if !a.is_zero() && !x.is_zero() {
                        acc = &acc + &(a * x);
                    }
                }
                acc
            })
            .collect())
    }

    pub fn scale(&self, c: &Polynomial) -> Self {
        self.map(|a| a * c)
    }

    pub fn bracket_power(&self, e: u32) -> Self {
        self.map(|a| a.bracket_power(e))
    }

    /// Submatrix keeping the given rows and columns.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut m = Self::zero(&self.ring, rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                m.set(a, b, self.get(i, j).clone());
            }
        }
        m
    }

    /// Top-left `k x k` block.
    pub fn leading_block(&self, k: usize) -> Self {
        let idx: Vec<usize> = (0..k).collect();
        self.submatrix(&idx, &idx)
    }

    pub fn determinant(&self) -> Result<Polynomial> {
        if !self.is_square() {
            return Err(AlgebraError::Dimension(format!("determinant of a {}x{} matrix", self.rows, self.cols)));
        }
        if self.rows <= 4 {
            Ok(self.det_expand())
        } else {
            Ok(self.det_bareiss())
        }
    }

    fn det_expand(&self) -> Polynomial {
        let n = self.rows;
        match n {
            1 => self.get(0, 0).clone(),
            2 => &(self.get(0, 0) * self.get(1, 1)) - &(self.get(0, 1) * self.get(1, 0)),
            _ => {
                let mut acc = Polynomial::zero(&self.ring);
                let rows: Vec<usize> = (1..n).collect();
                for j in 0..n {
                    let a = self.get(0, j);
                    if a.is_zero() {
                        continue;
                    }
                    let cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
                    let minor = self.submatrix(&rows, &cols).det_expand();
                    let term = a * &minor;
                    acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
                }
                acc
            }
        }
    }

    /// Fraction-free Bareiss elimination.
    fn det_bareiss(&self) -> Polynomial {
        let n = self.rows;
        let mut a = self.clone();
        let mut sign = false;
        let mut prev = Polynomial::one(&self.ring);
        for k in 0..n - 1 {
            if a.get(k, k).is_zero() {
                match (k + 1..n).find(|&i| !a.get(i, k).is_zero()) {
                    Some(i) => {
                        for j in 0..n {
                            let t = a.get(k, j).clone();
                            a.set(k, j, a.get(i, j).clone());
                            a.set(i, j, t);
                        }
                        sign = !sign;
                    }
                    None => return Polynomial::zero(&self.ring),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(a.get(i, j) * a.get(k, k)) - &(a.get(i, k) * a.get(k, j));
                    a.set(i, j, num.exact_div(&prev).expect("Bareiss division is exact"));
                }
            }
            prev = a.get(k, k).clone();
        }
        let d = a.get(n - 1, n - 1).clone();
        if sign {
            -&d
        } else {
            d
        }
    }
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ",")?;
            }
            let row: Vec<String> = self.row(i).iter().map(|p| p.to_string()).collect();
            write!(f, "[{}]", row.join(","))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_nested;
    use crate::ring::Ring;

    fn mat(ring: &RingRef, s: &str) -> PolyMatrix {
        PolyMatrix::from_rows(ring, parse_nested(ring, s).unwrap()).unwrap()
    }

    #[test]
    fn determinants() {
        let ring = Ring::new(2, &["x", "y", "z"]).unwrap();
        assert!(PolyMatrix::identity(&ring, 3).determinant().unwrap().is_one());
        let u2 = mat(&ring, "[[x*(x^3+y^3+z^3), y*(x^3+y^3+z^3)],[x*(x^2+z^4), y*(x^2+z^4)]]");
        assert!(u2.determinant().unwrap().is_zero());
        let u1 = mat(&ring, "[[x^3+y^3+z^3, x*y^2*z^5],[x*(y^2+z^2), x^3]]");
        let expect = Polynomial::parse(&ring, "x^3*(x^3+y^3+z^3) + x^2*y^2*z^5*(y^2+z^2)").unwrap();
        assert_eq!(u1.determinant().unwrap(), expect);
        assert!(mat(&ring, "[[x],[y]]").determinant().is_err());
    }

    #[test]
    fn bareiss_agrees_with_expansion() {
        let ring = Ring::new(3, &["x", "y"]).unwrap();
        let m = mat(
            &ring,
            "[[x,1,0,y,2],[y,x,1,0,0],[0,y,x,1,x*y],[1,0,y,x,0],[x+y,0,0,1,x]]",
        );
        assert_eq!(m.det_bareiss(), m.det_expand());
    }

    #[test]
    fn bracket_power_entrywise() {
        let ring = Ring::new(2, &["x", "y"]).unwrap();
        assert_eq!(mat(&ring, "[[x,y],[0,1]]").bracket_power(1), mat(&ring, "[[x^2,y^2],[0,1]]"));
        let id = PolyMatrix::identity(&ring, 2);
        assert_eq!(id.bracket_power(3), id);
    }
}
