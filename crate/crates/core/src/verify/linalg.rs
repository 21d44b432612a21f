//! Dense exact linear algebra over `Q(i)(s)` and over `Q(i)`.

use std::fmt::Debug;

use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Result;
use crate::scalar::{Coeff, Scalar};

/// Exact field arithmetic needed by elimination.
pub trait Field: Clone + PartialEq + Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    /// Division by a nonzero element.
    fn div(&self, o: &Self) -> Self;
    fn conj(&self) -> Self;
    fn render(&self) -> String;
    fn from_int(n: i64) -> Self;
    fn imag() -> Self;
}

impl Field for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn one() -> Self {
        Scalar::one()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn conj(&self) -> Self {
        Scalar::conj(self)
    }
    fn render(&self) -> String {
        Scalar::render(self)
    }
    fn from_int(n: i64) -> Self {
        Scalar::from_int(n)
    }
    fn imag() -> Self {
        Scalar::i()
    }
}

impl Field for Coeff {
    fn zero() -> Self {
        Complex::new(BigRational::zero(), BigRational::zero())
    }
    fn one() -> Self {
        Complex::new(BigRational::one(), BigRational::zero())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn conj(&self) -> Self {
        Complex::conj(self)
    }
    fn render(&self) -> String {
        Scalar::from_coeff(self.clone()).render()
    }
    fn from_int(n: i64) -> Self {
        Complex::new(BigRational::from_integer(n.into()), BigRational::zero())
    }
    fn imag() -> Self {
        Complex::new(BigRational::zero(), BigRational::one())
    }
}

#[derive(Clone, PartialEq, Debug)]
pub struct Matrix<F> {
    pub rows: usize,
    pub cols: usize,
    data: Vec<F>,
}

pub type SMatrix = Matrix<Scalar>;
pub type NMatrix = Matrix<Coeff>;

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, F::one());
        }
        m
    }

    pub fn from_columns(rows: usize, cols: Vec<Vec<F>>) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, col) in cols.into_iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, v) in col.into_iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn get(&self, r: usize, c: usize) -> &F {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: F) {
        self.data[r * self.cols + c] = v;
    }

    pub fn column(&self, c: usize) -> Vec<F> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Matrix<G> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn try_map<G: Field>(&self, f: impl Fn(&F) -> Result<G>) -> Result<Matrix<G>> {
        let data = self.data.iter().map(f).collect::<Result<Vec<G>>>()?;
        Ok(Matrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.set(c, r, self.get(r, c).clone());
            }
        }
        m
    }

    pub fn conj(&self) -> Self {
        self.map(|x| x.conj())
    }

    pub fn scale(&self, k: &F) -> Self {
        self.map(|x| x.mul(k))
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| a.sub(b)).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows);
        let mut m = Self::zeros(self.rows, o.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..o.cols {
                    let b = o.get(k, c);
                    if !b.is_zero() {
                        let v = m.get(r, c).add(&a.mul(b));
                        m.set(r, c, v);
                    }
                }
            }
        }
        m
    }

    /// `[A, B] = AB - BA`, or `AB + BA` when graded.
    pub fn commutator(&self, o: &Self, graded: bool) -> Self {
        let ab = self.mul(o);
        let ba = o.mul(self);
        if graded {
            ab.add(&ba)
        } else {
            ab.sub(&ba)
        }
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut m = Self::zeros(rows.len(), cols.len());
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                m.set(i, j, self.get(r, c).clone());
            }
        }
        m
    }

    /// Vertical concatenation.
    pub fn stack(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.cols);
        let mut data = self.data.clone();
        data.extend(o.data.iter().cloned());
        Matrix { rows: self.rows + o.rows, cols: self.cols, data }
    }

    /// First nonzero entry, as `(row, col)`.
    pub fn first_nonzero(&self) -> Option<(usize, usize)> {
        let k = self.data.iter().position(|x| !x.is_zero())?;
        Some((k / self.cols, k % self.cols))
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else { continue };
            if p != r {
                for j in 0..m.cols {
                    let t = m.get(p, j).clone();
                    let u = m.get(r, j).clone();
                    m.set(p, j, u);
                    m.set(r, j, t);
                }
            }
            let piv = m.get(r, c).clone();
            for j in c..m.cols {
                let v = m.get(r, j).div(&piv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in c..m.cols {
                    let v = m.get(i, j).sub(&f.mul(m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Kernel basis (as column vectors) and rank.
    pub fn kernel_and_rank(&self) -> (Vec<Vec<F>>, usize) {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let kernel = free
            .iter()
            .map(|&f| {
                let mut v = vec![F::zero(); self.cols];
                v[f] = F::one();
                for (row, &p) in pivots.iter().enumerate() {
                    v[p] = F::zero().sub(r.get(row, f));
                }
                v
            })
            .collect();
        (kernel, pivots.len())
    }

    pub fn apply(&self, v: &[F]) -> Vec<F> {
        (0..self.rows)
            .map(|r| (0..self.cols).fold(F::zero(), |acc, c| acc.add(&self.get(r, c).mul(&v[c]))))
            .collect()
    }

    pub fn determinant(&self) -> F {
        assert_eq!(self.rows, self.cols);
        let mut m = self.clone();
        let n = m.rows;
        let mut det = F::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m.get(i, c).is_zero()) else { return F::zero() };
            if p != c {
                for j in 0..n {
                    let t = m.get(p, j).clone();
                    let u = m.get(c, j).clone();
                    m.set(p, j, u);
                    m.set(c, j, t);
                }
                det = F::zero().sub(&det);
            }
            let piv = m.get(c, c).clone();
            det = det.mul(&piv);
            for i in c + 1..n {
                if m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).div(&piv);
                for j in c..n {
                    let v = m.get(i, j).sub(&f.mul(m.get(c, j)));
                    m.set(i, j, v);
                }
            }
        }
        det
    }
}

impl SMatrix {
    pub fn specialize(&self, s0: &BigRational) -> Result<NMatrix> {
        self.try_map(|x| x.specialize(s0))
    }

    pub fn max_complexity(&self) -> usize {
        self.data.iter().map(|x| x.complexity()).max().unwrap_or(0)
    }
}

/// `vᴴ G w` for a Gram matrix `G_ij = ⟨b_i, b_j⟩` (conjugate-linear in the
/// second slot): `⟨Σ v_i b_i, Σ w_j b_j⟩ = Σ v_i G_ij conj(w_j)`.
pub fn gram_pairing<F: Field>(g: &Matrix<F>, v: &[F], w: &[F]) -> F {
    let mut acc = F::zero();
    for i in 0..g.rows {
        if v[i].is_zero() {
            continue;
        }
        for j in 0..g.cols {
            if !w[j].is_zero() {
                acc = acc.add(&v[i].mul(g.get(i, j)).mul(&w[j].conj()));
            }
        }
    }
    acc
}

/// Positive definiteness of a Hermitian matrix over `Q(i)` by leading
/// principal minors.
pub fn is_positive_definite(g: &NMatrix) -> bool {
    (1..=g.rows).all(|k| {
        let idx: Vec<usize> = (0..k).collect();
        let d = g.submatrix(&idx, &idx).determinant();
        d.im.is_zero() && d.re.is_positive()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    #[test]
    fn identity_has_full_rank() {
        let m = SMatrix::identity(3);
        let (k, r) = m.kernel_and_rank();
        assert_eq!(r, 3);
        assert!(k.is_empty());
    }

    #[test]
    fn zero_matrix_kernel() {
        let m = SMatrix::zeros(2, 3);
        let (k, r) = m.kernel_and_rank();
        assert_eq!(r, 0);
        assert_eq!(k.len(), 3);
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let q = Scalar::q();
        let m = SMatrix::from_columns(2, vec![vec![s(1), q.clone()], vec![q.clone(), &q * &q], vec![s(0), s(1)]]);
        let (k, r) = m.kernel_and_rank();
        assert_eq!(r + k.len(), 3);
        for v in k {
            assert!(m.apply(&v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn determinant_and_positivity() {
        let m = SMatrix::from_columns(2, vec![vec![s(2), s(1)], vec![s(1), s(2)]]);
        assert_eq!(m.determinant(), s(3));
        let n = m.specialize(&BigRational::one()).unwrap();
        assert!(is_positive_definite(&n));
        let bad = SMatrix::from_columns(2, vec![vec![s(1), s(2)], vec![s(2), s(1)]]);
        assert!(!is_positive_definite(&bad.specialize(&BigRational::one()).unwrap()));
    }
}
