//! Peter–Weyl blocks and operator matrices.
//!
//! Block `n` of the algebra is the Haar-orthocomplement of the monomials of
//! length `< n` inside those of length `≤ n`. It has one basis vector per
//! weight pair `(μ, ν)` (left and right weight), namely the unique PBW
//! monomial of length `n` with that weight minus its projection onto shorter
//! monomials of the same weight.

use std::ops::Range;

use serde::Serialize;

use crate::calculus::{Form, Frame};
use crate::error::{Error, Result};
use crate::hermitian::inner;
use crate::lefschetz::OperatorHandle;
use crate::qalgebra::{haar, pbw_monomials, pbw_monomials_of_length, star_monomial, AlgebraElement, Monomial};
use crate::scalar::Scalar;
use crate::verify::linalg::SMatrix;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize)]
pub enum Sector {
    Omega0,
    Omega10,
    Omega01,
    Omega2,
}

impl Sector {
    pub const ALL: [Sector; 4] = [Sector::Omega0, Sector::Omega10, Sector::Omega01, Sector::Omega2];

    pub fn frame(self) -> Frame {
        match self {
            Sector::Omega0 => Frame::One,
            Sector::Omega10 => Frame::Plus,
            Sector::Omega01 => Frame::Minus,
            Sector::Omega2 => Frame::Tau,
        }
    }

    pub fn of_frame(f: Frame) -> Sector {
        match f {
            Frame::One => Sector::Omega0,
            Frame::Plus => Sector::Omega10,
            Frame::Minus => Sector::Omega01,
            Frame::Tau => Sector::Omega2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Sector::Omega0 => "Omega0",
            Sector::Omega10 => "Omega10",
            Sector::Omega01 => "Omega01",
            Sector::Omega2 => "Omega2",
        }
    }

    pub fn parse(s: &str) -> Result<Sector> {
        match s {
            "Omega0" | "0" | "00" => Ok(Sector::Omega0),
            "Omega10" | "10" => Ok(Sector::Omega10),
            "Omega01" | "01" => Ok(Sector::Omega01),
            "Omega2" | "2" | "11" => Ok(Sector::Omega2),
            _ => Err(Error::Invalid(format!("unknown sector `{s}` (expected Omega0, Omega10, Omega01, Omega2)"))),
        }
    }

    pub fn degree(self) -> usize {
        self.frame().degree()
    }
}

/// One algebra basis vector of a block.
#[derive(Clone, Debug)]
pub struct WeightVector {
    pub left_weight: i32,
    pub right_weight: i32,
    pub top: Monomial,
    pub vector: AlgebraElement,
}

#[derive(Clone, Debug)]
pub struct Block {
    pub n: usize,
    pub algebra: Vec<WeightVector>,
    sectors: Vec<(Sector, Vec<usize>)>,
    basis: Vec<Form>,
    // (sector, index into `algebra`) of each basis form
    origin: Vec<(Sector, usize)>,
}

/// `⟨x, y⟩ = h(x^* y)` on monomials.
fn haar_form(x: &Monomial, y: &Monomial) -> Scalar {
    haar(&(&star_monomial(x) * &AlgebraElement::monomial(*y)))
}

fn orthogonalize(top: Monomial, lower: &[Monomial]) -> AlgebraElement {
    let mut v = AlgebraElement::monomial(top);
    if lower.is_empty() {
        return v;
    }
    let k = lower.len();
    let mut aug = SMatrix::zeros(k, k + 1);
    for (i, li) in lower.iter().enumerate() {
        for (j, lj) in lower.iter().enumerate() {
            aug.set(i, j, haar_form(li, lj));
        }
        aug.set(i, k, haar_form(li, &top));
    }
    let (r, pivots) = aug.rref();
    assert_eq!(pivots.len(), k, "Haar form is nondegenerate on monomials");
    for (i, l) in lower.iter().enumerate() {
        v.add_term(*l, -r.get(i, k).clone());
    }
    v
}

/// Weight vectors of algebra block `n`, ordered by `(ν, μ)`.
pub fn algebra_block(n: usize) -> Vec<WeightVector> {
    let n32 = n as u32;
    let shorter: Vec<Monomial> = if n == 0 { Vec::new() } else { pbw_monomials(n32 - 1) };
    let mut out: Vec<WeightVector> = pbw_monomials_of_length(n32)
        .into_iter()
        .map(|top| {
            let lower: Vec<Monomial> = shorter
                .iter()
                .filter(|m| m.degree() == top.degree() && m.left_degree() == top.left_degree())
                .copied()
                .collect();
            WeightVector {
                left_weight: top.left_degree(),
                right_weight: top.degree(),
                top,
                vector: orthogonalize(top, &lower),
            }
        })
        .collect();
    out.sort_by_key(|w| (w.right_weight, w.left_weight));
    out
}

/// Builds block `n` with its form sectors.
pub fn build_block(n: usize) -> Block {
    let algebra = algebra_block(n);
    let mut sectors = Vec::new();
    let mut basis = Vec::new();
    let mut origin = Vec::new();
    for s in Sector::ALL {
        let f = s.frame();
        let mut idx = Vec::new();
        for (k, w) in algebra.iter().enumerate().filter(|(_, w)| w.right_weight == f.weight()) {
            idx.push(basis.len());
            basis.push(Form::term(w.vector.clone(), f));
            origin.push((s, k));
        }
        sectors.push((s, idx));
    }
    Block { n, algebra, sectors, basis, origin }
}

impl Block {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Form] {
        &self.basis
    }

    pub fn sector_indices(&self, s: Sector) -> &[usize] {
        &self.sectors.iter().find(|(t, _)| *t == s).unwrap().1
    }

    pub fn sector_range(&self, s: Sector) -> Range<usize> {
        let idx = self.sector_indices(s);
        match (idx.first(), idx.last()) {
            (Some(a), Some(b)) => *a..*b + 1,
            _ => 0..0,
        }
    }

    pub fn sector_dim(&self, s: Sector) -> usize {
        self.sector_indices(s).len()
    }

    /// Indices of every basis vector of form degree `k`.
    pub fn degree_indices(&self, k: usize) -> Vec<usize> {
        Sector::ALL.iter().filter(|s| s.degree() == k).flat_map(|s| self.sector_indices(*s).to_vec()).collect()
    }

    /// Coordinates of a form in the block basis; a nonzero residual means the
    /// form does not lie in the block.
    pub fn expand(&self, w: &Form) -> Result<Vec<Scalar>> {
        let mut coords = vec![Scalar::zero(); self.dim()];
        for (s, idx) in &self.sectors {
            let y = w.coeff(s.frame());
            if y.is_zero() {
                continue;
            }
            let mut residual = y.clone();
            for &i in idx {
                let top = self.algebra_vector(i).top;
                let c = y.coefficient(&top);
                if !c.is_zero() {
                    residual.add_scaled(self.basis[i].coeff(s.frame()), &-c.clone());
                    coords[i] = c;
                }
            }
            if !residual.is_zero() {
                return Err(Error::BlockResidual {
                    block: self.n,
                    message: format!("{} component leaves residual {}", s.name(), residual),
                });
            }
        }
        Ok(coords)
    }

    fn algebra_vector(&self, i: usize) -> &WeightVector {
        &self.algebra[self.origin[i].1]
    }

    pub fn sector_of(&self, i: usize) -> Sector {
        self.origin[i].0
    }

    /// Matrix of an operator on the whole block; column `j` holds the
    /// coordinates of the operator applied to basis vector `j`.
    pub fn matrix_of(&self, op: &OperatorHandle) -> Result<SMatrix> {
        let cols = self.basis.iter().map(|b| self.expand(&op.apply(b))).collect::<Result<Vec<_>>>()?;
        Ok(SMatrix::from_columns(self.dim(), cols))
    }

    /// `G_ij = ⟨b_i, b_j⟩`
    pub fn gram(&self) -> SMatrix {
        let n = self.dim();
        let mut g = SMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                g.set(i, j, inner(&self.basis[i], &self.basis[j]));
            }
        }
        g
    }

    /// Human-readable label of a basis vector.
    pub fn label(&self, i: usize) -> String {
        let w = self.algebra_vector(i);
        format!("{}[mu={},top={}]", self.sector_of(i).name(), w.left_weight, w.top.render())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lefschetz::OpName;

    #[test]
    fn block_dimensions() {
        for n in 0..4 {
            assert_eq!(algebra_block(n).len(), (n + 1) * (n + 1));
        }
        let b0 = build_block(0);
        assert_eq!((b0.sector_dim(Sector::Omega0), b0.sector_dim(Sector::Omega10), b0.sector_dim(Sector::Omega2)), (1, 0, 1));
        let b1 = build_block(1);
        assert_eq!(b1.dim(), 0);
        let b2 = build_block(2);
        assert_eq!(b2.sector_dim(Sector::Omega0), 3);
        assert_eq!(b2.sector_dim(Sector::Omega10), 3);
    }

    #[test]
    fn blocks_are_orthogonal_to_shorter_monomials() {
        let b = algebra_block(2);
        for w in &b {
            for m in pbw_monomials(1) {
                let x = &crate::qalgebra::star(&AlgebraElement::monomial(m)) * &w.vector;
                assert!(haar(&x).is_zero());
            }
        }
    }

    #[test]
    fn expansion_round_trip() {
        let b = build_block(2);
        for (i, f) in b.basis().iter().enumerate() {
            let c = b.expand(f).unwrap();
            assert!(c.iter().enumerate().all(|(j, x)| if i == j { x.is_one() } else { x.is_zero() }));
        }
        let outside = Form::one();
        assert!(b.expand(&outside).is_err());
    }

    #[test]
    fn differential_preserves_blocks() {
        let b = build_block(2);
        let m = b.matrix_of(&OperatorHandle::op(OpName::D)).unwrap();
        assert_eq!(m.rows, b.dim());
        let l = build_block(0).matrix_of(&OperatorHandle::op(OpName::DeltaD)).unwrap();
        assert!(l.is_zero());
    }

    #[test]
    fn sector_names_parse() {
        for s in Sector::ALL {
            assert_eq!(Sector::parse(s.name()).unwrap(), s);
        }
        assert!(Sector::parse("Omega3").is_err());
    }
}
