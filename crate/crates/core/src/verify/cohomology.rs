//! Harmonic dimensions per block, flavor and sector.
//!
//! Cohomology is read off as the kernel of the Laplacian of each flavor,
//! which by the Hodge decomposition represents it.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use super::block::{build_block, Block, Sector};
use super::linalg::{Field, Matrix, SMatrix};
use super::{sample_points, Mode, Options};
use crate::error::Result;
use crate::hermitian::Flavor;
use crate::lefschetz::{OpName, OperatorHandle};

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct BlockDims {
    pub block: usize,
    pub sectors: BTreeMap<String, usize>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct FlavorCohomology {
    pub flavor: String,
    /// `H⁰, H¹, H²`
    pub totals: [usize; 3],
    pub sectors: BTreeMap<String, usize>,
    pub blocks: Vec<BlockDims>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct CohomologyReport {
    pub max_level: usize,
    pub mode: String,
    /// Totals of the de Rham flavor.
    #[serde(rename = "H0")]
    pub h0: usize,
    #[serde(rename = "H1")]
    pub h1: usize,
    #[serde(rename = "H2")]
    pub h2: usize,
    /// `ok` when totals are `1, 0, 1` and both Dolbeault flavors refine them
    /// to one class in `Ω⁰` and one in `Ω²`; otherwise `mismatch`.
    pub refinement: String,
    pub flavors: Vec<FlavorCohomology>,
}

impl CohomologyReport {
    pub fn consistent(&self) -> bool {
        self.refinement == "ok"
    }
}

fn laplacian_matrix(b: &Block, flavor: usize) -> Result<SMatrix> {
    let (d, a) = [(OpName::D, OpName::DStar), (OpName::Del, OpName::DelStar), (OpName::Dbar, OpName::DbarStar)][flavor];
    let dirac = b.matrix_of(&OperatorHandle::op(d))?.add(&b.matrix_of(&OperatorHandle::op(a))?);
    Ok(dirac.mul(&dirac))
}

fn nullity<F: Field>(m: &Matrix<F>) -> usize {
    m.cols - m.rank()
}

/// Kernel dimension of the Laplacian restricted to each sector.
fn sector_dims(b: &Block, flavor: usize, opts: &Options) -> Result<BTreeMap<String, usize>> {
    let lap = laplacian_matrix(b, flavor)?;
    let points = match &opts.mode {
        Mode::Numeric(s0) => Some(vec![s0.clone()]),
        Mode::Symbolic if lap.max_complexity() > opts.budget => Some(sample_points()),
        Mode::Symbolic => None,
    };
    let mut out = BTreeMap::new();
    for s in Sector::ALL {
        let idx = b.sector_indices(s);
        let sub = lap.submatrix(idx, idx);
        let dim = match &points {
            None => nullity(&sub),
            // a kernel can only grow at special points
            Some(ps) => ps.iter().map(|p| sub.specialize(p).map(|m| nullity(&m))).collect::<Result<Vec<_>>>()?.into_iter().min().unwrap_or(0),
        };
        out.insert(s.name().to_string(), dim);
    }
    Ok(out)
}

pub fn cohomology(opts: &Options) -> Result<CohomologyReport> {
    let blocks: Vec<Block> = (0..=opts.max_level).into_par_iter().map(build_block).collect();
    let per_block: Vec<[BTreeMap<String, usize>; 3]> = blocks
        .par_iter()
        .map(|b| Ok([sector_dims(b, 0, opts)?, sector_dims(b, 1, opts)?, sector_dims(b, 2, opts)?]))
        .collect::<Result<Vec<_>>>()?;
    let mut flavors = Vec::new();
    let mut consistent = true;
    for (k, fl) in Flavor::ALL.iter().enumerate() {
        let mut sectors: BTreeMap<String, usize> = Sector::ALL.iter().map(|s| (s.name().to_string(), 0)).collect();
        let mut totals = [0; 3];
        let mut rows = Vec::new();
        for (b, dims) in blocks.iter().zip(&per_block) {
            for s in Sector::ALL {
                let v = dims[k][s.name()];
                *sectors.get_mut(s.name()).unwrap() += v;
                totals[s.degree()] += v;
            }
            rows.push(BlockDims { block: b.n, sectors: dims[k].clone() });
        }
        let expected: BTreeMap<String, usize> =
            [("Omega0", 1), ("Omega10", 0), ("Omega01", 0), ("Omega2", 1)].iter().map(|(n, v)| (n.to_string(), *v)).collect();
        consistent &= totals == [1, 0, 1] && sectors == expected;
        flavors.push(FlavorCohomology { flavor: fl.name().to_string(), totals, sectors, blocks: rows });
    }
    let mode = match opts.mode {
        Mode::Symbolic => "symbolic",
        Mode::Numeric(_) => "numeric",
    };
    let [h0, h1, h2] = flavors[0].totals;
    Ok(CohomologyReport {
        max_level: opts.max_level,
        mode: mode.to_string(),
        h0,
        h1,
        h2,
        refinement: if consistent { "ok" } else { "mismatch" }.to_string(),
        flavors,
    })
}
