//! Block-level checks for the calculus, metric, Hodge, sl2 and Kähler suites.

use std::sync::atomic::{AtomicBool, Ordering};

use num_rational::BigRational;

use super::block::{build_block, Block, Sector};
use super::linalg::{gram_pairing, is_positive_definite, Field, Matrix, NMatrix};
use super::{positivity_point, sample_points, CheckResult, Mode, Options, Suite};
use crate::calculus::{calibration, Form};
use crate::error::Result;
use crate::hermitian::{integral, inner_via_hodge, Flavor};
use crate::lefschetz::{OpName, OperatorHandle};
use crate::scalar::{Coeff, Scalar};

/// Matrices of the basic operators on one block.
#[derive(Clone)]
struct Ops<F> {
    /// `d, ∂, ∂̄` in [`Flavor::ALL`] order
    delta: [Matrix<F>; 3],
    /// `d^*, ∂^*, ∂̄^*`
    adjoint: [Matrix<F>; 3],
    l: Matrix<F>,
    lambda: Matrix<F>,
    counting: Matrix<F>,
    hodge: Matrix<F>,
    gram: Matrix<F>,
    gram_hodge: Matrix<F>,
}

impl<F: Field> Ops<F> {
    fn try_map<G: Field>(&self, f: impl Fn(&Matrix<F>) -> Result<Matrix<G>>) -> Result<Ops<G>> {
        Ok(Ops {
            delta: [f(&self.delta[0])?, f(&self.delta[1])?, f(&self.delta[2])?],
            adjoint: [f(&self.adjoint[0])?, f(&self.adjoint[1])?, f(&self.adjoint[2])?],
            l: f(&self.l)?,
            lambda: f(&self.lambda)?,
            counting: f(&self.counting)?,
            hodge: f(&self.hodge)?,
            gram: f(&self.gram)?,
            gram_hodge: f(&self.gram_hodge)?,
        })
    }

    fn matrices(&self) -> Vec<&Matrix<F>> {
        let mut v: Vec<&Matrix<F>> = self.delta.iter().chain(self.adjoint.iter()).collect();
        v.extend([&self.l, &self.lambda, &self.counting, &self.hodge, &self.gram, &self.gram_hodge]);
        v
    }

    fn laplacian(&self, k: usize) -> Matrix<F> {
        let dirac = self.delta[k].add(&self.adjoint[k]);
        dirac.mul(&dirac)
    }
}

fn symbolic_ops(b: &Block) -> Result<Ops<Scalar>> {
    let m = |o: OpName| b.matrix_of(&OperatorHandle::op(o));
    let n = b.dim();
    let mut gram_hodge = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            gram_hodge.set(i, j, inner_via_hodge(&b.basis()[i], &b.basis()[j]));
        }
    }
    Ok(Ops {
        delta: [m(OpName::D)?, m(OpName::Del)?, m(OpName::Dbar)?],
        adjoint: [m(OpName::DStar)?, m(OpName::DelStar)?, m(OpName::DbarStar)?],
        l: m(OpName::L)?,
        lambda: m(OpName::Lambda)?,
        counting: m(OpName::Counting)?,
        hodge: m(OpName::HodgeStar)?,
        gram: b.gram(),
        gram_hodge,
    })
}

enum Arith {
    Exact(Box<Ops<Scalar>>),
    Sampled(Vec<(BigRational, Ops<Coeff>)>),
    Broken(String),
}

pub(crate) struct BlockContext {
    block: Block,
    arith: Arith,
    positivity: std::result::Result<NMatrix, String>,
}

fn sampled(ops: &Ops<Scalar>, points: Vec<BigRational>) -> Result<Arith> {
    let v = points
        .into_iter()
        .map(|s0| ops.try_map(|m| m.specialize(&s0)).map(|o| (s0, o)))
        .collect::<Result<Vec<_>>>()?;
    Ok(Arith::Sampled(v))
}

impl BlockContext {
    pub(crate) fn new(block: Block, opts: &Options, fell_back: &AtomicBool) -> Self {
        let pd = positivity_point(&opts.mode);
        let (arith, positivity) = match symbolic_ops(&block) {
            Err(e) => (Arith::Broken(e.to_string()), Err(e.to_string())),
            Ok(ops) => {
                let positivity = ops.gram.specialize(&pd).map_err(|e| e.to_string());
                let arith = match &opts.mode {
                    Mode::Symbolic => {
                        let cx = ops.matrices().iter().map(|m| m.max_complexity()).max().unwrap_or(0);
                        if cx <= opts.budget {
                            Ok(Arith::Exact(Box::new(ops)))
                        } else {
                            fell_back.store(true, Ordering::Relaxed);
                            sampled(&ops, sample_points())
                        }
                    }
                    Mode::Numeric(s0) => sampled(&ops, vec![s0.clone()]),
                };
                (arith.unwrap_or_else(|e| Arith::Broken(e.to_string())), positivity)
            }
        };
        BlockContext { block, arith, positivity }
    }

    pub(crate) fn run(&self, part: Suite, opts: &Options) -> Vec<CheckResult> {
        let b = &self.block;
        let n = Some(b.n);
        if let Arith::Broken(msg) = &self.arith {
            return vec![CheckResult::new("block-preservation", n, None, Some(msg.clone()))];
        }
        let mut out = Vec::new();
        if part == Suite::Calculus {
            out.push(CheckResult::new("block-preservation", n, None, None));
        }
        let outcomes = match &self.arith {
            Arith::Exact(ops) => checks(part, ops, b),
            Arith::Sampled(v) => merge(v.iter().map(|(s0, ops)| (s0, checks(part, ops, b))).collect()),
            Arith::Broken(_) => unreachable!(),
        };
        out.extend(outcomes.into_iter().map(|o| CheckResult::new(o.check, n, o.sector, o.fail)));
        match part {
            Suite::Calculus => out.extend(self.form_checks()),
            Suite::Metric if b.dim() > 0 => {
                let fail = match &self.positivity {
                    Ok(g) if is_positive_definite(g) => None,
                    Ok(_) => Some(format!("a leading minor is not positive at s = {}", positivity_point(&opts.mode))),
                    Err(e) => Some(e.clone()),
                };
                out.push(CheckResult::new("gram-positive-definite", n, None, fail));
            }
            _ => {}
        }
        out
    }

    fn points(&self) -> Option<Vec<BigRational>> {
        match &self.arith {
            Arith::Sampled(v) => Some(v.iter().map(|(s, _)| s.clone()).collect()),
            _ => None,
        }
    }

    fn vanishes(&self, w: &Form) -> bool {
        let points = self.points();
        w.components().all(|(_, x)| {
            x.terms().all(|(_, c)| match &points {
                None => c.is_zero(),
                Some(ps) => ps.iter().all(|s0| c.specialize(s0).map(|v| v.is_zero()).unwrap_or(false)),
            })
        })
    }

    fn scalar_vanishes(&self, c: &Scalar) -> bool {
        match self.points() {
            None => c.is_zero(),
            Some(ps) => ps.iter().all(|s0| c.specialize(s0).map(|v| Field::is_zero(&v)).unwrap_or(false)),
        }
    }

    /// Graded Leibniz on products of block forms and `∫ ∘ d = 0` on `Ω¹`.
    fn form_checks(&self) -> Vec<CheckResult> {
        let b = &self.block;
        let cal = calibration();
        let mut out = Vec::new();
        for fl in Flavor::ALL {
            let mut fail = None;
            'outer: for m in (0..=b.n).step_by(2) {
                let (left, right) = (build_block(m), build_block(b.n - m));
                for x in left.basis() {
                    let k = x.degree().unwrap_or(0);
                    for y in right.basis() {
                        let lhs = fl.apply(&cal.wedge(x, y));
                        let second = cal.wedge(x, &fl.apply(y));
                        let second = if k % 2 == 1 { -&second } else { second };
                        let rhs = &cal.wedge(&fl.apply(x), y) + &second;
                        if !self.vanishes(&(&lhs - &rhs)) {
                            fail = Some(format!("x = {x}, y = {y}"));
                            break 'outer;
                        }
                    }
                }
            }
            out.push(CheckResult::new(format!("leibniz({})", fl.name()), Some(b.n), None, fail));
        }
        let mut fail = None;
        for i in b.degree_indices(1) {
            let w = &b.basis()[i];
            let v = integral(&cal.differential(w));
            if !self.scalar_vanishes(&v) {
                fail = Some(format!("integral of d({}) = {}", b.label(i), v.render()));
                break;
            }
        }
        out.push(CheckResult::new("integral-of-exact", Some(b.n), None, fail));
        out
    }
}

struct Outcome {
    check: String,
    sector: Option<Sector>,
    fail: Option<String>,
}

fn outcome(check: impl Into<String>, fail: Option<String>) -> Outcome {
    Outcome { check: check.into(), sector: None, fail }
}

fn merge(runs: Vec<(&BigRational, Vec<Outcome>)>) -> Vec<Outcome> {
    let mut iter = runs.into_iter();
    let (s0, first) = iter.next().expect("at least one sample point");
    let tag = |s: &BigRational, f: Option<String>| f.map(|m| format!("at s = {s}: {m}"));
    let mut merged: Vec<Outcome> =
        first.into_iter().map(|o| Outcome { check: o.check, sector: o.sector, fail: tag(s0, o.fail) }).collect();
    for (s, run) in iter {
        for (m, o) in merged.iter_mut().zip(run) {
            if m.fail.is_none() {
                m.fail = tag(s, o.fail);
            }
        }
    }
    merged
}

fn compare<F: Field>(b: &Block, lhs: &Matrix<F>, rhs: &Matrix<F>) -> Option<String> {
    for c in 0..lhs.cols {
        for r in 0..lhs.rows {
            if lhs.get(r, c) != rhs.get(r, c) {
                return Some(format!(
                    "on {} the {} coordinate is {} instead of {}",
                    b.label(c),
                    b.label(r),
                    lhs.get(r, c).render(),
                    rhs.get(r, c).render()
                ));
            }
        }
    }
    None
}

fn zero_check<F: Field>(b: &Block, m: &Matrix<F>) -> Option<String> {
    compare(b, m, &Matrix::zeros(m.rows, m.cols))
}

/// `Mᵀ G = G conj(N)`, i.e. `⟨Mx, y⟩ = ⟨x, Ny⟩`.
fn adjoint_check<F: Field>(b: &Block, g: &Matrix<F>, m: &Matrix<F>, n: &Matrix<F>) -> Option<String> {
    compare(b, &m.transpose().mul(g), &g.mul(&n.conj()))
}

fn bidegree(s: Sector) -> (i32, i32) {
    let (p, q) = s.frame().bidegree();
    (p as i32, q as i32)
}

/// Every nonzero entry maps a sector of bidegree `(p, q)` into `(p, q) + shift`.
fn shift_check<F: Field>(b: &Block, m: &Matrix<F>, shift: (i32, i32)) -> Option<String> {
    for c in 0..m.cols {
        for r in 0..m.rows {
            let (sc, sr) = (bidegree(b.sector_of(c)), bidegree(b.sector_of(r)));
            if !m.get(r, c).is_zero() && (sc.0 + shift.0, sc.1 + shift.1) != sr {
                return Some(format!("{} has a component along {}", b.label(c), b.label(r)));
            }
        }
    }
    None
}

fn checks<F: Field>(part: Suite, ops: &Ops<F>, b: &Block) -> Vec<Outcome> {
    match part {
        Suite::Calculus => calculus_checks(ops, b),
        Suite::Metric => metric_checks(ops, b),
        Suite::Hodge => hodge_checks(ops, b),
        Suite::Sl2 => sl2_checks(ops, b),
        Suite::Kahler => kahler_checks(ops, b),
        Suite::Hopf | Suite::All => Vec::new(),
    }
}

fn calculus_checks<F: Field>(ops: &Ops<F>, b: &Block) -> Vec<Outcome> {
    let [d, del, dbar] = &ops.delta;
    let mut out = Vec::new();
    for (k, fl) in Flavor::ALL.iter().enumerate() {
        let m = &ops.delta[k];
        out.push(outcome(format!("nilpotent({})", fl.name()), zero_check(b, &m.mul(m))));
    }
    out.push(outcome("anticommute(del,dbar)", zero_check(b, &del.commutator(dbar, true))));
    out.push(outcome("d=del+dbar", compare(b, d, &del.add(dbar))));
    out.push(outcome("bidegree(del)", shift_check(b, del, (1, 0))));
    out.push(outcome("bidegree(dbar)", shift_check(b, dbar, (0, 1))));
    out
}

fn metric_checks<F: Field>(ops: &Ops<F>, b: &Block) -> Vec<Outcome> {
    let g = &ops.gram;
    let mut out = vec![
        outcome("gram-hermitian", compare(b, &g.transpose(), &g.conj())),
        outcome("inner-product-routes-agree", compare(b, g, &ops.gram_hodge)),
    ];
    for (k, fl) in Flavor::ALL.iter().enumerate() {
        let name = format!("adjoint({0},{0}*)", fl.name());
        out.push(outcome(name, adjoint_check(b, g, &ops.delta[k], &ops.adjoint[k])));
    }
    out.push(outcome("adjoint(L,Lambda)", adjoint_check(b, g, &ops.l, &ops.lambda)));
    out
}

fn hodge_checks<F: Field>(ops: &Ops<F>, b: &Block) -> Vec<Outcome> {
    let mut out = Vec::new();
    for (k, fl) in Flavor::ALL.iter().enumerate() {
        let lap = ops.laplacian(k);
        out.push(outcome(
            format!("hodge-star-commutes(Delta_{})", fl.name()),
            compare(b, &ops.hodge.mul(&lap), &lap.mul(&ops.hodge)),
        ));
    }
    for k in 0..3 {
        out.extend(decomposition(ops, b, k));
    }
    out
}

/// Hodge decomposition for one flavor: harmonic forms are exactly the closed
/// and coclosed ones, the three summands are orthogonal and their dimensions
/// fill each sector.
fn decomposition<F: Field>(ops: &Ops<F>, b: &Block, k: usize) -> Vec<Outcome> {
    let name = Flavor::ALL[k].name();
    let (m, a, g) = (&ops.delta[k], &ops.adjoint[k], &ops.gram);
    let lap = ops.laplacian(k);
    let (harmonic, _) = lap.kernel_and_rank();
    let (closed_coclosed, _) = m.stack(a).kernel_and_rank();
    let mut out = Vec::new();

    let fail = if harmonic.len() != closed_coclosed.len() {
        Some(format!("dim ker Delta = {} but dim(ker {name} ∩ ker {name}*) = {}", harmonic.len(), closed_coclosed.len()))
    } else {
        harmonic
            .iter()
            .find(|h| m.apply(h).iter().chain(a.apply(h).iter()).any(|x| !x.is_zero()))
            .map(|_| "a harmonic vector is not closed and coclosed".to_string())
    };
    out.push(outcome(format!("harmonic=closed-coclosed({name})"), fail));

    let cols = |x: &Matrix<F>| (0..x.cols).map(|c| x.column(c)).filter(|v| v.iter().any(|e| !e.is_zero())).collect::<Vec<_>>();
    let groups = [("image", cols(m)), ("coimage", cols(a)), ("harmonic", harmonic.clone())];
    let mut fail = None;
    'pairs: for i in 0..3 {
        for j in i + 1..3 {
            for u in &groups[i].1 {
                for v in &groups[j].1 {
                    let p = gram_pairing(g, u, v);
                    if !p.is_zero() {
                        fail = Some(format!("{} and {} pair to {}", groups[i].0, groups[j].0, p.render()));
                        break 'pairs;
                    }
                }
            }
        }
    }
    out.push(outcome(format!("orthogonal-decomposition({name})"), fail));

    // `∂` and `∂̄` respect bidegree, `d` only form degree
    let all: Vec<usize> = (0..b.dim()).collect();
    let groups: Vec<(Option<Sector>, Vec<usize>)> = if k == 0 {
        (0..3)
            .map(|deg| {
                let sector = match deg {
                    0 => Some(Sector::Omega0),
                    2 => Some(Sector::Omega2),
                    _ => None,
                };
                (sector, b.degree_indices(deg))
            })
            .collect()
    } else {
        Sector::ALL.iter().map(|s| (Some(*s), b.sector_indices(*s).to_vec())).collect()
    };
    for (sector, idx) in groups {
        if idx.is_empty() {
            continue;
        }
        let rest: Vec<usize> = all.iter().copied().filter(|i| !idx.contains(i)).collect();
        let leaks = !lap.submatrix(&idx, &rest).is_zero() || !lap.submatrix(&rest, &idx).is_zero();
        let im = m.submatrix(&idx, &all).rank();
        let co = a.submatrix(&idx, &all).rank();
        let (h, _) = lap.submatrix(&idx, &idx).kernel_and_rank();
        let fail = if leaks {
            Some(format!("Delta_{name} mixes {} with its complement", sector.map_or("Omega1", |s| s.name())))
        } else if im + co + h.len() != idx.len() {
            Some(format!("{im} + {co} + {} != {}", h.len(), idx.len()))
        } else {
            None
        };
        let check = match sector {
            Some(_) => format!("dimension-accounting({name})"),
            None => format!("dimension-accounting({name},Omega1)"),
        };
        out.push(Outcome { check, sector, fail });
    }
    out
}

fn sl2_checks<F: Field>(ops: &Ops<F>, b: &Block) -> Vec<Outcome> {
    let (l, lam, h) = (&ops.l, &ops.lambda, &ops.counting);
    let two = F::from_int(2);
    let mut out = vec![
        outcome("[H,L]=2L", compare(b, &h.commutator(l, false), &l.scale(&two))),
        outcome("[H,Lambda]=-2Lambda", compare(b, &h.commutator(lam, false), &lam.scale(&F::from_int(-2)))),
        outcome("[L,Lambda]=H", compare(b, &l.commutator(lam, false), h)),
    ];
    let mut fail = None;
    for (name, m) in [("L", l), ("Lambda", lam), ("H", h)] {
        for c in 0..m.cols {
            for r in 0..m.rows {
                let odd = |i: usize| b.sector_of(i).degree() == 1;
                if odd(c) != odd(r) && !m.get(r, c).is_zero() && fail.is_none() {
                    fail = Some(format!("{name} maps {} to {}", b.label(c), b.label(r)));
                }
            }
        }
    }
    out.push(outcome("split-invariant", fail));
    out
}

fn kahler_checks<F: Field>(ops: &Ops<F>, b: &Block) -> Vec<Outcome> {
    let [_, del, dbar] = &ops.delta;
    let [_, del_s, dbar_s] = &ops.adjoint;
    let (l, lam) = (&ops.l, &ops.lambda);
    let i = F::imag();
    let mi = F::zero().sub(&i);
    let zero = Matrix::zeros(b.dim(), b.dim());
    let two = F::from_int(2);
    let lap_d = ops.laplacian(0);
    let eqs: Vec<(&str, Matrix<F>, Matrix<F>)> = vec![
        ("[L,del*]=i*dbar", l.commutator(del_s, false), dbar.scale(&i)),
        ("[L,dbar*]=-i*del", l.commutator(dbar_s, false), del.scale(&mi)),
        ("[L,del]=0", l.commutator(del, false), zero.clone()),
        ("[L,dbar]=0", l.commutator(dbar, false), zero.clone()),
        ("[Lambda,del]=i*dbar*", lam.commutator(del, false), dbar_s.scale(&i)),
        ("[Lambda,dbar]=-i*del*", lam.commutator(dbar, false), del_s.scale(&mi)),
        ("[Lambda,del*]=0", lam.commutator(del_s, false), zero.clone()),
        ("[Lambda,dbar*]=0", lam.commutator(dbar_s, false), zero.clone()),
        ("(del,dbar*)=0", del.commutator(dbar_s, true), zero.clone()),
        ("(dbar,del*)=0", dbar.commutator(del_s, true), zero),
        ("Delta_d=2Delta_del", lap_d.clone(), ops.laplacian(1).scale(&two)),
        ("Delta_d=2Delta_dbar", lap_d, ops.laplacian(2).scale(&two)),
    ];
    eqs.into_iter().map(|(name, x, y)| outcome(name, compare(b, &x, &y))).collect()
}
