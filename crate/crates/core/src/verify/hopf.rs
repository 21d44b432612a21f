//! Hopf-algebra checks on PBW monomials of bounded length.

use std::collections::BTreeMap;

use super::linalg::Field;
use super::{CheckResult, Mode, Options};
use crate::qalgebra::{
    antipode, coproduct, coproduct_monomial, haar, haar_monomial, mul_monomials, normalize_with, pbw_monomials, star,
    AlgebraElement, Gen, Monomial, TensorElement,
};
use crate::scalar::Scalar;

struct Zero<'a>(&'a Mode);

impl Zero<'_> {
    fn scalar(&self, c: &Scalar) -> bool {
        match self.0 {
            Mode::Symbolic => c.is_zero(),
            Mode::Numeric(s0) => c.specialize(s0).map(|v| Field::is_zero(&v)).unwrap_or(false),
        }
    }

    fn element(&self, x: &AlgebraElement) -> bool {
        x.terms().all(|(_, c)| self.scalar(c))
    }

    fn tensor(&self, t: &TensorElement) -> bool {
        t.terms().all(|(_, c)| self.scalar(c))
    }
}

fn diff_tensor(x: &TensorElement, y: &TensorElement) -> TensorElement {
    let mut t = x.clone();
    t.add_scaled(y, &Scalar::from_int(-1));
    t
}

fn words(len: u32) -> Vec<Vec<Gen>> {
    let mut out: Vec<Vec<Gen>> = vec![Vec::new()];
    for _ in 0..len {
        out = out.into_iter().flat_map(|w| Gen::ALL.into_iter().map(move |g| [w.clone(), vec![g]].concat())).collect();
    }
    out
}

type Triple = BTreeMap<(Monomial, Monomial, Monomial), Scalar>;

fn add_triple(t: &mut Triple, k: (Monomial, Monomial, Monomial), c: Scalar) {
    let e = t.entry(k).or_insert_with(Scalar::zero);
    *e = &*e + &c;
}

/// `(Δ ⊗ id)Δ` and `(id ⊗ Δ)Δ` on one monomial.
fn coassociators(m: Monomial) -> (Triple, Triple) {
    let (mut left, mut right) = (Triple::new(), Triple::new());
    for ((x, y), c) in coproduct_monomial(m).terms() {
        for ((x1, x2), c2) in coproduct_monomial(*x).terms() {
            add_triple(&mut left, (*x1, *x2, *y), c * c2);
        }
        for ((y1, y2), c2) in coproduct_monomial(*y).terms() {
            add_triple(&mut right, (*x, *y1, *y2), c * c2);
        }
    }
    (left, right)
}

fn first_failure<T>(items: impl IntoIterator<Item = T>, bad: impl Fn(&T) -> Option<String>) -> Option<String> {
    items.into_iter().find_map(|x| bad(&x))
}

pub(crate) fn run(opts: &Options) -> Vec<CheckResult> {
    let zero = Zero(&opts.mode);
    let len = opts.max_level as u32;
    let monomials = pbw_monomials(len);
    let pairs: Vec<(Monomial, Monomial)> = monomials
        .iter()
        .flat_map(|x| monomials.iter().filter(move |y| x.len() + y.len() <= len).map(move |y| (*x, *y)))
        .collect();
    let el = |m: &Monomial| AlgebraElement::monomial(*m);
    let mut out = Vec::new();
    let mut push = |name: &str, fail: Option<String>| out.push(CheckResult::new(name, None, None, fail));

    // Three rewriting strategies against the closed-form product.
    let confluence = first_failure((0..=len).flat_map(words), |w| {
        let closed = w.iter().fold(AlgebraElement::one(), |acc, g| &acc * &AlgebraElement::gen(*g));
        let word: String = w.iter().map(|g| g.symbol()).collect();
        let strategies: [&dyn Fn(usize) -> usize; 3] = [&|_| 0, &|k| k - 1, &|k| k / 2];
        strategies
            .iter()
            .any(|pick| !zero.element(&(&normalize_with(w, Scalar::one(), pick) - &closed)))
            .then(|| format!("word {word}"))
    });
    push("confluence", confluence);

    let associative = first_failure(pairs.iter().flat_map(|(x, y)| monomials.iter().map(move |z| (*x, *y, *z))), |(x, y, z)| {
        if x.len() + y.len() + z.len() > len {
            return None;
        }
        let l = &mul_monomials(*x, *y) * &el(z);
        let r = &el(x) * &mul_monomials(*y, *z);
        (!zero.element(&(&l - &r))).then(|| format!("({})({})({})", x.render(), y.render(), z.render()))
    });
    push("associativity", associative);

    let multiplicative = first_failure(&pairs, |(x, y)| {
        let lhs = coproduct(&mul_monomials(*x, *y));
        let rhs = coproduct_monomial(*x).mul(&coproduct_monomial(*y));
        (!zero.tensor(&diff_tensor(&lhs, &rhs))).then(|| format!("x = {}, y = {}", x.render(), y.render()))
    });
    push("coproduct-multiplicative", multiplicative);

    let coassoc = first_failure(&monomials, |m| {
        let (l, r) = coassociators(**m);
        let keys: Vec<_> = l.keys().chain(r.keys()).collect();
        let bad = keys.into_iter().any(|k| {
            let z = Scalar::zero();
            !zero.scalar(&(l.get(k).unwrap_or(&z) - r.get(k).unwrap_or(&z)))
        });
        bad.then(|| m.render())
    });
    push("coassociativity", coassoc);

    let counit = first_failure(&monomials, |m| {
        let t = coproduct_monomial(**m);
        let a = t.contract_left(|x| x.counit());
        let b = t.contract_right(|y| y.counit());
        (!zero.element(&(&a - &el(m))) || !zero.element(&(&b - &el(m)))).then(|| m.render())
    });
    push("counit", counit);

    let antipode_ok = first_failure(&monomials, |m| {
        let t = coproduct_monomial(**m);
        let unit = AlgebraElement::scalar(m.counit());
        let left = t.map_legs(|x| antipode(&el(x)), |y| el(y)).multiply();
        let right = t.map_legs(|x| el(x), |y| antipode(&el(y))).multiply();
        (!zero.element(&(&left - &unit)) || !zero.element(&(&right - &unit))).then(|| m.render())
    });
    push("antipode", antipode_ok);

    let star_ok = first_failure(&pairs, |(x, y)| {
        let (sx, sy) = (star(&el(x)), star(&el(y)));
        let involutive = zero.element(&(&star(&sx) - &el(x)));
        let anti = zero.element(&(&star(&mul_monomials(*x, *y)) - &(&sy * &sx)));
        let delta = coproduct(&sx);
        let starred = coproduct_monomial(*x).map_legs(|l| star(&el(l)), |r| star(&el(r)));
        let coalgebra = zero.tensor(&diff_tensor(&delta, &starred));
        (!(involutive && anti && coalgebra)).then(|| format!("x = {}, y = {}", x.render(), y.render()))
    });
    push("star-structure", star_ok);

    let invariant = first_failure(&monomials, |m| {
        let t = coproduct_monomial(**m);
        let h = AlgebraElement::scalar(haar_monomial(m));
        let left = t.contract_left(haar_monomial);
        let right = t.contract_right(haar_monomial);
        (!zero.element(&(&left - &h)) || !zero.element(&(&right - &h))).then(|| m.render())
    });
    push("haar-invariance", invariant);

    let normalized = zero.scalar(&(&haar(&AlgebraElement::one()) - &Scalar::one()));
    push("haar-normalized", (!normalized).then(|| "h(1) != 1".to_string()));
    out
}
