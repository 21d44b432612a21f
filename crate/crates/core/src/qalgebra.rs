//! The Hopf ∗-algebra `C_q[SU_2]`.
//!
//! Elements are stored in the PBW basis `{a^i b^j c^k} ∪ {b^j c^k d^l, l ≥ 1}`,
//! i.e. ordered monomials `a^i b^j c^k d^l` with `i·l = 0`. The defining
//! relations used for rewriting are
//!
//! ```text
//! ab = q ba   ac = q ca   bd = q db   cd = q dc   bc = cb
//! ad - da = (q - q⁻¹) bc  ad - q bc = 1
//! ```
//!
//! Products, coproducts of basis monomials and Haar values are memoized in
//! process-wide read-mostly caches.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{LazyLock, RwLock};

use serde::Serialize;

use crate::scalar::Scalar;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize)]
pub enum Gen {
    A,
    B,
    C,
    D,
}

impl Gen {
    pub const ALL: [Gen; 4] = [Gen::A, Gen::B, Gen::C, Gen::D];

    pub fn symbol(self) -> char {
        match self {
            Gen::A => 'a',
            Gen::B => 'b',
            Gen::C => 'c',
            Gen::D => 'd',
        }
    }

    /// Right weight (the `Z`-grading induced by `Δ_π`).
    pub fn degree(self) -> i32 {
        match self {
            Gen::A | Gen::C => -1,
            Gen::B | Gen::D => 1,
        }
    }

    /// Left weight (grading induced by `(π ⊗ id)Δ`).
    pub fn left_degree(self) -> i32 {
        match self {
            Gen::A | Gen::B => -1,
            Gen::C | Gen::D => 1,
        }
    }

    pub fn counit(self) -> Scalar {
        match self {
            Gen::A | Gen::D => Scalar::one(),
            Gen::B | Gen::C => Scalar::zero(),
        }
    }
}

/// PBW monomial `a^a b^b c^c d^d`; at most one of `a`, `d` is nonzero.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize)]
pub struct Monomial {
    pub a: u32,
    pub b: u32,
    pub c: u32,
    pub d: u32,
}

/// Which half of the PBW basis a monomial belongs to.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Family {
    /// `a^i b^j c^k`
    A,
    /// `b^j c^k d^l` with `l ≥ 1`
    D,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { a: 0, b: 0, c: 0, d: 0 };

    pub fn new(a: u32, b: u32, c: u32, d: u32) -> Option<Monomial> {
        (a == 0 || d == 0).then_some(Monomial { a, b, c, d })
    }

    pub fn gen(g: Gen) -> Monomial {
        let mut m = Monomial::ONE;
        match g {
            Gen::A => m.a = 1,
            Gen::B => m.b = 1,
            Gen::C => m.c = 1,
            Gen::D => m.d = 1,
        }
        m
    }

    pub fn family(&self) -> Family {
        if self.d > 0 {
            Family::D
        } else {
            Family::A
        }
    }

    pub fn len(&self) -> u32 {
        self.a + self.b + self.c + self.d
    }

    pub fn is_one(&self) -> bool {
        *self == Monomial::ONE
    }

    pub fn degree(&self) -> i32 {
        -(self.a as i32) + self.b as i32 - self.c as i32 + self.d as i32
    }

    pub fn left_degree(&self) -> i32 {
        -(self.a as i32) - self.b as i32 + self.c as i32 + self.d as i32
    }

    pub fn word(&self) -> Vec<Gen> {
        let mut w = Vec::with_capacity(self.len() as usize);
        w.extend(std::iter::repeat_n(Gen::A, self.a as usize));
        w.extend(std::iter::repeat_n(Gen::B, self.b as usize));
        w.extend(std::iter::repeat_n(Gen::C, self.c as usize));
        w.extend(std::iter::repeat_n(Gen::D, self.d as usize));
        w
    }

    pub fn counit(&self) -> Scalar {
        if self.b == 0 && self.c == 0 {
            Scalar::one()
        } else {
            Scalar::zero()
        }
    }

    pub fn render(&self) -> String {
        if self.is_one() {
            return "1".into();
        }
        let mut parts = Vec::new();
        for (sym, e) in [("a", self.a), ("b", self.b), ("c", self.c), ("d", self.d)] {
            match e {
                0 => {}
                1 => parts.push(sym.to_string()),
                _ => parts.push(format!("{sym}^{e}")),
            }
        }
        parts.join("*")
    }
}

/// All PBW monomials of length at most `max_len`.
pub fn pbw_monomials(max_len: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    for len in 0..=max_len {
        out.extend(pbw_monomials_of_length(len));
    }
    out
}

/// The `(len+1)²` PBW monomials of length exactly `len`.
pub fn pbw_monomials_of_length(len: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    for a in 0..=len {
        for b in 0..=len - a {
            out.push(Monomial { a, b, c: len - a - b, d: 0 });
        }
    }
    for d in 1..=len {
        for b in 0..=len - d {
            out.push(Monomial { a: 0, b, c: len - d - b, d });
        }
    }
    out
}

/// Finite `Scalar`-linear combination of PBW monomials.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct AlgebraElement {
    terms: BTreeMap<Monomial, Scalar>,
}

impl AlgebraElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(Monomial::ONE)
    }

    pub fn scalar(c: Scalar) -> Self {
        Self::term(Monomial::ONE, c)
    }

    pub fn gen(g: Gen) -> Self {
        Self::monomial(Monomial::gen(g))
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::term(m, Scalar::one())
    }

    pub fn term(m: Monomial, c: Scalar) -> Self {
        let mut x = Self::zero();
        x.add_term(m, c);
        x
    }

    /// `b_- = ab`
    pub fn b_minus() -> Self {
        Self::monomial(Monomial { a: 1, b: 1, c: 0, d: 0 })
    }

    /// `b_0 = bc`
    pub fn b_zero() -> Self {
        Self::monomial(Monomial { a: 0, b: 1, c: 1, d: 0 })
    }

    /// `b_+ = cd`
    pub fn b_plus() -> Self {
        Self::monomial(Monomial { a: 0, b: 0, c: 1, d: 1 })
    }

    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let v = e.get() + &c;
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &AlgebraElement, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (m, v) in &other.terms {
            self.add_term(*m, v * c);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn scale(&self, c: &Scalar) -> AlgebraElement {
        if c.is_zero() {
            return Self::zero();
        }
        AlgebraElement { terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect() }
    }

    /// Applies a linear map defined on basis monomials.
    pub fn map_linear(&self, f: impl Fn(&Monomial) -> AlgebraElement) -> AlgebraElement {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            out.add_scaled(&f(m), c);
        }
        out
    }

    /// Applies a linear functional defined on basis monomials.
    pub fn eval_linear(&self, f: impl Fn(&Monomial) -> Scalar) -> Scalar {
        self.terms.iter().map(|(m, c)| c * &f(m)).sum()
    }

    pub fn map_scalars(&self, f: impl Fn(&Scalar) -> Scalar) -> AlgebraElement {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            out.add_term(*m, f(c));
        }
        out
    }

    pub fn max_len(&self) -> u32 {
        self.terms.keys().map(|m| m.len()).max().unwrap_or(0)
    }

    /// Homogeneous components by right weight.
    pub fn degree_split(&self) -> BTreeMap<i32, AlgebraElement> {
        let mut out: BTreeMap<i32, AlgebraElement> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.degree()).or_default().add_term(*m, c.clone());
        }
        out
    }

    /// `Some(k)` if the element lies in a single graded component `E_k`.
    pub fn homogeneous_degree(&self) -> Option<i32> {
        let mut it = self.terms.keys().map(|m| m.degree());
        let first = it.next()?;
        it.all(|k| k == first).then_some(first)
    }

    /// Membership in the Podleś sphere `C_q[S²] = E_0`.
    pub fn is_podles(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    pub fn counit(&self) -> Scalar {
        self.eval_linear(|m| m.counit())
    }

    pub fn pow(&self, k: u32) -> AlgebraElement {
        let mut acc = AlgebraElement::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let t = render_term(c, &m.render(), m.is_one());
            push_term(&mut out, &t, idx == 0);
        }
        out
    }
}

/// Renders `c * body`, omitting unit coefficients.
pub(crate) fn render_term(c: &Scalar, body: &str, body_is_one: bool) -> String {
    if body_is_one {
        let s = c.render();
        return if c.is_compound() { format!("({s})") } else { s };
    }
    if c.is_one() {
        return body.to_string();
    }
    if (-c).is_one() {
        return format!("-{body}");
    }
    if c.is_compound() {
        format!("({})*{body}", c.render())
    } else {
        format!("{}*{body}", c.render())
    }
}

pub(crate) fn push_term(out: &mut String, t: &str, first: bool) {
    if first {
        out.push_str(t);
    } else if let Some(rest) = t.strip_prefix('-') {
        out.push('-');
        out.push_str(rest);
    } else {
        out.push('+');
        out.push_str(t);
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AlgebraElement({})", self.render())
    }
}

impl From<Scalar> for AlgebraElement {
    fn from(c: Scalar) -> Self {
        AlgebraElement::scalar(c)
    }
}

impl Add for &AlgebraElement {
    type Output = AlgebraElement;
    fn add(self, rhs: &AlgebraElement) -> AlgebraElement {
        let mut out = self.clone();
        out.add_scaled(rhs, &Scalar::one());
        out
    }
}

impl Sub for &AlgebraElement {
    type Output = AlgebraElement;
    fn sub(self, rhs: &AlgebraElement) -> AlgebraElement {
        let mut out = self.clone();
        out.add_scaled(rhs, &Scalar::from_int(-1));
        out
    }
}

impl Neg for &AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        self.scale(&Scalar::from_int(-1))
    }
}

impl Mul for &AlgebraElement {
    type Output = AlgebraElement;
    fn mul(self, rhs: &AlgebraElement) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_scaled(&mul_monomials(*m1, *m2), &(c1 * c2));
            }
        }
        out
    }
}

macro_rules! forward_alg {
    ($tr:ident, $m:ident) => {
        impl $tr for AlgebraElement {
            type Output = AlgebraElement;
            fn $m(self, rhs: AlgebraElement) -> AlgebraElement {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_alg!(Add, add);
forward_alg!(Sub, sub);
forward_alg!(Mul, mul);

/// `m · g` in closed form.
fn mul_gen(m: Monomial, g: Gen) -> Vec<(Monomial, Scalar)> {
    let Monomial { a, b, c, d } = m;
    match g {
        Gen::D if a == 0 => vec![(Monomial { a: 0, b, c, d: d + 1 }, Scalar::one())],
        Gen::D => {
            // a^i b^j c^k d = q^{j+k} a^{i-1} (ad) b^j c^k, ad = 1 + q bc
            let e = (b + c) as i64;
            vec![
                (Monomial { a: a - 1, b, c, d: 0 }, Scalar::q_pow(e)),
                (Monomial { a: a - 1, b: b + 1, c: c + 1, d: 0 }, Scalar::q_pow(e + 1)),
            ]
        }
        Gen::C => vec![(Monomial { a, b, c: c + 1, d }, Scalar::q_pow(-(d as i64)))],
        Gen::B => vec![(Monomial { a, b: b + 1, c, d }, Scalar::q_pow(-(d as i64)))],
        Gen::A if d == 0 => vec![(Monomial { a: a + 1, b, c, d: 0 }, Scalar::q_pow(-((b + c) as i64)))],
        Gen::A => {
            // d^l a = d^{l-1}(1 + q⁻¹ bc) and d^{l-1} bc = q^{-2(l-1)} bc d^{l-1}
            let l = d as i64;
            vec![
                (Monomial { a: 0, b, c, d: d - 1 }, Scalar::one()),
                (Monomial { a: 0, b: b + 1, c: c + 1, d: d - 1 }, Scalar::q_pow(1 - 2 * l)),
            ]
        }
    }
}

static MUL_CACHE: LazyLock<RwLock<HashMap<(Monomial, Monomial), AlgebraElement>>> =
    LazyLock::new(|| RwLock::new(HashMap::new()));

/// Product of two PBW monomials in normal form.
pub fn mul_monomials(m1: Monomial, m2: Monomial) -> AlgebraElement {
    if m2.is_one() {
        return AlgebraElement::monomial(m1);
    }
    if m1.is_one() {
        return AlgebraElement::monomial(m2);
    }
    if let Some(v) = MUL_CACHE.read().unwrap().get(&(m1, m2)) {
        return v.clone();
    }
    let mut cur: BTreeMap<Monomial, Scalar> = BTreeMap::from([(m1, Scalar::one())]);
    for g in m2.word() {
        let mut next = AlgebraElement::zero();
        for (m, c) in &cur {
            for (mm, cc) in mul_gen(*m, g) {
                next.add_term(mm, c * &cc);
            }
        }
        cur = next.terms;
    }
    let out = AlgebraElement { terms: cur };
    MUL_CACHE.write().unwrap().insert((m1, m2), out.clone());
    out
}

/// Rewrites `prefactor · g_1 g_2 ⋯ g_n` into the PBW basis by repeatedly
/// applying the defining relations to adjacent letters.
///
/// This is a plain string-rewriting engine independent of the closed-form
/// product used by `*`. Words are sorted in the letter order `b < c < a < d`,
/// whose irreducible words `b^j c^k a^i` and `b^j c^k d^l` are then moved to the
/// PBW form. `pick` chooses which reducible position to rewrite next.
pub fn normalize_with(word: &[Gen], prefactor: Scalar, mut pick: impl FnMut(usize) -> usize) -> AlgebraElement {
    let mut pending: Vec<(Vec<Gen>, Scalar)> = vec![(word.to_vec(), prefactor)];
    let mut out = AlgebraElement::zero();
    while let Some((w, c)) = pending.pop() {
        if c.is_zero() {
            continue;
        }
        let reducible: Vec<usize> = (0..w.len().saturating_sub(1))
            .filter(|&p| rewrite_pair(w[p], w[p + 1]).is_some())
            .collect();
        if reducible.is_empty() {
            let mut m = Monomial::ONE;
            for g in &w {
                match g {
                    Gen::A => m.a += 1,
                    Gen::B => m.b += 1,
                    Gen::C => m.c += 1,
                    Gen::D => m.d += 1,
                }
            }
            // b^j c^k a^i = q^{-i(j+k)} a^i b^j c^k
            let f = Scalar::q_pow(-((m.a * (m.b + m.c)) as i64));
            out.add_term(m, &c * &f);
            continue;
        }
        let p = reducible[pick(reducible.len()) % reducible.len()];
        for (replacement, f) in rewrite_pair(w[p], w[p + 1]).unwrap() {
            let mut nw = w[..p].to_vec();
            nw.extend(replacement);
            nw.extend_from_slice(&w[p + 2..]);
            pending.push((nw, &c * &f));
        }
    }
    out
}

/// Leftmost-first normalization of a generator word.
pub fn normalize(word: &[Gen], prefactor: Scalar) -> AlgebraElement {
    normalize_with(word, prefactor, |_| 0)
}

/// Rewrite rule for an adjacent pair, or `None` if the pair is irreducible.
fn rewrite_pair(x: Gen, y: Gen) -> Option<Vec<(Vec<Gen>, Scalar)>> {
    use Gen::*;
    let qi = Scalar::q_pow(-1);
    Some(match (x, y) {
        (A, B) => vec![(vec![B, A], Scalar::q())],
        (A, C) => vec![(vec![C, A], Scalar::q())],
        (C, B) => vec![(vec![B, C], Scalar::one())],
        (D, B) => vec![(vec![B, D], qi)],
        (D, C) => vec![(vec![C, D], qi)],
        (D, A) => vec![(vec![], Scalar::one()), (vec![B, C], qi)],
        (A, D) => vec![(vec![], Scalar::one()), (vec![B, C], Scalar::q())],
        _ => return None,
    })
}

/// Finite combination of `Monomial ⊗ Monomial`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct TensorElement {
    terms: BTreeMap<(Monomial, Monomial), Scalar>,
}

impl TensorElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn pure(x: &AlgebraElement, y: &AlgebraElement) -> Self {
        let mut t = Self::zero();
        for (m1, c1) in x.terms() {
            for (m2, c2) in y.terms() {
                t.add_term((*m1, *m2), c1 * c2);
            }
        }
        t
    }

    pub fn add_term(&mut self, k: (Monomial, Monomial), c: Scalar) {
        if c.is_zero() {
            return;
        }
        let v = self.terms.get(&k).map(|v| v + &c).unwrap_or(c);
        if v.is_zero() {
            self.terms.remove(&k);
        } else {
            self.terms.insert(k, v);
        }
    }

    pub fn add_scaled(&mut self, other: &TensorElement, c: &Scalar) {
        for (k, v) in &other.terms {
            self.add_term(*k, v * c);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Monomial, Monomial), &Scalar)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn mul(&self, other: &TensorElement) -> TensorElement {
        let mut out = TensorElement::zero();
        for ((x1, y1), c1) in &self.terms {
            for ((x2, y2), c2) in &other.terms {
                let left = mul_monomials(*x1, *x2);
                let right = mul_monomials(*y1, *y2);
                let c = c1 * c2;
                for (l, cl) in left.terms() {
                    let clc = &c * cl;
                    for (r, cr) in right.terms() {
                        out.add_term((*l, *r), &clc * cr);
                    }
                }
            }
        }
        out
    }

    /// `(f ⊗ g)` applied leg-wise.
    pub fn map_legs(
        &self,
        f: impl Fn(&Monomial) -> AlgebraElement,
        g: impl Fn(&Monomial) -> AlgebraElement,
    ) -> TensorElement {
        let mut out = TensorElement::zero();
        for ((x, y), c) in &self.terms {
            let fx = f(x);
            let gy = g(y);
            for (l, cl) in fx.terms() {
                for (r, cr) in gy.terms() {
                    out.add_term((*l, *r), &(c * cl) * cr);
                }
            }
        }
        out
    }

    /// The multiplication map `x ⊗ y ↦ xy`.
    pub fn multiply(&self) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for ((x, y), c) in &self.terms {
            out.add_scaled(&mul_monomials(*x, *y), c);
        }
        out
    }

    /// `(id ⊗ φ)`, contracting the right leg with a functional.
    pub fn contract_right(&self, phi: impl Fn(&Monomial) -> Scalar) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        let mut memo: HashMap<Monomial, Scalar> = HashMap::new();
        for ((x, y), c) in &self.terms {
            let v = memo.entry(*y).or_insert_with(|| phi(y));
            out.add_term(*x, c * v);
        }
        out
    }

    /// `(φ ⊗ id)`, contracting the left leg with a functional.
    pub fn contract_left(&self, phi: impl Fn(&Monomial) -> Scalar) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        let mut memo: HashMap<Monomial, Scalar> = HashMap::new();
        for ((x, y), c) in &self.terms {
            let v = memo.entry(*x).or_insert_with(|| phi(x));
            out.add_term(*y, c * v);
        }
        out
    }
}

impl fmt::Debug for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((x, y), c)| format!("({})*{}⊗{}", c.render(), x.render(), y.render()))
            .collect();
        write!(f, "TensorElement({})", parts.join(" + "))
    }
}

fn coproduct_gen(g: Gen) -> TensorElement {
    use Gen::*;
    let pairs = match g {
        A => [(A, A), (B, C)],
        B => [(A, B), (B, D)],
        C => [(C, A), (D, C)],
        D => [(C, B), (D, D)],
    };
    let mut t = TensorElement::zero();
    for (x, y) in pairs {
        t.add_term((Monomial::gen(x), Monomial::gen(y)), Scalar::one());
    }
    t
}

static COPRODUCT_CACHE: LazyLock<RwLock<HashMap<Monomial, TensorElement>>> =
    LazyLock::new(|| RwLock::new(HashMap::new()));

pub fn coproduct_monomial(m: Monomial) -> TensorElement {
    if let Some(t) = COPRODUCT_CACHE.read().unwrap().get(&m) {
        return t.clone();
    }
    let mut t = TensorElement::zero();
    t.add_term((Monomial::ONE, Monomial::ONE), Scalar::one());
    for g in m.word() {
        t = t.mul(&coproduct_gen(g));
    }
    COPRODUCT_CACHE.write().unwrap().insert(m, t.clone());
    t
}

pub fn coproduct(x: &AlgebraElement) -> TensorElement {
    let mut out = TensorElement::zero();
    for (m, c) in x.terms() {
        out.add_scaled(&coproduct_monomial(*m), c);
    }
    out
}

pub fn counit(x: &AlgebraElement) -> Scalar {
    x.counit()
}

/// Values of the antipode and the ∗-structure on `b` and `c`.
///
/// `S(a) = d`, `S(d) = a`, `∗a = d`, `∗d = a` are fixed; `S(b) = antipode_b·b`,
/// `S(c) = antipode_c·c`, `∗b = star_b·c`, `∗c = star_c·b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HopfConstants {
    pub antipode_b: Scalar,
    pub antipode_c: Scalar,
    pub star_b: Scalar,
    pub star_c: Scalar,
}

impl Default for HopfConstants {
    fn default() -> Self {
        HopfConstants {
            antipode_b: -Scalar::q_pow(-1),
            antipode_c: -Scalar::q(),
            star_b: -Scalar::q(),
            star_c: -Scalar::q_pow(-1),
        }
    }
}

impl HopfConstants {
    fn antipode_gen(&self, g: Gen) -> AlgebraElement {
        match g {
            Gen::A => AlgebraElement::gen(Gen::D),
            Gen::D => AlgebraElement::gen(Gen::A),
            Gen::B => AlgebraElement::term(Monomial::gen(Gen::B), self.antipode_b.clone()),
            Gen::C => AlgebraElement::term(Monomial::gen(Gen::C), self.antipode_c.clone()),
        }
    }

    fn star_gen(&self, g: Gen) -> AlgebraElement {
        match g {
            Gen::A => AlgebraElement::gen(Gen::D),
            Gen::D => AlgebraElement::gen(Gen::A),
            Gen::B => AlgebraElement::term(Monomial::gen(Gen::C), self.star_b.clone()),
            Gen::C => AlgebraElement::term(Monomial::gen(Gen::B), self.star_c.clone()),
        }
    }

    /// Anti-homomorphic extension of the antipode.
    pub fn antipode_monomial(&self, m: &Monomial) -> AlgebraElement {
        let mut acc = AlgebraElement::one();
        for g in m.word().into_iter().rev() {
            acc = &acc * &self.antipode_gen(g);
        }
        acc
    }

    pub fn antipode(&self, x: &AlgebraElement) -> AlgebraElement {
        x.map_linear(|m| self.antipode_monomial(m))
    }

    /// Conjugate-linear anti-homomorphic extension of `∗`.
    pub fn star_monomial(&self, m: &Monomial) -> AlgebraElement {
        let mut acc = AlgebraElement::one();
        for g in m.word().into_iter().rev() {
            acc = &acc * &self.star_gen(g);
        }
        acc
    }

    pub fn star(&self, x: &AlgebraElement) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for (m, c) in x.terms() {
            out.add_scaled(&self.star_monomial(m), &c.conj());
        }
        out
    }
}

static STAR_CACHE: LazyLock<RwLock<HashMap<Monomial, AlgebraElement>>> =
    LazyLock::new(|| RwLock::new(HashMap::new()));

pub fn antipode(x: &AlgebraElement) -> AlgebraElement {
    HopfConstants::default().antipode(x)
}

pub fn star_monomial(m: &Monomial) -> AlgebraElement {
    if let Some(v) = STAR_CACHE.read().unwrap().get(m) {
        return v.clone();
    }
    let v = HopfConstants::default().star_monomial(m);
    STAR_CACHE.write().unwrap().insert(*m, v.clone());
    v
}

pub fn star(x: &AlgebraElement) -> AlgebraElement {
    let mut out = AlgebraElement::zero();
    for (m, c) in x.terms() {
        out.add_scaled(&star_monomial(m), &c.conj());
    }
    out
}

pub fn degree_split(x: &AlgebraElement) -> BTreeMap<i32, AlgebraElement> {
    x.degree_split()
}

pub fn podles_check(x: &AlgebraElement) -> bool {
    x.is_podles()
}

/// Haar state on a PBW monomial.
///
/// Only `(bc)^k` survives: `h((bc)^k) = (-q)^k (1 - q²)/(1 - q^{2k+2})`.
pub fn haar_monomial(m: &Monomial) -> Scalar {
    if m.a != 0 || m.d != 0 || m.b != m.c {
        return Scalar::zero();
    }
    let k = m.b as i64;
    let one = Scalar::one();
    let num = &one - &Scalar::q_pow(2);
    let den = &one - &Scalar::q_pow(2 * k + 2);
    let sign = if k % 2 == 0 { one.clone() } else { -one.clone() };
    &(&sign * &Scalar::q_pow(k)) * &(&num / &den)
}

pub fn haar(x: &AlgebraElement) -> Scalar {
    x.eval_linear(haar_monomial)
}
