use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use podles::qalgebra::{
    coproduct, coproduct_monomial, haar, haar_monomial, mul_monomials, normalize, normalize_with, pbw_monomials,
    star, HopfConstants, TensorElement,
};
use podles::{AlgebraElement, Gen, Monomial, Scalar};
use proptest::prelude::*;

fn word_product(w: &[Gen]) -> AlgebraElement {
    w.iter().fold(AlgebraElement::one(), |acc, g| &acc * &AlgebraElement::gen(*g))
}

fn gen_of(i: usize) -> Gen {
    Gen::ALL[i % 4]
}

fn words() -> impl Strategy<Value = Vec<Gen>> {
    prop::collection::vec((0usize..4).prop_map(gen_of), 0..=8)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    // Rewriting in any order agrees with the closed-form product.
    #[test]
    fn rewriting_is_confluent(w in words(), picks in prop::collection::vec(0usize..16, 64)) {
        let mut it = picks.into_iter().cycle();
        let random = normalize_with(&w, Scalar::one(), |n| it.next().unwrap() % n);
        prop_assert_eq!(&random, &normalize(&w, Scalar::one()));
        prop_assert_eq!(random, word_product(&w));
    }

    #[test]
    fn product_is_associative(u in words(), v in words(), w in words()) {
        let (u, v, w) = (word_product(&u[..u.len().min(3)]), word_product(&v[..v.len().min(3)]), word_product(&w[..w.len().min(3)]));
        prop_assert_eq!(&u * &(&v * &w), &(&u * &v) * &w);
    }

    #[test]
    fn star_is_an_involutive_antihomomorphism(u in words(), v in words()) {
        let (u, v) = (word_product(&u[..u.len().min(3)]), word_product(&v[..v.len().min(3)]));
        prop_assert_eq!(star(&star(&u)), u.clone());
        prop_assert_eq!(star(&(&u * &v)), &star(&v) * &star(&u));
    }
}

#[test]
fn coproduct_is_multiplicative_up_to_length_four() {
    let small = pbw_monomials(2);
    for m1 in &small {
        for m2 in &small {
            let lhs = coproduct(&mul_monomials(*m1, *m2));
            let rhs = coproduct_monomial(*m1).mul(&coproduct_monomial(*m2));
            assert_eq!(lhs, rhs, "{} * {}", m1.render(), m2.render());
        }
    }
}

fn tensor3(x: &TensorElement, left: bool) -> Vec<((Monomial, Monomial, Monomial), Scalar)> {
    let mut acc: std::collections::BTreeMap<(Monomial, Monomial, Monomial), Scalar> = Default::default();
    for ((l, r), c) in x.terms() {
        let split = if left { coproduct_monomial(*l) } else { coproduct_monomial(*r) };
        for ((u, v), c2) in split.terms() {
            let key = if left { (*u, *v, *r) } else { (*l, *u, *v) };
            let e = acc.entry(key).or_insert_with(Scalar::zero);
            *e = &*e + &(c * c2);
        }
    }
    acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

#[test]
fn coassociativity() {
    for m in pbw_monomials(3) {
        let t = coproduct_monomial(m);
        assert_eq!(tensor3(&t, true), tensor3(&t, false), "{}", m.render());
    }
}

#[test]
fn counit_axioms() {
    for m in pbw_monomials(3) {
        let t = coproduct_monomial(m);
        let x = AlgebraElement::monomial(m);
        assert_eq!(t.contract_left(|u| u.counit()), x);
        assert_eq!(t.contract_right(|u| u.counit()), x);
    }
}

fn antipode_axiom_holds(hc: &HopfConstants, max_len: u32) -> bool {
    pbw_monomials(max_len).into_iter().all(|m| {
        let t = coproduct_monomial(m);
        let unit = AlgebraElement::scalar(m.counit());
        let l = t.map_legs(|u| hc.antipode_monomial(u), |v| AlgebraElement::monomial(*v)).multiply();
        let r = t.map_legs(|u| AlgebraElement::monomial(*u), |v| hc.antipode_monomial(v)).multiply();
        l == unit && r == unit
    })
}

fn candidates() -> Vec<Scalar> {
    let mut out = Vec::new();
    for m in -2..=2 {
        out.push(Scalar::q_pow(m));
        out.push(-Scalar::q_pow(m));
    }
    out
}

#[test]
fn antipode_is_the_unique_candidate() {
    let mut hits = Vec::new();
    for ab in candidates() {
        for ac in candidates() {
            let hc = HopfConstants { antipode_b: ab.clone(), antipode_c: ac.clone(), ..HopfConstants::default() };
            if antipode_axiom_holds(&hc, 2) {
                hits.push(hc);
            }
        }
    }
    assert_eq!(hits, vec![HopfConstants::default()]);
    assert!(antipode_axiom_holds(&HopfConstants::default(), 3));
}

fn star_is_compatible(hc: &HopfConstants) -> bool {
    let s = |x: &AlgebraElement| hc.star(x);
    // the fundamental corepresentation is unitary: S(u_ij) = u_ji^*
    let (b, c) = (AlgebraElement::gen(Gen::B), AlgebraElement::gen(Gen::C));
    if s(&c) != hc.antipode(&b) || s(&b) != hc.antipode(&c) {
        return false;
    }
    for m in pbw_monomials(2) {
        let x = AlgebraElement::monomial(m);
        if s(&s(&x)) != x {
            return false;
        }
        // Δ ∘ ∗ = (∗ ⊗ ∗) ∘ Δ
        let lhs = coproduct(&s(&x));
        let rhs = coproduct_monomial(m).map_legs(|u| hc.star_monomial(u), |v| hc.star_monomial(v));
        if lhs != rhs {
            return false;
        }
        for m2 in pbw_monomials(2) {
            let y = AlgebraElement::monomial(m2);
            if s(&(&x * &y)) != &s(&y) * &s(&x) {
                return false;
            }
        }
    }
    // positivity of h(x* x) on generators at a sample point
    let s0 = BigRational::new(7.into(), 10.into());
    Gen::ALL.iter().all(|g| {
        let x = AlgebraElement::gen(*g);
        let v = haar(&(&s(&x) * &x)).specialize(&s0).unwrap();
        v.im.is_zero() && v.re.is_positive()
    })
}

#[test]
fn star_structure_is_the_unique_candidate() {
    let mut hits = Vec::new();
    for sb in candidates() {
        for sc in candidates() {
            let hc = HopfConstants { star_b: sb.clone(), star_c: sc.clone(), ..HopfConstants::default() };
            if star_is_compatible(&hc) {
                hits.push(hc);
            }
        }
    }
    assert_eq!(hits, vec![HopfConstants::default()]);
}

/// Gauss–Jordan over `Scalar`, returning the unique solution when it exists.
fn solve(mut rows: Vec<Vec<Scalar>>, n: usize) -> Option<Vec<Scalar>> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..n {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = Scalar::one() / rows[r][col].clone();
        rows[r] = rows[r].iter().map(|x| x * &inv).collect();
        for i in 0..rows.len() {
            if i != r && !rows[i][col].is_zero() {
                let f = rows[i][col].clone();
                rows[i] = rows[i].iter().zip(&rows[r]).map(|(a, b)| a - &(&f * b)).collect();
            }
        }
        pivots.push(col);
        r += 1;
    }
    if pivots.len() < n || rows[r..].iter().any(|row| !row[n].is_zero()) {
        return None;
    }
    Some((0..n).map(|i| rows[i][n].clone()).collect())
}

// Invariance (id⊗h)Δx = h(x)1 and (h⊗id)Δx = h(x)1 with h(1) = 1 pins h on
// short monomials; compare with the closed form.
#[test]
fn haar_matches_invariance_oracle() {
    let basis = pbw_monomials(2);
    let n = basis.len();
    let idx = |m: &Monomial| basis.iter().position(|b| b == m).unwrap();
    let mut rows = Vec::new();
    let mut unit = vec![Scalar::zero(); n + 1];
    unit[idx(&Monomial::ONE)] = Scalar::one();
    unit[n] = Scalar::one();
    rows.push(unit);
    for x in &basis {
        let t = coproduct_monomial(*x);
        for right in [true, false] {
            // coefficient of each output monomial y: Σ c·h(leg) - [y = 1]·h(x)
            let mut eqs: std::collections::BTreeMap<Monomial, Vec<Scalar>> = Default::default();
            for ((l, r), c) in t.terms() {
                let (out, leg) = if right { (l, r) } else { (r, l) };
                let row = eqs.entry(*out).or_insert_with(|| vec![Scalar::zero(); n + 1]);
                row[idx(leg)] = &row[idx(leg)] + c;
            }
            let row = eqs.entry(Monomial::ONE).or_insert_with(|| vec![Scalar::zero(); n + 1]);
            row[idx(x)] = &row[idx(x)] - &Scalar::one();
            rows.extend(eqs.into_values());
        }
    }
    let sol = solve(rows, n).expect("invariance determines h");
    for (m, v) in basis.iter().zip(sol) {
        assert_eq!(haar_monomial(m), v, "{}", m.render());
    }
}

fn det(mut m: Vec<Vec<num_complex::Complex<BigRational>>>) -> num_complex::Complex<BigRational> {
    let n = m.len();
    let mut acc = num_complex::Complex::new(BigRational::one(), BigRational::zero());
    for col in 0..n {
        let Some(p) = (col..n).find(|&i| !m[i][col].is_zero()) else {
            return num_complex::Complex::new(BigRational::zero(), BigRational::zero());
        };
        if p != col {
            m.swap(p, col);
            acc = -acc;
        }
        let piv = m[col][col].clone();
        acc *= piv.clone();
        for i in col + 1..n {
            let f = m[i][col].clone() / piv.clone();
            for j in col..n {
                let v = m[col][j].clone() * f.clone();
                m[i][j] -= v;
            }
        }
    }
    acc
}

#[test]
fn haar_is_faithful_on_short_monomials() {
    let s0 = BigRational::new(7.into(), 10.into());
    let basis = pbw_monomials(2);
    let gram: Vec<Vec<_>> = basis
        .iter()
        .map(|x| {
            basis
                .iter()
                .map(|y| {
                    let v = &star(&AlgebraElement::monomial(*x)) * &AlgebraElement::monomial(*y);
                    haar(&v).specialize(&s0).unwrap()
                })
                .collect()
        })
        .collect();
    for k in 1..=basis.len() {
        let minor: Vec<Vec<_>> = gram[..k].iter().map(|r| r[..k].to_vec()).collect();
        let d = det(minor);
        assert!(d.im.is_zero() && d.re.is_positive(), "minor {k}");
    }
}

#[test]
fn haar_closed_form_spot_values() {
    let bc = AlgebraElement::b_zero();
    let q2 = Scalar::q_pow(2);
    // h((bc)²) = q²(1 - q²)/(1 - q⁶) = q²/(1 + q² + q⁴)
    let expected = &q2 / &(&(&Scalar::one() + &q2) + &Scalar::q_pow(4));
    assert_eq!(haar(&bc.pow(2)), expected);
    assert!(haar(&AlgebraElement::b_minus()).is_zero());
}
