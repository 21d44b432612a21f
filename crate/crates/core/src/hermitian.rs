//! Hermitian structure: metric, integral, inner product, Hodge map,
//! codifferentials, Dirac operators and Laplacians.
//!
//! The top frame `τ` is anti-self-adjoint (`τ^* = -τ`), so the real volume
//! form is `vol = iτ`. The Hodge map and the integral are normalized against
//! `vol`: `∗_H(1) = vol`, `∗_H(vol) = 1`, `∗_H(e^±) = ±i e^±`, `∫ z·vol = h(z)`.

use serde::Serialize;

use crate::calculus::{calibration, Form, Frame};
use crate::qalgebra::{haar, star, AlgebraElement};
use crate::scalar::Scalar;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize)]
pub enum Flavor {
    D,
    Del,
    Dbar,
}

impl Flavor {
    pub const ALL: [Flavor; 3] = [Flavor::D, Flavor::Del, Flavor::Dbar];

    pub fn name(self) -> &'static str {
        match self {
            Flavor::D => "d",
            Flavor::Del => "del",
            Flavor::Dbar => "dbar",
        }
    }

    pub fn apply(self, w: &Form) -> Form {
        let cal = calibration();
        match self {
            Flavor::D => cal.differential(w),
            Flavor::Del => cal.del(w),
            Flavor::Dbar => cal.dbar(w),
        }
    }

    /// The flavor sandwiched by `∗_H` in the codifferential.
    fn dual(self) -> Flavor {
        match self {
            Flavor::D => Flavor::D,
            Flavor::Del => Flavor::Dbar,
            Flavor::Dbar => Flavor::Del,
        }
    }
}

/// `vol = iτ`
pub fn volume_form() -> Form {
    Form::term(AlgebraElement::scalar(Scalar::i()), Frame::Tau)
}

fn metric_weight(f: Frame) -> Scalar {
    match f {
        Frame::One | Frame::Tau => Scalar::one(),
        Frame::Plus => Scalar::q_pow(-1),
        Frame::Minus => Scalar::q_pow(3),
    }
}

/// Hermitian metric with values in `C_q[S²]`, conjugate-linear in `ν`.
///
/// Terms of equal bidegree pair as `x·y^*` times `1, q⁻¹, q³, 1` for the frames
/// `1, e⁺, e⁻, τ`; distinct bidegrees are orthogonal.
pub fn metric(w: &Form, v: &Form) -> AlgebraElement {
    let mut out = AlgebraElement::zero();
    for f in Frame::ALL {
        let (x, y) = (w.coeff(f), v.coeff(f));
        if x.is_zero() || y.is_zero() {
            continue;
        }
        out = &out + &(x * &star(y)).scale(&metric_weight(f));
    }
    out
}

/// `∫(z·τ) = -i·h(z)`, i.e. `∫(z·vol) = h(z)`; zero below top degree.
pub fn integral(w: &Form) -> Scalar {
    &haar(w.coeff(Frame::Tau)) * &(-Scalar::i())
}

/// `⟨ω, ν⟩ = h(metric(ω, ν))`
pub fn inner(w: &Form, v: &Form) -> Scalar {
    haar(&metric(w, v))
}

/// `⟨ω, ν⟩ = ∫ ω ∧ ∗_H(ν^*)`
pub fn inner_via_hodge(w: &Form, v: &Form) -> Scalar {
    let cal = calibration();
    integral(&cal.wedge(w, &hodge(&cal.form_star(v))))
}

/// Left-linear Hodge map.
pub fn hodge(w: &Form) -> Form {
    let i = Scalar::i();
    Form::new(
        w.coeff(Frame::Tau).scale(&-i.clone()),
        w.coeff(Frame::Plus).scale(&i),
        w.coeff(Frame::Minus).scale(&-i.clone()),
        w.coeff(Frame::One).scale(&i),
    )
}

/// `∗_H⁻¹`: `∗_H` squares to the identity on even degrees and to `-1` on `Ω¹`.
pub fn hodge_inverse(w: &Form) -> Form {
    let h = hodge(w);
    &h.degree_part(0) + &(&h.degree_part(2) - &h.degree_part(1))
}

/// `d^* = -∗_H d ∗_H`, `∂^* = -∗_H ∂̄ ∗_H`, `∂̄^* = -∗_H ∂ ∗_H`.
pub fn codifferential(w: &Form, flavor: Flavor) -> Form {
    -&hodge(&flavor.dual().apply(&hodge(w)))
}

/// `D = δ + δ^*`
pub fn dirac(w: &Form, flavor: Flavor) -> Form {
    &flavor.apply(w) + &codifferential(w, flavor)
}

/// `Δ = D²`
pub fn laplacian(w: &Form, flavor: Flavor) -> Form {
    dirac(&dirac(w, flavor), flavor)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::differential;

    fn bp_form() -> Form {
        Form::function(AlgebraElement::b_plus())
    }

    #[test]
    fn metric_examples() {
        let one = Form::one();
        assert_eq!(metric(&one, &one), AlgebraElement::one());
        let e = Form::frame(Frame::Plus);
        assert!(metric(&one, &e).is_zero());
        let f = bp_form();
        assert_eq!(metric(&f, &one), AlgebraElement::b_plus());
    }

    #[test]
    fn integral_examples() {
        assert!(integral(&volume_form()).is_one());
        let z = Form::term(AlgebraElement::b_zero(), Frame::Tau).scale(&Scalar::i());
        assert_eq!(integral(&z), haar(&AlgebraElement::b_zero()));
        assert!(integral(&Form::one()).is_zero());
        assert!(integral(&differential(&differential(&bp_form()).left_mul(&AlgebraElement::b_minus()))).is_zero());
    }

    #[test]
    fn hodge_table() {
        assert_eq!(hodge(&Form::one()), volume_form());
        assert!(hodge(&volume_form()) == Form::one());
        assert_eq!(hodge(&Form::frame(Frame::Plus)), Form::frame(Frame::Plus).scale(&Scalar::i()));
        assert_eq!(hodge(&Form::frame(Frame::Minus)), Form::frame(Frame::Minus).scale(&-Scalar::i()));
        for f in Frame::ALL {
            let w = Form::frame(f);
            assert_eq!(hodge_inverse(&hodge(&w)), w);
        }
    }

    #[test]
    fn codifferential_kills_functions() {
        for fl in Flavor::ALL {
            assert!(codifferential(&bp_form(), fl).is_zero());
        }
    }

    #[test]
    fn laplacian_of_constants() {
        assert!(laplacian(&Form::one(), Flavor::D).is_zero());
        assert!(laplacian(&volume_form(), Flavor::D).is_zero());
    }

    #[test]
    fn inner_routes_agree_on_small_forms() {
        let f = bp_form();
        let w = differential(&f);
        for (a, b) in [(&f, &f), (&w, &w), (&f, &w)] {
            assert_eq!(inner(a, b), inner_via_hodge(a, b));
        }
        assert!(inner(&Form::one(), &Form::one()).is_one());
    }
}
