//! Fundamental form, Lefschetz operators and the operator algebra they live in.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::calculus::{calibration, Form, Frame};
use crate::error::{Error, Result};
use crate::hermitian::{codifferential, hodge, hodge_inverse, laplacian, volume_form, Flavor};
use crate::qalgebra::AlgebraElement;
use crate::scalar::Scalar;

/// `κ = -vol = -iτ`
pub fn kappa() -> Form {
    -&volume_form()
}

/// `L(ω) = ω ∧ κ`
pub fn lefschetz_l(w: &Form) -> Form {
    calibration().wedge(w, &kappa())
}

/// `Λ = ∗_H⁻¹ ∘ L ∘ ∗_H`
pub fn lefschetz_dual(w: &Form) -> Form {
    hodge_inverse(&lefschetz_l(&hodge(w)))
}

/// `H = Σ_k (k - 1) Π^k`
pub fn counting(w: &Form) -> Form {
    &w.degree_part(2) - &w.degree_part(0)
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize)]
pub enum OpName {
    L,
    Lambda,
    Counting,
    D,
    Del,
    Dbar,
    DStar,
    DelStar,
    DbarStar,
    DeltaD,
    DeltaDel,
    DeltaDbar,
    HodgeStar,
    FormStar,
}

impl OpName {
    pub const ALL: [OpName; 14] = [
        OpName::L,
        OpName::Lambda,
        OpName::Counting,
        OpName::D,
        OpName::Del,
        OpName::Dbar,
        OpName::DStar,
        OpName::DelStar,
        OpName::DbarStar,
        OpName::DeltaD,
        OpName::DeltaDel,
        OpName::DeltaDbar,
        OpName::HodgeStar,
        OpName::FormStar,
    ];

    pub fn name(self) -> &'static str {
        match self {
            OpName::L => "L",
            OpName::Lambda => "Lambda",
            OpName::Counting => "Counting",
            OpName::D => "d",
            OpName::Del => "del",
            OpName::Dbar => "dbar",
            OpName::DStar => "d*",
            OpName::DelStar => "del*",
            OpName::DbarStar => "dbar*",
            OpName::DeltaD => "Delta_d",
            OpName::DeltaDel => "Delta_del",
            OpName::DeltaDbar => "Delta_dbar",
            OpName::HodgeStar => "HodgeStar",
            OpName::FormStar => "FormStar",
        }
    }

    pub fn parse(s: &str) -> Result<OpName> {
        OpName::ALL
            .into_iter()
            .find(|o| o.name() == s)
            .ok_or_else(|| Error::Invalid(format!("unknown operator `{s}`")))
    }

    pub fn apply(self, w: &Form) -> Form {
        let cal = calibration();
        match self {
            OpName::L => lefschetz_l(w),
            OpName::Lambda => lefschetz_dual(w),
            OpName::Counting => counting(w),
            OpName::D => cal.differential(w),
            OpName::Del => cal.del(w),
            OpName::Dbar => cal.dbar(w),
            OpName::DStar => codifferential(w, Flavor::D),
            OpName::DelStar => codifferential(w, Flavor::Del),
            OpName::DbarStar => codifferential(w, Flavor::Dbar),
            OpName::DeltaD => laplacian(w, Flavor::D),
            OpName::DeltaDel => laplacian(w, Flavor::Del),
            OpName::DeltaDbar => laplacian(w, Flavor::Dbar),
            OpName::HodgeStar => hodge(w),
            OpName::FormStar => cal.form_star(w),
        }
    }

    /// Change in form degree.
    pub fn degree_shift(self) -> i32 {
        match self {
            OpName::L => 2,
            OpName::Lambda => -2,
            OpName::D | OpName::Del | OpName::Dbar => 1,
            OpName::DStar | OpName::DelStar | OpName::DbarStar => -1,
            _ => 0,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Linearity {
    Linear,
    ConjugateLinear,
    Mixed,
}

/// Lazily evaluated operator on forms.
#[derive(Clone)]
pub enum OperatorHandle {
    Basic(OpName),
    Scaled(Scalar, Arc<OperatorHandle>),
    Sum(Arc<OperatorHandle>, Arc<OperatorHandle>),
    Compose(Arc<OperatorHandle>, Arc<OperatorHandle>),
    /// `AB - BA`, or `AB + BA` when graded
    Commutator(Arc<OperatorHandle>, Arc<OperatorHandle>, bool),
}

impl OperatorHandle {
    pub fn op(name: OpName) -> Self {
        OperatorHandle::Basic(name)
    }

    pub fn scaled(&self, c: Scalar) -> Self {
        OperatorHandle::Scaled(c, Arc::new(self.clone()))
    }

    pub fn plus(&self, other: &OperatorHandle) -> Self {
        OperatorHandle::Sum(Arc::new(self.clone()), Arc::new(other.clone()))
    }

    /// `self ∘ other`
    pub fn after(&self, other: &OperatorHandle) -> Self {
        OperatorHandle::Compose(Arc::new(self.clone()), Arc::new(other.clone()))
    }

    pub fn apply(&self, w: &Form) -> Form {
        match self {
            OperatorHandle::Basic(o) => o.apply(w),
            OperatorHandle::Scaled(c, a) => a.apply(w).scale(c),
            OperatorHandle::Sum(a, b) => &a.apply(w) + &b.apply(w),
            OperatorHandle::Compose(a, b) => a.apply(&b.apply(w)),
            OperatorHandle::Commutator(a, b, graded) => {
                let ab = a.apply(&b.apply(w));
                let ba = b.apply(&a.apply(w));
                if *graded {
                    &ab + &ba
                } else {
                    &ab - &ba
                }
            }
        }
    }

    pub fn linearity(&self) -> Linearity {
        use Linearity::*;
        let compose = |x: Linearity, y: Linearity| match (x, y) {
            (Mixed, _) | (_, Mixed) => Mixed,
            (a, b) if a == b => Linear,
            _ => ConjugateLinear,
        };
        match self {
            OperatorHandle::Basic(OpName::FormStar) => ConjugateLinear,
            OperatorHandle::Basic(_) => Linear,
            OperatorHandle::Scaled(_, a) => a.linearity(),
            OperatorHandle::Sum(a, b) | OperatorHandle::Commutator(a, b, _) => {
                let (x, y) = (a.linearity(), b.linearity());
                if x == y && x != Mixed {
                    x
                } else {
                    Mixed
                }
            }
            OperatorHandle::Compose(a, b) => compose(a.linearity(), b.linearity()),
        }
    }

    pub fn is_linear(&self) -> bool {
        self.linearity() == Linearity::Linear
    }
}

impl fmt::Display for OperatorHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OperatorHandle::Basic(o) => f.write_str(o.name()),
            OperatorHandle::Scaled(c, a) => write!(f, "({})*{a}", c.render()),
            OperatorHandle::Sum(a, b) => write!(f, "{a}+{b}"),
            OperatorHandle::Compose(a, b) => write!(f, "{a}.{b}"),
            OperatorHandle::Commutator(a, b, false) => write!(f, "[{a},{b}]"),
            OperatorHandle::Commutator(a, b, true) => write!(f, "({a},{b})"),
        }
    }
}

impl fmt::Debug for OperatorHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "OperatorHandle({self})")
    }
}

pub fn commutator(a: &OperatorHandle, b: &OperatorHandle, graded: bool) -> OperatorHandle {
    OperatorHandle::Commutator(Arc::new(a.clone()), Arc::new(b.clone()), graded)
}

/// `L` restricted to functions: `f ↦ f·κ`.
pub fn kappa_times(f: &AlgebraElement) -> Form {
    Form::term(f.clone(), Frame::Tau).scale(&-Scalar::i())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::differential;

    fn op(o: OpName) -> OperatorHandle {
        OperatorHandle::op(o)
    }

    #[test]
    fn kappa_is_real() {
        assert_eq!(calibration().form_star(&kappa()), kappa());
    }

    #[test]
    fn lefschetz_examples() {
        assert_eq!(lefschetz_l(&Form::one()), kappa());
        assert!(lefschetz_l(&Form::frame(Frame::Plus)).is_zero());
        let f = AlgebraElement::b_zero();
        assert_eq!(lefschetz_l(&Form::function(f.clone())), kappa_times(&f));
        assert!(lefschetz_dual(&Form::function(f.clone())).is_zero());
        let g = Form::function(f.clone());
        assert_eq!(lefschetz_dual(&lefschetz_l(&g)), g);
        assert_eq!(lefschetz_dual(&volume_form().left_mul(&f)), -&g);
    }

    #[test]
    fn counting_examples() {
        let f = Form::function(AlgebraElement::b_plus());
        assert_eq!(counting(&f), -&f);
        assert!(counting(&Form::frame(Frame::Plus)).is_zero());
        assert_eq!(counting(&Form::frame(Frame::Tau)), Form::frame(Frame::Tau));
    }

    #[test]
    fn commutator_examples() {
        let hl = commutator(&op(OpName::Counting), &op(OpName::L), false);
        assert_eq!(hl.apply(&Form::one()), kappa().scale(&Scalar::from_int(2)));
        let ll = commutator(&op(OpName::L), &op(OpName::Lambda), false);
        let w = differential(&Form::function(AlgebraElement::b_plus()));
        assert_eq!(ll.apply(&w), counting(&w));
        let anti = commutator(&op(OpName::Del), &op(OpName::DbarStar), true);
        assert!(anti.apply(&w).is_zero());
        assert_eq!(hl.to_string(), "[Counting,L]");
    }

    #[test]
    fn linearity_flags() {
        assert!(op(OpName::L).is_linear());
        assert_eq!(op(OpName::FormStar).linearity(), Linearity::ConjugateLinear);
        let ss = op(OpName::FormStar).after(&op(OpName::FormStar));
        assert!(ss.is_linear());
        assert_eq!(commutator(&op(OpName::L), &op(OpName::FormStar), false).linearity(), Linearity::Mixed);
    }

    #[test]
    fn names_round_trip() {
        for o in OpName::ALL {
            assert_eq!(OpName::parse(o.name()).unwrap(), o);
        }
        assert!(OpName::parse("nope").is_err());
    }
}
