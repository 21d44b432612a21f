//! Evaluation of parsed expressions to forms.
//!
//! Every value is a form; functions live in degree 0 and scalars are constant
//! functions, so one product (the wedge) covers all cases.

use num_complex::Complex;
use num_rational::BigRational;
use num_traits::Zero;
use podles::calculus::{calibration, Form, Frame};
use podles::hermitian::{hodge, inner, integral, metric, volume_form};
use podles::lefschetz::{counting, lefschetz_dual, lefschetz_l};
use podles::qalgebra::{Gen, Monomial};
use podles::{AlgebraElement, Error, Result, Scalar};

use crate::parse::{parse, Atom, Expr, Func};

fn constant(c: Scalar) -> Form {
    Form::function(AlgebraElement::scalar(c))
}

/// The scalar value of a constant function, if it is one.
pub fn as_scalar(w: &Form) -> Option<Scalar> {
    let mut parts = w.components();
    match (parts.next(), parts.next()) {
        (None, _) => Some(Scalar::zero()),
        (Some((Frame::One, x)), None) if x.terms().all(|(m, _)| m.is_one()) => Some(x.coefficient(&Monomial::ONE)),
        _ => None,
    }
}

fn atom(a: Atom) -> Form {
    let gen = |g| Form::function(AlgebraElement::gen(g));
    match a {
        Atom::A => gen(Gen::A),
        Atom::B => gen(Gen::B),
        Atom::C => gen(Gen::C),
        Atom::D => gen(Gen::D),
        Atom::BMinus => Form::function(AlgebraElement::b_minus()),
        Atom::BZero => Form::function(AlgebraElement::b_zero()),
        Atom::BPlus => Form::function(AlgebraElement::b_plus()),
        Atom::EPlus => Form::frame(Frame::Plus),
        Atom::EMinus => Form::frame(Frame::Minus),
        Atom::Tau => Form::frame(Frame::Tau),
        Atom::Vol => volume_form(),
        Atom::Q => constant(Scalar::q()),
        Atom::S => constant(Scalar::s()),
        Atom::I => constant(Scalar::i()),
    }
}

pub fn eval(e: &Expr) -> Result<Form> {
    let cal = calibration();
    Ok(match e {
        Expr::Num(r) => constant(Scalar::from_coeff(Complex::new(r.clone(), BigRational::zero()))),
        Expr::Atom(a) => atom(*a),
        Expr::Neg(x) => -&eval(x)?,
        Expr::Add(a, b) => &eval(a)? + &eval(b)?,
        Expr::Sub(a, b) => &eval(a)? - &eval(b)?,
        Expr::Mul(a, b) => cal.wedge(&eval(a)?, &eval(b)?),
        Expr::Pow(x, n) => {
            let base = eval(x)?;
            if *n < 0 {
                let c = as_scalar(&base)
                    .ok_or_else(|| Error::Invalid(format!("negative power of the non-scalar `{x}`")))?;
                constant(c.pow(*n)?)
            } else {
                (0..*n).fold(Form::one(), |acc, _| cal.wedge(&acc, &base))
            }
        }
        Expr::Call(f, args) => {
            let v = args.iter().map(eval).collect::<Result<Vec<_>>>()?;
            match f {
                Func::D => cal.differential(&v[0]),
                Func::Del => cal.del(&v[0]),
                Func::Dbar => cal.dbar(&v[0]),
                Func::Star => cal.form_star(&v[0]),
                Func::Hodge => hodge(&v[0]),
                Func::L => lefschetz_l(&v[0]),
                Func::Lam => lefschetz_dual(&v[0]),
                Func::Cnt => counting(&v[0]),
                Func::G => Form::function(cal.pairing(&v[0], &v[1])),
                Func::Inner => constant(inner(&v[0], &v[1])),
                Func::Integral => constant(integral(&v[0])),
                Func::Metric => Form::function(metric(&v[0], &v[1])),
            }
        }
    })
}

/// Parses, evaluates and renders canonically.
pub fn eval_text(text: &str) -> Result<String> {
    Ok(eval(&parse(text)?)?.render())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(eval_text("hodge(e+)").unwrap(), "i*e+");
        assert_eq!(eval_text("g(e+, e+)").unwrap(), "0");
        assert_eq!(eval_text("2*q^-1 - q^-1*2").unwrap(), "0");
        assert_eq!(eval_text("integral(vol)").unwrap(), "1");
        assert_eq!(eval_text("(1+q)^-1*(1+q)").unwrap(), "1");
    }

    #[test]
    fn products_are_noncommutative() {
        let ab = eval_text("a*b").unwrap();
        let ba = eval_text("b*a").unwrap();
        assert_ne!(ab, ba);
        // b a = q⁻¹ a b
        assert_eq!(eval_text("q*b*a - a*b").unwrap(), "0");
        assert_eq!(eval_text("q*a*b - b*a").unwrap(), eval_text("(q-q^-1)*a*b").unwrap());
    }

    #[test]
    fn rendering_round_trips() {
        for text in ["d(bp)", "del(b0*bp)", "star(d(bm))", "L(a*d)", "1/3*i*q^-2 + s", "hodge(bp*tau)"] {
            let v = eval(&parse(text).unwrap()).unwrap();
            let again = eval(&parse(&v.render()).unwrap()).unwrap();
            assert_eq!(again, v, "{text} rendered as {}", v.render());
        }
    }

    #[test]
    fn negative_powers_need_scalars() {
        assert!(eval_text("a^-1").is_err());
        assert!(eval_text("(q-q)^-1").is_err());
    }
}
