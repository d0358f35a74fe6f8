//! Canonical text for elements, tensors, and functionals. The text form
//! round-trips through the expression parser; the machine form is one term
//! per line, `coefficient TAB label`, in the fixed basis order, and is the
//! stability contract for golden-file tests.

use crate::coeff::CycQ;
use crate::dual::{dual_label, DualElement, DualTensor};
use crate::enveloping::Element;
use crate::hopf::TensorElement;
use crate::structure::AlgebraSpec;
use num::{Signed, Zero};

/// Split a coefficient into a leading sign and the body printed before the
/// label. `None` means the magnitude is one and the label stands alone; a
/// mixed coefficient keeps its own sign and parenthesizes.
fn sign_body(c: &CycQ) -> (bool, Option<String>) {
    if c.is_rational() {
        let r = c.rat_part();
        let mag = CycQ::from_rat(r.abs());
        let body = if mag.is_one() { None } else { Some(mag.to_string()) };
        (r.is_negative(), body)
    } else if c.rat_part().is_zero() {
        let b = c.q_part();
        let mag = CycQ::from_rat(b.abs());
        let body = if mag.is_one() {
            Some("q".to_string())
        } else {
            Some(format!("{mag}*q"))
        };
        (b.is_negative(), body)
    } else {
        (false, Some(format!("({c})")))
    }
}

/// Append one `coefficient*label` term, eliding unit magnitudes and bare
/// unit labels. `label` is `None` for the unit monomial.
fn push_term(out: &mut String, c: &CycQ, label: Option<String>) {
    let (neg, body) = sign_body(c);
    if out.is_empty() {
        if neg {
            out.push('-');
        }
    } else if neg {
        out.push_str(" - ");
    } else {
        out.push_str(" + ");
    }
    match (body, label) {
        (Some(b), Some(l)) => {
            out.push_str(&b);
            out.push('*');
            out.push_str(&l);
        }
        (Some(b), None) => out.push_str(&b),
        (None, Some(l)) => out.push_str(&l),
        (None, None) => out.push('1'),
    }
}

fn finish(out: String) -> String {
    if out.is_empty() { "0".to_string() } else { out }
}

pub fn render_element(u: &Element, spec: &AlgebraSpec) -> String {
    let mut out = String::new();
    for (m, c) in u.terms() {
        let label = if m.is_unit() { None } else { Some(m.label(spec)) };
        push_term(&mut out, c, label);
    }
    finish(out)
}

pub fn render_element_machine(u: &Element, spec: &AlgebraSpec) -> String {
    u.terms()
        .map(|(m, c)| format!("{c}\t{}", m.label(spec)))
        .collect::<Vec<_>>()
        .join("\n")
}

pub fn render_tensor(t: &TensorElement, spec: &AlgebraSpec) -> String {
    let mut out = String::new();
    for ((l, r), c) in t.terms() {
        let label = format!("({} ⊗ {})", l.label(spec), r.label(spec));
        push_term(&mut out, c, Some(label));
    }
    finish(out)
}

pub fn render_tensor_machine(t: &TensorElement, spec: &AlgebraSpec) -> String {
    t.terms()
        .map(|((l, r), c)| format!("{c}\t{} ⊗ {}", l.label(spec), r.label(spec)))
        .collect::<Vec<_>>()
        .join("\n")
}

pub fn render_dual(f: &DualElement) -> String {
    let mut out = String::new();
    for (m, c) in f.terms() {
        let label = if m.is_unit() { None } else { Some(dual_label(m)) };
        push_term(&mut out, c, label);
    }
    finish(out)
}

pub fn render_dual_machine(f: &DualElement) -> String {
    f.terms()
        .map(|(m, c)| format!("{c}\t{}", dual_label(m)))
        .collect::<Vec<_>>()
        .join("\n")
}

pub fn render_dual_tensor(t: &DualTensor) -> String {
    let mut out = String::new();
    for ((l, r), c) in t.terms() {
        let label = format!("({} ⊗ {})", dual_label(l), dual_label(r));
        push_term(&mut out, c, Some(label));
    }
    finish(out)
}

pub fn render_dual_tensor_machine(t: &DualTensor) -> String {
    t.terms()
        .map(|((l, r), c)| format!("{c}\t{} ⊗ {}", dual_label(l), dual_label(r)))
        .collect::<Vec<_>>()
        .join("\n")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::rat;
    use crate::enveloping::{mul, normalize, Element, FreeWord, Gen, PBWMonomial};
    use crate::expr::{parse_dual, parse_element};
    use crate::hopf::coproduct;
    use crate::structure::builtin_iso3;

    fn iso() -> crate::structure::AlgebraSpec {
        builtin_iso3(4)
    }

    #[test]
    fn the_golden_reduction_prints_exactly() {
        let spec = iso();
        let w = FreeWord(vec![Gen::Y(1), Gen::Y(1), Gen::Y(2)]);
        let u = normalize(&w, &spec);
        assert_eq!(render_element(&u, &spec), "-1/2*P2 - V[1,2,1] - V[2,1,1]");
    }

    #[test]
    fn unit_labels_print_bare_coefficients() {
        let spec = iso();
        assert_eq!(render_element(&Element::unit(&spec), &spec), "1");
        assert_eq!(
            render_element(&Element::scalar(&spec, CycQ::from_int(-1)), &spec),
            "-1"
        );
        assert_eq!(
            render_element(&Element::scalar(&spec, CycQ::q()), &spec),
            "q"
        );
        assert_eq!(
            render_element(
                &Element::scalar(&spec, &CycQ::one() + &CycQ::q()),
                &spec
            ),
            "(1+q)"
        );
        assert_eq!(render_element(&Element::zero(), &spec), "0");
    }

    #[test]
    fn coefficient_shapes() {
        let spec = iso();
        let v1 = Element::generator(&spec, Gen::Y(0));
        assert_eq!(render_element(&v1.scaled(&CycQ::from_int(1)), &spec), "V[0]");
        assert_eq!(render_element(&v1.scaled(&CycQ::from_int(-1)), &spec), "-V[0]");
        assert_eq!(
            render_element(&v1.scaled(&CycQ::from_rat(rat(3, 2))), &spec),
            "3/2*V[0]"
        );
        assert_eq!(
            render_element(&v1.scaled(&(-&CycQ::q())), &spec),
            "-q*V[0]"
        );
        assert_eq!(
            render_element(&v1.scaled(&CycQ::new(rat(0, 1), rat(-2, 1))), &spec),
            "-2*q*V[0]"
        );
        assert_eq!(
            render_element(&v1.scaled(&CycQ::new(rat(1, 1), rat(-1, 1))), &spec),
            "(1-q)*V[0]"
        );
    }

    #[test]
    fn rendered_text_parses_back() {
        let spec = iso();
        let exprs = [
            "V1*V1*V2",
            "(1+q)*V1*V1 - 1/2*P2 + 7",
            "q*L01^2 - V[2,1]",
            "-1/2*P2 - V[1,2,1] - V[2,1,1]",
            "(-1-q)*V1 + (2-3*q)*P0",
        ];
        for text in exprs {
            let e = parse_element(text, &spec).unwrap();
            let rendered = render_element(&e, &spec);
            assert_eq!(
                parse_element(&rendered, &spec).unwrap(),
                e,
                "round-trip failed for {text} -> {rendered}"
            );
        }
    }

    #[test]
    fn machine_lines_are_tab_separated_and_sorted() {
        let spec = iso();
        let w = FreeWord(vec![Gen::Y(1), Gen::Y(1), Gen::Y(2)]);
        let u = normalize(&w, &spec);
        let machine = render_element_machine(&u, &spec);
        assert_eq!(machine, "-1/2\tP2\n-1\tV[1,2,1]\n-1\tV[2,1,1]");
        assert_eq!(render_element_machine(&Element::zero(), &spec), "");
    }

    #[test]
    fn machine_coefficients_parse_back() {
        let spec = iso();
        let e = parse_element("(1-q)*V1 + 5/3*P0^2 - q*V[1,0]", &spec).unwrap();
        for line in render_element_machine(&e, &spec).lines() {
            let (c, label) = line.split_once('\t').unwrap();
            let coeff = CycQ::parse(c).unwrap();
            let term = parse_element(label, &spec).unwrap().scaled(&coeff);
            for (m, cc) in term.terms() {
                assert_eq!(e.coefficient(m), cc.clone());
            }
        }
    }

    #[test]
    fn tensors_print_with_the_twist_friendly_labels() {
        let spec = iso();
        let v1 = Element::generator(&spec, Gen::Y(0));
        let d = coproduct(&mul(&v1, &v1, &spec), &spec);
        assert_eq!(
            render_tensor(&d, &spec),
            "(1 ⊗ V[0,0]) + (1+q)*(V[0] ⊗ V[0]) + (V[0,0] ⊗ 1)"
        );
        assert_eq!(
            render_tensor_machine(&d, &spec),
            "1\t1 ⊗ V[0,0]\n1+q\tV[0] ⊗ V[0]\n1\tV[0,0] ⊗ 1"
        );
    }

    #[test]
    fn dual_terms_render_with_their_labels() {
        let spec = iso();
        let f = parse_dual("theta[1,0] + q*alpha[2] - 3", &spec).unwrap();
        assert_eq!(render_dual(&f), "-3 + q*alpha[2] + theta[1,0]");
        assert_eq!(
            render_dual_machine(&f),
            "-3\t1\nq\talpha[2]\n1\ttheta[1,0]"
        );
        let back = parse_dual(&render_dual(&f), &spec).unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn dual_tensor_rendering() {
        let spec = builtin_iso3(2);
        let unit = PBWMonomial::unit(spec.dim_g0());
        let th = PBWMonomial::new(vec![0; spec.dim_g0()], vec![1]);
        let mut t = crate::dual::DualTensor::zero(4);
        t.add_term(unit.clone(), th.clone(), CycQ::one());
        t.add_term(th.clone(), unit, CycQ::q());
        t.add_term(th.clone(), th, CycQ::rational(-1, 2));
        assert_eq!(
            render_dual_tensor(&t),
            "(1 ⊗ theta[0]) + q*(theta[0] ⊗ 1) - 1/2*(theta[0] ⊗ theta[0])"
        );
        assert_eq!(
            render_dual_tensor_machine(&t),
            "1\t1 ⊗ theta[0]\nq\ttheta[0] ⊗ 1\n-1/2\ttheta[0] ⊗ theta[0]"
        );
    }
}
