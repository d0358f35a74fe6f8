//! The expression language for elements and functionals: sums of
//! scalar-multiplied products of generator names, with parenthesized
//! subexpressions, `V[...]` word literals, and `name^k` divided powers.
//! Juxtaposition and `*` both mean the (noncommutative) product. All errors
//! carry the byte position where parsing stopped.

use crate::coeff::{CycQ, Rat};
use crate::dual::DualElement;
use crate::enveloping::{factorial, mul, normalize, Element, FreeWord, Gen, PBWMonomial};
use crate::exterior::has_rise;
use crate::structure::AlgebraSpec;
use num::BigInt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExprError {
    #[error("parse error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown generator `{name}` at byte {pos}")]
    UnknownName { pos: usize, name: String },
}

fn syntax(pos: usize, msg: impl Into<String>) -> ExprError {
    ExprError::Syntax { pos, msg: msg.into() }
}

/// Abstract syntax for element expressions; all names are already resolved
/// to generator indices, so evaluation cannot fail.
#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Scalar(CycQ),
    Generator(Gen),
    /// A word of odd generators (0-based indices), normalized on evaluation.
    Word(Vec<usize>),
    /// The k-th divided power: the k-fold product divided by k factorial.
    Power(Box<Expr>, u32),
    Product(Vec<Expr>),
    Sum(Vec<Expr>),
    Negated(Box<Expr>),
}

// ---------------------------------------------------------------------------
// Lexer
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Name(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LPar,
    RPar,
    LBrack,
    RBrack,
    Comma,
    Pipe,
}

struct Tokens {
    toks: Vec<(usize, Tok)>,
    end: usize,
    cursor: usize,
}

fn lex(text: &str) -> Result<Tokens, ExprError> {
    let bytes = text.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        let tok = match b {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'^' => Tok::Caret,
            b'(' => Tok::LPar,
            b')' => Tok::RPar,
            b'[' => Tok::LBrack,
            b']' => Tok::RBrack,
            b',' => Tok::Comma,
            b'|' => Tok::Pipe,
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n = BigInt::parse_bytes(&bytes[start..i], 10)
                    .expect("digits form an integer");
                toks.push((start, Tok::Num(n)));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                let start = i;
                while i < bytes.len()
                    && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                toks.push((start, Tok::Name(text[start..i].to_string())));
                continue;
            }
            other => {
                return Err(syntax(i, format!("unexpected character `{}`", other as char)))
            }
        };
        toks.push((i, tok));
        i += 1;
    }
    Ok(Tokens { toks, end: bytes.len(), cursor: 0 })
}

impl Tokens {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.cursor).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.cursor).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn next(&mut self) -> Option<(usize, Tok)> {
        let t = self.toks.get(self.cursor).cloned();
        if t.is_some() {
            self.cursor += 1;
        }
        t
    }

    fn eat(&mut self, want: &Tok) -> bool {
        if self.peek() == Some(want) {
            self.cursor += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<(), ExprError> {
        let pos = self.pos();
        if self.eat(&want) {
            Ok(())
        } else {
            Err(syntax(pos, format!("expected {what}")))
        }
    }

    fn expect_index(&mut self, what: &str) -> Result<(usize, usize), ExprError> {
        let pos = self.pos();
        match self.next() {
            Some((p, Tok::Num(n))) => {
                let idx: usize = n
                    .try_into()
                    .map_err(|_| syntax(p, format!("{what} out of range")))?;
                Ok((p, idx))
            }
            _ => Err(syntax(pos, format!("expected {what}"))),
        }
    }
}

// ---------------------------------------------------------------------------
// Element expressions
// ---------------------------------------------------------------------------

/// Parse an element expression against an algebra. Grammar:
/// `expr := ('+'|'-')? term (('+'|'-') term)*`,
/// `term := factor ('*'? factor)*`,
/// `factor := rational | 'q' | name ('^' power)? | 'V' '[' indices ']'
///          | '(' expr ')' ('^' power)?`.
/// `q` always denotes the cube root of unity and `name^k` the k-th divided
/// power (the k-fold product divided by k!).
pub fn parse_expr(text: &str, spec: &AlgebraSpec) -> Result<Expr, ExprError> {
    let mut toks = lex(text)?;
    if toks.peek().is_none() {
        return Err(syntax(0, "empty expression"));
    }
    let e = parse_sum(&mut toks, spec)?;
    if let Some(t) = toks.peek() {
        return Err(syntax(toks.pos(), format!("unexpected trailing `{t:?}`")));
    }
    Ok(e)
}

/// Parse and evaluate in one step, yielding the normal form.
pub fn parse_element(text: &str, spec: &AlgebraSpec) -> Result<Element, ExprError> {
    Ok(eval(&parse_expr(text, spec)?, spec))
}

fn parse_sum(toks: &mut Tokens, spec: &AlgebraSpec) -> Result<Expr, ExprError> {
    let mut terms = Vec::new();
    let negate = if toks.eat(&Tok::Minus) {
        true
    } else {
        toks.eat(&Tok::Plus);
        false
    };
    let first = parse_term(toks, spec)?;
    terms.push(if negate { Expr::Negated(Box::new(first)) } else { first });
    loop {
        if toks.eat(&Tok::Plus) {
            terms.push(parse_term(toks, spec)?);
        } else if toks.eat(&Tok::Minus) {
            terms.push(Expr::Negated(Box::new(parse_term(toks, spec)?)));
        } else {
            break;
        }
    }
    Ok(if terms.len() == 1 { terms.pop().unwrap() } else { Expr::Sum(terms) })
}

fn starts_factor(t: Option<&Tok>) -> bool {
    matches!(t, Some(Tok::Num(_)) | Some(Tok::Name(_)) | Some(Tok::LPar))
}

fn parse_term(toks: &mut Tokens, spec: &AlgebraSpec) -> Result<Expr, ExprError> {
    let mut factors = vec![parse_factor(toks, spec)?];
    loop {
        if toks.eat(&Tok::Star) {
            factors.push(parse_factor(toks, spec)?);
        } else if starts_factor(toks.peek()) {
            factors.push(parse_factor(toks, spec)?);
        } else {
            break;
        }
    }
    Ok(if factors.len() == 1 { factors.pop().unwrap() } else { Expr::Product(factors) })
}

fn parse_power(toks: &mut Tokens, base: Expr) -> Result<Expr, ExprError> {
    if !toks.eat(&Tok::Caret) {
        return Ok(base);
    }
    let pos = toks.pos();
    match toks.next() {
        Some((p, Tok::Num(n))) => {
            let k: u32 = n
                .try_into()
                .map_err(|_| syntax(p, "power out of range"))?;
            if k > 255 {
                return Err(syntax(p, "power out of range"));
            }
            Ok(Expr::Power(Box::new(base), k))
        }
        _ => Err(syntax(pos, "expected an integer power")),
    }
}

fn parse_rational(toks: &mut Tokens, numer: BigInt) -> Result<CycQ, ExprError> {
    if toks.eat(&Tok::Slash) {
        let pos = toks.pos();
        match toks.next() {
            Some((p, Tok::Num(d))) => {
                if d == BigInt::from(0) {
                    return Err(syntax(p, "zero denominator"));
                }
                Ok(CycQ::from_rat(Rat::new(numer, d)))
            }
            _ => Err(syntax(pos, "expected a denominator")),
        }
    } else {
        Ok(CycQ::from_rat(Rat::from_integer(numer)))
    }
}

fn parse_factor(toks: &mut Tokens, spec: &AlgebraSpec) -> Result<Expr, ExprError> {
    let pos = toks.pos();
    match toks.next() {
        Some((_, Tok::Num(n))) => Ok(Expr::Scalar(parse_rational(toks, n)?)),
        Some((p, Tok::Name(name))) => {
            if name == "q" {
                return Ok(Expr::Scalar(CycQ::q()));
            }
            if name == "V" && toks.peek() == Some(&Tok::LBrack) {
                toks.next();
                let mut word = Vec::new();
                if toks.peek() != Some(&Tok::RBrack) {
                    loop {
                        let (ip, idx) = toks.expect_index("an odd generator index")?;
                        if idx >= spec.dim_g1() {
                            return Err(syntax(ip, "odd generator index out of range"));
                        }
                        word.push(idx);
                        if !toks.eat(&Tok::Comma) {
                            break;
                        }
                    }
                }
                toks.expect(Tok::RBrack, "`]`")?;
                return parse_power(toks, Expr::Word(word));
            }
            let gen = spec
                .g0_index(&name)
                .map(Gen::X)
                .or_else(|| spec.g1_index(&name).map(Gen::Y))
                .ok_or(ExprError::UnknownName { pos: p, name })?;
            parse_power(toks, Expr::Generator(gen))
        }
        Some((_, Tok::LPar)) => {
            let inner = parse_sum(toks, spec)?;
            toks.expect(Tok::RPar, "`)`")?;
            parse_power(toks, inner)
        }
        _ => Err(syntax(pos, "expected a factor")),
    }
}

/// Evaluate to the normal form; products normalize as they go.
pub fn eval(expr: &Expr, spec: &AlgebraSpec) -> Element {
    match expr {
        Expr::Scalar(c) => Element::scalar(spec, c.clone()),
        Expr::Generator(g) => Element::generator(spec, *g),
        Expr::Word(idx) => {
            normalize(&FreeWord(idx.iter().map(|&a| Gen::Y(a)).collect()), spec)
        }
        Expr::Power(base, k) => {
            let b = eval(base, spec);
            let mut acc = Element::unit(spec);
            for _ in 0..*k {
                acc = mul(&acc, &b, spec);
            }
            acc.scaled(&CycQ::from_rat(factorial(*k).recip()))
        }
        Expr::Product(fs) => {
            let mut acc = Element::unit(spec);
            for f in fs {
                acc = mul(&acc, &eval(f, spec), spec);
            }
            acc
        }
        Expr::Sum(ts) => {
            let mut acc = Element::zero();
            for t in ts {
                acc = &acc + &eval(t, spec);
            }
            acc
        }
        Expr::Negated(e) => -&eval(e, spec),
    }
}

// ---------------------------------------------------------------------------
// Dual expressions
// ---------------------------------------------------------------------------

/// Parse a functional: sums of scalar multiples of dual labels
/// `alpha[...]` (even indices, multiplicity counts), `theta[...]` (an odd
/// word, which must be a normal-form word), `Psi[x|y]` (mixed), or plain
/// scalars (multiples of the dual of the unit). Dual labels cannot be
/// multiplied inside an expression — that is what the dual product commands
/// are for — but scalar factors distribute freely.
pub fn parse_dual(text: &str, spec: &AlgebraSpec) -> Result<DualElement, ExprError> {
    let mut toks = lex(text)?;
    if toks.peek().is_none() {
        return Err(syntax(0, "empty expression"));
    }
    let f = parse_dual_sum(&mut toks, spec)?;
    if let Some(t) = toks.peek() {
        return Err(syntax(toks.pos(), format!("unexpected trailing `{t:?}`")));
    }
    Ok(f)
}

fn parse_dual_sum(toks: &mut Tokens, spec: &AlgebraSpec) -> Result<DualElement, ExprError> {
    let mut acc = DualElement::zero(crate::dual::EXACT);
    loop {
        let negate = if toks.eat(&Tok::Minus) {
            true
        } else {
            toks.eat(&Tok::Plus);
            false
        };
        let term = parse_dual_term(toks, spec)?;
        acc = if negate { &acc - &term } else { &acc + &term };
        match toks.peek() {
            Some(Tok::Plus) | Some(Tok::Minus) => continue,
            _ => return Ok(acc),
        }
    }
}

/// One term: any number of scalar factors and at most one non-scalar factor
/// (a dual label or a parenthesized functional), in any order. A
/// parenthesized functional supported only on the unit label counts as a
/// scalar.
fn parse_dual_term(toks: &mut Tokens, spec: &AlgebraSpec) -> Result<DualElement, ExprError> {
    let mut scalar = CycQ::one();
    let mut body: Option<DualElement> = None;
    let set_body = |body: &mut Option<DualElement>, f: DualElement, pos: usize| {
        if body.is_some() {
            Err(syntax(
                pos,
                "functionals cannot be multiplied in an expression; \
                 use the dual product command",
            ))
        } else {
            *body = Some(f);
            Ok(())
        }
    };
    let mut consumed = false;
    loop {
        let pos = toks.pos();
        match toks.peek() {
            Some(Tok::Num(_)) => {
                let Some((_, Tok::Num(n))) = toks.next() else { unreachable!() };
                let c = parse_rational(toks, n)?;
                scalar = &scalar * &c;
            }
            Some(Tok::Name(s)) if s == "q" => {
                toks.next();
                scalar = &scalar * &CycQ::q();
            }
            Some(Tok::LPar) => {
                toks.next();
                let inner = parse_dual_sum(toks, spec)?;
                toks.expect(Tok::RPar, "`)`")?;
                let unit = PBWMonomial::unit(spec.dim_g0());
                let is_scalar =
                    inner.terms().all(|(m, _)| m.is_unit()) && inner.is_exact();
                if is_scalar {
                    scalar = &scalar * &inner.coefficient(&unit);
                } else {
                    set_body(&mut body, inner, pos)?;
                }
            }
            Some(Tok::Name(_)) => {
                let m = parse_dual_label(toks, spec)?;
                set_body(&mut body, DualElement::psi(m), pos)?;
            }
            _ => break,
        }
        consumed = true;
        if !toks.eat(&Tok::Star) && !starts_dual_factor(toks.peek()) {
            break;
        }
    }
    if !consumed {
        return Err(syntax(toks.pos(), "expected a term"));
    }
    let f = body
        .unwrap_or_else(|| DualElement::psi(PBWMonomial::unit(spec.dim_g0())));
    Ok(f.scaled(&scalar))
}

fn starts_dual_factor(t: Option<&Tok>) -> bool {
    matches!(t, Some(Tok::Num(_)) | Some(Tok::Name(_)) | Some(Tok::LPar))
}

fn parse_dual_label(toks: &mut Tokens, spec: &AlgebraSpec) -> Result<PBWMonomial, ExprError> {
    let Some((pos, Tok::Name(kind))) = toks.next() else {
        unreachable!("caller checked for a name")
    };
    let (want_x, want_y) = match kind.as_str() {
        "alpha" => (true, false),
        "theta" => (false, true),
        "Psi" => (true, true),
        _ => {
            return Err(ExprError::UnknownName { pos, name: kind });
        }
    };
    toks.expect(Tok::LBrack, "`[`")?;
    let mut x_exp = vec![0u32; spec.dim_g0()];
    if want_x {
        parse_index_list(toks, spec.dim_g0(), "an even generator index", |i| {
            x_exp[i] += 1;
        })?;
    }
    let mut y_word: Vec<u8> = Vec::new();
    if want_x && want_y {
        toks.expect(Tok::Pipe, "`|`")?;
    }
    if want_y {
        let ypos = toks.pos();
        parse_index_list(toks, spec.dim_g1(), "an odd generator index", |a| {
            y_word.push(a as u8 + 1);
        })?;
        if has_rise(&y_word, 3) {
            return Err(syntax(
                ypos,
                "not a normal-form label: the odd word contains a rise",
            ));
        }
    }
    toks.expect(Tok::RBrack, "`]`")?;
    Ok(PBWMonomial::new(x_exp, y_word))
}

fn parse_index_list(
    toks: &mut Tokens,
    bound: usize,
    what: &str,
    mut sink: impl FnMut(usize),
) -> Result<(), ExprError> {
    if !matches!(toks.peek(), Some(Tok::Num(_))) {
        return Ok(()); // empty list
    }
    loop {
        let (ip, idx) = toks.expect_index(what)?;
        if idx >= bound {
            return Err(syntax(ip, format!("{what} out of range")));
        }
        sink(idx);
        if !toks.eat(&Tok::Comma) {
            break;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::builtin_iso3;

    fn iso() -> AlgebraSpec {
        builtin_iso3(4)
    }

    fn golden(spec: &AlgebraSpec) -> Element {
        let w = FreeWord(vec![
            Gen::Y(spec.g1_index("V1").unwrap()),
            Gen::Y(spec.g1_index("V1").unwrap()),
            Gen::Y(spec.g1_index("V2").unwrap()),
        ]);
        normalize(&w, spec)
    }

    #[test]
    fn products_of_names() {
        let spec = iso();
        assert_eq!(parse_element("V1*V1*V2", &spec).unwrap(), golden(&spec));
        // juxtaposition means the same product
        assert_eq!(parse_element("V1 V1 V2", &spec).unwrap(), golden(&spec));
    }

    #[test]
    fn scalars_and_sums() {
        let spec = iso();
        let got = parse_element("(1+q)*V1*V1 - 1/2*P2", &spec).unwrap();
        let v1 = Element::generator(&spec, Gen::Y(spec.g1_index("V1").unwrap()));
        let p2 = Element::generator(&spec, Gen::X(spec.g0_index("P2").unwrap()));
        let want = &mul(&v1, &v1, &spec).scaled(&(&CycQ::one() + &CycQ::q()))
            - &p2.scaled(&CycQ::rational(1, 2));
        assert_eq!(got, want);
    }

    #[test]
    fn double_star_is_a_syntax_error() {
        let spec = iso();
        assert!(matches!(
            parse_expr("V1**V2", &spec),
            Err(ExprError::Syntax { pos: 3, .. })
        ));
    }

    #[test]
    fn unknown_names_are_reported_with_position() {
        let spec = iso();
        assert_eq!(
            parse_expr("V1*Z9", &spec),
            Err(ExprError::UnknownName { pos: 3, name: "Z9".into() })
        );
    }

    #[test]
    fn word_literals_normalize() {
        let spec = iso();
        // a normal-form word parses to itself
        let m = PBWMonomial::new(vec![0; spec.dim_g0()], vec![2, 3, 2]);
        assert_eq!(
            parse_element("V[1,2,1]", &spec).unwrap(),
            Element::monomial(m, CycQ::one())
        );
        // a word with a rise normalizes on evaluation
        assert_eq!(parse_element("V[1,1,2]", &spec).unwrap(), golden(&spec));
    }

    #[test]
    fn divided_powers() {
        let spec = iso();
        // P0^3 is the divided cube: P0*P0*P0 = 6·P0^3
        let cubed = parse_element("P0^3", &spec).unwrap();
        let plain = parse_element("P0*P0*P0", &spec).unwrap();
        assert_eq!(plain, cubed.scaled(&CycQ::from_int(6)));
        // power of a parenthesized sum
        let s = parse_element("(P0+P1)^2", &spec).unwrap();
        let expanded = parse_element("1/2*(P0+P1)*(P0+P1)", &spec).unwrap();
        assert_eq!(s, expanded);
    }

    #[test]
    fn the_golden_expression_round_trips() {
        let spec = iso();
        assert_eq!(
            parse_element("-1/2*P2 - V[1,2,1] - V[2,1,1]", &spec).unwrap(),
            golden(&spec)
        );
    }

    #[test]
    fn q_is_reserved_for_the_root_of_unity() {
        let spec = iso();
        let got = parse_element("q*q*q", &spec).unwrap();
        assert_eq!(got, Element::unit(&spec));
    }

    #[test]
    fn empty_and_trailing_inputs_fail() {
        let spec = iso();
        assert!(matches!(parse_expr("", &spec), Err(ExprError::Syntax { pos: 0, .. })));
        assert!(matches!(parse_expr("  ", &spec), Err(ExprError::Syntax { .. })));
        assert!(parse_expr("V1 )", &spec).is_err());
        assert!(parse_expr("(V1", &spec).is_err());
    }

    #[test]
    fn dual_labels_parse() {
        let spec = iso();
        let t = parse_dual("theta[1,0]", &spec).unwrap();
        assert_eq!(
            t,
            DualElement::psi(PBWMonomial::new(vec![0; spec.dim_g0()], vec![2, 1]))
        );
        let a = parse_dual("alpha[0,0,2]", &spec).unwrap();
        let mut e = vec![0u32; spec.dim_g0()];
        e[0] = 2;
        e[2] = 1;
        assert_eq!(a, DualElement::psi(PBWMonomial::new(e.clone(), Vec::new())));
        let p = parse_dual("Psi[0,0,2|1]", &spec).unwrap();
        assert_eq!(p, DualElement::psi(PBWMonomial::new(e, vec![2])));
    }

    #[test]
    fn dual_sums_and_scalars() {
        let spec = iso();
        let f = parse_dual("theta[0] + q*theta[1] - 2", &spec).unwrap();
        assert_eq!(
            f.coefficient(&PBWMonomial::new(vec![0; spec.dim_g0()], vec![1])),
            CycQ::one()
        );
        assert_eq!(
            f.coefficient(&PBWMonomial::new(vec![0; spec.dim_g0()], vec![2])),
            CycQ::q()
        );
        assert_eq!(
            f.coefficient(&PBWMonomial::unit(spec.dim_g0())),
            CycQ::from_int(-2)
        );
    }

    #[test]
    fn dual_labels_do_not_multiply() {
        let spec = iso();
        assert!(parse_dual("theta[0]*theta[1]", &spec).is_err());
    }

    #[test]
    fn dual_labels_must_be_normal_form() {
        let spec = iso();
        assert!(parse_dual("theta[0,0,1]", &spec).is_err());
        assert!(parse_dual("theta[9]", &spec).is_err());
    }
}
