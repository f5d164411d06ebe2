//! Parsers for the element grammar used by the CLI and test fixtures.
//!
//! Scalars are expressions in `t`, `q`, `z` and integers; algebra elements
//! are sums of `coeff * x[i,j]x[k,l]... * det^e` terms; functionals are sums
//! of scaled words over the named dual generators. Whitespace is
//! insignificant everywhere.

use crate::double::DoubleElement;
use crate::error::{Error, Result};
use crate::functionals::{named_generator, DualElement, NamedGenerator};
use crate::qmatrix::{self, Gen, QElement};
use crate::scalar::{QzContext, RatFunc};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(i64),
    Ident(String),
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
}

struct Lexer {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

fn lex(s: &str) -> Result<Lexer> {
    let bytes = s.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '(' => {
                toks.push((i, Tok::LParen));
                i += 1;
            }
            ')' => {
                toks.push((i, Tok::RParen));
                i += 1;
            }
            '[' => {
                toks.push((i, Tok::LBracket));
                i += 1;
            }
            ']' => {
                toks.push((i, Tok::RBracket));
                i += 1;
            }
            ',' => {
                toks.push((i, Tok::Comma));
                i += 1;
            }
            '+' => {
                toks.push((i, Tok::Plus));
                i += 1;
            }
            '-' => {
                toks.push((i, Tok::Minus));
                i += 1;
            }
            '*' => {
                toks.push((i, Tok::Star));
                i += 1;
            }
            '/' => {
                toks.push((i, Tok::Slash));
                i += 1;
            }
            '^' => {
                toks.push((i, Tok::Caret));
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let text = &s[start..i];
                let v = text
                    .parse::<i64>()
                    .map_err(|_| Error::parse(start, "integer overflow"))?;
                toks.push((start, Tok::Int(v)));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < bytes.len()
                    && ((bytes[i] as char).is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                toks.push((start, Tok::Ident(s[start..i].to_string())));
            }
            _ => return Err(Error::parse(i, format!("unexpected character `{c}`"))),
        }
    }
    Ok(Lexer {
        toks,
        pos: 0,
        end: s.len(),
    })
}

impl Lexer {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks
            .get(self.pos)
            .map(|(p, _)| *p)
            .unwrap_or(self.end)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, t: Tok) -> Result<()> {
        let pos = self.here();
        match self.next() {
            Some(ref got) if *got == t => Ok(()),
            got => Err(Error::parse(pos, format!("expected {t:?}, found {got:?}"))),
        }
    }

    fn expect_int(&mut self) -> Result<i64> {
        let pos = self.here();
        match self.next() {
            Some(Tok::Int(v)) => Ok(v),
            Some(Tok::Minus) => match self.next() {
                Some(Tok::Int(v)) => Ok(-v),
                got => Err(Error::parse(pos, format!("expected integer, found {got:?}"))),
            },
            got => Err(Error::parse(pos, format!("expected integer, found {got:?}"))),
        }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }
}

/// Signed exponent after `^`, or 1 when absent.
fn parse_exponent(lx: &mut Lexer) -> Result<i64> {
    if lx.peek() == Some(&Tok::Caret) {
        lx.next();
        lx.expect_int()
    } else {
        Ok(1)
    }
}

fn scalar_atom(ctx: &QzContext, lx: &mut Lexer) -> Result<RatFunc> {
    let pos = lx.here();
    match lx.next() {
        Some(Tok::Int(v)) => Ok(RatFunc::integer(v)),
        Some(Tok::Minus) => {
            let inner = scalar_atom(ctx, lx)?;
            Ok(inner.neg())
        }
        Some(Tok::LParen) => {
            let inner = scalar_expr(ctx, lx)?;
            lx.expect(Tok::RParen)?;
            let k = parse_exponent(lx)?;
            inner.pow(k)
        }
        Some(Tok::Ident(name)) => {
            let base = match name.as_str() {
                "t" => RatFunc::t_pow(1),
                "q" => ctx.q(),
                "z" => ctx.z(),
                _ => return Err(Error::parse(pos, format!("unknown scalar symbol `{name}`"))),
            };
            let k = parse_exponent(lx)?;
            base.pow(k)
        }
        got => Err(Error::parse(pos, format!("expected scalar, found {got:?}"))),
    }
}

fn scalar_factor(ctx: &QzContext, lx: &mut Lexer) -> Result<RatFunc> {
    let mut acc = scalar_atom(ctx, lx)?;
    loop {
        match lx.peek() {
            Some(Tok::Star) => {
                lx.next();
                acc = acc.mul(&scalar_atom(ctx, lx)?);
            }
            Some(Tok::Slash) => {
                lx.next();
                acc = acc.div(&scalar_atom(ctx, lx)?)?;
            }
            _ => return Ok(acc),
        }
    }
}

fn scalar_expr(ctx: &QzContext, lx: &mut Lexer) -> Result<RatFunc> {
    let mut acc = scalar_factor(ctx, lx)?;
    loop {
        match lx.peek() {
            Some(Tok::Plus) => {
                lx.next();
                acc = acc.add(&scalar_factor(ctx, lx)?);
            }
            Some(Tok::Minus) => {
                lx.next();
                acc = acc.sub(&scalar_factor(ctx, lx)?);
            }
            _ => return Ok(acc),
        }
    }
}

/// Parse a standalone scalar in the textual form.
pub fn parse_scalar(ctx: &QzContext, s: &str) -> Result<RatFunc> {
    let mut lx = lex(s)?;
    let v = scalar_expr(ctx, &mut lx)?;
    if !lx.at_end() {
        return Err(Error::parse(lx.here(), "trailing input after scalar"));
    }
    Ok(v)
}

fn index_pair(lx: &mut Lexer) -> Result<(usize, usize)> {
    lx.expect(Tok::LBracket)?;
    let i = lx.expect_int()?;
    lx.expect(Tok::Comma)?;
    let j = lx.expect_int()?;
    lx.expect(Tok::RBracket)?;
    Ok((i as usize, j as usize))
}

fn index_single(lx: &mut Lexer) -> Result<usize> {
    lx.expect(Tok::LBracket)?;
    let i = lx.expect_int()?;
    lx.expect(Tok::RBracket)?;
    Ok(i as usize)
}

/// One `coeff * gens * det^e` term of the element grammar.
fn qelement_term(ctx: &QzContext, lx: &mut Lexer) -> Result<QElement> {
    let mut coeff = RatFunc::one();
    let mut letters: Vec<Gen> = Vec::new();
    let mut det_q_pow: i64 = 0;
    let mut saw_factor = false;
    let mut divide = false;
    loop {
        match lx.peek() {
            Some(Tok::Ident(name)) if name == "x" => {
                lx.next();
                let (i, j) = index_pair(lx)?;
                if i < 1 || i > ctx.n() || j < 1 || j > ctx.n() {
                    return Err(Error::IndexOutOfRange {
                        row: i,
                        col: j,
                        n: ctx.n(),
                    });
                }
                letters.push(Gen::new(i, j));
                saw_factor = true;
            }
            Some(Tok::Ident(name)) if name == "det" => {
                lx.next();
                det_q_pow += parse_exponent(lx)?;
                saw_factor = true;
            }
            Some(Tok::Ident(name)) if name == "t" || name == "q" || name == "z" => {
                let a = scalar_atom(ctx, lx)?;
                coeff = if divide { coeff.div(&a)? } else { coeff.mul(&a) };
                divide = false;
                saw_factor = true;
            }
            Some(Tok::Int(_)) | Some(Tok::LParen) => {
                let a = scalar_atom(ctx, lx)?;
                coeff = if divide { coeff.div(&a)? } else { coeff.mul(&a) };
                divide = false;
                saw_factor = true;
            }
            Some(Tok::Minus) if !saw_factor => {
                let a = scalar_atom(ctx, lx)?;
                coeff = coeff.mul(&a);
                saw_factor = true;
            }
            Some(Tok::Star) => {
                lx.next();
            }
            Some(Tok::Slash) => {
                lx.next();
                divide = true;
            }
            _ => break,
        }
    }
    if !saw_factor {
        return Err(Error::parse(lx.here(), "expected an element term"));
    }
    // grammar speaks in powers of det_q; storage is powers of its inverse
    let det_pow = i32::try_from(-det_q_pow)
        .map_err(|_| Error::parse(lx.here(), "determinant power out of range"))?;
    qmatrix::normal_form(ctx, coeff, det_pow, &letters)
}

/// Parse a sum of element terms; the result is in normal form.
pub fn parse_qelement(ctx: &QzContext, s: &str) -> Result<QElement> {
    let mut lx = lex(s)?;
    let e = qelement_sum(ctx, &mut lx)?;
    if !lx.at_end() {
        return Err(Error::parse(lx.here(), "trailing input after element"));
    }
    Ok(e)
}

fn qelement_sum(ctx: &QzContext, lx: &mut Lexer) -> Result<QElement> {
    let mut acc = qelement_term(ctx, lx)?;
    loop {
        match lx.peek() {
            Some(Tok::Plus) => {
                lx.next();
                acc = acc.add(&qelement_term(ctx, lx)?);
            }
            Some(Tok::Minus) => {
                lx.next();
                acc = acc.sub(&qelement_term(ctx, lx)?);
            }
            _ => return Ok(acc),
        }
    }
}

fn dual_named(ctx: &QzContext, name: &str, lx: &mut Lexer) -> Result<Option<DualElement>> {
    let g = match name {
        "Khat" => NamedGenerator::KHat(index_single(lx)?),
        "Khat_inv" => NamedGenerator::KHatInv(index_single(lx)?),
        "E" => NamedGenerator::E(index_single(lx)?),
        "F" => NamedGenerator::F(index_single(lx)?),
        "K" => NamedGenerator::K(index_single(lx)?),
        "K_inv" => NamedGenerator::KInv(index_single(lx)?),
        "scriptE" => {
            let (i, j) = index_pair(lx)?;
            NamedGenerator::ScriptE(i, j)
        }
        "scriptF" => {
            let (i, j) = index_pair(lx)?;
            NamedGenerator::ScriptF(i, j)
        }
        "l" => {
            let (i, j) = index_pair(lx)?;
            NamedGenerator::LGen(i, j)
        }
        "r" => {
            let (i, j) = index_pair(lx)?;
            NamedGenerator::RGen(i, j)
        }
        "l_inv" => {
            let i = index_single(lx)?;
            let letter = crate::functionals::DualLetter::l_inv(ctx.n(), i)?;
            return Ok(Some(DualElement::letter(ctx.n(), letter)));
        }
        "r_inv" => {
            let i = index_single(lx)?;
            let letter = crate::functionals::DualLetter::r_inv(ctx.n(), i)?;
            return Ok(Some(DualElement::letter(ctx.n(), letter)));
        }
        "eps" => return Ok(Some(DualElement::one(ctx.n()))),
        _ => return Ok(None),
    };
    named_generator(ctx, g).map(Some)
}

fn dual_term(ctx: &QzContext, lx: &mut Lexer) -> Result<DualElement> {
    let mut coeff = RatFunc::one();
    let mut acc = DualElement::one(ctx.n());
    let mut saw_factor = false;
    let mut divide = false;
    loop {
        match lx.peek().cloned() {
            Some(Tok::Ident(name)) if !matches!(name.as_str(), "t" | "q" | "z") => {
                let pos = lx.here();
                lx.next();
                match dual_named(ctx, &name, lx)? {
                    Some(f) => {
                        acc = crate::functionals::dual_mul(&acc, &f)?;
                        saw_factor = true;
                    }
                    None => {
                        return Err(Error::parse(
                            pos,
                            format!("unknown functional name `{name}`"),
                        ))
                    }
                }
            }
            Some(Tok::Ident(_)) | Some(Tok::Int(_)) | Some(Tok::LParen) => {
                let a = scalar_atom(ctx, lx)?;
                coeff = if divide { coeff.div(&a)? } else { coeff.mul(&a) };
                divide = false;
                saw_factor = true;
            }
            Some(Tok::Minus) if !saw_factor => {
                let a = scalar_atom(ctx, lx)?;
                coeff = coeff.mul(&a);
                saw_factor = true;
            }
            Some(Tok::Star) => {
                lx.next();
            }
            Some(Tok::Slash) => {
                lx.next();
                divide = true;
            }
            _ => break,
        }
    }
    if !saw_factor {
        return Err(Error::parse(lx.here(), "expected a functional term"));
    }
    Ok(acc.scale(&coeff))
}

/// Parse a sum of functional terms over the named dual generators.
pub fn parse_dual(ctx: &QzContext, s: &str) -> Result<DualElement> {
    let mut lx = lex(s)?;
    let mut acc = dual_term(ctx, &mut lx)?;
    loop {
        match lx.peek() {
            Some(Tok::Plus) => {
                lx.next();
                acc = acc.add(&dual_term(ctx, &mut lx)?);
            }
            Some(Tok::Minus) => {
                lx.next();
                acc = acc.sub(&dual_term(ctx, &mut lx)?);
            }
            None => return Ok(acc),
            _ => return Err(Error::parse(lx.here(), "trailing input after functional")),
        }
    }
}

/// Parse `<dual-expr> (x) <q-expr>` into a double element.
pub fn parse_double(ctx: &QzContext, s: &str) -> Result<DoubleElement> {
    let Some(split) = s.find("(x)") else {
        return Err(Error::parse(0, "expected `<dual> (x) <element>`"));
    };
    let f = parse_dual(ctx, &s[..split])?;
    let h = parse_qelement(ctx, &s[split + 3..])?;
    DoubleElement::tensor(&f, &h)
}

/// Result of evaluating a CLI expression.
#[derive(Clone, Debug)]
pub enum EvalOutput {
    Scalar(RatFunc),
    Element(QElement),
}

impl std::fmt::Display for EvalOutput {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            EvalOutput::Scalar(v) => write!(f, "{v}"),
            EvalOutput::Element(e) => write!(f, "{e}"),
        }
    }
}

/// Evaluate a top-level expression: `sigma(a, b)`, `sigma_inv(a, b)`,
/// `v(a)`, `u(a)`, `vartheta(a)`, `upsilon(a)`, `nf(a)`, `counit(a)`,
/// `antipode(a)`, `eval(F, a)`, or a bare element.
pub fn eval_expression(ctx: &QzContext, s: &str) -> Result<EvalOutput> {
    let trimmed = s.trim_start();
    let head: String = trimmed
        .chars()
        .take_while(|c| c.is_ascii_alphanumeric() || *c == '_')
        .collect();
    let rest = trimmed[head.len()..].trim_start();
    if !rest.starts_with('(') {
        return Ok(EvalOutput::Element(parse_qelement(ctx, s)?));
    }
    let args = split_call_args(rest)?;
    match (head.as_str(), args.len()) {
        ("sigma", 2) => {
            let a = parse_qelement(ctx, &args[0])?;
            let b = parse_qelement(ctx, &args[1])?;
            Ok(EvalOutput::Scalar(crate::sigma::sigma_eval(
                ctx,
                &a,
                &b,
                crate::sigma::Sign::Plus,
            )?))
        }
        ("sigma_inv", 2) => {
            let a = parse_qelement(ctx, &args[0])?;
            let b = parse_qelement(ctx, &args[1])?;
            Ok(EvalOutput::Scalar(crate::sigma::sigma_eval(
                ctx,
                &a,
                &b,
                crate::sigma::Sign::Minus,
            )?))
        }
        ("v", 1) => Ok(EvalOutput::Scalar(crate::sigma::v_eval(
            ctx,
            &parse_qelement(ctx, &args[0])?,
        )?)),
        ("u", 1) => Ok(EvalOutput::Scalar(crate::sigma::u_eval(
            ctx,
            &parse_qelement(ctx, &args[0])?,
        )?)),
        ("vartheta", 1) => Ok(EvalOutput::Scalar(crate::sigma::vartheta_eval(
            ctx,
            &parse_qelement(ctx, &args[0])?,
        )?)),
        ("upsilon", 1) => Ok(EvalOutput::Scalar(crate::sigma::upsilon_eval(
            ctx,
            &parse_qelement(ctx, &args[0])?,
        )?)),
        ("nf", 1) => Ok(EvalOutput::Element(parse_qelement(ctx, &args[0])?)),
        ("counit", 1) => Ok(EvalOutput::Scalar(qmatrix::counit(&parse_qelement(
            ctx, &args[0],
        )?))),
        ("antipode", 1) => Ok(EvalOutput::Element(qmatrix::antipode(
            ctx,
            &parse_qelement(ctx, &args[0])?,
        ))),
        ("antipode_inv", 1) => Ok(EvalOutput::Element(qmatrix::antipode_inv(
            ctx,
            &parse_qelement(ctx, &args[0])?,
        ))),
        ("detq", 0) => Ok(EvalOutput::Element(qmatrix::detq(ctx))),
        ("eval", 2) => {
            let f = parse_dual(ctx, &args[0])?;
            let h = parse_qelement(ctx, &args[1])?;
            Ok(EvalOutput::Scalar(crate::functionals::eval(ctx, &f, &h)?))
        }
        _ => Err(Error::parse(
            0,
            format!("unknown expression form `{head}` with {} arguments", args.len()),
        )),
    }
}

/// Split `(arg, arg, ...)` at top-level commas.
fn split_call_args(s: &str) -> Result<Vec<String>> {
    let s = s.trim();
    if !s.starts_with('(') || !s.ends_with(')') {
        return Err(Error::parse(0, "malformed argument list"));
    }
    let inner = &s[1..s.len() - 1];
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    let mut depth = 0usize;
    let mut args = Vec::new();
    let mut start = 0;
    for (i, c) in inner.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => {
                depth = depth
                    .checked_sub(1)
                    .ok_or_else(|| Error::parse(i, "unbalanced parentheses"))?;
            }
            ',' if depth == 0 => {
                args.push(inner[start..i].to_string());
                start = i + 1;
            }
            _ => {}
        }
    }
    args.push(inner[start..].to_string());
    Ok(args)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn ctx2() -> QzContext {
        QzContext::new(2).unwrap()
    }

    #[test]
    fn scalar_forms() {
        let ctx = ctx2();
        assert_eq!(parse_scalar(&ctx, "q - q^-1").unwrap(), ctx.q_minus_q_inv());
        assert_eq!(parse_scalar(&ctx, "z*q").unwrap(), ctx.z().mul(&ctx.q()));
        assert_eq!(
            parse_scalar(&ctx, "(t^4 - 2) / t^3").unwrap(),
            RatFunc::new(
                crate::scalar::IntPoly::from_coeffs(
                    [-2i64, 0, 0, 0, 1].iter().map(|&c| c.into()).collect()
                ),
                crate::scalar::IntPoly::term(1.into(), 3)
            )
            .unwrap()
        );
        assert!(parse_scalar(&ctx, "1 / (q - q)").is_err());
    }

    #[test]
    fn element_grammar() {
        let ctx = ctx2();
        // normal form applies during parsing
        let e = parse_qelement(&ctx, "x[2,2]x[1,1]").unwrap();
        let expect = parse_qelement(&ctx, "x[1,1]x[2,2] + (q - q^-1) x[1,2]x[2,1]").unwrap();
        assert_eq!(e, expect);
        // determinant powers
        let d = parse_qelement(&ctx, "x[2,2] * det^-1").unwrap();
        assert_eq!(d, qmatrix::antipode(&ctx, &QElement::generator(&ctx, 1, 1).unwrap()));
        // parse errors carry a position
        assert!(matches!(
            parse_qelement(&ctx, "x[1,1] &"),
            Err(Error::Parse { .. })
        ));
        assert!(parse_qelement(&ctx, "x[3,1]").is_err());
    }

    #[test]
    fn functional_grammar() {
        let ctx = ctx2();
        let e = parse_dual(&ctx, "Khat_inv[2] l[2,1]").unwrap();
        let expect =
            named_generator(&ctx, NamedGenerator::E(1)).unwrap();
        assert_eq!(e, expect);
        let f = parse_dual(&ctx, "(q - q^-1)^-2 * r_inv[1] r[1,2]").unwrap();
        let expect = named_generator(&ctx, NamedGenerator::F(1)).unwrap();
        assert_eq!(f, expect);
    }

    #[test]
    fn expression_dispatch() {
        let ctx = ctx2();
        // sigma(x[1,2], x[2,1]) = z (q - q^-1)
        let out = eval_expression(&ctx, "sigma(x[1,2], x[2,1])").unwrap();
        match out {
            EvalOutput::Scalar(v) => {
                assert_eq!(v, ctx.z().mul(&ctx.q_minus_q_inv()));
            }
            _ => panic!("expected scalar"),
        }
        // eval(E[1], x[1,2]) = q - q^-1
        let out = eval_expression(&ctx, "eval(E[1], x[1,2])").unwrap();
        match out {
            EvalOutput::Scalar(v) => assert_eq!(v, ctx.q_minus_q_inv()),
            _ => panic!("expected scalar"),
        }
    }

    #[test]
    fn print_parse_round_trip() {
        let ctx = ctx2();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..25 {
            let mut e = QElement::zero(2);
            for _ in 0..rng.gen_range(1..=3) {
                let len = rng.gen_range(0..=3);
                let word: Vec<Gen> = (0..len)
                    .map(|_| Gen::new(rng.gen_range(1..=2), rng.gen_range(1..=2)))
                    .collect();
                let coeff = match rng.gen_range(0..4) {
                    0 => RatFunc::one(),
                    1 => ctx.q(),
                    2 => ctx.q_pow(-1).neg(),
                    _ => ctx.q_minus_q_inv(),
                };
                let det = rng.gen_range(-1..=1);
                e = e.add(&qmatrix::normal_form(&ctx, coeff, det, &word).unwrap());
            }
            let printed = e.to_string();
            if e.is_zero() {
                continue;
            }
            let parsed = parse_qelement(&ctx, &printed).unwrap();
            assert_eq!(parsed, e, "round trip failed for `{printed}`");
        }
    }
}
