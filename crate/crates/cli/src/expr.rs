//! The restricted infix grammar for maps and its canonical printer.
//!
//! Expressions are built from the variable `z`, integer literals, the
//! constants `i` and `pi`, the operators `+ - * / ^` with parentheses
//! and implicit multiplication, and `exp(...)` for the exponential
//! second component. `pi` may appear only inside `exp(...)`. Every
//! string the printer emits re-parses to the same object.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use okaforge_core::algebra::{FactoredRational, GaussianRational, Polynomial, RationalFunction};
use okaforge_core::maps::{ExpCoeff, MapPair, SecondComponent};
use okaforge_core::numeric::{find_roots, Dyadic};
use okaforge_core::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Z,
    I,
    Pi,
    Exp,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let bytes: Vec<char> = s.chars().collect();
    let mut pos = 0;
    while pos < bytes.len() {
        let c = bytes[pos];
        match c {
            ' ' | '\t' | '\n' | '\r' => pos += 1,
            '+' => {
                out.push(Tok::Plus);
                pos += 1;
            }
            '-' | '−' => {
                out.push(Tok::Minus);
                pos += 1;
            }
            '*' => {
                out.push(Tok::Star);
                pos += 1;
            }
            '/' => {
                out.push(Tok::Slash);
                pos += 1;
            }
            '^' => {
                out.push(Tok::Caret);
                pos += 1;
            }
            '(' => {
                out.push(Tok::LParen);
                pos += 1;
            }
            ')' => {
                out.push(Tok::RParen);
                pos += 1;
            }
            '0'..='9' => {
                let start = pos;
                while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                    pos += 1;
                }
                let text: String = bytes[start..pos].iter().collect();
                let n = text
                    .parse::<BigInt>()
                    .map_err(|_| Error::InvalidParameter(format!("invalid integer `{text}`")))?;
                out.push(Tok::Int(n));
            }
            'a'..='z' | 'A'..='Z' => {
                let start = pos;
                while pos < bytes.len() && bytes[pos].is_ascii_alphabetic() {
                    pos += 1;
                }
                let word: String = bytes[start..pos].iter().collect();
                out.push(match word.as_str() {
                    "z" => Tok::Z,
                    "i" => Tok::I,
                    "pi" => Tok::Pi,
                    "exp" => Tok::Exp,
                    other => {
                        return Err(Error::InvalidParameter(format!(
                            "unknown identifier `{other}` (expected z, i, pi, or exp)"
                        )))
                    }
                });
            }
            other => {
                return Err(Error::InvalidParameter(format!(
                    "unexpected character `{other}` in expression"
                )))
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone)]
enum Ast {
    Int(BigInt),
    Z,
    I,
    Pi,
    Exp(Box<Ast>),
    Neg(Box<Ast>),
    Add(Box<Ast>, Box<Ast>),
    Sub(Box<Ast>, Box<Ast>),
    Mul(Box<Ast>, Box<Ast>),
    Div(Box<Ast>, Box<Ast>),
    Pow(Box<Ast>, i64),
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, t: Tok) -> Result<()> {
        match self.next() {
            Some(found) if found == t => Ok(()),
            other => Err(Error::InvalidParameter(format!(
                "expected {t:?}, found {other:?}"
            ))),
        }
    }

    fn expr(&mut self) -> Result<Ast> {
        let mut left = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    let right = self.term()?;
                    left = Ast::Add(Box::new(left), Box::new(right));
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    let right = self.term()?;
                    left = Ast::Sub(Box::new(left), Box::new(right));
                }
                _ => return Ok(left),
            }
        }
    }

    fn term(&mut self) -> Result<Ast> {
        let mut left = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    let right = self.unary()?;
                    left = Ast::Mul(Box::new(left), Box::new(right));
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    let right = self.unary()?;
                    left = Ast::Div(Box::new(left), Box::new(right));
                }
                Some(Tok::Int(_) | Tok::Z | Tok::I | Tok::Pi | Tok::Exp | Tok::LParen) => {
                    let right = self.unary()?;
                    left = Ast::Mul(Box::new(left), Box::new(right));
                }
                _ => return Ok(left),
            }
        }
    }

    fn unary(&mut self) -> Result<Ast> {
        if matches!(self.peek(), Some(Tok::Minus)) {
            self.pos += 1;
            return Ok(Ast::Neg(Box::new(self.unary()?)));
        }
        if matches!(self.peek(), Some(Tok::Plus)) {
            self.pos += 1;
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Ast> {
        let base = self.atom()?;
        if matches!(self.peek(), Some(Tok::Caret)) {
            self.pos += 1;
            let exponent = self.exponent()?;
            return Ok(Ast::Pow(Box::new(base), exponent));
        }
        Ok(base)
    }

    fn exponent(&mut self) -> Result<i64> {
        let mut negate = false;
        let mut parens = false;
        if matches!(self.peek(), Some(Tok::LParen)) {
            self.pos += 1;
            parens = true;
        }
        if matches!(self.peek(), Some(Tok::Minus)) {
            self.pos += 1;
            negate = true;
        }
        let n = match self.next() {
            Some(Tok::Int(n)) => n,
            other => {
                return Err(Error::InvalidParameter(format!(
                    "exponent must be an integer literal, found {other:?}"
                )))
            }
        };
        if parens {
            self.expect(Tok::RParen)?;
        }
        let mut value: i64 = i64::try_from(&n)
            .map_err(|_| Error::InvalidParameter(format!("exponent {n} is out of range")))?;
        if negate {
            value = -value;
        }
        Ok(value)
    }

    fn atom(&mut self) -> Result<Ast> {
        match self.next() {
            Some(Tok::Int(n)) => Ok(Ast::Int(n)),
            Some(Tok::Z) => Ok(Ast::Z),
            Some(Tok::I) => Ok(Ast::I),
            Some(Tok::Pi) => Ok(Ast::Pi),
            Some(Tok::Exp) => {
                self.expect(Tok::LParen)?;
                let inner = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(Ast::Exp(Box::new(inner)))
            }
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(inner)
            }
            other => Err(Error::InvalidParameter(format!(
                "expected a value, found {other:?}"
            ))),
        }
    }
}

fn parse_ast(s: &str) -> Result<Ast> {
    let toks = lex(s)?;
    if toks.is_empty() {
        return Err(Error::InvalidParameter("empty expression".into()));
    }
    let mut parser = Parser { toks, pos: 0 };
    let ast = parser.expr()?;
    if parser.pos != parser.toks.len() {
        return Err(Error::InvalidParameter(format!(
            "trailing input after expression near token {}",
            parser.pos
        )));
    }
    Ok(ast)
}

fn eval_rational(ast: &Ast) -> Result<RationalFunction> {
    match ast {
        Ast::Int(n) => Ok(RationalFunction::constant(GaussianRational::new(
            BigRational::from_integer(n.clone()),
            BigRational::zero(),
        ))),
        Ast::Z => Ok(RationalFunction::z()),
        Ast::I => Ok(RationalFunction::constant(GaussianRational::i())),
        Ast::Pi => Err(Error::InvalidParameter(
            "pi is only allowed inside exp(...)".into(),
        )),
        Ast::Exp(_) => Err(Error::InvalidParameter(
            "exp(...) is only allowed as the entire second component".into(),
        )),
        Ast::Neg(a) => Ok(-&eval_rational(a)?),
        Ast::Add(a, b) => Ok(&eval_rational(a)? + &eval_rational(b)?),
        Ast::Sub(a, b) => Ok(&eval_rational(a)? - &eval_rational(b)?),
        Ast::Mul(a, b) => Ok(&eval_rational(a)? * &eval_rational(b)?),
        Ast::Div(a, b) => {
            let den = eval_rational(b)?;
            if den.is_zero() {
                return Err(Error::InvalidParameter("division by zero".into()));
            }
            Ok(&eval_rational(a)? / &den)
        }
        Ast::Pow(a, k) => {
            let base = eval_rational(a)?;
            if base.is_zero() && *k < 0 {
                return Err(Error::InvalidParameter(
                    "zero cannot be raised to a negative power".into(),
                ));
            }
            Ok(base.pow(*k))
        }
    }
}

/// A monomial `coeff * pi^p * z^q`, the value domain for exp arguments.
#[derive(Debug, Clone)]
struct PiMonomial {
    coeff: GaussianRational,
    pi: i64,
    z: i64,
}

fn eval_exp_arg(ast: &Ast) -> Result<PiMonomial> {
    let bad = || Error::InvalidParameter("the exponent of exp must reduce to (constant)*z".into());
    match ast {
        Ast::Int(n) => Ok(PiMonomial {
            coeff: GaussianRational::new(BigRational::from_integer(n.clone()), BigRational::zero()),
            pi: 0,
            z: 0,
        }),
        Ast::Z => Ok(PiMonomial {
            coeff: GaussianRational::one(),
            pi: 0,
            z: 1,
        }),
        Ast::I => Ok(PiMonomial {
            coeff: GaussianRational::i(),
            pi: 0,
            z: 0,
        }),
        Ast::Pi => Ok(PiMonomial {
            coeff: GaussianRational::one(),
            pi: 1,
            z: 0,
        }),
        Ast::Exp(_) => Err(bad()),
        Ast::Neg(a) => {
            let m = eval_exp_arg(a)?;
            Ok(PiMonomial {
                coeff: -m.coeff,
                ..m
            })
        }
        Ast::Add(a, b) | Ast::Sub(a, b) => {
            let left = eval_exp_arg(a)?;
            let mut right = eval_exp_arg(b)?;
            if matches!(ast, Ast::Sub(_, _)) {
                right.coeff = -right.coeff;
            }
            if left.coeff.is_zero() {
                return Ok(right);
            }
            if right.coeff.is_zero() {
                return Ok(left);
            }
            if left.pi != right.pi || left.z != right.z {
                return Err(bad());
            }
            Ok(PiMonomial {
                coeff: &left.coeff + &right.coeff,
                pi: left.pi,
                z: left.z,
            })
        }
        Ast::Mul(a, b) => {
            let left = eval_exp_arg(a)?;
            let right = eval_exp_arg(b)?;
            Ok(PiMonomial {
                coeff: &left.coeff * &right.coeff,
                pi: left.pi + right.pi,
                z: left.z + right.z,
            })
        }
        Ast::Div(a, b) => {
            let left = eval_exp_arg(a)?;
            let right = eval_exp_arg(b)?;
            if right.coeff.is_zero() {
                return Err(Error::InvalidParameter("division by zero".into()));
            }
            Ok(PiMonomial {
                coeff: &left.coeff / &right.coeff,
                pi: left.pi - right.pi,
                z: left.z - right.z,
            })
        }
        Ast::Pow(a, k) => {
            let base = eval_exp_arg(a)?;
            if *k < 0 && (base.z != 0 || base.pi != 0) {
                return Err(bad());
            }
            if base.coeff.is_zero() && *k < 0 {
                return Err(Error::InvalidParameter(
                    "zero cannot be raised to a negative power".into(),
                ));
            }
            Ok(PiMonomial {
                coeff: base.coeff.pow(*k),
                pi: base.pi * k,
                z: base.z * k,
            })
        }
    }
}

/// Parses a rational expression in `z` (no `pi`, no `exp`).
pub fn parse_rational(s: &str) -> Result<RationalFunction> {
    eval_rational(&parse_ast(s)?)
}

/// Parses a constant expression to an exact Gaussian rational.
pub fn parse_constant(s: &str) -> Result<GaussianRational> {
    let rf = parse_rational(s)?;
    rf.as_constant()
        .ok_or_else(|| Error::InvalidParameter(format!("`{s}` is not a constant")))
}

/// Parses a positive rational (radius-style) constant.
pub fn parse_positive_ratio(s: &str) -> Result<BigRational> {
    let c = parse_constant(s)?;
    if !c.im.is_zero() || c.re <= BigRational::zero() {
        return Err(Error::InvalidParameter(format!(
            "`{s}` is not a positive real rational"
        )));
    }
    Ok(c.re)
}

fn continued_fraction_convergents(x: &BigRational, max_den: &BigInt) -> Vec<BigRational> {
    let mut out = Vec::new();
    let mut frac = x.clone();
    let mut p_prev = BigInt::zero();
    let mut p_curr = BigInt::one();
    let mut q_prev = BigInt::one();
    let mut q_curr = BigInt::zero();
    for _ in 0..128 {
        let a = frac.floor().to_integer();
        let rem = &frac - BigRational::from_integer(a.clone());
        let p_next = &a * &p_curr + &p_prev;
        let q_next = &a * &q_curr + &q_prev;
        if q_next > *max_den {
            break;
        }
        out.push(BigRational::new(p_next.clone(), q_next.clone()));
        p_prev = p_curr;
        p_curr = p_next;
        q_prev = q_curr;
        q_curr = q_next;
        if rem.is_zero() {
            break;
        }
        frac = rem.recip();
    }
    out
}

fn extract_rational_roots(p: &Polynomial) -> Result<Vec<(GaussianRational, i64)>> {
    let mut out: Vec<(GaussianRational, i64)> = Vec::new();
    if p.degree().unwrap_or(0) == 0 {
        return Ok(out);
    }
    let max_den = BigInt::from(1u64 << 24);
    let not_split = || {
        Error::InvalidSecondComponent(
            "the second component must factor into linear factors with Gaussian rational roots"
                .into(),
        )
    };
    for (factor, mult) in p.squarefree_decomposition() {
        if factor.degree().unwrap_or(0) == 0 {
            continue;
        }
        let roots = find_roots(&factor, &Dyadic::from_pow2(-50), 2048)?;
        for root in &roots {
            let re_cands = continued_fraction_convergents(&root.ball.re.to_rational(), &max_den);
            let im_cands = continued_fraction_convergents(&root.ball.im.to_rational(), &max_den);
            let mut found = None;
            'outer: for re in &re_cands {
                for im in &im_cands {
                    let cand = GaussianRational::new(re.clone(), im.clone());
                    if factor.eval(&cand).is_zero() && root.ball.contains_gaussian(&cand) {
                        found = Some(cand);
                        break 'outer;
                    }
                }
            }
            let root_value = found.ok_or_else(not_split)?;
            out.push((root_value, mult as i64));
        }
    }
    Ok(out)
}

/// Converts a rational function into factored form, requiring every
/// root and pole to be an exact Gaussian rational.
pub fn to_factored(rf: &RationalFunction) -> Result<FactoredRational> {
    if rf.is_zero() {
        return Err(Error::InvalidSecondComponent(
            "the second component must not vanish identically".into(),
        ));
    }
    let mut factors = extract_rational_roots(rf.numerator())?;
    for (root, mult) in extract_rational_roots(rf.denominator())? {
        factors.push((root, -mult));
    }
    let scale = rf.numerator().leading() / rf.denominator().leading();
    let factored = FactoredRational::new(scale, factors)?;
    if &factored.expand() != rf {
        return Err(Error::InvalidSecondComponent(
            "the second component must factor into linear factors with Gaussian rational roots"
                .into(),
        ));
    }
    Ok(factored)
}

fn split_top_level_comma(s: &str) -> Option<(&str, &str)> {
    let mut depth = 0i32;
    for (idx, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => return Some((&s[..idx], &s[idx + c.len_utf8()..])),
            _ => {}
        }
    }
    None
}

fn strip_outer_parens(s: &str) -> Option<&str> {
    let t = s.trim();
    if !t.starts_with('(') || !t.ends_with(')') {
        return None;
    }
    let mut depth = 0i32;
    for (idx, c) in t.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth == 0 && idx + 1 != t.len() {
                    return None;
                }
            }
            _ => {}
        }
    }
    Some(&t[1..t.len() - 1])
}

/// Parses a second-component expression: `exp(...)` or a factorable
/// rational function.
pub fn parse_second(s: &str) -> Result<SecondComponent> {
    let ast = parse_ast(s)?;
    if let Ast::Exp(arg) = &ast {
        let m = eval_exp_arg(arg)?;
        if m.z != 1 || m.pi < 0 || m.pi > 1 || m.coeff.is_zero() {
            return Err(Error::InvalidParameter(
                "the exponent of exp must be a nonzero multiple of z (optionally times pi)".into(),
            ));
        }
        return Ok(SecondComponent::ExpLinear(ExpCoeff::new(m.coeff, m.pi == 1)));
    }
    let rf = eval_rational(&ast)?;
    Ok(SecondComponent::Factored(to_factored(&rf)?))
}

/// Parses a `(first, second)` map expression.
pub fn parse_map(s: &str) -> Result<MapPair> {
    let mut body = s.trim();
    let mut split = split_top_level_comma(body);
    while split.is_none() {
        match strip_outer_parens(body) {
            Some(inner) => {
                body = inner.trim();
                split = split_top_level_comma(body);
            }
            None => {
                return Err(Error::InvalidParameter(
                    "expected a map of the form (first, second)".into(),
                ))
            }
        }
    }
    let (first_str, second_str) = split.expect("split found");
    let first = parse_rational(first_str)?;
    let second = parse_second(second_str.trim())?;
    MapPair::new(first, second)
}

/// Renders a real rational as `a` or `a/b`.
pub fn ratio_str(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

fn gaussian_raw(g: &GaussianRational) -> String {
    if g.im.is_zero() {
        return ratio_str(&g.re);
    }
    let im_part = |q: &BigRational| -> String {
        if q.is_one() {
            "i".into()
        } else if *q == -BigRational::one() {
            "-i".into()
        } else {
            format!("{}*i", ratio_str(q))
        }
    };
    if g.re.is_zero() {
        return im_part(&g.im);
    }
    if g.im.is_negative() {
        let abs = -g.im.clone();
        let tail = if abs.is_one() {
            "i".into()
        } else {
            format!("{}*i", ratio_str(&abs))
        };
        format!("{} - {}", ratio_str(&g.re), tail)
    } else {
        format!("{} + {}", ratio_str(&g.re), im_part(&g.im))
    }
}

/// Renders a Gaussian rational as a standalone atom, parenthesizing
/// anything that is not a plain nonnegative integer or `i`.
pub fn gaussian_atom(g: &GaussianRational) -> String {
    let raw = gaussian_raw(g);
    let simple = raw == "i"
        || (!raw.contains(' ')
            && !raw.contains('/')
            && !raw.contains('-')
            && !raw.contains('i'));
    if simple {
        raw
    } else {
        format!("({raw})")
    }
}

/// Renders a polynomial as a sum of monomials in descending degree.
pub fn poly_expr(p: &Polynomial) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let degree = p.degree().unwrap_or(0);
    let mut out = String::new();
    for k in (0..=degree).rev() {
        let c = p.coeff(k);
        if c.is_zero() {
            continue;
        }
        let real_negative = c.im.is_zero() && c.re.is_negative();
        let (sign, magnitude) = if real_negative {
            (
                "-",
                GaussianRational::new(-c.re.clone(), BigRational::zero()),
            )
        } else {
            ("", c.clone())
        };
        let zp = match k {
            0 => String::new(),
            1 => "z".into(),
            _ => format!("z^{k}"),
        };
        let body = if zp.is_empty() {
            gaussian_atom(&magnitude)
        } else if magnitude == GaussianRational::one() {
            zp
        } else {
            format!("{}*{zp}", gaussian_atom(&magnitude))
        };
        if out.is_empty() {
            if sign == "-" {
                out.push('-');
            }
            out.push_str(&body);
        } else {
            out.push_str(if sign == "-" { " - " } else { " + " });
            out.push_str(&body);
        }
    }
    out
}

/// Renders a rational function, quotient form only when needed.
pub fn ratfunc_expr(rf: &RationalFunction) -> String {
    if rf.denominator().degree().unwrap_or(0) == 0
        && rf.denominator().coeff(0) == GaussianRational::one()
    {
        poly_expr(rf.numerator())
    } else {
        format!(
            "({})/({})",
            poly_expr(rf.numerator()),
            poly_expr(rf.denominator())
        )
    }
}

/// Renders a factored second component as a product of linear powers.
pub fn factored_expr(g: &FactoredRational) -> String {
    let mut parts: Vec<String> = Vec::new();
    let scale = g.scale();
    let mut prefix = "";
    if *scale == -GaussianRational::one() {
        prefix = "-";
    } else if *scale != GaussianRational::one() {
        parts.push(gaussian_atom(scale));
    }
    for (root, mult) in g.factors() {
        let base = if root.is_zero() {
            "z".to_string()
        } else if root.im.is_zero() && root.re.is_negative() {
            format!(
                "(z + {})",
                ratio_str(&-root.re.clone())
            )
        } else {
            format!("(z - {})", gaussian_atom(root))
        };
        let piece = if *mult == 1 {
            base
        } else if base == "z" {
            format!("z^{mult}")
        } else {
            format!("{base}^{mult}")
        };
        parts.push(piece);
    }
    if parts.is_empty() {
        parts.push("1".into());
    }
    format!("{prefix}{}", parts.join("*"))
}

/// Renders an exponential second component.
pub fn exp_expr(l: &ExpCoeff) -> String {
    let mut parts: Vec<String> = Vec::new();
    if l.coeff == -GaussianRational::one() {
        parts.push("-1".into());
    } else if l.coeff != GaussianRational::one() {
        parts.push(gaussian_atom(&l.coeff));
    }
    if l.has_pi {
        parts.push("pi".into());
    }
    parts.push("z".into());
    format!("exp({})", parts.join("*"))
}

/// Renders either flavor of second component.
pub fn second_expr(s: &SecondComponent) -> String {
    match s {
        SecondComponent::Factored(g) => factored_expr(g),
        SecondComponent::ExpLinear(l) => exp_expr(l),
    }
}

/// Renders a full map pair; the output re-parses with [`parse_map`].
pub fn map_expr(m: &MapPair) -> String {
    format!("({}, {})", ratfunc_expr(&m.first), second_expr(&m.second))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gi(re: i64, im: i64) -> GaussianRational {
        GaussianRational::from_parts(re, im)
    }

    #[test]
    fn parses_quotients_with_implicit_multiplication() {
        let rf = parse_rational("1/((z-1)(z+1))").unwrap();
        assert_eq!(rf.numerator(), &Polynomial::one());
        assert_eq!(
            rf.denominator(),
            &Polynomial::new(vec![gi(-1, 0), gi(0, 0), gi(1, 0)])
        );
        let sum = parse_rational("z + 1/z").unwrap();
        assert_eq!(
            sum.numerator(),
            &Polynomial::new(vec![gi(1, 0), gi(0, 0), gi(1, 0)])
        );
        assert_eq!(sum.denominator(), &Polynomial::new(vec![gi(0, 0), gi(1, 0)]));
    }

    #[test]
    fn parses_negative_exponents_and_complex_constants() {
        let rf = parse_rational("(z - i)^-2 (1/2 + 3/4*i)").unwrap();
        assert_eq!(rf.numerator().degree(), Some(0));
        assert_eq!(rf.denominator().degree(), Some(2));
        assert!(parse_rational("pi*z").is_err());
        assert!(parse_rational("exp(z)").is_err());
        assert!(parse_rational("w + 1").is_err());
    }

    #[test]
    fn parses_maps_with_both_second_flavors() {
        let m = parse_map("(1/((z-1)(z+1)), z^2)").unwrap();
        match &m.second {
            SecondComponent::Factored(g) => {
                assert_eq!(g.factors(), &[(gi(0, 0), 2)]);
            }
            other => panic!("expected factored, got {other:?}"),
        }
        let e = parse_map("((z-1)^2/z, exp(z))").unwrap();
        assert!(matches!(
            &e.second,
            SecondComponent::ExpLinear(l) if *l == ExpCoeff::one()
        ));
        let p = parse_map("(z + 1/z, exp(pi*i*z))").unwrap();
        assert!(matches!(
            &p.second,
            SecondComponent::ExpLinear(l) if *l == ExpCoeff::pi_i()
        ));
    }

    #[test]
    fn factoring_recovers_roots_poles_and_scale() {
        let g = to_factored(&parse_rational("3*(z-1)^2/(z+2)").unwrap()).unwrap();
        assert_eq!(g.scale(), &gi(3, 0));
        let mut factors = g.factors().to_vec();
        factors.sort_by_key(|(_, m)| *m);
        assert_eq!(factors, vec![(gi(-2, 0), -1), (gi(1, 0), 2)]);

        let half = to_factored(&parse_rational("(2*z - 1)^2").unwrap()).unwrap();
        assert_eq!(half.scale(), &gi(4, 0));
        assert_eq!(
            half.factors(),
            &[(
                GaussianRational::new(
                    BigRational::new(1.into(), 2.into()),
                    BigRational::zero()
                ),
                2
            )]
        );

        assert!(to_factored(&parse_rational("z^2 + z + 1").unwrap()).is_err());
    }

    #[test]
    fn printer_output_reparses_to_the_same_map() {
        let samples = [
            "(1/((z-1)(z+1)), z^2)",
            "((z-1)^2/z, exp(z))",
            "(z + 1/z, exp(pi*i*z))",
            "((z-3)^2/(z-2), z/(z-1))",
            "(1/(z(z-2)), (z-1)^-1)",
            "(z, -2*(z-i)^3*(z+1/2)^-1)",
            "((1/2)*z^2 - i*z + 3, exp(-(1/2)*i*z))",
        ];
        for s in samples {
            let m = parse_map(s).unwrap();
            let printed = map_expr(&m);
            let again = parse_map(&printed).unwrap();
            assert_eq!(m, again, "round trip failed for {s} -> {printed}");
        }
    }

    #[test]
    fn convergents_find_small_denominators() {
        let x = BigRational::new(355.into(), 113.into());
        let cands = continued_fraction_convergents(&x, &BigInt::from(1000));
        assert!(cands.contains(&x));
    }
}
