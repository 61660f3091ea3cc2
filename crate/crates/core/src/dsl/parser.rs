use std::collections::{BTreeMap, BTreeSet};

use num_traits::{ToPrimitive, Zero};

use crate::arith::{Rational, Scalar};
use crate::calculus::LambdaPoly;
use crate::conformal::{ConformalAlgebra, ConformalElement, CoreError, GeneratorDecl, Generators, Parity};

use super::lexer::{lex, Tok, Token};
use super::{ErrorKind, ParseError, SourceSpan};

#[derive(Clone, Debug)]
enum Factor {
    Number(Rational),
    Ident(String),
    Lam(usize),
    D(usize),
    Group(Expr),
}

#[derive(Clone, Debug)]
struct Term {
    factors: Vec<(Factor, SourceSpan)>,
    span: SourceSpan,
}

#[derive(Clone, Debug)]
struct Expr {
    /// `(negated, term)`
    terms: Vec<(bool, Term)>,
}

#[derive(Clone, Debug)]
enum Item {
    Param(String, SourceSpan),
    Generator(String, Parity, SourceSpan),
    Central(String, SourceSpan),
    Bracket {
        left: (String, SourceSpan),
        right: (String, SourceSpan),
        expr: Expr,
        span: SourceSpan,
    },
}

#[derive(Clone, Debug)]
struct AlgebraAst {
    name: String,
    span: SourceSpan,
    items: Vec<Item>,
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    errors: Vec<ParseError>,
}

type PResult<T> = Result<T, ParseError>;

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn span(&self) -> SourceSpan {
        self.toks[self.pos].span
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn unexpected(&self, wanted: &str) -> ParseError {
        ParseError {
            span: self.span(),
            kind: ErrorKind::Syntax,
            message: format!("expected {wanted}, found {}", self.peek().describe()),
        }
    }

    fn expect(&mut self, tok: Tok, wanted: &str) -> PResult<SourceSpan> {
        if *self.peek() == tok {
            Ok(self.bump().span)
        } else {
            Err(self.unexpected(wanted))
        }
    }

    fn ident(&mut self) -> PResult<(String, SourceSpan)> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                let sp = self.bump().span;
                Ok((s, sp))
            }
            _ => Err(self.unexpected("an identifier")),
        }
    }

    fn keyword(&mut self, kw: &str) -> PResult<SourceSpan> {
        match self.peek() {
            Tok::Ident(s) if s == kw => Ok(self.bump().span),
            _ => Err(self.unexpected(&format!("`{kw}`"))),
        }
    }

    fn small_int(&mut self) -> PResult<usize> {
        match self.peek().clone() {
            Tok::Int(n) => {
                let sp = self.bump().span;
                n.to_usize().filter(|&v| v <= 64).ok_or(ParseError {
                    span: sp,
                    kind: ErrorKind::Syntax,
                    message: "exponent out of range".into(),
                })
            }
            _ => Err(self.unexpected("an integer exponent")),
        }
    }

    fn file(&mut self) -> Vec<AlgebraAst> {
        let mut out = Vec::new();
        while *self.peek() != Tok::Eof {
            match self.algebra() {
                Ok(a) => out.push(a),
                Err(e) => {
                    self.errors.push(e);
                    // resynchronize on the next `algebra` keyword
                    while !matches!(self.peek(), Tok::Eof)
                        && !matches!(self.peek(), Tok::Ident(s) if s == "algebra")
                    {
                        self.bump();
                    }
                }
            }
        }
        if out.is_empty() && self.errors.is_empty() {
            self.errors.push(self.unexpected("`algebra`"));
        }
        out
    }

    fn algebra(&mut self) -> PResult<AlgebraAst> {
        self.keyword("algebra")?;
        let (name, span) = self.ident()?;
        self.expect(Tok::LBrace, "`{`")?;
        let mut items = Vec::new();
        loop {
            match self.peek() {
                Tok::RBrace => {
                    self.bump();
                    break;
                }
                Tok::Eof => return Err(self.unexpected("`}`")),
                _ => match self.item() {
                    Ok(item) => items.push(item),
                    Err(e) => {
                        self.errors.push(e);
                        self.recover();
                    }
                },
            }
        }
        Ok(AlgebraAst { name, span, items })
    }

    fn recover(&mut self) {
        loop {
            match self.peek() {
                Tok::Semi => {
                    self.bump();
                    return;
                }
                Tok::RBrace | Tok::Eof => return,
                _ => {
                    self.bump();
                }
            }
        }
    }

    fn item(&mut self) -> PResult<Item> {
        let start = self.span();
        let (kw, _) = self.ident()?;
        let item = match kw.as_str() {
            "param" => {
                let (n, sp) = self.ident()?;
                Item::Param(n, sp)
            }
            "central" => {
                let (n, sp) = self.ident()?;
                Item::Central(n, sp)
            }
            "generator" => {
                let (n, sp) = self.ident()?;
                self.expect(Tok::Colon, "`:`")?;
                let (p, psp) = self.ident()?;
                let parity = match p.as_str() {
                    "even" => Parity::Even,
                    "odd" => Parity::Odd,
                    _ => {
                        return Err(ParseError {
                            span: psp,
                            kind: ErrorKind::Syntax,
                            message: format!("parity must be `even` or `odd`, found `{p}`"),
                        })
                    }
                };
                Item::Generator(n, parity, sp)
            }
            "bracket" => {
                self.expect(Tok::LBracket, "`[`")?;
                let left = self.ident()?;
                self.expect(Tok::Comma, "`,`")?;
                let right = self.ident()?;
                self.expect(Tok::RBracket, "`]`")?;
                self.expect(Tok::Eq, "`=`")?;
                let expr = self.expr()?;
                Item::Bracket {
                    left,
                    right,
                    expr,
                    span: start.to(self.toks[self.pos.saturating_sub(1)].span),
                }
            }
            other => {
                return Err(ParseError {
                    span: start,
                    kind: ErrorKind::Syntax,
                    message: format!(
                        "unknown item `{other}`; expected param, generator, central or bracket"
                    ),
                })
            }
        };
        self.expect(Tok::Semi, "`;`")?;
        Ok(item)
    }

    fn expr(&mut self) -> PResult<Expr> {
        let mut terms = Vec::new();
        let mut neg = false;
        match self.peek() {
            Tok::Minus => {
                self.bump();
                neg = true;
            }
            Tok::Plus => {
                self.bump();
            }
            _ => {}
        }
        terms.push((neg, self.term()?));
        loop {
            let neg = match self.peek() {
                Tok::Plus => false,
                Tok::Minus => true,
                _ => break,
            };
            self.bump();
            terms.push((neg, self.term()?));
        }
        Ok(Expr { terms })
    }

    fn starts_factor(&self) -> bool {
        matches!(self.peek(), Tok::Int(_) | Tok::Ident(_) | Tok::LParen)
    }

    fn term(&mut self) -> PResult<Term> {
        let start = self.span();
        let mut factors = vec![self.factor()?];
        loop {
            if *self.peek() == Tok::Star {
                self.bump();
                factors.push(self.factor()?);
            } else if self.starts_factor() {
                factors.push(self.factor()?);
            } else {
                break;
            }
        }
        let end = factors.last().map(|f| f.1).unwrap_or(start);
        Ok(Term {
            factors,
            span: start.to(end),
        })
    }

    fn factor(&mut self) -> PResult<(Factor, SourceSpan)> {
        let start = self.span();
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                let mut value = Rational::from_integer(n);
                let mut end = start;
                if *self.peek() == Tok::Slash {
                    self.bump();
                    match self.peek().clone() {
                        Tok::Int(d) if !d.is_zero() => {
                            end = self.bump().span;
                            value /= Rational::from_integer(d);
                        }
                        _ => return Err(self.unexpected("a nonzero denominator")),
                    }
                }
                Ok((Factor::Number(value), start.to(end)))
            }
            Tok::Ident(name) => {
                self.bump();
                let power = |p: &mut Parser| -> PResult<usize> {
                    if *p.peek() == Tok::Caret {
                        p.bump();
                        p.small_int()
                    } else {
                        Ok(1)
                    }
                };
                let f = match name.as_str() {
                    "lam" => Factor::Lam(power(self)?),
                    "D" => Factor::D(power(self)?),
                    _ => Factor::Ident(name),
                };
                let end = self.toks[self.pos.saturating_sub(1)].span;
                Ok((f, start.to(end)))
            }
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                let end = self.expect(Tok::RParen, "`)`")?;
                Ok((Factor::Group(e), start.to(end)))
            }
            _ => Err(self.unexpected("a number, identifier, `lam`, `D` or `(`")),
        }
    }
}

/// Polynomial in λ and ∂ of degree at most one in the generators:
/// `(generator, λ-degree, ∂-degree) ↦ coefficient`.
#[derive(Clone, Debug, Default)]
struct Value(BTreeMap<(Option<usize>, usize, usize), Scalar>);

impl Value {
    fn constant(c: Scalar) -> Self {
        let mut v = Value::default();
        v.add((None, 0, 0), &c);
        v
    }

    fn add(&mut self, key: (Option<usize>, usize, usize), c: &Scalar) {
        let slot = self.0.entry(key).or_default();
        *slot += c;
        if slot.is_zero() {
            self.0.remove(&key);
        }
    }

    fn add_value(&mut self, other: &Value, negate: bool) {
        for (k, c) in &other.0 {
            if negate {
                self.add(*k, &-c);
            } else {
                self.add(*k, c);
            }
        }
    }

    fn mul(&self, other: &Value) -> Result<Value, ()> {
        let mut out = Value::default();
        for (&(g1, l1, d1), c1) in &self.0 {
            for (&(g2, l2, d2), c2) in &other.0 {
                let g = match (g1, g2) {
                    (Some(_), Some(_)) => return Err(()),
                    (a, None) | (None, a) => a,
                };
                out.add((g, l1 + l2, d1 + d2), &(c1 * c2));
            }
        }
        Ok(out)
    }
}

struct Scope<'a> {
    params: &'a BTreeSet<String>,
    gens: &'a Generators,
}

impl Scope<'_> {
    fn mentions_generator(&self, term: &Term) -> bool {
        term.factors
            .iter()
            .any(|(f, _)| matches!(f, Factor::Ident(n) if self.gens.index_of(n).is_some()))
    }

    fn eval_expr(&self, e: &Expr) -> PResult<Value> {
        let mut v = Value::default();
        for (neg, t) in &e.terms {
            v.add_value(&self.eval_term(t)?, *neg);
        }
        Ok(v)
    }

    fn eval_term(&self, t: &Term) -> PResult<Value> {
        let has_gen = self.mentions_generator(t);
        let mut v = Value::constant(Scalar::one());
        for (f, span) in &t.factors {
            let fv = self.eval_factor(f, *span, has_gen)?;
            v = v.mul(&fv).map_err(|_| ParseError {
                span: t.span,
                kind: ErrorKind::Syntax,
                message: "a term may contain at most one generator".into(),
            })?;
        }
        Ok(v)
    }

    fn eval_factor(&self, f: &Factor, span: SourceSpan, term_has_gen: bool) -> PResult<Value> {
        Ok(match f {
            Factor::Number(r) => Value::constant(Scalar::from(r.clone())),
            Factor::Lam(k) => {
                let mut v = Value::default();
                v.add((None, *k, 0), &Scalar::one());
                v
            }
            Factor::D(k) => {
                let mut v = Value::default();
                v.add((None, 0, *k), &Scalar::one());
                v
            }
            Factor::Group(e) => self.eval_expr(e)?,
            Factor::Ident(name) => {
                if self.params.contains(name) {
                    Value::constant(Scalar::param(name))
                } else if let Some(g) = self.gens.index_of(name) {
                    let mut v = Value::default();
                    v.add((Some(g), 0, 0), &Scalar::one());
                    v
                } else if term_has_gen {
                    return Err(ParseError {
                        span,
                        kind: ErrorKind::ParameterUndeclared,
                        message: format!("parameter `{name}` is not declared"),
                    });
                } else {
                    return Err(ParseError {
                        span,
                        kind: ErrorKind::UnknownGenerator,
                        message: format!("generator `{name}` is not declared"),
                    });
                }
            }
        })
    }

    /// Converts to λ-polynomial coefficients; every term needs a generator,
    /// and ∂ on a central generator gives zero.
    fn to_lambda_poly(&self, v: &Value, span: SourceSpan) -> PResult<LambdaPoly<ConformalElement>> {
        let mut coeffs: Vec<ConformalElement> = Vec::new();
        for (&(g, l, d), c) in &v.0 {
            let Some(g) = g else {
                return Err(ParseError {
                    span,
                    kind: ErrorKind::Syntax,
                    message: "every term must end in a generator (D binds to the generator on its right)"
                        .into(),
                });
            };
            if coeffs.len() <= l {
                coeffs.resize(l + 1, ConformalElement::zero());
            }
            coeffs[l].add_scaled(&self.gens.derivative(g, d), c);
        }
        Ok(LambdaPoly::new(coeffs))
    }
}

/// Syntax errors do not stop semantic checking of the items that did parse.
fn parse_asts(src: &str) -> Result<(Vec<AlgebraAst>, Vec<ParseError>), Vec<ParseError>> {
    let toks = lex(src)?;
    let mut p = Parser {
        toks,
        pos: 0,
        errors: Vec::new(),
    };
    let asts = p.file();
    Ok((asts, p.errors))
}

fn build(ast: &AlgebraAst, errors: &mut Vec<ParseError>) -> Option<ConformalAlgebra> {
    let before = errors.len();
    let mut params: Vec<String> = Vec::new();
    let mut decls: Vec<GeneratorDecl> = Vec::new();
    let mut names: BTreeSet<String> = BTreeSet::new();
    for item in &ast.items {
        let (name, span) = match item {
            Item::Param(n, s) | Item::Generator(n, _, s) | Item::Central(n, s) => (n, *s),
            Item::Bracket { .. } => continue,
        };
        if matches!(name.as_str(), "lam" | "D") || !names.insert(name.clone()) {
            errors.push(ParseError {
                span,
                kind: ErrorKind::Syntax,
                message: format!("`{name}` is reserved or already declared"),
            });
            continue;
        }
        match item {
            Item::Param(n, _) => params.push(n.clone()),
            Item::Generator(n, p, _) => decls.push(GeneratorDecl::free(n, *p)),
            Item::Central(n, _) => decls.push(GeneratorDecl::central(n)),
            Item::Bracket { .. } => unreachable!(),
        }
    }
    let gens = Generators::new(decls.clone());
    let param_set: BTreeSet<String> = params.iter().cloned().collect();
    let scope = Scope {
        params: &param_set,
        gens: &gens,
    };

    let mut table: BTreeMap<(usize, usize), LambdaPoly<ConformalElement>> = BTreeMap::new();
    let mut spans: BTreeMap<(usize, usize), SourceSpan> = BTreeMap::new();
    for item in &ast.items {
        let Item::Bracket {
            left,
            right,
            expr,
            span,
        } = item
        else {
            continue;
        };
        let mut ids = Vec::new();
        for (name, sp) in [left, right] {
            match gens.index_of(name) {
                Some(i) if gens.is_torsion(i) => errors.push(ParseError {
                    span: *sp,
                    kind: ErrorKind::TorsionMisuse,
                    message: format!("central generator `{name}` has only zero brackets"),
                }),
                Some(i) => ids.push(i),
                None => errors.push(ParseError {
                    span: *sp,
                    kind: ErrorKind::UnknownGenerator,
                    message: format!("generator `{name}` is not declared"),
                }),
            }
        }
        let [i, j] = ids[..] else { continue };
        if table.contains_key(&(i, j)) {
            errors.push(ParseError {
                span: *span,
                kind: ErrorKind::DuplicateBracket,
                message: format!("bracket [{}, {}] is declared twice", left.0, right.0),
            });
            continue;
        }
        let expected = decls[i].parity.add(decls[j].parity);
        let mut value = Value::default();
        let mut ok = true;
        for (neg, term) in &expr.terms {
            match scope.eval_term(term) {
                Ok(tv) => {
                    let mut seen = BTreeSet::new();
                    for &(g, _, _) in tv.0.keys() {
                        if let Some(g) = g {
                            if decls[g].parity != expected && seen.insert(g) {
                                ok = false;
                                errors.push(ParseError {
                                    span: term.span,
                                    kind: ErrorKind::ParityMismatch,
                                    message: format!(
                                        "[{}, {}] must be {expected}, but `{}` is {}",
                                        left.0, right.0, decls[g].name, decls[g].parity
                                    ),
                                });
                            }
                        }
                    }
                    value.add_value(&tv, *neg);
                }
                Err(e) => {
                    ok = false;
                    errors.push(e);
                }
            }
        }
        if !ok {
            continue;
        }
        match scope.to_lambda_poly(&value, *span) {
            Ok(p) => {
                table.insert((i, j), p);
                spans.insert((i, j), *span);
            }
            Err(e) => errors.push(e),
        }
    }
    if errors.len() > before {
        return None;
    }
    match ConformalAlgebra::new(&ast.name, params, decls, table) {
        Ok(a) => Some(a),
        Err(e) => {
            let (kind, span) = match &e {
                CoreError::SkewMismatch { left, right } => {
                    let i = gens.index_of(right).unwrap_or(0);
                    let j = gens.index_of(left).unwrap_or(0);
                    (ErrorKind::DuplicateBracket, spans.get(&(i, j)).copied().unwrap_or(ast.span))
                }
                CoreError::ParityMismatch { .. } => (ErrorKind::ParityMismatch, ast.span),
                CoreError::TorsionBracket(_) => (ErrorKind::TorsionMisuse, ast.span),
                CoreError::UndeclaredParameter(_) => (ErrorKind::ParameterUndeclared, ast.span),
                CoreError::UndeclaredGenerator(_) => (ErrorKind::UnknownGenerator, ast.span),
                _ => (ErrorKind::Syntax, ast.span),
            };
            errors.push(ParseError {
                span,
                kind,
                message: e.to_string(),
            });
            None
        }
    }
}

/// Parses every algebra in a `.lca` source.
pub fn parse_file(src: &str) -> Result<Vec<ConformalAlgebra>, Vec<ParseError>> {
    let (asts, mut errors) = parse_asts(src)?;
    let algebras: Vec<_> = asts.iter().filter_map(|a| build(a, &mut errors)).collect();
    if errors.is_empty() {
        Ok(algebras)
    } else {
        Err(errors)
    }
}

/// Parses a source holding exactly one algebra.
pub fn parse_algebra(src: &str) -> Result<ConformalAlgebra, Vec<ParseError>> {
    let mut all = parse_file(src)?;
    if all.len() != 1 {
        return Err(vec![ParseError {
            span: SourceSpan::new(0, src.len(), 1, 1),
            kind: ErrorKind::Syntax,
            message: format!("expected exactly one algebra, found {}", all.len()),
        }]);
    }
    Ok(all.remove(0))
}

/// Parses an element such as `D*L + 2*C` over the generators of `alg`.
pub fn parse_element(src: &str, alg: &ConformalAlgebra) -> Result<ConformalElement, Vec<ParseError>> {
    let toks = lex(src)?;
    let mut p = Parser {
        toks,
        pos: 0,
        errors: Vec::new(),
    };
    let expr = p.expr().map_err(|e| vec![e])?;
    if *p.peek() != Tok::Eof {
        return Err(vec![p.unexpected("end of input")]);
    }
    let params: BTreeSet<String> = alg.params().iter().cloned().collect();
    let scope = Scope {
        params: &params,
        gens: alg.generators(),
    };
    let whole = SourceSpan::new(0, src.len(), 1, 1);
    let v = scope.eval_expr(&expr).map_err(|e| vec![e])?;
    let poly = scope.to_lambda_poly(&v, whole).map_err(|e| vec![e])?;
    if poly.degree().unwrap_or(0) > 0 {
        return Err(vec![ParseError {
            span: whole,
            kind: ErrorKind::Syntax,
            message: "an element may not contain `lam`".into(),
        }]);
    }
    Ok(poly.coeff(0))
}
