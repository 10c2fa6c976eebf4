//! Lexer, parser and printer for the rule language.
//!
//! The grammar, one rule per statement (attributes attach to the rule that
//! follows them):
//!
//! ```text
//! attr  := "#[" ("status"|"source"|"note") ":" text "]"
//! rule  := "rule" id ":" [clause] sum "==" sum { "==" sum }
//! clause:= ["forall" param+] ["|" cond {"," cond}] "::"
//! sum   := ["-"] [coef ["*"]] term { ("+"|"-") [coef ["*"]] term }
//! coef  := int ["/" int]
//! term  := ("t"|"N") "(" linform {"," linform} ";" linform-with-n ")"
//! cond  := "odd(" param ")"
//!        | "gcd(" param "," param ")=1"
//!        | param "*" param ("≡"|"!≡") int {"," int} "(mod" int ")"
//!        | linform ("≡"|"!≡") int {"," int} "(mod" int ")"
//!        | "n" "≡" int {"," int} "(mod" int ")"
//!        | int "|" "n" [("+"|"-") linform]
//!        | "n" ">=" int
//!        | "legendre_exists(p|" param "," param "*(" int "n" "+" int param "))"
//! linform := ["-"] part { ("+"|"-") part }
//! part  := int [param] | param | "(" linform ")" ["/" int]
//! ```
//!
//! Lines starting with `#` (and not `#[`) are comments.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::{Cond, IdentityRule, LinForm, Param, Rational, Status, Sum, TermKind, TermRef};

/// Parse failure with a 1-based source position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

impl core::fmt::Display for ParseError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.col, self.msg)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(i64),
    LParen,
    RParen,
    Comma,
    Semi,
    Colon,
    ColonColon,
    EqEq,
    Eq,
    Plus,
    Minus,
    Star,
    Slash,
    Pipe,
    Cong,
    NotCong,
    Ge,
    /// Full text of a `#[key: value]` attribute line.
    Attr(String),
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

struct Lexer<'a> {
    chars: core::iter::Peekable<core::str::Chars<'a>>,
    line: usize,
    col: usize,
}

impl<'a> Lexer<'a> {
    fn new(text: &'a str) -> Self {
        Lexer {
            chars: text.chars().peekable(),
            line: 1,
            col: 1,
        }
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn err(&self, msg: impl Into<String>) -> ParseError {
        ParseError {
            line: self.line,
            col: self.col,
            msg: msg.into(),
        }
    }

    fn lex(mut self) -> Result<Vec<Spanned>, ParseError> {
        let mut out = Vec::new();
        while let Some(&c) = self.chars.peek() {
            let (line, col) = (self.line, self.col);
            let push = |out: &mut Vec<Spanned>, tok| out.push(Spanned { tok, line, col });
            match c {
                c if c.is_whitespace() => {
                    self.bump();
                }
                '#' => {
                    self.bump();
                    if self.chars.peek() == Some(&'[') {
                        self.bump();
                        let mut body = String::new();
                        loop {
                            match self.bump() {
                                Some(']') => break,
                                Some('\n') | None => {
                                    return Err(self.err("unterminated attribute, expected ']'"))
                                }
                                Some(ch) => body.push(ch),
                            }
                        }
                        push(&mut out, Tok::Attr(body));
                    } else {
                        while let Some(&ch) = self.chars.peek() {
                            if ch == '\n' {
                                break;
                            }
                            self.bump();
                        }
                    }
                }
                c if c.is_ascii_digit() => {
                    let mut v: i64 = 0;
                    while let Some(&d) = self.chars.peek() {
                        if let Some(digit) = d.to_digit(10) {
                            v = v
                                .checked_mul(10)
                                .and_then(|v| v.checked_add(digit as i64))
                                .ok_or_else(|| self.err("integer literal overflows i64"))?;
                            self.bump();
                        } else {
                            break;
                        }
                    }
                    push(&mut out, Tok::Int(v));
                }
                c if c.is_ascii_alphabetic() || c == '_' => {
                    let mut s = String::new();
                    while let Some(&ch) = self.chars.peek() {
                        if ch.is_ascii_alphanumeric() || ch == '_' || ch == '.' {
                            s.push(ch);
                            self.bump();
                        } else {
                            break;
                        }
                    }
                    push(&mut out, Tok::Ident(s));
                }
                '(' => {
                    self.bump();
                    push(&mut out, Tok::LParen);
                }
                ')' => {
                    self.bump();
                    push(&mut out, Tok::RParen);
                }
                ',' => {
                    self.bump();
                    push(&mut out, Tok::Comma);
                }
                ';' => {
                    self.bump();
                    push(&mut out, Tok::Semi);
                }
                '+' => {
                    self.bump();
                    push(&mut out, Tok::Plus);
                }
                '-' => {
                    self.bump();
                    push(&mut out, Tok::Minus);
                }
                '*' => {
                    self.bump();
                    push(&mut out, Tok::Star);
                }
                '/' => {
                    self.bump();
                    push(&mut out, Tok::Slash);
                }
                '|' => {
                    self.bump();
                    push(&mut out, Tok::Pipe);
                }
                '≡' => {
                    self.bump();
                    push(&mut out, Tok::Cong);
                }
                '!' => {
                    self.bump();
                    if self.chars.peek() == Some(&'≡') {
                        self.bump();
                        push(&mut out, Tok::NotCong);
                    } else {
                        return Err(self.err("expected '≡' after '!'"));
                    }
                }
                ':' => {
                    self.bump();
                    if self.chars.peek() == Some(&':') {
                        self.bump();
                        push(&mut out, Tok::ColonColon);
                    } else {
                        push(&mut out, Tok::Colon);
                    }
                }
                '=' => {
                    self.bump();
                    if self.chars.peek() == Some(&'=') {
                        self.bump();
                        push(&mut out, Tok::EqEq);
                    } else {
                        push(&mut out, Tok::Eq);
                    }
                }
                '>' => {
                    self.bump();
                    if self.chars.peek() == Some(&'=') {
                        self.bump();
                        push(&mut out, Tok::Ge);
                    } else {
                        return Err(self.err("expected '=' after '>'"));
                    }
                }
                other => return Err(self.err(format!("unexpected character '{other}'"))),
            }
        }
        Ok(out)
    }
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|s| &s.tok)
    }

    fn peek_at(&self, ahead: usize) -> Option<&Tok> {
        self.toks.get(self.pos + ahead).map(|s| &s.tok)
    }

    fn here(&self) -> (usize, usize) {
        self.toks
            .get(self.pos.min(self.toks.len().saturating_sub(1)))
            .map(|s| (s.line, s.col))
            .unwrap_or((1, 1))
    }

    fn err(&self, msg: impl Into<String>) -> ParseError {
        let (line, col) = self.here();
        ParseError {
            line,
            col,
            msg: msg.into(),
        }
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|s| s.tok.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<(), ParseError> {
        match self.peek() {
            Some(t) if *t == want => {
                self.pos += 1;
                Ok(())
            }
            Some(t) => Err(self.err(format!("expected {what}, found {t:?}"))),
            None => Err(self.err(format!("expected {what}, found end of input"))),
        }
    }

    fn eat(&mut self, want: &Tok) -> bool {
        if self.peek() == Some(want) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn int(&mut self, what: &str) -> Result<i64, ParseError> {
        match self.next() {
            Some(Tok::Int(v)) => Ok(v),
            other => Err(self.err(format!("expected {what}, found {other:?}"))),
        }
    }

    fn param(&mut self, declared: &[Param]) -> Result<Param, ParseError> {
        match self.next() {
            Some(Tok::Ident(s)) => {
                let p = Param::from_name(&s)
                    .ok_or_else(|| self.err(format!("unknown parameter '{s}'")))?;
                if !declared.contains(&p) {
                    return Err(self.err(format!("parameter '{s}' is not declared by forall")));
                }
                Ok(p)
            }
            other => Err(self.err(format!("expected parameter, found {other:?}"))),
        }
    }

    /// `["-"] part { (+|-) part }`; `allow_n` gates the `n` symbol.
    fn linform(&mut self, declared: &[Param], allow_n: bool) -> Result<LinForm, ParseError> {
        let mut form = LinForm {
            n_coef: 0,
            constant: 0,
            params: [0; 4],
            div: 1,
        };
        let mut sign = if self.eat(&Tok::Minus) { -1i64 } else { 1 };
        loop {
            let part = self.linform_part(declared, allow_n)?;
            add_scaled(&mut form, &part, sign).map_err(|m| self.err(m))?;
            if self.eat(&Tok::Plus) {
                sign = 1;
            } else if self.eat(&Tok::Minus) {
                sign = -1;
            } else {
                break;
            }
        }
        Ok(form)
    }

    fn linform_part(&mut self, declared: &[Param], allow_n: bool) -> Result<LinForm, ParseError> {
        match self.peek() {
            Some(Tok::Int(_)) => {
                let Some(Tok::Int(v)) = self.next() else {
                    unreachable!()
                };
                // an identifier straight after an integer is a coefficient
                if let Some(Tok::Ident(_)) = self.peek() {
                    let mut part = self.symbol_part(declared, allow_n)?;
                    scale_form(&mut part, v).map_err(|m| self.err(m))?;
                    Ok(part)
                } else {
                    Ok(LinForm::constant(v))
                }
            }
            Some(Tok::Ident(_)) => self.symbol_part(declared, allow_n),
            Some(Tok::LParen) => {
                self.next();
                let inner = self.linform(declared, allow_n)?;
                self.expect(Tok::RParen, "')'")?;
                if self.eat(&Tok::Slash) {
                    let d = self.int("divisor")?;
                    if d < 1 {
                        return Err(self.err("divisor must be positive"));
                    }
                    let mut f = inner;
                    f.div *= d;
                    Ok(f)
                } else {
                    Ok(inner)
                }
            }
            other => Err(self.err(format!("expected linear form, found {other:?}"))),
        }
    }

    fn symbol_part(&mut self, declared: &[Param], allow_n: bool) -> Result<LinForm, ParseError> {
        match self.next() {
            Some(Tok::Ident(s)) if s == "n" => {
                if !allow_n {
                    return Err(self.err("'n' is not allowed in a coefficient position"));
                }
                Ok(LinForm {
                    n_coef: 1,
                    constant: 0,
                    params: [0; 4],
                    div: 1,
                })
            }
            Some(Tok::Ident(s)) => {
                let p = Param::from_name(&s)
                    .ok_or_else(|| self.err(format!("unknown symbol '{s}'")))?;
                if !declared.contains(&p) {
                    return Err(self.err(format!("parameter '{s}' is not declared by forall")));
                }
                let mut params = [0i64; 4];
                params[p.index()] = 1;
                Ok(LinForm {
                    n_coef: 0,
                    constant: 0,
                    params,
                    div: 1,
                })
            }
            other => Err(self.err(format!("expected symbol, found {other:?}"))),
        }
    }

    fn residue_list(&mut self) -> Result<Vec<u64>, ParseError> {
        let mut residues = Vec::new();
        loop {
            let r = self.int("residue")?;
            if r < 0 {
                return Err(self.err("residues must be non-negative"));
            }
            residues.push(r as u64);
            // a residue list continues over a comma only when an integer
            // follows that is not itself the start of a divisibility atom
            let continues = self.peek() == Some(&Tok::Comma)
                && matches!(self.peek_at(1), Some(Tok::Int(_)))
                && !matches!(self.peek_at(2), Some(Tok::Pipe));
            if continues {
                self.next();
            } else {
                break;
            }
        }
        Ok(residues)
    }

    fn modulus_group(&mut self, residues: &[u64]) -> Result<u64, ParseError> {
        self.expect(Tok::LParen, "'(mod m)'")?;
        match self.next() {
            Some(Tok::Ident(s)) if s == "mod" => {}
            other => return Err(self.err(format!("expected 'mod', found {other:?}"))),
        }
        let m = self.int("modulus")?;
        self.expect(Tok::RParen, "')'")?;
        if m < 1 {
            return Err(self.err("modulus must be positive"));
        }
        // an unreduced residue would make the condition silently unsatisfiable
        if let Some(r) = residues.iter().find(|&&r| r >= m as u64) {
            return Err(self.err(format!("residue {r} is not reduced modulo {m}")));
        }
        Ok(m as u64)
    }

    fn cond(&mut self, declared: &[Param]) -> Result<Cond, ParseError> {
        match self.peek() {
            Some(Tok::Ident(s)) if s == "odd" => {
                self.next();
                self.expect(Tok::LParen, "'('")?;
                let p = self.param(declared)?;
                self.expect(Tok::RParen, "')'")?;
                Ok(Cond::Odd(p))
            }
            Some(Tok::Ident(s)) if s == "gcd" => {
                self.next();
                self.expect(Tok::LParen, "'('")?;
                let x = self.param(declared)?;
                self.expect(Tok::Comma, "','")?;
                let y = self.param(declared)?;
                self.expect(Tok::RParen, "')'")?;
                self.expect(Tok::Eq, "'='")?;
                let one = self.int("1")?;
                if one != 1 {
                    return Err(self.err("only gcd(...)=1 is supported"));
                }
                Ok(Cond::Coprime(x, y))
            }
            Some(Tok::Ident(s)) if s == "legendre_exists" => {
                self.next();
                self.expect(Tok::LParen, "'('")?;
                match self.next() {
                    Some(Tok::Ident(p)) if p == "p" => {}
                    other => return Err(self.err(format!("expected 'p', found {other:?}"))),
                }
                self.expect(Tok::Pipe, "'|'")?;
                let divisor = self.param(declared)?;
                self.expect(Tok::Comma, "','")?;
                let outer = self.param(declared)?;
                self.expect(Tok::Star, "'*'")?;
                self.expect(Tok::LParen, "'('")?;
                let n_coef = self.int("n coefficient")?;
                match self.next() {
                    Some(Tok::Ident(s)) if s == "n" => {}
                    other => return Err(self.err(format!("expected 'n', found {other:?}"))),
                }
                self.expect(Tok::Plus, "'+'")?;
                let param_coef = self.int("parameter coefficient")?;
                let inner = self.param(declared)?;
                if inner != outer {
                    return Err(
                        self.err("legendre_exists inner parameter must match the outer one")
                    );
                }
                self.expect(Tok::RParen, "')'")?;
                self.expect(Tok::RParen, "')'")?;
                Ok(Cond::LegendreExists {
                    divisor,
                    outer,
                    n_coef,
                    param_coef,
                })
            }
            Some(Tok::Ident(s)) if s == "n" => {
                self.next();
                if self.eat(&Tok::Ge) {
                    let min = self.int("bound")?;
                    if min < 0 {
                        return Err(self.err("bound must be non-negative"));
                    }
                    return Ok(Cond::NMin(min as u64));
                }
                self.expect(Tok::Cong, "'≡'")?;
                let residues = self.residue_list()?;
                let modulus = self.modulus_group(&residues)?;
                Ok(Cond::NCong {
                    modulus,
                    residues,
                    shift: LinForm::constant(0),
                })
            }
            Some(Tok::Int(_)) if self.peek_at(1) == Some(&Tok::Pipe) => {
                let m = self.int("modulus")?;
                if m < 1 {
                    return Err(self.err("modulus must be positive"));
                }
                self.expect(Tok::Pipe, "'|'")?;
                match self.next() {
                    Some(Tok::Ident(s)) if s == "n" => {}
                    other => return Err(self.err(format!("expected 'n', found {other:?}"))),
                }
                let shift = if self.eat(&Tok::Minus) {
                    self.linform(declared, false)?
                } else if self.eat(&Tok::Plus) {
                    let mut f = self.linform(declared, false)?;
                    scale_form(&mut f, -1).map_err(|m| self.err(m))?;
                    f
                } else {
                    LinForm::constant(0)
                };
                Ok(Cond::NCong {
                    modulus: m as u64,
                    residues: alloc::vec![0],
                    shift,
                })
            }
            // `x*y ≡ ...` or a general parameter linear form congruence
            Some(Tok::Ident(_)) if self.peek_at(1) == Some(&Tok::Star) => {
                let x = self.param(declared)?;
                self.expect(Tok::Star, "'*'")?;
                let y = self.param(declared)?;
                let negated = self.cong_op()?;
                let residues = self.residue_list()?;
                let modulus = self.modulus_group(&residues)?;
                Ok(Cond::ProductCong {
                    x,
                    y,
                    modulus,
                    residues,
                    negated,
                })
            }
            _ => {
                let form = self.linform(declared, false)?;
                let negated = self.cong_op()?;
                let residues = self.residue_list()?;
                let modulus = self.modulus_group(&residues)?;
                Ok(Cond::ParamCong {
                    form,
                    modulus,
                    residues,
                    negated,
                })
            }
        }
    }

    fn cong_op(&mut self) -> Result<bool, ParseError> {
        if self.eat(&Tok::Cong) {
            Ok(false)
        } else if self.eat(&Tok::NotCong) {
            Ok(true)
        } else {
            Err(self.err("expected '≡' or '!≡'"))
        }
    }

    fn term(&mut self, declared: &[Param]) -> Result<TermRef, ParseError> {
        let kind = match self.next() {
            Some(Tok::Ident(s)) if s == "t" => TermKind::T,
            Some(Tok::Ident(s)) if s == "N" => TermKind::N,
            other => return Err(self.err(format!("expected term 't' or 'N', found {other:?}"))),
        };
        self.expect(Tok::LParen, "'('")?;
        let mut coeff_forms = Vec::new();
        loop {
            coeff_forms.push(self.linform(declared, false)?);
            if !self.eat(&Tok::Comma) {
                break;
            }
        }
        self.expect(Tok::Semi, "';'")?;
        let arg = self.linform(declared, true)?;
        if arg.n_coef < 1 {
            return Err(self.err("term argument must contain n with a positive coefficient"));
        }
        self.expect(Tok::RParen, "')'")?;
        if coeff_forms.is_empty() {
            return Err(self.err("term needs at least one coefficient"));
        }
        Ok(TermRef {
            kind,
            coeff_forms,
            arg,
        })
    }

    fn sum(&mut self, declared: &[Param]) -> Result<Sum, ParseError> {
        let mut out = Vec::new();
        let mut sign = if self.eat(&Tok::Minus) { -1i64 } else { 1 };
        loop {
            let rat = if let Some(Tok::Int(_)) = self.peek() {
                let num = self.int("coefficient")?;
                let den = if self.eat(&Tok::Slash) {
                    let d = self.int("denominator")?;
                    if d < 1 {
                        return Err(self.err("denominator must be positive"));
                    }
                    d
                } else {
                    1
                };
                self.eat(&Tok::Star);
                Rational::new(sign * num, den)
            } else {
                Rational::new(sign, 1)
            };
            let term = self.term(declared)?;
            out.push((rat, term));
            if self.eat(&Tok::Plus) {
                sign = 1;
            } else if self.eat(&Tok::Minus) {
                sign = -1;
            } else {
                break;
            }
        }
        Ok(out)
    }

    fn rule(&mut self, attrs: RuleAttrs) -> Result<IdentityRule, ParseError> {
        match self.next() {
            Some(Tok::Ident(s)) if s == "rule" => {}
            other => return Err(self.err(format!("expected 'rule', found {other:?}"))),
        }
        let id = match self.next() {
            Some(Tok::Ident(s)) => s,
            other => return Err(self.err(format!("expected rule id, found {other:?}"))),
        };
        self.expect(Tok::Colon, "':'")?;

        let mut params = Vec::new();
        let mut conds = Vec::new();
        let mut has_clause = false;
        if let Some(Tok::Ident(s)) = self.peek() {
            if s == "forall" {
                has_clause = true;
                self.next();
                while let Some(Tok::Ident(s)) = self.peek() {
                    let Some(p) = Param::from_name(s) else { break };
                    params.push(p);
                    self.next();
                }
                if params.is_empty() {
                    return Err(self.err("forall needs at least one parameter"));
                }
            }
        }
        if self.eat(&Tok::Pipe) {
            has_clause = true;
            loop {
                conds.push(self.cond(&params)?);
                if !self.eat(&Tok::Comma) {
                    break;
                }
            }
        }
        if has_clause {
            self.expect(Tok::ColonColon, "'::'")?;
        }

        let mut sides = Vec::new();
        sides.push(self.sum(&params)?);
        while self.eat(&Tok::EqEq) {
            sides.push(self.sum(&params)?);
        }
        if sides.len() < 2 {
            return Err(self.err("a rule needs at least two sides joined by '=='"));
        }

        Ok(IdentityRule {
            id,
            params,
            conds,
            sides,
            status: attrs.status.unwrap_or(Status::Theorem),
            source: attrs.source.unwrap_or_default(),
            note: attrs.note,
        })
    }
}

#[derive(Default)]
struct RuleAttrs {
    status: Option<Status>,
    source: Option<String>,
    note: Option<String>,
}

impl RuleAttrs {
    fn apply(
        &mut self,
        body: &str,
        err_at: impl Fn(String) -> ParseError,
    ) -> Result<(), ParseError> {
        let Some((key, value)) = body.split_once(':') else {
            return Err(err_at(format!("malformed attribute '#[{body}]'")));
        };
        let value = value.trim().to_string();
        match key.trim() {
            "status" => {
                self.status = Some(match value.as_str() {
                    "theorem" => Status::Theorem,
                    "conjecture" => Status::Conjecture,
                    other => return Err(err_at(format!("unknown status '{other}'"))),
                })
            }
            "source" => self.source = Some(value),
            "note" => self.note = Some(value),
            other => return Err(err_at(format!("unknown attribute key '{other}'"))),
        }
        Ok(())
    }
}

fn scale_form(form: &mut LinForm, c: i64) -> Result<(), String> {
    let scale = |v: i64| v.checked_mul(c).ok_or("coefficient overflows 64 bits");
    form.n_coef = scale(form.n_coef)?;
    form.constant = scale(form.constant)?;
    for v in &mut form.params {
        *v = scale(*v)?;
    }
    Ok(())
}

fn add_scaled(acc: &mut LinForm, part: &LinForm, sign: i64) -> Result<(), String> {
    // bring both onto a common denominator
    let overflow = || "linear form overflows 64 bits".to_string();
    let g = crate::arith::gcd(acc.div.unsigned_abs(), part.div.unsigned_abs()) as i64;
    let lcm = (acc.div / g).checked_mul(part.div).ok_or_else(overflow)?;
    let sa = lcm / acc.div;
    let sp = sign * (lcm / part.div);
    let combine = |x: i64, y: i64| {
        x.checked_mul(sa)
            .and_then(|x| y.checked_mul(sp).and_then(|y| x.checked_add(y)))
            .ok_or_else(overflow)
    };
    acc.n_coef = combine(acc.n_coef, part.n_coef)?;
    acc.constant = combine(acc.constant, part.constant)?;
    for i in 0..4 {
        acc.params[i] = combine(acc.params[i], part.params[i])?;
    }
    acc.div = lcm;
    Ok(())
}

/// Parses a rule file: any number of rules with optional attribute lines.
pub fn parse_rules(text: &str) -> Result<Vec<IdentityRule>, ParseError> {
    let toks = Lexer::new(text).lex()?;
    let mut parser = Parser { toks, pos: 0 };
    let mut rules = Vec::new();
    let mut attrs = RuleAttrs::default();
    loop {
        match parser.peek() {
            None => break,
            Some(Tok::Attr(_)) => {
                let (line, col) = parser.here();
                let Some(Tok::Attr(body)) = parser.next() else {
                    unreachable!()
                };
                attrs.apply(&body, |msg| ParseError { line, col, msg })?;
            }
            Some(_) => {
                let rule = parser.rule(core::mem::take(&mut attrs))?;
                rules.push(rule);
            }
        }
    }
    Ok(rules)
}

/// Parses exactly one rule.
pub fn parse_rule(text: &str) -> Result<IdentityRule, ParseError> {
    let rules = parse_rules(text)?;
    match rules.len() {
        1 => Ok(rules.into_iter().next().unwrap()),
        n => Err(ParseError {
            line: 1,
            col: 1,
            msg: format!("expected exactly one rule, found {n}"),
        }),
    }
}

fn print_rational(rat: &Rational, out: &mut String) {
    if rat.den == 1 {
        if rat.num != 1 {
            out.push_str(&format!("{} ", rat.num));
        }
    } else {
        out.push_str(&format!("{}/{} ", rat.num, rat.den));
    }
}

fn print_term(term: &TermRef, out: &mut String) {
    out.push_str(match term.kind {
        TermKind::T => "t(",
        TermKind::N => "N(",
    });
    for (i, f) in term.coeff_forms.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str(&format!("{f}"));
    }
    out.push_str(&format!("; {})", term.arg));
}

fn print_sum(sum: &Sum, out: &mut String) {
    for (i, (rat, term)) in sum.iter().enumerate() {
        let mut rat = *rat;
        if i > 0 {
            out.push_str(if rat.num < 0 { " - " } else { " + " });
            rat.num = rat.num.abs();
        } else if rat.num < 0 {
            out.push_str("- ");
            rat.num = rat.num.abs();
        }
        print_rational(&rat, out);
        print_term(term, out);
    }
}

fn print_cond(cond: &Cond, out: &mut String) {
    match cond {
        Cond::Odd(p) => out.push_str(&format!("odd({})", p.name())),
        Cond::Coprime(x, y) => out.push_str(&format!("gcd({},{})=1", x.name(), y.name())),
        Cond::ParamCong {
            form,
            modulus,
            residues,
            negated,
        } => {
            out.push_str(&format!("{form} {} ", if *negated { "!≡" } else { "≡" }));
            push_residues(residues, out);
            out.push_str(&format!(" (mod {modulus})"));
        }
        Cond::ProductCong {
            x,
            y,
            modulus,
            residues,
            negated,
        } => {
            out.push_str(&format!(
                "{}*{} {} ",
                x.name(),
                y.name(),
                if *negated { "!≡" } else { "≡" }
            ));
            push_residues(residues, out);
            out.push_str(&format!(" (mod {modulus})"));
        }
        Cond::NCong {
            modulus,
            residues,
            shift,
        } => {
            if shift.is_zero() {
                out.push_str("n ≡ ");
                push_residues(residues, out);
                out.push_str(&format!(" (mod {modulus})"));
            } else {
                out.push_str(&format!("{modulus} | n - {shift}"));
            }
        }
        Cond::NMin(min) => out.push_str(&format!("n >= {min}")),
        Cond::LegendreExists {
            divisor,
            outer,
            n_coef,
            param_coef,
        } => {
            out.push_str(&format!(
                "legendre_exists(p|{}, {}*({}n+{}{}))",
                divisor.name(),
                outer.name(),
                n_coef,
                param_coef,
                outer.name()
            ));
        }
    }
}

fn push_residues(residues: &[u64], out: &mut String) {
    for (i, r) in residues.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str(&format!("{r}"));
    }
}

/// Canonical text of a rule, attributes included. `parse_rule(print_rule(r))`
/// reproduces `r` exactly.
pub fn print_rule(rule: &IdentityRule) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "#[status: {}]\n",
        match rule.status {
            Status::Theorem => "theorem",
            Status::Conjecture => "conjecture",
        }
    ));
    if !rule.source.is_empty() {
        out.push_str(&format!("#[source: {}]\n", rule.source));
    }
    if let Some(note) = &rule.note {
        out.push_str(&format!("#[note: {note}]\n"));
    }
    out.push_str(&format!("rule {}: ", rule.id));
    if !rule.params.is_empty() {
        out.push_str("forall");
        for p in &rule.params {
            out.push_str(&format!(" {}", p.name()));
        }
        out.push(' ');
    }
    if !rule.conds.is_empty() {
        out.push_str("| ");
        for (i, cond) in rule.conds.iter().enumerate() {
            if i > 0 {
                out.push_str(", ");
            }
            print_cond(cond, &mut out);
        }
        out.push(' ');
    }
    if !rule.params.is_empty() || !rule.conds.is_empty() {
        out.push_str(":: ");
    }
    for (i, side) in rule.sides.iter().enumerate() {
        if i > 0 {
            out.push_str(" == ");
        }
        print_sum(side, &mut out);
    }
    out
}
