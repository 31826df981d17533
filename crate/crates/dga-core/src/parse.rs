//! Parser for the presentation language:
//!
//! ```text
//! dga "<name>" over (Z | F<p>) {
//!   gen <id>:<deg>;          # optionally gen <id>:<deg> @<stage>;
//!   diff <id> = <poly>;
//!   rel <poly>;
//! }
//! ```
//!
//! A `<poly>` is an integer-linear combination of `*`-separated generator
//! words with `^` for repeated letters; bare integers are degree-0 scalars.
//! Whitespace is insignificant and `#` starts a line comment.

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{DgaError, Result};
use crate::poly::NcPoly;
use crate::presentation::DgaPresentation;
use crate::scalar::ScalarDomain;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Str(String),
    LBrace,
    RBrace,
    Semi,
    Colon,
    Eq,
    Star,
    Caret,
    Plus,
    Minus,
    At,
    Eof,
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(text: &str) -> Result<Vec<Spanned>> {
    let mut out = Vec::new();
    let mut line = 1usize;
    let mut col = 1usize;
    let mut chars = text.chars().peekable();
    macro_rules! err {
        ($l:expr, $c:expr, $($m:tt)*) => {
            return Err(DgaError::Parse { line: $l, col: $c, msg: format!($($m)*) })
        };
    }
    while let Some(&c) = chars.peek() {
        let (tl, tc) = (line, col);
        match c {
            '\n' => {
                chars.next();
                line += 1;
                col = 1;
            }
            c if c.is_whitespace() => {
                chars.next();
                col += 1;
            }
            '#' => {
                while let Some(&c) = chars.peek() {
                    if c == '\n' {
                        break;
                    }
                    chars.next();
                    col += 1;
                }
            }
            '"' => {
                chars.next();
                col += 1;
                let mut s = String::new();
                loop {
                    match chars.next() {
                        None => err!(tl, tc, "unterminated string"),
                        Some('\n') => err!(tl, tc, "unterminated string"),
                        Some('"') => {
                            col += 1;
                            break;
                        }
                        Some(c) => {
                            s.push(c);
                            col += 1;
                        }
                    }
                }
                out.push(Spanned { tok: Tok::Str(s), line: tl, col: tc });
            }
            c if c.is_ascii_digit() => {
                let mut s = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_digit() {
                        s.push(c);
                        chars.next();
                        col += 1;
                    } else {
                        break;
                    }
                }
                out.push(Spanned { tok: Tok::Int(s.parse().unwrap()), line: tl, col: tc });
            }
            c if c.is_alphabetic() || c == '_' => {
                let mut s = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_alphanumeric() || c == '_' || c == '\'' {
                        s.push(c);
                        chars.next();
                        col += 1;
                    } else {
                        break;
                    }
                }
                out.push(Spanned { tok: Tok::Ident(s), line: tl, col: tc });
            }
            _ => {
                chars.next();
                col += 1;
                let tok = match c {
                    '{' => Tok::LBrace,
                    '}' => Tok::RBrace,
                    ';' => Tok::Semi,
                    ':' => Tok::Colon,
                    '=' => Tok::Eq,
                    '*' => Tok::Star,
                    '^' => Tok::Caret,
                    '+' => Tok::Plus,
                    '-' => Tok::Minus,
                    '@' => Tok::At,
                    _ => err!(tl, tc, "unexpected character {c:?}"),
                };
                out.push(Spanned { tok, line: tl, col: tc });
            }
        }
    }
    out.push(Spanned { tok: Tok::Eof, line, col });
    Ok(out)
}

struct Parser<'a> {
    toks: &'a [Spanned],
    pos: usize,
    pres: DgaPresentation,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Spanned {
        &self.toks[self.pos]
    }

    fn next(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, at: &Spanned, msg: impl Into<String>) -> Result<T> {
        Err(DgaError::Parse { line: at.line, col: at.col, msg: msg.into() })
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<Spanned> {
        let t = self.next();
        if t.tok == tok {
            Ok(t)
        } else {
            self.error(&t, format!("expected {what}"))
        }
    }

    fn expect_ident(&mut self, what: &str) -> Result<(String, Spanned)> {
        let t = self.next();
        match &t.tok {
            Tok::Ident(s) => Ok((s.clone(), t.clone())),
            _ => self.error(&t, format!("expected {what}")),
        }
    }

    fn expect_keyword(&mut self, kw: &str) -> Result<()> {
        let t = self.next();
        match &t.tok {
            Tok::Ident(s) if s == kw => Ok(()),
            _ => self.error(&t, format!("expected keyword '{kw}'")),
        }
    }

    fn expect_int(&mut self, what: &str) -> Result<(BigInt, Spanned)> {
        let t = self.next();
        match &t.tok {
            Tok::Int(n) => Ok((n.clone(), t.clone())),
            _ => self.error(&t, format!("expected {what}")),
        }
    }

    fn gen_index(&self, name: &str, at: &Spanned) -> Result<usize> {
        match self.pres.gen_index(name) {
            Some(i) => Ok(i),
            None => self.error(at, format!("unknown generator {name}")),
        }
    }

    /// word := IDENT ('^' INT)? ('*' IDENT ('^' INT)?)*, with the leading
    /// factor already consumed by the caller as (name, span).
    fn parse_word_tail(&mut self, first: (String, Spanned)) -> Result<Vec<usize>> {
        let mut word = Vec::new();
        let mut cur = first;
        loop {
            let g = self.gen_index(&cur.0, &cur.1)?;
            let mut reps = 1usize;
            if self.peek().tok == Tok::Caret {
                self.next();
                let (n, at) = self.expect_int("exponent")?;
                reps = usize::try_from(&n)
                    .ok()
                    .filter(|&r| r >= 1)
                    .ok_or(())
                    .or_else(|_| self.error::<usize>(&at, "exponent must be a positive integer"))?;
            }
            word.extend(std::iter::repeat(g).take(reps));
            if self.peek().tok == Tok::Star {
                self.next();
                cur = self.expect_ident("generator after '*'")?;
            } else {
                break;
            }
        }
        Ok(word)
    }

    /// term := INT ('*' word)? | word
    fn parse_term(&mut self) -> Result<NcPoly> {
        let t = self.next();
        match t.tok.clone() {
            Tok::Int(n) => {
                if self.peek().tok == Tok::Star {
                    self.next();
                    let first = self.expect_ident("generator after '*'")?;
                    let word = self.parse_word_tail(first)?;
                    Ok(NcPoly::monomial(word, n))
                } else {
                    Ok(NcPoly::scalar(n))
                }
            }
            Tok::Ident(s) => {
                let word = self.parse_word_tail((s, t))?;
                Ok(NcPoly::monomial(word, BigInt::one()))
            }
            _ => self.error(&t, "expected a term (integer or generator word)"),
        }
    }

    /// poly := ('-')? term (('+'|'-') term)*
    fn parse_poly(&mut self) -> Result<NcPoly> {
        let mut negate = false;
        if self.peek().tok == Tok::Minus {
            self.next();
            negate = true;
        }
        let mut acc = self.parse_term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            match self.peek().tok {
                Tok::Plus => {
                    self.next();
                    acc = acc.add(&self.parse_term()?);
                }
                Tok::Minus => {
                    self.next();
                    acc = acc.sub(&self.parse_term()?);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn parse_ground(&mut self) -> Result<ScalarDomain> {
        let (s, at) = self.expect_ident("ground ring Z or F<p>")?;
        if s == "Z" {
            return Ok(ScalarDomain::Int);
        }
        if let Some(digits) = s.strip_prefix('F') {
            if let Ok(p) = digits.parse::<u64>() {
                let dom = ScalarDomain::Fp(p);
                return match dom.validate() {
                    Ok(dom) => Ok(dom),
                    Err(_) => self.error(&at, format!("modulus {p} is not prime")),
                };
            }
        }
        self.error(&at, format!("unknown ground ring {s}"))
    }

    fn parse_dga(&mut self) -> Result<()> {
        self.expect_keyword("dga")?;
        let t = self.next();
        let name = match &t.tok {
            Tok::Str(s) => s.clone(),
            _ => return self.error(&t, "expected quoted dga name"),
        };
        self.expect_keyword("over")?;
        let ground = self.parse_ground()?;
        self.pres = DgaPresentation::new(&name, ground);
        self.expect(Tok::LBrace, "'{'")?;
        loop {
            let t = self.next();
            match &t.tok {
                Tok::RBrace => break,
                Tok::Ident(kw) if kw == "gen" => {
                    let (name, at) = self.expect_ident("generator name")?;
                    if self.pres.gen_index(&name).is_some() {
                        return self.error(&at, format!("duplicate generator {name}"));
                    }
                    self.expect(Tok::Colon, "':'")?;
                    let (deg, dat) = self.expect_int("degree")?;
                    let deg = usize::try_from(&deg)
                        .ok()
                        .filter(|&d| d >= 1)
                        .ok_or(())
                        .or_else(|_| {
                            self.error::<usize>(&dat, "generator degree must be a positive integer")
                        })?;
                    let g = self.pres.add_gen(&name, deg);
                    if self.peek().tok == Tok::At {
                        self.next();
                        let (stage, sat) = self.expect_int("stage")?;
                        let stage = usize::try_from(&stage)
                            .ok()
                            .ok_or(())
                            .or_else(|_| self.error::<usize>(&sat, "stage out of range"))?;
                        self.pres.gens[g].stage = Some(stage);
                    }
                    self.expect(Tok::Semi, "';'")?;
                }
                Tok::Ident(kw) if kw == "diff" => {
                    let (name, at) = self.expect_ident("generator name")?;
                    let g = self.gen_index(&name, &at)?;
                    if !self.pres.diffs[g].is_zero() {
                        return self.error(&at, format!("duplicate differential for {name}"));
                    }
                    self.expect(Tok::Eq, "'='")?;
                    let p = self.parse_poly()?;
                    self.pres.set_diff(g, p);
                    self.expect(Tok::Semi, "';'")?;
                }
                Tok::Ident(kw) if kw == "rel" => {
                    let p = self.parse_poly()?;
                    self.pres.add_rel(p);
                    self.expect(Tok::Semi, "';'")?;
                }
                _ => return self.error(&t, "expected 'gen', 'diff', 'rel', or '}'"),
            }
        }
        Ok(())
    }
}

/// Parses and structurally validates one presentation.
pub fn parse(text: &str) -> Result<DgaPresentation> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks: &toks,
        pos: 0,
        pres: DgaPresentation::new("", ScalarDomain::Int),
    };
    p.parse_dga()?;
    let t = p.peek().clone();
    if t.tok != Tok::Eof {
        return p.error(&t, "trailing input after presentation");
    }
    let pres = p.pres;
    // Degree bookkeeping errors carry no source position; report them as
    // validation failures on the whole presentation.
    pres.check_structure()?;
    Ok(pres)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::NcPoly;

    #[test]
    fn parses_the_basic_example() {
        let p = parse("dga \"C\" over Z { gen e:1; diff e = 2; rel e^4; }").unwrap();
        assert_eq!(p.name, "C");
        assert_eq!(p.ground, ScalarDomain::Int);
        assert_eq!(p.gens.len(), 1);
        assert_eq!(p.gens[0].degree, 1);
        assert_eq!(p.diffs[0], NcPoly::scalar(BigInt::from(2)));
        assert_eq!(p.rels, vec![NcPoly::monomial(vec![0, 0, 0, 0], BigInt::one())]);
    }

    #[test]
    fn parses_scalar_only_presentation() {
        let p = parse("dga \"Fp\" over Z { rel 3; }").unwrap();
        assert!(p.gens.is_empty());
        assert_eq!(p.rels, vec![NcPoly::scalar(BigInt::from(3))]);
    }

    #[test]
    fn rejects_differential_degree_mismatch() {
        let e = parse("dga \"X\" over Z { gen e:1; diff e = e*e; }").unwrap_err();
        assert!(e.to_string().contains("degree mismatch"), "{e}");
    }

    #[test]
    fn rejects_unknown_generator_with_position() {
        let e = parse("dga \"X\" over Z {\n  gen e:1;\n  rel f^2;\n}").unwrap_err();
        match e {
            DgaError::Parse { line, col, msg } => {
                assert_eq!(line, 3);
                assert!(col > 0);
                assert!(msg.contains("unknown generator f"));
            }
            other => panic!("expected a parse error, got {other}"),
        }
    }

    #[test]
    fn rejects_non_prime_modulus() {
        let e = parse("dga \"X\" over F4 { }").unwrap_err();
        assert!(e.to_string().contains("not prime"));
        assert!(parse("dga \"X\" over F5 { }").is_ok());
    }

    #[test]
    fn comments_whitespace_and_signs() {
        let text = "
# a test presentation
dga \"T\" over Z {
  gen e:1; gen f:3;
  diff f = e^2;   # df = e*e
  rel 2*e*f - f*e + 3;
}";
        // The relation is inhomogeneous on purpose: parse must reject it
        // during structural validation, not during tokenization.
        let err = parse(text).unwrap_err();
        assert!(err.to_string().contains("homogeneous"));
        let ok = text.replace(" + 3", "");
        let p = parse(&ok).unwrap();
        let mut expect = NcPoly::monomial(vec![0, 1], BigInt::from(2));
        expect = expect.sub(&NcPoly::monomial(vec![1, 0], BigInt::one()));
        assert_eq!(p.rels, vec![expect]);
    }

    #[test]
    fn stage_annotations() {
        let p = parse("dga \"S\" over F2 { gen x:3 @2; }").unwrap();
        assert_eq!(p.gens[0].stage, Some(2));
        assert_eq!(p.ground, ScalarDomain::Fp(2));
    }

    #[test]
    fn roundtrip_through_pretty_print() {
        let texts = vec![
            "dga \"C\" over Z { gen e:1; diff e = 2; rel e^4; }",
            "dga \"T3\" over Z { gen e:1; gen f:3; diff e = 2; diff f = e^2; }",
            "dga \"E54\" over Z { gen e:1; gen h:3; diff e = 2; rel e^4; rel h^2; rel e*h + h*e; }",
            "dga \"S\" over F3 { gen x:2 @1; gen y:5 @2; diff y = x*x; rel 3*x; }",
            "dga \"Fp\" over Z { rel 5; }",
        ];
        for text in texts {
            let p1 = parse(text).unwrap();
            let printed = p1.pretty_print();
            let p2 = parse(&printed).unwrap_or_else(|e| panic!("reparse of {printed:?}: {e}"));
            assert_eq!(p1, p2, "round trip changed the presentation for {text}");
        }
    }

    #[test]
    fn lexer_error_positions() {
        let e = parse("dga \"C\" over Z {\n  gen e:1; $\n}").unwrap_err();
        match e {
            DgaError::Parse { line, col, .. } => {
                assert_eq!(line, 2);
                assert_eq!(col, 12);
            }
            other => panic!("expected parse error, got {other}"),
        }
    }
}
