use num_bigint::BigInt;

use super::{ErrorKind, ParseError, SourceSpan};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Int(BigInt),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    Comma,
    Colon,
    Semi,
    Eq,
    Eof,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Int(n) => format!("`{n}`"),
            Tok::Eof => "end of input".into(),
            other => format!("`{}`", symbol(other)),
        }
    }
}

fn symbol(t: &Tok) -> &'static str {
    match t {
        Tok::Plus => "+",
        Tok::Minus => "-",
        Tok::Star => "*",
        Tok::Slash => "/",
        Tok::Caret => "^",
        Tok::LParen => "(",
        Tok::RParen => ")",
        Tok::LBrace => "{",
        Tok::RBrace => "}",
        Tok::LBracket => "[",
        Tok::RBracket => "]",
        Tok::Comma => ",",
        Tok::Colon => ":",
        Tok::Semi => ";",
        Tok::Eq => "=",
        _ => "?",
    }
}

#[derive(Clone, Debug)]
pub struct Token {
    pub tok: Tok,
    pub span: SourceSpan,
}

/// Splits source text into tokens. `//` starts a comment; `−` is accepted
/// as a minus sign.
pub fn lex(src: &str) -> Result<Vec<Token>, Vec<ParseError>> {
    let mut out = Vec::new();
    let mut errors = Vec::new();
    let mut line = 1;
    let mut col = 1;
    let mut chars = src.char_indices().peekable();
    while let Some(&(start, ch)) = chars.peek() {
        let (sl, sc) = (line, col);
        let advance = |c: char, line: &mut usize, col: &mut usize| {
            if c == '\n' {
                *line += 1;
                *col = 1;
            } else {
                *col += 1;
            }
        };
        if ch.is_whitespace() {
            chars.next();
            advance(ch, &mut line, &mut col);
            continue;
        }
        if ch == '/' && src[start..].starts_with("//") {
            while let Some(&(_, c)) = chars.peek() {
                if c == '\n' {
                    break;
                }
                chars.next();
                col += 1;
            }
            continue;
        }
        let single = match ch {
            '+' => Some(Tok::Plus),
            '-' | '−' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '{' => Some(Tok::LBrace),
            '}' => Some(Tok::RBrace),
            '[' => Some(Tok::LBracket),
            ']' => Some(Tok::RBracket),
            ',' => Some(Tok::Comma),
            ':' => Some(Tok::Colon),
            ';' => Some(Tok::Semi),
            '=' => Some(Tok::Eq),
            _ => None,
        };
        if let Some(tok) = single {
            chars.next();
            col += 1;
            out.push(Token {
                tok,
                span: SourceSpan::new(start, start + ch.len_utf8(), sl, sc),
            });
            continue;
        }
        if ch.is_ascii_digit() {
            let mut end = start;
            while let Some(&(i, c)) = chars.peek() {
                if !c.is_ascii_digit() {
                    break;
                }
                end = i + 1;
                chars.next();
                col += 1;
            }
            let n: BigInt = src[start..end].parse().expect("digits");
            out.push(Token {
                tok: Tok::Int(n),
                span: SourceSpan::new(start, end, sl, sc),
            });
            continue;
        }
        if ch.is_alphabetic() || ch == '_' {
            let mut end = start;
            while let Some(&(i, c)) = chars.peek() {
                if !(c.is_alphanumeric() || c == '_') {
                    break;
                }
                end = i + c.len_utf8();
                chars.next();
                col += 1;
            }
            out.push(Token {
                tok: Tok::Ident(src[start..end].to_string()),
                span: SourceSpan::new(start, end, sl, sc),
            });
            continue;
        }
        chars.next();
        col += 1;
        errors.push(ParseError {
            span: SourceSpan::new(start, start + ch.len_utf8(), sl, sc),
            kind: ErrorKind::Syntax,
            message: format!("unexpected character `{ch}`"),
        });
    }
    out.push(Token {
        tok: Tok::Eof,
        span: SourceSpan::new(src.len(), src.len(), line, col),
    });
    if errors.is_empty() {
        Ok(out)
    } else {
        Err(errors)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spans_track_lines() {
        let toks = lex("algebra x {\n  // note\n  param c;\n}").unwrap();
        let c = toks.iter().find(|t| t.tok == Tok::Ident("c".into())).unwrap();
        assert_eq!((c.span.line, c.span.column), (3, 9));
        assert!(c.span.start < c.span.end);
    }

    #[test]
    fn bad_character() {
        let errs = lex("param $;").unwrap_err();
        assert_eq!(errs[0].kind, ErrorKind::Syntax);
        assert_eq!(errs[0].span.column, 7);
    }
}
