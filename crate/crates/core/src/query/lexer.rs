use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Quoted(String),
    LParen,
    RParen,
    LBrace,
    RBrace,
    LBrack,
    RBrack,
    Lt,
    Gt,
    Comma,
    Dot,
    Bar,
    Plus,
    Star,
    Eq,
    NotEq,
    Bang,
    Amp,
    Tilde,
    Arrow,
    Eof,
}

pub fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '$'
}

/// Tokens paired with their byte offsets.
pub fn lex(src: &str) -> Result<Vec<(Tok, usize)>> {
    let mut out = Vec::new();
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        let next = chars.get(i + 1).map(|&(_, c)| c);
        i += 1;
        let t = match c {
            c if c.is_whitespace() => continue,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '{' => Tok::LBrace,
            '}' => Tok::RBrace,
            '[' => Tok::LBrack,
            ']' => Tok::RBrack,
            '<' => Tok::Lt,
            '>' => Tok::Gt,
            ',' => Tok::Comma,
            '.' => Tok::Dot,
            '|' => Tok::Bar,
            '+' => Tok::Plus,
            '*' => Tok::Star,
            '=' => Tok::Eq,
            '&' => Tok::Amp,
            '~' => Tok::Tilde,
            '!' if next == Some('=') => {
                i += 1;
                Tok::NotEq
            }
            '!' => Tok::Bang,
            '-' if next == Some('>') => {
                i += 1;
                Tok::Arrow
            }
            '\'' => {
                let mut s = String::new();
                loop {
                    match chars.get(i) {
                        None => return Err(Error::Parse { pos, msg: "unterminated quoted symbol".into() }),
                        Some(&(_, '\'')) => {
                            i += 1;
                            break;
                        }
                        Some(&(_, '\\')) if i + 1 < chars.len() => {
                            s.push(chars[i + 1].1);
                            i += 2;
                        }
                        Some(&(_, ch)) => {
                            s.push(ch);
                            i += 1;
                        }
                    }
                }
                Tok::Quoted(s)
            }
            c if is_ident_char(c) => {
                let mut s = String::from(c);
                while let Some(&(_, ch)) = chars.get(i) {
                    if !is_ident_char(ch) {
                        break;
                    }
                    s.push(ch);
                    i += 1;
                }
                Tok::Ident(s)
            }
            other => return Err(Error::Parse { pos, msg: format!("unexpected character `{other}`") }),
        };
        out.push((t, pos));
    }
    out.push((Tok::Eof, src.len()));
    Ok(out)
}
