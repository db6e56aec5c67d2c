use super::FormulaError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Tok {
    Ident(String),
    AtName(String),
    Num(u64),
    LParen,
    RParen,
    Comma,
    Semi,
    Hash,
    Tilde,
    Amp,
    Bar,
    Arrow,
    Equals,
    Less,
    Plus,
    Star,
    End,
}

impl Tok {
    pub(crate) fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::AtName(s) => format!("atom `@{s}`"),
            Tok::Num(n) => format!("numeral `{n}`"),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Semi => "`;`".into(),
            Tok::Hash => "`#`".into(),
            Tok::Tilde => "`~`".into(),
            Tok::Amp => "`&`".into(),
            Tok::Bar => "`|`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::Equals => "`=`".into(),
            Tok::Less => "`<`".into(),
            Tok::Plus => "`+`".into(),
            Tok::Star => "`*`".into(),
            Tok::End => "end of input".into(),
        }
    }
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

/// Splits input into tokens tagged with their character offsets.
pub(crate) fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>, FormulaError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let tok = if c.is_ascii_digit() {
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            let n = digits.parse::<u64>().map_err(|_| FormulaError::Syntax {
                pos: start,
                msg: format!("numeral `{digits}` out of range"),
            })?;
            Tok::Num(n)
        } else if is_ident_start(c) {
            while i < chars.len() && is_ident_char(chars[i]) {
                i += 1;
            }
            Tok::Ident(chars[start..i].iter().collect())
        } else if c == '@' {
            i += 1;
            if i >= chars.len() || !is_ident_start(chars[i]) {
                return Err(FormulaError::Syntax {
                    pos: start,
                    msg: "expected a name after `@`".into(),
                });
            }
            let s = i;
            while i < chars.len() && is_ident_char(chars[i]) {
                i += 1;
            }
            Tok::AtName(chars[s..i].iter().collect())
        } else {
            let two = |d: char| chars.get(i + 1) == Some(&d);
            let (tok, len) = match c {
                '(' => (Tok::LParen, 1),
                ')' => (Tok::RParen, 1),
                ',' => (Tok::Comma, 1),
                ';' => (Tok::Semi, 1),
                '#' => (Tok::Hash, 1),
                '~' | '¬' => (Tok::Tilde, 1),
                '&' | '∧' => (Tok::Amp, 1),
                '|' | '∨' => (Tok::Bar, 1),
                '→' => (Tok::Arrow, 1),
                '=' => (Tok::Equals, 1),
                '<' => (Tok::Less, 1),
                '+' => (Tok::Plus, 1),
                '*' => (Tok::Star, 1),
                '-' if two('>') => (Tok::Arrow, 2),
                '/' if two('\\') => (Tok::Amp, 2),
                '\\' if two('/') => (Tok::Bar, 2),
                _ => {
                    return Err(FormulaError::Syntax {
                        pos: start,
                        msg: format!("unexpected character `{c}`"),
                    })
                }
            };
            i += len;
            tok
        };
        out.push((tok, start));
    }
    out.push((Tok::End, chars.len()));
    Ok(out)
}
