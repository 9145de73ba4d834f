use super::ParseError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Number(u64),
    Str(String),
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Colon,
    Dot,
    Backslash,
    Arrow,
    Star,
    Plus,
    Eq,
    Tilde,
    Define,
    /// `<-`
    LeftArrow,
    /// `==`
    DefEq,
    /// `::`
    Inhabits,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Number(n) => format!("`{n}`"),
            Tok::Str(_) => "string literal".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::LBracket => "`[`".into(),
            Tok::RBracket => "`]`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Colon => "`:`".into(),
            Tok::Dot => "`.`".into(),
            Tok::Backslash => "`\\`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::Star => "`*`".into(),
            Tok::Plus => "`+`".into(),
            Tok::Eq => "`=`".into(),
            Tok::Tilde => "`~=`".into(),
            Tok::Define => "`:=`".into(),
            Tok::LeftArrow => "`<-`".into(),
            Tok::DefEq => "`==`".into(),
            Tok::Inhabits => "`::`".into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    pub tok: Tok,
    pub line: usize,
    pub col: usize,
    /// First token on its line.
    pub line_start: bool,
}

fn is_ident_start(c: char) -> bool {
    c.is_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\''
}

pub fn lex(text: &str) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    let mut line_start = true;
    while i < chars.len() {
        let c = chars[i];
        let next = chars.get(i + 1).copied();
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            line_start = true;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '-' && next == Some('-') {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        let (start_line, start_col) = (line, col);
        let advance = |n: usize, i: &mut usize, col: &mut usize| {
            *i += n;
            *col += n;
        };
        let tok = if is_ident_start(c) {
            let mut s = String::new();
            while i < chars.len() {
                let ch = chars[i];
                let joins = ch == '-' && chars.get(i + 1).is_some_and(|d| d.is_alphanumeric());
                if is_ident_char(ch) || joins {
                    s.push(ch);
                    advance(1, &mut i, &mut col);
                } else {
                    break;
                }
            }
            Tok::Ident(s)
        } else if c.is_ascii_digit() {
            let mut s = String::new();
            while i < chars.len() && chars[i].is_ascii_digit() {
                s.push(chars[i]);
                advance(1, &mut i, &mut col);
            }
            let n = s
                .parse()
                .map_err(|_| ParseError::syntax(start_line, start_col, "numeral too large"))?;
            Tok::Number(n)
        } else if c == '"' {
            advance(1, &mut i, &mut col);
            let mut s = String::new();
            loop {
                match chars.get(i) {
                    None | Some('\n') => {
                        return Err(ParseError::syntax(start_line, start_col, "unterminated string literal"))
                    }
                    Some('"') => {
                        advance(1, &mut i, &mut col);
                        break;
                    }
                    Some(&ch) => {
                        s.push(ch);
                        advance(1, &mut i, &mut col);
                    }
                }
            }
            Tok::Str(s)
        } else {
            let (tok, width) = match (c, next) {
                ('-', Some('>')) => (Tok::Arrow, 2),
                ('<', Some('-')) => (Tok::LeftArrow, 2),
                ('=', Some('=')) => (Tok::DefEq, 2),
                ('~', Some('=')) => (Tok::Tilde, 2),
                (':', Some('=')) => (Tok::Define, 2),
                (':', Some(':')) => (Tok::Inhabits, 2),
                ('(', _) => (Tok::LParen, 1),
                (')', _) => (Tok::RParen, 1),
                ('[', _) => (Tok::LBracket, 1),
                (']', _) => (Tok::RBracket, 1),
                (',', _) => (Tok::Comma, 1),
                (':', _) => (Tok::Colon, 1),
                ('.', _) => (Tok::Dot, 1),
                ('\\', _) => (Tok::Backslash, 1),
                ('*', _) => (Tok::Star, 1),
                ('+', _) => (Tok::Plus, 1),
                ('=', _) => (Tok::Eq, 1),
                _ => {
                    return Err(ParseError::syntax(
                        start_line,
                        start_col,
                        format!("unexpected character `{c}`"),
                    ))
                }
            };
            advance(width, &mut i, &mut col);
            tok
        };
        out.push(Token {
            tok,
            line: start_line,
            col: start_col,
            line_start,
        });
        line_start = false;
    }
    Ok(out)
}
