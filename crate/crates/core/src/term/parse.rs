use super::{Term, TermError};

#[derive(Debug, Clone, PartialEq)]
enum Token<'a> {
    Name(&'a str),
    Nat(usize),
    Semi,
    Star,
    Open,
    Close,
    End,
}

struct Lexer<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Lexer<'a> {
    /// The next token and the offset where it starts.
    fn next(&mut self) -> Result<(usize, Token<'a>), TermError> {
        let bytes = self.text.as_bytes();
        while self.pos < bytes.len() && bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        let start = self.pos;
        let Some(&c) = bytes.get(start) else {
            return Ok((start, Token::End));
        };
        let run = |pred: fn(u8) -> bool| {
            let len = bytes[start..].iter().take_while(|&&b| pred(b)).count();
            start + len
        };
        let token = match c {
            b';' => Token::Semi,
            b'*' => Token::Star,
            b'(' => Token::Open,
            b')' => Token::Close,
            b'0'..=b'9' => {
                self.pos = run(|b| b.is_ascii_digit());
                let digits = &self.text[start..self.pos];
                let n = digits.parse().map_err(|_| TermError::Syntax {
                    pos: start,
                    msg: format!("number `{digits}` is too large"),
                })?;
                return Ok((start, Token::Nat(n)));
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                self.pos = run(|b| b.is_ascii_alphanumeric() || b == b'_');
                return Ok((start, Token::Name(&self.text[start..self.pos])));
            }
            _ => {
                let ch = self.text[start..].chars().next().unwrap_or('?');
                return Err(TermError::Syntax {
                    pos: start,
                    msg: format!("unexpected character `{ch}`"),
                });
            }
        };
        self.pos += 1;
        Ok((start, token))
    }
}

struct Parser<'a> {
    lexer: Lexer<'a>,
    pos: usize,
    peeked: Token<'a>,
}

impl<'a> Parser<'a> {
    fn advance(&mut self) -> Result<(usize, Token<'a>), TermError> {
        let (pos, token) = self.lexer.next()?;
        let prev = std::mem::replace(&mut self.peeked, token);
        Ok((std::mem::replace(&mut self.pos, pos), prev))
    }

    fn error<T>(&self, msg: impl Into<String>) -> Result<T, TermError> {
        Err(TermError::Syntax {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn describe(&self) -> String {
        match &self.peeked {
            Token::Name(n) => format!("`{n}`"),
            Token::Nat(n) => format!("`{n}`"),
            Token::Semi => "`;`".into(),
            Token::Star => "`*`".into(),
            Token::Open => "`(`".into(),
            Token::Close => "`)`".into(),
            Token::End => "end of input".into(),
        }
    }

    fn seq(&mut self) -> Result<Term, TermError> {
        let mut t = self.par()?;
        while self.peeked == Token::Semi {
            self.advance()?;
            t = t.seq(self.par()?);
        }
        Ok(t)
    }

    fn par(&mut self) -> Result<Term, TermError> {
        let mut t = self.atom()?;
        while self.peeked == Token::Star {
            self.advance()?;
            t = t.par(self.atom()?);
        }
        Ok(t)
    }

    fn nat(&mut self) -> Result<usize, TermError> {
        match self.peeked {
            Token::Nat(n) => {
                self.advance()?;
                Ok(n)
            }
            _ => self.error(format!("expected a number, found {}", self.describe())),
        }
    }

    fn atom(&mut self) -> Result<Term, TermError> {
        match self.peeked {
            Token::Open => {
                self.advance()?;
                let t = self.seq()?;
                if self.peeked != Token::Close {
                    return self.error(format!("expected `)`, found {}", self.describe()));
                }
                self.advance()?;
                Ok(t)
            }
            Token::Name("id") => {
                self.advance()?;
                Ok(Term::Id(self.nat()?))
            }
            Token::Name("sym") => {
                self.advance()?;
                let a = self.nat()?;
                Ok(Term::Sym(a, self.nat()?))
            }
            Token::Name(name) => {
                self.advance()?;
                Ok(Term::gen(name))
            }
            _ => self.error(format!("expected a term, found {}", self.describe())),
        }
    }
}

/// Parses a term. Generator names are resolved later, by
/// [`Term::typecheck`].
pub fn parse(text: &str) -> Result<Term, TermError> {
    let mut parser = Parser {
        lexer: Lexer { text, pos: 0 },
        pos: 0,
        peeked: Token::End,
    };
    parser.advance()?;
    let t = parser.seq()?;
    if parser.peeked != Token::End {
        return parser.error(format!("unexpected {}", parser.describe()));
    }
    Ok(t)
}
