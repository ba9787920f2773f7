use super::word::Word;
use super::Presentation;
use crate::error::{Error, Result};

pub fn parse_presentation(text: &str) -> Result<Presentation> {
    let src = strip_comments(text);
    let mut p = Parser { s: src.as_bytes(), pos: 0, names: Vec::new() };
    p.presentation()
}

/// Blanks out `#` comments so byte positions still refer to the input.
fn strip_comments(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    let mut in_comment = false;
    for ch in text.chars() {
        if ch == '\n' {
            in_comment = false;
            out.push(ch);
        } else if in_comment || ch == '#' {
            in_comment = true;
            for _ in 0..ch.len_utf8() {
                out.push(' ');
            }
        } else {
            out.push(ch);
        }
    }
    out
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    names: Vec<String>,
}

impl Parser<'_> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { pos: self.pos, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        match self.peek() {
            Some(x) if x == c => {
                self.pos += 1;
                Ok(())
            }
            Some(x) => self.err(format!("expected `{}`, found `{}`", c as char, x as char)),
            None => self.err(format!("expected `{}`, found end of input", c as char)),
        }
    }

    fn ident(&mut self) -> Result<(String, usize)> {
        self.skip_ws();
        let start = self.pos;
        match self.s.get(self.pos) {
            Some(c) if c.is_ascii_alphabetic() || *c == b'_' => {}
            _ => return self.err("expected identifier"),
        }
        while self.pos < self.s.len()
            && (self.s[self.pos].is_ascii_alphanumeric() || self.s[self.pos] == b'_')
        {
            self.pos += 1;
        }
        Ok((String::from_utf8_lossy(&self.s[start..self.pos]).into_owned(), start))
    }

    fn signed_int(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        let mut neg = false;
        if let Some(&c) = self.s.get(self.pos) {
            if c == b'-' || c == b'+' {
                neg = c == b'-';
                self.pos += 1;
                self.skip_ws();
            }
        }
        let digits = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if digits == self.pos {
            self.pos = start;
            return self.err("expected integer exponent");
        }
        let text = std::str::from_utf8(&self.s[digits..self.pos]).unwrap();
        let v: i64 = match text.parse() {
            Ok(v) => v,
            Err(_) => {
                self.pos = digits;
                return self.err("exponent out of range");
            }
        };
        Ok(if neg { -v } else { v })
    }

    fn presentation(&mut self) -> Result<Presentation> {
        self.expect(b'<')?;
        let mut seen = std::collections::HashSet::new();
        loop {
            let (name, at) = self.ident()?;
            if !seen.insert(name.clone()) {
                self.pos = at;
                return self.err(format!("duplicate generator `{name}`"));
            }
            self.names.push(name);
            match self.peek() {
                Some(b',') => self.pos += 1,
                Some(b'|') => break,
                _ => return self.err("expected `,` or `|` in generator list"),
            }
        }
        self.expect(b'|')?;
        let mut relators = Vec::new();
        if self.peek() != Some(b'>') {
            loop {
                relators.push(self.word()?.free_reduce());
                match self.peek() {
                    Some(b',') | Some(b';') => self.pos += 1,
                    _ => break,
                }
            }
        }
        self.expect(b'>')?;
        if self.peek().is_some() {
            return self.err("trailing input after `>`");
        }
        Presentation::new(std::mem::take(&mut self.names), relators)
    }

    fn starts_atom(&mut self) -> bool {
        matches!(self.peek(), Some(c) if c.is_ascii_alphabetic() || c == b'_' || c == b'(' || c == b'[')
    }

    fn word(&mut self) -> Result<Word> {
        if !self.starts_atom() {
            return self.err("expected a word");
        }
        let mut w = Word::empty();
        while self.starts_atom() {
            w = w.concat(&self.factor()?);
        }
        Ok(w)
    }

    fn factor(&mut self) -> Result<Word> {
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                // `^(-2)` is accepted as a power
                if matches!(self.peek(), Some(c) if c == b'-' || c == b'+' || c.is_ascii_digit()) {
                    let k = self.signed_int()?;
                    self.expect(b')')?;
                    return Ok(base.pow(k));
                }
                let v = self.word()?;
                self.expect(b')')?;
                Ok(base.conj(&v))
            }
            Some(_) => {
                let k = self.signed_int()?;
                Ok(base.pow(k))
            }
            None => self.err("expected exponent after `^`"),
        }
    }

    fn atom(&mut self) -> Result<Word> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let w = self.word()?;
                self.expect(b')')?;
                Ok(w)
            }
            Some(b'[') => {
                self.pos += 1;
                let u = self.word()?;
                self.expect(b',')?;
                let v = self.word()?;
                self.expect(b']')?;
                Ok(Word::commutator(&u, &v))
            }
            _ => {
                let (name, at) = self.ident()?;
                match self.names.iter().position(|n| *n == name) {
                    Some(i) => Ok(Word::gen(i)),
                    None => Err(Error::UndeclaredGenerator { name, pos: at }),
                }
            }
        }
    }
}
