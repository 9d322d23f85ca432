//! Parser for the expression grammar
//!
//! ```text
//! expr := term {"*" term}
//! term := atom ["^" int]
//! atom := "T" | "delta(" cyl ")" | "tau(" cyl ")"
//!       | "psi(" cyl "," int "," int ")" | "(" expr ")"
//! cyl  := "[" word "." word "]"
//! ```
//!
//! Whitespace is ignored everywhere.

use super::expr::MoveExpr;
use crate::clopen::Cylinder;
use crate::error::{Error, Result};
use crate::words::{Letter, Word};

struct Parser {
    chars: Vec<(usize, char)>,
    at: usize,
    end: usize,
}

pub fn parse_expr(s: &str) -> Result<MoveExpr> {
    let chars: Vec<(usize, char)> = s
        .char_indices()
        .filter(|(_, c)| !c.is_whitespace())
        .collect();
    let mut p = Parser {
        chars,
        at: 0,
        end: s.len(),
    };
    let e = p.expr()?;
    if p.at < p.chars.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(e)
}

impl Parser {
    fn pos(&self) -> usize {
        self.chars.get(self.at).map_or(self.end, |&(i, _)| i)
    }

    fn error(&self, msg: &str) -> Error {
        Error::Parse {
            pos: self.pos(),
            msg: msg.to_string(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.at).map(|&(_, c)| c)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("expected `{c}`")))
        }
    }

    fn keyword(&mut self, kw: &str) -> bool {
        let n = kw.chars().count();
        let matches = self.chars.len() >= self.at + n
            && self.chars[self.at..self.at + n]
                .iter()
                .map(|&(_, c)| c)
                .eq(kw.chars());
        if matches {
            self.at += n;
        }
        matches
    }

    fn expr(&mut self) -> Result<MoveExpr> {
        let mut terms = vec![self.term()?];
        while self.eat('*') {
            terms.push(self.term()?);
        }
        Ok(if terms.len() == 1 {
            terms.pop().unwrap()
        } else {
            MoveExpr::Product(terms)
        })
    }

    fn term(&mut self) -> Result<MoveExpr> {
        let atom = self.atom()?;
        if !self.eat('^') {
            return Ok(atom);
        }
        let k = self.int()?;
        Ok(match atom {
            MoveExpr::Tpow(1) => MoveExpr::Tpow(k),
            other => MoveExpr::Power(Box::new(other), k),
        })
    }

    fn atom(&mut self) -> Result<MoveExpr> {
        if self.keyword("delta(") {
            let c = self.cyl()?;
            self.expect(')')?;
            Ok(MoveExpr::Delta(c))
        } else if self.keyword("tau(") {
            let c = self.cyl()?;
            self.expect(')')?;
            Ok(MoveExpr::Tau(c))
        } else if self.keyword("psi(") {
            let c = self.cyl()?;
            self.expect(',')?;
            let m = self.int()?;
            self.expect(',')?;
            let n = self.int()?;
            self.expect(')')?;
            Ok(MoveExpr::Psi(c, m, n))
        } else if self.eat('T') {
            Ok(MoveExpr::Tpow(1))
        } else if self.eat('(') {
            let e = self.expr()?;
            self.expect(')')?;
            Ok(e)
        } else {
            Err(self.error("expected T, delta(, tau(, psi( or ("))
        }
    }

    fn int(&mut self) -> Result<i64> {
        let start = self.pos();
        let mut s = String::new();
        if self.eat('-') {
            s.push('-');
        } else {
            self.eat('+');
        }
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            s.push(c);
            self.at += 1;
        }
        s.parse().map_err(|_| Error::Parse {
            pos: start,
            msg: "expected an integer".into(),
        })
    }

    fn word(&mut self) -> Word {
        let mut w = Word::new();
        while let Some(l) = self.peek().and_then(Letter::from_char) {
            w.push(l);
            self.at += 1;
        }
        w
    }

    fn cyl(&mut self) -> Result<Cylinder> {
        self.expect('[')?;
        let left = self.word();
        self.expect('.')?;
        let right = self.word();
        self.expect(']')?;
        Ok(Cylinder::new(left, right))
    }
}
