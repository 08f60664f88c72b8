//! The group-spec mini-language.
//!
//! ```text
//! spec := term ("x" term)*          left associative direct product
//! term := "C:" n | "D:" n | "S:" k | "Q:" n | "M:" p "," a "," q "," b "," r
//!       | "(" spec ")"
//! ```
//!
//! Whitespace is ignored everywhere. `D:n` is the dihedral group of order `2n`
//! and `Q:n` the generalized quaternion group of order `2^n`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::group::MetacyclicParams;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Cyclic(u64),
    Dihedral(u64),
    Symmetric(u64),
    Quaternion(u64),
    Metacyclic(MetacyclicParams),
    Product(Box<GroupSpec>, Box<GroupSpec>),
}

impl GroupSpec {
    pub fn parse(input: &str) -> Result<GroupSpec> {
        let tokens = tokenize(input)?;
        let mut parser = Parser {
            tokens,
            pos: 0,
            input_len: input.chars().count(),
        };
        let spec = parser.product()?;
        if let Some(tok) = parser.peek() {
            return Err(parser.error_at(tok, "unexpected trailing input"));
        }
        Ok(spec)
    }
}

impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        GroupSpec::parse(s)
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(n) => write!(f, "C:{n}"),
            GroupSpec::Dihedral(n) => write!(f, "D:{n}"),
            GroupSpec::Symmetric(k) => write!(f, "S:{k}"),
            GroupSpec::Quaternion(n) => write!(f, "Q:{n}"),
            GroupSpec::Metacyclic(params) => write!(f, "{params}"),
            GroupSpec::Product(a, b) => {
                write!(f, "{a} x ")?;
                if matches!(**b, GroupSpec::Product(..)) {
                    write!(f, "({b})")
                } else {
                    write!(f, "{b}")
                }
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Family(char),
    Colon,
    Comma,
    Int(u64),
    Times,
    Open,
    Close,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    text: String,
    position: usize,
}

fn tokenize(input: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = input.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        let tok = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            'C' | 'D' | 'S' | 'Q' | 'M' => Tok::Family(c),
            ':' => Tok::Colon,
            ',' => Tok::Comma,
            'x' | 'X' | '×' => Tok::Times,
            '(' => Tok::Open,
            ')' => Tok::Close,
            '0'..='9' => {
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let text: String = chars[start..i].iter().collect();
                let value = text.parse::<u64>().map_err(|_| Error::Parse {
                    position: start,
                    token: text.clone(),
                    message: "integer out of range".into(),
                })?;
                out.push(Token {
                    tok: Tok::Int(value),
                    text,
                    position: start,
                });
                continue;
            }
            other => {
                return Err(Error::Parse {
                    position: start,
                    token: other.to_string(),
                    message: "unexpected character".into(),
                })
            }
        };
        i += 1;
        out.push(Token {
            tok,
            text: c.to_string(),
            position: start,
        });
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    input_len: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn error_at(&self, tok: &Token, message: &str) -> Error {
        Error::Parse {
            position: tok.position,
            token: tok.text.clone(),
            message: message.to_string(),
        }
    }

    fn error_here(&self, message: &str) -> Error {
        match self.peek() {
            Some(tok) => self.error_at(tok, message),
            None => Error::Parse {
                position: self.input_len,
                token: "<end of input>".into(),
                message: message.to_string(),
            },
        }
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<()> {
        match self.peek() {
            Some(t) if t.tok == want => {
                self.pos += 1;
                Ok(())
            }
            _ => Err(self.error_here(&format!("expected {what}"))),
        }
    }

    fn int(&mut self) -> Result<u64> {
        match self.peek() {
            Some(Token {
                tok: Tok::Int(v), ..
            }) => {
                let v = *v;
                self.pos += 1;
                Ok(v)
            }
            _ => Err(self.error_here("expected an integer")),
        }
    }

    fn small_int(&mut self) -> Result<u32> {
        let start = self.pos;
        let v = self.int()?;
        u32::try_from(v).map_err(|_| self.error_at(&self.tokens[start], "exponent too large"))
    }

    fn product(&mut self) -> Result<GroupSpec> {
        let mut acc = self.term()?;
        while matches!(self.peek(), Some(Token { tok: Tok::Times, .. })) {
            self.pos += 1;
            let rhs = self.term()?;
            acc = GroupSpec::Product(Box::new(acc), Box::new(rhs));
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<GroupSpec> {
        let tok = match self.peek() {
            Some(t) => t.clone(),
            None => return Err(self.error_here("expected a group")),
        };
        match tok.tok {
            Tok::Open => {
                self.pos += 1;
                let inner = self.product()?;
                self.expect(Tok::Close, "`)`")?;
                Ok(inner)
            }
            Tok::Family(family) => {
                self.pos += 1;
                self.expect(Tok::Colon, "`:` after the family letter")?;
                if family == 'M' {
                    let p = self.int()?;
                    self.expect(Tok::Comma, "`,`")?;
                    let a = self.small_int()?;
                    self.expect(Tok::Comma, "`,`")?;
                    let q = self.int()?;
                    self.expect(Tok::Comma, "`,`")?;
                    let b = self.small_int()?;
                    self.expect(Tok::Comma, "`,`")?;
                    let r = self.int()?;
                    return Ok(GroupSpec::Metacyclic(MetacyclicParams::new(p, a, q, b, r)));
                }
                let n = self.int()?;
                Ok(match family {
                    'C' => GroupSpec::Cyclic(n),
                    'D' => GroupSpec::Dihedral(n),
                    'S' => GroupSpec::Symmetric(n),
                    _ => GroupSpec::Quaternion(n),
                })
            }
            _ => Err(self.error_at(&tok, "expected a group family letter or `(`")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_families() {
        assert_eq!(GroupSpec::parse("C:6").unwrap(), GroupSpec::Cyclic(6));
        assert_eq!(GroupSpec::parse(" D : 15 ").unwrap(), GroupSpec::Dihedral(15));
        assert_eq!(
            GroupSpec::parse("M:5,2,2,2,7").unwrap(),
            GroupSpec::Metacyclic(MetacyclicParams::new(5, 2, 2, 2, 7))
        );
        let prod = GroupSpec::parse("C:2 x C:2 x C:3").unwrap();
        assert_eq!(prod.to_string(), "C:2 x C:2 x C:3");
        let nested = GroupSpec::parse("C:2 x (Q:3 x S:3)").unwrap();
        assert_eq!(nested.to_string(), "C:2 x (Q:3 x S:3)");
    }

    #[test]
    fn errors_cite_token_and_position() {
        match GroupSpec::parse("C:4 x Z:3") {
            Err(Error::Parse { position, token, .. }) => {
                assert_eq!(position, 6);
                assert_eq!(token, "Z");
            }
            other => panic!("{other:?}"),
        }
        match GroupSpec::parse("M:5,2,2,2") {
            Err(Error::Parse { token, .. }) => assert_eq!(token, "<end of input>"),
            other => panic!("{other:?}"),
        }
        match GroupSpec::parse("C:4 C:3") {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 4),
            other => panic!("{other:?}"),
        }
    }

    fn arb_spec() -> impl Strategy<Value = GroupSpec> {
        let leaf = prop_oneof![
            (1u64..100).prop_map(GroupSpec::Cyclic),
            (1u64..100).prop_map(GroupSpec::Dihedral),
            (1u64..12).prop_map(GroupSpec::Symmetric),
            (3u64..8).prop_map(GroupSpec::Quaternion),
            (2u64..20, 1u32..4, 2u64..20, 1u32..4, 2u64..50)
                .prop_map(|(p, a, q, b, r)| GroupSpec::Metacyclic(MetacyclicParams::new(p, a, q, b, r))),
        ];
        leaf.prop_recursive(3, 8, 2, |inner| {
            (inner.clone(), inner).prop_map(|(a, b)| GroupSpec::Product(Box::new(a), Box::new(b)))
        })
    }

    proptest! {
        #[test]
        fn print_then_parse_is_identity(spec in arb_spec()) {
            let text = spec.to_string();
            prop_assert_eq!(GroupSpec::parse(&text).unwrap(), spec);
        }
    }
}
