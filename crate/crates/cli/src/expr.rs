//! Constructor expressions.
//!
//! ```text
//! expr := complete N
//!       | bipartite A B
//!       | kchain a1,...,ak
//!       | kring a1,...,ak
//!       | cone(expr)
//!       | attach(expr; left=...; right=...; interior=...)
//!       | hennenberg(expr; d=...; i=...; j=...; others=...)
//! ```

use std::collections::BTreeMap;
use std::fmt;

use rigidlab::construct::{attach, complete, complete_bipartite, cone, hennenberg, k_chain, k_ring};
use rigidlab::{AttachmentSpec, ChainSpec, Graph};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExprError {
    pub offset: usize,
    pub message: String,
}

impl fmt::Display for ExprError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at column {}: {}", self.offset + 1, self.message)
    }
}

impl std::error::Error for ExprError {}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Word(String),
    Num(usize),
    Punct(char),
}

fn tokenize(src: &str) -> Result<Vec<(usize, Tok)>, ExprError> {
    let mut out = Vec::new();
    let mut chars = src.char_indices().peekable();
    while let Some(&(at, c)) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
        } else if c.is_ascii_digit() {
            let mut end = at;
            while let Some(&(i, d)) = chars.peek() {
                if !d.is_ascii_digit() {
                    break;
                }
                end = i + 1;
                chars.next();
            }
            let n = src[at..end].parse().map_err(|_| ExprError {
                offset: at,
                message: "number too large".into(),
            })?;
            out.push((at, Tok::Num(n)));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let mut end = at;
            while let Some(&(i, d)) = chars.peek() {
                if !(d.is_ascii_alphanumeric() || d == '_' || d == '-') {
                    break;
                }
                end = i + 1;
                chars.next();
            }
            out.push((at, Tok::Word(src[at..end].to_ascii_lowercase())));
        } else if "(),;=".contains(c) {
            out.push((at, Tok::Punct(c)));
            chars.next();
        } else {
            return Err(ExprError {
                offset: at,
                message: format!("unexpected character {c:?}"),
            });
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |t| t.0)
    }

    fn fail<T>(&self, message: impl Into<String>) -> Result<T, ExprError> {
        Err(ExprError {
            offset: self.offset(),
            message: message.into(),
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|t| t.1.clone());
        self.pos += 1;
        t
    }

    fn punct(&mut self, c: char) -> Result<(), ExprError> {
        if self.peek() == Some(&Tok::Punct(c)) {
            self.pos += 1;
            Ok(())
        } else {
            self.fail(format!("expected '{c}'"))
        }
    }

    fn number(&mut self) -> Result<usize, ExprError> {
        match self.peek() {
            Some(&Tok::Num(n)) => {
                self.pos += 1;
                Ok(n)
            }
            _ => self.fail("expected a number"),
        }
    }

    /// Comma-separated numbers; empty when the next token is not a number.
    fn list(&mut self) -> Result<Vec<usize>, ExprError> {
        let mut out = Vec::new();
        if !matches!(self.peek(), Some(Tok::Num(_))) {
            return Ok(out);
        }
        out.push(self.number()?);
        while self.peek() == Some(&Tok::Punct(',')) {
            self.pos += 1;
            out.push(self.number()?);
        }
        Ok(out)
    }

    fn chain(&mut self) -> Result<ChainSpec, ExprError> {
        let at = self.offset();
        let sizes = self.list()?;
        ChainSpec::new(sizes).map_err(|e| ExprError {
            offset: at,
            message: e.to_string(),
        })
    }

    /// `(expr; key=list; ...)` with exactly the given keys.
    fn args(&mut self, keys: &[&str]) -> Result<(Graph, BTreeMap<String, Vec<usize>>), ExprError> {
        self.punct('(')?;
        let g = self.expr()?;
        let mut named = BTreeMap::new();
        while self.peek() == Some(&Tok::Punct(';')) {
            self.pos += 1;
            let key = match self.next() {
                Some(Tok::Word(w)) if keys.contains(&w.as_str()) => w,
                _ => {
                    self.pos -= 1;
                    return self.fail(format!("expected one of {}", keys.join(", ")));
                }
            };
            self.punct('=')?;
            if named.insert(key.clone(), self.list()?).is_some() {
                return self.fail(format!("{key} given twice"));
            }
        }
        self.punct(')')?;
        if let Some(missing) = keys.iter().find(|k| !named.contains_key(**k)) {
            return self.fail(format!("missing {missing}="));
        }
        Ok((g, named))
    }

    fn expr(&mut self) -> Result<Graph, ExprError> {
        let at = self.offset();
        let built = match self.next() {
            Some(Tok::Word(w)) => match w.as_str() {
                "complete" => complete(self.number()?),
                "bipartite" => {
                    let a = self.number()?;
                    complete_bipartite(a, self.number()?)
                }
                "kchain" => Ok(k_chain(&self.chain()?)),
                "kring" => k_ring(&self.chain()?),
                "cone" => {
                    self.punct('(')?;
                    let g = self.expr()?;
                    self.punct(')')?;
                    Ok(cone(&g))
                }
                "attach" => {
                    let (host, mut a) = self.args(&["left", "right", "interior"])?;
                    attach(&AttachmentSpec {
                        host,
                        left_anchor: a.remove("left").unwrap(),
                        right_anchor: a.remove("right").unwrap(),
                        interior_sizes: a.remove("interior").unwrap(),
                    })
                }
                "hennenberg" => {
                    let (g, a) = self.args(&["d", "i", "j", "others"])?;
                    let single = |k: &str| match a[k].as_slice() {
                        [x] => Ok(*x),
                        _ => Err(ExprError {
                            offset: at,
                            message: format!("{k}= takes one number"),
                        }),
                    };
                    hennenberg(&g, single("d")?, single("i")?, single("j")?, &a["others"])
                }
                other => {
                    self.pos -= 1;
                    return self.fail(format!("unknown constructor {other:?}"));
                }
            },
            _ => {
                self.pos = self.pos.saturating_sub(1);
                return self.fail("expected a constructor name");
            }
        };
        built.map_err(|e| ExprError {
            offset: at,
            message: e.to_string(),
        })
    }
}

pub fn parse(src: &str) -> Result<Graph, ExprError> {
    let mut p = Parser {
        toks: tokenize(src)?,
        pos: 0,
        end: src.len(),
    };
    let g = p.expr()?;
    if p.pos < p.toks.len() {
        return p.fail("trailing input");
    }
    Ok(g)
}
