//! Monoidal signatures: named operations with an arity and a coarity.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SignatureError {
    #[error("operation `{0}` is declared twice")]
    Duplicate(String),
    #[error("unknown operation `{0}`")]
    Unknown(String),
    #[error("operation `{name}`: {what} {value} exceeds the 32-bit label range")]
    TooWide {
        name: String,
        what: &'static str,
        value: usize,
    },
    #[error("invalid operation name `{0}`")]
    BadName(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// Index of an operation within its [`Signature`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OpId(pub u32);

impl OpId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Operation {
    pub name: String,
    pub arity: usize,
    pub coarity: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Signature {
    ops: Vec<Operation>,
    by_name: HashMap<String, OpId>,
}

/// Words that the term grammar reserves.
const RESERVED: [&str; 2] = ["id", "sym"];

fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
        && !RESERVED.contains(&name)
}

impl Signature {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_ops<'a>(
        ops: impl IntoIterator<Item = (&'a str, usize, usize)>,
    ) -> Result<Self, SignatureError> {
        let mut sig = Self::new();
        for (name, arity, coarity) in ops {
            sig.add(name, arity, coarity)?;
        }
        Ok(sig)
    }

    /// Appends an operation. Arities must fit the `u32` edge labels.
    pub fn add(
        &mut self,
        name: &str,
        arity: usize,
        coarity: usize,
    ) -> Result<OpId, SignatureError> {
        if !valid_name(name) {
            return Err(SignatureError::BadName(name.to_string()));
        }
        if self.by_name.contains_key(name) {
            return Err(SignatureError::Duplicate(name.to_string()));
        }
        for (what, value) in [("arity", arity), ("coarity", coarity)] {
            if value > u32::MAX as usize {
                return Err(SignatureError::TooWide {
                    name: name.to_string(),
                    what,
                    value,
                });
            }
        }
        let id = OpId(self.ops.len() as u32);
        self.ops.push(Operation {
            name: name.to_string(),
            arity,
            coarity,
        });
        self.by_name.insert(name.to_string(), id);
        Ok(id)
    }

    pub fn lookup(&self, name: &str) -> Result<OpId, SignatureError> {
        self.by_name
            .get(name)
            .copied()
            .ok_or_else(|| SignatureError::Unknown(name.to_string()))
    }

    pub fn get(&self, id: OpId) -> Option<&Operation> {
        self.ops.get(id.index())
    }

    pub fn op(&self, id: OpId) -> &Operation {
        &self.ops[id.index()]
    }

    pub fn contains(&self, id: OpId) -> bool {
        id.index() < self.ops.len()
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (OpId, &Operation)> {
        self.ops
            .iter()
            .enumerate()
            .map(|(i, op)| (OpId(i as u32), op))
    }

    pub fn max_arity(&self) -> usize {
        self.ops.iter().map(|o| o.arity).max().unwrap_or(0)
    }

    pub fn max_coarity(&self) -> usize {
        self.ops.iter().map(|o| o.coarity).max().unwrap_or(0)
    }

    /// Parses lines of `name arity coarity`. Blank lines and `#` comments are
    /// skipped.
    pub fn parse(text: &str) -> Result<Self, SignatureError> {
        let mut sig = Self::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: String| SignatureError::Parse {
                line: lineno + 1,
                msg,
            };
            let fields: Vec<&str> = line.split_whitespace().collect();
            let [name, arity, coarity] = fields[..] else {
                return Err(err(format!("expected `name arity coarity`, got `{line}`")));
            };
            let count = |s: &str| {
                s.parse::<usize>()
                    .map_err(|_| err(format!("`{s}` is not a natural number")))
            };
            sig.add(name, count(arity)?, count(coarity)?)?;
        }
        Ok(sig)
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for op in &self.ops {
            writeln!(f, "{} {} {}", op.name, op.arity, op.coarity)?;
        }
        Ok(())
    }
}
