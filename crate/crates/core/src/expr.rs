//! Symbolic permutation-group expressions built from symmetric groups with
//! direct products and wreath products, with exact orders.
//!
//! Rendered form: `S<n>` symmetric group, `A x B` product, `A wr S<t>`
//! wreath product, `A^k` for a run of `k >= 3` identical product factors,
//! `<N>` a group known only by its order `N`, and `1` the trivial group.
//! Composite operands are parenthesized, e.g. `(S2 wr S3) x S2^6`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;
use thiserror::Error;

use crate::arith::factorial;

/// How the factors of a product are known to combine.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Splitting {
    Direct,
    /// Only the factor structure and the order are asserted.
    Unspecified,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GroupExpr {
    Trivial,
    Sym(u64),
    Product {
        factors: Vec<GroupExpr>,
        splitting: Splitting,
    },
    /// `base wr S_top`.
    Wreath {
        base: Box<GroupExpr>,
        top: u64,
    },
    /// A group whose structure was not decomposed, known by its order.
    Opaque(BigUint),
}

impl GroupExpr {
    pub fn product(factors: Vec<GroupExpr>) -> GroupExpr {
        GroupExpr::Product {
            factors,
            splitting: Splitting::Direct,
        }
    }

    pub fn extension(factors: Vec<GroupExpr>) -> GroupExpr {
        GroupExpr::Product {
            factors,
            splitting: Splitting::Unspecified,
        }
    }

    pub fn wreath(base: GroupExpr, top: u64) -> GroupExpr {
        GroupExpr::Wreath {
            base: Box::new(base),
            top,
        }
    }

    /// `S_n^k` as a product of `k` copies.
    pub fn sym_power(n: u64, k: usize) -> GroupExpr {
        GroupExpr::product(vec![GroupExpr::Sym(n); k])
    }

    pub fn order(&self) -> BigUint {
        match self {
            GroupExpr::Trivial => BigUint::one(),
            GroupExpr::Sym(n) => factorial(*n),
            GroupExpr::Product { factors, .. } => factors.iter().map(GroupExpr::order).product(),
            GroupExpr::Wreath { base, top } => {
                let t = u32::try_from(*top).expect("wreath degree fits in u32");
                base.order().pow(t) * factorial(*top)
            }
            GroupExpr::Opaque(order) => order.clone(),
        }
    }

    /// Normal form: nested products flattened, trivial factors dropped,
    /// factors sorted by decreasing order (ties by rendering), wreaths over
    /// `S1` or over the trivial group collapsed. Order is preserved.
    pub fn normalize(&self) -> GroupExpr {
        match self {
            GroupExpr::Trivial => GroupExpr::Trivial,
            GroupExpr::Sym(n) if *n <= 1 => GroupExpr::Trivial,
            GroupExpr::Sym(n) => GroupExpr::Sym(*n),
            GroupExpr::Opaque(o) if o.is_one() => GroupExpr::Trivial,
            GroupExpr::Opaque(o) => GroupExpr::Opaque(o.clone()),
            GroupExpr::Wreath { base, top } => {
                let base = base.normalize();
                match (*top, base) {
                    (0, _) => GroupExpr::Trivial,
                    (1, base) => base,
                    (t, GroupExpr::Trivial) => GroupExpr::Sym(t),
                    (t, base) => GroupExpr::wreath(base, t),
                }
            }
            GroupExpr::Product { factors, splitting } => {
                let mut splitting = *splitting;
                let mut flat = Vec::new();
                for f in factors {
                    match f.normalize() {
                        GroupExpr::Trivial => {}
                        GroupExpr::Product {
                            factors,
                            splitting: inner,
                        } => {
                            if inner == Splitting::Unspecified {
                                splitting = Splitting::Unspecified;
                            }
                            flat.extend(factors);
                        }
                        other => flat.push(other),
                    }
                }
                let mut keyed: Vec<(BigUint, String, GroupExpr)> = flat
                    .into_iter()
                    .map(|f| (f.order(), f.to_string(), f))
                    .collect();
                keyed.sort_by(|a, b| match b.0.cmp(&a.0) {
                    Ordering::Equal => a.1.cmp(&b.1),
                    other => other,
                });
                let mut factors: Vec<GroupExpr> = keyed.into_iter().map(|(_, _, f)| f).collect();
                match factors.len() {
                    0 => GroupExpr::Trivial,
                    1 => factors.pop().unwrap(),
                    _ => GroupExpr::Product { factors, splitting },
                }
            }
        }
    }

    /// Multiset of factors of the top-level product (the expression itself
    /// when it is not a product), without normalizing.
    pub fn factors(&self) -> Vec<&GroupExpr> {
        match self {
            GroupExpr::Product { factors, .. } => {
                factors.iter().flat_map(|f| f.factors()).collect()
            }
            other => vec![other],
        }
    }

    fn is_composite(&self) -> bool {
        matches!(self, GroupExpr::Product { .. } | GroupExpr::Wreath { .. })
    }
}

struct Operand<'a>(&'a GroupExpr);

impl fmt::Display for Operand<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_composite() {
            write!(f, "({})", self.0)
        } else {
            write!(f, "{}", self.0)
        }
    }
}

impl fmt::Display for GroupExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupExpr::Trivial => write!(f, "1"),
            GroupExpr::Sym(n) => write!(f, "S{n}"),
            GroupExpr::Opaque(o) => write!(f, "<{o}>"),
            GroupExpr::Wreath { base, top } => write!(f, "{} wr S{top}", Operand(base)),
            GroupExpr::Product { factors, .. } => {
                if factors.is_empty() {
                    return write!(f, "1");
                }
                let mut i = 0;
                let mut first = true;
                while i < factors.len() {
                    let run = factors[i..]
                        .iter()
                        .take_while(|g| **g == factors[i])
                        .count();
                    // Pairs stay spelled out: `S2 x S2`, but `S2^3`.
                    let step = if run >= 3 { run } else { 1 };
                    if !first {
                        write!(f, " x ")?;
                    }
                    first = false;
                    write!(f, "{}", Operand(&factors[i]))?;
                    if step > 1 {
                        write!(f, "^{step}")?;
                    }
                    i += step;
                }
                Ok(())
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse group expression at position {pos}: {msg}")]
pub struct ExprParseError {
    pub pos: usize,
    pub msg: String,
}

impl FromStr for GroupExpr {
    type Err = ExprParseError;

    /// Parses the rendered form. Products come back with unspecified
    /// splitting since the string does not record it.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = ExprParser {
            src: s.as_bytes(),
            pos: 0,
        };
        let e = p.product()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.error("unexpected trailing input"));
        }
        Ok(e)
    }
}

struct ExprParser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl ExprParser<'_> {
    fn error(&self, msg: &str) -> ExprParseError {
        ExprParseError {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    /// Keywords must be followed by whitespace or `(`.
    fn eat_word(&mut self, word: &str) -> bool {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        let ends = rest
            .get(word.len())
            .is_none_or(|c| c.is_ascii_whitespace() || *c == b'(');
        if rest.starts_with(word.as_bytes()) && ends {
            self.pos += word.len();
            true
        } else {
            false
        }
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Result<&str, ExprParseError> {
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos]).expect("ascii"))
    }

    fn small(&mut self) -> Result<u64, ExprParseError> {
        let start = self.pos;
        self.digits()?.parse().map_err(|_| ExprParseError {
            pos: start,
            msg: "number out of range".into(),
        })
    }

    fn product(&mut self) -> Result<GroupExpr, ExprParseError> {
        let mut factors = vec![self.wreath()?];
        while self.eat_word("x") {
            factors.push(self.wreath()?);
        }
        Ok(if factors.len() == 1 {
            factors.pop().unwrap()
        } else {
            GroupExpr::extension(factors)
        })
    }

    fn wreath(&mut self) -> Result<GroupExpr, ExprParseError> {
        let mut e = self.power()?;
        while self.eat_word("wr") {
            if !self.eat(b'S') {
                return Err(self.error("expected `S<n>` after `wr`"));
            }
            let top = self.small()?;
            e = GroupExpr::wreath(e, top);
        }
        Ok(e)
    }

    fn power(&mut self) -> Result<GroupExpr, ExprParseError> {
        let atom = self.atom()?;
        if self.src.get(self.pos) == Some(&b'^') {
            self.pos += 1;
            let k = self.small()? as usize;
            return Ok(GroupExpr::extension(vec![atom; k]));
        }
        Ok(atom)
    }

    fn atom(&mut self) -> Result<GroupExpr, ExprParseError> {
        match self.peek() {
            Some(b'1') => {
                self.pos += 1;
                Ok(GroupExpr::Trivial)
            }
            Some(b'S') => {
                self.pos += 1;
                Ok(GroupExpr::Sym(self.small()?))
            }
            Some(b'<') => {
                self.pos += 1;
                let digits = self.digits()?;
                let order: BigUint = digits.parse().expect("decimal digits");
                if !self.eat(b'>') {
                    return Err(self.error("expected `>`"));
                }
                Ok(GroupExpr::Opaque(order))
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.product()?;
                if !self.eat(b')') {
                    return Err(self.error("expected `)`"));
                }
                Ok(inner)
            }
            _ => Err(self.error("expected `1`, `S<n>`, `<N>` or `(`")),
        }
    }
}
