//! The group spec-string grammar.
//!
//! ```text
//! spec := "Z(" n ")"                  cyclic of order n
//!       | "Z(" q ")^" k               homocyclic, q a prime power
//!       | "Ab[" d1 "," ... "," dk "]"  direct product of cyclics
//!       | "Sym(" n ")"                 symmetric group, n <= 5
//!       | "Dih(" n ")"                 dihedral group of order 2n
//!       | "Q8"                         quaternion group
//!       | "P(" spec "," spec ")"       external direct product
//! ```
//!
//! Whitespace between tokens is ignored.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::arith::{factorize, prime_power};

pub const MAX_SYM_DEGREE: u64 = 5;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GroupSpec {
    Cyclic(u64),
    /// `Z(p^m)^rank`.
    Homocyclic {
        prime: u64,
        exponent: u32,
        rank: u64,
    },
    Abelian(Vec<u64>),
    Symmetric(u64),
    Dihedral(u64),
    Quaternion,
    Product(Box<GroupSpec>, Box<GroupSpec>),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("Sym({0}) is not supported (degree must be at most {MAX_SYM_DEGREE})")]
    SymTooLarge(u64),
    #[error("parameter at position {pos} must be a positive integer")]
    NonPositive { pos: usize },
}

impl GroupSpec {
    /// `Z(q)^k` with `q = p^m`.
    pub fn homocyclic(q: u64, rank: u64) -> Result<Self, SpecError> {
        let (prime, exponent) = prime_power(q).ok_or(SpecError::NotPrimePower(q))?;
        Ok(GroupSpec::Homocyclic {
            prime,
            exponent,
            rank,
        })
    }

    /// Group order, or `None` on overflow.
    pub fn order(&self) -> Option<u64> {
        match self {
            GroupSpec::Cyclic(n) => Some(*n),
            GroupSpec::Homocyclic {
                prime,
                exponent,
                rank,
            } => {
                let q = prime.checked_pow(*exponent)?;
                q.checked_pow(u32::try_from(*rank).ok()?)
            }
            GroupSpec::Abelian(ds) => ds.iter().try_fold(1u64, |acc, d| acc.checked_mul(*d)),
            GroupSpec::Symmetric(n) => Some((1..=*n).product()),
            GroupSpec::Dihedral(n) => n.checked_mul(2),
            GroupSpec::Quaternion => Some(8),
            GroupSpec::Product(a, b) => a.order()?.checked_mul(b.order()?),
        }
    }
}

impl GroupSpec {
    /// Specs of the Sylow subgroups, keyed by prime, when the spec is
    /// visibly a direct product of groups of prime-power order. `None` for
    /// groups such as `Sym(3)` that are not.
    pub fn sylow_factors(&self) -> Option<BTreeMap<u64, GroupSpec>> {
        let order = self.order()?;
        if order == 1 {
            return Some(BTreeMap::new());
        }
        if let Some((p, _)) = prime_power(order) {
            return Some(BTreeMap::from([(p, self.clone())]));
        }
        match self {
            GroupSpec::Cyclic(n) => Some(
                factorize(*n)
                    .into_iter()
                    .map(|(p, e)| (p, GroupSpec::Cyclic(p.pow(e))))
                    .collect(),
            ),
            GroupSpec::Abelian(ds) => {
                let mut parts: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
                for &d in ds {
                    for (p, e) in factorize(d) {
                        parts.entry(p).or_default().push(p.pow(e));
                    }
                }
                Some(
                    parts
                        .into_iter()
                        .map(|(p, mut qs)| {
                            let spec = if qs.len() == 1 {
                                GroupSpec::Cyclic(qs.pop().unwrap())
                            } else {
                                GroupSpec::Abelian(qs)
                            };
                            (p, spec)
                        })
                        .collect(),
                )
            }
            GroupSpec::Product(a, b) => {
                let mut out = a.sylow_factors()?;
                for (p, sb) in b.sylow_factors()? {
                    let merged = match out.remove(&p) {
                        Some(sa) => GroupSpec::Product(Box::new(sa), Box::new(sb)),
                        None => sb,
                    };
                    out.insert(p, merged);
                }
                Some(out)
            }
            _ => None,
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(n) => write!(f, "Z({n})"),
            GroupSpec::Homocyclic {
                prime,
                exponent,
                rank,
            } => write!(f, "Z({})^{rank}", prime.pow(*exponent)),
            GroupSpec::Abelian(ds) => {
                let parts: Vec<String> = ds.iter().map(u64::to_string).collect();
                write!(f, "Ab[{}]", parts.join(","))
            }
            GroupSpec::Symmetric(n) => write!(f, "Sym({n})"),
            GroupSpec::Dihedral(n) => write!(f, "Dih({n})"),
            GroupSpec::Quaternion => write!(f, "Q8"),
            GroupSpec::Product(a, b) => write!(f, "P({a},{b})"),
        }
    }
}

impl FromStr for GroupSpec {
    type Err = SpecError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_group_spec(s)
    }
}

pub fn parse_group_spec(text: &str) -> Result<GroupSpec, SpecError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let spec = p.spec()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(spec)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, msg: impl Into<String>) -> SpecError {
        SpecError::Syntax {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(token.as_bytes()) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<(), SpecError> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{token}`")))
        }
    }

    fn number(&mut self) -> Result<u64, SpecError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        let value: u64 = digits.parse().map_err(|_| SpecError::Syntax {
            pos: start,
            msg: "number out of range".into(),
        })?;
        if value == 0 {
            return Err(SpecError::NonPositive { pos: start });
        }
        Ok(value)
    }

    fn spec(&mut self) -> Result<GroupSpec, SpecError> {
        if self.eat("Z(") {
            let n = self.number()?;
            self.expect(")")?;
            if self.eat("^") {
                let rank = self.number()?;
                return GroupSpec::homocyclic(n, rank);
            }
            Ok(GroupSpec::Cyclic(n))
        } else if self.eat("Ab[") {
            let mut ds = vec![self.number()?];
            while self.eat(",") {
                ds.push(self.number()?);
            }
            self.expect("]")?;
            Ok(GroupSpec::Abelian(ds))
        } else if self.eat("Sym(") {
            let n = self.number()?;
            self.expect(")")?;
            if n > MAX_SYM_DEGREE {
                return Err(SpecError::SymTooLarge(n));
            }
            Ok(GroupSpec::Symmetric(n))
        } else if self.eat("Dih(") {
            let n = self.number()?;
            self.expect(")")?;
            Ok(GroupSpec::Dihedral(n))
        } else if self.eat("Q8") {
            Ok(GroupSpec::Quaternion)
        } else if self.eat("P(") {
            let a = self.spec()?;
            self.expect(",")?;
            let b = self.spec()?;
            self.expect(")")?;
            Ok(GroupSpec::Product(Box::new(a), Box::new(b)))
        } else {
            Err(self.error("expected one of Z(, Ab[, Sym(, Dih(, Q8, P("))
        }
    }
}
