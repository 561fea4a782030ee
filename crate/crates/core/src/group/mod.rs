//! Finite groups as explicit Cayley tables.
//!
//! Element index 0 is always the identity. Direct products order their
//! elements lexicographically by coordinate tuple.

mod build;
pub mod spec;

use std::collections::BTreeMap;

use thiserror::Error;

use crate::arith::{self, gcd};

pub use build::{direct_product, realize, realize_with_limit, DEFAULT_MAX_ORDER};
pub use spec::{parse_group_spec, GroupSpec, SpecError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("group order {order} exceeds the configured maximum {max}")]
    TooLarge { order: u64, max: u64 },
    #[error("group order overflows")]
    Overflow,
    #[error("group axiom violated: {0}")]
    Axiom(String),
}

#[derive(Debug, Clone)]
pub struct FiniteGroup {
    size: usize,
    table: Vec<u32>,
    inverses: Vec<usize>,
    orders: Vec<usize>,
    labels: Vec<String>,
    description: String,
}

impl FiniteGroup {
    /// Builds a group from a row-major multiplication table. The identity
    /// must be index 0; element orders and inverses are derived here.
    pub fn from_table(
        table: Vec<u32>,
        labels: Vec<String>,
        description: impl Into<String>,
    ) -> Result<Self, GroupError> {
        let size = labels.len();
        if size == 0 || table.len() != size * size {
            return Err(GroupError::Axiom(
                "table shape does not match labels".into(),
            ));
        }
        if table.iter().any(|&z| z as usize >= size) {
            return Err(GroupError::Axiom("table entry out of range".into()));
        }
        for x in 0..size {
            if table[x] as usize != x || table[x * size] as usize != x {
                return Err(GroupError::Axiom(format!(
                    "element 0 is not a two-sided identity for {}",
                    labels[x]
                )));
            }
        }
        let mut inverses = vec![usize::MAX; size];
        for x in 0..size {
            let row = &table[x * size..(x + 1) * size];
            let inv = row
                .iter()
                .position(|&z| z == 0)
                .ok_or_else(|| GroupError::Axiom(format!("{} has no inverse", labels[x])))?;
            if table[inv * size + x] != 0 {
                return Err(GroupError::Axiom(format!(
                    "{} has no two-sided inverse",
                    labels[x]
                )));
            }
            inverses[x] = inv;
        }
        let mut group = FiniteGroup {
            size,
            table,
            inverses,
            orders: Vec::new(),
            labels,
            description: description.into(),
        };
        group.orders = (0..size).map(|x| group.power_cycle(x).len()).collect();
        Ok(group)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn identity(&self) -> usize {
        0
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.table[x * self.size + y] as usize
    }

    pub fn inverse(&self, x: usize) -> usize {
        self.inverses[x]
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn element_by_label(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Canonical spec string this group was realized from.
    pub fn description(&self) -> &str {
        &self.description
    }

    pub fn pow(&self, x: usize, k: u64) -> usize {
        let mut result = 0;
        let mut base = x;
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = self.mul(result, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        result
    }

    /// `[x, x^2, ..., x^o(x) = e]`.
    fn power_cycle(&self, x: usize) -> Vec<usize> {
        let mut out = vec![x];
        let mut cur = x;
        while cur != 0 {
            cur = self.mul(cur, x);
            out.push(cur);
        }
        out
    }

    pub fn element_order(&self, x: usize) -> usize {
        self.orders[x]
    }

    /// Elements of `<x>` in increasing index order.
    pub fn cyclic_subgroup(&self, x: usize) -> Vec<usize> {
        let mut out = self.power_cycle(x);
        out.sort_unstable();
        out
    }

    /// Generators of `<x>`, i.e. `x^i` with `gcd(i, o(x)) = 1`, in index order.
    pub fn gen_set(&self, x: usize) -> Vec<usize> {
        let n = self.orders[x] as u64;
        let mut out: Vec<usize> = (1..=n)
            .filter(|&i| gcd(i, n) == 1)
            .map(|i| self.pow(x, i))
            .collect();
        out.sort_unstable();
        out
    }

    pub fn centralizer_size(&self, x: usize) -> usize {
        (0..self.size)
            .filter(|&y| self.mul(x, y) == self.mul(y, x))
            .count()
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.size).all(|x| (x + 1..self.size).all(|y| self.mul(x, y) == self.mul(y, x)))
    }

    pub fn exponent(&self) -> u64 {
        self.orders
            .iter()
            .fold(1u64, |acc, &o| acc / gcd(acc, o as u64) * o as u64)
    }

    /// Number of elements of each order.
    pub fn order_statistics(&self) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        for &o in &self.orders {
            *out.entry(o).or_insert(0) += 1;
        }
        out
    }

    /// Exhaustive associativity, identity and inverse check. Cubic in the
    /// group order.
    pub fn verify_axioms(&self) -> Result<(), GroupError> {
        for x in 0..self.size {
            if self.mul(x, 0) != x || self.mul(0, x) != x {
                return Err(GroupError::Axiom(format!(
                    "identity fails on {}",
                    self.label(x)
                )));
            }
            let inv = self.inverse(x);
            if self.mul(x, inv) != 0 || self.mul(inv, x) != 0 {
                return Err(GroupError::Axiom(format!(
                    "inverse fails on {}",
                    self.label(x)
                )));
            }
            for y in 0..self.size {
                let xy = self.mul(x, y);
                for z in 0..self.size {
                    if self.mul(xy, z) != self.mul(x, self.mul(y, z)) {
                        return Err(GroupError::Axiom(format!(
                            "associativity fails on ({}, {}, {})",
                            self.label(x),
                            self.label(y),
                            self.label(z)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// For an abelian group, the orders of the cyclic factors in its primary
    /// decomposition, grouped by prime: `p -> [p^e1, p^e2, ...]` with
    /// `e1 >= e2 >= ...`. `None` for nonabelian groups.
    pub fn primary_invariants(&self) -> Option<BTreeMap<u64, Vec<u64>>> {
        if !self.is_abelian() {
            return None;
        }
        let mut out = BTreeMap::new();
        for (p, _) in arith::factorize(self.size as u64) {
            // log_p |{x : x^(p^k) = 1}| for k = 0, 1, ...
            let mut logs = vec![0u32];
            let mut k = 1u32;
            loop {
                let pk = p.pow(k);
                let count = self.orders.iter().filter(|&&o| pk % o as u64 == 0).count() as u64;
                let log = count.ilog(p);
                if log == *logs.last().unwrap() {
                    break;
                }
                logs.push(log);
                k += 1;
            }
            // factors of order >= p^k number logs[k] - logs[k-1]
            let top = logs.len() - 1;
            let mut factors = Vec::new();
            for e in (1..=top).rev() {
                let at_least_e = logs[e] - logs[e - 1];
                let at_least_next = if e < top { logs[e + 1] - logs[e] } else { 0 };
                for _ in 0..(at_least_e - at_least_next) {
                    factors.push(p.pow(e as u32));
                }
            }
            out.insert(p, factors);
        }
        Some(out)
    }
}
