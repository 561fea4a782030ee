//! Closed forms for cyclic and homocyclic groups.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use super::EngineError;
use crate::arith::{divisors, factorize, is_prime, totient};
use crate::expr::GroupExpr;

/// Largest number of identical factors a closed form will spell out.
pub const MAX_REPEAT: u64 = 1 << 20;

/// `prod_{d | n, d > 1} S_phi(d)` for `n` with at least two prime divisors.
pub fn aut_cyclic_formula(n: u64) -> Result<GroupExpr, EngineError> {
    let primes = factorize(n);
    if primes.len() < 2 {
        let hint = match primes.as_slice() {
            [(p, _)] => format!(
                "{n} is a power of {p}; the power graph is complete, use the complete-graph form S{}",
                n - 1
            ),
            _ => format!("{n} has no prime divisor"),
        };
        return Err(EngineError::NotApplicable(hint));
    }
    let factors = divisors(n)
        .into_iter()
        .filter(|&d| d > 1)
        .map(|d| GroupExpr::Sym(totient(d)))
        .collect();
    Ok(GroupExpr::product(factors))
}

/// `S_{p^m - 1}`: the power graph of a cyclic p-group is complete.
pub fn aut_prime_power_cyclic(p: u64, m: u32) -> Result<GroupExpr, EngineError> {
    if !is_prime(p) {
        return Err(EngineError::NotApplicable(format!("{p} is not prime")));
    }
    if m == 0 {
        return Err(EngineError::NotApplicable(
            "exponent must be at least 1".into(),
        ));
    }
    let q = p
        .checked_pow(m)
        .ok_or_else(|| EngineError::TooLarge(format!("{p}^{m}")))?;
    Ok(GroupExpr::Sym(q - 1))
}

fn exact_div(a: &BigUint, b: &BigUint, what: &str) -> Result<BigUint, EngineError> {
    if b.is_zero() || !(a % b).is_zero() {
        return Err(EngineError::NonIntegral(format!("{what} = {a}/{b}")));
    }
    Ok(a / b)
}

fn small(x: &BigUint, what: &str) -> Result<u64, EngineError> {
    x.to_u64()
        .filter(|&v| v <= MAX_REPEAT)
        .ok_or_else(|| EngineError::TooLarge(format!("{what} = {x}")))
}

/// Component counts `r_1..r_m` for `Z(p^m)^n`:
/// `r_t = (p^{tn} - p^{(t-1)n}) / (p^t - p^{t-1})`.
pub fn homocyclic_component_counts(p: u64, m: u32, n: u64) -> Result<Vec<BigUint>, EngineError> {
    let p = BigUint::from(p);
    let n = u32::try_from(n).map_err(|_| EngineError::TooLarge(format!("rank {n}")))?;
    (1..=m)
        .map(|t| {
            let num = p.pow(t * n) - p.pow((t - 1) * n);
            let den = p.pow(t) - p.pow(t - 1);
            exact_div(&num, &den, &format!("r_{t}"))
        })
        .collect()
}

/// Nested wreath `((S_{k_m} wr ...) wr S_{k_2}) wr S_{k_1}` times
/// `prod_i S_{p^i - p^{i-1}}^{r_i}`, with `k_1 = r_1` and
/// `k_{i+1} = r_{i+1} / r_i`.
pub fn aut_homocyclic_formula(p: u64, m: u32, n: u64) -> Result<GroupExpr, EngineError> {
    if !is_prime(p) {
        return Err(EngineError::NotApplicable(format!("{p} is not prime")));
    }
    if m == 0 {
        return Err(EngineError::NotApplicable(
            "exponent must be at least 1".into(),
        ));
    }
    if n < 2 {
        return Err(EngineError::NotApplicable(
            "a homocyclic group needs rank at least 2; rank 1 is cyclic".into(),
        ));
    }
    let r = homocyclic_component_counts(p, m, n)?;
    let mut k = vec![r[0].clone()];
    for i in 1..r.len() {
        k.push(exact_div(&r[i], &r[i - 1], &format!("k_{}", i + 1))?);
    }
    let mut nested = GroupExpr::Sym(small(&k[m as usize - 1], "k_m")?);
    for i in (0..m as usize - 1).rev() {
        nested = GroupExpr::wreath(nested, small(&k[i], &format!("k_{}", i + 1))?);
    }
    let mut factors = vec![nested];
    let pb = BigUint::from(p);
    for (i, r_i) in r.iter().enumerate() {
        let i = i as u32 + 1;
        let degree = pb.pow(i) - pb.pow(i - 1);
        let degree = degree
            .to_u64()
            .ok_or_else(|| EngineError::TooLarge(format!("p^{i} - p^{}", i - 1)))?;
        let copies = small(r_i, &format!("r_{i}"))?;
        factors.push(GroupExpr::sym_power(degree, copies as usize));
    }
    Ok(GroupExpr::product(factors))
}

/// Product of factorials, the order contribution of class permutations.
pub fn factorial_product(weights: impl IntoIterator<Item = u64>) -> BigUint {
    weights
        .into_iter()
        .fold(BigUint::one(), |acc, w| acc * crate::arith::factorial(w))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn order(e: &GroupExpr) -> u64 {
        e.order().to_u64().unwrap()
    }

    #[test]
    fn cyclic_examples() {
        let e = aut_cyclic_formula(6).unwrap();
        assert_eq!(e.to_string(), "S1 x S2 x S2");
        assert_eq!(order(&e), 4);
        assert_eq!(order(&aut_cyclic_formula(12).unwrap()), 192);
        assert_eq!(
            aut_cyclic_formula(12).unwrap().to_string(),
            "S1 x S2^3 x S4"
        );
        assert_eq!(order(&aut_cyclic_formula(10).unwrap()), 576);
        assert!(matches!(
            aut_cyclic_formula(8),
            Err(EngineError::NotApplicable(msg)) if msg.contains("S7")
        ));
        assert!(aut_cyclic_formula(1).is_err());
    }

    #[test]
    fn prime_power_examples() {
        assert_eq!(order(&aut_prime_power_cyclic(2, 2).unwrap()), 6);
        assert_eq!(aut_prime_power_cyclic(3, 1).unwrap(), GroupExpr::Sym(2));
        assert_eq!(order(&aut_prime_power_cyclic(2, 3).unwrap()), 5040);
        assert!(aut_prime_power_cyclic(4, 1).is_err());
    }

    #[test]
    fn homocyclic_examples() {
        let e = aut_homocyclic_formula(2, 1, 2).unwrap();
        assert_eq!(order(&e), 6);
        assert_eq!(e.normalize().to_string(), "S3");

        let e = aut_homocyclic_formula(2, 2, 2).unwrap();
        assert_eq!(order(&e), 3072);
        let expected = GroupExpr::product(vec![
            GroupExpr::wreath(GroupExpr::Sym(2), 3),
            GroupExpr::sym_power(2, 6),
            GroupExpr::sym_power(1, 3),
        ]);
        assert_eq!(e.normalize(), expected.normalize());

        let e = aut_homocyclic_formula(3, 1, 2).unwrap();
        assert_eq!(order(&e), 384);
        assert_eq!(e.normalize().to_string(), "S4 x S2^4");

        assert!(aut_homocyclic_formula(2, 2, 1).is_err());
        assert!(aut_homocyclic_formula(6, 1, 2).is_err());
    }

    #[test]
    fn component_counts_are_integral() {
        for p in [2u64, 3, 5, 7] {
            for m in 1..=4 {
                for n in 2..=4 {
                    let r = homocyclic_component_counts(p, m, n).unwrap();
                    for w in r.windows(2) {
                        assert!((&w[1] % &w[0]).is_zero(), "p={p} m={m} n={n}");
                    }
                }
            }
        }
        let r = homocyclic_component_counts(2, 2, 2).unwrap();
        assert_eq!(r, vec![BigUint::from(3u8), BigUint::from(6u8)]);
    }

    #[test]
    fn huge_ranks_are_refused() {
        assert!(matches!(
            aut_homocyclic_formula(2, 1, 40),
            Err(EngineError::TooLarge(_))
        ));
    }
}
