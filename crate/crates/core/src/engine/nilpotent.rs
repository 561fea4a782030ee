//! Nilpotent groups as direct products of their Sylow subgroups.

use super::{assemble, check_same_order, quotient_aut, Analysis, AutReport, EngineError, Method};
use crate::arith::{gcd, prime_power};
use crate::expr::GroupExpr;
use crate::group::{direct_product, FiniteGroup};
use crate::men::merge_twins;
use crate::oracle::{are_isomorphic, Caps, OracleError, WeightedGraph};

/// Merged quotient for one Sylow factor.
#[derive(Debug, Clone)]
pub struct SylowQuotient {
    pub prime: u64,
    /// Quotient nodes of `P(G)` lying inside the factor, twins merged.
    pub merged: WeightedGraph,
    pub aut: GroupExpr,
}

fn check_factors(g: &FiniteGroup, factors: &[FiniteGroup]) -> Result<Vec<u64>, EngineError> {
    let nontrivial: Vec<&FiniteGroup> = factors.iter().filter(|f| f.size() > 1).collect();
    if nontrivial.len() < 2 {
        return Err(EngineError::NotApplicable(
            "need at least two nontrivial Sylow factors".into(),
        ));
    }
    let mut primes = Vec::new();
    for (i, f) in factors.iter().enumerate() {
        let size = f.size() as u64;
        let Some((p, _)) = prime_power(size) else {
            return Err(EngineError::NotApplicable(format!(
                "factor {} has order {size}, not a prime power",
                f.description()
            )));
        };
        for other in &factors[..i] {
            if gcd(size, other.size() as u64) != 1 {
                return Err(EngineError::NotApplicable(format!(
                    "factor orders {} and {size} are not coprime",
                    other.size()
                )));
            }
        }
        primes.push(p);
    }
    let product: usize = factors.iter().map(FiniteGroup::size).product();
    if product != g.size() {
        return Err(EngineError::NotApplicable(format!(
            "factors multiply to {product}, but |G| = {}",
            g.size()
        )));
    }
    Ok(primes)
}

/// Index strides of the lexicographic direct-product ordering.
fn strides(factors: &[FiniteGroup]) -> Vec<usize> {
    let mut out = vec![1; factors.len()];
    for i in (0..factors.len().saturating_sub(1)).rev() {
        out[i] = out[i + 1] * factors[i + 1].size();
    }
    out
}

/// For each Sylow factor: the quotient of `P(prod factors)` restricted to
/// the factor's elements, with nodes of equal closed neighbourhood merged,
/// and its automorphism expression. Each merged graph is checked against
/// the factor's own quotient.
pub fn sylow_quotients(
    g: &FiniteGroup,
    factors: &[FiniteGroup],
    caps: &Caps,
) -> Result<Vec<SylowQuotient>, EngineError> {
    let primes = check_factors(g, factors)?;
    let product = Analysis::new(direct_product(factors, "sylow product")?)?;
    let stride = strides(factors);
    let q = product.quotient.as_weighted();

    let mut out = Vec::new();
    for (i, factor) in factors.iter().enumerate() {
        if factor.size() == 1 {
            continue;
        }
        let inside = |element: usize| {
            (0..factors.len())
                .all(|j| j == i || (element / stride[j]).is_multiple_of(factors[j].size()))
        };
        let mut nodes = Vec::new();
        for (id, class) in product.partition.classes().iter().enumerate() {
            let hits = class
                .iter()
                .filter(|&&v| inside(product.graph.element(v)))
                .count();
            if hits == class.len() {
                nodes.push(id);
            } else if hits > 0 {
                return Err(EngineError::NotApplicable(format!(
                    "class {id} straddles the Sylow {}-subgroup",
                    primes[i]
                )));
            }
        }
        let merged = merge_twins(&q.induced(&nodes)).graph;

        let own = Analysis::new(factor.clone())?;
        let own_merged = merge_twins(own.quotient.as_weighted()).graph;
        match are_isomorphic(&merged, &own_merged, caps) {
            Ok(Some(_)) => {}
            Ok(None) => {
                return Err(EngineError::Inconsistent {
                    left_method: "restricted product quotient".into(),
                    left: format!("{merged:?}"),
                    right_method: format!("quotient of {}", factor.description()),
                    right: format!("{own_merged:?}"),
                })
            }
            Err(OracleError::TooManyNodes { .. } | OracleError::CountCapExceeded { .. }) => {
                check_same_order(
                    "restricted product quotient",
                    &quotient_aut(&merged, caps)?,
                    &format!("quotient of {}", factor.description()),
                    &quotient_aut(&own_merged, caps)?,
                )?;
            }
            Err(e) => return Err(e.into()),
        }
        let aut = quotient_aut(&merged, caps)?;
        out.push(SylowQuotient {
            prime: primes[i],
            merged,
            aut,
        });
    }
    Ok(out)
}

/// Quotient automorphisms as the product over Sylow factors, extended by
/// the symmetric groups on the classes of `P(G)`. Cross-checked against
/// the generic quotient pipeline.
pub fn aut_nilpotent(
    analysis: &Analysis,
    factors: &[FiniteGroup],
    caps: &Caps,
) -> Result<AutReport, EngineError> {
    let parts = sylow_quotients(&analysis.group, factors, caps)?;
    let q = GroupExpr::product(parts.into_iter().map(|s| s.aut).collect());
    let generic = quotient_aut(analysis.quotient.as_weighted(), caps)?;
    check_same_order(
        Method::SylowProduct.as_str(),
        &q,
        Method::Quotient.as_str(),
        &generic,
    )?;
    let mut all = vec![q.clone()];
    all.extend(analysis.class_symmetric_factors());
    assemble(analysis, q, GroupExpr::extension(all), Method::SylowProduct)
}
