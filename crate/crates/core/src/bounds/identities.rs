use num_bigint::BigInt;
use num_traits::Zero;

use super::{choose, Analyzer};
use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::par;
use crate::report::{Relation, Report, Witness};
use crate::vectors::binomial;

/// For every facet `σ` of a flag `(d−1)`-pseudomanifold:
/// `Σ_{τ⊂σ, |τ|=d−2} f₀(lk τ) = |∪ V(lk τ)| + 2d(d−2)`.
pub fn codim2_identity_check(c: &Complex) -> Result<Report> {
    const CHECK: &str = "codim2";
    let an = Analyzer::new(c, CHECK)?;
    let d = an.facet_size();
    if d < 2 {
        return Err(Error::precondition(CHECK, "dimension must be at least 1"));
    }
    let witnesses = par::map(c.facets(), |sigma| {
        let mut union = Vec::new();
        let mut sum = 0i64;
        for tau in sigma.subsets_of_size(d - 2) {
            let lk = an.link_vertices(&tau);
            sum += lk.len() as i64;
            union.extend_from_slice(lk);
        }
        union.sort_unstable();
        union.dedup();
        let rhs = union.len() as i64 + 2 * (d as i64) * (d as i64 - 2);
        Witness::compare("codim-2 link sizes", Some(sigma.clone()), sum, Relation::Eq, rhs)
            .with_detail(format!("union {} + {}", union.len(), 2 * d * (d - 2)))
    });
    Ok(Report::from_witnesses(CHECK, witnesses).with_note(format!("{} facets checked", c.facets().len())))
}

/// `Σ_{i=k+1}^{2m−2} (−1)^{i−k+1} C(i,k) C(2m−2,i) = C(2m−2,k)` for
/// `1 ≤ k ≤ 2m−3`.
pub fn binomial_identity_check(m: usize, k: usize) -> Result<Report> {
    const CHECK: &str = "binomial";
    if m < 2 || k < 1 || k + 3 > 2 * m {
        return Err(Error::parameter(format!("need m >= 2 and 1 <= k <= 2m-3 (m={m}, k={k})")));
    }
    let (m, k) = (m as i64, k as i64);
    let top = 2 * m - 2;
    let lhs = (k + 1..=top).fold(BigInt::zero(), |acc, i| {
        let term = binomial(i, k) * binomial(top, i);
        if (i - k + 1) % 2 == 0 {
            acc + term
        } else {
            acc - term
        }
    });
    let rhs = binomial(top, k);
    let w = Witness::compare(format!("m={m}, k={k}"), None, lhs.clone(), Relation::Eq, rhs.clone());
    Ok(Report::from_witnesses(CHECK, vec![w]).with_sides(lhs, rhs))
}

/// For every facet and `1 < k ≤ 2m−2`:
/// `a_k = C(2m−2,k)·a_{2m−2} − 4m(2m−2−k)·C(2m−1,k) + Σ_{i=k}^{2m−3} C(i,k)·b_i`.
pub fn a_k_formula_check(c: &Complex) -> Result<Report> {
    const CHECK: &str = "akformula";
    let an = Analyzer::new(c, CHECK)?;
    let m = an.half(CHECK)? as i64;
    let stats = an.all_stats();
    let mut witnesses = Vec::new();
    for s in &stats {
        for k in 2..=2 * m - 2 {
            let tail: i64 = (k..=2 * m - 3).map(|i| choose(i, k) * s.b[i as usize]).sum();
            let rhs = choose(2 * m - 2, k) * s.a[(2 * m - 2) as usize]
                - 4 * m * (2 * m - 2 - k) * choose(2 * m - 1, k)
                + tail;
            witnesses.push(Witness::compare(
                format!("a_{k}"),
                Some(s.facet.clone()),
                s.a[k as usize],
                Relation::Eq,
                rhs,
            ));
        }
    }
    Ok(Report::from_witnesses(CHECK, witnesses)
        .with_note(format!("{} facets, m = {m}", stats.len()))
        .with_note("constant term taken with a negative sign: -4m(2m-2-k)C(2m-1,k)"))
}

/// For every facet and `1 ≤ k ≤ 2m−3`:
/// `a_k − b_k = Σ_{j=1}^{2m−1−k} (−1)^{j+1} C(k+j,k)·a_{k+j}`.
pub fn eq1_check(c: &Complex) -> Result<Report> {
    const CHECK: &str = "eq1";
    let an = Analyzer::new(c, CHECK)?;
    let m = an.half(CHECK)? as i64;
    let stats = an.all_stats();
    let mut witnesses = Vec::new();
    for s in &stats {
        for k in 1..=2 * m - 3 {
            let rhs: i64 = (1..=2 * m - 1 - k)
                .map(|j| {
                    let t = choose(k + j, k) * s.a[(k + j) as usize];
                    if j % 2 == 1 {
                        t
                    } else {
                        -t
                    }
                })
                .sum();
            witnesses.push(Witness::compare(
                format!("a_{k} - b_{k}"),
                Some(s.facet.clone()),
                s.a[k as usize] - s.b[k as usize],
                Relation::Eq,
                rhs,
            ));
        }
    }
    Ok(Report::from_witnesses(CHECK, witnesses).with_note(format!("{} facets, m = {m}", stats.len())))
}
