use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};

use super::structure::join_detect;
use super::Analyzer;
use crate::classify::{betti_numbers, is_eulerian, is_homology_manifold, is_normal_pseudomanifold, DEFAULT_FIELD};
use crate::complex::{Complex, Face};
use crate::error::{Error, Result};
use crate::flag::require_flag;
use crate::gen::balanced_lengths;
use crate::par;
use crate::report::{Quantity, Relation, Report, Status, Witness};
use crate::vectors::{f_vector, gamma_vector, h_vector, FVector};

/// Coefficients of `Π (1 + kᵢ t + kᵢ t²)`, the f-polynomial of a join of
/// cycles of lengths `kᵢ`.
fn join_polynomial(lengths: &[usize]) -> FVector {
    let mut poly = vec![BigInt::one()];
    for &k in lengths {
        let k = BigInt::from(k);
        let mut next = vec![BigInt::zero(); poly.len() + 2];
        for (i, c) in poly.iter().enumerate() {
            next[i] += c;
            next[i + 1] += c * &k;
            next[i + 2] += c * &k;
        }
        poly = next;
    }
    FVector::new(poly)
}

/// f-vector of the balanced join of `m` cycles on `n` vertices, by exact
/// polynomial multiplication.
pub fn reference_f(m: usize, n: usize) -> Result<FVector> {
    if m < 2 || n < 4 * m {
        return Err(Error::parameter(format!("need m >= 2 and n >= 4m (m={m}, n={n})")));
    }
    Ok(join_polynomial(&balanced_lengths(m, n)))
}

/// Top face count of the suspension of the balanced join of `m` cycles on
/// `n − 2` vertices.
fn star_top(m: usize, n: i64) -> i64 {
    let base = (n - 2).max(0) as usize;
    if m == 0 {
        return 2;
    }
    2 * balanced_lengths(m, base).iter().product::<usize>() as i64
}

/// Per facet: `Σ_{v∈σ} f₀(lk v) ≤ 2(m−1)n + 4m`. At equality both
/// conditions for equality are evaluated: the cover condition
/// `∪_{v∈σ−τ} V(lk(v ∪ τ)) = V(lk τ)` for every `τ ⊂ σ` with `|σ−τ| ≥ 3`
/// (reported alongside its form `b_i = 0` for `2 ≤ i ≤ 2m−3`), and
/// `∪_{|δ|=2m−2} V(lk δ) = V(Δ)`. Every facet also carries the exact
/// decomposition `a₁ = |∪_{v∈σ} V(lk v)| + 4m + (2m−3)|∪_δ V(lk δ)| + Σ (i−1) b_i`.
pub fn vertex_link_sum_check(c: &Complex) -> Result<Report> {
    const CHECK: &str = "vertexsum";
    let an = Analyzer::new(c, CHECK)?;
    let m = an.half(CHECK)?;
    if m < 2 {
        return Err(Error::precondition(CHECK, "needs m >= 2"));
    }
    let n = an.n() as i64;
    let mi = m as i64;
    let bound = 2 * (mi - 1) * n + 4 * mi;
    let per_facet = par::map_range(c.facets().len(), |i| {
        let s = an.stats(i);
        let sigma = &s.facet;
        let mut out = vec![Witness::compare(
            "vertex link sum",
            Some(sigma.clone()),
            s.a[1],
            Relation::Le,
            bound,
        )];
        let mut vertex_union: Vec<_> = sigma
            .vertices()
            .iter()
            .flat_map(|&v| an.link_vertices(&Face::from_sorted(vec![v])).to_vec())
            .collect();
        vertex_union.sort_unstable();
        vertex_union.dedup();
        let weighted: i64 = (2..=2 * mi - 3).map(|i| (i - 1) * s.b[i as usize]).sum();
        let decomposition = vertex_union.len() as i64
            + 4 * mi
            + (2 * mi - 3) * s.codim2_union.len() as i64
            + weighted;
        out.push(
            Witness::compare("inclusion-exclusion form", Some(sigma.clone()), s.a[1], Relation::Eq, decomposition)
                .with_detail(format!(
                    "vertex cover {}, codim-2 cover {}, weighted b {weighted}",
                    vertex_union.len(),
                    s.codim2_union.len()
                )),
        );
        let equal = s.a[1] == bound;
        if equal {
            let d = sigma.len();
            let bad_tau = sigma.subsets().filter(|t| d - t.len() >= 3).find(|tau| {
                let mut cover: Vec<_> = sigma
                    .difference(tau)
                    .vertices()
                    .iter()
                    .flat_map(|&v| an.link_vertices(&tau.with(v)).to_vec())
                    .collect();
                cover.sort_unstable();
                cover.dedup();
                let target: &[_] = if tau.is_empty() { c.vertices() } else { an.link_vertices(tau) };
                cover.as_slice() != target
            });
            let mut w = Witness::flag("equality: link covers for |σ−τ| >= 3", Some(sigma.clone()), bad_tau.is_none());
            if let Some(t) = bad_tau {
                w = w.with_detail(format!("fails at τ = {t}"));
            }
            out.push(w);
            let b_zero = (2..=2 * m - 3).all(|i| s.b[i] == 0);
            out.push(
                Witness::flag("equality: b_i = 0 for 2 <= i <= 2m-3", Some(sigma.clone()), b_zero)
                    .with_detail(format!("b = {:?}", &s.b[..]))
            );
            out.push(Witness::compare(
                "equality: codim-2 links cover V",
                Some(sigma.clone()),
                s.codim2_union.len() as i64,
                Relation::Eq,
                n,
            ));
        }
        (equal, out)
    });
    let equal_count = per_facet.iter().filter(|(e, _)| *e).count();
    let total = per_facet.len();
    let witnesses = per_facet.into_iter().flat_map(|(_, w)| w).collect();
    let mut r = Report::from_witnesses(CHECK, witnesses)
        .with_note(format!("bound 2(m-1)n+4m = {bound} (m={m}, n={n})"))
        .with_note(format!("equality on {equal_count} of {total} facets"));
    r.equality = Some(equal_count == total);
    Ok(r)
}

/// Per vertex, for `m ∈ {2, 3}`: `f_{2m−2}(lk v) ≤ f_{2m−2}(J*_{m−1}(f₀(lk v)))`,
/// and the radical-free algebraic form `2(N−2) ≥ F` (m = 2) or
/// `(N−2)² ≥ 2F` (m = 3) with `N = f₀(lk v)`, `F = f_{2m−2}(lk v)`.
pub fn link_inequality_check(c: &Complex) -> Result<Report> {
    const CHECK: &str = "linkineq";
    let an = Analyzer::new(c, CHECK)?;
    let m = an.half(CHECK)?;
    if !(2..=3).contains(&m) {
        return Err(Error::Unsupported(format!("{CHECK} is available for m = 2, 3 only (m = {m})")));
    }
    let per_vertex = par::map(c.vertices(), |&v| {
        let vf = Face::from_sorted(vec![v]);
        let big_n = an.link_size(&vf);
        let top = c.facets().iter().filter(|f| f.contains(v)).count() as i64;
        let rhs = star_top(m - 1, big_n);
        let integer = Witness::compare("integer form", Some(vf.clone()), top, Relation::Le, rhs)
            .with_detail(format!("f0(lk) = {big_n}"));
        let (lhs_alg, rhs_alg) = match m {
            2 => (top, 2 * (big_n - 2)),
            _ => (2 * top, (big_n - 2) * (big_n - 2)),
        };
        let algebraic = Witness::compare("algebraic form", Some(vf), lhs_alg, Relation::Le, rhs_alg);
        [integer, algebraic]
    });
    let witnesses: Vec<Witness> = per_vertex.into_iter().flatten().collect();
    let int_eq = witnesses
        .iter()
        .filter(|w| w.label == "integer form")
        .all(Witness::is_equality);
    let mut r = Report::from_witnesses(CHECK, witnesses).with_note(format!("m = {m}"));
    r.equality = Some(int_eq);
    Ok(r)
}

/// Per vertex of a 5-dimensional complex: `4γ₂(lk v) ≤ γ₁(lk v)²`. A link
/// whose h-vector is not symmetric is reported as a failing witness.
pub fn gamma_inequality_check(c: &Complex) -> Result<Report> {
    const CHECK: &str = "gamma";
    if c.dim() != 5 {
        return Err(Error::precondition(CHECK, format!("needs dimension 5, got {}", c.dim())));
    }
    let witnesses = par::map(c.vertices(), |&v| {
        let vf = Face::from_sorted(vec![v]);
        let lk = c.link(&vf).expect("vertex of c");
        let h = h_vector(&f_vector(&lk));
        match gamma_vector(&h) {
            Ok(g) => {
                let lhs = BigInt::from(4) * g.gamma(2);
                let rhs = g.gamma(1) * g.gamma(1);
                Witness::compare("4 gamma_2 <= gamma_1^2", Some(vf), lhs, Relation::Le, rhs)
                    .with_detail(format!("gamma = {:?}", g.counts().iter().map(ToString::to_string).collect::<Vec<_>>()))
            }
            Err(_) => Witness::flag("link is not Eulerian: h-vector not symmetric", Some(vf), false),
        }
    });
    Ok(Report::from_witnesses(CHECK, witnesses))
}

fn require_manifold_class(c: &Complex, check: &str) -> Result<()> {
    let eulerian = is_eulerian(c);
    let normal = is_normal_pseudomanifold(c);
    if eulerian.passed() && normal.passed() {
        return Ok(());
    }
    if is_homology_manifold(c, DEFAULT_FIELD)?.passed() {
        return Ok(());
    }
    let failing = if !eulerian.passed() { "eulerian" } else { "normal_pseudomanifold" };
    Err(Error::precondition(
        check,
        format!("neither an Eulerian normal pseudomanifold ({failing} fails) nor a homology manifold"),
    ))
}

/// Compares `f_i(c)` with `f_i(J_m(n))` for every `i`, and verifies
/// `Σ_v f_{2m−2}(lk v) = 2m·f_{2m−1}`, `f_{2m−2} = m·f_{2m−1}` and
/// `(2(m−1)n + 4m)·f_{2m−1} ≥ Σ_v f₀(lk v)·f_{2m−2}(lk v)`.
pub fn ubt_check(c: &Complex, m: usize) -> Result<Report> {
    const CHECK: &str = "ubt";
    require_flag(c, CHECK)?;
    if m < 2 {
        return Err(Error::parameter("m must be at least 2"));
    }
    if c.dim() != 2 * m as isize - 1 {
        return Err(Error::precondition(CHECK, format!("dimension {} is not 2m-1 = {}", c.dim(), 2 * m - 1)));
    }
    require_manifold_class(c, CHECK)?;
    let n = c.num_vertices();
    let f = f_vector(c);
    let reference = reference_f(m, n).map_err(|e| Error::precondition(CHECK, e.to_string()))?;
    let top = 2 * m as isize - 1;
    let mut witnesses = Vec::new();
    let mut equal_at = Vec::new();
    for i in 0..=top {
        let w = Witness::compare(format!("f_{i}"), None, f.f(i), Relation::Le, reference.f(i));
        if w.is_equality() {
            equal_at.push(i);
        }
        witnesses.push(w);
    }
    let per_vertex = par::map(c.vertices(), |&v| {
        let lk = c.link(&Face::from_sorted(vec![v])).expect("vertex of c");
        (lk.num_vertices() as i64, lk.facets().len() as i64)
    });
    let facets = f.f(top);
    let link_tops: i64 = per_vertex.iter().map(|p| p.1).sum();
    witnesses.push(Witness::compare(
        "sum of link facet counts = 2m f_{2m-1}",
        None,
        link_tops,
        Relation::Eq,
        BigInt::from(2 * m) * &facets,
    ));
    witnesses.push(Witness::compare(
        "f_{2m-2} = m f_{2m-1}",
        None,
        f.f(top - 1),
        Relation::Eq,
        BigInt::from(m) * &facets,
    ));
    let weighted: i64 = per_vertex.iter().map(|(a, b)| a * b).sum();
    let coefficient = 2 * (m as i64 - 1) * n as i64 + 4 * m as i64;
    witnesses.push(Witness::compare(
        "sum f0(lk v) f_{2m-2}(lk v) <= (2(m-1)n+4m) f_{2m-1}",
        None,
        weighted,
        Relation::Le,
        BigInt::from(coefficient) * &facets,
    ));
    let all_equal = equal_at.len() == (top + 1) as usize;
    let mut r = Report::from_witnesses(CHECK, witnesses)
        .with_sides(f.f(top), reference.f(top))
        .with_note(format!("reference f = ({reference}) for m={m}, n={n}"))
        .with_note(format!("equality at indices {equal_at:?}"));
    r.equality = Some(all_equal);
    Ok(r)
}

/// For a flag normal 3-pseudomanifold: `f₃ = f₁ − f₀ + χ`,
/// `2χ = Σ_v β₁(lk v)`, `f₂(lk v) = 2f₀(lk v) − 4 + 2β₁(lk v)` and the edge
/// bound `f₁ ≤ f₁(J₂(n))` when `χ = 0`, `f₁ < f₁(J₂(n)) + χ` otherwise,
/// with `(f₁ − n)(f₁ − f₁(J₂(n))) ≤ (f₁(J₂(n)) − 3n)χ`. `χ` comes from
/// Betti numbers over GF(p).
pub fn three_manifold_bound_check(c: &Complex, p: u32) -> Result<Report> {
    const CHECK: &str = "ns";
    require_flag(c, CHECK)?;
    if c.dim() != 3 {
        return Err(Error::precondition(CHECK, format!("needs dimension 3, got {}", c.dim())));
    }
    let normal = is_normal_pseudomanifold(c);
    if !normal.passed() {
        return Err(Error::precondition(CHECK, "not a normal pseudomanifold"));
    }
    let chi = betti_numbers(c, p)?.euler_characteristic();
    let f = f_vector(c);
    let n = c.num_vertices() as i64;
    let f0 = f.f(0);
    let f1 = f.f(1);
    let mut witnesses = vec![Witness::compare(
        "f3 = f1 - f0 + chi",
        None,
        f.f(3),
        Relation::Eq,
        &f1 - &f0 + chi,
    )];
    let per_vertex = par::map(c.vertices(), |&v| {
        let vf = Face::from_sorted(vec![v]);
        let lk = c.link(&vf).expect("vertex of c");
        let b1 = betti_numbers(&lk, p).map(|b| b.betti.get(1).copied().unwrap_or(0) as i64);
        (vf, lk.num_vertices() as i64, lk.facets().len() as i64, b1)
    });
    let mut beta_sum = 0i64;
    for (vf, lk_n, lk_top, b1) in per_vertex {
        let b1 = b1?;
        beta_sum += b1;
        witnesses.push(Witness::compare(
            "f2(lk v) = 2 f0(lk v) - 4 + 2 beta1(lk v)",
            Some(vf),
            lk_top,
            Relation::Eq,
            2 * lk_n - 4 + 2 * b1,
        ));
    }
    witnesses.push(Witness::compare("2 chi = sum beta1(lk v)", None, 2 * chi, Relation::Eq, beta_sum));
    let f1_ref = BigInt::from(n + (n / 2) * ((n + 1) / 2));
    let bound = if chi == 0 {
        Witness::compare("f1 <= f1(J2(n))", None, f1.clone(), Relation::Le, f1_ref.clone())
    } else {
        Witness::compare("f1 < f1(J2(n)) + chi", None, f1.clone(), Relation::Lt, &f1_ref + chi)
    };
    let bound_rhs = bound.rhs.clone().expect("comparison");
    witnesses.push(bound);
    let bn = BigInt::from(n);
    witnesses.push(Witness::compare(
        "(f1 - n)(f1 - f1(J2(n))) <= (f1(J2(n)) - 3n) chi",
        None,
        (&f1 - &bn) * (&f1 - &f1_ref),
        Relation::Le,
        (&f1_ref - BigInt::from(3) * &bn) * chi,
    ));
    Ok(Report::from_witnesses(CHECK, witnesses)
        .with_sides(Quantity::from(f1), bound_rhs)
        .with_note(format!("chi = {chi} over GF({p}); f1(J2({n})) = {f1_ref}")))
}

/// Evaluates `f_{2m−1}(c) > f_{2m−1}(J_m(n)) − b·n^{m−1}`. A complex above
/// the threshold that is not a join of `m` cycles fails the check and the
/// report records the resulting upper bound on `b`.
pub fn near_extremal_check(c: &Complex, b: &BigRational) -> Result<Report> {
    const CHECK: &str = "near_extremal";
    let an = Analyzer::new(c, CHECK)?;
    let m = an.half(CHECK)?;
    if !(2..=3).contains(&m) {
        return Err(Error::Unsupported(format!("{CHECK} is available for m = 2, 3 only (m = {m})")));
    }
    if !is_homology_manifold(c, DEFAULT_FIELD)?.passed() {
        return Err(Error::precondition(CHECK, "not a homology manifold over GF(2)"));
    }
    let n = an.n();
    let reference = reference_f(m, n).map_err(|e| Error::precondition(CHECK, e.to_string()))?;
    let top = 2 * m as isize - 1;
    let f_top = BigRational::from_integer(BigInt::from(c.facets().len()));
    let f_ref = BigRational::from_integer(reference.f(top));
    let scale = BigRational::from_integer(Pow::pow(BigInt::from(n), (m - 1) as u32));
    let threshold = &f_ref - b * &scale;
    let join = join_detect(c)?.is_join_of_cycles(m);
    let above = f_top > threshold;
    let mut w = Witness::compare("f_{2m-1} vs threshold", None, f_top.clone(), Relation::Le, threshold.clone());
    let mut r_notes = vec![format!("threshold f_{top}(J_{m}({n})) - b n^{} = {}", m - 1, Quantity::from(threshold.clone()))];
    if join {
        w.holds = true;
        w = w.with_detail("join of m cycles");
    } else if above {
        let bound = (&f_ref - &f_top) / &scale;
        w = w.with_detail("not a join of m cycles and above the threshold");
        r_notes.push(format!("counterexample candidate: requires b({m}) <= {}", Quantity::from(bound)));
    }
    let mut r = Report::from_witnesses(CHECK, vec![w]).with_sides(f_top, threshold);
    r.notes.extend(r_notes);
    r.notes.push(format!("above threshold: {above}; join of {m} cycles: {join}"));
    if join {
        r = r.with_status(Status::Pass);
    }
    Ok(r)
}
