//! Face-count vectors and their transforms, in exact integer arithmetic.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::report::{Quantity, Relation, Report, Witness};

/// `C(n, k)` as a big integer; zero outside `0 ≤ k ≤ n`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// `(f₋₁, f₀, …, f_{d−1})`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "Vec<Quantity>", try_from = "Vec<Quantity>")]
pub struct FVector(Vec<BigInt>);

impl FVector {
    pub fn new(counts: Vec<BigInt>) -> FVector {
        FVector(counts)
    }

    pub fn from_counts<T: Into<BigInt> + Copy>(counts: &[T]) -> FVector {
        FVector(counts.iter().map(|&c| c.into()).collect())
    }

    pub fn counts(&self) -> &[BigInt] {
        &self.0
    }

    /// `d`, one more than the dimension; the void complex has `d = −1`.
    pub fn d(&self) -> isize {
        self.0.len() as isize - 1
    }

    /// `f_i` for `i ≥ −1`; zero beyond the top dimension.
    pub fn f(&self, i: isize) -> BigInt {
        usize::try_from(i + 1)
            .ok()
            .and_then(|k| self.0.get(k).cloned())
            .unwrap_or_else(BigInt::zero)
    }

    /// `f_i` as `u64`, panicking on overflow; for counts of enumerated faces.
    pub fn f_u64(&self, i: isize) -> u64 {
        self.f(i).to_u64().expect("face count exceeds u64")
    }

    /// Coefficients of `Σ f_{i−1} tⁱ`.
    pub fn polynomial(&self) -> &[BigInt] {
        &self.0
    }
}

impl fmt::Display for FVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(BigInt::to_string).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// `(h₀, …, h_d)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "Vec<Quantity>", try_from = "Vec<Quantity>")]
pub struct HVector(Vec<BigInt>);

impl HVector {
    pub fn new(counts: Vec<BigInt>) -> HVector {
        HVector(counts)
    }

    pub fn counts(&self) -> &[BigInt] {
        &self.0
    }

    pub fn d(&self) -> isize {
        self.0.len() as isize - 1
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.0.len();
        (0..n).all(|i| self.0[i] == self.0[n - 1 - i])
    }
}

/// `(γ₀, …, γ_{⌊d/2⌋})`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "Vec<Quantity>", try_from = "Vec<Quantity>")]
pub struct GammaVector(Vec<BigInt>);

impl GammaVector {
    pub fn new(counts: Vec<BigInt>) -> GammaVector {
        GammaVector(counts)
    }

    pub fn counts(&self) -> &[BigInt] {
        &self.0
    }

    /// `γ_j`, zero past the end.
    pub fn gamma(&self, j: usize) -> BigInt {
        self.0.get(j).cloned().unwrap_or_else(BigInt::zero)
    }
}

macro_rules! integer_list_serde {
    ($($t:ident),*) => {$(
        impl From<$t> for Vec<Quantity> {
            fn from(v: $t) -> Vec<Quantity> {
                v.0.into_iter().map(Quantity::from).collect()
            }
        }

        impl TryFrom<Vec<Quantity>> for $t {
            type Error = String;

            fn try_from(v: Vec<Quantity>) -> std::result::Result<$t, String> {
                v.into_iter()
                    .map(|q| {
                        if q.is_integer() {
                            Ok(q.0.to_integer())
                        } else {
                            Err(format!("non-integer entry {q}"))
                        }
                    })
                    .collect::<std::result::Result<Vec<_>, _>>()
                    .map($t)
            }
        }
    )*};
}
integer_list_serde!(FVector, HVector, GammaVector);

/// Exact face counts by enumeration of the face lattice.
pub fn f_vector(c: &Complex) -> FVector {
    if c.is_void() {
        return FVector(Vec::new());
    }
    let top = c.dim();
    FVector((-1..=top).map(|k| BigInt::from(c.faces_of_dim(k).len())).collect())
}

/// `h_j = Σ_{i≤j} (−1)^{j−i} C(d−i, j−i) f_{i−1}`.
pub fn h_vector(f: &FVector) -> HVector {
    let d = f.d();
    if d < 0 {
        return HVector(Vec::new());
    }
    let d = d as i64;
    HVector(
        (0..=d)
            .map(|j| {
                (0..=j).fold(BigInt::zero(), |acc, i| {
                    let term = binomial(d - i, j - i) * &f.0[i as usize];
                    if (j - i) % 2 == 0 {
                        acc + term
                    } else {
                        acc - term
                    }
                })
            })
            .collect(),
    )
}

/// Inverse of [`h_vector`]: `f_{j−1} = Σ_{i≤j} C(d−i, j−i) h_i`.
pub fn f_from_h(h: &HVector) -> FVector {
    let d = h.d();
    if d < 0 {
        return FVector(Vec::new());
    }
    let d = d as i64;
    FVector(
        (0..=d)
            .map(|j| {
                (0..=j).fold(BigInt::zero(), |acc, i| {
                    acc + binomial(d - i, j - i) * &h.0[i as usize]
                })
            })
            .collect(),
    )
}

/// Solves `Σ hᵢ tⁱ = Σ γⱼ tʲ (1+t)^{d−2j}`; requires symmetric `h`.
pub fn gamma_vector(h: &HVector) -> Result<GammaVector> {
    if !h.is_symmetric() {
        return Err(Error::GammaUndefined(
            h.0.iter().map(BigInt::to_string).collect(),
        ));
    }
    let d = h.d();
    if d < 0 {
        return Ok(GammaVector(Vec::new()));
    }
    let d = d as i64;
    let mut gamma: Vec<BigInt> = Vec::with_capacity((d / 2 + 1) as usize);
    for i in 0..=d / 2 {
        let mut g = h.0[i as usize].clone();
        for (j, gj) in gamma.iter().enumerate() {
            let j = j as i64;
            g -= gj * binomial(d - 2 * j, i - j);
        }
        gamma.push(g);
    }
    Ok(GammaVector(gamma))
}

/// Expands `Σ γⱼ tʲ (1+t)^{d−2j}` back into an h-vector of length `d + 1`.
pub fn h_from_gamma(gamma: &GammaVector, d: usize) -> HVector {
    let d = d as i64;
    let mut h = vec![BigInt::zero(); (d + 1) as usize];
    for (j, gj) in gamma.0.iter().enumerate() {
        let j = j as i64;
        for k in 0..=(d - 2 * j).max(-1) {
            h[(j + k) as usize] += gj * binomial(d - 2 * j, k);
        }
    }
    HVector(h)
}

/// `Σ_{i≥0} (−1)ⁱ fᵢ`.
pub fn euler_characteristic(f: &FVector) -> BigInt {
    f.0.iter()
        .enumerate()
        .skip(1)
        .fold(BigInt::zero(), |acc, (k, fk)| {
            if (k - 1) % 2 == 0 {
                acc + fk
            } else {
                acc - fk
            }
        })
}

/// Checks `hᵢ = h_{d−i}` for every `i`, and for `d = 6` the three explicit
/// relations `f₂ = f₅ + 2f₁ − 2f₀`, `f₃ = 3f₅ + f₁ − f₀`, `f₄ = 3f₅`.
pub fn dehn_sommerville_check(f: &FVector) -> Report {
    let h = h_vector(f);
    let d = h.d();
    let mut witnesses = Vec::new();
    for i in 0..=(d / 2).max(-1) {
        let (a, b) = (&h.0[i as usize], &h.0[(d - i) as usize]);
        witnesses.push(Witness::compare(
            format!("h_{i} = h_{}", d - i),
            None,
            a,
            Relation::Eq,
            b,
        ));
    }
    if d == 6 {
        let fi = |i: isize| f.f(i);
        let two = BigInt::from(2);
        let three = BigInt::from(3);
        let rels = [
            ("identity 1: f_2 = f_5 + 2f_1 - 2f_0", fi(2), fi(5) + &two * fi(1) - &two * fi(0)),
            ("identity 2: f_3 = 3f_5 + f_1 - f_0", fi(3), &three * fi(5) + fi(1) - fi(0)),
            ("identity 3: f_4 = 3f_5", fi(4), &three * fi(5)),
        ];
        for (label, lhs, rhs) in rels {
            witnesses.push(Witness::compare(label, None, lhs, Relation::Eq, rhs));
        }
    }
    let mut r = Report::from_witnesses("dehn_sommerville", witnesses);
    r.notes.push(format!(
        "h = ({})",
        h.0.iter().map(BigInt::to_string).collect::<Vec<_>>().join(",")
    ));
    r
}

/// `true` when every entry is non-negative.
pub fn is_nonnegative(v: &[BigInt]) -> bool {
    v.iter().all(|x| !x.is_negative())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fv(xs: &[i64]) -> FVector {
        FVector::from_counts(xs)
    }

    fn ints(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    /// Independent route: expand Σ f_{i−1}(t−1)^{d−i} as a polynomial.
    fn h_by_expansion(f: &[i64]) -> Vec<i64> {
        let d = f.len() - 1;
        let mut poly = vec![0i64; d + 1]; // coefficient of t^k
        for (i, &fi) in f.iter().enumerate() {
            let mut p = vec![1i64];
            for _ in 0..(d - i) {
                let mut q = vec![0i64; p.len() + 1];
                for (k, &c) in p.iter().enumerate() {
                    q[k + 1] += c;
                    q[k] -= c;
                }
                p = q;
            }
            for (k, &c) in p.iter().enumerate() {
                poly[k] += fi * c;
            }
        }
        // h_i is the coefficient of t^{d−i}
        (0..=d).map(|i| poly[d - i]).collect()
    }

    #[test]
    fn h_vectors_match_expansion() {
        for f in [
            vec![1, 4, 4],
            vec![1, 6, 12, 8],
            vec![1, 10, 40, 80, 80, 32],
            vec![1, 12, 60, 160, 240, 192, 64],
            vec![1, 5, 3],
        ] {
            let h = h_vector(&fv(&f));
            assert_eq!(h.counts(), ints(&h_by_expansion(&f)).as_slice(), "f = {f:?}");
        }
        assert_eq!(h_vector(&fv(&[1, 4, 4])).counts(), ints(&[1, 2, 1]).as_slice());
        assert_eq!(h_vector(&fv(&[1, 6, 12, 8])).counts(), ints(&[1, 3, 3, 1]).as_slice());
        assert_eq!(
            h_vector(&fv(&[1, 10, 40, 80, 80, 32])).counts(),
            ints(&[1, 5, 10, 10, 5, 1]).as_slice()
        );
    }

    #[test]
    fn gamma_examples() {
        let g = |h: &[i64]| gamma_vector(&HVector::new(ints(h))).unwrap();
        assert_eq!(g(&[1, 3, 3, 1]).counts(), ints(&[1, 0]).as_slice());
        assert_eq!(g(&[1, 5, 10, 10, 5, 1]).counts(), ints(&[1, 0, 0]).as_slice());
        assert_eq!(g(&[1, 2, 1]).counts(), ints(&[1, 0]).as_slice());
        // (1+t)^4 + t(1+t)^2 + 2t^2 = 1 + 5t + 10t^2 + 5t^3 + t^4
        assert_eq!(g(&[1, 5, 10, 5, 1]).counts(), ints(&[1, 1, 2]).as_slice());
        assert!(matches!(
            gamma_vector(&HVector::new(ints(&[1, 2, 3]))),
            Err(Error::GammaUndefined(_))
        ));
    }

    #[test]
    fn euler_characteristics() {
        assert_eq!(euler_characteristic(&fv(&[1, 6, 12, 8])), BigInt::from(2));
        assert_eq!(euler_characteristic(&fv(&[1, 4, 4])), BigInt::from(0));
        assert_eq!(
            euler_characteristic(&fv(&[1, 12, 60, 160, 240, 192, 64])),
            BigInt::from(0)
        );
    }

    #[test]
    fn dehn_sommerville_examples() {
        let r = dehn_sommerville_check(&fv(&[1, 12, 60, 160, 240, 192, 64]));
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.witnesses.len(), 4 + 3);
        assert!(dehn_sommerville_check(&fv(&[1, 6, 12, 8])).passed());

        // f_4 ≠ 3 f_5
        let r = dehn_sommerville_check(&fv(&[1, 12, 60, 160, 240, 191, 64]));
        assert!(!r.passed());
        assert!(r.failures().any(|w| w.label.starts_with("identity 3")));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(6, 3), BigInt::from(20));
        assert_eq!(binomial(4, 0), BigInt::from(1));
        assert_eq!(binomial(3, 4), BigInt::from(0));
        assert_eq!(binomial(3, -1), BigInt::from(0));
    }

    #[test]
    fn empty_face_only() {
        let f = f_vector(&Complex::empty_face());
        assert_eq!(f.counts(), ints(&[1]).as_slice());
        assert_eq!(f_vector(&Complex::void()).counts().len(), 0);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn h_f_round_trip(f in proptest::collection::vec(0i64..1000, 1..9)) {
                let mut f = f;
                f[0] = 1;
                let fvec = fv(&f);
                prop_assert_eq!(f_from_h(&h_vector(&fvec)), fvec);
            }

            #[test]
            fn gamma_round_trip(g in proptest::collection::vec(-50i64..50, 1..5), extra in 0usize..2) {
                let d = 2 * (g.len() - 1) + extra;
                let gv = GammaVector::new(ints(&g));
                let h = h_from_gamma(&gv, d);
                prop_assert!(h.is_symmetric());
                prop_assert_eq!(gamma_vector(&h).unwrap(), gv);
            }
        }
    }
}
