//! Exact rational arithmetic on extended Lebesgue exponents p ∈ [1,∞]:
//! admissibility conditions for the four-exponent operator bounds, the
//! admissible region of a symbol-exponent pair as an exact polygon, and the
//! branch table reducing Lebesgue-space boundedness to those conditions.
//!
//! Every exponent is stored as its reciprocal u = 1/p, a `Rational64` in
//! [0,1] (u = 0 is p = ∞), so all comparisons are exact.

use num_rational::Rational64;
use num_traits::{One, Zero};
use std::fmt;

use crate::error::{Error, Result};

/// An exponent in [1, ∞], stored exactly as the reciprocal u = 1/p ∈ [0,1].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExtExponent {
    u: Rational64,
}

impl ExtExponent {
    /// From the reciprocal u = 1/p; requires 0 ≤ u ≤ 1.
    pub fn from_reciprocal(u: Rational64) -> Result<Self> {
        if u < Rational64::zero() || u > Rational64::one() {
            return Err(Error::invalid(format!(
                "reciprocal {u} is outside [0,1] (exponent outside [1,∞])"
            )));
        }
        Ok(ExtExponent { u })
    }

    /// The exponent num/den; requires num/den ≥ 1.
    pub fn from_ratio(num: i64, den: i64) -> Result<Self> {
        if num <= 0 || den <= 0 {
            return Err(Error::invalid(format!(
                "exponent {num}/{den} must have positive terms"
            )));
        }
        Self::from_reciprocal(Rational64::new(den, num))
    }

    /// p = ∞ (u = 0).
    pub fn infinity() -> Self {
        ExtExponent { u: Rational64::zero() }
    }

    /// The reciprocal u = 1/p.
    pub fn reciprocal(&self) -> Rational64 {
        self.u
    }

    /// The conjugate exponent p′ with 1/p + 1/p′ = 1.
    pub fn conjugate(&self) -> Self {
        ExtExponent { u: Rational64::one() - self.u }
    }

    pub fn is_infinite(&self) -> bool {
        self.u.is_zero()
    }

    /// Numeric value (∞ for u = 0).
    pub fn as_f64(&self) -> f64 {
        if self.is_infinite() {
            f64::INFINITY
        } else {
            *self.u.denom() as f64 / *self.u.numer() as f64
        }
    }

    /// Parse "inf"/"∞", an integer, a fraction "a/b", or a finite decimal.
    pub fn parse(text: &str) -> Result<Self> {
        let s = text.trim();
        if s.is_empty() {
            return Err(Error::invalid("empty exponent"));
        }
        if s.eq_ignore_ascii_case("inf") || s.eq_ignore_ascii_case("infinity") || s == "∞" {
            return Ok(Self::infinity());
        }
        if let Some((a, b)) = s.split_once('/') {
            let num: i64 = a.trim().parse().map_err(|_| bad_exponent(s))?;
            let den: i64 = b.trim().parse().map_err(|_| bad_exponent(s))?;
            return Self::from_ratio(num, den);
        }
        if let Some((whole, frac)) = s.split_once('.') {
            let digits = frac.len() as u32;
            if digits > 12 || frac.chars().any(|c| !c.is_ascii_digit()) {
                return Err(bad_exponent(s));
            }
            let w: i64 = if whole.is_empty() {
                0
            } else {
                whole.parse().map_err(|_| bad_exponent(s))?
            };
            let f: i64 = if frac.is_empty() {
                0
            } else {
                frac.parse().map_err(|_| bad_exponent(s))?
            };
            let scale = 10i64.pow(digits);
            return Self::from_ratio(w * scale + f, scale);
        }
        let p: i64 = s.parse().map_err(|_| bad_exponent(s))?;
        Self::from_ratio(p, 1)
    }
}

fn bad_exponent(s: &str) -> Error {
    Error::invalid(format!(
        "cannot parse exponent '{s}' (expected an integer, a/b, a decimal, or inf)"
    ))
}

impl fmt::Display for ExtExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinite() {
            write!(f, "inf")
        } else if self.u.numer() == &1 {
            write!(f, "{}", self.u.denom())
        } else {
            write!(f, "{}/{}", self.u.denom(), self.u.numer())
        }
    }
}

/// The eight exponents of one operator-boundedness configuration:
/// the operator acts M^{p₁,q₁} → M^{p₂,q₂} and the symbol is measured in
/// the four-index norm with (p₃,p₄,q₃,q₄).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExponentConfig {
    /// p₁, p₂, p₃, p₄.
    pub p: [ExtExponent; 4],
    /// q₁, q₂, q₃, q₄.
    pub q: [ExtExponent; 4],
}

impl ExponentConfig {
    pub fn new(p: [ExtExponent; 4], q: [ExtExponent; 4]) -> Self {
        ExponentConfig { p, q }
    }

    /// All eight exponents equal to 2.
    pub fn all_two() -> Self {
        let two = ExtExponent::from_ratio(2, 1).unwrap();
        ExponentConfig { p: [two; 4], q: [two; 4] }
    }

    /// Numeric (f64) views of the exponent lists, in index order.
    pub fn p_f64(&self) -> [f64; 4] {
        [0, 1, 2, 3].map(|i| self.p[i].as_f64())
    }

    pub fn q_f64(&self) -> [f64; 4] {
        [0, 1, 2, 3].map(|i| self.q[i].as_f64())
    }
}

/// Which of the six admissibility legs hold, exactly evaluated.
///
/// The p-side requires u(p₃)+u(p₄) ≥ u(p₁′)+u(p₂) and
/// u(p₄) ≥ max(u(p₁′), u(p₂)) — the latter split into its two legs so that
/// necessity experiments can target one at a time — and likewise on the q
/// side.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AdmissibilityBreakdown {
    pub p_sum: bool,
    pub p4_le_p1_conj: bool,
    pub p4_le_p2: bool,
    pub q_sum: bool,
    pub q4_le_q1_conj: bool,
    pub q4_le_q2: bool,
}

impl AdmissibilityBreakdown {
    /// The conjunction of all six legs.
    pub fn all(&self) -> bool {
        self.p_sum
            && self.p4_le_p1_conj
            && self.p4_le_p2
            && self.q_sum
            && self.q4_le_q1_conj
            && self.q4_le_q2
    }

    /// (name, holds) pairs in a fixed order.
    pub fn legs(&self) -> [(&'static str, bool); 6] {
        [
            ("p-sum", self.p_sum),
            ("p4<=p1'", self.p4_le_p1_conj),
            ("p4<=p2", self.p4_le_p2),
            ("q-sum", self.q_sum),
            ("q4<=q1'", self.q4_le_q1_conj),
            ("q4<=q2", self.q4_le_q2),
        ]
    }
}

fn side_breakdown(e: &[ExtExponent; 4]) -> (bool, bool, bool) {
    let u1c = e[0].conjugate().reciprocal();
    let (u2, u3, u4) = (e[1].reciprocal(), e[2].reciprocal(), e[3].reciprocal());
    (u3 + u4 >= u1c + u2, u4 >= u1c, u4 >= u2)
}

/// Exact admissibility test for the four-exponent boundedness conditions.
pub fn admissible(cfg: &ExponentConfig) -> AdmissibilityBreakdown {
    let (p_sum, p41, p42) = side_breakdown(&cfg.p);
    let (q_sum, q41, q42) = side_breakdown(&cfg.q);
    AdmissibilityBreakdown {
        p_sum,
        p4_le_p1_conj: p41,
        p4_le_p2: p42,
        q_sum,
        q4_le_q1_conj: q41,
        q4_le_q2: q42,
    }
}

/// A point in the (u₃,u₄) unit square, exact.
pub type RegionVertex = (Rational64, Rational64);

/// The admissible region of symbol exponents for one side's pair (x₁,x₂):
/// {(u₃,u₄) ∈ [0,1]²: u₃+u₄ ≥ u(x₁′)+u(x₂), u₄ ≥ max(u(x₁′),u(x₂))},
/// returned as the vertices of a convex polygon in counterclockwise order
/// (exact rationals; may degenerate to a segment, a point, or be empty).
///
/// The constraint shape is identical for the p- and q-sides, so one
/// function serves both.
pub fn region_boundary(x1: ExtExponent, x2: ExtExponent) -> Vec<RegionVertex> {
    let u1c = x1.conjugate().reciprocal();
    let u2 = x2.reciprocal();
    let s = u1c + u2;
    let m = u1c.max(u2);
    let zero = Rational64::zero();
    let one = Rational64::one();
    // Unit square, counterclockwise.
    let mut poly: Vec<RegionVertex> = vec![(zero, zero), (one, zero), (one, one), (zero, one)];
    // Half-planes a·u₃ + b·u₄ ≥ c.
    for (a, b, c) in [(one, one, s), (zero, one, m)] {
        poly = clip_half_plane(&poly, a, b, c);
        if poly.is_empty() {
            return poly;
        }
    }
    canonicalize(poly)
}

fn clip_half_plane(
    poly: &[RegionVertex],
    a: Rational64,
    b: Rational64,
    c: Rational64,
) -> Vec<RegionVertex> {
    let f = |v: &RegionVertex| a * v.0 + b * v.1 - c;
    let mut out = Vec::new();
    for i in 0..poly.len() {
        let (cur, next) = (poly[i], poly[(i + 1) % poly.len()]);
        let (fc, fn_) = (f(&cur), f(&next));
        if fc >= Rational64::zero() {
            out.push(cur);
        }
        if (fc > Rational64::zero() && fn_ < Rational64::zero())
            || (fc < Rational64::zero() && fn_ > Rational64::zero())
        {
            let t = fc / (fc - fn_);
            out.push((cur.0 + t * (next.0 - cur.0), cur.1 + t * (next.1 - cur.1)));
        }
    }
    out
}

fn canonicalize(poly: Vec<RegionVertex>) -> Vec<RegionVertex> {
    // Drop exact consecutive duplicates.
    let mut v: Vec<RegionVertex> = Vec::with_capacity(poly.len());
    for p in poly {
        if v.last() != Some(&p) {
            v.push(p);
        }
    }
    while v.len() > 1 && v.first() == v.last() {
        v.pop();
    }
    // Remove collinear interior vertices (cross product zero).
    loop {
        let n = v.len();
        if n < 3 {
            break;
        }
        let mut removed = false;
        for i in 0..n {
            let (a, b, c) = (v[(i + n - 1) % n], v[i], v[(i + 1) % n]);
            let cross = (b.0 - a.0) * (c.1 - a.1) - (b.1 - a.1) * (c.0 - a.0);
            if cross.is_zero() {
                v.remove(i);
                removed = true;
                break;
            }
        }
        if !removed {
            break;
        }
    }
    if v.len() == 2 && v[0] == v[1] {
        v.pop();
    }
    // Rotate so the lexicographically smallest (u₄,u₃) comes first.
    if !v.is_empty() {
        let start = v
            .iter()
            .enumerate()
            .min_by_key(|(_, p)| (p.1, p.0))
            .map(|(i, _)| i)
            .unwrap();
        v.rotate_left(start);
    }
    v
}

/// Membership test against the same constraints region_boundary clips by.
pub fn region_contains(x1: ExtExponent, x2: ExtExponent, u3: Rational64, u4: Rational64) -> bool {
    let u1c = x1.conjugate().reciprocal();
    let u2 = x2.reciprocal();
    let in_square = u3 >= Rational64::zero()
        && u3 <= Rational64::one()
        && u4 >= Rational64::zero()
        && u4 <= Rational64::one();
    in_square && u3 + u4 >= u1c + u2 && u4 >= u1c.max(u2)
}

/// The four branches of the Lebesgue-boundedness condition table, selected
/// by the positions of p and q relative to 2 (first match wins, so p = 2 or
/// q = 2 resolves to the earliest listed branch).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpBranch {
    /// p, q ∈ [1,2].
    BothSmall,
    /// 1 ≤ p ≤ 2 ≤ q.
    PSmallQLarge,
    /// 2 ≤ min{p,q}.
    BothLarge,
    /// 1 ≤ q ≤ 2 ≤ p.
    QSmallPLarge,
}

/// Requirements on the symbol exponents for L^p-boundedness of the
/// operator between L^p and L^q: on each side, u₃+u₄ ≥ `sum` and
/// u₄ ≥ `floor` (i.e. the fourth exponent may not exceed the reciprocal of
/// `floor`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LpCaseConditions {
    pub branch: LpBranch,
    pub p_sum: Rational64,
    pub p_floor: Rational64,
    pub q_sum: Rational64,
    pub q_floor: Rational64,
}

impl LpCaseConditions {
    /// Do (x₃,x₄) satisfy this side's requirements?
    fn side_ok(sum: Rational64, floor: Rational64, x3: ExtExponent, x4: ExtExponent) -> bool {
        let (u3, u4) = (x3.reciprocal(), x4.reciprocal());
        u3 + u4 >= sum && u4 >= floor
    }

    pub fn p_side_ok(&self, p3: ExtExponent, p4: ExtExponent) -> bool {
        Self::side_ok(self.p_sum, self.p_floor, p3, p4)
    }

    pub fn q_side_ok(&self, q3: ExtExponent, q4: ExtExponent) -> bool {
        Self::side_ok(self.q_sum, self.q_floor, q3, q4)
    }
}

/// Select the branch for the pair (p,q) and return both sides' symbol
/// conditions. The p-side requirement u(p₃)+u(p₄) ≥ u(p′)+u(q),
/// u(p₄) ≥ max(u(p′),u(q)) is branch-independent; the q-side thresholds
/// depend on the branch.
pub fn lp_case_conditions(p: ExtExponent, q: ExtExponent) -> LpCaseConditions {
    let two = Rational64::new(1, 2);
    let (up, uq) = (p.reciprocal(), q.reciprocal());
    let (upc, uqc) = (p.conjugate().reciprocal(), q.conjugate().reciprocal());
    // Branch order as listed; ties at p=2 or q=2 take the first match.
    let (branch, a, b) = if up >= two && uq >= two {
        (LpBranch::BothSmall, up, uq)
    } else if up >= two && uq <= two {
        (LpBranch::PSmallQLarge, up, uqc)
    } else if up <= two && uq <= two {
        (LpBranch::BothLarge, upc, uqc)
    } else {
        (LpBranch::QSmallPLarge, upc, uq)
    };
    LpCaseConditions {
        branch,
        p_sum: upc + uq,
        p_floor: upc.max(uq),
        q_sum: a + b,
        q_floor: a.max(b),
    }
}
