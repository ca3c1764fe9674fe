//! Fuzzy membership on hyper BCK-algebras.
//!
//! A fuzzy hyper BCK-algebra pairs an algebra with `μ: H → [0,1]` such that
//! `min μ(x*y) >= min(μ(x), μ(y))` for all `x, y`. Degrees are exact
//! rationals so that cut boundaries are unambiguous.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::hyper::HyperBCK;
use crate::report::{Check, Note, ValidationReport, Violation};
use crate::subset::Subset;

/// A membership degree: a rational in `[0,1]` kept in lowest terms.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FuzzyValue(Ratio<u64>);

impl FuzzyValue {
    pub const ZERO: FuzzyValue = FuzzyValue(Ratio::new_raw(0, 1));
    pub const ONE: FuzzyValue = FuzzyValue(Ratio::new_raw(1, 1));

    pub fn new(numerator: u64, denominator: u64) -> Result<Self> {
        if denominator == 0 || numerator > denominator {
            return Err(Error::InvalidFuzzyValue(format!("{numerator}/{denominator}")));
        }
        Ok(FuzzyValue(Ratio::new(numerator, denominator)))
    }

    /// `1/k`
    pub fn reciprocal(k: u64) -> Result<Self> {
        FuzzyValue::new(1, k)
    }

    pub fn numerator(self) -> u64 {
        *self.0.numer()
    }

    pub fn denominator(self) -> u64 {
        *self.0.denom()
    }

    pub fn is_zero(self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(self) -> bool {
        self.0.is_one()
    }
}

impl FromStr for FuzzyValue {
    type Err = Error;

    /// Accepts `p/q` or a bare integer (`0`, `1`).
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidFuzzyValue(s.to_string());
        let digits = |t: &str| !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit());
        let (p, q) = match s.split_once('/') {
            Some((p, q)) if digits(p) && digits(q) => (p, q),
            None if digits(s) => (s, "1"),
            _ => return Err(bad()),
        };
        let p: u64 = p.parse().map_err(|_| bad())?;
        let q: u64 = q.parse().map_err(|_| bad())?;
        FuzzyValue::new(p, q).map_err(|_| bad())
    }
}

impl fmt::Display for FuzzyValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Debug for FuzzyValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The value grid used by the enumerated property suites:
/// `{0, 1/4, 1/3, 1/2, 2/3, 3/4, 1}`.
pub fn standard_grid() -> Vec<FuzzyValue> {
    [(0, 1), (1, 4), (1, 3), (1, 2), (2, 3), (3, 4), (1, 1)]
        .into_iter()
        .map(|(p, q)| FuzzyValue::new(p, q).expect("grid values lie in [0,1]"))
        .collect()
}

/// A hyper BCK-algebra with a membership function. Construction checks only
/// that `mu` is total; the fuzzy inequality is checked by [`validate_fuzzy`].
#[derive(Clone, PartialEq, Eq)]
pub struct FuzzyHyperBCK {
    alg: HyperBCK,
    mu: Vec<FuzzyValue>,
}

impl FuzzyHyperBCK {
    pub fn new(alg: HyperBCK, mu: Vec<FuzzyValue>) -> Result<Self> {
        if mu.len() != alg.len() {
            return Err(Error::MembershipShape { expected: alg.len(), found: mu.len() });
        }
        Ok(FuzzyHyperBCK { alg, mu })
    }

    pub fn constant(alg: HyperBCK, value: FuzzyValue) -> Self {
        let mu = vec![value; alg.len()];
        FuzzyHyperBCK { alg, mu }
    }

    pub fn alg(&self) -> &HyperBCK {
        &self.alg
    }

    pub fn mu(&self, x: usize) -> FuzzyValue {
        self.mu[x]
    }

    pub fn memberships(&self) -> &[FuzzyValue] {
        &self.mu
    }

    pub fn mu_by_label(&self, x: &str) -> Result<FuzzyValue> {
        Ok(self.mu[self.alg.carrier().index_of(x)?])
    }

    pub fn len(&self) -> usize {
        self.alg.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Minimum of `mu` over a non-empty subset.
    pub fn min_over(&self, s: Subset) -> Option<FuzzyValue> {
        s.iter().map(|t| self.mu[t]).min()
    }

    pub fn max_over(&self, s: Subset) -> Option<FuzzyValue> {
        s.iter().map(|t| self.mu[t]).max()
    }

    pub(crate) fn pair_ok(&self, x: usize, y: usize) -> bool {
        let floor = self.mu[x].min(self.mu[y]);
        self.alg.star(x, y).iter().all(|t| self.mu[t] >= floor)
    }

    /// True iff the fuzzy inequality holds for every pair.
    pub fn satisfies_fuzzy(&self) -> bool {
        let n = self.len();
        (0..n).all(|x| (0..n).all(|y| self.pair_ok(x, y)))
    }
}

impl fmt::Debug for FuzzyHyperBCK {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.alg.carrier();
        f.debug_struct("FuzzyHyperBCK")
            .field("alg", &self.alg)
            .field(
                "mu",
                &(0..self.len())
                    .map(|i| format!("{}↦{}", c.label(i), self.mu[i]))
                    .collect::<Vec<_>>(),
            )
            .finish()
    }
}

/// Checks `min μ(x*y) >= min(μ(x), μ(y))` on every pair. The report also
/// carries notes on `μ(O)` being maximal and on the two collapse
/// properties; these never affect `passed`.
pub fn validate_fuzzy(f: &FuzzyHyperBCK) -> ValidationReport {
    let n = f.len();
    let mut violations = Vec::new();
    for x in 0..n {
        for y in 0..n {
            if !f.pair_ok(x, y) {
                violations.push(Violation::new(Check::FuzzyMin, [x, y]));
            }
        }
    }
    let c = f.alg().carrier();
    let zero = f.alg().zero();
    let above_zero: Vec<usize> = (0..n).filter(|&x| f.mu(x) > f.mu(zero)).collect();
    let mut notes = vec![Note {
        name: "zero-maximal",
        holds: above_zero.is_empty(),
        detail: if above_zero.is_empty() {
            format!("mu({}) = {} bounds every degree", c.label(zero), f.mu(zero))
        } else {
            format!("mu exceeds mu(O) at {}", c.format_subset(above_zero.into_iter().collect()))
        },
    }];
    let collapse = check_collapse_properties(f);
    for (name, h) in [
        ("monotone-collapse", collapse.monotone),
        ("zero-collapse", collapse.zero_origin),
    ] {
        notes.push(Note {
            name,
            holds: h.holds(),
            detail: match h.conclusion {
                None => "hypothesis does not apply".into(),
                Some(true) => "hypothesis applies; mu is constant".into(),
                Some(false) => "hypothesis applies; mu is not constant".into(),
            },
        });
    }
    ValidationReport::new(violations).with_notes(notes)
}

/// `{ x : μ(x) >= alpha }`. Empty when `alpha > μ(O)`.
pub fn alpha_cut(f: &FuzzyHyperBCK, alpha: FuzzyValue) -> Subset {
    (0..f.len()).filter(|&x| f.mu(x) >= alpha).collect()
}

/// Sorted distinct values of `μ`. `alpha_cut` is constant on each interval
/// `(l_i, l_{i+1}]`.
pub fn cut_levels(f: &FuzzyHyperBCK) -> Vec<FuzzyValue> {
    let mut levels = f.mu.clone();
    levels.sort_unstable();
    levels.dedup();
    levels
}

/// The fuzzy subalgebra on `s` with inherited table and membership.
pub fn restrict(f: &FuzzyHyperBCK, s: Subset) -> Result<FuzzyHyperBCK> {
    let alg = f.alg().subalgebra(s)?;
    FuzzyHyperBCK::new(alg, s.iter().map(|x| f.mu(x)).collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CutVerdict {
    pub is_cut: bool,
    /// A level at which `S` equals the cut, preferring `min μ(S)`.
    pub alpha: Option<FuzzyValue>,
    /// Whether "`S` is a fuzzy subalgebra iff `S` is an α-cut" holds for
    /// this `S`.
    pub claim_holds: bool,
}

/// Tests whether the subalgebra `s` is an α-cut of `f`. Every subalgebra
/// with the restricted membership is a fuzzy subalgebra, so the claim holds
/// exactly when `s` is some cut.
pub fn equals_some_alpha_cut(f: &FuzzyHyperBCK, s: Subset) -> Result<CutVerdict> {
    let sub = restrict(f, s)?;
    let is_fuzzy_sub = validate_fuzzy(&sub).passed();
    let floor = f.min_over(s).expect("subalgebras are non-empty");
    let alpha = std::iter::once(floor)
        .chain(cut_levels(f))
        .find(|&a| alpha_cut(f, a) == s);
    let is_cut = alpha.is_some();
    Ok(CutVerdict { is_cut, alpha, claim_holds: is_fuzzy_sub == is_cut })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Hypothesis {
    pub applies: bool,
    /// `None` when the hypothesis does not apply.
    pub conclusion: Option<bool>,
}

impl Hypothesis {
    fn evaluate(applies: bool, conclusion: impl FnOnce() -> bool) -> Self {
        Hypothesis { applies, conclusion: applies.then(conclusion) }
    }

    /// The implication holds (vacuously when it does not apply).
    pub fn holds(self) -> bool {
        self.conclusion.unwrap_or(true)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CollapseVerdict {
    /// `x < y ⇒ μ(x) <= μ(y)` for all pairs implies `μ ≡ μ(O)`.
    pub monotone: Hypothesis,
    /// `μ(O) = 0` implies `μ ≡ 0`.
    pub zero_origin: Hypothesis,
}

impl CollapseVerdict {
    pub fn holds(self) -> bool {
        self.monotone.holds() && self.zero_origin.holds()
    }
}

pub fn check_collapse_properties(f: &FuzzyHyperBCK) -> CollapseVerdict {
    let n = f.len();
    let alg = f.alg();
    let mu_zero = f.mu(alg.zero());
    let monotone = (0..n).all(|x| alg.above(x).iter().all(|y| f.mu(x) <= f.mu(y)));
    CollapseVerdict {
        monotone: Hypothesis::evaluate(monotone, || f.mu.iter().all(|&m| m == mu_zero)),
        zero_origin: Hypothesis::evaluate(mu_zero.is_zero(), || f.mu.iter().all(|m| m.is_zero())),
    }
}
