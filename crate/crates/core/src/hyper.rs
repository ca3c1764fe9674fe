//! Finite hyper BCK-algebras.
//!
//! A hyper BCK-algebra is a set `H` with a constant `O` and a hyperoperation
//! `*: H × H → P*(H)` (non-empty subsets) satisfying
//!
//! * HK1: `(x*z)*(y*z) < x*y`
//! * HK2: `(x*y)*z = (x*z)*y`
//! * HK3: `x*H < {x}`
//!
//! where `x < y` iff `O ∈ x*y`, and for subsets `A < B` iff every `a ∈ A`
//! has some `b ∈ B` with `a < b`. Operations on subsets extend `*` by union.
//!
//! Elements are addressed by their index in the carrier's label list. The
//! index-based methods panic on out-of-range indices like slice indexing;
//! the `*_by_label` variants return [`Error::UnknownLabel`] instead.

use std::fmt;
use std::ops::ControlFlow;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::report::{Check, ValidationReport, Violation};
use crate::subset::{Subset, MAX_CARRIER};

/// Ordered element labels together with the designated zero element `O`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Carrier {
    labels: Vec<String>,
    zero: usize,
}

impl Carrier {
    pub fn new<S: Into<String>>(labels: impl IntoIterator<Item = S>, zero: usize) -> Result<Self> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(Error::EmptyCarrier);
        }
        if labels.len() > MAX_CARRIER {
            return Err(Error::CarrierTooLarge(labels.len()));
        }
        for (i, l) in labels.iter().enumerate() {
            if l.is_empty() || l.contains(',') {
                return Err(Error::InvalidLabel(l.clone()));
            }
            if labels[..i].contains(l) {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        if zero >= labels.len() {
            return Err(Error::IndexOutOfRange { index: zero, size: labels.len() });
        }
        Ok(Carrier { labels, zero })
    }

    /// Carrier labelled `"0", "1", ..` with zero at index 0.
    pub fn numbered(n: usize) -> Result<Self> {
        Carrier::new((0..n).map(|i| i.to_string()), 0)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn subset<S: AsRef<str>>(&self, labels: impl IntoIterator<Item = S>) -> Result<Subset> {
        labels.into_iter().map(|l| self.index_of(l.as_ref())).collect()
    }

    pub fn full(&self) -> Subset {
        Subset::full(self.len())
    }

    pub fn labels_of(&self, s: Subset) -> Vec<&str> {
        s.iter().map(|i| self.label(i)).collect()
    }

    /// `{a, b}` style rendering for messages.
    pub fn format_subset(&self, s: Subset) -> String {
        format!("{{{}}}", self.labels_of(s).join(","))
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i < self.len() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange { index: i, size: self.len() })
        }
    }

    fn check_subset(&self, s: Subset) -> Result<()> {
        if s.is_empty() {
            return Err(Error::EmptySubset);
        }
        if !s.is_subset_of(self.full()) {
            return Err(Error::IndexOutOfRange {
                index: 127 - s.bits().leading_zeros() as usize,
                size: self.len(),
            });
        }
        Ok(())
    }
}

impl fmt::Debug for Carrier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} (O = {})", self.labels, self.labels[self.zero])
    }
}

struct Inner {
    carrier: Carrier,
    table: Vec<Subset>,
    // above[x] = { y : x < y }
    above: Vec<Subset>,
}

/// A finite set with a constant and a total, non-empty-valued hyperoperation
/// table. Construction checks only the shape; the axioms are checked by
/// [`HyperBCK::validate`]. Cloning is cheap.
#[derive(Clone)]
pub struct HyperBCK(Arc<Inner>);

impl HyperBCK {
    /// `table[x * n + y]` is the value of `x*y`.
    pub fn new(carrier: Carrier, table: Vec<Subset>) -> Result<Self> {
        let n = carrier.len();
        if table.len() != n * n {
            return Err(Error::TableShape { expected: n * n, found: table.len() });
        }
        let full = carrier.full();
        for (k, cell) in table.iter().enumerate() {
            let (x, y) = (k / n, k % n);
            if cell.is_empty() {
                return Err(Error::EmptyCell {
                    x: carrier.label(x).to_string(),
                    y: carrier.label(y).to_string(),
                });
            }
            if !cell.is_subset_of(full) {
                return Err(Error::IndexOutOfRange {
                    index: 127 - cell.bits().leading_zeros() as usize,
                    size: n,
                });
            }
        }
        let zero = carrier.zero();
        let above = (0..n)
            .map(|x| (0..n).filter(|&y| table[x * n + y].contains(zero)).collect())
            .collect();
        Ok(HyperBCK(Arc::new(Inner { carrier, table, above })))
    }

    pub fn from_fn(carrier: Carrier, mut f: impl FnMut(usize, usize) -> Subset) -> Result<Self> {
        let n = carrier.len();
        let table = (0..n * n).map(|k| f(k / n, k % n)).collect();
        HyperBCK::new(carrier, table)
    }

    /// The one-element algebra `({O}, O*O = {O})`.
    pub fn trivial(label: &str) -> Result<Self> {
        HyperBCK::new(Carrier::new([label], 0)?, vec![Subset::singleton(0)])
    }

    pub fn carrier(&self) -> &Carrier {
        &self.0.carrier
    }

    pub fn len(&self) -> usize {
        self.0.carrier.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn zero(&self) -> usize {
        self.0.carrier.zero
    }

    pub fn full(&self) -> Subset {
        self.0.carrier.full()
    }

    /// Row-major cells.
    pub fn table(&self) -> &[Subset] {
        &self.0.table
    }

    pub fn star(&self, x: usize, y: usize) -> Subset {
        let n = self.len();
        assert!(x < n && y < n, "element index out of range");
        self.0.table[x * n + y]
    }

    pub fn star_by_label(&self, x: &str, y: &str) -> Result<Subset> {
        let c = self.carrier();
        Ok(self.star(c.index_of(x)?, c.index_of(y)?))
    }

    /// Union of `a*b` over `a ∈ A`, `b ∈ B`. Empty inputs give the empty set.
    pub(crate) fn star_sets(&self, a: Subset, b: Subset) -> Subset {
        let n = self.len();
        let mut out = Subset::EMPTY;
        for x in a {
            let row = &self.0.table[x * n..x * n + n];
            for y in b {
                out = out.union(row[y]);
            }
        }
        out
    }

    pub fn set_star(&self, a: Subset, b: Subset) -> Result<Subset> {
        self.0.carrier.check_subset(a)?;
        self.0.carrier.check_subset(b)?;
        Ok(self.star_sets(a, b))
    }

    /// `x < y`, i.e. `O ∈ x*y`.
    pub fn hyper_order(&self, x: usize, y: usize) -> bool {
        self.0.above[x].contains(y)
    }

    pub fn hyper_order_by_label(&self, x: &str, y: &str) -> Result<bool> {
        let c = self.carrier();
        Ok(self.hyper_order(c.index_of(x)?, c.index_of(y)?))
    }

    /// `{ y : x < y }`.
    pub fn above(&self, x: usize) -> Subset {
        self.0.above[x]
    }

    pub(crate) fn order_sets(&self, a: Subset, b: Subset) -> bool {
        a.iter().all(|x| self.0.above[x].intersects(b))
    }

    /// `A < B`: every `a ∈ A` lies below some `b ∈ B`.
    pub fn set_order(&self, a: Subset, b: Subset) -> Result<bool> {
        self.0.carrier.check_subset(a)?;
        self.0.carrier.check_subset(b)?;
        Ok(self.order_sets(a, b))
    }

    /// Checks HK1–HK3 (and antisymmetry when `strict_antisymmetry` is set),
    /// collecting every violating instance.
    pub fn validate(&self, strict_antisymmetry: bool) -> ValidationReport {
        let mut violations = Vec::new();
        let _ = self.scan_axioms(strict_antisymmetry, |v| {
            violations.push(v);
            ControlFlow::Continue(())
        });
        ValidationReport::new(violations)
    }

    /// Same verdict as `validate(..).passed()`, stopping at the first violation.
    pub fn satisfies_axioms(&self, strict_antisymmetry: bool) -> bool {
        self.scan_axioms(strict_antisymmetry, |_| ControlFlow::Break(())).is_continue()
    }

    fn scan_axioms(
        &self,
        strict: bool,
        mut visit: impl FnMut(Violation) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        let n = self.len();
        let full = self.full();
        for x in 0..n {
            let row = self.star_sets(Subset::singleton(x), full);
            if !self.order_sets(row, Subset::singleton(x)) {
                visit(Violation::new(Check::Hk3, [x]))?;
            }
        }
        for x in 0..n {
            for y in 0..n {
                let xy = self.star(x, y);
                for z in 0..n {
                    let xz = self.star(x, z);
                    let lhs = self.star_sets(xy, Subset::singleton(z));
                    let rhs = self.star_sets(xz, Subset::singleton(y));
                    if lhs != rhs {
                        visit(Violation::new(Check::Hk2, [x, y, z]))?;
                    }
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                let xy = self.star(x, y);
                for z in 0..n {
                    let lhs = self.star_sets(self.star(x, z), self.star(y, z));
                    if !self.order_sets(lhs, xy) {
                        visit(Violation::new(Check::Hk1, [x, y, z]))?;
                    }
                }
            }
        }
        if strict {
            for x in 0..n {
                for y in x + 1..n {
                    if self.hyper_order(x, y) && self.hyper_order(y, x) {
                        visit(Violation::new(Check::Hk4, [x, y]))?;
                    }
                }
            }
        }
        ControlFlow::Continue(())
    }

    /// Contains `O` and is closed under `*`.
    pub fn is_subalgebra(&self, s: Subset) -> Result<bool> {
        self.0.carrier.check_subset(s)?;
        Ok(self.closed(s))
    }

    pub(crate) fn closed(&self, s: Subset) -> bool {
        s.contains(self.zero()) && self.star_sets(s, s).is_subset_of(s)
    }

    /// The subalgebra on `s` with the inherited table. Element `k` of the
    /// result is the `k`-th smallest index of `s`.
    pub fn subalgebra(&self, s: Subset) -> Result<HyperBCK> {
        if !self.is_subalgebra(s)? {
            return Err(Error::NotSubalgebra(self.carrier().format_subset(s)));
        }
        let members: Vec<usize> = s.iter().collect();
        let pos = |i: usize| members.iter().position(|&m| m == i).expect("closed subset");
        let carrier = Carrier::new(
            members.iter().map(|&i| self.carrier().label(i).to_string()),
            pos(self.zero()),
        )?;
        HyperBCK::from_fn(carrier, |a, b| {
            self.star(members[a], members[b]).iter().map(pos).collect()
        })
    }

    /// Copy with the cell `x*y` replaced.
    pub fn with_cell(&self, x: usize, y: usize, value: Subset) -> Result<HyperBCK> {
        self.0.carrier.check_index(x)?;
        self.0.carrier.check_index(y)?;
        let mut table = self.0.table.clone();
        table[x * self.len() + y] = value;
        HyperBCK::new(self.0.carrier.clone(), table)
    }

    /// Relabels along the bijection `perm` (old index `i` becomes `perm[i]`).
    /// Labels move with their elements.
    pub fn permuted(&self, perm: &[usize]) -> Result<HyperBCK> {
        let n = self.len();
        let mut inverse = vec![usize::MAX; n];
        for (i, &p) in perm.iter().enumerate() {
            self.0.carrier.check_index(p)?;
            inverse[p] = i;
        }
        if perm.len() != n || inverse.contains(&usize::MAX) {
            return Err(Error::Mismatch("relabeling is not a bijection".into()));
        }
        let carrier = Carrier::new(
            inverse.iter().map(|&i| self.carrier().label(i).to_string()),
            perm[self.zero()],
        )?;
        HyperBCK::from_fn(carrier, |a, b| {
            self.star(inverse[a], inverse[b]).iter().map(|t| perm[t]).collect()
        })
    }
}

impl PartialEq for HyperBCK {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.carrier == other.0.carrier && self.0.table == other.0.table)
    }
}

impl Eq for HyperBCK {}

impl fmt::Debug for HyperBCK {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.carrier();
        let mut m = f.debug_map();
        for x in 0..self.len() {
            for y in 0..self.len() {
                m.entry(
                    &format_args!("{}*{}", c.label(x), c.label(y)),
                    &format_args!("{}", c.format_subset(self.star(x, y))),
                );
            }
        }
        m.finish()
    }
}
