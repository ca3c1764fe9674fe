//! Limits and colimits in the category of fuzzy hyper BCK-algebras:
//! terminal object, finite products, equalizers, pullbacks, and
//! coequalizers by regular congruences, each with a mediating-morphism
//! solver.
//!
//! Constructions re-verify the facts they depend on. When an instance
//! contradicts one (an agreement set that is not closed, a meet of regular
//! congruences that is not regular, a leg that is not a morphism) the
//! construction fails with [`Error::ClaimViolation`] carrying a witness.

use std::fmt;

use crate::error::{Error, Result};
use crate::fuzzy::{restrict, FuzzyHyperBCK, FuzzyValue};
use crate::hyper::{Carrier, HyperBCK};
use crate::morphism::{FuzzyHom, Hom};
use crate::report::ValidationReport;
use crate::subset::{Subset, MAX_CARRIER};

/// Default carrier bound for congruence enumeration (Bell(5) = 52 partitions).
pub const DEFAULT_CONGRUENCE_BOUND: usize = 5;

/// The one-element algebra `{O}` with `μ(O) = 0`.
pub fn terminal() -> FuzzyHyperBCK {
    FuzzyHyperBCK::constant(HyperBCK::trivial("O").expect("valid label"), FuzzyValue::ZERO)
}

/// The unique map into [`terminal`]. It is always a homomorphism, but a
/// fuzzy one only when `μ_src ≡ 0`.
pub fn terminal_arrow(src: &FuzzyHyperBCK) -> Result<FuzzyHom> {
    let t = terminal();
    let hom = Hom::to_zero(src.alg(), t.alg())?;
    FuzzyHom::new(hom, src.clone(), t)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Leg {
    pub name: String,
    pub arrow: FuzzyHom,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    Product { factors: Vec<FuzzyHyperBCK> },
    Equalizer { f: FuzzyHom, g: FuzzyHom },
    Coequalizer { f: FuzzyHom, g: FuzzyHom, sigma: Vec<Congruence>, rho: Congruence },
    Pullback { f: FuzzyHom, g: FuzzyHom, product: Box<ConstructionResult>, equalizer: Box<ConstructionResult> },
}

impl Provenance {
    pub fn kind(&self) -> &'static str {
        match self {
            Provenance::Product { .. } => "product",
            Provenance::Equalizer { .. } => "equalizer",
            Provenance::Coequalizer { .. } => "coequalizer",
            Provenance::Pullback { .. } => "pullback",
        }
    }
}

/// A constructed object with its structure maps. Every leg is a fuzzy
/// homomorphism by construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstructionResult {
    pub object: FuzzyHyperBCK,
    pub legs: Vec<Leg>,
    pub provenance: Provenance,
}

impl ConstructionResult {
    pub fn leg(&self, name: &str) -> Option<&FuzzyHom> {
        self.legs.iter().find(|l| l.name == name).map(|l| &l.arrow)
    }
}

fn violation(claim: &'static str, witness: impl Into<String>) -> Error {
    Error::ClaimViolation { claim, witness: witness.into() }
}

/// Turns a failed morphism check on a constructed map into a claim violation.
fn expect_morphism<T>(claim: &'static str, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::NotHom(w) | Error::NotFuzzyHom(w) => violation(claim, w),
        other => other,
    })
}

// ---------------------------------------------------------------- products

/// Mixed-radix tuple indexing, first factor most significant.
fn decode(sizes: &[usize], mut index: usize) -> Vec<usize> {
    let mut out = vec![0; sizes.len()];
    for (slot, &s) in out.iter_mut().zip(sizes).rev() {
        *slot = index % s;
        index /= s;
    }
    out
}

fn encode(sizes: &[usize], parts: &[usize]) -> usize {
    parts.iter().zip(sizes).fold(0, |acc, (&p, &s)| acc * s + p)
}

/// Cartesian product with the componentwise hyperoperation
/// `x*y = { t : t_i ∈ x_i * y_i for all i }` and `μ(x) = min_i μ_i(x_i)`.
/// Legs `p1..pk` are the projections.
pub fn product(factors: &[FuzzyHyperBCK]) -> Result<ConstructionResult> {
    if factors.is_empty() {
        return Err(Error::EmptyProduct);
    }
    let sizes: Vec<usize> = factors.iter().map(|f| f.len()).collect();
    let total = sizes
        .iter()
        .try_fold(1usize, |acc, &s| acc.checked_mul(s).filter(|&t| t <= MAX_CARRIER))
        .ok_or(Error::CarrierTooLarge(usize::MAX))?;
    let tuples: Vec<Vec<usize>> = (0..total).map(|i| decode(&sizes, i)).collect();
    let labels = tuples.iter().map(|t| {
        let parts: Vec<&str> =
            t.iter().zip(factors).map(|(&c, f)| f.alg().carrier().label(c)).collect();
        format!("({})", parts.join(";"))
    });
    let zero_parts: Vec<usize> = factors.iter().map(|f| f.alg().zero()).collect();
    let carrier = Carrier::new(labels, encode(&sizes, &zero_parts))?;
    let alg = HyperBCK::from_fn(carrier, |x, y| {
        let mut acc = vec![0usize];
        for (i, f) in factors.iter().enumerate() {
            let cell = f.alg().star(tuples[x][i], tuples[y][i]);
            let radix = sizes[i];
            acc = acc.iter().flat_map(|&p| cell.iter().map(move |t| p * radix + t)).collect();
        }
        acc.into_iter().collect()
    })?;
    let mu = tuples
        .iter()
        .map(|t| t.iter().zip(factors).map(|(&c, f)| f.mu(c)).min().expect("non-empty"))
        .collect();
    let object = FuzzyHyperBCK::new(alg, mu)?;
    let legs = factors
        .iter()
        .enumerate()
        .map(|(i, f)| {
            let map = tuples.iter().map(|t| t[i]).collect();
            let hom = Hom::new(object.alg().clone(), f.alg().clone(), map);
            let arrow = expect_morphism(
                "projections are fuzzy homomorphisms",
                hom.and_then(|h| FuzzyHom::new(h, object.clone(), f.clone())),
            )?;
            Ok(Leg { name: format!("p{}", i + 1), arrow })
        })
        .collect::<Result<_>>()?;
    Ok(ConstructionResult {
        object,
        legs,
        provenance: Provenance::Product { factors: factors.to_vec() },
    })
}

/// The tupling `x ↦ (q_1(x), .., q_k(x))` of a cone over the factors of a
/// product.
pub fn mediate_product(result: &ConstructionResult, cone: &[FuzzyHom]) -> Result<FuzzyHom> {
    let Provenance::Product { factors } = &result.provenance else {
        return Err(Error::Mismatch("not a product".into()));
    };
    if cone.len() != factors.len() {
        return Err(Error::Mismatch(format!(
            "cone has {} legs, product has {} factors",
            cone.len(),
            factors.len()
        )));
    }
    let apex = cone[0].source();
    for (q, f) in cone.iter().zip(factors) {
        if q.source() != apex || q.target() != f {
            return Err(Error::Mismatch("cone legs do not match the factors".into()));
        }
    }
    let sizes: Vec<usize> = factors.iter().map(|f| f.len()).collect();
    let map = (0..apex.len())
        .map(|x| encode(&sizes, &cone.iter().map(|q| q.apply(x)).collect::<Vec<_>>()))
        .collect();
    let phi = expect_morphism(
        "the tupling of a cone is a morphism",
        Hom::new(apex.alg().clone(), result.object.alg().clone(), map)
            .and_then(|h| FuzzyHom::new(h, apex.clone(), result.object.clone())),
    )?;
    for (leg, q) in result.legs.iter().zip(cone) {
        if phi.then(&leg.arrow)? != *q {
            return Err(violation("tupling commutes with projections", leg.name.clone()));
        }
    }
    Ok(phi)
}

// -------------------------------------------------------------- equalizers

fn check_parallel(f: &FuzzyHom, g: &FuzzyHom) -> Result<()> {
    if f.source() != g.source() || f.target() != g.target() {
        return Err(Error::Mismatch("morphisms are not parallel".into()));
    }
    Ok(())
}

/// The agreement set `K = { x : f(x) = g(x) }` as a fuzzy subalgebra of the
/// common source, with its inclusion `i`.
pub fn equalizer(f: &FuzzyHom, g: &FuzzyHom) -> Result<ConstructionResult> {
    check_parallel(f, g)?;
    let src = f.source();
    let alg = src.alg();
    let k: Subset = (0..src.len()).filter(|&x| f.apply(x) == g.apply(x)).collect();
    if !alg.closed(k) {
        let c = alg.carrier();
        let (x, y, t) = k
            .iter()
            .flat_map(|x| k.iter().map(move |y| (x, y)))
            .find_map(|(x, y)| alg.star(x, y).difference(k).first().map(|t| (x, y, t)))
            .expect("an escaping product");
        return Err(violation(
            "the agreement set of two morphisms is a subalgebra",
            format!(
                "K = {}; {} ∈ {}*{} but f({}) = {} ≠ {} = g({})",
                c.format_subset(k),
                c.label(t),
                c.label(x),
                c.label(y),
                c.label(t),
                f.target().alg().carrier().label(f.apply(t)),
                f.target().alg().carrier().label(g.apply(t)),
                c.label(t),
            ),
        ));
    }
    let object = restrict(src, k)?;
    let inclusion = expect_morphism(
        "the equalizer inclusion is a fuzzy homomorphism",
        Hom::inclusion(alg, k).and_then(|h| FuzzyHom::new(h, object.clone(), src.clone())),
    )?;
    if inclusion.then(f)? != inclusion.then(g)? {
        return Err(violation("f∘i = g∘i", "inclusion does not equalize"));
    }
    Ok(ConstructionResult {
        object,
        legs: vec![Leg { name: "i".into(), arrow: inclusion }],
        provenance: Provenance::Equalizer { f: f.clone(), g: g.clone() },
    })
}

/// The factorization `δ` of `h` (with `f∘h = g∘h`) through the equalizer.
pub fn mediate_equalizer(result: &ConstructionResult, h: &FuzzyHom) -> Result<FuzzyHom> {
    let Provenance::Equalizer { f, g } = &result.provenance else {
        return Err(Error::Mismatch("not an equalizer".into()));
    };
    if h.target() != f.source() {
        return Err(Error::Mismatch("morphism does not land in the equalized object".into()));
    }
    if h.then(f)? != h.then(g)? {
        return Err(Error::Mismatch("morphism does not equalize the pair".into()));
    }
    let inclusion = &result.legs[0].arrow;
    let members = inclusion.map();
    let map = (0..h.source().len())
        .map(|x| members.iter().position(|&m| m == h.apply(x)).expect("image inside K"))
        .collect();
    expect_morphism(
        "the corestriction through the equalizer is a morphism",
        Hom::new(h.source().alg().clone(), result.object.alg().clone(), map)
            .and_then(|d| FuzzyHom::new(d, h.source().clone(), result.object.clone())),
    )
}

// --------------------------------------------------------------- pullbacks

/// `P = { (a,b) : f(a) = g(b) }` inside `A × B`, built as the equalizer of
/// `f∘p1` and `g∘p2`. Legs `pA`, `pB`.
pub fn pullback(f: &FuzzyHom, g: &FuzzyHom) -> Result<ConstructionResult> {
    if f.target() != g.target() {
        return Err(Error::Mismatch("cospan legs have different targets".into()));
    }
    let prod = product(&[f.source().clone(), g.source().clone()])?;
    let fa = prod.legs[0].arrow.then(f)?;
    let gb = prod.legs[1].arrow.then(g)?;
    let eq = equalizer(&fa, &gb)?;
    let inclusion = &eq.legs[0].arrow;
    let legs = vec![
        Leg { name: "pA".into(), arrow: inclusion.then(&prod.legs[0].arrow)? },
        Leg { name: "pB".into(), arrow: inclusion.then(&prod.legs[1].arrow)? },
    ];
    if legs[0].arrow.then(f)? != legs[1].arrow.then(g)? {
        return Err(violation("pullback square commutes", "f∘pA ≠ g∘pB"));
    }
    Ok(ConstructionResult {
        object: eq.object.clone(),
        legs,
        provenance: Provenance::Pullback {
            f: f.clone(),
            g: g.clone(),
            product: Box::new(prod),
            equalizer: Box::new(eq),
        },
    })
}

/// The mediating morphism for a commuting square `f∘qa = g∘qb`.
pub fn mediate_pullback(result: &ConstructionResult, qa: &FuzzyHom, qb: &FuzzyHom) -> Result<FuzzyHom> {
    let Provenance::Pullback { f, g, product, equalizer } = &result.provenance else {
        return Err(Error::Mismatch("not a pullback".into()));
    };
    if qa.then(f)? != qb.then(g)? {
        return Err(Error::Mismatch("square does not commute".into()));
    }
    let phi = mediate_product(product, &[qa.clone(), qb.clone()])?;
    mediate_equalizer(equalizer, &phi)
}

// ------------------------------------------------------------- congruences

/// An equivalence relation on a carrier, stored as its blocks ordered by
/// smallest member.
#[derive(Clone, PartialEq, Eq)]
pub struct Congruence {
    base: HyperBCK,
    blocks: Vec<Subset>,
    class: Vec<usize>,
}

/// Outcome of a regularity check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Regularity {
    Regular,
    /// `x θ x'` and `y θ y'` but `x*y` and `x'*y'` meet different classes.
    NotWellDefined { x: usize, y: usize, x2: usize, y2: usize },
    /// The quotient operation is well defined but violates an axiom.
    QuotientInvalid(ValidationReport),
}

impl Regularity {
    pub fn is_regular(&self) -> bool {
        matches!(self, Regularity::Regular)
    }
}

impl Congruence {
    pub fn new(base: HyperBCK, blocks: Vec<Subset>) -> Result<Self> {
        let n = base.len();
        let mut class = vec![usize::MAX; n];
        let mut seen = Subset::EMPTY;
        for b in &blocks {
            if b.is_empty() || b.intersects(seen) || !b.is_subset_of(base.full()) {
                return Err(Error::NotPartition);
            }
            seen = seen.union(*b);
        }
        if seen != base.full() {
            return Err(Error::NotPartition);
        }
        let mut blocks = blocks;
        blocks.sort_by_key(|b| b.first());
        for (i, b) in blocks.iter().enumerate() {
            for x in *b {
                class[x] = i;
            }
        }
        Ok(Congruence { base, blocks, class })
    }

    /// From a class label per element (any labelling).
    pub fn from_labels(base: HyperBCK, labels: &[usize]) -> Result<Self> {
        if labels.len() != base.len() {
            return Err(Error::NotPartition);
        }
        let mut blocks: Vec<(usize, Subset)> = Vec::new();
        for (x, &l) in labels.iter().enumerate() {
            match blocks.iter_mut().find(|(k, _)| *k == l) {
                Some((_, b)) => b.insert(x),
                None => blocks.push((l, Subset::singleton(x))),
            }
        }
        Congruence::new(base, blocks.into_iter().map(|(_, b)| b).collect())
    }

    pub fn discrete(base: &HyperBCK) -> Self {
        let blocks = (0..base.len()).map(Subset::singleton).collect();
        Congruence::new(base.clone(), blocks).expect("singletons partition")
    }

    pub fn total(base: &HyperBCK) -> Self {
        Congruence::new(base.clone(), vec![base.full()]).expect("one block partitions")
    }

    pub fn base(&self) -> &HyperBCK {
        &self.base
    }

    pub fn blocks(&self) -> &[Subset] {
        &self.blocks
    }

    pub fn class_of(&self, x: usize) -> usize {
        self.class[x]
    }

    pub fn related(&self, x: usize, y: usize) -> bool {
        self.class[x] == self.class[y]
    }

    /// Every block of `self` lies inside a block of `other`.
    pub fn refines(&self, other: &Congruence) -> bool {
        self.blocks.iter().all(|b| {
            let c = other.class[b.first().expect("non-empty block")];
            b.iter().all(|x| other.class[x] == c)
        })
    }

    /// Blockwise intersection.
    pub fn meet(&self, other: &Congruence) -> Result<Congruence> {
        if self.base != other.base {
            return Err(Error::Mismatch("congruences on different algebras".into()));
        }
        let blocks = self
            .blocks
            .iter()
            .flat_map(|a| other.blocks.iter().map(move |b| a.intersection(*b)))
            .filter(|b| !b.is_empty())
            .collect();
        Congruence::new(self.base.clone(), blocks)
    }

    fn classes_of(&self, s: Subset) -> Subset {
        s.iter().map(|t| self.class[t]).collect()
    }

    /// Checks that `[x]*[y] = { [t] : t ∈ x*y }` does not depend on the
    /// representatives and that the quotient satisfies the axioms with zero
    /// `[O]`.
    pub fn regularity(&self) -> Regularity {
        match self.quotient_table() {
            Err(r) => r,
            Ok(q) => {
                let report = q.validate(false);
                if report.passed() {
                    Regularity::Regular
                } else {
                    Regularity::QuotientInvalid(report)
                }
            }
        }
    }

    pub fn is_regular(&self) -> bool {
        self.regularity().is_regular()
    }

    fn quotient_table(&self) -> std::result::Result<HyperBCK, Regularity> {
        let alg = &self.base;
        let k = self.blocks.len();
        let mut table = Vec::with_capacity(k * k);
        for bx in &self.blocks {
            for by in &self.blocks {
                let x = bx.first().expect("non-empty");
                let y = by.first().expect("non-empty");
                let cell = self.classes_of(alg.star(x, y));
                for x2 in *bx {
                    for y2 in *by {
                        if self.classes_of(alg.star(x2, y2)) != cell {
                            return Err(Regularity::NotWellDefined { x, y, x2, y2 });
                        }
                    }
                }
                table.push(cell);
            }
        }
        let c = alg.carrier();
        let labels = self.blocks.iter().map(|b| format!("[{}]", c.label(b.first().unwrap())));
        let carrier = Carrier::new(labels, self.class[alg.zero()]).expect("distinct block labels");
        Ok(HyperBCK::new(carrier, table).expect("quotient cells are non-empty"))
    }

    /// The quotient algebra and the canonical surjection.
    pub fn quotient(&self) -> Result<(HyperBCK, Hom)> {
        match self.regularity() {
            Regularity::Regular => {}
            other => {
                return Err(violation("congruence is regular", self.describe_failure(&other)))
            }
        }
        let q = self.quotient_table().expect("regular");
        let pi = Hom::new(self.base.clone(), q.clone(), self.class.clone())?;
        Ok((q, pi))
    }

    pub fn describe_failure(&self, r: &Regularity) -> String {
        let c = self.base.carrier();
        match r {
            Regularity::Regular => "regular".into(),
            Regularity::NotWellDefined { x, y, x2, y2 } => format!(
                "{:?}: {}*{} and {}*{} meet different classes",
                self,
                c.label(*x),
                c.label(*y),
                c.label(*x2),
                c.label(*y2)
            ),
            Regularity::QuotientInvalid(report) => {
                let v = &report.violations()[0];
                format!("{:?}: quotient violates {} at blocks {:?}", self, v.check, v.witness)
            }
        }
    }
}

impl fmt::Debug for Congruence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.base.carrier();
        let parts: Vec<String> = self.blocks.iter().map(|b| c.format_subset(*b)).collect();
        write!(f, "{}", parts.join("|"))
    }
}

/// Set partitions of `0..n` as restricted growth strings, lexicographic.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(k: usize, n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == n {
            out.push(cur.clone());
            return;
        }
        for c in 0..=max + 1 {
            cur.push(c);
            go(k + 1, n, max.max(c), cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    let mut cur = vec![0];
    go(1, n, 0, &mut cur, &mut out);
    out
}

/// Every regular congruence of `alg`, in restricted-growth order.
pub fn enumerate_regular_congruences(alg: &HyperBCK, max_size: usize) -> Result<Vec<Congruence>> {
    if alg.len() > max_size {
        return Err(Error::SizeBound { what: "congruence enumeration carrier", size: alg.len(), bound: max_size });
    }
    Ok(partitions(alg.len())
        .into_iter()
        .map(|rgs| Congruence::from_labels(alg.clone(), &rgs).expect("valid partition"))
        .filter(Congruence::is_regular)
        .collect())
}

/// Quotient of the common target by the meet `ρ` of every regular
/// congruence relating each `f(a)` to `g(a)`. Membership of a class is the
/// maximum over the class. The single leg `pi` is the canonical surjection.
pub fn coequalizer(f: &FuzzyHom, g: &FuzzyHom, max_size: usize) -> Result<ConstructionResult> {
    check_parallel(f, g)?;
    let k = f.target();
    let sigma: Vec<Congruence> = enumerate_regular_congruences(k.alg(), max_size)?
        .into_iter()
        .filter(|t| (0..f.source().len()).all(|a| t.related(f.apply(a), g.apply(a))))
        .collect();
    let Some(first) = sigma.first() else {
        return Err(violation("the total relation is a regular congruence", "no congruence relates f and g"));
    };
    let mut rho = first.clone();
    for t in &sigma[1..] {
        rho = rho.meet(t)?;
    }
    let (q, pi) = rho.quotient().map_err(|e| match e {
        Error::ClaimViolation { witness, .. } => {
            violation("the meet of regular congruences is regular", witness)
        }
        other => other,
    })?;
    let mu = rho.blocks().iter().map(|b| k.max_over(*b).expect("non-empty")).collect();
    let object = FuzzyHyperBCK::new(q, mu)?;
    let pi = expect_morphism(
        "the canonical surjection is a fuzzy homomorphism",
        FuzzyHom::new(pi, k.clone(), object.clone()),
    )?;
    if f.then(&pi)? != g.then(&pi)? {
        return Err(violation("π∘f = π∘g", format!("{rho:?}")));
    }
    Ok(ConstructionResult {
        object,
        legs: vec![Leg { name: "pi".into(), arrow: pi }],
        provenance: Provenance::Coequalizer { f: f.clone(), g: g.clone(), sigma, rho },
    })
}

/// `ψ([x]) = φ(x)` for a `φ` out of the target with `φ∘f = φ∘g`.
pub fn mediate_coequalizer(result: &ConstructionResult, phi: &FuzzyHom) -> Result<FuzzyHom> {
    let Provenance::Coequalizer { f, g, rho, .. } = &result.provenance else {
        return Err(Error::Mismatch("not a coequalizer".into()));
    };
    if phi.source() != f.target() {
        return Err(Error::Mismatch("morphism does not start at the coequalized object".into()));
    }
    if f.then(phi)? != g.then(phi)? {
        return Err(Error::Mismatch("morphism does not coequalize the pair".into()));
    }
    let mut map = Vec::with_capacity(rho.blocks().len());
    for b in rho.blocks() {
        let rep = b.first().expect("non-empty");
        if let Some(x) = b.iter().find(|&x| phi.apply(x) != phi.apply(rep)) {
            let c = rho.base().carrier();
            return Err(violation(
                "the factorization through the quotient is well defined",
                format!("{} ρ {} but φ separates them", c.label(rep), c.label(x)),
            ));
        }
        map.push(phi.apply(rep));
    }
    expect_morphism(
        "the factorization through the quotient is a fuzzy homomorphism",
        Hom::new(result.object.alg().clone(), phi.target().alg().clone(), map)
            .and_then(|h| FuzzyHom::new(h, result.object.clone(), phi.target().clone())),
    )
}
