//! Homomorphisms of hyper BCK-algebras and of fuzzy hyper BCK-algebras.
//!
//! A homomorphism `f: H → F` is a map with `f(O) = O` whose pointwise image
//! of every `x*y` is exactly `f(x)*f(y)`. It is a fuzzy homomorphism when
//! additionally `μ_F(f(x)) >= μ_H(x)` everywhere.

use std::collections::HashMap;
use std::fmt;

use crate::enumerate::{enumerate_fuzzy_assignments, models_up_to, MAX_EXHAUSTIVE};
use crate::error::{Error, Result};
use crate::fuzzy::{alpha_cut, cut_levels, restrict, standard_grid, FuzzyHyperBCK, FuzzyValue};
use crate::hyper::HyperBCK;
use crate::subset::Subset;

/// Why `candidate` fails to be a homomorphism, if it does.
fn hom_defect(candidate: &[usize], src: &HyperBCK, dst: &HyperBCK) -> Option<String> {
    let (sc, dc) = (src.carrier(), dst.carrier());
    if candidate.len() != src.len() {
        return Some(format!("map has {} entries, source has {}", candidate.len(), src.len()));
    }
    if let Some(&bad) = candidate.iter().find(|&&t| t >= dst.len()) {
        return Some(format!("image index {bad} outside the target"));
    }
    if candidate[src.zero()] != dst.zero() {
        return Some(format!(
            "zero {} goes to {}, not {}",
            sc.label(src.zero()),
            dc.label(candidate[src.zero()]),
            dc.label(dst.zero())
        ));
    }
    for x in 0..src.len() {
        for y in 0..src.len() {
            let image = image_of(candidate, src.star(x, y));
            let expected = dst.star(candidate[x], candidate[y]);
            if image != expected {
                return Some(format!(
                    "f({}*{}) = {} but f({})*f({}) = {}",
                    sc.label(x),
                    sc.label(y),
                    dc.format_subset(image),
                    sc.label(x),
                    sc.label(y),
                    dc.format_subset(expected)
                ));
            }
        }
    }
    None
}

fn image_of(map: &[usize], s: Subset) -> Subset {
    s.iter().map(|x| map[x]).collect()
}

/// True iff `candidate` (indexed by source element) is a homomorphism.
pub fn is_hom(candidate: &[usize], src: &HyperBCK, dst: &HyperBCK) -> bool {
    hom_defect(candidate, src, dst).is_none()
}

/// A homomorphism of hyper BCK-algebras. The constructor enforces the
/// homomorphism equations.
#[derive(Clone, PartialEq, Eq)]
pub struct Hom {
    source: HyperBCK,
    target: HyperBCK,
    map: Vec<usize>,
}

impl Hom {
    pub fn new(source: HyperBCK, target: HyperBCK, map: Vec<usize>) -> Result<Self> {
        if let Some(why) = hom_defect(&map, &source, &target) {
            return Err(Error::NotHom(why));
        }
        Ok(Hom { source, target, map })
    }

    pub fn from_labels<S: AsRef<str>>(
        source: HyperBCK,
        target: HyperBCK,
        pairs: impl IntoIterator<Item = (S, S)>,
    ) -> Result<Self> {
        let mut map = vec![usize::MAX; source.len()];
        for (from, to) in pairs {
            let i = source.carrier().index_of(from.as_ref())?;
            map[i] = target.carrier().index_of(to.as_ref())?;
        }
        if let Some(i) = map.iter().position(|&t| t == usize::MAX) {
            return Err(Error::NotHom(format!(
                "no image given for {}",
                source.carrier().label(i)
            )));
        }
        Hom::new(source, target, map)
    }

    pub fn identity(alg: &HyperBCK) -> Hom {
        Hom { source: alg.clone(), target: alg.clone(), map: (0..alg.len()).collect() }
    }

    /// The constant map onto the target's zero.
    pub fn to_zero(source: &HyperBCK, target: &HyperBCK) -> Result<Hom> {
        Hom::new(source.clone(), target.clone(), vec![target.zero(); source.len()])
    }

    /// Inclusion of the subalgebra on `s` (see [`HyperBCK::subalgebra`]).
    pub fn inclusion(parent: &HyperBCK, s: Subset) -> Result<Hom> {
        let sub = parent.subalgebra(s)?;
        Hom::new(sub, parent.clone(), s.iter().collect())
    }

    pub fn source(&self) -> &HyperBCK {
        &self.source
    }

    pub fn target(&self) -> &HyperBCK {
        &self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn image(&self, s: Subset) -> Subset {
        image_of(&self.map, s)
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &Hom) -> Result<Hom> {
        if self.target != next.source {
            return Err(Error::Mismatch("composite of non-adjacent morphisms".into()));
        }
        let map = self.map.iter().map(|&x| next.map[x]).collect();
        Hom::new(self.source.clone(), next.target.clone(), map)
    }

    pub fn is_injective(&self) -> bool {
        self.image(self.source.full()).len() == self.source.len()
    }

    pub fn is_surjective(&self) -> bool {
        self.image(self.source.full()) == self.target.full()
    }

    pub fn is_bijective(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }

    /// The inverse map, if `self` is bijective and the inverse is a homomorphism.
    pub fn inverse(&self) -> Option<Hom> {
        if !self.is_bijective() {
            return None;
        }
        let mut inv = vec![0; self.target.len()];
        for (x, &y) in self.map.iter().enumerate() {
            inv[y] = x;
        }
        Hom::new(self.target.clone(), self.source.clone(), inv).ok()
    }

    /// An isomorphism of hyper BCK-algebras.
    pub fn is_crisp_iso(&self) -> bool {
        self.inverse().is_some()
    }

    /// `{ self(x) : x }` as labels, in source order.
    pub fn label_pairs(&self) -> Vec<(&str, &str)> {
        let (sc, tc) = (self.source.carrier(), self.target.carrier());
        self.map.iter().enumerate().map(|(x, &y)| (sc.label(x), tc.label(y))).collect()
    }
}

impl fmt::Debug for Hom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs: Vec<String> =
            self.label_pairs().into_iter().map(|(a, b)| format!("{a}↦{b}")).collect();
        write!(f, "Hom[{}]", pairs.join(", "))
    }
}

fn check_ends(f: &Hom, src: &FuzzyHyperBCK, dst: &FuzzyHyperBCK) -> Result<()> {
    if f.source() != src.alg() || f.target() != dst.alg() {
        return Err(Error::Mismatch("fuzzy structures do not sit over the map's ends".into()));
    }
    Ok(())
}

/// `μ_dst(f(x)) >= μ_src(x)` for every `x`.
pub fn is_fuzzy_hom(f: &Hom, src: &FuzzyHyperBCK, dst: &FuzzyHyperBCK) -> Result<bool> {
    check_ends(f, src, dst)?;
    Ok((0..src.len()).all(|x| dst.mu(f.apply(x)) >= src.mu(x)))
}

/// `f(H_α) ⊆ F_α` for every level of either membership function. Between
/// consecutive levels both cuts are constant, so these levels suffice.
pub fn fuzzy_hom_via_cuts(f: &Hom, src: &FuzzyHyperBCK, dst: &FuzzyHyperBCK) -> Result<bool> {
    check_ends(f, src, dst)?;
    let mut levels = cut_levels(src);
    levels.extend(cut_levels(dst));
    Ok(levels
        .into_iter()
        .all(|a| f.image(alpha_cut(src, a)).is_subset_of(alpha_cut(dst, a))))
}

/// A bijective homomorphism with homomorphic inverse that carries `μ_src`
/// exactly onto `μ_dst`.
pub fn is_fuzzy_iso(f: &Hom, src: &FuzzyHyperBCK, dst: &FuzzyHyperBCK) -> Result<bool> {
    check_ends(f, src, dst)?;
    Ok(f.is_crisp_iso() && (0..src.len()).all(|x| dst.mu(f.apply(x)) == src.mu(x)))
}

/// A morphism of fuzzy hyper BCK-algebras.
#[derive(Clone, PartialEq, Eq)]
pub struct FuzzyHom {
    hom: Hom,
    source: FuzzyHyperBCK,
    target: FuzzyHyperBCK,
}

impl FuzzyHom {
    pub fn new(hom: Hom, source: FuzzyHyperBCK, target: FuzzyHyperBCK) -> Result<Self> {
        if !is_fuzzy_hom(&hom, &source, &target)? {
            let x = (0..source.len())
                .find(|&x| target.mu(hom.apply(x)) < source.mu(x))
                .expect("some point lowers membership");
            return Err(Error::NotFuzzyHom(format!(
                "mu({}) = {} but mu(f({})) = {}",
                source.alg().carrier().label(x),
                source.mu(x),
                source.alg().carrier().label(x),
                target.mu(hom.apply(x))
            )));
        }
        Ok(FuzzyHom { hom, source, target })
    }

    pub fn identity(f: &FuzzyHyperBCK) -> FuzzyHom {
        FuzzyHom { hom: Hom::identity(f.alg()), source: f.clone(), target: f.clone() }
    }

    pub fn hom(&self) -> &Hom {
        &self.hom
    }

    pub fn source(&self) -> &FuzzyHyperBCK {
        &self.source
    }

    pub fn target(&self) -> &FuzzyHyperBCK {
        &self.target
    }

    pub fn apply(&self, x: usize) -> usize {
        self.hom.apply(x)
    }

    pub fn map(&self) -> &[usize] {
        self.hom.map()
    }

    /// `next ∘ self`. Always a fuzzy homomorphism again.
    pub fn then(&self, next: &FuzzyHom) -> Result<FuzzyHom> {
        if self.target != next.source {
            return Err(Error::Mismatch("composite of non-adjacent morphisms".into()));
        }
        FuzzyHom::new(self.hom.then(&next.hom)?, self.source.clone(), next.target.clone())
    }
}

impl fmt::Debug for FuzzyHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Fuzzy{:?}", self.hom)
    }
}

/// Every homomorphism `src → dst`, in lexicographic order of the maps.
pub fn enumerate_homs(src: &HyperBCK, dst: &HyperBCK) -> Vec<Hom> {
    let mut out = Vec::new();
    let mut map = vec![0usize; src.len()];
    extend_map(src, dst, 0, &mut map, &mut |m| {
        out.push(Hom { source: src.clone(), target: dst.clone(), map: m.to_vec() })
    });
    out
}

fn extend_map(
    src: &HyperBCK,
    dst: &HyperBCK,
    k: usize,
    map: &mut Vec<usize>,
    emit: &mut impl FnMut(&[usize]),
) {
    let n = src.len();
    if k == n {
        emit(map);
        return;
    }
    let assigned = Subset::full(k + 1);
    let choices = if k == src.zero() { dst.zero()..dst.zero() + 1 } else { 0..dst.len() };
    for v in choices {
        map[k] = v;
        let ok = (0..=k).all(|x| {
            (0..=k).all(|y| {
                let cell = src.star(x, y);
                !cell.is_subset_of(assigned)
                    || image_of(map, cell) == dst.star(map[x], map[y])
            })
        });
        if ok {
            extend_map(src, dst, k + 1, map, emit);
        }
    }
}

/// Every fuzzy homomorphism `src → dst`, in lexicographic order.
pub fn enumerate_fuzzy_homs(src: &FuzzyHyperBCK, dst: &FuzzyHyperBCK) -> Vec<FuzzyHom> {
    enumerate_homs(src.alg(), dst.alg())
        .into_iter()
        .filter_map(|h| FuzzyHom::new(h, src.clone(), dst.clone()).ok())
        .collect()
}

/// Two distinct parallel maps out of a probe object that `f` identifies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonoWitness {
    pub probe: FuzzyHyperBCK,
    pub h: Hom,
    pub g: Hom,
}

/// Mono-ness of a fuzzy homomorphism, decided against every probe object
/// up to a size bound. Categorical mono-ness quantifies over all objects;
/// this verdict is only as strong as the bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonoVerdict {
    pub probe_size_bound: usize,
    pub crisp_mono: bool,
    pub fuzzy_mono: bool,
    /// For a crisp witness the probe carries the zero membership function.
    pub crisp_witness: Option<MonoWitness>,
    pub fuzzy_witness: Option<MonoWitness>,
}

impl MonoVerdict {
    pub fn agree(&self) -> bool {
        self.crisp_mono == self.fuzzy_mono
    }
}

/// Decides mono-ness of `f` among probes of size at most `probe_size_bound`
/// (every algebra up to isomorphism), crisply and in the fuzzy category with
/// probe memberships drawn from the standard grid and the levels of `f`'s
/// source.
pub fn check_mono_equivalence(f: &FuzzyHom, probe_size_bound: usize) -> Result<MonoVerdict> {
    if probe_size_bound == 0 || probe_size_bound > MAX_EXHAUSTIVE {
        return Err(Error::SizeBound {
            what: "mono probe size",
            size: probe_size_bound,
            bound: MAX_EXHAUSTIVE,
        });
    }
    let probes = models_up_to(probe_size_bound)?;
    let mut grid = standard_grid();
    grid.extend(cut_levels(f.source()));
    Ok(check_mono_against(f, &probes, &grid, probe_size_bound))
}

/// [`check_mono_equivalence`] over an explicit probe list and value grid.
pub fn check_mono_against(
    f: &FuzzyHom,
    probes: &[HyperBCK],
    grid: &[FuzzyValue],
    probe_size_bound: usize,
) -> MonoVerdict {
    let src = f.source();
    let mut crisp_witness = None;
    let mut fuzzy_witness = None;
    for k in probes {
        let homs = enumerate_homs(k, src.alg());
        let mut by_composite: HashMap<Vec<usize>, Vec<&Hom>> = HashMap::new();
        for h in &homs {
            let composite: Vec<usize> = h.map().iter().map(|&x| f.apply(x)).collect();
            by_composite.entry(composite).or_default().push(h);
        }
        let mut collisions: Vec<(&Hom, &Hom)> = Vec::new();
        for class in by_composite.values() {
            for (i, h) in class.iter().enumerate() {
                for g in &class[i + 1..] {
                    collisions.push((h, g));
                }
            }
        }
        if collisions.is_empty() {
            continue;
        }
        collisions.sort_by(|a, b| (a.0.map(), a.1.map()).cmp(&(b.0.map(), b.1.map())));
        if crisp_witness.is_none() {
            let (h, g) = collisions[0];
            crisp_witness = Some(MonoWitness {
                probe: FuzzyHyperBCK::constant(k.clone(), FuzzyValue::ZERO),
                h: h.clone(),
                g: g.clone(),
            });
        }
        if fuzzy_witness.is_none() {
            'search: for mu_k in enumerate_fuzzy_assignments(k, grid) {
                for &(h, g) in &collisions {
                    let fuzzy = |m: &Hom| (0..k.len()).all(|x| src.mu(m.apply(x)) >= mu_k.mu(x));
                    if fuzzy(h) && fuzzy(g) {
                        fuzzy_witness =
                            Some(MonoWitness { probe: mu_k.clone(), h: h.clone(), g: g.clone() });
                        break 'search;
                    }
                }
            }
        }
        if crisp_witness.is_some() && fuzzy_witness.is_some() {
            break;
        }
    }
    MonoVerdict {
        probe_size_bound,
        crisp_mono: crisp_witness.is_none(),
        fuzzy_mono: fuzzy_witness.is_none(),
        crisp_witness,
        fuzzy_witness,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparationVerdict {
    /// `μ < α` on `G \ {O}` and `μ > α` on `F \ {O}`.
    pub hypothesis: bool,
    pub homs_checked: usize,
    /// Every homomorphism `G → F` is fuzzy; `None` if the hypothesis fails.
    pub conclusion: Option<bool>,
    pub counterexample: Option<Hom>,
}

/// For subalgebras `G`, `F` of `host` separated by `alpha`, checks that every
/// homomorphism `G → F` is a fuzzy homomorphism for the inherited memberships.
pub fn separation_promotes(
    host: &FuzzyHyperBCK,
    g_set: Subset,
    f_set: Subset,
    alpha: FuzzyValue,
) -> Result<SeparationVerdict> {
    let g = restrict(host, g_set)?;
    let f = restrict(host, f_set)?;
    let zero = host.alg().zero();
    let hypothesis = g_set.without(zero).iter().all(|x| host.mu(x) < alpha)
        && f_set.without(zero).iter().all(|x| host.mu(x) > alpha);
    if !hypothesis {
        return Ok(SeparationVerdict {
            hypothesis,
            homs_checked: 0,
            conclusion: None,
            counterexample: None,
        });
    }
    let homs = enumerate_homs(g.alg(), f.alg());
    let mut counterexample = None;
    for h in &homs {
        if !is_fuzzy_hom(h, &g, &f)? {
            counterexample = Some(h.clone());
            break;
        }
    }
    Ok(SeparationVerdict {
        hypothesis,
        homs_checked: homs.len(),
        conclusion: Some(counterexample.is_none()),
        counterexample,
    })
}
