//! Shared fixtures and independent oracles for the integration suites.
//!
//! The oracles deliberately avoid the library's bitsets and cached orders:
//! they work on `BTreeSet`s and spell the definitions out literally.

#![allow(dead_code)]

use std::collections::BTreeSet;

use hyperbck::enumerate::{corpus, enumerate_fuzzy_assignments, Policy};
use hyperbck::{FuzzyHyperBCK, FuzzyValue, HyperBCK};

pub type Set = BTreeSet<usize>;

/// A table re-read into plain sets.
pub struct Naive {
    pub n: usize,
    pub zero: usize,
    pub cell: Vec<Vec<Set>>,
}

impl Naive {
    pub fn of(alg: &HyperBCK) -> Self {
        let n = alg.len();
        let cell = (0..n)
            .map(|x| (0..n).map(|y| alg.star(x, y).iter().collect()).collect())
            .collect();
        Naive { n, zero: alg.zero(), cell }
    }

    pub fn from_cells(n: usize, zero: usize, cell: Vec<Vec<Set>>) -> Self {
        Naive { n, zero, cell }
    }

    /// `x < y` iff `O ∈ x*y`.
    pub fn lt(&self, x: usize, y: usize) -> bool {
        self.cell[x][y].contains(&self.zero)
    }

    /// `A < B` iff every `a ∈ A` is below some `b ∈ B`.
    pub fn set_lt(&self, a: &Set, b: &Set) -> bool {
        a.iter().all(|&x| b.iter().any(|&y| self.lt(x, y)))
    }

    /// `A*B` is the union of `a*b`.
    pub fn star(&self, a: &Set, b: &Set) -> Set {
        let mut out = Set::new();
        for &x in a {
            for &y in b {
                out.extend(self.cell[x][y].iter().copied());
            }
        }
        out
    }

    pub fn one(x: usize) -> Set {
        [x].into_iter().collect()
    }

    pub fn all(&self) -> Set {
        (0..self.n).collect()
    }

    pub fn hk1(&self) -> BTreeSet<Vec<usize>> {
        let mut bad = BTreeSet::new();
        for x in 0..self.n {
            for y in 0..self.n {
                for z in 0..self.n {
                    let lhs = self.star(&self.cell[x][z], &self.cell[y][z]);
                    if !self.set_lt(&lhs, &self.cell[x][y]) {
                        bad.insert(vec![x, y, z]);
                    }
                }
            }
        }
        bad
    }

    pub fn hk2(&self) -> BTreeSet<Vec<usize>> {
        let mut bad = BTreeSet::new();
        for x in 0..self.n {
            for y in 0..self.n {
                for z in 0..self.n {
                    let l = self.star(&self.cell[x][y], &Self::one(z));
                    let r = self.star(&self.cell[x][z], &Self::one(y));
                    if l != r {
                        bad.insert(vec![x, y, z]);
                    }
                }
            }
        }
        bad
    }

    pub fn hk3(&self) -> BTreeSet<Vec<usize>> {
        (0..self.n)
            .filter(|&x| !self.set_lt(&self.star(&Self::one(x), &self.all()), &Self::one(x)))
            .map(|x| vec![x])
            .collect()
    }

    pub fn is_model(&self) -> bool {
        self.hk1().is_empty() && self.hk2().is_empty() && self.hk3().is_empty()
    }

    /// Literal strong-homomorphism test for a map into `dst`.
    pub fn is_hom(&self, map: &[usize], dst: &Naive) -> bool {
        if map[self.zero] != dst.zero {
            return false;
        }
        for x in 0..self.n {
            for y in 0..self.n {
                let image: Set = self.cell[x][y].iter().map(|&t| map[t]).collect();
                if image != dst.cell[map[x]][map[y]] {
                    return false;
                }
            }
        }
        true
    }
}

/// `inf μ(x*y) >= min(μ(x), μ(y))` for every pair, read off literally.
pub fn naive_fuzzy(f: &FuzzyHyperBCK) -> bool {
    let a = Naive::of(f.alg());
    (0..a.n).all(|x| {
        (0..a.n).all(|y| {
            let inf = a.cell[x][y].iter().map(|&t| f.mu(t)).min().unwrap();
            inf >= f.mu(x).min(f.mu(y))
        })
    })
}

/// `μ_dst(f(x)) >= μ_src(x)` for all `x`.
pub fn naive_fuzzy_map(map: &[usize], src: &FuzzyHyperBCK, dst: &FuzzyHyperBCK) -> bool {
    (0..src.len()).all(|x| dst.mu(map[x]) >= src.mu(x))
}

/// Every map `src -> dst` as a vector of images.
pub fn all_maps(src: usize, dst: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..src {
        out = out
            .into_iter()
            .flat_map(|m: Vec<usize>| {
                (0..dst).map(move |t| {
                    let mut m = m.clone();
                    m.push(t);
                    m
                })
            })
            .collect();
    }
    out
}

pub fn q(p: u64, r: u64) -> FuzzyValue {
    FuzzyValue::new(p, r).unwrap()
}

pub fn coarse_grid() -> Vec<FuzzyValue> {
    vec![FuzzyValue::ZERO, q(1, 2), FuzzyValue::ONE]
}

/// Every raw model of size `1..=max` with every admissible membership
/// function over `grid`.
pub fn fuzzy_corpus(max: usize, grid: &[FuzzyValue]) -> Vec<FuzzyHyperBCK> {
    let mut out = Vec::new();
    for n in 1..=max {
        for m in &corpus(n, Policy::Raw).unwrap().models {
            out.extend(enumerate_fuzzy_assignments(m, grid));
        }
    }
    out
}

pub fn raw_models(max: usize) -> Vec<HyperBCK> {
    (1..=max).flat_map(|n| corpus(n, Policy::Raw).unwrap().models.iter().cloned()).collect()
}
