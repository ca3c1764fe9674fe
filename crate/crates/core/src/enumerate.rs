//! Exhaustive generators: all hyper BCK-algebras of a small size, fuzzy
//! assignments over a value grid, and the reciprocal chain family.

use std::sync::OnceLock;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fuzzy::{FuzzyHyperBCK, FuzzyValue};
use crate::hyper::{Carrier, HyperBCK};
use crate::subset::Subset;

/// Largest size [`enumerate_hyper_bck`] will search exhaustively.
pub const MAX_EXHAUSTIVE: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Policy {
    /// Every valid table on the carrier `0..n` with zero `0`.
    Raw,
    /// One canonical representative per class under zero-fixing relabeling.
    UpToIso,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelCorpus {
    pub size: usize,
    pub policy: Policy,
    pub models: Vec<HyperBCK>,
}

/// The chain `{1..k}` with zero `1`:
///
/// * `x*y = {1..x}` if `x <= y`
/// * `x*y = {2..y}` if `x > y != 1`
/// * `x*y = {x}` if `y = 1`
///
/// and `μ(x) = 1/x`.
pub fn chain_example(k: usize) -> Result<FuzzyHyperBCK> {
    if k == 0 {
        return Err(Error::EmptyCarrier);
    }
    let carrier = Carrier::new((1..=k).map(|i| i.to_string()), 0)?;
    // index i holds the value i + 1
    let range = |lo: usize, hi: usize| -> Subset { (lo - 1..hi).collect() };
    let alg = HyperBCK::from_fn(carrier, |i, j| {
        let (x, y) = (i + 1, j + 1);
        if y == 1 {
            Subset::singleton(i)
        } else if x <= y {
            range(1, x)
        } else {
            range(2, y)
        }
    })?;
    let mu = (1..=k as u64).map(FuzzyValue::reciprocal).collect::<Result<_>>()?;
    FuzzyHyperBCK::new(alg, mu)
}

/// All hyper BCK-algebras (HK1–HK3) of size `n` on the carrier `"0".."n-1"`
/// with zero `"0"`, in lexicographic table order.
pub fn enumerate_hyper_bck(n: usize, policy: Policy) -> Result<ModelCorpus> {
    if n == 0 || n > MAX_EXHAUSTIVE {
        return Err(Error::SizeBound { what: "exhaustive enumeration", size: n, bound: MAX_EXHAUSTIVE });
    }
    let carrier = Carrier::numbered(n)?;
    let values: Vec<Subset> = (1..1u128 << n).map(Subset::from_bits).collect();
    // Split on the first cell; each branch is searched independently.
    let tables: Vec<Vec<Subset>> = values
        .par_iter()
        .map(|&first| {
            let mut search = Search::new(n, &values);
            search.cells[0] = first;
            search.known[0] = true;
            let mut found = Vec::new();
            if search.consistent() {
                search.fill(1, &mut found);
            }
            found
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect();
    let mut models = Vec::with_capacity(tables.len());
    for table in tables {
        let alg = HyperBCK::new(carrier.clone(), table)?;
        debug_assert!(alg.satisfies_axioms(false));
        if policy == Policy::Raw || canonical_code(&alg) == table_code(&alg) {
            models.push(alg);
        }
    }
    Ok(ModelCorpus { size: n, policy, models })
}

/// Cached corpora for sizes up to [`MAX_EXHAUSTIVE`].
pub fn corpus(n: usize, policy: Policy) -> Result<&'static ModelCorpus> {
    static CACHE: [[OnceLock<ModelCorpus>; 2]; MAX_EXHAUSTIVE + 1] =
        [const { [const { OnceLock::new() }, const { OnceLock::new() }] }; MAX_EXHAUSTIVE + 1];
    if n == 0 || n > MAX_EXHAUSTIVE {
        return Err(Error::SizeBound { what: "exhaustive enumeration", size: n, bound: MAX_EXHAUSTIVE });
    }
    let slot = &CACHE[n][(policy == Policy::UpToIso) as usize];
    if let Some(c) = slot.get() {
        return Ok(c);
    }
    let c = enumerate_hyper_bck(n, policy)?;
    Ok(slot.get_or_init(|| c))
}

/// Up-to-iso models of every size in `1..=max`, smallest first.
pub fn models_up_to(max: usize) -> Result<Vec<HyperBCK>> {
    let mut out = Vec::new();
    for n in 1..=max {
        out.extend(corpus(n, Policy::UpToIso)?.models.iter().cloned());
    }
    Ok(out)
}

/// Depth-first search over cell assignments, pruning any partial table in
/// which some axiom instance is already decided false.
struct Search<'a> {
    n: usize,
    values: &'a [Subset],
    cells: Vec<Subset>,
    known: Vec<bool>,
}

impl<'a> Search<'a> {
    fn new(n: usize, values: &'a [Subset]) -> Self {
        Search { n, values, cells: vec![Subset::EMPTY; n * n], known: vec![false; n * n] }
    }

    fn fill(&mut self, k: usize, out: &mut Vec<Vec<Subset>>) {
        if k == self.n * self.n {
            out.push(self.cells.clone());
            return;
        }
        self.known[k] = true;
        for &v in self.values {
            self.cells[k] = v;
            if self.consistent() {
                self.fill(k + 1, out);
            }
        }
        self.known[k] = false;
    }

    fn cell(&self, x: usize, y: usize) -> Option<Subset> {
        let k = x * self.n + y;
        self.known[k].then_some(self.cells[k])
    }

    fn star_sets(&self, a: Subset, b: Subset) -> Option<Subset> {
        let mut out = Subset::EMPTY;
        for x in a {
            for y in b {
                out = out.union(self.cell(x, y)?);
            }
        }
        Some(out)
    }

    /// `Some(false)` only if some element of `a` is provably below nothing in `b`.
    fn order_sets(&self, a: Subset, b: Subset) -> Option<bool> {
        let mut undecided = false;
        for x in a {
            let mut found = false;
            let mut unknown = false;
            for y in b {
                match self.cell(x, y) {
                    Some(c) if c.contains(0) => {
                        found = true;
                        break;
                    }
                    Some(_) => {}
                    None => unknown = true,
                }
            }
            if !found {
                if unknown {
                    undecided = true;
                } else {
                    return Some(false);
                }
            }
        }
        if undecided {
            None
        } else {
            Some(true)
        }
    }

    fn consistent(&self) -> bool {
        let n = self.n;
        let full = Subset::full(n);
        for x in 0..n {
            if let Some(row) = self.star_sets(Subset::singleton(x), full) {
                if self.order_sets(row, Subset::singleton(x)) == Some(false) {
                    return false;
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let (Some(xy), Some(xz)) = (self.cell(x, y), self.cell(x, z)) else {
                        continue;
                    };
                    let lhs = self.star_sets(xy, Subset::singleton(z));
                    let rhs = self.star_sets(xz, Subset::singleton(y));
                    if let (Some(l), Some(r)) = (lhs, rhs) {
                        if l != r {
                            return false;
                        }
                    }
                    let Some(yz) = self.cell(y, z) else {
                        continue;
                    };
                    if let Some(l) = self.star_sets(xz, yz) {
                        if self.order_sets(l, xy) == Some(false) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}

fn table_code(alg: &HyperBCK) -> Vec<u128> {
    alg.table().iter().map(|s| s.bits()).collect()
}

/// Permutations of `0..n` that send `zero` to 0.
fn zero_fixing_permutations(n: usize, zero: usize) -> Vec<Vec<usize>> {
    let others: Vec<usize> = (0..n).filter(|&i| i != zero).collect();
    let mut out = Vec::new();
    let mut targets: Vec<usize> = (1..n).collect();
    permute(&mut targets, 0, &mut |t| {
        let mut perm = vec![0; n];
        for (&src, &dst) in others.iter().zip(t) {
            perm[src] = dst;
        }
        perm[zero] = 0;
        out.push(perm);
    });
    out
}

fn permute(items: &mut [usize], k: usize, emit: &mut impl FnMut(&[usize])) {
    if k == items.len() {
        emit(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute(items, k + 1, emit);
        items.swap(k, i);
    }
}

/// Smallest table code over all relabelings onto `0..n` that put the zero
/// at index 0. Two algebras get the same code iff they are isomorphic by a
/// zero-preserving bijection. Labels are ignored.
pub fn canonical_code(alg: &HyperBCK) -> Vec<u128> {
    canonical_permutation(alg).1
}

fn canonical_permutation(alg: &HyperBCK) -> (Vec<usize>, Vec<u128>) {
    let n = alg.len();
    zero_fixing_permutations(n, alg.zero())
        .into_iter()
        .map(|perm| {
            let mut code = vec![0u128; n * n];
            for x in 0..n {
                for y in 0..n {
                    let img: Subset = alg.star(x, y).iter().map(|t| perm[t]).collect();
                    code[perm[x] * n + perm[y]] = img.bits();
                }
            }
            (perm, code)
        })
        .min_by(|a, b| a.1.cmp(&b.1))
        .expect("at least one permutation")
}

/// The canonical representative on the numbered carrier `"0".."n-1"`.
pub fn canonical_model(alg: &HyperBCK) -> Result<HyperBCK> {
    let n = alg.len();
    let code = canonical_code(alg);
    HyperBCK::new(Carrier::numbered(n)?, code.into_iter().map(Subset::from_bits).collect())
}

pub fn are_isomorphic(a: &HyperBCK, b: &HyperBCK) -> bool {
    a.len() == b.len() && canonical_code(a) == canonical_code(b)
}

/// Every `μ: H → grid` satisfying the fuzzy inequality, lexicographic in
/// the (sorted, deduplicated) grid order.
pub fn enumerate_fuzzy_assignments(alg: &HyperBCK, grid: &[FuzzyValue]) -> Vec<FuzzyHyperBCK> {
    let mut grid = grid.to_vec();
    grid.sort_unstable();
    grid.dedup();
    let n = alg.len();
    let mut out = Vec::new();
    let mut mu = vec![FuzzyValue::ZERO; n];
    assign(alg, &grid, 0, &mut mu, &mut out);
    out
}

fn assign(
    alg: &HyperBCK,
    grid: &[FuzzyValue],
    k: usize,
    mu: &mut Vec<FuzzyValue>,
    out: &mut Vec<FuzzyHyperBCK>,
) {
    let n = alg.len();
    if k == n {
        out.push(FuzzyHyperBCK::new(alg.clone(), mu.clone()).expect("total assignment"));
        return;
    }
    let assigned = Subset::full(k + 1);
    for &v in grid {
        mu[k] = v;
        // every pair whose operands and values are all assigned, touching k
        let ok = (0..=k).all(|j| {
            [(k, j), (j, k)].into_iter().all(|(x, y)| {
                let cell = alg.star(x, y);
                let floor = mu[x].min(mu[y]);
                !cell.is_subset_of(assigned) || cell.iter().all(|t| mu[t] >= floor)
            })
        }) && (0..k).all(|x| {
            (0..k).all(|y| {
                let cell = alg.star(x, y);
                !cell.contains(k)
                    || !cell.is_subset_of(assigned)
                    || cell.iter().all(|t| mu[t] >= mu[x].min(mu[y]))
            })
        });
        if ok {
            assign(alg, grid, k + 1, mu, out);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fuzzy::{standard_grid, validate_fuzzy};
    use crate::report::Check;

    #[test]
    fn chain_shapes() {
        let one = chain_example(1).unwrap();
        assert_eq!(one.alg(), &HyperBCK::trivial("1").unwrap());
        assert_eq!(one.mu(0), FuzzyValue::ONE);

        let c3 = chain_example(3).unwrap();
        let a = c3.alg();
        let c = a.carrier();
        assert_eq!(a.star_by_label("3", "2").unwrap(), c.subset(["2"]).unwrap());
        assert_eq!(a.star_by_label("3", "3").unwrap(), c.full());
        assert_eq!(a.star_by_label("3", "1").unwrap(), c.subset(["3"]).unwrap());
        assert_eq!(a.star_by_label("1", "3").unwrap(), c.subset(["1"]).unwrap());
        assert!(matches!(chain_example(0), Err(Error::EmptyCarrier)));
    }

    #[test]
    fn chain_four_is_fuzzy_but_fails_hk1() {
        let c4 = chain_example(4).unwrap();
        assert!(validate_fuzzy(&c4).passed());
        let report = c4.alg().validate(false);
        assert!(report.violations().iter().all(|v| v.check == Check::Hk1));
        assert_eq!(report.violations().len(), 5);
        assert!(chain_example(2).unwrap().alg().validate(true).passed());
    }

    #[test]
    fn size_one_corpus() {
        let c = enumerate_hyper_bck(1, Policy::Raw).unwrap();
        assert_eq!(c.models.len(), 1);
        assert_eq!(c.models[0], HyperBCK::trivial("0").unwrap());
    }

    #[test]
    fn out_of_range_sizes_refused() {
        assert!(matches!(enumerate_hyper_bck(0, Policy::Raw), Err(Error::SizeBound { .. })));
        assert!(matches!(enumerate_hyper_bck(4, Policy::Raw), Err(Error::SizeBound { .. })));
    }

    #[test]
    fn pruned_search_matches_brute_force_at_size_two() {
        let carrier = Carrier::numbered(2).unwrap();
        let mut brute = Vec::new();
        for code in 0..81u32 {
            let mut c = code;
            let table: Vec<Subset> = (0..4)
                .map(|_| {
                    let v = Subset::from_bits((c % 3 + 1) as u128);
                    c /= 3;
                    v
                })
                .collect();
            let alg = HyperBCK::new(carrier.clone(), table).unwrap();
            if alg.validate(false).passed() {
                brute.push(alg);
            }
        }
        let mut found = enumerate_hyper_bck(2, Policy::Raw).unwrap().models;
        let key = |a: &HyperBCK| table_code(a);
        brute.sort_by_key(key);
        found.sort_by_key(key);
        assert_eq!(found, brute);
    }

    #[test]
    fn canonical_form_is_idempotent_and_label_blind() {
        let c3 = chain_example(3).unwrap().alg().clone();
        let canon = canonical_model(&c3).unwrap();
        assert_eq!(canonical_model(&canon).unwrap(), canon);
        let shuffled = c3.permuted(&[1, 2, 0]).unwrap();
        assert_eq!(canonical_code(&shuffled), canonical_code(&c3));
        assert!(are_isomorphic(&shuffled, &canon));
    }

    #[test]
    fn fuzzy_assignments_on_trivial_and_c2() {
        let t = HyperBCK::trivial("O").unwrap();
        let two = [FuzzyValue::ZERO, FuzzyValue::ONE];
        assert_eq!(enumerate_fuzzy_assignments(&t, &two).len(), 2);

        let c2 = chain_example(2).unwrap().alg().clone();
        let got: Vec<Vec<FuzzyValue>> = enumerate_fuzzy_assignments(&c2, &two)
            .iter()
            .map(|f| f.memberships().to_vec())
            .collect();
        let mut expected = Vec::new();
        for a in two {
            for b in two {
                let f = FuzzyHyperBCK::new(c2.clone(), vec![a, b]).unwrap();
                if f.satisfies_fuzzy() {
                    expected.push(vec![a, b]);
                }
            }
        }
        assert_eq!(got, expected);
        // μ(2)=1 forces μ(1) >= 1 through 2*2 = {1,2}
        assert!(!got.contains(&vec![FuzzyValue::ZERO, FuzzyValue::ONE]));
    }

    #[test]
    fn pruned_fuzzy_assignments_match_filter() {
        let grid = standard_grid();
        for alg in models_up_to(2).unwrap().iter().chain([chain_example(3).unwrap().alg()]) {
            let got = enumerate_fuzzy_assignments(alg, &grid);
            let n = alg.len();
            let mut expected = 0;
            let mut idx = vec![0usize; n];
            loop {
                let f = FuzzyHyperBCK::new(alg.clone(), idx.iter().map(|&i| grid[i]).collect())
                    .unwrap();
                if f.satisfies_fuzzy() {
                    expected += 1;
                }
                let mut k = n;
                while k > 0 {
                    k -= 1;
                    idx[k] += 1;
                    if idx[k] < grid.len() {
                        break;
                    }
                    idx[k] = 0;
                }
                if idx.iter().all(|&i| i == 0) {
                    break;
                }
            }
            assert_eq!(got.len(), expected);
            assert!(got.iter().all(|f| f.satisfies_fuzzy()));
        }
    }
}
