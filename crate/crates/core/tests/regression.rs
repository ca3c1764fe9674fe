//! Frozen counts. A change here means the enumerators or the checks changed
//! behaviour and needs a look.

use hyperbck::construct::enumerate_regular_congruences;
use hyperbck::enumerate::{chain_example, corpus, enumerate_fuzzy_assignments, Policy};
use hyperbck::fuzzy::standard_grid;
use hyperbck::morphism::{enumerate_fuzzy_homs, enumerate_homs};

#[test]
fn corpus_sizes() {
    let count = |n, p| corpus(n, p).unwrap().models.len();
    assert_eq!(count(1, Policy::Raw), 1);
    assert_eq!(count(2, Policy::Raw), 12);
    assert_eq!(count(2, Policy::UpToIso), 12);
    assert_eq!(count(3, Policy::Raw), 15936);
    assert_eq!(count(3, Policy::UpToIso), 8048);
}

#[test]
fn strict_models_are_rare() {
    let strict = |n| corpus(n, Policy::UpToIso).unwrap().models.iter().filter(|m| m.validate(true).passed()).count();
    assert_eq!(strict(3), 19);
}

#[test]
fn fuzzy_assignment_counts() {
    let grid = standard_grid();
    let total = |n| -> usize {
        corpus(n, Policy::Raw).unwrap().models.iter().map(|m| enumerate_fuzzy_assignments(m, &grid).len()).sum()
    };
    assert_eq!(total(1), 7);
    assert_eq!(total(2), 231);
    assert_eq!(total(3), 338457);
}

#[test]
fn chain_counts() {
    let c2 = chain_example(2).unwrap();
    let c3 = chain_example(3).unwrap();
    let homs = enumerate_homs(c2.alg(), c3.alg());
    let maps: Vec<&[usize]> = homs.iter().map(|h| h.map()).collect();
    assert_eq!(maps, [&[0, 0][..], &[0, 1][..]]);
    assert_eq!(enumerate_fuzzy_homs(&c2, &c3).len(), 2);
    // Only the total partition survives: the discrete quotient is C3 itself,
    // which fails HK1.
    let regs = enumerate_regular_congruences(c3.alg(), 5).unwrap();
    assert_eq!(regs.len(), 1);
    assert_eq!(regs[0].blocks().len(), 1);
}
