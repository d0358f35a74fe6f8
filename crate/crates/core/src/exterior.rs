//! The three-exterior algebra of a d-dimensional space: words over d letters
//! modulo the vanishing of every fully symmetrized product of n letters
//! (n = 3 throughout the rest of the engine, but everything here is generic).
//!
//! A *rise* of length `n` is a run of `n` consecutive non-decreasing letters;
//! the rise-free words form a linear basis of the quotient. `reduce_pure`
//! rewrites an arbitrary word into that basis. The symmetrizer relation for
//! the multiset of a rise window reads `sum over distinct arrangements = 0`
//! (the common stabilizer factor cancels), so a window is always replaced by
//! the other distinct arrangements of its letters with coefficient -1.

use crate::coeff::CycQ;
use std::collections::BTreeMap;
use std::fmt;

/// A word over the letters `1..=d`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Sequence(pub Vec<u8>);

impl fmt::Display for Sequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Formal linear combination of sequences over Q(q).
pub type PureCombination = BTreeMap<Sequence, CycQ>;

/// Does `seq` contain `n` consecutive non-decreasing letters?
pub fn has_rise<T: Ord>(seq: &[T], n: usize) -> bool {
    leftmost_rise(seq, n).is_some()
}

/// Index of the first window of `n` consecutive non-decreasing letters.
pub fn leftmost_rise<T: Ord>(seq: &[T], n: usize) -> Option<usize> {
    if n == 0 || seq.len() < n {
        return if n == 0 { Some(0) } else { None };
    }
    'outer: for start in 0..=(seq.len() - n) {
        for k in 0..n - 1 {
            if seq[start + k] > seq[start + k + 1] {
                continue 'outer;
            }
        }
        return Some(start);
    }
    None
}

fn all_rises<T: Ord>(seq: &[T], n: usize) -> Vec<usize> {
    if n == 0 || seq.len() < n {
        return Vec::new();
    }
    (0..=(seq.len() - n))
        .filter(|&start| (0..n - 1).all(|k| seq[start + k] <= seq[start + k + 1]))
        .collect()
}

/// All rise-free words of length `k` over `d` letters, in lexicographic order.
pub fn roby_basis(d: usize, n: usize, k: usize) -> Vec<Sequence> {
    assert!(d <= u8::MAX as usize, "letter count out of range");
    assert!(n >= 2, "symmetrizer arity must be at least 2");
    let mut out = Vec::new();
    let mut cur: Vec<u8> = Vec::with_capacity(k);
    fn extend(d: usize, n: usize, k: usize, cur: &mut Vec<u8>, out: &mut Vec<Sequence>) {
        if cur.len() == k {
            out.push(Sequence(cur.clone()));
            return;
        }
        for letter in 1..=d as u8 {
            cur.push(letter);
            // Only the window ending at the new letter can be a new rise.
            let fresh_rise = cur.len() >= n && {
                let w = &cur[cur.len() - n..];
                (0..n - 1).all(|i| w[i] <= w[i + 1])
            };
            if !fresh_rise {
                extend(d, n, k, cur, out);
            }
            cur.pop();
        }
    }
    extend(d, n, k, &mut cur, &mut out);
    out
}

/// Number of rise-free words of length `k` over `d` letters, by dynamic
/// programming over the last `n-1` letters.
pub fn roby_dim(d: usize, n: usize, k: usize) -> u128 {
    assert!(d <= u8::MAX as usize, "letter count out of range");
    assert!(n >= 2, "symmetrizer arity must be at least 2");
    if k == 0 {
        return 1;
    }
    // State: the last min(n-1, length) letters seen so far.
    let mut states: BTreeMap<Vec<u8>, u128> = BTreeMap::new();
    for letter in 1..=d as u8 {
        *states.entry(vec![letter]).or_insert(0) += 1;
    }
    for _ in 1..k {
        let mut next: BTreeMap<Vec<u8>, u128> = BTreeMap::new();
        for (state, count) in &states {
            for letter in 1..=d as u8 {
                if state.len() == n - 1 {
                    let non_decreasing = state.windows(2).all(|w| w[0] <= w[1])
                        && *state.last().unwrap() <= letter;
                    if non_decreasing {
                        continue;
                    }
                }
                let mut s = state.clone();
                s.push(letter);
                if s.len() > n - 1 {
                    s.remove(0);
                }
                *next.entry(s).or_insert(0) += count;
            }
        }
        states = next;
    }
    states.values().sum()
}

fn add_term(acc: &mut PureCombination, seq: Sequence, coeff: CycQ) {
    if coeff.is_zero() {
        return;
    }
    let entry = acc.entry(seq.clone()).or_insert_with(CycQ::zero);
    *entry += &coeff;
    if entry.is_zero() {
        acc.remove(&seq);
    }
}

/// Distinct rearrangements of `window` other than `window` itself.
pub(crate) fn other_arrangements(window: &[u8]) -> Vec<Vec<u8>> {
    let mut perms: Vec<Vec<u8>> = Vec::new();
    let mut letters = window.to_vec();
    letters.sort_unstable();
    // Heap-style generation of distinct permutations of a (small) multiset.
    fn rec(remaining: &mut Vec<u8>, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if remaining.is_empty() {
            out.push(cur.clone());
            return;
        }
        let mut last: Option<u8> = None;
        for i in 0..remaining.len() {
            let letter = remaining[i];
            if last == Some(letter) {
                continue;
            }
            last = Some(letter);
            remaining.remove(i);
            cur.push(letter);
            rec(remaining, cur, out);
            cur.pop();
            remaining.insert(i, letter);
        }
    }
    rec(&mut letters, &mut Vec::new(), &mut perms);
    perms.retain(|p| p != window);
    perms
}

fn reduce_with<F>(seq: &Sequence, n: usize, mut pick: F) -> PureCombination
where
    F: FnMut(&[usize]) -> usize,
{
    let mut acc = PureCombination::new();
    let mut work: Vec<(CycQ, Vec<u8>)> = vec![(CycQ::one(), seq.0.clone())];
    while let Some((coeff, word)) = work.pop() {
        let rises = all_rises(&word, n);
        if rises.is_empty() {
            add_term(&mut acc, Sequence(word), coeff);
            continue;
        }
        let start = rises[pick(&rises)];
        let window = word[start..start + n].to_vec();
        // The window is the lexicographically least arrangement of its
        // letters, so every replacement word below is strictly lex-greater;
        // with word length fixed this bounds the rewriting depth.
        for repl in other_arrangements(&window) {
            let mut w = word.clone();
            w[start..start + n].copy_from_slice(&repl);
            work.push((-&coeff, w));
        }
    }
    acc
}

/// Rewrite a word into the rise-free basis (leftmost-rise strategy).
pub fn reduce_pure(seq: &Sequence, n: usize) -> PureCombination {
    reduce_with(seq, n, |_| 0)
}

/// SplitMix64 step; cheap deterministic choice source for the randomized
/// rewrite strategies, without pulling in an RNG crate.
pub(crate) fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E3779B97F4A7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
    z ^ (z >> 31)
}

/// Rewrite picking a pseudo-random rise at each step; the normal form must
/// not depend on the choice. Used to test confluence.
pub fn reduce_pure_randomized(seq: &Sequence, n: usize, seed: u64) -> PureCombination {
    let mut state = seed;
    reduce_with(seq, n, move |choices| {
        (splitmix64(&mut state) as usize) % choices.len()
    })
}
