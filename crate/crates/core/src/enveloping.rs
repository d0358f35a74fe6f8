//! The enveloping algebra of a three-graded algebra: free words over the
//! generators, reduction to the normal-form basis (sorted divided powers of
//! even generators times a rise-free word of odd generators), products, and
//! an independent Gaussian-elimination oracle used to cross-check the
//! rewrite engine.

use crate::coeff::{CycQ, Rat};
use crate::exterior;
use crate::structure::AlgebraSpec;
use num::BigInt;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use thiserror::Error;

/// One generator: `X(i)` indexes the even basis, `Y(a)` the odd basis.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Gen {
    X(usize),
    Y(usize),
}

/// A word in the free algebra on the generators.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct FreeWord(pub Vec<Gen>);

impl FreeWord {
    pub fn degree(&self) -> usize {
        self.0.len()
    }

    /// Count of odd letters, mod 3.
    pub fn grade(&self) -> u8 {
        (self.0.iter().filter(|g| matches!(g, Gen::Y(_))).count() % 3) as u8
    }
}

pub(crate) fn factorial(k: u32) -> Rat {
    let mut f = BigInt::from(1);
    for i in 2..=k as u64 {
        f *= i;
    }
    Rat::from_integer(f)
}

/// A normal-form basis monomial: divided powers of the even generators
/// (`x_exp[i]` is the exponent of `X_i`, the monomial carries an implicit
/// `1/x_exp[i]!`) times a rise-free word over the odd generators
/// (letters are odd indices + 1). Its grade is the odd length mod 3.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PBWMonomial {
    x_exp: Vec<u32>,
    y_word: Vec<u8>,
}

impl PBWMonomial {
    /// Panics if `y_word` has a rise of length 3 or a zero letter; this type
    /// only ever holds normal-form data.
    pub fn new(x_exp: Vec<u32>, y_word: Vec<u8>) -> Self {
        assert!(y_word.iter().all(|&l| l >= 1), "odd letters are 1-based");
        assert!(
            !exterior::has_rise(&y_word, 3),
            "odd word {y_word:?} is not rise-free"
        );
        PBWMonomial { x_exp, y_word }
    }

    pub fn unit(dim_g0: usize) -> Self {
        PBWMonomial { x_exp: vec![0; dim_g0], y_word: Vec::new() }
    }

    pub fn generator(dim_g0: usize, g: Gen) -> Self {
        let mut m = Self::unit(dim_g0);
        match g {
            Gen::X(i) => m.x_exp[i] = 1,
            Gen::Y(a) => m.y_word.push(a as u8 + 1),
        }
        m
    }

    pub fn x_exp(&self) -> &[u32] {
        &self.x_exp
    }

    pub fn y_word(&self) -> &[u8] {
        &self.y_word
    }

    /// Odd generator indices (0-based) along the word.
    pub fn y_indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.y_word.iter().map(|&l| l as usize - 1)
    }

    pub fn degree(&self) -> usize {
        self.x_exp.iter().map(|&e| e as usize).sum::<usize>() + self.y_word.len()
    }

    pub fn grade(&self) -> u8 {
        (self.y_word.len() % 3) as u8
    }

    pub fn is_unit(&self) -> bool {
        self.degree() == 0
    }

    /// The product of exponent factorials: this monomial equals its plain
    /// generator word divided by this number.
    pub fn x_factorial(&self) -> Rat {
        let mut f = Rat::from_integer(BigInt::from(1));
        for &e in &self.x_exp {
            f *= factorial(e);
        }
        f
    }

    /// Canonical display name: even factors as `name` or `name^exp` (divided
    /// powers), the odd word as `V[i,j,...]` with 0-based indices, all joined
    /// by `*`; the unit monomial is `1`.
    pub fn label(&self, spec: &AlgebraSpec) -> String {
        let mut parts = Vec::new();
        for (i, &e) in self.x_exp.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let name = &spec.g0_names()[i];
            parts.push(if e == 1 { name.clone() } else { format!("{name}^{e}") });
        }
        if !self.y_word.is_empty() {
            let idx: Vec<String> = self.y_indices().map(|a| a.to_string()).collect();
            parts.push(format!("V[{}]", idx.join(",")));
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }

    /// The plain generator word underlying the monomial (even letters sorted,
    /// then the odd word); the monomial is `1/x_factorial()` times this word.
    pub fn word(&self) -> FreeWord {
        let mut letters = Vec::with_capacity(self.degree());
        for (i, &e) in self.x_exp.iter().enumerate() {
            for _ in 0..e {
                letters.push(Gen::X(i));
            }
        }
        letters.extend(self.y_indices().map(Gen::Y));
        FreeWord(letters)
    }
}

/// Display order for sums: by total degree, then even parts first (higher
/// leading exponents first), then odd words lexicographically. This puts the
/// unit before generators and even monomials before odd ones of equal degree.
impl Ord for PBWMonomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.x_exp.cmp(&self.x_exp))
            .then_with(|| self.y_word.cmp(&other.y_word))
    }
}

impl PartialOrd for PBWMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// A finite linear combination of normal-form monomials; zero coefficients
/// are never stored.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Element {
    terms: BTreeMap<PBWMonomial, CycQ>,
}

impl Element {
    pub fn zero() -> Self {
        Element::default()
    }

    pub fn unit(spec: &AlgebraSpec) -> Self {
        Element::scalar(spec, CycQ::one())
    }

    pub fn scalar(spec: &AlgebraSpec, c: CycQ) -> Self {
        let mut e = Element::zero();
        e.add_term(PBWMonomial::unit(spec.dim_g0()), c);
        e
    }

    pub fn monomial(m: PBWMonomial, c: CycQ) -> Self {
        let mut e = Element::zero();
        e.add_term(m, c);
        e
    }

    pub fn generator(spec: &AlgebraSpec, g: Gen) -> Self {
        Element::monomial(PBWMonomial::generator(spec.dim_g0(), g), CycQ::one())
    }

    pub fn add_term(&mut self, m: PBWMonomial, c: CycQ) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(CycQ::zero);
        *entry += &c;
        if entry.is_zero() {
            // the key we just hit is the only zero entry
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PBWMonomial, &CycQ)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (PBWMonomial, CycQ)> {
        self.terms.into_iter()
    }

    pub fn coefficient(&self, m: &PBWMonomial) -> CycQ {
        self.terms.get(m).cloned().unwrap_or_else(CycQ::zero)
    }

    /// Coefficient of the degree-zero monomial.
    pub fn unit_coefficient(&self) -> CycQ {
        self.terms
            .iter()
            .find(|(m, _)| m.is_unit())
            .map(|(_, c)| c.clone())
            .unwrap_or_else(CycQ::zero)
    }

    pub fn scaled(&self, c: &CycQ) -> Element {
        let mut out = Element::zero();
        if c.is_zero() {
            return out;
        }
        for (m, v) in &self.terms {
            out.add_term(m.clone(), v * c);
        }
        out
    }

    pub fn max_degree(&self) -> usize {
        self.terms.keys().map(PBWMonomial::degree).max().unwrap_or(0)
    }

    /// The common grade of all terms, if there is one (zero for 0).
    pub fn grade(&self) -> Option<u8> {
        let mut grades = self.terms.keys().map(PBWMonomial::grade);
        let first = match grades.next() {
            None => return Some(0),
            Some(g) => g,
        };
        if grades.all(|g| g == first) {
            Some(first)
        } else {
            None
        }
    }
}

impl Add for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        let mut out = Element::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl fmt::Display for Element {
    /// Debug-ish rendering with bare indices; the human-readable form with
    /// generator names lives in the render module.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| format!("({c})*[x{:?} y{:?}]", m.x_exp, m.y_word))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

// ---------------------------------------------------------------------------
// Reduction to normal form
// ---------------------------------------------------------------------------

/// A rewritable spot in a word: an odd letter directly before an even one,
/// two adjacent even letters out of order, or three adjacent non-decreasing
/// odd letters.
#[derive(Clone, Copy, Debug)]
enum Redex {
    /// position of the even letter in a (odd, even) pair
    SwapYX(usize),
    /// position of the left letter in a strictly decreasing even pair
    SortXX(usize),
    /// start of a non-decreasing window of three odd letters
    Rise(usize),
}

fn rise_at(word: &[Gen], j: usize) -> Option<(usize, usize, usize)> {
    if j + 2 >= word.len() {
        return None;
    }
    match (word[j], word[j + 1], word[j + 2]) {
        (Gen::Y(a), Gen::Y(b), Gen::Y(c)) if a <= b && b <= c => Some((a, b, c)),
        _ => None,
    }
}

/// The deterministic strategy: clear (odd, even) pairs left to right first,
/// then sort the even prefix, then reduce the leftmost odd rise.
fn leftmost_redex(word: &[Gen]) -> Option<Redex> {
    for j in 1..word.len() {
        if matches!(word[j], Gen::X(_)) && matches!(word[j - 1], Gen::Y(_)) {
            return Some(Redex::SwapYX(j));
        }
    }
    for j in 0..word.len().saturating_sub(1) {
        if let (Gen::X(s), Gen::X(t)) = (word[j], word[j + 1]) {
            if s > t {
                return Some(Redex::SortXX(j));
            }
        }
    }
    for j in 0..word.len() {
        if rise_at(word, j).is_some() {
            return Some(Redex::Rise(j));
        }
    }
    None
}

fn all_redexes(word: &[Gen]) -> Vec<Redex> {
    let mut out = Vec::new();
    for j in 1..word.len() {
        if matches!(word[j], Gen::X(_)) && matches!(word[j - 1], Gen::Y(_)) {
            out.push(Redex::SwapYX(j));
        }
    }
    for j in 0..word.len().saturating_sub(1) {
        if let (Gen::X(s), Gen::X(t)) = (word[j], word[j + 1]) {
            if s > t {
                out.push(Redex::SortXX(j));
            }
        }
    }
    for j in 0..word.len() {
        if rise_at(word, j).is_some() {
            out.push(Redex::Rise(j));
        }
    }
    out
}

/// Rewrite one redex, pushing the replacement terms onto the work list.
fn apply_redex(
    spec: &AlgebraSpec,
    redex: Redex,
    coeff: &CycQ,
    word: &[Gen],
    work: &mut Vec<(CycQ, Vec<Gen>)>,
) {
    match redex {
        // Y_a X_i = X_i Y_a - [X_i, Y_a]
        Redex::SwapYX(j) => {
            let (Gen::Y(a), Gen::X(i)) = (word[j - 1], word[j]) else {
                unreachable!("redex does not match word")
            };
            let mut swapped = word.to_vec();
            swapped.swap(j - 1, j);
            work.push((coeff.clone(), swapped));
            for (b, c) in spec.bracket_xy(i, a) {
                let mut shorter = word.to_vec();
                shorter[j - 1] = Gen::Y(b);
                shorter.remove(j);
                work.push((-&(coeff * &c), shorter));
            }
        }
        // X_s X_t = X_t X_s + [X_s, X_t] for s > t
        Redex::SortXX(j) => {
            let (Gen::X(s), Gen::X(t)) = (word[j], word[j + 1]) else {
                unreachable!("redex does not match word")
            };
            let mut swapped = word.to_vec();
            swapped.swap(j, j + 1);
            work.push((coeff.clone(), swapped));
            for (m, c) in spec.bracket_xx(s, t) {
                let mut shorter = word.to_vec();
                shorter[j] = Gen::X(m);
                shorter.remove(j + 1);
                work.push((coeff * &c, shorter));
            }
        }
        // A non-decreasing window (a, b, c) is traded for the other distinct
        // arrangements of its letters (coefficient -1) plus the ternary
        // bracket divided by the stabilizer size of the multiset: the
        // six-term symmetrized word relation, solved for the window.
        Redex::Rise(j) => {
            let (a, b, c) = rise_at(word, j).expect("redex does not match word");
            let letters = [a as u8, b as u8, c as u8];
            for repl in exterior::other_arrangements(&letters) {
                let mut w = word.to_vec();
                for (k, &l) in repl.iter().enumerate() {
                    w[j + k] = Gen::Y(l as usize);
                }
                work.push((-coeff, w));
            }
            let stabilizer: i64 = if a == c {
                6
            } else if a == b || b == c {
                2
            } else {
                1
            };
            let inv_stab = CycQ::rational(1, stabilizer);
            for (x, w) in spec.triple_y(a, b, c) {
                let mut shorter = word.to_vec();
                shorter[j] = Gen::X(x);
                shorter.remove(j + 2);
                shorter.remove(j + 1);
                work.push((&(coeff * &w) * &inv_stab, shorter));
            }
        }
    }
}

/// A word with no redex is in normal form: accumulate it, converting the
/// sorted even prefix to divided-power coordinates (a plain word equals the
/// divided monomial times the product of exponent factorials).
fn accumulate_normal(spec: &AlgebraSpec, coeff: CycQ, word: &[Gen], out: &mut Element) {
    let mut x_exp = vec![0u32; spec.dim_g0()];
    let mut y_word = Vec::new();
    for g in word {
        match g {
            Gen::X(i) => x_exp[*i] += 1,
            Gen::Y(a) => y_word.push(*a as u8 + 1),
        }
    }
    let m = PBWMonomial::new(x_exp, y_word);
    let scale = CycQ::from_rat(m.x_factorial());
    out.add_term(m, &coeff * &scale);
}

fn normalize_with<F>(word: &FreeWord, spec: &AlgebraSpec, mut pick: F) -> Element
where
    F: FnMut(usize) -> usize,
{
    // Termination: the rewrite never increases (odd letter count, number of
    // odd-before-even pairs, even-prefix inversions, reversed lex rank of
    // the odd word) lexicographically, and every branch strictly decreases
    // one coordinate while fixing the earlier ones.
    let mut out = Element::zero();
    let mut work: Vec<(CycQ, Vec<Gen>)> = vec![(CycQ::one(), word.0.clone())];
    while let Some((coeff, word)) = work.pop() {
        if coeff.is_zero() {
            continue;
        }
        let redexes = all_redexes(&word);
        if redexes.is_empty() {
            accumulate_normal(spec, coeff, &word, &mut out);
            continue;
        }
        let redex = redexes[pick(redexes.len())];
        apply_redex(spec, redex, &coeff, &word, &mut work);
    }
    out
}

/// The class of a free word in the enveloping algebra, in the normal-form
/// basis, computed with the deterministic leftmost strategy.
pub fn normalize(word: &FreeWord, spec: &AlgebraSpec) -> Element {
    let mut out = Element::zero();
    let mut work: Vec<(CycQ, Vec<Gen>)> = vec![(CycQ::one(), word.0.clone())];
    while let Some((coeff, word)) = work.pop() {
        if coeff.is_zero() {
            continue;
        }
        match leftmost_redex(&word) {
            None => accumulate_normal(spec, coeff, &word, &mut out),
            Some(redex) => apply_redex(spec, redex, &coeff, &word, &mut work),
        }
    }
    out
}

/// Like [`normalize`] but picking an arbitrary redex at each step, seeded;
/// agreement with the deterministic strategy is a tested confluence witness.
pub fn normalize_randomized(word: &FreeWord, spec: &AlgebraSpec, seed: u64) -> Element {
    let mut state = seed;
    normalize_with(word, spec, move |n| {
        (exterior::splitmix64(&mut state) as usize) % n
    })
}

/// Product of two normal-form elements: expand each monomial to its plain
/// word (dividing the factorials back out), concatenate, and normalize.
pub fn mul(u: &Element, v: &Element, spec: &AlgebraSpec) -> Element {
    let mut out = Element::zero();
    for (mu, cu) in u.terms() {
        let wu = mu.word();
        let su = mu.x_factorial();
        for (mv, cv) in v.terms() {
            let mut word = wu.0.clone();
            word.extend_from_slice(&mv.word().0);
            let scale = CycQ::from_rat((&su * mv.x_factorial()).recip());
            let coeff = &(cu * cv) * &scale;
            for (m, c) in normalize(&FreeWord(word), spec).into_terms() {
                out.add_term(m, &c * &coeff);
            }
        }
    }
    out
}

/// All normal-form monomials of total degree at most `degree`, sorted.
pub fn pbw_basis(spec: &AlgebraSpec, degree: usize) -> Vec<PBWMonomial> {
    let p = spec.dim_g0();
    let n = spec.dim_g1();
    let mut exps: Vec<(Vec<u32>, usize)> = Vec::new();
    fn fill(p: usize, budget: usize, cur: &mut Vec<u32>, used: usize, out: &mut Vec<(Vec<u32>, usize)>) {
        if cur.len() == p {
            out.push((cur.clone(), used));
            return;
        }
        for e in 0..=(budget - used) {
            cur.push(e as u32);
            fill(p, budget, cur, used + e, out);
            cur.pop();
        }
    }
    fill(p, degree, &mut Vec::new(), 0, &mut exps);

    let mut basis = Vec::new();
    for (x_exp, used) in exps {
        for k in 0..=(degree - used) {
            for seq in exterior::roby_basis(n, 3, k) {
                basis.push(PBWMonomial::new(x_exp.clone(), seq.0));
            }
        }
    }
    basis.sort();
    basis
}

// ---------------------------------------------------------------------------
// Elimination oracle
// ---------------------------------------------------------------------------

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("word degree {got} exceeds the oracle cap {cap}")]
    CapExceeded { got: usize, cap: usize },
}

/// Normal forms by linear algebra instead of rewriting: span every free word
/// of degree up to the cap, impose all in-degree embeddings of the defining
/// relations as rows, and run exact Gaussian elimination. Independent of the
/// rewrite engine down to the relation encoding (six-term symmetrized odd
/// relation rather than solved rise rules), so agreement is meaningful.
pub struct Oracle {
    cap: usize,
    dim_g0: usize,
    /// all words of degree <= cap, normal-form words first
    index: BTreeMap<Vec<u8>, usize>,
    words: Vec<Vec<u8>>,
    n_pbw: usize,
    /// echelon rows keyed by their leading (maximal) word index
    pivots: BTreeMap<usize, BTreeMap<usize, CycQ>>,
}

impl Oracle {
    pub fn build(spec: &AlgebraSpec, cap: usize) -> Oracle {
        let p = spec.dim_g0();
        let n = spec.dim_g1();
        let alphabet = p + n;

        // Enumerate and classify all words; letters 0..p are even, the rest odd.
        let mut all: Vec<Vec<u8>> = vec![Vec::new()];
        let mut layer: Vec<Vec<u8>> = vec![Vec::new()];
        for _ in 0..cap {
            let mut next = Vec::with_capacity(layer.len() * alphabet);
            for w in &layer {
                for l in 0..alphabet as u8 {
                    let mut w2 = w.clone();
                    w2.push(l);
                    next.push(w2);
                }
            }
            all.extend(next.iter().cloned());
            layer = next;
        }
        let is_pbw = |w: &[u8]| -> bool {
            let split = w.iter().position(|&l| l >= p as u8).unwrap_or(w.len());
            let (xs, ys) = w.split_at(split);
            xs.windows(2).all(|v| v[0] <= v[1])
                && ys.iter().all(|&l| l >= p as u8)
                && !exterior::has_rise(ys, 3)
        };
        let mut words: Vec<Vec<u8>> = all.iter().filter(|w| is_pbw(w)).cloned().collect();
        let n_pbw = words.len();
        words.extend(all.into_iter().filter(|w| !is_pbw(w)));
        let index: BTreeMap<Vec<u8>, usize> =
            words.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();

        let mut oracle = Oracle { cap, dim_g0: p, index, words, n_pbw, pivots: BTreeMap::new() };

        // Relation rows, embedded in every left/right word context that
        // stays within the cap.
        let insert_embedded = |oracle: &mut Oracle, body: &[(Vec<u8>, CycQ)], deg: usize| {
            if deg > cap {
                return;
            }
            let budget = cap - deg;
            for lu in 0..=budget {
                for lv in 0..=(budget - lu) {
                    for u in words_of_length(alphabet, lu) {
                        for v in words_of_length(alphabet, lv) {
                            let mut row: BTreeMap<usize, CycQ> = BTreeMap::new();
                            for (w, c) in body {
                                let mut full = u.clone();
                                full.extend_from_slice(w);
                                full.extend_from_slice(&v);
                                let idx = oracle.index[&full];
                                let entry = row.entry(idx).or_insert_with(CycQ::zero);
                                *entry += c;
                                if entry.is_zero() {
                                    row.remove(&idx);
                                }
                            }
                            oracle.insert_row(row);
                        }
                    }
                }
            }
        };

        // X_i X_j - X_j X_i - [X_i, X_j]
        for i in 0..p {
            for j in (i + 1)..p {
                let mut body = vec![
                    (vec![i as u8, j as u8], CycQ::one()),
                    (vec![j as u8, i as u8], -CycQ::one()),
                ];
                for (m, c) in spec.bracket_xx(i, j) {
                    body.push((vec![m as u8], -c));
                }
                insert_embedded(&mut oracle, &body, 2);
            }
        }
        // X_i Y_a - Y_a X_i - [X_i, Y_a]
        for i in 0..p {
            for a in 0..n {
                let mut body = vec![
                    (vec![i as u8, (p + a) as u8], CycQ::one()),
                    (vec![(p + a) as u8, i as u8], -CycQ::one()),
                ];
                for (b, c) in spec.bracket_xy(i, a) {
                    body.push((vec![(p + b) as u8], -c));
                }
                insert_embedded(&mut oracle, &body, 2);
            }
        }
        // sum over S3 of Y Y Y - {Y, Y, Y}
        for a in 0..n {
            for b in a..n {
                for c in b..n {
                    let mut body = Vec::new();
                    for (x, y, z) in
                        [(a, b, c), (a, c, b), (b, a, c), (b, c, a), (c, a, b), (c, b, a)]
                    {
                        body.push((
                            vec![(p + x) as u8, (p + y) as u8, (p + z) as u8],
                            CycQ::one(),
                        ));
                    }
                    for (m, w) in spec.triple_y(a, b, c) {
                        body.push((vec![m as u8], -w));
                    }
                    insert_embedded(&mut oracle, &body, 3);
                }
            }
        }

        // Completeness: the relations must reduce every word that is not in
        // normal form, i.e. the echelon has one pivot per non-normal word.
        // This is the linear-algebra witness of the normal-form theorem.
        assert_eq!(
            oracle.pivots.len(),
            oracle.words.len() - oracle.n_pbw,
            "elimination rank does not match the normal-form count"
        );
        oracle
    }

    /// Number of words of degree <= cap.
    pub fn word_count(&self) -> usize {
        self.words.len()
    }

    /// Number of those in normal form.
    pub fn pbw_count(&self) -> usize {
        self.n_pbw
    }

    fn insert_row(&mut self, mut row: BTreeMap<usize, CycQ>) {
        loop {
            let Some((&lead, _)) = row.last_key_value() else {
                return; // dependent relation
            };
            if let Some(pivot) = self.pivots.get(&lead) {
                let factor = row[&lead].clone();
                subtract_scaled(&mut row, pivot, &factor);
                continue;
            }
            assert!(
                lead >= self.n_pbw,
                "a relation collapsed normal-form words: basis words are dependent"
            );
            let inv = row[&lead].inv().expect("leading coefficient is nonzero");
            let normalized: BTreeMap<usize, CycQ> =
                row.iter().map(|(k, v)| (*k, v * &inv)).collect();
            self.pivots.insert(lead, normalized);
            return;
        }
    }

    /// Reduce a free word against the echelon and express it over the
    /// divided-power basis.
    pub fn reduce(&self, word: &FreeWord) -> Result<Element, OracleError> {
        if word.degree() > self.cap {
            return Err(OracleError::CapExceeded { got: word.degree(), cap: self.cap });
        }
        let p = self.dim_g0;
        let encoded: Vec<u8> = word
            .0
            .iter()
            .map(|g| match g {
                Gen::X(i) => *i as u8,
                Gen::Y(a) => (p + a) as u8,
            })
            .collect();
        let mut row: BTreeMap<usize, CycQ> = BTreeMap::new();
        row.insert(self.index[&encoded], CycQ::one());
        loop {
            let Some((&lead, _)) = row.last_key_value() else {
                break;
            };
            if lead < self.n_pbw {
                break;
            }
            let pivot = self
                .pivots
                .get(&lead)
                .expect("every non-normal word has a pivot row");
            let factor = row[&lead].clone();
            subtract_scaled(&mut row, pivot, &factor);
        }
        let mut out = Element::zero();
        for (idx, c) in row {
            let w = &self.words[idx];
            let split = w.iter().position(|&l| l >= p as u8).unwrap_or(w.len());
            let mut x_exp = vec![0u32; p];
            for &l in &w[..split] {
                x_exp[l as usize] += 1;
            }
            let y_word: Vec<u8> = w[split..].iter().map(|&l| l - p as u8 + 1).collect();
            let m = PBWMonomial::new(x_exp, y_word);
            let scale = CycQ::from_rat(m.x_factorial());
            out.add_term(m, &c * &scale);
        }
        Ok(out)
    }
}

fn words_of_length(alphabet: usize, len: usize) -> Vec<Vec<u8>> {
    let mut out: Vec<Vec<u8>> = vec![Vec::new()];
    for _ in 0..len {
        let mut next = Vec::with_capacity(out.len() * alphabet);
        for w in &out {
            for l in 0..alphabet as u8 {
                let mut w2 = w.clone();
                w2.push(l);
                next.push(w2);
            }
        }
        out = next;
    }
    out
}

fn subtract_scaled(
    row: &mut BTreeMap<usize, CycQ>,
    pivot: &BTreeMap<usize, CycQ>,
    factor: &CycQ,
) {
    for (k, v) in pivot {
        let entry = row.entry(*k).or_insert_with(CycQ::zero);
        *entry -= &(v * factor);
        if entry.is_zero() {
            row.remove(k);
        }
    }
}

/// One-shot oracle reduction (builds the echelon for the given cap).
pub fn oracle_reduce(
    word: &FreeWord,
    spec: &AlgebraSpec,
    degree_cap: usize,
) -> Result<Element, OracleError> {
    if word.degree() > degree_cap {
        return Err(OracleError::CapExceeded { got: word.degree(), cap: degree_cap });
    }
    Oracle::build(spec, degree_cap).reduce(word)
}
