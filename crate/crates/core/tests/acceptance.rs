//! Acceptance suite: one test per release criterion, each exact (tolerance
//! zero) and each ending in a single printed pass line.  Run with
//! `cargo test --test acceptance` (add `-- --nocapture` to see the lines).
//!
//! Golden values asserted here were cross-checked by two independent routes
//! wherever they are not forced by a definition: dimension counts against
//! brute-force enumeration and inclusion–exclusion, reductions against the
//! linear-algebra oracle, coproduct tables against coassociativity and the
//! multiplicative expansion of the generators' coproducts.

use std::time::Instant;

use trilie::dual::{DualContext, DualElement};
use trilie::enveloping::{
    mul, normalize, pbw_basis, Element, FreeWord, Gen, Oracle, PBWMonomial,
};
use trilie::exterior::roby_dim;
use trilie::hopf::{axiom_suite, check_antipode, check_primitive, coproduct, TensorElement};
use trilie::structure::{builtin, builtin_iso3, builtin_matrix_rep, check_representation};
use trilie::CycQ;

fn q() -> CycQ {
    CycQ::q()
}

fn q2() -> CycQ {
    CycQ::q_pow(2)
}

fn one() -> CycQ {
    CycQ::one()
}

/// Independent pseudo-random stream for the sampled checks (kept local so
/// the suite does not share a generator with the library under test).
fn splitmix(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

fn binom(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let mut acc: u128 = 1;
    for i in 0..k.min(n - k) {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Asserts that a tensor consists of exactly the given terms.
fn assert_tensor_is(
    got: &TensorElement,
    expected: &[(PBWMonomial, PBWMonomial, CycQ)],
    what: &str,
) {
    for (l, r, c) in expected {
        assert_eq!(
            got.coefficient(l, r),
            *c,
            "{what}: wrong coefficient on ({l:?} ⊗ {r:?})"
        );
    }
    assert_eq!(got.len(), expected.len(), "{what}: unexpected extra terms");
}

#[test]
fn criterion_01_roby_dimensions() {
    assert_eq!(
        (0..=6).map(|k| roby_dim(2, 3, k)).collect::<Vec<_>>(),
        vec![1, 2, 4, 4, 5, 4, 5],
        "rise-free word counts over a two-letter alphabet"
    );
    assert_eq!(roby_dim(4, 3, 3), 44);
    println!("criterion 1 (roby dimensions): PASS");
}

#[test]
fn criterion_02_roby_discrepancy_probe() {
    // Two oracles, neither of which goes through the library's counting
    // code path.  First: brute force over all 4^4 sequences with an inline
    // rise test.
    let mut brute: u128 = 0;
    for code in 0..256u32 {
        let s = [code % 4, (code / 4) % 4, (code / 16) % 4, code / 64];
        let rises = (0..2).any(|i| s[i] <= s[i + 1] && s[i + 1] <= s[i + 2]);
        if !rises {
            brute += 1;
        }
    }
    // Second: inclusion–exclusion on the two possible rise positions.  A
    // rise fixed at position i is a non-decreasing triple (C(6,3) = 20 of
    // them) with the remaining letter free; both positions rising is a
    // non-decreasing quadruple (C(7,4) = 35).
    let incl_excl: u128 = 256 - 80 - 80 + 35;

    assert_eq!(brute, 131);
    assert_eq!(incl_excl, 131);
    assert_eq!(roby_dim(4, 3, 4), brute);
    // Recorded expectation: an earlier hand count of this dimension gives
    // 256, which both independent oracles contradict; 131 is pinned.
    assert_ne!(roby_dim(4, 3, 4), 256);
    println!("criterion 2 (roby discrepancy probe): PASS (131, not 256)");
}

#[test]
fn criterion_03_reduction_golden() {
    // In iso3(1,3) the square of an odd generator times a second one is not
    // in normal form; the rewrite leaves two words and one bracket term:
    // V1·V1·V2 = −½P2 − V(121) − V(211).
    let spec = builtin_iso3(4);
    let word = FreeWord(vec![Gen::Y(1), Gen::Y(1), Gen::Y(2)]);
    let got = normalize(&word, &spec);

    let p2 = {
        let mut e = vec![0u32; 10];
        e[8] = 1; // P2 sits after the six L's and P0, P1
        PBWMonomial::new(e, vec![])
    };
    let v121 = PBWMonomial::new(vec![0; 10], vec![2, 3, 2]);
    let v211 = PBWMonomial::new(vec![0; 10], vec![3, 2, 2]);

    assert_eq!(got.coefficient(&p2), CycQ::rational(-1, 2));
    assert_eq!(got.coefficient(&v121), CycQ::from_int(-1));
    assert_eq!(got.coefficient(&v211), CycQ::from_int(-1));
    assert_eq!(got.terms().count(), 3);
    println!("criterion 3 (reduction golden): PASS");
}

#[test]
fn criterion_04_coproduct_goldens() {
    let spec = builtin_iso3(4);
    let dim0 = 10usize;
    let unit = PBWMonomial::new(vec![0; dim0], vec![]);
    let y = |w: &[u8]| PBWMonomial::new(vec![0; dim0], w.to_vec());
    let p = |mu: usize| {
        let mut e = vec![0u32; dim0];
        e[6 + mu] = 1;
        PBWMonomial::new(e, vec![])
    };
    let delta = |w: &[u8]| coproduct(&Element::monomial(y(w), one()), &spec);

    // Δ(V11) = V11⊗1 + (1+q)V1⊗V1 + 1⊗V11.
    assert_tensor_is(
        &delta(&[2, 2]),
        &[
            (y(&[2, 2]), unit.clone(), one()),
            (y(&[2]), y(&[2]), &one() + &q()),
            (unit.clone(), y(&[2, 2]), one()),
        ],
        "Δ(V11)",
    );

    // Δ(V12) = V12⊗1 + V1⊗V2 + qV2⊗V1 + 1⊗V12.
    assert_tensor_is(
        &delta(&[2, 3]),
        &[
            (y(&[2, 3]), unit.clone(), one()),
            (y(&[2]), y(&[3]), one()),
            (y(&[3]), y(&[2]), q()),
            (unit.clone(), y(&[2, 3]), one()),
        ],
        "Δ(V12)",
    );

    // Δ(V221): six terms.  The (q+q²) coefficient lands on V21⊗V2; the
    // right-split coefficients are forced by multiplicativity (expanding
    // (V2⊗1 + 1⊗V2)²(V1⊗1 + 1⊗V1) with the grade twist) and confirmed by
    // coassociativity, which pins (1+q) on V2⊗V21 and q² on V1⊗V22.
    assert_tensor_is(
        &delta(&[3, 3, 2]),
        &[
            (y(&[3, 3, 2]), unit.clone(), one()),
            (y(&[3, 3]), y(&[2]), one()),
            (y(&[3, 2]), y(&[3]), &q() + &q2()),
            (y(&[3]), y(&[3, 2]), &one() + &q()),
            (y(&[2]), y(&[3, 3]), q2()),
            (unit.clone(), y(&[3, 3, 2]), one()),
        ],
        "Δ(V221)",
    );

    // Δ(V1212): the full nineteen-term table, including the bracket
    // correction block −½(qV2⊗P2 + q²V1⊗P1 + qP1⊗V1 + q²P2⊗V2) that rule 3
    // injects when a middle split re-orders the odd letters.
    let neg_half = CycQ::rational(-1, 2);
    let started = Instant::now();
    let got = delta(&[2, 3, 2, 3]);
    let elapsed = started.elapsed();

    assert_tensor_is(
        &got,
        &[
            (y(&[2, 3, 2, 3]), unit.clone(), one()),
            (unit.clone(), y(&[2, 3, 2, 3]), one()),
            // one odd letter on the left
            (y(&[2]), y(&[3, 2, 3]), &one() - &q2()),
            (y(&[3]), y(&[2, 3, 2]), &one() - &q()),
            (y(&[3]), y(&[3, 2, 2]), &CycQ::zero() - &q()),
            (y(&[2]), y(&[3, 3, 2]), &CycQ::zero() - &q2()),
            // two and two
            (y(&[2, 3]), y(&[2, 3]), &one() + &q()),
            (y(&[2, 2]), y(&[3, 3]), q()),
            (y(&[2, 3]), y(&[3, 2]), q2()),
            (y(&[3, 2]), y(&[2, 3]), q2()),
            (y(&[3, 3]), y(&[2, 2]), one()),
            // one odd letter on the right
            (y(&[2, 3, 2]), y(&[3]), &one() - &q2()),
            (y(&[3, 2, 3]), y(&[2]), &one() - &q()),
            (y(&[3, 3, 2]), y(&[2]), &CycQ::zero() - &q()),
            (y(&[3, 2, 2]), y(&[3]), &CycQ::zero() - &q2()),
            // bracket correction block
            (y(&[3]), p(2), &neg_half * &q()),
            (y(&[2]), p(1), &neg_half * &q2()),
            (p(1), y(&[2]), &neg_half * &q()),
            (p(2), y(&[3]), &neg_half * &q2()),
        ],
        "Δ(V1212)",
    );
    assert!(
        elapsed.as_secs_f64() < 1.0,
        "Δ(V1212) took {elapsed:?}, budget is 1 s"
    );
    println!(
        "criterion 4 (coproduct goldens): PASS (Δ(V1212) in {:.0} ms)",
        elapsed.as_secs_f64() * 1e3
    );
}

#[test]
fn criterion_05_hopf_axiom_suite() {
    let spec = builtin_iso3(3);
    let started = Instant::now();
    let outcomes = axiom_suite(&spec, 3, 200, 0x5eed_2026);
    let elapsed = started.elapsed();

    assert_eq!(outcomes.len(), 5);
    for o in &outcomes {
        assert!(o.checked > 0, "{} ran no instances", o.name);
        assert!(
            o.passed(),
            "{} failed on {} of {} instances; first: {:?}",
            o.name,
            o.failures.len(),
            o.checked,
            o.failures.first()
        );
    }
    assert!(
        elapsed.as_secs_f64() < 60.0,
        "axiom suite took {elapsed:?}, budget is 60 s"
    );
    println!(
        "criterion 5 (hopf axiom suite): PASS ({} checks in {:.1} s)",
        outcomes.len(),
        elapsed.as_secs_f64()
    );
}

#[test]
fn criterion_06_primitivity() {
    let spec = builtin_iso3(3);
    let dim0 = 6usize;
    let dim1 = 3usize;
    let gen = |g: Gen| Element::generator(&spec, g);

    // Commutators [X, Y] for every even/odd generator pair.
    let mut nonzero = 0usize;
    for i in 0..dim0 {
        for a in 0..dim1 {
            let x = gen(Gen::X(i));
            let y = gen(Gen::Y(a));
            let comm = &mul(&x, &y, &spec) - &mul(&y, &x, &spec);
            if !comm.is_zero() {
                nonzero += 1;
            }
            assert!(
                check_primitive(&comm, &spec),
                "[X{i}, Y{a}] is not primitive"
            );
        }
    }
    assert!(nonzero > 0, "every commutator vanished; the check is vacuous");

    // Symmetrized triple products over every multiset of odd generators.
    nonzero = 0;
    for a in 0..dim1 {
        for b in a..dim1 {
            for c in b..dim1 {
                let mut sum = Element::scalar(&spec, CycQ::zero());
                for (p0, p1, p2) in [
                    (a, b, c),
                    (a, c, b),
                    (b, a, c),
                    (b, c, a),
                    (c, a, b),
                    (c, b, a),
                ] {
                    let prod = mul(
                        &mul(&gen(Gen::Y(p0)), &gen(Gen::Y(p1)), &spec),
                        &gen(Gen::Y(p2)),
                        &spec,
                    );
                    sum = &sum + &prod;
                }
                if !sum.is_zero() {
                    nonzero += 1;
                }
                assert!(
                    check_primitive(&sum, &spec),
                    "{{Y{a}, Y{b}, Y{c}}} is not primitive"
                );
            }
        }
    }
    assert!(nonzero > 0, "every triple vanished; the check is vacuous");
    println!("criterion 6 (primitivity): PASS");
}

#[test]
fn criterion_07_dual_product_tables() {
    let spec = builtin_iso3(3);
    let dim0 = 6usize;
    let letters = 3usize;

    for cutoff in [4u32, 5] {
        let ctx = DualContext::new(&spec, cutoff);
        let word_m = |w: &[usize]| {
            PBWMonomial::new(
                vec![0; dim0],
                w.iter().map(|&a| (a + 1) as u8).collect(),
            )
        };
        let thw = |w: &[usize]| DualElement::psi(word_m(w));
        let th = |a: usize| DualElement::theta(&spec, a);
        let m2 = |f: &DualElement, g: &DualElement| ctx.mul(f, g);
        let m3 = |f: &DualElement, g: &DualElement, h: &DualElement| {
            ctx.mul(&ctx.mul(f, g), h)
        };
        // Linear combination of word functionals, truncated to the context.
        let comb = |terms: &[(&[usize], CycQ)]| -> DualElement {
            let mut acc = DualElement::zero(u32::MAX);
            for (w, c) in terms {
                acc = &acc + &thw(w).scaled(c);
            }
            acc.truncated(cutoff)
        };
        // A length-three word has a rise exactly when it is non-decreasing.
        let rises = |w: &[usize]| w[0] <= w[1] && w[1] <= w[2];

        // Pair products: M(θ^a, θ^b) = θ^{ab} + qθ^{ba} for every ordered
        // pair, collapsing to (1+q)θ^{aa} on the diagonal.
        for a in 0..letters {
            for b in 0..letters {
                assert_eq!(
                    m2(&th(a), &th(b)),
                    comb(&[(&[a, b], one()), (&[b, a], q())]),
                    "M(θ{a}, θ{b}) at cutoff {cutoff}"
                );
            }
        }

        // Squares annihilate: M(θ^a, θ^{aa}) = 0.
        for a in 0..letters {
            assert!(
                m2(&th(a), &thw(&[a, a])).is_zero(),
                "M(θ{a}, θ{a}{a}) should vanish at cutoff {cutoff}"
            );
        }

        // The two-equal-index identities, for every a < b.
        for a in 0..letters {
            for b in (a + 1)..letters {
                assert_eq!(
                    m2(&th(a), &thw(&[a, b])),
                    comb(&[(&[a, b, a], q2())]),
                    "M(θ{a}, θ{a}{b}) at cutoff {cutoff}"
                );
                assert_eq!(
                    m2(&th(a), &thw(&[b, a])),
                    comb(&[(&[a, b, a], one()), (&[b, a, a], CycQ::from_int(-1))]),
                    "M(θ{a}, θ{b}{a}) at cutoff {cutoff}"
                );
                assert_eq!(
                    m2(&th(b), &thw(&[a, a])),
                    comb(&[(&[b, a, a], one()), (&[a, b, a], q())]),
                    "M(θ{b}, θ{a}{a}) at cutoff {cutoff}"
                );
            }
        }

        // The general letter-times-pair rule: M(θ^l, θ^{mn}) is
        // θ^{lmn} + qθ^{mln} + q²θ^{mnl} with rising words dropped (equal
        // surviving words merge their coefficients).  Checked on all 27
        // combinations; the four distinct-index case rows below are the
        // named instances.
        for l in 0..letters {
            for m in 0..letters {
                for n in 0..letters {
                    let mut expected: Vec<(&[usize], CycQ)> = Vec::new();
                    let arrangements =
                        [([l, m, n], one()), ([m, l, n], q()), ([m, n, l], q2())];
                    let kept: Vec<(Vec<usize>, CycQ)> = arrangements
                        .iter()
                        .filter(|(w, _)| !rises(w))
                        .map(|(w, c)| (w.to_vec(), c.clone()))
                        .collect();
                    for (w, c) in &kept {
                        expected.push((w.as_slice(), c.clone()));
                    }
                    assert_eq!(
                        m2(&th(l), &thw(&[m, n])),
                        comb(&expected),
                        "M(θ{l}, θ{m}{n}) at cutoff {cutoff}"
                    );
                }
            }
        }

        // The four case rows, one explicit instance each (j1 j2 j3 all
        // distinct; which arrangement rises decides the surviving terms).
        assert_eq!(
            m2(&th(0), &thw(&[2, 1])),
            comb(&[(&[0, 2, 1], one()), (&[2, 0, 1], q()), (&[2, 1, 0], q2())]),
            "all-kept case row at cutoff {cutoff}"
        );
        assert_eq!(
            m2(&th(0), &thw(&[1, 2])),
            comb(&[(&[1, 0, 2], q()), (&[1, 2, 0], q2())]),
            "first-arrangement-rises case row at cutoff {cutoff}"
        );
        assert_eq!(
            m2(&th(1), &thw(&[0, 2])),
            comb(&[(&[1, 0, 2], one()), (&[0, 2, 1], q2())]),
            "second-arrangement-rises case row at cutoff {cutoff}"
        );
        assert_eq!(
            m2(&th(2), &thw(&[0, 1])),
            comb(&[(&[2, 0, 1], one()), (&[0, 2, 1], q())]),
            "third-arrangement-rises case row at cutoff {cutoff}"
        );

        // Triple products of single letters: the full 27-row table.
        for a in 0..letters {
            assert!(
                m3(&th(a), &th(a), &th(a)).is_zero(),
                "M(θ{a}, θ{a}, θ{a}) should vanish at cutoff {cutoff}"
            );
        }
        for a in 0..letters {
            for b in (a + 1)..letters {
                assert_eq!(
                    m3(&th(a), &th(a), &th(b)),
                    comb(&[
                        (&[a, b, a], CycQ::from_int(-1)),
                        (&[b, a, a], &CycQ::zero() - &q()),
                    ]),
                    "M(θ{a}, θ{a}, θ{b}) at cutoff {cutoff}"
                );
                assert_eq!(
                    m3(&th(a), &th(b), &th(a)),
                    comb(&[
                        (&[a, b, a], CycQ::from_int(2)),
                        (&[b, a, a], CycQ::from_int(-1)),
                    ]),
                    "M(θ{a}, θ{b}, θ{a}) at cutoff {cutoff}"
                );
                assert_eq!(
                    m3(&th(b), &th(a), &th(a)),
                    comb(&[
                        (&[a, b, a], CycQ::from_int(-1)),
                        (&[b, a, a], &CycQ::zero() - &q2()),
                    ]),
                    "M(θ{b}, θ{a}, θ{a}) at cutoff {cutoff}"
                );
            }
        }
        // All indices distinct: six rows over the five rise-free words.
        {
            let (a, b, c) = (0usize, 1usize, 2usize);
            let cols: [&[usize]; 5] =
                [&[b, c, a], &[c, a, b], &[a, c, b], &[b, a, c], &[c, b, a]];
            let rows: [((usize, usize, usize), [CycQ; 5]); 6] = [
                ((a, b, c), [q2(), q2(), q(), q(), one()]),
                ((b, c, a), [one(), q2(), one(), q(), q()]),
                ((c, a, b), [q2(), one(), q(), one(), q()]),
                ((a, c, b), [one(), q(), one(), q2(), q2()]),
                ((b, a, c), [q(), one(), q2(), one(), q2()]),
                ((c, b, a), [q(), q(), q2(), q2(), one()]),
            ];
            for ((t0, t1, t2), coeffs) in &rows {
                let expected: Vec<(&[usize], CycQ)> = cols
                    .iter()
                    .zip(coeffs)
                    .map(|(w, c)| (*w, c.clone()))
                    .collect();
                assert_eq!(
                    m3(&th(*t0), &th(*t1), &th(*t2)),
                    comb(&expected),
                    "M(θ{t0}, θ{t1}, θ{t2}) at cutoff {cutoff}"
                );
            }
        }

        // Symmetrized triple sums vanish for every multiset of letters.
        for a in 0..letters {
            for b in a..letters {
                for c in b..letters {
                    let mut arrangements = vec![
                        (a, b, c),
                        (a, c, b),
                        (b, a, c),
                        (b, c, a),
                        (c, a, b),
                        (c, b, a),
                    ];
                    arrangements.sort();
                    arrangements.dedup();
                    let mut sum = DualElement::zero(cutoff);
                    for (t0, t1, t2) in arrangements {
                        sum = &sum + &m3(&th(t0), &th(t1), &th(t2));
                    }
                    assert!(
                        sum.is_zero(),
                        "symmetrized θ{a}θ{b}θ{c} sum nonzero at cutoff {cutoff}"
                    );
                }
            }
        }

        // Even functionals commute and compose into multiset labels with
        // coefficient one (repeats land on divided-power labels).
        let al = |i: usize| DualElement::alpha(&spec, i);
        let al_multi = |idx: &[usize]| {
            let mut e = vec![0u32; dim0];
            for &i in idx {
                e[i] += 1;
            }
            DualElement::psi(PBWMonomial::new(e, vec![])).truncated(cutoff)
        };
        for i in 0..dim0 {
            for j in 0..dim0 {
                assert_eq!(
                    m2(&al(i), &al(j)),
                    al_multi(&[i, j]),
                    "M(α{i}, α{j}) at cutoff {cutoff}"
                );
            }
        }
        for i in 0..dim0 {
            for j in i..dim0 {
                for k in j..dim0 {
                    let expected = al_multi(&[i, j, k]);
                    assert_eq!(
                        m3(&al(i), &al(j), &al(k)),
                        expected,
                        "M(α{i}, α{j}, α{k}) at cutoff {cutoff}"
                    );
                    assert_eq!(
                        m3(&al(k), &al(j), &al(i)),
                        expected,
                        "M(α{k}, α{j}, α{i}) at cutoff {cutoff}"
                    );
                }
            }
        }
    }
    println!("criterion 7 (dual product tables): PASS (cutoffs 4 and 5)");
}

#[test]
fn criterion_08_oracle_equivalence() {
    let started = Instant::now();

    // Exhaustive: every word of length ≤ 4 over the five generators of
    // iso3(1,1), reduced by the rewrite engine and by Gaussian elimination
    // on the relation span.
    let spec = builtin_iso3(2);
    let oracle = Oracle::build(&spec, 4);
    let letters = 5usize; // 3 even + 2 odd
    let gen_at = |i: usize| if i < 3 { Gen::X(i) } else { Gen::Y(i - 3) };
    let mut exhaustive = 0usize;
    for len in 0..=4usize {
        let count = letters.pow(len as u32);
        for mut code in 0..count {
            let mut gens = Vec::with_capacity(len);
            for _ in 0..len {
                gens.push(gen_at(code % letters));
                code /= letters;
            }
            let word = FreeWord(gens);
            assert_eq!(
                normalize(&word, &spec),
                oracle.reduce(&word).expect("word within oracle cap"),
                "mismatch on {word:?}"
            );
            exhaustive += 1;
        }
    }
    assert_eq!(exhaustive, 781);

    // Sampled: 500 random words of length ≤ 4 over the nine generators of
    // iso3(1,2).
    let spec = builtin_iso3(3);
    let oracle = Oracle::build(&spec, 4);
    let letters = 9usize;
    let gen_at = |i: usize| if i < 6 { Gen::X(i) } else { Gen::Y(i - 6) };
    let mut state = 0x0a75_5eed_u64;
    for _ in 0..500 {
        let len = (splitmix(&mut state) % 5) as usize;
        let gens: Vec<Gen> = (0..len)
            .map(|_| gen_at(splitmix(&mut state) as usize % letters))
            .collect();
        let word = FreeWord(gens);
        assert_eq!(
            normalize(&word, &spec),
            oracle.reduce(&word).expect("word within oracle cap"),
            "mismatch on {word:?}"
        );
    }

    let elapsed = started.elapsed();
    assert!(
        elapsed.as_secs_f64() < 300.0,
        "oracle comparison took {elapsed:?}, budget is 5 min"
    );
    println!(
        "criterion 8 (oracle equivalence): PASS (1281 words in {:.1} s)",
        elapsed.as_secs_f64()
    );
}

#[test]
fn criterion_09_validation() {
    for name in [
        "iso3_1_1",
        "iso3_1_2",
        "iso3_1_3",
        "killing_rank1",
        "matrix_1_1_1",
    ] {
        let spec = builtin(name).expect("registered builtin");
        let report = spec.validate();
        assert!(
            report.passed(),
            "{name} failed validation: {:?}",
            report.checks.iter().find(|c| !c.passed)
        );
    }

    // Matrix-model specs come with their defining representation; both the
    // axioms and the representation equations must hold for every shape.
    for m1 in 1..=3usize {
        for m2 in 1..=3usize {
            for m3 in 1..=3usize {
                let (spec, rep) = builtin_matrix_rep(m1, m2, m3);
                assert!(spec.validate().passed(), "matrix_{m1}_{m2}_{m3} axioms");
                let report = check_representation(&spec, &rep)
                    .expect("representation matches the spec's generators");
                assert!(
                    report.passed(),
                    "matrix_{m1}_{m2}_{m3} representation: {:?}",
                    report.checks.iter().find(|c| !c.passed)
                );
            }
        }
    }

    // A single perturbed structure constant must be caught by the
    // fundamental-identity check: add L01 to {V0, V0, V0} (= 3P0) in
    // iso3(1,2).  Then Σ_j [{V0,V0,V0 without j-th}, V0] picks up
    // 4[L01, V0] = −4V1 ≠ 0.
    let mut spec = builtin_iso3(3);
    spec.set_triple_y(0, 0, 0, vec![(3, CycQ::from_int(3)), (0, CycQ::one())])
        .expect("indices are in range");
    let report = spec.validate();
    assert!(!report.passed(), "perturbation went unnoticed");
    let fi = report
        .check("fundamental-identity")
        .expect("check is always run");
    assert!(!fi.passed, "perturbation missed by the fundamental identity");
    assert!(
        fi.counterexample.is_some(),
        "failure reported without a witness"
    );
    println!("criterion 9 (validation): PASS");
}

#[test]
fn criterion_10_pbw_dimension_identity() {
    // The normal-form count filtered by total degree must match the
    // convolution of commutative monomial counts over the six even
    // generators with rise-free word counts over the three odd ones —
    // the dimension signature of an even-polynomial ⊗ odd-word basis.
    let spec = builtin_iso3(3);
    for degree in 0..=5usize {
        let mut expected: u128 = 0;
        for n in 0..=degree {
            for j in 0..=n {
                let k = n - j;
                expected += binom((5 + j) as u64, 5) * roby_dim(3, 3, k);
            }
        }
        let got = pbw_basis(&spec, degree).len() as u128;
        assert_eq!(got, expected, "filtered dimension at degree {degree}");
    }
    println!("criterion 10 (pbw dimension identity): PASS");
}

#[test]
fn criterion_11_antipode_probe() {
    let outcome = check_antipode(&builtin_iso3(3), 3);
    assert_eq!(outcome.checked, 248);
    if outcome.passed() {
        println!(
            "criterion 11 (antipode probe): PASS ({} monomials)",
            outcome.checked
        );
    } else {
        // The probe is allowed to report failures only if it isolates
        // them: every failure must name its monomial and its residual.
        for f in &outcome.failures {
            assert!(
                !f.subject.is_empty() && !f.residual.is_empty(),
                "failure reported without isolation: {f:?}"
            );
        }
        println!(
            "criterion 11 (antipode probe): PASS with {} isolated failures of {}",
            outcome.failures.len(),
            outcome.checked
        );
    }
}
