//! The q-twisted Hopf structure on the enveloping algebra: the tensor square
//! with multiplication twisted by a cube root of unity on the crossed legs,
//! the coproduct that makes every generator primitive, the counit, and the
//! graded antipode — together with checkers for the axioms they are supposed
//! to satisfy. The checkers return reports rather than asserting, so a failed
//! probe is data, not a crash.

use crate::coeff::CycQ;
use crate::enveloping::{mul, normalize, pbw_basis, Element, FreeWord, Gen, PBWMonomial};
use crate::exterior::splitmix64;
use crate::structure::AlgebraSpec;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

/// An element of the twisted tensor square: a linear combination of leg pairs,
/// each leg a normal-form monomial. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct TensorElement {
    terms: BTreeMap<(PBWMonomial, PBWMonomial), CycQ>,
}

impl TensorElement {
    pub fn zero() -> Self {
        TensorElement::default()
    }

    pub fn unit(spec: &AlgebraSpec) -> Self {
        let one = PBWMonomial::unit(spec.dim_g0());
        TensorElement::monomial(one.clone(), one, CycQ::one())
    }

    pub fn monomial(left: PBWMonomial, right: PBWMonomial, c: CycQ) -> Self {
        let mut t = TensorElement::zero();
        t.add_term(left, right, c);
        t
    }

    pub fn add_term(&mut self, left: PBWMonomial, right: PBWMonomial, c: CycQ) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry((left, right)).or_insert_with(CycQ::zero);
        *entry += &c;
        if entry.is_zero() {
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

    pub fn terms(&self) -> impl Iterator<Item = (&(PBWMonomial, PBWMonomial), &CycQ)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, left: &PBWMonomial, right: &PBWMonomial) -> CycQ {
        self.terms
            .get(&(left.clone(), right.clone()))
            .cloned()
            .unwrap_or_else(CycQ::zero)
    }

    pub fn scaled(&self, c: &CycQ) -> TensorElement {
        let mut out = TensorElement::zero();
        if c.is_zero() {
            return out;
        }
        for ((l, r), v) in &self.terms {
            out.add_term(l.clone(), r.clone(), v * c);
        }
        out
    }
}

impl Add for &TensorElement {
    type Output = TensorElement;
    fn add(self, rhs: &TensorElement) -> TensorElement {
        let mut out = self.clone();
        for ((l, r), c) in &rhs.terms {
            out.add_term(l.clone(), r.clone(), c.clone());
        }
        out
    }
}

impl Sub for &TensorElement {
    type Output = TensorElement;
    fn sub(self, rhs: &TensorElement) -> TensorElement {
        let mut out = self.clone();
        for ((l, r), c) in &rhs.terms {
            out.add_term(l.clone(), r.clone(), -c);
        }
        out
    }
}

impl Neg for &TensorElement {
    type Output = TensorElement;
    fn neg(self) -> TensorElement {
        let mut out = TensorElement::zero();
        for ((l, r), c) in &self.terms {
            out.add_term(l.clone(), r.clone(), -c);
        }
        out
    }
}

/// The plain (untwisted) outer product u ⊗ v.
pub fn tensor(u: &Element, v: &Element) -> TensorElement {
    let mut out = TensorElement::zero();
    for (mu, cu) in u.terms() {
        for (mv, cv) in v.terms() {
            out.add_term(mu.clone(), mv.clone(), cu * cv);
        }
    }
    out
}

fn mono_mul(a: &PBWMonomial, b: &PBWMonomial, spec: &AlgebraSpec) -> Element {
    mul(
        &Element::monomial(a.clone(), CycQ::one()),
        &Element::monomial(b.clone(), CycQ::one()),
        spec,
    )
}

/// The twisted product (a⊗c)•(b⊗d) = q^{|b||c|} ab ⊗ cd, extended
/// bilinearly; each leg product is re-normalized.
pub fn twisted_mul(s: &TensorElement, t: &TensorElement, spec: &AlgebraSpec) -> TensorElement {
    let mut out = TensorElement::zero();
    for ((a, c), cs) in &s.terms {
        for ((b, d), ct) in &t.terms {
            let phase = CycQ::q_pow(b.grade() as i64 * c.grade() as i64);
            let coeff = &(cs * ct) * &phase;
            let left = mono_mul(a, b, spec);
            let right = mono_mul(c, d, spec);
            for (ml, cl) in left.terms() {
                for (mr, cr) in right.terms() {
                    out.add_term(ml.clone(), mr.clone(), &(&coeff * cl) * cr);
                }
            }
        }
    }
    out
}

fn primitive_tensor(spec: &AlgebraSpec, g: Gen) -> TensorElement {
    let one = PBWMonomial::unit(spec.dim_g0());
    let gm = PBWMonomial::generator(spec.dim_g0(), g);
    let mut t = TensorElement::monomial(gm.clone(), one.clone(), CycQ::one());
    t.add_term(one, gm, CycQ::one());
    t
}

/// The coproduct: every generator maps to g⊗1 + 1⊗g, extended as an algebra
/// morphism into the twisted tensor square. A divided power expands to its
/// plain word and the factorial is divided back out, so the result is exact.
pub fn coproduct(u: &Element, spec: &AlgebraSpec) -> TensorElement {
    let one = PBWMonomial::unit(spec.dim_g0());
    let mut out = TensorElement::zero();
    for (m, c) in u.terms() {
        let scale = CycQ::from_rat(m.x_factorial().recip());
        let mut acc = TensorElement::monomial(one.clone(), one.clone(), c * &scale);
        for g in m.word().0 {
            acc = twisted_mul(&acc, &primitive_tensor(spec, g), spec);
        }
        for ((l, r), v) in acc.terms {
            out.add_term(l, r, v);
        }
    }
    out
}

/// The counit: 1 on the unit monomial, 0 on every generator.
pub fn counit(u: &Element) -> CycQ {
    u.unit_coefficient()
}

/// The antipode: −1 on every generator, extended as the graded
/// anti-homomorphism S(ab) = q^{|a||b|} S(b) S(a). On a word of k letters,
/// ny of them odd, this reverses the word and multiplies by
/// (−1)^k · q^{ny(ny−1)/2}.
pub fn antipode(u: &Element, spec: &AlgebraSpec) -> Element {
    let mut out = Element::zero();
    for (m, c) in u.terms() {
        let w = m.word();
        let k = w.0.len();
        let ny = m.y_word().len();
        let mut phase = CycQ::q_pow((ny * ny.saturating_sub(1) / 2) as i64);
        if k % 2 == 1 {
            phase = -&phase;
        }
        let scale = CycQ::from_rat(m.x_factorial().recip());
        let coeff = &(c * &phase) * &scale;
        let reversed = FreeWord(w.0.into_iter().rev().collect());
        for (m2, c2) in normalize(&reversed, spec).into_terms() {
            out.add_term(m2, &c2 * &coeff);
        }
    }
    out
}

/// True iff Δ(u) = u⊗1 + 1⊗u.
pub fn check_primitive(u: &Element, spec: &AlgebraSpec) -> bool {
    let unit = Element::unit(spec);
    let expected = &tensor(u, &unit) + &tensor(&unit, u);
    coproduct(u, spec) == expected
}

// ---------------------------------------------------------------------------
// Axiom checkers
// ---------------------------------------------------------------------------

/// One failed instance inside a check: what was being tested and what the
/// nonzero residual was.
#[derive(Clone, Debug)]
pub struct CheckFailure {
    pub subject: String,
    pub residual: String,
}

/// Outcome of one named check over a family of instances.
#[derive(Clone, Debug)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub checked: usize,
    pub failures: Vec<CheckFailure>,
}

impl CheckOutcome {
    fn new(name: &'static str) -> Self {
        CheckOutcome { name, checked: 0, failures: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            write!(f, "{}: pass ({} checked)", self.name, self.checked)
        } else {
            let first = &self.failures[0];
            write!(
                f,
                "{}: FAIL ({} of {}); first: {} -> {}",
                self.name,
                self.failures.len(),
                self.checked,
                first.subject,
                first.residual
            )
        }
    }
}

/// A linear combination of leg triples, used only to state coassociativity.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Tensor3 {
    terms: BTreeMap<(PBWMonomial, PBWMonomial, PBWMonomial), CycQ>,
}

impl Tensor3 {
    fn add_term(&mut self, key: (PBWMonomial, PBWMonomial, PBWMonomial), c: CycQ) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(key).or_insert_with(CycQ::zero);
        *entry += &c;
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(
        &self,
    ) -> impl Iterator<Item = (&(PBWMonomial, PBWMonomial, PBWMonomial), &CycQ)> {
        self.terms.iter()
    }

    fn sub(&self, rhs: &Tensor3) -> Tensor3 {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(k.clone(), -c);
        }
        out
    }

    fn label(&self, spec: &AlgebraSpec) -> String {
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((a, b, c), v)| {
                format!(
                    "({v})*({} \u{2297} {} \u{2297} {})",
                    a.label(spec),
                    b.label(spec),
                    c.label(spec)
                )
            })
            .collect();
        parts.join(" + ")
    }
}

fn coproduct_leg(
    t: &TensorElement,
    spec: &AlgebraSpec,
    left_leg: bool,
) -> Tensor3 {
    let mut out = Tensor3::default();
    for ((a, b), c) in &t.terms {
        let split = if left_leg { a } else { b };
        let inner = coproduct(&Element::monomial(split.clone(), CycQ::one()), spec);
        for ((u, v), w) in inner.terms() {
            let key = if left_leg {
                (u.clone(), v.clone(), b.clone())
            } else {
                (a.clone(), u.clone(), v.clone())
            };
            out.add_term(key, c * w);
        }
    }
    out
}

/// (Δ⊗id)∘Δ = (id⊗Δ)∘Δ on every normal-form monomial of degree ≤ `degree`.
pub fn check_coassoc(spec: &AlgebraSpec, degree: usize) -> CheckOutcome {
    let mut outcome = CheckOutcome::new("coassociativity");
    for m in pbw_basis(spec, degree) {
        outcome.checked += 1;
        let delta = coproduct(&Element::monomial(m.clone(), CycQ::one()), spec);
        let first = coproduct_leg(&delta, spec, true);
        let second = coproduct_leg(&delta, spec, false);
        let diff = first.sub(&second);
        if !diff.is_zero() {
            outcome.failures.push(CheckFailure {
                subject: m.label(spec),
                residual: diff.label(spec),
            });
        }
    }
    outcome
}

fn counit_contraction(t: &TensorElement, left_leg: bool) -> Element {
    let mut out = Element::zero();
    for ((a, b), c) in &t.terms {
        let (collapsed, kept) = if left_leg { (a, b) } else { (b, a) };
        if collapsed.is_unit() {
            out.add_term(kept.clone(), c.clone());
        }
    }
    out
}

/// (ε⊗id)∘Δ = id, on every normal-form monomial of degree ≤ `degree`.
pub fn check_counit_left(spec: &AlgebraSpec, degree: usize) -> CheckOutcome {
    check_counit(spec, degree, true)
}

/// (id⊗ε)∘Δ = id, on every normal-form monomial of degree ≤ `degree`.
pub fn check_counit_right(spec: &AlgebraSpec, degree: usize) -> CheckOutcome {
    check_counit(spec, degree, false)
}

fn check_counit(spec: &AlgebraSpec, degree: usize, left: bool) -> CheckOutcome {
    let mut outcome =
        CheckOutcome::new(if left { "counit-left" } else { "counit-right" });
    for m in pbw_basis(spec, degree) {
        outcome.checked += 1;
        let u = Element::monomial(m.clone(), CycQ::one());
        let delta = coproduct(&u, spec);
        let back = counit_contraction(&delta, left);
        let diff = &back - &u;
        if !diff.is_zero() {
            outcome.failures.push(CheckFailure {
                subject: m.label(spec),
                residual: element_label(&diff, spec),
            });
        }
    }
    outcome
}

/// Δ(uv) = Δ(u)•Δ(v) on seeded random pairs of basis monomials.
pub fn check_multiplicative(
    spec: &AlgebraSpec,
    degree: usize,
    pairs: usize,
    seed: u64,
) -> CheckOutcome {
    let mut outcome = CheckOutcome::new("multiplicativity");
    let basis = pbw_basis(spec, degree);
    let mut state = seed;
    for _ in 0..pairs {
        outcome.checked += 1;
        let u = &basis[(splitmix64(&mut state) as usize) % basis.len()];
        let v = &basis[(splitmix64(&mut state) as usize) % basis.len()];
        let eu = Element::monomial(u.clone(), CycQ::one());
        let ev = Element::monomial(v.clone(), CycQ::one());
        let lhs = coproduct(&mul(&eu, &ev, spec), spec);
        let rhs = twisted_mul(&coproduct(&eu, spec), &coproduct(&ev, spec), spec);
        let diff = &lhs - &rhs;
        if !diff.is_zero() {
            outcome.failures.push(CheckFailure {
                subject: format!("{} * {}", u.label(spec), v.label(spec)),
                residual: tensor_label(&diff, spec),
            });
        }
    }
    outcome
}

/// Every term A⊗B of Δ(Z) satisfies |A|+|B| ≡ |Z| (mod 3).
pub fn check_grades(spec: &AlgebraSpec, degree: usize) -> CheckOutcome {
    let mut outcome = CheckOutcome::new("grade-conservation");
    for m in pbw_basis(spec, degree) {
        outcome.checked += 1;
        let delta = coproduct(&Element::monomial(m.clone(), CycQ::one()), spec);
        for ((a, b), _) in delta.terms() {
            if (a.grade() + b.grade()) % 3 != m.grade() {
                outcome.failures.push(CheckFailure {
                    subject: m.label(spec),
                    residual: format!(
                        "term {} \u{2297} {} has grade {}",
                        a.label(spec),
                        b.label(spec),
                        (a.grade() + b.grade()) % 3
                    ),
                });
                break;
            }
        }
    }
    outcome
}

/// The whole coproduct suite; `pairs` random products are drawn for the
/// multiplicativity check.
pub fn axiom_suite(
    spec: &AlgebraSpec,
    degree: usize,
    pairs: usize,
    seed: u64,
) -> Vec<CheckOutcome> {
    vec![
        check_coassoc(spec, degree),
        check_counit_left(spec, degree),
        check_counit_right(spec, degree),
        check_multiplicative(spec, degree, pairs, seed),
        check_grades(spec, degree),
    ]
}

/// Probes m∘(S⊗id)∘Δ = η∘ε = m∘(id⊗S)∘Δ on every normal-form monomial of
/// degree ≤ `degree`. This axiom is not taken for granted: a failure is
/// reported per monomial with its residual, not asserted away.
pub fn check_antipode(spec: &AlgebraSpec, degree: usize) -> CheckOutcome {
    let mut outcome = CheckOutcome::new("antipode");
    for m in pbw_basis(spec, degree) {
        outcome.checked += 1;
        let u = Element::monomial(m.clone(), CycQ::one());
        let delta = coproduct(&u, spec);
        let target = if m.is_unit() { Element::unit(spec) } else { Element::zero() };
        let mut left = Element::zero();
        let mut right = Element::zero();
        for ((a, b), c) in delta.terms() {
            let ea = Element::monomial(a.clone(), CycQ::one());
            let eb = Element::monomial(b.clone(), CycQ::one());
            left = &left + &mul(&antipode(&ea, spec), &eb, spec).scaled(c);
            right = &right + &mul(&ea, &antipode(&eb, spec), spec).scaled(c);
        }
        let ldiff = &left - &target;
        let rdiff = &right - &target;
        if !ldiff.is_zero() {
            outcome.failures.push(CheckFailure {
                subject: format!("{} (antipode on the left leg)", m.label(spec)),
                residual: element_label(&ldiff, spec),
            });
        }
        if !rdiff.is_zero() {
            outcome.failures.push(CheckFailure {
                subject: format!("{} (antipode on the right leg)", m.label(spec)),
                residual: element_label(&rdiff, spec),
            });
        }
    }
    outcome
}

/// Compact labels for report residuals (full rendering lives with the CLI).
pub(crate) fn element_label(u: &Element, spec: &AlgebraSpec) -> String {
    if u.is_zero() {
        return "0".into();
    }
    let parts: Vec<String> = u
        .terms()
        .map(|(m, c)| format!("({c})*{}", m.label(spec)))
        .collect();
    parts.join(" + ")
}

pub(crate) fn tensor_label(t: &TensorElement, spec: &AlgebraSpec) -> String {
    if t.is_zero() {
        return "0".into();
    }
    let parts: Vec<String> = t
        .terms()
        .map(|((a, b), c)| {
            format!("({c})*({} \u{2297} {})", a.label(spec), b.label(spec))
        })
        .collect();
    parts.join(" + ")
}
