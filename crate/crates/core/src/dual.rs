//! The graded dual of the enveloping algebra, computed truncated-exactly:
//! functionals are stored as coefficient maps over the normal-form basis
//! together with a degree cutoff up to which those coefficients are complete.
//! The dual product is the transpose of the coproduct, the dual coproduct is
//! the transpose of the product, and the dual antipode is the transpose of
//! the antipode. Products in the enveloping algebra can lower degree (three
//! odd letters trade for one even generator), so a functional's product can
//! have unbounded support; exact coefficients within a stated cutoff is the
//! strongest finitely-computable contract, and every operation here states
//! the cutoff of its result.

use crate::coeff::CycQ;
use crate::enveloping::{mul, pbw_basis, Element, PBWMonomial};
use crate::hopf::{antipode, coproduct, CheckFailure, CheckOutcome, TensorElement};
use crate::structure::AlgebraSpec;
use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};
use thiserror::Error;

/// Cutoff value meaning "a finite linear combination of dual basis vectors,
/// exact at every degree" (the functional vanishes outside its finitely many
/// stored labels).
pub const EXACT: u32 = u32::MAX;

#[derive(Debug, Error)]
pub enum DualError {
    #[error(
        "pairing is unreliable: the functional is only known up to degree \
         {cutoff} but the element has a term of degree {got}"
    )]
    DegreeOverflow { got: usize, cutoff: u32 },
}

/// A functional on the enveloping algebra: coefficients over normal-form
/// labels, complete for every label of degree ≤ `cutoff`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DualElement {
    terms: BTreeMap<PBWMonomial, CycQ>,
    cutoff: u32,
}

impl DualElement {
    pub fn zero(cutoff: u32) -> Self {
        DualElement { terms: BTreeMap::new(), cutoff }
    }

    /// The dual basis vector of one normal-form monomial: 1 on that label,
    /// 0 elsewhere. A finite functional, so it is exact.
    pub fn psi(m: PBWMonomial) -> Self {
        let mut f = DualElement::zero(EXACT);
        f.add_term(m, CycQ::one());
        f
    }

    /// Dual of the unit monomial — the unit of the dual algebra (and the
    /// counit of the enveloping algebra, viewed as a functional).
    pub fn unit(spec: &AlgebraSpec) -> Self {
        DualElement::psi(PBWMonomial::unit(spec.dim_g0()))
    }

    /// Dual of a single even generator.
    pub fn alpha(spec: &AlgebraSpec, i: usize) -> Self {
        assert!(i < spec.dim_g0(), "even index {i} out of range");
        let mut e = vec![0u32; spec.dim_g0()];
        e[i] = 1;
        DualElement::psi(PBWMonomial::new(e, Vec::new()))
    }

    /// Dual of a single odd generator.
    pub fn theta(spec: &AlgebraSpec, a: usize) -> Self {
        assert!(a < spec.dim_g1(), "odd index {a} out of range");
        DualElement::psi(PBWMonomial::new(vec![0; spec.dim_g0()], vec![a as u8 + 1]))
    }

    pub fn cutoff(&self) -> u32 {
        self.cutoff
    }

    pub fn is_exact(&self) -> bool {
        self.cutoff == EXACT
    }

    /// Panics if a label exceeds the cutoff; truncated functionals never
    /// store what they do not know.
    pub fn add_term(&mut self, m: PBWMonomial, c: CycQ) {
        assert!(
            self.cutoff == EXACT || m.degree() <= self.cutoff as usize,
            "label degree {} exceeds the cutoff {}",
            m.degree(),
            self.cutoff
        );
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(CycQ::zero);
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

    pub fn terms(&self) -> impl Iterator<Item = (&PBWMonomial, &CycQ)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &PBWMonomial) -> CycQ {
        self.terms.get(m).cloned().unwrap_or_else(CycQ::zero)
    }

    pub fn scaled(&self, c: &CycQ) -> DualElement {
        let mut out = DualElement::zero(self.cutoff);
        if c.is_zero() {
            return out;
        }
        for (m, v) in &self.terms {
            out.add_term(m.clone(), v * c);
        }
        out
    }

    /// Restriction to labels of degree ≤ `c` (lowering the cutoff
    /// accordingly; raising it is impossible).
    pub fn truncated(&self, c: u32) -> DualElement {
        let cut = self.cutoff.min(c);
        let mut out = DualElement::zero(cut);
        for (m, v) in &self.terms {
            if m.degree() <= cut as usize {
                out.add_term(m.clone(), v.clone());
            }
        }
        out
    }

    /// The common grade of the support labels in the dual grading, where a
    /// label of odd length ℓ carries grade −ℓ ≡ 2ℓ (mod 3): duals of odd
    /// generators have grade 2. Bookkeeping only; no operation depends on it.
    pub fn grade(&self) -> Option<u8> {
        let mut grades = self
            .terms
            .keys()
            .map(|m| ((2 * m.y_word().len()) % 3) as u8);
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

    /// Common grade of the support labels in the enveloping algebra's own
    /// grading, used to prefilter products.
    fn support_grade(&self) -> Option<u8> {
        let mut grades = self.terms.keys().map(PBWMonomial::grade);
        let first = grades.next()?;
        if grades.all(|g| g == first) {
            Some(first)
        } else {
            None
        }
    }
}

impl Add for &DualElement {
    type Output = DualElement;
    fn add(self, rhs: &DualElement) -> DualElement {
        let cut = self.cutoff.min(rhs.cutoff);
        let mut out = self.truncated(cut);
        for (m, c) in &rhs.terms {
            if m.degree() <= cut as usize {
                out.add_term(m.clone(), c.clone());
            }
        }
        out
    }
}

impl Sub for &DualElement {
    type Output = DualElement;
    fn sub(self, rhs: &DualElement) -> DualElement {
        self + &-rhs
    }
}

impl Neg for &DualElement {
    type Output = DualElement;
    fn neg(self) -> DualElement {
        self.scaled(&-&CycQ::one())
    }
}

/// Evaluate a functional on an element. Errors if the element reaches past
/// the functional's cutoff, where its coefficients are unknown.
pub fn pair(f: &DualElement, u: &Element) -> Result<CycQ, DualError> {
    if !f.is_exact() {
        if let Some(got) = u
            .terms()
            .map(|(m, _)| m.degree())
            .find(|&d| d > f.cutoff as usize)
        {
            return Err(DualError::DegreeOverflow { got, cutoff: f.cutoff });
        }
    }
    let mut acc = CycQ::zero();
    for (m, c) in u.terms() {
        acc += &(&f.coefficient(m) * c);
    }
    Ok(acc)
}

/// A functional on the tensor square, truncated the same way: coefficients
/// on label pairs with both degrees ≤ cutoff.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DualTensor {
    terms: BTreeMap<(PBWMonomial, PBWMonomial), CycQ>,
    cutoff: u32,
}

impl DualTensor {
    pub fn zero(cutoff: u32) -> Self {
        DualTensor { terms: BTreeMap::new(), cutoff }
    }

    pub fn cutoff(&self) -> u32 {
        self.cutoff
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

    pub fn terms(&self) -> impl Iterator<Item = (&(PBWMonomial, PBWMonomial), &CycQ)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, left: &PBWMonomial, right: &PBWMonomial) -> CycQ {
        self.terms
            .get(&(left.clone(), right.clone()))
            .cloned()
            .unwrap_or_else(CycQ::zero)
    }
}

/// Shared machinery for a batch of dual operations against one algebra at
/// one cutoff: the normal-form basis up to the cutoff and the coproduct of
/// every basis monomial, computed once.
pub struct DualContext<'a> {
    spec: &'a AlgebraSpec,
    cutoff: u32,
    basis: Vec<PBWMonomial>,
    coproducts: Vec<TensorElement>,
}

impl<'a> DualContext<'a> {
    pub fn new(spec: &'a AlgebraSpec, cutoff: u32) -> Self {
        assert!(cutoff != EXACT, "a context needs a finite cutoff");
        let basis = pbw_basis(spec, cutoff as usize);
        let coproducts = basis
            .iter()
            .map(|m| coproduct(&Element::monomial(m.clone(), CycQ::one()), spec))
            .collect();
        DualContext { spec, cutoff, basis, coproducts }
    }

    pub fn cutoff(&self) -> u32 {
        self.cutoff
    }

    pub fn basis(&self) -> &[PBWMonomial] {
        &self.basis
    }

    /// The transpose of the coproduct: the coefficient of the result on a
    /// label Z is (f⊗g)(ΔZ). Exact for every label within the result's
    /// cutoff, which is the smallest of the context's and the operands'.
    pub fn mul(&self, f: &DualElement, g: &DualElement) -> DualElement {
        let cut = self.cutoff.min(f.cutoff).min(g.cutoff);
        let want = match (f.support_grade(), g.support_grade()) {
            (Some(a), Some(b)) => Some((a + b) % 3),
            _ => None,
        };
        let mut out = DualElement::zero(cut);
        for (z, delta) in self.basis.iter().zip(&self.coproducts) {
            if z.degree() > cut as usize {
                continue;
            }
            if let Some(w) = want {
                if z.grade() != w {
                    continue;
                }
            }
            let mut acc = CycQ::zero();
            for ((a, b), c) in delta.terms() {
                let fa = f.coefficient(a);
                if fa.is_zero() {
                    continue;
                }
                let gb = g.coefficient(b);
                if gb.is_zero() {
                    continue;
                }
                acc += &(&(&fa * &gb) * c);
            }
            out.add_term(z.clone(), acc);
        }
        out
    }

    /// The transpose of the product: the coefficient on a label pair (A, B)
    /// is f(Z_A·Z_B). Products reach degree up to deg A + deg B, so for a
    /// truncated f the result is complete only for pairs with both legs of
    /// degree ≤ f.cutoff/2; the result's cutoff says how far it is exact.
    pub fn coproduct(&self, f: &DualElement) -> DualTensor {
        let cut = if f.is_exact() {
            self.cutoff
        } else {
            self.cutoff.min(f.cutoff / 2)
        };
        let mut out = DualTensor::zero(cut);
        let within: Vec<&PBWMonomial> = self
            .basis
            .iter()
            .filter(|m| m.degree() <= cut as usize)
            .collect();
        for a in &within {
            let ea = Element::monomial((*a).clone(), CycQ::one());
            for b in &within {
                let eb = Element::monomial((*b).clone(), CycQ::one());
                let prod = mul(&ea, &eb, self.spec);
                let mut acc = CycQ::zero();
                for (m, c) in prod.terms() {
                    acc += &(&f.coefficient(m) * c);
                }
                out.add_term((*a).clone(), (*b).clone(), acc);
            }
        }
        out
    }

    /// The transpose of the antipode: (S*f)(Z) = f(S Z) on every label
    /// within the cutoff. The antipode never raises degree, so this is
    /// complete up to min(context, f) cutoffs.
    pub fn antipode(&self, f: &DualElement) -> DualElement {
        let cut = self.cutoff.min(f.cutoff);
        let mut out = DualElement::zero(cut);
        for z in &self.basis {
            if z.degree() > cut as usize {
                continue;
            }
            let s = antipode(&Element::monomial(z.clone(), CycQ::one()), self.spec);
            let mut acc = CycQ::zero();
            for (m, c) in s.terms() {
                acc += &(&f.coefficient(m) * c);
            }
            out.add_term(z.clone(), acc);
        }
        out
    }
}

/// One-shot dual product at the given cutoff.
pub fn dual_mul(
    f: &DualElement,
    g: &DualElement,
    spec: &AlgebraSpec,
    cutoff: u32,
) -> DualElement {
    DualContext::new(spec, cutoff).mul(f, g)
}

/// One-shot dual coproduct at the given cutoff.
pub fn dual_coproduct(f: &DualElement, spec: &AlgebraSpec, cutoff: u32) -> DualTensor {
    DualContext::new(spec, cutoff).coproduct(f)
}

/// The counit of the dual algebra: evaluation at the unit label.
pub fn dual_counit(f: &DualElement) -> CycQ {
    f.terms
        .iter()
        .find(|(m, _)| m.is_unit())
        .map(|(_, c)| c.clone())
        .unwrap_or_else(CycQ::zero)
}

/// One-shot dual antipode at the given cutoff.
pub fn dual_antipode(f: &DualElement, spec: &AlgebraSpec, cutoff: u32) -> DualElement {
    DualContext::new(spec, cutoff).antipode(f)
}

/// Dual-basis display name: `alpha[...]` for pure-even labels (indices with
/// multiplicity), `theta[...]` for pure-odd labels (the word), `Psi[x|y]`
/// for mixed ones, `1` for the unit.
pub fn dual_label(m: &PBWMonomial) -> String {
    let xs: Vec<String> = m
        .x_exp()
        .iter()
        .enumerate()
        .flat_map(|(i, &e)| std::iter::repeat(i.to_string()).take(e as usize))
        .collect();
    let ys: Vec<String> = m.y_indices().map(|a| a.to_string()).collect();
    match (xs.is_empty(), ys.is_empty()) {
        (true, true) => "1".into(),
        (false, true) => format!("alpha[{}]", xs.join(",")),
        (true, false) => format!("theta[{}]", ys.join(",")),
        (false, false) => format!("Psi[{}|{}]", xs.join(","), ys.join(",")),
    }
}

pub(crate) fn dual_element_label(f: &DualElement) -> String {
    if f.is_zero() {
        return "0".into();
    }
    let parts: Vec<String> = f
        .terms()
        .map(|(m, c)| format!("({c})*{}", dual_label(m)))
        .collect();
    parts.join(" + ")
}

/// Checks that the duals of the odd generators generate a three-exterior
/// algebra and the duals of the even generators a commutative one: every
/// fully symmetrized triple product of theta-generators vanishes, and
/// alpha-generators commute pairwise. Both families are verified at the
/// given cutoff.
pub fn three_exterior_check(spec: &AlgebraSpec, cutoff: u32) -> Vec<CheckOutcome> {
    let ctx = DualContext::new(spec, cutoff);
    let n = spec.dim_g1();
    let p = spec.dim_g0();

    let mut cubes = CheckOutcome {
        name: "theta-symmetrized-cubes",
        checked: 0,
        failures: Vec::new(),
    };
    for a in 0..n {
        for b in a..n {
            for c in b..n {
                cubes.checked += 1;
                let mut sum = DualElement::zero(ctx.cutoff());
                for (x, y, z) in
                    [(a, b, c), (a, c, b), (b, a, c), (b, c, a), (c, a, b), (c, b, a)]
                {
                    let t = ctx.mul(
                        &ctx.mul(
                            &DualElement::theta(spec, x),
                            &DualElement::theta(spec, y),
                        ),
                        &DualElement::theta(spec, z),
                    );
                    sum = &sum + &t;
                }
                if !sum.is_zero() {
                    cubes.failures.push(CheckFailure {
                        subject: format!("theta[{a}], theta[{b}], theta[{c}]"),
                        residual: dual_element_label(&sum),
                    });
                }
            }
        }
    }

    let mut commuting = CheckOutcome {
        name: "alpha-commutativity",
        checked: 0,
        failures: Vec::new(),
    };
    for i in 0..p {
        for j in (i + 1)..p {
            commuting.checked += 1;
            let ai = DualElement::alpha(spec, i);
            let aj = DualElement::alpha(spec, j);
            let diff = &ctx.mul(&ai, &aj) - &ctx.mul(&aj, &ai);
            if !diff.is_zero() {
                commuting.failures.push(CheckFailure {
                    subject: format!("alpha[{i}], alpha[{j}]"),
                    residual: dual_element_label(&diff),
                });
            }
        }
    }

    vec![cubes, commuting]
}
