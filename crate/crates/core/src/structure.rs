//! Algebras with a Lie bracket on the even part, an even action on the odd
//! part, and a totally symmetric triple bracket sending three odd generators
//! back to the even part. This module defines such algebras by structure
//! constants, checks the defining identities, ships the built-in families
//! (inhomogeneous orthogonal type, Killing-form type, matrix type), and
//! verifies matrix representations.

use crate::coeff::{CoeffError, CycQ};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum StructureError {
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("duplicate generator name `{0}`")]
    DuplicateName(String),
    #[error("generator index {index} out of range for {which}")]
    IndexOutOfRange { which: &'static str, index: usize },
    #[error("bracket of `{0}` with itself must vanish")]
    NonzeroSelfBracket(String),
    #[error("conflicting definitions for {0}")]
    ConflictingBracket(String),
    #[error("bilinear form is not symmetric at ({0}, {1})")]
    NonSymmetricForm(usize, usize),
    #[error("bilinear form is not square")]
    NonSquareForm,
    #[error("missing matrix for generator `{0}`")]
    MissingMatrix(String),
    #[error("matrix for `{name}` is {got}x{got2}, expected {want}x{want}", got2 = .got)]
    MatrixSize { name: String, got: usize, want: usize },
    #[error("invalid coefficient `{text}`: {source}")]
    Coefficient { text: String, source: CoeffError },
    #[error("malformed algebra file: {0}")]
    Format(String),
}

/// An elementary three-graded algebra given by sparse structure constants:
/// a bracket on the even generators, their action on the odd generators,
/// and the symmetric triple bracket of odd generators.
///
/// Storage is canonical: `c00` keys satisfy `i < j` (the opposite order is
/// the negative), `c111` keys are sorted (the bracket is totally symmetric).
/// The setters enforce this, so lookups never miss a permuted key.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraSpec {
    g0_names: Vec<String>,
    g1_names: Vec<String>,
    /// [X_i, X_j] for i < j, as a dense coordinate vector over the even basis.
    c00: BTreeMap<(usize, usize), Vec<CycQ>>,
    /// [X_i, Y_a], dense over the odd basis.
    c01: BTreeMap<(usize, usize), Vec<CycQ>>,
    /// {Y_a, Y_b, Y_c} for a <= b <= c, dense over the even basis.
    c111: BTreeMap<(usize, usize, usize), Vec<CycQ>>,
}

fn dense_from_sparse(
    len: usize,
    which: &'static str,
    coords: Vec<(usize, CycQ)>,
) -> Result<Vec<CycQ>, StructureError> {
    let mut v = vec![CycQ::zero(); len];
    for (idx, c) in coords {
        if idx >= len {
            return Err(StructureError::IndexOutOfRange { which, index: idx });
        }
        v[idx] += &c;
    }
    Ok(v)
}

fn sparse(dense: &[CycQ]) -> Vec<(usize, CycQ)> {
    dense
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i, c.clone()))
        .collect()
}

impl AlgebraSpec {
    /// An algebra with the given generator names and all brackets zero.
    pub fn new<S: Into<String>>(
        g0_names: Vec<S>,
        g1_names: Vec<S>,
    ) -> Result<Self, StructureError> {
        let g0_names: Vec<String> = g0_names.into_iter().map(Into::into).collect();
        let g1_names: Vec<String> = g1_names.into_iter().map(Into::into).collect();
        let mut seen = BTreeSet::new();
        for name in g0_names.iter().chain(g1_names.iter()) {
            if !seen.insert(name.clone()) {
                return Err(StructureError::DuplicateName(name.clone()));
            }
        }
        Ok(AlgebraSpec {
            g0_names,
            g1_names,
            c00: BTreeMap::new(),
            c01: BTreeMap::new(),
            c111: BTreeMap::new(),
        })
    }

    pub fn dim_g0(&self) -> usize {
        self.g0_names.len()
    }

    pub fn dim_g1(&self) -> usize {
        self.g1_names.len()
    }

    pub fn g0_names(&self) -> &[String] {
        &self.g0_names
    }

    pub fn g1_names(&self) -> &[String] {
        &self.g1_names
    }

    pub fn g0_index(&self, name: &str) -> Option<usize> {
        self.g0_names.iter().position(|n| n == name)
    }

    pub fn g1_index(&self, name: &str) -> Option<usize> {
        self.g1_names.iter().position(|n| n == name)
    }

    fn check_g0(&self, index: usize) -> Result<(), StructureError> {
        if index >= self.dim_g0() {
            return Err(StructureError::IndexOutOfRange { which: "even basis", index });
        }
        Ok(())
    }

    fn check_g1(&self, index: usize) -> Result<(), StructureError> {
        if index >= self.dim_g1() {
            return Err(StructureError::IndexOutOfRange { which: "odd basis", index });
        }
        Ok(())
    }

    /// Define [X_i, X_j]; the reversed pair is stored as the negative.
    pub fn set_bracket_xx(
        &mut self,
        i: usize,
        j: usize,
        coords: Vec<(usize, CycQ)>,
    ) -> Result<(), StructureError> {
        self.check_g0(i)?;
        self.check_g0(j)?;
        let mut dense = dense_from_sparse(self.dim_g0(), "even basis", coords)?;
        if i == j {
            if dense.iter().any(|c| !c.is_zero()) {
                return Err(StructureError::NonzeroSelfBracket(self.g0_names[i].clone()));
            }
            return Ok(());
        }
        let key = if i < j {
            (i, j)
        } else {
            for c in dense.iter_mut() {
                *c = -&*c;
            }
            (j, i)
        };
        if dense.iter().all(CycQ::is_zero) {
            self.c00.remove(&key);
        } else {
            self.c00.insert(key, dense);
        }
        Ok(())
    }

    /// Define the action [X_i, Y_a].
    pub fn set_bracket_xy(
        &mut self,
        i: usize,
        a: usize,
        coords: Vec<(usize, CycQ)>,
    ) -> Result<(), StructureError> {
        self.check_g0(i)?;
        self.check_g1(a)?;
        let dense = dense_from_sparse(self.dim_g1(), "odd basis", coords)?;
        if dense.iter().all(CycQ::is_zero) {
            self.c01.remove(&(i, a));
        } else {
            self.c01.insert((i, a), dense);
        }
        Ok(())
    }

    /// Define {Y_a, Y_b, Y_c}; the key is stored sorted (total symmetry).
    pub fn set_triple_y(
        &mut self,
        a: usize,
        b: usize,
        c: usize,
        coords: Vec<(usize, CycQ)>,
    ) -> Result<(), StructureError> {
        self.check_g1(a)?;
        self.check_g1(b)?;
        self.check_g1(c)?;
        let dense = dense_from_sparse(self.dim_g0(), "even basis", coords)?;
        let mut key = [a, b, c];
        key.sort_unstable();
        let key = (key[0], key[1], key[2]);
        if dense.iter().all(CycQ::is_zero) {
            self.c111.remove(&key);
        } else {
            self.c111.insert(key, dense);
        }
        Ok(())
    }

    /// [X_i, X_j] as sparse (index, coefficient) pairs over the even basis.
    pub fn bracket_xx(&self, i: usize, j: usize) -> Vec<(usize, CycQ)> {
        if i == j {
            return Vec::new();
        }
        let (key, flip) = if i < j { ((i, j), false) } else { ((j, i), true) };
        match self.c00.get(&key) {
            None => Vec::new(),
            Some(dense) => {
                let mut out = sparse(dense);
                if flip {
                    for (_, c) in out.iter_mut() {
                        *c = -&*c;
                    }
                }
                out
            }
        }
    }

    /// [X_i, Y_a] as sparse pairs over the odd basis.
    pub fn bracket_xy(&self, i: usize, a: usize) -> Vec<(usize, CycQ)> {
        self.c01.get(&(i, a)).map(|d| sparse(d)).unwrap_or_default()
    }

    /// {Y_a, Y_b, Y_c} as sparse pairs over the even basis (any argument order).
    pub fn triple_y(&self, a: usize, b: usize, c: usize) -> Vec<(usize, CycQ)> {
        let mut key = [a, b, c];
        key.sort_unstable();
        self.c111
            .get(&(key[0], key[1], key[2]))
            .map(|d| sparse(d))
            .unwrap_or_default()
    }
}

/// Outcome of one named identity check.
#[derive(Clone, Debug)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub counterexample: Option<Counterexample>,
}

/// First witness of a failed identity: the generators plugged in, and the
/// nonzero residual written over the relevant basis (or matrix entries).
#[derive(Clone, Debug)]
pub struct Counterexample {
    pub generators: Vec<String>,
    pub residual: Vec<(String, CycQ)>,
}

#[derive(Clone, Debug)]
pub struct ValidationReport {
    pub checks: Vec<CheckResult>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed {
            return write!(f, "{}: pass", self.name);
        }
        write!(f, "{}: FAIL", self.name)?;
        if let Some(ce) = &self.counterexample {
            write!(f, " at ({})", ce.generators.join(", "))?;
            let terms: Vec<String> = ce
                .residual
                .iter()
                .map(|(label, c)| format!("({c})*{label}"))
                .collect();
            write!(f, "; residual: {}", terms.join(" + "))?;
        }
        Ok(())
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for check in &self.checks {
            writeln!(f, "{check}")?;
        }
        Ok(())
    }
}

/// Dense coordinate-vector accumulator used by the identity checks.
struct Acc {
    coords: Vec<CycQ>,
}

impl Acc {
    fn new(len: usize) -> Self {
        Acc { coords: vec![CycQ::zero(); len] }
    }

    fn add(&mut self, idx: usize, c: &CycQ) {
        self.coords[idx] += c;
    }

    fn residual(&self, names: &[String]) -> Option<Vec<(String, CycQ)>> {
        let nonzero: Vec<(String, CycQ)> = self
            .coords
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (names[i].clone(), c.clone()))
            .collect();
        if nonzero.is_empty() {
            None
        } else {
            Some(nonzero)
        }
    }
}

impl AlgebraSpec {
    /// Run the five defining-identity checks, in order: storage antisymmetry
    /// and well-formedness, the Jacobi identity, the module axiom for the
    /// odd action, equivariance of the triple bracket, and the four-argument
    /// fundamental identity. Failures are reported, not raised.
    pub fn validate(&self) -> ValidationReport {
        ValidationReport {
            checks: vec![
                self.check_antisymmetry(),
                self.check_jacobi(),
                self.check_module_action(),
                self.check_equivariance(),
                self.check_fundamental_identity(),
            ],
        }
    }

    fn check_antisymmetry(&self) -> CheckResult {
        let p = self.dim_g0();
        let n = self.dim_g1();
        let mut bad: Option<String> = None;
        for (&(i, j), v) in &self.c00 {
            if i >= j || j >= p || v.len() != p {
                bad = Some(format!("c00 entry ({i}, {j})"));
                break;
            }
        }
        if bad.is_none() {
            for (&(i, a), v) in &self.c01 {
                if i >= p || a >= n || v.len() != n {
                    bad = Some(format!("c01 entry ({i}, {a})"));
                    break;
                }
            }
        }
        if bad.is_none() {
            for (&(a, b, c), v) in &self.c111 {
                if !(a <= b && b <= c) || c >= n || v.len() != p {
                    bad = Some(format!("c111 entry ({a}, {b}, {c})"));
                    break;
                }
            }
        }
        CheckResult {
            name: "antisymmetry",
            passed: bad.is_none(),
            counterexample: bad.map(|what| Counterexample {
                generators: vec![what],
                residual: Vec::new(),
            }),
        }
    }

    fn check_jacobi(&self) -> CheckResult {
        let p = self.dim_g0();
        for i in 0..p {
            for j in (i + 1)..p {
                for k in (j + 1)..p {
                    let mut acc = Acc::new(p);
                    // [[X_i,X_j],X_k] + [[X_j,X_k],X_i] + [[X_k,X_i],X_j]
                    for (l, r, t) in [(i, j, k), (j, k, i), (k, i, j)] {
                        for (m, w) in self.bracket_xx(l, r) {
                            for (e, u) in self.bracket_xx(m, t) {
                                acc.add(e, &(&w * &u));
                            }
                        }
                    }
                    if let Some(res) = acc.residual(&self.g0_names) {
                        return CheckResult {
                            name: "jacobi",
                            passed: false,
                            counterexample: Some(Counterexample {
                                generators: vec![
                                    self.g0_names[i].clone(),
                                    self.g0_names[j].clone(),
                                    self.g0_names[k].clone(),
                                ],
                                residual: res,
                            }),
                        };
                    }
                }
            }
        }
        CheckResult { name: "jacobi", passed: true, counterexample: None }
    }

    fn check_module_action(&self) -> CheckResult {
        let p = self.dim_g0();
        let n = self.dim_g1();
        for i in 0..p {
            for j in (i + 1)..p {
                for a in 0..n {
                    let mut acc = Acc::new(n);
                    // [X_i,[X_j,Y_a]] - [X_j,[X_i,Y_a]] - [[X_i,X_j],Y_a]
                    for (b, w) in self.bracket_xy(j, a) {
                        for (c, u) in self.bracket_xy(i, b) {
                            acc.add(c, &(&w * &u));
                        }
                    }
                    for (b, w) in self.bracket_xy(i, a) {
                        for (c, u) in self.bracket_xy(j, b) {
                            acc.add(c, &-(&w * &u));
                        }
                    }
                    for (m, w) in self.bracket_xx(i, j) {
                        for (b, u) in self.bracket_xy(m, a) {
                            acc.add(b, &-(&w * &u));
                        }
                    }
                    if let Some(res) = acc.residual(&self.g1_names) {
                        return CheckResult {
                            name: "module-action",
                            passed: false,
                            counterexample: Some(Counterexample {
                                generators: vec![
                                    self.g0_names[i].clone(),
                                    self.g0_names[j].clone(),
                                    self.g1_names[a].clone(),
                                ],
                                residual: res,
                            }),
                        };
                    }
                }
            }
        }
        CheckResult { name: "module-action", passed: true, counterexample: None }
    }

    fn check_equivariance(&self) -> CheckResult {
        let p = self.dim_g0();
        let n = self.dim_g1();
        for i in 0..p {
            for a in 0..n {
                for b in a..n {
                    for c in b..n {
                        let mut acc = Acc::new(p);
                        // [X_i,{Y_a,Y_b,Y_c}]
                        for (m, w) in self.triple_y(a, b, c) {
                            for (e, u) in self.bracket_xx(i, m) {
                                acc.add(e, &(&w * &u));
                            }
                        }
                        // - {[X_i,Y_a],Y_b,Y_c} and cyclic placements
                        for (slot, (s, t)) in [(a, (b, c)), (b, (a, c)), (c, (a, b))] {
                            for (d, w) in self.bracket_xy(i, slot) {
                                for (m, u) in self.triple_y(d, s, t) {
                                    acc.add(m, &-(&w * &u));
                                }
                            }
                        }
                        if let Some(res) = acc.residual(&self.g0_names) {
                            return CheckResult {
                                name: "equivariance",
                                passed: false,
                                counterexample: Some(Counterexample {
                                    generators: vec![
                                        self.g0_names[i].clone(),
                                        self.g1_names[a].clone(),
                                        self.g1_names[b].clone(),
                                        self.g1_names[c].clone(),
                                    ],
                                    residual: res,
                                }),
                            };
                        }
                    }
                }
            }
        }
        CheckResult { name: "equivariance", passed: true, counterexample: None }
    }

    fn check_fundamental_identity(&self) -> CheckResult {
        let n = self.dim_g1();
        for a in 0..n {
            for b in a..n {
                for c in b..n {
                    for d in c..n {
                        let mut acc = Acc::new(n);
                        // sum over the four ways to leave one argument out:
                        // [{Y,Y,Y without j}, Y_j]
                        for (kept, out) in
                            [((b, c, d), a), ((a, c, d), b), ((a, b, d), c), ((a, b, c), d)]
                        {
                            for (m, w) in self.triple_y(kept.0, kept.1, kept.2) {
                                for (e, u) in self.bracket_xy(m, out) {
                                    acc.add(e, &(&w * &u));
                                }
                            }
                        }
                        if let Some(res) = acc.residual(&self.g1_names) {
                            return CheckResult {
                                name: "fundamental-identity",
                                passed: false,
                                counterexample: Some(Counterexample {
                                    generators: vec![
                                        self.g1_names[a].clone(),
                                        self.g1_names[b].clone(),
                                        self.g1_names[c].clone(),
                                        self.g1_names[d].clone(),
                                    ],
                                    residual: res,
                                }),
                            };
                        }
                    }
                }
            }
        }
        CheckResult { name: "fundamental-identity", passed: true, counterexample: None }
    }
}

// ---------------------------------------------------------------------------
// Built-in algebras
// ---------------------------------------------------------------------------

fn eta(mu: usize, nu: usize) -> i64 {
    if mu != nu {
        0
    } else if mu == 0 {
        1
    } else {
        -1
    }
}

/// The inhomogeneous algebra on rotations L, translations P, and an odd
/// vector multiplet V in a D-dimensional space with metric diag(1, -1, ...):
/// [L,L] and [L,P] close as usual, [P,V] = 0, [L,V] rotates V, and the
/// triple bracket of V's lands on the translations through the metric.
pub fn builtin_iso3(d: usize) -> AlgebraSpec {
    assert!(d >= 1, "dimension must be positive");
    assert!(d <= 10, "generator naming supports at most 10 dimensions");
    let l_count = d * (d - 1) / 2;
    // L indices flattened in the order (0,1), (0,2), ..., (0,D-1), (1,2), ...
    let l_idx = |mu: usize, nu: usize| -> usize {
        debug_assert!(mu < nu);
        (0..mu).map(|k| d - 1 - k).sum::<usize>() + (nu - mu - 1)
    };
    let p_idx = |mu: usize| l_count + mu;

    let mut g0_names = Vec::new();
    for mu in 0..d {
        for nu in (mu + 1)..d {
            g0_names.push(format!("L{mu}{nu}"));
        }
    }
    for mu in 0..d {
        g0_names.push(format!("P{mu}"));
    }
    let g1_names: Vec<String> = (0..d).map(|mu| format!("V{mu}")).collect();

    let mut spec = AlgebraSpec::new(g0_names, g1_names).expect("names are distinct");

    // Signed insertion of an L coordinate, folding L_{ba} = -L_{ab}.
    let add_l = |acc: &mut Vec<(usize, CycQ)>, a: usize, b: usize, coeff: i64| {
        if a == b || coeff == 0 {
            return;
        }
        if a < b {
            acc.push((l_idx(a, b), CycQ::from_int(coeff)));
        } else {
            acc.push((l_idx(b, a), CycQ::from_int(-coeff)));
        }
    };

    // [L_{mu nu}, L_{rho sigma}]
    for mu in 0..d {
        for nu in (mu + 1)..d {
            for rho in 0..d {
                for sigma in (rho + 1)..d {
                    if l_idx(mu, nu) >= l_idx(rho, sigma) {
                        continue;
                    }
                    let mut acc = Vec::new();
                    add_l(&mut acc, rho, mu, eta(nu, sigma));
                    add_l(&mut acc, rho, nu, -eta(mu, sigma));
                    add_l(&mut acc, mu, sigma, eta(nu, rho));
                    add_l(&mut acc, nu, sigma, -eta(mu, rho));
                    spec.set_bracket_xx(l_idx(mu, nu), l_idx(rho, sigma), acc)
                        .expect("indices in range");
                }
            }
        }
    }
    // [L_{mu nu}, P_rho] and the action [L_{mu nu}, V_rho]
    for mu in 0..d {
        for nu in (mu + 1)..d {
            for rho in 0..d {
                let mut acc = Vec::new();
                if eta(nu, rho) != 0 {
                    acc.push((p_idx(mu), CycQ::from_int(eta(nu, rho))));
                }
                if eta(mu, rho) != 0 {
                    acc.push((p_idx(nu), CycQ::from_int(-eta(mu, rho))));
                }
                spec.set_bracket_xx(l_idx(mu, nu), p_idx(rho), acc)
                    .expect("indices in range");

                let mut act = Vec::new();
                if eta(nu, rho) != 0 {
                    act.push((mu, CycQ::from_int(eta(nu, rho))));
                }
                if eta(mu, rho) != 0 {
                    act.push((nu, CycQ::from_int(-eta(mu, rho))));
                }
                spec.set_bracket_xy(l_idx(mu, nu), rho, act).expect("indices in range");
            }
        }
    }
    // {V_mu, V_nu, V_rho} = eta_{mu nu} P_rho + eta_{mu rho} P_nu + eta_{rho nu} P_mu
    for mu in 0..d {
        for nu in mu..d {
            for rho in nu..d {
                let mut acc = Vec::new();
                for (x, y, z) in [(mu, nu, rho), (mu, rho, nu), (rho, nu, mu)] {
                    if eta(x, y) != 0 {
                        acc.push((p_idx(z), CycQ::from_int(eta(x, y))));
                    }
                }
                spec.set_triple_y(mu, nu, rho, acc).expect("indices in range");
            }
        }
    }
    spec
}

/// Double an ordinary Lie algebra into a three-graded one: the odd part is
/// an adjoint copy A of the even basis J, and a symmetric invariant form g
/// defines {A_a, A_b, A_c} = g_ab J_c + g_ac J_b + g_bc J_a.
///
/// `f` holds the Lie structure constants [J_a, J_b] for a < b (dense over
/// the basis); `g` is the form as a square symmetric matrix.
pub fn builtin_killing(
    f: &BTreeMap<(usize, usize), Vec<CycQ>>,
    g: &[Vec<CycQ>],
) -> Result<AlgebraSpec, StructureError> {
    let r = g.len();
    for row in g {
        if row.len() != r {
            return Err(StructureError::NonSquareForm);
        }
    }
    for a in 0..r {
        for b in (a + 1)..r {
            if g[a][b] != g[b][a] {
                return Err(StructureError::NonSymmetricForm(a, b));
            }
        }
    }
    let g0_names: Vec<String> = (0..r).map(|a| format!("J{}", a + 1)).collect();
    let g1_names: Vec<String> = (0..r).map(|a| format!("A{}", a + 1)).collect();
    let mut spec = AlgebraSpec::new(g0_names, g1_names)?;

    for (&(a, b), coords) in f {
        if a >= b {
            return Err(StructureError::ConflictingBracket(format!(
                "structure-constant key ({a}, {b}) is not in increasing order"
            )));
        }
        spec.set_bracket_xx(a, b, sparse(coords))?;
        // [J_a, A_b] mirrors [J_a, J_b] on the adjoint copy, both orders.
        spec.set_bracket_xy(a, b, sparse(coords))?;
        let negated: Vec<(usize, CycQ)> =
            sparse(coords).into_iter().map(|(i, c)| (i, -c)).collect();
        spec.set_bracket_xy(b, a, negated)?;
    }
    for a in 0..r {
        for b in a..r {
            for c in b..r {
                let mut acc = Vec::new();
                for (x, y, z) in [(a, b, c), (a, c, b), (b, c, a)] {
                    if !g[x][y].is_zero() {
                        acc.push((z, g[x][y].clone()));
                    }
                }
                spec.set_triple_y(a, b, c, acc)?;
            }
        }
    }
    Ok(spec)
}

/// The rank-one preset: J1, J2, J3 with the cyclic bracket [J1,J2] = J3 and
/// its Killing form -2*id.
pub fn killing_rank1() -> AlgebraSpec {
    let one = CycQ::one();
    let mut f = BTreeMap::new();
    let basis = |idx: usize, c: CycQ| -> Vec<CycQ> {
        let mut v = vec![CycQ::zero(); 3];
        v[idx] = c;
        v
    };
    f.insert((0, 1), basis(2, one.clone()));
    f.insert((1, 2), basis(0, one.clone()));
    f.insert((0, 2), basis(1, -one));
    let minus_two = CycQ::from_int(-2);
    let g: Vec<Vec<CycQ>> = (0..3)
        .map(|i| {
            (0..3)
                .map(|j| if i == j { minus_two.clone() } else { CycQ::zero() })
                .collect()
        })
        .collect();
    builtin_killing(&f, &g).expect("preset data is well-formed")
}

// ---------------------------------------------------------------------------
// Matrix model
// ---------------------------------------------------------------------------

pub type Matrix = Vec<Vec<CycQ>>;

/// A matrix realization: block sizes and one square matrix per generator.
/// Even generators are block-diagonal; odd generators occupy the cyclic
/// off-diagonal blocks (0,1), (1,2), (2,0).
#[derive(Clone, Debug)]
pub struct MatrixRep {
    pub dims: (usize, usize, usize),
    pub matrices: BTreeMap<String, Matrix>,
}

fn mat_zero(n: usize) -> Matrix {
    vec![vec![CycQ::zero(); n]; n]
}

fn mat_mul(x: &Matrix, y: &Matrix) -> Matrix {
    let n = x.len();
    let mut out = mat_zero(n);
    for i in 0..n {
        for k in 0..n {
            if x[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                if y[k][j].is_zero() {
                    continue;
                }
                out[i][j] += &(&x[i][k] * &y[k][j]);
            }
        }
    }
    out
}

fn mat_add_into(acc: &mut Matrix, m: &Matrix, negate: bool) {
    for (ra, rm) in acc.iter_mut().zip(m) {
        for (a, v) in ra.iter_mut().zip(rm) {
            if negate {
                *a -= v;
            } else {
                *a += v;
            }
        }
    }
}

fn mat_commutator(x: &Matrix, y: &Matrix) -> Matrix {
    let mut out = mat_mul(x, y);
    mat_add_into(&mut out, &mat_mul(y, x), true);
    out
}

fn mat_nonzero_entries(m: &Matrix) -> Vec<(String, CycQ)> {
    let mut out = Vec::new();
    for (r, row) in m.iter().enumerate() {
        for (c, v) in row.iter().enumerate() {
            if !v.is_zero() {
                out.push((format!("({},{})", r + 1, c + 1), v.clone()));
            }
        }
    }
    out
}

/// Build the elementary matrix algebra on three diagonal blocks of sizes
/// (m1, m2, m3): the even part is the block-diagonal matrices, the odd part
/// the cyclic blocks, all structure constants computed from matrix products
/// ([x,y] = xy - yx, triple bracket = full symmetrized product). Returns the
/// abstract algebra together with its defining representation.
pub fn builtin_matrix_rep(m1: usize, m2: usize, m3: usize) -> (AlgebraSpec, MatrixRep) {
    assert!(m1 >= 1 && m2 >= 1 && m3 >= 1, "block sizes must be positive");
    let sizes = [m1, m2, m3];
    let total = m1 + m2 + m3;
    assert!(total <= 9, "generator naming supports total size at most 9");
    let offset = [0, m1, m1 + m2];

    let unit = |r: usize, c: usize| -> Matrix {
        let mut m = mat_zero(total);
        m[r][c] = CycQ::one();
        m
    };

    // Even generators: elementary matrices of the diagonal blocks, block by
    // block, rows first. Names use global 1-based matrix positions.
    let mut g0_cells: Vec<(usize, usize)> = Vec::new();
    for k in 0..3 {
        for r in 0..sizes[k] {
            for c in 0..sizes[k] {
                g0_cells.push((offset[k] + r, offset[k] + c));
            }
        }
    }
    // Odd generators: the cyclic off-diagonal blocks.
    let mut g1_cells: Vec<(usize, usize)> = Vec::new();
    for (bi, bj) in [(0usize, 1usize), (1, 2), (2, 0)] {
        for r in 0..sizes[bi] {
            for c in 0..sizes[bj] {
                g1_cells.push((offset[bi] + r, offset[bj] + c));
            }
        }
    }

    let name_of = |&(r, c): &(usize, usize)| format!("E{}{}", r + 1, c + 1);
    let g0_names: Vec<String> = g0_cells.iter().map(name_of).collect();
    let g1_names: Vec<String> = g1_cells.iter().map(name_of).collect();

    let mut g0_of_cell: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (idx, cell) in g0_cells.iter().enumerate() {
        g0_of_cell.insert(*cell, idx);
    }
    let mut g1_of_cell: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (idx, cell) in g1_cells.iter().enumerate() {
        g1_of_cell.insert(*cell, idx);
    }

    let into_coords = |m: &Matrix, table: &BTreeMap<(usize, usize), usize>| {
        let mut coords = Vec::new();
        for (r, row) in m.iter().enumerate() {
            for (c, v) in row.iter().enumerate() {
                if v.is_zero() {
                    continue;
                }
                let idx = table
                    .get(&(r, c))
                    .unwrap_or_else(|| panic!("product left the graded block pattern at ({r},{c})"));
                coords.push((*idx, v.clone()));
            }
        }
        coords
    };

    let mut spec = AlgebraSpec::new(g0_names.clone(), g1_names.clone())
        .expect("cell names are distinct");
    let x_mats: Vec<Matrix> = g0_cells.iter().map(|&(r, c)| unit(r, c)).collect();
    let y_mats: Vec<Matrix> = g1_cells.iter().map(|&(r, c)| unit(r, c)).collect();

    for i in 0..x_mats.len() {
        for j in (i + 1)..x_mats.len() {
            let m = mat_commutator(&x_mats[i], &x_mats[j]);
            spec.set_bracket_xx(i, j, into_coords(&m, &g0_of_cell))
                .expect("indices in range");
        }
    }
    for i in 0..x_mats.len() {
        for a in 0..y_mats.len() {
            let m = mat_commutator(&x_mats[i], &y_mats[a]);
            spec.set_bracket_xy(i, a, into_coords(&m, &g1_of_cell))
                .expect("indices in range");
        }
    }
    for a in 0..y_mats.len() {
        for b in a..y_mats.len() {
            for c in b..y_mats.len() {
                let m = symmetrized_product(&y_mats[a], &y_mats[b], &y_mats[c]);
                spec.set_triple_y(a, b, c, into_coords(&m, &g0_of_cell))
                    .expect("indices in range");
            }
        }
    }

    let mut matrices = BTreeMap::new();
    for (name, mat) in g0_names.iter().zip(&x_mats) {
        matrices.insert(name.clone(), mat.clone());
    }
    for (name, mat) in g1_names.iter().zip(&y_mats) {
        matrices.insert(name.clone(), mat.clone());
    }
    (spec, MatrixRep { dims: (m1, m2, m3), matrices })
}

/// Sum of the six ordered products of three matrices.
fn symmetrized_product(a: &Matrix, b: &Matrix, c: &Matrix) -> Matrix {
    let mut out = mat_zero(a.len());
    for (x, y, z) in [(a, b, c), (a, c, b), (b, a, c), (b, c, a), (c, a, b), (c, b, a)] {
        mat_add_into(&mut out, &mat_mul(&mat_mul(x, y), z), false);
    }
    out
}

/// Check that a matrix assignment respects both brackets and the triple
/// bracket (the triple image must equal the six-term symmetrized product).
pub fn check_representation(
    spec: &AlgebraSpec,
    rep: &MatrixRep,
) -> Result<ValidationReport, StructureError> {
    let total = rep.dims.0 + rep.dims.1 + rep.dims.2;
    let matrix_of = |name: &String| -> Result<&Matrix, StructureError> {
        let m = rep
            .matrices
            .get(name)
            .ok_or_else(|| StructureError::MissingMatrix(name.clone()))?;
        if m.len() != total || m.iter().any(|row| row.len() != total) {
            return Err(StructureError::MatrixSize {
                name: name.clone(),
                got: m.len(),
                want: total,
            });
        }
        Ok(m)
    };
    let x_mats: Vec<&Matrix> =
        spec.g0_names().iter().map(matrix_of).collect::<Result<_, _>>()?;
    let y_mats: Vec<&Matrix> =
        spec.g1_names().iter().map(matrix_of).collect::<Result<_, _>>()?;

    let image_g0 = |coords: &[(usize, CycQ)]| -> Matrix {
        let mut out = mat_zero(total);
        for (idx, coeff) in coords {
            for (r, row) in x_mats[*idx].iter().enumerate() {
                for (c, v) in row.iter().enumerate() {
                    if !v.is_zero() {
                        out[r][c] += &(coeff * v);
                    }
                }
            }
        }
        out
    };
    let image_g1 = |coords: &[(usize, CycQ)]| -> Matrix {
        let mut out = mat_zero(total);
        for (idx, coeff) in coords {
            for (r, row) in y_mats[*idx].iter().enumerate() {
                for (c, v) in row.iter().enumerate() {
                    if !v.is_zero() {
                        out[r][c] += &(coeff * v);
                    }
                }
            }
        }
        out
    };

    let mut checks = Vec::new();

    let mut failure: Option<Counterexample> = None;
    'xx: for i in 0..x_mats.len() {
        for j in (i + 1)..x_mats.len() {
            let mut residual = mat_commutator(x_mats[i], x_mats[j]);
            mat_add_into(&mut residual, &image_g0(&spec.bracket_xx(i, j)), true);
            let entries = mat_nonzero_entries(&residual);
            if !entries.is_empty() {
                failure = Some(Counterexample {
                    generators: vec![spec.g0_names()[i].clone(), spec.g0_names()[j].clone()],
                    residual: entries,
                });
                break 'xx;
            }
        }
    }
    checks.push(CheckResult {
        name: "rep-even-bracket",
        passed: failure.is_none(),
        counterexample: failure,
    });

    let mut failure: Option<Counterexample> = None;
    'xy: for i in 0..x_mats.len() {
        for a in 0..y_mats.len() {
            let mut residual = mat_commutator(x_mats[i], y_mats[a]);
            mat_add_into(&mut residual, &image_g1(&spec.bracket_xy(i, a)), true);
            let entries = mat_nonzero_entries(&residual);
            if !entries.is_empty() {
                failure = Some(Counterexample {
                    generators: vec![spec.g0_names()[i].clone(), spec.g1_names()[a].clone()],
                    residual: entries,
                });
                break 'xy;
            }
        }
    }
    checks.push(CheckResult {
        name: "rep-action",
        passed: failure.is_none(),
        counterexample: failure,
    });

    let mut failure: Option<Counterexample> = None;
    'yyy: for a in 0..y_mats.len() {
        for b in a..y_mats.len() {
            for c in b..y_mats.len() {
                let mut residual = symmetrized_product(y_mats[a], y_mats[b], y_mats[c]);
                mat_add_into(&mut residual, &image_g0(&spec.triple_y(a, b, c)), true);
                let entries = mat_nonzero_entries(&residual);
                if !entries.is_empty() {
                    failure = Some(Counterexample {
                        generators: vec![
                            spec.g1_names()[a].clone(),
                            spec.g1_names()[b].clone(),
                            spec.g1_names()[c].clone(),
                        ],
                        residual: entries,
                    });
                    break 'yyy;
                }
            }
        }
    }
    checks.push(CheckResult {
        name: "rep-triple-bracket",
        passed: failure.is_none(),
        counterexample: failure,
    });

    Ok(ValidationReport { checks })
}

/// Built-in registry used by the CLI's `builtin:NAME` syntax.
pub fn builtin(name: &str) -> Option<AlgebraSpec> {
    match name {
        "iso3_1_1" => Some(builtin_iso3(2)),
        "iso3_1_2" => Some(builtin_iso3(3)),
        "iso3_1_3" => Some(builtin_iso3(4)),
        "killing_rank1" => Some(killing_rank1()),
        "matrix_1_1_1" => Some(builtin_matrix_rep(1, 1, 1).0),
        _ => None,
    }
}

pub const BUILTIN_NAMES: &[&str] =
    &["iso3_1_1", "iso3_1_2", "iso3_1_3", "killing_rank1", "matrix_1_1_1"];

// ---------------------------------------------------------------------------
// File format
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct RawTerm {
    gen: String,
    coeff: String,
}

#[derive(Serialize, Deserialize)]
struct RawBracket {
    left: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    mid: Option<String>,
    right: String,
    out: Vec<RawTerm>,
}

#[derive(Serialize, Deserialize)]
struct RawAlgebra {
    g0: Vec<String>,
    g1: Vec<String>,
    #[serde(default)]
    c00: Vec<RawBracket>,
    #[serde(default)]
    c01: Vec<RawBracket>,
    #[serde(default)]
    c111: Vec<RawBracket>,
}

impl AlgebraSpec {
    /// Parse the JSON algebra-definition format: `g0`/`g1` name arrays and
    /// `c00`/`c01`/`c111` bracket records `{left, [mid,] right, out}` with
    /// coefficients in the scalar grammar.
    pub fn from_json_str(text: &str) -> Result<Self, StructureError> {
        let raw: RawAlgebra =
            serde_json::from_str(text).map_err(|e| StructureError::Format(e.to_string()))?;
        let mut spec = AlgebraSpec::new(raw.g0, raw.g1)?;

        let resolve_g0 = |spec: &AlgebraSpec, name: &str| {
            spec.g0_index(name)
                .ok_or_else(|| StructureError::UnknownGenerator(name.to_string()))
        };
        let resolve_g1 = |spec: &AlgebraSpec, name: &str| {
            spec.g1_index(name)
                .ok_or_else(|| StructureError::UnknownGenerator(name.to_string()))
        };
        let parse_out = |spec: &AlgebraSpec,
                         out: &[RawTerm],
                         odd_target: bool|
         -> Result<Vec<(usize, CycQ)>, StructureError> {
            let mut coords = Vec::new();
            for term in out {
                let idx = if odd_target {
                    resolve_g1(spec, &term.gen)?
                } else {
                    resolve_g0(spec, &term.gen)?
                };
                let coeff = CycQ::parse(&term.coeff).map_err(|source| {
                    StructureError::Coefficient { text: term.coeff.clone(), source }
                })?;
                coords.push((idx, coeff));
            }
            Ok(coords)
        };

        let mut seen00 = BTreeSet::new();
        for record in &raw.c00 {
            if record.mid.is_some() {
                return Err(StructureError::Format(
                    "c00 records must not have a `mid` field".into(),
                ));
            }
            let i = resolve_g0(&spec, &record.left)?;
            let j = resolve_g0(&spec, &record.right)?;
            let key = (i.min(j), i.max(j));
            if !seen00.insert(key) {
                return Err(StructureError::ConflictingBracket(format!(
                    "[{}, {}] defined twice",
                    record.left, record.right
                )));
            }
            spec.set_bracket_xx(i, j, parse_out(&spec, &record.out, false)?)?;
        }
        let mut seen01 = BTreeSet::new();
        for record in &raw.c01 {
            if record.mid.is_some() {
                return Err(StructureError::Format(
                    "c01 records must not have a `mid` field".into(),
                ));
            }
            let i = resolve_g0(&spec, &record.left)?;
            let a = resolve_g1(&spec, &record.right)?;
            if !seen01.insert((i, a)) {
                return Err(StructureError::ConflictingBracket(format!(
                    "[{}, {}] defined twice",
                    record.left, record.right
                )));
            }
            spec.set_bracket_xy(i, a, parse_out(&spec, &record.out, true)?)?;
        }
        let mut seen111 = BTreeSet::new();
        for record in &raw.c111 {
            let mid = record.mid.as_ref().ok_or_else(|| {
                StructureError::Format("c111 records need a `mid` field".into())
            })?;
            let a = resolve_g1(&spec, &record.left)?;
            let b = resolve_g1(&spec, mid)?;
            let c = resolve_g1(&spec, &record.right)?;
            let mut key = [a, b, c];
            key.sort_unstable();
            if !seen111.insert(key) {
                return Err(StructureError::ConflictingBracket(format!(
                    "{{{}, {}, {}}} defined twice",
                    record.left, mid, record.right
                )));
            }
            spec.set_triple_y(a, b, c, parse_out(&spec, &record.out, false)?)?;
        }
        Ok(spec)
    }

    /// Serialize to the JSON algebra-definition format (pretty-printed).
    pub fn to_json_string(&self) -> String {
        let term = |names: &[String], idx: usize, c: &CycQ| RawTerm {
            gen: names[idx].clone(),
            coeff: c.to_string(),
        };
        let raw = RawAlgebra {
            g0: self.g0_names.clone(),
            g1: self.g1_names.clone(),
            c00: self
                .c00
                .iter()
                .map(|(&(i, j), dense)| RawBracket {
                    left: self.g0_names[i].clone(),
                    mid: None,
                    right: self.g0_names[j].clone(),
                    out: sparse(dense)
                        .iter()
                        .map(|(k, c)| term(&self.g0_names, *k, c))
                        .collect(),
                })
                .collect(),
            c01: self
                .c01
                .iter()
                .map(|(&(i, a), dense)| RawBracket {
                    left: self.g0_names[i].clone(),
                    mid: None,
                    right: self.g1_names[a].clone(),
                    out: sparse(dense)
                        .iter()
                        .map(|(k, c)| term(&self.g1_names, *k, c))
                        .collect(),
                })
                .collect(),
            c111: self
                .c111
                .iter()
                .map(|(&(a, b, c), dense)| RawBracket {
                    left: self.g1_names[a].clone(),
                    mid: Some(self.g1_names[b].clone()),
                    right: self.g1_names[c].clone(),
                    out: sparse(dense)
                        .iter()
                        .map(|(k, co)| term(&self.g0_names, *k, co))
                        .collect(),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&raw).expect("serialization cannot fail")
    }
}
