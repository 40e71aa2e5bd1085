//! Closed-form generating functions for the (Σ, 2) family at modulus 3, the
//! (Σ, 1, 0, …, 0) family at general modulus, and their length-type companions.
//!
//! Every function here is a finite sum of terms of the form
//! `Laurent polynomial / product of (1 − z^ε q^a)`, with the single variable z
//! marking Σ₁. A term is evaluated only when its numerator has no negative
//! exponent, so the result is an honest power series.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::Modulus;
use crate::qseries::{geometric_factor, TruncatedSeries};

/// One factor 1/(1 − z q^a) (with z) or 1/(1 − q^a) (without).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Denominator {
    pub with_z: bool,
    pub q: u32,
}

/// Σ c·z^a q^b over the numerator, divided by the denominator product.
/// Numerator exponents are signed so that a printed term can be entered
/// verbatim and rejected if it does not cancel to a polynomial.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RationalTerm {
    pub numerator: Vec<(i64, i64, i64)>,
    pub denominator: Vec<Denominator>,
}

impl RationalTerm {
    /// The product of the alternating chain zq/(1−zq) · q^m/(1−q^m) · zq^{m+1}/(1−zq^{m+1}) ⋯
    /// with `z_factors` z-factors and `q_factors` pure-q factors, times `bracket`.
    fn chain(m: u32, z_factors: u32, q_factors: u32, bracket: Vec<(i64, i64, i64)>) -> Self {
        let (mi, zf, qf) = (i64::from(m), i64::from(z_factors), i64::from(q_factors));
        // Σ_{j<zf} (mj+1) + Σ_{j<qf} (mj+m)
        let q0 = mi * zf * (zf - 1) / 2 + zf + mi * qf * (qf + 1) / 2;
        let numerator = bracket
            .into_iter()
            .map(|(a, b, c)| (a + zf, b + q0, c))
            .collect();
        let mut denominator = Vec::new();
        for j in 0..z_factors {
            denominator.push(Denominator { with_z: true, q: m * j + 1 });
        }
        for j in 0..q_factors {
            denominator.push(Denominator { with_z: false, q: m * j + m });
        }
        Self { numerator, denominator }
    }

    /// Appends 1/(1 − z^ε q^a).
    fn over(mut self, with_z: bool, q: u32) -> Self {
        self.denominator.push(Denominator { with_z, q });
        self
    }

    /// Keeps only the numerator monomials whose z-exponent satisfies `keep`.
    fn filter_z(&self, keep: impl Fn(i64) -> bool, z_shift: i64) -> Self {
        Self {
            numerator: self
                .numerator
                .iter()
                .copied()
                .filter(|&(a, _, _)| keep(a - z_shift))
                .collect(),
            denominator: self.denominator.clone(),
        }
    }

    /// Expands the term in z and q up to q^trunc.
    pub fn evaluate(&self, trunc: u32) -> Result<TruncatedSeries> {
        let mut mons = Vec::new();
        for &(a, b, c) in &self.numerator {
            if a < 0 || b < 0 {
                return Err(Error::Parameter(format!(
                    "term has numerator z^{a} q^{b} with a negative exponent"
                )));
            }
            if c != 0 && b <= i64::from(trunc) {
                mons.push((a as u32, b as u32, c));
            }
        }
        let Some(low) = mons.iter().map(|&(_, b, _)| b).min() else {
            return Ok(TruncatedSeries::zero(1, trunc));
        };
        let remaining = trunc - low;
        let mut den = TruncatedSeries::one(1, remaining);
        for d in &self.denominator {
            if d.q == 0 {
                return Err(Error::Parameter("denominator 1 − q^0".into()));
            }
            if d.q <= remaining {
                let var = d.with_z.then_some(0);
                den = den.mul(&geometric_factor(1, var, d.q, remaining)?)?;
            }
        }
        let mut out = TruncatedSeries::zero(1, trunc);
        for (a, b, c) in mons {
            let piece = den.shift(&[a], b)?.truncated(trunc).scale(c)?;
            out = out.add(&piece)?;
        }
        Ok(out)
    }
}

/// Number of chain blocks whose lowest term mn² + n stays within `trunc`.
fn auto_units(m: Modulus, trunc: u32) -> u32 {
    let m = u64::from(m.get());
    let mut n = 0u64;
    while m * (n + 1) * (n + 1) + n < u64::from(trunc) {
        n += 1;
    }
    n as u32
}

/// Block n of the pure-type generator: zq/(1−zq) · q^m/(1−q^m) ⋯ q^{mn}/(1−q^{mn}) · 1/(1−zq^{mn+1}).
fn pure_block(m: u32, n: u32) -> RationalTerm {
    RationalTerm::chain(m, n, n, vec![(0, 0, 1)]).over(true, m * n + 1)
}

/// Σ_{n ≤ max_units} of the pure-type blocks: the generating function of
/// partitions in P with type (Σ, 0, …, 0), z marking Σ.
pub fn pure_type_generator(m: Modulus, max_units: u32, trunc: u32) -> Result<TruncatedSeries> {
    let mut out = TruncatedSeries::zero(1, trunc);
    for n in 0..=max_units {
        out = out.add(&pure_block(m.get(), n).evaluate(trunc)?)?;
    }
    Ok(out)
}

/// [`pure_type_generator`] with every block that can reach q^trunc.
pub fn pure_type_generator_auto(m: Modulus, trunc: u32) -> Result<TruncatedSeries> {
    pure_type_generator(m, auto_units(m, trunc), trunc)
}

/// Which family of (Σ, 2) terms a [`TermSpec`] belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Lemma {
    /// Case A, length 3n + 3; term d is distance d, 0 ≤ d ≤ n − 1.
    L34,
    /// Case A, length 3n + 2; term d is distance d, 0 ≤ d ≤ n − 1.
    L35,
    /// Case A, length 3n + 1; term d is distance d, 0 ≤ d ≤ n − 2.
    L36,
    /// Case B; terms 1 to 4.
    L37,
}

impl fmt::Display for Lemma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Lemma::L34 => "L34",
            Lemma::L35 => "L35",
            Lemma::L36 => "L36",
            Lemma::L37 => "L37",
        })
    }
}

/// A single displayed term of the Case A / Case B lists.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TermSpec {
    pub lemma: Lemma,
    pub n: u32,
    pub index: u32,
}

/// Where the special unit of a Case B partition sits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, PartialOrd, Ord)]
pub enum SpecialPosition {
    Last,
    NotLast,
}

impl TermSpec {
    pub fn new(lemma: Lemma, n: u32, index: u32) -> Self {
        Self { lemma, n, index }
    }

    /// The condition on n under which the term is listed.
    pub fn validity(&self) -> String {
        let d = self.index;
        match (self.lemma, d) {
            (Lemma::L34 | Lemma::L35, 0) => "n>=1".into(),
            (Lemma::L34 | Lemma::L35, d) => format!("n>={}", d + 1),
            (Lemma::L36, d) => format!("n>={}", d + 2),
            (Lemma::L37, 1 | 3) => "n>=1".into(),
            (Lemma::L37, _) => "n>=0".into(),
        }
    }

    pub fn check(&self) -> Result<()> {
        let (n, d) = (self.n, self.index);
        let ok = match self.lemma {
            Lemma::L34 | Lemma::L35 => n >= 1 && d < n,
            Lemma::L36 => n >= 2 && d + 2 <= n,
            Lemma::L37 => match d {
                1 | 3 => n >= 1,
                2 | 4 => true,
                _ => false,
            },
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Parameter(format!(
                "{} term ({}) at n={} violates its range ({}, index within the printed list)",
                self.lemma,
                d,
                n,
                self.validity()
            )))
        }
    }

    /// Length of the partitions the term counts.
    pub fn length(&self) -> u32 {
        let n3 = 3 * self.n;
        match (self.lemma, self.index) {
            (Lemma::L34, _) | (Lemma::L37, 1 | 2) => n3 + 3,
            (Lemma::L35, _) | (Lemma::L37, 4) => n3 + 2,
            _ => n3 + 1,
        }
    }

    /// Distance between the special units (Case A terms only).
    pub fn distance(&self) -> Option<u32> {
        (self.lemma != Lemma::L37).then_some(self.index)
    }

    /// Position of the single special unit (Case B terms only).
    pub fn special_position(&self) -> Option<SpecialPosition> {
        match (self.lemma, self.index) {
            (Lemma::L37, 1 | 3) => Some(SpecialPosition::NotLast),
            (Lemma::L37, _) => Some(SpecialPosition::Last),
            _ => None,
        }
    }

    /// The term as an unevaluated rational expression.
    pub fn rational(&self) -> Result<RationalTerm> {
        self.check()?;
        let n = i64::from(self.n);
        let d = i64::from(self.index);
        let mut br: Vec<(i64, i64, i64)> = Vec::new();
        // Σ_{k=1}^{n−1} (1/(z²q^{3k+1}) + (1 − q^{3k})/(zq^{3k}))
        let distance_zero_inner = |br: &mut Vec<(i64, i64, i64)>| {
            for k in 1..n {
                br.push((-2, -(3 * k + 1), 1));
                br.push((-1, -3 * k, 1));
                br.push((-1, 0, -1));
            }
        };
        // q²/z² + q³(1 − q^{3n})/z
        let distance_zero_last = |br: &mut Vec<(i64, i64, i64)>| {
            br.push((-2, 2, 1));
            br.push((-1, 3, 1));
            br.push((-1, 3 * n + 3, -1));
        };
        // Σ_{k=1}^{n−d−1} 1/(z²q^{6k+3d+1})
        let inner = |br: &mut Vec<(i64, i64, i64)>| {
            for k in 1..(n - d) {
                br.push((-2, -(6 * k + 3 * d + 1), 1));
            }
        };
        let last = |br: &mut Vec<(i64, i64, i64)>| br.push((-2, -(3 * n - 3 * d - 2), 1));

        let long = |br| RationalTerm::chain(3, self.n + 1, self.n + 1, br);
        let short = |br| RationalTerm::chain(3, self.n + 1, self.n, br);
        Ok(match (self.lemma, self.index) {
            (Lemma::L34, 0) => {
                distance_zero_inner(&mut br);
                distance_zero_last(&mut br);
                long(br)
            }
            (Lemma::L34, _) => {
                inner(&mut br);
                last(&mut br);
                long(br)
            }
            (Lemma::L35, 0) => {
                distance_zero_last(&mut br);
                short(br)
            }
            (Lemma::L35, _) => {
                last(&mut br);
                short(br)
            }
            (Lemma::L36, 0) => {
                distance_zero_inner(&mut br);
                short(br)
            }
            (Lemma::L36, _) => {
                inner(&mut br);
                short(br)
            }
            (Lemma::L37, 1) => long(vec![(-1, 0, n)]),
            (Lemma::L37, 2) => long(vec![(-1, 3 * n + 3, 1)]),
            (Lemma::L37, 3) => short(vec![(-1, 0, n)]),
            (Lemma::L37, _) => short(vec![(-1, 3 * n + 3, 1)]),
        })
    }

    /// Every term listed for unit parameter n, in printed order.
    pub fn all_for(lemma: Lemma, n: u32) -> Vec<TermSpec> {
        let indices: Vec<u32> = match lemma {
            Lemma::L34 | Lemma::L35 => (0..n).collect(),
            Lemma::L36 => (0..n.saturating_sub(1)).collect(),
            Lemma::L37 => (1..=4).filter(|&i| n >= 1 || i % 2 == 0).collect(),
        };
        indices.into_iter().map(|i| TermSpec::new(lemma, n, i)).collect()
    }
}

/// Evaluates one displayed term.
pub fn lemma_term(spec: TermSpec, trunc: u32) -> Result<TruncatedSeries> {
    spec.rational()?.evaluate(trunc)
}

/// The (Σ, 2) generating function assembled term by term.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigmaTwoAssembly {
    pub case_a: TruncatedSeries,
    pub case_b: TruncatedSeries,
    /// Every sub-term carrying 1/z: the Case A (1 − q^{3k})/z pieces and all of Case B.
    pub inverse_z: TruncatedSeries,
    /// Every sub-term carrying 1/z².
    pub inverse_z2: TruncatedSeries,
    /// pure · q⁴/(1 − q³), the closed form of the 1/z part.
    pub inverse_z_closed: TruncatedSeries,
    /// pure · q^{10}/((1 − q³)(1 − q⁶)), the closed form of the 1/z² part.
    pub inverse_z2_closed: TruncatedSeries,
    /// pure · q⁴/((1 − q³)(1 − q⁶)).
    pub target: TruncatedSeries,
}

impl SigmaTwoAssembly {
    pub fn total(&self) -> Result<TruncatedSeries> {
        self.case_a.add(&self.case_b)
    }
}

/// Largest unit parameter n whose terms can reach q^trunc.
pub fn auto_max_n(trunc: u32) -> u32 {
    // a partition of length 3n + 1 has weight at least 3n + 1
    trunc / 3 + 1
}

/// Sums every Case A and Case B term with unit parameter up to `max_n`.
pub fn sigma_two_assembly(trunc: u32, max_n: u32) -> Result<SigmaTwoAssembly> {
    let mut case_a = TruncatedSeries::zero(1, trunc);
    let mut case_b = TruncatedSeries::zero(1, trunc);
    let mut inverse_z = TruncatedSeries::zero(1, trunc);
    let mut inverse_z2 = TruncatedSeries::zero(1, trunc);
    for n in 0..=max_n {
        for lemma in [Lemma::L34, Lemma::L35, Lemma::L36, Lemma::L37] {
            for spec in TermSpec::all_for(lemma, n) {
                let term = spec.rational()?;
                let zf = i64::from(n) + 1;
                let one = term.filter_z(|a| a == -1, zf).evaluate(trunc)?;
                let two = term.filter_z(|a| a == -2, zf).evaluate(trunc)?;
                let both = one.add(&two)?;
                if lemma == Lemma::L37 {
                    case_b = case_b.add(&both)?;
                } else {
                    case_a = case_a.add(&both)?;
                }
                inverse_z = inverse_z.add(&one)?;
                inverse_z2 = inverse_z2.add(&two)?;
            }
        }
    }
    let pure = pure_type_generator_auto(Modulus::THREE, trunc)?;
    let geo3 = geometric_factor(1, None, 3, trunc)?;
    let geo6 = geometric_factor(1, None, 6, trunc)?;
    let inverse_z_closed = pure.mul(&geo3)?.shift(&[0], 4)?.truncated(trunc);
    let inverse_z2_closed = pure.mul(&geo3)?.mul(&geo6)?.shift(&[0], 10)?.truncated(trunc);
    let target = pure.mul(&geo3)?.mul(&geo6)?.shift(&[0], 4)?.truncated(trunc);
    Ok(SigmaTwoAssembly {
        case_a,
        case_b,
        inverse_z,
        inverse_z2,
        inverse_z_closed,
        inverse_z2_closed,
        target,
    })
}

/// Sum of the Case A terms alone; the 1/z and 1/z² aggregates live on [`SigmaTwoAssembly`].
pub fn case_a_generating_function(trunc: u32, max_n: u32) -> Result<TruncatedSeries> {
    Ok(sigma_two_assembly(trunc, max_n)?.case_a)
}

/// The three length classes of the (Σ, 1, 0, …, 0) family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SigmaOneTerm {
    /// Length mn + m.
    FullBlock,
    /// Length mn + 2.
    TwoPartTail,
    /// Length mn + 1.
    OnePartTail,
}

/// One length class of the (Σ, 1, 0, …, 0) generating function at unit parameter n.
/// Returns `None` when the class is empty for this n.
pub fn sigma_one_term(m: Modulus, kind: SigmaOneTerm, n: u32) -> Option<RationalTerm> {
    let mu = m.get();
    let mi = i64::from(mu);
    // Σ_{k=1}^{n} 1/(z q^{km−1})
    let shifts = (1..=i64::from(n)).map(|k| (-1, -(k * mi - 1), 1));
    match kind {
        SigmaOneTerm::FullBlock => {
            let mut br: Vec<_> = shifts.collect();
            br.push((-1, 1, 1));
            Some(RationalTerm::chain(mu, n + 1, n + 1, br))
        }
        SigmaOneTerm::TwoPartTail => {
            Some(RationalTerm::chain(mu, n, n, vec![(0, i64::from(mu * n + 2), 1)]).over(true, mu * n + 1))
        }
        SigmaOneTerm::OnePartTail => {
            (n >= 1).then(|| RationalTerm::chain(mu, n + 1, n, shifts.collect()))
        }
    }
}

/// The (Σ, 1, 0, …, 0) generating function summed over all length classes.
pub fn sigma_one_series(m: Modulus, trunc: u32) -> Result<TruncatedSeries> {
    if m.get() < 3 {
        return Err(Error::Parameter("the (Σ, 1, 0, …, 0) family needs m ≥ 3".into()));
    }
    let mut out = TruncatedSeries::zero(1, trunc);
    for n in 0..=trunc / m.get() + 1 {
        for kind in [SigmaOneTerm::FullBlock, SigmaOneTerm::TwoPartTail, SigmaOneTerm::OnePartTail] {
            if let Some(t) = sigma_one_term(m, kind, n) {
                out = out.add(&t.evaluate(trunc)?)?;
            }
        }
    }
    Ok(out)
}

/// pure · q²/(1 − q^m).
pub fn sigma_one_closed_form(m: Modulus, trunc: u32) -> Result<TruncatedSeries> {
    let pure = pure_type_generator_auto(m, trunc)?;
    Ok(pure
        .mul(&geometric_factor(1, None, m.get(), trunc)?)?
        .shift(&[0], 2)?
        .truncated(trunc))
}

/// Right-hand sides of the length-type companion identities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Companion {
    /// Σ b(l, 0; n) z^l q^n · q⁴/((1 − q³)(1 − q⁶)), modulus 3.
    Eq31,
    /// Σ b(0, l; n) z^l q^n · q²/((1 − q³)(1 − q⁶)), modulus 3.
    Eq32,
    /// Σ b(l e_i; n) z^l q^n · q^j/(1 − q^m).
    Eq33 { i: u32, j: u32 },
}

/// Partitions into parts ≡ i (mod m), z marking the number of parts.
fn residue_class_series(num_z: usize, var: Option<usize>, m: u32, i: u32, trunc: u32) -> Result<TruncatedSeries> {
    let mut acc = TruncatedSeries::one(num_z, trunc);
    let mut a = i;
    while a <= trunc {
        acc = acc.mul(&geometric_factor(num_z, var, a, trunc)?)?;
        a += m;
    }
    Ok(acc)
}

/// Evaluates a companion right-hand side; z marks the free length.
pub fn rhs_companion(m: Modulus, kind: Companion, trunc: u32) -> Result<TruncatedSeries> {
    let mu = m.get();
    let (residue, factor) = match kind {
        Companion::Eq31 | Companion::Eq32 => {
            if mu != 3 {
                return Err(Error::Parameter(format!("this companion is for modulus 3, got {mu}")));
            }
            let (residue, shift) = if kind == Companion::Eq31 { (1, 4) } else { (2, 2) };
            let f = geometric_factor(1, None, 3, trunc)?
                .mul(&geometric_factor(1, None, 6, trunc)?)?
                .shift(&[0], shift)?
                .truncated(trunc);
            (residue, f)
        }
        Companion::Eq33 { i, j } => {
            if i == 0 || j == 0 || i >= mu || j >= mu || i == j {
                return Err(Error::Parameter(format!(
                    "need 1 ≤ i, j ≤ {} with i ≠ j, got i={i}, j={j}",
                    mu - 1
                )));
            }
            let f = geometric_factor(1, None, mu, trunc)?.shift(&[0], j)?.truncated(trunc);
            (i, f)
        }
    };
    residue_class_series(1, Some(0), mu, residue, trunc)?.mul(&factor)
}

/// Product over residues i of the partitions into parts ≡ i (mod m), z_i marking their number.
pub fn factorized_q_generator(m: Modulus, trunc: u32) -> Result<TruncatedSeries> {
    let k = m.type_len();
    let mut acc = TruncatedSeries::one(k, trunc);
    for i in 1..m.get() {
        acc = acc.mul(&residue_class_series(k, Some((i - 1) as usize), m.get(), i, trunc)?)?;
    }
    Ok(acc)
}
