//! Exact truncated power series in z_1..z_k and q.
//!
//! Truncation is by q-degree only. Every z in the generating functions handled
//! here travels with at least one power of q, so bounding q bounds everything.
//! Coefficients are `i64` and every operation checks for overflow.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};

/// A monomial z^e q^k. Ordered by q-exponent first, then the z exponent vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub q: u32,
    pub z: Vec<u32>,
}

impl Monomial {
    pub fn new(z: Vec<u32>, q: u32) -> Self {
        Self { q, z }
    }

    fn times(&self, other: &Monomial) -> Monomial {
        Monomial {
            q: self.q + other.q,
            z: self.z.iter().zip(&other.z).map(|(a, b)| a + b).collect(),
        }
    }
}

/// A polynomial in z_1..z_k and q with all terms of q-degree above `trunc` discarded.
///
/// Zero coefficients are never stored, so equal series compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    num_z: usize,
    trunc: u32,
    coeffs: BTreeMap<Monomial, i64>,
}

impl TruncatedSeries {
    pub fn zero(num_z: usize, trunc: u32) -> Self {
        Self { num_z, trunc, coeffs: BTreeMap::new() }
    }

    pub fn one(num_z: usize, trunc: u32) -> Self {
        let mut s = Self::zero(num_z, trunc);
        s.coeffs.insert(Monomial::new(vec![0; num_z], 0), 1);
        s
    }

    /// c · z^z · q^q, or zero when q exceeds the truncation.
    pub fn monomial(num_z: usize, trunc: u32, z: &[u32], q: u32, c: i64) -> Result<Self> {
        if z.len() != num_z {
            return Err(Error::VariableMismatch { left: num_z, right: z.len() });
        }
        let mut s = Self::zero(num_z, trunc);
        if q <= trunc && c != 0 {
            s.coeffs.insert(Monomial::new(z.to_vec(), q), c);
        }
        Ok(s)
    }

    /// The single power z_var · q^q (or q^q alone when `var` is `None`).
    pub fn power(num_z: usize, trunc: u32, var: Option<usize>, z_power: u32, q: u32) -> Result<Self> {
        let z = unit_exponents(num_z, var, z_power)?;
        Self::monomial(num_z, trunc, &z, q, 1)
    }

    /// Sums terms, merging repeated monomials.
    pub fn from_terms<I>(num_z: usize, trunc: u32, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, u32, i64)>,
    {
        let mut s = Self::zero(num_z, trunc);
        for (z, q, c) in terms {
            if z.len() != num_z {
                return Err(Error::VariableMismatch { left: num_z, right: z.len() });
            }
            if q <= trunc {
                s.accumulate(Monomial::new(z, q), c)?;
            }
        }
        Ok(s)
    }

    pub fn num_z(&self) -> usize {
        self.num_z
    }

    pub fn trunc(&self) -> u32 {
        self.trunc
    }

    /// Number of nonzero coefficients.
    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Nonzero terms in dump order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, i64)> {
        self.coeffs.iter().map(|(k, &v)| (k, v))
    }

    /// Coefficient of z^z q^q. Asking above the truncation is an error, not zero.
    pub fn coeff(&self, z: &[u32], q: u32) -> Result<i64> {
        if q > self.trunc {
            return Err(Error::OutOfTruncation { requested: q, trunc: self.trunc });
        }
        if z.len() != self.num_z {
            return Err(Error::VariableMismatch { left: self.num_z, right: z.len() });
        }
        let key = Monomial::new(z.to_vec(), q);
        Ok(self.coeffs.get(&key).copied().unwrap_or(0))
    }

    /// Drops all terms above q^trunc (no-op if already coarser).
    pub fn truncated(&self, trunc: u32) -> Self {
        let trunc = trunc.min(self.trunc);
        Self {
            num_z: self.num_z,
            trunc,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(k, _)| k.q <= trunc)
                .map(|(k, &v)| (k.clone(), v))
                .collect(),
        }
    }

    fn accumulate(&mut self, key: Monomial, c: i64) -> Result<()> {
        use std::collections::btree_map::Entry;
        match self.coeffs.entry(key) {
            Entry::Vacant(e) => {
                if c != 0 {
                    e.insert(c);
                }
            }
            Entry::Occupied(mut e) => {
                let v = e.get().checked_add(c).ok_or(Error::Overflow("series addition"))?;
                if v == 0 {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
        Ok(())
    }

    fn check_compatible(&self, other: &Self) -> Result<u32> {
        if self.num_z != other.num_z {
            return Err(Error::VariableMismatch { left: self.num_z, right: other.num_z });
        }
        Ok(self.trunc.min(other.trunc))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let trunc = self.check_compatible(other)?;
        let mut out = self.truncated(trunc);
        for (k, &v) in other.coeffs.range(..Monomial::new(Vec::new(), trunc + 1)) {
            out.accumulate(k.clone(), v)?;
        }
        Ok(out)
    }

    pub fn neg(&self) -> Result<Self> {
        self.scale(-1)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg()?)
    }

    pub fn scale(&self, c: i64) -> Result<Self> {
        if c == 0 {
            return Ok(Self::zero(self.num_z, self.trunc));
        }
        let mut out = Self::zero(self.num_z, self.trunc);
        for (k, &v) in &self.coeffs {
            let v = v.checked_mul(c).ok_or(Error::Overflow("series scaling"))?;
            out.coeffs.insert(k.clone(), v);
        }
        Ok(out)
    }

    /// Truncated product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        let trunc = self.check_compatible(other)?;
        let mut out = Self::zero(self.num_z, trunc);
        for (ka, &va) in &self.coeffs {
            if ka.q > trunc {
                break;
            }
            for (kb, &vb) in &other.coeffs {
                if ka.q + kb.q > trunc {
                    break;
                }
                let v = va.checked_mul(vb).ok_or(Error::Overflow("series multiplication"))?;
                out.accumulate(ka.times(kb), v)?;
            }
        }
        Ok(out)
    }

    /// Product of many series; `one` for an empty list.
    pub fn product<'a, I>(num_z: usize, trunc: u32, factors: I) -> Result<Self>
    where
        I: IntoIterator<Item = &'a TruncatedSeries>,
    {
        factors
            .into_iter()
            .try_fold(Self::one(num_z, trunc), |acc, f| acc.mul(f))
    }

    /// Multiplies by z^z q^q. A series known up to q^T times q^k is known up
    /// to q^(T+k), so the truncation rises by `q`.
    pub fn shift(&self, z: &[u32], q: u32) -> Result<Self> {
        if z.len() != self.num_z {
            return Err(Error::VariableMismatch { left: self.num_z, right: z.len() });
        }
        let trunc = self.trunc.checked_add(q).ok_or(Error::Overflow("series shift"))?;
        let by = Monomial::new(z.to_vec(), q);
        Ok(Self {
            num_z: self.num_z,
            trunc,
            coeffs: self.coeffs.iter().map(|(k, &v)| (k.times(&by), v)).collect(),
        })
    }

    /// Sets every z_i to one variable z: the exponent becomes the total z-degree.
    pub fn collapse_z(&self) -> Result<Self> {
        let terms = self
            .coeffs
            .iter()
            .map(|(k, &v)| (vec![k.z.iter().sum()], k.q, v));
        Self::from_terms(1, self.trunc, terms)
    }

    /// Substitutes z_i → 1 for every i, leaving a series in q alone.
    pub fn at_z_one(&self) -> Result<Self> {
        let terms = self.coeffs.iter().map(|(k, &v)| (Vec::new(), k.q, v));
        Self::from_terms(0, self.trunc, terms)
    }

    /// Every stored coefficient is positive.
    pub fn all_nonnegative(&self) -> bool {
        self.coeffs.values().all(|&v| v > 0)
    }

    /// Canonical text dump, one `z1^a z2^b q^k : c` line per term.
    pub fn dump(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in &self.coeffs {
            for (i, &e) in k.z.iter().enumerate() {
                if e > 0 {
                    write!(f, "z{}^{} ", i + 1, e)?;
                }
            }
            writeln!(f, "q^{} : {}", k.q, v)?;
        }
        Ok(())
    }
}

fn unit_exponents(num_z: usize, var: Option<usize>, power: u32) -> Result<Vec<u32>> {
    let mut z = vec![0; num_z];
    if let Some(i) = var {
        if i >= num_z {
            return Err(Error::Parameter(format!(
                "variable index {i} out of range for {num_z} z variables"
            )));
        }
        z[i] = power;
    }
    Ok(z)
}

/// 1/(1 − z_var q^a) = Σ_k z_var^k q^{ak}, truncated at q^trunc.
pub fn geometric_factor(num_z: usize, var: Option<usize>, a: u32, trunc: u32) -> Result<TruncatedSeries> {
    if a == 0 {
        return Err(Error::Parameter(
            "geometric factor with q-exponent 0 does not truncate".into(),
        ));
    }
    let mut terms = Vec::new();
    let mut k = 0u32;
    while let Some(q) = a.checked_mul(k).filter(|&q| q <= trunc) {
        terms.push((unit_exponents(num_z, var, k)?, q, 1));
        k += 1;
    }
    TruncatedSeries::from_terms(num_z, trunc, terms)
}

/// One factor of a product chain: `numerator / (1 − z_var q^a)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainFactor {
    pub var: Option<usize>,
    pub q_exp: u32,
    /// z-exponent vector and q-exponent of the numerator monomial.
    pub numerator: (Vec<u32>, u32),
}

impl ChainFactor {
    /// 1/(1 − z_var q^a).
    pub fn denominator(num_z: usize, var: Option<usize>, a: u32) -> Result<Self> {
        Ok(Self { var, q_exp: a, numerator: (vec![0; num_z], 0) })
    }

    /// z_var q^a / (1 − z_var q^a): at least one copy of z_var q^a.
    pub fn at_least_one(num_z: usize, var: Option<usize>, a: u32) -> Result<Self> {
        Ok(Self { var, q_exp: a, numerator: (unit_exponents(num_z, var, 1)?, a) })
    }
}

/// `prefactor · Π numerator_i / (1 − z_{var_i} q^{a_i})`, truncated at q^trunc.
pub fn pochhammer_chain(
    num_z: usize,
    prefactor: (&[u32], u32),
    factors: &[ChainFactor],
    trunc: u32,
) -> Result<TruncatedSeries> {
    // Multiply all numerators first; a high monomial short-circuits the chain.
    let mut z = prefactor.0.to_vec();
    if z.len() != num_z {
        return Err(Error::VariableMismatch { left: num_z, right: z.len() });
    }
    let mut q = u64::from(prefactor.1);
    for f in factors {
        if f.numerator.0.len() != num_z {
            return Err(Error::VariableMismatch { left: num_z, right: f.numerator.0.len() });
        }
        for (acc, e) in z.iter_mut().zip(&f.numerator.0) {
            *acc += e;
        }
        q += u64::from(f.numerator.1);
    }
    if q > u64::from(trunc) {
        return Ok(TruncatedSeries::zero(num_z, trunc));
    }
    let q = q as u32;
    let remaining = trunc - q;
    let mut acc = TruncatedSeries::one(num_z, remaining);
    for f in factors {
        if f.q_exp <= remaining {
            acc = acc.mul(&geometric_factor(num_z, f.var, f.q_exp, remaining)?)?;
        }
    }
    acc.shift(&z, q)
}

/// The finite product (z_var q^a; q^step)_count = Π_{j<count} (1 − z_var q^{a + j·step}).
pub fn pochhammer(
    num_z: usize,
    var: Option<usize>,
    a: u32,
    step: u32,
    count: u32,
    trunc: u32,
) -> Result<TruncatedSeries> {
    let mut acc = TruncatedSeries::one(num_z, trunc);
    for j in 0..count {
        let e = a + j * step;
        let factor = TruncatedSeries::one(num_z, trunc)
            .sub(&TruncatedSeries::power(num_z, trunc, var, 1, e)?)?;
        acc = acc.mul(&factor)?;
    }
    Ok(acc)
}

/// 1/(z_var q^a; q^step)_count.
pub fn reciprocal_pochhammer(
    num_z: usize,
    var: Option<usize>,
    a: u32,
    step: u32,
    count: u32,
    trunc: u32,
) -> Result<TruncatedSeries> {
    let factors = (0..count)
        .map(|j| ChainFactor::denominator(num_z, var, a + j * step))
        .collect::<Result<Vec<_>>>()?;
    pochhammer_chain(num_z, (&vec![0; num_z], 0), &factors, trunc)
}
