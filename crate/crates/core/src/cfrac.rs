//! Jung–Hirzebruch continued fractions and the integer data derived from them.
//!
//! Everything downstream (arrow degrees, relation shapes, chart exponents) is
//! driven by the label list `[α₁, …, αₙ]` of `r/a` and by the two integer
//! sequences `i` and `j` it generates.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::grading::Monomial;
use crate::quiver::KLayout;

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn narrow(v: u128, what: &'static str) -> Result<u64> {
    u64::try_from(v).map_err(|_| Error::Overflow(what))
}

/// The group `1/r(1,a)`, acting on `(x, y)` with weights `(1, a)` mod `r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct GroupParams {
    r: u64,
    a: u64,
}

impl GroupParams {
    pub fn new(r: u64, a: u64) -> Result<Self> {
        if a == 0 || a >= r {
            return Err(Error::InvalidGroup { r, a });
        }
        if gcd(r, a) != 1 {
            return Err(Error::NotCoprime { r, a });
        }
        Ok(Self { r, a })
    }

    pub fn r(&self) -> u64 {
        self.r
    }

    pub fn a(&self) -> u64 {
        self.a
    }

    /// `(p + a·q) mod r`, the character of `x^p y^q`.
    pub fn weight(&self, m: Monomial) -> u64 {
        let r = self.r as u128;
        ((m.ex as u128 % r + (self.a as u128) * (m.ey as u128 % r)) % r) as u64
    }

    /// Is `gldim` two? True exactly for the subgroups of SL(2).
    pub fn is_special_linear(&self) -> bool {
        self.a + 1 == self.r
    }
}

impl fmt::Display for GroupParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "1/{}(1,{})", self.r, self.a)
    }
}

/// Continued-fraction labels `[α₁, …, αₙ]`, each at least 2.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct LabelList(Vec<u64>);

impl LabelList {
    pub fn new(alphas: Vec<u64>) -> Result<Self> {
        if alphas.is_empty() {
            return Err(Error::EmptyLabels);
        }
        if let Some((index, &value)) = alphas.iter().enumerate().find(|(_, &v)| v < 2) {
            return Err(Error::InvalidLabel { index: index + 1, value });
        }
        Ok(Self(alphas))
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }

    /// Number of exceptional curves `n`.
    pub fn n(&self) -> usize {
        self.0.len()
    }

    /// `α_t` for `1 ≤ t ≤ n`.
    pub fn alpha(&self, t: usize) -> u64 {
        self.0[t - 1]
    }

    pub fn reversed(&self) -> Self {
        Self(self.0.iter().rev().copied().collect())
    }

    /// `Σ (α_t − 2)`, the number of extra arrows.
    pub fn gamma(&self) -> usize {
        self.0.iter().map(|&a| (a - 2) as usize).sum()
    }

    pub fn all_twos(&self) -> bool {
        self.0.iter().all(|&a| a == 2)
    }
}

impl fmt::Display for LabelList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (k, a) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str("]")
    }
}

impl FromStr for LabelList {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let inner = s.trim().trim_start_matches('[').trim_end_matches(']');
        let alphas = inner
            .split(',')
            .map(|tok| tok.trim().parse::<u64>().map_err(|e| format!("bad label {tok:?}: {e}")))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        LabelList::new(alphas).map_err(|e| e.to_string())
    }
}

/// The sequences `i₀ … i_{n+1}` and `j₀ … j_{n+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IJSeries {
    pub i: Vec<u64>,
    pub j: Vec<u64>,
}

impl IJSeries {
    pub fn n(&self) -> usize {
        self.i.len() - 2
    }

    pub fn r(&self) -> u64 {
        self.i[0]
    }

    pub fn a(&self) -> u64 {
        self.i[1]
    }
}

/// Expansion `r/a = α₁ − 1/(α₂ − 1/(…))` with every `α_t ≥ 2`.
pub fn hj_expand(r: u64, a: u64) -> Result<LabelList> {
    GroupParams::new(r, a)?;
    let (mut num, mut den) = (r as u128, a as u128);
    let mut alphas = Vec::new();
    while den != 0 {
        let alpha = num.div_ceil(den);
        alphas.push(narrow(alpha, "continued fraction label")?);
        (num, den) = (den, alpha * den - num);
    }
    LabelList::new(alphas)
}

/// Inverse of [`hj_expand`]: evaluates the continued fraction from the tail.
pub fn hj_value(labels: &LabelList) -> Result<GroupParams> {
    let alphas = labels.as_slice();
    let (mut num, mut den) = (*alphas.last().unwrap() as u128, 1u128);
    for &alpha in alphas.iter().rev().skip(1) {
        let next = (alpha as u128)
            .checked_mul(num)
            .and_then(|v| v.checked_sub(den))
            .ok_or(Error::Overflow("continued fraction value"))?;
        (num, den) = (next, num);
    }
    GroupParams::new(narrow(num, "r")?, narrow(den, "a")?)
}

pub(crate) fn series_from(labels: &LabelList, r: u64, a: u64) -> Result<IJSeries> {
    let n = labels.n();
    let mut i = vec![r as u128, a as u128];
    let mut j = vec![0u128, 1u128];
    for t in 2..=n + 1 {
        let alpha = labels.alpha(t - 1) as u128;
        let it = (alpha * i[t - 1])
            .checked_sub(i[t - 2])
            .ok_or(Error::Overflow("i-series"))?;
        let jt = (alpha * j[t - 1])
            .checked_sub(j[t - 2])
            .ok_or(Error::Overflow("j-series"))?;
        i.push(it);
        j.push(jt);
    }
    Ok(IJSeries {
        i: i.into_iter().map(|v| narrow(v, "i-series")).collect::<Result<_>>()?,
        j: j.into_iter().map(|v| narrow(v, "j-series")).collect::<Result<_>>()?,
    })
}

pub fn ij_series(r: u64, a: u64) -> Result<IJSeries> {
    let labels = hj_expand(r, a)?;
    series_from(&labels, r, a)
}

/// Series of the group whose expansion is `labels`.
pub fn ij_series_of(labels: &LabelList) -> Result<IJSeries> {
    let g = hj_value(labels)?;
    series_from(labels, g.r(), g.a())
}

/// The pair `(r, b)` with `b = j_n`; its expansion is the reverse of that of `r/a`.
pub fn dual_pair(r: u64, a: u64) -> Result<(u64, u64)> {
    let s = ij_series(r, a)?;
    Ok((r, s.j[s.n()]))
}

/// Marker vertices `1 = σ₁ < … < σ_z = n` together with the `u`/`v` tables.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SigmaData {
    pub sigma: Vec<usize>,
    /// Indexed by vertex `0..=n`; `None` where no `k`-arrow has that tail.
    pub u: Vec<Option<usize>>,
    pub v: Vec<Option<usize>>,
}

pub fn sigma_series(labels: &LabelList) -> SigmaData {
    let n = labels.n();
    let mut sigma = vec![1];
    while *sigma.last().unwrap() < n {
        let prev = *sigma.last().unwrap();
        let next = (prev + 1..=n).find(|&t| labels.alpha(t) > 2).unwrap_or(n);
        sigma.push(next);
    }
    let layout = KLayout::new(labels);
    SigmaData { sigma, u: layout.u, v: layout.v }
}

/// Expansion of `r/(r−a)` assembled from the σ-series: runs of 2s of length
/// `u_{σ_s} − v_{σ_s}` separated by the entries `σ_{s+1} − σ_s + 2`.
pub fn riemenschneider_dual(r: u64, a: u64) -> Result<LabelList> {
    let labels = hj_expand(r, a)?;
    let data = sigma_series(&labels);
    let run = |t: usize| {
        let (u, v) = (data.u[t].unwrap(), data.v[t].unwrap());
        std::iter::repeat(2u64).take(u - v)
    };
    let mut out: Vec<u64> = run(data.sigma[0]).collect();
    for w in data.sigma.windows(2) {
        out.push((w[1] - w[0] + 2) as u64);
        out.extend(run(w[1]));
    }
    LabelList::new(out)
}

/// Ring generators of `C[x,y]^G`: `x^r`, `x^{r−a}y`, one block per `α_t > 2`,
/// then `y^r`.
pub fn invariant_generators(r: u64, a: u64) -> Result<Vec<Monomial>> {
    let labels = hj_expand(r, a)?;
    let s = series_from(&labels, r, a)?;
    let mut gens = vec![Monomial::new(r, 0), Monomial::new(r - a, 1)];
    for t in 1..=labels.n() {
        let alpha = labels.alpha(t);
        for k in 2..alpha {
            let ex = s.i[t - 1] as u128 - k as u128 * s.i[t] as u128;
            let ey = k as u128 * s.j[t] as u128 - s.j[t - 1] as u128;
            gens.push(Monomial::new(
                narrow(ex, "generator exponent")?,
                narrow(ey, "generator exponent")?,
            ));
        }
    }
    gens.push(Monomial::new(0, r));
    Ok(gens)
}
