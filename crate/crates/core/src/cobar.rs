//! Cobar complexes of `F2[a, u]` and `F2[a, u^{±1}]` over `F2[x]/x^{2^n}`, their cohomology in a
//! fixed tridegree, and the inverse limit over `n`.
//!
//! The Ext machinery is written against [`CochainModel`], so the same code runs on the cobar
//! complex ([`CobarModel`]) and on the much smaller Koszul complex ([`crate::koszul::KoszulModel`]).
//! In a fixed internal degree a basis element is pinned down by its bar word (or `y`-exponents):
//! the word weight `W` forces `β = p - W` and `α = 2W - p - q`.

use std::collections::HashMap;
use std::fmt::Display;
use std::hash::Hash;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::f2linalg::{cohomology, Cohomology, F2Matrix, F2Vector, LinalgError};
use crate::grading::{CobarMonomial, F2Element, RO2Degree, Tridegree};
use crate::hopf::{comult_reduced, Coaction, HopfError, StandardCoaction, TruncationLevel};

/// Largest cochain space we are willing to materialize densely.
pub const MAX_BASIS: usize = 30_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CobarError {
    #[error("basis is infinite over F2[x] with u inverted; use the limit over truncation levels")]
    UnboundedBasis,
    #[error("cochain space has more than {limit} elements at s={s}")]
    BasisTooLarge { s: u32, limit: usize },
    #[error("differential of `{cochain}` has term `{term}` outside the target basis")]
    MissingTarget { cochain: String, term: String },
    #[error("limit needs at least three finite levels, got depth {0}")]
    InvalidDepth(u32),
    #[error("limit did not stabilize: image dimensions {image_dims:?} at levels {levels:?}")]
    NotStabilized { levels: Vec<u32>, image_dims: Vec<usize> },
    #[error("`{0}` is not in the cochain basis")]
    NotInBasis(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Hopf(#[from] HopfError),
}

/// A cochain complex computing `Ext_{F2[x]/x^{2^n}}(F2, F2[a, u^{(±1)}])`, one internal degree at
/// a time.
pub trait CochainModel: Sync {
    type Mono: Ord + Clone + Hash + Display + Send + Sync;

    fn name(&self) -> &'static str;

    /// Canonically ordered basis of the cochains in filtration `s` and internal degree `degree`.
    fn basis(
        &self,
        s: u32,
        degree: RO2Degree,
        level: TruncationLevel,
        invert_u: bool,
    ) -> Result<Vec<Self::Mono>, CobarError>;

    fn differential(&self, m: &Self::Mono, level: TruncationLevel) -> Result<F2Element<Self::Mono>, CobarError>;

    /// Image of a cochain under the transition to the coarser level `level`.
    fn restrict(&self, m: &Self::Mono, level: TruncationLevel) -> Option<Self::Mono>;

    fn times_a(&self, m: &Self::Mono, power: u32) -> Self::Mono;
}

/// The normalized cobar complex `M ⊗ Λ̄^{⊗s}`.
#[derive(Clone, Copy, Debug, Default)]
pub struct CobarModel;

/// Word weights `W` allowed in internal degree `(p, q)`, and the letter bound.
fn weight_window(
    s: u32,
    degree: RO2Degree,
    level: TruncationLevel,
    invert_u: bool,
) -> Result<Option<(i64, i64, u64)>, CobarError> {
    let (p, q) = (degree.p, degree.q);
    // α = 2W - p - q >= 0.
    let lo = (s as i64).max((p + q + 1).div_euclid(2));
    let (hi, letter) = match (level.max_letter(), invert_u) {
        (_, false) => {
            let hi = p;
            let letter = level.max_letter().unwrap_or(hi.max(1) as u64);
            (hi.min(s as i64 * letter as i64), letter)
        }
        (Some(m), true) => (s as i64 * m as i64, m),
        (None, true) => return Err(CobarError::UnboundedBasis),
    };
    if lo > hi {
        return Ok(None);
    }
    Ok(Some((lo, hi, letter)))
}

fn push_words(
    prefix: &mut Vec<u32>,
    remaining: u32,
    lo: i64,
    hi: i64,
    letter: u64,
    out: &mut Vec<Vec<u32>>,
    s: u32,
) -> Result<(), CobarError> {
    let sum: i64 = prefix.iter().map(|&e| e as i64).sum();
    if remaining == 0 {
        if sum >= lo && sum <= hi {
            if out.len() >= MAX_BASIS {
                return Err(CobarError::BasisTooLarge { s, limit: MAX_BASIS });
            }
            out.push(prefix.clone());
        }
        return Ok(());
    }
    let rest = remaining as i64 - 1;
    for e in 1..=letter as i64 {
        // Remaining letters contribute between `rest` and `rest * letter`.
        if sum + e + rest > hi {
            break;
        }
        if sum + e + rest * (letter as i64) < lo {
            continue;
        }
        prefix.push(e as u32);
        push_words(prefix, remaining - 1, lo, hi, letter, out, s)?;
        prefix.pop();
    }
    Ok(())
}

impl CochainModel for CobarModel {
    type Mono = CobarMonomial;

    fn name(&self) -> &'static str {
        "cobar"
    }

    fn basis(
        &self,
        s: u32,
        degree: RO2Degree,
        level: TruncationLevel,
        invert_u: bool,
    ) -> Result<Vec<CobarMonomial>, CobarError> {
        let Some((lo, hi, letter)) = weight_window(s, degree, level, invert_u)? else {
            return Ok(Vec::new());
        };
        let mut words = Vec::new();
        push_words(&mut Vec::new(), s, lo, hi, letter, &mut words, s)?;
        let mut out: Vec<CobarMonomial> = words
            .into_iter()
            .map(|w| {
                let weight: i64 = w.iter().map(|&e| e as i64).sum();
                let u = degree.p - weight;
                let a = 2 * weight - degree.p - degree.q;
                CobarMonomial::new(a as u32, u, w)
            })
            .collect();
        out.sort();
        Ok(out)
    }

    fn differential(&self, m: &CobarMonomial, level: TruncationLevel) -> Result<F2Element<CobarMonomial>, CobarError> {
        cobar_differential_with(&StandardCoaction, m, level)
    }

    fn restrict(&self, m: &CobarMonomial, level: TruncationLevel) -> Option<CobarMonomial> {
        m.word
            .iter()
            .all(|&e| level.admits(e as u64))
            .then(|| m.clone())
    }

    fn times_a(&self, m: &CobarMonomial, power: u32) -> CobarMonomial {
        m.times_a(power)
    }
}

/// `d(m[x^{e1}|...|x^{es}]) = Σ m'[x^i|x^{e1}|...] + Σ_j m[...|Δ̄(x^{ej})|...]`, signs dropped.
pub fn cobar_differential_with(
    coaction: &dyn Coaction,
    m: &CobarMonomial,
    level: TruncationLevel,
) -> Result<F2Element<CobarMonomial>, CobarError> {
    let mut out = F2Element::zero();
    for (a, u, i) in coaction.coact(m.a, m.u, level)? {
        if i == 0 {
            continue;
        }
        let mut word = Vec::with_capacity(m.word.len() + 1);
        word.push(i as u32);
        word.extend_from_slice(&m.word);
        out.add_term(CobarMonomial::new(a, u, word));
    }
    for (slot, &e) in m.word.iter().enumerate() {
        for (left, right) in comult_reduced(e as u64, level)? {
            let mut word = Vec::with_capacity(m.word.len() + 1);
            word.extend_from_slice(&m.word[..slot]);
            word.push(left as u32);
            word.push(right as u32);
            word.extend_from_slice(&m.word[slot + 1..]);
            out.add_term(CobarMonomial::new(m.a, m.u, word));
        }
    }
    Ok(out)
}

/// Cobar differential of a formal sum.
pub fn cobar_differential(
    element: &F2Element<CobarMonomial>,
    level: TruncationLevel,
) -> Result<F2Element<CobarMonomial>, CobarError> {
    let mut out = F2Element::zero();
    for m in element.iter() {
        out.add_assign(&CobarModel.differential(m, level)?);
    }
    Ok(out)
}

fn index_of<M: Hash + Eq + Clone>(basis: &[M]) -> HashMap<M, usize> {
    basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect()
}

/// Writes an element in a basis.
pub fn to_vector<M: Hash + Eq + Clone + Ord + Display>(
    element: &F2Element<M>,
    index: &HashMap<M, usize>,
    len: usize,
) -> Result<F2Vector, CobarError> {
    let mut v = F2Vector::zeros(len);
    for m in element.iter() {
        let &i = index
            .get(m)
            .ok_or_else(|| CobarError::NotInBasis(m.to_string()))?;
        v.flip(i);
    }
    Ok(v)
}

pub fn from_vector<M: Ord + Clone>(v: &F2Vector, basis: &[M]) -> F2Element<M> {
    v.ones().map(|i| basis[i].clone()).collect()
}

/// Matrix of the differential from `source` to `target`; columns follow `source`.
pub fn differential_matrix<C: CochainModel>(
    model: &C,
    source: &[C::Mono],
    target: &[C::Mono],
    level: TruncationLevel,
) -> Result<F2Matrix, CobarError> {
    let index = index_of(target);
    let mut m = F2Matrix::zeros(target.len(), source.len());
    for (j, mono) in source.iter().enumerate() {
        for term in model.differential(mono, level)?.iter() {
            let &i = index.get(term).ok_or_else(|| CobarError::MissingTarget {
                cochain: mono.to_string(),
                term: term.to_string(),
            })?;
            m.flip(i, j);
        }
    }
    Ok(m)
}

/// Three consecutive cochain spaces around filtration `s` and the two differentials between them.
#[derive(Clone, Debug)]
pub struct ComplexSlice<M> {
    pub tridegree: Tridegree,
    pub level: TruncationLevel,
    pub invert_u: bool,
    pub previous: Vec<M>,
    pub basis: Vec<M>,
    pub next: Vec<M>,
    pub d_in: F2Matrix,
    pub d_out: F2Matrix,
}

impl<M> ComplexSlice<M> {
    pub fn d_squared_is_zero(&self) -> bool {
        self.d_out
            .mul(&self.d_in)
            .map(|m| m.is_zero())
            .unwrap_or(false)
    }
}

pub fn assemble_slice<C: CochainModel>(
    model: &C,
    s: u32,
    degree: RO2Degree,
    level: TruncationLevel,
    invert_u: bool,
) -> Result<ComplexSlice<C::Mono>, CobarError> {
    let previous = match s {
        0 => Vec::new(),
        _ => model.basis(s - 1, degree, level, invert_u)?,
    };
    let basis = model.basis(s, degree, level, invert_u)?;
    let next = model.basis(s + 1, degree, level, invert_u)?;
    let d_in = differential_matrix(model, &previous, &basis, level)?;
    let d_out = differential_matrix(model, &basis, &next, level)?;
    Ok(ComplexSlice {
        tridegree: Tridegree::new(s, degree),
        level,
        invert_u,
        previous,
        basis,
        next,
        d_in,
        d_out,
    })
}

/// `Ext^{s, degree}` together with a deterministic basis of representative cocycles.
#[derive(Clone, Debug)]
pub struct ExtGroup<M: Ord> {
    pub tridegree: Tridegree,
    pub level: TruncationLevel,
    pub invert_u: bool,
    pub basis: Vec<M>,
    pub cohomology: Cohomology,
    index: HashMap<M, usize>,
}

impl<M: Ord + Clone + Hash + Display> ExtGroup<M> {
    pub fn dim(&self) -> usize {
        self.cohomology.dim()
    }

    pub fn cochain_dim(&self) -> usize {
        self.basis.len()
    }

    pub fn representatives(&self) -> Vec<F2Element<M>> {
        self.cohomology
            .representatives
            .iter()
            .map(|v| from_vector(v, &self.basis))
            .collect()
    }

    pub fn representative_labels(&self) -> Vec<String> {
        self.representatives().iter().map(|e| e.to_string()).collect()
    }

    /// Coordinates of the class of a cocycle in the representative basis.
    pub fn class_coordinates(&self, cocycle: &F2Element<M>) -> Result<F2Vector, CobarError> {
        let v = to_vector(cocycle, &self.index, self.basis.len())?;
        Ok(self.cohomology.coordinates(&v)?)
    }

    pub fn is_zero_class(&self, cocycle: &F2Element<M>) -> Result<bool, CobarError> {
        Ok(self.class_coordinates(cocycle)?.is_zero())
    }
}

/// Cohomology of the model at `(s, degree)`. The slice is checked for `d ∘ d = 0`.
pub fn ext_group<C: CochainModel>(
    model: &C,
    s: u32,
    degree: RO2Degree,
    level: TruncationLevel,
    invert_u: bool,
) -> Result<ExtGroup<C::Mono>, CobarError> {
    let slice = assemble_slice(model, s, degree, level, invert_u)?;
    let cohomology = cohomology(&slice.d_in, &slice.d_out)?;
    let index = index_of(&slice.basis);
    Ok(ExtGroup {
        tridegree: slice.tridegree,
        level,
        invert_u,
        basis: slice.basis,
        cohomology,
        index,
    })
}

/// Canonical cobar basis in filtration `s` and internal degree `degree`.
pub fn basis(
    s: u32,
    degree: RO2Degree,
    level: TruncationLevel,
    invert_u: bool,
) -> Result<Vec<CobarMonomial>, CobarError> {
    CobarModel.basis(s, degree, level, invert_u)
}

/// Matrix of the cobar differential from filtration `s` to `s + 1`.
pub fn differential(
    s: u32,
    degree: RO2Degree,
    level: TruncationLevel,
    invert_u: bool,
) -> Result<F2Matrix, CobarError> {
    let source = basis(s, degree, level, invert_u)?;
    let target = basis(s + 1, degree, level, invert_u)?;
    differential_matrix(&CobarModel, &source, &target, level)
}

/// Ext computed by brute-force cobar cohomology.
pub fn ext_dim(
    s: u32,
    degree: RO2Degree,
    level: TruncationLevel,
    invert_u: bool,
) -> Result<ExtGroup<CobarMonomial>, CobarError> {
    ext_group(&CobarModel, s, degree, level, invert_u)
}

/// Rank of multiplication by `a^power` from `Ext^{s, degree}` to `Ext^{s, degree - power·σ}`.
pub fn a_power_rank<C: CochainModel>(
    model: &C,
    s: u32,
    degree: RO2Degree,
    level: TruncationLevel,
    invert_u: bool,
    power: u32,
) -> Result<usize, CobarError> {
    let source = ext_group(model, s, degree, level, invert_u)?;
    let target = ext_group(
        model,
        s,
        degree + power as i64 * RO2Degree::A,
        level,
        invert_u,
    )?;
    let columns = source
        .representatives()
        .iter()
        .map(|rep| target.class_coordinates(&rep.map(|m| model.times_a(m, power))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(F2Matrix::from_columns(target.dim(), &columns).rank())
}

/// Rank of multiplication by `a` on cobar Ext.
pub fn a_multiplication_rank(
    s: u32,
    degree: RO2Degree,
    level: TruncationLevel,
    invert_u: bool,
) -> Result<usize, CobarError> {
    a_power_rank(&CobarModel, s, degree, level, invert_u, 1)
}

/// Matrix of the transition `Ext_{n+1} → Ext_n` induced by reducing modulo `x^{2^n}`.
pub fn transition_matrix<C: CochainModel>(
    model: &C,
    finer: &ExtGroup<C::Mono>,
    coarser: &ExtGroup<C::Mono>,
) -> Result<F2Matrix, CobarError> {
    let columns = finer
        .representatives()
        .iter()
        .map(|rep| {
            let restricted: F2Element<C::Mono> = rep
                .iter()
                .filter_map(|m| model.restrict(m, coarser.level))
                .collect();
            coarser.class_coordinates(&restricted)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(F2Matrix::from_columns(coarser.dim(), &columns))
}

/// Per-level data for the inverse system `... → Ext_{n+1} → Ext_n → ...` with `u` inverted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LimitReport {
    pub s: u32,
    pub p: i64,
    pub q: i64,
    pub engine: &'static str,
    pub levels: Vec<u32>,
    pub dims: Vec<usize>,
    /// Rank of `Ext_{levels[i+1]} → Ext_{levels[i]}`.
    pub transition_ranks: Vec<usize>,
    /// Dimension of the image of `Ext_{top} → Ext_{levels[i]}`; the last entry is `dims[top]`.
    pub image_dims: Vec<usize>,
    pub limit_dim: Option<usize>,
    /// Representatives at the top level, which map isomorphically onto the limit once stable.
    pub basis: Vec<String>,
}

/// Inverse limit over levels `n_start ..= n_start + depth` with `u` inverted.
///
/// The limit dimension is declared once the eventual-image dimensions agree at the top three
/// levels; otherwise [`CobarError::NotStabilized`] is returned.
pub fn limit_ext_dim_with<C: CochainModel>(
    model: &C,
    s: u32,
    degree: RO2Degree,
    n_start: u32,
    depth: u32,
) -> Result<LimitReport, CobarError> {
    let report = limit_report(model, s, degree, n_start, depth)?;
    match report.limit_dim {
        Some(_) => Ok(report),
        None => Err(CobarError::NotStabilized {
            levels: report.levels,
            image_dims: report.image_dims,
        }),
    }
}

/// Like [`limit_ext_dim_with`], but returns the report even when the system has not stabilized.
pub fn limit_report<C: CochainModel>(
    model: &C,
    s: u32,
    degree: RO2Degree,
    n_start: u32,
    depth: u32,
) -> Result<LimitReport, CobarError> {
    if depth < 2 || n_start == 0 {
        return Err(CobarError::InvalidDepth(depth));
    }
    let levels: Vec<u32> = (n_start..=n_start + depth).collect();
    let groups = levels
        .iter()
        .map(|&n| ext_group(model, s, degree, TruncationLevel::finite(n), true))
        .collect::<Result<Vec<_>, _>>()?;
    let transitions = groups
        .windows(2)
        .map(|pair| transition_matrix(model, &pair[1], &pair[0]))
        .collect::<Result<Vec<_>, _>>()?;

    let top = groups.len() - 1;
    let mut image_dims = vec![0; groups.len()];
    image_dims[top] = groups[top].dim();
    let mut composite = F2Matrix::identity(groups[top].dim());
    for i in (0..top).rev() {
        composite = transitions[i].mul(&composite)?;
        image_dims[i] = composite.rank();
    }
    let tail = &image_dims[top - 2..];
    let limit_dim = tail.iter().all(|&d| d == tail[0]).then_some(tail[0]);
    Ok(LimitReport {
        s,
        p: degree.p,
        q: degree.q,
        engine: model.name(),
        levels,
        dims: groups.iter().map(|g| g.dim()).collect(),
        transition_ranks: transitions.iter().map(|t| t.rank()).collect(),
        image_dims,
        limit_dim,
        basis: groups[top].representative_labels(),
    })
}

/// Completed Ext via the cobar complex.
pub fn limit_ext_dim(s: u32, degree: RO2Degree, n_start: u32, depth: u32) -> Result<LimitReport, CobarError> {
    limit_ext_dim_with(&CobarModel, s, degree, n_start, depth)
}

/// A level from which the inverse system is constant in internal degree `(p, q)`:
/// the smallest `n` with `2^(n-1) > |p| + |q|`.
pub fn stable_level(degree: RO2Degree) -> u32 {
    let bound = degree.p.unsigned_abs() + degree.q.unsigned_abs();
    (64 - bound.leading_zeros()) + 1
}

/// Comparison of `Ext` with `u` inverted against `Ext` of `F2[a, u]` shifted by `t·(2^n, -2^n)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalizationReport {
    pub s: u32,
    pub p: i64,
    pub q: i64,
    pub n: u32,
    pub inverted_dim: usize,
    /// `(t, dim)` for the shifts examined, largest `t` first.
    pub shifted: Vec<(i64, usize)>,
}

impl LocalizationReport {
    pub fn agrees(&self) -> bool {
        self.shifted.len() >= 2 && self.shifted.iter().all(|&(_, d)| d == self.inverted_dim)
    }
}

/// Compares inverted Ext at `(s, degree)` with uninverted Ext at the two largest shifts
/// `t·(2^n, -2^n)` keeping the shifted degree inside `|p|, |q| <= window`.
pub fn localization_check(
    s: u32,
    degree: RO2Degree,
    n: u32,
    window: i64,
) -> Result<LocalizationReport, CobarError> {
    let level = TruncationLevel::finite(n);
    let step = 1i64 << n;
    let inverted_dim = ext_dim(s, degree, level, true)?.dim();
    let t_max = (window - degree.p).div_euclid(step).min((degree.q + window).div_euclid(step));
    let shifted = (t_max - 1..=t_max)
        .rev()
        .filter(|&t| {
            let shifted = degree + t * RO2Degree::new(step, -step);
            shifted.p.abs() <= window && shifted.q.abs() <= window
        })
        .map(|t| {
            let d = degree + t * RO2Degree::new(step, -step);
            ext_dim(s, d, level, false).map(|g| (t, g.dim()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(LocalizationReport {
        s,
        p: degree.p,
        q: degree.q,
        n,
        inverted_dim,
        shifted,
    })
}

/// One row of an Ext table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtRow {
    pub s: u32,
    pub p: i64,
    pub q: i64,
    pub n: TruncationLevel,
    pub dim: usize,
    pub basis: Vec<String>,
}

/// Ext over a window of tridegrees, in canonical `(s, p, q)` order. Runs on the current rayon
/// pool; output order does not depend on the pool size.
pub fn ext_table<C: CochainModel>(
    model: &C,
    level: TruncationLevel,
    invert_u: bool,
    s_range: std::ops::RangeInclusive<u32>,
    p_range: std::ops::RangeInclusive<i64>,
    q_range: std::ops::RangeInclusive<i64>,
) -> Result<Vec<ExtRow>, CobarError> {
    let cells: Vec<(u32, i64, i64)> = s_range
        .flat_map(|s| {
            let q_range = q_range.clone();
            p_range
                .clone()
                .flat_map(move |p| q_range.clone().map(move |q| (s, p, q)))
        })
        .collect();
    cells
        .into_par_iter()
        .map(|(s, p, q)| {
            let g = ext_group(model, s, RO2Degree::new(p, q), level, invert_u)?;
            Ok(ExtRow {
                s,
                p,
                q,
                n: level,
                dim: g.dim(),
                basis: g.representative_labels(),
            })
        })
        .collect()
}
