//! Closed forms for the x-adic spectral sequence: the E∞ basis, the stage-by-stage pages and
//! differentials, and verifiers that compare them against brute-force cobar cohomology.
//!
//! A monomial `a^m u^k y_I` has degree `m·(0,-1) + k·(1,-1) + N·(1,1)` with `N = Σ i_r 2^r`, so in a
//! fixed tridegree the exponent tuple `I` determines `k = p - N` and `m = 2N - p - q`.
//!
//! Stages: stage `t` imposes `a^{2^{r+1}} y_r = 0` for `r < t` and keeps `u^k` only for `2^t | k`
//! when `m(I) >= t`. Stage 0 is the trivial-coaction page `F2[a, u, y_0, ...]` and stage `n` is
//! E∞. The stage-`t` differential is the `d_{2^t}` of the filtration.

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::cobar::{cobar_differential, ext_dim, ext_group, stable_level, CobarError, CochainModel};
use crate::grading::{CobarMonomial, F2Element, RO2Degree, YMonomial};
use crate::hopf::TruncationLevel;

pub type EinftyMonomial = YMonomial;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum XadicError {
    #[error("stage {t} is outside 0..={n}")]
    StageOutOfRange { t: u32, n: TruncationLevel },
    #[error("`{mono}` is not on the stage-{t} page")]
    NotOnPage { mono: String, t: u32 },
    #[error("level {n} has no letter x^(2^{r}); need n > r")]
    LevelTooSmall { r: u32, n: TruncationLevel },
    #[error(transparent)]
    Cobar(#[from] CobarError),
}

fn bit_length(v: u64) -> usize {
    64 - v.leading_zeros() as usize
}

/// `2^e | k`, for any integer `k`.
fn divisible(k: i64, e: usize) -> bool {
    e >= 63 || k & ((1i64 << e) - 1) == 0
}

/// All `a^m u^k y_I` of filtration `s` and internal degree `degree` whose `y`-indices are `< gens`.
fn monomials_in(s: u32, degree: RO2Degree, gens: usize, allow_negative_u: bool) -> Vec<YMonomial> {
    let mut out = Vec::new();
    let mut y = vec![0u32; gens];
    fill(&mut y, 0, s, &mut |exps| {
        let weight: i64 = exps.iter().enumerate().map(|(r, &i)| (i as i64) << r).sum();
        let k = degree.p - weight;
        let m = 2 * weight - degree.p - degree.q;
        if m >= 0 && (allow_negative_u || k >= 0) {
            out.push(YMonomial::new(m as u32, k, exps.to_vec()));
        }
    });
    out.sort();
    out
}

fn fill(y: &mut [u32], slot: usize, remaining: u32, visit: &mut dyn FnMut(&[u32])) {
    if slot + 1 >= y.len() {
        match y.len() {
            0 if remaining > 0 => return,
            0 => {}
            _ => y[slot] = remaining,
        }
        visit(y);
        if !y.is_empty() {
            y[slot] = 0;
        }
        return;
    }
    for i in 0..=remaining {
        y[slot] = i;
        fill(y, slot + 1, remaining - i, visit);
    }
    y[slot] = 0;
}

/// Number of `y` generators that can occur at `level` in internal degree `degree`.
fn generators(level: TruncationLevel, degree: RO2Degree, invert_u: bool) -> usize {
    match level {
        TruncationLevel::Finite(n) => n as usize,
        // Without u^{-1}, 2^r <= N <= p.
        TruncationLevel::Infinite if !invert_u => bit_length(degree.p.max(0) as u64),
        // With u^{-1}, s = 1 forces r = v_2(p) and s >= 2 forces 2^{r+1} < p + q.
        TruncationLevel::Infinite => bit_length(degree.p.unsigned_abs() + degree.q.unsigned_abs()) + 1,
    }
}

/// Whether `mono` survives to stage `t`.
pub fn on_stage(mono: &YMonomial, t: u32) -> bool {
    match mono.min_index() {
        Some(r) if r < t as usize => {
            (mono.a as u64) < (2u64 << r) && divisible(mono.u, r + 1)
        }
        _ => divisible(mono.u, t as usize),
    }
}

/// E∞ admissibility. At `n = ∞`, pure `a^m u^k` survives only for `k = 0`.
pub fn admissible(mono: &YMonomial, level: TruncationLevel) -> bool {
    match (mono.min_index(), level) {
        (Some(_), TruncationLevel::Finite(n)) if mono.exponents().len() > n as usize => false,
        (Some(r), _) => (mono.a as u64) < (2u64 << r) && divisible(mono.u, r + 1),
        (None, TruncationLevel::Finite(n)) => divisible(mono.u, n as usize),
        (None, TruncationLevel::Infinite) => mono.u == 0,
    }
}

/// E∞ basis of the x-adic spectral sequence for `F2[a, u]` at `level`.
pub fn einfty_basis(level: TruncationLevel, s: u32, degree: RO2Degree) -> Vec<EinftyMonomial> {
    monomials_in(s, degree, generators(level, degree, false), false)
        .into_iter()
        .filter(|m| admissible(m, level))
        .collect()
}

/// E∞ basis for `F2[a, u^{±1}]`. At `n = ∞` this is the basis of the completed groups, the limit
/// over finite levels.
pub fn einfty_basis_inverted(level: TruncationLevel, s: u32, degree: RO2Degree) -> Vec<EinftyMonomial> {
    monomials_in(s, degree, generators(level, degree, true), true)
        .into_iter()
        .filter(|m| admissible(m, level))
        .collect()
}

fn check_stage(level: TruncationLevel, t: u32) -> Result<(), XadicError> {
    match level.number() {
        Some(n) if t > n => Err(XadicError::StageOutOfRange { t, n: level }),
        _ => Ok(()),
    }
}

/// Basis of the stage-`t` page for `F2[a, u]`.
pub fn xadic_stage(level: TruncationLevel, t: u32, s: u32, degree: RO2Degree) -> Result<Vec<EinftyMonomial>, XadicError> {
    check_stage(level, t)?;
    Ok(monomials_in(s, degree, generators(level, degree, false), false)
        .into_iter()
        .filter(|m| on_stage(m, t))
        .collect())
}

/// `d(a^m u^{2^t ℓ} y_I) = ℓ a^{m + 2^{t+1}} u^{2^t(ℓ-1)} y_I y_t` on the stage-`t` page.
pub fn xadic_differential(level: TruncationLevel, t: u32, mono: &YMonomial) -> Result<F2Element<EinftyMonomial>, XadicError> {
    check_stage(level, t)?;
    let out_of_range = matches!(level, TruncationLevel::Finite(n) if mono.exponents().len() > n as usize);
    if out_of_range || !on_stage(mono, t) {
        return Err(XadicError::NotOnPage {
            mono: mono.to_string(),
            t,
        });
    }
    let mut out = F2Element::zero();
    let last = level.number() == Some(t);
    let killed = matches!(mono.min_index(), Some(r) if r < t as usize);
    let ell_odd = !divisible(mono.u, t as usize + 1);
    if !last && !killed && ell_odd {
        let shifted = YMonomial::new(mono.a + (2 << t), mono.u - (1 << t), mono.exponents().to_vec());
        out.add_term(shifted.times_y(t as usize, 1));
    }
    Ok(out)
}

/// Result of checking `d(u^{2^r(2m+1)}) ≡ u^{2^{r+1}m} a^{2^{r+1}} [x^{2^r}]` modulo letters above `2^r`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoboundaryReport {
    pub r: u32,
    pub m: u32,
    pub n: TruncationLevel,
    pub passed: bool,
    pub differential: String,
    pub truncated: String,
    pub expected: String,
}

fn coboundary_source(r: u32, m: u32) -> CobarMonomial {
    CobarMonomial::coefficient(0, (1i64 << r) * (2 * m as i64 + 1))
}

fn check_letter(r: u32, level: TruncationLevel) -> Result<(), XadicError> {
    if level.admits(1 << r) {
        Ok(())
    } else {
        Err(XadicError::LevelTooSmall { r, n: level })
    }
}

pub fn verify_coboundary(r: u32, m: u32, level: TruncationLevel) -> Result<CoboundaryReport, XadicError> {
    check_letter(r, level)?;
    let source = F2Element::from_monomial(coboundary_source(r, m));
    let d = cobar_differential(&source, level)?;
    let mut truncated = d.clone();
    truncated.retain(|t| t.word.iter().all(|&e| e <= 1 << r));
    let expected = F2Element::from_monomial(CobarMonomial::new(
        2 << r,
        (2i64 << r) * m as i64,
        vec![1 << r],
    ));
    Ok(CoboundaryReport {
        r,
        m,
        n: level,
        passed: truncated == expected,
        differential: d.to_string(),
        truncated: truncated.to_string(),
        expected: expected.to_string(),
    })
}

/// The cocycle `d(u^{2^r(2m+1)}) / a^{2^{r+1}}`, which represents `u^{2^{r+1}m} y_r`.
pub fn bockstein_lift(r: u32, m: u32, level: TruncationLevel) -> Result<F2Element<CobarMonomial>, XadicError> {
    check_letter(r, level)?;
    let d = cobar_differential(&F2Element::from_monomial(coboundary_source(r, m)), level)?;
    Ok(d.map(|t| CobarMonomial::new(t.a - (2 << r), t.u, t.word.clone())))
}

/// a-torsion of the class `u^{2^{r+1}m} y_r`: whether `a^j` of it is nonzero, for
/// `j = 2^{r+1} - 1` and `j = 2^{r+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorsionReport {
    pub r: u32,
    pub m: u32,
    pub n: TruncationLevel,
    pub class: String,
    pub below_nonzero: bool,
    pub at_zero: bool,
}

impl TorsionReport {
    pub fn passed(&self) -> bool {
        self.below_nonzero && self.at_zero
    }
}

pub fn a_torsion(r: u32, m: u32, level: TruncationLevel) -> Result<TorsionReport, XadicError> {
    let z = bockstein_lift(r, m, level)?;
    let power = 2u32 << r;
    let class = YMonomial::new(0, (2i64 << r) * m as i64, vec![0; r as usize]).times_y(r as usize, 1);
    let degree = class.degree();
    let nonzero_after = |j: u32| -> Result<bool, XadicError> {
        let g = ext_dim(1, degree + j as i64 * RO2Degree::A, level, false)?;
        Ok(!g.is_zero_class(&z.map(|t| t.times_a(j)))?)
    };
    Ok(TorsionReport {
        r,
        m,
        n: level,
        class: class.to_string(),
        below_nonzero: nonzero_after(power - 1)?,
        at_zero: !nonzero_after(power)?,
    })
}

/// Rank of `a^power` on E∞ predicted by the closed form: a basis monomial maps to a basis monomial
/// or to zero, with no hidden extensions.
pub fn closed_form_a_rank(level: TruncationLevel, s: u32, degree: RO2Degree, power: u32) -> usize {
    einfty_basis(level, s, degree)
        .iter()
        .filter(|m| admissible(&YMonomial::new(m.a + power, m.u, m.exponents().to_vec()), level))
        .count()
}

/// One tridegree of a comparison between Ext and a closed-form count.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountCell {
    pub n: TruncationLevel,
    pub s: u32,
    pub p: i64,
    pub q: i64,
    pub computed: usize,
    pub expected: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EinftyReport {
    pub levels: Vec<TruncationLevel>,
    pub s_max: u32,
    pub window: i64,
    pub cells: usize,
    pub total_dim: usize,
    pub mismatches: Vec<CountCell>,
}

impl EinftyReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Compares cobar `Ext` of `F2[a, u]` with `|einfty_basis|` on `0 <= s <= s_max`, `|p|, |q| <= window`.
pub fn verify_einfty(levels: &[TruncationLevel], s_max: u32, window: i64) -> Result<EinftyReport, XadicError> {
    let cells: Vec<(TruncationLevel, u32, i64, i64)> = levels
        .iter()
        .flat_map(|&n| {
            (0..=s_max).flat_map(move |s| {
                (-window..=window).flat_map(move |p| (-window..=window).map(move |q| (n, s, p, q)))
            })
        })
        .collect();
    let results = cells
        .par_iter()
        .map(|&(n, s, p, q)| {
            let d = RO2Degree::new(p, q);
            let computed = ext_dim(s, d, n, false)?.dim();
            Ok(CountCell {
                n,
                s,
                p,
                q,
                computed,
                expected: einfty_basis(n, s, d).len(),
            })
        })
        .collect::<Result<Vec<_>, XadicError>>()?;
    Ok(EinftyReport {
        levels: levels.to_vec(),
        s_max,
        window,
        cells: results.len(),
        total_dim: results.iter().map(|c| c.computed).sum(),
        mismatches: results.into_iter().filter(|c| c.computed != c.expected).collect(),
    })
}

/// One tridegree of the vanishing sweep.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VanishingCell {
    pub s: u32,
    pub p: i64,
    pub q: i64,
    pub levels: Vec<u32>,
    pub limit_dim: Option<usize>,
    pub basis: Vec<String>,
    pub expected_basis: Vec<String>,
}

impl VanishingCell {
    pub fn passed(&self) -> bool {
        self.limit_dim == Some(self.expected_basis.len()) && self.basis == self.expected_basis
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VanishingReport {
    pub engine: &'static str,
    pub cells: usize,
    pub nonzero: usize,
    pub violations: Vec<VanishingCell>,
}

impl VanishingReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks that completed Ext vanishes for `p + q < 0` except for `F2{a^{-q}}` at `s = 0, p = 0`.
/// Cells with `p + q >= 0` are skipped.
pub fn verify_vanishing<C: CochainModel>(
    model: &C,
    p_range: std::ops::RangeInclusive<i64>,
    budget: std::ops::RangeInclusive<i64>,
    s_max: u32,
    depth: u32,
) -> Result<VanishingReport, XadicError> {
    let cells: Vec<(u32, i64, i64)> = p_range
        .flat_map(|p| {
            let budget = budget.clone();
            budget.filter(|&b| b < 0).map(move |b| (p, b - p))
        })
        .flat_map(|(p, q)| (0..=s_max).map(move |s| (s, p, q)))
        .collect();
    let results = cells
        .par_iter()
        .map(|&(s, p, q)| {
            let d = RO2Degree::new(p, q);
            let report = crate::cobar::limit_report(model, s, d, stable_level(d), depth)?;
            let expected_basis = if s == 0 && p == 0 {
                vec![YMonomial::new((-q) as u32, 0, Vec::new()).to_string()]
            } else {
                Vec::new()
            };
            let basis = match report.limit_dim {
                Some(0) => Vec::new(),
                _ => report.basis,
            };
            Ok(VanishingCell {
                s,
                p,
                q,
                levels: report.levels,
                limit_dim: report.limit_dim,
                basis,
                expected_basis,
            })
        })
        .collect::<Result<Vec<_>, XadicError>>()?;
    Ok(VanishingReport {
        engine: model.name(),
        cells: results.len(),
        nonzero: results.iter().filter(|c| c.limit_dim.unwrap_or(0) > 0).count(),
        violations: results.into_iter().filter(|c| !c.passed()).collect(),
    })
}

/// `Ext` of the stage-`t` page under its differential, as a count; used to check that stage
/// `t + 1` is the homology of stage `t`.
pub fn stage_homology_dim(level: TruncationLevel, t: u32, s: u32, degree: RO2Degree) -> Result<usize, XadicError> {
    use crate::f2linalg::cohomology_dim;
    let matrix = |from: u32| -> Result<crate::f2linalg::F2Matrix, XadicError> {
        let source = match from {
            u32::MAX => Vec::new(),
            _ => xadic_stage(level, t, from, degree)?,
        };
        let target = xadic_stage(level, t, from.wrapping_add(1), degree)?;
        let mut m = crate::f2linalg::F2Matrix::zeros(target.len(), source.len());
        for (j, mono) in source.iter().enumerate() {
            for term in xadic_differential(level, t, mono)?.iter() {
                let i = target
                    .iter()
                    .position(|x| x == term)
                    .ok_or_else(|| XadicError::NotOnPage { mono: term.to_string(), t })?;
                m.flip(i, j);
            }
        }
        Ok(m)
    };
    let d_in = matrix(s.wrapping_sub(1))?;
    let d_out = matrix(s)?;
    Ok(cohomology_dim(&d_in, &d_out).map_err(CobarError::from)?)
}

/// Dimension of Ext computed by the given engine, for cross-checks against closed forms.
pub fn model_ext_dim<C: CochainModel>(
    model: &C,
    s: u32,
    degree: RO2Degree,
    level: TruncationLevel,
    invert_u: bool,
) -> Result<usize, XadicError> {
    Ok(ext_group(model, s, degree, level, invert_u)?.dim())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cobar::limit_report;
    use crate::koszul::KoszulModel;
    use proptest::prelude::*;

    const L1: TruncationLevel = TruncationLevel::Finite(1);
    const L2: TruncationLevel = TruncationLevel::Finite(2);
    const L3: TruncationLevel = TruncationLevel::Finite(3);

    fn deg(p: i64, q: i64) -> RO2Degree {
        RO2Degree::new(p, q)
    }

    fn labels(b: &[YMonomial]) -> Vec<String> {
        b.iter().map(|m| m.to_string()).collect()
    }

    fn y(s: &str) -> YMonomial {
        s.parse().unwrap()
    }

    #[test]
    fn einfty_examples() {
        assert_eq!(labels(&einfty_basis(L2, 1, deg(1, 1))), ["y_0"]);
        for level in [L1, L2, L3, TruncationLevel::Infinite] {
            assert!(einfty_basis(level, 1, deg(1, -1)).is_empty());
        }
        assert_eq!(labels(&einfty_basis(L1, 0, deg(2, -2))), ["u^2"]);
        assert!(einfty_basis(TruncationLevel::Infinite, 0, deg(2, -2)).is_empty());
    }

    #[test]
    fn einfty_elements_have_requested_degree() {
        for level in [L1, L2, L3, TruncationLevel::Infinite] {
            for s in 0..4 {
                for p in -4..9 {
                    for q in -6..6 {
                        for m in einfty_basis(level, s, deg(p, q)) {
                            assert_eq!(m.tridegree().s, s);
                            assert_eq!(m.degree(), deg(p, q));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn stage_examples() {
        // Stage 0 is the whole polynomial algebra.
        assert_eq!(labels(&xadic_stage(L2, 0, 0, deg(1, -1)).unwrap()), ["u"]);
        assert!(xadic_stage(L2, 1, 0, deg(1, -1)).unwrap().is_empty());
        for s in 0..4 {
            for p in -2..8 {
                for q in -6..6 {
                    assert_eq!(
                        xadic_stage(L3, 3, s, deg(p, q)).unwrap(),
                        einfty_basis(L3, s, deg(p, q))
                    );
                }
            }
        }
        assert_eq!(
            xadic_stage(L2, 3, 0, deg(0, 0)),
            Err(XadicError::StageOutOfRange { t: 3, n: L2 })
        );
    }

    #[test]
    fn differential_examples() {
        assert_eq!(xadic_differential(L2, 0, &y("u")).unwrap().to_string(), "a^2 y_0");
        assert!(xadic_differential(L2, 0, &y("u^2")).unwrap().is_zero());
        assert_eq!(xadic_differential(L2, 0, &y("u^3")).unwrap().to_string(), "a^2 u^2 y_0");
        assert_eq!(xadic_differential(L2, 1, &y("u^2")).unwrap().to_string(), "a^4 y_1");
        assert!(xadic_differential(L1, 1, &y("u^2")).unwrap().is_zero());
        assert!(matches!(
            xadic_differential(L2, 1, &y("u")),
            Err(XadicError::NotOnPage { .. })
        ));
        assert!(matches!(
            xadic_differential(L1, 0, &y("y_1")),
            Err(XadicError::NotOnPage { .. })
        ));
    }

    #[test]
    fn next_stage_is_homology() {
        for level in [L1, L2, L3] {
            for t in 0..level.number().unwrap() {
                for s in 0..4 {
                    for p in -2..9 {
                        for q in -8..6 {
                            let d = deg(p, q);
                            let h = stage_homology_dim(level, t, s, d).unwrap();
                            let next = xadic_stage(level, t + 1, s, d).unwrap().len();
                            assert_eq!(h, next, "{level} t={t} s={s} {d}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn stages_shrink() {
        for s in 0..4 {
            for p in -2..9 {
                for q in -8..6 {
                    let counts: Vec<usize> = (0..=3)
                        .map(|t| xadic_stage(L3, t, s, deg(p, q)).unwrap().len())
                        .collect();
                    assert!(counts.windows(2).all(|w| w[1] <= w[0]), "{counts:?}");
                }
            }
        }
    }

    #[test]
    fn coboundary_examples() {
        let r = verify_coboundary(0, 0, L1).unwrap();
        assert!(r.passed);
        assert_eq!(r.differential, "a^2 [x]");
        let r = verify_coboundary(1, 1, L2).unwrap();
        assert!(r.passed);
        assert_eq!(r.differential, "a^4 u^4 [x^2]");
        let r = verify_coboundary(2, 0, L3).unwrap();
        assert!(r.passed);
        assert_eq!(r.expected, "a^8 [x^4]");
        assert_eq!(
            verify_coboundary(2, 0, L2),
            Err(XadicError::LevelTooSmall { r: 2, n: L2 })
        );
    }

    #[test]
    fn torsion_examples() {
        for (r, level) in [(0, L1), (0, L2), (1, L2), (1, TruncationLevel::Infinite)] {
            let report = a_torsion(r, 1, level).unwrap();
            assert!(report.passed(), "{report:?}");
        }
        assert_eq!(a_torsion(1, 0, L2).unwrap().class, "y_1");
    }

    #[test]
    fn a_ranks_match_cobar() {
        use crate::cobar::{a_power_rank, CobarModel};
        let mut nonzero = 0;
        for level in [L1, L2, TruncationLevel::Infinite] {
            for s in 0..3 {
                for p in -2..6 {
                    for q in -5..5 {
                        for power in [1, 2, 3] {
                            let d = deg(p, q);
                            let rank = a_power_rank(&CobarModel, s, d, level, false, power).unwrap();
                            assert_eq!(rank, closed_form_a_rank(level, s, d, power), "{level} s={s} {d} a^{power}");
                            nonzero += (rank > 0) as usize;
                        }
                    }
                }
            }
        }
        assert!(nonzero > 50, "{nonzero}");
    }

    #[test]
    fn einfty_matches_cobar_small() {
        let report = verify_einfty(&[L1, L2, TruncationLevel::Infinite], 3, 5).unwrap();
        assert!(report.passed(), "{:?}", report.mismatches);
        assert!(report.total_dim > 0);
    }

    #[test]
    fn inverted_closed_form_matches_koszul() {
        for level in [L1, L2, L3] {
            for s in 0..4 {
                for p in -5..6 {
                    for q in -5..6 {
                        let d = deg(p, q);
                        assert_eq!(
                            einfty_basis_inverted(level, s, d).len(),
                            model_ext_dim(&KoszulModel, s, d, level, true).unwrap(),
                            "{level} s={s} {d}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn completed_closed_form_matches_limit() {
        for s in 0..4 {
            for p in -5..6 {
                for q in -5..6 {
                    let d = deg(p, q);
                    let r = limit_report(&KoszulModel, s, d, stable_level(d), 2).unwrap();
                    assert_eq!(
                        r.limit_dim,
                        Some(einfty_basis_inverted(TruncationLevel::Infinite, s, d).len()),
                        "s={s} {d} {r:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn vanishing_small() {
        let report = verify_vanishing(&KoszulModel, -3..=3, -3..=-1, 3, 2).unwrap();
        assert!(report.passed(), "{:?}", report.violations);
        assert_eq!(report.cells, 7 * 3 * 4);
        assert_eq!(report.nonzero, 3);
    }

    proptest! {
        #[test]
        fn stage_differential_squares_to_zero(
            (n, t) in (1u32..5).prop_flat_map(|n| (Just(n), 0..=n)),
            a in 0u32..20, ell in 0i64..20, y0 in 0u32..3, y1 in 0u32..3, y2 in 0u32..3,
        ) {
            let level = TruncationLevel::finite(n);
            let mut y = vec![y0, y1, y2];
            y.truncate(n as usize);
            let mono = YMonomial::new(a, ell << t, y);
            if !on_stage(&mono, t) {
                return Ok(());
            }
            let d = xadic_differential(level, t, &mono).unwrap();
            for term in d.iter() {
                prop_assert_eq!(term.degree(), mono.degree());
                prop_assert_eq!(term.filtration(), mono.filtration() + 1);
                prop_assert!(xadic_differential(level, t, term).unwrap().is_zero());
            }
        }
    }
}
