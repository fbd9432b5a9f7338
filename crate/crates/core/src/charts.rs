//! Adams-style charts of the E∞ bases: dots at `(stem, filtration)` within a fixed σ-slice, an
//! optional overlay of conjectural `d_2` differentials, and SVG/TSV/JSON rendering.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::cobar::{limit_report, stable_level, CobarError};
use crate::grading::{F2Element, RO2Degree, YMonomial};
use crate::hopf::TruncationLevel;
use crate::koszul::KoszulModel;
use crate::xadic::{admissible, einfty_basis, einfty_basis_inverted};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChartError {
    #[error("unknown chart format `{0}` (expected svg, tsv or json)")]
    UnknownFormat(String),
    #[error("limit at s={s}, {degree} has dimension {limit:?} but the closed form has {closed_form} classes")]
    CountMismatch {
        s: u32,
        degree: RO2Degree,
        limit: Option<usize>,
        closed_form: usize,
    },
    #[error(transparent)]
    Cobar(#[from] CobarError),
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ChartDot {
    pub stem: i64,
    pub filtration: u32,
    pub sigma: i64,
    pub label: String,
}

impl ChartDot {
    pub fn from_monomial(m: &YMonomial) -> Self {
        let t = m.tridegree();
        let stem = t.stem();
        ChartDot {
            stem: stem.p,
            filtration: t.s,
            sigma: stem.q,
            label: m.to_string(),
        }
    }

    pub fn monomial(&self) -> Option<YMonomial> {
        YMonomial::from_str(&self.label).ok()
    }

    fn position(&self) -> (i64, u32, i64) {
        (self.stem, self.filtration, self.sigma)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct ChartArrow {
    pub source: ChartDot,
    pub target: ChartDot,
    pub page: u32,
    pub conjectural: bool,
}

/// An overlay target that was not drawn.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DroppedArrow {
    pub source: String,
    pub target: String,
    pub reason: &'static str,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Overlay {
    pub arrows: Vec<ChartArrow>,
    pub dropped: Vec<DroppedArrow>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChartFormat {
    Svg,
    Tsv,
    Json,
}

impl FromStr for ChartFormat {
    type Err = ChartError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "svg" => Ok(ChartFormat::Svg),
            "tsv" => Ok(ChartFormat::Tsv),
            "json" => Ok(ChartFormat::Json),
            other => Err(ChartError::UnknownFormat(other.to_string())),
        }
    }
}

/// Uncompleted E∞ at `n = ∞` (u not inverted) in the σ-slice `sigma`.
pub fn uncompleted_chart(sigma: i64, stems: std::ops::RangeInclusive<i64>, s_max: u32) -> Vec<ChartDot> {
    let mut dots: Vec<ChartDot> = stems
        .flat_map(|stem| {
            (0..=s_max).flat_map(move |s| {
                einfty_basis(TruncationLevel::Infinite, s, RO2Degree::new(stem + s as i64, sigma))
                    .iter()
                    .map(ChartDot::from_monomial)
                    .collect::<Vec<_>>()
            })
        })
        .collect();
    dots.sort();
    dots
}

/// The chart in integer stems `0..=stem_max`.
pub fn integer_stem_chart(stem_max: i64, s_max: u32) -> Vec<ChartDot> {
    uncompleted_chart(0, 0..=stem_max, s_max)
}

/// Completed E₂ in the σ-slice `sigma`. Dimensions come from the inverse limit (Koszul engine,
/// starting at `n_start` or the stable level) and labels from the completed closed form; the two
/// must agree.
pub fn slice_chart(
    sigma: i64,
    stems: std::ops::RangeInclusive<i64>,
    s_max: u32,
    n_start: Option<u32>,
) -> Result<Vec<ChartDot>, ChartError> {
    let mut dots = Vec::new();
    for stem in stems {
        for s in 0..=s_max {
            let degree = RO2Degree::new(stem + s as i64, sigma);
            let start = n_start.unwrap_or_else(|| stable_level(degree));
            let limit = limit_report(&KoszulModel, s, degree, start, 2)?.limit_dim;
            let basis = einfty_basis_inverted(TruncationLevel::Infinite, s, degree);
            if limit != Some(basis.len()) {
                return Err(ChartError::CountMismatch {
                    s,
                    degree,
                    limit,
                    closed_form: basis.len(),
                });
            }
            dots.extend(basis.iter().map(ChartDot::from_monomial));
        }
    }
    dots.sort();
    Ok(dots)
}

/// `d_2(y_r) = a y_0 y_{r-1}^2` for `r >= 1`, extended as a derivation with `d_2(a) = d_2(u) = 0`.
pub fn conjectural_d2(m: &YMonomial) -> F2Element<YMonomial> {
    let mut out = F2Element::zero();
    for (r, &i) in m.exponents().iter().enumerate().skip(1) {
        if i % 2 == 1 {
            let mut y = m.exponents().to_vec();
            y[r] -= 1;
            y[0] += 1;
            y[r - 1] += 2;
            out.add_term(YMonomial::new(m.a + 1, m.u, y));
        }
    }
    out
}

/// Conjectural `d_2` arrows between dots of `chart`. Targets that are zero in E∞ or fall outside
/// the chart are recorded in `dropped`.
pub fn conjectural_d2_overlay(chart: &[ChartDot]) -> Overlay {
    let present: BTreeSet<&ChartDot> = chart.iter().collect();
    let mut overlay = Overlay::default();
    for dot in chart {
        let Some(m) = dot.monomial() else { continue };
        for target in conjectural_d2(&m).iter() {
            let target_dot = ChartDot::from_monomial(target);
            if present.contains(&target_dot) {
                overlay.arrows.push(ChartArrow {
                    source: dot.clone(),
                    target: target_dot,
                    page: 2,
                    conjectural: true,
                });
            } else {
                let reason = if admissible(target, TruncationLevel::Infinite) {
                    "outside chart"
                } else {
                    "zero in E-infinity"
                };
                overlay.dropped.push(DroppedArrow {
                    source: dot.label.clone(),
                    target: target.to_string(),
                    reason,
                });
            }
        }
    }
    overlay.arrows.sort();
    overlay
}

#[derive(Serialize)]
struct ChartDocument<'a> {
    dots: &'a [ChartDot],
    arrows: &'a [ChartArrow],
}

pub fn render(chart: &[ChartDot], arrows: &[ChartArrow], format: ChartFormat) -> String {
    match format {
        ChartFormat::Tsv => render_tsv(chart, arrows),
        ChartFormat::Json => {
            let mut s = serde_json::to_string_pretty(&ChartDocument { dots: chart, arrows })
                .expect("chart serializes");
            s.push('\n');
            s
        }
        ChartFormat::Svg => render_svg(chart, arrows),
    }
}

fn render_tsv(chart: &[ChartDot], arrows: &[ChartArrow]) -> String {
    let mut out = String::from("stem\tfiltration\tsigma\tlabel\n");
    for d in chart {
        let _ = writeln!(out, "{}\t{}\t{}\t{}", d.stem, d.filtration, d.sigma, d.label);
    }
    if !arrows.is_empty() {
        out.push_str("\nsrc_stem\tsrc_filt\ttgt_stem\ttgt_filt\tpage\tconjectural\n");
        for a in arrows {
            let _ = writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}\t{}",
                a.source.stem, a.source.filtration, a.target.stem, a.target.filtration, a.page, a.conjectural
            );
        }
    }
    out
}

const CELL: i64 = 48;
const MARGIN: i64 = 40;

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn render_svg(chart: &[ChartDot], arrows: &[ChartArrow]) -> String {
    let stem_lo = chart.iter().map(|d| d.stem).min().unwrap_or(0);
    let stem_hi = chart.iter().map(|d| d.stem).max().unwrap_or(0);
    let filt_hi = chart.iter().map(|d| d.filtration as i64).max().unwrap_or(0);
    let width = (stem_hi - stem_lo + 1) * CELL + 2 * MARGIN;
    let height = (filt_hi + 1) * CELL + 2 * MARGIN;

    // Dots sharing a grid cell are spread horizontally.
    let mut placed: Vec<(&ChartDot, i64, i64)> = Vec::new();
    let mut i = 0;
    while i < chart.len() {
        let mut j = i;
        while j < chart.len() && chart[j].position() == chart[i].position() {
            j += 1;
        }
        let count = (j - i) as i64;
        for (k, dot) in chart[i..j].iter().enumerate() {
            let cx = MARGIN + (dot.stem - stem_lo) * CELL + CELL / 2 + (2 * k as i64 - (count - 1)) * 6;
            let cy = height - MARGIN - dot.filtration as i64 * CELL - CELL / 2;
            placed.push((dot, cx, cy));
        }
        i = j;
    }
    let locate = |dot: &ChartDot| {
        placed
            .iter()
            .find(|(d, _, _)| *d == dot)
            .map(|&(_, x, y)| (x, y))
    };

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="11">"#
    );
    out.push_str(concat!(
        "<defs><marker id=\"head\" viewBox=\"0 0 8 8\" refX=\"7\" refY=\"4\" markerWidth=\"6\" markerHeight=\"6\" orient=\"auto\">",
        "<path d=\"M0,0 L8,4 L0,8 z\" fill=\"#b22\"/></marker></defs>\n"
    ));
    out.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    for stem in stem_lo..=stem_hi {
        let x = MARGIN + (stem - stem_lo) * CELL + CELL / 2;
        let _ = writeln!(
            out,
            r##"<line x1="{x}" y1="{}" x2="{x}" y2="{}" stroke="#ddd"/><text x="{x}" y="{}" text-anchor="middle">{stem}</text>"##,
            MARGIN,
            height - MARGIN,
            height - MARGIN / 2
        );
    }
    for filt in 0..=filt_hi {
        let y = height - MARGIN - filt * CELL - CELL / 2;
        let _ = writeln!(
            out,
            r##"<line x1="{}" y1="{y}" x2="{}" y2="{y}" stroke="#ddd"/><text x="{}" y="{}" text-anchor="end">{filt}</text>"##,
            MARGIN,
            width - MARGIN,
            MARGIN - 8,
            y + 4
        );
    }
    for arrow in arrows {
        let (Some((x1, y1)), Some((x2, y2))) = (locate(&arrow.source), locate(&arrow.target)) else {
            continue;
        };
        let dash = if arrow.conjectural { r#" stroke-dasharray="4 3""# } else { "" };
        let _ = writeln!(
            out,
            r##"<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="#b22"{dash} marker-end="url(#head)"><title>d{} {} → {}</title></line>"##,
            arrow.page,
            escape(&arrow.source.label),
            escape(&arrow.target.label)
        );
    }
    for &(dot, cx, cy) in &placed {
        let _ = writeln!(
            out,
            r#"<circle cx="{cx}" cy="{cy}" r="4" fill="black"><title>{} ({}, {})</title></circle>"#,
            escape(&dot.label),
            dot.stem,
            dot.filtration
        );
    }
    if arrows.iter().any(|a| a.conjectural) {
        let _ = writeln!(
            out,
            r##"<text x="{}" y="{}" text-anchor="end" font-size="20" fill="#b22" fill-opacity="0.35">conjectural</text>"##,
            width - MARGIN / 2,
            MARGIN
        );
    }
    out.push_str("</svg>\n");
    out
}
