//! Koszul complex for the same Ext groups as the cobar complex.
//!
//! The dual of `F2[x]/x^{2^n}` is exterior on `e_r = γ_{2^r}` (`r < n`), so
//! `M ⊗ F2[y_0, ..., y_{n-1}]` with `d(m y_I) = Σ_r (e_r m) y_r y_I` computes Ext. Here
//! `e_r (a^α u^β) = C(β, 2^r) a^{α + 2^{r+1}} u^{β - 2^r}`. Its cochain spaces have dimension
//! `C(n+s-1, s)`, which is what makes the completed groups computable at large `n` and `s`.

use crate::cobar::{CobarError, CochainModel, MAX_BASIS};
use crate::grading::{binom_mod2, F2Element, RO2Degree, YMonomial};
use crate::hopf::TruncationLevel;

#[derive(Clone, Copy, Debug, Default)]
pub struct KoszulModel;

/// Number of polynomial generators `y_r` available in internal degree `degree`.
fn generator_count(degree: RO2Degree, level: TruncationLevel, invert_u: bool) -> Result<usize, CobarError> {
    match (level, invert_u) {
        (TruncationLevel::Finite(n), _) => Ok(n as usize),
        (TruncationLevel::Infinite, false) if degree.p >= 1 => Ok(64 - (degree.p as u64).leading_zeros() as usize),
        (TruncationLevel::Infinite, false) => Ok(0),
        (TruncationLevel::Infinite, true) => Err(CobarError::UnboundedBasis),
    }
}

fn compositions(total: u32, parts: usize, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if parts == 0 {
        if total == 0 {
            out.push(prefix.clone());
        }
        return;
    }
    if parts == 1 {
        prefix.push(total);
        out.push(prefix.clone());
        prefix.pop();
        return;
    }
    for i in 0..=total {
        prefix.push(i);
        compositions(total - i, parts - 1, prefix, out);
        prefix.pop();
    }
}

impl CochainModel for KoszulModel {
    type Mono = YMonomial;

    fn name(&self) -> &'static str {
        "koszul"
    }

    fn basis(
        &self,
        s: u32,
        degree: RO2Degree,
        level: TruncationLevel,
        invert_u: bool,
    ) -> Result<Vec<YMonomial>, CobarError> {
        let gens = generator_count(degree, level, invert_u)?;
        let mut exps = Vec::new();
        compositions(s, gens, &mut Vec::new(), &mut exps);
        let mut out = Vec::new();
        for y in exps {
            let weight: i64 = y.iter().enumerate().map(|(r, &i)| (i as i64) << r).sum();
            let u = degree.p - weight;
            let a = 2 * weight - degree.p - degree.q;
            if a < 0 || (!invert_u && u < 0) {
                continue;
            }
            if out.len() >= MAX_BASIS {
                return Err(CobarError::BasisTooLarge { s, limit: MAX_BASIS });
            }
            out.push(YMonomial::new(a as u32, u, y));
        }
        out.sort();
        Ok(out)
    }

    fn differential(&self, m: &YMonomial, level: TruncationLevel) -> Result<F2Element<YMonomial>, CobarError> {
        let gens = match level {
            TruncationLevel::Finite(n) => n as usize,
            // Only bits of u's exponent contribute, and it is non-negative here.
            TruncationLevel::Infinite if m.u >= 0 => 64 - (m.u as u64).leading_zeros() as usize,
            TruncationLevel::Infinite => return Err(CobarError::UnboundedBasis),
        };
        let mut out = F2Element::zero();
        for r in 0..gens {
            if binom_mod2(m.u, 1 << r) {
                let shifted = YMonomial::new(m.a + (2 << r), m.u - (1 << r), m.exponents().to_vec());
                out.add_term(shifted.times_y(r, 1));
            }
        }
        Ok(out)
    }

    fn restrict(&self, m: &YMonomial, level: TruncationLevel) -> Option<YMonomial> {
        match level.number() {
            Some(n) if m.exponents().len() > n as usize => None,
            _ => Some(m.clone()),
        }
    }

    fn times_a(&self, m: &YMonomial, power: u32) -> YMonomial {
        YMonomial::new(m.a + power, m.u, m.exponents().to_vec())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cobar::{assemble_slice, ext_group, limit_report, CobarModel};

    fn deg(p: i64, q: i64) -> RO2Degree {
        RO2Degree::new(p, q)
    }

    #[test]
    fn basis_size_is_multiset_count() {
        // Below the diagonal every multi-index survives once u is inverted: C(n+s-1, s).
        let level = TruncationLevel::finite(3);
        for (s, expected) in [(0, 1), (1, 3), (2, 6), (3, 10), (4, 15)] {
            assert_eq!(KoszulModel.basis(s, deg(0, -40), level, true).unwrap().len(), expected);
        }
    }

    #[test]
    fn d_squared_vanishes() {
        for level in [TruncationLevel::finite(1), TruncationLevel::finite(3), TruncationLevel::Infinite] {
            for inv in [false, true] {
                if inv && !level.is_finite() {
                    continue;
                }
                for s in 0..4 {
                    for p in -6..8 {
                        for q in -8..8 {
                            let slice = assemble_slice(&KoszulModel, s, deg(p, q), level, inv).unwrap();
                            assert!(slice.d_squared_is_zero());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn agrees_with_cobar() {
        for (level, inv) in [
            (TruncationLevel::finite(1), false),
            (TruncationLevel::finite(2), false),
            (TruncationLevel::finite(2), true),
            (TruncationLevel::finite(3), true),
            (TruncationLevel::Infinite, false),
        ] {
            for s in 0..4 {
                for p in -4..7 {
                    for q in -6..6 {
                        let d = deg(p, q);
                        let k = ext_group(&KoszulModel, s, d, level, inv).unwrap().dim();
                        let c = ext_group(&CobarModel, s, d, level, inv).unwrap().dim();
                        assert_eq!(k, c, "s={s} {d} {level} inv={inv}");
                    }
                }
            }
        }
    }

    #[test]
    fn limits_agree_with_cobar() {
        for s in 0..3 {
            for p in -3..=3 {
                for q in -3..=1 {
                    let k = limit_report(&KoszulModel, s, deg(p, q), 1, 2).unwrap();
                    let c = limit_report(&CobarModel, s, deg(p, q), 1, 2).unwrap();
                    assert_eq!(k.image_dims, c.image_dims, "s={s} p={p} q={q}");
                }
            }
        }
    }

    #[test]
    fn differential_reads_bits() {
        let level = TruncationLevel::finite(3);
        let m: YMonomial = "u^6".parse().unwrap();
        // 6 = 110b: e_1 and e_2 act.
        assert_eq!(
            KoszulModel.differential(&m, level).unwrap().to_string(),
            "a^8 u^2 y_2 + a^4 u^4 y_1"
        );
        let m: YMonomial = "u^-1".parse().unwrap();
        assert_eq!(
            KoszulModel.differential(&m, level).unwrap().to_string(),
            "a^8 u^-5 y_2 + a^4 u^-3 y_1 + a^2 u^-2 y_0"
        );
    }
}
