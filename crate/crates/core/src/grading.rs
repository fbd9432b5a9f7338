//! RO(C2) degrees, monomials, mod-2 binomial coefficients, and the canonical label format.
//!
//! Two monomial families live here:
//!
//! * [`CobarMonomial`] `a^α u^β [x^{e1}|...|x^{es}]`, a basis element of the cobar complex;
//! * [`YMonomial`] `a^m u^k y_0^{i0} y_1^{i1} ...`, used both for closed-form E∞ basis elements
//!   and for cochains of the Koszul complex (where `y_r` stands for the class of `[x^{2^r}]`).
//!
//! Labels print in a stable form (`a^2 u^3 [x|x^2]`, `a u^4 y_0^5`, unit factors omitted, `1`
//! for the empty monomial) and parse back with [`std::str::FromStr`].

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// An element `p + qσ` of the RO(C2) grading lattice.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RO2Degree {
    pub p: i64,
    pub q: i64,
}

impl RO2Degree {
    pub const ZERO: RO2Degree = RO2Degree { p: 0, q: 0 };
    pub const ONE: RO2Degree = RO2Degree { p: 1, q: 0 };
    pub const SIGMA: RO2Degree = RO2Degree { p: 0, q: 1 };
    /// The regular representation `1 + σ`, the degree of `x`.
    pub const RHO: RO2Degree = RO2Degree { p: 1, q: 1 };
    /// `|a| = -σ`.
    pub const A: RO2Degree = RO2Degree { p: 0, q: -1 };
    /// `|u| = 1 - σ`.
    pub const U: RO2Degree = RO2Degree { p: 1, q: -1 };
    /// `|θ| = -2 + 2σ`.
    pub const THETA: RO2Degree = RO2Degree { p: -2, q: 2 };

    pub const fn new(p: i64, q: i64) -> Self {
        RO2Degree { p, q }
    }

    /// Underlying (non-equivariant) dimension `p + q`.
    pub fn underlying(self) -> i64 {
        self.p + self.q
    }
}

impl Add for RO2Degree {
    type Output = RO2Degree;
    fn add(self, rhs: RO2Degree) -> RO2Degree {
        RO2Degree::new(self.p + rhs.p, self.q + rhs.q)
    }
}

impl AddAssign for RO2Degree {
    fn add_assign(&mut self, rhs: RO2Degree) {
        self.p += rhs.p;
        self.q += rhs.q;
    }
}

impl Sub for RO2Degree {
    type Output = RO2Degree;
    fn sub(self, rhs: RO2Degree) -> RO2Degree {
        RO2Degree::new(self.p - rhs.p, self.q - rhs.q)
    }
}

impl Neg for RO2Degree {
    type Output = RO2Degree;
    fn neg(self) -> RO2Degree {
        RO2Degree::new(-self.p, -self.q)
    }
}

impl Mul<RO2Degree> for i64 {
    type Output = RO2Degree;
    fn mul(self, rhs: RO2Degree) -> RO2Degree {
        RO2Degree::new(self * rhs.p, self * rhs.q)
    }
}

impl fmt::Display for RO2Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{:+}σ", self.p, self.q)
    }
}

/// Cohomological filtration together with an internal degree `k + ℓσ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Tridegree {
    pub s: u32,
    pub internal: RO2Degree,
}

impl Tridegree {
    pub fn new(s: u32, internal: RO2Degree) -> Self {
        Tridegree { s, internal }
    }

    /// The degree of the homotopy class this tridegree contributes to: `(k - s) + ℓσ`.
    pub fn stem(&self) -> RO2Degree {
        RO2Degree::new(self.internal.p - self.s as i64, self.internal.q)
    }
}

/// `C(k, i) mod 2` for any integer `k` and `i >= 0`.
///
/// Lucas' theorem for `k >= 0`; for negative `k` uses `C(k, i) = (-1)^i C(i - k - 1, i)`.
pub fn binom_mod2(k: i64, i: u64) -> bool {
    let k = k as i128;
    let i = i as i128;
    let top = if k >= 0 { k } else { i - k - 1 };
    (i & !top) == 0 && i <= top
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("unexpected token `{0}`")]
    UnexpectedToken(String),
    #[error("bad exponent in `{0}`")]
    BadExponent(String),
    #[error("factor `{0}` appears twice")]
    Repeated(String),
    #[error("empty input")]
    Empty,
}

fn parse_power(token: &str, base: &str) -> Result<Option<i64>, ParseError> {
    let Some(rest) = token.strip_prefix(base) else {
        return Ok(None);
    };
    if rest.is_empty() {
        return Ok(Some(1));
    }
    let exp = rest
        .strip_prefix('^')
        .ok_or_else(|| ParseError::UnexpectedToken(token.to_string()))?;
    let exp = exp.trim_start_matches('{').trim_end_matches('}');
    exp.parse::<i64>()
        .map(Some)
        .map_err(|_| ParseError::BadExponent(token.to_string()))
}

fn push_power(parts: &mut Vec<String>, base: &str, exp: i64) {
    match exp {
        0 => {}
        1 => parts.push(base.to_string()),
        e => parts.push(format!("{base}^{e}")),
    }
}

/// Accumulates `a`- and `u`-powers while parsing a label, rejecting repeats.
#[derive(Default)]
struct CoefficientParser {
    a: Option<i64>,
    u: Option<i64>,
}

impl CoefficientParser {
    fn accept(&mut self, token: &str) -> Result<bool, ParseError> {
        if let Some(e) = parse_power(token, "a")? {
            if self.a.replace(e).is_some() {
                return Err(ParseError::Repeated("a".into()));
            }
            return Ok(true);
        }
        if let Some(e) = parse_power(token, "u")? {
            if self.u.replace(e).is_some() {
                return Err(ParseError::Repeated("u".into()));
            }
            return Ok(true);
        }
        Ok(false)
    }

    fn finish(self) -> Result<(u32, i64), ParseError> {
        let a = self.a.unwrap_or(0);
        if a < 0 {
            return Err(ParseError::BadExponent(format!("a^{a}")));
        }
        Ok((a as u32, self.u.unwrap_or(0)))
    }
}

/// `a^α u^β [x^{e1}|...|x^{es}]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CobarMonomial {
    pub a: u32,
    pub u: i64,
    pub word: Vec<u32>,
}

impl CobarMonomial {
    pub fn new(a: u32, u: i64, word: Vec<u32>) -> Self {
        CobarMonomial { a, u, word }
    }

    /// A word-free monomial `a^α u^β`.
    pub fn coefficient(a: u32, u: i64) -> Self {
        CobarMonomial::new(a, u, Vec::new())
    }

    pub fn filtration(&self) -> u32 {
        self.word.len() as u32
    }

    pub fn x_weight(&self) -> i64 {
        self.word.iter().map(|&e| e as i64).sum()
    }

    pub fn degree(&self) -> RO2Degree {
        self.a as i64 * RO2Degree::A + self.u * RO2Degree::U + self.x_weight() * RO2Degree::RHO
    }

    pub fn tridegree(&self) -> Tridegree {
        Tridegree::new(self.filtration(), self.degree())
    }

    /// Product: coefficients multiply, bar words concatenate.
    pub fn mul(&self, other: &CobarMonomial) -> CobarMonomial {
        let mut word = self.word.clone();
        word.extend_from_slice(&other.word);
        CobarMonomial::new(self.a + other.a, self.u + other.u, word)
    }

    pub fn times_a(&self, power: u32) -> CobarMonomial {
        CobarMonomial::new(self.a + power, self.u, self.word.clone())
    }
}

impl Ord for CobarMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.word
            .len()
            .cmp(&other.word.len())
            .then_with(|| self.word.cmp(&other.word))
            .then_with(|| self.u.cmp(&other.u))
            .then_with(|| self.a.cmp(&other.a))
    }
}

impl PartialOrd for CobarMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for CobarMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        push_power(&mut parts, "a", self.a as i64);
        push_power(&mut parts, "u", self.u);
        if !self.word.is_empty() {
            let letters: Vec<String> = self
                .word
                .iter()
                .map(|&e| if e == 1 { "x".to_string() } else { format!("x^{e}") })
                .collect();
            parts.push(format!("[{}]", letters.join("|")));
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join(" "))
        }
    }
}

impl FromStr for CobarMonomial {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Err(ParseError::Empty);
        }
        if s == "1" {
            return Ok(CobarMonomial::coefficient(0, 0));
        }
        let (coeffs, word) = match s.find('[') {
            Some(i) => (&s[..i], Some(&s[i..])),
            None => (s, None),
        };
        let mut parser = CoefficientParser::default();
        for token in coeffs.split_whitespace() {
            if !parser.accept(token)? {
                return Err(ParseError::UnexpectedToken(token.to_string()));
            }
        }
        let (a, u) = parser.finish()?;
        let word = match word {
            None => Vec::new(),
            Some(w) => {
                let inner = w
                    .trim()
                    .strip_prefix('[')
                    .and_then(|w| w.strip_suffix(']'))
                    .ok_or_else(|| ParseError::UnexpectedToken(w.to_string()))?;
                inner
                    .split('|')
                    .map(|letter| {
                        let letter = letter.trim();
                        match parse_power(letter, "x")? {
                            Some(e) if e >= 1 => Ok(e as u32),
                            _ => Err(ParseError::UnexpectedToken(letter.to_string())),
                        }
                    })
                    .collect::<Result<Vec<_>, _>>()?
            }
        };
        Ok(CobarMonomial::new(a, u, word))
    }
}

/// `a^m u^k y_I` with `y_I = ∏ y_r^{i_r}`. Trailing zero exponents are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct YMonomial {
    pub a: u32,
    pub u: i64,
    y: Vec<u32>,
}

impl YMonomial {
    pub fn new(a: u32, u: i64, y: Vec<u32>) -> Self {
        let mut m = YMonomial { a, u, y };
        m.trim();
        m
    }

    fn trim(&mut self) {
        while self.y.last() == Some(&0) {
            self.y.pop();
        }
    }

    /// Exponent tuple `(i_0, i_1, ...)`, without trailing zeros.
    pub fn exponents(&self) -> &[u32] {
        &self.y
    }

    pub fn exponent(&self, r: usize) -> u32 {
        self.y.get(r).copied().unwrap_or(0)
    }

    /// `Σ i_r`.
    pub fn filtration(&self) -> u32 {
        self.y.iter().sum()
    }

    /// `Σ i_r 2^r`, the total x-weight.
    pub fn x_weight(&self) -> i64 {
        self.y
            .iter()
            .enumerate()
            .map(|(r, &i)| (i as i64) << r)
            .sum()
    }

    /// Smallest `r` with `i_r > 0`, if any.
    pub fn min_index(&self) -> Option<usize> {
        self.y.iter().position(|&i| i > 0)
    }

    /// Largest `r` with `i_r > 0`, if any.
    pub fn max_index(&self) -> Option<usize> {
        if self.y.is_empty() {
            None
        } else {
            Some(self.y.len() - 1)
        }
    }

    pub fn degree(&self) -> RO2Degree {
        self.a as i64 * RO2Degree::A + self.u * RO2Degree::U + self.x_weight() * RO2Degree::RHO
    }

    pub fn tridegree(&self) -> Tridegree {
        Tridegree::new(self.filtration(), self.degree())
    }

    /// Multiplies by `y_r^count`.
    pub fn times_y(&self, r: usize, count: u32) -> YMonomial {
        let mut y = self.y.clone();
        if y.len() <= r {
            y.resize(r + 1, 0);
        }
        y[r] += count;
        YMonomial::new(self.a, self.u, y)
    }

    pub fn mul(&self, other: &YMonomial) -> YMonomial {
        let len = self.y.len().max(other.y.len());
        let y = (0..len)
            .map(|r| self.exponent(r) + other.exponent(r))
            .collect();
        YMonomial::new(self.a + other.a, self.u + other.u, y)
    }
}

impl Ord for YMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let len = self.y.len().max(other.y.len());
        self.filtration()
            .cmp(&other.filtration())
            .then_with(|| {
                (0..len)
                    .map(|r| self.exponent(r).cmp(&other.exponent(r)))
                    .find(|o| o.is_ne())
                    .unwrap_or(Ordering::Equal)
            })
            .then_with(|| self.u.cmp(&other.u))
            .then_with(|| self.a.cmp(&other.a))
    }
}

impl PartialOrd for YMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for YMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        push_power(&mut parts, "a", self.a as i64);
        push_power(&mut parts, "u", self.u);
        for (r, &i) in self.y.iter().enumerate() {
            push_power(&mut parts, &format!("y_{r}"), i as i64);
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join(" "))
        }
    }
}

impl FromStr for YMonomial {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Err(ParseError::Empty);
        }
        if s == "1" {
            return Ok(YMonomial::new(0, 0, Vec::new()));
        }
        let mut parser = CoefficientParser::default();
        let mut y: Vec<u32> = Vec::new();
        for token in s.split_whitespace() {
            if parser.accept(token)? {
                continue;
            }
            let rest = token
                .strip_prefix("y_")
                .ok_or_else(|| ParseError::UnexpectedToken(token.to_string()))?;
            let (index, exp) = match rest.split_once('^') {
                Some((i, e)) => (i, e.trim_start_matches('{').trim_end_matches('}')),
                None => (rest, "1"),
            };
            let r: usize = index
                .trim_start_matches('{')
                .trim_end_matches('}')
                .parse()
                .map_err(|_| ParseError::UnexpectedToken(token.to_string()))?;
            let e: u32 = exp
                .parse()
                .map_err(|_| ParseError::BadExponent(token.to_string()))?;
            if y.len() <= r {
                y.resize(r + 1, 0);
            }
            if y[r] != 0 {
                return Err(ParseError::Repeated(format!("y_{r}")));
            }
            y[r] = e;
        }
        let (a, u) = parser.finish()?;
        Ok(YMonomial::new(a, u, y))
    }
}

/// A formal sum of monomials with coefficients in F2, stored as the set of monomials present.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct F2Element<M: Ord> {
    terms: BTreeSet<M>,
}

impl<M: Ord> Default for F2Element<M> {
    fn default() -> Self {
        F2Element {
            terms: BTreeSet::new(),
        }
    }
}

impl<M: Ord + Clone> F2Element<M> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_monomial(m: M) -> Self {
        let mut e = Self::zero();
        e.add_term(m);
        e
    }

    /// Adds a monomial; adding it a second time cancels it.
    pub fn add_term(&mut self, m: M) {
        if !self.terms.remove(&m) {
            self.terms.insert(m);
        }
    }

    pub fn add_assign(&mut self, other: &F2Element<M>) {
        for m in &other.terms {
            self.add_term(m.clone());
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

    pub fn contains(&self, m: &M) -> bool {
        self.terms.contains(m)
    }

    /// Terms in canonical order.
    pub fn iter(&self) -> impl Iterator<Item = &M> {
        self.terms.iter()
    }

    pub fn retain(&mut self, f: impl FnMut(&M) -> bool) {
        self.terms.retain(f);
    }

    pub fn map<N: Ord + Clone>(&self, mut f: impl FnMut(&M) -> N) -> F2Element<N> {
        let mut out = F2Element::zero();
        for m in &self.terms {
            out.add_term(f(m));
        }
        out
    }
}

impl<M: Ord + Clone> FromIterator<M> for F2Element<M> {
    fn from_iter<T: IntoIterator<Item = M>>(iter: T) -> Self {
        let mut e = F2Element::zero();
        for m in iter {
            e.add_term(m);
        }
        e
    }
}

impl<M: Ord + Clone> IntoIterator for F2Element<M> {
    type Item = M;
    type IntoIter = std::collections::btree_set::IntoIter<M>;
    fn into_iter(self) -> Self::IntoIter {
        self.terms.into_iter()
    }
}

impl<M: Ord + fmt::Display> fmt::Display for F2Element<M> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|m| m.to_string()).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    /// Generalized binomial coefficient `k (k-1) ... (k-i+1) / i!` in exact integers.
    fn binom_exact(k: i64, i: u64) -> BigInt {
        let mut num = BigInt::from(1);
        let mut den = BigInt::from(1);
        for j in 0..i as i64 {
            num *= BigInt::from(k - j);
            den *= BigInt::from(j + 1);
        }
        num / den
    }

    #[test]
    fn binom_examples() {
        assert!(!binom_mod2(2, 1));
        for i in 0..20 {
            assert!(binom_mod2(-1, i));
        }
        assert!(binom_mod2(6, 2));
        assert!(!binom_mod2(3, 4));
        assert!(binom_mod2(0, 0));
    }

    #[test]
    fn binom_matches_exact_integers() {
        for k in -64i64..=64 {
            for i in 0u64..=64 {
                let exact = binom_exact(k, i);
                let parity = (exact % BigInt::from(2)) != BigInt::from(0);
                assert_eq!(binom_mod2(k, i), parity, "C({k},{i})");
            }
        }
    }

    #[test]
    fn generator_degrees() {
        assert_eq!(CobarMonomial::coefficient(1, 0).degree(), RO2Degree::new(0, -1));
        assert_eq!(CobarMonomial::coefficient(0, 1).degree(), RO2Degree::new(1, -1));
        let m = CobarMonomial::new(0, 2, vec![1, 1]);
        assert_eq!(m.degree(), RO2Degree::new(4, 0));
        assert_eq!(m.filtration(), 2);
        assert_eq!(RO2Degree::THETA, RO2Degree::new(-2, 2));
    }

    #[test]
    fn stem_of_tridegree() {
        let t = Tridegree::new(3, RO2Degree::new(8, 0));
        assert_eq!(t.stem(), RO2Degree::new(5, 0));
    }

    #[test]
    fn cobar_labels() {
        assert_eq!(CobarMonomial::coefficient(0, 0).to_string(), "1");
        assert_eq!(CobarMonomial::new(0, 0, vec![1]).to_string(), "[x]");
        assert_eq!(CobarMonomial::coefficient(0, 2).to_string(), "u^2");
        assert_eq!(
            CobarMonomial::new(2, 3, vec![1, 2]).to_string(),
            "a^2 u^3 [x|x^2]"
        );
        assert_eq!(CobarMonomial::new(1, -2, vec![]).to_string(), "a u^-2");
        let parsed: CobarMonomial = "a^2 u^3 [x|x^2]".parse().unwrap();
        assert_eq!(parsed, CobarMonomial::new(2, 3, vec![1, 2]));
        assert!("a a".parse::<CobarMonomial>().is_err());
        assert!("b".parse::<CobarMonomial>().is_err());
    }

    #[test]
    fn y_labels() {
        let m = YMonomial::new(1, 4, vec![5]);
        assert_eq!(m.to_string(), "a u^4 y_0^5");
        assert_eq!(YMonomial::new(2, 0, vec![0, 1]).to_string(), "a^2 y_1");
        assert_eq!(YMonomial::new(0, 0, vec![0, 0]).to_string(), "1");
        assert_eq!("a y_0".parse::<YMonomial>().unwrap(), YMonomial::new(1, 0, vec![1]));
        assert_eq!(
            "u^4 y_0^2 y_1".parse::<YMonomial>().unwrap(),
            YMonomial::new(0, 4, vec![2, 1])
        );
        assert!("y_0 y_0".parse::<YMonomial>().is_err());
    }

    #[test]
    fn y_monomial_degrees() {
        // u^4 y_0^2 y_1: internal (8, 0), filtration 3, stem 5.
        let m = YMonomial::new(0, 4, vec![2, 1]);
        assert_eq!(m.degree(), RO2Degree::new(8, 0));
        assert_eq!(m.tridegree().stem(), RO2Degree::new(5, 0));
        assert_eq!(m.min_index(), Some(0));
        assert_eq!(YMonomial::new(0, 0, vec![0, 0, 1]).min_index(), Some(2));
    }

    #[test]
    fn f2_element_cancels() {
        let mut e = F2Element::zero();
        e.add_term(CobarMonomial::coefficient(0, 1));
        e.add_term(CobarMonomial::new(2, 0, vec![1]));
        assert_eq!(e.to_string(), "u + a^2 [x]");
        e.add_term(CobarMonomial::coefficient(0, 1));
        assert_eq!(e.to_string(), "a^2 [x]");
        assert_eq!(F2Element::<CobarMonomial>::zero().to_string(), "0");
    }

    fn cobar_monomial() -> impl Strategy<Value = CobarMonomial> {
        (0u32..20, -20i64..20, proptest::collection::vec(1u32..16, 0..5))
            .prop_map(|(a, u, w)| CobarMonomial::new(a, u, w))
    }

    fn y_monomial() -> impl Strategy<Value = YMonomial> {
        (0u32..20, -20i64..20, proptest::collection::vec(0u32..5, 0..5))
            .prop_map(|(a, u, y)| YMonomial::new(a, u, y))
    }

    proptest! {
        #[test]
        fn cobar_label_round_trip(m in cobar_monomial()) {
            prop_assert_eq!(m.to_string().parse::<CobarMonomial>().unwrap(), m);
        }

        #[test]
        fn y_label_round_trip(m in y_monomial()) {
            prop_assert_eq!(m.to_string().parse::<YMonomial>().unwrap(), m);
        }

        #[test]
        fn degree_additive(m in cobar_monomial(), n in cobar_monomial()) {
            prop_assert_eq!(m.mul(&n).degree(), m.degree() + n.degree());
        }

        #[test]
        fn word_free_products_commute(a1 in 0u32..9, u1 in -9i64..9, a2 in 0u32..9, u2 in -9i64..9) {
            let m = CobarMonomial::coefficient(a1, u1);
            let n = CobarMonomial::coefficient(a2, u2);
            prop_assert_eq!(m.mul(&n), n.mul(&m));
        }

        #[test]
        fn concatenation_associative(m in cobar_monomial(), n in cobar_monomial(), o in cobar_monomial()) {
            prop_assert_eq!(m.mul(&n).mul(&o), m.mul(&n.mul(&o)));
        }

        #[test]
        fn canonical_order_total(m in cobar_monomial(), n in cobar_monomial()) {
            let forward = m.cmp(&n);
            prop_assert_eq!(forward.reverse(), n.cmp(&m));
            prop_assert_eq!(forward == Ordering::Equal, m == n);
        }

        #[test]
        fn y_order_total(m in y_monomial(), n in y_monomial()) {
            prop_assert_eq!(m.cmp(&n) == Ordering::Equal, m == n);
        }
    }
}
