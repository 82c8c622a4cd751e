//! The substitution phi: 1 -> 2, 2 -> 211, its fixed point, and the
//! word-indexed polynomials P_w.
//!
//! phi governs the orbit of 1 as beta decreases to 1: the expansion digits of
//! 1 stabilize to the fixed point of phi, which is also the run-length
//! sequence of the Thue-Morse word (after prefixing a single 1) and the
//! shortest-known aperiodic sequence in this family. Iterate lengths obey
//! |phi^n(1)| = (2^(n+1) + (-1)^n) / 3,
//! |phi^n(2)| = (2^(n+2) - (-1)^n) / 3 = |phi^(n+1)(1)|,
//! and the gap counts are g_n = floor(2^(n+1) / 3).

use std::cmp::Ordering;

use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::{big, RatPoly};

/// Letters double as expansion digits, hence the shared representation.
pub type Word = Vec<u32>;

/// Longest word any iterate is allowed to produce before erroring out.
pub const WORD_BUDGET: usize = 100_000_000;

/// Image of a single letter under phi.
pub fn phi_letter(a: u32) -> Result<&'static [u32]> {
    match a {
        1 => Ok(&[2]),
        2 => Ok(&[2, 1, 1]),
        _ => Err(Error::BadAlphabet(a)),
    }
}

/// One application of phi to a word.
pub fn phi(w: &[u32]) -> Result<Word> {
    let mut out = Vec::with_capacity(2 * w.len() + 1);
    for &a in w {
        out.extend_from_slice(phi_letter(a)?);
    }
    Ok(out)
}

/// phi^n(w) by repeated substitution.
pub fn phi_iter(w: &[u32], n: u32) -> Result<Word> {
    let mut cur = w.to_vec();
    for &a in &cur {
        phi_letter(a)?;
    }
    for _ in 0..n {
        if cur.len() > WORD_BUDGET / 2 {
            return Err(Error::ExplosionGuard(cur.len(), WORD_BUDGET));
        }
        cur = phi(&cur)?;
    }
    Ok(cur)
}

/// (|phi^n(1)|, |phi^n(2)|, g_n) from the closed forms.
pub fn word_lengths(n: u32) -> Result<(u128, u128, u128)> {
    if n > 124 {
        return Err(Error::UnboundedIndex(n as u64, 124));
    }
    let sign = if n % 2 == 0 { 1i128 } else { -1i128 };
    let len1 = ((1i128 << (n + 1)) + sign) / 3;
    let len2 = ((1i128 << (n + 2)) - sign) / 3;
    let len1_next = ((1i128 << (n + 2)) - sign) / 3;
    debug_assert_eq!(len2, len1_next);
    Ok((len1 as u128, len2 as u128, gap_count(n)? ))
}

/// g_n = floor(2^(n+1) / 3), the number of gaps in band n.
pub fn gap_count(n: u32) -> Result<u128> {
    if n > 124 {
        return Err(Error::UnboundedIndex(n as u64, 124));
    }
    Ok((1u128 << (n + 1)) / 3)
}

/// Parity and power-of-two facts for the n-th iterate:
/// (|phi^n(1)| odd, |phi^n(2)| odd, |phi^n(21)| == 2^(n+1), g_n odd iff n odd).
pub fn parikh_consistency(n: u32) -> Result<(bool, bool, bool, bool)> {
    let (l1, l2, g) = word_lengths(n)?;
    Ok((
        l1 % 2 == 1,
        l2 % 2 == 1,
        l1 + l2 == 1u128 << (n + 1),
        (g % 2 == 1) == (n % 2 == 1),
    ))
}

/// Lazy generator of the phi fixed point 211222112112112221122...
///
/// The buffer starts as phi(2); since the image of every emitted letter is
/// appended before the cursor reaches it, the buffer always stays ahead.
pub struct LimitWord {
    out: Vec<u32>,
    expand_idx: usize,
    emit_idx: usize,
}

impl LimitWord {
    pub fn new() -> Self {
        LimitWord { out: vec![2, 1, 1], expand_idx: 1, emit_idx: 0 }
    }
}

impl Default for LimitWord {
    fn default() -> Self {
        Self::new()
    }
}

impl Iterator for LimitWord {
    type Item = u32;

    fn next(&mut self) -> Option<u32> {
        while self.emit_idx >= self.out.len() {
            let a = self.out[self.expand_idx];
            self.expand_idx += 1;
            self.out.extend_from_slice(phi_letter(a).expect("internal alphabet"));
        }
        let letter = self.out[self.emit_idx];
        self.emit_idx += 1;
        Some(letter)
    }
}

/// First n letters of the phi fixed point.
pub fn limit_word(n: usize) -> Word {
    LimitWord::new().take(n).collect()
}

/// The alternate (Ito-Sadahiro) order on digit strings: at the first
/// differing index k (1-based), a comes first iff (-1)^k (a_k - b_k) > 0.
/// Odd positions compare like integers, even positions reversed; this is the
/// unique order for which x < y iff the expansion of x precedes that of y.
/// Words agreeing on their common prefix compare Equal.
pub fn alt_cmp(a: &[u32], b: &[u32]) -> Ordering {
    for (i, (x, y)) in a.iter().zip(b.iter()).enumerate() {
        if x != y {
            let ord = x.cmp(y);
            return if i % 2 == 0 { ord } else { ord.reverse() };
        }
    }
    Ordering::Equal
}

/// The polynomial P_w with P_w(beta) = T^{|w|}(1) when w is the digit word of
/// the orbit of 1: P_w = (-X)^k + sum_j w_j (-X)^(k-j), built directly.
pub fn p_poly(w: &[u32]) -> RatPoly {
    let k = w.len();
    let mut coeffs = vec![BigRational::zero(); k + 1];
    coeffs[k] = big(if k % 2 == 0 { 1 } else { -1 });
    for (m, c) in coeffs.iter_mut().enumerate().take(k) {
        let digit = w[k - 1 - m] as i64;
        *c = big(if m % 2 == 0 { digit } else { -digit });
    }
    RatPoly::new(coeffs)
}

/// Same polynomial by the defining recursion P_{wa} = -X * P_w + a, P_eps = 1.
pub fn p_poly_fold(w: &[u32]) -> RatPoly {
    let x = RatPoly::x();
    let mut p = RatPoly::one();
    for &a in w {
        p = x.neg().mul(&p).add(&RatPoly::constant(big(a as i64)));
    }
    p
}

/// One row of the identity report: which equality, at which iterate, and
/// whether it held exactly.
#[derive(Debug, Clone, Serialize)]
pub struct IdentityReport {
    pub identity: String,
    pub n: i64,
    pub pass: bool,
}

/// Exact polynomial identity suite.
///
/// Checks, as equalities in Q[X]:
/// - "concatenation": P_{uv} = (-X)^|v| (P_u - 1) + P_v on random splits;
/// - "complement-sum": X^a P_{phi^n(2)} + X^b P_{phi^n(11)} = X + 1 with
///   a = (1+(-1)^n)/2, b = 1 - a;
/// - "one-minus-phi1": 1 - P_{phi^n(1)} = X^a prod_{m<n} (X^|phi^m(1)| - 1);
/// - "phi21-minus-one": P_{phi^n(21)} - 1
///     = (X^(g_{n+1}+1) - X^(g_n+1) - X^a) prod_{m<n} (X^|phi^m(1)| - 1);
/// - "phi21-minus-phi2": P_{phi^n(21)} - P_{phi^n(2)}
///     = (X^(g_{n+1}+1) - X - 1) prod_{m<n} (X^|phi^m(1)| - 1);
/// - "phi2-step": P_{phi^n(2)} - P_{phi^(n+1)(2)}
///     = (X^(g_{n+1}+1) - X - 1) prod_{m<=n} (X^|phi^m(1)| - 1);
/// for 0 <= n <= n_max. Failures are reported, not panicked.
pub fn verify_identities(n_max: u32, seed: u64) -> Result<Vec<IdentityReport>> {
    let mut report = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    for trial in 0..50 {
        let k = rng.gen_range(2..=64usize);
        let w: Word = (0..k).map(|_| rng.gen_range(1..=2u32)).collect();
        let j = rng.gen_range(1..k);
        let lhs = p_poly(&w);
        let head = p_poly(&w[..j]).sub(&RatPoly::one());
        let shift = RatPoly::monomial(big(if (k - j) % 2 == 0 { 1 } else { -1 }), k - j);
        let rhs = shift.mul(&head).add(&p_poly(&w[j..]));
        report.push(IdentityReport {
            identity: "concatenation".into(),
            n: trial,
            pass: lhs == rhs,
        });
    }

    // prod_{m=0}^{n-1} (X^|phi^m(1)| - 1), grown incrementally.
    let mut product = RatPoly::one();
    let x_plus_1 = RatPoly::from_integers(&[1, 1]);
    for n in 0..=n_max {
        let w1 = phi_iter(&[1], n)?;
        let w2 = phi_iter(&[2], n)?;
        let w11: Word = [w1.clone(), w1.clone()].concat();
        let w21: Word = [w2.clone(), w1.clone()].concat();
        let a = if n % 2 == 0 { 1 } else { 0 };
        let g_n = gap_count(n)? as usize;
        let g_next = gap_count(n + 1)? as usize;

        let lhs = RatPoly::monomial(big(1), a)
            .mul(&p_poly(&w2))
            .add(&RatPoly::monomial(big(1), 1 - a).mul(&p_poly(&w11)));
        report.push(IdentityReport {
            identity: "complement-sum".into(),
            n: n as i64,
            pass: lhs == x_plus_1,
        });

        let lhs = RatPoly::one().sub(&p_poly(&w1));
        let rhs = RatPoly::monomial(big(1), a).mul(&product);
        report.push(IdentityReport {
            identity: "one-minus-phi1".into(),
            n: n as i64,
            pass: lhs == rhs,
        });

        let lhs = p_poly(&w21).sub(&RatPoly::one());
        let factor = RatPoly::monomial(big(1), g_next + 1)
            .sub(&RatPoly::monomial(big(1), g_n + 1))
            .sub(&RatPoly::monomial(big(1), a));
        report.push(IdentityReport {
            identity: "phi21-minus-one".into(),
            n: n as i64,
            pass: lhs == factor.mul(&product),
        });

        let lhs = p_poly(&w21).sub(&p_poly(&w2));
        let factor = RatPoly::monomial(big(1), g_next + 1).sub(&x_plus_1);
        report.push(IdentityReport {
            identity: "phi21-minus-phi2".into(),
            n: n as i64,
            pass: lhs == factor.mul(&product),
        });

        // The next product includes m = n, which "phi2-step" needs now.
        let len1 = w1.len();
        product = product.mul(&RatPoly::monomial(big(1), len1).sub(&RatPoly::one()));
        let lhs = p_poly(&w2).sub(&p_poly(&phi(&w2)?));
        report.push(IdentityReport {
            identity: "phi2-step".into(),
            n: n as i64,
            pass: lhs == factor.mul(&product),
        });
    }
    Ok(report)
}

/// First n letters of the Thue-Morse word over {0,1}, by bit parity.
pub fn thue_morse(n: usize) -> Vec<u8> {
    (0..n).map(|i| (i.count_ones() % 2) as u8).collect()
}

/// Run-length encoding: lengths of maximal constant blocks.
pub fn run_lengths<T: PartialEq>(w: &[T]) -> Vec<u32> {
    let mut runs = Vec::new();
    let mut i = 0;
    while i < w.len() {
        let mut j = i + 1;
        while j < w.len() && w[j] == w[i] {
            j += 1;
        }
        runs.push((j - i) as u32);
        i = j;
    }
    runs
}

/// Word as a string of digit characters (alphabet letters are single digits).
pub fn word_to_string(w: &[u32]) -> String {
    w.iter().map(|d| char::from_digit(*d % 10, 10).unwrap()).collect()
}

/// Parse a string of digit characters into a word.
pub fn parse_word(s: &str) -> Result<Word> {
    s.chars()
        .map(|c| c.to_digit(10).filter(|d| *d > 0).ok_or(Error::BadAlphabet(0)))
        .collect()
}
