//! Scalar literals. Exact values print as `a/b`; floats print in shortest
//! round-trip form and are recognized by a decimal point or exponent.

use num_bigint::BigInt;
use num_traits::{Pow, Zero};
use wronski_core::{Rational, Scalar};

use crate::CliError;

/// A scalar type that can be written to and read from JSON strings.
pub trait Emit: Scalar + Send + Sync {
    const MODE: &'static str;
    fn emit(&self) -> String;
    fn parse(s: &str) -> Result<Self, CliError>;
}

impl Emit for f64 {
    const MODE: &'static str = "float";

    fn emit(&self) -> String {
        format!("{self:?}")
    }

    fn parse(s: &str) -> Result<Self, CliError> {
        let v = if s.contains('/') {
            parse_rational(s)?.to_f64()
        } else {
            s.trim().parse::<f64>().map_err(|_| CliError::Input(format!("not a number: {s:?}")))?
        };
        if !v.is_finite() {
            return Err(CliError::Input(format!("not a finite number: {s:?}")));
        }
        Ok(v)
    }
}

impl Emit for Rational {
    const MODE: &'static str = "exact";

    fn emit(&self) -> String {
        self.to_string()
    }

    fn parse(s: &str) -> Result<Self, CliError> {
        parse_rational(s)
    }
}

pub fn is_float_literal(s: &str) -> bool {
    !s.contains('/') && s.contains(['.', 'e', 'E'])
}

/// Exact value of `a/b`, an integer, or a decimal with optional exponent.
pub fn parse_rational(s: &str) -> Result<Rational, CliError> {
    let s = s.trim();
    let bad = || CliError::Input(format!("not a rational literal: {s:?}"));
    if let Some((a, b)) = s.split_once('/') {
        let a: BigInt = a.trim().parse().map_err(|_| bad())?;
        let b: BigInt = b.trim().parse().map_err(|_| bad())?;
        if b.is_zero() {
            return Err(CliError::Input(format!("zero denominator in {s:?}")));
        }
        return Ok(Rational::new(a, b));
    }
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i64>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (neg, mantissa) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    let digits = format!("{int_part}{frac_part}");
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) || exp.abs() > 4000 {
        return Err(bad());
    }
    let mut value = Rational::from_integer(digits.parse::<BigInt>().map_err(|_| bad())?);
    let shift = exp - frac_part.len() as i64;
    let ten = BigInt::from(10);
    if shift >= 0 {
        value *= Rational::from_integer(Pow::pow(&ten, shift as u64));
    } else {
        value /= Rational::from_integer(Pow::pow(&ten, (-shift) as u64));
    }
    Ok(if neg { -value } else { value })
}

pub fn parse_all<F: Emit>(values: &[String]) -> Result<Vec<F>, CliError> {
    values.iter().map(|s| F::parse(s)).collect()
}

pub fn emit_all<F: Emit>(values: &[F]) -> Vec<String> {
    values.iter().map(Emit::emit).collect()
}

/// A random rational `p/q` with `|p| ≤ 12`, `1 ≤ q ≤ 6`.
pub fn random_rational<R: rand::Rng>(rng: &mut R) -> Rational {
    let p: i64 = rng.gen_range(-12..=12);
    let q: i64 = rng.gen_range(1..=6);
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// `k` pairwise distinct random rationals.
pub fn distinct_rationals<R: rand::Rng>(rng: &mut R, k: usize) -> Vec<Rational> {
    let mut out: Vec<Rational> = Vec::with_capacity(k);
    while out.len() < k {
        let v = random_rational(rng);
        if !out.contains(&v) {
            out.push(v);
        }
    }
    out
}

