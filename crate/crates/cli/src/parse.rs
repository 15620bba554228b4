//! Exact entry parsing: integers, rationals `p/q`, and Gaussian rationals
//! written `a+b i`, `a-bi`, `bi`, `i`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use nearcf_core::GaussianRational;

pub fn parse_integer(s: &str) -> Result<BigInt, String> {
    let t = s.trim();
    let t = t.strip_prefix('+').unwrap_or(t);
    t.parse::<BigInt>()
        .map_err(|_| format!("not an integer: {s:?}"))
}

pub fn parse_rational(s: &str) -> Result<BigRational, String> {
    let t = s.trim();
    match t.split_once('/') {
        None => parse_integer(t).map(BigRational::from_integer),
        Some((n, d)) => {
            let n = parse_integer(n)?;
            let d = parse_integer(d)?;
            if d.is_zero() {
                return Err(format!("zero denominator in {s:?}"));
            }
            Ok(BigRational::new(n, d))
        }
    }
}

pub fn parse_gaussian(s: &str) -> Result<GaussianRational, String> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let Some(body) = t.strip_suffix('i') else {
        return parse_rational(&t).map(GaussianRational::real);
    };
    // the imaginary part starts at the last sign that is not leading
    let split = body
        .char_indices()
        .filter(|&(i, c)| i > 0 && (c == '+' || c == '-'))
        .map(|(i, _)| i)
        .next_back();
    let (re, im) = match split {
        Some(i) => (&body[..i], &body[i..]),
        None => ("", body),
    };
    let re = if re.is_empty() {
        BigRational::zero()
    } else {
        parse_rational(re)?
    };
    let im = match im {
        "" | "+" => BigRational::one(),
        "-" => -BigRational::one(),
        other => parse_rational(other)?,
    };
    Ok(GaussianRational::new(re, im))
}
