//! Exact Gaussian rationals `re + i im`.

use num_complex::Complex;
use num_traits::{Signed, Zero};

use super::rational::{format_rational, parse_rational, Rational};
use crate::error::{Error, Result};

pub type Gauss = Complex<Rational>;

pub fn real(r: Rational) -> Gauss {
    Complex::new(r, Rational::zero())
}

pub fn imag_unit() -> Gauss {
    Complex::new(Rational::zero(), super::int(1))
}

/// `"p/q"` for real values, otherwise `"re+imi"` / `"re-imi"` (e.g. `"1/2-3i"`, `"0+1i"`).
pub fn format_gauss(z: &Gauss) -> String {
    if z.im.is_zero() {
        return format_rational(&z.re);
    }
    let sign = if z.im.is_negative() { '-' } else { '+' };
    format!(
        "{}{}{}i",
        format_rational(&z.re),
        sign,
        format_rational(&z.im.abs())
    )
}

pub fn parse_gauss(s: &str) -> Result<Gauss> {
    let t = s.trim();
    let err = || Error::Parse {
        input: s.to_string(),
        reason: "expected p/q or re+imi".to_string(),
    };
    let Some(body) = t.strip_suffix('i') else {
        return Ok(real(parse_rational(t)?));
    };
    // split at the last sign that is not the leading one
    let split = body
        .char_indices()
        .skip(1)
        .filter(|(_, c)| *c == '+' || *c == '-')
        .map(|(i, _)| i)
        .last();
    match split {
        Some(i) => {
            let re = parse_rational(&body[..i])?;
            let im_str = &body[i..];
            let im = match im_str {
                "+" => super::int(1),
                "-" => super::int(-1),
                _ => parse_rational(im_str.trim_start_matches('+'))?,
            };
            Ok(Complex::new(re, im))
        }
        None => {
            let im = match body {
                "" | "+" => super::int(1),
                "-" => super::int(-1),
                _ => parse_rational(body).map_err(|_| err())?,
            };
            Ok(Complex::new(Rational::zero(), im))
        }
    }
}
