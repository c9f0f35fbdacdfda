//! Text form of an integral:
//!
//! ```text
//! x^<s> * <factor> (* <factor>)*
//! factor := I(<order>,<scale>) | K(<order>,<scale>) | Ai(<scale>) | Bi(<scale>), optionally ^<count>
//! ```
//!
//! `x^s` names the Mellin variable: the integrand carries x^{s−1}, so
//! `x^2 * K(0,1)^4` is ∫₀^∞ x K₀(x)⁴ dx. Airy products take `x^1`. An order
//! written as an integer or `p/q` is kept exactly; decimals are not.

use qbessel::closed_form::{AiryKind, AirySpec, BesselFactor, BesselKind, IntegralSpec};
use qbessel::quadrature::OracleSpec;

use crate::error::{CliError, CliResult};

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
}

/// A number as written: an integer or p/q ratio stays exact.
#[derive(Debug, Clone, Copy)]
enum Number {
    Exact(i64, i64),
    Float(f64),
}

impl Number {
    fn value(self) -> f64 {
        match self {
            Number::Exact(p, q) => p as f64 / q as f64,
            Number::Float(x) => x,
        }
    }
}

impl<'a> Cursor<'a> {
    fn err<T>(&self, message: impl Into<String>) -> CliResult<T> {
        Err(CliError::Parse {
            position: self.pos,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.text[self.pos..].starts_with(char::is_whitespace) {
            self.pos += self.text[self.pos..]
                .chars()
                .next()
                .map_or(1, char::len_utf8);
        }
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.text[self.pos..].starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> CliResult<()> {
        if self.eat(token) {
            Ok(())
        } else {
            self.err(format!("expected '{token}'"))
        }
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos == self.text.len()
    }

    fn literal(&mut self) -> CliResult<(usize, &'a str)> {
        self.skip_ws();
        let start = self.pos;
        let rest = &self.text[start..];
        let mut end = 0;
        for (i, ch) in rest.char_indices() {
            let sign_ok = i == 0 || matches!(rest.as_bytes()[i - 1], b'e' | b'E');
            let ok = ch.is_ascii_digit()
                || matches!(ch, '.' | 'e' | 'E')
                || (matches!(ch, '+' | '-') && sign_ok);
            if !ok {
                break;
            }
            end = i + ch.len_utf8();
        }
        if end == 0 {
            return self.err("expected a number");
        }
        self.pos += end;
        Ok((start, &rest[..end]))
    }

    fn number(&mut self) -> CliResult<Number> {
        let (start, head) = self.literal()?;
        let int = |s: &str| s.parse::<i64>().ok();
        if let Some(p) = int(head) {
            if self.eat("/") {
                let (qs, tail) = self.literal()?;
                return match int(tail) {
                    Some(q) if q != 0 => Ok(Number::Exact(p, q)),
                    _ => Err(CliError::Parse {
                        position: qs,
                        message: format!("bad denominator '{tail}'"),
                    }),
                };
            }
            return Ok(Number::Exact(p, 1));
        }
        match head.parse::<f64>() {
            Ok(x) if x.is_finite() => Ok(Number::Float(x)),
            _ => Err(CliError::Parse {
                position: start,
                message: format!("bad number '{head}'"),
            }),
        }
    }

    fn count(&mut self) -> CliResult<usize> {
        if !self.eat("^") {
            return Ok(1);
        }
        let (start, lit) = self.literal()?;
        match lit.parse::<usize>() {
            Ok(k) if (1..=4).contains(&k) => Ok(k),
            _ => Err(CliError::Parse {
                position: start,
                message: format!("power must be 1 to 4, got '{lit}'"),
            }),
        }
    }
}

enum Factor {
    Bessel(BesselFactor),
    Airy(AiryKind, f64),
}

fn factor(cur: &mut Cursor) -> CliResult<Factor> {
    cur.skip_ws();
    let start = cur.pos;
    // the two-letter names first so "Bi" is not read as "B" + "i"
    let out = if cur.eat("Ai(") || cur.eat("Bi(") {
        let kind = if cur.text[start..].starts_with('A') {
            AiryKind::Ai
        } else {
            AiryKind::Bi
        };
        let scale = cur.number()?.value();
        cur.expect(")")?;
        Factor::Airy(kind, scale)
    } else if cur.eat("I(") || cur.eat("K(") {
        let kind = if cur.text[start..].starts_with('I') {
            BesselKind::I
        } else {
            BesselKind::K
        };
        let order = cur.number()?;
        cur.expect(",")?;
        let scale = cur.number()?.value();
        cur.expect(")")?;
        Factor::Bessel(match order {
            Number::Exact(p, q) => BesselFactor::rational(kind, p, q, scale),
            Number::Float(x) => BesselFactor::new(kind, x, scale),
        })
    } else {
        return cur.err("expected I(, K(, Ai( or Bi(");
    };
    Ok(out)
}

/// Parse the text form into a validated spec.
pub fn parse_spec(text: &str) -> CliResult<OracleSpec> {
    let mut cur = Cursor { text, pos: 0 };
    cur.expect("x")?;
    cur.expect("^")?;
    let s = cur.number()?.value();
    let mut factors = Vec::new();
    while !cur.at_end() {
        cur.expect("*")?;
        let f = factor(&mut cur)?;
        let k = cur.count()?;
        factors.extend(
            std::iter::repeat_with(|| match &f {
                Factor::Bessel(b) => Factor::Bessel(*b),
                Factor::Airy(k, c) => Factor::Airy(*k, *c),
            })
            .take(k),
        );
    }
    if factors.is_empty() {
        return cur.err("expected at least one factor");
    }
    let n_airy = factors
        .iter()
        .filter(|f| matches!(f, Factor::Airy(..)))
        .count();
    if n_airy == 0 {
        let fs = factors
            .into_iter()
            .map(|f| match f {
                Factor::Bessel(b) => b,
                Factor::Airy(..) => unreachable!(),
            })
            .collect();
        return Ok(IntegralSpec::new(s, fs)?.into());
    }
    if n_airy != factors.len() {
        return Err(
            qbessel::Error::Domain("Airy and Bessel factors cannot be mixed".into()).into(),
        );
    }
    if n_airy != 4 || s != 1.0 {
        return Err(qbessel::Error::Domain(format!(
            "Airy products need x^1 and four factors, got x^{s} and {n_airy}"
        ))
        .into());
    }
    let mut kinds = [AiryKind::Ai; 4];
    let mut scales = [0.0; 4];
    for (i, f) in factors.into_iter().enumerate() {
        if let Factor::Airy(k, c) = f {
            kinds[i] = k;
            scales[i] = c;
        }
    }
    Ok(AirySpec::new(kinds, scales)?.into())
}

fn order_text(f: &BesselFactor) -> String {
    match f.exact {
        Some((p, 1)) => p.to_string(),
        Some((p, q)) => format!("{p}/{q}"),
        // Debug keeps a decimal point or exponent, so the order stays inexact
        None => format!("{:?}", f.order),
    }
}

/// Text form that [`parse_spec`] reads back to the same spec.
pub fn render(spec: &OracleSpec) -> String {
    let (s, parts): (f64, Vec<String>) = match spec {
        OracleSpec::Bessel(b) => (
            b.s,
            b.factors
                .iter()
                .map(|f| format!("{}({},{})", f.kind, order_text(f), f.scale))
                .collect(),
        ),
        OracleSpec::Airy(a) => (
            1.0,
            a.kinds
                .iter()
                .zip(&a.scales)
                .map(|(k, c)| match k {
                    AiryKind::Ai => format!("Ai({c})"),
                    AiryKind::Bi => format!("Bi({c})"),
                })
                .collect(),
        ),
    };
    let mut out = format!("x^{s}");
    let mut i = 0;
    while i < parts.len() {
        let run = parts[i..].iter().take_while(|p| **p == parts[i]).count();
        out.push_str(" * ");
        out.push_str(&parts[i]);
        if run > 1 {
            out.push_str(&format!("^{run}"));
        }
        i += run;
    }
    out
}
