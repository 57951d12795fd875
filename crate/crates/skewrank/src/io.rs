//! Text syntax for field elements and skew polynomials, plus the JSON and
//! CSV wire formats used by the CLI and for interchange.
//!
//! Elements are written as bare integers (prime-subfield constants),
//! γ-power tokens `g^55` (primitive towers only), or flat coordinate
//! tuples `[a,b,…]` of length n·e. Polynomials combine terms as in
//! `X^4+2X^3+3X^2+3X+1` or `X^4+g^55X^3+g^29X^2+g^63X+1`.

use std::sync::Arc;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::frameworks::{MatrixTuple, VectorWord};
use crate::gf::{Elem, Tower};
use crate::linalg::Matrix;
use crate::skew::SkewPoly;
use crate::sumrank::{LambdaContext, QuotientElem};

struct Scanner<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Scanner<'a> {
    fn new(s: &'a str) -> Scanner<'a> {
        Scanner {
            src: s.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_whitespace() || self.src[self.pos] == b'*')
        {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek()?;
        self.pos += 1;
        Some(c)
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn err<T>(&self, msg: &str) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn integer(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return self.err("expected an integer");
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| Error::Parse {
                pos: start,
                msg: "integer out of range".into(),
            })
    }

    /// A coefficient: integer, g / g^k, or [d0,d1,…].
    fn coeff(&mut self, t: &Tower) -> Result<Elem> {
        match self.peek() {
            Some(b'[') => {
                self.bump();
                let mut digits = Vec::new();
                loop {
                    digits.push(self.integer()?);
                    if self.eat(b']') {
                        break;
                    }
                    if !self.eat(b',') {
                        return self.err("expected ',' or ']' in coordinate tuple");
                    }
                }
                t.from_coords(&digits)
            }
            Some(b'g') | Some(b'G') => {
                self.bump();
                let k = if self.eat(b'^') { self.integer()? } else { 1 };
                if !t.is_primitive() {
                    return self.err("g-power syntax needs a primitive modulus");
                }
                Ok(t.gamma_pow(k as i64))
            }
            Some(c) if c.is_ascii_digit() => Ok(t.from_prime(self.integer()?)),
            _ => self.err("expected a coefficient"),
        }
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }
}

/// Parse a single element of L.
pub fn parse_elem(t: &Tower, s: &str) -> Result<Elem> {
    let mut sc = Scanner::new(s);
    let e = sc.coeff(t)?;
    if !sc.at_end() {
        return sc.err("trailing input after element");
    }
    Ok(e)
}

/// Parse an element of K: a bare integer or a digit tuple of length e.
pub fn parse_k_elem(t: &Tower, s: &str) -> Result<Elem> {
    let s = s.trim();
    if let Some(body) = s.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
        let digits: Vec<u64> = body
            .split(',')
            .map(|d| {
                d.trim().parse().map_err(|_| Error::Parse {
                    pos: 0,
                    msg: format!("bad digit {d}"),
                })
            })
            .collect::<Result<_>>()?;
        return t.from_k_digits(&digits);
    }
    let v: u64 = s.parse().map_err(|_| Error::Parse {
        pos: 0,
        msg: format!("bad element {s}"),
    })?;
    Ok(t.from_prime(v))
}

/// Parse a skew polynomial such as `X^4+2X^3+3X^2+3X+1`.
pub fn parse_skew_poly(tower: &Arc<Tower>, s: &str) -> Result<SkewPoly> {
    let mut sc = Scanner::new(s);
    let t = tower.as_ref();
    let mut coeffs: Vec<Elem> = Vec::new();
    let add_term = |c: Elem, d: usize, coeffs: &mut Vec<Elem>| {
        if coeffs.len() <= d {
            coeffs.resize(d + 1, t.zero());
        }
        coeffs[d] = t.add(&coeffs[d], &c);
    };
    let mut first = true;
    loop {
        let negate = if first {
            first = false;
            sc.eat(b'-')
        } else {
            match sc.peek() {
                None => break,
                Some(b'+') => {
                    sc.bump();
                    false
                }
                Some(b'-') => {
                    sc.bump();
                    true
                }
                _ => return sc.err("expected '+' or '-' between terms"),
            }
        };
        // coefficient then optional X part, or bare X
        let c = match sc.peek() {
            Some(b'X') | Some(b'x') => t.one(),
            _ => sc.coeff(t)?,
        };
        let d = match sc.peek() {
            Some(b'X') | Some(b'x') => {
                sc.bump();
                if sc.eat(b'^') {
                    sc.integer()? as usize
                } else {
                    1
                }
            }
            _ => 0,
        };
        let c = if negate { t.neg(&c) } else { c };
        add_term(c, d, &mut coeffs);
    }
    if coeffs.is_empty() {
        return sc.err("empty polynomial");
    }
    Ok(SkewPoly::from_coeffs(tower.clone(), coeffs))
}

// --- JSON ---

pub fn elem_to_json(e: &Elem) -> Value {
    json!(e.coords())
}

pub fn skew_poly_to_json(f: &SkewPoly) -> Value {
    Value::Array(f.coeffs().iter().map(elem_to_json).collect())
}

pub fn quotient_to_json(q: &QuotientElem) -> Value {
    json!({
        "context": format!("{:016x}", q.ctx().hash_id()),
        "coeffs": skew_poly_to_json(q.rep()),
    })
}

/// Row-major matrix export; adds a γ-power rendering when available.
pub fn matrix_to_json(t: &Tower, m: &Matrix) -> Value {
    let rows: Vec<Value> = (0..m.rows())
        .map(|i| Value::Array(m.row(i).iter().map(elem_to_json).collect()))
        .collect();
    let mut obj = serde_json::Map::new();
    obj.insert("rows".into(), json!(m.rows()));
    obj.insert("cols".into(), json!(m.cols()));
    obj.insert("entries".into(), Value::Array(rows));
    if t.is_primitive() {
        let pretty: Vec<Value> = (0..m.rows())
            .map(|i| {
                Value::Array(
                    m.row(i)
                        .iter()
                        .map(|e| Value::String(t.fmt_elem(e)))
                        .collect(),
                )
            })
            .collect();
        obj.insert("display".into(), Value::Array(pretty));
    }
    Value::Object(obj)
}

pub fn context_to_json(ctx: &LambdaContext) -> Value {
    let t = ctx.tower();
    json!({
        "tower": serde_json::to_value(t.spec()).expect("tower spec serializes"),
        "lambdas": ctx.lambdas().iter().map(elem_to_json).collect::<Vec<_>>(),
        "alphas": ctx.alphas().iter().map(elem_to_json).collect::<Vec<_>>(),
        "h_poly": skew_poly_to_json(ctx.h_poly()),
        "hash": format!("{:016x}", ctx.hash_id()),
    })
}

pub fn vector_word_to_json(w: &VectorWord) -> Value {
    json!({
        "block": w.block_len(),
        "entries": w.entries().iter().map(elem_to_json).collect::<Vec<_>>(),
    })
}

pub fn matrix_tuple_to_json(t: &Tower, m: &MatrixTuple) -> Value {
    Value::Array(m.mats.iter().map(|mat| matrix_to_json(t, mat)).collect())
}

/// CSV rows of vector words; each cell is an element's coordinates joined
/// by ':' so the file stays plain-ASCII for external tools.
pub fn vector_words_to_csv(rows: &[VectorWord]) -> String {
    let mut out = String::new();
    for w in rows {
        let cells: Vec<String> = w
            .entries()
            .iter()
            .map(|e| {
                e.coords()
                    .iter()
                    .map(|d| d.to_string())
                    .collect::<Vec<_>>()
                    .join(":")
            })
            .collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::Tower;

    #[test]
    fn parse_prime_constants_and_powers() {
        let t = Tower::build(5, 1, 3).unwrap();
        assert!(parse_elem(&t, "3").unwrap().eq(&t.from_prime(3)));
        assert!(parse_elem(&t, "g^55").unwrap().eq(&t.gamma_pow(55)));
        assert!(parse_elem(&t, "[0,1,0]").unwrap().eq(&t.gamma()));
        assert!(parse_elem(&t, "junk").is_err());
    }

    #[test]
    fn parse_paper_polynomials() {
        let t = Tower::build(5, 1, 3).unwrap();
        let f = parse_skew_poly(&t, "X^4+2X^3+3X^2+3X+1").unwrap();
        assert_eq!(f.deg(), Some(4));
        assert!(f.coeff(0).eq(&t.from_prime(1)));
        assert!(f.coeff(3).eq(&t.from_prime(2)));
        let g = parse_skew_poly(&t, "X^4+g^55X^3+g^29X^2+g^63X+1").unwrap();
        assert!(g.coeff(3).eq(&t.gamma_pow(55)));
        assert_eq!(f.pretty(), "X^4+2X^3+3X^2+3X+1");
        let round = parse_skew_poly(&t, &g.pretty()).unwrap();
        assert_eq!(round, g);
        // minus signs fold into the field
        let m = parse_skew_poly(&t, "X^3-1").unwrap();
        assert!(m.coeff(0).eq(&t.from_prime(4)));
    }
}
