//! Bracket notation: `[t0,t1,…]`, one token per position. A token is an
//! identifier (`a`…`z`, `aa`, `ab`, …) optionally prefixed by `-`; equal
//! identifiers share a color and `-x` carries the opposite sign of `x`.

use super::subject::{SignedClass, Subject};
use super::PatternError;

/// Identifier of the `n`-th color (bijective base 26).
pub fn identifier(mut n: usize) -> String {
    let mut out = Vec::new();
    loop {
        out.push(b'a' + (n % 26) as u8);
        if n < 26 {
            break;
        }
        n = n / 26 - 1;
    }
    out.reverse();
    String::from_utf8(out).expect("ascii")
}

pub fn format(s: &Subject) -> String {
    let tokens: Vec<String> = s
        .position_map()
        .into_iter()
        .map(|(c, sign)| if sign < 0 { format!("-{}", identifier(c)) } else { identifier(c) })
        .collect();
    format!("[{}]", tokens.join(","))
}

pub fn parse(text: &str) -> Result<Subject, PatternError> {
    let err = |msg: &str| PatternError::Parse { input: text.to_string(), reason: msg.to_string() };
    let inner =
        text.trim().strip_prefix('[').and_then(|t| t.strip_suffix(']')).ok_or_else(|| err("expected [ ... ]"))?;
    let mut names: Vec<&str> = Vec::new();
    let mut classes: Vec<SignedClass> = Vec::new();
    let mut q = 0;
    for (pos, raw) in inner.split(',').enumerate() {
        let tok = raw.trim();
        let (neg, name) = match tok.strip_prefix('-') {
            Some(rest) => (true, rest.trim()),
            None => (false, tok),
        };
        if name.is_empty() || !name.bytes().all(|b| b.is_ascii_lowercase()) {
            return Err(err(&format!("bad token {tok:?} at position {pos}")));
        }
        let idx = names.iter().position(|n| *n == name).unwrap_or_else(|| {
            names.push(name);
            classes.push(SignedClass { plus: Vec::new(), minus: Vec::new() });
            names.len() - 1
        });
        if neg {
            classes[idx].minus.push(pos);
        } else {
            classes[idx].plus.push(pos);
        }
        q = pos + 1;
    }
    Subject::new(q, classes)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identifiers() {
        assert_eq!(identifier(0), "a");
        assert_eq!(identifier(25), "z");
        assert_eq!(identifier(26), "aa");
        assert_eq!(identifier(27), "ab");
        assert_eq!(identifier(51), "az");
        assert_eq!(identifier(52), "ba");
        assert_eq!(identifier(701), "zz");
        assert_eq!(identifier(702), "aaa");
    }

    #[test]
    fn round_trip() {
        for b in ["[a,b,-b,b,-b,b,-b,b]", "[a,-a,a,-a,b,-a,a,-a]", "[a,b,c,d,a,-d,c,-b]", "[a]"] {
            assert_eq!(parse(b).unwrap().bracket(), b);
        }
    }

    #[test]
    fn canonicalises_letter_order_and_leading_sign() {
        assert_eq!(parse("[c,a,b,a]").unwrap().bracket(), "[a,b,c,b]");
        assert_eq!(parse("[a, -b, b]").unwrap().bracket(), "[a,b,-b]");
        assert_eq!(parse("[-a,a]").unwrap().bracket(), "[a,-a]");
    }

    #[test]
    fn many_colors() {
        let s = Subject::from_labels(&(0..30).collect::<Vec<_>>()).unwrap();
        let b = s.bracket();
        assert!(b.ends_with(",aa,ab,ac,ad]"));
        assert_eq!(parse(&b).unwrap(), s);
    }

    #[test]
    fn errors() {
        assert!(parse("a,b").is_err());
        assert!(parse("[a,B]").is_err());
        assert!(parse("[a,,b]").is_err());
        assert!(parse("[a,-]").is_err());
    }
}
