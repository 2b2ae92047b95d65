use crate::error::{Error, Result};

fn fail(input: &str, reason: impl Into<String>) -> Error {
    Error::Parse {
        input: input.to_string(),
        reason: reason.into(),
    }
}

/// Parses `3*x1^2*x4 - x2 + 7` into `(coefficient, exponents)` pairs.
/// Variables are written `x1 .. xn`; whitespace is ignored.
pub(super) fn parse_terms(input: &str, nvars: usize) -> Result<Vec<(i64, Vec<u32>)>> {
    let text: String = input.chars().filter(|c| !c.is_whitespace()).collect();
    if text.is_empty() {
        return Err(fail(input, "empty input"));
    }
    if text == "0" {
        return Ok(Vec::new());
    }
    let mut chunks: Vec<(i64, &str)> = Vec::new();
    let mut sign = 1i64;
    let mut start = 0;
    let bytes = text.as_bytes();
    for (i, &b) in bytes.iter().enumerate() {
        if (b == b'+' || b == b'-') && i > 0 && bytes[i - 1] != b'^' {
            chunks.push((sign, &text[start..i]));
            sign = if b == b'-' { -1 } else { 1 };
            start = i + 1;
        } else if i == 0 && (b == b'+' || b == b'-') {
            sign = if b == b'-' { -1 } else { 1 };
            start = 1;
        }
    }
    chunks.push((sign, &text[start..]));

    let mut out = Vec::with_capacity(chunks.len());
    for (sign, chunk) in chunks {
        if chunk.is_empty() {
            return Err(fail(input, "dangling sign"));
        }
        let mut coeff = sign;
        let mut exps = vec![0u32; nvars];
        for factor in chunk.split('*') {
            if let Some(var) = factor.strip_prefix('x') {
                let (idx, exp) = match var.split_once('^') {
                    Some((i, e)) => (i, e),
                    None => (var, "1"),
                };
                let idx: usize = idx
                    .parse()
                    .map_err(|_| fail(input, format!("bad variable `{factor}`")))?;
                let exp: u32 = exp
                    .parse()
                    .map_err(|_| fail(input, format!("bad exponent in `{factor}`")))?;
                if idx == 0 || idx > nvars {
                    return Err(fail(input, format!("variable x{idx} outside x1..x{nvars}")));
                }
                exps[idx - 1] += exp;
            } else {
                let c: i64 = factor
                    .parse()
                    .map_err(|_| fail(input, format!("bad factor `{factor}`")))?;
                coeff = coeff
                    .checked_mul(c)
                    .ok_or_else(|| fail(input, "coefficient overflow"))?;
            }
        }
        out.push((coeff, exps));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_terms() {
        let t = parse_terms("x2^2 - x1*x4", 4).unwrap();
        assert_eq!(t, vec![(1, vec![0, 2, 0, 0]), (-1, vec![1, 0, 0, 1])]);
        let t = parse_terms("-3*x1+7", 2).unwrap();
        assert_eq!(t, vec![(-3, vec![1, 0]), (7, vec![0, 0])]);
        assert!(parse_terms("x5", 4).is_err());
        assert!(parse_terms("x1+", 4).is_err());
        assert!(parse_terms("y1", 4).is_err());
        assert!(parse_terms("", 4).is_err());
    }
}
