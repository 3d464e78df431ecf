//! Line-oriented text formats for instances, disjunctions and single cuts.
//!
//! ```text
//! milp p 2 q 1
//! maximize 0 0 | 1
//! st
//! -1 0 | 1 <= 0
//! end
//! ```
//!
//! `#` starts a comment; blank lines are ignored.

use num_bigint::BigInt;

use crate::disjunction::Disjunction;
use crate::error::{Error, Result};
use crate::model::{Cut, MilpInstance};
use crate::rational::{parse_rational, RatVector, Rational};

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Non-empty lines with comments stripped, paired with 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let body = raw.split('#').next().unwrap_or("");
        let toks: Vec<&str> = body.split_whitespace().collect();
        (!toks.is_empty()).then_some((i + 1, toks))
    })
}

fn rationals(line: usize, toks: &[&str]) -> Result<RatVector> {
    toks.iter()
        .map(|t| parse_rational(t).map_err(|e| parse_err(line, e.to_string())))
        .collect()
}

fn count(line: usize, tok: Option<&&str>) -> Result<usize> {
    tok.and_then(|t| t.parse().ok())
        .ok_or_else(|| parse_err(line, "expected a nonnegative integer"))
}

/// Splits `a.. | g..` at the mandatory separator and checks both lengths.
fn split_bar(line: usize, toks: &[&str], p: usize, q: usize) -> Result<(RatVector, RatVector)> {
    let bar = toks
        .iter()
        .position(|t| *t == "|")
        .ok_or_else(|| parse_err(line, "missing `|` separator"))?;
    let (a, g) = (&toks[..bar], &toks[bar + 1..]);
    if a.len() != p || g.len() != q {
        return Err(parse_err(
            line,
            format!(
                "expected {p} | {q} coefficients, found {} | {}",
                a.len(),
                g.len()
            ),
        ));
    }
    Ok((rationals(line, a)?, rationals(line, g)?))
}

/// Parses `a.. | g.. <= rhs`.
fn parse_row(
    line: usize,
    toks: &[&str],
    p: usize,
    q: usize,
) -> Result<(RatVector, RatVector, Rational)> {
    let n = toks.len();
    if n < 3 || toks[n - 2] != "<=" {
        return Err(parse_err(line, "row must end with `<= <rhs>`"));
    }
    let (a, g) = split_bar(line, &toks[..n - 2], p, q)?;
    let rhs = parse_rational(toks[n - 1]).map_err(|e| parse_err(line, e.to_string()))?;
    Ok((a, g, rhs))
}

pub fn parse_milp(text: &str) -> Result<MilpInstance> {
    let mut lines = content_lines(text);
    let last_line = text.lines().count().max(1);
    let mut next = |what: &str| {
        lines.next().ok_or_else(|| {
            parse_err(
                last_line,
                format!("unexpected end of input, expected {what}"),
            )
        })
    };

    let (ln, head) = next("header")?;
    if head.len() != 5 || head[0] != "milp" || head[1] != "p" || head[3] != "q" {
        return Err(parse_err(ln, "header must read `milp p <int> q <int>`"));
    }
    let p = count(ln, head.get(2))?;
    let q = count(ln, head.get(4))?;

    let (ln, obj) = next("objective")?;
    if obj[0] != "maximize" {
        return Err(parse_err(ln, "expected `maximize`"));
    }
    let (c, h) = split_bar(ln, &obj[1..], p, q)?;
    let mut inst = MilpInstance::new(p, q, c, h)?;

    let (ln, st) = next("`st`")?;
    if st != ["st"] {
        return Err(parse_err(ln, "expected `st`"));
    }
    loop {
        let (ln, toks) = next("`end`")?;
        if toks == ["end"] {
            break;
        }
        let (a, g, rhs) = parse_row(ln, &toks, p, q)?;
        inst.push_row(a, g, rhs)?;
    }
    if let Some((ln, _)) = lines.next() {
        return Err(parse_err(ln, "content after `end`"));
    }
    Ok(inst)
}

fn join(v: &[Rational]) -> String {
    v.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

/// `a.. | g..` with single spaces and no dangling blanks.
fn bar_line(a: &[Rational], g: &[Rational]) -> String {
    [join(a), "|".to_string(), join(g)]
        .into_iter()
        .filter(|s| !s.is_empty())
        .collect::<Vec<_>>()
        .join(" ")
}

/// Canonical serialization: one space between tokens, no comments.
pub fn write_milp(inst: &MilpInstance) -> String {
    let mut out = format!("milp p {} q {}\n", inst.p, inst.q);
    out.push_str(&format!("maximize {}\n", bar_line(&inst.c, &inst.h)));
    out.push_str("st\n");
    for i in 0..inst.m() {
        out.push_str(&format!(
            "{} <= {}\n",
            bar_line(&inst.a[i], &inst.g[i]),
            inst.b[i]
        ));
    }
    out.push_str("end\n");
    out
}

/// Parses a single cut `a.. | g.. <= rhs`.
pub fn parse_cut(text: &str, p: usize, q: usize) -> Result<Cut> {
    let mut lines = content_lines(text);
    let (ln, toks) = lines.next().ok_or_else(|| parse_err(1, "empty cut"))?;
    let (a, g, rhs) = parse_row(ln, &toks, p, q)?;
    if let Some((ln, _)) = lines.next() {
        return Err(parse_err(ln, "a cut is a single row"));
    }
    Cut::new(a, g, rhs).map_err(|e| parse_err(ln, e.to_string()))
}

fn integer(line: usize, tok: &str) -> Result<BigInt> {
    let r = parse_rational(tok).map_err(|e| parse_err(line, e.to_string()))?;
    if !r.is_integer() {
        return Err(parse_err(line, format!("{tok} is not an integer")));
    }
    Ok(r.to_integer())
}

/// Parses `dis k <int> p <int>` followed by `k` rows `d.. <= delta`.
pub fn parse_disjunction(text: &str) -> Result<Disjunction> {
    let mut lines = content_lines(text);
    let (ln, head) = lines
        .next()
        .ok_or_else(|| parse_err(1, "empty disjunction file"))?;
    if head.len() != 5 || head[0] != "dis" || head[1] != "k" || head[3] != "p" {
        return Err(parse_err(ln, "header must read `dis k <int> p <int>`"));
    }
    let k = count(ln, head.get(2))?;
    let p = count(ln, head.get(4))?;
    let mut d = vec![];
    let mut delta = vec![];
    for (ln, toks) in lines.by_ref().take(k) {
        let n = toks.len();
        if n != p + 2 || toks[p] != "<=" {
            return Err(parse_err(
                ln,
                format!("expected {p} coefficients then `<= <delta>`"),
            ));
        }
        d.push(
            toks[..p]
                .iter()
                .map(|t| integer(ln, t))
                .collect::<Result<Vec<_>>>()?,
        );
        delta.push(integer(ln, toks[n - 1])?);
    }
    if d.len() != k {
        return Err(parse_err(
            text.lines().count().max(1),
            format!("expected {k} terms, found {}", d.len()),
        ));
    }
    if let Some((ln, _)) = lines.next() {
        return Err(parse_err(ln, "more terms than declared"));
    }
    Disjunction::new(p, d, delta)
}

/// Inverse of [`parse_disjunction`].
pub fn write_disjunction(dis: &Disjunction) -> String {
    dis.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::rational::{frac, int};

    const CKS: &str = "\
# max y over the three CKS rows
milp p 2 q 1
maximize 0 0 | 1
st
-1 0 | 1 <= 0
0 -1 | 1 <= 0
1 1 | 1 <= 2   # top
end
";

    #[test]
    fn parses_cks() {
        let inst = parse_milp(CKS).unwrap();
        assert_eq!((inst.m(), inst.p, inst.q), (3, 2, 1));
        assert_eq!(inst.polyhedron(), fixtures::cks_core());
    }

    #[test]
    fn x_only_instance() {
        let inst = parse_milp("milp p 1 q 0\nmaximize 1 |\nst\n2 | <= 1\nend\n").unwrap();
        assert_eq!(inst.a, vec![vec![int(2)]]);
        assert!(inst.g[0].is_empty());
    }

    #[test]
    fn division_by_zero_token() {
        let err = parse_milp("milp p 1 q 0\nmaximize 1 |\nst\n1/0 | <= 1\nend\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 4, .. }), "{err}");
    }

    #[test]
    fn shape_mismatch_reports_line() {
        let err = parse_milp("milp p 2 q 0\nmaximize 1 1 |\nst\n1 | <= 1\nend\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 4, .. }));
        let err = parse_milp("milp p 1 q 0\nmaximize 1 |\nst\n1 <= 1\nend\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 4, .. }));
        assert!(parse_milp("milp p 1 q 0\nmaximize 1 |\nst\n").is_err());
    }

    #[test]
    fn round_trip() {
        for inst in [
            fixtures::cks(),
            fixtures::owen_mehrotra(),
            fixtures::cone4(),
            fixtures::expon_instance(2),
        ] {
            let text = write_milp(&inst);
            assert_eq!(parse_milp(&text).unwrap(), inst);
            assert_eq!(write_milp(&parse_milp(&text).unwrap()), text);
        }
        let mut inst = MilpInstance::new(0, 1, vec![], vec![frac(-1, 3)]).unwrap();
        inst.push_row(vec![], vec![frac(7, 2)], int(0)).unwrap();
        let text = write_milp(&inst);
        assert_eq!(text, "milp p 0 q 1\nmaximize | -1/3\nst\n| 7/2 <= 0\nend\n");
        assert_eq!(parse_milp(&text).unwrap(), inst);
    }

    #[test]
    fn disjunction_round_trip() {
        let text = "dis k 2 p 1\n1 <= 0\n-1 <= -1\n";
        let d = parse_disjunction(text).unwrap();
        assert_eq!(write_disjunction(&d), text);
        assert!(parse_disjunction("dis k 2 p 1\n1 <= 0\n").is_err());
        assert!(parse_disjunction("dis k 1 p 1\n1/2 <= 0\n").is_err());
    }

    #[test]
    fn cut_rows() {
        let cut = parse_cut("0 0 | 1 <= 0", 2, 1).unwrap();
        assert_eq!(cut.beta, vec![int(1)]);
        assert!(matches!(
            parse_cut("0 | <= 1", 1, 0),
            Err(Error::Parse { .. })
        ));
    }
}
