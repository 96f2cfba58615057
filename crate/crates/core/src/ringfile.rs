//! Line-oriented text format for graded rings.
//!
//! ```text
//! # comments start with '#'
//! name projectiveSpace(2)
//! scalars rational
//! top 4
//! degree 0: 1
//! degree 1:
//! degree 2: h
//! degree 3:
//! degree 4: h^2
//! h * h = h^2
//! class omega = h
//! ```
//!
//! Products not listed are zero, products with the unit default to the
//! identity, and `b * a` is completed from `a * b` by the graded sign rule.
//! Coefficients other than 1 are written in brackets, e.g. `[-3/2] v` or
//! `[(1*e^1)/(1*e^0 + 1*e^1)] q`.

use std::fmt::Write as _;

use thiserror::Error;

use crate::algebra::{AlgebraBuilder, AlgebraError, Element, GradedBasis, PDAlgebra};
use crate::scalars::{EpsFraction, Field, Rational, ScalarMode};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingFileError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("line {line}: unknown basis element `{name}`")]
    UnknownName { line: usize, name: String },
    #[error("missing `{0}` line")]
    Missing(&'static str),
    #[error("ring violates the algebra axioms: {0}")]
    Axiom(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> RingFileError {
    RingFileError::Syntax { line, column, message: message.into() }
}

/// A parsed ring over whichever coefficient field its header declares.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Ring {
    Rational(PDAlgebra<Rational>),
    Symbolic(PDAlgebra<EpsFraction>),
}

impl Ring {
    pub fn name(&self) -> &str {
        match self {
            Ring::Rational(a) => a.name(),
            Ring::Symbolic(a) => a.name(),
        }
    }

    pub fn emit(&self) -> String {
        match self {
            Ring::Rational(a) => emit_ring(a),
            Ring::Symbolic(a) => emit_ring(a),
        }
    }
}

/// Serializes `algebra` so that [`parse_ring`] reproduces it exactly.
pub fn emit_ring<F: Field>(algebra: &PDAlgebra<F>) -> String {
    let basis = algebra.basis();
    let mut out = String::new();
    writeln!(out, "name {}", algebra.name()).unwrap();
    writeln!(out, "scalars {}", F::MODE).unwrap();
    writeln!(out, "top {}", basis.top_degree()).unwrap();
    for d in 0..=basis.top_degree() {
        let names = basis.names_in(d);
        if names.is_empty() {
            writeln!(out, "degree {d}:").unwrap();
        } else {
            writeln!(out, "degree {d}: {}", names.join(" ")).unwrap();
        }
    }

    let n = basis.len();
    let unit = basis.unit();
    let mut line = |i: usize, j: usize, value: &Element<F>| {
        writeln!(out, "{} * {} = {}", basis.name(i), basis.name(j), algebra.render(value)).unwrap();
    };
    let standard_unit =
        (0..n).all(|k| *algebra.basis_product(unit, k) == Element::basis(k) && *algebra.basis_product(k, unit) == Element::basis(k));
    for i in 0..n {
        for j in i..n {
            let (ij, ji) = (algebra.basis_product(i, j), algebra.basis_product(j, i));
            if standard_unit && (i == unit || j == unit) {
                continue;
            }
            if i == j {
                if !ij.is_zero() {
                    line(i, i, ij);
                }
                continue;
            }
            if ij.is_zero() && ji.is_zero() {
                continue;
            }
            line(i, j, ij);
            let odd = basis.degree(i) * basis.degree(j) % 2 == 1;
            let mirrored = if odd { ij.neg() } else { ij.clone() };
            if *ji != mirrored {
                line(j, i, ji);
            }
        }
    }
    if !standard_unit {
        // an explicit unit row disables unit auto-fill for the whole row
        for k in 0..n {
            if algebra.basis_product(unit, k).is_zero() && algebra.basis_product(k, unit).is_zero() {
                line(unit, k, &Element::zero());
            }
        }
    }
    for (name, value) in algebra.classes() {
        writeln!(out, "class {name} = {}", algebra.render(value)).unwrap();
    }
    out
}

/// Parses a ring and requires it to pass the axiom scan.
pub fn parse_ring(text: &str) -> Result<Ring, RingFileError> {
    let ring = parse_ring_unchecked(text)?;
    let first = match &ring {
        Ring::Rational(a) => a.check_axioms().violations.into_iter().next(),
        Ring::Symbolic(a) => a.check_axioms().violations.into_iter().next(),
    };
    match first {
        Some(v) => Err(RingFileError::Axiom(v.to_string())),
        None => Ok(ring),
    }
}

/// Parses a ring without validating the axioms.
pub fn parse_ring_unchecked(text: &str) -> Result<Ring, RingFileError> {
    let lines = logical_lines(text);
    let mode = header(&lines, "scalars")?
        .map(|(no, col, v)| v.parse::<ScalarMode>().map_err(|_| syntax(no, col, format!("unknown scalar mode `{v}`"))))
        .transpose()?
        .unwrap_or(ScalarMode::Rational);
    Ok(match mode {
        ScalarMode::Rational => Ring::Rational(parse_typed(&lines)?),
        ScalarMode::SymbolicEps => Ring::Symbolic(parse_typed(&lines)?),
    })
}

/// Parses a ring whose header must declare the coefficient field `F`.
pub fn parse_ring_as<F: Field>(text: &str) -> Result<PDAlgebra<F>, RingFileError> {
    parse_typed(&logical_lines(text))
}

struct Line<'a> {
    number: usize,
    indent: usize,
    text: &'a str,
}

fn logical_lines(text: &str) -> Vec<Line<'_>> {
    text.lines()
        .enumerate()
        .filter_map(|(i, raw)| {
            let content = raw.split('#').next().unwrap_or("");
            let trimmed = content.trim();
            (!trimmed.is_empty()).then(|| Line {
                number: i + 1,
                indent: content.len() - content.trim_start().len(),
                text: trimmed,
            })
        })
        .collect()
}

fn keyword<'a>(line: &Line<'a>, kw: &str) -> Option<&'a str> {
    let rest = line.text.strip_prefix(kw)?;
    if rest.is_empty() {
        Some(rest)
    } else if rest.starts_with(char::is_whitespace) {
        Some(rest.trim())
    } else {
        None
    }
}

/// The value of the unique header line `kw`, with its position.
fn header<'a>(lines: &[Line<'a>], kw: &str) -> Result<Option<(usize, usize, &'a str)>, RingFileError> {
    let mut found = None;
    for line in lines {
        if let Some(v) = keyword(line, kw) {
            if found.is_some() {
                return Err(syntax(line.number, line.indent + 1, format!("duplicate `{kw}` line")));
            }
            found = Some((line.number, line.indent + kw.len() + 2, v));
        }
    }
    Ok(found)
}

fn parse_typed<F: Field>(lines: &[Line<'_>]) -> Result<PDAlgebra<F>, RingFileError> {
    if let Some((no, col, v)) = header(lines, "scalars")? {
        if v != F::MODE.to_string() {
            return Err(syntax(no, col, format!("expected scalars {}, found `{v}`", F::MODE)));
        }
    }
    let (_, _, name) = header(lines, "name")?.ok_or(RingFileError::Missing("name"))?;
    let (no, col, top) = header(lines, "top")?.ok_or(RingFileError::Missing("top"))?;
    let top: usize = top.parse().map_err(|_| syntax(no, col, format!("invalid top degree `{top}`")))?;

    let mut per_degree: Vec<Option<Vec<String>>> = vec![None; top + 1];
    let mut body = Vec::new();
    for line in lines {
        if ["name", "scalars", "top"].iter().any(|kw| keyword(line, kw).is_some()) {
            continue;
        }
        let Some(rest) = keyword(line, "degree") else {
            body.push(line);
            continue;
        };
        let col = line.indent + 1;
        let (d, names) = rest.split_once(':').ok_or_else(|| syntax(line.number, col, "expected `degree d: names`"))?;
        let d: usize = d.trim().parse().map_err(|_| syntax(line.number, col + 7, format!("invalid degree `{}`", d.trim())))?;
        if d > top {
            return Err(syntax(line.number, col + 7, format!("degree {d} exceeds top {top}")));
        }
        if per_degree[d].is_some() {
            return Err(syntax(line.number, col, format!("duplicate degree {d}")));
        }
        per_degree[d] = Some(names.split_whitespace().map(str::to_string).collect());
    }
    let basis = GradedBasis::new(top, per_degree.into_iter().map(Option::unwrap_or_default).collect())?;
    let mut builder = AlgebraBuilder::new(name, basis);

    for line in body {
        let col = line.indent + 1;
        if let Some(rest) = keyword(line, "class") {
            let (cname, expr) =
                rest.split_once('=').ok_or_else(|| syntax(line.number, col, "expected `class name = expression`"))?;
            let offset = col + line.text.find('=').unwrap_or(0) + 1;
            let value = parse_element(builder.basis(), expr, line.number, offset)?;
            builder.class(cname.trim(), value);
            continue;
        }
        let (lhs, rhs) = line
            .text
            .split_once('=')
            .ok_or_else(|| syntax(line.number, col, format!("unrecognised line `{}`", line.text)))?;
        let (a, b) = lhs.split_once('*').ok_or_else(|| syntax(line.number, col, "expected `a * b = expression`"))?;
        let lookup = |n: &str| {
            builder
                .basis()
                .index_of(n.trim())
                .map(|_| n.trim().to_string())
                .map_err(|_| RingFileError::UnknownName { line: line.number, name: n.trim().to_string() })
        };
        let (a, b) = (lookup(a)?, lookup(b)?);
        let value = parse_element(builder.basis(), rhs, line.number, col + lhs.len() + 1)?;
        builder.product(&a, &b, value)?;
    }
    Ok(builder.build())
}

/// Parses `[c] name + name - [c] name`, `2*name`, `-name` or `0` against a
/// basis. `column` is the 1-based column where `text` starts.
pub fn parse_element<F: Field>(
    basis: &GradedBasis,
    text: &str,
    line: usize,
    column: usize,
) -> Result<Element<F>, RingFileError> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let at = |pos: usize| column + text[..chars.get(pos).map_or(text.len(), |c| c.0)].chars().count();
    let mut pos = 0;
    let skip_ws = |pos: &mut usize| {
        while *pos < chars.len() && chars[*pos].1.is_whitespace() {
            *pos += 1;
        }
    };
    let mut out = Element::zero();
    let mut first = true;
    skip_ws(&mut pos);
    if pos == chars.len() {
        return Err(syntax(line, at(pos), "empty expression"));
    }
    while pos < chars.len() {
        let mut negative = false;
        if chars[pos].1 == '+' || chars[pos].1 == '-' {
            negative = chars[pos].1 == '-';
            pos += 1;
            skip_ws(&mut pos);
        } else if !first {
            return Err(syntax(line, at(pos), "expected `+` or `-`"));
        }
        first = false;

        let mut coeff = F::one();
        if pos < chars.len() && chars[pos].1 == '[' {
            let start = pos + 1;
            let mut depth = 1;
            pos += 1;
            while pos < chars.len() && depth > 0 {
                match chars[pos].1 {
                    '[' => depth += 1,
                    ']' => depth -= 1,
                    _ => {}
                }
                pos += 1;
            }
            if depth != 0 {
                return Err(syntax(line, at(start - 1), "unclosed `[`"));
            }
            let inner = &text[chars[start].0..chars[pos - 1].0];
            coeff = inner.trim().parse().map_err(|e| syntax(line, at(start), format!("bad coefficient: {e}")))?;
            skip_ws(&mut pos);
        }
        let start = pos;
        while pos < chars.len() && !chars[pos].1.is_whitespace() && !matches!(chars[pos].1, '+' | '-' | '*' | '[') {
            pos += 1;
        }
        let mut token = &text[chars.get(start).map_or(text.len(), |c| c.0)..chars.get(pos).map_or(text.len(), |c| c.0)];
        skip_ws(&mut pos);
        if pos < chars.len() && chars[pos].1 == '*' {
            let c: F = token.parse().map_err(|e| syntax(line, at(start), format!("bad coefficient: {e}")))?;
            coeff = coeff * &c;
            pos += 1;
            skip_ws(&mut pos);
            let name_start = pos;
            while pos < chars.len() && !chars[pos].1.is_whitespace() && !matches!(chars[pos].1, '+' | '-' | '*' | '[') {
                pos += 1;
            }
            token = &text[chars.get(name_start).map_or(text.len(), |c| c.0)..chars.get(pos).map_or(text.len(), |c| c.0)];
            skip_ws(&mut pos);
        }
        if token.is_empty() {
            return Err(syntax(line, at(start), "expected a basis name"));
        }
        if negative {
            coeff = -coeff;
        }
        match basis.index_of(token) {
            Ok(i) => out.add_term(i, coeff),
            Err(_) if token == "0" => {}
            Err(_) => return Err(RingFileError::UnknownName { line, name: token.to_string() }),
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn fixtures_round_trip() {
        for name in [
            "gompfFormal",
            "gompfVariant",
            "projectiveSpace(1)",
            "projectiveSpace(2)",
            "projectiveSpace(4)",
            "productWithSphere(gompfFormal)",
        ] {
            let alg = fixtures::by_name(name).unwrap();
            let text = emit_ring(&alg);
            let parsed = parse_ring(&text).unwrap();
            assert_eq!(parsed, Ring::Rational(alg), "{name}");
            assert_eq!(parsed.emit(), text);
        }
    }

    #[test]
    fn projective_plane_file() {
        let text = "# CP^2\nname cp2\nscalars rational\ntop 4\ndegree 0: 1\ndegree 2: h\ndegree 4: h^2\nh * h = h^2\nclass omega = h\n";
        let Ring::Rational(alg) = parse_ring(text).unwrap() else { panic!("rational ring expected") };
        assert_eq!(alg.dim(), 3);
        assert!(alg.check_poincare_duality().passed());
        assert_eq!(alg.class("omega"), Some(&alg.basis_element("h").unwrap()));
    }

    #[test]
    fn sign_completion_is_automatic() {
        let text = emit_ring(&fixtures::gompf_formal());
        assert!(text.contains("a1 * a2 = q"));
        assert!(!text.contains("a2 * a1"));
        let Ring::Rational(alg) = parse_ring(&text).unwrap() else { panic!() };
        assert_eq!(alg.multiply_named("a2", "a1").unwrap(), alg.element(&[("q", -Rational::one())]).unwrap());
    }

    #[test]
    fn symbolic_round_trip() {
        let text = "name s\nscalars symbolicEps\ntop 2\ndegree 0: 1\ndegree 1:\ndegree 2: x\nclass omega = [(1*e^1)/(1*e^0 + 1*e^1)] x\n";
        let Ring::Symbolic(alg) = parse_ring(text).unwrap() else { panic!("symbolic ring expected") };
        assert_eq!(emit_ring(&alg), text);
    }

    #[test]
    fn errors_carry_positions() {
        let err = parse_ring("name r\ntop 2\ndegree 0: 1\ndegree 2: v\n  v * w = v\n").unwrap_err();
        assert_eq!(err, RingFileError::UnknownName { line: 5, name: "w".into() });

        let err = parse_ring("name r\ntop x\n").unwrap_err();
        assert_eq!(err, RingFileError::Syntax { line: 2, column: 5, message: "invalid top degree `x`".into() });

        let err = parse_ring("name r\ntop 2\ndegree 0: 1\ndegree 2: v\nv v\n").unwrap_err();
        assert!(matches!(err, RingFileError::Syntax { line: 5, column: 1, .. }));

        assert_eq!(parse_ring("top 2\n").unwrap_err(), RingFileError::Missing("name"));
        let err = parse_ring("name r\nscalars complex\ntop 2\n").unwrap_err();
        assert!(matches!(err, RingFileError::Syntax { line: 2, column: 9, .. }));
    }

    #[test]
    fn axiom_violations_are_rejected() {
        let mut text = emit_ring(&fixtures::gompf_formal());
        text = text.replace("c * q = v\n", "");
        let err = parse_ring(&text).unwrap_err();
        assert!(matches!(err, RingFileError::Axiom(_)), "{err:?}");
        assert!(parse_ring_unchecked(&text).is_ok());
    }

    #[test]
    fn element_expressions() {
        let g = fixtures::gompf_formal();
        let b = g.basis();
        let parse = |s: &str| parse_element::<Rational>(b, s, 1, 1);
        let w = g.basis_element("w").unwrap();
        let c = g.basis_element("c").unwrap();
        assert_eq!(parse("w").unwrap(), w);
        assert_eq!(parse("w + 2*c").unwrap(), w.add(&c.scale(&Rational::from(2))));
        assert_eq!(parse("[-1/2] w - c").unwrap(), w.scale(&Rational::frac(-1, 2)).sub(&c));
        assert_eq!(parse("-w").unwrap(), w.neg());
        assert_eq!(parse("0").unwrap(), Element::zero());
        assert_eq!(parse("1").unwrap(), g.one());
        assert!(matches!(parse("w c"), Err(RingFileError::Syntax { column: 3, .. })));
        assert!(matches!(parse("[1/2 w"), Err(RingFileError::Syntax { .. })));
        assert!(matches!(parse("z"), Err(RingFileError::UnknownName { .. })));
        assert!(parse("").is_err());
    }

    #[test]
    fn type_mismatch_is_reported() {
        let text = emit_ring(&fixtures::projective_space(2));
        assert!(parse_ring_as::<EpsFraction>(&text).is_err());
        assert!(parse_ring_as::<Rational>(&text).is_ok());
    }
}
