//! Plain-text file formats: presentations, target polynomials, and
//! representation pairs.
//!
//! All three formats share one shape: `key = value` lines, `#` to end of
//! line for comments, blank lines ignored.  Errors carry the 1-based line
//! and column of the offending token.
//!
//! **Presentation files** declare the base field and the matrix row-major:
//!
//! ```text
//! q = 9
//! ext_poly = x^2 + 1      # optional; canonical modulus when omitted
//! rank = 2
//! label = example         # optional
//! tau = t - th            # rank^2 entries, row-major
//! tau = x
//! tau = 0
//! tau = 1
//! blocks = 1, 1           # optional upper-triangular block sizes
//! ```
//!
//! Entry literals use `t`, `th`, and `x` for the field generator;
//! [`render_motive`] writes files that re-parse to the same presentation
//! bit for bit.
//!
//! **Target files** list rank-one tensor factors with their exponents for
//! the character-sum comparison: `target = <exponent> | <tau literal>`,
//! one line per summand.
//!
//! **Representation files** give one multiplication table and two matrix
//! tuples over the declared field: `table = ...` rows, then `dim = d`,
//! then one `rep1 = ...` (and `rep2 = ...`) line of `d^2` entries per group
//! element.

use std::fmt;
use std::sync::Arc;

use crate::algebra::field::{FFElem, FiniteField};
use crate::algebra::literal::{eval_expr, eval_tau_entry, parse_expr, render_tau_entry};
use crate::algebra::matrix::Matrix;
use crate::algebra::poly::Poly;
use crate::algebra::{Ring, Var};
use crate::motive::MotivePresentation;
use crate::place::SemiStablePresentation;
use crate::repr::{FiniteGroupRep, Group};

/// Parse failure with a 1-based location.  Line 0 marks whole-file
/// conditions (missing keys, wrong entry counts).
#[derive(Debug, Clone, PartialEq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line == 0 {
            write!(f, "{}", self.message)
        } else {
            write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
        }
    }
}

impl std::error::Error for ParseError {}

pub type IoResult<T> = Result<T, ParseError>;

fn file_err<T>(message: impl Into<String>) -> IoResult<T> {
    Err(ParseError {
        line: 0,
        column: 0,
        message: message.into(),
    })
}

/// One `key = value` line with the column where the value starts.
struct KeyLine<'a> {
    line: usize,
    key: &'a str,
    value: &'a str,
    value_column: usize,
}

fn key_lines(src: &str) -> IoResult<Vec<KeyLine<'_>>> {
    let mut out = Vec::new();
    for (idx, raw) in src.lines().enumerate() {
        let line = idx + 1;
        let content = match raw.find('#') {
            Some(p) => &raw[..p],
            None => raw,
        };
        if content.trim().is_empty() {
            continue;
        }
        let eq = content.find('=').ok_or(ParseError {
            line,
            column: 1,
            message: "expected a `key = value` line".into(),
        })?;
        let key = content[..eq].trim();
        let after = &content[eq + 1..];
        let lead = after.len() - after.trim_start().len();
        let value = after.trim();
        if key.is_empty() || value.is_empty() {
            return Err(ParseError {
                line,
                column: eq + 1,
                message: "empty key or value".into(),
            });
        }
        out.push(KeyLine {
            line,
            key,
            value,
            value_column: eq + 2 + lead,
        });
    }
    Ok(out)
}

fn at<T>(l: &KeyLine<'_>, message: impl Into<String>) -> IoResult<T> {
    Err(ParseError {
        line: l.line,
        column: l.value_column,
        message: message.into(),
    })
}

/// Map a literal error inside a value to file coordinates.
fn literal_err<T>(
    l: &KeyLine<'_>,
    offset: usize,
    e: impl fmt::Display,
) -> IoResult<T> {
    Err(ParseError {
        line: l.line,
        column: l.value_column + offset,
        message: e.to_string(),
    })
}

fn parse_usize(l: &KeyLine<'_>, value: &str) -> IoResult<usize> {
    value
        .trim()
        .parse::<usize>()
        .or_else(|_| at(l, format!("expected an integer, found `{value}`")))
}

/// `q = p^m` with `p` prime: recover `(p, m)`.
fn split_prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q {
        if q % p == 0 {
            let mut rest = q;
            let mut m = 0;
            while rest % p == 0 {
                rest /= p;
                m += 1;
            }
            return if rest == 1 { Some((p, m)) } else { None };
        }
        p += 1;
    }
    Some((q, 1))
}

/// Evaluate a literal as a polynomial in the generator symbol `x` over the
/// prime field — the shape of an extension modulus.
fn eval_modulus(l: &KeyLine<'_>, prime: &Arc<FiniteField>) -> IoResult<Vec<FFElem>> {
    let expr = match parse_expr(l.value) {
        Ok(e) => e,
        Err(e) => return literal_err(l, e.pos, &e.message),
    };
    let one = Poly::constant(Var::X, FFElem::one(prime));
    let poly = eval_expr(&expr, &one, &|name| match name {
        "x" => Some(Poly::variable(Var::X, &FFElem::one(prime))),
        _ => None,
    })
    .or_else(|e| literal_err(l, 0, e))?;
    Ok(poly.coeffs().to_vec())
}

/// Evaluate a literal as a single field element (`x` bound to the
/// generator on extension fields).
fn eval_element(l: &KeyLine<'_>, offset: usize, src: &str, field: &Arc<FiniteField>) -> IoResult<FFElem> {
    let expr = match parse_expr(src) {
        Ok(e) => e,
        Err(e) => return literal_err(l, offset + e.pos, &e.message),
    };
    let one = FFElem::one(field);
    let gen = if field.relative_degree() > 1 {
        Some(FFElem::generator(field).expect("extension fields have a generator"))
    } else {
        None
    };
    eval_expr(&expr, &one, &|name| match name {
        "x" => gen.clone(),
        _ => None,
    })
    .or_else(|e| literal_err(l, offset, e))
}

fn build_field(
    q_line: &KeyLine<'_>,
    q: u64,
    ext: Option<&KeyLine<'_>>,
) -> IoResult<Arc<FiniteField>> {
    let (p, m) = match split_prime_power(q) {
        Some(pm) => pm,
        None => return at(q_line, format!("{q} is not a prime power")),
    };
    let prime = FiniteField::prime(p).or_else(|e| at(q_line, e.to_string()))?;
    match (m, ext) {
        (1, None) => Ok(prime),
        (1, Some(l)) => at(l, "ext_poly given for a prime field"),
        (_, None) => FiniteField::extension_auto(&prime, m as usize)
            .or_else(|e| at(q_line, e.to_string())),
        (_, Some(l)) => {
            let coeffs = eval_modulus(l, &prime)?;
            if coeffs.len() != m as usize + 1 {
                return at(l, format!(
                    "modulus degree {} does not match q = {p}^{m}",
                    coeffs.len().saturating_sub(1)
                ));
            }
            FiniteField::extension(&prime, coeffs).or_else(|e| at(l, e.to_string()))
        }
    }
}

/// A parsed presentation file.
#[derive(Debug, Clone)]
pub struct MotiveDocument {
    pub motive: MotivePresentation,
    pub blocks: Option<Vec<usize>>,
}

impl MotiveDocument {
    /// The declared block structure, or the whole matrix as a single block.
    pub fn semistable(&self) -> IoResult<SemiStablePresentation> {
        let blocks = self
            .blocks
            .clone()
            .unwrap_or_else(|| vec![self.motive.rank()]);
        SemiStablePresentation::new(self.motive.clone(), blocks)
            .or_else(|e| file_err(e.to_string()))
    }
}

pub fn parse_motive(src: &str) -> IoResult<MotiveDocument> {
    let lines = key_lines(src)?;
    let mut q: Option<(u64, usize)> = None;
    let mut ext_idx: Option<usize> = None;
    let mut rank: Option<usize> = None;
    let mut label: Option<String> = None;
    let mut blocks: Option<Vec<usize>> = None;
    let mut field: Option<Arc<FiniteField>> = None;
    let mut entries: Vec<Poly<crate::algebra::ratfunc::RatFunc>> = Vec::new();

    for (i, l) in lines.iter().enumerate() {
        match l.key {
            "q" => {
                if q.is_some() {
                    return at(l, "duplicate q");
                }
                let v = parse_usize(l, l.value)? as u64;
                q = Some((v, i));
            }
            "ext_poly" => {
                if ext_idx.is_some() {
                    return at(l, "duplicate ext_poly");
                }
                if field.is_some() {
                    return at(l, "ext_poly must come before the first tau entry");
                }
                ext_idx = Some(i);
            }
            "rank" => {
                if rank.is_some() {
                    return at(l, "duplicate rank");
                }
                rank = Some(parse_usize(l, l.value)?);
            }
            "label" => {
                if label.is_some() {
                    return at(l, "duplicate label");
                }
                label = Some(l.value.to_string());
            }
            "blocks" => {
                if blocks.is_some() {
                    return at(l, "duplicate blocks");
                }
                let mut sizes = Vec::new();
                for part in l.value.split(',') {
                    sizes.push(parse_usize(l, part)?);
                }
                blocks = Some(sizes);
            }
            "tau" => {
                if field.is_none() {
                    let (qv, qi) = match q {
                        Some(pair) => pair,
                        None => return at(l, "q must be declared before tau entries"),
                    };
                    field = Some(build_field(
                        &lines[qi],
                        qv,
                        ext_idx.map(|j| &lines[j]),
                    )?);
                }
                let k = field.as_ref().unwrap();
                let expr = match parse_expr(l.value) {
                    Ok(e) => e,
                    Err(e) => return literal_err(l, e.pos, &e.message),
                };
                let entry = eval_tau_entry(&expr, k).or_else(|e| literal_err(l, 0, e))?;
                entries.push(entry);
            }
            other => return at(l, format!("unknown key `{other}`")),
        }
    }

    let rank = match rank {
        Some(r) if r >= 1 => r,
        Some(_) => return file_err("rank must be at least 1"),
        None => return file_err("missing rank"),
    };
    if entries.len() != rank * rank {
        return file_err(format!(
            "expected {} tau entries for rank {rank}, found {}",
            rank * rank,
            entries.len()
        ));
    }
    let field = field.expect("tau entries imply a field");
    let tau = Matrix::new(rank, rank, entries);
    let motive =
        MotivePresentation::new(&field, tau, label).or_else(|e| file_err(e.to_string()))?;
    if let Some(sizes) = &blocks {
        if sizes.iter().sum::<usize>() != rank || sizes.iter().any(|&s| s == 0) {
            return file_err(format!(
                "blocks {sizes:?} do not partition rank {rank}"
            ));
        }
    }
    Ok(MotiveDocument { motive, blocks })
}

/// Render the modulus of an extension field in the generator symbol `x`.
fn render_modulus(field: &FiniteField) -> String {
    let coeffs = field.modulus().expect("extension field");
    let mut terms = Vec::new();
    for k in (0..coeffs.len()).rev() {
        let c = &coeffs[k];
        if c.is_zero() {
            continue;
        }
        let idx = c.index();
        let body = match k {
            0 => format!("{idx}"),
            _ => {
                let power = if k == 1 { "x".to_string() } else { format!("x^{k}") };
                if c.is_one() {
                    power
                } else {
                    format!("{idx} {power}")
                }
            }
        };
        terms.push(body);
    }
    terms.join(" + ")
}

/// Serialize a document so that [`parse_motive`] reproduces it exactly.
pub fn render_motive(doc: &MotiveDocument) -> IoResult<String> {
    let m = &doc.motive;
    let field = m.field();
    let mut out = String::new();
    out.push_str(&format!("q = {}\n", field.order()));
    if field.relative_degree() > 1 {
        out.push_str(&format!("ext_poly = {}\n", render_modulus(field)));
    }
    if let Some(label) = m.label() {
        out.push_str(&format!("label = {label}\n"));
    }
    out.push_str(&format!("rank = {}\n", m.rank()));
    for i in 0..m.rank() {
        for j in 0..m.rank() {
            let rendered =
                render_tau_entry(m.tau().at(i, j)).or_else(|e| file_err(e.to_string()))?;
            out.push_str(&format!("tau = {rendered}\n"));
        }
    }
    if let Some(blocks) = &doc.blocks {
        let parts: Vec<String> = blocks.iter().map(|b| b.to_string()).collect();
        out.push_str(&format!("blocks = {}\n", parts.join(", ")));
    }
    Ok(out)
}

/// One summand of a character-sum comparison: a rank-one presentation
/// together with the tensor exponent it enters with.
#[derive(Debug, Clone)]
pub struct TargetEntry {
    pub exponent: u64,
    pub motive: MotivePresentation,
}

/// Parse a targets file: a field declaration followed by
/// `target = <exponent> | <tau literal>` lines, each describing a
/// rank-one presentation by its single matrix entry.
pub fn parse_targets(src: &str) -> IoResult<(Arc<FiniteField>, Vec<TargetEntry>)> {
    let lines = key_lines(src)?;
    let mut q: Option<(u64, usize)> = None;
    let mut ext_idx: Option<usize> = None;
    let mut field: Option<Arc<FiniteField>> = None;
    let mut targets = Vec::new();

    for (i, l) in lines.iter().enumerate() {
        match l.key {
            "q" => {
                if q.is_some() {
                    return at(l, "duplicate q");
                }
                q = Some((parse_usize(l, l.value)? as u64, i));
            }
            "ext_poly" => {
                if ext_idx.is_some() {
                    return at(l, "duplicate ext_poly");
                }
                ext_idx = Some(i);
            }
            "target" => {
                if field.is_none() {
                    let (qv, qi) = match q {
                        Some(pair) => pair,
                        None => return at(l, "q must be declared before targets"),
                    };
                    field = Some(build_field(&lines[qi], qv, ext_idx.map(|j| &lines[j]))?);
                }
                let k = field.as_ref().unwrap();
                let bar = match l.value.find('|') {
                    Some(p) => p,
                    None => return at(l, "expected `<exponent> | <tau literal>`"),
                };
                let exponent = parse_usize(l, &l.value[..bar])? as u64;
                let lit = &l.value[bar + 1..];
                let lead = lit.len() - lit.trim_start().len();
                let offset = bar + 1 + lead;
                let expr = match parse_expr(lit.trim()) {
                    Ok(e) => e,
                    Err(e) => return literal_err(l, offset + e.pos, &e.message),
                };
                let entry = eval_tau_entry(&expr, k).or_else(|e| literal_err(l, offset, e))?;
                let tau = Matrix::new(1, 1, vec![entry]);
                let motive = MotivePresentation::new(k, tau, None)
                    .or_else(|e| literal_err(l, offset, e.to_string()))?;
                targets.push(TargetEntry { exponent, motive });
            }
            other => return at(l, format!("unknown key `{other}`")),
        }
    }
    let field = match field {
        Some(k) => k,
        None => return file_err("no targets declared"),
    };
    Ok((field, targets))
}

/// Parse a representation-pair file: one multiplication table, a dimension,
/// and two matrix families over the declared field.
pub fn parse_repr_pair(src: &str) -> IoResult<(FiniteGroupRep, FiniteGroupRep)> {
    let lines = key_lines(src)?;
    let mut q: Option<(u64, usize)> = None;
    let mut ext_idx: Option<usize> = None;
    let mut dim: Option<usize> = None;
    let mut table_rows: Vec<Vec<usize>> = Vec::new();
    let mut rep_rows: [Vec<Vec<FFElem>>; 2] = [Vec::new(), Vec::new()];
    let mut field: Option<Arc<FiniteField>> = None;

    for (i, l) in lines.iter().enumerate() {
        match l.key {
            "q" => {
                if q.is_some() {
                    return at(l, "duplicate q");
                }
                q = Some((parse_usize(l, l.value)? as u64, i));
            }
            "ext_poly" => {
                if ext_idx.is_some() {
                    return at(l, "duplicate ext_poly");
                }
                ext_idx = Some(i);
            }
            "dim" => {
                if dim.is_some() {
                    return at(l, "duplicate dim");
                }
                dim = Some(parse_usize(l, l.value)?);
            }
            "table" => {
                let mut row = Vec::new();
                for part in l.value.split(',') {
                    row.push(parse_usize(l, part)?);
                }
                table_rows.push(row);
            }
            "rep1" | "rep2" => {
                if field.is_none() {
                    let (qv, qi) = match q {
                        Some(pair) => pair,
                        None => return at(l, "q must be declared before matrices"),
                    };
                    field = Some(build_field(&lines[qi], qv, ext_idx.map(|j| &lines[j]))?);
                }
                let k = field.as_ref().unwrap();
                let which = if l.key == "rep1" { 0 } else { 1 };
                let mut entries = Vec::new();
                let mut offset = 0;
                for part in l.value.split(',') {
                    let lead = part.len() - part.trim_start().len();
                    entries.push(eval_element(l, offset + lead, part.trim(), k)?);
                    offset += part.len() + 1;
                }
                rep_rows[which].push(entries);
            }
            other => return at(l, format!("unknown key `{other}`")),
        }
    }

    let dim = match dim {
        Some(d) if d >= 1 => d,
        _ => return file_err("missing or zero dim"),
    };
    if table_rows.is_empty() {
        return file_err("missing multiplication table");
    }
    let group = Group::from_table(table_rows).or_else(|e| file_err(e.to_string()))?;
    let mut reps = Vec::with_capacity(2);
    for (which, rows) in rep_rows.iter().enumerate() {
        if rows.len() != group.order() {
            return file_err(format!(
                "rep{} has {} matrices for a group of order {}",
                which + 1,
                rows.len(),
                group.order()
            ));
        }
        let mut mats = Vec::with_capacity(rows.len());
        for (g, row) in rows.iter().enumerate() {
            if row.len() != dim * dim {
                return file_err(format!(
                    "rep{} matrix {g} has {} entries, expected {}",
                    which + 1,
                    row.len(),
                    dim * dim
                ));
            }
            mats.push(Matrix::new(dim, dim, row.clone()));
        }
        reps.push(FiniteGroupRep::new(group.clone(), mats).or_else(|e| file_err(e.to_string()))?);
    }
    let second = reps.pop().expect("two reps");
    let first = reps.pop().expect("two reps");
    Ok((first, second))
}

/// Render a target list back to its file form.
pub fn render_targets(field: &Arc<FiniteField>, targets: &[TargetEntry]) -> IoResult<String> {
    let mut out = String::new();
    out.push_str(&format!("q = {}\n", field.order()));
    if field.relative_degree() > 1 {
        out.push_str(&format!("ext_poly = {}\n", render_modulus(field)));
    }
    for t in targets {
        let entry = render_tau_entry(t.motive.tau().at(0, 0))
            .or_else(|e| file_err(e.to_string()))?;
        out.push_str(&format!("target = {} | {}\n", t.exponent, entry));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presentation_files_round_trip() {
        let src = "\
# a rank-two presentation over F_9
q = 9
ext_poly = x^2 + 1
label = sample
rank = 2
tau = t - th        # entry (0, 0)
tau = x
tau = 0
tau = 2t + th       # = 2 (t - th) over F_3 coefficients
blocks = 1, 1
";
        let doc = parse_motive(src).unwrap();
        assert_eq!(doc.motive.rank(), 2);
        assert_eq!(doc.motive.label(), Some("sample"));
        assert_eq!(doc.blocks, Some(vec![1, 1]));
        assert_eq!(doc.motive.field().order(), 9);

        let rendered = render_motive(&doc).unwrap();
        let doc2 = parse_motive(&rendered).unwrap();
        assert_eq!(doc.motive.tau(), doc2.motive.tau());
        assert_eq!(doc.blocks, doc2.blocks);
        // rendering is a fixed point
        assert_eq!(rendered, render_motive(&doc2).unwrap());
    }

    #[test]
    fn carlitz_file_is_minimal() {
        let src = "q = 3\nrank = 1\ntau = t - th\n";
        let doc = parse_motive(src).unwrap();
        assert_eq!(doc.motive.dim(), 1);
        assert_eq!(doc.motive.hodge_pink_weights(), &[1]);
        let rendered = render_motive(&doc).unwrap();
        assert_eq!(rendered, "q = 3\nrank = 1\ntau = t - th\n");
    }

    #[test]
    fn errors_carry_positions() {
        // bad literal inside the third line, after `tau = `
        let src = "q = 3\nrank = 1\ntau = t - + th\n";
        let e = parse_motive(src).unwrap_err();
        assert_eq!(e.line, 3);
        assert!(e.column > 7, "column {} should point into the literal", e.column);

        let e = parse_motive("q = 5\nrank = 1\nwibble = 3\n").unwrap_err();
        assert_eq!(e.line, 3);

        // a bad field order is blamed on the `q` line itself
        let e = parse_motive("q = 6\nrank = 1\ntau = t\n").unwrap_err();
        assert_eq!(e.line, 1);
        assert!(e.message.contains("prime power"));

        // entry counts are whole-file conditions
        let e = parse_motive("q = 3\nrank = 2\ntau = t - th\n").unwrap_err();
        assert_eq!(e.line, 0);
    }

    #[test]
    fn target_files_list_rank_one_factors() {
        let src = "\
q = 3
target = 0 | t - th
target = 2 | 2 (t - th)
";
        let (field, targets) = parse_targets(src).unwrap();
        assert_eq!(field.order(), 3);
        assert_eq!(targets.len(), 2);
        assert_eq!(targets[0].exponent, 0);
        assert_eq!(targets[1].exponent, 2);
        assert_eq!(targets[0].motive.rank(), 1);
        assert_eq!(targets[0].motive.dim(), 1);
        assert_eq!(targets[1].motive.dim(), 1);

        let rendered = render_targets(&field, &targets).unwrap();
        let (_, targets2) = parse_targets(&rendered).unwrap();
        assert_eq!(targets.len(), targets2.len());
        for (a, b) in targets.iter().zip(&targets2) {
            assert_eq!(a.exponent, b.exponent);
            assert_eq!(a.motive.tau(), b.motive.tau());
        }

        // a scalar that is not a unit multiple of a (t - th)-power cannot
        // present a tensor factor
        let bad = "q = 3\ntarget = 1 | t^2 + 1\n";
        assert!(parse_targets(bad).is_err());
    }

    #[test]
    fn repr_files_build_validated_pairs() {
        let src = "\
q = 3
table = 0, 1, 2
table = 1, 2, 0
table = 2, 0, 1
dim = 2
rep1 = 1, 0, 0, 1
rep1 = 1, 1, 0, 1
rep1 = 1, 2, 0, 1
rep2 = 1, 0, 0, 1
rep2 = 1, 0, 0, 1
rep2 = 1, 0, 0, 1
";
        let (a, b) = parse_repr_pair(src).unwrap();
        assert_eq!(a.group().order(), 3);
        assert_eq!(a.dim(), 2);
        assert!(crate::repr::brauer_nesbitt_equal(&a, &b).unwrap());

        // a non-homomorphism is rejected with a whole-file error
        let bad = src.replace("rep2 = 1, 0, 0, 1\nrep2 = 1, 0, 0, 1\nrep2 = 1, 0, 0, 1",
            "rep2 = 1, 0, 0, 1\nrep2 = 2, 0, 0, 2\nrep2 = 1, 0, 0, 1");
        let e = parse_repr_pair(&bad).unwrap_err();
        assert_eq!(e.line, 0);
        assert!(e.message.contains("homomorphism"));
    }

    #[test]
    fn generator_entries_need_an_extension() {
        let src = "q = 9\ntable = 0\ndim = 1\nrep1 = 1\nrep2 = x^8\n";
        let (a, b) = parse_repr_pair(src).unwrap();
        assert_eq!(a.field().order(), 9);
        // x^8 = 1 in F_9
        assert!(crate::repr::brauer_nesbitt_equal(&a, &b).unwrap());

        let e = parse_repr_pair("q = 3\ntable = 0\ndim = 1\nrep1 = 1\nrep2 = x\n").unwrap_err();
        assert_eq!(e.line, 5);
    }
}
