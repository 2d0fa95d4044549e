//! Line-oriented `tag key=value ...` headers used by the table, rule, spec and key files.

use crate::error::{parse_err, Result};

/// Splits a header line into its `key=value` fields, checking the leading tag.
pub(crate) fn parse_header<'a>(line: &'a str, tag: &str, line_no: usize) -> Result<Vec<(&'a str, &'a str)>> {
    let mut parts = line.split(' ');
    if parts.next() != Some(tag) {
        return Err(parse_err(line_no, format!("expected header starting with `{tag}`")));
    }
    parts
        .filter(|p| !p.is_empty())
        .map(|p| {
            p.split_once('=')
                .ok_or_else(|| parse_err(line_no, format!("field `{p}` is not key=value")))
        })
        .collect()
}

pub(crate) fn field<'a>(fields: &[(&'a str, &'a str)], key: &str) -> Option<&'a str> {
    fields.iter().find(|(k, _)| *k == key).map(|(_, v)| *v)
}

pub(crate) fn required<'a>(fields: &[(&'a str, &'a str)], key: &str, line_no: usize) -> Result<&'a str> {
    field(fields, key).ok_or_else(|| parse_err(line_no, format!("missing `{key}=`")))
}

pub(crate) fn number(value: &str, key: &str, line_no: usize) -> Result<usize> {
    value
        .parse()
        .map_err(|_| parse_err(line_no, format!("`{key}` must be a non-negative integer")))
}

/// Non-empty, non-comment (`#`) lines with their 1-based line numbers.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end_matches('\r')))
        .filter(|(_, l)| !l.trim().is_empty() && !l.starts_with('#'))
}

/// Tab-separated columns of an entry line, checked for the expected count.
pub(crate) fn columns(line: &str, expected: usize, line_no: usize) -> Result<Vec<&str>> {
    let cols: Vec<&str> = line.split('\t').collect();
    if cols.len() != expected {
        return Err(parse_err(
            line_no,
            format!("expected {expected} tab-separated columns, found {}", cols.len()),
        ));
    }
    Ok(cols)
}

pub(crate) fn single_symbol(token: &str, line_no: usize) -> Result<char> {
    let mut chars = token.chars();
    match (chars.next(), chars.next()) {
        (Some(c), None) => Ok(c),
        _ => Err(parse_err(line_no, format!("`{token}` is not a single symbol"))),
    }
}
