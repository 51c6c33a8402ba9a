//! Textual encodings shared by all subcommands: integer lists, field
//! elements (decimal residue for prime fields, bracketed coefficient
//! lists for extensions), and polynomials as lowest-degree-first
//! coefficient lists.

use defdatum::algebra::{Field, FqElement, Polynomial};

pub fn parse_i64_list(text: &str) -> Result<Vec<i64>, String> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse::<i64>()
                .map_err(|_| format!("not an integer: {t:?}"))
        })
        .collect()
}

pub fn parse_u64_list(text: &str) -> Result<Vec<u64>, String> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse::<u64>()
                .map_err(|_| format!("not a nonnegative integer: {t:?}"))
        })
        .collect()
}

/// Split on commas that are not inside brackets, so extension elements
/// like `[2,0,1]` survive.
fn split_top_level(text: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut current = String::new();
    for c in text.chars() {
        match c {
            '[' => {
                depth += 1;
                current.push(c);
            }
            ']' => {
                depth = depth.saturating_sub(1);
                current.push(c);
            }
            ',' if depth == 0 => {
                out.push(current.trim().to_string());
                current = String::new();
            }
            _ => current.push(c),
        }
    }
    if !current.trim().is_empty() || !out.is_empty() {
        out.push(current.trim().to_string());
    }
    out
}

pub fn parse_element(field: &Field, text: &str) -> Result<FqElement, String> {
    let t = text.trim();
    if let Some(inner) = t.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
        let coeffs = parse_u64_list(inner)?;
        field.from_coeffs(&coeffs).map_err(|e| e.to_string())
    } else {
        let value: i64 = t
            .parse()
            .map_err(|_| format!("not a field element: {t:?}"))?;
        Ok(field.from_int(value))
    }
}

pub fn parse_elements(field: &Field, text: &str) -> Result<Vec<FqElement>, String> {
    split_top_level(text)
        .iter()
        .map(|t| parse_element(field, t))
        .collect()
}

/// Coefficient list, lowest degree first.
pub fn parse_poly(field: &Field, text: &str) -> Result<Polynomial, String> {
    let coeffs = parse_elements(field, text)?;
    Ok(Polynomial::new(field.clone(), coeffs))
}
