//! Plain-text rendering helpers.

use ess_core::modz::DecompositionReport;

/// Left-aligned columns separated by two spaces, with a rule under the header.
pub fn table(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        let mut out = String::new();
        for (i, (c, w)) in cells.iter().zip(&widths).enumerate() {
            if i > 0 {
                out.push_str("  ");
            }
            out.push_str(c);
            if i + 1 < cells.len() {
                out.push_str(&" ".repeat(w - c.chars().count()));
            }
        }
        out.push('\n');
        out
    };
    let mut out = line(headers.to_vec());
    out.push_str(&line(widths.iter().map(|&w| "-".repeat(w)).collect::<Vec<_>>().iter().map(String::as_str).collect()));
    for row in rows {
        out.push_str(&line(row.iter().map(String::as_str).collect()));
    }
    out
}

fn power(base: String, k: usize) -> String {
    if k == 1 {
        base
    } else {
        format!("({base})^{k}")
    }
}

/// `Λ^r ⊕ Λ/(t - 1)^e ⊕ ...` for a decomposition over `Λ = k[t, t^-1]`.
pub fn decomposition(d: &DecompositionReport) -> String {
    let mut parts = Vec::new();
    if d.free_rank > 0 {
        parts.push(if d.free_rank == 1 { "Λ".to_string() } else { format!("Λ^{}", d.free_rank) });
    }
    let mut blocks = d.t_minus_1_blocks.clone();
    blocks.dedup();
    for e in blocks {
        let k = d.t_minus_1_blocks.iter().filter(|&&b| b == e).count();
        let base = if e == 1 { "Λ/(t - 1)".to_string() } else { format!("Λ/(t - 1)^{e}") };
        parts.push(power(base, k));
    }
    for o in &d.other_primary {
        let base = if o.exp == 1 { format!("Λ/({})", o.poly) } else { format!("Λ/({})^{}", o.poly, o.exp) };
        parts.push(power(base, o.mult));
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" ⊕ ")
    }
}

pub fn yes_no(b: bool) -> String {
    if b { "yes" } else { "no" }.into()
}

pub fn list<T: ToString>(v: &[T]) -> String {
    format!("({})", v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "))
}
