//! Plain-text rendering with aligned columns.

use charkit_core::admissible::ResolutionTerm;
use charkit_core::charlib::Character;
use charkit_core::series::MSeries;
use charkit_core::suites::SuiteReport;

fn table(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(|r| r.len()).max().unwrap_or(0);
    let mut widths = vec![0usize; cols];
    for row in rows {
        for (i, cell) in row.iter().enumerate() {
            widths[i] = widths[i].max(cell.len());
        }
    }
    let mut out = String::new();
    for row in rows {
        let mut line = String::new();
        for (i, cell) in row.iter().enumerate() {
            if i > 0 {
                line.push_str("  ");
            }
            line.push_str(&format!("{:>w$}", cell, w = widths[i]));
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out.pop();
    out
}

pub fn series_text(s: &MSeries) -> String {
    let v = s.validity();
    let mut rows = vec![];
    let mut header = vec!["q".to_string()];
    for i in 0..s.arity() {
        header.push(format!("x{}", i + 1));
    }
    header.push("coeff".to_string());
    rows.push(header);
    for (m, c) in s.terms() {
        let mut row = vec![m.q.to_string()];
        for e in &m.xs {
            row.push(e.to_string());
        }
        row.push(c.to_string());
        rows.push(row);
    }
    let windows = v
        .windows
        .iter()
        .map(|w| format!("[{}, {}]", w.lo, w.hi))
        .collect::<Vec<_>>()
        .join(" ");
    format!(
        "valid on q in [{}, {}], windows {}\n{}",
        v.q_min,
        v.q_max,
        windows,
        table(&rows)
    )
}

pub fn character_text(chr: &Character) -> String {
    let ctx = chr
        .ctx
        .as_ref()
        .map(|c| format!(", k = {}", c.k()))
        .unwrap_or_default();
    format!(
        "{} character{}; prefactor q^{} x^{}; block ({}, {})\n{}",
        chr.kind.name(),
        ctx,
        chr.h(),
        chr.j(),
        chr.block().0,
        chr.block().1,
        series_text(chr.body())
    )
}

pub fn suite_text(report: &SuiteReport) -> String {
    let mut out = String::new();
    for c in &report.checks {
        out.push_str(if c.pass { "PASS  " } else { "FAIL  " });
        out.push_str(&c.name);
        if !c.detail.is_empty() {
            out.push_str(&format!("  ({})", c.detail));
        }
        out.push('\n');
    }
    out.push_str(&format!(
        "suite {}: {}",
        report.suite,
        if report.pass() { "PASS" } else { "FAIL" }
    ));
    out
}

pub fn terms_text(terms: &[ResolutionTerm]) -> String {
    let mut rows = vec![vec![
        "sign".to_string(),
        "h".to_string(),
        "j".to_string(),
        "flow".to_string(),
    ]];
    for t in terms {
        rows.push(vec![
            if t.sign > 0 { "+".to_string() } else { "-".to_string() },
            t.params.h.to_string(),
            t.params.j.to_string(),
            t.flow.to_string(),
        ]);
    }
    table(&rows)
}
