use polyalg::report::{
    format_sig, DiagramReport, Sig, SpectrumReport, StructureReport, SystemDescriptor, VerificationReport,
};
use serde::Serialize;

use crate::Format;

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serialises");
    s.push('\n');
    s
}

fn csv<I, R>(header: &[&str], rows: I) -> String
where
    I: IntoIterator<Item = R>,
    R: IntoIterator<Item = String>,
{
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for row in rows {
        w.write_record(row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
}

fn sig(x: &Sig) -> String {
    format_sig(x.0)
}

fn opt_sig(x: &Option<Sig>) -> String {
    x.as_ref().map(sig).unwrap_or_default()
}

fn heading(sys: &SystemDescriptor) -> String {
    let kind = serde_json::to_value(sys.kind).expect("kind serialises");
    let mut s = format!("system {} l1={} l2={}", kind.as_str().unwrap_or("?"), sys.l1, sys.l2);
    if let Some(k) = &sys.kappa {
        s.push_str(&format!(" kappa={k}"));
    }
    if let Some(r) = &sys.s_squared {
        s.push_str(&format!(" s=sqrt({r})"));
    }
    s
}

/// Left-aligned columns separated by two spaces.
fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        let mut out = String::new();
        for (i, (cell, w)) in cells.iter().zip(&widths).enumerate() {
            if i + 1 == cells.len() {
                out.push_str(cell);
            } else {
                out.push_str(&format!("{cell:<w$}  ", w = *w));
            }
        }
        out.trim_end().to_string() + "\n"
    };
    let mut out = line(header.to_vec());
    for row in rows {
        out.push_str(&line(row.iter().map(String::as_str).collect()));
    }
    out
}

pub fn structure(r: &StructureReport, format: Format) -> String {
    match format {
        Format::Json => json(r),
        Format::Csv => csv(
            &["m_power", "e_power", "coeff", "value"],
            r.commutator_terms
                .iter()
                .map(|t| vec![t.m_power.to_string(), t.e_power.to_string(), t.coeff.clone(), sig(&t.value)]),
        ),
        Format::Table => {
            let mut out = heading(&r.system) + "\n\n";
            out.push_str(&format!("phi = {}\n\n", r.phi));
            let rows: Vec<Vec<String>> = r.factors.iter().map(|f| vec![f.factor.clone(), f.role.clone()]).collect();
            out.push_str(&table(&["factor", "role"], &rows));
            out.push_str(&format!("\nP(m;E) = {}\n", r.commutator));
            out.push_str(&format!("deg_m = {} (expected {})\n\n", r.deg_m, r.expected_order));
            out.push_str(&format!("C(E) = {}\n", r.casimir));
            for a in &r.alphas {
                out.push_str(&format!("alpha_{}(E) = {}\n", a.power, a.poly));
            }
            out
        }
    }
}

fn contributors(r: &polyalg::report::LevelEntry) -> String {
    r.contributors
        .iter()
        .map(|c| format!("{}:{}", c.family, c.n))
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn spectrum(r: &SpectrumReport, format: Format) -> String {
    match format {
        Format::Json => json(r),
        Format::Csv => csv(
            &["energy", "energy_exact", "degeneracy", "contributors"],
            r.levels
                .iter()
                .map(|l| vec![sig(&l.energy), l.energy_exact.clone(), l.degeneracy.to_string(), contributors(l)]),
        ),
        Format::Table => {
            let mut out = format!("{} emax={}\n\n", heading(&r.system), r.emax);
            let fams: Vec<Vec<String>> = r
                .families
                .iter()
                .map(|f| {
                    vec![
                        f.index.to_string(),
                        f.label.clone().unwrap_or_default(),
                        sig(&f.base),
                        f.base_exact.clone(),
                        f.step_exact.clone(),
                    ]
                })
                .collect();
            out.push_str(&table(&["family", "label", "base", "base_exact", "step"], &fams));
            out.push('\n');
            let levels: Vec<Vec<String>> = r
                .levels
                .iter()
                .map(|l| vec![sig(&l.energy), l.energy_exact.clone(), l.degeneracy.to_string(), contributors(l)])
                .collect();
            out.push_str(&table(&["energy", "exact", "degeneracy", "family:n"], &levels));
            out
        }
    }
}

pub fn diagram(r: &DiagramReport, format: Format) -> String {
    let rows = || {
        r.rows
            .iter()
            .map(|d| vec![d.n1.to_string(), d.n2.to_string(), sig(&d.energy), d.family_label.clone()])
    };
    match format {
        Format::Json => json(r),
        Format::Csv => csv(&["n1", "n2", "energy", "family_label"], rows()),
        Format::Table => {
            let mut out = format!("{} emax={}\n\n", heading(&r.system), r.emax);
            out.push_str(&table(&["n1", "n2", "energy", "family_label"], &rows().collect::<Vec<_>>()));
            out
        }
    }
}

pub fn verification(r: &VerificationReport, format: Format) -> String {
    let rows = || {
        r.checks.iter().map(|c| {
            let status = serde_json::to_value(c.status).expect("status serialises");
            vec![
                c.name.clone(),
                status.as_str().unwrap_or("?").to_string(),
                opt_sig(&c.max_residual),
                c.detail.clone(),
            ]
        })
    };
    match format {
        Format::Json => json(r),
        Format::Csv => csv(&["name", "status", "max_residual", "detail"], rows()),
        Format::Table => {
            let mut out = heading(&r.system) + "\n\n";
            out.push_str(&table(&["check", "status", "max_residual", "detail"], &rows().collect::<Vec<_>>()));
            out.push_str(&format!("\noverall: {}\n", if r.pass { "pass" } else { "fail" }));
            out
        }
    }
}
