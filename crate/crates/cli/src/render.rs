//! Text projections of the JSON documents.

use std::fmt::Write;

use collapse_core::criteria::{GroupReport, Verdict};
use collapse_core::nichols::{GradedDims, SeriesStatus};

use crate::{ClassRow, TypedRow};

fn list<T: ToString>(items: &[T]) -> String {
    let parts: Vec<String> = items.iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(","))
}

pub fn classes(name: &str, order: usize, rows: &[ClassRow]) -> String {
    let mut s = format!("{name} (order {order}, {} classes)\n", rows.len());
    let _ = writeln!(
        s,
        "{:<6} {:>7} {:>5} {:<5} {:<8} {:<18} representative",
        "class", "size", "ord", "real", "inverse", "quasireal"
    );
    for r in rows {
        let _ = writeln!(
            s,
            "{:<6} {:>7} {:>5} {:<5} {:<8} {:<18} {}",
            r.name,
            r.size,
            r.element_order,
            if r.real { "yes" } else { "no" },
            r.inverse_class,
            list(&r.quasireal_exponents),
            r.representative
        );
    }
    s
}

fn verdict(v: Verdict) -> &'static str {
    match v {
        Verdict::Collapses => "collapses",
        Verdict::CollapsesDim1 => "collapses (dim 1)",
        Verdict::Unknown => "unknown",
    }
}

pub fn analyze_summary(report: &GroupReport) -> String {
    let count = |v: Verdict| report.classes.iter().filter(|c| c.verdict == v).count();
    format!(
        "{}: {} classes, {} collapse, {} collapse for linear characters, {} unknown; summary {:?}\n",
        report.group.name,
        report.classes.len(),
        count(Verdict::Collapses),
        count(Verdict::CollapsesDim1),
        count(Verdict::Unknown),
        report.summary
    )
}

pub fn analyze(report: &GroupReport) -> String {
    let g = &report.group;
    let mut s = format!("{} (degree {}, order {})\n", g.name, g.degree, g.order);
    for c in &report.classes {
        let _ = writeln!(
            s,
            "{:<6} size {:<6} order {:<3} {:<18} {}",
            c.name,
            c.size,
            c.element_order,
            verdict(c.verdict),
            c.reasons.join(" ")
        );
        if let Some(w) = &c.type_d {
            let _ = writeln!(
                s,
                "       r = {}  s = {}",
                w.r_element.as_deref().unwrap_or("?"),
                w.s_element.as_deref().unwrap_or("?")
            );
        }
        for p in &c.hilbert_probes {
            let _ = writeln!(
                s,
                "       character {}: {}",
                p.character,
                series(&p.series).trim_end()
            );
        }
        if !c.type_d_complete {
            let _ = writeln!(s, "       {} pairs unresolved", c.unresolved_pairs);
        }
    }
    s.push_str(&analyze_summary(report));
    for c in &report.caveats {
        let _ = writeln!(s, "note: {c}");
    }
    s
}

pub fn series(g: &GradedDims) -> String {
    match (g.status, g.total, &g.truncation) {
        (SeriesStatus::Complete, Some(t), _) => {
            format!("dims {} complete, total {t}\n", list(&g.dims))
        }
        (_, _, Some(tr)) => format!(
            "dims {} truncated at degree {} ({})\n",
            list(&g.dims),
            tr.degree,
            tr.reason
        ),
        _ => format!("dims {} truncated\n", list(&g.dims)),
    }
}

pub fn typed(rows: &[TypedRow]) -> String {
    let mut s = String::new();
    for r in rows {
        let state = if r.complete {
            "complete".to_string()
        } else {
            format!("incomplete, {} pairs unresolved", r.unresolved_pairs)
        };
        match &r.witness {
            None => {
                let _ = writeln!(s, "{}: none ({state})", r.class);
            }
            Some(w) => {
                let _ = writeln!(
                    s,
                    "{}: r = {} s = {} R = {} S = {} ({state})",
                    r.class,
                    w.r_element.as_deref().unwrap_or("?"),
                    w.s_element.as_deref().unwrap_or("?"),
                    list(&w.components[0]),
                    list(&w.components[1])
                );
            }
        }
    }
    s
}
