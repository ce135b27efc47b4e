//! Plain-text tables.

use std::fmt::Write;

use super::{class_label, Check, Job};
use crate::chartab::CharacterTable;
use crate::declaw::{Classification, SequenceClass};
use crate::exactmath::rational::{to_display_string, Rational};
use crate::galois::FiniteGroup;

fn grid(header: &[String], rows: &[Vec<String>]) -> String {
    let n = header.len();
    let mut w: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (k, c) in r.iter().enumerate().take(n) {
            w[k] = w[k].max(c.chars().count());
        }
    }
    let line = |cells: &[String]| -> String {
        let mut s = String::new();
        for (k, c) in cells.iter().enumerate() {
            if k > 0 {
                s.push_str("  ");
            }
            let pad = w[k] - c.chars().count();
            if k + 1 == cells.len() {
                s.push_str(c);
            } else {
                s.push_str(c);
                s.extend(std::iter::repeat_n(' ', pad));
            }
        }
        s.trim_end().to_string() + "\n"
    };
    let mut out = line(header);
    out.push_str(&line(&w.iter().map(|&k| "-".repeat(k)).collect::<Vec<_>>()));
    for r in rows {
        out.push_str(&line(r));
    }
    out
}

pub(super) fn analyze_table(job: &Job) -> String {
    let fam = &job.family;
    let group = job.group();
    let mut s = String::new();
    let _ = writeln!(s, "field      Q[{}]/({})", job.var(), job.field().modulus().to_string_in(job.var()));
    let _ = writeln!(s, "xi         {}", job.field().format_elem(fam.xi(), job.var()));
    let _ = writeln!(s, "F(X)       {}", fam.min_poly().to_string_in("X"));
    let _ = writeln!(s, "group      order {}, {} classes{}", group.order(), group.class_count(), if group.is_abelian() { ", abelian" } else { "" });
    let _ = writeln!(s, "det Gamma  {}", job.field().format_elem(&fam.gamma().det, job.var()));
    s.push('\n');
    let header: Vec<String> = std::iter::once("i".to_string()).chain((0..fam.class_count()).map(class_label)).collect();
    let rows: Vec<Vec<String>> = (0..fam.degree())
        .map(|i| {
            std::iter::once(i.to_string())
                .chain((0..fam.class_count()).map(|j| to_display_string(fam.initial_terms().get(i, j))))
                .collect()
        })
        .collect();
    s.push_str(&grid(&header, &rows));
    s
}

pub(super) fn sequences_table(from: usize, rows: &[(usize, Vec<Rational>)]) -> String {
    let header: Vec<String> = std::iter::once("i".to_string()).chain(rows.iter().map(|(j, _)| class_label(*j))).collect();
    let n = rows.first().map_or(0, |(_, t)| t.len());
    let body: Vec<Vec<String>> = (0..n)
        .map(|k| std::iter::once((from + k).to_string()).chain(rows.iter().map(|(_, t)| to_display_string(&t[k]))).collect())
        .collect();
    grid(&header, &body)
}

pub(super) fn classify_table(c: &Classification, r: usize) -> String {
    let header: Vec<String> = ["p", "residues", "class", "oracle", "note"].iter().map(|s| s.to_string()).collect();
    let rows: Vec<Vec<String>> = c
        .verdicts
        .iter()
        .map(|v| {
            let residues = v
                .residues
                .iter()
                .map(|x| x.map_or("-".to_string(), |x| x.to_string()))
                .collect::<Vec<_>>()
                .join(",");
            let class = match &v.sequence_class {
                Some(SequenceClass::Class(j)) => class_label(*j),
                Some(SequenceClass::Inconsistent) => "inconsistent".into(),
                None => "-".into(),
            };
            let mut note = Vec::new();
            if let Some(reason) = v.skipped {
                note.push(format!("skipped: {}", reason.as_str()));
            }
            if v.agree == Some(false) {
                note.push("DISAGREE".into());
            }
            vec![v.p.to_string(), residues, class, v.oracle.describe(), note.join("; ")]
        })
        .collect();
    let mut s = grid(&header, &rows);
    s.push('\n');
    for j in 0..r {
        let primes: Vec<String> = c.primes_in_class(j).iter().map(u64::to_string).collect();
        let _ = writeln!(s, "{}: {}", class_label(j), primes.join(", "));
    }
    let list = |v: &mut dyn Iterator<Item = u64>| v.map(|p| p.to_string()).collect::<Vec<_>>().join(", ");
    let _ = writeln!(s, "predicted: {}", list(&mut c.report.predicted.iter().copied()));
    if !c.report.unfactored.is_empty() {
        let _ = writeln!(s, "unfactored cofactors: {}", c.report.unfactored.len());
    }
    let _ = writeln!(s, "observed: {}", list(&mut c.report.observed.iter().copied()));
    let _ = writeln!(s, "skipped: {}", list(&mut c.report.skipped.iter().copied()));
    s
}

pub(super) fn chartab_table(t: &CharacterTable, group: &FiniteGroup) -> String {
    let header: Vec<String> = std::iter::once(String::new())
        .chain(group.classes().iter().enumerate().map(|(j, c)| format!("{}({})", class_label(j), c.size())))
        .collect();
    let rows: Vec<Vec<String>> = (0..t.len())
        .map(|psi| {
            std::iter::once(format!("chi{}", psi + 1)).chain((0..group.class_count()).map(|j| t.format_value(psi, j))).collect()
        })
        .collect();
    let mut s = grid(&header, &rows);
    let _ = writeln!(s, "\nz^{} = 1, reduction prime {}", t.exponent(), t.prime());
    s
}

pub(super) fn checks_table(checks: &[Check]) -> String {
    let header: Vec<String> = ["check", "result", "detail"].iter().map(|s| s.to_string()).collect();
    let rows: Vec<Vec<String>> = checks
        .iter()
        .map(|c| {
            let r = if c.skipped { "skip" } else if c.passed { "ok" } else { "FAIL" };
            vec![c.name.clone(), r.to_string(), c.detail.clone()]
        })
        .collect();
    grid(&header, &rows)
}
