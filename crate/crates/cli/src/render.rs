//! Paired text and JSON output. Every command fills both sides; the
//! `--format` flag picks one when printing.

use std::time::Duration;

use clap::ValueEnum;
use resq_core::completion::Quantale;
use resq_core::relrep::{dump_json, dump_text, HatReport, HatWitness, Interpretation};
use resq_core::search::SearchOutcome;
use resq_core::verifier::{VerificationReport, Witness};
use resq_core::FiniteResiduatedSemigroup;
use serde_json::{json, Value};

use crate::Done;

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

pub struct Out {
    text: String,
    json: Value,
}

impl Out {
    pub fn new(json: Value) -> Self {
        Out { text: String::new(), json }
    }

    pub fn line(&mut self, s: String) {
        self.text.push_str(&s);
        self.text.push('\n');
    }

    pub fn raw(&mut self, s: String) {
        self.text.push_str(&s);
        if !s.ends_with('\n') {
            self.text.push('\n');
        }
    }

    pub fn table(&mut self, name: &str, rows: &[Vec<usize>]) {
        self.line(format!("{name}:"));
        for row in rows {
            let cells: Vec<String> = row.iter().map(usize::to_string).collect();
            self.line(format!("  {}", cells.join(" ")));
        }
    }

    pub fn insert(&mut self, key: &str, v: Value) {
        if let Value::Object(map) = &mut self.json {
            map.insert(key.to_string(), v);
        }
    }

    /// Puts `head`'s text first and merges its JSON keys.
    pub fn prepend(&mut self, head: Out) {
        self.text = head.text + &self.text;
        if let Value::Object(map) = head.json {
            for (k, v) in map {
                self.insert(&k, v);
            }
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.text.clone(),
            Format::Json => format!("{:#}\n", self.json),
        }
    }
}

pub fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn witness_json(w: &Witness, alg: &FiniteResiduatedSemigroup, interp: &Interpretation) -> Value {
    json!({
        "a": alg.name(w.a),
        "b": alg.name(w.b),
        "point": w.point.map(|(x, y)| [&interp.base[x], &interp.base[y]]),
    })
}

pub fn report_json(r: &VerificationReport, alg: &FiniteResiduatedSemigroup, interp: &Interpretation) -> Value {
    let conditions: Vec<Value> = r
        .results()
        .iter()
        .map(|(c, w)| match w {
            None => json!({ "condition": c.name(), "pass": true }),
            Some(w) => json!({ "condition": c.name(), "pass": false, "witness": witness_json(w, alg, interp) }),
        })
        .collect();
    json!({ "all_pass": r.all_pass(), "conditions": conditions })
}

pub fn report_text(out: &mut Out, r: &VerificationReport, alg: &FiniteResiduatedSemigroup, interp: &Interpretation) {
    for (c, w) in r.results() {
        match w {
            None => out.line(format!("{c}: pass")),
            Some(w) => {
                let mut s = format!("{c}: fail at ({}, {})", alg.name(w.a), alg.name(w.b));
                if let Some((x, y)) = w.point {
                    s.push_str(&format!(" point ({}, {})", interp.base[x], interp.base[y]));
                }
                out.line(s);
            }
        }
    }
}

fn hat_clauses(h: &HatReport) -> [(&'static str, &Option<HatWitness>); 4] {
    [
        ("monotone", &h.monotone),
        ("order-reflection", &h.order_reflection),
        ("composition", &h.composition),
        ("join-as-union", &h.join_as_union),
    ]
}

pub fn hat_json(h: &HatReport, q: &Quantale) -> Value {
    let clauses: Vec<Value> = hat_clauses(h)
        .iter()
        .map(|(name, w)| match w {
            None => json!({ "clause": name, "pass": true }),
            Some(w) => json!({
                "clause": name,
                "pass": false,
                "witness": {
                    "a": q.label(w.a),
                    "b": q.label(w.b),
                    "point": w.point.map(|(x, y)| [q.label(x), q.label(y)]),
                },
            }),
        })
        .collect();
    json!({ "isomorphism": h.is_isomorphism(), "clauses": clauses })
}

pub fn hat_text(out: &mut Out, h: &HatReport, q: &Quantale) {
    for (name, w) in hat_clauses(h) {
        match w {
            None => out.line(format!("hat {name}: pass")),
            Some(w) => {
                let mut s = format!("hat {name}: fail at ({}, {})", q.label(w.a), q.label(w.b));
                if let Some((x, y)) = w.point {
                    s.push_str(&format!(" point ({}, {})", q.label(x), q.label(y)));
                }
                out.line(s);
            }
        }
    }
}

/// Found or exhausted, with node counts per base size.
pub fn outcome(o: &SearchOutcome, nodes: &[u64], elapsed: Option<Duration>) -> Done {
    let nodes_text: Vec<String> = nodes.iter().map(u64::to_string).collect();
    let (mut out, pass) = match o {
        SearchOutcome::Found(interp) => {
            let s = interp.to_structure();
            let mut out = Out::new(json!({
                "verdict": "found",
                "base": interp.base_size(),
                "representation": dump_json(&s),
                "nodes": nodes,
            }));
            out.line(format!("found at base {}", interp.base_size()));
            out.raw(dump_text(&s));
            (out, true)
        }
        SearchOutcome::Exhausted { max_base } => {
            let mut out = Out::new(json!({ "verdict": "exhausted", "max_base": max_base, "nodes": nodes }));
            out.line(format!("exhausted up to base {max_base}"));
            (out, false)
        }
    };
    out.line(format!("nodes: {}", nodes_text.join(" ")));
    if let Some(t) = elapsed {
        out.line(format!("elapsed: {:.3}s", t.as_secs_f64()));
        out.insert("elapsed_secs", json!(t.as_secs_f64()));
    }
    Done { out, pass }
}
