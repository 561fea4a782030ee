use std::fmt::Write as _;

use pga_core::engine::{Analysis, AutReport};
use serde::Serialize;

#[derive(Serialize)]
pub struct JsonClass<'a> {
    pub members: &'a [String],
    pub weight: usize,
    pub element_order: usize,
    pub men_type: &'static str,
}

#[derive(Serialize)]
pub struct JsonQuotient {
    pub nodes: usize,
    pub edges: usize,
}

#[derive(Serialize)]
pub struct JsonVerification {
    pub status: &'static str,
    pub detail: String,
}

#[derive(Serialize)]
pub struct JsonReport<'a> {
    pub spec: &'a str,
    pub group_order: usize,
    pub vertex_count: usize,
    pub classes: Vec<JsonClass<'a>>,
    pub quotient: JsonQuotient,
    pub expression: String,
    pub order_decimal: String,
    pub method: &'static str,
    pub verification: JsonVerification,
}

#[derive(Serialize)]
#[serde(untagged)]
pub enum JsonEntry<'a> {
    Report(JsonReport<'a>),
    Error { spec: &'a str, error: &'a str },
}

pub fn json_report(r: &AutReport) -> JsonReport<'_> {
    JsonReport {
        spec: &r.spec,
        group_order: r.group_order,
        vertex_count: r.vertex_count,
        classes: r
            .classes
            .iter()
            .map(|c| JsonClass {
                members: &c.members,
                weight: c.weight,
                element_order: c.element_order,
                men_type: c.men_type.as_str(),
            })
            .collect(),
        quotient: JsonQuotient {
            nodes: r.quotient_nodes,
            edges: r.quotient_edges,
        },
        expression: r.expression_string(),
        order_decimal: r.order.to_string(),
        method: r.method.as_str(),
        verification: JsonVerification {
            status: r.verification.status(),
            detail: r.verification.detail(),
        },
    }
}

pub fn text_report(r: &AutReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "group         {}", r.spec);
    let _ = writeln!(out, "group order   {}", r.group_order);
    let _ = writeln!(out, "vertices      {}", r.vertex_count);
    let _ = writeln!(out, "classes       {}", r.classes.len());
    let _ = writeln!(
        out,
        "  {:>4}  {:>6}  {:>5}  {:<4}  members",
        "#", "weight", "order", "type"
    );
    for (i, c) in r.classes.iter().enumerate() {
        let _ = writeln!(
            out,
            "  {:>4}  {:>6}  {:>5}  {:<4}  {}",
            i,
            c.weight,
            c.element_order,
            c.men_type.as_str(),
            c.members.join(", ")
        );
    }
    let _ = writeln!(
        out,
        "quotient      {} nodes, {} edges",
        r.quotient_nodes, r.quotient_edges
    );
    let _ = writeln!(out, "quotient aut  {}", r.quotient_aut.normalize());
    let _ = writeln!(out, "expression    {}", r.expression_string());
    let _ = writeln!(out, "order         {}", r.order);
    let _ = writeln!(out, "method        {}", r.method.as_str());
    let _ = writeln!(
        out,
        "verification  {} ({})",
        r.verification.status(),
        r.verification.detail()
    );
    out
}

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for ch in s.chars() {
        match ch {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

pub fn power_graph_dot(a: &Analysis) -> String {
    let g = &a.group;
    let pg = &a.graph;
    let mut out = String::from("graph power_graph {\n");
    let _ = writeln!(
        out,
        "  label={};",
        quote(&format!("P({})", g.description()))
    );
    for v in 0..pg.vertex_count() {
        let x = pg.element(v);
        let label = format!("{}\norder {}", g.label(x), g.element_order(x));
        let _ = writeln!(out, "  v{v} [label={}];", quote(&label));
    }
    for (u, v) in pg.edges() {
        let _ = writeln!(out, "  v{u} -- v{v};");
    }
    out.push_str("}\n");
    out
}

pub fn quotient_dot(a: &Analysis) -> String {
    let q = &a.quotient;
    let orders = a.class_orders();
    let mut out = String::from("graph quotient {\n");
    let _ = writeln!(
        out,
        "  label={};",
        quote(&format!("quotient of P({})", a.group.description()))
    );
    for (c, order) in orders.iter().enumerate() {
        let label = format!("weight={}, order={}", q.weight(c), order);
        let _ = writeln!(out, "  c{c} [label={}];", quote(&label));
    }
    for (u, v) in q.edges() {
        let _ = writeln!(out, "  c{u} -- c{v};");
    }
    out.push_str("}\n");
    out
}

/// File-name stem for a spec: alphanumerics kept, runs of anything else
/// collapsed to `_`.
pub fn file_stem(spec: &str) -> String {
    let mut out = String::new();
    for ch in spec.chars() {
        if ch.is_ascii_alphanumeric() {
            out.push(ch);
        } else if !out.ends_with('_') {
            out.push('_');
        }
    }
    out.trim_matches('_').to_string()
}
