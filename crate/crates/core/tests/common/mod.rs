#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};
use std::path::PathBuf;

use dtdgraph::builder::{build_graph, parse_annotations, BuildOptions, BuildOutput};
use dtdgraph::dtd::{
    expand_parameter_entities, parse_dtd, ContentModel, ContentNode, DtdAst, Occurrence,
};
use dtdgraph::graph::Provenance;
use proptest::prelude::*;
use serde_json::Value;

pub fn corpus_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("corpus")
        .join(name)
}

pub fn corpus_text() -> String {
    std::fs::read_to_string(corpus_path("amv.dtd")).unwrap()
}

pub fn corpus_links() -> String {
    std::fs::read_to_string(corpus_path("amv.links")).unwrap()
}

pub fn build_text(src: &str, opts: &BuildOptions) -> BuildOutput {
    let ast = expand_parameter_entities(&parse_dtd(src).unwrap(), None).unwrap();
    build_graph(&ast, opts)
}

pub fn build_corpus(collapse: &[&str]) -> BuildOutput {
    let text = corpus_text();
    build_text(
        &text,
        &BuildOptions {
            annotations: parse_annotations(&corpus_links()).unwrap(),
            collapse: collapse.iter().map(|s| s.to_string()).collect(),
            provenance: Provenance::of_bytes("amv.dtd", text.as_bytes()),
            ..BuildOptions::default()
        },
    )
}

/// Counts by plain text scanning, independent of the tokenizer: element
/// declarations, attribute-list declarations and attribute definitions (one
/// default declaration each: `#REQUIRED`, `#IMPLIED` or a quoted literal).
pub fn scan_counts(text: &str) -> (usize, usize, usize) {
    let mut clean = String::new();
    let mut rest = text;
    while let Some(i) = rest.find("<!--") {
        clean.push_str(&rest[..i]);
        rest = &rest[i..][rest[i..].find("-->").unwrap() + 3..];
    }
    clean.push_str(rest);

    let elements = clean.matches("<!ELEMENT").count();
    let mut lists = 0;
    let mut attributes = 0;
    for chunk in clean.split("<!ATTLIST").skip(1) {
        lists += 1;
        let body = &chunk[..chunk.find('>').unwrap()];
        attributes += body.matches("#REQUIRED").count() + body.matches("#IMPLIED").count();
        attributes += body.matches('\'').count() / 2 + body.matches('"').count() / 2;
    }
    (elements, lists, attributes)
}

/// Node ids reachable over containment edges, computed on the JSON form.
pub fn json_reachable(doc: &Value, starts: &[&str], skip_from: Option<&str>) -> BTreeSet<String> {
    let mut children: BTreeMap<&str, Vec<&str>> = BTreeMap::new();
    for e in doc["edges"].as_array().unwrap() {
        if e["kind"]["type"] == "containment" {
            children
                .entry(e["from"].as_str().unwrap())
                .or_default()
                .push(e["to"].as_str().unwrap());
        }
    }
    let mut seen = BTreeSet::new();
    let mut todo: Vec<&str> = starts.to_vec();
    while let Some(n) = todo.pop() {
        if !seen.insert(n.to_string()) || Some(n) == skip_from {
            continue;
        }
        todo.extend(children.get(n).into_iter().flatten());
    }
    seen
}

pub fn json_node_ids(doc: &Value) -> BTreeSet<String> {
    doc["nodes"]
        .as_array()
        .unwrap()
        .iter()
        .map(|n| n["id"].as_str().unwrap().to_string())
        .collect()
}

/// Occurrences every content particle should carry on its incoming edge.
/// Single-child groups without an operator vanish into their child.
pub fn expected_occurrences(ast: &DtdAst) -> BTreeMap<Occurrence, usize> {
    fn walk(m: &ContentModel, out: &mut BTreeMap<Occurrence, usize>) {
        match &m.node {
            ContentNode::Empty => {}
            ContentNode::Seq(c) | ContentNode::Alt(c) => {
                if !(c.len() == 1 && m.occurrence == Occurrence::ExactlyOne) {
                    *out.entry(m.occurrence).or_default() += 1;
                }
                for child in c {
                    walk(child, out);
                }
            }
            _ => *out.entry(m.occurrence).or_default() += 1,
        }
    }
    let mut out = BTreeMap::new();
    for (_, content, _) in ast.elements() {
        walk(content, &mut out);
    }
    out
}

// Random DTD text, generated from the grammar with varied spacing.

const POOL: [&str; 8] = ["a", "b", "c-d", "e.f", "g_h", "été", "k1", "liste-x"];

fn ws() -> impl Strategy<Value = &'static str> {
    prop_oneof![Just(""), Just(" "), Just("\n  "), Just("\t")]
}

fn occ() -> impl Strategy<Value = &'static str> {
    prop_oneof![Just(""), Just("?"), Just("*"), Just("+")]
}

fn particle(depth: u32) -> BoxedStrategy<String> {
    let leaf = (prop::sample::select(&POOL[..]), occ())
        .prop_map(|(n, o)| format!("{n}{o}"))
        .boxed();
    if depth == 0 {
        return leaf;
    }
    let group = (
        prop::collection::vec(particle(depth - 1), 1..=5),
        any::<bool>(),
        occ(),
        ws(),
        ws(),
    )
        .prop_map(|(items, alt, o, w1, w2)| {
            let sep = if alt {
                format!("{w1}|{w2}")
            } else {
                format!("{w1},{w2}")
            };
            format!("({w1}{}{w2}){o}", items.join(&sep))
        })
        .boxed();
    // Groups thin out with depth so trees stay small on average.
    prop_oneof![3 => leaf, depth => group].boxed()
}

fn content() -> impl Strategy<Value = String> {
    prop_oneof![
        1 => Just("EMPTY".to_string()),
        1 => Just("ANY".to_string()),
        1 => Just("(#PCDATA)".to_string()),
        1 => prop::collection::vec(prop::sample::select(&POOL[..]), 1..=4)
            .prop_map(|ns| format!("(#PCDATA | {})*", ns.join(" | "))),
        6 => (
            prop::collection::vec(particle(5), 1..=5),
            any::<bool>(),
            occ(),
        )
            .prop_map(|(items, alt, o)| {
                format!("({}){o}", items.join(if alt { " | " } else { ", " }))
            }),
    ]
}

fn attribute() -> impl Strategy<Value = String> {
    let kind = prop_oneof![
        Just("CDATA"),
        Just("ID"),
        Just("IDREF"),
        Just("IDREFS"),
        Just("NMTOKEN"),
        Just("(x|y|z)"),
    ];
    let default = prop_oneof![
        Just("#REQUIRED"),
        Just("#IMPLIED"),
        Just("'x'"),
        Just("#FIXED \"y\""),
    ];
    ("[a-z]{1,3}", kind, default).prop_map(|(n, k, d)| format!("{n} {k} {d}"))
}

/// A whole DTD: distinct element names from the pool, each with a content
/// model of nesting depth at most 6, and some attribute lists.
pub fn random_dtd() -> impl Strategy<Value = String> {
    (
        prop::sample::subsequence(&POOL[..], 1..=POOL.len()),
        prop::collection::vec(content(), POOL.len()),
        prop::collection::vec(prop::collection::vec(attribute(), 0..3), POOL.len()),
        ws(),
    )
        .prop_map(|(names, contents, attrs, w)| {
            let mut out = String::new();
            for (i, name) in names.iter().enumerate() {
                out.push_str(&format!("<!ELEMENT {name}{w} {}>\n", contents[i]));
                if !attrs[i].is_empty() {
                    out.push_str(&format!("<!ATTLIST {name}\n  {}>\n", attrs[i].join("\n  ")));
                }
            }
            out
        })
}

pub const FIGURES: [&str; 5] = ["fig3", "fig4", "fig6", "fig7", "fig9"];

pub fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests")
        .join("golden")
}

/// DOT for a figure input, built the same way the command line does.
pub fn figure_dot(name: &str) -> String {
    let file = format!("{name}.dtd");
    let bytes = std::fs::read(golden_dir().join(&file)).unwrap();
    let out = build_text(
        std::str::from_utf8(&bytes).unwrap(),
        &BuildOptions {
            provenance: Provenance::of_bytes(file, &bytes),
            ..BuildOptions::default()
        },
    );
    dtdgraph::dot::emit_dot(&out.graph, &dtdgraph::dot::RenderStyle::default()).unwrap()
}

/// Compares a figure's DOT with its golden file. With `DTDGRAPH_BLESS=1`
/// the golden file is rewritten instead.
pub fn check_golden(name: &str) -> Result<String, String> {
    let dot = figure_dot(name);
    let path = golden_dir().join(format!("{name}.dot"));
    if std::env::var_os("DTDGRAPH_BLESS").is_some() {
        std::fs::write(&path, &dot).unwrap();
        return Ok(dot);
    }
    let golden = std::fs::read_to_string(&path)
        .map_err(|e| format!("{}: {e} (run with DTDGRAPH_BLESS=1)", path.display()))?;
    if golden == dot {
        Ok(dot)
    } else {
        Err(format!(
            "{name}: output differs from {}:\n{dot}",
            path.display()
        ))
    }
}
