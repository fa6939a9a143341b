//! The `dtdgraph` command line.

use std::collections::HashMap;
use std::fs;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Parser, ValueEnum};

use crate::builder::{build_graph, collapse, parse_annotations, BuildOptions};
use crate::diagnostics::{has_errors, sort_diagnostics, Diagnostic, Severity};
use crate::dot::{emit_dot, emit_legend, parse_occurrence, Arrow, RankDir, RenderStyle};
use crate::dtd::{expand_parameter_entities, parse_dtd, DtdError, EntityResolver, Occurrence};
use crate::graph::{from_json, to_json, validate_graph, verify_json, Provenance, SchemaGraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Dot,
    Json,
    Legend,
}

#[derive(Debug, Clone, Parser)]
#[command(
    name = "dtdgraph",
    version,
    about = "Draw an XML DTD as a schema graph (DOT or JSON)"
)]
pub struct Config {
    /// DTD file, or `-` for standard input.
    #[arg(default_value = "-")]
    pub input: String,

    /// Write output here instead of standard output.
    #[arg(short, long, value_name = "PATH")]
    pub output: Option<PathBuf>,

    #[arg(long, value_enum, default_value_t = Format::Dot)]
    pub format: Format,

    /// ID/IDREF link file (`element.attribute -> element` per line).
    #[arg(long, value_name = "PATH")]
    pub annotations: Option<PathBuf>,

    /// Local file for an external parameter entity's system id.
    #[arg(long = "entity-map", value_name = "ID=PATH", value_parser = parse_pair::<PathBuf>)]
    pub entity_map: Vec<(String, PathBuf)>,

    /// Draw this element's content as a cloud. Repeatable.
    #[arg(long, value_name = "ELEMENT")]
    pub collapse: Vec<String>,

    /// Label for the text leaf of an element. Repeatable.
    #[arg(long = "text-hint", value_name = "ELEMENT=LABEL", value_parser = parse_pair::<String>)]
    pub text_hint: Vec<(String, String)>,

    /// Leave out attribute blocks (and with them ref links).
    #[arg(long)]
    pub no_attributes: bool,

    #[arg(long)]
    pub no_reflinks: bool,

    /// Report guessed ID/IDREF links as notes.
    #[arg(long)]
    pub propose_links: bool,

    #[arg(long, value_name = "COLOR")]
    pub element_color: Option<String>,

    #[arg(long, value_name = "COLOR")]
    pub text_color: Option<String>,

    #[arg(long, value_name = "COLOR")]
    pub attribute_color: Option<String>,

    #[arg(long, value_name = "COLOR")]
    pub subgroup_color: Option<String>,

    #[arg(long, value_name = "DIR", default_value = "TB")]
    pub rankdir: RankDir,

    /// Arrowhead for an occurrence, e.g. `+=crow`. Occurrences: one, ?, *, +.
    #[arg(long, value_name = "OCC=ARROW", value_parser = parse_glyph)]
    pub glyph: Vec<(Occurrence, Arrow)>,

    /// Read the input as graph JSON written by `--format json`.
    #[arg(long)]
    pub from_json: bool,

    /// Check that the input is a valid graph in canonical JSON; print nothing.
    #[arg(long, conflicts_with = "from_json")]
    pub verify: bool,
}

fn parse_pair<T: From<String>>(s: &str) -> Result<(String, T), String> {
    match s.split_once('=') {
        Some((k, v)) if !k.is_empty() => Ok((k.to_string(), T::from(v.to_string()))),
        _ => Err(format!("expected KEY=VALUE, got `{s}`")),
    }
}

fn parse_glyph(s: &str) -> Result<(Occurrence, Arrow), String> {
    let (occ, arrow) = s
        .split_once('=')
        .ok_or_else(|| format!("expected OCC=ARROW, got `{s}`"))?;
    Ok((
        parse_occurrence(occ).map_err(|e| e.to_string())?,
        arrow
            .parse()
            .map_err(|e: crate::dot::StyleError| e.to_string())?,
    ))
}

impl Config {
    pub fn style(&self) -> RenderStyle {
        let mut style = RenderStyle {
            rankdir: self.rankdir,
            show_attributes: !self.no_attributes,
            show_reflinks: !self.no_reflinks,
            ..RenderStyle::default()
        };
        let overrides = [
            (&self.element_color, &mut style.element_fill),
            (&self.text_color, &mut style.text_fill),
            (&self.attribute_color, &mut style.attribute_fill),
            (&self.subgroup_color, &mut style.subgroup_fill),
        ];
        for (value, slot) in overrides {
            if let Some(v) = value {
                *slot = v.clone();
            }
        }
        for (occ, arrow) in &self.glyph {
            style.glyph_map.set(*occ, arrow.clone());
        }
        style
    }

    fn source_name(&self) -> &str {
        if self.input == "-" {
            "<stdin>"
        } else {
            &self.input
        }
    }
}

/// Whether diagnostics get ANSI color, from `DTDGRAPH_COLOR` and whether the
/// diagnostic stream is a terminal.
pub fn color_enabled(env: Option<&str>, is_terminal: bool) -> bool {
    match env {
        Some("always") => true,
        Some("never") => false,
        _ => is_terminal,
    }
}

struct Reporter<'a> {
    out: &'a mut dyn Write,
    source: String,
    color: bool,
}

impl Reporter<'_> {
    fn line(&mut self, location: Option<String>, severity: Severity, tag: &str, message: &str) {
        let prefix = match location {
            Some(loc) => format!("{}:{loc}", self.source),
            None => self.source.clone(),
        };
        let sev = match (self.color, severity) {
            (false, _) => format!("{severity}{tag}"),
            (true, Severity::Error) => format!("\x1b[1;31m{severity}{tag}\x1b[0m"),
            (true, Severity::Warning) => format!("\x1b[1;33m{severity}{tag}\x1b[0m"),
            (true, Severity::Note) => format!("\x1b[1;36m{severity}{tag}\x1b[0m"),
        };
        let _ = writeln!(self.out, "{prefix}: {sev}: {message}");
    }

    fn error(&mut self, message: &str) {
        self.line(None, Severity::Error, "", message);
    }

    fn dtd_error(&mut self, e: &DtdError) {
        let loc = e.location().to_string();
        let text = e.to_string();
        let message = text.strip_prefix(&format!("{loc}: ")).unwrap_or(&text);
        self.line(Some(loc), Severity::Error, "", message);
    }

    fn diagnostics(&mut self, diags: &mut [Diagnostic]) {
        sort_diagnostics(diags);
        for d in diags.iter() {
            self.line(
                d.location.map(|l| l.to_string()),
                d.severity,
                &format!("[{}]", d.code),
                &d.message,
            );
        }
    }
}

/// Parses `args` (including the program name) and runs. Usage errors exit 2;
/// `--help` and `--version` print to `stdout` and exit 0.
pub fn main_with_args<I, T>(
    args: I,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
    color: bool,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Config::try_parse_from(args) {
        Ok(config) => run(&config, stdin, stdout, stderr, color),
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(stdout, "{e}");
                0
            } else {
                let _ = write!(stderr, "{}", e.render());
                2
            }
        }
    }
}

/// Runs the pipeline. Returns the exit code: 0 on success, 1 when the input
/// cannot be read, parsed or validated, 2 for inconsistent options.
pub fn run(
    config: &Config,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
    color: bool,
) -> i32 {
    let mut rep = Reporter {
        out: stderr,
        source: config.source_name().to_string(),
        color,
    };
    let json_input = config.from_json || config.verify;
    if json_input
        && (config.annotations.is_some()
            || !config.entity_map.is_empty()
            || !config.text_hint.is_empty())
    {
        let _ = writeln!(
            rep.out,
            "error: --annotations, --entity-map and --text-hint need DTD input\n\n{}",
            <Config as clap::CommandFactory>::command().render_usage()
        );
        return 2;
    }

    let output = if config.format == Format::Legend {
        emit_legend(&config.style())
    } else {
        let bytes = match read_input(&config.input, stdin) {
            Ok(b) => b,
            Err(e) => {
                rep.error(&format!("cannot open: {e}"));
                return 1;
            }
        };
        let Ok(text) = String::from_utf8(bytes.clone()) else {
            rep.error("input is not valid UTF-8");
            return 1;
        };
        if config.verify {
            return match verify_json(&text) {
                Ok(_) => 0,
                Err(e) => {
                    rep.error(&e.to_string());
                    1
                }
            };
        }
        let (graph, mut diags) = if config.from_json {
            match load_json(config, &text) {
                Ok(x) => x,
                Err(message) => {
                    rep.error(&message);
                    return 1;
                }
            }
        } else {
            match build_from_dtd(config, &text, &bytes, &mut rep) {
                Some(x) => x,
                None => return 1,
            }
        };
        diags.extend(validate_graph(&graph));
        let failed = has_errors(&diags);
        rep.diagnostics(&mut diags);
        if failed {
            return 1;
        }
        match config.format {
            Format::Json => to_json(&graph) + "\n",
            _ => match emit_dot(&graph, &config.style()) {
                Ok(dot) => dot,
                Err(e) => {
                    rep.error(&e.to_string());
                    return 1;
                }
            },
        }
    };

    let written = match &config.output {
        Some(path) => fs::write(path, &output),
        None => stdout.write_all(output.as_bytes()),
    };
    if let Err(e) = written {
        let target = config
            .output
            .as_ref()
            .map_or("<stdout>".to_string(), |p| p.display().to_string());
        rep.error(&format!("cannot write {target}: {e}"));
        return 1;
    }
    0
}

fn read_input(input: &str, stdin: &mut dyn Read) -> std::io::Result<Vec<u8>> {
    if input == "-" {
        let mut buf = Vec::new();
        stdin.read_to_end(&mut buf)?;
        Ok(buf)
    } else {
        fs::read(input)
    }
}

fn load_json(config: &Config, text: &str) -> Result<(SchemaGraph, Vec<Diagnostic>), String> {
    let graph = from_json(text).map_err(|e| e.to_string())?;
    if config.collapse.is_empty() {
        return Ok((graph, Vec::new()));
    }
    if !validate_graph(&graph).is_empty() {
        // Reported by the caller.
        return Ok((graph, Vec::new()));
    }
    Ok(collapse(&graph, &config.collapse.iter().cloned().collect()))
}

fn build_from_dtd(
    config: &Config,
    text: &str,
    bytes: &[u8],
    rep: &mut Reporter<'_>,
) -> Option<(SchemaGraph, Vec<Diagnostic>)> {
    let annotations = match &config.annotations {
        None => Vec::new(),
        Some(path) => {
            let parsed = fs::read_to_string(path)
                .map_err(|e| format!("cannot open annotations {}: {e}", path.display()))
                .and_then(|t| parse_annotations(&t).map_err(|e| format!("{}:{e}", path.display())));
            match parsed {
                Ok(a) => a,
                Err(message) => {
                    rep.error(&message);
                    return None;
                }
            }
        }
    };
    let mut entities: HashMap<String, String> = HashMap::new();
    for (id, path) in &config.entity_map {
        match fs::read_to_string(path) {
            Ok(t) => {
                entities.insert(id.clone(), t);
            }
            Err(e) => {
                rep.error(&format!("cannot open entity file {}: {e}", path.display()));
                return None;
            }
        }
    }

    let ast = parse_dtd(text)
        .and_then(|ast| expand_parameter_entities(&ast, Some(&entities as &dyn EntityResolver)));
    let ast = match ast {
        Ok(a) => a,
        Err(e) => {
            rep.dtd_error(&e);
            return None;
        }
    };
    let opts = BuildOptions {
        annotations,
        collapse: config.collapse.iter().cloned().collect(),
        text_hints: config.text_hint.iter().cloned().collect(),
        heuristic_reflinks: config.propose_links,
        provenance: Provenance::of_bytes(config.source_name(), bytes),
    };
    let out = build_graph(&ast, &opts);
    Some((out.graph, out.diagnostics))
}
