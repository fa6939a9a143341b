use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use super::attributes::{format_attribute, is_generic_kind};
use super::collapse::collapse;
use super::reflinks::{infer_ref_links_heuristic, RefAnnotation};
use crate::diagnostics::{Diagnostic, DiagnosticCode as Code};
use crate::dtd::{AttributeSpec, ContentModel, ContentNode, DtdAst, Location, Occurrence};
use crate::graph::{
    Edge, EdgeKind, GroupKind, Node, NodeId, NodeKind, Provenance, RowKind, SchemaGraph,
};

#[derive(Debug, Clone, Default)]
pub struct BuildOptions {
    pub annotations: Vec<RefAnnotation>,
    /// Elements whose content is replaced by a cloud.
    pub collapse: BTreeSet<String>,
    /// Labels for the text leaves of the named elements.
    pub text_hints: BTreeMap<String, String>,
    /// Report heuristic ref-link proposals as notes.
    pub heuristic_reflinks: bool,
    pub provenance: Provenance,
}

#[derive(Debug, Clone)]
pub struct BuildOutput {
    pub graph: SchemaGraph,
    pub diagnostics: Vec<Diagnostic>,
}

/// Lowers a DTD (entities already expanded) into a schema graph.
pub fn build_graph(ast: &DtdAst, opts: &BuildOptions) -> BuildOutput {
    let mut b = Builder {
        graph: SchemaGraph {
            provenance: opts.provenance.clone(),
            ..SchemaGraph::default()
        },
        diags: Vec::new(),
        declared: ast.elements().map(|(n, _, _)| n.to_string()).collect(),
        placeholders: HashSet::new(),
        opts,
    };

    let elements: Vec<(&str, &ContentModel, Location)> = ast.elements().collect();
    let mut used_by_other: HashSet<&str> = HashSet::new();
    for (name, content, _) in &elements {
        for child in content.referenced_names() {
            if child != *name {
                used_by_other.insert(child);
            }
        }
    }
    let candidates: Vec<&str> = elements
        .iter()
        .map(|(n, _, _)| *n)
        .filter(|n| !used_by_other.contains(n))
        .collect();
    let root = match candidates.as_slice() {
        [only] => Some(*only),
        _ => {
            let listed = if candidates.is_empty() {
                "none".to_string()
            } else {
                candidates.join(", ")
            };
            b.diags.push(Diagnostic::note(
                Code::RootNotInferred,
                format!("no unique document element; candidates: {listed}"),
            ));
            None
        }
    };
    b.graph.root = root.map(NodeId::element);

    let attributes = b.merge_attribute_lists(ast);

    for (name, content, location) in &elements {
        let unreferenced = !used_by_other.contains(name) && Some(*name) != root;
        if unreferenced && root.is_some() {
            b.diags.push(
                Diagnostic::note(
                    Code::UnreferencedElement,
                    format!("element `{name}` is not used in any content model"),
                )
                .at(*location)
                .about(NodeId::element(name).as_str()),
            );
        }
        b.add_node(
            NodeId::element(name),
            NodeKind::Element {
                name: name.to_string(),
                unreferenced,
            },
        );
        if let Some(specs) = attributes.get(name) {
            b.add_attribute_block(name, specs);
        }
        b.lower_content(name, content, *location);
    }

    for entity in &ast.unresolved_entities {
        b.diags.push(Diagnostic::note(
            Code::UnresolvedEntity,
            format!(
                "parameter entity `%{};` ({}) was not resolved and is drawn as a cloud",
                entity.name, entity.system_id
            ),
        ));
    }

    b.add_ref_links(&opts.annotations);

    if opts.heuristic_reflinks {
        for proposal in infer_ref_links_heuristic(&b.graph) {
            b.diags.push(
                Diagnostic::note(Code::ProposedRefLink, format!("proposed: {proposal}"))
                    .about(NodeId::attributes(&proposal.source_element).as_str()),
            );
        }
    }

    let mut graph = b.graph;
    let mut diagnostics = b.diags;
    if !opts.collapse.is_empty() {
        let (collapsed, diags) = collapse(&graph, &opts.collapse);
        graph = collapsed;
        diagnostics.extend(diags);
    }
    BuildOutput { graph, diagnostics }
}

/// Where a particle goes: its parent node, position and effective occurrence.
struct Slot {
    parent: NodeId,
    seq_index: Option<u32>,
    path: String,
    depth: usize,
    occurrence: Occurrence,
}

struct Builder<'o> {
    graph: SchemaGraph,
    diags: Vec<Diagnostic>,
    declared: HashSet<String>,
    placeholders: HashSet<String>,
    opts: &'o BuildOptions,
}

impl Builder<'_> {
    fn add_node(&mut self, id: NodeId, kind: NodeKind) {
        self.graph.nodes.insert(id.clone(), Node { id, kind });
    }

    fn merge_attribute_lists<'a>(
        &mut self,
        ast: &'a DtdAst,
    ) -> HashMap<&'a str, Vec<&'a AttributeSpec>> {
        let mut merged: HashMap<&str, Vec<&AttributeSpec>> = HashMap::new();
        for (element, specs, location) in ast.attribute_lists() {
            if !self.declared.contains(element) {
                self.diags.push(
                    Diagnostic::warning(
                        Code::AttlistForUndeclaredElement,
                        format!(
                            "attributes declared for undeclared element `{element}` are ignored"
                        ),
                    )
                    .at(location),
                );
                continue;
            }
            let list = merged.entry(element).or_default();
            for spec in specs {
                if list.iter().any(|s| s.name == spec.name) {
                    self.diags.push(
                        Diagnostic::warning(
                            Code::DuplicateAttribute,
                            format!(
                                "attribute `{}` of `{element}` is declared again; the first declaration wins",
                                spec.name
                            ),
                        )
                        .at(location),
                    );
                    continue;
                }
                if is_generic_kind(&spec.kind) {
                    self.diags.push(
                        Diagnostic::note(
                            Code::ReducedFidelity,
                            format!(
                                "attribute `{element}.{}` has a type the notation does not distinguish; drawn like CDATA",
                                spec.name
                            ),
                        )
                        .at(location),
                    );
                }
                list.push(spec);
            }
        }
        merged
    }

    fn add_attribute_block(&mut self, owner: &str, specs: &[&AttributeSpec]) {
        if specs.is_empty() {
            return;
        }
        let id = NodeId::attributes(owner);
        self.add_node(
            id.clone(),
            NodeKind::AttributeBlock {
                owner: owner.to_string(),
                rows: specs.iter().map(|s| format_attribute(s)).collect(),
            },
        );
        self.graph.edges.push(Edge {
            from: NodeId::element(owner),
            to: id,
            kind: EdgeKind::AttributeAttachment,
        });
    }

    fn lower_content(&mut self, owner: &str, content: &ContentModel, location: Location) {
        let parent = NodeId::element(owner);
        match &content.node {
            ContentNode::Empty => {}
            ContentNode::Any => {
                let id = NodeId::cloud(owner, "c");
                self.add_node(
                    id.clone(),
                    NodeKind::Cloud {
                        label: "ANY".into(),
                    },
                );
                self.graph
                    .edges
                    .push(Edge::containment(parent, id, Occurrence::ExactlyOne, None));
            }
            _ => {
                let slot = Slot {
                    parent,
                    seq_index: None,
                    path: "c".into(),
                    depth: 0,
                    occurrence: content.occurrence,
                };
                self.lower_particle(owner, content, slot, location)
            }
        }
    }

    fn lower_particle(
        &mut self,
        owner: &str,
        model: &ContentModel,
        slot: Slot,
        location: Location,
    ) {
        let target = match &model.node {
            ContentNode::Name(name) => self.element_target(owner, name, location),
            ContentNode::PCData => {
                let id = NodeId::text(owner, &slot.path);
                let label = self.opts.text_hints.get(owner).cloned().unwrap_or_default();
                self.add_node(id.clone(), NodeKind::TextLeaf { label });
                id
            }
            ContentNode::ExternalRef(entity) | ContentNode::EntityRef(entity) => {
                if matches!(model.node, ContentNode::EntityRef(_)) {
                    self.diags.push(
                        Diagnostic::warning(
                            Code::UnexpandedEntity,
                            format!("`%{entity};` in `{owner}` was not expanded; drawn as a cloud"),
                        )
                        .at(location),
                    );
                }
                let id = NodeId::cloud(owner, &slot.path);
                self.add_node(
                    id.clone(),
                    NodeKind::Cloud {
                        label: format!("%{entity};"),
                    },
                );
                id
            }
            ContentNode::Empty | ContentNode::Any => {
                let id = NodeId::cloud(owner, &slot.path);
                self.add_node(
                    id.clone(),
                    NodeKind::Cloud {
                        label: "ANY".into(),
                    },
                );
                id
            }
            ContentNode::Seq(children) | ContentNode::Alt(children) => {
                if let ([child], Occurrence::ExactlyOne) = (children.as_slice(), slot.occurrence) {
                    let inner = Slot {
                        path: format!("{}.0", slot.path),
                        occurrence: child.occurrence,
                        ..slot
                    };
                    return self.lower_particle(owner, child, inner, location);
                }
                let kind = if matches!(model.node, ContentNode::Seq(_)) {
                    GroupKind::Seq
                } else {
                    GroupKind::Alt
                };
                let id = NodeId::group(owner, &slot.path);
                self.add_node(
                    id.clone(),
                    NodeKind::Group {
                        kind,
                        subgroup: slot.depth > 0 || slot.occurrence != Occurrence::ExactlyOne,
                    },
                );
                self.graph.edges.push(Edge::containment(
                    slot.parent,
                    id.clone(),
                    slot.occurrence,
                    slot.seq_index,
                ));
                for (i, child) in children.iter().enumerate() {
                    let inner = Slot {
                        parent: id.clone(),
                        seq_index: (kind == GroupKind::Seq).then_some(i as u32 + 1),
                        path: format!("{}.{i}", slot.path),
                        depth: slot.depth + 1,
                        occurrence: child.occurrence,
                    };
                    self.lower_particle(owner, child, inner, location);
                }
                return;
            }
        };
        self.graph.edges.push(Edge::containment(
            slot.parent,
            target,
            slot.occurrence,
            slot.seq_index,
        ));
    }

    fn element_target(&mut self, owner: &str, name: &str, location: Location) -> NodeId {
        if self.declared.contains(name) {
            return NodeId::element(name);
        }
        let id = NodeId::placeholder(name);
        if self.placeholders.insert(name.to_string()) {
            self.diags.push(
                Diagnostic::warning(
                    Code::UndeclaredChildElement,
                    format!("`{owner}` refers to undeclared element `{name}`; drawn as a cloud"),
                )
                .at(location)
                .about(id.as_str()),
            );
            self.add_node(
                id.clone(),
                NodeKind::Cloud {
                    label: name.to_string(),
                },
            );
        }
        id
    }

    fn add_ref_links(&mut self, annotations: &[RefAnnotation]) {
        let mut seen = HashSet::new();
        for a in annotations {
            if !seen.insert(a) {
                continue;
            }
            let mismatch = |why: String| {
                Diagnostic::warning(
                    Code::AnnotationMismatch,
                    format!("annotation `{a}` ignored: {why}"),
                )
            };
            let source = self
                .graph
                .attribute_block(&a.source_element)
                .and_then(|n| n.rows().iter().find(|r| r.name == a.source_attribute));
            match source {
                None => {
                    self.diags.push(mismatch(format!(
                        "`{}` has no attribute `{}`",
                        a.source_element, a.source_attribute
                    )));
                    continue;
                }
                Some(r) if !matches!(r.kind, RowKind::Idref | RowKind::Idrefs) => {
                    self.diags.push(mismatch(format!(
                        "`{}.{}` is not IDREF or IDREFS",
                        a.source_element, a.source_attribute
                    )));
                    continue;
                }
                Some(_) => {}
            }
            let target_row = self
                .graph
                .attribute_block(&a.target_element)
                .and_then(|n| n.rows().iter().find(|r| r.kind == RowKind::Id))
                .map(|r| r.name.clone());
            let Some(to_attribute) = target_row else {
                self.diags.push(mismatch(format!(
                    "`{}` has no ID attribute",
                    a.target_element
                )));
                continue;
            };
            self.graph.edges.push(Edge {
                from: NodeId::attributes(&a.source_element),
                to: NodeId::attributes(&a.target_element),
                kind: EdgeKind::RefLink {
                    from_attribute: a.source_attribute.clone(),
                    to_attribute,
                },
            });
        }
    }
}
