use std::fmt;

use crate::dtd::Location;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Severity {
    Error,
    Warning,
    Note,
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Severity::Error => "error",
            Severity::Warning => "warning",
            Severity::Note => "note",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DiagnosticCode {
    // graph invariants
    DanglingEdge,
    DuplicateElement,
    MisplacedNodeId,
    DuplicateAttributeBlock,
    EmptyAttributeBlock,
    AttachmentMismatch,
    EmptyGroup,
    NonConsecutiveSeqIndex,
    UnexpectedSeqIndex,
    GroupCycle,
    SharedGroup,
    LeafWithChildren,
    RefLinkSourceNotIdRef,
    RefLinkTargetNotId,
    RefLinkUnknownRow,
    RootNotElement,
    // lowering
    UnknownCollapseTarget,
    AnnotationMismatch,
    UndeclaredChildElement,
    AttlistForUndeclaredElement,
    DuplicateAttribute,
    ReducedFidelity,
    UnexpandedEntity,
    UnresolvedEntity,
    RootNotInferred,
    UnreferencedElement,
    ProposedRefLink,
}

impl DiagnosticCode {
    pub fn as_str(self) -> &'static str {
        use DiagnosticCode::*;
        match self {
            DanglingEdge => "dangling-edge",
            DuplicateElement => "duplicate-element",
            MisplacedNodeId => "misplaced-node-id",
            DuplicateAttributeBlock => "duplicate-attribute-block",
            EmptyAttributeBlock => "empty-attribute-block",
            AttachmentMismatch => "attachment-mismatch",
            EmptyGroup => "empty-group",
            NonConsecutiveSeqIndex => "non-consecutive-seq-index",
            UnexpectedSeqIndex => "unexpected-seq-index",
            GroupCycle => "group-cycle",
            SharedGroup => "shared-group",
            LeafWithChildren => "leaf-with-children",
            RefLinkSourceNotIdRef => "ref-link-source-not-idref",
            RefLinkTargetNotId => "ref-link-target-not-id",
            RefLinkUnknownRow => "ref-link-unknown-row",
            RootNotElement => "root-not-element",
            UnknownCollapseTarget => "unknown-collapse-target",
            AnnotationMismatch => "annotation-mismatch",
            UndeclaredChildElement => "undeclared-child-element",
            AttlistForUndeclaredElement => "attlist-for-undeclared-element",
            DuplicateAttribute => "duplicate-attribute",
            ReducedFidelity => "reduced-fidelity",
            UnexpandedEntity => "unexpanded-entity",
            UnresolvedEntity => "unresolved-entity",
            RootNotInferred => "root-not-inferred",
            UnreferencedElement => "unreferenced-element",
            ProposedRefLink => "proposed-ref-link",
        }
    }
}

impl fmt::Display for DiagnosticCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A finding about a graph or its construction. Diagnostics are data: they
/// never abort a build on their own.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub severity: Severity,
    pub code: DiagnosticCode,
    pub message: String,
    pub location: Option<Location>,
    /// Node ids (or `edge#N` for the N-th edge) the finding is about.
    pub subjects: Vec<String>,
}

impl Diagnostic {
    pub fn new(severity: Severity, code: DiagnosticCode, message: impl Into<String>) -> Self {
        Diagnostic {
            severity,
            code,
            message: message.into(),
            location: None,
            subjects: Vec::new(),
        }
    }

    pub fn error(code: DiagnosticCode, message: impl Into<String>) -> Self {
        Diagnostic::new(Severity::Error, code, message)
    }

    pub fn warning(code: DiagnosticCode, message: impl Into<String>) -> Self {
        Diagnostic::new(Severity::Warning, code, message)
    }

    pub fn note(code: DiagnosticCode, message: impl Into<String>) -> Self {
        Diagnostic::new(Severity::Note, code, message)
    }

    pub fn at(mut self, location: Location) -> Self {
        self.location = Some(location);
        self
    }

    pub fn about(mut self, subject: impl Into<String>) -> Self {
        self.subjects.push(subject.into());
        self
    }

    /// Ordering used for reporting: by location (unlocated last), then code.
    pub fn sort_key(&self) -> (bool, Option<Location>, DiagnosticCode, &str) {
        (
            self.location.is_none(),
            self.location,
            self.code,
            &self.message,
        )
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]: {}", self.severity, self.code, self.message)
    }
}

pub fn sort_diagnostics(diags: &mut [Diagnostic]) {
    diags.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
}

pub fn has_errors(diags: &[Diagnostic]) -> bool {
    diags.iter().any(|d| d.severity == Severity::Error)
}
