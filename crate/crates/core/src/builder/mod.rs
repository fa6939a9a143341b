//! DTD to schema graph.

mod attributes;
mod build;
mod collapse;
mod reflinks;

pub use attributes::{format_attribute, is_generic_kind, row_kind};
pub use build::{build_graph, BuildOptions, BuildOutput};
pub use collapse::collapse;
pub use reflinks::{infer_ref_links_heuristic, parse_annotations, AnnotationError, RefAnnotation};
