//! Link extraction and admission rules.

use crate::containment::{AdaptationMode, ReachabilityDecision};
use crate::rdf::Triple;
use crate::shape::ShapeIndex;

/// Documents are the dereferenceable unit; fragments identify entities
/// inside them.
pub fn strip_fragment(iri: &str) -> &str {
    iri.split_once('#').map(|(doc, _)| doc).unwrap_or(iri)
}

/// All distinct IRIs in any triple position that start with an allowlist
/// prefix, fragment-stripped, in order of first occurrence.
pub fn extract_links(triples: &[Triple], allowlist: &[String]) -> Vec<String> {
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for t in triples {
        for term in [&t.subject, &t.predicate, &t.object] {
            let Some(iri) = term.as_iri() else { continue };
            let doc = strip_fragment(iri);
            if !allowlist.iter().any(|p| doc.starts_with(p.as_str())) {
                continue;
            }
            if seen.insert(doc.to_string()) {
                out.push(doc.to_string());
            }
        }
    }
    out
}

/// Pod root of an IRI under the `<base>/<segment>/<name>/` convention,
/// including the trailing slash.
pub fn pod_root_of(iri: &str, pod_segment: &str) -> Option<String> {
    let marker = format!("/{pod_segment}/");
    let start = iri.find(&marker)? + marker.len();
    let name_len = iri[start..].find('/')?;
    if name_len == 0 {
        return None;
    }
    Some(iri[..start + name_len + 1].to_string())
}

/// Whether a link may be dereferenced under a pod's adapted reachability.
///
/// With no decision every link passes (the permissive baseline). Under
/// pruning modes a link passes when its claiming entry's shape is allowed;
/// an unclaimed link passes only when the index is incomplete, since a
/// complete index claims every document of its domain and whatever it does
/// not claim cannot hold query-relevant data. Discovery-only never prunes.
pub fn admit_link(
    iri: &str,
    decision: Option<&ReachabilityDecision>,
    index: Option<&ShapeIndex>,
) -> bool {
    let Some(decision) = decision else { return true };
    match decision.mode {
        AdaptationMode::DiscoveryOnly => true,
        AdaptationMode::PruneUnmatched | AdaptationMode::VisitPartial => {
            let index = index.expect("decided pods carry their index");
            match index.claiming_entry(iri) {
                Some(entry) => decision.allowed_shapes.contains(&entry.shape_iri),
                None => !index.complete,
            }
        }
    }
}
